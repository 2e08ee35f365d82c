//! Linear constraint systems with strict and non-strict inequalities over
//! exact rationals.
//!
//! Strict feasibility is decided by margin maximization: every strict row
//! `a·x < b` becomes `a·x + m <= b`, the margin `m` is maximized over
//! `0 <= m <= 1`, and the system is strictly feasible iff the optimum is
//! positive. The cap stands in for an unbounded margin.

mod simplex;

use std::fmt;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{ExtRational, Rational};

use simplex::{Outcome, StandardForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "=",
        })
    }
}

/// `sum coeff_i * x_i  (<= | < | =)  bound`. Terms are kept sorted by
/// variable with zero coefficients dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    terms: Vec<(Var, Rational)>,
    relation: Relation,
    bound: Rational,
}

fn normalize_terms(terms: impl IntoIterator<Item = (Var, Rational)>) -> Vec<(Var, Rational)> {
    let mut terms: Vec<(Var, Rational)> = terms.into_iter().collect();
    terms.sort_by_key(|(v, _)| *v);
    let mut out: Vec<(Var, Rational)> = Vec::with_capacity(terms.len());
    for (v, c) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == v => *acc += &c,
            _ => out.push((v, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl LinearConstraint {
    pub fn new(
        terms: impl IntoIterator<Item = (Var, Rational)>,
        relation: Relation,
        bound: Rational,
    ) -> Self {
        LinearConstraint {
            terms: normalize_terms(terms),
            relation,
            bound,
        }
    }

    pub fn le(terms: impl IntoIterator<Item = (Var, Rational)>, bound: Rational) -> Self {
        Self::new(terms, Relation::Le, bound)
    }

    pub fn lt(terms: impl IntoIterator<Item = (Var, Rational)>, bound: Rational) -> Self {
        Self::new(terms, Relation::Lt, bound)
    }

    pub fn eq(terms: impl IntoIterator<Item = (Var, Rational)>, bound: Rational) -> Self {
        Self::new(terms, Relation::Eq, bound)
    }

    /// `terms >= bound`, stored as `-terms <= -bound`.
    pub fn ge(terms: impl IntoIterator<Item = (Var, Rational)>, bound: Rational) -> Self {
        Self::new(
            terms.into_iter().map(|(v, c)| (v, -c)),
            Relation::Le,
            -bound,
        )
    }

    /// `terms > bound`, stored as `-terms < -bound`.
    pub fn gt(terms: impl IntoIterator<Item = (Var, Rational)>, bound: Rational) -> Self {
        Self::new(
            terms.into_iter().map(|(v, c)| (v, -c)),
            Relation::Lt,
            -bound,
        )
    }

    pub fn terms(&self) -> &[(Var, Rational)] {
        &self.terms
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn is_strict(&self) -> bool {
        self.relation == Relation::Lt
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.terms.iter().map(|(v, c)| c * &point[v.0]).sum()
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::Le => lhs <= self.bound,
            Relation::Lt => lhs < self.bound,
            Relation::Eq => lhs == self.bound,
        }
    }

    /// The same constraint with `<` weakened to `<=`.
    pub fn relaxed(&self) -> Self {
        let mut c = self.clone();
        if c.relation == Relation::Lt {
            c.relation = Relation::Le;
        }
        c
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (v, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*x{}", v.0)?;
        }
        write!(f, " {} {}", self.relation, self.bound)
    }
}

/// Declared variables plus constraints over them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    names: Vec<String>,
    constraints: Vec<LinearConstraint>,
}

impl ConstraintSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> Var {
        self.names.push(name.into());
        Var(self.names.len() - 1)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, v: Var) -> &str {
        &self.names[v.0]
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: LinearConstraint) -> Result<()> {
        if let Some((v, _)) = c.terms.iter().find(|(v, _)| v.0 >= self.names.len()) {
            return Err(Error::Parameter(format!(
                "constraint references undeclared variable x{}",
                v.0
            )));
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = LinearConstraint>) -> Result<()> {
        cs.into_iter().try_for_each(|c| self.push(c))
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars() && self.constraints.iter().all(|c| c.is_satisfied_by(point))
    }
}

/// Direction for [`optimize`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Result of optimizing over the closure of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Optimum {
    Infeasible,
    Unbounded,
    Finite {
        value: Rational,
        point: Vec<Rational>,
    },
}

// Each variable x_i is split as x_i = col(2i) - col(2i + 1).
fn standard_form(
    sys: &ConstraintSystem,
    constraints: &[LinearConstraint],
    with_margin: bool,
) -> StandardForm {
    let n = sys.num_vars();
    let margin = 2 * n;
    let cols = 2 * n + usize::from(with_margin);
    let mut lp = StandardForm::new(cols);
    let mut push = |c: &LinearConstraint, sign: bool| {
        let mut row = vec![Rational::zero(); cols];
        for (v, a) in &c.terms {
            let a = if sign { a.clone() } else { -a };
            row[2 * v.0 + 1] = -&a;
            row[2 * v.0] = a;
        }
        if with_margin && c.relation == Relation::Lt {
            row[margin] = Rational::one();
        }
        let b = if sign { c.bound.clone() } else { -&c.bound };
        lp.push_row(row, b);
    };
    for c in constraints {
        push(c, true);
        if c.relation == Relation::Eq {
            push(c, false);
        }
    }
    if with_margin {
        let mut cap = vec![Rational::zero(); cols];
        cap[margin] = Rational::one();
        lp.push_row(cap, Rational::one());
        lp.objective[margin] = Rational::one();
    }
    lp
}

fn unsplit(point: &[Rational], n: usize) -> Vec<Rational> {
    (0..n).map(|i| &point[2 * i] - &point[2 * i + 1]).collect()
}

/// A point satisfying every constraint with its exact relation, or `None`
/// if no real point exists.
pub fn feasible_strict(sys: &ConstraintSystem) -> Option<Vec<Rational>> {
    feasible_strict_with(sys, &[])
}

/// [`feasible_strict`] on `sys` extended by `extra` without cloning the system.
pub fn feasible_strict_with(
    sys: &ConstraintSystem,
    extra: &[LinearConstraint],
) -> Option<Vec<Rational>> {
    let all: Vec<LinearConstraint> = sys.constraints.iter().chain(extra).cloned().collect();
    let lp = standard_form(sys, &all, true);
    match simplex::solve(&lp) {
        Outcome::Optimal { value, point } if value.is_positive() => {
            let x = unsplit(&point, sys.num_vars());
            debug_assert!(
                all.iter().all(|c| c.is_satisfied_by(&x)),
                "simplex witness violates a constraint"
            );
            Some(x)
        }
        Outcome::Optimal { .. } | Outcome::Infeasible => None,
        Outcome::Unbounded => unreachable!("margin is capped"),
    }
}

/// Optimizes `objective` over the closure of `sys` (strict rows relaxed).
pub fn optimize(sys: &ConstraintSystem, objective: &[(Var, Rational)], sense: Sense) -> Optimum {
    let relaxed: Vec<LinearConstraint> = sys
        .constraints
        .iter()
        .map(LinearConstraint::relaxed)
        .collect();
    let mut lp = standard_form(sys, &relaxed, false);
    for (v, c) in objective {
        let c = match sense {
            Sense::Maximize => c.clone(),
            Sense::Minimize => -c,
        };
        lp.objective[2 * v.0] += &c;
        lp.objective[2 * v.0 + 1] -= &c;
    }
    match simplex::solve(&lp) {
        Outcome::Infeasible => Optimum::Infeasible,
        Outcome::Unbounded => Optimum::Unbounded,
        Outcome::Optimal { value, point } => Optimum::Finite {
            value: match sense {
                Sense::Maximize => value,
                Sense::Minimize => -value,
            },
            point: unsplit(&point, sys.num_vars()),
        },
    }
}

/// The exact set of values `var` takes over the (strictly) feasible region.
///
/// Endpoints come from optimizing over the closure; an endpoint is closed
/// iff the system stays strictly feasible with `var` pinned to it.
pub fn project_onto(sys: &ConstraintSystem, var: Var) -> Result<Interval> {
    if var.0 >= sys.num_vars() {
        return Err(Error::Parameter(format!("unknown variable x{}", var.0)));
    }
    if feasible_strict(sys).is_none() {
        return Err(Error::Infeasible);
    }
    let objective = [(var, Rational::one())];
    let endpoint = |sense| match optimize(sys, &objective, sense) {
        Optimum::Finite { value, .. } => {
            let pin = LinearConstraint::eq([(var, Rational::one())], value.clone());
            let attained = feasible_strict_with(sys, &[pin]).is_some();
            (ExtRational::Finite(value), attained)
        }
        Optimum::Unbounded => (
            match sense {
                Sense::Minimize => ExtRational::NegInf,
                Sense::Maximize => ExtRational::PosInf,
            },
            false,
        ),
        Optimum::Infeasible => unreachable!("closure of a feasible system is feasible"),
    };
    let (lo, lo_closed) = endpoint(Sense::Minimize);
    let (hi, hi_closed) = endpoint(Sense::Maximize);
    Interval::new(lo, lo_closed, hi, hi_closed)
}
