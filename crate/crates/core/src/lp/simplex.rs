//! Dense two-phase tableau simplex over exact rationals, using Bland's rule.
//!
//! Solves `max c·x  s.t.  A x <= b, x >= 0`. Callers split free variables
//! themselves. The tableau carries one slack column per row plus, when some
//! right-hand side is negative, a single auxiliary column for phase one.

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

/// Standard-form problem `max c·x, A x <= b, x >= 0`.
#[derive(Debug, Clone, Default)]
pub(crate) struct StandardForm {
    pub cols: usize,
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

impl StandardForm {
    pub fn new(cols: usize) -> Self {
        StandardForm {
            cols,
            rows: Vec::new(),
            rhs: Vec::new(),
            objective: vec![Rational::zero(); cols],
        }
    }

    pub fn push_row(&mut self, row: Vec<Rational>, rhs: Rational) {
        debug_assert_eq!(row.len(), self.cols);
        self.rows.push(row);
        self.rhs.push(rhs);
    }
}

struct Tableau {
    // m rows of width `width + 1`; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    // objective row `z - sum c_j x_j`, same width; last entry is the current z.
    z: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
    // columns that may never enter (the retired auxiliary column)
    barred: Vec<bool>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, k: usize) {
        let inv = self.rows[r][k].recip();
        let nz: Vec<usize> = (0..=self.width)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &nz {
            self.rows[r][j] *= &inv;
        }
        let (before, rest) = self.rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        for row in before
            .iter_mut()
            .chain(after.iter_mut())
            .chain(std::iter::once(&mut self.z))
        {
            if row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                row[j] -= &delta;
            }
        }
        self.basis[r] = k;
    }

    fn run(&mut self) -> Step {
        loop {
            let entering = (0..self.width).find(|&j| !self.barred[j] && self.z[j].is_negative());
            let Some(k) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][k];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, k),
                None => return Step::Unbounded,
            }
        }
    }

    fn value_of(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map(|r| self.rhs(r).clone())
            .unwrap_or_else(Rational::zero)
    }
}

pub(crate) fn solve(lp: &StandardForm) -> Outcome {
    let n = lp.cols;
    let m = lp.rows.len();
    let needs_phase_one = lp.rhs.iter().any(Rational::is_negative);
    let aux = n + m;
    let width = n + m + usize::from(needs_phase_one);

    let mut rows = Vec::with_capacity(m);
    for (i, (a, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
        let mut row = Vec::with_capacity(width + 1);
        row.extend(a.iter().cloned());
        row.extend((0..m).map(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        if needs_phase_one {
            row.push(-Rational::one());
        }
        row.push(b.clone());
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        z: vec![Rational::zero(); width + 1],
        basis: (n..n + m).collect(),
        width,
        barred: vec![false; width],
    };

    if needs_phase_one {
        // maximize -aux
        t.z[aux] = Rational::one();
        let mut start = 0;
        for r in 1..m {
            if t.rhs(r) < t.rhs(start) {
                start = r;
            }
        }
        t.pivot(start, aux);
        let Step::Optimal = t.run() else {
            unreachable!("phase one objective is bounded above by zero");
        };
        if t.z[width].is_negative() {
            return Outcome::Infeasible;
        }
        if let Some(r) = t.basis.iter().position(|&b| b == aux) {
            match (0..aux).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        }
        t.barred[aux] = true;
    }

    t.z = vec![Rational::zero(); width + 1];
    for (j, c) in lp.objective.iter().enumerate() {
        t.z[j] = -c;
    }
    for r in 0..t.rows.len() {
        let b = t.basis[r];
        if b < n && !lp.objective[b].is_zero() {
            let c = lp.objective[b].clone();
            for j in 0..=width {
                if !t.rows[r][j].is_zero() {
                    let delta = &c * &t.rows[r][j];
                    t.z[j] += &delta;
                }
            }
        }
    }

    match t.run() {
        Step::Unbounded => Outcome::Unbounded,
        Step::Optimal => Outcome::Optimal {
            value: t.z[width].clone(),
            point: (0..n).map(|j| t.value_of(j)).collect(),
        },
    }
}
