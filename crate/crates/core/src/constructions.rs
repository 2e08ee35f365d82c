//! Explicit rank constructions. Every function returns a verified
//! [`Representation`] on the canonical family layout of
//! [`build_family`](crate::graph::build_family).

use crate::error::{Error, Result};
use crate::graph::{build_family, FamilySpec};
use crate::rational::Rational;
use crate::representation::{RankAssignment, Representation, ThresholdVector};

fn minus_one_one() -> Vec<Rational> {
    vec![Rational::from(-1), Rational::one()]
}

/// `pK2` with thresholds `(-1, 1)`: the `i`-th edge gets ranks `-2i` and `2i`.
pub fn pk2_two_threshold(p: usize) -> Result<Representation> {
    let g = build_family(&FamilySpec::PK2(p))?;
    let ranks = (1..=p as i64)
        .flat_map(|i| [Rational::from(-2 * i), Rational::from(2 * i)])
        .collect();
    Representation::new(
        g,
        ThresholdVector::new(minus_one_one())?,
        RankAssignment::new(ranks),
    )
}

/// `pK2` with thresholds `(-1, 1, t)` for `p >= 2` and `t > 2p - 3`.
///
/// Writes `t = (1 + 2ε)(2p - 3)` and places the endpoints of the `i`-th edge
/// at `∓(1 + ε)(i - 1)`. Every edge then has weight 0, and every non-edge
/// weight has absolute value in `[1 + ε, (1 + ε)(2p - 3)]`.
pub fn pk2_c_t(p: usize, t: &Rational) -> Result<Representation> {
    if p < 2 {
        return Err(Error::Precondition(format!(
            "pk2_c_t needs p >= 2 (got {p}); use pk2_two_threshold for a single edge"
        )));
    }
    let bound = Rational::from(2 * p as i64 - 3);
    if *t <= bound {
        return Err(Error::Precondition(format!(
            "construction needs t > 2p - 3 = {bound}, got t = {t}"
        )));
    }
    let eps = (t / &bound - Rational::one()) / Rational::from(2);
    let step = Rational::one() + &eps;
    let ranks = (0..p as i64)
        .flat_map(|i| {
            let r = &step * Rational::from(i);
            [-&r, r]
        })
        .collect();
    let mut thetas = minus_one_one();
    thetas.push(t.clone());
    Representation::new(
        build_family(&FamilySpec::PK2(p))?,
        ThresholdVector::new(thetas)?,
        RankAssignment::new(ranks),
    )
}

/// The `ε` used by [`two_k3_c_t`]: `min(1, (t - 1) / 2)`.
pub fn two_k3_epsilon(t: &Rational) -> Rational {
    let half_gap = (t - Rational::one()) / Rational::from(2);
    Rational::one().min(half_gap)
}

/// `2K3` with thresholds `(-1, 1, t)` for any `t > 1`: the first triangle's
/// ranks are all `(1 - ε)/2`, the second's all `t/2`.
///
/// Triangle one has weight `1 - ε` (needs `0 < ε <= 2`), triangle two has
/// weight `t`, and cross pairs weigh `(1 - ε + t)/2`, which lies in the gap
/// `[1, t)` exactly when `ε <= t - 1`.
pub fn two_k3_c_t(t: &Rational) -> Result<Representation> {
    if *t <= Rational::one() {
        return Err(Error::Precondition(format!(
            "construction needs t > 1, got t = {t}"
        )));
    }
    let eps = two_k3_epsilon(t);
    let two = Rational::from(2);
    let low = (Rational::one() - eps) / &two;
    let high = t / &two;
    let ranks = [
        low.clone(),
        low.clone(),
        low,
        high.clone(),
        high.clone(),
        high,
    ];
    let mut thetas = minus_one_one();
    thetas.push(t.clone());
    Representation::new(
        build_family(&FamilySpec::PK3(2))?,
        ThresholdVector::new(thetas)?,
        RankAssignment::new(ranks.to_vec()),
    )
}
