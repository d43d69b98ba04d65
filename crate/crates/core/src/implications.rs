//! (U,N)-implications I(x,y) = U(N(x), y) and the property battery:
//! the defining axioms I1-I3 plus NP, EP, IP, OP and the three
//! contraposition variants.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::negations::{negation_from_cut, Negation};
use crate::numerics::{Grid, Monotonicity, Tolerances, UnitFunction1D, DEFAULT_SEED, RANDOM_TRIPLES};
use crate::uninorms::{BinaryOperator, OperatorKind};
use crate::{Error, Result};

/// Properties checkable on a fuzzy implication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ImplicationProperty {
    /// Antitone in the first argument.
    I1,
    /// Isotone in the second argument.
    I2,
    /// I(0,0) = I(1,1) = 1 and I(1,0) = 0.
    I3,
    /// Left neutrality I(1,y) = y.
    NP,
    /// Exchange principle I(x,I(y,z)) = I(y,I(x,z)).
    EP,
    /// Identity principle I(x,x) = 1.
    IP,
    /// Ordering property I(x,y) = 1 iff x <= y.
    OP,
    /// Contrapositive symmetry I(x,y) = I(N(y),N(x)).
    CP,
    /// Left contraposition I(N(x),y) = I(N(y),x).
    LCP,
    /// Right contraposition I(x,N(y)) = I(y,N(x)).
    RCP,
}

impl std::fmt::Display for ImplicationProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ImplicationProperty::I1 => "I1",
            ImplicationProperty::I2 => "I2",
            ImplicationProperty::I3 => "I3",
            ImplicationProperty::NP => "NP",
            ImplicationProperty::EP => "EP",
            ImplicationProperty::IP => "IP",
            ImplicationProperty::OP => "OP",
            ImplicationProperty::CP => "CP",
            ImplicationProperty::LCP => "L-CP",
            ImplicationProperty::RCP => "R-CP",
        };
        f.write_str(s)
    }
}

/// Verdict for one property: worst residual and the point attaining it.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: ImplicationProperty,
    pub holds: bool,
    pub worst_residual: f64,
    pub witness: Vec<f64>,
}

impl PropertyReport {
    fn from_scan(property: ImplicationProperty, residual: f64, witness: Vec<f64>, tol: f64) -> Self {
        Self { property, holds: residual <= tol, worst_residual: residual, witness }
    }
}

/// The (U,N)-implication I(x,y) = U(N(x), y).
///
/// `u` must be a uninorm or a raw disjunctor; whether the result really
/// is a fuzzy implication is decided by [`check_implication_axioms`].
pub fn un_implication(u: &BinaryOperator, n: &Negation) -> Result<BinaryOperator> {
    match u.kind() {
        OperatorKind::Uninorm | OperatorKind::Raw => {}
        other => {
            return Err(Error::InvalidArgument(format!(
                "un_implication needs a uninorm or raw disjunctor, `{}` is a {other}",
                u.name()
            )))
        }
    }
    let name = format!("I({},{})", u.name(), n.name());
    let u = u.clone();
    let n = n.clone();
    Ok(BinaryOperator::new(name, OperatorKind::Implication, move |x, y| u.eval(n.eval(x), y)))
}

/// Checks the defining axioms I1 (left antitonicity), I2 (right
/// isotonicity) and I3 (boundary values) on a grid.
pub fn check_implication_axioms(i: &BinaryOperator, grid: &Grid, tol: &Tolerances) -> Vec<PropertyReport> {
    let pts = grid.points();
    let mut i1 = (0.0f64, vec![]);
    let mut i2 = (0.0f64, vec![]);
    for &y in pts {
        for w in pts.windows(2) {
            let defect = (i.eval(w[1], y) - i.eval(w[0], y)).max(0.0);
            if defect > i1.0 {
                i1 = (defect, vec![w[0], w[1], y]);
            }
        }
    }
    for &x in pts {
        for w in pts.windows(2) {
            let defect = (i.eval(x, w[0]) - i.eval(x, w[1])).max(0.0);
            if defect > i2.0 {
                i2 = (defect, vec![x, w[0], w[1]]);
            }
        }
    }
    let mut i3 = (0.0f64, vec![]);
    for (x, y, want) in [(0.0, 0.0, 1.0), (1.0, 1.0, 1.0), (1.0, 0.0, 0.0)] {
        let defect = (i.eval(x, y) - want).abs();
        if defect > i3.0 {
            i3 = (defect, vec![x, y]);
        }
    }
    vec![
        PropertyReport::from_scan(ImplicationProperty::I1, i1.0, i1.1, tol.eq_tol),
        PropertyReport::from_scan(ImplicationProperty::I2, i2.0, i2.1, tol.eq_tol),
        PropertyReport::from_scan(ImplicationProperty::I3, i3.0, i3.1, tol.eq_tol),
    ]
}

/// The horizontal cut x -> I(x, alpha), packaged with decreasing
/// metadata for the continuity probe. Requires alpha in `[0,1[`.
pub fn alpha_cut(i: &BinaryOperator, alpha: f64) -> Result<UnitFunction1D> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("alpha_cut needs alpha in [0,1[, got {alpha}")));
    }
    let name = format!("cut({},{alpha})", i.name());
    let i = i.clone();
    Ok(UnitFunction1D::new(name, Monotonicity::Decreasing, move |x| i.eval(x, alpha)))
}

/// The horizontal cut wrapped as a [`Negation`] (natural negation of I
/// with respect to alpha). The claimed flags are left pessimistic; use
/// [`crate::negations::classify_negation`] for a verdict.
pub fn natural_negation(i: &BinaryOperator, alpha: f64) -> Result<Negation> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("natural negation needs alpha in [0,1[, got {alpha}")));
    }
    Ok(negation_from_cut(i, alpha, false, false))
}

/// Checks one extra property. The contraposition variants require the
/// negation they contrapose with.
pub fn check_property(
    i: &BinaryOperator,
    prop: ImplicationProperty,
    grid: &Grid,
    tol: &Tolerances,
    n: Option<&Negation>,
) -> Result<PropertyReport> {
    let pts = grid.points();
    let mut worst = 0.0f64;
    let mut witness: Vec<f64> = Vec::new();
    let mut update = |r: f64, w: &[f64]| {
        if r > worst {
            worst = r;
            witness = w.to_vec();
        }
    };

    match prop {
        ImplicationProperty::I1 | ImplicationProperty::I2 | ImplicationProperty::I3 => {
            let reports = check_implication_axioms(i, grid, tol);
            return Ok(reports.into_iter().find(|r| r.property == prop).unwrap());
        }
        ImplicationProperty::NP => {
            for &y in pts {
                update((i.eval(1.0, y) - y).abs(), &[y]);
            }
        }
        ImplicationProperty::IP => {
            for &x in pts {
                update((i.eval(x, x) - 1.0).abs(), &[x]);
            }
        }
        ImplicationProperty::OP => {
            // Biconditional at tolerance: I(x,y) >= 1 - eq_tol iff
            // x <= y + eq_tol.
            for &x in pts {
                for &y in pts {
                    let v = i.eval(x, y);
                    let is_one = v >= 1.0 - tol.eq_tol;
                    let leq = x <= y + tol.eq_tol;
                    if leq && !is_one {
                        update(1.0 - v, &[x, y]);
                    } else if !leq && is_one {
                        update(v - (1.0 - tol.eq_tol), &[x, y]);
                    }
                }
            }
        }
        ImplicationProperty::EP => {
            for &x in pts {
                for &y in pts {
                    for &z in pts {
                        let lhs = i.eval(x, i.eval(y, z));
                        let rhs = i.eval(y, i.eval(x, z));
                        update((lhs - rhs).abs(), &[x, y, z]);
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            for _ in 0..RANDOM_TRIPLES {
                let x: f64 = rng.gen();
                let y: f64 = rng.gen();
                let z: f64 = rng.gen();
                let lhs = i.eval(x, i.eval(y, z));
                let rhs = i.eval(y, i.eval(x, z));
                update((lhs - rhs).abs(), &[x, y, z]);
            }
        }
        ImplicationProperty::CP | ImplicationProperty::LCP | ImplicationProperty::RCP => {
            let n = n.ok_or_else(|| {
                Error::InvalidArgument(format!("property {prop} requires the negation it contraposes with"))
            })?;
            for &x in pts {
                for &y in pts {
                    let defect = match prop {
                        ImplicationProperty::CP => (i.eval(x, y) - i.eval(n.eval(y), n.eval(x))).abs(),
                        ImplicationProperty::LCP => (i.eval(n.eval(x), y) - i.eval(n.eval(y), x)).abs(),
                        ImplicationProperty::RCP => (i.eval(x, n.eval(y)) - i.eval(y, n.eval(x))).abs(),
                        _ => unreachable!(),
                    };
                    update(defect, &[x, y]);
                }
            }
        }
    }

    Ok(PropertyReport::from_scan(prop, worst, witness, tol.eq_tol))
}
