//! Fuzzy negations: constructors, axiom/classification checks, and the
//! modified pseudo-inverse.
//!
//! A fuzzy negation is a decreasing map N : `[0,1]` -> `[0,1]` with N(0) = 1
//! and N(1) = 0. The modified pseudo-inverse is
//!
//! R_N(0) = 1,   R_N(x) = sup { y in `[0,1]` | N(y) > x }  for x in `]0,1]`,
//!
//! which for continuous N is a strictly decreasing fuzzy negation
//! satisfying the inverse-function laws (one of them restricted to the
//! range of R_N).

use serde::Serialize;

use crate::numerics::{
    monotone_continuity_probe, neg_log2_snapped, sup_invert, Grid, Monotonicity, Tolerances, UnitFunction1D,
};
use crate::uninorms::BinaryOperator;
use crate::{Error, Result};

/// A fuzzy negation with claimed analytic metadata.
#[derive(Debug, Clone)]
pub struct Negation {
    func: UnitFunction1D,
    claimed_continuous: bool,
    claimed_strict: bool,
}

impl Negation {
    pub fn new(func: UnitFunction1D, claimed_continuous: bool, claimed_strict: bool) -> Self {
        Self { func, claimed_continuous, claimed_strict }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.func.eval(x)
    }

    pub fn name(&self) -> &str {
        self.func.name()
    }

    pub fn claimed_continuous(&self) -> bool {
        self.claimed_continuous
    }

    pub fn claimed_strict(&self) -> bool {
        self.claimed_strict
    }

    pub fn as_unit_function(&self) -> &UnitFunction1D {
        &self.func
    }
}

/// Builder parameters for the negation catalog.
pub enum NegationSpec {
    /// 1 - x.
    Standard,
    /// (1 - x) / (1 + lambda x) with lambda >= 0.
    Sugeno { lambda: f64 },
    /// 1 at 0, 0 at 1, the constant e on `]0,1[`.
    Step { e: f64 },
    /// 2^(-2^(-log2(-log2 x))), i.e. 2^(-1/q) with q = -log2 x; maps the
    /// power points 2^(-2^n) to 2^(-2^(-n)).
    PowerLog,
    /// x -> N(x)^2.
    SquareOf(Negation),
    /// The horizontal cut x -> I(x, alpha) of a binary operator.
    FromCut { operator: BinaryOperator, alpha: f64 },
    /// Linear interpolation through decreasing knots from (0,1) to (1,0).
    Table(Vec<(f64, f64)>),
}

/// Constructs a negation from a [`NegationSpec`], attaching the analytic
/// metadata of the chosen family.
pub fn build_negation(spec: NegationSpec) -> Result<Negation> {
    match spec {
        NegationSpec::Standard => {
            let f = UnitFunction1D::new("standard", Monotonicity::Decreasing, |x| 1.0 - x).with_closed_inverse(|y| 1.0 - y);
            Ok(Negation::new(f, true, true))
        }
        NegationSpec::Sugeno { lambda } => {
            if !lambda.is_finite() || lambda < 0.0 {
                return Err(Error::InvalidSpec(format!("sugeno negation needs lambda >= 0, got {lambda}")));
            }
            let f = UnitFunction1D::new(
                format!("sugeno({lambda})"),
                Monotonicity::Decreasing,
                move |x| (1.0 - x) / (1.0 + lambda * x),
            )
            .with_closed_inverse(move |y| (1.0 - y) / (1.0 + lambda * y));
            Ok(Negation::new(f, true, true))
        }
        NegationSpec::Step { e } => {
            if !(0.0 < e && e < 1.0) {
                return Err(Error::InvalidSpec(format!("step negation needs e in ]0,1[, got {e}")));
            }
            let f = UnitFunction1D::new(format!("step({e})"), Monotonicity::Decreasing, move |x| {
                if x == 0.0 {
                    1.0
                } else if x == 1.0 {
                    0.0
                } else {
                    e
                }
            })
            .with_discontinuities(vec![0.0, 1.0]);
            Ok(Negation::new(f, false, false))
        }
        NegationSpec::PowerLog => {
            let f = UnitFunction1D::new("powerlog", Monotonicity::Decreasing, powerlog_eval)
                .with_closed_inverse(powerlog_eval);
            Ok(Negation::new(f, true, true))
        }
        NegationSpec::SquareOf(base) => {
            let continuous = base.claimed_continuous();
            let strict = base.claimed_strict();
            let name = format!("sq({})", base.name());
            let disc = base.as_unit_function().declared_discontinuities().to_vec();
            let inverse = base.as_unit_function().closed_inverse().cloned();
            let b = base.clone();
            let mut f = UnitFunction1D::new(name, Monotonicity::Decreasing, move |x| {
                let v = b.eval(x);
                v * v
            })
            .with_discontinuities(disc);
            if let Some(inv) = inverse {
                f = f.with_closed_inverse(move |y| inv(y.sqrt()));
            }
            Ok(Negation::new(f, continuous, strict))
        }
        NegationSpec::FromCut { operator, alpha } => Ok(negation_from_cut(&operator, alpha, false, false)),
        NegationSpec::Table(points) => {
            if points.len() < 2 {
                return Err(Error::InvalidSpec("table negation needs at least two knots".into()));
            }
            if points[0] != (0.0, 1.0) || *points.last().unwrap() != (1.0, 0.0) {
                return Err(Error::InvalidSpec("table must run from (0,1) to (1,0)".into()));
            }
            for w in points.windows(2) {
                if w[1].0 <= w[0].0 {
                    return Err(Error::InvalidSpec("table knots must have strictly increasing x".into()));
                }
                if w[1].1 > w[0].1 {
                    return Err(Error::InvalidSpec("table knots must have non-increasing values".into()));
                }
            }
            let strict = points.windows(2).all(|w| w[1].1 < w[0].1);
            let knots = points.clone();
            let f = UnitFunction1D::new("table", Monotonicity::Decreasing, move |x| {
                // Linear interpolation between the bracketing knots.
                if x <= 0.0 {
                    return 1.0;
                }
                if x >= 1.0 {
                    return 0.0;
                }
                let mut i = 0;
                while knots[i + 1].0 < x {
                    i += 1;
                }
                let (x0, y0) = knots[i];
                let (x1, y1) = knots[i + 1];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            });
            Ok(Negation::new(f, true, strict))
        }
    }
}

fn powerlog_eval(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x >= 1.0 {
        return 0.0;
    }
    // 2^(-2^(-log2(-log2 x))) = 2^(-1/q) with q = -log2 x.
    let q = neg_log2_snapped(x);
    (-1.0 / q).exp2()
}

/// Wraps a horizontal cut x -> op(x, alpha) as a negation.
pub(crate) fn negation_from_cut(op: &BinaryOperator, alpha: f64, claimed_continuous: bool, claimed_strict: bool) -> Negation {
    let name = format!("cut({},{alpha})", op.name());
    let o = op.clone();
    let f = UnitFunction1D::new(name, Monotonicity::Decreasing, move |x| o.eval(x, alpha));
    Negation::new(f, claimed_continuous, claimed_strict)
}

/// Classification flags for a negation, all decided numerically on a grid.
#[derive(Debug, Clone, Serialize)]
pub struct NegationClass {
    pub is_negation: bool,
    pub is_continuous: bool,
    pub is_strict: bool,
    pub is_strong: bool,
    /// Worst residual among the boundary and monotonicity checks.
    pub worst_residual: f64,
}

/// Checks boundary values, monotonicity, continuity, strictness and
/// strongness of `n` on `grid`. The implication chain
/// strong => strict => continuous is enforced on the reported flags.
pub fn classify_negation(n: &Negation, grid: &Grid, tol: &Tolerances) -> Result<NegationClass> {
    let pts = grid.points();
    let boundary = (n.eval(0.0) - 1.0).abs().max(n.eval(1.0).abs());

    let mut mono_residual: f64 = 0.0;
    let mut strictly = true;
    let mut prev = n.eval(pts[0]);
    for &x in &pts[1..] {
        let v = n.eval(x);
        mono_residual = mono_residual.max(v - prev);
        if (prev - v).abs() <= tol.eq_tol {
            strictly = false;
        }
        prev = v;
    }

    let verdict = monotone_continuity_probe(n.as_unit_function(), grid, tol)?;
    let is_continuous = verdict.continuous;
    let is_negation = boundary <= tol.eq_tol && mono_residual <= tol.eq_tol;
    let is_strict = is_negation && is_continuous && strictly;

    let mut involution: f64 = 0.0;
    for &x in pts {
        involution = involution.max((n.eval(n.eval(x)) - x).abs());
    }
    let is_strong = is_strict && involution <= tol.eq_tol;

    Ok(NegationClass {
        is_negation,
        is_continuous,
        is_strict,
        is_strong,
        worst_residual: boundary.max(mono_residual),
    })
}

/// The modified pseudo-inverse R_N: 1 at 0, otherwise
/// sup { y | N(y) > x }, evaluated through the closed-form inverse when
/// one is attached and by bisection otherwise.
pub fn modified_pseudo_inverse(n: &Negation) -> Negation {
    let name = format!("pinv({})", n.name());
    let closed = n.as_unit_function().closed_inverse().cloned();
    let base = n.as_unit_function().clone();
    let f = UnitFunction1D::new(name, Monotonicity::Decreasing, move |x| {
        if x <= 0.0 {
            return 1.0;
        }
        match &closed {
            Some(inv) => inv(x).clamp(0.0, 1.0),
            // The metadata of `base` is Decreasing by construction.
            None => sup_invert(&base, x, true).unwrap_or(0.0),
        }
    });
    let f = if n.claimed_continuous() && n.claimed_strict() {
        let back = n.as_unit_function().clone();
        f.with_closed_inverse(move |y| back.eval(y))
    } else {
        f
    };
    // R_N of a strict negation is continuous; R_N of a continuous
    // negation is strictly decreasing.
    Negation::new(f, n.claimed_strict(), n.claimed_continuous() && n.claimed_strict())
}
