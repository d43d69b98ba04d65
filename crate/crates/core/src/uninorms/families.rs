//! Classical uninorm families: representable uninorms from an additive
//! generator, min/max-filled uninorms from a t-norm/t-conorm pair, the
//! drastic-band uninorm, and conjugation by a fixed element.

use std::sync::Arc;

use crate::uninorms::operator::{BinaryOperator, OperatorKind};
use crate::{Error, Result};

/// Additive generator of a representable uninorm: a continuous, strictly
/// increasing `h : `]0,1[` -> R` with `h(0+) = -inf`, `h(e) = 0` and
/// `h(1-) = +inf`, together with its inverse.
#[derive(Clone)]
pub struct GeneratorDescriptor {
    h: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    h_inverse: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    neutral: f64,
}

impl GeneratorDescriptor {
    pub fn new(
        neutral: f64,
        h: impl Fn(f64) -> f64 + Send + Sync + 'static,
        h_inverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(0.0 < neutral && neutral < 1.0) {
            return Err(Error::InvalidArgument(format!("generator neutral must lie in ]0,1[, got {neutral}")));
        }
        Ok(Self { h: Arc::new(h), h_inverse: Arc::new(h_inverse), neutral })
    }

    /// The family `h(x) = ln(k*x / (1-x))` with `k > 0`; its neutral
    /// element is `1/(1+k)`. `k = 1` gives the standard representable
    /// uninorm with neutral 1/2, `k = 3` the one with neutral 1/4.
    pub fn log_ratio(k: f64) -> Result<Self> {
        if !k.is_finite() || k <= 0.0 {
            return Err(Error::InvalidArgument(format!("log-ratio generator needs k > 0, got {k}")));
        }
        Self::new(
            1.0 / (1.0 + k),
            move |x| (k * x / (1.0 - x)).ln(),
            // 1/(1 + k e^-t) stays finite at both infinities.
            move |t| 1.0 / (1.0 + k * (-t).exp()),
        )
    }

    pub fn h(&self, x: f64) -> f64 {
        (self.h)(x)
    }

    pub fn h_inverse(&self, t: f64) -> f64 {
        (self.h_inverse)(t)
    }

    pub fn neutral(&self) -> f64 {
        self.neutral
    }
}

/// Representable uninorm `U(x,y) = h^{-1}(h(x) + h(y))` with the corner
/// pair {(0,1),(1,0)} fixed to 1 (disjunctive) or 0 (conjunctive).
pub fn representable_uninorm(g: GeneratorDescriptor, disjunctive: bool) -> BinaryOperator {
    let corner = if disjunctive { 1.0 } else { 0.0 };
    let e = g.neutral();
    let name = format!("rep(e={e})");
    BinaryOperator::new(name, OperatorKind::Uninorm, move |x, y| {
        if (x == 0.0 && y == 1.0) || (x == 1.0 && y == 0.0) {
            return corner;
        }
        let s = g.h(x) + g.h(y);
        g.h_inverse(s).clamp(0.0, 1.0)
    })
    .with_neutral(e)
    .with_disjunctive(disjunctive)
}

/// How the cross region `[0,e] x [e,1]` of a min/max uninorm is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossMode {
    Min,
    Max,
}

/// Uninorm assembled from a t-norm rescaled to `[0,e]^2`, a t-conorm
/// rescaled to `[e,1]^2` and `min` or `max` on the cross region.
pub fn minmax_uninorm(t: BinaryOperator, s: BinaryOperator, e: f64, mode: CrossMode) -> Result<BinaryOperator> {
    if t.kind() != OperatorKind::TNorm {
        return Err(Error::InvalidArgument(format!("`{}` is not tagged as a t-norm", t.name())));
    }
    if s.kind() != OperatorKind::TConorm {
        return Err(Error::InvalidArgument(format!("`{}` is not tagged as a t-conorm", s.name())));
    }
    if !(0.0 < e && e < 1.0) {
        return Err(Error::InvalidArgument(format!("neutral element must lie in ]0,1[, got {e}")));
    }
    let name = format!(
        "{}({},{},e={e})",
        if mode == CrossMode::Min { "umin" } else { "umax" },
        t.name(),
        s.name()
    );
    let disjunctive = mode == CrossMode::Max;
    Ok(BinaryOperator::new(name, OperatorKind::Uninorm, move |x, y| {
        if x <= e && y <= e {
            e * t.eval(x / e, y / e)
        } else if x >= e && y >= e {
            e + (1.0 - e) * s.eval((x - e) / (1.0 - e), (y - e) / (1.0 - e))
        } else {
            match mode {
                CrossMode::Min => x.min(y),
                CrossMode::Max => x.max(y),
            }
        }
    })
    .with_neutral(e)
    .with_disjunctive(disjunctive))
}

/// The uninorm whose underlying functions are the maximum t-conorm and
/// the drastic product t-norm, written out branch by branch:
///
/// 1 if max(x,y) = 1; max(x,y) if x,y in `]e,1[`; 0 if x,y in `[0,e[`;
/// x if y = e; y if x = e; min(x,y) otherwise.
pub fn drastic_band_uninorm(e: f64) -> Result<BinaryOperator> {
    if !(0.0 < e && e < 1.0) {
        return Err(Error::InvalidArgument(format!("neutral element must lie in ]0,1[, got {e}")));
    }
    Ok(BinaryOperator::new(format!("drasticband(e={e})"), OperatorKind::Uninorm, move |x, y| {
        if x.max(y) == 1.0 {
            1.0
        } else if x > e && y > e {
            x.max(y)
        } else if x < e && y < e {
            0.0
        } else if y == e {
            x
        } else if x == e {
            y
        } else {
            x.min(y)
        }
    })
    .with_neutral(e)
    .with_disjunctive(true)
    .with_discontinuity_note("horizontal cuts jump everywhere except at y = e"))
}

/// Conjugation of a uninorm by a fixed element: `U'(x,y) = U(w, U(x,y))`.
///
/// Requires `U(w,z) = e` so that `z` becomes the neutral element of the
/// shifted operator (`U'(x,z) = U(U(w,z),x) = x` by associativity).
pub fn conjugate_shift(u: BinaryOperator, w: f64, z: f64) -> Result<BinaryOperator> {
    let e = u
        .neutral()
        .ok_or_else(|| Error::InvalidArgument(format!("`{}` has no claimed neutral element", u.name())))?;
    let probe = u.eval(w, z);
    if (probe - e).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "conjugate_shift needs U(w,z) = e: U({w},{z}) = {probe}, neutral is {e}"
        )));
    }
    let name = format!("shift({},w={w},z={z})", u.name());
    let disjunctive = u.disjunctive();
    let mut op = BinaryOperator::new(name, OperatorKind::Uninorm, move |x, y| u.eval(w, u.eval(x, y))).with_neutral(z);
    if let Some(d) = disjunctive {
        op = op.with_disjunctive(d);
    }
    Ok(op)
}
