//! The band uninorm generated by f(x) = x^2 with neutral element 1/2.
//!
//! The points u(n) = 2^(-2^n), n ranging over the integers, partition
//! `]0,1[` into bands ]u(n+1), u(n)]. Off the border of the unit square,
//!
//! U(x,y) = f^(n+m)( min( f^(-n)(x), f^(-m)(y) ) )
//!
//! where n, m are the band indices of x and y and f^(k)(x) = x^(2^k).
//!
//! Evaluation works on q = -log2(x): the band index becomes exponent
//! extraction, f^(k) becomes the exact scaling q -> q * 2^k, and min
//! becomes max. Only the initial log2 and the final exp2 round, and q is
//! snapped onto exact powers of two when within rounding distance, so
//! compositions classify band borders consistently.

use crate::numerics::{floor_log2, mul_pow2, neg_log2_snapped};
use crate::uninorms::operator::{BinaryOperator, OperatorKind};

/// The partition point u(n) = 2^(-2^n).
pub fn power_point(n: i32) -> f64 {
    (-(2f64.powi(n))).exp2()
}

/// Band index of x in `]0,1[`: the unique n with x in ]u(n+1), u(n)].
pub fn power_band_index(x: f64) -> i32 {
    floor_log2(neg_log2_snapped(x))
}

/// Raw evaluation on `]0,1[^2` in q-space.
fn eval_interior(x: f64, y: f64) -> f64 {
    let qx = neg_log2_snapped(x);
    let qy = neg_log2_snapped(y);
    let n = floor_log2(qx);
    let m = floor_log2(qy);
    // Scale both into the base band [1,2) (values in ]1/4,1/2]); the
    // smaller value has the larger q.
    let qmin = mul_pow2(qx, -n).max(mul_pow2(qy, -m));
    let qr = mul_pow2(qmin, n + m);
    (-qr).exp2()
}

/// The disjunctive uninorm with neutral element 1/2 built from the power
/// sequence of f(x) = x^2. Its horizontal cuts at the points u(n) are
/// exactly f^(n); all other cuts jump at every band border.
pub fn power_band_uninorm() -> BinaryOperator {
    BinaryOperator::new("powerband", OperatorKind::Uninorm, |x, y| {
        if x.max(y) == 1.0 {
            1.0
        } else if x.min(y) == 0.0 {
            0.0
        } else if y == 0.5 {
            x
        } else if x == 0.5 {
            y
        } else {
            eval_interior(x, y)
        }
    })
    .with_neutral(0.5)
    .with_disjunctive(true)
    .with_discontinuity_note("jumps on the lower border of every band rectangle")
}
