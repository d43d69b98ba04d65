//! Shared numeric substrate: grids, tolerance policy, a continuity probe
//! for monotone functions, and sup-based inversion by bisection.

use std::sync::Arc;

use serde::Serialize;

use crate::{Error, Result};

/// Default grid resolution for pairwise checks (401 points).
pub const DEFAULT_PAIR_GRID_N: usize = 400;

/// Default grid resolution for triple (associativity, exchange) checks
/// (33 points; the full triple product stays around 3.6e4 triples).
pub const DEFAULT_TRIPLE_GRID_N: usize = 32;

/// Number of pseudo-random triples added to every triple scan.
pub const RANDOM_TRIPLES: usize = 10_000;

/// Default seed for the pseudo-random triples.
pub const DEFAULT_SEED: u64 = 0x554E_494E;

/// Clamp applied to arguments of logarithm chains so that interior
/// evaluations never hit log(0). Endpoint results are special-cased
/// before the chain and are never affected.
pub const LOG_CLAMP: f64 = 1e-300;

/// Monotonicity direction declared for a unary function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

/// A named unary operator on `[0,1]` with analytic metadata.
#[derive(Clone)]
pub struct UnitFunction1D {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    name: String,
    direction: Monotonicity,
    declared_discontinuities: Vec<f64>,
    closed_inverse: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    closed_iterate: Option<Arc<dyn Fn(i32, f64) -> f64 + Send + Sync>>,
}

impl std::fmt::Debug for UnitFunction1D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnitFunction1D")
            .field("name", &self.name)
            .field("direction", &self.direction)
            .field("declared_discontinuities", &self.declared_discontinuities)
            .field("has_closed_inverse", &self.closed_inverse.is_some())
            .finish()
    }
}

impl UnitFunction1D {
    pub fn new(
        name: impl Into<String>,
        direction: Monotonicity,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            name: name.into(),
            direction,
            declared_discontinuities: Vec::new(),
            closed_inverse: None,
            closed_iterate: None,
        }
    }

    pub fn with_discontinuities(mut self, points: Vec<f64>) -> Self {
        self.declared_discontinuities = points;
        self
    }

    pub fn with_closed_inverse(mut self, inv: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.closed_inverse = Some(Arc::new(inv));
        self
    }

    /// Attaches a closed form for the n-th functional power f^(n)
    /// (negative n meaning the inverse applied |n| times). Iterative
    /// fallbacks double rounding error per application, so constructions
    /// that compose deep functional powers use this when present.
    pub fn with_closed_iterate(mut self, it: impl Fn(i32, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.closed_iterate = Some(Arc::new(it));
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn direction(&self) -> Monotonicity {
        self.direction
    }

    pub fn declared_discontinuities(&self) -> &[f64] {
        &self.declared_discontinuities
    }

    pub fn closed_inverse(&self) -> Option<&Arc<dyn Fn(f64) -> f64 + Send + Sync>> {
        self.closed_inverse.as_ref()
    }

    pub fn closed_iterate(&self) -> Option<&Arc<dyn Fn(i32, f64) -> f64 + Send + Sync>> {
        self.closed_iterate.as_ref()
    }
}

/// A finite sampling of `[0,1]` driving all numeric checks.
#[derive(Debug, Clone)]
pub struct Grid {
    points: Vec<f64>,
    spacing_hint: f64,
}

impl Grid {
    /// Uniform grid {i/n : i = 0..n}. Requires `n >= 2`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("uniform grid needs n >= 2, got {n}")));
        }
        let points: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        Ok(Self { points, spacing_hint: 1.0 / n as f64 })
    }

    /// Grid from explicit points. Must be strictly increasing from 0 to 1.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 || points[0] != 0.0 || *points.last().unwrap() != 1.0 {
            return Err(Error::InvalidArgument("grid must run from 0 to 1".into()));
        }
        let mut spacing: f64 = 0.0;
        for w in points.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidArgument("grid points must be strictly increasing".into()));
            }
            spacing = spacing.max(w[1] - w[0]);
        }
        Ok(Self { points, spacing_hint: spacing })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing_hint(&self) -> f64 {
        self.spacing_hint
    }

    /// Interior points (everything except 0 and 1).
    pub fn interior(&self) -> &[f64] {
        &self.points[1..self.points.len() - 1]
    }

    /// Number of subintervals (`points.len() - 1`).
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }
}

/// Uniform grid {i/n : i = 0..n}.
pub fn uniform_grid(n: usize) -> Result<Grid> {
    Grid::uniform(n)
}

/// Tolerance policy shared by all checks.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    /// Equality of operator values.
    pub eq_tol: f64,
    /// Closed-form algebraic identities (neutral elements, endpoint
    /// values of cuts).
    pub exact_tol: f64,
    /// Residual jump above which a discontinuity is declared.
    pub jump_floor: f64,
    /// Bisection rounds used when refining a suspected jump.
    pub refine_rounds: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { eq_tol: 1e-9, exact_tol: 1e-12, jump_floor: 1e-6, refine_rounds: 40 }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        if self.eq_tol <= 0.0 || self.exact_tol <= 0.0 || self.jump_floor <= 0.0 {
            return Err(Error::InvalidArgument("tolerances must be strictly positive".into()));
        }
        if self.refine_rounds < 1 {
            return Err(Error::InvalidArgument("refine_rounds must be >= 1".into()));
        }
        Ok(())
    }
}

/// Verdict of the continuity probe.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuityVerdict {
    pub continuous: bool,
    /// (location, residual jump) pairs for every persistent jump found.
    pub witnesses: Vec<(f64, f64)>,
    pub endpoint_low: f64,
    pub endpoint_high: f64,
}

/// Decides whether a monotone function on `[0,1]` is continuous.
///
/// For each grid interval whose increment exceeds `jump_floor` the
/// interval is bisected `refine_rounds` times, always keeping the half
/// with the larger increment. Monotonicity makes this sound: a genuine
/// jump persists under bisection while the observed increment of a
/// continuous segment decays with the interval width.
///
/// A witness is recorded only when the refined jump stays above
/// `jump_floor` and has stopped decaying over the last quarter of the
/// refinement. Functions with a logarithmic modulus of continuity (the
/// double-log negation of the power-band construction near 0) keep
/// decaying for as long as the interval is representable, while a real
/// jump is reproduced unchanged once the interval brackets it.
pub fn monotone_continuity_probe(f: &UnitFunction1D, grid: &Grid, tol: &Tolerances) -> Result<ContinuityVerdict> {
    tol.validate()?;
    let eval = |x: f64| -> Result<f64> {
        let v = f.eval(x);
        if !v.is_finite() {
            return Err(Error::Evaluation { point: x, value: v });
        }
        Ok(v)
    };

    let pts = grid.points();
    let mut values = Vec::with_capacity(pts.len());
    for &x in pts {
        values.push(eval(x)?);
    }

    let checkpoint = (3 * tol.refine_rounds / 4).max(1);
    let mut witnesses = Vec::new();
    for i in 0..pts.len() - 1 {
        let (mut a, mut b) = (pts[i], pts[i + 1]);
        let (mut fa, mut fb) = (values[i], values[i + 1]);
        if (fb - fa).abs() <= tol.jump_floor {
            continue;
        }
        let mut jump_at_checkpoint = (fb - fa).abs();
        for round in 0..tol.refine_rounds {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                // Adjacent floats: the remaining increment is the gap itself.
                jump_at_checkpoint = (fb - fa).abs();
                break;
            }
            let fm = eval(m)?;
            if (fm - fa).abs() >= (fb - fm).abs() {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
            if round + 1 == checkpoint {
                jump_at_checkpoint = (fb - fa).abs();
            }
        }
        let jump = (fb - fa).abs();
        let stalled = jump >= 0.999 * jump_at_checkpoint;
        if jump > tol.jump_floor && stalled {
            witnesses.push((0.5 * (a + b), jump));
        }
    }

    Ok(ContinuityVerdict {
        continuous: witnesses.is_empty(),
        witnesses,
        endpoint_low: values[0],
        endpoint_high: *values.last().unwrap(),
    })
}

/// Computes `sup { y in [0,1] | f(y) > target }` for a monotone
/// decreasing `f` by bisection, with the convention `sup {} = 0`.
///
/// With `strict = false` the predicate becomes `f(y) >= target`.
///
/// After the bisection bracket collapses, the candidate whose image is
/// closest to `target` is returned when one attains it; when the target
/// is attained exactly at a representable point this recovers that point
/// bit-exactly, which keeps pseudo-inverse round trips from landing on
/// the wrong side of a discontinuity of the operator being
/// reconstructed. When no candidate comes close (the function jumps over
/// the target, or its true preimage is below the subnormal floor) the
/// bracket midpoint is returned: it stays within one float of the sup at
/// a jump and stays strictly inside `]0,1[` when the preimage saturates.
pub fn sup_invert(f: &UnitFunction1D, target: f64, strict: bool) -> Result<f64> {
    if f.direction() != Monotonicity::Decreasing {
        return Err(Error::InvalidArgument(format!(
            "sup_invert requires a decreasing function, `{}` is declared increasing",
            f.name()
        )));
    }
    let pred = |y: f64| {
        let v = f.eval(y);
        if strict {
            v > target
        } else {
            v >= target
        }
    };

    if !pred(0.0) {
        // Empty set.
        return Ok(0.0);
    }
    if pred(1.0) {
        return Ok(1.0);
    }

    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    // The sup can sit at doubly-exponential scale (2^(-2^n) points of
    // the power-band constructions), so the bracket is halved until it
    // collapses to adjacent floats, down to the subnormal floor.
    for _ in 0..1300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    // Terminal polish: the sup lives inside [lo, hi]; pick the bracket
    // candidate whose image is nearest the target, preferring the larger
    // point on ties.
    let mut candidates = vec![lo, 0.5 * (lo + hi), hi];
    let lo_up = next_after_up(lo);
    if lo_up < hi {
        candidates.push(lo_up);
    }
    let hi_down = next_after_down(hi);
    if hi_down > lo {
        candidates.push(hi_down);
    }
    let mut best = lo;
    let mut best_err = f64::INFINITY;
    for &c in &candidates {
        let err = (f.eval(c) - target).abs();
        if err < best_err || (err == best_err && c > best) {
            best = c;
            best_err = err;
        }
    }
    if best_err <= 1e-9 {
        return Ok(best);
    }
    // Jump or saturation: stay strictly inside the bracket (its midpoint
    // can round onto lo when lo = 0 and hi is the smallest subnormal).
    let mid = 0.5 * (lo + hi);
    Ok(if mid > lo && mid < hi { mid } else { hi })
}

/// Finds `y` with `f(y) = target` for a monotone increasing `f` on
/// `[lo, hi]` by bisection with terminal polishing. Returns the best
/// candidate even when the target is not attained; callers check the
/// residual.
pub fn invert_increasing(f: impl Fn(f64) -> f64, target: f64, lo: f64, hi: f64) -> f64 {
    let mut lo = lo;
    let mut hi = hi;
    if f(lo) >= target {
        return lo;
    }
    if f(hi) <= target {
        return hi;
    }
    for _ in 0..1300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut candidates = vec![lo, 0.5 * (lo + hi), hi];
    let lo_up = next_after_up(lo);
    if lo_up < hi {
        candidates.push(lo_up);
    }
    let hi_down = next_after_down(hi);
    if hi_down > lo {
        candidates.push(hi_down);
    }
    let mut best = lo;
    let mut best_err = f64::INFINITY;
    for &c in &candidates {
        let err = (f(c) - target).abs();
        if err < best_err {
            best = c;
            best_err = err;
        }
    }
    best
}

fn next_after_up(x: f64) -> f64 {
    if x == 0.0 {
        f64::from_bits(1)
    } else if x > 0.0 {
        f64::from_bits(x.to_bits() + 1)
    } else {
        f64::from_bits(x.to_bits() - 1)
    }
}

fn next_after_down(x: f64) -> f64 {
    if x == 0.0 {
        -f64::from_bits(1)
    } else if x > 0.0 {
        f64::from_bits(x.to_bits() - 1)
    } else {
        f64::from_bits(x.to_bits() + 1)
    }
}

// ---------------------------------------------------------------------
// Exact dyadic-exponent helpers.
//
// The power-band constructions partition ]0,1[ into bands delimited by
// points of the form 2^(-2^n). Working with q = -log2(x) turns band
// lookup into exponent extraction and the maps x -> x^(2^k) into exact
// scalings q -> q * 2^k. Only the initial log2 and the final exp2 round.
// ---------------------------------------------------------------------

/// Exact floor(log2(q)) for finite positive q (exponent extraction;
/// handles subnormals by normalizing first).
pub(crate) fn floor_log2(q: f64) -> i32 {
    debug_assert!(q > 0.0 && q.is_finite());
    let bits = q.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp != 0 {
        exp - 1023
    } else {
        // Subnormal: normalize by scaling up.
        floor_log2(q * 2f64.powi(100)) - 100
    }
}

/// Exact q * 2^k (multiplication by a power of two).
pub(crate) fn mul_pow2(q: f64, k: i32) -> f64 {
    if (-1022..=1023).contains(&k) {
        q * f64::from_bits(((1023 + k) as u64) << 52)
    } else if k > 0 {
        q * 2f64.powi(1023) * 2f64.powi(k - 1023)
    } else {
        q * 2f64.powi(-1022) * 2f64.powi(k + 1022)
    }
}

/// Snaps q to the nearest power of two when within a few ulps of it.
///
/// The band partitions are delimited by exact powers of two in q-space;
/// a value that lands within rounding distance of a delimiter is treated
/// as the delimiter itself so that compositions classify it consistently.
pub(crate) fn snap_q(q: f64) -> f64 {
    if !q.is_finite() || q <= 0.0 {
        return q;
    }
    let e = floor_log2(q);
    for cand_e in [e, e + 1] {
        let p = mul_pow2(1.0, cand_e);
        if (q - p).abs() <= 8.0 * f64::EPSILON * p {
            return p;
        }
    }
    q
}

/// `-log2(x)` for x in `]0,1[`, clamped away from 0 inside the log chain
/// and snapped to exact powers of two.
pub(crate) fn neg_log2_snapped(x: f64) -> f64 {
    let x = x.max(LOG_CLAMP);
    snap_q(-x.log2())
}

/// t^(2^n) for t in `]0,1[` through the exact-exponent path: one log2 and
/// one exp2 round, the scaling by 2^n is exact.
pub(crate) fn pow2_iterate(n: i32, t: f64) -> f64 {
    (-mul_pow2(neg_log2_snapped(t), n)).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn uniform_grid_small() {
        let g = uniform_grid(4).unwrap();
        assert_eq!(g.points(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(g.spacing_hint(), 0.25);
        let g2 = uniform_grid(2).unwrap();
        assert_eq!(g2.points(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn uniform_grid_rejects_n_below_two() {
        assert!(uniform_grid(1).is_err());
        assert!(uniform_grid(0).is_err());
    }

    #[test]
    fn explicit_grids_are_validated() {
        assert!(Grid::from_points(vec![0.0, 0.4, 0.2, 1.0]).is_err());
        assert!(Grid::from_points(vec![0.1, 0.5, 1.0]).is_err());
        assert!(Grid::from_points(vec![0.0, 0.5]).is_err());
        let g = Grid::from_points(vec![0.0, 0.1, 0.7, 1.0]).unwrap();
        assert!((g.spacing_hint() - 0.6).abs() < 1e-15);
    }

    #[test]
    fn uniform_grid_endpoints_exact() {
        for n in [2, 3, 7, 100, 400] {
            let g = uniform_grid(n).unwrap();
            assert_eq!(g.points()[0], 0.0);
            assert_eq!(*g.points().last().unwrap(), 1.0);
        }
    }

    #[test]
    fn probe_polynomial_is_continuous() {
        let f = UnitFunction1D::new("x^2", Monotonicity::Increasing, |x| x * x);
        let v = monotone_continuity_probe(&f, &uniform_grid(100).unwrap(), &tols()).unwrap();
        assert!(v.continuous, "witnesses: {:?}", v.witnesses);
        assert_eq!(v.endpoint_low, 0.0);
        assert_eq!(v.endpoint_high, 1.0);
    }

    #[test]
    fn probe_step_negation_finds_both_jumps() {
        // N(0)=1, N(1)=0, N = 1/2 in between: jumps of 1/2 at 0 and 1.
        let f = UnitFunction1D::new("step", Monotonicity::Decreasing, |x| {
            if x == 0.0 {
                1.0
            } else if x == 1.0 {
                0.0
            } else {
                0.5
            }
        });
        let v = monotone_continuity_probe(&f, &uniform_grid(100).unwrap(), &tols()).unwrap();
        assert!(!v.continuous);
        assert_eq!(v.witnesses.len(), 2);
        let (loc0, jump0) = v.witnesses[0];
        let (loc1, jump1) = v.witnesses[1];
        assert!(loc0 < 1e-9 && (jump0 - 0.5).abs() < 1e-12);
        assert!(loc1 > 1.0 - 1e-9 && (jump1 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn probe_extreme_steepness_is_still_continuous() {
        // x^(2^10) is continuous; its observed jumps near 1 decay under
        // bisection even though the initial grid increment is ~1.
        let f = UnitFunction1D::new("x^1024", Monotonicity::Increasing, |x| x.powi(1024));
        let v = monotone_continuity_probe(&f, &uniform_grid(100).unwrap(), &tols()).unwrap();
        assert!(v.continuous, "witnesses: {:?}", v.witnesses);
    }

    #[test]
    fn probe_reports_evaluation_failure() {
        let f = UnitFunction1D::new("bad", Monotonicity::Increasing, |x| if x > 0.5 { f64::NAN } else { x });
        let err = monotone_continuity_probe(&f, &uniform_grid(10).unwrap(), &tols()).unwrap_err();
        assert!(matches!(err, Error::Evaluation { .. }));
    }

    #[test]
    fn sup_invert_standard_negation() {
        let f = UnitFunction1D::new("1-x", Monotonicity::Decreasing, |x| 1.0 - x);
        // Closed form: sup { y | 1-y > t } = 1-t.
        let r = sup_invert(&f, 0.3, true).unwrap();
        assert!((r - 0.7).abs() < 1e-15);
    }

    #[test]
    fn sup_invert_empty_set_convention() {
        let f = UnitFunction1D::new("1-x", Monotonicity::Decreasing, |x| 1.0 - x);
        assert_eq!(sup_invert(&f, 1.0, true).unwrap(), 0.0);
    }

    #[test]
    fn sup_invert_step_negation() {
        // e = 1/2. The sup-set oracle: {y | N(y) > 0.7} = {0}, sup 0.
        let f = UnitFunction1D::new("step", Monotonicity::Decreasing, |x| {
            if x == 0.0 {
                1.0
            } else if x == 1.0 {
                0.0
            } else {
                0.5
            }
        });
        let r = sup_invert(&f, 0.7, true).unwrap();
        assert!(r.abs() < 1e-12, "got {r}");
        // {y | N(y) > 0.3} = [0,1), sup 1.
        let r = sup_invert(&f, 0.3, true).unwrap();
        assert!((r - 1.0).abs() < 1e-12, "got {r}");
    }

    #[test]
    fn sup_invert_rejects_increasing_metadata() {
        let f = UnitFunction1D::new("id", Monotonicity::Increasing, |x| x);
        assert!(sup_invert(&f, 0.5, true).is_err());
    }

    #[test]
    fn sup_invert_recovers_representable_points_exactly() {
        // The target 0.375 is attained exactly at 0.625; polishing must
        // return that double bit-exactly.
        let f = UnitFunction1D::new("1-x", Monotonicity::Decreasing, |x| 1.0 - x);
        let r = sup_invert(&f, 0.375, true).unwrap();
        assert_eq!(r, 0.625);
    }

    #[test]
    fn exponent_helpers_are_exact() {
        assert_eq!(floor_log2(1.0), 0);
        assert_eq!(floor_log2(2.0), 1);
        assert_eq!(floor_log2(1.9999999999999998), 0);
        assert_eq!(floor_log2(0.5), -1);
        assert_eq!(floor_log2(0.4999999999999999), -2);
        assert_eq!(mul_pow2(3.0, -2), 0.75);
        assert_eq!(mul_pow2(0.75, 2), 3.0);
    }

    #[test]
    fn snap_pulls_near_powers_onto_powers() {
        assert_eq!(snap_q(1.0 + f64::EPSILON), 1.0);
        assert_eq!(snap_q(1.0 - f64::EPSILON), 1.0);
        assert_eq!(snap_q(0.5 + f64::EPSILON / 4.0), 0.5);
        assert_eq!(snap_q(2.0000000000000004), 2.0);
        // Away from powers of two nothing moves.
        assert_eq!(snap_q(1.4), 1.4);
        assert_eq!(snap_q(3.0), 3.0);
    }

    #[test]
    fn invert_increasing_hits_square_root() {
        let y = invert_increasing(|t| t * t, 0.25, 0.0, 1.0);
        assert_eq!(y, 0.5);
    }
}
