//! Band-restricted uninorms and the constructions that extend them to
//! the whole unit square: affine rescaling, ordinal sums of semigroups,
//! the generic band builder from a cut function f and a base-band
//! operator F, and the seven-case extension driven by iterates of f.

use std::sync::Arc;

use crate::numerics::{invert_increasing, Monotonicity, Tolerances, UnitFunction1D};
use crate::uninorms::operator::{BinaryOperator, OperatorKind};
use crate::{Error, Result};

/// A uninorm on an open band `]lo,hi[` of the unit interval, kept in outer
/// coordinates. Callers only evaluate it inside the band.
#[derive(Clone)]
pub struct BandOperator {
    op: BinaryOperator,
    lo: f64,
    hi: f64,
    neutral: f64,
}

impl BandOperator {
    pub fn new(op: BinaryOperator, lo: f64, hi: f64, neutral: f64) -> Self {
        Self { op, lo, hi, neutral }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.op.eval(x, y)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn neutral(&self) -> f64 {
        self.neutral
    }

    pub fn operator(&self) -> &BinaryOperator {
        &self.op
    }
}

impl std::fmt::Debug for BandOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BandOperator")
            .field("name", &self.op.name())
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("neutral", &self.neutral)
            .finish()
    }
}

/// Affine conjugation of an operator on `]0,1[` onto the band `]a,d[` via
/// t -> a + (d-a) t.
pub fn band_rescale(inner: &BinaryOperator, a: f64, d: f64) -> Result<BandOperator> {
    if !(0.0 <= a && a < d && d <= 1.0) {
        return Err(Error::InvalidArgument(format!("band bounds must satisfy 0 <= a < d <= 1, got [{a},{d}]")));
    }
    let e_inner = inner
        .neutral()
        .ok_or_else(|| Error::InvalidArgument(format!("`{}` has no claimed neutral element", inner.name())))?;
    let width = d - a;
    let neutral = a + width * e_inner;
    let base = inner.clone();
    let name = format!("rescale({},[{a},{d}])", inner.name());
    let op = BinaryOperator::new(name, OperatorKind::Raw, move |x, y| {
        a + width * base.eval((x - a) / width, (y - a) / width)
    })
    .with_neutral(neutral);
    Ok(BandOperator::new(op, a, d, neutral))
}

/// Outer completion used by [`band_ordinal_sum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OuterOps {
    /// min below the band, max above: the inner summand is last in the
    /// ordinal-sum order, so any coordinate at or above the upper edge
    /// absorbs via max and everything else falls through to min.
    MinMax,
    /// Product on `[0,a]^2` and the dual product x + y - xy on `[d,1]^2`,
    /// with the order upper < lower < band: an upper-block coordinate
    /// absorbs first (max), then a lower-block coordinate (min).
    ProdDualProd,
}

/// Extends a band uninorm to `[0,1]^2` as an ordinal sum of semigroups.
pub fn band_ordinal_sum(inner: &BandOperator, outer: OuterOps) -> BinaryOperator {
    let a = inner.lo();
    let d = inner.hi();
    let band = inner.clone();
    let name = match outer {
        OuterOps::MinMax => format!("osum-minmax({})", band.op.name()),
        OuterOps::ProdDualProd => format!("osum-prod({})", band.op.name()),
    };
    BinaryOperator::new(name, OperatorKind::Uninorm, move |x, y| match outer {
        OuterOps::MinMax => {
            if x > a && x < d && y > a && y < d {
                band.eval(x, y)
            } else if x.max(y) >= d {
                x.max(y)
            } else {
                x.min(y)
            }
        }
        OuterOps::ProdDualProd => {
            if x <= a && y <= a {
                x * y
            } else if x >= d && y >= d {
                x + y - x * y
            } else if x > a && x < d && y > a && y < d {
                band.eval(x, y)
            } else if x >= d || y >= d {
                x.max(y)
            } else {
                x.min(y)
            }
        }
    })
    .with_neutral(inner.neutral())
    .with_disjunctive(true)
}

/// Walks the band partition of `]a,d[` generated by the iterates of a
/// strictly increasing cut function f with f(t) < t inside the band:
/// band n is ]f^(n+1)(e), f^(n)(e)].
pub(crate) struct BandWalker {
    f: UnitFunction1D,
    e: f64,
    cap: usize,
}

impl BandWalker {
    pub(crate) fn new(f: UnitFunction1D, e: f64) -> Self {
        Self { f, e, cap: 1100 }
    }

    pub(crate) fn apply(&self, v: f64) -> f64 {
        self.f.eval(v)
    }

    pub(crate) fn unapply(&self, v: f64) -> f64 {
        match self.f.closed_inverse() {
            Some(inv) => inv(v),
            None => {
                let f = &self.f;
                invert_increasing(|t| f.eval(t), v, 0.0, 1.0)
            }
        }
    }

    /// f^(k): k forward applications for k > 0, |k| inverse applications
    /// for k < 0. Uses the closed iterate when the function carries one;
    /// the iterative fallback doubles rounding error per application.
    pub(crate) fn power(&self, k: i32, v: f64) -> f64 {
        if let Some(it) = self.f.closed_iterate() {
            return it(k, v);
        }
        let mut v = v;
        if k >= 0 {
            for _ in 0..k {
                v = self.apply(v);
            }
        } else {
            for _ in 0..(-k) {
                v = self.unapply(v);
            }
        }
        v
    }

    /// Band index of s: the unique n with s in ]f^(n+1)(e), f^(n)(e)].
    pub(crate) fn band_index(&self, s: f64) -> Result<i32> {
        if s <= self.e {
            let mut edge = self.e;
            for k in 0..self.cap {
                let next = self.apply(edge);
                if s > next {
                    return Ok(k as i32);
                }
                if next >= edge {
                    break; // no progress; s is at or below the accumulation point
                }
                edge = next;
            }
        } else {
            let mut edge = self.e;
            for k in 1..=self.cap {
                edge = self.unapply(edge);
                if s <= edge {
                    return Ok(-(k as i32));
                }
                if edge >= 1.0 {
                    break;
                }
            }
        }
        Err(Error::InvalidArgument(format!("point {s} is outside the band partition (too close to its closure)")))
    }
}

/// Specification of a band uninorm from a cut function and a base-band
/// operator: f strictly increasing and continuous with f(0) = 0 and
/// f(1) = 1, F commutative and non-decreasing on `[x,e]^2` with neutral
/// element e and F(s,x) = f(s), where x = f(e).
pub struct FBandSpec {
    f: UnitFunction1D,
    big_f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    e: f64,
    x: f64,
    /// When set, the compatibility identity between F and f is sampled
    /// for band indices beyond the base range {0,1} as well.
    pub validate_extended: bool,
}

impl FBandSpec {
    pub fn new(f: UnitFunction1D, big_f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static, e: f64) -> Result<Self> {
        if f.direction() != Monotonicity::Increasing {
            return Err(Error::InvalidSpec("band cut function must be increasing".into()));
        }
        if !(0.0 < e && e < 1.0) {
            return Err(Error::InvalidSpec(format!("neutral element must lie in ]0,1[, got {e}")));
        }
        let x = f.eval(e);
        if x.is_nan() || x >= e {
            return Err(Error::InvalidSpec(format!("need f(e) < e for the band partition, got f({e}) = {x}")));
        }
        Ok(Self { f, big_f: Arc::new(big_f), e, x, validate_extended: false })
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    /// x = f(e), the lower edge of the base band.
    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn big_f(&self, s: f64, t: f64) -> f64 {
        (self.big_f)(s, t)
    }
}

/// Validates an [`FBandSpec`] on a sample and assembles the band uninorm
///
/// U(s,t) = f^(n+m)( F( f^(-n)(s), f^(-m)(t) ) ),
///
/// where n, m are the band indices of s and t. The band is `]a,d[` with
/// a = lim f^(n)(x) and d = lim f^(-n)(x).
pub fn propf_uninorm(spec: FBandSpec, tol: &Tolerances) -> Result<BandOperator> {
    let walker = BandWalker::new(spec.f.clone(), spec.e);
    let e = spec.e;
    let x = spec.x;

    // Validation sample over [x, e].
    let sample: Vec<f64> = (0..=16).map(|i| x + (e - x) * i as f64 / 16.0).collect();
    for &s in &sample {
        let fs = spec.big_f(s, e);
        if (fs - s).abs() > tol.eq_tol {
            return Err(Error::InvalidSpec(format!("F({s},e) = {fs}, expected the neutral identity {s}")));
        }
        let fx = spec.big_f(s, x);
        let f_of_s = spec.f.eval(s);
        if (fx - f_of_s).abs() > tol.eq_tol {
            return Err(Error::InvalidSpec(format!("F({s},x) = {fx}, expected f(s) = {f_of_s}")));
        }
    }
    for (i, &s) in sample.iter().enumerate() {
        for &t in &sample[i..] {
            let ab = spec.big_f(s, t);
            let ba = spec.big_f(t, s);
            if (ab - ba).abs() > tol.eq_tol {
                return Err(Error::InvalidSpec(format!("F not commutative at ({s},{t}): {ab} vs {ba}")));
            }
        }
    }
    for w in sample.windows(2) {
        for &t in &sample {
            let lo = spec.big_f(w[0], t);
            let hi = spec.big_f(w[1], t);
            if lo > hi + tol.eq_tol {
                return Err(Error::InvalidSpec(format!("F not non-decreasing at ({},{t}) vs ({},{t})", w[0], w[1])));
            }
        }
    }
    // Compatibility between F and f on sampled triples (the identity
    // behind associativity of the assembled operator).
    let range_ok = |idx: i32| -> bool { spec.validate_extended || idx == 0 || idx == 1 };
    for &s in sample.iter().step_by(2) {
        for &t in sample.iter().step_by(2) {
            for &u in sample.iter().step_by(2) {
                if s <= x || t <= x || u <= x {
                    continue;
                }
                let fst = spec.big_f(s, t);
                let ftu = spec.big_f(t, u);
                if fst <= 0.0 || ftu <= 0.0 {
                    continue;
                }
                let n = walker.band_index(fst)?;
                let m = walker.band_index(ftu)?;
                if !range_ok(n) || !range_ok(m) {
                    continue;
                }
                let lhs = walker.power(m, spec.big_f(s, walker.power(-m, ftu)));
                let rhs = walker.power(n, spec.big_f(walker.power(-n, fst), u));
                if (lhs - rhs).abs() > tol.eq_tol {
                    return Err(Error::InvalidSpec(format!(
                        "F violates the compatibility identity at ({s},{t},{u}): {lhs} vs {rhs}"
                    )));
                }
            }
        }
    }

    // Band limits a = lim f^(n)(x), d = lim f^(-n)(x).
    let mut a = x;
    for _ in 0..20_000 {
        let next = walker.apply(a);
        if (next - a).abs() < 1e-15 {
            a = next;
            break;
        }
        a = next;
    }
    let mut d = x;
    for _ in 0..20_000 {
        let next = walker.unapply(d);
        if (next - d).abs() < 1e-15 {
            d = next;
            break;
        }
        d = next;
    }

    let walker = Arc::new(walker);
    let big_f = spec.big_f.clone();
    let op = BinaryOperator::new(format!("fband(e={e})"), OperatorKind::Raw, move |s, t| {
        let n = match walker.band_index(s) {
            Ok(n) => n,
            Err(_) => return f64::NAN,
        };
        let m = match walker.band_index(t) {
            Ok(m) => m,
            Err(_) => return f64::NAN,
        };
        let s0 = walker.power(-n, s);
        let t0 = walker.power(-m, t);
        walker.power(n + m, big_f(s0, t0))
    })
    .with_neutral(e);
    Ok(BandOperator::new(op, a, d, e))
}

/// The seven-case extension of a band uninorm to the whole square, driven
/// by a cut function f that fixes the band edges a and d:
///
/// 0 on `[0,a]^2`; 1 on `[d,1[^2`; d on the mixed blocks `[0,a]` x `[d,1[`;
/// 1 whenever a coordinate is 1; f^(n)(outer coordinate) when the other
/// coordinate lies in band n; the inner operator inside `]a,d[^2`.
pub fn equf_uninorm(f: UnitFunction1D, inner: &BandOperator, a: f64, d: f64, e: f64, tol: &Tolerances) -> Result<BinaryOperator> {
    if !(0.0 < a && a < d && d < 1.0) {
        return Err(Error::InvalidSpec(format!("need 0 < a < d < 1, got [{a},{d}]")));
    }
    let fa = f.eval(a);
    let fd = f.eval(d);
    if fa != a || fd != d {
        return Err(Error::InvalidSpec(format!("f must fix the band edges: f({a}) = {fa}, f({d}) = {fd}")));
    }
    if f.eval(0.0) != 0.0 || f.eval(1.0) != 1.0 {
        return Err(Error::InvalidSpec("f must fix 0 and 1".into()));
    }
    if (inner.lo() - a).abs() > tol.exact_tol || (inner.hi() - d).abs() > tol.exact_tol {
        return Err(Error::InvalidSpec("inner operator band does not match [a,d]".into()));
    }
    // The designated cut of the inner operator at f(e) must be the band
    // restriction of f.
    let x_pt = f.eval(e);
    for i in 1..16 {
        let s = a + (d - a) * i as f64 / 16.0;
        let cut = inner.eval(x_pt, s);
        let f_of_s = f.eval(s);
        if (cut - f_of_s).abs() > tol.eq_tol {
            return Err(Error::InvalidSpec(format!(
                "inner cut at {x_pt} disagrees with f at {s}: {cut} vs {f_of_s}"
            )));
        }
    }

    let walker = Arc::new(BandWalker::new(f, e));
    let band = inner.clone();
    let op = BinaryOperator::new(format!("equf(a={a},d={d},e={e})"), OperatorKind::Uninorm, move |x, y| {
        let in_band = |v: f64| v > a && v < d;
        if x <= a && y <= a {
            0.0
        } else if x >= d && x < 1.0 && y >= d && y < 1.0 {
            1.0
        } else if (x <= a && y >= d && y < 1.0) || (y <= a && x >= d && x < 1.0) {
            d
        } else if x == 1.0 || y == 1.0 {
            1.0
        } else if !in_band(x) && in_band(y) {
            match walker.band_index(y) {
                Ok(n) => walker.power(n, x),
                Err(_) => f64::NAN,
            }
        } else if !in_band(y) && in_band(x) {
            match walker.band_index(x) {
                Ok(n) => walker.power(n, y),
                Err(_) => f64::NAN,
            }
        } else {
            band.eval(x, y)
        }
    })
    .with_neutral(e)
    .with_disjunctive(true)
    .with_discontinuity_note("non-continuous underlying functions; not an ordinal sum over the band");
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Monotonicity;
    use crate::uninorms::families::{representable_uninorm, GeneratorDescriptor};
    use crate::uninorms::power_band::power_band_uninorm;

    fn rescaled_ex1_u1() -> BandOperator {
        let u1 = representable_uninorm(GeneratorDescriptor::log_ratio(1.0).unwrap(), true);
        band_rescale(&u1, 0.25, 0.75).unwrap()
    }

    #[test]
    fn rescale_maps_neutral_to_midpoint() {
        let b = rescaled_ex1_u1();
        assert_eq!(b.neutral(), 0.5);
        assert!((b.eval(0.5, 0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rescale_affine_conjugation_value() {
        let b = rescaled_ex1_u1();
        // Inner coords (0.5, 0.25), inner value 0.25, outer 0.375.
        assert!((b.eval(0.5, 0.375) - 0.375).abs() < 1e-13);
    }

    #[test]
    fn rescaled_second_generator_matches_three_parameter_form() {
        let u2 = representable_uninorm(GeneratorDescriptor::log_ratio(3.0).unwrap(), true);
        let b = band_rescale(&u2, 0.25, 0.75).unwrap();
        // 1/4 + 3(x-1/4)(y-1/4) / (6(x-1/4)(y-1/4) + 2(3/4-x)(3/4-y)).
        let oracle = |x: f64, y: f64| {
            let p = (x - 0.25) * (y - 0.25);
            let q = (0.75 - x) * (0.75 - y);
            0.25 + 3.0 * p / (6.0 * p + 2.0 * q)
        };
        assert!((b.eval(0.5, 0.5) - 0.625).abs() < 1e-13);
        for i in 1..20 {
            for j in 1..20 {
                let x = 0.25 + 0.5 * i as f64 / 20.0;
                let y = 0.25 + 0.5 * j as f64 / 20.0;
                assert!((b.eval(x, y) - oracle(x, y)).abs() < 1e-12, "at ({x},{y})");
            }
        }
    }

    #[test]
    fn ordinal_sum_minmax_branches() {
        let u3 = band_ordinal_sum(&rescaled_ex1_u1(), OuterOps::MinMax);
        assert_eq!(u3.eval(0.1, 0.9), 0.9);
        assert_eq!(u3.eval(0.1, 0.5), 0.1);
        assert_eq!(u3.eval(0.8, 0.3), 0.8);
        for i in 1..20 {
            let y = 0.25 + 0.5 * i as f64 / 20.0;
            assert!((u3.eval(0.5, y) - y).abs() < 1e-13, "neutral at {y}");
        }
    }

    #[test]
    fn ordinal_sum_prod_dualprod_branches() {
        let inner = band_rescale(&power_band_uninorm(), 0.25, 0.75).unwrap();
        let u = band_ordinal_sum(&inner, OuterOps::ProdDualProd);
        assert_eq!(u.eval(0.1, 0.2), 0.1 * 0.2);
        assert_eq!(u.eval(0.8, 0.9), 0.8 + 0.9 - 0.8 * 0.9);
        assert_eq!(u.eval(0.1, 0.9), 0.9);
        assert_eq!(u.eval(0.1, 0.5), 0.1);
        assert_eq!(u.eval(0.9, 0.5), 0.9);
        assert_eq!(u.eval(1.0, 0.0), 1.0);
        // Neutral element at the rescaled midpoint.
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            assert!((u.eval(x, 0.5) - x).abs() < 1e-13, "neutral at {x}");
        }
    }

    /// min on the open base band; on the closed lower edge t = x the
    /// value comes from the next band down, F(s,x) = f(s).
    fn edge_corrected_min(s: f64, t: f64) -> f64 {
        if t <= 0.25 {
            s * s
        } else if s <= 0.25 {
            t * t
        } else {
            s.min(t)
        }
    }

    #[test]
    fn propf_with_min_reproduces_the_power_band() {
        let f = UnitFunction1D::new("square", Monotonicity::Increasing, |t| t * t).with_closed_inverse(f64::sqrt);
        let spec = FBandSpec::new(f, edge_corrected_min, 0.5).unwrap();
        let band = propf_uninorm(spec, &Tolerances::default()).unwrap();
        assert!(band.lo() < 1e-15);
        assert!((band.hi() - 1.0).abs() < 1e-12);
        let u = power_band_uninorm();
        for i in 1..80 {
            for j in 1..80 {
                let (x, y) = (i as f64 / 80.0, j as f64 / 80.0);
                let got = band.eval(x, y);
                let want = u.eval(x, y);
                assert!((got - want).abs() <= 1e-12, "at ({x},{y}): {got} vs {want}");
            }
        }
    }

    #[test]
    fn propf_band_containment_on_sampled_pairs() {
        let f = UnitFunction1D::new("square", Monotonicity::Increasing, |t| t * t).with_closed_inverse(f64::sqrt);
        let spec = FBandSpec::new(f, edge_corrected_min, 0.5).unwrap();
        let band = propf_uninorm(spec, &Tolerances::default()).unwrap();
        let walker = BandWalker::new(
            UnitFunction1D::new("square", Monotonicity::Increasing, |t| t * t).with_closed_inverse(f64::sqrt),
            0.5,
        );
        for i in 1..40 {
            for j in 1..40 {
                let (s, t) = (i as f64 / 40.0, j as f64 / 40.0);
                let n = walker.band_index(s).unwrap();
                let m = walker.band_index(t).unwrap();
                let v = band.eval(s, t);
                if v > 1e-12 && v < 1.0 - 1e-12 {
                    assert_eq!(walker.band_index(v).unwrap(), n + m, "at ({s},{t}) -> {v}");
                }
            }
        }
    }

    #[test]
    fn propf_rejects_non_commutative_base() {
        let f = UnitFunction1D::new("square", Monotonicity::Increasing, |t| t * t).with_closed_inverse(f64::sqrt);
        let spec = FBandSpec::new(f, |s, t| if s < t { s } else { 0.99 * t }, 0.5).unwrap();
        assert!(propf_uninorm(spec, &Tolerances::default()).is_err());
    }

    fn paper_f() -> UnitFunction1D {
        UnitFunction1D::new("pwquad", Monotonicity::Increasing, |s| {
            if s <= 0.25 {
                4.0 * s * s
            } else if s < 0.75 {
                2.0 * (s - 0.25) * (s - 0.25) + 0.25
            } else {
                4.0 * (s - 0.75) * (s - 0.75) + 0.75
            }
        })
        .with_closed_inverse(|v| {
            if v <= 0.25 {
                (v / 4.0).sqrt()
            } else if v < 0.75 {
                0.25 + ((v - 0.25) / 2.0).sqrt()
            } else {
                0.75 + ((v - 0.75) / 4.0).sqrt()
            }
        })
    }

    #[test]
    fn equf_branch_values() {
        let inner = band_rescale(&power_band_uninorm(), 0.25, 0.75).unwrap();
        let u = equf_uninorm(paper_f(), &inner, 0.25, 0.75, 0.5, &Tolerances::default()).unwrap();
        assert_eq!(u.eval(0.1, 0.2), 0.0);
        assert_eq!(u.eval(0.8, 0.9), 1.0);
        assert_eq!(u.eval(0.1, 0.9), 0.75);
        assert_eq!(u.eval(0.9, 0.1), 0.75);
        assert_eq!(u.eval(1.0, 0.1), 1.0);
        assert_eq!(u.eval(0.25, 0.75), 0.75);
        // f^(n)(0.9) = 3/4 + (4*0.15)^(2^n)/4 for y in band n; the band
        // edges are f^(0)(e) = 0.5, f^(1)(e) = 0.375, f^(2)(e) = 0.28125.
        let fn_at = |n: u32| 0.75 + 0.25 * 0.6f64.powi(2i32.pow(n));
        assert!((u.eval(0.9, 0.3) - fn_at(1)).abs() < 1e-13); // 0.3 in band 1
        assert!((u.eval(0.9, 0.4) - fn_at(0)).abs() < 1e-13); // 0.4 in band 0
        // Neutral element across all blocks.
        for i in 0..=40 {
            let x = i as f64 / 40.0;
            assert!((u.eval(x, 0.5) - x).abs() < 1e-12, "neutral at {x}");
        }
    }

    #[test]
    fn equf_rejects_f_that_moves_the_edges() {
        let inner = band_rescale(&power_band_uninorm(), 0.25, 0.75).unwrap();
        let f = UnitFunction1D::new("square", Monotonicity::Increasing, |t| t * t).with_closed_inverse(f64::sqrt);
        assert!(equf_uninorm(f, &inner, 0.25, 0.75, 0.5, &Tolerances::default()).is_err());
    }
}
