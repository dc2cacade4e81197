//! Regularised divergent endpoint integrals and their interpretation as
//! envelopes of one-parameter families of primitives.
//!
//! For `f` analytic near `p`, `d ≥ 0` and a path from `p` to `z`, the
//! regularised integral of `f(ζ)/(ζ−p)^{d+1}` is the Taylor-subtracted
//! integral plus explicit counterterms and a logarithm:
//!
//! ```text
//!   ∫ (f(ζ) − Σ_{k≤d} c_k (ζ−p)^k) (ζ−p)^{−d−1} dζ
//!       − Σ_{k<d} c_k/(d−k) · (z−p)^{−(d−k)}  +  c_d · log(z−p)
//! ```
//!
//! with `c_k = f^{(k)}(p)/k!` and the branch of the logarithm fixed by
//! continuous tracking of `arg(γ(t)−p)` along the integration path.
//!
//! Numerically the subtracted integrand cancels to `d+1` leading orders at
//! `p`, which amplifies roundoff catastrophically if evaluated directly.
//! Inside a disk around `p` the integral is therefore evaluated termwise
//! from the Cauchy–Taylor coefficients (the primitive of the subtracted
//! series), and adaptive Gauss–Kronrod quadrature is used only outside the
//! disk where direct evaluation is well conditioned.

use crate::geometry::{tracked_log, ComplexPath};
use crate::{CMatrix, Complex64, Error, Result};
use std::sync::Arc;

/// Node-doubling stability target for Cauchy–Taylor coefficients.
pub const TAYLOR_STABILITY_TOL: f64 = 1e-12;

/// Default relative quadrature target.
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

const MAX_CIRCLE_NODES: usize = 1 << 14;
const MAX_INTERVALS: usize = 4000;
const SERIES_ORDER: usize = 48;

/// Values the integration machinery can accumulate: complex scalars and
/// complex matrices.
pub trait IntegralValue: Clone + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    /// `self += w · other`
    fn add_scaled(&mut self, other: &Self, w: Complex64);
    fn scaled(&self, w: Complex64) -> Self;
    fn norm(&self) -> f64;
}

impl IntegralValue for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, other: &Self, w: Complex64) {
        *self += other * w;
    }
    fn scaled(&self, w: Complex64) -> Self {
        self * w
    }
    fn norm(&self) -> f64 {
        num_complex::Complex::norm(*self)
    }
}

impl IntegralValue for CMatrix {
    fn zero_like(&self) -> Self {
        CMatrix::zeros(self.nrows(), self.ncols())
    }
    fn add_scaled(&mut self, other: &Self, w: Complex64) {
        *self += other * w;
    }
    fn scaled(&self, w: Complex64) -> Self {
        self * w
    }
    fn norm(&self) -> f64 {
        nalgebra::Matrix::norm(self)
    }
}

/// A function analytic on a declared disk, presented as a black-box
/// evaluator. Implementations may override [`AnalyticMap::values_on_circle`]
/// when batch evaluation along a circle has a cheaper (or more stable)
/// realisation than independent point evaluations.
pub trait AnalyticMap<T: IntegralValue>: Send + Sync {
    fn eval(&self, z: Complex64) -> Result<T>;

    /// Radius of guaranteed analyticity around the expansion point.
    fn radius(&self) -> f64;

    /// Values at the `n` equispaced points of the circle around `center`.
    fn values_on_circle(&self, center: Complex64, radius: f64, n: usize) -> Result<Vec<T>> {
        let results = crate::exec::par_map((0..n).collect::<Vec<_>>(), |k| {
            let phi = std::f64::consts::TAU * k as f64 / n as f64;
            self.eval(center + Complex64::from_polar(radius, phi))
        });
        results.into_iter().collect()
    }
}

/// Closure-backed [`AnalyticMap`].
#[derive(Clone)]
pub struct AnalyticFunction<T> {
    evaluator: Arc<dyn Fn(Complex64) -> Result<T> + Send + Sync>,
    radius: f64,
}

impl<T: IntegralValue> AnalyticFunction<T> {
    pub fn new(
        radius: f64,
        evaluator: impl Fn(Complex64) -> Result<T> + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Invalid("analyticity radius must be positive".into()));
        }
        Ok(AnalyticFunction { evaluator: Arc::new(evaluator), radius })
    }

    pub fn constant(radius: f64, value: T) -> Result<Self> {
        AnalyticFunction::new(radius, move |_| Ok(value.clone()))
    }
}

impl<T: IntegralValue> AnalyticMap<T> for AnalyticFunction<T> {
    fn eval(&self, z: Complex64) -> Result<T> {
        (self.evaluator)(z)
    }
    fn radius(&self) -> f64 {
        self.radius
    }
}

/// A regularised integral `∫_{[p,z]} f(ζ) dζ/(ζ−p)^{d+1}` along a declared
/// path from the singular endpoint `p` to the regular endpoint `z`.
pub struct RegIntegralSpec<T: IntegralValue> {
    pub f: Box<dyn AnalyticMap<T>>,
    pub p: Complex64,
    pub z: Complex64,
    pub d: usize,
    pub path: ComplexPath,
}

impl<T: IntegralValue> RegIntegralSpec<T> {
    pub fn new(
        f: impl AnalyticMap<T> + 'static,
        p: Complex64,
        z: Complex64,
        d: usize,
        path: ComplexPath,
    ) -> Result<Self> {
        if (path.start() - p).norm() > 1e-9 {
            return Err(Error::Invalid(format!(
                "integration path must start at the singular endpoint {p}, starts at {}",
                path.start()
            )));
        }
        if (path.end() - z).norm() > 1e-9 {
            return Err(Error::Invalid(format!(
                "integration path must end at {z}, ends at {}",
                path.end()
            )));
        }
        if (z - p).norm() < 1e-12 {
            return Err(Error::Invalid("endpoints of the integral coincide".into()));
        }
        Ok(RegIntegralSpec { f: Box::new(f), p, z, d, path })
    }
}

/// Taylor coefficients `f^{(k)}(p)/k!` for `k = 0..=up_to`, by discretised
/// Cauchy integrals on the circle of the given radius. The node count starts
/// at `8·(up_to+1)` and doubles until the coefficients are stable.
pub fn taylor_coefficients<T: IntegralValue>(
    f: &dyn AnalyticMap<T>,
    p: Complex64,
    up_to: usize,
    radius: f64,
) -> Result<Vec<T>> {
    if !(radius > 0.0) || radius >= f.radius() {
        return Err(Error::Invalid(format!(
            "coefficient circle radius {radius} outside (0, {})",
            f.radius()
        )));
    }
    let mut n = (8 * (up_to + 1)).next_power_of_two().max(16);
    let mut prev: Option<Vec<T>> = None;
    loop {
        let coeffs = circle_coefficients(f, p, up_to, radius, n)?;
        if let Some(prev) = &prev {
            let scale = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let change = coeffs
                .iter()
                .zip(prev.iter())
                .map(|(a, b)| {
                    let mut d = a.clone();
                    d.add_scaled(b, Complex64::new(-1.0, 0.0));
                    d.norm()
                })
                .fold(0.0, f64::max);
            if change <= TAYLOR_STABILITY_TOL * scale {
                return Ok(coeffs);
            }
        }
        if n >= MAX_CIRCLE_NODES {
            return Err(Error::Quadrature(
                "Taylor coefficients did not stabilise under node doubling (non-analytic \
                 integrand?)"
                    .into(),
            ));
        }
        prev = Some(coeffs);
        n *= 2;
    }
}

fn circle_coefficients<T: IntegralValue>(
    f: &dyn AnalyticMap<T>,
    p: Complex64,
    up_to: usize,
    radius: f64,
    n: usize,
) -> Result<Vec<T>> {
    let values = f.values_on_circle(p, radius, n)?;
    let mut coeffs = Vec::with_capacity(up_to + 1);
    let inv_n = 1.0 / n as f64;
    for k in 0..=up_to {
        let mut acc = values[0].zero_like();
        for (j, v) in values.iter().enumerate() {
            let angle = -std::f64::consts::TAU * ((j * k) % n) as f64 / n as f64;
            acc.add_scaled(v, Complex64::from_polar(inv_n, angle));
        }
        coeffs.push(acc.scaled(Complex64::new(radius.powi(-(k as i32)), 0.0)));
    }
    Ok(coeffs)
}

/// Radius-consistency sanity check: coefficients computed on circles of
/// radius `R/2` and `R/4` must agree. Fails for evaluators that are not
/// actually analytic on the declared disk.
pub fn validate_analytic<T: IntegralValue>(f: &dyn AnalyticMap<T>, p: Complex64) -> Result<()> {
    let r = f.radius();
    let order = 8;
    let a = taylor_coefficients(f, p, order, 0.5 * r)?;
    let b = taylor_coefficients(f, p, order, 0.25 * r)?;
    let scale = 1.0 + a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for (ca, cb) in a.iter().zip(b.iter()) {
        let mut d = ca.clone();
        d.add_scaled(cb, Complex64::new(-1.0, 0.0));
        if d.norm() > 1e-9 * scale {
            return Err(Error::Gate(format!(
                "Taylor coefficients disagree between radii {:.3e} and {:.3e} \
                 (deviation {:.3e}); evaluator not analytic on the declared disk",
                0.5 * r,
                0.25 * r,
                d.norm()
            )));
        }
    }
    Ok(())
}

/// Internal decomposition shared by the regularised integral and its
/// envelope family: Taylor data at `p` plus the path split into the series
/// disk and the quadrature region.
struct Decomposition<'a, T: IntegralValue> {
    spec: &'a RegIntegralSpec<T>,
    coeffs: Vec<T>,
    /// Radius of the disk where the subtracted integrand is summed termwise.
    inner_radius: f64,
    quad_tol: f64,
}

impl<'a, T: IntegralValue> Decomposition<'a, T> {
    fn build(spec: &'a RegIntegralSpec<T>, quad_tol: f64) -> Result<Self> {
        validate_analytic(spec.f.as_ref(), spec.p)?;
        let r_c = 0.5 * spec.f.radius();
        let coeffs = taylor_coefficients(spec.f.as_ref(), spec.p, SERIES_ORDER, r_c)?;
        // Tail bound at the inner radius: coefficients obey the Cauchy
        // estimate ‖c_k‖ ≤ M/r_c^k, so the tail is geometric with ratio 1/2.
        let m = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * r_c.powi(k as i32))
            .fold(0.0, f64::max);
        let tail = m * 0.5f64.powi(SERIES_ORDER as i32);
        if tail > 1e-10 * (1.0 + m) {
            return Err(Error::Quadrature(format!(
                "Taylor series does not decay fast enough (tail estimate {tail:.3e})"
            )));
        }
        Ok(Decomposition { spec, coeffs, inner_radius: 0.5 * r_c, quad_tol })
    }

    fn c(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    /// Termwise primitive of the subtracted integrand:
    /// `G(s) = Σ_{k>d} c_k s^{k−d}/(k−d)`.
    fn series_primitive(&self, s: Complex64) -> T {
        let d = self.spec.d;
        let mut acc = self.coeffs[0].zero_like();
        let mut power = s; // s^{k−d} starting at k = d+1
        for k in (d + 1)..self.coeffs.len() {
            acc.add_scaled(&self.coeffs[k], power / ((k - d) as f64));
            power *= s;
        }
        acc
    }

    /// Subtracted integrand `(f(ζ) − T_d f(ζ))/(ζ−p)^{d+1}`, for use outside
    /// the inner disk only.
    fn subtracted(&self, zeta: Complex64) -> Result<T> {
        let s = zeta - self.spec.p;
        let mut v = self.spec.f.eval(zeta)?;
        let mut power = Complex64::new(1.0, 0.0);
        for k in 0..=self.spec.d {
            v.add_scaled(&self.coeffs[k], -power);
            power *= s;
        }
        Ok(v.scaled(s.powi(-(self.spec.d as i32) - 1)))
    }

    /// `∫ g` over the sub-path `[t0, t1]`, series inside the disk and
    /// adaptive quadrature outside.
    fn subtracted_integral(&self, t0: f64, t1: f64) -> Result<T> {
        let compiled = self.spec.path.compile();
        let p = self.spec.p;
        let r0 = self.inner_radius;
        let mut acc = self.coeffs[0].zero_like();
        for (a, b, inside) in split_by_disk(&self.spec.path, p, r0, t0, t1) {
            if inside {
                let sa = compiled.eval(a).0 - p;
                let sb = compiled.eval(b).0 - p;
                let mut term = self.series_primitive(sb);
                term.add_scaled(&self.series_primitive(sa), Complex64::new(-1.0, 0.0));
                acc.add_scaled(&term, Complex64::new(1.0, 0.0));
            } else {
                let integrand = |t: f64| -> Result<T> {
                    let (point, velocity) = compiled.eval(t);
                    Ok(self.subtracted(point)?.scaled(velocity))
                };
                let scale = 1.0 + acc.norm();
                let (val, _err) =
                    adaptive_quadrature(&integrand, a, b, self.quad_tol * scale, MAX_INTERVALS)?;
                acc.add_scaled(&val, Complex64::new(1.0, 0.0));
            }
        }
        Ok(acc)
    }

    /// Counterterms at the regular endpoint plus the tracked logarithm:
    /// `−Σ_{k<d} c_k/(d−k)·(z−p)^{k−d} + c_d·log(z−p)`.
    fn endpoint_counterterms(&self) -> T {
        let d = self.spec.d;
        let dz = self.spec.z - self.spec.p;
        let mut acc = self.coeffs[0].zero_like();
        for k in 0..d {
            let w = dz.powi(k as i32 - d as i32) / ((d - k) as f64);
            acc.add_scaled(&self.coeffs[k], -w);
        }
        let log = tracked_log(&self.spec.path, self.spec.p);
        acc.add_scaled(&self.coeffs[d], log);
        acc
    }
}

/// The regularised integral of `spec`, at the default quadrature target.
pub fn regularized_integral<T: IntegralValue>(spec: &RegIntegralSpec<T>) -> Result<T> {
    regularized_integral_with_tol(spec, DEFAULT_QUAD_TOL)
}

pub fn regularized_integral_with_tol<T: IntegralValue>(
    spec: &RegIntegralSpec<T>,
    quad_tol: f64,
) -> Result<T> {
    let dec = Decomposition::build(spec, quad_tol)?;
    let mut acc = dec.subtracted_integral(0.0, 1.0)?;
    let ct = dec.endpoint_counterterms();
    acc.add_scaled(&ct, Complex64::new(1.0, 0.0));
    Ok(acc)
}

/// The counter-termed family of primitives at label `q`:
///
/// ```text
///   m(q) = ∫_q^z f(ζ)(ζ−p)^{−d−1} dζ − Σ_{k<d} c_k/(d−k)·(q−p)^{k−d}
///          + c_d·log(q−p) + c_{d+1}·(q−p)
/// ```
///
/// whose limit as `q → p` is the regularised integral. Internally the
/// singular pieces are cancelled symbolically against the counterterms, so
/// the family is evaluated stably arbitrarily close to `p`:
/// `m(q) = regularised integral − ∫_p^q g + c_{d+1}(q−p)`.
pub fn envelope_family<T: IntegralValue>(spec: &RegIntegralSpec<T>, q: Complex64) -> Result<T> {
    envelope_family_with_tol(spec, q, DEFAULT_QUAD_TOL)
}

pub fn envelope_family_with_tol<T: IntegralValue>(
    spec: &RegIntegralSpec<T>,
    q: Complex64,
    quad_tol: f64,
) -> Result<T> {
    let dec = Decomposition::build(spec, quad_tol)?;
    let sq = q - spec.p;
    if sq.norm() == 0.0 {
        return Err(Error::Invalid("family label q must differ from p".into()));
    }
    let mut acc = dec.subtracted_integral(0.0, 1.0)?;
    acc.add_scaled(&dec.endpoint_counterterms(), Complex64::new(1.0, 0.0));

    // − ∫_p^q of the subtracted integrand.
    if sq.norm() <= dec.inner_radius {
        // q in the series disk: path-independent termwise primitive.
        acc.add_scaled(&dec.series_primitive(sq), Complex64::new(-1.0, 0.0));
    } else {
        let t_q = spec
            .path
            .locate(q, 1e-6 * (1.0 + (spec.z - spec.p).norm()))
            .ok_or_else(|| {
                Error::Invalid(format!(
                    "family label {q} lies neither near the path nor in the series disk"
                ))
            })?;
        let part = dec.subtracted_integral(0.0, t_q)?;
        acc.add_scaled(&part, Complex64::new(-1.0, 0.0));
    }

    if spec.d + 1 < dec.coeffs.len() {
        acc.add_scaled(dec.c(spec.d + 1), sq);
    }
    Ok(acc)
}

/// Numerical label-derivative of the envelope family at `q`, by five-point
/// central differences with a step proportional to `|q−p|`. The result goes
/// to zero as `q → p`; that is the envelope condition.
pub fn envelope_condition_residual<T: IntegralValue>(
    spec: &RegIntegralSpec<T>,
    q: Complex64,
) -> Result<T> {
    envelope_condition_residual_with_tol(spec, q, DEFAULT_QUAD_TOL)
}

pub fn envelope_condition_residual_with_tol<T: IntegralValue>(
    spec: &RegIntegralSpec<T>,
    q: Complex64,
    quad_tol: f64,
) -> Result<T> {
    let sq = q - spec.p;
    if sq.norm() == 0.0 {
        return Err(Error::Invalid("label derivative undefined at q = p".into()));
    }
    let h_abs = sq.norm() / 8.0;
    if h_abs < 1e-300 {
        return Err(Error::Invalid("differencing step underflow".into()));
    }
    // Step along the radial direction from p through q.
    let h = sq / sq.norm() * h_abs;
    let eval = |offset: f64| envelope_family_with_tol(spec, q + h * offset, quad_tol);
    let m_m2 = eval(-2.0)?;
    let m_m1 = eval(-1.0)?;
    let m_p1 = eval(1.0)?;
    let m_p2 = eval(2.0)?;
    // (m(−2h) − 8 m(−h) + 8 m(h) − m(2h)) / (12h)
    let mut acc = m_m2;
    acc.add_scaled(&m_m1, Complex64::new(-8.0, 0.0));
    acc.add_scaled(&m_p1, Complex64::new(8.0, 0.0));
    acc.add_scaled(&m_p2, Complex64::new(-1.0, 0.0));
    Ok(acc.scaled(1.0 / (12.0 * h)))
}

/// Sub-intervals of `[t0, t1]` classified by whether the path point lies in
/// the open disk `|γ(t) − p| < r0`. Crossings are refined by bisection.
fn split_by_disk(
    path: &ComplexPath,
    p: Complex64,
    r0: f64,
    t0: f64,
    t1: f64,
) -> Vec<(f64, f64, bool)> {
    let compiled = path.compile();
    let dist = |t: f64| (compiled.eval(t).0 - p).norm() - r0;
    let n = 512;
    let mut out: Vec<(f64, f64, bool)> = Vec::new();
    let mut seg_start = t0;
    let mut inside = dist(t0) < 0.0;
    let mut prev_t = t0;
    let mut prev_d = dist(t0);
    for k in 1..=n {
        let t = t0 + (t1 - t0) * (k as f64 / n as f64);
        let d = dist(t);
        if (d < 0.0) != (prev_d < 0.0) {
            let (mut lo, mut hi) = (prev_t, t);
            let mut dlo = prev_d;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let dm = dist(mid);
                if (dm < 0.0) == (dlo < 0.0) {
                    lo = mid;
                    dlo = dm;
                } else {
                    hi = mid;
                }
            }
            let crossing = 0.5 * (lo + hi);
            if crossing > seg_start {
                out.push((seg_start, crossing, inside));
            }
            seg_start = crossing;
            inside = !inside;
        }
        prev_t = t;
        prev_d = d;
    }
    if t1 > seg_start {
        out.push((seg_start, t1, inside));
    }
    out
}

// ---------------------------------------------------------------------------
// Adaptive Gauss–Kronrod 7/15 quadrature.
// ---------------------------------------------------------------------------

const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15<T: IntegralValue>(f: &dyn Fn(f64) -> Result<T>, a: f64, b: f64) -> Result<(T, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc.scaled(Complex64::new(WGK[7], 0.0));
    let mut gauss = fc.scaled(Complex64::new(WG[3], 0.0));
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x)?;
        let f2 = f(center + x)?;
        kronrod.add_scaled(&f1, Complex64::new(WGK[j], 0.0));
        kronrod.add_scaled(&f2, Complex64::new(WGK[j], 0.0));
        if j % 2 == 1 {
            let wg = WG[j / 2];
            gauss.add_scaled(&f1, Complex64::new(wg, 0.0));
            gauss.add_scaled(&f2, Complex64::new(wg, 0.0));
        }
    }
    let value = kronrod.scaled(Complex64::new(half, 0.0));
    let mut diff = value.clone();
    diff.add_scaled(&gauss, Complex64::new(-half, 0.0));
    Ok((value, diff.norm()))
}

/// Adaptive quadrature of `f` over `[a, b]` to an absolute target, by
/// worst-interval bisection of Gauss–Kronrod 7/15 estimates.
pub(crate) fn adaptive_quadrature<T: IntegralValue>(
    f: &dyn Fn(f64) -> Result<T>,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<(T, f64)> {
    struct Interval<T> {
        a: f64,
        b: f64,
        value: T,
        err: f64,
    }
    let (value, err) = gk15(f, a, b)?;
    let mut intervals = vec![Interval { a, b, value, err }];
    loop {
        let total_err: f64 = intervals.iter().map(|i| i.err).sum();
        if total_err <= abs_tol {
            break;
        }
        if intervals.len() >= max_intervals {
            return Err(Error::Quadrature(format!(
                "error {total_err:.3e} above target {abs_tol:.3e} after {} subdivisions",
                intervals.len()
            )));
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let Interval { a, b, .. } = intervals[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(Error::Quadrature(format!(
                "interval [{a}, {b}] can no longer be split"
            )));
        }
        let (v1, e1) = gk15(f, a, mid)?;
        let (v2, e2) = gk15(f, mid, b)?;
        intervals[worst] = Interval { a, b: mid, value: v1, err: e1 };
        intervals.push(Interval { a: mid, b, value: v2, err: e2 });
    }
    let mut acc = intervals[0].value.zero_like();
    let mut err = 0.0;
    for i in &intervals {
        acc.add_scaled(&i.value, Complex64::new(1.0, 0.0));
        err += i.err;
    }
    Ok((acc, err))
}

/// Plain adaptive path integral `∫ f(γ(t))·γ'(t) dt`, for integrands without
/// endpoint singularities.
pub fn path_integral<T: IntegralValue>(
    f: &dyn Fn(Complex64) -> Result<T>,
    path: &ComplexPath,
    rel_tol: f64,
) -> Result<T> {
    let compiled = path.compile();
    let integrand = |t: f64| -> Result<T> {
        let (point, velocity) = compiled.eval(t);
        Ok(f(point)?.scaled(velocity))
    };
    let breaks = compiled.breakpoints();
    let mut acc: Option<T> = None;
    for w in breaks.windows(2) {
        let scale = 1.0 + acc.as_ref().map(|a| a.norm()).unwrap_or(0.0);
        let (v, _) = adaptive_quadrature(&integrand, w[0], w[1], rel_tol * scale, MAX_INTERVALS)?;
        match &mut acc {
            Some(acc) => acc.add_scaled(&v, Complex64::new(1.0, 0.0)),
            None => acc = Some(v),
        }
    }
    Ok(acc.expect("path has at least one piece"))
}
