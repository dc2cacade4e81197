//! The base curve in its affine chart: punctures, piecewise complex paths
//! (polylines and circular arcs), and third-kind differentials.

use crate::{Complex64, Error, Result};

/// Default exclusion radius around punctures.
pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-6;

/// Maximum endpoint gap between consecutive segments of a path.
pub const JOIN_TOL: f64 = 1e-12;

/// A finite set of distinct punctures together with the exclusion radius
/// inside which boundary components are treated as meeting the divisor of
/// singularities.
#[derive(Debug, Clone, PartialEq)]
pub struct PunctureSet {
    points: Vec<Complex64>,
    exclusion_radius: f64,
}

impl PunctureSet {
    pub fn new(points: Vec<Complex64>, exclusion_radius: f64) -> Result<Self> {
        if !(exclusion_radius > 0.0) {
            return Err(Error::Invalid("exclusion radius must be positive".into()));
        }
        for (i, p) in points.iter().enumerate() {
            for q in points.iter().skip(i + 1) {
                if (p - q).norm() <= 2.0 * exclusion_radius {
                    return Err(Error::Invalid(format!(
                        "punctures {p} and {q} are closer than twice the exclusion radius"
                    )));
                }
            }
        }
        Ok(PunctureSet { points, exclusion_radius })
    }

    pub fn with_default_radius(points: Vec<Complex64>) -> Result<Self> {
        PunctureSet::new(points, DEFAULT_EXCLUSION_RADIUS)
    }

    pub fn empty() -> Self {
        PunctureSet { points: Vec::new(), exclusion_radius: DEFAULT_EXCLUSION_RADIUS }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn exclusion_radius(&self) -> f64 {
        self.exclusion_radius
    }

    pub fn distance_to(&self, z: Complex64) -> f64 {
        self.points.iter().map(|p| (z - p).norm()).fold(f64::INFINITY, f64::min)
    }

    pub fn is_excluded(&self, z: Complex64) -> bool {
        self.distance_to(z) <= self.exclusion_radius
    }

    /// Counterclockwise circle around `p` starting and ending at
    /// `p + radius·e^{i·basepoint_angle}`, checked against the other
    /// punctures' exclusion disks.
    pub fn loop_around(
        &self,
        p: Complex64,
        radius: f64,
        basepoint_angle: f64,
    ) -> Result<ComplexPath> {
        let path = circle(p, radius, basepoint_angle)?;
        for q in &self.points {
            if (q - p).norm() < JOIN_TOL {
                continue;
            }
            if (q - p).norm() <= radius + self.exclusion_radius {
                return Err(Error::Exclusion(format!(
                    "loop of radius {radius} around {p} meets the exclusion disk of {q}"
                )));
            }
        }
        Ok(path)
    }
}

/// Counterclockwise circle around `p` with no puncture bookkeeping.
pub fn circle(p: Complex64, radius: f64, basepoint_angle: f64) -> Result<ComplexPath> {
    if !(radius > 0.0) {
        return Err(Error::Invalid("circle radius must be positive".into()));
    }
    ComplexPath::new(vec![PathSegment::Arc {
        center: p,
        radius,
        from_angle: basepoint_angle,
        to_angle: basepoint_angle + std::f64::consts::TAU,
    }])
}

/// One smooth piece of a path.
#[derive(Debug, Clone, PartialEq)]
pub enum PathSegment {
    Polyline { points: Vec<Complex64> },
    Arc { center: Complex64, radius: f64, from_angle: f64, to_angle: f64 },
}

impl PathSegment {
    fn start(&self) -> Complex64 {
        match self {
            PathSegment::Polyline { points } => points[0],
            PathSegment::Arc { center, radius, from_angle, .. } => {
                center + Complex64::from_polar(*radius, *from_angle)
            }
        }
    }

    fn end(&self) -> Complex64 {
        match self {
            PathSegment::Polyline { points } => *points.last().unwrap(),
            PathSegment::Arc { center, radius, to_angle, .. } => {
                center + Complex64::from_polar(*radius, *to_angle)
            }
        }
    }

    fn length(&self) -> f64 {
        match self {
            PathSegment::Polyline { points } => {
                points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
            }
            PathSegment::Arc { radius, from_angle, to_angle, .. } => {
                radius * (to_angle - from_angle).abs()
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            PathSegment::Polyline { points } => {
                if points.len() < 2 {
                    return Err(Error::Invalid("polyline needs at least two points".into()));
                }
                for w in points.windows(2) {
                    if (w[1] - w[0]).norm() == 0.0 {
                        return Err(Error::Invalid(
                            "polyline contains a zero-length edge".into(),
                        ));
                    }
                }
            }
            PathSegment::Arc { radius, from_angle, to_angle, .. } => {
                if !(*radius > 0.0) {
                    return Err(Error::Invalid("arc radius must be positive".into()));
                }
                if from_angle == to_angle {
                    return Err(Error::Invalid("arc has zero angular extent".into()));
                }
            }
        }
        Ok(())
    }

    fn reversed(&self) -> PathSegment {
        match self {
            PathSegment::Polyline { points } => {
                PathSegment::Polyline { points: points.iter().rev().cloned().collect() }
            }
            PathSegment::Arc { center, radius, from_angle, to_angle } => PathSegment::Arc {
                center: *center,
                radius: *radius,
                from_angle: *to_angle,
                to_angle: *from_angle,
            },
        }
    }
}

/// One maximal smooth edge of a path: a line segment or an arc, with its
/// global parameter interval.
#[derive(Debug, Clone)]
pub(crate) enum Edge {
    Line { from: Complex64, to: Complex64 },
    Arc { center: Complex64, radius: f64, from_angle: f64, to_angle: f64 },
}

impl Edge {
    fn length(&self) -> f64 {
        match self {
            Edge::Line { from, to } => (to - from).norm(),
            Edge::Arc { radius, from_angle, to_angle, .. } => {
                radius * (to_angle - from_angle).abs()
            }
        }
    }

    /// Point and d(point)/ds at local parameter `s ∈ [0, 1]`.
    fn eval(&self, s: f64) -> (Complex64, Complex64) {
        match self {
            Edge::Line { from, to } => (from + (to - from) * s, to - from),
            Edge::Arc { center, radius, from_angle, to_angle } => {
                let phi = from_angle + (to_angle - from_angle) * s;
                let e = Complex64::from_polar(*radius, phi);
                (center + e, Complex64::new(0.0, to_angle - from_angle) * e)
            }
        }
    }

    fn distance_to(&self, q: Complex64) -> f64 {
        match self {
            Edge::Line { from, to } => {
                let d = to - from;
                let len2 = d.norm_sqr();
                let t = (((q - from).conj() * d).re / len2).clamp(0.0, 1.0);
                (q - (from + d * t)).norm()
            }
            Edge::Arc { center, radius, from_angle, to_angle } => {
                let v = q - center;
                let r = v.norm();
                if r == 0.0 {
                    return *radius;
                }
                // Is the angle of q within the swept range?
                let (lo, hi) = if from_angle <= to_angle {
                    (*from_angle, *to_angle)
                } else {
                    (*to_angle, *from_angle)
                };
                let theta = v.im.atan2(v.re);
                let tau = std::f64::consts::TAU;
                let mut a = theta;
                while a > lo + tau {
                    a -= tau;
                }
                while a < lo {
                    a += tau;
                }
                if a <= hi {
                    (r - radius).abs()
                } else {
                    let p0 = center + Complex64::from_polar(*radius, *from_angle);
                    let p1 = center + Complex64::from_polar(*radius, *to_angle);
                    (q - p0).norm().min((q - p1).norm())
                }
            }
        }
    }
}

/// A piecewise path in the affine chart, parameterised proportionally to
/// arclength as a single map `[0, 1] → ℂ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPath {
    segments: Vec<PathSegment>,
}

impl ComplexPath {
    pub fn new(segments: Vec<PathSegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Invalid("path needs at least one segment".into()));
        }
        for s in &segments {
            s.validate()?;
        }
        for w in segments.windows(2) {
            let gap = (w[1].start() - w[0].end()).norm();
            if gap > JOIN_TOL {
                return Err(Error::Invalid(format!(
                    "consecutive segments do not join continuously (gap {gap:.3e})"
                )));
            }
        }
        Ok(ComplexPath { segments })
    }

    pub fn line(from: Complex64, to: Complex64) -> Result<Self> {
        ComplexPath::new(vec![PathSegment::Polyline { points: vec![from, to] }])
    }

    pub fn polyline(points: Vec<Complex64>) -> Result<Self> {
        ComplexPath::new(vec![PathSegment::Polyline { points }])
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::new();
        for s in &self.segments {
            match s {
                PathSegment::Polyline { points } => {
                    for w in points.windows(2) {
                        edges.push(Edge::Line { from: w[0], to: w[1] });
                    }
                }
                PathSegment::Arc { center, radius, from_angle, to_angle } => {
                    edges.push(Edge::Arc {
                        center: *center,
                        radius: *radius,
                        from_angle: *from_angle,
                        to_angle: *to_angle,
                    });
                }
            }
        }
        edges
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(|s| s.length()).sum()
    }

    pub fn start(&self) -> Complex64 {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.segments.last().unwrap().end()
    }

    pub fn is_closed(&self) -> bool {
        (self.end() - self.start()).norm() <= JOIN_TOL
    }

    /// Global parameters of all points where the derivative may jump
    /// (segment joins and polyline vertices), including 0 and 1.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.compile().breakpoints()
    }

    /// Point and velocity `d(point)/dt` at global parameter `t ∈ [0, 1]`.
    pub fn eval(&self, t: f64) -> (Complex64, Complex64) {
        self.compile().eval(t)
    }

    /// Precomputes edge offsets for repeated evaluation in hot loops.
    pub(crate) fn compile(&self) -> CompiledPath {
        let edges = self.edges();
        let mut cum = Vec::with_capacity(edges.len() + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for e in &edges {
            acc += e.length();
            cum.push(acc);
        }
        CompiledPath { edges, cum, total: acc }
    }

    pub fn reversed(&self) -> ComplexPath {
        ComplexPath { segments: self.segments.iter().rev().map(|s| s.reversed()).collect() }
    }

    /// Concatenation; the next path must start where this one ends.
    pub fn join(&self, next: &ComplexPath) -> Result<ComplexPath> {
        let mut segments = self.segments.clone();
        segments.extend(next.segments.iter().cloned());
        ComplexPath::new(segments)
    }

    /// The sub-path between global parameters `t0 < t1`, as a fresh path.
    pub fn sub_path(&self, t0: f64, t1: f64) -> Result<ComplexPath> {
        if !(t0 < t1) {
            return Err(Error::Invalid(format!("sub-path needs t0 < t1, got [{t0}, {t1}]")));
        }
        let total = self.length();
        let (lo, hi) = (t0.clamp(0.0, 1.0) * total, t1.clamp(0.0, 1.0) * total);
        let mut segments = Vec::new();
        let mut acc = 0.0;
        for e in self.edges() {
            let len = e.length();
            let (a, b) = (acc, acc + len);
            acc = b;
            if b <= lo || a >= hi {
                continue;
            }
            let s0 = ((lo - a) / len).clamp(0.0, 1.0);
            let s1 = ((hi - a) / len).clamp(0.0, 1.0);
            if s1 - s0 <= 1e-15 {
                continue;
            }
            match e {
                Edge::Line { from, to } => {
                    let d = to - from;
                    segments.push(PathSegment::Polyline {
                        points: vec![from + d * s0, from + d * s1],
                    });
                }
                Edge::Arc { center, radius, from_angle, to_angle } => {
                    let span = to_angle - from_angle;
                    segments.push(PathSegment::Arc {
                        center,
                        radius,
                        from_angle: from_angle + span * s0,
                        to_angle: from_angle + span * s1,
                    });
                }
            }
        }
        ComplexPath::new(segments)
    }

    /// Locates a point on the path: the global parameter of the nearest path
    /// point, provided it lies within `tol` of `q`.
    pub fn locate(&self, q: Complex64, tol: f64) -> Option<f64> {
        let (mut best_t, mut best_d) = (0.0, f64::INFINITY);
        let n = 256;
        for k in 0..=n {
            let t = k as f64 / n as f64;
            let d = (self.eval(t).0 - q).norm();
            if d < best_d {
                best_d = d;
                best_t = t;
            }
        }
        // Golden-section refinement around the best sample.
        let (mut lo, mut hi) =
            ((best_t - 1.5 / n as f64).max(0.0), (best_t + 1.5 / n as f64).min(1.0));
        for _ in 0..60 {
            let m1 = lo + (hi - lo) * 0.382;
            let m2 = lo + (hi - lo) * 0.618;
            if (self.eval(m1).0 - q).norm() < (self.eval(m2).0 - q).norm() {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let t = 0.5 * (lo + hi);
        ((self.eval(t).0 - q).norm() <= tol).then_some(t)
    }
}

/// Arclength-parameterised view of a path with precomputed edge offsets.
#[derive(Debug, Clone)]
pub(crate) struct CompiledPath {
    edges: Vec<Edge>,
    cum: Vec<f64>,
    total: f64,
}

impl CompiledPath {
    pub(crate) fn eval(&self, t: f64) -> (Complex64, Complex64) {
        let t = t.clamp(0.0, 1.0);
        let target = t * self.total;
        // Last edge whose start offset is <= target.
        let mut i = match self.cum.binary_search_by(|c| c.partial_cmp(&target).unwrap()) {
            Ok(k) => k,
            Err(k) => k.saturating_sub(1),
        };
        i = i.min(self.edges.len() - 1);
        let len = self.cum[i + 1] - self.cum[i];
        let s = ((target - self.cum[i]) / len).clamp(0.0, 1.0);
        let (p, dp_ds) = self.edges[i].eval(s);
        (p, dp_ds * (self.total / len))
    }

    /// Global parameters of possible derivative jumps, including 0 and 1.
    pub(crate) fn breakpoints(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = self.cum.iter().map(|c| (c / self.total).min(1.0)).collect();
        let last = ts.len() - 1;
        ts[0] = 0.0;
        ts[last] = 1.0;
        ts
    }
}

/// Minimum distance from a path to any puncture; exact per edge.
pub fn min_distance_to_punctures(path: &ComplexPath, punctures: &PunctureSet) -> f64 {
    let mut best = f64::INFINITY;
    for e in path.edges() {
        for p in punctures.points() {
            best = best.min(e.distance_to(*p));
        }
    }
    best
}

/// A third-kind differential with residue `+1` at `x` and `−1` at the
/// reference point `o`, in its rational genus-zero representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirdKindForm {
    pub x: Complex64,
    pub o: Complex64,
}

impl ThirdKindForm {
    pub fn new(x: Complex64, o: Complex64) -> Result<Self> {
        if (x - o).norm() == 0.0 {
            return Err(Error::Invalid("third-kind form needs distinct poles".into()));
        }
        Ok(ThirdKindForm { x, o })
    }

    /// The coefficient of `dζ`: `1/(y−x) − 1/(y−o)`.
    pub fn eval(&self, y: Complex64) -> Result<Complex64> {
        let dx = y - self.x;
        let do_ = y - self.o;
        if dx.norm() < 1e-14 || do_.norm() < 1e-14 {
            return Err(Error::Invalid("third-kind form evaluated at one of its poles".into()));
        }
        Ok(1.0 / dx - 1.0 / do_)
    }
}

/// Continuously tracked argument of `γ(t) − p` along the path. Returns the
/// total increment added to the starting angle, refining the sampling until
/// every step turns by less than π/2.
fn track_argument(path: &ComplexPath, p: Complex64, theta0: f64) -> f64 {
    let compiled = path.compile();
    let mut theta = theta0;
    let breaks = compiled.breakpoints();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut n = 16usize;
        'refine: loop {
            let mut th = theta;
            let mut prev = compiled.eval(a).0 - p;
            if prev.norm() == 0.0 {
                // Piece starts at p itself; continue from the current angle.
                prev = Complex64::from_polar(1.0, th);
            }
            for k in 1..=n {
                let t = a + (b - a) * (k as f64 / n as f64);
                let cur = compiled.eval(t).0 - p;
                if cur.norm() == 0.0 {
                    continue;
                }
                let d = (cur / prev).arg();
                if d.abs() > std::f64::consts::FRAC_PI_2 && n < (1 << 20) {
                    n *= 2;
                    continue 'refine;
                }
                th += d;
                prev = cur;
            }
            theta = th;
            break;
        }
    }
    theta
}

/// Winding number of a closed path around `p`.
pub fn winding_number(path: &ComplexPath, p: Complex64) -> i64 {
    let start = path.start() - p;
    let theta0 = start.im.atan2(start.re);
    let theta1 = track_argument(path, p, theta0);
    ((theta1 - theta0) / std::f64::consts::TAU).round() as i64
}

/// `log(end − p)` with the branch fixed by continuous tracking of
/// `arg(γ(t) − p)` along the path, starting from the path's initial
/// tangent direction at `p` (for paths that start at `p`) or from the
/// principal argument of `start − p` otherwise.
pub fn tracked_log(path: &ComplexPath, p: Complex64) -> Complex64 {
    let start = path.start() - p;
    let theta0 = if start.norm() <= JOIN_TOL {
        let v = path.eval(0.0).1;
        v.im.atan2(v.re)
    } else {
        start.im.atan2(start.re)
    };
    let theta = track_argument(path, p, theta0);
    let r = (path.end() - p).norm();
    Complex64::new(r.ln(), theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn polyline_midpoint() {
        let path = ComplexPath::line(cx(0.0, 0.0), cx(1.0, 0.0)).unwrap();
        let (p, v) = path.eval(0.5);
        assert!((p - cx(0.5, 0.0)).norm() < 1e-15);
        assert!((v - cx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn full_circle_quarter_point() {
        let path = circle(cx(0.0, 0.0), 1.0, 0.0).unwrap();
        let (p, v) = path.eval(0.25);
        assert!((p - cx(0.0, 1.0)).norm() < 1e-12);
        // velocity = 2π · i · e^{iπ/2} = −2π
        assert!((v - cx(-TAU, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn endpoints_match_declared() {
        let path = ComplexPath::new(vec![
            PathSegment::Polyline { points: vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 1.0)] },
            PathSegment::Arc { center: cx(0.0, 1.0), radius: 1.0, from_angle: 0.0, to_angle: PI },
        ])
        .unwrap();
        assert!((path.eval(0.0).0 - cx(0.0, 0.0)).norm() < 1e-15);
        assert!((path.eval(1.0).0 - cx(-1.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn discontinuous_join_rejected() {
        let r = ComplexPath::new(vec![
            PathSegment::Polyline { points: vec![cx(0.0, 0.0), cx(1.0, 0.0)] },
            PathSegment::Polyline { points: vec![cx(2.0, 0.0), cx(3.0, 0.0)] },
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn loop_around_winding() {
        let punctures = PunctureSet::with_default_radius(vec![cx(0.0, 0.0)]).unwrap();
        let path = punctures.loop_around(cx(0.0, 0.0), 1.0, 0.0).unwrap();
        assert!((path.start() - cx(1.0, 0.0)).norm() < 1e-15);
        assert!(path.is_closed());
        assert_eq!(winding_number(&path, cx(0.0, 0.0)), 1);
        assert_eq!(winding_number(&path, cx(3.0, 0.0)), 0);
    }

    #[test]
    fn loop_around_respects_exclusion() {
        let punctures =
            PunctureSet::with_default_radius(vec![cx(0.0, 0.0), cx(1.0, 0.0)]).unwrap();
        assert!(punctures.loop_around(cx(0.0, 0.0), 1.2, 0.0).is_err());
        assert!(punctures.loop_around(cx(0.0, 0.0), 0.5, 0.0).is_ok());
    }

    #[test]
    fn min_distance_examples() {
        let punctures = PunctureSet::with_default_radius(vec![cx(0.0, 1.0)]).unwrap();
        let path = ComplexPath::line(cx(-1.0, 0.0), cx(1.0, 0.0)).unwrap();
        assert!((min_distance_to_punctures(&path, &punctures) - 1.0).abs() < 1e-15);

        let through = PunctureSet::with_default_radius(vec![cx(0.0, 0.0)]).unwrap();
        assert!(min_distance_to_punctures(&path, &through) < 1e-15);

        let around = circle(cx(0.0, 0.0), 0.25, 0.0).unwrap();
        assert!((min_distance_to_punctures(&around, &through) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn third_kind_values() {
        let w = ThirdKindForm::new(cx(0.0, 0.0), cx(1.0, 0.0)).unwrap();
        let y = cx(10.0, 0.0);
        let v = w.eval(y).unwrap();
        assert!((v - (1.0 / y - 1.0 / (y - cx(1.0, 0.0)))).norm() < 1e-15);
        assert!(w.eval(cx(0.0, 0.0)).is_err());
        // decay at infinity like (x−o)/y²
        let far = cx(1e6, 0.0);
        assert!(w.eval(far).unwrap().norm() < 2e-12);
    }

    #[test]
    fn third_kind_residues_by_contour() {
        let w = ThirdKindForm::new(cx(0.3, 0.2), cx(-1.0, 0.5)).unwrap();
        for (pole, expect) in [(w.x, 1.0), (w.o, -1.0)] {
            let n = 512;
            let r = 0.125;
            let mut acc = cx(0.0, 0.0);
            for k in 0..n {
                let phi = TAU * k as f64 / n as f64;
                let y = pole + Complex64::from_polar(r, phi);
                let dy = Complex64::new(0.0, TAU / n as f64) * Complex64::from_polar(r, phi);
                acc += w.eval(y).unwrap() * dy;
            }
            let residue = acc / cx(0.0, TAU);
            assert!((residue - cx(expect, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn sub_path_and_locate() {
        let path = ComplexPath::line(cx(0.0, 0.0), cx(2.0, 0.0)).unwrap();
        let sub = path.sub_path(0.25, 0.75).unwrap();
        assert!((sub.start() - cx(0.5, 0.0)).norm() < 1e-12);
        assert!((sub.end() - cx(1.5, 0.0)).norm() < 1e-12);

        let t = path.locate(cx(0.5, 0.0), 1e-9).unwrap();
        assert!((t - 0.25).abs() < 1e-9);
        assert!(path.locate(cx(0.5, 1.0), 1e-9).is_none());
    }

    #[test]
    fn tracked_log_on_straight_path() {
        let p = cx(0.0, 0.0);
        let z = cx(1.0, 1.0);
        let path = ComplexPath::line(p, z).unwrap();
        let l = tracked_log(&path, p);
        assert!((l - (z - p).ln()).norm() < 1e-12);
    }

    #[test]
    fn tracked_log_winds_with_the_path() {
        // Straight out to 1, then a full circle: the log gains 2πi.
        let p = cx(0.0, 0.0);
        let path = ComplexPath::new(vec![
            PathSegment::Polyline { points: vec![p, cx(1.0, 0.0)] },
            PathSegment::Arc { center: p, radius: 1.0, from_angle: 0.0, to_angle: TAU },
        ])
        .unwrap();
        let l = tracked_log(&path, p);
        assert!((l - cx(0.0, TAU)).norm() < 1e-10, "tracked log = {l}");
    }
}
