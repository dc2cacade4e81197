//! Chains with flat local coefficients: quantum trajectories and divisors,
//! the graded boundary operator with the singular-divisor exclusion rule,
//! and trajectory constructions anchored at poles.

use crate::algebra::{AdjointElement, AlgebraSpec};
use crate::connection::GaugePotential;
use crate::geometry::{ComplexPath, PunctureSet};
use crate::transport::{check_tol, monodromy, FlatSectionGerm, GermValue, SectionCache, SectionKind};
use crate::{CMatrix, Complex64, Error, Result};

/// Divisor points closer than this are merged.
pub const MERGE_RADIUS: f64 = 1e-10;

/// The ambient data chains live over: the potential and its punctures.
#[derive(Debug, Clone)]
pub struct ChainContext {
    pub potential: GaugePotential,
    pub punctures: PunctureSet,
}

impl ChainContext {
    pub fn new(potential: GaugePotential) -> Result<Self> {
        let punctures = potential.punctures()?;
        Ok(ChainContext { potential, punctures })
    }
}

/// A degree-zero chain: a finite formal sum of points with adjoint
/// coefficients. Terms at coinciding points are merged and exact zeros are
/// pruned.
#[derive(Debug, Clone)]
pub struct QuantumDivisor {
    terms: Vec<(Complex64, AdjointElement)>,
}

impl QuantumDivisor {
    pub fn from_terms(raw: Vec<(Complex64, CMatrix)>) -> Self {
        let mut merged: Vec<(Complex64, CMatrix)> = Vec::new();
        for (point, coef) in raw {
            match merged.iter_mut().find(|(q, _)| (q - point).norm() <= MERGE_RADIUS) {
                Some((_, acc)) => *acc += coef,
                None => merged.push((point, coef)),
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(p, c)| {
                let algebra = AlgebraSpec::gl(c.nrows());
                (p, AdjointElement::new(c, algebra).expect("gl wrap cannot fail"))
            })
            .collect();
        QuantumDivisor { terms }
    }

    pub fn empty() -> Self {
        QuantumDivisor { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(Complex64, AdjointElement)] {
        &self.terms
    }

    /// Sum of the Frobenius norms of all coefficients.
    pub fn total_norm(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff supported at a single point.
    pub fn is_localized(&self) -> bool {
        self.terms.len() == 1
    }
}

/// One cell of a degree-one chain: a weighted path with a flat adjoint germ.
/// The germ anchor must lie on the path (usually at its start; pole-anchored
/// constructions anchor at the regular end instead).
#[derive(Debug, Clone)]
pub struct ChainCell {
    pub weight: Complex64,
    pub path: ComplexPath,
    pub germ: FlatSectionGerm,
}

/// A degree-one chain over a fixed context.
#[derive(Debug, Clone)]
pub struct QuantumTrajectory {
    pub cells: Vec<ChainCell>,
    pub context: ChainContext,
}

/// Boundary of a degree-one chain, with the endpoints that were dropped by
/// the exclusion rule.
#[derive(Debug, Clone)]
pub struct BoundaryReport {
    pub divisor: QuantumDivisor,
    pub dropped_endpoints: Vec<(Complex64, String)>,
}

impl QuantumTrajectory {
    pub fn new(cells: Vec<ChainCell>, context: ChainContext) -> Result<Self> {
        let traj = QuantumTrajectory { cells, context };
        traj.validate()?;
        Ok(traj)
    }

    fn validate(&self) -> Result<()> {
        let n = self.context.potential.size();
        for (i, cell) in self.cells.iter().enumerate() {
            let GermValue::Adjoint(value) = &cell.germ.value else {
                return Err(Error::Invalid(format!(
                    "cell {i}: chain coefficients must be adjoint germs"
                )));
            };
            if value.size() != n {
                return Err(Error::Dimension(format!(
                    "cell {i}: germ is {}x{0}, context is {n}x{n}",
                    value.size()
                )));
            }
            if cell.path.locate(cell.germ.anchor, 1e-7).is_none() {
                return Err(Error::Invalid(format!(
                    "cell {i}: germ anchor {} does not lie on the cell path",
                    cell.germ.anchor
                )));
            }
            if self.context.punctures.is_excluded(cell.germ.anchor) {
                return Err(Error::Invalid(format!(
                    "cell {i}: germ anchor {} lies in an exclusion disk",
                    cell.germ.anchor
                )));
            }
            check_interior_clearance(&cell.path, &self.context.punctures, i)?;
        }
        Ok(())
    }

    /// Reverses every cell path, keeping germs anchored.
    pub fn reversed(&self) -> Result<QuantumTrajectory> {
        let cells = self
            .cells
            .iter()
            .map(|c| ChainCell {
                weight: c.weight,
                path: c.path.reversed(),
                germ: c.germ.clone(),
            })
            .collect();
        QuantumTrajectory::new(cells, self.context.clone())
    }

    /// Same chain with every weight multiplied by `w`.
    pub fn scaled(&self, w: Complex64) -> QuantumTrajectory {
        let cells = self
            .cells
            .iter()
            .map(|c| ChainCell { weight: c.weight * w, path: c.path.clone(), germ: c.germ.clone() })
            .collect();
        QuantumTrajectory { cells, context: self.context.clone() }
    }
}

/// Interior points of chains may not cross exclusion disks; only endpoints
/// may sit inside (they are then dropped from boundaries).
fn check_interior_clearance(
    path: &ComplexPath,
    punctures: &PunctureSet,
    cell_index: usize,
) -> Result<()> {
    let eps = punctures.exclusion_radius();
    for &q in punctures.points() {
        let d = crate::geometry::min_distance_to_punctures(
            path,
            &PunctureSet::new(vec![q], eps).expect("single puncture"),
        );
        if d <= eps {
            let at_start = (path.start() - q).norm() <= eps;
            let at_end = (path.end() - q).norm() <= eps;
            if !at_start && !at_end {
                return Err(Error::Exclusion(format!(
                    "cell {cell_index}: path interior crosses the exclusion disk of {q}"
                )));
            }
        }
    }
    Ok(())
}

/// The graded boundary: each cell contributes `weight · (end ⊗ σ(end))
/// − weight · (start ⊗ σ(start))`, with endpoints inside exclusion disks
/// dropped and reported.
pub fn boundary_1(trajectory: &QuantumTrajectory, tol: f64) -> Result<BoundaryReport> {
    let tol = check_tol(tol)?;
    let punctures = &trajectory.context.punctures;
    let phi = &trajectory.context.potential;

    let contributions = crate::exec::par_map(
        trajectory.cells.iter().collect::<Vec<_>>(),
        |cell| -> Result<(Vec<(Complex64, CMatrix)>, Vec<(Complex64, String)>)> {
            let mut terms = Vec::new();
            let mut dropped = Vec::new();
            let t0 = cell
                .path
                .locate(cell.germ.anchor, 1e-7)
                .expect("validated anchor");
            let GermValue::Adjoint(value) = &cell.germ.value else { unreachable!() };
            let cache = SectionCache::anchored_inside(
                phi,
                &cell.path,
                t0,
                value.matrix().clone(),
                SectionKind::Adjoint,
                tol,
            )?;
            for (t_end, point, sign) in [
                (1.0, cell.path.end(), Complex64::new(1.0, 0.0)),
                (0.0, cell.path.start(), Complex64::new(-1.0, 0.0)),
            ] {
                if punctures.is_excluded(point) {
                    dropped.push((
                        point,
                        format!(
                            "endpoint within {:.1e} of a puncture",
                            punctures.exclusion_radius()
                        ),
                    ));
                    continue;
                }
                let v = cache.value_at(t_end)?;
                terms.push((point, v * (cell.weight * sign)));
            }
            Ok((terms, dropped))
        },
    );

    let mut all_terms = Vec::new();
    let mut all_dropped = Vec::new();
    for c in contributions {
        let (terms, dropped) = c?;
        all_terms.extend(terms);
        all_dropped.extend(dropped);
    }
    Ok(BoundaryReport {
        divisor: QuantumDivisor::from_terms(all_terms),
        dropped_endpoints: all_dropped,
    })
}

/// Kernel membership of the boundary operator: true iff the boundary
/// divisor's total coefficient norm is at most `tol`.
pub fn is_cycle(trajectory: &QuantumTrajectory, tol: f64) -> Result<(bool, f64)> {
    let report = boundary_1(trajectory, (tol * 1e-2).clamp(1e-12, 1e-6))?;
    let residual = report.divisor.total_norm();
    Ok((residual <= tol, residual))
}

/// A small simple circle around the pole `p` carrying the germ `E`,
/// together with the commutation residual `‖[monodromy, E]‖_F`. The chain
/// is a cycle exactly when the residual vanishes.
pub fn trivial_cycle_around(
    context: &ChainContext,
    p: Complex64,
    radius: f64,
    e: &AdjointElement,
    tol: f64,
) -> Result<(QuantumTrajectory, f64)> {
    let loop_path = context.punctures.loop_around(p, radius, 0.0)?;
    let m = monodromy(&context.potential, &loop_path, tol)?;
    let residual = (m.matrix() * e.matrix() - e.matrix() * m.matrix()).norm();
    let germ = FlatSectionGerm::adjoint(loop_path.start(), e.clone());
    let cell = ChainCell { weight: Complex64::new(1.0, 0.0), path: loop_path, germ };
    let trajectory = QuantumTrajectory::new(vec![cell], context.clone())?;
    Ok((trajectory, residual))
}

/// Local growth of a transported section on shrinking circles around an
/// anchor pole: the fitted log-log slope and its nearest integer.
#[derive(Debug, Clone, Copy)]
pub struct GrowthFit {
    pub slope: f64,
    pub exponent: i64,
    pub base_radius: f64,
}

/// Tolerance for the growth-fit slope to count as an integer.
pub const GROWTH_SLOPE_TOL: f64 = 0.1;

/// Fits `log‖M‖` against `log r` on radii `r, r/2, r/4, r/8` along the
/// path toward the pole at parameter-start. Rejects non-integer slopes and
/// slopes drifting between octaves (the essential-singularity signature).
pub(crate) fn fit_anchor_growth(
    cache: &SectionCache,
    path: &ComplexPath,
    pole: Complex64,
    base_radius: f64,
    max_order: i64,
) -> Result<GrowthFit> {
    let mut samples = Vec::new();
    for k in 0..4 {
        let r = base_radius / 2f64.powi(k);
        let t = crossing_parameter(path, pole, r)?;
        let m = cache.value_at(t)?;
        let norm = m.norm();
        if norm == 0.0 {
            // Identically flat germ: treat as regular.
            return Ok(GrowthFit { slope: 0.0, exponent: 0, base_radius });
        }
        samples.push((r, norm));
    }
    let mut slopes = Vec::new();
    for w in samples.windows(2) {
        let (r0, n0) = w[0];
        let (r1, n1) = w[1];
        slopes.push((n1 / n0).ln() / (r1 / r0).ln());
    }
    let last = *slopes.last().unwrap();
    let prev = slopes[slopes.len() - 2];
    let exponent = last.round() as i64;
    if (last - exponent as f64).abs() > GROWTH_SLOPE_TOL {
        return Err(Error::Gate(format!(
            "local growth exponent {last:.3} is not within {GROWTH_SLOPE_TOL} of an integer"
        )));
    }
    if (last - prev).abs() > GROWTH_SLOPE_TOL {
        return Err(Error::Gate(format!(
            "local growth exponent drifts between octaves ({prev:.3} vs {last:.3}); \
             essential singularity suspected"
        )));
    }
    if exponent < -max_order {
        return Err(Error::Gate(format!(
            "local growth exponent {exponent} below the admissible order −{max_order}"
        )));
    }
    Ok(GrowthFit { slope: last, exponent, base_radius })
}

/// First parameter at which the path reaches distance `r` from `pole`
/// (assuming the path starts at the pole and initially recedes).
pub(crate) fn crossing_parameter(path: &ComplexPath, pole: Complex64, r: f64) -> Result<f64> {
    let compiled = path.compile();
    let dist = |t: f64| (compiled.eval(t).0 - pole).norm();
    let n = 4096;
    let mut prev = 0.0f64;
    for k in 1..=n {
        let t = k as f64 / n as f64;
        if dist(t) >= r {
            let (mut lo, mut hi) = (prev, t);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if dist(mid) >= r {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        prev = t;
    }
    Err(Error::Invalid(format!(
        "path never reaches distance {r:.3e} from {pole}"
    )))
}

/// Radius used for gate sampling at the pole `p`: a fixed fraction of the
/// clearance to the nearest other singular point and to the path end.
pub(crate) fn gate_base_radius(phi: &GaugePotential, p: Complex64, z: Complex64) -> f64 {
    let mut clearance = (z - p).norm();
    for q in phi.pole_positions() {
        let d = (q - p).norm();
        if d > 1e-9 {
            clearance = clearance.min(d);
        }
    }
    0.1 * clearance
}

/// A single-cell trajectory from the pole `p` (whose start endpoint is
/// dropped by the exclusion rule) through `route` to `z`, with the germ
/// anchored at `z` with value `E`, so that the boundary is exactly
/// `{z ⊗ E}`. The anchor pole is gated by the Laurent-growth fit: the
/// transported section must have at worst a finite-order pole at `p`.
pub fn localized_boundary_trajectory(
    context: &ChainContext,
    p: Complex64,
    z: Complex64,
    e: &AdjointElement,
    route: &[Complex64],
    tol: f64,
) -> Result<QuantumTrajectory> {
    let tol = check_tol(tol)?;
    let phi = &context.potential;
    if phi.find_pole(p).is_none() {
        return Err(Error::Invalid(format!(
            "anchor {p} is not a pole of the potential"
        )));
    }
    if e.norm() == 0.0 {
        return Err(Error::Invalid("boundary coefficient must be nonzero".into()));
    }
    if context.punctures.is_excluded(z) {
        return Err(Error::Exclusion(format!("target {z} lies in an exclusion disk")));
    }
    let mut points = vec![p];
    points.extend_from_slice(route);
    points.push(z);
    let path = ComplexPath::polyline(points)?;
    check_interior_clearance(&path, &context.punctures, 0)?;

    let cache = SectionCache::anchored_inside(
        phi,
        &path,
        1.0,
        e.matrix().clone(),
        SectionKind::Adjoint,
        tol,
    )?;
    let base = gate_base_radius(phi, p, z);
    fit_anchor_growth(&cache, &path, p, base, phi.size() as i64)?;

    let germ = FlatSectionGerm::adjoint(z, e.clone());
    let cell = ChainCell { weight: Complex64::new(1.0, 0.0), path, germ };
    QuantumTrajectory::new(vec![cell], context.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sl2(a: f64, b: f64, c: f64) -> AdjointElement {
        AdjointElement::new(
            CMatrix::from_row_slice(
                2,
                2,
                &[cx(a, 0.0), cx(b, 0.0), cx(c, 0.0), cx(-a, 0.0)],
            ),
            AlgebraSpec::sl(2),
        )
        .unwrap()
    }

    fn quarter_residue_context() -> ChainContext {
        let a = sl2(0.25, 0.0, 0.0);
        let phi =
            GaugePotential::new(AlgebraSpec::sl(2), vec![(cx(0.0, 0.0), vec![a])], vec![])
                .unwrap();
        ChainContext::new(phi).unwrap()
    }

    /// Two poles ±1 with residues ±diag(1/2, −1/2).
    fn two_pole_context() -> ChainContext {
        let a = sl2(0.5, 0.0, 0.0);
        let neg = AdjointElement::new(-a.matrix().clone(), AlgebraSpec::sl(2)).unwrap();
        let phi = GaugePotential::new(
            AlgebraSpec::sl(2),
            vec![(cx(1.0, 0.0), vec![a]), (cx(-1.0, 0.0), vec![neg])],
            vec![],
        )
        .unwrap();
        ChainContext::new(phi).unwrap()
    }

    #[test]
    fn divisor_merging_and_pruning() {
        let e = CMatrix::identity(2, 2);
        let d = QuantumDivisor::from_terms(vec![
            (cx(1.0, 0.0), e.clone()),
            (cx(1.0, 1e-12), -e.clone()),
            (cx(2.0, 0.0), e.clone()),
        ]);
        assert_eq!(d.terms().len(), 1);
        assert!((d.terms()[0].0 - cx(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn open_segment_boundary_under_zero_potential() {
        let phi = GaugePotential::zero(AlgebraSpec::sl(2));
        let ctx = ChainContext::new(phi).unwrap();
        let e = sl2(0.3, 0.7, -0.2);
        let path = ComplexPath::line(cx(0.0, 0.0), cx(1.0, 0.0)).unwrap();
        let germ = FlatSectionGerm::adjoint(cx(0.0, 0.0), e.clone());
        let traj = QuantumTrajectory::new(
            vec![ChainCell { weight: cx(1.0, 0.0), path, germ }],
            ctx,
        )
        .unwrap();
        let report = boundary_1(&traj, 1e-10).unwrap();
        assert_eq!(report.divisor.terms().len(), 2);
        let total: f64 = report.divisor.total_norm();
        assert!((total - 2.0 * e.norm()).abs() < 1e-12);
    }

    #[test]
    fn closed_loop_with_central_germ_has_empty_boundary() {
        let ctx = quarter_residue_context();
        let central = AdjointElement::gl(CMatrix::identity(2, 2) * cx(0.5, -0.25));
        let loop_path = ctx.punctures.loop_around(cx(0.0, 0.0), 0.5, 0.0).unwrap();
        let germ = FlatSectionGerm::adjoint(loop_path.start(), central);
        let traj = QuantumTrajectory::new(
            vec![ChainCell { weight: cx(1.0, 0.0), path: loop_path, germ }],
            ctx,
        )
        .unwrap();
        let report = boundary_1(&traj, 1e-10).unwrap();
        assert!(report.divisor.is_empty());
    }

    #[test]
    fn trivial_cycle_residuals() {
        let ctx = quarter_residue_context();
        let p = cx(0.0, 0.0);

        // central germ: exact commutation
        let central = AdjointElement::gl(CMatrix::identity(2, 2) * cx(2.0, 0.0));
        let (traj, res) = trivial_cycle_around(&ctx, p, 0.4, &central, 1e-10).unwrap();
        assert!(res < 1e-9);
        let (ok, n) = is_cycle(&traj, 1e-6).unwrap();
        assert!(ok, "central trivial cycle residual {n:.3e}");

        // the residue itself commutes with its exponential
        let a = sl2(0.25, 0.0, 0.0);
        let (traj, res) = trivial_cycle_around(&ctx, p, 0.4, &a, 1e-10).unwrap();
        assert!(res < 1e-6);
        let (ok, _) = is_cycle(&traj, 1e-6).unwrap();
        assert!(ok);

        // generic non-commuting germ
        let e = sl2(0.0, 1.0, 0.0);
        let (traj, res) = trivial_cycle_around(&ctx, p, 0.4, &e, 1e-10).unwrap();
        assert!(res > 1e-2);
        let (ok, n) = is_cycle(&traj, 1e-6).unwrap();
        assert!(!ok);
        assert!(n > 1e-2);
    }

    #[test]
    fn figure_of_two_cells_closes() {
        // Upper and lower half circles around the pole with matched germs:
        // interior endpoints cancel, and with a commuting germ the whole
        // figure is a cycle.
        let ctx = quarter_residue_context();
        let a = sl2(0.25, 0.0, 0.0);
        let upper = crate::geometry::ComplexPath::new(vec![
            crate::geometry::PathSegment::Arc {
                center: cx(0.0, 0.0),
                radius: 0.5,
                from_angle: 0.0,
                to_angle: std::f64::consts::PI,
            },
        ])
        .unwrap();
        let lower = crate::geometry::ComplexPath::new(vec![
            crate::geometry::PathSegment::Arc {
                center: cx(0.0, 0.0),
                radius: 0.5,
                from_angle: std::f64::consts::PI,
                to_angle: std::f64::consts::TAU,
            },
        ])
        .unwrap();
        // germ for the second cell: transport of `a` along the first cell
        let g1 = FlatSectionGerm::adjoint(upper.start(), a.clone());
        let r1 = crate::transport::transport_adjoint(&ctx.potential, &upper, &g1, 1e-11).unwrap();
        let g2 = FlatSectionGerm::adjoint(
            lower.start(),
            AdjointElement::gl(r1.end_value.clone()),
        );
        let traj = QuantumTrajectory::new(
            vec![
                ChainCell { weight: cx(1.0, 0.0), path: upper, germ: g1 },
                ChainCell { weight: cx(1.0, 0.0), path: lower, germ: g2 },
            ],
            ctx,
        )
        .unwrap();
        let (ok, res) = is_cycle(&traj, 1e-6).unwrap();
        assert!(ok, "figure residual {res:.3e}");
    }

    #[test]
    fn boundary_is_linear_in_weights() {
        let ctx = quarter_residue_context();
        let e = sl2(0.1, 0.4, 0.3);
        let path = ComplexPath::line(cx(1.0, 0.0), cx(2.0, 1.0)).unwrap();
        let germ = FlatSectionGerm::adjoint(cx(1.0, 0.0), e);
        let traj = QuantumTrajectory::new(
            vec![ChainCell { weight: cx(1.0, 0.0), path, germ }],
            ctx,
        )
        .unwrap();
        let w = cx(2.5, -1.5);
        let base = boundary_1(&traj, 1e-10).unwrap();
        let scaled = boundary_1(&traj.scaled(w), 1e-10).unwrap();
        for ((p1, c1), (p2, c2)) in base.divisor.terms().iter().zip(scaled.divisor.terms()) {
            assert!((p1 - p2).norm() < 1e-12);
            assert!((c1.matrix() * w - c2.matrix()).norm() < 1e-10);
        }
    }

    #[test]
    fn orientation_reversal_negates_boundary() {
        let ctx = quarter_residue_context();
        let e = sl2(0.1, 0.4, 0.3);
        let path = ComplexPath::line(cx(1.0, 0.0), cx(2.0, 1.0)).unwrap();
        let germ = FlatSectionGerm::adjoint(cx(1.0, 0.0), e);
        let traj = QuantumTrajectory::new(
            vec![ChainCell { weight: cx(1.0, 0.0), path, germ }],
            ctx,
        )
        .unwrap();
        let fwd = boundary_1(&traj, 1e-10).unwrap();
        let bwd = boundary_1(&traj.reversed().unwrap(), 1e-10).unwrap();
        // Each point appears in both with opposite coefficients.
        for (p, c) in fwd.divisor.terms() {
            let (_, cr) = bwd
                .divisor
                .terms()
                .iter()
                .find(|(q, _)| (q - p).norm() < 1e-9)
                .expect("matching point");
            assert!((c.matrix() + cr.matrix()).norm() < 1e-8);
        }
    }

    #[test]
    fn subdivision_leaves_boundary_unchanged() {
        let ctx = quarter_residue_context();
        let e = sl2(0.2, -0.3, 0.5);
        let path = ComplexPath::polyline(vec![cx(1.0, 0.0), cx(1.5, 1.0), cx(2.5, 0.5)]).unwrap();
        let germ = FlatSectionGerm::adjoint(cx(1.0, 0.0), e.clone());
        let whole = QuantumTrajectory::new(
            vec![ChainCell { weight: cx(1.0, 0.0), path: path.clone(), germ: germ.clone() }],
            ctx.clone(),
        )
        .unwrap();

        let ts = 0.37;
        let first = path.sub_path(0.0, ts).unwrap();
        let second = path.sub_path(ts, 1.0).unwrap();
        let g1 = FlatSectionGerm::adjoint(first.start(), e);
        let mid = crate::transport::transport_adjoint(&ctx.potential, &first, &g1, 1e-11)
            .unwrap()
            .end_value;
        let g2 = FlatSectionGerm::adjoint(second.start(), AdjointElement::gl(mid));
        let split = QuantumTrajectory::new(
            vec![
                ChainCell { weight: cx(1.0, 0.0), path: first, germ: g1 },
                ChainCell { weight: cx(1.0, 0.0), path: second, germ: g2 },
            ],
            ctx,
        )
        .unwrap();

        let b1 = boundary_1(&whole, 1e-10).unwrap();
        let b2 = boundary_1(&split, 1e-10).unwrap();
        assert_eq!(b1.divisor.terms().len(), 2);
        assert_eq!(b2.divisor.terms().len(), 2);
        for (p, c) in b1.divisor.terms() {
            let (_, c2) = b2
                .divisor
                .terms()
                .iter()
                .find(|(q, _)| (q - p).norm() < 1e-9)
                .expect("point survives subdivision");
            assert!((c.matrix() - c2.matrix()).norm() < 1e-8);
        }
    }

    #[test]
    fn exclusion_rule_drops_pole_endpoints() {
        let ctx = two_pole_context();
        let e = sl2(0.0, 1.0, 0.0);
        let traj = localized_boundary_trajectory(
            &ctx,
            cx(1.0, 0.0),
            cx(3.0, 0.0),
            &e,
            &[cx(2.0, 0.5)],
            1e-10,
        )
        .unwrap();
        let report = boundary_1(&traj, 1e-10).unwrap();
        assert_eq!(report.dropped_endpoints.len(), 1);
        assert!(report.divisor.is_localized());
        let (point, coef) = &report.divisor.terms()[0];
        assert!((point - cx(3.0, 0.0)).norm() < 1e-12);
        assert!((coef.matrix() - e.matrix()).norm() < 1e-8);
    }

    #[test]
    fn pole_anchor_gate_accepts_integer_growth() {
        // Residue diag(1/2,−1/2): adjoint exponents in {−1, 0, 1}; all
        // germs must pass the gate.
        let ctx = two_pole_context();
        for e in [sl2(0.0, 1.0, 0.0), sl2(0.0, 0.0, 1.0), sl2(1.0, 0.0, 0.0)] {
            let r = localized_boundary_trajectory(
                &ctx,
                cx(1.0, 0.0),
                cx(3.0, 0.0),
                &e,
                &[],
                1e-10,
            );
            assert!(r.is_ok(), "gate rejected {e:?}: {:?}", r.err());
        }
    }

    #[test]
    fn gate_rejects_anchor_without_pole() {
        let phi = GaugePotential::zero(AlgebraSpec::sl(2));
        let ctx = ChainContext::new(phi).unwrap();
        let e = sl2(0.0, 1.0, 0.0);
        let r = localized_boundary_trajectory(
            &ctx,
            cx(0.0, 0.0),
            cx(1.0, 0.0),
            &e,
            &[],
            1e-10,
        );
        match r {
            Err(Error::Invalid(_)) => {}
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn interior_crossing_is_rejected() {
        let ctx = two_pole_context();
        let e = sl2(0.1, 0.0, 0.0);
        // path through the pole at −1
        let path = ComplexPath::line(cx(-2.0, 0.0), cx(0.0, 0.0)).unwrap();
        let germ = FlatSectionGerm::adjoint(cx(-2.0, 0.0), e);
        let r = QuantumTrajectory::new(
            vec![ChainCell { weight: cx(1.0, 0.0), path, germ }],
            ctx,
        );
        match r {
            Err(Error::Exclusion(_)) => {}
            other => panic!("expected exclusion failure, got {other:?}"),
        }
    }
}
