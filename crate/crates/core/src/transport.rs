//! Numerical parallel transport: fundamental solutions along paths, adjoint
//! flat sections, and monodromy.
//!
//! The integrator is an adaptive Dormand–Prince 5(4) pair with dense output.
//! Each accepted step is additionally gated on the interpolant defect at the
//! step midpoint, measured in the transported equation itself, so the
//! reported `flatness_residual` is an honest collocation defect rather than
//! the controller's own error estimate.

use crate::algebra::{commutator_raw, AdjointElement, GroupElement};
use crate::connection::GaugePotential;
use crate::geometry::{min_distance_to_punctures, ComplexPath};
use crate::{CMatrix, Complex64, Error, Result};

/// Default relative tolerance for transport.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Accepted steps must keep the midpoint defect below `DEFECT_SAFETY × tol`,
/// well inside the documented safety factor of 100.
pub const DEFECT_SAFETY: f64 = 20.0;

const MAX_STEPS: usize = 400_000;

pub(crate) fn check_tol(tol: f64) -> Result<f64> {
    if !(1e-13..=1e-2).contains(&tol) {
        return Err(Error::Invalid(format!(
            "tolerance {tol:.3e} outside the supported range [1e-13, 1e-2]"
        )));
    }
    Ok(tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionKind {
    Fundamental,
    Adjoint,
}

/// The value of a flat section germ at its anchor point.
#[derive(Debug, Clone, PartialEq)]
pub enum GermValue {
    Fundamental(GroupElement),
    Adjoint(AdjointElement),
}

/// A flat-section germ: an anchor point and the section value there,
/// extended along paths by transport.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatSectionGerm {
    pub anchor: Complex64,
    pub value: GermValue,
}

impl FlatSectionGerm {
    pub fn adjoint(anchor: Complex64, value: AdjointElement) -> Self {
        FlatSectionGerm { anchor, value: GermValue::Adjoint(value) }
    }

    pub fn fundamental(anchor: Complex64, value: GroupElement) -> Self {
        FlatSectionGerm { anchor, value: GermValue::Fundamental(value) }
    }

    pub fn kind(&self) -> SectionKind {
        match self.value {
            GermValue::Fundamental(_) => SectionKind::Fundamental,
            GermValue::Adjoint(_) => SectionKind::Adjoint,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        match &self.value {
            GermValue::Fundamental(g) => g.matrix(),
            GermValue::Adjoint(e) => e.matrix(),
        }
    }
}

/// Result of a transport: the end value, the maximal midpoint defect
/// observed over accepted steps (relative to the equation scale), the number
/// of accepted steps, and the dense checkpoint trail.
#[derive(Debug, Clone)]
pub struct TransportResult {
    pub end_value: CMatrix,
    pub flatness_residual: f64,
    pub steps: usize,
    pub checkpoints: Vec<(f64, CMatrix)>,
}

/// Solves `dV/dt = Φ(γ(t))·γ'(t)·V`, `V(0) = init`, along the path.
pub fn transport_fundamental(
    phi: &GaugePotential,
    path: &ComplexPath,
    init: &GroupElement,
    tol: f64,
) -> Result<TransportResult> {
    let tol = check_tol(tol)?;
    if init.size() != phi.size() {
        return Err(Error::Dimension(format!(
            "initial value is {}x{0}, potential is {1}x{1}",
            init.size(),
            phi.size()
        )));
    }
    check_path_clearance(phi, path)?;
    let compiled = path.compile();
    let rhs = |t: f64, v: &CMatrix| -> Result<CMatrix> {
        let (point, velocity) = compiled.eval(t);
        Ok(phi.eval(point)? * velocity * v)
    };
    integrate(&rhs, 0.0, 1.0, init.matrix().clone(), tol, &compiled.breakpoints())
}

/// Solves `dW/dt = [Φ(γ(t))·γ'(t), W]`, `W(0) = germ value`, along the path.
pub fn transport_adjoint(
    phi: &GaugePotential,
    path: &ComplexPath,
    germ: &FlatSectionGerm,
    tol: f64,
) -> Result<TransportResult> {
    let tol = check_tol(tol)?;
    let GermValue::Adjoint(value) = &germ.value else {
        return Err(Error::Invalid("adjoint transport needs an adjoint germ".into()));
    };
    if value.size() != phi.size() {
        return Err(Error::Dimension(format!(
            "germ is {}x{0}, potential is {1}x{1}",
            value.size(),
            phi.size()
        )));
    }
    if (germ.anchor - path.start()).norm() > 1e-9 {
        return Err(Error::Invalid(format!(
            "germ anchored at {} but the path starts at {}",
            germ.anchor,
            path.start()
        )));
    }
    check_path_clearance(phi, path)?;
    let compiled = path.compile();
    let rhs = |t: f64, w: &CMatrix| -> Result<CMatrix> {
        let (point, velocity) = compiled.eval(t);
        Ok(commutator_raw(&(phi.eval(point)? * velocity), w))
    };
    integrate(&rhs, 0.0, 1.0, value.matrix().clone(), tol, &compiled.breakpoints())
}

/// Monodromy of a closed loop: fundamental transport with identity initial
/// value.
pub fn monodromy(phi: &GaugePotential, loop_path: &ComplexPath, tol: f64) -> Result<GroupElement> {
    if !loop_path.is_closed() {
        return Err(Error::Invalid(format!(
            "monodromy needs a closed loop; endpoint gap is {:.3e}",
            (loop_path.end() - loop_path.start()).norm()
        )));
    }
    let res =
        transport_fundamental(phi, loop_path, &GroupElement::identity(phi.size()), tol)?;
    Ok(GroupElement::from_invertible(res.end_value))
}

/// `‖(E transported around the loop) − E‖_F`; near zero iff `E` commutes
/// with the loop's monodromy.
pub fn adjoint_monodromy_check(
    phi: &GaugePotential,
    loop_path: &ComplexPath,
    e: &AdjointElement,
    tol: f64,
) -> Result<f64> {
    if !loop_path.is_closed() {
        return Err(Error::Invalid("adjoint monodromy check needs a closed loop".into()));
    }
    let germ = FlatSectionGerm::adjoint(loop_path.start(), e.clone());
    let res = transport_adjoint(phi, loop_path, &germ, tol)?;
    Ok((res.end_value - e.matrix()).norm())
}

/// Based loops around every pole of the potential, conjugated to the common
/// `basepoint` by straight connecting segments. Pole order is by increasing
/// real part (ties by imaginary part).
pub fn based_loops(
    phi: &GaugePotential,
    basepoint: Complex64,
    radius_factor: f64,
) -> Result<Vec<ComplexPath>> {
    let mut poles = phi.pole_positions();
    poles.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let mut loops = Vec::with_capacity(poles.len());
    for (i, &p) in poles.iter().enumerate() {
        let mut clearance = (basepoint - p).norm();
        for (j, &q) in poles.iter().enumerate() {
            if i != j {
                clearance = clearance.min((q - p).norm());
            }
        }
        let radius = radius_factor * clearance;
        if !(radius > 0.0) {
            return Err(Error::Invalid(format!("no room for a loop around {p}")));
        }
        let dir = (basepoint - p) / (basepoint - p).norm();
        let entry = p + dir * radius;
        let angle = dir.im.atan2(dir.re);
        let out = ComplexPath::line(basepoint, entry)?;
        let around = crate::geometry::circle(p, radius, angle)?;
        let back = ComplexPath::line(entry, basepoint)?;
        loops.push(out.join(&around)?.join(&back)?);
    }
    Ok(loops)
}

/// Monodromies of [`based_loops`], in the same order. Independent loops run
/// in parallel when the `parallel` feature is enabled.
pub fn monodromy_basis(
    phi: &GaugePotential,
    basepoint: Complex64,
    radius_factor: f64,
    tol: f64,
) -> Result<Vec<GroupElement>> {
    let loops = based_loops(phi, basepoint, radius_factor)?;
    crate::exec::par_map(loops, |l| monodromy(phi, &l, tol)).into_iter().collect()
}

fn check_path_clearance(phi: &GaugePotential, path: &ComplexPath) -> Result<()> {
    let punctures = phi.punctures()?;
    if punctures.points().is_empty() {
        return Ok(());
    }
    let d = min_distance_to_punctures(path, &punctures);
    if d <= punctures.exclusion_radius() {
        return Err(Error::Exclusion(format!(
            "path comes within {d:.3e} of a pole (exclusion radius {:.3e})",
            punctures.exclusion_radius()
        )));
    }
    Ok(())
}

/// A transported flat section along a fixed path, with dense checkpoints,
/// evaluable at any path parameter. Evaluation re-integrates from the
/// nearest checkpoint, so lookups are cheap and the struct stays immutable
/// and shareable across threads.
#[derive(Debug, Clone)]
pub struct SectionCache {
    kind: SectionKind,
    tol: f64,
    checkpoints: Vec<(f64, CMatrix)>,
    compiled: crate::geometry::CompiledPath,
    breaks: Vec<f64>,
    phi: GaugePotential,
}

impl SectionCache {
    /// Transports the germ once along the whole path and stores the trail.
    pub fn new(
        phi: &GaugePotential,
        path: &ComplexPath,
        germ: &FlatSectionGerm,
        tol: f64,
    ) -> Result<Self> {
        let result = match germ.kind() {
            SectionKind::Fundamental => {
                let GermValue::Fundamental(g) = &germ.value else { unreachable!() };
                transport_fundamental(phi, path, g, tol)?
            }
            SectionKind::Adjoint => transport_adjoint(phi, path, germ, tol)?,
        };
        let compiled = path.compile();
        let breaks = compiled.breakpoints();
        Ok(SectionCache {
            kind: germ.kind(),
            tol,
            checkpoints: result.checkpoints,
            compiled,
            breaks,
            phi: phi.clone(),
        })
    }

    /// Builds a cache over a path whose endpoints may sit inside exclusion
    /// disks, anchoring the germ at an interior parameter `t0`. No clearance
    /// check is performed; callers guarantee that evaluation stays away from
    /// the singular endpoints.
    pub(crate) fn anchored_inside(
        phi: &GaugePotential,
        path: &ComplexPath,
        t0: f64,
        value: CMatrix,
        kind: SectionKind,
        tol: f64,
    ) -> Result<Self> {
        Ok(SectionCache {
            kind,
            tol,
            checkpoints: vec![(t0, value)],
            compiled: path.compile(),
            breaks: path.breakpoints(),
            phi: phi.clone(),
        })
    }

    pub fn kind(&self) -> SectionKind {
        self.kind
    }

    /// The section value at path parameter `t`.
    pub fn value_at(&self, t: f64) -> Result<CMatrix> {
        // Nearest checkpoint; integrate the gap in whichever direction.
        let (mut t0, mut y0) = (self.checkpoints[0].0, &self.checkpoints[0].1);
        let mut best = (t0 - t).abs();
        for (tc, yc) in &self.checkpoints {
            let d = (tc - t).abs();
            if d < best {
                best = d;
                t0 = *tc;
                y0 = yc;
            }
        }
        if best == 0.0 {
            return Ok(y0.clone());
        }
        let out = self.integrate_between(t0, t, y0.clone())?;
        Ok(out.end_value)
    }

    /// Integrates the section equation between arbitrary parameters.
    pub(crate) fn integrate_between(
        &self,
        t0: f64,
        t1: f64,
        y0: CMatrix,
    ) -> Result<TransportResult> {
        let compiled = &self.compiled;
        let phi = &self.phi;
        let kind = self.kind;
        let rhs = move |t: f64, y: &CMatrix| -> Result<CMatrix> {
            let (point, velocity) = compiled.eval(t);
            let a = phi.eval(point)? * velocity;
            Ok(match kind {
                SectionKind::Fundamental => a * y,
                SectionKind::Adjoint => commutator_raw(&a, y),
            })
        };
        if t0 == t1 {
            return Ok(TransportResult {
                end_value: y0.clone(),
                flatness_residual: 0.0,
                steps: 0,
                checkpoints: vec![(t0, y0)],
            });
        }
        if t0 < t1 {
            integrate(&rhs, t0, t1, y0, self.tol, &self.breaks)
        } else {
            // Reverse the parameter: Z(s) = Y(t0 + t1 − s).
            let rev = move |s: f64, y: &CMatrix| -> Result<CMatrix> {
                Ok(-rhs(t0 + t1 - s, y)?)
            };
            let rev_breaks: Vec<f64> = self.breaks.iter().map(|b| t0 + t1 - b).collect();
            integrate(&rev, t1, t0, y0, self.tol, &rev_breaks)
        }
    }
}

// ---------------------------------------------------------------------------
// Dormand–Prince 5(4) with dense output and midpoint-defect gating.
// ---------------------------------------------------------------------------

const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

type Rhs<'a> = &'a dyn Fn(f64, &CMatrix) -> Result<CMatrix>;

/// Integrates `dY/dt = rhs(t, Y)` over `[t0, t1]` (forward), splitting at
/// the supplied breakpoints so steps never straddle a derivative jump.
pub(crate) fn integrate(
    rhs: Rhs<'_>,
    t0: f64,
    t1: f64,
    y0: CMatrix,
    tol: f64,
    breakpoints: &[f64],
) -> Result<TransportResult> {
    let mut pieces: Vec<f64> = breakpoints
        .iter()
        .cloned()
        .filter(|&b| b > t0 + 1e-15 && b < t1 - 1e-15)
        .collect();
    pieces.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pieces.push(t1);

    let mut y = y0.clone();
    let mut checkpoints = vec![(t0, y0)];
    let mut t = t0;
    let mut residual = 0.0f64;
    let mut steps = 0usize;
    for end in pieces {
        if end - t <= 1e-15 {
            continue;
        }
        let out = dopri5_piece(rhs, t, end, y, tol, &mut checkpoints, &mut steps)?;
        residual = residual.max(out.1);
        y = out.0;
        t = end;
    }
    Ok(TransportResult { end_value: y, flatness_residual: residual, steps, checkpoints })
}

fn dopri5_piece(
    rhs: Rhs<'_>,
    t0: f64,
    t1: f64,
    y0: CMatrix,
    tol: f64,
    checkpoints: &mut Vec<(f64, CMatrix)>,
    steps: &mut usize,
) -> Result<(CMatrix, f64)> {
    let span = t1 - t0;
    let h_min = span * 1e-14;
    let mut h = span * 0.05;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y)?;
    let mut defect_max = 0.0f64;

    while t < t1 - span * 1e-14 {
        if *steps >= MAX_STEPS {
            return Err(Error::StepUnderflow(format!(
                "step budget exhausted at t = {t:.6} (near-singular passage?)"
            )));
        }
        h = h.min(t1 - t);
        if h < h_min {
            return Err(Error::StepUnderflow(format!(
                "step size {h:.3e} underflowed at t = {t:.6}"
            )));
        }

        let mut k = Vec::with_capacity(7);
        k.push(k1.clone());
        let mut failed = false;
        for stage in 0..6 {
            let mut arg = y.clone();
            for (j, kj) in k.iter().enumerate() {
                let a = A[stage][j];
                if a != 0.0 {
                    arg += kj * Complex64::new(h * a, 0.0);
                }
            }
            match rhs(t + C[stage] * h, &arg) {
                Ok(v) => k.push(v),
                Err(_) => {
                    // Stage point hit a pole: retry with a smaller step.
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            h *= 0.25;
            *steps += 1;
            continue;
        }

        // 5th-order solution (k7 is the FSAL derivative at t + h).
        let mut y1 = y.clone();
        for (j, kj) in k.iter().enumerate().take(6) {
            let b = A[5][j];
            if b != 0.0 {
                y1 += kj * Complex64::new(h * b, 0.0);
            }
        }
        let k7 = k[6].clone();

        let mut err = CMatrix::zeros(y.nrows(), y.ncols());
        for (j, kj) in k.iter().enumerate() {
            if E[j] != 0.0 {
                err += kj * Complex64::new(h * E[j], 0.0);
            }
        }
        let scale = tol * (1.0 + y.norm().max(y1.norm()));
        let err_ratio = err.norm() / scale;

        // Dense output and midpoint defect.
        let r1 = y.clone();
        let r2 = &y1 - &y;
        let r3 = &k[0] * Complex64::new(h, 0.0) - &r2;
        let r4 = &r2 - &k7 * Complex64::new(h, 0.0) - &r3;
        let mut r5 = CMatrix::zeros(y.nrows(), y.ncols());
        for (j, kj) in k.iter().enumerate() {
            if D[j] != 0.0 {
                r5 += kj * Complex64::new(h * D[j], 0.0);
            }
        }
        let u_mid = &r1
            + &r2 * Complex64::new(0.5, 0.0)
            + &r3 * Complex64::new(0.25, 0.0)
            + &r4 * Complex64::new(0.125, 0.0)
            + &r5 * Complex64::new(0.0625, 0.0);
        let du_mid = (&r2 + &r4 * Complex64::new(0.25, 0.0)) / Complex64::new(h, 0.0);
        let defect = match rhs(t + 0.5 * h, &u_mid) {
            Ok(f_mid) => (du_mid - &f_mid).norm() / (1.0 + f_mid.norm()),
            Err(_) => f64::INFINITY,
        };

        *steps += 1;
        if err_ratio <= 1.0 && defect <= DEFECT_SAFETY * tol {
            t += h;
            y = y1;
            k1 = k7;
            defect_max = defect_max.max(defect);
            checkpoints.push((t, y.clone()));
            let grow = 0.9 * err_ratio.max(1e-10).powf(-0.2);
            h *= grow.clamp(0.2, 5.0);
        } else if err_ratio > 1.0 {
            let shrink = 0.9 * err_ratio.powf(-0.2);
            h *= shrink.clamp(0.1, 0.9);
        } else {
            // Error estimate small but the defect gate failed.
            if *steps % 50 == 0 {
                eprintln!("DBG reject t={t:.6} h={h:.3e} err_ratio={err_ratio:.3e} defect={defect:.3e} gate={:.3e}", DEFECT_SAFETY * tol);
            }
            h *= 0.5;
        }
    }
    Ok((y, defect_max))
}
