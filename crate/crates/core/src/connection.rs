//! The meromorphic gauge potential `Φ`, stored by its Laurent data, and
//! first-order deformed potentials.

use crate::algebra::{AdjointElement, AlgebraSpec};
use crate::geometry::PunctureSet;
use crate::{CMatrix, Complex64, Error, Result};
use std::fmt;
use std::sync::Arc;

/// Distance below which evaluation counts as "at a pole".
pub const POLE_EVAL_TOL: f64 = 1e-12;

/// One pole of the potential: the position and the Laurent coefficients
/// `A_1, …, A_k`, where `A_k` multiplies `(ζ−p)^{−k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pole {
    pub position: Complex64,
    pub laurent: Vec<AdjointElement>,
}

/// A rational matrix one-form `Φ = Σ_i Σ_k A_{i,k}(ζ−p_i)^{−k} dζ
/// + Σ_j B_j ζ^j dζ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugePotential {
    algebra: AlgebraSpec,
    poles: Vec<Pole>,
    poly_tail: Vec<AdjointElement>,
}

impl GaugePotential {
    pub fn new(
        algebra: AlgebraSpec,
        poles: Vec<(Complex64, Vec<AdjointElement>)>,
        poly_tail: Vec<AdjointElement>,
    ) -> Result<Self> {
        let mut built = Vec::with_capacity(poles.len());
        for (position, laurent) in poles {
            if laurent.is_empty() {
                return Err(Error::Invalid(format!(
                    "pole at {position} has no Laurent coefficients"
                )));
            }
            if laurent.last().unwrap().norm() == 0.0 {
                return Err(Error::Invalid(format!(
                    "top Laurent coefficient at {position} vanishes"
                )));
            }
            for a in &laurent {
                if a.algebra() != algebra {
                    return Err(Error::Invalid(format!(
                        "Laurent coefficient at {position} has a mismatched algebra spec"
                    )));
                }
            }
            built.push(Pole { position, laurent });
        }
        for (i, p) in built.iter().enumerate() {
            for q in built.iter().skip(i + 1) {
                if (p.position - q.position).norm() < 10.0 * POLE_EVAL_TOL {
                    return Err(Error::Invalid(format!(
                        "duplicate pole position {}",
                        p.position
                    )));
                }
            }
        }
        for b in &poly_tail {
            if b.algebra() != algebra {
                return Err(Error::Invalid(
                    "polynomial tail coefficient has a mismatched algebra spec".into(),
                ));
            }
        }
        Ok(GaugePotential { algebra, poles: built, poly_tail })
    }

    /// The zero potential (no poles, no tail).
    pub fn zero(algebra: AlgebraSpec) -> Self {
        GaugePotential { algebra, poles: Vec::new(), poly_tail: Vec::new() }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.size
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn poly_tail(&self) -> &[AdjointElement] {
        &self.poly_tail
    }

    pub fn pole_positions(&self) -> Vec<Complex64> {
        self.poles.iter().map(|p| p.position).collect()
    }

    /// Puncture bookkeeping for the divisor of poles with the default
    /// exclusion radius.
    pub fn punctures(&self) -> Result<PunctureSet> {
        PunctureSet::with_default_radius(self.pole_positions())
    }

    pub fn find_pole(&self, p: Complex64) -> Option<&Pole> {
        self.poles.iter().find(|q| (q.position - p).norm() <= 1e-9)
    }

    /// The coefficient of `dζ` at `z`.
    pub fn eval(&self, z: Complex64) -> Result<CMatrix> {
        let n = self.size();
        let mut acc = CMatrix::zeros(n, n);
        for pole in &self.poles {
            let d = z - pole.position;
            if d.norm() <= POLE_EVAL_TOL {
                return Err(Error::Invalid(format!(
                    "potential evaluated at its pole {}",
                    pole.position
                )));
            }
            let inv = 1.0 / d;
            let mut power = inv;
            for a in &pole.laurent {
                acc += a.matrix() * power;
                power *= inv;
            }
        }
        let mut zpow = Complex64::new(1.0, 0.0);
        for b in &self.poly_tail {
            acc += b.matrix() * zpow;
            zpow *= z;
        }
        Ok(acc)
    }

    /// The declared Laurent coefficient `A_{i,k}` at pole `p`.
    pub fn residue(&self, p: Complex64, order: usize) -> Result<AdjointElement> {
        let pole = self
            .find_pole(p)
            .ok_or_else(|| Error::Invalid(format!("no declared pole at {p}")))?;
        if order == 0 || order > pole.laurent.len() {
            return Err(Error::Invalid(format!(
                "pole at {p} has orders 1..={}, requested {order}",
                pole.laurent.len()
            )));
        }
        Ok(pole.laurent[order - 1].clone())
    }

    /// True iff every pole is simple and the polynomial tail is empty, so
    /// that infinity is at worst a regular singular point.
    pub fn is_fuchsian(&self) -> bool {
        self.poly_tail.is_empty() && self.poles.iter().all(|p| p.laurent.len() == 1)
    }

    /// Sum of the first-order residues.
    pub fn residue_sum(&self) -> CMatrix {
        let n = self.size();
        let mut acc = CMatrix::zeros(n, n);
        for p in &self.poles {
            acc += p.laurent[0].matrix();
        }
        acc
    }
}

/// First-order deformation `Φ + ε·∂Φ` of a base potential, with the
/// deformation direction given by a pointwise-evaluable field.
#[derive(Clone)]
pub struct DeformedPotential {
    pub base: GaugePotential,
    pub direction: Arc<dyn Fn(Complex64) -> Result<CMatrix> + Send + Sync>,
    pub epsilon: f64,
}

impl DeformedPotential {
    pub fn eval(&self, z: Complex64) -> Result<CMatrix> {
        let base = self.base.eval(z)?;
        let dir = (self.direction)(z)?;
        Ok(base + dir * Complex64::new(self.epsilon, 0.0))
    }
}

impl fmt::Debug for DeformedPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeformedPotential")
            .field("base", &self.base)
            .field("epsilon", &self.epsilon)
            .finish_non_exhaustive()
    }
}
