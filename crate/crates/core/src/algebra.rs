//! Dense complex matrix arithmetic specialised to the matrix Lie algebras
//! `gl_n` and `sl_n`, plus commutant computation.

use crate::{CMatrix, Complex64, Error, Result};
use serde::{Deserialize, Serialize};

/// Relative trace tolerance for membership in `sl_n`.
pub const SL_TRACE_TOL: f64 = 1e-12;

/// Relative singular-value threshold below which a direction counts as part
/// of the commutant kernel. Leaves headroom above transport error.
pub const COMMUTANT_KERNEL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraFamily {
    Gl,
    Sl,
}

/// Which reductive matrix algebra a value lives in: the family and the
/// matrix size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub family: AlgebraFamily,
    pub size: usize,
}

impl AlgebraSpec {
    pub fn gl(size: usize) -> Self {
        AlgebraSpec { family: AlgebraFamily::Gl, size }
    }

    pub fn sl(size: usize) -> Self {
        AlgebraSpec { family: AlgebraFamily::Sl, size }
    }

    /// Checks matrix shape and, for `sl`, tracelessness at [`SL_TRACE_TOL`].
    pub fn check(&self, m: &CMatrix) -> Result<()> {
        if self.size == 0 {
            return Err(Error::Invalid("algebra size must be positive".into()));
        }
        if m.nrows() != self.size || m.ncols() != self.size {
            return Err(Error::Dimension(format!(
                "expected {0}x{0} matrix, got {1}x{2}",
                self.size,
                m.nrows(),
                m.ncols()
            )));
        }
        if self.family == AlgebraFamily::Sl {
            let tr = m.trace();
            let bound = SL_TRACE_TOL * (1.0 + m.norm());
            if tr.norm() > bound {
                return Err(Error::Invalid(format!(
                    "sl_{} element has trace {tr} (allowed {bound:.3e})",
                    self.size
                )));
            }
        }
        Ok(())
    }
}

/// An element of the Lie algebra: an `n x n` complex matrix tagged with the
/// algebra it is constrained to.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjointElement {
    matrix: CMatrix,
    algebra: AlgebraSpec,
}

impl AdjointElement {
    pub fn new(matrix: CMatrix, algebra: AlgebraSpec) -> Result<Self> {
        algebra.check(&matrix)?;
        Ok(AdjointElement { matrix, algebra })
    }

    /// Convenience constructor without an `sl` constraint.
    pub fn gl(matrix: CMatrix) -> Self {
        let algebra = AlgebraSpec::gl(matrix.nrows());
        AdjointElement { matrix, algebra }
    }

    pub fn zero(algebra: AlgebraSpec) -> Self {
        AdjointElement { matrix: CMatrix::zeros(algebra.size, algebra.size), algebra }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn size(&self) -> usize {
        self.algebra.size
    }

    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }
}

/// An element of the structure group: an invertible complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: CMatrix,
}

impl GroupElement {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::Dimension(format!(
                "group element must be square and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.clone().try_inverse().is_none() {
            return Err(Error::Singular("group element is not invertible".into()));
        }
        Ok(GroupElement { matrix })
    }

    pub fn identity(size: usize) -> Self {
        GroupElement { matrix: CMatrix::identity(size, size) }
    }

    /// Wraps a matrix that is invertible by construction (e.g. a transport
    /// result); skips the solve-based invertibility probe.
    pub(crate) fn from_invertible(matrix: CMatrix) -> Self {
        GroupElement { matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn det(&self) -> Complex64 {
        self.matrix.determinant()
    }
}

/// `[X, Y] = XY − YX`. Always traceless, so the result is tagged `sl`.
pub fn commutator(x: &AdjointElement, y: &AdjointElement) -> Result<AdjointElement> {
    if x.size() != y.size() {
        return Err(Error::Dimension(format!(
            "commutator of {}x{0} with {}x{1}",
            x.size(),
            y.size()
        )));
    }
    let m = commutator_raw(x.matrix(), y.matrix());
    Ok(AdjointElement { matrix: m, algebra: AlgebraSpec::sl(x.size()) })
}

pub(crate) fn commutator_raw(x: &CMatrix, y: &CMatrix) -> CMatrix {
    x * y - y * x
}

/// `Ad_g E = g E g⁻¹`, computed by an LU solve against `g` from the right.
pub fn adjoint_action(g: &GroupElement, e: &AdjointElement) -> Result<AdjointElement> {
    if g.size() != e.size() {
        return Err(Error::Dimension(format!(
            "adjoint action of {}x{0} on {}x{1}",
            g.size(),
            e.size()
        )));
    }
    let m = adjoint_action_raw(g.matrix(), e.matrix())?;
    Ok(AdjointElement { matrix: m, algebra: e.algebra() })
}

pub(crate) fn adjoint_action_raw(g: &CMatrix, e: &CMatrix) -> Result<CMatrix> {
    // g E g⁻¹ as the solution W of W g = g E.
    let lu = g.transpose().lu();
    let rhs = (g * e).transpose();
    match lu.solve(&rhs) {
        Some(w_t) => Ok(w_t.transpose()),
        None => Err(Error::Singular("adjoint action by a singular matrix".into())),
    }
}

/// `exp(scale · A)`.
pub fn matrix_exp(a: &AdjointElement, scale: Complex64) -> Result<GroupElement> {
    let scaled = a.matrix() * scale;
    let norm = scaled.norm();
    if !norm.is_finite() || norm > 500.0 {
        return Err(Error::Invalid(format!(
            "matrix exponential argument has norm {norm:.3e}"
        )));
    }
    Ok(GroupElement { matrix: scaled.exp() })
}

/// Orthonormal basis (Frobenius inner product) of
/// `{E : M_i E − E M_i = 0 for all i}`, computed as the numerical kernel of
/// the stacked commutation maps. An empty list of constraints yields the
/// standard basis of `gl_n`.
pub fn joint_commutant(size: usize, ms: &[GroupElement]) -> Result<Vec<AdjointElement>> {
    if size == 0 {
        return Err(Error::Invalid("matrix size must be positive".into()));
    }
    for m in ms {
        if m.size() != size {
            return Err(Error::Dimension(format!(
                "commutant constraint is {}x{0}, expected {size}x{size}",
                m.size()
            )));
        }
    }
    let dim = size * size;
    if ms.is_empty() {
        let mut basis = Vec::with_capacity(dim);
        for i in 0..size {
            for j in 0..size {
                let mut m = CMatrix::zeros(size, size);
                m[(i, j)] = Complex64::new(1.0, 0.0);
                basis.push(AdjointElement { matrix: m, algebra: AlgebraSpec::gl(size) });
            }
        }
        return Ok(basis);
    }

    // Stack the linear maps E ↦ M_i E − E M_i, column k = image of the k-th
    // basis matrix under every constraint.
    let mut stacked = CMatrix::zeros(ms.len() * dim, dim);
    for (k, (i, j)) in basis_indices(size).enumerate() {
        let mut e = CMatrix::zeros(size, size);
        e[(i, j)] = Complex64::new(1.0, 0.0);
        for (b, m) in ms.iter().enumerate() {
            let c = commutator_raw(m.matrix(), &e);
            for (r, (ci, cj)) in basis_indices(size).enumerate() {
                stacked[(b * dim + r, k)] = c[(ci, cj)];
            }
        }
    }

    let svd = stacked.svd(false, true);
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Singular("SVD of the commutation map failed".into()))?;
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = COMMUTANT_KERNEL_TOL * smax.max(1.0);

    let mut basis = Vec::new();
    for (r, &sv) in svd.singular_values.iter().enumerate() {
        if sv < cutoff {
            let mut m = CMatrix::zeros(size, size);
            for (k, (i, j)) in basis_indices(size).enumerate() {
                m[(i, j)] = v_t[(r, k)].conj();
            }
            basis.push(AdjointElement { matrix: m, algebra: AlgebraSpec::gl(size) });
        }
    }
    Ok(basis)
}

fn basis_indices(size: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..size).flat_map(move |i| (0..size).map(move |j| (i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat2(a: f64, b: f64, c: f64, d: f64) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[cx(a, 0.0), cx(b, 0.0), cx(c, 0.0), cx(d, 0.0)])
    }

    #[test]
    fn commutator_antisymmetry_and_example() {
        let x = AdjointElement::gl(mat2(1.0, 0.0, 0.0, -1.0));
        let zero = commutator(&x, &x).unwrap();
        assert_eq!(zero.norm(), 0.0);

        let y = AdjointElement::gl(mat2(0.0, 1.0, 0.0, 0.0));
        let c = commutator(&x, &y).unwrap();
        assert!((c.matrix() - mat2(0.0, 2.0, 0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn commutator_traceless() {
        let x = AdjointElement::gl(CMatrix::from_row_slice(
            2,
            2,
            &[cx(0.3, 0.1), cx(-1.2, 0.7), cx(0.4, -0.9), cx(2.0, 0.5)],
        ));
        let y = AdjointElement::gl(CMatrix::from_row_slice(
            2,
            2,
            &[cx(1.1, -0.3), cx(0.2, 0.0), cx(-0.5, 1.4), cx(0.8, 0.2)],
        ));
        let c = commutator(&x, &y).unwrap();
        assert!(c.matrix().trace().norm() < 1e-14);
        // result satisfies the sl constraint
        AlgebraSpec::sl(2).check(c.matrix()).unwrap();
    }

    #[test]
    fn adjoint_action_examples() {
        let e = AdjointElement::gl(mat2(0.0, 1.0, 0.0, 0.0));
        let id = GroupElement::identity(2);
        let same = adjoint_action(&id, &e).unwrap();
        assert!((same.matrix() - e.matrix()).norm() < 1e-15);

        let g = GroupElement::new(mat2(2.0, 0.0, 0.0, 0.5)).unwrap();
        let r = adjoint_action(&g, &e).unwrap();
        assert!((r.matrix() - mat2(0.0, 4.0, 0.0, 0.0)).norm() < 1e-12);
        assert!((r.matrix().trace() - e.matrix().trace()).norm() < 1e-14);
    }

    #[test]
    fn matrix_exp_examples() {
        let zero = AdjointElement::gl(CMatrix::zeros(2, 2));
        let e = matrix_exp(&zero, cx(1.0, 0.0)).unwrap();
        assert!((e.matrix() - CMatrix::identity(2, 2)).norm() < 1e-15);

        // exp(2πi · diag(1/4, −1/4)) = diag(i, −i)
        let a = AdjointElement::gl(mat2(0.25, 0.0, 0.0, -0.25));
        let g = matrix_exp(&a, cx(0.0, 2.0 * std::f64::consts::PI)).unwrap();
        let expect = CMatrix::from_row_slice(
            2,
            2,
            &[cx(0.0, 1.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, -1.0)],
        );
        assert!((g.matrix() - expect).norm() < 1e-12);
    }

    #[test]
    fn matrix_exp_liouville() {
        let a = AdjointElement::gl(CMatrix::from_row_slice(
            2,
            2,
            &[cx(0.3, 0.2), cx(-0.4, 0.1), cx(0.9, -0.6), cx(-1.1, 0.4)],
        ));
        let g = matrix_exp(&a, cx(1.0, 0.0)).unwrap();
        let expect = (a.matrix().trace()).exp();
        assert!((g.det() - expect).norm() < 1e-12);
    }

    #[test]
    fn commutant_identity_gives_everything() {
        let basis = joint_commutant(2, &[GroupElement::identity(2)]).unwrap();
        assert_eq!(basis.len(), 4);
    }

    #[test]
    fn commutant_diagonal_and_pair() {
        let d = GroupElement::new(mat2(1.0, 0.0, 0.0, 2.0)).unwrap();
        let basis = joint_commutant(2, &[d.clone()]).unwrap();
        assert_eq!(basis.len(), 2);
        for e in &basis {
            let c = commutator_raw(d.matrix(), e.matrix());
            assert!(c.norm() < 1e-10);
        }

        let p = GroupElement::new(mat2(0.0, 1.0, 1.0, 0.0)).unwrap();
        let basis = joint_commutant(2, &[d, p]).unwrap();
        assert_eq!(basis.len(), 1);
    }

    #[test]
    fn commutant_empty_input() {
        let basis = joint_commutant(3, &[]).unwrap();
        assert_eq!(basis.len(), 9);
    }

    #[test]
    fn commutant_basis_orthonormal() {
        let d = GroupElement::new(mat2(1.0, 0.0, 0.0, 2.0)).unwrap();
        let basis = joint_commutant(2, &[d]).unwrap();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let ip: Complex64 =
                    a.matrix().iter().zip(b.matrix().iter()).map(|(x, y)| x.conj() * y).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip - cx(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn sl_membership_enforced() {
        let bad = mat2(1.0, 0.0, 0.0, -0.5);
        assert!(AdjointElement::new(bad, AlgebraSpec::sl(2)).is_err());
        let good = mat2(0.5, 0.3, 0.1, -0.5);
        assert!(AdjointElement::new(good, AlgebraSpec::sl(2)).is_ok());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let x = AdjointElement::gl(mat2(1.0, 0.0, 0.0, -1.0));
        let y = AdjointElement::gl(CMatrix::identity(3, 3));
        assert!(commutator(&x, &y).is_err());
    }
}
