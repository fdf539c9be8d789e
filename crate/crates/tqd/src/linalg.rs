//! Dense complex matrices and a Hermitian eigensolver for dimensions up to 8.
//!
//! Everything downstream (Hamiltonians, Gibbs states, entropies) runs on
//! [`ComplexMatrix`], a row-major `Vec<Complex64>` square matrix. The
//! eigensolver is a cyclic complex Jacobi iteration: at dimension ≤ 8 the
//! rotation count is trivial, every step is unconditionally stable, and the
//! output is bit-deterministic, which the golden-file CLI tests rely on.

use num_complex::Complex64;
use thiserror::Error;

/// Hermiticity tolerance required by [`eigh`]: max |A[i][j] − conj(A[j][i])|.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Jacobi convergence threshold on the off-diagonal Frobenius norm.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps; never reached in practice at these dimensions.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Errors from the linear-algebra layer.
#[derive(Debug, Clone, Error)]
pub enum LinalgError {
    /// The input matrix violates the Hermiticity tolerance of [`eigh`].
    #[error("matrix is not Hermitian: max |A - A†| entry = {max_violation:.3e} (tolerance {HERMITIAN_TOL:.0e})")]
    NotHermitian {
        /// Largest observed |A[i][j] − conj(A[j][i])| (infinite for non-finite entries).
        max_violation: f64,
    },
}

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given dimension.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from a row-major entry vector; `data.len()` must be `dim²`.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), dim * dim, "entry count must equal dim²");
        Self { dim, data }
    }

    /// Build from real row-major entries.
    pub fn from_real(dim: usize, data: &[f64]) -> Self {
        Self::from_vec(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Matrix dimension (the matrix is `dim × dim`).
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at row `i`, column `j`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// Overwrite the entry at row `i`, column `j`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.at(j, i).conj());
            }
        }
        out
    }

    /// Entrywise sum; dimensions must agree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::from_vec(self.dim, data)
    }

    /// Entrywise difference; dimensions must agree.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in sub");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::from_vec(self.dim, data)
    }

    /// Multiply every entry by a complex scalar.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_vec(self.dim, self.data.iter().map(|a| a * factor).collect())
    }

    /// Matrix product `self · other`; dimensions must agree.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.at(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.at(i, j) + aik * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Largest entrywise |self − other|; dimensions must agree.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest |A[i][j] − conj(A[j][i])|; infinite if any entry is not finite.
    pub fn hermiticity_violation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.at(i, j);
                if !e.re.is_finite() || !e.im.is_finite() {
                    return f64::INFINITY;
                }
                worst = worst.max((e - self.at(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Whether the matrix is Hermitian within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_violation() <= tol
    }

    /// Exactly Hermitian copy, `(A + A†)/2`. Density matrices are validated
    /// to a looser tolerance (1e-10) than [`eigh`] demands (1e-12), so
    /// entropy-style spectral calls go through this first.
    pub fn symmetrized(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.set(i, i, Complex64::new(self.at(i, i).re, 0.0));
            for j in (i + 1)..self.dim {
                let avg = 0.5 * (self.at(i, j) + self.at(j, i).conj());
                out.set(i, j, avg);
                out.set(j, i, avg.conj());
            }
        }
        out
    }

    /// Frobenius norm of the strictly off-diagonal part.
    fn offdiag_frobenius(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    sum += self.at(i, j).norm_sqr();
                }
            }
        }
        sum.sqrt()
    }
}

/// 2×2 Pauli σˣ.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0])
}

/// 2×2 Pauli σʸ.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
}

/// 2×2 Pauli σᶻ.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0])
}

/// Kronecker product: `out[(i·bd+k),(j·bd+l)] = a[i][j]·b[k][l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ad, bd) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(ad * bd);
    for i in 0..ad {
        for j in 0..ad {
            let aij = a.at(i, j);
            if aij == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..bd {
                for l in 0..bd {
                    out.set(i * bd + k, j * bd + l, aij * b.at(k, l));
                }
            }
        }
    }
    out
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in non-decreasing order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, ordered like `eigenvalues`.
    /// Each column's largest-magnitude component is made real positive, so the
    /// decomposition is deterministic.
    pub eigenvectors: ComplexMatrix,
}

/// Hermitian eigendecomposition via cyclic complex Jacobi rotations.
///
/// Rotations annihilate one off-diagonal pair at a time; each annihilation
/// strictly reduces the off-diagonal Frobenius norm, so the iteration
/// converges unconditionally. Sweeps stop once that norm drops below
/// [`JACOBI_OFFDIAG_TOL`].
pub fn eigh(h: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    check_hermitian(h)?;
    let (eigenvalues, vectors) = jacobi(h, true);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors: vectors.expect("jacobi(_, true) returns vectors"),
    })
}

/// Eigenvalues only (ascending); cheaper than [`eigh`] in inner loops.
pub fn eigvalsh(h: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    check_hermitian(h)?;
    if h.dim() == 2 {
        // Closed form: λ = m ± r with m the diagonal mean.
        let a = h.at(0, 0).re;
        let d = h.at(1, 1).re;
        let m = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + h.at(0, 1).norm_sqr()).sqrt();
        return Ok(vec![m - r, m + r]);
    }
    Ok(jacobi(h, false).0)
}

/// Apply a real scalar function to a Hermitian matrix spectrally:
/// `V · diag(f(λ)) · V†`.
pub fn matfunc_hermitian(
    h: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
) -> Result<ComplexMatrix, LinalgError> {
    let eig = eigh(h)?;
    let n = h.dim();
    let v = &eig.eigenvectors;
    let mut out = ComplexMatrix::zeros(n);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let w = f(lambda);
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = v.at(i, k);
            for j in 0..n {
                let delta = vik * v.at(j, k).conj() * w;
                out.set(i, j, out.at(i, j) + delta);
            }
        }
    }
    Ok(out)
}

fn check_hermitian(h: &ComplexMatrix) -> Result<(), LinalgError> {
    let violation = h.hermiticity_violation();
    if violation > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian {
            max_violation: violation,
        });
    }
    Ok(())
}

/// Core cyclic Jacobi loop. Assumes the Hermiticity check already passed;
/// symmetrizes the working copy so round-off in the input cannot bias sweeps.
fn jacobi(h: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = h.dim();
    let mut a = h.clone();
    for i in 0..n {
        a.set(i, i, Complex64::new(a.at(i, i).re, 0.0));
        for j in (i + 1)..n {
            let avg = 0.5 * (a.at(i, j) + a.at(j, i).conj());
            a.set(i, j, avg);
            a.set(j, i, avg.conj());
        }
    }
    let mut v = if want_vectors {
        Some(ComplexMatrix::identity(n))
    } else {
        None
    };

    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.offdiag_frobenius() < JACOBI_OFFDIAG_TOL {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // Unitary rotation U: U[p][p]=c, U[p][q]=−s·e^{iα},
                // U[q][p]=s·e^{−iα}, U[q][q]=c with α = arg(A[p][q]) and
                // tan(2θ) = 2|A[p][q]| / (A[p][p] − A[q][q]); U†AU zeroes the
                // (p,q) pair.
                let alpha = apq.arg();
                let app = a.at(p, p).re;
                let aqq = a.at(q, q).re;
                let theta = 0.5 * (2.0 * r).atan2(app - aqq);
                let (s, c) = theta.sin_cos();
                let e_pos = Complex64::from_polar(1.0, alpha);
                let e_neg = e_pos.conj();

                // A ← A·U (columns p and q).
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.set(k, p, c * akp + s * e_neg * akq);
                    a.set(k, q, -s * e_pos * akp + c * akq);
                }
                // A ← U†·A (rows p and q).
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.set(p, k, c * apk + s * e_pos * aqk);
                    a.set(q, k, -s * e_neg * apk + c * aqk);
                }
                // The rotation annihilates (p,q) exactly; scrub round-off so
                // the working matrix stays Hermitian bit-for-bit.
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                a.set(p, p, Complex64::new(a.at(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.at(q, q).re, 0.0));

                if let Some(v) = v.as_mut() {
                    // V ← V·U accumulates the eigenbasis.
                    for k in 0..n {
                        let vkp = v.at(k, p);
                        let vkq = v.at(k, q);
                        v.set(k, p, c * vkp + s * e_neg * vkq);
                        v.set(k, q, -s * e_pos * vkp + c * vkq);
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.at(i, i)
            .re
            .partial_cmp(&a.at(j, j).re)
            .expect("Hermitian eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.at(i, i).re).collect();

    let vectors = v.map(|v| {
        let mut sorted = ComplexMatrix::zeros(n);
        for (col, &src) in order.iter().enumerate() {
            // Phase convention: largest-magnitude component real positive
            // (first such component wins on exact ties).
            let mut lead = 0;
            let mut best = -1.0;
            for i in 0..n {
                let mag = v.at(i, src).norm();
                if mag > best {
                    best = mag;
                    lead = i;
                }
            }
            let phase = {
                let z = v.at(lead, src);
                z.conj() / z.norm()
            };
            for i in 0..n {
                sorted.set(i, col, v.at(i, src) * phase);
            }
        }
        sorted
    });

    (eigenvalues, vectors)
}
