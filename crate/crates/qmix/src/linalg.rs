//! Dense complex linear algebra at small fixed dimension.
//!
//! Matrices are stored row-major in a flat `Vec`, sized for registers of a
//! few qubits. The tensor convention everywhere is that the first factor is
//! the most significant subsystem: `a.kron(&b)` puts `a` on the leftmost ket
//! factor, so basis indices read as bit strings left to right (`|10⟩` is
//! index 2).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance used when deciding whether a matrix is Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

fn check_finite(entries: &[Complex64]) -> Result<()> {
    match entries
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(index) => Err(Error::NonFiniteEntry { index }),
        None => Ok(()),
    }
}

/// Column vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyDimension);
        }
        check_finite(&entries)?;
        Ok(Self { entries })
    }

    /// Standard basis vector `|index⟩` of the given dimension.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dimension {dim}"
        );
        let mut entries = vec![Complex64::ZERO; dim];
        entries[index] = Complex64::ONE;
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1);
        Self {
            entries: vec![Complex64::ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, index: usize) -> Complex64 {
        self.entries[index]
    }

    /// Kronecker product; `self` becomes the most significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.entries {
            for &b in &other.entries {
                entries.push(a * b);
            }
        }
        Self { entries }
    }

    /// Inner product `⟨self|other⟩`, conjugate-linear in `self`.
    ///
    /// Panics if the dimensions differ.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Outer product `|self⟩⟨other|`.
    ///
    /// Panics if the dimensions differ.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        assert_eq!(self.dim(), other.dim(), "outer product dimension mismatch");
        ComplexMatrix::from_fn(self.dim(), |r, c| self.entries[r] * other.entries[c].conj())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Entrywise sum. Panics if the dimensions differ.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector sum dimension mismatch");
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Square matrix of complex entries, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::BadEntryCount {
                dim,
                len: entries.len(),
            });
        }
        check_finite(&entries)?;
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let len: usize = rows.iter().map(Vec::len).sum();
        if rows.iter().any(|row| row.len() != dim) {
            return Err(Error::BadEntryCount { dim, len });
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from an entry function.
    ///
    /// Panics on non-finite values; meant for construction from inputs that
    /// were already validated.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim >= 1);
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let z = f(r, c);
                assert!(
                    z.re.is_finite() && z.im.is_finite(),
                    "non-finite entry at ({r}, {c})"
                );
                entries.push(z);
            }
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Complex64::ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| {
            if r == c {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let dim = self.dim;
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                let mut sum = Complex64::ZERO;
                for k in 0..dim {
                    sum += self.get(r, k) * other.get(k, c);
                }
                entries.push(sum);
            }
        }
        Ok(Self { dim, entries })
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product; `self` becomes the most significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let db = other.dim;
        Self::from_fn(self.dim * db, |r, c| {
            self.get(r / db, c / db) * other.get(r % db, c % db)
        })
    }

    /// Entrywise sum. Panics if the dimensions differ.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix sum dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Entrywise difference. Panics if the dimensions differ.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix difference dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Matrix-vector product. Panics if the dimensions differ.
    pub fn mul_vec(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(self.dim, v.dim(), "matrix-vector dimension mismatch");
        let entries = (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.get(r, c) * v.get(c)).sum())
            .collect();
        ComplexVector { entries }
    }

    /// Traces out the subsystems listed in `traced`.
    ///
    /// `subsystem_dims` factors the matrix dimension with the most
    /// significant factor first; `traced` holds positions into that list
    /// (duplicates are tolerated and treated as a set). The result acts on
    /// the remaining subsystems in their original order.
    pub fn partial_trace(&self, subsystem_dims: &[usize], traced: &[usize]) -> Result<Self> {
        let product: usize = subsystem_dims.iter().product();
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) || product != self.dim {
            return Err(Error::BadFactorization {
                dim: self.dim,
                dims_product: product,
            });
        }
        let count = subsystem_dims.len();
        let mut is_traced = vec![false; count];
        for &index in traced {
            if index >= count {
                return Err(Error::BadSubsystemIndex { index, count });
            }
            is_traced[index] = true;
        }
        let traced_count = is_traced.iter().filter(|&&t| t).count();
        if traced_count == 0 || traced_count == count {
            return Err(Error::BadTraceSubset);
        }

        // Mixed-radix strides, most significant subsystem first.
        let mut strides = vec![1usize; count];
        for i in (0..count - 1).rev() {
            strides[i] = strides[i + 1] * subsystem_dims[i + 1];
        }
        let kept: Vec<usize> = (0..count).filter(|&i| !is_traced[i]).collect();
        let traced_positions: Vec<usize> = (0..count).filter(|&i| is_traced[i]).collect();
        let kept_dim: usize = kept.iter().map(|&i| subsystem_dims[i]).product();
        let traced_dim: usize = traced_positions
            .iter()
            .map(|&i| subsystem_dims[i])
            .product();

        // Digits of `index` over the subsystems at `positions`, MSB first.
        let decompose = |mut index: usize, positions: &[usize]| -> Vec<usize> {
            let mut digits = vec![0usize; positions.len()];
            for (slot, &pos) in positions.iter().enumerate().rev() {
                digits[slot] = index % subsystem_dims[pos];
                index /= subsystem_dims[pos];
            }
            digits
        };
        let recompose = |digits: &[usize], positions: &[usize]| -> usize {
            digits
                .iter()
                .zip(positions)
                .map(|(&digit, &pos)| digit * strides[pos])
                .sum()
        };

        let mut entries = Vec::with_capacity(kept_dim * kept_dim);
        for kr in 0..kept_dim {
            let row_base = recompose(&decompose(kr, &kept), &kept);
            for kc in 0..kept_dim {
                let col_base = recompose(&decompose(kc, &kept), &kept);
                let mut sum = Complex64::ZERO;
                for t in 0..traced_dim {
                    let offset = recompose(&decompose(t, &traced_positions), &traced_positions);
                    sum += self.get(row_base + offset, col_base + offset);
                }
                entries.push(sum);
            }
        }
        Ok(Self {
            dim: kept_dim,
            entries,
        })
    }

    /// Largest entrywise deviation from the conjugate transpose.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut max = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                max = max.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        max
    }

    /// Largest entrywise deviation of `self† self` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = self.dagger().matmul(self).expect("same dimension");
        gram.max_abs_diff(&Self::identity(self.dim))
    }

    /// Largest entrywise absolute difference. Panics if the dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "comparison dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn to_nalgebra(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.dim, self.dim, |r, c| self.get(r, c))
    }

    fn symmetrized(&self) -> Self {
        self.add(&self.dagger()).scale(Complex64::new(0.5, 0.0))
    }

    /// Eigenvalues of a Hermitian matrix, sorted descending.
    ///
    /// The input is checked against [`HERMITICITY_TOL`] and symmetrized
    /// before the solve so the solver always sees an exactly Hermitian
    /// matrix. Eigenvalues of a Hermitian matrix are real.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let mut eigenvalues: Vec<f64> = self
            .symmetrized()
            .to_nalgebra()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Ok(eigenvalues)
    }

    /// Eigenvalues (descending) and matching orthonormal eigenvectors of a
    /// Hermitian matrix.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, Vec<ComplexVector>)> {
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let eigen = nalgebra::linalg::SymmetricEigen::new(self.symmetrized().to_nalgebra());
        let mut order: Vec<usize> = (0..self.dim).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
        let values = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
        let vectors = order
            .iter()
            .map(|&i| ComplexVector {
                entries: eigen.eigenvectors.column(i).iter().copied().collect(),
            })
            .collect();
        Ok((values, vectors))
    }
}
