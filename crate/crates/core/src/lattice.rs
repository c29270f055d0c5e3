//! Integer lattice primitives: exponent vectors, Hermite normal form,
//! sublattice membership, kernels and saturation.
//!
//! All arithmetic is exact over `i64`; the intended scale is small
//! (desk-size exponents and dimensions).

use std::fmt;

/// Errors raised by the lattice and polyhedron layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometryError {
    DimensionMismatch { expected: usize, got: usize },
    NegativeCoordinate { value: i64 },
    EmptyGenerators,
    NotAFace,
    NotFullDimensional,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            GeometryError::NegativeCoordinate { value } => {
                write!(f, "exponent vectors must be nonnegative, got {value}")
            }
            GeometryError::EmptyGenerators => write!(f, "generator list must be nonempty"),
            GeometryError::NotAFace => write!(f, "face does not belong to this polyhedron"),
            GeometryError::NotFullDimensional => {
                write!(f, "polyhedron is not full-dimensional in its ambient space")
            }
        }
    }
}

impl std::error::Error for GeometryError {}

/// A point of the nonnegative integer lattice; the exponent of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Result<Self, GeometryError> {
        if let Some(&value) = coords.iter().find(|&&c| c < 0) {
            return Err(GeometryError::NegativeCoordinate { value });
        }
        Ok(ExponentVector(coords))
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> ExponentVector {
        debug_assert!(k >= 0);
        ExponentVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Componentwise truncated difference `max(self - other, 0)`.
    pub fn saturating_sub(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a - b).max(0))
                .collect(),
        )
    }

    /// Componentwise maximum (exponent of the lcm of two monomials).
    pub fn join(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A sublattice of `Z^n`, stored as a canonical row-style Hermite basis.
///
/// Identical sublattices always produce identical bases: pivots are
/// positive, pivot columns strictly increase, and entries above each
/// pivot are reduced into `[0, pivot)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
}

impl IntegerLattice {
    pub fn zero(dim: usize) -> Self {
        IntegerLattice { dim, basis: vec![] }
    }

    pub fn full(dim: usize) -> Self {
        IntegerLattice {
            dim,
            basis: (0..dim).map(|i| unit_vector(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Membership of `v` as an integer combination of the basis rows.
    pub fn contains(&self, v: &[i64]) -> Result<bool, GeometryError> {
        if v.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(self.coordinates(v).is_some())
    }

    /// The unique integer coordinates of `v` in the Hermite basis, if any.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let pivot_col = row.iter().position(|&x| x != 0).expect("nonzero basis row");
            let pivot = row[pivot_col];
            if rest[pivot_col] % pivot != 0 {
                return None;
            }
            let c = rest[pivot_col] / pivot;
            for (r, b) in rest.iter_mut().zip(row) {
                *r -= c * b;
            }
            coords.push(c);
        }
        if rest.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerLattice{:?}", self.basis)
    }
}

/// Canonical Hermite basis of the lattice generated by `vectors` in `Z^dim`.
pub fn hermite_basis(vectors: &[Vec<i64>], dim: usize) -> Result<IntegerLattice, GeometryError> {
    for v in vectors {
        if v.len() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    Ok(IntegerLattice {
        dim,
        basis: row_hermite(vectors.to_vec(), dim),
    })
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Subtract `q` times row `source` from row `target`.
fn row_reduce(rows: &mut [Vec<i64>], target: usize, source: usize, q: i64) {
    if q == 0 {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form; the result is the canonical basis of
/// the row span over `Z`.
fn row_hermite(mut rows: Vec<Vec<i64>>, width: usize) -> Vec<Vec<i64>> {
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut pivot = 0usize;
    for col in 0..width {
        loop {
            // Row with the smallest nonzero entry in this column.
            let mut best: Option<usize> = None;
            for r in pivot..rows.len() {
                if rows[r][col] != 0
                    && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot, b);
            let mut cleared = true;
            for r in pivot + 1..rows.len() {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[pivot][col]);
                    row_reduce(&mut rows, r, pivot, q);
                    if rows[r][col] != 0 {
                        cleared = false;
                    }
                }
            }
            if cleared {
                if rows[pivot][col] < 0 {
                    for c in rows[pivot].iter_mut() {
                        *c = -*c;
                    }
                }
                for r in 0..pivot {
                    let q = rows[r][col].div_euclid(rows[pivot][col]);
                    row_reduce(&mut rows, r, pivot, q);
                }
                pivot += 1;
                break;
            }
        }
        if pivot == rows.len() {
            break;
        }
    }
    rows.truncate(pivot);
    rows
}

/// Rank of the span of `rows` (equal over `Q` and `Z`).
pub fn rank(rows: &[Vec<i64>], width: usize) -> usize {
    row_hermite(rows.to_vec(), width).len()
}

/// Canonical basis of `{ v in Z^dim : <row, v> = 0 for every row }`.
///
/// Kernels of integer matrices are saturated, so basis vectors of a
/// one-dimensional kernel are automatically primitive.
pub fn integer_kernel(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let m = rows.len();
    let augmented: Vec<Vec<i64>> = (0..dim)
        .map(|j| {
            let mut v = Vec::with_capacity(m + dim);
            v.extend(rows.iter().map(|r| r[j]));
            v.extend((0..dim).map(|k| i64::from(k == j)));
            v
        })
        .collect();
    let reduced = row_hermite(augmented, m + dim);
    let kernel: Vec<Vec<i64>> = reduced
        .into_iter()
        .filter(|r| r[..m].iter().all(|&x| x == 0))
        .map(|r| r[m..].to_vec())
        .collect();
    row_hermite(kernel, dim)
}

/// The saturation of the span of `dirs`: all integer points of the
/// rational span. Computed as a double kernel.
pub fn saturated_span(dirs: &[Vec<i64>], dim: usize) -> IntegerLattice {
    let orthogonal = integer_kernel(dirs, dim);
    IntegerLattice {
        dim,
        basis: integer_kernel(&orthogonal, dim),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn hermite_already_canonical() {
        let l = hermite_basis(&[vec![2, 0], vec![0, 2]], 2).unwrap();
        assert_eq!(l.basis(), &[vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn hermite_of_edge_generators() {
        // (6,0), (2,4), (0,6), (1,-1) generate the index-6 sublattice of
        // Z^2 of points with coordinate sum divisible by 6.
        let l = hermite_basis(&[vec![6, 0], vec![2, 4], vec![0, 6], vec![1, -1]], 2).unwrap();
        assert_eq!(l.basis(), &[vec![1, 5], vec![0, 6]]);
        assert!(l.contains(&[1, -1]).unwrap());
        assert!(l.contains(&[6, 0]).unwrap());
        assert!(l.contains(&[2, 4]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
    }

    #[test]
    fn hermite_empty_is_zero_lattice() {
        let l = hermite_basis(&[], 3).unwrap();
        assert!(l.is_zero());
        assert_eq!(l.rank(), 0);
        assert!(l.contains(&[0, 0, 0]).unwrap());
        assert!(!l.contains(&[1, 0, 0]).unwrap());
    }

    #[test]
    fn hermite_dimension_mismatch() {
        assert!(matches!(
            hermite_basis(&[vec![1, 2, 3]], 2),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn membership_parity() {
        let l = hermite_basis(&[vec![2, 0], vec![0, 2]], 2).unwrap();
        assert!(!l.contains(&[1, 1]).unwrap());
        assert!(l.contains(&[4, -2]).unwrap());
    }

    #[test]
    fn membership_edge_points() {
        let l = hermite_basis(&[vec![0, 6], vec![6, 0], vec![2, 4]], 2).unwrap();
        assert!(l.contains(&[2, 4]).unwrap());
        assert!(l.contains(&[4, 2]).unwrap());
        assert!(!l.contains(&[3, 3]).unwrap());
    }

    #[test]
    fn membership_full_lattice() {
        let l = IntegerLattice::full(2);
        assert!(l.contains(&[1, 5]).unwrap());
    }

    #[test]
    fn kernel_of_single_row() {
        let k = integer_kernel(&[vec![1, 1]], 2);
        assert_eq!(k, vec![vec![1, -1]]);
    }

    #[test]
    fn kernel_of_empty_is_full() {
        let k = integer_kernel(&[], 2);
        assert_eq!(k, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn saturation_of_non_primitive_direction() {
        // (2,-2) spans the same line as (1,-1); saturation recovers it.
        let s = saturated_span(&[vec![2, -2]], 2);
        assert_eq!(s.basis(), &[vec![1, -1]]);
    }

    #[test]
    fn exponent_vector_rejects_negative() {
        assert!(ExponentVector::new(vec![1, -1]).is_err());
        assert_eq!(ev(&[3, 4]).coordinate_sum(), 7);
        assert!(ev(&[3, 4]).dominates(&ev(&[3, 3])));
        assert!(!ev(&[3, 4]).dominates(&ev(&[4, 3])));
    }
}
