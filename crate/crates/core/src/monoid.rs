//! Affine monoids: membership, the face-group seminormalization test,
//! and monomial-algebra membership contexts.
//!
//! A monoid is stored with its group, the saturated span of its
//! generators, and the face lattice of its positive hull (computed in
//! full-rank coordinates when the generators do not span the ambient
//! space). A point belongs to the seminormalization exactly when it
//! lies in the cone and in the lattice generated by the monoid
//! generators on its carrier face.

use std::collections::HashSet;
use std::fmt;

use crate::closure::CharSpec;
use crate::ideal::for_each_box_point;
use crate::lattice::{
    hermite_basis, saturated_span, ExponentVector, GeometryError, IntegerLattice,
};
use crate::polyhedron::{Face, RationalPolyhedron};
use crate::poly::SparsePolynomial;
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidError {
    DimensionMismatch { expected: usize, got: usize },
    Geometry(GeometryError),
}

impl fmt::Display for MonoidError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            MonoidError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MonoidError {}

impl From<GeometryError> for MonoidError {
    fn from(e: GeometryError) -> Self {
        MonoidError::Geometry(e)
    }
}

/// A finitely generated submonoid of the nonnegative integer lattice.
pub struct AffineMonoid {
    dim: usize,
    gens: Vec<ExponentVector>,
    group: IntegerLattice,
    span: IntegerLattice,
    /// Generators in span-basis coordinates (full rank).
    proj_gens: Vec<Vec<i64>>,
    /// Positive hull of the projected generators; `None` for the zero
    /// monoid.
    cone: Option<RationalPolyhedron>,
    faces: Vec<Face>,
}

impl AffineMonoid {
    pub fn new(dim: usize, generators: Vec<ExponentVector>) -> Result<Self, MonoidError> {
        for g in &generators {
            if g.dim() != dim {
                return Err(MonoidError::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
        }
        let mut gens: Vec<ExponentVector> =
            generators.into_iter().filter(|g| !g.is_zero()).collect();
        gens.sort();
        gens.dedup();
        let raw: Vec<Vec<i64>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        let group = hermite_basis(&raw, dim)?;
        let span = saturated_span(&raw, dim);
        let proj_gens: Vec<Vec<i64>> = raw
            .iter()
            .map(|g| span.coordinates(g).expect("generators lie in their span"))
            .collect();
        let rank = span.rank();
        let cone = if gens.is_empty() {
            None
        } else {
            Some(RationalPolyhedron::positive_hull(rank, &proj_gens)?)
        };
        let faces = cone.as_ref().map_or_else(Vec::new, |c| c.enumerate_faces());
        Ok(AffineMonoid {
            dim,
            gens,
            group,
            span,
            proj_gens,
            cone,
            faces,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    /// The group generated by the monoid inside `Z^dim`.
    pub fn group(&self) -> &IntegerLattice {
        &self.group
    }

    /// Facet description of `pos(generators)` in span coordinates.
    pub fn cone(&self) -> Option<&RationalPolyhedron> {
        self.cone.as_ref()
    }

    fn check_dim(&self, x: &ExponentVector) -> Result<(), MonoidError> {
        if x.dim() != self.dim {
            return Err(MonoidError::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Exact membership: is `x` a nonnegative integer combination of the
    /// generators? Depth-first search over generator counts, pruned by
    /// nonnegativity of the remainder, by its cone membership, and by
    /// the coordinate-sum budget.
    pub fn membership(&self, x: &ExponentVector) -> Result<bool, MonoidError> {
        self.check_dim(x)?;
        if x.is_zero() {
            return Ok(true);
        }
        let Some(cone) = &self.cone else {
            return Ok(false);
        };
        let Some(px) = self.span.coordinates(x.coords()) else {
            return Ok(false);
        };
        if !cone.contains_int(&px) {
            return Ok(false);
        }
        let mut failed: HashSet<(usize, Vec<i64>)> = HashSet::new();
        Ok(self.search(0, x.coords().to_vec(), &mut failed))
    }

    fn search(&self, idx: usize, remaining: Vec<i64>, failed: &mut HashSet<(usize, Vec<i64>)>) -> bool {
        if remaining.iter().all(|&c| c == 0) {
            return true;
        }
        if idx == self.gens.len() {
            return false;
        }
        if failed.contains(&(idx, remaining.clone())) {
            return false;
        }
        if let Some(p) = self.span.coordinates(&remaining) {
            if !self.cone.as_ref().unwrap().contains_int(&p) {
                return false;
            }
        } else {
            return false;
        }
        let g = self.gens[idx].coords();
        let mut current = remaining.clone();
        loop {
            if self.search(idx + 1, current.clone(), failed) {
                return true;
            }
            if current.iter().zip(g).all(|(c, gc)| c >= gc) {
                for (c, gc) in current.iter_mut().zip(g) {
                    *c -= gc;
                }
            } else {
                break;
            }
        }
        failed.insert((idx, remaining));
        false
    }

    /// Membership in the seminormalization: `x` lies in the cone and in
    /// the lattice generated by the monoid generators on its carrier
    /// face.
    pub fn seminormalization_contains(&self, x: &ExponentVector) -> Result<bool, MonoidError> {
        self.check_dim(x)?;
        if x.is_zero() {
            return Ok(true);
        }
        let Some(cone) = &self.cone else {
            return Ok(false);
        };
        let Some(px) = self.span.coordinates(x.coords()) else {
            return Ok(false);
        };
        let Some(face_idx) = cone.carrier_index(&self.faces, &px) else {
            return Ok(false);
        };
        let face = &self.faces[face_idx];
        let on_face: Vec<Vec<i64>> = self
            .proj_gens
            .iter()
            .filter(|g| cone.face_contains_int(face, g))
            .cloned()
            .collect();
        let lattice = hermite_basis(&on_face, cone.dim()).expect("dimensions agree");
        Ok(lattice.contains(&px).expect("dimensions agree"))
    }

    /// Box-bounded seminormality check: witnesses are points of the box
    /// in the seminormalization but not in the monoid.
    pub fn is_seminormal_in_box(
        &self,
        bbox: &ExponentVector,
    ) -> Result<(bool, Vec<ExponentVector>), MonoidError> {
        self.check_dim(bbox)?;
        let mut witnesses = Vec::new();
        let mut error = None;
        for_each_box_point(bbox.coords(), |v| {
            if error.is_some() {
                return;
            }
            let x = ExponentVector::new(v.to_vec()).unwrap();
            match (self.seminormalization_contains(&x), self.membership(&x)) {
                (Ok(true), Ok(false)) => witnesses.push(x),
                (Err(e), _) | (_, Err(e)) => error = Some(e),
                _ => {}
            }
        });
        if let Some(e) = error {
            return Err(e);
        }
        Ok((witnesses.is_empty(), witnesses))
    }
}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMonoid{:?}", self.gens)
    }
}

/// The monoid underlying a monomial algebra: a numerical semigroup in
/// one variable or an affine monoid in several.
pub enum MonoidAlgebra {
    Numerical(NumericalSemigroup),
    Affine(AffineMonoid),
}

impl MonoidAlgebra {
    pub fn num_vars(&self) -> usize {
        match self {
            MonoidAlgebra::Numerical(_) => 1,
            MonoidAlgebra::Affine(m) => m.dim(),
        }
    }

    pub fn contains_exponent(&self, exps: &[u32]) -> Result<bool, MonoidError> {
        match self {
            MonoidAlgebra::Numerical(s) => {
                debug_assert_eq!(exps.len(), 1);
                Ok(s.contains(exps[0] as u64))
            }
            MonoidAlgebra::Affine(m) => {
                let x = ExponentVector::new(exps.iter().map(|&e| e as i64).collect())
                    .expect("exponents are nonnegative");
                m.membership(&x)
            }
        }
    }
}

/// A graded monomial algebra `K[M]`: membership of a polynomial is
/// decided exponent by exponent on its support.
pub struct MonomialAlgebraContext {
    pub char_spec: CharSpec,
    pub monoid: MonoidAlgebra,
    pub vars: Vec<String>,
}

impl MonomialAlgebraContext {
    pub fn numerical(char_spec: CharSpec, semigroup: NumericalSemigroup, var: &str) -> Self {
        MonomialAlgebraContext {
            char_spec,
            monoid: MonoidAlgebra::Numerical(semigroup),
            vars: vec![var.to_string()],
        }
    }

    pub fn affine(char_spec: CharSpec, monoid: AffineMonoid, vars: &[String]) -> Self {
        assert_eq!(monoid.dim(), vars.len());
        MonomialAlgebraContext {
            char_spec,
            monoid: MonoidAlgebra::Affine(monoid),
            vars: vars.to_vec(),
        }
    }

    /// Does every exponent of the support of `f` belong to the monoid?
    pub fn contains_poly(&self, f: &SparsePolynomial) -> Result<bool, MonoidError> {
        if f.num_vars() != self.monoid.num_vars() {
            return Err(MonoidError::DimensionMismatch {
                expected: self.monoid.num_vars(),
                got: f.num_vars(),
            });
        }
        for exps in f.support() {
            if !self.monoid.contains_exponent(exps)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Membership of a polynomial in a graded monomial algebra.
pub fn algebra_contains(
    ctx: &MonomialAlgebraContext,
    f: &SparsePolynomial,
) -> Result<bool, MonoidError> {
    ctx.contains_poly(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec()).unwrap()
    }

    fn monoid(dim: usize, gens: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(dim, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    fn whitney() -> AffineMonoid {
        monoid(2, &[&[1, 0], &[1, 1], &[0, 2]])
    }

    #[test]
    fn membership_examples() {
        let m = whitney();
        assert!(!m.membership(&ev(&[0, 3])).unwrap());
        assert!(m.membership(&ev(&[1, 1])).unwrap());
        assert!(m.membership(&ev(&[2, 1])).unwrap());
        assert!(m.membership(&ev(&[0, 0])).unwrap());
        assert!(m.membership(&ev(&[3, 2])).unwrap());
    }

    #[test]
    fn membership_outside_cone() {
        let m = monoid(2, &[&[1, 1], &[1, 2]]);
        assert!(!m.membership(&ev(&[1, 0])).unwrap());
        assert!(m.membership(&ev(&[2, 3])).unwrap());
        assert!(!m.membership(&ev(&[2, 1])).unwrap());
    }

    #[test]
    fn membership_in_lower_dimensional_monoid() {
        let m = monoid(2, &[&[2, 2], &[3, 3]]);
        assert!(m.membership(&ev(&[5, 5])).unwrap());
        assert!(!m.membership(&ev(&[1, 1])).unwrap());
        assert!(!m.membership(&ev(&[2, 3])).unwrap());
        assert!(m.seminormalization_contains(&ev(&[1, 1])).unwrap());
    }

    #[test]
    fn seminormalization_examples() {
        let m = whitney();
        // The vertical axis face group is generated by (0,2).
        assert!(!m.seminormalization_contains(&ev(&[0, 1])).unwrap());
        let n = monoid(2, &[&[2, 0], &[3, 0], &[0, 1]]);
        assert!(n.seminormalization_contains(&ev(&[1, 0])).unwrap());
        for g in m.generators() {
            assert!(m.seminormalization_contains(g).unwrap());
        }
    }

    #[test]
    fn whitney_monoid_is_seminormal() {
        let m = whitney();
        let (ok, witnesses) = m.is_seminormal_in_box(&ev(&[6, 6])).unwrap();
        assert!(ok);
        assert!(witnesses.is_empty());
    }

    #[test]
    fn control_monoid_is_not_seminormal() {
        let m = monoid(2, &[&[2, 0], &[3, 0], &[0, 1]]);
        let (ok, witnesses) = m.is_seminormal_in_box(&ev(&[6, 6])).unwrap();
        assert!(!ok);
        assert_eq!(witnesses[0], ev(&[1, 0]));
    }

    #[test]
    fn full_lattice_monoid_is_seminormal() {
        let m = monoid(2, &[&[1, 0], &[0, 1]]);
        let (ok, witnesses) = m.is_seminormal_in_box(&ev(&[5, 5])).unwrap();
        assert!(ok);
        assert!(witnesses.is_empty());
    }

    #[test]
    fn algebra_membership_examples() {
        let even = MonomialAlgebraContext::numerical(
            CharSpec::Zero,
            NumericalSemigroup::new(&[2]).unwrap(),
            "x",
        );
        let vars = vec!["x".to_string()];
        let f = parse_polynomial("1 + x^2 + x^6", CharSpec::Zero, &vars).unwrap();
        assert!(algebra_contains(&even, &f).unwrap());
        let g = parse_polynomial("x^3", CharSpec::Zero, &vars).unwrap();
        assert!(!algebra_contains(&even, &g).unwrap());

        let uv = vec!["u".to_string(), "v".to_string()];
        let ctx = MonomialAlgebraContext::affine(CharSpec::Zero, whitney(), &uv);
        let h = parse_polynomial("u + u*v + v^2", CharSpec::Zero, &uv).unwrap();
        assert!(algebra_contains(&ctx, &h).unwrap());
        let k = parse_polynomial("v", CharSpec::Zero, &uv).unwrap();
        assert!(!algebra_contains(&ctx, &k).unwrap());
    }

    #[test]
    fn dimension_mismatch_detected() {
        let m = whitney();
        assert!(m.membership(&ev(&[1, 1, 1])).is_err());
        let even = MonomialAlgebraContext::numerical(
            CharSpec::Zero,
            NumericalSemigroup::new(&[2]).unwrap(),
            "x",
        );
        let uv = vec!["u".to_string(), "v".to_string()];
        let f = parse_polynomial("u", CharSpec::Zero, &uv).unwrap();
        assert!(algebra_contains(&even, &f).is_err());
    }
}
