//! Rational polyhedra of the form `conv(points) + cone(rays)` with exact
//! facet and face-lattice computation.
//!
//! Newton polyhedra of monomial ideals use the nonnegative orthant as
//! recession cone; positive hulls of monoid generators use the generators
//! themselves as rays. Facets are found by an exact dual-description
//! sweep over candidate normals; the supported ambient dimension is
//! small (every facet needs `dim - 1` independent tight directions, and
//! candidates are drawn from generator differences and rays).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::rational::Rational64;
use num::Zero;

use crate::lattice::{
    hermite_basis, integer_kernel, rank, saturated_span, unit_vector, ExponentVector,
    GeometryError, IntegerLattice,
};

/// One inequality `<normal, x> >= offset` with primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn evaluate(&self, v: &[i64]) -> i64 {
        self.normal.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    fn evaluate_rat(&self, v: &[Rational64]) -> Rational64 {
        self.normal
            .iter()
            .zip(v)
            .map(|(a, b)| Rational64::from_integer(*a) * b)
            .fold(Rational64::zero(), |acc, t| acc + t)
    }
}

/// `conv(points) + cone(rays)`, full-dimensional in its ambient space,
/// with a complete irredundant facet list in lexicographic normal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolyhedron {
    dim: usize,
    points: Vec<Vec<i64>>,
    rays: Vec<Vec<i64>>,
    facets: Vec<Facet>,
}

/// A nonempty face of a polyhedron.
///
/// Identity is the canonical active facet set; the sample point lies in
/// the relative interior and satisfies exactly the active facets with
/// equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Face {
    active: BTreeSet<usize>,
    dim: usize,
    sample: Vec<Rational64>,
    span_lattice: IntegerLattice,
    points: Vec<Vec<i64>>,
    rays: Vec<Vec<i64>>,
}

impl Face {
    pub fn active_facets(&self) -> &BTreeSet<usize> {
        &self.active
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample(&self) -> &[Rational64] {
        &self.sample
    }

    /// Saturated lattice of integer directions of the affine span.
    pub fn span_lattice(&self) -> &IntegerLattice {
        &self.span_lattice
    }

    /// Hull points of the parent polyhedron lying on this face.
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    /// Primitive recession rays of this face.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Face{{dim: {}, active: {:?}, points: {:?}, rays: {:?}}}",
            self.dim, self.active, self.points, self.rays
        )
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| num::integer::gcd(acc, x.abs()));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    v
}

fn sign_canonical(mut v: Vec<i64>) -> Vec<i64> {
    if let Some(&first) = v.iter().find(|&&x| x != 0) {
        if first < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
    v
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

impl RationalPolyhedron {
    /// Newton polyhedron: convex hull of the generators plus the
    /// nonnegative orthant.
    pub fn newton(generators: &[ExponentVector]) -> Result<Self, GeometryError> {
        if generators.is_empty() {
            return Err(GeometryError::EmptyGenerators);
        }
        let dim = generators[0].dim();
        for g in generators {
            if g.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
        }
        let mut points: Vec<Vec<i64>> = generators.iter().map(|g| g.coords().to_vec()).collect();
        points.sort();
        points.dedup();
        let rays: Vec<Vec<i64>> = (0..dim).map(|i| unit_vector(dim, i)).collect();
        Self::from_points_and_rays(dim, points, rays)
    }

    /// Positive hull `pos(rays)` of a full-dimensional set of nonzero
    /// ray generators, as the polyhedron `conv({0}) + cone(rays)`.
    pub fn positive_hull(dim: usize, ray_gens: &[Vec<i64>]) -> Result<Self, GeometryError> {
        let mut rays: Vec<Vec<i64>> = ray_gens
            .iter()
            .filter(|r| r.iter().any(|&x| x != 0))
            .cloned()
            .map(primitive)
            .collect();
        rays.sort();
        rays.dedup();
        if rays.is_empty() {
            return Err(GeometryError::EmptyGenerators);
        }
        Self::from_points_and_rays(dim, vec![vec![0; dim]], rays)
    }

    fn from_points_and_rays(
        dim: usize,
        points: Vec<Vec<i64>>,
        rays: Vec<Vec<i64>>,
    ) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::NotFullDimensional);
        }
        let facets = compute_facets(dim, &points, &rays)?;
        Ok(RationalPolyhedron {
            dim,
            points,
            rays,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn contains_int(&self, v: &[i64]) -> bool {
        self.facets.iter().all(|f| f.evaluate(v) >= f.offset)
    }

    /// Indices of facets satisfied with equality; `None` if `v` is
    /// outside the polyhedron.
    pub fn active_set_int(&self, v: &[i64]) -> Option<BTreeSet<usize>> {
        let mut active = BTreeSet::new();
        for (i, f) in self.facets.iter().enumerate() {
            let val = f.evaluate(v);
            if val < f.offset {
                return None;
            }
            if val == f.offset {
                active.insert(i);
            }
        }
        Some(active)
    }

    /// All nonempty faces, the polyhedron itself included, ordered by
    /// decreasing dimension then active set.
    pub fn enumerate_faces(&self) -> Vec<Face> {
        let nf = self.facets.len();
        assert!(nf <= 24, "facet count beyond supported desk scale");
        let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
        let mut faces = Vec::new();
        for mask in 0u32..(1u32 << nf) {
            let tight_points: Vec<usize> = (0..self.points.len())
                .filter(|&pi| {
                    (0..nf).all(|fi| {
                        mask & (1 << fi) == 0
                            || self.facets[fi].evaluate(&self.points[pi]) == self.facets[fi].offset
                    })
                })
                .collect();
            if tight_points.is_empty() {
                continue;
            }
            let tight_rays: Vec<usize> = (0..self.rays.len())
                .filter(|&ri| {
                    (0..nf)
                        .all(|fi| mask & (1 << fi) == 0 || self.facets[fi].evaluate(&self.rays[ri]) == 0)
                })
                .collect();
            if !seen.insert((tight_points.clone(), tight_rays.clone())) {
                continue;
            }
            faces.push(self.build_face(&tight_points, &tight_rays));
        }
        faces.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.active.cmp(&b.active)));
        faces
    }

    fn build_face(&self, tight_points: &[usize], tight_rays: &[usize]) -> Face {
        let points: Vec<Vec<i64>> = tight_points.iter().map(|&i| self.points[i].clone()).collect();
        let rays: Vec<Vec<i64>> = tight_rays.iter().map(|&i| self.rays[i].clone()).collect();
        // Canonical active set: facets tight on every point and ray of the face.
        let active: BTreeSet<usize> = (0..self.facets.len())
            .filter(|&fi| {
                points
                    .iter()
                    .all(|p| self.facets[fi].evaluate(p) == self.facets[fi].offset)
                    && rays.iter().all(|r| self.facets[fi].evaluate(r) == 0)
            })
            .collect();
        let mut dirs: Vec<Vec<i64>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
            .collect();
        dirs.extend(rays.iter().cloned());
        let dim = rank(&dirs, self.dim);
        let span_lattice = saturated_span(&dirs, self.dim);
        let count = Rational64::from_integer(points.len() as i64);
        let mut sample: Vec<Rational64> = vec![Rational64::zero(); self.dim];
        for p in &points {
            for (s, &c) in sample.iter_mut().zip(p) {
                *s += Rational64::from_integer(c) / count;
            }
        }
        for r in &rays {
            for (s, &c) in sample.iter_mut().zip(r) {
                *s += Rational64::from_integer(c);
            }
        }
        debug_assert!({
            let sample_active: BTreeSet<usize> = (0..self.facets.len())
                .filter(|&fi| {
                    self.facets[fi].evaluate_rat(&sample)
                        == Rational64::from_integer(self.facets[fi].offset)
                })
                .collect();
            sample_active == active
        });
        Face {
            active,
            dim,
            sample,
            span_lattice,
            points,
            rays,
        }
    }

    /// The unique face whose relative interior contains `v`, or `None`
    /// if `v` lies outside the polyhedron.
    pub fn carrier_face(&self, v: &ExponentVector) -> Option<Face> {
        let faces = self.enumerate_faces();
        self.carrier_index(&faces, v.coords()).map(|i| faces[i].clone())
    }

    /// Index into `faces` (as returned by `enumerate_faces`) of the
    /// carrier face of `v`.
    pub fn carrier_index(&self, faces: &[Face], v: &[i64]) -> Option<usize> {
        let active = self.active_set_int(v)?;
        let idx = faces
            .iter()
            .position(|f| f.active == active)
            .expect("face lattice is complete");
        Some(idx)
    }

    /// Does `v` lie on the (closed) face?
    pub fn face_contains_int(&self, face: &Face, v: &[i64]) -> bool {
        match self.active_set_int(v) {
            Some(active) => face.active.is_subset(&active),
            None => false,
        }
    }

    /// Does `v` lie in the relative interior of the face?
    pub fn relint_contains_int(&self, face: &Face, v: &[i64]) -> bool {
        self.active_set_int(v).is_some_and(|active| active == face.active)
    }
}

fn compute_facets(
    dim: usize,
    points: &[Vec<i64>],
    rays: &[Vec<i64>],
) -> Result<Vec<Facet>, GeometryError> {
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d: Vec<i64> = points[i].iter().zip(&points[j]).map(|(a, b)| a - b).collect();
            if d.iter().any(|&x| x != 0) {
                dirs.push(sign_canonical(primitive(d)));
            }
        }
    }
    for r in rays {
        dirs.push(sign_canonical(primitive(r.clone())));
    }
    dirs.sort();
    dirs.dedup();
    if rank(&dirs, dim) != dim {
        return Err(GeometryError::NotFullDimensional);
    }

    let mut normals: BTreeSet<Vec<i64>> = BTreeSet::new();
    for subset in subsets_of_size(dirs.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| dirs[i].clone()).collect();
        let kernel = integer_kernel(&rows, dim);
        if kernel.len() != 1 {
            continue;
        }
        let normal = kernel.into_iter().next().unwrap();
        for cand in [normal.clone(), normal.iter().map(|&x| -x).collect()] {
            if rays.iter().all(|r| dot(&cand, r) >= 0) {
                normals.insert(cand);
            }
        }
    }

    let mut facets = Vec::new();
    for normal in normals {
        let offset = points.iter().map(|p| dot(&normal, p)).min().unwrap();
        let tight_points: Vec<&Vec<i64>> =
            points.iter().filter(|p| dot(&normal, p) == offset).collect();
        let mut tight_dirs: Vec<Vec<i64>> = tight_points[1..]
            .iter()
            .map(|p| p.iter().zip(tight_points[0]).map(|(a, b)| a - b).collect())
            .collect();
        tight_dirs.extend(rays.iter().filter(|r| dot(&normal, r) == 0).cloned());
        if rank(&tight_dirs, dim) == dim - 1 {
            facets.push(Facet { normal, offset });
        }
    }
    facets.sort();
    Ok(facets)
}

/// Facet description of the Newton polyhedron of a generator set.
pub fn facet_description(generators: &[ExponentVector]) -> Result<RationalPolyhedron, GeometryError> {
    RationalPolyhedron::newton(generators)
}

/// The lattice generated by a set of points (not differences).
pub fn lattice_of_points(points: &[Vec<i64>], dim: usize) -> Result<IntegerLattice, GeometryError> {
    hermite_basis(points, dim)
}

/// Groups faces by dimension, mainly for reporting.
pub fn faces_by_dim(faces: &[Face]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for f in faces {
        *counts.entry(f.dim()).or_insert(0) += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec()).unwrap()
    }

    fn running_example() -> RationalPolyhedron {
        RationalPolyhedron::newton(&[ev(&[6, 0]), ev(&[2, 4]), ev(&[0, 6])]).unwrap()
    }

    #[test]
    fn facets_of_running_example() {
        let p = running_example();
        assert_eq!(
            p.facets(),
            &[
                Facet { normal: vec![0, 1], offset: 0 },
                Facet { normal: vec![1, 0], offset: 0 },
                Facet { normal: vec![1, 1], offset: 6 },
            ]
        );
    }

    #[test]
    fn facets_of_two_unit_points() {
        let p = RationalPolyhedron::newton(&[ev(&[1, 0]), ev(&[0, 1])]).unwrap();
        assert_eq!(
            p.facets(),
            &[
                Facet { normal: vec![0, 1], offset: 0 },
                Facet { normal: vec![1, 0], offset: 0 },
                Facet { normal: vec![1, 1], offset: 1 },
            ]
        );
    }

    #[test]
    fn facets_of_simplex_3d() {
        let p =
            RationalPolyhedron::newton(&[ev(&[3, 0, 0]), ev(&[0, 3, 0]), ev(&[0, 0, 3])]).unwrap();
        assert_eq!(
            p.facets(),
            &[
                Facet { normal: vec![0, 0, 1], offset: 0 },
                Facet { normal: vec![0, 1, 0], offset: 0 },
                Facet { normal: vec![1, 0, 0], offset: 0 },
                Facet { normal: vec![1, 1, 1], offset: 3 },
            ]
        );
    }

    #[test]
    fn faces_of_running_example() {
        let p = running_example();
        let faces = p.enumerate_faces();
        assert_eq!(faces.len(), 6);
        let dims: Vec<usize> = faces.iter().map(|f| f.dim()).collect();
        assert_eq!(dims, vec![2, 1, 1, 1, 0, 0]);
        // The oblique edge [(0,6),(6,0)] is bounded with no rays.
        let edge = faces
            .iter()
            .find(|f| f.dim() == 1 && f.rays().is_empty())
            .unwrap();
        let mut pts = edge.points().to_vec();
        pts.sort();
        assert_eq!(pts, vec![vec![0, 6], vec![2, 4], vec![6, 0]]);
        // The two coordinate edges recede along their axes.
        let vertical = faces
            .iter()
            .find(|f| f.dim() == 1 && f.rays() == [vec![0, 1]])
            .unwrap();
        assert_eq!(vertical.points(), &[vec![0, 6]]);
    }

    #[test]
    fn faces_of_orthant() {
        let p = RationalPolyhedron::newton(&[ev(&[0, 0])]).unwrap();
        let faces = p.enumerate_faces();
        assert_eq!(faces.len(), 4);
        assert_eq!(faces[0].dim(), 2);
        assert_eq!(faces[0].rays().len(), 2);
        assert!(faces[3].is_vertex());
    }

    #[test]
    fn faces_of_symmetric_edge() {
        let p = RationalPolyhedron::newton(&[ev(&[2, 0]), ev(&[0, 2])]).unwrap();
        let faces = p.enumerate_faces();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().any(|f| {
            f.dim() == 1 && f.rays().is_empty() && f.points().len() == 2
        }));
    }

    #[test]
    fn carrier_faces_of_running_example() {
        let p = running_example();
        let oblique = p.carrier_face(&ev(&[3, 3])).unwrap();
        assert_eq!(oblique.dim(), 1);
        assert!(oblique.rays().is_empty());
        let top = p.carrier_face(&ev(&[4, 3])).unwrap();
        assert_eq!(top.dim(), 2);
        assert!(top.active_facets().is_empty());
        assert!(p.carrier_face(&ev(&[1, 1])).is_none());
    }

    #[test]
    fn carrier_face_of_generators_never_absent() {
        let gens = [ev(&[6, 0]), ev(&[2, 4]), ev(&[0, 6])];
        let p = RationalPolyhedron::newton(&gens).unwrap();
        for g in &gens {
            assert!(p.carrier_face(g).is_some());
        }
    }

    #[test]
    fn top_face_recession_is_full_orthant() {
        let p = running_example();
        let faces = p.enumerate_faces();
        assert_eq!(faces[0].rays(), &[vec![1, 0], vec![0, 1]]);
        for f in &faces {
            for r in f.rays() {
                assert!(r.iter().all(|&x| x >= 0));
            }
        }
    }

    #[test]
    fn facet_irredundancy_witnesses() {
        // Dropping any facet admits an integer point satisfying the rest.
        let p = running_example();
        for skip in 0..p.facets().len() {
            let mut found = false;
            'search: for a in -3i64..12 {
                for b in -3i64..12 {
                    let v = [a, b];
                    let ok_others = p
                        .facets()
                        .iter()
                        .enumerate()
                        .all(|(i, f)| i == skip || f.evaluate(&v) >= f.offset);
                    let violates = p.facets()[skip].evaluate(&v) < p.facets()[skip].offset;
                    if ok_others && violates {
                        found = true;
                        break 'search;
                    }
                }
            }
            assert!(found, "facet {skip} is redundant");
        }
    }

    #[test]
    fn face_partition_of_box_points() {
        let p = running_example();
        let faces = p.enumerate_faces();
        for a in 0..10 {
            for b in 0..10 {
                let v = [a, b];
                if p.contains_int(&v) {
                    let matching = faces
                        .iter()
                        .filter(|f| p.relint_contains_int(f, &v))
                        .count();
                    assert_eq!(matching, 1, "point {v:?}");
                }
            }
        }
    }

    #[test]
    fn face_lattice_of_simplex_3d() {
        let p =
            RationalPolyhedron::newton(&[ev(&[3, 0, 0]), ev(&[0, 3, 0]), ev(&[0, 0, 3])]).unwrap();
        let faces = p.enumerate_faces();
        let count_of_dim = |d: usize| faces.iter().filter(|f| f.dim() == d).count();
        assert_eq!(count_of_dim(3), 1);
        assert_eq!(count_of_dim(2), 4);
        assert_eq!(count_of_dim(1), 6);
        assert_eq!(count_of_dim(0), 3);
        assert_eq!(faces.len(), 14);
        // Carrier of an interior lattice point of the oblique facet.
        let triangle = p.carrier_face(&ev(&[1, 1, 1])).unwrap();
        assert_eq!(triangle.dim(), 2);
        assert_eq!(triangle.points().len(), 3);
        assert!(triangle.rays().is_empty());
    }

    #[test]
    fn one_dimensional_polyhedron() {
        let p = RationalPolyhedron::newton(&[ev(&[1])]).unwrap();
        assert_eq!(p.facets(), &[Facet { normal: vec![1], offset: 1 }]);
        let faces = p.enumerate_faces();
        assert_eq!(faces.len(), 2);
    }

    #[test]
    fn positive_hull_of_narrow_cone() {
        let p = RationalPolyhedron::positive_hull(2, &[vec![1, 1], vec![1, 2]]).unwrap();
        assert_eq!(
            p.facets(),
            &[
                Facet { normal: vec![-1, 1], offset: 0 },
                Facet { normal: vec![2, -1], offset: 0 },
            ]
        );
        assert!(p.contains_int(&[2, 3]));
        assert!(!p.contains_int(&[1, 0]));
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(matches!(
            RationalPolyhedron::newton(&[]),
            Err(GeometryError::EmptyGenerators)
        ));
    }
}
