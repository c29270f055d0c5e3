//! Monomial ideals: membership, powers, order function, lattice
//! operations, integral closure and the Ratliff-Rush approximation.
//!
//! An ideal is stored by its minimal generators (an antichain under
//! componentwise order, sorted lexicographically), so equal ideals have
//! equal representations. The exponent set is queried, never
//! materialized.

use std::fmt;

use crate::lattice::{ExponentVector, GeometryError};
use crate::polyhedron::RationalPolyhedron;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealError {
    DimensionMismatch { expected: usize, got: usize },
    ZeroIdeal,
    UnitIdeal,
    Geometry(GeometryError),
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            IdealError::ZeroIdeal => write!(f, "operation requires a nonzero ideal"),
            IdealError::UnitIdeal => write!(f, "operation requires a proper ideal"),
            IdealError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IdealError {}

impl From<GeometryError> for IdealError {
    fn from(e: GeometryError) -> Self {
        IdealError::Geometry(e)
    }
}

/// Keep only the minimal elements of a set of exponent vectors.
pub fn minimal_vectors(mut vs: Vec<ExponentVector>) -> Vec<ExponentVector> {
    vs.sort();
    vs.dedup();
    let mut out: Vec<ExponentVector> = Vec::new();
    'outer: for v in &vs {
        for w in &vs {
            if w != v && v.dominates(w) {
                continue 'outer;
            }
        }
        out.push(v.clone());
    }
    out
}

fn minimal_raw(mut vs: Vec<Vec<i64>>, dim: usize) -> Vec<Vec<i64>> {
    vs.sort();
    vs.dedup();
    if dim == 2 {
        // Sweep: among points sorted by (x, y), a point survives iff its
        // y is strictly below every earlier y.
        let mut out = Vec::new();
        let mut best_y = i64::MAX;
        for v in vs {
            if v[1] < best_y {
                best_y = v[1];
                out.push(v);
            }
        }
        return out;
    }
    let dominated = |a: &Vec<i64>, b: &Vec<i64>| a.iter().zip(b).all(|(x, y)| x >= y);
    let mut out: Vec<Vec<i64>> = Vec::new();
    'outer: for i in 0..vs.len() {
        for j in 0..vs.len() {
            if i != j && dominated(&vs[i], &vs[j]) && vs[i] != vs[j] {
                continue 'outer;
            }
        }
        out.push(vs[i].clone());
    }
    out
}

/// A monomial ideal in a fixed number of variables.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<ExponentVector>,
}

/// Value of the order function `ord_I`.
///
/// `Infinite` cannot occur for proper monomial ideals; it is kept for
/// API symmetry with the general definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdValue {
    Finite(u64),
    Infinite,
}

impl OrdValue {
    pub fn finite(self) -> u64 {
        match self {
            OrdValue::Finite(n) => n,
            OrdValue::Infinite => panic!("unexpected infinite order"),
        }
    }
}

/// Binary operations on monomial ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    Colon,
}

/// Result of an up-set closure computation with its search box and
/// certification flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsetClosure {
    pub ideal: MonomialIdeal,
    /// Exponents inside the search box that are in the closure but not
    /// in the original ideal.
    pub added_exponents: Vec<ExponentVector>,
    /// True when no minimal generator touches the search-box boundary,
    /// so the bounded search is a complete answer.
    pub certified: bool,
    pub search_box: Vec<i64>,
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: Vec<ExponentVector>) -> Result<Self, IdealError> {
        for g in &gens {
            if g.dim() != dim {
                return Err(IdealError::DimensionMismatch {
                    expected: dim,
                    got: g.dim(),
                });
            }
        }
        Ok(MonomialIdeal {
            dim,
            gens: minimal_vectors(gens),
        })
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal { dim, gens: vec![] }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal {
            dim,
            gens: vec![ExponentVector::zero(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_zero())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    fn check_dim(&self, v: &ExponentVector) -> Result<(), IdealError> {
        if v.dim() != self.dim {
            return Err(IdealError::DimensionMismatch {
                expected: self.dim,
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// Membership of the monomial `x^gamma` in the ideal.
    pub fn contains(&self, gamma: &ExponentVector) -> Result<bool, IdealError> {
        self.check_dim(gamma)?;
        Ok(self.contains_unchecked(gamma.coords()))
    }

    fn contains_unchecked(&self, gamma: &[i64]) -> bool {
        self.gens
            .iter()
            .any(|g| g.coords().iter().zip(gamma).all(|(a, b)| b >= a))
    }

    /// Membership of `x^gamma` in `I^k`: does `gamma` dominate a sum of
    /// `k` generators (with repetition)?
    ///
    /// Computed by a breadth-first sweep over the dominance frontier of
    /// partial generator sums; any partial sum exceeding `gamma` in some
    /// coordinate is pruned.
    pub fn power_contains(&self, k: u64, gamma: &ExponentVector) -> bool {
        debug_assert_eq!(gamma.dim(), self.dim);
        if k == 0 {
            return true;
        }
        if self.gens.is_empty() {
            return false;
        }
        let mut frontier = vec![vec![0i64; self.dim]];
        for _ in 0..k {
            frontier = self.frontier_step(frontier, gamma.coords());
            if frontier.is_empty() {
                return false;
            }
        }
        true
    }

    fn frontier_step(&self, frontier: Vec<Vec<i64>>, target: &[i64]) -> Vec<Vec<i64>> {
        let mut next = Vec::with_capacity(frontier.len() * self.gens.len());
        for f in &frontier {
            for g in &self.gens {
                let s: Vec<i64> = f.iter().zip(g.coords()).map(|(a, b)| a + b).collect();
                if s.iter().zip(target).all(|(a, b)| a <= b) {
                    next.push(s);
                }
            }
        }
        minimal_raw(next, self.dim)
    }

    /// The order function: the largest `k` with `x^gamma` in `I^k`
    /// (zero when `gamma` is not in the ideal).
    pub fn ord(&self, gamma: &ExponentVector) -> Result<OrdValue, IdealError> {
        self.check_dim(gamma)?;
        if self.is_unit() {
            return Err(IdealError::UnitIdeal);
        }
        if self.gens.is_empty() {
            return Ok(OrdValue::Finite(0));
        }
        let mut frontier = vec![vec![0i64; self.dim]];
        let mut k = 0u64;
        loop {
            frontier = self.frontier_step(frontier, gamma.coords());
            if frontier.is_empty() {
                return Ok(OrdValue::Finite(k));
            }
            k += 1;
            // Every proper generator has positive coordinate sum, so the
            // sweep must terminate within the coordinate sum of gamma.
            debug_assert!(k <= gamma.coordinate_sum() as u64 + 1);
        }
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_same_dim(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.dim, gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_same_dim(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.add(b));
            }
        }
        MonomialIdeal::new(self.dim, gens)
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_same_dim(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.join(b));
            }
        }
        MonomialIdeal::new(self.dim, gens)
    }

    /// The colon ideal `(I : J)`, as the intersection over generators
    /// `g` of `J` of the truncated-difference ideals `(I : x^g)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
        self.check_same_dim(other)?;
        if other.is_zero() {
            return Ok(MonomialIdeal::unit(self.dim));
        }
        let mut result: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let shifted = MonomialIdeal::new(
                self.dim,
                self.gens.iter().map(|h| h.saturating_sub(g)).collect(),
            )?;
            result = Some(match result {
                None => shifted,
                Some(acc) => acc.intersection(&shifted)?,
            });
        }
        Ok(result.unwrap())
    }

    /// Dispatch over the four binary operations.
    pub fn combine(
        op: IdealOp,
        left: &MonomialIdeal,
        right: &MonomialIdeal,
    ) -> Result<MonomialIdeal, IdealError> {
        match op {
            IdealOp::Sum => left.sum(right),
            IdealOp::Product => left.product(right),
            IdealOp::Intersection => left.intersection(right),
            IdealOp::Colon => left.colon(right),
        }
    }

    pub fn power(&self, n: u64) -> MonomialIdeal {
        let mut out = MonomialIdeal::unit(self.dim);
        for _ in 0..n {
            out = out.product(self).expect("same dimension");
        }
        out
    }

    fn check_same_dim(&self, other: &MonomialIdeal) -> Result<(), IdealError> {
        if self.dim != other.dim {
            return Err(IdealError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    /// The Newton polyhedron of the exponent set.
    pub fn newton(&self) -> Result<RationalPolyhedron, IdealError> {
        if self.is_zero() {
            return Err(IdealError::ZeroIdeal);
        }
        Ok(RationalPolyhedron::newton(&self.gens)?)
    }

    /// Componentwise maximum of the generators plus one: the default
    /// candidate region for closure exponents.
    pub fn generator_box(&self) -> Vec<i64> {
        let mut bbox = vec![0i64; self.dim];
        for g in &self.gens {
            for (m, &c) in bbox.iter_mut().zip(g.coords()) {
                *m = (*m).max(c);
            }
        }
        for m in bbox.iter_mut() {
            *m += 1;
        }
        bbox
    }

    /// Integral closure with search box and certification data: the
    /// ideal whose exponent set consists of all lattice points of the
    /// Newton polyhedron.
    pub fn integral_closure_detailed(&self) -> Result<UpsetClosure, IdealError> {
        if self.is_zero() {
            return Err(IdealError::ZeroIdeal);
        }
        let polyhedron = self.newton()?;
        let bbox = facet_search_box(&polyhedron, 0);
        Ok(self.upset_closure(&bbox, |v| polyhedron.contains_int(v)))
    }

    pub fn integral_closure(&self) -> Result<MonomialIdeal, IdealError> {
        Ok(self.integral_closure_detailed()?.ideal)
    }

    /// Minimal generators of an up-set given by a membership predicate,
    /// searched inside `bbox`, together with the exponents added over
    /// this ideal and the boundary certification flag.
    pub(crate) fn upset_closure(
        &self,
        bbox: &[i64],
        pred: impl Fn(&[i64]) -> bool,
    ) -> UpsetClosure {
        let mut members: Vec<Vec<i64>> = Vec::new();
        let mut added: Vec<ExponentVector> = Vec::new();
        for_each_box_point(bbox, |v| {
            if pred(v) {
                members.push(v.to_vec());
                if !self.contains_unchecked(v) {
                    added.push(ExponentVector::new(v.to_vec()).unwrap());
                }
            }
        });
        let min_gens: Vec<ExponentVector> = minimal_raw(members, self.dim)
            .into_iter()
            .map(|v| ExponentVector::new(v).unwrap())
            .collect();
        let certified = min_gens
            .iter()
            .all(|g| g.coords().iter().zip(bbox).all(|(c, b)| c < b));
        added.sort();
        UpsetClosure {
            ideal: MonomialIdeal {
                dim: self.dim,
                gens: min_gens,
            },
            added_exponents: added,
            certified,
            search_box: bbox.to_vec(),
        }
    }

    /// Ratliff-Rush approximation: the union of `(I^{n+1} : I^n)` for
    /// `n <= horizon`, with a stabilization flag comparing the last two
    /// terms of the chain.
    pub fn ratliff_rush(&self, horizon: u64) -> Result<(MonomialIdeal, bool), IdealError> {
        if self.is_zero() {
            return Err(IdealError::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(IdealError::UnitIdeal);
        }
        assert!(horizon >= 1, "horizon must be positive");
        let mut terms = Vec::new();
        let mut power_n = MonomialIdeal::unit(self.dim);
        for _ in 0..=horizon {
            let power_n1 = power_n.product(self)?;
            terms.push(power_n1.colon(&power_n)?);
            power_n = power_n1;
        }
        let stabilized = terms[terms.len() - 1] == terms[terms.len() - 2];
        let mut union = MonomialIdeal::zero(self.dim);
        for t in &terms {
            union = union.sum(t)?;
        }
        Ok((union, stabilized))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal{:?}", self.gens)
    }
}

/// Default search box for an up-set bounded by facet inequalities:
/// per coordinate, one plus the sum over facets of (offset + shift + 1).
pub(crate) fn facet_search_box(polyhedron: &RationalPolyhedron, shift: i64) -> Vec<i64> {
    let total: i64 = polyhedron
        .facets()
        .iter()
        .map(|f| f.offset + shift + 1)
        .sum();
    vec![1 + total.max(1); polyhedron.dim()]
}

/// Visit every lattice point `0 <= v <= bbox` componentwise.
pub(crate) fn for_each_box_point(bbox: &[i64], mut f: impl FnMut(&[i64])) {
    let dim = bbox.len();
    let mut v = vec![0i64; dim];
    loop {
        f(&v);
        let mut i = dim;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < bbox[i] {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
    }
}
