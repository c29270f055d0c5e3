//! Weak subintegral closure of monomial ideals.
//!
//! In characteristic zero an integral point of the Newton polyhedron
//! belongs to the closure exactly when it lies in the group generated
//! by the ideal's exponents on its carrier face. In characteristic `p`
//! membership is the Frobenius-power condition, a semi-decision tested
//! up to a configurable exponent. A brute-force high-power oracle is
//! provided for cross-validation.

use std::fmt;

use crate::ideal::{IdealError, MonomialIdeal, UpsetClosure};
use crate::lattice::{hermite_basis, ExponentVector, GeometryError, IntegerLattice};
use crate::polyhedron::{Face, RationalPolyhedron};

/// Field characteristic: zero or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharSpec {
    Zero,
    Prime(u64),
}

impl CharSpec {
    pub fn new(value: u64) -> Result<Self, ClosureError> {
        if value == 0 {
            Ok(CharSpec::Zero)
        } else if is_prime(value) {
            Ok(CharSpec::Prime(value))
        } else {
            Err(ClosureError::NotPrime(value))
        }
    }

    pub fn value(&self) -> u64 {
        match self {
            CharSpec::Zero => 0,
            CharSpec::Prime(p) => *p,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureError {
    NotPrime(u64),
    Ideal(IdealError),
    Geometry(GeometryError),
    NotAFace,
}

impl fmt::Display for ClosureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosureError::NotPrime(n) => write!(f, "{n} is not zero or a prime"),
            ClosureError::Ideal(e) => write!(f, "{e}"),
            ClosureError::Geometry(e) => write!(f, "{e}"),
            ClosureError::NotAFace => write!(f, "face does not belong to the ideal's polyhedron"),
        }
    }
}

impl std::error::Error for ClosureError {}

impl From<IdealError> for ClosureError {
    fn from(e: IdealError) -> Self {
        ClosureError::Ideal(e)
    }
}

impl From<GeometryError> for ClosureError {
    fn from(e: GeometryError) -> Self {
        ClosureError::Geometry(e)
    }
}

/// The face group and its lattice points inside a search box.
#[derive(Clone, Debug)]
pub struct StarFaceResult {
    pub face: Face,
    pub group: IntegerLattice,
    pub members_in_box: Vec<ExponentVector>,
}

fn require_closable(ideal: &MonomialIdeal) -> Result<(), ClosureError> {
    if ideal.is_zero() {
        return Err(ClosureError::Ideal(IdealError::ZeroIdeal));
    }
    if ideal.is_unit() {
        return Err(ClosureError::Ideal(IdealError::UnitIdeal));
    }
    Ok(())
}

/// Group generated by the ideal's exponents on the face (restricted to
/// the box) together with the face's primitive recession rays.
fn face_group(
    ideal: &MonomialIdeal,
    polyhedron: &RationalPolyhedron,
    face: &Face,
    bbox: &[i64],
) -> IntegerLattice {
    let mut group_gens: Vec<Vec<i64>> = Vec::new();
    crate::ideal::for_each_box_point(bbox, |v| {
        if ideal
            .contains(&ExponentVector::new(v.to_vec()).unwrap())
            .unwrap()
            && polyhedron.face_contains_int(face, v)
        {
            group_gens.push(v.to_vec());
        }
    });
    group_gens.extend(face.rays().iter().cloned());
    hermite_basis(&group_gens, ideal.dim()).expect("dimensions agree")
}

/// The set `*F`: lattice points of the relative interior of the face
/// lying in the group generated by the ideal's exponents on it.
pub fn star_face(
    ideal: &MonomialIdeal,
    face: &Face,
    bbox: &ExponentVector,
) -> Result<StarFaceResult, ClosureError> {
    require_closable(ideal)?;
    let polyhedron = ideal.newton()?;
    let faces = polyhedron.enumerate_faces();
    if !faces.iter().any(|f| f == face) {
        return Err(ClosureError::NotAFace);
    }
    let group = face_group(ideal, &polyhedron, face, bbox.coords());
    let mut members = Vec::new();
    crate::ideal::for_each_box_point(bbox.coords(), |v| {
        if polyhedron.relint_contains_int(face, v) && group.contains(v).unwrap() {
            members.push(ExponentVector::new(v.to_vec()).unwrap());
        }
    });
    members.sort();
    Ok(StarFaceResult {
        face: face.clone(),
        group,
        members_in_box: members,
    })
}

/// Weak subintegral closure in characteristic zero, with search data.
pub fn weak_closure_char0_detailed(ideal: &MonomialIdeal) -> Result<UpsetClosure, ClosureError> {
    require_closable(ideal)?;
    let polyhedron = ideal.newton()?;
    let faces = polyhedron.enumerate_faces();
    let bbox = ideal.generator_box();
    let groups: Vec<IntegerLattice> = faces
        .iter()
        .map(|f| face_group(ideal, &polyhedron, f, &bbox))
        .collect();
    let pred = |v: &[i64]| match polyhedron.carrier_index(&faces, v) {
        Some(ci) => groups[ci].contains(v).unwrap(),
        None => false,
    };
    let closure = ideal.upset_closure(&bbox, pred);
    debug_assert!(ideal
        .generators()
        .iter()
        .all(|g| closure.ideal.contains(g).unwrap()));
    Ok(closure)
}

pub fn weak_closure_char0(ideal: &MonomialIdeal) -> Result<MonomialIdeal, ClosureError> {
    Ok(weak_closure_char0_detailed(ideal)?.ideal)
}

/// Weak subintegral closure in characteristic `p` via Frobenius powers
/// up to `p^m_max`. The second component is false when some candidate
/// exponent of the integral closure stayed undecided at the bound.
pub fn weak_closure_charp(
    ideal: &MonomialIdeal,
    p: u64,
    m_max: u32,
) -> Result<(MonomialIdeal, bool), ClosureError> {
    let detail = weak_closure_charp_detailed(ideal, p, m_max)?;
    Ok((detail.closure.ideal, detail.certified))
}

/// Characteristic-p closure with the undecided candidates listed.
#[derive(Clone, Debug)]
pub struct CharPClosure {
    pub closure: UpsetClosure,
    pub certified: bool,
    pub undecided: Vec<ExponentVector>,
}

pub fn weak_closure_charp_detailed(
    ideal: &MonomialIdeal,
    p: u64,
    m_max: u32,
) -> Result<CharPClosure, ClosureError> {
    if !is_prime(p) {
        return Err(ClosureError::NotPrime(p));
    }
    require_closable(ideal)?;
    let integral = ideal.integral_closure_detailed()?;
    let mut accepted: Vec<ExponentVector> = ideal.generators().to_vec();
    let mut rejected: Vec<ExponentVector> = Vec::new();
    for gamma in &integral.added_exponents {
        let mut found = false;
        let mut power = 1u64;
        for _ in 0..=m_max {
            if ideal.power_contains(power, &gamma.scale(power as i64)) {
                found = true;
                break;
            }
            match power.checked_mul(p) {
                Some(next) if next <= 1_000_000 => power = next,
                _ => break,
            }
        }
        if found {
            accepted.push(gamma.clone());
        } else {
            rejected.push(gamma.clone());
        }
    }
    let result = MonomialIdeal::new(ideal.dim(), accepted)?;
    let undecided: Vec<ExponentVector> = rejected
        .into_iter()
        .filter(|gamma| !result.contains(gamma).unwrap())
        .collect();
    let certified = undecided.is_empty();
    let added_exponents: Vec<ExponentVector> = integral
        .added_exponents
        .iter()
        .filter(|gamma| result.contains(gamma).unwrap())
        .cloned()
        .collect();
    Ok(CharPClosure {
        closure: UpsetClosure {
            ideal: result,
            added_exponents,
            certified: integral.certified,
            search_box: integral.search_box,
        },
        certified,
        undecided,
    })
}

/// Outcome of the brute-force high-power membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    AllPass,
    FailsAt(u64),
}

/// Checks `x^{m * gamma} in I^m` for every `m` in the window; reports
/// the first failure. A semi-decision for the characteristic-zero
/// closure ("for all sufficiently large m" has no effective bound).
pub fn wsi_membership_oracle_char0(
    ideal: &MonomialIdeal,
    gamma: &ExponentVector,
    m_lo: u64,
    m_hi: u64,
) -> Result<OracleOutcome, ClosureError> {
    assert!(m_lo >= 1 && m_lo <= m_hi, "invalid oracle window");
    require_closable(ideal)?;
    for m in m_lo..=m_hi {
        if !ideal.power_contains(m, &gamma.scale(m as i64)) {
            return Ok(OracleOutcome::FailsAt(m));
        }
    }
    Ok(OracleOutcome::AllPass)
}
