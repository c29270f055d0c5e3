//! Seminormality of plane-curve germs at the origin via the ordinary
//! n-fold point criterion: the germ is seminormal exactly when its
//! tangent cone has multiplicity-many distinct tangents, i.e. when the
//! initial form is squarefree.
//!
//! Squarefreeness is decided over the base field by the gcd of the form
//! with its partial derivatives. In characteristic zero this agrees
//! with squarefreeness over the algebraic closure; in characteristic p
//! the degenerate case of identically vanishing partials is reported as
//! indeterminate rather than guessed.

use std::fmt;

use num::Zero;

use crate::closure::CharSpec;
use crate::poly::{poly_gcd, SparsePolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveError {
    NotTwoVariables { got: usize },
    ZeroPolynomial,
    NonzeroConstantTerm,
    NotSquarefree,
    PointNotOnCurve,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::NotTwoVariables { got } => {
                write!(f, "plane curve germs need exactly 2 variables, got {got}")
            }
            CurveError::ZeroPolynomial => write!(f, "the zero polynomial defines no curve"),
            CurveError::NonzeroConstantTerm => {
                write!(f, "the germ must pass through the origin")
            }
            CurveError::NotSquarefree => {
                write!(f, "defining polynomial must be squarefree (reduced curve)")
            }
            CurveError::PointNotOnCurve => write!(f, "the given point is not on the curve"),
        }
    }
}

impl std::error::Error for CurveError {}

/// Three-valued verdict for criteria that can degenerate in positive
/// characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TestVerdict {
    Holds,
    Fails,
    Indeterminate,
}

/// A reduced plane algebraic curve germ at the origin.
#[derive(Clone, Debug)]
pub struct PlaneCurveGerm {
    f: SparsePolynomial,
}

impl PlaneCurveGerm {
    pub fn new(f: SparsePolynomial) -> Result<Self, CurveError> {
        if f.num_vars() != 2 {
            return Err(CurveError::NotTwoVariables { got: f.num_vars() });
        }
        if f.is_zero() {
            return Err(CurveError::ZeroPolynomial);
        }
        if !f.coefficient(&[0, 0]).is_zero() {
            return Err(CurveError::NonzeroConstantTerm);
        }
        if !squarefree(&f) {
            return Err(CurveError::NotSquarefree);
        }
        Ok(PlaneCurveGerm { f })
    }

    pub fn polynomial(&self) -> &SparsePolynomial {
        &self.f
    }

    /// Multiplicity at the origin and the initial form (the terms of
    /// minimal total degree).
    pub fn initial_form(&self) -> (u32, SparsePolynomial) {
        let m = self
            .f
            .support()
            .map(|e| e.iter().sum::<u32>())
            .min()
            .expect("nonzero polynomial");
        let mut form = SparsePolynomial::zero(self.f.field(), self.f.vars());
        for (e, c) in self.f.terms() {
            if e.iter().sum::<u32>() == m {
                form = form.add(&SparsePolynomial::monomial(
                    self.f.field(),
                    self.f.vars(),
                    e.clone(),
                    c.clone(),
                ));
            }
        }
        (m, form)
    }

    /// Is the origin an ordinary point: multiplicity-many distinct
    /// tangents, i.e. squarefree initial form?
    pub fn is_ordinary_point(&self) -> TestVerdict {
        let (_, form) = self.initial_form();
        let fx = form.partial_derivative(0);
        let fy = form.partial_derivative(1);
        if fx.is_zero() && fy.is_zero() {
            // Only possible in characteristic p, where the form is a
            // p-th power of the base field is perfect; the criterion
            // needs the closure, so no boolean is claimed.
            debug_assert!(matches!(self.f.field(), CharSpec::Prime(_)));
            return TestVerdict::Indeterminate;
        }
        if poly_gcd(&poly_gcd(&form, &fx), &fy).is_constant() {
            TestVerdict::Holds
        } else {
            TestVerdict::Fails
        }
    }

    /// Seminormality of the local ring at the origin; by the ordinary
    /// n-fold point criterion this is the ordinariness verdict.
    pub fn is_seminormal_at_origin(&self) -> TestVerdict {
        self.is_ordinary_point()
    }

    /// Translate the germ at `(a, b)` to the origin. Fails when the
    /// point is not on the curve.
    pub fn at_point(f: &SparsePolynomial, a: i64, b: i64) -> Result<Self, CurveError> {
        if f.num_vars() != 2 {
            return Err(CurveError::NotTwoVariables { got: f.num_vars() });
        }
        let field = f.field();
        let vars = f.vars();
        let x = SparsePolynomial::variable(field, vars, 0);
        let y = SparsePolynomial::variable(field, vars, 1);
        let shifted = f.substitute_all(&[
            x.add(&SparsePolynomial::from_int(field, vars, a)),
            y.add(&SparsePolynomial::from_int(field, vars, b)),
        ]);
        if !shifted.coefficient(&[0, 0]).is_zero() {
            return Err(CurveError::PointNotOnCurve);
        }
        PlaneCurveGerm::new(shifted)
    }
}

fn squarefree(f: &SparsePolynomial) -> bool {
    let fx = f.partial_derivative(0);
    let fy = f.partial_derivative(1);
    poly_gcd(&poly_gcd(f, &fx), &fy).is_constant()
}
