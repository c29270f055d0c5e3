//! Element-level certificates of weak subintegrality: verification of
//! systems of subintegrality and of the structured equation systems,
//! certificate construction from high powers, the derivative-root
//! criterion, Swan root extraction, and the Schanuel projection matrix.
//!
//! Binomial coefficients are computed over the integers and then mapped
//! into the coefficient field, so their vanishing in characteristic `p`
//! is automatic.

use std::fmt;

use num::bigint::BigInt;
use num::rational::{BigRational, Rational64};
use num::{One, Zero};

use crate::closure::CharSpec;
use crate::ideal::{IdealError, MonomialIdeal};
use crate::lattice::ExponentVector;
use crate::monoid::{MonoidError, MonomialAlgebraContext};
use crate::poly::SparsePolynomial;
use crate::valuation::samuel_value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementError {
    CertificateLength { expected: usize, got: usize },
    FieldMismatch,
    VariableMismatch,
    NotMonomial,
    NonMonic,
    CubeSquareMismatch,
    NotInAlgebra,
    MissingVariable { name: String },
    RequiresPrimeField,
    Monoid(MonoidError),
    Ideal(IdealError),
}

impl fmt::Display for ElementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementError::CertificateLength { expected, got } => {
                write!(f, "certificate must list {expected} elements, got {got}")
            }
            ElementError::FieldMismatch => write!(f, "coefficient field mismatch"),
            ElementError::VariableMismatch => write!(f, "variable list mismatch"),
            ElementError::NotMonomial => write!(f, "input must be a monomial"),
            ElementError::NonMonic => write!(f, "polynomial must be monic of positive degree"),
            ElementError::CubeSquareMismatch => write!(f, "cube of b does not equal square of c"),
            ElementError::NotInAlgebra => write!(f, "element does not belong to the algebra"),
            ElementError::MissingVariable { name } => write!(f, "missing variable '{name}'"),
            ElementError::RequiresPrimeField => {
                write!(f, "operation requires a prime-field context")
            }
            ElementError::Monoid(e) => write!(f, "{e}"),
            ElementError::Ideal(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ElementError {}

impl From<MonoidError> for ElementError {
    fn from(e: MonoidError) -> Self {
        ElementError::Monoid(e)
    }
}

impl From<IdealError> for ElementError {
    fn from(e: IdealError) -> Self {
        ElementError::Ideal(e)
    }
}

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// A system of subintegrality: data `(q, N, c_1..c_q)` certifying weak
/// subintegrality of an element over a monomial algebra.
#[derive(Clone, Debug)]
pub struct SosiCertificate {
    q: u32,
    n_start: u32,
    c: Vec<SparsePolynomial>,
}

impl SosiCertificate {
    pub fn new(q: u32, n_start: u32, c: Vec<SparsePolynomial>) -> Result<Self, ElementError> {
        if c.len() != q as usize {
            return Err(ElementError::CertificateLength {
                expected: q as usize,
                got: c.len(),
            });
        }
        assert!(n_start >= 1, "N must be positive");
        Ok(SosiCertificate { q, n_start, c })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n_start(&self) -> u32 {
        self.n_start
    }

    pub fn coefficients(&self) -> &[SparsePolynomial] {
        &self.c
    }
}

/// Coefficients `a_1..a_{2q+1}` of the structured equation system.
#[derive(Clone, Debug)]
pub struct WsiCertificate {
    q: u32,
    a: Vec<SparsePolynomial>,
}

impl WsiCertificate {
    pub fn new(q: u32, a: Vec<SparsePolynomial>) -> Result<Self, ElementError> {
        if a.len() != 2 * q as usize + 1 {
            return Err(ElementError::CertificateLength {
                expected: 2 * q as usize + 1,
                got: a.len(),
            });
        }
        Ok(WsiCertificate { q, a })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coefficients(&self) -> &[SparsePolynomial] {
        &self.a
    }
}

fn check_context(
    ctx: &MonomialAlgebraContext,
    polys: &[&SparsePolynomial],
) -> Result<(), ElementError> {
    for p in polys {
        if p.field() != ctx.char_spec {
            return Err(ElementError::FieldMismatch);
        }
        if p.vars() != ctx.vars.as_slice() {
            return Err(ElementError::VariableMismatch);
        }
    }
    Ok(())
}

/// Verify a system of subintegrality on its finite window:
/// `b^n + sum_i C(n,i) c_i b^{n-i}` must lie in the algebra for every
/// `n` in `[N, 2N + 2q - 1]`.
pub fn verify_sosi(
    ctx: &MonomialAlgebraContext,
    b: &SparsePolynomial,
    cert: &SosiCertificate,
) -> Result<bool, ElementError> {
    let mut polys = vec![b];
    polys.extend(cert.c.iter());
    check_context(ctx, &polys)?;
    let n_lo = cert.n_start as u64;
    let n_hi = 2 * n_lo + 2 * cert.q as u64 - 1;
    for n in n_lo..=n_hi {
        let mut sum = b.pow(n as u32);
        for (i, c_i) in cert.c.iter().enumerate() {
            let i = i as u64 + 1;
            if i > n {
                continue;
            }
            let term = c_i.mul(&b.pow((n - i) as u32)).scale_int(&binomial(n, i));
            sum = sum.add(&term);
        }
        if !ctx.contains_poly(&sum)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verify the ring-level structured equations
/// `b^n + sum_i (-1)^i C(n,i) a_i b^{n-i} = 0` for `q+1 <= n <= 2q+1`,
/// requiring every `a_i` to lie in the algebra.
pub fn verify_wsi_ring(
    ctx: &MonomialAlgebraContext,
    b: &SparsePolynomial,
    cert: &WsiCertificate,
) -> Result<bool, ElementError> {
    let mut polys = vec![b];
    polys.extend(cert.a.iter());
    check_context(ctx, &polys)?;
    for a_i in &cert.a {
        if !ctx.contains_poly(a_i)? {
            return Ok(false);
        }
    }
    let q = cert.q as u64;
    for n in q + 1..=2 * q + 1 {
        let mut sum = b.pow(n as u32);
        for (idx, a_i) in cert.a.iter().enumerate() {
            let i = idx as u64 + 1;
            if i > n {
                continue;
            }
            let mut coeff = binomial(n, i);
            if i % 2 == 1 {
                coeff = -coeff;
            }
            sum = sum.add(&a_i.mul(&b.pow((n - i) as u32)).scale_int(&coeff));
        }
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn monomial_exponent(p: &SparsePolynomial) -> Result<ExponentVector, ElementError> {
    let (exps, _) = p.as_monomial().ok_or(ElementError::NotMonomial)?;
    Ok(ExponentVector::new(exps.iter().map(|&e| e as i64).collect()).expect("nonnegative"))
}

/// Verify weak subintegrality over a monomial ideal: the sign-absorbed
/// equations `b^n + sum_i C(n,i) a_i b^{n-i} = 0` for
/// `q+1 <= n <= 2q+1`, with each `a_i` a monomial of `I^i` (or zero).
pub fn verify_wsi_ideal(
    ideal: &MonomialIdeal,
    b: &SparsePolynomial,
    cert: &WsiCertificate,
) -> Result<bool, ElementError> {
    monomial_exponent(b)?;
    for (idx, a_i) in cert.a.iter().enumerate() {
        if a_i.is_zero() {
            continue;
        }
        let exps = monomial_exponent(a_i)?;
        if !ideal.power_contains(idx as u64 + 1, &exps) {
            return Ok(false);
        }
    }
    let q = cert.q as u64;
    for n in q + 1..=2 * q + 1 {
        let mut sum = b.pow(n as u32);
        for (idx, a_i) in cert.a.iter().enumerate() {
            let i = idx as u64 + 1;
            if i > n {
                continue;
            }
            sum = sum.add(&a_i.mul(&b.pow((n - i) as u32)).scale_int(&binomial(n, i)));
        }
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Build a certificate for a monomial `b` from high-power membership:
/// the smallest `q <= q_max` with `b^n in I^n` across the window
/// `q < n <= 2q+1`, with coefficients from the zero-padded recursion
/// `a_n = -(b^n + sum_{i=q+1}^{n-1} C(n,i) a_i b^{n-i})`.
pub fn wsi_certificate_from_high_powers(
    ideal: &MonomialIdeal,
    b: &SparsePolynomial,
    q_max: u32,
) -> Result<Option<WsiCertificate>, ElementError> {
    let gamma = monomial_exponent(b)?;
    // An accepted window yields a valid certificate, which forces the
    // Samuel value of b to be at least one; below that, nothing works.
    if samuel_value(ideal, &gamma)? < Rational64::one() {
        return Ok(None);
    }
    'next_q: for q in 0..=q_max {
        for n in q as u64 + 1..=2 * q as u64 + 1 {
            if !ideal.power_contains(n, &gamma.scale(n as i64)) {
                continue 'next_q;
            }
        }
        let mut a: Vec<SparsePolynomial> =
            vec![SparsePolynomial::zero(b.field(), b.vars()); 2 * q as usize + 1];
        for n in q as u64 + 1..=2 * q as u64 + 1 {
            let mut sum = b.pow(n as u32);
            for i in q as u64 + 1..n {
                let a_i = &a[i as usize - 1];
                sum = sum.add(&a_i.mul(&b.pow((n - i) as u32)).scale_int(&binomial(n, i)));
            }
            a[n as usize - 1] = sum.neg();
        }
        let cert = WsiCertificate::new(q, a)?;
        debug_assert!(verify_wsi_ideal(ideal, b, &cert)?);
        return Ok(Some(cert));
    }
    Ok(None)
}

/// The monic polynomial `F(T) = T^n + sum_i (-1)^i C(n,i) a_i T^{n-i}`
/// of degree `n = 2q+1`, in the certificate's variables extended by
/// `main_var`.
pub fn build_characteristic_poly(cert: &WsiCertificate, main_var: &str) -> SparsePolynomial {
    let base_vars = cert.a[0].vars();
    assert!(
        !base_vars.iter().any(|v| v == main_var),
        "indeterminate name collides with a coefficient variable"
    );
    let mut vars = base_vars.to_vec();
    vars.push(main_var.to_string());
    let field = cert.a[0].field();
    let t_idx = vars.len() - 1;
    let n = 2 * cert.q as u64 + 1;
    let t_power = |k: u64| {
        let mut exps = vec![0u32; vars.len()];
        exps[t_idx] = k as u32;
        SparsePolynomial::monomial(field, &vars, exps, BigRational::one())
    };
    let mut f = t_power(n);
    for (idx, a_i) in cert.a.iter().enumerate() {
        let i = idx as u64 + 1;
        let mut coeff = binomial(n, i);
        if i % 2 == 1 {
            coeff = -coeff;
        }
        f = f.add(&a_i.embed(&vars).scale_int(&coeff).mul(&t_power(n - i)));
    }
    f
}

/// The derivative-root criterion: `b` is a common root of `F` and its
/// first `floor(n/2)` derivatives with respect to `main_var`.
pub fn derivative_criterion(
    f: &SparsePolynomial,
    main_var: &str,
    b: &SparsePolynomial,
) -> Result<bool, ElementError> {
    let t_idx = f
        .vars()
        .iter()
        .position(|v| v == main_var)
        .ok_or_else(|| ElementError::MissingVariable {
            name: main_var.to_string(),
        })?;
    let n = f.degree_in(t_idx);
    if n == 0 {
        return Err(ElementError::NonMonic);
    }
    let mut lead_exps = vec![0u32; f.num_vars()];
    lead_exps[t_idx] = n;
    let lead: Vec<(Vec<u32>, BigRational)> = f
        .terms()
        .filter(|(e, _)| e[t_idx] == n)
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    if lead.len() != 1 || lead[0].0 != lead_exps || !lead[0].1.is_one() {
        return Err(ElementError::NonMonic);
    }
    if b.field() != f.field() {
        return Err(ElementError::FieldMismatch);
    }
    let b_embedded = b.embed(f.vars());
    let mut current = f.clone();
    for _ in 0..=(n / 2) {
        if !current.substitute(t_idx, &b_embedded).is_zero() {
            return Ok(false);
        }
        current = current.partial_derivative(t_idx);
    }
    Ok(true)
}

/// Outcome of the cube-square root extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwanOutcome {
    /// A monomial `a` of the algebra with `a^2 = b` and `a^3 = c`.
    Root(SparsePolynomial),
    /// The root exists in the ambient polynomial ring but escapes the
    /// algebra: conclusive evidence against seminormality.
    Witness(SparsePolynomial),
}

/// Given monomials `b, c` of the algebra with `b^3 = c^2`, return the
/// monomial root `a = c/b`, classified by whether it stays inside.
pub fn swan_root_test(
    ctx: &MonomialAlgebraContext,
    b: &SparsePolynomial,
    c: &SparsePolynomial,
) -> Result<SwanOutcome, ElementError> {
    check_context(ctx, &[b, c])?;
    if b.pow(3) != c.pow(2) {
        return Err(ElementError::CubeSquareMismatch);
    }
    if !ctx.contains_poly(b)? || !ctx.contains_poly(c)? {
        return Err(ElementError::NotInAlgebra);
    }
    if b.is_zero() {
        return Ok(SwanOutcome::Root(SparsePolynomial::zero(
            b.field(),
            b.vars(),
        )));
    }
    let (b_exps, b_coeff) = b.as_monomial().ok_or(ElementError::NotMonomial)?;
    let (c_exps, c_coeff) = c.as_monomial().ok_or(ElementError::NotMonomial)?;
    // From 3u = 2v the difference v - u = u/2 is a nonnegative integer
    // vector.
    let a_exps: Vec<u32> = c_exps.iter().zip(b_exps).map(|(v, u)| v - u).collect();
    let a_coeff = c_coeff / b_coeff;
    let a = SparsePolynomial::monomial(b.field(), b.vars(), a_exps, a_coeff);
    debug_assert_eq!(a.pow(2), *b);
    debug_assert_eq!(a.pow(3), *c);
    if ctx.contains_poly(&a)? {
        Ok(SwanOutcome::Root(a))
    } else {
        Ok(SwanOutcome::Witness(a))
    }
}

/// The Schanuel rank-one projection data built from an element `a`.
#[derive(Clone, Debug)]
pub struct SchanuelMatrix {
    /// Entries `f_i * g_j` of the 2x2 matrix, row by row.
    pub entries: [[SparsePolynomial; 2]; 2],
    /// `f_1 g_1 + f_2 g_2 = 1` holds identically.
    pub unimodular_identity: bool,
    /// Evaluation at `X = 0` is the projection with a single one in the
    /// top-left corner.
    pub projection_at_zero: bool,
}

/// Build the matrix `(f_i g_j)` from `f_1 = 1 + aX`, `f_2 = bX^2`,
/// `g_1 = (1 - aX)(1 + bX^2)`, `g_2 = bX^2` with `b = a^2`, and verify
/// its defining identities symbolically.
pub fn schanuel_matrix(a: &SparsePolynomial) -> SchanuelMatrix {
    let x_name = "X";
    assert!(
        !a.vars().iter().any(|v| v == x_name),
        "element must not involve the variable X"
    );
    let mut vars = a.vars().to_vec();
    vars.push(x_name.to_string());
    let field = a.field();
    let a = a.embed(&vars);
    let x = SparsePolynomial::variable(field, &vars, vars.len() - 1);
    let one = SparsePolynomial::one(field, &vars);
    let b = a.pow(2);
    let bx2 = b.mul(&x.pow(2));
    let f = [one.add(&a.mul(&x)), bx2.clone()];
    let g = [one.sub(&a.mul(&x)).mul(&one.add(&bx2)), bx2];
    let entries = [
        [f[0].mul(&g[0]), f[0].mul(&g[1])],
        [f[1].mul(&g[0]), f[1].mul(&g[1])],
    ];
    let unimodular_identity = f[0].mul(&g[0]).add(&f[1].mul(&g[1])).is_one();
    let x_idx = vars.len() - 1;
    let projection_at_zero = entries[0][0].eval_var_at_zero(x_idx).is_one()
        && entries[0][1].eval_var_at_zero(x_idx).is_zero()
        && entries[1][0].eval_var_at_zero(x_idx).is_zero()
        && entries[1][1].eval_var_at_zero(x_idx).is_zero();
    SchanuelMatrix {
        entries,
        unimodular_identity,
        projection_at_zero,
    }
}

/// Characteristic-p shortcut: the smallest `m <= m_max` with
/// `b^{p^m}` in the algebra, if any.
pub fn frobenius_membership(
    ctx: &MonomialAlgebraContext,
    b: &SparsePolynomial,
    m_max: u32,
) -> Result<Option<u32>, ElementError> {
    check_context(ctx, &[b])?;
    let CharSpec::Prime(p) = ctx.char_spec else {
        return Err(ElementError::RequiresPrimeField);
    };
    let mut power = 1u64;
    for m in 0..=m_max {
        if ctx.contains_poly(&b.pow(power as u32))? {
            return Ok(Some(m));
        }
        match power.checked_mul(p) {
            Some(next) if next <= 1 << 20 => power = next,
            _ => break,
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::semigroup::NumericalSemigroup;

    fn t_vars() -> Vec<String> {
        vec!["t".to_string()]
    }

    fn q(text: &str) -> SparsePolynomial {
        parse_polynomial(text, CharSpec::Zero, &t_vars()).unwrap()
    }

    fn cusp_algebra() -> MonomialAlgebraContext {
        MonomialAlgebraContext::numerical(
            CharSpec::Zero,
            NumericalSemigroup::new(&[2, 3]).unwrap(),
            "t",
        )
    }

    fn deep_algebra() -> MonomialAlgebraContext {
        MonomialAlgebraContext::numerical(
            CharSpec::Zero,
            NumericalSemigroup::new(&[3, 4, 5]).unwrap(),
            "t",
        )
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(40, 20), BigInt::from(137846528820u64));
    }

    #[test]
    fn sosi_examples() {
        let ctx = cusp_algebra();
        let b = q("t");
        let cert = SosiCertificate::new(1, 2, vec![q("0")]).unwrap();
        assert!(verify_sosi(&ctx, &b, &cert).unwrap());

        let trivial = SosiCertificate::new(0, 1, vec![]).unwrap();
        assert!(verify_sosi(&ctx, &q("t^2"), &trivial).unwrap());

        let ctx345 = deep_algebra();
        assert!(!verify_sosi(&ctx345, &b, &cert).unwrap());
    }

    #[test]
    fn wsi_ring_examples() {
        let ctx = cusp_algebra();
        let b = q("t");
        let cert = WsiCertificate::new(1, vec![q("0"), q("-t^2"), q("-2*t^3")]).unwrap();
        assert!(verify_wsi_ring(&ctx, &b, &cert).unwrap());

        let trivial = WsiCertificate::new(0, vec![q("t^2")]).unwrap();
        assert!(verify_wsi_ring(&ctx, &q("t^2"), &trivial).unwrap());

        let wrong = WsiCertificate::new(1, vec![q("0"), q("-t^2"), q("-t^3")]).unwrap();
        assert!(!verify_wsi_ring(&ctx, &b, &wrong).unwrap());
    }

    #[test]
    fn wsi_ring_membership_is_required() {
        // Over K[t^3,t^4,t^5] the same equations hold but a_2 = -t^2 is
        // outside the algebra, so the certificate must be refused.
        let ctx = deep_algebra();
        let b = q("t");
        let cert = WsiCertificate::new(1, vec![q("0"), q("-t^2"), q("-2*t^3")]).unwrap();
        assert!(!verify_wsi_ring(&ctx, &b, &cert).unwrap());
    }

    #[test]
    fn certificate_length_enforced() {
        assert!(matches!(
            WsiCertificate::new(1, vec![q("0")]),
            Err(ElementError::CertificateLength { expected: 3, got: 1 })
        ));
        assert!(matches!(
            SosiCertificate::new(2, 1, vec![q("0")]),
            Err(ElementError::CertificateLength { expected: 2, got: 1 })
        ));
    }

    fn xy_ideal(gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(
            2,
            gens.iter()
                .map(|g| ExponentVector::new(g.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn xy(text: &str) -> SparsePolynomial {
        parse_polynomial(
            text,
            CharSpec::Zero,
            &["x".to_string(), "y".to_string()],
        )
        .unwrap()
    }

    #[test]
    fn wsi_ideal_examples() {
        let m = xy_ideal(&[&[1, 0], &[0, 1]]);
        let b = xy("x^2");
        let cert = WsiCertificate::new(0, vec![xy("-x^2")]).unwrap();
        assert!(verify_wsi_ideal(&m, &b, &cert).unwrap());

        // a_1 outside I fails regardless of the equations.
        let deep = xy_ideal(&[&[3, 0], &[0, 3]]);
        assert!(!verify_wsi_ideal(&deep, &b, &cert).unwrap());
    }

    #[test]
    fn high_power_certificates() {
        let m = xy_ideal(&[&[1, 0], &[0, 1]]);
        let cert = wsi_certificate_from_high_powers(&m, &xy("x^2"), 4)
            .unwrap()
            .unwrap();
        assert_eq!(cert.q(), 0);
        assert_eq!(cert.coefficients()[0], xy("-x^2"));

        let i = xy_ideal(&[&[6, 0], &[2, 4], &[0, 6]]);
        let b = xy("x^3*y^4");
        let cert = wsi_certificate_from_high_powers(&i, &b, 8).unwrap().unwrap();
        // (3,4) dominates the generator (2,4), so the window already
        // passes at q = 0.
        assert_eq!(cert.q(), 0);
        assert!(verify_wsi_ideal(&i, &b, &cert).unwrap());

        // x^4*y^2 sits on the oblique facet outside the ideal; the
        // first passing window needs q >= 1.
        let edge = xy("x^4*y^2");
        let cert = wsi_certificate_from_high_powers(&i, &edge, 8).unwrap().unwrap();
        assert!(cert.q() >= 1);
        assert!(verify_wsi_ideal(&i, &edge, &cert).unwrap());

        // Samuel value below one: no certificate can exist.
        assert!(wsi_certificate_from_high_powers(&i, &xy("x*y"), 8)
            .unwrap()
            .is_none());
    }

    #[test]
    fn characteristic_poly_examples() {
        let cert = WsiCertificate::new(1, vec![q("0"), q("-t^2"), q("-2*t^3")]).unwrap();
        let f = build_characteristic_poly(&cert, "T");
        let tt = ["t".to_string(), "T".to_string()];
        let expected = parse_polynomial("T^3 - 3*t^2*T + 2*t^3", CharSpec::Zero, &tt).unwrap();
        assert_eq!(f, expected);
        // F factors as (T - t)^2 (T + 2t).
        let t = parse_polynomial("T - t", CharSpec::Zero, &tt).unwrap();
        let u = parse_polynomial("T + 2*t", CharSpec::Zero, &tt).unwrap();
        assert_eq!(f, t.pow(2).mul(&u));

        let trivial = WsiCertificate::new(0, vec![q("t^2")]).unwrap();
        let g = build_characteristic_poly(&trivial, "T");
        assert_eq!(
            g,
            parse_polynomial("T - t^2", CharSpec::Zero, &tt).unwrap()
        );

        let zero_cert = WsiCertificate::new(1, vec![q("0"), q("0"), q("0")]).unwrap();
        assert_eq!(
            build_characteristic_poly(&zero_cert, "T"),
            parse_polynomial("T^3", CharSpec::Zero, &tt).unwrap()
        );
    }

    #[test]
    fn derivative_criterion_examples() {
        let cert = WsiCertificate::new(1, vec![q("0"), q("-t^2"), q("-2*t^3")]).unwrap();
        let f = build_characteristic_poly(&cert, "T");
        assert!(derivative_criterion(&f, "T", &q("t")).unwrap());

        let trivial = WsiCertificate::new(0, vec![q("t")]).unwrap();
        let g = build_characteristic_poly(&trivial, "T");
        assert!(derivative_criterion(&g, "T", &q("t")).unwrap());

        // T^p - c^p over F_p vanishes with all derivatives at T = c.
        let p = 3u64;
        let fp_vars = ["t".to_string(), "T".to_string()];
        let fp = parse_polynomial("T^3 - t^3", CharSpec::Prime(p), &fp_vars).unwrap();
        let c = parse_polynomial("t", CharSpec::Prime(p), &["t".to_string()]).unwrap();
        assert!(derivative_criterion(&fp, "T", &c).unwrap());

        // A simple root fails the derivative conditions for n >= 2.
        let tt = ["t".to_string(), "T".to_string()];
        let sq = parse_polynomial("T^2 - t^2", CharSpec::Zero, &tt).unwrap();
        assert!(!derivative_criterion(&sq, "T", &q("t")).unwrap());

        let nonmonic = parse_polynomial("2*T^2", CharSpec::Zero, &tt).unwrap();
        assert!(matches!(
            derivative_criterion(&nonmonic, "T", &q("t")),
            Err(ElementError::NonMonic)
        ));
    }

    #[test]
    fn swan_root_examples() {
        let ctx = cusp_algebra();
        let b = q("t^4");
        let c = q("t^6");
        match swan_root_test(&ctx, &b, &c).unwrap() {
            SwanOutcome::Root(a) => assert_eq!(a, q("t^2")),
            other => panic!("expected root, got {other:?}"),
        }

        let ctx345 = deep_algebra();
        match swan_root_test(&ctx345, &b, &c).unwrap() {
            SwanOutcome::Witness(a) => assert_eq!(a, q("t^2")),
            other => panic!("expected witness, got {other:?}"),
        }

        let zero = q("0");
        match swan_root_test(&ctx, &zero, &zero).unwrap() {
            SwanOutcome::Root(a) => assert!(a.is_zero()),
            other => panic!("expected zero root, got {other:?}"),
        }

        assert!(matches!(
            swan_root_test(&ctx, &q("t^4"), &q("t^4")),
            Err(ElementError::CubeSquareMismatch)
        ));
    }

    #[test]
    fn swan_root_is_unique() {
        // (a - a')^3 = 0 forces a = a' among monomials; check directly
        // that no other monomial squares to b.
        let ctx = cusp_algebra();
        let b = q("t^4");
        let c = q("t^6");
        let SwanOutcome::Root(a) = swan_root_test(&ctx, &b, &c).unwrap() else {
            panic!("expected root");
        };
        for e in 0..6u32 {
            let candidate = SparsePolynomial::monomial(
                CharSpec::Zero,
                &t_vars(),
                vec![e],
                BigRational::one(),
            );
            if candidate.pow(2) == b && candidate.pow(3) == c {
                assert_eq!(candidate, a);
            }
        }
    }

    #[test]
    fn schanuel_identities() {
        for text in ["t", "0", "1 + t", "t^2 - 3*t"] {
            let a = q(text);
            let m = schanuel_matrix(&a);
            assert!(m.unimodular_identity, "a = {text}");
            assert!(m.projection_at_zero, "a = {text}");
        }
    }

    #[test]
    fn derivative_form_follows_from_certificates() {
        // Every valid certificate passes the derivative criterion on its
        // characteristic polynomial.
        let ctx = cusp_algebra();
        for (b, cert) in [
            (q("t"), WsiCertificate::new(1, vec![q("0"), q("-t^2"), q("-2*t^3")]).unwrap()),
            (q("t^2"), WsiCertificate::new(0, vec![q("t^2")]).unwrap()),
            (q("t^3"), WsiCertificate::new(0, vec![q("t^3")]).unwrap()),
        ] {
            assert!(verify_wsi_ring(&ctx, &b, &cert).unwrap());
            let f = build_characteristic_poly(&cert, "T");
            assert!(derivative_criterion(&f, "T", &b).unwrap());
        }
    }

    #[test]
    fn frobenius_shortcut_matches_bounded_sosi_search() {
        // Over prime fields, a monomial admits a small system of
        // subintegrality exactly when some Frobenius power lands in the
        // algebra. The search side tries q <= 1, N <= 3 and monomial
        // coefficients of degree <= 8.
        let sosi_search = |ctx: &MonomialAlgebraContext, b: &SparsePolynomial| -> bool {
            let vars = b.vars().to_vec();
            let field = b.field();
            for n_start in 1..=3u32 {
                let trivial = SosiCertificate::new(0, n_start, vec![]).unwrap();
                if verify_sosi(ctx, b, &trivial).unwrap() {
                    return true;
                }
                for d in 0..=8u32 {
                    for sign in [1i64, -1] {
                        let c1 = SparsePolynomial::monomial(
                            field,
                            &vars,
                            vec![d],
                            BigRational::from_integer(sign.into()),
                        );
                        let cert = SosiCertificate::new(1, n_start, vec![c1]).unwrap();
                        if verify_sosi(ctx, b, &cert).unwrap() {
                            return true;
                        }
                    }
                }
            }
            false
        };
        for (p, semigroup) in [(2u64, vec![2u64]), (2, vec![2, 3]), (3, vec![2]), (3, vec![3, 4])] {
            let ctx = MonomialAlgebraContext::numerical(
                CharSpec::Prime(p),
                NumericalSemigroup::new(&semigroup).unwrap(),
                "t",
            );
            for e in 1..=6u32 {
                let b = SparsePolynomial::monomial(
                    CharSpec::Prime(p),
                    &t_vars(),
                    vec![e],
                    BigRational::one(),
                );
                let by_frobenius = frobenius_membership(&ctx, &b, 3).unwrap().is_some();
                let by_search = sosi_search(&ctx, &b);
                assert_eq!(
                    by_frobenius, by_search,
                    "p = {p}, semigroup = {semigroup:?}, e = {e}"
                );
            }
        }
    }

    #[test]
    fn frobenius_shortcut_matches_sosi_search() {
        // Over F_2, t is weakly subintegral over K[t^2] (t^2 is inside),
        // and a q = 1 system with c_1 = t verifies it.
        let ctx = MonomialAlgebraContext::numerical(
            CharSpec::Prime(2),
            NumericalSemigroup::new(&[2]).unwrap(),
            "t",
        );
        let b = parse_polynomial("t", CharSpec::Prime(2), &t_vars()).unwrap();
        assert_eq!(frobenius_membership(&ctx, &b, 4).unwrap(), Some(1));
        let c1 = parse_polynomial("t", CharSpec::Prime(2), &t_vars()).unwrap();
        let cert = SosiCertificate::new(1, 1, vec![c1]).unwrap();
        assert!(verify_sosi(&ctx, &b, &cert).unwrap());

        // Over F_3 the element stays outside all Frobenius powers.
        let ctx3 = MonomialAlgebraContext::numerical(
            CharSpec::Prime(3),
            NumericalSemigroup::new(&[2]).unwrap(),
            "t",
        );
        let b3 = parse_polynomial("t", CharSpec::Prime(3), &t_vars()).unwrap();
        assert_eq!(frobenius_membership(&ctx3, &b3, 4).unwrap(), None);
    }
}
