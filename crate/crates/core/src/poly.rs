//! Exact sparse multivariate polynomials over the rationals or a prime
//! field, with derivatives, substitution and gcd.
//!
//! Coefficients are `BigRational`; over a prime field they are kept as
//! reduced representatives in `[0, p)`. Terms live in a `BTreeMap`, so
//! the representation is canonical and comparison is structural.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::closure::CharSpec;

/// Exact multivariate polynomial with named variables.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    field: CharSpec,
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn fp_reduce(c: &BigRational, p: u64) -> BigRational {
    let modulus = BigInt::from(p);
    let num = c.numer().mod_floor(&modulus);
    let den = c.denom().mod_floor(&modulus);
    assert!(!den.is_zero(), "denominator divisible by the characteristic");
    let inv = den.modpow(&BigInt::from(p - 2), &modulus);
    BigRational::from_integer((num * inv).mod_floor(&modulus))
}

impl SparsePolynomial {
    pub fn zero(field: CharSpec, vars: &[String]) -> Self {
        SparsePolynomial {
            field,
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: CharSpec, vars: &[String], c: BigRational) -> Self {
        let mut poly = Self::zero(field, vars);
        poly.add_term(vec![0; vars.len()], c);
        poly
    }

    pub fn from_int(field: CharSpec, vars: &[String], c: i64) -> Self {
        Self::constant(field, vars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn one(field: CharSpec, vars: &[String]) -> Self {
        Self::from_int(field, vars, 1)
    }

    pub fn variable(field: CharSpec, vars: &[String], idx: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Self::monomial(field, vars, exps, BigRational::one())
    }

    pub fn monomial(field: CharSpec, vars: &[String], exps: Vec<u32>, coeff: BigRational) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut poly = Self::zero(field, vars);
        poly.add_term(exps, coeff);
        poly
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: BigRational) {
        let reduced = match self.field {
            CharSpec::Zero => coeff,
            CharSpec::Prime(p) => fp_reduce(&coeff, p),
        };
        if reduced.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(reduced);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + reduced;
                let sum = match self.field {
                    CharSpec::Zero => sum,
                    CharSpec::Prime(p) => fp_reduce(&sum, p),
                };
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> CharSpec {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// `Some((exponents, coefficient))` for a single-term polynomial.
    pub fn as_monomial(&self) -> Option<(&Vec<u32>, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    fn assert_compatible(&self, other: &SparsePolynomial) {
        assert_eq!(self.field, other.field, "coefficient field mismatch");
        assert_eq!(self.vars, other.vars, "variable list mismatch");
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SparsePolynomial {
        let mut out = Self::zero(self.field, &self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        self.assert_compatible(other);
        let mut out = Self::zero(self.field, &self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SparsePolynomial {
        let mut out = Self::zero(self.field, &self.vars);
        for (e, t) in &self.terms {
            out.add_term(e.clone(), t * c);
        }
        out
    }

    pub fn scale_int(&self, c: &BigInt) -> SparsePolynomial {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    pub fn pow(&self, n: u32) -> SparsePolynomial {
        let mut base = self.clone();
        let mut n = n;
        let mut out = Self::one(self.field, &self.vars);
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn partial_derivative(&self, idx: usize) -> SparsePolynomial {
        let mut out = Self::zero(self.field, &self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[idx] -= 1;
            out.add_term(exps, c * BigRational::from_integer(BigInt::from(e[idx])));
        }
        out
    }

    /// Substitute `g` for variable `idx` (same field and variable list).
    pub fn substitute(&self, idx: usize, g: &SparsePolynomial) -> SparsePolynomial {
        self.assert_compatible(g);
        let mut powers: BTreeMap<u32, SparsePolynomial> = BTreeMap::new();
        let mut out = Self::zero(self.field, &self.vars);
        for (e, c) in &self.terms {
            let k = e[idx];
            let power = powers.entry(k).or_insert_with(|| g.pow(k)).clone();
            let mut rest = e.clone();
            rest[idx] = 0;
            out = out.add(&Self::monomial(self.field, &self.vars, rest, c.clone()).mul(&power));
        }
        out
    }

    /// Substitute a polynomial for every variable simultaneously.
    pub fn substitute_all(&self, subs: &[SparsePolynomial]) -> SparsePolynomial {
        assert_eq!(subs.len(), self.vars.len());
        let mut out = Self::zero(self.field, &self.vars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.field, &self.vars, c.clone());
            for (idx, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&subs[idx].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Set variable `idx` to zero.
    pub fn eval_var_at_zero(&self, idx: usize) -> SparsePolynomial {
        let mut out = Self::zero(self.field, &self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Reinterpret over a larger variable list (existing variables must
    /// appear, by name).
    pub fn embed(&self, vars: &[String]) -> SparsePolynomial {
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("missing variable"))
            .collect();
        let mut out = Self::zero(self.field, vars);
        for (e, c) in &self.terms {
            let mut exps = vec![0u32; vars.len()];
            for (i, &k) in e.iter().enumerate() {
                exps[positions[i]] = k;
            }
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables
    /// (the variable list is kept, with exponent zero in `v`).
    fn coefficient_in(&self, idx: usize, k: u32) -> SparsePolynomial {
        let mut out = Self::zero(self.field, &self.vars);
        for (e, c) in &self.terms {
            if e[idx] == k {
                let mut exps = e.clone();
                exps[idx] = 0;
                out.add_term(exps, c.clone());
            }
        }
        out
    }

    fn mul_var_power(&self, idx: usize, k: u32) -> SparsePolynomial {
        let mut out = Self::zero(self.field, &self.vars);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            exps[idx] += k;
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &SparsePolynomial) -> Option<SparsePolynomial> {
        self.assert_compatible(other);
        assert!(!other.is_zero(), "division by the zero polynomial");
        if let Some(c) = other.as_constant() {
            return Some(self.scale(&(BigRational::one() / c)));
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, &self.vars);
        let (lead_e, lead_c) = other.terms.iter().next_back().unwrap();
        let (lead_e, lead_c) = (lead_e.clone(), lead_c.clone());
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().unwrap();
            let exps: Vec<i64> = re.iter().zip(&lead_e).map(|(a, b)| *a as i64 - *b as i64).collect();
            if exps.iter().any(|&e| e < 0) {
                return None;
            }
            let exps: Vec<u32> = exps.into_iter().map(|e| e as u32).collect();
            let t = Self::monomial(self.field, &self.vars, exps, rc / &lead_c);
            quot = quot.add(&t);
            rem = rem.sub(&t.mul(other));
        }
        Some(quot)
    }
}

/// Multivariate gcd by primitive pseudo-remainder sequences, with a
/// monic Euclid fast path for effectively univariate inputs. The result
/// is canonical: monic in its lexicographic leading coefficient.
pub fn poly_gcd(a: &SparsePolynomial, b: &SparsePolynomial) -> SparsePolynomial {
    a.assert_compatible(b);
    let g = gcd_inner(a, b);
    make_canonical(&g)
}

fn make_canonical(f: &SparsePolynomial) -> SparsePolynomial {
    if f.is_zero() {
        return f.clone();
    }
    let (_, lead_c) = f.terms.iter().next_back().unwrap();
    f.scale(&(BigRational::one() / lead_c))
}

fn gcd_inner(a: &SparsePolynomial, b: &SparsePolynomial) -> SparsePolynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let main = (0..a.num_vars())
        .rev()
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0);
    let Some(v) = main else {
        return SparsePolynomial::one(a.field(), a.vars());
    };
    let univariate = |f: &SparsePolynomial| {
        f.support()
            .all(|e| e.iter().enumerate().all(|(i, &k)| i == v || k == 0))
    };
    if univariate(a) && univariate(b) {
        return univariate_gcd(a, b, v);
    }

    let content = |f: &SparsePolynomial| -> SparsePolynomial {
        let mut c = SparsePolynomial::zero(f.field(), f.vars());
        for k in 0..=f.degree_in(v) {
            let coeff = f.coefficient_in(v, k);
            if !coeff.is_zero() {
                c = gcd_inner(&c, &coeff);
            }
        }
        c
    };
    let cont_a = content(a);
    let cont_b = content(b);
    let cont_gcd = gcd_inner(&cont_a, &cont_b);
    let mut r0 = a.exact_div(&cont_a).expect("content divides");
    let mut r1 = b.exact_div(&cont_b).expect("content divides");
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_zero() {
        let rem = pseudo_rem(&r0, &r1, v);
        r0 = r1;
        r1 = if rem.is_zero() {
            rem
        } else {
            let c = content(&rem);
            rem.exact_div(&c).expect("content divides")
        };
    }
    cont_gcd.mul(&r0)
}

fn univariate_gcd(a: &SparsePolynomial, b: &SparsePolynomial, v: usize) -> SparsePolynomial {
    let mut r0 = make_canonical(a);
    let mut r1 = make_canonical(b);
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_zero() {
        let rem = univariate_rem(&r0, &r1, v);
        r0 = r1;
        r1 = make_canonical(&rem);
    }
    r0
}

fn univariate_rem(f: &SparsePolynomial, g: &SparsePolynomial, v: usize) -> SparsePolynomial {
    let dg = g.degree_in(v);
    let lc_g = g.coefficient_in(v, dg).as_constant().expect("univariate");
    let mut rem = f.clone();
    while !rem.is_zero() && rem.degree_in(v) >= dg {
        let dr = rem.degree_in(v);
        let lc_r = rem.coefficient_in(v, dr).as_constant().expect("univariate");
        let factor = SparsePolynomial::monomial(
            f.field(),
            f.vars(),
            {
                let mut e = vec![0; f.num_vars()];
                e[v] = dr - dg;
                e
            },
            lc_r / &lc_g,
        );
        rem = rem.sub(&factor.mul(g));
    }
    rem
}

fn pseudo_rem(f: &SparsePolynomial, g: &SparsePolynomial, v: usize) -> SparsePolynomial {
    let dg = g.degree_in(v);
    let lc_g = g.coefficient_in(v, dg);
    let mut rem = f.clone();
    while !rem.is_zero() && rem.degree_in(v) >= dg {
        let dr = rem.degree_in(v);
        let lc_r = rem.coefficient_in(v, dr);
        rem = lc_g
            .mul(&rem)
            .sub(&lc_r.mul(&g.mul_var_power(v, dr - dg)));
    }
    rem
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let ta: u32 = a.iter().sum();
            let tb: u32 = b.iter().sum();
            tb.cmp(&ta).then(b.cmp(a))
        });
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                if mag.denom().is_one() {
                    parts.push(mag.numer().to_string());
                } else {
                    parts.push(format!("{}/{}", mag.numer(), mag.denom()));
                }
            }
            for (idx, &k) in e.iter().enumerate() {
                if k == 1 {
                    parts.push(self.vars[idx].clone());
                } else if k > 1 {
                    parts.push(format!("{}^{}", self.vars[idx], k));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn q(text: &str, names: &[&str]) -> SparsePolynomial {
        parse_polynomial(text, CharSpec::Zero, &vars(names)).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let v = vars(&["x", "y"]);
        let x = SparsePolynomial::variable(CharSpec::Zero, &v, 0);
        let y = SparsePolynomial::variable(CharSpec::Zero, &v, 1);
        let f = x.add(&y).pow(2);
        assert_eq!(f, q("x^2 + 2*x*y + y^2", &["x", "y"]));
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn char_two_collapses_cross_terms() {
        let v = vars(&["x", "y"]);
        let f = parse_polynomial("x + y", CharSpec::Prime(2), &v).unwrap();
        let sq = f.pow(2);
        assert_eq!(sq, parse_polynomial("x^2 + y^2", CharSpec::Prime(2), &v).unwrap());
    }

    #[test]
    fn derivative_and_substitution() {
        let f = q("x^3 - 3*x*y + 2", &["x", "y"]);
        assert_eq!(f.partial_derivative(0), q("3*x^2 - 3*y", &["x", "y"]));
        let at_zero = f.eval_var_at_zero(0);
        assert_eq!(at_zero, q("-3*x*y + 2", &["x", "y"]).eval_var_at_zero(0));
        let g = q("y + 1", &["x", "y"]);
        let sub = q("x^2", &["x", "y"]).substitute(0, &g);
        assert_eq!(sub, q("y^2 + 2*y + 1", &["x", "y"]));
    }

    #[test]
    fn exact_division() {
        let f = q("x^2 - y^2", &["x", "y"]);
        let g = q("x - y", &["x", "y"]);
        assert_eq!(f.exact_div(&g).unwrap(), q("x + y", &["x", "y"]));
        assert!(f.exact_div(&q("x + 1", &["x", "y"])).is_none());
    }

    #[test]
    fn gcd_univariate() {
        let f = q("x^2 - 1", &["x"]);
        let g = q("x^2 - 2*x + 1", &["x"]);
        assert_eq!(poly_gcd(&f, &g), q("x - 1", &["x"]));
    }

    #[test]
    fn gcd_bivariate() {
        let f = q("x^2*y - y^3", &["x", "y"]);
        let g = q("x^2 + 2*x*y + y^2", &["x", "y"]);
        let d = poly_gcd(&f, &g);
        assert_eq!(d, q("x + y", &["x", "y"]));
    }

    #[test]
    fn gcd_coprime_is_constant() {
        let f = q("x*y - 1", &["x", "y"]);
        let g = q("x + y", &["x", "y"]);
        assert!(poly_gcd(&f, &g).is_constant());
    }

    #[test]
    fn gcd_over_f2() {
        let v = vars(&["x", "y"]);
        let f = parse_polynomial("x^2 + y^2", CharSpec::Prime(2), &v).unwrap();
        let g = parse_polynomial("x + y", CharSpec::Prime(2), &v).unwrap();
        // x^2 + y^2 = (x + y)^2 over F_2.
        assert_eq!(poly_gcd(&f, &g), g);
    }

    #[test]
    fn display_round_trip() {
        let f = q("x*y - x^6 - y^6", &["x", "y"]);
        let text = f.to_string();
        assert_eq!(text, "-x^6 - y^6 + x*y");
        assert_eq!(q(&text, &["x", "y"]), f);
    }

    #[test]
    fn embed_into_larger_ring() {
        let f = q("t^2 + 1", &["t"]);
        let g = f.embed(&vars(&["t", "T"]));
        assert_eq!(g.degree_in(0), 2);
        assert_eq!(g.degree_in(1), 0);
    }
}
