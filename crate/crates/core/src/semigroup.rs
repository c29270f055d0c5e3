//! Numerical semigroups and their relative seminormalization and weak
//! normalization.
//!
//! A semigroup with gcd `d` is handled via its scaled copy of gcd one,
//! for which membership is decided exactly by a table up to the
//! Frobenius bound. Saturation repeatedly adjoins the smallest element
//! of the ambient semigroup forced in by the defining rule, rescanning
//! from scratch after each adjunction.

use std::fmt;

use num::integer::{gcd, lcm};

use crate::closure::CharSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemigroupError {
    EmptyGenerators,
    ZeroGenerator,
    NotASubSemigroup,
    GcdNotOne { gcd: u64 },
}

impl fmt::Display for SemigroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupError::EmptyGenerators => write!(f, "generator list must be nonempty"),
            SemigroupError::ZeroGenerator => write!(f, "generators must be positive"),
            SemigroupError::NotASubSemigroup => {
                write!(f, "the first semigroup is not contained in the second")
            }
            SemigroupError::GcdNotOne { gcd } => {
                write!(f, "generators must have gcd 1, found {gcd}")
            }
        }
    }
}

impl std::error::Error for SemigroupError {}

/// A finitely generated additive submonoid of the nonnegative integers.
#[derive(Clone)]
pub struct NumericalSemigroup {
    minimal_gens: Vec<u64>,
    d: u64,
    /// Membership table of the gcd-scaled semigroup; beyond its length,
    /// every scaled value is a member.
    scaled_table: Vec<bool>,
    /// Largest scaled non-member, or -1 when the scaled semigroup is N.
    frobenius_scaled: i64,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.minimal_gens == other.minimal_gens
    }
}

impl Eq for NumericalSemigroup {}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.minimal_gens.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if generators.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let d = generators.iter().fold(0u64, |a, &b| gcd(a, b));
        let scaled: Vec<u64> = generators.iter().map(|g| g / d).collect();
        let min_gen = *scaled.iter().min().unwrap() as usize;

        // Grow the table until a full run of `min_gen` consecutive
        // members appears; adding the smallest generator then keeps
        // everything beyond a member.
        let mut table = vec![false];
        table[0] = true;
        let mut run = 0usize;
        let mut x = 0usize;
        while run < min_gen.max(1) {
            x += 1;
            if x >= table.len() {
                table.resize(x + 1, false);
            }
            let member = scaled
                .iter()
                .any(|&g| x as u64 >= g && table[x - g as usize]);
            table[x] = member;
            run = if member { run + 1 } else { 0 };
            assert!(x < 4_000_000, "semigroup table beyond supported scale");
        }
        let frobenius_scaled = (0..table.len())
            .rev()
            .find(|&i| !table[i])
            .map_or(-1, |i| i as i64);

        let contains_scaled = |y: u64| -> bool {
            if (y as usize) < table.len() {
                table[y as usize]
            } else {
                true
            }
        };
        // Canonical minimal generators: nonzero members not expressible
        // as a sum of two nonzero members. They all lie below the
        // conductor plus the least positive member.
        let bound = (frobenius_scaled + 1) as u64 + min_gen as u64;
        let mut minimal = Vec::new();
        for s in 1..=bound {
            if !contains_scaled(s) {
                continue;
            }
            let reducible = (1..s).any(|m| contains_scaled(m) && contains_scaled(s - m));
            if !reducible {
                minimal.push(s * d);
            }
        }
        Ok(NumericalSemigroup {
            minimal_gens: minimal,
            d,
            scaled_table: table,
            frobenius_scaled,
        })
    }

    /// The natural numbers, as the semigroup generated by 1.
    pub fn natural() -> Self {
        NumericalSemigroup::new(&[1]).unwrap()
    }

    pub fn gcd(&self) -> u64 {
        self.d
    }

    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal_gens
    }

    /// Frobenius number of the gcd-scaled semigroup (`-1` for N).
    pub fn frobenius_scaled(&self) -> i64 {
        self.frobenius_scaled
    }

    pub fn contains(&self, x: u64) -> bool {
        if !x.is_multiple_of(self.d) {
            return false;
        }
        let y = (x / self.d) as usize;
        if y < self.scaled_table.len() {
            self.scaled_table[y]
        } else {
            true
        }
    }

    /// Gaps of the gcd-scaled semigroup.
    pub fn gaps_scaled(&self) -> Vec<u64> {
        (0..self.scaled_table.len())
            .filter(|&i| !self.scaled_table[i])
            .map(|i| i as u64)
            .collect()
    }

    /// Smallest value beyond which every multiple of the gcd is a member.
    fn conductor_unscaled(&self) -> u64 {
        self.d * (self.frobenius_scaled + 1) as u64
    }

    pub fn is_subset_of(&self, other: &NumericalSemigroup) -> bool {
        self.minimal_gens.iter().all(|&g| other.contains(g))
    }

    pub fn adjoin(&self, x: u64) -> NumericalSemigroup {
        let mut gens = self.minimal_gens.clone();
        gens.push(x);
        NumericalSemigroup::new(&gens).expect("positive generators")
    }
}

/// Outcome of a saturation: the closed-up semigroup and the elements
/// adjoined, in adjunction order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationResult {
    pub semigroup: NumericalSemigroup,
    pub adjoined: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rule {
    TwoThree,
    TwoThreeAndPrime(u64),
}

fn smallest_candidate(current: &NumericalSemigroup, ambient: &NumericalSemigroup, rule: Rule) -> Option<u64> {
    // Beyond both conductors all memberships are periodic, so a scan up
    // to the common period past the conductors is exhaustive.
    let base = current.conductor_unscaled().max(ambient.conductor_unscaled());
    let period = match rule {
        Rule::TwoThree => lcm(current.gcd(), ambient.gcd()),
        Rule::TwoThreeAndPrime(p) => lcm(
            lcm(current.gcd(), ambient.gcd()),
            current.gcd() / gcd(current.gcd(), p),
        ),
    };
    let bound = base + period + 1;
    for x in 1..=bound {
        if current.contains(x) || !ambient.contains(x) {
            continue;
        }
        if current.contains(2 * x) && current.contains(3 * x) {
            return Some(x);
        }
        if let Rule::TwoThreeAndPrime(p) = rule {
            if current.contains(p * x) {
                return Some(x);
            }
        }
    }
    None
}

fn saturate(
    s: &NumericalSemigroup,
    t: &NumericalSemigroup,
    rule: Rule,
) -> Result<SaturationResult, SemigroupError> {
    if !s.is_subset_of(t) {
        return Err(SemigroupError::NotASubSemigroup);
    }
    let mut current = s.clone();
    let mut adjoined = Vec::new();
    while let Some(x) = smallest_candidate(&current, t, rule) {
        current = current.adjoin(x);
        adjoined.push(x);
        assert!(adjoined.len() <= 100_000, "saturation beyond supported scale");
    }
    Ok(SaturationResult {
        semigroup: current,
        adjoined,
    })
}

/// Smallest intermediate semigroup of `s` in `t` closed under the rule
/// `2x, 3x in U and x in T implies x in U`.
pub fn relative_seminormalization(
    s: &NumericalSemigroup,
    t: &NumericalSemigroup,
) -> Result<SaturationResult, SemigroupError> {
    saturate(s, t, Rule::TwoThree)
}

/// Relative weak normalization: in characteristic zero this is the
/// seminormalization; in characteristic `p` the rule
/// `p*x in U and x in T implies x in U` is also closed under.
pub fn relative_weak_normalization(
    s: &NumericalSemigroup,
    t: &NumericalSemigroup,
    char_spec: CharSpec,
) -> Result<SaturationResult, SemigroupError> {
    match char_spec {
        CharSpec::Zero => saturate(s, t, Rule::TwoThree),
        CharSpec::Prime(p) => saturate(s, t, Rule::TwoThreeAndPrime(p)),
    }
}

/// Seminormalization of a gcd-one numerical semigroup inside N.
pub fn ns_seminormalize(s: &NumericalSemigroup) -> Result<SaturationResult, SemigroupError> {
    if s.gcd() != 1 {
        return Err(SemigroupError::GcdNotOne { gcd: s.gcd() });
    }
    relative_seminormalization(s, &NumericalSemigroup::natural())
}
