//! Rees valuations of monomial ideals, the asymptotic Samuel function,
//! and the ideal of elements with Samuel value strictly above one.
//!
//! For a monomial ideal the Rees valuations are the monomial valuations
//! attached to the Newton-polyhedron facets with positive offset;
//! coordinate facets with offset zero carry no valuation.

use num::rational::Rational64;

use crate::ideal::{facet_search_box, IdealError, MonomialIdeal, UpsetClosure};
use crate::lattice::ExponentVector;

/// A monomial valuation `v(x^gamma) = <normal, gamma>` together with its
/// value on the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    pub normal: Vec<i64>,
    pub ideal_value: i64,
}

impl MonomialValuation {
    pub fn value_of(&self, gamma: &ExponentVector) -> i64 {
        self.normal
            .iter()
            .zip(gamma.coords())
            .map(|(a, b)| a * b)
            .sum()
    }
}

fn require_usable(ideal: &MonomialIdeal) -> Result<(), IdealError> {
    if ideal.is_zero() {
        return Err(IdealError::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(IdealError::UnitIdeal);
    }
    Ok(())
}

/// The Rees valuations of a proper nonzero monomial ideal, in the
/// deterministic facet order.
pub fn rees_valuations(ideal: &MonomialIdeal) -> Result<Vec<MonomialValuation>, IdealError> {
    require_usable(ideal)?;
    let polyhedron = ideal.newton()?;
    Ok(polyhedron
        .facets()
        .iter()
        .filter(|f| f.offset > 0)
        .map(|f| MonomialValuation {
            normal: f.normal.clone(),
            ideal_value: f.offset,
        })
        .collect())
}

/// Asymptotic Samuel value of `gamma`: the minimum over Rees valuations
/// of `v(gamma) / v(I)`, as an exact rational.
pub fn samuel_value(
    ideal: &MonomialIdeal,
    gamma: &ExponentVector,
) -> Result<Rational64, IdealError> {
    let valuations = rees_valuations(ideal)?;
    debug_assert!(!valuations.is_empty(), "proper nonzero ideals have a Rees facet");
    Ok(valuations
        .iter()
        .map(|v| Rational64::new(v.value_of(gamma), v.ideal_value))
        .min()
        .unwrap())
}

/// Finite-stage approximation `ord_I(n * gamma) / n` of the Samuel value.
pub fn samuel_estimate(
    ideal: &MonomialIdeal,
    gamma: &ExponentVector,
    n: u64,
) -> Result<Rational64, IdealError> {
    assert!(n >= 1, "stage must be positive");
    if ideal.is_unit() {
        return Err(IdealError::UnitIdeal);
    }
    let ord = ideal.ord(&gamma.scale(n as i64))?.finite();
    Ok(Rational64::new(ord as i64, n as i64))
}

/// The ideal of exponents with Samuel value strictly greater than one:
/// `<normal, gamma> >= ideal_value + 1` for every Rees valuation.
pub fn i_greater_detailed(ideal: &MonomialIdeal) -> Result<UpsetClosure, IdealError> {
    require_usable(ideal)?;
    let polyhedron = ideal.newton()?;
    let valuations = rees_valuations(ideal)?;
    let bbox = facet_search_box(&polyhedron, 1);
    let pred = |v: &[i64]| {
        valuations.iter().all(|val| {
            let value: i64 = val.normal.iter().zip(v).map(|(a, b)| a * b).sum();
            value > val.ideal_value
        })
    };
    let closure = ideal.upset_closure(&bbox, pred);
    debug_assert!(closure.certified);
    Ok(closure)
}

pub fn i_greater(ideal: &MonomialIdeal) -> Result<MonomialIdeal, IdealError> {
    Ok(i_greater_detailed(ideal)?.ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec()).unwrap()
    }

    fn ideal(dim: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| ev(g)).collect()).unwrap()
    }

    fn running_example() -> MonomialIdeal {
        ideal(2, &[&[6, 0], &[2, 4], &[0, 6]])
    }

    #[test]
    fn rees_valuations_examples() {
        assert_eq!(
            rees_valuations(&running_example()).unwrap(),
            vec![MonomialValuation { normal: vec![1, 1], ideal_value: 6 }]
        );
        assert_eq!(
            rees_valuations(&ideal(1, &[&[1]])).unwrap(),
            vec![MonomialValuation { normal: vec![1], ideal_value: 1 }]
        );
        assert_eq!(
            rees_valuations(&ideal(2, &[&[2, 0], &[0, 2]])).unwrap(),
            vec![MonomialValuation { normal: vec![1, 1], ideal_value: 2 }]
        );
    }

    #[test]
    fn samuel_value_examples() {
        let i = running_example();
        assert_eq!(samuel_value(&i, &ev(&[3, 4])).unwrap(), Rational64::new(7, 6));
        assert_eq!(samuel_value(&i, &ev(&[6, 0])).unwrap(), Rational64::new(1, 1));
        assert_eq!(samuel_value(&i, &ev(&[1, 1])).unwrap(), Rational64::new(1, 3));
    }

    #[test]
    fn samuel_estimate_examples() {
        let m = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            samuel_estimate(&m, &ev(&[1, 1]), 10).unwrap(),
            Rational64::new(2, 1)
        );
        let i = running_example();
        assert_eq!(
            samuel_estimate(&i, &ev(&[3, 4]), 6).unwrap(),
            Rational64::new(7, 6)
        );
        assert_eq!(
            samuel_estimate(&i, &ev(&[1, 1]), 1).unwrap(),
            Rational64::new(0, 1)
        );
    }

    #[test]
    fn i_greater_examples() {
        let i = running_example();
        let expected = ideal(
            2,
            &[&[7, 0], &[6, 1], &[5, 2], &[4, 3], &[3, 4], &[2, 5], &[1, 6], &[0, 7]],
        );
        assert_eq!(i_greater(&i).unwrap(), expected);

        assert_eq!(i_greater(&ideal(1, &[&[1]])).unwrap(), ideal(1, &[&[2]]));

        let sq = ideal(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(
            i_greater(&sq).unwrap(),
            ideal(2, &[&[3, 0], &[2, 1], &[1, 2], &[0, 3]])
        );
    }

    #[test]
    fn two_facet_valuation_data() {
        // (x^4, xy, y^4) has two oblique facets, hence two Rees
        // valuations, both of value 4.
        let i = ideal(2, &[&[4, 0], &[1, 1], &[0, 4]]);
        assert_eq!(
            rees_valuations(&i).unwrap(),
            vec![
                MonomialValuation { normal: vec![1, 3], ideal_value: 4 },
                MonomialValuation { normal: vec![3, 1], ideal_value: 4 },
            ]
        );
        assert_eq!(samuel_value(&i, &ev(&[2, 2])).unwrap(), Rational64::new(2, 1));
        assert_eq!(samuel_value(&i, &ev(&[0, 4])).unwrap(), Rational64::new(1, 1));
        // The minimum runs over both valuations.
        assert_eq!(samuel_value(&i, &ev(&[0, 12])).unwrap(), Rational64::new(3, 1));
        assert_eq!(
            i_greater(&i).unwrap(),
            ideal(2, &[&[0, 5], &[1, 2], &[2, 1], &[5, 0]])
        );
        // This staircase is already integrally closed.
        assert_eq!(i.integral_closure().unwrap(), i);
    }

    #[test]
    fn i_greater_is_integrally_closed() {
        for i in [
            running_example(),
            ideal(2, &[&[2, 0], &[0, 2]]),
            ideal(2, &[&[4, 0], &[3, 1], &[1, 3], &[0, 4]]),
        ] {
            let ig = i_greater(&i).unwrap();
            assert_eq!(ig.integral_closure().unwrap(), ig);
        }
    }

    #[test]
    fn i_greater_matches_closure_of_ideal() {
        let i = running_example();
        let closure = i.integral_closure().unwrap();
        assert_eq!(i_greater(&i).unwrap(), i_greater(&closure).unwrap());
    }

    #[test]
    fn samuel_value_one_characterizes_closure() {
        let i = running_example();
        let closure = i.integral_closure().unwrap();
        for a in 0..9 {
            for b in 0..9 {
                let v = ev(&[a, b]);
                let in_closure = closure.contains(&v).unwrap();
                let value = samuel_value(&i, &v).unwrap();
                assert_eq!(in_closure, value >= Rational64::new(1, 1), "{v:?}");
            }
        }
    }
}
