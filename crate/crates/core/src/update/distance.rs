use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{self, Prob};
use crate::state::State;

/// `Σ_x |σ(x) − σ'(x)|`, without the factor 1/2, so disjoint point masses
/// are at distance 2.
pub fn total_variation(a: &State, b: &State) -> Result<Prob> {
    a.space().ensure_same(b.space())?;
    Ok(a.weights()
        .iter()
        .zip(b.weights())
        .map(|(x, y)| (x - y).abs())
        .sum())
}

/// Convex mixture `s · jr + (1 − s) · pr` of two posteriors.
pub fn blend_update(weight: &Prob, jeffrey: &State, pearl: &State) -> Result<State> {
    jeffrey.space().ensure_same(pearl.space())?;
    if !rational::in_unit_interval(weight) {
        return Err(Error::ValueOutOfRange {
            element: "blend weight".into(),
            value: weight.clone(),
        });
    }
    let rest = rational::one() - weight;
    let weights = jeffrey
        .weights()
        .iter()
        .zip(pearl.weights())
        .map(|(j, p)| weight * j + &rest * p)
        .collect();
    Ok(State::from_normalized(jeffrey.space(), weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::space::Space;

    #[test]
    fn distances() {
        let s = Space::new("x", ["x", "y", "z"]).unwrap();
        let u = State::uniform(&s);
        assert_eq!(total_variation(&u, &u).unwrap(), ratio(0, 1));
        let x = State::point(&s, "x").unwrap();
        let y = State::point(&s, "y").unwrap();
        assert_eq!(total_variation(&x, &y).unwrap(), ratio(2, 1));
        assert_eq!(total_variation(&x, &u).unwrap(), ratio(4, 3));
    }

    #[test]
    fn blends() {
        let s = Space::new("disease", ["d", "~d"]).unwrap();
        let jr = State::from_weights(&s, vec![ratio(27162, 220311), ratio(193149, 220311)]).unwrap();
        let pr = State::from_weights(&s, vec![ratio(148, 4702), ratio(4554, 4702)]).unwrap();
        assert_eq!(blend_update(&ratio(1, 1), &jr, &pr).unwrap(), jr);
        assert_eq!(blend_update(&ratio(0, 1), &jr, &pr).unwrap(), pr);
        let half = blend_update(&ratio(1, 2), &jr, &pr).unwrap();
        let expected = ratio(1, 2) * ratio(27162, 220311) + ratio(1, 2) * ratio(148, 4702);
        assert_eq!(half.weight("d").unwrap(), &expected);
        assert!(blend_update(&ratio(2, 1), &jr, &pr).is_err());
    }
}
