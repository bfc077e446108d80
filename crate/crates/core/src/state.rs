use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::predicate::Predicate;
use crate::rational::{self, Prob};
use crate::space::Space;

/// A probability distribution over a finite space.
///
/// Weights are stored for every element in space order, zeros included, and
/// always sum to exactly one.
#[derive(Clone, PartialEq, Eq)]
pub struct State {
    space: Space,
    weights: Vec<Prob>,
}

/// Which factor of a product space to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

impl State {
    /// Builds a state from `(element, weight)` pairs. Unlisted elements get
    /// weight zero.
    pub fn new<S: AsRef<str>>(space: &Space, weights: impl IntoIterator<Item = (S, Prob)>) -> Result<Self> {
        let values = collect_entries(space, weights)?;
        Self::from_weights(space, values)
    }

    /// Builds a state from a full weight vector in space order.
    pub fn from_weights(space: &Space, weights: Vec<Prob>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::SpaceMismatch {
                expected: format!("{} ({} elements)", space, space.len()),
                found: format!("{} weights", weights.len()),
            });
        }
        for (i, w) in weights.iter().enumerate() {
            if !rational::in_unit_interval(w) {
                return Err(Error::ValueOutOfRange {
                    element: space.element(i).to_string(),
                    value: w.clone(),
                });
            }
        }
        let sum: Prob = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::WeightSumNotOne { sum });
        }
        Ok(State {
            space: space.clone(),
            weights,
        })
    }

    /// Construction for weights already known to be a distribution.
    pub(crate) fn from_normalized(space: &Space, weights: Vec<Prob>) -> Self {
        debug_assert_eq!(weights.len(), space.len());
        debug_assert!(weights.iter().sum::<Prob>().is_one());
        State {
            space: space.clone(),
            weights,
        }
    }

    /// `1|x>`
    pub fn point(space: &Space, element: &str) -> Result<Self> {
        let i = space.index_of(element)?;
        Ok(Self::point_at(space, i))
    }

    pub(crate) fn point_at(space: &Space, index: usize) -> Self {
        let mut weights = vec![Prob::zero(); space.len()];
        weights[index] = Prob::one();
        State {
            space: space.clone(),
            weights,
        }
    }

    pub fn uniform(space: &Space) -> Self {
        let w = rational::ratio(1, space.len() as i64);
        State {
            space: space.clone(),
            weights: vec![w; space.len()],
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn weights(&self) -> &[Prob] {
        &self.weights
    }

    pub fn weight(&self, element: &str) -> Result<&Prob> {
        Ok(&self.weights[self.space.index_of(element)?])
    }

    pub fn has_full_support(&self) -> bool {
        self.weights.iter().all(rational::is_positive)
    }

    /// `σ ⊨ p`, the expected value of `p`.
    pub fn validity(&self, predicate: &Predicate) -> Result<Prob> {
        self.space.ensure_same(predicate.space())?;
        Ok(self
            .weights
            .iter()
            .zip(predicate.values())
            .map(|(w, v)| w * v)
            .sum())
    }

    /// `σ|_p`: pointwise product with `p`, renormalized.
    pub fn condition(&self, predicate: &Predicate) -> Result<State> {
        let validity = self.validity(predicate)?;
        if validity.is_zero() {
            return Err(Error::ZeroValidity);
        }
        let weights = self
            .weights
            .iter()
            .zip(predicate.values())
            .map(|(w, v)| w * v / &validity)
            .collect();
        Ok(State::from_normalized(&self.space, weights))
    }

    /// `σ ⊗ ω` on the product space of the two spaces.
    pub fn product(&self, other: &State) -> State {
        let space = Space::product(&self.space, &other.space);
        let weights = self
            .weights
            .iter()
            .flat_map(|l| other.weights.iter().map(move |r| l * r))
            .collect();
        State::from_normalized(&space, weights)
    }

    pub fn marginal(&self, side: Side) -> Result<State> {
        let (left, right) = self
            .space
            .factors()
            .ok_or_else(|| Error::NotAProductSpace(self.space.name().to_string()))?;
        let (target, width) = match side {
            Side::First => (left, right.len()),
            Side::Second => (right, right.len()),
        };
        let mut weights = vec![Prob::zero(); target.len()];
        for (i, w) in self.weights.iter().enumerate() {
            let slot = match side {
                Side::First => i / width,
                Side::Second => i % width,
            };
            weights[slot] += w;
        }
        Ok(State::from_normalized(target, weights))
    }

    /// Ket-sum rendering such as `1/100|d> + 99/100|~d>`.
    pub fn render(&self, show_zeros: bool) -> String {
        self.render_with(show_zeros, rational::fraction)
    }

    pub fn render_decimal(&self, digits: usize, show_zeros: bool) -> String {
        self.render_with(show_zeros, |w| rational::decimal(w, digits))
    }

    fn render_with(&self, show_zeros: bool, fmt: impl Fn(&Prob) -> String) -> String {
        let terms: Vec<String> = self
            .weights
            .iter()
            .zip(self.space.elements())
            .filter(|(w, _)| show_zeros || !w.is_zero())
            .map(|(w, e)| format!("{}|{}>", fmt(w), e))
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State[{}]({})", self.space.name(), self.render(true))
    }
}

pub(crate) fn collect_entries<S: AsRef<str>>(
    space: &Space,
    entries: impl IntoIterator<Item = (S, Prob)>,
) -> Result<Vec<Prob>> {
    let mut values = vec![Prob::zero(); space.len()];
    let mut seen = vec![false; space.len()];
    for (element, value) in entries {
        let element = element.as_ref();
        let i = space.index_of(element)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::DuplicateElement {
                context: space.name().to_string(),
                element: element.to_string(),
            });
        }
        values[i] = value;
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn disease() -> Space {
        Space::new("disease", ["d", "~d"]).unwrap()
    }

    #[test]
    fn make_state_examples() {
        let prior = State::new(&disease(), [("d", ratio(1, 100)), ("~d", ratio(99, 100))]).unwrap();
        assert_eq!(prior.render(false), "1/100|d> + 99/100|~d>");

        let xyz = Space::new("xyz", ["x", "y", "z"]).unwrap();
        let point = State::new(&xyz, [("x", ratio(1, 1))]).unwrap();
        assert_eq!(point, State::point(&xyz, "x").unwrap());
        assert_eq!(point.render(false), "1|x>");
        assert_eq!(point.render(true), "1|x> + 0|y> + 0|z>");

        let err = State::new(&disease(), [("d", ratio(1, 2)), ("~d", ratio(1, 3))]).unwrap_err();
        assert_eq!(err, Error::WeightSumNotOne { sum: ratio(5, 6) });
        assert_eq!(err.to_string(), "weights sum to 5/6, expected 1");
    }

    #[test]
    fn make_state_errors() {
        assert!(matches!(
            State::new(&disease(), [("q", ratio(1, 1))]),
            Err(Error::UnknownElement { .. })
        ));
        assert!(matches!(
            State::new(&disease(), [("d", ratio(1, 2)), ("d", ratio(1, 2))]),
            Err(Error::DuplicateElement { .. })
        ));
        assert!(matches!(
            State::new(&disease(), [("d", ratio(3, 2)), ("~d", ratio(-1, 2))]),
            Err(Error::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn validity_and_conditioning() {
        let xyz = Space::new("xyz", ["x", "y", "z"]).unwrap();
        let sigma = State::new(&xyz, [("x", ratio(1, 2)), ("y", ratio(1, 3)), ("z", ratio(1, 6))]).unwrap();
        let p = Predicate::new(&xyz, [("x", ratio(1, 4)), ("y", ratio(1, 1)), ("z", ratio(0, 1))]).unwrap();
        assert_eq!(sigma.validity(&Predicate::truth(&xyz)).unwrap(), ratio(1, 1));
        assert_eq!(
            State::point(&xyz, "x").unwrap().validity(&p).unwrap(),
            ratio(1, 4)
        );
        assert_eq!(sigma.condition(&Predicate::truth(&xyz)).unwrap(), sigma);
        let half = p.scale(&ratio(1, 2)).unwrap();
        assert_eq!(sigma.condition(&half).unwrap(), sigma.condition(&p).unwrap());

        let zero = Predicate::point(&xyz, "z").unwrap();
        let x_only = State::point(&xyz, "x").unwrap();
        assert_eq!(x_only.condition(&zero), Err(Error::ZeroValidity));
        let other = Space::new("abc", ["a", "b", "c"]).unwrap();
        assert!(matches!(
            sigma.validity(&Predicate::truth(&other)),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn product_and_marginals() {
        let b = Space::new("burglar", ["b", "~b"]).unwrap();
        let e = Space::new("quake", ["e", "~e"]).unwrap();
        let pb = State::new(&b, [("b", ratio(1, 100)), ("~b", ratio(99, 100))]).unwrap();
        let pe = State::new(&e, [("e", ratio(1, 1_000_000)), ("~e", ratio(999_999, 1_000_000))]).unwrap();
        let joint = pb.product(&pe);
        assert_eq!(
            joint.weights(),
            [
                ratio(1, 100_000_000),
                ratio(999_999, 100_000_000),
                ratio(99, 100_000_000),
                ratio(98_999_901, 100_000_000),
            ]
        );
        assert_eq!(joint.marginal(Side::First).unwrap(), pb);
        assert_eq!(joint.marginal(Side::Second).unwrap(), pe);
        assert!(matches!(pb.marginal(Side::First), Err(Error::NotAProductSpace(_))));

        let embedded = pb.product(&State::point(&e, "e").unwrap());
        assert_eq!(embedded.render(false), "1/100|b,e> + 99/100|~b,e>");
    }
}
