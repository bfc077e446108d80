use std::fmt;

use num_traits::{One, Zero};

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::predicate::Predicate;
use crate::rational::{self, Prob};
use crate::space::Space;
use crate::state::State;

/// A nonempty proper subset of a space.
#[derive(Clone, PartialEq, Eq)]
pub struct Event {
    space: Space,
    members: Vec<bool>,
}

impl Event {
    pub fn new<S: AsRef<str>>(space: &Space, elements: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut members = vec![false; space.len()];
        for e in elements {
            let i = space.index_of(e.as_ref())?;
            if std::mem::replace(&mut members[i], true) {
                return Err(Error::DuplicateElement {
                    context: "event".to_string(),
                    element: e.as_ref().to_string(),
                });
            }
        }
        if !members.contains(&true) {
            return Err(Error::InvalidEvent("event is empty".into()));
        }
        if members.iter().all(|&m| m) {
            return Err(Error::InvalidEvent(format!(
                "event covers all of `{}`",
                space.name()
            )));
        }
        Ok(Event {
            space: space.clone(),
            members,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn contains(&self, element: &str) -> bool {
        self.space
            .index_of(element)
            .map(|i| self.members[i])
            .unwrap_or(false)
    }

    pub fn members(&self) -> impl Iterator<Item = &str> {
        self.space
            .elements()
            .iter()
            .zip(&self.members)
            .filter(|(_, &m)| m)
            .map(|(e, _)| e.as_str())
    }

    pub fn indicator(&self) -> Predicate {
        Predicate::indicator_mask(&self.space, &self.members)
    }

    pub fn complement_indicator(&self) -> Predicate {
        let mask: Vec<bool> = self.members.iter().map(|m| !m).collect();
        Predicate::indicator_mask(&self.space, &mask)
    }

    /// The two-block partition `{E, ¬E}` as a deterministic channel onto
    /// the space `{E, ~E}`.
    pub fn partition_channel(&self) -> Channel {
        let blocks = Space::new(format!("{}|{}", self.space.name(), self), ["E", "~E"])
            .expect("two distinct block names");
        let targets: Vec<usize> = self.members.iter().map(|&m| if m { 0 } else { 1 }).collect();
        Channel::lift_indices(&self.space, &blocks, &targets)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.members().collect::<Vec<_>>().join(", "))
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event[{}]{}", self.space.name(), self)
    }
}

/// Jeffrey's rule along a deterministic channel, as the convex combination
/// `Σ_i ρ(i) · ω|_{1_{U_i}}` of the prior conditioned on each block.
///
/// Blocks with `ρ(i) = 0` are skipped, so an empty block is only an error
/// when the evidence puts mass on it.
pub fn partition_jeffrey(function: &Channel, prior: &State, evidence: &State) -> Result<State> {
    function.domain().ensure_same(prior.space())?;
    function.codomain().ensure_same(evidence.space())?;
    let targets = function.as_function()?;
    let blocks = function.codomain();
    let mut weights = vec![Prob::zero(); prior.space().len()];
    for (i, r) in evidence.weights().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let mask: Vec<bool> = targets.iter().map(|&t| t == i).collect();
        let conditioned = prior
            .condition(&Predicate::indicator_mask(prior.space(), &mask))
            .map_err(|_| Error::EmptyBlockWithMass {
                block: blocks.element(i).to_string(),
            })?;
        for (acc, w) in weights.iter_mut().zip(conditioned.weights()) {
            *acc += r * w;
        }
    }
    Ok(State::from_normalized(prior.space(), weights))
}

/// "All things considered": the posterior gives the event `E` validity
/// exactly `q`.
pub fn atc_update(prior: &State, event: &Event, strength: &Prob) -> Result<State> {
    prior.space().ensure_same(event.space())?;
    if !rational::in_unit_interval(strength) {
        return Err(Error::ValueOutOfRange {
            element: "strength".into(),
            value: strength.clone(),
        });
    }
    let inside = prior.validity(&event.indicator())?;
    let outside = rational::one() - &inside;
    let needs_inside = !strength.is_zero();
    let needs_outside = !strength.is_one();
    if (needs_inside && inside.is_zero()) || (needs_outside && outside.is_zero()) {
        return Err(Error::DegenerateEvent {
            event: event.to_string(),
        });
    }
    let rest = rational::one() - strength;
    let weights = prior
        .weights()
        .iter()
        .zip(&event.members)
        .map(|(w, &m)| {
            if m {
                if needs_inside { strength * w / &inside } else { Prob::zero() }
            } else if needs_outside {
                &rest * w / &outside
            } else {
                Prob::zero()
            }
        })
        .collect();
    Ok(State::from_normalized(prior.space(), weights))
}

/// "Nothing else considered": evidence on `E` given as a Bayes factor `k`.
pub fn nec_update(prior: &State, event: &Event, factor: &Prob) -> Result<State> {
    prior.space().ensure_same(event.space())?;
    if !rational::is_positive(factor) {
        return Err(Error::NonPositiveFactor(factor.clone()));
    }
    let inside = prior.validity(&event.indicator())?;
    let outside = rational::one() - &inside;
    let denominator = factor * &inside + &outside;
    if denominator.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    let weights = prior
        .weights()
        .iter()
        .zip(&event.members)
        .map(|(w, &m)| if m { factor * w / &denominator } else { w / &denominator })
        .collect();
    Ok(State::from_normalized(prior.space(), weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::update::{jeffrey_update, pearl_update};

    fn halpern() -> (State, Channel, State) {
        let colors = Space::new("color", ["r", "b", "g", "y"]).unwrap();
        let groups = Space::new("group", ["gb", "ry"]).unwrap();
        let sigma = State::new(
            &colors,
            [("r", ratio(1, 5)), ("b", ratio(1, 5)), ("g", ratio(1, 5)), ("y", ratio(2, 5))],
        )
        .unwrap();
        let c = Channel::lift(&colors, &groups, [("r", "ry"), ("b", "gb"), ("g", "gb"), ("y", "ry")]).unwrap();
        let rho = State::new(&groups, [("gb", ratio(7, 10)), ("ry", ratio(3, 10))]).unwrap();
        (sigma, c, rho)
    }

    #[test]
    fn halpern_partition() {
        let (sigma, c, rho) = halpern();
        let post = partition_jeffrey(&c, &sigma, &rho).unwrap();
        assert_eq!(post.weights(), [ratio(1, 10), ratio(7, 20), ratio(7, 20), ratio(1, 5)]);
        assert_eq!(post, jeffrey_update(&sigma, &c, &rho).unwrap());
        assert_eq!(c.transform_state(&post).unwrap(), rho);
        let predicted = c.transform_state(&sigma).unwrap();
        assert_eq!(partition_jeffrey(&c, &sigma, &predicted).unwrap(), sigma);
    }

    #[test]
    fn partition_needs_mass_on_used_blocks() {
        let (_, c, rho) = halpern();
        let only_red = State::point(c.domain(), "r").unwrap();
        assert_eq!(
            partition_jeffrey(&c, &only_red, &rho),
            Err(Error::EmptyBlockWithMass { block: "gb".into() })
        );
        let ry = State::point(c.codomain(), "ry").unwrap();
        assert_eq!(partition_jeffrey(&c, &only_red, &ry).unwrap(), only_red);
    }

    #[test]
    fn partition_rejects_stochastic_channels() {
        let (sigma, _, _) = halpern();
        let groups = Space::new("group", ["gb", "ry"]).unwrap();
        let noisy = Channel::new(sigma.space(), &groups, vec![State::uniform(&groups); 4]).unwrap();
        assert!(matches!(
            partition_jeffrey(&noisy, &sigma, &State::uniform(&groups)),
            Err(Error::NotDeterministic { .. })
        ));
    }

    #[test]
    fn events() {
        let s = Space::new("x", ["a", "b", "c"]).unwrap();
        assert!(Event::new(&s, Vec::<&str>::new()).is_err());
        assert!(Event::new(&s, ["a", "b", "c"]).is_err());
        assert!(Event::new(&s, ["a", "a"]).is_err());
        let e = Event::new(&s, ["c", "a"]).unwrap();
        assert_eq!(e.to_string(), "{a, c}");
        assert!(e.contains("a") && !e.contains("b"));
    }

    #[test]
    fn atc_matches_two_block_partition() {
        let ds = Space::new("disease", ["d", "~d"]).unwrap();
        let prior = State::new(&ds, [("d", ratio(1, 100)), ("~d", ratio(99, 100))]).unwrap();
        let event = Event::new(&ds, ["d"]).unwrap();
        let q = ratio(8, 10);
        let atc = atc_update(&prior, &event, &q).unwrap();
        let f = event.partition_channel();
        let rho = State::from_weights(f.codomain(), vec![q.clone(), ratio(2, 10)]).unwrap();
        assert_eq!(atc, partition_jeffrey(&f, &prior, &rho).unwrap());
        assert_eq!(atc.validity(&event.indicator()).unwrap(), q);

        let unchanged = prior.validity(&event.indicator()).unwrap();
        assert_eq!(atc_update(&prior, &event, &unchanged).unwrap(), prior);
        assert_eq!(
            atc_update(&prior, &event, &ratio(1, 1)).unwrap(),
            prior.condition(&event.indicator()).unwrap()
        );
    }

    #[test]
    fn atc_degenerate() {
        let ds = Space::new("disease", ["d", "~d"]).unwrap();
        let certain = State::point(&ds, "d").unwrap();
        let event = Event::new(&ds, ["d"]).unwrap();
        assert!(matches!(
            atc_update(&certain, &event, &ratio(1, 2)),
            Err(Error::DegenerateEvent { .. })
        ));
        assert_eq!(atc_update(&certain, &event, &ratio(1, 1)).unwrap(), certain);
        assert!(atc_update(&certain, &event, &ratio(0, 1)).is_err());
        assert!(atc_update(&certain, &event, &ratio(3, 2)).is_err());
    }

    #[test]
    fn nec_cases() {
        let (sigma, _, _) = halpern();
        let event = Event::new(sigma.space(), ["b", "g"]).unwrap();
        assert_eq!(nec_update(&sigma, &event, &ratio(1, 1)).unwrap(), sigma);
        assert!(matches!(
            nec_update(&sigma, &event, &ratio(0, 1)),
            Err(Error::NonPositiveFactor(_))
        ));
        // factor 7/3 is the Halpern glimpse read as a likelihood ratio
        let f = event.partition_channel();
        let p = Predicate::from_values(f.codomain(), vec![ratio(7, 10), ratio(3, 10)]).unwrap();
        let nec = nec_update(&sigma, &event, &ratio(7, 3)).unwrap();
        assert_eq!(nec, pearl_update(&sigma, &f, &p).unwrap());
        assert_eq!(nec.weights(), [ratio(3, 23), ratio(7, 23), ratio(7, 23), ratio(6, 23)]);
    }
}
