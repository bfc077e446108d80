use num_traits::Zero;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::predicate::Predicate;
use crate::rational::{self, Prob};
use crate::state::State;

/// How strictly Jeffrey's rule enforces the support of `c ≫ σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Support {
    /// `c ≫ σ` must have full support.
    #[default]
    Strict,
    /// Only the codomain elements where the evidence state is positive need
    /// positive predicted mass.
    Relaxed,
}

/// Bayesian inversion `c†_σ : Y ⇸ X` with rows `σ|_{c ≪ 1_y}`.
///
/// Fails with [`Error::NotFullSupport`] naming the first `y` where
/// `(c ≫ σ)(y) = 0`.
pub fn dagger(channel: &Channel, prior: &State) -> Result<Channel> {
    let predicted = channel.transform_state(prior)?;
    let rows = (0..channel.codomain().len())
        .map(|y| inverted_row(channel, prior, &predicted, y))
        .collect::<Result<Vec<_>>>()?;
    Channel::new(channel.codomain(), channel.domain(), rows)
}

fn inverted_row(channel: &Channel, prior: &State, predicted: &State, y: usize) -> Result<State> {
    let mass = &predicted.weights()[y];
    if mass.is_zero() {
        return Err(Error::NotFullSupport {
            element: channel.codomain().element(y).to_string(),
        });
    }
    let weights = prior
        .weights()
        .iter()
        .enumerate()
        .map(|(x, w)| w * channel.entry(x, y) / mass)
        .collect();
    Ok(State::from_normalized(channel.domain(), weights))
}

/// Pearl's rule: `σ|_{c ≪ q}`.
pub fn pearl_update(prior: &State, channel: &Channel, evidence: &Predicate) -> Result<State> {
    prior.condition(&channel.transform_predicate(evidence)?)
}

/// Jeffrey's rule: `c†_σ ≫ ρ`, with the strict full-support requirement.
pub fn jeffrey_update(prior: &State, channel: &Channel, evidence: &State) -> Result<State> {
    jeffrey_update_with(prior, channel, evidence, Support::Strict)
}

pub fn jeffrey_update_with(
    prior: &State,
    channel: &Channel,
    evidence: &State,
    support: Support,
) -> Result<State> {
    channel.codomain().ensure_same(evidence.space())?;
    match support {
        Support::Strict => dagger(channel, prior)?.transform_state(evidence),
        Support::Relaxed => {
            let predicted = channel.transform_state(prior)?;
            let mut weights = vec![Prob::zero(); prior.space().len()];
            for (y, r) in evidence.weights().iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let row = inverted_row(channel, prior, &predicted, y)?;
                for (acc, w) in weights.iter_mut().zip(row.weights()) {
                    *acc += r * w;
                }
            }
            Ok(State::from_normalized(prior.space(), weights))
        }
    }
}

/// The predicate `ρ/τ`, divided by its maximum so the largest value is 1.
pub fn state_to_predicate_ratio(evidence: &State, reference: &State) -> Result<Predicate> {
    reference.space().ensure_same(evidence.space())?;
    let space = evidence.space();
    let ratios = evidence
        .weights()
        .iter()
        .zip(reference.weights())
        .enumerate()
        .map(|(y, (r, t))| {
            if t.is_zero() {
                if r.is_zero() {
                    Ok(Prob::zero())
                } else {
                    Err(Error::DivisionBySupportGap {
                        element: space.element(y).to_string(),
                    })
                }
            } else {
                Ok(r / t)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let max = ratios
        .iter()
        .max()
        .cloned()
        .expect("spaces are nonempty");
    debug_assert!(rational::is_positive(&max));
    let values = ratios.into_iter().map(|v| v / &max).collect();
    Ok(Predicate::from_unit_values(space, values))
}

/// Forward inference `c ≫ (σ|_p)`.
pub fn forward_inference(prior: &State, channel: &Channel, evidence: &Predicate) -> Result<State> {
    channel.transform_state(&prior.condition(evidence)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::space::Space;

    struct Disease {
        prior: State,
        sens: Channel,
        certainty: Channel,
        test: Space,
    }

    fn disease() -> Disease {
        let ds = Space::new("disease", ["d", "~d"]).unwrap();
        let ts = Space::new("test", ["t", "~t"]).unwrap();
        let cs = Space::new("certainty", ["c", "~c"]).unwrap();
        let two = |s: &Space, a: Prob| {
            let rest = rational::one() - &a;
            State::from_weights(s, vec![a, rest]).unwrap()
        };
        Disease {
            prior: two(&ds, ratio(1, 100)),
            sens: Channel::new(&ds, &ts, vec![two(&ts, ratio(9, 10)), two(&ts, ratio(1, 20))]).unwrap(),
            certainty: Channel::new(&ts, &cs, vec![two(&cs, ratio(8, 10)), two(&cs, ratio(2, 10))]).unwrap(),
            test: ts,
        }
    }

    #[test]
    fn sensitivity_dagger() {
        let d = disease();
        let inv = dagger(&d.sens, &d.prior).unwrap();
        assert_eq!(inv.row("t").unwrap().weights(), [ratio(18, 117), ratio(99, 117)]);
        assert_eq!(inv.row("~t").unwrap().weights(), [ratio(2, 1883), ratio(1881, 1883)]);
    }

    #[test]
    fn certainty_dagger_row() {
        let d = disease();
        let predicted = d.sens.transform_state(&d.prior).unwrap();
        let inv = dagger(&d.certainty, &predicted).unwrap();
        assert_eq!(inv.row("c").unwrap().weights(), [ratio(936, 4702), ratio(3766, 4702)]);
        // Pr(d|c) via composing the two inversions
        let pr_d_given_c = dagger(&d.sens, &d.prior).unwrap().after(&inv).unwrap();
        assert_eq!(pr_d_given_c.row("c").unwrap().weight("d").unwrap(), &ratio(148, 4702));
    }

    #[test]
    fn dagger_of_identity() {
        let d = disease();
        let id = Channel::identity(d.prior.space());
        assert_eq!(dagger(&id, &d.prior).unwrap(), id);
    }

    #[test]
    fn dagger_needs_full_support() {
        let d = disease();
        let point = State::point(d.prior.space(), "d").unwrap();
        let id = Channel::identity(d.prior.space());
        assert_eq!(
            dagger(&id, &point),
            Err(Error::NotFullSupport { element: "~d".into() })
        );
        // relaxed mode only needs the rows the evidence touches
        let rho = State::point(d.prior.space(), "d").unwrap();
        assert!(jeffrey_update(&point, &id, &rho).is_err());
        assert_eq!(jeffrey_update_with(&point, &id, &rho, Support::Relaxed).unwrap(), point);
        let bad = State::point(d.prior.space(), "~d").unwrap();
        assert!(jeffrey_update_with(&point, &id, &bad, Support::Relaxed).is_err());
    }

    #[test]
    fn pearl_disease() {
        let d = disease();
        let p = Predicate::new(&d.test, [("t", ratio(8, 10)), ("~t", ratio(2, 10))]).unwrap();
        let post = pearl_update(&d.prior, &d.sens, &p).unwrap();
        assert_eq!(post.weights(), [ratio(148, 4702), ratio(4554, 4702)]);
        for s in [ratio(1, 1), ratio(1, 2), ratio(1, 1000)] {
            let uniform = Predicate::truth(&d.test).scale(&s).unwrap();
            assert_eq!(pearl_update(&d.prior, &d.sens, &uniform).unwrap(), d.prior);
        }
        let nothing = Predicate::truth(&d.test).scale(&ratio(0, 1)).unwrap();
        assert_eq!(pearl_update(&d.prior, &d.sens, &nothing), Err(Error::ZeroValidity));
    }

    #[test]
    fn jeffrey_disease() {
        let d = disease();
        let rho = State::new(&d.test, [("t", ratio(8, 10)), ("~t", ratio(2, 10))]).unwrap();
        let post = jeffrey_update(&d.prior, &d.sens, &rho).unwrap();
        assert_eq!(post.weights(), [ratio(27162, 220311), ratio(193149, 220311)]);
        let predicted = d.sens.transform_state(&d.prior).unwrap();
        assert_eq!(jeffrey_update(&d.prior, &d.sens, &predicted).unwrap(), d.prior);
    }

    #[test]
    fn ratio_predicate() {
        let d = disease();
        let tau = d.sens.transform_state(&d.prior).unwrap();
        assert_eq!(state_to_predicate_ratio(&tau, &tau).unwrap(), Predicate::truth(&d.test));

        let rho = State::new(&d.test, [("t", ratio(8, 10)), ("~t", ratio(2, 10))]).unwrap();
        let p = state_to_predicate_ratio(&rho, &tau).unwrap();
        // ratios 1600/117 and 400/1883, the first is the maximum
        let expected_nt = ratio(400, 1883) / ratio(1600, 117);
        assert_eq!(p.values(), [ratio(1, 1), expected_nt]);
        assert_eq!(
            pearl_update(&d.prior, &d.sens, &p).unwrap(),
            jeffrey_update(&d.prior, &d.sens, &rho).unwrap()
        );

        let gap = State::point(&d.test, "t").unwrap();
        assert!(matches!(
            state_to_predicate_ratio(&rho, &gap),
            Err(Error::DivisionBySupportGap { .. })
        ));
    }

    #[test]
    fn forward_inference_cases() {
        let d = disease();
        let ds = d.prior.space().clone();
        assert_eq!(
            forward_inference(&d.prior, &d.sens, &Predicate::truth(&ds)).unwrap(),
            d.sens.transform_state(&d.prior).unwrap()
        );
        let selected = forward_inference(&d.prior, &d.sens, &Predicate::point(&ds, "d").unwrap()).unwrap();
        assert_eq!(selected.weights(), [ratio(9, 10), ratio(1, 10)]);
    }
}
