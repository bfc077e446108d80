use std::fmt::Write as _;

use crate::channel::Channel;
use crate::error::Result;
use crate::predicate::Predicate;
use crate::rational::{self, Prob};
use crate::state::State;

use super::{
    atc_update, blend_update, jeffrey_update_with, nec_update, Event, Support,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Jeffrey,
    Pearl,
    Atc,
    Nec,
    Blend,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Jeffrey => "jeffrey",
            Rule::Pearl => "pearl",
            Rule::Atc => "atc",
            Rule::Nec => "nec",
            Rule::Blend => "blend",
        }
    }
}

/// The four ways soft evidence can be specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Predicate(Predicate),
    State(State),
    EventStrength { event: Event, strength: Prob },
    BayesFactor { event: Event, factor: Prob },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intermediate {
    /// Pearl: the pulled-back predicate `c ≪ q` and its validity.
    Pulled { predicate: Predicate, validity: Prob },
    /// Jeffrey: the prediction `c ≫ σ` and the inverted channel rows used.
    Inverted { predicted: State, rows: Vec<(String, State)> },
    /// ATC and NEC: prior mass of the event.
    EventMass { mass: Prob },
    Blend { weight: Prob, jeffrey: State, pearl: State },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateReport {
    pub rule: Rule,
    /// Absent for blends, which mix two posteriors.
    pub prior: Option<State>,
    pub evidence: Option<Evidence>,
    pub posterior: State,
    pub intermediate: Option<Intermediate>,
}

pub fn explain_pearl(prior: &State, channel: &Channel, evidence: &Predicate) -> Result<UpdateReport> {
    let pulled = channel.transform_predicate(evidence)?;
    let validity = prior.validity(&pulled)?;
    let posterior = prior.condition(&pulled)?;
    Ok(UpdateReport {
        rule: Rule::Pearl,
        prior: Some(prior.clone()),
        evidence: Some(Evidence::Predicate(evidence.clone())),
        posterior,
        intermediate: Some(Intermediate::Pulled {
            predicate: pulled,
            validity,
        }),
    })
}

pub fn explain_jeffrey(
    prior: &State,
    channel: &Channel,
    evidence: &State,
    support: Support,
) -> Result<UpdateReport> {
    let posterior = jeffrey_update_with(prior, channel, evidence, support)?;
    let predicted = channel.transform_state(prior)?;
    let mut rows = Vec::new();
    for (y, (name, r)) in channel.codomain().elements().iter().zip(evidence.weights()).enumerate() {
        if support == Support::Relaxed && !rational::is_positive(r) {
            continue;
        }
        let point = Predicate::indicator_mask(channel.codomain(), &one_hot(channel.codomain().len(), y));
        rows.push((name.clone(), prior.condition(&channel.transform_predicate(&point)?)?));
    }
    Ok(UpdateReport {
        rule: Rule::Jeffrey,
        prior: Some(prior.clone()),
        evidence: Some(Evidence::State(evidence.clone())),
        posterior,
        intermediate: Some(Intermediate::Inverted { predicted, rows }),
    })
}

fn one_hot(len: usize, at: usize) -> Vec<bool> {
    (0..len).map(|i| i == at).collect()
}

pub fn explain_atc(prior: &State, event: &Event, strength: &Prob) -> Result<UpdateReport> {
    let posterior = atc_update(prior, event, strength)?;
    Ok(UpdateReport {
        rule: Rule::Atc,
        prior: Some(prior.clone()),
        evidence: Some(Evidence::EventStrength {
            event: event.clone(),
            strength: strength.clone(),
        }),
        posterior,
        intermediate: Some(Intermediate::EventMass {
            mass: prior.validity(&event.indicator())?,
        }),
    })
}

pub fn explain_nec(prior: &State, event: &Event, factor: &Prob) -> Result<UpdateReport> {
    let posterior = nec_update(prior, event, factor)?;
    Ok(UpdateReport {
        rule: Rule::Nec,
        prior: Some(prior.clone()),
        evidence: Some(Evidence::BayesFactor {
            event: event.clone(),
            factor: factor.clone(),
        }),
        posterior,
        intermediate: Some(Intermediate::EventMass {
            mass: prior.validity(&event.indicator())?,
        }),
    })
}

pub fn explain_blend(weight: &Prob, jeffrey: &State, pearl: &State) -> Result<UpdateReport> {
    Ok(UpdateReport {
        rule: Rule::Blend,
        prior: None,
        evidence: None,
        posterior: blend_update(weight, jeffrey, pearl)?,
        intermediate: Some(Intermediate::Blend {
            weight: weight.clone(),
            jeffrey: jeffrey.clone(),
            pearl: pearl.clone(),
        }),
    })
}

impl UpdateReport {
    /// Step-by-step text: the evidence, what was computed from it, then the
    /// posterior.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rule: {}", self.rule.name());
        if let Some(prior) = &self.prior {
            let _ = writeln!(out, "prior: {prior}");
        }
        match &self.evidence {
            Some(Evidence::Predicate(p)) => {
                let _ = writeln!(out, "evidence (predicate): {p}");
            }
            Some(Evidence::State(s)) => {
                let _ = writeln!(out, "evidence (state): {s}");
            }
            Some(Evidence::EventStrength { event, strength }) => {
                let _ = writeln!(out, "evidence: validity of {event} becomes {}", rational::fraction(strength));
            }
            Some(Evidence::BayesFactor { event, factor }) => {
                let _ = writeln!(out, "evidence: Bayes factor {} on {event}", rational::fraction(factor));
            }
            None => {}
        }
        match &self.intermediate {
            Some(Intermediate::Pulled { predicate, validity }) => {
                let _ = writeln!(out, "transformed predicate (c << q): {predicate}");
                let _ = writeln!(out, "validity (prior |= c << q): {}", rational::fraction(validity));
            }
            Some(Intermediate::Inverted { predicted, rows }) => {
                let _ = writeln!(out, "predicted (c >> prior): {predicted}");
                for (y, row) in rows {
                    let _ = writeln!(out, "inverted row {y}: {row}");
                }
            }
            Some(Intermediate::EventMass { mass }) => {
                let _ = writeln!(out, "prior mass of event: {}", rational::fraction(mass));
            }
            Some(Intermediate::Blend { weight, jeffrey, pearl }) => {
                let _ = writeln!(out, "weight: {}", rational::fraction(weight));
                let _ = writeln!(out, "jeffrey posterior: {jeffrey}");
                let _ = writeln!(out, "pearl posterior: {pearl}");
            }
            None => {}
        }
        let _ = write!(out, "posterior: {}", self.posterior);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::space::Space;

    #[test]
    fn pearl_report_mirrors_steps() {
        let ds = Space::new("disease", ["d", "~d"]).unwrap();
        let ts = Space::new("test", ["t", "~t"]).unwrap();
        let prior = State::new(&ds, [("d", ratio(1, 100)), ("~d", ratio(99, 100))]).unwrap();
        let s = Channel::new(
            &ds,
            &ts,
            vec![
                State::from_weights(&ts, vec![ratio(9, 10), ratio(1, 10)]).unwrap(),
                State::from_weights(&ts, vec![ratio(1, 20), ratio(19, 20)]).unwrap(),
            ],
        )
        .unwrap();
        let report = explain_pearl(&prior, &s, &Predicate::point(&ts, "t").unwrap()).unwrap();
        assert_eq!(report.rule, Rule::Pearl);
        match &report.intermediate {
            Some(Intermediate::Pulled { predicate, validity }) => {
                assert_eq!(predicate.values(), [ratio(9, 10), ratio(1, 20)]);
                assert_eq!(validity, &ratio(117, 2000));
            }
            other => panic!("unexpected intermediate {other:?}"),
        }
        assert_eq!(report.posterior.weights(), [ratio(18, 117), ratio(99, 117)]);
        let text = report.render();
        assert!(text.contains("transformed predicate (c << q): {d: 9/10, ~d: 1/20}"));
        assert!(text.ends_with("posterior: 2/13|d> + 11/13|~d>"));

        let rho = State::from_weights(&ts, vec![ratio(8, 10), ratio(2, 10)]).unwrap();
        let jr = explain_jeffrey(&prior, &s, &rho, Support::Strict).unwrap();
        assert!(jr.render().contains("inverted row ~t: 2/1883|d> + 1881/1883|~d>"));
    }
}
