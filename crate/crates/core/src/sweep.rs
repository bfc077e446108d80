//! Jeffrey and Pearl posteriors as the evidence strength `r` runs over
//! `[0, 1]`.

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::predicate::Predicate;
use crate::rational::{self, Prob};
use crate::state::State;
use crate::update::{self, Support};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub r: Prob,
    /// Posterior weight of the target element under each rule.
    pub jeffrey: Prob,
    pub pearl: Prob,
}

/// One row per `r = i/steps`, `i = 0..=steps`. With codomain `{y1, y2}`
/// the evidence is `r|y1> + (1-r)|y2>` for Jeffrey and `{y1: r, y2: 1-r}`
/// for Pearl.
///
/// Jeffrey only requires inversion at points the evidence charges, so the
/// endpoints work whenever point conditioning does.
pub fn sweep(prior: &State, channel: &Channel, target: &str, steps: u32) -> Result<Vec<SweepRow>> {
    let y = channel.codomain();
    if y.len() != 2 {
        return Err(Error::NonBinaryEvidenceSpace {
            space: y.name().to_string(),
            size: y.len(),
        });
    }
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    prior.space().ensure_same(channel.domain())?;
    let t = prior.space().index_of(target)?;
    (0..=steps)
        .map(|i| {
            let r = rational::ratio(i64::from(i), i64::from(steps));
            let rest = rational::one() - &r;
            let rho = State::from_weights(y, vec![r.clone(), rest.clone()])?;
            let q = Predicate::from_values(y, vec![r.clone(), rest])?;
            let j = update::jeffrey_update_with(prior, channel, &rho, Support::Relaxed)?;
            let p = update::pearl_update(prior, channel, &q)?;
            Ok(SweepRow {
                r,
                jeffrey: j.weights()[t].clone(),
                pearl: p.weights()[t].clone(),
            })
        })
        .collect()
}

/// `r,jeffrey,pearl` CSV, exact fractions unless `decimal` is given.
pub fn to_csv(rows: &[SweepRow], decimal: Option<usize>) -> String {
    let fmt = |v: &Prob| match decimal {
        Some(d) => rational::decimal(v, d),
        None => rational::fraction(v),
    };
    let mut out = String::from("r,jeffrey,pearl\n");
    for row in rows {
        out.push_str(&format!("{},{},{}\n", fmt(&row.r), fmt(&row.jeffrey), fmt(&row.pearl)));
    }
    out
}
