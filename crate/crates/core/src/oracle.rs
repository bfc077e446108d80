//! Brute-force reference computations over an explicit joint table.
//!
//! Nothing here calls the calculus operators: the joint mass
//! `σ(x)·c(x)(y)` is materialized from raw weights and every query is
//! answered by enumerating and summing table cells. Results are wrapped
//! back into [`State`] only for comparison.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::channel::Channel;
use crate::rational::Prob;
use crate::space::Space;
use crate::state::State;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("weighted joint mass is zero{}", .0.as_ref().map(|y| format!(" at `{y}`")).unwrap_or_default())]
    ZeroMass(Option<String>),
    #[error("table shape does not match the spaces")]
    Shape,
    #[error("state does not live on a product space")]
    NotProduct,
}

/// Joint mass over `domain × codomain`, row-major in `domain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointTable {
    domain: Space,
    codomain: Space,
    mass: Vec<Vec<Prob>>,
}

impl JointTable {
    pub fn from_parts(
        domain: &Space,
        codomain: &Space,
        prior: &[Prob],
        rows: &[Vec<Prob>],
    ) -> Result<Self, OracleError> {
        if prior.len() != domain.len()
            || rows.len() != domain.len()
            || rows.iter().any(|r| r.len() != codomain.len())
        {
            return Err(OracleError::Shape);
        }
        let mass = prior
            .iter()
            .zip(rows)
            .map(|(p, row)| row.iter().map(|c| p * c).collect())
            .collect();
        Ok(JointTable {
            domain: domain.clone(),
            codomain: codomain.clone(),
            mass,
        })
    }

    /// Reads the raw numbers out of a prior and a channel.
    pub fn from_model(prior: &State, channel: &Channel) -> Result<Self, OracleError> {
        let rows: Vec<Vec<Prob>> = channel.rows().iter().map(|r| r.weights().to_vec()).collect();
        Self::from_parts(channel.domain(), channel.codomain(), prior.weights(), &rows)
    }

    /// Reshapes a state on a product space into a table over its factors.
    pub fn from_product_state(state: &State) -> Result<Self, OracleError> {
        let (left, right) = state.space().factors().ok_or(OracleError::NotProduct)?;
        let mass = state
            .weights()
            .chunks(right.len())
            .map(|c| c.to_vec())
            .collect();
        Ok(JointTable {
            domain: left.clone(),
            codomain: right.clone(),
            mass,
        })
    }

    pub fn mass(&self, x: usize, y: usize) -> &Prob {
        &self.mass[x][y]
    }

    pub fn total(&self) -> Prob {
        self.mass.iter().flatten().sum()
    }

    pub fn x_marginal(&self) -> State {
        let weights = self.mass.iter().map(|row| row.iter().sum()).collect();
        State::from_weights(&self.domain, weights).expect("joint mass sums to one")
    }

    pub fn y_marginal(&self) -> State {
        let weights = (0..self.codomain.len())
            .map(|y| self.mass.iter().map(|row| &row[y]).sum())
            .collect();
        State::from_weights(&self.codomain, weights).expect("joint mass sums to one")
    }
}

/// Reweights every cell by `weight(x, y)` and renormalizes.
pub fn oracle_condition(
    joint: &JointTable,
    weight: impl Fn(usize, usize) -> Prob,
) -> Result<JointTable, OracleError> {
    let weighted: Vec<Vec<Prob>> = joint
        .mass
        .iter()
        .enumerate()
        .map(|(x, row)| row.iter().enumerate().map(|(y, m)| m * weight(x, y)).collect())
        .collect();
    let total: Prob = weighted.iter().flatten().sum();
    if total.is_zero() {
        return Err(OracleError::ZeroMass(None));
    }
    let mass = weighted
        .into_iter()
        .map(|row| row.into_iter().map(|m| m / &total).collect())
        .collect();
    Ok(JointTable {
        domain: joint.domain.clone(),
        codomain: joint.codomain.clone(),
        mass,
    })
}

/// For each `y`, condition on `y`, take the X-marginal, and mix the results
/// with weights `ρ(y)`.
pub fn oracle_jeffrey(joint: &JointTable, evidence: &[Prob]) -> Result<State, OracleError> {
    if evidence.len() != joint.codomain.len() {
        return Err(OracleError::Shape);
    }
    let mut weights = vec![Prob::zero(); joint.domain.len()];
    for (y, r) in evidence.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let posterior = oracle_point_posterior(joint, y)?;
        for (acc, w) in weights.iter_mut().zip(posterior.weights()) {
            *acc += r * w;
        }
    }
    Ok(State::from_weights(&joint.domain, weights).expect("mixture of distributions"))
}

/// X-marginal of the joint conditioned on the codomain taking value `y`.
pub fn oracle_point_posterior(joint: &JointTable, y: usize) -> Result<State, OracleError> {
    let conditioned = oracle_condition(joint, |_, y2| if y2 == y { Prob::one() } else { Prob::zero() })
        .map_err(|_| OracleError::ZeroMass(Some(joint.codomain.element(y).to_string())))?;
    Ok(conditioned.x_marginal())
}

/// Pearl's rule by enumeration: weight each cell by `q(y)`.
pub fn oracle_pearl(joint: &JointTable, evidence: &[Prob]) -> Result<State, OracleError> {
    if evidence.len() != joint.codomain.len() {
        return Err(OracleError::Shape);
    }
    Ok(oracle_condition(joint, |_, y| evidence[y].clone())?.x_marginal())
}

/// Plain conditioning `σ|_p` by enumeration: weight each cell by `p(x)`.
pub fn oracle_state_condition(joint: &JointTable, evidence: &[Prob]) -> Result<State, OracleError> {
    if evidence.len() != joint.domain.len() {
        return Err(OracleError::Shape);
    }
    Ok(oracle_condition(joint, |x, _| evidence[x].clone())?.x_marginal())
}
