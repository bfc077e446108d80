//! Randomized comparison of the calculus against the brute-force oracle.

use std::fmt;

use crate::oracle::{self, JointTable};
use crate::random::Sampler;
use crate::space::Space;
use crate::state::{Side, State};
use crate::update::{self, Support};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Condition,
    Pearl,
    Jeffrey,
    DaggerRows,
    Marginals,
}

impl Operation {
    pub const ALL: [Operation; 5] = [
        Operation::Condition,
        Operation::Pearl,
        Operation::Jeffrey,
        Operation::DaggerRows,
        Operation::Marginals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Condition => "condition",
            Operation::Pearl => "pearl",
            Operation::Jeffrey => "jeffrey",
            Operation::DaggerRows => "dagger rows",
            Operation::Marginals => "marginals",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub operation: Operation,
    pub instance: usize,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "instance {} ({}): {}", self.instance, self.operation.name(), self.detail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    /// Comparisons made per operation, in [`Operation::ALL`] order.
    pub compared: [usize; 5],
    pub mismatches: Vec<Mismatch>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Both sides either agree exactly or both refuse.
fn same<E1, E2>(lib: Result<State, E1>, orc: Result<State, E2>) -> Option<String>
where
    E1: fmt::Display,
    E2: fmt::Display,
{
    match (lib, orc) {
        (Ok(a), Ok(b)) if a == b => None,
        (Err(_), Err(_)) => None,
        (Ok(a), Ok(b)) => Some(format!("library {a}, oracle {b}")),
        (Ok(a), Err(e)) => Some(format!("library {a}, oracle failed: {e}")),
        (Err(e), Ok(b)) => Some(format!("library failed: {e}, oracle {b}")),
    }
}

/// Runs `instances` random instances from `seed` through every operation.
pub fn run(seed: u64, instances: usize) -> Report {
    let mut sampler = Sampler::new(seed);
    let mut report = Report::default();
    for i in 0..instances {
        let x = sampler.space();
        let y = sampler.space();
        // Mix in states and channels with zeros so refusals are compared too.
        let sigma = if sampler.coin() {
            sampler.full_support_state(&x)
        } else {
            sampler.state(&x)
        };
        let c = if sampler.coin() {
            sampler.full_support_channel(&x, &y)
        } else {
            sampler.channel(&x, &y)
        };
        let joint = JointTable::from_model(&sigma, &c).expect("shapes agree");
        let mut record = |op: Operation, diff: Option<String>| {
            report.compared[op as usize] += 1;
            if let Some(detail) = diff {
                report.mismatches.push(Mismatch {
                    operation: op,
                    instance: i,
                    detail,
                });
            }
        };

        let p = sampler.predicate(&x);
        record(
            Operation::Condition,
            same(sigma.condition(&p), oracle::oracle_state_condition(&joint, p.values())),
        );

        let q = sampler.predicate(&y);
        record(
            Operation::Pearl,
            same(update::pearl_update(&sigma, &c, &q), oracle::oracle_pearl(&joint, q.values())),
        );

        let rho = sampler.state(&y);
        record(
            Operation::Jeffrey,
            same(
                update::jeffrey_update_with(&sigma, &c, &rho, Support::Relaxed),
                oracle::oracle_jeffrey(&joint, rho.weights()),
            ),
        );

        match update::dagger(&c, &sigma) {
            Ok(d) => {
                for (yi, row) in d.rows().iter().enumerate() {
                    record(
                        Operation::DaggerRows,
                        same(Ok::<_, String>(row.clone()), oracle::oracle_point_posterior(&joint, yi)),
                    );
                }
            }
            Err(e) => {
                // The dagger exists exactly when every codomain point has mass.
                let all_mass = (0..y.len()).all(|yi| oracle::oracle_point_posterior(&joint, yi).is_ok());
                record(
                    Operation::DaggerRows,
                    all_mass.then(|| format!("library refused ({e}) but every point has mass")),
                );
            }
        }

        let xy = Space::product(&x, &y);
        let omega = sampler.state(&xy);
        let table = JointTable::from_product_state(&omega).expect("product space");
        for (side, expected) in [(Side::First, table.x_marginal()), (Side::Second, table.y_marginal())] {
            record(
                Operation::Marginals,
                same(omega.marginal(side), Ok::<_, String>(expected)),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_agrees() {
        let r = run(7, 40);
        assert!(r.passed(), "{}", r.mismatches[0]);
        assert!(r.compared.iter().all(|&n| n >= 40));
    }
}
