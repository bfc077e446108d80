//! Seeded generation of small random instances with exact weights.
//!
//! Every generated weight has a denominator of at most `max_denominator`,
//! and every space has between 2 and `max_size` elements.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::channel::Channel;
use crate::predicate::Predicate;
use crate::rational::{ratio, Prob};
use crate::space::Space;
use crate::state::State;

pub struct Sampler {
    rng: StdRng,
    max_size: usize,
    max_denominator: i64,
    counter: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_limits(seed, 5, 20)
    }

    pub fn with_limits(seed: u64, max_size: usize, max_denominator: i64) -> Self {
        assert!(max_size >= 2 && max_denominator >= max_size as i64);
        Sampler {
            rng: StdRng::seed_from_u64(seed),
            max_size,
            max_denominator,
            counter: 0,
        }
    }

    pub fn space(&mut self) -> Space {
        let n = self.rng.gen_range(2..=self.max_size);
        self.space_of_size(n)
    }

    pub fn space_of_size(&mut self, n: usize) -> Space {
        self.counter += 1;
        let id = self.counter;
        Space::new(format!("S{id}"), (0..n).map(|i| format!("s{id}_{i}"))).expect("distinct names")
    }

    /// A state that may have zero weights.
    pub fn state(&mut self, space: &Space) -> State {
        let denom = self.rng.gen_range(1..=self.max_denominator);
        let mut cuts: Vec<i64> = (1..space.len()).map(|_| self.rng.gen_range(0..=denom)).collect();
        self.weights_from_cuts(space, denom, &mut cuts)
    }

    /// A state with every weight strictly positive.
    pub fn full_support_state(&mut self, space: &Space) -> State {
        let n = space.len() as i64;
        let denom = self.rng.gen_range(n..=self.max_denominator);
        let mut cuts = rand::seq::index::sample(&mut self.rng, (denom - 1) as usize, space.len() - 1)
            .into_iter()
            .map(|c| c as i64 + 1)
            .collect::<Vec<_>>();
        self.weights_from_cuts(space, denom, &mut cuts)
    }

    fn weights_from_cuts(&mut self, space: &Space, denom: i64, cuts: &mut Vec<i64>) -> State {
        cuts.sort_unstable();
        let mut prev = 0;
        let mut weights = Vec::with_capacity(space.len());
        for &c in cuts.iter().chain(std::iter::once(&denom)) {
            weights.push(ratio(c - prev, denom));
            prev = c;
        }
        State::from_weights(space, weights).expect("cuts partition the unit")
    }

    /// A value `a/b` in `[0, 1]` with `b ≤ max_denominator`.
    pub fn unit(&mut self) -> Prob {
        let b = self.rng.gen_range(1..=self.max_denominator);
        ratio(self.rng.gen_range(0..=b), b)
    }

    /// A value in `(0, 1]`.
    pub fn positive_unit(&mut self) -> Prob {
        let b = self.rng.gen_range(1..=self.max_denominator);
        ratio(self.rng.gen_range(1..=b), b)
    }

    /// A positive rational `a/b` with `a, b ≤ max_denominator`.
    pub fn positive(&mut self) -> Prob {
        ratio(
            self.rng.gen_range(1..=self.max_denominator),
            self.rng.gen_range(1..=self.max_denominator),
        )
    }

    pub fn predicate(&mut self, space: &Space) -> Predicate {
        let values = (0..space.len()).map(|_| self.unit()).collect();
        Predicate::from_values(space, values).expect("unit values")
    }

    pub fn channel(&mut self, domain: &Space, codomain: &Space) -> Channel {
        let rows = (0..domain.len()).map(|_| self.state(codomain)).collect();
        Channel::new(domain, codomain, rows).expect("rows on codomain")
    }

    pub fn full_support_channel(&mut self, domain: &Space, codomain: &Space) -> Channel {
        let rows = (0..domain.len()).map(|_| self.full_support_state(codomain)).collect();
        Channel::new(domain, codomain, rows).expect("rows on codomain")
    }

    /// A deterministic channel from a random function.
    pub fn function(&mut self, domain: &Space, codomain: &Space) -> Channel {
        let targets: Vec<usize> = (0..domain.len())
            .map(|_| self.rng.gen_range(0..codomain.len()))
            .collect();
        Channel::lift_indices(domain, codomain, &targets)
    }

    /// A random nonempty proper subset, as element names.
    pub fn event(&mut self, space: &Space) -> Vec<String> {
        let n = space.len();
        let k = self.rng.gen_range(1..n);
        rand::seq::index::sample(&mut self.rng, n, k)
            .into_iter()
            .map(|i| space.element(i).to_string())
            .collect()
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn samples_respect_limits() {
        let mut s = Sampler::new(7);
        for _ in 0..200 {
            let space = s.space();
            assert!((2..=5).contains(&space.len()));
            let st = s.state(&space);
            assert!(st.weights().iter().all(|w| *w.denom() <= 20.into()));
            let fs = s.full_support_state(&space);
            assert!(fs.has_full_support());
            let p = s.predicate(&space);
            assert!(p.values().iter().all(|v| !v.is_negative()));
            let e = s.event(&space);
            assert!(!e.is_empty() && e.len() < space.len());
        }
    }

    #[test]
    fn seeded_is_reproducible() {
        let mut a = Sampler::new(42);
        let mut b = Sampler::new(42);
        let (sa, sb) = (a.space(), b.space());
        assert_eq!(a.state(&sa), b.state(&sb));
    }
}
