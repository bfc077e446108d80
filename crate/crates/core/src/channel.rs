use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::predicate::Predicate;
use crate::rational::Prob;
use crate::space::Space;
use crate::state::State;

/// A stochastic channel `X ⇸ Y`: one distribution on the codomain for each
/// element of the domain.
#[derive(Clone, PartialEq, Eq)]
pub struct Channel {
    domain: Space,
    codomain: Space,
    rows: Vec<State>,
}

impl Channel {
    /// Rows are given in domain order.
    pub fn new(domain: &Space, codomain: &Space, rows: Vec<State>) -> Result<Self> {
        if rows.len() != domain.len() {
            return Err(Error::SpaceMismatch {
                expected: format!("{} rows for {}", domain.len(), domain),
                found: format!("{} rows", rows.len()),
            });
        }
        for row in &rows {
            codomain.ensure_same(row.space())?;
        }
        Ok(Channel {
            domain: domain.clone(),
            codomain: codomain.clone(),
            rows,
        })
    }

    /// Rows keyed by domain element; every element must appear exactly once.
    pub fn from_rows<S: AsRef<str>>(
        domain: &Space,
        codomain: &Space,
        rows: impl IntoIterator<Item = (S, State)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<State>> = vec![None; domain.len()];
        for (element, row) in rows {
            let i = domain.index_of(element.as_ref())?;
            if slots[i].replace(row).is_some() {
                return Err(Error::DuplicateElement {
                    context: domain.name().to_string(),
                    element: element.as_ref().to_string(),
                });
            }
        }
        let rows = slots
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.ok_or_else(|| Error::UnknownElement {
                    space: format!("rows of channel from {}", domain),
                    element: domain.element(i).to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain, rows)
    }

    /// The Dirac identity channel `x ↦ 1|x>`.
    pub fn identity(space: &Space) -> Self {
        let rows = (0..space.len()).map(|i| State::point_at(space, i)).collect();
        Channel {
            domain: space.clone(),
            codomain: space.clone(),
            rows,
        }
    }

    /// Deterministic channel `x ↦ 1|f(x)>` from a total function given as
    /// `(x, f(x))` pairs.
    pub fn lift<S: AsRef<str>, T: AsRef<str>>(
        domain: &Space,
        codomain: &Space,
        mapping: impl IntoIterator<Item = (S, T)>,
    ) -> Result<Self> {
        let rows = mapping
            .into_iter()
            .map(|(x, y)| Ok((x, State::point(codomain, y.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(domain, codomain, rows)
    }

    pub(crate) fn lift_indices(domain: &Space, codomain: &Space, targets: &[usize]) -> Self {
        Channel {
            domain: domain.clone(),
            codomain: codomain.clone(),
            rows: targets.iter().map(|&j| State::point_at(codomain, j)).collect(),
        }
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn rows(&self) -> &[State] {
        &self.rows
    }

    pub fn row(&self, element: &str) -> Result<&State> {
        Ok(&self.rows[self.domain.index_of(element)?])
    }

    /// `c(x)(y)` by index.
    pub fn entry(&self, x: usize, y: usize) -> &Prob {
        &self.rows[x].weights()[y]
    }

    /// For a channel whose every row is a point mass, the target index of
    /// each row.
    pub fn as_function(&self) -> Result<Vec<usize>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(x, row)| {
                row.weights()
                    .iter()
                    .position(|w| w.is_one())
                    .ok_or_else(|| Error::NotDeterministic {
                        element: self.domain.element(x).to_string(),
                    })
            })
            .collect()
    }

    /// State transformation `c ≫ σ`.
    pub fn transform_state(&self, state: &State) -> Result<State> {
        self.domain.ensure_same(state.space())?;
        let mut weights = vec![Prob::zero(); self.codomain.len()];
        for (w, row) in state.weights().iter().zip(&self.rows) {
            if w.is_zero() {
                continue;
            }
            for (acc, r) in weights.iter_mut().zip(row.weights()) {
                *acc += w * r;
            }
        }
        Ok(State::from_normalized(&self.codomain, weights))
    }

    /// Predicate transformation `c ≪ q`.
    pub fn transform_predicate(&self, predicate: &Predicate) -> Result<Predicate> {
        self.codomain.ensure_same(predicate.space())?;
        let values = self
            .rows
            .iter()
            .map(|row| row.weights().iter().zip(predicate.values()).map(|(r, q)| r * q).sum())
            .collect();
        Ok(Predicate::from_unit_values(&self.domain, values))
    }

    /// Composite `self • first`: run `first`, then `self`.
    pub fn after(&self, first: &Channel) -> Result<Channel> {
        first.codomain.ensure_same(&self.domain)?;
        let rows = first
            .rows
            .iter()
            .map(|row| self.transform_state(row))
            .collect::<Result<Vec<_>>>()?;
        Ok(Channel {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            rows,
        })
    }

    pub fn render(&self) -> String {
        self.domain
            .elements()
            .iter()
            .zip(&self.rows)
            .map(|(x, row)| format!("{x} -> {row}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// `d • c`
pub fn compose(d: &Channel, c: &Channel) -> Result<Channel> {
    d.after(c)
}

impl fmt::Debug for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Channel[{} -> {}]", self.domain.name(), self.codomain.name())?;
        f.debug_list().entries(&self.rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn disease() -> (Space, Space, State, Channel) {
        let ds = Space::new("disease", ["d", "~d"]).unwrap();
        let ts = Space::new("test", ["t", "~t"]).unwrap();
        let prior = State::new(&ds, [("d", ratio(1, 100)), ("~d", ratio(99, 100))]).unwrap();
        let s = Channel::from_rows(
            &ds,
            &ts,
            [
                ("d", State::new(&ts, [("t", ratio(9, 10)), ("~t", ratio(1, 10))]).unwrap()),
                ("~d", State::new(&ts, [("t", ratio(1, 20)), ("~t", ratio(19, 20))]).unwrap()),
            ],
        )
        .unwrap();
        (ds, ts, prior, s)
    }

    fn certainty(ts: &Space) -> Channel {
        let cs = Space::new("certainty", ["c", "~c"]).unwrap();
        Channel::from_rows(
            ts,
            &cs,
            [
                ("t", State::new(&cs, [("c", ratio(8, 10)), ("~c", ratio(2, 10))]).unwrap()),
                ("~t", State::new(&cs, [("c", ratio(2, 10)), ("~c", ratio(8, 10))]).unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn predicted_test_outcome() {
        let (ds, ts, prior, s) = disease();
        let predicted = s.transform_state(&prior).unwrap();
        assert_eq!(predicted.weights(), [ratio(117, 2000), ratio(1883, 2000)]);
        assert_eq!(Channel::identity(&ds).transform_state(&prior).unwrap(), prior);
        let e = certainty(&ts);
        let es = e.after(&s).unwrap();
        let via_composite = es.transform_state(&prior).unwrap();
        assert_eq!(via_composite.weights(), [ratio(4702, 20000), ratio(15298, 20000)]);
        assert_eq!(via_composite, e.transform_state(&predicted).unwrap());
    }

    #[test]
    fn predicate_transformation() {
        let (_, ts, _, s) = disease();
        let pulled = s.transform_predicate(&Predicate::point(&ts, "t").unwrap()).unwrap();
        assert_eq!(pulled.values(), [ratio(9, 10), ratio(1, 20)]);
        assert_eq!(
            s.transform_predicate(&Predicate::truth(&ts)).unwrap(),
            Predicate::truth(s.domain())
        );
        let e = certainty(&ts);
        let p = e.transform_predicate(&Predicate::point(e.codomain(), "c").unwrap()).unwrap();
        assert_eq!(p.values(), [ratio(8, 10), ratio(2, 10)]);
    }

    #[test]
    fn composite_row_at_d() {
        let (_, ts, _, s) = disease();
        let e = certainty(&ts);
        let es = e.after(&s).unwrap();
        // 9/10 * 8/10 + 1/10 * 2/10
        assert_eq!(es.row("d").unwrap().weight("c").unwrap(), &ratio(74, 100));
        let id_left = Channel::identity(&ts).after(&s).unwrap();
        let id_right = s.after(&Channel::identity(s.domain())).unwrap();
        assert_eq!(id_left, s);
        assert_eq!(id_right, s);
        assert!(matches!(s.after(&s), Err(Error::SpaceMismatch { .. })));
    }

    #[test]
    fn halpern_lift() {
        let colors = Space::new("color", ["r", "b", "g", "y"]).unwrap();
        let groups = Space::new("group", ["gb", "ry"]).unwrap();
        let c = Channel::lift(&colors, &groups, [("r", "ry"), ("b", "gb"), ("g", "gb"), ("y", "ry")]).unwrap();
        assert_eq!(c.row("r").unwrap(), &State::point(&groups, "ry").unwrap());
        assert_eq!(c.row("g").unwrap(), &State::point(&groups, "gb").unwrap());
        assert_eq!(c.as_function().unwrap(), [1, 0, 0, 1]);
        assert_eq!(
            Channel::lift(&colors, &colors, colors.elements().iter().map(|e| (e, e))).unwrap(),
            Channel::identity(&colors)
        );
        assert!(matches!(
            Channel::lift(&colors, &groups, [("r", "zz")]),
            Err(Error::UnknownElement { .. })
        ));
        assert!(matches!(
            Channel::lift(&colors, &groups, [("r", "ry")]),
            Err(Error::UnknownElement { .. })
        ));
    }

    #[test]
    fn lift_respects_function_composition() {
        let x = Space::new("x", ["a", "b", "c"]).unwrap();
        let y = Space::new("y", ["p", "q"]).unwrap();
        let z = Space::new("z", ["u", "v"]).unwrap();
        let f = [("a", "q"), ("b", "p"), ("c", "q")];
        let g = [("p", "v"), ("q", "u")];
        let gf: Vec<(&str, &str)> = f
            .iter()
            .map(|(x, fx)| (*x, g.iter().find(|(y, _)| y == fx).unwrap().1))
            .collect();
        let lhs = Channel::lift(&y, &z, g).unwrap().after(&Channel::lift(&x, &y, f).unwrap()).unwrap();
        let rhs = Channel::lift(&x, &z, gf).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn not_deterministic() {
        let (_, _, _, s) = disease();
        assert!(matches!(s.as_function(), Err(Error::NotDeterministic { .. })));
    }
}
