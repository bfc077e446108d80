use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Prob};
use crate::space::Space;
use crate::state::collect_entries;

/// A fuzzy predicate: every element of the space gets a value in `[0, 1]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Predicate {
    space: Space,
    values: Vec<Prob>,
}

impl Predicate {
    /// Unlisted elements get value zero.
    pub fn new<S: AsRef<str>>(space: &Space, values: impl IntoIterator<Item = (S, Prob)>) -> Result<Self> {
        let values = collect_entries(space, values)?;
        Self::from_values(space, values)
    }

    pub fn from_values(space: &Space, values: Vec<Prob>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::SpaceMismatch {
                expected: format!("{} ({} elements)", space, space.len()),
                found: format!("{} values", values.len()),
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !rational::in_unit_interval(v) {
                return Err(Error::ValueOutOfRange {
                    element: space.element(i).to_string(),
                    value: v.clone(),
                });
            }
        }
        Ok(Predicate {
            space: space.clone(),
            values,
        })
    }

    pub(crate) fn from_unit_values(space: &Space, values: Vec<Prob>) -> Self {
        debug_assert!(values.iter().all(rational::in_unit_interval));
        Predicate {
            space: space.clone(),
            values,
        }
    }

    /// The constant-one predicate.
    pub fn truth(space: &Space) -> Self {
        Predicate {
            space: space.clone(),
            values: vec![Prob::one(); space.len()],
        }
    }

    /// `1_y`
    pub fn point(space: &Space, element: &str) -> Result<Self> {
        Self::indicator(space, [element])
    }

    /// `1_E` for the subset `E`.
    pub fn indicator<S: AsRef<str>>(space: &Space, subset: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut values = vec![Prob::zero(); space.len()];
        for element in subset {
            values[space.index_of(element.as_ref())?] = Prob::one();
        }
        Ok(Predicate {
            space: space.clone(),
            values,
        })
    }

    pub(crate) fn indicator_mask(space: &Space, mask: &[bool]) -> Self {
        let values = mask
            .iter()
            .map(|&m| if m { Prob::one() } else { Prob::zero() })
            .collect();
        Predicate {
            space: space.clone(),
            values,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[Prob] {
        &self.values
    }

    pub fn value(&self, element: &str) -> Result<&Prob> {
        Ok(&self.values[self.space.index_of(element)?])
    }

    /// `p & q`, pointwise multiplication.
    pub fn and(&self, other: &Predicate) -> Result<Predicate> {
        self.space.ensure_same(other.space())?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Predicate::from_unit_values(&self.space, values))
    }

    /// `s · p` for a scalar `s` in `[0, 1]`.
    pub fn scale(&self, scalar: &Prob) -> Result<Predicate> {
        if !rational::in_unit_interval(scalar) {
            return Err(Error::ValueOutOfRange {
                element: "scalar".to_string(),
                value: scalar.clone(),
            });
        }
        let values = self.values.iter().map(|v| v * scalar).collect();
        Ok(Predicate::from_unit_values(&self.space, values))
    }

    /// Renders as `{t: 4/5, ~t: 1/5}`.
    pub fn render(&self) -> String {
        self.render_with(rational::fraction)
    }

    pub fn render_decimal(&self, digits: usize) -> String {
        self.render_with(|v| rational::decimal(v, digits))
    }

    fn render_with(&self, fmt: impl Fn(&Prob) -> String) -> String {
        let entries: Vec<String> = self
            .space
            .elements()
            .iter()
            .zip(&self.values)
            .map(|(e, v)| format!("{}: {}", e, fmt(v)))
            .collect();
        format!("{{{}}}", entries.join(", "))
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Predicate[{}]{}", self.space.name(), self.render())
    }
}
