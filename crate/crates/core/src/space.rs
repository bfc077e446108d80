use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A named finite sample space with a fixed element order.
///
/// Two spaces are the same space when both the name and the element list
/// agree. Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct Space(Arc<SpaceData>);

struct SpaceData {
    name: String,
    elements: Vec<String>,
    index: HashMap<String, usize>,
    factors: Option<(Space, Space)>,
}

impl Space {
    pub fn new<I, S>(name: impl Into<String>, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        Self::build(name, elements, None)
    }

    fn build(name: String, elements: Vec<String>, factors: Option<(Space, Space)>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySpace(name));
        }
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement {
                    context: name,
                    element: e.clone(),
                });
            }
        }
        Ok(Space(Arc::new(SpaceData {
            name,
            elements,
            index,
            factors,
        })))
    }

    /// Binary product in left-major order: `(l1,r1), (l1,r2), ...`.
    ///
    /// The product is named `left*right` and its elements `l,r`, so the same
    /// pair of factors always yields the same space.
    pub fn product(left: &Space, right: &Space) -> Space {
        let name = format!("{}*{}", left.name(), right.name());
        let elements = left
            .elements()
            .iter()
            .flat_map(|l| right.elements().iter().map(move |r| format!("{l},{r}")))
            .collect();
        Self::build(name, elements, Some((left.clone(), right.clone())))
            .expect("product of valid spaces is valid")
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn elements(&self) -> &[String] {
        &self.0.elements
    }

    pub fn len(&self) -> usize {
        self.0.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elements.is_empty()
    }

    pub fn element(&self, index: usize) -> &str {
        &self.0.elements[index]
    }

    pub fn index_of(&self, element: &str) -> Result<usize> {
        self.0
            .index
            .get(element)
            .copied()
            .ok_or_else(|| Error::UnknownElement {
                space: self.name().to_string(),
                element: element.to_string(),
            })
    }

    pub fn contains(&self, element: &str) -> bool {
        self.0.index.contains_key(element)
    }

    pub fn factors(&self) -> Option<(&Space, &Space)> {
        self.0.factors.as_ref().map(|(l, r)| (l, r))
    }

    /// Index in the product of the pair `(left_index, right_index)`.
    pub fn pair_index(&self, left: usize, right: usize) -> Result<usize> {
        let (_, r) = self
            .factors()
            .ok_or_else(|| Error::NotAProductSpace(self.name().to_string()))?;
        Ok(left * r.len() + right)
    }

    pub(crate) fn ensure_same(&self, other: &Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.name == other.0.name && self.0.elements == other.0.elements)
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space({} = {{{}}})", self.name(), self.elements().join(", "))
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
