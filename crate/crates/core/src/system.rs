use crate::error::{Error, Result};
use crate::numeric::{AffineForm, Rational};
use crate::spaces::SpaceDescriptor;
use num_traits::Signed;

/// Finite list of forms read as `a_i(x) ≥ 0`, tied to the ground space.
///
/// Index order is stable: certificates cite positions in `forms`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalitySystem {
    pub space: SpaceDescriptor,
    pub forms: Vec<AffineForm>,
}

impl InequalitySystem {
    pub fn new(space: SpaceDescriptor, forms: Vec<AffineForm>) -> Result<Self> {
        let dim = space.dim();
        if let Some(bad) = forms.iter().find(|f| f.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { space, forms })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn subsystem(&self, indices: &[usize]) -> Self {
        Self {
            space: self.space.clone(),
            forms: indices.iter().map(|&i| self.forms[i].clone()).collect(),
        }
    }

    pub fn with_form(&self, form: AffineForm) -> Self {
        let mut s = self.clone();
        s.forms.push(form);
        s
    }

    /// True when every form is nonnegative at `point` (membership in the
    /// ground space is not checked).
    pub fn satisfied_by(&self, point: &[Rational]) -> bool {
        self.forms.iter().all(|f| !f.eval(point).is_negative())
    }

    pub fn violated_by(&self, point: &[Rational]) -> Option<usize> {
        self.forms.iter().position(|f| f.eval(point).is_negative())
    }
}
