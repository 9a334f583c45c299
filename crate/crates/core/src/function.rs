use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupElement, SemigroupDescriptor};
use crate::scalar::Scalar;

type Oracle = dyn Fn(&GroupElement) -> Result<Scalar> + Send + Sync;

/// A deterministic evaluation oracle from group elements to scalars.
///
/// Oracles may be partial (finite tables, or functions known only on a
/// semigroup); evaluating outside the domain yields `OutOfDomain`.
#[derive(Clone)]
pub struct GroupFunction {
    group: GroupDescriptor,
    eval: Arc<Oracle>,
}

impl GroupFunction {
    pub fn new<F>(group: GroupDescriptor, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> Result<Scalar> + Send + Sync + 'static,
    {
        GroupFunction {
            group,
            eval: Arc::new(eval),
        }
    }

    pub fn from_fn<F>(group: GroupDescriptor, eval: F) -> Self
    where
        F: Fn(&GroupElement) -> Scalar + Send + Sync + 'static,
    {
        Self::new(group, move |t| Ok(eval(t)))
    }

    pub fn constant(group: GroupDescriptor, c: Scalar) -> Self {
        Self::from_fn(group, move |_| c.clone())
    }

    pub fn from_table<I>(group: GroupDescriptor, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, Scalar)>,
    {
        let mut table = HashMap::new();
        for (t, v) in entries {
            group.check(&t)?;
            table.insert(t, v);
        }
        Ok(Self::new(group, move |t| {
            table
                .get(t)
                .cloned()
                .ok_or_else(|| Error::OutOfDomain(t.to_string()))
        }))
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn eval(&self, t: &GroupElement) -> Result<Scalar> {
        self.group.check(t)?;
        (self.eval)(t)
    }

    /// The same oracle, refusing every point outside `j`.
    pub fn restricted_to(&self, j: &SemigroupDescriptor) -> Result<Self> {
        if j.ambient() != &self.group {
            return Err(Error::DescriptorMismatch(format!(
                "semigroup lives in {}, function in {}",
                j.ambient(),
                self.group
            )));
        }
        let inner = self.clone();
        let j = j.clone();
        Ok(Self::new(self.group.clone(), move |t| {
            if j.contains(t)? {
                inner.eval(t)
            } else {
                Err(Error::OutOfDomain(format!("{t} lies outside the semigroup")))
            }
        }))
    }

    pub fn add(&self, other: &GroupFunction) -> Result<Self> {
        if other.group != self.group {
            return Err(Error::DescriptorMismatch("functions on different groups".into()));
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(Self::new(self.group.clone(), move |t| Ok(a.eval(t)? + b.eval(t)?)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let (a, c) = (self.clone(), c.clone());
        Self::new(self.group.clone(), move |t| Ok(&c * &a.eval(t)?))
    }
}

impl fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupFunction").field("group", &self.group).finish_non_exhaustive()
    }
}
