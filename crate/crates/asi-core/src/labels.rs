//! Group labelings: one label per node, compacted to dense group indices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Per-node group membership.
///
/// Group indices are assigned by ascending label name, so the indexing is a
/// function of the label multiset alone and not of node order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLabeling {
    group_of: Vec<usize>,
    names: Vec<String>,
    sizes: Vec<usize>,
}

impl GroupLabeling {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidInput("no labels given".into()));
        }
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for l in labels {
            index.insert(l.as_ref(), 0);
        }
        for (g, (_, slot)) in index.iter_mut().enumerate() {
            *slot = g;
        }
        let group_of: Vec<usize> = labels.iter().map(|l| index[l.as_ref()]).collect();
        let names: Vec<String> = index.keys().map(|s| s.to_string()).collect();
        let mut sizes = vec![0usize; names.len()];
        for &g in &group_of {
            sizes[g] += 1;
        }
        Ok(GroupLabeling { group_of, names, sizes })
    }

    pub fn node_count(&self) -> usize {
        self.group_of.len()
    }

    pub fn group_count(&self) -> usize {
        self.names.len()
    }

    pub fn group_of(&self, node: usize) -> usize {
        self.group_of[node]
    }

    pub fn name(&self, group: usize) -> &str {
        &self.names[group]
    }

    pub fn size(&self, group: usize) -> usize {
        self.sizes[group]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self, group: usize) -> impl Iterator<Item = usize> + '_ {
        self.group_of
            .iter()
            .enumerate()
            .filter(move |(_, &g)| g == group)
            .map(|(i, _)| i)
    }

    pub fn check_group(&self, group: usize) -> Result<()> {
        if group >= self.group_count() {
            return Err(Error::InvalidInput(format!(
                "group {group} out of range (have {})",
                self.group_count()
            )));
        }
        Ok(())
    }
}
