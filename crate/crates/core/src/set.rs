use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSpec};
use crate::words::Word;

/// A sorted, duplicate-free set of vertex indices bound to the graph it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    spec: GraphSpec,
    members: Vec<u32>,
}

impl VertexSet {
    pub fn new(spec: GraphSpec, mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { spec, members }
    }

    /// Ranks every word in `words` under `spec`.
    pub fn from_words<'a, I>(spec: GraphSpec, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let space = spec.space()?;
        let members = words
            .into_iter()
            .map(|w| space.rank(w).map(|r| r as u32))
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexSet::new(spec, members))
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn words(&self) -> Result<Vec<Word>> {
        let space = self.spec.space()?;
        self.members
            .iter()
            .map(|&v| space.unrank(v as u64))
            .collect()
    }

    /// Same members viewed in the other orientation of the same word set.
    pub fn rebind(&self, spec: GraphSpec) -> Result<Self> {
        if (spec.d, spec.t, spec.n) != (self.spec.d, self.spec.t, self.spec.n) {
            return Err(Error::SpecMismatch {
                set: self.spec.to_string(),
                graph: spec.to_string(),
            });
        }
        Ok(VertexSet {
            spec,
            members: self.members.clone(),
        })
    }

    pub(crate) fn check_against(&self, g: &Graph) -> Result<()> {
        if self.spec != *g.spec() {
            return Err(Error::SpecMismatch {
                set: self.spec.to_string(),
                graph: g.spec().to_string(),
            });
        }
        if let Some(&last) = self.members.last() {
            if last as usize >= g.vertex_count() {
                return Err(Error::IndexOutOfRange {
                    index: last as u64,
                    count: g.vertex_count() as u64,
                });
            }
        }
        Ok(())
    }
}

/// Wire form: members as word strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexSetJson {
    pub spec: GraphSpec,
    pub members: Vec<Word>,
}

impl TryFrom<&VertexSet> for VertexSetJson {
    type Error = Error;

    fn try_from(s: &VertexSet) -> Result<Self> {
        Ok(VertexSetJson {
            spec: s.spec,
            members: s.words()?,
        })
    }
}

impl TryFrom<VertexSetJson> for VertexSet {
    type Error = Error;

    fn try_from(j: VertexSetJson) -> Result<Self> {
        j.spec.validate()?;
        VertexSet::from_words(j.spec, &j.members)
    }
}
