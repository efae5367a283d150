//! Graph groups `A(Γ)`: generators are the vertices of `Γ`, and two
//! generators commute exactly when their vertices are adjacent.
//!
//! Word problem, geodesics and normal forms all go through [`Piling`], which
//! is built in time linear in the word length for a fixed graph.

mod cohomology;
mod piling;
mod word;

use std::collections::{BTreeSet, VecDeque};

pub use cohomology::{is_hamiltonian_triple, is_hamiltonian_triple_bounded, CohomologyTriple};
pub use piling::{Bead, Piling};
pub use word::{GroupWord, Letter, WordParseError};

use crate::graph::{self, GraphError, SimplicialGraph};

/// Cap on the number of cyclic forms visited by [`RaagGroup::are_conjugate`].
pub const DEFAULT_CONJUGACY_ORBIT_LIMIT: usize = 200_000;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum RaagError {
    #[error("generator {generator} out of range for a group of rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
    #[error("cyclic orbit exceeds the search limit of {limit} forms")]
    SizeLimit { limit: usize },
    #[error("cohomology pairing table is malformed")]
    MalformedTriple,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RaagGroup {
    graph: SimplicialGraph,
    // for each vertex, the other vertices it does not commute with
    non_commuting: Vec<Vec<usize>>,
}

impl RaagGroup {
    pub fn new(graph: SimplicialGraph) -> Self {
        let n = graph.n();
        let non_commuting = (0..n)
            .map(|v| (0..n).filter(|&u| u != v && !graph.has_edge(u, v)).collect())
            .collect();
        Self {
            graph,
            non_commuting,
        }
    }

    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.graph.n()
    }

    pub(crate) fn non_commuting(&self, v: usize) -> &[usize] {
        &self.non_commuting[v]
    }

    /// Distinct generators that commute.
    pub fn commute(&self, a: Letter, b: Letter) -> bool {
        a.generator != b.generator && self.graph.has_edge(a.generator, b.generator)
    }

    pub fn check_word(&self, w: &GroupWord) -> Result<(), RaagError> {
        match w.letters().iter().find(|l| l.generator >= self.rank()) {
            Some(l) => Err(RaagError::GeneratorOutOfRange {
                generator: l.generator,
                rank: self.rank(),
            }),
            None => Ok(()),
        }
    }

    pub fn free_reduce(&self, w: &GroupWord) -> Result<GroupWord, RaagError> {
        self.check_word(w)?;
        Ok(w.freely_reduced())
    }

    pub fn piling(&self, w: &GroupWord) -> Result<Piling, RaagError> {
        self.check_word(w)?;
        let mut p = Piling::with_capacity(self.rank(), w.len());
        for &l in w.letters() {
            p.push(self, l);
        }
        Ok(p)
    }

    /// Word problem; linear in `|w|` for a fixed graph.
    pub fn is_trivial(&self, w: &GroupWord) -> Result<bool, RaagError> {
        Ok(self.piling(w)?.is_empty())
    }

    pub fn equal(&self, a: &GroupWord, b: &GroupWord) -> Result<bool, RaagError> {
        Ok(self.piling(a)? == self.piling(b)?)
    }

    /// Lexicographically least geodesic representative, under the letter
    /// order `x0 < x0⁻¹ < x1 < x1⁻¹ < …`.
    pub fn normal_form(&self, w: &GroupWord) -> Result<GroupWord, RaagError> {
        let p = self.piling(w)?;
        Ok(GroupWord(p.least_linearization(self)))
    }

    pub fn geodesic_length(&self, w: &GroupWord) -> Result<usize, RaagError> {
        Ok(self.piling(w)?.letter_count())
    }

    /// Decides whether `c⁻¹ w1 c = w2` for some `c`.
    ///
    /// Both words are cyclically reduced, then compared by the least normal
    /// form over their orbits under cyclic permutation and commutation.
    pub fn are_conjugate(&self, w1: &GroupWord, w2: &GroupWord) -> Result<bool, RaagError> {
        self.are_conjugate_bounded(w1, w2, DEFAULT_CONJUGACY_ORBIT_LIMIT)
    }

    pub fn are_conjugate_bounded(
        &self,
        w1: &GroupWord,
        w2: &GroupWord,
        limit: usize,
    ) -> Result<bool, RaagError> {
        let a = self.cyclic_reduction(w1)?;
        let b = self.cyclic_reduction(w2)?;
        if a.len() != b.len() {
            return Ok(false);
        }
        let mut la = a.letters().to_vec();
        let mut lb = b.letters().to_vec();
        la.sort_unstable();
        lb.sort_unstable();
        if la != lb {
            return Ok(false);
        }
        Ok(self.cyclic_orbit_min(&a, limit)? == self.cyclic_orbit_min(&b, limit)?)
    }

    /// Least normal form among all cyclically reduced conjugates of `w`; a
    /// complete conjugacy invariant.
    pub fn cyclic_normal_form(&self, w: &GroupWord) -> Result<GroupWord, RaagError> {
        let r = self.cyclic_reduction(w)?;
        self.cyclic_orbit_min(&r, DEFAULT_CONJUGACY_ORBIT_LIMIT)
    }

    /// Conjugates `w` by letters that are simultaneously a first letter and,
    /// inverted, a last letter of some geodesic, until no such letter exists.
    /// Returns a geodesic word.
    pub fn cyclic_reduction(&self, w: &GroupWord) -> Result<GroupWord, RaagError> {
        let mut word = self.normal_form(w)?.0;
        'outer: loop {
            for i in 0..word.len() {
                if !self.is_initial(&word, i) {
                    continue;
                }
                for j in (i + 1..word.len()).rev() {
                    if word[j].cancels(word[i]) && self.is_terminal(&word, j) {
                        word.remove(j);
                        word.remove(i);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Ok(GroupWord(word))
    }

    // letter `i` commutes with everything before it
    fn is_initial(&self, word: &[Letter], i: usize) -> bool {
        word[..i].iter().all(|&l| self.commute(l, word[i]))
    }

    fn is_terminal(&self, word: &[Letter], j: usize) -> bool {
        word[j + 1..].iter().all(|&l| self.commute(l, word[j]))
    }

    fn cyclic_orbit_min(&self, start: &GroupWord, limit: usize) -> Result<GroupWord, RaagError> {
        let start = self.normal_form(start)?;
        let mut seen: BTreeSet<Vec<Letter>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.0.clone());
        queue.push_back(start.0);
        while let Some(word) = queue.pop_front() {
            for i in 0..word.len() {
                let mut moves = Vec::with_capacity(2);
                if self.is_initial(&word, i) {
                    let mut rotated = word.clone();
                    let l = rotated.remove(i);
                    rotated.push(l);
                    moves.push(rotated);
                }
                if self.is_terminal(&word, i) {
                    let mut rotated = word.clone();
                    let l = rotated.remove(i);
                    rotated.insert(0, l);
                    moves.push(rotated);
                }
                for m in moves {
                    let nf = GroupWord(self.piling(&GroupWord(m))?.least_linearization(self));
                    if seen.insert(nf.0.clone()) {
                        if seen.len() > limit {
                            return Err(RaagError::SizeLimit { limit });
                        }
                        queue.push_back(nf.0);
                    }
                }
            }
        }
        Ok(GroupWord(seen.into_iter().next().unwrap_or_default()))
    }

    /// Graph groups are isomorphic iff their graphs are.
    pub fn is_isomorphic(&self, other: &RaagGroup) -> Result<bool, RaagError> {
        Ok(graph::find_isomorphism(&self.graph, &other.graph, graph::DEFAULT_MAP_SEARCH_BOUND)?
            .is_some())
    }

    /// Factor groups on the induced subgraphs of the finest join decomposition.
    pub fn direct_product_decomposition(&self) -> Vec<RaagGroup> {
        graph::join_decompose(&self.graph)
            .factors
            .iter()
            .map(|f| RaagGroup::new(self.graph.induced_subgraph(f)))
            .collect()
    }

    pub fn cohomology_triple(&self) -> CohomologyTriple {
        CohomologyTriple::from_graph(&self.graph)
    }
}

/// Convenience wrapper matching the two-group form.
pub fn raag_isomorphic(a: &RaagGroup, b: &RaagGroup) -> Result<bool, RaagError> {
    a.is_isomorphic(b)
}
