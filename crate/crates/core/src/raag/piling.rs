//! Per-generator stacks encoding elements of a graph group.
//!
//! Pushing the letter `v^±` puts a sign bead on column `v` and a `0` bead on
//! every column `u ≠ v` that does not commute with `v`. If column `v` already
//! shows the opposite sign on top, the letter cancels instead and those beads
//! are removed. Two words give the same piling iff they represent the same
//! element.

use super::{Letter, RaagGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bead {
    Pos,
    Neg,
    Zero,
}

impl Bead {
    fn sign(inverse: bool) -> Self {
        if inverse {
            Bead::Neg
        } else {
            Bead::Pos
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piling {
    stacks: Vec<Vec<Bead>>,
    letters: usize,
}

impl Piling {
    pub fn empty(rank: usize) -> Self {
        Self {
            stacks: vec![Vec::new(); rank],
            letters: 0,
        }
    }

    /// Empty piling whose stacks can take `letters` beads without growing.
    pub fn with_capacity(rank: usize, letters: usize) -> Self {
        Self {
            stacks: (0..rank).map(|_| Vec::with_capacity(letters)).collect(),
            letters: 0,
        }
    }

    pub fn stacks(&self) -> &[Vec<Bead>] {
        &self.stacks
    }

    pub fn is_empty(&self) -> bool {
        self.letters == 0
    }

    /// Number of sign beads, i.e. the geodesic length of the element.
    pub fn letter_count(&self) -> usize {
        self.letters
    }

    /// Functional form of [`Piling::push`].
    pub fn with_letter(mut self, group: &RaagGroup, letter: Letter) -> Self {
        self.push(group, letter);
        self
    }

    pub fn push(&mut self, group: &RaagGroup, letter: Letter) {
        let v = letter.generator;
        let blocked = group.non_commuting(v);
        let opposite = Bead::sign(!letter.inverse);
        let cancels = self.stacks[v].last() == Some(&opposite)
            && blocked
                .iter()
                .all(|&u| self.stacks[u].last() == Some(&Bead::Zero));
        if cancels {
            self.stacks[v].pop();
            for &u in blocked {
                self.stacks[u].pop();
            }
            self.letters -= 1;
        } else {
            self.stacks[v].push(Bead::sign(letter.inverse));
            for &u in blocked {
                self.stacks[u].push(Bead::Zero);
            }
            self.letters += 1;
        }
    }

    /// Reads the piling back from the bottom, always taking the least exposed
    /// letter; yields the lexicographically least geodesic word.
    pub fn least_linearization(&self, group: &RaagGroup) -> Vec<Letter> {
        let rank = self.stacks.len();
        let mut floor = vec![0usize; rank];
        let mut out = Vec::with_capacity(self.letters);
        while out.len() < self.letters {
            let next = (0..rank).find_map(|v| {
                let bead = *self.stacks[v].get(floor[v])?;
                let inverse = match bead {
                    Bead::Pos => false,
                    Bead::Neg => true,
                    Bead::Zero => return None,
                };
                let exposed = group
                    .non_commuting(v)
                    .iter()
                    .all(|&u| self.stacks[u].get(floor[u]) == Some(&Bead::Zero));
                exposed.then_some(Letter::new(v, inverse))
            });
            let letter = next.expect("a nonempty piling always exposes a letter");
            floor[letter.generator] += 1;
            for &u in group.non_commuting(letter.generator) {
                floor[u] += 1;
            }
            out.push(letter);
        }
        out
    }
}
