//! The `(i <- j)` shift and compression to a shifted family.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::family::{KSet, SetFamily, VertexSet};

/// A shift pair `(i <- j)` with `1 <= i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftPair {
    i: usize,
    j: usize,
}

impl ShiftPair {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::params(format!("shift pair needs 1 <= i < j <= {n}, got ({i}, {j})")));
        }
        Ok(ShiftPair { i, j })
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    /// `(A \ {j}) ∪ {i}` when `A ∩ {i, j} = {j}`.
    fn image(self, a: KSet) -> Option<KSet> {
        (a.contains(self.j) && !a.contains(self.i))
            .then(|| (a - VertexSet::singleton(self.j)) | VertexSet::singleton(self.i))
    }
}

/// Applies `S_{i<-j}`: each member holding `j` but not `i` is replaced by
/// its image unless the image is already a member.
pub fn shift_once(f: &SetFamily, p: ShiftPair) -> SetFamily {
    shift_counted(f, p).0
}

fn shift_counted(f: &SetFamily, p: ShiftPair) -> (SetFamily, usize) {
    let present: HashSet<KSet> = f.members().iter().copied().collect();
    let mut moved = 0;
    let members = f
        .members()
        .iter()
        .map(|&a| match p.image(a) {
            Some(b) if !present.contains(&b) => {
                moved += 1;
                b
            }
            _ => a,
        })
        .collect();
    (SetFamily::from_sets_unchecked(f.params(), members), moved)
}

/// True iff `(F \ {j}) ∪ {i}` is a member for every member `F` and every
/// `i < j` with `i ∉ F`, `j ∈ F`.
pub fn is_shifted(f: &SetFamily) -> bool {
    let present: HashSet<KSet> = f.members().iter().copied().collect();
    f.members().iter().all(|&a| {
        a.elements().all(|j| {
            (1..j)
                .filter(|&i| !a.contains(i))
                .all(|i| present.contains(&((a - VertexSet::singleton(j)) | VertexSet::singleton(i))))
        })
    })
}

/// One effective shift in a [`full_shift`] run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftStep {
    pub pair: ShiftPair,
    pub moved: usize,
}

/// Sweeps all pairs in ascending `(i, j)` order until a full sweep changes
/// nothing. Returns the shifted family and the effective steps.
pub fn full_shift(f: &SetFamily) -> (SetFamily, Vec<ShiftStep>) {
    let n = f.n();
    let mut current = f.clone();
    let mut steps = Vec::new();
    loop {
        let mut changed = false;
        for i in 1..n {
            for j in i + 1..=n {
                let pair = ShiftPair { i, j };
                let (next, moved) = shift_counted(&current, pair);
                if moved > 0 {
                    steps.push(ShiftStep { pair, moved });
                    current = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return (current, steps);
        }
    }
}
