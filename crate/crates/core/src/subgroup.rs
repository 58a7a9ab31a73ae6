use std::collections::VecDeque;
use std::fmt;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::group::{Group, Point, Side};

/// An explicitly enumerated subgroup of a group or of its dual.
///
/// `members` is sorted by linear index. `generators` is a non-redundant
/// generating list, kept for display and for fast annihilator tests.
#[derive(Clone)]
pub struct Subgroup<S: Side> {
    parent: Group,
    members: Vec<usize>,
    generators: Vec<usize>,
    _side: PhantomData<S>,
}

impl<S: Side> Subgroup<S> {
    pub fn trivial(parent: &Group) -> Self {
        Self::from_sorted(parent, vec![0], Vec::new())
    }

    pub fn whole(parent: &Group) -> Self {
        let members: Vec<usize> = (0..parent.order()).collect();
        let generators = greedy_generators(parent, &members);
        Self::from_sorted(parent, members, generators)
    }

    /// Closure of `gens` under addition.
    pub fn generated(parent: &Group, gens: &[Point<S>]) -> Result<Self> {
        for g in gens {
            parent.ensure_same(g.group())?;
        }
        let idx: Vec<usize> = gens.iter().map(Point::index).collect();
        Ok(Self::generated_by_indices(parent, &idx))
    }

    pub fn generated_by_indices(parent: &Group, gens: &[usize]) -> Self {
        let mut seen = vec![false; parent.order()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = parent.add_idx(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let members: Vec<usize> = (0..parent.order()).filter(|&i| seen[i]).collect();
        let generators = greedy_generators(parent, gens);
        Self::from_sorted(parent, members, generators)
    }

    /// `{a·x}`.
    pub fn image(parent: &Group, a: i64) -> Self {
        let mut seen = vec![false; parent.order()];
        for x in 0..parent.order() {
            seen[parent.scale_idx(a, x)] = true;
        }
        let members: Vec<usize> = (0..parent.order()).filter(|&i| seen[i]).collect();
        let generators = greedy_generators(parent, &members);
        Self::from_sorted(parent, members, generators)
    }

    /// `{x : a·x = 0}`.
    pub fn kernel(parent: &Group, a: i64) -> Self {
        let members: Vec<usize> =
            (0..parent.order()).filter(|&x| parent.scale_idx(a, x) == 0).collect();
        let generators = greedy_generators(parent, &members);
        Self::from_sorted(parent, members, generators)
    }

    /// Accepts an arbitrary index set and returns it as a subgroup if it
    /// contains zero and is closed under subtraction.
    pub fn from_indices(parent: &Group, indices: &[usize]) -> Option<Self> {
        let mut members = indices.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) || members.iter().any(|&i| i >= parent.order()) {
            return None;
        }
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        // closure under x - y is enough for a nonempty finite set
        for &x in &members {
            for &y in &members {
                if !mask[parent.sub_idx(x, y)] {
                    return None;
                }
            }
        }
        let generators = greedy_generators(parent, &members);
        Some(Self::from_sorted(parent, members, generators))
    }

    fn from_sorted(parent: &Group, members: Vec<usize>, generators: Vec<usize>) -> Self {
        debug_assert_eq!(parent.order() % members.len(), 0);
        Subgroup { parent: parent.clone(), members, generators, _side: PhantomData }
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn members(&self) -> impl Iterator<Item = Point<S>> + '_ {
        self.members.iter().map(|&i| Point::from_index(&self.parent, i))
    }

    pub fn generators(&self) -> impl Iterator<Item = Point<S>> + '_ {
        self.generators.iter().map(|&i| Point::from_index(&self.parent, i))
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        p.group() == &self.parent && self.contains_index(p.index())
    }

    /// Indicator vector over the parent.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &i in &self.members {
            m[i] = true;
        }
        m
    }

    /// The annihilator on the other side of the duality. Pairing is
    /// multiplicative, so testing the generators suffices; the test is the
    /// exact integer phase, never a floating comparison.
    pub fn annihilator(&self) -> Subgroup<S::Opposite> {
        let g = &self.parent;
        let members: Vec<usize> = (0..g.order())
            .filter(|&x| self.generators.iter().all(|&y| g.phase(x, y) == 0))
            .collect();
        let generators = greedy_generators(g, &members);
        Subgroup::from_sorted(g, members, generators)
    }

    pub fn ensure_parent(&self, g: &Group) -> Result<()> {
        if &self.parent == g {
            Ok(())
        } else {
            Err(Error::GroupMismatch { expected: g.to_string(), found: self.parent.to_string() })
        }
    }
}

impl<S: Side> PartialEq for Subgroup<S> {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl<S: Side> Eq for Subgroup<S> {}

impl<S: Side> fmt::Debug for Subgroup<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<Vec<u64>> = self.generators.iter().map(|&i| self.parent.coords_of(i)).collect();
        write!(f, "Subgroup(order {} of {}, generated by {:?})", self.len(), self.parent, gens)
    }
}

/// Walks `candidates` in order and keeps each one not already in the span
/// of those kept so far.
fn greedy_generators(g: &Group, candidates: &[usize]) -> Vec<usize> {
    let mut span = vec![false; g.order()];
    span[0] = true;
    let mut span_list = vec![0usize];
    let mut gens = Vec::new();
    for &c in candidates {
        if span[c] {
            continue;
        }
        gens.push(c);
        // extend the span by multiples of c added to everything present
        let mut frontier = span_list.clone();
        while let Some(x) = frontier.pop() {
            let y = g.add_idx(x, c);
            if !span[y] {
                span[y] = true;
                span_list.push(y);
                frontier.push(y);
            }
        }
    }
    gens
}
