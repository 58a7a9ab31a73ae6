use std::collections::BTreeSet;

use num::rational::Ratio;
use num::Zero;
use serde::Serialize;

use crate::group::Group;

/// Nonnegative rationals `k/d` with `d ≤ max_denominator` and value at most
/// `max_value`, sorted and without repeats.
pub fn rational_values(max_denominator: i64, max_value: i64) -> Vec<Ratio<i64>> {
    let mut set = BTreeSet::new();
    for d in 1..=max_denominator {
        for k in 0..=max_value * d {
            set.insert(Ratio::new(k, d));
        }
    }
    set.into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Fe1Search {
    pub group: String,
    pub values_per_point: usize,
    /// Partial assignments visited.
    pub nodes: u64,
    /// Nonzero solutions found, as `"p/q"` strings per group element.
    pub solutions: Vec<Vec<String>>,
    /// `false` when the search stopped at `limit` solutions.
    pub exhausted: bool,
}

/// Exhaustive search for `φ: Y → values` with
/// `φ(u + v) + φ(u − v) = 2[φ(u) + φ(v)]` for all `u, v`, in exact
/// arithmetic. Each equation is checked as soon as all four of its points
/// are assigned, so a branch is cut only when some equation already fails:
/// the search visits every solution.
pub fn fe1_nonnegative_solutions(y: &Group, values: &[Ratio<i64>], limit: usize) -> Fe1Search {
    let n = y.order();
    let mut by_last: Vec<Vec<[usize; 4]>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in 0..n {
            let pts = [y.add_idx(u, v), y.sub_idx(u, v), u, v];
            let last = *pts.iter().max().unwrap();
            by_last[last].push(pts);
        }
    }
    let mut state = State { values, by_last, phi: vec![Ratio::zero(); n], nodes: 0, solutions: Vec::new(), limit };
    let exhausted = state.extend(0);
    Fe1Search {
        group: y.to_string(),
        values_per_point: values.len(),
        nodes: state.nodes,
        solutions: state.solutions,
        exhausted,
    }
}

struct State<'a> {
    values: &'a [Ratio<i64>],
    by_last: Vec<Vec<[usize; 4]>>,
    phi: Vec<Ratio<i64>>,
    nodes: u64,
    solutions: Vec<Vec<String>>,
    limit: usize,
}

impl State<'_> {
    /// Returns `false` once `limit` solutions have been collected.
    fn extend(&mut self, k: usize) -> bool {
        if k == self.phi.len() {
            if self.phi.iter().any(|v| !v.is_zero()) {
                self.solutions.push(self.phi.iter().map(|v| v.to_string()).collect());
                if self.solutions.len() >= self.limit {
                    return false;
                }
            }
            return true;
        }
        for i in 0..self.values.len() {
            self.phi[k] = self.values[i];
            self.nodes += 1;
            let ok = self.by_last[k].iter().all(|&[s, d, u, v]| {
                let two = Ratio::from_integer(2);
                self.phi[s] + self.phi[d] == two * (self.phi[u] + self.phi[v])
            });
            if ok && !self.extend(k + 1) {
                return false;
            }
        }
        true
    }
}
