//! Iterative-deepening search for reddening and maximal green sequences.
//!
//! The search state is the mutable block `(ε | C)` of the framed quiver,
//! stored as a flat `n × 2n` array and mutated in place. Failed states are
//! memoized together with the previous vertex and the remaining depth.

use std::collections::HashMap;

use crate::quiver::{Quiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Any vertex may be mutated.
    Reddening,
    /// Only green vertices may be mutated.
    MaximalGreen,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub max_depth: usize,
    pub mode: SearchMode,
    /// Give up after visiting this many states.
    pub node_limit: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_depth: 12, mode: SearchMode::Reddening, node_limit: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<VertexId>),
    /// No witness up to the depth limit.
    NotFound,
    /// The node limit was hit first.
    Aborted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Vec<VertexId>> {
        match self {
            SearchOutcome::Found(s) => Some(s),
            _ => None,
        }
    }
}

/// Lexicographically smallest among the shortest witnesses up to
/// `max_depth`, or `None`.
pub fn search_reddening(q: &Quiver, max_depth: usize, mode: SearchMode) -> Option<Vec<VertexId>> {
    search_reddening_with(q, SearchConfig { max_depth, mode, node_limit: None }).found()
}

pub fn search_reddening_with(q: &Quiver, cfg: SearchConfig) -> SearchOutcome {
    let n = q.n_mutable();
    let framed = q.with_principal_coefficients();
    let mut state = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..2 * n {
            state.push(framed.eps(i, j));
        }
    }
    let mut s = Searcher { n, cfg, memo: HashMap::new(), nodes: 0, path: Vec::new(), aborted: false };
    for depth in 0..=cfg.max_depth {
        if s.dfs(&state, depth, usize::MAX) {
            return SearchOutcome::Found(s.path);
        }
        if s.aborted {
            return SearchOutcome::Aborted;
        }
    }
    SearchOutcome::NotFound
}

struct Searcher {
    n: usize,
    cfg: SearchConfig,
    memo: HashMap<(Vec<i64>, usize), usize>,
    nodes: u64,
    path: Vec<VertexId>,
    aborted: bool,
}

impl Searcher {
    fn all_red(&self, st: &[i64]) -> bool {
        let w = 2 * self.n;
        (0..self.n).all(|i| st[i * w + self.n..(i + 1) * w].iter().all(|&c| c <= 0))
    }

    fn green(&self, st: &[i64], i: usize) -> bool {
        let w = 2 * self.n;
        st[i * w + self.n..(i + 1) * w].iter().all(|&c| c >= 0)
    }

    fn mutate(&self, st: &[i64], k: usize) -> Vec<i64> {
        let (n, w) = (self.n, 2 * self.n);
        let mut out = st.to_vec();
        for i in 0..n {
            if i == k {
                continue;
            }
            let eik = st[i * w + k];
            if eik == 0 {
                continue;
            }
            for j in 0..w {
                if j == k {
                    continue;
                }
                let ekj = st[k * w + j];
                if eik > 0 && ekj > 0 {
                    out[i * w + j] += eik * ekj;
                } else if eik < 0 && ekj < 0 {
                    out[i * w + j] -= eik * ekj;
                }
            }
        }
        for j in 0..w {
            out[k * w + j] = -st[k * w + j];
        }
        for i in 0..n {
            out[i * w + k] = -st[i * w + k];
        }
        out
    }

    fn dfs(&mut self, st: &[i64], left: usize, last: usize) -> bool {
        if self.all_red(st) {
            return true;
        }
        if left == 0 || self.aborted {
            return false;
        }
        self.nodes += 1;
        if let Some(limit) = self.cfg.node_limit {
            if self.nodes > limit {
                self.aborted = true;
                return false;
            }
        }
        let key = (st.to_vec(), last);
        if self.memo.get(&key).is_some_and(|&r| r >= left) {
            return false;
        }
        for k in 0..self.n {
            if k == last {
                continue;
            }
            if self.cfg.mode == SearchMode::MaximalGreen && !self.green(st, k) {
                continue;
            }
            let next = self.mutate(st, k);
            self.path.push(k);
            if self.dfs(&next, left - 1, k) {
                return true;
            }
            self.path.pop();
        }
        if !self.aborted {
            self.memo.insert(key, left);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let one = Quiver::from_arrows(1, &[]).unwrap();
        assert_eq!(search_reddening(&one, 3, SearchMode::Reddening), Some(vec![0]));
        let a2 = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        assert_eq!(search_reddening(&a2, 4, SearchMode::Reddening), Some(vec![0, 1]));
        assert_eq!(search_reddening(&a2, 4, SearchMode::MaximalGreen), Some(vec![0, 1]));
        assert_eq!(search_reddening(&a2, 1, SearchMode::Reddening), None);
        let empty = Quiver::from_arrows(0, &[]).unwrap();
        assert_eq!(search_reddening(&empty, 0, SearchMode::Reddening), Some(vec![]));
    }

    #[test]
    fn markov_has_none() {
        let m = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        assert_eq!(search_reddening(&m, 10, SearchMode::Reddening), None);
    }

    #[test]
    fn node_limit_aborts() {
        let m = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        let cfg = SearchConfig { max_depth: 12, mode: SearchMode::Reddening, node_limit: Some(10) };
        assert_eq!(search_reddening_with(&m, cfg), SearchOutcome::Aborted);
    }
}
