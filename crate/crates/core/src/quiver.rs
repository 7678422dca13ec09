//! Quivers as skew-symmetric exchange matrices.
//!
//! Vertices are positional (mutable ones first). Each vertex also carries a
//! display name and a [`VarId`]; the variable ids survive re-indexing by
//! [`Quiver::full_subquiver`] and [`Quiver::triangular_extension`], so
//! F-polynomials computed on different quivers can be compared directly.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::VarId;

pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n_mutable: usize,
    eps: Vec<Vec<i64>>,
    names: Vec<String>,
    vars: Vec<VarId>,
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

impl Quiver {
    /// Builds a quiver from its full exchange matrix; the first `n_mutable`
    /// rows are mutable. Names default to positions and variables to `X_i`.
    pub fn from_matrix(eps: Vec<Vec<i64>>, n_mutable: usize) -> Result<Self> {
        let n = eps.len();
        if n_mutable > n {
            return Err(Error::DimensionMismatch(format!("{n_mutable} mutable of {n}")));
        }
        for (i, row) in eps.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!("row {i} has length {}", row.len())));
            }
            for j in 0..n {
                if row[j] != -eps[j][i] {
                    return Err(Error::InvariantViolation(format!(
                        "exchange matrix not skew-symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Quiver {
            n_mutable,
            eps,
            names: (0..n).map(|i| i.to_string()).collect(),
            vars: (0..n as u32).map(VarId).collect(),
        })
    }

    /// Mutable quiver on `n` vertices from `(from, to, multiplicity)` arrows.
    pub fn from_arrows(n: usize, arrows: &[(VertexId, VertexId, i64)]) -> Result<Self> {
        let mut eps = vec![vec![0; n]; n];
        for &(i, j, m) in arrows {
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange(i.max(j)));
            }
            if i == j {
                return Err(Error::InvariantViolation(format!("loop at vertex {i}")));
            }
            eps[i][j] += m;
            eps[j][i] -= m;
        }
        Self::from_matrix(eps, n)
    }

    /// Mutable quiver whose vertices are named and indexed by the given
    /// integer labels.
    pub fn from_labeled_arrows(labels: &[u32], arrows: &[(u32, u32, i64)]) -> Result<Self> {
        let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        if index.len() != labels.len() {
            return Err(Error::Parse("duplicate vertex label".into()));
        }
        let look = |l: u32| index.get(&l).copied().ok_or_else(|| Error::Parse(format!("unknown vertex {l}")));
        let mut idx = Vec::with_capacity(arrows.len());
        for &(a, b, m) in arrows {
            idx.push((look(a)?, look(b)?, m));
        }
        Ok(Self::from_arrows(labels.len(), &idx)?.with_labels(labels))
    }

    /// Uses integer labels both as names and as variable ids.
    pub fn with_labels(mut self, labels: &[u32]) -> Self {
        assert_eq!(labels.len(), self.n());
        self.names = labels.iter().map(|l| l.to_string()).collect();
        self.vars = labels.iter().map(|&l| VarId(l)).collect();
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n());
        self.names = names;
        self
    }

    pub fn with_vars(mut self, vars: Vec<VarId>) -> Self {
        assert_eq!(vars.len(), self.n());
        self.vars = vars;
        self
    }

    pub fn n(&self) -> usize {
        self.eps.len()
    }

    pub fn n_mutable(&self) -> usize {
        self.n_mutable
    }

    pub fn n_frozen(&self) -> usize {
        self.n() - self.n_mutable
    }

    pub fn is_mutable(&self, i: VertexId) -> bool {
        i < self.n_mutable
    }

    pub fn eps(&self, i: VertexId, j: VertexId) -> i64 {
        self.eps[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.eps
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: VertexId) -> &str {
        &self.names[i]
    }

    pub fn var(&self, i: VertexId) -> VarId {
        self.vars[i]
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn position_of_var(&self, v: VarId) -> Option<VertexId> {
        self.vars.iter().position(|&w| w == v)
    }

    pub fn position_of_name(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    /// Arrows `i → j` with their multiplicities, in row-major order.
    pub fn arrows(&self) -> Vec<(VertexId, VertexId, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.eps[i][j] > 0 {
                    out.push((i, j, self.eps[i][j]));
                }
            }
        }
        out
    }

    pub fn mutate(&self, k: VertexId) -> Result<Quiver> {
        if k >= self.n() {
            return Err(Error::VertexOutOfRange(k));
        }
        if !self.is_mutable(k) {
            return Err(Error::FrozenMutation(k));
        }
        let n = self.n();
        let e = &self.eps;
        let mut out = e.clone();
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -e[i][j]
                } else {
                    e[i][j] + pos(e[i][k]) * pos(e[k][j]) - pos(-e[i][k]) * pos(-e[k][j])
                };
            }
        }
        debug_assert!((0..n).all(|i| (0..n).all(|j| out[i][j] == -out[j][i])));
        Ok(Quiver { eps: out, ..self.clone() })
    }

    pub fn mutate_seq(&self, seq: &[VertexId]) -> Result<Quiver> {
        let mut q = self.clone();
        for &k in seq {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// The quiver with only its mutable vertices.
    pub fn mutable_part(&self) -> Quiver {
        let keep: Vec<_> = (0..self.n_mutable).collect();
        self.restrict(&keep)
    }

    /// Framing by one frozen vertex `i'` per mutable vertex `i`, with an
    /// arrow `i → i'`. Existing frozen vertices are dropped.
    pub fn with_principal_coefficients(&self) -> Quiver {
        let n = self.n_mutable;
        let mut eps = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                eps[i][j] = self.eps[i][j];
            }
            eps[i][n + i] = 1;
            eps[n + i][i] = -1;
        }
        let top = self.vars[..n].iter().map(|v| v.0 + 1).max().unwrap_or(0);
        let mut names = self.names[..n].to_vec();
        names.extend(self.names[..n].iter().map(|s| format!("{s}'")));
        let mut vars = self.vars[..n].to_vec();
        vars.extend((0..n as u32).map(|i| VarId(top + i)));
        Quiver { n_mutable: n, eps, names, vars }
    }

    fn restrict(&self, keep: &[VertexId]) -> Quiver {
        Quiver {
            n_mutable: keep.iter().filter(|&&i| self.is_mutable(i)).count(),
            eps: keep.iter().map(|&i| keep.iter().map(|&j| self.eps[i][j]).collect()).collect(),
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            vars: keep.iter().map(|&i| self.vars[i]).collect(),
        }
    }

    /// Full subquiver on `keep` (taken in increasing position order).
    pub fn full_subquiver(&self, keep: &BTreeSet<VertexId>) -> Result<Quiver> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = keep.iter().find(|&&i| i >= self.n()) {
            return Err(Error::VertexOutOfRange(bad));
        }
        let keep: Vec<_> = keep.iter().copied().collect();
        Ok(self.restrict(&keep))
    }

    /// Block quiver `(ε₁, δ; −δᵀ, ε₂)`: all connecting arrows point from
    /// `q1` to `q2`. Both inputs must be fully mutable with disjoint
    /// variable ids.
    pub fn triangular_extension(q1: &Quiver, q2: &Quiver, delta: &[Vec<i64>]) -> Result<Quiver> {
        let (n1, n2) = (q1.n(), q2.n());
        if q1.n_frozen() > 0 || q2.n_frozen() > 0 {
            return Err(Error::DimensionMismatch("triangular extension of framed quivers".into()));
        }
        if delta.len() != n1 || delta.iter().any(|r| r.len() != n2) {
            return Err(Error::DimensionMismatch(format!("delta must be {n1}x{n2}")));
        }
        if delta.iter().flatten().any(|&d| d < 0) {
            return Err(Error::NegativeDelta);
        }
        let v1: BTreeSet<_> = q1.vars.iter().collect();
        if q2.vars.iter().any(|v| v1.contains(v)) {
            return Err(Error::VarCollision);
        }
        let n = n1 + n2;
        let mut eps = vec![vec![0; n]; n];
        for i in 0..n1 {
            eps[i][..n1].copy_from_slice(&q1.eps[i]);
            for j in 0..n2 {
                eps[i][n1 + j] = delta[i][j];
                eps[n1 + j][i] = -delta[i][j];
            }
        }
        for i in 0..n2 {
            eps[n1 + i][n1..].copy_from_slice(&q2.eps[i]);
        }
        let mut names = q1.names.clone();
        names.extend(q2.names.iter().cloned());
        let mut vars = q1.vars.clone();
        vars.extend(q2.vars.iter().copied());
        Ok(Quiver { n_mutable: n, eps, names, vars })
    }

    /// True when both quivers have the same variables and the same arrows
    /// between them, regardless of vertex positions.
    pub fn same_up_to_positions(&self, other: &Quiver) -> bool {
        if self.n() != other.n() || self.n_mutable != other.n_mutable {
            return false;
        }
        let map: Option<Vec<usize>> = self.vars.iter().map(|&v| other.position_of_var(v)).collect();
        match map {
            Some(sigma) => is_isomorphism(self, other, &sigma),
            None => false,
        }
    }

    /// Whether the mutable part has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Mutable vertices ordered so every arrow goes forward (sources first,
    /// ties by position), or `None` when there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let n = self.n_mutable;
        let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| self.eps[i][j] > 0).count()).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop_first() {
            order.push(i);
            for j in 0..n {
                if self.eps[i][j] > 0 {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Whether the underlying graph of the mutable part is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n_mutable;
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.eps[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self) -> Value {
        let arrows: Vec<Value> = self
            .arrows()
            .into_iter()
            .map(|(i, j, m)| serde_json::json!([self.names[i], self.names[j], m]))
            .collect();
        serde_json::json!({
            "mutable": self.names[..self.n_mutable],
            "frozen": self.names[self.n_mutable..],
            "arrows": arrows,
        })
    }

    /// Reads the structured quiver format. When every name is a distinct
    /// non-negative integer the names double as variable ids.
    pub fn from_json(v: &Value) -> Result<Quiver> {
        let raw: QuiverJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut names: Vec<String> = raw.mutable.iter().map(name_of).collect::<Result<_>>()?;
        let n_mutable = names.len();
        for f in &raw.frozen {
            names.push(name_of(f)?);
        }
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if index.len() != names.len() {
            return Err(Error::Parse("duplicate vertex name".into()));
        }
        let n = names.len();
        let mut eps = vec![vec![0i64; n]; n];
        for a in &raw.arrows {
            if a.len() < 2 || a.len() > 3 {
                return Err(Error::Parse("arrow must be [from, to, multiplicity]".into()));
            }
            let lookup = |x: &Value| -> Result<usize> {
                let s = name_of(x)?;
                index.get(s.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown vertex `{s}`")))
            };
            let (i, j) = (lookup(&a[0])?, lookup(&a[1])?);
            let m = match a.get(2) {
                Some(x) => x.as_i64().ok_or_else(|| Error::Parse("multiplicity must be an integer".into()))?,
                None => 1,
            };
            if i == j {
                return Err(Error::Parse(format!("loop at `{}`", names[i])));
            }
            eps[i][j] += m;
            eps[j][i] -= m;
        }
        let mut q = Quiver::from_matrix(eps, n_mutable)?;
        let ids: Option<Vec<u32>> = names.iter().map(|s| s.parse().ok()).collect();
        if let Some(ids) = ids {
            if ids.iter().collect::<BTreeSet<_>>().len() == ids.len() {
                q.vars = ids.into_iter().map(VarId).collect();
            }
        }
        q.names = names;
        Ok(q)
    }

    /// DOT digraph; multiple arrows become one labeled edge.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n");
        for i in 0..self.n() {
            let shape = if self.is_mutable(i) { "ellipse" } else { "box" };
            let _ = writeln!(s, "  {i} [label=\"{}\", shape={shape}];", escape(&self.names[i]));
        }
        for (i, j, m) in self.arrows() {
            if m == 1 {
                let _ = writeln!(s, "  {i} -> {j};");
            } else {
                let _ = writeln!(s, "  {i} -> {j} [label=\"{m}\"];");
            }
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn name_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("bad vertex name {other}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    mutable: Vec<Value>,
    #[serde(default)]
    frozen: Vec<Value>,
    #[serde(default)]
    arrows: Vec<Vec<Value>>,
}

/// Whether `ε₂[σ(i)][σ(j)] = ε[i][j]` for all `i, j`.
pub fn is_isomorphism(q: &Quiver, q2: &Quiver, sigma: &[usize]) -> bool {
    let n = q.n();
    if q2.n() != n || sigma.len() != n {
        return false;
    }
    (0..n).all(|i| q.is_mutable(i) == q2.is_mutable(sigma[i]))
        && (0..n).all(|i| (0..n).all(|j| q2.eps[sigma[i]][sigma[j]] == q.eps[i][j]))
}

/// Lexicographically first isomorphism `σ` with `ε₂[σ(i)][σ(j)] = ε[i][j]`
/// that maps mutable vertices to mutable ones.
pub fn find_isomorphism(q: &Quiver, q2: &Quiver) -> Option<Vec<usize>> {
    let n = q.n();
    if q2.n() != n || q.n_mutable != q2.n_mutable {
        return None;
    }
    let signature = |qq: &Quiver, i: usize| {
        let mut row: Vec<i64> = qq.eps[i].clone();
        row.sort_unstable();
        (qq.is_mutable(i), row)
    };
    let sig1: Vec<_> = (0..n).map(|i| signature(q, i)).collect();
    let sig2: Vec<_> = (0..n).map(|i| signature(q2, i)).collect();
    let mut a: BTreeMap<_, usize> = BTreeMap::new();
    for s in &sig1 {
        *a.entry(s).or_default() += 1;
    }
    let mut b: BTreeMap<_, usize> = BTreeMap::new();
    for s in &sig2 {
        *b.entry(s).or_default() += 1;
    }
    if a != b {
        return None;
    }
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        q: &Quiver,
        q2: &Quiver,
        sig1: &[(bool, Vec<i64>)],
        sig2: &[(bool, Vec<i64>)],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = q.n();
        if i == n {
            return true;
        }
        for t in 0..n {
            if used[t] || sig1[i] != sig2[t] {
                continue;
            }
            if q2.eps[t][t] != q.eps[i][i] {
                continue;
            }
            if (0..i).any(|j| q2.eps[t][sigma[j]] != q.eps[i][j]) {
                continue;
            }
            sigma[i] = t;
            used[t] = true;
            if go(i + 1, q, q2, sig1, sig2, sigma, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }
    go(0, q, q2, &sig1, &sig2, &mut sigma, &mut used).then_some(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn markov() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap()
    }

    #[test]
    fn a2_mutation_flips_sign() {
        let q = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        assert_eq!(q.mutate(0).unwrap().eps(0, 1), -1);
    }

    #[test]
    fn markov_mutation() {
        let m = markov().mutate(0).unwrap();
        assert_eq!((m.eps(0, 1), m.eps(1, 2), m.eps(2, 0)), (-2, -2, -2));
    }

    #[test]
    fn frozen_mutation_rejected() {
        let q = markov().with_principal_coefficients();
        assert_eq!(q.mutate(4), Err(Error::FrozenMutation(4)));
    }

    #[test]
    fn principal_coefficients_shape() {
        let q = Quiver::from_arrows(1, &[]).unwrap().with_principal_coefficients();
        assert_eq!(q.matrix(), &[vec![0, 1], vec![-1, 0]]);
        let a2 = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap().with_principal_coefficients();
        assert_eq!(
            a2.matrix(),
            &[vec![0, 1, 1, 0], vec![-1, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]]
        );
    }

    #[test]
    fn framed_markov_c_rows() {
        // c-vector recurrence c'_i = c_i + [sgn(c_k) ε_ik]_+ c_k as an oracle
        let q = markov();
        let framed = q.with_principal_coefficients().mutate(0).unwrap();
        let c: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| framed.eps(i, 3 + j)).collect()).collect();
        let id = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut oracle: Vec<Vec<i64>> = id.iter().map(|r| r.to_vec()).collect();
        for i in 0..3 {
            if i == 0 {
                oracle[i] = id[0].iter().map(|x| -x).collect();
            } else {
                let f = pos(q.eps(i, 0));
                oracle[i] = (0..3).map(|j| id[i][j] + f * id[0][j]).collect();
            }
        }
        assert_eq!(c, oracle);
        assert_eq!(c, vec![vec![-1, 0, 0], vec![0, 1, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn subquiver_and_extension() {
        let q = markov();
        let all: BTreeSet<_> = (0..3).collect();
        assert_eq!(q.full_subquiver(&all).unwrap(), q);
        assert_eq!(q.full_subquiver(&BTreeSet::new()), Err(Error::EmptySubset));

        let s = Quiver::from_arrows(1, &[]).unwrap().with_labels(&[1]);
        let t = Quiver::from_arrows(1, &[]).unwrap().with_labels(&[2]);
        let ext = Quiver::triangular_extension(&s, &t, &[vec![1]]).unwrap();
        let a2 = Quiver::from_labeled_arrows(&[1, 2], &[(1, 2, 1)]).unwrap();
        assert_eq!(ext, a2);
        let disjoint = Quiver::triangular_extension(&s, &t, &[vec![0]]).unwrap();
        assert!(disjoint.arrows().is_empty());
        assert_eq!(Quiver::triangular_extension(&s, &t, &[vec![-1]]), Err(Error::NegativeDelta));
        assert_eq!(Quiver::triangular_extension(&s, &s, &[vec![0]]), Err(Error::VarCollision));
    }

    #[test]
    fn isomorphisms() {
        let q = markov();
        assert_eq!(find_isomorphism(&q, &q), Some(vec![0, 1, 2]));
        let rev = Quiver::from_arrows(3, &[(1, 0, 2), (2, 1, 2), (0, 2, 2)]).unwrap();
        assert_eq!(find_isomorphism(&q, &rev), Some(vec![0, 2, 1]));
        let a = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let b = Quiver::from_arrows(2, &[(1, 0, 1)]).unwrap();
        assert!(!is_isomorphism(&a, &b, &[0, 1]));
        assert_eq!(find_isomorphism(&a, &b), Some(vec![1, 0]));
        let kron = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
        assert_eq!(find_isomorphism(&a, &kron), None);
    }

    #[test]
    fn json_round_trip() {
        let q = Quiver::from_labeled_arrows(&[1, 2, 3], &[(2, 1, 1), (1, 3, 1), (2, 3, 2)]).unwrap();
        let back = Quiver::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        let text = r#"{"mutable":["a","b"],"frozen":["f"],"arrows":[["a","b",1],["b","f",2]]}"#;
        let q = Quiver::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!((q.n_mutable(), q.n_frozen(), q.eps(1, 2)), (2, 1, 2));
        assert_eq!(q.var(2), VarId(2));
    }

    #[test]
    fn dot_output() {
        let q = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
        assert!(q.to_dot().contains("0 -> 1 [label=\"2\"];"));
    }

    #[test]
    fn acyclicity() {
        assert!(!markov().is_acyclic());
        let q = Quiver::from_arrows(3, &[(1, 0, 1), (0, 2, 1), (1, 2, 2)]).unwrap();
        assert_eq!(q.topological_order(), Some(vec![1, 0, 2]));
    }
}
