//! The quiver `Q_n` of the `n`-triangulated simplex, its frozen extension,
//! 3D lifts of hexagonal spans and the iterated maximal green sequence.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::{Label, LabeledPoset};
use crate::quiver::{Quiver, VertexId};

/// Orientation of every arrow of `Q_n`. Flip to `-1` to use the opposite
/// convention everywhere.
pub const ARROW_SIGN: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Triple {
    pub fn new(a: i64, b: i64, c: i64) -> Triple {
        Triple { a, b, c }
    }

    fn add(self, d: (i64, i64, i64)) -> Triple {
        Triple::new(self.a + d.0, self.b + d.1, self.c + d.2)
    }

    fn valid(self, n: usize) -> bool {
        self.a >= 0 && self.b >= 0 && self.c >= 0 && self.a + self.b + self.c == n as i64 - 3
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for Triple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Triple> {
        let parts: Vec<&str> = s.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
        let bad = || Error::Parse(format!("bad vertex {s:?}, expected a,b,c"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<i64> = parts.iter().map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
        Ok(Triple::new(v[0], v[1], v[2]))
    }
}

/// Vertices of `Q_n`, ordered by `a`, then `b`.
pub fn qn_vertices(n: usize) -> Vec<Triple> {
    assert!(n >= 3, "Q_n needs n >= 3");
    let m = n as i64 - 3;
    let mut out = Vec::new();
    for a in 0..=m {
        for b in 0..=m - a {
            out.push(Triple::new(a, b, m - a - b));
        }
    }
    out
}

pub fn qn_index(n: usize, t: Triple) -> Option<VertexId> {
    if !t.valid(n) {
        return None;
    }
    let m = n as i64 - 3;
    // rows a' < a contribute m - a' + 1 vertices each
    let before: i64 = (0..t.a).map(|a| m - a + 1).sum();
    Some((before + t.b) as usize)
}

const MOVES: [(i64, i64, i64); 3] = [(1, -1, 0), (-1, 0, 1), (0, 1, -1)];

/// `Q_n` with vertex names `a,b,c` and variables numbered by position.
pub fn qn_quiver(n: usize) -> Quiver {
    let vs = qn_vertices(n);
    let mut arrows = Vec::new();
    for (i, &v) in vs.iter().enumerate() {
        for d in MOVES {
            if let Some(j) = qn_index(n, v.add(d)) {
                arrows.push(if ARROW_SIGN > 0 { (i, j, 1) } else { (j, i, 1) });
            }
        }
    }
    Quiver::from_arrows(vs.len(), &arrows).unwrap().with_names(vs.iter().map(|v| v.to_string()).collect())
}

/// Frozen boundary face: `R_k` on the right edge, `B_k` on the bottom edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrozenFace {
    pub name: String,
    pub j: Vec<usize>,
}

/// Mutable and frozen faces of `Q_n` with their sink sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QnSpec {
    pub n: usize,
    pub mutable: Vec<Triple>,
    pub frozen: Vec<FrozenFace>,
}

impl QnSpec {
    pub fn new(n: usize) -> QnSpec {
        let mut frozen = Vec::new();
        for k in 1..n {
            frozen.push(FrozenFace { name: format!("R{k}"), j: (k + 1..=n).collect() });
        }
        for k in 1..n {
            frozen.push(FrozenFace { name: format!("B{k}"), j: (1..=n - k).collect() });
        }
        QnSpec { n, mutable: qn_vertices(n), frozen }
    }

    /// `J_(a,b,c) = {1..a+1} ∪ {n-c..n}`.
    pub fn j_set(&self, t: Triple) -> Vec<usize> {
        let n = self.n as i64;
        (1..=t.a + 1).chain(n - t.c..=n).map(|x| x as usize).collect()
    }

    /// Sink sets of every vertex of [`qn_extended`], in vertex order.
    pub fn all_j_sets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<_> = self.mutable.iter().map(|&t| self.j_set(t)).collect();
        out.extend(self.frozen.iter().map(|f| f.j.clone()));
        out
    }
}

#[derive(Clone, Debug)]
pub struct ExtendedQn {
    pub spec: QnSpec,
    /// Mutable vertices first as in [`qn_quiver`], then `R_1..R_{n-1}`,
    /// then `B_1..B_{n-1}`.
    pub quiver: Quiver,
}

/// `Q_n` with frozen right and bottom boundary faces, closing
/// counterclockwise 3-cycles around the boundary black vertices.
pub fn qn_extended(n: usize) -> ExtendedQn {
    let spec = QnSpec::new(n);
    let q = qn_quiver(n);
    let nm = q.n();
    let total = nm + spec.frozen.len();
    let r = |k: usize| nm + k - 1;
    let bf = |k: usize| nm + (n - 1) + k - 1;
    let mut eps = vec![vec![0i64; total]; total];
    for i in 0..nm {
        for j in 0..nm {
            eps[i][j] = q.eps(i, j);
        }
    }
    let mut add = |from: usize, to: usize| {
        let s = ARROW_SIGN;
        eps[from][to] += s;
        eps[to][from] -= s;
    };
    let m = n as i64 - 3;
    for k in 0..=m {
        let v = qn_index(n, Triple::new(0, k, m - k)).unwrap();
        add(v, r(k as usize + 1));
        add(r(k as usize + 2), v);
        let w = qn_index(n, Triple::new(m - k, k, 0)).unwrap();
        add(bf(k as usize + 1), w);
        add(w, bf(k as usize + 2));
    }
    let mut names: Vec<String> = q.names().to_vec();
    names.extend(spec.frozen.iter().map(|f| f.name.clone()));
    let quiver = Quiver::from_matrix(eps, nm).unwrap().with_names(names);
    ExtendedQn { spec, quiver }
}

/// The 3D lift of the hexagonal span at `(a,b,c)`: lattice points of the
/// box `[0,c]×[0,a]×[0,b]` labeled through the projection `π` to `Q_n`,
/// with covers read off the arrows between projected neighbors.
pub fn lift3d_poset(n: usize, a: i64, b: i64, c: i64) -> Result<LabeledPoset> {
    let t = Triple::new(a, b, c);
    if n < 3 || !t.valid(n) {
        return Err(Error::OutOfSimplex(a, b, c, n));
    }
    let q = qn_quiver(n);
    let dims = [c + 1, a + 1, b + 1];
    let id = |x: i64, y: i64, z: i64| ((x * dims[1] + y) * dims[2] + z) as usize;
    let pi = |x: i64, y: i64, z: i64| qn_index(n, Triple::new(a + x - y, b + y - z, c - x + z)).unwrap();
    let mut labels = Vec::new();
    let mut rel = Vec::new();
    for x in 0..dims[0] {
        for y in 0..dims[1] {
            for z in 0..dims[2] {
                labels.push(Label::Var(q.var(pi(x, y, z))));
                for (dx, dy, dz) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
                    let (x2, y2, z2) = (x + dx, y + dy, z + dz);
                    if x2 >= dims[0] || y2 >= dims[1] || z2 >= dims[2] {
                        continue;
                    }
                    let (u, v) = (id(x, y, z), id(x2, y2, z2));
                    // arrow source is the larger element
                    match q.eps(pi(x, y, z), pi(x2, y2, z2)) {
                        1 => rel.push((u, v)),
                        -1 => rel.push((v, u)),
                        e => {
                            return Err(Error::InvariantViolation(format!(
                                "lift neighbors project to vertices with ε = {e}"
                            )))
                        }
                    }
                }
            }
        }
    }
    LabeledPoset::new(labels, &rel)
}

/// The sequence `(k_0, …, k_{n-3})` followed by the sequence for `Q_{n-1}`
/// embedded through `(a,b,c) ↦ (a+1,b,c)`, as positions in [`qn_quiver`].
pub fn qn_maximal_green(n: usize) -> Vec<VertexId> {
    let mut seq = Vec::new();
    for shift in 0..=(n as i64 - 3) {
        let m = n as i64 - shift;
        for a in 0..=m - 3 {
            for b in (0..=a).rev() {
                let t = Triple::new(m - a - 3 + shift, b, a - b);
                seq.push(qn_index(n, t).unwrap());
            }
        }
    }
    seq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarId;
    use crate::poset::{count_ideals, ideal_function};
    use crate::seedtrack::{dt_transform, Color, PrincipalSeed};

    #[test]
    fn indexing() {
        for n in 3..9 {
            for (i, &t) in qn_vertices(n).iter().enumerate() {
                assert_eq!(qn_index(n, t), Some(i));
            }
        }
        assert_eq!("1,0,2".parse::<Triple>().unwrap(), Triple::new(1, 0, 2));
    }

    #[test]
    fn small_quivers() {
        assert_eq!(qn_quiver(3).n(), 1);
        let q4 = qn_quiver(4);
        let ix = |a, b, c| qn_index(4, Triple::new(a, b, c)).unwrap();
        assert_eq!(q4.eps(ix(0, 1, 0), ix(1, 0, 0)), 1);
        assert_eq!(q4.eps(ix(1, 0, 0), ix(0, 0, 1)), 1);
        assert_eq!(q4.eps(ix(0, 0, 1), ix(0, 1, 0)), 1);
    }

    #[test]
    fn interior_vertices_have_degree_three() {
        let q = qn_quiver(7);
        for (i, t) in qn_vertices(7).iter().enumerate() {
            if t.a > 0 && t.b > 0 && t.c > 0 {
                let out: i64 = (0..q.n()).map(|j| q.eps(i, j).max(0)).sum();
                let inn: i64 = (0..q.n()).map(|j| q.eps(j, i).max(0)).sum();
                assert_eq!((out, inn), (3, 3));
            }
        }
    }

    #[test]
    fn extended_is_skew_and_sized() {
        let e = qn_extended(5);
        assert_eq!(e.quiver.n(), 6 + 8);
        assert_eq!(e.quiver.n_mutable(), 6);
        for t in &e.spec.mutable {
            assert_eq!(e.spec.j_set(*t).len() as i64, 5 - t.b - 1);
        }
        assert_eq!(e.spec.frozen[0].j, vec![2, 3, 4, 5]);
        assert_eq!(e.spec.frozen[7].j, vec![1]);
    }

    #[test]
    fn lift_sizes() {
        let p = lift3d_poset(3, 0, 0, 0).unwrap();
        assert_eq!(p.len(), 1);
        let p = lift3d_poset(7, 2, 1, 1).unwrap();
        assert_eq!(p.len(), 12);
        let top = VarId(qn_index(7, Triple::new(2, 1, 1)).unwrap() as u32);
        assert_eq!(p.labels().iter().filter(|l| **l == Label::Var(top)).count(), 2);
        assert!(p.is_pointed());
        assert_eq!(count_ideals(&lift3d_poset(6, 1, 1, 1).unwrap()), 20u32.into());
        assert!(matches!(lift3d_poset(5, 1, 1, 1), Err(Error::OutOfSimplex(..))));
    }

    #[test]
    fn maximal_green_sequences() {
        assert_eq!(qn_maximal_green(3), vec![0]);
        assert_eq!(qn_maximal_green(4).len(), 4);
        for n in 3..=6 {
            let q = qn_quiver(n);
            let mut s = PrincipalSeed::initial(&q);
            for &k in &qn_maximal_green(n) {
                assert_eq!(s.color(k).unwrap(), Color::Green);
                s = s.mutate(k).unwrap();
            }
            assert!(s.is_all_red());
        }
    }

    #[test]
    fn mirror_endpoint() {
        let n = 5;
        let r = dt_transform(&qn_quiver(n), &qn_maximal_green(n)).unwrap();
        let vs = qn_vertices(n);
        for (j, &t) in vs.iter().enumerate() {
            assert_eq!(vs[r.sigma[j]], Triple::new(t.b, t.a, t.c));
        }
    }

    #[test]
    fn lift_matches_dt_q4() {
        let n = 4;
        let r = dt_transform(&qn_quiver(n), &qn_maximal_green(n)).unwrap();
        for (i, t) in qn_vertices(n).iter().enumerate() {
            let p = lift3d_poset(n, t.a, t.b, t.c).unwrap();
            assert_eq!(ideal_function(&p).unwrap(), r.f[i], "vertex {t}");
        }
    }
}
