//! The oriented ideal web of the `n`-triangulated triangle, families of
//! disjoint paths through it and their boundary measurements.
//!
//! Integer embedding: white vertex `(t,i)` sits at `(2i-t, -3t)` and black
//! vertex `(t,i)` at `(2i-t, -3t-2)`, for `0 ≤ i ≤ t`. Edges run
//! white `(t,i)` → black `(t,i)` (vertical), white `(t+1,i)` → black `(t,i)`
//! and black `(t,i)` → white `(t+1,i+1)`, so every path moves left to right.
//! Source `i` is white `(i-1,0)`, sink `j` is white `(j-1,j-1)`, and the
//! interior face `(r,p)` has centre `(2p-r, -3r-4)` and is the vertex
//! `(r-p, p, n-3-r)` of `Q_n`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::families::{qn_extended, qn_index, qn_maximal_green, QnSpec, Triple};
use crate::linalg::det;
use crate::poly::{Monomial, Polynomial, VarId};
use crate::seedtrack::dt_transform;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WebVertex {
    pub color: Color,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face {
    pub triple: Triple,
    pub var: VarId,
    pub x: i64,
    pub y: i64,
}

/// Which side of a path counts as dominated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Side {
    /// Right of the direction of travel, i.e. below.
    #[default]
    Right,
    Left,
}

#[derive(Clone, Debug)]
pub struct WebNetwork {
    n: usize,
    vertices: Vec<WebVertex>,
    out: Vec<Vec<usize>>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    faces: Vec<Face>,
}

/// Vertex-disjoint paths, the `k`-th from source `I[k]` to sink `J[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

pub fn build_web(n: usize) -> WebNetwork {
    assert!(n >= 3, "webs need n >= 3");
    let white = |t: usize, i: usize| t * (t + 1) / 2 + i;
    let nw = n * (n + 1) / 2;
    let black = |t: usize, i: usize| nw + t * (t + 1) / 2 + i;
    let nb = (n - 1) * n / 2;
    let mut vertices = vec![WebVertex { color: Color::White, x: 0, y: 0 }; nw + nb];
    let mut out = vec![Vec::new(); nw + nb];
    for t in 0..n {
        for i in 0..=t {
            let (x, y) = (2 * i as i64 - t as i64, -3 * t as i64);
            vertices[white(t, i)] = WebVertex { color: Color::White, x, y };
        }
    }
    for t in 0..n - 1 {
        for i in 0..=t {
            let (x, y) = (2 * i as i64 - t as i64, -3 * t as i64 - 2);
            vertices[black(t, i)] = WebVertex { color: Color::Black, x, y };
            out[white(t, i)].push(black(t, i));
            out[white(t + 1, i)].push(black(t, i));
            out[black(t, i)].push(white(t + 1, i + 1));
        }
    }
    for o in &mut out {
        o.sort_unstable();
    }
    let mut faces = Vec::new();
    for r in 0..n - 2 {
        for p in 0..=r {
            let triple = Triple::new((r - p) as i64, p as i64, (n - 3 - r) as i64);
            let var = VarId(qn_index(n, triple).unwrap() as u32);
            faces.push(Face { triple, var, x: 2 * p as i64 - r as i64, y: -3 * r as i64 - 4 });
        }
    }
    faces.sort_by_key(|f| f.var);
    WebNetwork {
        n,
        vertices,
        out,
        sources: (0..n).map(|i| white(i, 0)).collect(),
        sinks: (0..n).map(|j| white(j, j)).collect(),
        faces,
    }
}

impl WebNetwork {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[WebVertex] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.out.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v))).collect()
    }

    /// Source and sink vertices, indexed from 1.
    pub fn source(&self, i: usize) -> usize {
        self.sources[i - 1]
    }

    pub fn sink(&self, j: usize) -> usize {
        self.sinks[j - 1]
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let m = self.vertices.len();
        let mut indeg = vec![0; m];
        for vs in &self.out {
            for &v in vs {
                indeg[v] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(m);
        while let Some(u) = ready.pop() {
            order.push(u);
            for &v in &self.out[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    ready.push(v);
                }
            }
        }
        (order.len() == m).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Number of directed paths from `u` to `v`.
    pub fn count_paths(&self, u: usize, v: usize) -> BigInt {
        let order = self.topological_order().expect("acyclic web");
        let mut ways = vec![BigInt::zero(); self.vertices.len()];
        ways[u] = BigInt::one();
        for &x in &order {
            if ways[x].is_zero() {
                continue;
            }
            let w = ways[x].clone();
            for &y in &self.out[x] {
                ways[y] += &w;
            }
        }
        ways[v].clone()
    }

    /// Height of the path at horizontal position `x`, taking the lowest
    /// point for `Side::Right` and the highest for `Side::Left`. Outside the
    /// path's span the end heights extend horizontally.
    fn path_height(&self, path: &[usize], x: i64, side: Side) -> (i64, i64) {
        let pt = |v: usize| (self.vertices[v].x, self.vertices[v].y);
        let (fx, fy) = pt(path[0]);
        let (lx, ly) = pt(*path.last().unwrap());
        if x < fx {
            return (fy, 1);
        }
        if x > lx {
            return (ly, 1);
        }
        // heights as fractions num/den, den > 0
        let mut hits: Vec<(i64, i64)> = Vec::new();
        for w in path.windows(2) {
            let ((x0, y0), (x1, y1)) = (pt(w[0]), pt(w[1]));
            if x0 == x {
                hits.push((y0, 1));
            }
            if x1 == x {
                hits.push((y1, 1));
            }
            if x0 < x && x < x1 {
                hits.push((y0 * (x1 - x0) + (y1 - y0) * (x - x0), x1 - x0));
            }
        }
        if path.len() == 1 {
            hits.push((fy, 1));
        }
        let cmp = |a: &(i64, i64), b: &(i64, i64)| (a.0 * b.1).cmp(&(b.0 * a.1));
        match side {
            Side::Right => hits.into_iter().min_by(cmp).unwrap(),
            Side::Left => hits.into_iter().max_by(cmp).unwrap(),
        }
    }

    fn dominated(&self, path: &[usize], f: &Face, side: Side) -> bool {
        let (num, den) = self.path_height(path, f.x, side);
        match side {
            Side::Right => f.y * den < num,
            Side::Left => f.y * den > num,
        }
    }

    /// Product of the variables of faces dominated by the paths.
    pub fn weight(&self, fam: &PathFamily, side: Side) -> Monomial {
        let mut exps: BTreeMap<VarId, u32> = BTreeMap::new();
        for path in &fam.paths {
            for f in &self.faces {
                if self.dominated(path, f, side) {
                    *exps.entry(f.var).or_insert(0) += 1;
                }
            }
        }
        Monomial::from_exponents(exps)
    }
}

/// All families of vertex-disjoint paths from sources `I` to sinks `J`
/// (1-based, increasing), pairing them in order.
pub fn path_families(w: &WebNetwork, i_set: &[usize], j_set: &[usize]) -> Result<Vec<PathFamily>> {
    if i_set.len() != j_set.len() {
        return Err(Error::DimensionMismatch(format!("|I| = {} but |J| = {}", i_set.len(), j_set.len())));
    }
    for &x in i_set.iter().chain(j_set) {
        if x == 0 || x > w.n {
            return Err(Error::VertexOutOfRange(x));
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; w.vertices.len()];
    let mut paths = Vec::new();
    extend_family(w, i_set, j_set, &mut used, &mut paths, &mut out);
    Ok(out)
}

fn extend_family(
    w: &WebNetwork,
    i_set: &[usize],
    j_set: &[usize],
    used: &mut [bool],
    paths: &mut Vec<Vec<usize>>,
    out: &mut Vec<PathFamily>,
) {
    let k = paths.len();
    if k == i_set.len() {
        out.push(PathFamily { sources: i_set.to_vec(), sinks: j_set.to_vec(), paths: paths.clone() });
        return;
    }
    let (s, t) = (w.source(i_set[k]), w.sink(j_set[k]));
    if used[s] || used[t] {
        return;
    }
    let mut cur = vec![s];
    used[s] = true;
    route(w, t, used, &mut cur, &mut |used, p| {
        paths.push(p.to_vec());
        extend_family(w, i_set, j_set, used, paths, out);
        paths.pop();
    });
    used[s] = false;
}

fn route(w: &WebNetwork, t: usize, used: &mut [bool], cur: &mut Vec<usize>, found: &mut dyn FnMut(&mut [bool], &[usize])) {
    let u = *cur.last().unwrap();
    if u == t {
        let path = cur.clone();
        found(used, &path);
        return;
    }
    for &v in &w.out[u] {
        if used[v] {
            continue;
        }
        used[v] = true;
        cur.push(v);
        route(w, t, used, cur, found);
        cur.pop();
        used[v] = false;
    }
}

/// `Σ_families ∏ X_face` over faces dominated by the paths.
pub fn boundary_measurement_sets(w: &WebNetwork, i_set: &[usize], j_set: &[usize], side: Side) -> Result<Polynomial> {
    let fams = path_families(w, i_set, j_set)?;
    Ok(Polynomial::from_terms(fams.iter().map(|f| (w.weight(f, side), BigInt::one()))))
}

/// `M_f` for a face with sink set `J`, using sources `{1..|J|}`.
pub fn boundary_measurement(w: &WebNetwork, j_set: &[usize], side: Side) -> Result<Polynomial> {
    let i_set: Vec<usize> = (1..=j_set.len()).collect();
    boundary_measurement_sets(w, &i_set, j_set, side)
}

/// Splits `M = N · Φ` with `N` the largest monomial factor and `Φ(0) = 1`.
pub fn factor_phi(m: &Polynomial) -> Result<(Monomial, Polynomial)> {
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = m.monomial_content();
    let phi = m.div_monomial(&n).expect("content divides");
    if !phi.constant_term().is_one() {
        return Err(Error::NotUnital);
    }
    Ok((n, phi))
}

/// Plane partitions in an `a × b × c` box: `a × b` arrays with entries in
/// `0..=c`, weakly decreasing along rows and columns.
pub fn plane_partitions(a: usize, b: usize, c: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut grid = vec![vec![0u32; b]; a];
    fill(&mut grid, 0, c as u32, &mut out);
    out
}

fn fill(grid: &mut Vec<Vec<u32>>, cell: usize, c: u32, out: &mut Vec<Vec<Vec<u32>>>) {
    let b = grid.first().map_or(0, |r| r.len());
    if b == 0 || cell == grid.len() * b {
        out.push(grid.clone());
        return;
    }
    let (i, j) = (cell / b, cell % b);
    let mut cap = c;
    if i > 0 {
        cap = cap.min(grid[i - 1][j]);
    }
    if j > 0 {
        cap = cap.min(grid[i][j - 1]);
    }
    for h in 0..=cap {
        grid[i][j] = h;
        fill(grid, cell + 1, c, out);
    }
    grid[i][j] = 0;
}

/// MacMahon's box formula `∏_{i,j,k} (i+j+k-1)/(i+j+k-2)`.
pub fn macmahon(a: usize, b: usize, c: usize) -> BigUint {
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= (i + j + k - 1) as u64;
                den *= (i + j + k - 2) as u64;
            }
        }
    }
    num / den
}

/// Lindström–Gessel–Viennot count `det(e(I_k, J_l))`.
pub fn lgv_count(w: &WebNetwork, i_set: &[usize], j_set: &[usize]) -> BigInt {
    let m: Vec<Vec<BigInt>> = i_set
        .iter()
        .map(|&i| j_set.iter().map(|&j| w.count_paths(w.source(i), w.sink(j))).collect())
        .collect();
    det(&m)
}

/// Per-face outcome of [`weng_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCheck {
    pub face: Triple,
    /// `∏_g N_g^{ε̃_fg} = X_f^{-1}`.
    pub monomial_identity: bool,
    /// `Φ_f` equals the DT F-polynomial from the maximal green sequence.
    pub phi_is_f: bool,
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WengReport {
    pub n: usize,
    pub faces: Vec<FaceCheck>,
}

impl WengReport {
    pub fn passed(&self) -> bool {
        self.faces.iter().all(|f| f.monomial_identity && f.phi_is_f)
    }
}

/// Measurements `M_g` for every vertex of the extended quiver.
pub fn all_measurements(n: usize, side: Side) -> Result<Vec<Polynomial>> {
    let w = build_web(n);
    QnSpec::new(n).all_j_sets().iter().map(|j| boundary_measurement(&w, j, side)).collect()
}

/// Checks the monomial identity and `Φ = F` for every mutable face.
pub fn weng_report(n: usize, side: Side) -> Result<WengReport> {
    let ext = qn_extended(n);
    let q = &ext.quiver;
    let nm = q.n_mutable();
    let ms = all_measurements(n, side)?;
    let mut ns = Vec::new();
    let mut phis = Vec::new();
    for m in &ms {
        match factor_phi(m) {
            Ok((nf, phi)) => {
                ns.push(Some(nf));
                phis.push(Some(phi));
            }
            Err(_) => {
                ns.push(None);
                phis.push(None);
            }
        }
    }
    let dt = dt_transform(&ext.quiver.mutable_part(), &qn_maximal_green(n))?;
    let mut faces = Vec::new();
    for f in 0..nm {
        let mut total: BTreeMap<VarId, i64> = BTreeMap::new();
        let mut ok = ns.iter().all(|x| x.is_some());
        if ok {
            for g in 0..q.n() {
                let e = q.eps(f, g);
                for &(v, k) in ns[g].as_ref().unwrap().exponents() {
                    *total.entry(v).or_insert(0) += e * k as i64;
                }
            }
            total.retain(|_, e| *e != 0);
            ok = total == BTreeMap::from([(q.var(f), -1)]);
        }
        faces.push(FaceCheck {
            face: ext.spec.mutable[f],
            monomial_identity: ok,
            phi_is_f: phis[f].as_ref() == Some(&dt.f[f]),
            terms: ms[f].n_terms(),
        });
    }
    Ok(WengReport { n, faces })
}

/// [`weng_report`] with the standard side, failing on any violation.
pub fn verify_weng_identity(n: usize) -> Result<WengReport> {
    let r = weng_report(n, Side::Right)?;
    if let Some(bad) = r.faces.iter().find(|f| !(f.monomial_identity && f.phi_is_f)) {
        return Err(Error::IdentityViolation(format!("face {} of Q_{n}", bad.face)));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{lift3d_poset, qn_vertices};
    use crate::poset::ideal_function;

    #[test]
    fn web_shape() {
        for n in 3..=8 {
            let w = build_web(n);
            assert!(w.is_acyclic());
            assert_eq!(w.faces().len(), (n - 1) * (n - 2) / 2);
        }
        let w = build_web(5);
        let names: Vec<String> = w.faces().iter().map(|f| f.triple.to_string()).collect();
        assert_eq!(names.len(), 6);
        assert!(names.contains(&"0,0,2".to_string()) && names.contains(&"0,2,0".to_string()));
    }

    #[test]
    fn plane_partition_counts() {
        assert_eq!(plane_partitions(1, 1, 1).len(), 2);
        assert_eq!(plane_partitions(2, 1, 1).len(), 3);
        assert_eq!(plane_partitions(2, 2, 2).len(), 20);
        for a in 1..4 {
            for b in 1..4 {
                for c in 1..4 {
                    assert_eq!(BigUint::from(plane_partitions(a, b, c).len()), macmahon(a, b, c));
                }
            }
        }
    }

    #[test]
    fn family_counts() {
        let w = build_web(4);
        let spec = QnSpec::new(4);
        let j = spec.j_set(Triple::new(1, 0, 0));
        let i: Vec<usize> = (1..=j.len()).collect();
        assert_eq!(path_families(&w, &i, &j).unwrap().len(), 3);
        let w6 = build_web(6);
        let j = QnSpec::new(6).j_set(Triple::new(1, 1, 1));
        let i: Vec<usize> = (1..=j.len()).collect();
        assert_eq!(path_families(&w6, &i, &j).unwrap().len(), 20);
        for g in &spec.frozen {
            let i: Vec<usize> = (1..=g.j.len()).collect();
            assert_eq!(path_families(&w, &i, &g.j).unwrap().len(), 1, "{}", g.name);
        }
    }

    #[test]
    fn lgv_agrees() {
        let w = build_web(5);
        for j in QnSpec::new(5).all_j_sets() {
            let i: Vec<usize> = (1..=j.len()).collect();
            let fams = path_families(&w, &i, &j).unwrap();
            assert_eq!(BigInt::from(fams.len()), lgv_count(&w, &i, &j));
        }
    }

    #[test]
    fn top_face_and_unital() {
        for n in 4..=6 {
            let w = build_web(n);
            let spec = QnSpec::new(n);
            let top = Triple::new(0, 0, n as i64 - 3);
            let m = boundary_measurement(&w, &spec.j_set(top), Side::Right).unwrap();
            assert_eq!(m.n_terms(), n - 1);
            for t in qn_vertices(n) {
                let m = boundary_measurement(&w, &spec.j_set(t), Side::Right).unwrap();
                let (_, phi) = factor_phi(&m).unwrap();
                assert!(phi.constant_term().is_one());
            }
            for g in &spec.frozen {
                assert!(boundary_measurement(&w, &g.j, Side::Right).unwrap().is_monomial());
            }
        }
    }

    #[test]
    fn factor_monomial() {
        let m: Polynomial = "X1*X2^2".parse().unwrap();
        let (n, phi) = factor_phi(&m).unwrap();
        assert_eq!(Polynomial::monomial(n, 1.into()), m);
        assert!(phi.is_one());
        assert!(matches!(factor_phi(&"2 + X1".parse().unwrap()), Err(Error::NotUnital)));
    }

    #[test]
    fn phi_matches_lift() {
        let n = 5;
        let w = build_web(n);
        let spec = QnSpec::new(n);
        for t in qn_vertices(n) {
            let m = boundary_measurement(&w, &spec.j_set(t), Side::Right).unwrap();
            let (_, phi) = factor_phi(&m).unwrap();
            let p = lift3d_poset(n, t.a, t.b, t.c).unwrap();
            assert_eq!(phi, ideal_function(&p).unwrap(), "face {t}");
            let box_count = macmahon(t.a as usize + 1, t.b as usize + 1, t.c as usize + 1);
            assert_eq!(BigUint::from(m.n_terms()), box_count);
        }
    }

    #[test]
    fn weng_identity() {
        for n in 3..=5 {
            let r = verify_weng_identity(n).unwrap();
            assert_eq!(r.faces.len(), (n - 1) * (n - 2) / 2);
        }
        assert!(!weng_report(4, Side::Left).unwrap().passed());
    }
}
