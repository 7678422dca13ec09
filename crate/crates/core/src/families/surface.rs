//! Ideal triangulations of marked surfaces, their quivers and the posets of
//! admissible arcs.
//!
//! A triangle is a counterclockwise triple of arc ids `[e0, e1, e2]`; its
//! corner `i` sits where `e_{i-1}` ends and `e_i` starts. Gluing corners
//! across shared arcs recovers the marked points, and walking from a corner
//! across `e_{i-1}` into the neighbouring triangle goes counterclockwise
//! around the marked point.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::VarId;
use crate::poset::{Label, LabeledPoset};
use crate::quiver::Quiver;

pub type ArcId = u32;

/// Arc id of each unordered vertex pair, keyed in sorted order.
pub type ArcNames = BTreeMap<(String, String), ArcId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArcCase {
    /// Two boundary marked points.
    BoundaryBoundary = 1,
    /// A boundary marked point and a puncture.
    BoundaryPuncture = 2,
    /// Two punctures.
    PuncturePuncture = 3,
}

type Slot = (usize, usize);

#[derive(Clone, Debug)]
struct MarkedPoint {
    boundary: bool,
    /// Incident arc ends in counterclockwise order; for a boundary point it
    /// runs from one boundary arc to the other.
    fan: Vec<ArcId>,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    arcs: Vec<(ArcId, bool)>,
    triangles: Vec<[ArcId; 3]>,
    points: Vec<MarkedPoint>,
    /// Marked points at the two ends of each arc.
    ends: BTreeMap<ArcId, (usize, usize)>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl Triangulation {
    pub fn new(arcs: Vec<(ArcId, bool)>, triangles: Vec<[ArcId; 3]>) -> Result<Triangulation> {
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        let boundary: BTreeMap<ArcId, bool> = arcs.iter().copied().collect();
        if boundary.len() != arcs.len() {
            return bad("duplicate arc id".into());
        }
        let mut slots: BTreeMap<ArcId, Vec<Slot>> = BTreeMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return bad(format!("triangle {t} repeats an arc"));
            }
            for (i, e) in tri.iter().enumerate() {
                if !boundary.contains_key(e) {
                    return bad(format!("triangle {t} uses unknown arc {e}"));
                }
                slots.entry(*e).or_default().push((t, i));
            }
        }
        for (&e, &b) in &boundary {
            let k = slots.get(&e).map_or(0, |s| s.len());
            let want = if b { 1 } else { 2 };
            if k != want {
                return bad(format!("arc {e} occurs in {k} triangle sides, expected {want}"));
            }
        }
        let nt = triangles.len();
        let corner = |(t, i): Slot| 3 * t + i;
        let mut parent: Vec<usize> = (0..3 * nt).collect();
        for s in slots.values() {
            if let [(t, i), (u, j)] = s[..] {
                // the arc runs backwards in the other triangle
                let (a, b) = (corner((t, i)), corner((u, (j + 1) % 3)));
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
                let (a, b) = (corner((t, (i + 1) % 3)), corner((u, j)));
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let twin = |(t, i): Slot| -> Option<Slot> {
            let s = &slots[&triangles[t][i]];
            s.iter().copied().find(|&x| x != (t, i))
        };
        let mut class_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut points = Vec::new();
        for c in 0..3 * nt {
            let r = find(&mut parent, c);
            if class_of.contains_key(&r) {
                continue;
            }
            // rewind clockwise to a boundary side if there is one
            let mut start = (c / 3, c % 3);
            let mut steps = 0;
            let mut is_boundary = false;
            loop {
                match twin(start) {
                    None => {
                        is_boundary = true;
                        break;
                    }
                    Some((u, j)) => start = (u, (j + 1) % 3),
                }
                steps += 1;
                if corner(start) == c || steps > 3 * nt {
                    break;
                }
            }
            let mut fan = vec![triangles[start.0][start.1]];
            let mut cur = start;
            let mut count = 0;
            loop {
                let prev = (cur.0, (cur.1 + 2) % 3);
                fan.push(triangles[prev.0][prev.1]);
                count += 1;
                match twin(prev) {
                    None => break,
                    Some(next) => cur = next,
                }
                if cur == start || count > 3 * nt {
                    fan.pop();
                    break;
                }
            }
            class_of.insert(r, points.len());
            points.push(MarkedPoint { boundary: is_boundary, fan });
        }
        let mut ends = BTreeMap::new();
        for (&e, s) in &slots {
            let (t, i) = s[0];
            let p = class_of[&find(&mut parent, corner((t, i)))];
            let q = class_of[&find(&mut parent, corner((t, (i + 1) % 3)))];
            ends.insert(e, (p, q));
        }
        Ok(Triangulation { arcs, triangles, points, ends })
    }

    /// Builds a triangulation from counterclockwise vertex triples. Each
    /// pair of vertices names one arc; arcs on a single triangle are
    /// boundary. Interior arcs get ids `1, 2, …` in order of appearance and
    /// boundary arcs ids from `1000`.
    pub fn from_vertex_triangles(tris: &[[&str; 3]]) -> Result<(Triangulation, ArcNames)> {
        let key = |x: &str, y: &str| if x < y { (x.to_string(), y.to_string()) } else { (y.to_string(), x.to_string()) };
        let mut uses: Vec<((String, String), usize)> = Vec::new();
        for t in tris {
            for i in 0..3 {
                let k = key(t[i], t[(i + 1) % 3]);
                match uses.iter_mut().find(|(kk, _)| *kk == k) {
                    Some(u) => u.1 += 1,
                    None => uses.push((k, 1)),
                }
            }
        }
        let mut ids = BTreeMap::new();
        let mut arcs = Vec::new();
        let (mut inner, mut outer) = (1, 1000);
        for (k, n) in &uses {
            let id = if *n == 1 {
                outer += 1;
                outer - 1
            } else {
                inner += 1;
                inner - 1
            };
            ids.insert(k.clone(), id);
            arcs.push((id, *n == 1));
        }
        let triangles = tris
            .iter()
            .map(|t| [0, 1, 2].map(|i| ids[&key(t[i], t[(i + 1) % 3])]))
            .collect();
        Ok((Triangulation::new(arcs, triangles)?, ids))
    }

    pub fn arcs(&self) -> &[(ArcId, bool)] {
        &self.arcs
    }

    pub fn triangles(&self) -> &[[ArcId; 3]] {
        &self.triangles
    }

    pub fn is_boundary_arc(&self, e: ArcId) -> bool {
        self.arcs.iter().any(|&(a, b)| a == e && b)
    }

    pub fn n_marked_points(&self) -> usize {
        self.points.len()
    }

    /// Marked points at the ends of `e`.
    pub fn endpoints(&self, e: ArcId) -> Option<(usize, usize)> {
        self.ends.get(&e).copied()
    }

    fn has_loop(&self, p: usize) -> bool {
        self.ends.values().any(|&(x, y)| x == p && y == p)
    }

    fn admissible_point(&self, p: usize) -> bool {
        if self.has_loop(p) {
            return false;
        }
        if self.points[p].boundary {
            // without loops the boundary component already has two points
            true
        } else {
            self.points[p].fan.len() >= 3
        }
    }

    /// Interior arcs at `p` following `a` counterclockwise; for a puncture
    /// the list wraps around and stops before `a`.
    fn after(&self, p: usize, a: ArcId) -> Vec<ArcId> {
        let fan = &self.points[p].fan;
        let k = fan.iter().position(|&e| e == a).expect("arc at its endpoint");
        let rest: Vec<ArcId> = if self.points[p].boundary {
            fan[k + 1..].to_vec()
        } else {
            fan[k + 1..].iter().chain(&fan[..k]).copied().collect()
        };
        rest.into_iter().filter(|&e| !self.is_boundary_arc(e)).collect()
    }

    pub fn from_json(v: &Value) -> Result<Triangulation> {
        let bad = |m: &str| Error::Parse(format!("triangulation: {m}"));
        let arcs = v["arcs"]
            .as_array()
            .ok_or_else(|| bad("missing arcs"))?
            .iter()
            .map(|a| {
                let id = a["id"].as_u64().ok_or_else(|| bad("arc id"))? as ArcId;
                Ok((id, a["boundary"].as_bool().unwrap_or(false)))
            })
            .collect::<Result<Vec<_>>>()?;
        let triangles = v["triangles"]
            .as_array()
            .ok_or_else(|| bad("missing triangles"))?
            .iter()
            .map(|t| {
                let xs = t.as_array().filter(|x| x.len() == 3).ok_or_else(|| bad("triangle must have 3 arcs"))?;
                let mut out = [0; 3];
                for (o, x) in out.iter_mut().zip(xs) {
                    *o = x.as_u64().ok_or_else(|| bad("arc id"))? as ArcId;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Triangulation::new(arcs, triangles)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "arcs": self.arcs.iter().map(|&(id, b)| json!({"id": id, "boundary": b})).collect::<Vec<_>>(),
            "triangles": self.triangles,
        })
    }
}

/// One vertex per interior arc (named and indexed by the arc id), with a
/// counterclockwise 3-cycle in every triangle.
pub fn quiver_from_triangulation(t: &Triangulation) -> Result<Quiver> {
    let inner: Vec<ArcId> = t.arcs.iter().filter(|a| !a.1).map(|a| a.0).collect();
    let pos: BTreeMap<ArcId, usize> = inner.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut arrows = Vec::new();
    for tri in &t.triangles {
        for i in 0..3 {
            if let (Some(&x), Some(&y)) = (pos.get(&tri[i]), pos.get(&tri[(i + 1) % 3])) {
                arrows.push((x, y, 1));
            }
        }
    }
    Ok(Quiver::from_arrows(inner.len(), &arrows)?.with_labels(&inner))
}

/// Admissible arcs with their case.
pub fn admissible_arcs(t: &Triangulation) -> Vec<(ArcId, ArcCase)> {
    let mut out = Vec::new();
    for &(a, b) in &t.arcs {
        if b {
            continue;
        }
        let (p, q) = t.ends[&a];
        if p == q || !t.admissible_point(p) || !t.admissible_point(q) {
            continue;
        }
        let same = t.ends.values().filter(|&&(x, y)| (x, y) == (p, q) || (y, x) == (p, q)).count();
        if same != 1 {
            continue;
        }
        let case = match (t.points[p].boundary, t.points[q].boundary) {
            (true, true) => ArcCase::BoundaryBoundary,
            (false, false) => ArcCase::PuncturePuncture,
            _ => ArcCase::BoundaryPuncture,
        };
        out.push((a, case));
    }
    out
}

/// The simply-labeled pointed poset of an admissible arc.
pub fn surface_arc_poset(t: &Triangulation, a: ArcId) -> Result<LabeledPoset> {
    let case = admissible_arcs(t)
        .into_iter()
        .find(|x| x.0 == a)
        .map(|x| x.1)
        .ok_or_else(|| Error::NotAdmissible(format!("arc {a}")))?;
    let (mut p, mut q) = t.ends[&a];
    if case == ArcCase::BoundaryPuncture && !t.points[p].boundary {
        std::mem::swap(&mut p, &mut q);
    }
    let b = t.after(p, a);
    let c = t.after(q, a);
    let x = |e: ArcId| Label::Var(VarId(e));
    let mut labels = vec![x(a)];
    let mut rel = Vec::new();
    let mut chain = |arcs: &[ArcId], labels: &mut Vec<Label>| -> Vec<usize> {
        let mut ids = Vec::new();
        let mut below = 0;
        for &e in arcs {
            labels.push(x(e));
            let id = labels.len() - 1;
            rel.push((id, below));
            below = id;
            ids.push(id);
        }
        ids
    };
    match case {
        ArcCase::BoundaryBoundary => {
            chain(&b, &mut labels);
            chain(&c, &mut labels);
        }
        ArcCase::BoundaryPuncture if b.is_empty() => {
            chain(&c[..c.len() - 1], &mut labels);
        }
        ArcCase::BoundaryPuncture => {
            let bs = chain(&b, &mut labels);
            let cs = chain(&c, &mut labels);
            rel.push((*cs.last().unwrap(), bs[0]));
        }
        ArcCase::PuncturePuncture => {
            let bs = chain(&b, &mut labels);
            let cs = chain(&c, &mut labels);
            let (bm, cn) = (*bs.last().unwrap(), *cs.last().unwrap());
            rel.push((cn, bs[0]));
            rel.push((bm, cs[0]));
            labels.push(x(a));
            let top = labels.len() - 1;
            rel.push((top, cn));
            rel.push((top, bm));
        }
    }
    LabeledPoset::new(labels, &rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::ideal_function;
    use crate::seedtrack::{dt_transform, search_reddening, SearchMode};

    fn tri(ts: &[[&str; 3]]) -> (Triangulation, BTreeMap<(String, String), ArcId>) {
        Triangulation::from_vertex_triangles(ts).unwrap()
    }

    fn id(ids: &BTreeMap<(String, String), ArcId>, x: &str, y: &str) -> ArcId {
        let k = if x < y { (x.to_string(), y.to_string()) } else { (y.to_string(), x.to_string()) };
        ids[&k]
    }

    /// Every admissible arc's poset against the DT F-polynomial.
    fn check_all(t: &Triangulation, depth: usize) -> usize {
        let q = quiver_from_triangulation(t).unwrap();
        let seq = search_reddening(&q, depth, SearchMode::MaximalGreen).expect("maximal green sequence");
        let f = dt_transform(&q, &seq).unwrap().f;
        let adm = admissible_arcs(t);
        for &(a, case) in &adm {
            let p = surface_arc_poset(t, a).unwrap();
            let i = q.position_of_var(VarId(a)).unwrap();
            assert_eq!(ideal_function(&p).unwrap(), f[i], "arc {a} ({case:?})");
        }
        adm.len()
    }

    #[test]
    fn square() {
        let (t, ids) = tri(&[["0", "1", "2"], ["0", "2", "3"]]);
        let q = quiver_from_triangulation(&t).unwrap();
        assert_eq!(q.n(), 1);
        let d = id(&ids, "0", "2");
        assert_eq!(admissible_arcs(&t), vec![(d, ArcCase::BoundaryBoundary)]);
        assert_eq!(surface_arc_poset(&t, d).unwrap().len(), 1);
        assert_eq!(t.n_marked_points(), 4);
    }

    #[test]
    fn hexagon_fan() {
        let (t, ids) = tri(&[["0", "1", "2"], ["0", "2", "3"], ["0", "3", "4"], ["0", "4", "5"]]);
        let q = quiver_from_triangulation(&t).unwrap();
        assert_eq!(q.n(), 3);
        assert_eq!(q.arrows().len(), 2);
        assert!(q.is_acyclic());
        // the middle diagonal is adjacent to both others
        let mid = q.position_of_var(VarId(id(&ids, "0", "3"))).unwrap();
        assert_eq!((0..3).filter(|&j| q.eps(mid, j) != 0).count(), 2);
        assert_eq!(check_all(&t, 8), 3);
    }

    #[test]
    fn kronecker_annulus() {
        // outer point s with boundary loop 10, inner point t with loop 11
        let t = Triangulation::new(vec![(10, true), (11, true), (1, false), (2, false)], vec![[10, 1, 2], [11, 1, 2]])
            .unwrap();
        assert_eq!(t.n_marked_points(), 2);
        let q = quiver_from_triangulation(&t).unwrap();
        assert_eq!(q.eps(0, 1).abs(), 2);
        assert!(admissible_arcs(&t).is_empty());
    }

    #[test]
    fn octagon_vee() {
        // a diagonal with one arc after it at each end
        let (t, ids) = tri(&[
            ["0", "1", "2"],
            ["0", "2", "4"],
            ["2", "3", "4"],
            ["0", "4", "6"],
            ["4", "5", "6"],
            ["6", "7", "0"],
        ]);
        let d = id(&ids, "0", "4");
        let p = surface_arc_poset(&t, d).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.maximal_elements().len(), 2);
        check_all(&t, 10);
    }

    #[test]
    fn punctured_hexagon() {
        let (t, ids) = tri(&[
            ["0", "1", "P"],
            ["1", "2", "P"],
            ["2", "3", "P"],
            ["3", "0", "P"],
            ["0", "3", "4"],
            ["0", "4", "5"],
        ]);
        let a = id(&ids, "0", "P");
        assert!(admissible_arcs(&t).contains(&(a, ArcCase::BoundaryPuncture)));
        let n = check_all(&t, 12);
        assert!(n >= 4);
        assert_eq!(surface_arc_poset(&t, a).unwrap().len(), 6);
    }

    #[test]
    fn two_punctures() {
        let (t, ids) = tri(&[
            ["3", "0", "p"],
            ["0", "q", "p"],
            ["0", "1", "q"],
            ["1", "2", "q"],
            ["2", "3", "q"],
            ["p", "q", "3"],
        ]);
        let a = id(&ids, "p", "q");
        assert!(admissible_arcs(&t).contains(&(a, ArcCase::PuncturePuncture)));
        let p = surface_arc_poset(&t, a).unwrap();
        assert_eq!(p.len(), 8);
        let top = p.maximal_elements();
        assert_eq!(top.len(), 1);
        assert_eq!(p.label(top[0]), &Label::Var(VarId(a)));
        check_all(&t, 16);
    }

    #[test]
    fn loops_and_parallel_arcs_are_not_admissible() {
        let t = Triangulation::new(vec![(10, true), (11, true), (1, false), (2, false)], vec![[10, 1, 2], [11, 1, 2]])
            .unwrap();
        assert!(surface_arc_poset(&t, 1).is_err());
    }

    #[test]
    fn invalid_inputs() {
        assert!(Triangulation::new(vec![(1, false)], vec![[1, 1, 1]]).is_err());
        assert!(Triangulation::new(vec![(1, false), (2, true), (3, true)], vec![[1, 2, 3]]).is_err());
        let (t, _) = tri(&[["0", "1", "2"], ["0", "2", "3"]]);
        let back = Triangulation::from_json(&t.to_json()).unwrap();
        assert_eq!(back.triangles(), t.triangles());
    }
}
