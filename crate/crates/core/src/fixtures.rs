//! Worked examples: quivers, sequences, posets and golden polynomials.
//! Vertex labels are used as variable ids, so `X2` is the variable of the
//! vertex labelled 2.

use std::collections::BTreeMap;

use crate::families::{lift3d_poset, qn_index, qn_quiver, Triangulation, Triple};
use crate::poly::{Polynomial, VarId};
use crate::poset::{Label, LabeledPoset};
use crate::quiver::{Quiver, VertexId};

fn x(v: u32) -> Label {
    Label::Var(VarId(v))
}

/// Positions of labelled vertices.
pub fn positions(q: &Quiver, labels: &[u32]) -> Vec<VertexId> {
    labels.iter().map(|&l| q.position_of_var(VarId(l)).expect("vertex label")).collect()
}

/// Quiver of a tagged triangulation of the twice-punctured disk.
pub fn twice_punctured_disk() -> Quiver {
    Quiver::from_labeled_arrows(
        &[1, 2, 3, 4, 5],
        &[(2, 5, 1), (5, 1, 1), (1, 2, 1), (5, 4, 1), (4, 2, 1), (5, 3, 1), (3, 2, 1)],
    )
    .unwrap()
}

/// Maximal green sequence `(5,1,3,4,2,5)`, as positions.
pub fn twice_punctured_disk_sequence() -> Vec<VertexId> {
    positions(&twice_punctured_disk(), &[5, 1, 3, 4, 2, 5])
}

/// DT F-polynomial of vertex 2 of [`twice_punctured_disk`].
pub fn twice_punctured_disk_f2() -> Polynomial {
    "1 + X2 + X1X2 + X2X3 + X2X4 + X1X2X3 + X1X2X4 + X2X3X4 + X1X2X3X4 + X1X2X3X5 + X1X2X4X5 \
     + X2X3X4X5 + 2·X1X2X3X4X5 + X1X2X3X4X5²"
        .parse()
        .unwrap()
}

/// Acyclic quiver with arrows `2 → 1`, `1 → 3` and a double arrow `2 ⇒ 3`.
pub fn example_acyclic() -> Quiver {
    Quiver::from_labeled_arrows(&[1, 2, 3], &[(2, 1, 1), (1, 3, 1), (2, 3, 2)]).unwrap()
}

/// The poset drawn for vertex 3 of [`example_acyclic`]: `X3` at the
/// bottom, a chain `X1 < X2` and two single `X2` above it.
pub fn example_acyclic_f3_poset() -> LabeledPoset {
    LabeledPoset::new(vec![x(3), x(1), x(2), x(2), x(2)], &[(1, 0), (2, 1), (3, 0), (4, 0)]).unwrap()
}

/// Labelled poset with `X1 < X2, X3 < X4`, and `X1` on top of `X4`.
pub fn diamond_poset() -> LabeledPoset {
    LabeledPoset::new(vec![x(1), x(2), x(3), x(4), x(1)], &[(1, 0), (2, 0), (3, 1), (3, 2), (4, 3)]).unwrap()
}

pub fn markov() -> Quiver {
    Quiver::from_labeled_arrows(&[1, 2, 3], &[(1, 2, 2), (2, 3, 2), (3, 1, 2)]).unwrap()
}

/// Ideal triangulation of the sphere with four punctures, as the boundary
/// of a tetrahedron. Opposite edges fold onto the same Markov vertex; the
/// map sends each arc to `1`, `2` or `3` compatibly with [`markov`].
pub fn four_punctured_sphere() -> (Triangulation, BTreeMap<u32, u32>) {
    let (t, ids) =
        Triangulation::from_vertex_triangles(&[["A", "C", "B"], ["A", "B", "D"], ["A", "D", "C"], ["B", "C", "D"]])
            .unwrap();
    let arc = |a: &str, b: &str| ids[&(a.to_string(), b.to_string())];
    let pairs = [(arc("A", "B"), arc("C", "D")), (arc("A", "C"), arc("B", "D")), (arc("A", "D"), arc("B", "C"))];
    let q = crate::families::quiver_from_triangulation(&t).unwrap();
    let pos = |a: u32| q.position_of_var(VarId(a)).unwrap();
    // follow arrows out of the first pair to number the others
    let mut order = vec![0usize];
    while order.len() < 3 {
        let cur = pairs[*order.last().unwrap()];
        let next = (0..3)
            .find(|&k| !order.contains(&k) && q.eps(pos(cur.0), pos(pairs[k].0)) > 0)
            .expect("folding is a covering of the Markov quiver");
        order.push(next);
    }
    let mut fold = BTreeMap::new();
    for (m, &k) in order.iter().enumerate() {
        fold.insert(pairs[k].0, m as u32 + 1);
        fold.insert(pairs[k].1, m as u32 + 1);
    }
    (t, fold)
}

/// The folded poset for Markov vertex 1: `X1` at the bottom, two `X3`
/// above it, two `X2` each above both `X3`, and `X1` on top.
pub fn markov_folded_poset() -> LabeledPoset {
    LabeledPoset::new(
        vec![x(1), x(3), x(3), x(2), x(2), x(1)],
        &[(1, 0), (2, 0), (3, 1), (3, 2), (4, 1), (4, 2), (5, 3), (5, 4)],
    )
    .unwrap()
}

/// Local quiver around an arc `a` joining two punctures of degree three,
/// with vertices labelled `a=1, b1=2, b2=3, c1=4, c2=5`.
pub fn two_puncture_local() -> Quiver {
    Quiver::from_labeled_arrows(
        &[1, 2, 3, 4, 5],
        &[(4, 1, 1), (5, 4, 1), (1, 5, 1), (2, 1, 1), (3, 2, 1), (1, 3, 1), (5, 2, 1), (3, 4, 1)],
    )
    .unwrap()
}

/// Reddening sequence `(a,b1,b2,c1,c2,a,b1,c1)` of [`two_puncture_local`].
pub fn two_puncture_local_sequence() -> Vec<VertexId> {
    positions(&two_puncture_local(), &[1, 2, 3, 4, 5, 1, 2, 4])
}

/// Poset of the arc `a` in [`two_puncture_local`].
pub fn two_puncture_local_poset() -> LabeledPoset {
    // a, b1, b2, c1, c2, a
    LabeledPoset::new(
        vec![x(1), x(2), x(3), x(4), x(5), x(1)],
        &[(1, 0), (2, 1), (3, 0), (4, 3), (4, 1), (2, 3), (5, 4), (5, 2)],
    )
    .unwrap()
}

/// A hexagon with centre 0 glued to a 3-cycle `7 → 8 → 9 → 7`, with
/// arrows `7 → 1`, `8 → 3`, `9 → 5` from the 3-cycle into the hexagon.
pub fn hexagon_with_triangle() -> Quiver {
    Quiver::from_labeled_arrows(
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        &[
            (2, 0, 1),
            (0, 5, 1),
            (6, 0, 1),
            (0, 3, 1),
            (4, 0, 1),
            (0, 1, 1),
            (1, 6, 1),
            (5, 6, 1),
            (1, 2, 1),
            (3, 2, 1),
            (3, 4, 1),
            (5, 4, 1),
            (7, 1, 1),
            (8, 3, 1),
            (9, 5, 1),
            (7, 8, 1),
            (8, 9, 1),
            (9, 7, 1),
        ],
    )
    .unwrap()
}

/// Hexagon label of each vertex of `Q_6` around `(1,1,1)`.
pub fn hexagon_in_q6() -> BTreeMap<Triple, u32> {
    [
        ((1, 1, 1), 0),
        ((0, 1, 2), 1),
        ((0, 2, 1), 2),
        ((1, 2, 0), 3),
        ((2, 1, 0), 4),
        ((2, 0, 1), 5),
        ((1, 0, 2), 6),
    ]
    .into_iter()
    .map(|((a, b, c), l)| (Triple::new(a, b, c), l))
    .collect()
}

/// Cube poset of `(1,1,1)` in `Q_6`, relabelled to hexagon labels.
pub fn hexagon_cube_poset() -> LabeledPoset {
    let cube = lift3d_poset(6, 1, 1, 1).unwrap();
    let q6 = qn_quiver(6);
    let map: BTreeMap<VarId, VarId> =
        hexagon_in_q6().into_iter().map(|(t, l)| (q6.var(qn_index(6, t).unwrap()), VarId(l))).collect();
    crate::poset::relabel(&cube, &map)
}

/// Poset for vertex 0 of [`hexagon_with_triangle`]: the cube with the
/// chains `X7 < X9`, `X8 < X7`, `X9 < X8` attached above `X1`, `X3`, `X5`.
pub fn hexagon_with_triangle_poset() -> LabeledPoset {
    let chain = |a, b| LabeledPoset::chain(vec![x(a), x(b)]);
    let mut p = hexagon_cube_poset();
    for (at, piece) in [(1, chain(7, 9)), (3, chain(8, 7)), (5, chain(9, 8))] {
        p = crate::poset::attach(&p, VarId(at), &[(piece, 1)]).unwrap();
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{quiver_from_triangulation, surface_arc_poset};
    use crate::poset::{count_ideals, find_poset_isomorphism, ideal_function, relabel};
    use crate::quiver::find_isomorphism;
    use crate::seedtrack::{dt_transform, search_reddening, SearchMode};

    #[test]
    fn golden_parses() {
        let f = twice_punctured_disk_f2();
        assert_eq!(f.n_terms(), 14);
        assert_eq!(f.coefficient_sum(), 15.into());
    }

    #[test]
    fn local_two_puncture_poset() {
        let q = two_puncture_local();
        let r = dt_transform(&q, &two_puncture_local_sequence()).unwrap();
        assert_eq!(r.f[0], ideal_function(&two_puncture_local_poset()).unwrap());
    }

    #[test]
    fn sphere_covers_markov() {
        let (t, fold) = four_punctured_sphere();
        let q = quiver_from_triangulation(&t).unwrap();
        assert_eq!(q.n(), 6);
        for i in 0..6 {
            for j in 0..6 {
                let (fi, fj) = (fold[&q.var(i).0], fold[&q.var(j).0]);
                let want = if fj == fi % 3 + 1 { 1 } else if fi == fj % 3 + 1 { -1 } else { 0 };
                assert_eq!(q.eps(i, j), want);
            }
        }
        let a = *fold.iter().find(|(_, &m)| m == 1).unwrap().0;
        let p = surface_arc_poset(&t, a).unwrap();
        let map: BTreeMap<VarId, VarId> = fold.iter().map(|(&k, &v)| (VarId(k), VarId(v))).collect();
        assert!(find_poset_isomorphism(&relabel(&p, &map), &markov_folded_poset()).is_some());
    }

    #[test]
    fn hexagon_is_in_q6() {
        let q6 = qn_quiver(6);
        let keep = hexagon_in_q6().keys().map(|&t| qn_index(6, t).unwrap()).collect();
        let sub = q6.full_subquiver(&keep).unwrap();
        let hex: Vec<u32> = (0..7).collect();
        let full = hexagon_with_triangle();
        let hq = full.full_subquiver(&positions(&full, &hex).into_iter().collect()).unwrap();
        assert!(find_isomorphism(&sub, &hq).is_some());
        assert_eq!(count_ideals(&hexagon_cube_poset()), 20u32.into());
        assert_eq!(hexagon_with_triangle_poset().len(), 14);
    }

    #[test]
    fn example_poset_matches_search() {
        let q = example_acyclic();
        let seq = search_reddening(&q, 6, SearchMode::Reddening).unwrap();
        let f = dt_transform(&q, &seq).unwrap().f;
        assert_eq!(f[2], ideal_function(&example_acyclic_f3_poset()).unwrap());
        assert_eq!(ideal_function(&diamond_poset()).unwrap().n_terms(), 7);
    }
}
