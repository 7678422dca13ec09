use crate::error::{Error, Result};
use crate::poset::{Label, LabeledPoset};
use crate::quiver::{Quiver, VertexId};

/// Poset of oriented paths ending at `i`, ordered by extension: the idle
/// path is the minimum and a path starting at `j` is covered by one
/// element per arrow `k → j`.
pub fn ascendant_tree(q: &Quiver, i: VertexId) -> Result<LabeledPoset> {
    if i >= q.n() {
        return Err(Error::VertexOutOfRange(i));
    }
    if !q.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let mut labels = vec![Label::Var(q.var(i))];
    let mut start = vec![i];
    let mut rel = Vec::new();
    let mut next = 0;
    while next < start.len() {
        let j = start[next];
        for k in 0..q.n() {
            for _ in 0..q.eps(k, j).max(0) {
                labels.push(Label::Var(q.var(k)));
                start.push(k);
                rel.push((start.len() - 1, next));
            }
        }
        next += 1;
    }
    LabeledPoset::new(labels, &rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{count_ideals, ideal_function};
    use crate::seedtrack::{dt_transform, search_reddening, SearchMode};

    #[test]
    fn source_is_singleton() {
        let q = Quiver::from_labeled_arrows(&[1, 2], &[(1, 2, 1)]).unwrap();
        let p = ascendant_tree(&q, 0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(ideal_function(&p).unwrap(), "1 + X1".parse().unwrap());
        let p2 = ascendant_tree(&q, 1).unwrap();
        assert_eq!(ideal_function(&p2).unwrap(), "1 + X2 + X1*X2".parse().unwrap());
    }

    #[test]
    fn example_vertex_three() {
        let q = Quiver::from_labeled_arrows(&[1, 2, 3], &[(2, 1, 1), (1, 3, 1), (2, 3, 2)]).unwrap();
        let p = ascendant_tree(&q, 2).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(count_ideals(&p), 13u32.into());
        let seq = search_reddening(&q, 6, SearchMode::MaximalGreen).unwrap();
        assert_eq!(ideal_function(&p).unwrap(), dt_transform(&q, &seq).unwrap().f[2]);
    }

    #[test]
    fn cyclic_rejected() {
        let q = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(matches!(ascendant_tree(&q, 0), Err(Error::NotAcyclic)));
    }
}
