//! DT transformations from reddening sequences, and the three ways of
//! transporting DT F-polynomials: to an adjacent seed, to a full subquiver,
//! and to a triangular extension.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::poly::{exact_div, substitute, Polynomial, RationalExpr, VarId};
use crate::quiver::{find_isomorphism, is_isomorphism, Quiver, VertexId};

use super::{Color, PrincipalSeed};

/// Result of running a reddening sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtResult {
    pub sequence: Vec<VertexId>,
    /// Endpoint position `j` corresponds to initial vertex `sigma[j]`.
    pub sigma: Vec<VertexId>,
    /// F-polynomials indexed by initial vertex.
    pub f: Vec<Polynomial>,
}

/// Runs `seq` on `q` (its mutable part) and extracts the DT F-polynomials.
pub fn dt_transform(q: &Quiver, seq: &[VertexId]) -> Result<DtResult> {
    let seed = PrincipalSeed::initial(q).mutate_seq(seq)?;
    let n = seed.n();
    for i in 0..n {
        if seed.color(i)? == Color::Green {
            return Err(Error::NotReddening(i));
        }
    }
    let c = seed.c_matrix();
    let mut sigma = vec![usize::MAX; n];
    for (j, row) in c.iter().enumerate() {
        let hits: Vec<usize> = (0..n).filter(|&l| row[l] != 0).collect();
        if hits.len() != 1 || row[hits[0]] != -1 {
            return Err(Error::InvariantViolation(format!("endpoint C row {j} is {row:?}")));
        }
        sigma[j] = hits[0];
    }
    let initial = q.mutable_part();
    let endpoint = seed.quiver();
    if !is_isomorphism(&endpoint, &initial, &sigma) || find_isomorphism(&endpoint, &initial).is_none() {
        return Err(Error::InvariantViolation("endpoint quiver is not isomorphic via sigma".into()));
    }
    let mut f = vec![Polynomial::zero(); n];
    for j in 0..n {
        f[sigma[j]] = seed.f()[j].clone();
    }
    Ok(DtResult { sequence: seq.to_vec(), sigma, f })
}

/// DT F-polynomials with respect to `μ_k(Q)` from those with respect to `Q`.
///
/// The new variables reuse the variable ids of `Q`; they are the `X'` of
/// the mutated seed.
pub fn change_initial_seed(f: &[Polynomial], q: &Quiver, k: VertexId) -> Result<Vec<Polynomial>> {
    let n = q.n_mutable();
    if k >= q.n() {
        return Err(Error::VertexOutOfRange(k));
    }
    if k >= n {
        return Err(Error::FrozenMutation(k));
    }
    if f.len() != n {
        return Err(Error::DimensionMismatch(format!("{} F-polynomials for {n} vertices", f.len())));
    }
    let x = |i: usize| q.var(i);
    // μ_k(F_k) at the endpoint, where the C-matrix is −id
    let mut a = Polynomial::one();
    let mut b = Polynomial::var(x(k));
    for j in 0..n {
        let e = q.eps(k, j);
        if e > 0 {
            a = &a * &f[j].pow(e as u32);
        } else if e < 0 {
            b = &b * &f[j].pow((-e) as u32);
        }
    }
    let mu_fk = exact_div(&(&a + &b), &f[k])?;

    let xk = RationalExpr::var(x(k));
    let one = RationalExpr::one();
    let mut sigma: BTreeMap<VarId, RationalExpr> = BTreeMap::new();
    sigma.insert(x(k), xk.inv()?);
    for i in 0..n {
        let e = q.eps(i, k);
        if i == k || e == 0 {
            continue;
        }
        let inner = if e > 0 { &one + &xk } else { &one + &xk.inv()? };
        let factor = inner.pow(e as i32)?;
        sigma.insert(x(i), &RationalExpr::var(x(i)) * &factor);
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let r = if i == k {
            let s = substitute(&mu_fk, &sigma);
            &RationalExpr::from_poly(Polynomial::one_plus_var(x(k))) * &s
        } else {
            substitute(&f[i], &sigma)
        };
        out.push(r.to_polynomial()?);
    }
    Ok(out)
}

/// F-polynomials of the full subquiver on `keep`: set `X_j = 0` outside.
pub fn restrict_to_subquiver(f: &[Polynomial], q: &Quiver, keep: &BTreeSet<VertexId>) -> Vec<Polynomial> {
    let gone: BTreeSet<VarId> = (0..q.n_mutable()).filter(|i| !keep.contains(i)).map(|i| q.var(i)).collect();
    keep.iter().map(|&i| f[i].set_zero(|v| gone.contains(&v))).collect()
}

/// F-polynomials of the triangular extension of `q1` by `q2` along `delta`,
/// ordered as in [`Quiver::triangular_extension`].
pub fn compose_triangular(
    f1: &[Polynomial],
    f2: &[Polynomial],
    _q1: &Quiver,
    q2: &Quiver,
    delta: &[Vec<i64>],
) -> Result<Vec<Polynomial>> {
    let (n1, n2) = (f1.len(), f2.len());
    if delta.len() != n1 || delta.iter().any(|r| r.len() != n2) {
        return Err(Error::DimensionMismatch(format!("delta must be {n1}x{n2}")));
    }
    if delta.iter().flatten().any(|&d| d < 0) {
        return Err(Error::NegativeDelta);
    }
    let mut map = BTreeMap::new();
    for j in 0..n2 {
        let mut p = Polynomial::var(q2.var(j));
        for k in 0..n1 {
            if delta[k][j] > 0 {
                p = &p * &f1[k].pow(delta[k][j] as u32);
            }
        }
        map.insert(q2.var(j), p);
    }
    let mut out = f1.to_vec();
    out.extend(f2.iter().map(|p| p.compose(&map)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn example5() -> Quiver {
        Quiver::from_labeled_arrows(&[1, 2, 3], &[(2, 1, 1), (1, 3, 1), (2, 3, 2)]).unwrap()
    }

    #[test]
    fn single_vertex() {
        let q = Quiver::from_labeled_arrows(&[1], &[]).unwrap();
        let r = dt_transform(&q, &[0]).unwrap();
        assert_eq!(r.sigma, vec![0]);
        assert_eq!(r.f, vec![p("1 + X1")]);
    }

    #[test]
    fn empty_quiver_is_identity() {
        let q = Quiver::from_arrows(0, &[]).unwrap();
        let r = dt_transform(&q, &[]).unwrap();
        assert!(r.f.is_empty() && r.sigma.is_empty());
    }

    #[test]
    fn not_reddening() {
        let q = Quiver::from_labeled_arrows(&[1, 2], &[(1, 2, 1)]).unwrap();
        assert_eq!(dt_transform(&q, &[0]), Err(Error::NotReddening(1)));
    }

    #[test]
    fn example_quiver() {
        // sources first: 2, then 1, then 3
        let r = dt_transform(&example5(), &[1, 0, 2]).unwrap();
        assert_eq!(r.f[0], p("1 + X1 + X1*X2"));
        assert_eq!(r.f[1], p("1 + X2"));
        // 13 ideals but only 8 distinct monomials
        let want = &p("1") + &(&(&p("X3") * &p("1 + X1 + X1*X2")) * &p("1 + X2").pow(2));
        assert_eq!(r.f[2], want);
        assert_eq!((r.f[2].n_terms(), r.f[2].coefficient_sum()), (8, 13.into()));
    }

    #[test]
    fn adjacent_seed_a2() {
        let q = Quiver::from_labeled_arrows(&[1, 2], &[(1, 2, 1)]).unwrap();
        let f = dt_transform(&q, &[0, 1]).unwrap().f;
        let g = change_initial_seed(&f, &q, 0).unwrap();
        assert_eq!(g, vec![p("1 + X1 + X1*X2"), p("1 + X2")]);
    }

    #[test]
    fn adjacent_seed_disconnected_vertex() {
        let q = Quiver::from_labeled_arrows(&[1, 2], &[]).unwrap();
        let f = dt_transform(&q, &[0, 1]).unwrap().f;
        let g = change_initial_seed(&f, &q, 0).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn subquiver_restriction() {
        let q = example5();
        let f = dt_transform(&q, &[1, 0, 2]).unwrap().f;
        let keep: BTreeSet<_> = [0, 2].into();
        let r = restrict_to_subquiver(&f, &q, &keep);
        assert_eq!(r[1], p("1 + X3 + X1*X3"));
        let all: BTreeSet<_> = (0..3).collect();
        assert_eq!(restrict_to_subquiver(&f, &q, &all), f);
    }

    #[test]
    fn triangular_a2() {
        let s = Quiver::from_labeled_arrows(&[1], &[]).unwrap();
        let t = Quiver::from_labeled_arrows(&[2], &[]).unwrap();
        let f1 = vec![p("1 + X1")];
        let f2 = vec![p("1 + X2")];
        let got = compose_triangular(&f1, &f2, &s, &t, &[vec![1]]).unwrap();
        assert_eq!(got, vec![p("1 + X1"), p("1 + X2 + X1*X2")]);
        let none = compose_triangular(&f1, &f2, &s, &t, &[vec![0]]).unwrap();
        assert_eq!(none, vec![p("1 + X1"), p("1 + X2")]);
    }
}
