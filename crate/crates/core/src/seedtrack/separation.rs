//! Cluster variables as Laurent polynomials, used to check the separation
//! formula `A'_i = A^{g_i} · F_i(p(X))` independently of the F-recurrence.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{exact_div, Monomial, Polynomial, VarId};
use crate::quiver::{Quiver, VertexId};

use super::PrincipalSeed;

/// `num · ∏ A_v^{shift_v}` with `num` not divisible by any variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    num: Polynomial,
    shift: BTreeMap<VarId, i64>,
}

impl Laurent {
    pub fn new(num: Polynomial, shift: BTreeMap<VarId, i64>) -> Laurent {
        let content = num.monomial_content();
        let num = num.div_monomial(&content).expect("content divides");
        let mut shift = shift;
        for &(v, e) in content.exponents() {
            *shift.entry(v).or_insert(0) += e as i64;
        }
        shift.retain(|_, e| *e != 0);
        if num.is_zero() {
            shift.clear();
        }
        Laurent { num, shift }
    }

    pub fn var(v: VarId) -> Laurent {
        Laurent::monomial(&[(v, 1)].into())
    }

    pub fn monomial(exps: &BTreeMap<VarId, i64>) -> Laurent {
        Laurent::new(Polynomial::one(), exps.clone())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn shift(&self) -> &BTreeMap<VarId, i64> {
        &self.shift
    }

    /// The single variable this is equal to, if any.
    pub fn as_variable(&self) -> Option<VarId> {
        if self.num.is_one() && self.shift.len() == 1 {
            let (&v, &e) = self.shift.iter().next().unwrap();
            return (e == 1).then_some(v);
        }
        None
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut shift = self.shift.clone();
        for (&v, &e) in &other.shift {
            *shift.entry(v).or_insert(0) += e;
        }
        Laurent::new(&self.num * &other.num, shift)
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        let mut base = self.shift.clone();
        for (&v, &e) in &other.shift {
            let b = base.entry(v).or_insert(0);
            *b = (*b).min(e);
        }
        for (v, e) in base.iter_mut() {
            *e = (*e).min(other.shift.get(v).copied().unwrap_or(0));
        }
        let lift = |l: &Laurent| {
            let m = Monomial::from_exponents(
                base.iter().map(|(v, b)| (*v, (l.shift.get(v).copied().unwrap_or(0) - b) as u32)),
            );
            l.num.mul_monomial(&m)
        };
        Laurent::new(&lift(self) + &lift(other), base)
    }

    /// Exact quotient, which exists whenever the Laurent phenomenon holds.
    pub fn div(&self, other: &Laurent) -> Result<Laurent> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = exact_div(&self.num, &other.num)?;
        let mut shift = self.shift.clone();
        for (&v, &e) in &other.shift {
            *shift.entry(v).or_insert(0) -= e;
        }
        Ok(Laurent::new(num, shift))
    }
}

/// Outcome of [`separation_check`] with the final cluster for inspection.
#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub holds: bool,
    pub cluster: Vec<Laurent>,
}

/// Mutates cluster variables directly and compares each one with the
/// separation formula built from the seed's g-vectors and F-polynomials.
pub fn separation_check(q: &Quiver, seq: &[VertexId]) -> Result<SeparationReport> {
    let q0 = q.mutable_part();
    let n = q0.n();
    let mut cluster: Vec<Laurent> = (0..n).map(|i| Laurent::var(q0.var(i))).collect();
    let mut cur = q0.clone();
    for &k in seq {
        let mut plus = Laurent::monomial(&BTreeMap::new());
        let mut minus = plus.clone();
        for j in 0..n {
            let e = cur.eps(k, j);
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    plus = plus.mul(&cluster[j]);
                } else {
                    minus = minus.mul(&cluster[j]);
                }
            }
        }
        cluster[k] = plus.add(&minus).div(&cluster[k])?;
        cur = cur.mutate(k)?;
    }
    let seed = PrincipalSeed::initial(&q0).mutate_seq(seq)?;
    let g = seed.g_matrix()?;
    // p(X_j) = ∏_l A_l^{ε_jl}
    let p_of = |m: &Monomial| -> BTreeMap<VarId, i64> {
        let mut out = BTreeMap::new();
        for &(v, e) in m.exponents() {
            let j = q0.position_of_var(v).expect("variable of the quiver");
            for l in 0..n {
                *out.entry(q0.var(l)).or_insert(0) += e as i64 * q0.eps(j, l);
            }
        }
        out
    };
    let mut holds = true;
    for i in 0..n {
        let mut fp = Laurent::new(Polynomial::zero(), BTreeMap::new());
        for (m, c) in seed.f()[i].terms() {
            let term = Laurent::new(Polynomial::constant(c.clone()), p_of(m));
            fp = fp.add(&term);
        }
        let gmon: BTreeMap<VarId, i64> = (0..n).map(|j| (q0.var(j), g[i][j])).collect();
        let rhs = Laurent::monomial(&gmon).mul(&fp);
        if rhs != cluster[i] {
            holds = false;
        }
    }
    Ok(SeparationReport { holds, cluster })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic() {
        let x = Laurent::var(VarId(1));
        let y = Laurent::var(VarId(2));
        let s = x.add(&y);
        assert_eq!(s.div(&x).unwrap().mul(&x), s);
        let inv = Laurent::monomial(&[(VarId(1), -1)].into());
        assert_eq!(inv.mul(&x).num(), &Polynomial::one());
        assert!(inv.mul(&x).shift().is_empty());
    }

    #[test]
    fn empty_sequence() {
        let q = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        assert!(separation_check(&q, &[]).unwrap().holds);
    }

    #[test]
    fn pentagon() {
        let q = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
        let r = separation_check(&q, &[0, 1, 0, 1, 0]).unwrap();
        assert!(r.holds);
        let mut vars: Vec<_> = r.cluster.iter().map(|l| l.as_variable().unwrap()).collect();
        vars.sort();
        assert_eq!(vars, vec![VarId(0), VarId(1)]);
    }
}
