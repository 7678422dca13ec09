//! Seeds with principal coefficients: C-matrices, F-polynomials and the
//! green/red colouring, plus reddening search and DT extraction.

mod dt;
mod search;
mod separation;

pub use dt::{change_initial_seed, compose_triangular, dt_transform, restrict_to_subquiver, DtResult};
pub use search::{search_reddening, search_reddening_with, SearchConfig, SearchMode, SearchOutcome};
pub use separation::{separation_check, Laurent, SeparationReport};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{exact_div, Monomial, Polynomial, VarId};
use crate::quiver::{Quiver, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Green,
    Red,
}

/// A seed reached from the initial one by a mutation sequence.
///
/// The C-matrix is not stored separately: it is the mutable-by-frozen
/// block of the framed quiver.
#[derive(Clone, Debug)]
pub struct PrincipalSeed {
    framed: Quiver,
    f: Vec<Polynomial>,
    history: Vec<VertexId>,
}

impl PrincipalSeed {
    /// Uses the mutable part of `q`; frozen vertices play no role here.
    pub fn initial(q: &Quiver) -> Self {
        let framed = q.with_principal_coefficients();
        let n = q.n_mutable();
        PrincipalSeed { framed, f: vec![Polynomial::one(); n], history: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.framed.n_mutable()
    }

    /// Variable `X_j` attached to initial vertex `j`.
    pub fn var(&self, j: VertexId) -> VarId {
        self.framed.var(j)
    }

    pub fn vars(&self) -> Vec<VarId> {
        (0..self.n()).map(|j| self.var(j)).collect()
    }

    /// The current mutable quiver.
    pub fn quiver(&self) -> Quiver {
        self.framed.mutable_part()
    }

    pub fn framed(&self) -> &Quiver {
        &self.framed
    }

    pub fn eps(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.framed.eps(i, j)).collect()).collect()
    }

    pub fn c_row(&self, i: VertexId) -> Vec<i64> {
        let n = self.n();
        (0..n).map(|j| self.framed.eps(i, n + j)).collect()
    }

    pub fn c_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n()).map(|i| self.c_row(i)).collect()
    }

    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn history(&self) -> &[VertexId] {
        &self.history
    }

    pub fn color(&self, i: VertexId) -> Result<Color> {
        let row = self.c_row(i);
        if row.iter().all(|&c| c >= 0) {
            Ok(Color::Green)
        } else if row.iter().all(|&c| c <= 0) {
            Ok(Color::Red)
        } else {
            Err(Error::SignCoherenceViolation(i))
        }
    }

    pub fn is_all_red(&self) -> bool {
        (0..self.n()).all(|i| self.color(i) == Ok(Color::Red))
    }

    pub fn mutate(&self, k: VertexId) -> Result<PrincipalSeed> {
        let n = self.n();
        if k >= n {
            return Err(if k < self.framed.n() { Error::FrozenMutation(k) } else { Error::VertexOutOfRange(k) });
        }
        let c = self.c_row(k);
        let plus = Monomial::from_exponents((0..n).map(|j| (self.var(j), c[j].max(0) as u32)));
        let minus = Monomial::from_exponents((0..n).map(|j| (self.var(j), (-c[j]).max(0) as u32)));
        if plus.is_one() == minus.is_one() {
            return Err(Error::SignCoherenceViolation(k));
        }
        let mut a = Polynomial::monomial(plus, 1.into());
        let mut b = Polynomial::monomial(minus, 1.into());
        for j in 0..n {
            let e = self.framed.eps(k, j);
            if e > 0 {
                a = &a * &self.f[j].pow(e as u32);
            } else if e < 0 {
                b = &b * &self.f[j].pow((-e) as u32);
            }
        }
        let fk = exact_div(&(&a + &b), &self.f[k])?;
        let mut f = self.f.clone();
        f[k] = fk;
        let mut history = self.history.clone();
        history.push(k);
        let seed = PrincipalSeed { framed: self.framed.mutate(k)?, f, history };
        seed.check_invariants(Some(k))?;
        Ok(seed)
    }

    pub fn mutate_seq(&self, seq: &[VertexId]) -> Result<PrincipalSeed> {
        let mut s = self.clone();
        for &k in seq {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// `(C⁻¹)ᵀ`.
    pub fn g_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let inv = linalg::integer_inverse(&self.c_matrix())
            .ok_or_else(|| Error::InvariantViolation("C-matrix is not unimodular".into()))?;
        Ok(linalg::transpose(&inv))
    }

    /// Sign coherence, `det C = ±1`, `gᵀC = id`, and for the F-polynomials
    /// named in `touched` (all when `None`) constant term 1 and positive
    /// coefficients.
    pub fn check_invariants(&self, touched: Option<VertexId>) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            self.color(i)?;
        }
        let c = self.c_matrix();
        let d = linalg::det_i64(&c);
        if d.abs() != 1.into() {
            return Err(Error::InvariantViolation(format!("det C = {d}")));
        }
        let g = self.g_matrix()?;
        if linalg::matmul(&linalg::transpose(&g), &c) != linalg::identity(n) {
            return Err(Error::InvariantViolation("gᵀC ≠ id".into()));
        }
        let check = |p: &Polynomial| -> Result<()> {
            if !num_traits::One::is_one(&p.constant_term()) {
                return Err(Error::InvariantViolation(format!("F has constant term {}", p.constant_term())));
            }
            if !p.all_coefficients_positive() {
                return Err(Error::InvariantViolation("F has a non-positive coefficient".into()));
            }
            Ok(())
        };
        match touched {
            Some(k) => check(&self.f[k])?,
            None => self.f.iter().try_for_each(check)?,
        }
        Ok(())
    }
}

/// Mutation sequence as a plain list of positions.
pub type Sequence = Vec<VertexId>;
