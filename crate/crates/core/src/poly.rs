//! Sparse multivariate polynomials with big-integer coefficients, and
//! quotients of them.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded: lower total degree first, and within one degree the monomial
//! with the larger exponent on the smallest variable first. Iterating a
//! polynomial therefore yields the canonical printing order
//! `1 + X2 + X1*X2 + 2*X1*X2*X3`. The ordering is multiplicative, so its
//! maximum is a valid leading term for division.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Identifier of a formal variable `X_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.0)
    }
}

/// Exact rational evaluation point.
pub type Point = BTreeMap<VarId, BigRational>;

/// A monomial `∏ X_v^e` with all exponents positive, sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    deg: u32,
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: VarId, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monomial { deg: e, exps: vec![(v, e)] }
    }

    /// Builds a monomial from (variable, exponent) pairs in any order;
    /// repeated variables are merged and zero exponents dropped.
    pub fn from_exponents<I: IntoIterator<Item = (VarId, u32)>>(it: I) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in it {
            *map.entry(v).or_insert(0) += e;
        }
        let exps: Vec<_> = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let deg = exps.iter().map(|&(_, e)| e).sum();
        Monomial { deg, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        match self.exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { deg: self.deg + other.deg, exps }
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.deg > self.deg {
            return None;
        }
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let f = other.exps[j].1;
                if f > e {
                    return None;
                }
                if e > f {
                    exps.push((v, e - f));
                }
                j += 1;
            } else {
                exps.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { deg: self.deg - other.deg, exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exps
                .iter()
                .map(|&(v, e)| (v, e.min(other.exponent(v)))),
        )
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(VarId) -> String) -> fmt::Result {
        for (i, &(v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(&name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            let (a, b) = (&self.exps, &other.exps);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va != vb {
                            // the side carrying the smaller variable has the
                            // larger exponent there and sorts first
                            return va.cmp(&vb);
                        }
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(Monomial::one(), c.into())
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v), BigInt::one())
    }

    /// `1 + X_v`
    pub fn one_plus_var(v: VarId) -> Self {
        &Self::one() + &Self::var(v)
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// The largest term in the monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.exps.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn max_exponent(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Value at `X_v = 1` for every variable.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Polynomial { terms })
    }

    /// Greatest monomial dividing every term (`1` for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    /// Gcd of the integer coefficients (zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Sets every variable with `gone(v)` to zero.
    pub fn set_zero(&self, gone: impl Fn(VarId) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.exps.iter().any(|&(v, _)| gone(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames variables; the map need not be injective.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            (
                Monomial::from_exponents(m.exps.iter().map(|&(v, e)| (f(v), e))),
                c.clone(),
            )
        }))
    }

    /// Polynomial substitution `X_v ↦ map[v]`; unmapped variables are kept.
    pub fn compose(&self, map: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        let mut cache: BTreeMap<(VarId, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut term = Polynomial::one();
            for &(v, e) in &m.exps {
                match map.get(&v) {
                    Some(q) => {
                        let pw = cache.entry((v, e)).or_insert_with(|| q.pow(e));
                        term = &term * pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            let term = term.mul_monomial(&Monomial::from_exponents(kept)).scale(c);
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, point: &Point) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for &(v, e) in &m.exps {
                let x = point.get(&v).ok_or(Error::MissingVariable(v.0))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Canonical text using a custom variable namer.
    pub fn display_with<'a>(&'a self, name: &'a dyn Fn(VarId) -> String) -> impl fmt::Display + 'a {
        Named { p: self, name }
    }

    /// Structured form: a list of `{coeff, exps}` records.
    pub fn to_structured(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .exps
                    .iter()
                    .map(|&(v, e)| (v.0.to_string(), serde_json::Value::from(e)))
                    .collect();
                let coeff = match c.to_i64() {
                    Some(x) => serde_json::Value::from(x),
                    None => serde_json::Value::from(c.to_string()),
                };
                serde_json::json!({ "coeff": coeff, "exps": exps })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(VarId) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(f, name)?;
            }
        }
        Ok(())
    }
}

struct Named<'a> {
    p: &'a Polynomial,
    name: &'a dyn Fn(VarId) -> String,
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.p.fmt_with(f, self.name)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v| v.to_string())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let mut acc: std::collections::HashMap<Monomial, BigInt> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Exact quotient `p / q`, failing with `NotDivisible` unless `q` divides
/// `p` over the integers.
pub fn exact_div(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if q.is_one() {
        return Ok(p.clone());
    }
    let (lq, lc) = q.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    if q.is_monomial() {
        let mut terms = BTreeMap::new();
        for (m, c) in &p.terms {
            let (quo, rem) = c.div_rem(&lc);
            if !rem.is_zero() {
                return Err(Error::NotDivisible);
            }
            terms.insert(m.div(&lq).ok_or(Error::NotDivisible)?, quo);
        }
        return Ok(Polynomial { terms });
    }
    let mut rem = p.clone();
    let mut quot = Polynomial::zero();
    while let Some((lm, c)) = rem.leading_term() {
        let m = lm.div(&lq).ok_or(Error::NotDivisible)?;
        let (cq, r) = c.div_rem(&lc);
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        for (qm, qc) in &q.terms {
            rem.add_term(qm.mul(&m), -(qc * &cq));
        }
        quot.add_term(m, cq);
    }
    Ok(quot)
}

/// `p ∘ σ` as a quotient. Variables missing from `σ` are left unchanged.
///
/// The result is put over the common denominator `∏ den(σ(v))^{deg_v p}`
/// and then normalized, so no polynomial gcd is needed.
pub fn substitute(p: &Polynomial, sigma: &BTreeMap<VarId, RationalExpr>) -> RationalExpr {
    let vars: Vec<VarId> = p.variables().into_iter().filter(|v| sigma.contains_key(v)).collect();
    let mut num_pows: BTreeMap<VarId, Vec<Polynomial>> = BTreeMap::new();
    let mut den_pows: BTreeMap<VarId, Vec<Polynomial>> = BTreeMap::new();
    let mut den = Polynomial::one();
    for &v in &vars {
        let r = &sigma[&v];
        let top = p.max_exponent(v);
        let powers = |base: &Polynomial| {
            let mut out = vec![Polynomial::one()];
            for _ in 0..top {
                let next = out.last().unwrap() * base;
                out.push(next);
            }
            out
        };
        num_pows.insert(v, powers(&r.num));
        let dp = powers(&r.den);
        den = &den * &dp[top as usize];
        den_pows.insert(v, dp);
    }
    let mut num = Polynomial::zero();
    for (m, c) in &p.terms {
        let mut kept = Vec::new();
        let mut term = Polynomial::constant(c.clone());
        for &(v, e) in &m.exps {
            match num_pows.get(&v) {
                Some(np) => {
                    let top = den_pows[&v].len() - 1;
                    term = &term * &np[e as usize];
                    term = &term * &den_pows[&v][top - e as usize];
                }
                None => kept.push((v, e)),
            }
        }
        for &v in &vars {
            if m.exponent(v) == 0 {
                let dp = &den_pows[&v];
                term = &term * dp.last().unwrap();
            }
        }
        num = &num + &term.mul_monomial(&Monomial::from_exponents(kept));
    }
    RationalExpr::normalized(num, den)
}

/// Exact value of `p` at a rational point.
pub fn eval_rational(p: &Polynomial, point: &Point) -> Result<BigRational> {
    p.eval(point)
}

/// A quotient `num / den` of polynomials.
///
/// Only the common monomial and integer content are removed; equality is
/// decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: Polynomial,
    den: Polynomial,
}

impl RationalExpr {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalExpr { num, den: Polynomial::one() };
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&g).unwrap(), den.div_monomial(&g).unwrap())
        };
        let mut k = num.integer_content().gcd(&den.integer_content());
        if den.leading_term().unwrap().1.is_negative() {
            k = -k;
        }
        if !k.is_one() {
            num = exact_div(&num, &Polynomial::constant(k.clone())).unwrap();
            den = exact_div(&den, &Polynomial::constant(k)).unwrap();
        }
        RationalExpr { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalExpr { num: p, den: Polynomial::one() }
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Self::normalized(base.num.pow(k), base.den.pow(k)))
    }

    /// Exact polynomial value, failing if the denominator does not divide.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        exact_div(&self.num, &self.den)
    }

    pub fn eval(&self, point: &Point) -> Result<BigRational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point)? / d)
    }
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalExpr {}

impl Add for &RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        if self.den == rhs.den {
            return RationalExpr::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalExpr::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        let neg = RationalExpr { num: -&rhs.num, den: rhs.den.clone() };
        self + &neg
    }
}

impl Mul for &RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        RationalExpr::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for RationalExpr {
    type Err = Error;

    /// Accepts a polynomial or `(p)/(q)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            if let Some(idx) = rest.find(")/(") {
                let num: Polynomial = rest[..idx].parse()?;
                let den_part = rest[idx + 3..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced quotient `{s}`")))?;
                return RationalExpr::new(num, den_part.parse()?);
            }
        }
        Ok(RationalExpr::from_poly(s.parse()?))
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses the canonical text form. Also accepts juxtaposed factors
    /// (`X1X2`), `·` for multiplication and superscript exponents.
    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).polynomial()
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn superscript_digit(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c).map(|i| i as u32)
}

impl Parser {
    fn new(s: &str) -> Self {
        Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut out = Polynomial::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let mut sign = BigInt::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(self.err("expected `+` or `-`")),
            }
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut coeff = BigInt::one();
        let mut exps = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let d = self.digits().unwrap();
                    coeff *= d.parse::<BigInt>().map_err(|_| self.err("bad integer"))?;
                }
                Some('X') | Some('x') => {
                    self.pos += 1;
                    let id = self.digits().ok_or_else(|| self.err("expected variable index"))?;
                    let id: u32 = id.parse().map_err(|_| self.err("variable index too large"))?;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                        e = d.parse().map_err(|_| self.err("exponent too large"))?;
                    } else if self.peek().and_then(superscript_digit).is_some() {
                        e = 0;
                        while let Some(d) = self.peek().and_then(superscript_digit) {
                            e = e * 10 + d;
                            self.pos += 1;
                        }
                    }
                    exps.push((VarId(id), e));
                }
                _ => return Err(self.err("expected a factor")),
            }
            match self.peek() {
                Some('*') | Some('·') => self.pos += 1,
                Some('X') | Some('x') => {}
                _ => break,
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_order_and_printing() {
        let f = p("2*X1*X2*X3 + X1*X2 + X2 + 1");
        assert_eq!(f.to_string(), "1 + X2 + X1*X2 + 2*X1*X2*X3");
        let g = p("X2*X3 + X1*X2 + X2*X4");
        assert_eq!(g.to_string(), "X1*X2 + X2*X3 + X2*X4");
        assert_eq!(p("X1 - 3*X2^2 - 1").to_string(), "-1 + X1 - 3*X2^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn parses_superscripts_and_dots() {
        let f = p("1 + X2 + 2·X1X2X3X4X5 + X1X2X3X4X5²");
        assert_eq!(f.to_string(), "1 + X2 + 2*X1*X2*X3*X4*X5 + X1*X2*X3*X4*X5^2");
    }

    #[test]
    fn exact_div_examples() {
        let a = p("1 + X1");
        let b = p("1 + X2");
        assert_eq!(exact_div(&(&a * &b), &a).unwrap(), b);
        assert_eq!(exact_div(&b, &Polynomial::one()).unwrap(), b);
        assert_eq!(exact_div(&b, &a), Err(Error::NotDivisible));
        assert_eq!(exact_div(&p("2*X1"), &p("4")), Err(Error::NotDivisible));
    }

    #[test]
    fn exact_div_surface_step() {
        // F + (Xb+Xc)F + Xb Xc F^2 over F with F = 1 + Xa(1+Xb')(1+Xc')
        let (xa, xb, xc, xb2, xc2) = (VarId(1), VarId(2), VarId(3), VarId(4), VarId(5));
        let one = Polynomial::one();
        let v = Polynomial::var;
        let f = &one + &(&v(xa) * &(&Polynomial::one_plus_var(xb2) * &Polynomial::one_plus_var(xc2)));
        let xbxc = &v(xb) * &v(xc);
        let num = &(&f + &(&(&v(xb) + &v(xc)) * &f)) + &(&xbxc * &(&f * &f));
        let got = exact_div(&num, &f).unwrap();
        let want = &(&(&one + &v(xb)) + &v(xc)) + &(&xbxc * &f);
        assert_eq!(got, want);
    }

    #[test]
    fn substitute_examples() {
        let (x1, x2) = (VarId(1), VarId(2));
        let mut sigma = BTreeMap::new();
        sigma.insert(
            x1,
            RationalExpr::new(Polynomial::var(x1), Polynomial::one_plus_var(x2)).unwrap(),
        );
        let r = substitute(&Polynomial::var(x1), &sigma);
        assert_eq!(r.num(), &Polynomial::var(x1));
        assert_eq!(r.den(), &Polynomial::one_plus_var(x2));

        let f = p("1 + X2 + X1*X2");
        let ident: BTreeMap<_, _> = [(x1, RationalExpr::var(x1)), (x2, RationalExpr::var(x2))].into();
        let r = substitute(&f, &ident);
        assert_eq!(r.to_polynomial().unwrap(), f);
    }

    #[test]
    fn eval_examples() {
        let f = p("1 + X1*X2");
        let pt: Point = [(VarId(1), q(1, 2)), (VarId(2), q(2, 3))].into();
        assert_eq!(eval_rational(&f, &pt).unwrap(), q(4, 3));
        let zeros: Point = [(VarId(1), q(0, 1)), (VarId(2), q(0, 1))].into();
        assert_eq!(eval_rational(&p("7 + X1 + X2^3"), &zeros).unwrap(), q(7, 1));
        assert_eq!(f.eval(&Point::new()), Err(Error::MissingVariable(1)));
    }

    #[test]
    fn rational_arithmetic() {
        let x = RationalExpr::var(VarId(1));
        let one = RationalExpr::one();
        let a = (&one + &x).inv().unwrap();
        let b = &(&one + &x) * &a;
        assert_eq!(b, one);
        assert!(!b.is_polynomial());
        assert!(b.to_polynomial().unwrap().is_one());
        let c = x.pow(-2).unwrap();
        assert_eq!(&c * &x.pow(2).unwrap(), one);
        assert_eq!("(1 + X1)/(X2)".parse::<RationalExpr>().unwrap().to_string(), "(1 + X1)/(X2)");
        assert!(RationalExpr::new(one.num().clone(), Polynomial::zero()).is_err());
    }

    #[test]
    fn normalization_sign_and_content() {
        let r = RationalExpr::new(p("2*X1*X2"), p("-4*X1")).unwrap();
        assert_eq!(r.num(), &p("-X2"));
        assert_eq!(r.den(), &p("2"));
    }

    #[test]
    fn compose_polynomials() {
        let f = p("1 + X1 + X1*X2");
        let map: BTreeMap<_, _> = [(VarId(1), p("X1 + X1*X3"))].into();
        assert_eq!(f.compose(&map), p("1 + X1 + X1*X3 + X1*X2 + X1*X2*X3"));
    }

    #[test]
    fn structured_form() {
        let v = p("1 + 2*X3^2").to_structured();
        assert_eq!(v[1]["coeff"], 2);
        assert_eq!(v[1]["exps"]["3"], 2);
    }
}
