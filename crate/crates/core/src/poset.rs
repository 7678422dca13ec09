//! Finite labeled posets and their ideal functions.
//!
//! A poset is stored as its cover relation (a transitive reduction) plus
//! the strict down-set and up-set of every element as bitsets. Ideal
//! functions are computed without listing ideals: for a minimal element
//! `m` of a connected piece `S`,
//! `F(S) = F(S ∖ ↑m) + L_m · F(S ∖ {m})`, and disconnected pieces multiply.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::{Point, Polynomial, RationalExpr, VarId};

pub type ElementId = usize;

/// Default cap on explicit ideal enumeration.
pub const IDEAL_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    Var(VarId),
    Zero,
    Rational(RationalExpr),
}

impl Label {
    pub fn to_rational(&self) -> RationalExpr {
        match self {
            Label::Var(v) => RationalExpr::var(*v),
            Label::Zero => RationalExpr::constant(0),
            Label::Rational(r) => r.clone(),
        }
    }

    /// Simplest label equal to `r`.
    pub fn from_rational(r: RationalExpr) -> Label {
        if r.is_zero() {
            return Label::Zero;
        }
        if r.is_polynomial() && r.num().is_monomial() {
            let (m, c) = r.num().terms().next().unwrap();
            if c.is_one() && m.degree() == 1 {
                return Label::Var(m.exponents()[0].0);
            }
        }
        Label::Rational(r)
    }

    pub fn is_simple(&self) -> bool {
        matches!(self, Label::Var(_))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Var(v) => write!(f, "{v}"),
            Label::Zero => f.write_str("0"),
            Label::Rational(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Label> {
        if s.trim() == "0" {
            return Ok(Label::Zero);
        }
        Ok(Label::from_rational(s.parse()?))
    }
}

/// A downward-closed set of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    members: FixedBitSet,
}

impl Ideal {
    pub fn contains(&self, e: ElementId) -> bool {
        self.members.contains(e)
    }

    pub fn members(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.ones()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct LabeledPoset {
    labels: Vec<Label>,
    covers: Vec<(ElementId, ElementId)>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl PartialEq for LabeledPoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.covers == other.covers
    }
}

impl LabeledPoset {
    /// Builds a poset from labels and `(upper, lower)` relations; the
    /// relations may be any generating set and are reduced to covers.
    pub fn new(labels: Vec<Label>, relations: &[(ElementId, ElementId)]) -> Result<Self> {
        let n = labels.len();
        let mut seen = BTreeSet::new();
        let mut lower_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, l) in relations {
            if u >= n || l >= n {
                return Err(Error::Parse(format!("relation ({u},{l}) out of range")));
            }
            if u == l {
                return Err(Error::PosetCycle);
            }
            if !seen.insert((u, l)) {
                return Err(Error::DuplicateCover(u, l));
            }
            lower_of[u].push(l);
        }
        // Kahn order from the bottom
        let mut n_lower: Vec<usize> = lower_of.iter().map(|v| v.len()).collect();
        let mut upper_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, ls) in lower_of.iter().enumerate() {
            for &l in ls {
                upper_of[l].push(u);
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| n_lower[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = ready.pop() {
            order.push(i);
            for &u in &upper_of[i] {
                n_lower[u] -= 1;
                if n_lower[u] == 0 {
                    ready.push(u);
                }
            }
        }
        if order.len() != n {
            return Err(Error::PosetCycle);
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &i in &order {
            let mut b = FixedBitSet::with_capacity(n);
            for &l in &lower_of[i] {
                b.insert(l);
                b.union_with(&below[l]);
            }
            below[i] = b;
        }
        Ok(Self::from_closure(labels, below))
    }

    fn from_closure(labels: Vec<Label>, below: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (u, b) in below.iter().enumerate() {
            for l in b.ones() {
                above[l].insert(u);
            }
        }
        let mut covers = Vec::new();
        for u in 0..n {
            for l in below[u].ones() {
                let mut between = below[u].clone();
                between.intersect_with(&above[l]);
                if between.is_clear() {
                    covers.push((u, l));
                }
            }
        }
        covers.sort_unstable();
        LabeledPoset { labels, covers, below, above }
    }

    pub fn empty() -> Self {
        Self::from_closure(Vec::new(), Vec::new())
    }

    pub fn singleton(label: Label) -> Self {
        Self::new(vec![label], &[]).unwrap()
    }

    /// Chain with `labels[0]` at the bottom.
    pub fn chain(labels: Vec<Label>) -> Self {
        let rel: Vec<_> = (1..labels.len()).map(|i| (i, i - 1)).collect();
        Self::new(labels, &rel).unwrap()
    }

    pub fn antichain(labels: Vec<Label>) -> Self {
        Self::new(labels, &[]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, e: ElementId) -> &Label {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Cover pairs `(upper, lower)`, sorted.
    pub fn covers(&self) -> &[(ElementId, ElementId)] {
        &self.covers
    }

    /// Whether `a < b`.
    pub fn less(&self, a: ElementId, b: ElementId) -> bool {
        self.below[b].contains(a)
    }

    pub fn strictly_below(&self, e: ElementId) -> &FixedBitSet {
        &self.below[e]
    }

    pub fn strictly_above(&self, e: ElementId) -> &FixedBitSet {
        &self.above[e]
    }

    pub fn minimal_elements(&self) -> Vec<ElementId> {
        (0..self.len()).filter(|&i| self.below[i].is_clear()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElementId> {
        (0..self.len()).filter(|&i| self.above[i].is_clear()).collect()
    }

    /// The unique minimal element, if there is exactly one.
    pub fn minimum(&self) -> Option<ElementId> {
        match self.minimal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn is_pointed(&self) -> bool {
        self.minimum().is_some()
    }

    pub fn is_simply_labeled(&self) -> bool {
        self.labels.iter().all(Label::is_simple)
    }

    pub fn opposite(&self) -> LabeledPoset {
        Self::from_closure(self.labels.clone(), self.above.clone())
    }

    /// Induced subposet on `keep`, renumbered in increasing order.
    pub fn induced(&self, keep: &FixedBitSet) -> LabeledPoset {
        let ids: Vec<usize> = keep.ones().collect();
        let index: HashMap<usize, usize> = ids.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let m = ids.len();
        let below = ids
            .iter()
            .map(|&i| {
                let mut b = FixedBitSet::with_capacity(m);
                for l in self.below[i].ones() {
                    if let Some(&j) = index.get(&l) {
                        b.insert(j);
                    }
                }
                b
            })
            .collect();
        Self::from_closure(ids.iter().map(|&i| self.labels[i].clone()).collect(), below)
    }

    fn all(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    /// Up-set generated by the elements in `gen`.
    pub fn up_closure(&self, gen: &FixedBitSet) -> FixedBitSet {
        let mut s = gen.clone();
        for g in gen.ones() {
            s.union_with(&self.above[g]);
        }
        s
    }

    pub fn with_labels(&self, labels: Vec<Label>) -> LabeledPoset {
        assert_eq!(labels.len(), self.len());
        LabeledPoset { labels, ..self.clone() }
    }

    /// Disjoint union, `other` renumbered after `self`.
    pub fn disjoint_union(&self, other: &LabeledPoset) -> LabeledPoset {
        let off = self.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut rel = self.covers.clone();
        rel.extend(other.covers.iter().map(|&(u, l)| (u + off, l + off)));
        LabeledPoset::new(labels, &rel).unwrap()
    }

    pub fn to_json(&self) -> Value {
        let elements: Vec<Value> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| serde_json::json!({"id": i, "label": l.to_string()}))
            .collect();
        let covers: Vec<Value> = self.covers.iter().map(|&(u, l)| serde_json::json!([u, l])).collect();
        serde_json::json!({"elements": elements, "covers": covers})
    }

    /// Reads the structured poset format; ids may be any distinct strings
    /// or integers.
    pub fn from_json(v: &Value) -> Result<LabeledPoset> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let elements = v.get("elements").and_then(Value::as_array).ok_or_else(|| bad("missing `elements`"))?;
        let mut index = HashMap::new();
        let mut labels = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            let id = e.get("id").map(|x| x.to_string()).unwrap_or_else(|| i.to_string());
            let label = match e.get("label") {
                Some(Value::String(s)) => s.parse()?,
                Some(Value::Number(n)) if n.as_i64() == Some(0) => Label::Zero,
                _ => return Err(bad("element label must be a string")),
            };
            if index.insert(id.trim_matches('"').to_string(), i).is_some() {
                return Err(bad("duplicate element id"));
            }
            labels.push(label);
        }
        let mut rel = Vec::new();
        for c in v.get("covers").and_then(Value::as_array).map(Vec::as_slice).unwrap_or(&[]) {
            let pair = c.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("cover must be [upper, lower]"))?;
            let look = |x: &Value| {
                let key = x.to_string();
                index.get(key.trim_matches('"')).copied().ok_or_else(|| bad(&format!("unknown element {key}")))
            };
            rel.push((look(&pair[0])?, look(&pair[1])?));
        }
        LabeledPoset::new(labels, &rel)
    }

    /// DOT digraph with edges pointing downward (upper → lower).
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph P {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{l}\"];");
        }
        for &(u, l) in &self.covers {
            let _ = writeln!(s, "  {u} -> {l};");
        }
        s.push_str("}\n");
        s
    }

    /// Parses the output of [`to_dot`](Self::to_dot).
    pub fn parse_dot(text: &str) -> Result<LabeledPoset> {
        let mut labels: BTreeMap<usize, Label> = BTreeMap::new();
        let mut rel = Vec::new();
        for line in text.lines() {
            let line = line.trim().trim_end_matches(';').trim();
            if line.is_empty() || line.starts_with("digraph") || line == "}" {
                continue;
            }
            if let Some((a, b)) = line.split_once("->") {
                let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad node `{x}`")));
                rel.push((parse(a)?, parse(b)?));
            } else if let Some((id, rest)) = line.split_once('[') {
                let id: usize = id.trim().parse().map_err(|_| Error::Parse(format!("bad node `{id}`")))?;
                let start = rest.find("label=\"").ok_or_else(|| Error::Parse("missing label".into()))? + 7;
                let end = rest[start..].find('"').ok_or_else(|| Error::Parse("unterminated label".into()))?;
                labels.insert(id, rest[start..start + end].parse()?);
            } else {
                return Err(Error::Parse(format!("unrecognized DOT line `{line}`")));
            }
        }
        if labels.keys().copied().ne(0..labels.len()) {
            return Err(Error::Parse("node ids must be 0..n".into()));
        }
        LabeledPoset::new(labels.into_values().collect(), &rel)
    }
}

/// Every ideal exactly once, in DFS order over a fixed linear extension.
pub fn enumerate_ideals(p: &LabeledPoset) -> Result<Vec<Ideal>> {
    enumerate_ideals_limited(p, IDEAL_LIMIT)
}

pub fn enumerate_ideals_limited(p: &LabeledPoset, limit: usize) -> Result<Vec<Ideal>> {
    let order = linear_extension(p);
    let mut out = Vec::new();
    let mut cur = FixedBitSet::with_capacity(p.len());
    fn go(
        p: &LabeledPoset,
        order: &[usize],
        i: usize,
        cur: &mut FixedBitSet,
        out: &mut Vec<Ideal>,
        limit: usize,
    ) -> Result<()> {
        if i == order.len() {
            if out.len() >= limit {
                return Err(Error::TooManyIdeals(limit));
            }
            out.push(Ideal { members: cur.clone() });
            return Ok(());
        }
        let e = order[i];
        go(p, order, i + 1, cur, out, limit)?;
        if p.below[e].is_subset(cur) {
            cur.insert(e);
            go(p, order, i + 1, cur, out, limit)?;
            cur.set(e, false);
        }
        Ok(())
    }
    go(p, &order, 0, &mut cur, &mut out, limit)?;
    Ok(out)
}

/// Elements sorted so that smaller elements come first (ties by id).
pub fn linear_extension(p: &LabeledPoset) -> Vec<ElementId> {
    let mut ids: Vec<usize> = (0..p.len()).collect();
    ids.sort_by_key(|&i| (p.below[i].count_ones(..), i));
    ids
}

/// Sum over ideals of a multiplicative weight; `None` weights are zero.
fn fold_ideals<T: Clone>(
    p: &LabeledPoset,
    weights: &[Option<T>],
    one: &T,
    add: &dyn Fn(&T, &T) -> T,
    mul: &dyn Fn(&T, &T) -> T,
) -> T {
    struct Ctx<'a, T> {
        p: &'a LabeledPoset,
        w: &'a [Option<T>],
        one: &'a T,
        add: &'a dyn Fn(&T, &T) -> T,
        mul: &'a dyn Fn(&T, &T) -> T,
        memo: HashMap<FixedBitSet, T>,
    }
    fn components(p: &LabeledPoset, s: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut left = s.clone();
        let mut out = Vec::new();
        while let Some(start) = left.ones().next() {
            let mut comp = FixedBitSet::with_capacity(s.len());
            comp.insert(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let mut nb = p.below[x].clone();
                nb.union_with(&p.above[x]);
                nb.intersect_with(&left);
                nb.difference_with(&comp);
                for y in nb.ones() {
                    comp.insert(y);
                    stack.push(y);
                }
            }
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }
    fn go<T: Clone>(c: &mut Ctx<'_, T>, s: &FixedBitSet) -> T {
        if s.is_clear() {
            return c.one.clone();
        }
        if let Some(v) = c.memo.get(s) {
            return v.clone();
        }
        let comps = components(c.p, s);
        let result = if comps.len() > 1 {
            let mut acc = c.one.clone();
            for comp in &comps {
                let v = go(c, comp);
                acc = (c.mul)(&acc, &v);
            }
            acc
        } else {
            let m = s.ones().find(|&x| c.p.below[x].is_disjoint(s)).expect("finite poset has a minimal element");
            let mut without_up = s.clone();
            without_up.set(m, false);
            without_up.difference_with(&c.p.above[m]);
            let excl = go(c, &without_up);
            match &c.w[m] {
                None => excl,
                Some(wm) => {
                    let mut rest = s.clone();
                    rest.set(m, false);
                    let incl = go(c, &rest);
                    (c.add)(&excl, &(c.mul)(wm, &incl))
                }
            }
        };
        c.memo.insert(s.clone(), result.clone());
        result
    }
    let mut ctx = Ctx { p, w: weights, one, add, mul, memo: HashMap::new() };
    go(&mut ctx, &p.all())
}

/// Number of ideals.
pub fn count_ideals(p: &LabeledPoset) -> BigUint {
    let w = vec![Some(BigUint::one()); p.len()];
    fold_ideals(p, &w, &BigUint::one(), &|a, b| a + b, &|a, b| a * b)
}

/// `Σ_I ∏_{i∈I} L_i` for a poset whose labels are variables or zero.
pub fn ideal_function(p: &LabeledPoset) -> Result<Polynomial> {
    let w: Vec<Option<Polynomial>> = p
        .labels
        .iter()
        .map(|l| match l {
            Label::Var(v) => Ok(Some(Polynomial::var(*v))),
            Label::Zero => Ok(None),
            Label::Rational(_) => Err(Error::NonPolynomialLabel),
        })
        .collect::<Result<_>>()?;
    Ok(fold_ideals(p, &w, &Polynomial::one(), &|a, b| a + b, &|a, b| a * b))
}

/// Exact value of the ideal function at a rational point; any label may be
/// rational.
pub fn ideal_function_eval(p: &LabeledPoset, point: &Point) -> Result<BigRational> {
    let w: Vec<Option<BigRational>> = p
        .labels
        .iter()
        .map(|l| match l {
            Label::Zero => Ok(None),
            other => other.to_rational().eval(point).map(Some),
        })
        .collect::<Result<_>>()?;
    Ok(fold_ideals(p, &w, &BigRational::one(), &|a, b| a + b, &|a, b| a * b))
}

/// Splits off the minimum: returns `(L_min, P ∖ min)` after checking
/// `F(P) = 1 + L_min · F(P ∖ min)`.
pub fn pointed_factor(p: &LabeledPoset) -> Result<(Label, LabeledPoset)> {
    let m = p.minimum().ok_or(Error::NotPointed)?;
    let mut keep = p.all();
    keep.set(m, false);
    let rest = p.induced(&keep);
    let label = p.labels[m].clone();
    if !p.labels.iter().any(|l| matches!(l, Label::Rational(_))) {
        let lhs = ideal_function(p)?;
        let lm = match &label {
            Label::Var(v) => Polynomial::var(*v),
            _ => Polynomial::zero(),
        };
        let rhs = &Polynomial::one() + &(&lm * &ideal_function(&rest)?);
        if lhs != rhs {
            return Err(Error::IdentityViolation("pointed factorization".into()));
        }
    }
    Ok((label, rest))
}

/// Inserts a new element `k` with `j < k < i` labeled `l0`, rescaling the
/// labels of `j` and `i` so that the ideal function does not change.
pub fn insert_element(p: &LabeledPoset, i: ElementId, j: ElementId, l0: &RationalExpr) -> Result<LabeledPoset> {
    if i >= p.len() || j >= p.len() || !p.less(j, i) {
        return Err(Error::InvalidPair(i, j));
    }
    let one = RationalExpr::one();
    let one_plus = &one + l0;
    if l0.is_zero() || one_plus.is_zero() {
        return Err(Error::NotInvertible);
    }
    let mut labels = p.labels.clone();
    labels[j] = Label::from_rational(&p.labels[j].to_rational() * &one_plus.inv()?);
    labels[i] = Label::from_rational(&p.labels[i].to_rational() * &(&one + &l0.inv()?));
    let k = labels.len();
    labels.push(Label::from_rational(l0.clone()));
    let mut rel = p.covers.clone();
    rel.push((k, j));
    rel.push((i, k));
    LabeledPoset::new(labels, &rel)
}

/// Removes the up-set generated by zero-labeled elements.
pub fn truncate_zeros(p: &LabeledPoset) -> Result<LabeledPoset> {
    let mut zeros = FixedBitSet::with_capacity(p.len());
    for (i, l) in p.labels.iter().enumerate() {
        if *l == Label::Zero {
            zeros.insert(i);
        }
    }
    let mut keep = p.up_closure(&zeros);
    keep.toggle_range(..);
    let out = p.induced(&keep);
    if !p.labels.iter().any(|l| matches!(l, Label::Rational(_))) && ideal_function(p)? != ideal_function(&out)? {
        return Err(Error::IdentityViolation("zero truncation".into()));
    }
    Ok(out)
}

/// Sets the labels in `gone` to zero and truncates.
pub fn delete_antiideal_for_subquiver(p: &LabeledPoset, gone: &BTreeSet<VarId>) -> Result<LabeledPoset> {
    let labels = p
        .labels
        .iter()
        .map(|l| match l {
            Label::Var(v) if gone.contains(v) => Label::Zero,
            other => other.clone(),
        })
        .collect();
    truncate_zeros(&p.with_labels(labels))
}

/// For every element labeled `X_at`, places `mult` copies of each piece
/// above it, covering it from the copy's minimum.
pub fn attach(p: &LabeledPoset, at: VarId, pieces: &[(LabeledPoset, usize)]) -> Result<LabeledPoset> {
    for (piece, _) in pieces {
        if !piece.is_pointed() {
            return Err(Error::PieceNotPointed);
        }
    }
    let mut labels = p.labels.clone();
    let mut rel = p.covers.clone();
    let targets: Vec<usize> = (0..p.len()).filter(|&i| p.labels[i] == Label::Var(at)).collect();
    for &t in &targets {
        for (piece, mult) in pieces {
            let min = piece.minimum().unwrap();
            for _ in 0..*mult {
                let off = labels.len();
                labels.extend(piece.labels.iter().cloned());
                rel.extend(piece.covers.iter().map(|&(u, l)| (u + off, l + off)));
                rel.push((min + off, t));
            }
        }
    }
    LabeledPoset::new(labels, &rel)
}

/// Renames variable labels through `map`; unmapped ones are kept.
pub fn relabel(p: &LabeledPoset, map: &BTreeMap<VarId, VarId>) -> LabeledPoset {
    let labels = p
        .labels
        .iter()
        .map(|l| match l {
            Label::Var(v) => Label::Var(*map.get(v).unwrap_or(v)),
            other => other.clone(),
        })
        .collect();
    p.with_labels(labels)
}

/// A label- and order-preserving bijection `p → q`, if one exists.
pub fn find_poset_isomorphism(p: &LabeledPoset, q: &LabeledPoset) -> Option<Vec<ElementId>> {
    let n = p.len();
    if q.len() != n || p.covers.len() != q.covers.len() {
        return None;
    }
    let key = |x: &LabeledPoset, i: usize| {
        (x.labels[i].to_string(), x.below[i].count_ones(..), x.above[i].count_ones(..))
    };
    let kp: Vec<_> = (0..n).map(|i| key(p, i)).collect();
    let kq: Vec<_> = (0..n).map(|i| key(q, i)).collect();
    let mut a = kp.clone();
    let mut b = kq.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let order = linear_extension(p);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        order: &[usize],
        p: &LabeledPoset,
        q: &LabeledPoset,
        kp: &[(String, usize, usize)],
        kq: &[(String, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let x = order[idx];
        for t in 0..q.len() {
            if used[t] || kp[x] != kq[t] {
                continue;
            }
            let consistent = order[..idx].iter().all(|&y| {
                p.less(y, x) == q.less(map[y], t) && p.less(x, y) == q.less(t, map[y])
            });
            if !consistent {
                continue;
            }
            map[x] = t;
            used[t] = true;
            if go(idx + 1, order, p, q, kp, kq, map, used) {
                return true;
            }
            used[t] = false;
        }
        false
    }
    go(0, &order, p, q, &kp, &kq, &mut map, &mut used).then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Label {
        Label::Var(VarId(i))
    }

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    /// X1 at the bottom, X2 and X3 above it, X4 above both, X1 on top.
    pub(crate) fn section2_example() -> LabeledPoset {
        LabeledPoset::new(vec![x(1), x(2), x(3), x(4), x(1)], &[(1, 0), (2, 0), (3, 1), (3, 2), (4, 3)]).unwrap()
    }

    #[test]
    fn ideals_of_small_posets() {
        assert_eq!(enumerate_ideals(&LabeledPoset::empty()).unwrap().len(), 1);
        assert_eq!(enumerate_ideals(&LabeledPoset::chain(vec![x(1), x(2)])).unwrap().len(), 3);
        let anti = LabeledPoset::antichain(vec![x(1), x(2), x(3), x(4)]);
        assert_eq!(enumerate_ideals(&anti).unwrap().len(), 16);
        assert_eq!(count_ideals(&anti), BigUint::from(16u32));
        assert_eq!(enumerate_ideals_limited(&anti, 10), Err(Error::TooManyIdeals(10)));
    }

    #[test]
    fn ideals_are_down_closed_and_distinct() {
        let p = section2_example();
        let ideals = enumerate_ideals(&p).unwrap();
        assert_eq!(ideals.len(), 7);
        let set: BTreeSet<Vec<usize>> = ideals.iter().map(|i| i.members().collect()).collect();
        assert_eq!(set.len(), 7);
        for i in &ideals {
            for e in i.members() {
                assert!(p.strictly_below(e).ones().all(|l| i.contains(l)));
            }
        }
    }

    #[test]
    fn section2_ideal_function() {
        let p = section2_example();
        let f = ideal_function(&p).unwrap();
        assert_eq!(f, poly("1 + X1 + X1*X2 + X1*X3 + X1*X2*X3 + X1*X2*X3*X4 + X1^2*X2*X3*X4"));
        let ones: Point = (1..=4).map(|i| (VarId(i), BigRational::one())).collect();
        assert_eq!(ideal_function_eval(&p, &ones).unwrap(), BigRational::from_integer(7.into()));
    }

    #[test]
    fn empty_and_zero_labels() {
        assert_eq!(ideal_function(&LabeledPoset::empty()).unwrap(), Polynomial::one());
        let zeros = LabeledPoset::antichain(vec![Label::Zero, Label::Zero]);
        assert_eq!(ideal_function(&zeros).unwrap(), Polynomial::one());
    }

    #[test]
    fn transitive_reduction_and_errors() {
        let p = LabeledPoset::new(vec![x(1), x(2), x(3)], &[(1, 0), (2, 1), (2, 0)]).unwrap();
        assert_eq!(p.covers(), &[(1, 0), (2, 1)]);
        assert_eq!(LabeledPoset::new(vec![x(1), x(2)], &[(1, 0), (0, 1)]).unwrap_err(), Error::PosetCycle);
        assert_eq!(LabeledPoset::new(vec![x(1), x(2)], &[(1, 0), (1, 0)]).unwrap_err(), Error::DuplicateCover(1, 0));
    }

    #[test]
    fn pointed_factor_examples() {
        let (l, rest) = pointed_factor(&LabeledPoset::singleton(x(5))).unwrap();
        assert_eq!((l, rest.len()), (x(5), 0));
        let (l, rest) = pointed_factor(&LabeledPoset::chain(vec![x(1), x(2)])).unwrap();
        assert_eq!(l, x(1));
        assert_eq!(ideal_function(&rest).unwrap(), poly("1 + X2"));
        let (l, rest) = pointed_factor(&section2_example()).unwrap();
        assert_eq!((l, rest.len()), (x(1), 4));
        assert_eq!(pointed_factor(&LabeledPoset::antichain(vec![x(1), x(2)])).unwrap_err(), Error::NotPointed);
    }

    #[test]
    fn truncation() {
        let p = LabeledPoset::chain(vec![x(1), Label::Zero, x(2)]);
        let t = truncate_zeros(&p).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(ideal_function(&t).unwrap(), poly("1 + X1"));
        let q = section2_example();
        assert_eq!(truncate_zeros(&q).unwrap(), q);
    }

    #[test]
    fn insertion_preserves_value() {
        let p = LabeledPoset::chain(vec![x(1), x(2)]);
        let t = RationalExpr::var(VarId(9));
        let q = insert_element(&p, 1, 0, &t).unwrap();
        assert_eq!(q.len(), 3);
        let pt: Point = [
            (VarId(1), BigRational::new(2.into(), 3.into())),
            (VarId(2), BigRational::new((-5).into(), 7.into())),
            (VarId(9), BigRational::new(3.into(), 11.into())),
        ]
        .into();
        assert_eq!(ideal_function_eval(&p, &pt).unwrap(), ideal_function_eval(&q, &pt).unwrap());
        assert_eq!(insert_element(&p, 0, 1, &t).unwrap_err(), Error::InvalidPair(0, 1));
        assert_eq!(insert_element(&p, 1, 0, &RationalExpr::constant(-1)).unwrap_err(), Error::NotInvertible);
        let bad: Point = [(VarId(1), BigRational::one()), (VarId(2), BigRational::one()), (VarId(9), -BigRational::one())].into();
        assert_eq!(ideal_function_eval(&q, &bad), Err(Error::DivisionByZero));
    }

    #[test]
    fn attach_and_relabel() {
        let t = LabeledPoset::singleton(x(2));
        let s = LabeledPoset::singleton(x(1));
        assert_eq!(attach(&t, VarId(2), &[(s.clone(), 0)]).unwrap(), t);
        let a = attach(&t, VarId(2), &[(s.clone(), 1)]).unwrap();
        assert_eq!(ideal_function(&a).unwrap(), poly("1 + X2 + X1*X2"));
        let anti = LabeledPoset::antichain(vec![x(1), x(3)]);
        assert_eq!(attach(&t, VarId(2), &[(anti, 1)]).unwrap_err(), Error::PieceNotPointed);
        let r = relabel(&a, &[(VarId(1), VarId(7))].into());
        assert_eq!(ideal_function(&r).unwrap(), poly("1 + X2 + X2*X7"));
        assert_eq!(relabel(&a, &BTreeMap::new()), a);
    }

    #[test]
    fn dot_round_trip() {
        assert_eq!(LabeledPoset::empty().to_dot(), "digraph P {\n}\n");
        let c = LabeledPoset::chain(vec![x(1), x(2)]);
        assert_eq!(c.to_dot().matches("->").count(), 1);
        let p = section2_example();
        assert_eq!(LabeledPoset::parse_dot(&p.to_dot()).unwrap(), p);
        assert_eq!(LabeledPoset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn opposite_and_isomorphism() {
        let p = section2_example();
        assert_eq!(count_ideals(&p), count_ideals(&p.opposite()));
        let q = LabeledPoset::new(vec![x(1), x(4), x(3), x(2), x(1)], &[(4, 1), (1, 2), (1, 3), (2, 0), (3, 0)]).unwrap();
        assert!(find_poset_isomorphism(&p, &q).is_some());
        assert!(find_poset_isomorphism(&p, &p.opposite()).is_none());
    }
}
