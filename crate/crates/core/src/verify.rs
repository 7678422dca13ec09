//! Verification suites cross-checking the mutation engine against the
//! poset, surface, simplex and web constructions. Each suite is
//! independently runnable and reports one line per assertion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::families::{ascendant_tree, lift3d_poset, qn_maximal_green, qn_quiver, qn_vertices, QnSpec};
use crate::fixtures;
use crate::poly::{Point, Polynomial, RationalExpr, VarId};
use crate::poset::{
    attach, count_ideals, delete_antiideal_for_subquiver, find_poset_isomorphism, ideal_function,
    ideal_function_eval, insert_element, pointed_factor, relabel, truncate_zeros, Label, LabeledPoset,
};
use crate::quiver::{Quiver, VertexId};
use crate::seedtrack::{
    change_initial_seed, compose_triangular, dt_transform, restrict_to_subquiver, search_reddening,
    search_reddening_with, separation_check, Color, PrincipalSeed, SearchConfig, SearchMode, SearchOutcome,
};
use crate::webs::{boundary_measurement, build_web, factor_phi, macmahon, plane_partitions, weng_report, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub millis: u128,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), checks: Vec::new(), millis: 0 }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "[{mark}] {}: {}", self.suite, c.name)?;
            } else {
                writeln!(f, "[{mark}] {}: {} ({})", self.suite, c.name, c.detail)?;
            }
        }
        write!(
            f,
            "{}: {}/{} passed in {} ms",
            self.suite,
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len(),
            self.millis
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Include the expensive cases (e.g. `Q_6`).
    pub slow: bool,
    /// Restrict size-parametrized suites to this `n`.
    pub n: Option<usize>,
}

pub const SUITES: [&str; 12] = [
    "disk",
    "acyclic-example",
    "acyclic",
    "qn",
    "weng",
    "subquiver",
    "triangular",
    "adjacent",
    "invariants",
    "poset",
    "markov",
    "separation",
];

/// Runs one suite by name; `None` for an unknown name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Option<SuiteReport> {
    let start = Instant::now();
    let mut r = match name {
        "disk" => suite_disk(),
        "acyclic-example" => suite_acyclic_example(),
        "acyclic" => suite_acyclic(),
        "qn" => suite_qn(opts),
        "weng" => suite_weng(opts),
        "subquiver" => suite_subquiver(opts),
        "triangular" => suite_triangular(opts),
        "adjacent" => suite_adjacent(opts),
        "invariants" => suite_invariants(opts),
        "poset" => suite_poset(opts),
        "markov" => suite_markov(),
        "separation" => suite_separation(),
        _ => return None,
    };
    r.millis = start.elapsed().as_millis();
    Some(r)
}

fn ok_or_detail<T>(r: Result<T>) -> (Option<T>, String) {
    match r {
        Ok(v) => (Some(v), String::new()),
        Err(e) => (None, e.to_string()),
    }
}

/// Reddening sequence by maximal green search first, then unrestricted.
pub fn find_reddening(q: &Quiver, max_depth: usize) -> Option<Vec<VertexId>> {
    for mode in [SearchMode::MaximalGreen, SearchMode::Reddening] {
        let cfg = SearchConfig { max_depth, mode, node_limit: Some(200_000) };
        if let SearchOutcome::Found(s) = search_reddening_with(q, cfg) {
            return Some(s);
        }
    }
    None
}

fn suite_disk() -> SuiteReport {
    let mut r = SuiteReport::new("disk");
    let q = fixtures::twice_punctured_disk();
    let seq = fixtures::twice_punctured_disk_sequence();
    let mut s = PrincipalSeed::initial(&q);
    let mut green = true;
    for &k in &seq {
        green &= s.color(k) == Ok(Color::Green);
        match s.mutate(k) {
            Ok(t) => s = t,
            Err(e) => {
                r.check("sequence runs", false, e.to_string());
                return r;
            }
        }
    }
    r.check("every mutation is at a green vertex", green, "");
    r.check("endpoint is all red", s.is_all_red(), "");
    let (dt, detail) = ok_or_detail(dt_transform(&q, &seq));
    let want = fixtures::twice_punctured_disk_f2();
    let i2 = q.position_of_var(VarId(2)).unwrap();
    match dt {
        Some(dt) => {
            let f2 = &dt.f[i2];
            r.check("F2 equals the golden polynomial", *f2 == want, format!("{f2}"));
            r.check("F2 has 14 terms", f2.n_terms() == 14, "");
        }
        None => r.check("dt transform", false, detail),
    }
    let (found, detail) = ok_or_detail(simply_labeled_poset_search(&want, 8));
    r.check(
        "no simply-labeled pointed poset with at most 8 elements has F2 as ideal function",
        matches!(found, Some(None)),
        if detail.is_empty() { found.flatten().map(|p| format!("found {p:?}")).unwrap_or_default() } else { detail },
    );
    r
}

/// Searches for a simply-labeled pointed poset with ideal function `f`.
///
/// The full ideal contributes the product of all labels, which is the only
/// term of top degree, so the poset has exactly `deg f` elements with the
/// labels read off that term; the minimum is the lone degree-one term and
/// the number of ideals is the sum of the coefficients. Every poset is
/// isomorphic to a naturally labeled one, so the search runs over
/// transitively closed relation sets on `i < j` for the elements above the
/// minimum, and over all label arrangements.
pub fn simply_labeled_poset_search(f: &Polynomial, max_size: usize) -> Result<Option<LabeledPoset>> {
    let Some((top, c)) = f.leading_term() else { return Ok(None) };
    let size = top.degree() as usize;
    if size == 0 || size > max_size || *c != BigInt::from(1) {
        return Ok(None);
    }
    if f.terms().filter(|(m, _)| m.degree() == top.degree()).count() != 1 {
        return Ok(None);
    }
    let linear: Vec<_> = f.terms().filter(|(m, _)| m.degree() == 1).collect();
    if linear.len() != 1 || *linear[0].1 != BigInt::from(1) {
        return Ok(None);
    }
    let min_var = linear[0].0.exponents()[0].0;
    let mut rest: Vec<VarId> = Vec::new();
    for &(v, e) in top.exponents() {
        let e = if v == min_var { e - 1 } else { e };
        rest.extend(std::iter::repeat_n(v, e as usize));
    }
    if rest.len() != size - 1 {
        return Ok(None);
    }
    let ideals = f.coefficient_sum();
    let m = rest.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut arrangements = Vec::new();
    let mut perm = rest.clone();
    perm.sort();
    loop {
        arrangements.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel: BTreeSet<(usize, usize)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        let closed = rel.iter().all(|&(i, j)| rel.iter().all(|&(j2, k)| j2 != j || rel.contains(&(i, k))));
        if !closed {
            continue;
        }
        // element 0 is the minimum, element i+1 carries rest[i]
        let mut covers: Vec<(usize, usize)> = (1..=m).map(|i| (i, 0)).collect();
        covers.extend(rel.iter().map(|&(i, j)| (j + 1, i + 1)));
        let shape = LabeledPoset::new(vec![Label::Zero; m + 1], &covers)?;
        if BigInt::from(count_ideals(&shape)) != ideals {
            continue;
        }
        for labels in &arrangements {
            let mut ls = vec![Label::Var(min_var)];
            ls.extend(labels.iter().map(|&v| Label::Var(v)));
            let p = shape.with_labels(ls);
            if ideal_function(&p)? == *f {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn suite_acyclic_example() -> SuiteReport {
    let mut r = SuiteReport::new("acyclic-example");
    let q = fixtures::example_acyclic();
    let Some(seq) = search_reddening(&q, 8, SearchMode::Reddening) else {
        r.check("reddening search succeeds", false, "");
        return r;
    };
    r.check("reddening search succeeds", true, format!("{seq:?}"));
    let (dt, detail) = ok_or_detail(dt_transform(&q, &seq));
    let Some(dt) = dt else {
        r.check("dt transform", false, detail);
        return r;
    };
    let p = |s: &str| s.parse::<Polynomial>().unwrap();
    r.check("F1 = 1 + X1 + X1X2", dt.f[0] == p("1 + X1 + X1X2"), dt.f[0].to_string());
    r.check("F2 = 1 + X2", dt.f[1] == p("1 + X2"), dt.f[1].to_string());
    let poset = fixtures::example_acyclic_f3_poset();
    let want = ideal_function(&poset).unwrap();
    r.check("F3 equals the ideal function of the drawn poset", dt.f[2] == want, dt.f[2].to_string());
    r.check("the drawn poset has 13 ideals", count_ideals(&poset) == BigUint::from(13u32), "");
    r
}

/// Connected acyclic quivers on up to four vertices with multiplicities at
/// most two, one per isomorphism class, with a reddening sequence each.
pub fn acyclic_cases() -> Vec<(Quiver, Vec<VertexId>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let total = 3usize.pow(pairs.len() as u32);
        for code in 0..total {
            let mut arrows = Vec::new();
            let mut c = code;
            for &(i, j) in &pairs {
                let m = (c % 3) as i64;
                c /= 3;
                if m > 0 {
                    arrows.push((i, j, m));
                }
            }
            let q = Quiver::from_arrows(n, &arrows).unwrap();
            if !q.is_connected() {
                continue;
            }
            if !seen.insert(canonical_form(&q)) {
                continue;
            }
            let seq = search_reddening(&q, 3 * n, SearchMode::MaximalGreen).expect("acyclic quivers are maximal green");
            out.push((q, seq));
        }
    }
    out
}

fn canonical_form(q: &Quiver) -> Vec<i64> {
    let n = q.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<i64>> = None;
    loop {
        let form: Vec<i64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| q.eps(perm[i], perm[j])).collect();
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn suite_acyclic() -> SuiteReport {
    let mut r = SuiteReport::new("acyclic");
    let cases = acyclic_cases();
    let mut bad = Vec::new();
    let mut vertices = 0;
    for (q, seq) in &cases {
        let dt = dt_transform(q, seq).unwrap();
        for i in 0..q.n() {
            vertices += 1;
            let p = ascendant_tree(q, i).unwrap();
            if ideal_function(&p).unwrap() != dt.f[i] {
                bad.push(format!("{:?} vertex {i}", q.arrows()));
            }
        }
    }
    r.check(
        format!("ascendant tree = DT F-polynomial on {} quivers, {vertices} vertices", cases.len()),
        bad.is_empty(),
        bad.join("; "),
    );
    r
}

fn qn_sizes(opts: &VerifyOptions) -> Vec<usize> {
    match opts.n {
        Some(n) => vec![n],
        None if opts.slow => vec![4, 5, 6],
        None => vec![4, 5],
    }
}

fn suite_qn(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("qn");
    for n in qn_sizes(opts) {
        if n < 3 {
            r.check(format!("n = {n}"), false, "Q_n needs n >= 3");
            continue;
        }
        let q = qn_quiver(n);
        let seq = qn_maximal_green(n);
        let mut s = PrincipalSeed::initial(&q);
        let mut green = true;
        for &k in &seq {
            green &= s.color(k) == Ok(Color::Green);
            s = s.mutate(k).unwrap();
        }
        r.check(format!("Q_{n}: sequence is maximal green"), green && s.is_all_red(), format!("length {}", seq.len()));
        let dt = dt_transform(&q, &seq).unwrap();
        let w = build_web(n);
        let spec = QnSpec::new(n);
        for (i, t) in qn_vertices(n).into_iter().enumerate() {
            let lift = ideal_function(&lift3d_poset(n, t.a, t.b, t.c).unwrap()).unwrap();
            let m = boundary_measurement(&w, &spec.j_set(t), Side::Right).unwrap();
            let phi = factor_phi(&m).map(|x| x.1);
            let box_dims = (t.a as usize + 1, t.b as usize + 1, t.c as usize + 1);
            let pp = plane_partitions(box_dims.0, box_dims.1, box_dims.2).len();
            let counts_ok = dt.f[i].n_terms() == pp
                && BigUint::from(pp) == macmahon(box_dims.0, box_dims.1, box_dims.2)
                && m.n_terms() == pp;
            let ok = phi.as_ref().is_ok_and(|phi| *phi == lift) && dt.f[i] == lift && counts_ok;
            r.check(
                format!("Q_{n} vertex ({t}): F = lift ideal function = Φ, {pp} terms"),
                ok,
                if ok { String::new() } else { format!("F = {}, lift = {lift}", dt.f[i]) },
            );
        }
    }
    r
}

fn suite_weng(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("weng");
    let sizes = match opts.n {
        Some(n) => vec![n],
        None => vec![4, 5],
    };
    for n in sizes {
        match weng_report(n, Side::Right) {
            Ok(rep) => {
                for f in &rep.faces {
                    r.check(
                        format!("Q_{n} face ({}): ∏ N_g^ε = X_f^-1 and Φ_f = F_f", f.face),
                        f.monomial_identity && f.phi_is_f,
                        "",
                    );
                }
            }
            Err(e) => r.check(format!("Q_{n}"), false, e.to_string()),
        }
        let flipped = weng_report(n, Side::Left).map(|x| x.passed()).unwrap_or(false);
        r.check(format!("Q_{n}: flipped domination side fails"), !flipped, "");
    }
    r
}

fn random_acyclic(rng: &mut ChaCha8Rng, n: usize, max_mult: i64) -> Quiver {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let m = rng.gen_range(0..=max_mult);
            if m > 0 {
                arrows.push((order[i], order[j], m));
            }
        }
    }
    Quiver::from_arrows(n, &arrows).unwrap()
}

/// A random acyclic quiver, mutated a few times when `mix` is set.
fn random_quiver(rng: &mut ChaCha8Rng, n: usize, mix: bool) -> Quiver {
    let mut q = random_acyclic(rng, n, 1);
    if mix {
        for _ in 0..rng.gen_range(1..=3) {
            q = q.mutate(rng.gen_range(0..n)).unwrap();
        }
    }
    q
}

fn suite_subquiver(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("subquiver");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut done, mut attempts, mut with_posets) = (0, 0, 0);
    let mut bad = Vec::new();
    while done < 50 && attempts < 500 {
        attempts += 1;
        let n = rng.gen_range(2..=5);
        let q = random_quiver(&mut rng, n, attempts % 2 == 0);
        let keep: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        if keep.is_empty() || keep.len() == n {
            continue;
        }
        let sub = q.full_subquiver(&keep).unwrap();
        let (Some(s1), Some(s2)) = (find_reddening(&q, 12), find_reddening(&sub, 12)) else { continue };
        done += 1;
        let f = dt_transform(&q, &s1).unwrap().f;
        let direct = dt_transform(&sub, &s2).unwrap().f;
        let restricted = restrict_to_subquiver(&f, &q, &keep);
        if restricted != direct {
            bad.push(format!("{:?} on {keep:?}", q.arrows()));
        }
        if q.is_acyclic() {
            with_posets += 1;
            let gone: BTreeSet<VarId> = (0..n).filter(|i| !keep.contains(i)).map(|i| q.var(i)).collect();
            for (k, &i) in keep.iter().enumerate() {
                let p = delete_antiideal_for_subquiver(&ascendant_tree(&q, i).unwrap(), &gone).unwrap();
                if ideal_function(&p).unwrap() != direct[k] {
                    bad.push(format!("poset {:?} vertex {i} on {keep:?}", q.arrows()));
                }
            }
        }
    }
    r.check(
        format!("{done} sampled pairs: restriction = DT of subquiver ({with_posets} also via posets)"),
        done == 50 && bad.is_empty(),
        bad.join("; "),
    );
    r
}

fn suite_triangular(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("triangular");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x7);
    let (mut done, mut attempts, mut with_posets) = (0, 0, 0);
    let mut bad = Vec::new();
    while done < 30 && attempts < 300 {
        attempts += 1;
        let acyclic = attempts % 2 == 1;
        let (n1, n2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let q1 = random_quiver(&mut rng, n1, !acyclic);
        let q2 = random_quiver(&mut rng, n2, !acyclic);
        let q2 = q2.with_vars((0..n2).map(|i| VarId((n1 + i) as u32)).collect());
        let delta: Vec<Vec<i64>> = (0..n1).map(|_| (0..n2).map(|_| rng.gen_range(0..=2)).collect()).collect();
        let (Some(s1), Some(s2)) = (find_reddening(&q1, 10), find_reddening(&q2, 10)) else { continue };
        done += 1;
        let ext = Quiver::triangular_extension(&q1, &q2, &delta).unwrap();
        let mut seq = s1.clone();
        seq.extend(s2.iter().map(|k| k + n1));
        let f1 = dt_transform(&q1, &s1).unwrap().f;
        let f2 = dt_transform(&q2, &s2).unwrap().f;
        let composed = compose_triangular(&f1, &f2, &q1, &q2, &delta).unwrap();
        match dt_transform(&ext, &seq) {
            Ok(d) if d.f == composed => {}
            Ok(_) => bad.push(format!("{:?} + {:?} along {delta:?}", q1.arrows(), q2.arrows())),
            Err(e) => bad.push(format!("concatenated sequence: {e}")),
        }
        if q1.is_acyclic() && q2.is_acyclic() {
            with_posets += 1;
            for j in 0..n2 {
                let mut p = ascendant_tree(&q2, j).unwrap();
                for l in 0..n2 {
                    let pieces: Vec<(LabeledPoset, usize)> = (0..n1)
                        .filter(|&k| delta[k][l] > 0)
                        .map(|k| (ascendant_tree(&q1, k).unwrap(), delta[k][l] as usize))
                        .collect();
                    p = attach(&p, q2.var(l), &pieces).unwrap();
                }
                if ideal_function(&p).unwrap() != composed[n1 + j] {
                    bad.push(format!("attached poset at {j}"));
                }
            }
        }
    }
    r.check(
        format!("{done} sampled extensions: composed F = DT along concatenated sequence ({with_posets} via attach)"),
        done == 30 && bad.is_empty(),
        bad.join("; "),
    );
    // the hexagon glued to a 3-cycle
    let q = fixtures::hexagon_with_triangle();
    let hex = fixtures::positions(&q, &[0, 1, 2, 3, 4, 5, 6]);
    let tri = fixtures::positions(&q, &[7, 8, 9]);
    let q1 = q.full_subquiver(&tri.iter().copied().collect()).unwrap();
    let q2 = q.full_subquiver(&hex.iter().copied().collect()).unwrap();
    let delta: Vec<Vec<i64>> = tri.iter().map(|&k| hex.iter().map(|&l| q.eps(k, l)).collect()).collect();
    let s1 = find_reddening(&q1, 8).unwrap();
    let f1 = dt_transform(&q1, &s1).unwrap().f;
    // the hexagon is a full subquiver of Q_6
    let q6 = qn_quiver(6);
    let f6 = dt_transform(&q6, &qn_maximal_green(6)).unwrap().f;
    let map = fixtures::hexagon_in_q6();
    let keep: BTreeSet<usize> = map.keys().map(|&t| crate::families::qn_index(6, t).unwrap()).collect();
    let f6 = restrict_to_subquiver(&f6, &q6, &keep);
    let rename: BTreeMap<VarId, VarId> =
        keep.iter().map(|&i| (q6.var(i), VarId(map[&qn_vertices(6)[i]]))).collect();
    let mut f2 = vec![Polynomial::zero(); 7];
    for (k, &i) in keep.iter().enumerate() {
        let label = map[&qn_vertices(6)[i]];
        f2[q2.position_of_var(VarId(label)).unwrap()] = f6[k].rename(|v| rename[&v]);
    }
    let composed = compose_triangular(&f1, &f2, &q1, &q2, &delta).unwrap();
    let p = fixtures::hexagon_with_triangle_poset();
    let i0 = 3 + q2.position_of_var(VarId(0)).unwrap();
    r.check(
        "hexagon with triangle: vertex 0 poset = composed F",
        ideal_function(&p).unwrap() == composed[i0],
        format!("{} ideals", count_ideals(&p)),
    );
    r
}

fn suite_adjacent(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("adjacent");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x8);
    let (mut done, mut attempts) = (0, 0);
    let mut bad = Vec::new();
    while done < 50 && attempts < 500 {
        attempts += 1;
        let n = rng.gen_range(1..=4);
        let q = random_quiver(&mut rng, n, attempts % 2 == 0);
        let k = rng.gen_range(0..n);
        let mq = q.mutate(k).unwrap();
        let (Some(s), Some(sm)) = (find_reddening(&q, 12), find_reddening(&mq, 12)) else { continue };
        done += 1;
        let f = dt_transform(&q, &s).unwrap().f;
        let direct = dt_transform(&mq, &sm).unwrap().f;
        match change_initial_seed(&f, &q, k) {
            Ok(g) if g == direct => {}
            Ok(_) => bad.push(format!("{:?} at {k}", q.arrows())),
            Err(e) => bad.push(e.to_string()),
        }
    }
    r.check(
        format!("{done} sampled (Q, k): transferred F = DT of μ_k(Q)"),
        done == 50 && bad.is_empty(),
        bad.join("; "),
    );
    r
}

fn suite_invariants(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("invariants");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9);
    let mut bad = Vec::new();
    let mut steps = 0;
    for walk in 0..500 {
        let n = rng.gen_range(1..=5);
        // random oriented trees stay mutation finite, so F stays small
        let mut eps = vec![vec![0i64; n]; n];
        for i in 1..n {
            let j = rng.gen_range(0..i);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            eps[i][j] = e;
            eps[j][i] = -e;
        }
        if n == 2 && rng.gen_bool(0.3) {
            eps[0][1] *= 2;
            eps[1][0] *= 2;
        }
        let q = Quiver::from_matrix(eps, n).unwrap();
        let mut s = PrincipalSeed::initial(&q);
        let len = rng.gen_range(0..=10);
        let mut last = usize::MAX;
        for _ in 0..len {
            let mut k = rng.gen_range(0..n);
            if k == last && n > 1 {
                k = (k + 1) % n;
            }
            last = k;
            steps += 1;
            let next = match s.mutate(k) {
                Ok(t) => t,
                Err(e) => {
                    bad.push(format!("walk {walk}: {e}"));
                    break;
                }
            };
            if let Err(e) = next.check_invariants(None) {
                bad.push(format!("walk {walk}: {e}"));
            }
            match next.mutate(k) {
                Ok(back) if back.f() == s.f() && back.framed() == s.framed() => {}
                _ => bad.push(format!("walk {walk}: mutation at {k} is not an involution")),
            }
            s = next;
        }
    }
    r.check(
        format!("500 random walks, {steps} mutations: sign coherence, det C = ±1, gᵀC = id, F positive with constant 1, involution"),
        bad.is_empty(),
        bad.join("; "),
    );
    r
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize, vars: u32, zero_p: f64) -> LabeledPoset {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.3) {
                rel.push((j, i));
            }
        }
    }
    let labels = (0..n)
        .map(|_| if rng.gen_bool(zero_p) { Label::Zero } else { Label::Var(VarId(rng.gen_range(1..=vars))) })
        .collect();
    LabeledPoset::new(labels, &rel).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, vars: u32) -> Point {
    (1..=vars)
        .map(|v| (VarId(v), BigRational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=5).into())))
        .collect()
}

fn suite_poset(opts: &VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new("poset");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xa);
    let (mut pointed_bad, mut trunc_bad, mut insert_bad, mut opp_bad) = (0, 0, 0, 0);
    let mut inserted = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let p = random_poset(&mut rng, n, 4, 0.2);
        // pointed factorization on the poset with a fresh minimum
        let mut labels = vec![Label::Var(VarId(5))];
        labels.extend(p.labels().iter().cloned());
        let mut rel: Vec<(usize, usize)> = p.covers().iter().map(|&(u, l)| (u + 1, l + 1)).collect();
        rel.extend((1..=n).map(|i| (i, 0)));
        let pp = LabeledPoset::new(labels, &rel).unwrap();
        match pointed_factor(&pp) {
            Ok((Label::Var(v), rest)) => {
                let lhs = ideal_function(&pp).unwrap();
                let rhs = &Polynomial::one() + &(&Polynomial::var(v) * &ideal_function(&rest).unwrap());
                pointed_bad += usize::from(lhs != rhs);
            }
            _ => pointed_bad += 1,
        }
        match truncate_zeros(&p) {
            Ok(t) => trunc_bad += usize::from(ideal_function(&t).unwrap() != ideal_function(&p).unwrap()),
            Err(_) => trunc_bad += 1,
        }
        opp_bad += usize::from(count_ideals(&p) != count_ideals(&p.opposite()));
        // insertion: labels must be invertible, so use the zero-free version
        let q = random_poset(&mut rng, n, 4, 0.0);
        let comparable: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| q.less(j, i)).collect();
        if let Some(&(i, j)) = comparable.choose(&mut rng) {
            let v = VarId(rng.gen_range(1..=4));
            let w = VarId(rng.gen_range(1..=4));
            let l0 = RationalExpr::new(&Polynomial::var(v) + &Polynomial::constant(1), &Polynomial::var(w) + &Polynomial::constant(2))
                .unwrap();
            match insert_element(&q, i, j, &l0) {
                Ok(q2) => {
                    inserted += 1;
                    for _ in 0..20 {
                        let pt = random_point(&mut rng, 4);
                        if ideal_function_eval(&q, &pt).unwrap() != ideal_function_eval(&q2, &pt).unwrap() {
                            insert_bad += 1;
                        }
                    }
                }
                Err(_) => insert_bad += 1,
            }
        }
    }
    r.check("pointed factorization F = 1 + L_min F(P ∖ min) on 100 posets", pointed_bad == 0, format!("{pointed_bad} violations"));
    r.check("zero truncation keeps the ideal function on 100 posets", trunc_bad == 0, format!("{trunc_bad} violations"));
    r.check(
        format!("insertion keeps the ideal function at 20 rational points on {inserted} posets"),
        insert_bad == 0,
        format!("{insert_bad} violations"),
    );
    r.check("opposite poset has the same number of ideals", opp_bad == 0, format!("{opp_bad} violations"));
    r
}

fn suite_markov() -> SuiteReport {
    let mut r = SuiteReport::new("markov");
    let q = fixtures::markov();
    let found = search_reddening(&q, 12, SearchMode::Reddening);
    r.check("no reddening sequence of length at most 12 (bounded evidence)", found.is_none(), "");
    let (t, fold) = fixtures::four_punctured_sphere();
    let cover = crate::families::quiver_from_triangulation(&t).unwrap();
    let a = *fold.iter().find(|(_, &m)| m == 1).unwrap().0;
    let p = crate::families::surface_arc_poset(&t, a).unwrap();
    let map: BTreeMap<VarId, VarId> = fold.iter().map(|(&k, &v)| (VarId(k), VarId(v))).collect();
    let folded = relabel(&p, &map);
    r.check(
        "folded cover poset is the Markov poset",
        find_poset_isomorphism(&folded, &fixtures::markov_folded_poset()).is_some(),
        "",
    );
    let cfg = SearchConfig { max_depth: 12, mode: SearchMode::MaximalGreen, node_limit: Some(5_000_000) };
    let dt = match search_reddening_with(&cover, cfg) {
        SearchOutcome::Found(s) => dt_transform(&cover, &s).ok(),
        _ => None,
    };
    let i = cover.position_of_var(VarId(a)).unwrap();
    r.check(
        "cover poset ideal function = DT F-polynomial of the cover",
        dt.is_some_and(|d| d.f[i] == ideal_function(&p).unwrap()),
        "",
    );
    r
}

fn suite_separation() -> SuiteReport {
    let mut r = SuiteReport::new("separation");
    let a2 = Quiver::from_arrows(2, &[(0, 1, 1)]).unwrap();
    let pent = separation_check(&a2, &[0, 1, 0, 1, 0]).map(|x| x.holds).unwrap_or(false);
    r.check("A2 pentagon", pent, "");
    let cases = acyclic_cases();
    let bad: Vec<String> = cases
        .iter()
        .filter(|(q, seq)| !separation_check(q, seq).map(|x| x.holds).unwrap_or(false))
        .map(|(q, _)| format!("{:?}", q.arrows()))
        .collect();
    r.check(format!("{} reddening sequences of acyclic quivers", cases.len()), bad.is_empty(), bad.join("; "));
    r
}
