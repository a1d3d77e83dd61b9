//! Combinatorics of the symplectic PBW locus attached to a subset
//! `i = {i_1 < ... < i_t}` of `[n-1]`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Mutex;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{evaluate, PermutationA, WeylElement, WeylType, WeylWord};
use crate::error::{Error, Result};
use crate::linalg::{primitive_integer, q, Matrix, Q};
use crate::lp::{feasible, strictly_feasible};
use crate::rep::{dual, DimVector, Representation};
use crate::symdegen::{EpsilonRep, SymmetricType};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbwSubset {
    n: usize,
    i: Vec<usize>,
}

impl PbwSubset {
    pub fn new(n: usize, mut i: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be at least 1".into()));
        }
        i.sort_unstable();
        let dup = i.windows(2).any(|w| w[0] == w[1]);
        if dup || i.iter().any(|&x| x == 0 || x >= n) {
            return Err(Error::InvalidInput(format!(
                "{i:?} is not a subset of [1, {}]",
                n - 1
            )));
        }
        Ok(PbwSubset { n, i })
    }

    /// Parses a comma-separated list; the empty string is the empty subset.
    pub fn parse(n: usize, csv: &str) -> Result<Self> {
        let i = csv
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad subset entry {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, i)
    }

    /// All `2^{n-1}` subsets, ordered by bitmask.
    pub fn all(n: usize) -> Vec<PbwSubset> {
        let k = n.saturating_sub(1);
        (0u32..1 << k)
            .map(|mask| PbwSubset {
                n,
                i: (1..=k).filter(|b| mask >> (b - 1) & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.i.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.i
    }

    pub fn contains(&self, j: usize) -> bool {
        self.i.binary_search(&j).is_ok()
    }

    /// `i' = {i_1, ..., i_t, 2n-1-i_t, ..., 2n-1-i_1}`.
    pub fn i_prime(&self) -> Vec<usize> {
        let mut out = self.i.clone();
        out.extend(self.i.iter().rev().map(|&x| 2 * self.n - 1 - x));
        out
    }
}

impl fmt::Display for PbwSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.i.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `M^i`, `M^i ⊕ ∇M^i` on `2n-1` vertices, and `e = (1, ..., 2n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwModule {
    pub m_i: Representation,
    pub total: EpsilonRep,
    pub e: DimVector,
}

pub fn build_mi(p: &PbwSubset) -> PbwModule {
    let n = p.n;
    let v = 2 * n - 1;
    let mut m = Representation::zero(v);
    let proj = |k: usize| crate::rep::Segment::projective(k, v);
    m.add(proj(1), (n - p.t()) as u32);
    for &ik in &p.i {
        m.add(proj(2 * n - ik), 1);
        m.add(proj(ik + 1), 1);
    }
    let total = m.direct_sum(&dual(&m)).expect("same quiver");
    let sym = SymmetricType::new(v, -1).expect("v >= 1");
    PbwModule {
        total: EpsilonRep::new(total, sym).expect("M ⊕ ∇M is symplectic"),
        m_i: m,
        e: DimVector((1..=v as u32).collect()),
    }
}

/// `σ_i : [n] -> [n+t]`, the ordered complement of `{i_k + k}`.
pub fn sigma_i_map(p: &PbwSubset) -> Vec<usize> {
    let removed: HashSet<usize> = p.i.iter().enumerate().map(|(k, &x)| x + k + 1).collect();
    (1..=p.n + p.t()).filter(|x| !removed.contains(x)).collect()
}

/// `Ψ`, on weights written in fundamental-weight coordinates.
pub fn psi(p: &PbwSubset, lambda: &[i64]) -> Result<Vec<i64>> {
    if lambda.len() != p.n {
        return Err(Error::InvalidInput(format!("expected {} coefficients", p.n)));
    }
    let mut out = vec![0; p.n + p.t()];
    for (j, &s) in sigma_i_map(p).iter().enumerate() {
        out[s - 1] = lambda[j];
    }
    Ok(out)
}

/// `ℓ_1 < ... < ℓ_{2n}`, the ordered complement of `{i'_k + 1}` in `[2n+2t]`.
pub fn ell(p: &PbwSubset) -> Vec<usize> {
    let removed: HashSet<usize> = p.i_prime().iter().map(|&x| x + 1).collect();
    (1..=2 * (p.n + p.t()))
        .filter(|x| !removed.contains(x))
        .collect()
}

/// `h_k = ℓ_k - k`.
pub fn h(p: &PbwSubset) -> Vec<usize> {
    ell(p).iter().enumerate().map(|(k, &l)| l - (k + 1)).collect()
}

/// `Θ : ϖ_k -> ϖ_{ℓ_k}` for `sl_{2n} -> sl_{2(n+t)}`.
pub fn theta(p: &PbwSubset, lambda: &[i64]) -> Result<Vec<i64>> {
    let len = 2 * p.n - 1;
    if lambda.len() != len {
        return Err(Error::InvalidInput(format!("expected {len} coefficients")));
    }
    let mut out = vec![0; 2 * (p.n + p.t()) - 1];
    for (k, &l) in ell(p).iter().take(len).enumerate() {
        out[l - 1] = lambda[k];
    }
    Ok(out)
}

/// `v_k = (s_k ... s_{hi+k-1}) ... (s_k ... s_{lo+k})` with `lo = i_{k-1}`,
/// `hi = i_k`.
fn v_factor(k: usize, lo: usize, hi: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut j = hi + k - 1;
    while j >= lo + k && j >= 1 {
        out.extend(k..=j);
        j -= 1;
    }
    out
}

pub fn w_i_word(p: &PbwSubset) -> WeylWord {
    let (n, t) = (p.n, p.t());
    let m = n + t;
    let mut letters = Vec::new();
    for j in (t + 1..=m).rev() {
        letters.extend(j..=m);
    }
    for k in (1..=t).rev() {
        let lo = if k == 1 { 0 } else { p.i[k - 2] };
        letters.extend(v_factor(k, lo, p.i[k - 1]));
    }
    WeylWord::new(WeylType::C, m, letters).expect("letters within C_{n+t}")
}

pub fn u_iprime_word(p: &PbwSubset) -> WeylWord {
    let (n, t) = (p.n, p.t());
    let ip = p.i_prime();
    let idx = |k: usize| -> usize {
        match k {
            0 => 0,
            k if k == 2 * t + 1 => 2 * n - 1,
            k => ip[k - 1],
        }
    };
    let mut letters = Vec::new();
    for k in (1..=2 * t + 1).rev() {
        letters.extend(v_factor(k, idx(k - 1), idx(k)));
    }
    WeylWord::new(WeylType::A, 2 * (n + t), letters).expect("letters within A_{2n+2t-1}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaClause {
    /// `ℓ_j = ℓ_{j-1} + 1`
    One,
    /// `ℓ_j = ℓ_{j-1} + 2`
    Two,
    /// `j = 1` or a gap of three or more; no prediction.
    NoClause,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaStatus {
    Agree,
    AgreeInverse,
    Disagree,
    OutOfRange,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaUiRow {
    pub j: usize,
    pub ell_j: usize,
    pub h_j: usize,
    pub clause: LemmaClause,
    /// `(position, predicted value)` pairs.
    pub predicted: Vec<(usize, i64)>,
    /// `u(position)` for each predicted pair.
    pub under_u: Vec<usize>,
    /// `u^{-1}(position)` for each predicted pair.
    pub under_u_inverse: Vec<usize>,
    pub status: LemmaStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaUiReport {
    pub subset: PbwSubset,
    pub ell: Vec<usize>,
    pub h: Vec<usize>,
    pub u_one_line: Vec<usize>,
    pub rows: Vec<LemmaUiRow>,
}

impl LemmaUiReport {
    pub fn count(&self, status: LemmaStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    /// Whether some clause-(2) prediction falls outside `[1, 2n+2t]`.
    pub fn has_range_anomaly(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.clause == LemmaClause::Two && r.status == LemmaStatus::OutOfRange)
    }
}

/// Evaluates `u_{i'}` and compares it, index by index, with the two predicted
/// value patterns. Nothing is asserted.
pub fn check_lemma_ui(p: &PbwSubset) -> LemmaUiReport {
    let (n, t) = (p.n, p.t());
    let size = 2 * (n + t);
    let ells = ell(p);
    let hs = h(p);
    let u = match evaluate(&u_iprime_word(p)) {
        WeylElement::A(perm) => perm,
        WeylElement::C(_) => unreachable!("type A word"),
    };
    let uinv: PermutationA = u.inverse();
    let mut rows = Vec::new();
    for j in 1..=2 * n {
        let (l, hj) = (ells[j - 1], hs[j - 1] as i64);
        let gap = if j == 1 { 0 } else { l - ells[j - 2] };
        let (clause, predicted) = match gap {
            1 => (LemmaClause::One, vec![(l, hj + (size + 1 - j) as i64)]),
            2 => (LemmaClause::Two, vec![(l - 1, hj), (l, hj + size as i64)]),
            _ => (LemmaClause::NoClause, Vec::new()),
        };
        let under_u: Vec<usize> = predicted.iter().map(|&(x, _)| u.apply(x)).collect();
        let under_u_inverse: Vec<usize> = predicted.iter().map(|&(x, _)| uinv.apply(x)).collect();
        let holds = |vals: &[usize]| {
            predicted
                .iter()
                .zip(vals)
                .all(|(&(_, want), &got)| want == got as i64)
        };
        let status = if predicted.is_empty() {
            LemmaStatus::NotApplicable
        } else if predicted.iter().any(|&(_, v)| v < 1 || v > size as i64) {
            LemmaStatus::OutOfRange
        } else if holds(&under_u) {
            LemmaStatus::Agree
        } else if holds(&under_u_inverse) {
            LemmaStatus::AgreeInverse
        } else {
            LemmaStatus::Disagree
        };
        rows.push(LemmaUiRow {
            j,
            ell_j: l,
            h_j: hs[j - 1],
            clause,
            predicted,
            under_u,
            under_u_inverse,
            status,
        });
    }
    LemmaUiReport {
        subset: p.clone(),
        ell: ells,
        h: hs,
        u_one_line: u.images().to_vec(),
        rows,
    }
}

/// A positive root of `C_n`, `α_{a,x}` with `a <= x <= 2n-a` in the order
/// `1 < ... < n < \bar{n-1} < ... < \bar 1` (`\bar m` sits at `2n-m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CRoot {
    pub a: usize,
    pub x: usize,
}

impl CRoot {
    /// Coordinates in the basis `e_1, ..., e_n`.
    pub fn eps(self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        v[self.a - 1] += 1;
        if self.x < n {
            v[self.x] -= 1;
        } else {
            v[2 * n - self.x - 1] += 1;
        }
        v
    }

    pub fn height(self) -> usize {
        self.x + 1 - self.a
    }

    pub fn label(self, n: usize) -> String {
        if self.x <= n {
            format!("{},{}", self.a, self.x)
        } else {
            format!("{},~{}", self.a, 2 * n - self.x)
        }
    }
}

pub fn positive_roots(n: usize) -> Vec<CRoot> {
    (1..=n)
        .flat_map(|a| (a..=2 * n - a).map(move |x| CRoot { a, x }))
        .collect()
}

/// A function on positive roots, indexed like [`positive_roots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CRootVector {
    pub n: usize,
    pub values: Vec<Q>,
}

impl CRootVector {
    pub fn zero(n: usize) -> Self {
        CRootVector {
            n,
            values: vec![Q::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(CRoot) -> Q) -> Self {
        CRootVector {
            n,
            values: positive_roots(n).into_iter().map(f).collect(),
        }
    }

    pub fn height(n: usize) -> Self {
        Self::from_fn(n, |r| q(r.height() as i64))
    }

    pub fn get(&self, r: CRoot) -> &Q {
        &self.values[root_index(self.n, r)]
    }

    pub fn set(&mut self, r: CRoot, v: Q) {
        let k = root_index(self.n, r);
        self.values[k] = v;
    }

    /// `{"label": "num/den" or "num"}` in root order.
    pub fn to_json(&self) -> serde_json::Value {
        let roots = positive_roots(self.n);
        let entries: Vec<serde_json::Value> = roots
            .iter()
            .zip(&self.values)
            .map(|(r, v)| serde_json::json!({ "a": r.a, "x": r.x, "root": r.label(self.n), "d": v.to_string() }))
            .collect();
        serde_json::json!({ "n": self.n, "values": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(format!("root vector: {m}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let mut out = CRootVector::zero(n);
        let mut seen = HashSet::new();
        for e in v["values"].as_array().ok_or_else(|| bad("missing values"))? {
            let a = e["a"].as_u64().ok_or_else(|| bad("missing a"))? as usize;
            let x = e["x"].as_u64().ok_or_else(|| bad("missing x"))? as usize;
            if a == 0 || a > n || x < a || x > 2 * n - a {
                return Err(bad(&format!("no root ({a},{x})")));
            }
            let d = match &e["d"] {
                serde_json::Value::String(s) => s.parse::<Q>().map_err(|_| bad("bad value"))?,
                serde_json::Value::Number(num) => {
                    q(num.as_i64().ok_or_else(|| bad("non-integer number; use \"p/q\""))?)
                }
                _ => return Err(bad("bad value")),
            };
            seen.insert((a, x));
            out.set(CRoot { a, x }, d);
        }
        if seen.len() != n * n {
            return Err(bad("incomplete indexing"));
        }
        Ok(out)
    }
}

fn root_index(n: usize, r: CRoot) -> usize {
    // Roots with start b < a number Σ_{b<a} (2n-2b+1).
    let before: usize = (1..r.a).map(|b| 2 * n - 2 * b + 1).sum();
    before + (r.x - r.a)
}

fn root_of_eps(n: usize) -> HashMap<Vec<i64>, CRoot> {
    positive_roots(n).into_iter().map(|r| (r.eps(n), r)).collect()
}

/// One defining condition of the face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceConstraint {
    /// Bullet number, 1 to 6, in the order of the definition.
    pub bullet: u8,
    /// `Σ lhs ≥ Σ rhs` when true, `Σ lhs = Σ rhs` otherwise.
    pub inequality: bool,
    pub lhs: Vec<CRoot>,
    pub rhs: Vec<CRoot>,
}

impl FaceConstraint {
    fn slack(&self, d: &CRootVector) -> Q {
        let l: Q = self.lhs.iter().map(|&r| d.get(r).clone()).sum();
        let r: Q = self.rhs.iter().map(|&r| d.get(r).clone()).sum();
        l - r
    }

    pub fn describe(&self, n: usize) -> String {
        let side = |v: &[CRoot]| {
            v.iter()
                .map(|r| format!("d({})", r.label(n)))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        let op = if self.inequality { ">=" } else { "=" };
        format!("[{}] {} {op} {}", self.bullet, side(&self.lhs), side(&self.rhs))
    }
}

/// The defining equalities and inequalities of the face `F^i`.
pub fn face_constraints(p: &PbwSubset) -> Vec<FaceConstraint> {
    let n = p.n;
    let lookup = root_of_eps(n);
    let root = |v: &[i64]| lookup.get(v).copied();
    let add = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(a, b)| a + b).collect() };
    let sub = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(a, b)| a - b).collect() };
    let e = |k: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        v[k - 1] = 1;
        v
    };
    let bar = |m: usize| 2 * n - m;

    let mut out = Vec::new();
    let mut special: HashSet<(CRoot, CRoot)> = HashSet::new();
    let mut push_ge = |bullet: u8, b1: CRoot, b2: CRoot, g: CRoot, out: &mut Vec<FaceConstraint>| {
        special.insert((b1.min(b2), b1.max(b2)));
        out.push(FaceConstraint {
            bullet,
            inequality: true,
            lhs: vec![b1, b2],
            rhs: vec![g],
        });
    };

    for &j in &p.i {
        for a in 1..=j {
            let b1 = CRoot { a, x: j };
            for x in j + 1..=bar(a) {
                let g = CRoot { a, x };
                let b2 = root(&sub(&g.eps(n), &b1.eps(n))).expect("γ − α_{i,j} is a root");
                push_ge(1, b1, b2, g, &mut out);
            }
            for l in a..=j + 1 {
                let b2 = root(&add(&e(l), &e(j + 1))).expect("e_l + e_{j+1} is a root");
                let g = root(&add(&e(a), &e(l))).expect("e_i + e_l is a root");
                push_ge(2, b1, b2, g, &mut out);
            }
        }
    }

    let roots = positive_roots(n);
    for (k, &b1) in roots.iter().enumerate() {
        for &b2 in &roots[k..] {
            let Some(g) = root(&add(&b1.eps(n), &b2.eps(n))) else {
                continue;
            };
            if special.contains(&(b1.min(b2), b1.max(b2))) {
                continue;
            }
            out.push(FaceConstraint {
                bullet: 3,
                inequality: false,
                lhs: vec![b1, b2],
                rhs: vec![g],
            });
        }
    }

    let r = |a: usize, x: usize| CRoot { a, x };
    let eq = |bullet: u8, lhs: Vec<CRoot>, rhs: Vec<CRoot>| FaceConstraint {
        bullet,
        inequality: false,
        lhs,
        rhs,
    };
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j..=n {
                for l in k + 1..=n {
                    out.push(eq(4, vec![r(i, k), r(j, l)], vec![r(i, l), r(j, k)]));
                }
                for l in j..=n {
                    out.push(eq(5, vec![r(i, bar(k)), r(j, l)], vec![r(i, l), r(j, bar(k))]));
                }
            }
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let first = vec![r(i, bar(j)), r(k, bar(l))];
                    out.push(eq(6, first.clone(), vec![r(i, bar(k)), r(j, bar(l))]));
                    out.push(eq(6, first, vec![r(i, bar(l)), r(j, bar(k))]));
                }
            }
        }
    }
    out
}

fn constraint_row(n: usize, c: &FaceConstraint) -> Vec<Q> {
    let mut v = vec![Q::zero(); n * n];
    for &r in &c.lhs {
        v[root_index(n, r)] += Q::one();
    }
    for &r in &c.rhs {
        v[root_index(n, r)] -= Q::one();
    }
    v
}

/// The equality subspace as a basis matrix, plus the inequality rows.
fn face_system(p: &PbwSubset, cons: &[FaceConstraint]) -> (Matrix, Vec<Vec<Q>>) {
    let n = p.n;
    let eqs: Vec<Vec<Q>> = cons.iter().filter(|c| !c.inequality).map(|c| constraint_row(n, c)).collect();
    let e = Matrix {
        rows: eqs.len(),
        cols: n * n,
        data: eqs,
    };
    let ineqs = cons.iter().filter(|c| c.inequality).map(|c| constraint_row(n, c)).collect();
    (e.nullspace(), ineqs)
}

/// Positions (in [`face_constraints`] order) of the inequalities that hold
/// with equality on all of `F^i`. They are forced by the equalities, so the
/// relative interior cannot be strict on them.
pub fn implicit_equalities(p: &PbwSubset) -> Vec<usize> {
    static CACHE: Mutex<BTreeMap<PbwSubset, Vec<usize>>> = Mutex::new(BTreeMap::new());
    if let Some(v) = CACHE.lock().expect("cache lock").get(p) {
        return v.clone();
    }
    let v = compute_implicit_equalities(p);
    CACHE.lock().expect("cache lock").insert(p.clone(), v.clone());
    v
}

fn compute_implicit_equalities(p: &PbwSubset) -> Vec<usize> {
    let cons = face_constraints(p);
    let (basis, ineqs) = face_system(p, &cons);
    let positions: Vec<usize> = (0..cons.len()).filter(|&k| cons[k].inequality).collect();
    let rows: Vec<Vec<Q>> = ineqs
        .iter()
        .map(|r| {
            let m = Matrix {
                rows: 1,
                cols: r.len(),
                data: vec![r.clone()],
            };
            m.mul(&basis).data.remove(0)
        })
        .collect();
    let g = Matrix {
        rows: rows.len(),
        cols: basis.cols,
        data: rows,
    };
    if g.rows == 0 || strictly_feasible(&g).is_some() {
        return Vec::new();
    }
    // Repeatedly look for y with G y >= 0 and Σ_{k ∈ open} (G y)_k >= 1;
    // every k with positive slack is free. When none exists, the rest is forced.
    let mut open: Vec<usize> = (0..g.rows).collect();
    loop {
        let mut sum = vec![Q::zero(); g.cols];
        for &k in &open {
            for (acc, v) in sum.iter_mut().zip(&g.data[k]) {
                *acc += v;
            }
        }
        let mut data = g.data.clone();
        data.push(sum);
        let mut rhs = vec![Q::zero(); g.rows];
        rhs.push(Q::one());
        let sys = Matrix {
            rows: g.rows + 1,
            cols: g.cols,
            data,
        };
        let Some(y) = feasible(&sys, &rhs) else {
            break;
        };
        let slack = g.apply(&y);
        open.retain(|&k| slack[k].is_zero());
        if open.is_empty() {
            break;
        }
    }
    open.into_iter().map(|k| positions[k]).collect()
}

/// Violated constraints. Strict mode asks for `>` on every inequality that
/// is not an implicit equality, i.e. membership in the relative interior.
pub fn dynkin_face_violations(p: &PbwSubset, d: &CRootVector, strict: bool) -> Result<Vec<FaceConstraint>> {
    if d.n != p.n {
        return Err(Error::InvalidInput(format!(
            "root vector for C_{} against subset of [{}]",
            d.n,
            p.n.saturating_sub(1)
        )));
    }
    let forced: HashSet<usize> = if strict {
        implicit_equalities(p).into_iter().collect()
    } else {
        HashSet::new()
    };
    Ok(face_constraints(p)
        .into_iter()
        .enumerate()
        .filter(|(k, c)| {
            let s = c.slack(d);
            if !c.inequality {
                !s.is_zero()
            } else if strict && !forced.contains(k) {
                s <= Q::zero()
            } else {
                s < Q::zero()
            }
        })
        .map(|(_, c)| c)
        .collect())
}

pub fn dynkin_face_contains(p: &PbwSubset, d: &CRootVector, strict: bool) -> bool {
    dynkin_face_violations(p, d, strict).is_ok_and(|v| v.is_empty())
}

/// An integral point of the relative interior of `F^i`, by exact phase-one
/// simplex on the free inequalities restricted to the solution space of the
/// equalities. For `i = ∅` the height function is returned.
pub fn find_interior_point(p: &PbwSubset) -> Result<CRootVector> {
    let n = p.n;
    if p.t() == 0 {
        let d = CRootVector::height(n);
        return if dynkin_face_contains(p, &d, true) {
            Ok(d)
        } else {
            Err(Error::Infeasible)
        };
    }
    let cons = face_constraints(p);
    let forced: HashSet<usize> = implicit_equalities(p).into_iter().collect();
    let (basis, _) = face_system(p, &cons);
    let free: Vec<Vec<Q>> = cons
        .iter()
        .enumerate()
        .filter(|(k, c)| c.inequality && !forced.contains(k))
        .map(|(_, c)| constraint_row(n, c))
        .collect();
    let a = Matrix {
        rows: free.len(),
        cols: n * n,
        data: free,
    };
    let g = a.mul(&basis);
    let y = strictly_feasible(&g).ok_or(Error::Infeasible)?;
    let d = basis.apply(&y);
    let out = CRootVector {
        n,
        values: primitive_integer(&d).into_iter().map(Q::from_integer).collect(),
    };
    if !dynkin_face_contains(p, &out, true) {
        return Err(Error::Infeasible);
    }
    Ok(out)
}

/// A torus-fixed point of the Lagrangian quiver Grassmannian, stored as its
/// first half `S_1 ⊂ ... ⊂ S_{n-1}`, `S_ω` of basis indices in `[2n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedPoint {
    pub sets: Vec<BTreeSet<usize>>,
}

impl FixedPoint {
    /// `S_{(n-1)*}, ..., S_{1*}` in dual indices: the annihilator of
    /// `span{v_j : j ∈ S_k}` is spanned by `v*_j` for `j ∉ S_k`.
    pub fn dual_half(&self, n: usize) -> Vec<BTreeSet<usize>> {
        self.sets[..n - 1]
            .iter()
            .rev()
            .map(|s| (1..=2 * n).filter(|j| !s.contains(j)).collect())
            .collect()
    }

    pub fn dim_vector(&self, n: usize) -> Vec<usize> {
        self.sets
            .iter()
            .map(|s| s.len())
            .chain(self.dual_half(n).iter().map(|s| s.len()))
            .collect()
    }
}

/// Checks sizes, closure under the arrows (both halves) and isotropy.
pub fn check_fixed_point(p: &PbwSubset, fp: &FixedPoint) -> std::result::Result<(), String> {
    let n = p.n;
    if fp.sets.len() != n {
        return Err(format!("expected {n} index sets"));
    }
    for (k, s) in fp.sets.iter().enumerate() {
        if s.len() != k + 1 || s.iter().any(|&j| j == 0 || j > 2 * n) {
            return Err(format!("S_{} has the wrong size or range", k + 1));
        }
    }
    let killed = |k: usize| if p.contains(k) { Some(k + 1) } else { None };
    for k in 1..n {
        let (s, next) = (&fp.sets[k - 1], &fp.sets[k]);
        if let Some(j) = s.iter().find(|&&j| Some(j) != killed(k) && !next.contains(&j)) {
            return Err(format!("f_{k} sends index {j} of S_{k} outside S_{}", k + 1));
        }
    }
    let omega = &fp.sets[n - 1];
    if let Some(&j) = omega.iter().find(|&&j| omega.contains(&(2 * n + 1 - j))) {
        return Err(format!("S_ω contains the pair {{{j}, {}}}", 2 * n + 1 - j));
    }
    // Dual half: the arrow (k+1)* -> k* on annihilators, S_n = S_ω.
    for k in 1..n {
        let upper: BTreeSet<usize> = (1..=2 * n).filter(|j| !fp.sets[k].contains(j)).collect();
        let lower: BTreeSet<usize> = (1..=2 * n).filter(|j| !fp.sets[k - 1].contains(j)).collect();
        if let Some(j) = upper.iter().find(|&&j| Some(j) != killed(k) && !lower.contains(&j)) {
            return Err(format!("dual arrow into {k}* sends dual index {j} outside"));
        }
    }
    Ok(())
}

fn subsets_of_size(pool: &[usize], size: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(pool: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if cur.len() == size {
            out.push(cur.iter().copied().collect());
            return;
        }
        for k in start..pool.len() {
            if pool.len() - k < size - cur.len() {
                break;
            }
            cur.push(pool[k]);
            go(pool, size, k + 1, cur, out);
            cur.pop();
        }
    }
    go(pool, size, 0, &mut cur, &mut out);
    out
}

/// Coordinate Lagrangian subrepresentations of `M^i ⊕ ∇M^i` of dimension
/// vector `e`, built downward from `S_ω`.
pub fn lagrangian_fixed_points(p: &PbwSubset) -> Vec<FixedPoint> {
    let n = p.n;
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let omega: BTreeSet<usize> = (1..=n)
            .map(|j| if mask >> (j - 1) & 1 == 1 { 2 * n + 1 - j } else { j })
            .collect();
        let mut partial = vec![vec![omega]];
        for k in (1..n).rev() {
            let mut next = Vec::new();
            for chain in partial {
                let above = chain.last().expect("non-empty chain");
                let mut pool: BTreeSet<usize> = above.clone();
                if p.contains(k) {
                    pool.insert(k + 1);
                }
                let pool: Vec<usize> = pool.into_iter().collect();
                for s in subsets_of_size(&pool, k) {
                    let mut c = chain.clone();
                    c.push(s);
                    next.push(c);
                }
            }
            partial = next;
        }
        for mut chain in partial {
            chain.reverse();
            out.push(FixedPoint { sets: chain });
        }
    }
    out.sort();
    out
}
