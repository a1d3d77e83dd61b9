//! ε-representations and the symmetric degeneration order.
//!
//! Split types are `(A_odd, -1)` and `(A_even, +1)`. There every
//! indecomposable ε-representation is a dual pair `U ⊕ ∇U`, so self-dual
//! segments occur with even multiplicity.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degen::{apply_move, apply_move_raw, applicable_moves, check_delta, Move};
use crate::error::{Error, Result};
use crate::rep::{
    embeds_ranks, ranks_of, rep_of, sigma, Rank, RankSequence, Representation, Segment,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricType {
    pub n: usize,
    pub epsilon: i8,
    pub split: bool,
}

impl SymmetricType {
    pub fn new(n: usize, epsilon: i8) -> Result<Self> {
        if n == 0 || (epsilon != 1 && epsilon != -1) {
            return Err(Error::InvalidInput(format!(
                "no symmetric type for n = {n}, epsilon = {epsilon}"
            )));
        }
        let split = (n % 2 == 1 && epsilon == -1) || (n % 2 == 0 && epsilon == 1);
        Ok(SymmetricType { n, epsilon, split })
    }

    /// The split type on `n` vertices.
    pub fn split_for(n: usize) -> Self {
        let eps = if n % 2 == 1 { -1 } else { 1 };
        SymmetricType::new(n, eps).expect("n >= 1")
    }

    /// Parses `odd-neg`, `even-pos`, `odd-pos` or `even-neg` against `n`.
    pub fn from_name(name: &str, n: usize) -> Result<Self> {
        let (parity, eps) = match name {
            "odd-neg" => (1, -1),
            "odd-pos" => (1, 1),
            "even-pos" => (0, 1),
            "even-neg" => (0, -1),
            other => return Err(Error::InvalidInput(format!("unknown type {other:?}"))),
        };
        if n % 2 != parity {
            return Err(Error::InvalidInput(format!(
                "type {name} does not match n = {n}"
            )));
        }
        SymmetricType::new(n, eps)
    }

    pub fn name(&self) -> &'static str {
        match (self.n % 2 == 1, self.epsilon == 1) {
            (true, false) => "odd-neg",
            (true, true) => "odd-pos",
            (false, true) => "even-pos",
            (false, false) => "even-neg",
        }
    }

    pub fn all_for(n: usize) -> [SymmetricType; 2] {
        [
            SymmetricType::new(n, -1).expect("n >= 1"),
            SymmetricType::new(n, 1).expect("n >= 1"),
        ]
    }
}

impl fmt::Display for SymmetricType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.epsilon == 1 { '+' } else { '-' };
        write!(f, "(A_{}, {sign}1)", self.n)
    }
}

/// A representation that carries a compatible ε-form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EpsilonRep {
    rep: Representation,
    sym: SymmetricType,
}

impl EpsilonRep {
    pub fn new(rep: Representation, sym: SymmetricType) -> Result<Self> {
        if rep.n() != sym.n {
            return Err(Error::MismatchedQuiver {
                left: rep.n(),
                right: sym.n,
            });
        }
        if !is_epsilon_rep(&rep, sym) {
            return Err(Error::NotEpsilon);
        }
        Ok(EpsilonRep { rep, sym })
    }

    pub fn from_ranks(ranks: &RankSequence, sym: SymmetricType) -> Result<Self> {
        Self::new(rep_of(ranks)?, sym)
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn sym(&self) -> SymmetricType {
        self.sym
    }

    pub fn ranks(&self) -> RankSequence {
        ranks_of(&self.rep)
    }
}

/// Rank criterion: σ-symmetric ranks and, in split types, even `r(i,σ(i))`.
pub fn is_epsilon_rank(ranks: &RankSequence, sym: SymmetricType) -> bool {
    let n = ranks.n();
    if n != sym.n || !ranks.is_sigma_symmetric() {
        return false;
    }
    !sym.split || (1..=n).filter(|&i| i <= sigma(n, i)).all(|i| ranks.value(i, sigma(n, i)) % 2 == 0)
}

/// Multiplicity criterion.
pub fn is_epsilon_rep(rep: &Representation, sym: SymmetricType) -> bool {
    let n = rep.n();
    n == sym.n
        && rep.iter().all(|(s, m)| {
            let d = s.dual(n);
            if d == s {
                !sym.split || m % 2 == 0
            } else {
                rep.multiplicity(d) == m
            }
        })
}

/// Indecomposable ε-representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EpsIndecomposable {
    /// `U ⊕ ∇U` with the hyperbolic form (includes `U ⊕ U` for self-dual `U`).
    Pair(Segment),
    /// A self-dual `U_{i,σ(i)}` carrying a form by itself (non-split types only).
    Single(Segment),
}

/// Splits `rep` into indecomposable ε-summands, or `None` if impossible.
pub fn decompose_epsilon(rep: &Representation, sym: SymmetricType) -> Option<Vec<EpsIndecomposable>> {
    let n = rep.n();
    if n != sym.n {
        return None;
    }
    let mut left = rep.clone();
    let mut out = Vec::new();
    loop {
        let first = left.iter().next().map(|(s, _)| s);
        let Some(s) = first else { break };
        let d = s.dual(n);
        if d == s {
            if !sym.split {
                left.remove(s, 1).ok()?;
                out.push(EpsIndecomposable::Single(s));
            } else {
                left.remove(s, 2).ok()?;
                out.push(EpsIndecomposable::Pair(s));
            }
        } else {
            left.remove(s, 1).ok()?;
            left.remove(d, 1).ok()?;
            out.push(EpsIndecomposable::Pair(s.min(d)));
        }
    }
    Some(out)
}

/// A symmetric cut or shift: a move followed by its σ-dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SymMove {
    Symcut { t: usize, s: usize, q: usize },
    Symshift {
        t: usize,
        s: usize,
        q: usize,
        r: usize,
    },
}

impl SymMove {
    pub fn from_move(mv: Move) -> Self {
        match mv {
            Move::Cut { t, s, q } => SymMove::Symcut { t, s, q },
            Move::Shift { t, s, q, r } => SymMove::Symshift { t, s, q, r },
        }
    }

    pub fn first(&self) -> Move {
        match *self {
            SymMove::Symcut { t, s, q } => Move::Cut { t, s, q },
            SymMove::Symshift { t, s, q, r } => Move::Shift { t, s, q, r },
        }
    }

    pub fn constituents(&self, n: usize) -> [Move; 2] {
        let mv = self.first();
        [mv, mv.dual(n)]
    }
}

impl fmt::Display for SymMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sym{}", self.first())
    }
}

fn require_split(sym: SymmetricType) -> Result<()> {
    if sym.split {
        Ok(())
    } else {
        Err(Error::NotSplitType)
    }
}

pub fn apply_sym_move(erep: &EpsilonRep, mv: SymMove) -> Result<EpsilonRep> {
    require_split(erep.sym)?;
    let n = erep.sym.n;
    let [a, b] = mv.constituents(n);
    let mid = apply_move(&erep.rep, a)?;
    let out = apply_move(&mid, b)?;
    check_delta(&ranks_of(&erep.rep), &ranks_of(&out), &[a, b], &mv.to_string())?;
    EpsilonRep::new(out, erep.sym)
}

/// Every distinct result of one symmetric move, keyed by a witnessing move.
pub fn sym_successors(erep: &EpsilonRep) -> Vec<(SymMove, EpsilonRep)> {
    let n = erep.sym.n;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mv in applicable_moves(&erep.rep) {
        let sm = SymMove::from_move(mv);
        let Ok(mid) = apply_move_raw(&erep.rep, mv) else {
            continue;
        };
        let Ok(end) = apply_move_raw(&mid, mv.dual(n)) else {
            continue;
        };
        if seen.insert(end.clone()) {
            out.push((sm, EpsilonRep { rep: end, sym: erep.sym }));
        }
    }
    out
}

fn same_type(m: &EpsilonRep, n: &EpsilonRep) -> Result<()> {
    if m.sym != n.sym {
        return Err(Error::MismatchedType);
    }
    require_split(m.sym)
}

pub fn sym_degenerates(m: &EpsilonRep, n: &EpsilonRep) -> Result<bool> {
    same_type(m, n)?;
    Ok(m.ranks().dominates(&n.ranks()))
}

/// Minimal `[a, σ(a)]` containing every vertex of non-zero dimension, or
/// `None` for the zero representation.
pub fn symmetric_support(ranks: &RankSequence) -> Option<(usize, usize)> {
    let n = ranks.n();
    let lo = (1..=n).find(|&k| ranks.value(k, k) > 0)?;
    let hi = (1..=n).rev().find(|&k| ranks.value(k, k) > 0)?;
    let a = lo.min(sigma(n, hi));
    Some((a, sigma(n, a)))
}

/// Ranks of `ι(P_q)^⊥ / ι(P_q)` for a generic isotropic embedding of the
/// projective `P_q = U_{q,n'}` of the current support.
pub fn perp_quotient_ranks(m: &EpsilonRep, q: usize) -> Result<RankSequence> {
    require_split(m.sym)?;
    let r = m.ranks();
    perp_quotient_on_ranks(&r, q)
}

pub(crate) fn perp_quotient_on_ranks(r: &RankSequence, q: usize) -> Result<RankSequence> {
    let n = r.n();
    let (a, top) = symmetric_support(r).ok_or_else(|| {
        Error::InvalidInput("zero representation has no projective".into())
    })?;
    if q < a || q > top {
        return Err(Error::InvalidInput(format!(
            "vertex {q} outside support [{a},{top}]"
        )));
    }
    let seg = Segment { i: q, j: top };
    if !embeds_ranks(r, seg) {
        return Err(Error::NoEmbedding(seg));
    }
    let sq = sigma(n, q);
    let mut out = r.clone();
    for k in a..=top {
        for l in k..=top {
            let here = Rank::Finite(r.value(k, l));
            let drop = (r.get(q, l) <= here) as u32 + (r.get(k, sq) <= here) as u32;
            out.set(k, l, r.value(k, l) - drop);
        }
    }
    Ok(out)
}

/// How the projective to peel is chosen at each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeelRule {
    /// Smallest multiplicity `m(i,n')` of `P_i` in `N`, ties to the largest `i`.
    #[default]
    LeastMultiplicity,
    /// Largest `i` with `P_i` a summand of `N`.
    MaximalIndex,
}

/// One row of a symmetric degeneration sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenStep {
    pub z: EpsilonRep,
    pub z_ranks: RankSequence,
    pub m_ranks: RankSequence,
    pub n_ranks: RankSequence,
    /// Projective of the support peeled to reach the next step.
    pub peeled: Option<Segment>,
    pub support: Option<(usize, usize)>,
}

pub fn sym_degeneration_path(m: &EpsilonRep, n: &EpsilonRep) -> Result<Vec<DegenStep>> {
    sym_degeneration_path_with(m, n, PeelRule::default())
}

pub fn sym_degeneration_path_with(
    m: &EpsilonRep,
    n: &EpsilonRep,
    rule: PeelRule,
) -> Result<Vec<DegenStep>> {
    if !sym_degenerates(m, n)? {
        return Err(Error::NotComparable);
    }
    let sym = m.sym;
    let nv = sym.n;
    let mut cur_m = m.ranks();
    let mut cur_n = n.ranks();
    let mut peeled_sum = RankSequence::zeros(nv);
    let mut steps: Vec<DegenStep> = Vec::new();
    loop {
        let z_ranks = cur_m.plus(&peeled_sum);
        let z = EpsilonRep::from_ranks(&z_ranks, sym)?;
        let support = symmetric_support(&cur_n);
        let mut step = DegenStep {
            z,
            z_ranks,
            m_ranks: cur_m.clone(),
            n_ranks: cur_n.clone(),
            peeled: None,
            support,
        };
        if cur_m == cur_n {
            steps.push(step);
            return Ok(steps);
        }
        let (a, top) = support.expect("distinct ranks with equal diagonals are non-zero");
        let mult = |i: usize| cur_n.fin(i, top) - cur_n.fin(i - 1, top);
        let candidates = (a..=top).filter(|&i| mult(i) > 0);
        let q = match rule {
            PeelRule::MaximalIndex => candidates.max(),
            PeelRule::LeastMultiplicity => candidates.min_by_key(|&i| (mult(i), std::cmp::Reverse(i))),
        }
        .ok_or_else(|| Error::AlgorithmStuck("no projective summand on the support".into()))?;
        let l = Segment { i: q, j: top };
        step.peeled = Some(l);
        steps.push(step);

        let pair = Representation::from_triples(nv, [(l.i, l.j, 1), (l.dual(nv).i, l.dual(nv).j, 1)])?;
        let pair_ranks = ranks_of(&pair);
        let next_m = perp_quotient_on_ranks(&cur_m, q)?;
        let next_n = cur_n
            .minus(&pair_ranks)
            .ok_or_else(|| Error::AlgorithmStuck(format!("{l} ⊕ ∇{l} is not a summand of N")))?;
        if next_m.validate().is_err() || !is_epsilon_rank(&next_m, sym) {
            return Err(Error::AlgorithmStuck(format!(
                "perpendicular quotient by {l} is not an ε-rank sequence"
            )));
        }
        if !next_m.dominates(&next_n) {
            return Err(Error::AlgorithmStuck(format!(
                "after peeling {l} the quotient no longer degenerates"
            )));
        }
        peeled_sum = peeled_sum.plus(&pair_ranks);
        cur_m = next_m;
        cur_n = next_n;
    }
}

/// Bounded search for a symmetric-move sequence from `from` to `to`.
/// `None` means nothing was found within `budget` expanded states.
pub fn sym_move_refinement(
    from: &EpsilonRep,
    to: &EpsilonRep,
    budget: usize,
) -> Result<Option<Vec<SymMove>>> {
    same_type(from, to)?;
    if from == to {
        return Ok(Some(Vec::new()));
    }
    let target = to.ranks();
    if !from.ranks().dominates(&target) {
        return Ok(None);
    }
    let mut parent: std::collections::HashMap<Representation, (Representation, SymMove)> =
        Default::default();
    let mut queue = VecDeque::from([from.clone()]);
    let mut expanded = 0usize;
    while let Some(cur) = queue.pop_front() {
        if expanded >= budget {
            break;
        }
        expanded += 1;
        for (mv, next) in sym_successors(&cur) {
            if next.rep == from.rep || parent.contains_key(&next.rep) {
                continue;
            }
            if !next.ranks().dominates(&target) {
                continue;
            }
            parent.insert(next.rep.clone(), (cur.rep.clone(), mv));
            if next.rep == to.rep {
                let mut moves = vec![mv];
                let mut at = cur.rep.clone();
                while at != from.rep {
                    let (prev, m) = parent[&at].clone();
                    moves.push(m);
                    at = prev;
                }
                moves.reverse();
                return Ok(Some(moves));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::enumerate_bounded;

    fn odd_neg(n: usize) -> SymmetricType {
        SymmetricType::new(n, -1).unwrap()
    }

    fn rows(r: &[&[u32]]) -> RankSequence {
        RankSequence::from_rows(r.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn split_types() {
        assert!(SymmetricType::new(5, -1).unwrap().split);
        assert!(SymmetricType::new(4, 1).unwrap().split);
        assert!(!SymmetricType::new(5, 1).unwrap().split);
        assert!(!SymmetricType::new(4, -1).unwrap().split);
        assert_eq!(SymmetricType::from_name("even-pos", 4).unwrap().name(), "even-pos");
        assert!(SymmetricType::from_name("odd-neg", 4).is_err());
    }

    #[test]
    fn epsilon_examples() {
        let n0 = rows(&[&[6, 5, 4, 3, 2], &[6, 5, 4, 3], &[6, 5, 4], &[6, 5], &[6]]);
        assert!(is_epsilon_rank(&n0, odd_neg(5)));
        let u15 = Representation::segment(5, 1, 5).unwrap();
        assert!(!is_epsilon_rank(&ranks_of(&u15), odd_neg(5)));
        assert!(!is_epsilon_rep(&u15, odd_neg(5)));
        let two = Representation::from_triples(5, [(1, 5, 2)]).unwrap();
        assert!(is_epsilon_rep(&two, odd_neg(5)));
        let s3 = Representation::segment(5, 3, 3).unwrap();
        assert!(is_epsilon_rep(&s3, SymmetricType::new(5, 1).unwrap()));
    }

    #[test]
    fn criteria_agree_small() {
        for n in 1..=4usize {
            for rep in enumerate_bounded(n, &vec![2; n]) {
                for sym in SymmetricType::all_for(n) {
                    let a = is_epsilon_rep(&rep, sym);
                    assert_eq!(a, is_epsilon_rank(&ranks_of(&rep), sym), "{rep} {sym}");
                    assert_eq!(a, decompose_epsilon(&rep, sym).is_some());
                }
            }
        }
    }

    #[test]
    fn symcut_example() {
        let m = EpsilonRep::new(Representation::from_triples(5, [(1, 5, 2)]).unwrap(), odd_neg(5))
            .unwrap();
        let out = apply_sym_move(&m, SymMove::Symcut { t: 1, s: 5, q: 3 }).unwrap();
        let expect =
            Representation::from_triples(5, [(1, 2, 1), (3, 5, 1), (1, 3, 1), (4, 5, 1)]).unwrap();
        assert_eq!(out.rep(), &expect);
    }

    #[test]
    fn symshift_two_pairs() {
        // [1,4] + [2,5] with inner pair [2,3] + [3,4]: shift [2,3] into [1,4].
        let m = Representation::from_triples(5, [(1, 4, 1), (2, 5, 1), (2, 3, 1), (3, 4, 1)])
            .unwrap();
        let m = EpsilonRep::new(m, odd_neg(5)).unwrap();
        let out = apply_sym_move(&m, SymMove::Symshift { t: 1, s: 4, q: 2, r: 3 }).unwrap();
        let expect = Representation::from_triples(5, [(1, 3, 1), (2, 4, 2), (3, 5, 1)]).unwrap();
        assert_eq!(out.rep(), &expect);
    }

    #[test]
    fn sym_move_guards() {
        let sym = SymmetricType::new(5, 1).unwrap();
        let m = EpsilonRep::new(Representation::from_triples(5, [(1, 5, 2)]).unwrap(), sym).unwrap();
        assert_eq!(
            apply_sym_move(&m, SymMove::Symcut { t: 1, s: 5, q: 3 }),
            Err(Error::NotSplitType)
        );
        // One copy of a self-dual segment cannot be cut symmetrically.
        let m = Representation::from_triples(4, [(1, 4, 2)]).unwrap();
        let m = EpsilonRep::new(m, SymmetricType::new(4, 1).unwrap()).unwrap();
        let out = apply_sym_move(&m, SymMove::Symcut { t: 1, s: 4, q: 3 }).unwrap();
        assert_eq!(out.rep().multiplicity(Segment { i: 1, j: 2 }), 2);
    }

    #[test]
    fn perp_quotient_tables() {
        let m0 = rows(&[&[6, 6, 6, 6, 6], &[6, 6, 6, 6], &[6, 6, 6], &[6, 6], &[6]]);
        let m = EpsilonRep::from_ranks(&m0, odd_neg(5)).unwrap();
        let expect = rows(&[&[5, 5, 5, 5, 4], &[6, 6, 6, 5], &[6, 6, 5], &[6, 5], &[5]]);
        assert_eq!(perp_quotient_ranks(&m, 5).unwrap(), expect);

        let m0 = rows(&[&[3, 3, 2, 2, 2], &[3, 2, 2, 2], &[4, 2, 2], &[3, 3], &[3]]);
        let m = EpsilonRep::from_ranks(&m0, odd_neg(5)).unwrap();
        let expect = rows(&[&[2, 2, 1, 0, 0], &[2, 1, 0, 0], &[2, 1, 1], &[2, 2], &[2]]);
        assert_eq!(perp_quotient_ranks(&m, 3).unwrap(), expect);
    }

    #[test]
    fn identical_endpoints() {
        let m = EpsilonRep::new(Representation::from_triples(3, [(1, 3, 2)]).unwrap(), odd_neg(3))
            .unwrap();
        let path = sym_degeneration_path(&m, &m).unwrap();
        assert_eq!(path.len(), 1);
        assert!(path[0].peeled.is_none());
        assert_eq!(sym_move_refinement(&m, &m, 0).unwrap(), Some(vec![]));
    }

    #[test]
    fn refinement_budget_zero() {
        let sym = odd_neg(3);
        let m = EpsilonRep::new(Representation::from_triples(3, [(1, 3, 2)]).unwrap(), sym).unwrap();
        let n = EpsilonRep::new(
            Representation::from_triples(3, [(1, 1, 2), (2, 2, 2), (3, 3, 2)]).unwrap(),
            sym,
        )
        .unwrap();
        assert_eq!(sym_move_refinement(&m, &n, 0).unwrap(), None);
        let found = sym_move_refinement(&m, &n, 1000).unwrap().unwrap();
        let mut cur = m.clone();
        for mv in found {
            cur = apply_sym_move(&cur, mv).unwrap();
        }
        assert_eq!(cur, n);
    }
}
