//! Cuts, shifts and the ordinary degeneration order.
//!
//! Moves are parameterised by `q`, the first vertex of the right-hand piece:
//! `Cut { t, s, q }` splits `[t,s]` into `[t,q-1]` and `[q,s]`.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep::{
    embeds_ranks, is_summand_ranks, ranks_of, rep_of, same_quiver, sigma, RankSequence,
    Representation, Segment,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Move {
    /// `[t,s] -> [t,q-1] + [q,s]`
    Cut { t: usize, s: usize, q: usize },
    /// `[t,s] + [q,r] -> [t,r] + [q,s]`
    Shift {
        t: usize,
        s: usize,
        q: usize,
        r: usize,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::Cut { t, s, q } => write!(f, "cut({t},{s},{q})"),
            Move::Shift { t, s, q, r } => write!(f, "shift({t},{s},{q},{r})"),
        }
    }
}

impl Move {
    pub fn validate(&self, n: usize) -> Result<()> {
        let ok = match *self {
            Move::Cut { t, s, q } => t >= 1 && t < q && q <= s && s <= n,
            Move::Shift { t, s, q, r } => t >= 1 && t < q && q <= r && r < s && s <= n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMove(format!("{self} on {n} vertices")))
        }
    }

    pub fn consumed(&self) -> Vec<Segment> {
        match *self {
            Move::Cut { t, s, .. } => vec![Segment { i: t, j: s }],
            Move::Shift { t, s, q, r } => vec![Segment { i: t, j: s }, Segment { i: q, j: r }],
        }
    }

    pub fn produced(&self) -> Vec<Segment> {
        match *self {
            Move::Cut { t, s, q } => vec![Segment { i: t, j: q - 1 }, Segment { i: q, j: s }],
            Move::Shift { t, s, q, r } => vec![Segment { i: t, j: r }, Segment { i: q, j: s }],
        }
    }

    /// Whether `r(k,l)` drops by one under this move.
    pub fn drops_at(&self, k: usize, l: usize) -> bool {
        match *self {
            Move::Cut { t, s, q } => t <= k && k < q && q <= l && l <= s,
            Move::Shift { t, s, q, r } => t <= k && k < q && r < l && l <= s,
        }
    }

    /// The σ-dual move on `n` vertices.
    pub fn dual(&self, n: usize) -> Move {
        let sg = |k| sigma(n, k);
        match *self {
            Move::Cut { t, s, q } => Move::Cut {
                t: sg(s),
                s: sg(t),
                q: sg(q) + 1,
            },
            Move::Shift { t, s, q, r } => Move::Shift {
                t: sg(s),
                s: sg(t),
                q: sg(r),
                r: sg(q),
            },
        }
    }
}

static MOVE_CHECKS: AtomicU64 = AtomicU64::new(0);
static MOVE_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Process-wide tally of rank-delta checks performed by [`apply_move`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveAudit {
    pub checks: u64,
    pub violations: u64,
}

pub fn move_audit() -> MoveAudit {
    MoveAudit {
        checks: MOVE_CHECKS.load(Ordering::Relaxed),
        violations: MOVE_VIOLATIONS.load(Ordering::Relaxed),
    }
}

/// Multiplicity-level move without the rank check.
pub(crate) fn apply_move_raw(rep: &Representation, mv: Move) -> Result<Representation> {
    mv.validate(rep.n())?;
    let mut out = rep.clone();
    for seg in mv.consumed() {
        out.remove(seg, 1)?;
    }
    for seg in mv.produced() {
        out.add(seg, 1);
    }
    Ok(out)
}

/// Applies a move and checks that ranks drop by exactly one on the
/// predicted region and nowhere else.
pub fn apply_move(rep: &Representation, mv: Move) -> Result<Representation> {
    let out = apply_move_raw(rep, mv)?;
    let before = ranks_of(rep);
    let after = ranks_of(&out);
    check_delta(&before, &after, &[mv], &mv.to_string())?;
    Ok(out)
}

/// Checks `before − after` equals the sum of the moves' drop patterns.
pub(crate) fn check_delta(
    before: &RankSequence,
    after: &RankSequence,
    moves: &[Move],
    label: &str,
) -> Result<()> {
    MOVE_CHECKS.fetch_add(1, Ordering::Relaxed);
    let n = before.n();
    for k in 1..=n {
        for l in k..=n {
            let predicted = moves.iter().filter(|m| m.drops_at(k, l)).count() as i64;
            let actual = before.value(k, l) as i64 - after.value(k, l) as i64;
            if predicted != actual {
                MOVE_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
                return Err(Error::RankDeltaViolation(format!(
                    "{label} at ({k},{l}): predicted {predicted}, got {actual}"
                )));
            }
        }
    }
    Ok(())
}

/// Every move applicable to `rep`.
pub fn applicable_moves(rep: &Representation) -> Vec<Move> {
    let segs: Vec<(Segment, u32)> = rep.iter().collect();
    let mut out = Vec::new();
    for &(a, ma) in &segs {
        for q in a.i + 1..=a.j {
            out.push(Move::Cut { t: a.i, s: a.j, q });
        }
        for &(b, mb) in &segs {
            if a == b && ma < 2 {
                continue;
            }
            if a.i < b.i && b.j < a.j {
                out.push(Move::Shift {
                    t: a.i,
                    s: a.j,
                    q: b.i,
                    r: b.j,
                });
            }
            let _ = mb;
        }
    }
    out
}

/// `M <=_deg N`: equal dimension vectors and `r^M >= r^N` entrywise.
pub fn degenerates(m: &Representation, n: &Representation) -> Result<bool> {
    same_quiver(m, n)?;
    Ok(ranks_of(m).dominates(&ranks_of(n)))
}

/// Rank data of a generic quotient `M / U_{q,s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub ranks_q: RankSequence,
    pub ranks_lq: RankSequence,
    pub moves: Vec<Move>,
    /// `(t1, q1, t2, q2)`; `None` when the segment is a summand.
    pub markers: Option<(usize, usize, usize, usize)>,
}

pub fn generic_quotient(m: &Representation, q: usize, s: usize) -> Result<QuotientReport> {
    let n = m.n();
    let seg = Segment::new(q, s, n)?;
    let r = ranks_of(m);
    if !embeds_ranks(&r, seg) {
        return Err(Error::NoEmbedding(seg));
    }
    let sub = |k: usize, l: usize| r.fin(k, l) - r.fin(k, s + 1);
    let mut ranks_q = r.clone();
    let mut ranks_lq = r.clone();
    for k in 1..=n {
        for l in k.max(q)..=s {
            if sub(q, l) <= sub(k, l) {
                ranks_q.set(k, l, r.value(k, l) - 1);
                if k < q {
                    ranks_lq.set(k, l, r.value(k, l) - 1);
                }
            }
        }
    }

    if is_summand_ranks(&r, seg) {
        return Ok(QuotientReport {
            ranks_q,
            ranks_lq,
            moves: Vec::new(),
            markers: None,
        });
    }

    // f(k,l) counts segments [a,b] with k < a <= q and l <= b <= s; its zero
    // set is a staircase in [1,q-1] x [q,s], covered by at most two boxes.
    let f = |k: usize, l: usize| sub(q, l) - sub(k, l);
    let q1 = (q..=s)
        .find(|&l| f(q - 1, l) == 0)
        .expect("non-summand has f(q-1,s) = 0");
    let t1 = (1..q).find(|&k| f(k, q1) == 0).expect("q1 witnesses a zero");
    let t2 = (1..q).find(|&k| f(k, s) == 0).expect("f(q-1,s) = 0");
    let q2 = (q..=s).find(|&l| f(t2, l) == 0).expect("f(t2,s) = 0");

    let mut moves = Vec::new();
    if q1 < q2 {
        moves.push(if q1 == q {
            Move::Cut { t: t1, s: q2 - 1, q }
        } else {
            Move::Shift {
                t: t1,
                s: q2 - 1,
                q,
                r: q1 - 1,
            }
        });
    }
    moves.push(if q2 == q {
        Move::Cut { t: t2, s, q }
    } else {
        Move::Shift {
            t: t2,
            s,
            q,
            r: q2 - 1,
        }
    });

    let mut cur = m.clone();
    for &mv in &moves {
        cur = apply_move(&cur, mv)?;
    }
    if ranks_of(&cur) != ranks_lq {
        return Err(Error::AlgorithmStuck(format!(
            "quotient moves for U[{q},{s}] do not reach the generic degeneration"
        )));
    }
    Ok(QuotientReport {
        ranks_q,
        ranks_lq,
        moves,
        markers: Some((t1, q1, t2, q2)),
    })
}

/// One step of an ordinary degeneration path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    #[serde(rename = "move")]
    pub mv: Move,
    pub rep: Representation,
    pub ranks: RankSequence,
}

/// A move sequence from `M` to `N`, built by repeatedly splitting off the
/// projective `U_{i,n'}` of `N` (largest admissible `i`) as a generic
/// sub-representation of `M`.
pub fn degeneration_path(m: &Representation, n: &Representation) -> Result<Vec<PathStep>> {
    if !degenerates(m, n)? {
        return Err(Error::NotComparable);
    }
    let nv = m.n();
    let mut peeled = Representation::zero(nv);
    let mut cur_m = m.clone();
    let mut cur_n = n.clone();
    let mut steps = Vec::new();
    while cur_m != cur_n {
        let d = cur_n.dim_vector();
        let top = (1..=nv)
            .rev()
            .find(|&k| d.0[k - 1] > 0)
            .expect("distinct reps with equal dims are non-zero");
        let rn = ranks_of(&cur_n);
        let i = (1..=top)
            .rev()
            .find(|&i| rn.fin(i, top) > rn.fin(i - 1, top))
            .expect("top vertex carries a projective summand");
        let report = generic_quotient(&cur_m, i, top)?;
        let mut whole = peeled.direct_sum(&cur_m)?;
        for &mv in &report.moves {
            whole = apply_move(&whole, mv)?;
            steps.push(PathStep {
                mv,
                ranks: ranks_of(&whole),
                rep: whole.clone(),
            });
        }
        let l = Segment { i, j: top };
        peeled.add(l, 1);
        cur_m = rep_of(&report.ranks_q)?;
        cur_n.remove(l, 1)?;
        if !ranks_of(&cur_m).dominates(&ranks_of(&cur_n)) {
            return Err(Error::AlgorithmStuck(format!(
                "after splitting off {l} the quotient no longer degenerates"
            )));
        }
    }
    Ok(steps)
}
