//! Independent ground truth: explicit matrices, exact ranks, Hom spaces,
//! ε-forms and brute-force move closures.

use std::collections::{BTreeSet, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::degen::{applicable_moves, apply_move};
use crate::error::{Error, Result};
use crate::linalg::{rank_i64, Matrix};
use crate::rep::{ranks_of, sigma, RankSequence, Representation, Segment};
use crate::symdegen::{apply_sym_move, decompose_epsilon, EpsIndecomposable, EpsilonRep, SymMove};

pub type IntMatrix = Vec<Vec<i64>>;

/// `maps[k-1]` is `f_k : M_k -> M_{k+1}`, a `spaces[k] × spaces[k-1]` matrix.
/// `basis[k-1]` names the basis vectors of `M_k` by (segment, copy).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRealization {
    pub n: usize,
    pub spaces: Vec<usize>,
    pub maps: Vec<IntMatrix>,
    pub basis: Vec<Vec<(Segment, u32)>>,
}

impl MatrixRealization {
    /// `f_{i,j} = f_{j-1} ∘ ... ∘ f_i` as an integer matrix.
    pub fn composite(&self, i: usize, j: usize) -> IntMatrix {
        let mut acc: IntMatrix = (0..self.spaces[i - 1])
            .map(|r| (0..self.spaces[i - 1]).map(|c| i64::from(r == c)).collect())
            .collect();
        for k in i..j {
            acc = int_mul(&self.maps[k - 1], &acc, self.spaces[i - 1]);
        }
        acc
    }

    /// Conjugates every space by a random unimodular change of basis.
    pub fn scrambled(&self, seed: u64) -> MatrixRealization {
        let mut rng = StdRng::seed_from_u64(seed);
        let g: Vec<(IntMatrix, IntMatrix)> = self.spaces.iter().map(|&d| unimodular(d, &mut rng)).collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(k, f)| int_mul(&g[k + 1].0, &int_mul(f, &g[k].1, self.spaces[k]), self.spaces[k]))
            .collect();
        MatrixRealization {
            maps,
            ..self.clone()
        }
    }
}

fn int_mul(a: &IntMatrix, b: &IntMatrix, cols: usize) -> IntMatrix {
    let inner = b.len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &IntMatrix, rows: usize, cols: usize) -> IntMatrix {
    (0..cols).map(|c| (0..rows).map(|r| a[r][c]).collect()).collect()
}

/// A random unimodular `g = L U` and its inverse, entries kept small.
fn unimodular(d: usize, rng: &mut StdRng) -> (IntMatrix, IntMatrix) {
    let mut l = vec![vec![0i64; d]; d];
    let mut u = vec![vec![0i64; d]; d];
    for i in 0..d {
        l[i][i] = 1;
        u[i][i] = if rng.gen_bool(0.5) { 1 } else { -1 };
        for j in 0..i {
            l[i][j] = rng.gen_range(-1..=1);
        }
        for j in i + 1..d {
            u[i][j] = rng.gen_range(-1..=1);
        }
    }
    let g = int_mul(&l, &u, d);
    let inv = Matrix::from_i64(d, d, &g).inverse().expect("unimodular");
    let inv = inv
        .data
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| {
                    assert!(v.is_integer());
                    i64::try_from(v.to_integer()).expect("small entries")
                })
                .collect()
        })
        .collect();
    (g, inv)
}

/// One chain of basis vectors `e_k`, `k ∈ seg`, with `f_k e_k = e_{k+1}`.
fn realize_chains(n: usize, chains: &[(Segment, u32)]) -> MatrixRealization {
    let basis: Vec<Vec<(Segment, u32)>> = (1..=n)
        .map(|k| chains.iter().copied().filter(|(s, _)| s.contains(k)).collect())
        .collect();
    let spaces: Vec<usize> = basis.iter().map(Vec::len).collect();
    let maps = (1..n)
        .map(|k| {
            let mut f = vec![vec![0i64; spaces[k - 1]]; spaces[k]];
            for (c, b) in basis[k - 1].iter().enumerate() {
                if let Some(r) = basis[k].iter().position(|x| x == b) {
                    f[r][c] = 1;
                }
            }
            f
        })
        .collect();
    MatrixRealization {
        n,
        spaces,
        maps,
        basis,
    }
}

/// Each segment copy contributes an identity chain.
pub fn realize_matrices(rep: &Representation) -> MatrixRealization {
    let chains: Vec<(Segment, u32)> = rep.iter().flat_map(|(s, m)| (0..m).map(move |c| (s, c))).collect();
    realize_chains(rep.n(), &chains)
}

/// Exact ranks of all composites.
pub fn rank_seq_bruteforce(real: &MatrixRealization) -> RankSequence {
    let n = real.n;
    let mut out = RankSequence::zeros(n);
    for i in 1..=n {
        for j in i..=n {
            let r = if i == j {
                real.spaces[i - 1]
            } else {
                rank_i64(real.spaces[j - 1], real.spaces[i - 1], &real.composite(i, j))
            };
            out.set(i, j, r as u32);
        }
    }
    out
}

/// `dim Hom(M, N)`: nullity of `g_{k+1} f_k = f'_k g_k` in the entries of
/// `g_1, ..., g_n`.
pub fn hom_dim_bruteforce(m: &MatrixRealization, n: &MatrixRealization) -> Result<u64> {
    if m.n != n.n {
        return Err(Error::MismatchedQuiver {
            left: m.n,
            right: n.n,
        });
    }
    let verts = m.n;
    // Unknown (k, r, c) is entry (r, c) of g_k : M_k -> N_k.
    let mut offset = vec![0usize; verts + 1];
    for k in 0..verts {
        offset[k + 1] = offset[k] + n.spaces[k] * m.spaces[k];
    }
    let unknowns = offset[verts];
    let var = |k: usize, r: usize, c: usize| offset[k] + r * m.spaces[k] + c;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for k in 0..verts.saturating_sub(1) {
        let (fm, fn_) = (&m.maps[k], &n.maps[k]);
        for r in 0..n.spaces[k + 1] {
            for c in 0..m.spaces[k] {
                let mut eq = vec![0i64; unknowns];
                // (g_{k+1} f_k)[r][c] = Σ_x g_{k+1}[r][x] f_k[x][c]
                for x in 0..m.spaces[k + 1] {
                    eq[var(k + 1, r, x)] += fm[x][c];
                }
                // (f'_k g_k)[r][c] = Σ_y f'_k[r][y] g_k[y][c]
                for y in 0..n.spaces[k] {
                    eq[var(k, y, c)] -= fn_[r][y];
                }
                if eq.iter().any(|&v| v != 0) {
                    rows.push(eq);
                }
            }
        }
    }
    let rank = rank_i64(rows.len(), unknowns, &rows);
    Ok((unknowns - rank) as u64)
}

/// A realization together with pairings `forms[k-1] : M_k × M_{σ(k)} -> Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonRealization {
    pub real: MatrixRealization,
    pub epsilon: i8,
    pub forms: Vec<IntMatrix>,
}

/// Builds the ε-form chain by chain: `⟨e_k, e'_{σ(k)}⟩ = (-1)^k` between a
/// chain and its partner (itself for a single self-dual summand), and
/// `ε (-1)^k` in the other order.
pub fn realize_epsilon_form(erep: &EpsilonRep) -> Result<EpsilonRealization> {
    let sym = erep.sym();
    let n = sym.n;
    let parts = decompose_epsilon(erep.rep(), sym).ok_or(Error::NotEpsilon)?;
    // chains[c] = (segment, id); partner[c] = index of the paired chain.
    let mut chains: Vec<(Segment, u32)> = Vec::new();
    let mut partner: Vec<usize> = Vec::new();
    for (id, part) in parts.iter().enumerate() {
        let id = id as u32;
        match *part {
            EpsIndecomposable::Single(s) => {
                partner.push(chains.len());
                chains.push((s, id));
            }
            EpsIndecomposable::Pair(s) => {
                let c = chains.len();
                chains.push((s, id));
                chains.push((s.dual(n), id));
                partner.push(c + 1);
                partner.push(c);
            }
        }
    }
    // Two chains of one Pair may share a segment; tell them apart by position.
    let tagged: Vec<(Segment, u32)> = chains
        .iter()
        .enumerate()
        .map(|(c, &(s, _))| (s, c as u32))
        .collect();
    let real = realize_chains(n, &tagged);
    let eps = i64::from(sym.epsilon);
    let forms = (1..=n)
        .map(|k| {
            let sk = sigma(n, k);
            let (rows, cols) = (&real.basis[k - 1], &real.basis[sk - 1]);
            let mut b = vec![vec![0i64; cols.len()]; rows.len()];
            for (r, &(_, c)) in rows.iter().enumerate() {
                let c = c as usize;
                let p = partner[c];
                let Some(col) = cols.iter().position(|&(_, x)| x as usize == p) else {
                    continue;
                };
                let sign = if k % 2 == 0 { 1 } else { -1 };
                // The first chain of a pair (or a single) carries (-1)^k.
                b[r][col] = if c <= p { sign } else { eps * if sk % 2 == 0 { 1 } else { -1 } };
            }
            b
        })
        .collect();
    Ok(EpsilonRealization {
        real,
        epsilon: sym.epsilon,
        forms,
    })
}

impl EpsilonRealization {
    /// Same change of basis on maps and forms.
    pub fn scrambled(&self, seed: u64) -> EpsilonRealization {
        let mut rng = StdRng::seed_from_u64(seed);
        let g: Vec<(IntMatrix, IntMatrix)> = self.real.spaces.iter().map(|&d| unimodular(d, &mut rng)).collect();
        let n = self.real.n;
        let d = &self.real.spaces;
        let maps = self
            .real
            .maps
            .iter()
            .enumerate()
            .map(|(k, f)| int_mul(&g[k + 1].0, &int_mul(f, &g[k].1, d[k]), d[k]))
            .collect();
        // New basis vectors are the columns of g^{-1}: B' = (g_k^{-1})^T B g_{σ(k)}^{-1}.
        let forms = self
            .forms
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let sk = sigma(n, k + 1) - 1;
                let d = self.real.spaces[k];
                let left = transpose(&g[k].1, d, d);
                let c = self.real.spaces[sk];
                int_mul(&left, &int_mul(b, &g[sk].1, c), c)
            })
            .collect();
        EpsilonRealization {
            real: MatrixRealization {
                maps,
                ..self.real.clone()
            },
            epsilon: self.epsilon,
            forms,
        }
    }

    /// Checks ε-symmetry, non-degeneracy, the anti-adjoint identity
    /// `⟨f_k v, w⟩ + ⟨v, f_{σ(k+1)} w⟩ = 0` and, in split types,
    /// `⟨f_{i,σ(i)} v, v⟩ = 0`. Returns the first failure.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let n = self.real.n;
        let d = &self.real.spaces;
        let eps = i64::from(self.epsilon);
        for k in 1..=n {
            let sk = sigma(n, k);
            let b = &self.forms[k - 1];
            let bt = transpose(b, d[k - 1], d[sk - 1]);
            let partner = &self.forms[sk - 1];
            let scaled: IntMatrix = bt.iter().map(|r| r.iter().map(|v| eps * v).collect()).collect();
            if *partner != scaled {
                return Err(format!("form at {k} is not ε-symmetric"));
            }
            if d[k - 1] != d[sk - 1] || rank_i64(d[k - 1], d[sk - 1], b) != d[k - 1] {
                return Err(format!("form at {k} is degenerate"));
            }
        }
        for k in 1..n {
            let sk1 = sigma(n, k + 1);
            let lhs = int_mul(&transpose(&self.real.maps[k - 1], d[k], d[k - 1]), &self.forms[k], d[sk1 - 1]);
            let rhs = int_mul(&self.forms[k - 1], &self.real.maps[sk1 - 1], d[sk1 - 1]);
            let bad = lhs.iter().flatten().zip(rhs.iter().flatten()).any(|(a, b)| a + b != 0);
            if bad {
                return Err(format!("anti-adjoint identity fails on f_{k}"));
            }
        }
        let split = (n % 2 == 1 && eps == -1) || (n % 2 == 0 && eps == 1);
        if split {
            for i in 1..=n {
                let si = sigma(n, i);
                if si < i {
                    continue;
                }
                let f = self.real.composite(i, si);
                let a = int_mul(&transpose(&f, d[si - 1], d[i - 1]), &self.forms[si - 1], d[i - 1]);
                for r in 0..d[i - 1] {
                    for c in 0..d[i - 1] {
                        if a[r][c] + a[c][r] != 0 || (r == c && a[r][r] != 0) {
                            return Err(format!("⟨f_{{{i},{si}}} v, v⟩ ≠ 0 at {i}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Ordinary,
    Symmetric,
}

/// Breadth-first closure under single moves. `bound` caps the rank sum of
/// the start. Symmetric closure needs an ε-structure (`sym`).
pub fn closure_enumerate(
    rep: &Representation,
    kind: MoveKind,
    sym: Option<crate::symdegen::SymmetricType>,
    bound: u64,
) -> Result<BTreeSet<Representation>> {
    let size = ranks_of(rep).sum();
    if size > bound {
        return Err(Error::InstanceTooLarge { size, bound });
    }
    let mut seen = BTreeSet::new();
    seen.insert(rep.clone());
    let mut queue = VecDeque::from([rep.clone()]);
    let start_eps = match kind {
        MoveKind::Symmetric => {
            let sym = sym.ok_or_else(|| Error::InvalidInput("symmetric closure needs a type".into()))?;
            Some(EpsilonRep::new(rep.clone(), sym)?.sym())
        }
        MoveKind::Ordinary => None,
    };
    while let Some(cur) = queue.pop_front() {
        for mv in applicable_moves(&cur) {
            let next = match start_eps {
                None => apply_move(&cur, mv)?,
                Some(sym) => {
                    let e = EpsilonRep::new(cur.clone(), sym)?;
                    match apply_sym_move(&e, SymMove::from_move(mv)) {
                        Ok(out) => out.rep().clone(),
                        Err(Error::InsufficientMultiplicity { .. }) | Err(Error::InvalidMove(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
            };
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::hom_dim;
    use crate::symdegen::SymmetricType;

    fn rep(n: usize, t: &[(usize, usize, u32)]) -> Representation {
        Representation::from_triples(n, t.iter().copied()).unwrap()
    }

    #[test]
    fn single_arrow() {
        let r = realize_matrices(&rep(2, &[(1, 2, 1)]));
        assert_eq!(r.maps, vec![vec![vec![1]]]);
    }

    #[test]
    fn zero_maps_give_diagonal_ranks() {
        let m = rep(3, &[(1, 1, 2), (2, 2, 1), (3, 3, 3)]);
        let r = rank_seq_bruteforce(&realize_matrices(&m));
        assert_eq!(r, ranks_of(&m));
        assert_eq!(r.value(1, 2), 0);
    }

    #[test]
    fn scrambling_keeps_ranks_and_hom() {
        let m = rep(4, &[(1, 3, 2), (2, 4, 1), (3, 3, 1)]);
        let n = rep(4, &[(2, 3, 1), (1, 4, 1)]);
        let rm = realize_matrices(&m).scrambled(7);
        assert_ne!(rm.maps, realize_matrices(&m).maps);
        assert_eq!(rank_seq_bruteforce(&rm), ranks_of(&m));
        let rn = realize_matrices(&n).scrambled(8);
        assert_eq!(hom_dim_bruteforce(&rm, &rn).unwrap(), hom_dim(&m, &n).unwrap());
    }

    #[test]
    fn hom_of_self_counts_summands() {
        let m = rep(3, &[(1, 2, 1), (2, 3, 2), (1, 3, 1)]);
        let r = realize_matrices(&m);
        assert!(hom_dim_bruteforce(&r, &r).unwrap() >= u64::from(m.num_summands()));
    }

    #[test]
    fn symplectic_middle_space() {
        let sym = SymmetricType::new(3, -1).unwrap();
        let e = EpsilonRep::new(rep(3, &[(1, 3, 2)]), sym).unwrap();
        let r = realize_epsilon_form(&e).unwrap();
        assert_eq!(r.forms[1], vec![vec![0, 1], vec![-1, 0]]);
        r.verify().unwrap();
        r.scrambled(3).verify().unwrap();
    }

    #[test]
    fn orthogonal_single() {
        let sym = SymmetricType::new(3, 1).unwrap();
        let e = EpsilonRep::new(rep(3, &[(1, 3, 1), (2, 2, 1)]), sym).unwrap();
        let r = realize_epsilon_form(&e).unwrap();
        r.verify().unwrap();
        assert_eq!(rank_seq_bruteforce(&r.real), e.ranks());
    }

    #[test]
    fn trivial_closures() {
        let s = rep(2, &[(1, 1, 1), (2, 2, 1)]);
        let c = closure_enumerate(&s, MoveKind::Ordinary, None, 100).unwrap();
        assert_eq!(c.len(), 1);
        let u = rep(2, &[(1, 2, 1)]);
        let c = closure_enumerate(&u, MoveKind::Ordinary, None, 100).unwrap();
        assert_eq!(c, BTreeSet::from([u.clone(), s]));
        assert!(matches!(
            closure_enumerate(&u, MoveKind::Ordinary, None, 1),
            Err(Error::InstanceTooLarge { .. })
        ));
    }
}
