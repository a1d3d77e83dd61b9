//! Weyl groups of types A and C as permutations and signed permutations.
//!
//! Conventions: `s_a` (`a < m`) swaps `a` and `a+1`; in type C, `s_m`
//! negates `m`. A word `s_{a1} ... s_{ak}` denotes the composite
//! `x -> s_{a1}(...(s_{ak}(x)))`, so evaluating left to right amounts to
//! right-multiplication, which acts on one-line notation by swapping
//! positions `a, a+1` (or negating position `m`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylType {
    A,
    C,
}

/// A bijection of `[1..m]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PermutationA {
    images: Vec<usize>,
}

impl PermutationA {
    pub fn identity(m: usize) -> Self {
        PermutationA {
            images: (1..=m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &v in &images {
            if v == 0 || v > m || seen[v] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(PermutationA { images })
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.m()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        PermutationA { images: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count())
            .sum()
    }
}

/// A signed permutation of `[1..m]`, `w(-x) = -w(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    images: Vec<i64>,
}

impl SignedPermutation {
    pub fn identity(m: usize) -> Self {
        SignedPermutation {
            images: (1..=m as i64).collect(),
        }
    }

    pub fn from_images(images: Vec<i64>) -> Result<Self> {
        let abs: Vec<usize> = images.iter().map(|v| v.unsigned_abs() as usize).collect();
        PermutationA::from_images(abs)?;
        Ok(SignedPermutation { images })
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i64] {
        &self.images
    }

    pub fn apply(&self, x: i64) -> i64 {
        let v = self.images[x.unsigned_abs() as usize - 1];
        if x < 0 {
            -v
        } else {
            v
        }
    }

    /// Number of positive roots `e_a ± e_b (a < b)`, `2e_a` sent to negative roots.
    pub fn length(&self) -> usize {
        let m = self.m() as i64;
        // A root is positive when its entry of smallest index is positive.
        let positive = |x: i64, y: Option<i64>| -> bool {
            match y {
                None => x > 0,
                Some(y) => {
                    if x.abs() < y.abs() {
                        x > 0
                    } else {
                        y > 0
                    }
                }
            }
        };
        let mut count = 0;
        for a in 1..=m {
            if !positive(self.apply(a), None) {
                count += 1;
            }
            for b in a + 1..=m {
                if !positive(self.apply(a), Some(-self.apply(b))) {
                    count += 1;
                }
                if !positive(self.apply(a), Some(self.apply(b))) {
                    count += 1;
                }
            }
        }
        count
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylElement {
    A(PermutationA),
    C(SignedPermutation),
}

impl WeylElement {
    pub fn identity(ty: WeylType, m: usize) -> Self {
        match ty {
            WeylType::A => WeylElement::A(PermutationA::identity(m)),
            WeylType::C => WeylElement::C(SignedPermutation::identity(m)),
        }
    }

    pub fn weyl_type(&self) -> WeylType {
        match self {
            WeylElement::A(_) => WeylType::A,
            WeylElement::C(_) => WeylType::C,
        }
    }

    pub fn m(&self) -> usize {
        match self {
            WeylElement::A(p) => p.m(),
            WeylElement::C(p) => p.m(),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            WeylElement::A(p) => p.length(),
            WeylElement::C(p) => p.length(),
        }
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        match self {
            WeylElement::A(p) => p.m().saturating_sub(1),
            WeylElement::C(p) => p.m(),
        }
    }

    /// `w · s_a`.
    pub fn times_generator(&self, a: usize) -> Self {
        let mut out = self.clone();
        match &mut out {
            WeylElement::A(p) => p.images.swap(a - 1, a),
            WeylElement::C(p) => {
                if a == p.m() {
                    p.images[a - 1] = -p.images[a - 1];
                } else {
                    p.images.swap(a - 1, a);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.weyl_type(), self.m())
    }

    /// One-line notation, e.g. `[2, -1, 3]`.
    pub fn one_line(&self) -> Vec<i64> {
        match self {
            WeylElement::A(p) => p.images.iter().map(|&v| v as i64).collect(),
            WeylElement::C(p) => p.images.clone(),
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord {
    pub ty: WeylType,
    pub m: usize,
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(ty: WeylType, m: usize, letters: Vec<usize>) -> Result<Self> {
        let max = match ty {
            WeylType::A => m.saturating_sub(1),
            WeylType::C => m,
        };
        if let Some(&bad) = letters.iter().find(|&&a| a == 0 || a > max) {
            return Err(Error::InvalidInput(format!(
                "generator s{bad} out of range for {ty:?} on {m} symbols"
            )));
        }
        Ok(WeylWord { ty, m, letters })
    }

    /// Parses `"s4 s3 s4"`; bare integers are accepted too.
    pub fn parse(ty: WeylType, m: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| {
                let digits = tok.strip_prefix('s').unwrap_or(tok);
                usize::from_str(digits)
                    .map_err(|_| Error::InvalidInput(format!("bad generator {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ty, m, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|a| format!("s{a}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn evaluate(word: &WeylWord) -> WeylElement {
    word.letters
        .iter()
        .fold(WeylElement::identity(word.ty, word.m), |w, &a| w.times_generator(a))
}

pub fn length(el: &WeylElement) -> usize {
    el.length()
}

pub fn is_reduced(word: &WeylWord) -> bool {
    evaluate(word).length() == word.len()
}

/// Bruhat order via the lifting property: for a right descent `s` of `w`,
/// `u <= w` iff `min(u, us) <= ws`.
pub fn bruhat_leq(u: &WeylElement, w: &WeylElement) -> Result<bool> {
    if u.weyl_type() != w.weyl_type() || u.m() != w.m() {
        return Err(Error::InvalidInput("Bruhat comparison across groups".into()));
    }
    let mut u = u.clone();
    let mut w = w.clone();
    loop {
        let lw = w.length();
        if u.length() > lw {
            return Ok(false);
        }
        let Some(a) = (1..=w.rank()).find(|&a| w.times_generator(a).length() < lw) else {
            return Ok(u.is_identity());
        };
        let us = u.times_generator(a);
        if us.length() < u.length() {
            u = us;
        }
        w = w.times_generator(a);
    }
}
