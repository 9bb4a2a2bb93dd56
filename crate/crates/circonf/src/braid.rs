//! Braid words with a decidable word problem.
//!
//! Words are sequences of signed Artin generators acting left to right
//! (diagrams read bottom to top). Equality is decided through the classical
//! Garside normal form `Δ^p · ξ_1 ⋯ ξ_ℓ` with left-weighted permutation-braid
//! factors; Dehornoy handle reduction is implemented as a second, independent
//! solver and used to cross-validate the first in tests.

use crate::forest::TypePartition;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("generator index {letter} out of range for {strands} strands")]
    LetterOutOfRange { strands: usize, letter: i32 },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("partition covers {partition} positions but the word has {strands} strands")]
    PartitionMismatch { strands: usize, partition: usize },
    #[error("images do not form a permutation")]
    NotAPermutation,
    #[error("invalid braid word text: {0}")]
    ParseWord(String),
}

/// A permutation of `{1..n}`, stored 0-based: position `i` maps to
/// `images[i]`. Composition is left to right, matching word composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, BraidError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(BraidError::NotAPermutation);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// The adjacent transposition for generator `i` (1-based): swaps
    /// positions `i − 1` and `i`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        debug_assert!(i >= 1 && i < n);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// The half-twist permutation `i ↦ n − 1 − i`.
    pub fn half_twist(n: usize) -> Self {
        Permutation { images: (0..n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of 0-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), next.n());
        Permutation { images: self.images.iter().map(|&i| next.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// 1-based generator indices `i` with `images[i−1] > images[i]`: the
    /// generators that left-divide this permutation braid.
    fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.images[i - 1] > self.images[i]).collect()
    }
}

/// A word in the Artin generators of `B_n`: letter `±i` is `σ_i^{±1}`,
/// `1 ≤ i ≤ n − 1`. The empty word is the identity; words compose by
/// concatenation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands.max(1) {
                return Err(BraidError::LetterOutOfRange { strands, letter: l });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// The single generator `σ_i^{±1}` given as a signed index.
    pub fn generator(strands: usize, letter: i32) -> Result<Self, BraidError> {
        BraidWord::new(strands, vec![letter])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Free-group inverse: letters reversed with signs flipped.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Parses the comma-separated signed-integer format, e.g. `1,2,-1`;
    /// an empty (or all-whitespace) string is the identity.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BraidError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(BraidWord::identity(strands));
        }
        let letters = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i32>()
                    .map_err(|_| BraidError::ParseWord(format!("bad letter {tok:?}")))
            })
            .collect::<Result<Vec<i32>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The homomorphic image in the symmetric group: generator `±i` maps to the
/// transposition `(i, i+1)`, letters applied left to right.
pub fn permutation_of(w: &BraidWord) -> Permutation {
    let mut p = Permutation::identity(w.strands);
    for &l in &w.letters {
        p = p.then(&Permutation::adjacent(w.strands, l.unsigned_abs() as usize));
    }
    p
}

/// `true` iff the word lies in the pure braid group.
pub fn is_pure(w: &BraidWord) -> bool {
    permutation_of(w).is_identity()
}

/// `true` iff the underlying permutation maps each block of `pi` into itself,
/// i.e. the word lies in the block subgroup `B_m^Π`.
pub fn in_block_subgroup(w: &BraidWord, pi: &TypePartition) -> Result<bool, BraidError> {
    if pi.m() != w.strands {
        return Err(BraidError::PartitionMismatch { strands: w.strands, partition: pi.m() });
    }
    let p = permutation_of(w);
    Ok((0..w.strands).all(|i| pi.block_id(p.apply(i)) == pi.block_id(i)))
}

/// The Garside normal form `Δ^power · factors`, with every factor a
/// permutation braid that is neither trivial nor `Δ`, and each adjacent pair
/// left-weighted. Two words represent the same element of `B_n` exactly when
/// their normal forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GarsideNormalForm {
    pub strands: usize,
    pub power: i64,
    pub factors: Vec<Permutation>,
}

impl GarsideNormalForm {
    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.factors.is_empty()
    }
}

/// Computes the left-weighted Garside normal form of a word.
pub fn normal_form(w: &BraidWord) -> GarsideNormalForm {
    let n = w.strands;
    if n < 2 {
        return GarsideNormalForm { strands: n, power: 0, factors: Vec::new() };
    }
    let delta = Permutation::half_twist(n);
    let tau = |p: &Permutation| delta.then(p).then(&delta);

    // Rewrite as Δ^power · (product of permutation braids): a positive letter
    // is already simple; σ_i⁻¹ = Δ⁻¹ · Y with Y the half-twist missing its
    // first crossing, and the Δ⁻¹ commutes leftward by flipping factors.
    let mut power: i64 = 0;
    let mut factors: Vec<Permutation> = Vec::new();
    for &l in &w.letters {
        let t = Permutation::adjacent(n, l.unsigned_abs() as usize);
        if l > 0 {
            factors.push(t);
        } else {
            power -= 1;
            for f in &mut factors {
                *f = tau(f);
            }
            factors.push(delta.then(&t));
        }
    }

    // Local left-weighting sweeps: slide generators from the front of each
    // factor into the tail of its left neighbor until every adjacent pair is
    // left-weighted. Full Δ factors accumulate at the front and trivial
    // factors at the back, where they are absorbed or dropped.
    loop {
        let mut changed = false;
        for k in 0..factors.len().saturating_sub(1) {
            let (left, right) = factors.split_at_mut(k + 1);
            let a = &mut left[k];
            let b = &mut right[0];
            loop {
                let finishing = a.inverse().descents();
                let Some(&i) = b.descents().iter().find(|i| !finishing.contains(i)) else {
                    break;
                };
                let t = Permutation::adjacent(n, i);
                *a = a.then(&t);
                *b = t.then(b);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    while factors.first() == Some(&delta) {
        factors.remove(0);
        power += 1;
    }
    while factors.last().is_some_and(Permutation::is_identity) {
        factors.pop();
    }
    GarsideNormalForm { strands: n, power, factors }
}

/// Decidable equality in `B_n` via normal forms.
pub fn braids_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool, BraidError> {
    if w1.strands != w2.strands {
        return Err(BraidError::StrandMismatch(w1.strands, w2.strands));
    }
    Ok(normal_form(w1) == normal_form(w2))
}

/// Dehornoy handle reduction. The output represents the same element and
/// contains no handles; it is empty exactly when the word is trivial.
///
/// A `σ_i`-handle is a factor `σ_i^e u σ_i^{−e}` whose interior `u` uses only
/// generators with index above `i`. Reducing it removes the two outer letters
/// and rewrites each `σ_{i+1}^d` in `u` as `σ_{i+1}^{−e} σ_i^d σ_{i+1}^e`.
/// Always reducing the handle that closes earliest keeps every reduction
/// permitted, which is what guarantees termination.
pub fn handle_reduce(w: &BraidWord) -> BraidWord {
    let mut letters = w.letters.clone();
    while let Some((s, t)) = first_handle(&letters) {
        let e = letters[s].signum();
        let i = letters[s].unsigned_abs() as i32;
        let mut replacement: Vec<i32> = Vec::with_capacity(3 * (t - s));
        for &l in &letters[s + 1..t] {
            if l.unsigned_abs() as i32 == i + 1 {
                replacement.push(-e * (i + 1));
                replacement.push(l.signum() * i);
                replacement.push(e * (i + 1));
            } else {
                replacement.push(l);
            }
        }
        letters.splice(s..=t, replacement);
    }
    BraidWord { strands: w.strands, letters }
}

/// The handle with the smallest closing position, if any: scanning back from
/// `t`, the nearest occurrence of the same generator index must carry the
/// opposite sign, with nothing of smaller index in between.
fn first_handle(letters: &[i32]) -> Option<(usize, usize)> {
    for t in 0..letters.len() {
        let gen = letters[t].unsigned_abs();
        for s in (0..t).rev() {
            let other = letters[s].unsigned_abs();
            if other < gen {
                break;
            }
            if other == gen {
                if letters[s] == -letters[t] {
                    return Some((s, t));
                }
                break;
            }
        }
    }
    None
}
