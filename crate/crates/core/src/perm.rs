//! Permutations σ of the multi-index set `{1,…,N}^l`.
//!
//! A permutation is stored as a table over word ranks, where the rank of a
//! length-`l` word is the fixed big-endian encoding
//! `rank(J) = Σ (j_m − 1)·N^(l−m)`. The same encoding is used by machine
//! states, file formats, and enumeration, so everything agrees bit-for-bit.

use crate::digest::fnv1a_hex;
use crate::word::Word;
use thiserror::Error;

/// Largest table (N^l entries) this crate will materialize.
const MAX_TABLE: usize = 1 << 26;

/// Enumeration refuses alphabets with more than this many length-`l` words
/// unless explicitly overridden (9! = 362880 streams are the intended
/// ceiling).
const ENUMERATION_LIMIT: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("block length must be at least 1")]
    BlockLengthZero,
    #[error("table for alphabet {n} and block length {l} is too large")]
    TooLarge { n: u32, l: u32 },
    #[error("table of length {got} is not a permutation of 0..{expected}")]
    NotAPermutation { expected: usize, got: usize },
    #[error("expected a word of length {expected}, got {got}")]
    LengthMismatch { expected: u32, got: usize },
    #[error("expected a word over alphabet {{1..{expected}}}, got one over {{1..{got}}}")]
    AlphabetMismatch { expected: u32, got: u32 },
    #[error("component range {from}..={to} invalid for block length {l}")]
    RangeViolation { from: u32, to: u32, l: u32 },
    #[error("input {0} appears more than once")]
    DuplicateInput(String),
    #[error("image {0} appears more than once")]
    DuplicateImage(String),
    #[error("{missing} of {total} inputs missing from the pair list")]
    MissingInputs { missing: usize, total: usize },
    #[error("transposition requires two distinct words")]
    EqualTransposition,
    #[error("shape mismatch: alphabet {n1} block {l1} vs alphabet {n2} block {l2}")]
    ShapeMismatch { n1: u32, l1: u32, n2: u32, l2: u32 },
    #[error("enumeration of permutations on {size} words refused (limit {ENUMERATION_LIMIT}); enable the override to proceed")]
    EnumerationGuard { size: usize },
}

/// Number of words of length `len` over `{1..n}`, if it fits.
pub fn word_count(n: u32, len: u32) -> Option<usize> {
    let count = (n as usize).checked_pow(len)?;
    (count <= MAX_TABLE).then_some(count)
}

/// Big-endian rank of `letters` (all in `1..=n`) among words of its length.
pub fn rank(n: u32, letters: &[u32]) -> usize {
    letters
        .iter()
        .fold(0usize, |acc, &letter| acc * n as usize + (letter - 1) as usize)
}

/// Inverse of [`rank`]: the length-`len` word with the given rank.
pub fn unrank(n: u32, len: u32, mut r: usize) -> Vec<u32> {
    let mut letters = vec![0u32; len as usize];
    for slot in letters.iter_mut().rev() {
        *slot = (r % n as usize) as u32 + 1;
        r /= n as usize;
    }
    letters
}

/// A bijection on `{1,…,N}^l`, the set written 𝔖_{N,l}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndexPermutation {
    n: u32,
    l: u32,
    table: Vec<usize>,
}

impl MultiIndexPermutation {
    /// Builds from a rank-indexed table; validates bijectivity.
    pub fn from_table(n: u32, l: u32, table: Vec<usize>) -> Result<Self, PermError> {
        if n < 2 {
            return Err(PermError::AlphabetTooSmall(n));
        }
        if l == 0 {
            return Err(PermError::BlockLengthZero);
        }
        let size = word_count(n, l).ok_or(PermError::TooLarge { n, l })?;
        if table.len() != size {
            return Err(PermError::NotAPermutation {
                expected: size,
                got: table.len(),
            });
        }
        let mut seen = vec![false; size];
        for &image in &table {
            if image >= size || seen[image] {
                return Err(PermError::NotAPermutation {
                    expected: size,
                    got: table.len(),
                });
            }
            seen[image] = true;
        }
        Ok(MultiIndexPermutation { n, l, table })
    }

    pub fn identity(n: u32, l: u32) -> Result<Self, PermError> {
        if n < 2 {
            return Err(PermError::AlphabetTooSmall(n));
        }
        if l == 0 {
            return Err(PermError::BlockLengthZero);
        }
        let size = word_count(n, l).ok_or(PermError::TooLarge { n, l })?;
        Ok(MultiIndexPermutation {
            n,
            l,
            table: (0..size).collect(),
        })
    }

    /// The canonical endomorphism's permutation: `σ(i,j) = (j,i)` on pairs.
    pub fn canonical_shift(n: u32) -> Result<Self, PermError> {
        let mut sigma = Self::identity(n, 2)?;
        for i in 0..n as usize {
            for j in 0..n as usize {
                sigma.table[i * n as usize + j] = j * n as usize + i;
            }
        }
        Ok(sigma)
    }

    /// The transposition exchanging `a` and `b`, fixing everything else.
    pub fn transposition(n: u32, l: u32, a: &Word, b: &Word) -> Result<Self, PermError> {
        let mut sigma = Self::identity(n, l)?;
        let ra = sigma.rank_of(a)?;
        let rb = sigma.rank_of(b)?;
        if ra == rb {
            return Err(PermError::EqualTransposition);
        }
        sigma.table.swap(ra, rb);
        Ok(sigma)
    }

    /// Builds from explicit `(input, image)` pairs covering all of `{1..N}^l`.
    pub fn from_pairs(n: u32, l: u32, pairs: &[(Word, Word)]) -> Result<Self, PermError> {
        if n < 2 {
            return Err(PermError::AlphabetTooSmall(n));
        }
        if l == 0 {
            return Err(PermError::BlockLengthZero);
        }
        let size = word_count(n, l).ok_or(PermError::TooLarge { n, l })?;
        let mut table = vec![usize::MAX; size];
        let mut image_seen = vec![false; size];
        for (input, image) in pairs {
            let ri = checked_rank(n, l, input)?;
            let rj = checked_rank(n, l, image)?;
            if table[ri] != usize::MAX {
                return Err(PermError::DuplicateInput(input.to_string()));
            }
            if image_seen[rj] {
                return Err(PermError::DuplicateImage(image.to_string()));
            }
            table[ri] = rj;
            image_seen[rj] = true;
        }
        let missing = table.iter().filter(|&&e| e == usize::MAX).count();
        if missing > 0 {
            return Err(PermError::MissingInputs {
                missing,
                total: size,
            });
        }
        Ok(MultiIndexPermutation { n, l, table })
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    pub fn block_length(&self) -> u32 {
        self.l
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    fn rank_of(&self, word: &Word) -> Result<usize, PermError> {
        checked_rank(self.n, self.l, word)
    }

    /// σ on ranks; the fast path used by machine construction.
    pub fn apply_rank(&self, r: usize) -> usize {
        self.table[r]
    }

    /// σ(J) for a length-`l` word.
    pub fn apply(&self, j: &Word) -> Result<Word, PermError> {
        let r = self.rank_of(j)?;
        Ok(Word::from_valid(self.n, unrank(self.n, self.l, self.table[r])))
    }

    /// The contiguous slice `(σ_from(J), …, σ_to(J))`, 1-based inclusive.
    pub fn components(&self, j: &Word, from: u32, to: u32) -> Result<Word, PermError> {
        if from < 1 || from > to || to > self.l {
            return Err(PermError::RangeViolation { from, to, l: self.l });
        }
        let image = self.apply(j)?;
        Ok(Word::from_valid(
            self.n,
            image.letters()[(from - 1) as usize..to as usize].to_vec(),
        ))
    }

    pub fn inverse(&self) -> Self {
        let mut table = vec![0usize; self.table.len()];
        for (r, &image) in self.table.iter().enumerate() {
            table[image] = r;
        }
        MultiIndexPermutation {
            n: self.n,
            l: self.l,
            table,
        }
    }

    /// `compose(σ1, σ2)` applies σ2 first: `(σ1∘σ2)(J) = σ1(σ2(J))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.n != other.n || self.l != other.l {
            return Err(PermError::ShapeMismatch {
                n1: self.n,
                l1: self.l,
                n2: other.n,
                l2: other.l,
            });
        }
        let table = other.table.iter().map(|&r| self.table[r]).collect();
        Ok(MultiIndexPermutation {
            n: self.n,
            l: self.l,
            table,
        })
    }

    /// Stable content hash (hex), used to tag branching laws and reports.
    pub fn digest(&self) -> String {
        let mut bytes = Vec::with_capacity(8 + self.table.len() * 8);
        bytes.extend_from_slice(&self.n.to_le_bytes());
        bytes.extend_from_slice(&self.l.to_le_bytes());
        for &entry in &self.table {
            bytes.extend_from_slice(&(entry as u64).to_le_bytes());
        }
        fnv1a_hex(&bytes)
    }

    /// Lazily yields all of 𝔖_{N,l} in lexicographic table order (identity
    /// first). Refuses `N^l` beyond the guard unless `allow_large` is set.
    pub fn enumerate(n: u32, l: u32, allow_large: bool) -> Result<Enumeration, PermError> {
        let first = Self::identity(n, l)?;
        let size = first.table.len();
        if size > ENUMERATION_LIMIT && !allow_large {
            return Err(PermError::EnumerationGuard { size });
        }
        Ok(Enumeration {
            n,
            l,
            next: Some(first.table),
        })
    }
}

/// Iterator over 𝔖_{N,l}; see [`MultiIndexPermutation::enumerate`].
pub struct Enumeration {
    n: u32,
    l: u32,
    next: Option<Vec<usize>>,
}

impl Iterator for Enumeration {
    type Item = MultiIndexPermutation;

    fn next(&mut self) -> Option<Self::Item> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if next_permutation(&mut following) {
            self.next = Some(following);
        }
        Some(MultiIndexPermutation {
            n: self.n,
            l: self.l,
            table: current,
        })
    }
}

/// Validates that `word` is a legal σ argument and returns its rank.
fn checked_rank(n: u32, l: u32, word: &Word) -> Result<usize, PermError> {
    if word.alphabet_size() != n {
        return Err(PermError::AlphabetMismatch {
            expected: n,
            got: word.alphabet_size(),
        });
    }
    if word.len() != l as usize {
        return Err(PermError::LengthMismatch {
            expected: l,
            got: word.len(),
        });
    }
    Ok(rank(n, word.letters()))
}

/// Advances `arr` to its lexicographic successor; false at the last one.
fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}
