//! Finite words over the alphabet `{1, …, N}`.
//!
//! Words are the multi-indices everything else is built on: inputs of the
//! permutations, labels of cyclic representations, and outputs of branching
//! laws. Letters are 1-based. The big-endian value of a word of length `k`
//! is `Σ (j_m − 1)·N^(k−m)`, so for a fixed length the value order is exactly
//! the lexicographic order on letters.
//!
//! Text form: for `N ≤ 9` a word renders as a digit string (`113223`); for
//! `N ≥ 10` it renders comma-separated (`10,2,7`). Parsers accept the comma
//! form for any `N` and the digit form only when `N ≤ 9`.

use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("words must have at least one letter")]
    Empty,
    #[error("letter {letter} out of range for alphabet {{1..{n}}}")]
    LetterOutOfRange { letter: u32, n: u32 },
    #[error("cannot parse word {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A nonempty word over `{1, …, N}` with `N ≥ 2`.
///
/// The container order is (length, letters); for equal lengths this agrees
/// with the value order. Words over different alphabets never mix in ordered
/// containers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: u32,
    letters: Vec<u32>,
}

impl Word {
    /// Builds a word, validating the alphabet size and every letter.
    pub fn new(n: u32, letters: Vec<u32>) -> Result<Self, WordError> {
        if n < 2 {
            return Err(WordError::AlphabetTooSmall(n));
        }
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        for &letter in &letters {
            if letter < 1 || letter > n {
                return Err(WordError::LetterOutOfRange { letter, n });
            }
        }
        Ok(Word { n, letters })
    }

    /// Parses the text form. The comma form (`1,2,3`) is always accepted;
    /// the digit form (`123`) only for `N ≤ 9`.
    pub fn parse(input: &str, n: u32) -> Result<Self, WordError> {
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Err(WordError::Parse {
                input: input.to_string(),
                reason: "empty input".to_string(),
            });
        }
        let parse_err = |reason: String| WordError::Parse {
            input: input.to_string(),
            reason,
        };
        let letters = if trimmed.contains(',') {
            trimmed
                .split(',')
                .map(|part| {
                    let part = part.trim();
                    part.parse::<u32>()
                        .map_err(|_| parse_err(format!("bad letter {part:?}")))
                        .and_then(|letter| {
                            if letter == 0 {
                                Err(parse_err("letter 0 is not valid; letters are 1-based".into()))
                            } else {
                                Ok(letter)
                            }
                        })
                })
                .collect::<Result<Vec<_>, _>>()?
        } else {
            if n > 9 {
                return Err(parse_err(format!(
                    "digit form is ambiguous for alphabet size {n}; use the comma form"
                )));
            }
            trimmed
                .chars()
                .map(|c| match c.to_digit(10) {
                    Some(0) => Err(parse_err("letter 0 is not valid; letters are 1-based".into())),
                    Some(d) => Ok(d),
                    None => Err(parse_err(format!("bad character {c:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Word::new(n, letters)
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    /// The big-endian value `Σ (j_m − 1)·N^(k−m)`; 0 for the all-ones word.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::from(0u32);
        for &letter in &self.letters {
            acc = acc * self.n + (letter - 1);
        }
        acc
    }

    /// Cyclic rotation: position `1+shift` (mod `k`) of `self` becomes
    /// position 1 of the result, so `rotate(1)` maps `(1,2,3)` to `(2,3,1)`.
    pub fn rotate(&self, shift: i64) -> Word {
        let k = self.letters.len();
        let s = shift.rem_euclid(k as i64) as usize;
        let mut letters = self.letters.clone();
        letters.rotate_left(s);
        Word { n: self.n, letters }
    }

    /// All `k` rotations, starting with `self` (shift 0, 1, …, k−1).
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.letters.len() as i64).map(|s| self.rotate(s))
    }

    /// The least rotation (Booth's algorithm), which minimizes the value
    /// among all rotations. Periodic words are allowed.
    pub fn canonical(&self) -> Word {
        self.rotate(least_rotation_start(&self.letters) as i64)
    }

    /// The shortest word `B` with `self = B^r`, together with `r`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let k = self.letters.len();
        for d in 1..=k {
            if k % d != 0 {
                continue;
            }
            let head = &self.letters[..d];
            if self.letters.chunks(d).all(|chunk| chunk == head) {
                return (
                    Word {
                        n: self.n,
                        letters: head.to_vec(),
                    },
                    k / d,
                );
            }
        }
        unreachable!("every word is a power of itself")
    }

    /// True iff the primitive root is the word itself.
    pub fn is_nonperiodic(&self) -> bool {
        self.primitive_root().1 == 1
    }

    /// True iff `other` is a rotation of `self`. Both words must be over the
    /// same alphabet.
    pub fn cyclically_equivalent(&self, other: &Word) -> bool {
        assert_eq!(self.n, other.n, "words over different alphabets");
        self.letters.len() == other.letters.len() && self.canonical() == other.canonical()
    }

    /// Concatenation. Both words must be over the same alphabet.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.n, other.n, "words over different alphabets");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { n: self.n, letters }
    }

    /// The `r`-fold repetition, `r ≥ 1`.
    pub fn power(&self, r: usize) -> Word {
        assert!(r >= 1, "power requires r >= 1");
        Word {
            n: self.n,
            letters: self.letters.repeat(r),
        }
    }

    /// Internal constructor for letters already known to be valid.
    pub(crate) fn from_valid(n: u32, letters: Vec<u32>) -> Word {
        debug_assert!(Word::new(n, letters.clone()).is_ok());
        Word { n, letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 9 {
            for &letter in &self.letters {
                write!(f, "{letter}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All canonical nonperiodic words over `{1,…,n}` of length at most
/// `max_len`, in (length, value) order — one representative per cyclic
/// equivalence class of nonperiodic words.
///
/// These are exactly the Lyndon words over the ordered alphabet, generated
/// by Duval's algorithm and then re-sorted from lexicographic to
/// length-major order.
pub fn canonical_nonperiodic_words(n: u32, max_len: usize) -> Vec<Word> {
    assert!(n >= 2, "alphabet size must be at least 2");
    if max_len == 0 {
        return Vec::new();
    }
    let mut words = Vec::new();
    let mut current: Vec<u32> = vec![1];
    loop {
        words.push(Word {
            n,
            letters: current.clone(),
        });
        let period = current.len();
        while current.len() < max_len {
            current.push(current[current.len() - period]);
        }
        while current.last() == Some(&n) {
            current.pop();
        }
        match current.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    words.sort();
    words
}

/// Start index of the lexicographically least rotation (Booth).
fn least_rotation_start(s: &[u32]) -> usize {
    let n = s.len();
    let at = |i: usize| s[i % n];
    let mut f: Vec<i64> = vec![-1; 2 * n];
    let mut k: usize = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 {
            if sj != at(k) {
                if sj < at(k) {
                    k = j;
                }
                f[j - k] = -1;
            } else {
                f[j - k] = 0;
            }
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}
