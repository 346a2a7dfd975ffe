//! Independent verification of branching laws, no machine involved.
//!
//! The representation P(J) for nonperiodic J of length k is realized as a
//! branching function system on a countable set Λ: Λ carries k base points
//! n_0,…,n_{k−1} forming the cycle (f_{j_{t+1}}(n_{t+1}) = n_t, indices mod
//! k), and every other point is f_W(n_t) for a unique reduced word W. Points
//! are stored symbolically as such pairs (W, t) in normal form.
//!
//! The endomorphism ψ_σ acts by the substitution rule
//! f^(σ)_i ∘ f_K = f_{σ(i·K)} for every K of length l−1 (f^(σ)_i = f_{σ(i)}
//! when l = 1). Branching components of P(J)∘ψ_σ are precisely the cycles of
//! the transformed system {f^(σ)_i}, which this module finds by brute force:
//! every cycle point has a short normal form, so walking the parent map
//! (the inverse branch of f^(σ)) from all short points discovers every
//! cycle. Agreement with the machine-computed law is what `compare` checks.

use crate::branching::{self, BranchError};
use crate::perm::{unrank, MultiIndexPermutation};
use crate::word::Word;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("the symbolic system requires a nonperiodic word, got {0}")]
    PeriodicWord(Word),
    #[error(transparent)]
    Branch(#[from] BranchError),
}

/// A point f_W(n_t) of Λ in normal form: either the prefix W is empty (a
/// base point of the cycle) or its last letter differs from the cycle
/// letter at position t, so no reduction f_{j_t}(n_t) = n_{t−1} applies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicPoint {
    prefix: Vec<u32>,
    position: usize,
}

impl SymbolicPoint {
    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn is_base(&self) -> bool {
        self.prefix.is_empty()
    }
}

impl fmt::Display for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "(e,{})", self.position)
        } else {
            let wide = self.prefix.iter().any(|&letter| letter > 9);
            let letters: Vec<String> = self.prefix.iter().map(|l| l.to_string()).collect();
            write!(
                f,
                "({},{})",
                letters.join(if wide { "," } else { "" }),
                self.position
            )
        }
    }
}

/// The symbolic branching function system realizing P(J).
#[derive(Debug, Clone)]
pub struct SymbolicBfs {
    n: u32,
    j: Word,
}

/// One cycle of the transformed system: its points (least first, then in
/// walk order) and the input word traversing it, so that
/// f^(σ)_{output} fixes `points[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundCycle {
    pub points: Vec<SymbolicPoint>,
    pub output: Word,
}

/// Result of checking the machine against the oracle on one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub machine: Vec<Word>,
    pub oracle: Vec<Word>,
}

impl Comparison {
    pub fn agree(&self) -> bool {
        self.machine == self.oracle
    }
}

impl SymbolicBfs {
    pub fn new(j: &Word) -> Result<Self, OracleError> {
        if !j.is_nonperiodic() {
            return Err(OracleError::PeriodicWord(j.clone()));
        }
        Ok(SymbolicBfs {
            n: j.alphabet_size(),
            j: j.clone(),
        })
    }

    pub fn cycle_word(&self) -> &Word {
        &self.j
    }

    fn k(&self) -> usize {
        self.j.len()
    }

    /// Cycle letter at 0-based position t.
    fn cyc(&self, t: usize) -> u32 {
        self.j.letters()[t]
    }

    /// The base point n_t.
    pub fn base(&self, t: usize) -> SymbolicPoint {
        assert!(t < self.k());
        SymbolicPoint {
            prefix: Vec::new(),
            position: t,
        }
    }

    /// The normal form of f_{prefix}(n_position).
    pub fn point(&self, prefix: &[u32], position: usize) -> SymbolicPoint {
        assert!(position < self.k());
        assert!(prefix.iter().all(|&letter| (1..=self.n).contains(&letter)));
        self.normalize(prefix.to_vec(), position)
    }

    fn normalize(&self, mut prefix: Vec<u32>, mut position: usize) -> SymbolicPoint {
        let k = self.k();
        while prefix.last() == Some(&self.cyc(position)) {
            prefix.pop();
            position = (position + k - 1) % k;
        }
        SymbolicPoint { prefix, position }
    }

    /// f_i(x): prepend the branch letter, then reduce.
    pub fn apply_f(&self, i: u32, x: &SymbolicPoint) -> SymbolicPoint {
        assert!((1..=self.n).contains(&i));
        let mut prefix = Vec::with_capacity(x.prefix.len() + 1);
        prefix.push(i);
        prefix.extend_from_slice(&x.prefix);
        self.normalize(prefix, x.position)
    }

    /// A raw (unnormalized) representation (W′, t′) of `x` with |W′| ≥ m,
    /// obtained by unfolding the cycle relation n_t = f_{j_{t+1}}(n_{t+1}).
    pub fn expand(&self, x: &SymbolicPoint, m: usize) -> (Vec<u32>, usize) {
        let k = self.k();
        let mut prefix = x.prefix.clone();
        let mut position = x.position;
        while prefix.len() < m {
            position = (position + 1) % k;
            prefix.push(self.cyc(position));
        }
        (prefix, position)
    }

    /// f^(σ)_i(x) via the substitution rule on a length-(l−1) factor.
    pub fn apply_f_sigma(
        &self,
        sigma: &MultiIndexPermutation,
        i: u32,
        x: &SymbolicPoint,
    ) -> Result<SymbolicPoint, OracleError> {
        self.check_alphabet(sigma)?;
        assert!((1..=self.n).contains(&i));
        let l = sigma.block_length() as usize;
        let (raw, position) = self.expand(x, l - 1);
        let mut block = Vec::with_capacity(l);
        block.push(i);
        block.extend_from_slice(&raw[..l - 1]);
        let image = sigma
            .apply(&Word::from_valid(self.n, block))
            .expect("length-l word over the right alphabet");
        let mut prefix = image.letters().to_vec();
        prefix.extend_from_slice(&raw[l - 1..]);
        Ok(self.normalize(prefix, position))
    }

    /// The unique (i, y) with f^(σ)_i(y) = x: expand to l letters, pull the
    /// leading block back through σ⁻¹ and split off its first letter.
    pub fn parent(
        &self,
        sigma_inverse: &MultiIndexPermutation,
        x: &SymbolicPoint,
    ) -> (u32, SymbolicPoint) {
        let l = sigma_inverse.block_length() as usize;
        let (raw, position) = self.expand(x, l);
        let block = sigma_inverse
            .apply(&Word::from_valid(self.n, raw[..l].to_vec()))
            .expect("length-l word over the right alphabet");
        let i = block.letters()[0];
        let mut prefix = block.letters()[1..].to_vec();
        prefix.extend_from_slice(&raw[l..]);
        (i, self.normalize(prefix, position))
    }

    /// All cycles of {f^(σ)_i}. Applying `parent` shortens any prefix of
    /// length ≥ l and keeps lengths < l, so every cycle lives among the
    /// points with prefix length ≤ l−1; walking `parent` from each of those
    /// finds each cycle exactly once.
    pub fn find_cycles(
        &self,
        sigma: &MultiIndexPermutation,
    ) -> Result<Vec<FoundCycle>, OracleError> {
        self.check_alphabet(sigma)?;
        let inverse = sigma.inverse();
        let l = sigma.block_length() as usize;
        let mut candidates: BTreeSet<SymbolicPoint> = BTreeSet::new();
        for p in 0..l {
            for r in 0..(self.n as usize).pow(p as u32) {
                let raw = unrank(self.n, p as u32, r);
                for t in 0..self.k() {
                    candidates.insert(self.normalize(raw.clone(), t));
                }
            }
        }

        let mut resolved: HashSet<SymbolicPoint> = HashSet::new();
        let mut cycles: Vec<FoundCycle> = Vec::new();
        for start in candidates {
            if resolved.contains(&start) {
                continue;
            }
            let mut path: Vec<SymbolicPoint> = vec![start];
            let mut letters: Vec<u32> = Vec::new();
            let mut index: HashMap<SymbolicPoint, usize> = HashMap::new();
            index.insert(path[0].clone(), 0);
            loop {
                let (letter, next) = self.parent(&inverse, path.last().unwrap());
                letters.push(letter);
                if let Some(&at) = index.get(&next) {
                    // closed a new cycle: path[at..] with letters[at..]
                    let mut points = path[at..].to_vec();
                    let mut word = letters[at..].to_vec();
                    let least = points
                        .iter()
                        .enumerate()
                        .min_by_key(|&(_, point)| point.clone())
                        .map(|(pos, _)| pos)
                        .unwrap();
                    points.rotate_left(least);
                    word.rotate_left(least);
                    cycles.push(FoundCycle {
                        points,
                        output: Word::from_valid(self.n, word),
                    });
                    break;
                }
                if resolved.contains(&next) {
                    break;
                }
                index.insert(next.clone(), path.len());
                path.push(next);
            }
            resolved.extend(path);
        }
        cycles.sort_by(|a, b| a.points[0].cmp(&b.points[0]));
        Ok(cycles)
    }

    fn check_alphabet(&self, sigma: &MultiIndexPermutation) -> Result<(), OracleError> {
        if sigma.alphabet_size() != self.n {
            return Err(OracleError::Branch(BranchError::AlphabetMismatch {
                sigma_n: sigma.alphabet_size(),
                word_n: self.n,
            }));
        }
        Ok(())
    }
}

/// Runs both the machine algorithm and the oracle on (σ, J) and reports the
/// two canonical component multisets.
pub fn compare(sigma: &MultiIndexPermutation, j: &Word) -> Result<Comparison, OracleError> {
    let system = SymbolicBfs::new(j)?;
    let machine = branching::branch(sigma, j)?.component_multiset();
    let mut oracle: Vec<Word> = system
        .find_cycles(sigma)?
        .iter()
        .map(|cycle| cycle.output.canonical())
        .collect();
    oracle.sort();
    Ok(Comparison { machine, oracle })
}
