//! Branching laws P(J)∘ψ_σ = P(J_1)⊕…⊕P(J_M), computed from the machine.
//!
//! For a nonperiodic input J of length k, the periodic states of
//! q ↦ δ(q, a_J) split into cycles [p_1],…,[p_M]; the i-th component of the
//! branching law is the output word λ(p_i, (a_J)^{r_i}) where r_i is the
//! cycle length. Every |J_i| is then r_i·k and 1 ≤ M ≤ N^{l−1}.
//!
//! Periodic inputs J = J_0^r are reduced to their primitive root J_0 and the
//! law is flagged `gauge_reduced` with `gauge_period` r: P(J) splits into r
//! twisted copies of P(J_0), so its branching is governed by that of J_0 (the
//! twist parameters are out of scope here).

use crate::mealy::SemiMealyMachine;
use crate::perm::{unrank, MultiIndexPermutation};
use crate::word::{canonical_nonperiodic_words, Word};
use std::collections::BTreeMap;
use thiserror::Error;

/// Sweep guard: `signature` refuses when N^max_len exceeds this.
pub const SIGNATURE_CAP: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BranchError {
    #[error("word over alphabet {{1..{word_n}}} does not match a permutation over {{1..{sigma_n}}}")]
    AlphabetMismatch { sigma_n: u32, word_n: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("signature sweep size {n}^{max_len} exceeds the cap {cap}")]
    Guard { n: u32, max_len: usize, cap: u64 },
}

/// One direct summand P(J_i) with the orbit data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchComponent {
    /// J_i in canonical (least-rotation) form.
    pub output: Word,
    /// λ(p_i, (a_J)^{r_i}) exactly as emitted, before canonicalization.
    pub raw_output: Word,
    /// Rank of the cycle representative p_i.
    pub representative: usize,
    /// Cycle length r_i; `output.len() == orbit_size * input.len()`.
    pub orbit_size: usize,
    /// The δ(·,a_J)-cycle through p_i, in traversal order.
    pub states: Vec<usize>,
    /// True iff the output word is periodic, i.e. P(J_i) splits further.
    pub reducible: bool,
}

/// The computed right-hand side of P(J)∘ψ_σ = P(J_1)⊕…⊕P(J_M).
///
/// Components are sorted by (output length, output value), ties broken by
/// representative rank; the ⊕ order carries no meaning, so comparisons
/// should use [`component_multiset`](Self::component_multiset).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingLaw {
    pub sigma_digest: String,
    pub n: u32,
    pub l: u32,
    /// The word actually branched: the primitive root of the requested input.
    pub input: Word,
    pub components: Vec<BranchComponent>,
    pub gauge_reduced: bool,
    /// r with requested = input^r; 1 unless gauge-reduced.
    pub gauge_period: usize,
}

impl BranchingLaw {
    /// The number of direct summands M.
    pub fn m(&self) -> usize {
        self.components.len()
    }

    /// Canonical outputs as a sorted multiset; the comparison key for laws.
    pub fn component_multiset(&self) -> Vec<Word> {
        let mut outputs: Vec<Word> = self.components.iter().map(|c| c.output.clone()).collect();
        outputs.sort();
        outputs
    }

    /// `P(123) o psi = P(222) (+) P(131313)`, or with ∘/ψ/⊕ glyphs.
    pub fn equation(&self, unicode: bool) -> String {
        let (compose, psi, oplus) = if unicode {
            ("∘", "ψ", "⊕")
        } else {
            ("o", "psi", "(+)")
        };
        let right = self
            .components
            .iter()
            .map(|c| format!("P({})", c.output))
            .collect::<Vec<_>>()
            .join(&format!(" {oplus} "));
        format!("P({}) {compose} {psi} = {right}", self.input)
    }
}

/// Computes the branching law of P(J)∘ψ_σ.
///
/// Periodic J is reduced to its primitive root first (see the module docs);
/// otherwise the machine is run on J exactly as given, so the recorded
/// components are rotations of what any other representative of the
/// ∼-class would produce.
pub fn branch(sigma: &MultiIndexPermutation, j: &Word) -> Result<BranchingLaw, BranchError> {
    if sigma.alphabet_size() != j.alphabet_size() {
        return Err(BranchError::AlphabetMismatch {
            sigma_n: sigma.alphabet_size(),
            word_n: j.alphabet_size(),
        });
    }
    let (root, gauge_period) = j.primitive_root();
    let machine = SemiMealyMachine::build(sigma);
    branch_on_machine(sigma, &machine, root, gauge_period)
}

/// [`branch`] against a machine already built for `sigma`; used by sweeps.
fn branch_on_machine(
    sigma: &MultiIndexPermutation,
    machine: &SemiMealyMachine,
    root: Word,
    gauge_period: usize,
) -> Result<BranchingLaw, BranchError> {
    let decomposition = machine.periodic_states(&root);
    let mut components: Vec<BranchComponent> = decomposition
        .orbits
        .iter()
        .map(|orbit| {
            let (back, raw_output) = machine.run(orbit.representative, &root.power(orbit.size));
            debug_assert_eq!(back, orbit.representative, "cycle must close");
            BranchComponent {
                output: raw_output.canonical(),
                reducible: !raw_output.is_nonperiodic(),
                raw_output,
                representative: orbit.representative,
                orbit_size: orbit.size,
                states: orbit.states.clone(),
            }
        })
        .collect();
    components.sort_by(|a, b| {
        a.output
            .cmp(&b.output)
            .then(a.representative.cmp(&b.representative))
    });
    Ok(BranchingLaw {
        sigma_digest: sigma.digest(),
        n: sigma.alphabet_size(),
        l: sigma.block_length(),
        input: root,
        components,
        gauge_reduced: gauge_period > 1,
        gauge_period,
    })
}

/// The defining relations ψ_σ(s_i) = Σ_K s_{σ(i·K)} s_K*, one line per
/// generator, K running over `{1,…,N}^{l−1}` by rank. Generators with
/// σ(i·K) = i·K for every K collapse to `psi(s_i) = s_i`; for l = 1 the sum
/// is the single relabeling term s_{σ(i)}.
pub fn endomorphism_formula(sigma: &MultiIndexPermutation) -> String {
    let n = sigma.alphabet_size();
    let l = sigma.block_length();
    let mut out = String::new();
    for i in 1..=n {
        out.push_str(&format!("psi(s_{i}) = "));
        if l == 1 {
            let image = unrank(n, 1, sigma.apply_rank((i - 1) as usize));
            out.push_str(&format!("s_{}", Word::from_valid(n, image)));
        } else {
            let block = (n as usize).pow(l - 1);
            let ranks = (i as usize - 1) * block..(i as usize) * block;
            if ranks.clone().all(|r| sigma.apply_rank(r) == r) {
                out.push_str(&format!("s_{i}"));
            } else {
                let terms: Vec<String> = ranks
                    .map(|r| {
                        let image = Word::from_valid(n, unrank(n, l, sigma.apply_rank(r)));
                        let k = Word::from_valid(n, unrank(n, l - 1, r % block));
                        format!("s_{image} s_{k}*")
                    })
                    .collect();
                out.push_str(&terms.join(" + "));
            }
        }
        out.push('\n');
    }
    out
}

/// Branching data of every canonical nonperiodic word up to a length bound,
/// keyed in (length, value) order. Equal signatures are necessary for the
/// endomorphisms to be equivalent, so differing signatures distinguish them.
pub type Signature = BTreeMap<Word, Vec<Word>>;

pub fn signature(
    sigma: &MultiIndexPermutation,
    max_len: usize,
) -> Result<Signature, SignatureError> {
    let n = sigma.alphabet_size();
    let guard = (n as u64).checked_pow(max_len.min(u32::MAX as usize) as u32);
    if !matches!(guard, Some(size) if size <= SIGNATURE_CAP) {
        return Err(SignatureError::Guard {
            n,
            max_len,
            cap: SIGNATURE_CAP,
        });
    }
    let machine = SemiMealyMachine::build(sigma);
    let mut map = Signature::new();
    for word in canonical_nonperiodic_words(n, max_len) {
        let law = branch_on_machine(sigma, &machine, word.clone(), 1)
            .expect("alphabet fixed by construction");
        map.insert(word, law.component_multiset());
    }
    Ok(map)
}

/// TSV report with columns `input`, `cycles`, `outputs`, `law`, one row per
/// requested word. `cycles` concatenates state names within a cycle and
/// separates cycles by `, `; `outputs` lists raw output words in component
/// order; `law` is the ASCII equation. Periodic inputs get a
/// `gauge-reduced (r=…)` marker appended to the law.
pub fn branch_table(
    sigma: &MultiIndexPermutation,
    words: &[Word],
) -> Result<String, BranchError> {
    let machine = SemiMealyMachine::build(sigma);
    let mut out = String::from("input\tcycles\toutputs\tlaw\n");
    for word in words {
        if sigma.alphabet_size() != word.alphabet_size() {
            return Err(BranchError::AlphabetMismatch {
                sigma_n: sigma.alphabet_size(),
                word_n: word.alphabet_size(),
            });
        }
        let (root, gauge_period) = word.primitive_root();
        let law = branch_on_machine(sigma, &machine, root, gauge_period)?;
        let cycles = law
            .components
            .iter()
            .map(|c| {
                c.states
                    .iter()
                    .map(|&s| machine.state_name(s))
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join(", ");
        let outputs = law
            .components
            .iter()
            .map(|c| c.raw_output.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let mut equation = law.equation(false);
        if law.gauge_reduced {
            equation.push_str(&format!("  [gauge-reduced (r={})]", law.gauge_period));
        }
        out.push_str(&format!("{word}\t{cycles}\t{outputs}\t{equation}\n"));
    }
    Ok(out)
}
