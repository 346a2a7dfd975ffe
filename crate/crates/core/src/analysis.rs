//! Consequences drawn from branching laws.
//!
//! Branching behaves functorially enough that single witnesses prove
//! properties of ψ_σ: a law with M ≥ 2 summands (or a reducible summand)
//! certifies that ψ_σ is proper (not an automorphism); a law with a single
//! nonperiodic output certifies irreducibility; inputs on which two σ's
//! laws differ certify the endomorphisms inequivalent. The absence of a
//! witness up to a length bound proves nothing, which is why the finders
//! return `Option` and the reports say "evidence", not "proof".
//!
//! Sweeps iterate canonical nonperiodic words only — branching is a
//! ∼-class invariant, so one representative per class suffices.

use crate::branching::{branch, signature, BranchingLaw, Signature, SignatureError};
use crate::builtin;
use crate::digest::fnv1a_hex;
use crate::mealy::SemiMealyMachine;
use crate::perm::{MultiIndexPermutation, PermError};
use crate::sigma_io;
use crate::word::{canonical_nonperiodic_words, Word};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("cannot compare endomorphisms over different alphabets ({0} vs {1})")]
    AlphabetMismatch(u32, u32),
    #[error("classification over {count} permutations exceeds the cap {cap}")]
    CapExceeded { count: u64, cap: u64 },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// A single-witness proof object; see the module docs for what each kind
/// establishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// ψ_σ is proper: P(witness)∘ψ_σ is reducible (M ≥ 2 summands, or a
    /// summand with periodic label).
    Proper { witness: Word, law: BranchingLaw },
    /// ψ_σ is irreducible: P(witness)∘ψ_σ is again irreducible (single
    /// nonperiodic output).
    IrreducibleEvidence { witness: Word, law: BranchingLaw },
    /// The two endomorphisms are inequivalent: their laws differ at the
    /// witness.
    Distinct {
        witness: Word,
        left: BranchingLaw,
        right: BranchingLaw,
    },
}

impl Certificate {
    pub fn witness(&self) -> &Word {
        match self {
            Certificate::Proper { witness, .. }
            | Certificate::IrreducibleEvidence { witness, .. }
            | Certificate::Distinct { witness, .. } => witness,
        }
    }
}

/// First canonical nonperiodic J (in (length, value) order) whose law has
/// M ≥ 2 or a reducible summand; `None` if none up to `max_len`.
pub fn properness_certificate(
    sigma: &MultiIndexPermutation,
    max_len: usize,
) -> Option<Certificate> {
    for witness in canonical_nonperiodic_words(sigma.alphabet_size(), max_len) {
        let law = branch(sigma, &witness).expect("alphabet matches by construction");
        if law.m() >= 2 || law.components.iter().any(|c| c.reducible) {
            return Some(Certificate::Proper { witness, law });
        }
    }
    None
}

/// First canonical nonperiodic J whose law is a single nonperiodic output;
/// `None` if none up to `max_len` (which proves nothing).
pub fn irreducibility_evidence(
    sigma: &MultiIndexPermutation,
    max_len: usize,
) -> Option<Certificate> {
    for witness in canonical_nonperiodic_words(sigma.alphabet_size(), max_len) {
        let law = branch(sigma, &witness).expect("alphabet matches by construction");
        if law.m() == 1 && !law.components[0].reducible {
            return Some(Certificate::IrreducibleEvidence { witness, law });
        }
    }
    None
}

/// First canonical nonperiodic J where the two laws differ as canonical
/// multisets; `None` means agreement up to `max_len`, which is consistency,
/// not an equivalence proof. The block lengths may differ; the alphabets
/// must agree.
pub fn distinguish(
    left: &MultiIndexPermutation,
    right: &MultiIndexPermutation,
    max_len: usize,
) -> Result<Option<Certificate>, AnalysisError> {
    if left.alphabet_size() != right.alphabet_size() {
        return Err(AnalysisError::AlphabetMismatch(
            left.alphabet_size(),
            right.alphabet_size(),
        ));
    }
    for witness in canonical_nonperiodic_words(left.alphabet_size(), max_len) {
        let left_law = branch(left, &witness).expect("alphabet matches");
        let right_law = branch(right, &witness).expect("alphabet matches");
        if left_law.component_multiset() != right_law.component_multiset() {
            return Ok(Some(Certificate::Distinct {
                witness,
                left: left_law,
                right: right_law,
            }));
        }
    }
    Ok(None)
}

/// The parity law of the ψ_12 endomorphism: writing n_1(J) for the number
/// of 1-letters in J, the branching of P(J)∘ψ_12 has M = 2 summands when
/// n_1(J) is even and M = 1 when it is odd. Checks every canonical
/// nonperiodic binary J up to `max_len`.
pub fn parity_check_psi12(max_len: usize) -> bool {
    let psi12 = builtin::psi12();
    canonical_nonperiodic_words(2, max_len).iter().all(|j| {
        let n1 = j.letters().iter().filter(|&&letter| letter == 1).count();
        let expected = if n1 % 2 == 0 { 2 } else { 1 };
        branch(&psi12, j).expect("binary word").m() == expected
    })
}

/// The diagram bound: M is at least the number of weakly connected
/// components of the transition diagram of M_σ, for every input. Checks all
/// canonical nonperiodic J up to `max_len`.
pub fn component_bound_check(sigma: &MultiIndexPermutation, max_len: usize) -> bool {
    let bound = SemiMealyMachine::build(sigma).connected_components();
    canonical_nonperiodic_words(sigma.alphabet_size(), max_len)
        .iter()
        .all(|j| branch(sigma, j).expect("alphabet matches").m() >= bound)
}

/// One signature-equality class of enumerated permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyCell {
    /// Content hash of the shared signature.
    pub signature_digest: String,
    pub size: usize,
    /// The enumeration-first member.
    pub representative: MultiIndexPermutation,
    /// Enumeration indices of all members, ascending.
    pub member_indices: Vec<usize>,
    /// First input whose law differs from cell 0's; `None` for cell 0.
    pub witness: Option<Word>,
}

/// Partition of 𝔖_{N,l} by branching signature up to a length bound.
/// Distinct cells contain inequivalent endomorphisms; nothing follows about
/// σ's sharing a cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub n: u32,
    pub l: u32,
    pub max_len: usize,
    pub enumerated: usize,
    /// Cells in order of first appearance during enumeration.
    pub cells: Vec<ClassifyCell>,
}

impl Classification {
    /// TSV report: `signature`, `size`, `representative`, `witness`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("signature\tsize\trepresentative\twitness\n");
        for cell in &self.cells {
            let witness = cell
                .witness
                .as_ref()
                .map_or_else(|| "-".to_string(), Word::to_string);
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                cell.signature_digest,
                cell.size,
                sigma_io::to_compact_inline(&cell.representative),
                witness,
            ));
        }
        out
    }
}

fn signature_digest(signature: &Signature) -> String {
    let mut bytes = Vec::new();
    for (input, outputs) in signature {
        bytes.extend_from_slice(input.to_string().as_bytes());
        bytes.push(b'>');
        for output in outputs {
            bytes.extend_from_slice(output.to_string().as_bytes());
            bytes.push(b',');
        }
        bytes.push(b';');
    }
    fnv1a_hex(&bytes)
}

/// Saturating count of permutations of a size-`size` set.
fn permutation_count(size: usize) -> u64 {
    (1..=size as u64).try_fold(1u64, |acc, k| acc.checked_mul(k)).unwrap_or(u64::MAX)
}

/// Enumerates all of 𝔖_{N,l} (subject to the enumeration guard, and to
/// `cap` on the count) and partitions it by `signature(·, max_len)`.
pub fn classify(
    n: u32,
    l: u32,
    max_len: usize,
    cap: u64,
    allow_large: bool,
) -> Result<Classification, AnalysisError> {
    let enumeration = MultiIndexPermutation::enumerate(n, l, allow_large)?;
    let count = permutation_count((n as usize).pow(l));
    if count > cap {
        return Err(AnalysisError::CapExceeded { count, cap });
    }
    let mut cells: Vec<ClassifyCell> = Vec::new();
    let mut signatures: Vec<Signature> = Vec::new();
    let mut by_signature: HashMap<Signature, usize> = HashMap::new();
    let mut enumerated = 0usize;
    for (index, sigma) in enumeration.enumerate() {
        enumerated += 1;
        let sig = signature(&sigma, max_len)?;
        if let Some(&at) = by_signature.get(&sig) {
            cells[at].size += 1;
            cells[at].member_indices.push(index);
            continue;
        }
        let witness = signatures.first().and_then(|base| {
            sig.iter()
                .find(|(input, outputs)| base.get(*input) != Some(outputs))
                .map(|(input, _)| input.clone())
        });
        cells.push(ClassifyCell {
            signature_digest: signature_digest(&sig),
            size: 1,
            representative: sigma,
            member_indices: vec![index],
            witness,
        });
        by_signature.insert(sig.clone(), cells.len() - 1);
        signatures.push(sig);
    }
    Ok(Classification {
        n,
        l,
        max_len,
        enumerated,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u32, text: &str) -> Word {
        Word::parse(text, n).unwrap()
    }

    #[test]
    fn properness_examples() {
        let psi12 = builtin::psi12();
        match properness_certificate(&psi12, 4) {
            Some(Certificate::Proper { witness, law }) => {
                assert_eq!(witness, w(2, "2"));
                assert_eq!(law.component_multiset(), vec![w(2, "1"), w(2, "2")]);
            }
            other => panic!("expected a properness witness, got {other:?}"),
        }

        let sigma0 = builtin::nakanishi();
        let certificate = properness_certificate(&sigma0, 4).unwrap();
        assert_eq!(certificate.witness(), &w(3, "1"));

        let id = MultiIndexPermutation::identity(3, 1).unwrap();
        assert_eq!(properness_certificate(&id, 5), None);
    }

    #[test]
    fn irreducibility_examples() {
        let sigma0 = builtin::nakanishi();
        match irreducibility_evidence(&sigma0, 4) {
            Some(Certificate::IrreducibleEvidence { witness, law }) => {
                assert_eq!(witness, w(3, "12"));
                assert_eq!(law.component_multiset(), vec![w(3, "113223")]);
            }
            other => panic!("expected irreducibility evidence, got {other:?}"),
        }

        let psi12 = builtin::psi12();
        let certificate = irreducibility_evidence(&psi12, 4).unwrap();
        assert_eq!(certificate.witness(), &w(2, "1"));

        for n in [2u32, 3, 4] {
            let shift = MultiIndexPermutation::canonical_shift(n).unwrap();
            assert_eq!(irreducibility_evidence(&shift, 4), None);
        }
    }

    #[test]
    fn distinguish_examples() {
        let sigma0 = builtin::nakanishi();
        let swap = builtin::swap_11_12_n3();
        match distinguish(&swap, &sigma0, 4).unwrap() {
            Some(Certificate::Distinct { witness, left, right }) => {
                assert_eq!(witness, w(3, "1"));
                assert_eq!(left.component_multiset(), vec![w(3, "12")]);
                assert_eq!(
                    right.component_multiset(),
                    vec![w(3, "3"), w(3, "12")]
                );
            }
            other => panic!("expected a distinguishing witness, got {other:?}"),
        }
        // (3) also separates them, as P(3) vs P(3)⊕P(12)
        let at3 = branch(&swap, &w(3, "3")).unwrap();
        assert_eq!(at3.component_multiset(), vec![w(3, "3")]);

        assert_eq!(distinguish(&sigma0, &sigma0, 5).unwrap(), None);
        assert_eq!(
            distinguish(&sigma0, &builtin::psi12(), 3),
            Err(AnalysisError::AlphabetMismatch(3, 2))
        );
    }

    #[test]
    fn distinguish_across_block_lengths() {
        // the lifted ψ_12 lives in 𝔖_{2,3} but branches identically
        let psi12 = builtin::psi12();
        let lift = builtin::psi12_lift();
        assert_eq!(distinguish(&lift, &psi12, 8).unwrap(), None);
    }

    #[test]
    fn parity_examples() {
        let psi12 = builtin::psi12();
        assert_eq!(branch(&psi12, &w(2, "1")).unwrap().m(), 1);
        assert_eq!(branch(&psi12, &w(2, "2")).unwrap().m(), 2);
        assert_eq!(branch(&psi12, &w(2, "1122")).unwrap().m(), 2);
        assert!(parity_check_psi12(8));
    }

    #[test]
    fn component_bound_examples() {
        let mix = builtin::mix_4x2();
        assert_eq!(SemiMealyMachine::build(&mix).connected_components(), 2);
        assert_eq!(branch(&mix, &w(4, "1")).unwrap().m(), 4);
        assert!(component_bound_check(&mix, 3));

        for n in [2u32, 3] {
            let shift = MultiIndexPermutation::canonical_shift(n).unwrap();
            assert!(component_bound_check(&shift, 4));
        }

        // the identity diagram is weakly connected (every state reaches
        // every q_i), so the bound is the trivial M ≥ 1
        let id = MultiIndexPermutation::identity(2, 2).unwrap();
        assert_eq!(SemiMealyMachine::build(&id).connected_components(), 1);
        assert_eq!(branch(&id, &w(2, "1")).unwrap().m(), 1);
        assert!(component_bound_check(&id, 4));

        assert!(component_bound_check(&builtin::nakanishi(), 4));
    }

    #[test]
    fn classify_s2_1() {
        let classification = classify(2, 1, 3, 100, false).unwrap();
        assert_eq!(classification.enumerated, 2);
        assert_eq!(classification.cells.len(), 2);
        assert_eq!(classification.cells[0].size, 1);
        assert_eq!(
            classification.cells[0].representative,
            MultiIndexPermutation::identity(2, 1).unwrap()
        );
        assert_eq!(classification.cells[0].witness, None);
        assert_eq!(classification.cells[1].witness, Some(w(2, "1")));
    }

    #[test]
    fn classify_s2_2() {
        let classification = classify(2, 2, 4, 100, false).unwrap();
        assert_eq!(classification.enumerated, 24);
        assert!(classification.cells.len() >= 2);
        assert_eq!(
            classification.cells.iter().map(|c| c.size).sum::<usize>(),
            24
        );
        // identity leads cell 0; ψ_12 and the canonical shift land elsewhere
        assert_eq!(
            classification.cells[0].representative,
            MultiIndexPermutation::identity(2, 2).unwrap()
        );
        let all: Vec<_> = MultiIndexPermutation::enumerate(2, 2, false)
            .unwrap()
            .collect();
        let cell_of = |sigma: &MultiIndexPermutation| {
            let index = all.iter().position(|s| s == sigma).unwrap();
            classification
                .cells
                .iter()
                .position(|cell| cell.member_indices.contains(&index))
                .unwrap()
        };
        let shift = MultiIndexPermutation::canonical_shift(2).unwrap();
        assert_ne!(cell_of(&builtin::psi12()), cell_of(&shift));
    }

    #[test]
    fn classify_refines_as_max_len_grows() {
        let coarse = classify(2, 2, 2, 100, false).unwrap();
        let fine = classify(2, 2, 6, 100, false).unwrap();
        assert!(fine.cells.len() >= coarse.cells.len());
        assert!(fine.cells.len() <= 24);
        // every fine cell sits inside one coarse cell
        let coarse_of = |index: usize| {
            coarse
                .cells
                .iter()
                .position(|cell| cell.member_indices.contains(&index))
                .unwrap()
        };
        for cell in &fine.cells {
            let home = coarse_of(cell.member_indices[0]);
            for &member in &cell.member_indices {
                assert_eq!(coarse_of(member), home);
            }
        }
    }

    #[test]
    fn classify_guard_and_cap() {
        assert!(matches!(
            classify(2, 4, 2, 1_000_000, false),
            Err(AnalysisError::Perm(PermError::EnumerationGuard { size: 16 }))
        ));
        assert_eq!(
            classify(2, 2, 4, 10, false),
            Err(AnalysisError::CapExceeded { count: 24, cap: 10 })
        );
    }

    #[test]
    fn classify_tsv_layout() {
        let classification = classify(2, 1, 2, 100, false).unwrap();
        let tsv = classification.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "signature\tsize\trepresentative\twitness");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].ends_with("\t1\t1->1 2->2\t-"), "got {:?}", lines[1]);
        assert!(lines[2].ends_with("\t1\t1->2 2->1\t1"), "got {:?}", lines[2]);
    }
}
