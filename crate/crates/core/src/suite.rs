//! A fixed regression suite of branching laws with known right-hand sides.
//!
//! Every row pins branch(σ, J) for a named builtin σ to an expected
//! component multiset that was worked out by hand from the defining
//! formulas (and is independently confirmed by the oracle tests). The CLI
//! `suite` subcommand replays these rows; any drift in the machine
//! construction, the orbit decomposition, or canonicalization shows up here
//! first.

use crate::branching::{branch, BranchingLaw};
use crate::builtin;
use crate::word::Word;

/// One pinned law: builtin name, input word, expected canonical outputs
/// (as a multiset; order here is (length, value)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixtureRow {
    pub builtin: &'static str,
    pub input: &'static str,
    pub expected: &'static [&'static str],
}

/// The full fixture table, grouped by builtin.
pub fn rows() -> Vec<FixtureRow> {
    fn row(
        builtin: &'static str,
        input: &'static str,
        expected: &'static [&'static str],
    ) -> FixtureRow {
        FixtureRow {
            builtin,
            input,
            expected,
        }
    }
    vec![
        // the 3-letter interleaving endomorphism
        row("nakanishi", "1", &["3", "12"]),
        row("nakanishi", "12", &["113223"]),
        row("nakanishi", "123", &["222", "131313"]),
        row("nakanishi", "132", &["111", "232323"]),
        // the three small 𝔖_{2,2} endomorphisms
        row("psi12", "1", &["12"]),
        row("psi12", "2", &["1", "2"]),
        row("psi12", "12", &["1122"]),
        row("psi12", "1122", &["1112", "1222"]),
        row("swap-11-21", "1", &["2"]),
        row("swap-11-21", "2", &["2"]),
        row("swap-11-21", "12", &["11"]),
        row("swap-11-21", "112", &["112"]),
        row("swap-11-21", "122", &["112"]),
        row("cycle-11-22-12", "1", &["12"]),
        row("cycle-11-22-12", "2", &["12"]),
        row("cycle-11-22-12", "12", &["11", "22"]),
        // a transposition in 𝔖_{3,2}
        row("swap-11-12-n3", "1", &["12"]),
        row("swap-11-12-n3", "2", &["1", "2"]),
        row("swap-11-12-n3", "3", &["3"]),
        // 𝔖_{4,2} with a disconnected transition diagram
        row("mix-4x2", "1", &["1", "1", "1", "1"]),
        row("mix-4x2", "2", &["2", "2", "2"]),
        row("mix-4x2", "4", &["4", "444"]),
        // canonical endomorphisms: always N untouched copies
        row("canonical:2", "1", &["1", "1"]),
        row("canonical:2", "12", &["12", "12"]),
        row("canonical:3", "12", &["12", "12", "12"]),
        // 𝔖_{2,3}: a transposition, and the lift of psi12
        row("swap-111-121", "1", &["12"]),
        row("swap-111-121", "2", &["2"]),
        row("swap-111-121", "12", &["11"]),
        row("swap-111-121", "112", &["112"]),
        row("psi12-lift", "1", &["12"]),
        row("psi12-lift", "2", &["1", "2"]),
        row("psi12-lift", "12", &["1122"]),
        row("psi12-lift", "1122", &["1112", "1222"]),
        // 𝔖_{2,4}
        row("swap-1111-1211", "1", &["12"]),
        row("swap-1111-1211", "2", &["2"]),
        row("swap-1111-1211", "12", &["12"]),
        row("swap-1111-1211", "112", &["111"]),
    ]
}

/// Outcome of replaying one fixture row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteRowResult {
    pub fixture: &'static str,
    pub input: Word,
    pub expected: Vec<Word>,
    pub law: BranchingLaw,
}

impl SuiteRowResult {
    pub fn ok(&self) -> bool {
        let mut expected = self.expected.clone();
        expected.sort();
        self.law.component_multiset() == expected
    }
}

/// Replays every row. The fixture table is internally consistent by
/// construction, so failures indicate algorithm drift, not bad fixtures.
pub fn run() -> Vec<SuiteRowResult> {
    rows()
        .into_iter()
        .map(|row| {
            let sigma = builtin::by_name(row.builtin).expect("fixture names a builtin");
            let n = sigma.alphabet_size();
            let input = Word::parse(row.input, n).expect("fixture input parses");
            let expected = row
                .expected
                .iter()
                .map(|text| Word::parse(text, n).expect("fixture output parses"))
                .collect();
            let law = branch(&sigma, &input).expect("fixture alphabet matches");
            SuiteRowResult {
                fixture: row.builtin,
                input,
                expected,
                law,
            }
        })
        .collect()
}
