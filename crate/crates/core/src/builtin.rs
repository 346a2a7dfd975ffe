//! Named permutations bundled with the crate.
//!
//! These are the σ's behind the regression suite and the CLI `--builtin`
//! flag. Names are structural: `swap-<a>-<b>` is the transposition of the
//! two words, `cycle-11-22-12` the 3-cycle through those words, `mix-4x2`
//! a 16-entry mixing table on `{1..4}^2`, and `psi12-lift` the block-length-3
//! composite of two transpositions whose endomorphism coincides with ψ_12.

use crate::perm::{MultiIndexPermutation, PermError};
use crate::word::Word;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuiltinError {
    #[error("unknown builtin {0:?}; known names: {}", NAMES.join(", "))]
    Unknown(String),
    #[error("bad canonical spec {0:?}; expected canonical:<N> with N >= 2")]
    BadCanonical(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Builtin names accepted by [`by_name`] (besides `canonical:<N>`).
pub const NAMES: &[&str] = &[
    "nakanishi",
    "psi12",
    "swap-11-21",
    "cycle-11-22-12",
    "swap-11-12-n3",
    "mix-4x2",
    "swap-111-121",
    "psi12-lift",
    "swap-1111-1211",
];

fn pairs(n: u32, l: u32, data: &[(&str, &str)]) -> MultiIndexPermutation {
    let list: Vec<(Word, Word)> = data
        .iter()
        .map(|(a, b)| (Word::parse(a, n).unwrap(), Word::parse(b, n).unwrap()))
        .collect();
    MultiIndexPermutation::from_pairs(n, l, &list).unwrap()
}

fn swap(n: u32, l: u32, a: &str, b: &str) -> MultiIndexPermutation {
    MultiIndexPermutation::transposition(
        n,
        l,
        &Word::parse(a, n).unwrap(),
        &Word::parse(b, n).unwrap(),
    )
    .unwrap()
}

/// A 9-entry permutation of `{1,2,3}^2` whose endomorphism is irreducible
/// but not an automorphism; the flagship worked example of this crate.
pub fn nakanishi() -> MultiIndexPermutation {
    pairs(
        3,
        2,
        &[
            ("11", "23"),
            ("12", "31"),
            ("13", "12"),
            ("21", "32"),
            ("22", "13"),
            ("23", "21"),
            ("31", "11"),
            ("32", "22"),
            ("33", "33"),
        ],
    )
}

/// ψ_12: the transposition of 11 and 12 in `{1,2}^2`.
pub fn psi12() -> MultiIndexPermutation {
    swap(2, 2, "11", "12")
}

/// Transposition of 11 and 21 in `{1,2}^2`.
pub fn swap_11_21() -> MultiIndexPermutation {
    swap(2, 2, "11", "21")
}

/// The 3-cycle 11 → 22 → 12 → 11 on `{1,2}^2`, fixing 21.
pub fn cycle_11_22_12() -> MultiIndexPermutation {
    pairs(2, 2, &[("11", "22"), ("12", "11"), ("21", "21"), ("22", "12")])
}

/// Transposition of 11 and 12 in `{1,2,3}^2` (the N=3 sibling of ψ_12).
pub fn swap_11_12_n3() -> MultiIndexPermutation {
    swap(3, 2, "11", "12")
}

/// A 16-entry table on `{1..4}^2` with branching laws P(1) = P(1)^⊕4,
/// P(2) = P(2)^⊕3 and P(4) = P(4)⊕P(444).
pub fn mix_4x2() -> MultiIndexPermutation {
    pairs(
        4,
        2,
        &[
            ("11", "11"),
            ("12", "21"),
            ("13", "31"),
            ("14", "41"),
            ("21", "12"),
            ("22", "22"),
            ("23", "43"),
            ("24", "42"),
            ("31", "32"),
            ("32", "23"),
            ("33", "13"),
            ("34", "33"),
            ("41", "44"),
            ("42", "24"),
            ("43", "14"),
            ("44", "34"),
        ],
    )
}

/// Transposition of 111 and 121 in `{1,2}^3`.
pub fn swap_111_121() -> MultiIndexPermutation {
    swap(2, 3, "111", "121")
}

/// The composite (swap 111↔121) ∘ (swap 112↔122) on `{1,2}^3`; its
/// endomorphism equals ψ_12 even though the block length differs.
pub fn psi12_lift() -> MultiIndexPermutation {
    swap_111_121().compose(&swap(2, 3, "112", "122")).unwrap()
}

/// Transposition of 1111 and 1211 in `{1,2}^4`.
pub fn swap_1111_1211() -> MultiIndexPermutation {
    swap(2, 4, "1111", "1211")
}

/// Resolves a builtin name, including the `canonical:<N>` family.
pub fn by_name(name: &str) -> Result<MultiIndexPermutation, BuiltinError> {
    if let Some(rest) = name.strip_prefix("canonical:") {
        let n: u32 = rest
            .parse()
            .map_err(|_| BuiltinError::BadCanonical(name.to_string()))?;
        return Ok(MultiIndexPermutation::canonical_shift(n)?);
    }
    match name {
        "nakanishi" => Ok(nakanishi()),
        "psi12" => Ok(psi12()),
        "swap-11-21" => Ok(swap_11_21()),
        "cycle-11-22-12" => Ok(cycle_11_22_12()),
        "swap-11-12-n3" => Ok(swap_11_12_n3()),
        "mix-4x2" => Ok(mix_4x2()),
        "swap-111-121" => Ok(swap_111_121()),
        "psi12-lift" => Ok(psi12_lift()),
        "swap-1111-1211" => Ok(swap_1111_1211()),
        _ => Err(BuiltinError::Unknown(name.to_string())),
    }
}
