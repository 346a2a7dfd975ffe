//! Seeded random (σ, J) instances for randomized checking.
//!
//! Instances are drawn from a fixed, documented distribution — N ∈ {2,3},
//! l ∈ {1,2,3}, uniformly shuffled table, nonperiodic J with |J| ≤ 5 — by a
//! counter-free ChaCha stream, so a (seed, count) pair names the same
//! instances on every platform and every run.

use crate::perm::MultiIndexPermutation;
use crate::word::Word;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzInstance {
    pub sigma: MultiIndexPermutation,
    pub word: Word,
}

/// The first `count` instances of the stream named by `seed`.
pub fn instances(seed: u64, count: usize) -> Vec<FuzzInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = *[2u32, 3].choose(&mut rng).unwrap();
            let l = *[1u32, 2, 3].choose(&mut rng).unwrap();
            let size = (n as usize).pow(l);
            let mut table: Vec<usize> = (0..size).collect();
            table.shuffle(&mut rng);
            let sigma = MultiIndexPermutation::from_table(n, l, table)
                .expect("a shuffled identity table is a permutation");
            let word = loop {
                let len = rng.gen_range(1..=5usize);
                let letters: Vec<u32> = (0..len).map(|_| rng.gen_range(1..=n)).collect();
                let candidate = Word::new(n, letters).expect("letters drawn in range");
                if candidate.is_nonperiodic() {
                    break candidate;
                }
            };
            FuzzInstance { sigma, word }
        })
        .collect()
}
