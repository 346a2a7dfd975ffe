//! The finite transducer M_σ attached to a permutation σ of `{1,…,N}^l`.
//!
//! States are the words K of length l−1 (one state `q_0` when l = 1),
//! indexed by rank. Writing `K·i` for the length-`l` word obtained by
//! appending the input letter i to K, the transition and output maps are
//!
//! ```text
//! δ(q_K, a_i) = q_{last l−1 letters of σ⁻¹(K·i)}
//! λ(q_K, a_i) = b_{first letter of σ⁻¹(K·i)}
//! ```
//!
//! Both extend to input words by δ(q, wa) = δ(δ(q,w), a) and
//! λ(q, wa) = λ(q,w)·λ(δ(q,w), a). The cycles of the state map q ↦ δ(q, a_J)
//! encode the branching law of P(J); see the branching module.

use crate::perm::{unrank, MultiIndexPermutation};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiMealyMachine {
    n: u32,
    l: u32,
    state_count: usize,
    /// `delta[s*N + (i−1)]`, indexed by state and 0-based input letter.
    delta: Vec<usize>,
    /// Output letters (1-based), same indexing as `delta`.
    lambda: Vec<u32>,
}

/// One δ(·,a_J)-cycle: its rank-least state, its length, and its states in
/// traversal order starting from the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub representative: usize,
    pub size: usize,
    pub states: Vec<usize>,
}

/// The periodic states Q_J of the map q ↦ δ(q, a_J), split into cycles and
/// sorted by representative rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub input: Word,
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn periodic_state_count(&self) -> usize {
        self.orbits.iter().map(|orbit| orbit.size).sum()
    }
}

/// States visited while reading a word, plus the emitted output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTrace {
    /// State *before* each input letter; same length as the input.
    pub states: Vec<usize>,
    pub output: Word,
    pub end: usize,
}

impl SemiMealyMachine {
    pub fn build(sigma: &MultiIndexPermutation) -> Self {
        let n = sigma.alphabet_size() as usize;
        let l = sigma.block_length();
        let state_count = if l == 1 {
            1
        } else {
            (n).pow(l - 1)
        };
        let inverse = sigma.inverse();
        let mut delta = vec![0usize; state_count * n];
        let mut lambda = vec![0u32; state_count * n];
        for state in 0..state_count {
            for i in 0..n {
                // rank of K·i among length-l words, with K the state word
                let appended = state * n + i;
                let preimage = inverse.apply_rank(appended);
                let (first, rest) = (preimage / state_count, preimage % state_count);
                delta[state * n + i] = rest;
                lambda[state * n + i] = first as u32 + 1;
            }
        }
        SemiMealyMachine {
            n: n as u32,
            l,
            state_count,
            delta,
            lambda,
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    pub fn block_length(&self) -> u32 {
        self.l
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// The state word K for l ≥ 2; none for the single l = 1 state.
    pub fn state_word(&self, state: usize) -> Option<Word> {
        (self.l >= 2).then(|| Word::from_valid(self.n, unrank(self.n, self.l - 1, state)))
    }

    /// Display name: `q_<K>` for l ≥ 2, `q_0` for l = 1.
    pub fn state_name(&self, state: usize) -> String {
        match self.state_word(state) {
            Some(word) => format!("q_{word}"),
            None => "q_0".to_string(),
        }
    }

    pub fn delta(&self, state: usize, letter: u32) -> usize {
        self.delta[state * self.n as usize + (letter - 1) as usize]
    }

    pub fn lambda(&self, state: usize, letter: u32) -> u32 {
        self.lambda[state * self.n as usize + (letter - 1) as usize]
    }

    /// Reads `w` from `start`; returns the final state and the output word.
    pub fn run(&self, start: usize, w: &Word) -> (usize, Word) {
        let trace = self.run_trace(start, w);
        (trace.end, trace.output)
    }

    /// Like [`run`](Self::run), also recording the state before each letter.
    pub fn run_trace(&self, start: usize, w: &Word) -> RunTrace {
        assert_eq!(w.alphabet_size(), self.n, "input over the wrong alphabet");
        let mut states = Vec::with_capacity(w.len());
        let mut output = Vec::with_capacity(w.len());
        let mut state = start;
        for &letter in w.letters() {
            states.push(state);
            output.push(self.lambda(state, letter));
            state = self.delta(state, letter);
        }
        RunTrace {
            states,
            output: Word::from_valid(self.n, output),
            end: state,
        }
    }

    /// The map q ↦ δ(q, a_J) on all states at once.
    pub fn word_action(&self, j: &Word) -> Vec<usize> {
        assert_eq!(j.alphabet_size(), self.n, "input over the wrong alphabet");
        (0..self.state_count)
            .map(|state| {
                j.letters()
                    .iter()
                    .fold(state, |q, &letter| self.delta(q, letter))
            })
            .collect()
    }

    /// The periodic states of q ↦ δ(q, a_J) as cycles. Every walk of the
    /// finite functional graph ends on a cycle, so the result is nonempty.
    pub fn periodic_states(&self, j: &Word) -> OrbitDecomposition {
        let action = self.word_action(j);
        const UNSEEN: u8 = 0;
        const ACTIVE: u8 = 1;
        const DONE: u8 = 2;
        let mut color = vec![UNSEEN; self.state_count];
        let mut orbits: Vec<Orbit> = Vec::new();
        for start in 0..self.state_count {
            if color[start] != UNSEEN {
                continue;
            }
            let mut path = Vec::new();
            let mut q = start;
            while color[q] == UNSEEN {
                color[q] = ACTIVE;
                path.push(q);
                q = action[q];
            }
            if color[q] == ACTIVE {
                // walked into our own path: the suffix from q is a new cycle
                let entry = path.iter().position(|&p| p == q).unwrap();
                let mut states = path[entry..].to_vec();
                let least = states
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &s)| s)
                    .map(|(index, _)| index)
                    .unwrap();
                states.rotate_left(least);
                orbits.push(Orbit {
                    representative: states[0],
                    size: states.len(),
                    states,
                });
            }
            for p in path {
                color[p] = DONE;
            }
        }
        orbits.sort_by_key(|orbit| orbit.representative);
        OrbitDecomposition {
            input: j.clone(),
            orbits,
        }
    }

    /// Deterministic DOT rendering: states by rank, letters ascending.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph mealy {\n  rankdir=LR;\n  node [shape=circle];\n");
        for state in 0..self.state_count {
            out.push_str(&format!("  \"{}\";\n", self.state_name(state)));
        }
        for state in 0..self.state_count {
            for letter in 1..=self.n {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"a{}/b{}\"];\n",
                    self.state_name(state),
                    self.state_name(self.delta(state, letter)),
                    letter,
                    self.lambda(state, letter),
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    /// TSV table: `p`, then δ(p,a_1..a_N), then λ(p,a_1..a_N).
    pub fn to_table(&self) -> String {
        let mut out = String::from("p");
        for letter in 1..=self.n {
            out.push_str(&format!("\tdelta(p,a{letter})"));
        }
        for letter in 1..=self.n {
            out.push_str(&format!("\tlambda(p,a{letter})"));
        }
        out.push('\n');
        for state in 0..self.state_count {
            out.push_str(&self.state_name(state));
            for letter in 1..=self.n {
                out.push('\t');
                out.push_str(&self.state_name(self.delta(state, letter)));
            }
            for letter in 1..=self.n {
                out.push_str(&format!("\tb_{}", self.lambda(state, letter)));
            }
            out.push('\n');
        }
        out
    }

    /// Weakly connected components of the transition diagram (union-find
    /// over edges taken undirected).
    pub fn connected_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.state_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for state in 0..self.state_count {
            for letter in 1..=self.n {
                let a = find(&mut parent, state);
                let b = find(&mut parent, self.delta(state, letter));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..self.state_count)
            .filter(|&s| find(&mut parent, s) == s)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::perm::MultiIndexPermutation;

    fn w(n: u32, text: &str) -> Word {
        Word::parse(text, n).unwrap()
    }

    /// The full transducer for the nakanishi σ, frozen from the defining
    /// formulas (σ⁻¹ interleaves 31,13,22 / 23,32,11 / 12,21,33).
    #[test]
    fn build_nakanishi_table() {
        let m = SemiMealyMachine::build(&builtin::nakanishi());
        assert_eq!(m.state_count(), 3);
        let q = |name: &str| match name {
            "q_1" => 0,
            "q_2" => 1,
            "q_3" => 2,
            _ => unreachable!(),
        };
        // (state, letter) -> (next state, output letter)
        let expected = [
            ("q_1", 1, "q_1", 3),
            ("q_1", 2, "q_3", 1),
            ("q_1", 3, "q_2", 2),
            ("q_2", 1, "q_3", 2),
            ("q_2", 2, "q_2", 3),
            ("q_2", 3, "q_1", 1),
            ("q_3", 1, "q_2", 1),
            ("q_3", 2, "q_1", 2),
            ("q_3", 3, "q_3", 3),
        ];
        for (state, letter, next, out) in expected {
            assert_eq!(m.delta(q(state), letter), q(next), "delta({state},a{letter})");
            assert_eq!(m.lambda(q(state), letter), out, "lambda({state},a{letter})");
        }
    }

    #[test]
    fn build_l1_identity() {
        let m = SemiMealyMachine::build(&MultiIndexPermutation::identity(3, 1).unwrap());
        assert_eq!(m.state_count(), 1);
        assert_eq!(m.state_name(0), "q_0");
        for letter in 1..=3 {
            assert_eq!(m.delta(0, letter), 0);
            assert_eq!(m.lambda(0, letter), letter);
        }
    }

    #[test]
    fn build_psi12() {
        let m = SemiMealyMachine::build(&builtin::psi12());
        assert_eq!(m.state_count(), 2);
        assert_eq!((m.delta(0, 1), m.lambda(0, 1)), (1, 1));
        assert_eq!((m.delta(0, 2), m.lambda(0, 2)), (0, 1));
        assert_eq!((m.delta(1, 1), m.lambda(1, 1)), (0, 2));
        assert_eq!((m.delta(1, 2), m.lambda(1, 2)), (1, 2));
    }

    #[test]
    fn run_examples() {
        let psi = SemiMealyMachine::build(&builtin::psi12());
        assert_eq!(psi.run(0, &w(2, "11")), (0, w(2, "12")));

        let m = SemiMealyMachine::build(&builtin::nakanishi());
        assert_eq!(m.run(1, &w(3, "11")), (1, w(3, "21")));
    }

    #[test]
    fn run_trace_records_states() {
        let m = SemiMealyMachine::build(&builtin::nakanishi());
        let trace = m.run_trace(0, &w(3, "12"));
        assert_eq!(trace.states, vec![0, 0]);
        assert_eq!(trace.output, w(3, "31"));
        assert_eq!(trace.end, 2);
    }

    #[test]
    fn periodic_states_examples() {
        let m = SemiMealyMachine::build(&builtin::nakanishi());
        let dec = m.periodic_states(&w(3, "1"));
        assert_eq!(dec.orbits.len(), 2);
        assert_eq!(dec.orbits[0], Orbit { representative: 0, size: 1, states: vec![0] });
        assert_eq!(dec.orbits[1], Orbit { representative: 1, size: 2, states: vec![1, 2] });
        assert_eq!(dec.periodic_state_count(), 3);

        let one_orbit = m.periodic_states(&w(3, "12"));
        assert_eq!(one_orbit.orbits.len(), 1);
        assert_eq!(one_orbit.orbits[0].size, 3);

        let shift = SemiMealyMachine::build(&MultiIndexPermutation::canonical_shift(3).unwrap());
        let fixed = shift.periodic_states(&w(3, "132"));
        assert_eq!(fixed.orbits.len(), 3);
        assert!(fixed.orbits.iter().all(|orbit| orbit.size == 1));
    }

    #[test]
    fn dot_examples() {
        let psi = SemiMealyMachine::build(&builtin::psi12());
        assert!(psi.to_dot().contains("\"q_1\" -> \"q_2\" [label=\"a1/b1\"];"));

        let shift = SemiMealyMachine::build(&MultiIndexPermutation::canonical_shift(2).unwrap());
        for line in shift.to_dot().lines().filter(|line| line.contains("->")) {
            let (src, rest) = line.trim().split_once(" -> ").unwrap();
            let dst = rest.split_once(" [").unwrap().0;
            assert_eq!(src, dst, "canonical machine has only self-loops");
        }

        let id1 = SemiMealyMachine::build(&MultiIndexPermutation::identity(2, 1).unwrap());
        let dot = id1.to_dot();
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 2);
        assert_eq!(dot.matches("\"q_0\";").count(), 1);
    }

    #[test]
    fn dot_golden_nakanishi() {
        let m = SemiMealyMachine::build(&builtin::nakanishi());
        let expected = "digraph mealy {\n\
                        \x20 rankdir=LR;\n\
                        \x20 node [shape=circle];\n\
                        \x20 \"q_1\";\n\
                        \x20 \"q_2\";\n\
                        \x20 \"q_3\";\n\
                        \x20 \"q_1\" -> \"q_1\" [label=\"a1/b3\"];\n\
                        \x20 \"q_1\" -> \"q_3\" [label=\"a2/b1\"];\n\
                        \x20 \"q_1\" -> \"q_2\" [label=\"a3/b2\"];\n\
                        \x20 \"q_2\" -> \"q_3\" [label=\"a1/b2\"];\n\
                        \x20 \"q_2\" -> \"q_2\" [label=\"a2/b3\"];\n\
                        \x20 \"q_2\" -> \"q_1\" [label=\"a3/b1\"];\n\
                        \x20 \"q_3\" -> \"q_2\" [label=\"a1/b1\"];\n\
                        \x20 \"q_3\" -> \"q_1\" [label=\"a2/b2\"];\n\
                        \x20 \"q_3\" -> \"q_3\" [label=\"a3/b3\"];\n\
                        }\n";
        assert_eq!(m.to_dot(), expected);
    }

    #[test]
    fn table_examples() {
        let m = SemiMealyMachine::build(&builtin::nakanishi());
        let expected = "p\tdelta(p,a1)\tdelta(p,a2)\tdelta(p,a3)\tlambda(p,a1)\tlambda(p,a2)\tlambda(p,a3)\n\
                        q_1\tq_1\tq_3\tq_2\tb_3\tb_1\tb_2\n\
                        q_2\tq_3\tq_2\tq_1\tb_2\tb_3\tb_1\n\
                        q_3\tq_2\tq_1\tq_3\tb_1\tb_2\tb_3\n";
        assert_eq!(m.to_table(), expected);

        let id1 = SemiMealyMachine::build(&MultiIndexPermutation::identity(2, 1).unwrap());
        assert_eq!(id1.to_table().lines().count(), 2);

        let psi = SemiMealyMachine::build(&builtin::psi12());
        assert!(psi.to_table().contains("q_1\tq_2\tq_1\tb_1\tb_1"));
    }

    #[test]
    fn connected_components_examples() {
        let m = SemiMealyMachine::build(&builtin::nakanishi());
        assert_eq!(m.connected_components(), 1);

        for n in [2u32, 3, 4] {
            let shift =
                SemiMealyMachine::build(&MultiIndexPermutation::canonical_shift(n).unwrap());
            assert_eq!(shift.connected_components(), n as usize);
        }

        // state q_2 of this machine carries only self-loops, so the diagram
        // splits into {q_1,q_3,q_4} and {q_2}
        let mix = SemiMealyMachine::build(&builtin::mix_4x2());
        assert_eq!(mix.connected_components(), 2);
        for letter in 1..=4 {
            assert_eq!(mix.delta(1, letter), 1);
        }
    }

    #[test]
    fn rebuild_through_double_inverse_is_identical() {
        for sigma in [builtin::nakanishi(), builtin::mix_4x2(), builtin::psi12_lift()] {
            assert_eq!(
                SemiMealyMachine::build(&sigma),
                SemiMealyMachine::build(&sigma.inverse().inverse())
            );
        }
    }
}
