//! End-to-end tests of the `branchlaw` binary: golden stdout for each
//! subcommand and the full exit-code contract (0 ok, 1 mismatch, 2 parse,
//! 3 semantic, 4 guard).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchlaw"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("the binary should not die on a signal")
}

#[test]
fn machine_table_matches_the_three_row_fixture() {
    let output = run(&["machine", "--sigma", &data("sigma0.json"), "--table"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "p\tdelta(p,a1)\tdelta(p,a2)\tdelta(p,a3)\tlambda(p,a1)\tlambda(p,a2)\tlambda(p,a3)\n\
         q_1\tq_1\tq_3\tq_2\tb_3\tb_1\tb_2\n\
         q_2\tq_3\tq_2\tq_1\tb_2\tb_3\tb_1\n\
         q_3\tq_2\tq_1\tq_3\tb_1\tb_2\tb_3\n"
    );
}

#[test]
fn machine_dot_has_three_nodes_and_nine_edges() {
    let output = run(&["machine", "--builtin", "nakanishi", "--dot"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.starts_with("digraph mealy {\n"));
    assert!(text.ends_with("}\n"));
    assert_eq!(text.matches("\";\n").count(), 3, "node declarations");
    assert_eq!(text.matches(" -> ").count(), 9, "edges");
    assert!(text.contains("\"q_1\" -> \"q_1\" [label=\"a1/b3\"];"));
}

#[test]
fn machine_requires_exactly_one_render_mode() {
    let both = run(&["machine", "--builtin", "nakanishi", "--dot", "--table"]);
    assert_eq!(code(&both), 2);
    let neither = run(&["machine", "--builtin", "nakanishi"]);
    assert_eq!(code(&neither), 2);
}

#[test]
fn branch_prints_the_equation() {
    let output = run(&["branch", "--builtin", "nakanishi", "--word", "123"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "P(123) o psi = P(222) (+) P(131313)\n");
}

#[test]
fn branch_unicode_uses_glyphs() {
    let output = run(&["branch", "--builtin", "nakanishi", "--word", "123", "--unicode"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "P(123) ∘ ψ = P(222) ⊕ P(131313)\n");
}

#[test]
fn branch_show_cycles_lists_the_state_cycles() {
    let output = run(&["branch", "--builtin", "nakanishi", "--word", "1", "--show-cycles"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "P(1) o psi = P(3) (+) P(12)\ncycles: q_1, q_2q_3\n"
    );
}

#[test]
fn branch_gauge_reduces_periodic_input() {
    let output = run(&["branch", "--builtin", "nakanishi", "--word", "1212"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "P(12) o psi = P(113223)\ngauge-reduced (r=2)\n"
    );
}

#[test]
fn branch_rejects_letters_outside_the_alphabet() {
    let output = run(&["branch", "--builtin", "nakanishi", "--word", "14"]);
    assert_eq!(code(&output), 3);
    assert!(stderr(&output).contains("out of range"));
}

#[test]
fn branch_rejects_unparseable_words() {
    let output = run(&["branch", "--builtin", "nakanishi", "--word", "x1"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn check_single_word_prints_ok() {
    let output = run(&["check", "--builtin", "psi12", "--word", "12"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "OK\n");
}

#[test]
fn check_rejects_periodic_words() {
    let output = run(&["check", "--builtin", "psi12", "--word", "11"]);
    assert_eq!(code(&output), 3);
    assert!(stderr(&output).contains("nonperiodic"));
}

#[test]
fn check_fuzz_sweep_prints_ok() {
    let output = run(&["check", "--fuzz", "25", "--seed", "7"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "OK\n");
    assert!(stderr(&output).contains("checked 25 instances (seed 7)"));
}

#[test]
fn check_without_sigma_source_is_a_usage_error() {
    let output = run(&["check", "--word", "12"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn formula_prints_one_line_per_generator() {
    let output = run(&["formula", "--sigma", &data("sigma0.json")]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "psi(s_1) = s_23 s_1* + s_31 s_2* + s_12 s_3*\n\
         psi(s_2) = s_32 s_1* + s_13 s_2* + s_21 s_3*\n\
         psi(s_3) = s_11 s_1* + s_22 s_2* + s_33 s_3*\n"
    );
}

#[test]
fn formula_handles_block_length_one() {
    let output = run(&["formula", "--sigma", &data("swap_l1.compact")]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "psi(s_1) = s_2\npsi(s_2) = s_1\n");
}

#[test]
fn signature_reports_every_short_canonical_input() {
    let output = run(&["signature", "--builtin", "psi12", "--max-len", "3"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        stdout(&output),
        "input\toutputs\tlaw\n\
         1\t12\tP(1) o psi = P(12)\n\
         2\t1,2\tP(2) o psi = P(1) (+) P(2)\n\
         12\t1122\tP(12) o psi = P(1122)\n\
         112\t112,122\tP(112) o psi = P(112) (+) P(122)\n\
         122\t111222\tP(122) o psi = P(111222)\n"
    );
}

#[test]
fn signature_zero_bound_is_a_usage_error() {
    let output = run(&["signature", "--builtin", "psi12", "--max-len", "0"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn signature_guard_exceeded_is_exit_four() {
    let output = run(&["signature", "--builtin", "psi12", "--max-len", "25"]);
    assert_eq!(code(&output), 4);
    assert!(stderr(&output).contains("exceeds the cap"));
}

#[test]
fn classify_partitions_the_two_by_two_shape() {
    let output = run(&["classify", "--n", "2", "--l", "2", "--max-len", "6"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "signature\tsize\trepresentative\twitness");
    let total: u64 = lines[1..]
        .iter()
        .map(|line| line.split('\t').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 24, "every permutation of {{1,2}}^2 lands in a cell");
    assert!(lines[1].ends_with("\t11->11 12->12 21->21 22->22\t-"));
    assert!(stderr(&output).contains("24 permutations"));
}

#[test]
fn classify_guard_and_cap_are_exit_four() {
    let guarded = run(&["classify", "--n", "2", "--l", "4", "--max-len", "3"]);
    assert_eq!(code(&guarded), 4);
    let capped = run(&["classify", "--n", "2", "--l", "4", "--max-len", "3", "--force"]);
    assert_eq!(code(&capped), 4);
    assert!(stderr(&capped).contains("exceeds the cap"));
}

#[test]
fn suite_passes_and_reports_row_count() {
    let output = run(&["suite"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.starts_with("ok\tnakanishi\tP(1) o psi = P(3) (+) P(12)\n"));
    assert!(text.ends_with("37 rows, 0 failures\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("ok\t")).count(), 37);
}

#[test]
fn malformed_sigma_files_are_parse_errors() {
    let compact = run(&["machine", "--sigma", &data("malformed.compact"), "--table"]);
    assert_eq!(code(&compact), 2);
    assert!(stderr(&compact).contains("line 3"));
    let json = run(&["machine", "--sigma", &data("bad.json"), "--table"]);
    assert_eq!(code(&json), 2);
}

#[test]
fn compact_files_feed_every_command() {
    let output = run(&["branch", "--sigma", &data("psi12.compact"), "--word", "1122"]);
    assert_eq!(code(&output), 0);
    assert_eq!(stdout(&output), "P(1122) o psi = P(1112) (+) P(1222)\n");
}

#[test]
fn unknown_builtin_is_a_parse_error() {
    let output = run(&["branch", "--builtin", "nosuch", "--word", "1"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn provenance_notes_go_to_stderr_not_stdout() {
    let output = run(&["machine", "--sigma", &data("sigma0.json"), "--table"]);
    assert!(stdout(&output).starts_with("p\t"));
    assert!(stderr(&output).contains("sigma0.json (json, n=3, l=2)"));
}
