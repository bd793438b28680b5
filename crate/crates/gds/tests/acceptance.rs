//! Acceptance suite: runs every criterion from `gds::selftest` and prints one
//! pass/fail line per criterion. The same checks back the `gds selftest` CLI
//! subcommand.

use gds::selftest::CRITERIA;

fn run(id: u32) {
    let (cid, name, f) = CRITERIA[(id - 1) as usize];
    assert_eq!(cid, id);
    let start = std::time::Instant::now();
    let outcome = f();
    let millis = start.elapsed().as_millis();
    match outcome {
        Ok(detail) => println!("criterion {id} [{name}]: PASS ({millis} ms) — {detail}"),
        Err(detail) => {
            println!("criterion {id} [{name}]: FAIL ({millis} ms) — {detail}");
            panic!("criterion {id} failed: {detail}");
        }
    }
}

#[test]
fn criterion_01_a1_character_conservation() {
    run(1);
}

#[test]
fn criterion_02_cg_ell_oracle() {
    run(2);
}

#[test]
fn criterion_03_length_lemma() {
    run(3);
}

#[test]
fn criterion_04_verlinde_fusion() {
    run(4);
}

#[test]
fn criterion_05_generic_summand_gfd() {
    run(5);
}

#[test]
fn criterion_06_quantum_modular_agreement() {
    run(6);
}

#[test]
fn criterion_07_a2_structural_checks() {
    run(7);
}

#[test]
fn criterion_08_translation_cross_check() {
    run(8);
}

#[test]
fn criterion_09_simple_character_validation() {
    run(9);
}

#[test]
fn criterion_10_dual_weyl_a1() {
    run(10);
}
