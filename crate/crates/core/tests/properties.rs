mod common;

const CASES: u32 = 1000;

fn check(name: &str) {
    let (_, suite) = common::SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .expect("known suite");
    if let Err(e) = suite(CASES) {
        panic!("{name}: {e}");
    }
}

#[test]
fn coset_bijectivity() {
    check("coset bijectivity");
}

#[test]
fn conflict_symmetry() {
    check("conflict symmetry");
}

#[test]
fn clique_within_every_prototile() {
    check("clique within every prototile");
}

#[test]
fn shifted_tiling_per_slot() {
    check("shifted tiling per slot");
}

#[test]
fn hnf_canonicity() {
    check("HNF canonicity");
}

#[test]
fn reverse_complement_involution() {
    check("reverse-complement involution");
}

#[test]
fn schedule_periodicity() {
    check("schedule periodicity");
}
