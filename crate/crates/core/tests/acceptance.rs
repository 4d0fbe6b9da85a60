//! Acceptance battery: one test per acceptance criterion, each an exact
//! identity at desk scale (n <= 6). Failures carry the first offending
//! case in their message.

use qkz_core::ring::{rat, Mode, Scalar};
use qkz_core::suite;
use qkz_core::tower;
use qkz_core::transfer::{self, XSpec};

fn ok(label: &str, r: Result<(), String>) {
    match r {
        Ok(()) => println!("{}: PASS", label),
        Err(e) => panic!("{}: FAIL ({})", label, e),
    }
}

#[test]
fn criterion_01_qkz_solutions() {
    for n in 1..=5 {
        ok(
            &format!("solve n={} symbolic", n),
            suite::solve_check(n, &Mode::Symbolic),
        );
    }
    ok("solve n=6 at s=2", suite::solve_check(6, &Mode::Rational(rat(2, 1))));
}

#[test]
fn criterion_02_oracle_uniqueness() {
    for n in 2..=4 {
        ok(
            &format!("oracle n={}", n),
            suite::oracle_check(n, rat(2, 1), 5, 0),
        );
    }
}

#[test]
fn criterion_03_braid_recursion() {
    for n in 0..=4 {
        ok(
            &format!("braid n={} symbolic", n),
            tower::braid_verify(n, &Mode::Symbolic),
        );
        ok(
            &format!("braid n={} at s=zeta6", n),
            tower::braid_verify(n, &Mode::Cyclotomic),
        );
    }
    // specialized prefactor forms at s = zeta_6: the factor for an even
    // target 2k collapses to (-1)^k t^{-1/2} and for an odd target 2k+1
    // to (-1)^k
    let m = Mode::Cyclotomic;
    for k in 1..=3usize {
        let sgn = if k % 2 == 0 { 1 } else { -1 };
        let even = tower::braid_factor(2 * k - 1, &m);
        assert_eq!(even, m.s_pow(-2).mul(&m.int(sgn)), "even-target form k={}", k);
        let odd = tower::braid_factor(2 * k, &m);
        assert_eq!(odd, m.int(sgn), "odd-target form k={}", k);
    }
    println!("braid zeta6 prefactor forms: PASS");
}

#[test]
fn criterion_04_dual_recursion() {
    for n in 0..=4 {
        ok(
            &format!("dual n={}", n),
            tower::dual_verify(n, &Mode::Symbolic),
        );
    }
}

#[test]
fn criterion_05_intertwiner_suite() {
    for n in 1..=5 {
        ok(
            &format!("intertwiner tower n={}", n),
            suite::intertwiner_tower_check(n, &Mode::Symbolic, &[0, 1, 2]),
        );
    }
}

#[test]
fn criterion_06_algebra_suite() {
    for n in 2..=6 {
        ok(&format!("TL relations n={}", n), suite::tl_relations_check(n));
    }
    for n in 2..=5 {
        ok(&format!("Hecke relations n={}", n), suite::hecke_relations_check(n));
    }
    for n in 2..=5 {
        ok(&format!("YBE/inversion/shift n={}", n), suite::ybe_check(n, 5, 0));
    }
    for n in 0..=4 {
        ok(
            &format!("arc-insertion diagram n={}", n),
            tower::nu_diagram_check(n, &Mode::Symbolic),
        );
    }
}

#[test]
fn criterion_07_transfer_suite() {
    for n in 2..=5 {
        ok(
            &format!("transfer relations n={}", n),
            transfer::transfer_relations_check(n, 10, 0),
        );
        ok(
            &format!("transfer size recursion n={}", n),
            transfer::tmat_conjugated_check(n, 10, 0),
        );
    }
    // tile weights at z -> 0 are (-t^{1/2}, -t)
    let m = Mode::Rational(rat(3, 1));
    let x = Scalar::Rat(rat(7, 2));
    let zero = m.zero();
    let den = m.s_pow(2).mul(&zero).sub(&m.s_pow(-2).mul(&x));
    assert_eq!(x.sub(&zero).div(&den).unwrap(), m.s_pow(2).neg());
    assert_eq!(
        m.s_pow(2).mul(&x).sub(&m.s_pow(-2).mul(&zero)).div(&den).unwrap(),
        m.s_pow(4).neg()
    );
    println!("tile limit weights: PASS");
}

#[test]
fn criterion_08_o1_suite() {
    // scalar collapses at s = zeta_6
    let m = Mode::Cyclotomic;
    assert_eq!(m.delta(), m.one());
    assert_eq!(m.u(), m.one());
    assert_eq!(m.q(), m.one());
    for n in 1..=6 {
        assert_eq!(m.c_n(n), m.one(), "c_{} at zeta6", n);
    }
    println!("zeta6 scalar collapses: PASS");
    for n in 1..=4 {
        ok(
            &format!("ground-state identity n={} (symbolic x)", n),
            transfer::o1_groundstate_check(n, &XSpec::Var),
        );
    }
    for (i, (a, b)) in [(3i64, 2i64), (7, 5), (1, 4)].iter().enumerate() {
        let x = Scalar::Cyc(rat(*a, *b), rat(*b, *a + 1));
        ok(
            &format!("ground-state identity n=5 (sampled x #{})", i),
            transfer::o1_groundstate_check(5, &XSpec::Const(x)),
        );
    }
    for n in 1..=5 {
        ok(
            &format!("stochasticity n={} (100 samples, 1e-12)", n),
            transfer::stochastic_check(n, 100, 0, 1e-12),
        );
    }
}

#[test]
fn criterion_09_weight_vectors() {
    for n in 2..=6 {
        ok(&format!("weight vectors n={}", n), suite::weight_vector_check(n));
    }
    for k in 1..=3 {
        ok(&format!("closure pairing 2k={}", 2 * k), suite::pairing_check(k));
    }
}

#[test]
fn criterion_10_principal_series() {
    let mode = Mode::Rational(rat(5, 3));
    for n in 2..=5 {
        ok(
            &format!("principal series n={}", n),
            suite::principal_series_check(n, &mode),
        );
    }
    for n in 2..=5 {
        ok(
            &format!("intertwiner squares n={} (length <= 3)", n),
            suite::intertwiner_square_check(n, 3, &mode),
        );
    }
}

#[test]
fn criterion_11_macdonald_suite() {
    for n in 2..=3 {
        ok(
            &format!("Macdonald n={} symbolic", n),
            suite::macdonald_check(n, &Mode::Symbolic, 20, 0),
        );
    }
    ok(
        "Macdonald n=4 at s=3",
        suite::macdonald_check(4, &Mode::Rational(rat(3, 1)), 20, 0),
    );
    for n in 2..=3 {
        ok(
            &format!("B-relations n={} (|lambda| <= 3)", n),
            suite::brelation_check(n, 3, rat(3, 1), rat(7, 2)),
        );
    }
    for n in 2..=3 {
        ok(
            &format!("CM comparison n={} symbolic", n),
            suite::cm_compare_check(n, &Mode::Symbolic),
        );
    }
    ok(
        "CM comparison n=4 at s=3",
        suite::cm_compare_check(4, &Mode::Rational(rat(3, 1))),
    );
}

#[test]
fn criterion_12_basic_rep_characterization() {
    for n in 2..=4 {
        ok(
            &format!("basic-representation characterization n={}", n),
            suite::basic_rep_check(n, &Mode::Symbolic),
        );
    }
}
