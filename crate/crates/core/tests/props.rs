//! Randomized property tests for the scalar ring, polynomial substitutions,
//! pattern encodings, and the diagram-algebra relations.

use proptest::prelude::*;
use qkz_core::pattern::{enumerate, from_dyck, to_dyck, ModuleVector, Pattern};
use qkz_core::ring::{rat, Mode, Scalar, Subst, ZPoly};
use qkz_core::tlrep::{e_apply, letter_apply, rho_apply, Letter};

fn modes() -> Vec<Mode> {
    vec![
        Mode::Symbolic,
        Mode::Rational(rat(7, 3)),
        Mode::Cyclotomic,
    ]
}

/// A random scalar in the given mode, built from a short signed monomial sum.
fn scalar_from(mode: &Mode, picks: &[(i64, i64, i64)]) -> Scalar {
    let mut acc = mode.zero();
    for &(c, a, b) in picks {
        let term = mode
            .from_rat(rat(c, 1))
            .mul(&mode.s_pow(a))
            .mul(&mode.v_pow(b));
        acc = acc.add(&term);
    }
    acc
}

fn picks() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
    proptest::collection::vec((-4i64..=4, -3i64..=3, -2i64..=2), 1..=3)
}

fn zpow(p: &ZPoly, e: u32) -> ZPoly {
    let mut r = ZPoly::constant(p.n, Mode::Symbolic.one());
    for _ in 0..e {
        r = r.mul(p);
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(pa in picks(), pb in picks(), pc in picks()) {
        for mode in modes() {
            let a = scalar_from(&mode, &pa);
            let b = scalar_from(&mode, &pb);
            let c = scalar_from(&mode, &pc);
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), mode.zero());
            prop_assert_eq!(a.add(&mode.zero()), a.clone());
            prop_assert_eq!(a.mul(&mode.one()), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), mode.one());
                if !b.is_zero() {
                    prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
                }
            }
        }
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(pa in picks(), pb in picks()) {
        let sym = Mode::Symbolic;
        let a = scalar_from(&sym, &pa);
        let b = scalar_from(&sym, &pb);
        for target in [Mode::Rational(rat(5, 2)), Mode::Cyclotomic] {
            let f = |x: &Scalar| x.specialize(&target).unwrap();
            prop_assert_eq!(f(&a.add(&b)), f(&a).add(&f(&b)));
            prop_assert_eq!(f(&a.mul(&b)), f(&a).mul(&f(&b)));
            prop_assert_eq!(f(&a.neg()), f(&a).neg());
        }
    }

    #[test]
    fn invert_and_clear_is_an_involution(
        exps in proptest::collection::vec((0u32..=3, 0u32..=3), 1..=4),
        coeffs in proptest::collection::vec(-5i64..=5, 4),
    ) {
        let m = Mode::Symbolic;
        let mut p = ZPoly::zero(2);
        for (k, &(e1, e2)) in exps.iter().enumerate() {
            let c = m.from_rat(rat(coeffs[k % coeffs.len()], 1));
            let mono = zpow(&ZPoly::var(2, 1, &m), e1)
                .mul(&zpow(&ZPoly::var(2, 2, &m), e2))
                .scalar_mul(&c);
            p = p.add(&mono);
        }
        let q = p.substitute(&Subst::InvertAndClear(3)).unwrap();
        let back = q.substitute(&Subst::InvertAndClear(3)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn swap_substitution_is_an_involution(
        exps in proptest::collection::vec((0u32..=3, 0u32..=3, 0u32..=3), 1..=4),
    ) {
        let m = Mode::Symbolic;
        let mut p = ZPoly::zero(3);
        for &(a, b, c) in &exps {
            let mono = zpow(&ZPoly::var(3, 1, &m), a)
                .mul(&zpow(&ZPoly::var(3, 2, &m), b))
                .mul(&zpow(&ZPoly::var(3, 3, &m), c));
            p = p.add(&mono);
        }
        for i in 1..=2usize {
            let back = p
                .substitute(&Subst::Swap(i))
                .unwrap()
                .substitute(&Subst::Swap(i))
                .unwrap();
            prop_assert_eq!(back, p.clone());
        }
    }

    #[test]
    fn rho_shift_substitutions_invert_each_other(
        exps in proptest::collection::vec((0u32..=3, 0u32..=3), 1..=4),
    ) {
        let m = Mode::Symbolic;
        let mut p = ZPoly::zero(2);
        for &(a, b) in &exps {
            let mono = zpow(&ZPoly::var(2, 1, &m), a)
                .mul(&zpow(&ZPoly::var(2, 2, &m), b));
            p = p.add(&mono);
        }
        let fwd = p.substitute(&Subst::RhoShift(m.q())).unwrap();
        let back = fwd.substitute(&Subst::RhoInvShift(m.q())).unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pattern_word_roundtrip(n in 1usize..=6, idx in 0usize..1000) {
        let pats = enumerate(n);
        let l = &pats[idx % pats.len()];
        let decoded = Pattern::word_decode(n, &l.word_encode());
        prop_assert_eq!(decoded.as_ref(), Some(l));
    }

    #[test]
    fn dyck_roundtrip_on_stratum(n in 1usize..=6, idx in 0usize..1000) {
        let pats: Vec<Pattern> = enumerate(n)
            .into_iter()
            .filter(|l| if l.is_even() { l.gstar == Some(0) } else { l.defect == Some(l.n) })
            .collect();
        let l = &pats[idx % pats.len()];
        prop_assert_eq!(&from_dyck(n, &to_dyck(l)), l);
    }

    #[test]
    fn temperley_lieb_relations(n in 2usize..=6, idx in 0usize..1000) {
        let m = Mode::Symbolic;
        let pats = enumerate(n);
        let l = &pats[idx % pats.len()];
        let v = ModuleVector::basis(l, m.one());
        for i in 1..n {
            // e_i^2 = delta e_i
            let ei = letter_apply(Letter::E(i), &v, &m);
            let eii = letter_apply(Letter::E(i), &ei, &m);
            prop_assert!(eii.sub(&ei.scalar_mul(&m.delta())).is_zero());
            // e_i e_{i+1} e_i = e_i
            if i + 1 < n {
                let w = letter_apply(
                    Letter::E(i),
                    &letter_apply(Letter::E(i + 1), &letter_apply(Letter::E(i), &v, &m), &m),
                    &m,
                );
                prop_assert!(w.sub(&ei).is_zero());
            }
            // rho e_i rho^{-1} = e_{i+1} for i < n-1
            if i + 1 < n {
                let lhs = letter_apply(
                    Letter::Rho,
                    &letter_apply(Letter::E(i), &letter_apply(Letter::RhoInv, &v, &m), &m),
                    &m,
                );
                let rhs = letter_apply(Letter::E(i + 1), &v, &m);
                prop_assert!(lhs.sub(&rhs).is_zero());
            }
        }
        // rho^n = v^{+-1} id on the basis vector
        let mut r = v.clone();
        for _ in 0..n {
            r = letter_apply(Letter::Rho, &r, &m);
        }
        let twist = if l.is_even() { m.one() } else { m.v_pow(1) };
        prop_assert!(r.sub(&v.scalar_mul(&twist)).is_zero());
    }

    #[test]
    fn e_apply_preserves_validity(n in 2usize..=6, idx in 0usize..1000) {
        let m = Mode::Symbolic;
        let pats = enumerate(n);
        let l = &pats[idx % pats.len()];
        for i in 1..n {
            let (_, out) = e_apply(i, l, &m);
            prop_assert!(out.is_valid());
            prop_assert_eq!(out.n, n);
        }
        let (_, r) = rho_apply(l, 1, &m);
        prop_assert!(r.is_valid());
    }
}
