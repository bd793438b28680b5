//! Property tests for the structural invariants: group laws, round trips,
//! conservation, and label algebra.

use proptest::prelude::*;

use gds::alcove::{Case, EllContext, ExtAffine};
use gds::label::{character_of, dual_label, gfd_of, ModuleLabel};
use gds::roots::Weight;
use gds::{sl2, sl3, verlinde};

fn a1(case: Case) -> EllContext {
    EllContext::a1(5, case).unwrap()
}

fn a2(case: Case) -> EllContext {
    EllContext::a2(5, case).unwrap()
}

/// Strategy for extended affine Weyl elements of A2 as words in the
/// generators plus a translation.
fn a2_element() -> impl Strategy<Value = (Vec<u8>, Vec<i64>)> {
    (prop::collection::vec(0u8..3, 0..6), prop::collection::vec(-3i64..=3, 2))
}

fn build_element(ctx: &EllContext, word: &[u8], gamma: &[i64]) -> ExtAffine {
    let mut x = ExtAffine::translation(Weight::from_slice(gamma));
    for &g in word {
        let s = match g {
            0 => ctx.simple_reflection(0),
            1 => ctx.simple_reflection(1),
            _ => ctx.affine_reflection(),
        };
        x = x.compose(&s);
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ell_dot_is_an_action((wx, gx) in a2_element(), (wy, gy) in a2_element(), mu in prop::collection::vec(-6i64..=6, 2)) {
        let ctx = a2(Case::Modular);
        let x = build_element(&ctx, &wx, &gx);
        let y = build_element(&ctx, &wy, &gy);
        let mu = Weight::new(mu);
        prop_assert_eq!(
            ctx.ell_dot(&x.compose(&y), &mu),
            ctx.ell_dot(&x, &ctx.ell_dot(&y, &mu))
        );
        // inverses really invert
        prop_assert_eq!(ctx.ell_dot(&x.compose(&x.inverse()), &mu), mu);
    }

    #[test]
    fn omega_of_is_a_homomorphism((wx, gx) in a2_element(), (wy, gy) in a2_element()) {
        let ctx = a2(Case::Modular);
        let x = build_element(&ctx, &wx, &gx);
        let y = build_element(&ctx, &wy, &gy);
        let lhs = ctx.omega_of(&x.compose(&y));
        let rhs = ctx.omega_of(&x).compose(&ctx.omega_of(&y));
        // compare as elements of Ω via their action on 0
        prop_assert_eq!(
            ctx.ell_dot(&lhs, &Weight::zero(2)),
            ctx.ell_dot(&ctx.omega_of(&rhs), &Weight::zero(2))
        );
    }

    #[test]
    fn locate_round_trips(w in prop::collection::vec(0u8..3, 0..6), c1 in -2i64..=2, c2 in -2i64..=2, a in 0i64..2, b in 0i64..2) {
        let ctx = a2(Case::Modular);
        let lam = Weight::new(vec![a, b]);
        prop_assume!(ctx.in_c_fund(&lam));
        // translations from the root lattice keep x in W_aff, whose orbits
        // the fundamental domain parametrizes
        let gamma = [2 * c1 - c2, 2 * c2 - c1];
        let x = build_element(&ctx, &w, &gamma);
        prop_assert!(ctx.in_w_aff(&x));
        let mu = ctx.ell_dot(&x, &lam);
        let loc = ctx.locate(&mu);
        prop_assert!(loc.regular);
        prop_assert_eq!(&loc.fundamental, &lam);
        prop_assert_eq!(ctx.ell_dot(&loc.element, &lam), mu);
        prop_assert_eq!(ctx.length(&loc.element), loc.steps);
    }

    #[test]
    fn dominate_is_idempotent_and_orthogonal(a in -20i64..20, b in -20i64..20) {
        let rs = gds::RootSystem::a2();
        let lam = Weight::new(vec![a, b]);
        let d = rs.dominate(&lam);
        prop_assert!(d.weight.plus(rs.rho()).is_dominant());
        let d2 = rs.dominate(&d.weight);
        prop_assert_eq!(&d2.weight, &d.weight);
        if let Some(p) = d.parity {
            prop_assert_eq!(p, d.witness.det());
        }
    }

    #[test]
    fn character_products_are_commutative_and_dimension_multiplicative(
        a in 0i64..8, b in 0i64..8, c in 0i64..8, d in 0i64..8
    ) {
        let ctx = a2(Case::Modular);
        let x = ctx.weyl_character(&Weight::new(vec![a, b])).unwrap();
        let y = ctx.weyl_character(&Weight::new(vec![c, d])).unwrap();
        let xy = x.product(&y).unwrap();
        prop_assert_eq!(&xy, &y.product(&x).unwrap());
        prop_assert_eq!(xy.dimension(), x.dimension() * y.dimension());
        prop_assert!(xy.is_w_invariant());
    }

    #[test]
    fn steinberg_factorization_of_characters(a in 0i64..60) {
        let ctx = a1(Case::Modular);
        let lam = Weight::new(vec![a]);
        let (d0, d1) = ctx.split_restricted(&lam).unwrap();
        let lhs = ctx.simple_character(&lam).unwrap();
        let rhs = ctx
            .simple_character(&d0)
            .unwrap()
            .product(&ctx.simple_character(&d1).unwrap().stretch(5, 1))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cg_sum_rule(a in 0i64..40, b in 0i64..40) {
        // Σ_{c ∈ CG(a,b)} (c+1) = (a+1)(b+1)
        let total: i64 = sl2::cg_set(a, b).unwrap().iter().map(|c| c + 1).sum();
        prop_assert_eq!(total, (a + 1) * (b + 1));
    }

    #[test]
    fn doty_henke_conserves_characters(a in 0i64..40, b in 0i64..40) {
        let ctx = a1(Case::Modular);
        let dec = sl2::doty_henke(a, b, &ctx).unwrap();
        prop_assert!(dec.verify_conservation(&ctx).unwrap().exact);
    }

    #[test]
    fn generic_summand_sits_in_the_regular_part(a in 0i64..12, b in 0i64..12, oa in 0usize..2, ob in 0usize..2) {
        for case in [Case::Modular, Case::Quantum] {
            let ctx = a1(case);
            let omegas = ctx.omega_group().to_vec();
            let x = ExtAffine::translation(Weight::new(vec![a])).compose(&omegas[oa]);
            let y = ExtAffine::translation(Weight::new(vec![b])).compose(&omegas[ob]);
            let g = sl2::generic_summand(&x, &y, &ctx).unwrap();
            let dec = sl2::regular_part(&x, &y, &ctx).unwrap();
            prop_assert_eq!(dec.multiplicity(&g), 1);
            let expect = ctx.length(&x) + ctx.length(&y);
            prop_assert_eq!(gfd_of(&g, &ctx).unwrap(), Some(expect));
        }
    }

    #[test]
    fn nabla_duality_at_the_label_level(a in 0i64..10, b in 0i64..10) {
        // G_∇ ≅ G_Δ^τ: the quantum labels dualize into each other
        let ctx = a1(Case::Quantum);
        let x = ExtAffine::translation(Weight::new(vec![a]));
        let y = ExtAffine::translation(Weight::new(vec![b]));
        let nabla = sl2::generic_summand_nabla(&x, &y, &ctx).unwrap();
        let delta = dual_label(&nabla).unwrap();
        if a + b > 0 {
            prop_assert_eq!(delta, ModuleLabel::Weyl(Weight::new(vec![5 * (a + b)])));
        } else {
            prop_assert_eq!(delta, ModuleLabel::unit(1));
        }
    }

    #[test]
    fn label_json_round_trip(digits in prop::collection::vec(0i64..9, 1..4), twist in 0u32..3, nu in 0i64..3) {
        let labels = vec![
            ModuleLabel::Jmod(digits.clone()).normalize(),
            ModuleLabel::FrobTwist {
                inner: Box::new(ModuleLabel::Jmod(digits)),
                power: twist,
            }
            .normalize(),
            ModuleLabel::TranslatedTo {
                target: Weight::new(vec![nu, 0]),
                inner: Box::new(ModuleLabel::BdmM(Weight::new(vec![nu, 0]))),
            },
        ];
        for l in labels {
            let v = l.to_json();
            let back = ModuleLabel::from_json(&v).unwrap();
            prop_assert_eq!(&back, &l);
            prop_assert_eq!(back.to_json().to_string(), v.to_string());
        }
    }

    #[test]
    fn fusion_is_commutative_a1(ell in 3i64..10, a in 0i64..8, b in 0i64..8) {
        let ctx = EllContext::a1(ell, Case::Quantum).unwrap();
        prop_assume!(a <= ell - 2 && b <= ell - 2);
        let f = verlinde::fusion(&Weight::new(vec![a]), &Weight::new(vec![b]), &ctx).unwrap();
        let g = verlinde::fusion(&Weight::new(vec![b]), &Weight::new(vec![a]), &ctx).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn a2_generic_summand_conservation(la in 0i64..2, lb in 0i64..2, ea in 0u8..2, eb in 0u8..2) {
        // quantum regular parts conserve characters for mixed seeds and twists
        let ctx = a2(Case::Quantum);
        let u = ctx.affine_reflection();
        let mk = |l: i64, m: i64, e: u8| {
            let mut x = ExtAffine::translation(Weight::new(vec![l, m]));
            if e == 1 {
                x = x.compose(&u);
            }
            x
        };
        let x = mk(la, lb, ea);
        let y = mk(lb, la, eb);
        let dec = sl3::regular_part(&x, &y, &ctx).unwrap();
        let report = dec.verify_conservation(&ctx).unwrap();
        prop_assert!(report.exact);
        let g = sl3::generic_summand(&x, &y, &ctx).unwrap();
        prop_assert!(dec.multiplicity(&g) >= 1);
    }
}

#[test]
fn a2_tilting_outside_validated_region_is_unknown() {
    let ctx = a2(Case::Modular);
    // (5,0) lies beyond C̄_fund ∪ u·C̄_fund: no tabulated character
    let t = ModuleLabel::Tilting(Weight::new(vec![5, 0]));
    assert!(character_of(&t, &ctx).unwrap().is_none());
    // but its gfd is still 0 (tilting modules have good filtrations)
    assert_eq!(gfd_of(&t, &ctx).unwrap(), Some(0));
}

#[test]
fn regular_part_residual_is_effective() {
    // whatever the regular part misses is a genuine character (the negligible
    // tilting complement): non-negative on every weight
    let ctx = a1(Case::Modular);
    for (a, b) in [(3, 3), (4, 4), (7, 9), (12, 8)] {
        let x = ExtAffine::translation(Weight::new(vec![a]));
        let y = ExtAffine::translation(Weight::new(vec![b]));
        let dec = sl2::regular_part(&x, &y, &ctx).unwrap();
        let la = ctx.simple_character(&Weight::new(vec![5 * a])).unwrap();
        let lb = ctx.simple_character(&Weight::new(vec![5 * b])).unwrap();
        let mut residual = la.product(&lb).unwrap();
        residual.add_scaled(dec.expected_character(), -1);
        assert!(residual.sorted_entries().iter().all(|(_, m)| *m >= 0), "(a,b)=({a},{b})");
    }
}
