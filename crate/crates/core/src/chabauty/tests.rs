use super::*;
use crate::exactlinalg::frac;
use crate::liealg::RootDatum;
use crate::sampling;

fn sl3() -> RootDatum {
    RootDatum::new(3).unwrap()
}

#[test]
fn abelian_examples() {
    let r = sl3();
    assert!(is_abelian(&r.cartan()));
    assert!(!is_abelian(&r.nilradical()));
    let r4 = RootDatum::new(4).unwrap();
    let l0 = span_of(&[
        SlElement::elementary(4, 1, 3),
        SlElement::elementary(4, 1, 4),
        SlElement::elementary(4, 2, 3),
        SlElement::elementary(4, 2, 4),
    ])
    .unwrap();
    assert!(is_abelian(&l0));
    assert_eq!(build_xv(4).unwrap(), l0);
    assert!(r4.borel().contains_subspace(&l0));
}

#[test]
fn triangularization_examples() {
    let r = sl3();
    let t = simultaneous_real_triangularization(&r.cartan()).unwrap();
    let g = t.exact().unwrap();
    assert!(elements_of(&adjoint_subspace(g, &r.cartan()).unwrap()).unwrap().iter().all(SlElement::is_upper_triangular));

    let l11 = span_of(&[r.u_named("alpha").unwrap().add(&r.u_named("beta").unwrap()), r.u_named("alpha+beta").unwrap()]).unwrap();
    assert!(simultaneous_real_triangularization(&l11).unwrap().exact().is_some());

    let rot = span_of(&[rotation_sl2()]).unwrap();
    assert!(matches!(simultaneous_real_triangularization(&rot).unwrap(), Triangularization::NotReal));
    assert!(!is_real_rooted(&charpoly(rotation_sl2().matrix()).unwrap()).unwrap());

    assert_eq!(simultaneous_real_triangularization(&r.nilradical()).unwrap_err(), Error::NotAbelian);
}

#[test]
fn triangularizes_conjugated_cartan() {
    let mut rng = sampling::rng(7);
    for n in [2, 3, 4] {
        for _ in 0..5 {
            let g = sampling::sl_group_element(&mut rng, n, 6, 3);
            let s = adjoint_subspace(&g, &standard_cartan(n)).unwrap();
            let t = simultaneous_real_triangularization(&s).unwrap();
            let w = t.exact().expect("rational eigenvalues");
            let img = adjoint_subspace(w, &s).unwrap();
            assert!(elements_of(&img).unwrap().iter().all(SlElement::is_upper_triangular));
        }
    }
}

#[test]
fn irrational_spectrum_gets_float_witness() {
    // [[0, 2], [1, 0]] has eigenvalues ±√2.
    let x = SlElement::new(MatQ::from_i64(&[&[0, 2], &[1, 0]])).unwrap();
    let s = span_of(&[x]).unwrap();
    match simultaneous_real_triangularization(&s).unwrap() {
        Triangularization::Float(w) => assert!(w.max_subdiagonal < 1e-8),
        other => panic!("expected float witness, got {other:?}"),
    }
    assert!(is_in_a(&s, 1));
}

#[test]
fn is_in_a_examples() {
    let r = sl3();
    assert!(is_in_a(&r.cartan(), 2));
    // H_α together with a rotation in the (2,3) block.
    let rot = SlElement::elementary(3, 2, 3).sub(&SlElement::elementary(3, 3, 2));
    let s = span_of(&[r.h_named("alpha").unwrap(), rot]).unwrap();
    assert!(is_abelian(&s));
    assert!(!is_in_a(&s, 2));
    let m = a_membership(&s).unwrap();
    assert!(m.is_abelian && !m.has_real_spectrum && m.borel_witness.is_none());
}

#[test]
fn sl2_closure_examples() {
    let h = SlElement::new(MatQ::from_i64(&[&[1, 0], &[0, -1]])).unwrap();
    assert!(sl2_closure_membership(&h).unwrap());
    assert!(sl2_closure_membership(&SlElement::elementary(2, 1, 2)).unwrap());
    assert!(!sl2_closure_membership(&rotation_sl2()).unwrap());
    assert!(sl2_closure_membership(&SlElement::zero(2)).is_err());
    assert!(sl2_closure_membership(&SlElement::zero(3)).is_err());
}

#[test]
fn sl2_boundary_at_moderate_schedule_has_expected_gaps() {
    // The line through H − 2tU sits at angle ≈ 1/(2t) from R·U, so the gap
    // between t = 100 and t = 1000 is about √2·(1/200 − 1/2000) ≈ 6.4e-3.
    let rep = sl2_rank_one_boundary(&[10, 100, 1000], 1e-2, 0, 1, 1e-8).unwrap();
    assert!(rep.main_certified);
    let g = rep.main_gaps[1];
    assert!((g - 2f64.sqrt() * (1.0 / 200.0 - 1.0 / 2000.0)).abs() < 1e-4, "gap {g}");
    assert!(rep.constant_family_limit_det < 0.0);
}

#[test]
fn sl2_boundary_limits_are_nilpotent() {
    let rep = sl2_rank_one_boundary(&[1000, 10_000, 100_000], 1e-4, 20, 3, 1e-8).unwrap();
    assert!(rep.main_certified);
    assert!(rep.main_distance_to_nilpotent_line < 1e-4);
    assert!(rep.all_limits_nilpotent, "{:?}", rep.cases);
}

#[test]
fn lemma34_values() {
    assert_eq!(lemma34_gap(7).unwrap(), (48, 42));
    assert_eq!(lemma34_gap(6).unwrap(), (29, 30));
    assert_eq!(lemma34_gap(2).unwrap(), (1, 2));
    assert!(lemma34_gap(1).is_err());
    for m in 2..=12 {
        let (c, k) = lemma34_gap(m).unwrap();
        assert_eq!(c > k, m >= 7, "m = {m}");
    }
}

#[test]
fn xv_dimensions() {
    for m in 2..=9usize {
        let s = build_xv(m).unwrap();
        let p = m / 2;
        assert_eq!(s.dim(), p * (m - p));
        assert!(is_abelian(&s));
        assert!(elements_of(&s).unwrap().iter().all(SlElement::is_strictly_upper));
    }
    assert_eq!(build_xv(2).unwrap(), span_of(&[SlElement::elementary(2, 1, 2)]).unwrap());
}

#[test]
fn pi1_values() {
    assert_eq!(pi1_cardinality(3).unwrap(), BigInt::from(48));
    assert_eq!(pi1_cardinality(4).unwrap(), BigInt::from(384));
    assert_eq!(pi1_cardinality(5).unwrap(), BigInt::from(3840));
    assert!(pi1_cardinality(2).is_err());
}

#[test]
fn convergents_recover_small_fractions() {
    assert!(convergents(2.0 / 3.0 + 1e-9).contains(&frac(2, 3)));
    assert!(convergents(-1.25).contains(&frac(-5, 4)));
}
