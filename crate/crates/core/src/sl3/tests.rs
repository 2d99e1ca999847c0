use super::*;
use crate::exactlinalg::parse_rat;
use crate::grassmann::limit_estimate;

fn r(s: &str) -> Rat {
    parse_rat(s).unwrap()
}

fn ms(s: &str) -> MonomialSum {
    MonomialSum::parse(s).unwrap()
}

#[test]
fn representatives_are_abelian_in_borel() {
    for l in OrbitLabel3::ALL {
        check_borel_abelian(&l.representative(), 3, 2).unwrap();
    }
}

#[test]
fn classify_representatives() {
    for l in OrbitLabel3::ALL {
        let c = classify_y(&l.representative()).unwrap();
        assert_eq!(orbit_label(&c), l, "{l}");
        assert_eq!(c.reconstruct(), l.representative());
    }
}

#[test]
fn classify_moved_cartan_recovers_b() {
    let b = b_family(&r("2"), &r("-3"), &r("1/2"));
    let s = adjoint_subspace(&b, &cartan()).unwrap();
    match classify_y(&s).unwrap() {
        ClassRes3::CartanConj { b: w } => assert_eq!(w, b),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn classify_root_witness_is_canonical() {
    let (p, q) = (r("5/3"), r("-7"));
    for root in Sl3Root::ALL {
        let b = root_witness(root, &p, &q);
        let s = adjoint_subspace(&b, &l_root(root)).unwrap();
        match classify_y(&s).unwrap() {
            ClassRes3::LRoot { root: got, b: w } => {
                assert_eq!(got, root);
                assert_eq!(w, b);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

#[test]
fn classify_rejects_bad_input() {
    let d = datum();
    let one = span_of(&[u("alpha")]).unwrap();
    assert!(matches!(classify_y(&one), Err(Error::WrongDimension { .. })));
    let lower = span_of(&[SlElement::elementary(3, 2, 1), h_alpha()]).unwrap();
    assert_eq!(classify_y(&lower), Err(Error::NotInBorel));
    let nonab = span_of(&[u("alpha"), h_alpha()]).unwrap();
    assert_eq!(classify_y(&nonab), Err(Error::NotAbelian));
    let _ = d;
}

#[test]
fn classify_random_elements() {
    let mut rng = sampling::rng(11);
    for _ in 0..200 {
        let (label, s) = random_y(&mut rng, 6);
        let c = classify_y(&s).unwrap();
        let got = orbit_label(&c);
        // l[1:1] and l[1:-1] orbits are preserved by AN, as are the fixed points.
        assert_eq!(got, label);
        assert_eq!(c.reconstruct(), s);
    }
}

#[test]
fn normalizer_and_orbit_dimensions() {
    let n: Vec<usize> = OrbitLabel3::ALL.iter().map(|l| normalizer_dim(&l.representative()).unwrap()).collect();
    let o: Vec<usize> = OrbitLabel3::ALL.iter().map(|l| b0_orbit_dim(&l.representative()).unwrap()).collect();
    assert_eq!(n, vec![2, 6, 6, 4, 4, 3, 3, 3]);
    assert_eq!(o, vec![3, 0, 0, 1, 1, 2, 2, 2]);
}

#[test]
fn sigma_swaps_the_two_lines() {
    assert!(sigma_involution_check());
}

#[test]
fn cartan_case_detection() {
    let c = detect_cartan_case(&ms("1@1"), &ms("2"), &ms("-1@1,3")).unwrap();
    assert_eq!(c, CartanLimitCase::XInfinite { y: r("2"), z: r("3") });
    let c = detect_cartan_case(&ms("1@2"), &ms("1@1"), &ms("0")).unwrap();
    assert_eq!(c, CartanLimitCase::Projective(ProjPoint::from_i64(&[1, 0]).unwrap()));
}

#[test]
fn cartan_sequence_converges_to_root_limit() {
    let fam = cartan_family(ms("1@1"), ms("2"), ms("-1@1,3"));
    let est = limit_estimate(&fam, &[100, 1000, 10000, 100000], 1e-3).unwrap();
    assert!(est.certified(), "{:?}", est.gaps);
    let target = predicted_limit_cartan(&CartanLimitCase::XInfinite { y: r("2"), z: r("3") }).unwrap();
    assert!(est.distance_to(&target).unwrap() < 1e-3);
}

#[test]
fn orbit_ratio_limits() {
    let p = orbit_ratio_limit(OrbitRep::LAlpha, &ms("1@1"), &ms("3@2")).unwrap();
    assert_eq!(p, ProjPoint::from_i64(&[3, 1]).unwrap());
    let fam = orbit_family(OrbitRep::LAlpha, ms("1@1"), ms("3@2"));
    let est = limit_estimate(&fam, &[100, 1000, 10000, 100000], 1e-3).unwrap();
    let target = predicted_limit_orbit(OrbitRep::LAlpha, &OrbitLimitData::Ratio(p)).unwrap();
    assert!(est.distance_to(&target).unwrap() < 1e-3, "{:?}", est.gaps);
}

#[test]
fn lambda_limits() {
    let fam = orbit_family(OrbitRep::L11, ms("1@1"), ms("0"));
    let est = limit_estimate(&fam, &[10, 100, 1000], 1e-4).unwrap();
    let target = predicted_limit_orbit(OrbitRep::L11, &OrbitLimitData::Lambda { to_infinity: true }).unwrap();
    assert!(est.distance_to(&target).unwrap() < 1e-4);
}
