//! Property tests for the algebraic and geometric invariants.

use chabauty_core::chabauty::{is_in_a, sl2_closure_membership, spectrum_tests_agree};
use chabauty_core::exactlinalg::{charpoly, frac, is_real_rooted, kernel, rank, rat, rref, MatQ, VecQ};
use chabauty_core::grassmann::{distance, SubspaceF, SubspaceQ};
use chabauty_core::liealg::{
    ad_matrix, adjoint, b_family, bracket, exp_unipotent, GroupElement, RootDatum, SlElement,
};
use chabauty_core::sampling;
use chabauty_core::sl3::{self, ClassRes3, OrbitLabel3};
use chabauty_core::sl4::{self, TAGS};
use chabauty_core::topology::{phi, prime, unprime, BlownBallPoint};
use chabauty_core::liealg::adjoint_subspace;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatQ> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-5i64..=5, r * c).prop_map(move |v| {
            MatQ::from_vec(r, c, v.into_iter().map(rat).collect()).expect("sizes")
        })
    })
}

fn square_matrix(max_n: usize) -> impl Strategy<Value = MatQ> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n)
            .prop_map(move |v| MatQ::from_vec(n, n, v.into_iter().map(rat).collect()).expect("sizes"))
    })
}

fn dmatrix(m: &MatQ) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), &m.to_f64())
}

/// Random exact subspace of Q^d spanned by k small integer vectors.
fn subspace(d: usize, k: usize) -> impl Strategy<Value = SubspaceQ> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, d), 1..=k).prop_map(move |vs| {
        let vs: Vec<VecQ> = vs.into_iter().map(|v| v.into_iter().map(rat).collect()).collect();
        SubspaceQ::from_spanning_set(&vs, d).expect("ambient")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rref_is_idempotent(m in small_matrix(5, 6)) {
        let once = rref(&m);
        let twice = rref(&once.reduced);
        prop_assert_eq!(&twice.reduced, &once.reduced);
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in small_matrix(5, 6)) {
        let ker = kernel(&m);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == rat(0)));
        }
        prop_assert_eq!(ker.len() + rank(&m), m.cols());
    }

    #[test]
    fn charpoly_is_a_similarity_invariant(m in square_matrix(4), seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let p = sampling::sl_group_element(&mut rng, m.rows().max(2), 5, 4);
        prop_assume!(m.rows() >= 2);
        let conj = &(p.matrix() * &m) * &p.matrix().inverse().unwrap();
        prop_assert_eq!(charpoly(&conj).unwrap(), charpoly(&m).unwrap());
    }

    #[test]
    fn real_rootedness_matches_float_eigenvalues(m in square_matrix(6)) {
        let eig = dmatrix(&m).complex_eigenvalues();
        let clearly_complex = eig.iter().any(|z| z.im.abs() > 1e-6);
        let clearly_real = eig.iter().all(|z| z.im.abs() < 1e-9);
        // Repeated roots perturb the float spectrum off the real axis; only
        // unambiguous float verdicts are compared.
        prop_assume!(clearly_complex || clearly_real);
        prop_assert_eq!(is_real_rooted(&charpoly(&m).unwrap()).unwrap(), clearly_real);
    }

    #[test]
    fn jacobi_identity(seed in any::<u64>(), n in 3usize..=4) {
        let mut rng = sampling::rng(seed);
        let x = sampling::sl_element(&mut rng, n, 5);
        let y = sampling::sl_element(&mut rng, n, 5);
        let z = sampling::sl_element(&mut rng, n, 5);
        let b = |a: &SlElement, c: &SlElement| bracket(a, c).unwrap();
        let sum = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn ad_is_a_lie_algebra_morphism(seed in any::<u64>(), n in 3usize..=4) {
        let mut rng = sampling::rng(seed);
        let x = sampling::sl_element(&mut rng, n, 4);
        let y = sampling::sl_element(&mut rng, n, 4);
        let (ax, ay) = (ad_matrix(&x), ad_matrix(&y));
        prop_assert_eq!(ad_matrix(&bracket(&x, &y).unwrap()), &(&ax * &ay) - &(&ay * &ax));
    }

    #[test]
    fn adjoint_is_an_action(seed in any::<u64>(), n in 3usize..=4) {
        let mut rng = sampling::rng(seed);
        let g = sampling::sl_group_element(&mut rng, n, 4, 3);
        let h = sampling::sl_group_element(&mut rng, n, 4, 3);
        let x = sampling::sl_element(&mut rng, n, 4);
        let lhs = adjoint(&g.compose(&h), &x).unwrap();
        let rhs = adjoint(&g, &adjoint(&h, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_is_additive_on_commuting_nilpotents(seed in any::<u64>(), n in 3usize..=4, a in -4i64..=4, c in -4i64..=4) {
        let mut rng = sampling::rng(seed);
        let u = sampling::unipotent_upper(&mut rng, n, 4);
        let x = SlElement::new(u.matrix() - &MatQ::identity(n)).unwrap();
        let x2 = SlElement::new(x.matrix() * x.matrix()).unwrap();
        let y = x.scale(&rat(a)).add(&x2.scale(&rat(c)));
        let lhs = exp_unipotent(&x.add(&y)).unwrap();
        let rhs = exp_unipotent(&x).unwrap().compose(&exp_unipotent(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn subspace_equality_is_plucker_equality(s in subspace(8, 4), t in subspace(8, 4), seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        // Re-span s through a random invertible combination of its basis.
        let k = s.dim();
        let g = sampling::sl_group_element(&mut rng, k.max(2), 6, 3);
        let basis = s.basis();
        let respanned: Vec<VecQ> = (0..k)
            .map(|i| {
                let mut v = vec![rat(0); 8];
                for (j, b) in basis.iter().enumerate() {
                    let c = g.matrix().get(i, j);
                    for (e, bj) in v.iter_mut().zip(b) {
                        *e += c * bj;
                    }
                }
                v
            })
            .collect();
        let copy = if k >= 2 { SubspaceQ::from_spanning_set(&respanned, 8).unwrap() } else { s.clone() };
        prop_assert_eq!(&copy, &s);
        prop_assert_eq!(copy.plucker().unwrap(), s.plucker().unwrap());
        if s.dim() == t.dim() {
            let same_plucker = s.plucker().unwrap() == t.plucker().unwrap();
            prop_assert_eq!(same_plucker, s == t);
            let d = distance(&SubspaceF::from_exact(&s), &SubspaceF::from_exact(&t)).unwrap();
            prop_assert_eq!(d < 1e-9, s == t);
        }
    }

    #[test]
    fn spanning_set_is_scale_and_order_invariant(vs in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..5), scales in prop::collection::vec(1i64..=7, 5), rot in 0usize..5) {
        let exact: Vec<VecQ> = vs.iter().map(|v| v.iter().map(|x| rat(*x)).collect()).collect();
        let mut scaled: Vec<VecQ> = exact
            .iter()
            .zip(&scales)
            .map(|(v, s)| v.iter().map(|x| x * frac(if s % 2 == 0 { -*s } else { *s }, 3)).collect())
            .collect();
        let len = scaled.len();
        scaled.rotate_left(rot % len);
        prop_assert_eq!(SubspaceQ::from_spanning_set(&scaled, 6).unwrap(), SubspaceQ::from_spanning_set(&exact, 6).unwrap());
    }

    #[test]
    fn defining_and_adjoint_spectrum_tests_agree(seed in any::<u64>(), n in 3usize..=4) {
        let mut rng = sampling::rng(seed);
        let x = sampling::sl_element(&mut rng, n, 5);
        prop_assert!(spectrum_tests_agree(&x));
    }

    #[test]
    fn sl2_closure_is_closed_under_limits(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let x = sampling::sl_element(&mut rng, 2, 5);
        let y = sampling::sl_element(&mut rng, 2, 5);
        prop_assume!(!x.is_zero());
        let members = (1..=60).all(|k| {
            let xk = x.add(&y.scale(&frac(1, k)));
            xk.is_zero() || sl2_closure_membership(&xk).unwrap()
        });
        if members {
            prop_assert!(sl2_closure_membership(&x).unwrap());
        }
    }

    #[test]
    fn cartan_witnesses_are_unique(seed in any::<u64>(), same in any::<bool>()) {
        let mut rng = sampling::rng(seed);
        let n1 = sampling::unipotent_upper(&mut rng, 3, 10);
        let n2 = if same { n1.clone() } else { sampling::unipotent_upper(&mut rng, 3, 10) };
        let w = |n: &GroupElement| match sl3::classify_y(&adjoint_subspace(n, &sl3::cartan()).unwrap()).unwrap() {
            ClassRes3::CartanConj { b } => b,
            other => panic!("{other:?}"),
        };
        let (w1, w2) = (w(&n1), w(&n2));
        prop_assert_eq!(&w1, &n1);
        prop_assert_eq!(w1 == w2, n1 == n2);
    }

    #[test]
    fn elements_of_y_lie_in_the_boundary_set(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let (label, s) = sl3::random_y(&mut rng, 10);
        prop_assert!(is_in_a(&s, 2), "{}", label);
        let c = sl3::classify_y(&s).unwrap();
        prop_assert_eq!(sl3::orbit_label(&c), label);
        prop_assert_eq!(c.reconstruct().plucker().unwrap(), s.plucker().unwrap());
    }

    #[test]
    fn sl4_parameters_are_unique(seed in any::<u64>(), k in 0usize..10) {
        let mut rng = sampling::rng(seed);
        let c = sl4::random_type(&mut rng, TAGS[k], 10).unwrap();
        let s = c.reconstruct().unwrap();
        let again = sl4::classify_b4(&s).unwrap();
        prop_assert_eq!(&again.reconstruct().unwrap(), &s);
        prop_assert_eq!(again.tag(), c.tag());
        prop_assert_eq!(sl4::classify_b4(&again.reconstruct().unwrap()).unwrap(), again.clone());
        prop_assert!(is_in_a(&s, 3));
        prop_assert_eq!(sl4::is_maximal_abelian_in_b(&s).unwrap(), TAGS[k] != "T9");
    }

    #[test]
    fn phi_on_dyadic_interior_points_is_exact(x in -64i64..64, y in -64i64..64, w in -64i64..64) {
        let p = BlownBallPoint::interior(x as f64 / 8.0, y as f64 / 8.0, w as f64 / 8.0).unwrap();
        let zp = frac(w, 8);
        let z = if w < 0 { -(&zp * &zp) } else { &zp * &zp };
        let expected = adjoint_subspace(&b_family(&frac(x, 8), &frac(y, 8), &z), &sl3::cartan()).unwrap();
        prop_assert_eq!(phi(&p).unwrap(), expected);
    }

    #[test]
    fn square_root_coordinate_round_trips(z in -1e12f64..1e12) {
        let back = unprime(prime(z));
        prop_assert!((back - z).abs() <= 2.0 * f64::EPSILON * z.abs().max(f64::MIN_POSITIVE));
    }
}

#[test]
fn root_vectors_are_weight_vectors() {
    for n in [3, 4] {
        let d = RootDatum::new(n).unwrap();
        for k in 0..d.rank() {
            let h = d.dual_h(k);
            for r in d.positive_roots() {
                let u = d.u(r);
                assert_eq!(bracket(&h, &u).unwrap(), u.scale(&d.eval(r, &h)));
            }
        }
    }
}

#[test]
fn every_orbit_label_is_reached_as_a_cartan_limit() {
    use chabauty_core::grassmann::limit_estimate;
    use chabauty_core::seqs::MonomialSum;
    let m = |s: &str| MonomialSum::parse(s).unwrap();
    let families = [
        (m("0"), m("0"), m("0"), OrbitLabel3::A),
        (m("1@3"), m("0"), m("0"), OrbitLabel3::LAlpha),
        (m("0"), m("1@3"), m("0"), OrbitLabel3::LBeta),
        (m("0"), m("0"), m("1@3"), OrbitLabel3::LAlphaBeta),
        (m("1@3"), m("1@3"), m("0"), OrbitLabel3::L11),
        (m("1@3"), m("-1@3"), m("0"), OrbitLabel3::L1m1),
        (m("1@3"), m("1@3"), m("-1/2@6,1@3"), OrbitLabel3::L01),
        (m("1@3"), m("1@3"), m("1/2@6,1@3"), OrbitLabel3::L10),
    ];
    for (x, y, z, label) in families {
        let est = limit_estimate(&sl3::cartan_family(x, y, z), &[10, 100, 1000], 1e-4).unwrap();
        assert!(est.certified(), "{label}: {:?}", est.gaps);
        let c = sl3::classify_y(&est.last_exact).unwrap();
        let d = est.distance_to(&label.representative()).unwrap();
        if label == OrbitLabel3::A {
            assert_eq!(sl3::orbit_label(&c), label);
        } else {
            assert!(d < 1e-4, "{label}: {d}");
        }
    }
}
