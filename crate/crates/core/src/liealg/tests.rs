use super::*;
use crate::exactlinalg::{charpoly, frac, rat, MatQ, PolyQ, Rat};

fn sl3() -> RootDatum {
    RootDatum::new(3).unwrap()
}

#[test]
fn bracket_examples() {
    let r = sl3();
    let ha = r.h_named("alpha").unwrap();
    let ua = r.u_named("alpha").unwrap();
    let ub = r.u_named("beta").unwrap();
    assert_eq!(bracket(&ha, &ua).unwrap(), ua);
    assert_eq!(bracket(&ua, &ub).unwrap(), r.u_named("alpha+beta").unwrap());
    assert!(bracket(&ua, &ua).unwrap().is_zero());
    assert!(bracket(&ua, &SlElement::zero(4)).is_err());
}

#[test]
fn ad_of_h_alpha_in_coordinate_order() {
    // Order E12, E13, E23, H1, H2, E21, E31, E32: the root values on H_α are
    // α = 1, α+β = 1, β = 0, then 0, 0, then the negatives.
    let r = sl3();
    let ad = ad_matrix(&r.h_named("alpha").unwrap());
    let expected: Vec<Rat> = [1, 1, 0, 0, 0, -1, -1, 0].iter().map(|&x| rat(x)).collect();
    assert_eq!(ad, MatQ::diag(&expected));
    assert!(ad_matrix(&SlElement::zero(3)).is_zero());
    let mut lambda8 = vec![rat(0); 9];
    lambda8[8] = rat(1);
    assert_eq!(charpoly(&ad_matrix(&r.u_named("alpha").unwrap())).unwrap(), PolyQ::new(lambda8));
}

#[test]
fn exp_examples() {
    assert!(exp_unipotent(&SlElement::zero(3)).unwrap().is_identity());
    let x = SlElement::new(MatQ::from_i64(&[&[0, 1, 3], &[0, 0, 2], &[0, 0, 0]])).unwrap();
    let g = exp_unipotent(&x).unwrap();
    assert_eq!(g.matrix().get(0, 2), &rat(4));
    let r = sl3();
    let ua = r.u_named("alpha").unwrap();
    let p = exp_unipotent(&ua).unwrap().compose(&exp_unipotent(&ua.scale(&rat(-1))).unwrap());
    assert!(p.is_identity());
    let h = r.h_named("alpha").unwrap();
    assert_eq!(exp_unipotent(&h), Err(crate::Error::NotNilpotent));
}

#[test]
fn adjoint_examples() {
    let r = sl3();
    let b = b_family(&rat(1), &rat(1), &rat(1));
    let img = adjoint(&b, &r.h_named("alpha").unwrap()).unwrap();
    let expected = MatQ::from_rows(&[
        vec![frac(2, 3), rat(-1), frac(-1, 2)],
        vec![rat(0), frac(-1, 3), rat(0)],
        vec![rat(0), rat(0), frac(-1, 3)],
    ])
    .unwrap();
    assert_eq!(img.matrix(), &expected);

    let sigma = diagonal_group(&[rat(-1), rat(-1), rat(1)]).unwrap();
    let ub = r.u_named("beta").unwrap();
    assert_eq!(adjoint(&sigma, &ub).unwrap(), ub.scale(&rat(-1)));

    let a = r.cartan();
    assert_eq!(adjoint_subspace(&GroupElement::identity(3), &a).unwrap(), a);
}

#[test]
fn b_family_matches_exponential_and_inverse() {
    let (x, y, z) = (frac(3, 2), rat(-2), frac(1, 7));
    let b = b_family(&x, &y, &z);
    let mut m = MatQ::zeros(3, 3);
    m.set(0, 1, x.clone());
    m.set(1, 2, y.clone());
    m.set(0, 2, z.clone());
    let e = exp_unipotent(&SlElement::new(m).unwrap()).unwrap();
    assert_eq!(b, e);
    assert!(b_family(&rat(0), &rat(0), &rat(0)).is_identity());
    assert_eq!(b.matrix().get(0, 2), &(&z + &x * &y / rat(2)));
    // With x = 0 the inverse is unitriangular with entries −y and −z.
    let b0 = b_family(&rat(0), &rat(5), &rat(7));
    let inv = b0.inverse();
    assert_eq!(inv.matrix(), &MatQ::from_i64(&[&[1, 0, -7], &[0, 1, -5], &[0, 0, 1]]));
    assert_eq!(b.matrix().inverse().unwrap(), b.inverse().matrix().clone());
    assert_eq!(b_family(&rat(1), &rat(2), &rat(3)).matrix().get(0, 2), &rat(4));
}

#[test]
fn root_data_duality_and_weights() {
    for n in [3, 4] {
        let r = RootDatum::new(n).unwrap();
        for k in 0..r.rank() {
            for (j, s) in r.simple_roots().iter().enumerate() {
                let expect = if j == k { rat(1) } else { rat(0) };
                assert_eq!(r.eval(s, &r.dual_h(k)), expect);
            }
            for root in r.positive_roots() {
                let h = r.dual_h(k);
                let u = r.u(root);
                assert_eq!(bracket(&h, &u).unwrap(), u.scale(&r.eval(root, &h)));
            }
        }
        let mut sum = r.cartan();
        for root in r.positive_roots() {
            sum = sum.sum(&span_of(&[r.u(root)]).unwrap()).unwrap();
        }
        assert_eq!(sum, r.borel());
        assert_eq!(r.borel().dim(), n * (n - 1) / 2 + n - 1);
    }
}

#[test]
fn sl4_duals_and_subalgebras() {
    let r = RootDatum::new(4).unwrap();
    assert_eq!(r.dual_h(1).matrix(), &MatQ::diag(&[frac(1, 2), frac(1, 2), frac(-1, 2), frac(-1, 2)]));
    assert_eq!(r.dual_h(2).matrix(), &MatQ::diag(&[frac(1, 4), frac(1, 4), frac(1, 4), frac(-3, 4)]));
    assert_eq!(r.a_sub(ALPHA | BETA), span_of(&[r.dual_h(2)]).unwrap());
    assert_eq!(r.a_sub(ALPHA | GAMMA), span_of(&[r.dual_h(1)]).unwrap());
    assert_eq!(r.n_sup(ALPHA | GAMMA).dim(), 2);
    assert_eq!(r.n_sub(ALPHA | GAMMA).dim(), 4);
    assert_eq!(r.z_sup(BETA | GAMMA).dim(), 8);
    assert_eq!(r.z_sup(ALPHA | GAMMA).dim(), 6);
    assert_eq!(r.root("αβγ").unwrap().name, "alpha+beta+gamma");
    assert_eq!(r.named_vector("U_beta_gamma").unwrap(), SlElement::elementary(4, 2, 4));
}

#[test]
fn levi_factorization() {
    let r = RootDatum::new(4).unwrap();
    let mut m = MatQ::identity(4);
    for (i, j, v) in [(0, 1, 2), (0, 2, -1), (0, 3, 5), (1, 2, 3), (1, 3, 1), (2, 3, -4)] {
        m.set(i, j, rat(v));
    }
    let g = GroupElement::new(m).unwrap();
    for set in [ALPHA, BETA, GAMMA, ALPHA | BETA, ALPHA | GAMMA, BETA | GAMMA] {
        let b = r.n_sub_part(set, &g);
        let p = r.levi_part(set, &g);
        assert!(r.in_n_sub_group(set, &b));
        assert!(r.in_n_sup_group(set, &p));
        assert_eq!(b.compose(&p), g);
    }
}
