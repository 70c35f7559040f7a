use std::sync::Arc;

use qhopf::constructions::{check_duality, dual_braided_group, group_function_algebra, twisted_double, TwistedDouble};
use qhopf::groups::{braiding_of_cochain, coboundary, octonion_cochain, octonion_cochain_restricted, Cochain2, Cochain3, FiniteGroup};
use qhopf::quasihopf::{derive_elements, VerifyOptions};
use qhopf::scalars::Scalar;
use qhopf::tensor::{LinearMap, Tensor};
use qhopf::transmute::{transmute_with, verify_braided_group, verify_comult_characterization, BraidedGroup};

fn octonion_data() -> (Cochain3, Cochain2) {
    let g = Arc::new(FiniteGroup::cyclic_product(&[2, 2, 2]).unwrap());
    let f = octonion_cochain(&g).unwrap();
    (coboundary(&f).unwrap(), braiding_of_cochain(&f).unwrap())
}

fn transmuted(h: qhopf::quasihopf::QuasiTriangular) -> BraidedGroup {
    let h = Arc::new(h);
    let d = derive_elements(&h).unwrap();
    let b = transmute_with(h, &d).unwrap();
    let c = verify_comult_characterization(&b, &d);
    assert!(c.passed() && c.checked == b.dim(), "{c}");
    b
}

fn inv(s: &Scalar) -> Scalar {
    s.try_inv().unwrap()
}

/// `φ(t,t⁻¹,t)`
fn w(phi: &Cochain3, t: usize) -> Scalar {
    let g = phi.group();
    phi.get3(t, g.inv(t), t).clone()
}

#[test]
fn function_algebra_transmutation_matches_displayed_tables() {
    let (phi, r) = octonion_data();
    let g = phi.group().clone();
    let n = g.order();
    let b = transmuted(group_function_algebra(&phi, &r).unwrap());
    assert!(verify_braided_group(&b, &VerifyOptions::default()).passed());
    for s in 0..n {
        for t in 0..n {
            let expected = if s == t {
                Tensor::monomial(&[n], &[t], w(&phi, t))
            } else {
                Tensor::zero(&[n])
            };
            assert_eq!(*b.mult.column_at(s * n + t), expected);
        }
        let delta = Tensor::from_terms(
            &[n, n],
            (0..n).map(|a| {
                let bb = g.mul(g.inv(a), s);
                (vec![a, bb], w(&phi, s) * inv(&w(&phi, a)) * inv(&w(&phi, bb)))
            }),
        );
        assert_eq!(*b.delta.column_at(s), delta);
        let eps = if s == g.identity() { Scalar::one() } else { Scalar::zero() };
        assert_eq!(b.counit.column_at(s).scalar_value(), eps);
        assert_eq!(*b.antipode.column_at(s), Tensor::monomial(&[n], &[g.inv(s)], w(&phi, s) * w(&phi, s)));
    }
    let unit = Tensor::from_terms(&[n], (0..n).map(|s| (vec![s], phi.get3(g.inv(s), s, g.inv(s)).clone())));
    assert_eq!(b.unit, unit);
}

#[test]
fn dual_group_algebra_is_a_braided_group_dual_to_the_function_algebra() {
    let (phi, r) = octonion_data();
    let g = phi.group().clone();
    let kg = dual_braided_group(&phi, &r).unwrap();
    let report = verify_braided_group(&kg, &VerifyOptions::default());
    assert!(report.passed(), "{report}");
    let kphi = transmuted(group_function_algebra(&phi, &r).unwrap());
    let duality = check_duality(&kphi, &kg);
    assert!(duality.passed() && duality.checked == 512, "{duality}");
    // φ(e,e,e)/φ(g,g,g)² is 1 for a ±1-valued cocycle.
    for x in 0..8 {
        assert_eq!(*kg.mult.column_at(x * 8 + x), Tensor::basis(&[8], &[g.mul(x, x)]));
    }
}

/// Agreement counts of the displayed structure of the transmuted double
/// against the one built from the general formulas.
struct Agreement {
    mult: usize,
    delta: usize,
    antipode: usize,
}

fn displayed_double_agreement(d: &TwistedDouble, b: &BraidedGroup) -> Agreement {
    let g = &d.group;
    let (tg, phi) = (&d.theta_gamma, &d.cocycle);
    let phi_inv = phi.inverse().unwrap();
    let n = g.order();
    let nn = n * n;
    let m = |a: usize, b: usize| g.mul(a, b);
    let m3 = |a: usize, b: usize, c: usize| m(m(a, b), c);
    let conj = |x: usize, s: usize| m3(g.inv(x), s, x);
    let beta = |s: usize| phi.get3(g.inv(s), s, g.inv(s)).clone();
    let e = g.identity();

    let unit = Tensor::from_terms(&[nn], (0..n).map(|s| (vec![d.index(e, s)], beta(s))));
    assert_eq!(b.unit, unit);
    for x in 0..nn {
        let eps = if x % n == e { Scalar::one() } else { Scalar::zero() };
        assert_eq!(b.counit.column_at(x).scalar_value(), eps);
    }

    let mut agree = Agreement {
        mult: 0,
        delta: 0,
        antipode: 0,
    };
    for (gg, s) in (0..nn).map(|k| (k / n, k % n)) {
        let (gi, si) = (g.inv(gg), g.inv(s));
        let lead = phi.get3(s, conj(gg, si), conj(gg, s));
        for (h, t) in (0..nn).map(|k| (k / n, k % n)) {
            let expected = if s == m3(gg, t, gi) {
                let c = tg.theta(s, gg, h) * lead * phi_inv.get3(m(s, conj(gg, si)), conj(gg, s), conj(m(gg, h), si));
                Tensor::monomial(&[nn], &[d.index(m(gg, h), s)], c)
            } else {
                Tensor::zero(&[nn])
            };
            agree.mult += usize::from(*b.mult.column_at(d.index(gg, s) * nn + d.index(h, t)) == expected);
        }

        let delta = Tensor::from_terms(
            &[nn, nn],
            (0..n).map(|a| {
                let bb = m(g.inv(a), s);
                let (ai, bi) = (g.inv(a), g.inv(bb));
                let bgb = m3(bb, gg, bi);
                let bgib = m3(bb, gi, bi);
                let x1 = m3(bgib, ai, bgb);
                let x2 = m3(bgib, a, bgb);
                let c = tg.gamma(gg, a, bb)
                    * inv(tg.theta(a, bgb, m(bgib, gg)))
                    * lead
                    * phi_inv.get3(a, m(bgib, m(ai, bgb)), x2)
                    * phi_inv.get3(bb, conj(gg, bi), conj(gg, bb))
                    * phi.get3(m(bgib, gg), conj(gg, a), conj(gg, bb))
                    * phi_inv.get3(m(m(a, bb), x1), m(bgib, gg), conj(gg, m(a, bb)))
                    * phi.get3(m(m(a, bb), x1), x2, bb)
                    * phi_inv.get3(m(bgib, m(a, bgb)), m(bgib, gg), m(conj(gg, bb), bb));
                (vec![d.index(bgb, a), d.index(gg, bb)], c)
            }),
        );
        agree.delta += usize::from(*b.delta.column_at(d.index(gg, s)) == delta);

        let top = m3(s, gi, si);
        let target = m3(top, gg, si);
        let c = inv(tg.theta(si, gg, gi))
            * inv(tg.gamma(gg, s, si))
            * tg.theta(target, m(top, gg), gi)
            * phi.get3(target, m(top, gg), conj(gg, s))
            * lead
            * phi_inv.get3(m(top, gg), conj(gg, si), conj(gg, s))
            * phi.get3(conj(gg, s), conj(gg, si), conj(gg, s));
        let expected = Tensor::monomial(&[nn], &[d.index(top, target)], c);
        agree.antipode += usize::from(*b.antipode.column_at(d.index(gg, s)) == expected);
    }
    agree
}

#[test]
fn transmuted_double_against_displayed_structure() {
    let (phi, _) = octonion_data();
    let d = twisted_double(&phi).unwrap();
    let b = transmuted(d.algebra.clone());
    let a = displayed_double_agreement(&d, &b);
    // Frozen agreement counts out of 4096 products and 64 coproducts and
    // antipodes; the general formulas pass verify_braided_group.
    assert_eq!((a.mult, a.delta, a.antipode), (4096, 64, 64));
}

#[test]
fn perturbed_transmuted_coproduct_breaks_multiplicativity() {
    let g = Arc::new(FiniteGroup::cyclic_product(&[2, 2, 2]).unwrap());
    let phi = coboundary(&octonion_cochain_restricted(&g).unwrap()).unwrap();
    let b = transmuted(twisted_double(&phi).unwrap().algebra);
    let n = b.dim();
    let mut cols = b.delta.columns().to_vec();
    let k = 9;
    cols[k] = cols[k].neg();
    let delta = LinearMap::from_columns(&[n], &[n, n], cols).unwrap();
    let bad = BraidedGroup { delta, ..b };
    let report = verify_braided_group(&bad, &VerifyOptions::default());
    let c = report.check("coproduct_multiplicative").unwrap();
    assert!(!c.passed() && !c.witnesses.is_empty(), "{c}");
}

fn symmetric_group_s3() -> Arc<FiniteGroup> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let table = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| find([perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]]))
                .collect()
        })
        .collect();
    Arc::new(FiniteGroup::from_table(table).unwrap())
}

#[test]
fn transmuted_nonabelian_double_against_displayed_structure() {
    let g = symmetric_group_s3();
    let f = Cochain2::from_fn(g.clone(), 2, |i| {
        if i[0] == 0 || i[1] == 0 {
            Scalar::one()
        } else {
            Scalar::from_int(((i[0] * 7 + i[1] * 3) % 4) as i64 + 1)
        }
    });
    // With a nonconstant φ the displayed coproduct only survives at the
    // identity; the product and antipode agree everywhere.
    for (phi, frozen) in [
        (Cochain3::trivial(g.clone(), 3), (1296, 36, 36)),
        (coboundary(&f).unwrap(), (1296, 1, 36)),
    ] {
        let d = twisted_double(&phi).unwrap();
        let b = transmuted(d.algebra.clone());
        assert!(verify_braided_group(&b, &VerifyOptions::default()).passed());
        let a = displayed_double_agreement(&d, &b);
        assert_eq!((a.mult, a.delta, a.antipode), frozen);
    }
}
