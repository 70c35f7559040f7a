//! Bosonisation: a braided group `B` in `_H M` becomes an ordinary
//! quasi-Hopf algebra `B ⋊· H` on `B ⊗ H`, basis ordered `(b, h)` with `h`
//! fastest. Algebras in the category (no coproduct) only get the smash
//! product.

use crate::category::{act_parts, LeftModule, Shape};
use crate::groups::FiniteGroup;
use crate::parallel::map_range;
use crate::quasihopf::{run_check, QuasiBialgebra, QuasiHopfAlgebra, QuasiTriangular, StructureError, VerifyOptions};
use crate::report::{Check, Report};
use crate::scalars::Scalar;
use crate::tensor::{BasedSpace, LinearMap, Place, Tensor, TensorBuilder};
use crate::transmute::BraidedGroup;

fn product_space(b: &LeftModule, h: &QuasiHopfAlgebra) -> BasedSpace {
    let nh = h.dim();
    BasedSpace::new(
        (0..b.dim() * nh)
            .map(|k| format!("{}⊗{}", b.space.label(k / nh), h.label(k % nh)))
            .collect(),
    )
}

/// `x¹ ⊗ x²h₁ ⊗ x³h₂` for every basis `h`.
fn smash_factors(h: &QuasiHopfAlgebra) -> Vec<Tensor> {
    (0..h.dim()).map(|k| h.rmul(&h.phi_inv, &h.delta_of(&h.basis(k)), &[1, 2])).collect()
}

/// `(b ⊗ h)(c ⊗ g) = (x¹▷b)·̲(x²h₁▷c) ⊗ x³h₂g` as a `[B, H]` tensor.
fn smash_entry(h: &QuasiHopfAlgebra, carrier: &LeftModule, mult: &LinearMap, factors: &[Tensor], bh: (usize, usize), cg: (usize, usize)) -> Tensor {
    let nb = carrier.dim();
    let t = Tensor::basis(&[nb, nb], &[bh.0, cg.0]);
    let t = t.join_with(
        &factors[bh.1],
        &[Place::Left(0), Place::Left(1), Place::New],
        &[&carrier.action, &carrier.action, &h.mult],
    );
    let t = t.apply_map(mult, &[0, 1]).expect("product legs");
    h.rmul(&t, &h.basis(cg.1), &[1])
}

/// The algebra `B ⋊ H` for an algebra `B` in `_H M`.
#[derive(Debug, Clone)]
pub struct SmashProduct {
    pub host: QuasiHopfAlgebra,
    pub carrier: LeftModule,
    pub space: BasedSpace,
    pub mult: LinearMap,
    pub unit: Tensor,
}

impl SmashProduct {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn index(&self, b: usize, h: usize) -> usize {
        b * self.host.dim() + h
    }

    /// The element `b ⊗ h` for arbitrary one-leg `b` and `h`.
    pub fn element(&self, b: &Tensor, h: &Tensor) -> Tensor {
        b.outer(h).reshape(&[self.dim()])
    }

    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        x.outer(y).apply_map(&self.mult, &[0, 1]).expect("product legs")
    }
}

/// The smash product of an algebra `(carrier, mult, unit)` in `_H M` with `H`.
pub fn bosonise_algebra(host: &QuasiHopfAlgebra, carrier: &LeftModule, mult: &LinearMap, unit: &Tensor) -> Result<SmashProduct, StructureError> {
    let (nb, nh) = (carrier.dim(), host.dim());
    if carrier.host_dim() != nh || mult.domain() != [nb, nb] || mult.codomain() != [nb] || unit.dims() != [nb] {
        return Err(StructureError::Shape("algebra in the module category"));
    }
    let factors = smash_factors(host);
    let n = nb * nh;
    let cols = map_range(n * n, |k| {
        let (x, y) = (k / n, k % n);
        smash_entry(host, carrier, mult, &factors, (x / nh, x % nh), (y / nh, y % nh)).reshape(&[n])
    });
    let mult_s = LinearMap::from_columns(&[n, n], &[n], cols)?;
    let space = product_space(carrier, host);
    let unit_s = unit.outer(&host.unit).reshape(&[n]);
    Ok(SmashProduct {
        host: host.clone(),
        carrier: carrier.clone(),
        space,
        mult: mult_s,
        unit: unit_s,
    })
}

/// Associativity and unit laws of a plain algebra, exhaustive up to the limit.
pub fn verify_algebra(name: &str, mult: &LinearMap, unit: &Tensor, labels: &BasedSpace, opts: &VerifyOptions) -> Report {
    let n = unit.dims()[0];
    let mut report = Report::new(name.to_string());
    let mul = |x: &Tensor, y: &Tensor| x.outer(y).apply_map(mult, &[0, 1]).expect("product legs");
    let basis = |i: usize| Tensor::basis(&[n], &[i]);
    let lab = |t: &[usize]| t.iter().map(|&i| labels.label(i)).collect::<Vec<_>>().join(", ");
    let (tp, s) = opts.tuples(n, 3);
    report.push(run_check("associativity", "triples", &tp, s, lab, |t| {
        (mul(mult.product(t[0], t[1]), &basis(t[2])), mul(&basis(t[0]), mult.product(t[1], t[2])))
    }));
    let (tp, s) = opts.tuples(n, 1);
    report.push(run_check("unit", "elements", &tp, s, lab, |t| (mul(unit, &basis(t[0])), basis(t[0]))));
    report.push(run_check("unit_right", "elements", &tp, s, lab, |t| {
        (mul(&basis(t[0]), unit), basis(t[0]))
    }));
    report
}

/// `B ⋊· H` for a braided group `B`, with every structure map evaluated on
/// demand; [`Bosonised::materialize`] tabulates it.
#[derive(Debug, Clone)]
pub struct Bosonised {
    pub braided: BraidedGroup,
    pub space: BasedSpace,
    factors: Vec<Tensor>,
    omega: Tensor,
    /// `X¹x¹₁R⁽²⁾ ⊗ X²x¹₂R⁽¹⁾ ⊗ X³x²βS(x³)`
    zeta: Tensor,
    pub unit: Tensor,
    pub alpha: Tensor,
    pub beta: Tensor,
    pub phi: Tensor,
    pub phi_inv: Tensor,
}

/// `Ω = y¹X¹ ⊗ y²Y¹R⁽²⁾x²X³₁ ⊗ y³₁Y²R⁽¹⁾x¹X² ⊗ y³₂Y³x³X³₂`, which is
/// also the left factor of the coproduct of `H_R ▶◀ H`.
pub(crate) fn omega(h: &QuasiTriangular) -> Tensor {
    let phi_split = h.delta_leg(&h.phi, 2).permute(&[0, 2, 1, 3]).expect("reorder");
    let t = h.lmul(&phi_split, &h.phi_inv, &[2, 1, 3]);
    let t = h.lmul(&t, &h.r, &[2, 1]);
    let t = h.lmul(&t, &h.phi, &[1, 2, 3]);
    h.lmul(&t, &h.delta_leg(&h.phi_inv, 2), &[0, 1, 2, 3])
}

pub fn bosonise(b: &BraidedGroup) -> Bosonised {
    let h = &*b.host;
    let omega = omega(h);

    let t = h.delta_leg(&h.phi_inv, 0);
    let t = h.rmul(&h.s_leg(&t, 3), &h.beta, &[2]);
    let t = h.merge_right(&t, 3, 2);
    let t = h.lmul(&t, &h.phi, &[0, 1, 2]);
    let zeta = h.rmul(&t, &h.r, &[1, 0]);

    let nb = b.dim();
    let n = nb * h.dim();
    let j = |el: &Tensor| -> Tensor {
        // j⊗…⊗j: put 1_B in front of each leg.
        let k = el.legs();
        let mut t = el.clone();
        for _ in 0..k {
            t = t.outer(&b.unit);
        }
        let perm: Vec<usize> = (0..2 * k).map(|i| if i < k { 2 * i + 1 } else { 2 * (i - k) }).collect();
        let dims = vec![n; k];
        t.permute(&perm).expect("interleave").reshape(&dims)
    };
    Bosonised {
        braided: b.clone(),
        space: product_space(&b.carrier, h),
        factors: smash_factors(h),
        omega,
        zeta,
        unit: j(&h.unit),
        alpha: j(&h.alpha),
        beta: j(&h.beta),
        phi: j(&h.phi),
        phi_inv: j(&h.phi_inv),
    }
}

impl Bosonised {
    fn host(&self) -> &QuasiHopfAlgebra {
        &self.braided.host
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn split(&self, k: usize) -> (usize, usize) {
        let nh = self.host().dim();
        (k / nh, k % nh)
    }

    pub fn index(&self, b: usize, h: usize) -> usize {
        b * self.host().dim() + h
    }

    pub fn product(&self, x: usize, y: usize) -> Tensor {
        let b = &self.braided;
        smash_entry(self.host(), &b.carrier, &b.mult, &self.factors, self.split(x), self.split(y)).reshape(&[self.dim()])
    }

    /// `Δ(b ⊗ h)`, from `Δ̲(b)` and `Δ(h)` through `Ω`.
    pub fn coproduct(&self, x: usize) -> Tensor {
        let (b, hk) = self.split(x);
        let h = self.host();
        let act = &self.braided.carrier.action;
        let t = self.braided.delta.column_at(b).join_with(
            &self.omega,
            &[Place::Left(0), Place::New, Place::Left(1), Place::New],
            &[act, &h.mult, act, &h.mult],
        );
        let t = h.rmul(&t, &h.delta_of(&h.basis(hk)), &[2, 3]);
        let n = self.dim();
        t.permute(&[0, 2, 1, 3]).expect("reorder").reshape(&[n, n])
    }

    pub fn counit(&self, x: usize) -> Scalar {
        let (b, hk) = self.split(x);
        let c = self.braided.counit.column_at(b).scalar_value();
        &c * &self.host().eps_basis(hk)
    }

    /// `S(b⊗h) = (S(X¹x¹₁R⁽²⁾h)α)₁X²x¹₂R⁽¹⁾ ▷ S̲(b) ⊗ (S(X¹x¹₁R⁽²⁾h)α)₂X³x²βS(x³)`.
    pub fn antipode(&self, x: usize) -> Tensor {
        let (b, hk) = self.split(x);
        let h = self.host();
        let t = h.rmul(&self.zeta, &h.basis(hk), &[0]);
        let t = h.rmul(&h.s_leg(&t, 0), &h.alpha, &[0]);
        let t = h.delta_leg(&t, 0);
        let t = h.merge_right(&t, 2, 0);
        let w = h.merge_right(&t, 2, 1);
        let t = self
            .braided
            .antipode
            .column_at(b)
            .join_with(&w, &[Place::Left(0), Place::New], &[&self.braided.carrier.action, &h.mult]);
        t.reshape(&[self.dim()])
    }

    /// Tabulate every structure map into a [`QuasiHopfAlgebra`].
    pub fn materialize(&self) -> Result<QuasiHopfAlgebra, StructureError> {
        let n = self.dim();
        let mult = LinearMap::from_columns(&[n, n], &[n], map_range(n * n, |k| self.product(k / n, k % n)))?;
        let delta = LinearMap::from_columns(&[n], &[n, n], map_range(n, |k| self.coproduct(k)))?;
        let counit = LinearMap::from_columns(&[n], &[], (0..n).map(|k| Tensor::scalar(self.counit(k))).collect())?;
        let antipode = LinearMap::from_columns(&[n], &[n], map_range(n, |k| self.antipode(k)))?;
        let name = format!("{} ⋊· {}", self.braided.carrier.name, self.host().name);
        let base = QuasiBialgebra::new(
            name,
            self.space.clone(),
            mult,
            self.unit.clone(),
            delta,
            counit,
            self.phi.clone(),
            self.phi_inv.clone(),
        )?;
        QuasiHopfAlgebra::new(base, antipode, self.alpha.clone(), self.beta.clone())
    }

    /// `i(b) = b ⊗ 1`.
    pub fn i_map(&self) -> LinearMap {
        let (nb, h) = (self.braided.dim(), self.host());
        LinearMap::from_fn(&[nb], &[self.dim()], |i| Tensor::basis(&[nb], i).outer(&h.unit).reshape(&[self.dim()])).expect("i")
    }

    /// `j(h) = 1_B ⊗ h`.
    pub fn j_map(&self) -> LinearMap {
        let nh = self.host().dim();
        LinearMap::from_fn(&[nh], &[self.dim()], |i| {
            self.braided.unit.outer(&Tensor::basis(&[nh], i)).reshape(&[self.dim()])
        })
        .expect("j")
    }
}

/// A braided `B`-module: an `H`-module `V` with an `H`-linear action `B ⊗ V → V`.
#[derive(Debug, Clone)]
pub struct BraidedModule {
    pub module: LeftModule,
    pub action: LinearMap,
}

impl BraidedModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    fn act_at(&self, t: &Tensor, i: usize) -> Tensor {
        t.apply_map(&self.action, &[i, i + 1]).expect("action legs")
    }
}

/// `B` acting on itself by `m̲`.
pub fn regular_braided_module(b: &BraidedGroup) -> BraidedModule {
    BraidedModule {
        module: b.carrier.clone(),
        action: b.mult.clone(),
    }
}

/// `k` with `b ▷ 1 = ε̲(b)` and `h ▷ 1 = ε(h)`.
pub fn trivial_braided_module(b: &BraidedGroup) -> BraidedModule {
    let n = b.dim();
    let module = crate::category::trivial_module(&b.host);
    let action = LinearMap::from_fn(&[n, 1], &[1], |i| b.counit.column_at(i[0]).reshape(&[1])).expect("trivial action");
    BraidedModule { module, action }
}

/// `h▷(b▷v) = (h₁▷b)▷(h₂▷v)`, `1_B ▷ v = v` and `(bc)▷v = (X¹▷b)▷((X²▷c)▷(X³▷v))`.
pub fn verify_braided_module(b: &BraidedGroup, v: &BraidedModule, opts: &VerifyOptions) -> Report {
    use Shape::Leaf;
    let h = &*b.host;
    let (nb, dv, nh) = (b.dim(), v.dim(), h.dim());
    let mut report = Report::new(format!("braided module {}", v.module.name));
    report.extend(crate::category::verify_module(h, &v.module, opts));
    let (tp, s) = opts.tuples_over(&[nh, nb, dv], 0xb1);
    report.push(run_check(
        "action_equivariant",
        "triples",
        &tp,
        s,
        |t| format!("{t:?}"),
        |t| {
            let lhs = v.module.act(&h.basis(t[0]), v.action.product(t[1], t[2]));
            let x = act_parts(
                h,
                &h.delta_of(&h.basis(t[0])),
                &Tensor::basis(&[nb, dv], &[t[1], t[2]]),
                &[&b.carrier, &v.module],
                &[Leaf, Leaf],
            );
            (lhs, v.act_at(&x, 0))
        },
    ));
    let (tp, s) = opts.tuples_over(&[dv], 0xb2);
    report.push(run_check(
        "action_unital",
        "elements",
        &tp,
        s,
        |t| format!("{t:?}"),
        |t| (v.act_at(&b.unit.outer(&Tensor::basis(&[dv], t)), 0), Tensor::basis(&[dv], t)),
    ));
    let (tp, s) = opts.tuples_over(&[nb, nb, dv], 0xb3);
    report.push(run_check(
        "action_associative",
        "triples",
        &tp,
        s,
        |t| format!("{t:?}"),
        |t| {
            let lhs = v.act_at(&b.mult.product(t[0], t[1]).outer(&Tensor::basis(&[dv], &[t[2]])), 0);
            let x = act_parts(
                h,
                &h.phi,
                &Tensor::basis(&[nb, nb, dv], t),
                &[&b.carrier, &b.carrier, &v.module],
                &[Leaf, Leaf, Leaf],
            );
            (lhs, v.act_at(&v.act_at(&x, 1), 0))
        },
    ));
    report
}

/// `(b ⊗ h) ▷ v = b ▷ (h ▷ v)`.
pub fn module_transfer_to_ordinary(bos: &Bosonised, v: &BraidedModule) -> Result<LeftModule, StructureError> {
    let (n, dv) = (bos.dim(), v.dim());
    let action = LinearMap::from_fn(&[n, dv], &[dv], |i| {
        let (b, h) = bos.split(i[0]);
        let t = Tensor::basis(&[bos.braided.dim()], &[b]).outer(v.module.act_basis(h, i[1]));
        v.act_at(&t, 0)
    })?;
    LeftModule::new(format!("{} over B⋊·H", v.module.name), v.module.space.clone(), action, n)
}

/// `h ▷ v = j(h)·v` and `b ▷ v = i(b)·v`.
pub fn module_transfer_to_braided(bos: &Bosonised, w: &LeftModule) -> Result<BraidedModule, StructureError> {
    let (n, dw) = (bos.dim(), w.dim());
    if w.host_dim() != n {
        return Err(StructureError::Shape("module is not over the bosonisation"));
    }
    let (i, j) = (bos.i_map(), bos.j_map());
    let nh = bos.host().dim();
    let nb = bos.braided.dim();
    let h_action = LinearMap::from_fn(&[nh, dw], &[dw], |k| w.act(j.column_at(k[0]), &w.basis(k[1])))?;
    let b_action = LinearMap::from_fn(&[nb, dw], &[dw], |k| w.act(i.column_at(k[0]), &w.basis(k[1])))?;
    let module = LeftModule::new(format!("{} over H", w.name), w.space.clone(), h_action, nh)?;
    Ok(BraidedModule { module, action: b_action })
}

/// The octonion smash product laws: the displayed product, `k_φ(G)` as a
/// subalgebra, `f e_a = e_a L_a(f)` and the central functions `χ(a,b)`.
pub fn octonion_relations(s: &SmashProduct, g: &FiniteGroup, phi: &crate::groups::Cochain3, f: &crate::groups::Cochain2) -> Report {
    let n = g.order();
    let mut report = Report::new("octonion bosonisation relations");
    let e_unit = Tensor::basis(&[n], &[g.identity()]);
    let delta = |t: usize| Tensor::basis(&[n], &[t]);
    let one_h = &s.host.unit;
    let lab = |t: &[usize]| t.iter().map(|&i| g.label(i)).collect::<Vec<_>>().join(", ");

    let mut prod = Check::unbounded("displayed_product", "quadruples");
    for a in 0..n {
        for sg in 0..n {
            for b in 0..n {
                for t in 0..n {
                    let lhs = s.mult.product(s.index(a, sg), s.index(b, t));
                    // (−1)^{|abt|} e_a·e_b ⊗ δ_{-b+s,t} δ_t
                    let rhs = if g.mul(b, t) == sg {
                        let c = phi.get3(a, b, t).try_inv().expect("unit") * f.get2(a, b).clone();
                        s.element(&Tensor::monomial(&[n], &[g.mul(a, b)], c), &delta(t))
                    } else {
                        Tensor::zero(&[s.dim()])
                    };
                    prod.compare(|| lab(&[a, sg, b, t]), lhs, &rhs);
                }
            }
        }
    }
    report.push(prod);

    let mut sub = Check::unbounded("function_subalgebra", "pairs");
    for x in 0..n {
        for y in 0..n {
            let lhs = s.mul(&s.element(&e_unit, &delta(x)), &s.element(&e_unit, &delta(y)));
            let rhs = if x == y {
                s.element(&e_unit, &delta(x))
            } else {
                Tensor::zero(&[s.dim()])
            };
            sub.compare(|| lab(&[x, y]), &lhs, &rhs);
        }
    }
    report.push(sub);

    let mut comm = Check::unbounded("function_commutation", "pairs");
    for a in 0..n {
        for x in 0..n {
            let ea = s.element(&delta(a), one_h);
            let lhs = s.mul(&s.element(&e_unit, &delta(x)), &ea);
            // L_a(δ_x) = δ_{x-a}
            let shifted = g.mul(g.inv(a), x);
            let rhs = s.mul(&ea, &s.element(&e_unit, &delta(shifted)));
            comm.compare(|| lab(&[x, a]), &lhs, &rhs);
        }
    }
    report.push(comm);

    let mut chi = Check::unbounded("central_function_table", "pairs");
    for a in 0..n {
        for b in 0..n {
            let lhs = s.mul(&s.element(&delta(a), one_h), &s.element(&delta(b), one_h));
            let trivial = a == g.identity() || b == g.identity() || a == b;
            let span = [g.identity(), a, b, g.mul(a, b)];
            let mut fb = TensorBuilder::new(&[n]);
            for t in 0..n {
                let v = if trivial || span.contains(&t) { 1 } else { -1 };
                fb.add(&[t], &Scalar::from_int(v));
            }
            let rhs = s.element(&Tensor::monomial(&[n], &[g.mul(a, b)], f.get2(a, b).clone()), &fb.finish());
            chi.compare(|| lab(&[a, b]), &lhs, &rhs);
        }
    }
    report.push(chi);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, octonions, twisted_double};
    use crate::groups::cyclic_cocycle;
    use crate::quasihopf::verify_quasihopf;
    use crate::transmute::transmute;
    use std::sync::Arc;

    #[test]
    fn ordinary_smash_product_for_group_algebra() {
        let h = Arc::new(group_algebra(&Arc::new(FiniteGroup::cyclic(2).unwrap())).unwrap());
        let b = transmute(h.clone()).unwrap();
        let bos = bosonise(&b).materialize().unwrap();
        // b(h₁▷c) ⊗ h₂g with the adjoint action h▷c = hch⁻¹ = c
        for x in 0..4 {
            for y in 0..4 {
                let (b1, h1, c, g1) = (x / 2, x % 2, y / 2, y % 2);
                let expected = Tensor::basis(&[4], &[((b1 ^ c) * 2) + (h1 ^ g1)]);
                assert_eq!(*bos.product_basis(x, y), expected);
            }
        }
        assert!(verify_quasihopf(&bos, &VerifyOptions::default()).passed());
    }

    #[test]
    fn bosonised_transmuted_double_is_quasi_hopf() {
        let h = Arc::new(twisted_double(&cyclic_cocycle(2, 1).unwrap()).unwrap().algebra);
        let b = transmute(h).unwrap();
        let bos = bosonise(&b);
        let q = bos.materialize().unwrap();
        let report = verify_quasihopf(&q, &VerifyOptions::default());
        assert!(report.passed(), "{report}");

        let opts = VerifyOptions::default();
        let reg = regular_braided_module(&b);
        assert!(verify_braided_module(&b, &reg, &opts).passed());
        let ordinary = module_transfer_to_ordinary(&bos, &reg).unwrap();
        assert!(crate::category::verify_module(&q, &ordinary, &opts).passed());
        let back = module_transfer_to_braided(&bos, &ordinary).unwrap();
        assert_eq!(back.action, reg.action);
        assert_eq!(back.module.action, reg.module.action);

        let triv = trivial_braided_module(&b);
        assert!(verify_braided_module(&b, &triv, &opts).passed());
        let t = module_transfer_to_ordinary(&bos, &triv).unwrap();
        for k in 0..q.dim() {
            assert_eq!(t.act_basis(k, 0).coeff(&[0]), q.eps_basis(k));
        }
    }

    #[test]
    fn octonions_bosonise_to_an_associative_algebra() {
        let o = octonions().unwrap();
        let s = bosonise_algebra(&o.host, &o.carrier, &o.mult, &o.unit).unwrap();
        let report = verify_algebra("O ⋊ k_φ(G)", &s.mult, &s.unit, &s.space, &VerifyOptions::default());
        assert!(report.passed(), "{report}");
        assert_eq!(report.check("associativity").unwrap().checked, 64 * 64 * 64);
        let rel = octonion_relations(&s, &o.group, &o.phi, &o.cochain);
        assert!(rel.passed(), "{rel}");
    }
}
