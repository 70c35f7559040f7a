//! Concrete quasi-Hopf algebras built from group data: the twisted quantum
//! double `D^φ(G)`, the function algebra `k_φ(G)`, the twisted group algebras
//! `k_F G` (octonions for `Z_2^3`) and the braided group `kG̲` over `k_φ(G)`.

use std::sync::Arc;

use thiserror::Error;

use crate::category::LeftModule;
use crate::groups::{check_r_function, coboundary, is_3cocycle, Cochain2, Cochain3, FiniteGroup, GroupError};
use crate::quasihopf::{QuasiBialgebra, QuasiHopfAlgebra, QuasiTriangular, StructureError};
use crate::report::{Check, Report, Witness};
use crate::scalars::Scalar;
use crate::tensor::{BasedSpace, LinearMap, Tensor, TensorBuilder};
use crate::transmute::BraidedGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("the associator is not a normalized 3-cocycle:\n{0}")]
    NotCocycle(String),
    #[error("the r-function is incompatible with the cocycle:\n{0}")]
    BadRFunction(String),
    #[error("cochains live on different groups")]
    GroupMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn cocycle_guard(phi: &Cochain3) -> Result<(), ConstructionError> {
    let report = is_3cocycle(phi);
    if !report.passed() {
        return Err(ConstructionError::NotCocycle(report.to_string()));
    }
    Ok(())
}

/// `θ_s(g,h)` and `γ_g(a,b)` of a 3-cocycle.
#[derive(Debug, Clone)]
pub struct ThetaGamma {
    group: Arc<FiniteGroup>,
    theta: Vec<Scalar>,
    gamma: Vec<Scalar>,
}

impl ThetaGamma {
    fn slot(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.group.order();
        (a * n + b) * n + c
    }

    /// `θ_s(g,h)`.
    pub fn theta(&self, s: usize, g: usize, h: usize) -> &Scalar {
        &self.theta[self.slot(s, g, h)]
    }

    /// `γ_g(a,b)`.
    pub fn gamma(&self, g: usize, a: usize, b: usize) -> &Scalar {
        &self.gamma[self.slot(g, a, b)]
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
}

/// Tabulate `θ_s(g,h) = φ(g,g⁻¹sg,h) φ⁻¹(s,g,h) φ⁻¹(g,h,h⁻¹g⁻¹sgh)` and
/// `γ_g(a,b) = φ(a,g,g⁻¹bg) φ⁻¹(a,b,g) φ⁻¹(g,g⁻¹ag,g⁻¹bg)`.
pub fn derive_theta_gamma(phi: &Cochain3) -> Result<ThetaGamma, ConstructionError> {
    cocycle_guard(phi)?;
    let g = phi.group().clone();
    let n = g.order();
    let phi_inv = phi.inverse()?;
    let mut theta = Vec::with_capacity(n * n * n);
    let mut gamma = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (s, x, h) = (a, b, c);
                let gh = g.mul(x, h);
                theta.push(phi.get3(x, g.conj(x, s), h) * phi_inv.get3(s, x, h) * phi_inv.get3(x, h, g.conj(gh, s)));
                let (k, p, q) = (a, b, c);
                gamma.push(phi.get3(p, k, g.conj(k, q)) * phi_inv.get3(p, q, k) * phi_inv.get3(k, g.conj(k, p), g.conj(k, q)));
            }
        }
    }
    Ok(ThetaGamma { group: g, theta, gamma })
}

/// The three compatibility identities of `θ` and `γ`, exhaustively.
pub fn check_theta_gamma(tg: &ThetaGamma, phi: &Cochain3) -> Report {
    let g = tg.group.clone();
    let n = g.order();
    let lab = |idx: &[usize]| idx.iter().map(|&a| g.label(a)).collect::<Vec<_>>().join(",");
    let mut report = Report::new(format!("theta/gamma identities on {}", g.name()));
    let mut mult = Check::unbounded("theta_cocycle", "quadruples");
    let mut gam = Check::unbounded("gamma_associator", "quadruples");
    let mut mixed = Check::unbounded("theta_gamma_compatible", "quadruples");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    // θ_s(g,h) θ_s(gh,k) = θ_s(g,hk) θ_{g⁻¹sg}(h,k)
                    let (s, x, h, k) = (a, b, c, d);
                    let lhs = tg.theta(s, x, h) * tg.theta(s, g.mul(x, h), k);
                    let rhs = tg.theta(s, x, g.mul(h, k)) * tg.theta(g.conj(x, s), h, k);
                    mult.compare(|| lab(&[s, x, h, k]), &lhs, &rhs);
                    // γ_g(a,b) γ_g(ab,c) φ(a,b,c) = γ_g(a,bc) γ_g(b,c) φ(g⁻¹ag,g⁻¹bg,g⁻¹cg)
                    let (x, p, q, r) = (a, b, c, d);
                    let lhs = tg.gamma(x, p, q) * tg.gamma(x, g.mul(p, q), r) * phi.get3(p, q, r);
                    let rhs = tg.gamma(x, p, g.mul(q, r)) * tg.gamma(x, q, r) * phi.get3(g.conj(x, p), g.conj(x, q), g.conj(x, r));
                    gam.compare(|| lab(&[x, p, q, r]), &lhs, &rhs);
                    // θ_s(g,h) θ_t(g,h) γ_g(s,t) γ_h(g⁻¹sg,g⁻¹tg) = θ_{st}(g,h) γ_{gh}(s,t)
                    let (s, t, x, h) = (a, b, c, d);
                    let lhs = tg.theta(s, x, h) * tg.theta(t, x, h) * tg.gamma(x, s, t) * tg.gamma(h, g.conj(x, s), g.conj(x, t));
                    let rhs = tg.theta(g.mul(s, t), x, h) * tg.gamma(g.mul(x, h), s, t);
                    mixed.compare(|| lab(&[s, t, x, h]), &lhs, &rhs);
                }
            }
        }
    }
    report.push(mult);
    report.push(gam);
    report.push(mixed);
    report
}

/// `D^φ(G)` together with the group data it was built from.
#[derive(Debug, Clone)]
pub struct TwistedDouble {
    pub group: Arc<FiniteGroup>,
    pub cocycle: Cochain3,
    pub theta_gamma: ThetaGamma,
    pub algebra: QuasiTriangular,
}

impl TwistedDouble {
    /// Basis index of `g ⊗ δ_s`.
    pub fn index(&self, g: usize, s: usize) -> usize {
        g * self.group.order() + s
    }
}

/// The twisted quantum double on the basis `g ⊗ δ_s`, indexed `g·|G| + s`.
pub fn twisted_double(phi: &Cochain3) -> Result<TwistedDouble, ConstructionError> {
    let tg = derive_theta_gamma(phi)?;
    let g = phi.group().clone();
    let n = g.order();
    let dim = n * n;
    let e = g.identity();
    let idx = |x: usize, s: usize| x * n + s;
    let labels = (0..dim).map(|k| format!("{}⊗δ{}", g.label(k / n), g.label(k % n))).collect();
    let phi_inv = phi.inverse()?;

    // (g⊗δ_s)(h⊗δ_t) = δ_{s,gtg⁻¹} θ_s(g,h) gh⊗δ_s
    let mult = LinearMap::from_fn(&[dim, dim], &[dim], |i| {
        let (x, s, h, t) = (i[0] / n, i[0] % n, i[1] / n, i[1] % n);
        if s != g.conj(g.inv(x), t) {
            return Tensor::zero(&[dim]);
        }
        Tensor::monomial(&[dim], &[idx(g.mul(x, h), s)], tg.theta(s, x, h).clone())
    })
    .map_err(StructureError::from)?;
    let unit = Tensor::from_terms(&[dim], (0..n).map(|s| (vec![idx(e, s)], Scalar::one())));
    let delta = LinearMap::from_fn(&[dim], &[dim, dim], |i| {
        let (x, s) = (i[0] / n, i[0] % n);
        Tensor::from_terms(
            &[dim, dim],
            (0..n).map(|a| {
                let b = g.mul(g.inv(a), s);
                (vec![idx(x, a), idx(x, b)], tg.gamma(x, a, b).clone())
            }),
        )
    })
    .map_err(StructureError::from)?;
    let counit = LinearMap::from_fn(&[dim], &[], |i| {
        if i[0] % n == e {
            Tensor::scalar(Scalar::one())
        } else {
            Tensor::zero(&[])
        }
    })
    .map_err(StructureError::from)?;
    // S(g⊗δ_s) = θ⁻¹_{s⁻¹}(g,g⁻¹) γ⁻¹_g(s,s⁻¹) g⁻¹⊗δ_{g⁻¹s⁻¹g}
    let antipode = LinearMap::from_fn(&[dim], &[dim], |i| {
        let (x, s) = (i[0] / n, i[0] % n);
        let (xi, si) = (g.inv(x), g.inv(s));
        let c = (tg.theta(si, x, xi) * tg.gamma(x, s, si)).try_inv().expect("cocycle values are units");
        Tensor::monomial(&[dim], &[idx(xi, g.conj(x, si))], c)
    })
    .map_err(StructureError::from)?;
    let beta = Tensor::from_terms(&[dim], (0..n).map(|x| (vec![idx(e, x)], phi.get3(g.inv(x), x, g.inv(x)).clone())));
    let diag3 = |c: &Cochain3| {
        let mut b = TensorBuilder::new(&[dim, dim, dim]);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    b.add(&[idx(e, x), idx(e, y), idx(e, z)], c.get3(x, y, z));
                }
            }
        }
        b.finish()
    };
    let r = Tensor::from_terms(
        &[dim, dim],
        (0..n).flat_map(|x| (0..n).map(move |t| (vec![idx(e, x), idx(x, t)], Scalar::one()))),
    );
    let name = format!("D^phi({})", g.name());
    let base = QuasiBialgebra::new(
        name,
        BasedSpace::new(labels),
        mult,
        unit.clone(),
        delta,
        counit,
        diag3(phi),
        diag3(&phi_inv),
    )?;
    let qh = QuasiHopfAlgebra::new(base, antipode, unit, beta)?;
    let algebra = QuasiTriangular::new(qh, r)?;
    Ok(TwistedDouble {
        group: g,
        cocycle: phi.clone(),
        theta_gamma: tg,
        algebra,
    })
}

/// `k(G)` with associator `Σ φ(r,s,t) δ_r⊗δ_s⊗δ_t`, `α = 1` and `β = Σ φ(t⁻¹,t,t⁻¹) δ_t`.
pub fn group_function_quasihopf(phi: &Cochain3) -> Result<QuasiHopfAlgebra, ConstructionError> {
    cocycle_guard(phi)?;
    let beta_forms = check_beta_forms(phi);
    if !beta_forms.passed() {
        let mut r = Report::new("normalization of the cocycle");
        r.push(beta_forms);
        return Err(ConstructionError::NotCocycle(r.to_string()));
    }
    let g = phi.group().clone();
    let n = g.order();
    let e = g.identity();
    let labels = (0..n).map(|s| format!("δ{}", g.label(s))).collect();
    let mult = LinearMap::from_fn(&[n, n], &[n], |i| {
        if i[0] == i[1] {
            Tensor::basis(&[n], &[i[0]])
        } else {
            Tensor::zero(&[n])
        }
    })
    .map_err(StructureError::from)?;
    let unit = Tensor::from_terms(&[n], (0..n).map(|s| (vec![s], Scalar::one())));
    let delta = LinearMap::from_fn(&[n], &[n, n], |i| {
        Tensor::from_terms(&[n, n], (0..n).map(|a| (vec![a, g.mul(g.inv(a), i[0])], Scalar::one())))
    })
    .map_err(StructureError::from)?;
    let counit =
        LinearMap::from_fn(&[n], &[], |i| if i[0] == e { Tensor::scalar(Scalar::one()) } else { Tensor::zero(&[]) }).map_err(StructureError::from)?;
    let antipode = LinearMap::from_fn(&[n], &[n], |i| Tensor::basis(&[n], &[g.inv(i[0])])).map_err(StructureError::from)?;
    let beta = Tensor::from_terms(&[n], (0..n).map(|t| (vec![t], phi.get3(g.inv(t), t, g.inv(t)).clone())));
    let phi_inv = phi.inverse()?;
    let diag = |c: &Cochain3| Tensor::from_terms(&[n, n, n], c.dump());
    let base = QuasiBialgebra::new(
        format!("k_phi({})", g.name()),
        BasedSpace::new(labels),
        mult,
        unit.clone(),
        delta,
        counit,
        diag(phi),
        diag(&phi_inv),
    )?;
    Ok(QuasiHopfAlgebra::new(base, antipode, unit, beta)?)
}

/// `φ⁻¹(t,t⁻¹,t) = φ(t⁻¹,t,t⁻¹)`, the two displayed forms of `β` for `k_φ(G)`.
pub fn check_beta_forms(phi: &Cochain3) -> Check {
    let g = phi.group();
    let mut c = Check::unbounded("beta_forms_agree", "elements");
    for t in g.elements() {
        let ti = g.inv(t);
        let lhs = phi.get3(t, ti, t).try_inv().unwrap_or_else(|_| Scalar::zero());
        c.compare(|| g.label(t), &lhs, phi.get3(ti, t, ti));
    }
    c
}

/// `k_φ(G)` with `R = Σ r(s,t) δ_s⊗δ_t`.
pub fn group_function_algebra(phi: &Cochain3, r: &Cochain2) -> Result<QuasiTriangular, ConstructionError> {
    if phi.group() != r.group() {
        return Err(ConstructionError::GroupMismatch);
    }
    let check = check_r_function(phi, r);
    if !check.passed() {
        return Err(ConstructionError::BadRFunction(check.to_string()));
    }
    let qh = group_function_quasihopf(phi)?;
    let n = qh.dim();
    let rt = Tensor::from_terms(&[n, n], r.dump());
    let ri = Tensor::from_terms(&[n, n], r.inverse()?.dump());
    Ok(QuasiTriangular::with_inverse(qh, rt, ri)?)
}

/// The group algebra `kG` as an ordinary Hopf algebra with `R = 1⊗1` (a trivial test host).
pub fn group_algebra(g: &Arc<FiniteGroup>) -> Result<QuasiTriangular, ConstructionError> {
    let n = g.order();
    let labels = (0..n).map(|a| g.label(a)).collect();
    let mult = LinearMap::from_fn(&[n, n], &[n], |i| Tensor::basis(&[n], &[g.mul(i[0], i[1])])).map_err(StructureError::from)?;
    let unit = Tensor::basis(&[n], &[g.identity()]);
    let delta = LinearMap::from_fn(&[n], &[n, n], |i| Tensor::basis(&[n, n], &[i[0], i[0]])).map_err(StructureError::from)?;
    let counit = LinearMap::from_fn(&[n], &[], |_| Tensor::scalar(Scalar::one())).map_err(StructureError::from)?;
    let antipode = LinearMap::from_fn(&[n], &[n], |i| Tensor::basis(&[n], &[g.inv(i[0])])).map_err(StructureError::from)?;
    let one3 = unit.outer(&unit).outer(&unit);
    let base = QuasiBialgebra::new(
        format!("k{}", g.name()),
        BasedSpace::new(labels),
        mult,
        unit.clone(),
        delta,
        counit,
        one3.clone(),
        one3,
    )?;
    let qh = QuasiHopfAlgebra::new(base, antipode, unit.clone(), unit.clone())?;
    let one2 = unit.outer(&unit);
    Ok(QuasiTriangular::with_inverse(qh, one2.clone(), one2)?)
}

/// A `G`-graded quasialgebra `k_F G` with `g ·_F h = F(g,h) gh`, living in
/// the category of `k_φ(G)`-modules for `φ = ∂F`.
#[derive(Debug, Clone)]
pub struct GradedQuasiAlgebra {
    pub group: Arc<FiniteGroup>,
    pub cochain: Cochain2,
    pub phi: Cochain3,
    /// `k_φ(G)`, acting by `δ_b ▷ e_a = δ_{b,a} e_a`.
    pub host: QuasiHopfAlgebra,
    pub carrier: LeftModule,
    pub mult: LinearMap,
    pub unit: Tensor,
}

impl GradedQuasiAlgebra {
    pub fn dim(&self) -> usize {
        self.group.order()
    }
}

pub fn twisted_group_algebra(f: &Cochain2) -> Result<GradedQuasiAlgebra, ConstructionError> {
    let g = f.group().clone();
    let n = g.order();
    let phi = coboundary(f)?;
    let host = group_function_quasihopf(&phi)?;
    let labels = (0..n).map(|a| format!("e{}", g.label(a))).collect();
    let action = LinearMap::from_fn(&[n, n], &[n], |i| {
        if i[0] == i[1] {
            Tensor::basis(&[n], &[i[1]])
        } else {
            Tensor::zero(&[n])
        }
    })
    .map_err(StructureError::from)?;
    let carrier = LeftModule::new("k_F G", BasedSpace::new(labels), action, n)?;
    let mult = LinearMap::from_fn(&[n, n], &[n], |i| {
        Tensor::monomial(&[n], &[g.mul(i[0], i[1])], f.get2(i[0], i[1]).clone())
    })
    .map_err(StructureError::from)?;
    let unit = Tensor::basis(&[n], &[g.identity()]);
    Ok(GradedQuasiAlgebra {
        group: g,
        cochain: f.clone(),
        phi,
        host,
        carrier,
        mult,
        unit,
    })
}

/// The octonions: `k_F Z_2^3` for the octonion cochain.
pub fn octonions() -> Result<GradedQuasiAlgebra, ConstructionError> {
    let g = Arc::new(FiniteGroup::cyclic_product(&[2, 2, 2])?);
    twisted_group_algebra(&crate::groups::octonion_cochain(&g)?)
}

/// Quasiassociativity, unit laws, quasicommutativity (for abelian G) and the
/// module-morphism property of the product.
pub fn verify_graded_quasialgebra(a: &GradedQuasiAlgebra) -> Report {
    let g = &a.group;
    let n = a.dim();
    let mut report = Report::new(format!("graded quasialgebra on {}", g.name()));
    let prod = |x: usize, y: usize| a.mult.product(x, y);
    let mul_t = |t: &Tensor, y: usize| {
        let mut b = TensorBuilder::new(&[n]);
        for (k, c) in t.raw_entries() {
            b.add_tensor(prod(*k as usize, y), c);
        }
        b.finish()
    };
    let mul_l = |x: usize, t: &Tensor| {
        let mut b = TensorBuilder::new(&[n]);
        for (k, c) in t.raw_entries() {
            b.add_tensor(prod(x, *k as usize), c);
        }
        b.finish()
    };
    let lab = |idx: &[usize]| idx.iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(",");
    let mut qa = Check::unbounded("quasiassociativity", "triples");
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = mul_t(prod(x, y), z);
                let rhs = mul_l(x, prod(y, z)).scale(a.phi.get3(x, y, z));
                qa.compare(|| lab(&[x, y, z]), &lhs, &rhs);
            }
        }
    }
    report.push(qa);
    let mut unit = Check::unbounded("unit", "elements");
    for x in 0..n {
        let e = Tensor::basis(&[n], &[x]);
        let u = a.unit.raw_entries()[0].0 as usize;
        unit.compare(|| lab(&[x]), prod(u, x), &e);
        unit.compare(|| lab(&[x]), prod(x, u), &e);
    }
    report.push(unit);
    if let Ok(r) = crate::groups::braiding_of_cochain(&a.cochain) {
        let mut qc = Check::unbounded("quasicommutativity", "pairs");
        for x in 0..n {
            for y in 0..n {
                qc.compare(|| lab(&[x, y]), prod(x, y), &prod(y, x).scale(r.get2(x, y)));
            }
        }
        report.push(qc);
    }
    report.extend(crate::category::verify_module(&a.host, &a.carrier, &Default::default()));
    let square = crate::category::module_tensor(&a.host, &a.carrier, &a.carrier);
    report.push(
        crate::category::check_intertwines(&a.host, &square, &a.carrier, &a.mult.reshape(&[n * n], &[n]), &Default::default())
            .renamed("product_is_module_map"),
    );
    report
}

/// `kG̲` in the category of `k_φ(G)`-modules, from its displayed closed form:
/// `m̲(g⊗h) = gh φ(gh,(gh)⁻¹,gh)/(φ(g,g⁻¹,g)φ(h,h⁻¹,h))`, `η̲ = e`,
/// `Δ̲(g) = φ(g,g⁻¹,g) g⊗g`, `ε̲(g) = φ(g⁻¹,g,g⁻¹)`, `S̲(g) = φ(g⁻¹,g,g⁻¹)² g⁻¹`,
/// with `k_φ(G)` acting through the counit.
pub fn dual_braided_group(phi: &Cochain3, r: &Cochain2) -> Result<BraidedGroup, ConstructionError> {
    let host = group_function_algebra(phi, r)?;
    let g = phi.group().clone();
    let n = g.order();
    let e = g.identity();
    let w = |x: usize| phi.get3(x, g.inv(x), x).clone();
    let w_bar = |x: usize| phi.get3(g.inv(x), x, g.inv(x)).clone();
    let labels = (0..n).map(|x| g.label(x)).collect();
    let action = LinearMap::from_fn(
        &[n, n],
        &[n],
        |i| if i[0] == e { Tensor::basis(&[n], &[i[1]]) } else { Tensor::zero(&[n]) },
    )
    .map_err(StructureError::from)?;
    let carrier = LeftModule::new("kG", BasedSpace::new(labels), action, n)?;
    let mult = LinearMap::from_fn(&[n, n], &[n], |i| {
        let p = g.mul(i[0], i[1]);
        let c = (w(p) / (w(i[0]) * w(i[1]))).clone();
        Tensor::monomial(&[n], &[p], c)
    })
    .map_err(StructureError::from)?;
    let unit = Tensor::basis(&[n], &[e]);
    let delta = LinearMap::from_fn(&[n], &[n, n], |i| Tensor::monomial(&[n, n], &[i[0], i[0]], w(i[0]))).map_err(StructureError::from)?;
    let counit = LinearMap::from_fn(&[n], &[], |i| Tensor::scalar(w_bar(i[0]))).map_err(StructureError::from)?;
    let antipode = LinearMap::from_fn(&[n], &[n], |i| {
        let c = w_bar(i[0]);
        Tensor::monomial(&[n], &[g.inv(i[0])], &c * &c)
    })
    .map_err(StructureError::from)?;
    Ok(BraidedGroup::new(Arc::new(host), carrier, mult, unit, delta, counit, antipode)?)
}

/// `ev (r⁻¹⊗id)(id⊗ev⊗id)(Δ̲⊗id⊗id) = ev (id⊗m̲)` on `k_φ(G)̲ ⊗ kG̲ ⊗ kG̲`:
/// the coproduct of the transmuted function algebra evaluated at `(h, g)`
/// equals `δ_s(g ·̲ h)`.
pub fn check_duality(kphi_bar: &BraidedGroup, kg_bar: &BraidedGroup) -> Check {
    let n = kg_bar.dim();
    let mut c = Check::unbounded("braided_duality", "triples");
    if kphi_bar.dim() != n {
        c.record(false, || Witness::new("-", kphi_bar.dim(), n));
        return c;
    }
    for s in 0..n {
        let d = kphi_bar.delta.column_at(s);
        for x in 0..n {
            for y in 0..n {
                // ev pairs δ_a with α ▷ g = g since α = 1.
                let lhs = d.coeff(&[y, x]);
                let rhs = kg_bar.mult.product(x, y).coeff(&[s]);
                c.compare(|| format!("{}, {}, {}", kphi_bar.label(s), kg_bar.label(x), kg_bar.label(y)), &lhs, &rhs);
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic_cocycle, octonion_braiding, octonion_cochain};
    use crate::quasihopf::{verify_quasitriangular, VerifyOptions};

    fn z2cubed() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic_product(&[2, 2, 2]).unwrap())
    }

    #[test]
    fn trivial_cocycle_gives_trivial_phases() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let tg = derive_theta_gamma(&Cochain3::trivial(g.clone(), 3)).unwrap();
        assert!(tg.theta.iter().chain(&tg.gamma).all(Scalar::is_one));
    }

    #[test]
    fn theta_gamma_identities_on_octonion_coboundary() {
        let g = z2cubed();
        let phi = coboundary(&octonion_cochain(&g).unwrap()).unwrap();
        let tg = derive_theta_gamma(&phi).unwrap();
        for h in g.elements() {
            for s in g.elements() {
                assert!(tg.theta(s, 0, h).is_one());
            }
        }
        let report = check_theta_gamma(&tg, &phi);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn theta_gamma_identities_on_nonabelian_coboundary() {
        // S3 with ∂F for a random-looking normalized F.
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = (0..6)
            .map(|a| {
                (0..6)
                    .map(|b| find([perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]]))
                    .collect()
            })
            .collect();
        let g = Arc::new(FiniteGroup::from_table(table).unwrap());
        let f = Cochain2::from_fn(g.clone(), 2, |i| {
            if i[0] == 0 || i[1] == 0 {
                Scalar::one()
            } else {
                Scalar::from_int(((i[0] * 7 + i[1] * 3) % 4) as i64 + 1)
            }
        });
        let phi = coboundary(&f).unwrap();
        let tg = derive_theta_gamma(&phi).unwrap();
        let report = check_theta_gamma(&tg, &phi);
        assert!(report.passed(), "{report}");
        let d = twisted_double(&phi).unwrap();
        let report = verify_quasitriangular(&d.algebra, &VerifyOptions::default());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn rejects_non_cocycles() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut values = vec![Scalar::one(); 8];
        values[7] = Scalar::from_int(2);
        let bad = Cochain3::from_values(g, 3, values).unwrap();
        assert!(matches!(twisted_double(&bad), Err(ConstructionError::NotCocycle(_))));
    }

    #[test]
    fn double_of_z2_passes_all_verifiers() {
        let d = twisted_double(&cyclic_cocycle(2, 1).unwrap()).unwrap();
        assert_eq!(d.algebra.dim(), 4);
        let report = verify_quasitriangular(&d.algebra, &VerifyOptions::default());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn double_beta_matches_closed_form() {
        let g = z2cubed();
        let phi = coboundary(&octonion_cochain(&g).unwrap()).unwrap();
        let d = twisted_double(&phi).unwrap();
        for x in g.elements() {
            assert_eq!(d.algebra.beta.coeff(&[d.index(0, x)]), *phi.get3(g.inv(x), x, g.inv(x)));
        }
    }

    #[test]
    fn function_algebra_structure() {
        let g = z2cubed();
        let phi = coboundary(&octonion_cochain(&g).unwrap()).unwrap();
        let k = group_function_algebra(&phi, &octonion_braiding(&g).unwrap()).unwrap();
        let n = 8;
        for s in 0..n {
            for t in 0..n {
                let expected = if s == t { Tensor::basis(&[n], &[t]) } else { Tensor::zero(&[n]) };
                assert_eq!(*k.mult.product(s, t), expected);
            }
            assert_eq!(k.s_of(&k.basis(s)), k.basis(g.inv(s)));
        }
        let report = verify_quasitriangular(&k, &VerifyOptions::default());
        assert!(report.passed(), "{report}");
        assert!(matches!(
            group_function_algebra(&phi, &Cochain2::trivial(g, 2)),
            Err(ConstructionError::BadRFunction(_))
        ));
    }

    #[test]
    fn octonion_products() {
        let o = octonions().unwrap();
        let n = 8;
        for a in 0..n {
            assert_eq!(*o.mult.product(0, a), Tensor::basis(&[n], &[a]));
        }
        let a = o.group.from_components(&[1, 0, 0]).unwrap();
        assert_eq!(*o.mult.product(a, a), Tensor::monomial(&[n], &[0], Scalar::from_int(-1)));
        let report = verify_graded_quasialgebra(&o);
        assert!(report.passed(), "{report}");
    }
}
