//! Structure-preserving maps between quasi-Hopf algebras, the double
//! `H_R ▶◀ H` with the isomorphism `χ: H̲ ⋊· H → H_R ▶◀ H`, and
//! `σ: kG̲ ⋊· k_φ(G) → D^φ(G)`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bosonise::{bosonise, omega, Bosonised, SmashProduct};
use crate::constructions::{dual_braided_group, twisted_double, ConstructionError, TwistedDouble};
use crate::groups::{Cochain2, Cochain3};
use crate::parallel::map_range;
use crate::quasihopf::{derive_elements, run_check, QuasiBialgebra, QuasiHopfAlgebra, QuasiTriangular, StructureError, VerifyOptions};
use crate::report::{Check, Report, Witness};
use crate::scalars::Scalar;
use crate::tensor::{BasedSpace, LinearMap, Place, Tensor, TensorBuilder};
use crate::transmute::transmute_with;

/// Basis-level access to an algebra and whatever coalgebra data it carries.
/// Lazily evaluated structures implement this without tabulating anything.
pub trait Structure: Send + Sync {
    fn name(&self) -> String;
    fn space(&self) -> &BasedSpace;
    fn product(&self, x: usize, y: usize) -> Tensor;
    fn unit(&self) -> Tensor;

    fn dim(&self) -> usize {
        self.space().dim()
    }
    fn coproduct(&self, _x: usize) -> Option<Tensor> {
        None
    }
    fn counit(&self, _x: usize) -> Option<Scalar> {
        None
    }
    fn antipode(&self, _x: usize) -> Option<Tensor> {
        None
    }
    fn alpha(&self) -> Option<Tensor> {
        None
    }
    fn beta(&self) -> Option<Tensor> {
        None
    }
    fn phi(&self) -> Option<Tensor> {
        None
    }
    fn phi_inv(&self) -> Option<Tensor> {
        None
    }
}

impl Structure for QuasiHopfAlgebra {
    fn name(&self) -> String {
        self.base.name.clone()
    }
    fn space(&self) -> &BasedSpace {
        &self.base.space
    }
    fn product(&self, x: usize, y: usize) -> Tensor {
        self.product_basis(x, y).clone()
    }
    fn unit(&self) -> Tensor {
        self.base.unit.clone()
    }
    fn coproduct(&self, x: usize) -> Option<Tensor> {
        Some(self.delta.column_at(x).clone())
    }
    fn counit(&self, x: usize) -> Option<Scalar> {
        Some(self.eps_basis(x))
    }
    fn antipode(&self, x: usize) -> Option<Tensor> {
        Some(self.antipode.column_at(x).clone())
    }
    fn alpha(&self) -> Option<Tensor> {
        Some(self.alpha.clone())
    }
    fn beta(&self) -> Option<Tensor> {
        Some(self.beta.clone())
    }
    fn phi(&self) -> Option<Tensor> {
        Some(self.base.phi.clone())
    }
    fn phi_inv(&self) -> Option<Tensor> {
        Some(self.base.phi_inv.clone())
    }
}

impl Structure for SmashProduct {
    fn name(&self) -> String {
        format!("{} ⋊ {}", self.carrier.name, self.host.name)
    }
    fn space(&self) -> &BasedSpace {
        &self.space
    }
    fn product(&self, x: usize, y: usize) -> Tensor {
        self.mult.product(x, y).clone()
    }
    fn unit(&self) -> Tensor {
        self.unit.clone()
    }
}

impl Structure for Bosonised {
    fn name(&self) -> String {
        format!("{} ⋊· {}", self.braided.carrier.name, self.braided.host.name)
    }
    fn space(&self) -> &BasedSpace {
        &self.space
    }
    fn product(&self, x: usize, y: usize) -> Tensor {
        Bosonised::product(self, x, y)
    }
    fn unit(&self) -> Tensor {
        self.unit.clone()
    }
    fn coproduct(&self, x: usize) -> Option<Tensor> {
        Some(Bosonised::coproduct(self, x))
    }
    fn counit(&self, x: usize) -> Option<Scalar> {
        Some(Bosonised::counit(self, x))
    }
    fn antipode(&self, x: usize) -> Option<Tensor> {
        Some(Bosonised::antipode(self, x))
    }
    fn alpha(&self) -> Option<Tensor> {
        Some(self.alpha.clone())
    }
    fn beta(&self) -> Option<Tensor> {
        Some(self.beta.clone())
    }
    fn phi(&self) -> Option<Tensor> {
        Some(self.phi.clone())
    }
    fn phi_inv(&self) -> Option<Tensor> {
        Some(self.phi_inv.clone())
    }
}

/// Extend a basis-level map linearly to `x`.
fn linear(x: &Tensor, dims: &[usize], f: impl Fn(usize) -> Tensor) -> Tensor {
    let mut b = TensorBuilder::new(dims);
    for (k, c) in x.raw_entries() {
        b.add_tensor(&f(*k as usize), c);
    }
    b.finish()
}

fn mul_in(s: &dyn Structure, x: &Tensor, y: &Tensor) -> Tensor {
    let n = s.dim();
    let mut b = TensorBuilder::new(&[n]);
    for (i, ci) in x.raw_entries() {
        for (j, cj) in y.raw_entries() {
            b.add_tensor(&s.product(*i as usize, *j as usize), &(ci * cj));
        }
    }
    b.finish()
}

/// What a [`StructureMorphism`] has been shown to preserve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct MorphismFlags {
    pub algebra: bool,
    pub counit: bool,
    pub coalgebra: bool,
    pub associator: bool,
    pub alpha_beta: bool,
    pub antipode: bool,
    pub bijective: bool,
}

impl MorphismFlags {
    pub const NONE: MorphismFlags = MorphismFlags {
        algebra: false,
        counit: false,
        coalgebra: false,
        associator: false,
        alpha_beta: false,
        antipode: false,
        bijective: false,
    };
    pub const ALL: MorphismFlags = MorphismFlags {
        algebra: true,
        counit: true,
        coalgebra: true,
        associator: true,
        alpha_beta: true,
        antipode: true,
        bijective: true,
    };
    /// Unital algebra map, coalgebra map and bijection.
    pub const BIALGEBRA: MorphismFlags = MorphismFlags {
        algebra: true,
        counit: true,
        coalgebra: true,
        bijective: true,
        ..MorphismFlags::NONE
    };

    /// Every flag set in `self` is set in `other`.
    pub fn within(&self, other: &MorphismFlags) -> bool {
        let pairs = [
            (self.algebra, other.algebra),
            (self.counit, other.counit),
            (self.coalgebra, other.coalgebra),
            (self.associator, other.associator),
            (self.alpha_beta, other.alpha_beta),
            (self.antipode, other.antipode),
            (self.bijective, other.bijective),
        ];
        pairs.iter().all(|&(a, b)| !a || b)
    }
}

/// A linear map between two structures, with the properties verified so far.
#[derive(Clone)]
pub struct StructureMorphism {
    pub name: String,
    pub source: Arc<dyn Structure>,
    pub target: Arc<dyn Structure>,
    pub map: LinearMap,
    /// A claimed two-sided inverse; [`verify_morphism`] checks it.
    pub inverse: Option<LinearMap>,
    pub checked: MorphismFlags,
}

impl fmt::Debug for StructureMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureMorphism")
            .field("name", &self.name)
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("checked", &self.checked)
            .finish()
    }
}

impl StructureMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<dyn Structure>,
        target: Arc<dyn Structure>,
        map: LinearMap,
        inverse: Option<LinearMap>,
    ) -> Result<Self, StructureError> {
        let (n, m) = (source.dim(), target.dim());
        if map.domain() != [n] || map.codomain() != [m] {
            return Err(StructureError::Shape("morphism"));
        }
        if inverse.as_ref().is_some_and(|i| i.domain() != [m] || i.codomain() != [n]) {
            return Err(StructureError::Shape("morphism inverse"));
        }
        Ok(StructureMorphism {
            name: name.into(),
            source,
            target,
            map,
            inverse,
            checked: MorphismFlags::NONE,
        })
    }

    /// The inverse map as a morphism the other way, with nothing checked.
    pub fn reversed(&self) -> Option<StructureMorphism> {
        let inv = self.inverse.clone()?;
        Some(StructureMorphism {
            name: format!("{}⁻¹", self.name),
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
            inverse: Some(self.map.clone()),
            checked: MorphismFlags::NONE,
        })
    }

    pub fn apply(&self, x: &Tensor) -> Tensor {
        self.map.apply(x).expect("morphism domain")
    }
}

fn unavailable(name: &str, what: &str) -> Check {
    let mut c = Check::new(name, "identity");
    c.record(false, || Witness::new("-", format!("{what} unavailable"), "structure map"));
    c
}

/// Run the checks selected by `flags`, recording in `m.checked` each flag
/// whose checks all passed exhaustively.
pub fn verify_morphism(m: &mut StructureMorphism, flags: MorphismFlags, opts: &VerifyOptions) -> Report {
    let (src, tgt) = (m.source.as_ref(), m.target.as_ref());
    let (n, nt) = (src.dim(), tgt.dim());
    let map = &m.map;
    let mut report = Report::new(format!("morphism {}: {} → {}", m.name, src.name(), tgt.name()));
    let label = |t: &[usize]| t.iter().map(|&i| src.space().label(i)).collect::<Vec<_>>().join(", ");
    let img = |i: usize| map.column_at(i);
    let ap = |x: &Tensor| map.apply(x).expect("morphism domain");
    let mut passed = MorphismFlags::NONE;
    let ok = |checks: &[&Check]| checks.iter().all(|c| c.passed() && c.exhaustive);
    let (singles, s1) = opts.tuples_over(&[n], 0x15_0001);

    if flags.algebra {
        let (pairs, s2) = opts.tuples_over(&[n, n], 0x15_0002);
        let mult = run_check("multiplicative", "pairs", &pairs, s2, label, |t| {
            (ap(&src.product(t[0], t[1])), mul_in(tgt, img(t[0]), img(t[1])))
        });
        let mut unit = Check::new("unital", "identity");
        unit.compare(|| "1".into(), &ap(&src.unit()), &tgt.unit());
        passed.algebra = ok(&[&mult, &unit]);
        report.push(mult);
        report.push(unit);
    }
    if flags.counit {
        let c = match (0..n).all(|i| src.counit(i).is_some()) && (0..nt).all(|i| tgt.counit(i).is_some()) {
            true => {
                let eps_t = |x: &Tensor| {
                    let mut s = Scalar::zero();
                    for (k, c) in x.raw_entries() {
                        s = &s + &(c * &tgt.counit(*k as usize).expect("counit"));
                    }
                    Tensor::scalar(s)
                };
                run_check("counit_preserved", "elements", &singles, s1, label, |t| {
                    (eps_t(img(t[0])), Tensor::scalar(src.counit(t[0]).expect("counit")))
                })
            }
            false => unavailable("counit_preserved", "counit"),
        };
        passed.counit = ok(&[&c]);
        report.push(c);
    }
    if flags.coalgebra {
        let c = if src.coproduct(0).is_some() && tgt.coproduct(0).is_some() {
            run_check("comultiplicative", "elements", &singles, s1, label, |t| {
                let lhs = linear(img(t[0]), &[nt, nt], |k| tgt.coproduct(k).expect("coproduct"));
                let d = src.coproduct(t[0]).expect("coproduct");
                let rhs = d.apply_map(map, &[0]).and_then(|d| d.apply_map(map, &[1])).expect("morphism domain");
                (lhs, rhs)
            })
        } else {
            unavailable("comultiplicative", "coproduct")
        };
        passed.coalgebra = ok(&[&c]);
        report.push(c);
    }
    if flags.associator {
        let c = match (src.phi(), tgt.phi()) {
            (Some(ps), Some(pt)) => {
                let mut c = Check::new("associator_preserved", "identity");
                let lhs = (0..3).fold(ps, |t, leg| t.apply_map(map, &[leg]).expect("morphism domain"));
                c.compare(|| "φ".into(), &lhs, &pt);
                c
            }
            _ => unavailable("associator_preserved", "associator"),
        };
        passed.associator = ok(&[&c]);
        report.push(c);
    }
    if flags.alpha_beta {
        let mut c = Check::new("alpha_beta_preserved", "identity");
        match (src.alpha(), tgt.alpha(), src.beta(), tgt.beta()) {
            (Some(a), Some(at), Some(b), Some(bt)) => {
                c.compare(|| "α".into(), &ap(&a), &at);
                c.compare(|| "β".into(), &ap(&b), &bt);
            }
            _ => c = unavailable("alpha_beta_preserved", "α/β"),
        }
        passed.alpha_beta = ok(&[&c]);
        report.push(c);
    }
    if flags.antipode {
        let c = if src.antipode(0).is_some() && tgt.antipode(0).is_some() {
            run_check("antipode_intertwined", "elements", &singles, s1, label, |t| {
                let lhs = ap(&src.antipode(t[0]).expect("antipode"));
                let rhs = linear(img(t[0]), &[nt], |k| tgt.antipode(k).expect("antipode"));
                (lhs, rhs)
            })
        } else {
            unavailable("antipode_intertwined", "antipode")
        };
        passed.antipode = ok(&[&c]);
        report.push(c);
    }
    if flags.bijective {
        let mut c = Check::new("bijective", "compositions");
        if m.inverse.is_none() && n == nt && n <= 512 {
            m.inverse = map.inverse();
        }
        match &m.inverse {
            Some(inv) if n == nt => {
                let left = inv.compose(map).expect("shapes");
                let right = map.compose(inv).expect("shapes");
                c.record(left.is_identity(), || Witness::new("inverse ∘ map", "not the identity", "identity"));
                c.record(right.is_identity(), || Witness::new("map ∘ inverse", "not the identity", "identity"));
            }
            _ => c.record(false, || Witness::new("-", "no inverse", "two-sided inverse")),
        }
        passed.bijective = ok(&[&c]);
        report.push(c);
    }
    let mut checked = m.checked;
    for (slot, new) in [
        (&mut checked.algebra, passed.algebra),
        (&mut checked.counit, passed.counit),
        (&mut checked.coalgebra, passed.coalgebra),
        (&mut checked.associator, passed.associator),
        (&mut checked.alpha_beta, passed.alpha_beta),
        (&mut checked.antipode, passed.antipode),
        (&mut checked.bijective, passed.bijective),
    ] {
        *slot |= new;
    }
    m.checked = checked;
    report
}

#[derive(Debug, Clone)]
struct Transported {
    counit: Vec<Scalar>,
    antipode: Option<LinearMap>,
    alpha: Tensor,
    beta: Tensor,
    phi: Tensor,
    phi_inv: Tensor,
}

/// `H_R ▶◀ H`: the tensor product algebra `H ⊗ H` with the coproduct
/// `Δ(b⊗h) = Ω · (b₁ ⊗ h₁ ⊗ b₂ ⊗ h₂) · Ξ`. The remaining structure is
/// pulled along an isomorphism by [`DoubleCross::transport`].
#[derive(Debug, Clone)]
pub struct DoubleCross {
    pub host: Arc<QuasiTriangular>,
    pub space: BasedSpace,
    left: Tensor,
    /// `y¹X¹ ⊗ y³₁W²R⁻⁽²⁾t¹X² ⊗ y²W¹R⁻⁽¹⁾t²X³₁ ⊗ y³₂W³t³X³₂`
    right: Tensor,
    transported: Option<Transported>,
}

pub fn double_cross(h: Arc<QuasiTriangular>) -> DoubleCross {
    let t = h.delta_leg(&h.phi, 2);
    let t = h.lmul(&t, &h.phi_inv, &[1, 2, 3]);
    let t = h.lmul(&t, &h.r_inv, &[2, 1]);
    let t = h.lmul(&t, &h.phi, &[2, 1, 3]);
    let right = h.lmul(&t, &h.delta_leg(&h.phi_inv, 2), &[0, 2, 1, 3]);
    let n = h.dim();
    let space = BasedSpace::new((0..n * n).map(|k| format!("{}⊗{}", h.label(k / n), h.label(k % n))).collect());
    DoubleCross {
        left: omega(&h),
        right,
        space,
        host: h,
        transported: None,
    }
}

impl DoubleCross {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let n = self.host.dim();
        self.host.mul_legwise(&x.reshape(&[n, n]), &y.reshape(&[n, n])).reshape(&[n * n])
    }

    /// The displayed coproduct on an arbitrary element.
    pub fn coproduct_of(&self, x: &Tensor) -> Tensor {
        let h = &*self.host;
        let n = h.dim();
        let t = h.delta_leg(&h.delta_leg(&x.reshape(&[n, n]), 0), 2);
        let t = t.permute(&[0, 2, 1, 3]).expect("interleave");
        let t = h.rmul(&h.lmul(&t, &self.left, &[0, 1, 2, 3]), &self.right, &[0, 1, 2, 3]);
        t.reshape(&[n * n, n * n])
    }

    /// Pull counit, α, β, φ and optionally the antipode from `source` along
    /// `forward` with inverse `inverse`.
    pub fn transport(&mut self, source: &dyn Structure, forward: &LinearMap, inverse: &LinearMap, with_antipode: bool) -> Result<(), StructureError> {
        let n = self.dim();
        if source.dim() != n || forward.domain() != [n] || inverse.domain() != [n] {
            return Err(StructureError::Shape("transport"));
        }
        let missing = StructureError::Shape("source structure");
        let src_counit: Vec<Scalar> = (0..n).map(|k| source.counit(k)).collect::<Option<_>>().ok_or(missing.clone())?;
        let counit = (0..n)
            .map(|k| {
                let mut s = Scalar::zero();
                for (i, c) in inverse.column_at(k).raw_entries() {
                    s = &s + &(c * &src_counit[*i as usize]);
                }
                s
            })
            .collect();
        let push = |t: &Tensor| (0..t.legs()).try_fold(t.clone(), |t, leg| t.apply_map(forward, &[leg]));
        let alpha = push(&source.alpha().ok_or(missing.clone())?)?;
        let beta = push(&source.beta().ok_or(missing.clone())?)?;
        let phi = push(&source.phi().ok_or(missing.clone())?)?;
        let phi_inv = push(&source.phi_inv().ok_or(missing.clone())?)?;
        let antipode = if with_antipode {
            if source.antipode(0).is_none() {
                return Err(missing);
            }
            let cols = map_range(n, |k| {
                let s = linear(inverse.column_at(k), &[n], |i| source.antipode(i).expect("antipode"));
                forward.apply(&s).expect("forward")
            });
            Some(LinearMap::from_columns(&[n], &[n], cols)?)
        } else {
            None
        };
        self.transported = Some(Transported {
            counit,
            antipode,
            alpha,
            beta,
            phi,
            phi_inv,
        });
        Ok(())
    }

    /// Tabulate into a [`QuasiHopfAlgebra`]; needs a transport with antipode.
    pub fn materialize(&self) -> Result<QuasiHopfAlgebra, StructureError> {
        let tr = self.transported.as_ref().ok_or(StructureError::Shape("untransported double"))?;
        let antipode = tr.antipode.clone().ok_or(StructureError::Shape("untransported antipode"))?;
        let n = self.dim();
        let mult = LinearMap::from_columns(&[n, n], &[n], map_range(n * n, |k| Structure::product(self, k / n, k % n)))?;
        let delta = LinearMap::from_columns(&[n], &[n, n], map_range(n, |k| self.coproduct_of(&Tensor::basis(&[n], &[k]))))?;
        let counit = LinearMap::from_columns(&[n], &[], tr.counit.iter().map(|c| Tensor::scalar(c.clone())).collect())?;
        let one = Structure::unit(self);
        let base = QuasiBialgebra::new(
            Structure::name(self),
            self.space.clone(),
            mult,
            one,
            delta,
            counit,
            tr.phi.clone(),
            tr.phi_inv.clone(),
        )?;
        QuasiHopfAlgebra::new(base, antipode, tr.alpha.clone(), tr.beta.clone())
    }
}

impl Structure for DoubleCross {
    fn name(&self) -> String {
        format!("{} ▶◀ {}", self.host.name, self.host.name)
    }
    fn space(&self) -> &BasedSpace {
        &self.space
    }
    fn product(&self, x: usize, y: usize) -> Tensor {
        let h = &*self.host;
        let n = h.dim();
        h.product_basis(x / n, y / n).outer(h.product_basis(x % n, y % n)).reshape(&[n * n])
    }
    fn unit(&self) -> Tensor {
        let n = self.host.dim();
        self.host.ones(2).reshape(&[n * n])
    }
    fn coproduct(&self, x: usize) -> Option<Tensor> {
        Some(self.coproduct_of(&Tensor::basis(&[self.dim()], &[x])))
    }
    fn counit(&self, x: usize) -> Option<Scalar> {
        self.transported.as_ref().map(|t| t.counit[x].clone())
    }
    fn antipode(&self, x: usize) -> Option<Tensor> {
        self.transported.as_ref()?.antipode.as_ref().map(|s| s.column_at(x).clone())
    }
    fn alpha(&self) -> Option<Tensor> {
        self.transported.as_ref().map(|t| t.alpha.clone())
    }
    fn beta(&self) -> Option<Tensor> {
        self.transported.as_ref().map(|t| t.beta.clone())
    }
    fn phi(&self) -> Option<Tensor> {
        self.transported.as_ref().map(|t| t.phi.clone())
    }
    fn phi_inv(&self) -> Option<Tensor> {
        self.transported.as_ref().map(|t| t.phi_inv.clone())
    }
}

/// The transported counit of a double against `ε ⊗ ε`.
pub fn check_counit_is_product(dc: &DoubleCross) -> Check {
    let h = &*dc.host;
    let n = h.dim();
    let mut c = Check::new("counit_is_tensor_counit", "elements");
    if dc.transported.is_none() {
        return unavailable("counit_is_tensor_counit", "transported counit");
    }
    for k in 0..dc.dim() {
        let lhs = Structure::counit(dc, k).expect("transported");
        c.compare(|| dc.space.label(k).to_string(), &lhs, &(h.eps_basis(k / n) * h.eps_basis(k % n)));
    }
    c
}

/// `χ(a⊗h) = q¹(x¹▷a)S(q²)x²h₁ ⊗ x³h₂` on basis `a ⊗ h`.
fn chi_column(h: &QuasiTriangular, adjoint: &LinearMap, sq: &Tensor, a: usize, k: usize) -> Tensor {
    let n = h.dim();
    let t = Tensor::basis(&[n], &[a]).join_with(&h.phi_inv, &[Place::Left(0), Place::New, Place::New], &[adjoint, &h.mult, &h.mult]);
    let t = h.rmul(&t, &h.delta_of(&h.basis(k)), &[1, 2]);
    let t = t.join_with(sq, &[Place::Left(0), Place::New], &[&h.mult, &h.mult]);
    let t = h.merge_right(&t, 3, 0);
    h.merge_right(&t, 1, 0).reshape(&[n * n])
}

/// `χ⁻¹(a⊗h) = x¹aX¹βS(x²h₁X²) ⊗ x³h₂X³` on basis `a ⊗ h`.
fn chi_inverse_column(h: &QuasiTriangular, a: usize, k: usize) -> Tensor {
    let n = h.dim();
    let t = h.delta_leg(&Tensor::basis(&[n, n], &[a, k]), 1);
    let t = h.lmul(&h.rmul(&t, &h.phi, &[0, 1, 2]), &h.phi_inv, &[0, 1, 2]);
    let t = h.lmul(&h.s_leg(&t, 1), &h.beta, &[1]);
    h.merge_right(&t, 1, 0).reshape(&[n * n])
}

/// `χ: H̲ ⋊· H → H_R ▶◀ H` with its claimed inverse, the bosonisation it
/// starts from and the double with structure transported along it.
#[derive(Debug, Clone)]
pub struct Chi {
    pub bosonised: Arc<Bosonised>,
    pub double: Arc<DoubleCross>,
    pub morphism: StructureMorphism,
}

/// Build `χ` and `χ⁻¹` as matrices. The double's antipode is transported
/// only when `with_antipode` is set.
pub fn chi_with(h: Arc<QuasiTriangular>, with_antipode: bool) -> Result<Chi, StructureError> {
    let d = derive_elements(&h)?;
    let braided = transmute_with(h.clone(), &d)?;
    let bos = bosonise(&braided);
    let n = h.dim();
    let nn = n * n;
    let sq = h.s_leg(&d.q, 1);
    let adjoint = &braided.carrier.action;
    let forward = LinearMap::from_columns(&[nn], &[nn], map_range(nn, |k| chi_column(&h, adjoint, &sq, k / n, k % n)))?;
    let inverse = LinearMap::from_columns(&[nn], &[nn], map_range(nn, |k| chi_inverse_column(&h, k / n, k % n)))?;
    let mut dc = double_cross(h);
    dc.transport(&bos, &forward, &inverse, with_antipode)?;
    let (bosonised, double) = (Arc::new(bos), Arc::new(dc));
    let morphism = StructureMorphism::new("χ", bosonised.clone(), double.clone(), forward, Some(inverse))?;
    Ok(Chi { bosonised, double, morphism })
}

pub fn chi(h: Arc<QuasiTriangular>) -> Result<Chi, StructureError> {
    chi_with(h, true)
}

/// `σ: kG̲ ⋊· k_φ(G) → D^φ(G)` with the data needed to transport `R`.
#[derive(Debug, Clone)]
pub struct Sigma {
    pub phi: Cochain3,
    pub r: Cochain2,
    pub source: Arc<QuasiHopfAlgebra>,
    pub target: Arc<TwistedDouble>,
    pub morphism: StructureMorphism,
}

/// `σ(g⊗δ_t) = g⊗δ_t φ(g⁻¹,g,g⁻¹)/r(g,t)` and
/// `σ⁻¹(g⊗δ_t) = g⊗δ_t φ(g,g⁻¹,g) r(g,t)`.
pub fn sigma(phi: &Cochain3, r: &Cochain2) -> Result<Sigma, ConstructionError> {
    let kg = dual_braided_group(phi, r)?;
    let source = Arc::new(bosonise(&kg).materialize()?);
    let target = Arc::new(twisted_double(phi)?);
    let g = phi.group();
    let n = g.order();
    let dim = n * n;
    let scalar_map = |f: &dyn Fn(usize, usize) -> Scalar| LinearMap::from_fn(&[dim], &[dim], |i| Tensor::monomial(&[dim], i, f(i[0] / n, i[0] % n)));
    let fwd = |x: usize, t: usize| phi.get3(g.inv(x), x, g.inv(x)) / r.get2(x, t);
    let bwd = |x: usize, t: usize| phi.get3(x, g.inv(x), x) * r.get2(x, t);
    let map = scalar_map(&fwd).map_err(StructureError::from)?;
    let inverse = scalar_map(&bwd).map_err(StructureError::from)?;
    let tgt: Arc<dyn Structure> = Arc::new(target.algebra.qh.clone());
    let morphism = StructureMorphism::new("σ", source.clone(), tgt, map, Some(inverse))?;
    Ok(Sigma {
        phi: phi.clone(),
        r: r.clone(),
        source,
        target,
        morphism,
    })
}

/// `(m⁻¹ ⊗ m⁻¹)` applied to `R` and `R⁻¹` of the target of `m`.
pub fn transport_r(m: &StructureMorphism, r: &Tensor, r_inv: &Tensor) -> Result<(Tensor, Tensor), StructureError> {
    let inv = m.inverse.as_ref().ok_or(StructureError::Shape("morphism without inverse"))?;
    let pull = |t: &Tensor| t.apply_map(inv, &[0]).and_then(|t| t.apply_map(inv, &[1]));
    Ok((pull(r)?, pull(r_inv)?))
}

impl Sigma {
    /// `kG̲ ⋊· k_φ(G)` with `R_B = (σ⁻¹⊗σ⁻¹)(R_D)`.
    pub fn transported(&self) -> Result<QuasiTriangular, StructureError> {
        let d = &self.target.algebra;
        let (r, r_inv) = transport_r(&self.morphism, &d.r, &d.r_inv)?;
        QuasiTriangular::with_inverse((*self.source).clone(), r, r_inv)
    }

    /// `Σ_g e⊗δ_g ⊗ g⊗1 · φ(g,g⁻¹,g) r(g,g)`.
    pub fn r_closed_form(&self) -> Tensor {
        let g = self.phi.group();
        let n = g.order();
        let dim = n * n;
        let e = g.identity();
        Tensor::from_terms(
            &[dim, dim],
            g.elements().flat_map(|x| {
                let c = self.phi.get3(x, g.inv(x), x) * self.r.get2(x, x);
                (0..n).map(move |t| (vec![e * n + x, x * n + t], c.clone()))
            }),
        )
    }

    /// Per-entry comparison of the transported `R_B` with [`Sigma::r_closed_form`].
    pub fn check_r_closed_form(&self) -> Result<Check, StructureError> {
        let d = &self.target.algebra;
        let (r, _) = transport_r(&self.morphism, &d.r, &d.r_inv)?;
        let closed = self.r_closed_form();
        let dim = self.source.dim();
        let mut c = Check::new("r_b_closed_form", "entries");
        for k in 0..dim * dim {
            let idx = [k / dim, k % dim];
            let (l, rhs) = (r.coeff(&idx), closed.coeff(&idx));
            if l.is_zero() && rhs.is_zero() {
                continue;
            }
            c.compare(|| format!("{}, {}", self.source.label(idx[0]), self.source.label(idx[1])), &l, &rhs);
        }
        Ok(c)
    }
}
