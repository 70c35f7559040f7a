//! Transmutation: a quasitriangular quasi-Hopf algebra `H` viewed as a
//! braided group `H̲` in the category of left `H`-modules, plus a checker for
//! braided-group axioms with the associator and braiding inserted.

use std::sync::Arc;

use crate::category::{act_parts, adjoint_module, LeftModule, Shape};
use crate::parallel::map_range;
use crate::quasihopf::{derive_elements, run_check, DerivedElements, QuasiTriangular, StructureError, VerifyOptions};
use crate::report::{Check, Report};
use crate::tensor::{LinearMap, Place, Tensor};

/// A Hopf algebra in `_H M` with carrier `carrier`.
#[derive(Debug, Clone)]
pub struct BraidedGroup {
    pub host: Arc<QuasiTriangular>,
    pub carrier: LeftModule,
    pub mult: LinearMap,
    pub unit: Tensor,
    pub delta: LinearMap,
    pub counit: LinearMap,
    pub antipode: LinearMap,
}

impl BraidedGroup {
    pub fn new(
        host: Arc<QuasiTriangular>,
        carrier: LeftModule,
        mult: LinearMap,
        unit: Tensor,
        delta: LinearMap,
        counit: LinearMap,
        antipode: LinearMap,
    ) -> Result<Self, StructureError> {
        let n = carrier.dim();
        if carrier.host_dim() != host.dim() {
            return Err(StructureError::Shape("carrier is not a module over the host"));
        }
        let ok = mult.domain() == [n, n]
            && mult.codomain() == [n]
            && unit.dims() == [n]
            && delta.domain() == [n]
            && delta.codomain() == [n, n]
            && counit.domain() == [n]
            && counit.codomain().is_empty()
            && antipode.domain() == [n]
            && antipode.codomain() == [n];
        if !ok {
            return Err(StructureError::Shape("braided group structure maps"));
        }
        Ok(BraidedGroup {
            host,
            carrier,
            mult,
            unit,
            delta,
            counit,
            antipode,
        })
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.carrier.space.label(i)
    }

    pub fn basis(&self, i: usize) -> Tensor {
        Tensor::basis(&[self.dim()], &[i])
    }

    /// `m̲` on legs `(i, i+1)`.
    fn mul_at(&self, t: &Tensor, i: usize) -> Tensor {
        t.apply_map(&self.mult, &[i, i + 1]).expect("product legs")
    }

    fn delta_at(&self, t: &Tensor, i: usize) -> Tensor {
        t.map_leg(i, &self.delta)
    }

    fn counit_at(&self, t: &Tensor, i: usize) -> Tensor {
        t.map_leg(i, &self.counit)
    }

    fn antipode_at(&self, t: &Tensor, i: usize) -> Tensor {
        t.map_leg(i, &self.antipode)
    }

    fn leaves(&self, k: usize) -> Vec<&LeftModule> {
        vec![&self.carrier; k]
    }

    /// Act with a `k`-leg host element on `k` leaf legs.
    fn act(&self, el: &Tensor, t: &Tensor, parts: &[Shape]) -> Tensor {
        act_parts(&self.host, el, t, &self.leaves(t.legs()), parts)
    }
}

/// `q¹ ⊗ S(q²)`, the form in which `q` enters every formula.
fn q_split(h: &QuasiTriangular, d: &DerivedElements) -> Tensor {
    h.s_leg(&d.q, 1)
}

/// `H̲` on the adjoint module, with all five maps taken from the closed formulas.
pub fn transmute(h: Arc<QuasiTriangular>) -> Result<BraidedGroup, StructureError> {
    let d = derive_elements(&h)?;
    transmute_with(h, &d)
}

pub fn transmute_with(h: Arc<QuasiTriangular>, d: &DerivedElements) -> Result<BraidedGroup, StructureError> {
    let carrier = adjoint_module(&h);
    let n = h.dim();
    let adj = &carrier.action;
    let m = &h.mult;
    let sq = q_split(&h, d);

    // q¹(x¹▷b)S(q²) · x²b'S(x³)
    let mult_cols = map_range(n * n, |k| {
        let t = Tensor::basis(&[n, n], &[k / n, k % n]);
        let t = t.join_with(&h.phi_inv, &[Place::Left(0), Place::New, Place::New], &[adj, m, m]);
        let t = h.merge_left(&t, 2, 1);
        let t = h.merge_right(&h.s_leg(&t, 2), 2, 1);
        let t = t.join(&sq, &[Place::Left(0), Place::New], m);
        let t = h.merge_right(&t, 2, 0);
        h.merge_right(&t, 1, 0)
    });
    let mult = LinearMap::from_columns(&[n, n], &[n], mult_cols)?;

    // x¹X¹b₁g¹S(x²R⁽²⁾y³X³₂) ⊗ x³R⁽¹⁾▷(y¹X²b₂g²S(y²X³₁))
    let phi_split = h.delta_leg(&h.phi, 2);
    let y_s = h.s_leg(&h.s_leg(&h.phi_inv, 1), 2);
    let r_s = h.s_leg(&h.r, 1);
    let x_s = h.s_leg(&h.phi_inv, 1);
    let delta_cols = map_range(n, |b| {
        let t = h.rmul(&h.delta_of(&h.basis(b)), &d.f_inv, &[0, 1]);
        let t = t.join(&phi_split, &[Place::Left(0), Place::Left(1), Place::New, Place::New], m);
        let t = h.merge_right(&h.s_leg(&t, 2), 2, 1);
        let t = h.merge_right(&h.s_leg(&t, 2), 2, 0);
        let t = t.join(&y_s, &[Place::New, Place::Right(1), Place::Right(0)], m);
        let t = h.merge_left(&t, 2, 1);
        let t = t.join_with(&r_s, &[Place::Left(1), Place::Right(0)], &[adj, m]);
        let t = t.join_with(&x_s, &[Place::Left(0), Place::New, Place::Left(1)], &[m, m, adj]);
        h.merge_right(&t, 2, 0)
    });
    let delta = LinearMap::from_columns(&[n], &[n, n], delta_cols)?;

    let antipode = antipode_statement_form(&h, d, &carrier)?;
    BraidedGroup::new(h.clone(), carrier, mult, h.beta.clone(), delta, h.counit.clone(), antipode)
}

/// `S̲(b) = X¹R⁽²⁾x²β S(q¹(X²R⁽¹⁾x¹▷b)S(q²)X³x³)`.
pub fn antipode_statement_form(h: &QuasiTriangular, d: &DerivedElements, carrier: &LeftModule) -> Result<LinearMap, StructureError> {
    let (n, adj, m) = (h.dim(), &carrier.action, &h.mult);
    let sq = q_split(h, d);
    let cols = map_range(n, |b| {
        let t = h.basis(b).join_with(&h.phi_inv, &[Place::Left(0), Place::New, Place::New], &[adj, m, m]);
        let t = t.join_with(&h.r, &[Place::Left(0), Place::Left(1)], &[adj, m]);
        let t = t.join_with(&h.phi, &[Place::Left(1), Place::Left(0), Place::Left(2)], &[m, adj, m]);
        finish_antipode(h, &sq, &t, true)
    });
    Ok(LinearMap::from_columns(&[n], &[n], cols)?)
}

/// `S̲(b) = X¹R⁽²⁾p² S(q¹(X²R⁽¹⁾p¹▷b)S(q²)X³)`.
pub fn antipode_proof_form(h: &QuasiTriangular, d: &DerivedElements, carrier: &LeftModule) -> Result<LinearMap, StructureError> {
    let (n, adj, m) = (h.dim(), &carrier.action, &h.mult);
    let sq = q_split(h, d);
    let cols = map_range(n, |b| {
        let t = h.basis(b).join_with(&d.p, &[Place::Left(0), Place::New], &[adj, m]);
        let t = t.join_with(&h.r, &[Place::Left(0), Place::Left(1)], &[adj, m]);
        let t = t.join_with(&h.phi, &[Place::Left(1), Place::Left(0), Place::New], &[m, adj, m]);
        finish_antipode(h, &sq, &t, false)
    });
    Ok(LinearMap::from_columns(&[n], &[n], cols)?)
}

/// From legs `[c, a, z]` form `a (β) S(q¹ c S(q²) z)`.
fn finish_antipode(h: &QuasiTriangular, sq: &Tensor, t: &Tensor, with_beta: bool) -> Tensor {
    let t = t.join(sq, &[Place::Left(0), Place::New], &h.mult);
    let t = h.merge_right(&t, 3, 0);
    let t = h.merge_right(&t, 2, 0);
    let t = h.s_leg(&t, 0);
    let t = if with_beta { h.rmul(&t, &h.beta, &[1]) } else { t };
    h.merge_right(&t, 0, 1)
}

/// The two antipode formulas agree as matrices.
pub fn check_antipode_forms(h: &QuasiTriangular, d: &DerivedElements) -> Result<Check, StructureError> {
    let carrier = adjoint_module(h);
    let a = antipode_statement_form(h, d, &carrier)?;
    let b = antipode_proof_form(h, d, &carrier)?;
    let mut c = Check::new("antipode_forms_agree", "elements");
    for i in 0..h.dim() {
        c.compare(|| h.label(i).to_string(), a.column_at(i), b.column_at(i));
    }
    Ok(c)
}

/// The axioms of a Hopf algebra in `_H M`, with `Φ` and `Ψ` inserted.
pub fn verify_braided_group(b: &BraidedGroup, opts: &VerifyOptions) -> Report {
    use Shape::Leaf;
    let h = &*b.host;
    let (n, nh) = (b.dim(), h.dim());
    let mut report = Report::new(format!("braided group on {}", b.carrier.name));
    let lab = |t: &[usize]| t.iter().map(|&i| b.label(i)).collect::<Vec<_>>().join(", ");
    let hlab = |t: &[usize]| format!("{}; {}", h.label(t[0]), lab(&t[1..]));
    let pair = Shape::pair(Leaf, Leaf);
    let basis2 = |t: &[usize]| Tensor::basis(&[n, n], &[t[0], t[1]]);

    // (1) equivariance of the five maps
    let (tp, s) = opts.tuples_over(&[nh, n, n], 0x11);
    report.push(run_check("mult_equivariant", "triples", &tp, s, hlab, |t| {
        let x = h.basis(t[0]);
        let lhs = b.mul_at(&b.act(&h.delta_of(&x), &Tensor::basis(&[n, n], &[t[1], t[2]]), &[Leaf, Leaf]), 0);
        let rhs = b.carrier.act(&x, b.mult.product(t[1], t[2]));
        (lhs, rhs)
    }));
    let (tp, s) = opts.tuples_over(&[nh, n], 0x12);
    report.push(run_check("delta_equivariant", "pairs", &tp, s, hlab, |t| {
        let x = h.basis(t[0]);
        let lhs = b.delta_at(b.carrier.act_basis(t[0], t[1]), 0);
        let rhs = b.act(&h.delta_of(&x), b.delta.column_at(t[1]), &[Leaf, Leaf]);
        (lhs, rhs)
    }));
    report.push(run_check("counit_equivariant", "pairs", &tp, s, hlab, |t| {
        let lhs = b.counit_at(b.carrier.act_basis(t[0], t[1]), 0);
        let rhs = b.counit.column_at(t[1]).scale(&h.eps_basis(t[0]));
        (lhs, rhs)
    }));
    report.push(run_check("antipode_equivariant", "pairs", &tp, s, hlab, |t| {
        let lhs = b.antipode_at(b.carrier.act_basis(t[0], t[1]), 0);
        let rhs = b.carrier.act(&h.basis(t[0]), b.antipode.column_at(t[1]));
        (lhs, rhs)
    }));
    let (tp, s) = opts.tuples_over(&[nh], 0x13);
    report.push(run_check(
        "unit_equivariant",
        "elements",
        &tp,
        s,
        |t| h.label(t[0]).to_string(),
        |t| (b.carrier.act(&h.basis(t[0]), &b.unit), b.unit.scale(&h.eps_basis(t[0]))),
    ));

    // (2) m̲(m̲⊗id) = m̲(id⊗m̲)Φ
    let (tp, s) = opts.tuples_over(&[n, n, n], 0x21);
    report.push(run_check("associativity", "triples", &tp, s, lab, |t| {
        let lhs = b.mul_at(&b.mult.product(t[0], t[1]).outer(&b.basis(t[2])), 0);
        let x = b.act(&h.phi, &Tensor::basis(&[n, n, n], t), &[Leaf, Leaf, Leaf]);
        let rhs = b.mul_at(&b.mul_at(&x, 1), 0);
        (lhs, rhs)
    }));

    // (3) unit laws
    let (tp, s) = opts.tuples_over(&[n], 0x31);
    report.push(run_check("unit_left", "elements", &tp, s, lab, |t| {
        (b.mul_at(&b.unit.outer(&b.basis(t[0])), 0), b.basis(t[0]))
    }));
    report.push(run_check("unit_right", "elements", &tp, s, lab, |t| {
        (b.mul_at(&b.basis(t[0]).outer(&b.unit), 0), b.basis(t[0]))
    }));

    // (4) Φ(Δ̲⊗id)Δ̲ = (id⊗Δ̲)Δ̲
    report.push(run_check("coassociativity", "elements", &tp, s, lab, |t| {
        let d = b.delta.column_at(t[0]);
        let lhs = b.act(&h.phi, &b.delta_at(d, 0), &[Leaf, Leaf, Leaf]);
        (lhs, b.delta_at(d, 1))
    }));

    // (5) counit laws
    report.push(run_check("counit_left", "elements", &tp, s, lab, |t| {
        (b.counit_at(b.delta.column_at(t[0]), 0), b.basis(t[0]))
    }));
    report.push(run_check("counit_right", "elements", &tp, s, lab, |t| {
        (b.counit_at(b.delta.column_at(t[0]), 1), b.basis(t[0]))
    }));

    // (6) Δ̲ m̲ = (m̲⊗m̲) Φ⁻¹_{B,B,B⊗B} (id⊗Φ) (id⊗Ψ⊗id) (id⊗Φ⁻¹) Φ_{B,B,B⊗B} (Δ̲⊗Δ̲)
    let one_phi = h.unit.outer(&h.phi);
    let one_phi_inv = h.unit.outer(&h.phi_inv);
    let one_r_one = h.unit.outer(&h.r).outer(&h.unit);
    let leaves4 = [Leaf, Leaf, Leaf, Leaf];
    let outer_parts = [Leaf, Leaf, pair.clone()];
    let (tp, s) = opts.tuples_over(&[n, n], 0x61);
    report.push(run_check("coproduct_multiplicative", "pairs", &tp, s, lab, |t| {
        let lhs = b.delta_at(b.mult.product(t[0], t[1]), 0);
        let x = b.delta.column_at(t[0]).outer(b.delta.column_at(t[1]));
        let x = b.act(&h.phi, &x, &outer_parts);
        let x = b.act(&one_phi_inv, &x, &leaves4);
        let x = b.act(&one_r_one, &x, &leaves4).permute(&[0, 2, 1, 3]).expect("swap");
        let x = b.act(&one_phi, &x, &leaves4);
        let x = b.act(&h.phi_inv, &x, &outer_parts);
        let rhs = b.mul_at(&b.mul_at(&x, 2), 0);
        (lhs, rhs)
    }));
    let mut du = Check::new("coproduct_unital", "identity");
    du.compare(|| "-".into(), &b.delta_at(&b.unit, 0), &b.unit.outer(&b.unit));
    report.push(du);

    // (7) ε̲ m̲ = ε̲⊗ε̲, ε̲(η̲) = 1
    report.push(run_check("counit_multiplicative", "pairs", &tp, s, lab, |t| {
        let lhs = b.counit_at(b.mult.product(t[0], t[1]), 0);
        let rhs = b.counit_at(&b.counit_at(&basis2(t), 0), 0);
        (lhs, rhs)
    }));
    let mut cu = Check::new("counit_unital", "identity");
    cu.compare(|| "-".into(), &b.counit_at(&b.unit, 0), &Tensor::scalar(crate::scalars::Scalar::one()));
    report.push(cu);

    // (8) m̲(S̲⊗id)Δ̲ = η̲ε̲ = m̲(id⊗S̲)Δ̲
    let (tp, s) = opts.tuples_over(&[n], 0x81);
    report.push(run_check("antipode_left", "elements", &tp, s, lab, |t| {
        let d = b.delta.column_at(t[0]);
        (b.mul_at(&b.antipode_at(d, 0), 0), b.unit.scale(&b.counit.column_at(t[0]).scalar_value()))
    }));
    report.push(run_check("antipode_right", "elements", &tp, s, lab, |t| {
        let d = b.delta.column_at(t[0]);
        (b.mul_at(&b.antipode_at(d, 1), 0), b.unit.scale(&b.counit.column_at(t[0]).scalar_value()))
    }));
    report
}

/// `Δ(q¹bS(q²))` against the composite
/// `q¹(y¹X¹▷b̲₁)S(q²)y²Y¹R⁽²⁾x²X³₁ ⊗ Q¹(y³₁Y²R⁽¹⁾x¹X²▷b̲₂)S(Q²)y³₂Y³x³X³₂`
/// for every basis element.
pub fn verify_comult_characterization(b: &BraidedGroup, d: &DerivedElements) -> Check {
    let h = &*b.host;
    let n = b.dim();
    let (adj, m) = (&b.carrier.action, &h.mult);
    let sq = q_split(h, d);
    let phi_split = h.delta_leg(&h.phi, 2);
    let phi_inv_split = h.delta_leg(&h.phi_inv, 2);
    let tuples: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    run_check(
        "comult_characterization",
        "elements",
        &tuples,
        false,
        |t| b.label(t[0]).to_string(),
        |t| {
            let u = h.basis(t[0]).join(&sq, &[Place::Left(0), Place::New], m);
            let lhs = h.delta_of(&h.merge_right(&u, 1, 0));

            let x = b.delta.column_at(t[0]);
            let x = x.join_with(&phi_split, &[Place::Left(0), Place::Left(1), Place::New, Place::New], &[adj, adj, m, m]);
            let x = x.join_with(&h.phi_inv, &[Place::Left(1), Place::Left(2), Place::Left(3)], &[adj, m, m]);
            let x = x.join_with(&h.r, &[Place::Left(1), Place::Left(2)], &[adj, m]);
            let x = x.join_with(&h.phi, &[Place::Left(2), Place::Left(1), Place::Left(3)], &[m, adj, m]);
            let x = x.join_with(
                &phi_inv_split,
                &[Place::Left(0), Place::Left(2), Place::Left(1), Place::Left(3)],
                &[adj, m, adj, m],
            );
            let x = h.merge_right(&x.join(&sq, &[Place::Left(0), Place::New], m), 4, 0);
            let x = h.merge_right(&x.join(&sq, &[Place::Left(1), Place::New], m), 4, 1);
            let x = h.merge_right(&x, 3, 1);
            let rhs = h.merge_right(&x, 2, 0);
            (lhs, rhs)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, twisted_double};
    use crate::groups::{cyclic_cocycle, FiniteGroup};

    fn check_all(h: QuasiTriangular) -> BraidedGroup {
        let h = Arc::new(h);
        let d = derive_elements(&h).unwrap();
        let b = transmute_with(h.clone(), &d).unwrap();
        let report = verify_braided_group(&b, &VerifyOptions::default());
        assert!(report.passed(), "{report}");
        let c = verify_comult_characterization(&b, &d);
        assert!(c.passed(), "{c}");
        assert!(check_antipode_forms(&h, &d).unwrap().passed());
        b
    }

    #[test]
    fn ordinary_group_algebra_is_unchanged() {
        let h = group_algebra(&Arc::new(FiniteGroup::cyclic(3).unwrap())).unwrap();
        let b = check_all(h.clone());
        assert_eq!(b.mult, h.mult);
        assert_eq!(b.delta, h.delta);
        assert_eq!(b.antipode, h.antipode);
        assert_eq!(b.unit, h.unit);
    }

    #[test]
    fn twisted_double_of_z2() {
        check_all(twisted_double(&cyclic_cocycle(2, 1).unwrap()).unwrap().algebra);
    }

    #[test]
    fn twisted_double_of_z3() {
        check_all(twisted_double(&cyclic_cocycle(3, 1).unwrap()).unwrap().algebra);
    }

    #[test]
    fn perturbed_product_is_detected() {
        let b = check_all(twisted_double(&cyclic_cocycle(2, 1).unwrap()).unwrap().algebra);
        let mut cols = b.mult.columns().to_vec();
        let k = cols.iter().position(|c| !c.is_zero()).unwrap();
        cols[k] = cols[k].neg();
        let mult = LinearMap::from_columns(&[4, 4], &[4], cols).unwrap();
        let bad = BraidedGroup { mult, ..b };
        let report = verify_braided_group(&bad, &VerifyOptions::default());
        assert!(report.check("associativity").is_some_and(|c| !c.passed()));
        assert!(report.check("unit_left").is_some_and(|c| !c.passed()));
    }
}
