//! Quasi-bialgebras, quasi-Hopf algebras and quasitriangular structures given
//! by structure constants, with exhaustive (or seeded random) axiom verifiers
//! and the derived elements `f`, `γ`, `δ`, `q`, `p`.
//!
//! Notation in comments: `φ = X¹⊗X²⊗X³`, `φ⁻¹ = x¹⊗x²⊗x³`, further copies of
//! `φ` and `φ⁻¹` are `Y`, `y`, etc. `φ_ijk` puts `X¹` in slot i, `X²` in slot j
//! and `X³` in slot k.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::parallel::map_range;
use crate::report::{Check, Report, Witness};
use crate::scalars::Scalar;
use crate::tensor::{BasedSpace, LinearMap, Place, Tensor, TensorBuilder, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{0} has the wrong shape")]
    Shape(&'static str),
    #[error("{0} is not invertible")]
    NotInvertible(&'static str),
    #[error("construction requires {0}")]
    Unsupported(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("malformed structure dump: {0}")]
    Parse(String),
}

/// How exhaustively the verifiers test identities that quantify over the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest dimension whose basis is checked exhaustively.
    pub exhaustive_limit: usize,
    /// Number of random instances above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exhaustive_limit: 64,
            samples: 200,
            seed: 0x5eed_0001,
        }
    }
}

impl VerifyOptions {
    pub fn exhaustive(&self, dim: usize) -> bool {
        dim <= self.exhaustive_limit
    }

    /// Tuples over factors of different dimensions: all of them when every
    /// factor is within the limit, otherwise a sample seeded by `salt`.
    pub fn tuples_over(&self, dims: &[usize], salt: u64) -> (Vec<Vec<usize>>, bool) {
        if dims.iter().all(|&d| self.exhaustive(d)) {
            let total: usize = dims.iter().product();
            let all = (0..total)
                .map(|mut k| {
                    let mut t = vec![0; dims.len()];
                    for (slot, d) in t.iter_mut().zip(dims).rev() {
                        *slot = k % d;
                        k /= d;
                    }
                    t
                })
                .collect();
            (all, false)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt);
            (
                (0..self.samples).map(|_| dims.iter().map(|&d| rng.gen_range(0..d)).collect()).collect(),
                true,
            )
        }
    }

    /// The index tuples to test, and whether they are a sample.
    pub fn tuples(&self, dim: usize, arity: usize) -> (Vec<Vec<usize>>, bool) {
        if self.exhaustive(dim) {
            let total = dim.pow(arity as u32);
            let tuples = (0..total)
                .map(|mut k| {
                    let mut t = vec![0; arity];
                    for slot in t.iter_mut().rev() {
                        *slot = k % dim;
                        k /= dim;
                    }
                    t
                })
                .collect();
            (tuples, false)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (arity as u64).wrapping_mul(0x9e37_79b9));
            let tuples = (0..self.samples).map(|_| (0..arity).map(|_| rng.gen_range(0..dim)).collect()).collect();
            (tuples, true)
        }
    }
}

/// Evaluate `f` on every tuple and collect a check comparing the two sides.
pub(crate) fn run_check<F>(name: &str, unit: &str, tuples: &[Vec<usize>], sampled: bool, label: impl Fn(&[usize]) -> String, f: F) -> Check
where
    F: Fn(&[usize]) -> (Tensor, Tensor) + Sync,
{
    let results = map_range(tuples.len(), |i| {
        let (l, r) = f(&tuples[i]);
        if l == r {
            None
        } else {
            Some((l, r))
        }
    });
    let mut check = Check::new(name, unit).sampled(sampled);
    for (t, res) in tuples.iter().zip(results) {
        match res {
            None => check.record(true, || unreachable!()),
            Some((l, r)) => check.record(false, || Witness::new(label(t), l, r)),
        }
    }
    check
}

fn single_check(name: &str, lhs: &Tensor, rhs: &Tensor) -> Check {
    let mut c = Check::new(name, "identity");
    c.compare(|| "-".to_string(), lhs, rhs);
    c
}

#[derive(Debug, Clone)]
pub struct QuasiBialgebra {
    pub name: String,
    pub space: BasedSpace,
    /// `H ⊗ H → H`.
    pub mult: LinearMap,
    pub unit: Tensor,
    /// `H → H ⊗ H`.
    pub delta: LinearMap,
    /// `H → k`.
    pub counit: LinearMap,
    pub phi: Tensor,
    pub phi_inv: Tensor,
}

impl QuasiBialgebra {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        space: BasedSpace,
        mult: LinearMap,
        unit: Tensor,
        delta: LinearMap,
        counit: LinearMap,
        phi: Tensor,
        phi_inv: Tensor,
    ) -> Result<Self, StructureError> {
        let n = space.dim();
        if mult.domain() != [n, n] || mult.codomain() != [n] {
            return Err(StructureError::Shape("multiplication"));
        }
        if unit.dims() != [n] {
            return Err(StructureError::Shape("unit"));
        }
        if delta.domain() != [n] || delta.codomain() != [n, n] {
            return Err(StructureError::Shape("coproduct"));
        }
        if counit.domain() != [n] || !counit.codomain().is_empty() {
            return Err(StructureError::Shape("counit"));
        }
        if phi.dims() != [n, n, n] || phi_inv.dims() != [n, n, n] {
            return Err(StructureError::Shape("associator"));
        }
        Ok(QuasiBialgebra {
            name: name.into(),
            space,
            mult,
            unit,
            delta,
            counit,
            phi,
            phi_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self, i: usize) -> Tensor {
        Tensor::basis(&[self.dim()], &[i])
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    pub fn labels(&self, idx: &[usize]) -> String {
        idx.iter().map(|&i| self.label(i)).collect::<Vec<_>>().join(", ")
    }

    pub fn mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        a.mul_legwise(b, &self.mult)
    }

    pub fn mul_legwise(&self, a: &Tensor, b: &Tensor) -> Tensor {
        a.mul_legwise(b, &self.mult)
    }

    /// `el` multiplied from the left into the given legs of `t`, one leg of `el` per entry.
    pub fn lmul(&self, t: &Tensor, el: &Tensor, legs: &[usize]) -> Tensor {
        let places: Vec<Place> = legs.iter().map(|&l| Place::Left(l)).collect();
        t.join(el, &places, &self.mult)
    }

    pub fn rmul(&self, t: &Tensor, el: &Tensor, legs: &[usize]) -> Tensor {
        let places: Vec<Place> = legs.iter().map(|&l| Place::Right(l)).collect();
        t.join(el, &places, &self.mult)
    }

    /// Leg `src` multiplied into leg `dst` on the right (`dst · src`), removing `src`.
    pub fn merge_right(&self, t: &Tensor, src: usize, dst: usize) -> Tensor {
        t.merge_legs(src, dst, false, &self.mult)
    }

    /// Leg `src` multiplied into leg `dst` on the left (`src · dst`), removing `src`.
    pub fn merge_left(&self, t: &Tensor, src: usize, dst: usize) -> Tensor {
        t.merge_legs(src, dst, true, &self.mult)
    }

    /// Apply Δ to leg `leg`; its two outputs occupy `leg` and `leg + 1`.
    pub fn delta_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        t.map_leg(leg, &self.delta)
    }

    pub fn counit_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        t.map_leg(leg, &self.counit)
    }

    pub fn delta_of(&self, h: &Tensor) -> Tensor {
        self.delta_leg(h, 0)
    }

    pub fn delta_op_of(&self, h: &Tensor) -> Tensor {
        self.delta_of(h).permute(&[1, 0]).expect("swap")
    }

    pub fn eps(&self, h: &Tensor) -> Scalar {
        self.counit_leg(h, 0).scalar_value()
    }

    pub fn eps_basis(&self, i: usize) -> Scalar {
        self.counit.column_at(i).scalar_value()
    }

    /// `1 ⊗ … ⊗ 1` with `k` legs.
    pub fn ones(&self, k: usize) -> Tensor {
        (0..k).fold(Tensor::scalar(Scalar::one()), |acc, _| acc.outer(&self.unit))
    }

    pub fn product_basis(&self, a: usize, b: usize) -> &Tensor {
        self.mult.product(a, b)
    }
}

#[derive(Debug)]
pub struct QuasiHopfAlgebra {
    pub base: QuasiBialgebra,
    pub antipode: LinearMap,
    pub alpha: Tensor,
    pub beta: Tensor,
    antipode_inv: OnceLock<Option<LinearMap>>,
}

impl Clone for QuasiHopfAlgebra {
    fn clone(&self) -> Self {
        QuasiHopfAlgebra {
            base: self.base.clone(),
            antipode: self.antipode.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            antipode_inv: OnceLock::new(),
        }
    }
}

impl std::ops::Deref for QuasiHopfAlgebra {
    type Target = QuasiBialgebra;
    fn deref(&self) -> &QuasiBialgebra {
        &self.base
    }
}

impl QuasiHopfAlgebra {
    pub fn new(base: QuasiBialgebra, antipode: LinearMap, alpha: Tensor, beta: Tensor) -> Result<Self, StructureError> {
        let n = base.dim();
        if antipode.domain() != [n] || antipode.codomain() != [n] {
            return Err(StructureError::Shape("antipode"));
        }
        if alpha.dims() != [n] || beta.dims() != [n] {
            return Err(StructureError::Shape("alpha/beta"));
        }
        Ok(QuasiHopfAlgebra {
            base,
            antipode,
            alpha,
            beta,
            antipode_inv: OnceLock::new(),
        })
    }

    pub fn s_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        t.map_leg(leg, &self.antipode)
    }

    pub fn antipode_inverse(&self) -> Option<&LinearMap> {
        self.antipode_inv.get_or_init(|| self.antipode.inverse()).as_ref()
    }

    pub fn s_inv_leg(&self, t: &Tensor, leg: usize) -> Result<Tensor, StructureError> {
        let inv = self.antipode_inverse().ok_or(StructureError::NotInvertible("antipode"))?;
        Ok(t.map_leg(leg, inv))
    }

    pub fn s_of(&self, h: &Tensor) -> Tensor {
        self.s_leg(h, 0)
    }
}

#[derive(Debug, Clone)]
pub struct QuasiTriangular {
    pub qh: QuasiHopfAlgebra,
    pub r: Tensor,
    pub r_inv: Tensor,
}

impl std::ops::Deref for QuasiTriangular {
    type Target = QuasiHopfAlgebra;
    fn deref(&self) -> &QuasiHopfAlgebra {
        &self.qh
    }
}

impl QuasiTriangular {
    /// Attach `R`, computing `R⁻¹` by solving `R · X = 1 ⊗ 1`.
    pub fn new(qh: QuasiHopfAlgebra, r: Tensor) -> Result<Self, StructureError> {
        let n = qh.dim();
        if r.dims() != [n, n] {
            return Err(StructureError::Shape("R-matrix"));
        }
        let r_inv = r_inverse_by_solve(&qh.base, &r).ok_or(StructureError::NotInvertible("R-matrix"))?;
        Ok(QuasiTriangular { qh, r, r_inv })
    }

    pub fn with_inverse(qh: QuasiHopfAlgebra, r: Tensor, r_inv: Tensor) -> Result<Self, StructureError> {
        let n = qh.dim();
        if r.dims() != [n, n] || r_inv.dims() != [n, n] {
            return Err(StructureError::Shape("R-matrix"));
        }
        Ok(QuasiTriangular { qh, r, r_inv })
    }
}

/// Left multiplication by a two-leg element as a map on `H ⊗ H`.
pub fn left_multiplication2(a: &QuasiBialgebra, r: &Tensor) -> LinearMap {
    let n = a.dim();
    let mut builders: Vec<TensorBuilder> = (0..n * n).map(|_| TensorBuilder::new(&[n, n])).collect();
    for (idx, c) in r.terms() {
        for &i in a.mult.right_compat(idx[0]) {
            let p = a.product_basis(idx[0], i as usize);
            for &j in a.mult.right_compat(idx[1]) {
                let q = a.product_basis(idx[1], j as usize);
                let col = &mut builders[i as usize * n + j as usize];
                for (pk, pc) in p.raw_entries() {
                    for (qk, qc) in q.raw_entries() {
                        col.add(&[*pk as usize, *qk as usize], &(&(c * pc) * qc));
                    }
                }
            }
        }
    }
    LinearMap::from_columns(&[n, n], &[n, n], builders.into_iter().map(TensorBuilder::finish).collect()).expect("square map")
}

/// `R⁻¹` as the solution of `R · X = 1 ⊗ 1` (the matrix-inverse route).
pub fn r_inverse_by_solve(a: &QuasiBialgebra, r: &Tensor) -> Option<Tensor> {
    left_multiplication2(a, r).solve(&a.ones(2))
}

/// The closed formula `R⁻¹ = X¹βS(Y²R⁽¹⁾x¹X²)αY³x³X³₂ ⊗ Y¹R⁽²⁾x²X³₁`.
pub fn r_inverse_formula(h: &QuasiTriangular) -> Tensor {
    // Legs: [X¹, X², X³₁, X³₂].
    let t = h.delta_leg(&h.phi, 2);
    // [X¹, x¹X², x²X³₁, x³X³₂].
    let t = h.lmul(&t, &h.phi_inv, &[1, 2, 3]);
    // [X¹, R⁽¹⁾x¹X², R⁽²⁾x²X³₁, x³X³₂].
    let t = h.lmul(&t, &h.r, &[1, 2]);
    // [X¹, Y²R⁽¹⁾x¹X², Y¹R⁽²⁾x²X³₁, Y³x³X³₂].
    let t = h.lmul(&t, &h.phi, &[2, 1, 3]);
    let t = h.s_leg(&t, 1);
    let t = h.rmul(&t, &h.beta, &[0]);
    let t = h.merge_right(&t, 1, 0);
    // [X¹βS(..), Y¹R⁽²⁾x²X³₁, Y³x³X³₂].
    let t = h.rmul(&t, &h.alpha, &[0]);
    h.merge_right(&t, 2, 0)
}

/// Group-like label for a basis tuple.
fn at_label(a: &QuasiBialgebra) -> impl Fn(&[usize]) -> String + '_ {
    move |t: &[usize]| a.labels(t)
}

fn basis_product(a: &QuasiBialgebra, x: &Tensor, j: usize) -> Tensor {
    let n = a.dim();
    let mut b = TensorBuilder::new(&[n]);
    for (k, c) in x.raw_entries() {
        b.add_tensor(a.product_basis(*k as usize, j), c);
    }
    b.finish()
}

fn product_basis_left(a: &QuasiBialgebra, i: usize, x: &Tensor) -> Tensor {
    let n = a.dim();
    let mut b = TensorBuilder::new(&[n]);
    for (k, c) in x.raw_entries() {
        b.add_tensor(a.product_basis(i, *k as usize), c);
    }
    b.finish()
}

pub fn verify_quasibialgebra(a: &QuasiBialgebra, opts: &VerifyOptions) -> Report {
    let n = a.dim();
    let mut report = Report::new(format!("quasi-bialgebra {}", a.name));
    let label = at_label(a);
    let (singles, s1) = opts.tuples(n, 1);
    let (pairs, s2) = opts.tuples(n, 2);
    let (triples, s3) = opts.tuples(n, 3);

    report.push(run_check("associativity", "triples", &triples, s3, &label, |t| {
        let lhs = basis_product(a, a.product_basis(t[0], t[1]), t[2]);
        let rhs = product_basis_left(a, t[0], a.product_basis(t[1], t[2]));
        (lhs, rhs)
    }));
    let mut unit = run_check("unit", "elements", &singles, s1, &label, |t| {
        (a.mul(&a.unit, &a.basis(t[0])), a.basis(t[0]))
    });
    unit.absorb(run_check("unit", "elements", &singles, s1, &label, |t| {
        (a.mul(&a.basis(t[0]), &a.unit), a.basis(t[0]))
    }));
    report.push(unit);
    report.push(run_check("coproduct_multiplicative", "pairs", &pairs, s2, &label, |t| {
        let lhs = a.delta_of(a.product_basis(t[0], t[1]));
        let rhs = a.mul_legwise(&a.delta_of(&a.basis(t[0])), &a.delta_of(&a.basis(t[1])));
        (lhs, rhs)
    }));
    report.push(single_check("coproduct_unital", &a.delta_of(&a.unit), &a.ones(2)));
    report.push(run_check("counit_multiplicative", "pairs", &pairs, s2, &label, |t| {
        let lhs = Tensor::scalar(a.eps(a.product_basis(t[0], t[1])));
        let rhs = Tensor::scalar(a.eps_basis(t[0]) * a.eps_basis(t[1]));
        (lhs, rhs)
    }));
    report.push(single_check(
        "counit_unital",
        &Tensor::scalar(a.eps(&a.unit)),
        &Tensor::scalar(Scalar::one()),
    ));
    let mut counit = run_check("counit_axiom", "elements", &singles, s1, &label, |t| {
        (a.counit_leg(&a.delta_of(&a.basis(t[0])), 0), a.basis(t[0]))
    });
    counit.absorb(run_check("counit_axiom", "elements", &singles, s1, &label, |t| {
        (a.counit_leg(&a.delta_of(&a.basis(t[0])), 1), a.basis(t[0]))
    }));
    report.push(counit);
    report.push(run_check("quasi_coassociativity", "elements", &singles, s1, &label, |t| {
        let d = a.delta_of(&a.basis(t[0]));
        let lhs = a.delta_leg(&d, 1);
        let rhs = a.rmul(&a.lmul(&a.delta_leg(&d, 0), &a.phi, &[0, 1, 2]), &a.phi_inv, &[0, 1, 2]);
        (lhs, rhs)
    }));
    report.push(single_check("pentagon", &pentagon_lhs(a), &pentagon_rhs(a)));
    let mid = a.counit_leg(&a.phi, 1);
    report.push(single_check("associator_counital", &mid, &a.ones(2)));
    let one3 = a.ones(3);
    let mut inv = single_check("associator_invertible", &a.mul_legwise(&a.phi, &a.phi_inv), &one3);
    inv.absorb(single_check("associator_invertible", &a.mul_legwise(&a.phi_inv, &a.phi), &one3));
    report.push(inv);
    report
}

/// `(1⊗φ)(id⊗Δ⊗id)(φ)(φ⊗1)`.
fn pentagon_lhs(a: &QuasiBialgebra) -> Tensor {
    let t = a.delta_leg(&a.phi, 1);
    let t = a.lmul(&t, &a.phi, &[1, 2, 3]);
    a.rmul(&t, &a.phi, &[0, 1, 2])
}

/// `(id⊗id⊗Δ)(φ)(Δ⊗id⊗id)(φ)`.
fn pentagon_rhs(a: &QuasiBialgebra) -> Tensor {
    let left = a.delta_leg(&a.phi, 2);
    let right = a.delta_leg(&a.phi, 0);
    a.mul_legwise(&left, &right)
}

pub fn verify_antipode(h: &QuasiHopfAlgebra, opts: &VerifyOptions) -> Report {
    let n = h.dim();
    let mut report = Report::new(format!("antipode of {}", h.name));
    let label = at_label(&h.base);
    let (singles, s1) = opts.tuples(n, 1);
    let (pairs, s2) = opts.tuples(n, 2);
    report.push(run_check("antipode_alpha", "elements", &singles, s1, &label, |t| {
        // S(h₁)αh₂
        let d = h.s_leg(&h.delta_of(&h.basis(t[0])), 0);
        let d = h.rmul(&d, &h.alpha, &[0]);
        (h.merge_right(&d, 1, 0), h.alpha.scale(&h.eps_basis(t[0])))
    }));
    report.push(run_check("antipode_beta", "elements", &singles, s1, &label, |t| {
        // h₁βS(h₂)
        let d = h.s_leg(&h.delta_of(&h.basis(t[0])), 1);
        let d = h.rmul(&d, &h.beta, &[0]);
        (h.merge_right(&d, 1, 0), h.beta.scale(&h.eps_basis(t[0])))
    }));
    // X¹βS(X²)αX³ = 1
    let t = h.s_leg(&h.phi, 1);
    let t = h.rmul(&t, &h.beta, &[0]);
    let t = h.merge_right(&t, 1, 0);
    let t = h.rmul(&t, &h.alpha, &[0]);
    report.push(single_check("associator_beta_alpha", &h.merge_right(&t, 1, 0), &h.unit));
    // S(x¹)αx²βS(x³) = 1
    let t = h.s_leg(&h.s_leg(&h.phi_inv, 0), 2);
    let t = h.rmul(&t, &h.alpha, &[0]);
    let t = h.merge_right(&t, 1, 0);
    let t = h.rmul(&t, &h.beta, &[0]);
    report.push(single_check("inverse_associator_alpha_beta", &h.merge_right(&t, 1, 0), &h.unit));
    let mut anti = run_check("antipode_antimultiplicative", "pairs", &pairs, s2, &label, |t| {
        let lhs = h.s_of(h.product_basis(t[0], t[1]));
        let rhs = h.mul(&h.s_of(&h.basis(t[1])), &h.s_of(&h.basis(t[0])));
        (lhs, rhs)
    });
    anti.absorb(single_check("antipode_antimultiplicative", &h.s_of(&h.unit), &h.unit));
    report.push(anti);
    let mut bij = Check::new("antipode_bijective", "identity");
    bij.record(h.antipode_inverse().is_some(), || Witness::new("-", "singular", "invertible"));
    report.push(bij);
    let one = Tensor::scalar(Scalar::one());
    let mut norm = single_check("counit_alpha_beta", &Tensor::scalar(h.eps(&h.alpha)), &one);
    norm.absorb(single_check("counit_alpha_beta", &Tensor::scalar(h.eps(&h.beta)), &one));
    report.push(norm);
    report
}

pub fn verify_quasihopf(h: &QuasiHopfAlgebra, opts: &VerifyOptions) -> Report {
    let mut report = verify_quasibialgebra(&h.base, opts);
    report.subject = format!("quasi-Hopf algebra {}", h.name);
    report.extend(verify_antipode(h, opts));
    report
}

/// `φ₃₁₂R₁₃φ⁻¹₁₃₂R₂₃φ`.
pub fn delta_r_left_rhs(h: &QuasiTriangular) -> Tensor {
    let t = h.lmul(&h.phi, &h.r, &[1, 2]);
    let t = h.lmul(&t, &h.phi_inv, &[0, 2, 1]);
    let t = h.lmul(&t, &h.r, &[0, 2]);
    h.lmul(&t, &h.phi, &[2, 0, 1])
}

/// `φ⁻¹₂₃₁R₁₃φ₂₁₃R₁₂φ⁻¹`.
pub fn delta_r_right_rhs(h: &QuasiTriangular) -> Tensor {
    let t = h.lmul(&h.phi_inv, &h.r, &[0, 1]);
    let t = h.lmul(&t, &h.phi, &[1, 0, 2]);
    let t = h.lmul(&t, &h.r, &[0, 2]);
    h.lmul(&t, &h.phi_inv, &[1, 2, 0])
}

pub fn quasi_yang_baxter_sides(h: &QuasiTriangular) -> (Tensor, Tensor) {
    // R₁₂φ₃₁₂R₁₃φ⁻¹₁₃₂R₂₃φ
    let lhs = h.lmul(&delta_r_left_rhs(h), &h.r, &[0, 1]);
    // φ₃₂₁R₂₃φ⁻¹₂₃₁R₁₃φ₂₁₃R₁₂
    let t = h.phi.permute(&[1, 0, 2]).expect("perm");
    let t = h.rmul(&t, &h.r, &[0, 1]);
    let t = h.lmul(&t, &h.r, &[0, 2]);
    let t = h.lmul(&t, &h.phi_inv, &[1, 2, 0]);
    let t = h.lmul(&t, &h.r, &[1, 2]);
    let rhs = h.lmul(&t, &h.phi, &[2, 1, 0]);
    (lhs, rhs)
}

pub fn verify_quasitriangular(h: &QuasiTriangular, opts: &VerifyOptions) -> Report {
    let n = h.dim();
    let mut report = verify_quasihopf(&h.qh, opts);
    report.subject = format!("quasitriangular quasi-Hopf algebra {}", h.name);
    let one2 = h.ones(2);
    let mut inv = single_check("r_invertible", &h.mul_legwise(&h.r, &h.r_inv), &one2);
    inv.absorb(single_check("r_invertible", &h.mul_legwise(&h.r_inv, &h.r), &one2));
    report.push(inv);
    report.push(single_check("coproduct_r_left", &h.delta_leg(&h.r, 0), &delta_r_left_rhs(h)));
    report.push(single_check("coproduct_r_right", &h.delta_leg(&h.r, 1), &delta_r_right_rhs(h)));
    let label = at_label(&h.base);
    let (singles, s1) = opts.tuples(n, 1);
    report.push(run_check("quasi_cocommutative", "elements", &singles, s1, &label, |t| {
        let d = h.delta_of(&h.basis(t[0]));
        let rhs = h.rmul(&h.lmul(&d, &h.r, &[0, 1]), &h.r_inv, &[0, 1]);
        (h.delta_op_of(&h.basis(t[0])), rhs)
    }));
    let mut cou = single_check("r_counital", &h.counit_leg(&h.r, 0), &h.unit);
    cou.absorb(single_check("r_counital", &h.counit_leg(&h.r, 1), &h.unit));
    report.push(cou);
    let (l, r) = quasi_yang_baxter_sides(h);
    report.push(single_check("quasi_yang_baxter", &l, &r));
    report
}

/// The elements `γ, δ, f, f⁻¹, q, p` built from the structure.
#[derive(Debug, Clone)]
pub struct DerivedElements {
    pub gamma: Tensor,
    pub delta: Tensor,
    pub f: Tensor,
    pub f_inv: Tensor,
    pub q: Tensor,
    pub p: Tensor,
}

/// `S ⊗ S` after swapping, applied to legs `(i, i+1)`: turns `a ⊗ b` into `S(b) ⊗ S(a)`.
fn s_s_op(h: &QuasiHopfAlgebra, t: &Tensor, i: usize) -> Tensor {
    let t = h.s_leg(&h.s_leg(t, i), i + 1);
    let mut perm: Vec<usize> = (0..t.legs()).collect();
    perm.swap(i, i + 1);
    t.permute(&perm).expect("swap")
}

pub fn derive_elements(h: &QuasiHopfAlgebra) -> Result<DerivedElements, StructureError> {
    // A = (φ⊗1)(Δ⊗id⊗id)(φ⁻¹)
    let a4 = h.lmul(&h.delta_leg(&h.phi_inv, 0), &h.phi, &[0, 1, 2]);
    // B = (Δ⊗id⊗id)(φ)(φ⁻¹⊗1)
    let b4 = h.rmul(&h.delta_leg(&h.phi, 0), &h.phi_inv, &[0, 1, 2]);

    // γ = S(A²)αA³ ⊗ S(A¹)αA⁴
    let t = h.s_leg(&h.s_leg(&a4, 0), 1);
    let t = h.rmul(&h.rmul(&t, &h.alpha, &[0]), &h.alpha, &[1]);
    let t = h.merge_right(&t, 2, 1);
    let t = h.merge_right(&t, 2, 0);
    let gamma = t.permute(&[1, 0]).expect("swap");

    // δ = B¹βS(B⁴) ⊗ B²βS(B³)
    let t = h.s_leg(&h.s_leg(&b4, 2), 3);
    let t = h.rmul(&h.rmul(&t, &h.beta, &[0]), &h.beta, &[1]);
    let t = h.merge_right(&t, 3, 0);
    let delta = h.merge_right(&t, 2, 1);

    // f = (S⊗S)(Δ^op(x¹)) γ Δ(x²βS(x³))
    let t = h.s_leg(&h.phi_inv, 2);
    let t = h.rmul(&t, &h.beta, &[1]);
    let t = h.merge_right(&t, 2, 1);
    let t = h.delta_leg(&h.delta_leg(&t, 1), 0);
    let t = s_s_op(h, &t, 0);
    let t = h.rmul(&t, &gamma, &[0, 1]);
    let t = h.merge_right(&t, 2, 0);
    let f = h.merge_right(&t, 2, 1);

    // f⁻¹ = Δ(S(x¹)αx²) δ (S⊗S)(Δ^op(x³))
    let t = h.s_leg(&h.phi_inv, 0);
    let t = h.rmul(&t, &h.alpha, &[0]);
    let t = h.merge_right(&t, 1, 0);
    let t = h.delta_leg(&h.delta_leg(&t, 1), 0);
    let t = s_s_op(h, &t, 2);
    let t = h.rmul(&t, &delta, &[0, 1]);
    let t = h.merge_right(&t, 2, 0);
    let f_inv = h.merge_right(&t, 2, 1);

    // q = X¹ ⊗ S⁻¹(αX³)X²
    let t = h.lmul(&h.phi, &h.alpha, &[2]);
    let t = h.s_inv_leg(&t, 2)?;
    let q = h.merge_left(&t, 2, 1);

    // p = x¹ ⊗ x²βS(x³)
    let t = h.s_leg(&h.phi_inv, 2);
    let t = h.rmul(&t, &h.beta, &[1]);
    let p = h.merge_right(&t, 2, 1);

    Ok(DerivedElements {
        gamma,
        delta,
        f,
        f_inv,
        q,
        p,
    })
}

pub fn verify_derived(h: &QuasiHopfAlgebra, d: &DerivedElements, opts: &VerifyOptions) -> Report {
    let n = h.dim();
    let mut report = Report::new(format!("derived elements of {}", h.name));
    let one2 = h.ones(2);
    let mut fi = single_check("f_inverse", &h.mul_legwise(&d.f, &d.f_inv), &one2);
    fi.absorb(single_check("f_inverse", &h.mul_legwise(&d.f_inv, &d.f), &one2));
    report.push(fi);
    report.push(single_check("f_delta_alpha", &h.mul_legwise(&d.f, &h.delta_of(&h.alpha)), &d.gamma));
    report.push(single_check(
        "delta_beta_f_inverse",
        &h.mul_legwise(&h.delta_of(&h.beta), &d.f_inv),
        &d.delta,
    ));
    let label = at_label(&h.base);
    let (singles, s1) = opts.tuples(n, 1);
    report.push(run_check("antipode_twist", "elements", &singles, s1, &label, |t| {
        let x = h.basis(t[0]);
        let lhs = h.mul_legwise(&h.mul_legwise(&d.f, &h.delta_of(&h.s_of(&x))), &d.f_inv);
        let rhs = s_s_op(h, &h.delta_of(&x), 0);
        (lhs, rhs)
    }));
    // Δ(X¹) δ (S⊗S)(Δ^op(X²)) γ Δ(X³) = 1
    let t = h.delta_leg(&h.delta_leg(&h.delta_leg(&h.phi, 2), 1), 0);
    let t = s_s_op(h, &t, 2);
    let t = h.rmul(&t, &d.delta, &[0, 1]);
    let t = h.merge_right(&h.merge_right(&t, 2, 0), 2, 1);
    let t = h.rmul(&t, &d.gamma, &[0, 1]);
    let t = h.merge_right(&h.merge_right(&t, 2, 0), 2, 1);
    report.push(single_check("associator_delta_gamma", &t, &one2));
    // (S⊗S)(Δ^op(x¹)) γ Δ(x²) δ (S⊗S)(Δ^op(x³)) = 1
    let t = h.delta_leg(&h.delta_leg(&h.delta_leg(&h.phi_inv, 2), 1), 0);
    let t = s_s_op(h, &s_s_op(h, &t, 0), 4);
    let t = h.rmul(&t, &d.gamma, &[0, 1]);
    let t = h.merge_right(&h.merge_right(&t, 2, 0), 2, 1);
    let t = h.rmul(&t, &d.delta, &[0, 1]);
    let t = h.merge_right(&h.merge_right(&t, 2, 0), 2, 1);
    report.push(single_check("inverse_associator_gamma_delta", &t, &one2));
    report
}

pub fn verify_qp(h: &QuasiHopfAlgebra, d: &DerivedElements, opts: &VerifyOptions) -> Report {
    let n = h.dim();
    let mut report = Report::new(format!("q and p elements of {}", h.name));
    let label = at_label(&h.base);
    let (singles, s1) = opts.tuples(n, 1);
    let inv = match h.antipode_inverse() {
        Some(m) => m.clone(),
        None => {
            let mut c = Check::new("antipode_bijective", "identity");
            c.record(false, || Witness::new("-", "singular", "invertible"));
            report.push(c);
            return report;
        }
    };
    report.push(run_check("p_intertwines", "elements", &singles, s1, &label, |t| {
        // Δ(h₁) p (1⊗S(h₂)) = p (h⊗1)
        let x = h.basis(t[0]);
        let u = h.delta_leg(&h.delta_of(&x), 0);
        let u = h.rmul(&u, &d.p, &[0, 1]);
        let u = h.s_leg(&u, 2);
        (h.merge_right(&u, 2, 1), h.rmul(&d.p, &x, &[0]))
    }));
    report.push(run_check("q_intertwines", "elements", &singles, s1, &label, |t| {
        // (1⊗S⁻¹(h₂)) q Δ(h₁) = (h⊗1) q
        let x = h.basis(t[0]);
        let u = h.delta_leg(&h.delta_of(&x), 0);
        let u = h.lmul(&u, &d.q, &[0, 1]);
        let u = u.map_leg(2, &inv);
        (h.merge_left(&u, 2, 1), h.lmul(&d.q, &x, &[0]))
    }));
    let one2 = h.ones(2);
    // Δ(q¹) p (1⊗S(q²)) = 1⊗1
    let u = h.delta_leg(&d.q, 0);
    let u = h.rmul(&u, &d.p, &[0, 1]);
    let u = h.s_leg(&u, 2);
    report.push(single_check("q_p_cancel", &h.merge_right(&u, 2, 1), &one2));
    // (1⊗S⁻¹(p²)) q Δ(p¹) = 1⊗1
    let u = h.delta_leg(&d.p, 0);
    let u = h.lmul(&u, &d.q, &[0, 1]);
    let u = u.map_leg(2, &inv);
    report.push(single_check("p_q_cancel", &h.merge_left(&u, 2, 1), &one2));
    report
}

/// Serialized structure constants.
pub fn quasihopf_to_json(h: &QuasiHopfAlgebra, r: Option<(&Tensor, &Tensor)>) -> Value {
    let mut v = json!({
        "name": h.name,
        "labels": h.space.labels(),
        "mult": h.mult.to_json(),
        "unit": h.unit.to_json(),
        "delta": h.delta.to_json(),
        "counit": h.counit.to_json(),
        "antipode": h.antipode.to_json(),
        "alpha": h.alpha.to_json(),
        "beta": h.beta.to_json(),
        "phi": h.phi.to_json(),
        "phi_inv": h.phi_inv.to_json(),
    });
    if let Some((r, ri)) = r {
        v["r"] = r.to_json();
        v["r_inv"] = ri.to_json();
    }
    v
}

pub fn quasihopf_from_json(v: &Value) -> Result<QuasiHopfAlgebra, StructureError> {
    let field = |k: &str| v.get(k).ok_or_else(|| StructureError::Parse(format!("missing {k}")));
    let labels: Vec<String> = serde_json::from_value(field("labels")?.clone()).map_err(|e| StructureError::Parse(e.to_string()))?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("H").to_string();
    let base = QuasiBialgebra::new(
        name,
        BasedSpace::new(labels),
        LinearMap::from_json(field("mult")?)?,
        Tensor::from_json(field("unit")?)?,
        LinearMap::from_json(field("delta")?)?,
        LinearMap::from_json(field("counit")?)?,
        Tensor::from_json(field("phi")?)?,
        Tensor::from_json(field("phi_inv")?)?,
    )?;
    QuasiHopfAlgebra::new(
        base,
        LinearMap::from_json(field("antipode")?)?,
        Tensor::from_json(field("alpha")?)?,
        Tensor::from_json(field("beta")?)?,
    )
}

pub fn quasitriangular_to_json(h: &QuasiTriangular) -> Value {
    quasihopf_to_json(&h.qh, Some((&h.r, &h.r_inv)))
}

pub fn quasitriangular_from_json(v: &Value) -> Result<QuasiTriangular, StructureError> {
    let qh = quasihopf_from_json(v)?;
    let r = Tensor::from_json(v.get("r").ok_or_else(|| StructureError::Parse("missing r".into()))?)?;
    match v.get("r_inv") {
        Some(ri) => QuasiTriangular::with_inverse(qh, r, Tensor::from_json(ri)?),
        None => QuasiTriangular::new(qh, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, twisted_double};
    use crate::groups::{cyclic_cocycle, FiniteGroup};
    use std::sync::Arc;

    fn dz(n: u32) -> QuasiTriangular {
        twisted_double(&cyclic_cocycle(n, 1).unwrap()).unwrap().algebra
    }

    #[test]
    fn ordinary_group_algebra_has_trivial_derived_elements() {
        let h = group_algebra(&Arc::new(FiniteGroup::cyclic(2).unwrap())).unwrap();
        let report = verify_quasitriangular(&h, &VerifyOptions::default());
        assert!(report.passed(), "{report}");
        let d = derive_elements(&h).unwrap();
        let one2 = h.ones(2);
        for t in [&d.f, &d.f_inv, &d.q, &d.p, &d.gamma, &d.delta] {
            assert_eq!(*t, one2);
        }
    }

    #[test]
    fn twisted_double_derived_elements() {
        let h = dz(2);
        let opts = VerifyOptions::default();
        let d = derive_elements(&h).unwrap();
        assert!(verify_derived(&h, &d, &opts).passed());
        assert!(verify_qp(&h, &d, &opts).passed());
        assert_eq!(r_inverse_formula(&h), h.r_inv);
        assert_ne!(h.beta, h.unit);
    }

    #[test]
    fn json_round_trip_keeps_every_map() {
        let h = dz(3);
        let back = quasitriangular_from_json(&quasitriangular_to_json(&h)).unwrap();
        assert_eq!(back.mult, h.mult);
        assert_eq!(back.delta, h.delta);
        assert_eq!(back.antipode, h.antipode);
        assert_eq!(
            (back.phi.clone(), back.r.clone(), back.beta.clone()),
            (h.phi.clone(), h.r.clone(), h.beta.clone())
        );
        assert!(quasihopf_from_json(&json!({"labels": ["a"]})).is_err());
    }

    #[test]
    fn sampled_reports_are_seeded() {
        let h = dz(3);
        let opts = VerifyOptions {
            exhaustive_limit: 4,
            samples: 30,
            seed: 7,
        };
        let a = verify_quasihopf(&h, &opts);
        assert!(a.passed());
        assert!(a.check("associativity").is_some_and(|c| !c.exhaustive && c.checked == 30));
        assert_eq!(a, verify_quasihopf(&h, &opts));
    }

    #[test]
    fn associator_without_matching_inverse_is_caught() {
        let mut h = dz(2);
        let (idx, c) = h.phi.terms().find(|(_, c)| !c.is_one()).map(|(i, c)| (i, c.clone())).unwrap();
        h.qh.base.phi = h.phi.sub(&Tensor::monomial(h.phi.dims(), &idx, c.clone()).scale(&Scalar::from_int(2)));
        let report = verify_quasitriangular(&h, &VerifyOptions::default());
        let inv = report.check("associator_invertible").unwrap();
        assert!(!inv.passed() && !inv.witnesses.is_empty());
    }
}
