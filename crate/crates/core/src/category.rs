//! The braided monoidal category of left modules over a quasi-Hopf algebra.
//!
//! Objects of composite type are never flattened by hand: an element of
//! `((U ⊗ V) ⊗ W)` is a tensor with one leg per leaf module, and the bracketing
//! only matters when an element of `H` acts, which is described by a
//! [`Shape`] tree telling how often to apply Δ.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quasihopf::{run_check, QuasiHopfAlgebra, QuasiTriangular, StructureError, VerifyOptions};
use crate::report::{Check, Report};
use crate::tensor::{BasedSpace, LinearMap, Place, Tensor, TensorBuilder};

/// A left `H`-module given by its action `H ⊗ V → V`.
#[derive(Debug, Clone)]
pub struct LeftModule {
    pub name: String,
    pub space: BasedSpace,
    pub action: LinearMap,
}

impl LeftModule {
    pub fn new(name: impl Into<String>, space: BasedSpace, action: LinearMap, host_dim: usize) -> Result<Self, StructureError> {
        let d = space.dim();
        if action.domain() != [host_dim, d] || action.codomain() != [d] {
            return Err(StructureError::Shape("module action"));
        }
        Ok(LeftModule {
            name: name.into(),
            space,
            action,
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn host_dim(&self) -> usize {
        self.action.domain()[0]
    }

    pub fn basis(&self, i: usize) -> Tensor {
        Tensor::basis(&[self.dim()], &[i])
    }

    /// `x ▷ v` for basis elements.
    pub fn act_basis(&self, x: usize, v: usize) -> &Tensor {
        self.action.product(x, v)
    }

    /// `h ▷ v` for one-leg tensors.
    pub fn act(&self, h: &Tensor, v: &Tensor) -> Tensor {
        v.join(h, &[Place::Left(0)], &self.action)
    }
}

fn host_guard(h: &QuasiHopfAlgebra, m: &LeftModule) {
    assert_eq!(m.host_dim(), h.dim(), "module {} is not over {}", m.name, h.name);
}

/// `k` with `h ▷ 1 = ε(h)`.
pub fn trivial_module(h: &QuasiHopfAlgebra) -> LeftModule {
    let n = h.dim();
    let action = LinearMap::from_fn(&[n, 1], &[1], |i| Tensor::scalar(h.eps_basis(i[0])).reshape(&[1])).expect("trivial action");
    LeftModule::new("1", BasedSpace::new(vec!["1".into()]), action, n).expect("trivial module")
}

/// `H` acting on itself by left multiplication (`B_L`).
pub fn regular_module(h: &QuasiHopfAlgebra) -> LeftModule {
    LeftModule::new("B_L", h.space.clone(), h.mult.clone(), h.dim()).expect("regular module")
}

/// `H` with the left adjoint action `x ▷ b = x₁ b S(x₂)` (the object `B`).
pub fn adjoint_module(h: &QuasiHopfAlgebra) -> LeftModule {
    let n = h.dim();
    let split: Vec<Tensor> = (0..n).map(|x| h.s_leg(&h.delta_of(&h.basis(x)), 1)).collect();
    let action = LinearMap::from_fn(&[n, n], &[n], |i| {
        let t = h.rmul(&split[i[0]], &h.basis(i[1]), &[0]);
        h.merge_right(&t, 1, 0)
    })
    .expect("adjoint action");
    LeftModule::new("B", h.space.clone(), action, n).expect("adjoint module")
}

/// How an element of `H` reaches a block of consecutive leaf legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Pair(Box<Shape>, Box<Shape>),
}

impl Shape {
    pub fn pair(a: Shape, b: Shape) -> Shape {
        Shape::Pair(Box::new(a), Box::new(b))
    }

    /// `((…(Leaf ⊗ Leaf) ⊗ …) ⊗ Leaf)` with `k` leaves.
    pub fn left_comb(k: usize) -> Shape {
        (1..k).fold(Shape::Leaf, |acc, _| Shape::pair(acc, Shape::Leaf))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Pair(a, b) => a.leaves() + b.leaves(),
        }
    }
}

/// Expand leg `leg` of `t` by iterated Δ according to `shape`.
pub fn expand_leg(h: &QuasiHopfAlgebra, t: &Tensor, leg: usize, shape: &Shape) -> Tensor {
    match shape {
        Shape::Leaf => t.clone(),
        Shape::Pair(a, b) => {
            let t = h.delta_leg(t, leg);
            let t = expand_leg(h, &t, leg + 1, b);
            expand_leg(h, &t, leg, a)
        }
    }
}

/// Act with a `k`-leg element `el` of `H^{⊗k}` on `t`, whose legs are the
/// leaves of `parts` in order; leg `i` of `el` acts on part `i`.
pub fn act_parts(h: &QuasiHopfAlgebra, el: &Tensor, t: &Tensor, leaves: &[&LeftModule], parts: &[Shape]) -> Tensor {
    assert_eq!(el.legs(), parts.len(), "one part per leg of the acting element");
    assert_eq!(t.legs(), leaves.len(), "one module per leg");
    let mut e = el.clone();
    let mut leg = 0;
    for p in parts {
        e = expand_leg(h, &e, leg, p);
        leg += p.leaves();
    }
    assert_eq!(leg, leaves.len(), "parts must cover every leg");
    let places: Vec<Place> = (0..leg).map(Place::Left).collect();
    let prods: Vec<&LinearMap> = leaves.iter().map(|m| &m.action).collect();
    t.join_with(&e, &places, &prods)
}

/// `V ⊗ W` with `h ▷ (v⊗w) = h₁ ▷ v ⊗ h₂ ▷ w`, flattened to one leg.
pub fn module_tensor(h: &QuasiHopfAlgebra, v: &LeftModule, w: &LeftModule) -> LeftModule {
    host_guard(h, v);
    host_guard(h, w);
    let (dv, dw) = (v.dim(), w.dim());
    let n = h.dim();
    let labels = (0..dv * dw)
        .map(|k| format!("{}⊗{}", v.space.label(k / dw), w.space.label(k % dw)))
        .collect();
    let deltas: Vec<Tensor> = (0..n).map(|x| h.delta_of(&h.basis(x))).collect();
    let action = LinearMap::from_fn(&[n, dv * dw], &[dv * dw], |i| {
        let t = Tensor::basis(&[dv, dw], &[i[1] / dw, i[1] % dw]);
        t.join_with(&deltas[i[0]], &[Place::Left(0), Place::Left(1)], &[&v.action, &w.action])
            .reshape(&[dv * dw])
    })
    .expect("tensor action");
    LeftModule::new(format!("({} ⊗ {})", v.name, w.name), BasedSpace::new(labels), action, n).expect("tensor module")
}

/// `V*` with `(h ▷ f)(v) = f(S(h) ▷ v)` on the dual basis `f^a`.
pub fn dual_module(h: &QuasiHopfAlgebra, v: &LeftModule) -> LeftModule {
    host_guard(h, v);
    let (n, d) = (h.dim(), v.dim());
    let s_images: Vec<Tensor> = (0..n).map(|x| h.s_of(&h.basis(x))).collect();
    let action = LinearMap::from_fn(&[n, d], &[d], |i| {
        let mut b = TensorBuilder::new(&[d]);
        for e in 0..d {
            let c = v.act(&s_images[i[0]], &v.basis(e)).coeff(&[i[1]]);
            if !c.is_zero() {
                b.add(&[e], &c);
            }
        }
        b.finish()
    })
    .expect("dual action");
    let labels = (0..d).map(|a| format!("f^{}", v.space.label(a))).collect();
    LeftModule::new(format!("{}*", v.name), BasedSpace::new(labels), action, n).expect("dual module")
}

/// `ev(f ⊗ v) = f(α ▷ v)` as a map `V* ⊗ V → k`.
pub fn evaluation(h: &QuasiHopfAlgebra, v: &LeftModule) -> LinearMap {
    let d = v.dim();
    LinearMap::from_fn(&[d, d], &[], |i| Tensor::scalar(v.act(&h.alpha, &v.basis(i[1])).coeff(&[i[0]]))).expect("evaluation")
}

/// `coev(1) = Σ_a β ▷ e_a ⊗ f^a` in `V ⊗ V*`.
pub fn coevaluation(h: &QuasiHopfAlgebra, v: &LeftModule) -> Tensor {
    let d = v.dim();
    let mut b = TensorBuilder::new(&[d, d]);
    for a in 0..d {
        for (k, c) in v.act(&h.beta, &v.basis(a)).terms() {
            b.add(&[k[0], a], c);
        }
    }
    b.finish()
}

/// A linear map between modules that is claimed to commute with the action.
#[derive(Debug, Clone)]
pub struct ModuleMorphism {
    pub source: LeftModule,
    pub target: LeftModule,
    pub map: LinearMap,
}

/// `f(x ▷ v) = x ▷ f(v)` for basis `x` and `v` (sampled above the exhaustive limit).
pub fn check_intertwines(h: &QuasiHopfAlgebra, source: &LeftModule, target: &LeftModule, map: &LinearMap, opts: &VerifyOptions) -> Check {
    let (n, d) = (h.dim(), source.dim());
    let (tuples, sampled) = pair_tuples(n, d, opts);
    run_check(
        "module_morphism",
        "pairs",
        &tuples,
        sampled,
        |t| format!("{}, {}", h.label(t[0]), source.space.label(t[1])),
        |t| {
            let lhs = map.apply(source.act_basis(t[0], t[1])).expect("domain");
            let rhs = target.act(&h.basis(t[0]), map.column_at(t[1]));
            (lhs, rhs)
        },
    )
}

fn pair_tuples(n: usize, d: usize, opts: &VerifyOptions) -> (Vec<Vec<usize>>, bool) {
    if n * d <= opts.exhaustive_limit * opts.exhaustive_limit {
        ((0..n).flat_map(|x| (0..d).map(move |v| vec![x, v])).collect(), false)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        ((0..opts.samples).map(|_| vec![rng.gen_range(0..n), rng.gen_range(0..d)]).collect(), true)
    }
}

pub fn verify_morphism(h: &QuasiHopfAlgebra, m: &ModuleMorphism, opts: &VerifyOptions) -> Check {
    check_intertwines(h, &m.source, &m.target, &m.map, opts)
}

/// `1 ▷ v = v` and `(gh) ▷ v = g ▷ (h ▷ v)`; exhaustive when `dim H · dim V ≤ 4096`.
pub fn verify_module(h: &QuasiHopfAlgebra, m: &LeftModule, opts: &VerifyOptions) -> Report {
    host_guard(h, m);
    let (n, d) = (h.dim(), m.dim());
    let mut report = Report::new(format!("module {}", m.name));
    let mut unit = Check::new("module_unit", "elements");
    for v in 0..d {
        unit.compare(|| m.space.label(v).to_string(), &m.act(&h.unit, &m.basis(v)), &m.basis(v));
    }
    report.push(unit);
    let limit = opts.exhaustive_limit * opts.exhaustive_limit;
    let (tuples, sampled) = if n * d <= limit {
        ((0..n * n * d).map(|k| vec![k / (n * d), (k / d) % n, k % d]).collect::<Vec<_>>(), false)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6d6f64);
        (
            (0..opts.samples)
                .map(|_| vec![rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..d)])
                .collect(),
            true,
        )
    };
    report.push(run_check(
        "module_associative",
        "triples",
        &tuples,
        sampled,
        |t| format!("{}, {}, {}", h.label(t[0]), h.label(t[1]), m.space.label(t[2])),
        |t| {
            let lhs = m.act(h.product_basis(t[0], t[1]), &m.basis(t[2]));
            let rhs = m.act(&h.basis(t[0]), m.act_basis(t[1], t[2]));
            (lhs, rhs)
        },
    ));
    report
}

/// `Φ((u⊗v)⊗w) = X¹▷u ⊗ (X²▷v ⊗ X³▷w)` on leaf legs, with the given part shapes.
pub fn associator_apply(h: &QuasiHopfAlgebra, t: &Tensor, leaves: &[&LeftModule], parts: &[Shape; 3]) -> Tensor {
    act_parts(h, &h.phi, t, leaves, parts)
}

pub fn associator_inverse_apply(h: &QuasiHopfAlgebra, t: &Tensor, leaves: &[&LeftModule], parts: &[Shape; 3]) -> Tensor {
    act_parts(h, &h.phi_inv, t, leaves, parts)
}

/// `Ψ(a⊗b) = R⁽²⁾▷b ⊗ R⁽¹⁾▷a`, where the first `a.leaves()` legs form `a`.
pub fn braiding_apply(h: &QuasiTriangular, t: &Tensor, leaves: &[&LeftModule], a: &Shape, b: &Shape) -> Tensor {
    let acted = act_parts(h, &h.r, t, leaves, &[a.clone(), b.clone()]);
    let (ka, kb) = (a.leaves(), b.leaves());
    let perm: Vec<usize> = (0..ka + kb).map(|i| if i < ka { kb + i } else { i - ka }).collect();
    acted.permute(&perm).expect("block swap")
}

pub fn inverse_braiding_apply(h: &QuasiTriangular, t: &Tensor, leaves: &[&LeftModule], a: &Shape, b: &Shape) -> Tensor {
    // Ψ⁻¹(b⊗a) = R⁻⁽¹⁾▷a ⊗ R⁻⁽²⁾▷b
    let (kb, ka) = (b.leaves(), a.leaves());
    let perm: Vec<usize> = (0..ka + kb).map(|i| if i < kb { ka + i } else { i - kb }).collect();
    let swapped = t.permute(&perm).expect("block swap");
    let mut reordered: Vec<&LeftModule> = leaves[kb..].to_vec();
    reordered.extend_from_slice(&leaves[..kb]);
    act_parts(h, &h.r_inv, &swapped, &reordered, &[a.clone(), b.clone()])
}

/// The associator as a morphism of flattened modules `(U⊗V)⊗W → U⊗(V⊗W)`.
pub fn associator(h: &QuasiHopfAlgebra, u: &LeftModule, v: &LeftModule, w: &LeftModule) -> ModuleMorphism {
    let dims = [u.dim(), v.dim(), w.dim()];
    let total = dims.iter().product::<usize>();
    let leaves = [u, v, w];
    let parts = [Shape::Leaf, Shape::Leaf, Shape::Leaf];
    let map = LinearMap::from_fn(&[total], &[total], |i| {
        let t = Tensor::basis(&[total], i).reshape(&dims);
        associator_apply(h, &t, &leaves, &parts).reshape(&[total])
    })
    .expect("associator");
    let left = module_tensor(h, &module_tensor(h, u, v), w);
    let right = module_tensor(h, u, &module_tensor(h, v, w));
    ModuleMorphism {
        source: left,
        target: right,
        map,
    }
}

pub fn braiding(h: &QuasiTriangular, u: &LeftModule, v: &LeftModule) -> ModuleMorphism {
    let (du, dv) = (u.dim(), v.dim());
    let map = LinearMap::from_fn(&[du * dv], &[dv * du], |i| {
        let t = Tensor::basis(&[du, dv], &[i[0] / dv, i[0] % dv]);
        braiding_apply(h, &t, &[u, v], &Shape::Leaf, &Shape::Leaf).reshape(&[dv * du])
    })
    .expect("braiding");
    ModuleMorphism {
        source: module_tensor(h, u, v),
        target: module_tensor(h, v, u),
        map,
    }
}

fn basis_tensors(dims: &[usize]) -> impl Iterator<Item = (Vec<usize>, Tensor)> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |k| {
        let mut idx = vec![0; dims.len()];
        let mut r = k;
        for (slot, d) in idx.iter_mut().zip(dims).rev() {
            *slot = r % d;
            r /= d;
        }
        let t = Tensor::basis(dims, &idx);
        (idx, t)
    })
}

fn leaf_label(leaves: &[&LeftModule], idx: &[usize]) -> String {
    leaves.iter().zip(idx).map(|(m, &i)| m.space.label(i)).collect::<Vec<_>>().join("⊗")
}

/// `Φ_{U,V,W⊗Z} Φ_{U⊗V,W,Z} = (id⊗Φ_{V,W,Z}) Φ_{U,V⊗W,Z} (Φ_{U,V,W}⊗id)` on every basis element.
pub fn check_pentagon(h: &QuasiHopfAlgebra, mods: [&LeftModule; 4]) -> Check {
    use Shape::Leaf;
    let dims: Vec<usize> = mods.iter().map(|m| m.dim()).collect();
    let one = h.unit.clone();
    let mut c = Check::new("pentagon", "elements");
    for (idx, t) in basis_tensors(&dims) {
        let l = associator_apply(h, &t, &mods, &[Shape::pair(Leaf, Leaf), Leaf, Leaf]);
        let l = associator_apply(h, &l, &mods, &[Leaf, Leaf, Shape::pair(Leaf, Leaf)]);
        let r = act_parts(h, &h.phi.outer(&one), &t, &mods, &[Leaf, Leaf, Leaf, Leaf]);
        let r = associator_apply(h, &r, &mods, &[Leaf, Shape::pair(Leaf, Leaf), Leaf]);
        let r = act_parts(h, &one.outer(&h.phi), &r, &mods, &[Leaf, Leaf, Leaf, Leaf]);
        c.compare(|| leaf_label(&mods, &idx), &l, &r);
    }
    c
}

/// Both hexagons for the triple `(U, V, W)`.
pub fn check_hexagons(h: &QuasiTriangular, mods: [&LeftModule; 3]) -> Report {
    use Shape::Leaf;
    let [u, v, w] = mods;
    let dims = [u.dim(), v.dim(), w.dim()];
    let mut report = Report::new("hexagons");
    let mut first = Check::new("hexagon_right", "elements");
    let mut second = Check::new("hexagon_left", "elements");
    for (idx, t) in basis_tensors(&dims) {
        // Φ_{V,W,U} Ψ_{U,V⊗W} Φ_{U,V,W} = (id⊗Ψ_{U,W}) Φ_{V,U,W} (Ψ_{U,V}⊗id)
        let l = associator_apply(h, &t, &[u, v, w], &[Leaf, Leaf, Leaf]);
        let l = braiding_apply(h, &l, &[u, v, w], &Leaf, &Shape::pair(Leaf, Leaf));
        let l = associator_apply(h, &l, &[v, w, u], &[Leaf, Leaf, Leaf]);
        let r = braid_head(h, &t, u, v, w);
        let r = associator_apply(h, &r, &[v, u, w], &[Leaf, Leaf, Leaf]);
        let r = braid_tail(h, &r, v, u, w);
        first.compare(|| leaf_label(&[u, v, w], &idx), &l, &r);
        // Φ⁻¹_{W,U,V} Ψ_{U⊗V,W} Φ⁻¹_{U,V,W} = (Ψ_{U,W}⊗id) Φ⁻¹_{U,W,V} (id⊗Ψ_{V,W})
        let l = associator_inverse_apply(h, &t, &[u, v, w], &[Leaf, Leaf, Leaf]);
        let l = braiding_apply(h, &l, &[u, v, w], &Shape::pair(Leaf, Leaf), &Leaf);
        let l = associator_inverse_apply(h, &l, &[w, u, v], &[Leaf, Leaf, Leaf]);
        let r = braid_tail(h, &t, u, v, w);
        let r = associator_inverse_apply(h, &r, &[u, w, v], &[Leaf, Leaf, Leaf]);
        let r = braid_head(h, &r, u, w, v);
        second.compare(|| leaf_label(&[u, v, w], &idx), &l, &r);
    }
    report.push(first);
    report.push(second);
    report
}

/// `id ⊗ Ψ` on the last two legs of a three-leg element with leaves `(a, b, c)`.
fn braid_tail(h: &QuasiTriangular, t: &Tensor, a: &LeftModule, b: &LeftModule, c: &LeftModule) -> Tensor {
    let r = one_r(h, false);
    let acted = act_parts(h, &r, t, &[a, b, c], &[Shape::Leaf, Shape::Leaf, Shape::Leaf]);
    acted.permute(&[0, 2, 1]).expect("swap")
}

/// `Ψ ⊗ id` on the first two legs.
fn braid_head(h: &QuasiTriangular, t: &Tensor, a: &LeftModule, b: &LeftModule, c: &LeftModule) -> Tensor {
    let r = one_r(h, true);
    let acted = act_parts(h, &r, t, &[a, b, c], &[Shape::Leaf, Shape::Leaf, Shape::Leaf]);
    acted.permute(&[1, 0, 2]).expect("swap")
}

/// `R ⊗ 1` (head) or `1 ⊗ R` (tail) with `R⁽¹⁾` on the braided left factor.
fn one_r(h: &QuasiTriangular, head: bool) -> Tensor {
    if head {
        h.r.outer(&h.unit)
    } else {
        h.unit.outer(&h.r)
    }
}

/// Both snake identities for `V`, with the unit constraints taken as the
/// canonical identifications `k ⊗ V ≅ V ≅ V ⊗ k`.
pub fn verify_rigidity(h: &QuasiHopfAlgebra, v: &LeftModule) -> Report {
    use Shape::Leaf;
    host_guard(h, v);
    let d = v.dim();
    let dual = dual_module(h, v);
    let ev = evaluation(h, v);
    let coev = coevaluation(h, v);
    let mut report = Report::new(format!("rigidity of {}", v.name));
    let mut snake_v = Check::new("snake_v", "elements");
    let mut snake_dual = Check::new("snake_dual", "elements");
    for a in 0..d {
        // (id ⊗ ev) Φ_{V,V*,V} (coev ⊗ id)
        let t = coev.outer(&v.basis(a));
        let t = associator_apply(h, &t, &[v, &dual, v], &[Leaf, Leaf, Leaf]);
        let t = t.apply_map(&ev, &[1, 2]).expect("ev");
        snake_v.compare(|| v.space.label(a).to_string(), &t, &v.basis(a));
        // (ev ⊗ id) Φ⁻¹_{V*,V,V*} (id ⊗ coev)
        let t = dual.basis(a).outer(&coev);
        let t = associator_inverse_apply(h, &t, &[&dual, v, &dual], &[Leaf, Leaf, Leaf]);
        let t = t.apply_map(&ev, &[0, 1]).expect("ev");
        snake_dual.compare(|| dual.space.label(a).to_string(), &t, &dual.basis(a));
    }
    report.push(snake_v);
    report.push(snake_dual);
    let opts = VerifyOptions::default();
    report
        .push(check_intertwines(h, &module_tensor(h, &dual, v), &trivial_module(h), &ev.reshape(&[d * d], &[1]), &opts).renamed("ev_is_module_map"));
    let coev_map = LinearMap::from_columns(&[1], &[d * d], vec![coev.reshape(&[d * d])]).expect("coev map");
    report.push(check_intertwines(h, &trivial_module(h), &module_tensor(h, v, &dual), &coev_map, &opts).renamed("coev_is_module_map"));
    report
}

/// `θ_V(ψ)_M(v ⊗ m) = q¹ ψ(v) S(q²) ▷ m`, returned as the map `V ⊗ M → M`.
pub fn theta(h: &QuasiHopfAlgebra, q: &Tensor, v: &LeftModule, psi: &LinearMap, m: &LeftModule) -> LinearMap {
    let (dv, dm) = (v.dim(), m.dim());
    let sq = h.s_leg(q, 1);
    let images: Vec<Tensor> = (0..dv)
        .map(|a| {
            // q¹ ψ(v) S(q²) as an element of H.
            let t = h.rmul(&sq, psi.column_at(a), &[0]);
            h.merge_right(&t, 1, 0)
        })
        .collect();
    LinearMap::from_fn(&[dv * dm], &[dm], |i| m.act(&images[i[0] / dm], &m.basis(i[0] % dm))).expect("theta")
}

/// `θ⁻¹_V(ξ)(v) = ξ_{B_L}(p¹ ▷ v ⊗ p²)` from the component of `ξ` at `B_L`.
pub fn theta_inverse(h: &QuasiHopfAlgebra, p: &Tensor, v: &LeftModule, xi_regular: &LinearMap) -> LinearMap {
    let (dv, n) = (v.dim(), h.dim());
    LinearMap::from_fn(&[dv], &[n], |i| {
        // [p¹ ▷ v, p²]
        let t = v.basis(i[0]).join(p, &[Place::Left(0), Place::New], &v.action);
        t.reshape(&[dv * n]).apply_map(xi_regular, &[0]).expect("xi")
    })
    .expect("theta inverse")
}

/// Check that `ψ: V → B` is a module morphism, then that `θ(ψ)` has module
/// morphism components on `family` and that `θ⁻¹(θ(ψ)) = ψ`.
pub fn verify_theta_round_trip(
    h: &QuasiHopfAlgebra,
    q: &Tensor,
    p: &Tensor,
    v: &LeftModule,
    psi: &LinearMap,
    family: &[&LeftModule],
) -> Result<Report, StructureError> {
    let adjoint = adjoint_module(h);
    let opts = VerifyOptions::default();
    if !check_intertwines(h, v, &adjoint, psi, &opts).passed() {
        return Err(StructureError::Unsupported("a module morphism V → B".into()));
    }
    let mut report = Report::new(format!("theta correspondence on {}", v.name));
    for m in family {
        let xi = theta(h, q, v, psi, m);
        report.push(check_intertwines(h, &module_tensor(h, v, m), m, &xi, &opts).renamed(format!("theta_component_{}", m.name)));
    }
    let regular = regular_module(h);
    let xi_regular = theta(h, q, v, psi, &regular);
    let back = theta_inverse(h, p, v, &xi_regular);
    let mut round = Check::new("theta_round_trip", "identity");
    round.compare(
        || "-".into(),
        &back.columns().iter().cloned().collect::<TensorList>(),
        &psi.columns().iter().cloned().collect::<TensorList>(),
    );
    report.push(round);
    Ok(report)
}

/// Columns compared as a whole, displayed compactly.
#[derive(PartialEq)]
struct TensorList(Vec<Tensor>);

impl FromIterator<Tensor> for TensorList {
    fn from_iter<I: IntoIterator<Item = Tensor>>(iter: I) -> Self {
        TensorList(iter.into_iter().collect())
    }
}

impl std::fmt::Display for TensorList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_algebra, twisted_double};
    use crate::groups::{cyclic_cocycle, FiniteGroup};
    use crate::quasihopf::derive_elements;
    use crate::scalars::Scalar;
    use std::sync::Arc;

    fn dz2() -> QuasiTriangular {
        twisted_double(&cyclic_cocycle(2, 1).unwrap()).unwrap().algebra
    }

    #[test]
    fn tensor_with_trivial_module_acts_on_one_leg() {
        let h = dz2();
        let adj = adjoint_module(&h);
        let one = trivial_module(&h);
        let t = module_tensor(&h, &one, &adj);
        assert_eq!(t.action, adj.action);
    }

    #[test]
    fn group_algebra_regular_square_is_diagonal() {
        let h = group_algebra(&Arc::new(FiniteGroup::cyclic(2).unwrap())).unwrap();
        let reg = regular_module(&h);
        let sq = module_tensor(&h, &reg, &reg);
        for x in 0..2 {
            for v in 0..4 {
                let expected = Tensor::basis(&[4], &[(x ^ (v / 2)) * 2 + (x ^ (v % 2))]);
                assert_eq!(*sq.act_basis(x, v), expected);
            }
        }
    }

    #[test]
    fn adjoint_modules_and_category_axioms_on_dz2() {
        let h = dz2();
        let adj = adjoint_module(&h);
        let opts = VerifyOptions::default();
        assert!(verify_module(&h, &adj, &opts).passed());
        let sq = module_tensor(&h, &adj, &adj);
        assert!(verify_module(&h, &sq, &opts).passed());
        let dual = dual_module(&h, &adj);
        assert!(verify_module(&h, &dual, &opts).passed());
        let assoc = associator(&h, &adj, &adj, &adj);
        assert!(verify_morphism(&h, &assoc, &opts).passed());
        assert!(assoc.map.inverse().is_some());
        let psi = braiding(&h, &adj, &adj);
        assert!(verify_morphism(&h, &psi, &opts).passed());
        assert!(check_pentagon(&h, [&adj, &adj, &adj, &adj]).passed());
        let hex = check_hexagons(&h, [&adj, &adj, &adj]);
        assert!(hex.passed(), "{hex}");
        let rig = verify_rigidity(&h, &adj);
        assert!(rig.passed(), "{rig}");
    }

    #[test]
    fn adjoint_action_of_projections() {
        // (e⊗δ_s) ▷ (h⊗δ_t) = δ_{s, t h⁻¹ t⁻¹ h} (h⊗δ_t); for abelian G this is δ_{s,e}.
        let h = dz2();
        let adj = adjoint_module(&h);
        for s in 0..2 {
            for b in 0..4 {
                let expected = if s == 0 { adj.basis(b) } else { Tensor::zero(&[4]) };
                assert_eq!(*adj.act_basis(s, b), expected);
            }
        }
    }

    #[test]
    fn theta_round_trip_on_dz2() {
        let h = dz2();
        let d = derive_elements(&h).unwrap();
        let adj = adjoint_module(&h);
        let reg = regular_module(&h);
        let sq = module_tensor(&h, &adj, &adj);
        let psi = LinearMap::identity(&[4]);
        let report = verify_theta_round_trip(&h, &d.q, &d.p, &adj, &psi, &[&reg, &adj, &sq]).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn evaluation_on_trivial_host() {
        let h = group_algebra(&Arc::new(FiniteGroup::cyclic(1).unwrap())).unwrap();
        let one = trivial_module(&h);
        let ev = evaluation(&h, &one);
        assert_eq!(ev.column_at(0).scalar_value(), Scalar::one());
    }
}
