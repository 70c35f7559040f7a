//! Sparse exact tensors over based vector spaces and the contraction engine.
//!
//! A [`Tensor`] with legs of dimensions `[d_1, …, d_k]` stores its nonzero
//! coefficients keyed by the mixed-radix code of the multi-index (first leg
//! most significant). Entries are kept sorted with no explicit zeros, so
//! structural equality is mathematical equality.
//!
//! Sweedler sums are expanded as genuine sums: every formula is evaluated by
//! [`Tensor::join`], which contracts a new independent copy of an element into
//! selected legs by left or right multiplication. The join indexes the receiving
//! tensor by its merged legs and only visits pairs whose basis product is nonzero.

use std::fmt;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use serde_json::{json, Value};
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalars::Scalar;

pub type Dims = SmallVec<[usize; 6]>;
pub type MultiIndex = SmallVec<[usize; 6]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("leg {0} out of range")]
    BadLeg(usize),
    #[error("permutation {0:?} is invalid")]
    BadPermutation(Vec<usize>),
    #[error("tensor too large to index")]
    TooLarge,
    #[error("malformed tensor dump: {0}")]
    Parse(String),
}

/// A finite-dimensional vector space with a chosen, labelled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
}

impl BasedSpace {
    pub fn new(labels: Vec<String>) -> Self {
        BasedSpace { labels }
    }

    pub fn numbered(dim: usize) -> Self {
        BasedSpace {
            labels: (0..dim).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

fn total(dims: &[usize]) -> Option<u64> {
    dims.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    dims: Dims,
    entries: Vec<(u64, Scalar)>,
}

/// Accumulates terms of a tensor, merging repeated keys.
pub struct TensorBuilder {
    dims: Dims,
    acc: FxHashMap<u64, Scalar>,
}

impl TensorBuilder {
    pub fn new(dims: &[usize]) -> Self {
        assert!(total(dims).is_some(), "tensor too large to index");
        TensorBuilder {
            dims: dims.into(),
            acc: FxHashMap::default(),
        }
    }

    pub fn add_key(&mut self, key: u64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.acc.get_mut(&key) {
            Some(v) => *v += c,
            None => {
                self.acc.insert(key, c.clone());
            }
        }
    }

    pub fn add(&mut self, idx: &[usize], c: &Scalar) {
        let key = encode(&self.dims, idx);
        self.add_key(key, c);
    }

    pub fn add_tensor(&mut self, t: &Tensor, scale: &Scalar) {
        debug_assert_eq!(t.dims, self.dims);
        for (k, c) in &t.entries {
            self.add_key(*k, &(c * scale));
        }
    }

    pub fn finish(self) -> Tensor {
        let mut entries: Vec<(u64, Scalar)> = self.acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        entries.sort_unstable_by_key(|e| e.0);
        Tensor { dims: self.dims, entries }
    }
}

fn encode(dims: &[usize], idx: &[usize]) -> u64 {
    debug_assert_eq!(dims.len(), idx.len());
    let mut k = 0u64;
    for (&d, &i) in dims.iter().zip(idx) {
        debug_assert!(i < d);
        k = k * d as u64 + i as u64;
    }
    k
}

fn decode(dims: &[usize], mut key: u64) -> MultiIndex {
    let mut idx: MultiIndex = SmallVec::from_elem(0, dims.len());
    for l in (0..dims.len()).rev() {
        let d = dims[l] as u64;
        idx[l] = (key % d) as usize;
        key /= d;
    }
    idx
}

/// How a leg of the incoming copy in [`Tensor::join`] is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    /// Multiply into the given leg from the left: `new · old`.
    Left(usize),
    /// Multiply into the given leg from the right: `old · new`.
    Right(usize),
    /// Append as a fresh trailing leg.
    New,
}

impl Tensor {
    pub fn zero(dims: &[usize]) -> Self {
        assert!(total(dims).is_some(), "tensor too large to index");
        Tensor {
            dims: dims.into(),
            entries: Vec::new(),
        }
    }

    /// A zero-leg tensor holding `c`.
    pub fn scalar(c: Scalar) -> Self {
        let entries = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        Tensor {
            dims: SmallVec::new(),
            entries,
        }
    }

    pub fn basis(dims: &[usize], idx: &[usize]) -> Self {
        Self::monomial(dims, idx, Scalar::one())
    }

    pub fn monomial(dims: &[usize], idx: &[usize], c: Scalar) -> Self {
        let mut b = TensorBuilder::new(dims);
        b.add(idx, &c);
        b.finish()
    }

    pub fn from_terms<I, M>(dims: &[usize], terms: I) -> Self
    where
        I: IntoIterator<Item = (M, Scalar)>,
        M: AsRef<[usize]>,
    {
        let mut b = TensorBuilder::new(dims);
        for (idx, c) in terms {
            b.add(idx.as_ref(), &c);
        }
        b.finish()
    }

    /// A one-leg tensor from a dense coefficient vector.
    pub fn from_dense(coeffs: &[Scalar]) -> Self {
        Self::from_terms(&[coeffs.len()], coeffs.iter().enumerate().map(|(i, c)| ([i], c.clone())))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn legs(&self) -> usize {
        self.dims.len()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn raw_entries(&self) -> &[(u64, Scalar)] {
        &self.entries
    }

    pub fn encode(&self, idx: &[usize]) -> u64 {
        encode(&self.dims, idx)
    }

    pub fn decode(&self, key: u64) -> MultiIndex {
        decode(&self.dims, key)
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &Scalar)> + '_ {
        self.entries.iter().map(move |(k, c)| (decode(&self.dims, *k), c))
    }

    pub fn coeff(&self, idx: &[usize]) -> Scalar {
        let key = encode(&self.dims, idx);
        match self.entries.binary_search_by_key(&key, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// The coefficient of a zero-leg tensor.
    pub fn scalar_value(&self) -> Scalar {
        debug_assert!(self.dims.is_empty());
        self.entries.first().map(|e| e.1.clone()).unwrap_or_else(Scalar::zero)
    }

    /// Dense coefficients of a one-leg tensor.
    pub fn to_dense(&self) -> Vec<Scalar> {
        debug_assert_eq!(self.legs(), 1);
        let mut v = vec![Scalar::zero(); self.dims[0]];
        for (k, c) in &self.entries {
            v[*k as usize] = c.clone();
        }
        v
    }

    fn check_same(&self, other: &Tensor) -> Result<(), TensorError> {
        if self.dims != other.dims {
            return Err(TensorError::DimMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j].clone());
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Tensor {
            dims: self.dims.clone(),
            entries: out,
        })
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        if s.is_zero() {
            return Tensor::zero(&self.dims);
        }
        Tensor {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    /// `self ⊗ other` with the legs of `other` appended.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let width = total(&other.dims).expect("indexable");
        assert!(total(&dims).is_some(), "tensor too large to index");
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (ka, ca) in &self.entries {
            for (kb, cb) in &other.entries {
                entries.push((ka * width + kb, ca * cb));
            }
        }
        Tensor { dims, entries }
    }

    /// Move input leg `k` to output position `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Tensor, TensorError> {
        let n = self.legs();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(TensorError::BadPermutation(perm.to_vec()));
        }
        let mut dims: Dims = SmallVec::from_elem(0, n);
        for (k, &p) in perm.iter().enumerate() {
            dims[p] = self.dims[k];
        }
        let mut entries: Vec<(u64, Scalar)> = self
            .entries
            .iter()
            .map(|(key, c)| {
                let idx = decode(&self.dims, *key);
                let mut out: MultiIndex = SmallVec::from_elem(0, n);
                for (k, &p) in perm.iter().enumerate() {
                    out[p] = idx[k];
                }
                (encode(&dims, &out), c.clone())
            })
            .collect();
        entries.sort_unstable_by_key(|e| e.0);
        Ok(Tensor { dims, entries })
    }

    /// Apply a linear map to the legs `at` (in that order). The output legs of the
    /// map replace them, inserted where the lowest of the selected legs was; the
    /// remaining legs keep their relative order.
    pub fn apply_map(&self, map: &LinearMap, at: &[usize]) -> Result<Tensor, TensorError> {
        if at.len() != map.domain.len() {
            return Err(TensorError::DimMismatch(format!(
                "map takes {} legs, {} selected",
                map.domain.len(),
                at.len()
            )));
        }
        for (i, &l) in at.iter().enumerate() {
            if l >= self.legs() {
                return Err(TensorError::BadLeg(l));
            }
            if self.dims[l] != map.domain[i] || at[..i].contains(&l) {
                return Err(TensorError::DimMismatch(format!("leg {l} does not match map domain")));
            }
        }
        let first = at.iter().copied().min().unwrap_or(self.legs());
        let rest: Vec<usize> = (0..self.legs()).filter(|l| !at.contains(l)).collect();
        let pos = rest.iter().filter(|&&l| l < first).count();
        let mut dims: Dims = SmallVec::new();
        dims.extend(rest[..pos].iter().map(|&l| self.dims[l]));
        dims.extend_from_slice(&map.codomain);
        dims.extend(rest[pos..].iter().map(|&l| self.dims[l]));
        let mut b = TensorBuilder::new(&dims);
        let mut out: MultiIndex = SmallVec::from_elem(0, dims.len());
        let width = map.codomain.len();
        for (key, c) in &self.entries {
            let idx = decode(&self.dims, *key);
            let mut dk = 0usize;
            for (i, &l) in at.iter().enumerate() {
                dk = dk * map.domain[i] + idx[l];
            }
            for (j, &l) in rest[..pos].iter().enumerate() {
                out[j] = idx[l];
            }
            for (j, &l) in rest[pos..].iter().enumerate() {
                out[pos + width + j] = idx[l];
            }
            let col = &map.columns[dk];
            for (ck, cc) in &col.entries {
                let cidx = decode(&col.dims, *ck);
                out[pos..pos + width].copy_from_slice(&cidx);
                b.add(&out, &(c * cc));
            }
        }
        Ok(b.finish())
    }

    /// The same coefficients viewed with other leg dimensions of equal total size.
    /// Because keys are mixed-radix codes, grouping or splitting adjacent legs is free.
    pub fn reshape(&self, dims: &[usize]) -> Tensor {
        assert_eq!(total(dims), total(&self.dims), "reshape must preserve the total dimension");
        Tensor {
            dims: dims.into(),
            entries: self.entries.clone(),
        }
    }

    /// Apply a one-leg-to-k-legs map on leg `leg`.
    pub fn map_leg(&self, leg: usize, map: &LinearMap) -> Tensor {
        self.apply_map(map, &[leg]).unwrap_or_else(|e| panic!("{e}"))
    }

    /// Replace leg `dst` by the product of legs `src` and `dst` (`src` on the
    /// given side of `dst`), removing leg `src`.
    pub fn merge_legs(&self, src: usize, dst: usize, src_on_left: bool, prod: &LinearMap) -> Tensor {
        assert!(src != dst && src < self.legs() && dst < self.legs());
        let mut dims = self.dims.clone();
        dims.remove(src);
        let dst_out = if dst > src { dst - 1 } else { dst };
        dims[dst_out] = prod.codomain[0];
        let mut b = TensorBuilder::new(&dims);
        for (key, c) in &self.entries {
            let idx = decode(&self.dims, *key);
            let p = if src_on_left {
                prod.product(idx[src], idx[dst])
            } else {
                prod.product(idx[dst], idx[src])
            };
            if p.is_zero() {
                continue;
            }
            let mut out = idx.clone();
            out.remove(src);
            for (pk, pc) in &p.entries {
                out[dst_out] = *pk as usize;
                b.add(&out, &(c * pc));
            }
        }
        b.finish()
    }

    /// Contract an independent copy `other` into `self`: leg `j` of `other`
    /// is multiplied into the leg named by `places[j]`, or appended.
    pub fn join(&self, other: &Tensor, places: &[Place], prod: &LinearMap) -> Tensor {
        let prods = vec![prod; places.len()];
        self.join_with(other, places, &prods)
    }

    /// [`Tensor::join`] with a separate bilinear map per leg of `other`; a
    /// module action `H ⊗ V → V` placed with `Left` acts on a `V` leg.
    pub fn join_with(&self, other: &Tensor, places: &[Place], prods: &[&LinearMap]) -> Tensor {
        assert_eq!(places.len(), other.legs(), "one placement per leg of the incoming tensor");
        assert_eq!(prods.len(), places.len(), "one product per leg of the incoming tensor");
        let mut merged: Vec<Merge> = Vec::new();
        let mut fresh: Vec<usize> = Vec::new();
        let mut dims = self.dims.clone();
        for (j, p) in places.iter().enumerate() {
            match *p {
                Place::Left(l) | Place::Right(l) => {
                    let on_left = matches!(p, Place::Left(_));
                    let prod = prods[j];
                    assert!(l < self.legs(), "leg {l} out of range");
                    assert!(prod.domain.len() == 2 && prod.codomain.len() == 1, "not a bilinear map");
                    let (mine, theirs) = if on_left {
                        (prod.domain[1], prod.domain[0])
                    } else {
                        (prod.domain[0], prod.domain[1])
                    };
                    assert!(self.dims[l] == mine && other.dims[j] == theirs, "leg dimensions do not fit the product");
                    assert!(merged.iter().all(|m| m.leg != l), "leg {l} merged twice");
                    dims[l] = prod.codomain[0];
                    merged.push(Merge {
                        leg: l,
                        oleg: j,
                        on_left,
                        prod,
                    });
                }
                Place::New => fresh.push(j),
            }
        }
        dims.extend(fresh.iter().map(|&j| other.dims[j]));
        let mut builder = TensorBuilder::new(&dims);
        if self.is_zero() || other.is_zero() {
            return builder.finish();
        }
        let decoded: Vec<MultiIndex> = self.entries.iter().map(|(k, _)| decode(&self.dims, *k)).collect();
        let mut order: Vec<u32> = (0..decoded.len() as u32).collect();
        order.sort_unstable_by(|&a, &b| {
            let (x, y) = (&decoded[a as usize], &decoded[b as usize]);
            merged.iter().map(|m| x[m.leg]).cmp(merged.iter().map(|m| y[m.leg]))
        });
        let ctx = JoinCtx {
            this: self,
            decoded: &decoded,
            order: &order,
            merged: &merged,
            base_legs: self.legs(),
        };
        let mut out: MultiIndex = SmallVec::from_elem(0, dims.len());
        for (ok, oc) in &other.entries {
            let oidx = decode(&other.dims, *ok);
            for (slot, &j) in fresh.iter().enumerate() {
                out[ctx.base_legs + slot] = oidx[j];
            }
            ctx.descend(0, 0, order.len(), &oidx, oc, &mut out, &mut builder);
        }
        builder.finish()
    }

    /// Leg-wise product `self · other` of two tensors with the same legs.
    pub fn mul_legwise(&self, other: &Tensor, prod: &LinearMap) -> Tensor {
        let places: Vec<Place> = (0..other.legs()).map(Place::Right).collect();
        self.join(other, &places, prod)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .terms()
            .map(|(idx, c)| {
                let mut row: Vec<Value> = idx.iter().map(|&i| json!(i)).collect();
                row.push(serde_json::to_value(c).expect("scalar serializes"));
                Value::Array(row)
            })
            .collect();
        json!({ "legs": self.dims.to_vec(), "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<Tensor, TensorError> {
        let bad = |m: &str| TensorError::Parse(m.to_string());
        let legs: Vec<usize> = serde_json::from_value(v.get("legs").cloned().ok_or_else(|| bad("missing legs"))?).map_err(|e| bad(&e.to_string()))?;
        let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
        if total(&legs).is_none() {
            return Err(TensorError::TooLarge);
        }
        let mut b = TensorBuilder::new(&legs);
        for e in entries {
            let row = e.as_array().ok_or_else(|| bad("entry is not an array"))?;
            if row.len() != legs.len() + 1 {
                return Err(bad("entry has the wrong arity"));
            }
            let mut idx = Vec::with_capacity(legs.len());
            for (i, x) in row[..legs.len()].iter().enumerate() {
                let k = x.as_u64().ok_or_else(|| bad("index is not an integer"))? as usize;
                if k >= legs[i] {
                    return Err(bad("index out of range"));
                }
                idx.push(k);
            }
            let c: Scalar = serde_json::from_value(row[legs.len()].clone()).map_err(|e| bad(&e.to_string()))?;
            b.add(&idx, &c);
        }
        Ok(b.finish())
    }
}

struct Merge<'a> {
    leg: usize,
    oleg: usize,
    on_left: bool,
    prod: &'a LinearMap,
}

struct JoinCtx<'a> {
    this: &'a Tensor,
    decoded: &'a [MultiIndex],
    order: &'a [u32],
    merged: &'a [Merge<'a>],
    base_legs: usize,
}

impl JoinCtx<'_> {
    #[allow(clippy::too_many_arguments)]
    fn descend(&self, level: usize, lo: usize, hi: usize, oidx: &MultiIndex, oc: &Scalar, out: &mut MultiIndex, b: &mut TensorBuilder) {
        if lo >= hi {
            return;
        }
        if level == self.merged.len() {
            for &t in &self.order[lo..hi] {
                self.emit(t as usize, oidx, oc, out, b);
            }
            return;
        }
        let m = &self.merged[level];
        let o = oidx[m.oleg];
        let candidates = if m.on_left { m.prod.right_compat(o) } else { m.prod.left_compat(o) };
        let leg = m.leg;
        let key = |t: u32| self.decoded[t as usize][leg];
        let mut start = lo;
        if hi - lo <= candidates.len() {
            // Walk the runs of the range and keep those with a nonzero product.
            while start < hi {
                let a = key(self.order[start]);
                let end = start + self.order[start..hi].partition_point(|&t| key(t) == a);
                if candidates.binary_search(&(a as u32)).is_ok() {
                    self.descend(level + 1, start, end, oidx, oc, out, b);
                }
                start = end;
            }
        } else {
            for &a in candidates {
                let a = a as usize;
                let s = start + self.order[start..hi].partition_point(|&t| key(t) < a);
                if s >= hi {
                    break;
                }
                let e = s + self.order[s..hi].partition_point(|&t| key(t) == a);
                if e > s {
                    self.descend(level + 1, s, e, oidx, oc, out, b);
                }
                start = e;
            }
        }
    }

    fn emit(&self, t: usize, oidx: &MultiIndex, oc: &Scalar, out: &mut MultiIndex, b: &mut TensorBuilder) {
        let sidx = &self.decoded[t];
        let c = &self.this.entries[t].1 * oc;
        out[..self.base_legs].copy_from_slice(sidx);
        let mut factors: SmallVec<[&Tensor; 6]> = SmallVec::new();
        for m in self.merged {
            let p = if m.on_left {
                m.prod.product(oidx[m.oleg], sidx[m.leg])
            } else {
                m.prod.product(sidx[m.leg], oidx[m.oleg])
            };
            if p.is_zero() {
                return;
            }
            factors.push(p);
        }
        if factors.iter().all(|f| f.entries.len() == 1) {
            let mut coeff = c;
            for (f, m) in factors.iter().zip(self.merged) {
                out[m.leg] = f.entries[0].0 as usize;
                coeff = &coeff * &f.entries[0].1;
            }
            b.add(out, &coeff);
            return;
        }
        self.expand(0, &factors, &c, out, b);
    }

    fn expand(&self, i: usize, factors: &[&Tensor], c: &Scalar, out: &mut MultiIndex, b: &mut TensorBuilder) {
        if i == factors.len() {
            b.add(out, c);
            return;
        }
        let leg = self.merged[i].leg;
        for (k, fc) in &factors[i].entries {
            out[leg] = *k as usize;
            self.expand(i + 1, factors, &(c * fc), out, b);
        }
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        const SHOWN: usize = 12;
        for (n, (idx, c)) in self.terms().enumerate() {
            if n == SHOWN {
                return write!(f, " + … ({} terms)", self.entries.len());
            }
            if n > 0 {
                f.write_str(" + ")?;
            }
            let ix: Vec<String> = idx.iter().map(usize::to_string).collect();
            write!(f, "({c})[{}]", ix.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor{:?}{{{self}}}", self.dims.as_slice())
    }
}

#[derive(Default)]
struct Compat {
    /// `left[b]`: all `a` with `a·b ≠ 0`.
    left: Vec<Vec<u32>>,
    /// `right[a]`: all `b` with `a·b ≠ 0`.
    right: Vec<Vec<u32>>,
}

/// A linear map between tensor-product spaces, stored by the images of basis multi-indices.
pub struct LinearMap {
    domain: Dims,
    codomain: Dims,
    columns: Vec<Tensor>,
    compat: OnceLock<Compat>,
}

impl Clone for LinearMap {
    fn clone(&self) -> Self {
        LinearMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            columns: self.columns.clone(),
            compat: OnceLock::new(),
        }
    }
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.columns == other.columns
    }
}

impl Eq for LinearMap {}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap{:?}->{:?}", self.domain.as_slice(), self.codomain.as_slice())
    }
}

impl LinearMap {
    pub fn from_columns(domain: &[usize], codomain: &[usize], columns: Vec<Tensor>) -> Result<Self, TensorError> {
        let n = total(domain).ok_or(TensorError::TooLarge)? as usize;
        if columns.len() != n {
            return Err(TensorError::DimMismatch(format!("{} columns for a domain of size {n}", columns.len())));
        }
        if let Some(c) = columns.iter().find(|c| c.dims.as_slice() != codomain) {
            return Err(TensorError::DimMismatch(format!("column dims {:?} vs codomain {codomain:?}", c.dims)));
        }
        Ok(LinearMap {
            domain: domain.into(),
            codomain: codomain.into(),
            columns,
            compat: OnceLock::new(),
        })
    }

    pub fn from_fn(domain: &[usize], codomain: &[usize], mut f: impl FnMut(&[usize]) -> Tensor) -> Result<Self, TensorError> {
        let n = total(domain).ok_or(TensorError::TooLarge)?;
        let columns = (0..n).map(|k| f(&decode(domain, k))).collect();
        Self::from_columns(domain, codomain, columns)
    }

    /// The same matrix with regrouped domain and codomain legs.
    pub fn reshape(&self, domain: &[usize], codomain: &[usize]) -> LinearMap {
        assert_eq!(total(domain), total(&self.domain), "reshape must preserve the domain size");
        let columns = self.columns.iter().map(|c| c.reshape(codomain)).collect();
        LinearMap::from_columns(domain, codomain, columns).expect("reshaped map")
    }

    pub fn identity(dims: &[usize]) -> Self {
        Self::from_fn(dims, dims, |idx| Tensor::basis(dims, idx)).expect("identity map")
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain(&self) -> &[usize] {
        &self.codomain
    }

    pub fn columns(&self) -> &[Tensor] {
        &self.columns
    }

    pub fn column(&self, idx: &[usize]) -> &Tensor {
        &self.columns[encode(&self.domain, idx) as usize]
    }

    pub fn column_at(&self, key: usize) -> &Tensor {
        &self.columns[key]
    }

    /// For a bilinear map `A ⊗ B → C`: the image of basis elements `a ⊗ b`.
    pub fn product(&self, a: usize, b: usize) -> &Tensor {
        &self.columns[a * self.domain[1] + b]
    }

    fn compat(&self) -> &Compat {
        self.compat.get_or_init(|| {
            assert!(self.domain.len() == 2 && self.codomain.len() == 1, "not a bilinear map");
            let (na, nb) = (self.domain[0], self.domain[1]);
            let mut c = Compat {
                left: vec![Vec::new(); nb],
                right: vec![Vec::new(); na],
            };
            for a in 0..na {
                for b in 0..nb {
                    if !self.product(a, b).is_zero() {
                        c.left[b].push(a as u32);
                        c.right[a].push(b as u32);
                    }
                }
            }
            c
        })
    }

    /// All `a` with `a·b ≠ 0`, ascending.
    pub fn left_compat(&self, b: usize) -> &[u32] {
        &self.compat().left[b]
    }

    /// All `b` with `a·b ≠ 0`, ascending.
    pub fn right_compat(&self, a: usize) -> &[u32] {
        &self.compat().right[a]
    }

    /// Apply to a tensor whose legs are exactly the domain legs.
    pub fn apply(&self, t: &Tensor) -> Result<Tensor, TensorError> {
        let at: Vec<usize> = (0..self.domain.len()).collect();
        t.apply_map(self, &at)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap, TensorError> {
        if inner.codomain != self.domain {
            return Err(TensorError::DimMismatch(format!("{:?} vs {:?}", inner.codomain, self.domain)));
        }
        let columns = inner.columns.iter().map(|c| self.apply(c)).collect::<Result<Vec<_>, _>>()?;
        LinearMap::from_columns(&inner.domain, &self.codomain, columns)
    }

    pub fn tensor(&self, other: &LinearMap) -> LinearMap {
        let mut domain = self.domain.clone();
        domain.extend_from_slice(&other.domain);
        let mut codomain = self.codomain.clone();
        codomain.extend_from_slice(&other.codomain);
        let width = other.columns.len();
        let columns = (0..self.columns.len() * width)
            .map(|k| self.columns[k / width].outer(&other.columns[k % width]))
            .collect();
        LinearMap::from_columns(&domain, &codomain, columns).expect("tensor of maps")
    }

    /// Inverse of a square map by sparse Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<LinearMap> {
        let n = total(&self.domain)? as usize;
        if total(&self.codomain)? as usize != n {
            return None;
        }
        let rhs: Vec<Vec<(usize, Scalar)>> = (0..n).map(|i| vec![(i, Scalar::one())]).collect();
        let sol = solve_columns(n, &self.columns, &rhs)?;
        let columns = sol
            .into_iter()
            .map(|col| {
                let mut b = TensorBuilder::new(&self.domain);
                for (k, c) in col {
                    b.add_key(k as u64, &c);
                }
                b.finish()
            })
            .collect();
        LinearMap::from_columns(&self.codomain, &self.domain, columns).ok()
    }

    /// Solve `self(x) = y` for a square map; `None` if singular.
    pub fn solve(&self, y: &Tensor) -> Option<Tensor> {
        let n = total(&self.domain)? as usize;
        if total(&self.codomain)? as usize != n || y.dims != self.codomain {
            return None;
        }
        let rhs = vec![y.entries.iter().map(|(k, c)| (*k as usize, c.clone())).collect::<Vec<_>>()];
        let sol = solve_columns(n, &self.columns, &rhs)?;
        let mut b = TensorBuilder::new(&self.domain);
        for (k, c) in &sol[0] {
            b.add_key(*k as u64, c);
        }
        Some(b.finish())
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(k, c)| c.entries.len() == 1 && c.entries[0].0 == k as u64 && c.entries[0].1.is_one())
    }

    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for (k, col) in self.columns.iter().enumerate() {
            let din = decode(&self.domain, k as u64);
            for (idx, c) in col.terms() {
                let mut row: Vec<Value> = din.iter().chain(idx.iter()).map(|&i| json!(i)).collect();
                row.push(serde_json::to_value(c).expect("scalar serializes"));
                entries.push(Value::Array(row));
            }
        }
        json!({ "domain": self.domain.to_vec(), "codomain": self.codomain.to_vec(), "entries": entries })
    }

    pub fn from_json(v: &Value) -> Result<LinearMap, TensorError> {
        let bad = |m: &str| TensorError::Parse(m.to_string());
        let get = |k: &str| -> Result<Vec<usize>, TensorError> {
            serde_json::from_value(v.get(k).cloned().ok_or_else(|| bad(k))?).map_err(|e| bad(&e.to_string()))
        };
        let (domain, codomain) = (get("domain")?, get("codomain")?);
        let n = total(&domain).ok_or(TensorError::TooLarge)? as usize;
        let mut builders: Vec<TensorBuilder> = (0..n).map(|_| TensorBuilder::new(&codomain)).collect();
        let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("missing entries"))?;
        let arity = domain.len() + codomain.len();
        for e in entries {
            let row = e.as_array().ok_or_else(|| bad("entry is not an array"))?;
            if row.len() != arity + 1 {
                return Err(bad("entry has the wrong arity"));
            }
            let idx: Vec<usize> = row[..arity]
                .iter()
                .map(|x| x.as_u64().map(|k| k as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("index"))?;
            let dims: Vec<usize> = domain.iter().chain(codomain.iter()).copied().collect();
            if idx.iter().zip(&dims).any(|(i, d)| i >= d) {
                return Err(bad("index out of range"));
            }
            let c: Scalar = serde_json::from_value(row[arity].clone()).map_err(|e| bad(&e.to_string()))?;
            let k = encode(&domain, &idx[..domain.len()]) as usize;
            builders[k].add(&idx[domain.len()..], &c);
        }
        LinearMap::from_columns(&domain, &codomain, builders.into_iter().map(TensorBuilder::finish).collect())
    }
}

/// Solve `A X = B` where `A` is given by its columns (keys are flat row
/// indices) and `B` by sparse right-hand sides. Returns `X` column-wise.
fn solve_columns(n: usize, cols: &[Tensor], rhs: &[Vec<(usize, Scalar)>]) -> Option<Vec<Vec<(usize, Scalar)>>> {
    use std::collections::{BTreeMap, BTreeSet};
    let m = rhs.len();
    let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
    for (j, col) in cols.iter().enumerate() {
        for (k, c) in &col.entries {
            rows[*k as usize].insert(j, c.clone());
        }
    }
    for (j, r) in rhs.iter().enumerate() {
        for (k, c) in r {
            if !c.is_zero() {
                rows[*k].insert(n + j, c.clone());
            }
        }
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + m];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].insert(i);
        }
    }
    let mut pivot_of_col = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for j in 0..n {
        let p = col_rows[j].iter().copied().filter(|&r| !used[r]).min_by_key(|&r| rows[r].len())?;
        used[p] = true;
        pivot_of_col[j] = p;
        let inv = rows[p][&j].try_inv().ok()?;
        if !inv.is_one() {
            for v in rows[p].values_mut() {
                *v = &*v * &inv;
            }
        }
        let prow: Vec<(usize, Scalar)> = rows[p].iter().map(|(k, v)| (*k, v.clone())).collect();
        let targets: Vec<usize> = col_rows[j].iter().copied().filter(|&r| r != p).collect();
        for r in targets {
            let f = rows[r][&j].clone();
            for (c, v) in &prow {
                let delta = &f * v;
                let entry = rows[r].entry(*c).or_insert_with(Scalar::zero);
                *entry = &*entry - &delta;
                if entry.is_zero() {
                    rows[r].remove(c);
                    col_rows[*c].remove(&r);
                } else {
                    col_rows[*c].insert(r);
                }
            }
        }
    }
    let mut out = vec![Vec::new(); m];
    for j in 0..n {
        let p = pivot_of_col[j];
        for (c, v) in rows[p].range(n..) {
            out[c - n].push((j, v.clone()));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// The 2x2 matrix algebra with basis E11, E12, E21, E22.
    fn matrix_product() -> LinearMap {
        LinearMap::from_fn(&[4, 4], &[4], |ix| {
            let (i, j) = (ix[0] / 2, ix[0] % 2);
            let (k, l) = (ix[1] / 2, ix[1] % 2);
            if j == k {
                Tensor::basis(&[4], &[i * 2 + l])
            } else {
                Tensor::zero(&[4])
            }
        })
        .unwrap()
    }

    /// Dense reference: product of 2x2 matrices given as length-4 coefficient vectors.
    fn dense_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        vec![
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ]
    }

    fn vec_tensor(v: &[i64]) -> Tensor {
        Tensor::from_terms(&[4], v.iter().enumerate().map(|(i, &c)| ([i], int(c))))
    }

    #[test]
    fn structural_equality_ignores_construction_order() {
        let a = Tensor::from_terms(&[2, 3], [([0, 1], int(1)), ([1, 2], int(2)), ([0, 1], int(-1))]);
        let b = Tensor::from_terms(&[2, 3], [([1, 2], int(2))]);
        assert_eq!(a, b);
        assert_eq!(a.nnz(), 1);
    }

    #[test]
    fn permute_composes() {
        let t = Tensor::from_terms(&[2, 3, 4], [([1, 2, 3], int(5)), ([0, 1, 2], int(-1))]);
        let p = [2, 0, 1];
        let q = [1, 2, 0];
        let qp: Vec<usize> = p.iter().map(|&x| q[x]).collect();
        assert_eq!(t.permute(&p).unwrap().permute(&q).unwrap(), t.permute(&qp).unwrap());
        assert_eq!(t.permute(&p).unwrap().coeff(&[2, 3, 1]), int(5));
        assert!(t.permute(&[0, 0, 1]).is_err());
    }

    #[test]
    fn apply_map_keeps_other_legs() {
        let swap = LinearMap::from_fn(&[2], &[2], |ix| Tensor::basis(&[2], &[1 - ix[0]])).unwrap();
        let t = Tensor::from_terms(&[3, 2, 5], [([2, 0, 4], int(7))]);
        let u = t.apply_map(&swap, &[1]).unwrap();
        assert_eq!(u, Tensor::from_terms(&[3, 2, 5], [([2, 1, 4], int(7))]));
        let split = LinearMap::from_fn(&[2], &[2, 2], |ix| Tensor::basis(&[2, 2], &[ix[0], ix[0]])).unwrap();
        let v = t.apply_map(&split, &[1]).unwrap();
        assert_eq!(v.dims(), &[3, 2, 2, 5]);
        assert_eq!(v.coeff(&[2, 0, 0, 4]), int(7));
    }

    #[test]
    fn join_matches_dense_products() {
        let m = matrix_product();
        let a = [1, 2, -1, 3];
        let b = [0, 1, 4, -2];
        let c = [2, 0, 1, 1];
        // (a ⊗ b) joined with c on leg 1 from the left gives a ⊗ (c b).
        let t = vec_tensor(&a).outer(&vec_tensor(&b));
        let u = t.join(&vec_tensor(&c), &[Place::Left(1)], &m);
        assert_eq!(u, vec_tensor(&a).outer(&vec_tensor(&dense_mul(&c, &b))));
        let w = t.join(&vec_tensor(&c), &[Place::Right(0)], &m);
        assert_eq!(w, vec_tensor(&dense_mul(&a, &c)).outer(&vec_tensor(&b)));
        let x = t.join(&vec_tensor(&c), &[Place::New], &m);
        assert_eq!(x, t.outer(&vec_tensor(&c)));
    }

    #[test]
    fn inverse_of_triangular_map() {
        let a = LinearMap::from_fn(&[3], &[3], |ix| Tensor::from_terms(&[3], (0..=ix[0]).map(|k| ([k], int(k as i64 + 1))))).unwrap();
        let inv = a.inverse().unwrap();
        assert!(a.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&a).unwrap().is_identity());
        let singular = LinearMap::from_fn(&[2], &[2], |_| Tensor::basis(&[2], &[0])).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn json_round_trip() {
        let t = Tensor::from_terms(&[2, 3], [([0, 1], Scalar::ratio(-3, 4)), ([1, 2], Scalar::root_of_unity(3, 1).unwrap())]);
        assert_eq!(Tensor::from_json(&t.to_json()).unwrap(), t);
        let m = matrix_product();
        assert_eq!(LinearMap::from_json(&m.to_json()).unwrap(), m);
    }

    proptest! {
        #[test]
        fn join_distributes_over_addition(a in proptest::collection::vec(-3i64..4, 8), b in proptest::collection::vec(-3i64..4, 4), c in proptest::collection::vec(-3i64..4, 4)) {
            let m = matrix_product();
            let t = Tensor::from_terms(&[4, 2], a.iter().enumerate().map(|(k, &x)| ([k / 2, k % 2], int(x))));
            let (u, v) = (vec_tensor(&b), vec_tensor(&c));
            let lhs = t.join(&u.add(&v), &[Place::Left(0)], &m);
            let rhs = t.join(&u, &[Place::Left(0)], &m).add(&t.join(&v, &[Place::Left(0)], &m));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn legwise_product_is_associative(a in proptest::collection::vec(-2i64..3, 16), b in proptest::collection::vec(-2i64..3, 16), c in proptest::collection::vec(-2i64..3, 16)) {
            let m = matrix_product();
            let mk = |v: &[i64]| Tensor::from_terms(&[4, 4], v.iter().enumerate().map(|(k, &x)| ([k / 4, k % 4], int(x))));
            let (x, y, z) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(x.mul_legwise(&y, &m).mul_legwise(&z, &m), x.mul_legwise(&y.mul_legwise(&z, &m), &m));
        }

        #[test]
        fn permute_inverse(seed in 0usize..24) {
            let perms = [[0,1,2,3],[1,0,2,3],[2,3,0,1],[3,2,1,0],[1,2,3,0],[0,3,1,2]];
            let p = perms[seed % perms.len()];
            let mut inv = [0usize; 4];
            for (k, &x) in p.iter().enumerate() { inv[x] = k; }
            let t = Tensor::from_terms(&[2, 3, 2, 3], [([1, 2, 0, 1], int(3)), ([0, 0, 1, 2], int(-2))]);
            prop_assert_eq!(t.permute(&p).unwrap().permute(&inv).unwrap(), t);
        }
    }
}
