//! Finite groups given by multiplication tables, and scalar-valued cochains on them.
//!
//! Elements are indices `0..n` with the identity at index 0. Groups built from
//! a list of cyclic orders `[n_1, …, n_k]` index the tuple `(c_1, …, c_k)` in
//! mixed radix with the first component most significant, so for `Z_2^3` the
//! element `(1,0,0)` has index 4.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{Check, Report, Witness};
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty group")]
    Empty,
    #[error("table row {0} has the wrong length")]
    Ragged(usize),
    #[error("entry {0} out of range")]
    OutOfRange(usize),
    #[error("identity must be element 0, failed at {0}")]
    IdentityNotFirst(usize),
    #[error("row or column {0} is not a permutation")]
    NotLatin(usize),
    #[error("not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("expected {expected}, got a group of order {order}")]
    WrongGroup { expected: String, order: usize },
    #[error("cochain has {got} values, expected {expected}")]
    CochainSize { expected: usize, got: usize },
    #[error("cochain vanishes at {0:?}")]
    NotInvertible(Vec<usize>),
    #[error("group is not abelian")]
    NotAbelian,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sizes above which associativity of a table is spot-checked instead of exhaustively checked.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    cyclic_orders: Option<Vec<u32>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({})", self.name())
    }
}

/// JSON form of a group: a product of cyclic groups or an explicit table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic(Vec<u32>),
    Table(Vec<Vec<usize>>),
}

impl FiniteGroup {
    /// Validate a table whose entry `[a][b]` is the index of `a·b`.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Ragged(i));
            }
            for &x in row {
                if x >= n {
                    return Err(GroupError::OutOfRange(x));
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table, None)
    }

    fn from_flat(n: usize, table: Vec<u32>, cyclic_orders: Option<Vec<u32>>) -> Result<Self, GroupError> {
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(GroupError::IdentityNotFirst(a));
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[table[a * n + b] as usize] = true;
                col[table[b * n + a] as usize] = true;
            }
            if !row.iter().all(|&x| x) || !col.iter().all(|&x| x) {
                return Err(GroupError::NotLatin(a));
            }
        }
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let assoc = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x67_726f_7570);
            for _ in 0..20_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| m(a, b) == 0).expect("latin square has an inverse") as u32;
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverse,
            cyclic_orders,
        })
    }

    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        Self::cyclic_product(&[n])
    }

    /// `Z_{n_1} × … × Z_{n_k}` in mixed-radix indexing.
    pub fn cyclic_product(orders: &[u32]) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::Empty);
        }
        let n: usize = orders.iter().map(|&o| o as usize).product();
        let split = |mut x: usize| {
            let mut c = vec![0u32; orders.len()];
            for (k, &o) in orders.iter().enumerate().rev() {
                c[k] = (x % o as usize) as u32;
                x /= o as usize;
            }
            c
        };
        let join = |c: &[u32]| c.iter().zip(orders).fold(0usize, |acc, (&x, &o)| acc * o as usize + x as usize);
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            let ca = split(a);
            for b in 0..n {
                let cb = split(b);
                let s: Vec<u32> = ca.iter().zip(&cb).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                table.push(join(&s) as u32);
            }
        }
        Self::from_flat(n, table, Some(orders.to_vec()))
    }

    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Cyclic(orders) => Self::cyclic_product(orders),
            GroupSpec::Table(t) => Self::from_table(t.clone()),
        }
    }

    pub fn to_spec(&self) -> GroupSpec {
        match &self.cyclic_orders {
            Some(o) => GroupSpec::Cyclic(o.clone()),
            None => GroupSpec::Table((0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g⁻¹ s g`.
    pub fn conj(&self, g: usize, s: usize) -> usize {
        self.mul(self.mul(self.inv(g), s), g)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn cyclic_orders(&self) -> Option<&[u32]> {
        self.cyclic_orders.as_deref()
    }

    /// Components of `a` when the group was built as a product of cyclic groups.
    pub fn components(&self, a: usize) -> Option<Vec<u32>> {
        let orders = self.cyclic_orders.as_ref()?;
        let mut x = a;
        let mut c = vec![0u32; orders.len()];
        for (k, &o) in orders.iter().enumerate().rev() {
            c[k] = (x % o as usize) as u32;
            x /= o as usize;
        }
        Some(c)
    }

    pub fn from_components(&self, c: &[u32]) -> Option<usize> {
        let orders = self.cyclic_orders.as_ref()?;
        if c.len() != orders.len() {
            return None;
        }
        Some(c.iter().zip(orders).fold(0usize, |acc, (&x, &o)| acc * o as usize + (x % o) as usize))
    }

    /// Whether this is `Z_2^k` in product form.
    pub fn elementary_two_rank(&self) -> Option<usize> {
        let o = self.cyclic_orders.as_ref()?;
        o.iter().all(|&x| x == 2).then_some(o.len())
    }

    pub fn label(&self, a: usize) -> String {
        match &self.cyclic_orders {
            Some(o) if o.len() == 1 => a.to_string(),
            Some(_) => {
                let c = self.components(a).expect("product group");
                c.iter().map(u32::to_string).collect::<Vec<_>>().join("")
            }
            None if a == 0 => "e".to_string(),
            None => format!("g{a}"),
        }
    }

    pub fn name(&self) -> String {
        match &self.cyclic_orders {
            Some(o) if o.iter().all(|&x| x == o[0]) && o.len() > 1 => format!("Z{}^{}", o[0], o.len()),
            Some(o) => o.iter().map(|x| format!("Z{x}")).collect::<Vec<_>>().join("x"),
            None => format!("G{}", self.order),
        }
    }
}

/// A function `G^k → Q(ζ_N)` stored densely in lexicographic index order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    arity: usize,
    values: Vec<Scalar>,
}

pub type Cochain2 = Cochain;
pub type Cochain3 = Cochain;

impl Cochain {
    pub fn from_fn(group: Arc<FiniteGroup>, arity: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let n = group.order();
        let total = n.pow(arity as u32);
        let mut idx = vec![0usize; arity];
        let mut values = Vec::with_capacity(total);
        for mut k in 0..total {
            for slot in idx.iter_mut().rev() {
                *slot = k % n;
                k /= n;
            }
            values.push(f(&idx));
        }
        Cochain { group, arity, values }
    }

    pub fn from_values(group: Arc<FiniteGroup>, arity: usize, values: Vec<Scalar>) -> Result<Self, GroupError> {
        let expected = group.order().pow(arity as u32);
        if values.len() != expected {
            return Err(GroupError::CochainSize { expected, got: values.len() });
        }
        Ok(Cochain { group, arity, values })
    }

    /// The constant cochain 1.
    pub fn trivial(group: Arc<FiniteGroup>, arity: usize) -> Self {
        Self::from_fn(group, arity, |_| Scalar::one())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn at(&self, idx: &[usize]) -> &Scalar {
        debug_assert_eq!(idx.len(), self.arity);
        let n = self.group.order();
        let k = idx.iter().fold(0usize, |acc, &x| acc * n + x);
        &self.values[k]
    }

    pub fn get2(&self, a: usize, b: usize) -> &Scalar {
        &self.values[a * self.group.order() + b]
    }

    pub fn get3(&self, a: usize, b: usize, c: usize) -> &Scalar {
        let n = self.group.order();
        &self.values[(a * n + b) * n + c]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Pointwise inverse; fails if some value is zero.
    pub fn inverse(&self) -> Result<Self, GroupError> {
        let mut out = Vec::with_capacity(self.values.len());
        for (k, v) in self.values.iter().enumerate() {
            out.push(v.try_inv().map_err(|_| GroupError::NotInvertible(self.unflatten(k)))?);
        }
        Ok(Cochain {
            group: self.group.clone(),
            arity: self.arity,
            values: out,
        })
    }

    pub fn pointwise_mul(&self, other: &Cochain) -> Self {
        assert_eq!(self.arity, other.arity);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Cochain {
            group: self.group.clone(),
            arity: self.arity,
            values,
        }
    }

    fn unflatten(&self, mut k: usize) -> Vec<usize> {
        let n = self.group.order();
        let mut idx = vec![0usize; self.arity];
        for slot in idx.iter_mut().rev() {
            *slot = k % n;
            k /= n;
        }
        idx
    }

    /// Sparse dump `[(indices, value)]` of the entries different from zero.
    pub fn dump(&self) -> Vec<(Vec<usize>, Scalar)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (self.unflatten(k), v.clone()))
            .collect()
    }

    pub fn from_dump(group: Arc<FiniteGroup>, arity: usize, entries: &[(Vec<usize>, Scalar)]) -> Result<Self, GroupError> {
        let n = group.order();
        let mut values = vec![Scalar::zero(); n.pow(arity as u32)];
        for (idx, v) in entries {
            if idx.len() != arity || idx.iter().any(|&x| x >= n) {
                return Err(GroupError::CochainSize {
                    expected: arity,
                    got: idx.len(),
                });
            }
            let k = idx.iter().fold(0usize, |acc, &x| acc * n + x);
            values[k] = v.clone();
        }
        Ok(Cochain { group, arity, values })
    }
}

fn fmt_tuple(g: &FiniteGroup, idx: &[usize]) -> String {
    format!("({})", idx.iter().map(|&a| g.label(a)).collect::<Vec<_>>().join(","))
}

/// Pentagon identity, normalization and invertibility of a 3-cochain; every violation is listed.
pub fn is_3cocycle(phi: &Cochain3) -> Report {
    let g = phi.group().clone();
    let n = g.order();
    let mut report = Report::new(format!("3-cocycle on {}", g.name()));
    let mut inv = Check::unbounded("invertible", "triples");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = phi.get3(a, b, c);
                inv.record(!v.is_zero(), || Witness::new(fmt_tuple(&g, &[a, b, c]), v, "nonzero"));
            }
        }
    }
    report.push(inv);
    let mut pent = Check::unbounded("pentagon", "quadruples");
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = phi.get3(b, c, d) * phi.get3(a, g.mul(b, c), d) * phi.get3(a, b, c);
                    let rhs = phi.get3(a, b, g.mul(c, d)) * phi.get3(g.mul(a, b), c, d);
                    pent.compare(|| fmt_tuple(&g, &[a, b, c, d]), &lhs, &rhs);
                }
            }
        }
    }
    report.push(pent);
    let mut norm = Check::unbounded("normalized", "pairs");
    for a in 0..n {
        for b in 0..n {
            norm.compare(|| fmt_tuple(&g, &[a, 0, b]), phi.get3(a, 0, b), &Scalar::one());
        }
    }
    report.push(norm);
    report
}

/// `∂F(g,h,k) = F(g,h) F(gh,k) / (F(h,k) F(g,hk))`.
pub fn coboundary(f: &Cochain2) -> Result<Cochain3, GroupError> {
    let g = f.group().clone();
    let finv = f.inverse()?;
    Ok(Cochain::from_fn(g.clone(), 3, |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        f.get2(a, b) * f.get2(g.mul(a, b), c) * finv.get2(b, c) * finv.get2(a, g.mul(b, c))
    }))
}

/// The Z_2-valued octonion cochain exponent on bit vectors `(g_1, g_2, g_3)`.
pub fn octonion_exponent(g: [u32; 3], h: [u32; 3]) -> u32 {
    let mut f = 0;
    for i in 0..3 {
        for j in i..3 {
            f += g[i] * h[j];
        }
    }
    f += h[0] * g[1] * g[2] + g[0] * h[1] * g[2] + g[0] * g[1] * h[2];
    f % 2
}

fn sign(e: u32) -> Scalar {
    if e % 2 == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// Bits of an element of `Z_2^k` (k ≤ 3), zero-padded to three coordinates.
fn padded_bits(g: &FiniteGroup, a: usize) -> [u32; 3] {
    let c = g.components(a).expect("product group");
    let mut bits = [0u32; 3];
    bits[..c.len()].copy_from_slice(&c);
    bits
}

fn require_two_rank(g: &FiniteGroup, max: usize, exact: bool) -> Result<usize, GroupError> {
    match g.elementary_two_rank() {
        Some(k) if (exact && k == max) || (!exact && k >= 1 && k <= max) => Ok(k),
        _ => Err(GroupError::WrongGroup {
            expected: if exact { "Z2^3".into() } else { "Z2^k, k <= 3".into() },
            order: g.order(),
        }),
    }
}

/// The octonion 2-cochain `F = (-1)^f` on `Z_2^3`.
pub fn octonion_cochain(g: &Arc<FiniteGroup>) -> Result<Cochain2, GroupError> {
    require_two_rank(g, 3, true)?;
    octonion_cochain_restricted(g)
}

/// The octonion cochain on `Z_2^k` for `k ≤ 3`, embedding `Z_2^k` in the first coordinates of `Z_2^3`.
pub fn octonion_cochain_restricted(g: &Arc<FiniteGroup>) -> Result<Cochain2, GroupError> {
    require_two_rank(g, 3, false)?;
    Ok(Cochain::from_fn(g.clone(), 2, |i| {
        sign(octonion_exponent(padded_bits(g, i[0]), padded_bits(g, i[1])))
    }))
}

/// The braiding function `R(g,h) = F(g,h)/F(h,g)` of the octonion cochain.
pub fn octonion_braiding(g: &Arc<FiniteGroup>) -> Result<Cochain2, GroupError> {
    let f = octonion_cochain(g)?;
    braiding_of_cochain(&f)
}

/// `R(g,h) = F(g,h) / F(h,g)` for abelian G.
pub fn braiding_of_cochain(f: &Cochain2) -> Result<Cochain2, GroupError> {
    let g = f.group().clone();
    if !g.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let finv = f.inverse()?;
    Ok(Cochain::from_fn(g, 2, |i| f.get2(i[0], i[1]) * finv.get2(i[1], i[0])))
}

/// `φ(a,b,c) = ζ_n^{q·a·⌊(b+c)/n⌋}` on `Z_n`.
pub fn cyclic_cocycle(n: u32, q: u32) -> Result<Cochain3, GroupError> {
    let g = Arc::new(FiniteGroup::cyclic(n)?);
    let nn = n as usize;
    let mut err = None;
    let c = Cochain::from_fn(g, 3, |i| {
        let carry = ((i[1] + i[2]) / nn) as i64;
        Scalar::root_of_unity(n, q as i64 * i[0] as i64 * carry).unwrap_or_else(|e| {
            err = Some(e);
            Scalar::one()
        })
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(c),
    }
}

/// The sign-valued cochain `(-1)^{T(a,b,c)}` of a trilinear form on `Z_2^k`;
/// `terms` lists coordinate triples `(i,j,l)` contributing `a_i b_j c_l`.
pub fn trilinear_sign_cocycle(g: &Arc<FiniteGroup>, terms: &[(usize, usize, usize)]) -> Result<Cochain3, GroupError> {
    let k = g.elementary_two_rank().ok_or_else(|| GroupError::WrongGroup {
        expected: "Z2^k".into(),
        order: g.order(),
    })?;
    if terms.iter().any(|&(i, j, l)| i >= k || j >= k || l >= k) {
        return Err(GroupError::OutOfRange(k));
    }
    Ok(Cochain::from_fn(g.clone(), 3, |idx| {
        let (a, b, c) = (
            g.components(idx[0]).unwrap(),
            g.components(idx[1]).unwrap(),
            g.components(idx[2]).unwrap(),
        );
        sign(terms.iter().map(|&(i, j, l)| a[i] * b[j] * c[l]).sum())
    }))
}

/// Conditions making `r` a quasitriangular structure on `k_φ(G)` for abelian G.
pub fn check_r_function(phi: &Cochain3, r: &Cochain2) -> Report {
    let g = phi.group().clone();
    let n = g.order();
    let mut report = Report::new(format!("r-function on {}", g.name()));
    let mut left = Check::new("r_left_multiplicative", "triples");
    let mut right = Check::new("r_right_multiplicative", "triples");
    for a in 0..n {
        for b in 0..n {
            for t in 0..n {
                // r(ab,t) = r(a,t) r(b,t) φ(t,a,b) φ(a,b,t) / φ(a,t,b)
                let lhs = r.get2(g.mul(a, b), t).clone();
                let rhs = r.get2(a, t) * r.get2(b, t) * phi.get3(t, a, b) * phi.get3(a, b, t) / phi.get3(a, t, b);
                left.compare(|| fmt_tuple(&g, &[a, b, t]), &lhs, &rhs);
                // r(t,ab) = r(t,a) r(t,b) φ(a,t,b) / (φ(t,a,b) φ(a,b,t))
                let lhs = r.get2(t, g.mul(a, b)).clone();
                let rhs = r.get2(t, a) * r.get2(t, b) * phi.get3(a, t, b) / (phi.get3(t, a, b) * phi.get3(a, b, t));
                right.compare(|| fmt_tuple(&g, &[t, a, b]), &lhs, &rhs);
            }
        }
    }
    report.push(left);
    report.push(right);
    let mut norm = Check::new("r_normalized", "elements");
    for u in 0..n {
        norm.compare(|| fmt_tuple(&g, &[u, 0]), r.get2(u, 0), &Scalar::one());
        norm.compare(|| fmt_tuple(&g, &[0, u]), r.get2(0, u), &Scalar::one());
    }
    report.push(norm);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z2cubed() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic_product(&[2, 2, 2]).unwrap())
    }

    fn s3_table() -> Vec<Vec<usize>> {
        // Permutations of {0,1,2} in lexicographic order; identity first.
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let pos = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        perms
            .iter()
            .map(|a| perms.iter().map(|b| pos([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect()
    }

    #[test]
    fn s3_from_permutations() {
        let g = FiniteGroup::from_table(s3_table()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]), Err(GroupError::NotLatin(1)));
        assert_eq!(
            FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]),
            Err(GroupError::IdentityNotFirst(0))
        );
        assert_eq!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]]), Err(GroupError::Ragged(1)));
        // A latin square with identity first that is not a group (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn mixed_radix_indexing() {
        let g = z2cubed();
        assert_eq!(g.components(4).unwrap(), vec![1, 0, 0]);
        assert_eq!(g.from_components(&[0, 1, 1]), Some(3));
        assert_eq!(g.mul(4, 6), 2);
        assert_eq!(g.label(5), "101");
    }

    #[test]
    fn octonion_coboundary_is_cross_product_sign() {
        let g = z2cubed();
        let f = octonion_cochain(&g).unwrap();
        let phi = coboundary(&f).unwrap();
        let expected = Cochain::from_fn(g.clone(), 3, |i| {
            let (a, b, c) = (padded_bits(&g, i[0]), padded_bits(&g, i[1]), padded_bits(&g, i[2]));
            let cross = [a[1] * b[2] + a[2] * b[1], a[2] * b[0] + a[0] * b[2], a[0] * b[1] + a[1] * b[0]];
            sign(cross[0] * c[0] + cross[1] * c[1] + cross[2] * c[2])
        });
        assert_eq!(phi, expected);
        assert!(is_3cocycle(&phi).passed());
    }

    #[test]
    fn octonion_braiding_table() {
        let g = z2cubed();
        let r = octonion_braiding(&g).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let want = if a == 0 || b == 0 || a == b { 1 } else { -1 };
                assert_eq!(r.get2(a, b), &Scalar::from_int(want), "R({a},{b})");
            }
        }
        let phi = coboundary(&octonion_cochain(&g).unwrap()).unwrap();
        assert!(check_r_function(&phi, &r).passed());
    }

    #[test]
    fn octonion_cochain_requires_z2_cubed() {
        let g = Arc::new(FiniteGroup::cyclic(8).unwrap());
        assert!(matches!(octonion_cochain(&g), Err(GroupError::WrongGroup { .. })));
        let g2 = Arc::new(FiniteGroup::cyclic_product(&[2, 2]).unwrap());
        assert!(octonion_cochain(&g2).is_err());
        assert!(octonion_cochain_restricted(&g2).is_ok());
    }

    #[test]
    fn restricted_octonion_coboundary_is_trivial_on_small_groups() {
        for k in [1usize, 2] {
            let g = Arc::new(FiniteGroup::cyclic_product(&vec![2; k]).unwrap());
            let phi = coboundary(&octonion_cochain_restricted(&g).unwrap()).unwrap();
            assert_eq!(phi, Cochain::trivial(g, 3));
        }
    }

    #[test]
    fn cyclic_cocycles_pass() {
        for n in 1..=6u32 {
            for q in 0..n {
                assert!(is_3cocycle(&cyclic_cocycle(n, q).unwrap()).passed(), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn perturbed_cocycle_lists_violations() {
        let mut phi = cyclic_cocycle(3, 1).unwrap();
        phi.values[(3 + 2) * 3 + 2] = Scalar::from_int(2);
        let rep = is_3cocycle(&phi);
        let pent = rep.check("pentagon").unwrap();
        assert!(pent.failed > 0);
        assert_eq!(pent.failed, pent.witnesses.len());
    }

    #[test]
    fn trilinear_forms_are_cocycles() {
        let g = Arc::new(FiniteGroup::cyclic_product(&[2, 2]).unwrap());
        let phi = trilinear_sign_cocycle(&g, &[(0, 1, 1)]).unwrap();
        assert!(is_3cocycle(&phi).passed());
        assert_ne!(phi, Cochain::trivial(g, 3));
    }

    proptest! {
        #[test]
        fn coboundaries_are_cocycles(vals in proptest::collection::vec((1i64..5, prop::bool::ANY), 36)) {
            let g = Arc::new(FiniteGroup::from_table(s3_table()).unwrap());
            let f = Cochain::from_fn(g.clone(), 2, |i| {
                if i[0] == 0 || i[1] == 0 { return Scalar::one(); }
                let (m, neg) = vals[i[0] * 6 + i[1]];
                Scalar::from_int(if neg { -m } else { m })
            });
            let phi = coboundary(&f).unwrap();
            prop_assert!(is_3cocycle(&phi).passed());
        }
    }
}
