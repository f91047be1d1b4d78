//! The imprimitive reflection groups G(m,p,n) realised as monomial matrices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{LabError, Result};
use crate::exact_arith::{zeta_pow, CycloMatrix, CycloNumber};
use crate::multipartition;

/// Default cap on group orders and graded-piece sizes.
pub const DEFAULT_MAX_DIM: u128 = 20_000;

/// Reads the size cap, honouring `CHEREDNIK_LAB_MAX_DIM`.
pub fn max_dim() -> u128 {
    std::env::var("CHEREDNIK_LAB_MAX_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// Validated parameters (m, p, n) with d = m/p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    pub m: u32,
    pub p: u32,
    pub n: usize,
    pub d: u32,
}

impl GroupParams {
    pub fn new(m: u32, p: u32, n: usize) -> Result<Self> {
        if m == 0 || p == 0 {
            return Err(LabError::InvalidParams("m and p must be positive".into()));
        }
        if m % p != 0 {
            return Err(LabError::InvalidParams(format!("p must divide m (got m = {m}, p = {p})")));
        }
        if m <= p {
            return Err(LabError::InvalidParams(format!(
                "m > p required, the groups G(m,m,n) are excluded (got m = {m}, p = {p})"
            )));
        }
        if n < 2 {
            return Err(LabError::InvalidParams(format!("n >= 2 required (got n = {n})")));
        }
        Ok(GroupParams { m, p, n, d: m / p })
    }

    /// n = 2 with p even: the reflections σ_12^{(ℓ)} split into two classes by the parity of ℓ.
    pub fn split_sigma_classes(&self) -> bool {
        self.n == 2 && self.p % 2 == 0
    }

    /// |G(m,p,n)| = m^n n! / p.
    pub fn order(&self) -> u128 {
        let mut o = (self.m as u128).pow(self.n as u32);
        for k in 2..=self.n as u128 {
            o *= k;
        }
        o / self.p as u128
    }

    /// The singular degree r = m(n−1) + d + 1.
    pub fn r(&self) -> usize {
        self.m as usize * (self.n - 1) + self.d as usize + 1
    }

    /// n + m·C(n,2), the lowest h-weight shift of the polynomial representation.
    pub fn shift(&self) -> usize {
        self.n + self.m as usize * self.n * (self.n - 1) / 2
    }

    pub fn reflection_count(&self) -> usize {
        self.n * (self.d as usize - 1) + self.m as usize * self.n * (self.n - 1) / 2
    }

    /// Degrees of the basic invariants: m, 2m, …, (n−1)m, nd.
    pub fn invariant_degrees(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = (1..self.n).map(|i| i * self.m as usize).collect();
        degs.push(self.n * self.d as usize);
        degs
    }

    /// The generating reflections s_1^p, σ_12^{(0)}, σ_12^{(1)}, σ_{i,i+1}^{(0)}.
    pub fn generators(&self) -> Vec<MonomialMatrix> {
        let mut gens = vec![
            MonomialMatrix::s(self, 0, self.p as i64),
            MonomialMatrix::sigma(self, 0, 1, 0),
            MonomialMatrix::sigma(self, 0, 1, 1),
        ];
        for i in 1..self.n - 1 {
            gens.push(MonomialMatrix::sigma(self, i, i + 1, 0));
        }
        gens
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.m, self.p, self.n)
    }
}

/// A monomial matrix: w·y_i = ε^{exps_i} y_{perm(i)} on h, indices 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    m: u32,
    perm: Vec<usize>,
    exps: Vec<u32>,
}

impl MonomialMatrix {
    pub fn new(m: u32, perm: Vec<usize>, exps: Vec<i64>) -> Self {
        assert_eq!(perm.len(), exps.len());
        let mut seen = vec![false; perm.len()];
        for &j in &perm {
            assert!(j < perm.len() && !seen[j], "not a permutation: {perm:?}");
            seen[j] = true;
        }
        let exps = exps.iter().map(|&e| e.rem_euclid(m as i64) as u32).collect();
        MonomialMatrix { m, perm, exps }
    }

    pub fn identity(m: u32, n: usize) -> Self {
        MonomialMatrix {
            m,
            perm: (0..n).collect(),
            exps: vec![0; n],
        }
    }

    /// s_i^k: scales y_i by ε^k.
    pub fn s(params: &GroupParams, i: usize, k: i64) -> Self {
        let mut exps = vec![0i64; params.n];
        exps[i] = k;
        Self::new(params.m, (0..params.n).collect(), exps)
    }

    /// σ_ij^{(ℓ)}: y_i ↦ ε^{−ℓ} y_j, y_j ↦ ε^{ℓ} y_i.
    pub fn sigma(params: &GroupParams, i: usize, j: usize, l: i64) -> Self {
        let mut perm: Vec<usize> = (0..params.n).collect();
        perm.swap(i, j);
        let mut exps = vec![0i64; params.n];
        exps[i] = -l;
        exps[j] = l;
        Self::new(params.m, perm, exps)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0) && self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Membership in G(m,p,n): Σ exps ≡ 0 mod p.
    pub fn in_group(&self, params: &GroupParams) -> bool {
        self.m == params.m
            && self.n() == params.n
            && self.exps.iter().map(|&e| e as u64).sum::<u64>() % params.p as u64 == 0
    }

    /// Product self·other (apply other first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!((self.m, self.n()), (other.m, other.n()));
        let n = self.n();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            exps[i] = (other.exps[i] + self.exps[j]) % self.m;
        }
        MonomialMatrix { m: self.m, perm, exps }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut exps = vec![0; n];
        for i in 0..n {
            let j = self.perm[i];
            perm[j] = i;
            exps[j] = (self.m - self.exps[i]) % self.m;
        }
        MonomialMatrix { m: self.m, perm, exps }
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    /// Cycles of the permutation as (length, total exponent mod m), in order of smallest element.
    pub fn cycles(&self) -> Vec<(usize, u32)> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (mut len, mut total, mut i) = (0, 0u32, start);
            while !seen[i] {
                seen[i] = true;
                len += 1;
                total = (total + self.exps[i]) % self.m;
                i = self.perm[i];
            }
            out.push((len, total));
        }
        out
    }

    pub fn perm_sign(&self) -> i64 {
        let odd = self.cycles().iter().filter(|(len, _)| len % 2 == 0).count() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }

    /// dim ker(1 − w) on h: cycles whose total exponent vanishes mod m.
    pub fn fixed_space_dim(&self) -> usize {
        self.cycles().iter().filter(|&&(_, e)| e == 0).count()
    }

    /// det of w on h: sgn(π)·ε^{Σ exps}.
    pub fn det_h(&self) -> CycloNumber {
        let total: i64 = self.exps.iter().map(|&e| e as i64).sum();
        zeta_pow(self.m, total).scale(&crate::exact_arith::int(self.perm_sign()))
    }

    /// det of w on h* (inverse of det_h).
    pub fn det_char(&self) -> CycloNumber {
        let total: i64 = self.exps.iter().map(|&e| e as i64).sum();
        zeta_pow(self.m, -total).scale(&crate::exact_arith::int(self.perm_sign()))
    }

    /// Coefficients of det(1 − t·w) on h*, a polynomial of degree n in t.
    ///
    /// A cycle of length L and total exponent E contributes the factor 1 − ε^{−E} t^L.
    pub fn charpoly_hstar(&self) -> Vec<CycloNumber> {
        let mut acc = vec![CycloNumber::one(self.m)];
        for (len, e) in self.cycles() {
            let mut next = acc.clone();
            next.resize(acc.len() + len, CycloNumber::zero(self.m));
            let c = zeta_pow(self.m, -(e as i64));
            for (k, a) in acc.iter().enumerate() {
                if !a.is_zero() {
                    next[k + len] -= &(a * &c);
                }
            }
            acc = next;
        }
        acc
    }

    /// Trace of w on ∧^i h*.
    pub fn ext_power_char(&self, i: usize) -> CycloNumber {
        let cp = self.charpoly_hstar();
        let c = cp.get(i).cloned().unwrap_or_else(|| CycloNumber::zero(self.m));
        if i % 2 == 1 {
            -c
        } else {
            c
        }
    }

    /// Explicit matrix of w on h in the basis y_1..y_n.
    pub fn matrix_h(&self) -> CycloMatrix {
        let mut a = CycloMatrix::zeros(self.m, self.n(), self.n());
        for i in 0..self.n() {
            a.set(self.perm[i], i, zeta_pow(self.m, self.exps[i] as i64));
        }
        a
    }

    /// Explicit matrix of w on h* in the dual basis x_1..x_n: w·x_k = ε^{−exps_k} x_{perm(k)}.
    pub fn matrix_hstar(&self) -> CycloMatrix {
        let mut a = CycloMatrix::zeros(self.m, self.n(), self.n());
        for k in 0..self.n() {
            a.set(self.perm[k], k, zeta_pow(self.m, -(self.exps[k] as i64)));
        }
        a
    }

    /// Compact label such as `[2,1;0,3]` (1-based permutation images; exponents).
    pub fn label(&self) -> String {
        let perm: Vec<String> = self.perm.iter().map(|j| (j + 1).to_string()).collect();
        let exps: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("[{};{}]", perm.join(","), exps.join(","))
    }
}

impl fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.label())
    }
}

/// Trace of w on ∧^i h* as the sum of principal i×i minors of its explicit
/// h*-matrix. Independent of the cycle-based [`MonomialMatrix::ext_power_char`].
pub fn ext_power_char_by_minors(w: &MonomialMatrix, i: usize) -> CycloNumber {
    let a = w.matrix_hstar();
    let n = a.rows();
    let mut total = CycloNumber::zero(a.order());
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        total += &a.minor(&idx, &idx).det();
    }
    total
}

fn check_cap(params: &GroupParams) -> Result<()> {
    let cap = max_dim();
    let required = params.order();
    if required > cap {
        return Err(LabError::CapExceeded {
            what: "group order",
            required,
            cap,
        });
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// All elements of G(m,p,n), permutations in lexicographic order then exponent vectors.
pub fn enumerate_group(params: &GroupParams) -> Result<Vec<MonomialMatrix>> {
    check_cap(params)?;
    let n = params.n;
    let m = params.m;
    let mut out = Vec::with_capacity(params.order() as usize);
    let total_exps = (m as usize).pow(n as u32);
    for perm in permutations(n) {
        for code in 0..total_exps {
            let mut c = code;
            let mut exps = vec![0u32; n];
            for e in exps.iter_mut().rev() {
                *e = (c % m as usize) as u32;
                c /= m as usize;
            }
            if exps.iter().map(|&e| e as u64).sum::<u64>() % params.p as u64 == 0 {
                out.push(MonomialMatrix {
                    m,
                    perm: perm.clone(),
                    exps,
                });
            }
        }
    }
    Ok(out)
}

/// The complex reflections: elements with rank(1 − w) = 1.
pub fn reflections(params: &GroupParams) -> Result<Vec<MonomialMatrix>> {
    Ok(enumerate_group(params)?
        .into_iter()
        .filter(|w| w.fixed_space_dim() + 1 == params.n)
        .collect())
}

/// Conjugacy classes of the listed elements (which must be a union of classes),
/// each class sorted, classes ordered by their least element.
fn classes_of(params: &GroupParams, elements: Vec<MonomialMatrix>) -> Vec<Vec<MonomialMatrix>> {
    let gens = params.generators();
    let mut assigned: HashSet<MonomialMatrix> = HashSet::new();
    let mut classes = Vec::new();
    for w in elements {
        if assigned.contains(&w) {
            continue;
        }
        let mut class = vec![w.clone()];
        let mut queue = VecDeque::from([w.clone()]);
        assigned.insert(w);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.conjugate_by(g);
                if assigned.insert(y.clone()) {
                    class.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        class.sort();
        classes.push(class);
    }
    classes.sort_by(|a, b| a[0].cmp(&b[0]));
    classes
}

/// Reflections partitioned into conjugacy classes.
pub fn reflection_classes(params: &GroupParams) -> Result<Vec<Vec<MonomialMatrix>>> {
    Ok(classes_of(params, reflections(params)?))
}

/// All conjugacy classes of G(m,p,n).
pub fn conjugacy_classes(params: &GroupParams) -> Result<Vec<Vec<MonomialMatrix>>> {
    Ok(classes_of(params, enumerate_group(params)?))
}

/// One representative (the least element) per conjugacy class, with the class size.
pub fn class_representatives(params: &GroupParams) -> Result<Vec<(MonomialMatrix, usize)>> {
    Ok(conjugacy_classes(params)?
        .into_iter()
        .map(|c| (c[0].clone(), c.len()))
        .collect())
}

/// Number of irreducible representations, counted combinatorially as
/// Σ over ϖ-orbits of m-multipartitions of n of p/o_λ.
pub fn irrep_count(params: &GroupParams) -> Result<usize> {
    let reps = multipartition::orbit_representatives(params)?;
    Ok(reps
        .iter()
        .map(|lam| params.p as usize / multipartition::orbit_size(lam, params))
        .sum())
}

/// Tally of fixed-space dimensions over the group: dim → number of elements.
pub fn fixed_dim_histogram(params: &GroupParams) -> Result<HashMap<usize, usize>> {
    let mut h = HashMap::new();
    for w in enumerate_group(params)? {
        *h.entry(w.fixed_space_dim()).or_insert(0) += 1;
    }
    Ok(h)
}
