use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{LabError, Result};
use crate::exact_arith::{zeta_pow, CycloNumber, Rational};
use crate::reflection_group::MonomialMatrix;

/// Exponent vector of x_1^{a_1} ⋯ x_n^{a_n}.
///
/// Ordered graded lexicographically: by total degree, then by a_1, a_2, … .
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial {
            deg: exps.iter().sum(),
            exps,
        }
    }

    pub fn one(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Self::new(exps)
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut out = self.clone();
        out.exps[i] += 1;
        out.deg += 1;
        out
    }

    /// self / x_i, `None` when x_i does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        (self.exps[i] > 0).then(|| {
            let mut out = self.clone();
            out.exps[i] -= 1;
            out.deg -= 1;
            out
        })
    }

    /// All monomials of degree k in n variables, in decreasing grlex order.
    pub fn all_of_degree(n: usize, k: usize) -> Vec<Monomial> {
        fn rec(i: usize, n: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == n {
                cur.push(rest);
                out.push(Monomial::new(cur.clone()));
                cur.pop();
                return;
            }
            for a in (0..=rest).rev() {
                cur.push(a);
                rec(i + 1, n, rest - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, k as u32, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// dim ℂ[x_1..x_n]_k = C(k+n−1, n−1).
pub fn graded_dim(n: usize, k: usize) -> usize {
    let mut v: u128 = 1;
    for i in 1..n {
        v = v * (k + i) as u128 / i as u128;
    }
    v as usize
}

/// Polynomial in x_1..x_n over ℚ(ζ_m). No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    order: u32,
    nvars: usize,
    terms: BTreeMap<Monomial, CycloNumber>,
}

impl Poly {
    pub fn zero(order: u32, nvars: usize) -> Self {
        Poly {
            order,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: u32, nvars: usize, c: CycloNumber) -> Self {
        Self::term(order, c, Monomial::one(nvars))
    }

    pub fn one(order: u32, nvars: usize) -> Self {
        Self::constant(order, nvars, CycloNumber::one(order))
    }

    pub fn var(order: u32, nvars: usize, i: usize) -> Self {
        Self::monomial(order, Monomial::var(nvars, i))
    }

    pub fn monomial(order: u32, mono: Monomial) -> Self {
        Self::term(order, CycloNumber::one(order), mono)
    }

    pub fn term(order: u32, c: CycloNumber, mono: Monomial) -> Self {
        let mut p = Self::zero(order, mono.nvars());
        p.add_term(mono, &c);
        p
    }

    pub fn from_terms(order: u32, nvars: usize, terms: impl IntoIterator<Item = (Monomial, CycloNumber)>) -> Self {
        let mut p = Self::zero(order, nvars);
        for (mono, c) in terms {
            p.add_term(mono, &c);
        }
        p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycloNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> CycloNumber {
        self.terms.get(mono).cloned().unwrap_or_else(|| CycloNumber::zero(self.order))
    }

    pub fn coeff_ref(&self, mono: &Monomial) -> Option<&CycloNumber> {
        self.terms.get(mono)
    }

    /// Greatest monomial in grlex order.
    pub fn leading(&self) -> Option<(&Monomial, &CycloNumber)> {
        self.terms.iter().next_back()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Adds c·mono in place.
    pub fn add_term(&mut self, mono: Monomial, c: &CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// self += c·other.
    pub fn add_scaled(&mut self, other: &Poly, c: &CycloNumber) {
        if c.is_zero() {
            return;
        }
        for (mono, a) in &other.terms {
            self.add_term(mono.clone(), &(a * c));
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &CycloNumber::one(self.order));
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, &CycloNumber::from_int(self.order, -1));
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&CycloNumber::from_int(self.order, -1))
    }

    pub fn scale(&self, c: &CycloNumber) -> Poly {
        if c.is_zero() {
            return Self::zero(self.order, self.nvars);
        }
        Poly {
            order: self.order,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Poly {
        if q.is_zero() {
            return Self::zero(self.order, self.nvars);
        }
        Poly {
            order: self.order,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.scale(q))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Self::zero(self.order, self.nvars);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.mul(mb), &(a * b));
            }
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            order: self.order,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(mono), v.clone())).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Poly {
        Poly {
            order: self.order,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul_var(i), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Self::one(self.order, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// ∂f/∂x_i.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Self::zero(self.order, self.nvars);
        for (mono, c) in &self.terms {
            if let Some(lower) = mono.div_var(i) {
                let e = Rational::from_integer(mono.exps[i].into());
                out.add_term(lower, &c.scale(&e));
            }
        }
        out
    }

    /// Homogeneous component of degree k.
    pub fn homogeneous_part(&self, k: usize) -> Poly {
        Poly {
            order: self.order,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.degree() == k)
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect(),
        }
    }

    /// The contragredient action on h*-variables: w·x_k = ε^{−e_k} x_{π(k)}.
    pub fn act(&self, w: &MonomialMatrix) -> Poly {
        let n = self.nvars;
        let m = self.order as i64;
        let perm = w.perm();
        let exps = w.exps();
        let mut out = Self::zero(self.order, n);
        for (mono, c) in &self.terms {
            let mut b = vec![0u32; n];
            let mut s: i64 = 0;
            for k in 0..n {
                b[perm[k]] += mono.exps[k];
                s += mono.exps[k] as i64 * exps[k] as i64;
            }
            let z = (-s).rem_euclid(m);
            let coeff = if z == 0 { c.clone() } else { c * &zeta_pow(self.order, z) };
            out.add_term(Monomial::new(b), &coeff);
        }
        out
    }

    /// Exact quotient f / x_i. Errors if some term is not divisible.
    pub fn div_var(&self, i: usize) -> Result<Poly> {
        let mut out = Self::zero(self.order, self.nvars);
        for (mono, c) in &self.terms {
            match mono.div_var(i) {
                Some(lower) => out.add_term(lower, c),
                None => return Err(LabError::InexactDivision { i: i + 1, j: i + 1 }),
            }
        }
        Ok(out)
    }

    /// Exact quotient f / (x_i − c·x_j) for i ≠ j. Errors on a nonzero remainder.
    ///
    /// Terms are processed in decreasing x_i-degree: each c'·x^α moves
    /// c'·x^{α−e_i} into the quotient and leaves c·c'·x^{α−e_i+e_j} behind.
    pub fn div_linear(&self, i: usize, j: usize, c: &CycloNumber) -> Result<Poly> {
        assert_ne!(i, j);
        let top = self.terms.keys().map(|mono| mono.exps[i]).max().unwrap_or(0) as usize;
        let mut buckets: Vec<BTreeMap<Monomial, CycloNumber>> = vec![BTreeMap::new(); top + 1];
        for (mono, a) in &self.terms {
            buckets[mono.exps[i] as usize].insert(mono.clone(), a.clone());
        }
        let mut quot = Self::zero(self.order, self.nvars);
        for level in (1..=top).rev() {
            let bucket = std::mem::take(&mut buckets[level]);
            for (mono, a) in bucket {
                if a.is_zero() {
                    continue;
                }
                let lower = mono.div_var(i).unwrap();
                let moved = lower.mul_var(j);
                let entry = buckets[level - 1]
                    .entry(moved)
                    .or_insert_with(|| CycloNumber::zero(self.order));
                *entry += &(c * &a);
                quot.add_term(lower, &a);
            }
        }
        if buckets[0].values().any(|a| !a.is_zero()) {
            return Err(LabError::InexactDivision { i: i + 1, j: j + 1 });
        }
        Ok(quot)
    }

    /// Evaluation at a point of ℚ(ζ_m)^n.
    pub fn eval(&self, point: &[CycloNumber]) -> CycloNumber {
        let mut total = CycloNumber::zero(self.order);
        for (mono, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&mono.exps) {
                v = &v * &x.pow(e as u64);
            }
            total += &v;
        }
        total
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(mono, c)| format!("({c})*{mono}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, zeta_pow};
    use crate::reflection_group::{enumerate_group, GroupParams};
    use proptest::prelude::*;

    fn x(m: u32, n: usize, i: usize) -> Poly {
        Poly::var(m, n, i)
    }

    #[test]
    fn monomials_of_degree() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms.len(), graded_dim(3, 2));
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(ms[0].exps(), &[2, 0, 0]);
        assert_eq!(graded_dim(3, 11), 78);
        assert_eq!(graded_dim(2, 7), 8);
    }

    #[test]
    fn action_examples() {
        let params = GroupParams::new(4, 2, 3).unwrap();
        let f = x(4, 3, 0).mul(&x(4, 3, 1)).add(&x(4, 3, 2));
        assert_eq!(f.act(&MonomialMatrix::identity(4, 3)), f);
        let s = MonomialMatrix::s(&params, 0, 2);
        assert_eq!(x(4, 3, 0).act(&s), x(4, 3, 0).scale(&zeta_pow(4, -2)));
        for l in 0..4 {
            let sig = MonomialMatrix::sigma(&params, 0, 1, l);
            assert_eq!(x(4, 3, 0).act(&sig), x(4, 3, 1).scale(&zeta_pow(4, l)));
        }
    }

    #[test]
    fn action_matches_hstar_matrix_oracle() {
        let params = GroupParams::new(4, 2, 3).unwrap();
        for w in enumerate_group(&params).unwrap() {
            let a = w.matrix_hstar();
            for k in 0..3 {
                let img = x(4, 3, k).act(&w);
                for row in 0..3 {
                    assert_eq!(&img.coeff(&Monomial::var(3, row)), a.get(row, k));
                }
            }
        }
    }

    #[test]
    fn linear_division() {
        let m = 6;
        let c = zeta_pow(m, 2);
        let lin = x(m, 3, 0).sub(&x(m, 3, 2).scale(&c));
        let q = x(m, 3, 1).pow(2).add(&x(m, 3, 0).mul(&x(m, 3, 2)).scale(&CycloNumber::from_rational(m, rat(3, 5))));
        let f = lin.mul(&q);
        assert_eq!(f.div_linear(0, 2, &c).unwrap(), q);
        let bad = f.add(&x(m, 3, 1));
        assert!(matches!(bad.div_linear(0, 2, &c), Err(LabError::InexactDivision { .. })));
    }

    #[test]
    fn derivative_and_div_var() {
        let f = x(3, 2, 0).pow(3).mul(&x(3, 2, 1));
        assert_eq!(f.derivative(0), x(3, 2, 0).pow(2).mul(&x(3, 2, 1)).scale(&CycloNumber::from_int(3, 3)));
        assert_eq!(f.div_var(1).unwrap(), x(3, 2, 0).pow(3));
        assert!(f.add(&Poly::one(3, 2)).div_var(0).is_err());
    }

    fn arb_poly(m: u32, n: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, n), -5i64..5, 0i64..m as i64), 0..6).prop_map(
            move |terms| {
                Poly::from_terms(
                    m,
                    n,
                    terms
                        .into_iter()
                        .map(|(e, c, z)| (Monomial::new(e), zeta_pow(m, z).scale(&rat(c, 1)))),
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn action_is_a_group_action(
            f in arb_poly(4, 3),
            (u, v) in {
                let elems = enumerate_group(&GroupParams::new(4, 2, 3).unwrap()).unwrap();
                (prop::sample::select(elems.clone()), prop::sample::select(elems))
            }
        ) {
            prop_assert_eq!(f.act(&u.compose(&v)), f.act(&v).act(&u));
        }

        #[test]
        fn action_is_multiplicative(f in arb_poly(3, 2), g in arb_poly(3, 2), k in 0usize..18) {
            let w = enumerate_group(&GroupParams::new(3, 1, 2).unwrap()).unwrap()[k].clone();
            prop_assert_eq!(f.mul(&g).act(&w), f.act(&w).mul(&g.act(&w)));
        }
    }
}
