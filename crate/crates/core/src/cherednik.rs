//! The rational Cherednik algebra of G(m,p,n) in its Dunkl representation on
//! ℂ[h], the parameter embedding into G(m,1,n), the central element z and
//! the one-dimensional module condition.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::exact_arith::{int, zeta_pow, CycloNumber, Rational};
use crate::poly_algebra::Poly;
use crate::reflection_group::{GroupParams, MonomialMatrix};

/// Which linear relation the parameters satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// No constraint.
    None,
    /// d·κ_1 + m(n−1)·κ_00 = −1: the one-dimensional module exists.
    Unit,
    /// d·κ_1 + m(n−1)·κ_00 = −1 − m(n−1) − d: L(triv) is finite dimensional.
    Main,
}

impl Relation {
    /// Required value of d·κ_1 + m(n−1)·κ_00, if any.
    pub fn target(&self, params: &GroupParams) -> Option<Rational> {
        let mn = params.m as i64 * (params.n as i64 - 1);
        match self {
            Relation::None => None,
            Relation::Unit => Some(int(-1)),
            Relation::Main => Some(int(-1 - mn - params.d as i64)),
        }
    }
}

impl FromStr for Relation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Relation::None),
            "unit" => Ok(Relation::Unit),
            "main" => Ok(Relation::Main),
            other => Err(format!("unknown relation '{other}' (expected none, unit or main)")),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::None => "none",
            Relation::Unit => "unit",
            Relation::Main => "main",
        };
        write!(f, "{s}")
    }
}

/// Parameters κ_00, κ_1..κ_{d−1} (κ_0 = κ_d = 0). When n = 2 and p is even the
/// two classes of reflections σ_12^{(ℓ)} share the single value κ_00.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherednikParams {
    pub kappa00: Rational,
    pub kappa: Vec<Rational>,
    pub relation: Relation,
}

impl CherednikParams {
    pub fn new(params: &GroupParams, kappa00: Rational, kappa: Vec<Rational>, relation: Relation) -> Result<Self> {
        if kappa.len() + 1 != params.d as usize {
            return Err(LabError::InvalidCherednikParams(format!(
                "expected {} values kappa_1..kappa_{{d-1}}, got {}",
                params.d - 1,
                kappa.len()
            )));
        }
        let cp = CherednikParams {
            kappa00,
            kappa,
            relation,
        };
        if let Some(target) = relation.target(params) {
            let value = cp.relation_value(params);
            if value != target {
                return Err(LabError::InvalidCherednikParams(format!(
                    "relation '{relation}' needs d*kappa_1 + m(n-1)*kappa_00 = {target}, got {value}"
                )));
            }
        }
        Ok(cp)
    }

    pub fn zero(params: &GroupParams) -> Self {
        CherednikParams {
            kappa00: Rational::zero(),
            kappa: vec![Rational::zero(); params.d as usize - 1],
            relation: Relation::None,
        }
    }

    /// κ_j for 0 <= j <= d, with κ_0 = κ_d = 0.
    pub fn kappa(&self, j: usize) -> Rational {
        if j == 0 || j > self.kappa.len() {
            Rational::zero()
        } else {
            self.kappa[j - 1].clone()
        }
    }

    /// d·κ_1 + m(n−1)·κ_00.
    pub fn relation_value(&self, params: &GroupParams) -> Rational {
        let mn = int(params.m as i64 * (params.n as i64 - 1));
        int(params.d as i64) * self.kappa(1) + mn * &self.kappa00
    }

    /// Seeded generic parameters: ChaCha20 seeded from `seed`, attempt k uses
    /// the k-th draw of the stream. Free values have numerators uniform among
    /// nonzero integers in (−2^30, 2^30) and denominators uniform in [2^29, 2^30);
    /// κ_1 is solved from the relation when one is imposed.
    pub fn sample(params: &GroupParams, relation: Relation, seed: u64, attempt: usize) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let d = params.d as usize;
        let draw = |rng: &mut ChaCha20Rng| -> Rational {
            let mut num: i64 = 0;
            while num == 0 {
                num = rng.gen_range(-(1i64 << 30) + 1..(1i64 << 30));
            }
            let den: i64 = rng.gen_range((1i64 << 29)..(1i64 << 30));
            Rational::new(BigInt::from(num), BigInt::from(den))
        };
        let mut sample = CherednikParams::zero(params);
        for _ in 0..=attempt {
            let kappa00 = draw(&mut rng);
            let kappa: Vec<Rational> = (1..d).map(|_| draw(&mut rng)).collect();
            sample = CherednikParams {
                kappa00,
                kappa,
                relation,
            };
        }
        if let Some(target) = relation.target(params) {
            let mn = int(params.m as i64 * (params.n as i64 - 1));
            sample.kappa[0] = (target - mn * &sample.kappa00) / int(params.d as i64);
        }
        sample
    }
}

/// Finitely supported element of the group algebra ℚ(ζ_m)[W].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    order: u32,
    terms: BTreeMap<MonomialMatrix, CycloNumber>,
}

impl GroupAlgebraElement {
    pub fn zero(order: u32) -> Self {
        GroupAlgebraElement {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, w: MonomialMatrix, c: &CycloNumber) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(|| CycloNumber::zero(self.order));
        *entry += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialMatrix, &CycloNumber)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    /// Action on a polynomial.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(f.order(), f.nvars());
        for (w, c) in self.terms() {
            out.add_scaled(&f.act(w), c);
        }
        out
    }

    /// Value on the trivial representation: the sum of coefficients.
    pub fn trivial_value(&self) -> CycloNumber {
        let mut total = CycloNumber::zero(self.order);
        for (_, c) in self.terms() {
            total += c;
        }
        total
    }

    /// Trace on ∧^i h*.
    pub fn ext_power_trace(&self, i: usize) -> CycloNumber {
        let mut total = CycloNumber::zero(self.order);
        for (w, c) in self.terms() {
            total += &(c * &w.ext_power_char(i));
        }
        total
    }
}

/// Σ_{r=0}^{d−1} ε^{prj} s_a^{pr}.
fn cyclic_sum(params: &GroupParams, a: usize, j: usize) -> Vec<(MonomialMatrix, CycloNumber)> {
    let p = params.p as i64;
    (0..params.d as i64)
        .map(|r| {
            (
                MonomialMatrix::s(params, a, p * r),
                zeta_pow(params.m, p * r * j as i64),
            )
        })
        .collect()
}

/// The Dunkl operator T_{y_a} on ℂ[h] (a is 0-based):
///
/// T_a f = ∂_a f + Σ_{j=1}^{d−1} κ_j (Σ_r ε^{prj} s_a^{pr} f)/x_a
///       + κ_00 Σ_{i<j, a∈{i,j}} Σ_ℓ (δ_ia − ε^ℓ δ_ja)(f − σ_ij^{(ℓ)} f)/(x_i − ε^ℓ x_j).
///
/// Every division is exact; a nonzero remainder is reported as an error.
pub fn dunkl_apply(a: usize, f: &Poly, params: &GroupParams, cp: &CherednikParams) -> Result<Poly> {
    let m = params.m;
    let n = params.n;
    let mut out = f.derivative(a);
    for j in 1..params.d as usize {
        let kj = cp.kappa(j);
        if kj.is_zero() {
            continue;
        }
        let mut g = Poly::zero(m, n);
        for (w, c) in cyclic_sum(params, a, j) {
            g.add_scaled(&f.act(&w), &c);
        }
        out.add_scaled(&g.div_var(a)?, &CycloNumber::from_rational(m, kj));
    }
    if !cp.kappa00.is_zero() {
        let k00 = CycloNumber::from_rational(m, cp.kappa00.clone());
        for other in (0..n).filter(|&o| o != a) {
            let (i, j) = if a < other { (a, other) } else { (other, a) };
            for l in 0..m as i64 {
                let sigma = MonomialMatrix::sigma(params, i, j, l);
                let diff = f.sub(&f.act(&sigma));
                if diff.is_zero() {
                    continue;
                }
                let c = zeta_pow(m, l);
                let q = diff.div_linear(i, j, &c)?;
                let pairing = if a == i { CycloNumber::one(m) } else { -c };
                out.add_scaled(&q, &(&pairing * &k00));
            }
        }
    }
    Ok(out)
}

/// The group-algebra element [y_a, x_b] − δ_ab:
///
/// δ_ab Σ_{j=0}^{d−1} (κ_{j+1} − κ_j) Σ_r ε^{prj} s_a^{pr}
///   + κ_00 Σ_{i<j} Σ_ℓ (δ_ia − ε^ℓ δ_ja)(δ_ib − ε^{−ℓ} δ_jb) σ_ij^{(ℓ)}.
pub fn commutator_element(a: usize, b: usize, params: &GroupParams, cp: &CherednikParams) -> GroupAlgebraElement {
    let m = params.m;
    let mut z = GroupAlgebraElement::zero(m);
    if a == b {
        z.add_term(MonomialMatrix::identity(m, params.n), &CycloNumber::one(m));
        for j in 0..params.d as usize {
            let coeff = cp.kappa(j + 1) - cp.kappa(j);
            if coeff.is_zero() {
                continue;
            }
            for (w, c) in cyclic_sum(params, a, j) {
                z.add_term(w, &c.scale(&coeff));
            }
        }
    }
    let k00 = CycloNumber::from_rational(m, cp.kappa00.clone());
    let delta = |x: usize, y: usize| if x == y { CycloNumber::one(m) } else { CycloNumber::zero(m) };
    for i in 0..params.n {
        for j in i + 1..params.n {
            for l in 0..m as i64 {
                let left = &delta(i, a) - &(&zeta_pow(m, l) * &delta(j, a));
                let right = &delta(i, b) - &(&zeta_pow(m, -l) * &delta(j, b));
                let c = &(&left * &right) * &k00;
                z.add_term(MonomialMatrix::sigma(params, i, j, l), &c);
            }
        }
    }
    z
}

/// Checks T_a(x_b f) − x_b T_a(f) = commutator_element(a, b)·f.
pub fn commutator_check(a: usize, b: usize, f: &Poly, params: &GroupParams, cp: &CherednikParams) -> Result<bool> {
    let lhs = dunkl_apply(a, &f.mul_var(b), params, cp)?.sub(&dunkl_apply(a, f, params, cp)?.mul_var(b));
    let rhs = commutator_element(a, b, params, cp).apply(f);
    Ok(lhs == rhs)
}

/// Parameters for G(m,1,n) whose Dunkl operators restrict to those of G(m,p,n):
/// μ_00 = κ_00 and μ_j = κ_{j mod d}/p for 1 <= j <= m−1 (κ_0 = 0).
pub fn parameter_embed(params: &GroupParams, cp: &CherednikParams) -> Result<(GroupParams, CherednikParams)> {
    let big = GroupParams::new(params.m, 1, params.n)?;
    let p = int(params.p as i64);
    let mu: Vec<Rational> = (1..params.m as usize)
        .map(|j| cp.kappa(j % params.d as usize) / &p)
        .collect();
    let mu_params = CherednikParams {
        kappa00: cp.kappa00.clone(),
        kappa: mu,
        relation: cp.relation,
    };
    Ok((big, mu_params))
}

/// The full μ sequence μ_0..μ_{m−1} (μ_0 = 0).
pub fn mu_sequence(params: &GroupParams, cp: &CherednikParams) -> Vec<Rational> {
    let p = int(params.p as i64);
    (0..params.m as usize).map(|j| cp.kappa(j % params.d as usize) / &p).collect()
}

/// The central element z = Σ_a Σ_{t=1}^{d−1} κ_t Σ_j ε^{ptj} s_a^{pj} + κ_00 Σ_{a<b} Σ_r (1 − σ_ab^{(r)}).
pub fn z_element(params: &GroupParams, cp: &CherednikParams) -> GroupAlgebraElement {
    let m = params.m;
    let mut z = GroupAlgebraElement::zero(m);
    for a in 0..params.n {
        for t in 1..params.d as usize {
            let kt = cp.kappa(t);
            for (w, c) in cyclic_sum(params, a, t) {
                z.add_term(w, &c.scale(&kt));
            }
        }
    }
    let k00 = CycloNumber::from_rational(m, cp.kappa00.clone());
    let id = MonomialMatrix::identity(m, params.n);
    for a in 0..params.n {
        for b in a + 1..params.n {
            for r in 0..m as i64 {
                z.add_term(id.clone(), &k00);
                z.add_term(MonomialMatrix::sigma(params, a, b, r), &-&k00);
            }
        }
    }
    z
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Closed form of the scalar by which z acts on ∧^i h*: i(dκ_1 + m(n−1)κ_00).
pub fn z_scalar_formula(i: usize, params: &GroupParams, cp: &CherednikParams) -> Rational {
    int(i as i64) * cp.relation_value(params)
}

/// The scalar computed as trace(z | ∧^i h*) / C(n, i).
pub fn z_scalar_trace(i: usize, params: &GroupParams, cp: &CherednikParams) -> Result<Rational> {
    let trace = z_element(params, cp).ext_power_trace(i);
    let dim = binomial(params.n, i);
    trace
        .as_rational()
        .map(|q| q / Rational::from_integer(BigInt::from(dim)))
        .ok_or_else(|| LabError::InvalidCherednikParams(format!("trace of z on the {i}-th exterior power is not rational")))
}

/// The z-scalar on ∧^i h*, computed both ways; errors on disagreement.
pub fn z_scalar(i: usize, params: &GroupParams, cp: &CherednikParams) -> Result<Rational> {
    let formula = z_scalar_formula(i, params, cp);
    let traced = z_scalar_trace(i, params, cp)?;
    if formula != traced {
        return Err(LabError::InvalidCherednikParams(format!(
            "z-scalar mismatch on exterior power {i}: formula {formula}, trace {traced}"
        )));
    }
    Ok(formula)
}

/// Eigenvalue of the Euler element on ℂ[h]_k ⊗ ∧^i h*: k − z(i).
pub fn euler_eigenvalue(k: usize, i: usize, params: &GroupParams, cp: &CherednikParams) -> Rational {
    int(k as i64) - z_scalar_formula(i, params, cp)
}

/// Eigenvalue of h = eu − n − m·C(n,2) on ℂ[h]_k ⊗ ∧^i h*.
pub fn h_eigenvalue(k: usize, i: usize, params: &GroupParams, cp: &CherednikParams) -> Rational {
    euler_eigenvalue(k, i, params, cp) - int(params.shift() as i64)
}

/// A random polynomial of degree at most `max_deg` with up to `terms` terms,
/// coefficients ε^j·(a/b) with small integers a, b.
pub fn random_polynomial(params: &GroupParams, rng: &mut impl Rng, max_deg: usize, terms: usize) -> Poly {
    let mut f = Poly::zero(params.m, params.n);
    for _ in 0..terms {
        let k = rng.gen_range(0..=max_deg);
        let monos = crate::poly_algebra::Monomial::all_of_degree(params.n, k);
        let mono = monos[rng.gen_range(0..monos.len())].clone();
        let q = Rational::new(BigInt::from(rng.gen_range(-9i64..10)), BigInt::from(rng.gen_range(1i64..5)));
        f.add_term(mono, &zeta_pow(params.m, rng.gen_range(0..params.m as i64)).scale(&q));
    }
    f
}

/// Outcome of evaluating [y_a, x_b] on the trivial one-dimensional space.
#[derive(Clone, Debug)]
pub struct OneDimReport {
    /// values[a][b] = [y_a, x_b] evaluated on the trivial representation.
    pub values: Vec<Vec<CycloNumber>>,
    /// The same values recovered as the constants T_{y_a}(x_b).
    pub dunkl_values: Vec<Vec<CycloNumber>>,
    /// 1 + dκ_1 + m(n−1)κ_00.
    pub diagonal_scalar: Rational,
    pub passed: bool,
}

/// h and h* act by zero on a one-dimensional module exactly when every
/// [y_a, x_b] vanishes on the trivial representation.
pub fn onedim_module_check(params: &GroupParams, cp: &CherednikParams) -> Result<OneDimReport> {
    let n = params.n;
    let m = params.m;
    let mut values = vec![vec![CycloNumber::zero(m); n]; n];
    let mut dunkl_values = values.clone();
    for a in 0..n {
        for b in 0..n {
            values[a][b] = commutator_element(a, b, params, cp).trivial_value();
            let t = dunkl_apply(a, &Poly::var(m, n, b), params, cp)?;
            dunkl_values[a][b] = t.coeff(&crate::poly_algebra::Monomial::one(n));
        }
    }
    let diagonal_scalar = Rational::one() + cp.relation_value(params);
    let consistent = values == dunkl_values
        && (0..n).all(|a| values[a][a] == CycloNumber::from_rational(m, diagonal_scalar.clone()));
    let passed = consistent && values.iter().flatten().all(CycloNumber::is_zero);
    Ok(OneDimReport {
        values,
        dunkl_values,
        diagonal_scalar,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use crate::poly_algebra::Monomial;
    use crate::reflection_group::enumerate_group;
    use rand::Rng;

    fn g(m: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(m, p, n).unwrap()
    }

    fn triples() -> Vec<GroupParams> {
        vec![g(3, 1, 2), g(9, 3, 2), g(4, 2, 3), g(4, 2, 2)]
    }

    fn random_poly(params: &GroupParams, rng: &mut ChaCha20Rng, max_deg: usize, terms: usize) -> Poly {
        let mut f = Poly::zero(params.m, params.n);
        for _ in 0..terms {
            let k = rng.gen_range(0..=max_deg);
            let monos = Monomial::all_of_degree(params.n, k);
            let mono = monos[rng.gen_range(0..monos.len())].clone();
            let c = zeta_pow(params.m, rng.gen_range(0..params.m as i64)).scale(&rat(rng.gen_range(-9..10), rng.gen_range(1..5)));
            f.add_term(mono, &c);
        }
        f
    }

    #[test]
    fn dunkl_kills_constants_and_lowers_degree() {
        for params in triples() {
            let cp = CherednikParams::sample(&params, Relation::None, 3, 0);
            let one = Poly::one(params.m, params.n);
            let mut rng = ChaCha20Rng::seed_from_u64(5);
            for a in 0..params.n {
                assert!(dunkl_apply(a, &one, &params, &cp).unwrap().is_zero());
                for k in 1..5 {
                    let monos = Monomial::all_of_degree(params.n, k);
                    let mono = monos[rng.gen_range(0..monos.len())].clone();
                    let t = dunkl_apply(a, &Poly::monomial(params.m, mono), &params, &cp).unwrap();
                    assert!(t.terms().all(|(mm, _)| mm.degree() == k - 1));
                }
            }
        }
    }

    #[test]
    fn zero_parameters_give_partial_derivatives() {
        let params = g(4, 2, 3);
        let cp = CherednikParams::zero(&params);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..5 {
            let f = random_poly(&params, &mut rng, 5, 6);
            for a in 0..3 {
                assert_eq!(dunkl_apply(a, &f, &params, &cp).unwrap(), f.derivative(a));
                for b in 0..3 {
                    let rhs = commutator_element(a, b, &params, &cp).apply(&f);
                    let expected = if a == b { f.clone() } else { Poly::zero(4, 3) };
                    assert_eq!(rhs, expected);
                }
            }
        }
    }

    #[test]
    fn unit_relation_examples() {
        for params in triples() {
            let cp = CherednikParams::sample(&params, Relation::Unit, 11, 0);
            for a in 0..params.n {
                for b in 0..params.n {
                    let t = dunkl_apply(a, &Poly::var(params.m, params.n, b), &params, &cp).unwrap();
                    assert!(t.is_zero(), "{params} a={a} b={b}: {t}");
                }
            }
            let one = Poly::one(params.m, params.n);
            assert!(commutator_check(0, 0, &one, &params, &cp).unwrap());
        }
    }

    #[test]
    fn commutator_identity_on_random_polynomials() {
        for params in triples() {
            let cp = CherednikParams::sample(&params, Relation::None, 21, 0);
            let mut rng = ChaCha20Rng::seed_from_u64(22);
            for _ in 0..3 {
                let f = random_poly(&params, &mut rng, 5, 4);
                for a in 0..params.n {
                    for b in 0..params.n {
                        assert!(commutator_check(a, b, &f, &params, &cp).unwrap(), "{params} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn dunkl_operators_commute() {
        for params in triples() {
            let cp = CherednikParams::sample(&params, Relation::Main, 31, 0);
            let mut rng = ChaCha20Rng::seed_from_u64(32);
            for _ in 0..3 {
                let f = random_poly(&params, &mut rng, 6, 4);
                for a in 0..params.n {
                    for b in a + 1..params.n {
                        let ab = dunkl_apply(a, &dunkl_apply(b, &f, &params, &cp).unwrap(), &params, &cp).unwrap();
                        let ba = dunkl_apply(b, &dunkl_apply(a, &f, &params, &cp).unwrap(), &params, &cp).unwrap();
                        assert_eq!(ab, ba, "{params}");
                    }
                }
            }
        }
    }

    #[test]
    fn dunkl_operators_are_equivariant() {
        // w·T_{y_a}(f) = Σ_b (w)_{ba} T_{y_b}(w·f), with w acting on h by its matrix
        for params in triples() {
            let cp = CherednikParams::sample(&params, Relation::None, 41, 0);
            let mut rng = ChaCha20Rng::seed_from_u64(42);
            let f = random_poly(&params, &mut rng, 4, 5);
            for w in params.generators() {
                let wf = f.act(&w);
                for a in 0..params.n {
                    let lhs = dunkl_apply(a, &f, &params, &cp).unwrap().act(&w);
                    // w·y_a = ε^{e_a} y_{π(a)}
                    let b = w.perm()[a];
                    let c = zeta_pow(params.m, w.exps()[a] as i64);
                    let rhs = dunkl_apply(b, &wf, &params, &cp).unwrap().scale(&c);
                    assert_eq!(lhs, rhs, "{params} {w:?} a={a}");
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let params = g(4, 2, 3);
        let zero = CherednikParams::zero(&params);
        let (_, mu) = parameter_embed(&params, &zero).unwrap();
        assert!(mu.kappa.iter().all(Zero::is_zero));
        let cp = CherednikParams::new(&params, rat(1, 3), vec![rat(-3, 2)], Relation::None).unwrap();
        let seq = mu_sequence(&params, &cp);
        assert_eq!(seq, vec![rat(0, 1), rat(-3, 4), rat(0, 1), rat(-3, 4)]);
        for params in triples() {
            let cp = CherednikParams::sample(&params, Relation::Main, 5, 0);
            let (big, mu) = parameter_embed(&params, &cp).unwrap();
            let lhs = int(params.m as i64) * mu.kappa(1) + int(params.m as i64 * (params.n as i64 - 1)) * &mu.kappa00;
            let target = int(-1 - params.m as i64 * (params.n as i64 - 1) - params.d as i64);
            assert_eq!(lhs, target);
            assert_eq!(mu.relation_value(&big), cp.relation_value(&params));
        }
    }

    #[test]
    fn embedded_operators_agree_on_low_degrees() {
        for params in [g(4, 2, 3), g(9, 3, 2), g(4, 2, 2)] {
            let cp = CherednikParams::sample(&params, Relation::None, 9, 0);
            let (big, mu) = parameter_embed(&params, &cp).unwrap();
            for k in 0..=4 {
                for mono in Monomial::all_of_degree(params.n, k) {
                    let f = Poly::monomial(params.m, mono);
                    for a in 0..params.n {
                        assert_eq!(dunkl_apply(a, &f, &params, &cp).unwrap(), dunkl_apply(a, &f, &big, &mu).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn z_scalar_examples() {
        for params in triples() {
            let n = params.n as i64;
            let r = params.r() as i64;
            let main = CherednikParams::sample(&params, Relation::Main, 2, 0);
            assert_eq!(z_scalar(0, &params, &main).unwrap(), int(0));
            assert_eq!(z_scalar(params.n, &params, &main).unwrap(), int(-n * r));
            let unit = CherednikParams::sample(&params, Relation::Unit, 2, 0);
            assert_eq!(z_scalar(1, &params, &unit).unwrap(), int(-1));
            let free = CherednikParams::sample(&params, Relation::None, 2, 0);
            for i in 0..=params.n {
                assert_eq!(z_scalar_trace(i, &params, &free).unwrap(), z_scalar_formula(i, &params, &free));
            }
        }
    }

    #[test]
    fn z_is_central() {
        for params in [g(3, 1, 2), g(4, 2, 2)] {
            let cp = CherednikParams::sample(&params, Relation::None, 4, 0);
            let z = z_element(&params, &cp);
            for w in enumerate_group(&params).unwrap() {
                let mut conj = GroupAlgebraElement::zero(params.m);
                for (u, c) in z.terms() {
                    conj.add_term(u.conjugate_by(&w), c);
                }
                assert_eq!(conj.terms().collect::<Vec<_>>(), z.terms().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn euler_eigenvalue_examples() {
        for params in triples() {
            let cp = CherednikParams::sample(&params, Relation::Main, 8, 0);
            assert_eq!(euler_eigenvalue(0, 0, &params, &cp), int(0));
            for i in 0..=params.n {
                let lowest = int((i * params.r()) as i64 - params.shift() as i64);
                assert_eq!(h_eigenvalue(0, i, &params, &cp), lowest);
            }
            assert_eq!(h_eigenvalue(params.shift(), 0, &params, &cp), int(0));
        }
    }

    #[test]
    fn onedim_check_unit_passes_main_fails() {
        for params in triples() {
            for seed in [1, 2, 3] {
                let unit = CherednikParams::sample(&params, Relation::Unit, seed, 0);
                let report = onedim_module_check(&params, &unit).unwrap();
                assert!(report.passed, "{params} seed {seed}");
                let main = CherednikParams::sample(&params, Relation::Main, seed, 0);
                let report = onedim_module_check(&params, &main).unwrap();
                assert!(!report.passed);
                let expected = -int(params.m as i64 * (params.n as i64 - 1) + params.d as i64);
                assert_eq!(report.diagonal_scalar, expected);
                // off-diagonal entries vanish for every parameter choice
                for a in 0..params.n {
                    for b in 0..params.n {
                        if a != b {
                            assert!(report.values[a][b].is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_respects_relation() {
        let params = g(9, 3, 2);
        let a = CherednikParams::sample(&params, Relation::Main, 7, 0);
        let b = CherednikParams::sample(&params, Relation::Main, 7, 0);
        assert_eq!(a, b);
        assert_ne!(a, CherednikParams::sample(&params, Relation::Main, 7, 1));
        assert!(CherednikParams::new(&params, a.kappa00.clone(), a.kappa.clone(), Relation::Main).is_ok());
        assert!(CherednikParams::new(&params, a.kappa00.clone(), a.kappa.clone(), Relation::Unit).is_err());
    }
}
