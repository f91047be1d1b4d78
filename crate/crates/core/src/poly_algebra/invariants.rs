use super::poly::{Monomial, Poly};
use crate::reflection_group::GroupParams;

/// Elementary symmetric polynomial e_k in the given polynomials.
fn elementary(k: usize, xs: &[Poly], order: u32, nvars: usize) -> Poly {
    // e_k via the recursion over prefixes: E[j] holds e_j of the prefix
    let mut e = vec![Poly::zero(order, nvars); k + 1];
    e[0] = Poly::one(order, nvars);
    for x in xs {
        for j in (1..=k).rev() {
            let add = e[j - 1].mul(x);
            e[j] = e[j].add(&add);
        }
    }
    e[k].clone()
}

/// Basic invariants of G(m,p,n): e_i(x_1^m, …, x_n^m) for 1 <= i <= n−1 and (x_1⋯x_n)^d.
pub fn fundamental_invariants(params: &GroupParams) -> Vec<Poly> {
    let (m, n) = (params.m, params.n);
    let powers: Vec<Poly> = (0..n).map(|i| Poly::var(m, n, i).pow(m)).collect();
    let mut out: Vec<Poly> = (1..n).map(|i| elementary(i, &powers, m, n)).collect();
    out.push(Poly::monomial(m, Monomial::new(vec![params.d; n])));
    out
}

/// Hilbert series of the coinvariant algebra: Π_i (1 − t^{d_i})/(1 − t), as coefficients.
pub fn coinvariant_hilbert(params: &GroupParams) -> Vec<u64> {
    let mut coeffs = vec![1u64];
    for deg in params.invariant_degrees() {
        let mut next = vec![0u64; coeffs.len() + deg - 1];
        for (i, c) in coeffs.iter().enumerate() {
            for slot in &mut next[i..i + deg] {
                *slot += c;
            }
        }
        coeffs = next;
    }
    coeffs
}
