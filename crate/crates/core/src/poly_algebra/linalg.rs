use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{graded_dim, Monomial, Poly};
use crate::exact_arith::{CycloField, CycloNumber};

/// A subspace of ℂ[h]_k stored in fully reduced echelon form.
///
/// Each basis vector has a pivot, its grlex-leading monomial, with coefficient 1,
/// and no basis vector has a nonzero coefficient at another vector's pivot.
/// This form is unique for the subspace, so equality of stored bases is
/// equality of subspaces, and reduction to normal form takes a single pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    order: u32,
    nvars: usize,
    degree: usize,
    rows: BTreeMap<Monomial, Poly>,
}

impl GradedSubspace {
    pub fn new(order: u32, nvars: usize, degree: usize) -> Self {
        GradedSubspace {
            order,
            nvars,
            degree,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_spanning<'a>(order: u32, nvars: usize, degree: usize, vectors: impl IntoIterator<Item = &'a Poly>) -> Self {
        let mut s = Self::new(order, nvars, degree);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// The whole graded piece ℂ[h]_k.
    pub fn full(order: u32, nvars: usize, degree: usize) -> Self {
        let mut s = Self::new(order, nvars, degree);
        for mono in Monomial::all_of_degree(nvars, degree) {
            s.rows.insert(mono.clone(), Poly::monomial(order, mono));
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        graded_dim(self.nvars, self.degree) - self.dim()
    }

    pub fn is_full(&self) -> bool {
        self.codim() == 0
    }

    /// Basis vectors in decreasing pivot order.
    pub fn basis(&self) -> impl Iterator<Item = &Poly> {
        self.rows.values().rev()
    }

    /// (pivot, basis vector) pairs in decreasing pivot order.
    pub fn pivoted_basis(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.rows.iter().rev()
    }

    pub fn is_pivot(&self, mono: &Monomial) -> bool {
        self.rows.contains_key(mono)
    }

    /// Monomials of this degree that are not pivots; their classes form a
    /// basis of ℂ[h]_k / self.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        Monomial::all_of_degree(self.nvars, self.degree)
            .into_iter()
            .filter(|mono| !self.rows.contains_key(mono))
            .collect()
    }

    /// Normal form of f modulo the subspace (the unique representative
    /// supported on standard monomials).
    pub fn reduce(&self, f: &Poly) -> Poly {
        let hits: Vec<(Monomial, CycloNumber)> = f
            .terms()
            .filter(|(mono, _)| self.rows.contains_key(*mono))
            .map(|(mono, c)| (mono.clone(), c.clone()))
            .collect();
        let mut out = f.clone();
        for (mono, c) in hits {
            out.add_scaled(&self.rows[&mono], &-&c);
        }
        out
    }

    pub fn contains(&self, f: &Poly) -> bool {
        debug_assert!(f.terms().all(|(mono, _)| mono.degree() == self.degree));
        self.reduce(f).is_zero()
    }

    /// Adds f to the subspace; returns whether the dimension grew.
    pub fn insert(&mut self, f: &Poly) -> bool {
        let g = self.reduce(f);
        let Some((lead, c)) = g.leading() else {
            return false;
        };
        assert_eq!(lead.degree(), self.degree, "inserting a vector of the wrong degree");
        let lead = lead.clone();
        let g = g.scale(&c.inverse().expect("leading coefficient is nonzero"));
        for row in self.rows.values_mut() {
            if let Some(a) = row.coeff_ref(&lead).cloned() {
                row.add_scaled(&g, &-a);
            }
        }
        self.rows.insert(lead, g);
        true
    }

    /// Coordinates of v (assumed in the subspace) are its coefficients at the pivots.
    pub fn coordinate(&self, v: &Poly, pivot: &Monomial) -> CycloNumber {
        v.coeff(pivot)
    }
}

/// Degreewise pieces I_k, k = 0..=max_degree, of the ideal generated by
/// homogeneous `gens`, built incrementally as I_k = Σ_j x_j I_{k−1} + ⟨gens of degree k⟩.
pub fn ideal_pieces(order: u32, nvars: usize, gens: &[Poly], max_degree: usize) -> Vec<GradedSubspace> {
    let mut pieces: Vec<GradedSubspace> = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let mut cur = GradedSubspace::new(order, nvars, k);
        if k > 0 {
            let prev = &pieces[k - 1];
            if prev.is_full() {
                pieces.push(GradedSubspace::full(order, nvars, k));
                continue;
            }
            'fill: for b in prev.basis() {
                for j in 0..nvars {
                    cur.insert(&b.mul_var(j));
                    if cur.is_full() {
                        break 'fill;
                    }
                }
            }
        }
        for g in gens.iter().filter(|g| g.degree() == Some(k)) {
            cur.insert(g);
        }
        pieces.push(cur);
    }
    pieces
}

/// A vector over ℤ[ζ_m]: one power-basis coefficient vector per column.
type IntRow = Vec<Vec<BigInt>>;

fn content(row: &IntRow) -> BigInt {
    let mut g = BigInt::zero();
    for entry in row {
        for c in entry {
            if !c.is_zero() {
                g = g.gcd(c);
                if g.is_one() {
                    return g;
                }
            }
        }
    }
    g
}

/// Clears denominators of a ℚ(ζ_m)-vector (indexed by `cols`) to get a primitive ℤ[ζ_m]-vector.
fn integral_row(f: &Poly, cols: &BTreeMap<Monomial, usize>, deg: usize) -> IntRow {
    let mut lcm = BigInt::one();
    for (_, c) in f.terms() {
        for q in c.coeffs() {
            lcm = lcm.lcm(q.denom());
        }
    }
    let mut row = vec![vec![BigInt::zero(); deg]; cols.len()];
    for (mono, c) in f.terms() {
        let entry = &mut row[cols[mono]];
        for (e, q) in entry.iter_mut().zip(c.coeffs()) {
            *e = q.numer() * (&lcm / q.denom());
        }
    }
    row
}

/// Exact rank over ℚ(ζ_m) of a family of polynomials, by fraction-free
/// elimination in ℤ[ζ_m] with content removal after every row operation.
///
/// Independent of [`GradedSubspace`]: no field inverses are taken.
pub fn span_rank(vectors: &[Poly]) -> usize {
    let nonzero: Vec<&Poly> = vectors.iter().filter(|v| !v.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return 0;
    };
    let field = CycloField::get(first.order());
    let deg = field.degree();
    let support: BTreeSet<Monomial> = nonzero.iter().flat_map(|v| v.terms().map(|(k, _)| k.clone())).collect();
    let cols: BTreeMap<Monomial, usize> = support.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows: Vec<IntRow> = nonzero.iter().map(|v| integral_row(v, &cols, deg)).collect();
    let is_zero = |e: &Vec<BigInt>| e.iter().all(Zero::is_zero);
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(pr) = (rank..rows.len()).find(|&r| !is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot_row = rows[rank].clone();
        let pivot = pivot_row[col].clone();
        for r in rank + 1..rows.len() {
            if is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            let mut new_row: IntRow = rows[r]
                .iter()
                .zip(&pivot_row)
                .map(|(a, b)| {
                    let lhs = field.mul_integral(&pivot, a);
                    let rhs = field.mul_integral(&factor, b);
                    lhs.into_iter().zip(rhs).map(|(x, y)| x - y).collect()
                })
                .collect();
            let g = content(&new_row);
            if !g.is_zero() && !g.is_one() {
                let g = g.abs();
                for entry in new_row.iter_mut() {
                    for c in entry.iter_mut() {
                        *c = &*c / &g;
                    }
                }
            }
            rows[r] = new_row;
        }
        rank += 1;
    }
    rank
}

/// dim of the degree-k piece of the ideal generated by homogeneous `gens`:
/// the rank of {μ·g : deg μ = k − deg g}.
pub fn ideal_dim_in_degree(gens: &[Poly], k: usize) -> usize {
    let mut products = Vec::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > k {
            continue;
        }
        for mono in Monomial::all_of_degree(g.nvars(), k - dg) {
            products.push(g.mul_monomial(&mono));
        }
    }
    span_rank(&products)
}

/// Reduced row echelon form of a dense matrix; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<CycloNumber>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inverse().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the kernel of the linear map sending the i-th basis vector to
/// the tuple `images[i]` (one polynomial per output component). Kernel
/// vectors are returned as coefficient vectors.
pub fn kernel(images: &[Vec<Poly>]) -> Vec<Vec<CycloNumber>> {
    let ncols = images.len();
    let Some(order) = images.iter().flatten().next().map(Poly::order) else {
        return Vec::new();
    };
    let support: BTreeSet<(usize, Monomial)> = images
        .iter()
        .flat_map(|col| col.iter().enumerate().flat_map(|(a, v)| v.terms().map(move |(k, _)| (a, k.clone()))))
        .collect();
    let row_index: BTreeMap<(usize, Monomial), usize> = support.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = vec![vec![CycloNumber::zero(order); ncols]; row_index.len()];
    for (c, col) in images.iter().enumerate() {
        for (a, img) in col.iter().enumerate() {
            for (mono, v) in img.terms() {
                rows[row_index[&(a, mono.clone())]][c] = v.clone();
            }
        }
    }
    let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows) };
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    (0..ncols)
        .filter(|c| !pivot_set.contains(c))
        .map(|free| {
            let mut v = vec![CycloNumber::zero(order); ncols];
            v[free] = CycloNumber::one(order);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[i][free];
            }
            v
        })
        .collect()
}
