//! The simple lowest-weight module L(triv) realised as ℂ[h]/I, where I is the
//! ideal generated by the singular vectors of degree r = m(n−1)+d+1.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::cherednik::{dunkl_apply, CherednikParams, Relation};
use crate::error::{LabError, Result};
use crate::exact_arith::{zeta_pow, CycloNumber, Rational};
use crate::poly_algebra::{coinvariant_hilbert, fundamental_invariants, kernel, GradedSubspace, Monomial, Poly};
use crate::reflection_group::{
    class_representatives, enumerate_group, ext_power_char_by_minors, max_dim, GroupParams, MonomialMatrix,
};

/// Number of κ samples tried before a genericity failure is reported.
pub const SAMPLE_ATTEMPTS: usize = 3;

/// The n-dimensional space of degree-r polynomials killed by every Dunkl operator.
#[derive(Clone, Debug)]
pub struct SingularSpace {
    pub params: GroupParams,
    pub cparams: CherednikParams,
    pub degree: usize,
    /// Echelonized basis of the space.
    pub space: GradedSubspace,
}

impl SingularSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.space.basis().cloned().collect()
    }

    /// Trace of w on the span, read off from pivot coordinates.
    pub fn trace(&self, w: &MonomialMatrix) -> CycloNumber {
        let mut t = CycloNumber::zero(self.params.m);
        for (pivot, b) in self.space.pivoted_basis() {
            let image = b.act(w);
            debug_assert!(self.space.contains(&image));
            t += &image.coeff(pivot);
        }
        t
    }

    /// (representative, trace on the span, trace on h*) for each conjugacy class.
    pub fn character_table(&self) -> Result<Vec<(MonomialMatrix, CycloNumber, CycloNumber)>> {
        Ok(class_representatives(&self.params)?
            .into_iter()
            .map(|(w, _)| {
                let here = self.trace(&w);
                let hstar = w.ext_power_char(1);
                (w, here, hstar)
            })
            .collect())
    }

    pub fn is_hstar_character(&self) -> Result<bool> {
        Ok(self.character_table()?.iter().all(|(_, a, b)| a == b))
    }
}

fn check_piece_size(params: &GroupParams, degree: usize) -> Result<()> {
    let dim = crate::poly_algebra::graded_dim(params.n, degree) as u128;
    let cap = max_dim();
    if dim > cap {
        return Err(LabError::CapExceeded {
            what: "graded piece dimension",
            required: dim,
            cap,
        });
    }
    Ok(())
}

/// Kernel of the stacked Dunkl operators ℂ[h]_r → (ℂ[h]_{r−1})^n.
pub fn singular_kernel(params: &GroupParams, cp: &CherednikParams, degree: usize) -> Result<GradedSubspace> {
    check_piece_size(params, degree)?;
    let monos = Monomial::all_of_degree(params.n, degree);
    let mut images = Vec::with_capacity(monos.len());
    for mono in &monos {
        let f = Poly::monomial(params.m, mono.clone());
        let col = (0..params.n).map(|a| dunkl_apply(a, &f, params, cp)).collect::<Result<Vec<_>>>()?;
        images.push(col);
    }
    let vectors: Vec<Poly> = kernel(&images)
        .into_iter()
        .map(|v| Poly::from_terms(params.m, params.n, monos.iter().cloned().zip(v)))
        .collect();
    Ok(GradedSubspace::from_spanning(params.m, params.n, degree, &vectors))
}

/// Singular vectors of degree r for the given parameters, which must satisfy
/// the main relation. Errors with a genericity failure when the kernel does
/// not have dimension n.
pub fn find_singular_space(params: &GroupParams, cp: &CherednikParams) -> Result<SingularSpace> {
    if cp.relation != Relation::Main || cp.relation_value(params) != Relation::Main.target(params).expect("main has a target") {
        return Err(LabError::InvalidCherednikParams("the singular space needs the main relation".into()));
    }
    let degree = params.r();
    let space = singular_kernel(params, cp, degree)?;
    if space.dim() != params.n {
        return Err(LabError::Genericity {
            attempts: 1,
            detail: format!(
                "kernel in degree {degree} has dimension {} (expected {}) at κ00 = {}, κ = {:?}",
                space.dim(),
                params.n,
                cp.kappa00,
                cp.kappa.iter().map(ToString::to_string).collect::<Vec<_>>()
            ),
        });
    }
    Ok(SingularSpace {
        params: *params,
        cparams: cp.clone(),
        degree,
        space,
    })
}

/// Samples κ on the main hyperplane from `seed`, resampling on genericity
/// failure up to [`SAMPLE_ATTEMPTS`] times.
pub fn find_singular_space_seeded(params: &GroupParams, seed: u64) -> Result<SingularSpace> {
    let mut details = Vec::new();
    for attempt in 0..SAMPLE_ATTEMPTS {
        let cp = CherednikParams::sample(params, Relation::Main, seed, attempt);
        match find_singular_space(params, &cp) {
            Ok(s) => return Ok(s),
            Err(LabError::Genericity { detail, .. }) => details.push(detail),
            Err(e) => return Err(e),
        }
    }
    Err(LabError::Genericity {
        attempts: SAMPLE_ATTEMPTS,
        detail: details.join("; "),
    })
}

/// ℂ[h]/I with I generated by a singular space.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub params: GroupParams,
    pub cparams: CherednikParams,
    /// I_k for k = 0..=n(r−1)+1.
    pub pieces: Vec<GradedSubspace>,
}

/// Outcome of checking T_{y_a}(I_k) ⊆ I_{k−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    /// Number of (degree, basis vector, a) images tested.
    pub checked: usize,
    /// Degrees where some image left the ideal.
    pub failures: Vec<usize>,
}

impl QuotientModule {
    pub fn top_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    /// dim (ℂ[h]/I)_k for k = 0..=n(r−1)+1.
    pub fn hilbert(&self) -> Vec<u64> {
        self.pieces.iter().map(|p| p.codim() as u64).collect()
    }

    pub fn total_dim(&self) -> u64 {
        self.hilbert().iter().sum()
    }

    /// T_{y_a}(b) ∈ I_{k−1} for every basis vector b of every I_k. Degrees
    /// whose target I_{k−1} is all of ℂ[h]_{k−1} hold automatically and are skipped.
    pub fn dunkl_stability(&self) -> Result<StabilityReport> {
        let (params, cp) = (&self.params, &self.cparams);
        let degrees: Vec<usize> = (1..self.pieces.len())
            .filter(|&k| self.pieces[k].dim() > 0 && !self.pieces[k - 1].is_full())
            .collect();
        let results: Vec<Result<(usize, bool)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = degrees
                .iter()
                .map(|&k| {
                    scope.spawn(move || -> Result<(usize, bool)> {
                        let mut checked = 0;
                        for b in self.pieces[k].basis() {
                            for a in 0..params.n {
                                checked += 1;
                                if !self.pieces[k - 1].contains(&dunkl_apply(a, b, params, cp)?) {
                                    return Ok((checked, false));
                                }
                            }
                        }
                        Ok((checked, true))
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("stability worker panicked")).collect()
        });
        let mut report = StabilityReport {
            checked: 0,
            failures: Vec::new(),
        };
        for (k, res) in degrees.into_iter().zip(results) {
            let (checked, ok) = res?;
            report.checked += checked;
            if !ok {
                report.failures.push(k);
            }
        }
        Ok(report)
    }

    /// Σ_k tr(w | (ℂ[h]/I)_k) t^k, as tr(w|ℂ[h]_k) − tr(w|I_k) with the
    /// ideal trace read from pivot coordinates.
    pub fn equiv_char(&self, w: &MonomialMatrix) -> Vec<CycloNumber> {
        self.pieces
            .iter()
            .map(|piece| {
                let mut t = monomial_trace(w, piece.degree());
                for (pivot, b) in piece.pivoted_basis() {
                    t -= &b.act(w).coeff(pivot);
                }
                t
            })
            .collect()
    }

    /// The same traces computed on the quotient directly: Σ over standard
    /// monomials s of the coefficient of s in the normal form of w·s.
    pub fn equiv_char_normal_forms(&self, w: &MonomialMatrix) -> Vec<CycloNumber> {
        let m = self.params.m;
        self.pieces
            .iter()
            .map(|piece| {
                let mut t = CycloNumber::zero(m);
                for s in piece.standard_monomials() {
                    let image = Poly::monomial(m, s.clone()).act(w);
                    t += &piece.reduce(&image).coeff(&s);
                }
                t
            })
            .collect()
    }

    /// Normal form of a homogeneous polynomial modulo I.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let Some(k) = f.degree() else {
            return Ok(f.clone());
        };
        match self.pieces.get(k) {
            Some(piece) => Ok(piece.reduce(f)),
            None => Err(LabError::InvalidParams(format!(
                "degree {k} lies beyond the computed range 0..={}",
                self.top_degree()
            ))),
        }
    }
}

/// tr(w | ℂ[h]_k): w maps each monomial to a scalar multiple of a monomial.
fn monomial_trace(w: &MonomialMatrix, k: usize) -> CycloNumber {
    let m = w.m();
    let n = w.n();
    let mut counts = vec![0u64; m as usize];
    for mono in Monomial::all_of_degree(n, k) {
        let e = mono.exps();
        if (0..n).all(|i| e[w.perm()[i]] == e[i]) {
            let s: u64 = (0..n).map(|i| e[i] as u64 * w.exps()[i] as u64).sum();
            counts[((m as u64 - s % m as u64) % m as u64) as usize] += 1;
        }
    }
    let mut t = CycloNumber::zero(m);
    for (z, c) in counts.into_iter().enumerate() {
        if c > 0 {
            t += &zeta_pow(m, z as i64).scale(&Rational::from_integer(c.into()));
        }
    }
    t
}

/// Builds I_k for k = 0..=n(r−1)+1 from the singular space.
pub fn build_quotient(singular: &SingularSpace) -> Result<QuotientModule> {
    let params = singular.params;
    let top = params.n * (params.r() - 1) + 1;
    check_piece_size(&params, top)?;
    let gens = singular.basis();
    let pieces = crate::poly_algebra::ideal_pieces(params.m, params.n, &gens, top);
    Ok(QuotientModule {
        params,
        cparams: singular.cparams.clone(),
        pieces,
    })
}

/// Coefficients of ((1 − t^r)/(1 − t))^n.
pub fn expected_hilbert(params: &GroupParams) -> Vec<u64> {
    let r = params.r();
    let mut coeffs = vec![1u64];
    for _ in 0..params.n {
        let mut next = vec![0u64; coeffs.len() + r - 1];
        for (i, c) in coeffs.iter().enumerate() {
            for slot in &mut next[i..i + r] {
                *slot += c;
            }
        }
        coeffs = next;
    }
    coeffs
}

/// det|_{h*}(1 − t^r w) as a polynomial in t.
fn stretched_charpoly(w: &MonomialMatrix, r: usize) -> Vec<CycloNumber> {
    let cp = w.charpoly_hstar();
    let mut out = vec![CycloNumber::zero(w.m()); (cp.len() - 1) * r + 1];
    for (i, c) in cp.into_iter().enumerate() {
        out[i * r] = c;
    }
    out
}

/// Power-series expansion of det|_{h*}(1 − t^r w)/det|_{h*}(1 − t w) through t^len−1.
pub fn det_ratio_series(w: &MonomialMatrix, r: usize, len: usize) -> Vec<CycloNumber> {
    let m = w.m();
    let num = stretched_charpoly(w, r);
    let den = w.charpoly_hstar();
    let zero = CycloNumber::zero(m);
    // den has constant term 1, so the division is a plain recursion
    let mut out: Vec<CycloNumber> = Vec::with_capacity(len);
    for k in 0..len {
        let mut c = num.get(k).cloned().unwrap_or_else(|| zero.clone());
        for j in 1..den.len().min(k + 1) {
            if !den[j].is_zero() {
                c -= &(&den[j] * &out[k - j]);
            }
        }
        out.push(c);
    }
    out
}

/// lim_{t→1} det(1 − t^r w)/det(1 − t w) evaluated factor by factor over the
/// cycles of w: a cycle of length L with h*-scalar c contributes
/// (1 − c t^{rL})/(1 − c t^L), whose value at t = 1 is r when c = 1 and 1 otherwise.
pub fn det_ratio_limit(w: &MonomialMatrix, r: usize) -> CycloNumber {
    let m = w.m();
    let mut value = CycloNumber::one(m);
    for (len, e) in w.cycles() {
        let c = zeta_pow(m, -(e as i64));
        let one = CycloNumber::one(m);
        let factor = if c.is_one() {
            // (1 − u^{rL})/(1 − u^L) → rL/L
            CycloNumber::from_rational(m, Rational::from_integer((r * len).into()) / Rational::from_integer(len.into()))
        } else {
            let num = &one - &c;
            let den = &one - &c;
            &num * &den.inverse().expect("c ≠ 1")
        };
        value = &value * &factor;
    }
    value
}

/// The t → 1 value of the character compared with the quotient's trace sum.
#[derive(Clone, Debug)]
pub struct CharacterLimit {
    pub w: MonomialMatrix,
    /// r^{dim ker(1−w)}.
    pub predicted: u64,
    /// The det-ratio limit, evaluated exactly.
    pub det_ratio: CycloNumber,
    /// Σ_k tr(w | (ℂ[h]/I)_k).
    pub trace_sum: CycloNumber,
    pub passed: bool,
}

pub fn character_limit(q: &QuotientModule, w: &MonomialMatrix) -> CharacterLimit {
    let r = q.params.r();
    let predicted = (r as u64).pow(w.fixed_space_dim() as u32);
    let det_ratio = det_ratio_limit(w, r);
    let mut trace_sum = CycloNumber::zero(q.params.m);
    for t in q.equiv_char(w) {
        trace_sum += &t;
    }
    let expected = CycloNumber::from_int(q.params.m, predicted as i64);
    let passed = det_ratio == expected && trace_sum == expected;
    CharacterLimit {
        w: w.clone(),
        predicted,
        det_ratio,
        trace_sum,
        passed,
    }
}

/// det|_{h*}(1 − t^r w) = Σ_i (−1)^i χ_{∧^i h*}(w) t^{ir}, with the left side
/// from the cycle decomposition and the right side from principal minors.
pub fn bgg_identity_check(w: &MonomialMatrix, r: usize) -> bool {
    let lhs = stretched_charpoly(w, r);
    let mut rhs = vec![CycloNumber::zero(w.m()); w.n() * r + 1];
    for i in 0..=w.n() {
        let c = ext_power_char_by_minors(w, i);
        rhs[i * r] = if i % 2 == 1 { -c } else { c };
    }
    lhs == rhs
}

/// Graded trace of w ∈ G(m,1,n) on (ℂ[u]/(u^r))^{⊗n} with s_1(u) = ε^{−1}u and
/// S_n permuting the factors: each cycle of length c and total exponent e
/// contributes Σ_{k<r} ε^{−ek} t^{ck}.
pub fn tensor_model_char(w: &MonomialMatrix, r: usize) -> Vec<CycloNumber> {
    let m = w.m();
    let mut acc = vec![CycloNumber::one(m)];
    for (len, e) in w.cycles() {
        let mut next = vec![CycloNumber::zero(m); acc.len() + len * (r - 1)];
        for k in 0..r {
            let c = zeta_pow(m, -(e as i64) * k as i64);
            for (i, a) in acc.iter().enumerate() {
                if !a.is_zero() {
                    next[i + len * k] += &(a * &c);
                }
            }
        }
        acc = next;
    }
    acc
}

/// Pads or compares two coefficient sequences up to trailing zeros.
pub fn series_eq(a: &[CycloNumber], b: &[CycloNumber]) -> bool {
    let len = a.len().max(b.len());
    (0..len).all(|k| match (a.get(k), b.get(k)) {
        (Some(x), Some(y)) => x == y,
        (Some(x), None) | (None, Some(x)) => x.is_zero(),
        (None, None) => true,
    })
}

/// Traces of the S_W twist: each gr L trace multiplied by det(w) on h.
pub fn twist_by_det(w: &MonomialMatrix, series: &[CycloNumber]) -> Vec<CycloNumber> {
    let det = w.det_h();
    series.iter().map(|c| c * &det).collect()
}

/// Findings of the coinvariant-image check; each clause is reported separately.
#[derive(Clone, Debug)]
pub struct CoinvariantReport {
    /// Multiplicity of ∧^n h* in each degree of the quotient.
    pub det_multiplicities: Vec<u64>,
    /// The degree n + m·C(n,2) where the ∧^n h*-component is expected.
    pub expected_degree: usize,
    /// Clause (a): ∧^n h* occurs exactly once, in the expected degree.
    pub unique_component: bool,
    /// Clause (b): per fundamental invariant, whether f·v̄ lies in I.
    pub invariants_annihilate: Vec<bool>,
    /// Clause (c): dim (ℂ[h]·v̄)_j for j ≥ 0.
    pub image_dims: Vec<u64>,
    pub coinvariant_dims: Vec<u64>,
    pub image_matches: bool,
    /// Clause (d): dimension of the image in degree m·C(n,2)+nd−n.
    pub socle_degree: usize,
    pub socle_dim: u64,
    pub passed: bool,
}

impl CoinvariantReport {
    /// Names of the clauses that failed.
    pub fn failed_clauses(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.unique_component {
            out.push("(a) unique top-exterior-power component");
        }
        if !self.invariants_annihilate.iter().all(|&b| b) {
            out.push("(b) invariants annihilate the component");
        }
        if !self.image_matches {
            out.push("(c) image dimensions equal the coinvariant Hilbert series");
        }
        if self.socle_dim != 1 {
            out.push("(d) socle survives");
        }
        out
    }
}

pub fn coinvariant_image_check(q: &QuotientModule) -> Result<CoinvariantReport> {
    let params = q.params;
    let m = params.m;
    let n = params.n;
    let group = enumerate_group(&params)?;
    let order = Rational::from_integer((group.len() as u64).into());
    let reps = class_representatives(&params)?;

    // multiplicity of det_char in degree k is (1/|W|) Σ_w det_h(w) tr(w | Q_k)
    let mut sums = vec![CycloNumber::zero(m); q.pieces.len()];
    for (w, size) in &reps {
        let weight = w.det_h().scale(&Rational::from_integer((*size as u64).into()));
        for (k, t) in q.equiv_char(w).into_iter().enumerate() {
            sums[k] += &(&weight * &t);
        }
    }
    let mut det_multiplicities = Vec::with_capacity(sums.len());
    for s in sums {
        let mult = s.as_rational().map(|x| x / &order);
        let value = match mult {
            Some(x) if x.is_integer() && x >= Rational::from_integer(0.into()) => x.to_integer().to_u64().unwrap_or(u64::MAX),
            _ => {
                return Err(LabError::InvalidParams(format!(
                    "character inner product is not a nonnegative integer: {}",
                    s
                )))
            }
        };
        det_multiplicities.push(value);
    }
    let expected_degree = params.shift();
    let unique_component = det_multiplicities.iter().enumerate().all(|(k, &c)| c == u64::from(k == expected_degree));

    // v̄: projection of a standard monomial onto the ∧^n h*-isotypic part
    let piece = &q.pieces[expected_degree.min(q.top_degree())];
    let mut vbar = Poly::zero(m, n);
    for s in piece.standard_monomials() {
        let f = Poly::monomial(m, s);
        let mut proj = Poly::zero(m, n);
        for w in &group {
            proj.add_scaled(&f.act(w), &w.det_h());
        }
        vbar = piece.reduce(&proj);
        if !vbar.is_zero() {
            break;
        }
    }

    let invariants_annihilate = if vbar.is_zero() {
        vec![false; n]
    } else {
        fundamental_invariants(&params)
            .iter()
            .map(|f| q.normal_form(&f.mul(&vbar)).map(|g| g.is_zero()))
            .collect::<Result<Vec<_>>>()?
    };

    let coinvariant_dims = coinvariant_hilbert(&params);
    let mut image_dims = Vec::new();
    if !vbar.is_zero() {
        for j in 0..=q.top_degree() - expected_degree {
            let target = &q.pieces[expected_degree + j];
            let mut span = GradedSubspace::new(m, n, expected_degree + j);
            for mono in Monomial::all_of_degree(n, j) {
                span.insert(&target.reduce(&vbar.mul_monomial(&mono)));
            }
            image_dims.push(span.dim() as u64);
        }
    }
    let image_matches = !vbar.is_zero()
        && series_eq(
            &image_dims.iter().map(|&c| CycloNumber::from_int(m, c as i64)).collect::<Vec<_>>(),
            &coinvariant_dims.iter().map(|&c| CycloNumber::from_int(m, c as i64)).collect::<Vec<_>>(),
        );
    let socle_degree = params.m as usize * n * (n - 1) / 2 + n * params.d as usize - n;
    let socle_dim = image_dims.get(socle_degree).copied().unwrap_or(0);
    let mut report = CoinvariantReport {
        det_multiplicities,
        expected_degree,
        unique_component,
        invariants_annihilate,
        image_dims,
        coinvariant_dims,
        image_matches,
        socle_degree,
        socle_dim,
        passed: false,
    };
    report.passed = report.failed_clauses().is_empty();
    Ok(report)
}

/// Per-class comparison of the quotient's graded character with its predictions.
#[derive(Clone, Debug)]
pub struct ClassCharacter {
    pub w: MonomialMatrix,
    pub class_size: usize,
    pub traces: Vec<CycloNumber>,
    pub traces_agree: bool,
    pub det_ratio: Vec<CycloNumber>,
    pub matches_det_ratio: bool,
    pub tensor_model: Vec<CycloNumber>,
    pub matches_tensor_model: bool,
    pub limit: CharacterLimit,
}

/// Graded characters of the quotient on every class representative, computed
/// along both trace routes and compared with the det ratio and the tensor model.
pub fn class_characters(q: &QuotientModule) -> Result<Vec<ClassCharacter>> {
    let r = q.params.r();
    let len = q.pieces.len();
    let reps = class_representatives(&q.params)?;
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = reps
            .iter()
            .map(|(w, size)| {
                scope.spawn(move || {
                    let traces = q.equiv_char(w);
                    let traces_agree = traces == q.equiv_char_normal_forms(w);
                    let det_ratio = det_ratio_series(w, r, len);
                    let matches_det_ratio = traces == det_ratio;
                    let tensor_model = tensor_model_char(w, r);
                    let matches_tensor_model = series_eq(&traces, &tensor_model);
                    let limit = character_limit(q, w);
                    ClassCharacter {
                        w: w.clone(),
                        class_size: *size,
                        traces,
                        traces_agree,
                        det_ratio,
                        matches_det_ratio,
                        tensor_model,
                        matches_tensor_model,
                        limit,
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("character worker panicked")).collect::<Vec<_>>()
    });
    Ok(results)
}

/// Integer-valued coefficient sequence of a rational-valued series, if it is one.
pub fn as_integers(series: &[CycloNumber]) -> Option<Vec<i64>> {
    series
        .iter()
        .map(|c| {
            c.as_rational()
                .filter(|x| x.is_integer())
                .and_then(|x| x.to_integer().to_i64())
        })
        .collect()
}

/// Map from degree to multiplicity, for compact reporting of sparse sequences.
pub fn nonzero_entries(seq: &[u64]) -> BTreeMap<usize, u64> {
    seq.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k, c)).collect()
}
