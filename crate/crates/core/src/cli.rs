//! Command-line front end: argument parsing, seeded parameter sampling and
//! machine-readable reports.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde_json::{json, Value};

use crate::cherednik::{
    commutator_check, dunkl_apply, onedim_module_check, parameter_embed, random_polynomial, z_scalar_formula,
    z_scalar_trace, CherednikParams, Relation,
};
use crate::error::{LabError, Result};
use crate::exact_arith::{CycloNumber, Rational};
use crate::lowest_weight::{
    bgg_identity_check, build_quotient, class_characters, coinvariant_image_check, expected_hilbert,
    find_singular_space_seeded, twist_by_det, ClassCharacter, QuotientModule,
};
use crate::multipartition::{hecke_simple_count, non_kleshchev_list, Multipartition};
use crate::poly_algebra::{Monomial, Poly};
use crate::reflection_group::{
    class_representatives, conjugacy_classes, enumerate_group, irrep_count, reflection_classes, reflections,
    GroupParams,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Random polynomials per Dunkl engine check.
const DUNKL_SAMPLES: usize = 20;
const DEFAULT_DUNKL_DEGREE: usize = 6;
const DEFAULT_EMBED_DEGREE: usize = 8;
/// Seeds used by checks that repeat over independent parameter samples.
const SEED_REPEATS: u64 = 3;

#[derive(Parser, Debug)]
#[command(name = "cherednik-lab", version, about = "Exact computations for G(m,p,n) and L(triv)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Order, reflection counts and invariant degrees.
    GroupInfo(RunArgs),
    /// All reflections with their conjugacy class.
    Reflections(RunArgs),
    /// Conjugacy-class representatives.
    Classes(RunArgs),
    /// Number of irreducible representations.
    IrrepCount(RunArgs),
    /// Non-Kleshchev multipartitions.
    Kleshchev(RunArgs),
    /// Number of simple Hecke algebra modules.
    HeckeCount(RunArgs),
    /// Commutativity and commutator identity of Dunkl operators on random polynomials.
    DunklCheck(RunArgs),
    /// Agreement of G(m,p,n) Dunkl operators with embedded G(m,1,n) ones.
    EmbedCheck(RunArgs),
    /// Scalars of z on the exterior powers of h*.
    Zscalar(RunArgs),
    /// The one-dimensional module test.
    OnedimCheck(RunArgs),
    /// Singular vectors in degree m(n−1)+d+1.
    Singular(RunArgs),
    /// Hilbert series of L(triv).
    Hilbert(RunArgs),
    /// Graded characters and their t → 1 values per conjugacy class.
    Character(RunArgs),
    /// det(1 − t^r w) against the alternating exterior-power sum.
    BggCheck(RunArgs),
    /// Graded characters against the tensor model.
    TensorCheck(RunArgs),
    /// The image of ℂ[h] in the quotient.
    CoinvariantCheck(RunArgs),
    /// Every check for one triple.
    VerifyAll(RunArgs),
}

impl Command {
    fn args(&self) -> &RunArgs {
        match self {
            Command::GroupInfo(a)
            | Command::Reflections(a)
            | Command::Classes(a)
            | Command::IrrepCount(a)
            | Command::Kleshchev(a)
            | Command::HeckeCount(a)
            | Command::DunklCheck(a)
            | Command::EmbedCheck(a)
            | Command::Zscalar(a)
            | Command::OnedimCheck(a)
            | Command::Singular(a)
            | Command::Hilbert(a)
            | Command::Character(a)
            | Command::BggCheck(a)
            | Command::TensorCheck(a)
            | Command::CoinvariantCheck(a)
            | Command::VerifyAll(a) => a,
        }
    }
}

#[derive(Args, Debug, Clone, Copy, PartialEq, Eq)]
struct RunArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
    /// none, unit or main; each command has its own default.
    #[arg(long, value_parser = parse_relation)]
    relation: Option<Relation>,
    /// Seed of the ChaCha20 stream used to sample parameters.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Degree bound for the Dunkl and embedding checks.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn parse_relation(s: &str) -> std::result::Result<Relation, String> {
    s.parse()
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Tsv,
}

/// Validated run configuration.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub params: GroupParams,
    pub relation: Option<Relation>,
    pub seed: u64,
    pub max_degree: Option<usize>,
}

/// Result of one command: JSON payload, optional table, verdict.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: Option<Table>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_tsv(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

impl Report {
    fn info(json: Value) -> Self {
        Report {
            json,
            table: None,
            passed: true,
        }
    }
}

/// Parses `args`, runs the command and writes the report; returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let args = *cli.command.args();
    let params = match GroupParams::new(args.m, args.p, args.n) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cfg = RunConfig {
        params,
        relation: args.relation,
        seed: args.seed,
        max_degree: args.max_degree,
    };
    let report = match dispatch(cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                LabError::InvalidParams(_) | LabError::InvalidCherednikParams(_) | LabError::CapExceeded { .. } => EXIT_USAGE,
                _ => EXIT_FAILURE,
            };
        }
    };
    match args.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&report.json).expect("report serializes");
            let _ = writeln!(out, "{text}");
        }
        Format::Tsv => match &report.table {
            Some(t) => {
                let _ = write!(out, "{}", t.to_tsv());
            }
            None => {
                let _ = writeln!(err, "error: tsv output is available for series and tables only");
                return EXIT_USAGE;
            }
        },
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

fn dispatch(command: Command, cfg: &RunConfig) -> Result<Report> {
    match command {
        Command::GroupInfo(_) => group_info(cfg),
        Command::Reflections(_) => reflections_cmd(cfg),
        Command::Classes(_) => classes_cmd(cfg),
        Command::IrrepCount(_) => irrep_count_cmd(cfg),
        Command::Kleshchev(_) => kleshchev_cmd(cfg),
        Command::HeckeCount(_) => hecke_count_cmd(cfg),
        Command::DunklCheck(_) => dunkl_check_cmd(cfg),
        Command::EmbedCheck(_) => embed_check_cmd(cfg),
        Command::Zscalar(_) => zscalar_cmd(cfg),
        Command::OnedimCheck(_) => onedim_cmd(cfg),
        Command::Singular(_) => singular_cmd(cfg),
        Command::Hilbert(_) => hilbert_cmd(cfg),
        Command::Character(_) => character_cmd(cfg),
        Command::BggCheck(_) => bgg_cmd(cfg),
        Command::TensorCheck(_) => tensor_cmd(cfg),
        Command::CoinvariantCheck(_) => coinvariant_cmd(cfg),
        Command::VerifyAll(_) => verify_all_cmd(cfg),
    }
}

fn big_json(x: &num_bigint::BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn rational_json(q: &Rational) -> Value {
    json!([big_json(q.numer()), big_json(q.denom())])
}

/// {order, coeffs: [[num, den], …]} in the power basis 1, ζ, ζ², ….
pub fn cyclo_json(c: &CycloNumber) -> Value {
    json!({
        "order": c.order(),
        "coeffs": c.coeffs().iter().map(rational_json).collect::<Vec<_>>(),
    })
}

/// {shift, coeffs}: the series t^shift · Σ_k coeffs[k] t^k.
pub fn series_json(shift: i64, coeffs: &[CycloNumber]) -> Value {
    json!({
        "shift": shift,
        "coeffs": coeffs.iter().map(cyclo_json).collect::<Vec<_>>(),
    })
}

fn int_series_json(shift: i64, coeffs: &[u64]) -> Value {
    json!({ "shift": shift, "coeffs": coeffs })
}

fn kappa_json(cp: &CherednikParams) -> Value {
    json!({
        "relation": cp.relation,
        "kappa00": rational_json(&cp.kappa00),
        "kappa": cp.kappa.iter().map(rational_json).collect::<Vec<_>>(),
    })
}

fn join_display<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn header_json(params: &GroupParams) -> Value {
    json!({ "group": params.to_string(), "m": params.m, "p": params.p, "n": params.n, "d": params.d })
}

fn with_header(params: &GroupParams, body: Value) -> Value {
    let mut v = header_json(params);
    if let (Value::Object(a), Value::Object(b)) = (&mut v, body) {
        a.extend(b);
    }
    v
}

fn group_info(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    Ok(Report::info(with_header(
        p,
        json!({
            "order": p.order() as u64,
            "reflection_count": reflections(p)?.len(),
            "reflection_class_count": reflection_classes(p)?.len(),
            "conjugacy_class_count": conjugacy_classes(p)?.len(),
            "r": p.r(),
            "shift": p.shift(),
            "invariant_degrees": p.invariant_degrees(),
        }),
    )))
}

fn reflections_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let classes = reflection_classes(p)?;
    let mut table = Table::new(&["class", "reflection"]);
    let mut list = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        for s in class {
            table.push(vec![c.to_string(), s.label()]);
            list.push(json!({ "class": c, "reflection": s.label() }));
        }
    }
    Ok(Report {
        json: with_header(p, json!({ "reflections": list, "class_count": classes.len() })),
        table: Some(table),
        passed: true,
    })
}

fn classes_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let mut table = Table::new(&["representative", "size", "fixed_space_dim", "det_h"]);
    let mut list = Vec::new();
    for (w, size) in class_representatives(p)? {
        table.push(vec![w.label(), size.to_string(), w.fixed_space_dim().to_string(), w.det_h().to_string()]);
        list.push(json!({
            "representative": w.label(),
            "size": size,
            "fixed_space_dim": w.fixed_space_dim(),
            "det_h": cyclo_json(&w.det_h()),
        }));
    }
    Ok(Report {
        json: with_header(p, json!({ "classes": list })),
        table: Some(table),
        passed: true,
    })
}

fn irrep_count_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let irreps = irrep_count(p)?;
    let classes = conjugacy_classes(p)?.len();
    Ok(Report {
        json: with_header(p, json!({ "irrep_count": irreps, "conjugacy_class_count": classes })),
        table: None,
        passed: irreps == classes,
    })
}

fn rho_list(params: &GroupParams) -> Vec<Multipartition> {
    let mut rhos: Vec<Multipartition> =
        (1..=params.p as usize).map(|i| Multipartition::rho(params.m as usize, params.n, i)).collect();
    rhos.sort();
    rhos
}

fn kleshchev_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let relation = cfg.relation.unwrap_or(Relation::Main);
    let list = non_kleshchev_list(p, relation)?;
    let expected = rho_list(p);
    let mut table = Table::new(&["non_kleshchev"]);
    for lam in &list {
        table.push(vec![lam.to_string()]);
    }
    let passed = relation != Relation::Main || list == expected;
    Ok(Report {
        json: with_header(
            p,
            json!({
                "relation": relation,
                "non_kleshchev": list.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "single_row_multipartitions": expected.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "matches_single_row": list == expected,
            }),
        ),
        table: Some(table),
        passed,
    })
}

fn hecke_count_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let hecke = hecke_simple_count(p)?;
    let irreps = irrep_count(p)?;
    let classes = conjugacy_classes(p)?.len();
    Ok(Report {
        json: with_header(
            p,
            json!({ "hecke_simple_count": hecke, "irrep_count": irreps, "conjugacy_class_count": classes }),
        ),
        table: None,
        passed: hecke + 1 == irreps && irreps == classes,
    })
}

fn sample_params(cfg: &RunConfig, default: Relation) -> CherednikParams {
    CherednikParams::sample(&cfg.params, cfg.relation.unwrap_or(default), cfg.seed, 0)
}

/// Pairwise commutativity and the commutator identity on seeded random polynomials.
pub fn dunkl_engine_check(params: &GroupParams, cp: &CherednikParams, seed: u64, max_deg: usize) -> Result<(usize, usize)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (mut commute_fail, mut identity_fail) = (0, 0);
    for _ in 0..DUNKL_SAMPLES {
        let f = random_polynomial(params, &mut rng, max_deg, 6);
        let images: Vec<Poly> = (0..params.n).map(|a| dunkl_apply(a, &f, params, cp)).collect::<Result<_>>()?;
        for a in 0..params.n {
            for b in a + 1..params.n {
                let ab = dunkl_apply(a, &images[b], params, cp)?;
                let ba = dunkl_apply(b, &images[a], params, cp)?;
                if ab != ba {
                    commute_fail += 1;
                }
            }
            for b in 0..params.n {
                if !commutator_check(a, b, &f, params, cp)? {
                    identity_fail += 1;
                }
            }
        }
    }
    Ok((commute_fail, identity_fail))
}

fn dunkl_check_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let cp = sample_params(cfg, Relation::None);
    let max_deg = cfg.max_degree.unwrap_or(DEFAULT_DUNKL_DEGREE);
    let (commute_fail, identity_fail) = dunkl_engine_check(p, &cp, cfg.seed, max_deg)?;
    Ok(Report {
        json: with_header(
            p,
            json!({
                "parameters": kappa_json(&cp),
                "samples": DUNKL_SAMPLES,
                "max_degree": max_deg,
                "commutativity_failures": commute_fail,
                "commutator_identity_failures": identity_fail,
            }),
        ),
        table: None,
        passed: commute_fail == 0 && identity_fail == 0,
    })
}

/// Number of (monomial, a) pairs up to `max_deg` where the κ-side and
/// embedded μ-side Dunkl operators differ, and the number compared.
pub fn embedding_mismatches(params: &GroupParams, cp: &CherednikParams, max_deg: usize) -> Result<(usize, usize)> {
    let (big, mu) = parameter_embed(params, cp)?;
    let (mut compared, mut bad) = (0, 0);
    for k in 0..=max_deg {
        for mono in Monomial::all_of_degree(params.n, k) {
            let f = Poly::monomial(params.m, mono);
            for a in 0..params.n {
                compared += 1;
                if dunkl_apply(a, &f, params, cp)? != dunkl_apply(a, &f, &big, &mu)? {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad, compared))
}

fn embed_check_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let cp = sample_params(cfg, Relation::None);
    let max_deg = cfg.max_degree.unwrap_or(DEFAULT_EMBED_DEGREE);
    let (bad, compared) = embedding_mismatches(p, &cp, max_deg)?;
    let (big, mu) = parameter_embed(p, &cp)?;
    Ok(Report {
        json: with_header(
            p,
            json!({
                "parameters": kappa_json(&cp),
                "ambient_group": big.to_string(),
                "mu": kappa_json(&mu),
                "max_degree": max_deg,
                "compared": compared,
                "mismatches": bad,
            }),
        ),
        table: None,
        passed: bad == 0,
    })
}

fn zscalar_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let cp = sample_params(cfg, Relation::None);
    let mut table = Table::new(&["i", "formula", "trace", "agree"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for i in 0..=p.n {
        let formula = z_scalar_formula(i, p, &cp);
        let trace = z_scalar_trace(i, p, &cp)?;
        passed &= formula == trace;
        table.push(vec![i.to_string(), formula.to_string(), trace.to_string(), (formula == trace).to_string()]);
        rows.push(json!({ "i": i, "formula": rational_json(&formula), "trace": rational_json(&trace) }));
    }
    Ok(Report {
        json: with_header(p, json!({ "parameters": kappa_json(&cp), "scalars": rows })),
        table: Some(table),
        passed,
    })
}

fn onedim_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let cp = sample_params(cfg, Relation::Unit);
    let report = onedim_module_check(p, &cp)?;
    Ok(Report {
        json: with_header(
            p,
            json!({
                "parameters": kappa_json(&cp),
                "values": report.values.iter().map(|row| row.iter().map(cyclo_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "diagonal_scalar": rational_json(&report.diagonal_scalar),
                "module_exists": report.passed,
            }),
        ),
        table: None,
        passed: report.passed,
    })
}

fn singular_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let s = find_singular_space_seeded(p, cfg.seed)?;
    let chars = s.character_table()?;
    let mut table = Table::new(&["representative", "trace_on_singular_space", "trace_on_hstar", "agree"]);
    let mut rows = Vec::new();
    for (w, here, hstar) in &chars {
        table.push(vec![w.label(), here.to_string(), hstar.to_string(), (here == hstar).to_string()]);
        rows.push(json!({ "representative": w.label(), "trace": cyclo_json(here), "hstar_trace": cyclo_json(hstar) }));
    }
    let hstar = chars.iter().all(|(_, a, b)| a == b);
    Ok(Report {
        json: with_header(
            p,
            json!({
                "parameters": kappa_json(&s.cparams),
                "degree": s.degree,
                "dimension": s.dim(),
                "basis": s.basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "characters": rows,
                "character_is_hstar": hstar,
            }),
        ),
        table: Some(table),
        passed: s.dim() == p.n && hstar,
    })
}

fn quotient(cfg: &RunConfig) -> Result<QuotientModule> {
    build_quotient(&find_singular_space_seeded(&cfg.params, cfg.seed)?)
}

fn hilbert_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let q = quotient(cfg)?;
    let h = q.hilbert();
    let expected = expected_hilbert(p);
    let shift = -(p.shift() as i64);
    let mut table = Table::new(&["degree", "dimension", "expected"]);
    for k in 0..h.len().max(expected.len()) {
        let e = expected.get(k).copied().unwrap_or(0);
        table.push(vec![k.to_string(), h.get(k).copied().unwrap_or(0).to_string(), e.to_string()]);
    }
    let passed = trim(&h) == trim(&expected);
    Ok(Report {
        json: with_header(
            p,
            json!({
                "parameters": kappa_json(&q.cparams),
                "hilbert": int_series_json(shift, trim(&h)),
                "expected": int_series_json(shift, &expected),
                "total_dimension": q.total_dim(),
                "r_pow_n": (p.r() as u64).pow(p.n as u32),
            }),
        ),
        table: Some(table),
        passed,
    })
}

fn trim(xs: &[u64]) -> &[u64] {
    let end = xs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    &xs[..end]
}

fn trim_cyclo(xs: &[CycloNumber]) -> &[CycloNumber] {
    let end = xs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    &xs[..end]
}

fn class_json(c: &ClassCharacter, shift: i64) -> Value {
    json!({
        "representative": c.w.label(),
        "class_size": c.class_size,
        "fixed_space_dim": c.w.fixed_space_dim(),
        "gr_l_character": series_json(shift, trim_cyclo(&c.traces)),
        "s_w_character": series_json(shift, trim_cyclo(&twist_by_det(&c.w, &c.traces))),
        "trace_routes_agree": c.traces_agree,
        "matches_det_ratio": c.matches_det_ratio,
        "limit_predicted": c.limit.predicted,
        "limit_det_ratio": cyclo_json(&c.limit.det_ratio),
        "limit_trace_sum": cyclo_json(&c.limit.trace_sum),
        "limit_passed": c.limit.passed,
    })
}

fn character_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let q = quotient(cfg)?;
    let chars = class_characters(&q)?;
    let shift = -(p.shift() as i64);
    let mut table = Table::new(&[
        "representative",
        "class_size",
        "fixed_space_dim",
        "predicted_limit",
        "trace_sum",
        "limit_ok",
        "matches_det_ratio",
    ]);
    for c in &chars {
        table.push(vec![
            c.w.label(),
            c.class_size.to_string(),
            c.w.fixed_space_dim().to_string(),
            c.limit.predicted.to_string(),
            c.limit.trace_sum.to_string(),
            c.limit.passed.to_string(),
            c.matches_det_ratio.to_string(),
        ]);
    }
    let passed = chars.iter().all(|c| c.traces_agree && c.matches_det_ratio && c.limit.passed);
    Ok(Report {
        json: with_header(
            p,
            json!({
                "parameters": kappa_json(&q.cparams),
                "r": p.r(),
                "classes": chars.iter().map(|c| class_json(c, shift)).collect::<Vec<_>>(),
            }),
        ),
        table: Some(table),
        passed,
    })
}

fn bgg_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let mut table = Table::new(&["representative", "identity_holds"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for (w, _) in class_representatives(p)? {
        let ok = bgg_identity_check(&w, p.r());
        passed &= ok;
        table.push(vec![w.label(), ok.to_string()]);
        rows.push(json!({ "representative": w.label(), "identity_holds": ok }));
    }
    Ok(Report {
        json: with_header(p, json!({ "r": p.r(), "classes": rows })),
        table: Some(table),
        passed,
    })
}

fn tensor_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let q = quotient(cfg)?;
    let chars = class_characters(&q)?;
    let shift = -(p.shift() as i64);
    let mut table = Table::new(&["representative", "matches_tensor_model"]);
    let mut rows = Vec::new();
    for c in &chars {
        table.push(vec![c.w.label(), c.matches_tensor_model.to_string()]);
        rows.push(json!({
            "representative": c.w.label(),
            "tensor_model": series_json(shift, trim_cyclo(&c.tensor_model)),
            "matches_tensor_model": c.matches_tensor_model,
        }));
    }
    Ok(Report {
        json: with_header(p, json!({ "parameters": kappa_json(&q.cparams), "classes": rows })),
        table: Some(table),
        passed: chars.iter().all(|c| c.matches_tensor_model),
    })
}

fn coinvariant_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let q = quotient(cfg)?;
    let rep = coinvariant_image_check(&q)?;
    let mut table = Table::new(&["shifted_degree", "image_dim", "coinvariant_dim"]);
    for j in 0..rep.image_dims.len().max(rep.coinvariant_dims.len()) {
        table.push(vec![
            j.to_string(),
            rep.image_dims.get(j).copied().unwrap_or(0).to_string(),
            rep.coinvariant_dims.get(j).copied().unwrap_or(0).to_string(),
        ]);
    }
    Ok(Report {
        json: with_header(
            p,
            json!({
                "parameters": kappa_json(&q.cparams),
                "component_degree": rep.expected_degree,
                "det_multiplicities": crate::lowest_weight::nonzero_entries(&rep.det_multiplicities),
                "invariants_annihilate": rep.invariants_annihilate,
                "image_dims": int_series_json(rep.expected_degree as i64, trim(&rep.image_dims)),
                "image_total": rep.image_dims.iter().sum::<u64>(),
                "group_order": p.order() as u64,
                "coinvariant_dims": rep.coinvariant_dims,
                "socle_degree": rep.socle_degree,
                "socle_dim": rep.socle_dim,
                "failed_clauses": rep.failed_clauses(),
            }),
        ),
        table: Some(table),
        passed: rep.passed,
    })
}

/// One line of the per-triple verification suite.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Every check for one triple. Checks that depend on sampled parameters
/// use `seed`, `seed + 1` and `seed + 2`.
pub fn verify_all(params: &GroupParams, seed: u64) -> Result<Vec<CriterionResult>> {
    let mut out = Vec::new();
    let mut push = |id, name, passed, detail: String| out.push(CriterionResult { id, name, passed, detail });
    let seeds: Vec<u64> = (0..SEED_REPEATS).map(|i| seed.wrapping_add(i)).collect();

    let refl = reflections(params)?.len();
    let refl_classes = reflection_classes(params)?.len();
    let expected_classes = params.d as usize + usize::from(params.split_sigma_classes());
    let order = params.order();
    push(
        1,
        "group facts",
        refl == params.reflection_count() && refl_classes == expected_classes && order == enumerate_group(params)?.len() as u128,
        format!("|G| = {order}, reflections = {refl}, reflection classes = {refl_classes}"),
    );

    let rhos = rho_list(params);
    let mut ok = true;
    for _ in &seeds {
        ok &= non_kleshchev_list(params, Relation::Main)? == rhos;
    }
    push(2, "non-Kleshchev set", ok, format!("expected {}", join_display(&rhos)));

    let hecke = hecke_simple_count(params)?;
    let irreps = irrep_count(params)?;
    let classes = conjugacy_classes(params)?.len();
    push(
        3,
        "Hecke simple count",
        hecke + 1 == irreps && irreps == classes,
        format!("hecke = {hecke}, irreps = {irreps}, classes = {classes}"),
    );

    let cp = CherednikParams::sample(params, Relation::None, seed, 0);
    let (cf, idf) = dunkl_engine_check(params, &cp, seed, DEFAULT_DUNKL_DEGREE)?;
    push(4, "Dunkl engine", cf == 0 && idf == 0, format!("commutativity failures {cf}, identity failures {idf}"));

    let (bad, compared) = embedding_mismatches(params, &cp, DEFAULT_EMBED_DEGREE)?;
    push(5, "parameter embedding", bad == 0, format!("{bad} of {compared} operator images differ"));

    let mut ok = true;
    for &s in &seeds {
        let unit = onedim_module_check(params, &CherednikParams::sample(params, Relation::Unit, s, 0))?;
        let main = onedim_module_check(params, &CherednikParams::sample(params, Relation::Main, s, 0))?;
        ok &= unit.passed && !main.passed;
    }
    push(6, "one-dimensional module", ok, "passes under unit, fails under main".into());

    let mut ok = true;
    for i in 0..=params.n {
        ok &= z_scalar_formula(i, params, &cp) == z_scalar_trace(i, params, &cp)?;
    }
    push(7, "z scalars", ok, format!("i = 0..={}", params.n));

    let mut dims = Vec::new();
    let mut hstar = true;
    let mut first = None;
    for &s in &seeds {
        let space = find_singular_space_seeded(params, s)?;
        dims.push(space.dim());
        hstar &= space.is_hstar_character()?;
        first.get_or_insert(space);
    }
    push(
        8,
        "singular space",
        dims.iter().all(|&d| d == params.n) && hstar,
        format!("degree {}, dims {:?}, character h*: {hstar}", params.r(), dims),
    );

    let q = build_quotient(first.as_ref().expect("three seeds ran"))?;
    let stability = q.dunkl_stability()?;
    let h = q.hilbert();
    let expected = expected_hilbert(params);
    let total = q.total_dim();
    push(
        9,
        "quotient Hilbert series",
        stability.failures.is_empty() && trim(&h) == trim(&expected) && total == (params.r() as u64).pow(params.n as u32),
        format!("total {total}, shift {}, stability failures {:?}", params.shift(), stability.failures),
    );

    let chars = class_characters(&q)?;
    let det_ok = chars.iter().filter(|c| c.traces_agree && c.matches_det_ratio && c.limit.passed).count();
    push(
        10,
        "equivariant character",
        det_ok == chars.len(),
        format!("{det_ok} of {} classes match the det ratio and its t = 1 value", chars.len()),
    );

    let bgg = class_representatives(params)?.iter().all(|(w, _)| bgg_identity_check(w, params.r()));
    push(11, "BGG character identity", bgg, "all class representatives".into());

    let tensor_ok = chars.iter().filter(|c| c.matches_tensor_model).count();
    push(12, "tensor model", tensor_ok == chars.len(), format!("{tensor_ok} of {} classes", chars.len()));

    let rep = coinvariant_image_check(&q)?;
    let image_total: u64 = rep.image_dims.iter().sum();
    push(
        13,
        "coinvariant image",
        rep.passed && image_total as u128 == order,
        format!("image dim {image_total}, |W| = {order}, failed {:?}", rep.failed_clauses()),
    );
    Ok(out)
}

fn verify_all_cmd(cfg: &RunConfig) -> Result<Report> {
    let p = &cfg.params;
    let results = verify_all(p, cfg.seed)?;
    let mut table = Table::new(&["criterion", "name", "passed", "detail"]);
    for r in &results {
        table.push(vec![r.id.to_string(), r.name.to_string(), r.passed.to_string(), r.detail.clone()]);
    }
    Ok(Report {
        json: with_header(
            p,
            json!({
                "seed": cfg.seed,
                "criteria": results
                    .iter()
                    .map(|r| json!({ "criterion": r.id, "name": r.name, "passed": r.passed, "detail": r.detail }))
                    .collect::<Vec<_>>(),
            }),
        ),
        table: Some(table),
        passed: results.iter().all(|r| r.passed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["cherednik-lab"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cyclo_json_format() {
        let c = CycloNumber::from_coeffs(4, vec![Rational::new(1.into(), 2.into()), Rational::from_integer((-3).into())]);
        assert_eq!(cyclo_json(&c), json!({ "order": 4, "coeffs": [[1, 2], [-3, 1]] }));
    }

    #[test]
    fn excluded_groups_are_usage_errors() {
        let (code, _, err) = run_str(&["group-info", "--m", "3", "--p", "3", "--n", "2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("m > p required"));
        let (code, _, _) = run_str(&["group-info", "--m", "3"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn tsv_needs_a_table() {
        let (code, _, _) = run_str(&["group-info", "--m", "3", "--p", "1", "--n", "2", "--format", "tsv"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, out, _) = run_str(&["classes", "--m", "3", "--p", "1", "--n", "2", "--format", "tsv"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("representative\tsize"));
    }

    #[test]
    fn group_info_g312() {
        let (code, out, _) = run_str(&["group-info", "--m", "3", "--p", "1", "--n", "2"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], 18);
        assert_eq!(v["r"], 7);
    }
}
