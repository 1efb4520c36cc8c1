use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use hylag_core::constructions::{
    attach_sparse, build_base, build_layered, condition7, layered_edge_count, lift_to_r, n_of_ell_q,
};
use hylag_core::lagrangian::OptResult;
use hylag_core::rational::{display, int, pow, to_f64, Rational};
use hylag_core::sparse::{build_sparse, verify_edge_count, verify_local_sparsity};
use hylag_core::verifier::{
    verify_case_derivatives, verify_claim8_coefficients, verify_claim_big_f, verify_claim_big_h,
    verify_claim_f_a1, verify_claim_f_bound, verify_claim_g_max, verify_claim_h_max,
    verify_rho_block_bound, verify_subgraph_bound, Case,
};
use hylag_core::{
    hyg, maximize, Budget, ClaimReport, ConstructionParams, FamilyChoice, Hypergraph,
    OptimizerConfig, SparseBuild, SparseParams, SparsityReport, VerificationReport,
};
use num_bigint::BigInt;
use serde::Serialize;

use crate::table::{emit, Table};
use crate::{
    BuildArgs, Failure, Format, LagrangianArgs, ReportArgs, SparseArgs, Sweep, VerifyArgs,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

pub struct Context {
    pub format: Format,
    pub seed: u64,
}

type Outcome = Result<(), Failure>;

fn default_ell(choice: FamilyChoice) -> usize {
    if choice.is_special() {
        5
    } else {
        2
    }
}

#[derive(Serialize)]
struct BuildReport {
    file: PathBuf,
    sidecar: PathBuf,
    params: ConstructionParams,
    vertices: usize,
    edges: usize,
    expected_edges: String,
    density: String,
    density_value: f64,
    limit: String,
    limit_value: f64,
    sparse: Option<SparseBuild>,
    seed: u64,
    version: &'static str,
}

/// `G(ℓ,q,t)`, plus the sparse graph on `V₁` when asked, lifted to `r`.
/// Returns the graph and its edge count computed from the closed forms.
fn construct(
    p: &ConstructionParams,
    sparse: Option<(usize, f64)>,
    seed: u64,
) -> Result<(Hypergraph, BigInt, Option<SparseBuild>), Failure> {
    let mut g = if p.q == 1 {
        build_base(p)?
    } else {
        build_layered(p)?
    };
    let mut expected = layered_edge_count(p.choice, p.ell, p.q, p.t)?;
    let mut attached = None;
    if let Some((k, sigma)) = sparse {
        let a = build_sparse(&SparseParams::new(5, p.t, k, sigma, seed))?;
        let part1: Vec<usize> = (0..p.t).collect();
        g = attach_sparse(&g, &a.graph, &part1)?;
        expected += a.edges;
        attached = Some(a);
    }
    if p.r > 5 {
        g = lift_to_r(&g, p.r, p.t)?;
        expected *= BigInt::from(p.t).pow(p.r as u32 - 5);
    }
    Ok((g, expected, attached))
}

pub fn build(ctx: &Context, a: &BuildArgs) -> Outcome {
    let ell = a.ell.unwrap_or_else(|| default_ell(a.family));
    let p = ConstructionParams::new(a.family, ell, a.q, a.t, a.r)?;
    let (g, expected, sparse) = construct(&p, a.sigma.map(|s| (a.k, s)), ctx.seed)?;
    let file = a.out.clone().unwrap_or_else(|| {
        PathBuf::from(format!(
            "{}_l{}_q{}_t{}_r{}.hyg",
            a.family.tag().to_ascii_lowercase(),
            ell,
            a.q,
            a.t,
            a.r
        ))
    });
    let sidecar = file.with_extension("json");
    let density = g.density()?;
    let limit = n_of_ell_q(a.family, ell, a.q)?;
    let report = BuildReport {
        file: file.clone(),
        sidecar: sidecar.clone(),
        params: p,
        vertices: g.n(),
        edges: g.edge_count(),
        expected_edges: expected.to_string(),
        density_value: to_f64(&density),
        density: display(&density),
        limit_value: to_f64(&limit),
        limit: display(&limit),
        sparse,
        seed: ctx.seed,
        version: VERSION,
    };
    hyg::write_file(&file, &g)?;
    write_json(&sidecar, &report)?;
    emit(ctx.format, &report, None);
    if BigInt::from(g.edge_count()) != expected {
        eprintln!(
            "edge count {} differs from the closed form {expected}",
            g.edge_count()
        );
        return Err(Failure::Claim);
    }
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("reports serialize");
    std::fs::write(path, text + "\n")
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct LagrangianReport {
    file: PathBuf,
    r: usize,
    vertices: usize,
    edges: usize,
    config: OptimizerConfig,
    result: OptResult,
    seed: u64,
    version: &'static str,
}

pub fn lagrangian(ctx: &Context, a: &LagrangianArgs) -> Outcome {
    let g = hyg::read_file(&a.file)?;
    let config = OptimizerConfig {
        restarts: a.restarts,
        max_iterations: a.max_iterations,
        step_tolerance: a.step_tolerance,
        value_tolerance: a.value_tolerance,
        seed: ctx.seed,
        symmetrize: !a.no_symmetrize,
    };
    let result = maximize(&g, &config)?;
    let report = LagrangianReport {
        file: a.file.clone(),
        r: g.r(),
        vertices: g.n(),
        edges: g.edge_count(),
        config,
        result,
        seed: ctx.seed,
        version: VERSION,
    };
    emit(ctx.format, &report, None);
    Ok(())
}

#[derive(Serialize)]
struct SparseReport {
    file: Option<PathBuf>,
    params: SparseParams,
    build: SparseBuild,
    sparsity: SparsityReport,
    edge_count_ok: bool,
    seed: u64,
    version: &'static str,
}

pub fn sparse(ctx: &Context, a: &SparseArgs) -> Outcome {
    let params = SparseParams {
        max_attempts: a.max_attempts,
        ..SparseParams::new(a.r, a.t, a.k, a.sigma, ctx.seed)
    };
    let build = build_sparse(&params)?;
    let sparsity = verify_local_sparsity(&build.graph, a.k)?;
    let edge_count_ok = verify_edge_count(&build.graph, a.sigma);
    if let Some(path) = &a.out {
        hyg::write_file(path, &build.graph)?;
    }
    let pass = sparsity.ok && edge_count_ok;
    let report = SparseReport {
        file: a.out.clone(),
        params,
        build,
        sparsity,
        edge_count_ok,
        seed: ctx.seed,
        version: VERSION,
    };
    emit(ctx.format, &report, None);
    if pass {
        Ok(())
    } else {
        Err(Failure::Claim)
    }
}

const CLAIM_IDS: &[&str] = &[
    "f_bound",
    "g_max",
    "h_max",
    "f_a1",
    "rho_block",
    "F",
    "H",
    "claim8",
    "case_a",
    "case_b",
    "case_c",
    "case_d",
    "case_e",
    "subgraph",
    "all",
];

fn family_ells(choice: FamilyChoice) -> Vec<usize> {
    if choice.is_special() {
        vec![5]
    } else {
        vec![2, 3, 5]
    }
}

/// The analytic claims at the parameters where they are asserted.
fn standard_claims(
    budget: &Budget,
    grid: usize,
    samples: usize,
) -> Result<Vec<ClaimReport>, Failure> {
    let mut out = Vec::new();
    for l in 2..=6 {
        out.push(verify_claim_g_max(l, 1.0, budget)?);
    }
    for ell in 3..=6 {
        out.push(verify_claim_h_max(ell, 1.0, budget)?);
    }
    for ell in [2, 3, 5] {
        out.push(verify_claim_f_bound(ell, budget)?);
    }
    for ell in 2..=8 {
        out.push(verify_claim_f_a1(ell, grid)?);
    }
    out.push(verify_rho_block_bound(grid)?);
    for choice in FamilyChoice::ALL {
        for ell in family_ells(choice) {
            for q in 1..=3 {
                if condition7(choice, ell, q)? {
                    out.push(verify_claim_big_f(choice, ell, q, budget)?);
                    out.push(verify_claim_big_h(choice, ell, q, budget)?);
                }
            }
            out.push(verify_claim8_coefficients(
                choice,
                ell,
                samples,
                budget.seed,
            )?);
        }
    }
    for case in Case::ALL {
        let ells: Vec<usize> = match case {
            Case::A => (2..=8).collect(),
            Case::B => (2..=5).collect(),
            _ => vec![5],
        };
        for ell in ells {
            out.push(verify_case_derivatives(
                case.family(),
                ell,
                case.min_q(ell),
                10_000,
            )?);
        }
    }
    Ok(out)
}

fn range_or(r: &Option<RangeInclusive<usize>>, lo: usize, hi: usize) -> RangeInclusive<usize> {
    r.clone().unwrap_or(lo..=hi)
}

pub fn verify(ctx: &Context, a: &VerifyArgs) -> Outcome {
    let budget = Budget {
        restarts: a.budget,
        seed: ctx.seed,
        max_iterations: a.max_iterations,
    };
    let family = a.family.unwrap_or(FamilyChoice::Alpha);
    let ells = |lo: usize, hi: usize| {
        let (lo, hi) = if a.ell.is_none() && family.is_special() {
            (5, 5)
        } else {
            (lo, hi)
        };
        range_or(&a.ell, lo, hi)
    };
    let single_q = range_or(&a.q, 1, 1);
    let mut claims = Vec::new();
    match a.claim.as_str() {
        "all" => claims = standard_claims(&budget, a.grid, a.samples.unwrap_or(100))?,
        "f_bound" => {
            for ell in range_or(&a.ell, 2, 5) {
                claims.push(verify_claim_f_bound(ell, &budget)?);
            }
        }
        "g_max" => {
            for l in range_or(&a.big_l, 2, 6) {
                claims.push(verify_claim_g_max(l, 1.0, &budget)?);
            }
        }
        "h_max" => {
            for ell in range_or(&a.ell, 3, 6) {
                claims.push(verify_claim_h_max(ell, 1.0, &budget)?);
            }
        }
        "f_a1" => {
            for ell in range_or(&a.ell, 2, 8) {
                claims.push(verify_claim_f_a1(ell, a.grid)?);
            }
        }
        "rho_block" => claims.push(verify_rho_block_bound(a.grid)?),
        "F" | "big_f" | "H" | "big_h" => {
            let big_f = matches!(a.claim.as_str(), "F" | "big_f");
            for ell in ells(2, 2) {
                for q in single_q.clone() {
                    claims.push(if big_f {
                        verify_claim_big_f(family, ell, q, &budget)?
                    } else {
                        verify_claim_big_h(family, ell, q, &budget)?
                    });
                }
            }
        }
        "claim8" => {
            for ell in ells(2, 5) {
                let samples = a.samples.unwrap_or(100);
                claims.push(verify_claim8_coefficients(family, ell, samples, ctx.seed)?);
            }
        }
        id @ ("case_a" | "case_b" | "case_c" | "case_d" | "case_e") => {
            let case = Case::ALL
                .into_iter()
                .find(|c| c.id() == id)
                .expect("listed id");
            if a.family.is_some_and(|f| f != case.family()) {
                return Err(Failure::Usage(format!(
                    "{id} concerns {}; drop --family",
                    case.family()
                )));
            }
            let default = match case {
                Case::A => 2..=8,
                Case::B => 2..=5,
                _ => 5..=5,
            };
            for ell in a.ell.clone().unwrap_or(default) {
                let q = range_or(&a.q, case.min_q(ell), 10_000);
                claims.push(verify_case_derivatives(
                    case.family(),
                    ell,
                    *q.start(),
                    *q.end(),
                )?);
            }
        }
        "subgraph" => {
            for ell in ells(2, 2) {
                for q in single_q.clone() {
                    let p = ConstructionParams::new(family, ell, q, a.t, 5)?;
                    let (h, _, _) = construct(&p, a.sigma.map(|s| (a.k, s)), ctx.seed)?;
                    let bound = n_of_ell_q(family, ell, q)? / int(120);
                    let focus: Vec<usize> = (0..a.t).collect();
                    let samples = a.samples.unwrap_or(500);
                    claims.push(verify_subgraph_bound(
                        &h, &bound, a.k, samples, ctx.seed, &focus,
                    )?);
                }
            }
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown claim {other:?}; expected one of {}",
                CLAIM_IDS.join(", ")
            )))
        }
    }
    let report = VerificationReport::new(claims, budget);
    let mut t = Table::new(&[
        "claim", "params", "achieved", "target", "slack", "samples", "result",
    ]);
    for c in &report.claims {
        t.push(vec![
            c.claim.clone(),
            c.params.clone(),
            format!("{:.10e}", c.achieved_max),
            c.target.clone(),
            format!("{:.3e}", c.slack),
            c.samples.to_string(),
            if c.pass { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    t.push(vec![
        "overall".into(),
        format!("seed={}, restarts={}", report.seed, report.budget.restarts),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        if report.pass { "pass" } else { "FAIL" }.to_string(),
    ]);
    emit(ctx.format, &report, Some(t));
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Claim)
    }
}

#[derive(Serialize)]
struct SweepReport {
    sweep: &'static str,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    seed: u64,
    version: &'static str,
}

fn show(v: &Rational) -> [String; 2] {
    [display(v), format!("{:.10}", to_f64(v))]
}

pub fn report(ctx: &Context, a: &ReportArgs) -> Outcome {
    let family = a.family;
    let ells = a
        .ell
        .clone()
        .unwrap_or(if family.is_special() { 5..=5 } else { 2..=6 });
    let (name, mut t) = match a.sweep {
        Sweep::N => (
            "n",
            Table::new(&["family", "ell", "q", "N(ell,q)", "value", "condition"]),
        ),
        Sweep::Jumps => (
            "jumps",
            Table::new(&["r", "151r!/(6r^r)", "value", "lagrangian", "value"]),
        ),
        Sweep::Density => (
            "density",
            Table::new(&[
                "family",
                "ell",
                "q",
                "t",
                "vertices",
                "edges",
                "density",
                "limit N(ell,q)",
            ]),
        ),
    };
    match a.sweep {
        Sweep::N => {
            for ell in ells {
                for q in a.q.clone() {
                    let n = n_of_ell_q(family, ell, q)?;
                    let [exact, value] = show(&n);
                    let cond = condition7(family, ell, q)?;
                    t.push(vec![
                        family.to_string(),
                        ell.to_string(),
                        q.to_string(),
                        exact,
                        value,
                        if cond { "holds" } else { "fails" }.to_string(),
                    ]);
                }
            }
        }
        Sweep::Jumps => {
            for r in a.r.clone() {
                if r < 5 {
                    return Err(Failure::Usage(format!("r must be at least 5, got {r}")));
                }
                let rr = int(r as i64);
                let lam = int(151) / (int(6) * pow(&rr, r as u32));
                let fact: BigInt = (1..=r).map(BigInt::from).product();
                let jump = &lam * Rational::from_integer(fact);
                let [je, jv] = show(&jump);
                let [le, lv] = show(&lam);
                t.push(vec![r.to_string(), je, jv, le, lv]);
            }
        }
        Sweep::Density => {
            for ell in ells {
                for q in a.q.clone() {
                    let limit = n_of_ell_q(family, ell, q)?;
                    for tt in a.t.clone() {
                        let p = ConstructionParams::new(family, ell, q, tt, 5)?;
                        let (g, _, _) = construct(&p, None, ctx.seed)?;
                        let d = g.density()?;
                        t.push(vec![
                            family.to_string(),
                            ell.to_string(),
                            q.to_string(),
                            tt.to_string(),
                            g.n().to_string(),
                            g.edge_count().to_string(),
                            format!("{:.10}", to_f64(&d)),
                            format!("{:.10}", to_f64(&limit)),
                        ]);
                    }
                }
            }
        }
    }
    let report = SweepReport {
        sweep: name,
        columns: t.columns.clone(),
        rows: t.rows.clone(),
        seed: ctx.seed,
        version: VERSION,
    };
    emit(ctx.format, &report, Some(t));
    Ok(())
}
