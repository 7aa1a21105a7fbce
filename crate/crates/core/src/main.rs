use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use wpl_core::cli::catalog;
use wpl_core::cli::exchange::explore;
use wpl_core::cli::formats::{read_json, write_json, AlgebraFile, QpFile};
use wpl_core::cli::verify::{self, Params, SUITES};
use wpl_core::lgroup::{LVec, Order, WeightType};
use wpl_core::pathalg::{Presentation, DEFAULT_CAP};
use wpl_core::qp::{GradedQP, Side};
use wpl_core::rational::{format_q, parse_q, Q};
use wpl_core::survey::survey_tilting;
use wpl_core::threeprep::{analyze_2rf, extended_qp, is_2homogeneous, two_apr_tilt, Verdict};
use wpl_core::wpl::{canonical_sum, end_algebra, ext1_dim, hom_dim, sum_text, Sheaf};
use wpl_core::{Error, Result};

const MONOMIAL_ORDER: &str = "length, then lexicographic in arrow index";

#[derive(Parser)]
#[command(name = "wpl", version, about = "Weighted projective lines, quivers with potential and 3-preprojective algebras")]
struct Cli {
    /// Word-length cap for Groebner completion and normal words.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Fourth parameter for four-point weight types.
    #[arg(long, global = true, default_value = "2", allow_hyphen_values = true)]
    lambda4: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic in the grading group: omega, c, euler-char, k0-rank,
    /// order-omega, tubular, or normal/order/delta of a degree.
    Lgroup { weights: String, op: String, arg: Option<String> },
    /// Dimension of Hom (or Ext^1 with --ext) between two sheaves such as O(x1+w) and S(2,1).
    Homdim {
        weights: String,
        x: String,
        y: String,
        #[arg(long)]
        ext: bool,
    },
    /// Presentation of the canonical algebra as an algebra file.
    Canonical {
        weights: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Endomorphism algebra of a sum of sheaves.
    End {
        weights: String,
        sum: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extended quiver with potential of an algebra of global dimension at most two.
    Pi3 {
        algebra: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide 2-representation-finiteness.
    Check2rf {
        algebra: String,
        /// Also test 2-homogeneity.
        #[arg(long)]
        homogeneous: bool,
    },
    /// 2-APR tilt at a sink (left) or source (right).
    #[command(name = "2apr")]
    Apr {
        algebra: String,
        #[arg(short)]
        k: String,
        #[arg(long)]
        right: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Mutate a quiver with potential at one vertex.
    Mutate {
        qp: String,
        #[arg(short)]
        k: String,
        #[arg(long, conflicts_with = "right")]
        left: bool,
        #[arg(long)]
        right: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Closure under mutation along Nakayama orbits.
    Exchange {
        qp: String,
        #[arg(long, default_value_t = 500)]
        max_nodes: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Tilting sums of lines in a window and exceptional simples.
    Survey {
        weights: String,
        /// Degree window LO:HI, for example -c:2c or -1|0,0,0:2|0,0,0.
        #[arg(long, default_value = "-c:2c", allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        require_tau2: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites (all when no name is given).
    Verify {
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        max_nodes: usize,
        #[arg(long, default_value_t = 1000)]
        mutations: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
}

struct Ctx {
    cap: usize,
    lambda4: Q,
}

impl Ctx {
    fn meta(&self) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("tool".to_string(), format!("wpl {}", env!("CARGO_PKG_VERSION"))),
            ("monomial_order".to_string(), MONOMIAL_ORDER.to_string()),
            ("cap".to_string(), self.cap.to_string()),
            ("lambda4".to_string(), format_q(&self.lambda4)),
        ])
    }

    fn header(&self) -> String {
        format!(
            "# wpl {}; monomial order: {}; cap {}; lambda4 {}",
            env!("CARGO_PKG_VERSION"),
            MONOMIAL_ORDER,
            self.cap,
            format_q(&self.lambda4)
        )
    }

    fn weights(&self, s: &str) -> Result<WeightType> {
        let w = WeightType::parse(s)?;
        if w.t() >= 4 && !s.contains("lambda4") {
            let mut extra: Vec<Q> = (4..=w.t()).map(|i| w.lambda(i - 1)).collect();
            extra[0] = self.lambda4;
            return w.with_params(&extra);
        }
        Ok(w)
    }

    fn algebra(&self, s: &str) -> Result<Presentation> {
        if s.starts_with("catalog:") {
            return catalog::load(s, &self.lambda4);
        }
        read_json::<AlgebraFile>(Path::new(s))?.to_presentation()
    }

    /// A QP file, or the extended QP of an algebra given as `catalog:name`.
    fn qp(&self, s: &str) -> Result<GradedQP> {
        if s.starts_with("catalog:") {
            return Ok(extended_qp(&self.algebra(s)?, self.cap)?.qp);
        }
        read_json::<QpFile>(Path::new(s))?.to_qp()
    }
}

fn vertex(vertices: &[String], k: &str) -> Result<usize> {
    if let Some(i) = vertices.iter().position(|v| v == k) {
        return Ok(i);
    }
    match k.parse::<usize>() {
        Ok(i) if i < vertices.len() => Ok(i),
        _ => Err(Error::Parse(format!("no vertex {k:?}"))),
    }
}

fn emit<T: Serialize>(output: Option<&Path>, value: &T) -> Result<()> {
    match output {
        Some(p) => write_json(p, value),
        None => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

fn algebra_file(ctx: &Ctx, a: &Presentation, extra: &[(&str, String)]) -> AlgebraFile {
    let mut f = AlgebraFile::from_presentation(a);
    f.meta = ctx.meta();
    f.meta.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    f
}

fn qp_file(ctx: &Ctx, qp: &GradedQP, extra: &[(&str, String)]) -> QpFile {
    let mut f = QpFile::from_qp(qp);
    f.meta = ctx.meta();
    f.meta.extend(extra.iter().map(|(k, v)| (k.to_string(), v.clone())));
    f
}

fn window(w: &WeightType, s: &str) -> Result<(LVec, LVec)> {
    // the LVec text form contains no ':'
    let (lo, hi) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected LO:HI, got {s:?}")))?;
    Ok((LVec::parse(w, lo)?, LVec::parse(w, hi)?))
}

fn lgroup(ctx: &Ctx, weights: &str, op: &str, arg: Option<&str>) -> Result<u8> {
    let w = ctx.weights(weights)?;
    let order_text = |o: Order| match o {
        Order::Finite(k) => k.to_string(),
        Order::Infinite => "infinite".to_string(),
    };
    let need = || -> Result<LVec> {
        LVec::parse(&w, arg.ok_or_else(|| Error::Parse(format!("{op} needs a degree argument")))?)
    };
    let out = match op {
        "omega" => w.omega().to_text(),
        "c" => w.c().to_text(),
        "euler-char" => w.euler_char().to_string(),
        "k0-rank" => w.k0_rank().to_string(),
        "tubular" => w.is_tubular().to_string(),
        "order-omega" => order_text(w.omega().order()),
        "normal" => need()?.to_text(),
        "order" => order_text(need()?.order()),
        "delta" => need()?.delta().to_string(),
        _ => return Err(Error::Parse(format!("unknown lgroup operation {op:?}"))),
    };
    println!("{out}");
    Ok(0)
}

fn check2rf(ctx: &Ctx, name: &str, homogeneous: bool) -> Result<u8> {
    let a = ctx.algebra(name)?;
    let rep = analyze_2rf(&a, ctx.cap)?;
    println!("{}", ctx.header());
    println!("algebra: {name}");
    println!("vertices: {}", a.quiver.n());
    if let Some(d) = rep.dim {
        println!("dim: {d}");
    }
    if let Some(g) = rep.gldim {
        println!("gldim: {g}");
    }
    if let Some(d) = rep.pi3_dim {
        println!("Pi_3 dim: {d}");
    }
    if let Some(g) = &rep.pi3_graded {
        let parts: Vec<String> = g.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        println!("Pi_3 graded dims: {}", parts.join(" "));
    }
    if let Some(pi) = &rep.nakayama {
        let parts: Vec<String> = pi.iter().enumerate().map(|(i, &j)| format!("{}->{}", a.quiver.vertices[i], a.quiver.vertices[j])).collect();
        let trivial = pi.iter().enumerate().all(|(i, &j)| i == j);
        println!("Nakayama permutation: {}{}", if trivial { "id; " } else { "" }, parts.join(" "));
    }
    println!("2-RF: {}", rep.verdict);
    let mut code = rep.verdict.exit_code() as u8;
    if homogeneous && rep.verdict.is_yes() {
        let h = is_2homogeneous(&a, ctx.cap)?;
        println!("2-homogeneous: {h}");
        if !h {
            code = 1;
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct SurveyRow {
    sum: String,
    q: Vec<usize>,
    tau2_stable: bool,
    multiplicity: usize,
    two_rf: String,
    two_homogeneous: Option<bool>,
    algebra: AlgebraFile,
}

#[derive(Serialize)]
struct SurveyReport {
    meta: BTreeMap<String, String>,
    weight_type: String,
    window: [String; 2],
    require_tau2: bool,
    entries: Vec<SurveyRow>,
}

fn survey(ctx: &Ctx, weights: &str, win: &str, require_tau2: bool, output: Option<&Path>) -> Result<u8> {
    let w = ctx.weights(weights)?;
    let (lo, hi) = window(&w, win)?;
    let entries = survey_tilting(&w, &lo, &hi, require_tau2)?;
    let mut rows = Vec::new();
    let mut code = 0;
    for e in entries {
        let v = analyze_2rf(&e.algebra, ctx.cap)?.verdict;
        let h = if v.is_yes() { Some(is_2homogeneous(&e.algebra, ctx.cap)?) } else { None };
        if matches!(v, Verdict::Indeterminate(_)) {
            code = 2;
        }
        rows.push(SurveyRow {
            sum: sum_text(&e.sum),
            q: e.simples_per_tube,
            tau2_stable: e.tau2_stable,
            multiplicity: e.multiplicity,
            two_rf: v.to_string(),
            two_homogeneous: h,
            algebra: AlgebraFile::from_presentation(&e.algebra),
        });
    }
    let report = SurveyReport {
        meta: ctx.meta(),
        weight_type: w.to_string(),
        window: [lo.to_text(), hi.to_text()],
        require_tau2,
        entries: rows,
    };
    emit(output, &report)?;
    Ok(code)
}

fn run_verify(ctx: &Ctx, suite: Option<&str>, params: Params, json_out: Option<&Path>) -> Result<u8> {
    let results = match suite {
        None | Some("all") => verify::run_all(&params)?,
        Some(name) => vec![verify::run(name, &params)?],
    };
    println!("{}", ctx.header());
    for r in &results {
        println!(
            "{} criterion {} {} ({:.2}s)",
            if r.passed { "PASS" } else { "FAIL" },
            r.criterion,
            r.suite,
            r.seconds
        );
        for (k, v) in &r.measured {
            println!("    {k}: {v}");
        }
    }
    if let Some(p) = json_out {
        write_json(p, &json!({"meta": ctx.meta(), "seed": params.seed, "results": results}))?;
    }
    Ok(if results.iter().all(|r| r.passed) { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8> {
    let ctx = Ctx { cap: cli.cap, lambda4: parse_q(&cli.lambda4)? };
    match cli.command {
        Command::Lgroup { weights, op, arg } => lgroup(&ctx, &weights, &op, arg.as_deref()),
        Command::Homdim { weights, x, y, ext } => {
            let w = ctx.weights(&weights)?;
            let (x, y) = (Sheaf::parse(&w, &x)?, Sheaf::parse(&w, &y)?);
            println!("{}", if ext { ext1_dim(&w, &x, &y) } else { hom_dim(&w, &x, &y) });
            Ok(0)
        }
        Command::Canonical { weights, output } => {
            let w = ctx.weights(&weights)?;
            let a = end_algebra(&w, &canonical_sum(&w))?;
            emit(output.as_deref(), &algebra_file(&ctx, &a, &[("weight_type", w.to_string())]))?;
            Ok(0)
        }
        Command::End { weights, sum, output } => {
            let w = ctx.weights(&weights)?;
            let t = wpl_core::wpl::parse_sum(&w, &sum)?;
            let a = end_algebra(&w, &t)?;
            emit(output.as_deref(), &algebra_file(&ctx, &a, &[("weight_type", w.to_string()), ("sum", sum_text(&t))]))?;
            Ok(0)
        }
        Command::Pi3 { algebra, output } => {
            let a = ctx.algebra(&algebra)?;
            let e = extended_qp(&a, ctx.cap)?;
            emit(output.as_deref(), &qp_file(&ctx, &e.qp, &[("source", algebra)]))?;
            Ok(0)
        }
        Command::Check2rf { algebra, homogeneous } => check2rf(&ctx, &algebra, homogeneous),
        Command::Apr { algebra, k, right, output } => {
            let a = ctx.algebra(&algebra)?;
            let v = vertex(&a.quiver.vertices, &k)?;
            let side = if right { Side::Right } else { Side::Left };
            let t = two_apr_tilt(&a, v, side, ctx.cap)?;
            emit(output.as_deref(), &algebra_file(&ctx, &t, &[("source", algebra), ("vertex", k)]))?;
            Ok(0)
        }
        Command::Mutate { qp, k, left: _, right, output } => {
            let p = ctx.qp(&qp)?;
            let v = vertex(&p.quiver.vertices, &k)?;
            let side = if right { Side::Right } else { Side::Left };
            let m = p.mutate(v, side)?;
            let side_text = if right { "right" } else { "left" };
            emit(output.as_deref(), &qp_file(&ctx, &m, &[("source", qp), ("vertex", k), ("side", side_text.into())]))?;
            Ok(0)
        }
        Command::Exchange { qp, max_nodes, output, dot } => {
            let p = ctx.qp(&qp)?;
            let g = explore(&p, max_nodes, ctx.cap)?;
            if let Some(d) = dot {
                std::fs::write(d, g.to_dot())?;
            }
            emit(output.as_deref(), &json!({"meta": ctx.meta(), "max_nodes": max_nodes, "graph": g}))?;
            for w in &g.warnings {
                eprintln!("warning: {w}");
            }
            Ok(if g.truncated { 2 } else { 0 })
        }
        Command::Survey { weights, window, require_tau2, output } => {
            survey(&ctx, &weights, &window, require_tau2, output.as_deref())
        }
        Command::Verify { suite, seed, max_nodes, mutations, json: json_out, list } => {
            if list {
                for (name, c, d) in SUITES {
                    println!("{name}\tcriterion {c}\t{d}");
                }
                return Ok(0);
            }
            let params = Params { cap: ctx.cap, lambda4: ctx.lambda4, seed, max_nodes, mutations, ..Params::default() };
            run_verify(&ctx, suite.as_deref(), params, json_out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } | Error::Budget(_) => 2,
                _ => 1,
            })
        }
    }
}
