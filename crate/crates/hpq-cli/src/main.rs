//! `hpq` — exact bidegree spherical harmonics on the unit sphere of C^n.
//!
//! Subcommands cover the harmonic spaces (`dim`, `basis`, `zonal`,
//! `project`, `support`), the exact product oracle (`product`,
//! `algebra-check`), the pattern combinatorics (`pattern-closure`,
//! `pattern-classify`, `pattern-mclosure`), the Monte Carlo harness (`mc`),
//! and the bundled verification suites (`verify`).
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use hpq::family::{classify_pattern, PatternFamily};
use hpq::mc::{
    haar_average_check, mc_integrate, mc_project, moebius_ladder_evidence, BallAutomorphism,
    HaarSampler,
};
use hpq::pattern::{
    closure_box_with, m_ladder_closure, parse_pattern_points, six_space_classify, Bidegree,
    CombineRule, PatternBox,
};
use hpq::span::{cstar_equivalence_check, product_space_support};
use hpq::verify::{run_suite, Suite, VerifyOptions};
use hpq::zonal::SpherePoint;
use hpq::{parse_poly, BiPoly, SphereContext};

#[derive(Parser)]
#[command(name = "hpq", version, about = "Exact bidegree spherical harmonics on the unit sphere of C^n")]
struct Cli {
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads for the parallel sweeps (default: HPQ_THREADS or all
    /// cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of H(p,q).
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Basis of H(p,q), optionally with its Gram matrix.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        gram: bool,
    },
    /// Zonal reproducing kernel of H(p,q) at an exact sphere point.
    Zonal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Comma-separated Gaussian-rational coordinates, e.g. "3/5,4/5".
        #[arg(long)]
        point: String,
    },
    /// Exact projection of a polynomial onto H(p,q).
    Project {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Bidegree support of a polynomial, optionally with its components.
    Support {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        components: bool,
    },
    /// Exact support of the product space H(left)·H(right) against the
    /// combination-rule prediction.
    Product {
        #[arg(long)]
        n: usize,
        /// Left bidegree "p,q".
        #[arg(long)]
        left: String,
        /// Right bidegree "r,s".
        #[arg(long)]
        right: String,
        /// Per-factor total-degree guard; raise to go past the default.
        #[arg(long, default_value_t = 6)]
        limit: u32,
    },
    /// Least combine-closed superset of a seed inside the box.
    PatternClosure {
        /// Seed points "(p,q);(r,s)".
        #[arg(long)]
        seed: String,
        #[arg(long)]
        maxdeg: u32,
        /// "minus" is the correct rule; "plus" reproduces the broken
        /// printed variant for demonstration.
        #[arg(long, value_enum, default_value_t = RuleArg::Minus)]
        rule: RuleArg,
    },
    /// Match a pattern box against the family catalog.
    PatternClassify {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        maxdeg: u32,
    },
    /// Ladder closure of a seed and its fixpoint family.
    PatternMclosure {
        #[arg(long)]
        seed: String,
        #[arg(long)]
        maxdeg: u32,
    },
    /// Exact multiplicative-closure test of a pattern box at dimension n.
    AlgebraCheck {
        #[arg(long)]
        n: usize,
        /// Pattern literal "(p,q);(r,s)"; mutually exclusive with --family.
        #[arg(long, conflicts_with = "family")]
        pattern: Option<String>,
        /// Family literal, e.g. "Gpq(2,1)", "GSigmaStar(2)", "hol".
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        maxdeg: u32,
    },
    /// Monte Carlo estimates.
    Mc {
        #[command(subcommand)]
        op: McOp,
    },
    /// Run a bundled verification suite.
    Verify {
        /// exact-core | harmonics | patterns | product-span | mc | all
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Sweep dimension for the product-span agreement checks (>= 3).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Per-factor degree bound of the sweeps.
        #[arg(long, default_value_t = 3)]
        maxdeg: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RuleArg {
    Minus,
    Plus,
}

#[derive(Subcommand)]
enum McOp {
    /// Mean of a polynomial over the sphere.
    Integrate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Haar-average identity: mean of f(Uz) vs the exact integral.
    Haar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: String,
        /// Complex float start point, e.g. "0.6,0+0.8i".
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Estimate the (p,q)-component of f (optionally composed with a
    /// Mobius map) at an exact reference point.
    Project {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Mobius parameter a as complex floats, e.g. "0.5,0".
        #[arg(long)]
        mobius: Option<String>,
        /// Exact reference sphere point; defaults to (1,0,...,0).
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Ladder evidence: components of H(p,q)∘phi_a at (p-1,q) and (p+1,q).
    Moebius {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Mobius parameter a as complex floats.
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
}

/// Structured command output: a JSON value plus tabular rows.
struct Out {
    json: serde_json::Value,
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Out {
    fn emit(&self, format: Format) {
        match format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json).unwrap()),
            Format::Table => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
                for row in &self.rows {
                    for (i, cell) in row.iter().enumerate() {
                        widths[i] = widths[i].max(cell.len());
                    }
                }
                let line = |cells: Vec<String>| {
                    cells
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{:<w$}", c, w = widths[i]))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                println!("{}", line(self.headers.iter().map(|s| s.to_string()).collect()));
                for row in &self.rows {
                    println!("{}", line(row.clone()));
                }
            }
            Format::Csv => {
                let esc = |s: &str| {
                    if s.contains(',') || s.contains('"') || s.contains('\n') {
                        format!("\"{}\"", s.replace('"', "\"\""))
                    } else {
                        s.to_string()
                    }
                };
                println!("{}", self.headers.join(","));
                for row in &self.rows {
                    println!(
                        "{}",
                        row.iter().map(|c| esc(c)).collect::<Vec<_>>().join(",")
                    );
                }
            }
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {}", msg);
    std::process::exit(2);
}

fn parse_bidegree(text: &str) -> Bidegree {
    text.parse()
        .unwrap_or_else(|e| usage_error(format!("bad bidegree {:?}: {}", text, e)))
}

fn parse_pattern_box(text: &str, maxdeg: u32) -> PatternBox {
    let points = parse_pattern_points(text)
        .unwrap_or_else(|e| usage_error(format!("bad pattern literal: {}", e)));
    PatternBox::from_points(maxdeg, points)
}

fn parse_polynomial(text: &str, n: usize) -> BiPoly {
    parse_poly(text, n).unwrap_or_else(|e| usage_error(e))
}

fn parse_sphere_point(text: &str, n: usize) -> SpherePoint {
    let pt = SpherePoint::parse(text).unwrap_or_else(|e| usage_error(e));
    if pt.dim() != n {
        usage_error(format!("point has {} coordinates, expected {}", pt.dim(), n));
    }
    pt
}

/// Parses "0.5,0+0.8i,-0.25" into complex floats.
fn parse_complex_list(text: &str, n: usize) -> Vec<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != n {
        usage_error(format!("expected {} comma-separated components", n));
    }
    parts
        .iter()
        .map(|part| {
            parse_complex(part)
                .unwrap_or_else(|| usage_error(format!("bad complex float {:?}", part)))
        })
        .collect()
}

fn parse_complex(part: &str) -> Option<Complex64> {
    let p = part.trim();
    if let Some(body) = p.strip_suffix('i') {
        // Split real and imaginary at the last +/- that is not an exponent
        // sign or the leading sign.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i].parse().ok()?;
                let sign = if &body[i..i + 1] == "-" { -1.0 } else { 1.0 };
                let mag = &body[i + 1..];
                let im: f64 = if mag.is_empty() { 1.0 } else { mag.parse().ok()? };
                Some(Complex64::new(re, sign * im))
            }
            None => {
                let im: f64 = if body.is_empty() { 1.0 } else { body.parse().ok()? };
                Some(Complex64::new(0.0, im))
            }
        }
    } else {
        p.parse().ok().map(|re| Complex64::new(re, 0.0))
    }
}

fn bidegree_cell(b: &Bidegree) -> String {
    format!("({},{})", b.p, b.q)
}

fn set_cell(set: &std::collections::BTreeSet<Bidegree>) -> String {
    set.iter()
        .map(bidegree_cell)
        .collect::<Vec<_>>()
        .join(";")
}

fn estimate_row(label: &str, est: &hpq::mc::QuadEstimate) -> Vec<String> {
    vec![
        label.to_string(),
        format!("{:.8}", est.re),
        format!("{:.8}", est.im),
        format!("{:.3e}", est.stderr),
        est.samples.to_string(),
    ]
}

fn main() {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("HPQ_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .unwrap_or_else(|e| usage_error(format!("thread pool: {}", e)));
    }
    let format = cli.format;
    match cli.command {
        Command::Dim { n, p, q } => {
            let ctx = context(n);
            let dim = ctx.harmonic_dim(Bidegree::new(p, q));
            Out {
                json: json!({"n": n, "p": p, "q": q, "dim": dim}),
                headers: vec!["n", "p", "q", "dim"],
                rows: vec![vec![n.to_string(), p.to_string(), q.to_string(), dim.to_string()]],
            }
            .emit(format);
        }
        Command::Basis { n, p, q, gram } => {
            let ctx = context(n);
            let space = ctx.harmonic_basis(Bidegree::new(p, q));
            let mut rows: Vec<Vec<String>> = space
                .basis()
                .iter()
                .enumerate()
                .map(|(i, b)| vec![i.to_string(), b.render()])
                .collect();
            let mut value = json!({
                "n": n, "p": p, "q": q, "dim": space.dim(),
                "basis": space.basis().iter().map(|b| b.render()).collect::<Vec<_>>(),
            });
            if gram {
                let g = space.gram();
                value["gram"] = json!((0..g.rows())
                    .map(|i| (0..g.cols()).map(|j| json!(g.get(i, j))).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
                for i in 0..g.rows() {
                    let row = (0..g.cols())
                        .map(|j| g.get(i, j).to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    rows.push(vec![format!("gram[{}]", i), row]);
                }
            }
            Out {
                json: value,
                headers: vec!["index", "polynomial"],
                rows,
            }
            .emit(format);
        }
        Command::Zonal { n, p, q, point } => {
            let ctx = context(n);
            let z = parse_sphere_point(&point, n);
            let k = ctx
                .zonal_kernel(Bidegree::new(p, q), &z)
                .unwrap_or_else(|e| usage_error(e));
            let norm = ctx.norm_sq(&k.kernel).unwrap();
            Out {
                json: json!({
                    "n": n, "p": p, "q": q,
                    "point": point,
                    "kernel": k.kernel.render(),
                    "value_at_point": k.value_at_point,
                    "norm_sq": norm,
                }),
                headers: vec!["field", "value"],
                rows: vec![
                    vec!["kernel".into(), k.kernel.render()],
                    vec!["K_z(z)".into(), k.value_at_point.to_string()],
                    vec!["<K,K>".into(), norm.to_string()],
                ],
            }
            .emit(format);
        }
        Command::Project { n, poly, p, q } => {
            let ctx = context(n);
            let f = parse_polynomial(&poly, n);
            let proj = ctx
                .project_bidegree(&f, Bidegree::new(p, q))
                .unwrap_or_else(|e| usage_error(e));
            Out {
                json: json!({"n": n, "p": p, "q": q, "poly": f.render(), "projection": proj.render()}),
                headers: vec!["field", "value"],
                rows: vec![
                    vec!["input".into(), f.render()],
                    vec![format!("pi_{}{}", p, q), proj.render()],
                ],
            }
            .emit(format);
        }
        Command::Support { n, poly, components } => {
            let ctx = context(n);
            let f = parse_polynomial(&poly, n);
            let comps = ctx
                .support_components(&f)
                .unwrap_or_else(|e| usage_error(e));
            let support: Vec<String> = comps.keys().map(bidegree_cell).collect();
            let mut rows: Vec<Vec<String>> = Vec::new();
            for (bd, c) in &comps {
                rows.push(vec![
                    bidegree_cell(bd),
                    if components { c.render() } else { String::new() },
                ]);
            }
            let mut value = json!({"n": n, "poly": f.render(), "support": support});
            if components {
                value["components"] = json!(comps
                    .iter()
                    .map(|(bd, c)| json!({"bidegree": bd, "component": c.render()}))
                    .collect::<Vec<_>>());
            }
            Out {
                json: value,
                headers: vec!["bidegree", "component"],
                rows,
            }
            .emit(format);
        }
        Command::Product { n, left, right, limit } => {
            let ctx = context(n);
            let l = parse_bidegree(&left);
            let r = parse_bidegree(&right);
            if l.total() > limit || r.total() > limit {
                usage_error(format!(
                    "factor total degree exceeds the guard ({}); pass --limit to override",
                    limit
                ));
            }
            let report = product_space_support(&ctx, l, r).unwrap_or_else(|e| usage_error(e));
            let mut rows = vec![
                vec!["support".into(), set_cell(&report.support)],
                vec!["predicted".into(), set_cell(&report.predicted)],
                vec!["match".into(), report.matches.to_string()],
                vec!["missing".into(), set_cell(&report.missing)],
                vec!["extra".into(), set_cell(&report.extra)],
            ];
            for w in &report.witnesses {
                rows.push(vec![
                    format!("witness {}", bidegree_cell(&w.bidegree)),
                    w.component.render(),
                ]);
            }
            Out {
                json: serde_json::to_value(&report).unwrap(),
                headers: vec!["field", "value"],
                rows,
            }
            .emit(format);
        }
        Command::PatternClosure { seed, maxdeg, rule } => {
            let seed_box = parse_pattern_box(&seed, maxdeg);
            let rule = match rule {
                RuleArg::Minus => CombineRule::Minus,
                RuleArg::Plus => CombineRule::Plus,
            };
            let closed = closure_box_with(rule, &seed_box);
            let mut value = json!({
                "maxdeg": maxdeg,
                "seed": seed_box.to_string(),
                "rule": if rule == CombineRule::Plus { "plus" } else { "minus" },
                "closure": closed.to_string(),
                "members": closed.members(),
            });
            if rule == CombineRule::Plus {
                value["note"] = json!(
                    "the plus rule exists only to demonstrate its disagreement \
                     with the exact product supports"
                );
            }
            Out {
                json: value,
                headers: vec!["closure"],
                rows: vec![vec![closed.to_string()]],
            }
            .emit(format);
        }
        Command::PatternClassify { pattern, maxdeg } => {
            let omega = parse_pattern_box(&pattern, maxdeg);
            match classify_pattern(&omega) {
                Ok(result) => {
                    Out {
                        json: serde_json::to_value(&result).unwrap(),
                        headers: vec!["field", "value"],
                        rows: vec![
                            vec!["family".into(), result.family.to_string()],
                            vec!["verified_box".into(), result.verified_box.to_string()],
                            vec!["notes".into(), result.notes.join(" | ")],
                        ],
                    }
                    .emit(format);
                }
                Err(e) => {
                    eprintln!("classification failed: {}", e);
                    std::process::exit(1);
                }
            }
        }
        Command::PatternMclosure { seed, maxdeg } => {
            let seed_box = parse_pattern_box(&seed, maxdeg);
            let closed = m_ladder_closure(&seed_box);
            let family = six_space_classify(&seed_box);
            Out {
                json: json!({
                    "maxdeg": maxdeg,
                    "seed": seed_box.to_string(),
                    "closure": closed.to_string(),
                    "family": family.to_string(),
                }),
                headers: vec!["field", "value"],
                rows: vec![
                    vec!["closure".into(), closed.to_string()],
                    vec!["family".into(), family.to_string()],
                ],
            }
            .emit(format);
        }
        Command::AlgebraCheck {
            n,
            pattern,
            family,
            maxdeg,
        } => {
            let ctx = context(n);
            let omega = match (&pattern, &family) {
                (Some(p), None) => parse_pattern_box(p, maxdeg),
                (None, Some(f)) => {
                    let fam: PatternFamily =
                        f.parse().unwrap_or_else(|e| usage_error(e));
                    PatternBox::from_family(&fam, maxdeg)
                }
                _ => usage_error("pass exactly one of --pattern or --family"),
            };
            let eq = cstar_equivalence_check(&ctx, &omega).unwrap_or_else(|e| usage_error(e));
            let check = &eq.check;
            let ce = check
                .counterexample
                .as_ref()
                .map(|c| {
                    format!(
                        "{} x {} escapes at {}",
                        bidegree_cell(&c.left),
                        bidegree_cell(&c.right),
                        bidegree_cell(&c.escaped)
                    )
                })
                .unwrap_or_default();
            Out {
                json: serde_json::to_value(&eq).unwrap(),
                headers: vec!["field", "value"],
                rows: vec![
                    vec!["pattern".into(), omega.to_string()],
                    vec!["is_algebra".into(), check.holds.to_string()],
                    vec!["counterexample".into(), ce],
                    vec!["pairs_checked".into(), check.pairs_checked.to_string()],
                    vec!["closure_note".into(), eq.note.clone()],
                ],
            }
            .emit(format);
        }
        Command::Mc { op } => run_mc(op, format),
        Command::Verify {
            suite,
            seed,
            samples,
            n,
            maxdeg,
        } => {
            let suite: Suite = suite.parse().unwrap_or_else(|e| usage_error(e));
            let opts = VerifyOptions {
                seed,
                samples,
                sweep_n: n,
                sweep_maxdeg: maxdeg,
            };
            let results = run_suite(suite, &opts);
            let failed = results.iter().filter(|r| !r.passed).count();
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        if r.passed { "PASS" } else { "FAIL" }.to_string(),
                        r.name.clone(),
                        r.detail.clone(),
                    ]
                })
                .collect();
            Out {
                json: json!({
                    "suite": suite.to_string(),
                    "seed": seed,
                    "samples": samples,
                    "passed": failed == 0,
                    "checks": results,
                }),
                headers: vec!["status", "check", "detail"],
                rows,
            }
            .emit(format);
            if failed > 0 {
                std::process::exit(1);
            }
        }
    }
}

fn context(n: usize) -> SphereContext {
    if n == 0 {
        usage_error("dimension n must be at least 1");
    }
    SphereContext::new(n)
}

fn run_mc(op: McOp, format: Format) {
    match op {
        McOp::Integrate { n, f, seed, samples } => {
            let _ = context(n);
            let poly = parse_polynomial(&f, n);
            let sampler = HaarSampler::new(seed, n);
            let est = mc_integrate(|z| poly.eval_complex(z), &sampler, samples);
            Out {
                json: json!({"n": n, "f": poly.render(), "seed": seed, "estimate": est}),
                headers: vec!["quantity", "re", "im", "stderr", "samples"],
                rows: vec![estimate_row("mean", &est)],
            }
            .emit(format);
        }
        McOp::Haar {
            n,
            f,
            point,
            seed,
            samples,
        } => {
            let ctx = context(n);
            let poly = parse_polynomial(&f, n);
            let z = parse_complex_list(&point, n);
            let sampler = HaarSampler::new(seed, n);
            let chk = haar_average_check(&ctx, &poly, &z, &sampler, samples)
                .unwrap_or_else(|e| usage_error(e));
            Out {
                json: json!({
                    "n": n, "f": poly.render(), "seed": seed,
                    "estimate": chk.estimate,
                    "exact": {"re": chk.exact_re, "im": chk.exact_im},
                    "agrees": chk.agrees(),
                }),
                headers: vec!["quantity", "re", "im", "stderr", "samples"],
                rows: vec![
                    estimate_row("haar-average", &chk.estimate),
                    vec![
                        "exact".into(),
                        format!("{:.8}", chk.exact_re),
                        format!("{:.8}", chk.exact_im),
                        "0".into(),
                        "-".into(),
                    ],
                ],
            }
            .emit(format);
        }
        McOp::Project {
            n,
            f,
            p,
            q,
            mobius,
            point,
            seed,
            samples,
        } => {
            let ctx = context(n);
            let poly = parse_polynomial(&f, n);
            let z0 = match point {
                Some(text) => parse_sphere_point(&text, n),
                None => SpherePoint::base(n),
            };
            let sampler = HaarSampler::new(seed, n);
            let phi = mobius.map(|text| {
                BallAutomorphism::new(parse_complex_list(&text, n))
                    .unwrap_or_else(|e| usage_error(e))
            });
            let bd = Bidegree::new(p, q);
            let est = match &phi {
                Some(phi) => mc_project(
                    &ctx,
                    |z: &[Complex64]| {
                        let w = phi.apply(z).expect("Mobius map regular on the sphere");
                        poly.eval_complex(&w)
                    },
                    bd,
                    &z0,
                    &sampler,
                    samples,
                ),
                None => mc_project(
                    &ctx,
                    |z: &[Complex64]| poly.eval_complex(z),
                    bd,
                    &z0,
                    &sampler,
                    samples,
                ),
            }
            .unwrap_or_else(|e| usage_error(e));
            Out {
                json: json!({
                    "n": n, "f": poly.render(), "p": p, "q": q, "seed": seed,
                    "mobius": phi.is_some(),
                    "estimate": est,
                    "nonzero": est.is_nonzero(),
                }),
                headers: vec!["quantity", "re", "im", "stderr", "samples"],
                rows: vec![estimate_row("component", &est)],
            }
            .emit(format);
        }
        McOp::Moebius {
            n,
            p,
            q,
            a,
            seed,
            samples,
        } => {
            if p < 1 {
                usage_error("ladder evidence needs p >= 1");
            }
            let ctx = context(n);
            let phi = BallAutomorphism::new(parse_complex_list(&a, n))
                .unwrap_or_else(|e| usage_error(e));
            let sampler = HaarSampler::new(seed, n);
            let z0 = SpherePoint::base(n);
            let report = moebius_ladder_evidence(
                &ctx,
                Bidegree::new(p, q),
                &phi,
                &z0,
                &sampler,
                samples,
            )
            .unwrap_or_else(|e| usage_error(e));
            let mut rows = Vec::new();
            for target in [&report.down, &report.up] {
                for (i, est) in target.estimates.iter().enumerate() {
                    rows.push(estimate_row(
                        &format!("{} basis[{}]", bidegree_cell(&target.target), i),
                        est,
                    ));
                }
            }
            for (bd, est) in &report.conjugate_components {
                rows.push(estimate_row(&format!("{} (conjugate)", bidegree_cell(bd)), est));
            }
            Out {
                json: serde_json::to_value(&report).unwrap(),
                headers: vec!["quantity", "re", "im", "stderr", "samples"],
                rows,
            }
            .emit(format);
        }
    }
}
