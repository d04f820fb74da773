use std::io::Read;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};
use treefrac::census::{alpha, enumerate_t, AlphaOutcome};
use treefrac::cfrac::{
    cf_eval, cf_expand, generator_matrix, to_alternating, AlternatingCf, CfExpansion, Mat2, Rational, Representation,
};
use treefrac::dimension::{
    certify_lower, certify_upper, circles_csv, fractal_circles, pressure_estimate, CertifyOptions,
    DimensionCertificate, DimensionError, Method,
};
use treefrac::orbit::{ball, congruence_quotient, numerators, representation_counts, sl2_order};
use treefrac::treegraph::{build_from_alternating, build_trimmed, parse_edge_list, to_dot, to_edge_list};

use crate::acceptance;
use crate::args::*;
use crate::config::Config;
use crate::record::{Invocation, RunRecord, SCHEMA_VERSION};
use crate::{exit, CliError};

/// `<(0, 1) gamma, (1, 0)>`, the numerator of the alternating fraction.
const ROW: (i64, i64) = (0, 1);
const COLUMN: (i64, i64) = (1, 0);

/// A finished run: the record to print and the process exit code.
#[derive(Debug)]
pub struct Execution {
    pub record: RunRecord,
    pub code: i32,
}

struct Outcome {
    invocation: Invocation,
    outputs: Value,
    cache: Option<&'static str>,
    code: i32,
}

impl Outcome {
    fn ok(invocation: Invocation, outputs: Value) -> Self {
        Outcome { invocation, outputs, cache: None, code: exit::OK }
    }
}

pub fn execute(cli: &Cli, cfg: &Config) -> Result<Execution, CliError> {
    let cache_dir = if cli.no_cache { None } else { cfg.cache_dir.as_deref() };
    let out = match &cli.command {
        Command::Cf(a) => cf(a)?,
        Command::Graph(a) => graph(a)?,
        Command::Tau(a) => tau(a)?,
        Command::Census(a) => census(a, cfg, cache_dir)?,
        Command::Alpha(a) => alpha_table(a, cfg)?,
        Command::Orbit(o) => orbit(o, cfg)?,
        Command::Dim(d) => dim(d, cfg)?,
        Command::ReproducePaper(a) => reproduce(a)?,
    };
    Ok(Execution { record: out.invocation.record(out.outputs, out.cache), code: out.code })
}

fn to_json(x: &impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("result types serialize")
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Other(anyhow::anyhow!("writing {}: {e}", path.display())))
}

fn path_value(p: &Option<PathBuf>) -> Value {
    p.as_ref().map_or(Value::Null, |p| Value::String(p.display().to_string()))
}

fn cf(args: &CfArgs) -> Result<Outcome, CliError> {
    let (invocation, x) = match (&args.eval, &args.value) {
        (Some(e), _) => {
            let expansion: CfExpansion = e.parse()?;
            (Invocation::new(&["cf"]).flag("eval", e.as_str()), cf_eval(&expansion))
        }
        (None, Some(v)) => (Invocation::new(&["cf"]).positional("value", v.as_str()), v.parse::<Rational>()?),
        (None, None) => return Err(CliError::Parse("expected a fraction or --eval".into())),
    };
    let expansion = cf_expand(&x);
    let representation = if x.is_in_open_unit_interval() { Some(to_alternating(&x)?) } else { None };

    // Bottom row of the generator product when alternating, otherwise of the
    // quotient-matrix product; either way it is (numerator, denominator).
    let (product, matrix) = match representation.as_ref().and_then(Representation::alternating) {
        Some(acf) => {
            ("generators", acf.digits().iter().rev().fold(Mat2::identity(), |m, &b| &m * &generator_matrix(b)))
        }
        None => {
            let shift = Mat2::new(1, 0, BigInt::from(expansion.a0().clone()), 1);
            let m = expansion.quotients().iter().rev().fold(Mat2::identity(), |m, q| &m * &Mat2::quotient(q.clone()));
            ("quotients", &m * &shift)
        }
    };
    let (t, u) = matrix.bottom_row();
    let form = match &representation {
        Some(Representation::Alternating(_)) => "alternating",
        Some(Representation::NotRepresentable) => "not_representable",
        None => "outside_unit_interval",
    };
    let acf = representation.as_ref().and_then(Representation::alternating);
    let outputs = json!({
        "value": x.to_string(),
        "expansion": expansion.to_string(),
        "representation": form,
        "alternating": acf.map(ToString::to_string),
        "bs": acf.map(|a| a.digits().to_vec()),
        "product": product,
        "bottom_row": [t.to_string(), u.to_string()],
    });
    Ok(Outcome::ok(invocation, outputs))
}

fn graph(args: &GraphArgs) -> Result<Outcome, CliError> {
    let acf: AlternatingCf = args.bs.parse()?;
    let digits = strings(acf.digits()).join(",");
    let invocation = Invocation::new(&["graph"])
        .flag("bs", digits)
        .flag("trim", args.trim)
        .flag("dot", path_value(&args.dot))
        .flag("edge-list", path_value(&args.edge_list));
    let (outputs, dot, edges) = if args.trim {
        let r = build_trimmed(&acf)?;
        let out = json!({ "alternating": acf.to_string(), "consistent": r.tau == r.t, "report": to_json(&r) });
        (out, to_dot(&r.graph, None), to_edge_list(&r.graph, None))
    } else {
        let r = build_from_alternating(&acf)?;
        let out = json!({ "alternating": acf.to_string(), "consistent": r.consistent(), "report": to_json(&r) });
        (out, r.graph.to_dot(), r.graph.to_edge_list())
    };
    if let Some(p) = &args.dot {
        write_file(p, &dot)?;
    }
    if let Some(p) = &args.edge_list {
        write_file(p, &edges)?;
    }
    Ok(Outcome::ok(invocation, outputs))
}

fn tau(args: &TauArgs) -> Result<Outcome, CliError> {
    let text = if args.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&args.input)
            .map_err(|e| CliError::Other(anyhow::anyhow!("reading {}: {e}", args.input.display())))?
    };
    let (g, marked) = parse_edge_list(&text)?;
    let marked = match marked {
        Some(i) => {
            let mg = treefrac::treegraph::MarkedGraph::new(g.clone(), i)?;
            let stv = mg.stv();
            json!({ "index": i, "edge": mg.marked_edge(), "del": stv.del.to_string(), "con": stv.con.to_string() })
        }
        None => Value::Null,
    };
    let outputs = json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "tau": g.tau().to_string(),
        "connected": g.is_connected(),
        "simple": g.is_simple(),
        "planar": g.is_planar(),
        "marked": marked,
    });
    let invocation = Invocation::new(&["tau"]).positional("input", args.input.display().to_string());
    Ok(Outcome::ok(invocation, outputs))
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CacheEntry {
    schema_version: u32,
    artifact_version: String,
    outputs: Value,
}

fn read_cache(path: &Path) -> Option<Value> {
    let entry: CacheEntry = serde_json::from_str(&std::fs::read_to_string(path).ok()?).ok()?;
    (entry.schema_version == SCHEMA_VERSION && entry.artifact_version == env!("CARGO_PKG_VERSION"))
        .then_some(entry.outputs)
}

fn write_cache(path: &Path, outputs: &Value) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let entry = CacheEntry {
        schema_version: SCHEMA_VERSION,
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        outputs: outputs.clone(),
    };
    // write then rename so a concurrent reader never sees half a file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    write_file(&tmp, &serde_json::to_string(&entry).expect("json"))?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn census(args: &CensusArgs, cfg: &Config, cache_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let planar = !args.nonplanar;
    let invocation = Invocation::new(&["census"])
        .flag("n", args.n)
        .flag("nonplanar", args.nonplanar)
        .flag("witnesses", args.witnesses);
    let cap = cfg.census_max_n;
    if args.n == 0 || args.n > cap {
        return Err(treefrac::census::CensusError::OutOfRange { n: args.n, cap }.into());
    }
    let key = format!(
        "census-n{}-{}{}.json",
        args.n,
        if planar { "planar" } else { "all" },
        if args.witnesses { "-w" } else { "" }
    );
    let cache_path = cache_dir.map(|d| d.join(key));
    if let Some(outputs) = cache_path.as_deref().and_then(read_cache) {
        return Ok(Outcome { invocation, outputs, cache: Some("hit"), code: exit::OK });
    }
    let result = enumerate_t(args.n, planar, cap)?;
    let mut outputs = to_json(&result.to_record());
    if args.witnesses {
        let w: serde_json::Map<String, Value> =
            result.witnesses.iter().map(|(t, g)| (t.to_string(), Value::String(to_edge_list(g, None)))).collect();
        outputs["witnesses"] = Value::Object(w);
    }
    let cache = match &cache_path {
        Some(p) => {
            write_cache(p, &outputs)?;
            Some("miss")
        }
        None => None,
    };
    Ok(Outcome { invocation, outputs, cache, code: exit::OK })
}

fn alpha_table(args: &AlphaArgs, cfg: &Config) -> Result<Outcome, CliError> {
    if args.min < 3 || args.max < args.min {
        return Err(CliError::Parse(format!("need 3 <= min <= max, got {}..{}", args.min, args.max)));
    }
    let invocation = Invocation::new(&["alpha"])
        .flag("min", args.min)
        .flag("max", args.max)
        .flag("csv", path_value(&args.csv))
        .flag("search-cap", cfg.census_max_n);
    let mut rows = Vec::new();
    let mut csv = String::from("t,alpha,status,construction_vertices,construction_digits\n");
    for t in args.min..=args.max {
        let outcome = alpha(&BigUint::from(t), cfg.census_max_n)?;
        let bound = outcome.construction_bound();
        let (value, status, searched) = match &outcome {
            AlphaOutcome::Exact(e) => (Some(e.alpha), "exact", None),
            AlphaOutcome::Unknown { searched_up_to, .. } => (None, "unknown", Some(*searched_up_to)),
        };
        csv.push_str(&format!(
            "{t},{},{status},{},\"{}\"\n",
            value.map_or(String::new(), |v| v.to_string()),
            bound.map_or(String::new(), |b| b.vertices.to_string()),
            bound.map_or(String::new(), |b| b.digits.to_string()),
        ));
        rows.push(json!({
            "t": t.to_string(),
            "alpha": value,
            "status": status,
            "searched_up_to": searched,
            "construction_bound": bound.map(|b| json!({ "vertices": b.vertices, "digits": b.digits.to_string() })),
        }));
    }
    if let Some(p) = &args.csv {
        write_file(p, &csv)?;
    }
    Ok(Outcome::ok(invocation, json!({ "rows": rows })))
}

// The element cap only decides whether a run is allowed, never its result,
// so it is not part of the canonical invocation.
fn orbit(cmd: &OrbitCommand, cfg: &Config) -> Result<Outcome, CliError> {
    let cap = cfg.ball_max_elements;
    match cmd {
        OrbitCommand::Ball(a) => {
            let b = ball(a.a, a.radius, cap)?;
            let inv = Invocation::new(&["orbit", "ball"]).flag("A", a.a).flag("N", a.radius);
            Ok(Outcome::ok(inv, to_json(&b.stats())))
        }
        OrbitCommand::Numerators(a) => {
            let b = ball(a.a, a.radius, cap)?;
            let nums = numerators(&b.elements, ROW, COLUMN);
            let inv = Invocation::new(&["orbit", "numerators"]).flag("A", a.a).flag("N", a.radius);
            let outputs = json!({
                "A": a.a,
                "N": a.radius,
                "ball_size": b.len(),
                "count": nums.len(),
                "numerators": strings(&nums),
            });
            Ok(Outcome::ok(inv, outputs))
        }
        OrbitCommand::Repnum(a) => {
            let b = ball(a.a, a.radius, cap)?;
            let counts = representation_counts(&b, ROW, COLUMN);
            let mut inv = Invocation::new(&["orbit", "repnum"]).flag("A", a.a).flag("N", a.radius);
            let outputs = match &a.value {
                Some(v) => {
                    let n: BigInt = v.trim().parse().map_err(|_| CliError::Parse(format!("not an integer: {v:?}")))?;
                    inv = inv.flag("value", n.to_string());
                    json!({ "A": a.a, "N": a.radius, "value": n.to_string(), "count": counts.get(&n).copied().unwrap_or(0) })
                }
                None => {
                    let rows: Vec<Value> =
                        counts.iter().map(|(n, c)| json!({ "n": n.to_string(), "count": c })).collect();
                    json!({
                        "A": a.a,
                        "N": a.radius,
                        "ball_size": b.len(),
                        "total": counts.values().sum::<usize>(),
                        "counts": rows,
                    })
                }
            };
            Ok(Outcome::ok(inv, outputs))
        }
        OrbitCommand::Admissible(a) => {
            if a.qmin < 2 || a.qmax < a.qmin {
                return Err(CliError::Parse(format!("need 2 <= qmin <= qmax, got {}..{}", a.qmin, a.qmax)));
            }
            let mut rows = Vec::new();
            let mut all_full = true;
            for q in a.qmin..=a.qmax {
                let c = congruence_quotient(a.a, q)?;
                all_full &= c.full;
                rows.push(json!({
                    "q": q,
                    "reached": c.reached.len(),
                    "order": sl2_order(q as u64),
                    "full": c.full,
                    "residues": c.residues(ROW, COLUMN).len(),
                }));
            }
            let inv =
                Invocation::new(&["orbit", "admissible"]).flag("A", a.a).flag("qmin", a.qmin).flag("qmax", a.qmax);
            Ok(Outcome::ok(inv, json!({ "A": a.a, "all_full": all_full, "rows": rows })))
        }
    }
}

fn certify_options(c: &CertifyArgs, cfg: &Config) -> CertifyOptions {
    let method = match c.method {
        MethodArg::Grid => Method::GridLipschitz,
        MethodArg::Interval => Method::Interval,
    };
    CertifyOptions { cells: c.cells.unwrap_or(cfg.grid_cells), method }
}

fn certify_flags(inv: Invocation, c: &CertifyArgs, opts: &CertifyOptions) -> Invocation {
    let method = match c.method {
        MethodArg::Grid => "grid",
        MethodArg::Interval => "interval",
    };
    inv.flag("s", c.s).flag("order", c.order).flag("cells", opts.cells).flag("method", method)
}

/// A failed certification is a result, not an error: it is reported with exit code 2.
fn certificate_outcome(inv: Invocation, r: Result<DimensionCertificate, DimensionError>) -> Result<Outcome, CliError> {
    match r {
        Ok(cert) => Ok(Outcome::ok(inv, json!({ "status": "certified", "certificate": to_json(&cert) }))),
        Err(DimensionError::CertificationFailed { kind, best_margin, f_min, reason }) => {
            let outputs = json!({
                "status": "failed",
                "kind": kind,
                "best_margin": best_margin,
                "f_min": f_min,
                "reason": reason,
            });
            Ok(Outcome { invocation: inv, outputs, cache: None, code: exit::CERTIFICATION_FAILED })
        }
        Err(e) => Err(e.into()),
    }
}

fn dim(cmd: &DimCommand, cfg: &Config) -> Result<Outcome, CliError> {
    match cmd {
        DimCommand::Lower(a) => {
            let opts = certify_options(&a.certify, cfg);
            let inv = certify_flags(Invocation::new(&["dim", "lower"]).flag("A", a.a), &a.certify, &opts);
            certificate_outcome(inv, certify_lower(a.a, a.certify.s, a.certify.order, opts))
        }
        DimCommand::Upper(a) => {
            let opts = certify_options(&a.certify, cfg);
            let inv = certify_flags(Invocation::new(&["dim", "upper"]), &a.certify, &opts);
            certificate_outcome(inv, certify_upper(a.certify.s, a.certify.order, opts))
        }
        DimCommand::Pressure(a) => {
            let p = pressure_estimate(a.a, a.s, a.depth)?;
            let inv = Invocation::new(&["dim", "pressure"]).flag("A", a.a).flag("s", a.s).flag("depth", a.depth);
            let mut outputs = to_json(&p);
            outputs["value"] = json!(p.value());
            Ok(Outcome::ok(inv, outputs))
        }
        DimCommand::Circles(a) => {
            let circles = fractal_circles(a.depth, a.max_digit)?;
            if let Some(p) = &a.csv {
                write_file(p, &circles_csv(&circles))?;
            }
            let inv = Invocation::new(&["dim", "circles"])
                .flag("depth", a.depth)
                .flag("max-digit", a.max_digit)
                .flag("csv", path_value(&a.csv));
            let outputs = json!({
                "depth": a.depth,
                "max_digit": a.max_digit,
                "count": circles.len(),
                "circles": to_json(&circles),
            });
            Ok(Outcome::ok(inv, outputs))
        }
    }
}

fn reproduce(args: &ReproduceArgs) -> Result<Outcome, CliError> {
    let mut only = args.only.clone();
    only.sort_unstable();
    only.dedup();
    let ids = strings(&only).join(",");
    let inv = Invocation::new(&["reproduce-paper"]).flag("only", if ids.is_empty() { Value::Null } else { ids.into() });
    let results = acceptance::run(&only, |o| eprintln!("{}", o.line()));
    let passed = results.iter().filter(|o| o.pass).count();
    let outputs = json!({ "passed": passed, "total": results.len(), "criteria": to_json(&results) });
    let code = if passed == results.len() { exit::OK } else { exit::FAILURE };
    Ok(Outcome { invocation: inv, outputs, cache: None, code })
}
