//! `richelot`: construct Richelot data, map Kummer points, list nodes and
//! tropes, enumerate decompositions and run the verification suites.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use richelot_core::json::{
    factored_to_json, field, period_data_to_json, quad_to_json, richelot_data_from_json,
    richelot_data_to_json, sextic_to_json, vec4_from_json, vec_to_json,
};
use richelot_core::linalg::normalize_projective;
use richelot_core::numeric::{compute_periods, NumericConfig};
use richelot_core::suites::{self, Check};
use richelot_core::{
    enumerate_decompositions, incidence, is_admissible, node_table, trope_table, Error, NodeLabel,
    Rational, RichelotData, RootedSextic, Scalar, TropeLabel, Vec4, C64,
};
use serde_json::{json, Value};

use report::Report;

#[derive(Parser)]
#[command(name = "richelot", version, about = "Richelot isogeny of genus-2 Kummer surfaces")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Input JSON; the standard fixture p = x^2 - x, q = x^2 - 5x + 6,
    /// r = x^2 - 9x + 20 when omitted.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Use floating-point arithmetic or run the numeric suites.
    #[arg(long, global = true)]
    numeric: bool,
    /// Target precision in bits for the numeric layer.
    #[arg(long, global = true, default_value_t = 42)]
    precision: u32,
    /// Acceptance tolerance for numeric checks.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Seed of the randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the dual sextic and all matrices of the Richelot map.
    Construct,
    /// Apply the Kummer-surface map to the point "a" of the input.
    MapPoint {
        /// Scale the image so that its last nonzero coordinate is 1.
        #[arg(long)]
        normalize: bool,
    },
    /// The 16 nodes of the Kummer surface.
    Nodes,
    /// The 16 tropes and the nodes on each.
    Tropes,
    /// The 15 groupings of the roots into three pairs.
    Decompose {
        /// Include the dual sextic of every nondegenerate row.
        #[arg(long)]
        hat: bool,
    },
    /// Run the exact suites, and the numeric ones with --numeric.
    Verify {
        /// Random triples in the identity suite.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = &cli.opts;
    if o.tol.is_nan() || o.tol <= 0.0 {
        eprintln!("error: --tol must be positive");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Construct => construct(o),
        Command::MapPoint { normalize } => map_point(o, *normalize),
        Command::Nodes => nodes(o),
        Command::Tropes => tropes(o),
        Command::Decompose { hat } => decompose(o, *hat),
        Command::Verify { trials } => verify(o, *trials),
    };
    let mut rep = match result {
        Ok(r) => r.finish(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    rep.timings.insert("total".into(), start.elapsed().as_secs_f64());
    let text = serde_json::to_string_pretty(&rep).expect("report serializes");
    match &o.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text + "\n") {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => {
            use std::io::Write;
            // A closed pipe downstream is not an error of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
        }
    }
    eprintln!("{}", rep.summary);
    if rep.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn new_report(name: &str, o: &Opts) -> Report {
    let bits = NumericConfig::with_precision(o.precision).precision_bits;
    Report::new(name, o.seed, bits, o.tol)
}

fn timed<T>(rep: &mut Report, name: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let v = f();
    rep.timings.insert(name.into(), t.elapsed().as_secs_f64());
    v
}

fn construct(o: &Opts) -> richelot_core::Result<Report> {
    let v = input::load(o.input.as_deref())?;
    let fs = input::triple(&v)?;
    let mut rep = new_report("construct", o);
    let rd = timed(&mut rep, "construct", || RichelotData::build(&fs));
    let data = richelot_data_to_json(&rd);
    let text = serde_json::to_string(&data).expect("serializes");
    let back: Option<RichelotData<Rational>> =
        serde_json::from_str(&text).ok().and_then(|v: Value| richelot_data_from_json(&v).ok());
    rep.checks.push(check_bool("json_round_trip", back.as_ref() == Some(&rd), "RichelotData re-parsed from its JSON"));
    rep.checks.extend(suites::input_checks(&fs));
    let mut result = json!({ "input": factored_to_json(&fs), "data": data });
    if o.numeric {
        let cfg = NumericConfig::with_precision(o.precision);
        let fc = fs.to_c64();
        let periods = timed(&mut rep, "periods", || -> richelot_core::Result<Value> {
            Ok(json!({
                "f": period_data_to_json(&compute_periods(&fc.f, &cfg)?),
                "hat_f": period_data_to_json(&compute_periods(&fc.hat_f(), &cfg)?),
            }))
        })?;
        result["periods"] = periods;
    }
    rep.result = result;
    Ok(rep)
}

fn check_bool(name: &str, ok: bool, detail: &str) -> Check {
    Check {
        name: name.into(),
        passed: ok,
        residual: None,
        tolerance: None,
        detail: detail.into(),
        inputs: Value::Null,
        gating: true,
    }
}

/// Divides by the last nonzero coordinate.
fn normalize_exact(a: &Vec4<Rational>) -> Vec4<Rational> {
    match a.iter().rev().find(|x| **x != richelot_core::int(0)) {
        Some(s) => a.clone().map(|x| x / s.clone()),
        None => a.clone(),
    }
}

fn map_point(o: &Opts, normalize: bool) -> richelot_core::Result<Report> {
    let v = input::load(o.input.as_deref())?;
    let fs = input::triple(&v)?;
    let a = field(&v, "a")?;
    let mut rep = new_report("map-point", o);
    let (point, image) = if o.numeric {
        let a: Vec4<C64> = vec4_from_json(a)?;
        let img = fs.to_c64().richelot_map(&a)?;
        let img = if normalize { normalize_projective(&img) } else { img };
        (vec_to_json(&a), vec_to_json(&img))
    } else {
        let a: Vec4<Rational> = vec4_from_json(a)?;
        let img = fs.richelot_map(&a)?;
        let img = if normalize { normalize_exact(&img) } else { img };
        (vec_to_json(&a), vec_to_json(&img))
    };
    rep.result = json!({ "input": factored_to_json(&fs), "a": point, "image": image, "normalized": normalize });
    Ok(rep)
}

fn node_name(l: NodeLabel) -> String {
    match l {
        NodeLabel::Zero => "N0".into(),
        NodeLabel::Pair(i, j) => format!("N{}{}", i + 1, j + 1),
    }
}

fn trope_name(l: TropeLabel) -> String {
    match l {
        TropeLabel::Single(k) => format!("T{}", k + 1),
        TropeLabel::Triple(t) => format!("T{}{}{}", t[0] + 1, t[1] + 1, t[2] + 1),
    }
}

/// Exact roots when rational; floating roots with `--numeric` otherwise.
enum Rooted {
    Exact(RootedSextic<Rational>),
    Float(RootedSextic<C64>),
}

fn rooted(o: &Opts, v: &Value) -> richelot_core::Result<Rooted> {
    match input::rooted(v) {
        Ok(rs) if !o.numeric => Ok(Rooted::Exact(rs)),
        Ok(rs) => Ok(Rooted::Float(rs.to_c64())),
        Err(Error::RootsUnavailable(_)) if o.numeric => {
            let f = input::curve(v)?;
            Ok(Rooted::Float(RootedSextic::from_sextic_numeric(&f.to_c64())?))
        }
        Err(e) => Err(e),
    }
}

fn roots_json<T: Scalar + richelot_core::json::JsonScalar>(rs: &RootedSextic<T>) -> Value {
    Value::Array(
        rs.roots
            .iter()
            .map(|r| match r {
                richelot_core::WPoint::Finite(x) => x.to_json(),
                richelot_core::WPoint::Infinity => json!("inf"),
            })
            .collect(),
    )
}

fn node_listing<T: Scalar + richelot_core::json::JsonScalar>(rs: &RootedSextic<T>, tol: f64) -> richelot_core::Result<(Value, Check)> {
    let table = node_table(rs)?;
    let tropes = trope_table(rs);
    let inc = incidence(&table, &tropes, tol);
    let list: Vec<Value> = table
        .nodes
        .iter()
        .enumerate()
        .map(|(n, (l, v))| {
            let on: Vec<String> = (0..tropes.len()).filter(|&t| inc[t][n]).map(|t| trope_name(tropes[t].0)).collect();
            json!({ "label": node_name(*l), "coords": vec_to_json(v), "tropes": on })
        })
        .collect();
    let ok = (0..16).all(|n| inc.iter().filter(|r| r[n]).count() == 6);
    let value = json!({ "roots": roots_json(rs), "nodes": list });
    Ok((value, check_bool("six_tropes_per_node", ok, "every node lies on exactly six tropes")))
}

fn trope_listing<T: Scalar + richelot_core::json::JsonScalar>(rs: &RootedSextic<T>, tol: f64) -> richelot_core::Result<(Value, Check)> {
    let table = node_table(rs)?;
    let tropes = trope_table(rs);
    let inc = incidence(&table, &tropes, tol);
    let list: Vec<Value> = tropes
        .iter()
        .enumerate()
        .map(|(t, (l, v))| {
            let on: Vec<String> =
                table.nodes.iter().enumerate().filter(|(n, _)| inc[t][*n]).map(|(_, (nl, _))| node_name(*nl)).collect();
            json!({ "label": trope_name(*l), "coords": vec_to_json(v), "nodes": on })
        })
        .collect();
    let ok = inc.iter().all(|r| r.iter().filter(|&&b| b).count() == 6);
    let value = json!({ "roots": roots_json(rs), "tropes": list });
    Ok((value, check_bool("six_nodes_per_trope", ok, "every trope contains exactly six nodes")))
}

fn nodes(o: &Opts) -> richelot_core::Result<Report> {
    let v = input::load(o.input.as_deref())?;
    let mut rep = new_report("nodes", o);
    let (value, check) = match rooted(o, &v)? {
        Rooted::Exact(rs) => node_listing(&rs, 0.0)?,
        Rooted::Float(rs) => node_listing(&rs, o.tol)?,
    };
    rep.checks.push(check);
    rep.result = value;
    Ok(rep)
}

fn tropes(o: &Opts) -> richelot_core::Result<Report> {
    let v = input::load(o.input.as_deref())?;
    let mut rep = new_report("tropes", o);
    let (value, check) = match rooted(o, &v)? {
        Rooted::Exact(rs) => trope_listing(&rs, 0.0)?,
        Rooted::Float(rs) => trope_listing(&rs, o.tol)?,
    };
    rep.checks.push(check);
    rep.result = value;
    Ok(rep)
}

fn decompose_rows<T: Scalar + richelot_core::json::JsonScalar>(rs: &RootedSextic<T>, hat: bool) -> (Vec<Value>, usize, usize) {
    let ds = enumerate_decompositions(rs);
    let mut bad = 0;
    let rows = ds
        .iter()
        .map(|d| {
            let mut row = json!({
                "pairs": d.pairs.map(|(i, j)| [i + 1, j + 1]),
                "p": quad_to_json(&d.p),
                "q": quad_to_json(&d.q),
                "r": quad_to_json(&d.r),
                "delta": d.delta.to_json(),
                "degenerate": d.is_degenerate(),
            });
            if let Some(fs) = &d.factored {
                let hf = fs.hat_f();
                bad += usize::from(!is_admissible(&hf));
                if hat {
                    row["hat_f"] = sextic_to_json(&hf);
                }
            }
            row
        })
        .collect();
    (rows, ds.len(), bad)
}

fn decompose(o: &Opts, hat: bool) -> richelot_core::Result<Report> {
    let v = input::load(o.input.as_deref())?;
    let mut rep = new_report("decompose", o);
    let (rows, count, bad, roots) = match rooted(o, &v)? {
        Rooted::Exact(rs) => {
            let (r, c, b) = decompose_rows(&rs, hat);
            (r, c, b, roots_json(&rs))
        }
        Rooted::Float(rs) => {
            let (r, c, b) = decompose_rows(&rs, hat);
            (r, c, b, roots_json(&rs))
        }
    };
    rep.checks.push(check_bool("fifteen_decompositions", count == 15, "number of pairings"));
    rep.checks.push(check_bool("dual_sextics_admissible", bad == 0, "every nondegenerate row yields an admissible dual"));
    let degenerate = rows.iter().filter(|r| r["degenerate"] == json!(true)).count();
    rep.result = json!({ "roots": roots, "degenerate": degenerate, "rows": rows });
    Ok(rep)
}

fn verify(o: &Opts, trials: usize) -> richelot_core::Result<Report> {
    let v = input::load(o.input.as_deref())?;
    let fs = input::triple(&v)?;
    let mut rep = new_report("verify", o);
    let exact = timed(&mut rep, "exact", || suites::exact_suite(&fs, o.seed, trials));
    rep.checks.extend(exact);
    if o.numeric {
        let cfg = NumericConfig::with_precision(o.precision);
        let numeric = timed(&mut rep, "numeric", || suites::numeric_suite(&fs, &cfg, o.seed, o.tol));
        rep.checks.extend(numeric);
    }
    rep.result = json!({ "input": factored_to_json(&fs), "trials": trials, "numeric": o.numeric });
    Ok(rep)
}
