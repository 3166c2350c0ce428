//! The `morikit` command line. [`run`] is the whole program; `main` only
//! wires it to the process streams.
//!
//! Exit codes: 0 success (and `--help`/`--version`), 2 validation error,
//! 3 resource cap hit, 64 unknown subcommand, 1 internal inconsistency.

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cone_engine::{h_to_v_capped, HCone, DEFAULT_RAY_CAP};
use crate::error::{Error, Result};
use crate::exact_math::{QVector, Rational};
use crate::linear_systems::{hilbert, hilbert_sigma_even, hilbert_sigma_odd, kumar_system, HilbertData, LinearSystem};
use crate::mori_chambers::{
    eff_cone, fano_region, flip_sequence, flip_type, locate_divisor, mov_cone, moving_curve_rays_capped, nef_cone,
    ne_extremal_rays_capped, walls,
};
use crate::picard_lattice::{cremona_pushforward, default_cremona_base, BlowupModel, DivisorClass};
use crate::quotient_facts::facts;
use crate::weights_bridge::phi;

pub const RAY_CAP_ENV: &str = "MORIKIT_RAY_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "morikit", version, about = "Cones, walls, Cremona actions and Hilbert data for quotients of points on the line")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Eff,
    Mov,
    Nef,
    Fano,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inequalities (and optionally extreme rays) of a divisor cone of X^m_{m+2}.
    Cones {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Which::Eff)]
        which: Which,
        /// Also enumerate extreme rays.
        #[arg(long)]
        rays: bool,
    },
    /// Locate a divisor class of X^m_{m+2} in the chamber structure.
    Locate(DivisorArgs),
    /// List the walls of the Mori chamber decomposition of X^m_{m+2}.
    Walls {
        #[arg(long)]
        m: usize,
    },
    /// The flip sequence from X^{2g}_{2g+2} to the Fano model.
    Flips {
        #[arg(long)]
        g: usize,
    },
    /// Push a divisor class forward under a standard Cremona transformation.
    Cremona {
        #[command(flatten)]
        divisor: DivisorArgs,
        /// Comma-separated 1-based base points; defaults to 1..m+1.
        #[arg(long)]
        base: Option<String>,
    },
    /// Hilbert polynomial, degree and embedding dimension.
    Hilbert(HilbertArgs),
    /// Linear system realizing the quotient with polarization b.
    Kumar {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Hassett weights of a divisor class of X^m_{m+2}.
    Phi(DivisorArgs),
    /// Numeric invariants of the quotient of m+3 points.
    Facts {
        #[arg(long)]
        m: usize,
    },
    /// Extremal rays of the cone of moving curves of the quotient of 2g+3 points.
    MovingRays {
        #[arg(long)]
        g: usize,
    },
    /// Extremal rays of the Mori cone of the quotient of 2g+3 points.
    NeRays {
        #[arg(long)]
        g: usize,
    },
}

#[derive(Args, Debug)]
struct DivisorArgs {
    #[arg(long)]
    m: usize,
    /// Comma-separated y,x1,...,xs.
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct HilbertArgs {
    /// Comma-separated n,d,m1,...,ms.
    #[arg(long)]
    system: Option<String>,
    #[arg(long = "sigma-odd")]
    sigma_odd: Option<u64>,
    #[arg(long = "sigma-even")]
    sigma_even: Option<u64>,
}

/// A rendered result: the JSON payload and a CSV table of the same data.
struct Output {
    json: Value,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Output {
    fn new(json: Value, header: &[&str]) -> Self {
        Output {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn row<I: IntoIterator<Item = S>, S: ToString>(&mut self, cells: I) {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                ErrorKind::InvalidSubcommand => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_VALIDATION
                }
            };
        }
    };
    let result = ray_cap().and_then(|cap| dispatch(&cli.command, cap));
    match result {
        Ok(output) => match emit(&output, cli.format, out) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_INTERNAL
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } => EXIT_RESOURCE,
        Error::Inconsistent(_) => EXIT_INTERNAL,
        _ => EXIT_VALIDATION,
    }
}

fn ray_cap() -> Result<usize> {
    match std::env::var(RAY_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::Parse(format!("{RAY_CAP_ENV}={v} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_RAY_CAP),
    }
}

fn emit(output: &Output, format: Format, out: &mut dyn Write) -> std::result::Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &output.json)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(&mut *out);
            w.write_record(&output.header)?;
            for r in &output.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn to_value<T: Serialize + ?Sized>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Inconsistent(e.to_string()))
}

fn payload(mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
    }
    body
}

fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Err(Error::Parse(format!("{what}: empty list")));
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<T>()
                .map_err(|_| Error::Parse(format!("{what}: cannot parse entry {p:?}")))
        })
        .collect()
}

fn parse_divisor(args: &DivisorArgs, default_s: Option<usize>) -> Result<DivisorClass> {
    let coords: Vec<Rational> = parse_list("--divisor", &args.divisor)?;
    let s = coords.len() - 1;
    if let Some(expected) = default_s {
        if s != expected {
            return Err(Error::DimensionMismatch {
                expected: expected + 1,
                found: coords.len(),
            });
        }
    }
    let model = BlowupModel::new(args.m, s)?;
    DivisorClass::from_coordinates(model, &QVector::new(coords))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn dispatch(cmd: &Command, cap: usize) -> Result<Output> {
    match cmd {
        Command::Cones { m, which, rays } => cones(*m, *which, *rays, cap),
        Command::Locate(args) => locate(args),
        Command::Walls { m } => walls_cmd(*m),
        Command::Flips { g } => flips(*g),
        Command::Cremona { divisor, base } => cremona(divisor, base.as_deref()),
        Command::Hilbert(args) => hilbert_cmd(args),
        Command::Kumar { b } => kumar(b),
        Command::Phi(args) => phi_cmd(args),
        Command::Facts { m } => facts_cmd(*m),
        Command::MovingRays { g } => moving_rays(*g, cap),
        Command::NeRays { g } => ne_rays(*g, cap),
    }
}

fn cones(m: usize, which: Which, with_rays: bool, cap: usize) -> Result<Output> {
    let (name, cone): (&str, HCone) = match which {
        Which::Eff => ("eff", eff_cone(m)?),
        Which::Mov => ("mov", mov_cone(m)?),
        Which::Nef => ("nef", nef_cone(m)?),
        Which::Fano => ("fano", fano_region(m)?),
    };
    let mut body = json!({ "m": m, "which": name, "cone": to_value(&cone)? });
    let mut header = vec!["role".to_string(), "index".to_string(), "y".to_string()];
    header.extend((1..=m + 2).map(|i| format!("x{i}")));
    let mut output = Output::new(Value::Null, &[]);
    output.header = header;
    for (i, n) in cone.normals().iter().enumerate() {
        output.row(["normal".to_string(), i.to_string()].into_iter().chain(n.iter().map(|x| x.to_string())));
    }
    if with_rays {
        let v = h_to_v_capped(&cone, cap)?;
        body["rays"] = to_value(v.rays())?;
        body["lineality"] = to_value(v.lineality())?;
        for (i, r) in v.rays().iter().enumerate() {
            output.row(["ray".to_string(), i.to_string()].into_iter().chain(r.iter().map(|x| x.to_string())));
        }
        for (i, l) in v.lineality().iter().enumerate() {
            output.row(["lineality".to_string(), i.to_string()].into_iter().chain(l.iter().map(|x| x.to_string())));
        }
    }
    output.json = payload(body);
    Ok(output)
}

fn locate(args: &DivisorArgs) -> Result<Output> {
    let d = parse_divisor(args, Some(args.m + 2))?;
    let report = locate_divisor(&d)?;
    let body = json!({ "divisor": to_value(&d)?, "report": to_value(&report)? });
    let mut output = Output::new(payload(body), &["field", "value"]);
    output.row(["in_eff", report.in_eff.label()]);
    output.row(["in_mov", report.in_mov.label()]);
    output.row(["in_nef", report.in_nef.label()]);
    output.row(["in_fano", report.in_fano.label()]);
    output.row(["active_walls".to_string(), join(&report.active_walls, ";")]);
    output.row(["violated_walls".to_string(), join(&report.violated_walls, ";")]);
    Ok(output)
}

fn walls_cmd(m: usize) -> Result<Output> {
    let ws = walls(m)?;
    let mut listed = Vec::with_capacity(ws.len());
    let mut output = Output::new(Value::Null, &["k", "kind", "I", "normal", "flip"]);
    for w in &ws {
        let flip = flip_type(w, m).ok();
        let mut v = to_value(w)?;
        v["flip"] = match flip {
            Some((a, b)) => json!([a, b]),
            None => Value::Null,
        };
        listed.push(v);
        output.row([
            w.k.to_string(),
            w.kind.to_string(),
            join(&w.subset, ";"),
            join(w.normal.entries(), ";"),
            flip.map(|(a, b)| format!("{a}->{b}")).unwrap_or_default(),
        ]);
    }
    output.json = payload(json!({ "m": m, "count": ws.len(), "walls": listed }));
    Ok(output)
}

fn flips(g: usize) -> Result<Output> {
    let stages = flip_sequence(g)?;
    let mut output = Output::new(payload(json!({ "g": g, "stages": to_value(&stages)? })), &[
        "stage",
        "center_dim",
        "center_count",
        "inserted_dim",
    ]);
    for s in &stages {
        output.row([
            s.stage.to_string(),
            s.center_dim.to_string(),
            s.center_count.to_string(),
            s.inserted_dim.to_string(),
        ]);
    }
    Ok(output)
}

fn cremona(args: &DivisorArgs, base: Option<&str>) -> Result<Output> {
    let d = parse_divisor(args, None)?;
    let base: Vec<usize> = match base {
        Some(b) => parse_list("--base", b)?,
        None => default_cremona_base(d.model()),
    };
    let image = cremona_pushforward(&d, &base)?;
    let mults = image.multiplicities();
    let body = json!({
        "base": base,
        "divisor": to_value(&d)?,
        "image": to_value(&image)?,
        "degree": image.degree().to_string(),
        "mults": to_value(&mults)?,
    });
    let mut header = vec!["role".to_string(), "y".to_string()];
    header.extend((1..=d.model().s()).map(|i| format!("x{i}")));
    let mut output = Output::new(payload(body), &[]);
    output.header = header;
    output.row(std::iter::once("input".to_string()).chain(d.coordinates().iter().map(|x| x.to_string())));
    output.row(std::iter::once("image".to_string()).chain(image.coordinates().iter().map(|x| x.to_string())));
    Ok(output)
}

fn hilbert_output(system: Option<&LinearSystem>, h: &HilbertData) -> Result<Output> {
    let h1 = h.value_at(1);
    let body = json!({
        "system": system.map(to_value).transpose()?,
        "polynomial": to_value(&h.polynomial)?,
        "degree": h.degree.to_string(),
        "N": h.embedding_dim.to_string(),
        "h1": h1.to_string(),
        "boundary_case": h.boundary_case,
    });
    let mut output = Output::new(payload(body), &["field", "value"]);
    output.row(["degree".to_string(), h.degree.to_string()]);
    output.row(["N".to_string(), h.embedding_dim.to_string()]);
    output.row(["h1".to_string(), h1.to_string()]);
    output.row(["boundary_case".to_string(), h.boundary_case.to_string()]);
    for (i, c) in h.polynomial.coefficients().iter().enumerate() {
        output.row([format!("coefficient_t{i}"), c.to_string()]);
    }
    Ok(output)
}

fn hilbert_cmd(args: &HilbertArgs) -> Result<Output> {
    if let Some(spec) = &args.system {
        let v: Vec<u64> = parse_list("--system", spec)?;
        if v.len() < 2 {
            return Err(Error::Parse("--system needs at least n,d".into()));
        }
        let l = LinearSystem::new(v[0], v[1], v[2..].to_vec())?;
        let h = hilbert(&l)?;
        hilbert_output(Some(&l), &h)
    } else if let Some(g) = args.sigma_odd {
        hilbert_output(Some(&crate::linear_systems::sigma_system(g)?), &hilbert_sigma_odd(g)?)
    } else if let Some(g) = args.sigma_even {
        hilbert_output(Some(&crate::linear_systems::mu_system(g)?), &hilbert_sigma_even(g)?)
    } else {
        Err(Error::Parse("one of --system, --sigma-odd, --sigma-even is required".into()))
    }
}

fn kumar(b: &str) -> Result<Output> {
    let b: Vec<u64> = parse_list("--b", b)?;
    let k = kumar_system(&b)?;
    let body = json!({ "b": b, "system": to_value(&k.system)?, "clamped": k.clamped });
    let mut output = Output::new(payload(body), &["field", "value"]);
    output.row(["n".to_string(), k.system.n().to_string()]);
    output.row(["d".to_string(), k.system.d().to_string()]);
    output.row(["mults".to_string(), join(k.system.mults(), ";")]);
    output.row(["clamped".to_string(), k.clamped.to_string()]);
    Ok(output)
}

fn phi_cmd(args: &DivisorArgs) -> Result<Output> {
    let d = parse_divisor(args, Some(args.m + 2))?;
    let a = phi(&d)?;
    let body = json!({
        "divisor": to_value(&d)?,
        "weights": to_value(&a)?,
        "sum": a.sum().to_string(),
        "hassett": a.is_hassett(),
    });
    let mut output = Output::new(payload(body), &["index", "weight"]);
    for (i, x) in a.entries().iter().enumerate() {
        output.row([(i + 1).to_string(), x.to_string()]);
    }
    Ok(output)
}

fn facts_cmd(m: usize) -> Result<Output> {
    let f = facts(m)?;
    let v = to_value(&f)?;
    let mut output = Output::new(Value::Null, &["field", "value"]);
    if let Value::Object(map) = &v {
        for (k, val) in map {
            match val {
                Value::Object(inner) => {
                    for (ik, iv) in inner {
                        output.row([format!("{k}.{ik}"), plain(iv)]);
                    }
                }
                other => output.row([k.clone(), plain(other)]),
            }
        }
    }
    output.json = payload(v);
    Ok(output)
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn moving_rays(g: usize, cap: usize) -> Result<Output> {
    let rays = moving_curve_rays_capped(g, cap)?;
    let mut header = vec!["label".to_string(), "a".to_string()];
    header.extend((1..=2 * g + 2).map(|i| format!("c{i}")));
    let mut output = Output::new(payload(json!({ "g": g, "count": rays.len(), "rays": to_value(&rays)? })), &[]);
    output.header = header;
    for r in &rays {
        output.row(std::iter::once(r.label.clone()).chain(r.curve.coordinates().iter().map(|x| x.to_string())));
    }
    Ok(output)
}

fn ne_rays(g: usize, cap: usize) -> Result<Output> {
    let ne = ne_extremal_rays_capped(g, cap)?;
    let mut header = vec!["family".to_string(), "wall".to_string(), "a".to_string()];
    header.extend((1..=2 * g + 2).map(|i| format!("c{i}")));
    let mut output = Output::new(payload(json!({ "g": g, "result": to_value(&ne)? })), &[]);
    output.header = header;
    match &ne.rays {
        Some(rays) => {
            for r in rays {
                output.row(
                    [r.family.to_string(), r.wall.to_string()]
                        .into_iter()
                        .chain(r.curve.coordinates().iter().map(|x| x.to_string())),
                );
            }
        }
        None => {
            output.header = vec!["count".to_string()];
            output.row([ne.count.to_string()]);
        }
    }
    Ok(output)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("morikit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_of(args: &[&str]) -> Value {
        let (code, out, err) = call(args);
        assert_eq!(code, 0, "{err}");
        serde_json::from_str(&out).unwrap()
    }

    #[test]
    fn facts_segre_cubic() {
        let v = json_of(&["facts", "--m", "3"]);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["singular_count"], "10");
        assert_eq!(v["degree"], "3");
    }

    #[test]
    fn hilbert_del_pezzo() {
        let v = json_of(&["hilbert", "--sigma-even", "1"]);
        assert_eq!((v["degree"].as_str(), v["N"].as_str()), (Some("5"), Some("5")));
        let v = json_of(&["hilbert", "--system", "3,2,1,1,1,1,1"]);
        assert_eq!(v["h1"], "5");
    }

    #[test]
    fn cremona_hyperplane() {
        let v = json_of(&["cremona", "--m", "3", "--divisor", "1,0,0,0,0", "--base", "1,2,3,4"]);
        assert_eq!(v["degree"], "3");
        assert_eq!(v["mults"], json!(["2", "2", "2", "2"]));
    }

    #[test]
    fn negative_entries_parse() {
        let v = json_of(&["phi", "--m", "3", "--divisor", "4,-2,-2,-2,-2,-2"]);
        assert_eq!(v["weights"], json!(["1/3", "1/3", "1/3", "1/3", "1/3", "1/3"]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["phi", "--m", "3", "--divisor", "4,x"]).0, EXIT_VALIDATION);
        assert_eq!(call(&["facts", "--m", "1"]).0, EXIT_VALIDATION);
        assert_eq!(call(&["facts"]).0, EXIT_VALIDATION);
        assert_eq!(call(&["hilbert", "--sigma-odd", "2", "--sigma-even", "1"]).0, EXIT_VALIDATION);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        assert_eq!(call(&["--version"]).0, EXIT_OK);
    }

    #[test]
    fn csv_output() {
        let (code, out, _) = call(&["flips", "--g", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "stage,center_dim,center_count,inserted_dim\n1,1,28,4\n2,2,56,3\n");
    }

    #[test]
    fn deterministic() {
        let a = call(&["ne-rays", "--g", "1"]);
        let b = call(&["ne-rays", "--g", "1"]);
        assert_eq!(a, b);
    }
}
