//! The `chow-engine` command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input or validation
//! error, 3 resource-guard refusal.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::catalog;
use crate::charpoly::{deletion_contraction, via_mobius, whitney};
use crate::chow::{parse_flat, parse_monomial, DegreeEngine};
use crate::error::{Error, Result};
use crate::json_int;
use crate::matroid::Matroid;
use crate::oracle::{Oracle, Straightener};
use crate::subset::Subset;
use crate::verify::{verify_all, verify_degrees, verify_pd};
use crate::volume::{
    eval_volume, is_submodular, json_rational, minkowski_to_support, postnikov_volume,
    psi_minus_volume, volume_polynomial, MinkowskiWeights, SupportVector, SUBMODULAR_LIMIT,
};

#[derive(Parser, Debug)]
#[command(
    name = "chow-engine",
    version,
    about = "Exact degrees, characteristic polynomials, volumes and duality certificates for Chow rings of matroids",
    after_help = "Elements are 0-based. Flats are written {0,1} and the ground set as E."
)]
pub struct Cli {
    #[command(flatten)]
    pub source: SourceArgs,

    /// Print a JSON report.
    #[arg(long, global = true, conflicts_with = "table")]
    pub json: bool,

    /// Print results as an aligned table.
    #[arg(long, global = true)]
    pub table: bool,

    /// Leave timings out of JSON reports.
    #[arg(long, global = true)]
    pub no_timing: bool,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Boolean matroid on N elements.
    #[arg(long, value_name = "N")]
    pub boolean: Option<usize>,

    /// Uniform matroid of rank R on N elements.
    #[arg(long, num_args = 2, value_names = ["R", "N"])]
    pub uniform: Option<Vec<usize>>,

    /// Graphic matroid from {"vertices": n, "edges": [[u, v], ..]}.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Vector matroid from {"rows", "cols", "entries", "modulus"}.
    #[arg(long, value_name = "FILE")]
    pub matrix: Option<PathBuf>,

    /// Lattice of flats from {"ground_set": n, "flats": [[..], ..]}.
    #[arg(long, value_name = "FILE")]
    pub flats: Option<PathBuf>,

    /// A built-in matroid such as fano, k4 or uniform_3_5.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the lattice of flats.
    Flats,
    /// Characteristic polynomial, reduced polynomial and μ-vector.
    Charpoly,
    /// Degree of a divisor monomial such as "D{0,1}^3 * D{0,1,2,3,4}^2 * D{0,1,2,3,4,5}".
    Degree(DegreeArgs),
    /// deg(ψ_0^A ψ_∞^B), or a product of ψ^- classes with --minus.
    PsiDegree(PsiDegreeArgs),
    /// Volume polynomial, its evaluation, or the Postnikov cross-check.
    Volume(VolumeArgs),
    /// Poincaré duality certificates and degree cross-checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct DegreeArgs {
    pub monomial: String,
    /// Show the flag expansion with per-interval factors.
    #[arg(long)]
    pub trace: bool,
    /// Recompute with the quotient-ring oracle and compare.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct PsiDegreeArgs {
    pub a: Option<u32>,
    pub b: Option<u32>,
    /// Flats F_1 .. F_r of a product of ψ^- classes.
    #[arg(long, num_args = 1.., value_name = "FLAT", conflicts_with_all = ["a", "b"])]
    pub minus: Option<Vec<String>>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct VolumeArgs {
    /// Print the volume polynomial.
    #[arg(long)]
    pub symbolic: bool,
    /// Evaluate at a support vector {"n": n, "x": {"0,1": 2, ..}}.
    #[arg(long, value_name = "FILE")]
    pub eval: Option<PathBuf>,
    /// Postnikov's formula for weights {"n": n, "y": {"0,1": 1, ..}}, checked
    /// against the Chow-ring evaluation.
    #[arg(long, value_name = "FILE")]
    pub postnikov: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Pairing certificates for degree K, or every degree.
    #[arg(long, value_name = "K", num_args = 0..=1)]
    pub pd: Option<Option<usize>>,
    /// Closed form against expansion and oracle on degree-r monomials.
    #[arg(long)]
    pub oracle: bool,
    /// Number of sampled monomials (default: exhaustive when small).
    #[arg(long, value_name = "N")]
    pub samples: Option<usize>,
    /// Every suite.
    #[arg(long)]
    pub all: bool,
}

/// What a command produced, before formatting.
struct Report {
    command: &'static str,
    results: Value,
    text: Vec<String>,
    table: Option<Vec<Vec<String>>>,
    warnings: Vec<String>,
    seed: Option<u64>,
    passed: bool,
}

impl Report {
    fn new(command: &'static str, results: Value, text: Vec<String>) -> Self {
        Report {
            command,
            results,
            text,
            table: None,
            warnings: Vec::new(),
            seed: None,
            passed: true,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("cannot read {}: {e}", path.display()),
        ))
    })
}

/// The matroid named by the source flags, with a display name.
pub fn load_source(src: &SourceArgs) -> Result<(String, Matroid)> {
    if let Some(n) = src.boolean {
        return Ok((format!("boolean_{n}"), Matroid::from_boolean(n)?));
    }
    if let Some(v) = &src.uniform {
        return Ok((format!("uniform_{}_{}", v[0], v[1]), Matroid::from_uniform(v[0], v[1])?));
    }
    if let Some(p) = &src.graph {
        return Ok((p.display().to_string(), Matroid::from_graph_json(&read(p)?)?));
    }
    if let Some(p) = &src.matrix {
        return Ok((p.display().to_string(), Matroid::from_matrix_json(&read(p)?)?));
    }
    if let Some(p) = &src.flats {
        return Ok((p.display().to_string(), Matroid::from_json(&read(p)?)?));
    }
    if let Some(name) = &src.catalog {
        return match catalog::lookup(name) {
            Ok(e) => Ok((e.name.clone(), e.build()?)),
            Err(_) => Err(Error::invalid(format!(
                "`{name}` is not in the catalog; available: {}",
                catalog::names().join(", ")
            ))),
        };
    }
    Err(Error::invalid("no matroid source given"))
}

fn set_json(s: Subset) -> Value {
    Value::Array(s.iter().map(|e| json!(e)).collect())
}

fn cmd_flats(m: &Matroid) -> Report {
    let flats = m.flats();
    let mut by_rank: Vec<Vec<String>> = vec![Vec::new(); m.rank() + 1];
    let mut rows = vec![vec!["rank".to_string(), "flat".to_string(), "covers".to_string()]];
    let mut list = Vec::new();
    for (i, f) in flats.iter().enumerate() {
        by_rank[f.rank].push(m.show(f.members));
        let covers: Vec<Subset> = m.covers(i).iter().map(|&j| flats[j].members).collect();
        rows.push(vec![
            f.rank.to_string(),
            m.show(f.members),
            covers.iter().map(|&c| m.show(c)).collect::<Vec<_>>().join(" "),
        ]);
        list.push(json!({
            "flat": set_json(f.members),
            "rank": f.rank,
            "covers": covers.iter().map(|&c| set_json(c)).collect::<Vec<_>>(),
        }));
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text: Vec<String> = by_rank
        .iter()
        .enumerate()
        .map(|(r, fs)| format!("rank {r}: {}", fs.join(" ")))
        .collect();
    text.push(format!(
        "{} flats; loops {}; coloops {}; simple: {}",
        flats.len(),
        m.show(m.loops()),
        m.show(m.coloops()),
        yes(m.is_simple())
    ));
    let results = json!({
        "count": flats.len(),
        "flats": list,
        "loops": set_json(m.loops()),
        "coloops": set_json(m.coloops()),
        "simple": m.is_simple(),
    });
    let mut rep = Report::new("flats", results, text);
    rep.table = Some(rows);
    rep
}

fn cmd_charpoly(m: &Matroid) -> Report {
    let chi = whitney(m);
    let agree = chi == deletion_contraction(m) && chi == via_mobius(m);
    let mut text = vec![format!("chi(λ)    = {chi}")];
    let mut warnings = Vec::new();
    let (reduced, mu) = match (m.reduced_char_poly(), m.mu_vector()) {
        (Ok(red), Ok(mu)) => {
            text.push(format!("chibar(λ) = {red}"));
            let mus: Vec<String> = mu.iter().map(BigInt::to_string).collect();
            text.push(format!("mu        = {}", mus.join(", ")));
            (
                serde_json::to_value(&red).expect("polynomials serialise"),
                Value::Array(mu.iter().map(json_int).collect()),
            )
        }
        (Err(e), _) | (_, Err(e)) => {
            warnings.push(format!("reduced polynomial refused: {e}"));
            if !m.is_loopless() {
                warnings.push(format!("matroid has loops {}, so chi = 0", m.show(m.loops())));
            }
            (Value::Null, Value::Null)
        }
    };
    text.push(if agree {
        "whitney, deletion-contraction and mobius agree".to_string()
    } else {
        "MISMATCH between the three chi computations".to_string()
    });
    let results = json!({
        "chi": serde_json::to_value(&chi).expect("polynomials serialise"),
        "chi_text": chi.to_string(),
        "reduced": reduced,
        "mu": mu,
        "methods_agree": agree,
    });
    let mut rep = Report::new("charpoly", results, text);
    rep.warnings = warnings;
    rep.passed = agree;
    rep
}

fn cmd_degree(m: &Matroid, args: &DegreeArgs) -> Result<Report> {
    let engine = DegreeEngine::new(m)?;
    let mono = parse_monomial(m, &args.monomial)?;
    let (value, warning) = engine.deg_monomial(&mono)?;
    let mut text = vec![value.to_string()];
    let mut results = json!({
        "monomial": mono.display(m).to_string(),
        "degree": json_int(&value),
    });
    let mut rep_warnings = Vec::new();
    if let Some(w) = warning {
        rep_warnings.push(w.to_string());
    }
    if args.trace {
        let expansion = engine.expand_monomial(&mono)?;
        text = vec![format!("deg = {value}")];
        if expansion.is_empty() {
            text.push("flats are incomparable: the monomial lies in the ideal I".to_string());
        }
        let mut rows = Vec::new();
        for term in &expansion.terms {
            let factors = engine.interval_factors(term)?;
            let v = engine.deg_flag_mixed(term)?;
            let fs: Vec<String> = factors.iter().map(BigInt::to_string).collect();
            text.push(format!(
                "  {}   factors [{}] -> {}",
                term.display(m),
                fs.join(", "),
                v
            ));
            rows.push(json!({
                "term": term.display(m).to_string(),
                "coefficient": json_int(&term.coefficient),
                "plus": term.plus,
                "minus": term.minus,
                "interval_factors": factors.iter().map(json_int).collect::<Vec<_>>(),
                "value": json_int(&v),
            }));
        }
        results["trace"] = Value::Array(rows);
    }
    let mut passed = true;
    if args.oracle {
        if mono.degree() != engine.r() {
            rep_warnings.push("oracle skipped: the monomial is not of top degree".to_string());
        } else {
            let oracle = Oracle::new(m)?;
            let (method, odeg) = match oracle.piece(engine.r()) {
                Ok(_) => ("linear algebra", oracle.degree(&mono)?),
                Err(Error::GuardExceeded { size, cap, .. }) => {
                    rep_warnings.push(format!(
                        "linear-algebra oracle refused ({size} monomials > cap {cap}); using straightening"
                    ));
                    ("straightening", Straightener::new(m)?.degree(&mono)?)
                }
                Err(e) => return Err(e),
            };
            passed = odeg == value;
            text.push(format!(
                "oracle ({method}): {odeg} ({})",
                if passed { "agrees" } else { "MISMATCH" }
            ));
            results["oracle"] = json!({
                "method": method,
                "degree": json_int(&odeg),
                "agrees": passed,
            });
        }
    }
    let mut rep = Report::new("degree", results, text);
    rep.warnings = rep_warnings;
    rep.passed = passed;
    Ok(rep)
}

fn cmd_psi_degree(m: &Matroid, args: &PsiDegreeArgs) -> Result<Report> {
    let engine = DegreeEngine::new(m)?;
    let r = engine.r();
    if let Some(list) = &args.minus {
        let flats = list
            .iter()
            .map(|t| parse_flat(m, t))
            .collect::<Result<Vec<_>>>()?;
        let d = engine.deg_psi_minus_product(&flats)?;
        let names: Vec<String> = flats.iter().map(|&f| crate::chow::flat_name(m, f)).collect();
        let results = json!({
            "minus": names,
            "degree": json_int(&d),
        });
        return Ok(Report::new("psi-degree", results, vec![d.to_string()]));
    }
    let (Some(a), Some(b)) = (args.a, args.b) else {
        return Err(Error::invalid("psi-degree needs A and B, or --minus FLAT.."));
    };
    let d = engine.deg_psi_powers(a, b);
    let mut rep = Report::new(
        "psi-degree",
        json!({ "a": a, "b": b, "degree": json_int(&d) }),
        vec![d.to_string()],
    );
    if (a + b) as usize != r {
        rep.warnings
            .push(format!("a + b = {} but r = {r}; the degree is 0", a + b));
    }
    Ok(rep)
}

fn normalization(m: &Matroid) -> &'static str {
    if m.is_boolean() {
        "divided by (n-1)!: volume of the generalized permutahedron"
    } else {
        "raw degree deg(D^r); no polytope normalization"
    }
}

fn cmd_volume(m: &Matroid, args: &VolumeArgs) -> Result<Report> {
    if args.symbolic {
        let p = volume_polynomial(m)?;
        let results = json!({
            "terms": p.to_json_value(),
            "denominator_factorial": p.denominator_factorial,
            "normalization": normalization(m),
        });
        let text = vec![
            format!("Vol(x) = {}", p.display(m)),
            format!("{} terms; {}", p.terms.len(), normalization(m)),
        ];
        return Ok(Report::new("volume", results, text));
    }
    if let Some(path) = &args.eval {
        let x = SupportVector::from_json(&read(path)?)?;
        let v = eval_volume(m, &x)?;
        let mut rep = Report::new(
            "volume",
            json!({ "volume": json_rational(&v), "normalization": normalization(m) }),
            vec![v.to_string()],
        );
        if m.is_boolean() && m.n() <= SUBMODULAR_LIMIT {
            if let (false, Some((a, b))) = is_submodular(m.n(), &x)? {
                rep.warnings.push(format!(
                    "x is not submodular (witness {a}, {b}); the value is algebraic, not a polytope volume"
                ));
            }
        }
        return Ok(rep);
    }
    let path = args
        .postnikov
        .as_ref()
        .expect("clap requires one volume mode");
    if !m.is_boolean() {
        return Err(Error::invalid(
            "--postnikov needs a Boolean matroid source such as --boolean n",
        ));
    }
    let y = MinkowskiWeights::from_json(&read(path)?)?;
    let n = m.n();
    let post = postnikov_volume(n, &y)?;
    let x = minkowski_to_support(n, &y)?;
    let chow = eval_volume(m, &x)?;
    let psi = psi_minus_volume(m, &y)?;
    let agree = post == chow && post == psi;
    let results = json!({
        "postnikov": json_rational(&post),
        "chow_ring": json_rational(&chow),
        "psi_minus": json_rational(&psi),
        "support": x.to_json_value(),
        "agree": agree,
    });
    let text = vec![
        post.to_string(),
        format!(
            "postnikov {post}, chow ring {chow}, psi-minus expansion {psi}: {}",
            if agree { "agree" } else { "MISMATCH" }
        ),
    ];
    let mut rep = Report::new("volume", results, text);
    rep.passed = agree;
    Ok(rep)
}

fn pd_lines(rep: &crate::verify::PoincareReport) -> Vec<String> {
    rep.certificates
        .iter()
        .zip(&rep.ranks)
        .map(|(c, &(k, b, o, d))| {
            format!(
                "k={k}: {b}x{b} pairing, det {}, {}, diagonal signs {}, oracle rank {}, |basis(r-k)| {d}, spot checks {}/{}",
                c.det,
                if c.triangular { "triangular" } else { "NOT triangular" },
                if c.diag_sign_matches { "ok" } else { "WRONG" },
                o.map_or("refused".to_string(), |o| o.to_string()),
                c.spot_checks - c.spot_check_mismatches,
                c.spot_checks,
            )
        })
        .collect()
}

fn cmd_verify(m: &Matroid, args: &VerifyArgs, seed: u64) -> Result<Report> {
    let all = args.all || (args.pd.is_none() && !args.oracle);
    if all {
        let full = verify_all(m, args.samples, seed)?;
        let mut text = vec![
            format!("charpoly: {}", pass(full.charpoly.passed())),
            format!("psi powers: {}", pass(full.psi_powers.passed())),
            format!(
                "signs ({} complete flags, deg D_E^r = {}): {}",
                full.signs.complete_flags,
                full.signs.top_power,
                pass(full.signs.passed())
            ),
            format!(
                "degrees: {}/{} agreements: {}",
                full.degrees.agreements,
                full.degrees.checked,
                pass(full.degrees.passed())
            ),
        ];
        text.extend(pd_lines(&full.poincare));
        text.push(format!("poincare: {}", pass(full.poincare.passed())));
        text.push(format!("overall: {}", pass(full.passed())));
        let mut rep = Report::new("verify", full.to_json(), text);
        rep.passed = full.passed();
        rep.seed = (!full.degrees.exhaustive).then_some(seed);
        return Ok(rep);
    }
    let mut results = json!({});
    let mut text = Vec::new();
    let mut passed = true;
    let mut used_seed = None;
    if let Some(k) = args.pd {
        let pd = verify_pd(m, k)?;
        text.extend(pd_lines(&pd));
        text.push(format!("poincare: {}", pass(pd.passed())));
        passed &= pd.passed();
        results["poincare"] = pd.to_json();
    }
    if args.oracle {
        let deg = verify_degrees(m, args.samples, seed, true)?;
        text.push(format!(
            "degrees: {}/{} agreements{}",
            deg.agreements,
            deg.checked,
            if deg.exhaustive {
                " (exhaustive)".to_string()
            } else {
                format!(" (seed {seed})")
            }
        ));
        passed &= deg.passed();
        used_seed = deg.seed;
        results["degrees"] = deg.to_json();
    }
    results["passed"] = json!(passed);
    let mut rep = Report::new("verify", results, text);
    rep.passed = passed;
    rep.seed = used_seed;
    Ok(rep)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, rows);
            }
        }
        Value::String(s) => rows.push(vec![prefix.to_string(), s.clone()]),
        other => rows.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let pad = widths[i] - s.chars().count();
                if i + 1 == r.len() {
                    s.clone()
                } else {
                    format!("{s}{}", " ".repeat(pad))
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn execute(cli: &Cli) -> Result<(String, Matroid, Report)> {
    let (name, m) = load_source(&cli.source)?;
    let rep = match &cli.command {
        Command::Flats => cmd_flats(&m),
        Command::Charpoly => cmd_charpoly(&m),
        Command::Degree(a) => cmd_degree(&m, a)?,
        Command::PsiDegree(a) => cmd_psi_degree(&m, a)?,
        Command::Volume(a) => cmd_volume(&m, a)?,
        Command::Verify(a) => cmd_verify(&m, a, cli.seed)?,
    };
    Ok((name, m, rep))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded { .. } => 3,
        _ => 2,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let (name, m, rep) = match execute(&cli) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    for w in &rep.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let code = if rep.passed { 0 } else { 1 };
    let written = if cli.json {
        let mut doc = json!({
            "command": rep.command,
            "matroid": { "source": name, "n": m.n(), "rank": m.rank() },
            "results": rep.results,
            "warnings": rep.warnings,
            "passed": rep.passed,
        });
        if let Some(s) = rep.seed {
            doc["seed"] = json!(s);
        }
        if !cli.no_timing {
            doc["timing_ms"] = json!(start.elapsed().as_millis() as u64);
        }
        let text = serde_json::to_string_pretty(&doc).expect("reports serialise");
        writeln!(out, "{text}")
    } else if cli.table {
        let rows = rep.table.clone().unwrap_or_else(|| {
            let mut rows = Vec::new();
            flatten("", &rep.results, &mut rows);
            rows
        });
        write!(out, "{}", render_table(&rows))
    } else {
        rep.text.iter().try_for_each(|l| writeln!(out, "{l}"))
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    code
}
