use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use dyndeg::classify::SearchOptions;
use dyndeg::coxeter::{canonical_word, picard_primitivity_certificate, salem_element_search_with};
use dyndeg::dyndeg::{
    abelian_profile_with, hk_profile, monomial_eval, monomial_map, monomial_profile_with,
    primitivity_by_degree_drop, product_formula_check, DegreeProfile,
};
use dyndeg::poly::RootOptions;
use dyndeg::{
    classify_with, companion, dominant_real_root, factor_int, json as dj, pisot_search_with,
    verify_document, CoxeterWord, Error, IntMatrix, IntPoly, RationalInterval, WehlerRep,
};

const EXIT_INPUT: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;
const EXIT_STRUCTURE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "dyndeg",
    version,
    about = "Exact Pisot/Salem recognition, dynamical-degree profiles and primitivity certificates"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Maximal width of every root enclosure, as a rational ("1/1000000") or decimal ("1e-6").
    #[arg(long, global = true, default_value = "1/1000000")]
    tol: String,
    /// Worker threads for searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Working-precision cap in bits for certified root moduli.
    #[arg(
        long,
        global = true,
        env = "DYNDEG_MAX_PRECISION",
        default_value_t = 4096
    )]
    max_precision: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a monic integer polynomial as Pisot, Salem, cyclotomic product or other.
    Classify {
        /// Polynomial, e.g. "x^3 - x - 1" or a coefficient list "-1,-1,0,1" (constant first).
        poly: String,
    },
    /// Factor a monic integer polynomial into irreducibles.
    Factor { poly: String },
    /// Enumerate monic Pisot polynomials with positive Pisot root, sorted by that root.
    PisotSearch {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        height: u64,
        /// Keep non-units as well.
        #[arg(long)]
        all: bool,
        /// Print only the first N hits.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build a primitive automorphism in dimension d from the smallest Pisot unit of degree d.
    Construct {
        d: usize,
        #[arg(long, value_enum, default_value_t = ConstructModel::Abelian)]
        model: ConstructModel,
        #[arg(long, default_value_t = 2)]
        height: u64,
    },
    /// Monomial maps of the torus.
    Monomial {
        #[command(subcommand)]
        op: MonomialOp,
    },
    /// Degree profile of the torus automorphism given by a unimodular matrix.
    Abelian {
        /// Matrix as "a,b;c,d" or a JSON array of rows.
        matrix: String,
    },
    /// Degree profile of a hyperkähler automorphism from its first dynamical degree.
    HkProfile {
        /// Half the dimension.
        #[arg(long)]
        m: usize,
        /// Polynomial whose dominant real root is d_1.
        #[arg(long, conflicts_with = "d1")]
        poly: Option<String>,
        /// d_1 as a rational point "a/b" or an interval "lo:hi".
        #[arg(long)]
        d1: Option<String>,
    },
    /// Search the Coxeter-group representation on a Wehler manifold for Salem elements.
    Coxeter {
        n: usize,
        #[arg(long, default_value_t = 10)]
        max_len: usize,
        /// Only irreducible Salem characteristic polynomials of degree n+1 (even rank only).
        #[arg(long)]
        full_degree: bool,
        /// Evaluate a single word such as "1,2,3" instead of searching.
        #[arg(long)]
        word: Option<String>,
    },
    /// Re-check an emitted certificate (file path, or "-" for stdin).
    Verify { input: String },
}

#[derive(Subcommand)]
enum MonomialOp {
    /// Pullback formula: coordinate i is prod_j t_j^(a_ji).
    Eval {
        matrix: String,
        /// Comma-separated nonzero rationals.
        point: String,
    },
    /// Map formula: coordinate i is prod_j t_j^(a_ij), so map(AB) = map(A) o map(B).
    Map {
        matrix: String,
        point: String,
    },
    Profile {
        matrix: String,
    },
    /// Check the product formula for a block upper-triangular matrix.
    ProductCheck {
        matrix: String,
        /// Size of the base block (top-left).
        #[arg(long)]
        split: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructModel {
    Abelian,
    Cremona,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OddRankFullDegree(_) | Error::StructureViolation(_) => EXIT_STRUCTURE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

struct Ctx {
    json: bool,
    tol: BigRational,
    roots: RootOptions,
    out: io::StdoutLock<'static>,
}

impl Ctx {
    fn emit(&mut self, kind: &str, body: Value, text: impl FnOnce() -> String) {
        let line = if self.json {
            serde_json::to_string_pretty(&dj::envelope(kind, body)).expect("serializable")
        } else {
            text()
        };
        let _ = writeln!(self.out, "{}", line.trim_end());
    }

    fn emit_line(&mut self, kind: &str, body: Value, text: impl FnOnce() -> String) {
        let line = if self.json {
            serde_json::to_string(&dj::envelope(kind, body)).expect("serializable")
        } else {
            text()
        };
        let _ = writeln!(self.out, "{}", line.trim_end());
        let _ = self.out.flush();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let cfg = cli.config;
    if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global()
            .map_err(|e| input_error(e.to_string()))?;
    }
    let tol = dj::parse_rational(&cfg.tol)?;
    if tol <= BigRational::from_integer(BigInt::from(0)) {
        return Err(input_error("tolerance must be positive"));
    }
    let mut roots = RootOptions::with_tol(tol.clone());
    roots.max_precision_bits = cfg.max_precision;
    let mut ctx = Ctx {
        json: cfg.json || cfg.format == Format::Json,
        tol,
        roots,
        out: io::stdout().lock(),
    };
    match cli.command {
        Command::Classify { poly } => cmd_classify(&mut ctx, &poly),
        Command::Factor { poly } => cmd_factor(&mut ctx, &poly),
        Command::PisotSearch {
            degree,
            height,
            all,
            limit,
        } => cmd_pisot_search(&mut ctx, degree, height, !all, limit),
        Command::Construct { d, model, height } => cmd_construct(&mut ctx, d, model, height),
        Command::Monomial { op } => cmd_monomial(&mut ctx, op),
        Command::Abelian { matrix } => {
            let m = parse_matrix(&matrix)?;
            let profile = abelian_profile_with(&m, &ctx.roots)?;
            emit_profile(&mut ctx, &profile, Some(("abelian", &m)));
            Ok(())
        }
        Command::HkProfile { m, poly, d1 } => cmd_hk(&mut ctx, m, poly, d1),
        Command::Coxeter {
            n,
            max_len,
            full_degree,
            word,
        } => match word {
            Some(w) => cmd_coxeter_word(&mut ctx, n, &w),
            None => cmd_coxeter(&mut ctx, n, max_len, full_degree),
        },
        Command::Verify { input } => cmd_verify(&mut ctx, &input),
    }
}

fn parse_poly(text: &str) -> Result<IntPoly, Failure> {
    text.parse::<IntPoly>().map_err(Failure::from)
}

fn parse_matrix(text: &str) -> Result<IntMatrix, Failure> {
    text.parse::<IntMatrix>().map_err(Failure::from)
}

fn parse_point(text: &str) -> Result<Vec<BigRational>, Failure> {
    text.split(',')
        .map(|s| dj::parse_rational(s.trim()).map_err(Failure::from))
        .collect()
}

fn dec(iv: &RationalInterval) -> String {
    iv.to_decimal_string(10)
}

fn cmd_classify(ctx: &mut Ctx, poly: &str) -> CmdResult {
    let p = parse_poly(poly)?;
    let c = classify_with(&p, &ctx.tol)?;
    let body = c.to_json();
    ctx.emit("classification", body, || {
        let counts = c.evidence.disk_counts;
        let mut s = format!(
            "polynomial: {}\nverdict: {}{}\nroots inside/on/outside the unit circle: {}/{}/{}\nirreducible: {}",
            c.poly,
            c.kind.as_str(),
            if c.pisot_unit { " (unit)" } else { "" },
            counts.inside,
            counts.on,
            counts.outside,
            c.evidence.irreducible,
        );
        if let Some(d) = &c.dominant {
            let label = if c.negative_dominant {
                "|dominant root| (root is negative)"
            } else {
                "dominant root"
            };
            s += &format!("\n{label}: {}", dec(d));
        }
        if c.salem_flag {
            s += "\nreciprocal quadratic unit: Salem in the degree-2 sense";
        }
        s
    });
    Ok(())
}

fn cmd_factor(ctx: &mut Ctx, poly: &str) -> CmdResult {
    let p = parse_poly(poly)?;
    let f = factor_int(&p)?;
    let body = json!({
        "polynomial": p.to_string(),
        "irreducible": f.is_irreducible(),
        "factors": f.factors.iter().map(|(q, k)| json!({
            "coefficients": dj::poly_to_value(q),
            "polynomial": q.to_string(),
            "multiplicity": k,
        })).collect::<Vec<_>>(),
    });
    ctx.emit("factorization", body, || {
        f.factors
            .iter()
            .map(|(q, k)| {
                if *k == 1 {
                    format!("({q})")
                } else {
                    format!("({q})^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    });
    Ok(())
}

fn search_options(ctx: &Ctx) -> SearchOptions {
    SearchOptions {
        tol: ctx.tol.clone(),
        ..SearchOptions::default()
    }
}

fn cmd_pisot_search(
    ctx: &mut Ctx,
    degree: usize,
    height: u64,
    units_only: bool,
    limit: Option<usize>,
) -> CmdResult {
    let hits = pisot_search_with(degree, height, units_only, &search_options(ctx))?;
    let shown = &hits[..limit.unwrap_or(hits.len()).min(hits.len())];
    let body = json!({
        "degree": degree,
        "height": height,
        "units_only": units_only,
        "count": hits.len(),
        "hits": shown.iter().map(|(p, iv)| json!({
            "coefficients": dj::poly_to_value(p),
            "polynomial": p.to_string(),
            "dominant": dj::interval_to_value(iv),
        })).collect::<Vec<_>>(),
    });
    ctx.emit("pisot_search", body, || {
        let mut s = format!(
            "{} Pisot polynomials of degree {degree}, height <= {height}",
            hits.len()
        );
        for (p, iv) in shown {
            s += &format!("\n{}  {}", dec(iv), p);
        }
        s
    });
    Ok(())
}

fn cmd_construct(ctx: &mut Ctx, d: usize, model: ConstructModel, height: u64) -> CmdResult {
    if d < 2 {
        return Err(input_error(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    let hits = pisot_search_with(d, height, true, &search_options(ctx))?;
    let Some((p, alpha)) = hits.into_iter().next() else {
        return Err(Failure {
            code: EXIT_EXHAUSTED,
            message: format!("no Pisot unit of degree {d} with height <= {height}; raise --height"),
        });
    };
    let c = companion(&p)?;
    let (name, profile) = match model {
        ConstructModel::Abelian => ("abelian", abelian_profile_with(&c, &ctx.roots)?),
        ConstructModel::Cremona => ("cremona", monomial_profile_with(&c, &ctx.roots)?),
    };
    let cert = primitivity_by_degree_drop(&profile);
    let body = json!({
        "model": name,
        "dimension": d,
        "polynomial": p.to_string(),
        "coefficients": dj::poly_to_value(&p),
        "pisot_root": dj::interval_to_value(&alpha),
        "matrix": dj::matrix_to_value(&c),
        "profile": profile.to_json(),
        "certificate": cert.as_ref().map(|c| c.to_json()),
    });
    ctx.emit("construction", body, || {
        let mut s = format!(
            "model: {name}\nPisot unit: {p}  root {}\nmatrix: {c}\n{}",
            dec(&alpha),
            profile_text(&profile)
        );
        s += match &cert {
            Some(_) => "\ncertificate: DegreeDrop (d_1.lo > d_2.hi), primitive",
            None => "\ncertificate: none (degree drop not certified)",
        };
        s
    });
    if cert.is_none() {
        return Err(Failure {
            code: EXIT_EXHAUSTED,
            message: "degree drop could not be certified".into(),
        });
    }
    Ok(())
}

fn profile_text(profile: &DegreeProfile) -> String {
    let mut s = format!("model: {}  dim: {}", profile.model.as_str(), profile.dim);
    for (p, d) in profile.degrees.iter().enumerate() {
        s += &format!("\nd_{p} in {}", dec(d));
    }
    s += &format!(
        "\n{} in {}",
        profile.model.entropy_label(),
        dec(&profile.entropy)
    );
    s
}

fn emit_profile(ctx: &mut Ctx, profile: &DegreeProfile, source: Option<(&str, &IntMatrix)>) {
    let cert = primitivity_by_degree_drop(profile);
    let mut body = profile.to_json();
    body["certificate"] = cert.as_ref().map_or(Value::Null, |c| c.to_json());
    if let Some((_, m)) = source {
        body["matrix"] = dj::matrix_to_value(m);
    }
    ctx.emit("degree_profile", body, || {
        let mut s = profile_text(profile);
        if cert.is_some() {
            s += "\ncertificate: DegreeDrop (d_1.lo > d_2.hi)";
        }
        s
    });
}

fn cmd_monomial(ctx: &mut Ctx, op: MonomialOp) -> CmdResult {
    match op {
        MonomialOp::Eval { matrix, point } => monomial_point(ctx, &matrix, &point, "pullback"),
        MonomialOp::Map { matrix, point } => monomial_point(ctx, &matrix, &point, "map"),
        MonomialOp::Profile { matrix } => {
            let m = parse_matrix(&matrix)?;
            let profile = monomial_profile_with(&m, &ctx.roots)?;
            emit_profile(ctx, &profile, Some(("monomial", &m)));
            Ok(())
        }
        MonomialOp::ProductCheck { matrix, split } => {
            let m = parse_matrix(&matrix)?;
            let report = product_formula_check(&m, split, &ctx.tol)?;
            let pass = report.all_pass();
            ctx.emit("product_formula", report.to_json(), || {
                let mut s = format!("split {split}: {}", if pass { "pass" } else { "FAIL" });
                for r in &report.rows {
                    s += &format!(
                        "\np={}  total {}  predicted {}  {}",
                        r.p,
                        dec(&r.total),
                        dec(&r.predicted),
                        if r.pass { "ok" } else { "mismatch" }
                    );
                }
                s
            });
            Ok(())
        }
    }
}

fn monomial_point(ctx: &mut Ctx, matrix: &str, point: &str, convention: &str) -> CmdResult {
    let m = parse_matrix(matrix)?;
    let t = parse_point(point)?;
    let image = if convention == "map" {
        monomial_map(&m, &t)?
    } else {
        monomial_eval(&m, &t)?
    };
    let body = json!({
        "convention": convention,
        "matrix": dj::matrix_to_value(&m),
        "point": t.iter().map(dj::rational_to_value).collect::<Vec<_>>(),
        "image": image.iter().map(dj::rational_to_value).collect::<Vec<_>>(),
    });
    ctx.emit("monomial_point", body, || {
        image
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(",")
    });
    Ok(())
}

fn cmd_hk(ctx: &mut Ctx, m: usize, poly: Option<String>, d1: Option<String>) -> CmdResult {
    let d1 = match (poly, d1) {
        (Some(p), None) => dominant_real_root(&parse_poly(&p)?, &ctx.tol)?,
        (None, Some(text)) => match text.split_once(':') {
            Some((lo, hi)) => {
                RationalInterval::new(dj::parse_rational(lo)?, dj::parse_rational(hi)?)?
            }
            None => RationalInterval::point(dj::parse_rational(&text)?),
        },
        _ => return Err(input_error("give exactly one of --poly and --d1")),
    };
    let profile = hk_profile(&d1, m)?;
    emit_profile(ctx, &profile, None);
    Ok(())
}

fn hit_certificate(rep: &WehlerRep, w: &CoxeterWord, tol: &BigRational) -> Value {
    picard_primitivity_certificate(rep, w, tol).to_json()
}

fn cmd_coxeter(ctx: &mut Ctx, n: usize, max_len: usize, full_degree: bool) -> CmdResult {
    let rep = WehlerRep::new(n)?;
    let tol = ctx.tol.clone();
    let mut certified = 0usize;
    let mut emitted = 0usize;
    let all = salem_element_search_with(&rep, max_len, full_degree, &tol, |_, hits| {
        for h in hits {
            let verdict = picard_primitivity_certificate(&rep, &h.word, &tol);
            if verdict.certificate().is_some() {
                certified += 1;
            }
            emitted += 1;
            let mut body = h.to_json(n);
            body["certificate"] = verdict.to_json();
            let issued = verdict.certificate().is_some();
            ctx.emit_line("salem_hit", body, || {
                format!(
                    "word {:?}  d_1 in {}  salem {}  {}",
                    h.word.letters(),
                    dec(&h.dominant),
                    h.salem,
                    if issued {
                        "certified primitive"
                    } else {
                        "no certificate"
                    }
                )
            });
        }
    })?;
    let best = all.first();
    let body = json!({
        "n": n,
        "max_len": max_len,
        "full_degree_only": full_degree,
        "hits": emitted,
        "certified": certified,
        "smallest": best.map(|h| json!({
            "word": h.word.letters(),
            "dominant": dj::interval_to_value(&h.dominant),
        })),
    });
    ctx.emit_line("coxeter_summary", body, || {
        let mut s = format!("{emitted} hits up to length {max_len}, {certified} certified");
        if let Some(h) = best {
            s += &format!(
                "; smallest d_1 {} at {:?}",
                dec(&h.dominant),
                h.word.letters()
            );
        }
        s
    });
    if emitted == 0 {
        return Err(Failure {
            code: EXIT_EXHAUSTED,
            message: format!("no Salem element up to length {max_len}; raise --max-len"),
        });
    }
    Ok(())
}

fn cmd_coxeter_word(ctx: &mut Ctx, n: usize, word: &str) -> CmdResult {
    let rep = WehlerRep::new(n)?;
    let letters = word
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| input_error(format!("bad letter {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let w = CoxeterWord::new(letters, rep.rank())?;
    let m = dyndeg::word_to_matrix(&rep, &w)?;
    let charpoly = m.charpoly();
    let structure = dyndeg::isometry_structure_with(&charpoly, &ctx.tol)?;
    let d1 = structure.spectral_radius();
    let cert = hit_certificate(&rep, &w, &ctx.tol);
    let canonical = if w.is_cyclically_reduced() {
        Some(canonical_word(w.letters()))
    } else {
        None
    };
    let body = json!({
        "n": n,
        "word": w.letters(),
        "canonical": canonical,
        "matrix": dj::matrix_to_value(&m),
        "charpoly": dj::poly_to_value(&charpoly),
        "structure": structure.to_json(),
        "d1": dj::interval_to_value(&d1),
        "certificate": cert,
    });
    ctx.emit("coxeter_word", body, || {
        format!(
            "word {:?}\nmatrix: {m}\ncharpoly: {charpoly}\nd_1 in {}",
            w.letters(),
            dec(&d1)
        )
    });
    Ok(())
}

fn cmd_verify(ctx: &mut Ctx, input: &str) -> CmdResult {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_error(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(input).map_err(|e| input_error(format!("{input}: {e}")))?
    };
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| input_error(format!("invalid JSON: {e}")))?;
    let report = verify_document(&doc, &ctx.tol)?;
    let valid = report.valid();
    ctx.emit("verification", report.to_json(), || {
        let mut s = format!(
            "{} certificate: {}",
            report.criterion.as_str(),
            if valid { "valid" } else { "INVALID" }
        );
        for (name, ok) in &report.checks {
            s += &format!("\n  {} {name}", if *ok { "ok  " } else { "FAIL" });
        }
        s
    });
    if valid {
        Ok(())
    } else {
        Err(input_error("certificate did not verify"))
    }
}
