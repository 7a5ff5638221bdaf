use clap::{Args, Parser, Subcommand, ValueEnum};
use repwild::complexes::{enumerate_homotopy_strings, string_complex, HomotopyString};
use repwild::mackey::{coh_mackey_cyclic, infinite_family_c4, infinite_family_cpm, klein_four_algebra, mackey_cp};
use repwild::quiveralg::AlgebraJson;
use repwild::relhom::{ext_table, hom_table, sing_cat_cyclic, KleinContext, KLEIN_COLUMNS};
use repwild::repcat::{decompose, hom_basis, is_isomorphic, RepJson};
use repwild::strings::{
    associated_string_algebra, classify_type, enumerate_bands, enumerate_strings, special_biserial_indecomposables,
    AlgebraType, SbBounds,
};
use repwild::wildfam::{
    gamma_modules_exhaustive, gamma_modules_sample, two_vars_algebra, trunc_poly_algebra, verify_strict_family,
    Family, StrictFamilySpec,
};
use repwild::{BoundQuiverAlgebra, Error, PrimeField, Representation};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "repwild", version, about = "Representations of bound quiver algebras over prime fields")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for sampled test sets.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Args, Clone)]
struct AlgebraSel {
    /// Cohomological Mackey algebra of C_{p^m} over F_p.
    #[arg(long, num_args = 2, value_names = ["P", "M"])]
    coh_mackey: Option<Vec<u64>>,
    /// Mackey algebra of C_p over F_p.
    #[arg(long, value_name = "P")]
    mackey: Option<u64>,
    /// Group algebra of the Klein four group over F_2.
    #[arg(long)]
    klein: bool,
    /// k[c]/(c^{n+1}) over F_p (see --p).
    #[arg(long, value_name = "N")]
    trunc_poly: Option<usize>,
    /// k[s,t]/(s^n, t^n, st - ts) over F_p (see --p).
    #[arg(long, value_name = "N")]
    two_vars: Option<usize>,
    /// Algebra JSON file.
    #[arg(long, value_name = "FILE")]
    algebra_file: Option<PathBuf>,
    /// Field characteristic for --trunc-poly and --two-vars.
    #[arg(long, default_value_t = 2)]
    p: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum StringsAction {
    Enumerate,
    Classify,
    Count,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexesAction {
    Strings,
    Complex,
    Cohomology,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    C4,
    Cpm,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrictKind {
    TruncPoly,
    TwoVars,
    MackeyC2,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and report its dimension.
    Algebra {
        #[command(flatten)]
        sel: AlgebraSel,
        /// List the path basis.
        #[arg(long)]
        dump: bool,
    },
    /// Strings and bands of special biserial algebras.
    Strings {
        #[arg(value_enum)]
        action: StringsAction,
        #[command(flatten)]
        sel: AlgebraSel,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        max_band_len: usize,
        #[arg(long, default_value_t = 2)]
        max_band_degree: usize,
    },
    /// Decompose a representation given as JSON.
    Decompose {
        #[command(flatten)]
        sel: AlgebraSel,
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
    },
    /// Dimension of Hom between two representations given as JSON.
    Hom {
        #[command(flatten)]
        sel: AlgebraSel,
        #[arg(long, value_name = "FILE")]
        from: PathBuf,
        #[arg(long, value_name = "FILE")]
        to: PathBuf,
    },
    /// Homotopy strings, string complexes and their cohomology over gentle algebras.
    Complexes {
        #[arg(value_enum)]
        action: ComplexesAction,
        #[command(flatten)]
        sel: AlgebraSel,
        #[arg(long, default_value_t = 5)]
        max_letters: usize,
        /// Homotopy string such as "(b)(ab)(a)".
        #[arg(long)]
        string: Option<String>,
    },
    /// Infinite families of indecomposables over cohomological Mackey algebras.
    Family {
        #[arg(value_enum)]
        kind: FamilyKind,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Check a strict family of complexes on a finite set of modules.
    VerifyFamily {
        #[arg(value_enum)]
        family: StrictKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// Componentwise bound r,s,t on module dimensions.
        #[arg(long, default_value = "1,1,1")]
        dims: String,
        /// All modules within the bound instead of a seeded sample.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Hom and relative Ext tables over the Klein four group algebra.
    KleinTables {
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
    /// Component sizes of the singularity category of the cohomological Mackey algebra of C_{p^m}.
    SingCyclic { p: u64, m: u32 },
}

/// Rendered output of one command; `ok == false` signals a failed verification.
struct Report {
    json: Value,
    text: String,
    tsv: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: String, tsv: String) -> Self {
        Report { json, text, tsv, ok: true }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<Report, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn field(p: u64) -> Result<PrimeField, Failure> {
    PrimeField::new(p).map_err(|_| usage(format!("{p} is not a supported prime")))
}

fn load_algebra(sel: &AlgebraSel) -> Result<(String, BoundQuiverAlgebra), Failure> {
    let chosen = [
        sel.coh_mackey.is_some(),
        sel.mackey.is_some(),
        sel.klein,
        sel.trunc_poly.is_some(),
        sel.two_vars.is_some(),
        sel.algebra_file.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        return Err(usage("choose exactly one algebra"));
    }
    if let Some(pm) = &sel.coh_mackey {
        field(pm[0])?;
        let pres = coh_mackey_cyclic(pm[0], pm[1] as usize)?;
        return Ok((pres.name, pres.algebra));
    }
    if let Some(p) = sel.mackey {
        field(p)?;
        let pres = mackey_cp(p)?;
        return Ok((pres.name, pres.algebra));
    }
    if sel.klein {
        return Ok(("klein-four".into(), klein_four_algebra()));
    }
    if let Some(n) = sel.trunc_poly {
        return Ok((format!("trunc-poly({n})"), trunc_poly_algebra(field(sel.p)?, n)?));
    }
    if let Some(n) = sel.two_vars {
        return Ok((format!("two-vars({n})"), two_vars_algebra(field(sel.p)?, n)?));
    }
    let path = sel.algebra_file.as_ref().unwrap();
    let j: AlgebraJson = read_json(path)?;
    Ok((path.display().to_string(), BoundQuiverAlgebra::from_json(&j)?))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let s = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_rep(alg: &BoundQuiverAlgebra, path: &PathBuf) -> Result<Representation, Failure> {
    let j: RepJson = read_json(path)?;
    let rep = Representation::from_json(alg.bound_quiver().clone(), &j)?;
    if !rep.validate() {
        return Err(usage(format!("{}: relations are not satisfied", path.display())));
    }
    Ok(rep)
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn cmd_algebra(sel: &AlgebraSel, dump: bool) -> CmdResult {
    let (name, alg) = load_algebra(sel)?;
    let q = alg.quiver();
    let proj: Vec<usize> = (0..alg.vertex_count())
        .map(|i| (0..alg.vertex_count()).map(|j| alg.block(i, j).len()).sum())
        .collect();
    let basis: Vec<String> = alg.basis().iter().map(|p| p.display(q)).collect();
    let ty = classify_type(&alg);
    let mut text = format!("algebra {name} over F_{}\ntype {ty}\ndim {}\nprojective dims {}\n", alg.field().p(), alg.dim(), join(&proj, " "));
    let mut tsv = format!("name\t{name}\ndim\t{}\n", alg.dim());
    if dump {
        text.push_str("basis\n");
        for b in &basis {
            let _ = writeln!(text, "  {b}");
            let _ = writeln!(tsv, "basis\t{b}");
        }
    }
    let mut j = json!({
        "name": name,
        "p": alg.field().p(),
        "type": ty.to_string(),
        "dim": alg.dim(),
        "projective_dims": proj,
        "algebra": alg.to_json(),
    });
    if dump {
        j["basis"] = json!(basis);
    }
    Ok(Report::new(j, text, tsv))
}

fn cmd_strings(action: StringsAction, sel: &AlgebraSel, bounds: SbBounds) -> CmdResult {
    let (name, alg) = load_algebra(sel)?;
    let ty = classify_type(&alg);
    match action {
        StringsAction::Classify => {
            Ok(Report::new(json!({"name": name, "type": ty.to_string()}), format!("{ty}\n"), format!("{name}\t{ty}\n")))
        }
        StringsAction::Enumerate => {
            if ty == AlgebraType::NotSpecialBiserial {
                return Err(Error::NotSpecialBiserial(name).into());
            }
            let sa = associated_string_algebra(&alg)?;
            let q = sa.quiver();
            let e = enumerate_strings(&sa, bounds.max_string_len);
            let strings: Vec<String> = e.strings.iter().map(|w| w.display(q)).collect();
            let bands: Vec<String> = enumerate_bands(&sa, bounds.max_band_len).iter().map(|b| b.display(q)).collect();
            let mut text = String::new();
            let mut tsv = String::new();
            for s in &strings {
                let _ = writeln!(text, "string {s}");
                let _ = writeln!(tsv, "string\t{s}");
            }
            for b in &bands {
                let _ = writeln!(text, "{b}");
                let _ = writeln!(tsv, "band\t{}", b.trim_start_matches("band:"));
            }
            let _ = writeln!(text, "complete {}", e.complete);
            let j = json!({"name": name, "strings": strings, "bands": bands, "complete": e.complete});
            Ok(Report::new(j, text, tsv))
        }
        StringsAction::Count => {
            let all = special_biserial_indecomposables(&alg, bounds)?;
            let q = alg.quiver();
            let labels: Vec<String> = all.iter().map(|i| i.label(q)).collect();
            let j = json!({"name": name, "count": all.len(), "indecomposables": labels});
            Ok(Report::new(j, format!("{}\n", all.len()), format!("{name}\t{}\n", all.len())))
        }
    }
}

fn cmd_decompose(sel: &AlgebraSel, path: &PathBuf) -> CmdResult {
    let (_, alg) = load_algebra(sel)?;
    let rep = load_rep(&alg, path)?;
    let dec = decompose(&rep)?;
    let mut text = String::new();
    let mut tsv = String::from("dims\tmultiplicity\n");
    let mut pieces = Vec::new();
    for (m, mult) in dec.summands() {
        let _ = writeln!(text, "({}) x{mult}", join(m.dims(), ","));
        let _ = writeln!(tsv, "{}\t{mult}", join(m.dims(), ","));
        pieces.push(json!({"dims": m.dims(), "multiplicity": mult, "rep": m.to_json()}));
    }
    let j = json!({"indecomposable": dec.is_indecomposable(), "summands": pieces});
    Ok(Report::new(j, text, tsv))
}

fn cmd_hom(sel: &AlgebraSel, from: &PathBuf, to: &PathBuf) -> CmdResult {
    let (_, alg) = load_algebra(sel)?;
    let (m, n) = (load_rep(&alg, from)?, load_rep(&alg, to)?);
    let d = hom_basis(&m, &n)?.dim();
    Ok(Report::new(json!({"hom_dim": d}), format!("{d}\n"), format!("{d}\n")))
}

fn cmd_complexes(action: ComplexesAction, sel: &AlgebraSel, max_letters: usize, string: Option<&str>) -> CmdResult {
    let (name, alg) = load_algebra(sel)?;
    let alg = Arc::new(alg);
    let q = alg.quiver();
    let strings: Vec<HomotopyString> = match string {
        Some(s) => vec![HomotopyString::parse(&alg, s)?],
        None => enumerate_homotopy_strings(&alg, max_letters)?.strings,
    };
    match action {
        ComplexesAction::Strings => {
            let hom = enumerate_homotopy_strings(&alg, max_letters)?;
            let shown: Vec<String> = hom.strings.iter().map(|s| s.display(q)).collect();
            let bands: Vec<String> = hom.bands.iter().map(|s| s.display(q)).collect();
            let mut text = String::new();
            let mut tsv = String::from("string\tdegrees\n");
            for s in &hom.strings {
                let _ = writeln!(text, "{}", s.display(q));
                let _ = writeln!(tsv, "{}\t{}", s.display(q), join(&s.degrees(), ","));
            }
            let _ = writeln!(text, "bands {}", bands.len());
            let j = json!({"name": name, "max_letters": max_letters, "strings": shown, "bands": bands});
            Ok(Report::new(j, text, tsv))
        }
        ComplexesAction::Complex | ComplexesAction::Cohomology => {
            let mut text = String::new();
            let mut tsv = String::new();
            let mut items = Vec::new();
            for s in &strings {
                let cx = string_complex(alg.clone(), s)?;
                let label = s.display(q);
                if matches!(action, ComplexesAction::Complex) {
                    let _ = writeln!(text, "{label}: degrees {}..{}, ranks {}", cx.lo(), cx.hi(), join(&cx.ranks(), " "));
                    let _ = writeln!(tsv, "{label}\t{}\t{}\t{}", cx.lo(), cx.hi(), join(&cx.ranks(), ","));
                    items.push(json!({"string": label, "complex": cx.to_json()}));
                } else {
                    let coh = cx.cohomology_dims();
                    let rows: Vec<String> = coh.iter().map(|v| join(v, ",")).collect();
                    let _ = writeln!(text, "{label}: lo {} H {}", cx.lo(), rows.join(" | "));
                    let _ = writeln!(tsv, "{label}\t{}\t{}", cx.lo(), rows.join(";"));
                    items.push(json!({"string": label, "lo": cx.lo(), "cohomology": coh}));
                }
            }
            Ok(Report::new(json!({"name": name, "complexes": items}), text, tsv))
        }
    }
}

fn cmd_family(kind: FamilyKind, nmax: usize, p: u64, m: usize) -> CmdResult {
    let members: Vec<Representation> = (1..=nmax)
        .map(|n| match kind {
            FamilyKind::C4 => infinite_family_c4(n),
            FamilyKind::Cpm => {
                field(p).map_err(|_| Error::InvalidField(p))?;
                infinite_family_cpm(p, m, n)
            }
        })
        .collect::<Result<_, _>>()?;
    let mut ok = true;
    let mut text = String::new();
    let mut tsv = String::from("n\tdims\tvalid\tindecomposable\n");
    let mut rows = Vec::new();
    for (i, rep) in members.iter().enumerate() {
        let valid = rep.validate();
        let indec = decompose(rep)?.is_indecomposable();
        ok &= valid && indec;
        let _ = writeln!(text, "n={} dims ({}) valid {valid} indecomposable {indec}", i + 1, join(rep.dims(), ","));
        let _ = writeln!(tsv, "{}\t{}\t{valid}\t{indec}", i + 1, join(rep.dims(), ","));
        rows.push(json!({"n": i + 1, "dims": rep.dims(), "valid": valid, "indecomposable": indec, "rep": rep.to_json()}));
    }
    let mut clashes = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if is_isomorphic(&members[i], &members[j])? {
                clashes.push((i + 1, j + 1));
            }
        }
    }
    ok &= clashes.is_empty();
    let _ = writeln!(text, "pairwise non-isomorphic {}", clashes.is_empty());
    let j = json!({"members": rows, "isomorphic_pairs": clashes, "pass": ok});
    Ok(Report { json: j, text, tsv, ok })
}

fn parse_dims(s: &str) -> Result<[usize; 3], Failure> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("bad --dims {s:?}")))?;
    <[usize; 3]>::try_from(v).map_err(|_| usage("--dims needs three numbers r,s,t"))
}

fn cmd_verify(kind: StrictKind, n: usize, p: u64, dims: &str, exhaustive: bool, samples: usize, seed: u64) -> CmdResult {
    let f = field(p)?;
    let max = parse_dims(dims)?;
    let family = match kind {
        StrictKind::TruncPoly => Family::TruncPoly(n),
        StrictKind::TwoVars => Family::TwoVars(n),
        StrictKind::MackeyC2 => Family::MackeyC2,
    };
    let spec = StrictFamilySpec::new(family, f)?;
    let (set, used_seed) = if exhaustive {
        (gamma_modules_exhaustive(f, max), None)
    } else {
        (gamma_modules_sample(f, max, samples, seed), Some(seed))
    };
    let report = verify_strict_family(&spec, &set, used_seed)?;
    let text = format!(
        "{}: {} ({} modules, {} pairs, {} failures)\n",
        report.family,
        if report.pass { "pass" } else { "FAIL" },
        report.modules,
        report.pairs_checked,
        report.failures.len()
    );
    let tsv = format!("{}\t{}\t{}\t{}\n", report.family, report.pass, report.pairs_checked, report.failures.len());
    let ok = report.pass;
    let j = serde_json::to_value(&report).expect("report serializes");
    Ok(Report { json: j, text, tsv, ok })
}

fn cmd_klein(nmax: usize) -> CmdResult {
    if nmax == 0 {
        return Err(usage("--nmax must be at least 1"));
    }
    let ctx = KleinContext::new()?;
    let homs = hom_table(&ctx, nmax)?;
    let exts = ext_table(&ctx, nmax)?;
    let ok = homs.iter().all(|r| r.matches()) && exts.iter().all(|r| r.matches());
    let mut tsv = format!("# Hom\nX\tn\tparam\t{}\n", KLEIN_COLUMNS.join("\t"));
    let mut text = String::from("dim Hom(X, Y)\n");
    for r in &homs {
        let _ = writeln!(tsv, "{}\t{}\t{}\t{}", r.family, r.n, r.param, join(&r.cells, "\t"));
        let _ = writeln!(
            text,
            "{:<16} n={} {:<24} {}{}",
            r.family,
            r.n,
            r.param,
            join(&r.cells, " "),
            if r.matches() { "" } else { "  MISMATCH" }
        );
    }
    tsv.push_str("# Ext1_FM(X, S)\nX\tn\tparam\tmethod1\tmethod2\n");
    text.push_str("dim Ext1_FM(X, S)\n");
    for r in &exts {
        let _ = writeln!(tsv, "{}\t{}\t{}\t{}\t{}", r.family, r.n, r.param, r.method1, r.method2);
        let _ = writeln!(
            text,
            "{:<16} n={} {:<24} {}{}",
            r.family,
            r.n,
            r.param,
            r.method1,
            if r.matches() { "" } else { "  MISMATCH" }
        );
    }
    let j = json!({"columns": KLEIN_COLUMNS, "hom": homs, "ext": exts, "pass": ok});
    Ok(Report { json: j, text, tsv, ok })
}

fn cmd_sing(p: u64, m: u32) -> CmdResult {
    field(p)?;
    let sizes = sing_cat_cyclic(p, m)?;
    let line = format!("{}\n", join(&sizes, " "));
    let tsv = format!("{}\n", join(&sizes, "\t"));
    Ok(Report::new(json!({"p": p, "m": m, "components": sizes}), line, tsv))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Command::Algebra { sel, dump } => cmd_algebra(sel, *dump),
        Command::Strings { action, sel, max_len, max_band_len, max_band_degree } => cmd_strings(
            *action,
            sel,
            SbBounds { max_string_len: *max_len, max_band_len: *max_band_len, max_band_degree: *max_band_degree },
        ),
        Command::Decompose { sel, rep } => cmd_decompose(sel, rep),
        Command::Hom { sel, from, to } => cmd_hom(sel, from, to),
        Command::Complexes { action, sel, max_letters, string } => {
            cmd_complexes(*action, sel, *max_letters, string.as_deref())
        }
        Command::Family { kind, nmax, p, m } => cmd_family(*kind, *nmax, *p, *m),
        Command::VerifyFamily { family, n, p, dims, exhaustive, samples } => {
            cmd_verify(*family, *n, *p, dims, *exhaustive, *samples, cli.seed)
        }
        Command::KleinTables { nmax } => cmd_klein(*nmax),
        Command::SingCyclic { p, m } => cmd_sing(*p, *m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("REPWILD_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("json")),
                Format::Tsv => print!("{}", report.tsv),
                Format::Text => print!("{}", report.text),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(Error::Undecided)) => {
            eprintln!("error: {}", Error::Undecided);
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
