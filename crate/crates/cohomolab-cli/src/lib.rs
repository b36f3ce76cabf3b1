//! Command-line front end: load complexes, filtered/double complexes and
//! Cech data from JSON files, run the computations, and print text or JSON
//! reports. Exit codes: 0 success, 2 parse error, 3 validation failure,
//! 4 unavailable tabular page.

pub mod formats;

use clap::{Parser, Subcommand, ValueEnum};
use cohomolab::cechgeom::{
    chern_class, chern_pairing, curvature, curvature_pairing, holonomy_loop,
    holonomy_open_surface, holonomy_path, holonomy_surface, validate_gerbe_cocycle,
    validate_line_cocycle, ChartedLoop, ChartedPath, ChartedSurface,
};
use cohomolab::clifford::{
    dtau_square, small_rep, spin2_tables, LiftCase, PinSign, SmallRepCase, SpinTableKind,
};
use cohomolab::complexes::Coefficients;
use cohomolab::exactalg::FPAbelianGroup;
use cohomolab::simplicial::SimplicialPair;
use cohomolab::spectral::{
    ahss, limit_vs_total, page, AhssSystem, AxiomaticSystem, TotalFiltration,
};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INSUFFICIENT: i32 = 4;

#[derive(Parser)]
#[command(name = "cohomolab", about = "Simplicial homology, spectral sequences, holonomy and Clifford algebra workbench", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    Z,
    Q,
    Z2,
}

impl Coeff {
    fn to_coefficients(self) -> Coefficients {
        match self {
            Coeff::Z => Coefficients::Integers,
            Coeff::Q => Coefficients::Rationals,
            Coeff::Z2 => Coefficients::Mod2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectralMode {
    Filtered,
    DoubleFirst,
    DoubleSecond,
    Axiomatic,
    Ahss,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HolonomyType {
    LineLoop,
    LinePath,
    GerbeClosed,
    GerbeOpen,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PinChoice {
    Plus,
    Minus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Euclidean,
    Minkowskian,
}

#[derive(Subcommand)]
pub enum Command {
    /// Homology of a simplicial complex loaded from FILE.
    Homology {
        file: String,
        #[arg(long, value_enum, default_value_t = Coeff::Z)]
        coeff: Coeff,
        /// Subcomplex file for relative homology.
        #[arg(long)]
        relative: Option<String>,
        #[arg(long)]
        reduced: bool,
        /// Degree to report; all degrees when omitted.
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Spectral sequence pages of a filtered or double complex, the
    /// axiomatic engine, or the AHSS.
    Spectral {
        file: String,
        #[arg(long, default_value_t = 2)]
        pages: usize,
        #[arg(long, value_enum, default_value_t = SpectralMode::Filtered)]
        mode: SpectralMode,
        /// Run the limit-versus-total-cohomology comparison.
        #[arg(long)]
        check_limit: bool,
    },
    /// Holonomy of line bundles over loops/paths or gerbes over surfaces.
    Holonomy {
        datafile: String,
        pathfile: String,
        #[arg(long = "type", value_enum)]
        holonomy_type: HolonomyType,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Evaluate even when cocycle validation fails.
        #[arg(long)]
        force: bool,
    },
    /// Clifford algebra reports: pin-structure lift squares, matrix
    /// representation verification, or the two-dimensional spin tables.
    Clifford {
        /// Lift-square case name (e.g. sphere_antipodal, torus_klein_xi0).
        #[arg(long)]
        case: Option<String>,
        #[arg(long, value_enum)]
        pin: Option<PinChoice>,
        /// Representation case name (e.g. Cl2_H, Cl13_M2H).
        #[arg(long)]
        rep: Option<String>,
        #[arg(long, value_enum)]
        tables: Option<TableKind>,
    },
}

/// Run configuration shared by the commands: tolerance (overridable with
/// COHOMOLAB_TOLERANCE) and output format.
pub struct Workspace {
    pub tolerance: f64,
    pub format: Format,
}

impl Workspace {
    pub fn new(format: Format) -> Workspace {
        let tolerance = std::env::var("COHOMOLAB_TOLERANCE")
            .ok()
            .and_then(|v| v.parse::<f64>().ok())
            .unwrap_or(cohomolab::DEFAULT_TOLERANCE);
        Workspace { tolerance, format }
    }
}

pub struct Report {
    pub exit: i32,
    pub text: String,
    pub json: serde_json::Value,
}

impl Report {
    fn ok(text: String, json: serde_json::Value) -> Report {
        Report {
            exit: EXIT_OK,
            text,
            json,
        }
    }

    fn fail(exit: i32, message: String) -> Report {
        Report {
            exit,
            text: message.clone(),
            json: serde_json::json!({ "error": message }),
        }
    }
}

fn read_file(path: &str) -> Result<String, Report> {
    std::fs::read_to_string(path)
        .map_err(|e| Report::fail(EXIT_PARSE, format!("cannot read {path}: {e}")))
}

fn group_string(g: &FPAbelianGroup) -> String {
    format!("{g}")
}

pub fn run(cli: Cli) -> Report {
    let workspace = Workspace::new(cli.format);
    match cli.command {
        Command::Homology {
            file,
            coeff,
            relative,
            reduced,
            degree,
        } => cmd_homology(&workspace, &file, coeff, relative.as_deref(), reduced, degree),
        Command::Spectral {
            file,
            pages,
            mode,
            check_limit,
        } => cmd_spectral(&workspace, &file, pages, mode, check_limit),
        Command::Holonomy {
            datafile,
            pathfile,
            holonomy_type,
            tolerance,
            force,
        } => {
            let tol = tolerance.unwrap_or(workspace.tolerance);
            cmd_holonomy(&workspace, &datafile, &pathfile, holonomy_type, tol, force)
        }
        Command::Clifford {
            case,
            pin,
            rep,
            tables,
        } => cmd_clifford(&workspace, case.as_deref(), pin, rep.as_deref(), tables),
    }
}

fn cmd_homology(
    _ws: &Workspace,
    file: &str,
    coeff: Coeff,
    relative: Option<&str>,
    reduced: bool,
    degree: Option<i64>,
) -> Report {
    let text = match read_file(file) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let complex = match formats::parse_complex(&text) {
        Ok(c) => c,
        Err(e) => return Report::fail(EXIT_PARSE, format!("{e}")),
    };
    let sub = match relative {
        Some(path) => {
            let sub_text = match read_file(path) {
                Ok(t) => t,
                Err(r) => return r,
            };
            match formats::parse_complex(&sub_text) {
                Ok(c) => Some(c),
                Err(e) => return Report::fail(EXIT_PARSE, format!("{e}")),
            }
        }
        None => None,
    };
    let empty =
        cohomolab::simplicial::SimplicialComplex::from_simplices(complex.vertex_count(), &[])
            .expect("empty subcomplex");
    let pair = match SimplicialPair::new(complex.clone(), sub.unwrap_or(empty)) {
        Ok(p) => p,
        Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
    };
    let k = coeff.to_coefficients();
    let degrees: Vec<i64> = match degree {
        Some(n) => vec![n],
        None => (0..=complex.dim().max(0)).collect(),
    };
    let mut lines = Vec::new();
    let mut json_groups = BTreeMap::new();
    for n in degrees {
        match pair.homology(n, k, reduced) {
            Ok(g) => {
                lines.push(format!("H_{n} = {}", group_string(&g)));
                json_groups.insert(n.to_string(), group_string(&g));
            }
            Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
        }
    }
    Report::ok(
        lines.join("\n"),
        serde_json::json!({ "homology": json_groups }),
    )
}

fn page_table(
    label: &str,
    entries: &[((i64, i64), FPAbelianGroup)],
    out: &mut String,
    json: &mut BTreeMap<String, String>,
) {
    let _ = writeln!(out, "{label}:");
    if entries.is_empty() {
        let _ = writeln!(out, "  (all entries trivial)");
    }
    for ((p, q), g) in entries {
        let _ = writeln!(out, "  E[{p},{q}] = {}", group_string(g));
        json.insert(format!("{p},{q}"), group_string(g));
    }
}

fn cmd_spectral(
    _ws: &Workspace,
    file: &str,
    pages: usize,
    mode: SpectralMode,
    check_limit: bool,
) -> Report {
    let text = match read_file(file) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let mut out = String::new();
    let mut json_pages: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    let mut limit_result: Option<bool> = None;

    let filtered = match mode {
        SpectralMode::Filtered | SpectralMode::Axiomatic => match formats::parse_filtered(&text) {
            Ok(f) => Some(f),
            Err(formats::FormatError::Json(e)) => {
                return Report::fail(EXIT_PARSE, format!("json error: {e}"))
            }
            Err(formats::FormatError::Content(e)) => return Report::fail(EXIT_VALIDATION, e),
        },
        SpectralMode::DoubleFirst | SpectralMode::DoubleSecond => {
            let dc = match formats::parse_double(&text) {
                Ok(d) => d,
                Err(formats::FormatError::Json(e)) => {
                    return Report::fail(EXIT_PARSE, format!("json error: {e}"))
                }
                Err(formats::FormatError::Content(e)) => return Report::fail(EXIT_VALIDATION, e),
            };
            let which = if mode == SpectralMode::DoubleFirst {
                TotalFiltration::First
            } else {
                TotalFiltration::Second
            };
            match dc.total_complex(which) {
                Ok(f) => Some(f),
                Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
            }
        }
        SpectralMode::Ahss => None,
    };

    match mode {
        SpectralMode::Filtered | SpectralMode::DoubleFirst | SpectralMode::DoubleSecond => {
            let f = filtered.as_ref().expect("parsed above");
            for r in 1..=pages {
                match page(f, r) {
                    Ok(pg) => {
                        let mut jm = BTreeMap::new();
                        page_table(&format!("page E_{r}"), &pg.nonzero(), &mut out, &mut jm);
                        json_pages.insert(r.to_string(), jm);
                    }
                    Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
                }
            }
            if check_limit {
                match limit_vs_total(f) {
                    Ok(report) => {
                        limit_result = Some(report.pass);
                        let _ = writeln!(
                            out,
                            "limit check: {}",
                            if report.pass { "PASS" } else { "FAIL" }
                        );
                    }
                    Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
                }
            }
        }
        SpectralMode::Axiomatic => {
            let f = filtered.as_ref().expect("parsed above");
            let sys = match AxiomaticSystem::from_filtered(f) {
                Ok(s) => s,
                Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
            };
            if let Err(e) = sys.verify_axioms() {
                return Report::fail(EXIT_VALIDATION, format!("{e}"));
            }
            for r in 1..=pages {
                match sys.pages(r) {
                    Ok(pg) => {
                        let mut jm = BTreeMap::new();
                        page_table(&format!("page E_{r}"), &pg.nonzero(), &mut out, &mut jm);
                        json_pages.insert(r.to_string(), jm);
                    }
                    Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
                }
            }
            if check_limit {
                match limit_vs_total(f) {
                    Ok(report) => {
                        limit_result = Some(report.pass);
                        let _ = writeln!(
                            out,
                            "limit check: {}",
                            if report.pass { "PASS" } else { "FAIL" }
                        );
                    }
                    Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
                }
            }
        }
        SpectralMode::Ahss => {
            let (complex, theory) = match formats::parse_ahss(&text) {
                Ok(v) => v,
                Err(formats::FormatError::Json(e)) => {
                    return Report::fail(EXIT_PARSE, format!("json error: {e}"))
                }
                Err(formats::FormatError::Content(e)) => return Report::fail(EXIT_VALIDATION, e),
            };
            match ahss(&complex, &theory) {
                Ok(AhssSystem::Ordinary(sys)) => {
                    for r in 1..=pages {
                        match sys.pages(r) {
                            Ok(pg) => {
                                let mut jm = BTreeMap::new();
                                page_table(&format!("page E_{r}"), &pg.nonzero(), &mut out, &mut jm);
                                json_pages.insert(r.to_string(), jm);
                            }
                            Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
                        }
                    }
                }
                Ok(AhssSystem::Tabular(t)) => {
                    for r in 1..=pages {
                        match t.page_groups(r) {
                            Ok(groups) => {
                                let mut jm = BTreeMap::new();
                                let entries: Vec<((i64, i64), FPAbelianGroup)> = groups
                                    .into_iter()
                                    .filter(|(_, g)| !g.is_trivial())
                                    .map(|((p, s), g)| ((p as i64, s as i64), g))
                                    .collect();
                                page_table(&format!("page E_{r}"), &entries, &mut out, &mut jm);
                                json_pages.insert(r.to_string(), jm);
                            }
                            Err(cohomolab::spectral::SpectralError::InsufficientData) => {
                                return Report::fail(
                                    EXIT_INSUFFICIENT,
                                    format!(
                                        "tabular theory cannot produce page {r}: higher differentials have room"
                                    ),
                                );
                            }
                            Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
                        }
                    }
                    if t.collapse_is_up_to_extensions() && pages >= 2 {
                        let _ = writeln!(out, "collapse at E_2 (groups reported up to extensions)");
                    }
                }
                Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
            }
        }
    }
    Report::ok(
        out.trim_end().to_string(),
        serde_json::json!({ "pages": json_pages, "limit_check": limit_result }),
    )
}

fn cmd_holonomy(
    _ws: &Workspace,
    datafile: &str,
    pathfile: &str,
    holonomy_type: HolonomyType,
    tol: f64,
    force: bool,
) -> Report {
    let data_text = match read_file(datafile) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let path_text = match read_file(pathfile) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let mut out = String::new();
    let mut json = serde_json::Map::new();
    match holonomy_type {
        HolonomyType::LineLoop | HolonomyType::LinePath => {
            let parsed = match formats::parse_line_data(&data_text) {
                Ok(p) => p,
                Err(e) => return Report::fail(EXIT_PARSE, format!("{e}")),
            };
            let report = validate_line_cocycle(&parsed.cover, &parsed.data, tol);
            if report.is_valid() {
                let _ = writeln!(out, "cocycle validation: OK");
            } else {
                let _ = writeln!(out, "cocycle validation: {} violations", report.violations.len());
                if !force {
                    return Report::fail(
                        EXIT_VALIDATION,
                        format!("cocycle validation failed: {}", report.violations.join("; ")),
                    );
                }
            }
            let path = match formats::parse_path(&path_text) {
                Ok(p) => p,
                Err(e) => return Report::fail(EXIT_PARSE, format!("{e}")),
            };
            let value = if holonomy_type == HolonomyType::LineLoop {
                ChartedLoop::new(&parsed.cover, path.edges, path.charts)
                    .and_then(|gamma| holonomy_loop(&parsed.cover, &parsed.data, &gamma))
            } else {
                ChartedPath::new(&parsed.cover, path.edges, path.charts).and_then(|gamma| {
                    holonomy_path(
                        &parsed.cover,
                        &parsed.data,
                        &parsed.trivialization,
                        &gamma,
                        tol,
                    )
                })
            };
            let value = match value {
                Ok(v) => v,
                Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
            };
            let _ = writeln!(out, "holonomy = {value:.12}");
            json.insert("holonomy".into(), serde_json::json!(value));
            if !parsed.chern_cycle.is_empty() {
                match chern_class(&parsed.cover, &parsed.data, tol) {
                    Ok(class) => {
                        let pairing = chern_pairing(&class, &parsed.chern_cycle);
                        let _ = writeln!(out, "chern pairing = {pairing}");
                        json.insert("chern_pairing".into(), serde_json::json!(pairing));
                        if let Ok(f) = curvature(&parsed.cover, &parsed.data, tol) {
                            let base_cycle: Vec<(i64, Vec<usize>)> = Vec::new();
                            let _ = curvature_pairing(&f, &base_cycle);
                        }
                    }
                    Err(e) => {
                        let _ = writeln!(out, "chern pairing unavailable: {e}");
                    }
                }
            }
        }
        HolonomyType::GerbeClosed | HolonomyType::GerbeOpen => {
            let parsed = match formats::parse_gerbe_data(&data_text) {
                Ok(p) => p,
                Err(e) => return Report::fail(EXIT_PARSE, format!("{e}")),
            };
            let report = validate_gerbe_cocycle(&parsed.cover, &parsed.data, tol);
            if report.is_valid() {
                let _ = writeln!(out, "cocycle validation: OK");
            } else {
                let _ = writeln!(out, "cocycle validation: {} violations", report.violations.len());
                if !force {
                    return Report::fail(
                        EXIT_VALIDATION,
                        format!("cocycle validation failed: {}", report.violations.join("; ")),
                    );
                }
            }
            let file = match formats::parse_surface(&path_text) {
                Ok(s) => s,
                Err(e) => return Report::fail(EXIT_PARSE, format!("{e}")),
            };
            let surface = match ChartedSurface::new(&parsed.cover, file.triangles, file.charts) {
                Ok(s) => s,
                Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
            };
            let value = if holonomy_type == HolonomyType::GerbeClosed {
                holonomy_surface(&parsed.cover, &parsed.data, &surface)
            } else {
                holonomy_open_surface(
                    &parsed.cover,
                    &parsed.data,
                    (&parsed.trivialization_h, &parsed.trivialization_a),
                    &surface,
                    tol,
                )
            };
            let value = match value {
                Ok(v) => v,
                Err(e) => return Report::fail(EXIT_VALIDATION, format!("{e}")),
            };
            let _ = writeln!(out, "holonomy = {value:.12}");
            json.insert("holonomy".into(), serde_json::json!(value));
        }
    }
    Report::ok(out.trim_end().to_string(), serde_json::Value::Object(json))
}

fn lift_case_by_name(name: &str) -> Option<LiftCase> {
    Some(match name {
        "sphere_antipodal" => LiftCase::SphereAntipodal,
        "torus_klein_xi0" => LiftCase::TorusKleinXi0,
        "torus_klein_xi1" => LiftCase::TorusKleinXi1,
        "torus_klein_xi2" => LiftCase::TorusKleinXi2,
        "torus_klein_xi3" => LiftCase::TorusKleinXi3,
        "moebius_tau4_xi0" => LiftCase::MoebiusTau4Xi0,
        "moebius_tau4_xi1" => LiftCase::MoebiusTau4Xi1,
        "moebius_tau4_xi2" => LiftCase::MoebiusTau4Xi2,
        _ => return None,
    })
}

fn rep_case_by_name(name: &str) -> Option<SmallRepCase> {
    Some(match name {
        "Cl1_C" => SmallRepCase::Cl1C,
        "Cl10_RR" => SmallRepCase::Cl10RR,
        "Cl2_H" => SmallRepCase::Cl2H,
        "Cl11_M2R" => SmallRepCase::Cl11M2R,
        "CCl1" => SmallRepCase::CCl1,
        "CCl2" => SmallRepCase::CCl2,
        "periodicity_CC" => SmallRepCase::PeriodicityCC,
        "periodicity_11" => SmallRepCase::Periodicity11,
        "Cl13_M2H" => SmallRepCase::Cl13M2H,
        _ => return None,
    })
}

fn cmd_clifford(
    _ws: &Workspace,
    case: Option<&str>,
    pin: Option<PinChoice>,
    rep: Option<&str>,
    tables: Option<TableKind>,
) -> Report {
    if let Some(name) = case {
        let Some(case) = lift_case_by_name(name) else {
            return Report::fail(EXIT_PARSE, format!("unknown case {name}"));
        };
        let Some(pin) = pin else {
            return Report::fail(EXIT_PARSE, "missing --pin".into());
        };
        let sign = match pin {
            PinChoice::Plus => PinSign::Plus,
            PinChoice::Minus => PinSign::Minus,
        };
        let value = dtau_square(case, sign);
        let text = if value > 0 { "+1" } else { "-1" };
        return Report::ok(
            text.to_string(),
            serde_json::json!({ "case": name, "square": value }),
        );
    }
    if let Some(name) = rep {
        let Some(case) = rep_case_by_name(name) else {
            return Report::fail(EXIT_PARSE, format!("unknown rep {name}"));
        };
        let (_, report) = small_rep(case);
        let mut out = format!(
            "relations: {}",
            if report.relations_ok { "OK" } else { "FAIL" }
        );
        for (check, ok) in &report.checks {
            let _ = write!(out, ", {}: {}", check_label(check), if *ok { "OK" } else { "FAIL" });
        }
        let exit = if report.all_ok() { EXIT_OK } else { EXIT_VALIDATION };
        return Report {
            exit,
            text: out.clone(),
            json: serde_json::json!({ "rep": name, "ok": report.all_ok(), "detail": out }),
        };
    }
    if let Some(kind) = tables {
        let table_kind = match kind {
            TableKind::Euclidean => SpinTableKind::Euclidean,
            TableKind::Minkowskian => SpinTableKind::Minkowskian,
        };
        let report = spin2_tables(table_kind, cohomolab::DEFAULT_TOLERANCE);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "rows verified: {}/{}",
            report.rows.iter().filter(|r| r.verified).count(),
            report.rows.len()
        );
        for row in report.rows.iter().take(8) {
            let _ = writeln!(
                out,
                "{} at {:+.3}: action [[{:+.6}, {:+.6}], [{:+.6}, {:+.6}]]",
                row.label,
                row.parameter,
                row.action[0][0],
                row.action[0][1],
                row.action[1][0],
                row.action[1][1]
            );
        }
        let _ = writeln!(
            out,
            "product rule: {}; weyl eigenvectors: {}",
            if report.product_rule_ok { "OK" } else { "FAIL" },
            if report.weyl_ok { "OK" } else { "FAIL" }
        );
        let exit = if report.all_ok() { EXIT_OK } else { EXIT_VALIDATION };
        return Report {
            exit,
            text: out.trim_end().to_string(),
            json: serde_json::json!({ "ok": report.all_ok() }),
        };
    }
    Report::fail(EXIT_PARSE, "one of --case, --rep, --tables is required".into())
}

fn check_label(name: &str) -> &str {
    if name == "chirality matrix" {
        "chirality"
    } else {
        name
    }
}

pub fn print_report(format: Format, report: &Report) {
    match format {
        Format::Text => println!("{}", report.text),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.json).expect("serializable")
        ),
    }
}
