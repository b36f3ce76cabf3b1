//! UTF-8 JSON file formats. Keys are sorted and output is pretty-printed
//! with a trailing newline, so serialize(parse(file)) is byte-identical for
//! canonical-form files.

use cohomolab::cechgeom::{CDCochain, Cover, GerbeData, LineData};
use cohomolab::exactalg::{FPAbelianGroup, IntMatrix};
use cohomolab::simplicial::SimplicialComplex;
use cohomolab::spectral::{CoefficientTheory, DoubleComplex, FilteredComplex};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug)]
pub enum FormatError {
    Json(String),
    Content(String),
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "json error: {e}"),
            FormatError::Content(e) => write!(f, "content error: {e}"),
        }
    }
}

fn content(e: impl std::fmt::Display) -> FormatError {
    FormatError::Content(e.to_string())
}

// ---------------------------------------------------------------- complexes

#[derive(Serialize, Deserialize)]
pub struct SimplicialComplexFile {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, FormatError> {
    let file: SimplicialComplexFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    SimplicialComplex::from_simplices(file.vertices, &file.simplices).map_err(content)
}

pub fn complex_to_json(c: &SimplicialComplex) -> String {
    let file = SimplicialComplexFile {
        vertices: c.vertex_count(),
        simplices: c.all_simplices(),
    };
    to_pretty(&file)
}

// ---------------------------------------------------------------- filtered

#[derive(Serialize, Deserialize)]
pub struct FilteredComplexFile {
    pub ranks: BTreeMap<String, usize>,
    pub differentials: BTreeMap<String, Vec<Vec<i64>>>,
    pub filtration: BTreeMap<String, Vec<usize>>,
}

pub fn parse_filtered(text: &str) -> Result<FilteredComplex, FormatError> {
    let file: FilteredComplexFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let degrees: Vec<i64> = file
        .ranks
        .keys()
        .map(|k| k.parse::<i64>().map_err(|e| FormatError::Json(e.to_string())))
        .collect::<Result<_, _>>()?;
    if degrees.is_empty() {
        return Err(FormatError::Content("no degrees".into()));
    }
    let lo = *degrees.iter().min().unwrap();
    let hi = *degrees.iter().max().unwrap();
    let count = (hi - lo + 1) as usize;
    let mut ranks = vec![0usize; count];
    for (k, v) in &file.ranks {
        let n: i64 = k.parse().unwrap();
        ranks[(n - lo) as usize] = *v;
    }
    let mut filtration = vec![Vec::new(); count];
    for i in 0..count {
        let n = lo + i as i64;
        filtration[i] = file
            .filtration
            .get(&n.to_string())
            .cloned()
            .unwrap_or_else(|| vec![0; ranks[i]]);
        if filtration[i].len() != ranks[i] {
            return Err(FormatError::Content(format!(
                "filtration length mismatch at degree {n}"
            )));
        }
    }
    let mut diffs = Vec::with_capacity(count);
    for i in 0..count {
        let n = lo + i as i64;
        let rows = if i + 1 < count { ranks[i + 1] } else { 0 };
        let matrix = match file.differentials.get(&n.to_string()) {
            Some(m) if !m.is_empty() => {
                if m.len() != rows || m.iter().any(|r| r.len() != ranks[i]) {
                    return Err(FormatError::Content(format!(
                        "differential shape mismatch at degree {n}"
                    )));
                }
                IntMatrix::from_rows_i64(m)
            }
            // An absent or empty list is the zero map of the right shape
            // (rows may legitimately be zero at the top degree).
            _ => IntMatrix::zeros(rows, ranks[i]),
        };
        diffs.push(matrix);
    }
    FilteredComplex::new(lo, ranks, diffs, filtration).map_err(content)
}

// ------------------------------------------------------------------ double

#[derive(Serialize, Deserialize)]
pub struct DoubleComplexFile {
    pub entries: BTreeMap<String, usize>,
    pub delta1: BTreeMap<String, Vec<Vec<i64>>>,
    pub delta2: BTreeMap<String, Vec<Vec<i64>>>,
    /// "anticommuting" (default) or "commuting" (vertical maps get the
    /// (-1)^p twist on load).
    #[serde(default = "default_convention")]
    pub convention: String,
}

fn default_convention() -> String {
    "anticommuting".into()
}

fn parse_pq(key: &str) -> Result<(usize, usize), FormatError> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != 2 {
        return Err(FormatError::Content(format!("bad bidegree key {key}")));
    }
    Ok((
        parts[0].trim().parse().map_err(|e| FormatError::Json(format!("{e}")))?,
        parts[1].trim().parse().map_err(|e| FormatError::Json(format!("{e}")))?,
    ))
}

pub fn parse_double(text: &str) -> Result<DoubleComplex, FormatError> {
    let file: DoubleComplexFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let mut ranks = BTreeMap::new();
    for (k, v) in &file.entries {
        ranks.insert(parse_pq(k)?, *v);
    }
    let to_mats = |src: &BTreeMap<String, Vec<Vec<i64>>>| -> Result<BTreeMap<(usize, usize), IntMatrix>, FormatError> {
        let mut out = BTreeMap::new();
        for (k, m) in src {
            out.insert(parse_pq(k)?, IntMatrix::from_rows_i64(m));
        }
        Ok(out)
    };
    let d1 = to_mats(&file.delta1)?;
    let d2 = to_mats(&file.delta2)?;
    match file.convention.as_str() {
        "commuting" => DoubleComplex::from_commuting(ranks, d1, d2).map_err(content),
        _ => DoubleComplex::new(ranks, d1, d2).map_err(content),
    }
}

// -------------------------------------------------------------------- ahss

#[derive(Serialize, Deserialize)]
pub struct GroupFile {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupFile {
    pub fn to_group(&self) -> FPAbelianGroup {
        FPAbelianGroup::new(
            self.free_rank,
            self.torsion.iter().map(|&t| BigInt::from(t)).collect(),
        )
    }
}

#[derive(Serialize, Deserialize)]
pub struct AhssFile {
    pub complex: SimplicialComplexFile,
    pub theory: TheoryFile,
}

#[derive(Serialize, Deserialize)]
pub enum TheoryFile {
    #[serde(rename = "ordinary")]
    Ordinary(GroupFile),
    #[serde(rename = "tabular")]
    Tabular([GroupFile; 2]),
}

pub fn parse_ahss(text: &str) -> Result<(SimplicialComplex, CoefficientTheory), FormatError> {
    let file: AhssFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let complex = SimplicialComplex::from_simplices(file.complex.vertices, &file.complex.simplices)
        .map_err(content)?;
    let theory = match &file.theory {
        TheoryFile::Ordinary(g) => CoefficientTheory::Ordinary(g.to_group()),
        TheoryFile::Tabular([g0, g1]) => {
            CoefficientTheory::Tabular([g0.to_group(), g1.to_group()])
        }
    };
    Ok((complex, theory))
}

// --------------------------------------------------------------- cech data

/// Sparse cochain maps keyed by sorted tuples: tuple key "a,b" maps simplex
/// key "u,v" to the real value.
pub type CochainMapFile = BTreeMap<String, BTreeMap<String, f64>>;

#[derive(Serialize, Deserialize)]
pub struct LineDataFile {
    pub charts: BTreeMap<String, Vec<Vec<usize>>>,
    pub vertices: usize,
    #[serde(default)]
    pub rho: CochainMapFile,
    #[serde(rename = "A", default)]
    pub a: CochainMapFile,
    /// Optional nerve 2-cycle for Chern pairings: [coefficient, triple].
    #[serde(default)]
    pub chern_cycle: Vec<(i64, Vec<usize>)>,
    /// Optional trivialization for open paths.
    #[serde(default)]
    pub trivialization: CochainMapFile,
}

#[derive(Serialize, Deserialize)]
pub struct GerbeDataFile {
    pub charts: BTreeMap<String, Vec<Vec<usize>>>,
    pub vertices: usize,
    #[serde(default)]
    pub rho3: CochainMapFile,
    #[serde(default)]
    pub lambda: CochainMapFile,
    #[serde(rename = "B", default)]
    pub b: CochainMapFile,
    #[serde(default)]
    pub trivialization_h: CochainMapFile,
    #[serde(default)]
    pub trivialization_a: CochainMapFile,
}

fn parse_key_list(key: &str) -> Result<Vec<usize>, FormatError> {
    key.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| FormatError::Json(format!("bad key {key}: {e}")))
        })
        .collect()
}

pub fn cochain_from_file(p: usize, q: usize, map: &CochainMapFile) -> Result<CDCochain, FormatError> {
    let mut c = CDCochain::zero(p, q);
    for (tuple_key, values) in map {
        let tuple = parse_key_list(tuple_key)?;
        if tuple.len() != p + 1 {
            return Err(FormatError::Content(format!(
                "tuple {tuple_key} has arity {} but the bidegree needs {}",
                tuple.len(),
                p + 1
            )));
        }
        for (simplex_key, &value) in values {
            let simplex = parse_key_list(simplex_key)?;
            if simplex.len() != q + 1 {
                return Err(FormatError::Content(format!(
                    "simplex {simplex_key} has dimension {} but the bidegree needs {}",
                    simplex.len() - 1,
                    q
                )));
            }
            c.set(&tuple, &simplex, value);
        }
    }
    Ok(c)
}

fn parse_charts(
    vertices: usize,
    charts: &BTreeMap<String, Vec<Vec<usize>>>,
) -> Result<Vec<SimplicialComplex>, FormatError> {
    let mut out = Vec::new();
    for i in 0..charts.len() {
        let key = i.to_string();
        let sims = charts
            .get(&key)
            .ok_or_else(|| FormatError::Content(format!("missing chart {key}")))?;
        out.push(SimplicialComplex::from_simplices(vertices, sims).map_err(content)?);
    }
    Ok(out)
}

pub struct ParsedLineData {
    pub cover: Cover,
    pub data: LineData,
    pub chern_cycle: Vec<(i64, Vec<usize>)>,
    pub trivialization: CDCochain,
}

pub fn parse_line_data(text: &str) -> Result<ParsedLineData, FormatError> {
    let file: LineDataFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let charts = parse_charts(file.vertices, &file.charts)?;
    let all: Vec<Vec<usize>> = charts.iter().flat_map(|c| c.all_simplices()).collect();
    let base = SimplicialComplex::from_simplices(file.vertices, &all).map_err(content)?;
    let cover = Cover::new(base, charts).map_err(content)?;
    Ok(ParsedLineData {
        cover,
        data: LineData {
            rho: cochain_from_file(1, 0, &file.rho)?,
            a: cochain_from_file(0, 1, &file.a)?,
        },
        chern_cycle: file.chern_cycle,
        trivialization: cochain_from_file(0, 0, &file.trivialization)?,
    })
}

pub struct ParsedGerbeData {
    pub cover: Cover,
    pub data: GerbeData,
    pub trivialization_h: CDCochain,
    pub trivialization_a: CDCochain,
}

pub fn parse_gerbe_data(text: &str) -> Result<ParsedGerbeData, FormatError> {
    let file: GerbeDataFile =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let charts = parse_charts(file.vertices, &file.charts)?;
    let all: Vec<Vec<usize>> = charts.iter().flat_map(|c| c.all_simplices()).collect();
    let base = SimplicialComplex::from_simplices(file.vertices, &all).map_err(content)?;
    let cover = Cover::new(base, charts).map_err(content)?;
    Ok(ParsedGerbeData {
        cover,
        data: GerbeData {
            rho3: cochain_from_file(2, 0, &file.rho3)?,
            lambda: cochain_from_file(1, 1, &file.lambda)?,
            b: cochain_from_file(0, 2, &file.b)?,
        },
        trivialization_h: cochain_from_file(1, 0, &file.trivialization_h)?,
        trivialization_a: cochain_from_file(0, 1, &file.trivialization_a)?,
    })
}

// ------------------------------------------------------------ loops et al.

#[derive(Serialize, Deserialize)]
pub struct PathFile {
    pub edges: Vec<(usize, usize)>,
    pub charts: Vec<usize>,
    #[serde(default)]
    pub closed: bool,
}

pub fn parse_path(text: &str) -> Result<PathFile, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

#[derive(Serialize, Deserialize)]
pub struct SurfaceFile {
    pub triangles: Vec<[usize; 3]>,
    pub charts: Vec<usize>,
}

pub fn parse_surface(text: &str) -> Result<SurfaceFile, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn key_of(ids: &[usize]) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn cochain_to_file(c: &CDCochain) -> CochainMapFile {
    let mut out: CochainMapFile = BTreeMap::new();
    for (tuple, simplex, value) in c.entries() {
        out.entry(key_of(tuple))
            .or_default()
            .insert(key_of(simplex), value);
    }
    out
}

pub fn charts_to_file(cover: &Cover) -> BTreeMap<String, Vec<Vec<usize>>> {
    (0..cover.chart_count())
        .map(|i| (i.to_string(), cover.chart(i).all_simplices()))
        .collect()
}

pub fn line_data_file(
    cover: &Cover,
    data: &LineData,
    chern_cycle: Vec<(i64, Vec<usize>)>,
    trivialization: &CDCochain,
) -> LineDataFile {
    LineDataFile {
        charts: charts_to_file(cover),
        vertices: cover.base().vertex_count(),
        rho: cochain_to_file(&data.rho),
        a: cochain_to_file(&data.a),
        chern_cycle,
        trivialization: cochain_to_file(trivialization),
    }
}

pub fn gerbe_data_file(
    cover: &Cover,
    data: &GerbeData,
    trivialization_h: &CDCochain,
    trivialization_a: &CDCochain,
) -> GerbeDataFile {
    GerbeDataFile {
        charts: charts_to_file(cover),
        vertices: cover.base().vertex_count(),
        rho3: cochain_to_file(&data.rho3),
        lambda: cochain_to_file(&data.lambda),
        b: cochain_to_file(&data.b),
        trivialization_h: cochain_to_file(trivialization_h),
        trivialization_a: cochain_to_file(trivialization_a),
    }
}
