//! Command implementations behind the `bv` binary: spec analysis, structure
//! listing, the bundled fixture suite, family scans and theorem checks.

pub mod fixtures;
pub mod presets;
pub mod report;

use beauville_core::render::element_words;
use beauville_core::verify::{
    cube_root_action, family_spec, verify_abelian_classification, verify_direct_product,
    verify_family_d4, verify_lemma2b, verify_order3_census, verify_thm8, D4_FAMILIES,
};
use beauville_core::{
    beauville_dimension, build, check_structure, enumerate_sigma_records, parse_spec,
    BeauvilleError, BuildError, BuildOptions, Classification, ElementSet, GroupSpec, GroupTable,
};
use fixtures::{FixtureReport, FixtureResult};
use rayon::prelude::*;
use report::{make_report, witness_pairs, Report, WitnessPair, MAX_WORD_LEN, VERSION};
use serde::Serialize;
use std::time::Instant;

/// Errors mapped to process exit codes: 1 mismatch, 2 parse, 3 construction,
/// 4 degenerate input.
#[derive(Clone, Debug)]
pub enum CliError {
    Mismatch(String),
    Parse(String),
    Construction(String),
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Construction(_) => 3,
            CliError::Degenerate(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Mismatch(m)
            | CliError::Parse(m)
            | CliError::Construction(m)
            | CliError::Degenerate(m) => m,
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        CliError::Construction(e.to_string())
    }
}

impl From<BeauvilleError> for CliError {
    fn from(e: BeauvilleError) -> Self {
        match e {
            BeauvilleError::NotTwoGenerated | BeauvilleError::DegenerateTrivialGroup => {
                CliError::Degenerate(e.to_string())
            }
            other => CliError::Mismatch(other.to_string()),
        }
    }
}

/// Expand presets and parse.
pub fn parse_cli_spec(text: &str) -> Result<GroupSpec, CliError> {
    parse_spec(&presets::substitute(text)).map_err(|e| CliError::Parse(e.to_string()))
}

fn analyze_group(
    spec_text: &str,
    g: &GroupTable,
    timing_ms: Option<u128>,
) -> Result<Report, CliError> {
    if g.order() == 1 {
        return Err(CliError::Degenerate(
            BeauvilleError::DegenerateTrivialGroup.to_string(),
        ));
    }
    let classes = g.conjugacy_classes();
    let records = enumerate_sigma_records(g, &classes)?;
    let dim = beauville_dimension(g)?;
    Ok(make_report(
        spec_text.to_string(),
        g,
        classes.count(),
        records.len(),
        &dim,
        timing_ms,
    ))
}

/// `bv analyze <spec>`: full dimension report for one group.
pub fn run_analyze(
    spec_text: &str,
    opts: &BuildOptions,
    with_timing: bool,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let spec = parse_cli_spec(spec_text)?;
    let g = build(&spec, opts)?;
    let timing = with_timing.then(|| start.elapsed().as_millis());
    analyze_group(spec_text, &g, timing)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyOut {
    pub pairs: Vec<WitnessPair>,
    pub carrier_sizes: Vec<usize>,
    pub classification: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructuresReport {
    pub version: &'static str,
    pub spec: String,
    pub order: usize,
    pub sigma_count: usize,
    pub d: usize,
    pub families: Vec<FamilyOut>,
    pub blocking_element: Option<String>,
}

/// `bv structures <spec>`: trivially-intersecting carrier families in
/// canonical order. With `minimal`, only families of size exactly d; the
/// default also reports families one carrier larger. At most `limit`
/// families are returned.
pub fn run_structures(
    spec_text: &str,
    minimal: bool,
    limit: usize,
    opts: &BuildOptions,
) -> Result<StructuresReport, CliError> {
    let spec = parse_cli_spec(spec_text)?;
    let g = build(&spec, opts)?;
    if g.order() == 1 {
        return Err(CliError::Degenerate(
            BeauvilleError::DegenerateTrivialGroup.to_string(),
        ));
    }
    let classes = g.conjugacy_classes();
    let records = enumerate_sigma_records(&g, &classes)?;
    let dim = beauville_dimension(&g)?;
    let names = element_words(&g, MAX_WORD_LEN);

    let mut families = Vec::new();
    if dim.d >= 2 {
        let sizes: Vec<usize> = if minimal || dim.d + 1 > records.len() {
            vec![dim.d]
        } else {
            vec![dim.d, dim.d + 1]
        };
        for size in sizes {
            if families.len() >= limit {
                break;
            }
            for chosen in subsets_with_trivial_intersection(&g, &records, size, limit - families.len())
            {
                let pairs: Vec<_> = chosen
                    .iter()
                    .map(|&i| records[i].canonical_pair)
                    .collect();
                let fam = check_structure(&g, &pairs)?;
                if minimal && fam.classification != Classification::Minimal {
                    continue;
                }
                families.push(FamilyOut {
                    pairs: witness_pairs(&names, &fam),
                    carrier_sizes: fam.carriers.iter().map(|c| c.count()).collect(),
                    classification: fam.classification.as_str(),
                });
            }
        }
    }
    Ok(StructuresReport {
        version: VERSION,
        spec: spec_text.to_string(),
        order: g.order(),
        sigma_count: records.len(),
        d: dim.d,
        families,
        blocking_element: dim.blocking_element.map(|e| names[e as usize].clone()),
    })
}

/// Index subsets of the given size whose carrier intersection is trivial,
/// in lexicographic index order, stopping after `limit` hits.
fn subsets_with_trivial_intersection(
    g: &GroupTable,
    records: &[beauville_core::SigmaRecord],
    size: usize,
    limit: usize,
) -> Vec<Vec<usize>> {
    fn dfs(
        g: &GroupTable,
        records: &[beauville_core::SigmaRecord],
        size: usize,
        limit: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        acc: &ElementSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= limit {
            return;
        }
        if chosen.len() == size {
            if acc.is_trivial() {
                out.push(chosen.clone());
            }
            return;
        }
        for i in start..records.len() {
            if records.len() - i < size - chosen.len() {
                break;
            }
            let mut next = acc.clone();
            next.intersect_with(&records[i].carrier);
            chosen.push(i);
            dfs(g, records, size, limit, i + 1, chosen, &next, out);
            chosen.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
    let mut out = Vec::new();
    let full = ElementSet::full(g.order());
    dfs(g, records, size, limit, 0, &mut Vec::new(), &full, &mut out);
    out
}

/// `bv fixtures --suite <name>`: run every bundled fixture; each row asserts
/// the catalog order and the expected d. Deterministic output regardless of
/// thread count; no timing fields.
pub fn run_fixtures(suite_name: &str, opts: &BuildOptions) -> Result<FixtureReport, CliError> {
    let rows = fixtures::suite(suite_name)
        .ok_or_else(|| CliError::Parse(format!("unknown fixture suite `{suite_name}`")))?;
    let results: Vec<FixtureResult> = rows
        .par_iter()
        .map(|row| {
            let expected_order = row.expected_order().unwrap_or(0);
            let outcome = parse_cli_spec(&row.spec)
                .and_then(|spec| build(&spec, opts).map_err(CliError::from))
                .and_then(|g| {
                    let d = beauville_dimension(&g)?;
                    Ok((g.order(), d.d))
                });
            match outcome {
                Ok((order, d)) => FixtureResult {
                    expected_d: row.expected_d,
                    expected_order,
                    spec: row.spec.clone(),
                    provenance: row.provenance.clone(),
                    order: Some(order),
                    d: Some(d),
                    error: None,
                    pass: order == expected_order && d == row.expected_d,
                },
                Err(e) => FixtureResult {
                    expected_d: row.expected_d,
                    expected_order,
                    spec: row.spec.clone(),
                    provenance: row.provenance.clone(),
                    order: None,
                    d: None,
                    error: Some(e.message().to_string()),
                    pass: false,
                },
            }
        })
        .collect();
    let failures = results.iter().filter(|r| !r.pass).count();
    Ok(FixtureReport {
        version: VERSION,
        suite: suite_name.to_string(),
        rows: results,
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub param: u64,
    pub spec: String,
    pub order: Option<usize>,
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub version: &'static str,
    pub family: String,
    pub entries: Vec<ScanEntry>,
    /// Entries with d > 2, relevant in `--no-div-3` mode.
    pub hits_above_2: usize,
}

/// Parse `a..b` (inclusive) or a comma-separated list.
pub fn parse_range(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = |_| CliError::Parse(format!("cannot parse range `{text}`"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(bad)?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(bad)?;
        Ok((a..=b).collect())
    } else {
        text.split(',')
            .map(|t| t.trim().parse().map_err(bad))
            .collect()
    }
}

/// Spec text for one member of a named scan family.
pub fn scan_member_spec(family: &str, param: u64) -> Result<String, CliError> {
    match family {
        "CnxCn" => Ok(format!("C({param}) x C({param})")),
        "Cn" => Ok(format!("C({param})")),
        "thm8" => {
            let t = cube_root_action(param).filter(|_| param % 3 == 1).ok_or_else(|| {
                CliError::Construction(format!(
                    "thm8 needs a prime parameter congruent to 1 mod 3, got {param}"
                ))
            })?;
            Ok(format!("sd(C({param}), C(3), [a -> a^{t}]) x C(3)"))
        }
        f if D4_FAMILIES.contains(&f) => {
            family_spec(f, &[param]).map_err(|e| CliError::Construction(e.to_string()))
        }
        _ => Err(CliError::Parse(format!("unknown scan family `{family}`"))),
    }
}

/// `bv scan --family <name> --range <params>`: analyze each family member,
/// reporting per-member errors without aborting the scan.
pub fn run_scan(family: &str, params: &[u64], opts: &BuildOptions) -> Result<ScanReport, CliError> {
    let entries: Vec<ScanEntry> = params
        .iter()
        .map(|&p| {
            let spec_text = match scan_member_spec(family, p) {
                Ok(s) => s,
                Err(e) => {
                    return ScanEntry {
                        param: p,
                        spec: String::new(),
                        order: None,
                        d: None,
                        error: Some(e.message().to_string()),
                    }
                }
            };
            match run_analyze(&spec_text, opts, false) {
                Ok(r) => ScanEntry {
                    param: p,
                    spec: spec_text,
                    order: Some(r.group.order),
                    d: Some(r.dimension.d),
                    error: None,
                },
                Err(e) => ScanEntry {
                    param: p,
                    spec: spec_text,
                    order: None,
                    d: None,
                    error: Some(e.message().to_string()),
                },
            }
        })
        .collect();
    let hits = entries.iter().filter(|e| e.d.map_or(false, |d| d > 2)).count();
    Ok(ScanReport {
        version: VERSION,
        family: family.to_string(),
        entries,
        hits_above_2: hits,
    })
}

/// `bv scan --no-div-3`: sweep the bundled members whose order is coprime to
/// 3 (squares Cn x Cn with 3 not dividing n, and the 2-group presets) up to
/// the given order bound, counting any d > 2 hits.
pub fn run_scan_no_div_3(max_order: u64, opts: &BuildOptions) -> Result<ScanReport, CliError> {
    let mut entries = Vec::new();
    let mut n = 2u64;
    while n * n <= max_order {
        if n % 3 != 0 {
            let spec_text = format!("C({n}) x C({n})");
            let r = run_analyze(&spec_text, opts, false)?;
            entries.push(ScanEntry {
                param: n,
                spec: spec_text,
                order: Some(r.group.order),
                d: Some(r.dimension.d),
                error: None,
            });
        }
        n += 1;
    }
    for preset in ["Q8", "D8"] {
        let r = run_analyze(preset, opts, false)?;
        entries.push(ScanEntry {
            param: 0,
            spec: preset.to_string(),
            order: Some(r.group.order),
            d: Some(r.dimension.d),
            error: None,
        });
    }
    let hits = entries.iter().filter(|e| e.d.map_or(false, |d| d > 2)).count();
    Ok(ScanReport {
        version: VERSION,
        family: "no-div-3".to_string(),
        entries,
        hits_above_2: hits,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub check: String,
    pub pass: bool,
    pub detail: serde_json::Value,
}

pub struct VerifyParams {
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub g: Option<String>,
    pub h: Option<String>,
    pub spec: Option<String>,
    pub max_order: Option<u64>,
    pub family: Option<String>,
    pub params: Option<String>,
}

fn require<T>(v: Option<T>, what: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Parse(format!("this check requires {what}")))
}

/// `bv verify --thm <name>`: dispatch to the checkers. Exit code 1 when the
/// check fails.
pub fn run_verify(
    thm: &str,
    params: &VerifyParams,
    opts: &BuildOptions,
) -> Result<VerifyReport, CliError> {
    let (pass, detail) = match thm {
        // Coprime direct product: d(G x H) = d(G) when d(G) > 2, d(H) = 2.
        "1" => {
            let gtext = require(params.g.as_ref(), "--g <spec>")?;
            let htext = require(params.h.as_ref(), "--h <spec>")?;
            let gspec = parse_cli_spec(gtext)?;
            let hspec = parse_cli_spec(htext)?;
            let r = verify_direct_product(&gspec, &hspec, opts)?;
            (
                r.pass,
                serde_json::json!({
                    "g_order": r.g_order, "h_order": r.h_order,
                    "d_g": r.d_g, "d_h": r.d_h, "d_product": r.d_product,
                    "mechanism_trivial_h_component": r.mechanism_trivial_h_component,
                }),
            )
        }
        // d(Cn x Cn) = 2 exactly when gcd(n, 6) = 1, n > 1.
        "2" => {
            let cap = params.max_order.unwrap_or(400);
            let mut rows = Vec::new();
            let mut pass = true;
            let mut n = 2u64;
            while n * n <= cap {
                let g = build(&parse_cli_spec(&format!("C({n}) x C({n})"))?, opts)?;
                let d = beauville_dimension(&g)?.d;
                let expected_2 = beauville_core::group::gcd(n as usize, 6) == 1;
                let ok = (d == 2) == expected_2;
                pass &= ok;
                rows.push(serde_json::json!({"n": n, "d": d, "ok": ok}));
                n += 1;
            }
            (pass, serde_json::json!({"rows": rows}))
        }
        // Order-3 census in C_{3^k} x C_{3^k}: 8 elements of order 3,
        // exactly 6 in each distinct carrier.
        "3" => {
            let k = params.k.unwrap_or(1);
            let r = verify_order3_census(k, opts)?;
            (
                r.pass,
                serde_json::json!({
                    "k": r.k, "order": r.order,
                    "order3_elements": r.order3_elements,
                    "carrier_sizes": r.carrier_sizes,
                    "order3_per_carrier": r.order3_per_carrier,
                }),
            )
        }
        // Census of C3 x (Cp : C3) for p = 1 mod 3.
        "8" => {
            let p = require(params.p, "--p <prime>")?;
            let r = verify_thm8(p, opts)?;
            (
                r.pass,
                serde_json::json!({
                    "p": r.p, "order": r.order, "classes": r.class_count,
                    "count_order_p": r.count_order_p,
                    "count_order_3p": r.count_order_3p,
                    "count_order_3": r.count_order_3,
                    "sigma_profile": r.sigma_profile,
                    "center_in_large_carriers": r.center_in_large_carriers,
                    "d": r.d,
                }),
            )
        }
        // Closed-form abelian d against the exhaustive engine.
        "cor1" => {
            let cap = params.max_order.unwrap_or(100);
            let r = verify_abelian_classification(cap, opts)?;
            (
                r.mismatches == 0,
                serde_json::json!({
                    "groups_checked": r.rows.len(),
                    "mismatches": r.mismatches,
                }),
            )
        }
        // Every trivially-intersecting carrier family bounds d from above.
        "lemma2b" => {
            let spec_text = require(params.spec.as_ref(), "--spec <spec>")?;
            let g = build(&parse_cli_spec(spec_text)?, opts)?;
            let r = verify_lemma2b(&g, 6)?;
            (
                r.pass,
                serde_json::json!({
                    "d": r.d,
                    "structures_inspected": r.structure_sizes.len(),
                    "structure_sizes": r.structure_sizes,
                }),
            )
        }
        // Named families asserted to have d = 4.
        "family-d4" => {
            let family = require(params.family.as_ref(), "--family <name>")?;
            let ps = match &params.params {
                Some(t) => parse_range(t)?,
                None => Vec::new(),
            };
            let r = verify_family_d4(family, &ps, opts)?;
            (
                r.pass,
                serde_json::json!({
                    "family": r.family, "params": r.params, "spec": r.spec,
                    "order": r.order, "d": r.d,
                }),
            )
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown check `{other}`; use 1, 2, 3, 8, cor1, lemma2b or family-d4"
            )))
        }
    };
    Ok(VerifyReport {
        version: VERSION,
        check: thm.to_string(),
        pass,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> BuildOptions {
        BuildOptions::default()
    }

    #[test]
    fn analyze_c3c3() {
        let r = run_analyze("C(3) x C(3)", &opts(), false).unwrap();
        assert_eq!(r.group.order, 9);
        assert_eq!(r.group.sigma_count, 4);
        assert_eq!(r.dimension.d, 4);
        assert!(r.timing_ms.is_none());
    }

    #[test]
    fn analyze_blocking_c2() {
        let r = run_analyze("C(2)", &opts(), false).unwrap();
        assert_eq!(r.dimension.d, 1);
        assert_eq!(r.dimension.blocking_element.as_deref(), Some("a"));
    }

    #[test]
    fn analyze_trivial_is_degenerate() {
        let e = run_analyze("C(1)", &opts(), false).unwrap_err();
        assert_eq!(e.exit_code(), 4);
    }

    #[test]
    fn analyze_parse_error() {
        let e = run_analyze("C(3) y C(3)", &opts(), false).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn structures_minimal_c3c3() {
        let r = run_structures("C(3) x C(3)", true, 10, &opts()).unwrap();
        assert_eq!(r.d, 4);
        assert_eq!(r.families.len(), 1);
        assert_eq!(r.families[0].classification, "minimal");
        assert_eq!(r.families[0].carrier_sizes, vec![7, 7, 7, 7]);
    }

    #[test]
    fn structures_blocking_c4c4() {
        let r = run_structures("C(4) x C(4)", false, 10, &opts()).unwrap();
        assert_eq!(r.d, 1);
        assert!(r.families.is_empty());
        assert!(r.blocking_element.is_some());
    }

    #[test]
    fn scan_range_syntax() {
        assert_eq!(parse_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_range("7, 13, 19").unwrap(), vec![7, 13, 19]);
        assert!(parse_range("x..y").is_err());
    }

    #[test]
    fn scan_cnxcn_small() {
        let r = run_scan("CnxCn", &[2, 3, 5], &opts()).unwrap();
        let ds: Vec<_> = r.entries.iter().map(|e| e.d.unwrap()).collect();
        assert_eq!(ds, vec![1, 4, 2]);
    }

    #[test]
    fn verify_thm8_p7_passes() {
        let params = VerifyParams {
            p: Some(7),
            k: None,
            g: None,
            h: None,
            spec: None,
            max_order: None,
            family: None,
            params: None,
        };
        let r = run_verify("8", &params, &opts()).unwrap();
        assert!(r.pass);
    }
}
