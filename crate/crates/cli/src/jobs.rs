//! Job execution shared by the direct subcommands and the batch runner:
//! every operation maps a canonical JSON input to a JSON output, and
//! results are memoized in an append-only ledger keyed by a stable hash.

use std::io::Write;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lantern_core::classify::{classify_pa, classify_reducible};
use lantern_core::error::Error;
use lantern_core::farey::{farey_path, neg_cfrac, parity_class};
use lantern_core::foliation::{is_transverse_ot_disk, FoliationData};
use lantern_core::heegaard::{
    build_diagram, hf_invariants, niceify, region_list, RegionList,
};
use lantern_core::json::{type_a_to_json, type_d_to_json};
use lantern_core::library::{library_graph, Flavor, FramingClass, LibraryGraph, LibrarySpec};
use lantern_core::mcg::{
    normalize_conjugacy, project_word, Normalized, Psl2zMatrix, ReducibleNormalForm, TwistWord,
    WordCurve,
};
use lantern_core::pairing::{homology_report, vanishing_witness, PairingSpec};
use lantern_core::ENGINE_VERSION;

/// Exit code 2: malformed input. Exit code 3: engine limitation.
pub struct JobError {
    pub code: i32,
    pub object: Value,
}

pub type JobResult = Result<Value, JobError>;

fn fail(code: i32, msg: impl std::fmt::Display) -> JobError {
    JobError { code, object: json!({"error": msg.to_string()}) }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) => 3,
            _ => 2,
        };
        fail(code, e)
    }
}

pub fn job_hash(subcommand: &str, input: &Value) -> String {
    let key = json!({
        "cmd": subcommand,
        "input": input,
        "engine": ENGINE_VERSION,
    });
    let mut hasher = Sha256::new();
    hasher.update(canonical_json(&key).as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Serialization with object keys sorted, so hashes ignore field order.
pub fn canonical_json(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let inner: Vec<String> = keys
                .iter()
                .map(|k| format!("{}:{}", serde_json::to_string(k).unwrap(), canonical_json(&map[*k])))
                .collect();
            format!("{{{}}}", inner.join(","))
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(canonical_json).collect();
            format!("[{}]", inner.join(","))
        }
        other => serde_json::to_string(other).unwrap(),
    }
}

pub fn run_job(subcommand: &str, input: &Value) -> JobResult {
    match subcommand {
        "cfrac" => cmd_cfrac(input),
        "mcg_project" => cmd_mcg_project(input),
        "classify_reducible" => cmd_classify_reducible(input),
        "classify_pa" => cmd_classify_pa(input),
        "foliation_validate" => cmd_foliation(input),
        "library" => cmd_library(input),
        "pair" => cmd_pair(input),
        "regionlist" => cmd_regionlist(input),
        "hfhat" => cmd_hfhat(input),
        other => Err(fail(2, format!("unknown job type {other:?}"))),
    }
}

fn get_i64(input: &Value, key: &str) -> Result<i64, JobError> {
    input
        .get(key)
        .and_then(Value::as_i64)
        .ok_or_else(|| fail(2, format!("missing integer field {key:?}")))
}

fn get_vec4(input: &Value, key: &str) -> Result<[i64; 4], JobError> {
    let v = input
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| fail(2, format!("missing array field {key:?}")))?;
    if v.len() != 4 {
        return Err(fail(2, format!("field {key:?} needs exactly four integers")));
    }
    let mut out = [0i64; 4];
    for (i, x) in v.iter().enumerate() {
        out[i] = x.as_i64().ok_or_else(|| fail(2, format!("bad integer in {key:?}")))?;
    }
    Ok(out)
}

fn cmd_cfrac(input: &Value) -> JobResult {
    let p = get_i64(input, "p")?;
    let q = get_i64(input, "q")?;
    let cf = neg_cfrac(p, q)?;
    let path = farey_path(p, q)?;
    let parity = parity_class(&cf);
    Ok(json!({
        "cfrac": cf.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "path": path.steps.iter()
            .map(|s| [s.num.to_string(), s.den.to_string()])
            .collect::<Vec<_>>(),
        "N": path.len_n(),
        "parity": parity.class.to_string(),
    }))
}

pub fn parse_word(spec: &str) -> Result<TwistWord, JobError> {
    let mut letters = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (curve, exp) = part
            .rsplit_once(':')
            .ok_or_else(|| fail(2, format!("bad word letter {part:?}, want curve:exponent")))?;
        let exp: i64 = exp
            .trim()
            .parse()
            .map_err(|_| fail(2, format!("bad exponent in {part:?}")))?;
        let curve = match curve.trim() {
            "a1" => WordCurve::A1,
            "a2" => WordCurve::A2,
            "a3" => WordCurve::A3,
            "a4" => WordCurve::A4,
            "b" => WordCurve::B,
            "c" => WordCurve::C,
            "d" => WordCurve::D,
            "e" => WordCurve::E,
            s if s.starts_with("slope(") && s.ends_with(')') => {
                let body = &s[6..s.len() - 1];
                let (num, den) = match body.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (body, "1"),
                };
                let num: i64 = num.trim().parse().map_err(|_| fail(2, "bad slope numerator"))?;
                let den: i64 = den.trim().parse().map_err(|_| fail(2, "bad slope denominator"))?;
                WordCurve::SlopeCurve(
                    lantern_core::farey::Slope::new(num, den).map_err(JobError::from)?,
                )
            }
            other => return Err(fail(2, format!("unknown curve {other:?}"))),
        };
        letters.push((curve, exp));
    }
    TwistWord::new(letters).map_err(JobError::from)
}

fn cmd_mcg_project(input: &Value) -> JobResult {
    let word = input
        .get("word")
        .and_then(Value::as_str)
        .ok_or_else(|| fail(2, "missing word"))?;
    let w = parse_word(word)?;
    let m = project_word(&w);
    let e = m.entries();
    Ok(json!({
        "matrix": [[e[0].to_string(), e[1].to_string()], [e[2].to_string(), e[3].to_string()]],
        "pure_subgroup": lantern_core::mcg::in_pure_subgroup(&m),
    }))
}

fn verdict_json(v: &lantern_core::classify::Verdict) -> Value {
    json!({
        "verdict": v.tag.to_string(),
        "witness": v.witness,
        "invariant_nonvanishing": v.invariant_nonvanishing,
    })
}

fn cmd_classify_reducible(input: &Value) -> JobResult {
    let n = get_vec4(input, "n")?;
    let ngamma = get_i64(input, "ngamma")?;
    let v = classify_reducible(&ReducibleNormalForm::with_curve_b(n, ngamma));
    Ok(verdict_json(&v))
}

fn cmd_classify_pa(input: &Value) -> JobResult {
    let m = get_vec4(input, "matrix")?;
    let fdtc = get_vec4(input, "fdtc")?;
    let matrix = Psl2zMatrix::from_i64(m)?;
    if !lantern_core::mcg::in_pure_subgroup(&matrix) {
        return Err(fail(2, "matrix is not in the pure subgroup"));
    }
    let normalized = match normalize_conjugacy(&matrix)? {
        Normalized::Form { matrix, .. } => matrix,
        Normalized::Excluded => {
            return Err(fail(
                3,
                "matrix presents a power of a single positive twist; classify it as reducible",
            ))
        }
    };
    let v = classify_pa(&normalized, fdtc)?;
    let e = normalized.entries();
    Ok(json!({
        "verdict": v.tag.to_string(),
        "witness": v.witness,
        "invariant_nonvanishing": v.invariant_nonvanishing,
        "normalized_matrix": [e[0].to_string(), e[1].to_string(), e[2].to_string(), e[3].to_string()],
    }))
}

fn cmd_foliation(input: &Value) -> JobResult {
    let data: FoliationData = serde_json::from_value(input.clone())
        .map_err(|e| fail(2, format!("bad foliation data: {e}")))?;
    let report = is_transverse_ot_disk(&data)?;
    Ok(serde_json::to_value(report).unwrap())
}

fn cmd_library(input: &Value) -> JobResult {
    let n = get_i64(input, "n")?;
    let m = get_i64(input, "m")?;
    let framing = FramingClass::parse(
        input.get("framing").and_then(Value::as_str).unwrap_or("I_III"),
    )?;
    let flavor = match input.get("flavor").and_then(Value::as_str).unwrap_or("A") {
        "A" | "a" => Flavor::TypeA,
        "D" | "d" => Flavor::TypeD,
        other => return Err(fail(2, format!("unknown flavor {other:?}"))),
    };
    if n < 1 || m < 1 {
        return Err(fail(2, "library parameters must be at least 1"));
    }
    let g = library_graph(LibrarySpec { n: n as usize, m: m as usize, framing, flavor })?;
    Ok(match g {
        LibraryGraph::A(a) => serde_json::to_value(type_a_to_json(&a)).unwrap(),
        LibraryGraph::D(d) => serde_json::to_value(type_d_to_json(&d)).unwrap(),
    })
}

fn cmd_pair(input: &Value) -> JobResult {
    let n = get_vec4(input, "n")?;
    let nb = get_i64(input, "nb")?;
    let spec = PairingSpec::new(n, nb)?;
    let (report, asm) = homology_report(&spec)?;
    let witness = vanishing_witness(&spec)?;
    Ok(json!({
        "generators": asm.complex.len(),
        "dims": report.dims,
        "total_dim": report.total_dim,
        "contact_vanishes": report.distinguished_is_boundary,
        "witness": witness.map(|w| json!({
            "chain": w.chain,
            "single_generator_primitives": w.single_generator_primitives,
        })),
    }))
}

fn cmd_regionlist(input: &Value) -> JobResult {
    let m = get_vec4(input, "matrix")?;
    let rl = region_list(m[0], m[1], m[2], m[3])?;
    Ok(serde_json::to_value(rl.regions).unwrap())
}

fn cmd_hfhat(input: &Value) -> JobResult {
    let rl: RegionList = if let Some(m) = input.get("matrix") {
        let m = get_vec4(&json!({ "matrix": m }), "matrix")?;
        region_list(m[0], m[1], m[2], m[3])?
    } else if let Some(regions) = input.get("regions") {
        let regions: Vec<Vec<u32>> = serde_json::from_value(regions.clone())
            .map_err(|e| fail(2, format!("bad region list: {e}")))?;
        if regions.is_empty() {
            return Err(fail(2, "empty region list"));
        }
        // raw interchange lists carry no generator parameters
        let last = regions.iter().flatten().copied().max().unwrap_or(0) as i64;
        RegionList {
            matrix: [0, 0, 0, 0],
            derived: lantern_core::heegaard::DerivedParams { a: 0, b: 0, n: 0, last },
            regions,
        }
    } else {
        return Err(fail(2, "need either matrix or regions"));
    };
    let d = build_diagram(&rl)?;
    let (nice, stats) = niceify(d)?;
    let inv = hf_invariants(&nice)?;
    Ok(json!({
        "generators": inv.generators,
        "dims": inv.dims,
        "total_dim": inv.total_dim,
        "contact_vanishes": inv.contact_vanishes,
        "chi": inv.chi,
        "h1": inv.h1,
        "finger_moves": stats.finger_moves,
        "new_points": stats.new_points,
    }))
}

/// The append-only result ledger.
pub struct Ledger {
    path: Option<std::path::PathBuf>,
    seen: std::collections::HashMap<String, Value>,
}

impl Ledger {
    /// Opens the ledger in the configured cache directory; without the
    /// environment variable the ledger is disabled.
    pub fn open() -> Ledger {
        let Some(dir) = std::env::var_os("LANTERN_CACHE_DIR") else {
            return Ledger { path: None, seen: Default::default() };
        };
        let dir = std::path::PathBuf::from(dir);
        let _ = std::fs::create_dir_all(&dir);
        let path = dir.join("ledger.jsonl");
        let mut seen = std::collections::HashMap::new();
        if let Ok(text) = std::fs::read_to_string(&path) {
            for line in text.lines() {
                if let Ok(Value::Object(map)) = serde_json::from_str::<Value>(line) {
                    if let (Some(Value::String(h)), Some(out)) = (map.get("hash"), map.get("output"))
                    {
                        seen.insert(h.clone(), out.clone());
                    }
                }
            }
        }
        Ledger { path: Some(path), seen }
    }

    pub fn lookup(&self, hash: &str) -> Option<&Value> {
        self.seen.get(hash)
    }

    pub fn record(
        &mut self,
        hash: &str,
        subcommand: &str,
        input: &Value,
        output: &Value,
        wall_ms: u128,
    ) {
        if self.seen.contains_key(hash) {
            return;
        }
        self.seen.insert(hash.to_string(), output.clone());
        let Some(path) = &self.path else { return };
        let record = json!({
            "hash": hash,
            "subcommand": subcommand,
            "input": input,
            "output": output,
            "engine_version": ENGINE_VERSION,
            "wall_ms": wall_ms,
        });
        if let Ok(mut f) = std::fs::OpenOptions::new().create(true).append(true).open(path) {
            let _ = writeln!(f, "{record}");
        }
    }
}

/// Runs a job through the ledger: cached outputs are returned verbatim.
pub fn run_cached(ledger: &mut Ledger, subcommand: &str, input: &Value) -> JobResult {
    let hash = job_hash(subcommand, input);
    if let Some(hit) = ledger.lookup(&hash) {
        return Ok(hit.clone());
    }
    let start = std::time::Instant::now();
    let out = run_job(subcommand, input)?;
    ledger.record(&hash, subcommand, input, &out, start.elapsed().as_millis());
    Ok(out)
}
