use std::path::{Path, PathBuf};

use legcap_core::bounds::width_report_from;
use legcap_core::capacity::{
    capacity_oracle, capacity_spectrum, fundamental_cocycle_in, Cochains, MarkedPoint, DEFAULT_ORACLE_MAX_DEG0,
};
use legcap_core::dga::build_dga;
use legcap_core::linearize::{homology, linearized_complex};
use legcap_core::oracle::brute_force_disk_oracle;
use legcap_core::rational::{format_rational, Q};
use legcap_core::Error;
use serde_json::{json, Map, Value};

use crate::commands::{load, print_json};
use crate::{Caps, Failure, Format};

pub const CORPUS_REPORT_SCHEMA: &str = "legcap-corpus-report/1";

fn locate(dir: Option<PathBuf>) -> PathBuf {
    if let Some(d) = dir {
        return d;
    }
    if let Some(d) = std::env::var_os("LEGCAP_CORPUS") {
        return d.into();
    }
    let local = PathBuf::from("corpus");
    if local.join("manifest.json").is_file() {
        return local;
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Named checks for one manifest entry, in the order they ran.
#[derive(Default)]
struct Checks {
    items: Vec<(String, Result<(), String>)>,
}

impl Checks {
    fn record(&mut self, name: &str, outcome: Result<(), String>) {
        self.items.push((name.to_string(), outcome));
    }

    fn expect(&mut self, name: &str, got: String, want: Option<&str>) {
        let outcome = match want {
            Some(w) if w == got => Ok(()),
            Some(w) => Err(format!("got {got}, manifest says {w}")),
            None if got == "none" => Ok(()),
            None => Err(format!("got {got}, manifest says none")),
        };
        self.record(name, outcome);
    }

    fn failed(&self) -> usize {
        self.items.iter().filter(|(_, r)| r.is_err()).count()
    }
}

fn show(q: Option<Q>) -> String {
    q.map_or("none".into(), |q| format_rational(&q))
}

fn run_ok(path: &Path, entry: &Value, caps: Caps, checks: &mut Checks) -> Result<String, Failure> {
    let front = load(path)?;
    let dga = build_dga(&front)?;
    checks.record("dga", Ok(()));

    let found = brute_force_disk_oracle(&dga.diagram, caps.max_crossings)?;
    let bad: Vec<&str> = (0..dga.len()).filter(|&a| found[a] != dga.disks[a]).map(|a| dga.chords[a].id.as_str()).collect();
    checks.record("disk-oracle", if bad.is_empty() { Ok(()) } else { Err(format!("disagree at {}", bad.join(","))) });

    let spectrum = capacity_spectrum(&dga, caps.max_deg0, MarkedPoint { arc: 0 });
    if let Ok(spectrum) = &spectrum {
        let mut lch = Ok(());
        let mut arcs = Ok(());
        let mut oracle = Ok(());
        for (i, e) in spectrum.entries.iter().enumerate() {
            let cx = linearized_complex(&dga, &e.augmentation)?;
            if homology(&cx).betti(1) == 0 && lch.is_ok() {
                lch = Err(format!("augmentation {i} has no degree-1 homology"));
            }
            let cochains = Cochains::new(&dga, &e.augmentation)?;
            for arc in 0..dga.diagram.arc_count {
                let x = fundamental_cocycle_in(&dga, &cochains, &e.augmentation, MarkedPoint { arc })?;
                if !cochains.cohomologous(&x.coefficients, &e.cocycle.coefficients) && arcs.is_ok() {
                    arcs = Err(format!("augmentation {i}: arc {arc} gives another class"));
                }
            }
            let o = capacity_oracle(&dga, &e.augmentation, &e.cocycle, DEFAULT_ORACLE_MAX_DEG0)?;
            if o.value != e.result.value && oracle.is_ok() {
                oracle = Err(format!(
                    "augmentation {i}: {} against oracle {}",
                    format_rational(&e.result.value),
                    format_rational(&o.value)
                ));
            }
        }
        checks.record("lch-degree-1", lch);
        checks.record("marked-arcs", arcs);
        checks.record("capacity-oracle", oracle);
    }

    let count = spectrum.as_ref().map_or(0, |s| s.entries.len());
    let report = width_report_from(&front, &dga, spectrum)?;
    let want = |k: &str| entry.get(k).and_then(Value::as_str);
    let want_count = entry.get("augmentations").and_then(Value::as_u64);
    checks.record(
        "augmentations",
        match want_count {
            Some(w) if w == count as u64 => Ok(()),
            w => Err(format!("found {count}, manifest says {w:?}")),
        },
    );
    checks.expect("c_min", show(report.c_min.clone()), want("c_min"));
    checks.expect("c_max", show(report.c_max.clone()), want("c_max"));
    checks.expect("lower", show(report.lower.clone()), want("lower"));
    checks.expect("upper_min_aug", show(report.upper_min_aug()), want("upper_min_aug"));
    checks.expect("exact", show(report.exact.clone()), want("exact"));
    Ok(front.name)
}

fn run_entry(dir: &Path, entry: &Value, caps: Caps) -> Result<(String, String, Checks), Failure> {
    let file = entry
        .get("file")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::Core(Error::Schema("manifest entry without a file".into())))?;
    let expect = entry.get("expect").and_then(Value::as_str).unwrap_or("ok");
    let path = dir.join(file);
    let mut checks = Checks::default();
    let name = match expect {
        "ok" => run_ok(&path, entry, caps, &mut checks)?,
        "filtration-error" => {
            let front = load(&path)?;
            let outcome = match build_dga(&front) {
                Err(Error::Filtration(_)) => Ok(()),
                Err(e) => Err(format!("rejected for another reason: {e}")),
                Ok(_) => Err("accepted".into()),
            };
            checks.record("filtration-error", outcome);
            front.name
        }
        other => return Err(Error::Schema(format!("{file}: unknown expectation {other:?}")).into()),
    };
    Ok((file.to_string(), name, checks))
}

pub fn verify(dir: Option<PathBuf>, caps: Caps) -> Result<(), Failure> {
    let dir = locate(dir);
    let manifest_path = dir.join("manifest.json");
    let text = std::fs::read_to_string(&manifest_path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", manifest_path.display())))?;
    let manifest: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Schema(format!("manifest: {e}"))))?;
    let entries = manifest
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::Core(Error::Schema("manifest has no entries".into())))?;

    let mut results = Vec::new();
    for entry in entries {
        results.push(run_entry(&dir, entry, caps)?);
    }
    let failed: usize = results.iter().map(|(_, _, c)| c.failed()).sum();
    let total: usize = results.iter().map(|(_, _, c)| c.items.len()).sum();

    match caps.format {
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|(file, name, checks)| {
                    let mut m = Map::new();
                    for (k, r) in &checks.items {
                        m.insert(k.clone(), r.as_ref().map_or_else(|e| json!({ "fail": e }), |_| json!("pass")));
                    }
                    json!({ "file": file, "name": name, "checks": m, "passed": checks.failed() == 0 })
                })
                .collect();
            print_json(&json!({
                "schema": CORPUS_REPORT_SCHEMA,
                "entries": rows,
                "checks": total,
                "failed": failed,
            }));
        }
        Format::Table => {
            for (file, name, checks) in &results {
                let verdict = if checks.failed() == 0 { "ok" } else { "FAIL" };
                println!("{verdict:4}  {file} ({name}): {} checks", checks.items.len());
                for (k, r) in &checks.items {
                    if let Err(e) = r {
                        println!("      {k}: {e}");
                    }
                }
            }
            println!("{} of {total} checks passed", total - failed);
        }
    }
    if failed > 0 {
        return Err(Failure::Mismatch(format!("{failed} corpus checks failed")));
    }
    Ok(())
}
