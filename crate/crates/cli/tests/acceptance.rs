//! Acceptance gate. Runs without the libtest harness so that every criterion
//! prints its own PASS or FAIL line, and exits non-zero if any fails.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use legcap_core::bounds::width_report;
use legcap_core::capacity::{
    capacity, capacity_in, capacity_oracle, capacity_spectrum, fundamental_cocycle_in, Cochains, MarkedPoint,
};
use legcap_core::dga::{build_dga, Dga};
use legcap_core::front::{parse_front, scale_heights, PlatFront};
use legcap_core::linearize::{enumerate_augmentations, DEFAULT_MAX_DEG0};
use legcap_core::oracle::{brute_force_disk_oracle, DEFAULT_MAX_CROSSINGS};
use legcap_core::rational::{parse_rational, Q};
use legcap_core::sample::{random_front, SampleOptions};
use legcap_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const UNKNOT_BUDGET: Duration = Duration::from_secs(1);
const TREFOIL_BUDGET: Duration = Duration::from_secs(5);
const STRUCTURE_BUDGET: Duration = Duration::from_secs(60);
const LN2_RENDERED: &str = "0.693147180560";
/// One ulp at the twelfth significant digit of ln 2.
const LN2_TOLERANCE: f64 = 1e-12;
const RANDOM_CROSSINGS: usize = 10;
const ORACLE_MAX_DEG0: usize = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus_file(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

fn load(path: &Path) -> PlatFront {
    parse_front(&std::fs::read_to_string(path).expect("corpus file")).expect("corpus front parses")
}

fn q(s: &str) -> Q {
    parse_rational(s).unwrap()
}

fn legcap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legcap")).args(args).output().expect("legcap runs")
}

fn json_of(out: &Output) -> Result<Value, String> {
    if !out.status.success() {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim()));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))
}

/// The corpus fronts that are expected to build, by manifest order.
fn corpus_fronts() -> Vec<PlatFront> {
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(corpus_file("manifest.json")).unwrap()).unwrap();
    manifest["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["expect"] == "ok")
        .map(|e| load(&corpus_file(e["file"].as_str().unwrap())))
        .collect()
}

fn random_fronts(seed: u64, count: usize, geometric: bool) -> Vec<PlatFront> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = SampleOptions { max_crossings: RANDOM_CROSSINGS, geometric, ..Default::default() };
    (0..count).map(|_| random_front(&mut rng, &opts)).collect()
}

/// Runs `width --format json` and checks `exact` against `want`.
fn cli_exact(path: &Path, want: &Q, budget: Duration) -> Result<Duration, String> {
    let start = Instant::now();
    let out = legcap(&["--format", "json", "width", path.to_str().unwrap()]);
    let took = start.elapsed();
    let doc = json_of(&out)?;
    let exact = doc["width"]["exact"].as_str().ok_or_else(|| format!("{}: no exact width", path.display()))?;
    if parse_rational(exact).map_err(|e| e.to_string())? != *want {
        return Err(format!("{}: exact {exact}, want {want}", path.display()));
    }
    if took > budget {
        return Err(format!("{}: took {took:?}", path.display()));
    }
    Ok(took)
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (file, r) in [("unknot-r1.json", "1"), ("unknot-r2.json", "2"), ("unknot-r7_3.json", "7/3")] {
        slowest = slowest.max(cli_exact(&corpus_file(file), &(q(r) * q("2")), UNKNOT_BUDGET)?);
    }
    Ok(format!("exact = 2r for r in 1, 2, 7/3; slowest {slowest:?}"))
}

fn criterion_2() -> Outcome {
    let trefoil = load(&corpus_file("trefoil.json"));
    let dir = std::env::temp_dir().join(format!("legcap-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut slowest = Duration::ZERO;
    let mut result = Ok(());
    for r in ["1", "2", "7/3"] {
        let scaled = scale_heights(&trefoil, &q(r)).map_err(|e| e.to_string())?;
        let path = dir.join(format!("trefoil-{}.json", r.replace('/', "_")));
        std::fs::write(&path, scaled.to_json()).map_err(|e| e.to_string())?;
        match cli_exact(&path, &(q(r) * q("2")), TREFOIL_BUDGET) {
            Ok(t) => slowest = slowest.max(t),
            Err(e) => {
                result = Err(e);
                break;
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    result.map(|()| format!("exact = 2r for r in 1, 2, 7/3; slowest {slowest:?}"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let cases = [
        ("unknot-r1.json", "1", 1),
        ("unknot-r2.json", "2", 1),
        ("unknot-r7_3.json", "7/3", 1),
        ("trefoil.json", "1", 5),
    ];
    for (file, r, count) in cases {
        let dga = build_dga(&load(&corpus_file(file))).map_err(|e| e.to_string())?;
        let spectrum = capacity_spectrum(&dga, DEFAULT_MAX_DEG0, MarkedPoint { arc: 0 }).map_err(|e| e.to_string())?;
        let exhaustive = enumerate_augmentations(&dga, DEFAULT_MAX_DEG0).map_err(|e| e.to_string())?;
        if spectrum.entries.len() != count || exhaustive.len() != count {
            return Err(format!("{file}: {} augmentations, want {count}", spectrum.entries.len()));
        }
        for (i, e) in spectrum.entries.iter().enumerate() {
            if e.result.value != q(r) {
                return Err(format!("{file} augmentation {i}: capacity {}, want {r}", e.result.value));
            }
            let o = capacity_oracle(&dga, &e.augmentation, &e.cocycle, ORACLE_MAX_DEG0).map_err(|e| e.to_string())?;
            if o.value != e.result.value {
                return Err(format!("{file} augmentation {i}: oracle gives {}", o.value));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (knot, augmentation) pairs equal r and the oracle"))
}

fn criterion_4() -> Outcome {
    let out = legcap(&[
        "--format",
        "json",
        "length",
        corpus_file("unknot-r2.json").to_str().unwrap(),
        corpus_file("unknot.json").to_str().unwrap(),
    ]);
    let doc = json_of(&out)?;
    let bound = &doc["length_bounds"][0];
    let rendered = bound["value"].as_str().unwrap_or_default();
    let symbolic = bound["symbolic"].as_str().unwrap_or_default();
    let value: f64 = rendered.parse().map_err(|_| format!("unparseable value {rendered:?}"))?;
    if (value - std::f64::consts::LN_2).abs() > LN2_TOLERANCE {
        return Err(format!("value {rendered} is not ln 2"));
    }
    if rendered != LN2_RENDERED {
        return Err(format!("rendered {rendered}, want {LN2_RENDERED}"));
    }
    if symbolic != "ln(2)" {
        return Err(format!("symbolic {symbolic:?}, want \"ln(2)\""));
    }
    Ok(format!("{rendered} = {symbolic}"))
}

fn structural(dga: &Dga) -> Result<(), Error> {
    dga.check_d_squared()?;
    dga.check_degree()?;
    dga.check_filtration()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let fronts: Vec<PlatFront> = corpus_fronts().into_iter().chain(random_fronts(5, 200, false)).collect();
    let mut chords = 0;
    for (i, front) in fronts.iter().enumerate() {
        let dga = build_dga(front).map_err(|e| format!("front {i} ({}): {e}", front.name))?;
        structural(&dga).map_err(|e| format!("front {i} ({}): {e}", front.name))?;
        chords += dga.len();
    }
    match build_dga(&load(&corpus_file("bad-heights.json"))) {
        Err(Error::Filtration(_)) => {}
        other => return Err(format!("bad-heights should violate the filtration, got {other:?}")),
    }
    let took = start.elapsed();
    if took > STRUCTURE_BUDGET {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{} fronts, {chords} chords, no failures, {took:?}", fronts.len()))
}

fn criterion_6() -> Outcome {
    let fronts: Vec<PlatFront> = corpus_fronts().into_iter().chain(random_fronts(6, 100, false)).collect();
    let mut disks = 0;
    for (i, front) in fronts.iter().enumerate() {
        let dga = build_dga(front).map_err(|e| e.to_string())?;
        let found = brute_force_disk_oracle(&dga.diagram, DEFAULT_MAX_CROSSINGS).map_err(|e| e.to_string())?;
        if found != dga.disks {
            return Err(format!("front {i} ({}): disk records differ", front.name));
        }
        disks += found.iter().map(Vec::len).sum::<usize>();
    }
    Ok(format!("{} fronts, {disks} disks, zero mismatches", fronts.len()))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for front in corpus_fronts() {
        let dga = build_dga(&front).map_err(|e| e.to_string())?;
        for (i, aug) in enumerate_augmentations(&dga, DEFAULT_MAX_DEG0).map_err(|e| e.to_string())?.iter().enumerate() {
            let cochains = Cochains::new(&dga, aug).map_err(|e| e.to_string())?;
            let mut first = None;
            for arc in 0..dga.diagram.arc_count {
                let x = fundamental_cocycle_in(&dga, &cochains, aug, MarkedPoint { arc })
                    .map_err(|e| format!("{} augmentation {i} arc {arc}: {e}", front.name))?;
                if x.coefficients.is_zero() || !cochains.differential_of(&x.coefficients).is_zero() {
                    return Err(format!("{} augmentation {i} arc {arc}: zero or not closed", front.name));
                }
                let x0 = first.get_or_insert_with(|| x.coefficients.clone());
                if !cochains.cohomologous(x0, &x.coefficients) {
                    return Err(format!("{} augmentation {i}: arc {arc} gives another class", front.name));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (knot, augmentation, arc) triples"))
}

fn capacity_properties(front: &PlatFront) -> Result<usize, String> {
    let dga = build_dga(front).map_err(|e| e.to_string())?;
    let augs = enumerate_augmentations(&dga, DEFAULT_MAX_DEG0).map_err(|e| e.to_string())?;
    for (i, aug) in augs.iter().enumerate() {
        let at = |what: &str| format!("{} augmentation {i}: {what}", front.name);
        let cochains = Cochains::new(&dga, aug).map_err(|e| e.to_string())?;
        let x0 = fundamental_cocycle_in(&dga, &cochains, aug, MarkedPoint { arc: 0 }).map_err(|e| at(&e.to_string()))?;
        let c = capacity_in(&cochains, &x0).map_err(|e| at(&e.to_string()))?;
        if !dga.chords.iter().any(|ch| ch.height == c.value) {
            return Err(at("capacity is not a chord height"));
        }
        let mut heights = cochains.heights.clone();
        heights.sort();
        heights.dedup();
        let feasible: Vec<bool> = heights.iter().map(|w| cochains.feasible(&x0.coefficients, w).is_some()).collect();
        if feasible.windows(2).any(|p| !p[0] && p[1]) {
            return Err(at("feasibility is not monotone"));
        }
        let o = capacity_oracle(&dga, aug, &x0, ORACLE_MAX_DEG0).map_err(|e| at(&e.to_string()))?;
        if o.value != c.value {
            return Err(at("capacity differs from the oracle"));
        }
        for t in ["1/2", "1", "3"] {
            let scaled = build_dga(&scale_heights(front, &q(t)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let xs = fundamental_cocycle_in(&scaled, &Cochains::new(&scaled, aug).map_err(|e| e.to_string())?, aug, MarkedPoint { arc: 0 })
                .map_err(|e| at(&e.to_string()))?;
            let cs = capacity(&scaled, aug, &xs).map_err(|e| at(&e.to_string()))?;
            if cs.value != &c.value * q(t) {
                return Err(at(&format!("capacity does not scale by {t}")));
            }
        }
    }
    Ok(augs.len())
}

fn criterion_8() -> Outcome {
    let fronts: Vec<PlatFront> = corpus_fronts().into_iter().chain(random_fronts(8, 150, false)).collect();
    let mut instances = 0;
    for front in &fronts {
        instances += capacity_properties(front)?;
    }
    if instances == 0 {
        return Err("no augmented instances".into());
    }
    Ok(format!("{instances} augmented instances over {} fronts", fronts.len()))
}

fn criterion_9() -> Outcome {
    let fronts: Vec<PlatFront> = corpus_fronts().into_iter().chain(random_fronts(9, 200, true)).collect();
    let mut compared = 0;
    for front in &fronts {
        let report = width_report(front, DEFAULT_MAX_DEG0).map_err(|e| format!("{}: {e}", front.name))?;
        if let (Some(lower), Some(upper)) = (&report.lower, report.upper_min_aug()) {
            if *lower > upper {
                return Err(format!("{}: lower {lower} > upper {upper}", front.name));
            }
            compared += 1;
        }
    }
    let gap = width_report(&load(&corpus_file("gap-example.json")), DEFAULT_MAX_DEG0).map_err(|e| e.to_string())?;
    match (&gap.lower, gap.upper_min_aug(), &gap.exact) {
        (Some(lower), Some(upper), None) if *lower < upper => {
            Ok(format!("{compared} reports ordered; gap example {lower} < {upper}, exact absent"))
        }
        other => Err(format!("gap example is not strict: {other:?}")),
    }
}

fn criterion_10() -> Outcome {
    let dir = corpus_dir();
    let run = || legcap(&["--format", "json", "corpus-verify", "--dir", dir.to_str().unwrap()]);
    let (a, b) = (run(), run());
    json_of(&a)?;
    if a.stdout != b.stdout {
        return Err("outputs differ".into());
    }
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("unknot width", criterion_1),
        ("trefoil width", criterion_2),
        ("capacity spectrum", criterion_3),
        ("length bound", criterion_4),
        ("DGA structure suite", criterion_5),
        ("disk oracle equivalence", criterion_6),
        ("fundamental-class suite", criterion_7),
        ("capacity properties", criterion_8),
        ("bound order", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
