use std::io::Write;
use std::path::Path;

use legcap_core::bounds::{length_from_reports, width_at_level, width_report_from, Level, Scaled, WidthReport};
use legcap_core::capacity::{
    capacity_json, capacity_oracle, capacity_spectrum, fundamental_cocycle_in, Cochains, MarkedPoint, Spectrum,
    DEFAULT_ORACLE_MAX_DEG0,
};
use legcap_core::dga::{build_dga, Dga};
use legcap_core::front::{parse_front, PlatFront};
use legcap_core::linearize::{enumerate_augmentations, homology, lch_json, linearized_complex, Augmentation};
use legcap_core::oracle::brute_force_disk_oracle;
use legcap_core::rational::{format_rational, format_sig12};
use legcap_core::Error;
use serde_json::Value;

use crate::{AugSelect, Caps, Failure, Format};

pub fn load(path: &Path) -> Result<PlatFront, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_front(&text)?)
}

/// Ignores write errors so that piping into `head` does not panic.
pub fn print_json(doc: &Value) {
    let text = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_table(rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for row in rows {
        let line: Vec<String> =
            row.iter().enumerate().map(|(c, s)| format!("{s}{}", " ".repeat(widths[c] - s.chars().count()))).collect();
        println!("{}", line.join("  ").trim_end());
    }
}

fn vector(v: &[u8]) -> String {
    format!("({})", v.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
}

/// Rows selected by the flags: all, one, or by default the first.
fn selected(select: &AugSelect, count: usize) -> Result<Vec<usize>, Failure> {
    match (select.all_augmentations, select.augmentation) {
        (_, Some(n)) if n >= count => {
            Err(Failure::Usage(format!("augmentation {n} does not exist ({count} found)")))
        }
        (_, Some(n)) => Ok(vec![n]),
        (true, None) => Ok((0..count).collect()),
        (false, None) => Ok((0..count.min(1)).collect()),
    }
}

pub fn dga(path: &Path, disks: bool, oracle: bool, caps: Caps) -> Result<(), Failure> {
    let front = load(path)?;
    let dga = build_dga(&front)?;
    let verdict = if oracle {
        let found = brute_force_disk_oracle(&dga.diagram, caps.max_crossings)?;
        if let Some(a) = (0..dga.len()).find(|&a| found[a] != dga.disks[a]) {
            return Err(Failure::Mismatch(format!(
                "{}: sweep found {} disks at {}, oracle {}",
                front.name,
                dga.disks[a].len(),
                dga.chords[a].id,
                found[a].len()
            )));
        }
        Some("agree")
    } else {
        None
    };
    match caps.format {
        Format::Json => {
            let mut doc = dga.to_json(disks);
            if let Some(v) = verdict {
                doc["oracle"] = Value::from(v);
            }
            print_json(&doc);
        }
        Format::Table => {
            println!("{}: {} chords", dga.name, dga.len());
            let mut rows = vec![vec!["chord".into(), "kind".into(), "degree".into(), "height".into()]];
            for c in &dga.chords {
                let kind = serde_json::to_value(c.kind).expect("kinds serialize");
                rows.push(vec![
                    c.id.clone(),
                    kind.as_str().unwrap_or_default().to_string(),
                    c.grading.to_string(),
                    format_rational(&c.height),
                ]);
            }
            print_table(&rows);
            println!();
            for a in 0..dga.len() {
                println!("∂{} = {}", dga.chords[a].id, dga.show_differential(a));
            }
            if disks {
                println!();
                for d in dga.disks.iter().flatten() {
                    let arcs: Vec<String> = d.boundary_arcs.iter().map(|(a, m)| format!("{a}×{m}")).collect();
                    println!(
                        "disk at {}: word [{}], arcs {}",
                        dga.chords[d.positive].id,
                        dga.word_ids(&d.negatives).join(" "),
                        arcs.join(" ")
                    );
                }
            }
            println!("checks: ∂² = 0, degree -1, action filtration");
            if let Some(v) = verdict {
                println!("disk oracle: {v}");
            }
        }
    }
    Ok(())
}

pub fn augmentations(path: &Path, caps: Caps) -> Result<(), Failure> {
    let front = load(path)?;
    let dga = build_dga(&front)?;
    let augs = enumerate_augmentations(&dga, caps.max_deg0)?;
    let rows: Vec<(usize, &Augmentation)> = augs.iter().enumerate().collect();
    match caps.format {
        Format::Json => print_json(&lch_json(&dga, &rows, None)),
        Format::Table => {
            let ids: Vec<&str> =
                dga.chords.iter().filter(|c| c.grading == 0).map(|c| c.id.as_str()).collect();
            println!("{}: {} augmentations over ({})", dga.name, augs.len(), ids.join(","));
            for (i, a) in rows {
                println!("{i}  {}", vector(&a.degree0_vector(&dga)));
            }
        }
    }
    Ok(())
}

pub fn lch(path: &Path, select: &AugSelect, caps: Caps) -> Result<(), Failure> {
    let front = load(path)?;
    let dga = build_dga(&front)?;
    let augs = enumerate_augmentations(&dga, caps.max_deg0)?;
    if augs.is_empty() {
        return Err(Error::NoAugmentation.into());
    }
    let picked = if select.all_augmentations || select.augmentation.is_some() {
        selected(select, augs.len())?
    } else {
        (0..augs.len()).collect()
    };
    let rows: Vec<(usize, &Augmentation)> = picked.iter().map(|&i| (i, &augs[i])).collect();
    let homologies = rows
        .iter()
        .map(|(_, a)| Ok(homology(&linearized_complex(&dga, a)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    match caps.format {
        Format::Json => print_json(&lch_json(&dga, &rows, Some(&homologies))),
        Format::Table => {
            println!("{}: linearized homology", dga.name);
            let mut table = vec![vec!["aug".to_string(), "ε".into(), "betti".into()]];
            for ((i, a), h) in rows.iter().zip(&homologies) {
                let betti: Vec<String> = h.degrees.iter().map(|g| format!("{}:{}", g.degree, g.betti)).collect();
                table.push(vec![i.to_string(), vector(&a.degree0_vector(&dga)), betti.join(" ")]);
            }
            print_table(&table);
        }
    }
    Ok(())
}

/// Recomputes the class at every arc and checks it is cohomologous to the
/// one used for the spectrum, with the same capacity.
fn check_all_arcs(dga: &Dga, spectrum: &Spectrum) -> Result<(), Failure> {
    for (i, e) in spectrum.entries.iter().enumerate() {
        let cochains = Cochains::new(dga, &e.augmentation)?;
        for arc in 0..dga.diagram.arc_count {
            let x = fundamental_cocycle_in(dga, &cochains, &e.augmentation, MarkedPoint { arc })?;
            if !cochains.cohomologous(&x.coefficients, &e.cocycle.coefficients) {
                return Err(Error::NotCocycle(format!(
                    "augmentation {i}: marked arcs {} and {arc} give different classes",
                    e.cocycle.marked_point.arc
                ))
                .into());
            }
        }
    }
    Ok(())
}

pub fn capacity(path: &Path, select: &AugSelect, marked: &str, oracle: bool, caps: Caps) -> Result<(), Failure> {
    let front = load(path)?;
    let dga = build_dga(&front)?;
    let (arc, all_arcs) = match marked {
        "all" => (0, true),
        id => (id.parse().map_err(|_| Failure::Usage(format!("--marked-arc expects an arc id or `all`, got {id:?}")))?, false),
    };
    let spectrum = capacity_spectrum(&dga, caps.max_deg0, MarkedPoint { arc })?;
    if all_arcs {
        check_all_arcs(&dga, &spectrum)?;
    }
    let rows = selected(select, spectrum.entries.len())?;
    if oracle {
        for &i in &rows {
            let e = &spectrum.entries[i];
            let o = capacity_oracle(&dga, &e.augmentation, &e.cocycle, DEFAULT_ORACLE_MAX_DEG0)?;
            if o.value != e.result.value {
                return Err(Failure::Mismatch(format!(
                    "augmentation {i}: capacity {} but oracle {}",
                    format_rational(&e.result.value),
                    format_rational(&o.value)
                )));
            }
        }
    }
    match caps.format {
        Format::Json => {
            let mut doc = capacity_json(&dga, &spectrum, &rows);
            if all_arcs {
                doc["marked_arcs_checked"] = Value::from(dga.diagram.arc_count);
            }
            if oracle {
                doc["oracle"] = Value::from("agree");
            }
            print_json(&doc);
        }
        Format::Table => {
            println!("{}: fundamental capacity, marked arc {arc}", dga.name);
            let mut table = vec![vec!["aug".to_string(), "ε".into(), "capacity".into(), "witness".into()]];
            for &i in &rows {
                let e = &spectrum.entries[i];
                table.push(vec![
                    i.to_string(),
                    vector(&e.augmentation.degree0_vector(&dga)),
                    format_rational(&e.result.value),
                    dga.chords[e.result.witness_chord].id.clone(),
                ]);
            }
            print_table(&table);
            println!(
                "c_min = {}, c_max = {} over {} augmentations",
                format_rational(&spectrum.c_min),
                format_rational(&spectrum.c_max),
                spectrum.entries.len()
            );
            if all_arcs {
                println!("all {} marked arcs give the same class", dga.diagram.arc_count);
            }
            if oracle {
                println!("capacity oracle: agree");
            }
        }
    }
    Ok(())
}

pub fn report_for(front: &PlatFront, caps: Caps) -> Result<WidthReport, Failure> {
    let dga = build_dga(front)?;
    let spectrum = capacity_spectrum(&dga, caps.max_deg0, MarkedPoint { arc: 0 });
    Ok(width_report_from(front, &dga, spectrum)?)
}

fn show(v: Option<Scaled>, missing: &str) -> String {
    match v {
        None => missing.to_string(),
        Some(s) if s.exact().is_some() => s.render(),
        Some(s) => format!("{}  ({})", s.render(), s.symbolic()),
    }
}

pub fn width(path: &Path, level: Option<&str>, collared: bool, caps: Caps) -> Result<(), Failure> {
    let front = load(path)?;
    let base = report_for(&front, caps)?;
    let report = match level {
        Some(b) => width_at_level(&base, &Level::parse(b)?),
        None => base,
    };
    match caps.format {
        Format::Json => print_json(&report.to_json(collared)),
        Format::Table => {
            println!("{}: relative width of the cylinder below level {}", report.name, report.level);
            let at = |q: Option<legcap_core::rational::Q>| q.map(|q| report.level.apply(&q));
            let lower_note = report.lower_chord.as_ref().map_or(String::new(), |c| format!("  [chord {c}]"));
            let rows = vec![
                vec!["lower".to_string(), format!("{}{lower_note}", show(report.lower_at_level(), "none"))],
                vec!["upper (c_min)".into(), show(at(report.upper_min_aug()), "unavailable")],
                vec!["upper (c_max)".into(), show(at(report.upper_max_aug()), "unavailable")],
                vec!["exact".into(), show(report.exact_at_level(), "-")],
                vec!["top half".into(), "infinite".into()],
            ];
            print_table(&rows);
            if collared {
                println!("collared top: width at least {}", show(report.lower_at_level(), "none"));
            }
            for p in &report.provenance {
                println!("  {p}");
            }
        }
    }
    match &report.unavailable {
        Some(why) => Err(Error::Unavailable(format!("upper bound: {why}")).into()),
        None => Ok(()),
    }
}

pub fn length(minus: &Path, plus: &Path, caps: Caps) -> Result<(), Failure> {
    let minus = report_for(&load(minus)?, caps)?;
    let plus = report_for(&load(plus)?, caps)?;
    let bound = length_from_reports(&minus, &plus)?;
    match caps.format {
        Format::Json => {
            let mut doc = minus.to_json(false);
            doc["name"] = Value::from(format!("{} -> {}", bound.minus, bound.plus));
            doc["length_bounds"] = Value::Array(vec![bound.to_json()]);
            if let Value::Array(p) = &mut doc["provenance"] {
                p.extend(bound.provenance.iter().map(|s| Value::from(s.as_str())));
            }
            print_json(&doc);
        }
        Format::Table => {
            println!("length of a fundamental cobordism from {} to {}", bound.minus, bound.plus);
            println!(
                "  ≥ {} = {}   (w_- ≥ {}, c̄_+ = {})",
                bound.symbolic,
                if bound.clamped() { "0".to_string() } else { format_sig12(bound.value) },
                format_rational(&bound.w_minus_lower),
                format_rational(&bound.c_max_plus)
            );
            for p in &bound.provenance {
                println!("  {p}");
            }
        }
    }
    Ok(())
}
