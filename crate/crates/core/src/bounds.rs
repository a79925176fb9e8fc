//! Width and length bounds assembled from chord data and capacities.
//!
//! Widths are kept at level zero together with a symbolic level `b`; the
//! reported numbers are the level-zero values times `e^b`.

use std::fmt;
use std::ops::Add;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::capacity::{capacity_spectrum, MarkedPoint, Spectrum};
use crate::dga::{build_dga, Dga};
use crate::error::{Error, Result};
use crate::front::{chord_extendability, Extendability, PlatFront};
use crate::rational::{format_rational, format_sig12, ln_rational, parse_rational, to_f64, Q};

pub const REPORT_SCHEMA: &str = "legcap-report/1";

/// A level `b = lin + ln(log)`, with `log` a positive rational, so that
/// `e^b = e^lin · log` and sums of levels stay exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub lin: Q,
    pub log: Q,
}

impl Default for Level {
    fn default() -> Self {
        Self { lin: Q::zero(), log: Q::one() }
    }
}

impl Add for &Level {
    type Output = Level;
    fn add(self, other: &Level) -> Level {
        Level { lin: &self.lin + &other.lin, log: &self.log * &other.log }
    }
}

impl Level {
    /// Accepts a rational (`-1`, `0.5`, `7/3`), `ln(q)`, `-ln(q)`, or a sum
    /// `x + ln(q)`.
    pub fn parse(text: &str) -> Result<Level> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Schema(format!("not a level: {text:?} (expected a rational, ln(q) or x+ln(q))"));
        let log_term = |t: &str| -> Result<Option<Q>> {
            let (negate, body) = match t.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let Some(inner) = body.strip_prefix("ln(").and_then(|r| r.strip_suffix(')')) else { return Ok(None) };
            let q = parse_rational(inner)?;
            if !q.is_positive() {
                return Err(Error::Schema(format!("logarithm of a non-positive number in {text:?}")));
            }
            Ok(Some(if negate { q.recip() } else { q }))
        };
        if let Some(log) = log_term(&s)? {
            return Ok(Level { lin: Q::zero(), log });
        }
        let split = s.char_indices().skip(1).find(|&(i, c)| (c == '+' || c == '-') && s[i + 1..].starts_with("ln("));
        if let Some((i, _)) = split {
            let lin = parse_rational(&s[..i]).map_err(|_| bad())?;
            let log = log_term(&s[i..])?.ok_or_else(bad)?;
            return Ok(Level { lin, log });
        }
        Ok(Level { lin: parse_rational(&s).map_err(|_| bad())?, log: Q::one() })
    }

    pub fn is_zero(&self) -> bool {
        self.lin.is_zero() && self.log.is_one()
    }

    /// `x · e^b`, exact when the level has no rational part.
    pub fn apply(&self, x: &Q) -> Scaled {
        Scaled { base: x * &self.log, exp: self.lin.clone() }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lin.is_zero(), self.log.is_one()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", format_rational(&self.lin)),
            (true, false) => write!(f, "ln({})", format_rational(&self.log)),
            (false, false) => write!(f, "{} + ln({})", format_rational(&self.lin), format_rational(&self.log)),
        }
    }
}

/// `base · e^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaled {
    pub base: Q,
    pub exp: Q,
}

impl Scaled {
    pub fn exact(&self) -> Option<&Q> {
        self.exp.is_zero().then_some(&self.base)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.base) * to_f64(&self.exp).exp()
    }

    /// Exact rational when possible, otherwise 12 significant digits.
    pub fn render(&self) -> String {
        match self.exact() {
            Some(q) => format_rational(q),
            None => format_sig12(self.to_f64()),
        }
    }

    pub fn symbolic(&self) -> String {
        match self.exact() {
            Some(q) => format_rational(q),
            None => format!("{}·e^({})", format_rational(&self.base), format_rational(&self.exp)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordLine {
    pub id: String,
    pub height: Q,
    /// `None` when neither geometry nor an assertion is available.
    pub extendability: Option<Extendability>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub name: String,
    pub level: Level,
    pub chords: Vec<ChordLine>,
    /// Twice the tallest doubly extendable chord, at level zero.
    pub lower: Option<Q>,
    pub lower_chord: Option<String>,
    pub c_min: Option<Q>,
    pub c_max: Option<Q>,
    pub augmentations: usize,
    pub exact: Option<Q>,
    /// Why the capacity side is missing.
    pub unavailable: Option<String>,
    pub provenance: Vec<String>,
}

impl WidthReport {
    pub fn upper_min_aug(&self) -> Option<Q> {
        self.c_min.as_ref().map(|c| c * Q::from_integer(2.into()))
    }

    pub fn upper_max_aug(&self) -> Option<Q> {
        self.c_max.as_ref().map(|c| c * Q::from_integer(2.into()))
    }

    pub fn lower_at_level(&self) -> Option<Scaled> {
        self.lower.as_ref().map(|q| self.level.apply(q))
    }

    pub fn upper_at_level(&self) -> Option<Scaled> {
        self.upper_min_aug().map(|q| self.level.apply(&q))
    }

    pub fn exact_at_level(&self) -> Option<Scaled> {
        self.exact.as_ref().map(|q| self.level.apply(q))
    }

    /// The `width` block and provenance of a `legcap-report/1` document.
    pub fn to_json(&self, collared: bool) -> Value {
        let show = |v: Option<Q>, missing: &str| v.map_or(json!(missing), |q| json!(self.level.apply(&q).render()));
        let mut width = Map::new();
        width.insert("lower".into(), show(self.lower.clone(), "none"));
        width.insert("upper_min_aug".into(), show(self.upper_min_aug(), "unavailable"));
        width.insert("upper_max_aug".into(), show(self.upper_max_aug(), "unavailable"));
        if let Some(e) = &self.exact {
            width.insert("exact".into(), json!(self.level.apply(e).render()));
        }
        width.insert("top_half".into(), json!("infinite"));
        let chords: Vec<Value> = self
            .chords
            .iter()
            .map(|c| {
                let ext = match c.extendability {
                    None => "unknown",
                    Some(Extendability { down: true, up: true }) => "both",
                    Some(Extendability { down: true, up: false }) => "down",
                    Some(Extendability { down: false, up: true }) => "up",
                    Some(Extendability { down: false, up: false }) => "no",
                };
                json!({"id": c.id, "height": format_rational(&c.height), "extendable": ext})
            })
            .collect();
        let mut doc = json!({
            "schema": REPORT_SCHEMA,
            "name": self.name,
            "level": self.level.to_string(),
            "width": width,
            "chords": chords,
            "capacity": {
                "augmentations": self.augmentations,
                "c_min": self.c_min.as_ref().map_or(json!("unavailable"), |q| json!(format_rational(q))),
                "c_max": self.c_max.as_ref().map_or(json!("unavailable"), |q| json!(format_rational(q))),
            },
            "length_bounds": [],
            "provenance": self.provenance,
        });
        if collared {
            doc["collared_top"] = json!({
                "lower": show(self.lower.clone(), "none"),
                "note": "applies to a cobordism with a cylindrical collar of positive length at the top, as declared by the user",
            });
        }
        doc
    }
}

/// Width bounds for the cylinder over `front`, marking the first arc.
pub fn width_report(front: &PlatFront, max_deg0: usize) -> Result<WidthReport> {
    let dga = build_dga(front)?;
    let spectrum = capacity_spectrum(&dga, max_deg0, MarkedPoint { arc: 0 });
    width_report_from(front, &dga, spectrum)
}

/// As [`width_report`], from a spectrum computed by the caller. Only a
/// missing augmentation is tolerated; other capacity errors propagate.
pub fn width_report_from(front: &PlatFront, dga: &Dga, spectrum: Result<Spectrum>) -> Result<WidthReport> {
    let chords: Vec<ChordLine> = dga
        .chords
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let extendability = match chord_extendability(front, c, i) {
                Ok(e) => Some(e),
                Err(Error::MissingGeometry(_)) => None,
                Err(e) => return Err(e),
            };
            Ok(ChordLine { id: c.id.clone(), height: c.height.clone(), extendability })
        })
        .collect::<Result<_>>()?;
    let two = Q::from_integer(2.into());
    let tallest = chords
        .iter()
        .filter(|c| c.extendability.is_some_and(|e| e.doubly()))
        .max_by(|a, b| a.height.cmp(&b.height));
    let lower = tallest.map(|c| &c.height * &two);
    let lower_chord = tallest.map(|c| c.id.clone());
    let mut provenance = vec![
        "lower: twice the height of the tallest frontwise doubly extendable chord (ball embedded along the chord)".to_string(),
        "upper_min_aug: twice the minimum fundamental capacity, valid for the trivial cylinder whose induced augmentations are all augmentations".into(),
        "upper_max_aug: twice the maximum fundamental capacity, valid for every fundamental cobordism".into(),
        "top_half: the part above any level has infinite relative width".into(),
        "precondition horizontally displaceable: assumed, automatic for Legendrians in the 1-jet space of the line".into(),
        "precondition connected: checked, the front is a single knot".into(),
    ];
    let (c_min, c_max, augmentations, unavailable) = match spectrum {
        Ok(s) => {
            provenance.push(format!("precondition admits an augmentation: checked, {} found", s.entries.len()));
            (Some(s.c_min), Some(s.c_max), s.entries.len(), None)
        }
        Err(Error::NoAugmentation) => {
            provenance.push("precondition admits an augmentation: failed, no augmentation exists".into());
            (None, None, 0, Some("the knot admits no augmentation, so no capacity is defined".to_string()))
        }
        Err(e) => return Err(e),
    };
    let mut report = WidthReport {
        name: front.name.clone(),
        level: Level::default(),
        chords,
        lower,
        lower_chord,
        c_min,
        c_max,
        augmentations,
        exact: None,
        unavailable,
        provenance,
    };
    if let (Some(lo), Some(up)) = (&report.lower, report.upper_min_aug()) {
        if *lo > up {
            return Err(Error::BoundOrder(format!(
                "{}: lower bound {} exceeds upper bound {}",
                report.name,
                format_rational(lo),
                format_rational(&up)
            )));
        }
        if *lo == up {
            report.exact = Some(up);
            report.provenance.push(
                "exact: the longest chord is doubly extendable and the cylinder is a fundamental cobordism, so both bounds meet"
                    .into(),
            );
        }
    }
    Ok(report)
}

/// The same report at level `report.level + b`.
pub fn width_at_level(report: &WidthReport, b: &Level) -> WidthReport {
    let mut out = report.clone();
    out.level = &report.level + b;
    if !b.is_zero() {
        out.provenance.push(format!("level: widths multiplied by e^({}) under the Liouville flow", out.level));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthBound {
    pub minus: String,
    pub plus: String,
    pub w_minus_lower: Q,
    pub c_max_plus: Q,
    /// `w_minus_lower / (2 c_max_plus)`.
    pub ratio: Q,
    /// The logarithm before clamping.
    pub raw: f64,
    pub value: f64,
    /// `ln(p/q)`, or `0` when clamped.
    pub symbolic: String,
    pub provenance: Vec<String>,
}

impl LengthBound {
    pub fn clamped(&self) -> bool {
        self.ratio <= Q::one()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "minus": self.minus,
            "plus": self.plus,
            "w_minus_lower": format_rational(&self.w_minus_lower),
            "c_max_plus": format_rational(&self.c_max_plus),
            "ratio": format_rational(&self.ratio),
            "value": if self.clamped() { "0".to_string() } else { format_sig12(self.value) },
            "symbolic": self.symbolic,
            "raw": format_sig12(self.raw),
            "clamped": self.clamped(),
        })
    }
}

/// `max(0, ln(w₋ / 2c̄₊))` for a fundamental cobordism from `minus` to `plus`.
pub fn length_lower_bound(front_minus: &PlatFront, front_plus: &PlatFront, max_deg0: usize) -> Result<LengthBound> {
    let minus = width_report(front_minus, max_deg0)?;
    let plus = width_report(front_plus, max_deg0)?;
    length_from_reports(&minus, &plus)
}

/// Uses the level-zero values of both reports.
pub fn length_from_reports(minus: &WidthReport, plus: &WidthReport) -> Result<LengthBound> {
    let w = minus.lower.clone().ok_or_else(|| {
        Error::Unavailable(format!("{}: no doubly extendable chord, so no lower width bound", minus.name))
    })?;
    let c = plus.c_max.clone().ok_or_else(|| {
        Error::Unavailable(format!(
            "{}: {}",
            plus.name,
            plus.unavailable.as_deref().unwrap_or("no maximum capacity")
        ))
    })?;
    let ratio = &w / (&c * Q::from_integer(2.into()));
    let raw = ln_rational(&ratio);
    let clamped = ratio <= Q::one();
    let mut provenance = vec![
        "length: logarithm of the lower width of the negative end over twice the maximum capacity of the positive end".to_string(),
        "scope: bounds the length of fundamental cobordisms only; exactness, orientability and vanishing Maslov class are assumed".into(),
    ];
    if clamped {
        provenance.push(format!("clamped: raw value {} replaced by 0", format_sig12(raw)));
    }
    Ok(LengthBound {
        minus: minus.name.clone(),
        plus: plus.name.clone(),
        w_minus_lower: w,
        c_max_plus: c,
        symbolic: if clamped { "0".into() } else { format!("ln({})", format_rational(&ratio)) },
        ratio,
        raw,
        value: if clamped { 0.0 } else { raw },
        provenance,
    })
}
