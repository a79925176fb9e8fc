//! Legendrian fronts in plat position.
//!
//! A front is a left-to-right list of cusp and crossing events acting on
//! horizontal strands counted from the top. Reeb chords are attached to
//! front crossings and right cusps, in event order.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Q};
use crate::strip::{table, Move, Strip, Via};

pub const FRONT_SCHEMA: &str = "legcap-front/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrontEvent {
    /// 1-based slot of the upper strand.
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
}

impl FrontEvent {
    pub fn slot(&self) -> usize {
        match *self {
            FrontEvent::LeftCusp(s) | FrontEvent::RightCusp(s) | FrontEvent::Crossing(s) => s,
        }
    }

    fn to_move(self) -> Move {
        match self {
            FrontEvent::LeftCusp(s) => Move::Open(s - 1),
            FrontEvent::RightCusp(s) => Move::Close(s - 1),
            FrontEvent::Crossing(s) => Move::Swap(s - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Geometric,
    Combinatorial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtendAssertion {
    Up,
    Down,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordGeometry {
    pub x0: Option<Q>,
    pub z_minus: Q,
    pub z_plus: Q,
    /// Sorted ascending.
    pub other_strand_z: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordSpec {
    pub id: String,
    pub height: Option<Q>,
    pub geometry: Option<ChordGeometry>,
    pub assert_extendable: Option<ExtendAssertion>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChordKind {
    FrontCrossing,
    RightCusp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebChord {
    pub id: String,
    pub kind: ChordKind,
    pub grading: i64,
    pub height: Q,
    /// Index of the producing event in the front's event list.
    pub event: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Extendability {
    pub down: bool,
    pub up: bool,
}

impl Extendability {
    pub fn doubly(&self) -> bool {
        self.down || self.up
    }
}

/// A validated plat front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatFront {
    pub name: String,
    pub mode: Mode,
    pub events: Vec<FrontEvent>,
    pub chords: Vec<ChordSpec>,
    /// Maslov potential of every strand segment, `[column][level]`.
    maslov: Vec<Vec<i64>>,
}

// ---- JSON document -------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrontDoc {
    schema: String,
    name: String,
    mode: Mode,
    events: Vec<EventDoc>,
    #[serde(default)]
    chords: Vec<ChordDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventDoc {
    #[serde(rename = "type")]
    kind: String,
    slot: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChordDoc {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    height: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    z_minus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    z_plus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    other_strand_z: Option<Vec<String>>,
    #[serde(default)]
    assert_extendable: Option<ExtendAssertion>,
}

fn opt_rational(field: &Option<String>) -> Result<Option<Q>> {
    field.as_deref().map(parse_rational).transpose()
}

/// Parses and validates a `legcap-front/1` document.
pub fn parse_front(text: &str) -> Result<PlatFront> {
    let doc: FrontDoc =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("malformed front document: {e}")))?;
    if doc.schema != FRONT_SCHEMA {
        return Err(Error::Schema(format!("expected schema {FRONT_SCHEMA:?}, found {:?}", doc.schema)));
    }
    let events = doc
        .events
        .iter()
        .map(|e| {
            if e.slot == 0 {
                return Err(Error::Schema("slots are 1-based".into()));
            }
            match e.kind.as_str() {
                "left_cusp" => Ok(FrontEvent::LeftCusp(e.slot)),
                "right_cusp" => Ok(FrontEvent::RightCusp(e.slot)),
                "crossing" => Ok(FrontEvent::Crossing(e.slot)),
                other => Err(Error::Schema(format!("unknown event type {other:?}"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut chords = Vec::with_capacity(doc.chords.len());
    for c in &doc.chords {
        let height = opt_rational(&c.height)?;
        let z_minus = opt_rational(&c.z_minus)?;
        let z_plus = opt_rational(&c.z_plus)?;
        let geometry = match (z_minus, z_plus) {
            (Some(z_minus), Some(z_plus)) => {
                let mut other_strand_z = c
                    .other_strand_z
                    .iter()
                    .flatten()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                other_strand_z.sort();
                if other_strand_z.iter().any(|z| *z == z_minus || *z == z_plus) {
                    return Err(Error::Schema(format!(
                        "chord {}: another strand passes through a chord endpoint (non-generic front)",
                        c.id
                    )));
                }
                Some(ChordGeometry { x0: opt_rational(&c.x0)?, z_minus, z_plus, other_strand_z })
            }
            (None, None) => {
                if c.other_strand_z.is_some() {
                    return Err(Error::Schema(format!("chord {}: other_strand_z without endpoints", c.id)));
                }
                None
            }
            _ => return Err(Error::Schema(format!("chord {}: z_minus and z_plus come together", c.id))),
        };
        if doc.mode == Mode::Geometric {
            let Some(g) = &geometry else {
                return Err(Error::Schema(format!("chord {}: geometric mode needs z_minus/z_plus", c.id)));
            };
            if let Some(h) = &height {
                if *h != &g.z_plus - &g.z_minus {
                    return Err(Error::Schema(format!(
                        "chord {}: height {} disagrees with z_plus - z_minus",
                        c.id,
                        format_rational(h)
                    )));
                }
            }
        }
        chords.push(ChordSpec { id: c.id.clone(), height, geometry, assert_extendable: c.assert_extendable });
    }
    PlatFront::new(doc.name, doc.mode, events, chords)
}

impl PlatFront {
    /// Validates topology and gradings of an event list with its chord table.
    pub fn new(name: String, mode: Mode, events: Vec<FrontEvent>, chords: Vec<ChordSpec>) -> Result<Self> {
        let strip = Strip::new(events.iter().map(|e| e.to_move()).collect()).map_err(Error::Topology)?;
        let walk = strip.traverse();
        if walk.len() != strip.segment_count() {
            return Err(Error::Topology(format!(
                "diagram is not a knot: strand tracing covers {} of {} segments",
                walk.len(),
                strip.segment_count()
            )));
        }
        let mut maslov = table(&strip.widths, 0i64);
        let mut mu = 1i64;
        for (seg, via) in &walk {
            if let Via::Turn { upper_to_lower } = via {
                mu += if *upper_to_lower { -1 } else { 1 };
            }
            maslov[seg.col][seg.level] = mu;
        }
        // Closing the loop re-enters the starting upper branch from below (+1).
        if mu != 0 {
            return Err(Error::Grading(format!(
                "no consistent Maslov potential (rotation number ±{})",
                mu.abs() / 2
            )));
        }
        let expected = events.iter().filter(|e| !matches!(e, FrontEvent::LeftCusp(_))).count();
        if chords.len() != expected {
            return Err(Error::Schema(format!(
                "front has {expected} crossings and right cusps but {} chords are listed",
                chords.len()
            )));
        }
        let mut ids: Vec<&str> = chords.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Schema(format!("duplicate chord id {:?}", w[0])));
        }
        Ok(Self { name, mode, events, chords, maslov })
    }

    /// Number of strands present between event `j - 1` and event `j`.
    pub fn strand_counts(&self) -> Vec<usize> {
        self.maslov.iter().map(Vec::len).collect()
    }

    /// Maslov potential on the segment at `level` (0-based) of column `col`.
    pub fn maslov_potential(&self, col: usize, level: usize) -> i64 {
        self.maslov[col][level]
    }

    /// Events that carry a chord, in chord order.
    pub fn chord_events(&self) -> impl Iterator<Item = (usize, FrontEvent)> + '_ {
        self.events.iter().copied().enumerate().filter(|(_, e)| !matches!(e, FrontEvent::LeftCusp(_)))
    }

    pub fn to_json(&self) -> String {
        let doc = FrontDoc {
            schema: FRONT_SCHEMA.into(),
            name: self.name.clone(),
            mode: self.mode,
            events: self
                .events
                .iter()
                .map(|e| EventDoc {
                    kind: match e {
                        FrontEvent::LeftCusp(_) => "left_cusp",
                        FrontEvent::RightCusp(_) => "right_cusp",
                        FrontEvent::Crossing(_) => "crossing",
                    }
                    .into(),
                    slot: e.slot(),
                })
                .collect(),
            chords: self
                .chords
                .iter()
                .map(|c| ChordDoc {
                    id: c.id.clone(),
                    height: c.height.as_ref().map(format_rational),
                    x0: c.geometry.as_ref().and_then(|g| g.x0.as_ref()).map(format_rational),
                    z_minus: c.geometry.as_ref().map(|g| format_rational(&g.z_minus)),
                    z_plus: c.geometry.as_ref().map(|g| format_rational(&g.z_plus)),
                    other_strand_z: c
                        .geometry
                        .as_ref()
                        .map(|g| g.other_strand_z.iter().map(format_rational).collect()),
                    assert_extendable: c.assert_extendable,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("front documents serialize")
    }
}

/// One chord per front crossing and per right cusp, in event order.
pub fn extract_chords(front: &PlatFront) -> Result<Vec<ReebChord>> {
    front
        .chord_events()
        .zip(&front.chords)
        .map(|((j, event), spec)| {
            let (kind, grading) = match event {
                // Column j lies just left of event j; the strand entering at the
                // upper slot leaves downward, i.e. has the lesser slope.
                FrontEvent::Crossing(s) => {
                    (ChordKind::FrontCrossing, front.maslov[j][s - 1] - front.maslov[j][s])
                }
                FrontEvent::RightCusp(_) => (ChordKind::RightCusp, 1),
                FrontEvent::LeftCusp(_) => unreachable!(),
            };
            let height = match (&spec.geometry, &spec.height) {
                (Some(g), _) => &g.z_plus - &g.z_minus,
                (None, Some(h)) => h.clone(),
                (None, None) => return Err(Error::MissingHeight(spec.id.clone())),
            };
            if !height.is_positive() {
                return Err(Error::NonPositiveHeight(spec.id.clone()));
            }
            Ok(ReebChord { id: spec.id.clone(), kind, grading, height, event: j })
        })
        .collect()
}

/// Window test on the front: the chord doubled downward (`[z₋ - h, z₊]`) or
/// upward (`[z₋, z₊ + h]`) may meet the front only at its endpoints.
pub fn is_doubly_extendable(chord: &ReebChord, geom: &ChordGeometry) -> Extendability {
    let h = &chord.height;
    let clear = |lo: Q, hi: Q| !geom.other_strand_z.iter().any(|z| *z >= lo && *z <= hi);
    Extendability {
        down: clear(&geom.z_minus - h, geom.z_plus.clone()),
        up: clear(geom.z_minus.clone(), &geom.z_plus + h),
    }
}

/// Extendability of chord `index` from geometry, or from the user's
/// assertion when no geometry is present.
pub fn chord_extendability(front: &PlatFront, chord: &ReebChord, index: usize) -> Result<Extendability> {
    let spec = &front.chords[index];
    match (&spec.geometry, spec.assert_extendable) {
        (Some(g), _) => Ok(is_doubly_extendable(chord, g)),
        (None, Some(ExtendAssertion::Up)) => Ok(Extendability { down: false, up: true }),
        (None, Some(ExtendAssertion::Down)) => Ok(Extendability { down: true, up: false }),
        (None, Some(ExtendAssertion::Both)) => Ok(Extendability { down: true, up: true }),
        (None, None) => Err(Error::MissingGeometry(spec.id.clone())),
    }
}

/// Multiplies every height and every z-coordinate by `t`.
pub fn scale_heights(front: &PlatFront, t: &Q) -> Result<PlatFront> {
    if !t.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    if t.is_one() {
        return Ok(front.clone());
    }
    let mut out = front.clone();
    for c in &mut out.chords {
        if let Some(h) = &mut c.height {
            *h *= t;
        }
        if let Some(g) = &mut c.geometry {
            g.z_minus *= t;
            g.z_plus *= t;
            for z in &mut g.other_strand_z {
                *z *= t;
            }
        }
    }
    Ok(out)
}

/// Smallest and largest chord heights, ignoring chords without one.
pub fn height_range(chords: &[ReebChord]) -> Option<(Q, Q)> {
    let min = chords.iter().map(|c| &c.height).min()?.clone();
    let max = chords.iter().map(|c| &c.height).max()?.clone();
    Some((min, max))
}
