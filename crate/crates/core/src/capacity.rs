//! The fundamental class from a marked point, and its capacity: the highest
//! action level below which some representative vanishes.

use serde_json::{json, Value};

use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::f2::{BitVec, F2Matrix};
use crate::linearize::{enumerate_augmentations, linearized_complex, Augmentation, LinearizedComplex};
use crate::rational::{format_rational, Q};

pub const CAPACITY_SCHEMA: &str = "legcap-capacity/1";
pub const DEFAULT_ORACLE_MAX_DEG0: usize = 20;

/// A point inside one arc of the resolved diagram. Disk boundaries run over
/// whole arcs, so the arc is all that matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedPoint {
    pub arc: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCocycle {
    /// One entry per chord, supported in degree 1.
    pub coefficients: BitVec,
    pub marked_point: MarkedPoint,
    pub augmentation: Augmentation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityResult {
    pub value: Q,
    /// A representative of the class whose lowest chord has height `value`.
    pub witness: BitVec,
    pub witness_chord: usize,
}

/// Cochain-level data for one augmentation.
#[derive(Debug, Clone)]
pub struct Cochains {
    pub cx: LinearizedComplex,
    pub heights: Vec<Q>,
    pub degree0: Vec<usize>,
    pub degree1: Vec<usize>,
    /// d^ε from degree 0 to degree 1: rows `degree1`, columns `degree0`.
    pub d0: F2Matrix,
}

impl Cochains {
    pub fn new(dga: &Dga, aug: &Augmentation) -> Result<Self> {
        let cx = linearized_complex(dga, aug)?;
        let d0 = cx.block(1).transpose();
        Ok(Self {
            heights: dga.chords.iter().map(|c| c.height.clone()).collect(),
            degree0: cx.chords_of_degree(0),
            degree1: cx.chords_of_degree(1),
            d0,
            cx,
        })
    }

    /// d^ε applied to a degree-0 cochain given on `degree0`.
    pub fn coboundary_of(&self, y: &BitVec) -> BitVec {
        let image = self.d0.mul_vec(y);
        BitVec::from_indices(self.heights.len(), image.ones().map(|i| self.degree1[i]))
    }

    /// d^ε x, as a vector over all chords.
    pub fn differential_of(&self, x: &BitVec) -> BitVec {
        self.cx.coboundary().mul_vec(x)
    }

    /// Some `y` with `x = d^ε y`, if `x` is a coboundary.
    pub fn primitive(&self, x: &BitVec) -> Option<BitVec> {
        if x.ones().any(|c| self.cx.gradings[c] != 1) {
            return None;
        }
        self.d0.solve(&x.select(&self.degree1))
    }

    pub fn cohomologous(&self, x: &BitVec, other: &BitVec) -> bool {
        let mut diff = x.clone();
        diff.xor_assign(other);
        self.primitive(&diff).is_some()
    }

    /// A representative `x + d^ε y` vanishing on every chord lower than `w`.
    pub fn feasible(&self, x: &BitVec, w: &Q) -> Option<BitVec> {
        let low: Vec<usize> = (0..self.degree1.len()).filter(|&i| self.heights[self.degree1[i]] < *w).collect();
        let all: Vec<usize> = (0..self.degree0.len()).collect();
        let y = self.d0.submatrix(&low, &all).solve(&x.select(&self.degree1).select(&low))?;
        let mut rep = x.clone();
        rep.xor_assign(&self.coboundary_of(&y));
        Some(rep)
    }

    /// Height of the lowest chord in the support, lowest index on ties.
    pub fn lowest(&self, x: &BitVec) -> Option<(usize, Q)> {
        x.ones().map(|c| (c, self.heights[c].clone())).min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
    }
}

/// Parity of augmented disks at degree-1 chords whose boundary runs over the
/// marked arc, counted with multiplicity.
pub fn fundamental_cocycle(dga: &Dga, aug: &Augmentation, m: MarkedPoint) -> Result<FundamentalCocycle> {
    let cochains = Cochains::new(dga, aug)?;
    fundamental_cocycle_in(dga, &cochains, aug, m)
}

pub fn fundamental_cocycle_in(
    dga: &Dga,
    cochains: &Cochains,
    aug: &Augmentation,
    m: MarkedPoint,
) -> Result<FundamentalCocycle> {
    if m.arc >= dga.diagram.arc_count {
        return Err(Error::UnknownArc(m.arc, dga.diagram.arc_count));
    }
    let mut x = BitVec::zeros(dga.len());
    for &a in &cochains.degree1 {
        let count: u32 = dga.disks[a]
            .iter()
            .filter(|d| aug.eval_word(&d.negatives))
            .map(|d| d.boundary_arcs.get(&m.arc).copied().unwrap_or(0))
            .sum();
        x.set(a, count % 2 == 1);
    }
    let dx = cochains.differential_of(&x);
    if let Some(c) = dx.first_one() {
        return Err(Error::NotCocycle(format!("marked arc {}: d x has a {} term", m.arc, dga.chords[c].id)));
    }
    if cochains.degree1.is_empty() {
        return Err(Error::NullClass("there are no degree-1 chords".into()));
    }
    if cochains.primitive(&x).is_some() {
        return Err(Error::NullClass(format!("marked arc {} gives a coboundary", m.arc)));
    }
    Ok(FundamentalCocycle { coefficients: x, marked_point: m, augmentation: aug.clone() })
}

/// Largest chord height `w` at which the class has a representative
/// supported on chords of height at least `w`.
pub fn capacity(dga: &Dga, aug: &Augmentation, x0: &FundamentalCocycle) -> Result<CapacityResult> {
    capacity_in(&Cochains::new(dga, aug)?, x0)
}

pub fn capacity_in(cochains: &Cochains, x0: &FundamentalCocycle) -> Result<CapacityResult> {
    let mut levels = cochains.heights.clone();
    levels.sort();
    levels.dedup();
    for w in levels.iter().rev() {
        if let Some(rep) = cochains.feasible(&x0.coefficients, w) {
            let (chord, value) = cochains.lowest(&rep).expect("a nonzero class has nonzero representatives");
            debug_assert_eq!(value, *w);
            return Ok(CapacityResult { value, witness: rep, witness_chord: chord });
        }
    }
    Err(Error::NullClass("no threshold is feasible".into()))
}

/// Literal maximization over every representative.
pub fn capacity_oracle(
    dga: &Dga,
    aug: &Augmentation,
    x0: &FundamentalCocycle,
    max_deg0: usize,
) -> Result<CapacityResult> {
    let cochains = Cochains::new(dga, aug)?;
    let n = cochains.degree0.len();
    if n > max_deg0.min(63) {
        return Err(Error::SizeLimit(format!("{n} degree-0 chords, capacity oracle accepts at most {max_deg0}")));
    }
    let mut best: Option<CapacityResult> = None;
    for mask in 0..1u64 << n {
        let y = BitVec::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        let mut rep = x0.coefficients.clone();
        rep.xor_assign(&cochains.coboundary_of(&y));
        let Some((chord, value)) = cochains.lowest(&rep) else { continue };
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(CapacityResult { value, witness: rep, witness_chord: chord });
        }
    }
    best.ok_or_else(|| Error::NullClass("every representative vanishes".into()))
}

#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub augmentation: Augmentation,
    pub cocycle: FundamentalCocycle,
    pub result: CapacityResult,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    pub c_min: Q,
    pub c_max: Q,
}

/// Capacities of every augmentation, marked at `m`.
pub fn capacity_spectrum(dga: &Dga, max_deg0: usize, m: MarkedPoint) -> Result<Spectrum> {
    let augs = enumerate_augmentations(dga, max_deg0)?;
    let entries = augs
        .into_iter()
        .map(|aug| {
            let cochains = Cochains::new(dga, &aug)?;
            let cocycle = fundamental_cocycle_in(dga, &cochains, &aug, m)?;
            let result = capacity_in(&cochains, &cocycle)?;
            Ok(SpectrumEntry { augmentation: aug, cocycle, result })
        })
        .collect::<Result<Vec<_>>>()?;
    let c_min = entries.iter().map(|e| &e.result.value).min().ok_or(Error::NoAugmentation)?.clone();
    let c_max = entries.iter().map(|e| &e.result.value).max().ok_or(Error::NoAugmentation)?.clone();
    Ok(Spectrum { entries, c_min, c_max })
}

/// The `legcap-capacity/1` document, listing the spectrum entries at `rows`.
pub fn capacity_json(dga: &Dga, spectrum: &Spectrum, rows: &[usize]) -> Value {
    let degree1: Vec<usize> = (0..dga.len()).filter(|&c| dga.chords[c].grading == 1).collect();
    let rows: Vec<Value> = rows
        .iter()
        .map(|&i| {
            let e = &spectrum.entries[i];
            json!({
                "index": i,
                "augmentation": e.augmentation.degree0_vector(dga),
                "capacity": format_rational(&e.result.value),
                "witness_chord": dga.chords[e.result.witness_chord].id,
                "witness": degree1.iter().map(|&c| e.result.witness.get(c) as u8).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "schema": CAPACITY_SCHEMA,
        "name": dga.name,
        "marked_arc": spectrum.entries.first().map(|e| e.cocycle.marked_point.arc),
        "degree0_chords": crate::linearize::degree0_chords(dga).iter().map(|&c| dga.chords[c].id.as_str()).collect::<Vec<_>>(),
        "degree1_chords": degree1.iter().map(|&c| dga.chords[c].id.as_str()).collect::<Vec<_>>(),
        "augmentations": rows,
        "c_min": format_rational(&spectrum.c_min),
        "c_max": format_rational(&spectrum.c_max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::build_dga;
    use crate::front::parse_front;
    use crate::linearize::DEFAULT_MAX_DEG0;
    use crate::rational::parse_rational;
    use crate::testdata;

    #[test]
    fn unknot_marked_on_either_arc() {
        let dga = build_dga(&parse_front(&testdata::unknot("7/3")).unwrap()).unwrap();
        let aug = Augmentation::zero(1);
        for arc in 0..2 {
            let x = fundamental_cocycle(&dga, &aug, MarkedPoint { arc }).unwrap();
            assert_eq!(x.coefficients.ones().collect::<Vec<_>>(), vec![0]);
            let c = capacity(&dga, &aug, &x).unwrap();
            assert_eq!(c.value, parse_rational("7/3").unwrap());
            assert_eq!(c.witness_chord, 0);
        }
        assert!(matches!(fundamental_cocycle(&dga, &aug, MarkedPoint { arc: 2 }), Err(Error::UnknownArc(2, 2))));
    }

    #[test]
    fn trefoil_spectrum_is_the_top_height() {
        let dga = build_dga(&testdata::trefoil()).unwrap();
        let s = capacity_spectrum(&dga, DEFAULT_MAX_DEG0, MarkedPoint { arc: 0 }).unwrap();
        assert_eq!(s.entries.len(), 5);
        let one = parse_rational("1").unwrap();
        assert_eq!((s.c_min.clone(), s.c_max.clone()), (one.clone(), one));
        for e in &s.entries {
            let o = capacity_oracle(&dga, &e.augmentation, &e.cocycle, DEFAULT_ORACLE_MAX_DEG0).unwrap();
            assert_eq!(o.value, e.result.value);
        }
    }

    #[test]
    fn no_degree_one_chords_is_a_null_class() {
        let mut dga = build_dga(&parse_front(&testdata::unknot("1")).unwrap()).unwrap();
        dga.chords[0].grading = 2;
        dga.differential[0].clear();
        let err = fundamental_cocycle(&dga, &Augmentation::zero(1), MarkedPoint { arc: 0 });
        assert!(matches!(err, Err(Error::NullClass(_))));
    }
}
