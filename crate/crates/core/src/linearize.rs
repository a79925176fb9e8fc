//! Augmentations and linearized contact homology over F₂.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::f2::{BitVec, F2Matrix};

pub const LCH_SCHEMA: &str = "legcap-lch/1";
pub const DEFAULT_MAX_DEG0: usize = 24;

/// Largest degree-0 chord count the bitmask search can represent.
const MASK_BITS: usize = 63;

/// An F₂ value per chord, supported on degree-0 chords.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Augmentation {
    pub values: Vec<bool>,
}

impl Augmentation {
    pub fn zero(len: usize) -> Self {
        Self { values: vec![false; len] }
    }

    /// Multiplicative extension; the empty word is the unit.
    pub fn eval_word(&self, word: &[usize]) -> bool {
        word.iter().all(|&b| self.values[b])
    }

    pub fn eval_differential(&self, dga: &Dga, a: usize) -> bool {
        dga.differential[a].iter().filter(|w| self.eval_word(w)).count() % 2 == 1
    }

    /// Checks the grading support and ε∘∂ = 0 on every generator.
    pub fn check(&self, dga: &Dga) -> Result<()> {
        if self.values.len() != dga.len() {
            return Err(Error::InvalidAugmentation(format!(
                "{} values for {} chords",
                self.values.len(),
                dga.len()
            )));
        }
        if let Some(c) = (0..dga.len()).find(|&c| self.values[c] && dga.chords[c].grading != 0) {
            return Err(Error::InvalidAugmentation(format!(
                "{} has degree {} but is augmented",
                dga.chords[c].id, dga.chords[c].grading
            )));
        }
        if let Some(a) = (0..dga.len()).find(|&a| self.eval_differential(dga, a)) {
            return Err(Error::InvalidAugmentation(format!("ε(∂{}) = 1", dga.chords[a].id)));
        }
        Ok(())
    }

    /// 0/1 values on the degree-0 chords, in chord order.
    pub fn degree0_vector(&self, dga: &Dga) -> Vec<u8> {
        degree0_chords(dga).into_iter().map(|c| self.values[c] as u8).collect()
    }
}

pub fn degree0_chords(dga: &Dga) -> Vec<usize> {
    (0..dga.len()).filter(|&c| dga.chords[c].grading == 0).collect()
}

/// Every augmentation, in lexicographic order of the degree-0 vectors.
pub fn enumerate_augmentations(dga: &Dga, max_deg0: usize) -> Result<Vec<Augmentation>> {
    let deg0 = degree0_chords(dga);
    let n = deg0.len();
    if n > max_deg0.min(MASK_BITS) {
        return Err(Error::SizeLimit(format!(
            "{n} degree-0 chords, augmentation search accepts at most {}",
            max_deg0.min(MASK_BITS)
        )));
    }
    // Bit n-1-i stands for deg0[i], so counting up is lexicographic.
    let mut slot = vec![None; dga.len()];
    for (i, &c) in deg0.iter().enumerate() {
        slot[c] = Some(n - 1 - i);
    }
    // Only words made of degree-0 letters can evaluate to 1, and those occur
    // in the differentials of degree-1 chords.
    let constraints: Vec<Vec<u64>> = (0..dga.len())
        .filter(|&a| dga.chords[a].grading == 1)
        .map(|a| {
            dga.differential[a]
                .iter()
                .filter_map(|w| w.iter().try_fold(0u64, |m, &b| slot[b].map(|s| m | 1 << s)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << n {
        let ok = constraints.iter().all(|words| words.iter().filter(|&&w| w & mask == w).count() % 2 == 0);
        if ok {
            let mut aug = Augmentation::zero(dga.len());
            for (i, &c) in deg0.iter().enumerate() {
                aug.values[c] = mask >> (n - 1 - i) & 1 == 1;
            }
            aug.check(dga)?;
            out.push(aug);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct LinearizedComplex {
    pub gradings: Vec<i64>,
    /// Entry `(b, a)` is the coefficient of `b` in ∂₁^ε a.
    pub boundary: F2Matrix,
}

/// Length-one part of the ε-twisted differential, checked to square to zero.
pub fn linearized_complex(dga: &Dga, aug: &Augmentation) -> Result<LinearizedComplex> {
    aug.check(dga)?;
    let n = dga.len();
    let mut boundary = F2Matrix::zeros(n, n);
    for a in 0..n {
        for w in &dga.differential[a] {
            for (i, &b) in w.iter().enumerate() {
                if w.iter().enumerate().all(|(j, &c)| j == i || aug.values[c]) {
                    boundary.flip(b, a);
                }
            }
        }
    }
    let square = boundary.mul(&boundary);
    if !square.is_zero() {
        let (b, a) = (0..n)
            .flat_map(|b| (0..n).map(move |a| (b, a)))
            .find(|&(b, a)| square.get(b, a))
            .expect("nonzero matrix has a nonzero entry");
        return Err(Error::Linearization(format!(
            "∂₁∂₁{} has a {} term",
            dga.chords[a].id, dga.chords[b].id
        )));
    }
    Ok(LinearizedComplex { gradings: dga.chords.iter().map(|c| c.grading).collect(), boundary })
}

impl LinearizedComplex {
    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn chords_of_degree(&self, k: i64) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.gradings[c] == k).collect()
    }

    /// The codifferential d^ε, with entry `(a, b)` the coefficient of `a` in d^ε b*.
    pub fn coboundary(&self) -> F2Matrix {
        self.boundary.transpose()
    }

    /// ∂₁^ε from degree `k` to degree `k - 1`, in chord order on both sides.
    pub fn block(&self, k: i64) -> F2Matrix {
        self.boundary.submatrix(&self.chords_of_degree(k - 1), &self.chords_of_degree(k))
    }
}

/// Homology data in one degree. Vectors have one entry per chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedHomology {
    pub degree: i64,
    pub betti: usize,
    pub cycles: Vec<BitVec>,
    pub boundaries: Vec<BitVec>,
    pub cocycles: Vec<BitVec>,
    pub coboundaries: Vec<BitVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologySummary {
    /// Ascending degrees, from the lowest to the highest chord grading.
    pub degrees: Vec<GradedHomology>,
}

impl HomologySummary {
    pub fn betti(&self, k: i64) -> usize {
        self.degrees.iter().find(|g| g.degree == k).map_or(0, |g| g.betti)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|g| if g.degree.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum()
    }
}

fn embed(len: usize, coords: &[usize], v: &BitVec) -> BitVec {
    BitVec::from_indices(len, v.ones().map(|i| coords[i]))
}

pub fn homology(cx: &LinearizedComplex) -> HomologySummary {
    let (Some(&lo), Some(&hi)) = (cx.gradings.iter().min(), cx.gradings.iter().max()) else {
        return HomologySummary { degrees: Vec::new() };
    };
    let n = cx.len();
    let degrees = (lo..=hi)
        .map(|k| {
            let here = cx.chords_of_degree(k);
            let out = cx.block(k);
            let into = cx.block(k + 1);
            let cycles: Vec<BitVec> = out.kernel_basis().iter().map(|v| embed(n, &here, v)).collect();
            let boundaries: Vec<BitVec> = into.image_basis().iter().map(|v| embed(n, &here, v)).collect();
            // Cochains: d^ε from degree k is the transpose of ∂ into degree k.
            let cocycles: Vec<BitVec> = into.transpose().kernel_basis().iter().map(|v| embed(n, &here, v)).collect();
            let coboundaries: Vec<BitVec> =
                out.transpose().image_basis().iter().map(|v| embed(n, &here, v)).collect();
            GradedHomology { degree: k, betti: cycles.len() - boundaries.len(), cycles, boundaries, cocycles, coboundaries }
        })
        .collect();
    HomologySummary { degrees }
}

/// The `legcap-lch/1` document. Each augmentation comes with its position in
/// the full enumeration; Betti tables, when given, are one per listed row.
pub fn lch_json(dga: &Dga, augs: &[(usize, &Augmentation)], homologies: Option<&[HomologySummary]>) -> Value {
    let deg0: Vec<&str> = degree0_chords(dga).into_iter().map(|c| dga.chords[c].id.as_str()).collect();
    let rows: Vec<Value> = augs
        .iter()
        .enumerate()
        .map(|(row, &(i, aug))| {
            let mut v = json!({"index": i, "augmentation": aug.degree0_vector(dga)});
            if let Some(h) = homologies.map(|hs| &hs[row]) {
                let betti: BTreeMap<String, usize> =
                    h.degrees.iter().map(|g| (g.degree.to_string(), g.betti)).collect();
                v["betti"] = json!(betti);
            }
            v
        })
        .collect();
    json!({
        "schema": LCH_SCHEMA,
        "name": dga.name,
        "degree0_chords": deg0,
        "augmentations": rows,
    })
}
