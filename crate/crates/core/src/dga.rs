//! The Chekanov–Eliashberg algebra over F₂.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::diagram::{resolve, ResolvedDiagram};
use crate::error::{Error, Result};
use crate::front::{extract_chords, PlatFront, ReebChord};
use crate::rational::{format_rational, Q};

pub const DGA_SCHEMA: &str = "legcap-dga/1";

/// A word in the chords; the empty word is the unit.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Disk {
    pub positive: usize,
    /// Negative corners, counterclockwise from the positive one.
    pub negatives: Vec<usize>,
    /// Arc id to number of boundary traversals.
    pub boundary_arcs: BTreeMap<usize, u32>,
}

#[derive(Debug, Clone)]
pub struct Dga {
    pub name: String,
    pub chords: Vec<ReebChord>,
    /// `differential[a]` lists the words of ∂a, shortest first.
    pub differential: Vec<Vec<Word>>,
    pub disks: Vec<Vec<Disk>>,
    pub diagram: ResolvedDiagram,
}

/// Resolves, enumerates disks and runs the structural checks.
pub fn build_dga(front: &PlatFront) -> Result<Dga> {
    let chords = extract_chords(front)?;
    let diagram = resolve(front);
    let disks = crate::sweep::enumerate_disks(&diagram);
    differential(front.name.clone(), chords, diagram, disks)
}

/// Sums disk words mod 2 and checks degree, ∂² and the action filtration.
pub fn differential(name: String, chords: Vec<ReebChord>, diagram: ResolvedDiagram, disks: Vec<Vec<Disk>>) -> Result<Dga> {
    let differential: Vec<Vec<Word>> = disks
        .iter()
        .map(|list| {
            let mut odd = BTreeSet::new();
            for d in list {
                if !odd.remove(&d.negatives) {
                    odd.insert(d.negatives.clone());
                }
            }
            let mut words: Vec<Word> = odd.into_iter().collect();
            words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            words
        })
        .collect();
    let dga = Dga { name, chords, differential, disks, diagram };
    dga.check_filtration()?;
    dga.check_degree()?;
    dga.check_d_squared()?;
    Ok(dga)
}

impl Dga {
    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.chords.iter().position(|c| c.id == id)
    }

    pub fn word_ids(&self, w: &[usize]) -> Vec<&str> {
        w.iter().map(|&i| self.chords[i].id.as_str()).collect()
    }

    fn show_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "1".into()
        } else {
            self.word_ids(w).join("·")
        }
    }

    pub fn degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|&i| self.chords[i].grading).sum()
    }

    pub fn check_degree(&self) -> Result<()> {
        for (a, words) in self.differential.iter().enumerate() {
            let want = self.chords[a].grading - 1;
            if let Some(w) = words.iter().find(|w| self.degree(w) != want) {
                return Err(Error::Degree(format!(
                    "∂{} contains {} of degree {}, expected {want}",
                    self.chords[a].id,
                    self.show_word(w),
                    self.degree(w)
                )));
            }
        }
        Ok(())
    }

    /// Checked per disk so that cancelling pairs cannot hide a violation.
    pub fn check_filtration(&self) -> Result<()> {
        for (a, list) in self.disks.iter().enumerate() {
            let top = &self.chords[a].height;
            for d in list {
                let sum: Q = d.negatives.iter().map(|&b| self.chords[b].height.clone()).sum();
                if sum >= *top {
                    return Err(Error::Filtration(format!(
                        "disk at {} with word {}: h({}) = {} but the negative corners total {}",
                        self.chords[a].id,
                        self.show_word(&d.negatives),
                        self.chords[a].id,
                        format_rational(top),
                        format_rational(&sum)
                    )));
                }
            }
        }
        Ok(())
    }

    /// ∂² of every generator, expanded by the Leibniz rule mod 2.
    pub fn d_squared(&self, a: usize) -> BTreeSet<Word> {
        let mut odd = BTreeSet::new();
        for w in &self.differential[a] {
            for (i, &letter) in w.iter().enumerate() {
                for u in &self.differential[letter] {
                    let mut v = Vec::with_capacity(w.len() + u.len());
                    v.extend_from_slice(&w[..i]);
                    v.extend_from_slice(u);
                    v.extend_from_slice(&w[i + 1..]);
                    if !odd.remove(&v) {
                        odd.insert(v);
                    }
                }
            }
        }
        odd
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for a in 0..self.len() {
            if let Some(w) = self.d_squared(a).into_iter().next() {
                return Err(Error::DSquared(format!(
                    "∂∂{} contains {}",
                    self.chords[a].id,
                    self.show_word(&w)
                )));
            }
        }
        Ok(())
    }

    /// Human-readable ∂a, e.g. `1 + b1 + b1·b2·b3`.
    pub fn show_differential(&self, a: usize) -> String {
        if self.differential[a].is_empty() {
            return "0".into();
        }
        self.differential[a].iter().map(|w| self.show_word(w)).collect::<Vec<_>>().join(" + ")
    }

    pub fn to_json(&self, with_disks: bool) -> Value {
        let chords: Vec<Value> = self
            .chords
            .iter()
            .map(|c| json!({"id": c.id, "kind": c.kind, "grading": c.grading, "height": format_rational(&c.height)}))
            .collect();
        let differential: Vec<Value> = self
            .differential
            .iter()
            .enumerate()
            .map(|(a, words)| {
                let words: Vec<Vec<&str>> = words.iter().map(|w| self.word_ids(w)).collect();
                json!({"chord": self.chords[a].id, "words": words})
            })
            .collect();
        let mut doc = json!({
            "schema": DGA_SCHEMA,
            "name": self.name,
            "chords": chords,
            "differential": differential,
        });
        if with_disks {
            doc["disks"] = Value::Array(
                self.disks
                    .iter()
                    .flatten()
                    .map(|d| {
                        json!({
                            "positive": self.chords[d.positive].id,
                            "negatives": self.word_ids(&d.negatives),
                            "boundary_arcs": d.boundary_arcs.iter().map(|(a, m)| [*a as u64, *m as u64]).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            );
        }
        doc
    }
}
