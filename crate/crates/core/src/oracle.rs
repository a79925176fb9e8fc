//! Independent disk enumeration by gluing copies of faces.
//!
//! An immersed disk is rebuilt as an abstract surface: copies of bounded
//! faces, glued to each other across arcs, with every remaining arc side on
//! the boundary. The search starts from one copy holding the positive corner
//! and decides open sides one at a time (boundary, glue to a fresh copy, glue
//! to an existing copy). Around every crossing the glued quadrants must form
//! a full turn of four (an interior point), a single quadrant (a convex
//! corner) or two adjacent quadrants (the boundary passing straight through).
//! A complete surface with Euler characteristic one and one boundary circle
//! is a disk.
//!
//! Each face may be used at most `max_face_multiplicity` times, which keeps
//! the search finite; the cost is exponential in the crossing count.

use std::collections::BTreeMap;

use crate::dga::Disk;
use crate::diagram::{Quadrant, ResolvedDiagram};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_CROSSINGS: usize = 12;
pub const DEFAULT_MAX_FACE_MULTIPLICITY: u32 = 3;

pub fn brute_force_disk_oracle(diag: &ResolvedDiagram, max_crossings: usize) -> Result<Vec<Vec<Disk>>> {
    brute_force_disk_oracle_with(diag, max_crossings, DEFAULT_MAX_FACE_MULTIPLICITY)
}

pub fn brute_force_disk_oracle_with(
    diag: &ResolvedDiagram,
    max_crossings: usize,
    max_face_multiplicity: u32,
) -> Result<Vec<Vec<Disk>>> {
    let n = diag.crossing_count();
    if n > max_crossings {
        return Err(Error::SizeLimit(format!("disk oracle accepts at most {max_crossings} crossings, got {n}")));
    }
    let mut out = vec![Vec::new(); n];
    for (c0, disks) in out.iter_mut().enumerate() {
        for q0 in [Quadrant::W as usize, Quadrant::E as usize] {
            let Some(f0) = diag.crossings[c0].quadrants[q0] else { continue };
            let mut s = Search::new(diag, (c0, q0), max_face_multiplicity);
            let copy = s.add_copy(f0);
            let rays = diag.crossings[c0].rays;
            s.set(copy, rays[q0], Side::Boundary);
            s.set(copy, rays[(q0 + 1) % 4], Side::Boundary);
            s.run();
            disks.extend(s.found);
        }
    }
    for list in &mut out {
        list.sort();
        list.dedup();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Open,
    Boundary,
    Glued(usize),
}

/// What is known about the quadrants glued around one preimage of a crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Fan {
    Cycle(Vec<(usize, usize)>),
    Chain { members: Vec<(usize, usize)>, closed: bool },
}

struct Search<'a> {
    d: &'a ResolvedDiagram,
    start: (usize, usize),
    limit: u32,
    copy_face: Vec<usize>,
    /// Per copy, one entry per arc of its face (same order as the face's arcs).
    sides: Vec<Vec<Side>>,
    uses: Vec<u32>,
    found: Vec<Disk>,
}

impl<'a> Search<'a> {
    fn new(d: &'a ResolvedDiagram, start: (usize, usize), limit: u32) -> Self {
        Search {
            d,
            start,
            limit,
            copy_face: Vec::new(),
            sides: Vec::new(),
            uses: vec![0; d.face_count()],
            found: Vec::new(),
        }
    }

    fn add_copy(&mut self, f: usize) -> usize {
        self.copy_face.push(f);
        self.sides.push(vec![Side::Open; self.d.faces[f].boundary_arcs.len()]);
        self.uses[f] += 1;
        self.copy_face.len() - 1
    }

    fn remove_last_copy(&mut self) {
        let f = self.copy_face.pop().unwrap();
        self.sides.pop();
        self.uses[f] -= 1;
    }

    fn slot(&self, copy: usize, arc: usize) -> usize {
        let f = self.copy_face[copy];
        self.d.faces[f].boundary_arcs.iter().position(|&a| a == arc).expect("arc borders the face")
    }

    fn get(&self, copy: usize, arc: usize) -> Side {
        self.sides[copy][self.slot(copy, arc)]
    }

    fn set(&mut self, copy: usize, arc: usize, side: Side) {
        let i = self.slot(copy, arc);
        self.sides[copy][i] = side;
    }

    fn other_face(&self, f: usize, arc: usize) -> Option<usize> {
        let [x, y] = self.d.arc_sides[arc];
        if x == Some(f) {
            y
        } else {
            x
        }
    }

    fn first_open(&self) -> Option<(usize, usize)> {
        self.sides.iter().enumerate().find_map(|(c, s)| {
            s.iter().position(|&x| x == Side::Open).map(|i| (c, self.d.faces[self.copy_face[c]].boundary_arcs[i]))
        })
    }

    fn run(&mut self) {
        let Some((copy, arc)) = self.first_open() else {
            if let Some(d) = self.finish() {
                self.found.push(d);
            }
            return;
        };
        self.try_side(copy, arc, Side::Boundary);
        let Some(g) = self.other_face(self.copy_face[copy], arc) else { return };
        for other in 0..self.copy_face.len() {
            if other != copy && self.copy_face[other] == g && self.get(other, arc) == Side::Open {
                self.set(other, arc, Side::Glued(copy));
                self.try_side(copy, arc, Side::Glued(other));
                self.set(other, arc, Side::Open);
            }
        }
        if self.uses[g] < self.limit {
            let fresh = self.add_copy(g);
            self.set(fresh, arc, Side::Glued(copy));
            self.try_side(copy, arc, Side::Glued(fresh));
            self.remove_last_copy();
        }
    }

    fn try_side(&mut self, copy: usize, arc: usize, side: Side) {
        self.set(copy, arc, side);
        if self.locally_valid(copy, arc) {
            self.run();
        }
        self.set(copy, arc, Side::Open);
    }

    /// Quadrant of `copy`'s face at the end of `arc` on crossing ray `ray`.
    fn quadrant_at(&self, copy: usize, c: usize, ray: usize) -> usize {
        let q = self.d.crossings[c].quadrants;
        let f = Some(self.copy_face[copy]);
        if q[(ray + 3) % 4] == f {
            (ray + 3) % 4
        } else {
            debug_assert_eq!(q[ray], f);
            ray
        }
    }

    fn locally_valid(&self, copy: usize, arc: usize) -> bool {
        for (c, ray) in self.d.arc_ends[arc] {
            let q = self.quadrant_at(copy, c, ray);
            if !self.fan_ok(c, &self.fan(c, q, copy), false) {
                return false;
            }
        }
        true
    }

    /// The quadrants glued to `(q, copy)` around crossing `c`.
    fn fan(&self, c: usize, q: usize, copy: usize) -> Fan {
        let rays = self.d.crossings[c].rays;
        let mut members = vec![(q, copy)];
        // Counterclockwise: across ray q + 1 into quadrant q + 1.
        let mut closed_ccw = false;
        let (mut cq, mut cc) = (q, copy);
        loop {
            match self.get(cc, rays[(cq + 1) % 4]) {
                Side::Boundary => {
                    closed_ccw = true;
                    break;
                }
                Side::Open => break,
                Side::Glued(next) => {
                    let nq = (cq + 1) % 4;
                    if (nq, next) == (q, copy) {
                        return Fan::Cycle(members);
                    }
                    members.push((nq, next));
                    if members.len() > 4 {
                        return Fan::Chain { members, closed: false };
                    }
                    cq = nq;
                    cc = next;
                }
            }
        }
        let mut closed_cw = false;
        let (mut cq, mut cc) = (q, copy);
        loop {
            match self.get(cc, rays[cq]) {
                Side::Boundary => {
                    closed_cw = true;
                    break;
                }
                Side::Open => break,
                Side::Glued(next) => {
                    let nq = (cq + 3) % 4;
                    members.insert(0, (nq, next));
                    if members.len() > 4 {
                        break;
                    }
                    cq = nq;
                    cc = next;
                }
            }
        }
        Fan::Chain { members, closed: closed_ccw && closed_cw }
    }

    fn fan_ok(&self, c: usize, fan: &Fan, complete: bool) -> bool {
        match fan {
            Fan::Cycle(m) => m.len() == 4,
            Fan::Chain { members, closed } => {
                let len = members.len();
                if *closed {
                    if len > 2 {
                        return false;
                    }
                    // A lone positive quadrant is a positive corner.
                    if len == 1 {
                        let (q, copy) = members[0];
                        if Quadrant::from_index(q).is_positive() && (c, q, copy) != (self.start.0, self.start.1, 0) {
                            return false;
                        }
                    }
                    true
                } else {
                    !complete && len <= 4
                }
            }
        }
    }

    fn finish(&self) -> Option<Disk> {
        let d = self.d;
        let mut fans = std::collections::BTreeSet::new();
        let mut positive = 0;
        for (copy, &f) in self.copy_face.iter().enumerate() {
            for &(c, quad) in &d.faces[f].corners {
                let q = quad as usize;
                let fan = self.fan(c, q, copy);
                if !self.fan_ok(c, &fan, true) {
                    return None;
                }
                let mut key = match &fan {
                    Fan::Cycle(m) => m.clone(),
                    Fan::Chain { members, .. } => {
                        if members.len() == 1 && quad.is_positive() {
                            positive += 1;
                        }
                        members.clone()
                    }
                };
                key.sort();
                fans.insert((c, key));
            }
        }
        // Each positive corner was seen once, from its only quadrant.
        if positive != 1 {
            return None;
        }
        let faces = self.copy_face.len() as i64;
        let mut glued = 0i64;
        let mut boundary = 0i64;
        for s in &self.sides {
            for side in s {
                match side {
                    Side::Glued(_) => glued += 1,
                    Side::Boundary => boundary += 1,
                    Side::Open => return None,
                }
            }
        }
        let edges = glued / 2 + boundary;
        if fans.len() as i64 - edges + faces != 1 {
            return None;
        }
        self.boundary_word(boundary as usize)
    }

    /// Reads the boundary counterclockwise from the positive corner.
    fn boundary_word(&self, boundary_sides: usize) -> Option<Disk> {
        let d = self.d;
        let (c0, q0) = self.start;
        let mut arcs: BTreeMap<usize, u32> = BTreeMap::new();
        let mut negatives = Vec::new();
        let (mut c, mut leave, mut copy) = (c0, q0, 0usize);
        for _ in 0..boundary_sides {
            let (arc, (next, ray)) = d.follow(c, leave);
            *arcs.entry(arc).or_insert(0) += 1;
            let q = (ray + 3) % 4;
            if d.crossings[next].quadrants[q] != Some(self.copy_face[copy]) {
                return None;
            }
            let rays = d.crossings[next].rays;
            match self.get(copy, rays[q]) {
                Side::Boundary => {
                    if (next, q, copy) == (c0, q0, 0) {
                        let total: u32 = arcs.values().sum();
                        return (total as usize == boundary_sides).then(|| Disk {
                            positive: d.crossings[c0].chord,
                            negatives,
                            boundary_arcs: arcs,
                        });
                    }
                    negatives.push(d.crossings[next].chord);
                    leave = q;
                }
                Side::Glued(j) => {
                    copy = j;
                    leave = (q + 3) % 4;
                }
                Side::Open => return None,
            }
            c = next;
        }
        None
    }
}
