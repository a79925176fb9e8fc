//! Lagrangian projection of a plat front.
//!
//! Each front crossing stays a crossing; each right cusp becomes a crossing
//! followed by a small loop closing to its right. The planar picture keeps
//! the front's strand layout, so the column model carries over unchanged.
//!
//! At every crossing the strand entering from the upper-left is the
//! overstrand (its lift has the larger z). Rays and quadrants are indexed
//! counterclockwise:
//!
//! ```text
//!        NW(1)   NE(0)
//!            \ N /
//!          W  \ /  E
//!             / \
//!            / S \
//!        SW(2)   SE(3)
//! ```

use crate::front::{FrontEvent, PlatFront};
use crate::strip::{table, Move, Strip, Via};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quadrant {
    N = 0,
    W = 1,
    S = 2,
    E = 3,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::N, Quadrant::W, Quadrant::S, Quadrant::E];

    pub fn from_index(i: usize) -> Quadrant {
        Self::ALL[i % 4]
    }

    /// Reeb sign: the boundary of a counterclockwise disk jumps up in z
    /// at corners in the left and right quadrants.
    pub fn is_positive(self) -> bool {
        matches!(self, Quadrant::W | Quadrant::E)
    }
}

pub const RAY_NE: usize = 0;
pub const RAY_NW: usize = 1;
pub const RAY_SW: usize = 2;
pub const RAY_SE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Chord index (crossings and chords are in bijection, same order).
    pub chord: usize,
    /// Index of the swap in the resolved move list.
    pub(crate) step: usize,
    /// 0-based level of the upper strand.
    pub slot: usize,
    /// Arc on each ray, indexed NE, NW, SW, SE.
    pub rays: [usize; 4],
    /// Face in each quadrant, indexed N, W, S, E; `None` is the unbounded face.
    pub quadrants: [Option<usize>; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub boundary_arcs: Vec<usize>,
    /// Corners of the face as (crossing, quadrant) pairs.
    pub corners: Vec<(usize, Quadrant)>,
}

#[derive(Debug, Clone)]
pub struct ResolvedDiagram {
    pub(crate) strip: Strip,
    /// Crossing index for every swap move.
    pub(crate) crossing_of_step: Vec<Option<usize>>,
    /// Arc id of every segment, `[col][level]`.
    pub(crate) arc_of: Vec<Vec<usize>>,
    pub crossings: Vec<Crossing>,
    pub arc_count: usize,
    /// Both endpoints of every arc as (crossing, ray).
    pub arc_ends: Vec<[(usize, usize); 2]>,
    /// Faces on either side of every arc.
    pub arc_sides: Vec<[Option<usize>; 2]>,
    pub faces: Vec<Face>,
}

/// Builds the resolved diagram. Arc ids follow the knot starting at the
/// leftmost left cusp, heading right along its upper branch.
pub fn resolve(front: &PlatFront) -> ResolvedDiagram {
    let mut moves = Vec::new();
    let mut crossing_steps = Vec::new();
    for event in &front.events {
        match *event {
            FrontEvent::LeftCusp(s) => moves.push(Move::Open(s - 1)),
            FrontEvent::Crossing(s) => {
                crossing_steps.push(moves.len());
                moves.push(Move::Swap(s - 1));
            }
            FrontEvent::RightCusp(s) => {
                crossing_steps.push(moves.len());
                moves.push(Move::Swap(s - 1));
                moves.push(Move::Close(s - 1));
            }
        }
    }
    let strip = Strip::new(moves).expect("validated front resolves to a valid strip");
    let mut crossing_of_step = vec![None; strip.moves.len()];
    for (c, &step) in crossing_steps.iter().enumerate() {
        crossing_of_step[step] = Some(c);
    }

    // Arcs: cut the knot at every crossing passage.
    let mut arc_of = table(&strip.widths, usize::MAX);
    let mut counter = 0usize;
    let walk = strip.traverse();
    for (seg, via) in &walk {
        if let Via::Pass(j) = via {
            if matches!(strip.moves[*j], Move::Swap(k) if seg.level == k || seg.level == k + 1) {
                counter += 1;
            }
        }
        arc_of[seg.col][seg.level] = counter;
    }
    let arc_count = counter;
    for col in arc_of.iter_mut() {
        for a in col.iter_mut() {
            if *a == arc_count {
                *a = 0;
            }
        }
    }

    let face_of_gap = compute_faces(&strip);
    let face_count = face_of_gap.iter().flatten().flatten().map(|f| f + 1).max().unwrap_or(0);

    let crossings: Vec<Crossing> = crossing_steps
        .iter()
        .enumerate()
        .map(|(c, &j)| {
            let Move::Swap(k) = strip.moves[j] else { unreachable!() };
            Crossing {
                chord: c,
                step: j,
                slot: k,
                rays: [arc_of[j + 1][k], arc_of[j][k], arc_of[j][k + 1], arc_of[j + 1][k + 1]],
                quadrants: [
                    face_of_gap[j][k],
                    face_of_gap[j][k + 1],
                    face_of_gap[j][k + 2],
                    face_of_gap[j + 1][k + 1],
                ],
            }
        })
        .collect();

    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); arc_count];
    for (c, x) in crossings.iter().enumerate() {
        for (ray, &arc) in x.rays.iter().enumerate() {
            ends[arc].push((c, ray));
        }
    }
    let arc_ends = ends
        .into_iter()
        .map(|e| {
            assert_eq!(e.len(), 2, "every arc runs between two crossing rays");
            [e[0], e[1]]
        })
        .collect();

    let mut arc_sides = vec![[None, None]; arc_count];
    let mut seen = vec![false; arc_count];
    for (col, levels) in arc_of.iter().enumerate() {
        for (level, &arc) in levels.iter().enumerate() {
            if !seen[arc] {
                seen[arc] = true;
                arc_sides[arc] = [face_of_gap[col][level], face_of_gap[col][level + 1]];
            }
        }
    }

    let mut faces = vec![Face { boundary_arcs: Vec::new(), corners: Vec::new() }; face_count];
    for (arc, sides) in arc_sides.iter().enumerate() {
        for f in sides.iter().flatten() {
            faces[*f].boundary_arcs.push(arc);
        }
    }
    for (c, x) in crossings.iter().enumerate() {
        for (q, f) in x.quadrants.iter().enumerate() {
            if let Some(f) = f {
                faces[*f].corners.push((c, Quadrant::from_index(q)));
            }
        }
    }

    ResolvedDiagram { strip, crossing_of_step, arc_of, crossings, arc_count, arc_ends, arc_sides, faces }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Connects the gaps of adjacent columns through each move and labels the
/// resulting regions; the region touching the top and bottom is unbounded.
fn compute_faces(strip: &Strip) -> Vec<Vec<Option<usize>>> {
    let mut offsets = Vec::with_capacity(strip.widths.len());
    let mut total = 0;
    for &n in &strip.widths {
        offsets.push(total);
        total += n + 1;
    }
    let cell = |col: usize, gap: usize| offsets[col] + gap;
    let mut parent: Vec<usize> = (0..total).collect();
    for (col, &n) in strip.widths.iter().enumerate() {
        union(&mut parent, cell(col, 0), cell(0, 0));
        union(&mut parent, cell(col, n), cell(0, 0));
    }
    for (j, mv) in strip.moves.iter().enumerate() {
        let n = strip.widths[j];
        match *mv {
            Move::Swap(k) => {
                for g in (0..=n).filter(|&g| g != k + 1) {
                    union(&mut parent, cell(j, g), cell(j + 1, g));
                }
            }
            Move::Open(k) => {
                for g in 0..=n {
                    let to = if g < k { g } else if g == k { k } else { g + 2 };
                    union(&mut parent, cell(j, g), cell(j + 1, to));
                }
                union(&mut parent, cell(j, k), cell(j + 1, k + 2));
            }
            Move::Close(k) => {
                for g in 0..=n {
                    if g == k + 1 {
                        continue;
                    }
                    let to = if g <= k { g } else { g - 2 };
                    union(&mut parent, cell(j, g), cell(j + 1, to));
                }
            }
        }
    }
    let outer = find(&mut parent, cell(0, 0));
    let mut label = std::collections::HashMap::new();
    let mut out = Vec::with_capacity(strip.widths.len());
    for (col, &n) in strip.widths.iter().enumerate() {
        let mut gaps = Vec::with_capacity(n + 1);
        for g in 0..=n {
            let root = find(&mut parent, cell(col, g));
            if root == outer {
                gaps.push(None);
            } else {
                let next = label.len();
                gaps.push(Some(*label.entry(root).or_insert(next)));
            }
        }
        out.push(gaps);
    }
    out
}

impl ResolvedDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Arcs in knot traversal order (ids are assigned in that order).
    pub fn arcs(&self) -> std::ops::Range<usize> {
        0..self.arc_count
    }

    /// Arc leaving crossing `c` along `ray`, with the far endpoint.
    pub fn follow(&self, c: usize, ray: usize) -> (usize, (usize, usize)) {
        let arc = self.crossings[c].rays[ray];
        let [e0, e1] = self.arc_ends[arc];
        let far = if e0 == (c, ray) { e1 } else { e0 };
        (arc, far)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::front::parse_front;
    use crate::testdata;

    #[test]
    fn unknot_resolution_counts() {
        let d = resolve(&parse_front(&testdata::unknot("1")).unwrap());
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.arc_count, 2);
        assert_eq!(d.face_count(), 2);
        let x = &d.crossings[0];
        // Loop interior is the right quadrant, the saucer the left one.
        assert_ne!(x.quadrants[Quadrant::W as usize], x.quadrants[Quadrant::E as usize]);
        assert!(x.quadrants[Quadrant::N as usize].is_none());
        assert!(x.quadrants[Quadrant::S as usize].is_none());
    }

    #[test]
    fn trefoil_resolution_counts() {
        let d = resolve(&parse_front(&testdata::trefoil_combinatorial(&["1/8"; 3], "3/4", "1")).unwrap());
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(d.arc_count, 10);
        assert_eq!(d.face_count(), 6);
    }

    #[test]
    fn euler_count_and_faces_are_cells() {
        for front in testdata::small_fronts() {
            let d = resolve(&front);
            let c = d.crossing_count();
            assert_eq!(d.arc_count, 2 * c);
            assert_eq!(d.face_count(), c + 1, "{}", front.name);
            for (arc, sides) in d.arc_sides.iter().enumerate() {
                assert_ne!(sides[0], sides[1], "arc {arc} separates a face from itself");
            }
        }
    }
}
