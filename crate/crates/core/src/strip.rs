//! Column model shared by fronts and their resolutions.
//!
//! A diagram is cut by vertical lines into columns; column `j` carries
//! `widths[j]` horizontal strand segments indexed from the top (0-based).
//! Between columns `j` and `j + 1` sits move `j`.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Move {
    /// Two new strands appear at `k`, `k + 1`, joined on the left.
    Open(usize),
    /// Strands `k`, `k + 1` are joined on the right and disappear.
    Close(usize),
    /// Strands `k`, `k + 1` exchange positions.
    Swap(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Seg {
    pub col: usize,
    pub level: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Via {
    Start,
    /// Went through move `j` without turning.
    Pass(usize),
    /// Turned around at a cusp; `upper_to_lower` says which branch we left.
    Turn { upper_to_lower: bool },
}

#[derive(Debug, Clone)]
pub(crate) struct Strip {
    pub moves: Vec<Move>,
    pub widths: Vec<usize>,
}

impl Strip {
    /// Validates strand counts. The message describes the first violation.
    pub fn new(moves: Vec<Move>) -> Result<Self, String> {
        let mut widths = vec![0usize];
        for (j, mv) in moves.iter().enumerate() {
            let n = *widths.last().unwrap();
            let next = match *mv {
                Move::Open(k) if k <= n => n + 2,
                Move::Close(k) | Move::Swap(k) if k + 1 < n => match mv {
                    Move::Close(_) => n - 2,
                    _ => n,
                },
                _ => {
                    return Err(format!(
                        "event {j} uses slot {} but only {n} strands are present",
                        slot_of(mv) + 1
                    ))
                }
            };
            widths.push(next);
        }
        if *widths.last().unwrap() != 0 {
            return Err(format!("{} strands remain open at the right end", widths.last().unwrap()));
        }
        if moves.is_empty() {
            return Err("no component: the event list is empty".into());
        }
        Ok(Self { moves, widths })
    }

    pub fn segment_count(&self) -> usize {
        self.widths.iter().sum()
    }

    /// Walks the knot starting at the upper branch of the first cusp,
    /// heading right. Returns every visited segment once, in order, together
    /// with how it was entered. Stops when the start is reached again.
    pub fn traverse(&self) -> Vec<(Seg, Via)> {
        let start = Seg { col: 1, level: slot_of(&self.moves[0]) };
        let mut out = vec![(start, Via::Start)];
        let (mut seg, mut rightward) = (start, true);
        loop {
            let (next, dir, via) = if rightward { self.exit_right(seg) } else { self.exit_left(seg) };
            if next == start && dir {
                break;
            }
            out.push((next, via));
            seg = next;
            rightward = dir;
            if out.len() > self.segment_count() {
                unreachable!("strand traversal did not close up");
            }
        }
        out
    }

    fn exit_right(&self, seg: Seg) -> (Seg, bool, Via) {
        let j = seg.col;
        let i = seg.level;
        let pass = |level| (Seg { col: j + 1, level }, true, Via::Pass(j));
        match self.moves[j] {
            Move::Swap(k) => pass(swap(i, k)),
            Move::Open(k) => pass(if i < k { i } else { i + 2 }),
            Move::Close(k) if i == k => {
                (Seg { col: j, level: k + 1 }, false, Via::Turn { upper_to_lower: true })
            }
            Move::Close(k) if i == k + 1 => {
                (Seg { col: j, level: k }, false, Via::Turn { upper_to_lower: false })
            }
            Move::Close(k) => pass(if i < k { i } else { i - 2 }),
        }
    }

    fn exit_left(&self, seg: Seg) -> (Seg, bool, Via) {
        let j = seg.col - 1;
        let i = seg.level;
        let pass = |level| (Seg { col: j, level }, false, Via::Pass(j));
        match self.moves[j] {
            Move::Swap(k) => pass(swap(i, k)),
            Move::Open(k) if i == k => {
                (Seg { col: j + 1, level: k + 1 }, true, Via::Turn { upper_to_lower: true })
            }
            Move::Open(k) if i == k + 1 => {
                (Seg { col: j + 1, level: k }, true, Via::Turn { upper_to_lower: false })
            }
            Move::Open(k) => pass(if i < k { i } else { i - 2 }),
            Move::Close(k) => pass(if i < k { i } else { i + 2 }),
        }
    }
}

fn swap(i: usize, k: usize) -> usize {
    if i == k {
        k + 1
    } else if i == k + 1 {
        k
    } else {
        i
    }
}

fn slot_of(mv: &Move) -> usize {
    match *mv {
        Move::Open(k) | Move::Close(k) | Move::Swap(k) => k,
    }
}

/// Per-segment table indexed by `[col][level]`.
pub(crate) fn table<T: Clone>(widths: &[usize], fill: T) -> Vec<Vec<T>> {
    widths.iter().map(|&n| vec![fill.clone(); n]).collect()
}
