//! Left-to-right sweep enumeration of immersed disks.
//!
//! A disk is tracked through its vertical slices. In each column the slice is
//! a list of sheets, each an interval between a top and a bottom strand. Sheets
//! are born inside left cusps (or at a right quadrant corner), split around
//! left cusps they cover, merge around right-cusp loops, and die inside loops
//! or at a left quadrant corner. Boundary pieces are strung together in
//! counterclockwise order as chains: top boundaries are read right to left
//! (prepended), bottom boundaries left to right (appended).

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::diagram::ResolvedDiagram;
use crate::dga::Disk;
use crate::strip::Move;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Item {
    Neg(usize),
    Pos(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Chain {
    Live(VecDeque<Item>),
    Moved(usize),
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Sheet {
    top: usize,
    bot: usize,
    top_chain: usize,
    bot_chain: usize,
    comp: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    sheets: Vec<Sheet>,
    chains: Vec<Chain>,
    /// Twice the number of times each arc is traversed.
    half_sides: BTreeMap<usize, u32>,
    positive: Option<usize>,
    /// Births minus merges; a disk ends at one.
    chi: i64,
    comps: Vec<usize>,
    closed: Option<VecDeque<Item>>,
}

impl State {
    fn new_chain(&mut self, items: VecDeque<Item>) -> usize {
        self.chains.push(Chain::Live(items));
        self.chains.len() - 1
    }

    fn new_comp(&mut self) -> usize {
        self.comps.push(self.comps.len());
        self.comps.len() - 1
    }

    fn root(&self, mut c: usize) -> usize {
        while self.comps[c] != c {
            c = self.comps[c];
        }
        c
    }

    fn unite(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra != rb {
            self.comps[ra.max(rb)] = ra.min(rb);
        }
    }

    fn resolve(&self, mut id: usize) -> usize {
        while let Chain::Moved(next) = self.chains[id] {
            id = next;
        }
        id
    }

    fn live(&mut self, id: usize) -> &mut VecDeque<Item> {
        let id = self.resolve(id);
        match &mut self.chains[id] {
            Chain::Live(d) => d,
            _ => unreachable!("boundary chain used after closing"),
        }
    }

    /// Largest number of sheets over one gap between adjacent strands.
    fn max_cover(&self) -> usize {
        let mut edges: Vec<(usize, i32)> = self.sheets.iter().flat_map(|s| [(s.top, 1), (s.bot, -1)]).collect();
        edges.sort();
        let mut cover = 0i32;
        let mut most = 0;
        for (_, d) in edges {
            cover += d;
            most = most.max(cover);
        }
        most as usize
    }

    /// Sorts the sheets and renumbers chains and components, so that states
    /// differing only in bookkeeping compare equal. `None` when a component
    /// without sheets is not joined to the rest: it never can be.
    fn canonical(&self) -> Option<State> {
        let content = |id: usize| match &self.chains[self.resolve(id)] {
            Chain::Live(d) => d.clone(),
            _ => VecDeque::new(),
        };
        let mut sheets = self.sheets.clone();
        sheets.sort_by_cached_key(|s| (s.top, s.bot, content(s.top_chain), content(s.bot_chain)));
        let out = self.relabel(sheets);
        let roots: BTreeSet<usize> = (0..self.comps.len()).map(|c| self.root(c)).collect();
        (roots.len() <= out.comps.len().max(1)).then_some(out)
    }

    fn relabel(&self, mut sheets: Vec<Sheet>) -> State {
        let mut chain_ids = BTreeMap::new();
        let mut comp_ids = BTreeMap::new();
        let mut out = State {
            half_sides: self.half_sides.clone(),
            positive: self.positive,
            chi: self.chi,
            closed: self.closed.clone(),
            ..State::default()
        };
        for s in &mut sheets {
            for id in [&mut s.top_chain, &mut s.bot_chain] {
                let old = self.resolve(*id);
                *id = *chain_ids.entry(old).or_insert_with(|| {
                    out.chains.push(self.chains[old].clone());
                    out.chains.len() - 1
                });
            }
            let root = self.root(s.comp);
            s.comp = *comp_ids.entry(root).or_insert_with(|| {
                out.comps.push(out.comps.len());
                out.comps.len() - 1
            });
        }
        out.sheets = sheets;
        out
    }

    /// The part of a canonical state that decides how it can continue: the
    /// boundary recorded so far is dropped. Sheets over the same gap are
    /// tried in every order so that the result is exact.
    fn future(&self) -> State {
        let mut bare = self.clone();
        for c in &mut bare.chains {
            if let Chain::Live(d) = c {
                d.clear();
            }
        }
        bare.half_sides.clear();
        bare.positive = bare.positive.map(|_| 0);
        bare.closed = bare.closed.map(|_| VecDeque::new());
        bare.sheets.sort_by_key(|s| (s.top, s.bot));
        let mut orders = vec![Vec::new()];
        for group in bare.sheets.chunk_by(|a, b| (a.top, a.bot) == (b.top, b.bot)) {
            orders = orders
                .iter()
                .flat_map(|prefix| {
                    matchings(group.len()).into_iter().map(move |perm| {
                        let mut v: Vec<Sheet> = prefix.clone();
                        v.extend(perm.iter().map(|&i| group[i]));
                        v
                    })
                })
                .collect();
        }
        orders.into_iter().map(|order| bare.relabel(order)).min().expect("at least one order")
    }

    fn touch(&mut self, arc: usize) {
        *self.half_sides.entry(arc).or_insert(0) += 1;
    }

    /// Continues chain `first` (at its end) into chain `second` (at its
    /// start). Returns `Some(true)` when this closes the boundary circle and
    /// `None` when that closure is impossible (already closed once).
    fn join(&mut self, first: usize, second: usize, middle: Option<Item>) -> Option<bool> {
        let (f, s) = (self.resolve(first), self.resolve(second));
        if f == s {
            if self.closed.is_some() {
                return None;
            }
            let Chain::Live(mut items) = std::mem::replace(&mut self.chains[f], Chain::Closed) else {
                unreachable!()
            };
            items.extend(middle);
            self.closed = Some(items);
            return Some(true);
        }
        let Chain::Live(tail) = std::mem::replace(&mut self.chains[s], Chain::Moved(f)) else { unreachable!() };
        let head = self.live(f);
        head.extend(middle);
        head.extend(tail);
        Some(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Opt {
    Keep,
    Straight,
    CornerN,
    CornerS,
    DeathW,
    Split,
}

/// All choices of one option per sheet.
fn product(options: &[Vec<Opt>]) -> Vec<Vec<Opt>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut v = prefix.clone();
                    v.push(o);
                    v
                })
            })
            .collect()
    })
}

/// All bijections between two equally long lists, as index pairings.
fn matchings(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in matchings(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Most sheets allowed over the inside of a left cusp.
pub const DEFAULT_MAX_DEPTH: usize = 3;

/// Every immersed disk with convex corners and exactly one positive corner,
/// grouped by positive chord. Lists are sorted and free of duplicates.
pub fn enumerate_disks(diag: &ResolvedDiagram) -> Vec<Vec<Disk>> {
    enumerate_disks_with(diag, DEFAULT_MAX_DEPTH)
}

/// As [`enumerate_disks`], with at most `depth` sheets stacked inside any
/// left cusp. This bounds the search; disks covering a cusp more often are
/// not produced.
pub fn enumerate_disks_with(diag: &ResolvedDiagram, depth: usize) -> Vec<Vec<Disk>> {
    let alive = live_futures(diag, depth);
    let mut states = vec![State::default()];
    for (j, &mv) in diag.strip.moves.iter().enumerate() {
        let mut next = Vec::new();
        for state in &states {
            step(diag, j, mv, depth, state, &mut next);
        }
        let mut seen = HashSet::new();
        states = next
            .into_iter()
            .filter_map(|s| admissible(s, depth))
            .filter(|s| alive[j + 1].contains(&s.future()))
            .filter(|s| seen.insert(s.clone()))
            .collect();
    }
    let mut out = vec![Vec::new(); diag.crossing_count()];
    for s in states {
        if let Some(disk) = finish(s) {
            out[disk.positive].push(disk);
        }
    }
    for list in &mut out {
        list.sort();
        list.dedup();
    }
    out
}

fn step(diag: &ResolvedDiagram, j: usize, mv: Move, depth: usize, state: &State, out: &mut Vec<State>) {
    match mv {
        Move::Swap(k) => swap_step(diag, j, k, state, out),
        Move::Open(k) => open_step(k, depth, state, out),
        Move::Close(k) => close_step(k, state, out),
    }
}

fn admissible(s: State, depth: usize) -> Option<State> {
    if (s.closed.is_some() && !s.sheets.is_empty()) || s.max_cover() > depth {
        return None;
    }
    s.canonical()
}

/// Per column, the futures from which a finished disk is still reachable.
/// Found by running the sweep without boundary records, then walking the
/// transitions backwards from the accepting end states.
fn live_futures(diag: &ResolvedDiagram, depth: usize) -> Vec<HashSet<State>> {
    let mut layers = vec![vec![State::default()]];
    let mut edges: Vec<Vec<Vec<usize>>> = Vec::new();
    for (j, &mv) in diag.strip.moves.iter().enumerate() {
        let mut index = HashMap::new();
        let mut layer = Vec::new();
        let mut succ = Vec::new();
        for state in layers.last().unwrap() {
            let mut next = Vec::new();
            step(diag, j, mv, depth, state, &mut next);
            let mut ids: Vec<usize> = next
                .into_iter()
                .filter_map(|s| admissible(s, depth))
                .map(|s| {
                    let f = s.future();
                    *index.entry(f.clone()).or_insert_with(|| {
                        layer.push(f);
                        layer.len() - 1
                    })
                })
                .collect();
            ids.sort_unstable();
            ids.dedup();
            succ.push(ids);
        }
        layers.push(layer);
        edges.push(succ);
    }
    let mut live: Vec<bool> = layers
        .last()
        .unwrap()
        .iter()
        .map(|s| s.sheets.is_empty() && s.chi == 1 && s.positive.is_some() && s.closed.is_some())
        .collect();
    let mut out = vec![HashSet::new(); layers.len()];
    for j in (0..layers.len()).rev() {
        out[j] = layers[j].iter().zip(&live).filter(|(_, &l)| l).map(|(s, _)| s.clone()).collect();
        if j > 0 {
            live = edges[j - 1].iter().map(|ids| ids.iter().any(|&i| live[i])).collect();
        }
    }
    out
}

fn finish(s: State) -> Option<Disk> {
    let positive = s.positive?;
    let cycle = s.closed.clone()?;
    if !s.sheets.is_empty() || s.chi != 1 {
        return None;
    }
    let roots: BTreeSet<usize> = (0..s.comps.len()).map(|c| s.root(c)).collect();
    if roots.len() > 1 {
        return None;
    }
    let start = cycle.iter().position(|i| matches!(i, Item::Pos(_)))?;
    let negatives = cycle
        .iter()
        .cycle()
        .skip(start + 1)
        .take(cycle.len() - 1)
        .map(|i| match *i {
            Item::Neg(c) => Some(c),
            Item::Pos(_) => None,
        })
        .collect::<Option<Vec<_>>>()?;
    let boundary_arcs = s
        .half_sides
        .iter()
        .map(|(&arc, &n)| {
            debug_assert!(n % 2 == 0, "arc {arc} entered {n} times");
            (arc, n / 2)
        })
        .collect();
    Some(Disk { positive, negatives, boundary_arcs })
}

fn swap_step(diag: &ResolvedDiagram, j: usize, k: usize, state: &State, out: &mut Vec<State>) {
    let c = diag.crossing_of_step[j].expect("swap moves are crossings");
    let arc = |col: usize, level: usize| diag.arc_of[col][level];
    let options: Vec<Vec<Opt>> = state
        .sheets
        .iter()
        .map(|s| {
            if s.top == k && s.bot == k + 1 {
                vec![Opt::DeathW]
            } else if s.bot == k {
                vec![Opt::Straight, Opt::CornerN]
            } else if s.top == k + 1 {
                vec![Opt::Straight, Opt::CornerS]
            } else if s.top == k || s.bot == k + 1 {
                vec![Opt::Straight]
            } else {
                vec![Opt::Keep]
            }
        })
        .collect();
    for choice in product(&options) {
        for birth in [false, true] {
            let deaths = choice.iter().filter(|&&o| o == Opt::DeathW).count();
            let positives = deaths + birth as usize + state.positive.is_some() as usize;
            if positives > 1 {
                continue;
            }
            let mut st = state.clone();
            let mut sheets = Vec::with_capacity(st.sheets.len() + 1);
            let mut joins = Vec::new();
            for (s, &o) in state.sheets.iter().zip(&choice) {
                let mut s = *s;
                match o {
                    Opt::Keep => {}
                    Opt::DeathW => {
                        st.positive = Some(c);
                        st.touch(arc(j, k));
                        st.touch(arc(j, k + 1));
                        joins.push((s.bot_chain, s.top_chain, Some(Item::Pos(c))));
                        continue;
                    }
                    Opt::Straight if s.bot == k => {
                        s.bot = k + 1;
                        st.touch(arc(j, k));
                        st.touch(arc(j + 1, k + 1));
                    }
                    Opt::CornerN => {
                        st.live(s.bot_chain).push_back(Item::Neg(c));
                        st.touch(arc(j, k));
                        st.touch(arc(j + 1, k));
                    }
                    Opt::Straight if s.top == k + 1 => {
                        s.top = k;
                        st.touch(arc(j, k + 1));
                        st.touch(arc(j + 1, k));
                    }
                    Opt::CornerS => {
                        st.live(s.top_chain).push_front(Item::Neg(c));
                        st.touch(arc(j, k + 1));
                        st.touch(arc(j + 1, k + 1));
                    }
                    Opt::Straight if s.top == k => {
                        s.top = k + 1;
                        st.touch(arc(j, k));
                        st.touch(arc(j + 1, k + 1));
                    }
                    Opt::Straight => {
                        debug_assert_eq!(s.bot, k + 1);
                        s.bot = k;
                        st.touch(arc(j, k + 1));
                        st.touch(arc(j + 1, k));
                    }
                    Opt::Split => unreachable!(),
                }
                sheets.push(s);
            }
            if birth {
                st.positive = Some(c);
                let chain = st.new_chain(VecDeque::from([Item::Pos(c)]));
                let comp = st.new_comp();
                st.chi += 1;
                st.touch(arc(j + 1, k));
                st.touch(arc(j + 1, k + 1));
                sheets.push(Sheet { top: k, bot: k + 1, top_chain: chain, bot_chain: chain, comp });
            }
            st.sheets = sheets;
            if joins.into_iter().all(|(a, b, m)| st.join(a, b, m).is_some()) {
                out.push(st);
            }
        }
    }
}

fn open_step(k: usize, depth: usize, state: &State, out: &mut Vec<State>) {
    let shift = |l: usize| if l < k { l } else { l + 2 };
    let covers = |s: &Sheet| s.top < k && k <= s.bot;
    let options: Vec<Vec<Opt>> =
        state.sheets.iter().map(|s| if covers(s) { vec![Opt::Keep, Opt::Split] } else { vec![Opt::Keep] }).collect();
    for choice in product(&options) {
        // Unsplit sheets still cover the inside of the new cusp.
        let inside = state.sheets.iter().zip(&choice).filter(|(s, &o)| covers(s) && o == Opt::Keep).count();
        for births in 0..=depth.saturating_sub(inside) {
            let mut st = state.clone();
            let mut sheets = Vec::with_capacity(st.sheets.len() + births + 1);
            for (s, &o) in state.sheets.iter().zip(&choice) {
                if o == Opt::Split {
                    let chain = st.new_chain(VecDeque::new());
                    sheets.push(Sheet { top: s.top, bot: k, top_chain: s.top_chain, bot_chain: chain, comp: s.comp });
                    sheets.push(Sheet {
                        top: k + 1,
                        bot: s.bot + 2,
                        top_chain: chain,
                        bot_chain: s.bot_chain,
                        comp: s.comp,
                    });
                } else {
                    sheets.push(Sheet { top: shift(s.top), bot: shift(s.bot), ..*s });
                }
            }
            for _ in 0..births {
                let chain = st.new_chain(VecDeque::new());
                let comp = st.new_comp();
                st.chi += 1;
                sheets.push(Sheet { top: k, bot: k + 1, top_chain: chain, bot_chain: chain, comp });
            }
            st.sheets = sheets;
            out.push(st);
        }
    }
}

fn close_step(k: usize, state: &State, out: &mut Vec<State>) {
    let shift = |l: usize| if l < k { l } else { l - 2 };
    let mut st = state.clone();
    let mut kept = Vec::new();
    let mut uppers = Vec::new();
    let mut lowers = Vec::new();
    let mut joins = Vec::new();
    for s in &state.sheets {
        if s.top == k && s.bot == k + 1 {
            joins.push((s.bot_chain, s.top_chain));
        } else if s.bot == k {
            uppers.push(*s);
        } else if s.top == k + 1 {
            lowers.push(*s);
        } else if s.top == k || s.bot == k + 1 {
            return;
        } else {
            kept.push(Sheet { top: shift(s.top), bot: shift(s.bot), ..*s });
        }
    }
    if uppers.len() != lowers.len() {
        return;
    }
    for (a, b) in joins {
        if st.join(a, b, None).is_none() {
            return;
        }
    }
    for pairing in matchings(uppers.len()) {
        let mut st = st.clone();
        let mut sheets = kept.clone();
        let mut ok = true;
        for (ui, &li) in pairing.iter().enumerate() {
            let (a, b) = (uppers[ui], lowers[li]);
            // A merge that closes the circle would leave a hole in the disk.
            if st.join(a.bot_chain, b.top_chain, None) != Some(false) {
                ok = false;
                break;
            }
            st.chi -= 1;
            st.unite(a.comp, b.comp);
            sheets.push(Sheet { top: a.top, bot: b.bot - 2, top_chain: a.top_chain, bot_chain: b.bot_chain, comp: a.comp });
        }
        if ok {
            st.sheets = sheets;
            out.push(st);
        }
    }
}
