//! Random plat fronts for property tests and benchmarks.
//!
//! Heights grow geometrically from left to right. Every disk in the resolved
//! diagram has its negative corners to the left of its positive corner, so
//! such heights satisfy the action filtration.

use num_bigint::BigInt;
use rand::Rng;

use crate::front::{ChordGeometry, ChordSpec, FrontEvent, Mode, PlatFront};
use crate::rational::Q;

#[derive(Debug, Clone)]
pub struct SampleOptions {
    /// Upper bound on crossings after resolution (front crossings plus right cusps).
    pub max_crossings: usize,
    pub max_strands: usize,
    /// Attach a synthetic z-landscape to every chord.
    pub geometric: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self { max_crossings: 10, max_strands: 6, geometric: false }
    }
}

/// Draws until the event list is a knot with rotation number zero.
pub fn random_front<R: Rng + ?Sized>(rng: &mut R, opts: &SampleOptions) -> PlatFront {
    loop {
        let events = random_events(rng, opts);
        let chords = random_chords(rng, &events, opts.geometric);
        let mode = if opts.geometric { Mode::Geometric } else { Mode::Combinatorial };
        if let Ok(front) = PlatFront::new("random".into(), mode, events, chords) {
            return front;
        }
    }
}

fn random_events<R: Rng + ?Sized>(rng: &mut R, opts: &SampleOptions) -> Vec<FrontEvent> {
    let budget = rng.gen_range(1..=opts.max_crossings.max(1));
    let mut events = vec![FrontEvent::LeftCusp(1)];
    let (mut n, mut used) = (2usize, 0usize);
    while n > 0 {
        // Every open pair still needs one right cusp.
        let can_cross = used + 1 + n / 2 <= budget;
        let can_open = n + 2 <= opts.max_strands && used + n / 2 < budget;
        let can_close = n > 2 || !(can_cross || can_open);
        let pick = rng.gen_range(0..6);
        if can_cross && (pick < 3 || !(can_open || can_close)) {
            events.push(FrontEvent::Crossing(rng.gen_range(1..n)));
            used += 1;
        } else if can_open && (pick < 5 || !can_close) {
            events.push(FrontEvent::LeftCusp(rng.gen_range(1..=n + 1)));
            n += 2;
        } else {
            events.push(FrontEvent::RightCusp(rng.gen_range(1..n)));
            used += 1;
            n -= 2;
        }
    }
    events
}

fn random_chords<R: Rng + ?Sized>(rng: &mut R, events: &[FrontEvent], geometric: bool) -> Vec<ChordSpec> {
    let mut widths = vec![0usize];
    for e in events {
        let n = *widths.last().unwrap();
        widths.push(match e {
            FrontEvent::LeftCusp(_) => n + 2,
            FrontEvent::RightCusp(_) => n.saturating_sub(2),
            FrontEvent::Crossing(_) => n,
        });
    }
    let mut out = Vec::new();
    let mut scale = Q::from_integer(BigInt::from(1));
    for (j, e) in events.iter().enumerate() {
        if matches!(e, FrontEvent::LeftCusp(_)) {
            continue;
        }
        let jitter = Q::new(BigInt::from(16 + rng.gen_range(0..16)), BigInt::from(16));
        let h = &scale * jitter;
        scale *= Q::from_integer(BigInt::from(16));
        let id = format!("c{}", out.len() + 1);
        if geometric {
            let k = e.slot() - 1;
            let gap = |near: bool| if near { &h / Q::from_integer(2.into()) } else { &h * Q::from_integer(2.into()) };
            let (up, down) = (gap(rng.gen_bool(0.5)), gap(rng.gen_bool(0.5)));
            let mut others: Vec<Q> = (0..widths[j])
                .filter(|&l| l != k && l != k + 1)
                .map(|l| {
                    if l < k {
                        &h + &up * Q::from_integer(BigInt::from(k - l))
                    } else {
                        -(&down * Q::from_integer(BigInt::from(l - k - 1)))
                    }
                })
                .collect();
            others.sort();
            out.push(ChordSpec {
                id,
                height: None,
                geometry: Some(ChordGeometry { x0: None, z_minus: Q::from_integer(0.into()), z_plus: h, other_strand_z: others }),
                assert_extendable: None,
            });
        } else {
            out.push(ChordSpec { id, height: Some(h), geometry: None, assert_extendable: None });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn respects_crossing_budget() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let opts = SampleOptions { max_crossings: 6, ..Default::default() };
        for _ in 0..50 {
            let f = random_front(&mut rng, &opts);
            assert!(f.chords.len() <= 6);
            assert!(f.strand_counts().iter().all(|&n| n <= opts.max_strands));
        }
    }
}
