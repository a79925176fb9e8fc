//! Small hand-written fronts shared by unit tests.

use crate::front::{parse_front, PlatFront};
use crate::sample::{random_front, SampleOptions};
use rand::SeedableRng;

pub fn unknot(r: &str) -> String {
    format!(
        r#"{{"schema":"legcap-front/1","name":"unknot","mode":"geometric",
        "events":[{{"type":"left_cusp","slot":1}},{{"type":"right_cusp","slot":1}}],
        "chords":[{{"id":"a","z_minus":"0","z_plus":"{r}","other_strand_z":[]}}]}}"#
    )
}

pub fn trefoil_combinatorial(b: &[&str; 3], a1: &str, a2: &str) -> String {
    format!(
        r#"{{"schema":"legcap-front/1","name":"trefoil","mode":"combinatorial",
        "events":[{{"type":"left_cusp","slot":1}},{{"type":"left_cusp","slot":1}},
          {{"type":"crossing","slot":2}},{{"type":"crossing","slot":2}},{{"type":"crossing","slot":2}},
          {{"type":"right_cusp","slot":1}},{{"type":"right_cusp","slot":1}}],
        "chords":[{{"id":"b1","height":"{}"}},{{"id":"b2","height":"{}"}},{{"id":"b3","height":"{}"}},
          {{"id":"a1","height":"{a1}"}},{{"id":"a2","height":"{a2}"}}]}}"#,
        b[0], b[1], b[2]
    )
}

pub fn trefoil() -> PlatFront {
    parse_front(&trefoil_combinatorial(&["1/8"; 3], "3/4", "1")).unwrap()
}

/// Unknot, trefoil and a batch of seeded random knots.
pub fn small_fronts() -> Vec<PlatFront> {
    let mut out = vec![parse_front(&unknot("1")).unwrap(), trefoil()];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let opts = SampleOptions { max_crossings: 8, ..SampleOptions::default() };
    out.extend((0..30).map(|_| random_front(&mut rng, &opts)));
    out
}
