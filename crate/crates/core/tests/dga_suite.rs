use legcap_core::dga::build_dga;
use legcap_core::diagram::resolve;
use legcap_core::oracle::brute_force_disk_oracle;
use legcap_core::sample::{random_front, SampleOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_fronts_pass_structural_checks_and_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let opts = SampleOptions { max_crossings: 12, ..Default::default() };
    for i in 0..400 {
        let front = random_front(&mut rng, &opts);
        let dga = build_dga(&front).unwrap_or_else(|e| panic!("front {i} {:?}: {e}", front.events));
        let oracle = brute_force_disk_oracle(&resolve(&front), 12).unwrap();
        assert_eq!(oracle, dga.disks, "front {i} {:?}", front.events);
    }
}
