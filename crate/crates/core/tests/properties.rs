use legcap_core::bounds::{width_at_level, width_report, width_report_from, Level};
use legcap_core::capacity::{capacity, capacity_spectrum, MarkedPoint};
use legcap_core::dga::build_dga;
use legcap_core::front::{extract_chords, is_doubly_extendable, scale_heights, PlatFront};
use legcap_core::linearize::DEFAULT_MAX_DEG0;
use legcap_core::rational::{parse_rational, to_f64, Q};
use legcap_core::sample::{random_front, SampleOptions};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn front(seed: u64, geometric: bool) -> PlatFront {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_front(&mut rng, &SampleOptions { max_crossings: 8, geometric, ..Default::default() })
}

fn ratio() -> impl Strategy<Value = Q> {
    (1i64..12, 1i64..12).prop_map(|(n, d)| parse_rational(&format!("{n}/{d}")).unwrap())
}

fn level() -> impl Strategy<Value = Level> {
    (-6i64..6, 1i64..5, ratio()).prop_map(|(n, d, log)| Level { lin: parse_rational(&format!("{n}/{d}")).unwrap(), log })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scaling_composes(seed in any::<u64>(), s in ratio(), t in ratio()) {
        let f = front(seed, true);
        let twice = scale_heights(&scale_heights(&f, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(twice, scale_heights(&f, &(&s * &t)).unwrap());
    }

    #[test]
    fn width_bounds_scale_with_heights(seed in any::<u64>(), t in ratio()) {
        let f = front(seed, true);
        let base = width_report(&f, DEFAULT_MAX_DEG0).unwrap();
        let scaled = width_report(&scale_heights(&f, &t).unwrap(), DEFAULT_MAX_DEG0).unwrap();
        let times = |x: &Option<Q>| x.as_ref().map(|x| x * &t);
        prop_assert_eq!(scaled.lower, times(&base.lower));
        prop_assert_eq!(scaled.c_min, times(&base.c_min));
        prop_assert_eq!(scaled.c_max, times(&base.c_max));
        prop_assert_eq!(scaled.exact, times(&base.exact));
    }

    // Clearing strands out of a window can only help.
    #[test]
    fn extendability_is_monotone_in_obstructions(seed in any::<u64>(), keep in prop::collection::vec(any::<bool>(), 16)) {
        let f = front(seed, true);
        let chords = extract_chords(&f).unwrap();
        for (chord, spec) in chords.iter().zip(&f.chords) {
            let g = spec.geometry.as_ref().unwrap();
            let full = is_doubly_extendable(chord, g);
            let mut thinned = g.clone();
            thinned.other_strand_z = g.other_strand_z.iter().zip(keep.iter().cycle()).filter(|(_, k)| **k).map(|(z, _)| z.clone()).collect();
            let fewer = is_doubly_extendable(chord, &thinned);
            prop_assert!(fewer.up || !full.up);
            prop_assert!(fewer.down || !full.down);
        }
    }

    #[test]
    fn levels_add(seed in any::<u64>(), a in level(), b in level()) {
        let report = width_report(&front(seed, true), DEFAULT_MAX_DEG0).unwrap();
        let stepwise = width_at_level(&width_at_level(&report, &a), &b);
        let direct = width_at_level(&report, &(&a + &b));
        prop_assert_eq!(&stepwise.level, &direct.level);
        prop_assert_eq!(stepwise.lower_at_level(), direct.lower_at_level());
        prop_assert_eq!(stepwise.upper_at_level(), direct.upper_at_level());
        if let Some(lower) = stepwise.lower_at_level() {
            let expected = report.lower_at_level().unwrap().to_f64() * (to_f64(&a.lin) + to_f64(&b.lin)).exp() * to_f64(&a.log) * to_f64(&b.log);
            prop_assert!((lower.to_f64() - expected).abs() <= 1e-9 * expected.abs().max(1.0));
        }
    }

    // A level ln(t) and scaling every height by t are two routes to the same bounds.
    #[test]
    fn level_matches_scaling(seed in any::<u64>(), t in ratio()) {
        let f = front(seed, true);
        let lifted = width_at_level(&width_report(&f, DEFAULT_MAX_DEG0).unwrap(), &Level { lin: Q::from_integer(0.into()), log: t.clone() });
        let scaled = width_report(&scale_heights(&f, &t).unwrap(), DEFAULT_MAX_DEG0).unwrap();
        let exact = |x: Option<legcap_core::bounds::Scaled>| x.map(|s| s.exact().cloned().unwrap());
        prop_assert_eq!(exact(lifted.lower_at_level()), scaled.lower.clone());
        prop_assert_eq!(exact(lifted.upper_at_level()), scaled.upper_min_aug());
        prop_assert_eq!(exact(lifted.exact_at_level()), scaled.exact);
    }

    // The report, the spectrum and per-augmentation capacities agree.
    #[test]
    fn routes_agree(seed in any::<u64>()) {
        let f = front(seed, true);
        let dga = build_dga(&f).unwrap();
        let spectrum = capacity_spectrum(&dga, DEFAULT_MAX_DEG0, MarkedPoint { arc: 0 });
        if let Ok(s) = &spectrum {
            for e in &s.entries {
                prop_assert_eq!(&capacity(&dga, &e.augmentation, &e.cocycle).unwrap().value, &e.result.value);
                prop_assert!(s.c_min <= e.result.value && e.result.value <= s.c_max);
            }
        }
        let via_spectrum = width_report_from(&f, &dga, spectrum).unwrap();
        prop_assert_eq!(via_spectrum, width_report(&f, DEFAULT_MAX_DEG0).unwrap());
    }
}
