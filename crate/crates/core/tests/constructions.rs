use divgraceful::check::{check_alpha, check_d_graceful, edge_differences};
use divgraceful::construct::{construct, layer_pattern, seed_matches, Family};
use divgraceful::decomp::{base_blocks, difference_certificate};
use divgraceful::io::{GraphDescriptor, LabelingCertificate};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![1u64, 2, 4])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn families_hold_beyond_the_acceptance_grid(k in 1usize..=12, m in 2usize..=8, c in family()) {
        let fam = Family::with_multiplier(c, k).unwrap();
        let built = construct(k, m, fam).unwrap();
        let params = check_d_graceful(&built.grid, &built.labeling, built.d).unwrap();
        check_alpha(&built.grid, &built.labeling).unwrap();
        prop_assert!(seed_matches(&built.grid, &built.labeling, fam).is_ok());

        // each block P^t holds exactly q differences
        let diffs = edge_differences(&built.grid, &built.labeling);
        for t in 0..params.d {
            let block = params.block(t);
            let hits = diffs.iter().filter(|x| block.contains(x)).count() as u64;
            prop_assert_eq!(hits, params.q);
        }
    }

    #[test]
    fn top_layer_pattern_has_lows_on_odd_positions(k in 1usize..=12, m in 2usize..=8, c in family()) {
        let fam = Family::with_multiplier(c, k).unwrap();
        let built = construct(k, m, fam).unwrap();
        let start = seed_matches(&built.grid, &built.labeling, fam).unwrap();
        let ceiling = fam.shift(k) * (2 * m as u64 - 1);
        let pattern = layer_pattern(fam, k, ceiling).unwrap();
        let top = built.labeling.layer(&built.grid, m);
        let len = top.len();
        for t in 0..len {
            prop_assert_eq!(top[(start - 1 + t) % len], pattern.sequence[t]);
        }
        prop_assert!(pattern.sequence.iter().step_by(2).all(|&x| x <= 2 * k as u64));
    }

    #[test]
    fn difference_certificate_holds(k in 1usize..=6, m in 2usize..=5, c in family(), n in 1u64..=4) {
        let fam = Family::with_multiplier(c, k).unwrap();
        let built = construct(k, m, fam).unwrap();
        let cert = check_alpha(&built.grid, &built.labeling).unwrap();
        let dec = base_blocks(&built.grid, &built.labeling, Some(&cert), built.d, n).unwrap();
        prop_assert!(difference_certificate(&dec).is_ok());
        prop_assert_eq!(dec.host.v, 2 * built.d * n * (dec.q + 1));
    }

    #[test]
    fn certificates_round_trip(k in 1usize..=4, m in 2usize..=4, c in family(), with_alpha in any::<bool>()) {
        let fam = Family::with_multiplier(c, k).unwrap();
        let built = construct(k, m, fam).unwrap();
        let alpha = check_alpha(&built.grid, &built.labeling).unwrap();
        let cert = LabelingCertificate::new(
            GraphDescriptor::of_grid(&built.grid),
            built.d,
            &built.labeling,
            with_alpha.then_some(&alpha),
        );
        let text = cert.to_json();
        let back = LabelingCertificate::from_json(&text).unwrap();
        prop_assert_eq!(&back, &cert);
        prop_assert_eq!(back.to_json(), text);
        prop_assert!(back.verify(true).is_ok());
    }
}
