use proptest::prelude::*;

use polarorder::chain_cover::{minimum_chain_partition, parse_partition, to_text};
use polarorder::constructor::{code_dimension, fp_construct_with, fp_naive, fr_construct_with};
use polarorder::index_poset::{precedes, rank_of};
use polarorder::{BmsChannel, ChannelIndex, Execution};

fn index(max_n: u32) -> impl Strategy<Value = ChannelIndex> {
    (1..=max_n).prop_flat_map(|n| (0..1u32 << n).prop_map(move |v| ChannelIndex::new(n, v).unwrap()))
}

fn triple(max_n: u32) -> impl Strategy<Value = (u32, u32, u32, u32)> {
    (1..=max_n).prop_flat_map(|n| (Just(n), 0..1u32 << n, 0..1u32 << n, 0..1u32 << n))
}

proptest! {
    #[test]
    fn expansion_round_trips(i in index(20)) {
        let bits = i.binary_expansion();
        prop_assert_eq!(bits.len() as u32, i.levels());
        prop_assert_eq!(ChannelIndex::from_bits(&bits).unwrap(), i);
    }

    #[test]
    fn operators_move_up(i in index(16)) {
        for j in i.one_step_successors() {
            prop_assert!(j.value() > i.value());
            prop_assert!(i.is_degraded(j).unwrap());
            prop_assert!(rank_of(j.value()) > rank_of(i.value()));
        }
        for k in 1..=i.levels() {
            let a = i.apply_addition(k).unwrap();
            prop_assert!(a.value() >= i.value());
            prop_assert!(i.is_degraded(a).unwrap());
        }
        for k in 2..=i.levels() {
            let l = i.apply_left_swap(k).unwrap();
            prop_assert!(l.value() >= i.value());
            prop_assert!(i.is_degraded(l).unwrap());
        }
        prop_assert!(i.apply_left_swap(1).is_err());
    }

    #[test]
    fn order_axioms((_n, a, b, c) in triple(12)) {
        prop_assert!(precedes(a, a));
        if precedes(a, b) && precedes(b, a) {
            prop_assert_eq!(a, b);
        }
        if precedes(a, b) && precedes(b, c) {
            prop_assert!(precedes(a, c));
        }
        if precedes(a, b) {
            prop_assert!(a <= b);
            prop_assert!(rank_of(a) <= rank_of(b));
        }
    }

    #[test]
    fn ones_set_view_agrees(i in index(14), raw in any::<u32>()) {
        let j = ChannelIndex::new(i.levels(), raw & ((1u32 << i.levels()) - 1)).unwrap();
        let (si, sj) = (i.to_ones_set(), j.to_ones_set());
        prop_assert_eq!(si.to_index(), i);
        prop_assert_eq!(si.rank(), i.rank());
        prop_assert_eq!(si.is_dominated_by(&sj), i.is_degraded(j).unwrap());
    }

    #[test]
    fn fp_result_is_an_up_set(n in 2u32..=8, eps in 0.05f64..0.95, gamma in 0.001f64..0.999) {
        let ch = BmsChannel::bec(eps).unwrap();
        let selected = fp_naive(&ch, n, gamma).unwrap();
        let mut member = vec![false; 1 << n];
        for &i in &selected {
            member[i as usize] = true;
        }
        for a in 0..1u32 << n {
            for b in 0..1u32 << n {
                if member[a as usize] && precedes(a, b) {
                    prop_assert!(member[b as usize], "{} selected but {} is not", a, b);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parallel_matches_sequential(n in 2u32..=9, eps in 0.05f64..0.95, gamma in 0.001f64..0.999, rate in 0.1f64..0.9) {
        let seq = minimum_chain_partition(n, 12, Execution::Sequential).unwrap();
        let par = minimum_chain_partition(n, 12, Execution::Parallel).unwrap();
        prop_assert_eq!(&seq, &par);
        prop_assert_eq!(parse_partition(&to_text(&seq)).unwrap(), seq.clone());

        let ch = BmsChannel::bec(eps).unwrap();
        prop_assert_eq!(
            fp_construct_with(&ch, n, gamma, &seq, Execution::Sequential).unwrap(),
            fp_construct_with(&ch, n, gamma, &seq, Execution::Parallel).unwrap()
        );
        let fr = |exec| fr_construct_with(&ch, n, rate, &seq, exec).ok();
        if code_dimension(n, rate).is_ok() {
            prop_assert!(fr(Execution::Sequential).is_some());
        }
        prop_assert_eq!(fr(Execution::Sequential), fr(Execution::Parallel));
    }
}
