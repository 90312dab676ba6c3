use platkit::braid::{braids_equal, Letter};
use platkit::invariants::invariant;
use platkit::moves::{
    apply_double_coset, apply_flip, garside_slide, hilden_letters, micro_flip, pocket_move, End, FlipCase,
    HildenLetter, HildenWord, IsotopyRewrite, MoveLog, MoveRecord,
};
use platkit::plat::{component_count, PlatPresentation};
use platkit::BraidWord;
use proptest::prelude::*;

fn letters(strands: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec((1..strands, any::<bool>()), 0..=max_len)
        .prop_map(|ls| ls.into_iter().map(|(i, s)| if s { Letter::pos(i) } else { Letter::neg(i) }).collect())
}

fn plat_strategy(max_n: usize, max_len: usize) -> impl Strategy<Value = PlatPresentation> {
    (1..=max_n).prop_flat_map(move |n| letters(2 * n, max_len).prop_map(move |w| PlatPresentation::from_letters(n, w).unwrap()))
}

fn end_strategy() -> impl Strategy<Value = End> {
    prop_oneof![Just(End::Top), Just(End::Bottom)]
}

fn hilden_for(n: usize, picks: &[(prop::sample::Index, bool)]) -> HildenWord {
    let gens = hilden_letters(n);
    let ls: Vec<HildenLetter> = picks
        .iter()
        .map(|(ix, inv)| {
            let l = gens[ix.index(gens.len())];
            if *inv {
                l.inverted()
            } else {
                l
            }
        })
        .collect();
    HildenWord::new(2 * n, ls).unwrap()
}

fn hilden_picks() -> impl Strategy<Value = Vec<(prop::sample::Index, bool)>> {
    proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn double_coset_keeps_link(p in plat_strategy(3, 8), picks in hilden_picks(), end in end_strategy()) {
        let h = hilden_for(p.bridge_index(), &picks);
        let q = apply_double_coset(&p, end, &h).unwrap();
        prop_assert_eq!(q.bridge_index(), p.bridge_index());
        prop_assert_eq!(component_count(&q), component_count(&p));
        prop_assert_eq!(invariant(&q), invariant(&p));
    }

    #[test]
    fn flips_keep_link(
        p in plat_strategy(3, 6),
        case_ix in 0..6usize,
        cut in any::<prop::sample::Index>(),
        split in any::<prop::sample::Index>(),
        end in end_strategy(),
    ) {
        let case = FlipCase::ALL[case_ix];
        let cuts = case.cuts(p.bridge_index());
        let k = cuts[cut.index(cuts.len())];
        let split_at = split.index(p.word().len() + 1);
        let q = apply_flip(&p, split_at, case, k, end).unwrap();
        prop_assert_eq!(invariant(&q), invariant(&p));
    }

    #[test]
    fn micro_flips_keep_link_when_legal(
        p in plat_strategy(3, 6),
        band in 1..=3usize,
        start in any::<prop::sample::Index>(),
        case_ix in 0..6usize,
        split in any::<prop::sample::Index>(),
        end in end_strategy(),
    ) {
        let n = p.bridge_index();
        let k = 2 * band.min(n);
        let position = 2 * start.index(n - k / 2 + 1) + 1;
        let case = FlipCase::ALL[case_ix];
        let cut = case.cuts(k / 2)[0];
        let split_at = split.index(p.word().len() + 1);
        // a band crossed by the turned half is rejected, anything else must keep the link
        if let Ok(q) = micro_flip(&p, split_at, k, position, case, cut, end) {
            prop_assert_eq!(invariant(&q), invariant(&p));
            prop_assert_eq!(q.bridge_index(), n);
        }
    }

    #[test]
    fn pocket_log_replays(p in plat_strategy(3, 6), picks in hilden_picks(), side in end_strategy()) {
        let h = hilden_for(p.bridge_index(), &picks);
        let (q, log) = pocket_move(&p, side, &h).unwrap();
        prop_assert_eq!(log.replay().unwrap(), q.clone());
        prop_assert!(log.records.iter().all(MoveRecord::keeps_bridge_index));
        prop_assert_eq!(invariant(&q), invariant(&p));
    }

    #[test]
    fn stabilization_changes_index_by_one(p in plat_strategy(3, 6)) {
        let s = MoveRecord::Stabilize.apply(&p).unwrap();
        prop_assert_eq!(s.bridge_index(), p.bridge_index() + 1);
        let back = MoveRecord::Destabilize.apply(&s).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn rewrites_keep_link(p in plat_strategy(3, 10), at in any::<prop::sample::Index>()) {
        let len = p.word().len();
        prop_assume!(len >= 3);
        let at = at.index(len - 2);
        for rewrite in [
            IsotopyRewrite::FreeReduce,
            IsotopyRewrite::Commute { at },
            IsotopyRewrite::BraidRelation { at },
        ] {
            let rec = MoveRecord::IsotopyRewrite { rewrite };
            if let Ok(q) = rec.apply(&p) {
                prop_assert!(braids_equal(q.word(), p.word()).unwrap());
                prop_assert_eq!(invariant(&q), invariant(&p));
            }
        }
    }

    #[test]
    fn garside_words_agree(n in 1..=3usize, a in letters(6, 5), b in letters(6, 5)) {
        let keep = |w: Vec<Letter>| BraidWord::new(2 * n, w.into_iter().filter(|l| l.index < 2 * n).collect()).unwrap();
        let (first, second) = garside_slide(&keep(a), &keep(b), n).unwrap();
        prop_assert!(braids_equal(first.word(), second.word()).unwrap());
    }

    #[test]
    fn json_round_trips(p in plat_strategy(3, 8), picks in hilden_picks(), case_ix in 0..6usize) {
        let h = hilden_for(p.bridge_index(), &picks);
        let log = MoveLog {
            initial: p.clone(),
            records: vec![
                MoveRecord::DoubleCosetTop { hilden: h.clone() },
                MoveRecord::Pocket { side: End::Bottom, hilden: h },
                MoveRecord::Flip { split_at: 0, case: FlipCase::ALL[case_ix], k: FlipCase::ALL[case_ix].cuts(p.bridge_index())[0], end: End::Top },
                MoveRecord::IsotopyRewrite { rewrite: IsotopyRewrite::FreeReduce },
            ],
        };
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<PlatPresentation>(&text).unwrap(), p);
        let text = serde_json::to_string(&log).unwrap();
        prop_assert_eq!(serde_json::from_str::<MoveLog>(&text).unwrap(), log.clone());
        prop_assert!(log.replay().is_ok());
    }
}
