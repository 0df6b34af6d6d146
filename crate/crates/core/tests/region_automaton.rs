mod common;

use common::*;
use ecta::automaton::{bounded_untimed_language, initial_state};
use ecta::clock::rat;
use ecta::{
    build, decompose, discrete_step, region_of, state_count_bound, BuildMode, Clock, ExtendedState,
    Quantifier, RegionAutomaton, RegionVariant, Symbol, Valuation,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::IteratorRandom;

fn mode(q: Quantifier, v: RegionVariant) -> BuildMode {
    BuildMode::new(q, v)
}

/// Does some prediction of the next `letter` take `v` at `from` into
/// `to`'s region, firing as soon as the prophecy clock hits 0?
fn witnessed(
    ra: &RegionAutomaton,
    a: &ecta::Ecta,
    v: &Valuation,
    from: usize,
    letter: &Symbol,
    to: usize,
) -> bool {
    let (src, dst) = (&ra.states()[from], &ra.states()[to]);
    let p = Clock::prophecy(letter.clone());
    let Some(t) = v.value(&p).unwrap().cloned() else {
        return false;
    };
    let Ok(at_fire) = v.elapse(&t) else {
        return false;
    };
    let state = ExtendedState {
        location: src.location.clone(),
        valuation: at_fire,
    };
    let top = ra.cmax() as i64 + 2;
    std::iter::once(None)
        .chain((0..=64 * top).map(|k| Some(rat(k, 64))))
        .any(|next| {
            discrete_step(a, &state, letter, next)
                .unwrap()
                .iter()
                .any(|s| {
                    s.location == dst.location
                        && region_of(&s.valuation, ra.cmax(), dst.region.variant()) == dst.region
                })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn languages_nest(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_ecta(&mut rng, 2, 1);
        let k = 3;
        let zones = bounded_untimed_language(&a, &[initial_state(&a)], k).unwrap();
        let lang = |m: BuildMode| build(&a, 1, m).unwrap().bounded_language(k);
        let ec = lang(mode(Quantifier::Existential, RegionVariant::Classic));
        let er = lang(mode(Quantifier::Existential, RegionVariant::Refined));
        let uc = lang(mode(Quantifier::Universal, RegionVariant::Classic));
        let ur = lang(mode(Quantifier::Universal, RegionVariant::Refined));
        prop_assert_eq!(&ec, &zones);
        prop_assert!(er.is_subset(&ec), "refined adds {:?}", er.difference(&ec).collect::<Vec<_>>());
        prop_assert!(uc.is_subset(&ec));
        prop_assert!(ur.is_subset(&er));
    }

    #[test]
    fn edges_have_concrete_witnesses(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_ecta(&mut rng, 2, 1);
        for q in [Quantifier::Existential, Quantifier::Universal] {
            let ra = build(&a, 1, mode(q, RegionVariant::Classic)).unwrap();
            prop_assert!(BigUint::from(ra.states().len()) <= state_count_bound(&a, 1));
            for (from, letter, to) in ra.edges().iter().choose_multiple(&mut rng, 12) {
                let src = &ra.states()[*from];
                let label = format!("{q}: {} -{}-> {}", src, letter, ra.states()[*to]);
                // classic regions forget diagonals above cmax, so probe one
                // point per refined piece
                let points: Vec<Valuation> = decompose(&src.region.to_zone(), 1, RegionVariant::Refined)
                    .unwrap()
                    .iter()
                    .map(|r| r.sample().unwrap())
                    .collect();
                let hits = points.iter().filter(|v| witnessed(&ra, &a, v, *from, letter, *to)).count();
                prop_assert!(hits > 0, "{} has no witness", label);
                if q == Quantifier::Universal {
                    prop_assert_eq!(hits, points.len(), "{} fails somewhere", label);
                }
            }
        }
    }
}
