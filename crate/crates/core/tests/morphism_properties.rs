mod common;

use common::*;
use morifan::fixtures::MapTarget;
use morifan::morphism::verify_subspace_restriction;
use morifan::{
    effective_cone, git_fan, pullback_zariski_check, restrict_fan, verify_restriction, FixtureLibrary,
    Int, PullbackMap, Verdict,
};
use proptest::prelude::*;

fn matrix(rows: &[Vec<i64>]) -> Vec<Vec<Int>> {
    rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

fn injective_map(target: usize, source: usize) -> impl Strategy<Value = PullbackMap> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, source), target)
        .prop_filter_map("not injective", move |rows| PullbackMap::new(source, matrix(&rows)).ok())
}

#[test]
fn shipped_maps_verify_as_expected() {
    for name in FixtureLibrary::map_names() {
        let m = FixtureLibrary::map_fixture(name).unwrap();
        let map = FixtureLibrary::map(name).unwrap();
        let x = fixture(m.source);
        let report = match m.target {
            MapTarget::WeightSystem(y) => verify_restriction(&x, &fixture(y), &map).unwrap(),
            MapTarget::GoldenFan(_) => {
                verify_subspace_restriction(&x, &map, &FixtureLibrary::golden_fan(name).unwrap()).unwrap()
            }
        };
        assert_eq!(report.verdict, m.expected, "{name}: {:?}", report.mismatches);
        assert_eq!(report.mismatches.is_empty(), m.expected == Verdict::Pass);
    }
}

#[test]
fn hirzebruch_target_has_the_same_fan_as_the_blowup() {
    // F1 and Bl1P3 have identical chamber structure, so the restriction
    // matches even though no surjection Bl2P3 -> F1 realizes this map.
    let map = FixtureLibrary::map("bl2p3→bl1p3").unwrap();
    let report = verify_restriction(&fixture("bl2p3"), &fixture("f1"), &map).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    assert_eq!(git_fan(&fixture("f1")), git_fan(&fixture("bl1p3")));
}

#[test]
fn pullbacks_commute_with_zariski_decomposition() {
    for (name, x, y) in [("bl2p3→bl1p3", "bl2p3", "bl1p3"), ("bl2p3→p3", "bl2p3", "p3"), ("bl1p3→p3", "bl1p3", "p3")] {
        let (x, y) = (fixture(x), fixture(y));
        let map = FixtureLibrary::map(name).unwrap();
        let range = 0..=4i64;
        let mut ds: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..y.rank() {
            ds = ds.iter().flat_map(|d| range.clone().map(move |k| [d.clone(), vec![k]].concat())).collect();
        }
        for d in ds {
            let d = v(&d);
            if effective_cone(&y).contains(&d) {
                assert!(pullback_zariski_check(&x, &y, &map, &d).unwrap(), "{name} {d}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn restrictions_are_fans(f in (1usize..=3).prop_flat_map(|k| injective_map(3, k))) {
        let x = fixture("bl2p3");
        let fan = git_fan(&x);
        let r = restrict_fan(fan, &f).unwrap();
        prop_assert!(r.is_fan());
        for c in r.cones() {
            for face in c.faces() {
                prop_assert!(r.contains_cone(&face));
            }
        }
    }

    #[test]
    fn restriction_along_identity_is_trivial(ws in weight_systems(3, 6)) {
        let fan = git_fan(&ws);
        prop_assert_eq!(&restrict_fan(fan, &PullbackMap::identity(ws.rank())).unwrap(), fan);
    }

    #[test]
    fn restriction_composes(f in injective_map(3, 2), g in injective_map(2, 1)) {
        let x = fixture("bl2p3");
        let fan = git_fan(&x);
        let stepwise = restrict_fan(&restrict_fan(fan, &f).unwrap(), &g).unwrap();
        let direct = restrict_fan(fan, &f.compose(&g).unwrap()).unwrap();
        prop_assert_eq!(stepwise, direct);
    }
}
