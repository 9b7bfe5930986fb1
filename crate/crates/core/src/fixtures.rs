//! Weight systems and maps shipped with the crate.
//!
//! The central example is the blow-up of `P^3` in two torus-fixed points,
//! with classes written in the basis `H, E1, E2`. Its two small modifications
//! have semi-ample cones `cone{H, H-E1, H-E2}` and `cone{H-E1, H-E2, H-E1-E2}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::fan::Fan;
use crate::io::{FanDocument, MapFile, WeightFile};
use crate::git::WeightSystem;
use crate::morphism::{PullbackMap, Verdict};

const WEIGHT_FILES: [(&str, &str); 6] = [
    ("p2", include_str!("../fixtures/p2.json")),
    ("p1xp1", include_str!("../fixtures/p1xp1.json")),
    ("f1", include_str!("../fixtures/f1.json")),
    ("p3", include_str!("../fixtures/p3.json")),
    ("bl1p3", include_str!("../fixtures/bl1p3.json")),
    ("bl2p3", include_str!("../fixtures/bl2p3.json")),
];

/// A map `f*: Pic(Y) -> Pic(X)` for a named pair `X→Y`.
#[derive(Clone, Copy, Debug)]
pub struct MapFixture {
    pub name: &'static str,
    /// The weight system of `X`.
    pub source: &'static str,
    /// The weight system of `Y`, or the golden fan file when `Y` is given
    /// only as a subspace of `Pic(X)`.
    pub target: MapTarget,
    pub map_file: &'static str,
    pub expected: Verdict,
}

#[derive(Clone, Copy, Debug)]
pub enum MapTarget {
    WeightSystem(&'static str),
    GoldenFan(&'static str),
}

const MAPS: [MapFixture; 5] = [
    MapFixture {
        name: "bl2p3→bl1p3",
        source: "bl2p3",
        target: MapTarget::WeightSystem("bl1p3"),
        map_file: include_str!("../fixtures/maps/bl2p3-bl1p3.json"),
        expected: Verdict::Pass,
    },
    MapFixture {
        name: "bl2p3→p3",
        source: "bl2p3",
        target: MapTarget::WeightSystem("p3"),
        map_file: include_str!("../fixtures/maps/bl2p3-p3.json"),
        expected: Verdict::Pass,
    },
    MapFixture {
        name: "bl1p3→p3",
        source: "bl1p3",
        target: MapTarget::WeightSystem("p3"),
        map_file: include_str!("../fixtures/maps/bl1p3-p3.json"),
        expected: Verdict::Pass,
    },
    // The quotient by the involution exchanging the two exceptional divisors,
    // seen through its class space spanned by H and E1+E2.
    MapFixture {
        name: "bl2p3→z2quot",
        source: "bl2p3",
        target: MapTarget::GoldenFan(include_str!("../fixtures/golden/z2quot.fan.json")),
        map_file: include_str!("../fixtures/maps/bl2p3-z2quot.json"),
        expected: Verdict::Pass,
    },
    // No surjection realizes this map: the effective cones already differ.
    MapFixture {
        name: "bl2p3→p1xp1",
        source: "bl2p3",
        target: MapTarget::WeightSystem("p1xp1"),
        map_file: include_str!("../fixtures/maps/bl2p3-p1xp1.json"),
        expected: Verdict::Fail,
    },
];

pub struct FixtureLibrary;

fn library() -> &'static BTreeMap<&'static str, WeightSystem> {
    static LIB: OnceLock<BTreeMap<&'static str, WeightSystem>> = OnceLock::new();
    LIB.get_or_init(|| {
        WEIGHT_FILES
            .iter()
            .map(|(name, text)| {
                let ws = WeightFile::parse(text)
                    .and_then(|f| f.to_weight_system())
                    .unwrap_or_else(|e| panic!("fixture {name}: {e}"));
                (*name, ws)
            })
            .collect()
    })
}

impl FixtureLibrary {
    pub fn weight_names() -> impl Iterator<Item = &'static str> {
        WEIGHT_FILES.iter().map(|(n, _)| *n)
    }

    pub fn map_names() -> impl Iterator<Item = &'static str> {
        MAPS.iter().map(|m| m.name)
    }

    pub fn weight_text(name: &str) -> Option<&'static str> {
        WEIGHT_FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
    }

    /// Clones share the derived data computed on any of them.
    pub fn weight_system(name: &str) -> Option<WeightSystem> {
        library().get(name).cloned()
    }

    /// Accepts `->` in place of `→`.
    pub fn map_fixture(name: &str) -> Option<&'static MapFixture> {
        let name = name.replace("->", "→");
        MAPS.iter().find(|m| m.name == name)
    }

    pub fn map(name: &str) -> Option<PullbackMap> {
        let m = Self::map_fixture(name)?;
        Some(MapFile::parse(m.map_file).and_then(|f| f.to_map()).expect("valid fixture map"))
    }

    /// The expected fan of a target given only as a subspace.
    pub fn golden_fan(name: &str) -> Option<Fan> {
        let m = Self::map_fixture(name)?;
        let MapTarget::GoldenFan(text) = m.target else { return None };
        let rank = Self::map(name)?.source_rank();
        Some(FanDocument::parse(text).and_then(|d| d.to_fan(rank)).expect("valid golden fan"))
    }
}
