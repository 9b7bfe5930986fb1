mod common;

use common::*;
use morifan::{common_refinement, Cone, Error, Location, Rat, RationalVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pointed_cone() -> impl Strategy<Value = Cone> {
    generator_sets(4, 8).prop_filter_map("not pointed", |gens| {
        let rank = gens.first().map_or(1, Vec::len);
        Cone::from_generators(rank, &to_vectors(&gens)).ok()
    })
}

fn full_cone() -> impl Strategy<Value = Cone> {
    pointed_cone().prop_filter("not full-dimensional", Cone::is_full_dimensional)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rays_round_trip(c in pointed_cone()) {
        let again = Cone::from_generators(c.ambient(), &c.ray_vectors()).unwrap();
        prop_assert_eq!(again, c);
    }

    #[test]
    fn generators_lie_in_the_cone(gens in generator_sets(4, 8)) {
        let rank = gens.first().map_or(1, Vec::len);
        let vs = to_vectors(&gens);
        match Cone::from_generators(rank, &vs) {
            Ok(c) => {
                for g in &vs {
                    prop_assert!(c.contains(g));
                }
                for r in c.ray_vectors() {
                    prop_assert!(lp_member(&vs, &r));
                }
            }
            Err(Error::NonPointed { witness }) => {
                let w = RationalVector::from_int_vec(&witness);
                prop_assert!(!w.is_zero());
                prop_assert!(lp_member(&vs, &w));
                prop_assert!(lp_member(&vs, &-&w));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn double_dual(c in full_cone()) {
        let dd = c.dual().unwrap().dual().unwrap();
        prop_assert_eq!(dd, c);
    }

    #[test]
    fn face_lattice_is_closed(c in pointed_cone()) {
        let faces = c.faces();
        for a in &faces {
            prop_assert!(a.is_face_of(&c));
            for b in &faces {
                prop_assert!(faces.contains(&a.intersect(b)));
            }
        }
    }

    #[test]
    fn membership_matches_lp(c in pointed_cone(), x in prop::collection::vec(-4i64..=4, 4)) {
        let x = v(&x[..c.ambient()]);
        prop_assert_eq!(c.contains(&x), lp_member(&c.ray_vectors(), &x));
        match c.locate(&x) {
            Location::RelativeInterior => {
                prop_assert!(c.in_relative_interior(&x));
                for f in c.facets() {
                    prop_assert!(x.dot_int(f) > Rat::from_integer(0.into()));
                }
            }
            Location::OnFace(face) => {
                prop_assert!(face.is_face_of(&c) && face != c);
                prop_assert!(face.in_relative_interior(&x));
            }
            Location::Outside => prop_assert!(!c.contains(&x)),
        }
    }

    #[test]
    fn refinement_covers_and_is_a_fan(
        within in full_cone(),
        picks in prop::collection::vec(prop::collection::vec(0usize..8, 1..=3), 1..=3),
        seed in any::<u64>(),
    ) {
        let rays = within.ray_vectors();
        let inputs: Vec<Cone> = picks
            .iter()
            .map(|p| {
                let gens: Vec<RationalVector> = p.iter().map(|&i| rays[i % rays.len()].clone()).collect();
                Cone::from_generators(within.ambient(), &gens).unwrap()
            })
            .collect();
        let fan = common_refinement(&inputs, &within);
        prop_assert!(fan.is_fan());
        prop_assert_eq!(fan.support_cone(), within.clone());
        for c in fan.cones() {
            for f in c.faces() {
                prop_assert!(fan.contains_cone(&f));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let x = cone_sample(&within, &mut rng);
            prop_assert!(fan.maximal_cones().any(|m| m.contains(&x)));
            // Membership in each input is constant on the open cone containing x.
            let i = fan.locate(&x).unwrap();
            let y = relative_interior_sample(&fan.cones()[i], &mut rng);
            for input in &inputs {
                prop_assert_eq!(input.contains(&x), input.contains(&y));
            }
        }
    }
}

#[test]
fn fixture_duals() {
    for (name, ws) in fixtures() {
        let eff = morifan::effective_cone(&ws);
        assert_eq!(eff.dual().unwrap().dual().unwrap(), *eff, "{name}");
    }
}

#[test]
fn spec_refinement_example() {
    let q = cone(&[&[1, 0], &[0, 1]]);
    let fan = common_refinement(&[q.clone(), cone(&[&[1, 1], &[0, 1]])], &q);
    let max: Vec<&Cone> = fan.maximal_cones().collect();
    assert_eq!(max.len(), 2);
    assert!(max.contains(&&cone(&[&[1, 0], &[1, 1]])));
    assert!(max.contains(&&cone(&[&[1, 1], &[0, 1]])));
}
