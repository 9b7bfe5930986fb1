mod common;

use common::*;
use morifan::mori::{certify_sections, SectionCheck};
use morifan::{
    chamber_info, effective_cone, git_fan, h0, moving_cone, strong_mori_equivalent, zariski, Error,
    Rat, RationalVector, WeightSystem,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Counts exponent vectors by brute force over a box.
fn h0_brute(ws: &WeightSystem, d: &[i64], bound: i64) -> u64 {
    let n = ws.num_generators();
    let classes: Vec<Vec<i64>> = (0..n)
        .map(|i| ws.class(i).iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect();
    let mut count = 0;
    let mut u = vec![0i64; n];
    loop {
        let total: Vec<i64> =
            (0..ws.rank()).map(|k| (0..n).map(|i| u[i] * classes[i][k]).sum()).collect();
        if total == d {
            count += 1;
        }
        let mut i = 0;
        while i < n && u[i] == bound {
            u[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
        u[i] += 1;
    }
}

#[test]
fn section_counts_match_brute_force() {
    for (name, ws) in fixtures() {
        if ws.num_generators() > 6 {
            continue;
        }
        let range: Vec<i64> = (-2..=3).collect();
        let mut ds: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..ws.rank() {
            ds = ds.iter().flat_map(|d| range.iter().map(move |&x| [d.clone(), vec![x]].concat())).collect();
        }
        for d in ds {
            let fast = h0(&ws, &v(&d)).unwrap();
            assert_eq!(fast, h0_brute(&ws, &d, 6), "{name} {d:?}");
        }
    }
}

#[test]
fn non_integral_sections() {
    let ws = fixture("p2");
    assert!(matches!(h0(&ws, &RationalVector(vec![q(1, 2)])), Err(Error::NonIntegral(_))));
}

#[test]
fn piecewise_linearity_on_chambers() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, ws) in fixtures() {
        for c in git_fan(&ws).chambers() {
            for _ in 0..5 {
                let d1 = relative_interior_sample(c, &mut rng);
                let d2 = relative_interior_sample(c, &mut rng);
                let (q1, q2) = (q(rng.gen_range(1..9), rng.gen_range(1..5)), q(rng.gen_range(1..9), 3));
                let z1 = zariski(&ws, &d1).unwrap();
                let z2 = zariski(&ws, &d2).unwrap();
                let z = zariski(&ws, &(&d1.scale(&q1) + &d2.scale(&q2))).unwrap();
                assert_eq!(z.positive, &z1.positive.scale(&q1) + &z2.positive.scale(&q2), "{name}");
                assert_eq!(z.negative, &z1.negative.scale(&q1) + &z2.negative.scale(&q2), "{name}");
                for i in 0..ws.num_generators() {
                    assert_eq!(z.coefficients[i], &z1.coefficients[i] * &q1 + &z2.coefficients[i] * &q2);
                }
            }
        }
    }
}

#[test]
fn negative_support_is_constant_on_cones() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, ws) in fixtures() {
        for c in git_fan(&ws).cones().iter().filter(|c| !c.is_zero()) {
            let supports: Vec<_> = (0..3)
                .map(|_| zariski(&ws, &relative_interior_sample(c, &mut rng)).unwrap().negative_support())
                .collect();
            assert!(supports.windows(2).all(|w| w[0] == w[1]), "{name}: {c}");
            let info = chamber_info(&ws, &c.interior_point()).unwrap();
            assert_eq!(info.exceptional_indices, supports[0]);
            assert_eq!(&info.cone, c);
            // The cone is the join of its movable face and the exceptional classes.
            let mut gens = info.positive_face.ray_vectors();
            gens.extend(info.exceptional_indices.iter().map(|&i| ws.class_vector(i)));
            assert_eq!(morifan::Cone::from_generators(ws.rank(), &gens).unwrap(), *c, "{name}");
        }
    }
}

#[test]
fn decomposition_ignores_generator_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, ws) in fixtures() {
        let n = ws.num_generators();
        let perm: Vec<usize> = (0..n).rev().collect();
        let classes: Vec<Vec<i64>> = perm
            .iter()
            .map(|&i| ws.class(i).iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        let permuted = WeightSystem::from_classes(&classes).unwrap();
        for _ in 0..10 {
            let d = cone_sample(effective_cone(&ws), &mut rng);
            let a = zariski(&ws, &d).unwrap();
            let b = zariski(&permuted, &d).unwrap();
            assert_eq!(a.positive, b.positive, "{name}");
            assert_eq!(a.negative, b.negative, "{name}");
            for (k, &i) in perm.iter().enumerate() {
                assert_eq!(a.coefficients[i], b.coefficients[k]);
            }
        }
    }
}

#[test]
fn positive_parts_are_movable() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (name, ws) in fixtures() {
        let (eff, mov) = (effective_cone(&ws), moving_cone(&ws));
        assert!(eff.contains_cone(mov), "{name}");
        for _ in 0..20 {
            let d = cone_sample(eff, &mut rng);
            let z = zariski(&ws, &d).unwrap();
            assert!(mov.contains(&z.positive));
            assert_eq!(&z.positive + &z.negative, d);
            assert!(z.coefficients.iter().all(|a| *a >= Rat::from_integer(0.into())));
            assert!(z.cone.in_relative_interior(&d) || d.is_zero());
        }
    }
}

#[test]
fn section_certificates_on_a_grid() {
    for (name, ws) in fixtures() {
        let range = 0..=2i64;
        let mut ds: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..ws.rank() {
            ds = ds.iter().flat_map(|d| range.clone().map(move |x| [d.clone(), vec![x]].concat())).collect();
        }
        for d in ds {
            let d = v(&d);
            if !effective_cone(&ws).contains(&d) {
                continue;
            }
            let z = zariski(&ws, &d).unwrap();
            let checks = certify_sections(&ws, &d, &z, &[1, 2]).unwrap();
            assert!(checks.iter().all(SectionCheck::holds), "{name} {d}: {checks:?}");
        }
    }
}

#[test]
fn equivalence_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (name, ws) in fixtures() {
        let fan = git_fan(&ws);
        let cones: Vec<_> = fan.cones().iter().filter(|c| !c.is_zero()).collect();
        for _ in 0..40 {
            let a = relative_interior_sample(cones[rng.gen_range(0..cones.len())], &mut rng);
            let b = relative_interior_sample(cones[rng.gen_range(0..cones.len())], &mut rng);
            strong_mori_equivalent(&ws, &a, &b).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
    let ws = fixture("bl2p3");
    assert!(strong_mori_equivalent(&ws, &v(&[1, 1, 0]), &v(&[2, 1, 0])).unwrap());
    assert!(!strong_mori_equivalent(&ws, &v(&[1, 0, 0]), &v(&[1, 1, 0])).unwrap());
}
