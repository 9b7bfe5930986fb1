//! Double description: from a constraint system to extreme rays and lineality.
//!
//! The cone `{x : a.x >= 0 (a in ineqs), e.x = 0 (e in eqs)}` is built by
//! inserting one constraint at a time into a minimal generating system
//! `L + cone(R)`, starting from `L = Q^d`. Adjacency of rays uses the
//! combinatorial zero-set test, which is exact for minimal systems.

use num_traits::{Signed, Zero};

use crate::arith::{combine, dot, is_zero_vec, primitive, Int};

pub(crate) struct Generators {
    /// Extreme rays modulo the lineality space, primitive.
    pub rays: Vec<Vec<Int>>,
    /// A basis of the lineality space.
    pub lineality: Vec<Vec<Int>>,
}

pub(crate) fn h_to_v(dim: usize, ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Generators {
    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = 1.into();
            e
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut processed: Vec<&[Int]> = Vec::new();

    let constraints = eqs
        .iter()
        .map(|a| (a, true))
        .chain(ineqs.iter().map(|a| (a, false)));
    for (a, is_eq) in constraints {
        debug_assert_eq!(a.len(), dim);
        if is_zero_vec(a) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut v0 = dot(a, &l0);
            if v0.is_negative() {
                l0.iter_mut().for_each(|x| *x = -&*x);
                v0 = -v0;
            }
            for v in lineality.iter_mut().chain(rays.iter_mut()) {
                let val = dot(a, v);
                if !val.is_zero() {
                    *v = primitive(combine(&v0, v, &val, &l0));
                }
            }
            if !is_eq {
                rays.push(primitive(l0));
            }
        } else {
            let vals: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
            let mut next: Vec<Vec<Int>> = Vec::new();
            for (i, r) in rays.iter().enumerate() {
                if vals[i].is_zero() || (!is_eq && vals[i].is_positive()) {
                    next.push(r.clone());
                }
            }
            if !pos.is_empty() && !neg.is_empty() {
                let zero_sets: Vec<Vec<bool>> = rays
                    .iter()
                    .map(|r| processed.iter().map(|c| dot(c, r).is_zero()).collect())
                    .collect();
                // Two rays are adjacent only if they share at least this many
                // tight constraints.
                let needed = dim.saturating_sub(lineality.len() + 2);
                for &p in &pos {
                    for &n in &neg {
                        let common: Vec<bool> = zero_sets[p]
                            .iter()
                            .zip(&zero_sets[n])
                            .map(|(x, y)| *x && *y)
                            .collect();
                        if common.iter().filter(|&&b| b).count() < needed {
                            continue;
                        }
                        let blocked = (0..rays.len()).any(|r| {
                            r != p
                                && r != n
                                && common.iter().zip(&zero_sets[r]).all(|(c, z)| !*c || *z)
                        });
                        if !blocked {
                            next.push(primitive(combine(&vals[p], &rays[n], &vals[n], &rays[p])));
                        }
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }
    rays.sort();
    rays.dedup();
    Generators { rays, lineality }
}
