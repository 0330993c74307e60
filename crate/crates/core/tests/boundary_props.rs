mod common;

use common::{croke_kleiner, random_element, random_morse_ray, random_ray_through, z3z};
use morse_cube::boundary::{
    bracket_product, cross_ratio_bfm, cross_ratio_cr, find_separated_chain, gromov_product,
    hyp_member, never_crosses, ray_walls, refine_to_single_wall, trace, Extended,
};
use morse_cube::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

const DEPTH: usize = 30;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ultrametric_and_symmetry(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for cx in [z3z(), croke_kleiner()] {
            let o = random_element(&cx, &mut rng, 3);
            let r: Vec<_> = (0..3).map(|_| random_morse_ray(&cx, &mut rng, &o)).collect();
            let b = |i: usize, j: usize| bracket_product(&cx, &r[i], &r[j], DEPTH).unwrap();
            let (xy, xz, zy) = (b(0, 1), b(0, 2), b(2, 1));
            prop_assert_eq!(xy, b(1, 0));
            prop_assert_eq!(
                gromov_product(&cx, &r[0], &r[1], DEPTH).unwrap(),
                gromov_product(&cx, &r[1], &r[0], DEPTH).unwrap()
            );
            let own = b(0, 0);
            prop_assert_eq!((own.value, own.certified), (Extended::Infinite, true));
            if xy.certified && xz.certified && zy.certified {
                prop_assert!(xy.value >= xz.value.min(zy.value));
            }
        }
    }

    #[test]
    fn certified_values_survive_deeper_truncation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for cx in [z3z(), croke_kleiner()] {
            let o = random_element(&cx, &mut rng, 2);
            let x = random_morse_ray(&cx, &mut rng, &o);
            let y = random_morse_ray(&cx, &mut rng, &o);
            for product in [bracket_product, gromov_product] {
                let v = product(&cx, &x, &y, DEPTH).unwrap();
                let deep = product(&cx, &x, &y, 3 * DEPTH).unwrap();
                if v.certified {
                    prop_assert_eq!(v.value, deep.value);
                    prop_assert!(deep.certified);
                }
            }
        }
    }

    #[test]
    fn never_crossed_walls_stay_uncrossed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for cx in [z3z(), croke_kleiner()] {
            let o = random_element(&cx, &mut rng, 2);
            let x = random_morse_ray(&cx, &mut rng, &o);
            let y = random_morse_ray(&cx, &mut rng, &o);
            let short = trace(&cx, &x, 12).unwrap();
            let long = trace(&cx, &x, 120).unwrap();
            for k in ray_walls(&cx, &y, 40).unwrap() {
                if never_crosses(&cx, &short, &k) {
                    prop_assert!(long.position(&k).is_none());
                }
            }
        }
    }

    #[test]
    fn rays_cross_each_wall_once(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for cx in [z3z(), croke_kleiner()] {
            let o = random_element(&cx, &mut rng, 3);
            let x = random_morse_ray(&cx, &mut rng, &o);
            let w = ray_walls(&cx, &x, 60).unwrap();
            let set: HashSet<_> = w.iter().collect();
            prop_assert_eq!(set.len(), w.len());
            let t = trace(&cx, &x, 60).unwrap();
            prop_assert_eq!(cx.graph().distance(&t.vertices[0], &t.vertices[60]), 60);
        }
    }

    #[test]
    fn cross_ratio_symmetry(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cx = z3z();
        let o = random_element(&cx, &mut rng, 2);
        let r: Vec<_> = (0..4).map(|_| random_morse_ray(&cx, &mut rng, &o)).collect();
        for f in [cross_ratio_cr, cross_ratio_bfm] {
            match (f(&cx, [&r[0], &r[1], &r[2], &r[3]], DEPTH), f(&cx, [&r[1], &r[0], &r[3], &r[2]], DEPTH)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.value, b.value),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn refinement_shrinks_the_basic_set(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for cx in [z3z(), croke_kleiner()] {
            let o = random_element(&cx, &mut rng, 2);
            let x = random_morse_ray(&cx, &mut rng, &o);
            let walls = ray_walls(&cx, &x, 8).unwrap();
            let h = vec![walls[rand::Rng::gen_range(&mut rng, 0..8)].clone()];
            let chain = find_separated_chain(&cx, &x, 0, 6, DEPTH, 4).unwrap();
            match refine_to_single_wall(&cx, &x, &h, &chain) {
                Ok(k) => {
                    let sep = cx.walls_separating_point_from_wall(&o, &k);
                    prop_assert!(h.iter().all(|w| sep.contains(w)));
                    prop_assert_eq!(hyp_member(&cx, &x, std::slice::from_ref(&k), DEPTH), Ok(true));
                    prop_assert_eq!(hyp_member(&cx, &x, &h, DEPTH), Ok(true));
                    // any other ray through k crosses h as well
                    for _ in 0..5 {
                        let y = random_ray_through(&cx, &mut rng, &o, &k, DEPTH);
                        prop_assert_eq!(hyp_member(&cx, &y, &h, DEPTH), Ok(true));
                    }
                }
                Err(e) => prop_assert_eq!(e, Error::ChainExhausted),
            }
        }
    }
}
