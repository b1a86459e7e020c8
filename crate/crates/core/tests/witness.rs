use eppa_core::oracle::check::{antipode_of, is_automorphism};
use eppa_core::oracle::enumerate::antipodal_ok;
use eppa_core::oracle::verify::{model_embedding, model_permutation};
use eppa_core::oracle::{
    all_partial_isomorphisms, enumerate_antipodal_spaces, sample_antipodal_space, Checkable,
    WitnessModel,
};
use eppa_core::{build_witness, extend_automorphism, pode_value, AntipodalSpace, PartialMap};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_spaces() -> Vec<AntipodalSpace> {
    [2, 4, 6]
        .into_iter()
        .flat_map(|p| enumerate_antipodal_spaces(p).unwrap())
        .collect()
}

#[test]
fn materialized_witness_is_antipodal() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut spaces = small_spaces();
    for _ in 0..10 {
        spaces.push(sample_antipodal_space(8, &mut rng).unwrap());
    }
    for a in spaces {
        let ctx = build_witness(&a).unwrap();
        let n = ctx.edge_count();
        let b = ctx.materialize(12).unwrap();
        assert_eq!(b.order() as u128, ctx.witness_order());
        assert_eq!(b.order(), n << n);
        let model = WitnessModel { n };
        assert_eq!(
            (0..b.order())
                .map(|i| (0..b.order()).map(|j| b.dist(i, j)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            model.to_matrix()
        );
    }
}

#[test]
fn generic_copy_is_isometric_and_keeps_the_pode() {
    for a in small_spaces() {
        let ctx = build_witness(&a).unwrap();
        let model = WitnessModel {
            n: ctx.edge_count(),
        };
        let all: Vec<usize> = (0..a.order()).collect();
        assert!(a.maps_into(&model, &all, &model_embedding(&ctx)));
        for v in 0..a.order() {
            assert_eq!(pode_value(&ctx, &ctx.psi(v)), ctx.pode().value(v));
        }
    }
}

#[test]
fn extensions_commute_with_antipodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for a in small_spaces() {
        let ctx = build_witness(&a).unwrap();
        let maps = all_partial_isomorphisms(&a, a.order()).unwrap();
        for phi in maps.choose_multiple(&mut rng, 20) {
            let theta = extend_automorphism(&ctx, phi).unwrap();
            for w in ctx.vertices(12).unwrap() {
                assert_eq!(
                    theta.apply(&w.antipode()).unwrap(),
                    theta.apply(&w).unwrap().antipode()
                );
            }
        }
    }
}

#[test]
fn composition_formula_matches_pointwise_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for a in small_spaces() {
        let ctx = build_witness(&a).unwrap();
        let maps = all_partial_isomorphisms(&a, a.order()).unwrap();
        for _ in 0..20 {
            let f = extend_automorphism(&ctx, &maps[rng.gen_range(0..maps.len())]).unwrap();
            let g = extend_automorphism(&ctx, &maps[rng.gen_range(0..maps.len())]).unwrap();
            let fg = f.then(&g);
            for w in ctx.vertices(12).unwrap() {
                assert_eq!(
                    fg.apply(&w).unwrap(),
                    g.apply(&f.apply(&w).unwrap()).unwrap()
                );
            }
        }
    }
}

#[test]
fn sampled_automorphism_checks_on_larger_spaces() {
    // n = 5, 6 matching edges: check random pairs instead of all of B
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for points in [10, 12] {
        let a = sample_antipodal_space(points, &mut rng).unwrap();
        let ctx = build_witness(&a).unwrap();
        let n = ctx.edge_count();
        let model = WitnessModel { n };
        let mut dom: Vec<usize> = (0..points).collect();
        dom.shuffle(&mut rng);
        dom.truncate(3);
        let maps = [
            PartialMap::identity_on(&dom),
            PartialMap::from_pairs(&[(0, antipode_of(&a, 0))]).unwrap(),
        ];
        for phi in &maps {
            let theta = extend_automorphism(&ctx, phi).unwrap();
            let perm = model_permutation(&model, &theta);
            for _ in 0..2000 {
                let i = rng.gen_range(0..model.points());
                let j = rng.gen_range(0..model.points());
                assert_eq!(model.dist(i, j), model.dist(perm[i], perm[j]));
            }
        }
    }
}

#[test]
fn exhaustive_automorphism_checks_up_to_three_edges() {
    for a in small_spaces() {
        let ctx = build_witness(&a).unwrap();
        let model = WitnessModel {
            n: ctx.edge_count(),
        };
        assert!(antipodal_ok(&model.to_matrix()));
        for phi in all_partial_isomorphisms(&a, 2).unwrap() {
            let theta = extend_automorphism(&ctx, &phi).unwrap();
            assert!(is_automorphism(&model, &model_permutation(&model, &theta)));
        }
    }
}

#[test]
fn capacity_limits() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = sample_antipodal_space(30, &mut rng).unwrap();
    let ctx = build_witness(&a).unwrap();
    assert_eq!(ctx.witness_order(), 15u128 << 15);
    assert!(ctx.vertices(12).is_err());
    assert!(ctx.materialize(12).is_err());
    // lazy queries still work
    assert_eq!(
        ctx.distance(&ctx.psi(0), &ctx.psi(1)).unwrap(),
        a.dist(0, 1)
    );
}
