use eppa_core::oracle::enumerate::{antipodal_ok, two_graph_ok};
use eppa_core::oracle::{
    enumerate_antipodal_spaces, enumerate_antipodal_spaces_raw, enumerate_two_graphs,
};
use eppa_core::{antipode, validate_antipodal, validate_graph, validate_two_graph, TwoGraph};
use itertools::Itertools;

#[test]
fn two_graph_validator_matches_parity_filter() {
    for k in 0..=5 {
        let all: Vec<[usize; 3]> = (0..k)
            .tuple_combinations()
            .map(|(a, b, c)| [a, b, c])
            .collect();
        let mut accepted = Vec::new();
        for mask in 0u32..1 << all.len() {
            let triples: Vec<[usize; 3]> = (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            let valid = validate_two_graph(k, &triples).is_valid();
            assert_eq!(valid, two_graph_ok(k, &triples), "{triples:?}");
            if valid {
                accepted.push(TwoGraph::new(k, &triples).unwrap());
            }
        }
        let enumerated: Vec<TwoGraph> = enumerate_two_graphs(k).unwrap().collect();
        assert_eq!(accepted, enumerated, "k = {k}");
    }
}

#[test]
fn antipodal_validator_matches_oracle_on_four_points() {
    let pairs: Vec<(usize, usize)> = (0..4).tuple_combinations().collect();
    for values in pairs.iter().map(|_| 0u8..=4).multi_cartesian_product() {
        let mut d = vec![vec![0u8; 4]; 4];
        for (&(u, v), &x) in pairs.iter().zip(&values) {
            d[u][v] = x;
            d[v][u] = x;
        }
        assert_eq!(validate_antipodal(&d).is_valid(), antipodal_ok(&d), "{d:?}");
    }
}

#[test]
fn antipodal_validator_matches_oracle_on_six_points() {
    // all assignments to the non-matching pairs of {0,1},{2,3},{4,5}
    let free: Vec<(usize, usize)> = (0..6)
        .tuple_combinations()
        .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1))
        .collect();
    let mut accepted = 0;
    for values in free.iter().map(|_| 1u8..=3).multi_cartesian_product() {
        let mut d = vec![vec![0u8; 6]; 6];
        for i in 0..3 {
            d[2 * i][2 * i + 1] = 3;
            d[2 * i + 1][2 * i] = 3;
        }
        for (&(u, v), &x) in free.iter().zip(&values) {
            d[u][v] = x;
            d[v][u] = x;
        }
        let ok = antipodal_ok(&d);
        assert_eq!(validate_antipodal(&d).is_valid(), ok);
        accepted += usize::from(ok);
    }
    assert_eq!(accepted, enumerate_antipodal_spaces(6).unwrap().count());
}

#[test]
fn antipodal_double_filter() {
    for points in [0, 2, 4, 6] {
        let a: Vec<_> = enumerate_antipodal_spaces(points).unwrap().collect();
        let b = enumerate_antipodal_spaces_raw(points).unwrap();
        assert_eq!(a.len(), b.len(), "{points} points");
        for s in &b {
            assert!(a.contains(s));
        }
    }
}

#[test]
fn graph_validator_examples() {
    assert!(validate_graph(2, &[(0, 1), (1, 0)]).is_valid());
    assert!(!validate_graph(2, &[(0, 0)]).is_valid());
    assert!(!validate_graph(2, &[(0, 2)]).is_valid());
}

#[test]
fn antipode_is_a_fixed_point_free_involution() {
    for points in [2, 4, 6, 8] {
        for a in enumerate_antipodal_spaces(points).unwrap() {
            for v in 0..points {
                let w = antipode(&a, v).unwrap();
                assert_ne!(v, w);
                assert_eq!(antipode(&a, w).unwrap(), v);
            }
            assert!(antipode(&a, points).is_err());
        }
    }
}
