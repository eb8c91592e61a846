use cliffzeta::corpus;
use cliffzeta::cyclotomic::Qz;
use cliffzeta::group::Group;
use cliffzeta::oracle::{corpus_search_lkn, oracle_coboundary, oracle_irr_by_values, oracle_twist_partition};

fn degrees(id: &str) -> Vec<i64> {
    let g = corpus::group(id).unwrap();
    let mut d: Vec<i64> = oracle_irr_by_values(&g).unwrap().iter().map(|t| t[0].as_integer().unwrap()).collect();
    d.sort();
    d
}

#[test]
fn irreducible_characters_by_values() {
    assert_eq!(degrees("C2"), vec![1, 1]);
    assert_eq!(degrees("S3"), vec![1, 1, 2]);
    assert_eq!(degrees("H3"), [vec![1; 9], vec![3, 3]].concat());
    assert_eq!(degrees("S4"), vec![1, 1, 2, 3, 3]);
}

#[test]
fn twist_partitions_by_values() {
    for (id, classes) in [("C3xC3", 1), ("S3", 2), ("H3", 3), ("D4", 2)] {
        let g = corpus::group(id).unwrap();
        let tables = oracle_irr_by_values(&g).unwrap();
        assert_eq!(oracle_twist_partition(&g, &tables).unwrap().len(), classes, "{id}");
    }
}

#[test]
fn strict_chains_in_the_corpus() {
    let chains = corpus_search_lkn(&corpus::extension("M27", "C9").unwrap()).unwrap();
    assert!(chains.iter().any(|c| c.k_order == 9 && c.l_order == 27));
    assert!(corpus_search_lkn(&corpus::extension("C3xC3", "G").unwrap()).unwrap().is_empty());
    assert!(corpus_search_lkn(&corpus::extension("S3", "C3").unwrap()).unwrap().is_empty());
}

#[test]
fn coboundary_search_on_the_klein_group() {
    let v4 = corpus::group("C2xC2").unwrap();
    let n = v4.order();
    assert!(oracle_coboundary(&v4, &vec![Qz::ZERO; n * n]).unwrap());
    let half = Qz::new(1, 2);
    let (a, b) = (1, 2);
    let mut z = vec![Qz::ZERO; n * n];
    for x in 0..n {
        for y in 0..n {
            let xa = usize::from(x == a || x == v4.mul(a, b));
            let yb = usize::from(y == b || y == v4.mul(a, b));
            if xa * yb == 1 {
                z[x * n + y] = half;
            }
        }
    }
    assert!(!oracle_coboundary(&v4, &z).unwrap());
}
