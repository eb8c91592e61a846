use cliffzeta::corpus;
use cliffzeta::format::{parse_extension, same_group_data, write_extension};
use cliffzeta::group::Group;
use cliffzeta::zeta::{assemble, assemble_twist};
use cliffzeta::Exec;
use proptest::prelude::*;

#[test]
fn assembly_does_not_depend_on_the_normal_subgroup() {
    for e in corpus::catalogue().iter().filter(|e| e.sweep && e.normals.len() > 1) {
        let polys: Vec<_> = e
            .normals
            .iter()
            .map(|n| {
                let ext = corpus::extension(e.id, n).unwrap();
                (assemble(&ext, Exec::Sequential).unwrap().zeta, assemble_twist(&ext, Exec::Sequential).unwrap().zeta)
            })
            .collect();
        assert!(polys.windows(2).all(|w| w[0] == w[1]), "{}: {polys:?}", e.id);
    }
}

#[test]
fn every_catalogue_group_round_trips_through_the_text_format() {
    for e in corpus::catalogue() {
        for n in e.normals {
            let ext = corpus::extension(e.id, n).unwrap();
            let back = parse_extension(&write_extension(&ext)).unwrap();
            assert!(same_group_data(&ext, &back), "{} over {n}", e.id);
            assert_eq!(back.order(), e.order);
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for (g, n) in corpus::sweep_pairs() {
        let ext = corpus::extension(g, n).unwrap();
        let s = assemble_twist(&ext, Exec::Sequential).unwrap();
        let p = assemble_twist(&ext, Exec::Parallel).unwrap();
        assert_eq!(s.zeta, p.zeta, "{g}/{n}");
        assert_eq!(s.buckets.len(), p.buckets.len(), "{g}/{n}");
    }
}

fn shifts(index: usize, size: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..size, index - 1).prop_map(|mut v| {
        v.insert(0, 0);
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn assembly_does_not_depend_on_the_transversal(
        (id, n, s) in prop_oneof![Just(("S3xS3", "C3xC3")), Just(("H3:C2", "H3")), Just(("S4", "V4")), Just(("H3", "Z"))]
            .prop_flat_map(|(id, n)| {
                let ext = corpus::extension(id, n).unwrap();
                (Just(id), Just(n), shifts(ext.index(), ext.normal().order()))
            })
    ) {
        let ext = corpus::extension(id, n).unwrap();
        let moved = ext.retransversal(&s).unwrap();
        prop_assert_eq!(assemble(&ext, Exec::Sequential).unwrap().zeta, assemble(&moved, Exec::Sequential).unwrap().zeta);
        prop_assert_eq!(
            assemble_twist(&ext, Exec::Sequential).unwrap().zeta,
            assemble_twist(&moved, Exec::Sequential).unwrap().zeta
        );
    }
}
