//! The catalogue of example groups, each with the normal p-subgroups it is
//! studied over.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::ambient::{self, Heisenberg};
use crate::group::{closure, derived_subgroup, normal_sylow, whole, Extension, Group, TableGroup};

/// A catalogue entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub id: &'static str,
    pub description: &'static str,
    pub order: usize,
    /// The prime of the normal subgroups.
    pub p: u64,
    /// Identifiers of the admissible normal p-subgroups, the default first.
    pub normals: &'static [&'static str],
    /// Whether the entry takes part in the corpus-wide checks. Entries outside
    /// the sweeps exceed the group order bound of those checks.
    pub sweep: bool,
}

const fn entry(
    id: &'static str,
    description: &'static str,
    order: usize,
    p: u64,
    normals: &'static [&'static str],
) -> Entry {
    Entry { id, description, order, p, normals, sweep: true }
}

const CATALOGUE: &[Entry] = &[
    entry("C2", "cyclic group of order 2", 2, 2, &["G"]),
    entry("C3", "cyclic group of order 3", 3, 3, &["G"]),
    entry("C4", "cyclic group of order 4", 4, 2, &["G"]),
    entry("C9", "cyclic group of order 9", 9, 3, &["G"]),
    entry("C2xC2", "Klein four-group", 4, 2, &["G"]),
    entry("C3xC3", "elementary abelian group of order 9", 9, 3, &["G"]),
    entry("H2", "unitriangular 3x3 matrices over Z/2", 8, 2, &["G", "A"]),
    entry("H3", "Heisenberg group: unitriangular 3x3 matrices over Z/3", 27, 3, &["G", "A", "Z"]),
    entry("D4", "dihedral group of order 8", 8, 2, &["G", "C4"]),
    entry("Q8", "quaternion group", 8, 2, &["G", "C4"]),
    entry("M27", "modular group C9 : C3 with a^b = a^4", 27, 3, &["G", "C9"]),
    entry("S3", "symmetric group on 3 points", 6, 3, &["C3"]),
    entry("Dic3", "dicyclic group C3 : C4", 12, 3, &["C3"]),
    entry("C3xS3", "direct product of C3 and S3", 18, 3, &["C3xC3", "C3"]),
    entry("A4", "alternating group on 4 points", 12, 2, &["V4"]),
    entry("S4", "symmetric group on 4 points", 24, 2, &["V4"]),
    entry("S3xS3", "direct product of two copies of S3", 36, 3, &["C3xC3"]),
    entry("C3^2:C4", "F3^2 extended by a symplectic automorphism of order 4", 36, 3, &["C3xC3"]),
    entry("C3^2:Q8", "F3^2 extended by the quaternion subgroup of SL(2,3)", 72, 3, &["C3xC3"]),
    entry("H3:C2", "H3 extended by the automorphism (v, c) -> (-v, c)", 54, 3, &["H3", "Z"]),
    entry("H3:C3", "H3 extended by a unipotent symplectic automorphism", 81, 3, &["G", "H3"]),
    Entry {
        id: "H9",
        description: "unitriangular 3x3 matrices over Z/9",
        order: 729,
        p: 3,
        normals: &["A"],
        sweep: false,
    },
];

pub fn catalogue() -> &'static [Entry] {
    CATALOGUE
}

pub fn entry_of(id: &str) -> Result<&'static Entry> {
    CATALOGUE
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::Invalid(format!("unknown group `{id}`")))
}

/// The `(group, normal subgroup)` pairs of the corpus-wide checks.
pub fn sweep_pairs() -> Vec<(&'static str, &'static str)> {
    CATALOGUE.iter().filter(|e| e.sweep).flat_map(|e| e.normals.iter().map(move |n| (e.id, *n))).collect()
}

const ORDER4: [u32; 4] = [0, 2, 1, 0];
const QUATERNION: [[u32; 4]; 2] = [[0, 2, 1, 0], [1, 1, 1, 2]];
const MINUS_ONE: [u32; 4] = [2, 0, 0, 2];
const UNIPOTENT: [u32; 4] = [1, 1, 0, 1];

fn heisenberg(p: u64, m: u32) -> TableGroup {
    let h = Heisenberg::new(p, m);
    let elems: Vec<usize> = (0..h.order()).collect();
    TableGroup::from_subset(&h, &elems)
}

fn s3() -> TableGroup {
    ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]])
}

/// The group of a catalogue entry.
pub fn group(id: &str) -> Result<TableGroup> {
    let e = entry_of(id)?;
    Ok(match e.id {
        "C2" => ambient::cyclic(2),
        "C3" => ambient::cyclic(3),
        "C4" => ambient::cyclic(4),
        "C9" => ambient::cyclic(9),
        "C2xC2" => ambient::direct_product(&ambient::cyclic(2), &ambient::cyclic(2)),
        "C3xC3" => ambient::direct_product(&ambient::cyclic(3), &ambient::cyclic(3)),
        "H2" => heisenberg(2, 1),
        "H3" => heisenberg(3, 1),
        "D4" => ambient::perm_group(&[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]),
        "Q8" => ambient::dicyclic(2),
        "M27" => ambient::modular_p_group(3, 2),
        "S3" => s3(),
        "Dic3" => ambient::dicyclic(3),
        "C3xS3" => ambient::direct_product(&ambient::cyclic(3), &s3()),
        "A4" => ambient::perm_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
        "S4" => ambient::perm_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]),
        "S3xS3" => ambient::direct_product(&s3(), &s3()),
        "C3^2:C4" => ambient::symplectic_semidirect(3, false, &[ORDER4]).0,
        "C3^2:Q8" => ambient::symplectic_semidirect(3, false, &QUATERNION).0,
        "H3:C2" => ambient::symplectic_semidirect(3, true, &[MINUS_ONE]).0,
        "H3:C3" => ambient::symplectic_semidirect(3, true, &[UNIPOTENT]).0,
        "H9" => heisenberg(3, 2),
        other => return Err(Error::Internal(format!("catalogue entry `{other}` has no constructor"))),
    })
}

fn cyclic_of_order<G: Group + ?Sized>(g: &G, order: u64) -> Result<Bits> {
    let x = (0..g.order())
        .find(|&x| g.elem_order(x) == order)
        .ok_or_else(|| Error::Internal(format!("no element of order {order}")))?;
    Ok(closure(g, &[x]))
}

/// The normal subgroup `normal` of the catalogue group `id`, as a subset of `g`.
pub fn normal_subgroup(id: &str, g: &TableGroup, normal: &str) -> Result<Bits> {
    let e = entry_of(id)?;
    let normal = e
        .normals
        .iter()
        .find(|n| n.eq_ignore_ascii_case(normal))
        .ok_or_else(|| Error::Invalid(format!("`{normal}` is not a listed normal subgroup of {}", e.id)))?;
    let bits = match (e.id, *normal) {
        (_, "G") => whole(g),
        ("H2", "A") => Bits::from_iter(g.order(), 0..4),
        ("H3", "A") | ("H9", "A") => {
            let q = if e.id == "H3" { 3 } else { 9 };
            Bits::from_iter(g.order(), 0..q * q)
        }
        ("H3", "Z") => crate::group::center(g, &whole(g)),
        ("D4", "C4") | ("Q8", "C4") => cyclic_of_order(g, 4)?,
        ("M27", "C9") => cyclic_of_order(g, 9)?,
        ("C3xS3", "C3") => Bits::from_iter(g.order(), [0, 6, 12]),
        ("H3:C3", "H3") => {
            let (_, elems) = ambient::symplectic_semidirect(3, true, &[UNIPOTENT]);
            Bits::from_iter(g.order(), (0..g.order()).filter(|&x| elems[x].2 == [1, 0, 0, 1]))
        }
        ("H3:C2", "Z") => crate::group::center(g, &whole(g)),
        ("S4", "V4") => derived_subgroup(g, &derived_subgroup(g, &whole(g))),
        _ => normal_sylow(g, e.p).ok_or_else(|| Error::Internal(format!("{} has no normal Sylow {}-subgroup", e.id, e.p)))?,
    };
    Ok(bits)
}

/// The catalogue group `id` presented over its normal subgroup `normal`.
pub fn extension(id: &str, normal: &str) -> Result<Extension> {
    let g = group(id)?;
    let n = normal_subgroup(id, &g, normal)?;
    Ok(Extension::from_ambient(&g, &n)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_normal_in;

    #[test]
    fn orders_and_normality() {
        for e in catalogue() {
            let g = group(e.id).unwrap();
            assert_eq!(g.order(), e.order, "{}", e.id);
            for n in e.normals {
                let bits = normal_subgroup(e.id, &g, n).unwrap();
                assert!(is_normal_in(&g, &bits, &whole(&g)), "{} over {n}", e.id);
                let size = bits.count() as u64;
                assert_eq!(crate::group::q_part(size, e.p), size, "{} over {n}", e.id);
            }
        }
    }

    #[test]
    fn sweep_covers_enough_groups() {
        let groups: std::collections::BTreeSet<_> = sweep_pairs().into_iter().map(|(g, _)| g).collect();
        assert!(groups.len() >= 12);
        assert!(catalogue().iter().filter(|e| e.sweep).all(|e| e.order <= 648));
    }

    #[test]
    fn extensions_build() {
        let ext = extension("S3", "C3").unwrap();
        assert_eq!((ext.normal().order(), ext.index()), (3, 2));
        let ext = extension("h3", "z").unwrap();
        assert_eq!((ext.normal().order(), ext.index()), (3, 9));
        assert!(extension("S3", "G").is_err());
        assert!(extension("nope", "G").is_err());
    }
}
