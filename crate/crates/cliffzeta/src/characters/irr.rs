//! `Irr(N)` through pairs, and its partition into twist classes.

use super::{induced_equal, induces_irreducibly, lin_chars, stabilizer_k, stabilizer_l, LinChar, LinG, Pair};
use crate::cyclotomic::Qz;
use crate::exec::Exec;
use crate::group::subgroups::enumerate_subgroups;
use crate::group::{center, whole, Extension, Group, PcGroup, TopSet};
use std::collections::HashMap;
use std::sync::Arc;

/// One pair for each irreducible character of `N`, in canonical pair order.
///
/// Every irreducible character of a p-group is induced from a degree-one
/// character of a subgroup containing the centre, of index at most
/// `sqrt |N : Z(N)|`; candidates are taken from the largest subgroups down and
/// deduplicated within buckets of equal degree and central character.
pub fn irr_of_n(n: &PcGroup, exec: Exec) -> Vec<Pair> {
    let size = n.order() as u64;
    let z = center(n, &whole(n));
    let p = n.p() as u64;
    let mut bound = 1u64;
    while (bound * p) * (bound * p) * z.count() as u64 <= size {
        bound *= p;
    }
    let subs = enumerate_subgroups(n, bound as usize, Some(&z));
    let z_elems = z.to_vec();
    let mut accepted: Vec<Pair> = Vec::new();
    let mut buckets: HashMap<(u64, Vec<Qz>), Vec<usize>> = HashMap::new();
    let mut sum_sq = 0u64;
    for m in subs {
        if sum_sq == size {
            break;
        }
        let m = Arc::new(m);
        let chars = lin_chars(n, &m);
        let flags = exec.map(&chars, |chi| induces_irreducibly(n, chi));
        for (chi, ok) in chars.into_iter().zip(flags) {
            if !ok {
                continue;
            }
            let deg = chi.dom.index() as u64;
            let key = (deg, z_elems.iter().map(|&x| chi.value(x)).collect::<Vec<_>>());
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&k| induced_equal(n, &accepted[k].chi, &chi)) {
                continue;
            }
            bucket.push(accepted.len());
            sum_sq += deg * deg;
            accepted.push(Pair::in_n(chi));
        }
    }
    accepted.sort_by_key(|a| a.sort_key());
    accepted
}

/// A twist class of `Irr(N)`: characters `θ, θ'` with `θ' = θ ψ|_N` for some
/// `ψ ∈ Lin(G)`. The representative is the least member in canonical pair order.
#[derive(Clone, Debug)]
pub struct TwistClass {
    pub members: Vec<usize>,
    pub rep: usize,
    /// `K = Stab_G(θ)` for the representative.
    pub k: TopSet,
    /// `L = Stab_G(θ̃)`.
    pub l: TopSet,
    /// For each element of `L`, the first `ψ` with `^{y_i}θ = θ ψ|_N`.
    pub witnesses: Vec<usize>,
}

/// Partition `pairs` (in canonical order) into twist classes.
pub fn twist_classes(ext: &Extension, pairs: &[Pair], lin: &LinG, exec: Exec) -> Vec<TwistClass> {
    let n = ext.normal();
    let mut class_of: Vec<Option<usize>> = vec![None; pairs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let linear = pairs.iter().all(|p| p.is_linear());
    if linear {
        let mut index: HashMap<Vec<Qz>, usize> = HashMap::new();
        let keys = exec.map(pairs, |pair| canonical_linear_key(&pair.chi, lin));
        for (k, key) in keys.into_iter().enumerate() {
            let c = *index.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(k);
            class_of[k] = Some(c);
        }
    } else {
        for k in 0..pairs.len() {
            let found = classes.iter().position(|members| {
                let r = &pairs[members[0]];
                r.degree() == pairs[k].degree()
                    && lin.restrictions.iter().any(|(_, tau)| induced_equal(n, &pairs[k].chi, &r.chi.twist(tau)))
            });
            match found {
                Some(c) => classes[c].push(k),
                None => classes.push(vec![k]),
            }
        }
    }
    exec.map(&classes, |members| {
        let rep = members[0];
        let k = stabilizer_k(ext, &pairs[rep].chi);
        let (l, witnesses) = stabilizer_l(ext, &pairs[rep].chi, lin);
        TwistClass { members: members.clone(), rep, k, l, witnesses }
    })
}

fn canonical_linear_key(chi: &LinChar, lin: &LinG) -> Vec<Qz> {
    lin.restrictions
        .iter()
        .map(|(_, tau)| chi.table().iter().zip(tau.iter()).map(|(&a, &b)| a + b).collect::<Vec<_>>())
        .min()
        .unwrap_or_else(|| chi.table().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ambient, closure};

    fn heisenberg3() -> PcGroup {
        let comm = vec![vec![], vec![vec![0, 0, 2]], vec![vec![0; 3], vec![0; 3]]];
        PcGroup::new(3, 3, vec![vec![0; 3]; 3], comm).unwrap()
    }

    #[test]
    fn heisenberg_irreducibles() {
        let h = heisenberg3();
        let irr = irr_of_n(&h, Exec::Sequential);
        assert_eq!(irr.len(), 11);
        assert_eq!(irr.iter().filter(|p| p.degree() == 3).count(), 2);
        assert_eq!(irr.iter().map(|p| p.degree().pow(2)).sum::<u64>(), 27);
    }

    #[test]
    fn parallel_matches_sequential() {
        let h = heisenberg3();
        let a = irr_of_n(&h, Exec::Sequential);
        let b = irr_of_n(&h, Exec::Parallel);
        assert_eq!(a, b);
    }

    #[test]
    fn s3_twist_classes_over_c3() {
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let c3 = closure(&s3, &[1]);
        let (ext, _) = Extension::from_ambient(&s3, &c3).unwrap();
        let irr = irr_of_n(ext.normal(), Exec::Sequential);
        assert_eq!(irr.len(), 3);
        let lin = crate::characters::lin_g(&ext).unwrap();
        let classes = twist_classes(&ext, &irr, &lin, Exec::Sequential);
        assert_eq!(classes.len(), 3);
        let faithful = classes.iter().find(|c| !irr[c.rep].chi.table().iter().all(|v| v.is_zero())).unwrap();
        assert_eq!(faithful.k, vec![0]);
        assert_eq!(faithful.l, vec![0]);
        assert_eq!(ext.order(), 6);
    }
}
