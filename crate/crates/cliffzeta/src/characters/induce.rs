//! Induction from a subgroup of `N` and the predicates on induced characters.

use super::{LinChar, LinG};
use crate::cyclotomic::CycInt;
use crate::group::{Group, PcGroup};

/// `θ(x)` for `θ = Ind_M^N χ`.
pub fn induced_value(n: &PcGroup, chi: &LinChar, x: usize) -> CycInt {
    let mut acc = CycInt::zero();
    for &g in &chi.dom.transversal {
        let h = n.mul(n.mul(n.inv(g), x), g);
        if chi.dom.contains(h) {
            acc += &CycInt::root(chi.value(h));
        }
    }
    acc
}

/// Mackey's criterion: `Ind_M^N χ` is irreducible if and only if no `g ∉ M`
/// makes `χ` and `^g χ` agree on `M ∩ ^g M`.
pub fn induces_irreducibly(n: &PcGroup, chi: &LinChar) -> bool {
    let m = &chi.dom;
    m.transversal.iter().skip(1).all(|&g| {
        let gi = n.inv(g);
        !m.bits.iter().all(|x| {
            let h = n.mul(n.mul(gi, x), g);
            !m.contains(h) || chi.value(h) == chi.value(x)
        })
    })
}

/// For irreducible inductions: `Ind χ_1 = Ind χ_2` if and only if some
/// `g ∈ N` makes `χ_1` and `^g χ_2` agree on `M_1 ∩ ^g M_2`.
pub fn induced_equal(n: &PcGroup, chi1: &LinChar, chi2: &LinChar) -> bool {
    if chi1.dom.order() != chi2.dom.order() {
        return false;
    }
    chi2.dom.transversal.iter().any(|&g| {
        let gi = n.inv(g);
        chi1.dom.bits.iter().all(|x| {
            let h = n.mul(n.mul(gi, x), g);
            !chi2.dom.contains(h) || chi1.value(x) == chi2.value(h)
        })
    })
}

/// The first `ψ ∈ Lin(G)` (in the order of `lin`) with
/// `Ind χ_1 = (Ind χ_2) ψ|_N`, if any.
pub fn induced_twist_equal(n: &PcGroup, chi1: &LinChar, chi2: &LinChar, lin: &LinG) -> Option<usize> {
    lin.restrictions
        .iter()
        .find(|(_, tau)| induced_equal(n, chi1, &chi2.twist(tau)))
        .map(|(idx, _)| *idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::lin_chars;
    use crate::group::{closure, whole, Subgroup};
    use std::sync::Arc;

    fn heisenberg3() -> PcGroup {
        let comm = vec![vec![], vec![vec![0, 0, 2]], vec![vec![0; 3], vec![0; 3]]];
        PcGroup::new(3, 3, vec![vec![0; 3]; 3], comm).unwrap()
    }

    #[test]
    fn heisenberg_degree_three() {
        let h = heisenberg3();
        let m = Arc::new(Subgroup::new(&h, closure(&h, &[h.generator(1), h.generator(2)])));
        let chars = lin_chars(&h, &m);
        assert_eq!(chars.len(), 9);
        let irreducible: Vec<_> = chars.iter().filter(|c| induces_irreducibly(&h, c)).collect();
        assert_eq!(irreducible.len(), 6);
        for c in &irreducible {
            let values: Vec<CycInt> = (0..27).map(|x| induced_value(&h, c, x)).collect();
            let norm = crate::cyclotomic::inner_product(&values, &values, None, 27).unwrap();
            assert_eq!(norm, num_rational::BigRational::from_integer(1.into()));
            assert_eq!(values[0], CycInt::from_int(3));
        }
        let distinct = irreducible
            .iter()
            .enumerate()
            .filter(|(i, a)| !irreducible[..*i].iter().any(|b| induced_equal(&h, a, b)))
            .count();
        assert_eq!(distinct, 2);
    }

    #[test]
    fn trivial_character_of_proper_subgroup_is_reducible() {
        let h = heisenberg3();
        let m = Arc::new(Subgroup::new(&h, closure(&h, &[h.generator(2)])));
        let chi = LinChar::trivial(m, 27);
        assert!(!induces_irreducibly(&h, &chi));
        let all = Arc::new(Subgroup::new(&h, whole(&h)));
        assert!(induces_irreducibly(&h, &LinChar::trivial(all, 27)));
    }
}
