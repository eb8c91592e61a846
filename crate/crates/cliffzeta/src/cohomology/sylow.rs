//! Reduction of the cohomological invariants to Sylow subgroups, checked as
//! identities on a given extension.

use super::{class_eq, class_eq1, gamma_full, gamma_of, mu_matrix, pair_on, Cocycle1, Gamma, StrongExt};
use crate::characters::{GlobalLinChar, LinG, Pair, TwistClass};
use crate::error::Result;
use crate::group::{Extension, TopSet};

/// The outcome of [`sylow_reduction_checks`]: one line per failed identity.
#[derive(Clone, Debug, Default)]
pub struct SylowReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl SylowReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(msg());
        }
    }
}

/// Invariants of one twist class at the full and the Sylow level.
struct ClassData {
    l: TopSet,
    k: TopSet,
    gamma: Gamma,
    mu: Cocycle1,
    alpha_p: super::Cocycle2,
    gamma_p: Gamma,
    mu_p: Cocycle1,
}

fn psis_for<'a>(class: &TwistClass, lin: &'a LinG, sub: &[usize]) -> Vec<&'a GlobalLinChar> {
    sub.iter()
        .map(|i| &lin.chars[class.witnesses[class.l.binary_search(i).expect("subgroup of L")]])
        .collect()
}

fn intersect(a: &[usize], b: &[usize]) -> TopSet {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// For every twist class, with `L_p` a Sylow p-subgroup of `L` over `N` and
/// `K_p = K ∩ L_p`:
///
/// * the restriction of the `q`-primary part of `C_K(θ)` to `K_q` is `C_{K_q}(θ)`;
/// * `Γ_{K,θ̃}` is assembled from its `p'`-part and the lift of `Γ_{K_p,θ̃}`;
/// * for `q ≠ p`, `μ` restricted to `L_q` is trivial modulo coboundaries and `Γ`;
/// * twist classes with the same `(L, K, Γ)`, the same class `C_{K_p}` and the
///   same `T_{L_p,K_p,Γ_p}` have the same `T_{L,K,Γ}`.
pub fn sylow_reduction_checks(
    ext: &Extension,
    pairs: &[Pair],
    classes: &[TwistClass],
    lin: &LinG,
) -> Result<SylowReport> {
    let mut report = SylowReport::default();
    let mut data = Vec::with_capacity(classes.len());
    for (c, class) in classes.iter().enumerate() {
        let theta = &pairs[class.rep];
        let se = StrongExt::new(pair_on(ext, theta, &class.k)?);
        let alpha = se.factor_set(ext);
        for (q, kq) in ext.sylow_q_parts(&class.k).into_iter().chain([(ext.p(), ext.sylow_p_part(&class.k))]) {
            let lhs = alpha.primary_component(q).restrict(&kq)?;
            let rhs = super::factor_set(ext, &pair_on(ext, theta, &kq)?);
            report.check(class_eq(ext, &lhs, &rhs)?, || format!("class {c}: res_{q} C_K(θ)_({q}) differs from C_K{q}(θ)"));
        }
        let gamma = gamma_of(ext, &se, lin)?;
        let lp = ext.sylow_p_part(&class.l);
        let kp = intersect(&class.k, &lp);
        let se_p = StrongExt::new(pair_on(ext, theta, &kp)?);
        let gamma_p = gamma_of(ext, &se_p, lin)?;
        report.check(gamma_full(ext, &class.k, &gamma_p, lin) == gamma, || {
            format!("class {c}: Γ is not the product of its p'-part and the lift of Γ_p")
        });
        for (q, lq) in ext.sylow_q_parts(&class.l) {
            let mu_q = mu_matrix(ext, &se, &lq, &psis_for(class, lin, &lq))?;
            let zero = Cocycle1::zero(lq.clone(), class.k.clone());
            report.check(class_eq1(ext, &mu_q, &zero, &gamma)?, || {
                format!("class {c}: μ on the Sylow {q}-subgroup of L is not trivial")
            });
        }
        let mu = mu_matrix(ext, &se, &class.l, &psis_for(class, lin, &class.l))?;
        let mu_p = mu_matrix(ext, &se_p, &lp, &psis_for(class, lin, &lp))?;
        data.push(ClassData {
            l: class.l.clone(),
            k: class.k.clone(),
            gamma,
            mu,
            alpha_p: se_p.factor_set(ext),
            gamma_p,
            mu_p,
        });
    }
    for a in 0..data.len() {
        for b in a + 1..data.len() {
            let (x, y) = (&data[a], &data[b]);
            if x.l != y.l || x.k != y.k || x.gamma != y.gamma || x.gamma_p != y.gamma_p {
                continue;
            }
            if !class_eq(ext, &x.alpha_p, &y.alpha_p)? || !class_eq1(ext, &x.mu_p, &y.mu_p, &x.gamma_p)? {
                continue;
            }
            report.check(class_eq1(ext, &x.mu, &y.mu, &x.gamma)?, || {
                format!("classes {a} and {b} agree at the Sylow level but have different T")
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{irr_of_n, lin_g, twist_classes};
    use crate::exec::Exec;
    use crate::group::{ambient, closure};

    #[test]
    fn s3_and_dicyclic_reductions() {
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let dic3 = ambient::dicyclic(3);
        for (g, n) in [(&s3, closure(&s3, &[1])), (&dic3, crate::group::normal_sylow(&dic3, 3).unwrap())] {
            let ext = Extension::from_ambient(g, &n).unwrap().0;
            let lin = lin_g(&ext).unwrap();
            let irr = irr_of_n(ext.normal(), Exec::Sequential);
            let classes = twist_classes(&ext, &irr, &lin, Exec::Sequential);
            let report = sylow_reduction_checks(&ext, &irr, &classes, &lin).unwrap();
            assert!(report.is_clean(), "{:?}", report.violations);
            assert!(report.checked > 0);
        }
    }
}
