//! Degree-one characters of `G`, and the stabilisers of characters of `N`
//! and of their twist classes.

use super::{conj_by_transversal, induced_equal, lin_chars_of, LinChar};
use crate::cyclotomic::Qz;
use crate::error::{Error, Result};
use crate::group::{whole, Extension, Group, TopSet};
use crate::linalg;
use std::sync::Arc;

/// A degree-one character `ψ` of `G`: its restriction `τ` to `N` (a table over
/// `N`) and its values `σ_i = ψ(y_i)` on the transversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalLinChar {
    pub tau: Arc<Vec<Qz>>,
    pub sigma: Vec<Qz>,
}

impl GlobalLinChar {
    /// `ψ(y_i n)`.
    pub fn value(&self, i: usize, n: usize) -> Qz {
        self.sigma[i] + self.tau[n]
    }
}

/// `Lin(G)` in a fixed order, with the distinct restrictions to `N` listed
/// once each together with the index of the first character restricting to it.
#[derive(Clone, Debug)]
pub struct LinG {
    pub chars: Vec<GlobalLinChar>,
    pub restrictions: Vec<(usize, Arc<Vec<Qz>>)>,
}

/// All degree-one characters of `G`: for each `G`-invariant `τ ∈ Lin(N)` that
/// extends, a solution of `σ_i + σ_j - σ_{γ(i,j)} = τ(a_ij)`, shifted by `Lin(G/N)`.
pub fn lin_g(ext: &Extension) -> Result<LinG> {
    let n = ext.normal();
    let m = ext.index();
    let exp_n = n.exponent();
    let modulus = m as u64 * exp_n;
    let lin_q = lin_chars_of(ext.quotient(), &whole(ext.quotient()));
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(m * m + 1);
    for i in 0..m {
        for j in 0..m {
            let mut row = vec![0i64; m];
            row[i] += 1;
            row[j] += 1;
            row[ext.gamma(i, j)] -= 1;
            rows.push(row);
        }
    }
    let mut first = vec![0i64; m];
    first[0] = 1;
    rows.push(first);
    let mut chars = Vec::new();
    let mut restrictions = Vec::new();
    for tau in lin_chars_of(n, &whole(n)) {
        let invariant = (0..m).all(|i| (0..n.rank()).all(|k| tau[ext.phi(i, n.generator(k))] == tau[n.generator(k)]));
        if !invariant {
            continue;
        }
        let mut rhs = Vec::with_capacity(m * m + 1);
        for i in 0..m {
            for j in 0..m {
                let v = tau[ext.tail(i, j)];
                let scaled = v
                    .over(modulus)
                    .ok_or_else(|| Error::Internal("character value outside the expected denominators".into()))?;
                rhs.push(scaled as i64);
            }
        }
        rhs.push(0);
        let Some(sol) = linalg::solve(&rows, &rhs, m, modulus) else {
            continue;
        };
        let tau = Arc::new(tau);
        restrictions.push((chars.len(), tau.clone()));
        for lam in &lin_q {
            let sigma = (0..m).map(|i| Qz::new(sol[i] as i64, modulus) + lam[i]).collect();
            chars.push(GlobalLinChar { tau: tau.clone(), sigma });
        }
    }
    Ok(LinG { chars, restrictions })
}

/// `Stab_G(θ)` for `θ = Ind_M^N χ`, as transversal indices.
pub fn stabilizer_k(ext: &Extension, chi: &LinChar) -> TopSet {
    (0..ext.index())
        .filter(|&i| induced_equal(ext.normal(), &conj_by_transversal(ext, chi, i), chi))
        .collect()
}

/// The stabiliser of the twist class of `θ`: the `y_i` with `^{y_i}θ = θ ψ|_N`
/// for some `ψ ∈ Lin(G)`. Returns the indices and, for each, the first witness `ψ`.
pub fn stabilizer_l(ext: &Extension, chi: &LinChar, lin: &LinG) -> (TopSet, Vec<usize>) {
    let n = ext.normal();
    let mut tops = Vec::new();
    let mut witnesses = Vec::new();
    for i in 0..ext.index() {
        let conj = conj_by_transversal(ext, chi, i);
        if let Some((idx, _)) = lin.restrictions.iter().find(|(_, tau)| induced_equal(n, &conj, &chi.twist(tau))) {
            tops.push(i);
            witnesses.push(*idx);
        }
    }
    (tops, witnesses)
}

/// Whether `ψ` is a homomorphism on the whole of `G` (used as a check).
pub fn is_global_hom(ext: &Extension, psi: &GlobalLinChar) -> bool {
    let size = ext.normal().order();
    (0..ext.order()).all(|a| {
        (0..ext.index()).all(|j| {
            let b = ext.y(j);
            let c = ext.mul(a, b);
            psi.value(a / size, a % size) + psi.value(j, 0) == psi.value(c / size, c % size)
        })
    }) && (0..ext.order()).all(|a| {
        (0..ext.normal().rank()).all(|k| {
            let b = ext.normal().generator(k);
            let c = ext.mul(a, b);
            psi.value(a / size, a % size) + psi.value(0, b) == psi.value(c / size, c % size)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ambient, closure, Extension};

    #[test]
    fn lin_counts() {
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let c3 = closure(&s3, &[1]);
        let (ext, _) = Extension::from_ambient(&s3, &c3).unwrap();
        let lin = lin_g(&ext).unwrap();
        assert_eq!(lin.chars.len(), 2);
        assert!(lin.chars.iter().all(|psi| is_global_hom(&ext, psi)));

        let m27 = ambient::affine(9, &[4]);
        let c9 = closure(&m27, &[1]);
        let (ext, _) = Extension::from_ambient(&m27, &c9).unwrap();
        let lin = lin_g(&ext).unwrap();
        assert_eq!(lin.chars.len(), 9);
        assert!(lin.chars.iter().all(|psi| is_global_hom(&ext, psi)));
        assert_eq!(lin.restrictions.len(), 3);
    }
}
