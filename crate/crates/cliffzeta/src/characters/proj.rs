//! Projective characters of small quotients by monomial search, and the
//! characters of `K` lying over a character of `N`.

use super::{induced_value, lin_chars_of, Pair};
use crate::cyclotomic::{inner_product, CycInt, Qz};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{all_subgroups_solvable, left_transversal, whole, Extension, Group, TableGroup, TopSet};
use crate::linalg;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Values of a (projective) class function on every group element.
pub type ClassFunction = Vec<CycInt>;

/// An irreducible projective character for a given factor set.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjChar {
    pub degree: u64,
    pub values: ClassFunction,
}

/// The irreducible projective characters of `q` with factor set `beta`
/// (row-major, `P(x) P(y) = e(β(x,y)) P(xy)`, normalised).
///
/// Each is induced from a degree-one projective character `e(σ + λ)` of a
/// subgroup `S` on which `β` is the coboundary of `σ`. The search runs over
/// subgroups from the largest down and stops once the squared degrees sum to
/// `|q|`; groups with a non-monomial projective character are reported as
/// unsupported.
pub fn proj_irr<G: Group + ?Sized>(q: &G, beta: &[Qz], exec: Exec) -> Result<Vec<ProjChar>> {
    let order = q.order();
    let mut out: Vec<ProjChar> = Vec::new();
    let mut sum_sq = 0u64;
    let den = beta.iter().map(|b| b.den()).fold(1u64, num_integer::lcm);
    for s in all_subgroups_solvable(q) {
        if sum_sq == order as u64 {
            break;
        }
        let elems = s.to_vec();
        let Some(sigma) = coboundary_preimage(q, &elems, beta, den) else {
            continue;
        };
        let reps = left_transversal(q, &whole(q), &s);
        let lams = lin_chars_of(q, &s);
        let cands = exec.map(&lams, |lam| {
            let xi = |h: usize| sigma[h] + lam[h];
            let values: ClassFunction = (0..order)
                .map(|x| {
                    let mut acc = CycInt::zero();
                    for &c in &reps {
                        let h = q.mul(q.mul(q.inv(c), x), c);
                        if s.contains(h) {
                            acc += &CycInt::root(beta[x * order + c] - beta[c * order + h] + xi(h));
                        }
                    }
                    acc
                })
                .collect();
            let norm = inner_product(&values, &values, None, order as u64).ok()?;
            norm.is_one().then_some(values)
        });
        for values in cands.into_iter().flatten() {
            if out.iter().any(|c| c.values == values) {
                continue;
            }
            let degree = reps.len() as u64;
            sum_sq += degree * degree;
            out.push(ProjChar { degree, values });
        }
    }
    if sum_sq != order as u64 {
        return Err(Error::Unsupported(format!(
            "monomial search found squared degrees summing to {sum_sq}, not {order}"
        )));
    }
    Ok(out)
}

/// `σ` on the subgroup `elems` with `σ(x) + σ(y) - σ(xy) = β(x, y)`, if any.
fn coboundary_preimage<G: Group + ?Sized>(q: &G, elems: &[usize], beta: &[Qz], den: u64) -> Option<Vec<Qz>> {
    let order = q.order();
    let k = elems.len();
    let modulus = den * k as u64;
    let pos: std::collections::HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut rows = Vec::with_capacity(k * k);
    let mut rhs = Vec::with_capacity(k * k);
    for (a, &x) in elems.iter().enumerate() {
        for (b, &y) in elems.iter().enumerate() {
            let mut row = vec![0i64; k];
            row[a] += 1;
            row[b] += 1;
            row[pos[&q.mul(x, y)]] -= 1;
            rows.push(row);
            rhs.push(beta[x * order + y].over(modulus)? as i64);
        }
    }
    let sol = linalg::solve(&rows, &rhs, k, modulus)?;
    let mut sigma = vec![Qz::ZERO; order];
    for (a, &x) in elems.iter().enumerate() {
        sigma[x] = Qz::new(sol[a] as i64, modulus);
    }
    Some(sigma)
}

/// The irreducible characters of `g` (every one must be monomial).
pub fn irr_by_induction<G: Group + ?Sized>(g: &G, exec: Exec) -> Result<Vec<ProjChar>> {
    let zero = vec![Qz::ZERO; g.order() * g.order()];
    proj_irr(g, &zero, exec)
}

/// The degree ratios `λ(1)/θ(1)` for `λ ∈ Irr(K | θ)`, `K = Stab_G(θ)`.
///
/// When `K/N` is a p-group these are the degrees of the irreducible projective
/// characters of `K/N` for the inverse of the factor set of a strong extension
/// of `θ` to `K`. Otherwise `Ind_N^K θ` is decomposed against `Irr(K)`.
pub fn irr_over(ext: &Extension, theta: &Pair, k: &TopSet, exec: Exec) -> Result<Vec<u64>> {
    if ext.is_p_group_top(k) {
        let pair = crate::cohomology::pair_on(ext, theta, k)?;
        let alpha = crate::cohomology::factor_set(ext, &pair);
        let table = ext.top_table(k);
        let inverse: Vec<Qz> = alpha.z.iter().map(|&a| -a).collect();
        let chars = proj_irr(&table, &inverse, exec)?;
        let mut ratios: Vec<u64> = chars.iter().map(|c| c.degree).collect();
        ratios.sort_unstable();
        return Ok(ratios);
    }
    let n = ext.normal();
    let elems: Vec<usize> = ext.preimage(k).to_vec();
    let kg = TableGroup::from_subset(ext, &elems);
    let theta_vals: Vec<CycInt> = (0..n.order()).map(|x| induced_value(n, &theta.chi, x)).collect();
    let deg = theta.degree();
    let mut ratios = Vec::new();
    for lam in irr_by_induction(&kg, exec)? {
        let restricted = &lam.values[..n.order()];
        let ip = inner_product(restricted, &theta_vals, None, n.order() as u64)?;
        if !ip.is_zero() {
            let d = lam.values[0].as_integer().ok_or_else(|| Error::Internal("non-integral degree".into()))? as u64;
            if !d.is_multiple_of(deg) {
                return Err(Error::Internal("degree over θ is not a multiple of θ(1)".into()));
            }
            ratios.push(d / deg);
        }
    }
    ratios.sort_unstable();
    Ok(ratios)
}

/// Whether `values` is a class function of `g` that is an irreducible
/// character (norm one); used in tests.
pub fn has_norm_one<G: Group + ?Sized>(g: &G, values: &[CycInt]) -> bool {
    inner_product(values, values, None, g.order() as u64).is_ok_and(|r| r == BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ambient;

    #[test]
    fn ordinary_characters() {
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let irr = irr_by_induction(&s3, Exec::Sequential).unwrap();
        let mut degs: Vec<u64> = irr.iter().map(|c| c.degree).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 2]);
        let q8 = ambient::dicyclic(2);
        let mut degs: Vec<u64> = irr_by_induction(&q8, Exec::Sequential).unwrap().iter().map(|c| c.degree).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn klein_four_with_nontrivial_class() {
        let v4 = ambient::direct_product(&ambient::cyclic(2), &ambient::cyclic(2));
        // β(x, y) = x_1 y_2 / 2 is a non-trivial class on C_2 x C_2.
        let mut beta = vec![Qz::ZERO; 16];
        for x in 0..4 {
            for y in 0..4 {
                beta[x * 4 + y] = Qz::new(((x / 2) * (y % 2)) as i64, 2);
            }
        }
        let chars = proj_irr(&v4, &beta, Exec::Sequential).unwrap();
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].degree, 2);
    }
}
