//! Brute-force reference computations on value tables and exhaustive
//! searches. Nothing here calls the character, cohomology or zeta modules:
//! only group elements, subgroup closures and cyclotomic arithmetic are used,
//! so agreement with the main path is an independent check.

use crate::bits::Bits;
use crate::characters::Pair;
use crate::cyclotomic::{inner_product, CycInt, Qz};
use crate::error::{Error, Result};
use crate::group::ambient::Heisenberg;
use crate::group::{all_subgroups_solvable, left_transversal, small_generating_set, whole, Extension, Group};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use std::collections::HashMap;

/// Values of a class function on every element of a group.
pub type Table = Vec<CycInt>;

/// Largest p-group handled by [`oracle_irr_by_values`].
pub const MAX_P_GROUP: usize = 243;
/// Largest group of mixed order handled by [`oracle_irr_by_values`].
pub const MAX_MIXED: usize = 648;

/// The least common multiple of the element orders.
pub fn group_exponent<G: Group + ?Sized>(g: &G) -> u64 {
    (0..g.order()).map(|x| g.elem_order(x)).fold(1, |a, b| a.lcm(&b))
}

fn is_prime_power(n: u64) -> bool {
    let Some(p) = (2..=n).find(|d| n.is_multiple_of(*d)) else {
        return true;
    };
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// A key that is equal for two tables exactly when the tables are equal.
fn table_key(t: &[CycInt], level: u64) -> Vec<i64> {
    t.iter().flat_map(|v| v.embed(level).coeffs().to_vec()).collect()
}

fn degree(t: &[CycInt]) -> u64 {
    t[0].as_integer().unwrap_or(0) as u64
}

/// `v ζ` for the root of unity `ζ = e(q)`, with `q` of denominator dividing `level`.
fn times_root(v: &CycInt, q: Qz, level: u64) -> CycInt {
    let e = v.embed(level);
    let shift = q.over(level).expect("root of unity of the table's level") as usize;
    let mut poly = vec![0i64; level as usize];
    for (k, &c) in e.coeffs().iter().enumerate() {
        poly[(k + shift) % level as usize] += c;
    }
    CycInt::from_coeffs(level, &poly)
}

/// The number of conjugacy classes of `g`, by orbits under conjugation.
pub fn class_count<G: Group + ?Sized>(g: &G) -> usize {
    let gens = small_generating_set(g, &whole(g));
    let mut seen = Bits::new(g.order());
    let mut classes = 0;
    for x in 0..g.order() {
        if !seen.insert(x) {
            continue;
        }
        classes += 1;
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for &s in &gens {
                let z = g.conj(s, y);
                if seen.insert(z) {
                    queue.push(z);
                }
            }
        }
    }
    classes
}

/// Every homomorphism from the subgroup `sub` to Q/Z, as a table over all of
/// `g` (zero off `sub`). Values are guessed on a generating set and propagated
/// along the Cayley graph; guesses that disagree somewhere are discarded.
pub fn linear_characters<G: Group + ?Sized>(g: &G, sub: &Bits) -> Vec<Vec<Qz>> {
    let gens = small_generating_set(g, sub);
    let orders: Vec<u64> = gens.iter().map(|&x| g.elem_order(x)).collect();
    let total: u64 = orders.iter().product();
    let mut out = Vec::new();
    'guess: for code in 0..total {
        let mut rest = code;
        let step: Vec<Qz> = orders
            .iter()
            .map(|&o| {
                let a = rest % o;
                rest /= o;
                Qz::new(a as i64, o)
            })
            .collect();
        let mut value: Vec<Option<Qz>> = vec![None; g.order()];
        value[0] = Some(Qz::ZERO);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let vx = value[x].expect("visited");
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let vy = vx + step[k];
                match value[y] {
                    None => {
                        value[y] = Some(vy);
                        queue.push(y);
                    }
                    Some(v) if v != vy => continue 'guess,
                    Some(_) => {}
                }
            }
        }
        out.push(value.into_iter().map(|v| v.unwrap_or(Qz::ZERO)).collect());
    }
    out
}

/// `Ind_S^G λ` for a degree-one character `λ` of `S`, by summing over a left
/// transversal: `Ind(x) = Σ_t [t^{-1} x t ∈ S] λ(t^{-1} x t)`.
pub fn induce<G: Group + ?Sized>(g: &G, sub: &Bits, lambda: &[Qz], level: u64) -> Table {
    let reps = left_transversal(g, &whole(g), sub);
    (0..g.order())
        .map(|x| {
            let mut poly = vec![0i64; level as usize];
            for &t in &reps {
                let y = g.mul(g.mul(g.inv(t), x), t);
                if sub.contains(y) {
                    poly[lambda[y].over(level).expect("value of the group's exponent") as usize] += 1;
                }
            }
            CycInt::from_coeffs(level, &poly)
        })
        .collect()
}

/// Whether a class function of `g` has norm one.
pub fn is_irreducible<G: Group + ?Sized>(g: &G, t: &[CycInt]) -> bool {
    inner_product(t, t, None, g.order() as u64).is_ok_and(|r| r == BigRational::one())
}

/// All irreducible characters of `g` as value tables: the characters of norm
/// one among the inductions of degree-one characters of all subgroups.
///
/// Fails if the group is too large, or if some irreducible character is not
/// induced from a degree-one character (the search then ends short of
/// `Σ χ(1)^2 = |G|`).
pub fn oracle_irr_by_values<G: Group + ?Sized>(g: &G) -> Result<Vec<Table>> {
    let order = g.order();
    let bound = if is_prime_power(order as u64) { MAX_P_GROUP } else { MAX_MIXED };
    if order > bound {
        return Err(Error::Resource(format!("group of order {order} exceeds the oracle bound {bound}")));
    }
    let level = group_exponent(g);
    let mut out: Vec<Table> = Vec::new();
    let mut keys: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut sum_sq = 0usize;
    for s in all_subgroups_solvable(g) {
        if sum_sq == order {
            break;
        }
        for lambda in linear_characters(g, &s) {
            let t = induce(g, &s, &lambda, level);
            let key = table_key(&t, level);
            if keys.contains_key(&key) || !is_irreducible(g, &t) {
                continue;
            }
            let d = degree(&t) as usize;
            keys.insert(key, out.len());
            out.push(t);
            sum_sq += d * d;
        }
    }
    if sum_sq != order {
        return Err(Error::Unsupported("group has an irreducible character not induced from degree one".into()));
    }
    Ok(out)
}

/// The twist classes of the irreducible characters `tables` of a group:
/// `χ ~ χ'` when `χ' = χ ψ` for a degree-one character `ψ`. Classes are
/// listed by their least member.
pub fn oracle_twist_partition<G: Group + ?Sized>(g: &G, tables: &[Table]) -> Result<Vec<Vec<usize>>> {
    let level = group_exponent(g);
    let lin = linear_characters(g, &whole(g));
    let index: HashMap<Vec<i64>, usize> = tables.iter().enumerate().map(|(k, t)| (table_key(t, level), k)).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; tables.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..tables.len() {
        if class_of[a].is_some() {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for psi in &lin {
            let twisted: Table = tables[a].iter().zip(psi).map(|(v, &q)| times_root(v, q, level)).collect();
            let b = *index
                .get(&table_key(&twisted, level))
                .ok_or_else(|| Error::Internal("twisted character missing from the table".into()))?;
            if class_of[b].is_none() {
                class_of[b] = Some(c);
                members.push(b);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(classes)
}

/// The distinct restrictions to `N` of the degree-one characters of `G`.
pub fn lin_restrictions(ext: &Extension) -> Vec<Vec<Qz>> {
    let size = ext.normal().order();
    let mut taus: Vec<Vec<Qz>> = linear_characters(ext, &whole(ext)).into_iter().map(|e| e[..size].to_vec()).collect();
    taus.sort();
    taus.dedup();
    taus
}

/// Whether `b = a τ` for one of the restrictions `taus`, on tables of level `level`.
pub fn oracle_twist_equal(a: &[CycInt], b: &[CycInt], taus: &[Vec<Qz>], level: u64) -> bool {
    let key = table_key(b, level);
    taus.iter().any(|tau| {
        let twisted: Table = a.iter().zip(tau).map(|(v, &q)| times_root(v, q, level)).collect();
        table_key(&twisted, level) == key
    })
}

/// Whether two value tables are equal.
pub fn tables_equal(a: &[CycInt], b: &[CycInt], level: u64) -> bool {
    table_key(a, level) == table_key(b, level)
}

/// Whether `z` (row-major on `q`) equals `b(x) + b(y) - b(xy)` for some
/// `b: q -> Q/Z`, by trying every `b` with denominators dividing `den(z) |q|`.
///
/// Every solution has such denominators: summing the equation over `y` gives
/// `|q| b(x) = Σ_y z(x, y)`. The search is bounded to `|q| ≤ 4` and
/// denominators at most 8.
pub fn oracle_coboundary<G: Group + ?Sized>(q: &G, z: &[Qz]) -> Result<bool> {
    let n = q.order();
    if z.len() != n * n {
        return Err(Error::Invalid("matrix size does not match the group".into()));
    }
    let den = z.iter().map(|a| a.den()).fold(1u64, |a, b| a.lcm(&b));
    if n > 4 || den > 8 {
        return Err(Error::Resource(format!("exhaustive search needs |Q| ≤ 4 and denominators ≤ 8, got {n} and {den}")));
    }
    let d = den * n as u64;
    let target: Vec<u64> = z.iter().map(|a| a.over(d).expect("denominator divides d")).collect();
    let b0 = target[0];
    let free = n - 1;
    let mut b = vec![b0; n];
    for code in 0..d.pow(free as u32) {
        let mut rest = code;
        for v in b.iter_mut().skip(1) {
            *v = rest % d;
            rest /= d;
        }
        let ok = (0..n).all(|x| (0..n).all(|y| (b[x] + b[y] + d - b[q.mul(x, y)]) % d == target[x * n + y]));
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The number of alternating bicharacters of the abelian group `q`, which is
/// the order of its Schur multiplier.
///
/// Every assignment of values on pairs of generators is extended to all
/// words in the generators; an assignment counts when the extension is well
/// defined on elements and vanishes on the diagonal.
pub fn oracle_schur_abelian<G: Group + ?Sized>(q: &G) -> Result<usize> {
    let n = q.order();
    if (0..n).any(|a| (0..n).any(|b| q.mul(a, b) != q.mul(b, a))) {
        return Err(Error::Invalid("the Schur multiplier oracle needs an abelian group".into()));
    }
    let gens = small_generating_set(q, &whole(q));
    let r = gens.len();
    let orders: Vec<u64> = gens.iter().map(|&x| q.elem_order(x)).collect();
    let words_len: u64 = orders.iter().product();
    if words_len > 4096 || r > 4 {
        return Err(Error::Resource("too many generators for the bicharacter search".into()));
    }
    let mut words: Vec<(usize, Vec<u64>)> = Vec::with_capacity(words_len as usize);
    for code in 0..words_len {
        let mut rest = code;
        let mut coords = Vec::with_capacity(r);
        let mut x = 0;
        for (k, &o) in orders.iter().enumerate() {
            let a = rest % o;
            rest /= o;
            coords.push(a);
            x = q.mul(x, q.pow(gens[k], a));
        }
        words.push((x, coords));
    }
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let dens: Vec<u64> = pairs.iter().map(|&(i, j)| orders[i].gcd(&orders[j])).collect();
    let total: u64 = dens.iter().product();
    let mut count = 0;
    for code in 0..total {
        let mut rest = code;
        let mut beta = vec![vec![Qz::ZERO; r]; r];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let v = Qz::new((rest % dens[k]) as i64, dens[k]);
            rest /= dens[k];
            beta[i][j] = v;
            beta[j][i] = -v;
        }
        let form = |a: &[u64], b: &[u64]| -> Qz {
            let mut acc = Qz::ZERO;
            for i in 0..r {
                for j in 0..r {
                    acc += beta[i][j].pow((a[i] * b[j]) as i64);
                }
            }
            acc
        };
        let mut value: HashMap<(usize, usize), Qz> = HashMap::new();
        let consistent = words.iter().all(|(x, a)| {
            words.iter().all(|(y, b)| {
                let v = form(a, b);
                *value.entry((*x, *y)).or_insert(v) == v
            })
        }) && words.iter().all(|(_, a)| form(a, a).is_zero());
        if consistent {
            count += 1;
        }
    }
    Ok(count)
}

/// The degree-one characters of `K/N` in `Γ_{K,θ̃}`, as vectors over `tops`:
/// those `ν` for which some degree-one `ε` of `G` agrees with `ν` wherever a
/// strong extension `θ̂` of `θ` to `K` is nonzero.
///
/// `θ̂` is rebuilt from the pair `(H, χ)` with `HN = K` by inducing the
/// extension `y t m -> χ(m)` of `χ` from `H` to `K` element by element.
pub fn oracle_gamma(ext: &Extension, pair: &Pair) -> Result<Vec<Vec<Qz>>> {
    let tops = &pair.h.tops;
    let size = ext.normal().order();
    let k_bits = ext.preimage(tops);
    let h_bits = pair.h.elements(ext);
    let n_bits = Bits::from_iter(ext.order(), 0..size);
    let m_bits = Bits::from_iter(ext.order(), pair.chi.dom.bits.iter());
    let mut tail = vec![usize::MAX; ext.index()];
    for h in h_bits.iter() {
        let (i, n) = ext.split(h);
        if tail[i] == usize::MAX {
            tail[i] = n;
        }
    }
    let chi_hat = |h: usize| -> Qz {
        let (i, n) = ext.split(h);
        let m = ext.mul(ext.inv(tail[i]), n);
        pair.chi.value(m)
    };
    let level = group_exponent(ext);
    let reps = left_transversal(ext, &n_bits, &m_bits);
    let support: Vec<usize> = k_bits
        .iter()
        .filter(|&x| {
            let mut poly = vec![0i64; level as usize];
            for &t in &reps {
                let y = ext.mul(ext.mul(ext.inv(t), x), t);
                if h_bits.contains(y) {
                    poly[chi_hat(y).over(level).expect("value of the group's exponent") as usize] += 1;
                }
            }
            !CycInt::from_coeffs(level, &poly).is_zero()
        })
        .collect();
    let lin_g = linear_characters(ext, &whole(ext));
    let mut out = Vec::new();
    for nu in linear_characters(ext, &k_bits) {
        if (0..size).any(|x| !nu[x].is_zero()) {
            continue;
        }
        if lin_g.iter().any(|eps| support.iter().all(|&x| eps[x] == nu[x])) {
            out.push(tops.iter().map(|&i| nu[ext.y(i)]).collect());
        }
    }
    out.sort();
    Ok(out)
}

/// The irreducible characters of the Heisenberg group over `Z/p^m`, by
/// Clifford theory over the abelian normal subgroup `A = {(0, b, c)}` with
/// cyclic quotient generated by `x = (1, 0, 0)`.
///
/// Each orbit of `⟨x⟩` on `Lin(A)` has a stabiliser `S = ⟨A, x^k⟩`; every
/// extension of an orbit representative to `S` induces irreducibly to `G`.
pub fn oracle_heisenberg_irr(p: u64, m: u32) -> Result<(Heisenberg, Vec<Table>)> {
    let g = Heisenberg::new(p, m);
    let q = g.modulus();
    if q > 27 {
        return Err(Error::Resource(format!("Heisenberg oracle limited to modulus 27, got {q}")));
    }
    let a_size = (q * q) as usize;
    let a_bits = Bits::from_iter(g.order(), 0..a_size);
    let x = g.elem(1, 0, 0);
    let x_inv = g.inv(x);
    let lin_a = linear_characters(&g, &a_bits);
    let index: HashMap<Vec<Qz>, usize> = lin_a.iter().enumerate().map(|(k, l)| (l[..a_size].to_vec(), k)).collect();
    let conj_by_xr = |lam: &[Qz], r: u64| -> Vec<Qz> {
        let xr = g.pow(x, r);
        (0..a_size).map(|a| lam[g.mul(g.mul(g.inv(xr), a), xr)]).collect()
    };
    let mut done = vec![false; lin_a.len()];
    let mut out = Vec::new();
    for (li, lam) in lin_a.iter().enumerate() {
        if done[li] {
            continue;
        }
        let mut k = 1;
        loop {
            let c = conj_by_xr(lam, k);
            done[index[&c]] = true;
            if c == lam[..a_size] {
                break;
            }
            k += 1;
        }
        let s_index = q / k;
        for t in 0..s_index {
            let ext_val = |s: usize| -> Option<Qz> {
                let alpha = s as u64 / (q * q);
                if !alpha.is_multiple_of(k) {
                    return None;
                }
                let a = g.mul(g.pow(x_inv, alpha), s);
                Some(lam[a] + Qz::new((t * (alpha / k)) as i64, s_index))
            };
            let table: Table = (0..g.order())
                .map(|z| {
                    let mut poly = vec![0i64; q as usize];
                    for r in 0..k {
                        let xr = g.pow(x, r);
                        let y = g.mul(g.mul(g.inv(xr), z), xr);
                        if let Some(v) = ext_val(y) {
                            poly[v.over(q).expect("value of order dividing q") as usize] += 1;
                        }
                    }
                    CycInt::from_coeffs(q, &poly)
                })
                .collect();
            out.push(table);
        }
    }
    let sum_sq: u64 = out.iter().map(|t| degree(t).pow(2)).sum();
    if sum_sq != g.order() as u64 {
        return Err(Error::Internal("Heisenberg characters do not account for the group order".into()));
    }
    Ok((g, out))
}

/// A twist class of `Irr(N)` whose stabilisers satisfy `N ≤ K < L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictChain {
    /// The least member of the class, as an index into the oracle's `Irr(N)`.
    pub rep: usize,
    pub degree: u64,
    pub k_order: usize,
    pub l_order: usize,
}

/// Stabilisers of the irreducible characters of `N` and of their twist
/// classes, from value tables: `K` fixes `θ`, `L` maps `θ` to some `θ ψ|_N`.
/// Returns `(degree, |K|, |L|)` per twist class of `Irr(N)` under `Lin(G)`,
/// with classes sorted.
pub fn oracle_stabilisers(ext: &Extension) -> Result<Vec<(u64, usize, usize)>> {
    Ok(stabiliser_data(ext)?.into_iter().map(|(_, d, k, l)| (d, k, l)).collect())
}

fn stabiliser_data(ext: &Extension) -> Result<Vec<(usize, u64, usize, usize)>> {
    let n = ext.normal();
    let size = n.order();
    let level = group_exponent(n);
    let tables = oracle_irr_by_values(n)?;
    let index: HashMap<Vec<i64>, usize> = tables.iter().enumerate().map(|(k, t)| (table_key(t, level), k)).collect();
    let lin_g = linear_characters(ext, &whole(ext));
    let mut taus: Vec<Vec<Qz>> = lin_g.iter().map(|e| e[..size].to_vec()).collect();
    taus.sort();
    taus.dedup();
    let twist = |t: &Table, tau: &[Qz]| -> Table { t.iter().zip(tau).map(|(v, &q)| times_root(v, q, level)).collect() };
    let conj = |t: &Table, g: usize| -> Table { (0..size).map(|z| t[ext.mul(ext.mul(ext.inv(g), z), g)].clone()).collect() };
    let mut class_of = vec![usize::MAX; tables.len()];
    let mut out = Vec::new();
    for a in 0..tables.len() {
        if class_of[a] != usize::MAX {
            continue;
        }
        for tau in &taus {
            class_of[index[&table_key(&twist(&tables[a], tau), level)]] = a;
        }
        let key = table_key(&tables[a], level);
        let mut k_order = 0;
        let mut l_order = 0;
        for i in 0..ext.index() {
            let c = conj(&tables[a], ext.y(i));
            let c_key = table_key(&c, level);
            if c_key == key {
                k_order += size;
            }
            if taus.iter().any(|tau| table_key(&twist(&tables[a], tau), level) == c_key) {
                l_order += size;
            }
        }
        out.push((a, degree(&tables[a]), k_order, l_order));
    }
    out.sort_by_key(|&(_, d, k, l)| (d, k, l));
    Ok(out)
}

/// The twist classes of `Irr(N)` whose stabilisers satisfy `N ≤ K < L`.
pub fn corpus_search_lkn(ext: &Extension) -> Result<Vec<StrictChain>> {
    Ok(stabiliser_data(ext)?
        .into_iter()
        .filter(|&(_, _, k, l)| k < l)
        .map(|(rep, degree, k_order, l_order)| StrictChain { rep, degree, k_order, l_order })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ambient::{cyclic, dicyclic, direct_product, modular_p_group, perm_group};
    use crate::group::TableGroup;

    fn s3() -> TableGroup {
        perm_group(&[vec![1, 2, 0], vec![1, 0, 2]])
    }

    fn degrees(tables: &[Table]) -> Vec<u64> {
        let mut d: Vec<u64> = tables.iter().map(|t| degree(t)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn irreducibles_of_small_groups() {
        assert_eq!(degrees(&oracle_irr_by_values(&cyclic(2)).unwrap()), vec![1, 1]);
        assert_eq!(degrees(&oracle_irr_by_values(&s3()).unwrap()), vec![1, 1, 2]);
        let h3 = Heisenberg::new(3, 1);
        let irr = oracle_irr_by_values(&h3).unwrap();
        assert_eq!(irr.len(), 11);
        assert_eq!(irr.len(), class_count(&h3));
        assert_eq!(degrees(&irr).iter().filter(|&&d| d == 3).count(), 2);
    }

    #[test]
    fn quaternion_and_s4() {
        let q8 = dicyclic(2);
        assert_eq!(degrees(&oracle_irr_by_values(&q8).unwrap()), vec![1, 1, 1, 1, 2]);
        let s4 = perm_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]);
        let irr = oracle_irr_by_values(&s4).unwrap();
        assert_eq!(degrees(&irr), vec![1, 1, 2, 3, 3]);
        assert_eq!(class_count(&s4), 5);
    }

    fn sl23() -> TableGroup {
        let mul = |a: &[u8; 4], b: &[u8; 4]| -> [u8; 4] {
            [
                (a[0] * b[0] + a[1] * b[2]) % 3,
                (a[0] * b[1] + a[1] * b[3]) % 3,
                (a[2] * b[0] + a[3] * b[2]) % 3,
                (a[2] * b[1] + a[3] * b[3]) % 3,
            ]
        };
        TableGroup::generate([1, 0, 0, 1], &[[1, 1, 0, 1], [0, 2, 1, 0]], mul).0
    }

    #[test]
    fn non_monomial_group_is_reported() {
        let g = sl23();
        assert_eq!(g.order(), 24);
        assert_eq!(class_count(&g), 7);
        assert!(matches!(oracle_irr_by_values(&g), Err(Error::Unsupported(_))));
    }

    #[test]
    fn twist_partitions() {
        let c4 = cyclic(4);
        let t = oracle_irr_by_values(&c4).unwrap();
        assert_eq!(oracle_twist_partition(&c4, &t).unwrap().len(), 1);
        let g = s3();
        let t = oracle_irr_by_values(&g).unwrap();
        assert_eq!(oracle_twist_partition(&g, &t).unwrap().len(), 2);
        let h3 = Heisenberg::new(3, 1);
        let t = oracle_irr_by_values(&h3).unwrap();
        assert_eq!(oracle_twist_partition(&h3, &t).unwrap().len(), 3);
    }

    #[test]
    fn coboundary_search() {
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(oracle_coboundary(&v4, &[Qz::ZERO; 16]).unwrap());
        let mut z = vec![Qz::ZERO; 16];
        // The bicharacter ((a1, a2), (b1, b2)) -> a1 b2 / 2 on C2 x C2.
        for x in 0..4 {
            for y in 0..4 {
                let (a1, b2) = (x / 2, y % 2);
                z[x * 4 + y] = Qz::new((a1 * b2) as i64, 2);
            }
        }
        assert!(!oracle_coboundary(&v4, &z).unwrap());
        let c4 = cyclic(4);
        let b = [Qz::ZERO, Qz::new(1, 8), Qz::new(3, 8), Qz::new(5, 8)];
        let db: Vec<Qz> = (0..16).map(|k| b[k / 4] + b[k % 4] - b[c4.mul(k / 4, k % 4)]).collect();
        assert!(oracle_coboundary(&c4, &db).unwrap());
        assert!(oracle_coboundary(&cyclic(5), &[Qz::ZERO; 25]).is_err());
    }

    #[test]
    fn schur_multipliers_of_abelian_groups() {
        assert_eq!(oracle_schur_abelian(&cyclic(3)).unwrap(), 1);
        assert_eq!(oracle_schur_abelian(&direct_product(&cyclic(2), &cyclic(2))).unwrap(), 2);
        assert_eq!(oracle_schur_abelian(&direct_product(&cyclic(3), &cyclic(3))).unwrap(), 3);
        assert_eq!(oracle_schur_abelian(&direct_product(&cyclic(4), &cyclic(2))).unwrap(), 2);
        assert!(oracle_schur_abelian(&s3()).is_err());
    }

    #[test]
    fn heisenberg_by_clifford() {
        let (g, irr) = oracle_heisenberg_irr(3, 1).unwrap();
        assert_eq!(irr.len(), class_count(&g));
        let classes = oracle_twist_partition(&g, &irr).unwrap();
        assert_eq!(classes.len(), 3);
        let (g, irr) = oracle_heisenberg_irr(2, 2).unwrap();
        assert_eq!(irr.len(), class_count(&g));
        assert!(irr.iter().all(|t| is_irreducible(&g, t)));
    }

    #[test]
    fn strict_chains() {
        let m27 = modular_p_group(3, 2);
        let a = (0..27).find(|&x| m27.elem_order(x) == 9).unwrap();
        let (ext, _) = Extension::from_ambient(&m27, &crate::group::closure(&m27, &[a])).unwrap();
        let chains = corpus_search_lkn(&ext).unwrap();
        assert!(chains.iter().any(|c| c.k_order == 9 && c.l_order == 27));
        let (ext, _) = Extension::from_ambient(&s3(), &crate::group::normal_sylow(&s3(), 3).unwrap()).unwrap();
        assert!(corpus_search_lkn(&ext).unwrap().is_empty());
        let c6 = cyclic(6);
        let (ext, _) = Extension::from_ambient(&c6, &crate::group::normal_sylow(&c6, 3).unwrap()).unwrap();
        assert!(corpus_search_lkn(&ext).unwrap().is_empty());
    }
}
