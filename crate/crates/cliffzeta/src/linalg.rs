//! Linear systems over `Z/M`.
//!
//! The modulus is split into prime powers; over each `Z/q^e` the matrix is
//! diagonalised by row and column operations with a pivot of least
//! `q`-valuation, and the local answers are recombined by the Chinese
//! remainder theorem.

use crate::group::prime_factors;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn reduce(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

fn valuation(x: u64, q: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(q) {
        x /= q;
        v += 1;
    }
    v
}

/// A matrix over `Z/q^e` reduced to diagonal form `D = U A V`.
struct LocalForm {
    q: u64,
    e: u32,
    modulus: u64,
    /// Valuations `v` of the diagonal entries `q^v`.
    pivots: Vec<u32>,
    /// Column transform, `ncols x ncols`.
    v: Vec<Vec<u64>>,
    /// `U b` for the right-hand side, if one was supplied.
    rhs: Vec<u64>,
    nrows: usize,
}

fn diagonalise(a: &[Vec<i64>], b: &[i64], ncols: usize, q: u64, e: u32) -> LocalForm {
    let modulus = q.pow(e);
    let nrows = a.len();
    let mut m: Vec<Vec<u64>> = a.iter().map(|row| row.iter().map(|&x| reduce(x, modulus)).collect()).collect();
    let mut rhs: Vec<u64> = b.iter().map(|&x| reduce(x, modulus)).collect();
    rhs.resize(nrows, 0);
    let mut v: Vec<Vec<u64>> = (0..ncols).map(|i| (0..ncols).map(|j| u64::from(i == j)).collect()).collect();
    let mut pivots = Vec::new();
    for k in 0..nrows.min(ncols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 {
                    let val = valuation(x, q, e);
                    if best.is_none_or(|(bv, _, _)| val < bv) {
                        best = Some((val, i, j));
                    }
                }
            }
            if best.is_some_and(|(bv, _, _)| bv == 0) {
                break;
            }
        }
        let Some((val, i, j)) = best else { break };
        m.swap(k, i);
        rhs.swap(k, i);
        for row in m.iter_mut() {
            row.swap(k, j);
        }
        for row in v.iter_mut() {
            row.swap(k, j);
        }
        let qv = q.pow(val);
        let unit = m[k][k] / qv;
        let inv = crate::cyclotomic::mod_inverse(unit % modulus, modulus).expect("unit part is invertible");
        for x in m[k].iter_mut() {
            *x = mulmod(*x, inv, modulus);
        }
        rhs[k] = mulmod(rhs[k], inv, modulus);
        for i2 in (k + 1)..nrows {
            let f = m[i2][k] / qv;
            if f == 0 {
                continue;
            }
            for j2 in k..ncols {
                let t = mulmod(f, m[k][j2], modulus);
                m[i2][j2] = (m[i2][j2] + modulus - t) % modulus;
            }
            let t = mulmod(f, rhs[k], modulus);
            rhs[i2] = (rhs[i2] + modulus - t) % modulus;
        }
        for j2 in (k + 1)..ncols {
            let g = m[k][j2] / qv;
            if g == 0 {
                continue;
            }
            for row in m.iter_mut() {
                let t = mulmod(g, row[k], modulus);
                row[j2] = (row[j2] + modulus - t) % modulus;
            }
            for row in v.iter_mut() {
                let t = mulmod(g, row[k], modulus);
                row[j2] = (row[j2] + modulus - t) % modulus;
            }
        }
        pivots.push(val);
    }
    LocalForm { q, e, modulus, pivots, v, rhs, nrows }
}

impl LocalForm {
    fn solution(&self) -> Option<Vec<u64>> {
        let ncols = self.v.len();
        let mut z = vec![0u64; ncols];
        for (k, &val) in self.pivots.iter().enumerate() {
            let c = self.rhs[k];
            if valuation(c, self.q, self.e) < val {
                return None;
            }
            z[k] = c / self.q.pow(val);
        }
        if self.rhs[self.pivots.len()..self.nrows].iter().any(|&c| c != 0) {
            return None;
        }
        Some(self.apply_v(&z))
    }

    fn kernel(&self) -> Vec<Vec<u64>> {
        let ncols = self.v.len();
        let mut gens = Vec::new();
        for k in 0..ncols {
            let scale = match self.pivots.get(k) {
                Some(&val) => self.q.pow(self.e - val),
                None => 1,
            };
            if scale == self.modulus {
                continue;
            }
            let mut z = vec![0u64; ncols];
            z[k] = scale;
            gens.push(self.apply_v(&z));
        }
        gens
    }

    fn apply_v(&self, z: &[u64]) -> Vec<u64> {
        self.v
            .iter()
            .map(|row| row.iter().zip(z).fold(0u64, |acc, (&a, &b)| (acc + mulmod(a, b, self.modulus)) % self.modulus))
            .collect()
    }
}

fn prime_powers(modulus: u64) -> Vec<(u64, u32)> {
    prime_factors(modulus)
        .into_iter()
        .map(|q| {
            let mut e = 0;
            let mut m = modulus;
            while m.is_multiple_of(q) {
                m /= q;
                e += 1;
            }
            (q, e)
        })
        .collect()
}

/// The element of `Z/modulus` congruent to `x` modulo `part` and to `0`
/// modulo the complementary factor.
fn lift(x: u64, part: u64, modulus: u64) -> u64 {
    let co = modulus / part;
    let inv = crate::cyclotomic::mod_inverse(co % part, part).unwrap_or(0);
    mulmod(mulmod(x, inv, part), co, modulus)
}

/// A solution of `A x = b` over `Z/modulus`, with `A` given by rows of
/// length `ncols`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<i64>], b: &[i64], ncols: usize, modulus: u64) -> Option<Vec<u64>> {
    if modulus == 1 {
        return Some(vec![0; ncols]);
    }
    let mut x = vec![0u64; ncols];
    for (q, e) in prime_powers(modulus) {
        let form = diagonalise(a, b, ncols, q, e);
        let local = form.solution()?;
        for (xi, li) in x.iter_mut().zip(local) {
            *xi = (*xi + lift(li, form.modulus, modulus)) % modulus;
        }
    }
    Some(x)
}

/// Generators of the solution module of `A x = 0` over `Z/modulus`.
pub fn kernel(a: &[Vec<i64>], ncols: usize, modulus: u64) -> Vec<Vec<u64>> {
    if modulus == 1 {
        return Vec::new();
    }
    let mut gens = Vec::new();
    for (q, e) in prime_powers(modulus) {
        let form = diagonalise(a, &[], ncols, q, e);
        for g in form.kernel() {
            gens.push(g.into_iter().map(|x| lift(x, form.modulus, modulus)).collect());
        }
    }
    gens
}

/// Whether `x` satisfies `A x = b` over `Z/modulus`.
pub fn satisfies(a: &[Vec<i64>], b: &[i64], x: &[u64], modulus: u64) -> bool {
    a.iter().zip(b).all(|(row, &rhs)| {
        let lhs = row
            .iter()
            .zip(x)
            .fold(0u64, |acc, (&c, &xi)| (acc + mulmod(reduce(c, modulus), xi, modulus)) % modulus);
        lhs == reduce(rhs, modulus)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn simple_systems() {
        assert_eq!(solve(&[vec![2]], &[1], 1, 4), None);
        let x = solve(&[vec![2]], &[2], 1, 4).unwrap();
        assert!(satisfies(&[vec![2]], &[2], &x, 4));
        let x = solve(&[vec![3, 0], vec![0, 2]], &[3, 4], 2, 12).unwrap();
        assert!(satisfies(&[vec![3, 0], vec![0, 2]], &[3, 4], &x, 12));
        assert_eq!(solve(&[vec![3, 0]], &[1], 2, 12), None);
    }

    #[test]
    fn kernel_of_multiplication() {
        let k = kernel(&[vec![3]], 1, 9);
        assert!(k.iter().all(|g| (3 * g[0]) % 9 == 0));
        assert!(k.iter().any(|g| g[0] % 9 == 3 || g[0] % 9 == 6));
    }

    proptest! {
        #[test]
        fn consistent_systems_are_solved(
            entries in proptest::collection::vec(-20i64..20, 12),
            xs in proptest::collection::vec(0u64..100, 3),
            modulus in prop::sample::select(vec![8u64, 9, 12, 27, 36, 81]),
        ) {
            let a: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
            let b: Vec<i64> = a
                .iter()
                .map(|row| row.iter().zip(&xs).map(|(&c, &x)| c * x as i64).sum::<i64>())
                .collect();
            let x = solve(&a, &b, 3, modulus).expect("system has a solution");
            prop_assert!(satisfies(&a, &b, &x, modulus));
            for g in kernel(&a, 3, modulus) {
                prop_assert!(satisfies(&a, &[0; 4], &g, modulus));
            }
        }

        #[test]
        fn kernel_generates_all_solutions(
            entries in proptest::collection::vec(-6i64..6, 4),
            modulus in prop::sample::select(vec![4u64, 6, 9, 12]),
        ) {
            let a: Vec<Vec<i64>> = entries.chunks(2).map(|c| c.to_vec()).collect();
            let gens = kernel(&a, 2, modulus);
            let mut span = std::collections::HashSet::new();
            span.insert(vec![0u64, 0]);
            loop {
                let mut grown = span.clone();
                for s in &span {
                    for g in &gens {
                        grown.insert(vec![(s[0] + g[0]) % modulus, (s[1] + g[1]) % modulus]);
                    }
                }
                if grown.len() == span.len() {
                    break;
                }
                span = grown;
            }
            for x0 in 0..modulus {
                for x1 in 0..modulus {
                    let x = vec![x0, x1];
                    prop_assert_eq!(satisfies(&a, &[0, 0], &x, modulus), span.contains(&x));
                }
            }
        }
    }
}
