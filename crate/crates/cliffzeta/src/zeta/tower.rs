//! Zeta and twist zeta polynomials along towers of finite p-groups.

use super::{assemble, assemble_twist, rational_fit, DirichletPoly, FitBounds, RationalFit};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::ambient::{self, Heisenberg};
use crate::group::{whole, Extension, Group};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Upper unitriangular 3x3 matrices over `Z/p^m`, over the abelian normal
    /// subgroup of matrices with zero top-left off-diagonal entry.
    Heisenberg,
    /// `C_{p^m}`.
    Cyclic,
    /// `M_{p^{m+1}}`, for `m ≥ 2`.
    Modular,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heisenberg" => Ok(Family::Heisenberg),
            "cyclic" => Ok(Family::Cyclic),
            "modular" => Ok(Family::Modular),
            _ => Err(Error::Invalid(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerMode {
    Zeta,
    Twist,
}

/// The group at level `m` of a family, presented over a normal p-subgroup.
pub fn family_member(family: Family, p: u64, m: u32) -> Result<Extension> {
    if m == 0 {
        return Err(Error::Invalid("levels start at 1".into()));
    }
    match family {
        Family::Heisenberg => {
            let g = Heisenberg::new(p, m);
            let q = g.modulus() as usize;
            let a = Bits::from_iter(g.order(), 0..q * q);
            Ok(Extension::from_ambient(&g, &a)?.0)
        }
        Family::Cyclic => {
            let g = ambient::cyclic(p.pow(m) as usize);
            Ok(Extension::from_ambient(&g, &whole(&g))?.0)
        }
        Family::Modular => {
            if m < 2 {
                return Err(Error::Invalid("the modular family starts at level 2".into()));
            }
            let g = ambient::modular_p_group(p as u32, m);
            Ok(Extension::from_ambient(&g, &whole(&g))?.0)
        }
    }
}

/// Coefficients of `p^{-ks}` at each level, and the prefix on which every
/// level `m > k` agrees.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerTable {
    pub family: Family,
    pub p: u64,
    pub mode: TowerMode,
    pub levels: Vec<(u32, DirichletPoly)>,
    pub coefficients: Vec<Vec<u64>>,
    /// `stable[k]` is the common value of coefficient `k` over the levels
    /// `m > k`; the prefix stops at the first disagreement.
    pub stable: Vec<u64>,
}

impl TowerTable {
    /// The fit of the stable prefix, if it has at least two coefficients.
    pub fn fit(&self, bounds: FitBounds) -> Result<RationalFit> {
        let c: Vec<BigInt> = self.stable.iter().map(|&v| BigInt::from(v)).collect();
        rational_fit(&c, self.p, bounds)
    }
}

pub fn tower_series(family: Family, p: u64, levels: &[u32], mode: TowerMode, exec: Exec) -> Result<TowerTable> {
    let mut rows = Vec::new();
    let mut coefficients = Vec::new();
    for &m in levels {
        let ext = family_member(family, p, m)?;
        let poly = match mode {
            TowerMode::Zeta => assemble(&ext, exec)?.zeta,
            TowerMode::Twist => assemble_twist(&ext, exec)?.zeta,
        };
        coefficients.push(poly.p_coefficients(p).ok_or_else(|| Error::Internal("degree is not a power of p".into()))?);
        rows.push((m, poly));
    }
    let mut stable = Vec::new();
    for k in 0.. {
        let values: Vec<u64> = levels
            .iter()
            .zip(&coefficients)
            .filter(|(&m, _)| m as usize > k)
            .map(|(_, c)| c.get(k).copied().unwrap_or(0))
            .collect();
        match values.first() {
            Some(&v) if values.iter().all(|&w| w == v) => stable.push(v),
            _ => break,
        }
    }
    Ok(TowerTable { family, p, mode, levels: rows, coefficients, stable })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tower_does_not_stabilise() {
        let t = tower_series(Family::Cyclic, 2, &[1, 2, 3], TowerMode::Zeta, Exec::Sequential).unwrap();
        assert_eq!(t.coefficients, vec![vec![2], vec![4], vec![8]]);
        assert!(t.stable.is_empty());
        let t = tower_series(Family::Cyclic, 3, &[1, 2], TowerMode::Twist, Exec::Sequential).unwrap();
        assert_eq!(t.stable, vec![1, 0]);
    }

    #[test]
    fn heisenberg_twist_small_levels() {
        let t = tower_series(Family::Heisenberg, 2, &[1, 2], TowerMode::Twist, Exec::Sequential).unwrap();
        assert_eq!(t.stable, vec![1, 1]);
    }
}
