//! Zeta and twist zeta polynomials read off the irreducible characters of `G`.

use super::DirichletPoly;
use crate::characters::{induced_value, irr_by_induction, irr_of_n, ClassFunction};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{prime_factors, whole, Extension, Group};

/// Value tables of the irreducible characters of `g`. For a p-group the
/// tables are indexed by a polycyclic presentation of `g`, otherwise by the
/// elements of `g`.
pub fn irr_tables<G: Group + ?Sized>(g: &G, exec: Exec) -> Result<Vec<ClassFunction>> {
    if prime_factors(g.order() as u64).len() == 1 {
        let (ext, _) = Extension::from_ambient(g, &whole(g))?;
        let n = ext.normal();
        let pairs = irr_of_n(n, exec);
        return Ok(exec.map(&pairs, |pair| (0..n.order()).map(|x| induced_value(n, &pair.chi, x)).collect()));
    }
    Ok(irr_by_induction(g, exec)?.into_iter().map(|c| c.values).collect())
}

fn degree(table: &[CycInt]) -> Result<u64> {
    table[0]
        .as_integer()
        .and_then(|d| u64::try_from(d).ok())
        .ok_or_else(|| Error::Internal("character degree is not a positive integer".into()))
}

/// `Σ_{ρ ∈ Irr(G)} ρ(1)^{-s}`.
pub fn zeta_direct<G: Group + ?Sized>(g: &G, exec: Exec) -> Result<DirichletPoly> {
    let tables = irr_tables(g, exec)?;
    let degrees = tables.iter().map(|t| degree(t)).collect::<Result<Vec<_>>>()?;
    Ok(DirichletPoly::from_degrees(degrees))
}

/// The twist classes of `Irr(G)` under multiplication by `Lin(G)`, as lists of
/// indices into `tables`.
pub fn twist_partition(tables: &[ClassFunction]) -> Result<Vec<Vec<usize>>> {
    let degrees = tables.iter().map(|t| degree(t)).collect::<Result<Vec<_>>>()?;
    let lin: Vec<&ClassFunction> = tables.iter().zip(&degrees).filter(|(_, &d)| d == 1).map(|(t, _)| t).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; tables.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..tables.len() {
        if class_of[a].is_some() {
            continue;
        }
        let c = classes.len();
        classes.push(vec![a]);
        class_of[a] = Some(c);
        for psi in &lin {
            let twisted: ClassFunction = tables[a].iter().zip(psi.iter()).map(|(x, y)| x * y).collect();
            let b = (0..tables.len())
                .find(|&b| degrees[b] == degrees[a] && tables[b] == twisted)
                .ok_or_else(|| Error::Internal("a twist of an irreducible character is not in the table".into()))?;
            if class_of[b].is_none() {
                class_of[b] = Some(c);
                classes[c].push(b);
            }
        }
    }
    Ok(classes)
}

/// `Σ ρ(1)^{-s}` over the twist classes of `Irr(G)`.
pub fn twist_direct<G: Group + ?Sized>(g: &G, exec: Exec) -> Result<DirichletPoly> {
    let tables = irr_tables(g, exec)?;
    let classes = twist_partition(&tables)?;
    let degrees = classes.iter().map(|c| degree(&tables[c[0]])).collect::<Result<Vec<_>>>()?;
    Ok(DirichletPoly::from_degrees(degrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ambient::{self, Heisenberg};

    #[test]
    fn small_groups() {
        let c4 = ambient::cyclic(4);
        assert_eq!(zeta_direct(&c4, Exec::Sequential).unwrap(), DirichletPoly::monomial(1, 4));
        assert_eq!(twist_direct(&c4, Exec::Sequential).unwrap(), DirichletPoly::monomial(1, 1));
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        assert_eq!(zeta_direct(&s3, Exec::Sequential).unwrap(), DirichletPoly::from_degrees([1, 1, 2]));
        assert_eq!(twist_direct(&s3, Exec::Sequential).unwrap(), DirichletPoly::from_degrees([1, 2]));
        let h3 = Heisenberg::new(3, 1);
        let z = zeta_direct(&h3, Exec::Sequential).unwrap();
        assert_eq!(z.count(1), 9);
        assert_eq!(z.count(3), 2);
        assert_eq!(twist_direct(&h3, Exec::Sequential).unwrap(), DirichletPoly::from_degrees([1, 3, 3]));
    }
}
