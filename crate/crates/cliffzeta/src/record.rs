//! The structured output record shared by every command.
//!
//! A record serialises to one line of JSON carrying the schema name and
//! version, so a stream of records is self-describing. The text form is for
//! reading at a terminal and is not parsed back.

use crate::error::{Error, Result};
use crate::zeta::{Assembly, DirichletPoly, RationalFit, TowerTable, TwistAssembly};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const SCHEMA: &str = "cliffzeta.record";
pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Zeta,
    TwistZeta,
    Partial,
    Invariants,
    Tower,
    Verify,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Zeta => "zeta",
            Kind::TwistZeta => "twist-zeta",
            Kind::Partial => "partial",
            Kind::Invariants => "invariants",
            Kind::Tower => "tower",
            Kind::Verify => "verify",
        };
        f.write_str(s)
    }
}

/// Parameters selecting a piece of a computation. `k` and `l` are subgroups
/// of `G/N` given by their element indices in the quotient table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub class_ids: Vec<usize>,
}

/// A rational function in `t`: numerator coefficients as exact rationals
/// written `a` or `a/b`, and denominator factors `(i, j)` for `1 - p^i t^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitRecord {
    pub p: u64,
    pub numerator: Vec<String>,
    pub denominator: Vec<(i32, u32)>,
    pub display: String,
}

impl From<&RationalFit> for FitRecord {
    fn from(fit: &RationalFit) -> Self {
        FitRecord {
            p: fit.p,
            numerator: fit.numerator.iter().map(|c| c.to_string()).collect(),
            denominator: fit.denominator.clone(),
            display: fit.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerRecord {
    pub family: crate::zeta::Family,
    pub p: u64,
    pub mode: crate::zeta::TowerMode,
    /// `(m, series)` per level.
    pub levels: Vec<(u32, Vec<(u64, u64)>)>,
    /// Coefficients of `p^{-ks}` per level.
    pub coefficients: Vec<Vec<u64>>,
    pub stable: Vec<u64>,
}

impl From<&TowerTable> for TowerRecord {
    fn from(t: &TowerTable) -> Self {
        TowerRecord {
            family: t.family,
            p: t.p,
            mode: t.mode,
            levels: t.levels.iter().map(|(m, poly)| (*m, poly.terms().collect())).collect(),
            coefficients: t.coefficients.clone(),
            stable: t.stable.clone(),
        }
    }
}

/// The invariants of one irreducible character `θ` of `N`.
///
/// `k_id` numbers the distinct stabilisers in order of first appearance and
/// `c_id` numbers the classes `C_{K_p}(θ)` met within one stabiliser.
/// `twist_class` and `twist_bucket` index the twist classes and the groups of
/// twist classes sharing `(L, K, Γ, C_{K_p}, T_{L_p})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub theta: usize,
    pub degree: u64,
    pub k_id: usize,
    pub k_index: usize,
    pub c_id: usize,
    pub twist_class: usize,
    pub l_index: usize,
    pub gamma_order: usize,
    pub twist_bucket: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn current(seed: Option<u64>) -> Self {
        Provenance { tool: "cliffzeta".into(), version: env!("CARGO_PKG_VERSION").into(), seed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub version: u32,
    pub kind: Kind,
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<String>,
    #[serde(default)]
    pub params: Params,
    /// `(degree, count)` in increasing degree.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<(u64, u64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub invariants: Vec<InvariantRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRecord>,
    pub provenance: Provenance,
}

impl OutputRecord {
    pub fn new(kind: Kind, group: &str, normal: Option<&str>) -> Self {
        OutputRecord {
            schema: SCHEMA.into(),
            version: VERSION,
            kind,
            group: group.into(),
            normal: normal.map(str::to_owned),
            params: Params::default(),
            series: Vec::new(),
            tower: None,
            fit: None,
            invariants: Vec::new(),
            checks: Vec::new(),
            provenance: Provenance::current(None),
        }
    }

    pub fn with_series(mut self, poly: &DirichletPoly) -> Self {
        self.series = poly.terms().collect();
        self
    }

    pub fn series_poly(&self) -> DirichletPoly {
        let mut poly = DirichletPoly::new();
        for &(n, c) in &self.series {
            poly.add_term(n, c);
        }
        poly
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }

    /// Parse one JSON record, rejecting other schemas and newer versions.
    pub fn from_json(line: &str) -> Result<Self> {
        let rec: OutputRecord =
            serde_json::from_str(line).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        if rec.schema != SCHEMA {
            return Err(Error::Invalid(format!("unknown record schema `{}`", rec.schema)));
        }
        if rec.version > VERSION {
            return Err(Error::Unsupported(format!("record version {} is newer than {VERSION}", rec.version)));
        }
        Ok(rec)
    }
}

impl fmt::Display for OutputRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.group)?;
        if let Some(n) = &self.normal {
            write!(f, " over {n}")?;
        }
        writeln!(f)?;
        let p = &self.params;
        if let Some(k) = &p.k {
            writeln!(f, "  K/N = {k:?}")?;
        }
        if let Some(l) = &p.l {
            writeln!(f, "  L/N = {l:?}")?;
        }
        if let Some(g) = p.gamma_index {
            writeln!(f, "  |Γ| = {g}")?;
        }
        if !p.class_ids.is_empty() {
            writeln!(f, "  classes {:?}", p.class_ids)?;
        }
        if !self.series.is_empty() {
            writeln!(f, "  {}", self.series_poly())?;
        }
        if let Some(t) = &self.tower {
            writeln!(f, "  {:>5}  coefficients of p^(-ks), k = 0, 1, ...", "level")?;
            for ((m, _), c) in t.levels.iter().zip(&t.coefficients) {
                writeln!(f, "  {m:>5}  {}", join(c))?;
            }
            writeln!(f, "  {:>5}  {}", "stable", join(&t.stable))?;
        }
        if let Some(fit) = &self.fit {
            writeln!(f, "  fit: {}", fit.display)?;
        }
        if !self.invariants.is_empty() {
            writeln!(f, "  {:>5} {:>6} {:>4} {:>5} {:>4} {:>5} {:>5} {:>4} {:>6}", "θ", "θ(1)", "K", "|G:K|", "C", "twist", "|G:L|", "|Γ|", "bucket")?;
            for r in &self.invariants {
                writeln!(
                    f,
                    "  {:>5} {:>6} {:>4} {:>5} {:>4} {:>5} {:>5} {:>4} {:>6}",
                    r.theta, r.degree, r.k_id, r.k_index, r.c_id, r.twist_class, r.l_index, r.gamma_order, r.twist_bucket
                )?;
            }
        }
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "  {status} {}", c.name)?;
            } else {
                writeln!(f, "  {status} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// One row per irreducible character of `N`, from the two assemblies of the
/// same extension.
pub fn invariant_rows(index: usize, a: &Assembly, t: &TwistAssembly) -> Vec<InvariantRow> {
    let mut ks: Vec<&Vec<usize>> = Vec::new();
    let mut placement = vec![(0, 0); a.pairs.len()];
    let mut seen_in_k: Vec<usize> = Vec::new();
    for bucket in &a.buckets {
        let k_id = ks.iter().position(|k| **k == bucket.k).unwrap_or_else(|| {
            ks.push(&bucket.k);
            seen_in_k.push(0);
            ks.len() - 1
        });
        let c_id = seen_in_k[k_id];
        seen_in_k[k_id] += 1;
        for &m in &bucket.members {
            placement[m] = (k_id, c_id);
        }
    }
    let mut twist_of = vec![(0, 0); a.pairs.len()];
    for (b, bucket) in t.buckets.iter().enumerate() {
        for &d in &bucket.members {
            for &m in &t.data[d].class.members {
                twist_of[m] = (d, b);
            }
        }
    }
    (0..a.pairs.len())
        .map(|theta| {
            let (k_id, c_id) = placement[theta];
            let (tc, tb) = twist_of[theta];
            let data = &t.data[tc];
            InvariantRow {
                theta,
                degree: a.pairs[theta].degree(),
                k_id,
                k_index: index / ks[k_id].len(),
                c_id,
                twist_class: tc,
                l_index: index / data.class.l.len(),
                gamma_order: data.gamma.order(),
                twist_bucket: tb,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exec::Exec;
    use crate::zeta::{assemble, assemble_twist};
    use proptest::prelude::*;

    #[test]
    fn invariants_of_h3_over_its_centre() {
        let ext = corpus::extension("H3", "Z").unwrap();
        let a = assemble(&ext, Exec::Sequential).unwrap();
        let t = assemble_twist(&ext, Exec::Sequential).unwrap();
        let rows = invariant_rows(ext.index(), &a, &t);
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.degree == 1 && r.k_index == 1));
        let c: std::collections::BTreeSet<_> = rows.iter().map(|r| r.c_id).collect();
        assert_eq!(c.len(), 3, "θ = 1 extends; the two faithful θ give inverse nontrivial classes");
    }

    #[test]
    fn rejects_foreign_and_future_records() {
        let mut rec = OutputRecord::new(Kind::Zeta, "S3", Some("C3"));
        rec.schema = "other".into();
        assert!(OutputRecord::from_json(&rec.to_json()).is_err());
        rec.schema = SCHEMA.into();
        rec.version = VERSION + 1;
        assert!(matches!(OutputRecord::from_json(&rec.to_json()), Err(Error::Unsupported(_))));
        assert!(matches!(OutputRecord::from_json("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn text_form_shows_the_series() {
        let rec = OutputRecord::new(Kind::Zeta, "S3", Some("C3")).with_series(&DirichletPoly::from_degrees([1, 1, 2]));
        assert_eq!(rec.to_string(), "zeta S3 over C3\n  2*1^-s + 2^-s\n");
    }

    fn record() -> impl Strategy<Value = OutputRecord> {
        let kind = prop_oneof![Just(Kind::Zeta), Just(Kind::TwistZeta), Just(Kind::Partial), Just(Kind::Invariants)];
        let series = proptest::collection::btree_map(1u64..100, 1u64..50, 0..6);
        let ids = proptest::collection::vec(0usize..10, 0..4);
        let fit = proptest::option::of((proptest::collection::vec(-5i64..5, 1..4), proptest::collection::vec((-2i32..3, 1u32..3), 0..3)));
        let rows = proptest::collection::vec((0usize..9, 0u32..3, 0usize..4), 0..5);
        (kind, "[A-Za-z0-9:^]{1,8}", proptest::option::of("[A-Z0-9]{1,4}"), series, ids.clone(), ids, fit, rows, proptest::option::of(any::<u64>()))
            .prop_map(|(kind, group, normal, series, k, class_ids, fit, rows, seed)| {
                let mut rec = OutputRecord::new(kind, &group, normal.as_deref());
                rec.series = series.into_iter().collect();
                rec.params = Params {
                    gamma_index: k.first().copied(),
                    k: (!k.is_empty()).then(|| k.clone()),
                    l: None,
                    class_ids,
                };
                rec.fit = fit.map(|(num, den)| FitRecord {
                    p: 3,
                    numerator: num.iter().map(i64::to_string).collect(),
                    denominator: den,
                    display: String::new(),
                });
                rec.invariants = rows
                    .into_iter()
                    .map(|(theta, e, c)| InvariantRow {
                        theta,
                        degree: 3u64.pow(e),
                        k_id: c,
                        k_index: 1,
                        c_id: c,
                        twist_class: theta / 2,
                        l_index: 1,
                        gamma_order: 1,
                        twist_bucket: 0,
                    })
                    .collect();
                rec.provenance = Provenance::current(seed);
                rec
            })
    }

    proptest! {
        #[test]
        fn json_round_trip(rec in record()) {
            let line = rec.to_json();
            prop_assert!(!line.contains('\n'));
            prop_assert_eq!(OutputRecord::from_json(&line).unwrap(), rec);
        }
    }
}
