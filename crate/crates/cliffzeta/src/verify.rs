//! Verification suites over the corpus: the main path against direct
//! computation, against the brute-force oracles, and against itself under
//! re-choices of every auxiliary datum.

use crate::characters::{
    induced_equal, induced_twist_equal, induces_irreducibly, irr_of_n, lin_chars, lin_g, twist_classes, GlobalLinChar,
    LinG, Pair, TwistClass,
};
use crate::cohomology::{
    class_eq, class_eq1, coboundary_of, coboundary_preimage2, factor_set, gamma_of, h2_classes, is_coboundary2,
    mu_matrix, pair_on, sylow_reduction_checks, Cocycle2, StrongExt,
};
use crate::corpus;
use crate::cyclotomic::Qz;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::ambient;
use crate::group::{all_subgroups_solvable, q_part, Extension, Group, PcGroup, Subgroup, TableGroup, TopSet};
use crate::oracle;
use crate::record::{CheckRecord, Kind, OutputRecord, Provenance};
use crate::zeta::direct::{irr_tables, twist_partition};
use crate::zeta::{assemble, assemble_twist, tower_series, twist_direct, zeta_direct, DirichletPoly, Family, FitBounds, TowerMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Assembly,
    Twist,
    Jaikin,
    Cohomology,
    Schur,
    Sylow,
    WellDefined,
    Tower,
    Completeness,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Assembly,
        Suite::Twist,
        Suite::Jaikin,
        Suite::Cohomology,
        Suite::Schur,
        Suite::Sylow,
        Suite::WellDefined,
        Suite::Tower,
        Suite::Completeness,
        Suite::Oracles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Assembly => "assembly",
            Suite::Twist => "twist",
            Suite::Jaikin => "jaikin",
            Suite::Cohomology => "cohomology",
            Suite::Schur => "schur",
            Suite::Sylow => "sylow",
            Suite::WellDefined => "well-defined",
            Suite::Tower => "tower",
            Suite::Completeness => "completeness",
            Suite::Oracles => "oracles",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Assembly => "Clifford assembly equals the directly computed zeta polynomial",
            Suite::Twist => "twist assembly equals the directly computed twist zeta polynomial",
            Suite::Jaikin => "partial factors depend only on the bucket invariants",
            Suite::Cohomology => "2-coboundary solver agrees with exhaustive search",
            Suite::Schur => "Schur multiplier sizes of small abelian groups",
            Suite::Sylow => "Sylow reductions of C, Γ and T on groups of mixed order",
            Suite::WellDefined => "C, Γ and T are unchanged under random re-choices",
            Suite::Tower => "Heisenberg twist tower and its rational fit",
            Suite::Completeness => "irreducible characters of N are complete",
            Suite::Oracles => "main-path predicates agree with value-table oracles",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub exec: Exec,
    pub seed: u64,
    /// Random re-choices per twist class in the well-definedness suite.
    pub trials: usize,
    /// Random matrices per quotient in the cohomology suite.
    pub random_matrices: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { exec: Exec::default(), seed: 0x5eed, trials: 50, random_matrices: 10_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_result(name: String, r: Result<(bool, String)>) -> Check {
        match r {
            Ok((passed, detail)) => Check { name, passed, detail },
            Err(e) => Check { name, passed: false, detail: e.to_string() },
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn to_record(&self, seed: u64) -> OutputRecord {
        let mut rec = OutputRecord::new(Kind::Verify, self.suite.name(), None);
        rec.checks = self
            .checks
            .iter()
            .map(|c| CheckRecord { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
            .collect();
        rec.provenance = Provenance::current(Some(seed));
        rec
    }
}

pub fn run(suite: Suite, cfg: &Config) -> SuiteReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::Assembly => per_pair(cfg, assembly_check),
        Suite::Twist => per_pair(cfg, twist_check),
        Suite::Jaikin => per_pair(cfg, jaikin_check),
        Suite::Cohomology => cohomology_checks(cfg),
        Suite::Schur => schur_checks(),
        Suite::Sylow => sylow_checks(cfg),
        Suite::WellDefined => per_pair(cfg, well_defined_check),
        Suite::Tower => tower_checks(cfg),
        Suite::Completeness => completeness_checks(cfg),
        Suite::Oracles => per_pair(cfg, oracle_check),
    };
    SuiteReport { suite, checks, elapsed: start.elapsed() }
}

type PairCheck = fn(&Config, usize, &str, &str) -> Result<(bool, String)>;

fn per_pair(cfg: &Config, f: PairCheck) -> Vec<Check> {
    let pairs = corpus::sweep_pairs();
    let indexed: Vec<(usize, &str, &str)> = pairs.iter().enumerate().map(|(i, &(g, n))| (i, g, n)).collect();
    cfg.exec.map(&indexed, |&(i, g, n)| Check::from_result(format!("{g}/{n}"), f(cfg, i, g, n)))
}

fn assembly_check(cfg: &Config, _: usize, g: &str, n: &str) -> Result<(bool, String)> {
    let ext = corpus::extension(g, n)?;
    let grp = corpus::group(g)?;
    let a = assemble(&ext, Exec::Sequential)?.zeta;
    let d = zeta_direct(&grp, cfg.exec)?;
    let squares = a.sum_of_squares() == grp.order() as u64;
    Ok((a == d && squares, format!("assembled {a}, direct {d}")))
}

fn twist_check(cfg: &Config, _: usize, g: &str, n: &str) -> Result<(bool, String)> {
    let ext = corpus::extension(g, n)?;
    let grp = corpus::group(g)?;
    let a = assemble_twist(&ext, Exec::Sequential)?.zeta;
    let d = twist_direct(&grp, cfg.exec)?;
    Ok((a == d, format!("assembled {a}, direct {d}")))
}

fn jaikin_check(_: &Config, _: usize, g: &str, n: &str) -> Result<(bool, String)> {
    let ext = corpus::extension(g, n)?;
    let a = assemble(&ext, Exec::Sequential)?;
    let t = assemble_twist(&ext, Exec::Sequential)?;
    let compared = a.buckets.iter().map(|b| b.members.len()).sum::<usize>()
        + t.buckets.iter().map(|b| b.members.len()).sum::<usize>();
    let violations: Vec<&String> = a.jaikin_violations.iter().chain(&t.jaikin_violations).collect();
    let detail = match violations.first() {
        None => format!("{compared} members in {} + {} buckets", a.buckets.len(), t.buckets.len()),
        Some(v) => format!("{} violations, first: {v}", violations.len()),
    };
    Ok((violations.is_empty(), detail))
}

fn quotients() -> Vec<(&'static str, TableGroup)> {
    vec![
        ("C1", ambient::cyclic(1)),
        ("C2", ambient::cyclic(2)),
        ("C3", ambient::cyclic(3)),
        ("C4", ambient::cyclic(4)),
        ("C2xC2", ambient::direct_product(&ambient::cyclic(2), &ambient::cyclic(2))),
    ]
}

const MAX_DEN: u64 = 8;
const COMPLETE_SWEEP: u64 = 1_000_000;

fn decode(mut code: u64, len: usize, d: u64) -> Vec<Qz> {
    (0..len)
        .map(|_| {
            let v = Qz::new((code % d) as i64, d);
            code /= d;
            v
        })
        .collect()
}

fn lcm_den(z: &[Qz]) -> u64 {
    z.iter().map(|a| a.den()).fold(1, num_integer::lcm)
}

/// The matrices of one quotient in the cohomology sweep: every matrix with
/// entries in `(1/8)Z/Z` when there are at most a million, and otherwise
/// random matrices with a random denominator `d ≤ 8` together with every
/// coboundary `δb` for `b` in `(1/d)Z/Z`, each shifted by every class
/// representative, and single-entry perturbations of them.
fn cohomology_matrices(q: &TableGroup, cfg: &Config, rng: &mut ChaCha8Rng) -> Result<(Vec<Vec<Qz>>, bool)> {
    let n = q.order();
    let cells = (n * n) as u32;
    if MAX_DEN.checked_pow(cells).is_some_and(|c| c <= COMPLETE_SWEEP) {
        let all = (0..MAX_DEN.pow(cells)).map(|c| decode(c, n * n, MAX_DEN)).collect();
        return Ok((all, true));
    }
    let mut out = Vec::new();
    for _ in 0..cfg.random_matrices {
        let d = rng.gen_range(1..=MAX_DEN);
        out.push((0..n * n).map(|_| Qz::new(rng.gen_range(0..d) as i64, d)).collect());
    }
    let reps = h2_classes(q)?;
    for d in 1..=MAX_DEN {
        for code in 0..d.pow(n as u32) {
            let delta = coboundary_of(q, &decode(code, n, d));
            for rep in &reps {
                let z: Vec<Qz> = delta.iter().zip(rep).map(|(&a, &b)| a + b).collect();
                if lcm_den(&z) > MAX_DEN {
                    continue;
                }
                if code < 8 {
                    for cell in 0..n * n {
                        let mut w = z.clone();
                        w[cell] += Qz::new(1, d.max(2));
                        if lcm_den(&w) <= MAX_DEN {
                            out.push(w);
                        }
                    }
                }
                out.push(z);
            }
        }
    }
    Ok((out, false))
}

fn cohomology_checks(cfg: &Config) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    quotients()
        .into_iter()
        .map(|(name, q)| {
            let r = cohomology_matrices(&q, cfg, &mut rng).and_then(|(matrices, complete)| {
                let verdicts = cfg.exec.map(&matrices, |z| -> Result<Option<String>> {
                    let pre = coboundary_preimage2(&q, z);
                    if let Some(b) = &pre {
                        if coboundary_of(&q, b) != *z {
                            return Ok(Some(format!("preimage of {z:?} does not map back")));
                        }
                    }
                    let exhaustive = oracle::oracle_coboundary(&q, z)?;
                    Ok((pre.is_some() != exhaustive || is_coboundary2(&q, z) != exhaustive)
                        .then(|| format!("solver and search disagree on {z:?}")))
                });
                let mut coboundaries = 0;
                let mut first = None;
                for (z, v) in matrices.iter().zip(verdicts) {
                    if let Some(msg) = v? {
                        first.get_or_insert(msg);
                    } else if is_coboundary2(&q, z) {
                        coboundaries += 1;
                    }
                }
                let sweep = if complete { "complete sweep" } else { "random and structured" };
                Ok(match first {
                    None => (true, format!("{} matrices ({sweep}), {coboundaries} coboundaries", matrices.len())),
                    Some(msg) => (false, msg),
                })
            });
            Check::from_result(format!("H^2 solver on {name}"), r)
        })
        .collect()
}

fn schur_checks() -> Vec<Check> {
    let c = ambient::cyclic;
    let cases: Vec<(&str, TableGroup, usize)> = vec![
        ("C2", c(2), 1),
        ("C3", c(3), 1),
        ("C4", c(4), 1),
        ("C2xC2", ambient::direct_product(&c(2), &c(2)), 2),
        ("C3xC3", ambient::direct_product(&c(3), &c(3)), 3),
        ("C4xC2", ambient::direct_product(&c(4), &c(2)), 2),
    ];
    cases
        .into_iter()
        .map(|(name, q, expected)| {
            let r = (|| {
                let main = h2_classes(&q)?.len();
                let exhaustive = oracle::oracle_schur_abelian(&q)?;
                Ok((main == expected && exhaustive == expected, format!("h2_classes {main}, bicharacters {exhaustive}, expected {expected}")))
            })();
            Check::from_result(format!("|H^2({name})|"), r)
        })
        .collect()
}

fn is_mixed(ext: &Extension) -> bool {
    q_part(ext.index() as u64, ext.p()) != ext.index() as u64
}

fn sylow_checks(cfg: &Config) -> Vec<Check> {
    let pairs: Vec<(&str, &str)> = corpus::sweep_pairs()
        .into_iter()
        .filter(|&(g, n)| corpus::extension(g, n).is_ok_and(|e| is_mixed(&e)))
        .collect();
    cfg.exec.map(&pairs, |&(g, n)| {
        let r = (|| {
            let ext = corpus::extension(g, n)?;
            let irr = irr_of_n(ext.normal(), Exec::Sequential);
            let lin = lin_g(&ext)?;
            let classes = twist_classes(&ext, &irr, &lin, Exec::Sequential);
            let report = sylow_reduction_checks(&ext, &irr, &classes, &lin)?;
            let mut checked = report.checked;
            let mut violations = report.violations;
            for (t, theta) in irr.iter().enumerate() {
                let k = crate::characters::stabilizer_k(&ext, &theta.chi);
                let alpha = StrongExt::new(pair_on(&ext, theta, &k)?).factor_set(&ext);
                for (q, kq) in ext.sylow_q_parts(&k).into_iter().chain([(ext.p(), ext.sylow_p_part(&k))]) {
                    let lhs = alpha.primary_component(q).restrict(&kq)?;
                    let rhs = factor_set(&ext, &pair_on(&ext, theta, &kq)?);
                    checked += 1;
                    if !class_eq(&ext, &lhs, &rhs)? {
                        violations.push(format!("θ_{t}: res_{q} C_K(θ)_({q}) differs from C_K{q}(θ)"));
                    }
                }
            }
            Ok(match violations.first() {
                None => (true, format!("{checked} identities")),
                Some(v) => (false, format!("{} of {checked} identities fail, first: {v}", violations.len())),
            })
        })();
        Check::from_result(format!("{g}/{n}"), r)
    })
}

/// `ψ ε` for two degree-one characters of `G`.
fn product(a: &GlobalLinChar, b: &GlobalLinChar) -> GlobalLinChar {
    GlobalLinChar {
        tau: Arc::new(a.tau.iter().zip(b.tau.iter()).map(|(&x, &y)| x + y).collect()),
        sigma: a.sigma.iter().zip(&b.sigma).map(|(&x, &y)| x + y).collect(),
    }
}

/// A strong extension of `θ` to `tops` with random tails `t_i m_i` and a
/// random scale.
fn random_strong_ext(ext: &Extension, theta: &Pair, tops: &[usize], rng: &mut ChaCha8Rng) -> Result<StrongExt> {
    let mut pair = pair_on(ext, theta, tops)?;
    let n = ext.normal();
    let m: Vec<usize> = pair.chi.dom.bits.to_vec();
    for t in pair.h.tails.iter_mut().skip(1) {
        *t = n.mul(*t, m[rng.gen_range(0..m.len())]);
    }
    let d = n.exponent() * ext.index() as u64;
    let mut omega: Vec<Qz> = (0..pair.h.tops.len()).map(|_| Qz::new(rng.gen_range(0..d) as i64, d)).collect();
    omega[0] = Qz::ZERO;
    StrongExt::with_omega(pair, omega)
}

/// Witnesses `ψ_g ε_g` for `g` in `sub`, with `ε_g` a random degree-one
/// character of `G` whose restriction fixes `θ`.
fn random_witnesses(class: &TwistClass, lin: &LinG, fixing: &[usize], sub: &[usize], rng: &mut ChaCha8Rng) -> Vec<GlobalLinChar> {
    sub.iter()
        .map(|i| {
            let psi = &lin.chars[class.witnesses[class.l.binary_search(i).expect("subgroup of L")]];
            let eps = &lin.chars[fixing[rng.gen_range(0..fixing.len())]];
            product(psi, eps)
        })
        .collect()
}

struct Baseline {
    k: TopSet,
    l: TopSet,
    kp: TopSet,
    lp: TopSet,
    alpha: Cocycle2,
    alpha_p: Cocycle2,
    gamma: crate::cohomology::Gamma,
    gamma_p: crate::cohomology::Gamma,
    mu: crate::cohomology::Cocycle1,
    mu_p: crate::cohomology::Cocycle1,
}

fn baseline(ext: &Extension, pairs: &[Pair], class: &TwistClass, lin: &LinG) -> Result<Baseline> {
    let theta = &pairs[class.rep];
    let lp = ext.sylow_p_part(&class.l);
    let kp: TopSet = class.k.iter().copied().filter(|x| lp.binary_search(x).is_ok()).collect();
    let se = StrongExt::new(pair_on(ext, theta, &class.k)?);
    let se_p = StrongExt::new(pair_on(ext, theta, &kp)?);
    let psis = |sub: &[usize]| -> Vec<&GlobalLinChar> {
        sub.iter().map(|i| &lin.chars[class.witnesses[class.l.binary_search(i).expect("subgroup of L")]]).collect()
    };
    Ok(Baseline {
        alpha: se.factor_set(ext),
        alpha_p: se_p.factor_set(ext),
        gamma: gamma_of(ext, &se, lin)?,
        gamma_p: gamma_of(ext, &se_p, lin)?,
        mu: mu_matrix(ext, &se, &class.l, &psis(&class.l))?,
        mu_p: mu_matrix(ext, &se_p, &lp, &psis(&lp))?,
        k: class.k.clone(),
        l: class.l.clone(),
        kp,
        lp,
    })
}

/// One re-choice of transversal, tails, scales and witnesses; the first
/// invariant that changed, if any.
fn rechoice(ext: &Extension, pairs: &[Pair], bases: &[Baseline], rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let n = ext.normal();
    let mut shifts: Vec<usize> = (0..ext.index()).map(|_| rng.gen_range(0..n.order())).collect();
    shifts[0] = 0;
    let ext2 = ext.retransversal(&shifts)?;
    let lin2 = lin_g(&ext2)?;
    let classes2 = twist_classes(&ext2, pairs, &lin2, Exec::Sequential);
    if classes2.len() != bases.len() {
        return Ok(Some(format!("{} twist classes instead of {}", classes2.len(), bases.len())));
    }
    for (c, (class, base)) in classes2.iter().zip(bases).enumerate() {
        if class.k != base.k || class.l != base.l {
            return Ok(Some(format!("class {c}: stabilisers changed")));
        }
        let theta = &pairs[class.rep];
        let se = random_strong_ext(&ext2, theta, &class.k, rng)?;
        let se_p = random_strong_ext(&ext2, theta, &base.kp, rng)?;
        if !class_eq(ext, &se.factor_set(&ext2), &base.alpha)? || !class_eq(ext, &se_p.factor_set(&ext2), &base.alpha_p)? {
            return Ok(Some(format!("class {c}: C changed")));
        }
        if gamma_of(&ext2, &se, &lin2)? != base.gamma || gamma_of(&ext2, &se_p, &lin2)? != base.gamma_p {
            return Ok(Some(format!("class {c}: Γ changed")));
        }
        let fixing: Vec<usize> = (0..lin2.chars.len())
            .filter(|&e| induced_equal(n, &theta.chi.twist(&lin2.chars[e].tau), &theta.chi))
            .collect();
        let w = random_witnesses(class, &lin2, &fixing, &class.l, rng);
        let mu = mu_matrix(&ext2, &se, &class.l, &w.iter().collect::<Vec<_>>())?;
        let w_p = random_witnesses(class, &lin2, &fixing, &base.lp, rng);
        let mu_p = mu_matrix(&ext2, &se_p, &base.lp, &w_p.iter().collect::<Vec<_>>())?;
        if !class_eq1(ext, &mu, &base.mu, &base.gamma)? || !class_eq1(ext, &mu_p, &base.mu_p, &base.gamma_p)? {
            return Ok(Some(format!("class {c}: T changed")));
        }
    }
    Ok(None)
}

fn well_defined_check(cfg: &Config, index: usize, g: &str, n: &str) -> Result<(bool, String)> {
    let ext = corpus::extension(g, n)?;
    let pairs = irr_of_n(ext.normal(), Exec::Sequential);
    let lin = lin_g(&ext)?;
    let classes = twist_classes(&ext, &pairs, &lin, Exec::Sequential);
    let bases = classes.iter().map(|c| baseline(&ext, &pairs, c, &lin)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for trial in 0..cfg.trials {
        if let Some(msg) = rechoice(&ext, &pairs, &bases, &mut rng)? {
            return Ok((false, format!("trial {trial}: {msg}")));
        }
    }
    Ok((true, format!("{} twist classes, {} trials", classes.len(), cfg.trials)))
}

fn tower_checks(cfg: &Config) -> Vec<Check> {
    let mut checks = Vec::new();
    for p in [2u64, 3] {
        let r = (|| {
            let table = tower_series(Family::Heisenberg, p, &[1, 2, 3], TowerMode::Twist, cfg.exec)?;
            let expected = vec![1, p - 1, p * (p - 1)];
            if table.stable != expected {
                return Ok((false, format!("stable coefficients {:?}, expected {expected:?}", table.stable)));
            }
            let fit = table.fit(FitBounds::default())?;
            let one = BigRational::from_integer(BigInt::from(1));
            let exact = fit.numerator == vec![one.clone(), -one] && fit.denominator == vec![(1, 1)];
            let tail = fit.expand(table.coefficients[2].len());
            let reproduces = tail.iter().zip(&table.coefficients[2]).all(|(a, &b)| *a == BigRational::from_integer(BigInt::from(b)));
            Ok((exact && reproduces, format!("stable {:?}, fit {fit}", table.stable)))
        })();
        checks.push(Check::from_result(format!("Heisenberg p = {p}, levels 1..3"), r));
        for m in 1..=2u32 {
            let r = (|| {
                let (g, tables) = oracle::oracle_heisenberg_irr(p, m)?;
                let classes = oracle::oracle_twist_partition(&g, &tables)?;
                let mut poly = DirichletPoly::new();
                for c in &classes {
                    poly.add_term(tables[c[0]][0].as_integer().unwrap_or(0) as u64, 1);
                }
                let main = tower_series(Family::Heisenberg, p, &[m], TowerMode::Twist, cfg.exec)?;
                let coeffs = poly.p_coefficients(p).unwrap_or_default();
                let formula = (1..m as usize).all(|k| coeffs.get(k) == Some(&(p.pow(k as u32 - 1) * (p - 1))));
                Ok((main.levels[0].1 == poly && formula, format!("exhaustive {poly}, assembled {}", main.levels[0].1)))
            })();
            checks.push(Check::from_result(format!("Heisenberg p = {p}, m = {m} by exhaustive twist classes"), r));
        }
    }
    checks
}

fn completeness_checks(cfg: &Config) -> Vec<Check> {
    let pairs = corpus::sweep_pairs();
    cfg.exec.map(&pairs, |&(g, n)| {
        let r = (|| {
            let ext = corpus::extension(g, n)?;
            let nn = ext.normal();
            let irr = irr_of_n(nn, Exec::Sequential);
            let squares: u64 = irr.iter().map(|t| t.degree() * t.degree()).sum();
            let classes = oracle::class_count(nn);
            let ok = squares == nn.order() as u64 && irr.len() == classes;
            Ok((ok, format!("|N| = {}, Σ θ(1)^2 = {squares}, {} pairs, {classes} classes", nn.order(), irr.len())))
        })();
        Check::from_result(format!("{g}/{n}"), r)
    })
}

/// Every irreducible induction `Ind_M^N χ` from a subgroup `M` of `N`.
fn irreducible_inductions(n: &PcGroup, level: u64) -> Vec<(crate::characters::LinChar, oracle::Table, bool)> {
    let mut out = Vec::new();
    for bits in all_subgroups_solvable(n) {
        let m = Arc::new(Subgroup::new(n, bits));
        for chi in lin_chars(n, &m) {
            let table = oracle::induce(n, &m.bits, chi.table(), level);
            let irreducible = oracle::is_irreducible(n, &table);
            out.push((chi, table, irreducible));
        }
    }
    out
}

#[derive(Default)]
struct Tally {
    checked: BTreeMap<&'static str, usize>,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, kind: &'static str, ok: bool, msg: impl FnOnce() -> String) {
        *self.checked.entry(kind).or_default() += 1;
        if !ok {
            self.failures.push(msg());
        }
    }
}

fn oracle_check(cfg: &Config, _: usize, g: &str, n: &str) -> Result<(bool, String)> {
    let ext = corpus::extension(g, n)?;
    let grp = corpus::group(g)?;
    let nn = ext.normal();
    let level = oracle::group_exponent(nn);
    let pairs = irr_of_n(nn, Exec::Sequential);
    let lin = lin_g(&ext)?;
    let classes = twist_classes(&ext, &pairs, &lin, Exec::Sequential);
    let mut tally = Tally::default();

    let rep_tables: Vec<oracle::Table> =
        pairs.iter().map(|t| oracle::induce(nn, &t.chi.dom.bits, t.chi.table(), level)).collect();
    for (chi, table, irreducible) in irreducible_inductions(nn, level) {
        tally.check("irreducibility", induces_irreducibly(nn, &chi) == irreducible, || {
            format!("Mackey and the norm disagree on a character of a subgroup of order {}", chi.dom.order())
        });
        if !irreducible {
            continue;
        }
        let oracle_hits: Vec<usize> = (0..pairs.len()).filter(|&r| oracle::tables_equal(&table, &rep_tables[r], level)).collect();
        let main_hits: Vec<usize> = (0..pairs.len()).filter(|&r| induced_equal(nn, &chi, &pairs[r].chi)).collect();
        tally.check("equality", oracle_hits.len() == 1 && oracle_hits == main_hits, || {
            format!("induction from order {} matches {main_hits:?} on the main path, {oracle_hits:?} by values", chi.dom.order())
        });
    }

    let taus = oracle::lin_restrictions(&ext);
    for a in 0..pairs.len() {
        for b in 0..pairs.len() {
            let main = induced_twist_equal(nn, &pairs[a].chi, &pairs[b].chi, &lin).is_some();
            let values = oracle::oracle_twist_equal(&rep_tables[b], &rep_tables[a], &taus, level);
            tally.check("twist-equality", main == values, || format!("θ_{a} and θ_{b}: main {main}, values {values}"));
        }
    }

    let mut by_tops: BTreeMap<TopSet, Vec<(usize, Cocycle2)>> = BTreeMap::new();
    for (t, theta) in pairs.iter().enumerate() {
        let k = crate::characters::stabilizer_k(&ext, &theta.chi);
        let kp = ext.sylow_p_part(&k);
        for tops in [k, kp] {
            if tops.len() <= 4 {
                let alpha = factor_set(&ext, &pair_on(&ext, theta, &tops)?);
                by_tops.entry(tops).or_default().push((t, alpha));
            }
        }
    }
    let mut skipped = 0;
    for (tops, items) in &by_tops {
        let q = ext.top_table(tops);
        let reps: Vec<Cocycle2> = h2_classes(&q)?.into_iter().map(|z| Cocycle2 { tops: tops.clone(), z }).collect();
        let mut items: Vec<(Option<usize>, &Cocycle2)> = items.iter().map(|(t, a)| (Some(*t), a)).collect();
        items.dedup_by(|x, y| x.1 == y.1);
        items.extend(reps.iter().map(|r| (None, r)));
        for x in 0..items.len() {
            for y in x + 1..items.len() {
                let diff = items[x].1.sub(items[y].1)?;
                if lcm_den(&diff.z) > MAX_DEN {
                    skipped += 1;
                    continue;
                }
                let main = class_eq(&ext, items[x].1, items[y].1)?;
                let exhaustive = oracle::oracle_coboundary(&q, &diff.z)?;
                tally.check("class membership", main == exhaustive, || {
                    format!("C(θ_{:?}) vs C(θ_{:?}) on {tops:?}: main {main}, search {exhaustive}", items[x].0, items[y].0)
                });
            }
        }
    }

    let mut stabilisers = Vec::new();
    for (c, class) in classes.iter().enumerate() {
        let theta = &pairs[class.rep];
        let pk = pair_on(&ext, theta, &class.k)?;
        let main = gamma_of(&ext, &StrongExt::new(pk.clone()), &lin)?;
        let exhaustive = oracle::oracle_gamma(&ext, &pk)?;
        tally.check("Γ membership", main.elems == exhaustive, || {
            format!("class {c}: |Γ| = {} on the main path, {} by search", main.order(), exhaustive.len())
        });
        stabilisers.push((theta.degree(), class.k.len() * nn.order(), class.l.len() * nn.order()));
    }
    stabilisers.sort();
    let expected = oracle::oracle_stabilisers(&ext)?;
    tally.check("stabilisers", stabilisers == expected, || format!("stabilisers {stabilisers:?}, by values {expected:?}"));

    let tables = oracle::oracle_irr_by_values(&grp)?;
    let mut degrees: Vec<u64> = tables.iter().map(|t| t[0].as_integer().unwrap_or(0) as u64).collect();
    degrees.sort();
    let direct = zeta_direct(&grp, cfg.exec)?;
    tally.check("Irr(G)", DirichletPoly::from_degrees(degrees.iter().copied()) == direct, || {
        format!("degrees {degrees:?} by values, {direct} directly")
    });
    let shape = |classes: &[Vec<usize>], degree: &dyn Fn(usize) -> u64| {
        let mut s: Vec<(u64, usize)> = classes.iter().map(|c| (degree(c[0]), c.len())).collect();
        s.sort();
        s
    };
    let main_tables = irr_tables(&grp, cfg.exec)?;
    let main_shape = shape(&twist_partition(&main_tables)?, &|i| main_tables[i][0].as_integer().unwrap_or(0) as u64);
    let oracle_shape = shape(&oracle::oracle_twist_partition(&grp, &tables)?, &|i| degrees_of(&tables, i));
    tally.check("twist partition of G", main_shape == oracle_shape, || {
        format!("twist classes {main_shape:?}, by values {oracle_shape:?}")
    });

    let summary: Vec<String> = tally.checked.iter().map(|(k, v)| format!("{k} {v}")).collect();
    let detail = match tally.failures.first() {
        None => format!("{}; {skipped} class pairs beyond the search bound", summary.join(", ")),
        Some(f) => format!("{} failures, first: {f}", tally.failures.len()),
    };
    Ok((tally.failures.is_empty(), detail))
}

fn degrees_of(tables: &[oracle::Table], i: usize) -> u64 {
    tables[i][0].as_integer().unwrap_or(0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Config {
        Config { exec: Exec::Sequential, seed: 7, trials: 2, random_matrices: 50 }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn schur_suite_passes() {
        let r = run(Suite::Schur, &quick());
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn single_pair_checks() {
        let cfg = quick();
        for f in [assembly_check as PairCheck, twist_check, jaikin_check, well_defined_check, oracle_check] {
            let (ok, detail) = f(&cfg, 0, "S3", "C3").unwrap();
            assert!(ok, "{detail}");
        }
    }

    #[test]
    fn rechoice_detects_a_wrong_baseline() {
        let ext = corpus::extension("H3", "Z").unwrap();
        let pairs = irr_of_n(ext.normal(), Exec::Sequential);
        let lin = lin_g(&ext).unwrap();
        let classes = twist_classes(&ext, &pairs, &lin, Exec::Sequential);
        let mut bases: Vec<Baseline> = classes.iter().map(|c| baseline(&ext, &pairs, c, &lin).unwrap()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(rechoice(&ext, &pairs, &bases, &mut rng).unwrap(), None);
        let other = bases.iter().position(|b| !is_coboundary2(&ext.top_table(&b.k), &b.alpha.z)).unwrap();
        let swapped = bases[other].alpha.clone();
        bases[0].alpha = swapped;
        assert!(rechoice(&ext, &pairs, &bases, &mut rng).unwrap().is_some_and(|m| m.contains("C changed")));
    }

    #[test]
    fn report_names_first_failure() {
        let report = SuiteReport {
            suite: Suite::Assembly,
            checks: vec![
                Check { name: "a".into(), passed: true, detail: String::new() },
                Check { name: "b".into(), passed: false, detail: "x".into() },
            ],
            elapsed: Duration::ZERO,
        };
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().name, "b");
        assert_eq!(report.to_record(7).checks.len(), 2);
    }
}
