//! A line-oriented text format for a finite group presented over a normal
//! p-subgroup. The grammar is documented in `docs/group-format.md`.
//!
//! ```text
//! # S3 over C3
//! 3 1 2
//! gamma 1 : 1 2
//! gamma 2 : 2 1
//! phi 2 1 : 2
//! ```

use crate::error::{Error, Result};
use crate::group::{Extension, Group, PcGroup};
use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Parsed {
    header_line: usize,
    p: u32,
    d: usize,
    m: usize,
    power: HashMap<usize, (usize, Vec<u8>)>,
    comm: HashMap<(usize, usize), (usize, Vec<u8>)>,
    gamma: HashMap<usize, (usize, Vec<usize>)>,
    tail: HashMap<(usize, usize), (usize, Vec<u8>)>,
    phi: HashMap<(usize, usize), (usize, Vec<u8>)>,
}

fn numbers(line: usize, tokens: &[&str]) -> Result<Vec<u64>> {
    tokens
        .iter()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(line, format!("`{t}` is not a non-negative integer"))))
        .collect()
}

fn one_based(line: usize, v: u64, bound: usize, what: &str) -> Result<usize> {
    if v == 0 || v as usize > bound {
        return Err(parse_err(line, format!("{what} {v} is outside 1..={bound}")));
    }
    Ok(v as usize - 1)
}

fn exponent_vector(line: usize, values: &[u64], p: u32, d: usize) -> Result<Vec<u8>> {
    if values.len() != d {
        return Err(parse_err(line, format!("expected {d} exponents, found {}", values.len())));
    }
    values
        .iter()
        .map(|&e| {
            if e >= p as u64 {
                Err(parse_err(line, format!("exponent {e} is not below p = {p}")))
            } else {
                Ok(e as u8)
            }
        })
        .collect()
}

fn insert_once<K: std::hash::Hash + Eq, V>(map: &mut HashMap<K, (usize, V)>, key: K, line: usize, value: V) -> Result<()> {
    if let Some((first, _)) = map.get(&key) {
        return Err(parse_err(line, format!("duplicate entry, first given on line {first}")));
    }
    map.insert(key, (line, value));
    Ok(())
}

fn parse_lines(text: &str) -> Result<Parsed> {
    let mut parsed: Option<Parsed> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some(pr) = parsed.as_mut() else {
            let v = numbers(line, &content.split_whitespace().collect::<Vec<_>>())?;
            let [p, d, m] = v[..] else {
                return Err(parse_err(line, "the header must be `p d m`"));
            };
            if !crate::group::is_prime(p) || p > 251 {
                return Err(parse_err(line, format!("p = {p} is not a prime below 256")));
            }
            if d == 0 || m == 0 {
                return Err(parse_err(line, "d and m must be positive"));
            }
            parsed = Some(Parsed {
                header_line: line,
                p: p as u32,
                d: d as usize,
                m: m as usize,
                power: HashMap::new(),
                comm: HashMap::new(),
                gamma: HashMap::new(),
                tail: HashMap::new(),
                phi: HashMap::new(),
            });
            continue;
        };
        let (head, body) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected `keyword indices : values`"))?;
        let mut head_tokens = head.split_whitespace();
        let keyword = head_tokens.next().unwrap_or("");
        let idx = numbers(line, &head_tokens.collect::<Vec<_>>())?;
        let values = numbers(line, &body.split_whitespace().collect::<Vec<_>>())?;
        let (p, d, m) = (pr.p, pr.d, pr.m);
        let arity = |n: usize| -> Result<()> {
            if idx.len() == n {
                Ok(())
            } else {
                Err(parse_err(line, format!("`{keyword}` takes {n} indices, found {}", idx.len())))
            }
        };
        match keyword {
            "power" => {
                arity(1)?;
                let i = one_based(line, idx[0], d, "generator")?;
                insert_once(&mut pr.power, i, line, exponent_vector(line, &values, p, d)?)?;
            }
            "comm" => {
                arity(2)?;
                let j = one_based(line, idx[0], d, "generator")?;
                let i = one_based(line, idx[1], d, "generator")?;
                if i >= j {
                    return Err(parse_err(line, "commutators are given as `comm j i` with i < j"));
                }
                insert_once(&mut pr.comm, (j, i), line, exponent_vector(line, &values, p, d)?)?;
            }
            "gamma" => {
                arity(1)?;
                let i = one_based(line, idx[0], m, "coset")?;
                if values.len() != m {
                    return Err(parse_err(line, format!("expected {m} cosets, found {}", values.len())));
                }
                let row = values.iter().map(|&v| one_based(line, v, m, "coset")).collect::<Result<Vec<_>>>()?;
                insert_once(&mut pr.gamma, i, line, row)?;
            }
            "tail" => {
                arity(2)?;
                let i = one_based(line, idx[0], m, "coset")?;
                let j = one_based(line, idx[1], m, "coset")?;
                insert_once(&mut pr.tail, (i, j), line, exponent_vector(line, &values, p, d)?)?;
            }
            "phi" => {
                arity(2)?;
                let i = one_based(line, idx[0], m, "coset")?;
                let k = one_based(line, idx[1], d, "generator")?;
                insert_once(&mut pr.phi, (i, k), line, exponent_vector(line, &values, p, d)?)?;
            }
            other => return Err(parse_err(line, format!("unknown keyword `{other}`"))),
        }
    }
    parsed.ok_or_else(|| parse_err(text.lines().count().max(1), "missing header `p d m`"))
}

/// Parse a group in the text format. Syntax errors and inconsistent data are
/// both reported with the number of the offending line.
pub fn parse_extension(text: &str) -> Result<Extension> {
    let pr = parse_lines(text)?;
    let (d, m) = (pr.d, pr.m);
    let first_line = |lines: &mut dyn Iterator<Item = usize>| lines.min().unwrap_or(pr.header_line);
    let power = (0..d).map(|i| pr.power.get(&i).map_or(vec![0; d], |(_, v)| v.clone())).collect();
    let comm = (0..d)
        .map(|j| (0..j).map(|i| pr.comm.get(&(j, i)).map_or(vec![0; d], |(_, v)| v.clone())).collect())
        .collect();
    let relation_line = first_line(&mut pr.power.values().map(|e| e.0).chain(pr.comm.values().map(|e| e.0)));
    let n = PcGroup::new(pr.p, d, power, comm).map_err(|e| parse_err(relation_line, format!("presentation of N: {e}")))?;
    let gamma_line = first_line(&mut pr.gamma.values().map(|e| e.0));
    let mut gamma = Vec::with_capacity(m * m);
    for i in 0..m {
        match pr.gamma.get(&i) {
            Some((_, row)) => gamma.extend_from_slice(row),
            None if m == 1 => gamma.push(0),
            None => return Err(parse_err(gamma_line, format!("missing row {} of the gamma table", i + 1))),
        }
    }
    let mut tail = vec![0usize; m * m];
    for (&(i, j), (_, v)) in &pr.tail {
        tail[i * m + j] = n.id_of(v);
    }
    let mut phi_gens = vec![vec![0usize; d]; m];
    for (i, row) in phi_gens.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = pr.phi.get(&(i, k)).map_or(n.generator(k), |(_, v)| n.id_of(v));
        }
    }
    let data_line = first_line(
        &mut pr
            .gamma
            .values()
            .map(|e| e.0)
            .chain(pr.tail.values().map(|e| e.0))
            .chain(pr.phi.values().map(|e| e.0)),
    );
    Extension::new(Arc::new(n), gamma, tail, phi_gens).map_err(|e| parse_err(data_line, format!("extension data: {e}")))
}

fn vector(out: &mut String, v: &[u8]) {
    for e in v {
        let _ = write!(out, " {e}");
    }
}

/// Write an extension in the text format, omitting trivial relations,
/// trivial tails and identity actions.
pub fn write_extension(ext: &Extension) -> String {
    let n = ext.normal();
    let (d, m) = (n.rank(), ext.index());
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", n.p(), d, m);
    for i in 0..d {
        let w = n.power_word(i);
        if w.iter().any(|&e| e != 0) {
            let _ = write!(out, "power {} :", i + 1);
            vector(&mut out, w);
            out.push('\n');
        }
    }
    for j in 0..d {
        for i in 0..j {
            let w = n.comm_word(j, i);
            if w.iter().any(|&e| e != 0) {
                let _ = write!(out, "comm {} {} :", j + 1, i + 1);
                vector(&mut out, w);
                out.push('\n');
            }
        }
    }
    if m > 1 {
        for i in 0..m {
            let _ = write!(out, "gamma {} :", i + 1);
            for j in 0..m {
                let _ = write!(out, " {}", ext.gamma(i, j) + 1);
            }
            out.push('\n');
        }
    }
    for i in 0..m {
        for j in 0..m {
            let a = ext.tail(i, j);
            if a != 0 {
                let _ = write!(out, "tail {} {} :", i + 1, j + 1);
                vector(&mut out, &n.vec_of(a));
                out.push('\n');
            }
        }
    }
    for i in 0..m {
        for k in 0..d {
            let x = ext.phi(i, n.generator(k));
            if x != n.generator(k) {
                let _ = write!(out, "phi {} {} :", i + 1, k + 1);
                vector(&mut out, &n.vec_of(x));
                out.push('\n');
            }
        }
    }
    out
}

/// Whether two extensions have the same normal subgroup presentation and the
/// same multiplication on every pair of elements.
pub fn same_group_data(a: &Extension, b: &Extension) -> bool {
    a.order() == b.order()
        && a.index() == b.index()
        && a.normal().order() == b.normal().order()
        && (0..a.order()).all(|x| (0..a.order()).all(|y| a.mul(x, y) == b.mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const S3: &str = "# S3 over C3\n3 1 2\ngamma 1 : 1 2\ngamma 2 : 2 1\nphi 2 1 : 2\n";

    #[test]
    fn parses_s3() {
        let ext = parse_extension(S3).unwrap();
        assert_eq!(ext.order(), 6);
        assert_eq!(ext.phi(1, 1), 2);
    }

    #[test]
    fn round_trips_the_corpus() {
        for (g, n) in corpus::sweep_pairs() {
            let ext = corpus::extension(g, n).unwrap();
            let text = write_extension(&ext);
            let back = parse_extension(&text).unwrap_or_else(|e| panic!("{g}/{n}: {e}\n{text}"));
            assert!(same_group_data(&ext, &back), "{g}/{n}");
            assert_eq!(write_extension(&back), text);
        }
    }

    fn error_line(text: &str) -> usize {
        match parse_extension(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(error_line("3 1\n"), 1);
        assert_eq!(error_line("# only a comment\n"), 1);
        assert_eq!(error_line("3 1 2\ngamma 1 : 1 2\ngamma 2 : 2 x\n"), 3);
        assert_eq!(error_line("3 1 2\ngamma 1 : 1 2\ngamma 2 : 2 1\nphi 2 1 : 3\n"), 4);
        assert_eq!(error_line("3 1 2\ngamma 1 : 1 2\ngamma 1 : 2 1\n"), 3);
        assert_eq!(error_line("3 1 2\ngamma 1 : 1 2\n\nwhat 2 : 2 1\n"), 4);
        assert_eq!(error_line("3 1 2\ngamma 1 : 1 2\n"), 2);
        // phi 2 sends n_1 to the identity, which is not an automorphism.
        assert_eq!(error_line("3 1 2\ngamma 1 : 1 2\ngamma 2 : 2 1\nphi 2 1 : 0\n"), 2);
        // a non-associative quotient table.
        assert_eq!(error_line("2 1 3\ngamma 1 : 1 2 3\ngamma 2 : 2 3 1\ngamma 3 : 3 2 1\n"), 2);
    }
}
