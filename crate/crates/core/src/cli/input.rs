//! Grammar for directions and planes on the command line.
//!
//! Directions: `e1`..`ek`, `random`, a comma list such as `1,-1,0`, or `@path` with
//! one coordinate per line. Pairs: `e1,e2`, `trig`, `random`, two comma lists
//! separated by `;` as in `1,0,0;0,1,0`, or `@path` with lines `u_i,v_i`.

use std::fs;

use crate::error::{Error, Result};
use crate::linalg::{orthonormal_pair, random_pair, unit_vector, OrthoPair, Seed};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(format!("not a finite number: `{t}`")))
        })
        .collect()
}

fn read_lines(path: &str) -> Result<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| bad(format!("cannot read {path}: {e}")))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn basis_index(s: &str, m: usize) -> Result<Option<usize>> {
    let Some(rest) = s.strip_prefix('e') else {
        return Ok(None);
    };
    let Ok(k) = rest.parse::<usize>() else {
        return Ok(None);
    };
    if k == 0 || k > m {
        return Err(bad(format!("`{s}` out of range for dimension {m}")));
    }
    Ok(Some(k - 1))
}

fn check_len(x: &[f64], m: usize) -> Result<()> {
    if x.len() == m {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: m,
            found: x.len(),
        })
    }
}

/// Raw coordinates of a direction literal in `R^m`; `random` is resolved by the
/// caller since its distribution depends on the body.
#[derive(Debug, Clone, PartialEq)]
pub enum DirectionSpec {
    Random,
    Coords(Vec<f64>),
}

pub fn parse_direction(s: &str, m: usize) -> Result<DirectionSpec> {
    let s = s.trim();
    if s == "random" {
        return Ok(DirectionSpec::Random);
    }
    if let Some(k) = basis_index(s, m)? {
        return Ok(DirectionSpec::Coords(unit_vector(m, k)));
    }
    let x = if let Some(path) = s.strip_prefix('@') {
        read_lines(path)?
            .iter()
            .map(|l| parse_list(l).and_then(|v| if v.len() == 1 { Ok(v[0]) } else { Err(bad("one coordinate per line")) }))
            .collect::<Result<Vec<f64>>>()?
    } else {
        parse_list(s)?
    };
    check_len(&x, m)?;
    Ok(DirectionSpec::Coords(x))
}

/// A plane in `R^n`, orthonormalized by Gram–Schmidt.
pub fn parse_pair(s: &str, n: usize, seed: Seed) -> Result<OrthoPair> {
    let s = s.trim();
    match s {
        "trig" => return OrthoPair::regular(n),
        "random" => return random_pair(&mut seed.rng(), n),
        _ => {}
    }
    if let Some(path) = s.strip_prefix('@') {
        let (mut u, mut v) = (Vec::new(), Vec::new());
        for l in read_lines(path)? {
            let row = parse_list(&l)?;
            if row.len() != 2 {
                return Err(bad(format!("expected `u_i,v_i`, got `{l}`")));
            }
            u.push(row[0]);
            v.push(row[1]);
        }
        check_len(&u, n)?;
        return orthonormal_pair(&u, &v);
    }
    if let Some((a, b)) = s.split_once(';') {
        let (u, v) = (parse_list(a)?, parse_list(b)?);
        check_len(&u, n)?;
        check_len(&v, n)?;
        return orthonormal_pair(&u, &v);
    }
    if let Some((a, b)) = s.split_once(',') {
        if let (Some(i), Some(j)) = (basis_index(a.trim(), n)?, basis_index(b.trim(), n)?) {
            if i == j {
                return Err(Error::DegeneratePlane);
            }
            return OrthoPair::coordinate(n, i, j);
        }
    }
    Err(bad(format!(
        "cannot parse plane `{s}`: use eI,eJ, trig, random, u;v or @file"
    )))
}

/// Dimension range `a..b` (inclusive) or a single `a`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| bad(format!("not a dimension: `{t}`")))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((num(a)?, num(b)?))
        }
        None => {
            let a = num(s)?;
            Ok((a, a))
        }
    }
}
