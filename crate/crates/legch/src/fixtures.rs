//! Text fixture files for block complexes: labeled 0/1 matrix grids with
//! degree annotations.
//!
//! ```text
//! # two-copy fixture
//! n 1
//! which infinity
//! space dual -2 2        # summand, co-degree, dimension
//! space morse -1 1
//! map d_p -2             # block mapping co-degree -2 to -1; rows follow
//! 00
//! 11
//! 00
//! ```
//!
//! Two-copy fixtures use summands `dual`, `morse`, `co` and maps `d_p`,
//! `d_f`, `d_q`, `rho`, `sigma`, `eta` (plus `gamma`, `g_map`). Wrapped
//! fixtures use summands `zero`, `inf` and maps `dzero`, `dinf`, `delta`.
//! Omitted maps are zero.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::homology::{Gf2Matrix, GradedComplex};
use crate::verify::{TwoCopyBlocks, VerifyError, Which};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("fixture syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// A parsed two-copy fixture.
#[derive(Debug, Clone)]
pub struct TwoCopyFixture {
    pub blocks: TwoCopyBlocks,
    pub which: Which,
}

/// A parsed wrapped-Floer fixture: two cochain complexes in the co-degree
/// grading (stored homologically with degree `-j`) and the connecting block.
#[derive(Debug, Clone)]
pub struct WrappedFixture {
    pub cf0: GradedComplex,
    pub cf_inf: GradedComplex,
    /// Homological-degree blocks: `delta[k] : cf0_k -> cf_inf_{k-1}`.
    pub delta: BTreeMap<i64, Gf2Matrix>,
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }
    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }
    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.peek();
        self.pos += 1;
        item
    }
}

fn err(line: usize, msg: impl Into<String>) -> FixtureError {
    FixtureError::Syntax {
        line,
        msg: msg.into(),
    }
}

struct RawFixture {
    n: i64,
    which: Option<Which>,
    spaces: BTreeMap<String, BTreeMap<i64, usize>>,
    maps: BTreeMap<String, BTreeMap<i64, Vec<String>>>,
}

fn parse_raw(text: &str) -> Result<RawFixture, FixtureError> {
    let mut lines = Lines::new(text);
    let mut raw = RawFixture {
        n: 0,
        which: None,
        spaces: BTreeMap::new(),
        maps: BTreeMap::new(),
    };
    while let Some((lineno, line)) = lines.next() {
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        let rest: Vec<&str> = toks.collect();
        match head {
            "n" => {
                raw.n = rest
                    .first()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(lineno, "expected `n <int>`"))?;
            }
            "which" => {
                raw.which = Some(match rest.first().copied() {
                    Some("plus") => Which::Plus,
                    Some("infinity") => Which::Infinity,
                    _ => return Err(err(lineno, "expected `which plus|infinity`")),
                });
            }
            "space" => {
                if rest.len() != 3 {
                    return Err(err(lineno, "expected `space <summand> <degree> <dim>`"));
                }
                let deg: i64 = rest[1]
                    .parse()
                    .map_err(|_| err(lineno, "bad degree"))?;
                let dim: usize = rest[2].parse().map_err(|_| err(lineno, "bad dim"))?;
                raw.spaces
                    .entry(rest[0].to_string())
                    .or_default()
                    .insert(deg, dim);
            }
            "map" => {
                if rest.len() != 2 {
                    return Err(err(lineno, "expected `map <name> <from-degree>`"));
                }
                let deg: i64 = rest[1]
                    .parse()
                    .map_err(|_| err(lineno, "bad degree"))?;
                let mut rows = Vec::new();
                while let Some((_, l)) = lines.peek() {
                    if l.chars().all(|c| c == '0' || c == '1') && !l.is_empty() {
                        rows.push(l.to_string());
                        lines.next();
                    } else {
                        break;
                    }
                }
                raw.maps
                    .entry(rest[0].to_string())
                    .or_default()
                    .insert(deg, rows);
            }
            other => return Err(err(lineno, format!("unknown directive `{other}`"))),
        }
    }
    Ok(raw)
}

fn build_matrix(
    rows: &[String],
    target_dim: usize,
    source_dim: usize,
    name: &str,
    deg: i64,
) -> Result<Gf2Matrix, FixtureError> {
    let refs: Vec<&str> = rows.iter().map(|s| s.as_str()).collect();
    Gf2Matrix::from_rows(target_dim, source_dim, &refs).map_err(|e| {
        FixtureError::Verify(VerifyError::Shape(format!(
            "map {name} at degree {deg}: {e}"
        )))
    })
}

pub fn parse_twocopy(text: &str) -> Result<TwoCopyFixture, FixtureError> {
    let raw = parse_raw(text)?;
    let which = raw.which.unwrap_or(Which::Infinity);
    let empty = BTreeMap::new();
    let dims = |name: &str| raw.spaces.get(name).unwrap_or(&empty).clone();
    let mut blocks = TwoCopyBlocks {
        n: raw.n,
        dual_dims: dims("dual"),
        morse_dims: dims("morse"),
        co_dims: dims("co"),
        ..Default::default()
    };
    let dim = |m: &BTreeMap<i64, usize>, j: i64| m.get(&j).copied().unwrap_or(0);
    for (name, per_degree) in &raw.maps {
        for (&j, rows) in per_degree {
            // Source and target summand dims by block role.
            let (t, s) = match (name.as_str(), which) {
                ("d_p", _) => (dim(&blocks.dual_dims, j + 1), dim(&blocks.dual_dims, j)),
                ("d_f", _) => (dim(&blocks.morse_dims, j + 1), dim(&blocks.morse_dims, j)),
                ("d_q", _) => (dim(&blocks.co_dims, j + 1), dim(&blocks.co_dims, j)),
                ("rho", Which::Infinity) => {
                    (dim(&blocks.morse_dims, j + 1), dim(&blocks.dual_dims, j))
                }
                ("rho", Which::Plus) => {
                    (dim(&blocks.co_dims, j + 1), dim(&blocks.morse_dims, j))
                }
                ("sigma", _) => (dim(&blocks.co_dims, j + 1), dim(&blocks.morse_dims, j)),
                ("eta", _) => (dim(&blocks.co_dims, j + 1), dim(&blocks.dual_dims, j)),
                ("gamma", _) => (dim(&blocks.morse_dims, j + 1), dim(&blocks.dual_dims, j)),
                ("g_map", _) => (dim(&blocks.co_dims, j + 1), dim(&blocks.dual_dims, j)),
                (other, _) => {
                    return Err(FixtureError::Syntax {
                        line: 0,
                        msg: format!("unknown two-copy map `{other}`"),
                    })
                }
            };
            let m = build_matrix(rows, t, s, name, j)?;
            let target = match name.as_str() {
                "d_p" => &mut blocks.d_p,
                "d_f" => &mut blocks.d_f,
                "d_q" => &mut blocks.d_q,
                "rho" => &mut blocks.rho,
                "sigma" => &mut blocks.sigma,
                "eta" => &mut blocks.eta,
                "gamma" => &mut blocks.gamma,
                _ => &mut blocks.g_map,
            };
            target.insert(j, m);
        }
    }
    Ok(TwoCopyFixture { blocks, which })
}

/// Builds one cochain complex (given in co-degrees) as a homological complex
/// with degree `-j`.
fn cochain_to_complex(
    dims_j: &BTreeMap<i64, usize>,
    maps_j: &BTreeMap<i64, Vec<String>>,
    name: &str,
) -> Result<GradedComplex, FixtureError> {
    let dims: BTreeMap<i64, usize> = dims_j.iter().map(|(&j, &d)| (-j, d)).collect();
    let dim = |j: i64| dims_j.get(&j).copied().unwrap_or(0);
    let mut boundary = BTreeMap::new();
    for (&j, rows) in maps_j {
        let m = build_matrix(rows, dim(j + 1), dim(j), name, j)?;
        // Co-differential j -> j+1 is the boundary at homological degree -j.
        boundary.insert(-j, m);
    }
    GradedComplex::new(dims, boundary).map_err(|e| FixtureError::Verify(e.into()))
}

pub fn parse_wrapped(text: &str) -> Result<WrappedFixture, FixtureError> {
    let raw = parse_raw(text)?;
    let empty_d = BTreeMap::new();
    let empty_m = BTreeMap::new();
    let zero_dims = raw.spaces.get("zero").unwrap_or(&empty_d);
    let inf_dims = raw.spaces.get("inf").unwrap_or(&empty_d);
    let cf0 = cochain_to_complex(zero_dims, raw.maps.get("dzero").unwrap_or(&empty_m), "dzero")?;
    let cf_inf = cochain_to_complex(inf_dims, raw.maps.get("dinf").unwrap_or(&empty_m), "dinf")?;
    let mut delta = BTreeMap::new();
    if let Some(per_degree) = raw.maps.get("delta") {
        for (&j, rows) in per_degree {
            let t = inf_dims.get(&(j + 1)).copied().unwrap_or(0);
            let s = zero_dims.get(&j).copied().unwrap_or(0);
            let m = build_matrix(rows, t, s, "delta", j)?;
            // delta : zero(j) -> inf(j+1); homologically cf0_{-j} ->
            // cf_inf_{-j-1}, stored at degree -j.
            delta.insert(-j, m);
        }
    }
    Ok(WrappedFixture {
        cf0,
        cf_inf,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{twocopy_assemble, wrapped_cone_check};

    #[test]
    fn morse_circle_fixture() {
        let text = "n 1\nwhich infinity\nspace morse -1 1\nspace morse 0 1\n";
        let fx = parse_twocopy(text).unwrap();
        let out = twocopy_assemble(&fx.blocks, fx.which).unwrap();
        let h = out.homology();
        assert_eq!(h.dim(-1), 1);
        assert_eq!(h.dim(0), 1);
    }

    #[test]
    fn wrapped_fixture_round() {
        let text = "space zero 0 1\nspace inf 1 1\nmap delta 0\n1\n";
        let fx = parse_wrapped(text).unwrap();
        let r = wrapped_cone_check(&fx.cf0, &fx.cf_inf, &fx.delta).unwrap();
        assert!(r.acyclic);
    }

    #[test]
    fn bad_shape_reported() {
        let text = "n 1\nwhich infinity\nspace morse -1 1\nspace morse 0 1\nmap d_f -1\n11\n";
        let e = parse_twocopy(text).unwrap_err();
        assert!(matches!(e, FixtureError::Verify(VerifyError::Shape(_))));
    }
}
