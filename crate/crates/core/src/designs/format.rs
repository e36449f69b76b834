//! Text formats for block multisets and design tables.
//!
//! Block multiset:
//!
//! ```text
//! v h
//! 0 3 7 * 2
//! ```
//!
//! one line per distinct block, points ascending, followed by `*` and the
//! multiplicity. Blocks are written in lexicographic order; the parser
//! accepts any order and merges repeated lines.
//!
//! Design tables are CSV with header `ell,lambda,blocks,is_design`. An
//! empty shell union has `lambda` = `empty` and `is_design` = `vacuous`.

use std::fmt::Write as _;

use super::{BlockMultiset, TableRow};
use crate::error::{Error, Result};
use crate::prcode::format::{canonical_fields, canonical_uint, lines};
use crate::subset::{PointSet, MAX_POINTS};

pub const TABLE_CSV_HEADER: &str = "ell,lambda,blocks,is_design";

impl BlockMultiset {
    /// Fails on mixed block sizes, which the header cannot express.
    pub fn to_text(&self) -> Result<String> {
        if !self.is_uniform() {
            return Err(Error::NonUniformBlocks);
        }
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.v(), self.block_size().unwrap_or(0));
        for &(b, mult) in self.blocks() {
            for x in b.iter() {
                let _ = write!(s, "{x} ");
            }
            let _ = writeln!(s, "* {mult}");
        }
        Ok(s)
    }

    pub fn from_text(input: &str) -> Result<BlockMultiset> {
        let lines = lines(input)?;
        let header = canonical_fields(lines[0], 1)?;
        let [v, h] = header[..] else {
            return Err(Error::parse(1, "header must be `v h`"));
        };
        if v > MAX_POINTS as u64 || h > v {
            return Err(Error::parse(1, format!("need h <= v <= {MAX_POINTS}")));
        }
        let (v, h) = (v as usize, h as usize);
        let mut blocks = Vec::with_capacity(lines.len() - 1);
        for (i, line) in lines.iter().enumerate().skip(1) {
            let n = i + 1;
            let (points, mult) = match line.rsplit_once("* ") {
                Some((points, mult)) if points.is_empty() || points.ends_with(' ') => {
                    (points.trim_end_matches(' '), mult)
                }
                _ => return Err(Error::parse(n, "expected `points * multiplicity`")),
            };
            let mult = canonical_uint(mult, n)?;
            if mult == 0 {
                return Err(Error::parse(n, "multiplicity must be positive"));
            }
            let pts = canonical_fields(points, n)?;
            if pts.len() != h {
                return Err(Error::parse(n, format!("block has {} points, expected {h}", pts.len())));
            }
            if pts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::parse(n, "points must be strictly increasing"));
            }
            if pts.iter().any(|&x| x >= v as u64) {
                return Err(Error::parse(n, format!("point outside 0..{v}")));
            }
            let b: PointSet = pts.iter().map(|&x| x as usize).collect();
            blocks.push((b, mult));
        }
        BlockMultiset::from_weighted(v, Some(h), blocks)
            .map_err(|e| Error::parse(1, e.to_string()))
    }
}

pub fn table_to_csv(rows: &[TableRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{TABLE_CSV_HEADER}");
    for r in rows {
        if r.non_empty() {
            let lambda = r.lambda.map_or("-".to_string(), |l| l.to_string());
            let _ = writeln!(s, "{},{},{},{}", r.ell, lambda, r.block_count, r.is_design);
        } else {
            let _ = writeln!(s, "{},empty,0,vacuous", r.ell);
        }
    }
    s
}

pub fn parse_table_csv(input: &str) -> Result<Vec<TableRow>> {
    let lines = lines(input)?;
    if lines[0] != TABLE_CSV_HEADER {
        return Err(Error::parse(1, format!("expected header `{TABLE_CSV_HEADER}`")));
    }
    lines
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, line)| {
            let n = i + 1;
            let fields: Vec<&str> = line.split(',').collect();
            let [ell, lambda, blocks, is_design] = fields[..] else {
                return Err(Error::parse(n, "expected 4 fields"));
            };
            let ell = canonical_uint(ell, n)? as usize;
            let block_count = canonical_uint(blocks, n)?;
            match (lambda, is_design) {
                ("empty", "vacuous") if block_count == 0 => Ok(TableRow {
                    ell,
                    lambda: None,
                    block_count: 0,
                    is_design: true,
                }),
                ("-", "false") if block_count > 0 => Ok(TableRow {
                    ell,
                    lambda: None,
                    block_count,
                    is_design: false,
                }),
                (l, "true") if block_count > 0 => Ok(TableRow {
                    ell,
                    lambda: Some(canonical_uint(l, n)?),
                    block_count,
                    is_design: true,
                }),
                _ => Err(Error::parse(n, "inconsistent row")),
            }
        })
        .collect()
}
