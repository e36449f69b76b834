use std::fmt::Write as _;
use std::ops::RangeInclusive;

use prdesign::designs::{
    check_design, conjugate_union, table_from_index, table_to_csv, BlockMultiset, DesignReport,
    TableRow,
};
use prdesign::groups::{
    affine_group, conjugating_permutation, orbits_on_ksubsets, structure_checks, PermGroup,
    Permutation, StructureCheck,
};
use prdesign::harmonics::{
    conjugate_vanishing_check, delsarte_design_check, format_rational, harmonic_weight_enumerators,
    in_span, invariant_harmonic_basis, span_rank, HarmonicBasis, SubsetFunction, Symmetry,
    WeightEnumeratorVector,
};
use prdesign::jacobi::{
    independence_check, jacobi_conjugate_sum, jacobi_many, lambda_from_jacobi,
    IndependenceReport, JacobiPolynomial, SumRoute, TSelection,
};
use prdesign::prcode::{
    build_code, generator_polynomial, residue_cosets, CyclicCode, ShellIndex,
    DEFAULT_ENUMERATION_CAP,
};
use prdesign::reference::{Instance, BINARY_31, QUINARY_13};
use prdesign::subset::PointSet;
use serde_json::{json, Value};

use crate::args::{Cli, CodeArgs, Command, Format, GroupArgs, SetArgs, Target};
use crate::error::{CliError, CliResult};

/// What a command emits on the data stream, and whether it verified.
pub struct Report {
    pub data: String,
    /// Set when a verification failed; printed to stderr, exit status 1.
    pub failure: Option<String>,
}

impl Report {
    fn ok(data: String) -> Self {
        Report { data, failure: None }
    }

    fn checked(data: String, failures: Vec<String>) -> Self {
        let failure = (!failures.is_empty()).then(|| failures.join("\n"));
        Report { data, failure }
    }
}

fn progress(msg: impl AsRef<str>) {
    eprintln!("prdesign: {}", msg.as_ref());
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

struct Session {
    cap: u64,
    format: Option<Format>,
}

impl Session {
    fn format(&self, command: &str, allowed: &[Format]) -> CliResult<Format> {
        let f = self.format.unwrap_or(allowed[0]);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Config(format!(
                "{command} does not support --format {}",
                f.name()
            )))
        }
    }

    fn code(&self, args: &CodeArgs) -> CliResult<(CyclicCode, u32, u32)> {
        let (p, m, q) = require_code(args)?;
        let code = build_code(p, m, q)?.with_cap(self.cap);
        Ok((code, p, m))
    }

    fn shell_index(&self, code: &CyclicCode) -> CliResult<ShellIndex> {
        code.check_cap()?;
        progress(format!(
            "enumerating {} codewords of PR_{}^{}({})",
            code.size(),
            code.q(),
            code.m(),
            code.p()
        ));
        Ok(code.shell_index()?)
    }
}

fn require(name: &str, v: Option<u32>) -> CliResult<u32> {
    v.ok_or_else(|| CliError::Config(format!("--{name} is required")))
}

fn require_code(args: &CodeArgs) -> CliResult<(u32, u32, u32)> {
    Ok((require("p", args.p)?, require("m", args.m)?, require("q", args.q)?))
}

fn require_group(args: &GroupArgs) -> CliResult<(u32, u32)> {
    Ok((require("p", args.p)?, require("m", args.m)?))
}

pub fn parse_points(text: &str, v: usize) -> CliResult<PointSet> {
    let bad = |why: String| CliError::Config(format!("bad point list {text:?}: {why}"));
    let mut set = PointSet::EMPTY;
    if text.trim().is_empty() {
        return Ok(set);
    }
    for tok in text.split(',') {
        let x: usize = tok.trim().parse().map_err(|_| bad(format!("{tok:?} is not a point")))?;
        if x >= v {
            return Err(bad(format!("{x} is not below {v}")));
        }
        if set.contains(x) {
            return Err(bad(format!("{x} repeated")));
        }
        set.insert(x);
    }
    Ok(set)
}

/// `a..b`, `a..=b` or `a-b`, inclusive.
pub fn parse_range(text: &str) -> CliResult<RangeInclusive<usize>> {
    let bad = || CliError::Config(format!("bad range {text:?}, expected a..b"));
    let (a, b) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .or_else(|| text.split_once('-'))
        .ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn chosen_set(args: &SetArgs, p: u32) -> CliResult<Option<PointSet>> {
    if let Some(pair) = &args.rep_of {
        let set = parse_points(pair, p as usize)?;
        if set.len() != 2 {
            return Err(CliError::Config("--rep-of takes exactly two distinct points".into()));
        }
        return Ok(Some(set));
    }
    args.set.as_deref().map(|s| parse_points(s, p as usize)).transpose()
}

fn set_label(s: PointSet) -> String {
    let pts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", pts.join(", "))
}

fn points_json(s: PointSet) -> Value {
    json!(s.to_vec())
}

fn poly_json(j: &JacobiPolynomial) -> Value {
    serde_json::from_str(&j.to_json()).expect("library JSON parses")
}

fn enumerator_json(e: &WeightEnumeratorVector) -> Value {
    json!(e.coeffs().iter().map(format_rational).collect::<Vec<_>>())
}

fn orbit_values_label<T: std::fmt::Display>(values: &[T]) -> String {
    values.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn roman(i: usize) -> &'static str {
    ["i", "ii", "iii", "iv", "v", "vi"].get(i).copied().unwrap_or("?")
}

fn check_ell(ell: usize, p: u32) -> CliResult<()> {
    if ell > p as usize {
        return Err(CliError::Config(format!("ℓ = {ell} exceeds the length {p}")));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> CliResult<Report> {
    let session = Session {
        cap: cli.cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
        format: cli.format,
    };
    let s = &session;
    match &cli.command {
        Command::Cosets(g) => cosets(s, g),
        Command::Genpoly(c) => genpoly(s, c),
        Command::CodeInfo(c) => code_info(s, c),
        Command::Weights(c) => weights(s, c),
        Command::Shells { code, ell, single } => shells(s, code, *ell, *single),
        Command::DesignCheck {
            code,
            ell,
            ell_range,
            t,
            single,
            delsarte,
            blocks,
        } => match blocks {
            Some(path) => design_check_file(s, path, *t, *delsarte),
            None => {
                let ells = match (ell, ell_range) {
                    (Some(e), _) => *e..=*e,
                    (None, Some(r)) => parse_range(r)?,
                    (None, None) => {
                        return Err(CliError::Config("one of --ell, --ell-range or --blocks is required".into()))
                    }
                };
                design_check(s, code, ells, *t, *single, *delsarte)
            }
        },
        Command::Jacobi { code, set, t } => jacobi_cmd(s, code, set, *t),
        Command::JacobiSum { code, set, direct } => jacobi_sum(s, code, set, *direct),
        Command::HarmonicBasis { group, t } => harmonic_basis(s, group, *t),
        Command::Hwe {
            code,
            t,
            function,
            conjugate_sum,
        } => hwe(s, code, *t, function.as_deref(), *conjugate_sum),
        Command::VerifyTheorem {
            code,
            t,
            samples,
            all_sets,
        } => verify_theorem(s, code, *t, *samples, *all_sets),
        Command::Reproduce { target } => match target {
            Target::Table1 => reproduce_table(s, BINARY_31),
            Target::Table2 => reproduce_table(s, QUINARY_13),
            Target::Example51 => reproduce_example(s, BINARY_31),
            Target::Example52 => reproduce_example(s, QUINARY_13),
        },
    }
}

fn cosets(s: &Session, args: &GroupArgs) -> CliResult<Report> {
    let format = s.format("cosets", &[Format::Text, Format::Json])?;
    let (p, m) = require_group(args)?;
    let cosets = residue_cosets(p, m)?;
    Ok(Report::ok(match format {
        Format::Json => to_json(&json!({
            "p": p,
            "m": m,
            "primitive_root": cosets.primitive_root(),
            "cosets": cosets.cosets(),
        })),
        _ => {
            let mut out = format!("# p = {p}, m = {m}, g = {}\n", cosets.primitive_root());
            for (i, c) in cosets.cosets().iter().enumerate() {
                let pts: Vec<String> = c.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "A_{i}: {}", pts.join(" "));
            }
            out
        }
    }))
}

fn poly_label(coeffs: &[u32]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| {
            let c = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => c,
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn genpoly(s: &Session, args: &CodeArgs) -> CliResult<Report> {
    let format = s.format("genpoly", &[Format::Text, Format::Json])?;
    let (p, m, q) = require_code(args)?;
    let g = generator_polynomial(p, m, q)?;
    Ok(Report::ok(match format {
        Format::Json => to_json(&json!({
            "p": p, "m": m, "q": q,
            "degree": g.degree(),
            "coefficients": g.coeffs(),
        })),
        _ => format!("{}\n", poly_label(g.coeffs())),
    }))
}

fn code_info(s: &Session, args: &CodeArgs) -> CliResult<Report> {
    let format = s.format("code-info", &[Format::Text, Format::Json])?;
    let (code, p, m) = s.code(args)?;
    Ok(Report::ok(match format {
        Format::Json => to_json(&json!({
            "p": p, "m": m, "q": code.q(),
            "n": code.len(),
            "k": code.dimension(),
            "generator_poly": code.generator_poly().coeffs(),
            "generator_matrix": code.generator_matrix(),
        })),
        _ => code.to_text(),
    }))
}

fn weights(s: &Session, args: &CodeArgs) -> CliResult<Report> {
    let format = s.format("weights", &[Format::Text, Format::Json, Format::Csv])?;
    let (code, p, m) = s.code(args)?;
    let wd = s.shell_index(&code)?.weight_distribution();
    Ok(Report::ok(match format {
        Format::Json => to_json(&json!({"p": p, "m": m, "q": code.q(), "weights": wd})),
        Format::Csv => {
            let mut out = String::from("weight,count\n");
            for (w, a) in wd.iter().enumerate() {
                let _ = writeln!(out, "{w},{a}");
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (w, a) in wd.iter().enumerate() {
                let _ = writeln!(out, "{w} {a}");
            }
            out
        }
    }))
}

/// `C_ℓ`, or its union over the `m` conjugate codes.
fn shell_blocks(index: &ShellIndex, sigma: &Permutation, m: u32, ell: usize, single: bool) -> BlockMultiset {
    if single {
        index.shell(ell)
    } else {
        conjugate_union(index.len(), ell, index.supports(ell), sigma, m as usize)
    }
}

fn blocks_json(b: &BlockMultiset) -> Value {
    json!({
        "v": b.v(),
        "block_size": b.block_size(),
        "block_count": b.block_count(),
        "blocks": b.blocks().iter().map(|&(pts, mult)| json!({
            "points": points_json(pts),
            "multiplicity": mult,
        })).collect::<Vec<_>>(),
    })
}

fn shells(s: &Session, args: &CodeArgs, ell: usize, single: bool) -> CliResult<Report> {
    let format = s.format("shells", &[Format::Text, Format::Json])?;
    let (code, p, m) = s.code(args)?;
    check_ell(ell, p)?;
    let sigma = conjugating_permutation(p, m)?;
    let index = s.shell_index(&code)?;
    let blocks = shell_blocks(&index, &sigma, m, ell, single);
    Ok(Report::ok(match format {
        Format::Json => to_json(&blocks_json(&blocks)),
        _ => blocks.to_text()?,
    }))
}

/// One checked block multiset.
struct DesignRow {
    ell: Option<usize>,
    report: Option<DesignReport>,
    /// Verdict of the harmonic criterion, when requested.
    delsarte: Option<bool>,
}

impl DesignRow {
    fn table_row(&self) -> TableRow {
        match &self.report {
            Some(r) => TableRow {
                ell: self.ell.unwrap_or(0),
                lambda: r.lambda,
                block_count: r.block_count,
                is_design: r.is_design,
            },
            None => TableRow {
                ell: self.ell.unwrap_or(0),
                lambda: None,
                block_count: 0,
                is_design: true,
            },
        }
    }

    fn label(&self) -> String {
        self.ell.map_or_else(|| "blocks".into(), |e| format!("ℓ = {e}"))
    }

    fn text(&self, t: usize) -> String {
        let mut line = match &self.report {
            None => format!("{}: empty; vacuously consistent", self.label()),
            Some(r) if r.is_design => format!(
                "{}: {t}-({}, {}, {}) design, {} blocks",
                self.label(),
                r.v,
                r.block_size.unwrap_or(0),
                r.lambda.unwrap_or(0),
                r.block_count
            ),
            Some(r) => format!(
                "{}: not a {t}-design, {} blocks, counts {}..{}, witness {}",
                self.label(),
                r.block_count,
                r.min_count,
                r.max_count,
                r.witness.map_or_else(String::new, set_label)
            ),
        };
        if let Some(d) = self.delsarte {
            line.push_str(if d { "; harmonic criterion: design" } else { "; harmonic criterion: not a design" });
        }
        line
    }

    fn failure(&self, t: usize) -> Option<String> {
        let r = self.report.as_ref()?;
        if !r.is_design {
            return Some(format!(
                "{}: {} lies in {} blocks, other {t}-subsets in up to {}",
                self.label(),
                r.witness.map_or_else(String::new, set_label),
                r.min_count,
                r.max_count
            ));
        }
        if self.delsarte.is_some_and(|d| d != r.is_design) {
            return Some(format!("{}: counting and harmonic check disagree", self.label()));
        }
        None
    }

    fn json(&self) -> Value {
        match &self.report {
            None => json!({"ell": self.ell, "blocks": 0, "is_design": true, "vacuous": true,
                           "lambda": null, "delsarte": self.delsarte}),
            Some(r) => json!({
                "ell": self.ell,
                "blocks": r.block_count,
                "is_design": r.is_design,
                "vacuous": false,
                "lambda": r.lambda,
                "min_count": r.min_count,
                "max_count": r.max_count,
                "witness": r.witness.map(points_json),
                "delsarte": self.delsarte,
            }),
        }
    }
}

fn check_row(
    ell: Option<usize>,
    blocks: &BlockMultiset,
    t: usize,
    symmetry: Option<Symmetry<'_>>,
) -> CliResult<DesignRow> {
    if blocks.is_empty() {
        return Ok(DesignRow { ell, report: None, delsarte: None });
    }
    let report = check_design(blocks, t)?;
    let delsarte = match symmetry {
        Some(sym) => Some(delsarte_design_check(blocks, t, sym)?.is_design),
        None => None,
    };
    Ok(DesignRow { ell, report: Some(report), delsarte })
}

fn render_rows(format: Format, t: usize, rows: &[DesignRow]) -> String {
    match format {
        Format::Csv => table_to_csv(&rows.iter().map(DesignRow::table_row).collect::<Vec<_>>()),
        Format::Json => to_json(&json!({
            "t": t,
            "rows": rows.iter().map(DesignRow::json).collect::<Vec<_>>(),
        })),
        Format::Text => rows.iter().map(|r| r.text(t) + "\n").collect(),
    }
}

fn design_check(
    s: &Session,
    args: &CodeArgs,
    ells: RangeInclusive<usize>,
    t: usize,
    single: bool,
    delsarte: bool,
) -> CliResult<Report> {
    let format = s.format("design-check", &[Format::Text, Format::Json, Format::Csv])?;
    let (code, p, m) = s.code(args)?;
    check_ell(*ells.end(), p)?;
    let sigma = conjugating_permutation(p, m)?;
    let (h, _) = affine_group(p, m)?;
    let index = s.shell_index(&code)?;
    let rows = ells
        .map(|ell| {
            let blocks = shell_blocks(&index, &sigma, m, ell, single);
            check_row(Some(ell), &blocks, t, delsarte.then_some(Symmetry::Group(&h)))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let failures = rows.iter().filter_map(|r| r.failure(t)).collect();
    Ok(Report::checked(render_rows(format, t, &rows), failures))
}

fn read_file(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn design_check_file(s: &Session, path: &std::path::Path, t: usize, delsarte: bool) -> CliResult<Report> {
    let format = s.format("design-check", &[Format::Text, Format::Json, Format::Csv])?;
    let blocks = BlockMultiset::from_text(&read_file(path)?)?;
    let ell = blocks.block_size();
    let row = check_row(ell, &blocks, t, delsarte.then_some(Symmetry::Full(blocks.v())))?;
    let failures = row.failure(t).into_iter().collect();
    Ok(Report::checked(render_rows(format, t, &[row]), failures))
}

fn jacobi_cmd(s: &Session, args: &CodeArgs, set: &SetArgs, t: usize) -> CliResult<Report> {
    let format = s.format("jacobi", &[Format::Text, Format::Json])?;
    let (code, p, m) = s.code(args)?;
    let chosen = chosen_set(set, p)?;
    let (h, _) = affine_group(p, m)?;
    let k = chosen.map_or(t, PointSet::len);
    if k > p as usize {
        return Err(CliError::Config(format!("t = {k} exceeds the length {p}")));
    }
    let orbits = orbits_on_ksubsets(&h, k)?;
    let sets = match chosen {
        Some(z) => vec![z],
        None => orbits.representatives(),
    };
    code.check_cap()?;
    progress(format!("enumerating {} codewords for {} Jacobi polynomial(s)", code.size(), sets.len()));
    let polys = jacobi_many(&code, &sets)?;
    let orbit_size = |z: PointSet| orbits.orbit_index(z).map(|i| orbits.orbits()[i].len());
    Ok(Report::ok(match format {
        Format::Json => to_json(&json!({
            "p": p, "m": m, "q": code.q(),
            "entries": sets.iter().zip(&polys).map(|(&z, j)| json!({
                "T": points_json(z),
                "orbit_size": orbit_size(z),
                "polynomial": poly_json(j),
            })).collect::<Vec<_>>(),
        })),
        _ if chosen.is_some() => polys[0].to_text(),
        _ => sets
            .iter()
            .zip(&polys)
            .map(|(&z, j)| {
                format!(
                    "# T = {}: H-orbit of {} sets\n{}",
                    set_label(z),
                    orbit_size(z).unwrap_or(0),
                    j.to_text()
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }))
}

fn jacobi_sum(s: &Session, args: &CodeArgs, set: &SetArgs, direct: bool) -> CliResult<Report> {
    let format = s.format("jacobi-sum", &[Format::Text, Format::Json])?;
    let (code, p, m) = s.code(args)?;
    let z = chosen_set(set, p)?
        .ok_or_else(|| CliError::Config("jacobi-sum needs --rep-of or --set".into()))?;
    let sigma = conjugating_permutation(p, m)?;
    let route = if direct { SumRoute::Direct } else { SumRoute::Translated };
    code.check_cap()?;
    progress(format!("summing Jacobi polynomials of {m} conjugate codes at {}", set_label(z)));
    let sum = jacobi_conjugate_sum(&code, &sigma, m as usize, z, route)?;
    Ok(Report::ok(match format {
        Format::Json => to_json(&json!({
            "p": p, "m": m, "q": code.q(),
            "T": points_json(z),
            "route": if direct { "direct" } else { "translated" },
            "polynomial": poly_json(&sum),
        })),
        _ => sum.to_text(),
    }))
}

fn basis_json(b: &HarmonicBasis) -> Value {
    json!({
        "degree": b.k,
        "v": b.v,
        "dimension": b.dimension(),
        "group_order": b.group_order,
        "representatives": b.representatives.iter().map(|&z| points_json(z)).collect::<Vec<_>>(),
        "orbit_values": b.orbit_values.iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "functions": b.functions.iter().map(|f| f.iter().map(|(z, x)| json!({
            "points": points_json(z),
            "value": format_rational(x),
        })).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn basis_header(b: &HarmonicBasis) -> String {
    let reps: Vec<String> = b.representatives.iter().map(|&z| set_label(z)).collect();
    format!(
        "# degree {}, dimension {}, |H| = {}\n# orbit representatives: {}\n",
        b.k,
        b.dimension(),
        b.group_order.unwrap_or(0),
        reps.join(" ")
    )
}

fn harmonic_basis(s: &Session, args: &GroupArgs, t: usize) -> CliResult<Report> {
    let format = s.format("harmonic-basis", &[Format::Text, Format::Json])?;
    let (p, m) = require_group(args)?;
    let (h, _) = affine_group(p, m)?;
    let basis = invariant_harmonic_basis(Symmetry::Group(&h), t)?;
    Ok(Report::ok(match format {
        Format::Json => to_json(&basis_json(&basis)),
        _ => {
            let mut out = basis_header(&basis);
            for (i, f) in basis.functions.iter().enumerate() {
                let _ = write!(
                    out,
                    "\n# f{i}: orbit values {}\n{}",
                    orbit_values_label(&basis.orbit_values[i]),
                    f.to_text()
                );
            }
            out
        }
    }))
}

fn hwe(
    s: &Session,
    args: &CodeArgs,
    t: usize,
    function: Option<&std::path::Path>,
    conjugate_sum: bool,
) -> CliResult<Report> {
    let format = s.format("hwe", &[Format::Text, Format::Json])?;
    let (code, p, m) = s.code(args)?;
    let (functions, basis) = match function {
        Some(path) => {
            let f = SubsetFunction::from_text(&read_file(path)?)?;
            if f.v() != p as usize {
                return Err(CliError::Config(format!(
                    "function is on {} points, the code has length {p}",
                    f.v()
                )));
            }
            (vec![f], None)
        }
        None => {
            let (h, _) = affine_group(p, m)?;
            let basis = invariant_harmonic_basis(Symmetry::Group(&h), t)?;
            (basis.functions.clone(), Some(basis))
        }
    };
    code.check_cap()?;
    progress(format!("enumerating {} codewords for {} function(s)", code.size(), functions.len()));
    let enumerators = if conjugate_sum {
        let sigma = conjugating_permutation(p, m)?;
        conjugate_vanishing_check(&code, &sigma, m as usize, &functions, SumRoute::Translated)?.sums
    } else {
        harmonic_weight_enumerators(&code, &functions)?
    };
    Ok(Report::ok(match format {
        Format::Json => to_json(&json!({
            "p": p, "m": m, "q": code.q(),
            "degree": functions.first().map(SubsetFunction::k),
            "conjugate_sum": conjugate_sum,
            "enumerators": enumerators.iter().map(enumerator_json).collect::<Vec<_>>(),
        })),
        _ => match &basis {
            None => enumerators[0].to_text(),
            Some(b) => {
                let mut out = basis_header(b);
                for (i, e) in enumerators.iter().enumerate() {
                    let _ = write!(
                        out,
                        "\n# f{i}: orbit values {}\n{}",
                        orbit_values_label(&b.orbit_values[i]),
                        e.to_text()
                    );
                }
                out
            }
        },
    }))
}

fn independence_item(report: &IndependenceReport) -> StructureCheck {
    let detail = match (report.witness, report.orbit_constancy) {
        (_, Some(false)) => "H does not preserve the code, orbit representatives are not enough".into(),
        (Some((a, b)), _) => format!("sums differ at {} and {}", set_label(a), set_label(b)),
        (None, _) => format!("conjugate sum identical on {} sets", report.checked),
    };
    StructureCheck {
        name: "jacobi-independence",
        passed: report.independent,
        detail,
    }
}

fn vanishing_item(
    code: &CyclicCode,
    h: &PermGroup,
    sigma: &Permutation,
    m: u32,
    t: usize,
) -> CliResult<StructureCheck> {
    let mut parts = Vec::new();
    let mut residual = None;
    for k in 1..=t {
        let basis = invariant_harmonic_basis(Symmetry::Group(h), k)?;
        let report = conjugate_vanishing_check(code, sigma, m as usize, &basis.functions, SumRoute::Translated)?;
        parts.push(format!("degree {k}: {} function(s)", basis.dimension()));
        if residual.is_none() {
            residual = report.residual.map(|(j, w, x)| (k, j, w, x));
        }
    }
    let detail = match &residual {
        None => format!("{}; all conjugate sums are zero", parts.join(", ")),
        Some((k, j, w, x)) => format!(
            "degree {k} function {j}: coefficient {} at weight {w}",
            format_rational(x)
        ),
    };
    Ok(StructureCheck {
        name: "harmonic-vanishing",
        passed: residual.is_none(),
        detail,
    })
}

/// Counting, Jacobi and harmonic verdicts for every nonempty shell union.
fn agreement_item(
    index: &ShellIndex,
    sigma: &Permutation,
    h: &PermGroup,
    m: u32,
    t: usize,
    independence: &IndependenceReport,
) -> CliResult<StructureCheck> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for ell in t..=index.len() {
        let blocks = conjugate_union(index.len(), ell, index.supports(ell), sigma, m as usize);
        if blocks.is_empty() {
            continue;
        }
        checked += 1;
        let counted = check_design(&blocks, t)?;
        let delsarte = delsarte_design_check(&blocks, t, Symmetry::Group(h))?;
        let from_jacobi = lambda_from_jacobi(&independence.reference, ell, t, independence).ok();
        let agree = counted.is_design == delsarte.is_design
            && (!counted.is_design || counted.lambda == from_jacobi);
        if !agree {
            bad.push(format!(
                "ℓ = {ell}: counted {:?}, Jacobi {:?}, harmonic {}",
                counted.lambda, from_jacobi, delsarte.is_design
            ));
        }
    }
    Ok(StructureCheck {
        name: "method-agreement",
        passed: bad.is_empty() && checked > 0,
        detail: if bad.is_empty() {
            format!("counting, Jacobi and harmonic checks agree on {checked} shell unions")
        } else {
            bad.join("; ")
        },
    })
}

fn one_design_item(index: &ShellIndex) -> CliResult<StructureCheck> {
    let mut bad = Vec::new();
    let mut checked = 0;
    for ell in 1..=index.len() {
        let shell = index.shell(ell);
        if shell.is_empty() {
            continue;
        }
        checked += 1;
        if !check_design(&shell, 1)?.is_design {
            bad.push(ell.to_string());
        }
    }
    Ok(StructureCheck {
        name: "one-designs",
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all {checked} nonempty shells are 1-designs")
        } else {
            format!("not 1-designs at ℓ = {}", bad.join(", "))
        },
    })
}

fn verify_theorem(
    s: &Session,
    args: &CodeArgs,
    t: usize,
    samples: usize,
    all_sets: bool,
) -> CliResult<Report> {
    let format = s.format("verify-theorem", &[Format::Text, Format::Json])?;
    let (code, p, m) = s.code(args)?;
    if t == 0 || t > p as usize {
        return Err(CliError::Config(format!("t must be in 1..={p}")));
    }
    let (h, _) = affine_group(p, m)?;
    let sigma = conjugating_permutation(p, m)?;

    let mut checks = structure_checks(&code, p, m, samples)?;
    code.check_cap()?;
    progress("checking that the conjugate Jacobi sum does not depend on T");
    let selection = if all_sets { TSelection::All } else { TSelection::OrbitRepresentatives(&h) };
    let independence = independence_check(&code, &sigma, m as usize, t, selection)?;
    checks.push(independence_item(&independence));
    progress("summing harmonic weight enumerators over the conjugate codes");
    checks.push(vanishing_item(&code, &h, &sigma, m, t)?);
    let index = s.shell_index(&code)?;
    checks.push(agreement_item(&index, &sigma, &h, m, t, &independence)?);
    checks.push(one_design_item(&index)?);

    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} failed: {}", c.name, c.detail))
        .collect();
    let data = match format {
        Format::Json => to_json(&json!({
            "p": p, "m": m, "q": code.q(), "t": t,
            "all_passed": failures.is_empty(),
            "checks": checks.iter().map(|c| json!({
                "name": c.name, "passed": c.passed, "detail": c.detail,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(out, "{} {:<20} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let _ = writeln!(out, "{} of {} checks passed", checks.len() - failures.len(), checks.len());
            out
        }
    };
    Ok(Report::checked(data, failures))
}

fn reproduce_table(s: &Session, inst: Instance) -> CliResult<Report> {
    let format = s.format("reproduce", &[Format::Csv, Format::Text, Format::Json])?;
    let t = 2;
    let code = build_code(inst.p, inst.m, inst.q)?.with_cap(s.cap);
    let (h, _) = affine_group(inst.p, inst.m)?;
    let sigma = conjugating_permutation(inst.p, inst.m)?;
    let index = s.shell_index(&code)?;
    let rows = table_from_index(&index, &sigma, inst.m as usize, inst.ell_range(), t)?;

    progress("cross-checking λ against the conjugate Jacobi sum");
    let independence =
        independence_check(&code, &sigma, inst.m as usize, t, TSelection::OrbitRepresentatives(&h))?;
    let jacobi_lambda = |ell| lambda_from_jacobi(&independence.reference, ell, t, &independence).ok();

    let mut failures = Vec::new();
    for r in &rows {
        let published = inst.lambda(r.ell);
        if !r.is_design {
            failures.push(format!("ℓ = {}: the shell union is not a {t}-design", r.ell));
        } else if r.lambda != published {
            failures.push(format!(
                "ℓ = {}: λ = {} (Jacobi: {}), published {}",
                r.ell,
                r.lambda.map_or("-".into(), |x| x.to_string()),
                jacobi_lambda(r.ell).map_or("-".into(), |x| x.to_string()),
                published.map_or("-".into(), |x| x.to_string())
            ));
        }
    }
    let data = match format {
        Format::Csv => table_to_csv(&rows),
        Format::Json => to_json(&json!({
            "p": inst.p, "m": inst.m, "q": inst.q, "t": t,
            "rows": rows.iter().map(|r| json!({
                "ell": r.ell,
                "lambda": r.lambda,
                "blocks": r.block_count,
                "is_design": r.is_design,
                "jacobi_lambda": jacobi_lambda(r.ell),
                "published_lambda": inst.lambda(r.ell),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!(
                "{:>4} {:>10} {:>10} {:>6} {:>10} {:>10}\n",
                "ell", "lambda", "blocks", "design", "jacobi", "published"
            );
            let show = |x: Option<u64>| x.map_or("-".into(), |x| x.to_string());
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>4} {:>10} {:>10} {:>6} {:>10} {:>10}",
                    r.ell,
                    show(r.lambda),
                    r.block_count,
                    r.is_design,
                    show(jacobi_lambda(r.ell)),
                    show(inst.lambda(r.ell))
                );
            }
            out
        }
    };
    Ok(Report::checked(data, failures))
}

fn reproduce_example(s: &Session, inst: Instance) -> CliResult<Report> {
    let format = s.format("reproduce", &[Format::Text, Format::Json])?;
    let code = build_code(inst.p, inst.m, inst.q)?.with_cap(s.cap);
    let (h, _) = affine_group(inst.p, inst.m)?;
    let sigma = conjugating_permutation(inst.p, inst.m)?;
    let v = inst.p as usize;
    let reps: Vec<PointSet> = inst
        .representatives
        .iter()
        .map(|pair| PointSet::from_points(v, pair))
        .collect::<prdesign::Result<_>>()?;

    code.check_cap()?;
    progress(format!("enumerating {} codewords for the Jacobi polynomials", code.size()));
    let polys = jacobi_many(&code, &reps)?;
    let published = inst.jacobi_polynomials()?;
    let labelled: Vec<bool> = polys.iter().zip(&published).map(|(a, b)| a == b).collect();
    let mut ours: Vec<String> = polys.iter().map(JacobiPolynomial::to_text).collect();
    let mut theirs: Vec<String> = published.iter().map(JacobiPolynomial::to_text).collect();
    ours.sort();
    theirs.sort();
    let multiset_match = ours == theirs;

    let basis = invariant_harmonic_basis(Symmetry::Group(&h), 2)?;
    progress("computing harmonic weight enumerators and their conjugate sums");
    let enumerators = harmonic_weight_enumerators(&code, &basis.functions)?;
    let vanishing =
        conjugate_vanishing_check(&code, &sigma, inst.m as usize, &basis.functions, SumRoute::Translated)?;
    let published_hwe = inst.harmonic_enumerators()?;
    let in_span_flags: Vec<bool> = published_hwe.iter().map(|e| in_span(&enumerators, e).is_some()).collect();
    let published_rank = span_rank(&published_hwe);
    // The p = 13 comparison is diagnostic only: its printed vectors span
    // more dimensions than the invariant space has.
    let span_is_gate = inst.p == 31;

    let mut failures = Vec::new();
    if !multiset_match {
        failures.push("computed Jacobi polynomials differ from the published ones".to_string());
    }
    if !vanishing.vanishes {
        failures.push("a conjugate harmonic enumerator sum is nonzero".to_string());
    }
    if span_is_gate && in_span_flags.iter().any(|&b| !b) {
        failures.push("a published harmonic enumerator is outside the computed span".to_string());
    }

    let data = match format {
        Format::Json => to_json(&json!({
            "p": inst.p, "m": inst.m, "q": inst.q,
            "jacobi": reps.iter().zip(&polys).zip(&labelled).map(|((&z, j), &same)| json!({
                "T": points_json(z),
                "polynomial": poly_json(j),
                "matches_published": same,
            })).collect::<Vec<_>>(),
            "jacobi_multiset_matches": multiset_match,
            "harmonic": {
                "degree": 2,
                "dimension": basis.dimension(),
                "published_dimension": inst.stated_invariant_dimension(),
                "orbit_values": basis.orbit_values.iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "enumerators": enumerators.iter().map(enumerator_json).collect::<Vec<_>>(),
                "conjugate_sums_vanish": vanishing.vanishes,
                "published_in_span": in_span_flags,
                "published_rank": published_rank,
                "span_check_is_report_only": !span_is_gate,
            },
        })),
        _ => {
            let mut out = format!(
                "# PR_{}^{}({}): Jacobi polynomials at the published representatives\n",
                inst.q, inst.m, inst.p
            );
            for (i, ((&z, j), &same)) in reps.iter().zip(&polys).zip(&labelled).enumerate() {
                let verdict = if same { "matches" } else { "DIFFERS from" };
                let _ = write!(out, "\n# T = {}: {verdict} published ({})\n{}", set_label(z), roman(i), j.to_text());
            }
            let _ = write!(
                out,
                "\n# invariant harmonic functions of degree 2: dimension {} (published: {})\n",
                basis.dimension(),
                inst.stated_invariant_dimension()
            );
            for (i, e) in enumerators.iter().enumerate() {
                let _ = write!(
                    out,
                    "\n# f{i}: orbit values {}\n{}",
                    orbit_values_label(&basis.orbit_values[i]),
                    e.to_text()
                );
            }
            let _ = writeln!(
                out,
                "\n# conjugate sums vanish: {}",
                if vanishing.vanishes { "yes" } else { "no" }
            );
            for (i, &inside) in in_span_flags.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "# published enumerator ({}): {}{}",
                    roman(i),
                    if inside { "in the span of the computed enumerators" } else { "NOT in the span" },
                    if span_is_gate { "" } else { " (report only)" }
                );
            }
            let _ = writeln!(out, "# published enumerators have rank {published_rank}");
            out
        }
    };
    Ok(Report::checked(data, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..26").unwrap(), 5..=26);
        assert_eq!(parse_range("5..=26").unwrap(), 5..=26);
        assert_eq!(parse_range("4-12").unwrap(), 4..=12);
        for bad in ["", "5", "7..3", "a..b", "1..2..3"] {
            assert!(parse_range(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn points() {
        assert_eq!(parse_points("6,12", 13).unwrap().to_vec(), vec![6, 12]);
        assert_eq!(parse_points(" 3 , 1 ", 13).unwrap().to_vec(), vec![1, 3]);
        assert!(parse_points("", 13).unwrap().is_empty());
        for bad in ["13", "1,1", "x", "1,"] {
            assert!(parse_points(bad, 13).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn polynomial_labels() {
        assert_eq!(poly_label(&[1, 0, 1, 1]), "x^3 + x^2 + 1");
        assert_eq!(poly_label(&[4, 1, 3]), "3x^2 + x + 4");
        assert_eq!(poly_label(&[]), "0");
    }
}
