//! Line-oriented text forms for fields, subspaces, codes, maps and sweep
//! reports.
//!
//! Field descriptor: `GF(p^d)[g]^n[h]`, with `g` (over `F_p`) and `h` (over
//! `K`, each coefficient an element index of `K`) listed low to high.
//! Omitted brackets select the default moduli; `^n` may be omitted for `n = 1`.
//!
//! Code file:
//!
//! ```text
//! # comments run to end of line
//! field GF(2)^2[1,1,1]
//! k 2
//! m 3
//! generator
//! [1,0] [1,0] [0,0]
//! [0,1] 0 1
//! ```
//!
//! Each element of `L` is either a bracketed list of its `n` coordinates over
//! `K` (element indices of `K`) or a single integer: its index in the
//! enumeration of `L`, i.e. `Σ c_j q^j`. A map file is a code file followed by
//! an `image` line and `k` further rows.

use crate::codes::{GenMatrix, LMatrix};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldK, FieldL, KElem, LElem};
use crate::isometry::CodeMap;
use crate::kspace::{span, KSubspace};
use crate::sweep::SweepReport;

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical descriptor; moduli are always written out.
pub fn field_descriptor(field: &FieldL) -> String {
    let k = field.subfield();
    let head = if k.degree() == 1 {
        format!("GF({})", k.p())
    } else {
        format!("GF({}^{})[{}]", k.p(), k.degree(), join(k.modulus()))
    };
    format!("{head}^{}[{}]", field.degree(), join(field.modulus().iter().map(|c| c.index())))
}

fn parse_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    let inner = s.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| format!("bad integer '{}'", t.trim())))
        .collect()
}

/// Parses a field descriptor such as `GF(2)^2`, `GF(3^2)^2[2,2,1]` or
/// `GF(2^2)[1,1,1]^3`.
pub fn parse_field(s: &str) -> Result<FieldL> {
    parse_field_at(s, 1, 1)
}

fn parse_field_at(s: &str, line: usize, col0: usize) -> Result<FieldL> {
    let err = |off: usize, msg: String| perr(line, col0 + off, msg);
    let s_trim = s.trim();
    let rest = s_trim.strip_prefix("GF(").ok_or_else(|| err(0, "field descriptor must start with 'GF('".into()))?;
    let close = rest.find(')').ok_or_else(|| err(3, "missing ')'".into()))?;
    let order = &rest[..close];
    let bad_order = || err(3, format!("bad field order '{order}'"));
    let (p, d) = match order.split_once('^') {
        Some((p, d)) => match (p.trim().parse::<u64>(), d.trim().parse::<usize>()) {
            (Ok(p), Ok(d)) => (p, d),
            _ => return Err(bad_order()),
        },
        // GF(q) with q a prime power
        None => {
            let q: u64 = order.trim().parse().map_err(|_| bad_order())?;
            let k = FieldK::with_order(q).map_err(|e| err(3, e.to_string()))?;
            (k.p() as u64, k.degree())
        }
    };
    let mut pos = 3 + close + 1;
    let mut rest = &rest[close + 1..];
    let take_bracket = |rest: &mut &str, pos: &mut usize| -> Result<Option<Vec<u32>>> {
        if let Some(r) = rest.strip_prefix('[') {
            let end = r.find(']').ok_or_else(|| err(*pos, "missing ']'".into()))?;
            let list = parse_list(&r[..end]).map_err(|m| err(*pos + 1, m))?;
            *pos += end + 2;
            *rest = &r[end + 1..];
            Ok(Some(list))
        } else {
            Ok(None)
        }
    };
    let g = take_bracket(&mut rest, &mut pos)?;
    let mut n = 1;
    if let Some(r) = rest.strip_prefix('^') {
        let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
        n = digits.parse().map_err(|_| err(pos + 1, "expected extension degree after '^'".into()))?;
        pos += 1 + digits.len();
        rest = &r[digits.len()..];
    }
    let h = take_bracket(&mut rest, &mut pos)?;
    if !rest.is_empty() {
        return Err(err(pos, format!("unexpected trailing text '{rest}'")));
    }
    let k = FieldK::new(p, d, g).map_err(|e| err(0, e.to_string()))?;
    FieldL::new(k, n, h.map(|h| h.into_iter().map(KElem).collect())).map_err(|e| err(0, e.to_string()))
}

/// `[(1,0,1),(0,1,0)]`; the zero subspace is `[]`.
pub fn format_subspace(s: &KSubspace) -> String {
    let rows: Vec<String> = s
        .basis_rows()
        .iter()
        .map(|r| format!("({})", join(r.iter().map(|c| c.index()))))
        .collect();
    format!("[{}]", rows.join(","))
}

/// Parses the subspace text form in `K^k` and returns the canonical subspace.
pub fn parse_subspace(field: &FieldK, k: usize, s: &str) -> Result<KSubspace> {
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| perr(1, 1, "subspace must be enclosed in [ ]"))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let r = rest.strip_prefix('(').ok_or_else(|| perr(1, 1, "expected '('"))?;
        let end = r.find(')').ok_or_else(|| perr(1, 1, "missing ')'"))?;
        let vals = parse_list(&r[..end]).map_err(|m| perr(1, 1, m))?;
        if vals.len() != k || vals.iter().any(|&v| v >= field.order()) {
            return Err(perr(1, 1, format!("row must hold {k} elements of K")));
        }
        rows.push(vals.into_iter().map(KElem).collect());
        rest = r[end + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    span(field, k, &rows)
}

pub fn format_lelem(field: &FieldL, a: &LElem) -> String {
    if field.degree() == 1 {
        a.coords()[0].index().to_string()
    } else {
        format!("[{}]", join(a.coords().iter().map(|c| c.index())))
    }
}

fn parse_lelem(field: &FieldL, tok: &str, line: usize, col: usize) -> Result<LElem> {
    let q = field.subfield().order();
    if let Some(inner) = tok.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let vals = parse_list(inner).map_err(|m| perr(line, col, m))?;
        if vals.len() != field.degree() {
            return Err(perr(line, col, format!("expected {} coordinates", field.degree())));
        }
        if let Some(bad) = vals.iter().find(|&&v| v >= q) {
            return Err(perr(line, col, format!("coordinate {bad} is not an element of K (|K| = {q})")));
        }
        return field.uncoords(&vals.into_iter().map(KElem).collect::<Vec<_>>());
    }
    let idx: u64 = tok.parse().map_err(|_| perr(line, col, format!("bad element '{tok}'")))?;
    if idx >= field.order() {
        return Err(perr(line, col, format!("element index {idx} out of range (|L| = {})", field.order())));
    }
    Ok(field.from_index(idx))
}

/// Splits a row into tokens, keeping bracketed groups whole; yields 1-based
/// columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if bytes[i] == b'[' {
            while i < bytes.len() && bytes[i] != b']' {
                i += 1;
            }
            i = (i + 1).min(bytes.len());
        } else {
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
        }
        out.push((start + 1, &s[start..i]));
    }
    out
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim_end()))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        Self { lines, pos: 0 }
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let l = self
            .peek()
            .ok_or_else(|| perr(self.last_line(), 1, format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(l)
    }

    /// A `key value` line; returns the value and its column.
    fn key(&mut self, key: &str) -> Result<(usize, usize, &'a str)> {
        let (line, text) = self.next(key)?;
        let indent = text.len() - text.trim_start().len();
        let t = text.trim_start();
        match t.strip_prefix(key) {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
                let val = rest.trim();
                let col = indent + key.len() + (rest.len() - rest.trim_start().len()) + 1;
                Ok((line, col, val))
            }
            _ => Err(perr(line, indent + 1, format!("expected '{key}'"))),
        }
    }

    fn int(&mut self, key: &str) -> Result<u64> {
        let (line, col, v) = self.key(key)?;
        v.parse().map_err(|_| perr(line, col, format!("'{key}' needs a nonnegative integer, got '{v}'")))
    }

    fn rows(&mut self, field: &FieldL, k: usize, m: usize) -> Result<Vec<Vec<LElem>>> {
        (0..k)
            .map(|_| {
                let (line, text) = self.next("a matrix row")?;
                let toks = tokens(text);
                if toks.len() != m {
                    return Err(perr(line, 1, format!("row has {} entries, expected {m}", toks.len())));
                }
                toks.into_iter().map(|(col, t)| parse_lelem(field, t, line, col)).collect()
            })
            .collect()
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Some((line, _)) => Err(perr(line, 1, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn format_rows(out: &mut String, a: &LMatrix) {
    for r in 0..a.k() {
        let row: Vec<String> = a.row(r).iter().map(|e| format_lelem(a.field(), e)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

fn format_code_body(out: &mut String, a: &GenMatrix) {
    out.push_str(&format!("k {}\nm {}\ngenerator\n", a.k(), a.m()));
    format_rows(out, a);
}

pub fn format_code(a: &GenMatrix) -> String {
    let mut out = format!("field {}\n", field_descriptor(a.field()));
    format_code_body(&mut out, a);
    out
}

pub fn format_map(f: &CodeMap) -> String {
    let mut out = format_code(f.source());
    out.push_str("image\n");
    format_rows(&mut out, f.image());
    out
}

fn read_field(lines: &mut Lines) -> Result<FieldL> {
    let (line, col, v) = lines.key("field")?;
    parse_field_at(v, line, col)
}

fn read_code_body(lines: &mut Lines, field: &FieldL) -> Result<GenMatrix> {
    let k = lines.int("k")? as usize;
    let (mline, mcol, _) = lines.peek().map(|(l, _)| (l, 1, ())).unwrap_or((1, 1, ()));
    let m = lines.int("m")? as usize;
    if m == 0 {
        return Err(perr(mline, mcol, "code length m must be positive"));
    }
    let (gline, _, _) = lines.key("generator")?;
    let rows = lines.rows(field, k, m)?;
    GenMatrix::new(field, m, rows).map_err(|e| perr(gline, 1, e.to_string()))
}

fn read_image(lines: &mut Lines, source: GenMatrix) -> Result<CodeMap> {
    let (line, _, _) = lines.key("image")?;
    let rows = lines.rows(source.field(), source.k(), source.m())?;
    let image = LMatrix::new(source.field(), source.m(), rows)?;
    CodeMap::new(source, image).map_err(|e| perr(line, 1, e.to_string()))
}

pub fn parse_code(text: &str) -> Result<GenMatrix> {
    let mut lines = Lines::new(text);
    let field = read_field(&mut lines)?;
    let code = read_code_body(&mut lines, &field)?;
    lines.expect_end()?;
    Ok(code)
}

pub fn parse_map(text: &str) -> Result<CodeMap> {
    let mut lines = Lines::new(text);
    let field = read_field(&mut lines)?;
    let code = read_code_body(&mut lines, &field)?;
    let map = read_image(&mut lines, code)?;
    lines.expect_end()?;
    Ok(map)
}

/// Machine-readable sweep report.
pub fn format_report(r: &SweepReport) -> String {
    let mut out = String::from("sweep-report\n");
    out.push_str(&format!("field {}\n", field_descriptor(&r.field)));
    out.push_str(&format!("m {}\nmax_k {}\ndedup {}\n", r.m, r.max_k, if r.dedup { "yes" } else { "no" }));
    out.push_str(&format!(
        "codes {}\nisometries {}\nextendible {}\nunextendible {}\noracle_checked {}\nwitnesses {}\n",
        r.codes,
        r.isometries,
        r.extendible,
        r.unextendible,
        r.oracle_checked,
        r.witnesses.len()
    ));
    for w in &r.witnesses {
        out.push_str("witness\n");
        format_code_body(&mut out, w.source());
        out.push_str("image\n");
        format_rows(&mut out, w.image());
    }
    out
}

pub fn parse_report(text: &str) -> Result<SweepReport> {
    let mut lines = Lines::new(text);
    lines.key("sweep-report")?;
    let field = read_field(&mut lines)?;
    let m = lines.int("m")? as usize;
    let max_k = lines.int("max_k")? as usize;
    let (line, col, dedup) = lines.key("dedup")?;
    let dedup = match dedup {
        "yes" => true,
        "no" => false,
        other => return Err(perr(line, col, format!("dedup must be yes or no, got '{other}'"))),
    };
    let codes = lines.int("codes")?;
    let isometries = lines.int("isometries")?;
    let extendible = lines.int("extendible")?;
    let unextendible = lines.int("unextendible")?;
    let oracle_checked = lines.int("oracle_checked")?;
    let count = lines.int("witnesses")?;
    let mut witnesses = Vec::with_capacity(count as usize);
    for _ in 0..count {
        lines.key("witness")?;
        let code = read_code_body(&mut lines, &field)?;
        witnesses.push(read_image(&mut lines, code)?);
    }
    lines.expect_end()?;
    Ok(SweepReport { field, m, max_k, dedup, codes, isometries, extendible, unextendible, oracle_checked, witnesses })
}
