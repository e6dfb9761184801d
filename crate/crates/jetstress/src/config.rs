//! Text formats for polynomials, boxes, sections and stresses.
//!
//! Polynomial: `+`-separated terms `coef * X1^e1 X2^e2 ...`, coefficient
//! an integer, ratio `p/q`, or decimal. Box: `[a1,b1]x[a2,b2]x...`.
//!
//! Section file:
//! ```text
//! dim=2 fiber=2 domain=[0,1]x[0,1]
//! w[1] = X1^2 + -1/2 * X2
//! w[2] = 0
//! ```
//!
//! Stress file (simple): header also carries `order=r`, then lines
//! `S[alpha] = ...` and `S[alpha][i,j] = ...` with comma-separated
//! non-decreasing derivative indices. Non-holonomic stress lines carry a
//! binary array index: `S[alpha]{p=110}[2,1] = ...`. Lines starting with
//! `#` are comments; missing slots are zero.

use crate::error::{Error, Result};
use crate::fields::{BoxDomain, Polynomial, SectionField};
use crate::multiindex::{BinaryNodeIndex, MultiIndex, NonDecreasingIndex};
use crate::scalar::Scalar;
use crate::stress::{NonHolonomicStressDensity, StressDensity};

/// Splits a polynomial expression into signed terms. A `+`/`-` separates
/// terms only when it follows a digit; otherwise it signs a coefficient.
fn split_terms(text: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut prev_digit = false;
    for c in text.chars() {
        if (c == '+' || c == '-') && prev_digit {
            terms.push(cur.clone());
            cur.clear();
            if c == '-' {
                cur.push('-');
            }
            prev_digit = false;
            continue;
        }
        if !c.is_whitespace() {
            prev_digit = c.is_ascii_digit();
        }
        cur.push(c);
    }
    terms.push(cur);
    terms
}

/// Parses one polynomial in `n` variables.
pub fn parse_polynomial<S: Scalar>(n: usize, text: &str) -> Result<Polynomial<S>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    let mut out = Polynomial::zero(n);
    for term in split_terms(text) {
        let term = term.trim();
        if term.is_empty() || term == "0" || term == "-0" {
            continue;
        }
        let mut coef = S::one();
        let body = match term.strip_prefix('-') {
            Some(rest) => {
                coef = -S::one();
                rest.trim_start()
            }
            None => term,
        };
        let tokens: Vec<&str> = body
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(Error::parse(format!("empty term in `{text}`")));
        }
        let mut exps = vec![0u32; n];
        let mut start = 0;
        if !tokens[0].starts_with('X') {
            let c = S::parse(tokens[0])
                .ok_or_else(|| Error::parse(format!("invalid coefficient `{}`", tokens[0])))?;
            coef = coef * c;
            start = 1;
        }
        for tok in &tokens[start..] {
            let (var, exp) = match tok.split_once('^') {
                Some((v, e)) => {
                    let exp: u32 = e
                        .parse()
                        .map_err(|_| Error::parse(format!("invalid exponent in `{tok}`")))?;
                    (v, exp)
                }
                None => (*tok, 1),
            };
            let axis: usize = var
                .strip_prefix('X')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::parse(format!("invalid factor `{tok}`")))?;
            if axis == 0 || axis > n {
                return Err(Error::parse(format!(
                    "variable X{axis} out of range for dimension {n}"
                )));
            }
            exps[axis - 1] += exp;
        }
        out = out.add(&Polynomial::monomial(n, exps, coef)?);
    }
    Ok(out)
}

/// Parses `[a1,b1]x[a2,b2]x...`.
pub fn parse_box<S: Scalar>(text: &str) -> Result<BoxDomain<S>> {
    let text = text.trim();
    let mut intervals = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start_matches('x').trim();
        if rest.is_empty() {
            break;
        }
        if !rest.starts_with('[') {
            return Err(Error::parse(format!("expected `[` in box `{text}`")));
        }
        let close = rest
            .find(']')
            .ok_or_else(|| Error::parse(format!("unterminated interval in `{text}`")))?;
        let inner = &rest[1..close];
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("interval `{inner}` needs a comma")))?;
        let a = S::parse(a).ok_or_else(|| Error::parse(format!("invalid bound `{a}`")))?;
        let b = S::parse(b).ok_or_else(|| Error::parse(format!("invalid bound `{b}`")))?;
        intervals.push((a, b));
        rest = &rest[close + 1..];
    }
    if intervals.is_empty() {
        return Err(Error::parse(format!("empty box `{text}`")));
    }
    BoxDomain::new(intervals)
}

struct Header<S: Scalar> {
    dim: usize,
    fiber: usize,
    order: Option<usize>,
    domain: BoxDomain<S>,
}

fn parse_header<S: Scalar>(line: &str) -> Result<Header<S>> {
    let mut dim = None;
    let mut fiber = None;
    let mut order = None;
    let mut domain = None;
    for field in line.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("header field `{field}` needs `=`")))?;
        match key {
            "dim" => dim = Some(value.parse().map_err(|_| Error::parse(format!("invalid dim `{value}`")))?),
            "fiber" => {
                fiber = Some(value.parse().map_err(|_| Error::parse(format!("invalid fiber `{value}`")))?)
            }
            "order" => {
                order = Some(value.parse().map_err(|_| Error::parse(format!("invalid order `{value}`")))?)
            }
            "domain" => domain = Some(parse_box::<S>(value)?),
            other => return Err(Error::parse(format!("unknown header key `{other}`"))),
        }
    }
    let dim = dim.ok_or_else(|| Error::parse("header needs dim="))?;
    let fiber = fiber.ok_or_else(|| Error::parse("header needs fiber="))?;
    let domain = domain.ok_or_else(|| Error::parse("header needs domain="))?;
    if domain.dimension() != dim {
        return Err(Error::parse(format!(
            "domain has dimension {}, header says {dim}",
            domain.dimension()
        )));
    }
    Ok(Header { dim, fiber, order, domain })
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a section file.
pub fn parse_section<S: Scalar>(text: &str) -> Result<SectionField<S>> {
    let mut lines = content_lines(text);
    let header = parse_header::<S>(
        lines
            .next()
            .ok_or_else(|| Error::parse("empty section file"))?,
    )?;
    let mut comps = vec![Polynomial::zero(header.dim); header.fiber];
    for line in lines {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("line `{line}` needs `=`")))?;
        let lhs = lhs.trim();
        let alpha: usize = lhs
            .strip_prefix("w[")
            .and_then(|r| r.strip_suffix(']'))
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::parse(format!("expected `w[alpha]`, got `{lhs}`")))?;
        if alpha == 0 || alpha > header.fiber {
            return Err(Error::parse(format!(
                "component {alpha} out of range 1..={}",
                header.fiber
            )));
        }
        comps[alpha - 1] = parse_polynomial(header.dim, rhs)?;
    }
    SectionField::new(header.domain, comps)
}

/// A parsed stress configuration.
pub enum StressConfig<S: Scalar> {
    Simple(StressDensity<S>),
    NonHolonomic(NonHolonomicStressDensity<S>),
}

/// Parses a stress file, detecting the non-holonomic variant by the
/// presence of `{p=...}` array selectors.
pub fn parse_stress<S: Scalar>(text: &str) -> Result<StressConfig<S>> {
    let mut lines = content_lines(text);
    let header = parse_header::<S>(
        lines
            .next()
            .ok_or_else(|| Error::parse("empty stress file"))?,
    )?;
    let order = header
        .order
        .ok_or_else(|| Error::parse("stress header needs order="))?;
    let body: Vec<&str> = lines.collect();
    let nonholonomic = body.iter().any(|l| l.contains("{p="));
    if nonholonomic {
        let mut stress = NonHolonomicStressDensity::zero(order, header.fiber, header.domain);
        for line in body {
            let (lhs, rhs) = split_stress_assignment(line)
                .ok_or_else(|| Error::parse(format!("line `{line}` needs `=`")))?;
            let (alpha, node, idx) = parse_nh_slot(lhs, header.dim)?;
            stress.set(node, idx, alpha, parse_polynomial(header.dim, rhs)?)?;
        }
        Ok(StressConfig::NonHolonomic(stress))
    } else {
        let mut stress = StressDensity::zero(order, header.fiber, header.domain);
        for line in body {
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(format!("line `{line}` needs `=`")))?;
            let (alpha, idx) = parse_simple_slot(lhs.trim(), header.dim)?;
            stress.set(alpha, idx, parse_polynomial(header.dim, rhs)?)?;
        }
        Ok(StressConfig::Simple(stress))
    }
}

/// Splits an assignment whose left side may contain `{p=...}` (so the
/// first `=` inside braces is not the assignment).
fn split_stress_assignment(line: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    for (k, c) in line.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            '=' if depth == 0 => return Some((line[..k].trim(), line[k + 1..].trim())),
            _ => {}
        }
    }
    None
}

fn parse_index_list(text: &str, dim: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|d| {
            let i: usize = d
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("invalid index `{d}`")))?;
            if i == 0 || i > dim {
                return Err(Error::parse(format!("index {i} out of range 1..={dim}")));
            }
            Ok(i)
        })
        .collect()
}

/// `S[alpha]` or `S[alpha][i,j,...]`.
fn parse_simple_slot(lhs: &str, dim: usize) -> Result<(usize, NonDecreasingIndex)> {
    let rest = lhs
        .strip_prefix("S[")
        .ok_or_else(|| Error::parse(format!("expected `S[alpha]...`, got `{lhs}`")))?;
    let close = rest
        .find(']')
        .ok_or_else(|| Error::parse(format!("unterminated `[` in `{lhs}`")))?;
    let alpha: usize = rest[..close]
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("invalid component in `{lhs}`")))?;
    let tail = rest[close + 1..].trim();
    let entries = if tail.is_empty() {
        Vec::new()
    } else {
        let inner = tail
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("expected `[indices]` in `{lhs}`")))?;
        parse_index_list(inner, dim)?
    };
    let mut sorted = entries;
    sorted.sort_unstable();
    Ok((alpha, NonDecreasingIndex::new(dim, sorted)?))
}

/// `S[alpha]{p=binary}[i,j,...]`.
fn parse_nh_slot(lhs: &str, dim: usize) -> Result<(usize, BinaryNodeIndex, MultiIndex)> {
    let rest = lhs
        .strip_prefix("S[")
        .ok_or_else(|| Error::parse(format!("expected `S[alpha]{{p=..}}`, got `{lhs}`")))?;
    let close = rest
        .find(']')
        .ok_or_else(|| Error::parse(format!("unterminated `[` in `{lhs}`")))?;
    let alpha: usize = rest[..close]
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("invalid component in `{lhs}`")))?;
    let tail = rest[close + 1..].trim();
    let brace = tail
        .strip_prefix("{p=")
        .ok_or_else(|| Error::parse(format!("expected `{{p=binary}}` in `{lhs}`")))?;
    let end = brace
        .find('}')
        .ok_or_else(|| Error::parse(format!("unterminated `{{` in `{lhs}`")))?;
    let node = BinaryNodeIndex::parse(brace[..end].trim())?;
    let index_part = brace[end + 1..].trim();
    let entries = if index_part.is_empty() {
        Vec::new()
    } else {
        let inner = index_part
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("expected `[indices]` in `{lhs}`")))?;
        parse_index_list(inner, dim)?
    };
    Ok((alpha, node, MultiIndex::new(dim, entries)?))
}

/// Parses a face selector `i:lo` or `i:hi`.
pub fn parse_face_selector(text: &str) -> Result<(usize, crate::fields::FaceEnd)> {
    let (axis, end) = text
        .split_once(':')
        .ok_or_else(|| Error::parse(format!("face selector `{text}` needs `axis:lo|hi`")))?;
    let axis: usize = axis
        .trim()
        .parse()
        .map_err(|_| Error::parse(format!("invalid face axis `{axis}`")))?;
    let end = match end.trim() {
        "lo" => crate::fields::FaceEnd::Lo,
        "hi" => crate::fields::FaceEnd::Hi,
        other => return Err(Error::parse(format!("face end `{other}` must be lo or hi"))),
    };
    Ok((axis, end))
}
