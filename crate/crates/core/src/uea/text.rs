//! Text format shared by PBW elements and polynomials on g*:
//! `coeff * F[a1]^k H[a1]^l E[a1+a2]^m + …`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::order::Mono;
use crate::error::{Error, Result};
use crate::rootsys::RootDatum;
use crate::scalar::GaussQ;

/// One parsed summand: a coefficient times an ordered product of factors,
/// each factor a linear combination of letters.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedTerm {
    pub coeff: GaussQ,
    pub factors: Vec<Vec<(usize, i64)>>,
}

fn parse_letter(rd: &RootDatum, tok: &str) -> Result<Option<(Vec<(usize, i64)>, u32)>> {
    let Some(kind) = tok.chars().next().filter(|c| matches!(c, 'E' | 'F' | 'H')) else {
        return Ok(None);
    };
    if !tok[1..].starts_with('[') {
        return Ok(None);
    }
    let close = tok.find(']').ok_or_else(|| Error::Parse(format!("unclosed bracket in `{tok}`")))?;
    let k = rd.parse_root(&tok[2..close])?;
    let power = match &tok[close + 1..] {
        "" => 1,
        rest => rest.strip_prefix('^').and_then(|p| p.parse::<u32>().ok()).ok_or_else(|| Error::Parse(format!("bad exponent in `{tok}`")))?,
    };
    let factor = match kind {
        'E' => vec![(rd.e_letter(k), 1)],
        'F' => vec![(rd.f_letter(k), 1)],
        _ => rd.coroot(k).iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (rd.h_letter(i), c)).collect(),
    };
    Ok(Some((factor, power)))
}

/// Tokenize and parse a sum of terms.
pub fn parse_terms(rd: &Arc<RootDatum>, s: &str) -> Result<Vec<ParsedTerm>> {
    let spaced = s.replace('*', " * ");
    let mut chunks: Vec<String> = Vec::new();
    for c in spaced.split_whitespace() {
        // `1/2 i` and `1/2+3/4 i` are printed with a space before `i`
        if c == "i" {
            if let Some(prev) = chunks.last_mut() {
                let is_operator = matches!(prev.as_str(), "+" | "-" | "*");
                let is_letter = prev.len() > 1 && prev[1..].starts_with('[');
                if !is_operator && !is_letter && !prev.ends_with('i') {
                    prev.push('i');
                    continue;
                }
            }
        }
        chunks.push(c.to_string());
    }
    let mut terms = Vec::new();
    let mut cur = ParsedTerm { coeff: GaussQ::int(1), factors: Vec::new() };
    let mut sign = GaussQ::int(1);
    let mut have_content = false;
    let mut expect_term = true;
    for c in &chunks {
        match c.as_str() {
            "+" | "-" => {
                if have_content {
                    cur.coeff = sign.clone() * cur.coeff.clone();
                    terms.push(std::mem::replace(&mut cur, ParsedTerm { coeff: GaussQ::int(1), factors: Vec::new() }));
                    sign = GaussQ::int(1);
                    have_content = false;
                } else if !expect_term {
                    return Err(Error::Parse(format!("dangling `{c}` in `{s}`")));
                }
                if c == "-" {
                    sign = -sign;
                }
                expect_term = true;
            }
            "*" => {
                if !have_content {
                    return Err(Error::Parse(format!("misplaced `*` in `{s}`")));
                }
            }
            tok => {
                if let Some((factor, power)) = parse_letter(rd, tok)? {
                    for _ in 0..power {
                        cur.factors.push(factor.clone());
                    }
                } else {
                    let body = tok.trim_start_matches('(').trim_end_matches(')');
                    let v: GaussQ = body.parse()?;
                    cur.coeff = cur.coeff.clone() * v;
                }
                have_content = true;
                expect_term = false;
            }
        }
    }
    if have_content {
        cur.coeff = sign * cur.coeff;
        terms.push(cur);
    } else if expect_term && !chunks.is_empty() {
        return Err(Error::Parse(format!("trailing operator in `{s}`")));
    }
    if chunks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    Ok(terms)
}

pub(crate) fn format_terms(rd: &RootDatum, terms: &BTreeMap<Mono, GaussQ>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (m, c) in terms {
        let mut letters: Vec<String> = Vec::new();
        let mut i = 0;
        while i < m.len() {
            let mut j = i;
            while j < m.len() && m[j] == m[i] {
                j += 1;
            }
            let name = rd.letter_name(m[i] as usize);
            letters.push(if j - i == 1 { name } else { format!("{name}^{}", j - i) });
            i = j;
        }
        let coeff = c.to_string();
        if letters.is_empty() {
            parts.push(coeff);
        } else {
            parts.push(format!("{coeff} * {}", letters.join(" ")));
        }
    }
    parts.join(" + ")
}
