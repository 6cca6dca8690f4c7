//! Text formats: expression grammars and structured files.
//!
//! Polynomials and derivations share one whitespace-insensitive term
//! grammar (`3/2 x1^2 x3 - x2`, `d1 + 3/2 x1^2 d3`); automorphisms are one
//! `xK -> polynomial` line per variable with identity lines omitted;
//! endomorphism files carry `n`/`d` headers followed by one
//! `index -> derivation` record per basis element. `#` starts a comment
//! anywhere. Everything produced by the `Display` implementations
//! re-parses to an equal value.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::automorphism::TriangularAutomorphism;
use crate::derivation::UniDerivation;
use crate::error::{Error, Result};
use crate::filtration::{BasisIndex, FiltrationBasis, TruncatedLieMap};
use crate::polynomial::{Monomial, Polynomial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokKind {
    Num(BigInt),
    Var(usize),
    Dee(usize),
    Ident(String),
    Plus,
    Minus,
    Caret,
    Slash,
    Arrow,
    Colon,
    Comma,
    Equals,
}

#[derive(Debug, Clone)]
struct Tok {
    kind: TokKind,
    line: usize,
    col: usize,
}

fn parse_err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        col,
        msg: msg.into(),
    })
}

/// Tokenizes one physical line; `#` cuts the rest of the line off.
fn lex_line(text: &str, line: usize, out: &mut Vec<Tok>) -> Result<()> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                out.push(Tok { kind: TokKind::Plus, line, col });
                i += 1;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Tok { kind: TokKind::Arrow, line, col });
                    i += 2;
                } else {
                    out.push(Tok { kind: TokKind::Minus, line, col });
                    i += 1;
                }
            }
            '^' => {
                out.push(Tok { kind: TokKind::Caret, line, col });
                i += 1;
            }
            '/' => {
                out.push(Tok { kind: TokKind::Slash, line, col });
                i += 1;
            }
            ':' => {
                out.push(Tok { kind: TokKind::Colon, line, col });
                i += 1;
            }
            ',' => {
                out.push(Tok { kind: TokKind::Comma, line, col });
                i += 1;
            }
            '=' => {
                out.push(Tok { kind: TokKind::Equals, line, col });
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let value: BigInt = digits.parse().expect("digit run is a valid integer");
                out.push(Tok { kind: TokKind::Num(value), line, col });
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let kind = match indexed_symbol(&word) {
                    Some(('x', k)) => {
                        if k == 0 {
                            return parse_err(line, col, "variable index must be at least 1");
                        }
                        TokKind::Var(k)
                    }
                    Some(('d', k)) => {
                        if k == 0 {
                            return parse_err(line, col, "derivation index must be at least 1");
                        }
                        TokKind::Dee(k)
                    }
                    _ => TokKind::Ident(word),
                };
                out.push(Tok { kind, line, col });
            }
            other => {
                return parse_err(line, col, format!("unexpected character '{other}'"));
            }
        }
    }
    Ok(())
}

/// Splits `x12` / `d3` style words into their letter and index.
fn indexed_symbol(word: &str) -> Option<(char, usize)> {
    let mut chars = word.chars();
    let head = chars.next()?;
    if head != 'x' && head != 'd' {
        return None;
    }
    let rest = chars.as_str();
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok().map(|k| (head, k))
}

fn lex_all(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    for (lineno, text) in src.lines().enumerate() {
        lex_line(text, lineno + 1, &mut out)?;
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Tok]) -> Self {
        Cursor { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    fn advance(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    /// Position of the next token, or just past the last one.
    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => match self.toks.last() {
                Some(t) => (t.line, t.col + 1),
                None => (1, 1),
            },
        }
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        parse_err(line, col, msg)
    }
}

/// One additive term: coefficient, exponent vector, and the trailing
/// derivation slot if present.
struct Term {
    coeff: Scalar,
    alpha: Vec<u32>,
    dee: Option<usize>,
}

/// Parses `coefficient? factor* dK?` after the sign has been consumed.
fn parse_term(cur: &mut Cursor<'_>, n: usize) -> Result<Term> {
    let mut coeff = Scalar::one();
    let mut saw_anything = false;

    if let Some(Tok { kind: TokKind::Num(_), .. }) = cur.peek() {
        let numer = match &cur.advance().expect("peeked").kind {
            TokKind::Num(v) => v.clone(),
            _ => unreachable!(),
        };
        let denom = if let Some(Tok { kind: TokKind::Slash, .. }) = cur.peek() {
            cur.advance();
            match cur.peek().map(|t| &t.kind) {
                Some(TokKind::Num(v)) => {
                    let v = v.clone();
                    if v.is_zero() {
                        return cur.fail("zero denominator");
                    }
                    cur.advance();
                    v
                }
                _ => return cur.fail("expected a denominator after '/'"),
            }
        } else {
            BigInt::one()
        };
        coeff = Scalar::new(numer, denom);
        saw_anything = true;
    }

    let mut alpha = vec![0u32; n];
    while let Some(Tok { kind: TokKind::Var(k), line, col }) = cur.peek() {
        let (k, line, col) = (*k, *line, *col);
        cur.advance();
        if k > n {
            return parse_err(line, col, format!("x{k} exceeds the ambient variable count {n}"));
        }
        let exp: u32 = if let Some(Tok { kind: TokKind::Caret, .. }) = cur.peek() {
            cur.advance();
            match cur.peek().map(|t| &t.kind) {
                Some(TokKind::Num(v)) => {
                    let e = u32::try_from(v.clone())
                        .map_err(|_| Error::Parse {
                            line,
                            col,
                            msg: "exponent is too large".into(),
                        })?;
                    cur.advance();
                    e
                }
                _ => return cur.fail("expected an exponent after '^'"),
            }
        } else {
            1
        };
        alpha[k - 1] = alpha[k - 1]
            .checked_add(exp)
            .ok_or(Error::Parse { line, col, msg: "exponent is too large".into() })?;
        saw_anything = true;
    }

    let dee = if let Some(Tok { kind: TokKind::Dee(k), line, col }) = cur.peek() {
        let (k, line, col) = (*k, *line, *col);
        cur.advance();
        if k > n {
            return parse_err(line, col, format!("d{k} exceeds the ambient variable count {n}"));
        }
        Some(k)
    } else {
        None
    };

    if !saw_anything && dee.is_none() {
        return cur.fail("expected a term");
    }
    Ok(Term { coeff, alpha, dee })
}

/// Parses a signed sum of terms; each term is handed to `consume`.
fn parse_sum(
    cur: &mut Cursor<'_>,
    n: usize,
    mut consume: impl FnMut(&mut Cursor<'_>, Term) -> Result<()>,
) -> Result<()> {
    if cur.peek().is_none() {
        return cur.fail("empty expression");
    }
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek().map(|t| &t.kind) {
            Some(TokKind::Plus) => {
                cur.advance();
            }
            Some(TokKind::Minus) => {
                negative = true;
                cur.advance();
            }
            _ if first => {}
            _ => return cur.fail("expected '+' or '-' between terms"),
        }
        first = false;
        let mut term = parse_term(cur, n)?;
        if negative {
            term.coeff = -term.coeff;
        }
        consume(cur, term)?;
    }
    Ok(())
}

/// Parses a full token stream as a polynomial sum.
fn polynomial_from_tokens(cur: &mut Cursor<'_>, n: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(n);
    parse_sum(cur, n, |cur, term| {
        if term.dee.is_some() {
            return cur.fail("dK is not allowed inside a polynomial");
        }
        acc = acc.add(&Polynomial::monomial(n, &term.alpha, term.coeff.clone())?)?;
        Ok(())
    })?;
    Ok(acc)
}

/// Parses a full token stream as a derivation sum; every term must end in
/// `dK` except a literal zero.
fn derivation_from_tokens(cur: &mut Cursor<'_>, n: usize) -> Result<UniDerivation> {
    let mut coeffs = vec![Polynomial::zero(n); n];
    parse_sum(cur, n, |cur, term| {
        match term.dee {
            Some(k) => {
                let part = Polynomial::monomial(n, &term.alpha, term.coeff.clone())?;
                coeffs[k - 1] = coeffs[k - 1].add(&part)?;
            }
            None => {
                if !term.coeff.is_zero() || term.alpha.iter().any(|&e| e != 0) {
                    return cur.fail("derivation term must end in dK");
                }
            }
        }
        Ok(())
    })?;
    UniDerivation::new(n, coeffs)
}

/// Parses a polynomial in `n` variables from an expression string.
pub fn parse_polynomial(src: &str, n: usize) -> Result<Polynomial> {
    let toks = lex_all(src)?;
    let mut cur = Cursor::new(&toks);
    polynomial_from_tokens(&mut cur, n)
}

/// Parses a derivation in `n` variables.
pub fn parse_derivation(src: &str, n: usize) -> Result<UniDerivation> {
    let toks = lex_all(src)?;
    let mut cur = Cursor::new(&toks);
    derivation_from_tokens(&mut cur, n)
}

/// Parses the line-per-variable automorphism format; variables without a
/// line map to themselves.
pub fn parse_automorphism(src: &str, n: usize) -> Result<TriangularAutomorphism> {
    let mut scales = vec![Scalar::one(); n];
    let mut tails = vec![Polynomial::zero(n); n];
    let mut seen = vec![false; n];
    for (lineno, text) in src.lines().enumerate() {
        let line = lineno + 1;
        let mut toks = Vec::new();
        lex_line(text, line, &mut toks)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks);
        let k = match cur.advance().map(|t| &t.kind) {
            Some(TokKind::Var(k)) => *k,
            _ => return parse_err(line, 1, "expected a line of the form 'xK -> polynomial'"),
        };
        if k == 0 || k > n {
            return parse_err(line, 1, format!("x{k} exceeds the ambient variable count {n}"));
        }
        if seen[k - 1] {
            return parse_err(line, 1, format!("duplicate definition of x{k}"));
        }
        seen[k - 1] = true;
        match cur.advance().map(|t| &t.kind) {
            Some(TokKind::Arrow) => {}
            _ => return cur.fail("expected '->'"),
        }
        let rest = &toks[cur.pos..];
        let mut inner = Cursor::new(rest);
        let rhs = polynomial_from_tokens(&mut inner, n)?;
        let own = Monomial::new({
            let mut e = vec![0u32; n];
            e[k - 1] = 1;
            e
        });
        let scale = rhs.coefficient(&own);
        let tail = rhs.sub(&Polynomial::monomial(n, own.exponents(), scale.clone())?)?;
        scales[k - 1] = scale;
        tails[k - 1] = tail;
    }
    TriangularAutomorphism::new(n, scales, tails)
}

/// Parses one derivation per non-blank line.
pub fn parse_spanners(src: &str, n: usize) -> Result<Vec<UniDerivation>> {
    let mut out = Vec::new();
    for (lineno, text) in src.lines().enumerate() {
        let line = lineno + 1;
        let mut toks = Vec::new();
        lex_line(text, line, &mut toks)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks);
        out.push(derivation_from_tokens(&mut cur, n)?);
    }
    Ok(out)
}

fn endo_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::EndoFile { msg: msg.into() })
}

/// Parses the endomorphism file format: `n = ...` and `d = ...` headers,
/// then one `j:alpha -> derivation` record for every basis index of the
/// level-`d` space, each exactly once, in any order. Images may exceed the
/// level; only the domain indices are constrained.
pub fn parse_endomorphism(src: &str) -> Result<TruncatedLieMap> {
    let mut n: Option<usize> = None;
    let mut d: Option<u32> = None;
    let mut records: BTreeMap<BasisIndex, (usize, UniDerivation)> = BTreeMap::new();

    for (lineno, text) in src.lines().enumerate() {
        let line = lineno + 1;
        let mut toks = Vec::new();
        lex_line(text, line, &mut toks)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(&toks);
        match cur.peek().map(|t| &t.kind) {
            Some(TokKind::Ident(word)) if word == "n" || word == "d" => {
                let word = word.clone();
                cur.advance();
                match cur.advance().map(|t| &t.kind) {
                    Some(TokKind::Equals) => {}
                    _ => return cur.fail(format!("expected '=' after '{word}'")),
                }
                let value = match cur.advance().map(|t| &t.kind) {
                    Some(TokKind::Num(v)) => v.clone(),
                    _ => return cur.fail(format!("expected a number for '{word}'")),
                };
                if cur.peek().is_some() {
                    return cur.fail("unexpected trailing tokens after header");
                }
                if word == "n" {
                    if n.is_some() {
                        return endo_err(format!("line {line}: duplicate 'n' header"));
                    }
                    n = Some(usize::try_from(value).map_err(|_| Error::EndoFile {
                        msg: format!("line {line}: 'n' is too large"),
                    })?);
                } else {
                    if d.is_some() {
                        return endo_err(format!("line {line}: duplicate 'd' header"));
                    }
                    d = Some(u32::try_from(value).map_err(|_| Error::EndoFile {
                        msg: format!("line {line}: 'd' is too large"),
                    })?);
                }
            }
            Some(TokKind::Num(_)) => {
                let n = match n {
                    Some(n) => n,
                    None => return endo_err(format!("line {line}: record before 'n' header")),
                };
                if d.is_none() {
                    return endo_err(format!("line {line}: record before 'd' header"));
                }
                let slot = match cur.advance().map(|t| &t.kind) {
                    Some(TokKind::Num(v)) => usize::try_from(v.clone()).map_err(|_| {
                        Error::EndoFile {
                            msg: format!("line {line}: slot index is too large"),
                        }
                    })?,
                    _ => unreachable!("peeked a number"),
                };
                match cur.advance().map(|t| &t.kind) {
                    Some(TokKind::Colon) => {}
                    _ => return cur.fail("expected ':' after the slot index"),
                }
                let mut alpha = Vec::new();
                loop {
                    match cur.peek().map(|t| &t.kind) {
                        Some(TokKind::Num(v)) => {
                            let e = u32::try_from(v.clone()).map_err(|_| Error::EndoFile {
                                msg: format!("line {line}: exponent is too large"),
                            })?;
                            alpha.push(e);
                            cur.advance();
                            match cur.peek().map(|t| &t.kind) {
                                Some(TokKind::Comma) => {
                                    cur.advance();
                                }
                                _ => break,
                            }
                        }
                        _ if alpha.is_empty() => break,
                        _ => return cur.fail("expected an exponent after ','"),
                    }
                }
                match cur.advance().map(|t| &t.kind) {
                    Some(TokKind::Arrow) => {}
                    _ => return cur.fail("expected '->'"),
                }
                if slot == 0 || slot > n {
                    return endo_err(format!(
                        "line {line}: slot {slot} is outside 1..={n}"
                    ));
                }
                if alpha.len() != slot - 1 {
                    return endo_err(format!(
                        "line {line}: index {slot}: expects {} exponents, got {}",
                        slot - 1,
                        alpha.len()
                    ));
                }
                let rest = &toks[cur.pos..];
                let mut inner = Cursor::new(rest);
                let image = derivation_from_tokens(&mut inner, n)?;
                let idx = BasisIndex::new(slot, Monomial::new(alpha));
                if let Some((first_line, _)) = records.get(&idx) {
                    return endo_err(format!(
                        "line {line}: duplicate record for {idx} (first on line {first_line})"
                    ));
                }
                records.insert(idx, (line, image));
            }
            _ => return cur.fail("expected a header or a basis-index record"),
        }
    }

    let n = match n {
        Some(n) => n,
        None => return endo_err("missing 'n' header"),
    };
    let d = match d {
        Some(d) => d,
        None => return endo_err("missing 'd' header"),
    };
    let domain = FiltrationBasis::enumerate(n, d)?;
    for idx in records.keys() {
        if domain.position(idx).is_none() {
            let (line, _) = &records[idx];
            return endo_err(format!(
                "line {line}: {idx} is not in the level-{d} basis for n = {n}"
            ));
        }
    }
    let mut images = Vec::with_capacity(domain.len());
    for idx in domain.elements() {
        match records.remove(idx) {
            Some((_, image)) => images.push(image),
            None => return endo_err(format!("no record for basis index {idx}")),
        }
    }
    TruncatedLieMap::new(domain, images)
}

/// Canonical endomorphism file for a truncated map; inverse of
/// [`parse_endomorphism`].
pub fn write_endomorphism(m: &TruncatedLieMap) -> String {
    let mut out = String::new();
    out.push_str(&format!("n = {}\n", m.ambient_n()));
    out.push_str(&format!("d = {}\n", m.level()));
    for (idx, image) in m.domain().elements().iter().zip(m.images()) {
        out.push_str(&format!("{idx} -> {image}\n"));
    }
    out
}

/// Largest K over all `xK` / `dK` words in the text; 0 when none occur.
/// Used to infer the ambient variable count before a real parse.
pub fn scan_max_index(src: &str) -> usize {
    let mut best = 0;
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        // A preceding letter means this is the middle of an identifier; a
        // preceding digit is fine ("2x1" lexes as a coefficient times x1).
        if (b == b'x' || b == b'd')
            && (i == 0 || !(bytes[i - 1].is_ascii_alphabetic() || bytes[i - 1] == b'_'))
        {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let word_continues =
                j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_');
            if j > start && !word_continues {
                if let Ok(k) = src[start..j].parse::<usize>() {
                    best = best.max(k);
                }
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}
