//! The single text grammar shared by presentations, subgroup generators,
//! braid words and the file formats built on them.
//!
//! ```text
//! word    := factor*
//! factor  := atom ( '^' int )?
//! atom    := 'x' digits | '1' | '(' word ')' | '(' word ',' word ')'
//! int     := [+-]? digits | '{' int '}'
//! ```
//!
//! `(u,v)` is the commutator `u^-1 v^-1 u v`. Whitespace is insignificant.
//! Braid words use the same shape with `s` in place of `x` and no grouping.

use thiserror::Error;

use crate::braid::BraidWord;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    rank: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, rank: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, rank }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.line, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.err(format!("expected '{c}', found '{d}'"))),
            None => Err(self.err(format!("expected '{c}', found end of input"))),
        }
    }

    fn digits(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().map_err(|_| ParseError::at(self.line, start + 1, "number too large"))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let v = self.int()?;
                self.expect('}')?;
                Ok(v)
            }
            Some(c @ ('-' | '+')) => {
                self.pos += 1;
                self.skip_ws();
                let v = self.digits()? as i64;
                Ok(if c == '-' { -v } else { v })
            }
            _ => Ok(self.digits()? as i64),
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.peek() == Some('^') {
            self.pos += 1;
            self.int()
        } else {
            Ok(1)
        }
    }

    fn generator(&mut self, letter: char) -> Result<usize, ParseError> {
        self.skip_ws();
        let col = self.pos;
        self.expect(letter)?;
        // Tolerate the `x_1` spelling.
        if self.chars.get(self.pos) == Some(&'_') {
            self.pos += 1;
        }
        let idx = self.digits()? as usize;
        if idx == 0 || idx > self.rank {
            return Err(ParseError::at(
                self.line,
                col + 1,
                format!("generator {letter}{idx} out of range 1..={}", self.rank),
            ));
        }
        Ok(idx)
    }

    /// Parses factors until `)` , `,` or end of input.
    fn word(&mut self) -> Result<Word, ParseError> {
        let mut acc = Word::identity(self.rank);
        loop {
            let atom = match self.peek() {
                None | Some(')') | Some(',') => return Ok(acc),
                Some('x') => {
                    let g = self.generator('x')?;
                    Word::generator(self.rank, g).unwrap()
                }
                Some('1') => {
                    self.pos += 1;
                    Word::identity(self.rank)
                }
                Some('(') => {
                    self.pos += 1;
                    let first = self.word()?;
                    let atom = if self.peek() == Some(',') {
                        self.pos += 1;
                        let second = self.word()?;
                        Word::commutator(&first, &second).unwrap()
                    } else {
                        first
                    };
                    self.expect(')')?;
                    atom
                }
                Some(c) => return Err(self.err(format!("unexpected character '{c}'"))),
            };
            let e = self.exponent()?;
            acc = &acc * &atom.pow(e);
        }
    }
}

/// Parses one word of the free group of rank `rank` on line `line`.
pub fn parse_word_at(text: &str, rank: usize, line: usize) -> Result<Word, ParseError> {
    let mut cur = Cursor::new(text, line, rank);
    let w = cur.word()?;
    match cur.peek() {
        None => Ok(w),
        Some(c) => Err(cur.err(format!("unexpected '{c}'"))),
    }
}

pub fn parse_word(text: &str, rank: usize) -> Result<Word, ParseError> {
    parse_word_at(text, rank, 1)
}

pub fn parse_braid_at(text: &str, strands: usize, line: usize) -> Result<BraidWord, ParseError> {
    let mut cur = Cursor::new(text, line, strands.saturating_sub(1));
    let mut letters = Vec::new();
    while let Some(c) = cur.peek() {
        if c != 's' {
            return Err(cur.err(format!("unexpected character '{c}' in braid word")));
        }
        let i = cur.generator('s')?;
        let e = cur.exponent()?;
        let sign = if e < 0 { -1 } else { 1 };
        for _ in 0..e.unsigned_abs() {
            letters.push((i, sign));
        }
    }
    Ok(BraidWord::new(strands, letters).expect("indices range-checked by the parser"))
}

pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord, ParseError> {
    parse_braid_at(text, strands, 1)
}

/// Comma separated integers, e.g. `0,-1,3`.
pub fn parse_framings_at(text: &str, line: usize) -> Result<Vec<i64>, ParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut col = 1;
    let mut out = Vec::new();
    for piece in text.split(',') {
        let v = piece.trim().parse::<i64>().map_err(|_| {
            ParseError::at(line, col, format!("invalid framing '{}'", piece.trim()))
        })?;
        out.push(v);
        col += piece.chars().count() + 1;
    }
    Ok(out)
}

pub fn parse_framings(text: &str) -> Result<Vec<i64>, ParseError> {
    parse_framings_at(text, 1)
}

/// Raw contents of an `.ap` file, not yet checked against the Artin equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationText {
    pub n: usize,
    pub relators: Vec<Word>,
}

pub const AP_HEADER: &str = "# ap-forge presentation v1";
pub const FP_HEADER: &str = "# ap-forge group v1";
pub const BRAID_HEADER: &str = "# ap-forge braid v1";

/// Splits a file into (1-based line number, content) pairs with comment
/// lines dropped and trailing comments stripped.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .collect()
}

fn header_value(
    lines: &[(usize, &str)],
    key: &str,
) -> Result<(usize, usize), ParseError> {
    // Leading blank lines before the header carry no meaning.
    let idx = lines
        .iter()
        .position(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| ParseError::at(1, 1, format!("missing header '{key}=<int>'")))?;
    let (line_no, line) = lines[idx];
    let line = line.trim();
    let value = line
        .strip_prefix(key)
        .and_then(|rest| rest.trim_start().strip_prefix('='))
        .ok_or_else(|| ParseError::at(line_no, 1, format!("expected header '{key}=<int>'")))?;
    let n = value
        .trim()
        .parse::<usize>()
        .map_err(|_| ParseError::at(line_no, key.len() + 2, "invalid integer in header"))?;
    Ok((idx, n))
}

/// Body lines after the header: exactly `count` lines, extra blank lines at
/// the end are ignored.
fn body_lines<'a>(
    lines: &[(usize, &'a str)],
    header_idx: usize,
    count: usize,
) -> Result<Vec<(usize, &'a str)>, ParseError> {
    let mut body: Vec<(usize, &str)> = lines[header_idx + 1..].to_vec();
    while body.len() > count && body.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        body.pop();
    }
    if body.len() != count {
        let line = body.last().map_or(lines[header_idx].0, |(l, _)| *l);
        return Err(ParseError::at(
            line,
            1,
            format!("expected {count} relator lines, found {}", body.len()),
        ));
    }
    Ok(body)
}

/// Parses the `.ap` format: header `n=<int>` followed by `n` relator lines.
pub fn parse_presentation_file(text: &str) -> Result<PresentationText, ParseError> {
    let lines = content_lines(text);
    let (idx, n) = header_value(&lines, "n")?;
    if n == 0 {
        return Err(ParseError::at(lines[idx].0, 1, "n must be at least 1"));
    }
    let relators = body_lines(&lines, idx, n)?
        .into_iter()
        .map(|(line_no, l)| parse_word_at(l, n, line_no))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PresentationText { n, relators })
}

/// Canonical `.ap` serialization; empty relators print as `1`.
pub fn write_presentation(n: usize, relators: &[Word]) -> String {
    let mut out = format!("{AP_HEADER}\nn={n}\n");
    for r in relators {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// Parses the `.fp` format: header `gens=<int>`, then one relator per
/// non-blank line.
pub fn parse_group_file(text: &str) -> Result<(usize, Vec<Word>), ParseError> {
    let lines = content_lines(text);
    let (idx, gens) = header_value(&lines, "gens")?;
    let relators = lines[idx + 1..]
        .iter()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|&(line_no, l)| parse_word_at(l, gens, line_no))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((gens, relators))
}

pub fn write_group(gens: usize, relators: &[Word]) -> String {
    let mut out = format!("{FP_HEADER}\ngens={gens}\n");
    for r in relators {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

/// Parses the `.braid` format: header `n=<int>`, a braid word line and an
/// optional `framings=` line.
pub fn parse_braid_file(text: &str) -> Result<(BraidWord, Vec<i64>), ParseError> {
    let lines = content_lines(text);
    let (idx, n) = header_value(&lines, "n")?;
    let rest: Vec<_> = lines[idx + 1..].iter().filter(|(_, l)| !l.trim().is_empty()).collect();
    let mut braid = BraidWord::identity(n);
    let mut framings = vec![0; n];
    for &&(line_no, l) in &rest {
        let t = l.trim();
        if let Some(v) = t.strip_prefix("framings") {
            let v = v.trim_start().strip_prefix('=').ok_or_else(|| {
                ParseError::at(line_no, 1, "expected 'framings=<list>'")
            })?;
            framings = parse_framings_at(v, line_no)?;
            if framings.len() != n {
                return Err(ParseError::at(
                    line_no,
                    1,
                    format!("expected {n} framings, found {}", framings.len()),
                ));
            }
        } else {
            braid = braid.then(&parse_braid_at(t, n, line_no)?);
        }
    }
    Ok((braid, framings))
}

pub fn write_braid(braid: &BraidWord, framings: &[i64]) -> String {
    let f: Vec<String> = framings.iter().map(i64::to_string).collect();
    format!("{BRAID_HEADER}\nn={}\n{}\nframings={}\n", braid.strands(), braid, f.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_paper_style_prefix() {
        let w = parse_word("x1 x3 x1 x3 x2", 4).unwrap();
        let syl: Vec<_> = w.syllables().iter().map(|s| (s.gen, s.exp)).collect();
        assert_eq!(syl, vec![(1, 1), (3, 1), (1, 1), (3, 1), (2, 1)]);
    }

    #[test]
    fn commutator_shorthand() {
        let w = parse_word("(x1,x4)", 4).unwrap();
        assert_eq!(w, Word::from_letters(4, &[-1, -4, 1, 4]).unwrap());
    }

    #[test]
    fn cancellation_gives_identity() {
        assert!(parse_word("x1 x1^-1", 2).unwrap().is_identity());
        assert!(parse_word("", 2).unwrap().is_identity());
        assert!(parse_word("1", 2).unwrap().is_identity());
    }

    #[test]
    fn grouping_and_powers() {
        let a = parse_word("(x1x3)^2 x2", 4).unwrap();
        assert_eq!(a, parse_word("x1 x3 x1 x3 x2", 4).unwrap());
        let b = parse_word("(x1 (x2x3)^2 x2^2)^-1", 4).unwrap();
        assert_eq!(b, parse_word("x1 x2 x3 x2 x3 x2 x2", 4).unwrap().inverse());
        assert_eq!(parse_word("x2^{-3}", 2).unwrap(), Word::power(2, 2, -3).unwrap());
        assert_eq!(parse_word("x_2^-3", 2).unwrap(), Word::power(2, 2, -3).unwrap());
        let nested = parse_word("((x1^-1, x4 x1 x2 x3), x4^-1)", 4).unwrap();
        let inner = parse_word("(x1^-1, x4 x1 x2 x3)", 4).unwrap();
        let x4i = Word::power(4, 4, -1).unwrap();
        assert_eq!(nested, Word::commutator(&inner, &x4i).unwrap());
    }

    #[test]
    fn errors_report_positions() {
        let e = parse_word("x1 x5", 4).unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        let e = parse_word("x1 ) x2", 4).unwrap_err();
        assert_eq!(e.column, 4);
        let e = parse_word("(x1 x2", 4).unwrap_err();
        assert!(e.message.contains("expected ')'"));
        let e = parse_word("x1 y2", 4).unwrap_err();
        assert_eq!(e.column, 4);
    }

    #[test]
    fn presentation_file_with_empty_relators() {
        let p = parse_presentation_file("n=4\n\n\n\n\n").unwrap();
        assert_eq!(p.n, 4);
        assert!(p.relators.iter().all(Word::is_identity));
        let p = parse_presentation_file("# comment\nn=2\nx2^-1 x1^-1 # trailing\n1\n").unwrap();
        assert_eq!(p.relators[0], Word::from_letters(2, &[-2, -1]).unwrap());
        assert!(p.relators[1].is_identity());
    }

    #[test]
    fn presentation_file_errors() {
        let e = parse_presentation_file("n=2\nx1\nx3\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        assert!(parse_presentation_file("n=2\nx1\n").is_err());
        assert!(parse_presentation_file("m=2\n").is_err());
    }

    #[test]
    fn presentation_round_trip() {
        let rels = vec![parse_word("(x1,x2) x2^3", 2).unwrap(), Word::identity(2)];
        let text = write_presentation(2, &rels);
        let back = parse_presentation_file(&text).unwrap();
        assert_eq!(back.relators, rels);
    }

    #[test]
    fn braid_and_framings() {
        let b = parse_braid("s1 s3^-1 s2^2", 4).unwrap();
        assert_eq!(b.letters(), &[(1, 1), (3, -1), (2, 1), (2, 1)]);
        assert!(parse_braid("s4", 4).is_err());
        assert_eq!(parse_framings("3, -1,0").unwrap(), vec![3, -1, 0]);
        assert!(parse_framings("3,a").is_err());
        let text = write_braid(&b, &[1, 0, -2, 3]);
        let (b2, f2) = parse_braid_file(&text).unwrap();
        assert_eq!((b2, f2), (b, vec![1, 0, -2, 3]));
    }
}
