//! Line and token splitting shared by the text formats.

use std::str::FromStr;

use crate::element::{ElementId, Subset};
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Copy, Debug)]
pub(crate) struct Token<'a> {
    pub col: usize,
    pub text: &'a str,
}

#[derive(Clone, Debug)]
pub(crate) struct Line<'a> {
    pub no: usize,
    pub toks: Vec<Token<'a>>,
}

/// Non-empty lines with `#` comments removed; columns are 1-based.
pub(crate) fn lex(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut toks = Vec::new();
            let mut start = None;
            for (at, ch) in body.char_indices().chain([(body.len(), ' ')]) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(at),
                    (true, Some(s)) => {
                        toks.push(Token {
                            col: body[..s].chars().count() + 1,
                            text: &body[s..at],
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!toks.is_empty()).then_some(Line { no: i + 1, toks })
        })
        .collect()
}

pub(crate) fn fail(line: usize, col: usize, message: impl Into<String>) -> Error {
    ParseError::new(line, col, message).into()
}

impl<'a> Line<'a> {
    pub fn keyword(&self) -> &'a str {
        self.toks[0].text
    }

    pub fn err(&self, message: impl Into<String>) -> Error {
        fail(self.no, self.toks[0].col, message)
    }

    fn tok_err(&self, i: usize, message: impl Into<String>) -> Error {
        let col = self.toks.get(i).map_or_else(|| self.end_col(), |t| t.col);
        fail(self.no, col, message)
    }

    fn end_col(&self) -> usize {
        let last = self.toks.last().expect("lines are nonempty");
        last.col + last.text.chars().count()
    }

    /// Arguments after the keyword.
    pub fn args(&self) -> &[Token<'a>] {
        &self.toks[1..]
    }

    pub fn expect_args(&self, n: usize) -> Result<()> {
        if self.args().len() == n {
            Ok(())
        } else {
            Err(self.tok_err(
                (n + 1).min(self.toks.len()),
                format!("`{}` takes {n} argument(s), found {}", self.keyword(), self.args().len()),
            ))
        }
    }

    pub fn parse_at<T: FromStr>(&self, i: usize, what: &str) -> Result<T> {
        let tok = self.toks.get(i).ok_or_else(|| self.tok_err(i, format!("missing {what}")))?;
        tok.text
            .parse()
            .map_err(|_| self.tok_err(i, format!("expected {what}, found `{}`", tok.text)))
    }

    /// The single numeric argument of `keyword value`.
    pub fn value<T: FromStr>(&self) -> Result<T> {
        self.expect_args(1)?;
        self.parse_at(1, "a number")
    }

    /// All arguments as numbers.
    pub fn numbers<T: FromStr>(&self) -> Result<Vec<T>> {
        (1..self.toks.len()).map(|i| self.parse_at(i, "a number")).collect()
    }

    pub fn element_at(&self, i: usize) -> Result<ElementId> {
        let tok = self.toks.get(i).ok_or_else(|| self.tok_err(i, "missing element"))?;
        tok.text.parse().map_err(|e: crate::element::BadElement| self.tok_err(i, e.to_string()))
    }

    /// All arguments as elements.
    pub fn elements(&self) -> Result<Vec<ElementId>> {
        (1..self.toks.len()).map(|i| self.element_at(i)).collect()
    }
}

/// Keyword lines grouped for lookup, rejecting keywords not in `allowed`.
pub(crate) struct Fields<'l, 'a> {
    lines: &'l [Line<'a>],
    context: usize,
}

impl<'l, 'a> Fields<'l, 'a> {
    pub fn new(lines: &'l [Line<'a>], context: usize, allowed: &[&str]) -> Result<Self> {
        if let Some(l) = lines.iter().find(|l| !allowed.contains(&l.keyword())) {
            return Err(l.err(format!(
                "unexpected `{}`; expected one of {}",
                l.keyword(),
                allowed.join(", ")
            )));
        }
        Ok(Fields { lines, context })
    }

    pub fn many(&self, keyword: &str) -> impl Iterator<Item = &'l Line<'a>> + '_ {
        let keyword = keyword.to_string();
        self.lines.iter().filter(move |l| l.keyword() == keyword)
    }

    pub fn optional(&self, keyword: &str) -> Result<Option<&'l Line<'a>>> {
        let mut found = self.lines.iter().filter(|l| l.keyword() == keyword);
        let first = found.next();
        if let Some(dup) = found.next() {
            return Err(dup.err(format!("`{keyword}` given twice")));
        }
        Ok(first)
    }

    pub fn one(&self, keyword: &str) -> Result<&'l Line<'a>> {
        self.optional(keyword)?
            .ok_or_else(|| fail(self.context, 1, format!("missing `{keyword}` line")))
    }

    /// Union of the element lists of every `keyword` line.
    pub fn subset(&self, keyword: &str) -> Result<Subset> {
        let mut out = Vec::new();
        for l in self.many(keyword) {
            out.extend(l.elements()?);
        }
        Ok(Subset::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_vanish_and_columns_are_one_based() {
        let lines = lex("# header\n\n  edge 0  1 # trailing\n");
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].no, 3);
        let cols: Vec<usize> = lines[0].toks.iter().map(|t| t.col).collect();
        assert_eq!(cols, [3, 8, 11]);
    }

    #[test]
    fn bad_number_reports_its_column() {
        let lines = lex("k x7");
        let err = lines[0].value::<i64>().unwrap_err();
        assert_eq!(err, fail(1, 3, "expected a number, found `x7`"));
    }
}
