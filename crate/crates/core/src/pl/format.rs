//! Line-oriented text format for maps.
//!
//! ```text
//! pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2
//! affine a=2 b=-1
//! ```
//!
//! Tokens are separated by whitespace; an anchor list contains no spaces and
//! may be empty (`anchors=`). [`PLMap`]'s `Display` re-emits the canonical
//! form, always in the `pl` spelling.

use std::fmt;
use std::str::FromStr;

use super::{PLMap, ParseError, PiecewiseLinear, PlError};
use crate::rat::Rat;

/// A whitespace-separated token with its 1-based column.
#[derive(Debug, Clone, Copy)]
pub struct Token<'a> {
    pub text: &'a str,
    pub column: usize,
}

pub fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn rat_at(text: &str, line: usize, column: usize) -> Result<Rat, ParseError> {
    text.parse::<Rat>()
        .map_err(|_| ParseError::new(line, column, format!("invalid rational `{text}`")))
}

fn anchors_at(text: &str, line: usize, column: usize) -> Result<Vec<(Rat, Rat)>, ParseError> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(';') {
        let col = column + offset;
        let body = part
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(line, col, format!("expected `(b,v)`, got `{part}`")))?;
        let (b, v) = body
            .split_once(',')
            .ok_or_else(|| ParseError::new(line, col, format!("expected `(b,v)`, got `{part}`")))?;
        out.push((
            rat_at(b, line, col + 1)?,
            rat_at(v, line, col + 2 + b.len())?,
        ));
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Parses one map from `tokens`. `line` is only used for error positions.
pub fn parse_map_tokens(tokens: &[Token<'_>], line: usize) -> Result<PLMap, ParseError> {
    let Some((head, rest)) = tokens.split_first() else {
        return Err(ParseError::new(line, 1, "expected a map"));
    };
    let mut fields: Vec<(&str, &str, usize)> = Vec::new();
    for t in rest {
        let (key, value) = t.text.split_once('=').ok_or_else(|| {
            ParseError::new(
                line,
                t.column,
                format!("expected key=value, got `{}`", t.text),
            )
        })?;
        if fields.iter().any(|(k, _, _)| *k == key) {
            return Err(ParseError::new(
                line,
                t.column,
                format!("duplicate field `{key}`"),
            ));
        }
        fields.push((key, value, t.column + key.len() + 1));
    }
    let allowed: &[&str] = match head.text {
        "pl" => &["left_slope", "anchors", "right_slope"],
        "affine" => &["a", "b"],
        other => {
            return Err(ParseError::new(
                line,
                head.column,
                format!("unknown map kind `{other}` (expected `pl` or `affine`)"),
            ))
        }
    };
    if let Some((k, _, col)) = fields.iter().find(|(k, _, _)| !allowed.contains(k)) {
        return Err(ParseError::new(
            line,
            col - k.len() - 1,
            format!("unknown field `{k}`"),
        ));
    }
    let field = |name: &str| {
        fields
            .iter()
            .find(|(k, _, _)| *k == name)
            .map(|(_, v, c)| (*v, *c))
            .ok_or_else(|| ParseError::new(line, head.column, format!("missing field `{name}`")))
    };
    let result = if head.text == "pl" {
        let (l, lc) = field("left_slope")?;
        let (a, ac) = field("anchors")?;
        let (r, rc) = field("right_slope")?;
        PLMap::new(
            anchors_at(a, line, ac)?,
            rat_at(l, line, lc)?,
            rat_at(r, line, rc)?,
        )
    } else {
        let (a, ac) = field("a")?;
        let (b, bc) = field("b")?;
        PLMap::affine(rat_at(a, line, ac)?, rat_at(b, line, bc)?)
    };
    result.map_err(|e| match e {
        PlError::Validation(msg) => ParseError::new(line, head.column, msg),
        other => ParseError::new(line, head.column, other.to_string()),
    })
}

/// Parses a single map written on one line.
pub fn parse_map(text: &str, line: usize) -> Result<PLMap, ParseError> {
    parse_map_tokens(&tokenize(text), line)
}

/// Parses a file of maps, one per line. Blank lines and `#` comments are
/// skipped; a line may carry a `name:` prefix.
pub fn parse_map_file(text: &str) -> Result<Vec<(Option<String>, PLMap)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let mut tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let mut name = None;
        if let Some(n) = tokens[0].text.strip_suffix(':') {
            name = Some(n.to_string());
            tokens.remove(0);
        }
        out.push((name, parse_map_tokens(&tokens, i + 1)?));
    }
    Ok(out)
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(l, _)| l)
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pl left_slope={} anchors=", self.left_slope())?;
        for (i, (b, v)) in self.anchors().iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "({b},{v})")?;
        }
        write!(f, " right_slope={}", self.right_slope())
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.function().fmt(f)
    }
}

impl FromStr for PLMap {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<PLMap, ParseError> {
        parse_map(s, 1)
    }
}
