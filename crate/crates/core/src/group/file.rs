//! Group description files.
//!
//! ```text
//! # the affine group
//! radius=4 N=1
//! a: affine a=2 b=0
//! b: affine a=1 b=1
//! certificate=pl left_slope=1 anchors=(0,0) right_slope=1
//! image a: affine a=2 b=0
//! ```
//!
//! `name: <map>` lines declare generators in order. The header keys
//! `radius` and `N` are optional. `certificate=<map>` and `image <name>: <map>`
//! lines carry an optional conjugacy certificate and the affine images it is
//! claimed to produce.

use std::fmt;
use std::str::FromStr;

use crate::pl::format::{parse_map_tokens, strip_comment, tokenize, Token};
use crate::pl::{PLMap, ParseError};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupFile {
    pub radius: Option<usize>,
    pub max_fixed: Option<usize>,
    pub generators: Vec<(String, PLMap)>,
    pub certificate: Option<PLMap>,
    pub images: Vec<(String, PLMap)>,
}

impl GroupFile {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn maps(&self) -> Vec<PLMap> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&PLMap> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
    }

    /// Images in generator order, when every generator has one.
    pub fn ordered_images(&self) -> Option<Vec<PLMap>> {
        self.generators
            .iter()
            .map(|(n, _)| {
                self.images
                    .iter()
                    .find(|(m, _)| m == n)
                    .map(|(_, g)| g.clone())
            })
            .collect()
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

fn parse_header(tokens: &[Token<'_>], line: usize, file: &mut GroupFile) -> Result<(), ParseError> {
    for t in tokens {
        let (key, value) = t.text.split_once('=').expect("header tokens contain '='");
        let n: usize = value.parse().map_err(|_| {
            ParseError::new(
                line,
                t.column + key.len() + 1,
                format!("expected a non-negative integer, got `{value}`"),
            )
        })?;
        match key {
            "radius" => file.radius = Some(n),
            "N" => file.max_fixed = Some(n),
            other => {
                return Err(ParseError::new(
                    line,
                    t.column,
                    format!("unknown header key `{other}`"),
                ))
            }
        }
    }
    Ok(())
}

impl FromStr for GroupFile {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<GroupFile, ParseError> {
        let mut file = GroupFile::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let tokens = tokenize(strip_comment(raw));
            let Some(first) = tokens.first() else {
                continue;
            };

            if let Some(rest) = first.text.strip_prefix("certificate=") {
                if file.certificate.is_some() {
                    return Err(ParseError::new(line, first.column, "duplicate certificate"));
                }
                let mut map_tokens = tokens.clone();
                map_tokens[0] = Token {
                    text: rest,
                    column: first.column + "certificate=".len(),
                };
                file.certificate = Some(parse_map_tokens(&map_tokens, line)?);
            } else if first.text == "image" {
                let name_tok = tokens.get(1).ok_or_else(|| {
                    ParseError::new(line, first.column, "expected `image <name>: <map>`")
                })?;
                let name = name_tok
                    .text
                    .strip_suffix(':')
                    .filter(|n| valid_name(n))
                    .ok_or_else(|| ParseError::new(line, name_tok.column, "expected `<name>:`"))?;
                if file.images.iter().any(|(n, _)| n == name) {
                    return Err(ParseError::new(
                        line,
                        name_tok.column,
                        format!("duplicate image for `{name}`"),
                    ));
                }
                file.images
                    .push((name.to_string(), parse_map_tokens(&tokens[2..], line)?));
            } else if let Some(name) = first.text.strip_suffix(':') {
                if !valid_name(name) {
                    return Err(ParseError::new(
                        line,
                        first.column,
                        format!("invalid generator name `{name}`"),
                    ));
                }
                if file.generators.iter().any(|(n, _)| n == name) {
                    return Err(ParseError::new(
                        line,
                        first.column,
                        format!("duplicate generator `{name}`"),
                    ));
                }
                file.generators
                    .push((name.to_string(), parse_map_tokens(&tokens[1..], line)?));
            } else if tokens.iter().all(|t| t.text.contains('=')) {
                parse_header(&tokens, line, &mut file)?;
            } else {
                return Err(ParseError::new(
                    line,
                    first.column,
                    format!("expected a header, `<name>: <map>`, `image` or `certificate=` line, got `{}`", first.text),
                ));
            }
        }
        if let Some((name, _)) = file.images.iter().find(|(n, _)| file.get(n).is_none()) {
            return Err(ParseError::new(
                0,
                0,
                format!("image for unknown generator `{name}`"),
            ));
        }
        Ok(file)
    }
}

impl fmt::Display for GroupFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut header = Vec::new();
        if let Some(r) = self.radius {
            header.push(format!("radius={r}"));
        }
        if let Some(n) = self.max_fixed {
            header.push(format!("N={n}"));
        }
        if !header.is_empty() {
            writeln!(f, "{}", header.join(" "))?;
        }
        for (name, g) in &self.generators {
            writeln!(f, "{name}: {g}")?;
        }
        if let Some(c) = &self.certificate {
            writeln!(f, "certificate={c}")?;
        }
        for (name, g) in &self.images {
            writeln!(f, "image {name}: {g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    const AFFINE: &str = "# affine\nradius=4 N=1\na: affine a=2 b=0\nb: affine a=1 b=1\n";

    #[test]
    fn parses_header_and_generators() {
        let f: GroupFile = AFFINE.parse().unwrap();
        assert_eq!(f.radius, Some(4));
        assert_eq!(f.max_fixed, Some(1));
        assert_eq!(f.names(), vec!["a", "b"]);
        assert_eq!(f.get("b").unwrap(), &PLMap::translation(rat(1, 1)));
    }

    #[test]
    fn parses_certificate_and_images() {
        let text = format!("{AFFINE}certificate=pl left_slope=1 anchors=(0,0);(1,2) right_slope=1/2\nimage a: affine a=2 b=0\nimage b: affine a=1 b=1\n");
        let f: GroupFile = text.parse().unwrap();
        assert_eq!(f.certificate.as_ref().unwrap().eval(&rat(1, 2)), rat(1, 1));
        assert_eq!(f.ordered_images().unwrap().len(), 2);
        let again: GroupFile = f.to_string().parse().unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn errors_carry_positions() {
        let err = "radius=x".parse::<GroupFile>().unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
        let err = "a: affine a=1 b=1\na: affine a=2 b=0"
            .parse::<GroupFile>()
            .unwrap_err();
        assert_eq!(err.line, 2);
        let err = "a: pl left_slope=1 anchors=(0,1);(1,0) right_slope=1"
            .parse::<GroupFile>()
            .unwrap_err();
        assert!(err.message.contains("strictly increasing"));
        let err = "what is this".parse::<GroupFile>().unwrap_err();
        assert_eq!(err.column, 1);
        assert!("image c: affine a=1 b=0".parse::<GroupFile>().is_err());
    }
}
