//! Parsing of `dump` sources: `free:N`, `gadget:M,G` or a JSON file.

use std::path::PathBuf;

use interlab::construct::free_algebra;
use interlab::gadget::{build_gadget_capped, GadgetParams};
use interlab::approx::{ApproxSystem, SystemDoc};
use interlab::ba::NamedAlgebra;
use interlab::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Free(usize),
    Gadget(GadgetParams),
    File(PathBuf),
}

/// Parses an unsigned number starting at byte `start` of `text`.
fn number(text: &str, start: usize, end: usize) -> Result<usize> {
    let digits = &text[start..end];
    if digits.is_empty() {
        return Err(Error::Parse {
            pos: start,
            msg: "expected a number".into(),
        });
    }
    if let Some(bad) = digits.find(|c: char| !c.is_ascii_digit()) {
        return Err(Error::Parse {
            pos: start + bad,
            msg: format!("unexpected character {:?}", digits[bad..].chars().next().unwrap_or(' ')),
        });
    }
    digits.parse().map_err(|_| Error::Parse {
        pos: start,
        msg: "number out of range".into(),
    })
}

impl Source {
    pub fn parse(text: &str) -> Result<Source> {
        if let Some(rest) = text.strip_prefix("free:") {
            let start = text.len() - rest.len();
            return Ok(Source::Free(number(text, start, text.len())?));
        }
        if let Some(rest) = text.strip_prefix("gadget:") {
            let start = text.len() - rest.len();
            let (m, g) = match rest.find(',') {
                Some(comma) => (
                    number(text, start, start + comma)?,
                    number(text, start + comma + 1, text.len())?,
                ),
                None => (number(text, start, text.len())?, GadgetParams::default().g),
            };
            return Ok(Source::Gadget(GadgetParams::new(m, g)));
        }
        if text.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty source".into(),
            });
        }
        Ok(Source::File(PathBuf::from(text)))
    }

    /// The source as a pretty JSON document: an algebra, or a system when
    /// the file holds one.
    pub fn to_json(&self, atom_cap: usize) -> Result<String> {
        match self {
            Source::Free(n) => NamedAlgebra::new(free_algebra(*n, atom_cap)?).to_json(),
            Source::Gadget(p) => build_gadget_capped(*p, atom_cap)?.to_named().to_json(),
            Source::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Structure(format!("{}: {e}", path.display())))?;
                let value: serde_json::Value = serde_json::from_str(&text)?;
                if value.get("stages").is_some() {
                    let doc: SystemDoc = serde_json::from_value(value)?;
                    let sys = ApproxSystem::from_doc(&doc)?;
                    Ok(serde_json::to_string_pretty(&sys.to_doc())?)
                } else {
                    NamedAlgebra::from_json(&text)?.to_json()
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sources() {
        assert_eq!(Source::parse("free:3").unwrap(), Source::Free(3));
        assert_eq!(Source::parse("gadget:2,0").unwrap(), Source::Gadget(GadgetParams::new(2, 0)));
        assert_eq!(Source::parse("gadget:2").unwrap(), Source::Gadget(GadgetParams::new(2, 1)));
        assert_eq!(Source::parse("x.json").unwrap(), Source::File("x.json".into()));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(Source::parse("free:3x"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(Source::parse("free:"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(Source::parse("gadget:2,"), Err(Error::Parse { pos: 9, .. })));
        assert!(matches!(Source::parse("gadget:a,1"), Err(Error::Parse { pos: 7, .. })));
    }
}
