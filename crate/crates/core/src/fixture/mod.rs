//! The textual fixture format: parsing, resolution and deterministic
//! emission. Emitting a parsed document reproduces it byte for byte.

mod codec;
mod document;
mod read;
mod syntax;
mod write;

pub use codec::{decode_category, encode_category, FixtureBase, Registry};
pub use document::{Document, NamedOpfibration};
pub use read::KINDS;
pub use syntax::{parse_syntax, quote, Entry, FResult, FixtureError, Pos, Section, Syntax, Term, TermKind};
pub use write::write_document;

use crate::vbase::hostile::SetPair;
use crate::vbase::{FinCat, FinSet};

/// A document over one of the supported base instances.
#[derive(Clone, Debug)]
pub enum AnyDocument {
    FinSet(Document<FinSet>),
    FinCat(Document<FinCat>),
    SetPair(Document<SetPair>),
}

/// Base tags accepted by the `base:` header.
pub const BASE_TAGS: [&str; 5] = [
    "finset",
    "fincat",
    "hostile-nonterminal-unit",
    "hostile-fake-coproduct",
    "hostile-disconnected-unit",
];

fn resolve<V: FixtureBase>(tag: &str, syntax: &Syntax) -> Option<FResult<Document<V>>> {
    V::from_tag(tag).map(|v| Document::from_syntax(v, syntax))
}

/// Parses and resolves a fixture.
pub fn parse_fixture(text: &str) -> FResult<AnyDocument> {
    let syntax = parse_syntax(text)?;
    let mut tag = None;
    for e in &syntax.header {
        match e.key.as_str() {
            "base" => tag = Some(e.value.as_atom()?.to_string()),
            other => return Err(FixtureError::new(e.pos, format!("unknown header key `{other}`"))),
        }
    }
    let tag = tag.ok_or_else(|| FixtureError::new(Pos { line: 1, col: 1 }, "missing `base:` header"))?;
    if let Some(d) = resolve::<FinSet>(&tag, &syntax) {
        return d.map(AnyDocument::FinSet);
    }
    if let Some(d) = resolve::<FinCat>(&tag, &syntax) {
        return d.map(AnyDocument::FinCat);
    }
    if let Some(d) = resolve::<SetPair>(&tag, &syntax) {
        return d.map(AnyDocument::SetPair);
    }
    let pos = syntax
        .header
        .iter()
        .find(|e| e.key == "base")
        .map(|e| e.value.pos)
        .unwrap_or(Pos { line: 1, col: 1 });
    Err(FixtureError::new(
        pos,
        format!("unknown base `{tag}`; expected one of {}", BASE_TAGS.join(", ")),
    ))
}

impl AnyDocument {
    pub fn write(&self) -> String {
        match self {
            AnyDocument::FinSet(d) => write_document(d),
            AnyDocument::FinCat(d) => write_document(d),
            AnyDocument::SetPair(d) => write_document(d),
        }
    }

    pub fn base_tag(&self) -> &'static str {
        use crate::vbase::BaseCategory;
        match self {
            AnyDocument::FinSet(d) => d.base.tag(),
            AnyDocument::FinCat(d) => d.base.tag(),
            AnyDocument::SetPair(d) => d.base.tag(),
        }
    }
}
