//! Corpus files: one code per line, `#` starts a comment. A comment on
//! the same line as a code names it.

use std::path::Path;

use super::VirtualLinkDiagram;
use crate::error::ParseError;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub line: usize,
    pub code: String,
    pub name: Option<String>,
    pub diagram: Result<VirtualLinkDiagram, ParseError>,
}

pub fn parse_corpus(text: &str) -> Vec<CorpusEntry> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let (code, comment) = match raw.split_once('#') {
                Some((c, n)) => (c.trim(), Some(n.trim())),
                None => (raw.trim(), None),
            };
            if code.is_empty() {
                return None;
            }
            Some(CorpusEntry {
                line: i + 1,
                code: code.to_string(),
                name: comment.filter(|n| !n.is_empty()).map(str::to_string),
                diagram: VirtualLinkDiagram::parse(code).map_err(|e| e.at_line(i + 1)),
            })
        })
        .collect()
}

/// Reads a corpus file, or every `.txt` file of a directory in name order.
pub fn load_corpus(path: &Path) -> std::io::Result<Vec<CorpusEntry>> {
    if path.is_dir() {
        let mut files: Vec<_> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "txt"))
            .collect();
        files.sort();
        let mut out = vec![];
        for f in files {
            out.extend(parse_corpus(&std::fs::read_to_string(f)?));
        }
        Ok(out)
    } else {
        Ok(parse_corpus(&std::fs::read_to_string(path)?))
    }
}
