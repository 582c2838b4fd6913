use serde::{Deserialize, Serialize};

use super::{Passage, Sign, VirtualLinkDiagram};
use crate::error::{ParseError, ParseErrorKind};

/// JSON form: `{"components":[["O1+","U1+"]],"freeLoops":0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiagramJson {
    pub components: Vec<Vec<String>>,
    #[serde(default)]
    pub free_loops: usize,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(ParseErrorKind::Syntax(msg.into()), self.pos + 1)
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::new(ParseErrorKind::Syntax("number too large".into()), start + 1))
    }

    fn pass(&mut self) -> Result<(u64, Passage, Sign), ParseError> {
        let passage = match self.peek() {
            Some(b'O') => Passage::Over,
            Some(b'U') => Passage::Under,
            _ => return Err(self.err("expected 'O' or 'U'")),
        };
        self.pos += 1;
        let label_pos = self.pos;
        let label = self.number()?;
        if label == 0 {
            return Err(ParseError::new(
                ParseErrorKind::Syntax("crossing labels are positive".into()),
                label_pos + 1,
            ));
        }
        let sign = match self.peek() {
            Some(b'+') => Sign::Positive,
            Some(b'-') => Sign::Negative,
            _ => return Err(self.err("expected '+' or '-'")),
        };
        self.pos += 1;
        Ok((label, passage, sign))
    }
}

impl VirtualLinkDiagram {
    /// Parses the text form, e.g. `O1+O2+U1+U2+`, `O1+|U1+`, `@1`, `O1-U1-@2`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
        let mut components: Vec<Vec<(u64, Passage, Sign)>> = Vec::new();
        // column (1-based) of each pass in flat order
        let mut columns = Vec::new();
        let mut free_loops = 0usize;

        cur.skip_ws();
        if cur.peek().is_none() {
            return Err(cur.err("empty input"));
        }
        if cur.peek() != Some(b'@') {
            loop {
                let mut comp = Vec::new();
                cur.skip_ws();
                while matches!(cur.peek(), Some(b'O' | b'U')) {
                    columns.push(cur.pos + 1);
                    comp.push(cur.pass()?);
                    cur.skip_ws();
                }
                if comp.is_empty() {
                    return Err(cur.err("empty component"));
                }
                components.push(comp);
                match cur.peek() {
                    Some(b'|') => cur.pos += 1,
                    _ => break,
                }
            }
        }
        cur.skip_ws();
        if cur.peek() == Some(b'@') {
            cur.pos += 1;
            cur.skip_ws();
            free_loops = cur.number()? as usize;
            cur.skip_ws();
        }
        if cur.peek().is_some() {
            return Err(cur.err(format!("unexpected character '{}'", cur.peek().unwrap() as char)));
        }
        VirtualLinkDiagram::from_labels(&components, free_loops)
            .map_err(|(kind, flat)| ParseError::new(kind, columns[flat]))
    }

    /// Text form in stored order, labels `1..=n`.
    pub fn serialize(&self) -> String {
        let mut out = self
            .components()
            .iter()
            .map(|c| c.iter().map(|p| p.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("|");
        if self.free_loops() > 0 || out.is_empty() {
            out.push('@');
            out.push_str(&self.free_loops().to_string());
        }
        out
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            components: self
                .components()
                .iter()
                .map(|c| c.iter().map(|p| p.to_string()).collect())
                .collect(),
            free_loops: self.free_loops(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self, ParseError> {
        let mut text = json.components.iter().map(|c| c.concat()).collect::<Vec<_>>().join("|");
        if json.free_loops > 0 || text.is_empty() {
            text.push_str(&format!("@{}", json.free_loops));
        }
        Self::parse(&text)
    }
}
