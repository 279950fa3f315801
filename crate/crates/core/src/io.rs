//! The `hypertable v1` text format.
//!
//! ```text
//! hypertable v1
//! order: 2
//! 0 0: 0
//! 0 1: 0 1
//! 1 0: 1
//! 1 1: 0 1
//! ```
//!
//! An optional `names: ...` line after `order` attaches display names. Blank
//! lines and `#` comments are accepted on input; [`serialize_table`] emits
//! the canonical form only (row-major cells, ascending members, single
//! spaces, trailing newline).

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperop::{Carrier, ElementSet, HyperOp};

pub const HEADER: &str = "hypertable v1";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDocument {
    pub version: u32,
    pub order: usize,
    pub names: Option<Vec<String>>,
    /// Row-major; each list sorted, duplicate-free and nonempty.
    pub cells: Vec<Vec<usize>>,
}

impl TableDocument {
    pub fn from_hyperop(h: &HyperOp) -> Self {
        TableDocument {
            version: VERSION,
            order: h.order(),
            names: None,
            cells: h.cells().iter().map(|c| c.iter().collect()).collect(),
        }
    }

    pub fn to_hyperop(&self) -> Result<HyperOp> {
        let carrier = Carrier::new(self.order)?;
        let cells = self
            .cells
            .iter()
            .map(|members| {
                members.iter().try_fold(ElementSet::EMPTY, |s, &e| {
                    carrier.check_element(e)?;
                    Ok(s.union(ElementSet::singleton(e)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HyperOp::new(carrier, cells)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what} `{token}`")))
}

/// Parses a document without building the table.
pub fn parse_document(text: &str) -> Result<TableDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "empty document"))?;
    if header != HEADER {
        let message = match header.strip_prefix("hypertable ") {
            Some(tag) => format!("unknown version tag `{tag}`"),
            None => format!("expected `{HEADER}` header"),
        };
        return Err(parse_error(line, message));
    }

    let (line, order_line) = lines
        .next()
        .ok_or_else(|| parse_error(line + 1, "missing `order:` line"))?;
    let order = order_line
        .strip_prefix("order:")
        .ok_or_else(|| parse_error(line, "expected `order: <n>`"))
        .and_then(|v| parse_index(v.trim(), line, "order"))?;
    Carrier::new(order).map_err(|e| parse_error(line, e.to_string()))?;

    let mut names = None;
    let mut cells: Vec<Option<Vec<usize>>> = vec![None; order * order];
    let mut seen = 0;
    let mut last_line = line;

    for (line, content) in lines {
        last_line = line;
        if let Some(rest) = content.strip_prefix("names:") {
            if names.is_some() || seen > 0 {
                return Err(parse_error(line, "`names:` must directly follow `order:`"));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if list.len() != order {
                return Err(parse_error(
                    line,
                    format!("expected {order} names, got {}", list.len()),
                ));
            }
            for (i, name) in list.iter().enumerate() {
                if list[..i].contains(name) {
                    return Err(parse_error(line, format!("duplicate name `{name}`")));
                }
            }
            names = Some(list);
            continue;
        }

        let (lhs, rhs) = content
            .split_once(':')
            .ok_or_else(|| parse_error(line, "expected `x y: e1 e2 ...`"))?;
        let operands: Vec<&str> = lhs.split_whitespace().collect();
        let [x, y] = operands[..] else {
            return Err(parse_error(line, "expected two operands before `:`"));
        };
        let x = parse_index(x, line, "operand")?;
        let y = parse_index(y, line, "operand")?;
        if x >= order || y >= order {
            return Err(parse_error(line, format!("element out of range: ({x},{y})")));
        }

        let mut members = Vec::new();
        for token in rhs.split_whitespace() {
            let e = parse_index(token, line, "element")?;
            if e >= order {
                return Err(parse_error(line, format!("element out of range: {e}")));
            }
            members.push(e);
        }
        if members.is_empty() {
            return Err(parse_error(line, format!("empty hyperproduct at ({x},{y})")));
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_error(line, format!("duplicate element in cell ({x},{y})")));
        }

        let slot = &mut cells[x * order + y];
        if slot.is_some() {
            return Err(parse_error(line, format!("cell ({x},{y}) given twice")));
        }
        *slot = Some(members);
        seen += 1;
    }

    if seen != order * order {
        return Err(parse_error(
            last_line,
            format!("expected {} cells, got {seen}", order * order),
        ));
    }

    Ok(TableDocument {
        version: VERSION,
        order,
        names,
        cells: cells.into_iter().map(|c| c.expect("all cells seen")).collect(),
    })
}

/// Canonical text of a document.
pub fn serialize_document(doc: &TableDocument) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "order: {}", doc.order).unwrap();
    if let Some(names) = &doc.names {
        writeln!(out, "names: {}", names.join(" ")).unwrap();
    }
    for (i, members) in doc.cells.iter().enumerate() {
        write!(out, "{} {}:", i / doc.order, i % doc.order).unwrap();
        for e in members {
            write!(out, " {e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_table(text: &str) -> Result<HyperOp> {
    parse_document(text)?.to_hyperop()
}

pub fn serialize_table(h: &HyperOp) -> String {
    serialize_document(&TableDocument::from_hyperop(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEFT_ZERO: &str = "hypertable v1\norder: 2\n0 0: 0\n0 1: 0\n1 0: 1\n1 1: 1\n";

    fn err_line(text: &str) -> (usize, String) {
        match parse_table(text) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn order_one_document() {
        let h = parse_table("hypertable v1\norder: 1\n0 0: 0\n").unwrap();
        assert_eq!(h, HyperOp::left_zero(1).unwrap());
    }

    #[test]
    fn left_zero_round_trips_byte_exactly() {
        let h = parse_table(LEFT_ZERO).unwrap();
        assert_eq!(h, HyperOp::left_zero(2).unwrap());
        assert_eq!(serialize_table(&h), LEFT_ZERO);
    }

    #[test]
    fn lenient_input_canonicalizes() {
        let text = "# comment\nhypertable v1\n  order: 2\n\n1 1: 1\n0 0:   0\n0 1: 1 0\n1 0: 1\n";
        let h = parse_table(text).unwrap();
        assert_eq!(
            serialize_table(&h),
            "hypertable v1\norder: 2\n0 0: 0\n0 1: 0 1\n1 0: 1\n1 1: 1\n"
        );
    }

    #[test]
    fn names_round_trip() {
        let text = "hypertable v1\norder: 2\nnames: e a\n0 0: 0\n0 1: 1\n1 0: 1\n1 1: 0\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.names.as_deref(), Some(&["e".to_string(), "a".to_string()][..]));
        assert_eq!(serialize_document(&doc), text);
        assert_eq!(parse_document(&serialize_document(&doc)).unwrap(), doc);
    }

    #[test]
    fn errors_name_the_offending_line() {
        let (line, msg) = err_line("hypertable v1\norder: 2\n0 0: 0\n0 1:\n1 0: 1\n1 1: 1\n");
        assert_eq!(line, 4);
        assert_eq!(msg, "empty hyperproduct at (0,1)");

        let (line, msg) = err_line("hypertable v1\norder: 2\n0 0: 0\n0 1: 2\n1 0: 1\n1 1: 1\n");
        assert_eq!(line, 4);
        assert!(msg.starts_with("element out of range"), "{msg}");

        let (line, msg) = err_line("hypertable v1\norder: 2\n0 0: 0\n0 1: 0\n1 0: 1\n");
        assert_eq!(line, 5);
        assert_eq!(msg, "expected 4 cells, got 3");

        let (line, msg) = err_line("hypertable v2\norder: 1\n0 0: 0\n");
        assert_eq!(line, 1);
        assert_eq!(msg, "unknown version tag `v2`");

        let (line, msg) = err_line("hypertable v1\norder: 1\n0 0: 0\n0 0: 0\n");
        assert_eq!(line, 4);
        assert!(msg.contains("given twice"));

        let (line, _) = err_line("hypertable v1\norder: 0\n");
        assert_eq!(line, 2);

        let (line, _) = err_line("hypertable v1\norder: 2\n0 0: 0 0\n");
        assert_eq!(line, 3);

        let (line, _) = err_line("hypertable v1\norder: 2\n0 x: 0\n");
        assert_eq!(line, 3);

        let (line, _) = err_line("");
        assert_eq!(line, 1);
    }
}
