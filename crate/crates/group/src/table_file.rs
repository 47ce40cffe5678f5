use crate::{GroupError, GroupTable, Notation};

/// Parse a Cayley-table document.
///
/// Line 1 holds the order `n`, line 2 holds `n` element names, and the next
/// `n` lines hold `n` indices each: row `a`, column `b` is the index of `a·b`.
/// Blank lines and lines starting with `#` are skipped. Errors carry the
/// 1-based line number of the offending line.
pub fn parse_table_text(text: &str) -> Result<GroupTable, GroupError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, first) = lines.next().ok_or(GroupError::Malformed { line: 1, msg: "empty file".into() })?;
    let n: usize = first
        .parse()
        .map_err(|_| GroupError::Malformed { line: line_no, msg: format!("expected the order, found {first:?}") })?;
    if n == 0 {
        return Err(GroupError::Malformed { line: line_no, msg: "order must be positive".into() });
    }

    let (line_no, name_line) =
        lines.next().ok_or(GroupError::Malformed { line: line_no + 1, msg: "missing element names".into() })?;
    let names: Vec<String> = name_line.split_whitespace().map(str::to_string).collect();
    if names.len() != n {
        return Err(GroupError::Malformed { line: line_no, msg: format!("expected {n} names, found {}", names.len()) });
    }

    let mut rows = Vec::with_capacity(n);
    let mut last = line_no;
    for _ in 0..n {
        let (line_no, row) =
            lines.next().ok_or(GroupError::Malformed { line: last + 1, msg: "table has too few rows".into() })?;
        last = line_no;
        let parsed: Result<Vec<usize>, _> = row.split_whitespace().map(str::parse::<usize>).collect();
        let parsed =
            parsed.map_err(|_| GroupError::Malformed { line: line_no, msg: "non-integer table entry".into() })?;
        if parsed.len() != n {
            return Err(GroupError::Malformed {
                line: line_no,
                msg: format!("expected {n} entries, found {}", parsed.len()),
            });
        }
        if let Some(&bad) = parsed.iter().find(|&&v| v >= n) {
            return Err(GroupError::Malformed { line: line_no, msg: format!("entry {bad} is not below {n}") });
        }
        rows.push(parsed);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(GroupError::Malformed { line: line_no, msg: "unexpected trailing content".into() });
    }
    GroupTable::from_table(names, rows, Notation::Named)
}
