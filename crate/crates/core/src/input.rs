//! Readers for ranked-list documents and X/L parameter values.
//!
//! Two layouts are accepted. A plain list has one `0` or `1` per line, top
//! rank first. A labeled list is a TSV of `item_id<TAB>score` (an optional
//! header row is skipped), sorted by descending score, together with a
//! membership document listing the ids that count as 1's.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::list::RankedList;

/// A count given either as an integer or as a percentage (`"15%"`) of `total`.
/// Percentages round half-up.
pub fn parse_count(text: &str, total: usize, field: &str) -> Result<usize> {
    let t = text.trim();
    if let Some(pct) = t.strip_suffix('%') {
        let pct: f64 = pct
            .trim()
            .parse()
            .map_err(|_| Error::parse(field, format!("invalid percentage '{t}'")))?;
        if !(0.0..=100.0).contains(&pct) {
            return Err(Error::domain(format!("{field}={t} outside 0%..=100%")));
        }
        // the small slack keeps exact halves from rounding down through fp error
        let value = pct * total as f64 / 100.0;
        return Ok((value + 0.5 + 1e-9).floor() as usize);
    }
    if let Ok(n) = t.parse::<usize>() {
        return Ok(n);
    }
    match t.parse::<i64>() {
        Ok(n) => Err(Error::domain(format!("{field}={n} must not be negative"))),
        Err(_) => Err(Error::parse(field, format!("invalid count '{t}'"))),
    }
}

/// One `0`/`1` token per line. Blank lines are ignored.
pub fn parse_plain_list(text: &str) -> Result<RankedList> {
    let mut v = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match line.trim() {
            "" => continue,
            "0" => v.push(false),
            "1" => v.push(true),
            other => {
                return Err(Error::parse(
                    format!("line {}", i + 1),
                    format!("expected 0 or 1, got '{other}'"),
                ))
            }
        }
    }
    Ok(RankedList::new(v))
}

/// `(item_id, score)` rows of a TSV score table, in file order.
pub fn parse_scores(text: &str) -> Result<Vec<(String, f64)>> {
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    let mut first = true;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let header_allowed = std::mem::replace(&mut first, false);
        let at = format!("line {}", i + 1);
        let mut fields = line.split('\t');
        let id = fields.next().unwrap_or("").trim();
        let score = fields
            .next()
            .ok_or_else(|| Error::parse(&at, "expected item_id<TAB>score"))?
            .trim();
        if fields.next().is_some() {
            return Err(Error::parse(&at, "expected exactly two tab-separated fields"));
        }
        let score: f64 = match score.parse() {
            Ok(x) => x,
            Err(_) if header_allowed => continue,
            Err(_) => return Err(Error::parse(&at, format!("score: invalid number '{score}'"))),
        };
        if score.is_nan() {
            return Err(Error::parse(&at, "score: NaN"));
        }
        if id.is_empty() {
            return Err(Error::parse(&at, "item_id: empty"));
        }
        if !seen.insert(id.to_string()) {
            return Err(Error::parse(&at, format!("item_id: duplicate '{id}'")));
        }
        rows.push((id.to_string(), score));
    }
    Ok(rows)
}

/// Item ids, one per line.
pub fn parse_membership(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

/// A labeled list and the membership ids that matched no scored item.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledList {
    pub list: RankedList,
    /// Item ids in rank order.
    pub ids: Vec<String>,
    pub unknown_members: Vec<String>,
}

/// Sort by descending score (ties keep file order) and label members as 1.
pub fn labeled_list(mut scores: Vec<(String, f64)>, members: &[String]) -> LabeledList {
    scores.sort_by(|a, b| b.1.total_cmp(&a.1));
    let member_set: HashSet<&str> = members.iter().map(String::as_str).collect();
    let ids: HashSet<&str> = scores.iter().map(|(id, _)| id.as_str()).collect();
    let unknown_members = members
        .iter()
        .filter(|m| !ids.contains(m.as_str()))
        .cloned()
        .collect();
    let list = RankedList::new(
        scores
            .iter()
            .map(|(id, _)| member_set.contains(id.as_str()))
            .collect(),
    );
    LabeledList {
        list,
        ids: scores.into_iter().map(|(id, _)| id).collect(),
        unknown_members,
    }
}

/// A testable document holds at least one 1 and one 0.
pub fn check_mixed(list: &RankedList, source: &str) -> Result<()> {
    if list.ones() == 0 {
        return Err(Error::parse(source, "no 1's in the list"));
    }
    if list.zeros() == 0 {
        return Err(Error::parse(source, "no 0's in the list"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_percentages() {
        assert_eq!(parse_count("7", 100, "x").unwrap(), 7);
        assert_eq!(parse_count("15%", 100, "x").unwrap(), 15);
        assert_eq!(parse_count("25%", 10_000, "l").unwrap(), 2500);
        assert_eq!(parse_count("50%", 5, "x").unwrap(), 3);
        assert_eq!(parse_count("10%", 14, "x").unwrap(), 1);
        assert_eq!(parse_count("0%", 14, "x").unwrap(), 0);
        assert!(matches!(parse_count("abc", 5, "x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_count("-1", 5, "x"), Err(Error::Domain(_))));
        assert!(matches!(parse_count("120%", 5, "x"), Err(Error::Domain(_))));
    }

    #[test]
    fn plain_lists() {
        let l = parse_plain_list("1\n0\n\n1\r\n").unwrap();
        assert_eq!(l, RankedList::from_labels(&[1, 0, 1]).unwrap());
        let e = parse_plain_list("1\n0\n2\n").unwrap_err();
        assert_eq!(e.to_string(), "parse error at line 3: expected 0 or 1, got '2'");
    }

    #[test]
    fn labeled_documents() {
        let scores = parse_scores("id\tscore\na\t0.5\nb\t2.0\nc\t1.0\nd\t0.5\n").unwrap();
        assert_eq!(scores.len(), 4);
        let members = parse_membership("d\nb\nzzz\n");
        let doc = labeled_list(scores, &members);
        assert_eq!(doc.ids, vec!["b", "c", "a", "d"]);
        assert_eq!(doc.list, RankedList::from_labels(&[1, 0, 0, 1]).unwrap());
        assert_eq!(doc.unknown_members, vec!["zzz"]);
    }

    #[test]
    fn labeled_errors() {
        assert!(parse_scores("a\t1\na\t2\n").is_err());
        assert!(parse_scores("a\t1\nb\tx\n").is_err());
        assert!(parse_scores("a 1\n").is_err());
        assert!(parse_scores("a\t1\t3\n").is_err());
        let e = parse_scores("a\t1\nb\tNaN\n").unwrap_err();
        assert!(e.to_string().contains("line 2"));
    }

    #[test]
    fn mixed_requirement() {
        assert!(check_mixed(&RankedList::from_labels(&[1, 1]).unwrap(), "input").is_err());
        assert!(check_mixed(&RankedList::from_labels(&[0, 0]).unwrap(), "input").is_err());
        assert!(check_mixed(&RankedList::from_labels(&[0, 1]).unwrap(), "input").is_ok());
    }
}
