//! The TRI text format.
//!
//! ```text
//! # comment
//! tets 2
//! 1:0123 1:0123 1:0123 1:0123
//! 0:0123 0:0123 0:0123 0:0123
//! ```
//!
//! Line `i` after the header lists, for facets 0..3 of tetrahedron `i`, the
//! target tetrahedron and the images of vertices 0,1,2,3 under the gluing.

use super::{Gluing, Perm4, Triangulation, TriangulationError};
use std::fmt::Write;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> TriangulationError {
    TriangulationError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a closed triangulation from TRI text.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, TriangulationError> {
    // (line number, column offset, token)
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            None
        } else {
            Some((i + 1, content))
        }
    });

    let (header_line, header) = lines.next().ok_or_else(|| syntax(1, 1, "missing `tets <n>` header"))?;
    let mut tokens = tokens_with_columns(header);
    let n = match (tokens.next(), tokens.next(), tokens.next()) {
        (Some((_, "tets")), Some((col, count)), None) => count
            .parse::<usize>()
            .map_err(|_| syntax(header_line, col, format!("invalid tetrahedron count `{count}`")))?,
        (Some((col, _)), _, _) => return Err(syntax(header_line, col, "expected `tets <n>`")),
        _ => return Err(syntax(header_line, 1, "expected `tets <n>`")),
    };
    if n == 0 {
        return Err(syntax(header_line, 1, "triangulation has no tetrahedra"));
    }

    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::with_capacity(n);
    for tet in 0..n {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| syntax(header_line, 1, format!("expected {n} tetrahedron lines, found {tet}")))?;
        let entries: Vec<(usize, &str)> = tokens_with_columns(line).collect();
        if entries.len() != 4 {
            return Err(syntax(
                line_no,
                entries.get(4).map_or(1, |e| e.0),
                format!("expected 4 facet entries, found {}", entries.len()),
            ));
        }
        let mut row = [None; 4];
        for (facet, &(col, entry)) in entries.iter().enumerate() {
            row[facet] = Some(parse_entry(entry, n, line_no, col)?);
        }
        gluings.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(syntax(line_no, 1, "unexpected content after the last tetrahedron"));
    }

    // Each facet must be the target of exactly one gluing.
    let mut targeted = vec![[false; 4]; n];
    for row in &gluings {
        for (facet, g) in row.iter().enumerate() {
            let g = g.expect("all facets parsed");
            let tf = g.perm.apply(facet);
            if targeted[g.tet][tf] {
                return Err(TriangulationError::FacetGluedTwice { tet: g.tet, facet: tf });
            }
            targeted[g.tet][tf] = true;
        }
    }
    Triangulation::new(gluings)
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (offset + 1, tok)
    })
}

fn parse_entry(entry: &str, n: usize, line: usize, col: usize) -> Result<Gluing, TriangulationError> {
    let (tet, digits) = entry
        .split_once(':')
        .ok_or_else(|| syntax(line, col, format!("expected `<tet>:<perm>`, found `{entry}`")))?;
    let tet: usize = tet
        .parse()
        .map_err(|_| syntax(line, col, format!("invalid tetrahedron index `{tet}`")))?;
    if tet >= n {
        return Err(syntax(line, col, format!("tetrahedron index {tet} out of range")));
    }
    let perm_col = col + entry.find(':').unwrap_or(0) + 1;
    let bytes = digits.as_bytes();
    if bytes.len() != 4 || !bytes.iter().all(|b| (b'0'..=b'3').contains(b)) {
        return Err(syntax(line, perm_col, format!("invalid permutation `{digits}`")));
    }
    let images = [bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0', bytes[3] - b'0'];
    let perm = Perm4::new(images)
        .ok_or_else(|| syntax(line, perm_col, format!("`{digits}` is not a permutation")))?;
    Ok(Gluing::new(tet, perm))
}

pub(super) fn write_triangulation(t: &Triangulation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "tets {}", t.size());
    for row in t.gluings() {
        let entries: Vec<String> = row
            .iter()
            .map(|g| match g {
                Some(g) => format!("{}:{}", g.tet, g.perm),
                None => "-".to_string(),
            })
            .collect();
        let _ = writeln!(out, "{}", entries.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOUBLE: &str = "# two tetrahedra, identity gluings\ntets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n";

    #[test]
    fn parses_identity_double() {
        let t = parse_triangulation(DOUBLE).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!((t.vertex_count(), t.edge_count(), t.triangle_count()), (4, 6, 4));
        assert_eq!(parse_triangulation(&t.to_tri_string()).unwrap(), t);
    }

    #[test]
    fn reports_syntax_position() {
        let err = parse_triangulation("tets 1\n0:1230 0:12x0 0:0123 0:0123\n").unwrap_err();
        assert_eq!(
            err,
            TriangulationError::Syntax {
                line: 2,
                column: 10,
                message: "invalid permutation `12x0`".into()
            }
        );
        let err = parse_triangulation("tet 1\n").unwrap_err();
        assert!(matches!(err, TriangulationError::Syntax { line: 1, column: 1, .. }));
    }

    #[test]
    fn detects_double_gluing() {
        let text = "tets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:1230\n";
        let err = parse_triangulation(text).unwrap_err();
        assert!(matches!(
            err,
            TriangulationError::FacetGluedTwice { .. } | TriangulationError::InconsistentGluing { .. }
        ));
    }

    #[test]
    fn detects_broken_involution() {
        // Facet 3 of tet 0 maps to facet 0 of itself with a 4-cycle, but
        // facet 0 claims the identity-like swap back.
        let text = "tets 1\n0:3120 0:0321 0:0321 0:3120\n";
        let err = parse_triangulation(text).unwrap_err();
        assert!(matches!(
            err,
            TriangulationError::InconsistentGluing { .. } | TriangulationError::FacetGluedTwice { .. }
        ));
    }
}
