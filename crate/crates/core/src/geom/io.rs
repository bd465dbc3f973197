//! Plain-text formats for drawings, covering lines and two-plane drawings.
//!
//! * 2D drawing: one `v x y` line per vertex, coordinates as `num/den`.
//! * Lines: one `line a b c` per line (`a x + b y = c`, normalized).
//! * Two-plane drawing: two `plane a b c d` lines, one `v x y z` line per
//!   vertex and one `e u v A|B|S` line per edge.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use super::{format_rat, parse_rat, Drawing2, EdgePlane, Line2, Plane3, Point3, Rat, P2, P3};
use crate::error::{Error, Result};

fn content_lines<R: BufRead>(input: R) -> impl Iterator<Item = Result<(usize, String)>> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, line)| match line {
            Err(e) => Some(Err(e.into())),
            Ok(l) => {
                let t = l.trim();
                (!t.is_empty() && !t.starts_with('#')).then(|| Ok((i + 1, t.to_string())))
            }
        })
}

fn rats(words: &[&str], line: usize) -> Result<Vec<Rat>> {
    words
        .iter()
        .map(|w| parse_rat(w).map_err(|e| Error::parse(line, e.to_string())))
        .collect()
}

fn index(word: &str, line: usize) -> Result<usize> {
    word.parse()
        .map_err(|_| Error::parse(line, format!("`{word}` is not a vertex index")))
}

/// Collects `v ...` records into a dense vector, rejecting gaps and repeats.
fn dense<T>(records: BTreeMap<usize, T>) -> Result<Vec<T>> {
    let count = records.len();
    let mut out = Vec::with_capacity(count);
    for (expected, (v, p)) in records.into_iter().enumerate() {
        if v != expected {
            return Err(Error::MissingPosition(expected));
        }
        out.push(p);
    }
    Ok(out)
}

pub fn write_drawing2<W: Write>(d: &Drawing2, mut out: W) -> Result<()> {
    for (v, p) in d.positions.iter().enumerate() {
        writeln!(out, "{v} {} {}", format_rat(&p.x), format_rat(&p.y))?;
    }
    Ok(())
}

pub fn drawing2_to_string(d: &Drawing2) -> String {
    let mut buf = Vec::new();
    write_drawing2(d, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ASCII")
}

pub fn read_drawing2<R: BufRead>(input: R) -> Result<Drawing2> {
    let mut records = BTreeMap::new();
    for item in content_lines(input) {
        let (line, text) = item?;
        let words: Vec<&str> = text.split_whitespace().collect();
        if words.len() != 3 {
            return Err(Error::parse(line, "expected `v x y`"));
        }
        let v = index(words[0], line)?;
        let c = rats(&words[1..], line)?;
        if records
            .insert(v, P2::new(c[0].clone(), c[1].clone()))
            .is_some()
        {
            return Err(Error::parse(line, format!("vertex {v} listed twice")));
        }
    }
    Ok(Drawing2::new(dense(records)?))
}

pub fn write_lines<W: Write>(lines: &[Line2], mut out: W) -> Result<()> {
    for l in lines {
        writeln!(out, "line {l}")?;
    }
    Ok(())
}

pub fn lines_to_string(lines: &[Line2]) -> String {
    let mut buf = Vec::new();
    write_lines(lines, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ASCII")
}

pub fn read_lines<R: BufRead>(input: R) -> Result<Vec<Line2>> {
    let mut out = Vec::new();
    for item in content_lines(input) {
        let (line, text) = item?;
        let words: Vec<&str> = text.split_whitespace().collect();
        let coeffs = match words.as_slice() {
            ["line", rest @ ..] if rest.len() == 3 => rest,
            rest if rest.len() == 3 => rest,
            _ => return Err(Error::parse(line, "expected `line a b c`")),
        };
        let c = rats(coeffs, line)?;
        let l = Line2::new(c[0].clone(), c[1].clone(), c[2].clone())
            .map_err(|e| Error::parse(line, e.to_string()))?;
        out.push(l);
    }
    Ok(out)
}

/// Raw content of a two-plane drawing file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing3Text {
    pub planes: [Plane3; 2],
    pub positions: Vec<Point3>,
    pub edges: Vec<((usize, usize), EdgePlane)>,
}

pub fn write_drawing3<W: Write>(d: &Drawing3Text, mut out: W) -> Result<()> {
    for p in &d.planes {
        writeln!(out, "plane {p}")?;
    }
    for (v, p) in d.positions.iter().enumerate() {
        writeln!(
            out,
            "v {v} {} {} {}",
            format_rat(&p.x),
            format_rat(&p.y),
            format_rat(&p.z)
        )?;
    }
    for &((u, v), plane) in &d.edges {
        writeln!(out, "e {u} {v} {}", plane.tag())?;
    }
    Ok(())
}

pub fn read_drawing3<R: BufRead>(input: R) -> Result<Drawing3Text> {
    let mut planes = Vec::new();
    let mut records = BTreeMap::new();
    let mut edges = Vec::new();
    for item in content_lines(input) {
        let (line, text) = item?;
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            ["plane", rest @ ..] if rest.len() == 4 => {
                let c = rats(rest, line)?;
                let p = Plane3::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                planes.push(p);
            }
            ["v", v, rest @ ..] if rest.len() == 3 => {
                let v = index(v, line)?;
                let c = rats(rest, line)?;
                let p = P3::new(c[0].clone(), c[1].clone(), c[2].clone());
                if records.insert(v, p).is_some() {
                    return Err(Error::parse(line, format!("vertex {v} listed twice")));
                }
            }
            ["e", u, v, tag] => {
                let plane = EdgePlane::from_tag(tag)
                    .ok_or_else(|| Error::parse(line, format!("unknown plane tag `{tag}`")))?;
                edges.push(((index(u, line)?, index(v, line)?), plane));
            }
            _ => return Err(Error::parse(line, "unrecognized record")),
        }
    }
    let planes: [Plane3; 2] = planes
        .try_into()
        .map_err(|_| Error::parse(0, "expected exactly two `plane` records"))?;
    Ok(Drawing3Text {
        planes,
        positions: dense(records)?,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ratio, Point2};

    #[test]
    fn drawing2_roundtrip() {
        let d = Drawing2::new(vec![
            Point2::new(ratio(1, 3), ratio(-5, 2)),
            Point2::int(0, 7),
        ]);
        let text = drawing2_to_string(&d);
        assert_eq!(text, "0 1/3 -5/2\n1 0/1 7/1\n");
        assert_eq!(read_drawing2(text.as_bytes()).unwrap(), d);
    }

    #[test]
    fn drawing2_gaps_are_errors() {
        assert!(matches!(
            read_drawing2("0 0 0\n2 1 1\n".as_bytes()),
            Err(Error::MissingPosition(1))
        ));
        assert!(read_drawing2("0 0\n".as_bytes()).is_err());
    }

    #[test]
    fn lines_accept_bare_coefficients() {
        let ls = read_lines("line 0/1 1/1 0/1\n2 0 4\n".as_bytes()).unwrap();
        assert_eq!(ls[0], Line2::x_axis());
        assert_eq!(ls[1].c, crate::geom::rat(2));
        assert_eq!(read_lines(lines_to_string(&ls).as_bytes()).unwrap(), ls);
    }

    #[test]
    fn drawing3_needs_two_planes() {
        assert!(read_drawing3("plane 0 0 1 0\nv 0 0 0 0\n".as_bytes()).is_err());
    }
}
