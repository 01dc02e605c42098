//! Plain-text system and point-set files.
//!
//! Both formats start with a `space: <descriptor>` header line. A system file
//! then lists one form per line as `c1 … ck b` (meaning `c·x + b ≥ 0`); a
//! point-set file lists one point per line as `x1 … xk`. Blank lines and text
//! after `#` are ignored. Entries may be integers, fractions `p/q` or
//! decimals.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, AffineForm, Point, Rational};
use crate::spaces::SpaceDescriptor;
use crate::system::InequalitySystem;

/// Lines with content, numbered from 1, comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<SpaceDescriptor> {
    let (line, text) = lines.next().ok_or_else(|| Error::parse(1, "missing `space:` header"))?;
    let rest = text
        .strip_prefix("space:")
        .ok_or_else(|| Error::parse(line, "expected `space: <descriptor>` header"))?;
    rest.trim().parse().map_err(|e: String| Error::parse(line, e))
}

fn row(line: usize, text: &str, expected: usize) -> Result<Vec<Rational>> {
    let values = text
        .split_whitespace()
        .map(|tok| parse_rational(tok).map_err(|e| Error::parse(line, e)))
        .collect::<Result<Vec<_>>>()?;
    if values.len() != expected {
        return Err(Error::parse(line, format!("expected {expected} entries, found {}", values.len())));
    }
    Ok(values)
}

pub fn parse_system(text: &str) -> Result<InequalitySystem> {
    let mut lines = content_lines(text);
    let space = header(&mut lines)?;
    let k = space.dim();
    let forms = lines
        .map(|(line, t)| row(line, t, k + 1).map(AffineForm::from_vector))
        .collect::<Result<Vec<_>>>()?;
    InequalitySystem::new(space, forms)
}

pub fn emit_system(system: &InequalitySystem) -> String {
    let mut out = format!("space: {}\n", system.space);
    for f in &system.forms {
        writeln!(out, "{f}").expect("writing to a string");
    }
    out
}

/// Points are checked for membership in the declared space.
pub fn parse_points(text: &str) -> Result<(SpaceDescriptor, Vec<Point>)> {
    let mut lines = content_lines(text);
    let space = header(&mut lines)?;
    let k = space.dim();
    let mut points = Vec::new();
    for (line, t) in lines {
        let p = row(line, t, k)?;
        if !space.member(&p)? {
            return Err(Error::parse(line, "point is not in the declared space"));
        }
        points.push(p);
    }
    Ok((space, points))
}

pub fn emit_points(space: &SpaceDescriptor, points: &[Point]) -> String {
    let mut out = format!("space: {space}\n");
    for p in points {
        let line: Vec<String> = p.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    const SLAB: &str = "# a slab\nspace: R x Z\n0 2 -1   # 2y >= 1\n0 -2 3/2\n";

    #[test]
    fn parses_and_round_trips() {
        let s = parse_system(SLAB).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.forms[1].constant, rat(3, 2));
        assert_eq!(parse_system(&emit_system(&s)).unwrap(), s);
    }

    #[test]
    fn malformed_rational_reports_line() {
        let e = parse_system("space: Z\n1 0\n1 1//2\n").unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn wrong_arity() {
        assert!(matches!(parse_system("space: Z^2\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_system("1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn points_round_trip() {
        let (space, pts) = parse_points("space: {0,1,2,5/2} x Z\n0 0\n5/2 2\n").unwrap();
        assert_eq!(pts[1][0], rat(5, 2));
        assert_eq!(parse_points(&emit_points(&space, &pts)).unwrap(), (space, pts));
        assert!(parse_points("space: Z\n1/2\n").is_err());
    }
}
