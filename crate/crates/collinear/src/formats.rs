//! Text formats: cubic fixtures, point lists and bipartite relations.
//!
//! All three share the same conventions: `#` starts a comment, blank lines
//! are ignored, and errors report 1-based line numbers.
//!
//! ```text
//! # cubic fixture
//! field: Q
//! certificate: asserted
//! 0 2 0 1 : 1
//! 3 0 0 0 : -1/2
//! ```
//!
//! A point file holds one point per line as colon-separated coordinates,
//! `1:2:-3:4` or over Q(i) `1+i:2:0:-i`. A relation file starts with the
//! header `left right` (vertex counts) followed by one `a b` edge per line.

use collinear_core::orchard::BipartiteRel;
use collinear_core::surface::SmoothnessCertificate;
use collinear_core::{CubicForm, ProjPoint, Scalar};

use crate::error::{parse_err, Error, Result};

/// Field tag and body of a fixture file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicText<'a> {
    pub field: &'a str,
    pub asserted: bool,
    /// `(line number, exponents, coefficient text)`.
    pub terms: Vec<(usize, [u8; 4], &'a str)>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

pub fn split_cubic(text: &str) -> Result<CubicText<'_>> {
    let mut field = None;
    let mut asserted = false;
    let mut terms = Vec::new();
    for (n, line) in content_lines(text) {
        if let Some(v) = line.strip_prefix("field:") {
            let v = v.trim();
            if v != "Q" && v != "Q(i)" {
                return Err(parse_err(n, format!("unknown field {v:?}")));
            }
            field = Some(v);
            continue;
        }
        if let Some(v) = line.strip_prefix("certificate:") {
            match v.trim() {
                "asserted" => asserted = true,
                "none" => asserted = false,
                other => return Err(parse_err(n, format!("unknown certificate {other:?}"))),
            }
            continue;
        }
        let (exps, coeff) = line.split_once(':').ok_or_else(|| parse_err(n, "expected `i j k l : coefficient`"))?;
        let e: Vec<u8> = exps
            .split_whitespace()
            .map(|t| t.parse::<u8>().map_err(|_| parse_err(n, format!("bad exponent {t:?}"))))
            .collect::<Result<_>>()?;
        let e: [u8; 4] = e.try_into().map_err(|_| parse_err(n, "expected four exponents"))?;
        if e.iter().map(|&x| u32::from(x)).sum::<u32>() != 3 {
            return Err(parse_err(n, "exponents must sum to 3"));
        }
        terms.push((n, e, coeff.trim()));
    }
    let field = field.ok_or_else(|| parse_err(1, "missing `field:` header"))?;
    Ok(CubicText { field, asserted, terms })
}

/// Parses a fixture over `F`; the header must name `F`.
pub fn parse_cubic<F: Scalar>(text: &str, name: &str) -> Result<(CubicForm<F>, SmoothnessCertificate)> {
    let t = split_cubic(text)?;
    if t.field != F::FIELD {
        return Err(Error::FieldMismatch { expected: F::FIELD, found: if t.field == "Q" { "Q" } else { "Q(i)" } });
    }
    let mut form = CubicForm::<F>::zero();
    for (n, e, c) in t.terms {
        let c: F = c.parse().map_err(|e| parse_err(n, format!("{e}")))?;
        let sum = form.coeff(&e).add_ref(&c);
        form.set_coeff(&e, sum);
    }
    if form.is_zero() {
        return Err(parse_err(1, "form is identically zero"));
    }
    let cert = if t.asserted { SmoothnessCertificate::Asserted(name.to_string()) } else { SmoothnessCertificate::Unverified };
    Ok((form, cert))
}

pub fn render_cubic<F: Scalar>(form: &CubicForm<F>, asserted: bool) -> String {
    let mut out = format!("field: {}\n", F::FIELD);
    if asserted {
        out.push_str("certificate: asserted\n");
    }
    for (e, c) in form.terms() {
        out.push_str(&format!("{} {} {} {} : {}\n", e[0], e[1], e[2], e[3], c));
    }
    out
}

pub fn parse_points<F: Scalar>(text: &str) -> Result<Vec<ProjPoint<F>>> {
    content_lines(text)
        .map(|(n, line)| line.parse::<ProjPoint<F>>().map_err(|e| parse_err(n, format!("{e}"))))
        .collect()
}

pub fn render_points<F: Scalar>(pts: &[ProjPoint<F>]) -> String {
    pts.iter().map(|p| format!("{p}\n")).collect()
}

pub fn parse_relation(text: &str) -> Result<BipartiteRel> {
    let mut lines = content_lines(text);
    let pair = |n: usize, line: &str| -> Result<(usize, usize)> {
        let v: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(n, format!("bad integer {t:?}"))))
            .collect::<Result<_>>()?;
        match v[..] {
            [a, b] => Ok((a, b)),
            _ => Err(parse_err(n, "expected two integers")),
        }
    };
    let (n, head) = lines.next().ok_or_else(|| parse_err(1, "missing `left right` header"))?;
    let (left, right) = pair(n, head)?;
    let edges = lines.map(|(n, l)| pair(n, l)).collect::<Result<Vec<_>>>()?;
    Ok(BipartiteRel::new(left, right, edges)?)
}

pub fn render_relation(e: &BipartiteRel) -> String {
    let mut out = format!("{} {}\n", e.left(), e.right());
    for (a, b) in e.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use collinear_core::{GaussRat, Rat};

    #[test]
    fn cubic_roundtrip() {
        let text = "# c\nfield: Q\n0 2 0 1 : 1\n3 0 0 0 : -1/2 # tail\n\n";
        let (form, cert) = parse_cubic::<Rat>(text, "T").unwrap();
        assert_eq!(cert, SmoothnessCertificate::Unverified);
        assert_eq!(form.coeff(&[3, 0, 0, 0]), &Rat::frac(-1, 2));
        let again = parse_cubic::<Rat>(&render_cubic(&form, true), "T").unwrap();
        assert_eq!(again.0, form);
        assert_eq!(again.1, SmoothnessCertificate::Asserted("T".into()));
    }

    #[test]
    fn repeated_monomials_add() {
        let (form, _) = parse_cubic::<Rat>("field: Q\n1 1 1 0 : 2\n1 1 1 0 : 3\n", "T").unwrap();
        assert_eq!(form.coeff(&[1, 1, 1, 0]), &Rat::int(5));
    }

    #[test]
    fn cubic_errors_carry_line_numbers() {
        let bad = [
            ("0 2 0 1 : 1\n", 1),
            ("field: R\n", 1),
            ("field: Q\n1 1 1 : 1\n", 2),
            ("field: Q\n1 1 1 1 : 1\n", 2),
            ("field: Q\n# x\n1 1 1 0 : one\n", 3),
            ("field: Q\n1 1 1 0\n", 2),
        ];
        for (text, line) in bad {
            match parse_cubic::<Rat>(text, "T") {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(parse_cubic::<Rat>("field: Q(i)\n3 0 0 0 : i\n", "T"), Err(Error::FieldMismatch { .. })));
        assert!(parse_cubic::<GaussRat>("field: Q(i)\n3 0 0 0 : 1+i\n", "T").is_ok());
    }

    #[test]
    fn points_roundtrip() {
        let pts = parse_points::<Rat>("1:2:3:4\n# c\n-2:-4:-6:-8\n0:0:1/2:1\n").unwrap();
        assert_eq!(pts[0], pts[1]);
        assert_eq!(parse_points::<Rat>(&render_points(&pts)).unwrap(), pts);
        let g = parse_points::<GaussRat>("1+i:2:0:-i\n").unwrap();
        assert_eq!(parse_points::<GaussRat>(&render_points(&g)).unwrap(), g);
        assert!(matches!(parse_points::<Rat>("1:2:3:4\n0:0:0:0\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn relation_roundtrip() {
        let e = parse_relation("# r\n3 2\n0 1\n2 0\n").unwrap();
        assert_eq!((e.left(), e.right(), e.edges().len()), (3, 2, 2));
        assert_eq!(parse_relation(&render_relation(&e)).unwrap(), e);
        assert!(parse_relation("2 2\n5 0\n").is_err());
        assert!(matches!(parse_relation("2 2\n0\n"), Err(Error::Parse { line: 2, .. })));
    }
}
