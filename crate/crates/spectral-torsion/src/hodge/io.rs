//! Plain-text interchange format for cochain complexes with inner
//! products. All entries are exact rationals (integers, p/q fractions, or
//! finite decimals), so a parsed file yields both an exact
//! [`RationalComplex`] and its floating-point counterpart.
//!
//! ```text
//! # comments and blank lines are ignored
//! degrees 3
//! dim 0 1
//! dim 1 2
//! dim 2 1
//! d 0            # dim(1) rows × dim(0) entries
//! 1
//! 1
//! d 1
//! 1 -1
//! gram 1         # optional; identity if omitted
//! 2 1/2
//! 1/2 3.25
//! ```

use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::hodge::rational::{RationalComplex, RMatrix};
use crate::hodge::HodgeComplex;

/// A parsed complex, in both exact and floating-point form.
#[derive(Debug, Clone)]
pub struct ParsedComplex {
    pub rational: RationalComplex,
    pub float: HodgeComplex,
}

/// Parse an entry: integer, p/q, or decimal with optional exponent.
pub fn parse_rational(tok: &str) -> Result<BigRational> {
    let bad = |msg: &str| Error::Config(format!("bad number `{tok}`: {msg}"));
    if let Some((p, q)) = tok.split_once('/') {
        let num = BigInt::from_str(p.trim()).map_err(|_| bad("invalid numerator"))?;
        let den = BigInt::from_str(q.trim()).map_err(|_| bad("invalid denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match tok.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            i32::from_str(e).map_err(|_| bad("invalid exponent"))? as i64,
        ),
        None => (tok, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad("empty mantissa"));
    }
    let negative = int_part.starts_with('-');
    let digits: String = int_part
        .trim_start_matches(['+', '-'])
        .chars()
        .chain(frac_part.chars())
        .collect();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad("expected digits"));
    }
    let mut value = BigRational::new(
        BigInt::from_str(&digits).map_err(|_| bad("invalid digits"))?,
        BigInt::one(),
    );
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        value *= BigRational::from_integer(ten.pow(shift as u32));
    } else {
        value /= BigRational::from_integer(ten.pow((-shift) as u32));
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            iter: text.lines().enumerate(),
        }
    }

    /// Next significant line: (1-based number, content with comments stripped).
    fn next(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.iter.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn read_matrix(lines: &mut Lines, rows: usize, cols: usize, what: &str) -> Result<RMatrix> {
    let mut data = Vec::with_capacity(rows);
    for r in 0..rows {
        let (no, line) = lines.next().ok_or_else(|| {
            Error::Config(format!("unexpected end of file in {what}, row {r}"))
        })?;
        let entries: Vec<BigRational> = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<_>>()
            .map_err(|e| Error::Config(format!("line {no}: {e}")))?;
        if entries.len() != cols {
            return Err(Error::Config(format!(
                "line {no}: {what} row {r} has {} entries, expected {cols}",
                entries.len()
            )));
        }
        data.push(entries);
    }
    if rows == 0 {
        return Ok(RMatrix::zeros(0, cols));
    }
    RMatrix::from_rows(data)
}

/// Parse the text form of a complex.
pub fn parse_complex(text: &str) -> Result<ParsedComplex> {
    let mut lines = Lines::new(text);
    let (no, header) = lines
        .next()
        .ok_or_else(|| Error::Config("empty complex file".to_string()))?;
    let degrees: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["degrees", n] => n
            .parse()
            .map_err(|_| Error::Config(format!("line {no}: bad degree count `{n}`")))?,
        _ => {
            return Err(Error::Config(format!(
                "line {no}: expected `degrees <n>`, found `{header}`"
            )))
        }
    };
    if degrees < 2 {
        return Err(Error::Config(format!(
            "line {no}: a complex needs at least 2 degrees, got {degrees}"
        )));
    }

    let mut dims = vec![None::<usize>; degrees];
    for _ in 0..degrees {
        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::Config("missing dim lines".to_string()))?;
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["dim", q, n] => {
                let q: usize = q
                    .parse()
                    .map_err(|_| Error::Config(format!("line {no}: bad degree `{q}`")))?;
                if q >= degrees {
                    return Err(Error::Config(format!(
                        "line {no}: degree {q} out of range 0..{degrees}"
                    )));
                }
                if dims[q].is_some() {
                    return Err(Error::Config(format!("line {no}: duplicate dim {q}")));
                }
                dims[q] = Some(n.parse().map_err(|_| {
                    Error::Config(format!("line {no}: bad dimension `{n}`"))
                })?);
            }
            _ => {
                return Err(Error::Config(format!(
                    "line {no}: expected `dim <q> <n>`, found `{line}`"
                )))
            }
        }
    }
    let dims: Vec<usize> = dims
        .into_iter()
        .map(|d| d.expect("all dims seen"))
        .collect();

    let mut d: Vec<Option<RMatrix>> = vec![None; degrees - 1];
    let mut gram: Vec<Option<RMatrix>> = vec![None; degrees];
    while let Some((no, line)) = lines.next() {
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["d", q] => {
                let q: usize = q
                    .parse()
                    .map_err(|_| Error::Config(format!("line {no}: bad degree `{q}`")))?;
                if q + 1 >= degrees {
                    return Err(Error::Config(format!(
                        "line {no}: differential {q} out of range 0..{}",
                        degrees - 1
                    )));
                }
                if d[q].is_some() {
                    return Err(Error::Config(format!("line {no}: duplicate d {q}")));
                }
                d[q] = Some(read_matrix(
                    &mut lines,
                    dims[q + 1],
                    dims[q],
                    &format!("d {q}"),
                )?);
            }
            ["gram", q] => {
                let q: usize = q
                    .parse()
                    .map_err(|_| Error::Config(format!("line {no}: bad degree `{q}`")))?;
                if q >= degrees {
                    return Err(Error::Config(format!(
                        "line {no}: gram {q} out of range 0..{degrees}"
                    )));
                }
                if gram[q].is_some() {
                    return Err(Error::Config(format!("line {no}: duplicate gram {q}")));
                }
                gram[q] = Some(read_matrix(&mut lines, dims[q], dims[q], &format!("gram {q}"))?);
            }
            _ => {
                return Err(Error::Config(format!(
                    "line {no}: expected `d <q>` or `gram <q>`, found `{line}`"
                )))
            }
        }
    }

    let d: Vec<RMatrix> = d
        .into_iter()
        .enumerate()
        .map(|(q, m)| {
            m.ok_or_else(|| Error::Config(format!("missing differential d {q}")))
        })
        .collect::<Result<_>>()?;
    let gram: Vec<RMatrix> = gram
        .into_iter()
        .enumerate()
        .map(|(q, m)| m.unwrap_or_else(|| RMatrix::identity(dims[q])))
        .collect();

    let rational = RationalComplex::new(d, gram)?;
    let float = rational.to_float()?;
    Ok(ParsedComplex { rational, float })
}

/// Serialize a rational complex in the text format (grams included).
pub fn format_complex(cx: &RationalComplex) -> String {
    let mut out = String::new();
    let degrees = cx.degrees();
    out.push_str(&format!("degrees {degrees}\n"));
    for q in 0..degrees {
        out.push_str(&format!("dim {q} {}\n", cx.dim(q)));
    }
    let fmt = |m: &RMatrix, out: &mut String| {
        for r in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|c| m[(r, c)].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    };
    for (q, dq) in cx.d.iter().enumerate() {
        out.push_str(&format!("d {q}\n"));
        fmt(dq, &mut out);
    }
    for (q, g) in cx.gram.iter().enumerate() {
        out.push_str(&format!("gram {q}\n"));
        fmt(g, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_in_all_shapes() {
        let cases = [
            ("3", (3, 1)),
            ("-4", (-4, 1)),
            ("1/2", (1, 2)),
            ("-7/3", (-7, 3)),
            ("0.25", (1, 4)),
            ("-1.5", (-3, 2)),
            ("2e2", (200, 1)),
            ("2.5e-1", (1, 4)),
        ];
        for (tok, (n, d)) in cases {
            assert_eq!(
                parse_rational(tok).unwrap(),
                BigRational::new(n.into(), d.into()),
                "{tok}"
            );
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    const SAMPLE: &str = "\
# two-step exact complex
degrees 3
dim 0 1
dim 1 2
dim 2 1
d 0
1
1
d 1
1 -1
gram 1
2 1/2
1/2 3
";

    #[test]
    fn parses_a_complete_file() {
        let parsed = parse_complex(SAMPLE).unwrap();
        assert_eq!(parsed.rational.degrees(), 3);
        assert_eq!(parsed.rational.dim(1), 2);
        assert_eq!(parsed.float.dim(1), 2);
        assert_eq!(parsed.rational.betti(0), 0);
        // default grams are identities
        assert_eq!(parsed.rational.gram[0], RMatrix::identity(1));
    }

    #[test]
    fn round_trips_through_the_writer() {
        let parsed = parse_complex(SAMPLE).unwrap();
        let text = format_complex(&parsed.rational);
        let again = parse_complex(&text).unwrap();
        assert_eq!(
            parsed.rational.torsion_squared().unwrap(),
            again.rational.torsion_squared().unwrap()
        );
        for q in 0..2 {
            assert_eq!(parsed.rational.d[q], again.rational.d[q]);
        }
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        let bad = "degrees 3\ndim 0 1\ndim 1 2\ndim 2 1\nd 0\n1 1\n1\nd 1\n1 -1\n";
        let err = parse_complex(bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 6"), "{msg}");

        let err = parse_complex("degrees 1\ndim 0 2\n").unwrap_err();
        assert!(err.to_string().contains("at least 2 degrees"));

        let incomplete = "degrees 3\ndim 0 1\ndim 1 2\ndim 2 1\nd 0\n1\n1\n";
        let err = parse_complex(incomplete).unwrap_err();
        assert!(err.to_string().contains("missing differential"), "{err}");
    }

    #[test]
    fn rejects_files_that_are_not_complexes() {
        let not_complex = "\
degrees 3
dim 0 1
dim 1 2
dim 2 1
d 0
1
1
d 1
1 1
";
        let err = parse_complex(not_complex).unwrap_err();
        assert!(matches!(err, Error::NotAComplex(_)), "{err}");
    }
}
