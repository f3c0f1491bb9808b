//! Plain-text formats for complexes and cochains.
//!
//! Complex files: optional `#` comment lines, a header `dim <d> vertices <n>`,
//! then one facet per line as whitespace-separated vertex indices.
//!
//! Cochain files: header `cochain <degree> <p> <k> <count>`, then one value per
//! line as the integer encoding of a field element.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::simplicial::{Cochain, Complex};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (dim, n) = match words.as_slice() {
        ["dim", d, "vertices", n] => (
            d.parse::<usize>().map_err(|e| parse_err(ln, e.to_string()))?,
            n.parse::<usize>().map_err(|e| parse_err(ln, e.to_string()))?,
        ),
        _ => return Err(parse_err(ln, "expected `dim <d> vertices <n>`")),
    };
    let mut facets = Vec::new();
    for (ln, l) in lines {
        let f = l
            .split_whitespace()
            .map(|w| w.parse::<u32>().map_err(|e| parse_err(ln, e.to_string())))
            .collect::<Result<Vec<u32>>>()?;
        if f.len() != dim + 1 {
            return Err(parse_err(ln, format!("facet has {} vertices, expected {}", f.len(), dim + 1)));
        }
        facets.push(f);
    }
    Complex::new(n, facets)
}

pub fn write_complex(c: &Complex, comment: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(text) = comment {
        for l in text.lines() {
            let _ = writeln!(s, "# {l}");
        }
    }
    let _ = writeln!(s, "dim {} vertices {}", c.dim(), c.n_vertices());
    for f in c.facets() {
        let words: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", words.join(" "));
    }
    s
}

pub fn read_complex(path: impl AsRef<Path>) -> Result<Complex> {
    parse_complex(&std::fs::read_to_string(path)?)
}

pub fn parse_cochain<F: Field>(c: &Complex, text: &str) -> Result<Cochain<F>> {
    let mut lines = content_lines(text);
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let nums: Vec<usize> = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["cochain", rest @ ..] if rest.len() == 4 => rest
            .iter()
            .map(|w| w.parse::<usize>().map_err(|e| parse_err(ln, e.to_string())))
            .collect::<Result<_>>()?,
        _ => return Err(parse_err(ln, "expected `cochain <degree> <p> <k> <count>`")),
    };
    let (degree, p, k, count) = (nums[0], nums[1], nums[2], nums[3]);
    if p != F::CHARACTERISTIC as usize || k != F::DEGREE as usize {
        return Err(parse_err(ln, format!("cochain is over GF({p}^{k})")));
    }
    let mut values = Vec::with_capacity(count);
    for (ln, l) in lines {
        let r = l.parse::<u32>().map_err(|e| parse_err(ln, e.to_string()))?;
        values.push(F::from_repr(r).ok_or_else(|| parse_err(ln, format!("{r} is not a field element")))?);
    }
    if values.len() != count {
        return Err(parse_err(0, format!("expected {count} values, found {}", values.len())));
    }
    Cochain::new(c, degree, values)
}

pub fn write_cochain<F: Field>(x: &Cochain<F>) -> String {
    let mut s = format!(
        "cochain {} {} {} {}\n",
        x.degree(),
        F::CHARACTERISTIC,
        F::DEGREE,
        x.values().len()
    );
    for v in x.values() {
        let _ = writeln!(s, "{}", v.repr());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Gf2_8;

    #[test]
    fn complex_round_trip() {
        let text = "# a triangle boundary\ndim 1 vertices 3\n0 1\n1 2\n0 2\n";
        let c = parse_complex(text).unwrap();
        assert_eq!(parse_complex(&write_complex(&c, Some("x"))).unwrap(), c);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_complex("dim 1 vertices 3\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse_complex("dimension 1\n").is_err());
    }

    #[test]
    fn cochain_round_trip() {
        let c = parse_complex("dim 1 vertices 3\n0 1\n1 2\n0 2\n").unwrap();
        let x = Cochain::new(&c, 1, vec![Gf2_8::new(3), Gf2_8::new(200), Gf2_8::new(0)]).unwrap();
        assert_eq!(parse_cochain::<Gf2_8>(&c, &write_cochain(&x)).unwrap(), x);
        assert!(parse_cochain::<crate::Gf3>(&c, &write_cochain(&x)).is_err());
    }
}
