use super::{PolyError, SparsePolynomial};
use num_bigint::BigInt;
use num_traits::One;
use std::str::FromStr;

struct Term {
    coeff: BigInt,
    exps: Vec<(usize, u32)>,
}

fn parse_term(src: &str) -> Result<Term, PolyError> {
    let mut coeff = BigInt::one();
    let mut exps = Vec::new();
    for factor in src.split('*').map(str::trim) {
        if factor.is_empty() {
            return Err(PolyError::Parse(format!("empty factor in `{src}`")));
        }
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, pow) = match rest.split_once('^') {
                Some((i, e)) => (i.trim(), e.trim()),
                None => (rest, "1"),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad variable `{factor}`")))?;
            let pow: u32 = pow
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad exponent `{factor}`")))?;
            exps.push((idx, pow));
        } else {
            let c: BigInt = factor
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad coefficient `{factor}`")))?;
            coeff *= c;
        }
    }
    Ok(Term { coeff, exps })
}

impl SparsePolynomial {
    /// Parses with an explicit variable count (must cover every index used).
    pub fn parse_with_nvars(src: &str, nvars: usize) -> Result<Self, PolyError> {
        let p: SparsePolynomial = src.parse()?;
        if p.nvars() > nvars {
            return Err(PolyError::Parse(format!(
                "uses {} variables but only {nvars} declared",
                p.nvars()
            )));
        }
        Ok(p.widen(nvars))
    }
}

impl FromStr for SparsePolynomial {
    type Err = PolyError;

    /// Reads the canonical grammar, e.g. `x0^2*x1 - 3*x2 + 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut neg = false;
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let b = bytes[i];
            if b == b'+' || b == b'-' {
                let prev = s[..i].trim_end();
                if s[start..i].trim().is_empty() {
                    neg ^= b == b'-';
                    start = i + 1;
                } else if !prev.ends_with('^') && !prev.ends_with('*') {
                    terms.push((neg, &s[start..i]));
                    neg = b == b'-';
                    start = i + 1;
                }
            }
            i += 1;
        }
        terms.push((neg, &s[start..]));

        let parsed: Vec<(bool, Term)> = terms
            .into_iter()
            .map(|(n, t)| parse_term(t.trim()).map(|t| (n, t)))
            .collect::<Result<_, _>>()?;
        let nvars = parsed
            .iter()
            .flat_map(|(_, t)| t.exps.iter().map(|(i, _)| i + 1))
            .max()
            .unwrap_or(0);
        let mut out = SparsePolynomial::zero(nvars);
        for (n, t) in parsed {
            let mut e = vec![0u32; nvars];
            for (i, p) in t.exps {
                e[i] += p;
            }
            let c = if n { -t.coeff } else { t.coeff };
            out = &out + &SparsePolynomial::monomial(e, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "1", "-7", "x0", "-x3", "x0^2 - 1", "2*x0*x1^3 - x2 + 5"] {
            let p: SparsePolynomial = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn tolerant_input() {
        let p: SparsePolynomial = "  3 * x1 *x0 + -2*x0*x1".parse().unwrap();
        assert_eq!(p.to_string(), "x0*x1");
        assert!("x".parse::<SparsePolynomial>().is_err());
        assert!("2**x0".parse::<SparsePolynomial>().is_err());
    }
}
