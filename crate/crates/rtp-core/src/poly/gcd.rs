use super::{Monomial, PolyError, SparsePolynomial};
use num_integer::Integer;

/// Dense univariate view: `coeffs[d]` multiplies `x_var^d`.
#[derive(Clone)]
struct Univariate {
    var: usize,
    coeffs: Vec<SparsePolynomial>,
}

impl Univariate {
    fn from_poly(p: &SparsePolynomial, var: usize) -> Self {
        let n = p.nvars();
        let deg = p.degree_in(var) as usize;
        let mut coeffs = vec![SparsePolynomial::zero(n); deg + 1];
        for (m, c) in p.terms.iter() {
            let mut e = m.exponents().to_vec();
            let d = e[var] as usize;
            e[var] = 0;
            coeffs[d].terms.insert(Monomial::new(e), c.clone());
        }
        Univariate { var, coeffs }
    }

    fn to_poly(&self) -> SparsePolynomial {
        let n = self.coeffs[0].nvars();
        let mut out = SparsePolynomial::zero(n);
        for (d, c) in self.coeffs.iter().enumerate() {
            for (m, v) in c.terms.iter() {
                let mut e = m.exponents().to_vec();
                e[self.var] += d as u32;
                out.terms.insert(Monomial::new(e), v.clone());
            }
        }
        out
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &SparsePolynomial {
        self.coeffs.last().unwrap()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
    }

    fn scale(&self, c: &SparsePolynomial) -> Univariate {
        Univariate {
            var: self.var,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn div_coeffs(&self, c: &SparsePolynomial) -> Univariate {
        Univariate {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| x.div_exact_unchecked(c))
                .collect(),
        }
    }

    /// lc(b)^(deg a - deg b + 1) * a mod b.
    fn prem(&self, b: &Univariate) -> Univariate {
        let mut r = self.clone();
        let db = b.degree();
        let lcb = b.lc().clone();
        let mut e = self.degree() as i64 - db as i64 + 1;
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lcr = r.lc().clone();
            let mut next = r.scale(&lcb);
            for (i, bc) in b.coeffs.iter().enumerate() {
                let t = bc * &lcr;
                next.coeffs[i + shift] = &next.coeffs[i + shift] - &t;
            }
            next.trim();
            r = next;
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&lcb.pow(e as u32));
        }
        r
    }
}

/// Primitive gcd of a list of polynomials (1 for an empty or all-zero list).
fn gcd_many<'a, I>(nvars: usize, items: I) -> SparsePolynomial
where
    I: IntoIterator<Item = &'a SparsePolynomial>,
{
    let mut g: Option<SparsePolynomial> = None;
    for p in items {
        if p.is_zero() {
            continue;
        }
        g = Some(match g {
            None => p.primitive_part(),
            Some(acc) => primitive_gcd(&acc, p),
        });
        if g.as_ref().is_some_and(|x| x.is_constant()) {
            return SparsePolynomial::one(nvars);
        }
    }
    g.unwrap_or_else(|| SparsePolynomial::one(nvars))
}

/// Gcd of two nonzero polynomials, primitive with positive leading coefficient.
fn primitive_gcd(a: &SparsePolynomial, b: &SparsePolynomial) -> SparsePolynomial {
    let n = a.nvars().max(b.nvars());
    let (a, b) = (a.widen(n), b.widen(n));
    if a.is_constant() || b.is_constant() {
        return SparsePolynomial::one(n);
    }
    let vb = b.variables();
    let Some(var) = a.variables().into_iter().find(|v| vb.contains(v)) else {
        return SparsePolynomial::one(n);
    };
    let ua = Univariate::from_poly(&a, var);
    let ub = Univariate::from_poly(&b, var);
    let ca = gcd_many(n, &ua.coeffs);
    let cb = gcd_many(n, &ub.coeffs);
    let c = primitive_gcd(&ca, &cb);
    let ua = ua.div_coeffs(&ca);
    let ub = ub.div_coeffs(&cb);
    let g = subresultant(ua, ub);
    let g = if g.degree() == 0 {
        SparsePolynomial::one(n)
    } else {
        let cg = gcd_many(n, &g.coeffs);
        g.div_coeffs(&cg).to_poly()
    };
    (&c * &g).primitive_part()
}

/// Last nonzero member of the subresultant sequence (input primitive in `var`).
fn subresultant(a: Univariate, b: Univariate) -> Univariate {
    let (mut a, mut b) = if a.degree() >= b.degree() { (a, b) } else { (b, a) };
    let n = a.coeffs[0].nvars();
    let mut g = SparsePolynomial::one(n);
    let mut h = SparsePolynomial::one(n);
    loop {
        let delta = (a.degree() - b.degree()) as u32;
        let r = a.prem(&b);
        if r.is_zero() {
            return b;
        }
        if r.degree() == 0 {
            return Univariate {
                var: a.var,
                coeffs: vec![SparsePolynomial::one(n)],
            };
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_coeffs(&divisor);
        g = a.lc().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact_unchecked(&h.pow(delta - 1)),
        };
    }
}

/// Greatest common divisor: primitive with positive leading coefficient,
/// except that two constants yield their positive integer gcd.
pub fn poly_gcd(p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
    let n = p.nvars().max(q.nvars());
    if p.is_constant() && q.is_constant() {
        let a = p.constant_value().unwrap();
        let b = q.constant_value().unwrap();
        return SparsePolynomial::constant(n, a.gcd(&b));
    }
    if p.is_zero() {
        return q.primitive_part().widen(n);
    }
    if q.is_zero() {
        return p.primitive_part().widen(n);
    }
    primitive_gcd(p, q)
}

/// Squarefreeness over the rationals: gcd of p and all its partials is constant.
pub fn poly_is_reduced(p: &SparsePolynomial) -> Result<bool, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let vars = p.variables();
    if vars.iter().any(|&v| p.min_degree_in(v) >= 2) {
        return Ok(false);
    }
    let mut g = p.primitive_part();
    // Cheaper partials first: fewer terms tends to shrink the running gcd quickly.
    let mut partials: Vec<SparsePolynomial> = vars.iter().map(|&v| p.derivative(v)).collect();
    partials.sort_by_key(|d| d.num_terms());
    for d in &partials {
        if g.is_constant() {
            break;
        }
        g = primitive_gcd(&g, d);
    }
    Ok(g.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SparsePolynomial {
        s.parse().unwrap()
    }

    fn g(a: &str, b: &str) -> String {
        let (a, b) = (p(a), p(b));
        let n = a.nvars().max(b.nvars());
        poly_gcd(&a.widen(n), &b.widen(n)).to_string()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(g("x0^2*x1", "x0*x1^2"), "x0*x1");
        assert_eq!(g("x0^2 - 1", "x0^2 - 2*x0 + 1"), "x0 - 1");
        assert_eq!(g("x0*x1 - x0", "x1 - 1"), "x1 - 1");
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(g("6", "-4"), "2");
        assert_eq!(g("0", "-2*x0 - 4"), "x0 + 2");
        assert_eq!(g("2*x0", "4*x1"), "1");
    }

    #[test]
    fn nontrivial_multivariate() {
        let h = p("x0*x2 - x1^2 + 3");
        let a = &h * &p("x0 + x1 + 1").widen(3);
        let b = &h * &p("x0 - x2^2").widen(3);
        assert_eq!(poly_gcd(&a, &b), h.primitive_part());
    }

    #[test]
    fn reducedness() {
        assert!(poly_is_reduced(&p("x0*x1*x2")).unwrap());
        assert!(!poly_is_reduced(&p("x0^2*x1")).unwrap());
        assert!(poly_is_reduced(&p("x0^2 - x1^2")).unwrap());
        assert!(!poly_is_reduced(&p("x0^2 + 2*x0*x1 + x1^2")).unwrap());
        assert_eq!(
            poly_is_reduced(&SparsePolynomial::zero(2)),
            Err(PolyError::ZeroPolynomial)
        );
    }
}
