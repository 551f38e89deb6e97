//! Multivariate polynomial gcd over Q by recursive primitive remainder
//! sequences.

use super::poly::{Monomial, ParamPoly, Sym};

/// Greatest common divisor, normalized to be monic.
///
/// Powers of `q` are units of the Laurent ring and never appear in the
/// result.
pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.q_normalized().0.monic();
    }
    if b.is_zero() {
        return a.q_normalized().0.monic();
    }
    let (a, _) = a.q_normalized();
    let (b, _) = b.q_normalized();
    gcd_poly(&a.integer_primitive(), &b.integer_primitive()).monic()
}

/// Gcd of polynomials with non-negative exponents, up to a rational unit.
fn gcd_poly(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.integer_primitive();
    }
    if b.is_zero() {
        return a.integer_primitive();
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one();
    }
    if a == b {
        return a.integer_primitive();
    }
    let x = a
        .symbols()
        .into_iter()
        .chain(b.symbols())
        .max()
        .expect("non-constant polynomial has a symbol");
    if !a.contains(x) {
        return gcd_poly(a, &content(b, x));
    }
    if !b.contains(x) {
        return gcd_poly(&content(a, x), b);
    }
    let ca = content(a, x);
    let cb = content(b, x);
    let gc = gcd_poly(&ca, &cb);
    let mut pa = divide(a, &ca);
    let mut pb = divide(b, &cb);
    if pa.degree_in(x) < pb.degree_in(x) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = prem(&pa, &pb, x);
        if r.is_zero() {
            break;
        }
        if !r.contains(x) {
            return gc.integer_primitive();
        }
        pa = pb;
        pb = primitive_part(&r, x);
    }
    (&gc * &primitive_part(&pb, x)).integer_primitive()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &ParamPoly, x: Sym) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for c in p.coefficients_in(x).values() {
        g = gcd_poly(&g, c);
        if g.is_constant() {
            return ParamPoly::one();
        }
    }
    g
}

fn primitive_part(p: &ParamPoly, x: Sym) -> ParamPoly {
    divide(p, &content(p, x)).integer_primitive()
}

fn divide(p: &ParamPoly, d: &ParamPoly) -> ParamPoly {
    p.div_exact(d)
        .expect("nonzero divisor")
        .expect("content divides its polynomial")
}

/// Pseudo-remainder of `a` by `b` with respect to `x`.
fn prem(a: &ParamPoly, b: &ParamPoly, x: Sym) -> ParamPoly {
    let bc = b.coefficients_in(x);
    let (&db, lb) = bc.iter().next_back().expect("nonzero divisor");
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(x);
        if r.is_zero() || dr < db {
            return r;
        }
        let rc = r.coefficients_in(x);
        let lr = &rc[&dr];
        let shifted = b.mul_monomial(&Monomial::var(x, dr - db));
        r = &(&r * lb) - &(&shifted * lr);
        // the leading coefficient cancels exactly; keep size in check
        if !r.is_zero() {
            r = r.integer_primitive();
        }
    }
}

/// Gcd of many polynomials.
pub fn gcd_many<'a>(items: impl IntoIterator<Item = &'a ParamPoly>) -> ParamPoly {
    let mut g = ParamPoly::zero();
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> ParamPoly {
        ParamPoly::var(Sym::Q)
    }
    fn t() -> ParamPoly {
        ParamPoly::t()
    }
    fn mu(i: usize) -> ParamPoly {
        ParamPoly::mu(i)
    }

    #[test]
    fn univariate_gcd() {
        let a = &(&q() - &ParamPoly::one()) * &(&q() + &ParamPoly::int(2));
        let b = &(&q() - &ParamPoly::one()) * &(&q() - &ParamPoly::int(3));
        assert_eq!(gcd(&a, &b), &q() - &ParamPoly::one());
    }

    #[test]
    fn bivariate_gcd_with_common_factor() {
        let f = &(&q() * &t()) + &ParamPoly::one();
        let a = &f * &(&t() - &q());
        let b = &f * &(&t() + &ParamPoly::int(5));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn laurent_units_are_dropped() {
        let a = &ParamPoly::q_pow(-3) * &(&mu(1) - &mu(2));
        let b = &ParamPoly::q_pow(2) * &(&(&mu(1) - &mu(2)) * &t());
        assert_eq!(gcd(&a, &b), (&mu(1) - &mu(2)).monic());
    }

    #[test]
    fn coprime_is_one() {
        let a = &mu(1) - &mu(2);
        let b = &mu(1) + &mu(3);
        assert!(gcd(&a, &b).is_one());
    }
}
