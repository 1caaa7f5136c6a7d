use super::poly::{uni_gcd, Poly};
use super::PolyError;
use crate::cyclotomic::CycNum;

/// A reduced rational function.  Denominators arising from the class
/// computations are polynomials in `T` alone; reduction divides numerator and
/// denominator by the gcd of the denominator with the numerator's content
/// (taken across the other variables) and normalizes the denominator to
/// constant term `+1` (leading coefficient `1` when the constant term is 0).
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Clone, Debug)]
pub struct SeriesExpansion {
    pub var: String,
    pub coeffs: Vec<Poly>,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let (num, den) = Poly::align(&num, &den);
        let mut f = RatFunc { num, den };
        f.cancel_monomial_content();
        f.reduce_univariate();
        f.normalize();
        Ok(f)
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc::new(p, Poly::constant(CycNum::one())).unwrap()
    }

    pub fn constant(c: CycNum) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn int(v: i64) -> RatFunc {
        RatFunc::from_poly(Poly::int(v))
    }

    pub fn zero() -> RatFunc {
        RatFunc::int(0)
    }

    pub fn one() -> RatFunc {
        RatFunc::int(1)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_polynomial(&self) -> Option<Poly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.den.as_constant().map(|c| {
                let inv = c.inverse().expect("nonzero denominator");
                self.num.scale(&inv)
            })
        }
    }

    fn cancel_monomial_content(&mut self) {
        let nvars = self.num.vars().len();
        if nvars == 0 {
            return;
        }
        let mut mins = vec![u32::MAX; nvars];
        for (e, _) in self.num.terms().chain(self.den.terms()) {
            for (m, &x) in mins.iter_mut().zip(e) {
                *m = (*m).min(x);
            }
        }
        if mins.iter().all(|&m| m == 0 || m == u32::MAX) {
            return;
        }
        let vars = self.num.vars().to_vec();
        let mut mono = Poly::constant(CycNum::one());
        for (v, &m) in vars.iter().zip(&mins) {
            if m != u32::MAX && m > 0 {
                mono = mono.mul(&Poly::monomial(v, m, CycNum::one()));
            }
        }
        if mono.is_one() {
            return;
        }
        self.num = self.num.divide_exact(&mono).expect("monomial content");
        self.den = self.den.divide_exact(&mono).expect("monomial content");
    }

    fn reduce_univariate(&mut self) {
        let support = self.den.support_vars();
        if support.len() != 1 {
            return;
        }
        let var = &support[0];
        let den_u = self.den.to_univariate(var).unwrap();
        if den_u.len() <= 1 {
            return;
        }
        let mut g = den_u.clone();
        // content of the numerator as an element of K[var]
        for coeff in self.num.univariate_slices(var) {
            if g.len() <= 1 {
                break;
            }
            g = uni_gcd(&g, &coeff);
        }
        if self.num.is_zero() {
            // 0 / den
            self.den = Poly::constant(CycNum::one());
            return;
        }
        if g.len() > 1 {
            let gp = Poly::from_univariate(var, &g);
            self.num = self.num.divide_exact(&gp).expect("gcd divides numerator");
            self.den = self.den.divide_exact(&gp).expect("gcd divides denominator");
        }
    }

    fn normalize(&mut self) {
        let c = self.den.constant_coefficient();
        let scale = if !c.is_zero() {
            c
        } else {
            // leading coefficient w.r.t. the term order
            self.den
                .terms()
                .last()
                .map(|(_, c)| c.clone())
                .expect("nonzero denominator")
        };
        if scale.is_one() {
            return;
        }
        let inv = scale.inverse().expect("nonzero denominator");
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        // univariate fast path: use the gcd of the denominators
        let sa = self.den.support_vars();
        let sb = other.den.support_vars();
        if sa.len() <= 1 && sb.len() <= 1 && (sa.is_empty() || sb.is_empty() || sa == sb) {
            if let Some(var) = sa.first().or_else(|| sb.first()) {
                let b = self.den.to_univariate(var).unwrap();
                let d = other.den.to_univariate(var).unwrap();
                let g = uni_gcd(&b, &d);
                if g.len() > 1 {
                    let gp = Poly::from_univariate(var, &g);
                    let d1 = other.den.divide_exact(&gp).unwrap();
                    let b1 = self.den.divide_exact(&gp).unwrap();
                    let num = self.num.mul(&d1).add(&other.num.mul(&b1));
                    let den = self.den.mul(&d1);
                    return RatFunc::new(num, den).unwrap();
                }
            }
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).unwrap()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &CycNum) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: i32) -> Result<RatFunc, PolyError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute rational functions for variables; unmapped variables stay.
    pub fn substitute(&self, map: &[(&str, RatFunc)]) -> Result<RatFunc, PolyError> {
        let num = eval_poly_ratfunc(&self.num, map);
        let den = eval_poly_ratfunc(&self.den, map);
        if den.is_zero() {
            return Err(PolyError::SubstitutionZeroDenominator);
        }
        num.div(&den)
    }

    pub fn eval_at(&self, points: &[(&str, CycNum)]) -> Result<RatFunc, PolyError> {
        let num = self.num.eval_at(points);
        let den = self.den.eval_at(points);
        RatFunc::new(num, den)
    }

    /// Taylor coefficients `c_0 .. c_order` of the expansion at `var = 0`.
    pub fn series_expand(&self, var: &str, order: usize) -> Result<SeriesExpansion, PolyError> {
        let support = self.den.support_vars();
        if support.len() > 1 || (support.len() == 1 && support[0] != var) {
            return Err(PolyError::DenominatorNotUnivariate(var.to_string()));
        }
        let den_u = self.den.to_univariate(var).unwrap();
        let d0 = den_u[0].clone();
        if d0.is_zero() {
            return Err(PolyError::PoleAtZero {
                var: var.to_string(),
            });
        }
        let d0_inv = d0.inverse().unwrap();
        let num_parts = self.num.coefficients_in(var);
        let part = |k: usize| -> Poly {
            num_parts
                .iter()
                .find(|(d, _)| *d as usize == k)
                .map(|(_, p)| p.clone())
                .unwrap_or_else(|| Poly::constant(CycNum::zero()))
        };
        let mut coeffs: Vec<Poly> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = part(k);
            for j in 1..=k.min(den_u.len() - 1) {
                acc = acc.sub(&coeffs[k - j].scale(&den_u[j]));
            }
            coeffs.push(acc.scale(&d0_inv));
        }
        Ok(SeriesExpansion {
            var: var.to_string(),
            coeffs,
        })
    }

    pub fn all_coefficients_rational(&self) -> bool {
        self.num.all_coefficients_rational() && self.den.all_coefficients_rational()
    }
}

fn eval_poly_ratfunc(p: &Poly, map: &[(&str, RatFunc)]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (e, c) in p.terms() {
        let mut term = RatFunc::constant(c.clone());
        for (i, &exp) in e.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let v = &p.vars()[i];
            let img = match map.iter().find(|(name, _)| name == v) {
                Some((_, f)) => f.clone(),
                None => RatFunc::from_poly(Poly::var(v)),
            };
            term = term.mul(&img.pow(exp as i32).expect("positive power"));
        }
        acc = acc.add(&term);
    }
    acc
}

/// Equality by cross-multiplication: `a = b` iff `a.num * b.den = b.num * a.den`.
impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl std::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::parse_ratfunc as rf;

    #[test]
    fn addition_reduces() {
        let a = rf("1/(1-T)").unwrap();
        let b = rf("1/(1+T)").unwrap();
        let s = a.add(&b);
        assert_eq!(s, rf("2/(1-T^2)").unwrap());
        // canonical form, not only cross-multiplied equality
        assert_eq!(s.num(), rf("2").unwrap().num());
        assert_eq!(s.den(), &rf("1-T^2").unwrap().num().clone());
    }

    #[test]
    fn multiplicative_identity() {
        let f = rf("(1+v)/(1-T)").unwrap();
        assert_eq!(f.mul(&RatFunc::one()), f);
    }

    #[test]
    fn molien_of_z2_in_gl1() {
        // 1/2 (1+v)/(1-T) + 1/2 (1-v)/(1+T) = (1+vT)/(1-T^2)
        let half = RatFunc::constant(CycNum::from_frac(1, 2));
        let a = rf("(1+v)/(1-T)").unwrap();
        let b = rf("(1-v)/(1+T)").unwrap();
        let s = half.mul(&a).add(&half.mul(&b));
        assert_eq!(s, rf("(1+v*T)/(1-T^2)").unwrap());
    }

    #[test]
    fn substitution_shift() {
        let f = rf("1/(1-T)").unwrap();
        let g = f
            .substitute(&[("T", rf("1+S").unwrap())])
            .unwrap();
        assert_eq!(g, rf("-1/S").unwrap());
    }

    #[test]
    fn substitution_zero_denominator() {
        let f = rf("1/(1-T)").unwrap();
        let err = f.substitute(&[("T", RatFunc::one())]).unwrap_err();
        assert_eq!(err, PolyError::SubstitutionZeroDenominator);
    }

    #[test]
    fn series_expansion() {
        let f = rf("(1+y*T)/(1-T)").unwrap();
        let s = f.series_expand("T", 2).unwrap();
        let one = rf("1").unwrap().as_polynomial().unwrap();
        let y1 = rf("1+y").unwrap().as_polynomial().unwrap();
        assert_eq!(s.coeffs, vec![one, y1.clone(), y1]);
        // pole at zero
        let g = rf("1/T").unwrap();
        assert!(matches!(
            g.series_expand("T", 2),
            Err(PolyError::PoleAtZero { .. })
        ));
    }

    #[test]
    fn series_of_product_is_cauchy_product() {
        let f = rf("(1+y*T)/(1-T)").unwrap();
        let g = rf("1/(1-T^2)").unwrap();
        let k = 6;
        let sf = f.series_expand("T", k).unwrap().coeffs;
        let sg = g.series_expand("T", k).unwrap().coeffs;
        let sfg = f.mul(&g).series_expand("T", k).unwrap().coeffs;
        for n in 0..=k {
            let mut acc = Poly::int(0);
            for i in 0..=n {
                acc = acc.add(&sf[i].mul(&sg[n - i]));
            }
            assert_eq!(acc, sfg[n], "coefficient {}", n);
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

        // equality is invariant under multiplying num and den by a common factor,
        // and the canonical forms then agree exactly
        #[test]
        fn equality_is_canonical(
            terms in proptest::collection::vec(((0u32..3, 0u32..4), -4i64..5), 1..5),
            fterms in proptest::collection::vec((0u32..3, -3i64..4), 1..3),
        ) {
            let num = Poly::from_terms(
                &["y", "T"],
                terms.iter().map(|((a, b), c)| (vec![*a, *b], CycNum::from_integer(*c))).collect(),
            );
            let den = rf("(1-T)*(1-T^2)").unwrap().as_polynomial().unwrap();
            let common = Poly::from_univariate(
                "T",
                &fterms.iter().map(|(_, c)| CycNum::from_integer(*c)).collect::<Vec<_>>(),
            ).add(&Poly::monomial("T", 3, CycNum::one()));
            let a = RatFunc::new(num.clone(), den.clone()).unwrap();
            let b = RatFunc::new(num.mul(&common), den.mul(&common)).unwrap();
            proptest::prop_assert_eq!(a.num(), b.num());
            proptest::prop_assert_eq!(a.den(), b.den());
            proptest::prop_assert!(a == b);
        }

        // series of a product is the Cauchy product of the series
        #[test]
        fn random_series_cauchy(
            nterms in proptest::collection::vec(((0u32..2, 0u32..3), -3i64..4), 1..4),
        ) {
            let num = Poly::from_terms(
                &["y", "T"],
                nterms.iter().map(|((a, b), c)| (vec![*a, *b], CycNum::from_integer(*c))).collect(),
            );
            let f = RatFunc::new(num, rf("1-T^2").unwrap().as_polynomial().unwrap()).unwrap();
            let g = rf("1/(1-T)").unwrap();
            let k = 5;
            let sf = f.series_expand("T", k).unwrap().coeffs;
            let sg = g.series_expand("T", k).unwrap().coeffs;
            let sfg = f.mul(&g).series_expand("T", k).unwrap().coeffs;
            for n in 0..=k {
                let mut acc = Poly::int(0);
                for i in 0..=n {
                    acc = acc.add(&sf[i].mul(&sg[n - i]));
                }
                proptest::prop_assert_eq!(acc, sfg[n].clone());
            }
        }
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = rf("(1-T^2)/((1-T)*(1-T)*(1+T))").unwrap();
        let b = rf("1/(1-T)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num(), b.num());
        assert_eq!(a.den(), b.den());
    }
}
