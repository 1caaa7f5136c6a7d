use super::poly::{uni_divmod, uni_is_zero, Poly};
use super::ratfunc::RatFunc;
use super::PolyError;
use crate::cyclotomic::{cyclotomic_polynomial, CycNum};
use std::collections::BTreeMap;

/// Largest `k` allowed in a `(1 - T^k)` denominator factor.
const FACTOR_BOUND: u32 = 120;

/// A denominator written as a product of `(1 - T^k)` factors.  `multiplier`
/// is the polynomial `m` such that `m * d = prod (1 - T^k)^mult`; it is the
/// product of the auxiliary reversed cyclotomic factors that had to be
/// introduced, so the numerator must be multiplied by it too.
#[derive(Clone, Debug)]
pub struct DenominatorForm {
    /// `(k, multiplicity)` pairs, ascending in `k`.
    pub factors: Vec<(u32, u32)>,
    pub multiplier: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftVerdict {
    Pass,
    Fail { witness: String },
}

impl ShiftVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, ShiftVerdict::Pass)
    }
}

/// Reversed cyclotomic polynomial `T^phi(d) Phi_d(1/T)`; its roots are the
/// primitive d-th roots of unity and its constant term is 1 for d > 1.
fn reversed_cyclotomic(d: u64) -> Vec<CycNum> {
    let mut c: Vec<CycNum> = cyclotomic_polynomial(d)
        .into_iter()
        .map(CycNum::from_rational)
        .collect();
    c.reverse();
    c
}

fn divisors_of(k: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=k).filter(|d| k % d == 0).collect();
    out.sort_unstable();
    out
}

/// Write a univariate polynomial `d` with `d(0) = 1` as a product of
/// `(1 - T^k)` factors, multiplying by auxiliary reversed cyclotomic factors
/// where needed.  Greedy and deterministic: the residual is factored into
/// reversed cyclotomic pieces, then factors are assembled largest order
/// first, adding the smallest missing divisors as auxiliaries.
pub fn factor_denominator_cyclotomic(d: &Poly) -> Result<DenominatorForm, PolyError> {
    let support = d.support_vars();
    if support.len() > 1 {
        return Err(PolyError::DenominatorNotUnivariate(support.join(", ")));
    }
    let var = support.first().cloned().unwrap_or_else(|| "T".to_string());
    if !d.constant_coefficient().is_one() {
        return Err(PolyError::NotCyclotomicProduct {
            residual: d.to_string(),
        });
    }
    let mut rem = d.to_univariate(&var).unwrap();
    let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
    for e in 1..=FACTOR_BOUND as u64 {
        if rem.len() == 1 {
            break;
        }
        if (rem.len() - 1) < crate::cyclotomic::euler_phi(e) as usize {
            continue;
        }
        let phi = reversed_cyclotomic(e);
        loop {
            let (q, r) = uni_divmod(&rem, &phi);
            if uni_is_zero(&r) {
                rem = q;
                *mult.entry(e as u32).or_insert(0) += 1;
            } else {
                break;
            }
        }
    }
    if rem.len() > 1 || !rem[0].is_one() {
        return Err(PolyError::NotCyclotomicProduct {
            residual: Poly::from_univariate(&var, &rem).to_string(),
        });
    }
    // assemble (1 - T^k) factors from the multiset of cyclotomic pieces
    let mut factors: BTreeMap<u32, u32> = BTreeMap::new();
    let mut multiplier = Poly::constant(CycNum::one());
    while let Some((&k, _)) = mult.iter().next_back() {
        for e in divisors_of(k) {
            match mult.get_mut(&e) {
                Some(m) if *m > 0 => {
                    *m -= 1;
                    if *m == 0 {
                        mult.remove(&e);
                    }
                }
                _ => {
                    multiplier =
                        multiplier.mul(&Poly::from_univariate(&var, &reversed_cyclotomic(e as u64)));
                }
            }
        }
        *factors.entry(k).or_insert(0) += 1;
    }
    Ok(DenominatorForm {
        factors: factors.into_iter().collect(),
        multiplier,
    })
}

impl DenominatorForm {
    /// Rebuild the product `prod (1 - T^k)^mult` over the given variable.
    pub fn product(&self, var: &str) -> Poly {
        let one = Poly::constant(CycNum::one());
        let mut out = one.clone();
        for &(k, m) in &self.factors {
            let f = one.sub(&Poly::monomial(var, k, CycNum::one()));
            out = out.mul(&f.pow(m));
        }
        out
    }
}

/// Substitute `T := 1 + S` and `y := -1 - delta` into the numerator of `f`
/// brought over a `(1 - T^k)`-product denominator, and report whether every
/// coefficient is nonnegative.
pub fn nonneg_after_shift(f: &RatFunc) -> Result<ShiftVerdict, PolyError> {
    let form = factor_denominator_cyclotomic(f.den())?;
    Ok(shifted_numerator_nonneg(&f.num().mul(&form.multiplier)))
}

/// The raw shift test on an already-assembled numerator: substitute
/// `T := 1 + S` and `y := -1 - delta` and look for a negative coefficient.
pub fn shifted_numerator_nonneg(numerator: &Poly) -> ShiftVerdict {
    let one = Poly::constant(CycNum::one());
    let t_image = one.add(&Poly::var("S"));
    let y_image = one.neg().sub(&Poly::var("delta"));
    let shifted = numerator.substitute_polys(&[("T", t_image), ("y", y_image)]);
    for (e, c) in shifted.terms() {
        if !c.is_nonneg_rational() {
            let witness = Poly::from_terms(
                &shifted
                    .vars()
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>(),
                vec![(e.clone(), c.clone())],
            );
            return ShiftVerdict::Fail {
                witness: witness.to_string(),
            };
        }
    }
    ShiftVerdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::parse_ratfunc as rf;

    fn p(expr: &str) -> Poly {
        rf(expr).unwrap().as_polynomial().unwrap()
    }

    #[test]
    fn factors_plain_products() {
        let d = p("(1-T^2)^2*(1-T^4)^2");
        let form = factor_denominator_cyclotomic(&d).unwrap();
        assert_eq!(form.factors, vec![(2, 2), (4, 2)]);
        assert!(form.multiplier.is_one());
        assert_eq!(form.product("T"), d);

        let form = factor_denominator_cyclotomic(&p("1-T")).unwrap();
        assert_eq!(form.factors, vec![(1, 1)]);

        let form = factor_denominator_cyclotomic(&p("(1-T)^3*(1-T^5)")).unwrap();
        assert_eq!(form.factors, vec![(1, 3), (5, 1)]);
        assert!(form.multiplier.is_one());
    }

    #[test]
    fn auxiliary_factor_is_introduced() {
        // 1 + T + T^2 is the reversed third cyclotomic; needs a (1-T) helper
        let d = p("1+T+T^2");
        let form = factor_denominator_cyclotomic(&d).unwrap();
        assert_eq!(form.factors, vec![(3, 1)]);
        assert_eq!(form.multiplier, p("1-T"));
        assert_eq!(form.multiplier.mul(&d), form.product("T"));
    }

    #[test]
    fn rejects_non_cyclotomic() {
        let err = factor_denominator_cyclotomic(&p("1-2*T")).unwrap_err();
        assert!(matches!(err, PolyError::NotCyclotomicProduct { .. }));
    }

    #[test]
    fn shift_positivity() {
        // numerator (y+1) alone becomes -delta: fail
        let f = rf("(y+1)/(1-T)").unwrap();
        match nonneg_after_shift(&f).unwrap() {
            ShiftVerdict::Fail { witness } => assert!(witness.contains("delta")),
            ShiftVerdict::Pass => panic!("expected failure"),
        }
        // the A1 surface class passes
        let h = rf("((y+1)*(y*T^2+1)*(1+T^2) - y*(1-T^2)^2)/(1-T^2)^2").unwrap();
        assert!(nonneg_after_shift(&h).unwrap().is_pass());
    }
}
