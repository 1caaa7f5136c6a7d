use super::factor::factor_denominator_cyclotomic;
use super::poly::Poly;
use super::ratfunc::RatFunc;

fn exp_latex(var: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        2..=9 => format!("{}^{}", var, e),
        _ => format!("{}^{{{}}}", var, e),
    }
}

pub fn poly_to_latex(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // highest terms first, as displayed formulas do
    let terms: Vec<_> = p.terms().collect();
    for (e, c) in terms.into_iter().rev() {
        let is_const = e.iter().all(|&x| x == 0);
        let (sign, mag) = match c.to_rational() {
            Some(r) => {
                let neg = r < num_traits::Zero::zero();
                let a = if neg { -r } else { r };
                let s = if a.denom() == &num_bigint::BigInt::from(1) {
                    a.numer().to_string()
                } else {
                    format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
                };
                (neg, s)
            }
            None => (false, format!("\\left({}\\right)", c)),
        };
        if out.is_empty() {
            if sign {
                out.push('-');
            }
        } else {
            out.push_str(if sign { " - " } else { " + " });
        }
        if is_const || mag != "1" {
            out.push_str(&mag);
            if !is_const {
                out.push(' ');
            }
        }
        for (i, &x) in e.iter().enumerate() {
            if x > 0 {
                out.push_str(&exp_latex(&p.vars()[i], x));
                out.push(' ');
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
    }
    out
}

/// Render a rational function, factoring the denominator into
/// `(1 - T^k)` products when possible.
pub fn ratfunc_to_latex(f: &RatFunc) -> String {
    if f.den().is_one() {
        return poly_to_latex(f.num());
    }
    let den = match factor_denominator_cyclotomic(f.den()) {
        Ok(form) if form.multiplier.is_one() => {
            let var = f
                .den()
                .support_vars()
                .first()
                .cloned()
                .unwrap_or_else(|| "T".to_string());
            form.factors
                .iter()
                .map(|&(k, m)| {
                    let base = format!("\\left(1-{}\\right)", exp_latex(&var, k));
                    if m == 1 {
                        base
                    } else {
                        format!("{}^{}", base, m)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
        _ => poly_to_latex(f.den()),
    };
    format!("\\frac{{{}}}{{{}}}", poly_to_latex(f.num()), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::parse_ratfunc as rf;

    #[test]
    fn renders_factored_denominator() {
        let f = rf("(1+y*T)/((1-T^2)*(1-T^2))").unwrap();
        assert_eq!(
            ratfunc_to_latex(&f),
            "\\frac{y T + 1}{\\left(1-T^2\\right)^2}"
        );
    }

    #[test]
    fn renders_polynomials() {
        let p = rf("2*y^2 - T + 1/2").unwrap().as_polynomial().unwrap();
        assert_eq!(poly_to_latex(&p), "2 y^2 - T + \\frac{1}{2}");
    }
}
