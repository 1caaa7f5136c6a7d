use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::PolyError;
use crate::cyclotomic::CycNum;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

/// Serialize a polynomial as `[[exponent-vector, [p, q]], ...]` with
/// rational coefficients `p/q` as 64-bit integers.
pub fn poly_to_json(p: &Poly) -> Result<Value, PolyError> {
    let mut out = Vec::with_capacity(p.num_terms());
    for (e, c) in p.terms() {
        let r = c
            .to_rational()
            .ok_or_else(|| PolyError::NonRationalCoefficient(c.to_string()))?;
        let num = r
            .numer()
            .to_i64()
            .ok_or_else(|| PolyError::NonRationalCoefficient(c.to_string()))?;
        let den = r
            .denom()
            .to_i64()
            .ok_or_else(|| PolyError::NonRationalCoefficient(c.to_string()))?;
        out.push(json!([e, [num, den]]));
    }
    Ok(Value::Array(out))
}

pub fn ratfunc_to_json(f: &RatFunc) -> Result<Value, PolyError> {
    let (num, den) = Poly::align(f.num(), f.den());
    Ok(json!({
        "vars": num.vars(),
        "num": poly_to_json(&num)?,
        "den": poly_to_json(&den)?,
    }))
}

fn malformed(msg: &str) -> PolyError {
    PolyError::Parse {
        pos: 0,
        msg: msg.to_string(),
    }
}

fn poly_from_json(v: &Value, vars: &[&str]) -> Result<Poly, PolyError> {
    let arr = v.as_array().ok_or_else(|| malformed("expected an array"))?;
    let mut entries = Vec::with_capacity(arr.len());
    for item in arr {
        let pair = item
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| malformed("expected [exponents, [p, q]]"))?;
        let exps: Vec<u32> = serde_json::from_value(pair[0].clone())
            .map_err(|_| malformed("bad exponent vector"))?;
        if exps.len() != vars.len() {
            return Err(malformed("exponent vector length mismatch"));
        }
        let frac: Vec<i64> = serde_json::from_value(pair[1].clone())
            .map_err(|_| malformed("bad coefficient"))?;
        if frac.len() != 2 || frac[1] == 0 {
            return Err(malformed("bad coefficient"));
        }
        entries.push((exps, CycNum::from_frac(frac[0], frac[1])));
    }
    Ok(Poly::from_terms(vars, entries))
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc, PolyError> {
    let vars: Vec<String> = serde_json::from_value(
        v.get("vars")
            .ok_or_else(|| malformed("missing vars"))?
            .clone(),
    )
    .map_err(|_| malformed("bad vars"))?;
    let vars: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let num = poly_from_json(v.get("num").ok_or_else(|| malformed("missing num"))?, &vars)?;
    let den = poly_from_json(v.get("den").ok_or_else(|| malformed("missing den"))?, &vars)?;
    RatFunc::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::parse_ratfunc as rf;

    #[test]
    fn round_trip() {
        let f = rf("(1+y*T)/(1-T^2) + 1/2").unwrap();
        let v = ratfunc_to_json(&f).unwrap();
        let g = ratfunc_from_json(&v).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.num(), g.num());
        assert_eq!(f.den(), g.den());
    }

    #[test]
    fn rejects_cyclotomic_coefficients() {
        let c = CycNum::root_of_unity(5, 1).unwrap();
        let p = Poly::constant(c);
        assert!(matches!(
            poly_to_json(&p),
            Err(PolyError::NonRationalCoefficient(_))
        ));
    }
}
