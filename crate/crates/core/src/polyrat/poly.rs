use crate::cyclotomic::CycNum;
use std::collections::BTreeMap;
use std::fmt;

/// A multivariate polynomial: ordered variable list plus a map from exponent
/// vectors to nonzero coefficients.  The zero polynomial has an empty map.
#[derive(Clone)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Poly {
        Poly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: CycNum) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(v: i64) -> Poly {
        Poly::constant(CycNum::from_integer(v))
    }

    pub fn var(name: &str) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], CycNum::one());
        Poly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Monomial `c * v^e` in a single variable.
    pub fn monomial(name: &str, e: u32, c: CycNum) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![e], c);
        }
        Poly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    pub fn from_terms(vars: &[&str], entries: Vec<(Vec<u32>, CycNum)>) -> Poly {
        let mut p = Poly::zero(vars);
        for (e, c) in entries {
            assert_eq!(e.len(), p.vars.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<CycNum> {
        if self.terms.is_empty() {
            return Some(CycNum::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    fn add_term(&mut self, e: Vec<u32>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Bring two polynomials to a shared variable list (union, keeping the
    /// left order first).
    pub fn align(a: &Poly, b: &Poly) -> (Poly, Poly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars: Vec<String> = a.vars.clone();
        for v in &b.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (a.remap(&vars), b.remap(&vars))
    }

    fn remap(&self, vars: &[String]) -> Poly {
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; vars.len()];
            for (i, &exp) in e.iter().enumerate() {
                if exp != 0 {
                    ne[idx[i].expect("remap must not drop a used variable")] = exp;
                }
            }
            terms.insert(ne, c.clone());
        }
        Poly {
            vars: vars.to_vec(),
            terms,
        }
    }

    /// Rebuild over exactly the given variable list; every used variable must
    /// be present in `vars`.
    pub fn with_vars(&self, vars: &[&str]) -> Poly {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        self.remap(&vars)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut a, b) = Poly::align(self, other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let (a, b) = Poly::align(self, other);
        let mut out = Poly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Poly {
        if c.is_zero() {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(CycNum::one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.iter().position(|v| v == var) {
            None => 0,
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Variables that actually occur with positive exponent.
    pub fn support_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// View as a univariate polynomial in `var` with polynomial coefficients
    /// in the remaining variables, sorted by ascending degree.
    pub fn coefficients_in(&self, var: &str) -> Vec<(u32, Poly)> {
        let i = match self.vars.iter().position(|v| v == var) {
            Some(i) => i,
            None => {
                if self.is_zero() {
                    return Vec::new();
                }
                return vec![(0, self.clone())];
            }
        };
        let mut groups: BTreeMap<u32, Poly> = BTreeMap::new();
        let other_vars: Vec<String> = self
            .vars
            .iter()
            .filter(|v| v.as_str() != var)
            .cloned()
            .collect();
        for (e, c) in &self.terms {
            let d = e[i];
            let mut oe: Vec<u32> = Vec::with_capacity(e.len() - 1);
            for (j, &x) in e.iter().enumerate() {
                if j != i {
                    oe.push(x);
                }
            }
            groups
                .entry(d)
                .or_insert_with(|| Poly {
                    vars: other_vars.clone(),
                    terms: BTreeMap::new(),
                })
                .add_term(oe, c.clone());
        }
        groups.into_iter().collect()
    }

    /// Dense coefficient vector if the polynomial involves only `var`.
    pub fn to_univariate(&self, var: &str) -> Option<Vec<CycNum>> {
        let support = self.support_vars();
        if !(support.is_empty() || support == [var.to_string()]) {
            return None;
        }
        let d = self.degree_in(var) as usize;
        let mut out = vec![CycNum::zero(); d + 1];
        let i = self.vars.iter().position(|v| v == var);
        for (e, c) in &self.terms {
            let deg = i.map_or(0, |i| e[i]) as usize;
            out[deg] = c.clone();
        }
        Some(out)
    }

    /// Group terms by the exponents of every variable other than `var`; each
    /// group becomes a dense univariate coefficient vector in `var`.
    pub fn univariate_slices(&self, var: &str) -> Vec<Vec<CycNum>> {
        let i = self.vars.iter().position(|v| v == var);
        let mut groups: BTreeMap<Vec<u32>, Vec<(u32, CycNum)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut oe = e.clone();
            let d = match i {
                Some(i) => {
                    oe.remove(i);
                    e[i]
                }
                None => 0,
            };
            groups.entry(oe).or_default().push((d, c.clone()));
        }
        groups
            .into_values()
            .map(|entries| {
                let deg = entries.iter().map(|(d, _)| *d).max().unwrap() as usize;
                let mut out = vec![CycNum::zero(); deg + 1];
                for (d, c) in entries {
                    out[d as usize] = c;
                }
                out
            })
            .collect()
    }

    pub fn from_univariate(var: &str, coeffs: &[CycNum]) -> Poly {
        let mut p = Poly::zero(&[var]);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    /// Substitute polynomials for variables; unmapped variables stay.
    pub fn substitute_polys(&self, map: &[(&str, Poly)]) -> Poly {
        let mut acc = Poly::constant(CycNum::zero());
        for (e, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let v = &self.vars[i];
                let img = match map.iter().find(|(name, _)| name == v) {
                    Some((_, p)) => p.clone(),
                    None => Poly::var(v),
                };
                term = term.mul(&img.pow(exp));
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Evaluate at rational points for the listed variables (others stay).
    pub fn eval_at(&self, points: &[(&str, CycNum)]) -> Poly {
        let map: Vec<(&str, Poly)> = points
            .iter()
            .map(|(v, c)| (*v, Poly::constant(c.clone())))
            .collect();
        self.substitute_polys(&map)
    }

    pub fn constant_coefficient(&self) -> CycNum {
        self.terms
            .get(&vec![0u32; self.vars.len()])
            .cloned()
            .unwrap_or_else(CycNum::zero)
    }

    fn leading(&self) -> Option<(&Vec<u32>, &CycNum)> {
        self.terms.iter().next_back()
    }

    /// Exact multivariate division: returns the quotient iff `self = q * d`.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (mut rem, d) = Poly::align(self, d);
        let vars = rem.vars.clone();
        let mut quot = Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        };
        let (de, dc) = {
            let (e, c) = d.leading().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (re, rc) = {
                let (e, c) = rem.leading().unwrap();
                (e.clone(), c.clone())
            };
            if !re.iter().zip(&de).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = rc
                .checked_div(&dc)
                .expect("division by nonzero leading coefficient");
            let mut mono = Poly {
                vars: vars.clone(),
                terms: BTreeMap::new(),
            };
            mono.add_term(qe.clone(), qc.clone());
            quot.add_term(qe, qc);
            rem = rem.sub(&mono.mul(&d));
        }
        Some(quot)
    }

    pub fn all_coefficients_rational(&self) -> bool {
        self.terms.values().all(|c| c.is_rational())
    }

    /// Integer rational coefficient accessor for tests: coefficient of the
    /// monomial with the given exponents (aligned to this poly's vars).
    pub fn coefficient(&self, exps: &[(&str, u32)]) -> CycNum {
        let mut e = vec![0u32; self.vars.len()];
        for (v, x) in exps {
            match self.vars.iter().position(|w| w == v) {
                Some(i) => e[i] = *x,
                None => {
                    if *x != 0 {
                        return CycNum::zero();
                    }
                }
            }
        }
        // any variable of self not mentioned must appear with exponent 0
        self.terms.get(&e).cloned().unwrap_or_else(CycNum::zero)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Poly::align(self, other);
        a.terms == b.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest terms first
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = e.iter().all(|&x| x == 0);
            if is_const || !c.is_one() {
                if c.is_rational() {
                    write!(f, "{}", c)?;
                } else {
                    write!(f, "({})", c)?;
                }
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut firstv = true;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !firstv {
                    write!(f, "*")?;
                }
                firstv = false;
                if x == 1 {
                    write!(f, "{}", self.vars[i])?;
                } else {
                    write!(f, "{}^{}", self.vars[i], x)?;
                }
            }
        }
        Ok(())
    }
}

/// Divisibility with quotient: `Some(q)` iff `f = d * q` exactly.
pub fn poly_divides(d: &Poly, f: &Poly) -> Option<Poly> {
    f.divide_exact(d)
}

// ---- univariate helpers shared by the rational-function layer ----

pub(crate) fn uni_trim(p: &mut Vec<CycNum>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn uni_is_zero(p: &[CycNum]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub(crate) fn uni_divmod(num: &[CycNum], den: &[CycNum]) -> (Vec<CycNum>, Vec<CycNum>) {
    let mut rem: Vec<CycNum> = num.to_vec();
    uni_trim(&mut rem);
    let mut den = den.to_vec();
    uni_trim(&mut den);
    assert!(!uni_is_zero(&den));
    let dd = den.len() - 1;
    if rem.len() <= dd || uni_is_zero(&rem) {
        return (vec![CycNum::zero()], rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![CycNum::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].checked_div(&lead).expect("nonzero leading");
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                let v = &rem[i + j] - &(&c * dc);
                rem[i + j] = v;
            }
        }
        quot[i] = c;
    }
    uni_trim(&mut rem);
    uni_trim(&mut quot);
    (quot, rem)
}

/// Monic gcd of univariate polynomials over the coefficient field.
pub(crate) fn uni_gcd(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    uni_trim(&mut r0);
    uni_trim(&mut r1);
    while !uni_is_zero(&r1) {
        let (_, r) = uni_divmod(&r0, &r1);
        r0 = r1;
        r1 = r;
        // keep coefficients tame
        if !uni_is_zero(&r1) {
            let lead = r1.last().unwrap().clone();
            let inv = lead.inverse().unwrap();
            for c in r1.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
    if uni_is_zero(&r0) {
        return vec![CycNum::zero()];
    }
    let lead = r0.last().unwrap().clone();
    let inv = lead.inverse().unwrap();
    for c in r0.iter_mut() {
        *c = &*c * &inv;
    }
    r0
}
