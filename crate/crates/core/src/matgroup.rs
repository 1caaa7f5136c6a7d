//! Finite matrix groups over cyclotomic fields: closure from generators,
//! conjugacy structure, centralizers, and exact eigenvalue data per element.

use crate::cyclotomic::{CycError, CycNum, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;

/// Maximum number of elements produced by closure before giving up.
pub const CLOSURE_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatError {
    #[error("invalid group spec: {0}")]
    Spec(String),
    #[error("group too large or infinite: closure exceeded {bound} elements")]
    TooLarge { bound: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("elements do not commute")]
    NotCommuting,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// Square matrix over a cyclotomic field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<CycNum>,
}

impl Matrix {
    pub fn new(n: usize, entries: Vec<CycNum>) -> Matrix {
        assert_eq!(entries.len(), n * n);
        Matrix { n, entries }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut entries = vec![CycNum::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = CycNum::one();
        }
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycNum::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        Matrix { n, entries }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        Matrix { n, entries }
    }

    pub fn trace(&self) -> CycNum {
        let mut acc = CycNum::zero();
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Determinant by fraction-free style Gaussian elimination over the field.
    pub fn det(&self) -> CycNum {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = CycNum::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r * n + col].is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => return CycNum::zero(),
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = -&det;
            }
            let p = m[col * n + col].clone();
            det = &det * &p;
            let pinv = p.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = &m[r * n + col] * &pinv;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &m[r * n + j] - &(&factor * &m[col * n + j]);
                    m[r * n + j] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix, MatError> {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut inv = Matrix::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !m[r * n + col].is_zero())
                .ok_or(MatError::Singular)?;
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = m[col * n + col].inverse().map_err(|_| MatError::Singular)?;
            for j in 0..n {
                m[col * n + j] = &m[col * n + j] * &pinv;
                inv[col * n + j] = &inv[col * n + j] * &pinv;
            }
            for r in 0..n {
                if r == col || m[r * n + col].is_zero() {
                    continue;
                }
                let factor = m[r * n + col].clone();
                for j in 0..n {
                    let a = &m[r * n + j] - &(&factor * &m[col * n + j]);
                    m[r * n + j] = a;
                    let b = &inv[r * n + j] - &(&factor * &inv[col * n + j]);
                    inv[r * n + j] = b;
                }
            }
        }
        Ok(Matrix { n, entries: inv })
    }

    /// Canonical row-major serialization used for deterministic ordering.
    pub fn canonical_key(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let _ = write!(s, "{};", e);
        }
        s
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

// ---- group spec (JSON surface) ----

/// One term `(p/q) * zeta_N^k` of a matrix entry.
pub type SpecTerm = ((i64, i64), u64);
/// A matrix: rows of entries, each entry a list of terms.
pub type SpecMatrix = Vec<Vec<Vec<SpecTerm>>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub conductor: u64,
    pub dimension: usize,
    pub generators: Vec<SpecMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic_form: Option<SpecMatrix>,
}

fn spec_matrix_to_matrix(m: &SpecMatrix, n: usize, cond: u64) -> Result<Matrix, MatError> {
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(MatError::Spec(format!("matrix is not {0}x{0}", n)));
    }
    let mut entries = Vec::with_capacity(n * n);
    for row in m {
        for entry in row {
            let mut acc = CycNum::zero();
            for &((p, q), k) in entry {
                if q == 0 {
                    return Err(MatError::Spec("zero denominator in coefficient".into()));
                }
                if k >= cond {
                    return Err(MatError::Spec(format!(
                        "root-of-unity exponent {} out of range [0, {})",
                        k, cond
                    )));
                }
                let term = &CycNum::from_frac(p, q) * &CycNum::root_of_unity(cond, k as i64)?;
                acc = &acc + &term;
            }
            entries.push(acc);
        }
    }
    Ok(Matrix::new(n, entries))
}

fn matrix_to_spec_matrix(m: &Matrix, cond: u64) -> Result<SpecMatrix, MatError> {
    let n = m.dim();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let e = m.get(i, j);
            let mut terms = Vec::new();
            if !e.is_zero() {
                let d = e.conductor();
                if cond % d != 0 {
                    return Err(MatError::Internal(format!(
                        "conductor {} does not divide declared conductor {}",
                        d, cond
                    )));
                }
                let lift = cond / d;
                for (k, c) in e.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let p = c
                        .numer()
                        .to_i64()
                        .ok_or_else(|| MatError::Internal("coefficient overflow".into()))?;
                    let q = c
                        .denom()
                        .to_i64()
                        .ok_or_else(|| MatError::Internal("coefficient overflow".into()))?;
                    terms.push(((p, q), k as u64 * lift));
                }
            }
            row.push(terms);
        }
        rows.push(row);
    }
    Ok(rows)
}

impl GroupSpec {
    pub fn from_matrices(
        conductor: u64,
        generators: &[Matrix],
        symplectic_form: Option<&Matrix>,
    ) -> Result<GroupSpec, MatError> {
        let dimension = generators
            .first()
            .map(|g| g.dim())
            .ok_or_else(|| MatError::Spec("no generators".into()))?;
        Ok(GroupSpec {
            conductor,
            dimension,
            generators: generators
                .iter()
                .map(|g| matrix_to_spec_matrix(g, conductor))
                .collect::<Result<_, _>>()?,
            symplectic_form: symplectic_form
                .map(|m| matrix_to_spec_matrix(m, conductor))
                .transpose()?,
        })
    }

    pub fn validate(&self) -> Result<(Vec<Matrix>, Option<Matrix>), MatError> {
        if self.dimension == 0 {
            return Err(MatError::Spec("dimension must be positive".into()));
        }
        if self.conductor == 0 {
            return Err(MatError::Spec("conductor must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(MatError::Spec("no generators".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|m| spec_matrix_to_matrix(m, self.dimension, self.conductor))
            .collect::<Result<Vec<_>, _>>()?;
        let form = self
            .symplectic_form
            .as_ref()
            .map(|m| spec_matrix_to_matrix(m, self.dimension, self.conductor))
            .transpose()?;
        Ok((gens, form))
    }
}

// ---- eigen data ----

/// Eigenvalue multiset of a finite-order matrix: pairs `(j, mult)` meaning
/// the eigenvalue `e^{2 pi i j / m}` occurs `mult` times, `0 <= j < m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenData {
    pub order: u64,
    pub mults: Vec<(u64, usize)>,
}

impl EigenData {
    pub fn dimension(&self) -> usize {
        self.mults.iter().map(|&(_, m)| m).sum()
    }

    /// Multiplicity of the eigenvalue 1, i.e. dim of the fixed space.
    pub fn dim_fixed(&self) -> usize {
        self.mults
            .iter()
            .find(|&&(j, _)| j == 0)
            .map_or(0, |&(_, m)| m)
    }

    /// `sum mult * (j / m)` with `j/m` in `[0, 1)`.
    pub fn age(&self) -> Rat {
        let mut acc = Rat::zero();
        for &(j, m) in &self.mults {
            acc += Rat::new((j as i64 * m as i64).into(), (self.order as i64).into());
        }
        acc
    }

    /// Eigenvalues as cyclotomic numbers with multiplicities.
    pub fn eigenvalues(&self) -> Vec<(CycNum, usize)> {
        self.mults
            .iter()
            .map(|&(j, m)| {
                (
                    CycNum::root_of_unity(self.order, j as i64).expect("conductor in range"),
                    m,
                )
            })
            .collect()
    }
}

fn integer_multiplicity(value: &CycNum, what: &str) -> Result<usize, MatError> {
    let r = value
        .to_rational()
        .ok_or_else(|| MatError::Internal(format!("{} is not rational: {}", what, value)))?;
    if !r.is_integer() || r.is_negative() {
        return Err(MatError::Internal(format!(
            "{} is not a nonnegative integer: {}",
            what, r
        )));
    }
    r.to_integer()
        .to_usize()
        .ok_or_else(|| MatError::Internal(format!("{} overflows", what)))
}

/// Eigenvalue multiset by the character sum: the multiplicity of
/// `zeta_m^j` is `(1/m) sum_k zeta_m^{-jk} tr(g^k)`.
pub fn eigen_data(g: &Matrix) -> Result<EigenData, MatError> {
    let n = g.dim();
    let mut traces = Vec::new();
    let mut p = Matrix::identity(n);
    let mut order = 0u64;
    loop {
        if order > 0 && p.is_identity() {
            break;
        }
        if order as usize > CLOSURE_BOUND {
            return Err(MatError::TooLarge {
                bound: CLOSURE_BOUND,
            });
        }
        traces.push(p.trace());
        p = p.mul(g);
        order += 1;
    }
    let m = order;
    let minv = CycNum::from_frac(1, m as i64);
    let mut mults = Vec::new();
    let mut total = 0usize;
    for j in 0..m {
        let mut acc = CycNum::zero();
        for (k, t) in traces.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let rot = CycNum::root_of_unity(m, -((j as i64) * (k as i64)))?;
            acc = &acc + &(&rot * t);
        }
        let mult = integer_multiplicity(&(&acc * &minv), "eigenvalue multiplicity")?;
        if mult > 0 {
            mults.push((j, mult));
            total += mult;
        }
    }
    if total != n {
        return Err(MatError::Internal(format!(
            "eigenvalue multiplicities sum to {} instead of {}",
            total, n
        )));
    }
    Ok(EigenData { order: m, mults })
}

/// Joint eigenspace dimensions of a commuting pair: entry `((j, l), d)` is
/// `dim E(g = zeta_a^j, h = zeta_b^l)`.
pub fn joint_eigen_multiplicity(
    g: &Matrix,
    h: &Matrix,
) -> Result<Vec<((u64, u64), usize)>, MatError> {
    if g.mul(h) != h.mul(g) {
        return Err(MatError::NotCommuting);
    }
    let n = g.dim();
    let eg = eigen_data(g)?;
    let eh = eigen_data(h)?;
    let (a, b) = (eg.order, eh.order);
    // tr(g^k h^kp) for all k < a, kp < b
    let mut gpows = Vec::with_capacity(a as usize);
    let mut p = Matrix::identity(n);
    for _ in 0..a {
        gpows.push(p.clone());
        p = p.mul(g);
    }
    let mut traces = vec![vec![CycNum::zero(); b as usize]; a as usize];
    for (k, gp) in gpows.iter().enumerate() {
        let mut q = gp.clone();
        for kp in 0..b as usize {
            traces[k][kp] = q.trace();
            q = q.mul(h);
        }
    }
    let scale = CycNum::from_frac(1, (a * b) as i64);
    let mut out = Vec::new();
    let mut row_sums: HashMap<u64, usize> = HashMap::new();
    let mut col_sums: HashMap<u64, usize> = HashMap::new();
    for &(j, _) in &eg.mults {
        for &(l, _) in &eh.mults {
            let mut acc = CycNum::zero();
            for k in 0..a {
                for kp in 0..b {
                    let t = &traces[k as usize][kp as usize];
                    if t.is_zero() {
                        continue;
                    }
                    let rot = &CycNum::root_of_unity(a, -((j * k) as i64))?
                        * &CycNum::root_of_unity(b, -((l * kp) as i64))?;
                    acc = &acc + &(&rot * t);
                }
            }
            let d = integer_multiplicity(&(&acc * &scale), "joint eigenspace dimension")?;
            if d > 0 {
                *row_sums.entry(j).or_insert(0) += d;
                *col_sums.entry(l).or_insert(0) += d;
                out.push(((j, l), d));
            }
        }
    }
    for &(j, m) in &eg.mults {
        if row_sums.get(&j).copied().unwrap_or(0) != m {
            return Err(MatError::Internal(
                "joint eigenspace row sums disagree with eigen data".into(),
            ));
        }
    }
    for &(l, m) in &eh.mults {
        if col_sums.get(&l).copied().unwrap_or(0) != m {
            return Err(MatError::Internal(
                "joint eigenspace column sums disagree with eigen data".into(),
            ));
        }
    }
    Ok(out)
}

// ---- the group ----

#[derive(Debug)]
pub struct MatGroup {
    n: usize,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    inverse: Vec<usize>,
    orders: Vec<u64>,
    /// conjugacy classes as sorted element-index lists; representative is the
    /// first (lowest-index) element
    classes: Vec<Vec<usize>>,
    /// centralizer of each class representative, as sorted element indices
    centralizers: Vec<Vec<usize>>,
    eigen: Vec<EigenData>,
    is_special_linear: bool,
    is_symplectic: bool,
}

/// Standard antisymmetric form with identity off-diagonal blocks.
pub fn standard_symplectic_form(n: usize) -> Matrix {
    assert!(n % 2 == 0);
    let m = n / 2;
    let mut entries = vec![CycNum::zero(); n * n];
    for i in 0..m {
        entries[i * n + (m + i)] = CycNum::one();
        entries[(m + i) * n + i] = -&CycNum::one();
    }
    Matrix::new(n, entries)
}

pub fn close_group(generators: &[Matrix], form: Option<&Matrix>) -> Result<MatGroup, MatError> {
    let n = generators
        .first()
        .map(|g| g.dim())
        .ok_or_else(|| MatError::Spec("no generators".into()))?;
    if generators.iter().any(|g| g.dim() != n) {
        return Err(MatError::Spec("generators have mixed dimensions".into()));
    }
    for g in generators {
        if g.det().is_zero() {
            return Err(MatError::Singular);
        }
    }
    let mut elements = vec![Matrix::identity(n)];
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let mut layer: Vec<Matrix> = Vec::new();
        for &i in &frontier {
            for g in generators {
                let p = elements[i].mul(g);
                if !index.contains_key(&p) && !layer.contains(&p) {
                    layer.push(p);
                }
            }
        }
        layer.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
        frontier = Vec::new();
        for p in layer {
            if elements.len() >= CLOSURE_BOUND {
                return Err(MatError::TooLarge {
                    bound: CLOSURE_BOUND,
                });
            }
            let idx = elements.len();
            index.insert(p.clone(), idx);
            elements.push(p);
            frontier.push(idx);
        }
    }
    let size = elements.len();
    let lookup = |m: &Matrix, index: &HashMap<Matrix, usize>| -> Result<usize, MatError> {
        index
            .get(m)
            .copied()
            .ok_or_else(|| MatError::Internal("product escaped the closure".into()))
    };
    // orders and inverses
    let mut orders = vec![0u64; size];
    let mut inverse = vec![0usize; size];
    for i in 0..size {
        let mut j = i;
        let mut prev = i;
        let mut ord = 1u64;
        while j != 0 {
            prev = j;
            j = lookup(&elements[j].mul(&elements[i]), &index)?;
            ord += 1;
            if ord as usize > size + 1 {
                return Err(MatError::Internal("element order exceeds group order".into()));
            }
        }
        orders[i] = if i == 0 { 1 } else { ord };
        inverse[i] = prev;
    }
    // conjugacy classes
    let mut class_of = vec![usize::MAX; size];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..size {
        if class_of[i] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        let mut members = Vec::new();
        for h in 0..size {
            let conj = elements[h]
                .mul(&elements[i])
                .mul(&elements[inverse[h]]);
            let j = lookup(&conj, &index)?;
            if class_of[j] == usize::MAX {
                class_of[j] = cid;
                members.push(j);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    // centralizers of representatives
    let mut centralizers = Vec::with_capacity(classes.len());
    for cls in &classes {
        let r = cls[0];
        let c: Vec<usize> = (0..size)
            .filter(|&g| elements[g].mul(&elements[r]) == elements[r].mul(&elements[g]))
            .collect();
        if c.len() * cls.len() != size {
            return Err(MatError::Internal(
                "centralizer order times class size differs from group order".into(),
            ));
        }
        centralizers.push(c);
    }
    // eigen data
    let eigen = elements
        .iter()
        .map(eigen_data)
        .collect::<Result<Vec<_>, _>>()?;
    // predicates
    let is_special_linear = elements.iter().all(|g| g.det().is_one());
    let is_symplectic = n % 2 == 0 && {
        let j = match form {
            Some(f) => f.clone(),
            None => standard_symplectic_form(n),
        };
        generators.iter().all(|g| g.transpose().mul(&j).mul(g) == j)
    };
    Ok(MatGroup {
        n,
        elements,
        index,
        inverse,
        orders,
        classes,
        centralizers,
        eigen,
        is_special_linear,
        is_symplectic,
    })
}

impl MatGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<MatGroup, MatError> {
        let (gens, form) = spec.validate()?;
        close_group(&gens, form.as_ref())
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn centralizer(&self, class: usize) -> &[usize] {
        &self.centralizers[class]
    }

    pub fn eigen(&self, i: usize) -> &EigenData {
        &self.eigen[i]
    }

    pub fn is_special_linear(&self) -> bool {
        self.is_special_linear
    }

    pub fn is_symplectic(&self) -> bool {
        self.is_symplectic
    }

    /// True when every element's eigenvalue multiset is closed under
    /// inversion, i.e. the defining representation is isomorphic to its
    /// dual.  The group being closed under g -> g^-1 is automatic and
    /// weaker; this asks for the symmetry elementwise.
    pub fn is_self_dual(&self) -> bool {
        self.eigen.iter().all(|e| {
            e.mults.iter().all(|&(j, m)| {
                let k = (e.order - j) % e.order;
                e.mults.iter().any(|&(j2, m2)| j2 == k && m2 == m)
            })
        })
    }

    pub fn age(&self, i: usize) -> Rat {
        self.eigen[i].age()
    }

    /// Canonical text dump: elements, class table, centralizer orders.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "order {}", self.order());
        let _ = writeln!(out, "dimension {}", self.n);
        let _ = writeln!(
            out,
            "special_linear {} symplectic {}",
            self.is_special_linear, self.is_symplectic
        );
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "element {} order {}: {}", i, self.orders[i], e.canonical_key());
        }
        for (c, cls) in self.classes.iter().enumerate() {
            let _ = writeln!(
                out,
                "class {} size {} rep {} centralizer {} members {:?}",
                c,
                cls.len(),
                cls[0],
                self.centralizers[c].len(),
                cls
            );
        }
        out
    }
}
