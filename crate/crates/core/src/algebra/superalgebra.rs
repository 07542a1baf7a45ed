use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::exact::{Scalar, Subspace};
use crate::family::Family;

/// Z2-degree of a homogeneous element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != other.is_odd())
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.bit()
    }
}

impl TryFrom<u8> for Parity {
    type Error = String;
    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(format!("parity must be 0 or 1, got {v}")),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Sparse vector: `(basis index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Scalar)>;

/// How basis elements of an algebra sit inside a concrete ambient model
/// (matrices in gl(r|s), or derivations of a Grassmann algebra).
#[derive(Clone, Debug)]
pub struct Realization {
    pub model: Model,
    /// Ambient coordinates of each basis element (or of its coset representative).
    pub images: Vec<Vec<Scalar>>,
    /// Ambient vectors that are identified with zero (the ideal quotiented out).
    pub kernel: Vec<Vec<Scalar>>,
    /// Standard Cartan frame in ambient coordinates.
    pub frame: Vec<(String, Vec<Scalar>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// gl(r|s) with basis e_ij in row-major order.
    Matrix { even: usize, odd: usize },
    /// W(n) in its standard basis `x^u d_i`.
    Derivation { n: usize },
}

/// A finite-dimensional Lie superalgebra given by structure constants in a
/// fixed homogeneous basis.
///
/// Only brackets `[b_i, b_j]` with `i <= j` are stored; the reversed order
/// follows from super anticommutativity.
#[derive(Clone)]
pub struct SuperAlgebra {
    name: Arc<str>,
    labels: Vec<String>,
    parity: Vec<Parity>,
    table: Vec<SparseVec>,
    z_degree: Option<Vec<i32>>,
    z_graded: bool,
    family: Option<Family>,
    realization: Option<Realization>,
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    j * (j + 1) / 2 + i
}

impl SuperAlgebra {
    /// Builds the table by evaluating `bracket(i, j)` for every `i <= j`.
    pub fn from_fn<F>(
        name: impl Into<String>,
        labels: Vec<String>,
        parity: Vec<Parity>,
        mut bracket: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<SparseVec>,
    {
        let dim = labels.len();
        check_len(dim, parity.len())?;
        let mut table = Vec::with_capacity(dim * (dim + 1) / 2);
        for j in 0..dim {
            for i in 0..=j {
                let mut v: SparseVec = bracket(i, j)?
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                v.sort_by_key(|(k, _)| *k);
                for (k, _) in &v {
                    if *k >= dim {
                        return Err(Error::Usage(format!("bracket result index {k} out of range")));
                    }
                }
                table.push(v);
            }
        }
        Ok(SuperAlgebra {
            name: name.into().into(),
            labels,
            parity,
            table,
            z_degree: None,
            z_graded: false,
            family: None,
            realization: None,
        })
    }

    pub fn abelian(name: &str, parity: Vec<Parity>) -> Self {
        let labels = (0..parity.len()).map(|i| format!("b{}", i + 1)).collect();
        SuperAlgebra::from_fn(name, labels, parity, |_, _| Ok(Vec::new())).expect("abelian")
    }

    pub fn with_z_grading(mut self, degrees: Vec<i32>, graded: bool) -> Result<Self> {
        check_len(self.dim(), degrees.len())?;
        self.z_degree = Some(degrees);
        self.z_graded = graded;
        Ok(self)
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn with_realization(mut self, r: Realization) -> Result<Self> {
        check_len(self.dim(), r.images.len())?;
        self.realization = Some(r);
        Ok(self)
    }

    pub(crate) fn set_name(&mut self, name: &str) {
        self.name = name.into();
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn z_degrees(&self) -> Option<&[i32]> {
        self.z_degree.as_deref()
    }

    /// False for algebras whose nominal Z-layers are not bracket-compatible.
    pub fn is_z_graded(&self) -> bool {
        self.z_degree.is_some() && self.z_graded
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    /// Indices of basis elements of the given parity.
    pub fn indices_of(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity[i] == p).collect()
    }

    pub fn layer(&self, k: i32) -> Vec<usize> {
        match &self.z_degree {
            Some(z) => (0..self.dim()).filter(|&i| z[i] == k).collect(),
            None => Vec::new(),
        }
    }

    /// `[b_i, b_j]` as a sparse vector, with the sign rule applied when
    /// `i > j`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> (bool, &SparseVec) {
        if i <= j {
            (false, &self.table[pair_index(i, j)])
        } else {
            // [b_i, b_j] = -(-1)^{p_i p_j} [b_j, b_i]
            let both_odd = self.parity[i].is_odd() && self.parity[j].is_odd();
            (!both_odd, &self.table[pair_index(j, i)])
        }
    }

    pub fn basis_bracket_dense(&self, i: usize, j: usize) -> Vec<Scalar> {
        let (neg, v) = self.basis_bracket(i, j);
        let mut out = vec![Scalar::zero(); self.dim()];
        for (k, c) in v {
            out[*k] = if neg { -c } else { c.clone() };
        }
        out
    }

    /// Bilinear bracket on raw coefficient vectors. Lengths are not checked.
    pub fn bracket_coeffs(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        let xs: Vec<usize> = (0..d).filter(|&i| !x[i].is_zero()).collect();
        let ys: Vec<usize> = (0..d).filter(|&j| !y[j].is_zero()).collect();
        for &i in &xs {
            for &j in &ys {
                let (neg, v) = self.basis_bracket(i, j);
                if v.is_empty() {
                    continue;
                }
                let mut f = &x[i] * &y[j];
                if neg {
                    f = -f;
                }
                for (k, c) in v {
                    out[k.to_owned()] += &(&f * c);
                }
            }
        }
        out
    }

    /// `ad(b_i)` applied to a coefficient vector.
    pub fn ad_basis(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let (neg, v) = self.basis_bracket(i, j);
            for (k, c) in v {
                let t = yj * c;
                if neg {
                    out[*k] -= &t;
                } else {
                    out[*k] += &t;
                }
            }
        }
        out
    }

    pub fn element(&self, coeffs: Vec<Scalar>) -> Result<Element> {
        check_len(self.dim(), coeffs.len())?;
        Ok(Element {
            algebra: self.name.clone(),
            coeffs,
        })
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.name.clone(),
            coeffs: vec![Scalar::zero(); self.dim()],
        }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero();
        e.coeffs[i] = Scalar::one();
        e
    }

    /// Element built from `(label, coefficient)` pairs.
    pub fn element_from_labels(&self, terms: &[(&str, i64)]) -> Result<Element> {
        let mut e = self.zero();
        for (label, c) in terms {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::Usage(format!("no basis element labelled `{label}`")))?;
            e.coeffs[i] += &Scalar::from(*c);
        }
        Ok(e)
    }

    fn check_owned(&self, x: &Element) -> Result<()> {
        if x.algebra != self.name {
            return Err(Error::Usage(format!(
                "element of `{}` used with algebra `{}`",
                x.algebra, self.name
            )));
        }
        check_len(self.dim(), x.coeffs.len())
    }

    /// The superbracket `[x, y]`.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_owned(x)?;
        self.check_owned(y)?;
        Ok(Element {
            algebra: self.name.clone(),
            coeffs: self.bracket_coeffs(&x.coeffs, &y.coeffs),
        })
    }

    /// Splits an element into its even and odd components.
    pub fn split_parity(&self, x: &Element) -> (Element, Element) {
        let mut even = self.zero();
        let mut odd = self.zero();
        for (i, c) in x.coeffs.iter().enumerate() {
            match self.parity[i] {
                Parity::Even => even.coeffs[i] = c.clone(),
                Parity::Odd => odd.coeffs[i] = c.clone(),
            }
        }
        (even, odd)
    }

    /// Parity of `x` if it is homogeneous and nonzero.
    pub fn homogeneous_parity(&self, x: &[Scalar]) -> Option<Parity> {
        let mut seen = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(self.parity[i]),
                Some(p) if p != self.parity[i] => return None,
                _ => {}
            }
        }
        seen
    }

    pub fn even_part(&self) -> Subspace {
        self.span_of_indices(&self.indices_of(Parity::Even))
    }

    pub fn odd_part(&self) -> Subspace {
        self.span_of_indices(&self.indices_of(Parity::Odd))
    }

    pub fn span_of_indices(&self, idx: &[usize]) -> Subspace {
        Subspace::span(self.dim(), idx.iter().map(|&i| crate::exact::unit(self.dim(), i)))
            .expect("unit vectors have ambient length")
    }

    /// Human-readable expansion of a coefficient vector in basis labels.
    pub fn describe(&self, x: &[Scalar]) -> String {
        let mut out = String::new();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&self.labels[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Inverse of [`describe`](Self::describe): a combination of basis labels
    /// with terms separated by ` + ` or ` - ` and coefficients written `c*`.
    pub fn parse_combination(&self, s: &str) -> Result<Element> {
        let bad = || Error::Parse(format!("`{s}` is not a combination of basis labels"));
        let t = s.trim();
        let mut v = vec![Scalar::zero(); self.dim()];
        if t == "0" {
            return self.element(v);
        }
        let (mut neg, mut rest) = match t.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, t),
        };
        loop {
            let next = [" + ", " - "].iter().filter_map(|sep| rest.find(sep)).min();
            let (term, tail) = match next {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let (c, label) = match self.index_of(term) {
                Some(_) => (Scalar::one(), term),
                None => match term.split_once('*') {
                    Some((c, l)) => (c.parse::<Scalar>().map_err(|_| bad())?, l),
                    None => return Err(bad()),
                },
            };
            let k = self.index_of(label).ok_or_else(bad)?;
            v[k] += &(if neg { -c } else { c });
            match tail {
                Some(r) => {
                    neg = r.starts_with(" - ");
                    rest = &r[3..];
                }
                None => return self.element(v),
            }
        }
    }

    pub(crate) fn from_raw_parts(
        name: &str,
        labels: Vec<String>,
        parity: Vec<Parity>,
        table: Vec<SparseVec>,
        z_degree: Option<Vec<i32>>,
    ) -> Self {
        SuperAlgebra {
            name: name.into(),
            labels,
            parity,
            table,
            z_degree,
            z_graded: false,
            family: None,
            realization: None,
        }
    }

    /// Replaces the stored coefficient of `b_k` in `[b_i, b_j]` (`i <= j`).
    /// Meant for fault-injection tests of the axiom checker.
    pub fn with_entry(mut self, i: usize, j: usize, k: usize, c: Scalar) -> Result<Self> {
        if i > j || j >= self.dim() || k >= self.dim() {
            return Err(Error::Usage(format!("entry ({i},{j})->{k} out of range")));
        }
        let v = &mut self.table[pair_index(i, j)];
        v.retain(|(kk, _)| *kk != k);
        if !c.is_zero() {
            v.push((k, c));
            v.sort_by_key(|(kk, _)| *kk);
        }
        Ok(self)
    }
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuperAlgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("even", &self.indices_of(Parity::Even).len())
            .field("odd", &self.indices_of(Parity::Odd).len())
            .finish()
    }
}

/// A vector in a specific algebra, expanded in its standard basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    algebra: Arc<str>,
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn algebra_name(&self) -> &str {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(&self, other: &Element, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Element> {
        if self.algebra != other.algebra {
            return Err(Error::Usage(format!(
                "cannot combine elements of `{}` and `{}`",
                self.algebra, other.algebra
            )));
        }
        check_len(self.coeffs.len(), other.coeffs.len())?;
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a - b)
    }
}

impl SuperAlgebra {
    /// Attaches the standard Cartan frame, given in ambient-model coordinates.
    pub fn with_frame(mut self, frame: Vec<(String, Vec<Scalar>)>) -> Result<Self> {
        let r = self
            .realization
            .as_mut()
            .ok_or_else(|| Error::Usage("frame needs a realization".into()))?;
        r.frame = frame;
        Ok(self)
    }
}
