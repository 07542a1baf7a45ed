use super::{closure::is_ideal, Element, Parity, Realization, SparseVec, SuperAlgebra};
use crate::error::{check_len, Error, Result};
use crate::exact::{Coordinatizer, Scalar, Subspace};

/// Subalgebra of `ambient` spanned by the given (label, vector) pairs, with
/// structure constants computed by bracketing in `ambient` and solving for
/// coordinates.
///
/// Fails if a vector is not homogeneous, the list is dependent, or the span
/// is not bracket-closed. Z-degrees are inherited when every vector is
/// Z-homogeneous in the ambient grading, and dropped otherwise.
pub fn subalgebra_of(
    ambient: &SuperAlgebra,
    name: &str,
    elements: Vec<(String, Vec<Scalar>)>,
) -> Result<SuperAlgebra> {
    let (labels, vectors): (Vec<String>, Vec<Vec<Scalar>>) = elements.into_iter().unzip();
    let mut parity = Vec::with_capacity(vectors.len());
    for (l, v) in labels.iter().zip(&vectors) {
        check_len(ambient.dim(), v.len())?;
        parity.push(ambient.homogeneous_parity(v).ok_or_else(|| {
            Error::Structural(format!("`{l}` is zero or not parity-homogeneous"))
        })?);
    }
    let coords = Coordinatizer::new(ambient.dim(), &vectors)?;
    let alg = SuperAlgebra::from_fn(name, labels.clone(), parity, |i, j| {
        let w = ambient.bracket_coeffs(&vectors[i], &vectors[j]);
        let c = coords.coords(&w)?.ok_or_else(|| {
            Error::Structural(format!(
                "span is not bracket-closed: [{}, {}] leaves it",
                labels[i], labels[j]
            ))
        })?;
        Ok(to_sparse(c))
    })?;
    let alg = match ambient.z_degrees().and_then(|z| inherited_degrees(z, &vectors)) {
        Some(degs) => alg.with_z_grading(degs, ambient.is_z_graded())?,
        None => alg,
    };
    match ambient.realization() {
        Some(r) => {
            let images = vectors.iter().map(|v| compose(&r.images, v)).collect();
            let realization = Realization {
                model: r.model,
                images,
                kernel: r.kernel.clone(),
                frame: Vec::new(),
            };
            alg.with_realization(realization)
        }
        None => Ok(alg),
    }
}

fn inherited_degrees(z: &[i32], vectors: &[Vec<Scalar>]) -> Option<Vec<i32>> {
    let mut degs = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut d = None;
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match d {
                None => d = Some(z[k]),
                Some(x) if x != z[k] => return None,
                _ => {}
            }
        }
        degs.push(d?);
    }
    Some(degs)
}

fn compose(images: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    let n = images.first().map_or(0, |x| x.len());
    let mut out = vec![Scalar::zero(); n];
    for (c, img) in v.iter().zip(images) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(img) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

pub(crate) fn to_sparse(v: Vec<Scalar>) -> SparseVec {
    v.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// A quotient `parent / kernel` together with the chosen section.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub parent: SuperAlgebra,
    pub kernel: Subspace,
    /// Parent basis indices whose cosets form the quotient basis.
    pub section: Vec<usize>,
    pub quotient: SuperAlgebra,
    coords: Coordinatizer,
}

impl QuotientMap {
    /// Image in the quotient of a parent element.
    pub fn project(&self, x: &Element) -> Result<Element> {
        if x.algebra_name() != self.parent.name() {
            return Err(Error::Usage("element is not in the parent algebra".into()));
        }
        let c = self
            .coords
            .coords(x.coeffs())?
            .expect("section plus kernel spans the parent");
        self.quotient.element(c[..self.section.len()].to_vec())
    }

    /// Section representative of a quotient element.
    pub fn lift(&self, y: &Element) -> Result<Element> {
        if y.algebra_name() != self.quotient.name() {
            return Err(Error::Usage("element is not in the quotient algebra".into()));
        }
        let mut v = vec![Scalar::zero(); self.parent.dim()];
        for (c, &s) in y.coeffs().iter().zip(&self.section) {
            v[s] = c.clone();
        }
        self.parent.element(v)
    }
}

/// Quotient of `a` by the ideal `k`. The complement is spanned by the
/// lexicographically first basis elements that stay independent modulo `k`.
pub fn quotient_by_ideal(a: &SuperAlgebra, k: &Subspace, name: &str) -> Result<QuotientMap> {
    check_len(a.dim(), k.ambient_dim())?;
    if !is_ideal(a, k)? {
        return Err(Error::Usage("subspace is not an ideal".into()));
    }
    for v in k.basis() {
        if a.homogeneous_parity(v).is_none() {
            return Err(Error::Usage("kernel must be spanned by homogeneous vectors".into()));
        }
    }
    let mut acc = k.clone();
    let mut section = Vec::new();
    for i in 0..a.dim() {
        if acc.insert(&crate::exact::unit(a.dim(), i))? {
            section.push(i);
        }
    }
    let mut vectors: Vec<Vec<Scalar>> = section
        .iter()
        .map(|&i| crate::exact::unit(a.dim(), i))
        .collect();
    vectors.extend(k.basis().iter().cloned());
    let coords = Coordinatizer::new(a.dim(), &vectors)?;
    let q = section.len();
    let labels: Vec<String> = section.iter().map(|&i| a.label(i).to_string()).collect();
    let parity: Vec<Parity> = section.iter().map(|&i| a.parity(i)).collect();
    let quotient = SuperAlgebra::from_fn(name, labels, parity, |i, j| {
        let w = a.basis_bracket_dense(section[i], section[j]);
        let c = coords.coords(&w)?.expect("section plus kernel spans the parent");
        Ok(to_sparse(c[..q].to_vec()))
    })?;
    let quotient = match a.z_degrees() {
        Some(z) => quotient.with_z_grading(section.iter().map(|&i| z[i]).collect(), a.is_z_graded())?,
        None => quotient,
    };
    let quotient = match a.realization() {
        Some(r) => {
            let mut kernel = r.kernel.clone();
            kernel.extend(k.basis().iter().map(|v| compose(&r.images, v)));
            quotient.with_realization(Realization {
                model: r.model,
                images: section.iter().map(|&i| r.images[i].clone()).collect(),
                kernel,
                frame: Vec::new(),
            })?
        }
        None => quotient,
    };
    Ok(QuotientMap {
        parent: a.clone(),
        kernel: k.clone(),
        section,
        quotient,
        coords,
    })
}

impl SuperAlgebra {
    /// Coordinates of an ambient-model vector in this algebra's basis, or
    /// `None` if it does not lie in the realized span (modulo the kernel).
    pub fn from_ambient(&self, v: &[Scalar]) -> Result<Option<Element>> {
        let r = self
            .realization()
            .ok_or_else(|| Error::Usage(format!("`{}` has no concrete realization", self.name())))?;
        let mut vecs = r.images.clone();
        vecs.extend(r.kernel.iter().cloned());
        let n = vecs.first().map_or(0, |x| x.len());
        let c = Coordinatizer::new(n, &vecs)?;
        Ok(match c.coords(v)? {
            Some(c) => Some(self.element(c[..self.dim()].to_vec())?),
            None => None,
        })
    }

    /// Ambient-model image of an element (a representative, for quotients).
    pub fn to_ambient(&self, x: &Element) -> Result<Vec<Scalar>> {
        let r = self
            .realization()
            .ok_or_else(|| Error::Usage(format!("`{}` has no concrete realization", self.name())))?;
        check_len(self.dim(), x.coeffs().len())?;
        Ok(compose(&r.images, x.coeffs()))
    }

    /// True if the ambient vector is zero modulo the realization kernel.
    pub fn ambient_is_zero(&self, v: &[Scalar]) -> Result<bool> {
        let r = self
            .realization()
            .ok_or_else(|| Error::Usage(format!("`{}` has no concrete realization", self.name())))?;
        let n = v.len();
        let k = Subspace::span(n, r.kernel.iter().cloned())?;
        k.contains(v)
    }
}
