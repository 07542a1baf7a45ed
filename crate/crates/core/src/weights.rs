//! Standard Cartan frames, adjoint weight decompositions, separating
//! elements and eigencomponent extraction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{generated_submodule, Element, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Coordinatizer, Matrix, Scalar, Subspace};

/// Values of a weight on the ordered frame basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightFunctional(pub Vec<Scalar>);

impl WeightFunctional {
    pub fn zero(rank: usize) -> Self {
        WeightFunctional(vec![Scalar::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        WeightFunctional(v.iter().map(|&x| Scalar::from(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &WeightFunctional) -> WeightFunctional {
        WeightFunctional(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> WeightFunctional {
        WeightFunctional(self.0.iter().map(|a| -a).collect())
    }

    /// Value on the frame element with the given coordinates.
    pub fn eval(&self, coords: &[Scalar]) -> Scalar {
        self.0.iter().zip(coords).map(|(a, c)| a * c).sum()
    }

    pub fn eval_int(&self, coords: &[i64]) -> Scalar {
        self.0.iter().zip(coords).map(|(a, &c)| a * &Scalar::from(c)).sum()
    }
}

impl fmt::Display for WeightFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Scalar::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for WeightFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A commuting family of elements acting diagonally on the standard basis,
/// with the weight of every basis element.
#[derive(Clone, Debug)]
pub struct CartanFrame {
    algebra: String,
    labels: Vec<String>,
    h: Vec<Element>,
    weights: Vec<WeightFunctional>,
}

impl CartanFrame {
    /// Validates that `h` commutes pairwise and is ad-diagonal on the
    /// standard basis of `a`.
    pub fn new(a: &SuperAlgebra, labels: Vec<String>, h: Vec<Element>) -> Result<Self> {
        crate::error::check_len(labels.len(), h.len())?;
        for x in &h {
            if x.algebra_name() != a.name() {
                return Err(Error::Usage("frame element from another algebra".into()));
            }
            if a.homogeneous_parity(x.coeffs()) != Some(Parity::Even) {
                return Err(Error::Structural("frame elements must be even and nonzero".into()));
            }
        }
        for i in 0..h.len() {
            for j in i + 1..h.len() {
                if !a.bracket(&h[i], &h[j])?.is_zero() {
                    return Err(Error::Structural(format!(
                        "frame elements {} and {} do not commute",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut weights = vec![Vec::with_capacity(h.len()); a.dim()];
        for (hi, hl) in h.iter().zip(&labels) {
            for (k, w) in weights.iter_mut().enumerate() {
                let img = a.bracket_coeffs(hi.coeffs(), &crate::exact::unit(a.dim(), k));
                let c = img[k].clone();
                let diagonal = img
                    .iter()
                    .enumerate()
                    .all(|(j, v)| j == k || v.is_zero());
                if !diagonal {
                    return Err(Error::Structural(format!(
                        "basis element {} is not an eigenvector of ad({hl})",
                        a.label(k)
                    )));
                }
                w.push(c);
            }
        }
        Ok(CartanFrame {
            algebra: a.name().to_string(),
            labels,
            h,
            weights: weights.into_iter().map(WeightFunctional).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.h.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> &[Element] {
        &self.h
    }

    /// Weight of the `k`-th standard basis element.
    pub fn weight_of(&self, k: usize) -> &WeightFunctional {
        &self.weights[k]
    }

    /// `Σ c_i h_i`.
    pub fn element(&self, a: &SuperAlgebra, coords: &[Scalar]) -> Result<Element> {
        crate::error::check_len(self.rank(), coords.len())?;
        let mut v = vec![Scalar::zero(); a.dim()];
        for (c, h) in coords.iter().zip(&self.h) {
            for (o, x) in v.iter_mut().zip(h.coeffs()) {
                *o += &(c * x);
            }
        }
        a.element(v)
    }

    pub fn element_int(&self, a: &SuperAlgebra, coords: &[i64]) -> Result<Element> {
        let c: Vec<Scalar> = coords.iter().map(|&x| Scalar::from(x)).collect();
        self.element(a, &c)
    }

    /// Frame coordinates of `x`, if it lies in the frame span.
    pub fn coords_of(&self, x: &Element) -> Result<Option<Vec<Scalar>>> {
        let vecs: Vec<Vec<Scalar>> = self.h.iter().map(|h| h.coeffs().to_vec()).collect();
        Coordinatizer::new(x.coeffs().len(), &vecs)?.coords(x.coeffs())
    }

    /// Weight of a nonzero weight vector (all support in one weight).
    pub fn weight_of_vector(&self, x: &[Scalar]) -> Option<WeightFunctional> {
        let mut w: Option<&WeightFunctional> = None;
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match w {
                None => w = Some(&self.weights[k]),
                Some(v) if v != &self.weights[k] => return None,
                _ => {}
            }
        }
        w.cloned()
    }

    /// Distinct eigenvalues of `ad(a)` on the support of `x`, in increasing
    /// order, where `a` lies in the frame span.
    pub fn eigenvalues_on(&self, a: &Element, x: &Element) -> Result<Vec<Scalar>> {
        let c = self
            .coords_of(a)?
            .ok_or_else(|| Error::Usage("element is not in the frame span".into()))?;
        let vals: BTreeSet<Scalar> = x.support().into_iter().map(|k| self.weights[k].eval(&c)).collect();
        Ok(vals.into_iter().collect())
    }
}

/// The frame recorded by the family builder, checked against the algebra.
pub fn standard_cartan(a: &SuperAlgebra) -> Result<CartanFrame> {
    let r = a
        .realization()
        .filter(|r| !r.frame.is_empty())
        .ok_or_else(|| Error::Usage(format!("{} carries no standard Cartan frame", a.name())))?;
    let mut labels = Vec::new();
    let mut h = Vec::new();
    for (l, v) in &r.frame {
        let x = a
            .from_ambient(v)?
            .ok_or_else(|| Error::Structural(format!("frame element {l} is not in {}", a.name())))?;
        labels.push(l.clone());
        h.push(x);
    }
    CartanFrame::new(a, labels, h)
}

/// Which basis elements a decomposition covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightFilter {
    All,
    Parity(Parity),
    Layer(i32),
}

/// Standard basis elements grouped by weight.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub filter: WeightFilter,
    pub spaces: BTreeMap<WeightFunctional, Vec<usize>>,
    ambient: usize,
}

impl WeightDecomposition {
    pub fn weights(&self) -> BTreeSet<WeightFunctional> {
        self.spaces.keys().cloned().collect()
    }

    /// Weights other than zero.
    pub fn nonzero_weights(&self) -> BTreeSet<WeightFunctional> {
        self.spaces.keys().filter(|w| !w.is_zero()).cloned().collect()
    }

    pub fn multiplicity(&self, w: &WeightFunctional) -> usize {
        self.spaces.get(w).map_or(0, Vec::len)
    }

    pub fn space(&self, w: &WeightFunctional) -> Subspace {
        let idx = self.spaces.get(w).cloned().unwrap_or_default();
        Subspace::span(
            self.ambient,
            idx.into_iter().map(|k| crate::exact::unit(self.ambient, k)),
        )
        .expect("unit vectors")
    }

    pub fn indices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.spaces.values().flatten().copied().collect();
        all.sort_unstable();
        all
    }
}

fn filter_indices(a: &SuperAlgebra, filter: WeightFilter) -> Result<Vec<usize>> {
    Ok(match filter {
        WeightFilter::All => (0..a.dim()).collect(),
        WeightFilter::Parity(p) => a.indices_of(p),
        WeightFilter::Layer(k) => {
            if a.z_degrees().is_none() {
                return Err(Error::Usage(format!("{} has no Z-grading", a.name())));
            }
            a.layer(k)
        }
    })
}

/// Groups the selected standard basis elements by weight. For layer 0 and
/// the even part the frame's own span is excluded from the zero weight only
/// through [`WeightDecomposition::nonzero_weights`]; the spaces keep every
/// basis element.
pub fn decompose(a: &SuperAlgebra, frame: &CartanFrame, filter: WeightFilter) -> Result<WeightDecomposition> {
    if frame.algebra != a.name() {
        return Err(Error::Usage("frame belongs to another algebra".into()));
    }
    let mut spaces: BTreeMap<WeightFunctional, Vec<usize>> = BTreeMap::new();
    for k in filter_indices(a, filter)? {
        spaces.entry(frame.weights[k].clone()).or_default().push(k);
    }
    Ok(WeightDecomposition {
        filter,
        spaces,
        ambient: a.dim(),
    })
}

/// Nonzero weights of the frame span's complement in the even part (the
/// even roots), or in layer 0 for graded algebras.
pub fn roots(a: &SuperAlgebra, frame: &CartanFrame, filter: WeightFilter) -> Result<BTreeSet<WeightFunctional>> {
    Ok(decompose(a, frame, filter)?.nonzero_weights())
}

/// `Ω`: the first integer point, in increasing max-norm and then
/// lexicographic order over coordinates `0, 1, -1, 2, -2, ...`, on which the
/// functionals take pairwise distinct values. With `avoid_zero`, nonzero
/// functionals must also take nonzero values.
pub fn omega_point(funcs: &[WeightFunctional], avoid_zero: bool) -> Result<Vec<i64>> {
    let mut it = OmegaIter::new(funcs, avoid_zero)?;
    it.next()
        .ok_or_else(|| Error::Usage("no separating point within the search radius".into()))
}

/// Separating element `Σ c_i h_i` for `funcs`, see [`omega_point`].
pub fn omega_element(
    a: &SuperAlgebra,
    frame: &CartanFrame,
    funcs: &[WeightFunctional],
    avoid_zero: bool,
) -> Result<(Vec<i64>, Element)> {
    let c = omega_point(funcs, avoid_zero)?;
    let h = frame.element_int(a, &c)?;
    Ok((c, h))
}

const OMEGA_RADIUS: i64 = 64;

/// Enumerates the points of `Ω` in the deterministic search order.
pub struct OmegaIter {
    funcs: Vec<WeightFunctional>,
    rank: usize,
    norm: i64,
    cursor: Vec<usize>,
    done: bool,
}

impl OmegaIter {
    pub fn new(funcs: &[WeightFunctional], avoid_zero: bool) -> Result<Self> {
        let rank = funcs.first().map_or(0, WeightFunctional::rank);
        if funcs.iter().any(|f| f.rank() != rank) {
            return Err(Error::Usage("functionals of different ranks".into()));
        }
        let set: BTreeSet<&WeightFunctional> = funcs.iter().collect();
        if set.len() != funcs.len() {
            return Err(Error::Usage("functionals must be pairwise distinct".into()));
        }
        let mut funcs = funcs.to_vec();
        if avoid_zero && rank > 0 && !set.contains(&WeightFunctional::zero(rank)) {
            funcs.push(WeightFunctional::zero(rank));
        }
        Ok(OmegaIter {
            funcs,
            rank,
            norm: if rank == 0 { 0 } else { 1 },
            cursor: vec![0; rank],
            done: false,
        })
    }

    fn coord(&self, slot: usize) -> i64 {
        // 0, 1, -1, 2, -2, ...
        let s = slot as i64;
        if s % 2 == 1 {
            (s + 1) / 2
        } else {
            -(s / 2)
        }
    }

    fn separates(&self, p: &[i64]) -> bool {
        let mut seen = BTreeSet::new();
        self.funcs.iter().all(|f| seen.insert(f.eval_int(p)))
    }

    fn advance(&mut self) -> bool {
        let slots = (2 * self.norm + 1) as usize;
        for i in (0..self.rank).rev() {
            self.cursor[i] += 1;
            if self.cursor[i] < slots {
                return true;
            }
            self.cursor[i] = 0;
        }
        self.norm += 1;
        self.norm <= OMEGA_RADIUS
    }
}

impl Iterator for OmegaIter {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        if self.rank == 0 {
            self.done = true;
            return if self.funcs.len() <= 1 { Some(Vec::new()) } else { None };
        }
        loop {
            let p: Vec<i64> = (0..self.rank).map(|i| self.coord(self.cursor[i])).collect();
            let on_shell = p.iter().map(|x| x.abs()).max() == Some(self.norm);
            let hit = on_shell && self.separates(&p);
            if !self.advance() {
                self.done = true;
                return if hit { Some(p) } else { None };
            }
            if hit {
                return Some(p);
            }
        }
    }
}

/// Eigencomponents of `x` under `ad(a)` for the given distinct eigenvalues,
/// recovered from `x, ad(a)x, ..., ad(a)^{m-1}x` by a Vandermonde solve.
///
/// Fails with a usage error if the eigenvalues repeat, and with a structural
/// error if a recovered component is not an eigenvector.
pub fn vandermonde_extract(
    alg: &SuperAlgebra,
    a: &Element,
    x: &Element,
    eigenvalues: &[Scalar],
) -> Result<Vec<Element>> {
    let set: BTreeSet<&Scalar> = eigenvalues.iter().collect();
    if set.len() != eigenvalues.len() {
        return Err(Error::Usage("eigenvalues must be pairwise distinct".into()));
    }
    let m = eigenvalues.len();
    let mut powers = vec![x.coeffs().to_vec()];
    for _ in 1..m {
        let last = powers.last().expect("nonempty");
        powers.push(alg.bracket_coeffs(a.coeffs(), last));
    }
    let rows: Vec<Vec<Scalar>> = eigenvalues
        .iter()
        .map(|l| (0..m as u32).map(|k| l.pow(k)).collect())
        .collect();
    let v = Matrix::from_rows(m, rows)?;
    let mut out = Vec::with_capacity(m);
    for (j, lambda) in eigenvalues.iter().enumerate() {
        let e: Vec<Scalar> = (0..m).map(|i| Scalar::from(i64::from(i == j))).collect();
        // row i of V times w is the interpolating polynomial at lambda_i
        let w = v.solve(&e)?.expect("Vandermonde matrix with distinct nodes is invertible");
        let mut comp = vec![Scalar::zero(); alg.dim()];
        for (wk, pk) in w.iter().zip(&powers) {
            if wk.is_zero() {
                continue;
            }
            for (o, c) in comp.iter_mut().zip(pk) {
                *o += &(wk * c);
            }
        }
        let image = alg.bracket_coeffs(a.coeffs(), &comp);
        let expect: Vec<Scalar> = comp.iter().map(|c| c * lambda).collect();
        if image != expect {
            return Err(Error::Structural(format!(
                "component for eigenvalue {lambda} is not an eigenvector"
            )));
        }
        out.push(alg.element(comp)?);
    }
    Ok(out)
}

/// Highest-weight vectors of the module spanned by `module` under the even
/// basis elements in `acting`, relative to a positive system chosen by a
/// generic frame element. For a completely reducible module their number is
/// the number of irreducible summands.
pub fn highest_weight_vectors(
    a: &SuperAlgebra,
    frame: &CartanFrame,
    acting: &[usize],
    module: &[usize],
) -> Result<Vec<Vec<Scalar>>> {
    let roots: BTreeSet<WeightFunctional> = acting
        .iter()
        .map(|&k| frame.weight_of(k).clone())
        .filter(|w| !w.is_zero())
        .collect();
    let roots: Vec<WeightFunctional> = roots.into_iter().collect();
    let p = omega_point(&roots, true)?;
    let positive: Vec<usize> = acting
        .iter()
        .copied()
        .filter(|&k| frame.weight_of(k).eval_int(&p) > Scalar::zero())
        .collect();
    let mut by_weight: BTreeMap<WeightFunctional, Vec<usize>> = BTreeMap::new();
    for &k in module {
        by_weight.entry(frame.weight_of(k).clone()).or_default().push(k);
    }
    let mut out = Vec::new();
    for idx in by_weight.values() {
        // kernel of all positive root vectors on this weight space
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for &e in &positive {
            let imgs: Vec<Vec<Scalar>> = idx
                .iter()
                .map(|&k| a.ad_basis(e, &crate::exact::unit(a.dim(), k)))
                .collect();
            for t in 0..a.dim() {
                let row: Vec<Scalar> = imgs.iter().map(|v| v[t].clone()).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..idx.len()).map(|i| crate::exact::unit(idx.len(), i)).collect()
        } else {
            Matrix::from_rows(idx.len(), rows)?.nullspace()
        };
        for kv in kernel {
            let mut v = vec![Scalar::zero(); a.dim()];
            for (c, &k) in kv.iter().zip(idx) {
                v[k] = c.clone();
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Irreducible summands of a completely reducible module: the submodule
/// generated by each highest-weight vector.
pub fn irreducible_summands(
    a: &SuperAlgebra,
    frame: &CartanFrame,
    acting: &[usize],
    module: &[usize],
) -> Result<Vec<Subspace>> {
    highest_weight_vectors(a, frame, acting, module)?
        .into_iter()
        .map(|v| generated_submodule(a, acting, &[v]))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    pub weight: WeightFunctional,
    pub parity: Parity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_degree: Option<i32>,
    pub basis_labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    pub frame_labels: Vec<String>,
    pub entries: Vec<WeightEntry>,
}

/// Every standard basis element grouped by (weight, parity, Z-degree).
pub fn weight_table(a: &SuperAlgebra, frame: &CartanFrame) -> WeightTable {
    let mut groups: BTreeMap<(Parity, Option<i32>, WeightFunctional), Vec<String>> = BTreeMap::new();
    for k in 0..a.dim() {
        let z = a.z_degrees().map(|z| z[k]);
        groups
            .entry((a.parity(k), z, frame.weight_of(k).clone()))
            .or_default()
            .push(a.label(k).to_string());
    }
    WeightTable {
        frame_labels: frame.labels().to_vec(),
        entries: groups
            .into_iter()
            .map(|((parity, z_degree, weight), basis_labels)| WeightEntry {
                weight,
                parity,
                z_degree,
                basis_labels,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::build_a;

    fn w(v: &[i64]) -> WeightFunctional {
        WeightFunctional::from_ints(v)
    }

    #[test]
    fn omega_rank_one() {
        assert_eq!(omega_point(&[w(&[1]), w(&[-1])], true).unwrap(), vec![1]);
    }

    #[test]
    fn omega_order_and_separation() {
        let f = [w(&[1, 0]), w(&[0, 1]), w(&[-1, 0]), w(&[0, -1])];
        assert_eq!(omega_point(&f, true).unwrap(), vec![1, 2]);
        let mut it = OmegaIter::new(&f, true).unwrap();
        let first: Vec<Vec<i64>> = (&mut it).take(3).collect();
        assert_eq!(first, [vec![1, 2], vec![1, -2], vec![-1, 2]]);
        assert!(omega_point(&[w(&[1]), w(&[1])], false).is_err());
        let at: BTreeSet<Scalar> = f.iter().map(|x| x.eval_int(&[1, 3])).collect();
        assert_eq!(at.len(), 4);
        assert!(!at.contains(&Scalar::zero()));
    }

    #[test]
    fn zero_functional_is_allowed() {
        let p = omega_point(&[w(&[0, 0]), w(&[1, -1]), w(&[-1, 1])], true).unwrap();
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn a11_frame_and_odd_weights() {
        let a = build_a(1, 1).unwrap();
        let f = standard_cartan(&a).unwrap();
        assert_eq!(f.labels(), ["e11+e33", "e11+e44"]);
        let d = decompose(&a, &f, WeightFilter::Parity(Parity::Odd)).unwrap();
        assert_eq!(d.spaces.len(), 4);
        assert!(d.spaces.values().all(|v| v.len() == 2));
        let e13 = a.index_of("e13").unwrap();
        assert_eq!(f.weight_of(e13), &w(&[0, 1]));
    }

    #[test]
    fn extraction_of_a_single_eigenvector() {
        let a = build_a(1, 1).unwrap();
        let f = standard_cartan(&a).unwrap();
        let h = f.element_int(&a, &[1, 3]).unwrap();
        let x = a.parse_element("e13").unwrap();
        let ev = f.eigenvalues_on(&h, &x).unwrap();
        assert_eq!(vandermonde_extract(&a, &h, &x, &ev).unwrap(), vec![x]);
        assert!(vandermonde_extract(&a, &h, &a.zero(), &[Scalar::one(), Scalar::one()]).is_err());
    }
}
