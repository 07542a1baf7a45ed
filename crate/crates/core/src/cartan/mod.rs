//! Cartan families inside W(n) = der Λ(n): W(n), S(n), S~(2m) and H(n).

mod derivation;
mod grassmann;

pub use derivation::{
    d_h, d_ij, involution, parse_derivation_expr, term_label, SuperDerivation, WBasis,
};
pub use grassmann::{
    degree, derive_monomial, grassmann_mul, monomial, monomial_label, monomials_of_degree,
    mul_monomials, shuffle, Grassmann, Monomial, MAX_GENERATORS,
};

use crate::algebra::{subalgebra_of, Model, Parity, Realization, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Scalar, Subspace};

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GENERATORS {
        return Err(Error::Usage(format!("Grassmann algebra needs 1 <= n <= {MAX_GENERATORS}")));
    }
    Ok(())
}

fn check_dim(alg: &SuperAlgebra, expected: usize) -> Result<()> {
    if alg.dim() == expected {
        Ok(())
    } else {
        Err(Error::Structural(format!(
            "{} has dimension {} but the closed form gives {expected}",
            alg.name(),
            alg.dim()
        )))
    }
}

fn xd(n: usize, i: usize) -> SuperDerivation {
    SuperDerivation::term(n, monomial(&[i]), i, Scalar::one())
}

/// W(n) with basis `x^u ∂_i` (labels `x12d3`, `d1`), graded by `|u| - 1`.
pub fn build_w(n: usize) -> Result<SuperAlgebra> {
    check_n(n)?;
    let basis = WBasis::new(n);
    let d = basis.dim();
    let elems: Vec<SuperDerivation> = (0..d).map(|p| basis.element(p)).collect();
    let labels = (0..d)
        .map(|p| {
            let (u, i) = basis.get(p);
            term_label(u, i)
        })
        .collect();
    let parity = elems.iter().map(|e| e.parity().expect("monomial term")).collect();
    let alg = SuperAlgebra::from_fn(format!("W({n})"), labels, parity, |a, b| {
        let c = elems[a].bracket(&elems[b])?;
        Ok(c.terms().map(|((u, i), x)| (basis.index(u, i), x.clone())).collect())
    })?;
    let z = elems.iter().map(|e| e.z_degree().expect("monomial term")).collect();
    let frame = (1..=n)
        .map(|i| (format!("x{i}d{i}"), basis.coords(&xd(n, i))))
        .collect();
    alg.with_z_grading(z, true)?
        .with_realization(Realization {
            model: Model::Derivation { n },
            images: (0..d).map(|p| crate::exact::unit(d, p)).collect(),
            kernel: Vec::new(),
            frame: Vec::new(),
        })?
        .with_frame(frame)
}

/// Keeps the first spanning vectors that are independent, in order.
fn independent(basis: &WBasis, candidates: Vec<(String, SuperDerivation)>) -> Vec<(String, Vec<Scalar>)> {
    let mut span = Subspace::zero(basis.dim());
    let mut out = Vec::new();
    for (label, der) in candidates {
        let v = basis.coords(&der);
        if span.insert(&v).expect("W coordinates") {
            out.push((label, v));
        }
    }
    out
}

/// `D_ij(x^u)` for `|u| = k + 2`, `i <= j`, in lexicographic order.
fn s_layer(n: usize, k: i32) -> Vec<(String, SuperDerivation)> {
    let mut out = Vec::new();
    for u in monomials_of_degree(n, (k + 2) as usize) {
        let f = Grassmann::monomial(n, u, Scalar::one());
        for i in 1..=n {
            for j in i..=n {
                let d = d_ij(i, j, &f);
                if !d.is_zero() {
                    out.push((format!("D{i}{j}({})", monomial_label(u)), d));
                }
            }
        }
    }
    out
}

fn s_frame(basis: &WBasis, n: usize) -> Vec<(String, Vec<Scalar>)> {
    (2..=n)
        .map(|j| {
            let h = xd(n, 1).add(&xd(n, j).scale(&-Scalar::one()));
            (format!("x1d1-x{j}d{j}"), basis.coords(&h))
        })
        .collect()
}

/// S(n), spanned by `D_ij(x^u)`.
pub fn build_s(n: usize) -> Result<SuperAlgebra> {
    let w = build_w(n)?;
    let basis = WBasis::new(n);
    let mut cands = Vec::new();
    for k in -1..=(n as i32 - 2) {
        cands.extend(s_layer(n, k));
    }
    let elems = independent(&basis, cands);
    let alg = subalgebra_of(&w, &format!("S({n})"), elems)?;
    check_dim(&alg, (n - 1) * (1 << n) + 1)?;
    alg.with_frame(s_frame(&basis, n))
}

/// S~(2m): `(1 + ξ_1⋯ξ_2m) ∂_j` in nominal degree -1, `S(2m)_k` for `k >= 0`.
/// The nominal layers are recorded but the algebra is flagged non-graded.
pub fn build_s_tilde(two_m: usize) -> Result<SuperAlgebra> {
    if !two_m.is_multiple_of(2) || two_m < 2 {
        return Err(Error::Usage("S~(2m) needs an even parameter".into()));
    }
    let n = two_m;
    let w = build_w(n)?;
    let basis = WBasis::new(n);
    let top = (1u32 << n) - 1;
    let one_plus_top = Grassmann::one(n).add(&Grassmann::monomial(n, top, Scalar::one()));
    let mut cands = Vec::new();
    let mut nominal = Vec::new();
    for j in 1..=n {
        cands.push((
            format!("(1+{})d{j}", monomial_label(top)),
            SuperDerivation::from_coefficient(&one_plus_top, j),
        ));
    }
    for k in 0..=(n as i32 - 2) {
        cands.extend(s_layer(n, k));
    }
    let elems = independent(&basis, cands);
    for (_, v) in &elems {
        let d = basis.derivation(v);
        // the deformed partials are the only inhomogeneous elements
        nominal.push(d.z_degree().unwrap_or(-1));
    }
    let alg = subalgebra_of(&w, &format!("St({n})"), elems)?.with_z_grading(nominal, false)?;
    check_dim(&alg, (n - 1) * (1 << n) + 1)?;
    alg.with_frame(s_frame(&basis, n))
}

/// H(n), spanned by `D_H(x^u)` for `1 <= |u| <= n - 1`.
pub fn build_h(n: usize) -> Result<SuperAlgebra> {
    let w = build_w(n)?;
    let basis = WBasis::new(n);
    let mut cands = Vec::new();
    for k in 1..n {
        for u in monomials_of_degree(n, k) {
            let d = d_h(&Grassmann::monomial(n, u, Scalar::one()))?;
            cands.push((format!("DH({})", monomial_label(u)), d));
        }
    }
    let elems = independent(&basis, cands);
    let alg = subalgebra_of(&w, &format!("H({n})"), elems)?;
    check_dim(&alg, (1 << n) - 2)?;
    let frame = (1..=n / 2)
        .map(|i| {
            let ip = involution(n, i);
            let h = xd(n, i).add(&xd(n, ip).scale(&-Scalar::one()));
            (format!("x{i}d{i}-x{ip}d{ip}"), basis.coords(&h))
        })
        .collect();
    alg.with_frame(frame)
}

/// The Euler derivation `Σ ξ_i ∂_i`, spanning the center of W(n)_0.
pub fn euler(n: usize) -> SuperDerivation {
    (1..=n).fold(SuperDerivation::zero(n), |acc, i| acc.add(&xd(n, i)))
}

impl SuperAlgebra {
    /// The derivation represented by an element of a Cartan-type algebra.
    pub fn derivation_of(&self, x: &crate::algebra::Element) -> Result<SuperDerivation> {
        match self.realization().map(|r| r.model) {
            Some(Model::Derivation { n }) => Ok(WBasis::new(n).derivation(&self.to_ambient(x)?)),
            _ => Err(Error::Usage(format!("{} is not realized by derivations", self.name()))),
        }
    }

    /// Element of a Cartan-type algebra given by a derivation, if it lies in it.
    pub fn from_derivation(&self, d: &SuperDerivation) -> Result<Option<crate::algebra::Element>> {
        match self.realization().map(|r| r.model) {
            Some(Model::Derivation { n }) if n == d.n() => self.from_ambient(&WBasis::new(n).coords(d)),
            _ => Err(Error::Usage(format!("{} is not realized in W({})", self.name(), d.n()))),
        }
    }
}

/// Parity of `x^u ∂_i`.
pub fn term_parity(u: Monomial) -> Parity {
    Parity::from_bit(degree(u).is_multiple_of(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_axioms;

    #[test]
    fn w3_shape() {
        let w = build_w(3).unwrap();
        assert_eq!(w.dim(), 24);
        assert_eq!(w.even_part().dim(), 12);
        assert_eq!(w.layer(0).len(), 9);
        assert!(check_axioms(&w).passed());
    }

    #[test]
    fn s4_and_tilde() {
        let s = build_s(4).unwrap();
        assert_eq!(s.dim(), 49);
        assert!(s.is_z_graded());
        let t = build_s_tilde(4).unwrap();
        assert_eq!(t.dim(), 49);
        assert!(!t.is_z_graded());
        assert_eq!(t.layer(-1).len(), 4);
    }

    #[test]
    fn h5_shape() {
        let h = build_h(5).unwrap();
        assert_eq!(h.dim(), 30);
        assert_eq!(h.layer(0).len(), 10);
    }

    #[test]
    fn s_tilde_deformed_partial() {
        let n = 4;
        let f = Grassmann::one(n).add(&Grassmann::monomial(n, 0b1111, Scalar::one()));
        let d = SuperDerivation::from_coefficient(&f, 1);
        let out = d.apply(&Grassmann::generator(n, 1)).unwrap();
        assert_eq!(out.to_string(), "1 + x1234");
    }
}
