use std::collections::BTreeMap;
use std::fmt;

use super::grassmann::{degree, monomial_label, monomials_of_degree, shuffle, Grassmann, Monomial};
use crate::algebra::Parity;
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// `Σ c_{u,i} x^u ∂/∂ξ_i`, an element of W(n) = der Λ(n).
#[derive(Clone, PartialEq, Eq)]
pub struct SuperDerivation {
    n: usize,
    terms: BTreeMap<(Monomial, usize), Scalar>,
}

impl SuperDerivation {
    pub fn zero(n: usize) -> Self {
        SuperDerivation {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `c x^u ∂/∂ξ_i`.
    pub fn term(n: usize, u: Monomial, i: usize, c: Scalar) -> Self {
        let mut d = SuperDerivation::zero(n);
        d.add_term(u, i, c);
        d
    }

    pub fn partial(n: usize, i: usize) -> Self {
        SuperDerivation::term(n, 0, i, Scalar::one())
    }

    /// `f ∂/∂ξ_i` for a Grassmann coefficient `f`.
    pub fn from_coefficient(f: &Grassmann, i: usize) -> Self {
        let mut d = SuperDerivation::zero(f.n());
        for (u, c) in f.terms() {
            d.add_term(u, i, c.clone());
        }
        d
    }

    /// The derivation sending `ξ_j` to `images[j-1]`.
    pub fn from_images(n: usize, images: &[Grassmann]) -> Self {
        let mut d = SuperDerivation::zero(n);
        for (j, g) in images.iter().enumerate() {
            for (u, c) in g.terms() {
                d.add_term(u, j + 1, c.clone());
            }
        }
        d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((Monomial, usize), &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, u: Monomial, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((u, i)).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(u, i));
        }
    }

    pub fn add(&self, other: &SuperDerivation) -> SuperDerivation {
        let mut out = self.clone();
        for ((u, i), c) in other.terms() {
            out.add_term(u, i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SuperDerivation {
        let mut out = SuperDerivation::zero(self.n);
        for ((u, i), x) in self.terms() {
            out.add_term(u, i, x * c);
        }
        out
    }

    /// Parity of a nonzero homogeneous derivation: `x^u ∂_i` has parity `|u| - 1`.
    pub fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for ((u, _), _) in self.terms() {
            let q = Parity::from_bit(degree(u).is_multiple_of(2));
            match p {
                None => p = Some(q),
                Some(x) if x != q => return None,
                _ => {}
            }
        }
        p
    }

    /// Z-degree `|u| - 1` of a nonzero homogeneous derivation.
    pub fn z_degree(&self) -> Option<i32> {
        let mut d = None;
        for ((u, _), _) in self.terms() {
            let k = degree(u) as i32 - 1;
            match d {
                None => d = Some(k),
                Some(x) if x != k => return None,
                _ => {}
            }
        }
        d
    }

    pub fn apply(&self, f: &Grassmann) -> Result<Grassmann> {
        if f.n() != self.n {
            return Err(Error::Usage(format!(
                "derivation of Λ({}) applied to an element of Λ({})",
                self.n,
                f.n()
            )));
        }
        let mut out = Grassmann::zero(self.n);
        for ((u, i), c) in self.terms() {
            let df = f.derive(i);
            if df.is_zero() {
                continue;
            }
            out = out.add(&Grassmann::monomial(self.n, u, c.clone()).mul(&df)?);
        }
        Ok(out)
    }

    /// Image of the generator `ξ_j`.
    pub fn image(&self, j: usize) -> Grassmann {
        let mut g = Grassmann::zero(self.n);
        for ((u, i), c) in self.terms() {
            if i == j {
                g.add_term(u, c.clone());
            }
        }
        g
    }

    /// Supercommutator `D1 D2 - (-1)^{p1 p2} D2 D1`, evaluated on the
    /// generators. Both arguments must be homogeneous (or zero).
    pub fn bracket(&self, other: &SuperDerivation) -> Result<SuperDerivation> {
        if self.n != other.n {
            return Err(Error::Usage("derivations of different Grassmann algebras".into()));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(SuperDerivation::zero(self.n));
        }
        let (p, q) = match (self.parity(), other.parity()) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(Error::Usage("bracket needs parity-homogeneous derivations".into())),
        };
        let both_odd = p.is_odd() && q.is_odd();
        let mut images = Vec::with_capacity(self.n);
        for j in 1..=self.n {
            let a = self.apply(&other.image(j))?;
            let b = other.apply(&self.image(j))?;
            images.push(if both_odd { a.add(&b) } else { a.add(&b.scale(&-Scalar::one())) });
        }
        Ok(SuperDerivation::from_images(self.n, &images))
    }
}

/// `D_ij(f) = ∂_i(f) ∂_j + ∂_j(f) ∂_i`.
pub fn d_ij(i: usize, j: usize, f: &Grassmann) -> SuperDerivation {
    SuperDerivation::from_coefficient(&f.derive(i), j).add(&SuperDerivation::from_coefficient(&f.derive(j), i))
}

/// The involution `i -> i'` of `{1..n}`: `i' = i + [n/2]` for `i <= [n/2]`,
/// and `n' = n` when `n` is odd.
pub fn involution(n: usize, i: usize) -> usize {
    let m = n / 2;
    if i <= m {
        i + m
    } else if i <= 2 * m {
        i - m
    } else {
        i
    }
}

/// `D_H(f) = (-1)^{|f|} Σ_i ∂_i(f) ∂_{i'}` for Z-homogeneous `f`.
pub fn d_h(f: &Grassmann) -> Result<SuperDerivation> {
    let n = f.n();
    let Some(k) = f.z_degree() else {
        if f.is_zero() {
            return Ok(SuperDerivation::zero(n));
        }
        return Err(Error::Usage(format!("D_H needs a homogeneous argument, got {f}")));
    };
    let mut d = SuperDerivation::zero(n);
    for i in 1..=n {
        d = d.add(&SuperDerivation::from_coefficient(&f.derive(i), involution(n, i)));
    }
    Ok(if k % 2 == 1 { d.scale(&-Scalar::one()) } else { d })
}

/// Standard basis of W(n): `x^u ∂_i` ordered by Z-degree, then `u`
/// lexicographically, then `i`.
#[derive(Clone, Debug)]
pub struct WBasis {
    n: usize,
    order: Vec<(Monomial, usize)>,
    position: Vec<usize>,
}

impl WBasis {
    pub fn new(n: usize) -> Self {
        let mut order = Vec::with_capacity(n << n);
        for k in 0..=n {
            for u in monomials_of_degree(n, k) {
                for i in 1..=n {
                    order.push((u, i));
                }
            }
        }
        let mut position = vec![0; n << n];
        for (p, &(u, i)) in order.iter().enumerate() {
            position[(u as usize) * n + i - 1] = p;
        }
        WBasis { n, order, position }
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn get(&self, p: usize) -> (Monomial, usize) {
        self.order[p]
    }

    pub fn index(&self, u: Monomial, i: usize) -> usize {
        self.position[(u as usize) * self.n + i - 1]
    }

    pub fn element(&self, p: usize) -> SuperDerivation {
        let (u, i) = self.order[p];
        SuperDerivation::term(self.n, u, i, Scalar::one())
    }

    pub fn coords(&self, d: &SuperDerivation) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for ((u, i), c) in d.terms() {
            v[self.index(u, i)] = c.clone();
        }
        v
    }

    pub fn derivation(&self, v: &[Scalar]) -> SuperDerivation {
        let mut d = SuperDerivation::zero(self.n);
        for (p, c) in v.iter().enumerate() {
            let (u, i) = self.order[p];
            d.add_term(u, i, c.clone());
        }
        d
    }
}

pub fn term_label(u: Monomial, i: usize) -> String {
    if u == 0 {
        format!("d{i}")
    } else {
        format!("{}d{i}", monomial_label(u))
    }
}

impl fmt::Display for SuperDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|((u, i), _)| (degree(*u), shuffle(*u), *i));
        for (k, ((u, i), c)) in terms.into_iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            f.write_str(&term_label(u, i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SuperDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}): {self}", self.n)
    }
}

/// Parses `x12d3-2*d1+1/2*x1d1` (single-digit generator indices) into W(n)
/// coordinates.
pub fn parse_derivation_expr(n: usize, s: &str) -> Result<Vec<Scalar>> {
    let basis = WBasis::new(n);
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut v = vec![Scalar::zero(); basis.dim()];
    if s.is_empty() || s == "0" {
        return Ok(v);
    }
    let bad = |why: &str| Error::Parse(format!("derivation expression `{s}`: {why}"));
    let digit = |c: char| -> Result<usize> {
        match c.to_digit(10) {
            Some(d) if d >= 1 && (d as usize) <= n => Ok(d as usize),
            _ => Err(bad("generator index out of range")),
        }
    };
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let mut neg = false;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            neg = true;
            rest = r;
        }
        let start = rest.find(['x', 'd']).ok_or_else(|| bad("missing `d`"))?;
        let coef = rest[..start].trim_end_matches('*');
        let mut c = if coef.is_empty() {
            Scalar::one()
        } else {
            coef.parse::<Scalar>().map_err(|_| bad("bad coefficient"))?
        };
        if neg {
            c = -c;
        }
        rest = &rest[start..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        let (mono, dir) = term.split_once('d').ok_or_else(|| bad("missing `d`"))?;
        let mut f = Grassmann::one(n);
        if let Some(gens) = mono.strip_prefix('x') {
            for ch in gens.chars() {
                f = f.mul(&Grassmann::generator(n, digit(ch)?))?;
            }
        } else if !mono.is_empty() {
            return Err(bad("monomials are written x123"));
        }
        let mut dir_chars = dir.chars();
        let i = match (dir_chars.next(), dir_chars.next()) {
            (Some(ch), None) => digit(ch)?,
            _ => return Err(bad("one direction index expected after `d`")),
        };
        for (u, x) in f.terms() {
            v[basis.index(u, i)] += &(x * &c);
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::super::grassmann::monomial;
    use super::*;

    fn g(n: usize, idx: &[usize], c: i64) -> Grassmann {
        Grassmann::monomial(n, monomial(idx), Scalar::from(c))
    }

    #[test]
    fn apply_composes_the_rules() {
        let d = SuperDerivation::term(3, monomial(&[1]), 2, Scalar::one());
        assert_eq!(d.apply(&g(3, &[2, 3], 1)).unwrap(), g(3, &[1, 3], 1));
    }

    #[test]
    fn commutator_on_generators() {
        let a = SuperDerivation::term(3, monomial(&[1]), 2, Scalar::one());
        let b = SuperDerivation::term(3, monomial(&[2]), 1, Scalar::one());
        let expect = SuperDerivation::term(3, monomial(&[1]), 1, Scalar::one())
            .add(&SuperDerivation::term(3, monomial(&[2]), 2, -Scalar::one()));
        assert_eq!(a.bracket(&b).unwrap(), expect);
    }

    #[test]
    fn odd_partials_anticommute() {
        let a = SuperDerivation::partial(3, 1);
        assert!(a.bracket(&a).unwrap().is_zero());
    }

    #[test]
    fn involution_pairs() {
        assert_eq!((1..=6).map(|i| involution(6, i)).collect::<Vec<_>>(), [4, 5, 6, 1, 2, 3]);
        assert_eq!((1..=5).map(|i| involution(5, i)).collect::<Vec<_>>(), [3, 4, 1, 2, 5]);
    }

    #[test]
    fn basis_positions() {
        let b = WBasis::new(3);
        assert_eq!(b.dim(), 24);
        for p in 0..b.dim() {
            let (u, i) = b.get(p);
            assert_eq!(b.index(u, i), p);
        }
        assert_eq!(b.get(0), (0, 1));
    }

    #[test]
    fn parse_expressions() {
        let b = WBasis::new(3);
        let v = parse_derivation_expr(3, "x12d3-2*d1").unwrap();
        assert_eq!(b.derivation(&v).to_string(), "-2*d1+x12d3");
        let w = parse_derivation_expr(3, "x21d3").unwrap();
        assert_eq!(b.derivation(&w).to_string(), "-x12d3");
        assert!(parse_derivation_expr(3, "x14d1").is_err());
        assert!(parse_derivation_expr(3, "x1").is_err());
    }
}
