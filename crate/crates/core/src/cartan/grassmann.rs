use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Scalar;

/// A monomial `x^u` of Λ(n), stored as a bitmask (bit `i-1` set for `ξ_i`).
pub type Monomial = u32;

pub const MAX_GENERATORS: usize = 16;

pub fn degree(u: Monomial) -> usize {
    u.count_ones() as usize
}

/// Indices (1-based) of the generators in `u`, increasing.
pub fn shuffle(u: Monomial) -> Vec<usize> {
    (0..32).filter(|b| u >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

pub fn monomial(indices: &[usize]) -> Monomial {
    indices.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

/// Product `x^a x^b = sign * x^{a+b}`, or `None` when they share a generator.
pub fn mul_monomials(a: Monomial, b: Monomial) -> Option<(bool, Monomial)> {
    if a & b != 0 {
        return None;
    }
    // each generator of b moves left past the generators of a above it
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some((swaps % 2 == 1, a | b))
}

/// Left derivative `∂/∂ξ_i (x^u)`: moves `ξ_i` to the front, then deletes it.
pub fn derive_monomial(i: usize, u: Monomial) -> Option<(bool, Monomial)> {
    let bit = 1u32 << (i - 1);
    if u & bit == 0 {
        return None;
    }
    let before = (u & (bit - 1)).count_ones();
    Some((before % 2 == 1, u & !bit))
}

/// Monomials of a given degree in lexicographic order of their shuffles.
pub fn monomials_of_degree(n: usize, k: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..1u32 << n).filter(|&u| degree(u) == k).collect();
    out.sort_by_key(|&u| shuffle(u));
    out
}

pub fn monomial_label(u: Monomial) -> String {
    if u == 0 {
        return "1".into();
    }
    let mut s = String::from("x");
    for i in shuffle(u) {
        s.push_str(&i.to_string());
    }
    s
}

/// An element of the Grassmann algebra Λ(n).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Grassmann {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Grassmann {
    pub fn zero(n: usize) -> Self {
        Grassmann {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Grassmann::monomial(n, 0, Scalar::one())
    }

    /// The generator `ξ_i`, 1-based.
    pub fn generator(n: usize, i: usize) -> Self {
        Grassmann::monomial(n, 1 << (i - 1), Scalar::one())
    }

    pub fn monomial(n: usize, u: Monomial, c: Scalar) -> Self {
        let mut g = Grassmann::zero(n);
        g.add_term(u, c);
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Scalar)> {
        self.terms.iter().map(|(u, c)| (*u, c))
    }

    pub fn coeff(&self, u: Monomial) -> Scalar {
        self.terms.get(&u).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, u: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(u).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&u);
        }
    }

    pub fn add(&self, other: &Grassmann) -> Grassmann {
        let mut out = self.clone();
        for (u, c) in other.terms() {
            out.add_term(u, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Grassmann {
        let mut out = Grassmann::zero(self.n);
        for (u, x) in self.terms() {
            out.add_term(u, x * c);
        }
        out
    }

    /// Parity if every term has the same degree parity.
    pub fn parity(&self) -> Option<bool> {
        let mut p = None;
        for (u, _) in self.terms() {
            let q = degree(u) % 2 == 1;
            match p {
                None => p = Some(q),
                Some(x) if x != q => return None,
                _ => {}
            }
        }
        p
    }

    /// Degree of a homogeneous element.
    pub fn z_degree(&self) -> Option<usize> {
        let mut d = None;
        for (u, _) in self.terms() {
            match d {
                None => d = Some(degree(u)),
                Some(x) if x != degree(u) => return None,
                _ => {}
            }
        }
        d
    }

    pub fn mul(&self, other: &Grassmann) -> Result<Grassmann> {
        if self.n != other.n {
            return Err(Error::Usage(format!(
                "cannot multiply elements of Λ({}) and Λ({})",
                self.n, other.n
            )));
        }
        let mut out = Grassmann::zero(self.n);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if let Some((neg, u)) = mul_monomials(a, b) {
                    let c = x * y;
                    out.add_term(u, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `∂/∂ξ_i` applied to this element.
    pub fn derive(&self, i: usize) -> Grassmann {
        let mut out = Grassmann::zero(self.n);
        for (u, c) in self.terms() {
            if let Some((neg, v)) = derive_monomial(i, u) {
                out.add_term(v, if neg { -c } else { c.clone() });
            }
        }
        out
    }
}

/// `a * b` in Λ(n).
pub fn grassmann_mul(a: &Grassmann, b: &Grassmann) -> Result<Grassmann> {
    a.mul(b)
}

impl fmt::Display for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(Monomial, &Scalar)> = self.terms().collect();
        terms.sort_by_key(|(u, _)| (degree(*u), shuffle(*u)));
        for (k, (u, c)) in terms.into_iter().enumerate() {
            if c.is_negative() {
                f.write_str(if k == 0 { "-" } else { " - " })?;
            } else if k > 0 {
                f.write_str(" + ")?;
            }
            let a = c.abs();
            match (a.is_one(), u == 0) {
                (true, _) => f.write_str(&monomial_label(u))?,
                (false, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}*{}", monomial_label(u))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Grassmann {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Λ({}): {self}", self.n)
    }
}
