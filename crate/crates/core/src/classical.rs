//! Classical families realized inside gl(r|s): sl and A(m,n), the
//! orthosymplectic B, C, D, the periplectic P(n) and the queer Q(n).
//!
//! Matrix units are `e_ij` with 1-based indices; the ambient coordinate of
//! `e_ij` is `(i-1)*N + (j-1)` for `N = r + s`.

use crate::algebra::{quotient_by_ideal, subalgebra_of, Model, Parity, Realization, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, Subspace};

/// Matrix units of gl(r|s) in 0-based row/column indices.
#[derive(Clone, Copy, Debug)]
struct Blocks {
    r: usize,
    s: usize,
}

impl Blocks {
    fn n(self) -> usize {
        self.r + self.s
    }

    fn odd(self, i: usize, j: usize) -> bool {
        (i < self.r) != (j < self.r)
    }

    fn pos(self, i: usize, j: usize) -> usize {
        i * self.n() + j
    }

    /// Ambient vector from `(coefficient, row, col)` triples, 1-based.
    fn vec(self, terms: &[(i64, usize, usize)]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.n() * self.n()];
        for &(c, i, j) in terms {
            v[self.pos(i - 1, j - 1)] += &Scalar::from(c);
        }
        v
    }
}

fn index_str(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("e{i}{j}")
    } else {
        format!("e{i},{j}")
    }
}

/// Label for an ambient matrix, terms in the order given.
fn terms_label(n: usize, terms: &[(i64, usize, usize)]) -> String {
    let mut out = String::new();
    for (k, &(c, i, j)) in terms.iter().enumerate() {
        if c < 0 {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&index_str(n, i, j));
    }
    out
}

/// Row-major label of an ambient `n x n` matrix, e.g. `e12-e65`.
pub fn matrix_label(n: usize, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (p, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (i, j) = (p / n + 1, p % n + 1);
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&index_str(n, i, j));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses a matrix expression such as `e17+e35+e64-e82`, `2e11-1/2*e22`
/// or `e10,11` into an ambient vector of `gl(N)`.
pub fn parse_matrix_expr(n: usize, s: &str) -> Result<Vec<Scalar>> {
    let mut v = vec![Scalar::zero(); n * n];
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() || s == "0" {
        return Ok(v);
    }
    let bad = |why: &str| Error::Parse(format!("matrix expression `{s}`: {why}"));
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let mut neg = false;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            neg = true;
            rest = r;
        }
        let e = rest.find('e').ok_or_else(|| bad("missing matrix unit"))?;
        let coef = rest[..e].trim_end_matches('*');
        let mut c = if coef.is_empty() {
            Scalar::one()
        } else {
            coef.parse::<Scalar>().map_err(|_| bad("bad coefficient"))?
        };
        if neg {
            c = -c;
        }
        rest = &rest[e + 1..];
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let idx = &rest[..end];
        rest = &rest[end..];
        let (i, j) = match idx.split_once(',') {
            Some((a, b)) => (a.parse::<usize>(), b.parse::<usize>()),
            None if idx.len() == 2 && n <= 9 => (idx[..1].parse(), idx[1..].parse()),
            None => return Err(bad("indices must be two digits or `i,j`")),
        };
        let (i, j) = match (i, j) {
            (Ok(i), Ok(j)) if (1..=n).contains(&i) && (1..=n).contains(&j) => (i, j),
            _ => return Err(bad("index out of range")),
        };
        v[(i - 1) * n + (j - 1)] += &c;
    }
    Ok(v)
}

/// gl(r|s) with basis `e_ij` in row-major order.
pub fn build_gl(r: usize, s: usize) -> Result<SuperAlgebra> {
    let b = Blocks { r, s };
    let n = b.n();
    if n == 0 {
        return Err(Error::Usage("gl(r|s) needs r + s >= 1".into()));
    }
    let mut labels = Vec::with_capacity(n * n);
    let mut parity = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            labels.push(index_str(n, i + 1, j + 1));
            parity.push(Parity::from_bit(b.odd(i, j)));
        }
    }
    let alg = SuperAlgebra::from_fn(format!("gl({r}|{s})"), labels, parity, |x, y| {
        let (i, j) = (x / n, x % n);
        let (k, l) = (y / n, y % n);
        // [e_ij, e_kl] = d_jk e_il - (-1)^{p p'} d_li e_kj
        let sign = if b.odd(i, j) && b.odd(k, l) { 1 } else { -1 };
        let mut out = Vec::new();
        if j == k {
            out.push((b.pos(i, l), Scalar::one()));
        }
        if l == i {
            out.push((b.pos(k, j), Scalar::from(sign)));
        }
        if out.len() == 2 && out[0].0 == out[1].0 {
            let c = &out[0].1 + &out[1].1;
            out = vec![(out[0].0, c)];
        }
        Ok(out)
    })?;
    let images = (0..n * n).map(|p| crate::exact::unit(n * n, p)).collect();
    let frame = (0..n)
        .map(|i| (index_str(n, i + 1, i + 1), crate::exact::unit(n * n, b.pos(i, i))))
        .collect();
    alg.with_realization(Realization {
        model: Model::Matrix { even: r, odd: s },
        images,
        kernel: Vec::new(),
        frame: Vec::new(),
    })?
    .with_frame(frame)
}

/// Supertrace of an ambient matrix of gl(r|s).
pub fn supertrace(r: usize, s: usize, v: &[Scalar]) -> Scalar {
    let n = r + s;
    let mut t = Scalar::zero();
    for i in 0..n {
        let c = &v[i * n + i];
        if i < r {
            t += c;
        } else {
            t -= c;
        }
    }
    t
}

type Spanning = Vec<(String, Vec<Scalar>)>;

fn labelled(b: Blocks, terms: Vec<(i64, usize, usize)>) -> (String, Vec<Scalar>) {
    (terms_label(b.n(), &terms), b.vec(&terms))
}

/// Off-diagonal matrix units, even ones first, each group row-major.
fn off_diagonal(b: Blocks) -> (Spanning, Spanning) {
    let n = b.n();
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let e = labelled(b, vec![(1, i, j)]);
            if b.odd(i - 1, j - 1) {
                odd.push(e);
            } else {
                even.push(e);
            }
        }
    }
    (even, odd)
}

fn frame_of(elements: &Spanning, count: usize) -> Vec<(String, Vec<Scalar>)> {
    elements[..count].to_vec()
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

/// sl(r|s): diagonal elements `e11 + e_kk` (k odd-block) and `e11 - e_kk`
/// (k even-block, k >= 2), then the off-diagonal units.
pub fn build_sl(r: usize, s: usize) -> Result<SuperAlgebra> {
    if r == 0 {
        return Err(Error::Usage("sl(r|s) builder needs r >= 1".into()));
    }
    let b = Blocks { r, s };
    let n = b.n();
    let gl = build_gl(r, s)?;
    let mut elems = Vec::new();
    for k in r + 1..=n {
        elems.push(labelled(b, vec![(1, 1, 1), (1, k, k)]));
    }
    for k in 2..=r {
        elems.push(labelled(b, vec![(1, 1, 1), (-1, k, k)]));
    }
    let rank = elems.len();
    let (even, odd) = off_diagonal(b);
    elems.extend(even);
    elems.extend(odd);
    let frame = frame_of(&elems, rank);
    let alg = subalgebra_of(&gl, &format!("sl({r}|{s})"), elems)?;
    check_dim(&alg, n * n - 1)?;
    alg.with_frame(frame)
}

/// A(m,n): sl(m+1|n+1), divided by its center when `m == n`.
pub fn build_a(m: usize, n: usize) -> Result<SuperAlgebra> {
    let sl = build_sl(m + 1, n + 1)?;
    if m != n {
        return Ok(sl);
    }
    let b = Blocks { r: m + 1, s: n + 1 };
    let identity: Vec<(i64, usize, usize)> = (1..=b.n()).map(|i| (1, i, i)).collect();
    let center = sl
        .from_ambient(&b.vec(&identity))?
        .ok_or_else(|| Error::Structural("identity is not in sl(n+1|n+1)".into()))?;
    let k = Subspace::span(sl.dim(), [center.into_coeffs()])?;
    let q = quotient_by_ideal(&sl, &k, &format!("A({m},{n})"))?.quotient;
    let frame: Vec<_> = sl.realization().expect("realized").frame[..2 * n].to_vec();
    q.with_frame(frame)
}

/// The even symmetric / odd skew form used for osp(M|2N): anti-diagonal on
/// each block, with signs `+1` then `-1` on the odd block.
pub fn osp_form(m: usize, two_n: usize) -> Matrix {
    let n = m + two_n;
    let mut f = Matrix::zeros(n, n);
    for i in 0..m {
        f[(i, m - 1 - i)] = Scalar::one();
    }
    for i in 0..two_n {
        let c = if i < two_n / 2 { 1 } else { -1 };
        f[(m + i, m + two_n - 1 - i)] = Scalar::from(c);
    }
    f
}

/// Orthosymplectic osp(M|2N): matrices `X` of gl(M|2N) with
/// `B(Xu, v) + (-1)^{|X||u|} B(u, Xv) = 0` for the form [`osp_form`].
pub fn build_osp(m: usize, two_n: usize) -> Result<SuperAlgebra> {
    if m == 0 || two_n == 0 || !two_n.is_multiple_of(2) {
        return Err(Error::Usage(format!("osp({m}|{two_n}) needs M >= 1 and even 2N >= 2")));
    }
    let b = Blocks { r: m, s: two_n };
    let n = b.n();
    let form = osp_form(m, two_n);
    let gl = build_gl(m, two_n)?;
    let mut elems: Spanning = Vec::new();
    let mut rank = 0;
    for odd in [false, true] {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| b.odd(i, j) == odd)
            .collect();
        let mut rows = Vec::new();
        for u in 0..n {
            for v in 0..n {
                // sum_a X_au B_av + s * sum_b X_bv B_ub, s = (-1)^{|X||u|}
                let s = if odd && u >= m { -1 } else { 1 };
                let mut row = vec![Scalar::zero(); cells.len()];
                for (c, &(a, col)) in cells.iter().enumerate() {
                    if col == u && !form[(a, v)].is_zero() {
                        row[c] += &form[(a, v)];
                    }
                    if col == v && !form[(u, a)].is_zero() {
                        row[c] += &(&form[(u, a)] * &Scalar::from(s));
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let sol = Matrix::from_rows(cells.len(), rows)?.nullspace();
        let mut vecs: Vec<Vec<Scalar>> = sol
            .into_iter()
            .map(|x| {
                let mut v = vec![Scalar::zero(); n * n];
                for (c, &(i, j)) in cells.iter().enumerate() {
                    v[b.pos(i, j)] = x[c].clone();
                }
                normalize(v)
            })
            .collect();
        let diagonal = |v: &Vec<Scalar>| (0..n).any(|i| !v[b.pos(i, i)].is_zero());
        vecs.sort_by_key(|v| (!diagonal(v), lead(v)));
        if !odd {
            rank = vecs.iter().filter(|v| diagonal(v)).count();
        }
        elems.extend(vecs.into_iter().map(|v| (matrix_label(n, &v), v)));
    }
    let frame = frame_of(&elems, rank);
    let alg = subalgebra_of(&gl, &format!("osp({m}|{two_n})"), elems)?;
    let (p, q) = (m, two_n / 2);
    check_dim(&alg, p * (p - 1) / 2 + q * (2 * q + 1) + 2 * p * q)?;
    alg.with_frame(frame)
}

fn lead(v: &[Scalar]) -> usize {
    v.iter().position(|c| !c.is_zero()).unwrap_or(v.len())
}

/// Scales so the first nonzero coordinate is 1.
fn normalize(v: Vec<Scalar>) -> Vec<Scalar> {
    match v.iter().find(|c| !c.is_zero()) {
        Some(c) if !c.is_one() => {
            let inv = c.recip();
            v.iter().map(|x| x * &inv).collect()
        }
        _ => v,
    }
}

/// P(n): matrices `(a b; c -a^T)` in gl(n+1|n+1) with `tr a = 0`, `b`
/// symmetric and `c` skew-symmetric.
pub fn build_p(n: usize) -> Result<SuperAlgebra> {
    if n < 1 {
        return Err(Error::Usage("P(n) needs n >= 1".into()));
    }
    let k = n + 1;
    let b = Blocks { r: k, s: k };
    let gl = build_gl(k, k)?;
    let mut elems = Vec::new();
    for j in 1..=n {
        elems.push(labelled(
            b,
            vec![(1, 1, 1), (-1, 1 + j, 1 + j), (-1, k + 1, k + 1), (1, k + 1 + j, k + 1 + j)],
        ));
    }
    for i in 1..=k {
        for j in 1..=k {
            if i != j {
                elems.push(labelled(b, vec![(1, i, j), (-1, k + j, k + i)]));
            }
        }
    }
    for i in 1..=k {
        elems.push(labelled(b, vec![(1, i, k + i)]));
    }
    for i in 1..=k {
        for j in i + 1..=k {
            elems.push(labelled(b, vec![(1, i, k + j), (1, j, k + i)]));
        }
    }
    for i in 1..=k {
        for j in i + 1..=k {
            elems.push(labelled(b, vec![(1, k + i, j), (-1, k + j, i)]));
        }
    }
    let frame = frame_of(&elems, n);
    let alg = subalgebra_of(&gl, &format!("P({n})"), elems)?;
    check_dim(&alg, 2 * k * k - 1)?;
    alg.with_frame(frame)
}

/// The unreduced queer algebra: matrices `(a b; b a)` in gl(n+1|n+1) with
/// `tr b = 0`.
pub fn build_q_tilde(n: usize) -> Result<SuperAlgebra> {
    if n < 1 {
        return Err(Error::Usage("Q(n) needs n >= 1".into()));
    }
    let k = n + 1;
    let b = Blocks { r: k, s: k };
    let gl = build_gl(k, k)?;
    let mut elems = Vec::new();
    for i in 1..=k {
        elems.push(labelled(b, vec![(1, i, i), (1, k + i, k + i)]));
    }
    for i in 1..=k {
        for j in 1..=k {
            if i != j {
                elems.push(labelled(b, vec![(1, i, j), (1, k + i, k + j)]));
            }
        }
    }
    for i in 2..=k {
        elems.push(labelled(
            b,
            vec![(1, 1, k + 1), (1, k + 1, 1), (-1, i, k + i), (-1, k + i, i)],
        ));
    }
    for j in 1..=k {
        for l in 1..=k {
            if j != l {
                elems.push(labelled(b, vec![(1, j, k + l), (1, k + j, l)]));
            }
        }
    }
    let frame = frame_of(&elems, k);
    let alg = subalgebra_of(&gl, &format!("Qt({n})"), elems)?;
    check_dim(&alg, 2 * k * k - 1)?;
    alg.with_frame(frame)
}

/// Q(n): the unreduced queer algebra modulo the identity matrix.
pub fn build_q(n: usize) -> Result<SuperAlgebra> {
    let qt = build_q_tilde(n)?;
    let k = n + 1;
    let b = Blocks { r: k, s: k };
    let identity: Vec<(i64, usize, usize)> = (1..=2 * k).map(|i| (1, i, i)).collect();
    let center = qt
        .from_ambient(&b.vec(&identity))?
        .ok_or_else(|| Error::Structural("identity is not in the queer algebra".into()))?;
    let ideal = Subspace::span(qt.dim(), [center.into_coeffs()])?;
    let q = quotient_by_ideal(&qt, &ideal, &format!("Q({n})"))?.quotient;
    check_dim(&q, 2 * k * k - 2)?;
    let frame = qt.realization().expect("realized").frame[..n].to_vec();
    q.with_frame(frame)
}

impl SuperAlgebra {
    /// Element named by a basis label or, for realized algebras, by an
    /// ambient expression (`e13+e42` for matrices, `x12d3` for derivations).
    pub fn parse_element(&self, s: &str) -> Result<crate::algebra::Element> {
        let t = s.trim();
        if let Some(i) = self.index_of(t) {
            return Ok(self.basis_element(i));
        }
        if let Ok(x) = self.parse_combination(t) {
            return Ok(x);
        }
        let r = self
            .realization()
            .ok_or_else(|| Error::Usage(format!("no basis element labelled `{t}`")))?;
        let v = match r.model {
            Model::Matrix { even, odd } => parse_matrix_expr(even + odd, t)?,
            Model::Derivation { n } => crate::cartan::parse_derivation_expr(n, t)?,
        };
        self.from_ambient(&v)?
            .ok_or_else(|| Error::Usage(format!("`{t}` does not lie in {}", self.name())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_axioms;

    fn br(a: &SuperAlgebra, x: &str, y: &str) -> crate::algebra::Element {
        let x = a.parse_element(x).unwrap();
        let y = a.parse_element(y).unwrap();
        a.bracket(&x, &y).unwrap()
    }

    #[test]
    fn gl11_odd_bracket_is_anticommutator() {
        let g = build_gl(1, 1).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(br(&g, "e12", "e21"), g.parse_element("e11+e22").unwrap());
        assert!(br(&g, "e11", "e11").is_zero());
        assert_eq!(build_gl(2, 2).unwrap().dim(), 16);
    }

    #[test]
    fn expression_round_trip() {
        let v = parse_matrix_expr(8, "e17+e35+e64-e82").unwrap();
        assert_eq!(matrix_label(8, &v), "e17+e35+e64-e82");
        let w = parse_matrix_expr(3, "2e11 - 1/2*e22").unwrap();
        assert_eq!(matrix_label(3, &w), "2*e11-1/2*e22");
        assert_eq!(parse_matrix_expr(12, "e10,12").unwrap()[9 * 12 + 11], Scalar::one());
        assert!(parse_matrix_expr(3, "e14").is_err());
        assert!(parse_matrix_expr(3, "x12").is_err());
    }

    #[test]
    fn a11_shape() {
        let a = build_a(1, 1).unwrap();
        assert_eq!(a.dim(), 14);
        assert_eq!(a.even_part().dim(), 6);
        assert_eq!(a.odd_part().dim(), 8);
        assert_eq!(&a.labels()[..2], ["e11+e33", "e11+e44"]);
        assert!(check_axioms(&a).passed());
    }

    #[test]
    fn osp_dims() {
        let b01 = build_osp(1, 2).unwrap();
        assert_eq!((b01.dim(), b01.even_part().dim()), (5, 3));
        assert_eq!(build_osp(2, 2).unwrap().even_part().dim(), 4);
        assert_eq!(build_osp(3, 2).unwrap().even_part().dim(), 6);
        assert!(check_axioms(&build_osp(3, 2).unwrap()).passed());
    }

    #[test]
    fn p3_display_identity() {
        let p = build_p(3).unwrap();
        assert_eq!((p.dim(), p.even_part().dim()), (31, 15));
        assert_eq!(br(&p, "e37", "e28+e46+e53-e71"), p.parse_element("e57-e31").unwrap());
    }

    #[test]
    fn q_dims() {
        assert_eq!(build_q_tilde(2).unwrap().dim(), 17);
        assert_eq!(build_q(2).unwrap().dim(), 16);
    }
}
