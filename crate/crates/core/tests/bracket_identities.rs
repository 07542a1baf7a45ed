use superlie::classical::build_gl;
use superlie::{Family, Scalar, SuperAlgebra};

fn bracket(a: &SuperAlgebra, x: &str, y: &str) -> superlie::Element {
    let x = a.parse_element(x).unwrap();
    let y = a.parse_element(y).unwrap();
    a.bracket(&x, &y).unwrap()
}

fn expect(a: &SuperAlgebra, lhs: &str, x: &str, y: &str, factor: i64) {
    let want = a.parse_element(lhs).unwrap();
    let got = bracket(a, x, y).scale(&Scalar::new(1, factor));
    assert_eq!(got, want, "[{x}, {y}] / {factor} != {lhs}");
}

#[test]
fn p3_displayed_identities() {
    let p = Family::P { n: 3 }.build().unwrap();
    for (lhs, x, y) in [
        ("e57-e31", "e37", "e28+e46+e53-e71"),
        ("e58-e41", "e48", "e27+e36+e54-e81"),
        ("e56-e21", "e26", "e38+e47+e52-e61"),
        ("e12-e65", "e15", "e38+e47+e52-e61"),
        ("e13-e75", "e15", "e28+e46+e53-e71"),
        ("e23-e76", "e26", "e18+e45+e63-e72"),
        ("e24-e86", "e26", "e17+e35+e64-e82"),
        ("e14-e85", "e15", "e27+e36+e54-e81"),
        ("e34-e87", "e37", "e16+e25+e74-e83"),
        ("e67-e32", "e37", "e18+e45+e63-e72"),
        ("e68-e42", "e48", "e17+e35+e64-e82"),
        ("e78-e43", "e48", "e16+e25+e74-e83"),
        ("e18+e45-e63+e72", "e17+e35+e64-e82", "e78-e43"),
    ] {
        expect(&p, lhs, x, y, 1);
    }
}

#[test]
fn a11_displayed_identities() {
    let a = Family::A { m: 1, n: 1 }.build().unwrap();
    for (lhs, x, y) in [
        ("e34", "e14+e32", "e24+e31"),
        ("e12", "e14+e32", "e13+e42"),
        ("e21", "e24+e31", "e23+e41"),
        ("e43", "e13+e42", "e23+e41"),
    ] {
        expect(&a, lhs, x, y, 2);
    }
    expect(&a, "-e24+e31", "e14+e32", "e21", 1);
}

/// Plain matrix commutator `XY - YX` on integer matrices.
fn commutator(n: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut c = Scalar::zero();
            for k in 0..n {
                c += &(&x[i * n + k] * &y[k * n + j]);
                c -= &(&y[i * n + k] * &x[k * n + j]);
            }
            out[i * n + j] = c;
        }
    }
    out
}

fn e(n: usize, terms: &[(i64, usize, usize)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n * n];
    for &(c, i, j) in terms {
        v[(i - 1) * n + (j - 1)] += &Scalar::from(c);
    }
    v
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// `[e_{i,N+k} + e_{N+i,k}, Z_j]` with `Z_j = e_{1,N+1} + e_{N+1,1} - e_{j,N+j} - e_{N+j,j}`.
#[test]
fn q_delta_formula() {
    for n in 2..=3 {
        let big = n + 1;
        let dim = 2 * big;
        let gl = build_gl(big, big).unwrap();
        for i in 1..=big {
            for k in (1..=big).filter(|&k| k != i) {
                for j in 2..=big {
                    let a = e(dim, &[(1, i, big + k), (1, big + i, k)]);
                    let z = e(dim, &[(1, 1, big + 1), (1, big + 1, 1), (-1, j, big + j), (-1, big + j, j)]);
                    let got = gl.bracket_coeffs(&a, &z);
                    let super_form = e(
                        dim,
                        &[
                            (delta(k, 1), i, 1),
                            (delta(k, 1), big + i, big + 1),
                            (-delta(k, j), i, j),
                            (-delta(k, j), big + i, big + j),
                            (delta(i, 1), 1, k),
                            (delta(i, 1), big + 1, big + k),
                            (-delta(i, j), j, k),
                            (-delta(i, j), big + j, big + k),
                        ],
                    );
                    assert_eq!(got, super_form, "n={n} i={i} k={k} j={j}");
                    let printed = e(
                        dim,
                        &[
                            (delta(i, j), j, k),
                            (delta(i, j), big + j, big + k),
                            (-delta(i, 1), 1, k),
                            (-delta(i, 1), big + 2 - 1, big + k),
                            (delta(k, 1), i, 1),
                            (delta(k, 1), big + i, big + 1),
                            (-delta(k, j), i, j),
                            (-delta(k, j), big + i, big + j),
                        ],
                    );
                    assert_eq!(commutator(dim, &a, &z), printed, "n={n} i={i} k={k} j={j}");
                }
            }
        }
    }
}
