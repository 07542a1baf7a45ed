use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::{Parity, SuperAlgebra};
use crate::exact::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomKind {
    Anticommutativity,
    ParityCompatibility,
    Jacobi,
}

/// First violated axiom, with the basis indices involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: AxiomKind,
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} fails on ({})", self.kind, self.labels.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AxiomReport {
    Pass { triples_checked: usize },
    Fail { violation: Violation },
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass { .. })
    }
}

fn sign(p: Parity, q: Parity) -> bool {
    // true when (-1)^{pq} = -1
    p.is_odd() && q.is_odd()
}

/// Checks super anticommutativity, parity compatibility of every structure
/// constant, and the super Jacobi identity
/// `(-1)^{p_i p_k}[b_i,[b_j,b_k]] + cyclic = 0` on every basis triple.
///
/// Anticommutativity is structural for the stored `i <= j` table except on
/// the diagonal, where `[b_i, b_i]` must vanish for even `b_i`. Jacobi is
/// invariant (up to sign) under permuting the triple once anticommutativity
/// holds, so only `i <= j <= k` is visited.
pub fn check_axioms(a: &SuperAlgebra) -> AxiomReport {
    let d = a.dim();
    let fail = |kind, indices: Vec<usize>| AxiomReport::Fail {
        violation: Violation {
            kind,
            labels: indices.iter().map(|&i| a.label(i).to_string()).collect(),
            indices,
        },
    };
    for i in 0..d {
        if a.parity(i) == Parity::Even && !a.basis_bracket(i, i).1.is_empty() {
            return fail(AxiomKind::Anticommutativity, vec![i, i]);
        }
    }
    for j in 0..d {
        for i in 0..=j {
            let expect = a.parity(i) + a.parity(j);
            if let Some((k, _)) = a.basis_bracket(i, j).1.iter().find(|(k, _)| a.parity(*k) != expect) {
                return fail(AxiomKind::ParityCompatibility, vec![i, j, *k]);
            }
        }
    }
    let first_bad = (0..d).into_par_iter().find_map_first(|i| {
        for j in i..d {
            for k in j..d {
                if !jacobi_vanishes(a, i, j, k) {
                    return Some(vec![i, j, k]);
                }
            }
        }
        None
    });
    match first_bad {
        Some(t) => fail(AxiomKind::Jacobi, t),
        None => AxiomReport::Pass {
            triples_checked: d * (d + 1) * (d + 2) / 6,
        },
    }
}

fn jacobi_vanishes(a: &SuperAlgebra, i: usize, j: usize, k: usize) -> bool {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    let mut term = |x: usize, y: usize, z: usize| {
        // (-1)^{p_x p_z} [b_x, [b_y, b_z]]
        let outer = sign(a.parity(x), a.parity(z));
        let (neg_inner, inner) = a.basis_bracket(y, z);
        for (m, c) in inner {
            let (neg_outer, v) = a.basis_bracket(x, *m);
            let negate = outer ^ neg_inner ^ neg_outer;
            for (t, e) in v {
                let val = c * e;
                let slot = acc.entry(*t).or_insert_with(Scalar::zero);
                if negate {
                    *slot -= &val;
                } else {
                    *slot += &val;
                }
            }
        }
    };
    term(i, j, k);
    term(j, k, i);
    term(k, i, j);
    acc.values().all(Scalar::is_zero)
}
