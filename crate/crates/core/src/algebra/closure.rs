use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Element, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Scalar, Subspace};

/// Whether intermediate spaces are forced to be Z2-graded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    /// Plain bracket closure of the linear span.
    #[default]
    Ungraded,
    /// Every added vector is split into its even and odd components, giving
    /// the smallest graded subalgebra.
    Graded,
}

/// Result of a closure fixpoint together with its growth trace.
#[derive(Clone, Debug)]
pub struct ClosureRun {
    pub space: Subspace,
    /// Dimension after seeding, then after each round. The last entry
    /// repeats the previous one.
    pub dims: Vec<usize>,
    pub rounds: usize,
}

const CHUNK: usize = 512;

struct Fixpoint<'a> {
    alg: &'a SuperAlgebra,
    mode: ClosureMode,
    space: Subspace,
    members: Vec<Vec<Scalar>>,
}

impl<'a> Fixpoint<'a> {
    fn new(alg: &'a SuperAlgebra, mode: ClosureMode) -> Self {
        Fixpoint {
            alg,
            mode,
            space: Subspace::zero(alg.dim()),
            members: Vec::new(),
        }
    }

    fn add(&mut self, v: &[Scalar]) {
        match self.mode {
            ClosureMode::Ungraded => self.add_one(v),
            ClosureMode::Graded => {
                for p in [Parity::Even, Parity::Odd] {
                    let part: Vec<Scalar> = v
                        .iter()
                        .enumerate()
                        .map(|(i, c)| if self.alg.parity(i) == p { c.clone() } else { Scalar::zero() })
                        .collect();
                    self.add_one(&part);
                }
            }
        }
    }

    fn add_one(&mut self, v: &[Scalar]) {
        let r = self.space.reduce(v).expect("closure vectors have algebra length");
        if r.iter().all(Scalar::is_zero) {
            return;
        }
        self.space.insert(&r).expect("length checked");
        self.members.push(r);
    }

    /// Evaluates `products` in parallel chunks, inserting results in order.
    /// Stops early once the space is full.
    fn absorb<F>(&mut self, jobs: Vec<(usize, usize)>, product: F)
    where
        F: Fn(&[Vec<Scalar>], usize, usize) -> Vec<Vec<Scalar>> + Sync,
    {
        for chunk in jobs.chunks(CHUNK) {
            if self.space.is_full() {
                return;
            }
            let members = &self.members;
            let results: Vec<Vec<Vec<Scalar>>> = chunk
                .par_iter()
                .map(|&(a, b)| product(members, a, b))
                .collect();
            for v in results.into_iter().flatten() {
                self.add(&v);
            }
        }
    }
}

/// Least bracket-closed subspace containing `seeds`.
pub fn closure_run(alg: &SuperAlgebra, seeds: &[Element], mode: ClosureMode) -> Result<ClosureRun> {
    let mut fp = Fixpoint::new(alg, mode);
    for s in seeds {
        check_member(alg, s)?;
        fp.add(s.coeffs());
    }
    let mut dims = vec![fp.space.dim()];
    let mut rounds = 0;
    let mut start = 0;
    loop {
        let end = fp.members.len();
        if fp.space.is_full() || start == end {
            dims.push(fp.space.dim());
            break;
        }
        rounds += 1;
        let mut jobs = Vec::new();
        for f in start..end {
            for m in 0..end {
                // pairs inside the frontier are visited once
                if m >= start && m < f {
                    continue;
                }
                jobs.push((f, m));
            }
        }
        let both_orders = mode == ClosureMode::Ungraded;
        fp.absorb(jobs, |members, f, m| {
            let mut out = vec![alg.bracket_coeffs(&members[f], &members[m])];
            if both_orders && f != m {
                out.push(alg.bracket_coeffs(&members[m], &members[f]));
            }
            out
        });
        start = end;
        dims.push(fp.space.dim());
        if dims[dims.len() - 1] == dims[dims.len() - 2] {
            break;
        }
    }
    Ok(ClosureRun {
        space: fp.space,
        dims,
        rounds,
    })
}

/// `⟨seeds⟩`, the subalgebra generated by `seeds`.
pub fn generated_subalgebra(alg: &SuperAlgebra, seeds: &[Element], mode: ClosureMode) -> Result<Subspace> {
    Ok(closure_run(alg, seeds, mode)?.space)
}

/// Least subspace containing `seeds` that is stable under `ad(b_i)` for every
/// `i` in `acting`.
pub fn generated_submodule(alg: &SuperAlgebra, acting: &[usize], seeds: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut fp = Fixpoint::new(alg, ClosureMode::Ungraded);
    for s in seeds {
        crate::error::check_len(alg.dim(), s.len())?;
        fp.add(s);
    }
    let mut start = 0;
    while start < fp.members.len() && !fp.space.is_full() {
        let end = fp.members.len();
        let jobs: Vec<(usize, usize)> = (start..end)
            .flat_map(|f| acting.iter().map(move |&a| (f, a)))
            .collect();
        fp.absorb(jobs, |members, f, a| vec![alg.ad_basis(a, &members[f])]);
        start = end;
    }
    Ok(fp.space)
}

/// Least two-sided ideal containing `seeds`.
pub fn generated_ideal(alg: &SuperAlgebra, seeds: &[Element]) -> Result<Subspace> {
    let mut fp = Fixpoint::new(alg, ClosureMode::Ungraded);
    for s in seeds {
        check_member(alg, s)?;
        fp.add(s.coeffs());
    }
    let d = alg.dim();
    let mut start = 0;
    while start < fp.members.len() && !fp.space.is_full() {
        let end = fp.members.len();
        let jobs: Vec<(usize, usize)> = (start..end)
            .flat_map(|f| (0..d).map(move |i| (f, i)))
            .collect();
        fp.absorb(jobs, |members, f, i| {
            let mut basis = vec![Scalar::zero(); d];
            basis[i] = Scalar::one();
            vec![
                alg.bracket_coeffs(&basis, &members[f]),
                alg.bracket_coeffs(&members[f], &basis),
            ]
        });
        start = end;
    }
    Ok(fp.space)
}

/// True when `[b_i, v]` stays in `space` for every basis element and every
/// basis vector `v` of `space`.
pub fn is_ideal(alg: &SuperAlgebra, space: &Subspace) -> Result<bool> {
    crate::error::check_len(alg.dim(), space.ambient_dim())?;
    for v in space.basis() {
        for i in 0..alg.dim() {
            if !space.contains(&alg.ad_basis(i, v))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_member(alg: &SuperAlgebra, x: &Element) -> Result<()> {
    if x.algebra_name() != alg.name() {
        return Err(Error::Usage(format!(
            "seed from `{}` used with `{}`",
            x.algebra_name(),
            alg.name()
        )));
    }
    crate::error::check_len(alg.dim(), x.coeffs().len())
}
