//! One-element generator candidates and their certification by closure.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{closure_run, ClosureMode, Element, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exact::{Scalar, Subspace};
use crate::family::{Family, FamilyKind};
use crate::weights::{
    decompose, irreducible_summands, omega_point, standard_cartan, CartanFrame, OmegaIter, WeightFilter,
    WeightFunctional,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Recipe {
    #[serde(rename = "classical-case1")]
    ClassicalCase1,
    #[serde(rename = "classical-A11")]
    ClassicalA11,
    #[serde(rename = "classical-P3")]
    ClassicalP3,
    #[serde(rename = "classical-Qn")]
    ClassicalQn,
    #[serde(rename = "cartan-single")]
    CartanSingle,
    #[serde(rename = "cartan-split")]
    CartanSplit,
}

/// A named summand of a candidate, with its weight when it is a weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ingredient {
    pub role: String,
    pub weight: Option<WeightFunctional>,
    pub expansion: String,
}

#[derive(Clone, Debug)]
pub struct GeneratorCandidate {
    pub element: Element,
    pub recipe: Recipe,
    pub ingredients: Vec<Ingredient>,
    /// Frame coordinates of the Cartan summand.
    pub h_coords: Vec<i64>,
    /// Element without its Cartan summand.
    pub body: Element,
    /// Functionals the Cartan summand separates.
    pub separated: Vec<WeightFunctional>,
    /// Conjugation carrying the standard frame to one for which `x_0` is
    /// balanced, for Cartan recipes.
    pub twist: Option<Twist>,
    pub x0_balanced: Option<bool>,
}

/// The inner automorphism `ψ = exp(ad v) exp(ad u)` of an algebra with `u`, `v`
/// ad-nilpotent, and its inverse `φ`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub u: Element,
    pub v: Element,
}

/// `exp(±ad y)(x)` for ad-nilpotent `y`.
fn exp_ad(a: &SuperAlgebra, y: &Element, x: &[Scalar], negate: bool) -> Vec<Scalar> {
    let mut out = x.to_vec();
    let mut term = x.to_vec();
    for k in 1..=a.dim() as i64 {
        let f = Scalar::new(if negate { -1 } else { 1 }, k);
        term = a.bracket_coeffs(y.coeffs(), &term).iter().map(|c| c * &f).collect();
        if term.iter().all(Scalar::is_zero) {
            break;
        }
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
    }
    out
}

impl Twist {
    /// `ψ(x)`.
    pub fn forward(&self, a: &SuperAlgebra, x: &Element) -> Result<Element> {
        let y = exp_ad(a, &self.u, x.coeffs(), false);
        a.element(exp_ad(a, &self.v, &y, false))
    }

    /// `φ(x) = ψ^{-1}(x)`.
    pub fn inverse(&self, a: &SuperAlgebra, x: &Element) -> Result<Element> {
        let y = exp_ad(a, &self.v, x.coeffs(), true);
        a.element(exp_ad(a, &self.u, &y, true))
    }
}

fn recipe_for(f: Option<&Family>) -> Result<Recipe> {
    Ok(match f {
        Some(Family::A { m: 1, n: 1 }) => Recipe::ClassicalA11,
        Some(Family::P { n: 3 }) => Recipe::ClassicalP3,
        Some(Family::Q { .. }) => Recipe::ClassicalQn,
        Some(Family::W { .. }) | Some(Family::H { n: 6 }) => Recipe::CartanSplit,
        Some(f) if f.kind() == FamilyKind::Cartan => Recipe::CartanSingle,
        Some(_) => Recipe::ClassicalCase1,
        None => return Err(Error::Usage("candidate needs an algebra built from a family".into())),
    })
}

fn sum(a: &SuperAlgebra, xs: &[&Element]) -> Result<Element> {
    xs.iter().try_fold(a.zero(), |acc, x| acc.add(x))
}

fn ingredient(a: &SuperAlgebra, frame: &CartanFrame, role: &str, x: &Element) -> Ingredient {
    Ingredient {
        role: role.to_string(),
        weight: frame.weight_of_vector(x.coeffs()),
        expansion: a.describe(x.coeffs()),
    }
}

fn dedup(ws: impl IntoIterator<Item = WeightFunctional>) -> Vec<WeightFunctional> {
    ws.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// The Cartan summand for frame coordinates `coords`, carried by the twist
/// when there is one.
fn cartan_summand(a: &SuperAlgebra, frame: &CartanFrame, twist: Option<&Twist>, coords: &[i64]) -> Result<Element> {
    let h = frame.element_int(a, coords)?;
    match twist {
        Some(t) => t.inverse(a, &h),
        None => Ok(h),
    }
}

/// Attaches the first separating Cartan element for `separated` to `body`.
#[allow(clippy::too_many_arguments)]
fn finish(
    a: &SuperAlgebra,
    frame: &CartanFrame,
    recipe: Recipe,
    body: Element,
    mut ingredients: Vec<Ingredient>,
    separated: Vec<WeightFunctional>,
    twist: Option<Twist>,
    x0_balanced: Option<bool>,
) -> Result<GeneratorCandidate> {
    let mut it = OmegaIter::new(&separated, true)?;
    let h_coords = it
        .next()
        .ok_or_else(|| Error::IngredientSearch("no separating Cartan element".into()))?;
    let h = cartan_summand(a, frame, twist.as_ref(), &h_coords)?;
    ingredients.push(ingredient(a, frame, h_role(&twist), &h));
    Ok(GeneratorCandidate {
        element: body.add(&h)?,
        recipe,
        ingredients,
        h_coords,
        body,
        separated,
        twist,
        x0_balanced,
    })
}

fn h_role(twist: &Option<Twist>) -> &'static str {
    if twist.is_some() {
        "h'"
    } else {
        "h"
    }
}

/// A twist for which `ψ(x0)` is balanced relative to the standard frame, so
/// `x0` is balanced relative to the conjugate frame `φ(h)`. Tries
/// `u = t·Σ e_α` over positive roots of layer 0 and `v = s·Σ e_α` over
/// negative ones for small `s`, `t`.
fn balancing_twist(a: &SuperAlgebra, frame: &CartanFrame, x0: &Element) -> Result<Twist> {
    let roots = layer0_roots(a, frame)?;
    let p = omega_point(&roots, true)?;
    let (mut pos, mut neg) = (a.zero(), a.zero());
    for k in a.layer(0) {
        let v = frame.weight_of(k).eval_int(&p);
        if v.is_zero() {
            continue;
        }
        if v.is_negative() {
            neg = neg.add(&a.basis_element(k))?;
        } else {
            pos = pos.add(&a.basis_element(k))?;
        }
    }
    for t in 1..=4 {
        for s in 1..=4 {
            let tw = Twist {
                u: pos.scale(&Scalar::from(t)),
                v: neg.scale(&Scalar::from(s)),
            };
            if is_balanced(a, &tw.forward(a, x0)?, frame)? {
                return Ok(tw);
            }
        }
    }
    Err(Error::IngredientSearch(format!("{}: no balancing conjugation for x0", a.name())))
}

/// Candidate `body + h'` for the Cartan recipes, with `h'` separating the
/// layer-0 roots of the conjugate frame.
fn finish_cartan(
    a: &SuperAlgebra,
    frame: &CartanFrame,
    recipe: Recipe,
    body: Element,
    mut ingredients: Vec<Ingredient>,
    x0: &Element,
) -> Result<GeneratorCandidate> {
    let twist = balancing_twist(a, frame, x0)?;
    ingredients.push(ingredient(a, frame, "u", &twist.u));
    ingredients.push(ingredient(a, frame, "v", &twist.v));
    let separated = dedup(layer0_roots(a, frame)?);
    finish(a, frame, recipe, body, ingredients, separated, Some(twist), Some(true))
}

/// The classical candidate: the sum of all standard odd basis elements plus
/// a Cartan element separating the odd weights.
pub fn classical_candidate(a: &SuperAlgebra) -> Result<GeneratorCandidate> {
    let recipe = recipe_for(a.family())?;
    if matches!(recipe, Recipe::CartanSingle | Recipe::CartanSplit) {
        return Err(Error::Usage(format!("{} is not classical", a.name())));
    }
    let frame = standard_cartan(a)?;
    let odd = decompose(a, &frame, WeightFilter::Parity(Parity::Odd))?;
    let mut body = a.zero();
    let mut ingredients = Vec::new();
    for (w, idx) in &odd.spaces {
        let mut xw = a.zero();
        for &k in idx {
            xw = xw.add(&a.basis_element(k))?;
        }
        ingredients.push(Ingredient {
            role: "x".into(),
            weight: Some(w.clone()),
            expansion: a.describe(xw.coeffs()),
        });
        body = body.add(&xw)?;
    }
    let separated = dedup(odd.spaces.keys().cloned());
    finish(a, &frame, recipe, body, ingredients, separated, None, None)
}

/// Weight vectors of `u` (an H-stable subspace of the span of `idx`), one
/// RREF basis per weight, in weight order.
fn weight_vectors(a: &SuperAlgebra, frame: &CartanFrame, u: &Subspace, idx: &[usize]) -> Vec<Element> {
    let ws: BTreeSet<WeightFunctional> = idx.iter().map(|&k| frame.weight_of(k).clone()).collect();
    let mut out = Vec::new();
    for w in ws {
        let proj = u.basis().iter().map(|v| {
            v.iter()
                .enumerate()
                .map(|(k, c)| if frame.weight_of(k) == &w { c.clone() } else { Scalar::zero() })
                .collect::<Vec<_>>()
        });
        let piece = Subspace::span(a.dim(), proj).expect("algebra vectors");
        for v in piece.basis() {
            out.push(a.element(v.clone()).expect("algebra vectors"));
        }
    }
    out
}

fn layer0_roots(a: &SuperAlgebra, frame: &CartanFrame) -> Result<Vec<WeightFunctional>> {
    Ok(decompose(a, frame, WeightFilter::Layer(0))?.nonzero_weights().into_iter().collect())
}

/// The Cartan candidate `x_{-1} + x_0 + h + x_1` (or with `x_1 = x_1^1 + x_1^2`
/// and the Euler element for W), found by a deterministic search over
/// standard weight vectors.
pub fn cartan_candidate(a: &SuperAlgebra) -> Result<GeneratorCandidate> {
    let recipe = recipe_for(a.family())?;
    let frame = standard_cartan(a)?;
    let lm1: Vec<Element> = a.layer(-1).into_iter().map(|k| a.basis_element(k)).collect();
    let l1_idx = a.layer(1);
    match recipe {
        Recipe::CartanSingle => {
            let l1: Vec<Element> = l1_idx.iter().map(|&k| a.basis_element(k)).collect();
            for xm in &lm1 {
                let am = frame.weight_of_vector(xm.coeffs());
                for xp in &l1 {
                    let ap = frame.weight_of_vector(xp.coeffs());
                    if am == ap || !a.bracket(xp, xp)?.is_zero() {
                        continue;
                    }
                    let c = a.bracket(xm, xp)?;
                    if c.is_zero() {
                        continue;
                    }
                    let x0 = c.scale(&Scalar::from(2));
                    let body = sum(a, &[xm, &x0, xp])?;
                    let ingredients = vec![
                        ingredient(a, &frame, "x-1", xm),
                        ingredient(a, &frame, "x0", &x0),
                        ingredient(a, &frame, "x1", xp),
                    ];
                    return finish_cartan(a, &frame, recipe, body, ingredients, &x0);
                }
            }
            Err(Error::IngredientSearch(format!(
                "{}: no x-1, x1 with [x1,x1] = 0, [x-1,x1] != 0 and distinct weights",
                a.name()
            )))
        }
        Recipe::CartanSplit => {
            let l0 = a.layer(0);
            let parts = irreducible_summands(a, &frame, &l0, &l1_idx)?;
            if parts.len() != 2 {
                return Err(Error::IngredientSearch(format!(
                    "{}: L1 has {} irreducible summands, expected 2",
                    a.name(),
                    parts.len()
                )));
            }
            let u1 = weight_vectors(a, &frame, &parts[0], &l1_idx);
            let u2 = weight_vectors(a, &frame, &parts[1], &l1_idx);
            let euler = match a.family() {
                Some(Family::W { n }) => Some(
                    a.from_derivation(&crate::cartan::euler(*n as usize))?
                        .ok_or_else(|| Error::Structural("Euler element missing".into()))?,
                ),
                _ => None,
            };
            for xm in &lm1 {
                let am = frame.weight_of_vector(xm.coeffs());
                for p in &u1 {
                    for q in &u2 {
                        let ap = frame.weight_of_vector(p.coeffs());
                        let aq = frame.weight_of_vector(q.coeffs());
                        let ws = [&am, &ap, &aq];
                        if ws.iter().any(|w| w.as_ref().is_none_or(WeightFunctional::is_zero))
                            || am == ap
                            || am == aq
                            || ap == aq
                        {
                            continue;
                        }
                        let x1 = p.add(q)?;
                        if !a.bracket(&x1, &x1)?.is_zero() {
                            continue;
                        }
                        let c = a.bracket(xm, &x1)?;
                        if c.is_zero() {
                            continue;
                        }
                        let x0 = c.scale(&Scalar::from(2));
                        let mut body = sum(a, &[xm, &x0, &x1])?;
                        let mut ingredients = vec![
                            ingredient(a, &frame, "x-1", xm),
                            ingredient(a, &frame, "x0", &x0),
                            ingredient(a, &frame, "x1^1", p),
                            ingredient(a, &frame, "x1^2", q),
                        ];
                        if let Some(z) = &euler {
                            body = body.add(z)?;
                            ingredients.push(ingredient(a, &frame, "z", z));
                        }
                        return finish_cartan(a, &frame, recipe, body, ingredients, &x0);
                    }
                }
            }
            Err(Error::IngredientSearch(format!(
                "{}: no x-1, x1^1, x1^2 satisfying the side conditions",
                a.name()
            )))
        }
        _ => Err(Error::Usage(format!("{} is not of Cartan type", a.name()))),
    }
}

/// The recipe-appropriate candidate for a family build.
pub fn candidate(a: &SuperAlgebra) -> Result<GeneratorCandidate> {
    match recipe_for(a.family())? {
        Recipe::CartanSingle | Recipe::CartanSplit => cartan_candidate(a),
        _ => classical_candidate(a),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Generated,
    NotGenerated,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub family: String,
    pub params: Vec<u32>,
    pub recipe: Recipe,
    pub ingredients: Vec<Ingredient>,
    pub h_coords: Vec<i64>,
    pub element: String,
    pub rounds: usize,
    pub dims: Vec<usize>,
    pub final_dim: usize,
    pub target_dim: usize,
    pub verdict: Verdict,
    pub attempts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0_balanced: Option<bool>,
}

impl Certificate {
    pub fn generated(&self) -> bool {
        self.verdict == Verdict::Generated
    }
}

/// Runs the closure of the candidate element and records the trace.
pub fn certify(a: &SuperAlgebra, c: &GeneratorCandidate, mode: ClosureMode) -> Result<Certificate> {
    let run = closure_run(a, std::slice::from_ref(&c.element), mode)?;
    let final_dim = run.space.dim();
    Ok(Certificate {
        family: a.family().map_or_else(|| a.name().to_string(), Family::to_string),
        params: a.family().map(Family::params).unwrap_or_default(),
        recipe: c.recipe,
        ingredients: c.ingredients.clone(),
        h_coords: c.h_coords.clone(),
        element: a.describe(c.element.coeffs()),
        rounds: run.rounds,
        dims: run.dims,
        final_dim,
        target_dim: a.dim(),
        verdict: if final_dim == a.dim() { Verdict::Generated } else { Verdict::NotGenerated },
        attempts: 1,
        x0_balanced: c.x0_balanced,
    })
}

/// Certifies `base`; on failure retries with the next separating Cartan
/// elements in the enumeration order, for at most `budget` attempts in total.
pub fn search_fallback(
    a: &SuperAlgebra,
    base: &GeneratorCandidate,
    budget: usize,
    mode: ClosureMode,
) -> Result<Certificate> {
    let mut cert = certify(a, base, mode)?;
    if cert.generated() || budget <= 1 {
        return Ok(cert);
    }
    let frame = standard_cartan(a)?;
    let points = OmegaIter::new(&base.separated, true)?.filter(|p| p != &base.h_coords);
    for (attempt, p) in (2..=budget).zip(points) {
        let h = cartan_summand(a, &frame, base.twist.as_ref(), &p)?;
        let mut c = base.clone();
        c.element = base.body.add(&h)?;
        c.h_coords = p;
        if let Some(last) = c.ingredients.last_mut() {
            *last = ingredient(a, &frame, h_role(&base.twist), &h);
        }
        cert = certify(a, &c, mode)?;
        cert.attempts = attempt;
        if cert.generated() {
            break;
        }
    }
    Ok(cert)
}

/// Whether `x` has a nonzero component in every nonzero weight space of
/// layer 0 (Cartan types) or of the even part (classical types).
pub fn is_balanced(a: &SuperAlgebra, x: &Element, frame: &CartanFrame) -> Result<bool> {
    let filter = if a.z_degrees().is_some() {
        WeightFilter::Layer(0)
    } else {
        WeightFilter::Parity(Parity::Even)
    };
    let d = decompose(a, frame, filter)?;
    Ok(d
        .spaces
        .iter()
        .filter(|(w, _)| !w.is_zero())
        .all(|(_, idx)| idx.iter().any(|&k| !x.coeffs()[k].is_zero())))
}
