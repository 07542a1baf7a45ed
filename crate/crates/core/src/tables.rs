//! Basis and weight tables in the shape of the reference fixtures.

use serde::{Deserialize, Serialize};

use crate::algebra::{Parity, SuperAlgebra};
use crate::error::Result;
use crate::exact::Subspace;
use crate::weights::{decompose, irreducible_summands, standard_cartan, CartanFrame, WeightFilter, WeightFunctional};

/// Section name, weight rows and summands of one rendered table.
type Section<'a> = (String, &'a [WeightRow], &'a [Vec<String>]);

/// Vectors sharing one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: Vec<String>,
    pub vectors: Vec<String>,
}

/// Weights and irreducible `L_0`-summands of one Z-layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerTable {
    pub degree: i32,
    pub weights: Vec<WeightRow>,
    pub summands: Vec<Vec<String>>,
}

/// Basis and weight data of one family build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub family: String,
    pub frame: Vec<String>,
    pub even: Vec<String>,
    pub odd: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub odd_summands: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub odd_weights: Vec<WeightRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub layers: Vec<LayerTable>,
}

fn weight_strings(w: &WeightFunctional) -> Vec<String> {
    w.0.iter().map(ToString::to_string).collect()
}

fn rows(a: &SuperAlgebra, frame: &CartanFrame, filter: WeightFilter) -> Result<Vec<WeightRow>> {
    Ok(decompose(a, frame, filter)?
        .spaces
        .iter()
        .map(|(w, idx)| WeightRow {
            weight: weight_strings(w),
            vectors: idx.iter().map(|&k| a.label(k).to_string()).collect(),
        })
        .collect())
}

/// Labels of a subspace's basis: standard labels when it is spanned by
/// standard basis elements, expansions otherwise.
fn subspace_labels(a: &SuperAlgebra, s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| a.describe(v)).collect()
}

fn summands(a: &SuperAlgebra, frame: &CartanFrame, acting: &[usize], module: &[usize]) -> Result<Vec<Vec<String>>> {
    let mut out: Vec<Vec<String>> = irreducible_summands(a, frame, acting, module)?
        .iter()
        .map(|s| subspace_labels(a, s))
        .collect();
    out.sort_by_key(|s| std::cmp::Reverse(s.len()));
    Ok(out)
}

/// The table data: classical families get odd weights and odd summands,
/// Cartan families per-layer weights for layers -1, 0, 1.
pub fn fixture(a: &SuperAlgebra) -> Result<Fixture> {
    let frame = standard_cartan(a)?;
    let labels = |p| a.indices_of(p).into_iter().map(|k| a.label(k).to_string()).collect();
    let mut fx = Fixture {
        family: a.name().to_string(),
        frame: frame.labels().to_vec(),
        even: labels(Parity::Even),
        odd: labels(Parity::Odd),
        odd_summands: Vec::new(),
        odd_weights: Vec::new(),
        layers: Vec::new(),
    };
    if a.z_degrees().is_some() {
        let l0 = a.layer(0);
        for k in -1..=1 {
            let module = a.layer(k);
            fx.layers.push(LayerTable {
                degree: k,
                weights: rows(a, &frame, WeightFilter::Layer(k))?,
                summands: summands(a, &frame, &l0, &module)?,
            });
        }
    } else {
        let even = a.indices_of(Parity::Even);
        fx.odd_summands = summands(a, &frame, &even, &a.indices_of(Parity::Odd))?;
        fx.odd_weights = rows(a, &frame, WeightFilter::Parity(Parity::Odd))?;
    }
    Ok(fx)
}

/// Plain-text rendering of the basis and weight tables.
pub fn render(a: &SuperAlgebra) -> Result<String> {
    let frame = standard_cartan(a)?;
    let fx = fixture(a)?;
    let mut s = format!("{} (dim {})\nframe: {}\n", a.name(), a.dim(), fx.frame.join(", "));
    s.push_str("basis:\n");
    for k in 0..a.dim() {
        let deg = a.z_degrees().map(|z| format!(" deg {:>2}", z[k])).unwrap_or_default();
        s.push_str(&format!(
            "  {:<24} {}{deg}  weight {}\n",
            a.label(k),
            if a.parity(k).is_odd() { "odd " } else { "even" },
            frame.weight_of(k)
        ));
    }
    let sections: Vec<Section> = if fx.layers.is_empty() {
        vec![("odd".into(), &fx.odd_weights, &fx.odd_summands)]
    } else {
        fx.layers
            .iter()
            .map(|l| (format!("layer {}", l.degree), &l.weights[..], &l.summands[..]))
            .collect()
    };
    for (name, ws, sm) in sections {
        s.push_str(&format!("{name} weights:\n"));
        for r in ws {
            s.push_str(&format!("  ({})  {}\n", r.weight.join(", "), r.vectors.join(", ")));
        }
        s.push_str(&format!("{name} irreducible summands: {}\n", sm.len()));
        for (i, m) in sm.iter().enumerate() {
            s.push_str(&format!("  [{}] dim {}: {}\n", i + 1, m.len(), m.join(", ")));
        }
    }
    Ok(s)
}
