//! Family selectors, parameter constraints and the builder dispatch.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::algebra::SuperAlgebra;
use crate::error::{Error, Result};
use crate::{cartan, classical};

/// One of the in-scope simple Lie superalgebra families with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A { m: u32, n: u32 },
    B { m: u32, n: u32 },
    C { n: u32 },
    D { m: u32, n: u32 },
    P { n: u32 },
    Q { n: u32 },
    W { n: u32 },
    S { n: u32 },
    /// The deformed `S~(2m)`; the parameter stored is `2m`.
    STilde { two_m: u32 },
    H { n: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Classical,
    Cartan,
}

impl Family {
    pub fn kind(&self) -> FamilyKind {
        match self {
            Family::W { .. } | Family::S { .. } | Family::STilde { .. } | Family::H { .. } => {
                FamilyKind::Cartan
            }
            _ => FamilyKind::Classical,
        }
    }

    pub fn letter(&self) -> &'static str {
        match self {
            Family::A { .. } => "A",
            Family::B { .. } => "B",
            Family::C { .. } => "C",
            Family::D { .. } => "D",
            Family::P { .. } => "P",
            Family::Q { .. } => "Q",
            Family::W { .. } => "W",
            Family::S { .. } => "S",
            Family::STilde { .. } => "St",
            Family::H { .. } => "H",
        }
    }

    pub fn params(&self) -> Vec<u32> {
        match *self {
            Family::A { m, n } | Family::B { m, n } | Family::D { m, n } => vec![m, n],
            Family::C { n }
            | Family::P { n }
            | Family::Q { n }
            | Family::W { n }
            | Family::S { n }
            | Family::H { n } => vec![n],
            Family::STilde { two_m } => vec![two_m],
        }
    }

    /// Selector string accepted by [`Family::from_str`], e.g. `"A 1 1"`.
    pub fn selector(&self) -> String {
        let mut s = self.letter().to_string();
        for p in self.params() {
            s.push(' ');
            s.push_str(&p.to_string());
        }
        s
    }

    /// Parses a letter and decimal parameters, enforcing the family's
    /// parameter constraints.
    pub fn parse(letter: &str, params: &[u32]) -> Result<Family> {
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::Usage(format!(
                    "family {letter} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let f = match letter {
            "A" => {
                arity(2)?;
                Family::A { m: params[0], n: params[1] }
            }
            "B" => {
                arity(2)?;
                Family::B { m: params[0], n: params[1] }
            }
            "C" => {
                arity(1)?;
                Family::C { n: params[0] }
            }
            "D" => {
                arity(2)?;
                Family::D { m: params[0], n: params[1] }
            }
            "P" => {
                arity(1)?;
                Family::P { n: params[0] }
            }
            "Q" => {
                arity(1)?;
                Family::Q { n: params[0] }
            }
            "W" => {
                arity(1)?;
                Family::W { n: params[0] }
            }
            "S" => {
                arity(1)?;
                Family::S { n: params[0] }
            }
            "St" | "S~" => {
                arity(1)?;
                Family::STilde { two_m: params[0] }
            }
            "H" => {
                arity(1)?;
                Family::H { n: params[0] }
            }
            other => {
                return Err(Error::Usage(format!(
                    "unknown family `{other}` (expected one of A B C D P Q W S St H)"
                )))
            }
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Usage(format!("{}: {why}", self.selector())));
        match *self {
            Family::A { m, n } if m == 0 && n == 0 => bad("A(m,n) needs m + n >= 1"),
            Family::B { n: 0, .. } => bad("B(m,n) needs n > 0"),
            Family::C { n } if n < 2 => bad("C(n) needs n >= 2"),
            Family::D { m, .. } if m < 2 => bad("D(m,n) needs m >= 2"),
            Family::D { n: 0, .. } => bad("D(m,n) needs n > 0"),
            Family::P { n } if n < 2 => bad("P(n) needs n >= 2"),
            Family::Q { n } if n < 2 => bad("Q(n) needs n >= 2"),
            Family::W { n } if n < 3 => bad("W(n) needs n >= 3"),
            Family::S { n } if n < 4 => bad("S(n) needs n >= 4"),
            Family::STilde { two_m } if two_m < 4 || two_m % 2 != 0 => {
                bad("St(2m) needs an even parameter 2m with m >= 2")
            }
            Family::H { n } if n < 5 => bad("H(n) needs n >= 5"),
            _ => Ok(()),
        }
    }

    /// Closed-form dimension of the family member.
    pub fn expected_dim(&self) -> usize {
        let sq = |x: u32| (x as usize) * (x as usize);
        match *self {
            Family::A { m, n } if m == n => sq(2 * n + 2) - 2,
            Family::A { m, n } => sq(m + n + 2) - 1,
            Family::B { m, n } => osp_dim(2 * m + 1, n),
            Family::C { n } => osp_dim(2, n - 1),
            Family::D { m, n } => osp_dim(2 * m, n),
            Family::P { n } => 2 * sq(n + 1) - 1,
            Family::Q { n } => 2 * sq(n + 1) - 2,
            Family::W { n } => (n as usize) << n,
            Family::S { n } | Family::STilde { two_m: n } => (n as usize - 1) * (1usize << n) + 1,
            Family::H { n } => (1usize << n) - 2,
        }
    }

    pub fn build(&self) -> Result<SuperAlgebra> {
        self.validate()?;
        let alg = match *self {
            Family::A { m, n } => classical::build_a(m as usize, n as usize)?,
            Family::B { m, n } => classical::build_osp(2 * m as usize + 1, 2 * n as usize)?,
            Family::C { n } => classical::build_osp(2, 2 * (n as usize - 1))?,
            Family::D { m, n } => classical::build_osp(2 * m as usize, 2 * n as usize)?,
            Family::P { n } => classical::build_p(n as usize)?,
            Family::Q { n } => classical::build_q(n as usize)?,
            Family::W { n } => cartan::build_w(n as usize)?,
            Family::S { n } => cartan::build_s(n as usize)?,
            Family::STilde { two_m } => cartan::build_s_tilde(two_m as usize)?,
            Family::H { n } => cartan::build_h(n as usize)?,
        };
        let mut alg = alg.with_family(*self);
        alg.set_name(&self.to_string());
        Ok(alg)
    }

    /// The desk-scale certification matrix.
    pub fn default_suite() -> Vec<Family> {
        vec![
            Family::A { m: 1, n: 0 },
            Family::A { m: 2, n: 1 },
            Family::A { m: 1, n: 1 },
            Family::B { m: 0, n: 1 },
            Family::B { m: 1, n: 1 },
            Family::C { n: 2 },
            Family::D { m: 2, n: 1 },
            Family::P { n: 2 },
            Family::P { n: 3 },
            Family::Q { n: 2 },
            Family::Q { n: 3 },
            Family::W { n: 3 },
            Family::W { n: 4 },
            Family::S { n: 4 },
            Family::STilde { two_m: 4 },
            Family::H { n: 5 },
            Family::H { n: 6 },
        ]
    }
}

fn osp_dim(m: u32, n: u32) -> usize {
    let (m, n) = (m as usize, n as usize);
    m * (m - 1) / 2 + n * (2 * n + 1) + 2 * m * n
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params().iter().map(u32::to_string).collect();
        write!(f, "{}({})", self.letter(), ps.join(","))
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `"A 1 1"`, `"St 4"`, or the display form `"A(1,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .map(|c| if c == '(' || c == ')' || c == ',' { ' ' } else { c })
            .collect();
        let mut it = cleaned.split_whitespace();
        let letter = it.next().ok_or_else(|| Error::Usage("empty family selector".into()))?;
        let params = it
            .map(|p| {
                p.parse::<u32>()
                    .map_err(|_| Error::Usage(format!("parameter `{p}` is not a decimal count")))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::parse(letter, &params)
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One line of the family catalog.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub selector: &'static str,
    pub kind: FamilyKind,
    pub constraint: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    use FamilyKind::*;
    let e = |selector, kind, constraint| CatalogEntry {
        selector,
        kind,
        constraint,
    };
    vec![
        e("A m n", Classical, "m, n >= 0, not both 0; m == n builds the quotient A(n,n)"),
        e("B m n", Classical, "m >= 0, n > 0"),
        e("C n", Classical, "n >= 2"),
        e("D m n", Classical, "m >= 2, n > 0"),
        e("P n", Classical, "n >= 2"),
        e("Q n", Classical, "n >= 2"),
        e("W n", Cartan, "n >= 3"),
        e("S n", Cartan, "n >= 4"),
        e("St 2m", Cartan, "m >= 2 (parameter is the even number 2m)"),
        e("H n", Cartan, "n >= 5"),
    ]
}

pub const OUT_OF_SCOPE_NOTE: &str =
    "not supported: D(2,1;alpha), G(3), F(4) (no explicit realization is provided)";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_round_trip() {
        for f in Family::default_suite() {
            assert_eq!(f.selector().parse::<Family>().unwrap(), f);
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn constraints_enforced() {
        for bad in ["D 1 1", "C 1", "P 1", "Q 1", "W 2", "S 3", "St 3", "St 2", "H 4", "B 1 0", "A 0 0"] {
            assert!(matches!(bad.parse::<Family>(), Err(Error::Usage(_))), "{bad}");
        }
        assert!("X 1".parse::<Family>().is_err());
        assert!("A 1".parse::<Family>().is_err());
        assert!("A 1 x".parse::<Family>().is_err());
    }

    #[test]
    fn closed_form_dims() {
        let dims: Vec<usize> = Family::default_suite().iter().map(Family::expected_dim).collect();
        assert_eq!(dims, vec![8, 24, 14, 5, 12, 8, 17, 17, 31, 16, 30, 24, 64, 49, 49, 30, 62]);
    }
}
