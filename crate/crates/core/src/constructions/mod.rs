//! The five 5-uniform families `G(ℓ,t)`, their layered versions `G(ℓ,q,t)`,
//! and the closed-form densities attached to them.
//!
//! Part `V_i` (0-based) is the contiguous id range `i*t .. (i+1)*t`. In the
//! layered graph block `p` consists of parts `p*ℓ .. (p+1)*ℓ`.

mod build;
mod closed_form;

pub use build::{attach_sparse, build_base, build_layered, lift_to_r, part_of, weighted_blowup};
pub use closed_form::{
    alpha, base_edge_count, boosted_density_holds, boosted_density_threshold, c0, condition7,
    condition7_lhs, edge_count_polynomial, layered_edge_count, n_of_ell, n_of_ell_q,
    BoostThreshold,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyChoice {
    #[serde(rename = "ALPHA")]
    Alpha,
    #[serde(rename = "COMPLEMENT")]
    Complement,
    #[serde(rename = "N12_125")]
    N12_125,
    #[serde(rename = "N96_625")]
    N96_625,
    #[serde(rename = "N252_625")]
    N252_625,
}

impl FamilyChoice {
    pub const ALL: [FamilyChoice; 5] = [
        FamilyChoice::Alpha,
        FamilyChoice::Complement,
        FamilyChoice::N12_125,
        FamilyChoice::N96_625,
        FamilyChoice::N252_625,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FamilyChoice::Alpha => "ALPHA",
            FamilyChoice::Complement => "COMPLEMENT",
            FamilyChoice::N12_125 => "N12_125",
            FamilyChoice::N96_625 => "N96_625",
            FamilyChoice::N252_625 => "N252_625",
        }
    }

    /// The three special families only exist on five parts.
    pub fn is_special(self) -> bool {
        !matches!(self, FamilyChoice::Alpha | FamilyChoice::Complement)
    }

    pub fn check_ell(self, ell: usize) -> Result<()> {
        if ell < 2 {
            return invalid(format!("ℓ must be at least 2, got {ell}"));
        }
        if self.is_special() && ell != 5 {
            return invalid(format!("{} requires ℓ = 5, got {ell}", self.tag()));
        }
        Ok(())
    }

    /// Multiplicity vectors `m ∈ N^ℓ` (`Σ m = 5`) describing the edge types:
    /// an edge of type `m` takes `m_i` vertices from part `V_i`.
    pub fn edge_types(self, ell: usize) -> Result<Vec<Vec<u32>>> {
        self.check_ell(ell)?;
        let types = match self {
            FamilyChoice::Alpha => compositions(ell, 5, 3),
            FamilyChoice::Complement => compositions(ell, 5, 4),
            FamilyChoice::N12_125 => vec![
                vec![1, 1, 1, 1, 1],
                vec![2, 1, 0, 1, 1],
                vec![0, 2, 1, 1, 1],
                vec![1, 0, 2, 1, 1],
            ],
            FamilyChoice::N96_625 => compositions(3, 3, 2)
                .into_iter()
                .map(|mut m| {
                    m.extend([1, 1]);
                    m
                })
                .collect(),
            FamilyChoice::N252_625 => compositions(4, 4, 3)
                .into_iter()
                .map(|mut m| {
                    m.push(1);
                    m
                })
                .collect(),
        };
        Ok(types)
    }
}

impl fmt::Display for FamilyChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FamilyChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace(['-', '/'], "_");
        match norm.as_str() {
            "ALPHA" => Ok(FamilyChoice::Alpha),
            "COMPLEMENT" => Ok(FamilyChoice::Complement),
            "N12_125" | "12_125" => Ok(FamilyChoice::N12_125),
            "N96_625" | "96_625" => Ok(FamilyChoice::N96_625),
            "N252_625" | "252_625" => Ok(FamilyChoice::N252_625),
            _ => Err(Error::InvalidInput(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub choice: FamilyChoice,
    pub ell: usize,
    pub q: usize,
    pub t: usize,
    pub r: usize,
}

impl ConstructionParams {
    pub fn new(choice: FamilyChoice, ell: usize, q: usize, t: usize, r: usize) -> Result<Self> {
        let p = ConstructionParams {
            choice,
            ell,
            q,
            t,
            r,
        };
        p.validate()?;
        Ok(p)
    }

    /// `q = 1`, `r = 5`.
    pub fn base(choice: FamilyChoice, ell: usize, t: usize) -> Result<Self> {
        Self::new(choice, ell, 1, t, 5)
    }

    pub fn validate(&self) -> Result<()> {
        self.choice.check_ell(self.ell)?;
        if self.q == 0 {
            return invalid("q must be at least 1");
        }
        if self.t == 0 {
            return invalid("t must be at least 1");
        }
        if self.r < 5 {
            return invalid(format!("r must be at least 5, got {}", self.r));
        }
        Ok(())
    }
}

/// All `m ∈ N^parts` with `Σ m = total` and every entry `≤ cap`, in
/// lexicographically decreasing order.
pub(crate) fn compositions(parts: usize, total: u32, cap: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == parts {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for m in (0..=left.min(cap)).rev() {
            cur.push(m);
            rec(parts, left - m, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, cap, &mut Vec::with_capacity(parts), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tags() {
        for c in FamilyChoice::ALL {
            assert_eq!(c.tag().parse::<FamilyChoice>().unwrap(), c);
            assert_eq!(
                serde_json::to_string(&c).unwrap(),
                format!("\"{}\"", c.tag())
            );
        }
        assert_eq!(
            "alpha".parse::<FamilyChoice>().unwrap(),
            FamilyChoice::Alpha
        );
        assert!("beta".parse::<FamilyChoice>().is_err());
    }

    #[test]
    fn special_families_need_five_parts() {
        assert!(ConstructionParams::base(FamilyChoice::N12_125, 4, 2).is_err());
        assert!(ConstructionParams::base(FamilyChoice::N12_125, 5, 2).is_ok());
        assert!(ConstructionParams::base(FamilyChoice::Alpha, 1, 2).is_err());
        assert!(ConstructionParams::new(FamilyChoice::Alpha, 3, 0, 2, 5).is_err());
        assert!(ConstructionParams::new(FamilyChoice::Alpha, 3, 1, 2, 4).is_err());
    }

    #[test]
    fn type_lists() {
        // profiles 11111, 2111, 221, 311, 32 on five parts
        let a5 = FamilyChoice::Alpha.edge_types(5).unwrap();
        assert_eq!(a5.len(), 1 + 20 + 30 + 30 + 20);
        assert_eq!(
            FamilyChoice::Alpha.edge_types(2).unwrap(),
            vec![vec![3, 2], vec![2, 3]]
        );
        assert_eq!(FamilyChoice::Complement.edge_types(2).unwrap().len(), 4);
        assert_eq!(FamilyChoice::N96_625.edge_types(5).unwrap().len(), 7);
        assert_eq!(FamilyChoice::N252_625.edge_types(5).unwrap().len(), 31);
        for c in FamilyChoice::ALL {
            let ell = if c.is_special() { 5 } else { 4 };
            for m in c.edge_types(ell).unwrap() {
                assert_eq!(m.len(), ell);
                assert_eq!(m.iter().sum::<u32>(), 5);
                assert!(m.iter().all(|&x| x < 5));
            }
        }
    }
}
