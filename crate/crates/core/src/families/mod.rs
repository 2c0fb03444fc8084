//! Constructive tree families and their certificates.
//!
//! * [`r`]: trees grown from `P_2` by hanging matched pairs, side by side.
//! * [`corona`]: `H ∘ K_1` for a tree `H`.
//! * [`t`]: labelled trees grown from the labelled `P_6` by hanging
//!   further labelled `P_6` units at `B` vertices.
//! * [`u`]: trees grown from a star of order at least three by hanging
//!   stars at vertices that satisfy a condition on minimum super
//!   dominating sets.
//!
//! Each family offers a forward closure (every member up to an order) and
//! a recognizer that returns a [`FamilyCertificate`] which [`replay`]
//! turns back into a tree.

pub mod corona;
pub mod r;
pub mod t;
pub mod u;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, LabeledTree};
use crate::solvers::SolveError;
use crate::subdivision::SubdivisionError;

/// Largest order accepted by the forward closures.
pub const MAX_FAMILY_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Subdivision(#[from] SubdivisionError),
    #[error("step {index}: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("certificate is for family {found} but {expected} was requested")]
    WrongFamily { expected: Family, found: Family },
    #[error("vertex {0} does not have status B")]
    NotBVertex(usize),
    #[error("star order must be at least two, got {0}")]
    StarTooSmall(usize),
    #[error("operation precondition fails at vertex {0}")]
    PreconditionFails(usize),
    #[error("order {0} exceeds the family budget of {MAX_FAMILY_ORDER}")]
    Budget(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    R,
    #[serde(rename = "T_family")]
    T,
    #[serde(rename = "U_family")]
    U,
    Corona,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::R, Family::T, Family::U, Family::Corona];

    pub fn name(self) -> &'static str {
        match self {
            Family::R => "R",
            Family::T => "T_family",
            Family::U => "U_family",
            Family::Corona => "Corona",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(Family::R),
            "t" | "t_family" => Ok(Family::T),
            "u" | "u_family" => Ok(Family::U),
            "corona" => Ok(Family::Corona),
            _ => Err(format!("unknown family {s:?} (expected R, T_family, U_family or corona)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

/// Starting graph of a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Base {
    /// The edge `a_1 b_1` as vertices 0 and 1.
    P2,
    /// The path 0..5 labelled C, A, B, B, A, C.
    LabeledP6,
    /// Star with center 0 and leaves `1..order`.
    Star { order: usize },
    /// `H ∘ K_1` for the given inner tree.
    Corona { order: usize, edges: Vec<Edge> },
}

/// One construction step. New vertices always take the next free ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    /// Add `a_j = n`, `b_j = n + 1` and the edge from `anchor` to the new
    /// vertex on `side`. Even ids are `a` vertices, odd ids `b` vertices.
    Pair { anchor: usize, side: Side },
    /// Add the labelled path `n..n+5` and join `n + 2` to `anchor`.
    Path6 { anchor: usize },
    /// Add a star with center `n` and leaves `n+1..n+star_order`, and join
    /// the center to `anchor`.
    Star { anchor: usize, star_order: usize },
}

/// A replayable membership witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub family: Family,
    pub base: Base,
    pub steps: Vec<Step>,
}

impl FamilyCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn bad_step(index: usize, reason: impl Into<String>) -> FamilyError {
    FamilyError::InvalidStep {
        index,
        reason: reason.into(),
    }
}

/// Rebuilds the certified tree. Steps are validated against the family's
/// operation, including the star condition for the `U` family.
pub fn replay(cert: &FamilyCertificate) -> Result<Graph, FamilyError> {
    match cert.family {
        Family::R => r::replay(cert),
        Family::T => t::replay(cert).map(|lt| lt.into_parts().0),
        Family::U => u::replay(cert),
        Family::Corona => corona::replay(cert),
    }
}

/// Like [`replay`] for the `T` family, keeping the labels.
pub fn replay_labeled(cert: &FamilyCertificate) -> Result<LabeledTree, FamilyError> {
    t::replay(cert)
}

/// Every member with at most `n_max` vertices, keyed by canonical form.
pub fn enumerate_family(family: Family, n_max: usize) -> Result<BTreeMap<Vec<u8>, Graph>, FamilyError> {
    if n_max > MAX_FAMILY_ORDER {
        return Err(FamilyError::Budget(n_max));
    }
    match family {
        Family::R => r::closure(n_max),
        Family::T => Ok(t::closure(n_max)?
            .into_iter()
            .map(|(code, lt)| (code, lt.into_parts().0))
            .collect()),
        Family::U => u::closure(n_max),
        Family::Corona => corona::closure(n_max),
    }
}

/// Membership verdict from a recognizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub family: Family,
    pub member: bool,
    pub certificate: Option<FamilyCertificate>,
    /// Family-specific detail (inner graph, labels, the deciding value).
    pub detail: String,
}

/// Runs the recognizer for `family` on a tree.
pub fn recognize(family: Family, t: &Graph) -> Result<Recognition, FamilyError> {
    t.require_tree()?;
    match family {
        Family::R => r::recognize(t),
        Family::T => t::recognize(t).map(|rec| rec.into_recognition()),
        Family::U => u::recognize(t),
        Family::Corona => Ok(corona::recognize(t)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
            let json = serde_json::to_string(&f).unwrap();
            assert_eq!(json, format!("\"{}\"", f.name()));
        }
        assert_eq!("corona".parse::<Family>(), Ok(Family::Corona));
        assert!("Q".parse::<Family>().is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let cert = FamilyCertificate {
            family: Family::R,
            base: Base::P2,
            steps: vec![Step::Pair { anchor: 0, side: Side::A }],
        };
        let value: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
        assert_eq!(value["family"], "R");
        assert_eq!(value["base"]["kind"], "P2");
        assert_eq!(value["steps"][0]["op"], "pair");
        assert_eq!(value["steps"][0]["anchor"], 0);
        assert_eq!(value["steps"][0]["side"], "a");
        assert_eq!(FamilyCertificate::from_json(&cert.to_json()).unwrap(), cert);
    }

    #[test]
    fn closure_budget() {
        assert_eq!(enumerate_family(Family::R, 17), Err(FamilyError::Budget(17)));
    }
}
