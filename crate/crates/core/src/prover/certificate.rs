use std::time::Duration;

use serde::Serialize;

use crate::cfinite::Annihilator;
use crate::lang::NormalForm;
use crate::ring::LaurentPoly;

/// Outcome of a proof attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Every leaf polynomial is identically zero.
    Proved,
    /// The leaf at `witness` is a nonzero polynomial.
    Refuted { witness: usize },
    Aborted { reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proved => "PROVED",
            Verdict::Refuted { .. } => "REFUTED",
            Verdict::Aborted { .. } => "ABORTED",
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }
}

/// Elimination of one index: the annihilator found for the current goal and
/// one subgoal per instantiation point `0 .. order`.
#[derive(Debug, Clone, Serialize)]
pub struct Elimination {
    pub index: String,
    pub order: usize,
    pub charpoly: String,
    #[serde(skip)]
    pub annihilator: Annihilator,
    pub subgoals: Vec<Subgoal>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Subgoal {
    pub value: i64,
    pub goal: String,
    #[serde(skip)]
    pub normal_form: NormalForm,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elimination: Option<Box<Elimination>>,
    /// Position in [`Certificate::leaves`] when no index is left.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaf: Option<usize>,
}

/// An index-free goal expanded into a polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct Leaf {
    pub at: String,
    #[serde(skip)]
    pub values: Vec<(String, i64)>,
    pub polynomial: String,
    #[serde(skip)]
    pub poly: LaurentPoly,
    pub zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub identity: String,
    pub elimination_order: Vec<String>,
    pub goal: String,
    pub elimination: Option<Elimination>,
    pub leaves: Vec<Leaf>,
    pub verdict: Verdict,
    /// Wall-clock milliseconds; left out of the JSON unless requested so that
    /// certificate files are byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Certificate {
    /// Pretty JSON; includes `ms` only when `with_timing` is set.
    pub fn to_json(&self, with_timing: bool) -> String {
        let mut c = self.clone();
        c.ms = with_timing.then_some(self.elapsed.as_millis() as u64);
        let mut s = serde_json::to_string_pretty(&c).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn witness(&self) -> Option<&Leaf> {
        match self.verdict {
            Verdict::Refuted { witness } => self.leaves.get(witness),
            _ => None,
        }
    }

    /// Largest annihilator order at each elimination depth.
    pub fn level_orders(&self) -> Vec<usize> {
        fn walk(e: &Elimination, depth: usize, out: &mut Vec<usize>) {
            if out.len() <= depth {
                out.push(0);
            }
            out[depth] = out[depth].max(e.order);
            for s in &e.subgoals {
                if let Some(child) = &s.elimination {
                    walk(child, depth + 1, out);
                }
            }
        }
        let mut out = Vec::new();
        if let Some(root) = &self.elimination {
            walk(root, 0, &mut out);
        }
        out
    }

    /// Every annihilator in the tree, in depth-first order.
    pub fn annihilators(&self) -> Vec<&Annihilator> {
        fn walk<'a>(e: &'a Elimination, out: &mut Vec<&'a Annihilator>) {
            out.push(&e.annihilator);
            for s in &e.subgoals {
                if let Some(child) = &s.elimination {
                    walk(child, out);
                }
            }
        }
        let mut out = Vec::new();
        if let Some(root) = &self.elimination {
            walk(root, &mut out);
        }
        out
    }
}
