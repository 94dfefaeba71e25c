//! Polynomial rings: a named variable list, with an optional bigrading for
//! forms on P^2 x P^2.

use std::fmt;
use std::sync::Arc;

/// A polynomial ring over Q, identified by its variable names. When
/// `block_split` is set, the first `block_split` variables form the first
/// factor of a product of projective spaces and bidegrees are meaningful.
#[derive(Clone, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
    block_split: Option<usize>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: Vec<S>) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.into_iter().map(Into::into).collect(),
            block_split: None,
        })
    }

    /// Ring with a bigrading: the first `split` variables against the rest.
    pub fn bigraded<S: Into<String>>(vars: Vec<S>, split: usize) -> Arc<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        assert!(split <= vars.len());
        Arc::new(Ring {
            vars,
            block_split: Some(split),
        })
    }

    /// z1..z6, the coordinates of P^5 carrying the S6 action.
    pub fn z6() -> Arc<Ring> {
        Ring::new(vec!["z1", "z2", "z3", "z4", "z5", "z6"])
    }

    /// z1..z5, the hyperplane chart with z6 eliminated.
    pub fn z5() -> Arc<Ring> {
        Ring::new(vec!["z1", "z2", "z3", "z4", "z5"])
    }

    /// x1..x3, a single P^2.
    pub fn x3() -> Arc<Ring> {
        Ring::new(vec!["x1", "x2", "x3"])
    }

    /// x1..x3, y1..y3 with the (p, q) bigrading of P^2 x P^2.
    pub fn xy() -> Arc<Ring> {
        Ring::bigraded(vec!["x1", "x2", "x3", "y1", "y2", "y3"], 3)
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn block_split(&self) -> Option<usize> {
        self.block_split
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(", "))
    }
}
