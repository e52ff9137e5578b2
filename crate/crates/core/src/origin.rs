//! Structural origin tags.
//!
//! Two lazily evaluated values with equal origins were produced by the same
//! constructor from the same operands, so they are pointwise identical. This
//! is the only positive evidence of equality the library ever uses.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Origin {
    /// Built from caller-supplied code; equal only to its own clones.
    Opaque(u64),
    /// The embedding of a rational.
    Embed(Rational),
    Node {
        op: &'static str,
        params: Vec<Rational>,
        args: Vec<Origin>,
    },
}

static NEXT_OPAQUE: AtomicU64 = AtomicU64::new(0);

impl Origin {
    pub fn fresh() -> Self {
        Origin::Opaque(NEXT_OPAQUE.fetch_add(1, Ordering::Relaxed))
    }

    pub fn node(op: &'static str, params: Vec<Rational>, args: Vec<Origin>) -> Self {
        Origin::Node { op, params, args }
    }

    /// Node for a commutative pointwise operation; operand order is erased.
    pub fn commutative(op: &'static str, a: &Origin, b: &Origin) -> Self {
        let mut args = vec![a.clone(), b.clone()];
        args.sort();
        Origin::Node {
            op,
            params: Vec::new(),
            args,
        }
    }
}
