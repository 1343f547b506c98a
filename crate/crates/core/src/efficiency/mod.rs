//! Information efficiency `δ(f(x)) = I(f(x)) - I(x)` of arithmetic
//! expressions and polynomial functions, Monte Carlo classification under
//! maximal entropy, diophantine solution densities, and the symbolic
//! calculus of the small infinity `ℵ₋₁`.

pub mod aleph;
pub mod diophantine;
pub mod expr;
pub mod montecarlo;
pub mod poly;

use num_traits::Zero;

use crate::arith::{delta_info, info_ratio, BigNat};
use crate::error::{Error, Result};

pub use aleph::AlephTerm;
pub use expr::{delta_tree, DeltaReport, Env, Expr};
pub use montecarlo::{classify_polynomial, sample_typical_set, Classification, PolyClass, TrendRow};
pub use poly::{delta_poly, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Mul,
}

impl BinaryOp {
    pub fn apply(self, a: &BigNat, b: &BigNat) -> BigNat {
        match self {
            BinaryOp::Add => a + b,
            BinaryOp::Mul => a * b,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Mul => '*',
        }
    }
}

/// Efficiency of one binary operation.
///
/// With `same_operand` the two children are one and the same input, so
/// only one operand's information is charged: `I(a ∘ a) - I(a)`.
pub fn delta_node(op: BinaryOp, a: &BigNat, b: &BigNat, same_operand: bool) -> Result<f64> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroOperand);
    }
    if same_operand {
        if a != b {
            return Err(Error::InvalidArgument("same-operand node with different values".into()));
        }
        return Ok(info_ratio(&op.apply(a, a), a).bits());
    }
    Ok(delta_info(&op.apply(a, b), [a, b]).bits())
}

/// `|δ((x+y)+z) - δ(x+(y+z))|` at the outer node, i.e.
/// `|I(x) + I(y+z) - I(x+y) - I(z)|`.
pub fn nonassoc_gap(x: &BigNat, y: &BigNat, z: &BigNat) -> Result<f64> {
    if x.is_zero() || y.is_zero() || z.is_zero() {
        return Err(Error::ZeroOperand);
    }
    let yz = y + z;
    let xy = x + y;
    Ok(info_ratio(&(x * yz), &(xy * z)).bits().abs())
}

/// Inputs whose grouping gap exceeds `c` bits: `x = y = 2^⌈c+2⌉, z = 1`.
pub fn nonassoc_witness(c: f64) -> (BigNat, BigNat, BigNat) {
    let t = (c + 2.0).ceil().max(1.0) as u32;
    let x = BigNat::from(1u32) << t;
    (x.clone(), x, BigNat::from(1u32))
}
