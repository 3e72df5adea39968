//! Truncated mapping cone diagrams for integer surgery and the graded
//! homology engines that evaluate them.

mod diagram;
mod dinv;
mod hat;
mod plus;

pub use diagram::{build_truncated_cone, ConeDiagram, ConeError, PlusCone};
pub use dinv::d_invariant_large;
pub use hat::{closed_form_hat_dims, hat_dims, HatTable};
pub use plus::{
    check_hf, check_hf_counting, check_hf_direct, hf_plus, hf_plus_closed, hf_plus_direct,
    z_gradings, CheckClass, CheckTable, PlusTable, ZClass, ZElement,
};

use crate::knotio::BifilteredComplex;
use crate::staircase::StaircaseKnot;

/// A knot in the computational form the cone engines consume.
#[derive(Clone, Debug)]
pub enum Knot {
    /// An L-space knot via its staircase model: all flavors available.
    Staircase(StaircaseKnot),
    /// A general bifiltered complex: hat flavor only.
    Complex(BifilteredComplex),
}

impl Knot {
    pub fn genus(&self) -> i64 {
        match self {
            Knot::Staircase(k) => k.genus(),
            Knot::Complex(c) => c.genus(),
        }
    }
}
