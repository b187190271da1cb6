//! Multidimensional bilateral Jackson integrals over `Z^n`.
//!
//! Summands are assembled per lattice site from per-axis and per-pair
//! factors. Each factor depends on a single index (`nu_i`, `nu_l - nu_k` or
//! `nu_j + nu_k`) and is computed once from scratch and cached for the
//! lifetime of one evaluation. All powers of a coordinate are merged into one
//! exponent and evaluated with a single principal power.

mod atype;
mod bctype;
mod shells;

pub use atype::{
    aomoto_constant, aomoto_product, atype_alternating_sum, atype_lattice, atype_m2_xi_family, atype_sum,
    atype_summand, da_spec_params, mg_constant, mg_product, selberg_spec_xi, ATypeParams,
};
pub use bctype::{bctype_lattice, bctype_sum, bctype_summand, BCTypeParams};
pub use shells::{LatticeSum, LatticeWindow};
