//! Exact representation theory of quantum sl2 on tensor products of
//! irreducibles `M_d`: generator actions, Clebsch–Gordan projections,
//! highest weight spaces, and the `R±` and cyclic `S` maps.
//!
//! Multi-indices are stored as `(l_1, ..., l_n)` where `l_i` indexes
//! `M_{d_i}`; the tensor product is written `M_{d_n} ⊗ ... ⊗ M_{d_1}`.

mod cg;
mod hwv;
pub mod linalg;
mod rmaps;
mod tensor;

pub use cg::{decomposition, embed, hwv_coeff, hwv_pair, project, submodule_vector, substitute, summand_index};
pub use hwv::{catalan, hwv_space_basis, is_hwv, is_trivial};
pub use rmaps::{cyclic_constant, r_minus, r_minus_inv, r_plus, r_plus_inv, s_operator};
pub use tensor::{act, act_pow, Gen, TensorSpace, TensorVector};
