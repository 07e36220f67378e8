//! The K-type structure of the degenerate principal series and the action of
//! the noncompact part of the Lie algebra between K-types.

pub mod basis;
pub mod ktype;
pub mod mmatrix;
pub mod oracle;
pub mod transition;
pub mod zeta;

pub use basis::{basis_v, basis_vp, d_coeff, ordered_basis, OrderedBasis, SlotKind};
pub use ktype::KType;
pub use mmatrix::{m_entry, m_matrices, rs_apply, Edge, Sign};
pub use oracle::rs_oracle;
pub use transition::{neighbours_out, transition_matrix, Param};
pub use zeta::{has_parity, parity_basis, w_action, ZetaVector};
