//! Knapp–Stein intertwiners on the K-isotypic components.

pub mod amatrix;
pub mod eigen;
pub mod reducibility;
pub mod subrep;

pub use amatrix::{a_matrix, AMatrix, Audit, Relation};
pub use eigen::{
    eigenvalue_mu, eigenvalue_mu_recursive, mult_one_eigenvalue, mult_one_scalar, EigenFamily, MultOneFamily,
    NormalizationChoice,
};
pub use reducibility::{
    classify, diagonal_orders, eigenvalue_table, reducibility, reducibility_scan, vanishing_orders, Label, Point,
    Reducibility, SlotOrder, VanishingOrders, Witness,
};
pub use subrep::{
    ladder_eigenvalue_reversed, ladder_reverse_value, special_subrep, Expectation, PatternMismatch, PatternReport,
    SpecialSubrep, SubrepName,
};
