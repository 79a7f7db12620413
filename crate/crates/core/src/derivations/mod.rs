//! The graded Lie algebras Der(T(H_n)) and Der(L_n).

mod assoc;
mod lie_der;
mod trace;

pub use assoc::{
    apply_assoc, assoc_basis, bracket_assoc, bracket_by_composition, contraction_c13, identity_derivation,
    section_s, AssocDerivation,
};
pub use lie_der::{apply_lie, bracket_lie_der, lie_der_basis, LieDerivation};
pub use trace::{monomials, phi_k, phi_k_index, phi_k_with, trace_tr_k, SymmetricMonomial};
