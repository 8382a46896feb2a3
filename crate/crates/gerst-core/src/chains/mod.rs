//! Integer chain complexes, Smith normal form, and the cellular chains of formula complexes.

mod cells;
mod complex;
mod evaluate;
mod matrix;
mod snf;

pub use cells::{
    braid_check, braid_filling, braid_paths, brace_cell, brace_cup_left, brace_cup_right, cellular_complex,
    cellular_complex_unchecked, chain_map_defect, compose_cells, subcomplex_iprime, subdivision_orientation, CellChain,
    BRAID_CELLS, BRAID_PATHS, MAX_CELLULAR_TYPE,
};
pub use complex::{format_homology, same_homology, HomologyGroup, IntChainComplex};
pub use evaluate::{compose_evaluations, evaluate, evaluate_signed, evaluation_defect, evaluation_sign};
pub use matrix::SparseMatrix;
pub use snf::{invariant_factors, rank_mod_prime, smith_normal_form, SmithForm};

#[cfg(test)]
mod tests;
