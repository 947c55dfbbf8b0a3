//! Combinatorics of T-pairs: compatible quadruples, the maps between their
//! classes, TP-chains, and the chain expansion of `J^{-1} R_st J^{21}`.

mod chain;
mod lemmas;
mod maps;
mod partition;
mod quadruple;
mod resolve;

pub use chain::{
    chain_weight, chains_of_shape, diagonal_part, expand_jrj, expand_with, outer_chains, outer_chains_with, Convention,
    ExponentSign, TPChain, DEFAULT_CHAIN_LIMIT,
};
pub use lemmas::{
    chain_scans, quadruple_scans, scan_ail, scan_ail2, scan_bijections, scan_bps, scan_constant_class, scan_ctc,
    scan_ds, scan_eps_direct, scan_onp, scan_orientation, scan_passing, scan_pg1, scan_pmol, scan_rcl,
    scan_reversal_pattern,
};
pub use maps::{
    chain_phi, chain_phi_prime, chain_psi_left, chain_psi_minus, chain_psi_plus, chain_psi_prime, chain_psi_right,
    is_half_passed, is_left_passed, is_reversed, is_reversed_minus, is_reversed_plus, is_right_passed, is_special,
    is_special_minus, is_special_plus, is_two_one, special_of, ChainImages,
};
pub use partition::{
    partition_blocks, partition_check, partition_check_with, singleton_sum, Block, BlockKind, ChainSet,
};
pub use quadruple::{
    all_quadruples, classify_quadruple, compatible, divides, eps_combinatorial, in_passing_domain, phi, product_q, psi,
    psi_l, psi_r, psi_side, s_one, s_q, twist_sum, PhiImage, Quadruple, SignClass, Trend,
};
pub use resolve::{resolve_conventions, ConventionTally, Resolution, DEFAULT_RESOLVER_MAX_N};
