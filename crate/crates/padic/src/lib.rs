//! Exact p-adic arithmetic and valuation trees of polynomial sequences.
//!
//! The crate computes p-adic valuations and absolute values of rational
//! numbers, truncated base-p digit expansions, rational-root factorizations
//! of polynomials, and root prefixes of integer polynomials in the p-adic
//! integers. On top of those it builds valuation trees: rooted p-ary trees
//! whose level-k nodes are the residue classes mod p^k, each annotated with
//! the valuation behavior of a polynomial sequence on that class. A node
//! whose terms all share one valuation is terminating and never splits; a
//! node containing two terms with different valuations is non-terminating
//! and splits into p children. Infinite descending chains of non-terminating
//! nodes trace out the digit expansions of p-adic integer roots of the
//! generating polynomial.
//!
//! Trees can be built three ways: analytically from a complete linear
//! factorization, empirically from valuation congruence certificates, or
//! partially for polynomials with a factor that has no rational roots. The
//! engines are independent, so their trees can be diffed against each other.

pub mod expansion;
pub mod poly;
pub mod tree;
pub mod valuation;
pub mod zp_roots;

pub use expansion::{
    congruence_order, digits_from_zero, expand, is_padic_integer, truncation_value, DigitExpansion,
    ExpansionError,
};
pub use poly::{
    factor_rational, parse, FactorError, FactoredPolynomial, LinearFactor, ParseError, Polynomial,
};
pub use tree::{
    build_analytic_tree, build_empirical_tree, build_partial_tree, classify_node_empirical,
    classify_node_linear, diff_trees, infinite_branch_count, Engine, NodeId, NodeInfo, NodeStatus,
    TreeDiff, TreeError, ValuationTree,
};
pub use valuation::{
    padic_abs, valuation_int, valuation_rat, Prime, PrimeError, Rational, Valuation,
};
pub use zp_roots::{
    extend_certified, roots_mod_pk, roots_mod_pk_with, zp_root_prefixes, zp_root_prefixes_with,
    LiftConfig, LiftError, RootPrefix,
};
