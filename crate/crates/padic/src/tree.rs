//! Valuation trees of polynomial sequences.
//!
//! The level-k nodes of a tree are the residue classes mod p^k. A node is
//! Terminating(v) when every sequence term in its class has valuation exactly
//! v, NonTerminating when two terms differ, and Unresolved when the builder's
//! certificates cannot decide within its depth budget. Terminating nodes
//! never split; the others materialize their p children until the requested
//! depth.
//!
//! Three builders produce these trees. The analytic engine classifies nodes
//! of completely factored polynomials by comparing node digits with the digit
//! expansions of the factor roots. The empirical engine proves statuses from
//! valuation congruences of the shifted polynomial and from explicit witness
//! pairs. The partial engine combines both for polynomials whose residual
//! factor has no rational roots, using certified lifted root prefixes where
//! the analytic argument needs a root.

use crate::expansion::{digits_from_zero, is_padic_integer, truncation_value};
use crate::poly::{factor_rational, FactoredPolynomial, LinearFactor, Polynomial};
use crate::valuation::{valuation_rat, Prime, Rational, Valuation};
use crate::zp_roots::{extend_certified, zp_root_prefixes, LiftError};
use num_bigint::BigInt;
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("the zero polynomial has no valuation tree")]
    ZeroPolynomial,
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("analytic construction requires a completely factored polynomial")]
    ResidualNotConstant,
    #[error("factor root {root} is not a {prime}-adic integer")]
    NonPadicRoot { root: Rational, prime: Prime },
    #[error("trees were built for different primes: {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// A residue class mod p^k, identified by the base-p digits of its smallest
/// member: digits d_0..d_{k-1} name the class {d_0 + d_1·p + ... + n·p^k}.
/// The empty digit list is the root node (all of the nonnegative integers).
///
/// Ordering is by (level, digits, prime), the document order of renderers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeId {
    prime: Prime,
    digits: Vec<u64>,
}

impl NodeId {
    pub fn root(prime: Prime) -> NodeId {
        NodeId {
            prime,
            digits: Vec::new(),
        }
    }

    /// Panics if a digit is p or larger.
    pub fn new(prime: Prime, digits: Vec<u64>) -> NodeId {
        assert!(
            digits.iter().all(|&d| d < prime.get()),
            "digit out of range for prime {prime}"
        );
        NodeId { prime, digits }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn level(&self) -> usize {
        self.digits.len()
    }

    pub fn child(&self, digit: u64) -> NodeId {
        assert!(digit < self.prime.get(), "digit out of range");
        let mut digits = self.digits.clone();
        digits.push(digit);
        NodeId {
            prime: self.prime,
            digits,
        }
    }

    pub fn parent(&self) -> Option<NodeId> {
        if self.digits.is_empty() {
            return None;
        }
        Some(NodeId {
            prime: self.prime,
            digits: self.digits[..self.digits.len() - 1].to_vec(),
        })
    }

    /// The smallest member of the class, sum of d_j·p^j.
    pub fn value(&self) -> BigInt {
        truncation_value(&self.digits, self.prime)
    }
}

impl Ord for NodeId {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.digits.len(), &self.digits, self.prime.get()).cmp(&(
            other.digits.len(),
            &other.digits,
            other.prime.get(),
        ))
    }
}

impl PartialOrd for NodeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// The valuation behavior of a sequence on one residue class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    /// Every term in the class has this valuation.
    Terminating(Valuation),
    /// Two terms in the class have different valuations.
    NonTerminating,
    /// Not decided within the certificate budget; only empirical and partial
    /// trees contain these.
    Unresolved,
}

impl fmt::Display for NodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeStatus::Terminating(v) => write!(f, "{v}"),
            NodeStatus::NonTerminating => write!(f, "*"),
            NodeStatus::Unresolved => write!(f, "?"),
        }
    }
}

/// A node's status together with the evidence for non-termination when the
/// classification found one: a pair of class members whose terms have
/// different valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeInfo {
    pub status: NodeStatus,
    pub witness: Option<(BigInt, BigInt)>,
}

impl NodeInfo {
    fn plain(status: NodeStatus) -> NodeInfo {
        NodeInfo {
            status,
            witness: None,
        }
    }
}

/// Which construction produced a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Analytic,
    Empirical,
    Partial,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Engine::Analytic => write!(f, "analytic"),
            Engine::Empirical => write!(f, "empirical"),
            Engine::Partial => write!(f, "partial"),
        }
    }
}

/// A rooted p-ary tree of classified residue classes. The map holds the root
/// and, for every NonTerminating or Unresolved node above the depth, all p of
/// its children; terminating nodes never split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationTree {
    prime: Prime,
    depth: usize,
    generator: String,
    engine: Engine,
    nodes: BTreeMap<NodeId, NodeInfo>,
}

impl ValuationTree {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Text form of the polynomial the tree was built from.
    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn nodes(&self) -> &BTreeMap<NodeId, NodeInfo> {
        &self.nodes
    }

    pub fn get(&self, id: &NodeId) -> Option<&NodeInfo> {
        self.nodes.get(id)
    }

    pub fn status(&self, id: &NodeId) -> Option<NodeStatus> {
        self.nodes.get(id).map(|info| info.status)
    }

    /// Ids of the non-terminating leaves at the tree's depth.
    pub fn open_leaves(&self) -> Vec<&NodeId> {
        self.nodes
            .iter()
            .filter(|(id, info)| {
                id.level() == self.depth && info.status == NodeStatus::NonTerminating
            })
            .map(|(id, _)| id)
            .collect()
    }
}

fn check_depth(depth: usize) -> Result<(), TreeError> {
    if depth == 0 {
        return Err(TreeError::ZeroDepth);
    }
    Ok(())
}

/// The smallest index where two digit strings differ, or None when the first
/// `len` positions agree.
fn divergence(node: &[u64], root: &[u64]) -> Option<usize> {
    node.iter().zip(root).position(|(a, b)| a != b)
}

/// The linear factors whose roots are p-adic integers, with each root's
/// digits to the requested length. Factors with roots outside Z_p contribute
/// valuation 0 on every class and are dropped by the callers.
fn padic_root_digits(
    factors: &[LinearFactor],
    p: Prime,
    len: usize,
) -> Vec<(LinearFactor, Vec<u64>)> {
    factors
        .iter()
        .filter(|f| is_padic_integer(&f.root(), p))
        .map(|f| {
            let digits = digits_from_zero(&f.root(), p, len).expect("root in Z_p");
            (f.clone(), digits)
        })
        .collect()
}

/// Classifies one node of a product of a nonzero rational constant and
/// linear factors whose roots all lie in Z_p. For each factor take the first
/// index where the node digits leave the root's digits; if some factor never
/// diverges the class hugs that root and is NonTerminating, otherwise the
/// valuation is pinned to nu_p(constant) plus the sum of divergence indices.
pub fn classify_node_linear(
    node: &NodeId,
    constant: &Rational,
    factors: &[LinearFactor],
) -> Result<NodeStatus, TreeError> {
    let p = node.prime();
    if constant.is_zero() {
        return Err(TreeError::ZeroPolynomial);
    }
    for factor in factors {
        let root = factor.root();
        if !is_padic_integer(&root, p) {
            return Err(TreeError::NonPadicRoot { root, prime: p });
        }
    }
    let roots = padic_root_digits(factors, p, node.level());
    let nu_c = valuation_rat(constant, p)
        .finite()
        .expect("nonzero constant");
    Ok(classify_linear_digits(node.digits(), &roots, nu_c))
}

fn classify_linear_digits(
    node_digits: &[u64],
    roots: &[(LinearFactor, Vec<u64>)],
    nu_c: i64,
) -> NodeStatus {
    let mut total = nu_c;
    for (_, root_digits) in roots {
        match divergence(node_digits, root_digits) {
            Some(j) => total += j as i64,
            None => return NodeStatus::NonTerminating,
        }
    }
    NodeStatus::Terminating(Valuation::Finite(total))
}

/// Grows a tree root-down: `classify` decides each node, and NonTerminating
/// or Unresolved nodes above the depth enqueue their p children.
fn grow_tree<F>(p: Prime, depth: usize, mut classify: F) -> BTreeMap<NodeId, NodeInfo>
where
    F: FnMut(&NodeId) -> NodeInfo,
{
    let mut nodes = BTreeMap::new();
    let mut queue = vec![NodeId::root(p)];
    while let Some(id) = queue.pop() {
        let info = classify(&id);
        let splits = matches!(
            info.status,
            NodeStatus::NonTerminating | NodeStatus::Unresolved
        );
        if splits && id.level() < depth {
            for d in 0..p.get() {
                queue.push(id.child(d));
            }
        }
        nodes.insert(id, info);
    }
    nodes
}

/// Builds the exact tree of a completely factored polynomial. Factors whose
/// roots lie outside Z_p are dropped (they have valuation 0 everywhere); if
/// none remain the tree is a single terminating root with the constant's
/// valuation.
pub fn build_analytic_tree(
    f: &FactoredPolynomial,
    p: Prime,
    depth: usize,
) -> Result<ValuationTree, TreeError> {
    Ok(analytic_inner(f, p, depth, Engine::Analytic)?)
}

fn analytic_inner(
    f: &FactoredPolynomial,
    p: Prime,
    depth: usize,
    engine: Engine,
) -> Result<ValuationTree, TreeError> {
    if f.is_zero() {
        return Err(TreeError::ZeroPolynomial);
    }
    if !f.is_completely_factored() {
        return Err(TreeError::ResidualNotConstant);
    }
    check_depth(depth)?;
    let nu_c = valuation_rat(f.constant(), p)
        .finite()
        .expect("nonzero constant");
    let roots = padic_root_digits(f.linear_factors(), p, depth);
    let nodes = grow_tree(p, depth, |id| {
        NodeInfo::plain(classify_linear_digits(id.digits(), &roots, nu_c))
    });
    Ok(ValuationTree {
        prime: p,
        depth,
        generator: f.to_string(),
        engine,
        nodes,
    })
}

/// The number of infinite branches a completely factored polynomial's tree
/// develops: one per distinct root in Z_p.
pub fn infinite_branch_count(f: &FactoredPolynomial, p: Prime) -> Result<usize, TreeError> {
    if f.is_zero() {
        return Err(TreeError::ZeroPolynomial);
    }
    if !f.is_completely_factored() {
        return Err(TreeError::ResidualNotConstant);
    }
    let distinct: BTreeSet<Rational> = f
        .linear_factors()
        .iter()
        .map(LinearFactor::root)
        .filter(|r| is_padic_integer(r, p))
        .collect();
    Ok(distinct.len())
}

/// Shared machinery of the empirical certificates: the polynomial with
/// denominators cleared, the valuation shift that clearing introduced, and
/// the probe hints.
struct EmpiricalContext {
    p: Prime,
    cleared: Polynomial,
    shift: i64,
    zp_roots: Vec<Rational>,
}

impl EmpiricalContext {
    fn new(f: &Polynomial, p: Prime) -> EmpiricalContext {
        let (d, coeffs) = f.clear_denominators();
        let cleared = Polynomial::new(coeffs.into_iter().map(Rational::from).collect());
        let shift = valuation_rat(&Rational::from(d), p)
            .finite()
            .expect("nonzero denominator lcm");
        let zp_roots = match factor_rational(f) {
            Ok(factored) => factored
                .linear_factors()
                .iter()
                .map(LinearFactor::root)
                .filter(|r| is_padic_integer(r, p))
                .collect(),
            Err(_) => Vec::new(),
        };
        EmpiricalContext {
            p,
            cleared,
            shift,
            zp_roots,
        }
    }

    /// Deterministic members of the class c mod p^k to compare valuations at:
    /// c + t·p^k for t in {0, 1, 2, p, p+1}, plus the truncations of the
    /// rational Z_p roots one and two digits below the node when they lie in
    /// the class. The truncations supply members close to a root, where
    /// valuations visibly spike.
    fn probe_members(&self, c: &BigInt, k: usize) -> Vec<BigInt> {
        let pk = self.p.power(k);
        let mut members = BTreeSet::new();
        for t in [0u64, 1, 2, self.p.get(), self.p.get() + 1] {
            members.insert(c + &pk * BigInt::from(t));
        }
        for root in &self.zp_roots {
            for extra in [1usize, 2] {
                let digits = digits_from_zero(root, self.p, k + extra).expect("root in Z_p");
                let trunc = truncation_value(&digits, self.p);
                if (&trunc - c) % &pk == BigInt::from(0) {
                    members.insert(trunc);
                }
            }
        }
        members.into_iter().collect()
    }

    /// The classification certificates, tried in order.
    ///
    /// Termination: write G(m) = F(c + p^k·m). When the constant coefficient
    /// has finite valuation w and every other coefficient has strictly larger
    /// valuation, every term of the class has valuation exactly w.
    ///
    /// Non-termination: two probe members with different valuations are kept
    /// as the witness pair.
    ///
    /// Otherwise recurse into the p children while extra depth remains: a
    /// non-terminating child or two children pinned to different valuations
    /// settle the parent, and p children pinned to the same valuation pin the
    /// parent to it.
    fn classify(&self, c: &BigInt, k: usize, extra_left: usize) -> NodeInfo {
        let pk = self.p.power(k);
        let shifted = self
            .cleared
            .compose_affine(&Rational::from(c.clone()), &Rational::from(pk.clone()));
        let coeffs = shifted.coeffs();
        let w0 = valuation_rat(&coeffs[0], self.p);
        if let Valuation::Finite(w) = w0 {
            let pinned = coeffs[1..].iter().all(|g| valuation_rat(g, self.p) > w0);
            if pinned {
                return NodeInfo::plain(NodeStatus::Terminating(Valuation::Finite(w - self.shift)));
            }
        }

        let members = self.probe_members(c, k);
        let values: Vec<Valuation> = members
            .iter()
            .map(|m| valuation_rat(&self.cleared.evaluate(&Rational::from(m.clone())), self.p))
            .collect();
        if let Some(j) = values.iter().position(|v| *v != values[0]) {
            return NodeInfo {
                status: NodeStatus::NonTerminating,
                witness: Some((members[0].clone(), members[j].clone())),
            };
        }

        if extra_left == 0 {
            return NodeInfo::plain(NodeStatus::Unresolved);
        }
        let mut pinned: Option<(Valuation, BigInt)> = None;
        let mut unresolved = false;
        for d in 0..self.p.get() {
            let child_c = c + &pk * BigInt::from(d);
            let child = self.classify(&child_c, k + 1, extra_left - 1);
            match child.status {
                NodeStatus::NonTerminating => {
                    return NodeInfo {
                        status: NodeStatus::NonTerminating,
                        witness: child.witness,
                    };
                }
                NodeStatus::Terminating(v) => match &pinned {
                    Some((seen, member)) if *seen != v => {
                        return NodeInfo {
                            status: NodeStatus::NonTerminating,
                            witness: Some((member.clone(), child_c)),
                        };
                    }
                    Some(_) => {}
                    None => pinned = Some((v, child_c)),
                },
                NodeStatus::Unresolved => unresolved = true,
            }
        }
        match pinned {
            Some((v, _)) if !unresolved => NodeInfo::plain(NodeStatus::Terminating(v)),
            _ => NodeInfo::plain(NodeStatus::Unresolved),
        }
    }
}

/// Classifies one residue class of an arbitrary nonzero polynomial from
/// valuation congruences alone, descending at most `max_extra_depth` levels
/// below the node to decide it.
pub fn classify_node_empirical(
    f: &Polynomial,
    node: &NodeId,
    max_extra_depth: usize,
) -> Result<NodeInfo, TreeError> {
    if f.is_zero() {
        return Err(TreeError::ZeroPolynomial);
    }
    let ctx = EmpiricalContext::new(f, node.prime());
    Ok(ctx.classify(&node.value(), node.level(), max_extra_depth))
}

/// Builds a tree for an arbitrary nonzero polynomial purely from the
/// empirical certificates.
pub fn build_empirical_tree(
    f: &Polynomial,
    p: Prime,
    depth: usize,
    max_extra_depth: usize,
) -> Result<ValuationTree, TreeError> {
    if f.is_zero() {
        return Err(TreeError::ZeroPolynomial);
    }
    check_depth(depth)?;
    let ctx = EmpiricalContext::new(f, p);
    let nodes = grow_tree(p, depth, |id| {
        ctx.classify(&id.value(), id.level(), max_extra_depth)
    });
    Ok(ValuationTree {
        prime: p,
        depth,
        generator: f.to_string(),
        engine: Engine::Empirical,
        nodes,
    })
}

/// Builds a tree for a polynomial whose residual factor may have no rational
/// roots. Nodes on the digit path of a linear-factor root in Z_p, or on a
/// certified lifted root prefix of the residual, are NonTerminating. On
/// every other node the linear factors pin their joint valuation, so the
/// node follows the residual's classification shifted by that amount;
/// residual root prefixes surviving to `root_depth` without certification
/// leave their nodes Unresolved rather than being trusted as roots.
pub fn build_partial_tree(
    f: &FactoredPolynomial,
    p: Prime,
    depth: usize,
    root_depth: usize,
    max_extra_depth: usize,
) -> Result<ValuationTree, TreeError> {
    if f.is_zero() {
        return Err(TreeError::ZeroPolynomial);
    }
    check_depth(depth)?;
    check_depth(root_depth)?;
    if f.is_completely_factored() {
        return analytic_inner(f, p, depth, Engine::Partial);
    }

    let nu_c = valuation_rat(f.constant(), p)
        .finite()
        .expect("nonzero constant");
    let roots = padic_root_digits(f.linear_factors(), p, depth);

    let residual = f.residual();
    let mut certified_paths: Vec<Vec<u64>> = Vec::new();
    for prefix in zp_root_prefixes(residual, p, root_depth)? {
        if !prefix.certified() {
            continue;
        }
        let full = if root_depth < depth {
            extend_certified(residual, &prefix, depth - root_depth)?
        } else {
            prefix
        };
        certified_paths.push(full.digits()[..full.digits().len().min(depth)].to_vec());
    }

    let ctx = EmpiricalContext::new(residual, p);
    let nodes = grow_tree(p, depth, |id| {
        let digits = id.digits();
        let on_linear_path = roots.iter().any(|(_, rd)| divergence(digits, rd).is_none());
        let on_certified_path = certified_paths
            .iter()
            .any(|path| divergence(digits, path).is_none());
        if on_linear_path || on_certified_path {
            return NodeInfo::plain(NodeStatus::NonTerminating);
        }
        let linear_sum: i64 = roots
            .iter()
            .map(|(_, rd)| divergence(digits, rd).expect("diverged factor") as i64)
            .sum();
        let residual_info = ctx.classify(&id.value(), id.level(), max_extra_depth);
        match residual_info.status {
            NodeStatus::Terminating(Valuation::Finite(w)) => NodeInfo::plain(
                NodeStatus::Terminating(Valuation::Finite(nu_c + linear_sum + w)),
            ),
            NodeStatus::Terminating(Valuation::Infinite) => {
                unreachable!("residual certificates never pin an infinite valuation")
            }
            NodeStatus::NonTerminating => residual_info,
            NodeStatus::Unresolved => NodeInfo::plain(NodeStatus::Unresolved),
        }
    });
    Ok(ValuationTree {
        prime: p,
        depth,
        generator: f.to_string(),
        engine: Engine::Partial,
        nodes,
    })
}

/// All nodes materialized in both trees, up to the smaller depth, whose
/// statuses conflict. An Unresolved status against a decided one is reported
/// as incomparable, not as a disagreement.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeDiff {
    pub disagreements: Vec<(NodeId, NodeStatus, NodeStatus)>,
    pub incomparable: Vec<NodeId>,
}

impl TreeDiff {
    /// True when no comparable node pair conflicts.
    pub fn is_agreement(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn diff_trees(t1: &ValuationTree, t2: &ValuationTree) -> Result<TreeDiff, TreeError> {
    if t1.prime() != t2.prime() {
        return Err(TreeError::PrimeMismatch(t1.prime().get(), t2.prime().get()));
    }
    let depth = t1.depth().min(t2.depth());
    let mut diff = TreeDiff::default();
    for (id, info1) in t1.nodes() {
        if id.level() > depth {
            continue;
        }
        let Some(info2) = t2.get(id) else {
            continue;
        };
        if info1.status == info2.status {
            continue;
        }
        if info1.status == NodeStatus::Unresolved || info2.status == NodeStatus::Unresolved {
            diff.incomparable.push(id.clone());
        } else {
            diff.disagreements
                .push((id.clone(), info1.status, info2.status));
        }
    }
    Ok(diff)
}
