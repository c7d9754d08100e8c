//! The discussion-tree engine: recursive tree construction over a
//! Buchberger loop that branches on undecided parametric leading
//! coefficients, discriminant-ideal extraction, compaction of equal-lpp
//! brother leaves, and the rewrite that roots the tree at the discriminant
//! ideal with a single generic case on the non-null side.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::gcd::{content_x, drop_shared_factors, gcd as poly_gcd};
use crate::ideal::{
    ideal_contains, intersect, normal_form, quasi_radical, saturation_membership,
};
use num_traits::One;

use crate::poly::{Context, Monomial, Poly, Rat};
use crate::spec::{canspec, pnormalform, Specification};

/// Binary decision string addressing a vertex; the root is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexLabel(pub Vec<u8>);

impl VertexLabel {
    pub fn root() -> VertexLabel {
        VertexLabel(Vec::new())
    }

    pub fn child(&self, bit: u8) -> VertexLabel {
        let mut v = self.0.clone();
        v.push(bit);
        VertexLabel(v)
    }

    /// The generic path takes the non-null branch at every decision.
    pub fn all_non_null(&self) -> bool {
        self.0.iter().all(|&b| b == 1)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", b)?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub label: VertexLabel,
    pub basis: Vec<Poly>,
    pub sigma: Specification,
    pub terminal: bool,
    /// lpp set of the basis (terminal vertices only), sorted descending.
    pub lpp: Vec<Monomial>,
    /// Condition decided at this vertex (internal vertices only).
    pub condition: Option<Poly>,
}

#[derive(Debug, Clone)]
pub struct DiscussionTree {
    pub ctx: Arc<Context>,
    pub vertices: BTreeMap<VertexLabel, Vertex>,
    /// Discriminant ideal sitting at the root after the rewrite.
    pub root_condition: Option<Vec<Poly>>,
}

impl DiscussionTree {
    pub fn new(ctx: &Arc<Context>) -> DiscussionTree {
        DiscussionTree {
            ctx: ctx.clone(),
            vertices: BTreeMap::new(),
            root_condition: None,
        }
    }

    pub fn terminals(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.values().filter(|v| v.terminal)
    }

    /// The unique terminal vertex reached by non-null decisions only.
    pub fn generic_terminal(&self) -> &Vertex {
        self.terminals()
            .find(|v| v.label.all_non_null())
            .expect("built tree has an all-non-null terminal")
    }

    /// Pre-order traversal listing the non-null child first, matching the
    /// case order of the printed outputs.
    pub fn preorder_terminals(&self) -> Vec<&Vertex> {
        let mut out = Vec::new();
        self.collect_preorder(&VertexLabel::root(), &mut out);
        out
    }

    fn collect_preorder<'a>(&'a self, label: &VertexLabel, out: &mut Vec<&'a Vertex>) {
        let Some(v) = self.vertices.get(label) else {
            return;
        };
        if v.terminal {
            out.push(v);
        } else {
            self.collect_preorder(&label.child(1), out);
            self.collect_preorder(&label.child(0), out);
        }
    }
}

/// One terminal case of a Gröbner system.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: VertexLabel,
    pub basis: Vec<Poly>,
    pub sigma: Specification,
    pub lpp: Vec<Monomial>,
}

/// Flat list of terminal cases plus the discriminant ideal.
#[derive(Debug, Clone)]
pub struct GroebnerSystem {
    pub ctx: Arc<Context>,
    pub cases: Vec<Case>,
    pub discriminant: Vec<Poly>,
    pub generic_label: VertexLabel,
}

impl GroebnerSystem {
    pub fn generic_case(&self) -> &Case {
        self.cases
            .iter()
            .find(|c| c.label == self.generic_label)
            .expect("generic case present")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DiscussError {
    #[error("discussion tree exceeded the maximum depth of {0} decisions")]
    DepthExceeded(usize),
    #[error("discussion stalled: {0}")]
    Stalled(String),
}

const MAX_DEPTH: usize = 64;
const MAX_CONTINUATIONS: usize = 512;

/// lpp set of a basis: leading x-power-products, deduplicated, sorted
/// descending under the ambient order.
pub fn lpp_set(basis: &[Poly], ctx: &Arc<Context>) -> Vec<Monomial> {
    let mut lpps: Vec<Monomial> = basis.iter().filter(|p| !p.is_zero()).map(|p| p.lpp_x()).collect();
    lpps.sort_by(|a, b| ctx.cmp_mono(&b.0, &a.0));
    lpps.dedup();
    lpps
}

fn lpp_seq(basis: &[Poly]) -> Vec<Monomial> {
    basis.iter().map(|p| p.lpp_x()).collect()
}

enum Disposition {
    NonNull,
    Null,
    Undecided,
}

/// Classifies a parametric leading coefficient under Σ.  The coefficient
/// arrives reduced modulo the null ideal, so "null" can only mean radical
/// membership beyond the ideal itself.
fn lc_disposition(lc: &Poly, sigma: &Specification, ctx: &Arc<Context>) -> Disposition {
    if lc.is_constant() {
        return Disposition::NonNull;
    }
    if drop_shared_factors(lc, sigma.non_null()).is_constant() {
        return Disposition::NonNull;
    }
    if !sigma.null_gens().is_empty() && saturation_membership(lc, sigma.null_gens(), ctx) {
        return Disposition::Null;
    }
    Disposition::Undecided
}

enum BranchStep {
    /// Every leading coefficient is decided non-null.
    AllDecided(Vec<Poly>),
    /// The reduced basis contains a non-null constant: the case collapses
    /// to the unit ideal.
    Unit,
    /// A condition must be decided; `sigma0`/`sigma1` are the compatible
    /// null / non-null refinements (at least one present).
    Split {
        basis: Vec<Poly>,
        condition: Poly,
        sigma0: Option<Specification>,
        sigma1: Option<Specification>,
    },
}

/// Reduces the basis wrt Σ and finds the first element whose leading
/// coefficient is not decided non-null.
fn cond_to_branch(b: &[Poly], sigma: &Specification, ctx: &Arc<Context>) -> BranchStep {
    let mut basis: Vec<Poly> = Vec::new();
    for p in b {
        let r = pnormalform(p, sigma);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return BranchStep::Unit;
        }
        if !basis.contains(&r) {
            basis.push(r);
        }
    }
    for g in &basis {
        let lc = g.lc_x();
        match lc_disposition(&lc, sigma, ctx) {
            Disposition::NonNull => {
                if g.is_param_only() {
                    // a parameter polynomial decided non-null is a unit of
                    // the specialized ring
                    return BranchStep::Unit;
                }
            }
            Disposition::Null => {
                let cond = lc.normalized_primitive();
                let mut n = sigma.null_gens().to_vec();
                n.push(cond.clone());
                let sigma0 = canspec(&n, sigma.non_null(), ctx);
                return BranchStep::Split {
                    basis,
                    condition: cond,
                    sigma0,
                    sigma1: None,
                };
            }
            Disposition::Undecided => {
                let cond = lc.normalized_primitive();
                let mut n = sigma.null_gens().to_vec();
                n.push(cond.clone());
                let sigma0 = canspec(&n, sigma.non_null(), ctx);
                let mut w = sigma.non_null().to_vec();
                w.push(cond.clone());
                let sigma1 = canspec(sigma.null_gens(), &w, ctx);
                return BranchStep::Split {
                    basis,
                    condition: cond,
                    sigma0,
                    sigma1,
                };
            }
        }
    }
    BranchStep::AllDecided(basis)
}

/// Full reduction of `f` by the basis wrt the x-block, sound on Σ:
/// reduction steps cross-multiply by leading coefficients already decided
/// non-null, coefficients stay reduced modulo the null ideal, and the
/// remainder is pnormalform-normalized.
fn sigma_full_reduce(f: &Poly, basis: &[Poly], sigma: &Specification) -> Poly {
    let ctx = f.ctx().clone();
    let mut work = normal_form(f, sigma.null_gens(), false).0;
    let mut rem = Poly::zero(&ctx);
    while !work.is_zero() {
        let u = work.lpp_x();
        let mut reduced = false;
        if !u.is_one() {
            for g in basis {
                let ug = g.lpp_x();
                if ug.is_one() || !ug.divides(&u) {
                    continue;
                }
                let cg = g.lc_x();
                let cw = work.lc_x();
                let d = poly_gcd(&cg, &cw);
                let mult = cg.exact_div(&d).expect("gcd divides");
                let sub = cw.exact_div(&d).expect("gcd divides");
                work = work
                    .mul(&mult)
                    .sub(&g.mul(&sub).mul_term(&u.div(&ug), &Rat::one()));
                rem = rem.mul(&mult);
                work = normal_form(&work, sigma.null_gens(), false).0;
                // Joint rescaling must stay sound on Σ: only the content
                // part lying in the non-null closure may be divided out.
                let c = poly_gcd(&content_x(&work), &content_x(&rem));
                if !c.is_zero() && !c.is_constant() {
                    let undecided = drop_shared_factors(&c, sigma.non_null());
                    let unit_part = c.exact_div(&undecided).expect("drop divides");
                    if !unit_part.is_constant() {
                        work = work.exact_div(&unit_part).expect("content divides");
                        rem = rem.exact_div(&unit_part).expect("content divides");
                    }
                }
                joint_rational_reduce(&mut rem, &mut work);
                reduced = true;
                break;
            }
        }
        if !reduced {
            let group = work.leading_x_group();
            rem = rem.add(&group);
            work = work.sub(&group);
        }
    }
    pnormalform(&rem, sigma)
}

/// Rescales both polynomials by the same positive rational so that the
/// joint coefficient set is integer and primitive.
fn joint_rational_reduce(a: &mut Poly, b: &mut Poly) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;
    let mut den_lcm = BigInt::from(1);
    let mut num_gcd = BigInt::zero();
    for (_, c) in a.terms().iter().chain(b.terms().iter()) {
        den_lcm = den_lcm.lcm(c.denom());
        num_gcd = num_gcd.gcd(c.numer());
    }
    if num_gcd.is_zero() {
        return;
    }
    let factor = Rat::new(den_lcm, num_gcd);
    *a = a.scale(&factor);
    *b = b.scale(&factor);
}

/// Inter-reduction of a terminal basis: minimal lpp set, tails reduced,
/// every element pnormalform-normalized, sorted ascending by lpp.
fn sigma_interreduce(basis: Vec<Poly>, sigma: &Specification, ctx: &Arc<Context>) -> Vec<Poly> {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        ctx.cmp_mono(&basis[a].lpp_x().0, &basis[b].lpp_x().0)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<Poly> = Vec::new();
    for idx in order {
        let u = basis[idx].lpp_x();
        if !kept.iter().any(|k| k.lpp_x().divides(&u)) {
            kept.push(basis[idx].clone());
        }
    }
    (0..kept.len())
        .map(|i| {
            let others: Vec<Poly> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            sigma_full_reduce(&kept[i], &others, sigma)
        })
        .collect()
}

enum PgbOutcome {
    Terminal(Vec<Poly>),
    Unit,
    Split {
        basis: Vec<Poly>,
        condition: Poly,
        sigma0: Option<Specification>,
        sigma1: Option<Specification>,
        zero_pairs: BTreeSet<(usize, usize)>,
    },
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Buchberger's loop under a specification.  Stops at the first surviving
/// S-polynomial reduct whose leading coefficient is not decided non-null;
/// `zero_pairs` lists S-pairs known to reduce to zero so a same-vertex
/// continuation can skip them.
fn condpgb(
    basis: Vec<Poly>,
    sigma: &Specification,
    carried: Option<BTreeSet<(usize, usize)>>,
    ctx: &Arc<Context>,
) -> PgbOutcome {
    let mut basis = basis;
    let mut zero_pairs = carried.unwrap_or_default();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            if !zero_pairs.contains(&(i, j)) {
                pending.push((i, j));
            }
        }
    }

    loop {
        if pending.is_empty() {
            let reduced = sigma_interreduce(basis, sigma, ctx);
            if reduced.iter().any(|p| p.is_constant() && !p.is_zero()) {
                return PgbOutcome::Unit;
            }
            return PgbOutcome::Terminal(reduced);
        }
        // normal selection strategy on the x-block lcm
        let mut best = 0;
        let mut best_lcm = {
            let (i, j) = pending[0];
            basis[i].lpp_x().lcm(&basis[j].lpp_x())
        };
        for (k, &(i, j)) in pending.iter().enumerate().skip(1) {
            let lcm = basis[i].lpp_x().lcm(&basis[j].lpp_x());
            if ctx.cmp_mono(&lcm.0, &best_lcm.0) == std::cmp::Ordering::Less {
                best = k;
                best_lcm = lcm;
            }
        }
        let (i, j) = pending.remove(best);
        if basis[i].lpp_x().coprime(&basis[j].lpp_x()) {
            zero_pairs.insert((i, j));
            continue;
        }
        let lcm = best_lcm;
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lpp_x().divides(&lcm)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chained {
            continue;
        }
        // fraction-free S-polynomial wrt the x-block
        let (ci, cj) = (basis[i].lc_x(), basis[j].lc_x());
        let d = poly_gcd(&ci, &cj);
        let fi = cj.exact_div(&d).expect("gcd divides");
        let fj = ci.exact_div(&d).expect("gcd divides");
        let (ui, uj) = (basis[i].lpp_x(), basis[j].lpp_x());
        let s = basis[i]
            .mul(&fi)
            .mul_term(&lcm.div(&ui), &Rat::one())
            .sub(&basis[j].mul(&fj).mul_term(&lcm.div(&uj), &Rat::one()));
        let r = sigma_full_reduce(&s, &basis, sigma);
        if r.is_zero() {
            zero_pairs.insert((i, j));
            continue;
        }
        if r.is_constant() {
            return PgbOutcome::Unit;
        }
        let lc = r.lc_x();
        match lc_disposition(&lc, sigma, ctx) {
            Disposition::NonNull => {
                if r.is_param_only() {
                    return PgbOutcome::Unit;
                }
                zero_pairs.insert((i, j));
                let new = basis.len();
                basis.push(r);
                for k in 0..new {
                    pending.push((k, new));
                }
            }
            Disposition::Null => {
                let cond = lc.normalized_primitive();
                let mut n = sigma.null_gens().to_vec();
                n.push(cond.clone());
                let sigma0 = canspec(&n, sigma.non_null(), ctx);
                zero_pairs.insert((i, j));
                basis.push(r);
                return PgbOutcome::Split {
                    basis,
                    condition: cond,
                    sigma0,
                    sigma1: None,
                    zero_pairs,
                };
            }
            Disposition::Undecided => {
                let cond = lc.normalized_primitive();
                let mut n = sigma.null_gens().to_vec();
                n.push(cond.clone());
                let sigma0 = canspec(&n, sigma.non_null(), ctx);
                let mut w = sigma.non_null().to_vec();
                w.push(cond.clone());
                let sigma1 = canspec(sigma.null_gens(), &w, ctx);
                zero_pairs.insert((i, j));
                basis.push(r);
                return PgbOutcome::Split {
                    basis,
                    condition: cond,
                    sigma0,
                    sigma1,
                    zero_pairs,
                };
            }
        }
    }
}

fn store_terminal(tree: &mut DiscussionTree, label: &VertexLabel, basis: Vec<Poly>, sigma: Specification) {
    let lpp = lpp_set(&basis, &tree.ctx);
    tree.vertices.insert(
        label.clone(),
        Vertex {
            label: label.clone(),
            basis,
            sigma,
            terminal: true,
            lpp,
            condition: None,
        },
    );
}

fn store_unit_terminal(tree: &mut DiscussionTree, label: &VertexLabel, sigma: Specification) {
    let one = Poly::one(&tree.ctx);
    store_terminal(tree, label, vec![one], sigma);
}

fn store_internal(
    tree: &mut DiscussionTree,
    label: &VertexLabel,
    basis: Vec<Poly>,
    sigma: Specification,
    condition: Poly,
) {
    tree.vertices.insert(
        label.clone(),
        Vertex {
            label: label.clone(),
            basis,
            sigma,
            terminal: false,
            lpp: Vec::new(),
            condition: Some(condition),
        },
    );
}

/// Recursive tree construction.  Same-vertex continuations run as a loop;
/// compatible splits recurse into the 0-child first.
fn build_vertex(
    tree: &mut DiscussionTree,
    label: VertexLabel,
    basis_in: Vec<Poly>,
    sigma_in: Specification,
) -> Result<(), DiscussError> {
    if label.0.len() > MAX_DEPTH {
        return Err(DiscussError::DepthExceeded(MAX_DEPTH));
    }
    let mut basis = basis_in;
    let mut sigma = sigma_in;
    // cache of zero-reducing pairs, valid while the basis lpp sequence is
    // preserved across a same-vertex continuation
    let mut cache: Option<(Vec<Monomial>, BTreeSet<(usize, usize)>)> = None;

    for _ in 0..MAX_CONTINUATIONS {
        match cond_to_branch(&basis, &sigma, &tree.ctx) {
            BranchStep::Unit => {
                store_unit_terminal(tree, &label, sigma);
                return Ok(());
            }
            BranchStep::Split {
                basis: g,
                condition,
                sigma0,
                sigma1,
            } => match (sigma0, sigma1) {
                (Some(s0), Some(s1)) => {
                    store_internal(tree, &label, g.clone(), sigma, condition);
                    build_vertex(tree, label.child(0), g.clone(), s0)?;
                    build_vertex(tree, label.child(1), g, s1)?;
                    return Ok(());
                }
                (s0, s1) => {
                    let next = s1.or(s0).ok_or_else(|| {
                        DiscussError::Stalled(format!(
                            "both branches of condition {} are incompatible at {}",
                            condition, label
                        ))
                    })?;
                    basis = g;
                    sigma = next;
                    cache = None;
                }
            },
            BranchStep::AllDecided(g) => {
                let carried = match cache.take() {
                    Some((lpps, zp)) if lpps == lpp_seq(&g) => Some(zp),
                    _ => None,
                };
                match condpgb(g, &sigma, carried, &tree.ctx) {
                    PgbOutcome::Unit => {
                        store_unit_terminal(tree, &label, sigma);
                        return Ok(());
                    }
                    PgbOutcome::Terminal(final_basis) => {
                        store_terminal(tree, &label, final_basis, sigma);
                        return Ok(());
                    }
                    PgbOutcome::Split {
                        basis: g2,
                        condition,
                        sigma0,
                        sigma1,
                        zero_pairs,
                    } => match (sigma0, sigma1) {
                        (Some(s0), Some(s1)) => {
                            store_internal(tree, &label, g2.clone(), sigma, condition);
                            build_vertex(tree, label.child(0), g2.clone(), s0)?;
                            build_vertex(tree, label.child(1), g2, s1)?;
                            return Ok(());
                        }
                        (s0, s1) => {
                            let next = s1.or(s0).ok_or_else(|| {
                                DiscussError::Stalled(format!(
                                    "both branches of condition {} are incompatible at {}",
                                    condition, label
                                ))
                            })?;
                            cache = Some((lpp_seq(&g2), zero_pairs));
                            basis = g2;
                            sigma = next;
                        }
                    },
                }
            }
        }
    }
    Err(DiscussError::Stalled(format!(
        "vertex {} exceeded {} same-vertex continuations",
        label, MAX_CONTINUATIONS
    )))
}

/// Builds the raw discussion tree from a basis under the empty
/// specification.
pub fn build_tree(gens: &[Poly], ctx: &Arc<Context>) -> Result<DiscussionTree, DiscussError> {
    let mut tree = DiscussionTree::new(ctx);
    build_vertex(
        &mut tree,
        VertexLabel::root(),
        gens.to_vec(),
        Specification::empty(ctx),
    )?;
    Ok(tree)
}

/// Discriminant ideal: intersection of the null ideals of the singular
/// terminal cases (lpp set different from the generic one), presented
/// quasi-radical.  `[1]` when every case is generic.
pub fn discriminant_ideal(tree: &DiscussionTree) -> Vec<Poly> {
    let ctx = &tree.ctx;
    let generic_lpp = tree.generic_terminal().lpp.clone();
    let singular: Vec<&Vertex> = tree.terminals().filter(|v| v.lpp != generic_lpp).collect();
    if singular.is_empty() {
        return vec![Poly::one(ctx)];
    }
    let mut acc: Vec<Poly> = singular[0].sigma.null_gens().to_vec();
    for v in &singular[1..] {
        acc = intersect(&acc, v.sigma.null_gens(), ctx);
        if acc.is_empty() {
            break;
        }
    }
    quasi_radical(&acc)
}

/// Merges brother terminal leaves with equal lpp sets into their father,
/// repeatedly, never touching the root's own children (the rewritten
/// tree's generic/singular split must survive).
pub fn compact_vert(tree: &mut DiscussionTree, protect_root_children: bool) {
    loop {
        let mut merge_at: Option<VertexLabel> = None;
        for (label, v) in tree.vertices.iter().rev() {
            if v.terminal {
                continue;
            }
            if protect_root_children && label.0.is_empty() {
                continue;
            }
            let (c0, c1) = (label.child(0), label.child(1));
            let (Some(v0), Some(v1)) = (tree.vertices.get(&c0), tree.vertices.get(&c1)) else {
                continue;
            };
            if v0.terminal && v1.terminal && v0.lpp == v1.lpp {
                merge_at = Some(label.clone());
                break;
            }
        }
        let Some(label) = merge_at else {
            return;
        };
        let v1 = tree.vertices.remove(&label.child(1)).expect("child present");
        tree.vertices.remove(&label.child(0));
        let father = tree.vertices.get(&label).expect("father present");
        let sigma = father.sigma.clone();
        // the father keeps its own specification; the common basis shape is
        // taken from the non-null child, re-reduced under the father's Σ
        let basis: Vec<Poly> = v1
            .basis
            .iter()
            .map(|p| pnormalform(p, &sigma))
            .filter(|p| !p.is_zero())
            .collect();
        store_terminal(tree, &label, basis, sigma);
    }
}

/// Rewrites the tree with the discriminant ideal at the root: child `[1]`
/// is the single generic case, child `[0]` the old tree with the
/// discriminant adjoined to every specification, incompatible branches
/// pruned and vacuous decisions collapsed.
pub fn rebuild_tree(tree: &DiscussionTree, n_gens: &[Poly]) -> DiscussionTree {
    let ctx = &tree.ctx;
    let mut out = DiscussionTree::new(ctx);
    out.root_condition = Some(n_gens.to_vec());
    let n_is_unit = n_gens.len() == 1 && n_gens[0].is_constant();

    let old_root = tree
        .vertices
        .get(&VertexLabel::root())
        .expect("tree has a root");
    out.vertices.insert(
        VertexLabel::root(),
        Vertex {
            label: VertexLabel::root(),
            basis: old_root.basis.clone(),
            sigma: Specification::empty(ctx),
            terminal: false,
            lpp: Vec::new(),
            condition: None,
        },
    );

    // [1]: the generic case, specified as "some discriminant generator is
    // non-null" (conjunctive over the factors when N is principal, hence
    // the dedicated disjunction flag).
    let generic = tree.generic_terminal();
    let generic_label = VertexLabel(vec![1]);
    if n_is_unit {
        let sigma = Specification::empty(ctx);
        let basis: Vec<Poly> = generic
            .basis
            .iter()
            .map(|p| pnormalform(p, &sigma))
            .filter(|p| !p.is_zero())
            .collect();
        store_terminal(&mut out, &generic_label, basis, sigma);
    } else {
        let sigma = Specification::from_parts(ctx, Vec::new(), n_gens.to_vec(), true);
        let basis: Vec<Poly> = generic
            .basis
            .iter()
            .map(|p| pnormalform(p, &sigma))
            .filter(|p| !p.is_zero())
            .collect();
        store_terminal(&mut out, &generic_label, basis, sigma);
    }

    // [0]: the rewritten old tree.
    if !n_is_unit {
        if let Some(subtree) = rewrite_subtree(tree, &VertexLabel::root(), n_gens, ctx) {
            let base = VertexLabel(vec![0]);
            for (suffix, v) in subtree {
                let mut bits = base.0.clone();
                bits.extend_from_slice(&suffix);
                let label = VertexLabel(bits);
                out.vertices.insert(
                    label.clone(),
                    Vertex {
                        label,
                        basis: v.basis,
                        sigma: v.sigma,
                        terminal: v.terminal,
                        lpp: v.lpp,
                        condition: v.condition,
                    },
                );
            }
        }
    }
    out
}

/// Rewrites the subtree under `label`, returning vertices keyed by their
/// label suffix relative to that subtree's root, or `None` when the whole
/// subtree is incompatible with the discriminant being null.
fn rewrite_subtree(
    tree: &DiscussionTree,
    label: &VertexLabel,
    n_gens: &[Poly],
    ctx: &Arc<Context>,
) -> Option<BTreeMap<Vec<u8>, Vertex>> {
    let v = tree.vertices.get(label)?;
    // condition already implied: copy the subtree verbatim
    if ideal_contains(v.sigma.null_gens(), n_gens, ctx) {
        let mut map = BTreeMap::new();
        for (l, w) in tree.vertices.range(label.clone()..) {
            if !l.0.starts_with(&label.0) {
                break;
            }
            map.insert(l.0[label.0.len()..].to_vec(), w.clone());
        }
        return Some(map);
    }
    let mut n = v.sigma.null_gens().to_vec();
    n.extend_from_slice(n_gens);
    let sigma = canspec(&n, v.sigma.non_null(), ctx)?;
    let basis: Vec<Poly> = v
        .basis
        .iter()
        .map(|p| pnormalform(p, &sigma))
        .filter(|p| !p.is_zero())
        .collect();
    if v.terminal {
        let mut map = BTreeMap::new();
        let lpp = lpp_set(&basis, ctx);
        map.insert(
            Vec::new(),
            Vertex {
                label: VertexLabel::root(),
                basis,
                sigma,
                terminal: true,
                lpp,
                condition: None,
            },
        );
        return Some(map);
    }
    let s0 = rewrite_subtree(tree, &label.child(0), n_gens, ctx);
    let s1 = rewrite_subtree(tree, &label.child(1), n_gens, ctx);
    match (s0, s1) {
        (None, None) => None,
        // one side pruned: the decision is vacuous here, promote the survivor
        (Some(sub), None) | (None, Some(sub)) => Some(sub),
        (Some(sub0), Some(sub1)) => {
            let mut map = BTreeMap::new();
            map.insert(
                Vec::new(),
                Vertex {
                    label: VertexLabel::root(),
                    basis,
                    sigma,
                    terminal: false,
                    lpp: Vec::new(),
                    condition: v.condition.clone(),
                },
            );
            for (suffix, w) in sub0 {
                let mut bits = vec![0u8];
                bits.extend_from_slice(&suffix);
                map.insert(bits, w);
            }
            for (suffix, w) in sub1 {
                let mut bits = vec![1u8];
                bits.extend_from_slice(&suffix);
                map.insert(bits, w);
            }
            Some(map)
        }
    }
}

fn flatten(tree: &DiscussionTree, discriminant: Vec<Poly>) -> GroebnerSystem {
    let cases = tree
        .preorder_terminals()
        .into_iter()
        .map(|v| Case {
            label: v.label.clone(),
            basis: v.basis.clone(),
            sigma: v.sigma.clone(),
            lpp: v.lpp.clone(),
        })
        .collect();
    GroebnerSystem {
        ctx: tree.ctx.clone(),
        cases,
        discriminant,
        generic_label: VertexLabel(vec![1]),
    }
}

/// The full pipeline: build the tree, extract the discriminant ideal,
/// compact, rewrite with the discriminant at the root, compact again, and
/// flatten the terminal cases.  Also returns the final tree for rendering.
pub fn dispgb_with_tree(
    gens: &[Poly],
    ctx: &Arc<Context>,
) -> Result<(GroebnerSystem, DiscussionTree), DiscussError> {
    let mut tree = build_tree(gens, ctx)?;
    let n = discriminant_ideal(&tree);
    compact_vert(&mut tree, false);
    let mut rebuilt = rebuild_tree(&tree, &n);
    compact_vert(&mut rebuilt, true);
    let system = flatten(&rebuilt, n);
    Ok((system, rebuilt))
}

/// Discussion of a parametric polynomial system: the flat Gröbner system.
pub fn dispgb(gens: &[Poly], ctx: &Arc<Context>) -> Result<GroebnerSystem, DiscussError> {
    dispgb_with_tree(gens, ctx).map(|(s, _)| s)
}

/// lpp set of the reduced Gröbner basis of the system specialized at a
/// rational parameter point — an independent oracle computed by ordinary
/// Buchberger over the rationals.
pub fn specialized_lpp(gens: &[Poly], point: &[Rat], ctx: &Arc<Context>) -> Vec<Monomial> {
    let evaluated: Vec<Poly> = gens
        .iter()
        .map(|p| p.eval_params(point))
        .filter(|p| !p.is_zero())
        .collect();
    let gb = crate::ideal::reduced_gb(&evaluated);
    lpp_set(&gb, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::rat;

    fn polys(ctx: &Arc<Context>, texts: &[&str]) -> Vec<Poly> {
        texts.iter().map(|t| parse_poly(ctx, t).unwrap()).collect()
    }

    #[test]
    fn single_parametric_equation() {
        // a*x - 1: generic case invertible, singular case inconsistent
        let ctx = Context::lex(&["x"], &["a"]);
        let gens = polys(&ctx, &["a*x - 1"]);
        let system = dispgb(&gens, &ctx).unwrap();
        assert_eq!(system.cases.len(), 2);

        let generic = system.generic_case();
        assert_eq!(generic.basis, polys(&ctx, &["a*x - 1"]));
        assert_eq!(
            generic.lpp,
            vec![parse_poly(&ctx, "x").unwrap().lpp_x()]
        );

        let singular = &system.cases[1];
        assert_eq!(singular.label, VertexLabel(vec![0]));
        assert_eq!(singular.basis, vec![Poly::one(&ctx)]);
        assert_eq!(singular.sigma.null_gens(), &polys(&ctx, &["a"])[..]);
        // discriminant is ⟨a⟩
        assert_eq!(system.discriminant, polys(&ctx, &["a"]));
    }

    #[test]
    fn no_parameters_single_case() {
        let ctx = Context::lex(&["x"], &[]);
        let gens = polys(&ctx, &["x - 1"]);
        let system = dispgb(&gens, &ctx).unwrap();
        assert_eq!(system.cases.len(), 1);
        assert_eq!(system.cases[0].label, VertexLabel(vec![1]));
        assert_eq!(system.cases[0].basis, polys(&ctx, &["x - 1"]));
        assert!(system.discriminant[0].is_constant());
    }

    #[test]
    fn inconsistent_input_collapses_to_unit() {
        let ctx = Context::lex(&["x"], &["a"]);
        let gens = polys(&ctx, &["x", "3"]);
        let system = dispgb(&gens, &ctx).unwrap();
        assert_eq!(system.cases.len(), 1);
        assert_eq!(system.cases[0].basis, vec![Poly::one(&ctx)]);
    }

    #[test]
    fn benchmark_s1_two_cases_nonprincipal() {
        // [a(x+y), b(x+y), x^2 + a x] discusses into exactly two cases with
        // discriminant ⟨a, b⟩
        let ctx = Context::lex(&["x", "y"], &["a", "b"]);
        let gens = polys(&ctx, &["a*(x+y)", "b*(x+y)", "x^2 + a*x"]);
        let (system, tree) = dispgb_with_tree(&gens, &ctx).unwrap();
        assert_eq!(system.cases.len(), 2);
        assert_eq!(system.discriminant, polys(&ctx, &["b", "a"]));

        let generic = system.generic_case();
        assert_eq!(generic.basis, polys(&ctx, &["y^2 - a*y", "x + y"]));
        assert!(generic.sigma.is_generic_disjunction());

        let singular = &system.cases[1];
        assert_eq!(singular.label, VertexLabel(vec![0]));
        assert_eq!(singular.basis, polys(&ctx, &["x^2"]));
        assert_eq!(singular.sigma.null_gens(), &polys(&ctx, &["b", "a"])[..]);

        // the final tree is the three-vertex root/generic/singular shape
        assert_eq!(tree.vertices.len(), 3);

        // partition sanity at a few points
        let gen_pt = vec![rat(2), rat(3)];
        assert!(generic.sigma.point_satisfies(&gen_pt));
        assert!(!singular.sigma.point_satisfies(&gen_pt));
        let sing_pt = vec![rat(0), rat(0)];
        assert!(!generic.sigma.point_satisfies(&sing_pt));
        assert!(singular.sigma.point_satisfies(&sing_pt));
    }

    #[test]
    fn specialization_oracle_matches_cases() {
        let ctx = Context::lex(&["x", "y"], &["a", "b"]);
        let gens = polys(&ctx, &["a*(x+y)", "b*(x+y)", "x^2 + a*x"]);
        let system = dispgb(&gens, &ctx).unwrap();
        for (pt, label) in [
            (vec![rat(1), rat(2)], VertexLabel(vec![1])),
            (vec![rat(0), rat(5)], VertexLabel(vec![1])),
            (vec![rat(0), rat(0)], VertexLabel(vec![0])),
        ] {
            let matched: Vec<&Case> = system
                .cases
                .iter()
                .filter(|c| c.sigma.point_satisfies(&pt))
                .collect();
            assert_eq!(matched.len(), 1, "exactly one case claims the point");
            assert_eq!(matched[0].label, label);
            assert_eq!(
                specialized_lpp(&gens, &pt, &ctx),
                matched[0].lpp,
                "oracle lpp at {:?}",
                pt
            );
        }
    }
}
