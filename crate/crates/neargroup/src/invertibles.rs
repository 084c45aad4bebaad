//! The group of invertible objects, rebuilt from the twisted extension
//!
//!   1 -> Ĥ -> Γ -> K -> 1,   (chi, s) (psi, t) = (nu(s,t) chi ˢpsi, s·t)
//!
//! where K collects the double-coset representatives that normalize H
//! with cohomologically trivial Schur multiplier, and
//! nu(s,t) = eta_s ˢeta_t / eta_{s·t}. The resulting group is then
//! identified against the reference extraspecial 2-groups (D8, Q8 and
//! their central products) by fingerprinting plus a sound backtracking
//! isomorphism search.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::category::GTCategory;
use crate::cochain::{schur_shortcut, solve_coboundary, Cochain};
use crate::error::{Error, Result};
use crate::group::{Character, Elem, FiniteGroup, RealizedSubgroup, Subgroup};

/// K with its group law, the chosen eta solutions, and the resulting
/// 2-cocycle nu in Z^2(K, Ĥ).
pub struct TwistData {
    pub h: Arc<RealizedSubgroup>,
    /// Coset representatives forming K, identity first-class: the
    /// representative of the coset H itself is always the identity.
    pub reps: Vec<Elem>,
    pub identity_index: usize,
    law: Vec<usize>,
    /// Per representative: the 1-cochain eta_k on H with d(eta_k) = omega_k.
    pub eta: Vec<Cochain>,
    /// Per representative: the Schur multiplier table omega_k itself.
    pub omega_k: Vec<Cochain>,
    nu: Vec<Character>,
    conj_perms: Vec<Vec<usize>>,
}

impl TwistData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of k1 · k2 (the unique k3 with k1 k2 in k3 H).
    pub fn law(&self, i: usize, j: usize) -> usize {
        self.law[i * self.reps.len() + j]
    }

    pub fn nu(&self, i: usize, j: usize) -> &Character {
        &self.nu[i * self.reps.len() + j]
    }

    /// Replace chosen eta solutions (validated against omega_k) and
    /// rebuild nu; used to run with an explicitly given eta, e.g.
    /// eta_{gamma_1} = f_0^l.
    pub fn with_eta(&self, replacements: &[(Elem, Cochain)]) -> Result<TwistData> {
        let mut etas = self.eta.clone();
        for (rep, eta) in replacements {
            let idx = self
                .reps
                .iter()
                .position(|r| r == rep)
                .ok_or(Error::BadTwistData(format!(
                    "element {rep} is not a K representative"
                )))?;
            if !eta.coboundary()?.table_eq(&self.omega_k[idx])? {
                return Err(Error::BadTwistData(format!(
                    "replacement eta at representative {rep} does not solve d(eta) = omega_k"
                )));
            }
            if idx == self.identity_index && !eta.is_trivial() {
                return Err(Error::BadTwistData("eta_e must stay trivial".to_string()));
            }
            etas[idx] = eta.clone();
        }
        build_twist(
            Arc::clone(&self.h),
            self.reps.clone(),
            self.identity_index,
            self.law.clone(),
            etas,
            self.omega_k.clone(),
            self.conj_perms.clone(),
        )
    }
}

fn build_twist(
    h: Arc<RealizedSubgroup>,
    reps: Vec<Elem>,
    identity_index: usize,
    law: Vec<usize>,
    eta: Vec<Cochain>,
    omega_k: Vec<Cochain>,
    conj_perms: Vec<Vec<usize>>,
) -> Result<TwistData> {
    let nk = reps.len();
    let nh = h.order();
    let modulus = if let Some(e) = eta.first() {
        e.modulus()
    } else {
        36
    };
    let mut nu = Vec::with_capacity(nk * nk);
    for i in 0..nk {
        for j in 0..nk {
            let target = law[i * nk + j];
            let values: Vec<u32> = (0..nh)
                .map(|x| {
                    let a = eta[i].eval(&[x]) as i64 + eta[j].eval(&[conj_perms[i][x]]) as i64
                        - eta[target].eval(&[x]) as i64;
                    a.rem_euclid(modulus as i64) as u32
                })
                .collect();
            let chi = Character { modulus, values };
            if !chi.is_multiplicative(&h.group) {
                return Err(Error::BadTwistData(format!(
                    "nu({}, {}) is not a character of H",
                    reps[i], reps[j]
                )));
            }
            nu.push(chi);
        }
    }
    let data = TwistData {
        h,
        reps,
        identity_index,
        law,
        eta,
        omega_k,
        nu,
        conj_perms,
    };
    // 2-cocycle identity for the K-action: ˢnu(t,u) nu(s, t·u) = nu(s,t) nu(s·t, u)
    for s in 0..nk {
        for t in 0..nk {
            for u in 0..nk {
                let lhs = data
                    .nu(t, u)
                    .permuted(&data.conj_perms[s])
                    .mul(data.nu(s, data.law(t, u)));
                let rhs = data.nu(s, t).mul(data.nu(data.law(s, t), u));
                if lhs != rhs {
                    return Err(Error::BadTwistData(format!(
                        "nu violates the 2-cocycle identity at K indices ({s}, {t}, {u})"
                    )));
                }
            }
        }
    }
    Ok(data)
}

/// Filter the double-coset representatives down to
/// K = {g : g normalizes H and [omega_g] = 1}, fix the representative
/// of the coset H to the identity (eta_e = 1), and build the group law
/// and the 2-cocycle nu.
pub fn compute_k(cat: &GTCategory) -> Result<TwistData> {
    let g = &cat.group;
    let normalizer = cat.subgroup.normalizer();
    let mut reps = Vec::new();
    let mut etas = Vec::new();
    let mut omega_ks = Vec::new();
    let mut identity_index = None;
    for &rep in cat.cosets.reps() {
        let in_identity_coset = cat.subgroup.contains(rep);
        let rep = if in_identity_coset { g.id() } else { rep };
        if !normalizer.contains(rep) {
            continue;
        }
        let w_k = schur_shortcut(&cat.omega, rep, &cat.realized_h)?;
        let eta = if in_identity_coset {
            if !w_k.is_trivial() {
                return Err(Error::BadTwistData(
                    "omega_e is nontrivial; the cocycle is not normalized".to_string(),
                ));
            }
            identity_index = Some(reps.len());
            Cochain::trivial(&cat.realized_h.group, 1, cat.modulus())
        } else {
            match solve_coboundary(&w_k)? {
                Some(eta) => eta,
                None => continue,
            }
        };
        reps.push(rep);
        etas.push(eta);
        omega_ks.push(w_k);
    }
    let identity_index = identity_index.ok_or(Error::BadTwistData(
        "the identity coset is missing from the representatives".to_string(),
    ))?;
    let nk = reps.len();
    let mut law = vec![usize::MAX; nk * nk];
    for i in 0..nk {
        for j in 0..nk {
            let product = g.mul(reps[i], reps[j]);
            let coset = cat.cosets.coset_index_of(product);
            let t = reps
                .iter()
                .position(|&r| cat.cosets.coset_index_of(r) == coset)
                .ok_or(Error::BadTwistData(format!(
                    "K is not closed: {} * {} leaves the K cosets",
                    reps[i], reps[j]
                )))?;
            law[i * nk + j] = t;
        }
    }
    let conj_perms: Result<Vec<Vec<usize>>> = reps
        .iter()
        .map(|&r| cat.realized_h.conj_permutation(r))
        .collect();
    build_twist(
        Arc::clone(&cat.realized_h),
        reps,
        identity_index,
        law,
        etas,
        omega_ks,
        conj_perms?,
    )
}

/// Gamma(C) realized as a finite group on Ĥ x K.
pub struct ExtensionGroup {
    pub group: Arc<FiniteGroup>,
    /// Per element: (character index into the dual list, K index).
    pub labels: Vec<(usize, usize)>,
    pub n_chars: usize,
    pub n_k: usize,
}

impl ExtensionGroup {
    pub fn element_of(&self, char_index: usize, k_index: usize) -> Elem {
        char_index * self.n_k + k_index
    }
}

/// Build Ĥ x K with (chi, s)(psi, t) = (nu(s,t) chi ˢpsi, s·t); the
/// group axioms are verified exhaustively by the table constructor, so
/// an associativity failure (a nu-cocycle bug) surfaces as an error.
pub fn build_extension(twist: &TwistData, hdual: &[Character]) -> Result<ExtensionGroup> {
    let nk = twist.reps.len();
    let nh = hdual.len();
    let index_of: HashMap<Vec<u32>, usize> = hdual
        .iter()
        .enumerate()
        .map(|(i, c)| (c.values.clone(), i))
        .collect();
    if index_of.len() != nh {
        return Err(Error::BadTwistData(
            "duplicate characters in the dual list".to_string(),
        ));
    }
    let order = nh * nk;
    let mut mul = vec![0usize; order * order];
    let mut labels = Vec::with_capacity(order);
    for i1 in 0..nh {
        for j1 in 0..nk {
            labels.push((i1, j1));
            for i2 in 0..nh {
                for j2 in 0..nk {
                    let chi = twist
                        .nu(j1, j2)
                        .mul(&hdual[i1])
                        .mul(&hdual[i2].permuted(&twist.conj_perms[j1]));
                    let ci = *index_of.get(&chi.values).ok_or(Error::BadTwistData(
                        "nu-twisted product left the character group".to_string(),
                    ))?;
                    let t = twist.law(j1, j2);
                    mul[(i1 * nk + j1) * order + (i2 * nk + j2)] = ci * nk + t;
                }
            }
        }
    }
    let text_labels: Vec<String> = labels
        .iter()
        .map(|&(i, j)| format!("(chi{}, {})", i, twist.h.parent.label(twist.reps[j])))
        .collect();
    let group = FiniteGroup::from_mul_table(mul, Some(text_labels))?;
    Ok(ExtensionGroup {
        group,
        labels,
        n_chars: nh,
        n_k: nk,
    })
}

/// The subset {(chi, e)}; it must be a subgroup isomorphic to Ĥ. The
/// identity K index is read off the group identity rather than assumed
/// to be zero.
pub fn hdual_subgroup(ext: &ExtensionGroup) -> Result<Subgroup> {
    let (_, id_k) = ext.labels[ext.group.id()];
    let members: Vec<Elem> = (0..ext.n_chars).map(|i| ext.element_of(i, id_k)).collect();
    Subgroup::new(Arc::clone(&ext.group), members)
}

/// (A x B) / <(z_A, z_B)> for central involutions z_A, z_B.
pub fn central_product(
    a: &Arc<FiniteGroup>,
    b: &Arc<FiniteGroup>,
    za: Elem,
    zb: Elem,
) -> Result<Arc<FiniteGroup>> {
    for (g, z) in [(a, za), (b, zb)] {
        if z >= g.order()
            || g.element_order(z) != 2
            || !g.elements().all(|x| g.mul(z, x) == g.mul(x, z))
        {
            return Err(Error::NotCentralInvolution(z));
        }
    }
    let canon = |x: Elem, y: Elem| -> (Elem, Elem) { (x, y).min((a.mul(x, za), b.mul(y, zb))) };
    let mut classes: Vec<(Elem, Elem)> = Vec::new();
    for x in a.elements() {
        for y in b.elements() {
            let c = canon(x, y);
            if c == (x, y) {
                classes.push(c);
            }
        }
    }
    classes.sort_unstable();
    let index: HashMap<(Elem, Elem), usize> =
        classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let order = classes.len();
    let mut mul = vec![0usize; order * order];
    for (i, &(x1, y1)) in classes.iter().enumerate() {
        for (j, &(x2, y2)) in classes.iter().enumerate() {
            mul[i * order + j] = index[&canon(a.mul(x1, x2), b.mul(y1, y2))];
        }
    }
    let labels = classes
        .iter()
        .map(|&(x, y)| format!("({}, {})", a.label(x), b.label(y)))
        .collect();
    FiniteGroup::from_mul_table(mul, Some(labels))
}

/// The dihedral group of order 8 as Z_4 ⋊_{-1} Z_2.
pub fn dihedral_8() -> Arc<FiniteGroup> {
    z4_extension(0, "r", "s")
}

/// The quaternion group: like D_8 but with s^2 = r^2.
pub fn quaternion_8() -> Arc<FiniteGroup> {
    z4_extension(1, "a", "b")
}

fn z4_extension(twist: usize, rot: &str, flip: &str) -> Arc<FiniteGroup> {
    let idx = |x: usize, y: usize| 2 * (x % 4) + (y % 2);
    let mut mul = vec![0usize; 64];
    for x1 in 0..4 {
        for y1 in 0..2 {
            for x2 in 0..4 {
                for y2 in 0..2 {
                    let x = if y1 == 0 { x1 + x2 } else { x1 + 4 - x2 } + 2 * twist * y1 * y2;
                    mul[idx(x1, y1) * 8 + idx(x2, y2)] = idx(x % 4, (y1 + y2) % 2);
                }
            }
        }
    }
    let labels = (0..8)
        .map(|e| {
            let (x, y) = (e / 2, e % 2);
            let mut s = String::new();
            if x > 0 {
                s.push_str(&if x == 1 {
                    rot.to_string()
                } else {
                    format!("{rot}^{x}")
                });
            }
            if y > 0 {
                s.push_str(flip);
            }
            if s.is_empty() {
                s.push('e');
            }
            s
        })
        .collect();
    FiniteGroup::from_mul_table(mul, Some(labels)).expect("reference group of order 8")
}

/// The unique central involution of a group whose center is {e, z}.
pub fn central_involution(g: &Arc<FiniteGroup>) -> Result<Elem> {
    let center = Subgroup::center(g);
    if center.order() != 2 {
        return Err(Error::NotCentralInvolution(g.id()));
    }
    let z = *center.members().iter().find(|&&x| x != g.id()).unwrap();
    if g.element_order(z) != 2 {
        return Err(Error::NotCentralInvolution(z));
    }
    Ok(z)
}

/// The reference extraspecial 2-group of order 2^(2n+1): the central
/// product of n copies of D8, or of Q8 with n-1 copies of D8.
pub fn extraspecial_reference(n: usize, quaternion_type: bool) -> Result<Arc<FiniteGroup>> {
    let d8 = dihedral_8();
    let mut acc = if quaternion_type {
        quaternion_8()
    } else {
        Arc::clone(&d8)
    };
    for _ in 1..n {
        let za = central_involution(&acc)?;
        let zb = central_involution(&d8)?;
        acc = central_product(&acc, &d8, za, zb)?;
    }
    Ok(acc)
}

/// Isomorphism-invariant summary data used both for reports and as a
/// cheap pre-filter in the isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: usize,
    pub order_statistics: BTreeMap<usize, usize>,
    pub is_extraspecial_2group: bool,
}

impl Fingerprint {
    pub fn involutions(&self) -> usize {
        self.order_statistics.get(&2).copied().unwrap_or(0)
    }
}

pub fn fingerprint(g: &Arc<FiniteGroup>) -> Fingerprint {
    let center = Subgroup::center(g);
    let derived = Subgroup::derived_subgroup(g);
    let order = g.order();
    let is_extraspecial_2group = order.is_power_of_two()
        && order.trailing_zeros() % 2 == 1
        && order >= 8
        && center.order() == 2
        && center.members() == derived.members();
    Fingerprint {
        order,
        center_order: center.order(),
        derived_order: derived.order(),
        exponent: g.exponent(),
        order_statistics: g.order_statistics(),
        is_extraspecial_2group,
    }
}

fn closure(g: &FiniteGroup, gens: &[Elem]) -> HashSet<Elem> {
    let mut set = HashSet::new();
    set.insert(g.id());
    let mut frontier = vec![g.id()];
    while let Some(x) = frontier.pop() {
        for &gen in gens {
            let y = g.mul(x, gen);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn generating_set(g: &Arc<FiniteGroup>) -> Vec<Elem> {
    let mut candidates: Vec<Elem> = g.elements().collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut cur: HashSet<Elem> = HashSet::from([g.id()]);
    for c in candidates {
        if cur.len() == g.order() {
            break;
        }
        if !cur.contains(&c) {
            gens.push(c);
            cur = closure(g, &gens);
        }
    }
    gens
}

/// Attempt to extend gens -> imgs to a homomorphism on <gens> by
/// breadth-first closure, checking every (element, generator) edge and
/// injectivity. Returns false on any conflict.
fn partial_map_consistent(a: &FiniteGroup, b: &FiniteGroup, gens: &[Elem], imgs: &[Elem]) -> bool {
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; a.order()];
    map[a.id()] = b.id();
    let mut stack = vec![a.id()];
    let mut assigned = vec![b.id()];
    while let Some(x) = stack.pop() {
        for (&g, &h) in gens.iter().zip(imgs) {
            let y = a.mul(x, g);
            let fy = b.mul(map[x], h);
            if map[y] == UNSET {
                map[y] = fy;
                assigned.push(fy);
                stack.push(y);
            } else if map[y] != fy {
                return false;
            }
        }
    }
    let distinct: HashSet<Elem> = assigned.iter().copied().collect();
    distinct.len() == assigned.len()
}

fn search_iso(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[Elem],
    buckets: &HashMap<usize, Vec<Elem>>,
    imgs: &mut Vec<Elem>,
) -> bool {
    let depth = imgs.len();
    if depth == gens.len() {
        return true;
    }
    let needed = a.element_order(gens[depth]);
    let Some(candidates) = buckets.get(&needed) else {
        return false;
    };
    for &cand in candidates {
        imgs.push(cand);
        if partial_map_consistent(a, b, &gens[..depth + 1], imgs)
            && search_iso(a, b, gens, buckets, imgs)
        {
            return true;
        }
        imgs.pop();
    }
    false
}

/// Generator-image backtracking with fingerprint pruning; sound and
/// complete for orders up to 512.
pub fn isomorphic(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<bool> {
    if a.order() > 512 || b.order() > 512 {
        return Err(Error::IsoSizeGuard(a.order(), b.order()));
    }
    if a.order() != b.order() {
        return Ok(false);
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(false);
    }
    let gens = generating_set(a);
    if gens.is_empty() {
        return Ok(true); // both trivial
    }
    let mut buckets: HashMap<usize, Vec<Elem>> = HashMap::new();
    for x in b.elements() {
        buckets.entry(b.element_order(x)).or_default().push(x);
    }
    let mut imgs = Vec::with_capacity(gens.len());
    Ok(search_iso(a, b, &gens, &buckets, &mut imgs))
}
