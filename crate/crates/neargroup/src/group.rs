//! Finite groups as dense multiplication tables, with the generic
//! subgroup, coset and character machinery the rest of the toolkit is
//! built on. Everything is immutable after construction; groups are
//! shared behind `Arc`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a group element in its group's element list.
pub type Elem = usize;

pub const MAX_ORDER: usize = 512;

/// A finite group given by a full multiplication table. Construction
/// checks associativity, identity and inverses exhaustively, so a value
/// of this type is always a genuine group.
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    id: Elem,
    labels: Option<Vec<String>>,
    cyclic_cert: Option<Vec<(Elem, usize)>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}

impl FiniteGroup {
    pub fn from_mul_table(mul: Vec<Elem>, labels: Option<Vec<String>>) -> Result<Arc<FiniteGroup>> {
        FiniteGroup::build(mul, labels, None)
    }

    /// Like `from_mul_table`, additionally attaching and validating a
    /// cyclic decomposition certificate (abelian groups only).
    pub fn from_mul_table_certified(
        mul: Vec<Elem>,
        labels: Option<Vec<String>>,
        cert: Vec<(Elem, usize)>,
    ) -> Result<Arc<FiniteGroup>> {
        FiniteGroup::build(mul, labels, Some(cert))
    }

    fn build(
        mul: Vec<Elem>,
        labels: Option<Vec<String>>,
        cert: Option<Vec<(Elem, usize)>>,
    ) -> Result<Arc<FiniteGroup>> {
        let order = (mul.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != mul.len() {
            return Err(Error::BadTableShape(order));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        if mul.iter().any(|&x| x >= order) {
            return Err(Error::EntryOutOfRange);
        }
        if let Some(ls) = &labels {
            if ls.len() != order {
                return Err(Error::BadTableShape(order));
            }
        }
        let id = (0..order)
            .find(|&e| (0..order).all(|x| mul[e * order + x] == x && mul[x * order + e] == x))
            .ok_or(Error::MissingIdentity)?;
        let mut inv = vec![usize::MAX; order];
        for x in 0..order {
            inv[x] = (0..order)
                .find(|&y| mul[x * order + y] == id && mul[y * order + x] == id)
                .ok_or(Error::MissingInverse(x))?;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b];
                for c in 0..order {
                    if mul[ab * order + c] != mul[a * order + mul[b * order + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let g = FiniteGroup {
            order,
            mul,
            inv,
            id,
            labels,
            cyclic_cert: None,
        };
        let g = match cert {
            Some(cert) => {
                g.validate_cert(&cert)?;
                FiniteGroup {
                    cyclic_cert: Some(cert),
                    ..g
                }
            }
            None => g,
        };
        Ok(Arc::new(g))
    }

    /// Check that `cert` is an independent cyclic decomposition: the
    /// group is abelian, the generator orders are correct and multiply
    /// to the group order, and every element factors uniquely.
    fn validate_cert(&self, cert: &[(Elem, usize)]) -> Result<()> {
        if !self.is_abelian() {
            return Err(Error::BadCertificate("group is not abelian".into()));
        }
        let mut product = 1usize;
        for &(g, m) in cert {
            if g >= self.order {
                return Err(Error::NotAMember(g));
            }
            if self.element_order(g) != m {
                return Err(Error::BadCertificate(format!(
                    "generator {g} has order {} not {m}",
                    self.element_order(g)
                )));
            }
            product *= m;
        }
        if product != self.order {
            return Err(Error::BadCertificate(format!(
                "certificate orders multiply to {product}, group order is {}",
                self.order
            )));
        }
        let mut seen = vec![false; self.order];
        for exps in MixedRadix::new(cert.iter().map(|&(_, m)| m).collect()) {
            let mut x = self.id;
            for (&(g, _), &a) in cert.iter().zip(&exps) {
                x = self.mul(x, self.pow(g, a as i64));
            }
            if seen[x] {
                return Err(Error::BadCertificate(
                    "factorization over the certificate generators is not unique".into(),
                ));
            }
            seen[x] = true;
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn id(&self) -> Elem {
        self.id
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// The right adjoint action x ◁ g = g⁻¹ x g.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv[g], x), g)
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let ord = self.element_order(x) as i64;
        let mut k = k.rem_euclid(ord);
        let mut acc = self.id;
        while k > 0 {
            acc = self.mul(acc, x);
            k -= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut acc = x;
        let mut n = 1;
        while acc != self.id {
            acc = self.mul(acc, x);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => format!("#{x}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn cyclic_cert(&self) -> Option<&[(Elem, usize)]> {
        self.cyclic_cert.as_deref()
    }

    /// Structural identity: same order and identical multiplication
    /// table (element indexing included).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.mul == other.mul
    }

    /// Count of elements per element order.
    pub fn order_statistics(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for x in 0..self.order {
            *out.entry(self.element_order(x)).or_insert(0) += 1;
        }
        out
    }

    /// Group exponent: lcm of all element orders.
    pub fn exponent(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        (0..self.order).fold(1, |acc, x| {
            let o = self.element_order(x);
            acc / gcd(acc, o) * o
        })
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            order: self.order,
            mul: self.mul.clone(),
            labels: self.labels.clone(),
            cyclic_cert: self.cyclic_cert.clone(),
        }
    }

    pub fn from_document(doc: GroupDocument) -> Result<Arc<FiniteGroup>> {
        if doc.mul.len() != doc.order * doc.order {
            return Err(Error::BadTableShape(doc.order));
        }
        match doc.cyclic_cert {
            Some(cert) => FiniteGroup::from_mul_table_certified(doc.mul, doc.labels, cert),
            None => FiniteGroup::from_mul_table(doc.mul, doc.labels),
        }
    }
}

/// JSON-facing form of a group: {order, mul (row-major), labels, cyclic_cert?}.
#[derive(Serialize, Deserialize, Clone)]
pub struct GroupDocument {
    pub order: usize,
    pub mul: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cyclic_cert: Option<Vec<(usize, usize)>>,
}

/// Iterator over tuples in a mixed-radix counter (last digit fastest).
pub(crate) struct MixedRadix {
    radices: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl MixedRadix {
    pub(crate) fn new(radices: Vec<usize>) -> MixedRadix {
        let start = if radices.iter().all(|&r| r > 0) {
            Some(vec![0; radices.len()])
        } else {
            None
        };
        MixedRadix {
            radices,
            current: start,
        }
    }
}

impl Iterator for MixedRadix {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.clone()?;
        let mut next = cur.clone();
        let mut i = self.radices.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.radices[i] {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(cur)
    }
}

/// A group homomorphism given by its value table; validated on creation.
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<Elem>,
    ) -> Result<GroupHom> {
        if map.len() != source.order() {
            return Err(Error::BadTableShape(source.order()));
        }
        if map.iter().any(|&x| x >= target.order()) {
            return Err(Error::EntryOutOfRange);
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism(a, b));
                }
            }
        }
        if map[source.id()] != target.id() {
            return Err(Error::NotAHomomorphism(source.id(), source.id()));
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map_table(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// A subgroup of a parent group, stored as a sorted member list.
#[derive(Clone)]
pub struct Subgroup {
    pub parent: Arc<FiniteGroup>,
    members: Vec<Elem>,
}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<Elem>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() || members.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotASubgroup);
        }
        let set: HashSet<Elem> = members.iter().copied().collect();
        if !set.contains(&parent.id()) {
            return Err(Error::NotASubgroup);
        }
        for &a in &members {
            if !set.contains(&parent.inv(a)) {
                return Err(Error::NotASubgroup);
            }
            for &b in &members {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { parent, members })
    }

    /// Smallest subgroup containing `gens` (closure under multiplication).
    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[Elem]) -> Result<Subgroup> {
        if gens.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotAMember(
                *gens.iter().find(|&&x| x >= parent.order()).unwrap(),
            ));
        }
        let mut set: HashSet<Elem> = HashSet::new();
        set.insert(parent.id());
        let mut frontier: Vec<Elem> = vec![parent.id()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        let mut members: Vec<Elem> = set.into_iter().collect();
        members.sort_unstable();
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members,
        })
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(parent),
            members: (0..parent.order()).collect(),
        }
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup {
            parent: Arc::clone(parent),
            members: vec![parent.id()],
        }
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// N_G(H) = {g : g⁻¹ H g = H}, by exhaustive scan.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.parent;
        let members = g
            .elements()
            .filter(|&x| self.members.iter().all(|&h| self.contains(g.conj(h, x))))
            .collect();
        Subgroup {
            parent: Arc::clone(g),
            members,
        }
    }

    /// H ∩ gHg⁻¹, the stabilizer attached to the double coset of g.
    pub fn conj_intersection(&self, g: Elem) -> Subgroup {
        let p = &self.parent;
        let conj_set: HashSet<Elem> = self
            .members
            .iter()
            .map(|&h| p.mul(p.mul(g, h), p.inv(g)))
            .collect();
        let members = self
            .members
            .iter()
            .copied()
            .filter(|m| conj_set.contains(m))
            .collect();
        Subgroup {
            parent: Arc::clone(p),
            members,
        }
    }

    pub fn center(parent: &Arc<FiniteGroup>) -> Subgroup {
        let members = parent
            .elements()
            .filter(|&x| {
                parent
                    .elements()
                    .all(|y| parent.mul(x, y) == parent.mul(y, x))
            })
            .collect();
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub fn centralizer(parent: &Arc<FiniteGroup>, x: Elem) -> Subgroup {
        let members = parent
            .elements()
            .filter(|&g| parent.mul(g, x) == parent.mul(x, g))
            .collect();
        Subgroup {
            parent: Arc::clone(parent),
            members,
        }
    }

    pub fn derived_subgroup(parent: &Arc<FiniteGroup>) -> Subgroup {
        let mut comms = Vec::new();
        for x in parent.elements() {
            for y in parent.elements() {
                comms.push(parent.mul(parent.mul(parent.inv(x), parent.inv(y)), parent.mul(x, y)));
            }
        }
        comms.sort_unstable();
        comms.dedup();
        Subgroup::generated(parent, &comms).expect("commutators are members")
    }

    /// Decompose the parent into double cosets H\G/H with minimal-index
    /// representatives.
    pub fn double_cosets(&self) -> DoubleCosetDecomposition {
        let g = &self.parent;
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut cosets: Vec<Vec<Elem>> = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            let mut members = Vec::new();
            for &h1 in &self.members {
                let left = g.mul(h1, x);
                for &h2 in &self.members {
                    let y = g.mul(left, h2);
                    if coset_of[y] == usize::MAX {
                        coset_of[y] = idx;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            reps.push(x);
            cosets.push(members);
        }
        DoubleCosetDecomposition {
            reps,
            cosets,
            coset_of,
        }
    }

    /// The subgroup as a standalone group, remembering the embedding.
    pub fn realize(&self) -> RealizedSubgroup {
        self.realize_inner(None)
            .expect("subgroup realization cannot fail without a certificate")
    }

    /// Realize and attach a cyclic decomposition certificate whose
    /// generators are given as parent elements.
    pub fn realize_with_cert(&self, cert: &[(Elem, usize)]) -> Result<RealizedSubgroup> {
        self.realize_inner(Some(cert))
    }

    fn realize_inner(&self, cert: Option<&[(Elem, usize)]>) -> Result<RealizedSubgroup> {
        let p = &self.parent;
        let k = self.members.len();
        let from_parent: HashMap<Elem, usize> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let mut mul = vec![0usize; k * k];
        for i in 0..k {
            for j in 0..k {
                mul[i * k + j] = from_parent[&p.mul(self.members[i], self.members[j])];
            }
        }
        let labels = Some(self.members.iter().map(|&e| p.label(e)).collect());
        let group = match cert {
            Some(cert) => {
                let local: Result<Vec<(Elem, usize)>> = cert
                    .iter()
                    .map(|&(g, m)| {
                        from_parent
                            .get(&g)
                            .map(|&i| (i, m))
                            .ok_or(Error::NotAMember(g))
                    })
                    .collect();
                FiniteGroup::from_mul_table_certified(mul, labels, local?)?
            }
            None => FiniteGroup::from_mul_table(mul, labels)?,
        };
        Ok(RealizedSubgroup {
            parent: Arc::clone(p),
            group,
            to_parent: self.members.clone(),
            from_parent,
        })
    }
}

/// Partition of a group into double cosets H\G/H.
pub struct DoubleCosetDecomposition {
    reps: Vec<Elem>,
    cosets: Vec<Vec<Elem>>,
    coset_of: Vec<usize>,
}

impl DoubleCosetDecomposition {
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn cosets(&self) -> &[Vec<Elem>] {
        &self.cosets
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn coset_index_of(&self, x: Elem) -> usize {
        self.coset_of[x]
    }

    /// Relabel with preferred representatives, one per coset; the output
    /// lists cosets in the order of `preferred`.
    pub fn with_reps(&self, preferred: &[Elem]) -> Result<DoubleCosetDecomposition> {
        if preferred.len() != self.reps.len() {
            return Err(Error::BadRepresentatives(format!(
                "need {} representatives, got {}",
                self.reps.len(),
                preferred.len()
            )));
        }
        let mut seen = vec![false; self.reps.len()];
        let mut reps = Vec::with_capacity(preferred.len());
        let mut cosets = Vec::with_capacity(preferred.len());
        let mut coset_of = vec![usize::MAX; self.coset_of.len()];
        for (new_idx, &r) in preferred.iter().enumerate() {
            if r >= self.coset_of.len() {
                return Err(Error::BadRepresentatives(format!(
                    "element {r} out of range"
                )));
            }
            let old = self.coset_of[r];
            if seen[old] {
                return Err(Error::BadRepresentatives(format!(
                    "element {r} repeats a coset"
                )));
            }
            seen[old] = true;
            reps.push(r);
            cosets.push(self.cosets[old].clone());
            for &m in &self.cosets[old] {
                coset_of[m] = new_idx;
            }
        }
        Ok(DoubleCosetDecomposition {
            reps,
            cosets,
            coset_of,
        })
    }
}

/// A subgroup realized as a standalone `FiniteGroup`, with index maps in
/// both directions.
pub struct RealizedSubgroup {
    pub parent: Arc<FiniteGroup>,
    pub group: Arc<FiniteGroup>,
    to_parent: Vec<Elem>,
    from_parent: HashMap<Elem, usize>,
}

impl RealizedSubgroup {
    pub fn order(&self) -> usize {
        self.to_parent.len()
    }

    pub fn parent_of(&self, local: usize) -> Elem {
        self.to_parent[local]
    }

    pub fn local_of(&self, parent_elem: Elem) -> Option<usize> {
        self.from_parent.get(&parent_elem).copied()
    }

    /// The permutation h ↦ h ◁ s of the subgroup induced by conjugation
    /// by a normalizing parent element.
    pub fn conj_permutation(&self, s: Elem) -> Result<Vec<usize>> {
        self.to_parent
            .iter()
            .map(|&h| {
                self.local_of(self.parent.conj(h, s))
                    .ok_or(Error::NotAMember(s))
            })
            .collect()
    }
}

/// A character of an abelian group, stored as exponents of zeta_N over
/// the group's element list.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Character {
    pub modulus: u32,
    pub values: Vec<u32>,
}

impl Character {
    pub fn trivial(n_elements: usize, modulus: u32) -> Character {
        Character {
            modulus,
            values: vec![0; n_elements],
        }
    }

    #[inline]
    pub fn eval(&self, local: usize) -> u32 {
        self.values[local]
    }

    pub fn mul(&self, other: &Character) -> Character {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.values.len(), other.values.len());
        Character {
            modulus: self.modulus,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a + b) % self.modulus)
                .collect(),
        }
    }

    pub fn inverse(&self) -> Character {
        Character {
            modulus: self.modulus,
            values: self
                .values
                .iter()
                .map(|&a| (self.modulus - a) % self.modulus)
                .collect(),
        }
    }

    pub fn pow(&self, l: i64) -> Character {
        let m = self.modulus as i64;
        Character {
            modulus: self.modulus,
            values: self
                .values
                .iter()
                .map(|&a| (a as i64 * l).rem_euclid(m) as u32)
                .collect(),
        }
    }

    /// Precompose with a permutation of the element list; with the
    /// conjugation permutation of `RealizedSubgroup` this is the action
    /// ˢχ(h) = χ(h ◁ s).
    pub fn permuted(&self, perm: &[usize]) -> Character {
        Character {
            modulus: self.modulus,
            values: perm.iter().map(|&p| self.values[p]).collect(),
        }
    }

    pub fn is_multiplicative(&self, group: &FiniteGroup) -> bool {
        let n = group.order();
        if self.values.len() != n {
            return false;
        }
        for a in 0..n {
            for b in 0..n {
                if (self.values[a] + self.values[b]) % self.modulus != self.values[group.mul(a, b)]
                {
                    return false;
                }
            }
        }
        true
    }
}

/// All |H| characters of an abelian group carrying a cyclic decomposition
/// certificate. Each certificate generator of order m is sent to
/// zeta_N^{(N/m) j} for j = 0..m-1, the last generator varying fastest.
pub fn dual_group(h: &FiniteGroup, modulus: u32) -> Result<Vec<Character>> {
    let cert = h.cyclic_cert().ok_or(Error::MissingCertificate)?;
    for &(_, m) in cert {
        if !(modulus as usize).is_multiple_of(m) {
            return Err(Error::OrderDoesNotDivideModulus { order: m, modulus });
        }
    }
    let radices: Vec<usize> = cert.iter().map(|&(_, m)| m).collect();
    // Factor every element over the certificate generators.
    let mut exps_of = vec![Vec::new(); h.order()];
    let mut seen = vec![false; h.order()];
    for exps in MixedRadix::new(radices.clone()) {
        let mut x = h.id();
        for (&(g, _), &a) in cert.iter().zip(&exps) {
            x = h.mul(x, h.pow(g, a as i64));
        }
        if seen[x] {
            return Err(Error::BadCertificate("non-unique factorization".into()));
        }
        seen[x] = true;
        exps_of[x] = exps;
    }
    if !seen.into_iter().all(|s| s) {
        return Err(Error::BadCertificate(
            "certificate does not span the group".into(),
        ));
    }
    let mut chars = Vec::with_capacity(h.order());
    for j in MixedRadix::new(radices.clone()) {
        let values = (0..h.order())
            .map(|x| {
                let mut e = 0u64;
                for (i, &(_, m)) in cert.iter().enumerate() {
                    e += (modulus as u64 / m as u64) * j[i] as u64 * exps_of[x][i] as u64;
                }
                (e % modulus as u64) as u32
            })
            .collect();
        let chi = Character { modulus, values };
        assert!(
            chi.is_multiplicative(h),
            "dual_group produced a non-character"
        );
        chars.push(chi);
    }
    Ok(chars)
}

/// Direct product of cyclic groups of the given orders, with the
/// canonical certificate (used as a reference model in tests and for
/// identifying character groups).
pub fn abelian_group(orders: &[usize]) -> Result<Arc<FiniteGroup>> {
    if orders.contains(&0) {
        return Err(Error::BadCertificate("zero cyclic order".into()));
    }
    let total: usize = orders.iter().product();
    let tuples: Vec<Vec<usize>> = MixedRadix::new(orders.to_vec()).collect();
    let index_of = |t: &[usize]| -> usize {
        let mut idx = 0;
        for (i, &m) in orders.iter().enumerate() {
            idx = idx * m + t[i];
        }
        idx
    };
    let mut mul = vec![0usize; total * total];
    for (i, a) in tuples.iter().enumerate() {
        for (j, b) in tuples.iter().enumerate() {
            let sum: Vec<usize> = a
                .iter()
                .zip(b)
                .zip(orders)
                .map(|((x, y), m)| (x + y) % m)
                .collect();
            mul[i * total + j] = index_of(&sum);
        }
    }
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let cert: Vec<(Elem, usize)> = orders
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let mut unit = vec![0usize; orders.len()];
            unit[i] = 1 % m;
            (index_of(&unit), m)
        })
        .collect();
    // A factor of order 1 contributes the identity as "generator"; drop
    // those from the certificate to keep generators independent.
    let cert: Vec<(Elem, usize)> = cert.into_iter().filter(|&(_, m)| m > 1).collect();
    FiniteGroup::from_mul_table_certified(mul, Some(labels), cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> Arc<FiniteGroup> {
        abelian_group(&[4]).unwrap()
    }

    #[test]
    fn abelian_group_basics() {
        let g = z4();
        assert_eq!(g.order(), 4);
        assert_eq!(g.id(), 0);
        assert_eq!(g.mul(1, 3), 0);
        assert_eq!(g.inv(1), 3);
        let stats = g.order_statistics();
        assert_eq!(stats, BTreeMap::from([(1, 1), (2, 1), (4, 2)]));
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn rejects_non_associative_table() {
        // A "table" where products are all 0 except a broken corner.
        let mul = vec![0, 1, 1, 0]; // Z2 is fine
        assert!(FiniteGroup::from_mul_table(mul, None).is_ok());
        let broken = vec![0, 1, 2, 2, 0, 1, 1, 2, 2];
        assert!(FiniteGroup::from_mul_table(broken, None).is_err());
    }

    #[test]
    fn rejects_oversized_group() {
        let n = 513usize;
        let mut mul = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = (a + b) % n;
            }
        }
        assert!(matches!(
            FiniteGroup::from_mul_table(mul, None),
            Err(Error::OrderTooLarge(513))
        ));
    }

    #[test]
    fn subgroup_generated_by_nothing_is_trivial() {
        let g = z4();
        let s = Subgroup::generated(&g, &[]).unwrap();
        assert_eq!(s.members(), &[0]);
    }

    #[test]
    fn dual_group_of_z4() {
        let g = z4();
        let chars = dual_group(&g, 36).unwrap();
        assert_eq!(chars.len(), 4);
        // Generator character sends the generator to zeta^(36/4) = i.
        assert_eq!(chars[1].eval(1), 9);
        for c in &chars {
            assert!(c.is_multiplicative(&g));
        }
        let distinct: HashSet<_> = chars.iter().map(|c| c.values.clone()).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn dual_group_of_trivial_group() {
        let g = abelian_group(&[1]).unwrap();
        let chars = dual_group(&g, 36).unwrap();
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].values, vec![0]);
    }

    #[test]
    fn dual_group_requires_certificate() {
        let g = z4();
        let doc = g.to_document();
        let uncertified = FiniteGroup::from_mul_table(doc.mul, doc.labels).unwrap();
        assert!(matches!(
            dual_group(&uncertified, 36),
            Err(Error::MissingCertificate)
        ));
    }

    #[test]
    fn dual_group_modulus_divisibility() {
        let g = abelian_group(&[5]).unwrap();
        assert!(matches!(
            dual_group(&g, 36),
            Err(Error::OrderDoesNotDivideModulus {
                order: 5,
                modulus: 36
            })
        ));
    }

    #[test]
    fn bad_certificate_rejected() {
        // (Z2)^2 with a "certificate" claiming a single generator of order 4.
        let mut mul = vec![0usize; 16];
        for a in 0..4 {
            for b in 0..4 {
                mul[a * 4 + b] = a ^ b;
            }
        }
        assert!(FiniteGroup::from_mul_table_certified(mul, None, vec![(1, 4)]).is_err());
    }

    #[test]
    fn group_document_round_trip() {
        let g = z4();
        let doc = g.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: GroupDocument = serde_json::from_str(&json).unwrap();
        let g2 = FiniteGroup::from_document(back).unwrap();
        assert_eq!(g2.order(), 4);
        assert_eq!(g2.cyclic_cert(), g.cyclic_cert());
    }

    #[test]
    fn double_cosets_of_whole_group() {
        let g = z4();
        let whole = Subgroup::whole(&g);
        let dc = whole.double_cosets();
        assert_eq!(dc.len(), 1);
        assert_eq!(dc.cosets()[0].len(), 4);
    }

    #[test]
    fn realized_subgroup_round_trip() {
        let g = abelian_group(&[2, 4]).unwrap();
        let s = Subgroup::generated(&g, &[1]).unwrap(); // second factor gen
        let r = s.realize();
        assert_eq!(r.order(), 4);
        for i in 0..r.order() {
            assert_eq!(r.local_of(r.parent_of(i)), Some(i));
        }
    }

    #[test]
    fn mixed_radix_enumeration() {
        let all: Vec<Vec<usize>> = MixedRadix::new(vec![2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[5], vec![1, 2]);
    }
}
