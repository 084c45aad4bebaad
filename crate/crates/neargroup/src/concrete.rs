//! The concrete groups the construction runs on: S3 and S4 with their
//! normal-form element orderings, the quotient S4 -> S3, the sign
//! cochain epsilon, and the two-parameter family
//! G_n = (V_n ⊕ V_n) ⋊ S4 with V_n = F_2^(n-1), together with the
//! subgroups H_n and K_n.
//!
//! Element indexing is fixed once and for all:
//!   S3: (123)^x (13)^y            -> index 2x + y
//!   S4: (123)^x (13)^y (1234)^z   -> index 8x + 4y + z
//!   G_n: ((v, w), g)              -> index (v * 2^(n-1) + w) * 24 + g
//! so identities and double-coset representatives are reproducible.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupHom, RealizedSubgroup, Subgroup};

type Perm4 = [usize; 4];

/// (g · h)(x) = g(h(x)): the right factor acts first.
fn pcompose(g: Perm4, h: Perm4) -> Perm4 {
    [g[h[0]], g[h[1]], g[h[2]], g[h[3]]]
}

const P_123: Perm4 = [1, 2, 0, 3];
const P_13: Perm4 = [2, 1, 0, 3];
const P_1234: Perm4 = [1, 2, 3, 0];
const P_ID: Perm4 = [0, 1, 2, 3];

fn ppow(p: Perm4, k: usize) -> Perm4 {
    let mut acc = P_ID;
    for _ in 0..k {
        acc = pcompose(acc, p);
    }
    acc
}

pub fn s3_index(x: usize, y: usize) -> Elem {
    2 * (x % 3) + (y % 2)
}

pub fn s3_coords(g: Elem) -> (usize, usize) {
    (g / 2, g % 2)
}

pub fn s4_index(x: usize, y: usize, z: usize) -> Elem {
    8 * (x % 3) + 4 * (y % 2) + (z % 4)
}

/// The unique (x, y, z) with g = (123)^x (13)^y (1234)^z in canonical
/// S4 indexing.
pub fn s4_normal_form(g: Elem) -> (usize, usize, usize) {
    (g / 8, (g % 8) / 4, g % 4)
}

/// The permutation of {0,1,2,3} realizing canonical S4 element `g`.
pub fn s4_perm(g: Elem) -> Perm4 {
    let (x, y, z) = s4_normal_form(g);
    pcompose(pcompose(ppow(P_123, x), ppow(P_13, y)), ppow(P_1234, z))
}

/// Canonical index of the S4 element with the given images (0-based).
pub fn s4_elem_from_images(images: Perm4) -> Elem {
    (0..24)
        .find(|&g| s4_perm(g) == images)
        .expect("every permutation has a normal form")
}

fn s3_table() -> Vec<Elem> {
    let mut mul = vec![0usize; 36];
    for g in 0..6 {
        let (x1, y1) = s3_coords(g);
        for h in 0..6 {
            let (x2, y2) = s3_coords(h);
            let x = if y1 == 0 {
                (x1 + x2) % 3
            } else {
                (x1 + 3 - x2 % 3) % 3
            };
            mul[g * 6 + h] = s3_index(x, (y1 + y2) % 2);
        }
    }
    mul
}

fn s4_table() -> Vec<Elem> {
    let perms: Vec<Perm4> = (0..24).map(s4_perm).collect();
    let index: HashMap<Perm4, Elem> = perms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    assert_eq!(index.len(), 24, "S4 normal forms must be pairwise distinct");
    let mut mul = vec![0usize; 24 * 24];
    for g in 0..24 {
        for h in 0..24 {
            mul[g * 24 + h] = index[&pcompose(perms[g], perms[h])];
        }
    }
    mul
}

fn power_label(base: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

fn s3_label(g: Elem) -> String {
    let (x, y) = s3_coords(g);
    let s = format!("{}{}", power_label("(123)", x), power_label("(13)", y));
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

fn s4_label(g: Elem) -> String {
    let (x, y, z) = s4_normal_form(g);
    let s = format!(
        "{}{}{}",
        power_label("(123)", x),
        power_label("(13)", y),
        power_label("(1234)", z)
    );
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// S_n for n in {3, 4}, with the normal-form element order and labels.
pub fn symmetric_group(n: usize) -> Result<Arc<FiniteGroup>> {
    match n {
        3 => FiniteGroup::from_mul_table(s3_table(), Some((0..6).map(s3_label).collect())),
        4 => FiniteGroup::from_mul_table(s4_table(), Some((0..24).map(s4_label).collect())),
        _ => Err(Error::UnsupportedSymmetricGroup(n)),
    }
}

fn expect_canonical(g: &Arc<FiniteGroup>, table: Vec<Elem>, name: &'static str) -> Result<()> {
    if g.order() * g.order() != table.len()
        || (0..g.order() * g.order()).any(|i| g.mul(i / g.order(), i % g.order()) != table[i])
    {
        return Err(Error::NotCanonicalGroup {
            order: g.order(),
            expected: name,
        });
    }
    Ok(())
}

pub fn is_canonical_s3(g: &Arc<FiniteGroup>) -> Result<()> {
    expect_canonical(g, s3_table(), "S3")
}

pub fn is_canonical_s4(g: &Arc<FiniteGroup>) -> Result<()> {
    expect_canonical(g, s4_table(), "S4")
}

/// The quotient map S4 -> S4/N ≅ S3 killing
/// N = {e, (12)(34), (13)(24), (14)(23)}; in normal form
/// (x, y, z) ↦ (x, [y+z]_2), and its restriction to the embedded S3 is
/// the identity.
pub fn quotient_pi(s4: &Arc<FiniteGroup>, s3: &Arc<FiniteGroup>) -> Result<GroupHom> {
    is_canonical_s4(s4)?;
    is_canonical_s3(s3)?;
    let map = (0..24)
        .map(|g| {
            let (x, y, z) = s4_normal_form(g);
            s3_index(x, (y + z) % 2)
        })
        .collect();
    GroupHom::new(Arc::clone(s4), Arc::clone(s3), map)
}

/// Parity exponent of a canonical S4 element: sgn(g) = (-1)^epsilon(g).
pub fn epsilon_s4(g: Elem) -> u32 {
    let (_, y, z) = s4_normal_form(g);
    ((y + z) % 2) as u32
}

/// The embedded copy of S3 inside canonical S4 (the z = 0 block).
pub fn s3_in_s4(s4: &Arc<FiniteGroup>) -> Result<Subgroup> {
    is_canonical_s4(s4)?;
    Subgroup::new(
        Arc::clone(s4),
        (0..6)
            .map(|g| {
                let (x, y) = s3_coords(g);
                s4_index(x, y, 0)
            })
            .collect(),
    )
}

/// 2x2 matrices over F_2 realizing the S3-action on V ⊕ V; indexed by
/// canonical S3 element, entries (a, b, c, d) act as
/// (v, w) ↦ (a v + b w, c v + d w).
const S3_MATRICES: [(u8, u8, u8, u8); 6] = [
    (1, 0, 0, 1), // e
    (1, 1, 0, 1), // (13):  (v, w) -> (v + w, w)
    (1, 1, 1, 0), // (123): (v, w) -> (v + w, v)
    (1, 0, 1, 1), // (23):  (v, w) -> (v, v + w)
    (0, 1, 1, 1), // (132): (v, w) -> (w, v + w)
    (0, 1, 1, 0), // (12):  (v, w) -> (w, v)
];

fn s3_matrix(s3_elem: Elem) -> (u8, u8, u8, u8) {
    let (x, y) = s3_coords(s3_elem);
    match (x, y) {
        (0, 0) => S3_MATRICES[0],
        (0, 1) => S3_MATRICES[1],
        (1, 0) => S3_MATRICES[2],
        (1, 1) => S3_MATRICES[3],
        (2, 0) => S3_MATRICES[4],
        (2, 1) => S3_MATRICES[5],
        _ => unreachable!(),
    }
}

fn mat_apply(m: (u8, u8, u8, u8), v: usize, w: usize) -> (usize, usize) {
    let (a, b, c, d) = m;
    let pick = |bit: u8, x: usize| if bit == 1 { x } else { 0 };
    (pick(a, v) ^ pick(b, w), pick(c, v) ^ pick(d, w))
}

fn mat_mul(m: (u8, u8, u8, u8), n: (u8, u8, u8, u8)) -> (u8, u8, u8, u8) {
    let (a, b, c, d) = m;
    let (e, f, g, h) = n;
    (
        (a & e) ^ (b & g),
        (a & f) ^ (b & h),
        (c & e) ^ (d & g),
        (c & f) ^ (d & h),
    )
}

/// The group G_n = (V_n ⊕ V_n) ⋊ S4 with all the attached structure the
/// construction needs: the projection p onto S4, the quotient pi onto
/// S3, the abelian subgroup H_n (with its cyclic certificate), the
/// subgroup K_n, and the reference elements gamma_1, gamma_2.
pub struct GnData {
    pub n: usize,
    pub group: Arc<FiniteGroup>,
    pub s4: Arc<FiniteGroup>,
    pub s3: Arc<FiniteGroup>,
    /// Projection G_n -> S4.
    pub p: GroupHom,
    /// Quotient S4 -> S3.
    pub pi: GroupHom,
    pub hn: Subgroup,
    /// H_n as a standalone group carrying the certificate
    /// {(e_i, 0)}_i ∪ {(1234)} realizing Z_2^(n-1) x Z_4.
    pub hn_realized: RealizedSubgroup,
    /// The same certificate in parent (G_n) element indices.
    pub hn_cert: Vec<(Elem, usize)>,
    pub kn: Subgroup,
    pub gamma1: Elem,
    pub gamma2: Elem,
}

impl GnData {
    pub fn v_dim(&self) -> usize {
        self.n - 1
    }

    /// (v, w, s4 part) coordinates of a G_n element.
    pub fn decompose(&self, g: Elem) -> (usize, usize, Elem) {
        let nv = 1usize << self.v_dim();
        (g / 24 / nv, (g / 24) % nv, g % 24)
    }

    pub fn compose(&self, v: usize, w: usize, s4_elem: Elem) -> Elem {
        let nv = 1usize << self.v_dim();
        (v * nv + w) * 24 + s4_elem
    }

    /// S4 embeds as the (v, w) = (0, 0) block; indices coincide.
    pub fn embed_s4(&self, s4_elem: Elem) -> Elem {
        s4_elem
    }

    /// Parity taken of the S4 component; the V_n ⊕ V_n part is even.
    pub fn epsilon(&self, g: Elem) -> u32 {
        epsilon_s4(self.p.apply(g))
    }
}

pub fn build_gn(n: usize) -> Result<GnData> {
    if n < 1 {
        return Err(Error::BadGnParameter(n));
    }
    let dim = n - 1;
    let nv = 1usize << dim;
    let order = nv * nv * 24;
    if order > crate::group::MAX_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    let s3 = symmetric_group(3)?;
    let s4 = symmetric_group(4)?;
    let pi = quotient_pi(&s4, &s3)?;

    // The matrix table must itself be an S3-representation.
    for s in 0..6 {
        for t in 0..6 {
            let st = s3.mul(s, t);
            assert_eq!(s3_matrix(st), mat_mul(s3_matrix(s), s3_matrix(t)));
        }
    }

    let compose = |v: usize, w: usize, g: Elem| (v * nv + w) * 24 + g;
    let mut mul = vec![0usize; order * order];
    for v1 in 0..nv {
        for w1 in 0..nv {
            for g in 0..24usize {
                let m = s3_matrix(pi.apply(g));
                let a = compose(v1, w1, g);
                for v2 in 0..nv {
                    for w2 in 0..nv {
                        let (av, aw) = mat_apply(m, v2, w2);
                        let (rv, rw) = (v1 ^ av, w1 ^ aw);
                        for h in 0..24usize {
                            mul[a * order + compose(v2, w2, h)] = compose(rv, rw, s4.mul(g, h));
                        }
                    }
                }
            }
        }
    }
    let bits = |v: usize| -> String {
        (0..dim)
            .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    };
    let labels: Vec<String> = (0..order)
        .map(|e| {
            let (v, w, g) = (e / 24 / nv, (e / 24) % nv, e % 24);
            if dim == 0 {
                s4_label(g)
            } else {
                format!("({}|{}){}", bits(v), bits(w), s4_label(g))
            }
        })
        .collect();
    let group = FiniteGroup::from_mul_table(mul, Some(labels))?;

    let p = GroupHom::new(
        Arc::clone(&group),
        Arc::clone(&s4),
        (0..order).map(|e| e % 24).collect(),
    )?;

    let hn_members: Vec<Elem> = (0..nv)
        .flat_map(|v| (0..4).map(move |z| (v, z)))
        .map(|(v, z)| compose(v, 0, s4_index(0, 0, z)))
        .collect();
    let hn = Subgroup::new(Arc::clone(&group), hn_members)?;
    let mut cert: Vec<(Elem, usize)> = (0..dim).map(|i| (compose(1 << i, 0, 0), 2)).collect();
    cert.push((compose(0, 0, s4_index(0, 0, 1)), 4));
    let hn_realized = hn.realize_with_cert(&cert)?;

    let gamma1 = compose(0, 0, s4_index(0, 1, 1));
    let gamma2 = compose(0, 0, s4_index(1, 0, 0));
    let kn_members: Vec<Elem> = (0..nv)
        .flat_map(|w| [compose(0, w, 0), group.mul(compose(0, w, 0), gamma1)])
        .collect();
    let kn = Subgroup::new(Arc::clone(&group), kn_members)?;

    Ok(GnData {
        n,
        group,
        s4,
        s3,
        p,
        pi,
        hn,
        hn_realized,
        hn_cert: cert,
        kn,
        gamma1,
        gamma2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dual_group;
    use std::collections::BTreeMap;

    #[test]
    fn s3_law_matches_semidirect_formula() {
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.id(), s3_index(0, 0));
        // (1,0)·(1,0) = (2,0): [x1 + (-1)^{y1} x2]_3 law
        assert_eq!(s3.mul(s3_index(1, 0), s3_index(1, 0)), s3_index(2, 0));
        assert_eq!(s3.mul(s3_index(1, 1), s3_index(1, 0)), s3_index(0, 1));
        assert_eq!(s3.label(s3_index(1, 1)), "(123)(13)");
    }

    #[test]
    fn s4_normal_forms_are_unique_and_match_known_identities() {
        let s4 = symmetric_group(4).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4_normal_form(s4.id()), (0, 0, 0));
        // gamma_1 = (12)(34) = (13)(1234)
        let g1 = s4_elem_from_images([1, 0, 3, 2]);
        assert_eq!(s4_normal_form(g1), (0, 1, 1));
        // (14) = (123)(1234)^3
        let e14 = s4_elem_from_images([3, 1, 2, 0]);
        assert_eq!(s4_normal_form(e14), (1, 0, 3));
    }

    #[test]
    fn s4_order_census() {
        let s4 = symmetric_group(4).unwrap();
        let stats = s4.order_statistics();
        assert_eq!(stats, BTreeMap::from([(1, 1), (2, 9), (3, 8), (4, 6)]));
    }

    #[test]
    fn unsupported_symmetric_group() {
        assert!(matches!(
            symmetric_group(5),
            Err(Error::UnsupportedSymmetricGroup(5))
        ));
    }

    #[test]
    fn quotient_pi_values() {
        let s4 = symmetric_group(4).unwrap();
        let s3 = symmetric_group(3).unwrap();
        let pi = quotient_pi(&s4, &s3).unwrap();
        // (1234) -> (13)
        assert_eq!(pi.apply(s4_index(0, 0, 1)), s3_index(0, 1));
        // kernel N = {e, (12)(34), (13)(24), (14)(23)}
        for images in [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]] {
            assert_eq!(pi.apply(s4_elem_from_images(images)), s3.id());
        }
        // (14) -> (23) = (123)(13)
        assert_eq!(pi.apply(s4_elem_from_images([3, 1, 2, 0])), s3_index(1, 1));
        // restriction to the embedded S3 is the identity
        for g in 0..6 {
            let (x, y) = s3_coords(g);
            assert_eq!(pi.apply(s4_index(x, y, 0)), g);
        }
        assert!(pi.is_surjective());
    }

    #[test]
    fn epsilon_is_the_permutation_parity() {
        fn parity(p: Perm4) -> u32 {
            let mut inv = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            inv % 2
        }
        let s4 = symmetric_group(4).unwrap();
        for g in 0..24 {
            assert_eq!(epsilon_s4(g), parity(s4_perm(g)), "element {g}");
        }
        assert_eq!(epsilon_s4(s4.id()), 0);
        assert_eq!(epsilon_s4(s4_index(0, 0, 1)), 1); // (1234)
        assert_eq!(epsilon_s4(s4_index(1, 0, 0)), 0); // (123)
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(
                    epsilon_s4(s4.mul(a, b)),
                    (epsilon_s4(a) + epsilon_s4(b)) % 2
                );
            }
        }
    }

    #[test]
    fn subgroups_of_s4() {
        let s4 = symmetric_group(4).unwrap();
        let h = Subgroup::generated(&s4, &[s4_index(0, 0, 1)]).unwrap();
        assert_eq!(h.order(), 4);
        let d8 = Subgroup::generated(&s4, &[s4_index(0, 0, 1), s4_index(0, 1, 1)]).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(h.normalizer().order(), 8);
        assert_eq!(h.normalizer().members(), d8.members());
        assert_eq!(Subgroup::center(&s4).members(), &[s4.id()]);
        // derived subgroup of S4 is A4
        assert_eq!(Subgroup::derived_subgroup(&s4).order(), 12);
    }

    #[test]
    fn conjugation_action() {
        let s4 = symmetric_group(4).unwrap();
        let c = s4_index(0, 0, 1); // (1234)
        let g1 = s4_index(0, 1, 1); // (12)(34)
        assert_eq!(s4.conj(c, s4.id()), c);
        assert_eq!(s4.conj(c, g1), s4.inv(c));
        // (x ◁ g) ◁ h = x ◁ (gh)
        for x in 0..24 {
            for g in 0..24 {
                for h in 0..24 {
                    assert_eq!(s4.conj(s4.conj(x, g), h), s4.conj(x, s4.mul(g, h)));
                }
            }
        }
    }

    #[test]
    fn double_cosets_of_h_in_s4() {
        let s4 = symmetric_group(4).unwrap();
        let h = Subgroup::generated(&s4, &[s4_index(0, 0, 1)]).unwrap();
        let dc = h.double_cosets();
        assert_eq!(dc.len(), 3);
        let mut sizes: Vec<usize> = dc.cosets().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 4, 16]);
        // minimal-index representatives: e, (13), (123)
        assert_eq!(dc.reps(), &[0, s4_index(0, 1, 0), s4_index(1, 0, 0)]);
        // relabel with the reference gamma_i
        let gamma1 = s4_index(0, 1, 1);
        let gamma2 = s4_index(1, 0, 0);
        let relabeled = dc.with_reps(&[0, gamma1, gamma2]).unwrap();
        assert_eq!(relabeled.reps(), &[0, gamma1, gamma2]);
        assert_eq!(relabeled.cosets()[1].len(), 4);
        // the 16-element coset contains all transpositions, e.g. (12), (14)
        let c2 = &relabeled.cosets()[2];
        assert!(c2.binary_search(&s4_elem_from_images([1, 0, 2, 3])).is_ok());
        assert!(c2.binary_search(&s4_elem_from_images([3, 1, 2, 0])).is_ok());
        // bad relabelings are rejected
        assert!(dc.with_reps(&[0, gamma1]).is_err());
        assert!(dc.with_reps(&[0, gamma1, gamma1]).is_err());
    }

    #[test]
    fn gn_at_n1_is_s4() {
        let gn = build_gn(1).unwrap();
        assert_eq!(gn.group.order(), 24);
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(gn.group.mul(a, b), gn.s4.mul(a, b));
            }
        }
        assert_eq!(gn.hn.members(), &[0, 1, 2, 3]);
        assert_eq!(gn.kn.members(), &[0, gn.gamma1]);
        assert_eq!(
            gn.hn_realized.group.cyclic_cert(),
            Some(&[(1usize, 4usize)][..])
        );
    }

    #[test]
    fn gn_orders_and_subgroup_shapes() {
        for n in 1..=3usize {
            let gn = build_gn(n).unwrap();
            assert_eq!(gn.group.order(), 3 * (1 << (2 * n + 1)), "order of G_{n}");
            assert_eq!(gn.hn.order(), 1 << (n + 1));
            assert_eq!(gn.kn.order(), 1 << n);
            // K_n is elementary abelian Z_2^n
            let kn = gn.kn.realize();
            assert!(kn.group.is_abelian());
            assert!(kn.group.exponent() <= 2);
            // p restricted to the embedded S4 is the identity
            for g in 0..24 {
                assert_eq!(gn.p.apply(gn.embed_s4(g)), g);
            }
            // N_{G_n}(H_n) = H_n · K_n of order 2^(2n+1)
            assert_eq!(gn.hn.normalizer().order(), 1 << (2 * n + 1));
        }
        assert!(matches!(build_gn(0), Err(Error::BadGnParameter(0))));
        assert!(matches!(build_gn(4), Err(Error::OrderTooLarge(_))));
    }

    #[test]
    fn centralizer_of_the_four_cycle() {
        let s4 = symmetric_group(4).unwrap();
        let c = Subgroup::centralizer(&s4, s4_index(0, 0, 1));
        // the centralizer of (1234) in S4 is <(1234)> itself
        assert_eq!(c.members(), &[0, 1, 2, 3]);
    }

    #[test]
    fn epsilon_extends_additively_to_gn() {
        let gn = build_gn(2).unwrap();
        for a in gn.group.elements() {
            for b in gn.group.elements() {
                assert_eq!(
                    gn.epsilon(gn.group.mul(a, b)),
                    (gn.epsilon(a) + gn.epsilon(b)) % 2
                );
            }
        }
        // the V_n + V_n part is even
        for v in 0..(1 << gn.v_dim()) {
            for w in 0..(1 << gn.v_dim()) {
                assert_eq!(gn.epsilon(gn.compose(v, w, 0)), 0);
            }
        }
    }

    #[test]
    fn gn_commutation_facts() {
        let gn = build_gn(3).unwrap();
        let g = &gn.group;
        let nv = 1 << gn.v_dim();
        // (v, 0) commutes with every h in H
        for v in 0..nv {
            let ve = gn.compose(v, 0, 0);
            for z in 0..4 {
                let h = gn.compose(0, 0, s4_index(0, 0, z));
                assert_eq!(g.mul(ve, h), g.mul(h, ve));
            }
        }
        // gamma_1 commutes with every (v1, v2)
        for v in 0..nv {
            for w in 0..nv {
                let x = gn.compose(v, w, 0);
                assert_eq!(g.mul(gn.gamma1, x), g.mul(x, gn.gamma1));
            }
        }
    }

    #[test]
    fn gn_double_cosets() {
        for n in 1..=3usize {
            let gn = build_gn(n).unwrap();
            let dc = gn.hn.double_cosets();
            assert_eq!(dc.len(), (1 << n) + 1);
            let hn_order = gn.hn.order();
            let mut small = 0;
            let mut big = 0;
            for c in dc.cosets() {
                if c.len() == hn_order {
                    small += 1;
                } else if c.len() == hn_order * hn_order {
                    big += 1;
                }
            }
            assert_eq!(small, 1 << n);
            assert_eq!(big, 1);
            // the big coset is the one of gamma_2
            let idx = dc.coset_index_of(gn.gamma2);
            assert_eq!(dc.cosets()[idx].len(), hn_order * hn_order);
        }
    }

    #[test]
    fn hn_stabilizer_at_gamma2_is_trivial() {
        for n in 1..=3usize {
            let gn = build_gn(n).unwrap();
            let stab = gn.hn.conj_intersection(gn.gamma2);
            assert_eq!(stab.members(), &[gn.group.id()]);
            // and at gamma_1 it is all of H_n
            let stab1 = gn.hn.conj_intersection(gn.gamma1);
            assert_eq!(stab1.members(), gn.hn.members());
        }
    }

    #[test]
    fn dual_group_of_hn() {
        for n in 1..=3usize {
            let gn = build_gn(n).unwrap();
            let chars = dual_group(&gn.hn_realized.group, 36).unwrap();
            assert_eq!(chars.len(), 1 << (n + 1));
            let distinct: std::collections::HashSet<_> =
                chars.iter().map(|c| c.values.clone()).collect();
            assert_eq!(distinct.len(), chars.len());
            // mu_{v*}((v,0)h) = (-1)^{<v,v*>} appears: for each basis dual
            // vector there is a character that is -1 exactly on (e_i, 0)
            // and trivial on (1234).
            let c1234 = gn
                .hn_realized
                .local_of(gn.embed_s4(s4_index(0, 0, 1)))
                .unwrap();
            for i in 0..gn.v_dim() {
                let ei = gn.hn_realized.local_of(gn.compose(1 << i, 0, 0)).unwrap();
                assert!(chars.iter().any(|c| {
                    c.eval(ei) == 18
                        && c.eval(c1234) == 0
                        && (0..gn.v_dim()).all(|j| {
                            j == i
                                || c.eval(
                                    gn.hn_realized.local_of(gn.compose(1 << j, 0, 0)).unwrap(),
                                ) == 0
                        })
                }));
            }
        }
    }

    #[test]
    fn order_two_census_of_gamma2_coset() {
        for n in 1..=3usize {
            let gn = build_gn(n).unwrap();
            let g = &gn.group;
            let coset: Vec<Elem> = gn
                .hn
                .members()
                .iter()
                .map(|&h| g.mul(gn.gamma2, h))
                .collect();
            let order2: Vec<Elem> = coset
                .iter()
                .copied()
                .filter(|&r| g.element_order(r) == 2)
                .collect();
            // (14) is the only order-2 element in (123)H_n
            let e14 = gn.embed_s4(s4_elem_from_images([3, 1, 2, 0]));
            assert_eq!(order2, vec![e14]);
            let order3 = coset.iter().filter(|&&r| g.element_order(r) == 3).count();
            assert_eq!(order3, 1 << n);
        }
    }
}
