//! The category data attached to (G, omega, H): double cosets, simple
//! objects with their projective characters and Frobenius-Perron
//! dimensions, near-group recognition, and Frobenius-Schur indicators
//! computed by the rotation-trace formula
//!
//!   nu_k(X_{g,chi}) = (1/|H^g|) sum_{r in gH, r^k in H^g}
//!                     pi_{-k}(r) chi(r^{-k}),
//!
//! evaluated exactly in Z[zeta_N].

use std::sync::Arc;

use crate::cochain::{
    adaptedness_violation, adaptedness_violation_sampled, omega_n, require_supported_modulus,
    schur_shortcut, solve_coboundary, Cochain,
};
use crate::concrete::{build_gn, GnData};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::group::{
    dual_group, Character, DoubleCosetDecomposition, Elem, FiniteGroup, RealizedSubgroup, Subgroup,
};

/// Exhaustive adaptedness verification is used up to this many
/// (g1, g2, h) triples; beyond it, seeded sampling.
const EXHAUSTIVE_ADAPTED_LIMIT: usize = 5_000_000;
const DEFAULT_SEED: u64 = 42;
const DEFAULT_SAMPLES: usize = 1_000_000;

/// The data (G, omega adapted, H) with its double-coset decomposition.
/// The twist label l is bookkeeping for reports; all computation runs
/// off the stored omega table.
pub struct GTCategory {
    pub group: Arc<FiniteGroup>,
    pub subgroup: Subgroup,
    pub realized_h: Arc<RealizedSubgroup>,
    pub omega: Cochain,
    pub twist_label: i64,
    pub cosets: DoubleCosetDecomposition,
}

impl GTCategory {
    pub fn new(
        subgroup: Subgroup,
        h_cert: Option<&[(Elem, usize)]>,
        omega: Cochain,
        twist_label: i64,
    ) -> Result<GTCategory> {
        GTCategory::with_sampling(
            subgroup,
            h_cert,
            omega,
            twist_label,
            DEFAULT_SEED,
            DEFAULT_SAMPLES,
        )
    }

    pub fn with_sampling(
        subgroup: Subgroup,
        h_cert: Option<&[(Elem, usize)]>,
        omega: Cochain,
        twist_label: i64,
        seed: u64,
        samples: usize,
    ) -> Result<GTCategory> {
        if omega.degree() != 3 {
            return Err(Error::UnsupportedDegree(omega.degree()));
        }
        let group = Arc::clone(&subgroup.parent);
        if !Arc::ptr_eq(omega.group(), &group) && !omega.group().same_table(&group) {
            return Err(Error::GroupMismatch);
        }
        let triples = group.order() * group.order() * subgroup.order();
        let violation = if triples <= EXHAUSTIVE_ADAPTED_LIMIT {
            adaptedness_violation(&omega, &subgroup)?
        } else {
            adaptedness_violation_sampled(&omega, &subgroup, seed, samples)?
        };
        if let Some((g1, g2, h)) = violation {
            return Err(Error::NotAdapted(g1, g2, h));
        }
        let realized_h = Arc::new(match h_cert {
            Some(cert) => subgroup.realize_with_cert(cert)?,
            None => subgroup.realize(),
        });
        let cosets = subgroup.double_cosets();
        Ok(GTCategory {
            group,
            subgroup,
            realized_h,
            omega,
            twist_label,
            cosets,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.omega.modulus()
    }

    /// The same category with the double cosets relabeled by preferred
    /// representatives (for reporting aligned with the reference
    /// elements gamma_0, gamma_1, gamma_2).
    pub fn relabel_cosets(self, preferred: &[Elem]) -> Result<GTCategory> {
        let cosets = self.cosets.with_reps(preferred)?;
        Ok(GTCategory { cosets, ..self })
    }
}

/// A simple object X_{g,chi}: a double-coset representative together
/// with a degree-1 projective character of the stabilizer H^g.
#[derive(Clone)]
pub struct SimpleObject {
    pub rep: Elem,
    pub coset_index: usize,
    pub fpdim: usize,
    /// Projective character values (exponents of zeta_N) over the local
    /// element order of `stabilizer`.
    pub character: Character,
    pub stabilizer: Arc<RealizedSubgroup>,
}

impl PartialEq for SimpleObject {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.character == other.character
    }
}

impl Eq for SimpleObject {}

/// Shape summary of a near-group category: rho is the unique
/// non-invertible simple, with rho^2 = m rho + sum over the invertibles.
pub struct NearGroupSummary {
    pub invertible_count: usize,
    pub rho: SimpleObject,
    pub fpdim_rho: usize,
    pub multiplicity: usize,
}

fn realize_stabilizer(
    cat: &GTCategory,
    rep: Elem,
    stab: &Subgroup,
) -> Result<Arc<RealizedSubgroup>> {
    if stab.members() == cat.subgroup.members() && cat.realized_h.group.cyclic_cert().is_some() {
        return Ok(Arc::clone(&cat.realized_h));
    }
    let p = &cat.group;
    if stab.order() == 1 {
        return Ok(Arc::new(stab.realize_with_cert(&[])?));
    }
    // a cyclic stabilizer certifies itself by any element of full order
    if let Some(&g) = stab
        .members()
        .iter()
        .find(|&&g| p.element_order(g) == stab.order())
    {
        return Ok(Arc::new(stab.realize_with_cert(&[(g, stab.order())])?));
    }
    let abelian = stab
        .members()
        .iter()
        .all(|&a| stab.members().iter().all(|&b| p.mul(a, b) == p.mul(b, a)));
    let reason = if abelian {
        "abelian stabilizer carries no cyclic decomposition certificate".to_string()
    } else {
        "stabilizer is nonabelian; only degree-1 projective characters are supported".to_string()
    };
    Err(Error::UnsupportedConfiguration {
        rep_label: p.label(rep),
        reason,
    })
}

/// The simple objects of C(G, omega, H, 1): for each double coset HgH
/// with stabilizer H^g, the characters tau * eta where d(eta) = omega_g
/// and tau runs over the dual of H^g. FPdim X = |HgH| / |H|.
pub fn simples(cat: &GTCategory) -> Result<Vec<SimpleObject>> {
    let modulus = cat.modulus();
    let mut out = Vec::new();
    for (ci, &rep) in cat.cosets.reps().iter().enumerate() {
        let stab_sub = cat.subgroup.conj_intersection(rep);
        let stab = realize_stabilizer(cat, rep, &stab_sub)?;
        let w_g = schur_shortcut(&cat.omega, rep, &stab)?;
        let eta = solve_coboundary(&w_g)?.ok_or_else(|| Error::UnsupportedConfiguration {
            rep_label: cat.group.label(rep),
            reason: "the Schur multiplier omega_g is cohomologically nontrivial".to_string(),
        })?;
        let fpdim = cat.cosets.cosets()[ci].len() / cat.subgroup.order();
        for tau in dual_group(&stab.group, modulus)? {
            let values: Vec<u32> = (0..stab.order())
                .map(|i| (tau.eval(i) + eta.eval(&[i])) % modulus)
                .collect();
            let character = Character { modulus, values };
            debug_assert!(projective_identity_holds(&character, &w_g, &stab));
            out.push(SimpleObject {
                rep,
                coset_index: ci,
                fpdim,
                character,
                stabilizer: Arc::clone(&stab),
            });
        }
    }
    Ok(out)
}

/// chi(h) chi(k) = omega_g(h, k) chi(hk) over all stabilizer pairs.
pub fn projective_identity_holds(chi: &Character, w_g: &Cochain, stab: &RealizedSubgroup) -> bool {
    let n = stab.order();
    let m = chi.modulus;
    for h in 0..n {
        for k in 0..n {
            let lhs = (chi.eval(h) + chi.eval(k)) % m;
            let rhs = (w_g.eval(&[h, k]) + chi.eval(stab.group.mul(h, k))) % m;
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Checks that exactly one simple is non-invertible and that the global
/// dimension sum matches |G|; returns the near-group shape data.
pub fn near_group_check(cat: &GTCategory, objects: &[SimpleObject]) -> Result<NearGroupSummary> {
    let invertible_count = objects.iter().filter(|s| s.fpdim == 1).count();
    let non_invertible: Vec<&SimpleObject> = objects.iter().filter(|s| s.fpdim > 1).collect();
    if non_invertible.len() != 1 {
        return Err(Error::NotNearGroup(format!(
            "{} non-invertible simples, expected exactly 1",
            non_invertible.len()
        )));
    }
    let rho = non_invertible[0].clone();
    let d = rho.fpdim;
    let global: usize = objects.iter().map(|s| s.fpdim * s.fpdim).sum();
    if global != cat.group.order() {
        return Err(Error::NotNearGroup(format!(
            "global dimension {global} differs from |G| = {}",
            cat.group.order()
        )));
    }
    if d * d < invertible_count || !(d * d - invertible_count).is_multiple_of(d) {
        return Err(Error::NotNearGroup(format!(
            "multiplicity (d^2 - {invertible_count}) / d is not a nonnegative integer for d = {d}"
        )));
    }
    let multiplicity = (d * d - invertible_count) / d;
    Ok(NearGroupSummary {
        invertible_count,
        rho,
        fpdim_rho: d,
        multiplicity,
    })
}

/// The scalar pi_k(x) as an exponent of zeta_N, for any integer k:
/// pi_0(x) = 1, pi_{k+1}(x) = omega(x, x^k, x) pi_k(x), extended
/// downward by inverting the recursion.
pub fn pi_exponent(omega: &Cochain, x: Elem, k: i64) -> u32 {
    let g = omega.group();
    let m = omega.modulus() as i64;
    let mut acc: i64 = 0;
    if k >= 0 {
        for j in 0..k {
            acc += omega.eval(&[x, g.pow(x, j), x]) as i64;
        }
    } else {
        for j in k..0 {
            acc -= omega.eval(&[x, g.pow(x, j), x]) as i64;
        }
    }
    acc.rem_euclid(m) as u32
}

/// The closed product form pi_{-k}(r) = prod_{j=1}^{k} omega(r, r^{-j}, r)^{-1}
/// for k >= 1, kept as an independent oracle for the recursion.
pub fn pi_negative_closed(omega: &Cochain, r: Elem, k: u32) -> u32 {
    let g = omega.group();
    let m = omega.modulus() as i64;
    let mut acc: i64 = 0;
    for j in 1..=k as i64 {
        acc -= omega.eval(&[r, g.pow(r, -j), r]) as i64;
    }
    acc.rem_euclid(m) as u32
}

/// nu_k(X_{g,chi}), exact in Z[zeta_N]. The division by |H^g| must be
/// exact; a fractional result signals an implementation bug.
pub fn fs_indicator(cat: &GTCategory, s: &SimpleObject, k: u32) -> Result<CycInt> {
    assert!(k >= 1, "indicator order k must be positive");
    let g = &cat.group;
    let modulus = cat.modulus();
    let stab = &s.stabilizer;
    let mut sum = CycInt::zero(modulus);
    for &h in cat.subgroup.members() {
        let r = g.mul(s.rep, h);
        let rk = g.pow(r, k as i64);
        if stab.local_of(rk).is_some() {
            let chi_at = stab
                .local_of(g.inv(rk))
                .expect("stabilizer is closed under inversion");
            let e = (pi_exponent(&cat.omega, r, -(k as i64)) + s.character.eval(chi_at)) % modulus;
            sum = sum.add(&CycInt::root_of_unity(modulus, e as i64));
        }
    }
    let scaled = sum.scaled(1, stab.order() as u64);
    if !scaled.is_integral() {
        return Err(Error::InexactIndicatorDivision(stab.order()));
    }
    Ok(scaled)
}

/// Builder for the family C_{n,l} = C(G_n, omega_n^l, H_n, 1): the
/// group tower is constructed once per n, then powered per l.
pub struct CategoryFamily {
    pub gn: GnData,
    pub modulus: u32,
    omega_base: Cochain,
}

impl CategoryFamily {
    pub fn new(n: usize, modulus: u32) -> Result<CategoryFamily> {
        require_supported_modulus(modulus)?;
        let gn = build_gn(n)?;
        let omega_base = omega_n(&gn, modulus)?;
        Ok(CategoryFamily {
            gn,
            modulus,
            omega_base,
        })
    }

    /// omega_n (the l = 1 cocycle).
    pub fn omega(&self) -> &Cochain {
        &self.omega_base
    }

    pub fn category(&self, l: i64) -> Result<GTCategory> {
        GTCategory::new(
            self.gn.hn.clone(),
            Some(&self.gn.hn_cert),
            self.omega_base.power(l),
            l,
        )
    }

    /// The reference representatives: the elements of K_n (identity
    /// first) followed by gamma_2.
    pub fn reference_reps(&self) -> Vec<Elem> {
        let mut reps: Vec<Elem> = self.gn.kn.members().to_vec();
        reps.push(self.gn.gamma2);
        reps
    }

    /// The category with cosets labeled by the reference representatives.
    pub fn category_with_reference_reps(&self, l: i64) -> Result<GTCategory> {
        self.category(l)?.relabel_cosets(&self.reference_reps())
    }
}
