//! Torsion-valued group cochains with coboundary calculus.
//!
//! A k-cochain G^k -> mu_N is stored as an exponent table mod N, which
//! makes the coboundary operator linear over Z_N and cohomological
//! triviality decidable by the mod-N solver. Cyclotomic values appear
//! only where sums of roots occur (the indicators); everything here is
//! pure exponent arithmetic.
//!
//! The explicit cochains of the construction live here too: the
//! degree-3 generator omega_0 on S3, its inflation to S4, the sign
//! cochains f_0, f, xi, the adapted cocycle omega = inf(omega_0) d(xi),
//! and its pullback omega_n to G_n.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::concrete::{
    epsilon_s4, is_canonical_s3, is_canonical_s4, quotient_pi, s3_coords, s4_index, s4_normal_form,
    symmetric_group, GnData,
};
use crate::error::{Error, Result};
use crate::group::{Character, Elem, FiniteGroup, GroupHom, RealizedSubgroup, Subgroup};
use crate::solve::{solve_mod_n, SparseRow};

/// Tables up to this many entries are materialized; larger cochains
/// (degree-3 tables on G_n for n >= 2) are evaluated lazily through the
/// projection.
const DENSE_LIMIT: usize = 100_000;

/// Every torsion value used by the construction lives in mu_36
/// (9th roots from alpha, signs, mu_4 from the dual of H); a working
/// modulus must contain them all.
pub fn require_supported_modulus(modulus: u32) -> Result<()> {
    if modulus == 0 || !modulus.is_multiple_of(36) {
        return Err(Error::UnsupportedModulus(modulus));
    }
    Ok(())
}

#[derive(Clone)]
enum Repr {
    Dense(Vec<u32>),
    Pullback {
        map: Arc<Vec<Elem>>,
        base: Arc<Cochain>,
    },
}

/// A k-cochain valued in mu_N, stored as exponents mod N.
#[derive(Clone)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    modulus: u32,
    repr: Repr,
}

fn table_len(order: usize, degree: usize) -> usize {
    order.pow(degree as u32)
}

/// Visit all `k`-tuples over `0..order`, stopping early when the
/// visitor returns false. Returns whether the full range was covered.
pub(crate) fn for_each_tuple(order: usize, k: usize, mut f: impl FnMut(&[Elem]) -> bool) -> bool {
    let mut t = vec![0usize; k];
    loop {
        if !f(&t) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < order {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Groups are interchangeable for cochain purposes when they share a
/// multiplication table (pointer identity is the fast path).
fn compatible(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.same_table(b)
}

impl Cochain {
    pub fn from_table(
        group: Arc<FiniteGroup>,
        degree: usize,
        modulus: u32,
        table: Vec<u32>,
    ) -> Result<Cochain> {
        let expected = table_len(group.order(), degree);
        if table.len() != expected {
            return Err(Error::BadCochainTable {
                got: table.len(),
                expected,
            });
        }
        let table = table.into_iter().map(|e| e % modulus).collect();
        Ok(Cochain {
            group,
            degree,
            modulus,
            repr: Repr::Dense(table),
        })
    }

    pub fn from_fn(
        group: &Arc<FiniteGroup>,
        degree: usize,
        modulus: u32,
        mut f: impl FnMut(&[Elem]) -> u32,
    ) -> Cochain {
        let mut table = Vec::with_capacity(table_len(group.order(), degree));
        for_each_tuple(group.order(), degree, |t| {
            table.push(f(t) % modulus);
            true
        });
        Cochain {
            group: Arc::clone(group),
            degree,
            modulus,
            repr: Repr::Dense(table),
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>, degree: usize, modulus: u32) -> Cochain {
        Cochain {
            group: Arc::clone(group),
            degree,
            modulus,
            repr: Repr::Dense(vec![0; table_len(group.order(), degree)]),
        }
    }

    pub fn from_character(group: &Arc<FiniteGroup>, chi: &Character) -> Cochain {
        Cochain {
            group: Arc::clone(group),
            degree: 1,
            modulus: chi.modulus,
            repr: Repr::Dense(chi.values.clone()),
        }
    }

    /// Precomposition with a homomorphism, kept lazy: the value at
    /// (x_1.., x_k) is the base value at (q(x_1), .., q(x_k)).
    pub fn pullback(hom: &GroupHom, base: &Cochain) -> Result<Cochain> {
        if !compatible(&hom.target, &base.group) {
            return Err(Error::BadPullback);
        }
        Ok(Cochain {
            group: Arc::clone(&hom.source),
            degree: base.degree,
            modulus: base.modulus,
            repr: Repr::Pullback {
                map: Arc::new(hom.map_table().to_vec()),
                base: Arc::new(base.clone()),
            },
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn eval(&self, args: &[Elem]) -> u32 {
        debug_assert_eq!(args.len(), self.degree);
        match &self.repr {
            Repr::Dense(table) => {
                let mut idx = 0usize;
                for &a in args {
                    idx = idx * self.group.order() + a;
                }
                table[idx]
            }
            Repr::Pullback { map, base } => {
                let mut buf = [0usize; 4];
                for (i, &a) in args.iter().enumerate() {
                    buf[i] = map[a];
                }
                base.eval(&buf[..args.len()])
            }
        }
    }

    pub fn dense_values(&self) -> Option<&[u32]> {
        match &self.repr {
            Repr::Dense(t) => Some(t),
            Repr::Pullback { .. } => None,
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.repr, Repr::Dense(_))
    }

    pub fn as_pullback(&self) -> Option<(&[Elem], &Cochain)> {
        match &self.repr {
            Repr::Pullback { map, base } => Some((map.as_slice(), base)),
            Repr::Dense(_) => None,
        }
    }

    pub fn materialize(&self) -> Cochain {
        match &self.repr {
            Repr::Dense(_) => self.clone(),
            Repr::Pullback { .. } => {
                Cochain::from_fn(&self.group, self.degree, self.modulus, |t| self.eval(t))
            }
        }
    }

    /// c^l, multiplying exponents by l mod N; preserves cocycle and
    /// adaptedness properties.
    pub fn power(&self, l: i64) -> Cochain {
        let m = self.modulus as i64;
        match &self.repr {
            Repr::Dense(t) => Cochain {
                group: Arc::clone(&self.group),
                degree: self.degree,
                modulus: self.modulus,
                repr: Repr::Dense(
                    t.iter()
                        .map(|&e| (e as i64 * l).rem_euclid(m) as u32)
                        .collect(),
                ),
            },
            Repr::Pullback { map, base } => Cochain {
                group: Arc::clone(&self.group),
                degree: self.degree,
                modulus: self.modulus,
                repr: Repr::Pullback {
                    map: Arc::clone(map),
                    base: Arc::new(base.power(l)),
                },
            },
        }
    }

    /// Pointwise product (exponent sum) of two cochains on one group.
    pub fn product(&self, other: &Cochain) -> Result<Cochain> {
        if !compatible(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::UnsupportedDegree(other.degree));
        }
        if self.modulus != other.modulus {
            return Err(Error::CochainModulusMismatch(self.modulus, other.modulus));
        }
        Ok(Cochain::from_fn(
            &self.group,
            self.degree,
            self.modulus,
            |t| (self.eval(t) + other.eval(t)) % self.modulus,
        ))
    }

    /// The alternating-sum coboundary evaluated at a (k+1)-tuple,
    /// without materializing d(c).
    pub fn eval_coboundary(&self, args: &[Elem]) -> u32 {
        let k = self.degree;
        debug_assert_eq!(args.len(), k + 1);
        let n = self.modulus as i64;
        let mut acc: i64 = self.eval(&args[1..]) as i64;
        let mut buf = [0usize; 4];
        let mut sign = -1i64;
        for i in 0..k {
            for j in 0..k {
                buf[j] = match j.cmp(&i) {
                    std::cmp::Ordering::Less => args[j],
                    std::cmp::Ordering::Equal => self.group.mul(args[i], args[i + 1]),
                    std::cmp::Ordering::Greater => args[j + 1],
                };
            }
            acc += sign * self.eval(&buf[..k]) as i64;
            sign = -sign;
        }
        let last_sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
        acc += last_sign * self.eval(&args[..k]) as i64;
        acc.rem_euclid(n) as u32
    }

    /// The materialized coboundary d(c), a (k+1)-cochain.
    pub fn coboundary(&self) -> Result<Cochain> {
        if self.degree > 3 {
            return Err(Error::UnsupportedDegree(self.degree));
        }
        let out_len = table_len(self.group.order(), self.degree + 1);
        if out_len > 20_000_000 {
            return Err(Error::SystemTooLarge {
                unknowns: out_len,
                equations: 0,
            });
        }
        let mut table = Vec::with_capacity(out_len);
        for_each_tuple(self.group.order(), self.degree + 1, |t| {
            table.push(self.eval_coboundary(t));
            true
        });
        Ok(Cochain {
            group: Arc::clone(&self.group),
            degree: self.degree + 1,
            modulus: self.modulus,
            repr: Repr::Dense(table),
        })
    }

    /// Exhaustive test that d(c) is trivial.
    pub fn is_cocycle(&self) -> Result<bool> {
        let tuples = table_len(self.group.order(), self.degree + 1);
        if tuples > 50_000_000 {
            return Err(Error::SystemTooLarge {
                unknowns: tuples,
                equations: 0,
            });
        }
        Ok(for_each_tuple(self.group.order(), self.degree + 1, |t| {
            self.eval_coboundary(t) == 0
        }))
    }

    /// Seeded random test that d(c) vanishes on `samples` tuples.
    pub fn is_cocycle_sampled(&self, seed: u64, samples: usize) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.group.order();
        let mut args = vec![0usize; self.degree + 1];
        for _ in 0..samples {
            for a in args.iter_mut() {
                *a = rng.gen_range(0..n);
            }
            if self.eval_coboundary(&args) != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_normalized(&self) -> bool {
        let id = self.group.id();
        for_each_tuple(self.group.order(), self.degree, |t| {
            !t.contains(&id) || self.eval(t) == 0
        })
    }

    pub fn is_trivial(&self) -> bool {
        for_each_tuple(self.group.order(), self.degree, |t| self.eval(t) == 0)
    }

    /// Pointwise equality of two cochains on the same group.
    pub fn table_eq(&self, other: &Cochain) -> Result<bool> {
        if !compatible(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::UnsupportedDegree(other.degree));
        }
        if self.modulus != other.modulus {
            return Err(Error::CochainModulusMismatch(self.modulus, other.modulus));
        }
        Ok(for_each_tuple(self.group.order(), self.degree, |t| {
            self.eval(t) == other.eval(t)
        }))
    }

    /// Restriction to a realized subgroup, materialized on the
    /// subgroup's own element order.
    pub fn restrict(&self, sub: &RealizedSubgroup) -> Result<Cochain> {
        if !compatible(&self.group, &sub.parent) {
            return Err(Error::GroupMismatch);
        }
        let mut buf = [0usize; 4];
        Ok(Cochain::from_fn(
            &sub.group,
            self.degree,
            self.modulus,
            |t| {
                for (i, &a) in t.iter().enumerate() {
                    buf[i] = sub.parent_of(a);
                }
                self.eval(&buf[..t.len()])
            },
        ))
    }

    pub fn to_document(&self, names: &[&str]) -> CochainDocument {
        let (name, rest) = names.split_first().expect("a name per pullback level");
        let data = match &self.repr {
            Repr::Dense(t) => CochainData::Table(t.clone()),
            Repr::Pullback { map, base } => CochainData::Pullback {
                map: map.as_ref().clone(),
                base: Box::new(base.to_document(rest)),
            },
        };
        CochainDocument {
            group_ref: name.to_string(),
            degree: self.degree,
            modulus: self.modulus,
            data,
        }
    }

    pub fn from_document(
        doc: &CochainDocument,
        resolve: &impl Fn(&str) -> Option<Arc<FiniteGroup>>,
    ) -> Result<Cochain> {
        let group = resolve(&doc.group_ref).ok_or(Error::BadPullback)?;
        match &doc.data {
            CochainData::Table(table) => {
                Cochain::from_table(group, doc.degree, doc.modulus, table.clone())
            }
            CochainData::Pullback { map, base } => {
                let base = Cochain::from_document(base, resolve)?;
                let hom = GroupHom::new(group, Arc::clone(&base.group), map.clone())?;
                Cochain::pullback(&hom, &base)
            }
        }
    }
}

/// Serialized form: {group_ref, degree, modulus, exponent table or
/// pullback descriptor}. Exponents are canonical, in 0..N-1.
#[derive(Serialize, Deserialize, Clone)]
pub struct CochainDocument {
    pub group_ref: String,
    pub degree: usize,
    pub modulus: u32,
    pub data: CochainData,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(rename_all = "snake_case")]
pub enum CochainData {
    Table(Vec<u32>),
    Pullback {
        map: Vec<usize>,
        base: Box<CochainDocument>,
    },
}

/// alpha(x1, x2, x3) = exp(2 pi i (x1 + x2 - [x1 + x2]_3) x3 / 9) as an
/// exponent of zeta_N; defined on all of Z^3 (the inputs may be negative).
pub fn alpha_exponent(x1: i64, x2: i64, x3: i64, modulus: u32) -> u32 {
    debug_assert_eq!(modulus % 9, 0);
    let s = x1 + x2;
    let ninth = ((s - s.rem_euclid(3)) * x3).rem_euclid(9) as u32;
    (modulus / 9) * ninth % modulus
}

/// The degree-3 cocycle on S3 generating H^3(S3, C^x) = Z_6:
/// omega_0((x1,y1),(x2,y2),(x3,y3))
///   = alpha(x1, (-1)^{y1} x2, (-1)^{y1+y2} x3) (-1)^{y1 y2 y3}.
pub fn omega0(s3: &Arc<FiniteGroup>, modulus: u32) -> Result<Cochain> {
    is_canonical_s3(s3)?;
    require_supported_modulus(modulus)?;
    let half = modulus / 2;
    Ok(Cochain::from_fn(s3, 3, modulus, |t| {
        let (x1, y1) = s3_coords(t[0]);
        let (x2, y2) = s3_coords(t[1]);
        let (x3, y3) = s3_coords(t[2]);
        let sgn = |y: usize| if y.is_multiple_of(2) { 1i64 } else { -1i64 };
        let a = alpha_exponent(
            x1 as i64,
            sgn(y1) * x2 as i64,
            sgn(y1 + y2) * x3 as i64,
            modulus,
        );
        (a + half * ((y1 * y2 * y3) as u32 % 2)) % modulus
    }))
}

/// Inflation along a surjective homomorphism; materialized when small,
/// lazy otherwise.
pub fn inflate(base: &Cochain, hom: &GroupHom) -> Result<Cochain> {
    let lazy = Cochain::pullback(hom, base)?;
    if table_len(hom.source.order(), base.degree()) <= DENSE_LIMIT {
        Ok(lazy.materialize())
    } else {
        Ok(lazy)
    }
}

/// The sign 1-cochain f on S4: f(sigma h) = f_0(h) (-1)^{epsilon(sigma)
/// epsilon(h)} with f_0((1234)^z) = +1 for z in {0,1} and -1 for z in
/// {2,3}.
pub fn sign_cochain_f(s4: &Arc<FiniteGroup>, modulus: u32) -> Result<Cochain> {
    is_canonical_s4(s4)?;
    require_supported_modulus(modulus)?;
    let half = modulus / 2;
    Ok(Cochain::from_fn(s4, 1, modulus, |t| {
        let (_, y, z) = s4_normal_form(t[0]);
        let f0 = if z >= 2 { 1u32 } else { 0 };
        let twist = ((y * z) % 2) as u32;
        half * ((f0 + twist) % 2)
    }))
}

/// xi(g1, g2) = f(g2)^{epsilon(g1)}.
pub fn xi_cochain(s4: &Arc<FiniteGroup>, modulus: u32) -> Result<Cochain> {
    let f = sign_cochain_f(s4, modulus)?;
    Ok(Cochain::from_fn(s4, 2, modulus, |t| {
        epsilon_s4(t[0]) * f.eval(&[t[1]]) % modulus
    }))
}

/// The triple (f_0 on H, f on S4, xi on S4^2); f_0 is the restriction
/// of f to the realized subgroup H = <(1234)>.
pub fn f0_f_xi(
    s4: &Arc<FiniteGroup>,
    h: &RealizedSubgroup,
    modulus: u32,
) -> Result<(Cochain, Cochain, Cochain)> {
    let f = sign_cochain_f(s4, modulus)?;
    let f0 = f.restrict(h)?;
    let xi = xi_cochain(s4, modulus)?;
    Ok((f0, f, xi))
}

/// The adapted 3-cocycle omega = inf(omega_0) * d(xi) on S4, trivial on
/// S4 x S4 x H. Built from the compositional definition.
pub fn adapted_omega(s4: &Arc<FiniteGroup>, modulus: u32) -> Result<Cochain> {
    is_canonical_s4(s4)?;
    let s3 = symmetric_group(3)?;
    let pi = quotient_pi(s4, &s3)?;
    let w0 = omega0(&s3, modulus)?;
    let inf = inflate(&w0, &pi)?;
    let dxi = xi_cochain(s4, modulus)?.coboundary()?;
    inf.product(&dxi)
}

/// The closed formula for the same cocycle:
/// omega(g1, g2, g3) = alpha(x1, (-1)^{y1+z1} x2, (-1)^{y1+y2+z1+z2} x3)
/// times (f(g2 sigma3) f(g2) (-1)^{epsilon(g2) epsilon(sigma3)})^{epsilon(g1)},
/// where sigma3 is the S3 part of g3. Kept as an independent route for
/// cross-checking the compositional definition.
pub fn adapted_omega_closed(s4: &Arc<FiniteGroup>, modulus: u32) -> Result<Cochain> {
    is_canonical_s4(s4)?;
    require_supported_modulus(modulus)?;
    let f = sign_cochain_f(s4, modulus)?;
    let half = modulus / 2;
    Ok(Cochain::from_fn(s4, 3, modulus, |t| {
        let (x1, y1, z1) = s4_normal_form(t[0]);
        let (x2, y2, z2) = s4_normal_form(t[1]);
        let (x3, y3, _z3) = s4_normal_form(t[2]);
        let sgn = |e: usize| if e.is_multiple_of(2) { 1i64 } else { -1i64 };
        let a = alpha_exponent(
            x1 as i64,
            sgn(y1 + z1) * x2 as i64,
            sgn(y1 + y2 + z1 + z2) * x3 as i64,
            modulus,
        );
        let sigma3 = s4_index(x3, y3, 0);
        let g2s3 = s4.mul(t[1], sigma3);
        let sign_part = (f.eval(&[g2s3])
            + f.eval(&[t[1]])
            + half * (epsilon_s4(t[1]) * epsilon_s4(sigma3) % 2))
            % modulus;
        (a + epsilon_s4(t[0]) * sign_part) % modulus
    }))
}

/// omega_n = omega ∘ (p x p x p): the pullback of the adapted S4
/// cocycle along the projection G_n -> S4. Dense for n = 1, lazy for
/// larger n.
pub fn omega_n(gn: &GnData, modulus: u32) -> Result<Cochain> {
    let base = adapted_omega(&gn.s4, modulus)?;
    inflate(&base, &gn.p)
}

/// First adaptedness violation omega(g1, g2, h) != 1 with h in H, if
/// any, by exhaustive scan.
pub fn adaptedness_violation(omega: &Cochain, h: &Subgroup) -> Result<Option<(Elem, Elem, Elem)>> {
    if !compatible(omega.group(), &h.parent) {
        return Err(Error::GroupMismatch);
    }
    let n = omega.group().order();
    for g1 in 0..n {
        for g2 in 0..n {
            for &hh in h.members() {
                if omega.eval(&[g1, g2, hh]) != 0 {
                    return Ok(Some((g1, g2, hh)));
                }
            }
        }
    }
    Ok(None)
}

/// Seeded random adaptedness check (for configurations too large to
/// scan exhaustively).
pub fn adaptedness_violation_sampled(
    omega: &Cochain,
    h: &Subgroup,
    seed: u64,
    samples: usize,
) -> Result<Option<(Elem, Elem, Elem)>> {
    if !compatible(omega.group(), &h.parent) {
        return Err(Error::GroupMismatch);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = omega.group().order();
    for _ in 0..samples {
        let g1 = rng.gen_range(0..n);
        let g2 = rng.gen_range(0..n);
        let hh = h.members()[rng.gen_range(0..h.order())];
        if omega.eval(&[g1, g2, hh]) != 0 {
            return Ok(Some((g1, g2, hh)));
        }
    }
    Ok(None)
}

/// The adapted-cocycle shortcut for the Schur multiplier on the
/// stabilizer H^g: omega_g(h, k) = omega(h, k, g). The shortcut is
/// verified against the general formula on every pair; a mismatch means
/// omega was not adapted.
pub fn schur_shortcut(omega: &Cochain, g: Elem, stab: &RealizedSubgroup) -> Result<Cochain> {
    let shortcut = schur_table(omega, g, stab, false)?;
    let general = schur_table(omega, g, stab, true)?;
    let k = stab.order();
    for i in 0..k {
        for j in 0..k {
            if shortcut.eval(&[i, j]) != general.eval(&[i, j]) {
                return Err(Error::SchurMismatch(stab.parent_of(i), stab.parent_of(j)));
            }
        }
    }
    Ok(shortcut)
}

/// The general Schur multiplier formula (with trivial psi):
/// psi^g(h, k) = omega(h, k, g) omega(h, kg, k^{-1} ◁ g)
///             / omega(hkg, k^{-1} ◁ g, h^{-1} ◁ g).
pub fn schur_general(omega: &Cochain, g: Elem, stab: &RealizedSubgroup) -> Result<Cochain> {
    schur_table(omega, g, stab, true)
}

fn schur_table(
    omega: &Cochain,
    g: Elem,
    stab: &RealizedSubgroup,
    general: bool,
) -> Result<Cochain> {
    if omega.degree() != 3 {
        return Err(Error::UnsupportedDegree(omega.degree()));
    }
    if !compatible(omega.group(), &stab.parent) {
        return Err(Error::GroupMismatch);
    }
    let p = &stab.parent;
    let m = omega.modulus() as i64;
    Ok(Cochain::from_fn(&stab.group, 2, omega.modulus(), |t| {
        let h = stab.parent_of(t[0]);
        let k = stab.parent_of(t[1]);
        if !general {
            return omega.eval(&[h, k, g]);
        }
        let k_inv_g = p.conj(p.inv(k), g);
        let h_inv_g = p.conj(p.inv(h), g);
        let acc = omega.eval(&[h, k, g]) as i64 + omega.eval(&[h, p.mul(k, g), k_inv_g]) as i64
            - omega.eval(&[p.mul(p.mul(h, k), g), k_inv_g, h_inv_g]) as i64;
        acc.rem_euclid(m) as u32
    }))
}

/// Solve d(x) = c for a cochain x one degree down, over Z_N. Returns
/// None when no solution exists, i.e. the class of c is nontrivial in
/// H^{k+1}(G, mu_N). The solution is deterministic and verified before
/// being returned.
pub fn solve_coboundary(c: &Cochain) -> Result<Option<Cochain>> {
    if !(2..=3).contains(&(c.degree())) {
        return Err(Error::UnsupportedDegree(c.degree()));
    }
    let k = c.degree() - 1;
    let order = c.group().order();
    let unknowns = table_len(order, k);
    let index_of = |t: &[Elem]| -> usize {
        let mut idx = 0;
        for &a in t {
            idx = idx * order + a;
        }
        idx
    };
    let mut rows = Vec::with_capacity(table_len(order, k + 1));
    let ok = for_each_tuple(order, k + 1, |args| {
        let mut cols: Vec<(usize, i64)> = Vec::with_capacity(k + 2);
        cols.push((index_of(&args[1..]), 1));
        let mut buf = vec![0usize; k];
        let mut sign = -1i64;
        for i in 0..k {
            for j in 0..k {
                buf[j] = match j.cmp(&i) {
                    std::cmp::Ordering::Less => args[j],
                    std::cmp::Ordering::Equal => c.group().mul(args[i], args[i + 1]),
                    std::cmp::Ordering::Greater => args[j + 1],
                };
            }
            cols.push((index_of(&buf), sign));
            sign = -sign;
        }
        let last_sign = if (k + 1).is_multiple_of(2) { 1 } else { -1 };
        cols.push((index_of(&args[..k]), last_sign));
        rows.push(SparseRow {
            cols,
            rhs: c.eval(args),
        });
        true
    });
    debug_assert!(ok);
    let Some(x) = solve_mod_n(&rows, unknowns, c.modulus())? else {
        return Ok(None);
    };
    let solution = Cochain::from_table(Arc::clone(c.group()), k, c.modulus(), x)?;
    let verified = for_each_tuple(order, k + 1, |t| solution.eval_coboundary(t) == c.eval(t));
    assert!(verified, "solver returned a non-solution; this is a bug");
    Ok(Some(solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concrete::{build_gn, s3_in_s4, s3_index, s4_elem_from_images};
    use crate::group::Subgroup;

    const N: u32 = 36;

    fn s3() -> Arc<FiniteGroup> {
        symmetric_group(3).unwrap()
    }

    fn s4() -> Arc<FiniteGroup> {
        symmetric_group(4).unwrap()
    }

    fn h_in_s4(s4: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::generated(s4, &[s4_index(0, 0, 1)]).unwrap()
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_exponent(1, 1, 1, N), 0);
        assert_eq!(alpha_exponent(1, 2, 1, N), 12); // e^{2 pi i/3}
        assert_eq!(alpha_exponent(1, -1, 1, N), 0);
        for x3 in -5..5 {
            assert_eq!(alpha_exponent(0, 0, x3, N), 0);
        }
        // product alpha(1,1,1) alpha(1,2,1) = e^{2 pi i/3}
        assert_eq!(
            (alpha_exponent(1, 1, 1, N) + alpha_exponent(1, 2, 1, N)) % N,
            12
        );
    }

    #[test]
    fn omega0_is_a_normalized_cocycle() {
        let s3 = s3();
        let w0 = omega0(&s3, N).unwrap();
        assert!(w0.is_cocycle().unwrap()); // all 6^4 quadruples
        assert!(w0.is_normalized());
        // omega_0((0,1),(0,1),(0,1)) = -1
        let t = s3_index(0, 1);
        assert_eq!(w0.eval(&[t, t, t]), 18);
        // omega_0((x1,y1),(x2,y2),(0,y3)) = (-1)^{y1 y2 y3}
        for g1 in 0..6 {
            for g2 in 0..6 {
                for y3 in 0..2 {
                    let (_, y1) = s3_coords(g1);
                    let (_, y2) = s3_coords(g2);
                    let expect = 18 * ((y1 * y2 * y3) as u32 % 2);
                    assert_eq!(w0.eval(&[g1, g2, s3_index(0, y3)]), expect);
                }
            }
        }
    }

    #[test]
    fn omega0_requires_canonical_s3_and_modulus() {
        let s4 = s4();
        assert!(omega0(&s4, N).is_err());
        let s3 = s3();
        assert!(matches!(
            omega0(&s3, 12),
            Err(Error::UnsupportedModulus(12))
        ));
        assert!(omega0(&s3, 72).is_ok());
    }

    #[test]
    fn inflation_matches_displayed_formula() {
        let s3 = s3();
        let s4 = s4();
        let pi = quotient_pi(&s4, &s3).unwrap();
        let w0 = omega0(&s3, N).unwrap();
        let inf = inflate(&w0, &pi).unwrap();
        assert!(inf.is_dense());
        let ok = for_each_tuple(24, 3, |t| {
            let (x1, y1, z1) = s4_normal_form(t[0]);
            let (x2, y2, z2) = s4_normal_form(t[1]);
            let (x3, y3, z3) = s4_normal_form(t[2]);
            let sgn = |e: usize| if e.is_multiple_of(2) { 1i64 } else { -1i64 };
            let a = alpha_exponent(
                x1 as i64,
                sgn(y1 + z1) * x2 as i64,
                sgn(y1 + y2 + z1 + z2) * x3 as i64,
                N,
            );
            let s = 18 * (((y1 + z1) * (y2 + z2) * (y3 + z3)) as u32 % 2);
            inf.eval(t) == (a + s) % N
        });
        assert!(ok);
    }

    #[test]
    fn inflation_along_the_identity_is_the_identity() {
        let s3 = s3();
        let id_hom = GroupHom::new(Arc::clone(&s3), Arc::clone(&s3), (0..6).collect()).unwrap();
        let w0 = omega0(&s3, N).unwrap();
        let inf = inflate(&w0, &id_hom).unwrap();
        assert!(inf.table_eq(&w0).unwrap());
    }

    #[test]
    fn inflate_then_restrict_recovers_omega0() {
        let s3 = s3();
        let s4 = s4();
        let pi = quotient_pi(&s4, &s3).unwrap();
        let w0 = omega0(&s3, N).unwrap();
        let inf = inflate(&w0, &pi).unwrap();
        let embedded = s3_in_s4(&s4).unwrap().realize();
        let back = inf.restrict(&embedded).unwrap();
        // the embedded S3 is indexed exactly like the canonical S3
        assert_eq!(back.dense_values().unwrap(), w0.dense_values().unwrap());
    }

    #[test]
    fn f_and_xi_satisfy_the_matched_pair_laws() {
        let s4 = s4();
        let h = h_in_s4(&s4).realize();
        let (f0, f, xi) = f0_f_xi(&s4, &h, N).unwrap();
        // f((1234)) = 1, f((1234)^3) = -1
        assert_eq!(f.eval(&[s4_index(0, 0, 1)]), 0);
        assert_eq!(f.eval(&[s4_index(0, 0, 3)]), 18);
        assert_eq!(f0.eval(&[1]), 0);
        assert_eq!(f0.eval(&[3]), 18);
        // f(g h) = f(g) f(h) (-1)^{epsilon(g) epsilon(h)} for h in H
        for g in 0..24 {
            for z in 0..4usize {
                let hh = s4_index(0, 0, z);
                let lhs = f.eval(&[s4.mul(g, hh)]);
                let rhs =
                    (f.eval(&[g]) + f.eval(&[hh]) + 18 * (epsilon_s4(g) * epsilon_s4(hh) % 2)) % N;
                assert_eq!(lhs, rhs, "g={g} z={z}");
            }
        }
        // f_0(h1 h2) = f_0(h1) f_0(h2) (-1)^{epsilon(h1) epsilon(h2)}
        for z1 in 0..4usize {
            for z2 in 0..4usize {
                let lhs = f0.eval(&[(z1 + z2) % 4]);
                let rhs = (f0.eval(&[z1]) + f0.eval(&[z2]) + 18 * ((z1 * z2) as u32 % 2)) % N;
                assert_eq!(lhs, rhs);
            }
        }
        // xi(e, g) = 1
        for g in 0..24 {
            assert_eq!(xi.eval(&[s4.id(), g]), 0);
        }
    }

    #[test]
    fn d_f0_is_the_sign_pairing() {
        let s4 = s4();
        let h = h_in_s4(&s4).realize();
        let (f0, _, _) = f0_f_xi(&s4, &h, N).unwrap();
        let df0 = f0.coboundary().unwrap();
        for z1 in 0..4usize {
            for z2 in 0..4usize {
                assert_eq!(df0.eval(&[z1, z2]), 18 * ((z1 * z2) as u32 % 2));
            }
        }
    }

    #[test]
    fn d_xi_lemma_and_adaptedness() {
        let s4 = s4();
        let h = h_in_s4(&s4);
        let dxi = xi_cochain(&s4, N).unwrap().coboundary().unwrap();
        // d xi (g1, g2, h) = (-1)^{epsilon(g1) epsilon(g2) epsilon(h)}
        for g1 in 0..24 {
            for g2 in 0..24 {
                for &hh in h.members() {
                    let expect = 18 * (epsilon_s4(g1) * epsilon_s4(g2) * epsilon_s4(hh) % 2);
                    assert_eq!(dxi.eval(&[g1, g2, hh]), expect);
                }
            }
        }
        let omega = adapted_omega(&s4, N).unwrap();
        assert_eq!(adaptedness_violation(&omega, &h).unwrap(), None);
        assert!(omega.is_normalized());
        assert!(omega.is_cocycle().unwrap()); // 24^4 quadruples
    }

    #[test]
    fn omega_at_the_14_triple() {
        let s4 = s4();
        let omega = adapted_omega(&s4, N).unwrap();
        let e14 = s4_elem_from_images([3, 1, 2, 0]);
        assert_eq!(omega.eval(&[e14, e14, e14]), 18); // -1
    }

    #[test]
    fn closed_formula_equals_compositional_definition() {
        let s4 = s4();
        let omega = adapted_omega(&s4, N).unwrap();
        let closed = adapted_omega_closed(&s4, N).unwrap();
        assert!(omega.table_eq(&closed).unwrap());
    }

    #[test]
    fn omega_restricted_to_s3_is_omega0() {
        let s4 = s4();
        let s3 = s3();
        let omega = adapted_omega(&s4, N).unwrap();
        let embedded = s3_in_s4(&s4).unwrap().realize();
        let back = omega.restrict(&embedded).unwrap();
        let w0 = omega0(&s3, N).unwrap();
        assert_eq!(back.dense_values().unwrap(), w0.dense_values().unwrap());
    }

    #[test]
    fn omega_n_is_adapted_and_extends_omega() {
        for n in 1..=2usize {
            let gn = build_gn(n).unwrap();
            let wn = omega_n(&gn, N).unwrap();
            assert_eq!(adaptedness_violation(&wn, &gn.hn).unwrap(), None);
            // restriction to the embedded S4 equals omega
            let omega = adapted_omega(&gn.s4, N).unwrap();
            let ok = for_each_tuple(24, 3, |t| {
                wn.eval(&[gn.embed_s4(t[0]), gn.embed_s4(t[1]), gn.embed_s4(t[2])]) == omega.eval(t)
            });
            assert!(ok);
        }
        // n = 1 coincides with omega as a table
        let g1 = build_gn(1).unwrap();
        let w1 = omega_n(&g1, N).unwrap();
        let omega = adapted_omega(&g1.s4, N).unwrap();
        assert!(w1.is_dense());
        assert_eq!(
            w1.dense_values().unwrap(),
            omega.materialize().dense_values().unwrap()
        );
        // n = 2 stays lazy and passes a sampled cocycle check
        let g2 = build_gn(2).unwrap();
        let w2 = omega_n(&g2, N).unwrap();
        assert!(!w2.is_dense());
        assert!(w2.is_cocycle_sampled(42, 100_000));
    }

    #[test]
    fn powers_compose_and_commute_with_inflation() {
        let s4 = s4();
        let omega = adapted_omega(&s4, N).unwrap();
        assert!(omega.power(0).is_trivial());
        assert!(omega.power(1).table_eq(&omega).unwrap());
        let w6 = omega.power(2).product(&omega.power(4)).unwrap();
        assert!(w6.table_eq(&omega.power(6)).unwrap());
        // inflate(c^l) = inflate(c)^l on G_1
        let gn = build_gn(1).unwrap();
        for l in 0..6 {
            let a = inflate(&omega.power(l), &gn.p).unwrap();
            let b = inflate(&omega, &gn.p).unwrap().power(l);
            assert!(a.table_eq(&b).unwrap());
        }
    }

    #[test]
    fn schur_multiplier_at_gamma1_is_d_f0() {
        let s4 = s4();
        let h = h_in_s4(&s4);
        let hr = h.realize();
        let omega = adapted_omega(&s4, N).unwrap();
        let gamma1 = s4_index(0, 1, 1);
        let stab = h.conj_intersection(gamma1);
        assert_eq!(stab.members(), h.members());
        let w_g1 = schur_shortcut(&omega, gamma1, &hr).unwrap();
        let (f0, _, _) = f0_f_xi(&s4, &hr, N).unwrap();
        let df0 = f0.coboundary().unwrap();
        assert_eq!(
            w_g1.dense_values().unwrap(),
            df0.dense_values().unwrap(),
            "omega_gamma1 = d f_0"
        );
        // omega_gamma0 (third argument e in H) is trivial by adaptedness
        let w_e = schur_shortcut(&omega, s4.id(), &hr).unwrap();
        assert!(w_e.is_trivial());
    }

    #[test]
    fn schur_shortcut_agrees_with_general_formula_on_all_cosets() {
        let s4 = s4();
        let h = h_in_s4(&s4);
        let omega = adapted_omega(&s4, N).unwrap();
        for l in 0..6 {
            let w = omega.power(l);
            for &rep in h.double_cosets().reps() {
                let stab = h.conj_intersection(rep).realize();
                let shortcut = schur_shortcut(&w, rep, &stab).unwrap();
                let general = schur_general(&w, rep, &stab).unwrap();
                assert!(shortcut.table_eq(&general).unwrap());
            }
        }
    }

    #[test]
    fn schur_shortcut_rejects_non_adapted_cocycles() {
        let s4 = s4();
        let s3c = s3();
        let pi = quotient_pi(&s4, &s3c).unwrap();
        let w0 = omega0(&s3c, N).unwrap();
        let inf = inflate(&w0, &pi).unwrap(); // cocycle but NOT adapted
        let h = h_in_s4(&s4);
        let gamma1 = s4_index(0, 1, 1);
        let stab = h.conj_intersection(gamma1).realize();
        assert!(matches!(
            schur_shortcut(&inf, gamma1, &stab),
            Err(Error::SchurMismatch(_, _))
        ));
    }

    #[test]
    fn solve_coboundary_on_h() {
        let s4 = s4();
        let hr = h_in_s4(&s4).realize();
        let (f0, _, _) = f0_f_xi(&s4, &hr, N).unwrap();
        let df0 = f0.coboundary().unwrap();
        let eta = solve_coboundary(&df0)
            .unwrap()
            .expect("d f0 is a coboundary");
        assert!(eta.coboundary().unwrap().table_eq(&df0).unwrap());
        // trivial cochain solves trivially
        let trivial = Cochain::trivial(&hr.group, 2, N);
        let sol = solve_coboundary(&trivial).unwrap().unwrap();
        assert!(sol.coboundary().unwrap().is_trivial());
    }

    #[test]
    fn omega0_powers_are_coboundaries_exactly_at_multiples_of_six() {
        let s3 = s3();
        let w0 = omega0(&s3, N).unwrap();
        for l in 0..=6i64 {
            let sol = solve_coboundary(&w0.power(l)).unwrap();
            if l % 6 == 0 {
                let xi = sol.expect("class of omega_0^l is trivial for 6 | l");
                assert!(xi.coboundary().unwrap().table_eq(&w0.power(l)).unwrap());
            } else {
                assert!(sol.is_none(), "omega_0^{l} must not be a coboundary");
            }
        }
    }

    #[test]
    fn omega6_restriction_to_s3_is_a_coboundary() {
        let s4 = s4();
        let omega = adapted_omega(&s4, N).unwrap();
        let embedded = s3_in_s4(&s4).unwrap().realize();
        let w6_s3 = omega.power(6).restrict(&embedded).unwrap();
        assert!(solve_coboundary(&w6_s3).unwrap().is_some());
    }

    #[test]
    fn d_of_d_is_trivial() {
        use rand::{Rng, SeedableRng};
        let s4 = s4();
        let s3 = s3();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let c1 = Cochain::from_fn(&s4, 1, N, |_| rng.gen_range(0..N));
            assert!(c1.coboundary().unwrap().is_cocycle().unwrap());
            let c2 = Cochain::from_fn(&s3, 2, N, |_| rng.gen_range(0..N));
            assert!(c2.coboundary().unwrap().is_cocycle().unwrap());
            let c0 = Cochain::from_fn(&s3, 0, N, |_| rng.gen_range(0..N));
            assert!(c0.coboundary().unwrap().is_cocycle().unwrap());
        }
        // degree-2 on S4, the explicit xi: d(d xi) = 1 over 24^4 tuples
        let dxi = xi_cochain(&s4, N).unwrap().coboundary().unwrap();
        assert!(dxi.is_cocycle().unwrap());
    }

    #[test]
    fn coboundary_degree_guard() {
        let s3 = s3();
        let c4 = Cochain::trivial(&s3, 4, N);
        assert!(matches!(c4.coboundary(), Err(Error::UnsupportedDegree(4))));
        let c1 = Cochain::trivial(&s3, 1, N);
        assert!(matches!(
            solve_coboundary(&c1),
            Err(Error::UnsupportedDegree(1))
        ));
    }

    #[test]
    fn cochain_document_round_trip() {
        let gn = build_gn(2).unwrap();
        let wn = omega_n(&gn, N).unwrap();
        let doc = wn.to_document(&["G2", "S4"]);
        let json = serde_json::to_string(&doc).unwrap();
        let back: CochainDocument = serde_json::from_str(&json).unwrap();
        let resolve = |name: &str| match name {
            "G2" => Some(Arc::clone(&gn.group)),
            "S4" => Some(Arc::clone(&gn.s4)),
            _ => None,
        };
        let rebuilt = Cochain::from_document(&back, &resolve).unwrap();
        let ok = for_each_tuple(24, 3, |t| rebuilt.eval(t) == wn.eval(t));
        assert!(ok);
        // spot-check beyond the embedded block
        assert_eq!(rebuilt.eval(&[95, 40, 77]), wn.eval(&[95, 40, 77]));
    }
}
