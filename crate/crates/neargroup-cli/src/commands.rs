//! The verification commands behind the CLI subcommands. Each returns a
//! Report whose verdicts name the invariant they check; dump commands
//! return plain JSON documents instead.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use neargroup::category::{
    fs_indicator, near_group_check, simples, CategoryFamily, GTCategory, SimpleObject,
};
use neargroup::cochain::{
    adapted_omega, adapted_omega_closed, adaptedness_violation, adaptedness_violation_sampled,
    omega0, require_supported_modulus, solve_coboundary,
};
use neargroup::concrete::{build_gn, symmetric_group};
use neargroup::cyclotomic::CycInt;
use neargroup::group::{abelian_group, dual_group, FiniteGroup, GroupDocument};
use neargroup::invertibles::{
    build_extension, compute_k, extraspecial_reference, fingerprint, hdual_subgroup, isomorphic,
};

use crate::report::{row, Report};

#[derive(Clone, Copy)]
pub struct Settings {
    pub modulus: u32,
    pub seed: u64,
    pub samples: usize,
}

fn exact_and_approx(v: &CycInt) -> (Value, Value) {
    (json!(v.to_string()), json!(v.approx_string()))
}

fn expected_nu2(modulus: u32, l: i64) -> CycInt {
    CycInt::from_integer(modulus, if l % 2 == 0 { 1 } else { -1 })
}

fn expected_nu3(modulus: u32, n: usize, l: i64) -> CycInt {
    let third = modulus as i64 / 3;
    CycInt::root_of_unity(modulus, -third * l).scaled(1 << n, 1)
}

fn type_name(n: usize, quaternion: bool) -> String {
    match (n, quaternion) {
        (1, false) => "D8".to_string(),
        (1, true) => "Q8".to_string(),
        (_, false) => format!("D8^{{∘{n}}}"),
        (_, true) => format!("Q8∘D8^{{∘{}}}", n - 1),
    }
}

pub fn cmd_verify_cocycles(n: usize, st: Settings) -> Result<Report> {
    let t = Instant::now();
    require_supported_modulus(st.modulus)?;
    let mut rep = Report::new("verify-cocycles");
    rep.param("n", n);
    rep.param("N", st.modulus);
    rep.param("seed", st.seed);
    rep.param("samples", st.samples);

    let s3 = symmetric_group(3)?;
    let w0 = omega0(&s3, st.modulus)?;
    rep.verdict(
        "d(omega_0) = 1 on all quadruples of S3",
        w0.is_cocycle()?,
        "1296 quadruples, exact",
    );

    let fam = CategoryFamily::new(n, st.modulus)?;
    let omega = adapted_omega(&fam.gn.s4, st.modulus)?;
    if n == 1 {
        let violation = adaptedness_violation(&omega, &fam.gn.hn)?;
        rep.verdict(
            "omega(g1, g2, h) = 1 for h in H (exhaustive)",
            violation.is_none(),
            "2304 triples, exact",
        );
        rep.verdict(
            "d(omega) = 1 on all quadruples of S4",
            omega.is_cocycle()?,
            "331776 quadruples, exact",
        );
    } else {
        let violation =
            adaptedness_violation_sampled(fam.omega(), &fam.gn.hn, st.seed, st.samples)?;
        rep.verdict(
            "omega_n(g1, g2, h) = 1 for h in H_n (sampled)",
            violation.is_none(),
            format!("{} seeded samples", st.samples),
        );
        rep.verdict(
            "d(omega_n) = 1 (sampled)",
            fam.omega().is_cocycle_sampled(st.seed, st.samples),
            format!("{} seeded samples", st.samples),
        );
    }
    let closed = adapted_omega_closed(&fam.gn.s4, st.modulus)?;
    rep.verdict(
        "closed formula equals inf(omega_0) d(xi)",
        omega.table_eq(&closed)?,
        "13824 triples, exact",
    );

    let mut pattern_ok = true;
    for l in 0..=6i64 {
        let solvable = solve_coboundary(&w0.power(l))?.is_some();
        let expected = l % 6 == 0;
        pattern_ok &= solvable == expected;
        rep.push_row(row(vec![
            ("l", json!(l)),
            ("omega0_l_is_coboundary", json!(solvable)),
            ("expected", json!(expected)),
        ]));
    }
    rep.verdict(
        "[omega_0^l] trivial exactly at l = 0, 6",
        pattern_ok,
        "decided by the mod-N linear solver on S3",
    );
    rep.runtime = t.elapsed();
    Ok(rep)
}

fn simple_row(
    cat: &GTCategory,
    s: &SimpleObject,
) -> Result<std::collections::BTreeMap<String, Value>> {
    let char_desc: Vec<String> = match s.stabilizer.group.cyclic_cert() {
        Some(cert) => cert
            .iter()
            .map(|&(gen, _)| {
                format!(
                    "chi({}) = zeta{}^{}",
                    s.stabilizer.group.label(gen),
                    cat.modulus(),
                    s.character.eval(gen)
                )
            })
            .collect(),
        None => vec!["trivial".to_string()],
    };
    let nu: Result<Vec<CycInt>> = (1..=3)
        .map(|k| fs_indicator(cat, s, k).map_err(Into::into))
        .collect();
    let nu = nu?;
    let mut r = row(vec![
        ("coset_rep_label", json!(cat.group.label(s.rep))),
        ("fpdim", json!(s.fpdim)),
        ("character", json!(char_desc)),
    ]);
    for (k, v) in nu.iter().enumerate() {
        let (exact, approx) = exact_and_approx(v);
        r.insert(format!("nu{}", k + 1), exact);
        r.insert(format!("nu{}_approx", k + 1), approx);
    }
    Ok(r)
}

pub fn cmd_category(n: usize, l: i64, st: Settings) -> Result<Report> {
    let t = Instant::now();
    let mut rep = Report::new("category");
    rep.param("n", n);
    rep.param("l", l);
    rep.param("N", st.modulus);
    let fam = CategoryFamily::new(n, st.modulus)?;
    let cat = fam.category_with_reference_reps(l)?;
    let objects = simples(&cat)?;
    for s in &objects {
        rep.push_row(simple_row(&cat, s)?);
    }
    let expected_invertibles = 1usize << (2 * n + 1);
    let summary = near_group_check(&cat, &objects)?;
    rep.verdict(
        "number of simple objects",
        objects.len() == expected_invertibles + 1,
        format!(
            "{} simples, expected {}",
            objects.len(),
            expected_invertibles + 1
        ),
    );
    rep.verdict(
        "invertible object count is 2^(2n+1)",
        summary.invertible_count == expected_invertibles,
        format!("{} invertibles", summary.invertible_count),
    );
    rep.verdict(
        "FPdim of the non-invertible simple is 2^(n+1)",
        summary.fpdim_rho == 1 << (n + 1),
        format!("FPdim rho = {}", summary.fpdim_rho),
    );
    rep.verdict(
        "near-group multiplicity is 2^n",
        summary.multiplicity == 1 << n,
        format!("m = {}", summary.multiplicity),
    );
    let global: usize = objects.iter().map(|s| s.fpdim * s.fpdim).sum();
    rep.verdict(
        "global dimension equals |G_n|",
        global == cat.group.order(),
        format!("sum of FPdim^2 = {global}, |G| = {}", cat.group.order()),
    );
    rep.runtime = t.elapsed();
    Ok(rep)
}

pub fn cmd_indicators(n: usize, l: i64, kmax: u32, st: Settings) -> Result<Report> {
    let t = Instant::now();
    let mut rep = Report::new("indicators");
    rep.param("n", n);
    rep.param("l", l);
    rep.param("kmax", kmax);
    rep.param("N", st.modulus);
    let fam = CategoryFamily::new(n, st.modulus)?;
    let cat = fam.category_with_reference_reps(l)?;
    let objects = simples(&cat)?;
    let rho = near_group_check(&cat, &objects)?.rho;
    let mut nu2 = None;
    let mut nu3 = None;
    for k in 1..=kmax {
        let v = fs_indicator(&cat, &rho, k)?;
        let (exact, approx) = exact_and_approx(&v);
        rep.push_row(row(vec![
            ("k", json!(k)),
            ("nu_k", exact),
            ("nu_k_approx", approx),
        ]));
        if k == 2 {
            nu2 = Some(v.clone());
        }
        if k == 3 {
            nu3 = Some(v.clone());
        }
    }
    if let Some(nu2) = nu2 {
        let want = expected_nu2(st.modulus, l);
        rep.verdict(
            "nu_2(rho) = (-1)^l",
            nu2 == want,
            format!("computed {nu2}, closed form {want}"),
        );
    }
    if let Some(nu3) = nu3 {
        let want = expected_nu3(st.modulus, n, l);
        rep.verdict(
            "nu_3(rho) = 2^n e^(-2 pi i l/3)",
            nu3 == want,
            format!("computed {nu3}, closed form {want}"),
        );
    }
    rep.runtime = t.elapsed();
    Ok(rep)
}

struct Identification {
    gamma_order: usize,
    k_size: usize,
    involutions: usize,
    extraspecial: bool,
    type_label: String,
    quaternion: Option<bool>,
    confirmed: bool,
    center_order: usize,
    derived_order: usize,
    exponent: usize,
    hdual_ok: bool,
}

fn identify_invertibles(cat: &GTCategory, n: usize, st: Settings) -> Result<Identification> {
    let twist = compute_k(cat)?;
    let chars = dual_group(&cat.realized_h.group, st.modulus)?;
    let ext = build_extension(&twist, &chars)?;
    let fp = fingerprint(&ext.group);
    let plus = extraspecial_reference(n, false)?;
    let minus = extraspecial_reference(n, true)?;
    let quaternion = if fp.involutions() == fingerprint(&plus).involutions() {
        Some(false)
    } else if fp.involutions() == fingerprint(&minus).involutions() {
        Some(true)
    } else {
        None
    };
    let (type_label, confirmed) = match quaternion {
        Some(q) => {
            let reference = if q { &minus } else { &plus };
            (type_name(n, q), isomorphic(&ext.group, reference)?)
        }
        None => ("unidentified".to_string(), false),
    };
    let mut model_orders = vec![2usize; n - 1];
    model_orders.push(4);
    let model = abelian_group(&model_orders)?;
    let hdual_ok = isomorphic(&hdual_subgroup(&ext)?.realize().group, &model)?;
    Ok(Identification {
        gamma_order: ext.group.order(),
        k_size: twist.len(),
        involutions: fp.involutions(),
        extraspecial: fp.is_extraspecial_2group,
        type_label,
        quaternion,
        confirmed,
        center_order: fp.center_order,
        derived_order: fp.derived_order,
        exponent: fp.exponent,
        hdual_ok,
    })
}

pub fn cmd_invertibles(n: usize, l: i64, st: Settings) -> Result<Report> {
    let t = Instant::now();
    let mut rep = Report::new("invertibles");
    rep.param("n", n);
    rep.param("l", l);
    rep.param("N", st.modulus);
    let fam = CategoryFamily::new(n, st.modulus)?;
    let cat = fam.category_with_reference_reps(l)?;
    let id = identify_invertibles(&cat, n, st)?;
    rep.push_row(row(vec![
        ("n", json!(n)),
        ("l", json!(l)),
        ("K_size", json!(id.k_size)),
        ("gamma_order", json!(id.gamma_order)),
        ("extraspecial", json!(id.extraspecial)),
        ("involutions", json!(id.involutions)),
        ("identified_type", json!(id.type_label)),
        ("center_order", json!(id.center_order)),
        ("derived_order", json!(id.derived_order)),
        ("exponent", json!(id.exponent)),
    ]));
    rep.verdict(
        "|Gamma| = 2^(2n+1)",
        id.gamma_order == 1 << (2 * n + 1),
        format!("order {}", id.gamma_order),
    );
    rep.verdict(
        "Gamma is an extraspecial 2-group",
        id.extraspecial,
        format!(
            "center order {}, derived order {}",
            id.center_order, id.derived_order
        ),
    );
    rep.verdict(
        "involution count identifies a central-product type",
        id.quaternion.is_some(),
        format!("{} involutions -> {}", id.involutions, id.type_label),
    );
    rep.verdict(
        "backtracking isomorphism confirms the type",
        id.confirmed,
        id.type_label.clone(),
    );
    rep.verdict(
        "type parity matches l",
        id.quaternion == Some(l % 2 == 1),
        format!("l = {l} expects {}", type_name(n, l % 2 == 1)),
    );
    rep.verdict(
        "the (tau, e) subset is a subgroup isomorphic to the dual of H_n",
        id.hdual_ok,
        "checked against the Z_2^(n-1) x Z_4 model",
    );
    rep.runtime = t.elapsed();
    Ok(rep)
}

pub fn cmd_full(nmax: usize, st: Settings) -> Result<Report> {
    let t = Instant::now();
    let mut rep = Report::new("full");
    rep.param("nmax", nmax);
    rep.param("N", st.modulus);
    rep.param("seed", st.seed);
    rep.param("samples", st.samples);
    for n in 1..=nmax {
        let fam = CategoryFamily::new(n, st.modulus)?;
        let mut tuples: Vec<(String, String)> = Vec::new();
        for l in 0..6i64 {
            let cat = fam.category_with_reference_reps(l)?;
            let objects = simples(&cat)?;
            let rho = near_group_check(&cat, &objects)?.rho;
            let nu2 = fs_indicator(&cat, &rho, 2)?;
            let nu3 = fs_indicator(&cat, &rho, 3)?;
            let indicators_ok =
                nu2 == expected_nu2(st.modulus, l) && nu3 == expected_nu3(st.modulus, n, l);
            let id = identify_invertibles(&cat, n, st)?;
            let invertibles_ok =
                id.extraspecial && id.confirmed && id.quaternion == Some(l % 2 == 1);
            rep.push_row(row(vec![
                ("n", json!(n)),
                ("l", json!(l)),
                ("nu2", json!(nu2.to_string())),
                ("nu3", json!(nu3.to_string())),
                ("gamma_type", json!(id.type_label)),
                ("indicators_match", json!(indicators_ok)),
                ("invertibles_match", json!(invertibles_ok)),
            ]));
            rep.verdict(
                &format!("indicators match closed forms at (n={n}, l={l})"),
                indicators_ok,
                format!("nu2 = {nu2}, nu3 = {nu3}"),
            );
            rep.verdict(
                &format!("invertible group identified at (n={n}, l={l})"),
                invertibles_ok,
                id.type_label.clone(),
            );
            tuples.push((nu2.to_string(), nu3.to_string()));
        }
        let mut distinct = true;
        for i in 0..tuples.len() {
            for j in i + 1..tuples.len() {
                distinct &= tuples[i] != tuples[j];
            }
        }
        rep.verdict(
            &format!("the six (nu2, nu3) pairs are pairwise distinct at n={n}"),
            distinct,
            "pivotal inequivalence witness",
        );
    }
    rep.runtime = t.elapsed();
    Ok(rep)
}

pub fn cmd_dump_group(which: &str, n: usize, _st: Settings) -> Result<String> {
    let doc: GroupDocument = match which {
        "s3" => symmetric_group(3)?.to_document(),
        "s4" => symmetric_group(4)?.to_document(),
        "gn" => build_gn(n)?.group.to_document(),
        "hn" => build_gn(n)?.hn_realized.group.to_document(),
        "kn" => build_gn(n)?.kn.realize().group.to_document(),
        other => bail!("unknown group {other}"),
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}

pub fn cmd_check_group(path: &std::path::Path) -> Result<Report> {
    let t = Instant::now();
    let mut rep = Report::new("check-group");
    rep.param("in", json!(path.display().to_string()));
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    match serde_json::from_str::<GroupDocument>(&text) {
        Err(e) => {
            rep.verdict("document parses as a group document", false, e.to_string());
        }
        Ok(doc) => {
            rep.verdict(
                "document parses as a group document",
                true,
                format!("order {}", doc.order),
            );
            let has_cert = doc.cyclic_cert.is_some();
            match FiniteGroup::from_document(doc) {
                Ok(g) => {
                    rep.verdict(
                        "table satisfies the group axioms",
                        true,
                        format!("order {}, exponent {}", g.order(), g.exponent()),
                    );
                    rep.verdict(
                        "cyclic certificate",
                        true,
                        if has_cert {
                            "present and valid"
                        } else {
                            "absent (optional)"
                        },
                    );
                }
                Err(e) => {
                    rep.verdict("table satisfies the group axioms", false, e.to_string());
                }
            }
        }
    }
    rep.runtime = t.elapsed();
    Ok(rep)
}

pub fn cmd_dump_cochain(which: &str, n: usize, l: i64, st: Settings) -> Result<String> {
    let doc = match which {
        "omega0" => {
            let s3 = symmetric_group(3)?;
            omega0(&s3, st.modulus)?.power(l).to_document(&["S3"])
        }
        "omega" => {
            let s4 = symmetric_group(4)?;
            adapted_omega(&s4, st.modulus)?
                .power(l)
                .to_document(&["S4"])
        }
        "omega-n" => {
            let fam = CategoryFamily::new(n, st.modulus)?;
            let gname = format!("G{n}");
            fam.omega().power(l).to_document(&[gname.as_str(), "S4"])
        }
        other => bail!("unknown cochain {other}"),
    };
    let mut s = serde_json::to_string_pretty(&doc)?;
    s.push('\n');
    Ok(s)
}
