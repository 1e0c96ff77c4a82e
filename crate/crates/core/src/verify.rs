//! The verification suite: one machine-readable report per algebra
//! configuration, with a fixed check order and seeded determinism.
//!
//! Checks that depend on features of a specific configuration (tame
//! patterns, wild boundaries, exterior self-extensions) are skipped with a
//! reason elsewhere; conclusions whose hypotheses never materialize are
//! reported as vacuous, with their computational ingredients tested
//! separately.

use crate::artranslate::{
    additive_function, ar_sequence_ending_at, classify_component, explore_component,
    fragment_to_json, tau, TreeClassVerdict,
};
use crate::decomp::{decompose, is_indecomposable, is_isomorphic, IndecVerdict};
use crate::error::Result;
use crate::homology::{
    ext_dim, extension_from_cocycle, les_dimension_check, mono_exists, projective_cover,
    stable_hom_dim, syzygy, StableHom,
};
use crate::linalg::Mat;
use crate::modrep::{free_module, simple_module, ModuleRep};
use crate::qalgebra::{build_algebra, Algebra, AlgebraConfig, AlgebraElement};
use crate::rankvariety::{
    induce_from_point, jordan_type, principal_module, probe_variety, u_element, ProbeStrategy,
    RankPoint,
};
use crate::scalars::Scalar;
use crate::seeds::{derive_seed, Opts};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub data: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub suite: String,
    pub seed: u64,
    pub algebra: Value,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Paper,
    Quick,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Paper => "paper",
            Suite::Quick => "quick",
        }
    }
}

/// Standard modules of a configuration used across the suite.
pub struct StandardModules {
    pub k: ModuleRep,
    pub regular: ModuleRep,
    pub rad: ModuleRep,
    pub a_mod_soc: ModuleRep,
    pub rad_mod_soc: ModuleRep,
}

pub fn standard_modules(algebra: &Arc<Algebra>) -> Result<StandardModules> {
    let regular = algebra.regular_module();
    let (rad, _) = regular.restrict_to(&regular.radical());
    let (a_mod_soc, _) = regular.quotient(&regular.socle())?;
    let (rad_mod_soc, _) = rad.quotient(&rad.socle())?;
    Ok(StandardModules {
        k: simple_module(algebra),
        regular,
        rad,
        a_mod_soc,
        rad_mod_soc,
    })
}

fn random_point(algebra: &Algebra, rng: &mut ChaCha8Rng) -> RankPoint {
    let p = algebra.field().p();
    loop {
        let v: Vec<Scalar> = (0..algebra.config.c).map(|_| rng.gen_range(0..p)).collect();
        let pt = RankPoint(v);
        if !pt.is_zero() {
            return pt;
        }
    }
}

/// A random finite-dimensional module: a quotient of A^2 by the submodule
/// generated by a few random vectors.
fn random_small_module(algebra: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Result<ModuleRep> {
    let free2 = free_module(algebra, 2);
    let p = algebra.field().p();
    let count = rng.gen_range(1..=3usize);
    let gens: Vec<Vec<Scalar>> = (0..count)
        .map(|_| (0..free2.dim).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    let sub = free2.submodule_generated(&gens);
    let (q, _) = free2.quotient(&sub)?;
    if q.dim == 0 {
        Ok(simple_module(algebra))
    } else {
        Ok(q)
    }
}

/// Catalog of small modules for formula checks: the standard quotients, low
/// syzygy shifts, and principal modules at a couple of directions.
fn build_catalog(algebra: &Arc<Algebra>, opts: &Opts) -> Result<Vec<ModuleRep>> {
    let std_mods = standard_modules(algebra)?;
    let a = algebra.config.exponents[0];
    let lam1 = RankPoint({
        let mut v = vec![0; algebra.config.c];
        v[0] = 1;
        v[1] = 1;
        v
    });
    let lam2 = RankPoint({
        let mut v = vec![0; algebra.config.c];
        v[0] = 1;
        v[1] = 2;
        v
    });
    let (au1, _) = principal_module(algebra, &lam1, 1)?;
    let (au1_top, _) = principal_module(algebra, &lam1, a - 1)?;
    let catalog = vec![
        std_mods.k.clone(),
        std_mods.rad.clone(),
        std_mods.a_mod_soc.clone(),
        std_mods.rad_mod_soc.clone(),
        syzygy(&std_mods.k, 2, opts)?,
        au1.clone(),
        au1_top,
        au1.twist(&algebra.nakayama),
        induce_from_point(algebra, &lam2, 1)?,
        std_mods.k.direct_sum(&au1),
    ];
    Ok(catalog)
}

struct Ctx {
    algebra: Arc<Algebra>,
    opts: Opts,
    seed: u64,
}

impl Ctx {
    fn rng(&self, tag: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.seed, tag, self.algebra.hash))
    }

    fn homogeneous(&self) -> (u32, Scalar) {
        self.algebra
            .config
            .homogeneous_parameters()
            .expect("suite runs on homogeneous configurations")
    }
}

fn check(id: &str, statement: &str, run: impl FnOnce() -> Result<(Status, Value)>) -> Check {
    let trace = std::env::var_os("QCI_TRACE").is_some();
    let t0 = std::time::Instant::now();
    let (status, data) = match run() {
        Ok(sd) => sd,
        Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
    };
    if trace {
        eprintln!("[trace] {id}: {:.2}s", t0.elapsed().as_secs_f64());
    }
    Check {
        id: id.to_string(),
        statement: statement.to_string(),
        status,
        data,
    }
}

fn pass_if(ok: bool, data: Value) -> (Status, Value) {
    (if ok { Status::Pass } else { Status::Fail }, data)
}

fn check_algebra_axioms(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let expected: usize = alg.config.exponents.iter().map(|&a| a as usize).product();
    let mut ok = alg.dim == expected;
    let mut assoc_checked = 0;
    if alg.dim <= 64 {
        'outer: for i in 0..alg.dim {
            for j in 0..alg.dim {
                for k in 0..alg.dim {
                    let bi = basis_elem(alg, i);
                    let bj = basis_elem(alg, j);
                    let bk = basis_elem(alg, k);
                    let l = alg.multiply(&alg.multiply(&bi, &bj), &bk);
                    let r = alg.multiply(&bi, &alg.multiply(&bj, &bk));
                    assoc_checked += 1;
                    if l != r {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    // unital
    let one = alg.one();
    for i in 0..alg.dim {
        let b = basis_elem(alg, i);
        if alg.multiply(&one, &b) != b || alg.multiply(&b, &one) != b {
            ok = false;
        }
    }
    Ok(pass_if(
        ok,
        json!({ "dim": alg.dim, "expected_dim": expected, "assoc_triples": assoc_checked }),
    ))
}

fn basis_elem(alg: &Algebra, i: usize) -> AlgebraElement {
    let mut v = vec![0; alg.dim];
    v[i] = 1;
    AlgebraElement(v)
}

fn check_u_power_zero(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let (a, _) = ctx.homogeneous();
    let mut rng = ctx.rng("u-power");
    let mut ok = true;
    for _ in 0..100 {
        let lam = random_point(alg, &mut rng);
        let u = u_element(alg, &lam);
        if alg.element_pow(&u, a) != alg.zero() {
            ok = false;
            break;
        }
    }
    Ok(pass_if(ok, json!({ "samples": 100 })))
}

fn check_principal_dimension(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let (a, _) = ctx.homogeneous();
    let c = alg.config.c as u32;
    let expected = (a as usize).pow(c - 1);
    let mut rng = ctx.rng("principal-dim");
    let mut ok = true;
    let mut seen = Vec::new();
    for _ in 0..20 {
        let lam = random_point(alg, &mut rng);
        let (w, _) = principal_module(alg, &lam, a - 1)?;
        seen.push(w.dim);
        if w.dim != expected {
            ok = false;
        }
    }
    Ok(pass_if(ok, json!({ "expected": expected, "dims": seen })))
}

fn check_principal_period(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let (a, _) = ctx.homogeneous();
    let mut rng = ctx.rng("principal-period");
    let mut ok = true;
    let mut data = Vec::new();
    for _ in 0..3 {
        let lam = random_point(alg, &mut rng);
        let (au, _) = principal_module(alg, &lam, 1)?;
        let (au_top, _) = principal_module(alg, &lam, a - 1)?;
        let o1 = syzygy(&au, 1, &ctx.opts)?;
        let o2 = syzygy(&au, 2, &ctx.opts)?;
        let first = is_isomorphic(&o1, &au_top, &ctx.opts).is_some();
        let second = is_isomorphic(&o2, &au, &ctx.opts).is_some();
        data.push(json!({ "omega1": first, "omega2": second }));
        ok &= first && second;
    }
    Ok(pass_if(ok, json!({ "instances": data })))
}

fn check_nakayama(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let f = alg.field();
    let nu = &alg.nakayama;
    let (a, _) = ctx.homogeneous();
    let c = alg.config.c;
    let mut ok = true;
    // adjoint identity on basis pairs (diagonality and multiplicativity are
    // enforced at build; re-check the defining property here)
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let lhs = alg.gram.at(i, j);
            let rhs = f.mul(alg.gram.at(j, i), nu.basis_scalars[i]);
            if lhs != rhs {
                ok = false;
            }
        }
    }
    // finite order realized
    ok &= nu.power(f, nu.order).is_identity();
    // exterior parity laws at a = 2
    let mut parity = json!(null);
    if a == 2 {
        if c % 2 == 1 {
            parity = json!({ "identity": nu.is_identity() });
            ok &= nu.is_identity();
        } else {
            let sq = nu.power(f, 2).is_identity();
            parity = json!({ "order_two": sq, "nontrivial": !nu.is_identity() });
            ok &= sq && !nu.is_identity();
        }
    }
    // twist and double syzygy commute up to isomorphism
    let std_mods = standard_modules(alg)?;
    let lam = RankPoint({
        let mut v = vec![0; c];
        v[0] = 1;
        v[c - 1] = 1;
        v
    });
    let (au, _) = principal_module(alg, &lam, 1)?;
    let mut commute = true;
    for m in [&std_mods.k, &std_mods.rad, &au] {
        let t1 = syzygy(&m.twist(nu), 2, &ctx.opts)?;
        let t2 = syzygy(m, 2, &ctx.opts)?.twist(nu);
        commute &= is_isomorphic(&t1, &t2, &ctx.opts).is_some();
    }
    ok &= commute;
    Ok(pass_if(
        ok,
        json!({
            "generator_scalars": nu.generator_scalars,
            "order": nu.order,
            "parity": parity,
            "twist_commutes": commute,
        }),
    ))
}

fn check_ar_formula(ctx: &Ctx) -> Result<(Status, Value)> {
    let catalog = build_catalog(&ctx.algebra, &ctx.opts)?;
    let mut ok = true;
    let mut pairs = 0;
    for w in &catalog {
        let tw = tau(w, &ctx.opts)?;
        for x in &catalog {
            let lhs = stable_hom_dim(w, x);
            let rhs = ext_dim(x, &tw, 1)?;
            pairs += 1;
            if lhs != rhs {
                ok = false;
            }
        }
    }
    Ok(pass_if(
        ok,
        json!({ "catalog_size": catalog.len(), "pairs": pairs }),
    ))
}

fn check_almost_split(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let std_mods = standard_modules(alg)?;
    let lam = RankPoint({
        let mut v = vec![0; alg.config.c];
        v[0] = 1;
        v[1] = 1;
        v
    });
    let (au, _) = principal_module(alg, &lam, 1)?;
    let catalog = build_catalog(alg, &ctx.opts)?;
    let mut ends: Vec<ModuleRep> = vec![std_mods.k.clone(), std_mods.a_mod_soc.clone(), au];
    ends.push(syzygy(&std_mods.k, 1, &ctx.opts)?);
    let mut ok = true;
    let mut rows = Vec::new();
    for end in &ends {
        let ar = ar_sequence_ending_at(end, &catalog, &ctx.opts)?;
        let exact = ar.seq.validate().is_ok();
        let split = ar.seq.is_split();
        // left term is tau(right), recomputed
        let t = tau(end, &ctx.opts)?;
        let left_is_tau = is_isomorphic(&ar.seq.left, &t, &ctx.opts).is_some();
        rows.push(json!({
            "end_dim": end.dim,
            "left_dim": ar.seq.left.dim,
            "middle_dim": ar.seq.middle.dim,
            "maps_tested": ar.maps_tested,
            "exact": exact,
            "split": split,
            "left_is_tau": left_is_tau,
        }));
        ok &= exact && !split && left_is_tau && ar.maps_tested >= 10;
    }
    Ok(pass_if(ok, json!({ "sequences": rows })))
}

fn check_wild_boundary(ctx: &Ctx) -> Result<(Status, Value)> {
    let (a, _) = ctx.homogeneous();
    let c = ctx.algebra.config.c;
    if !(a == 3 && c == 2) {
        return Ok((
            Status::Skipped,
            json!({ "reason": "boundary hypothesis needs a = 3, c = 2" }),
        ));
    }
    let std_mods = standard_modules(&ctx.algebra)?;
    let indec = matches!(
        is_indecomposable(&std_mods.rad_mod_soc, &ctx.opts)?,
        IndecVerdict::AbsolutelyIndecomposable
    );
    let catalog = build_catalog(&ctx.algebra, &ctx.opts)?;
    let ar = ar_sequence_ending_at(&std_mods.a_mod_soc, &catalog, &ctx.opts)?;
    let left_is_rad = is_isomorphic(&ar.seq.left, &std_mods.rad, &ctx.opts).is_some();
    let mut has_proj = false;
    let mut has_rad_mod_soc = false;
    for (piece, mult) in &ar.middle.pieces {
        if crate::decomp::is_projective(piece) && piece.dim == ctx.algebra.dim && *mult == 1 {
            has_proj = true;
        } else if is_isomorphic(piece, &std_mods.rad_mod_soc, &ctx.opts).is_some() && *mult == 1 {
            has_rad_mod_soc = true;
        }
    }
    let middle_matches = has_proj && has_rad_mod_soc && ar.middle.pieces.len() == 2;
    let ok = indec && left_is_rad && middle_matches;
    Ok(pass_if(
        ok,
        json!({
            "rad_mod_soc_indecomposable": indec,
            "left_is_rad": left_is_rad,
            "middle_is_a_plus_rad_mod_soc": middle_matches,
        }),
    ))
}

fn check_self_extensions(ctx: &Ctx) -> Result<(Status, Value)> {
    let (a, _) = ctx.homogeneous();
    if a != 2 {
        return Ok((
            Status::Skipped,
            json!({ "reason": "self-extension count is stated at a = 2" }),
        ));
    }
    let c = ctx.algebra.config.c as u32;
    let expected = 2usize.pow(c - 1);
    let mut rng = ctx.rng("self-ext");
    let lam = random_point(&ctx.algebra, &mut rng);
    let (au, _) = principal_module(&ctx.algebra, &lam, 1)?;
    let got = ext_dim(&au, &au, 1)?;
    Ok(pass_if(
        got == expected,
        json!({ "expected": expected, "got": got }),
    ))
}

fn check_eckmann_shapiro(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let mut rng = ctx.rng("eckmann-shapiro");
    let mut ok = true;
    let mut rows = Vec::new();
    for _ in 0..10 {
        let l = random_small_module(alg, &mut rng)?;
        let lam = random_point(alg, &mut rng);
        let induced = induce_from_point(alg, &lam, 1)?;
        let a_side = ext_dim(&induced, &l, 1)?;
        let jt = jordan_type(&l, &lam)?;
        let u_side = jt.nonfree_blocks();
        rows.push(json!({ "dim_l": l.dim, "a_side": a_side, "u_side": u_side }));
        ok &= a_side == u_side;
    }
    Ok(pass_if(ok, json!({ "instances": rows })))
}

fn check_additive_function(ctx: &Ctx) -> Result<(Status, Value)> {
    let (a, _) = ctx.homogeneous();
    let c = ctx.algebra.config.c;
    if !(a == 2 && c == 2) {
        return Ok((
            Status::Skipped,
            json!({ "reason": "the tame component exists at a = c = 2 only" }),
        ));
    }
    let std_mods = standard_modules(&ctx.algebra)?;
    let fragment = explore_component(&std_mods.k, 4, &ctx.opts)?;
    let lam = RankPoint(vec![1, 1]);
    let (au, _) = principal_module(&ctx.algebra, &lam, 1)?;
    let w = au.direct_sum(&au.twist(&ctx.algebra.nakayama));
    let report = additive_function(&w, &fragment, &ctx.opts)?;
    let additive = report.additivity_residuals.iter().all(|&r| r == 0);
    let tau_const = report
        .tau_residuals
        .as_ref()
        .map(|rs| rs.iter().all(|&r| r == 0))
        .unwrap_or(false);
    Ok(pass_if(
        additive && tau_const,
        json!({
            "vertices": report.values.len(),
            "additivity_residuals": report.additivity_residuals,
            "tau_residuals": report.tau_residuals,
        }),
    ))
}

fn check_tame_component(ctx: &Ctx) -> Result<(Status, Value)> {
    let (a, _) = ctx.homogeneous();
    let c = ctx.algebra.config.c;
    if !(a == 2 && c == 2) {
        return Ok((
            Status::Skipped,
            json!({ "reason": "the tame classification applies at a = c = 2 only" }),
        ));
    }
    let std_mods = standard_modules(&ctx.algebra)?;
    let fragment = explore_component(&std_mods.k, 4, &ctx.opts)?;
    let evidence = classify_component(&fragment);
    let tame_ok = evidence.verdict == TreeClassVerdict::TildeA12Pattern
        && fragment.vertices.iter().all(|v| v.periodic.is_none());
    let lam = RankPoint(vec![1, 1]);
    let (au, _) = principal_module(&ctx.algebra, &lam, 1)?;
    let tube_frag = explore_component(&au, 2, &ctx.opts)?;
    let tube_ev = classify_component(&tube_frag);
    let tube_ok = matches!(tube_ev.verdict, TreeClassVerdict::Tube { rank } if rank <= 2);
    Ok(pass_if(
        tame_ok && tube_ok,
        json!({
            "tame_verdict": format!("{:?}", evidence.verdict),
            "tame_orbits": evidence.tau_orbit_count,
            "middle_shapes": evidence.middle_shapes,
            "tube_verdict": format!("{:?}", tube_ev.verdict),
        }),
    ))
}

fn check_conditional_ingredients(ctx: &Ctx) -> Result<(Status, Value)> {
    let alg = &ctx.algebra;
    let field = alg.field();
    let std_mods = standard_modules(alg)?;
    let k = &std_mods.k;
    let lam = RankPoint({
        let mut v = vec![0; alg.config.c];
        v[0] = 1;
        v
    });
    let (au, _) = principal_module(alg, &lam, 1)?;

    // LES rank bookkeeping on a split sequence, the cover sequence of k, and
    // an almost split sequence, against two coefficient modules
    let cover = projective_cover(k);
    let zero = Mat::zeros(field, k.dim, cover.syzygy.dim);
    let split_seq = extension_from_cocycle(k, k, &cover, &zero)?;
    let id = Mat::identity(field, cover.syzygy.dim);
    let cover_seq = extension_from_cocycle(k, &cover.syzygy.clone(), &cover, &id)?;
    let catalog = build_catalog(alg, &ctx.opts)?;
    let ar = ar_sequence_ending_at(k, &catalog, &ctx.opts)?;
    let mut les_ok = true;
    for seq in [&split_seq, &cover_seq, &ar.seq] {
        for w in [k, &au] {
            let rep = les_dimension_check(seq, w, 2)?;
            les_ok &= rep.ok;
        }
    }

    // dimension shift: Ext^1(L, W) = stable Hom(Omega L, W) = stable
    // Hom(L, Omega^{-1} W)
    let mut shift_ok = true;
    for l in [k, &std_mods.a_mod_soc] {
        for w in [&au, k] {
            let via_omega = ext_dim(l, w, 1)?;
            let cow = syzygy(w, -1, &ctx.opts)?;
            let via_coomega = stable_hom_dim(l, &cow);
            shift_ok &= via_omega == via_coomega;
        }
    }

    // monomorphism tests
    let regular = &std_mods.regular;
    let mono_ok = mono_exists(k, regular, &ctx.opts)
        && !mono_exists(&std_mods.a_mod_soc, k, &ctx.opts)
        && mono_exists(&std_mods.rad, regular, &ctx.opts);

    // split detection matches class vanishing on a basis of cocycles
    let sh = StableHom::compute(&cover.syzygy, k);
    let mut split_detect_ok = true;
    for j in 0..sh.stable_dim {
        let mut unit = vec![0; sh.stable_dim];
        unit[j] = 1;
        let class = sh.representative(&unit);
        let seq = extension_from_cocycle(k, k, &cover, &class)?;
        split_detect_ok &= !seq.is_split();
    }
    let zero_class = extension_from_cocycle(k, k, &cover, &Mat::zeros(field, 1, cover.syzygy.dim))?;
    split_detect_ok &= zero_class.is_split();

    let ok = les_ok && shift_ok && mono_ok && split_detect_ok;
    Ok(pass_if(
        ok,
        json!({
            "les_ok": les_ok,
            "dimension_shift_ok": shift_ok,
            "mono_tests_ok": mono_ok,
            "split_detection_ok": split_detect_ok,
        }),
    ))
}

fn vacuous_check(id: &str, statement: &str, hypothesis: &str) -> Check {
    Check {
        id: id.to_string(),
        statement: statement.to_string(),
        status: Status::Vacuous,
        data: json!({
            "hypothesis": hypothesis,
            "note": "the hypothesized tree classes do not occur for these algebras; ingredients are tested separately",
        }),
    }
}

fn check_wild_evidence(ctx: &Ctx) -> Result<(Status, Value)> {
    let (a, _) = ctx.homogeneous();
    let c = ctx.algebra.config.c;
    if a == 2 && c == 2 {
        return Ok((
            Status::Skipped,
            json!({ "reason": "the a = c = 2 algebra is tame" }),
        ));
    }
    if a == 2 && c == 3 {
        return Ok((
            Status::Skipped,
            json!({ "reason": "syzygy growth makes radius-3 exploration exceed the suite budget; radius-3 evidence is gathered at a = 3, c = 2" }),
        ));
    }
    let std_mods = standard_modules(&ctx.algebra)?;
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, start) in [("rad", &std_mods.rad), ("k", &std_mods.k)] {
        let fragment = explore_component(start, 3, &ctx.opts)?;
        let ev = classify_component(&fragment);
        let good = matches!(
            ev.verdict,
            TreeClassVerdict::AInfinityConsistent { radius } if radius >= 3
        ) && !ev.end_vertices.is_empty();
        rows.push(json!({
            "start": name,
            "verdict": format!("{:?}", ev.verdict),
            "end_vertices": ev.end_vertices,
            "vertices": fragment.vertices.len(),
        }));
        ok &= good;
    }
    Ok(pass_if(ok, json!({ "fragments": rows })))
}

fn check_determinism(ctx: &Ctx) -> Result<(Status, Value)> {
    let run_once = || -> Result<String> {
        let std_mods = standard_modules(&ctx.algebra)?;
        let fragment = explore_component(&std_mods.k, 2, &ctx.opts)?;
        let ev = classify_component(&fragment);
        let mut out = fragment_to_json(&fragment, &ev);
        let lam = RankPoint({
            let mut v = vec![0; ctx.algebra.config.c];
            v[0] = 1;
            v
        });
        let (au, _) = principal_module(&ctx.algebra, &lam, 1)?;
        let probe = probe_variety(
            &au,
            &ProbeStrategy::Random { samples: 8 },
            &ctx.opts,
        )?;
        out.push_str(&serde_json::to_string(&probe)?);
        let dec = decompose(&std_mods.rad_mod_soc.direct_sum(&std_mods.regular), &ctx.opts)?;
        for (piece, mult) in &dec.pieces {
            out.push_str(&format!("{}x{};", piece.dim, mult));
        }
        Ok(out)
    };
    let first = run_once()?;
    let second = run_once()?;
    Ok(pass_if(
        first == second,
        json!({ "bytes": first.len(), "identical": first == second }),
    ))
}

/// Run the verification suite on one configuration.
pub fn run_suite(config: &AlgebraConfig, suite: Suite, seed: u64) -> Result<VerificationReport> {
    let algebra = build_algebra(config.clone())?;
    let opts = Opts::with_seed(seed);
    let ctx = Ctx {
        algebra: algebra.clone(),
        opts,
        seed,
    };
    let mut checks = Vec::new();
    checks.push(check(
        "algebra_axioms",
        "dim A equals the product of the exponents; multiplication is associative and unital on the full basis",
        || check_algebra_axioms(&ctx),
    ));
    checks.push(check(
        "u_power_zero",
        "u_lambda^a = 0 for 100 seeded random directions",
        || check_u_power_zero(&ctx),
    ));
    checks.push(check(
        "principal_dimension",
        "dim Au_lambda^{a-1} = a^{c-1} for 20 seeded nonzero directions",
        || check_principal_dimension(&ctx),
    ));
    checks.push(check(
        "principal_period",
        "Omega(Au) = Au^{a-1} and Omega^2(Au) = Au up to isomorphism",
        || check_principal_period(&ctx),
    ));
    checks.push(check(
        "nakayama_structure",
        "the Nakayama automorphism is diagonal and multiplicative with the expected finite order, and commutes with the double syzygy",
        || check_nakayama(&ctx),
    ));
    if suite == Suite::Paper {
        checks.push(check(
            "ar_formula",
            "dim of stable Hom(W, X) equals dim Ext^1(X, tau W) across the catalog",
            || check_ar_formula(&ctx),
        ));
        checks.push(check(
            "almost_split_sequences",
            "constructed sequences are exact, non-split, start at tau of the end term, and pass the lifting test",
            || check_almost_split(&ctx),
        ));
        checks.push(check(
            "wild_boundary",
            "rad/soc is absolutely indecomposable and the sequence ending at A/soc has middle A + rad/soc",
            || check_wild_boundary(&ctx),
        ));
        checks.push(check(
            "self_extensions_exterior",
            "dim Ext^1(Au, Au) = 2^{c-1} at a = 2",
            || check_self_extensions(&ctx),
        ));
        checks.push(check(
            "eckmann_shapiro",
            "dim Ext^1 from the induced block module equals the non-free Jordan block count of the restriction",
            || check_eckmann_shapiro(&ctx),
        ));
        checks.push(check(
            "additive_function_tame",
            "the stable hom function from a tube module is additive and tau-constant on the tame component",
            || check_additive_function(&ctx),
        ));
        checks.push(check(
            "tame_component",
            "the component of k matches the two-orbit doubled-arrow pattern with one projective insertion; principal modules close into tubes",
            || check_tame_component(&ctx),
        ));
        checks.push(check(
            "conditional_ingredients",
            "induced-map ranks, long-exact-sequence bookkeeping, dimension shifts, and monomorphism tests behave as required",
            || check_conditional_ingredients(&ctx),
        ));
        checks.push(vacuous_check(
            "ext_transfer_conclusion",
            "equality of first extension spaces along an irreducible surjection",
            "component tree class A-infinity-infinity or D-infinity with a two-predecessor end term",
        ));
        checks.push(vacuous_check(
            "ext_vanishing_conclusion",
            "vanishing of first extensions against summands admitting no monomorphism from the kernel",
            "component tree class A-infinity-infinity or D-infinity with a two-predecessor end term",
        ));
        checks.push(vacuous_check(
            "self_ext_two_conclusion",
            "two-dimensionality of the kernel's first self-extension space at a = 2",
            "component tree class A-infinity-infinity or D-infinity with a two-predecessor end term",
        ));
        checks.push(check(
            "wild_evidence",
            "wild fragments explored to radius >= 3 are A-infinity consistent with an end vertex",
            || check_wild_evidence(&ctx),
        ));
        checks.push(check(
            "determinism",
            "seeded reruns of the randomized subset produce byte-identical artifacts",
            || check_determinism(&ctx),
        ));
    }
    Ok(VerificationReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        suite: suite.name().to_string(),
        seed,
        algebra: serde_json::from_str(&config.to_json())?,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::make_field;

    #[test]
    fn quick_suite_small_prime() {
        let f = make_field(5).unwrap();
        let cfg = AlgebraConfig::homogeneous(f, 2, 2, 4).unwrap();
        let report = run_suite(&cfg, Suite::Quick, 1).unwrap();
        assert_eq!(report.checks.len(), 5);
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "check {} failed: {}", c.id, c.data);
        }
    }

    #[test]
    fn report_json_is_deterministic() {
        let f = make_field(5).unwrap();
        let cfg = AlgebraConfig::homogeneous(f, 2, 2, 4).unwrap();
        let r1 = run_suite(&cfg, Suite::Quick, 7).unwrap();
        let r2 = run_suite(&cfg, Suite::Quick, 7).unwrap();
        assert_eq!(r1.to_json(), r2.to_json());
    }
}
