//! The verification suite and its JSON report.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homology::{pair_z, pair_z2};
use crate::mcg::MappingClass;
use crate::model::{CurveData, Model, RigidSymmetry};
use crate::polygon::{chain_complex_oracle, crosswalk};
use crate::search::{find_conjugating_power, subgroup_equal_with_threads, threads_from_env, NamedGen, Packing, Rep, SubgroupVerdict, DEFAULT_CAP};
use crate::words::{parse_word, print_word, Evaluator};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Indeterminate,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Process exit code for an overall status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Indeterminate => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub claim: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub genus: usize,
    pub theorem_scope: bool,
    pub warning: Option<String>,
    pub conventions: Value,
    pub checks: Vec<CheckRecord>,
    pub closure: Value,
    pub overall: Status,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mod3: bool,
    pub cap: usize,
    /// Adds wall-clock times to the closure statistics (breaks byte-identity).
    pub timings: bool,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mod3: false, cap: DEFAULT_CAP, timings: false, threads: threads_from_env() }
    }
}

/// Names of every check, in report order.
pub const CHECK_NAMES: [&str; 16] = [
    "homology_oracle",
    "crosswalk",
    "sigma_order",
    "tau1_b0_order",
    "tau2_c_order",
    "klein_bottle_relations",
    "rigid_identities",
    "conjugating_power",
    "membership_table",
    "tau1_tau3_parity",
    "curve_identity",
    "twist_naturality",
    "pairing_suite",
    "oracle_consistency",
    "generation_z2",
    "generation_z3",
];

struct Ctx<'m> {
    model: &'m Model,
    ev: Evaluator<'m>,
    opts: VerifyOptions,
    closure: serde_json::Map<String, Value>,
}

impl Ctx<'_> {
    fn g(&self) -> usize {
        self.model.genus()
    }

    fn eval(&mut self, text: &str) -> Result<MappingClass> {
        self.ev.evaluate_str(text)
    }

    fn rigid(&self, name: &str) -> Result<RigidSymmetry> {
        self.model.standard_symmetry(name)
    }
}

type CheckFn = fn(&mut Ctx) -> Result<(Status, Value)>;

pub fn run_verification(genus: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let model = Model::new(genus)?;
    run_with_model(&model, opts)
}

pub fn run_with_model(model: &Model, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut ctx = Ctx { model, ev: Evaluator::new(model), opts: opts.clone(), closure: serde_json::Map::new() };
    let table: [(&str, &str, CheckFn); 16] = [
        ("homology_oracle", "H_1 of the 2g-gon complex is Z^(g-1) + Z/2", check_homology_oracle),
        ("crosswalk", "2g-gon and crosscap models agree on arcs, classes and symmetries", check_crosswalk),
        ("sigma_order", "sigma has order exactly 2g", check_sigma_order),
        ("tau1_b0_order", "(tau1 B0)^2 = 1", |c| check_involution_product(c, "tau1", "b0", "TAU1 B0")),
        ("tau2_c_order", "(tau2 C)^2 = 1", |c| check_involution_product(c, "tau2", "c", "TAU2 C")),
        ("klein_bottle_relations", "Y_i = A_i U_i and Y_i^2 = U_i^2 = D_i", check_klein_bottle),
        ("rigid_identities", "sigma = t tau3, tau3 = sigma^g, tau_i^2 = 1", check_rigid_identities),
        ("conjugating_power", "t^k tau1 t^-k = tau2 for some k", check_conjugating_power),
        ("membership_table", "twists and rigid symmetries in T(N_g); U_i, Y_i outside", check_membership),
        ("tau1_tau3_parity", "tau1 tau3 lies in T(N_g)", check_parity),
        ("curve_identity", "A_1^-1 [e] = [c] and C = A_1^-1 E A_1", check_curve_identity),
        ("twist_naturality", "r T_k r^-1 = T_r(k) with the pushed-forward co-orientation", check_naturality),
        ("pairing_suite", "pairing rows: mod-2 agreement, zero self-pairing, zero row sums", check_pairing_suite),
        ("oracle_consistency", "signed crossings of two curves equal the pairing of their classes", check_oracle_consistency),
        ("generation_z2", "<sigma, tau1 B0, tau2 C> = <A_1..A_g, B0, C> over Z/2", |c| check_generation(c, Rep::Z2)),
        ("generation_z3", "the same subgroup equality on the free part over Z/3", |c| check_generation(c, Rep::Z3)),
    ];
    let mut checks = Vec::with_capacity(table.len());
    for (name, claim, f) in table {
        let (status, witness) = match f(&mut ctx) {
            Ok(r) => r,
            Err(e @ Error::CurveUnavailable { .. }) => (Status::Indeterminate, json!({ "unavailable": e.to_string() })),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        checks.push(CheckRecord { name: name.into(), claim: claim.into(), status, witness });
    }
    let overall = checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
    let cfg = &model.config;
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        genus: model.genus(),
        theorem_scope: model.spec.theorem_scope,
        warning: model.spec.warning.clone(),
        conventions: json!({
            "config_fingerprint": cfg.fingerprint,
            "config_version": cfg.version,
            "composition": "right to left",
            "twist": "right-hand: x -> x + <x, c> [c]",
            "pairing": "signed crossings on the crosscap sphere, co-orientation flipping at each passage",
            "equality": "equal in homology representations",
            "tau1_pole_swap": model.standard_symmetry("tau1")?.swaps_poles(),
        }),
        checks,
        closure: Value::Object(ctx.closure),
        overall,
    })
}

fn check_homology_oracle(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let h = chain_complex_oracle(ctx.g())?;
    let ok = h.h0.invariant_factors() == vec![0]
        && h.h1.torsion == vec![2]
        && h.h1.rank == ctx.g() - 1
        && h.h2.invariant_factors().is_empty();
    Ok((Status::from_bool(ok), json!({ "h0": h.h0.to_string(), "h1": h.h1.to_string(), "h2": h.h2.to_string() })))
}

fn check_crosswalk(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let t = crosswalk(ctx.model)?;
    let disagreeing: Vec<&String> = t.curves.iter().filter(|c| !c.agree).map(|c| &c.crosscap_curve).collect();
    let tau1 = ctx.rigid("tau1")?;
    let tau1_polygon: Vec<&String> = t
        .symmetries
        .iter()
        .filter(|s| s.crosscap.as_ref().is_some_and(|(cy, _, refl)| *cy == tau1.cycles() && *refl))
        .map(|s| &s.polygon)
        .collect();
    Ok((
        Status::from_bool(t.all_agree()),
        json!({
            "arcs": t.arcs.len(),
            "lattice_ok": t.lattice_ok,
            "curves_checked": t.curves.len(),
            "disagreeing_curves": disagreeing,
            "symmetries_bijective": t.symmetries_bijective,
            "rotation_is_sigma": t.rotation_is_sigma,
            "band_signs": t.band_signs,
            "tau1_polygon_reflections": tau1_polygon,
        }),
    ))
}

fn check_sigma_order(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let g = ctx.g();
    let rigid = ctx.rigid("sigma")?.order();
    let rep = ctx.eval("SGM")?.rep_order(4 * g);
    let ok = rigid == 2 * g && rep == Some(2 * g);
    Ok((Status::from_bool(ok), json!({ "rigid_order": rigid, "rep_order": rep })))
}

/// rep_order(tau B) = 2 bounds the order below; the upper bound comes from
/// tau B tau^-1 = B^-1 (the rigid image of the curve is the curve with the
/// opposite twist) together with tau^2 = 1.
fn check_involution_product(ctx: &mut Ctx, sym: &str, curve: &str, word: &str) -> Result<(Status, Value)> {
    let r = ctx.rigid(sym)?;
    let k = ctx.model.standard_curve(curve)?;
    let img = ctx.model.apply_rigid_to_curve(&r, &k)?;
    let relation = img.twist_relation(&k);
    let m_r = MappingClass::from_rigid(ctx.model, &r)?;
    let m_k = MappingClass::dehn_twist(&k, 1)?;
    let conj_inverse = m_r.compose(&m_k).compose(&m_r.inverse()) == m_k.inverse();
    let involution = r.order() == 2;
    let rep_order = ctx.eval(word)?.rep_order(16);
    let upper_bound = (relation == Some(-1) && conj_inverse && involution).then_some(2);
    let ok = rep_order == Some(2) && upper_bound == Some(2);
    Ok((
        Status::from_bool(ok),
        json!({
            "rep_order": rep_order,
            "group_upper_bound": upper_bound,
            "rigid_image_twist_exponent": relation,
            "conjugation_gives_inverse": conj_inverse,
            "symmetry_is_involution": involution,
        }),
    ))
}

fn check_klein_bottle(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let mut bad = Vec::new();
    for i in 1..=ctx.g() {
        let y = ctx.eval(&format!("Y{i}"))?;
        let au = ctx.eval(&format!("A{i} U{i}"))?;
        let y2 = y.power(2);
        let u2 = ctx.eval(&format!("U{i} U{i}"))?;
        let d = ctx.eval(&format!("D{i}"))?;
        let ok = y == au && y.equal_in_reps(&au) && y2 == u2 && u2 == d && d.is_identity();
        if !ok {
            bad.push(i);
        }
    }
    Ok((Status::from_bool(bad.is_empty()), json!({ "indices_checked": ctx.g(), "failing_indices": bad })))
}

fn check_rigid_identities(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let g = ctx.g();
    let (t, tau1, tau2, tau3, sigma) =
        (ctx.rigid("t")?, ctx.rigid("tau1")?, ctx.rigid("tau2")?, ctx.rigid("tau3")?, ctx.rigid("sigma")?);
    let sigma_eq = t.compose(&tau3)? == sigma;
    let tau3_eq = sigma.power(g as i64) == tau3;
    let involutions = [&tau1, &tau2, &tau3].iter().all(|r| r.power(2).is_identity());
    let group = ctx.model.symmetry_group()?.len();
    let m_sigma_eq = ctx.eval("SGM")? == ctx.eval("ROT TAU3")?;
    let m_tau3_eq = ctx.eval("SGM")?.power(g as i64) == ctx.eval("TAU3")?;
    let ok = sigma_eq && tau3_eq && involutions && group == 4 * g && m_sigma_eq && m_tau3_eq;
    Ok((
        Status::from_bool(ok),
        json!({
            "sigma_is_t_tau3": sigma_eq,
            "tau3_is_sigma_pow_g": tau3_eq,
            "taus_are_involutions": involutions,
            "symmetry_group_order": group,
            "matrices_agree": m_sigma_eq && m_tau3_eq,
            "orders": { "t": t.order(), "sigma": sigma.order(), "tau1": tau1.order(), "tau2": tau2.order(), "tau3": tau3.order() },
        }),
    ))
}

fn check_conjugating_power(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let (t, tau1, tau2) = (ctx.eval("ROT")?, ctx.eval("TAU1")?, ctx.eval("TAU2")?);
    let k = find_conjugating_power(&t, &tau1, &tau2);
    let rt = ctx.rigid("t")?;
    let rigid_ok = k.is_some_and(|k| {
        let k = k as i64;
        let c = rt.power(k).compose(&ctx.rigid("tau1").expect("tau1")).and_then(|x| x.compose(&rt.power(-k)));
        c.ok() == ctx.rigid("tau2").ok()
    });
    Ok((Status::from_bool(k.is_some() && rigid_ok), json!({ "k": k, "rigid_level_agrees": rigid_ok })))
}

/// (generator, expected det, det_free) rows and the unavailable generators.
type Membership = (Vec<(String, i64, i64)>, Vec<String>);

fn membership_rows(ctx: &mut Ctx) -> Result<Membership> {
    let g = ctx.g();
    let mut expect: Vec<(String, i64)> = (1..=g).map(|i| (format!("A{i}"), 1)).collect();
    expect.extend(["B0", "C", "E", "SGM", "ROT", "TAU1", "TAU2", "TAU3"].iter().map(|s| (s.to_string(), 1)));
    expect.extend((1..=g).map(|i| (format!("U{i}"), -1)));
    expect.extend((1..=g).map(|i| (format!("Y{i}"), -1)));
    let mut rows = Vec::new();
    let mut unavailable = Vec::new();
    for (tok, want) in expect {
        match ctx.eval(&tok) {
            Ok(m) => rows.push((tok, want, m.det_free())),
            Err(Error::CurveUnavailable { .. }) => unavailable.push(tok),
            Err(e) => return Err(e),
        }
    }
    Ok((rows, unavailable))
}

fn check_membership(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let (rows, unavailable) = membership_rows(ctx)?;
    let mismatches: Vec<Value> = rows
        .iter()
        .filter(|(_, want, got)| want != got)
        .map(|(t, want, got)| json!({ "generator": t, "expected": want, "det_free": got }))
        .collect();
    let table: serde_json::Map<String, Value> = rows.iter().map(|(t, _, got)| (t.clone(), json!(got))).collect();
    let status = if !mismatches.is_empty() {
        Status::Fail
    } else if !unavailable.is_empty() {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    Ok((status, json!({ "det_free": table, "mismatches": mismatches, "unavailable": unavailable })))
}

fn check_parity(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let d = ctx.eval("TAU1 TAU3")?.det_free();
    let d1 = ctx.eval("TAU1")?.det_free();
    // On the free part a crosscap reflection is +-(a permutation with (g-1)/2
    // transpositions), so its determinant is (-1)^((g-1)/2).
    let predicted = if ((ctx.g() - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    Ok((Status::from_bool(d == 1), json!({ "det_free_tau1_tau3": d, "det_free_tau1": d1, "predicted_by_permutation_sign": predicted })))
}

fn check_curve_identity(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let e = ctx.model.standard_curve("e")?;
    let c = ctx.model.standard_curve("c")?;
    let a1 = ctx.eval("A1")?;
    let pulled = a1.inverse().apply(&e.class_z);
    let class_ok = pulled == c.class_z || pulled == c.class_z.neg();
    let lhs = ctx.eval("C")?;
    let rhs = ctx.eval("A1' E A1")?;
    let ok = class_ok && lhs == rhs && lhs.equal_in_reps(&rhs);
    Ok((
        Status::from_bool(ok),
        json!({ "a1_inverse_e": pulled.coeffs(), "c": c.class_z.coeffs(), "conjugation_equal": lhs == rhs }),
    ))
}

fn two_sided_curves(model: &Model) -> Result<Vec<CurveData>> {
    let mut out = Vec::new();
    for name in model.curve_names() {
        let c = model.standard_curve(&name)?;
        if c.two_sided {
            out.push(c);
        }
    }
    Ok(out)
}

fn check_naturality(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let curves = two_sided_curves(ctx.model)?;
    let mut failures = Vec::new();
    let mut count = 0;
    // Sign of the image relative to the standard curve it lands on, split by
    // whether r preserves the orientation of the sphere.
    let mut signs = [[0usize; 2]; 2];
    for r in ctx.model.symmetry_group()? {
        let m_r = MappingClass::from_rigid(ctx.model, &r)?;
        let m_r_inv = m_r.inverse();
        for k in &curves {
            count += 1;
            let img = ctx.model.apply_rigid_to_curve(&r, k)?;
            let conj = m_r.compose(&MappingClass::dehn_twist(k, 1)?).compose(&m_r_inv);
            let z2_ok = img.class_z2.bits() == m_r.mat_z2().mul_vec(k.class_z2.bits()).as_slice();
            if conj != MappingClass::dehn_twist(&img, 1)? || !z2_ok {
                failures.push(format!("{:?} on {}", r, k.name));
            }
            if let Some(rel) = curves.iter().find_map(|s| img.twist_relation(s)) {
                signs[usize::from(!r.preserves_sphere_orientation())][usize::from(rel < 0)] += 1;
            }
        }
    }
    Ok((
        Status::from_bool(failures.is_empty()),
        json!({
            "pairs_checked": count,
            "failures": failures,
            "standard_image_signs": {
                "orientation_preserving": { "same": signs[0][0], "opposite": signs[0][1] },
                "orientation_reversing": { "same": signs[1][0], "opposite": signs[1][1] },
            },
        }),
    ))
}

fn check_pairing_suite(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let mut all: Vec<CurveData> = Vec::new();
    for name in ctx.model.curve_names() {
        all.push(ctx.model.standard_curve(&name)?);
    }
    let mut failures = Vec::new();
    let mut pairs = 0;
    for c in all.iter().filter(|c| c.two_sided) {
        let row = c.pairing_row.as_ref().expect("two-sided");
        if row.iter().sum::<i64>() != 0 {
            failures.push(format!("row sum of {}", c.name));
        }
        if pair_z(&c.class_z, c)? != 0 {
            failures.push(format!("self-pairing of {}", c.name));
        }
        if c.class_z.reduce_mod2() != c.class_z2 {
            failures.push(format!("mod-2 class of {}", c.name));
        }
        if MappingClass::dehn_twist(c, 1)?.det_free() != 1 {
            failures.push(format!("transvection determinant of {}", c.name));
        }
        for x in &all {
            pairs += 1;
            let z = pair_z(&x.class_z, c)?;
            if z.rem_euclid(2) as u8 != pair_z2(&x.class_z2, &c.class_z2) {
                failures.push(format!("mod-2 pairing {} . {}", x.name, c.name));
            }
        }
    }
    Ok((Status::from_bool(failures.is_empty()), json!({ "pairs_checked": pairs, "failures": failures })))
}

/// Geometric signed crossings between distinct standard curves against the
/// pairing computed from the first curve's traced class.
fn check_oracle_consistency(ctx: &mut Ctx) -> Result<(Status, Value)> {
    let mut all: Vec<CurveData> = Vec::new();
    for name in ctx.model.curve_names() {
        all.push(ctx.model.standard_curve(&name)?);
    }
    let mut failures = Vec::new();
    let mut pairs = 0;
    let mut degenerate = 0;
    for c in all.iter().filter(|c| c.two_sided) {
        for x in all.iter().filter(|x| x.name != c.name) {
            match ctx.model.signed_pairing_oracle(x, c) {
                Ok(v) => {
                    pairs += 1;
                    if v != pair_z(&x.class_z, c)? {
                        failures.push(format!("{} . {}", x.name, c.name));
                    }
                }
                Err(Error::DegenerateGeometry(_)) => degenerate += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok((
        Status::from_bool(failures.is_empty()),
        json!({ "pairs_checked": pairs, "degenerate_pairs_skipped": degenerate, "failures": failures }),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenSet {
    /// sigma, tau1 B0, tau2 C.
    Torsion,
    /// A_1..A_g, B0, C.
    Omori,
}

impl GenSet {
    pub fn words(self, genus: usize) -> Vec<String> {
        match self {
            GenSet::Torsion => vec!["SGM".into(), "TAU1 B0".into(), "TAU2 C".into()],
            GenSet::Omori => {
                let mut w: Vec<String> = (1..=genus).map(|i| format!("A{i}")).collect();
                w.extend(["B0".into(), "C".into()]);
                w
            }
        }
    }

    pub fn build(self, ev: &mut Evaluator) -> Result<Vec<NamedGen>> {
        let g = ev.model().genus();
        self.words(g)
            .iter()
            .map(|text| {
                let w = parse_word(text, g)?;
                Ok(NamedGen::new(w.clone(), ev.evaluate(&w)?))
            })
            .collect()
    }
}

fn check_generation(ctx: &mut Ctx, rep: Rep) -> Result<(Status, Value)> {
    let g = ctx.g();
    if rep == Rep::Z3 && !ctx.opts.mod3 {
        return Ok((Status::Pass, json!({ "skipped": "mod-3 closure not requested" })));
    }
    if Packing::for_genus(rep, g).is_err() {
        return Ok((Status::Indeterminate, json!({ "skipped": "matrix too large for the packed closure" })));
    }
    let torsion = GenSet::Torsion.build(&mut ctx.ev)?;
    let omori = GenSet::Omori.build(&mut ctx.ev)?;
    let start = Instant::now();
    let verdict = subgroup_equal_with_threads(&torsion, &omori, rep, ctx.opts.cap, ctx.opts.threads)?;
    let elapsed = start.elapsed().as_secs_f64();
    let key = match rep {
        Rep::Z2 => "z2",
        Rep::Z3 => "z3",
    };
    let (status, witness) = match &verdict {
        SubgroupVerdict::Equal { order, b_in_a, a_in_b } => {
            // Re-evaluate every witness word in the representation.
            let packing = Packing::for_genus(rep, g)?;
            let mut ok = true;
            for (w, target) in b_in_a.iter().zip(&omori) {
                ok &= packing.key(&ctx.ev.evaluate(w)?) == packing.key(&target.class);
            }
            for (w, target) in a_in_b.iter().zip(&torsion) {
                ok &= packing.key(&ctx.ev.evaluate(w)?) == packing.key(&target.class);
            }
            let words = |ws: &[crate::words::GeneratorWord], gens: &[NamedGen]| -> serde_json::Map<String, Value> {
                gens.iter().zip(ws).map(|(gen, w)| (print_word(&gen.word), json!(print_word(w)))).collect()
            };
            let mut stats = json!({ "verdict": "equal", "order": order });
            if ctx.opts.timings {
                stats["seconds"] = json!(elapsed);
            }
            ctx.closure.insert(key.into(), stats);
            (
                Status::from_bool(ok),
                json!({
                    "verdict": "equal",
                    "order": order,
                    "witness_words_verified": ok,
                    "omori_in_torsion": words(b_in_a, &omori),
                    "torsion_in_omori": words(a_in_b, &torsion),
                }),
            )
        }
        SubgroupVerdict::NotEqual { order_a, order_b, .. } => {
            ctx.closure.insert(key.into(), json!({ "verdict": "not_equal", "order_torsion": order_a, "order_omori": order_b }));
            (Status::Fail, serde_json::to_value(&verdict).expect("verdict serializes"))
        }
        SubgroupVerdict::Indeterminate { partial_a, partial_b, cap } => {
            ctx.closure.insert(key.into(), json!({ "verdict": "indeterminate", "partial": [partial_a, partial_b], "cap": cap }));
            let status = if g == 5 { Status::Fail } else { Status::Indeterminate };
            (status, serde_json::to_value(&verdict).expect("verdict serializes"))
        }
    };
    Ok((status, witness))
}
