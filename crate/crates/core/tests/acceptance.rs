//! Acceptance criteria 1-10, one line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. A
//! criterion listed in KNOWN_FAILURES prints FAIL but only counts as expected
//! when its failure matches the recorded signature exactly.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistgen_core::homology::{pair_z, pair_z2};
use twistgen_core::polygon::chain_complex_oracle;
use twistgen_core::report::{run_verification, GenSet, VerifyOptions};
use twistgen_core::search::{subgroup_equal_with_threads, Packing, Rep, SubgroupVerdict, DEFAULT_CAP};
use twistgen_core::{
    free_reduce, parse_word, print_word, CurveData, Evaluator, GeneratorWord, MappingClass, Model, Token,
};

// Golden values, frozen after the first verified run.
const CLOSURE_ORDER_Z2: [(usize, usize); 2] = [(5, 720), (7, 1_451_520)];
const CLOSURE_ORDER_Z3_G5: usize = 12_130_560;
const CONJUGATING_POWER: [(usize, usize); 3] = [(5, 2), (7, 3), (9, 4)];

/// Criterion 5 at g = 7: reflections have free-part determinant
/// (-1)^((g-1)/2), so exactly these three entries come out -1.
const KNOWN_FAILURES: [(u32, &str); 1] = [(5, "g=7: TAU1 det -1; g=7: TAU2 det -1; g=7: TAU1 TAU3 det -1")];

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Outcome { ok: true, detail: summary }
    } else {
        Outcome { ok: false, detail: problems.join("; ") }
    }
}

fn gen(m: &Model, word: &str) -> MappingClass {
    Evaluator::new(m).evaluate_str(word).unwrap()
}

/// Order by repeated multiplication, independent of rep_order.
fn naive_order(x: &MappingClass, cap: usize) -> Option<usize> {
    let mut p = x.clone();
    for n in 1..=cap {
        if p.is_identity() {
            return Some(n);
        }
        p = p.compose(x);
    }
    None
}

fn c1_homology() -> Outcome {
    let mut problems = Vec::new();
    for g in [3, 5, 7, 9] {
        let t = Instant::now();
        let h = chain_complex_oracle(g).unwrap();
        let mut factors = vec![0; g - 1];
        factors.push(2);
        let mut got = h.h1.invariant_factors();
        got.sort_by_key(|&d| if d == 0 { i64::MAX } else { d });
        factors.sort_by_key(|&d| if d == 0 { i64::MAX } else { d });
        if got != factors || h.h1.to_string() != format!("Z^{} + Z/2", g - 1) {
            problems.push(format!("g={g}: H_1 = {}", h.h1));
        }
        if t.elapsed().as_secs_f64() >= 1.0 {
            problems.push(format!("g={g}: took {:?}", t.elapsed()));
        }
    }
    outcome(problems, "H_1 = Z^(g-1) + Z/2 for g = 3, 5, 7, 9".into())
}

fn c2_orders() -> Outcome {
    let mut problems = Vec::new();
    for g in [5, 7] {
        let m = Model::new(g).unwrap();
        let sigma = m.standard_symmetry("sigma").unwrap();
        if sigma.order() != 2 * g {
            problems.push(format!("g={g}: rigid order of sigma {}", sigma.order()));
        }
        let ms = gen(&m, "SGM");
        if ms.rep_order(4 * g) != Some(2 * g) || naive_order(&ms, 4 * g) != Some(2 * g) {
            problems.push(format!("g={g}: rep order of sigma {:?}", ms.rep_order(4 * g)));
        }
        for (sym, curve, word) in [("tau1", "b0", "TAU1 B0"), ("tau2", "c", "TAU2 C")] {
            let x = gen(&m, word);
            if x.rep_order(8) != Some(2) || naive_order(&x, 8) != Some(2) {
                problems.push(format!("g={g}: rep order of {word} {:?}", x.rep_order(8)));
            }
            // Upper bound in the group: tau K tau^-1 = K^-1 and tau^2 = 1
            // give (tau K)^2 = tau K tau^-1 tau^2 K = K^-1 K = 1.
            let r = m.standard_symmetry(sym).unwrap();
            let k = m.standard_curve(curve).unwrap();
            let img = m.apply_rigid_to_curve(&r, &k).unwrap();
            let mr = MappingClass::from_rigid(&m, &r).unwrap();
            let tw = MappingClass::dehn_twist(&k, 1).unwrap();
            let bound = img.twist_relation(&k) == Some(-1)
                && r.power(2).is_identity()
                && mr.compose(&tw).compose(&mr.inverse()) == tw.inverse();
            if !bound {
                problems.push(format!("g={g}: upper bound for {word} not certified"));
            }
        }
    }
    outcome(problems, "sigma order 2g; tau1 B0 and tau2 C order 2 (g = 5, 7)".into())
}

fn c3_klein() -> Outcome {
    let mut problems = Vec::new();
    for g in [5, 7] {
        let m = Model::new(g).unwrap();
        let mut ev = Evaluator::new(&m);
        for i in 1..=g {
            let y = ev.evaluate_str(&format!("Y{i}")).unwrap();
            let au = ev.evaluate_str(&format!("A{i} U{i}")).unwrap();
            let u = ev.evaluate_str(&format!("U{i}")).unwrap();
            let d = MappingClass::dehn_twist(&m.standard_curve(&format!("delta_{i}")).unwrap(), 1).unwrap();
            let ok = y.equal_in_reps(&au)
                && y.mat_z2() == au.mat_z2()
                && y.power(2).is_identity()
                && u.compose(&u).is_identity()
                && d.is_identity();
            if !ok {
                problems.push(format!("g={g}: i={i}"));
            }
        }
    }
    outcome(problems, "Y_i = A_i U_i, Y_i^2 = U_i^2 = D_i = 1 (g = 5, 7)".into())
}

fn c4_rigid() -> Outcome {
    let mut problems = Vec::new();
    let mut ks = Vec::new();
    for (g, k_golden) in CONJUGATING_POWER {
        let m = Model::new(g).unwrap();
        let s = |n: &str| m.standard_symmetry(n).unwrap();
        let (t, tau1, tau2, tau3, sigma) = (s("t"), s("tau1"), s("tau2"), s("tau3"), s("sigma"));
        if t.compose(&tau3).unwrap() != sigma || sigma.power(g as i64) != tau3 {
            problems.push(format!("g={g}: sigma = t tau3 or tau3 = sigma^g"));
        }
        if ![&tau1, &tau2, &tau3].iter().all(|x| x.power(2).is_identity()) {
            problems.push(format!("g={g}: tau_i^2"));
        }
        let (mt, m1, m2) = (gen(&m, "ROT"), gen(&m, "TAU1"), gen(&m, "TAU2"));
        let k = twistgen_core::search::find_conjugating_power(&mt, &m1, &m2);
        let rigid = (0..g as i64)
            .find(|&k| t.power(k).compose(&tau1).unwrap().compose(&t.power(-k)).unwrap() == tau2)
            .map(|k| k as usize);
        if k != Some(k_golden) || rigid != Some(k_golden) {
            problems.push(format!("g={g}: k = {k:?}, rigid {rigid:?}, golden {k_golden}"));
        }
        ks.push(format!("{k_golden}"));
    }
    outcome(problems, format!("sigma = t tau3, tau3 = sigma^g, tau_i^2 = 1; k = {} for g = 5, 7, 9", ks.join(", ")))
}

fn c5_membership() -> Outcome {
    let mut problems = Vec::new();
    for g in [5, 7, 9] {
        let m = Model::new(g).unwrap();
        let mut ev = Evaluator::new(&m);
        let mut rows: Vec<(String, i64)> = (1..=g).map(|i| (format!("A{i}"), 1)).collect();
        for w in ["B0", "C", "E", "SGM", "ROT", "TAU1", "TAU2", "TAU3", "TAU1 TAU3"] {
            rows.push((w.into(), 1));
        }
        rows.extend((1..=g).flat_map(|i| [(format!("U{i}"), -1), (format!("Y{i}"), -1)]));
        for (w, want) in rows {
            let x = ev.evaluate_str(&w).unwrap();
            let lift_det = x.mat_free().det();
            if x.det_free() != want || lift_det != want || x.in_twist_subgroup() != (want == 1) {
                problems.push(format!("g={g}: {w} det {}", x.det_free()));
            }
        }
    }
    outcome(problems, "det_free +1 on twists and rigid symmetries, -1 on U_i, Y_i (g = 5, 7, 9)".into())
}

fn c6_curve_identity() -> Outcome {
    let mut problems = Vec::new();
    for g in [5, 7, 9] {
        let m = Model::new(g).unwrap();
        let e = m.standard_curve("e").unwrap();
        let c = m.standard_curve("c").unwrap();
        let a1 = gen(&m, "A1");
        let pulled = a1.inverse().apply(&e.class_z);
        if pulled != c.class_z && pulled != c.class_z.neg() {
            problems.push(format!("g={g}: A1^-1[e] = {:?}", pulled.coeffs()));
        }
        let lhs = gen(&m, "C");
        let rhs = gen(&m, "A1' E A1");
        if !lhs.equal_in_reps(&rhs) || lhs.mat_z2() != rhs.mat_z2() {
            problems.push(format!("g={g}: C != A1^-1 E A1"));
        }
    }
    outcome(problems, "A1^-1 [e] = [c], C = A1^-1 E A1 (g = 5, 7, 9)".into())
}

fn generation(g: usize, rep: Rep, golden: usize) -> Result<String, String> {
    let m = Model::new(g).unwrap();
    let mut ev = Evaluator::new(&m);
    let torsion = GenSet::Torsion.build(&mut ev).unwrap();
    let omori = GenSet::Omori.build(&mut ev).unwrap();
    let t = Instant::now();
    let verdict = subgroup_equal_with_threads(&torsion, &omori, rep, DEFAULT_CAP, 4).unwrap();
    let secs = t.elapsed().as_secs_f64();
    match verdict {
        SubgroupVerdict::Equal { order, b_in_a, a_in_b } => {
            let packing = Packing::for_genus(rep, g).unwrap();
            let words_ok = b_in_a.iter().zip(&omori).chain(a_in_b.iter().zip(&torsion)).all(|(w, target)| {
                packing.key(&ev.evaluate(w).unwrap()) == packing.key(&target.class)
            });
            if !words_ok {
                return Err(format!("g={g} {rep:?}: witness word does not evaluate to its target"));
            }
            if order != golden {
                return Err(format!("g={g} {rep:?}: order {order}, golden {golden}"));
            }
            if g == 5 && secs > 300.0 {
                return Err(format!("g=5 {rep:?}: {secs:.0} s"));
            }
            Ok(format!("g={g} {rep:?} order {order}"))
        }
        other => Err(format!("g={g} {rep:?}: {}", serde_json::to_string(&other).unwrap())),
    }
}

fn c7_generation() -> Outcome {
    let mut problems = Vec::new();
    let mut done = Vec::new();
    let mut runs: Vec<(usize, Rep, usize)> = CLOSURE_ORDER_Z2.iter().map(|&(g, o)| (g, Rep::Z2, o)).collect();
    if std::env::var("TWISTGEN_MOD3").is_ok_and(|v| v == "1") {
        runs.push((5, Rep::Z3, CLOSURE_ORDER_Z3_G5));
    } else {
        done.push("mod 3 skipped (set TWISTGEN_MOD3=1)".to_string());
    }
    for (g, rep, golden) in runs {
        match generation(g, rep, golden) {
            Ok(s) => done.push(s),
            Err(e) => problems.push(e),
        }
    }
    outcome(problems, format!("EQUAL with verified witness words: {}", done.join(", ")))
}

fn c8_pairing() -> Outcome {
    let mut problems = Vec::new();
    let t = Instant::now();
    let mut pairs = 0;
    for g in [5, 7, 9] {
        let m = Model::new(g).unwrap();
        let curves: Vec<CurveData> = m.curve_names().iter().map(|n| m.standard_curve(n).unwrap()).collect();
        for c in curves.iter().filter(|c| c.two_sided) {
            let row = c.pairing_row.as_ref().unwrap();
            if row.iter().sum::<i64>() != 0 {
                problems.push(format!("g={g}: row sum {}", c.name));
            }
            if pair_z(&c.class_z, c).unwrap() != 0 {
                problems.push(format!("g={g}: <{0},{0}>", c.name));
            }
            if MappingClass::dehn_twist(c, 1).unwrap().det_free() != 1 {
                problems.push(format!("g={g}: det T_{}", c.name));
            }
            for x in &curves {
                pairs += 1;
                let z = pair_z(&x.class_z, c).unwrap();
                if z.rem_euclid(2) as u8 != pair_z2(&x.class_z2, &c.class_z2) {
                    problems.push(format!("g={g}: <{},{}> mod 2", x.name, c.name));
                }
            }
        }
    }
    if t.elapsed().as_secs_f64() >= 1.0 {
        problems.push(format!("took {:?}", t.elapsed()));
    }
    outcome(problems, format!("{pairs} ordered pairs over g = 5, 7, 9"))
}

fn random_word(rng: &mut ChaCha8Rng, g: usize) -> GeneratorWord {
    let len = rng.gen_range(0..10);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..=g);
            let t = match rng.gen_range(0..12) {
                0 => Token::A(i),
                1 => Token::U(i),
                2 => Token::Y(i),
                3 => Token::D(i),
                4 => Token::B0,
                5 => Token::C,
                6 => Token::E,
                7 => Token::Sgm,
                8 => Token::Rot,
                9 => Token::Tau1,
                10 => Token::Tau2,
                _ => Token::Tau3,
            };
            (t, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    GeneratorWord { letters }
}

fn c9_words() -> Outcome {
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11_2024);
    for g in [5, 7] {
        let m = Model::new(g).unwrap();
        let mut ev = Evaluator::new(&m);
        for n in 0..100 {
            let (u, v) = (random_word(&mut rng, g), random_word(&mut rng, g));
            let r = free_reduce(&u);
            if parse_word(&print_word(&r), g).unwrap() != r || free_reduce(&r) != r {
                problems.push(format!("g={g} #{n}: round trip of {}", print_word(&u)));
            }
            let uv = ev.evaluate(&u.concat(&v)).unwrap();
            let split = ev.evaluate(&u).unwrap().compose(&ev.evaluate(&v).unwrap());
            if uv != split || ev.evaluate(&r).unwrap() != ev.evaluate(&u).unwrap() {
                problems.push(format!("g={g} #{n}: homomorphism on {} | {}", print_word(&u), print_word(&v)));
            }
        }
    }
    outcome(problems, "round trip, idempotent reduction, homomorphism on 100 seeded pairs (g = 5, 7)".into())
}

fn c10_determinism() -> Outcome {
    let one = VerifyOptions { threads: 1, ..Default::default() };
    let four = VerifyOptions { threads: 4, ..Default::default() };
    let a = run_verification(5, &one).unwrap().to_json_string();
    let b = run_verification(5, &one).unwrap().to_json_string();
    let c = run_verification(5, &four).unwrap().to_json_string();
    let mut problems = Vec::new();
    if a != b {
        problems.push("two single-thread runs differ".into());
    }
    if a != c {
        problems.push("1 and 4 threads differ".into());
    }
    outcome(problems, format!("two g = 5 reports byte-identical ({} bytes), also across thread counts", a.len()))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (1, "homology oracle", c1_homology),
        (2, "generator orders", c2_orders),
        (3, "Klein-bottle relations", c3_klein),
        (4, "rigid identities", c4_rigid),
        (5, "membership table", c5_membership),
        (6, "curve identity", c6_curve_identity),
        (7, "generation", c7_generation),
        (8, "pairing suite", c8_pairing),
        (9, "word engine", c9_words),
        (10, "determinism", c10_determinism),
    ];
    let known: BTreeSet<(u32, &str)> = KNOWN_FAILURES.into_iter().collect();
    let mut unexpected = 0;
    for (n, name, f) in criteria {
        let t = Instant::now();
        let o = f();
        let tag = if o.ok { "PASS" } else { "FAIL" };
        let note = if o.ok {
            ""
        } else if known.contains(&(n, o.detail.as_str())) {
            " [known failure, see parity analysis]"
        } else {
            unexpected += 1;
            " [UNEXPECTED]"
        };
        println!("criterion {n:>2} {tag} {name}: {}{note} ({:.1} s)", o.detail, t.elapsed().as_secs_f64());
        if o.ok && known.iter().any(|(k, _)| *k == n) {
            println!("criterion {n:>2} now passes; the known-failure entry is stale");
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
