//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use platkit::braid::{artin_action, braids_equal, free_reduce, BraidWord, Letter};
use platkit::foliation::{
    check, find_nested_candidate, find_removable, random_tiling, reduce_to_standard, remove_pair, unnest,
    SurfaceKind, TileGraph,
};
use platkit::invariants::{
    invariant, invariant_state_sum, invariants_equal, kauffman_bracket, InvariantValue, LaurentPolynomial,
    DEFAULT_ORACLE_CAP,
};
use platkit::moves::{
    apply_double_coset, apply_flip, flip_insertion, garside_slide, hilden_letters, End, FlipCase, HildenWord,
};
use platkit::plat::{component_count, destabilize, is_composite_word, is_split_word, plat_closure_diagram, stabilize, PlatPresentation};
use platkit::render::{render_svg, RenderSpec};
use platkit::search::{MoveSet, SearchBudget};
use platkit::simplify::{
    is_double_coset_log, obscure_with, simplify_composite, simplify_split, simplify_split_with, verify_log,
    ObscureMode, SimplifyResult,
};

const AC1_MAX_STRANDS: usize = 8;
const AC1_RANDOM_WORDS: usize = 500;
const AC1_TIME: Duration = Duration::from_secs(10);
const AC2_PLATS: u64 = 100;
const AC2_TIME: Duration = Duration::from_secs(300);
const AC3_SPLITS_PER_CASE: u64 = 10;
const AC3_TIME: Duration = Duration::from_secs(300);
const AC4_PLATS: u64 = 100;
const AC5_PAIRS: u64 = 50;
const AC6_INSTANCES: u64 = 25;
const AC7_SEEDS: u64 = 1000;
const AC7_TIME: Duration = Duration::from_secs(30);
const AC8_SEEDS: u64 = 1000;
const AC9_SEEDS: u64 = 100;
const AC9_MIN_RATE: f64 = 0.90;
const AC9_TIME: Duration = Duration::from_secs(15 * 60);
const AC10_SEEDS: u64 = 50;
const AC10_MIN_RATE: f64 = 0.80;
const AC10_TIME: Duration = Duration::from_secs(15 * 60);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn random_word(rng: &mut ChaCha8Rng, strands: usize, len: usize, allowed: &[usize]) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let index = if allowed.is_empty() { rng.gen_range(1..strands) } else { allowed[rng.gen_range(0..allowed.len())] };
            Letter::new(index, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect()
}

fn random_plat(rng: &mut ChaCha8Rng, max_n: usize, max_len: usize) -> PlatPresentation {
    let n = rng.gen_range(1..=max_n);
    let len = rng.gen_range(0..=max_len);
    PlatPresentation::from_letters(n, random_word(rng, 2 * n, len, &[])).unwrap()
}

/// Largest diagram checked with the full `2^c` state sum; larger ones use
/// the transfer route, which the oracle proptests tie to the state sum.
const STATE_SUM_CROSSINGS: usize = 16;

fn oracle(p: &PlatPresentation) -> InvariantValue {
    if p.word().len() <= STATE_SUM_CROSSINGS {
        invariant_state_sum(p, DEFAULT_ORACLE_CAP).unwrap()
    } else {
        invariant(p)
    }
}

fn ac1() -> Verdict {
    let mut checked = 0;
    for m in 2..=AC1_MAX_STRANDS {
        for i in 1..m {
            for j in 1..m {
                for (e, f) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let a = Letter::new(i, e);
                    let b = Letter::new(j, f);
                    if i.abs_diff(j) >= 2 {
                        let lhs = BraidWord::new(m, vec![a, b]).unwrap();
                        let rhs = BraidWord::new(m, vec![b, a]).unwrap();
                        if !braids_equal(&lhs, &rhs).unwrap() {
                            return verdict(false, format!("commutation failed for {a} {b} on {m} strands"));
                        }
                        checked += 1;
                    }
                }
            }
            if i + 1 < m {
                for e in [1, -1] {
                    let (a, b) = (Letter::new(i, e), Letter::new(i + 1, e));
                    let lhs = BraidWord::new(m, vec![a, b, a]).unwrap();
                    let rhs = BraidWord::new(m, vec![b, a, b]).unwrap();
                    if !braids_equal(&lhs, &rhs).unwrap() {
                        return verdict(false, format!("braid relation failed at index {i} on {m} strands"));
                    }
                    checked += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..AC1_RANDOM_WORDS {
        let m = rng.gen_range(2..=AC1_MAX_STRANDS);
        let len = rng.gen_range(0..=16);
        let w = BraidWord::new(m, random_word(&mut rng, m, len, &[])).unwrap();
        let r = free_reduce(&w);
        let trivial = w.concat(&w.inverse()).unwrap();
        if artin_action(&w).unwrap() != artin_action(&r).unwrap()
            || !braids_equal(&w, &r).unwrap()
            || !braids_equal(&trivial, &BraidWord::identity(m).unwrap()).unwrap()
        {
            return verdict(false, format!("free reduction inconsistent for {w}"));
        }
    }
    verdict(true, format!("{checked} relations, {AC1_RANDOM_WORDS} random words"))
}

fn ac2() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checks = 0;
    for _ in 0..AC2_PLATS {
        let p = random_plat(&mut rng, 3, 10);
        let before = oracle(&p);
        for g in hilden_letters(p.bridge_index()) {
            for l in [g, g.inverted()] {
                let h = HildenWord::single(p.strands(), l).unwrap();
                for end in [End::Top, End::Bottom] {
                    let q = apply_double_coset(&p, end, &h).unwrap();
                    if !invariants_equal(&before, &oracle(&q)) {
                        return verdict(false, format!("{l} at {end:?} changed the invariant of {p}"));
                    }
                    if component_count(&q) != component_count(&p) {
                        return verdict(false, format!("{l} at {end:?} changed the components of {p}"));
                    }
                    checks += 1;
                }
            }
        }
    }
    verdict(true, format!("{checks} multiplications on {AC2_PLATS} plats"))
}

fn ac3() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    for n in [2usize, 3] {
        for case in FlipCase::ALL {
            for k in case.cuts(n) {
                let w = flip_insertion(case, n, k).unwrap();
                let expected = match case {
                    FlipCase::I | FlipCase::Ii => k * (k - 1) + (2 * n - k) * (2 * n - k - 1),
                    _ => (2 * n - 1) * (2 * n - 2),
                };
                if w.len() != expected {
                    return verdict(false, format!("case {case} at 2n={} k={k}: {} letters, expected {expected}", 2 * n, w.len()));
                }
                for _ in 0..AC3_SPLITS_PER_CASE {
                    let len = rng.gen_range(0..=6);
                    let p = PlatPresentation::from_letters(n, random_word(&mut rng, 2 * n, len, &[])).unwrap();
                    let before = oracle(&p);
                    let split_at = rng.gen_range(0..=len);
                    for end in [End::Top, End::Bottom] {
                        let q = apply_flip(&p, split_at, case, k, end).unwrap();
                        if !invariants_equal(&before, &oracle(&q)) {
                            return verdict(false, format!("case {case} k={k} {end:?} at {split_at} changed {p}"));
                        }
                        checks += 1;
                    }
                }
            }
        }
    }
    verdict(true, format!("{checks} flips, letter counts exact"))
}

fn ac4() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..AC4_PLATS {
        let p = random_plat(&mut rng, 3, 10);
        let s = stabilize(&p);
        if !invariants_equal(&oracle(&p), &oracle(&s)) || component_count(&p) != component_count(&s) {
            return verdict(false, format!("stabilizing {p} changed the link"));
        }
        if destabilize(&s).as_ref() != Some(&p) {
            return verdict(false, format!("destabilize(stabilize({p})) is not the identity"));
        }
    }
    verdict(true, format!("{AC4_PLATS} plats"))
}

fn ac5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..AC5_PAIRS {
        let n = rng.gen_range(1..=3);
        let m = 2 * n;
        let (la, lb) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let a = BraidWord::new(m, random_word(&mut rng, m, la, &[])).unwrap();
        let b = BraidWord::new(m, random_word(&mut rng, m, lb, &[])).unwrap();
        let (first, second) = garside_slide(&a, &b, n).unwrap();
        if !braids_equal(first.word(), second.word()).unwrap() {
            return verdict(false, format!("A={a} B={b}: words differ as braids"));
        }
        if !invariants_equal(&oracle(&first), &oracle(&second)) {
            return verdict(false, format!("A={a} B={b}: invariants differ"));
        }
    }
    verdict(true, format!("{AC5_PAIRS} pairs"))
}

fn ac6() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let delta = LaurentPolynomial::loop_value();
    for _ in 0..AC6_INSTANCES {
        let (n1, n2) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let (l1, l2) = (rng.gen_range(0..=7), rng.gen_range(0..=7));
        let w1 = random_word(&mut rng, 2 * n1, l1, &[]);
        let w2 = random_word(&mut rng, 2 * n2, l2, &[]);
        // interleave the two factors, the second shifted past the first
        let second: Vec<Letter> = w2.iter().map(|l| l.shifted(2 * n1)).collect();
        let (mut i, mut j) = (0, 0);
        let mut joint = Vec::new();
        while i < w1.len() || j < second.len() {
            if j == second.len() || (i < w1.len() && rng.gen_bool(0.5)) {
                joint.push(w1[i]);
                i += 1;
            } else {
                joint.push(second[j]);
                j += 1;
            }
        }
        let whole = PlatPresentation::from_letters(n1 + n2, joint).unwrap();
        if is_split_word(&whole).is_none() {
            return verdict(false, format!("{whole} is not split"));
        }
        let p1 = PlatPresentation::from_letters(n1, w1).unwrap();
        let p2 = PlatPresentation::from_letters(n2, w2).unwrap();
        let bracket = |p: &PlatPresentation| kauffman_bracket(&plat_closure_diagram(p)).unwrap();
        let expected = &(&delta * &bracket(&p1)) * &bracket(&p2);
        if bracket(&whole) != expected {
            return verdict(false, format!("{whole}: bracket {} is not {expected}", bracket(&whole)));
        }
    }
    verdict(true, format!("{AC6_INSTANCES} split instances"))
}

fn tiling_size(seed: u64) -> usize {
    (seed % 31) as usize
}

fn ac7() -> Verdict {
    for seed in 0..AC7_SEEDS {
        let g = random_tiling(SurfaceKind::Sphere, tiling_size(seed), seed);
        if let Err(e) = check(&g) {
            return verdict(false, format!("sphere seed {seed}: {e}"));
        }
        let c = g.census();
        if c.t1() as i64 - c.t3() as i64 != 2 || c.tp != 0 {
            return verdict(false, format!("sphere seed {seed}: census"));
        }
        match reduce_to_standard(&g) {
            Ok((out, steps)) if steps.len() == c.t3() && out.vertices.len() == 2 && out.is_standard() => {}
            Ok((_, steps)) => return verdict(false, format!("sphere seed {seed}: {} steps for |T3|={}", steps.len(), c.t3())),
            Err(e) => return verdict(false, format!("sphere seed {seed}: {e}")),
        }
        let g = random_tiling(SurfaceKind::TwicePunctured, tiling_size(seed), seed);
        if let Err(e) = check(&g) {
            return verdict(false, format!("punctured seed {seed}: {e}"));
        }
        let c = g.census();
        if c.t1() != c.t3() || c.tp != 2 {
            return verdict(false, format!("punctured seed {seed}: census"));
        }
        match reduce_to_standard(&g) {
            Ok((out, steps)) if steps.len() + 2 == c.t3() && out.vertices.len() == 6 && out.is_standard() => {}
            Ok((_, steps)) => return verdict(false, format!("punctured seed {seed}: {} steps for |T3|={}", steps.len(), c.t3())),
            Err(e) => return verdict(false, format!("punctured seed {seed}: {e}")),
        }
    }
    verdict(true, format!("{AC7_SEEDS} sphere and {AC7_SEEDS} punctured tilings"))
}

fn removable(g: &TileGraph) -> Option<(usize, TileGraph)> {
    if let Some(v) = find_removable(g).unwrap() {
        return Some((v, g.clone()));
    }
    let v = find_nested_candidate(g).unwrap()?;
    let u = unnest(g, v).unwrap();
    find_removable(&u).unwrap().map(|w| (w, u))
}

fn ac8() -> Verdict {
    let mut graphs = 0;
    for seed in 0..AC8_SEEDS {
        let mut g = random_tiling(SurfaceKind::Sphere, 1 + tiling_size(seed), seed);
        // every intermediate graph of the reduction is a sphere tiling too
        while g.census().t3() > 0 {
            graphs += 1;
            let Some((v, u)) = removable(&g) else {
                return verdict(false, format!("seed {seed}: no removable vertex with |T3|={}", g.census().t3()));
            };
            g = remove_pair(&u, v).unwrap().0;
        }
    }
    verdict(true, format!("0 failures over {graphs} graphs from {AC8_SEEDS} seeds"))
}

fn split_instance(seed: u64) -> (PlatPresentation, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 + (seed % 2) as usize;
    let band = rng.gen_range(1..n);
    let allowed: Vec<usize> = (1..2 * n).filter(|&j| j != 2 * band).collect();
    let len = rng.gen_range(1..=8);
    let p = PlatPresentation::from_letters(n, random_word(&mut rng, 2 * n, len, &allowed)).unwrap();
    (p, 1 + (seed % 4) as usize)
}

fn check_solved(input: &PlatPresentation, result: &SimplifyResult) -> Result<bool, String> {
    match result {
        SimplifyResult::Solved { plat, log } => {
            if log.initial != *input || log.replay().map_err(|e| e.to_string())? != *plat {
                return Err(format!("log for {input} does not replay"));
            }
            if !verify_log(log).is_valid() {
                return Err(format!("log for {input} changes the invariant"));
            }
            if !log.records.iter().all(|r| r.keeps_bridge_index()) {
                return Err(format!("log for {input} changes the bridge index"));
            }
            Ok(true)
        }
        SimplifyResult::Exhausted { .. } => Ok(false),
    }
}

fn ac9() -> Verdict {
    let budget = SearchBudget::default();
    let (mut solved, mut witnessed, mut hidden) = (0, 0, 0);
    for seed in 0..AC9_SEEDS {
        let (p, k) = split_instance(seed);
        let (q, _) = obscure_with(&p, k, seed, ObscureMode::DoubleCoset).unwrap();
        hidden += usize::from(is_split_word(&q).is_none());
        let r = simplify_split(&q, &budget).unwrap();
        match check_solved(&q, &r) {
            Ok(true) => solved += 1,
            Ok(false) => {}
            Err(e) => return verdict(false, e),
        }
        let dc = simplify_split_with(&q, &budget, &MoveSet::DOUBLE_COSET).unwrap();
        match check_solved(&q, &dc) {
            Ok(true) => {
                let SimplifyResult::Solved { log, .. } = &dc else { unreachable!() };
                if !is_double_coset_log(log) {
                    return verdict(false, format!("double coset search for {q} used other moves"));
                }
                witnessed += 1;
            }
            Ok(false) => {}
            Err(e) => return verdict(false, e),
        }
    }
    let rate = solved as f64 / AC9_SEEDS as f64;
    let dc_rate = witnessed as f64 / AC9_SEEDS as f64;
    verdict(
        rate >= AC9_MIN_RATE && dc_rate >= AC9_MIN_RATE,
        format!(
            "solved {solved}/{AC9_SEEDS} ({hidden} no longer split), double-coset-only {witnessed}/{AC9_SEEDS}, need {AC9_MIN_RATE}"
        ),
    )
}

fn composite_instance(seed: u64) -> (PlatPresentation, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0);
    let len = rng.gen_range(1..=8);
    let p = PlatPresentation::from_letters(3, random_word(&mut rng, 6, len, &[1, 2, 4, 5])).unwrap();
    (p, 1 + (seed % 3) as usize)
}

fn ac10() -> Verdict {
    let budget = SearchBudget::default();
    let (mut solved, mut hidden) = (0, 0);
    for seed in 0..AC10_SEEDS {
        let (p, k) = composite_instance(seed);
        let (q, _) = obscure_with(&p, k, seed, ObscureMode::WithFlips).unwrap();
        hidden += usize::from(is_composite_word(&q).is_none());
        match check_solved(&q, &simplify_composite(&q, &budget).unwrap()) {
            Ok(true) => solved += 1,
            Ok(false) => {}
            Err(e) => return verdict(false, e),
        }
    }
    let rate = solved as f64 / AC10_SEEDS as f64;
    verdict(rate >= AC10_MIN_RATE, format!("solved {solved}/{AC10_SEEDS} ({hidden} no longer composite), need {AC10_MIN_RATE}"))
}

fn ac11() -> Verdict {
    let run = || {
        let (p, k) = split_instance(7);
        let (q, log) = obscure_with(&p, k, 7, ObscureMode::NoFlips).unwrap();
        let result = simplify_split(&q, &SearchBudget::default()).unwrap();
        let tiling = random_tiling(SurfaceKind::TwicePunctured, 9, 7);
        let (_, trace) = reduce_to_standard(&tiling).unwrap();
        [
            serde_json::to_string(&log).unwrap(),
            serde_json::to_string(&result).unwrap(),
            serde_json::to_string(&tiling).unwrap(),
            serde_json::to_string(&trace).unwrap(),
            render_svg(&q, &RenderSpec::default()).unwrap(),
        ]
    };
    let (a, b) = (run(), run());
    verdict(a == b, format!("{} artifacts compared byte for byte", a.len()))
}

type Criterion = (&'static str, &'static str, fn() -> Verdict, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC1", "braid axioms", ac1, Some(AC1_TIME)),
        ("AC2", "double coset preservation", ac2, Some(AC2_TIME)),
        ("AC3", "flip formulas", ac3, Some(AC3_TIME)),
        ("AC4", "stabilization", ac4, None),
        ("AC5", "full twist slide", ac5, None),
        ("AC6", "split bracket factorization", ac6, None),
        ("AC7", "tiling census and reduction", ac7, Some(AC7_TIME)),
        ("AC8", "removability", ac8, None),
        ("AC9", "split search harness", ac9, Some(AC9_TIME)),
        ("AC10", "composite search harness", ac10, Some(AC10_TIME)),
        ("AC11", "determinism", ac11, None),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in criteria {
        let clock = Instant::now();
        let mut v = run();
        let took = clock.elapsed();
        if let Some(limit) = limit {
            if took > limit {
                v.pass = false;
                v.detail.push_str(&format!("; exceeded {}s", limit.as_secs()));
            }
        }
        if !v.pass {
            failed += 1;
        }
        println!("[{}] {id} {name}: {} ({:.2}s)", if v.pass { "PASS" } else { "FAIL" }, v.detail, took.as_secs_f64());
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
