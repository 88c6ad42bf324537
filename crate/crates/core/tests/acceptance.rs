//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Pinned values were first produced by the reference oracles in
//! `common` and by restricted BFS, then frozen here.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use almost_convex::ball::{build_ball, BallIndex, GroupModel};
use almost_convex::bs::{BsElement, BsParams};
use almost_convex::geodesic::{geodesic_length, has_pinch, is_geodesic, normalize, tilde};
use almost_convex::scan::{scan, sublinearity_probe};
use almost_convex::stallings::{
    in_h, relators, st_eval, verify_stallings_witness, GElement, Stallings, StallingsElement, SS,
};
use almost_convex::witness::cases::{CaseParams, CONSTRUCTIVE_CASES, REDUCTION_CASES};
use almost_convex::witness::impossible::impossibility_search;
use almost_convex::witness::{build_case, verify_boundingm, verify_bs1q_notmac, verify_case, verify_notpac};
use almost_convex::words::{classify, GenAlphabet, Letter, Word, WordClass};

const CAP: usize = 20_000_000;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(n: u32) -> BsParams {
    BsParams::new(n).unwrap()
}

fn oracle_equivalence() -> Result<String, String> {
    let mut checked = 0;
    for (qq, r) in [(2, 10), (7, 6)] {
        let p = q(qq);
        let ball = build_ball(&p, r, CAP).map_err(|e| e.to_string())?;
        let reference = common::RefBall::build(&p, r);
        ensure(ball.len() == reference.keys.len(), format!("q={qq}: ball sizes differ"))?;
        for i in 0..ball.len() as u32 {
            let g = ball.elem(i);
            let d = ball.dist_of(i);
            ensure(reference.distance_of(&g.key()) == Some(d), format!("q={qq}: BFS engines disagree on {}", g.key()))?;
            let l = geodesic_length(g, &p);
            ensure(l == d as u64, format!("q={qq}: geodesic_length({}) = {l}, BFS {d}", g.key()))?;
        }
        checked += ball.len();
    }
    Ok(format!("{checked} elements of B(10) for q=2 and B(6) for q=7"))
}

fn normal_form_soundness() -> Result<String, String> {
    let p = q(2);
    let ball = build_ball(&p, 8, CAP).map_err(|e| e.to_string())?;
    for i in 0..ball.len() as u32 {
        let w = ball.geodesic_word(i);
        let nf = normalize(&w, &p).map_err(|e| format!("{}: {e}", w.to_text(&GenAlphabet::bs())))?;
        let out = nf.render();
        ensure(
            out.len() == w.len() && p.eval(&out) == *ball.elem(i),
            format!("normal form of {} changes the element", ball.elem(i).key()),
        )?;
        nf.check_shape(&p).map_err(|e| format!("{}: {e}", out.to_text(&GenAlphabet::bs())))?;
    }
    Ok(format!("{} elements of B(8)", ball.len()))
}

fn mprime_scan() -> Result<String, String> {
    const PINNED: [u32; 8] = [3, 3, 3, 6, 7, 7, 11, 11];
    let p = q(2);
    let report = scan(&p, 3, 10, CAP).map_err(|e| e.to_string())?;
    let fast: Vec<Option<u32>> = report.rows.iter().map(|row| row.fmax).collect();
    let slow: Vec<Option<u32>> = common::reference_fmax(&p, 3, 10).into_iter().map(|(_, f)| f).collect();
    ensure(fast == slow, format!("scan {fast:?} != reference {slow:?}"))?;
    ensure(fast == PINNED.map(Some), format!("scan {fast:?} != pinned {PINNED:?}"))?;
    let within = report.rows.iter().all(|row| row.mprime() == Some(true));
    Ok(format!("fmax(3..10) = {PINNED:?}; fmax <= 2r-2 on every row: {within}"))
}

fn case_paths() -> Result<String, String> {
    let mut verified = 0;
    let mut rmax = 0;
    for case in CONSTRUCTIVE_CASES.iter().chain(REDUCTION_CASES.iter()) {
        for seed in 0..50u64 {
            let size = if seed % 2 == 0 { 2..=30 } else { 150..=200 };
            let cw = build_case(case, &CaseParams::default(), seed, size).map_err(|e| e.to_string())?;
            let rep = verify_case(&cw);
            ensure(rep.passed(), format!("case {case} seed {seed}: {}", serde_json::to_string(&rep).unwrap()))?;
            ensure(
                rep.claim_holds(),
                format!("case {case} seed {seed}: length {} != stated {:?}", rep.delta_length, rep.claimed_length),
            )?;
            rmax = rmax.max(rep.r);
            verified += 1;
        }
    }
    let search = impossibility_search(7, CAP).map_err(|e| e.to_string())?;
    ensure(search.passed(), format!("forbidden cases realized: {:?}", search.realizations))?;
    Ok(format!(
        "{verified} instances (16 constructive + 4 reductions, r up to {rmax}); B(7) search: {} pairs, counts {:?}",
        search.pairs, search.counts
    ))
}

fn notpac() -> Result<String, String> {
    const PINNED_MINIMA: [u32; 4] = [3, 7, 11, 16];
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for n in 2..=5 {
        let rep = verify_notpac(n, CAP).map_err(|e| e.to_string())?;
        let l = rep.min_bridge.ok_or(format!("n={n}: no bridge"))?;
        points.push((rep.witness.radius, l));
        if !rep.passed() {
            let bad: Vec<&str> = rep.geodesics.iter().filter(|g| !g.1).map(|g| g.0.as_str()).collect();
            failures.push(format!(
                "n={n}: not geodesic {bad:?}, distance_two={}, bound_ok={}",
                rep.distance_two, rep.bound_ok
            ));
        }
    }
    let minima: Vec<u32> = points.iter().map(|p| p.1).collect();
    ensure(minima == PINNED_MINIMA, format!("minima {minima:?} != pinned {PINNED_MINIMA:?}"))?;
    let slope = sublinearity_probe(&points).map_err(|e| e.to_string())?.slope;
    ensure(slope >= 0.9, format!("slope {slope:.3} < 0.9"))?;
    ensure(failures.is_empty(), format!("minima {minima:?}, slope {slope:.3}; {}", failures.join("; ")))?;
    Ok(format!("minima {minima:?} at R = 6..12, slope {slope:.3}"))
}

fn bs1q() -> Result<String, String> {
    let mut out = Vec::new();
    for (qq, n) in [(7, 2), (8, 2), (7, 3)] {
        let rep = verify_bs1q_notmac(qq, n, CAP).map_err(|e| e.to_string())?;
        ensure(rep.passed(), format!("q={qq} n={n}: {rep:?}"))?;
        out.push(format!("q={qq} n={n}: {}/{:?}", rep.min_bridge.unwrap(), rep.min_bridge_avoiding_identity));
    }
    Ok(format!("min bridge = 2R, avoiding identity longer: {}", out.join(", ")))
}

fn boundingm() -> Result<String, String> {
    for (qq, ns) in [(2, 2..=10), (7, 2..=6)] {
        for n in ns {
            let rep = verify_boundingm(n, qq).map_err(|e| e.to_string())?;
            ensure(rep.passed, format!("q={qq} n={n}: reachable above bound {:?}", rep.above_bound))?;
        }
    }
    let a = verify_boundingm(3, 2).unwrap().above_bound;
    let b = verify_boundingm(2, 7).unwrap().above_bound;
    ensure(a == [16] && b == [49], format!("examples: {a:?}, {b:?}"))?;
    Ok("q=2 n=2..10, q=7 n=2..6".into())
}

fn st_word(s: &str) -> Word {
    Word::parse(s, &GenAlphabet::stallings()).unwrap()
}

fn stallings() -> Result<String, String> {
    let rep = verify_stallings_witness(1, CAP).map_err(|e| e.to_string())?;
    ensure(rep.passed(), format!("{rep:?}"))?;
    ensure(rep.min_bridge == Some(8), format!("min bridge {:?} != 8", rep.min_bridge))?;
    let lens: Vec<usize> = relators().iter().map(|r| r.len()).collect();
    ensure(lens == [4, 4, 4, 4, 6, 6, 6], format!("relator lengths {lens:?}"))?;
    ensure(relators().iter().all(|r| st_eval(r).is_identity()), "a relator is nontrivial")?;

    let ball: BallIndex<StallingsElement> = build_ball(&Stallings, 5, CAP).map_err(|e| e.to_string())?;
    let al = GenAlphabet::stallings();
    for i in 0..ball.len() as u32 {
        let w = ball.geodesic_word(i);
        ensure(st_eval(&w) == *ball.elem(i), "geodesic word does not evaluate to its vertex")?;
        ensure(
            in_h(ball.elem(i)) == (ball.elem(i).as_g().is_some_and(|g| g.exp_sum() == 0)),
            "in_h disagrees with exponent sum",
        )?;
        if in_h(ball.elem(i)) {
            ensure(w.exp_sum() == 0, format!("{} is in H with nonzero exponent sum", w.to_text(&al)))?;
        }
        if let Some(bad) = s_pinch(&w) {
            return Err(format!("geodesic {} has an s-pinch around {}", w.to_text(&al), bad.to_text(&al)));
        }
        for j in 0..Stallings.letters().len() {
            if let Some(n) = ball.neighbor(i, j) {
                ensure(ball.dist_of(n).abs_diff(ball.dist_of(i)) == 1, "edge inside a sphere: not bipartite")?;
            }
        }
    }
    ensure(
        in_h(&st_eval(&st_word("Ad"))) && !in_h(&st_eval(&st_word("a"))) && !in_h(&st_eval(&st_word("s"))),
        "in_h examples",
    )?;
    ensure(GElement::from_word(&st_word("ab")).is_ok(), "G element parse")?;
    Ok(format!("n=1 bridge 8 in B(4); hexpsum/geodg/parity over B(5) ({} elements)", ball.len()))
}

/// A subword `s u s⁻¹` or `s⁻¹ u s` with `u ∈ H`.
fn s_pinch(w: &Word) -> Option<Word> {
    let ls = w.letters();
    for i in 0..ls.len() {
        if ls[i].gen != SS.gen {
            continue;
        }
        for j in i + 1..ls.len() {
            if ls[j] == ls[i].inverse() {
                let u = Word::from_letters(ls[i + 1..j].to_vec());
                if in_h(&st_eval(&u)) {
                    return Some(u);
                }
            }
        }
    }
    None
}

fn all_words(letters: &[Letter], max_len: usize, mut f: impl FnMut(&Word)) {
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &l in letters {
                let mut v = w.clone();
                v.push(l);
                f(&v);
                next.push(v);
            }
        }
        layer = next;
    }
}

fn britton_pinch() -> Result<String, String> {
    let p = q(2);
    let letters = GenAlphabet::bs().signed_letters();
    let id = BsElement::identity();
    let (mut trivial, mut pinched) = (0, 0);
    let mut err = None;
    all_words(&letters, 8, |w| {
        let shape = classify(w) == WordClass::NP || is_npn(w);
        if shape && w.is_reduced() && p.eval(w) == id {
            trivial += 1;
            if !has_pinch(w, &p) && err.is_none() {
                err = Some(format!("{} is trivial without a pinch", w.to_text(&GenAlphabet::bs())));
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut err = None;
    all_words(&letters, 10, |w| {
        if !w.is_reduced() || !matches!(classify(w), WordClass::NP | WordClass::NPX | WordClass::XNP) {
            return;
        }
        let Ok(t) = tilde(w, &p) else { return };
        if has_pinch(&t, &p) {
            pinched += 1;
            if is_geodesic(w, &p) && err.is_none() {
                err = Some(format!("{} is geodesic despite a pinch", w.to_text(&GenAlphabet::bs())));
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(format!("{trivial} trivial reduced NP/NPN words (length <= 8) all pinched; {pinched} pinched NP/NPX/XNP words (length <= 10) all non-geodesic"))
}

/// Letters `t` form blocks `t⁻¹…`, `t…`, `t⁻¹…` in that order.
fn is_npn(w: &Word) -> bool {
    let mut signs: Vec<i64> = w.letters().iter().filter(|l| l.gen == 1).map(|l| l.sign()).collect();
    signs.dedup();
    signs == [-1, 1, -1]
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("normal-form soundness", normal_form_soundness),
        ("M'AC evidence scan", mprime_scan),
        ("case-path verification", case_paths),
        ("non-P(2) witness", notpac),
        ("non-MAC witness for q >= 7", bs1q),
        ("power bounds in balls", boundingm),
        ("Stallings witness", stallings),
        ("Britton/pinch properties", britton_pinch),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
