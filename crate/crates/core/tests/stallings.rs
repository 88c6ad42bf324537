use almost_convex::ball::build_ball;
use almost_convex::scan::scan;
use almost_convex::stallings::{
    gamma_length_special, in_h, lambda_length, relators, st_eval, verify_stallings_witness, witness_alpha,
    witness_beta, GElement, Stallings,
};
use almost_convex::words::{GenAlphabet, Word};

fn w(s: &str) -> Word {
    Word::parse(s, &GenAlphabet::stallings()).unwrap()
}

#[test]
fn evaluation_examples() {
    assert!(!st_eval(&w("s a S A")).is_identity());
    assert!(st_eval(&w("s a B S b A")).is_identity());
    assert!(in_h(&st_eval(&w("a B"))));
    assert!(!in_h(&st_eval(&w("a"))));
    assert!(in_h(&st_eval(&w("s a B S"))));
    assert_eq!(st_eval(&w("a c")), st_eval(&w("c a")));
    assert_eq!(st_eval(&w("s a B S")), st_eval(&w("a B")));
    for r in relators() {
        assert!(st_eval(&r).is_identity());
    }
}

#[test]
fn length_examples() {
    assert_eq!(lambda_length(&GElement::from_word(&w("a b A B")).unwrap()), 4);
    assert_eq!(lambda_length(&GElement::from_word(&w("a c A C")).unwrap()), 0);
    assert_eq!(gamma_length_special(&st_eval(&witness_alpha(1))), Some(4));
    assert_eq!(gamma_length_special(&st_eval(&witness_beta(1))), Some(4));
    assert_eq!(gamma_length_special(&st_eval(&w("s a s"))), None);
}

#[test]
fn special_lengths_match_bfs() {
    let ball = build_ball(&Stallings, 4, 10_000_000).unwrap();
    let mut seen = 0;
    for i in 0..ball.len() as u32 {
        if let Some(l) = gamma_length_special(ball.elem(i)) {
            assert_eq!(l, ball.dist_of(i) as u64, "{}", ball.elem(i));
            seen += 1;
        }
    }
    assert!(seen > 1000);
}

#[test]
fn witness_for_n_1() {
    let rep = verify_stallings_witness(1, 10_000_000).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.radius, 4);
    assert!(rep.min_bridge.is_none_or(|l| l >= rep.bridge_bound));
}

#[test]
fn small_scan_runs() {
    let rep = scan(&Stallings, 1, 3, 10_000_000).unwrap();
    assert_eq!(rep.rows.len(), 3);
    assert!(rep.rows.iter().all(|r| r.pairs > 0 || r.r == 1));
}
