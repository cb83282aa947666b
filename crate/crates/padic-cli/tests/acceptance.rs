//! The acceptance gate. Each test checks one release criterion end to end
//! and prints a `[PASS]` line once its assertions hold, so
//! `cargo test --test acceptance -- --nocapture` reads as a checklist.

use num_bigint::BigInt;
use padic::{
    build_analytic_tree, build_empirical_tree, build_partial_tree, congruence_order, diff_trees,
    digits_from_zero, expand, extend_certified, infinite_branch_count, is_padic_integer, padic_abs,
    parse, roots_mod_pk, valuation_rat, zp_root_prefixes, FactoredPolynomial, LinearFactor, NodeId,
    NodeStatus, Polynomial, Prime, Rational, Valuation, ValuationTree,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("prime")
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// One expected node: its digits and status.
struct Want(Vec<u64>, NodeStatus);

fn t(digits: &[u64], v: i64) -> Want {
    Want(
        digits.to_vec(),
        NodeStatus::Terminating(Valuation::Finite(v)),
    )
}

fn open(digits: &[u64]) -> Want {
    Want(digits.to_vec(), NodeStatus::NonTerminating)
}

/// Checks that the tree holds exactly the expected nodes with the expected
/// statuses.
fn assert_nodes(tree: &ValuationTree, expected: &[Want]) {
    assert_eq!(
        tree.nodes().len(),
        expected.len(),
        "{}: node count",
        tree.generator()
    );
    for Want(digits, status) in expected {
        let id = NodeId::new(tree.prime(), digits.clone());
        assert_eq!(
            tree.status(&id),
            Some(*status),
            "{}: node {id}",
            tree.generator()
        );
    }
}

/// Checks that the listed nodes exist and carry the expected branch labels
/// (the smallest member of each residue class).
fn assert_labels(tree: &ValuationTree, expected: &[(&[u64], u64)]) {
    for (digits, label) in expected {
        let id = NodeId::new(tree.prime(), digits.to_vec());
        assert!(tree.get(&id).is_some(), "{}: node {id}", tree.generator());
        assert_eq!(id.value(), BigInt::from(*label), "label of {id}");
    }
}

fn timed(build: impl FnOnce() -> ValuationTree) -> ValuationTree {
    let start = Instant::now();
    let tree = build();
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(1),
        "{}: built in {elapsed:?}",
        tree.generator()
    );
    tree
}

fn factored(text: &str) -> FactoredPolynomial {
    parse(text).expect("well-formed input")
}

#[test]
fn criterion_1_reference_trees() {
    let p2 = prime(2);
    let p3 = prime(3);
    let p5 = prime(5);

    // n^2 + 4 at p = 2, depth 2: the branch of each square root of -4 in
    // Z_2 stays open, everything else is pinned within two digits.
    let tree = timed(|| build_empirical_tree(&factored("n^2+4").expand(), p2, 2, 4).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            open(&[0]),
            t(&[1], 0),
            t(&[0, 0], 2),
            t(&[0, 1], 3),
        ],
    );
    assert_labels(&tree, &[(&[0], 0), (&[1], 1), (&[0, 0], 0), (&[0, 1], 2)]);

    // 2n - 5 at p = 3, depth 5: a single root 5/2, one open branch whose
    // digits spell 5/2, and siblings pinned at one less than their level.
    let tree = timed(|| build_analytic_tree(&factored("2n-5"), p3, 5).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            t(&[0], 0),
            open(&[1]),
            t(&[2], 0),
            t(&[1, 0], 1),
            t(&[1, 1], 1),
            open(&[1, 2]),
            t(&[1, 2, 0], 2),
            open(&[1, 2, 1]),
            t(&[1, 2, 2], 2),
            t(&[1, 2, 1, 0], 3),
            open(&[1, 2, 1, 1]),
            t(&[1, 2, 1, 2], 3),
            t(&[1, 2, 1, 1, 0], 4),
            open(&[1, 2, 1, 1, 1]),
            t(&[1, 2, 1, 1, 2], 4),
        ],
    );
    assert_labels(
        &tree,
        &[
            (&[0], 0),
            (&[1], 1),
            (&[2], 2),
            (&[1, 2, 1, 1, 0], 43),
            (&[1, 2, 1, 1, 1], 124),
            (&[1, 2, 1, 1, 2], 205),
        ],
    );

    // 3/2 n + 9 at p = 3, depth 5: the constant 3/2 lifts every terminal
    // valuation by one; the open path spells -6.
    let tree = timed(|| build_analytic_tree(&factored("3/2n+9"), p3, 5).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            open(&[0]),
            t(&[1], 1),
            t(&[2], 1),
            t(&[0, 0], 2),
            open(&[0, 1]),
            t(&[0, 2], 2),
            t(&[0, 1, 0], 3),
            t(&[0, 1, 1], 3),
            open(&[0, 1, 2]),
            t(&[0, 1, 2, 0], 4),
            t(&[0, 1, 2, 1], 4),
            open(&[0, 1, 2, 2]),
            t(&[0, 1, 2, 2, 0], 5),
            t(&[0, 1, 2, 2, 1], 5),
            open(&[0, 1, 2, 2, 2]),
        ],
    );

    // (5n - 4)(n + 23) at p = 5, depth 4: the root 4/5 falls outside Z_5
    // and contributes nothing, so only the path of -23 stays open.
    let tree = timed(|| build_analytic_tree(&factored("(5n-4)*(n+23)"), p5, 4).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            t(&[0], 0),
            t(&[1], 0),
            open(&[2]),
            t(&[3], 0),
            t(&[4], 0),
            open(&[2, 0]),
            t(&[2, 1], 1),
            t(&[2, 2], 1),
            t(&[2, 3], 1),
            t(&[2, 4], 1),
            t(&[2, 0, 0], 2),
            t(&[2, 0, 1], 2),
            t(&[2, 0, 2], 2),
            t(&[2, 0, 3], 2),
            open(&[2, 0, 4]),
            t(&[2, 0, 4, 0], 3),
            t(&[2, 0, 4, 1], 3),
            t(&[2, 0, 4, 2], 3),
            t(&[2, 0, 4, 3], 3),
            open(&[2, 0, 4, 4]),
        ],
    );

    // (n - 16)(5n - 2) at p = 2, depth 5: roots 16 and 2/5 agree in one
    // digit, so the open branch forks at level 1 and the fork doubles the
    // nearby terminal valuations.
    let tree = timed(|| build_analytic_tree(&factored("(n-16)*(5n-2)"), p2, 5).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            open(&[0]),
            t(&[1], 0),
            open(&[0, 0]),
            open(&[0, 1]),
            open(&[0, 0, 0]),
            t(&[0, 0, 1], 3),
            open(&[0, 1, 0]),
            t(&[0, 1, 1], 3),
            open(&[0, 0, 0, 0]),
            t(&[0, 0, 0, 1], 4),
            t(&[0, 1, 0, 0], 4),
            open(&[0, 1, 0, 1]),
            t(&[0, 0, 0, 0, 0], 5),
            open(&[0, 0, 0, 0, 1]),
            t(&[0, 1, 0, 1, 0], 5),
            open(&[0, 1, 0, 1, 1]),
        ],
    );

    // 3/2 (n - 9)(3n + 1) at p = 2, depth 4: the halved constant drags the
    // off-path valuation at level 1 down to -1, and the roots 9 and -1/3
    // share two digits before forking at level 2.
    let tree = timed(|| build_analytic_tree(&factored("3/2*(n-9)*(3n+1)"), p2, 4).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            t(&[0], -1),
            open(&[1]),
            open(&[1, 0]),
            t(&[1, 1], 1),
            open(&[1, 0, 0]),
            open(&[1, 0, 1]),
            t(&[1, 0, 0, 0], 4),
            open(&[1, 0, 0, 1]),
            open(&[1, 0, 1, 0]),
            t(&[1, 0, 1, 1], 4),
        ],
    );

    // (n - 2)(n + 6)(n - 12) at p = 2, depth 4: three roots in Z_2 keep
    // three branches open once their digit paths separate.
    let tree = timed(|| build_analytic_tree(&factored("(n-2)*(n+6)*(n-12)"), p2, 4).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            open(&[0]),
            t(&[1], 0),
            open(&[0, 0]),
            open(&[0, 1]),
            t(&[0, 0, 0], 4),
            open(&[0, 0, 1]),
            open(&[0, 1, 0]),
            t(&[0, 1, 1], 5),
            t(&[0, 0, 1, 0], 5),
            open(&[0, 0, 1, 1]),
            open(&[0, 1, 0, 0]),
            open(&[0, 1, 0, 1]),
        ],
    );
    assert_eq!(tree.open_leaves().len(), 3);

    // 3/5 (n + 6)(2n - 5)(3n - 4) at p = 3, depth 5: the roots -6 and 5/2
    // keep two branches open, 4/3 falls outside Z_3, and the constant's
    // extra factor of 3 shifts every terminal valuation up by one.
    let tree = timed(|| build_analytic_tree(&factored("3/5*(n+6)*(2n-5)*(3n-4)"), p3, 5).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            open(&[0]),
            open(&[1]),
            t(&[2], 1),
            t(&[0, 0], 2),
            open(&[0, 1]),
            t(&[0, 2], 2),
            t(&[1, 0], 2),
            t(&[1, 1], 2),
            open(&[1, 2]),
            t(&[0, 1, 0], 3),
            t(&[0, 1, 1], 3),
            open(&[0, 1, 2]),
            t(&[1, 2, 0], 3),
            open(&[1, 2, 1]),
            t(&[1, 2, 2], 3),
            t(&[0, 1, 2, 0], 4),
            t(&[0, 1, 2, 1], 4),
            open(&[0, 1, 2, 2]),
            t(&[1, 2, 1, 0], 4),
            open(&[1, 2, 1, 1]),
            t(&[1, 2, 1, 2], 4),
            t(&[0, 1, 2, 2, 0], 5),
            t(&[0, 1, 2, 2, 1], 5),
            open(&[0, 1, 2, 2, 2]),
            t(&[1, 2, 1, 1, 0], 5),
            open(&[1, 2, 1, 1, 1]),
            t(&[1, 2, 1, 1, 2], 5),
        ],
    );
    assert_eq!(tree.open_leaves().len(), 2);

    // n^2 + 7 at p = 2, depth 4: both square roots of -7 live in Z_2, so
    // the partial engine keeps their certified digit paths open.
    let tree = timed(|| build_partial_tree(&factored("n^2+7"), p2, 4, 6, 4).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            t(&[0], 0),
            open(&[1]),
            open(&[1, 0]),
            open(&[1, 1]),
            t(&[1, 0, 0], 3),
            open(&[1, 0, 1]),
            open(&[1, 1, 0]),
            t(&[1, 1, 1], 3),
            open(&[1, 0, 1, 0]),
            t(&[1, 0, 1, 1], 4),
            t(&[1, 1, 0, 0], 4),
            open(&[1, 1, 0, 1]),
        ],
    );

    // n^2 + 4 again, this time through the partial engine: no residual
    // roots survive lifting, so every class resolves empirically.
    let tree = timed(|| build_partial_tree(&factored("n^2+4"), p2, 2, 4, 4).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            open(&[0]),
            t(&[1], 0),
            t(&[0, 0], 2),
            t(&[0, 1], 3),
        ],
    );

    // (n^2 + 4)(n^2 + 7) at p = 2, depth 4: the product overlays both
    // trees; the square roots of -7 stay open, the -4 branch closes.
    let tree = timed(|| build_partial_tree(&factored("(n^2+4)*(n^2+7)"), p2, 4, 6, 4).unwrap());
    assert_nodes(
        &tree,
        &[
            open(&[]),
            open(&[0]),
            open(&[1]),
            t(&[0, 0], 2),
            t(&[0, 1], 3),
            open(&[1, 0]),
            open(&[1, 1]),
            t(&[1, 0, 0], 3),
            open(&[1, 0, 1]),
            open(&[1, 1, 0]),
            t(&[1, 1, 1], 3),
            open(&[1, 0, 1, 0]),
            t(&[1, 0, 1, 1], 4),
            t(&[1, 1, 0, 0], 4),
            open(&[1, 1, 0, 1]),
        ],
    );

    // n^2 + 1 and n^2 + 2 at p = 2, depth 1: neither has a root in Z_2,
    // and their valuations alternate between the two residue classes.
    let tree = timed(|| build_empirical_tree(&factored("n^2+1").expand(), p2, 1, 4).unwrap());
    assert_nodes(&tree, &[open(&[]), t(&[0], 0), t(&[1], 1)]);
    let tree = timed(|| build_empirical_tree(&factored("n^2+2").expand(), p2, 1, 4).unwrap());
    assert_nodes(&tree, &[open(&[]), t(&[0], 1), t(&[1], 0)]);

    // Their product is constant: the alternating valuations cancel, every
    // term has valuation exactly 1, and the root never splits.
    let product = factored("(n^2+1)*(n^2+2)");
    let tree = timed(|| build_empirical_tree(&product.expand(), p2, 2, 4).unwrap());
    assert_nodes(&tree, &[t(&[], 1)]);
    let tree = timed(|| build_partial_tree(&product, p2, 2, 4, 4).unwrap());
    assert_nodes(&tree, &[t(&[], 1)]);

    println!("[PASS] criterion 1: 14 reference trees rebuilt exactly (statuses, valuations, branch labels, < 1 s each)");
}

#[test]
fn criterion_2_reference_expansions() {
    let p2 = prime(2);
    let p3 = prime(3);
    let p5 = prime(5);

    assert_eq!(
        digits_from_zero(&rat(5, 2), p3, 5).unwrap(),
        [1, 2, 1, 1, 1]
    );
    assert_eq!(
        expand(&rat(5, 2), p3, 5).unwrap().to_string(),
        "1·3^0 + 2·3^1 + 1·3^2 + 1·3^3 + 1·3^4"
    );
    assert_eq!(
        digits_from_zero(&rat(-6, 1), p3, 5).unwrap(),
        [0, 1, 2, 2, 2]
    );

    let e = expand(&rat(4, 5), p5, 3).unwrap();
    assert_eq!(e.start_exponent(), -1);
    assert_eq!(e.digits(), [4, 0, 0]);
    assert_eq!(e.to_string(), "4·5^-1 + 0·5^0 + 0·5^1");
    assert_eq!(digits_from_zero(&rat(-23, 1), p5, 3).unwrap(), [2, 0, 4]);

    assert_eq!(
        digits_from_zero(&rat(16, 1), p2, 6).unwrap(),
        [0, 0, 0, 0, 1, 0]
    );
    assert_eq!(
        digits_from_zero(&rat(2, 5), p2, 6).unwrap(),
        [0, 1, 0, 1, 1, 0]
    );

    assert_eq!(digits_from_zero(&rat(9, 1), p2, 4).unwrap(), [1, 0, 0, 1]);
    assert_eq!(digits_from_zero(&rat(-1, 3), p2, 4).unwrap(), [1, 0, 1, 0]);

    assert_eq!(digits_from_zero(&rat(2, 1), p2, 4).unwrap(), [0, 1, 0, 0]);
    assert_eq!(digits_from_zero(&rat(-6, 1), p2, 4).unwrap(), [0, 1, 0, 1]);
    assert_eq!(digits_from_zero(&rat(12, 1), p2, 4).unwrap(), [0, 0, 1, 1]);

    let e = expand(&rat(4, 3), p3, 6).unwrap();
    assert_eq!(e.start_exponent(), -1);
    assert_eq!(e.digits(), [1, 1, 0, 0, 0, 0]);

    // The two square roots of -7 in Z_2, to four digits each.
    let f = factored("n^2+7");
    let mut certified: Vec<Vec<u64>> = zp_root_prefixes(f.residual(), p2, 4)
        .unwrap()
        .iter()
        .filter(|r| r.certified())
        .map(|r| r.digits().to_vec())
        .collect();
    certified.sort();
    assert_eq!(certified, [vec![1, 0, 1, 0], vec![1, 1, 0, 1]]);

    println!("[PASS] criterion 2: reference digit expansions match digit for digit");
}

/// 200 random products of one to four primitive linear factors with a
/// random rational constant, cycling through small primes.
fn random_products() -> Vec<(FactoredPolynomial, Prime)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0acce55);
    let primes = [2u64, 3, 5, 7];
    let mut out = Vec::new();
    for i in 0..200 {
        let p = prime(primes[i % primes.len()]);
        let mut constant = loop {
            let n = rng.gen_range(-50i64..=50);
            if n != 0 {
                break rat(n, rng.gen_range(1..=50));
            }
        };
        let count = rng.gen_range(1..=4);
        let mut factors = Vec::new();
        for _ in 0..count {
            let a = loop {
                let a = rng.gen_range(-50i64..=50);
                if a != 0 {
                    break a;
                }
            };
            let b = rng.gen_range(-50i64..=50);
            let (scale, factor) = LinearFactor::extract(rat(a, 1), rat(b, 1)).expect("a nonzero");
            constant *= scale;
            factors.push(factor);
        }
        out.push((FactoredPolynomial::from_linear(constant, factors), p));
    }
    out
}

#[test]
fn criterion_3_engine_agreement() {
    let start = Instant::now();
    for (f, p) in random_products() {
        let analytic = build_analytic_tree(&f, p, 6).unwrap();
        let empirical = build_empirical_tree(&f.expand(), p, 6, 4).unwrap();
        let diff = diff_trees(&analytic, &empirical).unwrap();
        assert!(
            diff.is_agreement(),
            "{f} at p = {}: {} disagreements, {} incomparable",
            p.get(),
            diff.disagreements.len(),
            diff.incomparable.len()
        );
        assert!(
            empirical
                .nodes()
                .values()
                .all(|info| info.status != NodeStatus::Unresolved),
            "{f} at p = {}: unresolved node",
            p.get()
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "corpus took {elapsed:?}");
    println!(
        "[PASS] criterion 3: analytic and empirical trees agree on 200 random products with no unresolved nodes ({elapsed:?})"
    );
}

fn horner_mod(coeffs: &[i64], x: i128, m: i128) -> i128 {
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = (acc * x + c as i128).rem_euclid(m);
    }
    acc
}

#[test]
fn criterion_4_lifting_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11f7);
    let primes = [2u64, 3, 5];
    for trial in 0..100 {
        let p = prime(primes[trial % primes.len()]);
        let coeffs: Vec<i64> = loop {
            let degree = rng.gen_range(1..=4usize);
            let c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-20..=20)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        };
        let f = Polynomial::from_int_coeffs(&coeffs);
        let k = rng.gen_range(1..=6usize);
        let modulus = (p.get() as i128).pow(k as u32);

        let brute: Vec<BigInt> = (0..modulus)
            .filter(|&x| horner_mod(&coeffs, x, modulus) == 0)
            .map(BigInt::from)
            .collect();
        assert_eq!(
            roots_mod_pk(&f, p, k).unwrap(),
            brute,
            "{f} mod {}^{k}",
            p.get()
        );

        for prefix in zp_root_prefixes(&f, p, k).unwrap() {
            if !prefix.certified() {
                continue;
            }
            let extended = extend_certified(&f, &prefix, 3).unwrap();
            assert_eq!(&extended.digits()[..k], prefix.digits());
            let value = f.evaluate(&Rational::from(extended.value()));
            assert!(
                valuation_rat(&value, p) >= Valuation::Finite((k + 3) as i64),
                "{f}: prefix {:?} does not extend",
                prefix.digits()
            );
        }
    }
    println!("[PASS] criterion 4: lifted roots match brute-force residue scans and certified prefixes survive 3 extra digits");
}

#[test]
fn criterion_5_branch_counts() {
    for (f, p) in random_products() {
        let expected = infinite_branch_count(&f, p).unwrap();
        let roots: Vec<Rational> = f
            .linear_factors()
            .iter()
            .map(|factor| factor.root())
            .filter(|root| is_padic_integer(root, p))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut depth = 2usize;
        for (i, r1) in roots.iter().enumerate() {
            for r2 in &roots[i + 1..] {
                let order = congruence_order(r1, r2, p)
                    .unwrap()
                    .finite()
                    .expect("distinct roots") as usize;
                depth = depth.max(order + 2);
            }
        }
        let tree = build_analytic_tree(&f, p, depth).unwrap();
        assert_eq!(
            tree.open_leaves().len(),
            expected,
            "{f} at p = {} and depth {depth}",
            p.get()
        );
    }
    println!("[PASS] criterion 5: infinite branch counts equal open leaves at separating depth across the corpus");
}

#[test]
fn criterion_6_valuation_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a75);
    let random_rational = |rng: &mut ChaCha8Rng| {
        rat(
            rng.gen_range(-1_000_000i64..=1_000_000),
            rng.gen_range(1..=1_000_000),
        )
    };
    for p_raw in [2u64, 3, 5, 7, 11] {
        let p = prime(p_raw);
        for _ in 0..10_000 {
            let x = random_rational(&mut rng);
            let y = random_rational(&mut rng);
            let vx = valuation_rat(&x, p);
            let vy = valuation_rat(&y, p);

            let product = &x * &y;
            assert_eq!(valuation_rat(&product, p), vx + vy);
            assert_eq!(padic_abs(&product, p), padic_abs(&x, p) * padic_abs(&y, p));

            let sum = &x + &y;
            let vs = valuation_rat(&sum, p);
            assert!(vs >= vx.min(vy));
            if vx != vy {
                assert_eq!(vs, vx.min(vy));
            }
        }
    }
    println!("[PASS] criterion 6: valuation multiplicativity and ultrametric laws hold on 10000 random pairs per prime");
}

#[test]
fn criterion_7_cli_determinism() {
    let commands: &[&[&str]] = &[
        &["val", "n^2+4", "--at", "2", "-p", "2"],
        &["val", "(n-2)*(n+6)", "--at", "2", "-p", "2"],
        &["expand", "5/2", "-p", "3", "--digits", "5"],
        &["expand", "4/5", "-p", "5", "--digits", "3"],
        &["tree", "2n-5", "-p", "3", "--depth", "5"],
        &["tree", "2n-5", "-p", "3", "--depth", "5", "--format", "dot"],
        &[
            "tree", "2n-5", "-p", "3", "--depth", "5", "--format", "json",
        ],
        &[
            "tree", "2n-5", "-p", "3", "--depth", "5", "--format", "latex",
        ],
        &["tree", "2n-5", "-p", "3", "--no-branch-labels"],
        &["tree", "n^2+7", "-p", "2", "--depth", "4"],
        &[
            "tree", "n^2+7", "-p", "2", "--depth", "4", "--format", "json",
        ],
        &[
            "tree",
            "n^2+4",
            "-p",
            "2",
            "--engine",
            "empirical",
            "--depth",
            "2",
        ],
        &[
            "tree",
            "(n^2+4)*(n^2+7)",
            "-p",
            "2",
            "--depth",
            "4",
            "--format",
            "latex",
        ],
        &[
            "tree",
            "3/2*(n-9)*(3n+1)",
            "-p",
            "2",
            "--depth",
            "4",
            "--format",
            "dot",
        ],
        &["diff", "2n-5", "-p", "3"],
        &["diff", "(n-16)*(5n-2)", "-p", "2"],
        &["roots", "(5n-4)*(n+23)", "-p", "5", "--depth", "4"],
        &["roots", "n^2+7", "-p", "2", "--depth", "6"],
        &["roots", "n^2+1", "-p", "2", "--depth", "4"],
        &["tree", "n^2+7", "-p", "2", "--engine", "analytic"],
        &["tree", "2n-5", "-p", "9"],
        &["val", "2n-**", "--at", "0", "-p", "2"],
    ];
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_padic"))
            .args(args)
            .output()
            .expect("binary runs");
        (out.stdout, out.stderr, out.status.code())
    };
    for args in commands {
        let first = run(args);
        let second = run(args);
        assert_eq!(first, second, "{args:?} is not deterministic");
    }
    println!(
        "[PASS] criterion 7: {} CLI commands byte-identical across repeated runs",
        commands.len()
    );
}
