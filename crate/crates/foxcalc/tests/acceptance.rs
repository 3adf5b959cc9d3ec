//! Acceptance suite: one numbered criterion per test, each printing a
//! single PASS/FAIL line (visible with `cargo test -- --nocapture`).
//! Every tolerance is exact equality in the exact coefficient ring.

use std::sync::Arc;

use foxcalc::cohomology::{
    coboundary, compose_mu, conjugation_ctx, cross_product_1_1, derivation_cochain,
    kappa_from_pairing, quasi_derivation_extend, rho_map, zero_cochain_deg1,
};
use foxcalc::higher::{check_higher_cocycle, higher_eta_zn, HigherPairing};
use foxcalc::pairing::delta_pairing;
use foxcalc::sampling::Rng;
use foxcalc::words::Letter;
use foxcalc::{
    check_aug_intersection, check_axioms, check_skew_identity, deserialize_pairing, parse_elem,
    parse_word, serialize_pairing, solve_fundamental, surface_preset, verify_uniqueness, Alphabet,
    CoeffRing, Derivation, FoxPairing, RingElem, Scalar, Side, Word,
};

fn verdict(n: usize, name: &str, ok: bool) {
    println!(
        "acceptance {n} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn random_matrix_pairing(alphabet: &Arc<Alphabet>, ring: CoeffRing, seed: u64) -> FoxPairing {
    let mut rng = Rng::new(seed);
    let mut p = FoxPairing::zero(alphabet, ring);
    for i in 0..alphabet.rank() {
        for j in 0..alphabet.rank() {
            p.set_entry(i, j, rng.elem(alphabet, ring, 3, 3));
        }
    }
    p
}

fn random_derivation(
    alphabet: &Arc<Alphabet>,
    ring: CoeffRing,
    side: Side,
    seed: u64,
) -> Derivation {
    let mut rng = Rng::new(seed);
    let gen_values = (0..alphabet.rank())
        .map(|_| rng.elem(alphabet, ring, 2, 3))
        .collect();
    Derivation::new(side, alphabet, ring, gen_values).unwrap()
}

/// Criterion 1: the two pairing axioms hold exactly, on 200 seeded random
/// word triples, for every constructor, over free groups of rank 2 and 4
/// and over Q and Z/2.
#[test]
fn acceptance_1_fox_pairing_axioms() {
    let mut ok = true;
    for alphabet in [Alphabet::free(&["a", "b"]), Alphabet::free_default(4)] {
        for ring in [CoeffRing::Rational, CoeffRing::Mod2] {
            let matrix = random_matrix_pairing(&alphabet, ring, 101);
            let mut rng = Rng::new(102);
            let inner = FoxPairing::inner(&rng.elem(&alphabet, ring, 3, 3));
            let transpose = random_matrix_pairing(&alphabet, ring, 103).transpose();
            let dl = random_derivation(&alphabet, ring, Side::Left, 104);
            let dr = random_derivation(&alphabet, ring, Side::Right, 105);
            let from_derivations = FoxPairing::from_derivations(&dl, &dr).unwrap();
            let rho_output = {
                let f0 = cross_product_1_1(
                    &derivation_cochain(&dl),
                    &derivation_cochain(&dr),
                    &alphabet,
                    ring,
                    30,
                    106,
                )
                .unwrap();
                rho_map(
                    &compose_mu(&f0),
                    &zero_cochain_deg1(&alphabet, ring),
                    &alphabet,
                    ring,
                    30,
                    106,
                )
                .unwrap()
                .materialize()
            };
            for (label, p) in [
                ("matrix", matrix),
                ("inner", inner),
                ("transpose", transpose),
                ("derivation-product", from_derivations),
                ("rho-output", rho_output),
            ] {
                let report = check_axioms(&p, 200, 11, 4);
                if !report.passed {
                    eprintln!(
                        "constructor {label} over {} rank {}: {report}",
                        ring,
                        alphabet.rank()
                    );
                    ok = false;
                }
            }
        }
    }
    verdict(1, "fox pairing axioms", ok);
    assert!(ok);
}

/// Criterion 2: the fundamental pairing solves at some L <= 8 for genus 1
/// and 2 over Q and Z/2; the generator identities hold exactly in K[F];
/// eta(zeta, g) = 1 - g for 50 seeded g; the homogeneous kernel at the
/// solved bound is zero.
#[test]
fn acceptance_2_fundamental_pairing() {
    let mut ok = true;
    for genus in [1usize, 2] {
        for ring in [CoeffRing::Rational, CoeffRing::Mod2] {
            let (sp, l_start) = surface_preset(genus).unwrap();
            let solved = solve_fundamental(&sp, ring, l_start.min(1), 8);
            let (p, info) = match solved {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("genus {genus} over {ring}: solve failed: {e}");
                    ok = false;
                    continue;
                }
            };
            if info.support > 8 {
                ok = false;
            }
            // exact generator identities through the evaluation engine
            for j in 0..sp.alphabet.rank() {
                let xj = Word::gen(&sp.alphabet, j);
                let got = p.eval_words(&sp.boundary_word, &xj);
                if got != RingElem::one_minus(&xj, ring) {
                    eprintln!("genus {genus} over {ring}: generator identity failed at {xj}");
                    ok = false;
                }
            }
            // eta(zeta, g) = 1 - g on 50 seeded words
            let mut rng = Rng::new(7);
            for _ in 0..50 {
                let g = rng.word(&sp.alphabet, 8);
                if p.eval_words(&sp.boundary_word, &g) != RingElem::one_minus(&g, ring) {
                    eprintln!("genus {genus} over {ring}: eta(zeta, {g}) != 1 - {g}");
                    ok = false;
                }
            }
            // kernel dimension zero at the solved bound
            let kernel = verify_uniqueness(&sp, info.support, ring).unwrap();
            if kernel != 0 || info.kernel_dim != 0 {
                eprintln!(
                    "genus {genus} over {ring}: kernel {kernel} at L={}",
                    info.support
                );
                ok = false;
            }
        }
    }
    verdict(2, "fundamental pairing", ok);
    assert!(ok);
}

/// Criterion 3: aug(eta(a, b)) equals one fixed nonzero lambda times the
/// symplectic exponent-sum form on 100 seeded pairs.
#[test]
fn acceptance_3_intersection_form_shadow() {
    let mut ok = true;
    for genus in [1usize, 2] {
        for ring in [CoeffRing::Rational, CoeffRing::Mod2] {
            let (sp, _) = surface_preset(genus).unwrap();
            let (p, _) = solve_fundamental(&sp, ring, 1, 8).unwrap();
            let report = check_aug_intersection(&p, genus, 100, 17);
            if !report.passed {
                eprintln!("genus {genus} over {ring}: {report}");
                ok = false;
            }
        }
    }
    verdict(3, "intersection form shadow", ok);
    assert!(ok);
}

/// Criterion 4: the skew-identity checker accepts the symmetrized fixture
/// and rejects the zero pairing, on 100 seeded pairs.
#[test]
fn acceptance_4_skew_identity() {
    let alphabet = Alphabet::free(&["a", "b"]);
    let q = CoeffRing::Rational;
    let half = Scalar::from_ratio(q, 1, 2).unwrap();

    // (1/2) inner(1) satisfies eta + eta^t = (1-g)(1-h) by construction.
    let half_inner = FoxPairing::inner(&RingElem::one(&alphabet, q)).scale(&half);
    let fixture_passes = check_skew_identity(&half_inner, 100, 23).passed;

    // q - (q + q^t - inner(1))/2 for an arbitrary q passes by construction.
    let arbitrary = random_matrix_pairing(&alphabet, q, 401);
    let target = FoxPairing::inner(&RingElem::one(&alphabet, q));
    let defect = arbitrary
        .add(&arbitrary.transpose())
        .unwrap()
        .sub(&target)
        .unwrap();
    let symmetrized = arbitrary.sub(&defect.scale(&half)).unwrap();
    let symmetrized_passes = check_skew_identity(&symmetrized, 100, 23).passed;

    let zero_fails = !check_skew_identity(&FoxPairing::zero(&alphabet, q), 100, 23).passed;

    let ok = fixture_passes && symmetrized_passes && zero_fails;
    verdict(4, "skew identity checker", ok);
    assert!(ok);
}

/// Criterion 5: kappa is a sampled 2-cocycle (100 triples, exact) for the
/// zero, inner, and fundamental pairings; quasi-derivation extensions
/// satisfy their defining law exactly on 100 seeded pairs.
#[test]
fn acceptance_5_quasi_derivations() {
    let mut ok = true;
    let alphabet = Alphabet::free(&["a", "b"]);
    let q = CoeffRing::Rational;
    let (sp, _) = surface_preset(1).unwrap();
    let (fundamental, _) = solve_fundamental(&sp, q, 1, 8).unwrap();
    let mut rng = Rng::new(501);
    let pairings = [
        FoxPairing::zero(&alphabet, q),
        FoxPairing::inner(&rng.elem(&alphabet, q, 3, 3)),
        fundamental.clone(),
    ];
    for p in &pairings {
        let kappa = kappa_from_pairing(p);
        let ctx = conjugation_ctx(&alphabet, q);
        let dk = coboundary(&ctx, &kappa).unwrap();
        let mut rng = Rng::new(502);
        for _ in 0..100 {
            let g = rng.word(&alphabet, 5);
            let h = rng.word(&alphabet, 5);
            let k = rng.word(&alphabet, 5);
            if !dk.at(&[g.clone(), h.clone(), k.clone()]).is_zero() {
                eprintln!("delta^2 kappa != 0 at ({g}, {h}, {k})");
                ok = false;
            }
        }
    }

    // quasi-derivation law: zero generator values on the fundamental
    // pairing, and random values on a random pairing
    let zero_vals = vec![RingElem::zero(&alphabet, q); 2];
    let (_, report) = quasi_derivation_extend(&fundamental, zero_vals, 100, 503).unwrap();
    if !report.passed {
        eprintln!("{report}");
        ok = false;
    }
    let vals: Vec<RingElem> = (0..2).map(|_| rng.elem(&alphabet, q, 2, 3)).collect();
    let random_pairing = random_matrix_pairing(&alphabet, q, 504);
    let (_, report) = quasi_derivation_extend(&random_pairing, vals, 100, 505).unwrap();
    if !report.passed {
        eprintln!("{report}");
        ok = false;
    }

    verdict(5, "kappa cocycle and quasi-derivations", ok);
    assert!(ok);
}

/// Criterion 6: rho of the mu-contracted cross product evaluates
/// identically to the derivation-product pairing on 50 seeded pairs, for 3
/// seeded derivation choices.
#[test]
fn acceptance_6_rho_equality() {
    let mut ok = true;
    let alphabet = Alphabet::free(&["a", "b"]);
    let q = CoeffRing::Rational;
    for seed in [601u64, 602, 603] {
        let dl = random_derivation(&alphabet, q, Side::Left, seed);
        let dr = random_derivation(&alphabet, q, Side::Right, seed + 50);
        let f0 = cross_product_1_1(
            &derivation_cochain(&dl),
            &derivation_cochain(&dr),
            &alphabet,
            q,
            30,
            seed,
        )
        .unwrap();
        let rho = rho_map(
            &compose_mu(&f0),
            &zero_cochain_deg1(&alphabet, q),
            &alphabet,
            q,
            30,
            seed,
        )
        .unwrap();
        let expect = FoxPairing::from_derivations(&dl, &dr).unwrap();
        let mut rng = Rng::new(seed + 1000);
        for _ in 0..50 {
            let a = rng.word(&alphabet, 5);
            let b = rng.word(&alphabet, 5);
            if rho.eval_words(&a, &b) != expect.eval_words(&a, &b) {
                eprintln!("seed {seed}: rho != derivation pairing at ({a}, {b})");
                ok = false;
            }
        }
    }
    verdict(6, "rho equals derivation-product pairing", ok);
    assert!(ok);
}

/// Criterion 7: the Laurent derivation matches its defining table and the
/// derivation law on 200 samples; the Z^n pairing passes the sampled
/// cocycle checks for n = 2 and n = 3; the n = 1 case collapses to the
/// free-rank-1 engine on 100 samples.
#[test]
fn acceptance_7_zn_higher_pairing() {
    let mut ok = true;
    let q = CoeffRing::Rational;

    // table value
    let t1 = Alphabet::abelian(1);
    let d = foxcalc::higher::laurent_derivation(
        0,
        &RingElem::from_word(parse_word("t1^3", &t1).unwrap(), q),
    )
    .unwrap();
    if d != parse_elem("1 + t1 + t1^2", &t1, q).unwrap() {
        eprintln!("derivation table value failed: D1(t1^3) = {d}");
        ok = false;
    }

    // derivation law on 200 seeded single-variable pairs
    let t2 = Alphabet::abelian(2);
    let mut rng = Rng::new(701);
    for _ in 0..200 {
        let i = rng.below(2);
        let a = Word::gen_pow(&t2, i, rng.range_i64(-5, 5));
        let b = Word::gen_pow(&t2, i, rng.range_i64(-5, 5));
        let da =
            foxcalc::higher::laurent_derivation(i, &RingElem::from_word(a.clone(), q)).unwrap();
        let db =
            foxcalc::higher::laurent_derivation(i, &RingElem::from_word(b.clone(), q)).unwrap();
        let dab =
            foxcalc::higher::laurent_derivation(i, &RingElem::from_word(a.concat(&b), q)).unwrap();
        if dab != da.add(&db.mul_word_left(&a)).unwrap() {
            eprintln!("derivation law failed at i={i} a={a} b={b}");
            ok = false;
        }
    }

    // sampled cocycle checks
    let n2 = check_higher_cocycle(&HigherPairing::zn(2, q), 50, 702);
    if !n2.passed {
        eprintln!("{n2}");
        ok = false;
    }
    let n3 = check_higher_cocycle(&HigherPairing::zn(3, q), 20, 703);
    if !n3.passed {
        eprintln!("{n3}");
        ok = false;
    }

    // n = 1 collapse against the free-rank-1 engine
    let free1 = Alphabet::free(&["t"]);
    let engine = delta_pairing(&free1, q, 0, 0);
    let mut rng = Rng::new(704);
    for _ in 0..100 {
        let m = rng.range_i64(-5, 5);
        let l = rng.range_i64(-5, 5);
        let got = higher_eta_zn(
            1,
            &[RingElem::from_word(Word::gen_pow(&t1, 0, m), q)],
            &[RingElem::from_word(Word::gen_pow(&t1, 0, l), q)],
            q,
        )
        .unwrap();
        let expect = engine.eval_words(&Word::gen_pow(&free1, 0, m), &Word::gen_pow(&free1, 0, l));
        let norm = |x: &RingElem| {
            let mut v: Vec<(i64, String)> = x
                .terms()
                .map(|(w, c)| (w.exponent_sum(0), c.to_string()))
                .collect();
            v.sort();
            v
        };
        if norm(&got) != norm(&expect) {
            eprintln!("n=1 collapse failed at ({m}, {l})");
            ok = false;
        }
    }

    verdict(7, "Z^n higher pairing", ok);
    assert!(ok);
}

/// Criterion 8: word and ring round trips, ring axioms on seeded samples,
/// and the byte-identical golden pairing file.
#[test]
fn acceptance_8_infrastructure() {
    let mut ok = true;
    let alphabet = Alphabet::free(&["a", "b", "c"]);
    let mut rng = Rng::new(801);

    // parse(print(w)) = w on seeded random words of length <= 32
    for _ in 0..300 {
        let w = rng.word(&alphabet, 32);
        let text = w.to_string();
        if parse_word(&text, &alphabet).unwrap() != w {
            eprintln!("word round trip failed for {text}");
            ok = false;
        }
    }

    // reduction leaves no adjacent inverse pair
    for _ in 0..200 {
        let raw: Vec<Letter> = (0..rng.below(20))
            .map(|_| Letter::new(rng.below(3), rng.below(2) == 1))
            .collect();
        let w = Word::reduce(&alphabet, &raw);
        let ls = w.letters();
        for i in 1..ls.len() {
            if ls[i - 1].gen == ls[i].gen && ls[i - 1].inv != ls[i].inv {
                eprintln!("reduction left an inverse pair");
                ok = false;
            }
        }
    }

    // ring axioms, augmentation, involution on 200 seeded triples
    for ring in [CoeffRing::Rational, CoeffRing::Integer, CoeffRing::Mod2] {
        for _ in 0..200 {
            let x = rng.elem(&alphabet, ring, 4, 6);
            let y = rng.elem(&alphabet, ring, 4, 6);
            let z = rng.elem(&alphabet, ring, 4, 6);
            let assoc = x.mul(&y).unwrap().mul(&z).unwrap() == x.mul(&y.mul(&z).unwrap()).unwrap();
            let distrib = x.mul(&y.add(&z).unwrap()).unwrap()
                == x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
            let one = RingElem::one(&alphabet, ring);
            let unit = x.mul(&one).unwrap() == x && one.mul(&x).unwrap() == x;
            let aug_mult = x.mul(&y).unwrap().augment() == x.augment().mul(&y.augment());
            let aug_add = x.add(&y).unwrap().augment() == x.augment().add(&y.augment());
            let inv_order2 = x.involute().involute() == x;
            let inv_anti =
                x.mul(&y).unwrap().involute() == y.involute().mul(&x.involute()).unwrap();
            let inv_add = x.add(&y).unwrap().involute() == x.involute().add(&y.involute()).unwrap();
            if !(assoc
                && distrib
                && unit
                && aug_mult
                && aug_add
                && inv_order2
                && inv_anti
                && inv_add)
            {
                eprintln!("ring axiom failed over {ring}");
                ok = false;
            }
        }
    }

    // golden pairing files: solver output is byte-identical and every
    // golden file round-trips byte for byte
    let goldens: [(&str, usize, CoeffRing); 3] = [
        (
            include_str!("golden/fundamental_genus1_q.fxp"),
            1,
            CoeffRing::Rational,
        ),
        (
            include_str!("golden/fundamental_genus1_f2.fxp"),
            1,
            CoeffRing::Mod2,
        ),
        (
            include_str!("golden/fundamental_genus2_q.fxp"),
            2,
            CoeffRing::Rational,
        ),
    ];
    for (golden, genus, ring) in goldens {
        let (sp, _) = surface_preset(genus).unwrap();
        let (p, _) = solve_fundamental(&sp, ring, 1, 8).unwrap();
        if serialize_pairing(&p) != golden {
            eprintln!("solver output differs from the golden file (genus {genus}, {ring})");
            ok = false;
        }
        let reparsed = deserialize_pairing(golden).unwrap();
        if serialize_pairing(&reparsed) != golden {
            eprintln!("golden file does not round-trip byte-identically (genus {genus}, {ring})");
            ok = false;
        }
    }

    verdict(8, "infrastructure round trips", ok);
    assert!(ok);
}
