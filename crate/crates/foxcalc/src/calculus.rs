//! Left and right Fox derivatives on free groups, and derivations extended
//! from generator tables.
//!
//! Two independent evaluation paths are kept side by side: the closed
//! letter-by-letter Fox-derivative expansion, and a direct recursion on the
//! derivation law. They are compared against each other in the test suites;
//! the pairing engine's correctness rests entirely on these derivatives.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::ring::RingElem;
use crate::sampling::Rng;
use crate::scalar::CoeffRing;
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Left Fox derivative d^l w / d x_i.
///
/// For w = y_1...y_l, a positive letter y_p = x_i contributes the prefix
/// y_1...y_{p-1}; a negative letter y_p = x_i^-1 contributes -(y_1...y_p).
pub fn left_fox_derivative(w: &Word, i: usize, ring: CoeffRing) -> Result<RingElem> {
    let alphabet = w.alphabet();
    if alphabet.is_abelian() {
        return Err(Error::RegimeMismatch { expected: "free" });
    }
    let mut out = RingElem::zero(alphabet, ring);
    for (p, l) in w.letters().iter().enumerate() {
        if l.gen as usize != i {
            continue;
        }
        let term = if l.inv {
            RingElem::from_word(w.prefix(p + 1), ring).neg()
        } else {
            RingElem::from_word(w.prefix(p), ring)
        };
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Right Fox derivative d^r w / d x_j.
///
/// A positive letter y_p = x_j contributes the suffix y_{p+1}...y_l; a
/// negative letter y_p = x_j^-1 contributes -(y_p...y_l).
pub fn right_fox_derivative(w: &Word, j: usize, ring: CoeffRing) -> Result<RingElem> {
    let alphabet = w.alphabet();
    if alphabet.is_abelian() {
        return Err(Error::RegimeMismatch { expected: "free" });
    }
    let mut out = RingElem::zero(alphabet, ring);
    for (p, l) in w.letters().iter().enumerate() {
        if l.gen as usize != j {
            continue;
        }
        let term = if l.inv {
            RingElem::from_word(w.suffix(p), ring).neg()
        } else {
            RingElem::from_word(w.suffix(p + 1), ring)
        };
        out = out.add(&term)?;
    }
    Ok(out)
}

/// A derivation G -> K[G] given by its values on the generators.
///
/// Left law on group elements: D(uv) = D(u) + u D(v).
/// Right law on group elements: D(uv) = D(u) v + D(v).
/// The value on an inverse letter is forced by D(1) = 0.
#[derive(Debug, Clone)]
pub struct Derivation {
    side: Side,
    alphabet: Arc<Alphabet>,
    ring: CoeffRing,
    gen_values: Vec<RingElem>,
}

impl Derivation {
    pub fn new(
        side: Side,
        alphabet: &Arc<Alphabet>,
        ring: CoeffRing,
        gen_values: Vec<RingElem>,
    ) -> Result<Derivation> {
        if alphabet.is_abelian() {
            return Err(Error::RegimeMismatch { expected: "free" });
        }
        if gen_values.len() != alphabet.rank() {
            return Err(Error::DimensionMismatch {
                expected: alphabet.rank(),
                got: gen_values.len(),
            });
        }
        for v in &gen_values {
            if v.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if v.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
        }
        Ok(Derivation {
            side,
            alphabet: Arc::clone(alphabet),
            ring,
            gen_values,
        })
    }

    pub fn zero(side: Side, alphabet: &Arc<Alphabet>, ring: CoeffRing) -> Derivation {
        let gen_values = (0..alphabet.rank())
            .map(|_| RingElem::zero(alphabet, ring))
            .collect();
        Derivation {
            side,
            alphabet: Arc::clone(alphabet),
            ring,
            gen_values,
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn gen_value(&self, i: usize) -> &RingElem {
        &self.gen_values[i]
    }

    /// Value on a single group element, by Fox-derivative expansion:
    /// left: D(w) = sum_i (d^l w / d x_i) D(x_i);
    /// right: D(w) = sum_j D(x_j) (d^r w / d x_j).
    pub fn eval_word(&self, w: &Word) -> RingElem {
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        for i in 0..self.alphabet.rank() {
            if self.gen_values[i].is_zero() {
                continue;
            }
            let term = match self.side {
                Side::Left => left_fox_derivative(w, i, self.ring)
                    .unwrap()
                    .mul(&self.gen_values[i])
                    .unwrap(),
                Side::Right => self.gen_values[i]
                    .mul(&right_fox_derivative(w, i, self.ring).unwrap())
                    .unwrap(),
            };
            out = out.add(&term).unwrap();
        }
        out
    }

    /// Independent evaluation path: direct recursion on the side law,
    /// peeling one letter at a time.
    pub fn eval_word_recursive(&self, w: &Word) -> RingElem {
        if w.is_identity() {
            return RingElem::zero(&self.alphabet, self.ring);
        }
        let letter_value = |l: crate::words::Letter| -> RingElem {
            let v = &self.gen_values[l.gen as usize];
            if !l.inv {
                return v.clone();
            }
            let xinv = Word::gen_pow(&self.alphabet, l.gen as usize, -1);
            match self.side {
                // D(x^-1) = -x^-1 D(x)
                Side::Left => v.mul_word_left(&xinv).neg(),
                // D(x^-1) = -D(x) x^-1
                Side::Right => v.mul_word_right(&xinv).neg(),
            }
        };
        match self.side {
            Side::Left => {
                // D(y w') = D(y) + y D(w')
                let y = w.prefix(1);
                let rest = w.suffix(1);
                let head = letter_value(w.letters()[0]);
                head.add(&self.eval_word_recursive(&rest).mul_word_left(&y))
                    .unwrap()
            }
            Side::Right => {
                // D(w' y) = D(w') y + D(y)
                let n = w.len();
                let y = w.suffix(n - 1);
                let rest = w.prefix(n - 1);
                let head = letter_value(w.letters()[n - 1]);
                self.eval_word_recursive(&rest)
                    .mul_word_right(&y)
                    .add(&head)
                    .unwrap()
            }
        }
    }

    /// Linear extension to the whole group ring.
    pub fn extend(&self, x: &RingElem) -> Result<RingElem> {
        if x.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        for (w, c) in x.terms() {
            out = out.add(&self.eval_word(w).scale(c))?;
        }
        Ok(out)
    }
}

/// The coboundary derivation of c: left convention g -> (1-g)c, right
/// convention g -> c(1-g), stored by its generator table.
pub fn coboundary_derivation(c: &RingElem, side: Side) -> Derivation {
    let alphabet = c.alphabet();
    let ring = c.ring();
    let gen_values = (0..alphabet.rank())
        .map(|i| {
            let one_minus_xi = RingElem::one_minus(&Word::gen(alphabet, i), ring);
            match side {
                Side::Left => one_minus_xi.mul(c).unwrap(),
                Side::Right => c.mul(&one_minus_xi).unwrap(),
            }
        })
        .collect();
    Derivation {
        side,
        alphabet: Arc::clone(alphabet),
        ring,
        gen_values,
    }
}

/// Checks the side law D(uv) = D(u) aug(v) + u D(v) (left) or
/// D(uv) = D(u) v + aug(u) D(v) (right) on seeded random word pairs, for an
/// arbitrary evaluator. This validates the extension engine itself as well
/// as hand-entered tables.
pub fn check_derivation_law<F>(
    eval: F,
    side: Side,
    alphabet: &Arc<Alphabet>,
    samples: usize,
    seed: u64,
) -> CheckReport
where
    F: Fn(&Word) -> RingElem,
{
    let mut rng = Rng::new(seed);
    for k in 0..samples {
        let u = rng.word(alphabet, 8);
        let v = rng.word(alphabet, 8);
        let uv = u.concat(&v);
        let lhs = eval(&uv);
        let rhs = match side {
            Side::Left => eval(&u).add(&eval(&v).mul_word_left(&u)).unwrap(),
            Side::Right => eval(&u).mul_word_right(&v).add(&eval(&v)).unwrap(),
        };
        if lhs != rhs {
            return CheckReport::fail(
                "derivation-law",
                samples,
                seed,
                format!("sample {k}: u={u} v={v} D(uv)={lhs} law-rhs={rhs}"),
            );
        }
    }
    CheckReport::pass("derivation-law", samples, seed)
}

/// `is_derivation` for a generator table: extends it and checks the law.
pub fn is_derivation(d: &Derivation, samples: usize, seed: u64) -> CheckReport {
    check_derivation_law(
        |w| d.eval_word(w),
        d.side(),
        &d.alphabet.clone(),
        samples,
        seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::words::parse_word;

    fn setup() -> (Arc<Alphabet>, CoeffRing) {
        (Alphabet::free(&["a", "b"]), CoeffRing::Rational)
    }

    fn w(alpha: &Arc<Alphabet>, s: &str) -> Word {
        parse_word(s, alpha).unwrap()
    }

    fn elem(alpha: &Arc<Alphabet>, s: &str) -> RingElem {
        crate::ring::parse_elem(s, alpha, CoeffRing::Rational).unwrap()
    }

    #[test]
    fn left_derivative_basics() {
        let (alpha, q) = setup();
        let d = left_fox_derivative(&w(&alpha, "a*b"), 0, q).unwrap();
        assert_eq!(d, RingElem::one(&alpha, q));
        let d = left_fox_derivative(&w(&alpha, "A"), 0, q).unwrap();
        assert_eq!(d, elem(&alpha, "-a^-1"));
    }

    #[test]
    fn left_derivative_commutator() {
        let (alpha, q) = setup();
        let zeta = w(&alpha, "a*b*A*B");
        let da = left_fox_derivative(&zeta, 0, q).unwrap();
        assert_eq!(da, elem(&alpha, "1 - a*b*a^-1"));
        let db = left_fox_derivative(&zeta, 1, q).unwrap();
        assert_eq!(db, elem(&alpha, "a - a*b*a^-1*b^-1"));
    }

    #[test]
    fn right_derivative_basics() {
        let (alpha, q) = setup();
        let d = right_fox_derivative(&w(&alpha, "b^2"), 1, q).unwrap();
        assert_eq!(d, elem(&alpha, "b + 1"));
        let d = right_fox_derivative(&w(&alpha, "B"), 1, q).unwrap();
        assert_eq!(d, elem(&alpha, "-b^-1"));
        let d = right_fox_derivative(&w(&alpha, "a*b"), 0, q).unwrap();
        assert_eq!(d, elem(&alpha, "b"));
    }

    #[test]
    fn abelian_regime_rejected() {
        let t = Alphabet::abelian(2);
        let m = Word::from_exponents(&t, vec![1, 0]);
        assert!(matches!(
            left_fox_derivative(&m, 0, CoeffRing::Rational),
            Err(Error::RegimeMismatch { .. })
        ));
    }

    #[test]
    fn extend_simple_table() {
        let (alpha, q) = setup();
        // left D with D(a)=1, D(b)=0 on w=ab -> 1
        let d = Derivation::new(
            Side::Left,
            &alpha,
            q,
            vec![RingElem::one(&alpha, q), RingElem::zero(&alpha, q)],
        )
        .unwrap();
        assert_eq!(d.eval_word(&w(&alpha, "a*b")), RingElem::one(&alpha, q));
        assert!(d.eval_word(&Word::identity(&alpha)).is_zero());
    }

    #[test]
    fn derivation_with_values_x_minus_one_telescopes() {
        // D(x_i) = x_i - 1 for all i gives D(w) = w - 1.
        let (alpha, q) = setup();
        let gen_values = (0..2)
            .map(|i| RingElem::one_minus(&Word::gen(&alpha, i), q).neg())
            .collect();
        let d = Derivation::new(Side::Left, &alpha, q, gen_values).unwrap();
        let mut rng = Rng::new(11);
        for _ in 0..100 {
            let word = rng.word(&alpha, 10);
            let expect = RingElem::one_minus(&word, q).neg();
            assert_eq!(d.eval_word(&word), expect);
            assert_eq!(d.eval_word_recursive(&word), expect);
        }
    }

    #[test]
    fn fundamental_identity_both_sides() {
        // sum_i (d^l w/d x_i)(x_i - 1) = w - 1, and the right-handed analogue.
        let (alpha, q) = setup();
        let mut rng = Rng::new(3);
        for _ in 0..100 {
            let word = rng.word(&alpha, 10);
            let mut left_sum = RingElem::zero(&alpha, q);
            let mut right_sum = RingElem::zero(&alpha, q);
            for i in 0..alpha.rank() {
                let xi_minus_1 = RingElem::one_minus(&Word::gen(&alpha, i), q).neg();
                left_sum = left_sum
                    .add(
                        &left_fox_derivative(&word, i, q)
                            .unwrap()
                            .mul(&xi_minus_1)
                            .unwrap(),
                    )
                    .unwrap();
                right_sum = right_sum
                    .add(
                        &xi_minus_1
                            .mul(&right_fox_derivative(&word, i, q).unwrap())
                            .unwrap(),
                    )
                    .unwrap();
            }
            let expect = RingElem::one_minus(&word, q).neg();
            assert_eq!(left_sum, expect);
            assert_eq!(right_sum, expect);
        }
    }

    #[test]
    fn two_evaluation_paths_agree() {
        let (alpha, q) = setup();
        let mut rng = Rng::new(5);
        for side in [Side::Left, Side::Right] {
            let gen_values = (0..alpha.rank())
                .map(|_| rng.elem(&alpha, q, 3, 4))
                .collect::<Vec<_>>();
            let d = Derivation::new(side, &alpha, q, gen_values).unwrap();
            for _ in 0..200 {
                let word = rng.word(&alpha, 8);
                assert_eq!(d.eval_word(&word), d.eval_word_recursive(&word));
            }
        }
    }

    #[test]
    fn product_rule_sampled() {
        let (alpha, q) = setup();
        let mut rng = Rng::new(9);
        for side in [Side::Left, Side::Right] {
            let gen_values = (0..alpha.rank())
                .map(|_| rng.elem(&alpha, q, 3, 4))
                .collect::<Vec<_>>();
            let d = Derivation::new(side, &alpha, q, gen_values).unwrap();
            let report = is_derivation(&d, 200, 17);
            assert!(report.passed, "{report}");
        }
    }

    #[test]
    fn coboundary_tables() {
        let (alpha, q) = setup();
        let one = RingElem::one(&alpha, q);
        let d = coboundary_derivation(&one, Side::Left);
        // left, c=1: D(g) = 1-g, so D(ab) = 1-ab
        assert_eq!(d.eval_word(&w(&alpha, "a*b")), elem(&alpha, "1 - a*b"));
        let d = coboundary_derivation(&one, Side::Right);
        assert_eq!(d.eval_word(&w(&alpha, "a*b")), elem(&alpha, "1 - a*b"));
        assert!(is_derivation(&d, 100, 23).passed);
        let zero = RingElem::zero(&alpha, q);
        let d = coboundary_derivation(&zero, Side::Left);
        for i in 0..alpha.rank() {
            assert!(d.gen_value(i).is_zero());
        }
    }

    #[test]
    fn coboundary_closed_form_matches_extension() {
        let (alpha, q) = setup();
        let mut rng = Rng::new(31);
        for side in [Side::Left, Side::Right] {
            let c = rng.elem(&alpha, q, 3, 4);
            let d = coboundary_derivation(&c, side);
            for _ in 0..50 {
                let g = rng.word(&alpha, 8);
                let one_minus_g = RingElem::one_minus(&g, q);
                let expect = match side {
                    Side::Left => one_minus_g.mul(&c).unwrap(),
                    Side::Right => c.mul(&one_minus_g).unwrap(),
                };
                assert_eq!(d.eval_word(&g), expect);
            }
        }
    }

    #[test]
    fn corrupted_evaluator_fails_law_check() {
        let (alpha, q) = setup();
        // An "extension engine" that drops the translation factor.
        let broken = |word: &Word| -> RingElem {
            if word.is_identity() {
                return RingElem::zero(&alpha, q);
            }
            RingElem::monomial(word.prefix(1), Scalar::one(q))
        };
        let report = check_derivation_law(broken, Side::Left, &alpha, 200, 7);
        assert!(!report.passed);
        assert!(report.counterexample.is_some());
    }
}
