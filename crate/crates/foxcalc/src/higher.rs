//! The Z^n higher Fox pairing in the Laurent ring K[t1^±1, ..., tn^±1].
//!
//! The building blocks are the factor derivations D_i with
//! D_i(t_i^l) = 1 + t_i + ... + t_i^{l-1} for l >= 0 and the law-forced
//! negative branch D_i(t_i^l) = -(t_i^-1 + ... + t_i^l) for l < 0; each D_i
//! is the unique derivation of the i-th cyclic factor with D_i(t_j) =
//! delta_ij. The type-(n, n) pairing evaluates as a product of one left and
//! one right Kuenneth representative,
//!
//! ```text
//!     eta(a, b) = Phi(a) * Psi(b),
//! ```
//!
//! where Phi crosses D_1, ..., D_n with front translations (an exact
//! n-cocycle for the left differential in every slot configuration) and Psi
//! is the argument-reversed mirror (an exact n-cocycle for the right
//! differential). Diagonal exponents drive the D_k factors in both slots.

use std::rc::Rc;
use std::sync::Arc;

use crate::cohomology::{coboundary, plain_left_ctx, plain_right_ctx, Cochain};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::ring::RingElem;
use crate::sampling::Rng;
use crate::scalar::{CoeffRing, Scalar};
use crate::words::{Alphabet, Word};

/// Geometric-sum value of the factor derivation on a pure power:
/// `D(t^l)` in the one-variable Laurent ring, placed at variable `i`.
fn power_sum(alphabet: &Arc<Alphabet>, ring: CoeffRing, i: usize, l: i64) -> RingElem {
    let mut out = RingElem::zero(alphabet, ring);
    if l >= 0 {
        for k in 0..l {
            out = out
                .add(&RingElem::from_word(Word::gen_pow(alphabet, i, k), ring))
                .unwrap();
        }
    } else {
        for k in 1..=(-l) {
            out = out
                .sub(&RingElem::from_word(Word::gen_pow(alphabet, i, -k), ring))
                .unwrap();
        }
    }
    out
}

/// The derivation D_i on a single monomial. The value on the t_i-power is
/// the geometric sum above; the variables before i ride along as the prefix
/// factor forced by the left law under the canonical variable ordering.
fn laurent_derivation_monomial(i: usize, m: &Word, ring: CoeffRing) -> RingElem {
    let alphabet = m.alphabet();
    let exps = m.exponents();
    let core = power_sum(alphabet, ring, i, exps[i]);
    if core.is_zero() {
        return core;
    }
    let mut prefix = vec![0i64; alphabet.rank()];
    for (j, &e) in exps.iter().enumerate().take(i) {
        prefix[j] = e;
    }
    core.mul_word_left(&Word::from_exponents(alphabet, prefix))
}

/// Linear extension of D_i to the Laurent ring.
pub fn laurent_derivation(i: usize, x: &RingElem) -> Result<RingElem> {
    let alphabet = x.alphabet();
    if !alphabet.is_abelian() {
        return Err(Error::RegimeMismatch {
            expected: "abelian",
        });
    }
    if i >= alphabet.rank() {
        return Err(Error::DimensionMismatch {
            expected: alphabet.rank(),
            got: i,
        });
    }
    let mut out = RingElem::zero(alphabet, x.ring());
    for (w, c) in x.terms() {
        out = out
            .add(&laurent_derivation_monomial(i, w, x.ring()).scale(c))
            .unwrap();
    }
    Ok(out)
}

/// Left Kuenneth representative on an n-tuple of monomials:
/// `Phi(g_1..g_n) = prod_k D_k(t_k^{e_k(g_k)}) * prod_k t_k^{e_k(g_1...g_{k-1})}`.
fn phi_left(tuple: &[Word], ring: CoeffRing) -> RingElem {
    let alphabet = tuple[0].alphabet();
    let mut out = RingElem::one(alphabet, ring);
    let mut translate = vec![0i64; alphabet.rank()];
    for (k, g) in tuple.iter().enumerate() {
        let diag = g.exponents()[k];
        let factor = power_sum(alphabet, ring, k, diag);
        if factor.is_zero() {
            return RingElem::zero(alphabet, ring);
        }
        out = out.mul(&factor).unwrap();
        if k > 0 {
            let mut shift = vec![0i64; alphabet.rank()];
            shift[k] = translate[k];
            out = out.mul_word_left(&Word::from_exponents(alphabet, shift));
        }
        for (j, e) in translate.iter_mut().enumerate() {
            *e += g.exponents()[j];
        }
    }
    out
}

/// Right mirror: `Psi(g_1..g_n) = prod_k D_k(t_k^{e_k(g_k)}) *
/// prod_k t_k^{e_k(g_{k+1}...g_n)}`.
fn psi_right(tuple: &[Word], ring: CoeffRing) -> RingElem {
    let alphabet = tuple[0].alphabet();
    let mut out = RingElem::one(alphabet, ring);
    let mut suffix = vec![0i64; alphabet.rank()];
    for (k, g) in tuple.iter().enumerate().rev() {
        let diag = g.exponents()[k];
        let factor = power_sum(alphabet, ring, k, diag);
        if factor.is_zero() {
            return RingElem::zero(alphabet, ring);
        }
        out = out.mul(&factor).unwrap();
        let mut shift = vec![0i64; alphabet.rank()];
        shift[k] = suffix[k];
        out = out.mul_word_left(&Word::from_exponents(alphabet, shift));
        for (j, e) in suffix.iter_mut().enumerate() {
            *e += g.exponents()[j];
        }
    }
    out
}

/// The type-(n, n) higher pairing on monomial tuples, extended
/// K-multilinearly per slot entry over sums of monomials.
pub fn higher_eta_zn(
    n: usize,
    a: &[RingElem],
    b: &[RingElem],
    ring: CoeffRing,
) -> Result<RingElem> {
    if a.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.len().max(b.len()),
        });
    }
    let alphabet = a[0].alphabet();
    if !alphabet.is_abelian() || alphabet.rank() != n {
        return Err(Error::RegimeMismatch {
            expected: "abelian rank n",
        });
    }
    let mut out = RingElem::zero(alphabet, ring);
    expand_multilinear(a, &mut Vec::new(), &Scalar::one(ring), &mut |aw, ca| {
        expand_multilinear(b, &mut Vec::new(), ca, &mut |bw, c| {
            let value = phi_left(aw, ring).mul(&psi_right(bw, ring)).unwrap();
            out = out.add(&value.scale(c)).unwrap();
        });
    });
    Ok(out)
}

fn expand_multilinear<'a>(
    slots: &'a [RingElem],
    acc: &mut Vec<&'a Word>,
    coeff: &Scalar,
    f: &mut impl FnMut(&[Word], &Scalar),
) {
    if acc.len() == slots.len() {
        let words: Vec<Word> = acc.iter().map(|w| (*w).clone()).collect();
        f(&words, coeff);
        return;
    }
    let idx = acc.len();
    for (w, c) in slots[idx].terms() {
        acc.push(w);
        expand_multilinear(slots, acc, &coeff.mul(c), f);
        acc.pop();
    }
}

pub type HigherEval = dyn Fn(&[Word], &[Word]) -> RingElem;

/// A higher pairing packaged with its evaluator, so corrupted fixtures can
/// be built in tests.
pub struct HigherPairing {
    pub n: usize,
    pub ring: CoeffRing,
    pub alphabet: Arc<Alphabet>,
    eval: Rc<HigherEval>,
}

impl HigherPairing {
    /// The Z^n pairing above.
    pub fn zn(n: usize, ring: CoeffRing) -> HigherPairing {
        HigherPairing {
            n,
            ring,
            alphabet: Alphabet::abelian(n),
            eval: Rc::new(move |a: &[Word], b: &[Word]| {
                phi_left(a, ring).mul(&psi_right(b, ring)).unwrap()
            }),
        }
    }

    pub fn from_evaluator(
        n: usize,
        ring: CoeffRing,
        alphabet: &Arc<Alphabet>,
        eval: impl Fn(&[Word], &[Word]) -> RingElem + 'static,
    ) -> HigherPairing {
        HigherPairing {
            n,
            ring,
            alphabet: Arc::clone(alphabet),
            eval: Rc::new(eval),
        }
    }

    pub fn eval_monomials(&self, a: &[Word], b: &[Word]) -> RingElem {
        (self.eval)(a, b)
    }
}

/// Sampled cocycle verification per the higher-pairing definition: for
/// sampled fixed tuples in the other slot, the left evaluation must vanish
/// under the degree-n left coboundary and the right evaluation under the
/// right coboundary (both with plain multiplication actions, which at n = 1
/// degenerate to the two original pairing axioms).
pub fn check_higher_cocycle(hp: &HigherPairing, samples: usize, seed: u64) -> CheckReport {
    if hp.n > 3 {
        return CheckReport::fail("higher-cocycle", samples, seed, "n > 3 unsupported".into());
    }
    let mut rng = Rng::new(seed);
    let alphabet = &hp.alphabet;
    let n = hp.n;
    let bound = 2;

    for k in 0..samples {
        // Left evaluation at a fixed b-tuple: an n-cochain in the first slot.
        let fixed_b: Vec<Word> = (0..n).map(|_| rng.monomial_zn(alphabet, bound)).collect();
        let eval = Rc::clone(&hp.eval);
        let fb = fixed_b.clone();
        let left_eval = Cochain::new(n, move |args: &[Word]| eval(args, &fb));
        let delta = coboundary(&plain_left_ctx(alphabet, hp.ring), &left_eval).unwrap();
        let tuple: Vec<Word> = (0..=n).map(|_| rng.monomial_zn(alphabet, bound)).collect();
        let v = delta.at(&tuple);
        if !v.is_zero() {
            return CheckReport::fail(
                "higher-cocycle-left",
                samples,
                seed,
                format!("sample {k}: tuple={tuple:?} delta={v}"),
            );
        }

        // Right evaluation at a fixed a-tuple.
        let fixed_a: Vec<Word> = (0..n).map(|_| rng.monomial_zn(alphabet, bound)).collect();
        let eval = Rc::clone(&hp.eval);
        let fa = fixed_a.clone();
        let right_eval = Cochain::new(n, move |args: &[Word]| eval(&fa, args));
        let delta = coboundary(&plain_right_ctx(alphabet, hp.ring), &right_eval).unwrap();
        let tuple: Vec<Word> = (0..=n).map(|_| rng.monomial_zn(alphabet, bound)).collect();
        let v = delta.at(&tuple);
        if !v.is_zero() {
            return CheckReport::fail(
                "higher-cocycle-right",
                samples,
                seed,
                format!("sample {k}: tuple={tuple:?} delta={v}"),
            );
        }
    }
    CheckReport::pass("higher-cocycle", samples, seed)
}
