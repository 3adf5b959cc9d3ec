//! Bar-complex coboundaries, the kappa 2-cocycle and quasi-derivations, and
//! the constructive maps of the seven-term exact sequence: cross product of
//! 1-cocycles, the mu contraction, and rho.
//!
//! Cochains are function-valued and checked pointwise on sampled tuples;
//! the groups are infinite, so there is no table form. Every module
//! descriptor declares a left action (applied at the front face of the
//! coboundary) and a right action (applied at the back face). Plain one-
//! sided modules declare the other action as trivial, which recovers the
//! classical one-sided bar differentials: degree-1 left cocycles are left
//! derivations, degree-1 right cocycles are right derivations.

use std::rc::Rc;
use std::sync::Arc;

use std::collections::BTreeMap;
use std::fmt;

use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::pairing::FoxPairing;
use crate::report::CheckReport;
use crate::ring::RingElem;
use crate::sampling::Rng;
use crate::scalar::{CoeffRing, Scalar};
use crate::words::{Alphabet, Word};

pub const MAX_COCHAIN_DEGREE: usize = 3;

pub type GroupMul<G> = Rc<dyn Fn(&G, &G) -> G>;
pub type ModAdd<M> = Rc<dyn Fn(&M, &M) -> M>;
pub type ModNeg<M> = Rc<dyn Fn(&M) -> M>;
pub type LeftAction<G, M> = Rc<dyn Fn(&G, &M) -> M>;
pub type RightAction<G, M> = Rc<dyn Fn(&M, &G) -> M>;
pub type CochainEval<G, M> = Rc<dyn Fn(&[G]) -> M>;

/// Group operations plus the module structure a cochain complex needs.
#[derive(Clone)]
pub struct CochainCtx<G, M> {
    pub mul: GroupMul<G>,
    pub add: ModAdd<M>,
    pub neg: ModNeg<M>,
    pub zero: M,
    /// Front-face action.
    pub left: LeftAction<G, M>,
    /// Back-face action.
    pub right: RightAction<G, M>,
}

/// A function-valued n-cochain.
#[derive(Clone)]
pub struct Cochain<G, M> {
    pub degree: usize,
    pub eval: CochainEval<G, M>,
}

impl<G, M> Cochain<G, M> {
    pub fn new(degree: usize, eval: impl Fn(&[G]) -> M + 'static) -> Cochain<G, M> {
        Cochain {
            degree,
            eval: Rc::new(eval),
        }
    }

    pub fn at(&self, args: &[G]) -> M {
        debug_assert_eq!(args.len(), self.degree);
        (self.eval)(args)
    }
}

/// Alternating-sum coboundary for the declared module actions:
/// the first argument acts through `left` on the front face, the last
/// through `right` on the back face, with merged-argument faces between.
pub fn coboundary<G: Clone + 'static, M: Clone + 'static>(
    ctx: &CochainCtx<G, M>,
    c: &Cochain<G, M>,
) -> Result<Cochain<G, M>> {
    if c.degree > MAX_COCHAIN_DEGREE {
        return Err(Error::DimensionMismatch {
            expected: MAX_COCHAIN_DEGREE,
            got: c.degree,
        });
    }
    let n = c.degree;
    let ctx = ctx.clone();
    let inner = Rc::clone(&c.eval);
    Ok(Cochain::new(n + 1, move |args: &[G]| {
        debug_assert_eq!(args.len(), n + 1);
        let mut acc = (ctx.left)(&args[0], &inner(&args[1..]));
        for i in 1..=n {
            let mut merged: Vec<G> = Vec::with_capacity(n);
            merged.extend_from_slice(&args[..i - 1]);
            merged.push((ctx.mul)(&args[i - 1], &args[i]));
            merged.extend_from_slice(&args[i + 1..]);
            let face = inner(&merged);
            acc = if i % 2 == 1 {
                (ctx.add)(&acc, &(ctx.neg)(&face))
            } else {
                (ctx.add)(&acc, &face)
            };
        }
        let back = (ctx.right)(&inner(&args[..n]), &args[n]);
        if (n + 1) % 2 == 1 {
            (ctx.add)(&acc, &(ctx.neg)(&back))
        } else {
            (ctx.add)(&acc, &back)
        }
    }))
}

// ---------------------------------------------------------------------------
// Concrete module descriptors.

pub type WordCtx = CochainCtx<Word, RingElem>;
pub type PairWord = (Word, Word);

fn base_word_ctx(
    alphabet: &Arc<Alphabet>,
    ring: CoeffRing,
    left: impl Fn(&Word, &RingElem) -> RingElem + 'static,
    right: impl Fn(&RingElem, &Word) -> RingElem + 'static,
) -> WordCtx {
    CochainCtx {
        mul: Rc::new(|g: &Word, h: &Word| g.concat(h)),
        add: Rc::new(|a: &RingElem, b: &RingElem| a.add(b).unwrap()),
        neg: Rc::new(|a: &RingElem| a.neg()),
        zero: RingElem::zero(alphabet, ring),
        left: Rc::new(left),
        right: Rc::new(right),
    }
}

/// K[G] with left multiplication; trivial right action.
pub fn plain_left_ctx(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> WordCtx {
    base_word_ctx(alphabet, ring, |g, m| m.mul_word_left(g), |m, _| m.clone())
}

/// K[G] with right multiplication; trivial left action.
pub fn plain_right_ctx(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> WordCtx {
    base_word_ctx(alphabet, ring, |_, m| m.clone(), |m, g| m.mul_word_right(g))
}

/// K[G] with the conjugation action g m g^-1; trivial right action.
pub fn conjugation_ctx(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> WordCtx {
    base_word_ctx(
        alphabet,
        ring,
        |g, m| m.mul_word_left(g).mul_word_right(&g.inverse()),
        |m, _| m.clone(),
    )
}

/// A finitely supported element of K[G] (x) K[G], canonically ordered by
/// the double-shortlex order on word pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElem {
    alphabet: Arc<Alphabet>,
    ring: CoeffRing,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElem {
    pub fn zero(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> TensorElem {
        TensorElem {
            alphabet: Arc::clone(alphabet),
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, g: Word, h: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((g, h)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Outer product x (x) y of two ring elements.
    pub fn outer(x: &RingElem, y: &RingElem) -> TensorElem {
        let mut out = TensorElem::zero(x.alphabet(), x.ring());
        for (g, a) in x.terms() {
            for (h, b) in y.terms() {
                out.insert(g.clone(), h.clone(), a.mul(b));
            }
        }
        out
    }

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        for ((g, h), c) in other.terms.iter() {
            out.insert(g.clone(), h.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> TensorElem {
        let mut out = TensorElem::zero(&self.alphabet, self.ring);
        for ((g, h), c) in self.terms.iter() {
            out.insert(g.clone(), h.clone(), c.neg());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    /// Slot-1 left multiplication.
    pub fn act_left_slot1(&self, g: &Word) -> TensorElem {
        let mut out = TensorElem::zero(&self.alphabet, self.ring);
        for ((a, b), c) in self.terms.iter() {
            out.insert(g.concat(a), b.clone(), c.clone());
        }
        out
    }

    /// Slot-2 left multiplication by the inverse, the right action of the
    /// second factor group.
    pub fn act_right_slot2(&self, h: &Word) -> TensorElem {
        let hinv = h.inverse();
        let mut out = TensorElem::zero(&self.alphabet, self.ring);
        for ((a, b), c) in self.terms.iter() {
            out.insert(a.clone(), hinv.concat(b), c.clone());
        }
        out
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((g, h), c) in self.terms.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{g}(x){h}")?;
            } else {
                write!(f, "{c} {g}(x){h}")?;
            }
        }
        Ok(())
    }
}

pub type TensorCtx = CochainCtx<PairWord, TensorElem>;

/// The tensor-square module over G2 x G1: the G2 part multiplies the first
/// slot from the left, the G1 part acts on the second slot through the
/// inverse (the reading of the tensor-module action that makes the mu
/// contraction equivariant).
pub fn tensor_ctx(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> TensorCtx {
    CochainCtx {
        mul: Rc::new(|g: &PairWord, h: &PairWord| (g.0.concat(&h.0), g.1.concat(&h.1))),
        add: Rc::new(|a: &TensorElem, b: &TensorElem| a.add(b)),
        neg: Rc::new(|a: &TensorElem| a.neg()),
        zero: TensorElem::zero(alphabet, ring),
        left: Rc::new(|g: &PairWord, m: &TensorElem| m.act_left_slot1(&g.0)),
        right: Rc::new(|m: &TensorElem, g: &PairWord| m.act_right_slot2(&g.1)),
    }
}

pub type PairCtx = CochainCtx<PairWord, RingElem>;

/// K[G] as a module over G2 x G1: the G2 part multiplies on the left, the
/// G1 part on the right.
pub fn kg_pair_ctx(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> PairCtx {
    CochainCtx {
        mul: Rc::new(|g: &PairWord, h: &PairWord| (g.0.concat(&h.0), g.1.concat(&h.1))),
        add: Rc::new(|a: &RingElem, b: &RingElem| a.add(b).unwrap()),
        neg: Rc::new(|a: &RingElem| a.neg()),
        zero: RingElem::zero(alphabet, ring),
        left: Rc::new(|g: &PairWord, m: &RingElem| m.mul_word_left(&g.0)),
        right: Rc::new(|m: &RingElem, g: &PairWord| m.mul_word_right(&g.1)),
    }
}

// ---------------------------------------------------------------------------
// kappa and quasi-derivations.

/// The 2-cochain kappa(g, h) = eta(g, h) h^-1 g^-1, a cocycle in the
/// conjugation module for every Fox pairing.
pub fn kappa_from_pairing(p: &FoxPairing) -> Cochain<Word, RingElem> {
    let p = p.clone();
    Cochain::new(2, move |args: &[Word]| {
        let tail = args[1].inverse().concat(&args[0].inverse());
        p.eval_words(&args[0], &args[1]).mul_word_right(&tail)
    })
}

/// A quasi-derivation ruled by a pairing: q(ab) = q(a) b + a q(b) + eta(a, b),
/// extended from generator values with q(1) = 0 and the forced inverse rule.
pub struct QuasiDerivation {
    pairing: FoxPairing,
    gen_values: Vec<RingElem>,
}

impl QuasiDerivation {
    pub fn eval_word(&self, w: &Word) -> RingElem {
        let alphabet = self.pairing.alphabet();
        let ring = self.pairing.ring();
        if w.is_identity() {
            return RingElem::zero(alphabet, ring);
        }
        let mut prefix = Word::identity(alphabet);
        let mut acc = RingElem::zero(alphabet, ring);
        for l in w.letters() {
            let gen = l.gen as usize;
            let y = Word::gen_pow(alphabet, gen, if l.inv { -1 } else { 1 });
            let qy = if l.inv {
                // 0 = q(x x^-1) forces q(x^-1) = x^-1 (-q(x) x^-1 - eta(x, x^-1)).
                let x = Word::gen(alphabet, gen);
                let xinv = y.clone();
                let inner = self.gen_values[gen]
                    .mul_word_right(&xinv)
                    .add(&self.pairing.eval_words(&x, &xinv))
                    .unwrap()
                    .neg();
                inner.mul_word_left(&xinv)
            } else {
                self.gen_values[gen].clone()
            };
            // q(prefix y) = q(prefix) y + prefix q(y) + eta(prefix, y)
            acc = acc
                .mul_word_right(&y)
                .add(&qy.mul_word_left(&prefix))
                .unwrap()
                .add(&self.pairing.eval_words(&prefix, &y))
                .unwrap();
            prefix = prefix.concat(&y);
        }
        acc
    }
}

/// Extends generator values to a quasi-derivation and reports the sampled
/// verification of the defining law on word pairs.
pub fn quasi_derivation_extend(
    p: &FoxPairing,
    gen_values: Vec<RingElem>,
    samples: usize,
    seed: u64,
) -> Result<(QuasiDerivation, CheckReport)> {
    if gen_values.len() != p.rank() {
        return Err(Error::DimensionMismatch {
            expected: p.rank(),
            got: gen_values.len(),
        });
    }
    for v in &gen_values {
        if v.ring() != p.ring() {
            return Err(Error::RingMismatch);
        }
        if v.alphabet() != p.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
    }
    let q = QuasiDerivation {
        pairing: p.clone(),
        gen_values,
    };
    let alphabet = Arc::clone(p.alphabet());
    let mut rng = Rng::new(seed);
    let mut report = CheckReport::pass("quasi-derivation-law", samples, seed);
    for k in 0..samples {
        let a = rng.word(&alphabet, 6);
        let b = rng.word(&alphabet, 6);
        let lhs = q.eval_word(&a.concat(&b));
        let rhs = q
            .eval_word(&a)
            .mul_word_right(&b)
            .add(&q.eval_word(&b).mul_word_left(&a))
            .unwrap()
            .add(&q.pairing.eval_words(&a, &b))
            .unwrap();
        if lhs != rhs {
            report = CheckReport::fail(
                "quasi-derivation-law",
                samples,
                seed,
                format!("sample {k}: a={a} b={b} q(ab)={lhs} law-rhs={rhs}"),
            );
            break;
        }
    }
    Ok((q, report))
}

// ---------------------------------------------------------------------------
// Seven-term-sequence maps: cross product, mu, rho.

/// Degree-1 plain cochain carrying a derivation.
pub fn derivation_cochain(d: &Derivation) -> Cochain<Word, RingElem> {
    let d = d.clone();
    Cochain::new(1, move |args: &[Word]| d.eval_word(&args[0]))
}

/// Sampled cocycle test for a degree-1 cochain in a word context.
pub fn check_cocycle_deg1(
    ctx: &WordCtx,
    c: &Cochain<Word, RingElem>,
    alphabet: &Arc<Alphabet>,
    samples: usize,
    seed: u64,
) -> CheckReport {
    let delta = coboundary(ctx, c).unwrap();
    let mut rng = Rng::new(seed);
    for k in 0..samples {
        let g = rng.word(alphabet, 6);
        let h = rng.word(alphabet, 6);
        let v = delta.at(&[g.clone(), h.clone()]);
        if !v.is_zero() {
            return CheckReport::fail(
                "cocycle-deg1",
                samples,
                seed,
                format!("sample {k}: g={g} h={h} delta={v}"),
            );
        }
    }
    CheckReport::pass("cocycle-deg1", samples, seed)
}

/// Cross product of a left 1-cocycle on G2 and a right 1-cocycle on G1,
/// valued in the tensor-square module over G2 x G1:
///
/// ```text
///     (u x v)((x1, y1), (x2, y2)) = u(x1) (x) involute(v(y2)).
/// ```
///
/// The second factor enters through the bar involution; with the declared
/// tensor-module actions this is a 2-cocycle whenever u satisfies the left
/// derivation law and v the right one, and it is the convention under which
/// rho of the mu contraction reproduces the derivation-product pairing
/// exactly. Inputs are sampled for their cocycle laws first.
pub fn cross_product_1_1(
    u: &Cochain<Word, RingElem>,
    v: &Cochain<Word, RingElem>,
    alphabet: &Arc<Alphabet>,
    ring: CoeffRing,
    samples: usize,
    seed: u64,
) -> Result<Cochain<PairWord, TensorElem>> {
    let left_check =
        check_cocycle_deg1(&plain_left_ctx(alphabet, ring), u, alphabet, samples, seed);
    if !left_check.passed {
        return Err(Error::NoSolution(format!(
            "u is not a sampled left cocycle: {left_check}"
        )));
    }
    let right_check =
        check_cocycle_deg1(&plain_right_ctx(alphabet, ring), v, alphabet, samples, seed);
    if !right_check.passed {
        return Err(Error::NoSolution(format!(
            "v is not a sampled right cocycle: {right_check}"
        )));
    }
    let u = u.clone();
    let v = v.clone();
    Ok(Cochain::new(2, move |args: &[PairWord]| {
        let ux = u.at(std::slice::from_ref(&args[0].0));
        let vy = v.at(std::slice::from_ref(&args[1].1)).involute();
        TensorElem::outer(&ux, &vy)
    }))
}

/// The contraction mu: K[G] (x) K[G] -> K[G], g (x) h -> g h^-1, extended
/// linearly.
pub fn mu_contract(t: &TensorElem) -> RingElem {
    let mut out = RingElem::zero(&t.alphabet, t.ring);
    for ((g, h), c) in t.terms.iter() {
        out = out
            .add(&RingElem::monomial(g.concat(&h.inverse()), c.clone()))
            .unwrap();
    }
    out
}

/// Post-composition of a tensor-valued pair cochain with mu.
pub fn compose_mu(f: &Cochain<PairWord, TensorElem>) -> Cochain<PairWord, RingElem> {
    let inner = Rc::clone(&f.eval);
    Cochain::new(f.degree, move |args: &[PairWord]| mu_contract(&inner(args)))
}

/// The rho map of the seven-term sequence, specialised to a K[G]-valued
/// 2-cochain f on G2 x G1 and a degree-1 correction q with
/// delta(q)(a, b) = f((1, a), (1, b)):
///
/// ```text
///     rho_f(a, b) = f((a,1),(1,b)) - f((1,b),(a,1)) + q(a)(1 - b^-1) + (1 - a) q(b).
/// ```
pub struct RhoPairing {
    f: Cochain<PairWord, RingElem>,
    q: Cochain<Word, RingElem>,
    alphabet: Arc<Alphabet>,
    ring: CoeffRing,
}

impl RhoPairing {
    pub fn eval_words(&self, a: &Word, b: &Word) -> RingElem {
        let id = Word::identity(&self.alphabet);
        let first = self
            .f
            .at(&[(a.clone(), id.clone()), (id.clone(), b.clone())]);
        let second = self
            .f
            .at(&[(id.clone(), b.clone()), (a.clone(), id.clone())]);
        let qa = self.q.at(std::slice::from_ref(a));
        let qb = self.q.at(std::slice::from_ref(b));
        let one_minus_binv = RingElem::one_minus(&b.inverse(), self.ring);
        let one_minus_a = RingElem::one_minus(a, self.ring);
        first
            .sub(&second)
            .unwrap()
            .add(&qa.mul(&one_minus_binv).unwrap())
            .unwrap()
            .add(&one_minus_a.mul(&qb).unwrap())
            .unwrap()
    }

    /// Generator-matrix form, evaluable by the pairing engine.
    pub fn materialize(&self) -> FoxPairing {
        let r = self.alphabet.rank();
        let mut p = FoxPairing::zero(&self.alphabet, self.ring);
        for i in 0..r {
            for j in 0..r {
                let v =
                    self.eval_words(&Word::gen(&self.alphabet, i), &Word::gen(&self.alphabet, j));
                p.set_entry(i, j, v);
            }
        }
        p
    }
}

/// Builds the rho evaluator after checking the side condition
/// `delta^1(q)(a, b) = f((1,a),(1,b))` on sampled pairs. In the restriction
/// to {1} x G1 the front action is trivial and the back action is right
/// multiplication, so the side condition reads
/// `q(b) - q(ab) + q(a) b = f((1,a),(1,b))`.
pub fn rho_map(
    f: &Cochain<PairWord, RingElem>,
    q: &Cochain<Word, RingElem>,
    alphabet: &Arc<Alphabet>,
    ring: CoeffRing,
    samples: usize,
    seed: u64,
) -> Result<RhoPairing> {
    let id = Word::identity(alphabet);
    let mut rng = Rng::new(seed);
    for k in 0..samples {
        let a = rng.word(alphabet, 6);
        let b = rng.word(alphabet, 6);
        let lhs = q
            .at(std::slice::from_ref(&b))
            .sub(&q.at(std::slice::from_ref(&a.concat(&b))))
            .unwrap()
            .add(&q.at(std::slice::from_ref(&a)).mul_word_right(&b))
            .unwrap();
        let rhs = f.at(&[(id.clone(), a.clone()), (id.clone(), b.clone())]);
        if lhs != rhs {
            return Err(Error::NoSolution(format!(
                "rho side condition failed at sample {k}: a={a} b={b}"
            )));
        }
    }
    Ok(RhoPairing {
        f: f.clone(),
        q: q.clone(),
        alphabet: Arc::clone(alphabet),
        ring,
    })
}

/// The zero degree-1 cochain.
pub fn zero_cochain_deg1(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> Cochain<Word, RingElem> {
    let zero = RingElem::zero(alphabet, ring);
    Cochain::new(1, move |_args: &[Word]| zero.clone())
}
