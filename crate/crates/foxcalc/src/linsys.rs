//! Word-indexed exact linear systems of the form
//! `sum_i  A_i * u_i = rhs`, where the `A_i` are fixed ring elements acting
//! by left multiplication and the unknowns `u_i` range over elements
//! supported on reduced words of bounded length.
//!
//! Unknown columns are ordered shortlex on the support word first, then by
//! operator index; equations are indexed by the words reachable from the
//! support, in shortlex order. Both orders are total, so assembly and
//! elimination are reproducible bit for bit.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{eliminate, Eliminated};
use crate::ring::RingElem;
use crate::scalar::{CoeffRing, Scalar};
use crate::words::{Alphabet, Letter, Word};

/// All reduced words of length <= `max_len`, in shortlex order.
pub fn words_up_to(alphabet: &Arc<Alphabet>, max_len: usize) -> Vec<Word> {
    assert!(!alphabet.is_abelian());
    let rank = alphabet.rank();
    let mut out = vec![Word::identity(alphabet)];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next_layer = Vec::new();
        for prefix in &layer {
            for gen in 0..rank {
                for inv in [false, true] {
                    let l = Letter::new(gen, inv);
                    if prefix
                        .last()
                        .is_some_and(|&t| t.gen == l.gen && t.inv != l.inv)
                    {
                        continue;
                    }
                    let mut w = prefix.clone();
                    w.push(l);
                    next_layer.push(w);
                }
            }
        }
        for letters in &next_layer {
            out.push(Word::reduce(alphabet, letters));
        }
        layer = next_layer;
    }
    out
}

/// An assembled system, kept around for inspection and for re-solving with
/// different right-hand sides.
pub struct LeftMulSystem {
    pub alphabet: Arc<Alphabet>,
    pub ring: CoeffRing,
    pub nops: usize,
    /// Support words for each unknown, shortlex.
    pub support: Vec<Word>,
    /// Equation row index per word.
    pub row_of_word: BTreeMap<Word, usize>,
    pub entries: Vec<(usize, usize, BigInt)>,
    pub ncols: usize,
}

impl LeftMulSystem {
    /// Builds the coefficient matrix of `(u_i) -> sum_i A_i u_i` restricted
    /// to unknowns supported on words of length <= `support_len`, with
    /// equation rows for every word reachable from the support plus every
    /// word appearing in `extra_row_words` (so RHS words always have rows).
    pub fn assemble(
        ops: &[RingElem],
        support_len: usize,
        extra_row_words: &[Word],
    ) -> Result<LeftMulSystem> {
        let alphabet = ops.first().expect("at least one operator").alphabet();
        let support = words_up_to(alphabet, support_len);
        Self::assemble_with_support(ops, support, extra_row_words)
    }

    /// Same, with an explicit support set for the unknowns.
    pub fn assemble_with_support(
        ops: &[RingElem],
        mut support: Vec<Word>,
        extra_row_words: &[Word],
    ) -> Result<LeftMulSystem> {
        let first = ops.first().expect("at least one operator");
        let alphabet = Arc::clone(first.alphabet());
        let ring = first.ring();
        if !ring.is_field() {
            return Err(Error::FieldRequired);
        }
        if alphabet.is_abelian() {
            return Err(Error::RegimeMismatch { expected: "free" });
        }
        support.sort();
        support.dedup();
        let nops = ops.len();
        let ncols = support.len() * nops;

        // First pass: collect every word that can appear.
        let mut row_of_word: BTreeMap<Word, usize> = BTreeMap::new();
        for w in extra_row_words {
            row_of_word.entry(w.clone()).or_insert(0);
        }
        let mut products: Vec<Vec<(Word, BigInt)>> = Vec::with_capacity(ncols);
        for w in &support {
            for op in ops {
                let mut prod: Vec<(Word, BigInt)> = Vec::new();
                for (ow, oc) in op.terms() {
                    let target = ow.concat(w);
                    row_of_word.entry(target.clone()).or_insert(0);
                    prod.push((target, scalar_to_int(oc)));
                }
                products.push(prod);
            }
        }
        for (i, (_, idx)) in row_of_word.iter_mut().enumerate() {
            *idx = i;
        }

        let mut entries = Vec::new();
        for (col, prod) in products.iter().enumerate() {
            for (word, coeff) in prod {
                if coeff.is_zero() {
                    continue;
                }
                entries.push((row_of_word[word], col, coeff.clone()));
            }
        }

        Ok(LeftMulSystem {
            alphabet,
            ring,
            nops,
            support,
            row_of_word,
            entries,
            ncols,
        })
    }

    pub fn nrows(&self) -> usize {
        self.row_of_word.len()
    }

    /// Column index of unknown `(support word s, operator i)`.
    fn col(&self, word_idx: usize, op: usize) -> usize {
        word_idx * self.nops + op
    }

    /// RHS vector for `rhs` as extra columns, scaled integral per RHS;
    /// errors if some RHS word was not provisioned as a row. Returns the
    /// denominator-clearing factor applied to each RHS.
    fn rhs_entries(
        &self,
        rhs_list: &[RingElem],
        out: &mut Vec<(usize, usize, BigInt)>,
    ) -> Result<Vec<BigInt>> {
        let mut scales = Vec::with_capacity(rhs_list.len());
        for (k, rhs) in rhs_list.iter().enumerate() {
            let scale = common_denominator(rhs);
            for (w, c) in rhs.terms() {
                let row = self
                    .row_of_word
                    .get(w)
                    .ok_or_else(|| Error::NoSolution(format!("rhs word {w} unreachable")))?;
                out.push((*row, self.ncols + k, scaled_int(c, &scale)));
            }
            scales.push(scale);
        }
        Ok(scales)
    }

    /// Eliminates once and solves for every RHS. Returns per-RHS solutions
    /// (as one ring element per operator) and the homogeneous kernel
    /// dimension at this support bound.
    pub fn solve(&self, rhs_list: &[RingElem]) -> Result<(Vec<Option<Vec<RingElem>>>, usize)> {
        let mut entries = self.entries.clone();
        let scales = self.rhs_entries(rhs_list, &mut entries)?;
        let ech = eliminate(
            self.ring,
            self.nrows(),
            self.ncols,
            rhs_list.len(),
            &entries,
        );
        let kernel = ech.kernel_dim();
        let mut solutions = Vec::with_capacity(rhs_list.len());
        for (k, scale) in scales.iter().enumerate() {
            let sol = self.extract(&ech, self.ncols + k).map(|cols| {
                let unscale = match self.ring {
                    CoeffRing::Rational => Scalar::Rat(num_rational::BigRational::new(
                        BigInt::from(1),
                        scale.clone(),
                    )),
                    _ => Scalar::one(self.ring),
                };
                cols.into_iter().map(|e| e.scale(&unscale)).collect()
            });
            solutions.push(sol);
        }
        Ok((solutions, kernel))
    }

    /// Kernel dimension of the homogeneous system.
    pub fn kernel_dim(&self) -> usize {
        eliminate(self.ring, self.nrows(), self.ncols, 0, &self.entries).kernel_dim()
    }

    fn extract(&self, ech: &Eliminated, rhs_col: usize) -> Option<Vec<RingElem>> {
        let xs = ech.solve_rhs(rhs_col)?;
        let mut out = vec![RingElem::zero(&self.alphabet, self.ring); self.nops];
        for (widx, w) in self.support.iter().enumerate() {
            for op in 0..self.nops {
                let v = &xs[self.col(widx, op)];
                if v.is_zero() {
                    continue;
                }
                out[op] = out[op]
                    .add(&RingElem::monomial(w.clone(), v.clone()))
                    .unwrap();
            }
        }
        Some(out)
    }
}

fn scalar_to_int(s: &Scalar) -> BigInt {
    match s {
        Scalar::Int(i) => i.clone(),
        Scalar::F2(b) => BigInt::from(*b),
        Scalar::Rat(r) => {
            assert!(
                r.denom().eq(&BigInt::from(1)),
                "system operators must have integer coefficients"
            );
            r.numer().clone()
        }
    }
}

/// Least common multiple of the denominators of a rational element; 1 for
/// the other rings.
fn common_denominator(x: &RingElem) -> BigInt {
    let mut lcm = BigInt::from(1);
    for (_, c) in x.terms() {
        if let Scalar::Rat(r) = c {
            let d = r.denom();
            let g = gcd(&lcm, d);
            lcm = lcm / &g * d;
        }
    }
    lcm
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    use num_traits::Signed;
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn scaled_int(s: &Scalar, scale: &BigInt) -> BigInt {
    match s {
        Scalar::Int(i) => i * scale,
        Scalar::F2(b) => BigInt::from(*b),
        Scalar::Rat(r) => r.numer() * scale / r.denom(),
    }
}

/// Exact bounded-support divisibility: finds `u` supported on words of
/// length <= `support_len` with `d * u = value`, if one exists.
pub fn divide_left_bounded(
    d: &RingElem,
    value: &RingElem,
    support_len: usize,
) -> Result<Option<RingElem>> {
    if value.is_zero() {
        return Ok(Some(RingElem::zero(d.alphabet(), d.ring())));
    }
    let rhs_words: Vec<Word> = value.terms().map(|(w, _)| w.clone()).collect();
    let sys = LeftMulSystem::assemble(std::slice::from_ref(d), support_len, &rhs_words)?;
    let (mut sols, _) = sys.solve(std::slice::from_ref(value))?;
    Ok(sols.remove(0).map(|mut v| v.remove(0)))
}

/// Exact divisibility by `s - 1` for a nontrivial group element s: decides
/// whether `value` lies in `(s - 1) K[F]` and returns the (unique) quotient.
///
/// Writing the equation `(s - 1) u = value` coefficientwise gives
/// `u[s^-1 w] = u[w] + value[w]`, which decouples along the s-orbits
/// `{ s^k w }`. On each orbit the quotient is the tail sum of the value
/// coefficients, and divisibility holds exactly when every orbit sum
/// vanishes. Orbits are infinite (nontrivial elements of a free group have
/// infinite order), so the sweep is finite and complete with no support
/// bound at all.
pub fn divide_left_by_s_minus_one(s: &Word, value: &RingElem) -> Result<Option<RingElem>> {
    let ring = value.ring();
    let alphabet = value.alphabet();
    if alphabet.is_abelian() {
        return Err(Error::RegimeMismatch { expected: "free" });
    }
    if value.is_zero() {
        return Ok(Some(RingElem::zero(alphabet, ring)));
    }
    if s.is_identity() {
        return Ok(None);
    }

    // Group the value terms by s-orbit. The orbit key is the minimal
    // (length, shortlex) element of the orbit segment reachable before word
    // lengths grow monotonically; each term records its offset j with
    // w = s^j * key.
    let mut orbits: BTreeMap<Word, Vec<(i64, Scalar)>> = BTreeMap::new();
    for (w, c) in value.terms() {
        let (key, offset) = orbit_key(s, w);
        orbits.entry(key).or_default().push((offset, c.clone()));
    }

    let mut quotient = RingElem::zero(alphabet, ring);
    for (key, mut terms) in orbits {
        terms.sort_by_key(|(j, _)| *j);
        let total = terms
            .iter()
            .fold(Scalar::zero(ring), |acc, (_, c)| acc.add(c));
        if !total.is_zero() {
            return Ok(None);
        }
        // u[s^{j-1} key] = u[s^j key] + value[s^j key], vanishing above.
        let mut acc = Scalar::zero(ring);
        let mut idx = terms.len();
        let j_min = terms[0].0;
        let mut j = terms[terms.len() - 1].0;
        while j > j_min {
            while idx > 0 && terms[idx - 1].0 == j {
                idx -= 1;
                acc = acc.add(&terms[idx].1);
            }
            j -= 1;
            if !acc.is_zero() {
                let word = word_pow(s, j).concat(&key);
                quotient = quotient
                    .add(&RingElem::monomial(word, acc.clone()))
                    .unwrap();
            }
        }
    }
    debug_assert_eq!(
        {
            let one = RingElem::one(alphabet, ring);
            RingElem::from_word(s.clone(), ring)
                .sub(&one)
                .unwrap()
                .mul(&quotient)
                .unwrap()
        },
        *value
    );
    Ok(Some(quotient))
}

fn word_pow(s: &Word, k: i64) -> Word {
    let base = if k < 0 { s.inverse() } else { s.clone() };
    let mut out = Word::identity(s.alphabet());
    for _ in 0..k.unsigned_abs() {
        out = out.concat(&base);
    }
    out
}

/// Canonical representative of the orbit `{ s^k w }` and the offset of `w`
/// from it: the minimal (length, shortlex) element over the segment where
/// lengths have not yet entered their final monotone growth.
fn orbit_key(s: &Word, w: &Word) -> (Word, i64) {
    let limit = w.len() + 2 * s.len() + 2;
    let mut best = (w.clone(), 0i64);
    for dir in [1i64, -1i64] {
        let step = if dir == 1 { s.clone() } else { s.inverse() };
        let mut cur = w.clone();
        let mut k = 0i64;
        loop {
            cur = step.concat(&cur);
            k += dir;
            if cur.len() > limit {
                break;
            }
            if (cur.len(), &cur) < (best.0.len(), &best.0) {
                best = (cur.clone(), k);
            }
        }
    }
    let (key, key_offset) = best;
    // w = s^{-key_offset} * key, so the offset of w relative to key is
    // -key_offset.
    (key, -key_offset)
}
