//! Exact sparse arithmetic in the group ring K[G].
//!
//! Elements are finitely supported maps from canonical words to nonzero
//! scalars. The term map is a `BTreeMap` keyed by shortlex order, so
//! iteration (and therefore printing) is canonical and deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{CoeffRing, Scalar};
use crate::words::{parse_word, Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElem {
    alphabet: Arc<Alphabet>,
    ring: CoeffRing,
    terms: BTreeMap<Word, Scalar>,
}

impl RingElem {
    pub fn zero(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> RingElem {
        RingElem {
            alphabet: Arc::clone(alphabet),
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> RingElem {
        Self::from_word(Word::identity(alphabet), ring)
    }

    /// The basis element `[w]` with coefficient 1.
    pub fn from_word(w: Word, ring: CoeffRing) -> RingElem {
        Self::monomial(w, Scalar::one(ring))
    }

    pub fn monomial(w: Word, coeff: Scalar) -> RingElem {
        let alphabet = Arc::clone(w.alphabet());
        let ring = coeff.ring();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(w, coeff);
        }
        RingElem {
            alphabet,
            ring,
            terms,
        }
    }

    /// The generator `x_i` as a ring element.
    pub fn gen(alphabet: &Arc<Alphabet>, ring: CoeffRing, i: usize) -> RingElem {
        Self::from_word(Word::gen(alphabet, i), ring)
    }

    /// `1 - x` for a group element x.
    pub fn one_minus(w: &Word, ring: CoeffRing) -> RingElem {
        let one = RingElem::one(w.alphabet(), ring);
        one.sub(&RingElem::from_word(w.clone(), ring)).unwrap()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in shortlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ring))
    }

    /// Longest word in the support, or 0 for the zero element.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    fn compatible(&self, other: &RingElem) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if !(Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    fn insert_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &RingElem) -> Result<RingElem> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms.iter() {
            out.insert_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElem {
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.neg()))
            .collect();
        RingElem {
            alphabet: Arc::clone(&self.alphabet),
            ring: self.ring,
            terms,
        }
    }

    pub fn scale(&self, k: &Scalar) -> RingElem {
        assert_eq!(k.ring(), self.ring, "scalar ring mismatch");
        if k.is_zero() {
            return RingElem::zero(&self.alphabet, self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c.mul(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        RingElem {
            alphabet: Arc::clone(&self.alphabet),
            ring: self.ring,
            terms,
        }
    }

    /// Convolution product over reduced word concatenation.
    pub fn mul(&self, other: &RingElem) -> Result<RingElem> {
        self.compatible(other)?;
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        for (u, a) in self.terms.iter() {
            for (v, b) in other.terms.iter() {
                out.insert_term(u.concat(v), a.mul(b));
            }
        }
        Ok(out)
    }

    /// Left-multiplication by a single group element.
    pub fn mul_word_left(&self, g: &Word) -> RingElem {
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        for (w, c) in self.terms.iter() {
            out.insert_term(g.concat(w), c.clone());
        }
        out
    }

    /// Right-multiplication by a single group element.
    pub fn mul_word_right(&self, g: &Word) -> RingElem {
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        for (w, c) in self.terms.iter() {
            out.insert_term(w.concat(g), c.clone());
        }
        out
    }

    /// Sum of all coefficients; a ring homomorphism K[G] -> K.
    pub fn augment(&self) -> Scalar {
        let mut s = Scalar::zero(self.ring);
        for c in self.terms.values() {
            s = s.add(c);
        }
        s
    }

    /// Bar involution: each basis word is replaced by its group inverse.
    pub fn involute(&self) -> RingElem {
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        for (w, c) in self.terms.iter() {
            out.insert_term(w.inverse(), c.clone());
        }
        out
    }
}

impl fmt::Display for RingElem {
    /// Canonical print: shortlex term order, signs pulled into the joiners,
    /// unit coefficients omitted, e.g. `1 - a*b^-1 + 3/2 b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag} {w}")?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical `RingElem` syntax: terms joined by `+`/`-`, each an
/// optional coefficient (integer or `p/q`) followed by an optional word.
pub fn parse_elem(text: &str, alphabet: &Arc<Alphabet>, ring: CoeffRing) -> Result<RingElem> {
    let mut out = RingElem::zero(alphabet, ring);
    let bytes = text.as_bytes();
    let mut pos = 0usize;

    skip_ws(bytes, &mut pos);
    if pos == bytes.len() {
        return Err(Error::Syntax {
            offset: 0,
            msg: "empty element".into(),
        });
    }

    let mut sign_neg = false;
    if bytes[pos] == b'-' {
        sign_neg = true;
        pos += 1;
    } else if bytes[pos] == b'+' {
        pos += 1;
    }

    loop {
        skip_ws(bytes, &mut pos);
        let (word, coeff) = parse_term(bytes, &mut pos, alphabet, ring)?;
        let coeff = if sign_neg { coeff.neg() } else { coeff };
        let term = RingElem::monomial(word, coeff);
        out = out.add(&term)?;

        skip_ws(bytes, &mut pos);
        if pos == bytes.len() {
            break;
        }
        match bytes[pos] {
            b'+' => sign_neg = false,
            b'-' => sign_neg = true,
            _ => {
                return Err(Error::Syntax {
                    offset: pos,
                    msg: "expected `+` or `-` between terms".into(),
                })
            }
        }
        pos += 1;
    }
    Ok(out)
}

fn parse_term(
    bytes: &[u8],
    pos: &mut usize,
    alphabet: &Arc<Alphabet>,
    ring: CoeffRing,
) -> Result<(Word, Scalar)> {
    skip_ws(bytes, pos);
    if *pos >= bytes.len() {
        return Err(Error::Syntax {
            offset: *pos,
            msg: "expected a term".into(),
        });
    }

    let mut coeff = Scalar::one(ring);
    let mut saw_coeff = false;

    if bytes[*pos].is_ascii_digit() {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let mut num_text = std::str::from_utf8(&bytes[start..*pos])
            .unwrap()
            .to_string();
        // Lookahead for a denominator.
        let mut p = *pos;
        skip_ws(bytes, &mut p);
        if p < bytes.len() && bytes[p] == b'/' {
            p += 1;
            skip_ws(bytes, &mut p);
            let dstart = p;
            while p < bytes.len() && bytes[p].is_ascii_digit() {
                p += 1;
            }
            if p == dstart {
                return Err(Error::Syntax {
                    offset: dstart,
                    msg: "expected denominator".into(),
                });
            }
            num_text.push('/');
            num_text.push_str(std::str::from_utf8(&bytes[dstart..p]).unwrap());
            *pos = p;
        }
        coeff = Scalar::parse(ring, &num_text)?;
        saw_coeff = true;
        skip_ws(bytes, pos);
    }

    // A following word is optional after an explicit coefficient. Note that a
    // bare `1` was consumed above as the coefficient 1 of the identity word.
    let word_start = *pos;
    let mut depth_end = *pos;
    let mut prev_meaningful = 0u8;
    while depth_end < bytes.len() {
        let c = bytes[depth_end];
        // A sign right after `^` belongs to an exponent, not to the next term.
        if (c == b'+' || c == b'-') && prev_meaningful != b'^' {
            break;
        }
        if !c.is_ascii_whitespace() {
            prev_meaningful = c;
        }
        depth_end += 1;
    }
    let word_text = std::str::from_utf8(&bytes[word_start..depth_end])
        .unwrap()
        .trim();
    if word_text.is_empty() {
        if !saw_coeff {
            return Err(Error::Syntax {
                offset: *pos,
                msg: "expected a term".into(),
            });
        }
        return Ok((Word::identity(alphabet), coeff));
    }
    let w = parse_word(word_text, alphabet).map_err(|e| shift_error(e, word_start))?;
    *pos = depth_end;
    Ok((w, coeff))
}

fn shift_error(e: Error, base: usize) -> Error {
    match e {
        Error::Syntax { offset, msg } => Error::Syntax {
            offset: base + offset,
            msg,
        },
        Error::UnknownGenerator { offset, name } => Error::UnknownGenerator {
            offset: base + offset,
            name,
        },
        Error::ExponentOverflow { offset } => Error::ExponentOverflow {
            offset: base + offset,
        },
        other => other,
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}
