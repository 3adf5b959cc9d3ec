//! Fox pairings of free groups, stored by their generator matrices.
//!
//! A pairing is determined by the r x r table eta(x_i, x_j); its value on
//! arbitrary ring elements is the double Fox-derivative expansion
//! `eta(a, b) = sum_{i,j} (d^l a / d x_i) eta(x_i, x_j) (d^r b / d x_j)`,
//! which is the unique bilinear extension satisfying the two pairing axioms
//! (left-derivation law in the first slot, right-derivation law in the
//! second). On a free group every generator table yields a Fox pairing, so
//! the table is a complete and minimal representation.

use std::sync::Arc;

use crate::calculus::{left_fox_derivative, right_fox_derivative, Derivation, Side};
use crate::error::{Error, Result};
use crate::linsys::divide_left_by_s_minus_one;
use crate::report::CheckReport;
use crate::ring::{parse_elem, RingElem};
use crate::sampling::Rng;
use crate::scalar::{CoeffRing, Scalar};
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq)]
pub struct FoxPairing {
    alphabet: Arc<Alphabet>,
    ring: CoeffRing,
    /// Row-major r x r table; entry (i, j) is eta(x_i, x_j).
    matrix: Vec<RingElem>,
    pub metadata: String,
}

impl FoxPairing {
    pub fn new(
        alphabet: &Arc<Alphabet>,
        ring: CoeffRing,
        matrix: Vec<RingElem>,
    ) -> Result<FoxPairing> {
        if alphabet.is_abelian() {
            return Err(Error::RegimeMismatch { expected: "free" });
        }
        let r = alphabet.rank();
        if matrix.len() != r * r {
            return Err(Error::DimensionMismatch {
                expected: r * r,
                got: matrix.len(),
            });
        }
        for e in &matrix {
            if e.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if e.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch);
            }
        }
        Ok(FoxPairing {
            alphabet: Arc::clone(alphabet),
            ring,
            matrix,
            metadata: String::new(),
        })
    }

    pub fn zero(alphabet: &Arc<Alphabet>, ring: CoeffRing) -> FoxPairing {
        let r = alphabet.rank();
        let matrix = (0..r * r).map(|_| RingElem::zero(alphabet, ring)).collect();
        FoxPairing {
            alphabet: Arc::clone(alphabet),
            ring,
            matrix,
            metadata: String::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        &self.matrix[i * self.rank() + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: RingElem) {
        let r = self.rank();
        self.matrix[i * r + j] = v;
    }

    /// Value on a pair of group elements.
    pub fn eval_words(&self, g: &Word, h: &Word) -> RingElem {
        let r = self.rank();
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        let rights: Vec<RingElem> = (0..r)
            .map(|j| right_fox_derivative(h, j, self.ring).unwrap())
            .collect();
        for i in 0..r {
            let left = left_fox_derivative(g, i, self.ring).unwrap();
            if left.is_zero() {
                continue;
            }
            for (j, right) in rights.iter().enumerate() {
                let entry = self.entry(i, j);
                if entry.is_zero() || right.is_zero() {
                    continue;
                }
                let term = left.mul(entry).unwrap().mul(right).unwrap();
                out = out.add(&term).unwrap();
            }
        }
        out
    }

    /// K-bilinear extension to the group ring.
    pub fn evaluate(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        if x.ring() != self.ring || y.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        if x.alphabet() != &self.alphabet || y.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = RingElem::zero(&self.alphabet, self.ring);
        for (g, a) in x.terms() {
            for (h, b) in y.terms() {
                out = out.add(&self.eval_words(g, h).scale(&a.mul(b)))?;
            }
        }
        Ok(out)
    }

    /// Matrix-wise linear combinations, for building fixtures.
    pub fn add(&self, other: &FoxPairing) -> Result<FoxPairing> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(FoxPairing {
            alphabet: Arc::clone(&self.alphabet),
            ring: self.ring,
            matrix,
            metadata: String::new(),
        })
    }

    pub fn sub(&self, other: &FoxPairing) -> Result<FoxPairing> {
        self.add(&other.scale(&Scalar::one(self.ring).neg()))
    }

    pub fn scale(&self, k: &Scalar) -> FoxPairing {
        let matrix = self.matrix.iter().map(|e| e.scale(k)).collect();
        FoxPairing {
            alphabet: Arc::clone(&self.alphabet),
            ring: self.ring,
            matrix,
            metadata: String::new(),
        }
    }

    /// The transpose pairing: the Fox pairing whose value on group elements
    /// is the bar involution of eta at inverted, swapped arguments,
    /// `eta^t(g, h) = involute(eta(h^-1, g^-1))`. It is materialized into a
    /// generator matrix, entry (i, j) = involute(eta(x_j^-1, x_i^-1)), and
    /// transposing twice restores the original matrix.
    pub fn transpose(&self) -> FoxPairing {
        let r = self.rank();
        let mut out = FoxPairing::zero(&self.alphabet, self.ring);
        for i in 0..r {
            let xi_inv = Word::gen_pow(&self.alphabet, i, -1);
            for j in 0..r {
                let xj_inv = Word::gen_pow(&self.alphabet, j, -1);
                let v = self.eval_words(&xj_inv, &xi_inv).involute();
                out.set_entry(i, j, v);
            }
        }
        out
    }

    /// The inner pairing of c: (g, h) -> (1-g) c (1-h) on group elements.
    pub fn inner(c: &RingElem) -> FoxPairing {
        let alphabet = c.alphabet();
        let ring = c.ring();
        let r = alphabet.rank();
        let mut out = FoxPairing::zero(alphabet, ring);
        for i in 0..r {
            let li = RingElem::one_minus(&Word::gen(alphabet, i), ring);
            for j in 0..r {
                let rj = RingElem::one_minus(&Word::gen(alphabet, j), ring);
                out.set_entry(i, j, li.mul(c).unwrap().mul(&rj).unwrap());
            }
        }
        out
    }

    /// The pairing (a, b) -> D_l(a) D_r(b) of a left and a right derivation.
    pub fn from_derivations(dl: &Derivation, dr: &Derivation) -> Result<FoxPairing> {
        if dl.side() != Side::Left || dr.side() != Side::Right {
            return Err(Error::SideMismatch);
        }
        if dl.ring() != dr.ring() {
            return Err(Error::RingMismatch);
        }
        if dl.alphabet() != dr.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let alphabet = dl.alphabet();
        let r = alphabet.rank();
        let mut out = FoxPairing::zero(alphabet, dl.ring());
        for i in 0..r {
            for j in 0..r {
                out.set_entry(i, j, dl.gen_value(i).mul(dr.gen_value(j))?);
            }
        }
        Ok(out)
    }
}

/// Checks the two pairing axioms on seeded random word triples, together
/// with the curried-derivation content: for fixed a the map h -> eta(a, h)
/// obeys the right law, for fixed b the map g -> eta(g, b) obeys the left
/// law.
pub fn check_axioms(p: &FoxPairing, samples: usize, seed: u64, max_len: usize) -> CheckReport {
    let mut rng = Rng::new(seed);
    let alphabet = &p.alphabet;
    for k in 0..samples {
        let a1 = rng.word(alphabet, max_len);
        let a2 = rng.word(alphabet, max_len);
        let b = rng.word(alphabet, max_len);

        // eta(a1 a2, b) = eta(a1, b) + a1 eta(a2, b)
        let lhs = p.eval_words(&a1.concat(&a2), &b);
        let rhs = p
            .eval_words(&a1, &b)
            .add(&p.eval_words(&a2, &b).mul_word_left(&a1))
            .unwrap();
        if lhs != rhs {
            return CheckReport::fail(
                "fox-axiom-1",
                samples,
                seed,
                format!("sample {k}: a1={a1} a2={a2} b={b}"),
            );
        }

        // eta(a, b1 b2) = eta(a, b1) b2 + eta(a, b2)
        let lhs = p.eval_words(&b, &a1.concat(&a2));
        let rhs = p
            .eval_words(&b, &a1)
            .mul_word_right(&a2)
            .add(&p.eval_words(&b, &a2))
            .unwrap();
        if lhs != rhs {
            return CheckReport::fail(
                "fox-axiom-2",
                samples,
                seed,
                format!("sample {k}: a={b} b1={a1} b2={a2}"),
            );
        }

        // eta(1, -) = eta(-, 1) = 0
        let id = Word::identity(alphabet);
        if !p.eval_words(&id, &b).is_zero() || !p.eval_words(&b, &id).is_zero() {
            return CheckReport::fail("fox-axiom-unit", samples, seed, format!("b={b}"));
        }
    }
    CheckReport::pass("fox-axioms", samples, seed)
}

/// How the boundary condition is checked.
pub enum BoundaryMode {
    /// eta(s, g) = a_s (1 - g) with the given a_s.
    GivenFactor(RingElem),
    /// eta(s, g) = 1 - g (the normalized fundamental form).
    Normalized,
    /// eta(s, g) lies in (s - 1) K[G], decided by bounded-support division.
    Containment,
}

pub fn check_boundary_condition(
    p: &FoxPairing,
    s: &Word,
    mode: &BoundaryMode,
    samples: usize,
    seed: u64,
) -> CheckReport {
    let mut rng = Rng::new(seed);
    let ring = p.ring();
    let alphabet = &p.alphabet;
    let name = match mode {
        BoundaryMode::GivenFactor(_) => "boundary-factor",
        BoundaryMode::Normalized => "boundary-normalized",
        BoundaryMode::Containment => "boundary-containment",
    };
    for k in 0..samples {
        let g = rng.word(alphabet, 8);
        let value = p.eval_words(s, &g);
        match mode {
            BoundaryMode::GivenFactor(a_s) => {
                let expect = a_s.mul(&RingElem::one_minus(&g, ring)).unwrap();
                if value != expect {
                    return CheckReport::fail(
                        name,
                        samples,
                        seed,
                        format!("sample {k}: g={g} eta(s,g)={value} expected={expect}"),
                    );
                }
            }
            BoundaryMode::Normalized => {
                let expect = RingElem::one_minus(&g, ring);
                if value != expect {
                    return CheckReport::fail(
                        name,
                        samples,
                        seed,
                        format!("sample {k}: g={g} eta(s,g)={value} expected={expect}"),
                    );
                }
            }
            BoundaryMode::Containment => match divide_left_by_s_minus_one(s, &value) {
                Ok(Some(_)) => {}
                _ => {
                    return CheckReport::fail(
                        name,
                        samples,
                        seed,
                        format!("sample {k}: g={g} eta(s,g)={value} not in (s-1)K[G]"),
                    )
                }
            },
        }
    }
    CheckReport::pass(name, samples, seed)
}

/// Skew identity: eta(g, h) + eta^t(g, h) = (1 - g)(1 - h) on samples.
pub fn check_skew_identity(p: &FoxPairing, samples: usize, seed: u64) -> CheckReport {
    let mut rng = Rng::new(seed);
    let transpose = p.transpose();
    let ring = p.ring();
    for k in 0..samples {
        let g = rng.nontrivial_word(&p.alphabet, 6);
        let h = rng.nontrivial_word(&p.alphabet, 6);
        let lhs = p
            .eval_words(&g, &h)
            .add(&transpose.eval_words(&g, &h))
            .unwrap();
        let rhs = RingElem::one_minus(&g, ring)
            .mul(&RingElem::one_minus(&h, ring))
            .unwrap();
        if lhs != rhs {
            return CheckReport::fail(
                "skew-identity",
                samples,
                seed,
                format!("sample {k}: g={g} h={h} lhs={lhs} rhs={rhs}"),
            );
        }
    }
    CheckReport::pass("skew-identity", samples, seed)
}

/// Exponent-sum symplectic form on the standard genus-g surface alphabet
/// (alpha_i at even indices, beta_i at odd indices).
pub fn symplectic_form(a: &Word, b: &Word, genus: usize) -> i64 {
    let mut total = 0;
    for i in 0..genus {
        let ea_a = a.exponent_sum(2 * i);
        let eb_a = a.exponent_sum(2 * i + 1);
        let ea_b = b.exponent_sum(2 * i);
        let eb_b = b.exponent_sum(2 * i + 1);
        total += ea_a * eb_b - eb_a * ea_b;
    }
    total
}

/// Checks that aug(eta(a, b)) is one fixed nonzero multiple of the
/// symplectic exponent-sum form across all samples. The constant lambda is
/// taken from the first sample with a nonzero form value.
pub fn check_aug_intersection(
    p: &FoxPairing,
    genus: usize,
    samples: usize,
    seed: u64,
) -> CheckReport {
    if p.rank() != 2 * genus {
        return CheckReport::fail(
            "aug-intersection",
            samples,
            seed,
            format!("alphabet rank {} does not match genus {genus}", p.rank()),
        );
    }
    let mut rng = Rng::new(seed);
    let ring = p.ring();
    let mut lambda: Option<Scalar> = None;
    for k in 0..samples {
        let a = rng.word(&p.alphabet, 6);
        let b = rng.word(&p.alphabet, 6);
        let aug = p.eval_words(&a, &b).augment();
        let form = Scalar::from_i64(ring, symplectic_form(&a, &b, genus));
        if lambda.is_none() && !form.is_zero() {
            let l = aug.div(&form);
            match l {
                Some(l) if !l.is_zero() => lambda = Some(l),
                _ => {
                    return CheckReport::fail(
                        "aug-intersection",
                        samples,
                        seed,
                        format!("sample {k}: a={a} b={b} aug={aug} I={form}: lambda zero"),
                    )
                }
            }
        }
        if let Some(l) = &lambda {
            if aug != l.mul(&form) {
                return CheckReport::fail(
                    "aug-intersection",
                    samples,
                    seed,
                    format!("sample {k}: a={a} b={b} aug={aug} I={form} lambda={l}"),
                );
            }
        }
    }
    match lambda {
        Some(l) => CheckReport::pass("aug-intersection", samples, seed).note(format!("lambda={l}")),
        None => CheckReport::fail(
            "aug-intersection",
            samples,
            seed,
            "inconclusive: no sampled pair had nonzero intersection form".into(),
        ),
    }
}

const FILE_HEADER: &str = "foxpairing v1";

/// Serializes the pairing in the canonical text format. The output is
/// byte-stable: shortlex term order inside each entry and a fixed line
/// layout.
pub fn serialize_pairing(p: &FoxPairing) -> String {
    let mut out = String::new();
    out.push_str(FILE_HEADER);
    out.push('\n');
    out.push_str(&format!("alphabet {}", p.rank()));
    for name in p.alphabet.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    out.push_str(&format!("coeff {}\n", p.ring().tag()));
    for i in 0..p.rank() {
        for j in 0..p.rank() {
            out.push_str(&format!(
                "eta {} {} = {}\n",
                p.alphabet.name(i),
                p.alphabet.name(j),
                p.entry(i, j)
            ));
        }
    }
    for line in p.metadata.lines() {
        out.push_str(&format!("# metadata: {line}\n"));
    }
    out
}

pub fn deserialize_pairing(text: &str) -> Result<FoxPairing> {
    let mut lines = text.lines().enumerate();
    let bad = |line: usize, msg: &str| Error::FileFormat {
        line: line + 1,
        msg: msg.into(),
    };

    let (ln, header) = lines.next().ok_or_else(|| bad(0, "empty file"))?;
    if header.trim() != FILE_HEADER {
        return Err(bad(ln, "expected `foxpairing v1` header"));
    }

    let (ln, alpha_line) = lines
        .next()
        .ok_or_else(|| bad(1, "missing alphabet line"))?;
    let mut it = alpha_line.split_whitespace();
    if it.next() != Some("alphabet") {
        return Err(bad(ln, "expected `alphabet <r> <names...>`"));
    }
    let rank: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(ln, "bad rank"))?;
    let names: Vec<&str> = it.collect();
    if names.len() != rank || rank == 0 {
        return Err(bad(ln, "name count does not match rank"));
    }
    let alphabet = Alphabet::free(&names);

    let (ln, coeff_line) = lines.next().ok_or_else(|| bad(2, "missing coeff line"))?;
    let tag = coeff_line
        .split_whitespace()
        .nth(1)
        .ok_or_else(|| bad(ln, "expected `coeff <Q|Z|F2>`"))?;
    if !coeff_line.trim_start().starts_with("coeff") {
        return Err(bad(ln, "expected `coeff <Q|Z|F2>`"));
    }
    let ring = CoeffRing::from_tag(tag).ok_or_else(|| bad(ln, "unknown coefficient tag"))?;

    let mut p = FoxPairing::zero(&alphabet, ring);
    let mut seen = vec![false; rank * rank];
    let mut metadata = Vec::new();
    for (ln, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(m) = rest.strip_prefix("metadata:") {
                metadata.push(m.trim().to_string());
            }
            continue;
        }
        let rest = line
            .strip_prefix("eta ")
            .ok_or_else(|| bad(ln, "expected `eta <gi> <gj> = <elem>`"))?;
        let (names_part, elem_part) = rest.split_once('=').ok_or_else(|| bad(ln, "missing `=`"))?;
        let mut names_it = names_part.split_whitespace();
        let ni = names_it
            .next()
            .ok_or_else(|| bad(ln, "missing row generator"))?;
        let nj = names_it
            .next()
            .ok_or_else(|| bad(ln, "missing column generator"))?;
        if names_it.next().is_some() {
            return Err(bad(ln, "too many tokens before `=`"));
        }
        let i = alphabet
            .index_of(ni)
            .ok_or_else(|| bad(ln, "unknown row generator"))?;
        let j = alphabet
            .index_of(nj)
            .ok_or_else(|| bad(ln, "unknown column generator"))?;
        if seen[i * rank + j] {
            return Err(bad(ln, "duplicate eta entry"));
        }
        seen[i * rank + j] = true;
        let elem = parse_elem(elem_part.trim(), &alphabet, ring)
            .map_err(|e| bad(ln, &format!("bad element: {e}")))?;
        p.set_entry(i, j, elem);
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::FileFormat {
            line: 0,
            msg: "missing eta entries".into(),
        });
    }
    p.metadata = metadata.join("\n");
    Ok(p)
}

/// Convenience: the pairing with a single generator-matrix entry 1 at
/// (gi, gj), used all over the tests.
pub fn delta_pairing(
    alphabet: &Arc<Alphabet>,
    ring: CoeffRing,
    gi: usize,
    gj: usize,
) -> FoxPairing {
    let mut p = FoxPairing::zero(alphabet, ring);
    p.set_entry(gi, gj, RingElem::one(alphabet, ring));
    p
}
