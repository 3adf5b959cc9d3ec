//! Reduced words in free groups and exponent-vector monomials for Z^n.
//!
//! A `Word` is always stored in canonical form: free words are fully reduced
//! (no adjacent `x x^-1` pair), abelian words are exponent vectors. The
//! ordering on words is shortlex, which is also the canonical serialization
//! order used everywhere else in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A ranked generator set, shared by reference between words and ring elements.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    abelian: bool,
}

impl Alphabet {
    /// Free alphabet with explicit generator names.
    pub fn free(names: &[&str]) -> Arc<Alphabet> {
        assert!(!names.is_empty(), "rank must be >= 1");
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        Self::check_names(&names);
        Arc::new(Alphabet {
            names,
            abelian: false,
        })
    }

    /// Free alphabet with the default names x1..xr.
    pub fn free_default(rank: usize) -> Arc<Alphabet> {
        assert!(rank >= 1);
        let names = (1..=rank).map(|i| format!("x{i}")).collect();
        Arc::new(Alphabet {
            names,
            abelian: false,
        })
    }

    /// Abelian alphabet t1..tn for the Laurent regime.
    pub fn abelian(n: usize) -> Arc<Alphabet> {
        assert!(n >= 1);
        let names = (1..=n).map(|i| format!("t{i}")).collect();
        Arc::new(Alphabet {
            names,
            abelian: true,
        })
    }

    fn check_names(names: &[String]) {
        for (i, n) in names.iter().enumerate() {
            assert!(is_valid_name(n), "invalid generator name `{n}`");
            assert!(!names[..i].contains(n), "duplicate generator name `{n}`");
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One letter of a free word: a generator index plus an inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: u16,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Letter {
        Letter {
            gen: gen as u16,
            inv,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inv != other.inv
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Rep {
    Free(Vec<Letter>),
    Abelian(Vec<i64>),
}

/// A canonical group element: reduced word or exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    rep: Rep,
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Word {
        let rep = if alphabet.is_abelian() {
            Rep::Abelian(vec![0; alphabet.rank()])
        } else {
            Rep::Free(Vec::new())
        };
        Word {
            alphabet: Arc::clone(alphabet),
            rep,
        }
    }

    /// Single generator.
    pub fn gen(alphabet: &Arc<Alphabet>, gen: usize) -> Word {
        Self::gen_pow(alphabet, gen, 1)
    }

    /// `x_gen^e`, reduced.
    pub fn gen_pow(alphabet: &Arc<Alphabet>, gen: usize, e: i64) -> Word {
        assert!(gen < alphabet.rank());
        if alphabet.is_abelian() {
            let mut v = vec![0; alphabet.rank()];
            v[gen] = e;
            Word {
                alphabet: Arc::clone(alphabet),
                rep: Rep::Abelian(v),
            }
        } else {
            let letter = Letter::new(gen, e < 0);
            let letters = vec![letter; e.unsigned_abs() as usize];
            Word {
                alphabet: Arc::clone(alphabet),
                rep: Rep::Free(letters),
            }
        }
    }

    /// Reduces a raw letter sequence by iterated cancellation of adjacent
    /// inverse pairs. The result is independent of cancellation order.
    pub fn reduce(alphabet: &Arc<Alphabet>, raw: &[Letter]) -> Word {
        assert!(
            !alphabet.is_abelian(),
            "reduce is a free-regime constructor"
        );
        let mut stack: Vec<Letter> = Vec::with_capacity(raw.len());
        for &l in raw {
            assert!((l.gen as usize) < alphabet.rank());
            if stack.last().is_some_and(|&top| top.cancels(l)) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word {
            alphabet: Arc::clone(alphabet),
            rep: Rep::Free(stack),
        }
    }

    pub fn from_exponents(alphabet: &Arc<Alphabet>, exps: Vec<i64>) -> Word {
        assert!(alphabet.is_abelian());
        assert_eq!(exps.len(), alphabet.rank());
        Word {
            alphabet: Arc::clone(alphabet),
            rep: Rep::Abelian(exps),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn same_alphabet(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    pub fn is_identity(&self) -> bool {
        match &self.rep {
            Rep::Free(ls) => ls.is_empty(),
            Rep::Abelian(v) => v.iter().all(|&e| e == 0),
        }
    }

    /// Word length: letter count, or total absolute degree in the abelian regime.
    pub fn len(&self) -> usize {
        match &self.rep {
            Rep::Free(ls) => ls.len(),
            Rep::Abelian(v) => v.iter().map(|e| e.unsigned_abs() as usize).sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Letters of a free word.
    pub fn letters(&self) -> &[Letter] {
        match &self.rep {
            Rep::Free(ls) => ls,
            Rep::Abelian(_) => panic!("letters() called on an abelian word"),
        }
    }

    /// Exponent vector of an abelian word.
    pub fn exponents(&self) -> &[i64] {
        match &self.rep {
            Rep::Abelian(v) => v,
            Rep::Free(_) => panic!("exponents() called on a free word"),
        }
    }

    /// Exponent sum of one generator (defined in both regimes).
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        match &self.rep {
            Rep::Free(ls) => ls
                .iter()
                .filter(|l| l.gen as usize == gen)
                .map(|l| if l.inv { -1 } else { 1 })
                .sum(),
            Rep::Abelian(v) => v[gen],
        }
    }

    /// Group product, reduced.
    pub fn concat(&self, other: &Word) -> Word {
        debug_assert!(self.same_alphabet(other));
        match (&self.rep, &other.rep) {
            (Rep::Free(a), Rep::Free(b)) => {
                let mut raw = Vec::with_capacity(a.len() + b.len());
                raw.extend_from_slice(a);
                raw.extend_from_slice(b);
                Word::reduce(&self.alphabet, &raw)
            }
            (Rep::Abelian(a), Rep::Abelian(b)) => {
                let v = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Word::from_exponents(&self.alphabet, v)
            }
            _ => panic!("regime mismatch in concat"),
        }
    }

    /// Group inverse: reversed letters with flipped signs, or negated exponents.
    pub fn inverse(&self) -> Word {
        let rep = match &self.rep {
            Rep::Free(ls) => Rep::Free(ls.iter().rev().map(|l| l.inverse()).collect()),
            Rep::Abelian(v) => Rep::Abelian(v.iter().map(|e| -e).collect()),
        };
        Word {
            alphabet: Arc::clone(&self.alphabet),
            rep,
        }
    }

    /// Prefix consisting of the first `n` letters (free regime).
    pub fn prefix(&self, n: usize) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            rep: Rep::Free(self.letters()[..n].to_vec()),
        }
    }

    /// Suffix starting at letter `n` (free regime).
    pub fn suffix(&self, n: usize) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            rep: Rep::Free(self.letters()[n..].to_vec()),
        }
    }

    /// Shortlex order within one alphabet: by length, then letter by letter
    /// with generator index deciding first and a positive letter before the
    /// negative one at equal index. Abelian words compare by total absolute
    /// degree, then lexicographically on the exponent vector.
    pub fn shortlex(&self, other: &Word) -> Ordering {
        match (&self.rep, &other.rep) {
            (Rep::Free(a), Rep::Free(b)) => a.len().cmp(&b.len()).then_with(|| {
                for (x, y) in a.iter().zip(b.iter()) {
                    let c = x.gen.cmp(&y.gen).then(x.inv.cmp(&y.inv));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }),
            (Rep::Abelian(a), Rep::Abelian(b)) => {
                let da: u64 = a.iter().map(|e| e.unsigned_abs()).sum();
                let db: u64 = b.iter().map(|e| e.unsigned_abs()).sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            _ => panic!("regime mismatch in shortlex"),
        }
    }

    /// Checked comparison for callers that cannot guarantee a shared alphabet.
    pub fn shortlex_compare(&self, other: &Word) -> Result<Ordering> {
        if !self.same_alphabet(other) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.shortlex(other))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex(other)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_word(self))
    }
}

/// Canonical printer. Runs of one letter are compressed to `name^k`;
/// the identity prints as `1`.
pub fn print_word(w: &Word) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let alphabet = w.alphabet();
    let mut factors: Vec<String> = Vec::new();
    match &w.rep {
        Rep::Free(ls) => {
            let mut i = 0;
            while i < ls.len() {
                let mut j = i + 1;
                while j < ls.len() && ls[j] == ls[i] {
                    j += 1;
                }
                let run = (j - i) as i64;
                let e = if ls[i].inv { -run } else { run };
                let name = alphabet.name(ls[i].gen as usize);
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
                i = j;
            }
        }
        Rep::Abelian(v) => {
            for (g, &e) in v.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = alphabet.name(g);
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
        }
    }
    factors.join("*")
}

const MAX_EXPONENT: i64 = 1 << 20;

/// Parses a word over the given alphabet.
///
/// Grammar (ASCII, whitespace ignored between tokens):
/// `word := "1" | factor { "*" factor }`, `factor := gen [ "^" int ]`,
/// `gen := name | inverse-alias`. Single letters `a..z` are aliases for
/// generators 1..26 by index; an uppercase letter is the inverse of its
/// lowercase alias.
pub fn parse_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<Word> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;

    let mut raw_letters: Vec<Letter> = Vec::new();
    let mut exps = vec![0i64; alphabet.rank()];

    skip_ws(bytes, &mut pos);
    if pos == bytes.len() {
        return Err(Error::Syntax {
            offset: pos,
            msg: "empty word".into(),
        });
    }

    // Lone "1" is the identity.
    if bytes[pos] == b'1' {
        let mut p = pos + 1;
        skip_ws(bytes, &mut p);
        if p == bytes.len() {
            return Ok(Word::identity(alphabet));
        }
        return Err(Error::Syntax {
            offset: p,
            msg: "unexpected input after `1`".into(),
        });
    }

    loop {
        skip_ws(bytes, &mut pos);
        let (gen, inv) = parse_gen(bytes, &mut pos, alphabet)?;
        skip_ws(bytes, &mut pos);
        let mut exp: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            skip_ws(bytes, &mut pos);
            exp = parse_int(bytes, &mut pos)?;
        }
        if inv {
            exp = -exp;
        }
        if alphabet.is_abelian() {
            exps[gen] = exps[gen]
                .checked_add(exp)
                .ok_or(Error::ExponentOverflow { offset: pos })?;
        } else {
            let letter = Letter::new(gen, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                raw_letters.push(letter);
            }
        }
        skip_ws(bytes, &mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'*' {
            return Err(Error::Syntax {
                offset: pos,
                msg: "expected `*` between factors".into(),
            });
        }
        pos += 1;
    }

    if alphabet.is_abelian() {
        Ok(Word::from_exponents(alphabet, exps))
    } else {
        Ok(Word::reduce(alphabet, &raw_letters))
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_int(bytes: &[u8], pos: &mut usize) -> Result<i64> {
    let start = *pos;
    let mut neg = false;
    if *pos < bytes.len() && bytes[*pos] == b'-' {
        neg = true;
        *pos += 1;
    }
    let digits_start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == digits_start {
        return Err(Error::Syntax {
            offset: start,
            msg: "expected an integer".into(),
        });
    }
    let s = std::str::from_utf8(&bytes[digits_start..*pos]).unwrap();
    let v: i64 = s
        .parse()
        .map_err(|_| Error::ExponentOverflow { offset: start })?;
    if v > MAX_EXPONENT {
        return Err(Error::ExponentOverflow { offset: start });
    }
    Ok(if neg { -v } else { v })
}

fn parse_gen(bytes: &[u8], pos: &mut usize, alphabet: &Alphabet) -> Result<(usize, bool)> {
    let start = *pos;
    if *pos >= bytes.len() {
        return Err(Error::Syntax {
            offset: start,
            msg: "expected a generator".into(),
        });
    }
    let c = bytes[*pos] as char;

    // Uppercase single letter: inverse alias.
    if c.is_ascii_uppercase() {
        *pos += 1;
        let idx = (c as u8 - b'A') as usize;
        if idx < alphabet.rank() {
            return Ok((idx, true));
        }
        return Err(Error::UnknownGenerator {
            offset: start,
            name: c.to_string(),
        });
    }

    if !c.is_ascii_lowercase() {
        return Err(Error::Syntax {
            offset: start,
            msg: format!("unexpected character `{c}`"),
        });
    }

    // Longest alphanumeric token starting with a lowercase letter.
    let tok_start = *pos;
    *pos += 1;
    while *pos < bytes.len()
        && ((bytes[*pos] as char).is_ascii_alphanumeric() || bytes[*pos] == b'_')
    {
        *pos += 1;
    }
    let token = std::str::from_utf8(&bytes[tok_start..*pos]).unwrap();

    if let Some(idx) = alphabet.index_of(token) {
        return Ok((idx, false));
    }
    // Single lowercase letter: positional alias a..z -> generators 1..26.
    if token.len() == 1 {
        let idx = (token.as_bytes()[0] - b'a') as usize;
        if idx < alphabet.rank() {
            return Ok((idx, false));
        }
    }
    Err(Error::UnknownGenerator {
        offset: tok_start,
        name: token.to_string(),
    })
}
