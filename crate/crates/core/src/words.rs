//! Words in the free group of rank two.
//!
//! Letters are written `a`, `b` for the generators and `A`, `B` for their
//! inverses. A [`Word`] is always freely reduced. The alphabet labels only
//! affect display, so the same machinery serves the rewritten generating
//! pairs `(a, c = ab)` and `(d = ba, b)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mat2c::GroupElement;

/// One of `x`, `x⁻¹`, `y`, `y⁻¹`, where `x` and `y` are the two free generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u8,
    inverse: bool,
}

impl Letter {
    pub const X: Letter = Letter {
        generator: 0,
        inverse: false,
    };
    pub const X_INV: Letter = Letter {
        generator: 0,
        inverse: true,
    };
    pub const Y: Letter = Letter {
        generator: 1,
        inverse: false,
    };
    pub const Y_INV: Letter = Letter {
        generator: 1,
        inverse: true,
    };

    pub const ALL: [Letter; 4] = [Letter::X, Letter::X_INV, Letter::Y, Letter::Y_INV];

    pub fn generator(&self) -> u8 {
        self.generator
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    pub fn inv(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Display names for the two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub first: char,
    pub second: char,
}

impl Alphabet {
    pub const AB: Alphabet = Alphabet {
        first: 'a',
        second: 'b',
    };
    /// Generators `a` and `c = ab`.
    pub const AC: Alphabet = Alphabet {
        first: 'a',
        second: 'c',
    };
    /// Generators `d = ba` and `b`.
    pub const DB: Alphabet = Alphabet {
        first: 'd',
        second: 'b',
    };

    fn render(&self, l: Letter) -> char {
        let base = if l.generator == 0 { self.first } else { self.second };
        if l.inverse {
            base.to_ascii_uppercase()
        } else {
            base
        }
    }

    fn parse(&self, ch: char) -> Option<Letter> {
        let lower = ch.to_ascii_lowercase();
        let generator = if lower == self.first {
            0
        } else if lower == self.second {
            1
        } else {
            return None;
        };
        Some(Letter {
            generator,
            inverse: ch.is_ascii_uppercase(),
        })
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::AB
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: Alphabet,
}

/// Exponent sums of the two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AbelianImage {
    pub ea: i64,
    pub eb: i64,
}

impl std::ops::Add for AbelianImage {
    type Output = AbelianImage;
    fn add(self, r: AbelianImage) -> AbelianImage {
        AbelianImage {
            ea: self.ea + r.ea,
            eb: self.eb + r.eb,
        }
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in raw {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word {
        letters: out,
        alphabet: Alphabet::AB,
    }
}

impl Word {
    pub fn identity() -> Self {
        Self {
            letters: Vec::new(),
            alphabet: Alphabet::AB,
        }
    }

    pub fn letter(l: Letter) -> Self {
        Self {
            letters: vec![l],
            alphabet: Alphabet::AB,
        }
    }

    pub fn a() -> Self {
        Self::letter(Letter::X)
    }

    pub fn b() -> Self {
        Self::letter(Letter::Y)
    }

    pub fn parse_with(s: &str, alphabet: Alphabet) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                alphabet
                    .parse(c)
                    .ok_or_else(|| Error::Parse(format!("unexpected letter {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(reduce(letters).with_alphabet(alphabet))
    }

    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word read backwards; each letter keeps its exponent.
    pub fn reverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().copied().collect(),
            alphabet: self.alphabet,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
            alphabet: self.alphabet,
        }
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Self {
        reduce(self.letters.iter().chain(other.letters.iter()).copied()).with_alphabet(self.alphabet)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity().with_alphabet(self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn abelianize(&self) -> AbelianImage {
        self.letters.iter().fold(AbelianImage { ea: 0, eb: 0 }, |acc, l| {
            if l.generator == 0 {
                AbelianImage {
                    ea: acc.ea + l.exponent(),
                    ..acc
                }
            } else {
                AbelianImage {
                    eb: acc.eb + l.exponent(),
                    ..acc
                }
            }
        })
    }

    /// Image under the homomorphism sending the generators to `x` and `y`.
    pub fn evaluate(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let table = [*x, x.inverse(), *y, y.inverse()];
        self.letters.iter().fold(GroupElement::identity(), |acc, l| {
            acc * table[(l.generator as usize) * 2 + l.inverse as usize]
        })
    }

    /// Image under a substitution of words for the two generators.
    pub fn substitute(&self, x: &Word, y: &Word) -> Word {
        let (xi, yi) = (x.inverse(), y.inverse());
        let raw = self.letters.iter().flat_map(|l| {
            let w = match (l.generator, l.inverse) {
                (0, false) => x,
                (0, true) => &xi,
                (_, false) => y,
                (_, true) => &yi,
            };
            w.letters.clone()
        });
        reduce(raw)
    }

    /// Strips matching letter/inverse pairs from the two ends.
    pub fn cyclic_reduce(&self) -> Self {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i] == l[j - 1].inv() {
            i += 1;
            j -= 1;
        }
        Self {
            letters: l[i..j].to_vec(),
            alphabet: self.alphabet,
        }
    }

    pub fn rotation(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self {
            letters,
            alphabet: self.alphabet,
        }
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |k| self.rotation(k))
    }

    /// Letterwise cyclic equivalence of two cyclically reduced words.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.len() == other.len() && self.rotations().any(|r| r.letters == other.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", self.alphabet.render(*l))?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    /// `"1"` and the empty string parse as the identity.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "1" {
            return Ok(Word::identity());
        }
        Word::parse_with(s, Alphabet::AB)
    }
}

/// Result of Nielsen-reducing a pair of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NielsenOutcome {
    pub u: Word,
    pub v: Word,
    pub generates: bool,
}

/// Greedy Nielsen reduction: apply the first strictly length-reducing move
/// in a fixed order until none applies.
pub fn nielsen_reduce_pair(u: &Word, v: &Word) -> NielsenOutcome {
    let mut u = u.clone();
    let mut v = v.clone();
    loop {
        let total = u.len() + v.len();
        if u.is_empty() || v.is_empty() {
            break;
        }
        let (ui, vi) = (u.inverse(), v.inverse());
        let candidates = [
            (u.concat(&v), v.clone()),
            (u.concat(&vi), v.clone()),
            (v.concat(&u), v.clone()),
            (vi.concat(&u), v.clone()),
            (u.clone(), v.concat(&u)),
            (u.clone(), v.concat(&ui)),
            (u.clone(), u.concat(&v)),
            (u.clone(), ui.concat(&v)),
        ];
        match candidates.into_iter().find(|(x, y)| x.len() + y.len() < total) {
            Some((x, y)) => {
                u = x;
                v = y;
            }
            None => break,
        }
    }
    let generates = u.len() == 1 && v.len() == 1 && u.letters[0].generator != v.letters[0].generator;
    NielsenOutcome { u, v, generates }
}

// The rank-two Whitehead automorphisms that can change length: the
// multiplier `m` is fixed and the other generator goes to `y m`, `m⁻¹ y` or
// `m⁻¹ y m`.
fn whitehead_images(multiplier: Letter) -> [(Word, Word); 3] {
    let m = Word::letter(multiplier);
    let mi = Word::letter(multiplier.inv());
    let other = Word::letter(Letter {
        generator: 1 - multiplier.generator,
        inverse: false,
    });
    let images = [other.concat(&m), mi.concat(&other), mi.concat(&other).concat(&m)];
    images.map(|img| {
        if multiplier.generator == 0 {
            (Word::a(), img)
        } else {
            (img, Word::b())
        }
    })
}

/// Whitehead's algorithm in rank two: `w` is primitive iff repeated
/// cyclic-length reduction by Whitehead automorphisms reaches a single letter.
pub fn is_primitive(w: &Word) -> bool {
    let mut cur = reduce(w.letters.iter().copied()).cyclic_reduce();
    if cur.is_empty() {
        return false;
    }
    let autos: Vec<(Word, Word)> = Letter::ALL.iter().flat_map(|&m| whitehead_images(m)).collect();
    while cur.len() > 1 {
        let shorter = autos
            .iter()
            .map(|(x, y)| cur.substitute(x, y).cyclic_reduce())
            .find(|img| img.len() < cur.len());
        match shorter {
            Some(next) => cur = next,
            None => return false,
        }
    }
    true
}

/// Which of the two generator changes `φ_a : b ↦ ab` or `φ_b : a ↦ ba`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Expresses `φ(w)` in the new generating pair: `(a, c)` with `c = ab` for
/// [`Side::A`], `(d, b)` with `d = ba` for [`Side::B`].
///
/// Since `φ_a(w)(a, b) = w(a, ab)`, the rewritten word is `w` with `b`
/// renamed `c`; likewise for `φ_b`.
pub fn rewrite_in_generators(w: &Word, side: Side) -> Word {
    let alphabet = match side {
        Side::A => Alphabet::AC,
        Side::B => Alphabet::DB,
    };
    w.clone().with_alphabet(alphabet)
}

/// Expands a word over `(a, c)` or `(d, b)` back into `a` and `b`.
pub fn expand_generators(w: &Word) -> Word {
    let (a, b) = (Word::a(), Word::b());
    match w.alphabet {
        Alphabet::AC => w.substitute(&a, &a.concat(&b)),
        Alphabet::DB => w.substitute(&b.concat(&a), &b),
        _ => w.clone().with_alphabet(Alphabet::AB),
    }
}

/// The automorphism `φ` itself, as a word in `a` and `b`.
pub fn apply_generator_change(w: &Word, side: Side) -> Word {
    let (a, b) = (Word::a(), Word::b());
    match side {
        Side::A => w.substitute(&a, &a.concat(&b)),
        Side::B => w.substitute(&b.concat(&a), &b),
    }
}
