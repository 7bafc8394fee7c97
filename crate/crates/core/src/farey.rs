//! Rational indexing of primitive words.
//!
//! Conjugacy classes of primitive elements of `F = ⟨a, b⟩` with positive
//! exponents correspond to reduced fractions `p/q ∈ [0, ∞]`. The class of
//! `p/q` has exponent sum `q` in `a` and `p` in `b`, so `e_{0/1} = a`,
//! `e_{1/0} = b` and `e_{1/2} = aba`.
//!
//! When `pq` is even the class contains exactly one palindrome, which is
//! taken as `e_{p/q}`. When `pq` is odd, `e_{p/q}` is the product of the
//! words of its two Stern–Brocot parents, smaller slope first; both parents
//! then have even `pq`, so this is a factorization into two palindromes.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{AbelianImage, Letter, Word};

/// A reduced fraction `p/q` with `p, q ≥ 0`; `1/0` is infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    p: u64,
    q: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { p: 0, q: 1 };
    pub const INFINITY: Rational = Rational { p: 1, q: 0 };

    pub fn new(p: u64, q: u64) -> Result<Self> {
        if gcd(p, q) != 1 {
            return Err(Error::InvalidRational { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn mediant(&self, other: &Rational) -> Rational {
        Rational {
            p: self.p + other.p,
            q: self.q + other.q,
        }
    }

    /// `|ps - rq|`.
    pub fn determinant(&self, other: &Rational) -> u128 {
        let lhs = self.p as u128 * other.q as u128;
        let rhs = other.p as u128 * self.q as u128;
        lhs.abs_diff(rhs)
    }

    pub fn pq_even(&self) -> bool {
        (self.p * self.q).is_multiple_of(2)
    }

    pub fn as_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl Ord for Rational {
    /// Order of the extended non-negative reals.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p as u128 * other.q as u128).cmp(&(other.p as u128 * self.q as u128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected p/q, got {s:?}"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Rational::new(p, q)
    }
}

/// The Stern–Brocot parents of `r`, in ascending order.
pub fn farey_parents(r: Rational) -> Result<(Rational, Rational)> {
    if r == Rational::ZERO || r == Rational::INFINITY {
        return Err(Error::InvalidRational { p: r.p, q: r.q });
    }
    let (mut lo, mut hi) = (Rational::ZERO, Rational::INFINITY);
    loop {
        let m = lo.mediant(&hi);
        match r.cmp(&m) {
            Ordering::Equal => return Ok((lo, hi)),
            Ordering::Less => hi = m,
            Ordering::Greater => lo = m,
        }
    }
}

/// Number of mediant steps from `(0/1, 1/0)` needed to reach `r`.
pub fn stern_brocot_depth(r: Rational) -> u32 {
    if r == Rational::ZERO || r == Rational::INFINITY {
        return 0;
    }
    // the sum of continued-fraction partial quotients
    let (mut p, mut q) = (r.p, r.q);
    let mut depth = 0u64;
    while q != 0 {
        depth += p / q;
        (p, q) = (q, p % q);
    }
    depth as u32
}

/// Lower Christoffel word of slope `p/q`: `q` letters `a` and `p` letters `b`.
pub fn christoffel(r: Rational) -> Word {
    let n = r.p + r.q;
    let letters = (1..=n).map(|k| {
        if (k * r.p) / n > ((k - 1) * r.p) / n {
            Letter::Y
        } else {
            Letter::X
        }
    });
    crate::words::reduce(letters)
}

/// `e_{p/q}` together with its palindromic factorization when `pq` is odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveWord {
    pub word: Word,
    pub factors: Option<(Word, Word)>,
}

fn palindromic_rotation(r: Rational) -> Result<Word> {
    let c = christoffel(r);
    let mut found = c.rotations().filter(|w| w.is_palindrome());
    let first = found.next();
    match (first, found.next()) {
        (Some(w), None) => Ok(w),
        (None, _) => Err(Error::SchemeViolation {
            rational: r.to_string(),
            reason: "no palindromic rotation of the Christoffel word".into(),
        }),
        (Some(_), Some(_)) => Err(Error::SchemeViolation {
            rational: r.to_string(),
            reason: "palindromic rotation is not unique".into(),
        }),
    }
}

pub fn primitive_word(r: Rational) -> Result<PrimitiveWord> {
    let out = if r.pq_even() {
        PrimitiveWord {
            word: palindromic_rotation(r)?,
            factors: None,
        }
    } else {
        let (lo, hi) = farey_parents(r)?;
        let f1 = palindromic_rotation(lo)?;
        let f2 = palindromic_rotation(hi)?;
        PrimitiveWord {
            word: f1.concat(&f2),
            factors: Some((f1, f2)),
        }
    };
    if !out.word.is_rotation_of(&christoffel(r)) {
        return Err(Error::SchemeViolation {
            rational: r.to_string(),
            reason: format!("{} is not conjugate to the Christoffel word", out.word),
        });
    }
    Ok(out)
}

pub fn are_associates(r: Rational, s: Rational) -> bool {
    r.determinant(&s) == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyNode {
    pub rational: Rational,
    pub parents: Option<(Rational, Rational)>,
    /// Mediant steps from the roots.
    pub depth: u32,
    pub word: Word,
    pub factors: Option<(Word, Word)>,
}

impl FareyNode {
    pub fn new(r: Rational) -> Result<Self> {
        let PrimitiveWord { word, factors } = primitive_word(r)?;
        let parents = if r == Rational::ZERO || r == Rational::INFINITY {
            None
        } else {
            Some(farey_parents(r)?)
        };
        Ok(Self {
            rational: r,
            parents,
            depth: stern_brocot_depth(r),
            word,
            factors,
        })
    }

    pub fn abelian_image(&self) -> AbelianImage {
        self.word.abelianize()
    }
}

/// Every rational within `depth` mediant steps of `(0/1, 1/0)`, ordered by
/// `(q, p)`.
pub fn enumerate(depth: u32) -> Result<Vec<FareyNode>> {
    let mut seen: BTreeSet<(u64, u64)> = BTreeSet::new();
    seen.insert((1, 0));
    seen.insert((0, 1));
    let mut frontier = vec![(Rational::ZERO, Rational::INFINITY)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (lo, hi) in frontier {
            let m = lo.mediant(&hi);
            seen.insert((m.q, m.p));
            next.push((lo, m));
            next.push((m, hi));
        }
        frontier = next;
    }
    seen.into_par_iter()
        .map(|(q, p)| FareyNode::new(Rational { p, q }))
        .collect()
}

/// All reduced `p/q` with `p + q ≤ max_sum`, ordered by `(q, p)`.
pub fn rationals_up_to_sum(max_sum: u64) -> Vec<Rational> {
    let mut out: Vec<Rational> = (0..=max_sum)
        .flat_map(|p| (0..=max_sum - p).map(move |q| (p, q)))
        .filter(|&(p, q)| gcd(p, q) == 1)
        .map(|(p, q)| Rational { p, q })
        .collect();
    out.sort_by_key(|r| (r.q, r.p));
    out
}
