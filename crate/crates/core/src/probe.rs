//! Discreteness evidence from the palindromic Π-spectrum.
//!
//! For a discrete group the crossings of palindromic axes with the core stay
//! in a compact interval (away from horoballs at parabolic ends). The probe
//! reports the spectrum, how its extent grows with Farey depth, palindromic
//! words whose crossings escape a threshold, and the Jørgensen quantity as an
//! independent cross-check. Verdicts are evidence labels, not proofs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::{enumerate, Rational};
use crate::mat2c::IsometryClass;
use crate::rep::{elliptic_info, EllipticInfo, PiImage, PiSource, Representation};
use crate::words::{reduce, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSettings {
    pub depth: u32,
    pub random_samples: usize,
    pub seed: u64,
    pub s_escape: f64,
    pub delta_plateau: f64,
    /// Bounds for the conjugate-push search run as part of the probe.
    pub witness_conj_power: u32,
    pub witness_word_len: usize,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        Self {
            depth: 8,
            random_samples: 200,
            seed: 0,
            s_escape: 25.0,
            delta_plateau: 0.01,
            witness_conj_power: 12,
            witness_word_len: 3,
        }
    }
}

impl ProbeSettings {
    pub fn validate(&self) -> Result<()> {
        if self.depth < 1 {
            return Err(Error::InvalidParameter("probe depth must be at least 1".into()));
        }
        if !(self.s_escape > 0.0 && self.s_escape.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "s_escape must be positive, got {}",
                self.s_escape
            )));
        }
        if !(self.delta_plateau > 0.0 && self.delta_plateau.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "plateau threshold must be positive, got {}",
                self.delta_plateau
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "BOUNDED_CONSISTENT_WITH_GF")]
    Bounded,
    #[serde(rename = "UNBOUNDED_EVIDENCE_NONDISCRETE")]
    Unbounded,
    #[serde(rename = "PARABOLIC_ENDS_DETECTED")]
    ParabolicEnds,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Bounded => "BOUNDED_CONSISTENT_WITH_GF",
            Verdict::Unbounded => "UNBOUNDED_EVIDENCE_NONDISCRETE",
            Verdict::ParabolicEnds => "PARABOLIC_ENDS_DETECTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub rational: Rational,
    pub depth: u32,
    pub word: Word,
    /// Class of the image of the enumerated word.
    pub class: Option<IsometryClass>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elliptic: Option<EllipticInfo>,
    pub pi: Option<PiImage>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleEntry {
    pub word: Word,
    pub palindrome: Word,
    pub pi: Option<PiImage>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessOrigin {
    Spectrum { rational: Rational },
    Sample,
    ConjugatePush { c: Word, d: Word, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub word: Word,
    pub s: f64,
    pub origin: WitnessOrigin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Jorgensen {
    pub value: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub settings: ProbeSettings,
    pub spectrum: Vec<SpectrumEntry>,
    pub random_palindrome_samples: Vec<SampleEntry>,
    /// `[s_min, s_max]` over finite spectrum values.
    pub interval: Option<[f64; 2]>,
    /// Largest finite `|s|` over spectrum entries of depth at most `d`.
    pub growth: Vec<f64>,
    /// Largest finite `|s|` over the random samples.
    pub sample_max_abs: Option<f64>,
    pub parabolic_ends: usize,
    pub errors: usize,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub jorgensen: Jorgensen,
}

fn split<T>(r: Result<T>) -> (Option<T>, Option<String>) {
    match r {
        Ok(v) => (Some(v), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

/// Π-image of every rational in the Farey tree to `depth`, in enumeration
/// order. Failures are recorded on the entry.
pub fn pi_spectrum(rep: &Representation, depth: u32) -> Result<Vec<SpectrumEntry>> {
    let nodes = enumerate(depth)?;
    Ok(nodes
        .into_par_iter()
        .map(|node| {
            let g = rep.element(&node.word);
            let tol = rep.tolerances().for_length(node.word.len());
            let class = Some(g.classify(&tol));
            let (pi, error) = split(match &node.factors {
                None => rep.pi_of_palindrome(&node.word),
                Some((u, v)) => rep.pi_of_pair(u, v),
            });
            SpectrumEntry {
                rational: node.rational,
                depth: node.depth,
                elliptic: elliptic_info(&g, &tol),
                word: node.word,
                class,
                pi,
                error,
            }
        })
        .collect())
}

/// Freely reduced random words of length `1..=max_len`, without immediate
/// backtracking.
pub fn random_words(count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_len = max_len.max(1);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let mut letters: Vec<Letter> = Vec::with_capacity(len);
            while letters.len() < len {
                let l = Letter::ALL[rng.gen_range(0..4)];
                if letters.last().is_none_or(|&p| p != l.inv()) {
                    letters.push(l);
                }
            }
            reduce(letters)
        })
        .collect()
}

/// Every freely reduced word of length `1..=max_len`, shortest first.
pub fn reduced_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in Letter::ALL {
                if w.last().is_none_or(|&p| p != l.inv()) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned().map(reduce));
        layer = next;
    }
    out
}

/// Searches `U = CⁿDC⁻ⁿ` over words `C, D` of length at most `max_word_len`
/// and `1 ≤ n ≤ max_conj_power`, testing the palindromes `U·rev(U)` and
/// `rev(U)·U`. Returns the first, in grid order, whose crossing has
/// `|s| > s_escape`.
pub fn witness_search(
    rep: &Representation,
    max_conj_power: u32,
    max_word_len: usize,
    s_escape: f64,
) -> Option<Witness> {
    let words = reduced_words(max_word_len);
    let cells: Vec<(&Word, &Word, u32)> = words
        .iter()
        .flat_map(|c| words.iter().map(move |d| (c, d)))
        .flat_map(|(c, d)| (1..=max_conj_power).map(move |n| (c, d, n)))
        .collect();
    cells.into_par_iter().find_map_first(|(c, d, n)| {
        let cn = c.pow(n as i64);
        let u = cn.concat(d).concat(&cn.inverse());
        if u.is_empty() {
            return None;
        }
        let v = u.reverse();
        [u.concat(&v), v.concat(&u)].into_iter().find_map(|p| {
            let pi = rep.pi_of_palindrome(&p).ok()?;
            (pi.source == PiSource::Palindrome && pi.s.abs() > s_escape).then(|| Witness {
                word: p,
                s: pi.s,
                origin: WitnessOrigin::ConjugatePush {
                    c: c.clone(),
                    d: d.clone(),
                    n,
                },
            })
        })
    })
}

/// `|tr²A − 4| + |tr[A,B] − 2|`, passing when at least 1.
pub fn jorgensen_baseline(rep: &Representation) -> Jorgensen {
    let (a, b) = (rep.a(), rep.b());
    let commutator = *a * *b * a.inverse() * b.inverse();
    let t = a.trace();
    let value = (t * t - 4.0).norm() + (commutator.trace() - 2.0).norm();
    Jorgensen {
        value,
        pass: value >= 1.0,
    }
}

pub fn probe(rep: &Representation, settings: &ProbeSettings) -> Result<ProbeReport> {
    settings.validate()?;
    let depth = settings.depth;
    let spectrum = pi_spectrum(rep, depth)?;

    let words = random_words(settings.random_samples, 2 * depth as usize, settings.seed);
    let random_palindrome_samples: Vec<SampleEntry> = words
        .into_par_iter()
        .map(|w| {
            let (palindrome, pi) = match rep.palindromize(&w) {
                Ok((p, pi)) => (p, Ok(pi)),
                Err(e) => (w.reverse().concat(&w), Err(e)),
            };
            let (pi, error) = split(pi);
            SampleEntry {
                word: w,
                palindrome,
                pi,
                error,
            }
        })
        .collect();

    let finite: Vec<f64> = spectrum
        .iter()
        .filter_map(|e| e.pi.filter(PiImage::is_finite).map(|p| p.s))
        .collect();
    let interval = (!finite.is_empty()).then(|| {
        let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        [lo, hi]
    });

    let mut growth = vec![0.0f64; depth as usize + 1];
    for e in &spectrum {
        if let Some(pi) = e.pi.filter(PiImage::is_finite) {
            let slot = &mut growth[e.depth as usize];
            *slot = slot.max(pi.s.abs());
        }
    }
    for d in 1..growth.len() {
        growth[d] = growth[d].max(growth[d - 1]);
    }

    let sample_max_abs = random_palindrome_samples
        .iter()
        .filter_map(|e| e.pi.filter(PiImage::is_finite).map(|p| p.s.abs()))
        .reduce(f64::max);

    let parabolic_ends = spectrum
        .iter()
        .filter_map(|e| e.pi)
        .chain(random_palindrome_samples.iter().filter_map(|e| e.pi))
        .filter(|p| p.source == PiSource::ParabolicEnd)
        .count();
    let errors = spectrum.iter().filter(|e| e.error.is_some()).count();

    let escaping = |pi: &Option<PiImage>| {
        pi.filter(|p| p.source == PiSource::Palindrome && p.s.abs() > settings.s_escape)
            .map(|p| p.s)
    };
    let mut witnesses: Vec<Witness> = spectrum
        .iter()
        .filter_map(|e| {
            escaping(&e.pi).map(|s| Witness {
                word: e.word.clone(),
                s,
                origin: WitnessOrigin::Spectrum { rational: e.rational },
            })
        })
        .collect();
    witnesses.extend(random_palindrome_samples.iter().filter_map(|e| {
        escaping(&e.pi).map(|s| Witness {
            word: e.palindrome.clone(),
            s,
            origin: WitnessOrigin::Sample,
        })
    }));
    if settings.witness_conj_power >= 1 && settings.witness_word_len >= 1 {
        witnesses.extend(witness_search(
            rep,
            settings.witness_conj_power,
            settings.witness_word_len,
            settings.s_escape,
        ));
    }

    let d = depth as usize;
    let plateau = growth[d] - growth[d.saturating_sub(2)] < settings.delta_plateau;
    let verdict = if !witnesses.is_empty() {
        Verdict::Unbounded
    } else if parabolic_ends > 0 && interval.is_some() {
        Verdict::ParabolicEnds
    } else if parabolic_ends == 0 && errors == 0 && interval.is_some() && plateau {
        Verdict::Bounded
    } else {
        Verdict::Inconclusive
    };

    Ok(ProbeReport {
        settings: *settings,
        spectrum,
        random_palindrome_samples,
        interval,
        growth,
        sample_max_abs,
        parabolic_ends,
        errors,
        verdict,
        witnesses,
        jorgensen: jorgensen_baseline(rep),
    })
}
