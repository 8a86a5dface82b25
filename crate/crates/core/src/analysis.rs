//! Exponent sums, the commutator-presentation check built on them, the
//! rank-two free abelian subgroup witness and the freeness verdicts.
//!
//! Every relator produced by the wiring-diagram method is a commutator, so
//! each exponent sum is a homomorphism from the group to Z. Two words with
//! different exponent sums are therefore different group elements; this is
//! the only tool used to certify that the witness subgroup is Z ⊕ Z.

use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::{is_parallel_union, Arrangement};
use crate::pipeline::build_wiring;
use crate::presentation::{rebase_at_first_actual, Commutator, Letter, Presentation, Rebased, Word};
use crate::wiring::{EventKind, WiringDiagram};

/// `(σ_1, …, σ_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn of_letters(letters: &[Letter], n: usize) -> Self {
        let mut sums = vec![0; n];
        for l in letters {
            sums[l.gen] += l.exponent();
        }
        Self(sums)
    }

    pub fn of(word: &Word, n: usize) -> Self {
        Self::of_letters(word.letters(), n)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == 0)
    }
}

/// Exponent sum of generator `gen` (0-based) in `word`.
pub fn exponent_sum(word: &Word, gen: usize) -> i64 {
    exponent_sum_letters(word.letters(), gen)
}

/// Same as [`exponent_sum`] on an unreduced letter sequence.
pub fn exponent_sum_letters(letters: &[Letter], gen: usize) -> i64 {
    letters.iter().filter(|l| l.gen == gen).map(|l| l.exponent()).sum()
}

/// Checks the flattened relators rather than trusting the stored pairs.
pub fn validate_commutator_presentation(p: &Presentation) -> bool {
    validate_relator_words(&p.flattened_relators(), p.n_generators)
}

pub fn validate_relator_words(words: &[Word], n: usize) -> bool {
    words.iter().all(|w| w.letters().iter().all(|l| l.gen < n) && ExponentVector::of(w, n).is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Outcome {
    /// All exponent sums agree; nothing can be concluded.
    ConsistentSums,
    /// Exponent sums differ at this generator, so the words are different
    /// group elements.
    RefutedEquality(usize),
}

pub fn lemma1_check(a: &Word, b: &Word, p: &Presentation) -> Result<Lemma1Outcome> {
    if !validate_commutator_presentation(p) {
        return Err(Error::InvalidInput("relators are not all commutators".into()));
    }
    let n = p.n_generators;
    let (sa, sb) = (ExponentVector::of(a, n), ExponentVector::of(b, n));
    Ok(match (0..n).find(|&g| sa.0[g] != sb.0[g]) {
        Some(g) => Lemma1Outcome::RefutedEquality(g),
        None => Lemma1Outcome::ConsistentSums,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lemma1Report {
    pub trials: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub failures: usize,
}

fn random_letters<R: Rng>(n: usize, len: usize, rng: &mut R) -> Vec<Letter> {
    (0..len).map(|_| Letter::new(rng.random_range(0..n), rng.random_bool(0.5))).collect()
}

fn occurrences(haystack: &[Letter], needle: &[Letter]) -> Vec<usize> {
    if needle.is_empty() || needle.len() > haystack.len() {
        return Vec::new();
    }
    (0..=haystack.len() - needle.len()).filter(|&i| haystack[i..i + needle.len()] == *needle).collect()
}

/// Randomized check that inserting or deleting relators, their inverses,
/// and trivial relators `g g⁻¹` anywhere in a word leaves every exponent
/// sum unchanged.
pub fn lemma1_trials<R: Rng>(p: &Presentation, trials: usize, steps: usize, rng: &mut R) -> Lemma1Report {
    lemma1_trials_on_words(&p.flattened_relators(), p.n_generators, trials, steps, rng)
}

/// [`lemma1_trials`] over arbitrary relator words.
pub fn lemma1_trials_on_words<R: Rng>(relators: &[Word], n: usize, trials: usize, steps: usize, rng: &mut R) -> Lemma1Report {
    let n = n.max(1);
    let mut pieces: Vec<Vec<Letter>> = Vec::new();
    for r in relators {
        pieces.push(r.letters().to_vec());
        pieces.push(r.inverse().letters().to_vec());
    }
    for g in 0..n {
        pieces.push(vec![Letter::new(g, false), Letter::new(g, true)]);
        pieces.push(vec![Letter::new(g, true), Letter::new(g, false)]);
    }
    pieces.retain(|piece| !piece.is_empty());

    let mut report = Lemma1Report { trials, ..Default::default() };
    for _ in 0..trials {
        let len = rng.random_range(0..12);
        let mut word = random_letters(n, len, rng);
        let expected = ExponentVector::of_letters(&word, n);
        let mut failed = false;
        for _ in 0..steps {
            let deletable: Vec<(usize, usize)> = if rng.random_bool(0.5) {
                pieces
                    .iter()
                    .enumerate()
                    .flat_map(|(pi, piece)| occurrences(&word, piece).into_iter().map(move |at| (pi, at)))
                    .collect()
            } else {
                Vec::new()
            };
            if deletable.is_empty() {
                let piece = &pieces[rng.random_range(0..pieces.len())];
                let at = rng.random_range(0..=word.len());
                word.splice(at..at, piece.iter().copied());
                report.insertions += 1;
            } else {
                let (pi, at) = deletable[rng.random_range(0..deletable.len())];
                word.drain(at..at + pieces[pi].len());
                report.deletions += 1;
            }
            failed |= ExponentVector::of_letters(&word, n) != expected;
        }
        report.failures += usize::from(failed);
    }
    report
}

/// Record of why `⟨A, B⟩` is free abelian of rank two: `A^i0 B^j0 = A^i1 B^j1`
/// forces `i0 = i1` by the exponent sum at `coord_a` and `j0 = j1` by the one
/// at `coord_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessArgument {
    pub coord_a: usize,
    pub coord_b: usize,
    /// `σ_a(A)σ_b(B) − σ_b(A)σ_a(B)`, ±1 for a valid certificate.
    pub minor: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2Certificate {
    pub a: Word,
    pub b: Word,
    /// 0-based strand positions `(j, k)` of the first actual vertex.
    pub block: (usize, usize),
    pub sigma_a: ExponentVector,
    pub sigma_b: ExponentVector,
    pub argument: WitnessArgument,
}

impl Z2Certificate {
    /// Generator index of `A = g_k`.
    pub fn k(&self) -> usize {
        self.block.1
    }

    /// Re-derives everything checkable: the exponent vectors, the unimodular
    /// minor, commutation of `A` and `B` as the first relator of `p`, and
    /// that `p` is a commutator presentation.
    pub fn verify(&self, p: &Presentation) -> bool {
        let n = p.n_generators;
        let (ka, kb) = (self.argument.coord_a, self.argument.coord_b);
        if ka >= n || kb >= n || ExponentVector::of(&self.a, n) != self.sigma_a || ExponentVector::of(&self.b, n) != self.sigma_b {
            return false;
        }
        let (sa, sb) = (&self.sigma_a.0, &self.sigma_b.0);
        let minor = sa[ka] * sb[kb] - sa[kb] * sb[ka];
        let first = p.relators.first().map(|r| &r.commutator);
        minor == self.argument.minor
            && minor.abs() == 1
            && first == Some(&Commutator { a: self.a.clone(), b: self.b.clone() })
            && validate_commutator_presentation(p)
    }
}

/// Builds the certificate from a rebased presentation: the first actual
/// vertex joins positions `j..=k`, giving `A = g_k` and `B = g_{k−1} ⋯ g_j`.
pub fn z2_certificate_from(d: &WiringDiagram, rebased: &Rebased) -> Result<Z2Certificate> {
    let EventKind::Actual { lo, hi, .. } = &d.events[rebased.first_actual].kind else {
        return Err(Error::Invariant("first actual index points at a virtual event".into()));
    };
    let (j, k) = (lo.0, hi.0);
    let n = d.n();
    let a = Word::gen(k);
    let b = Word::product((j..k).rev().map(Word::gen).collect::<Vec<_>>().iter());
    let sigma_a = ExponentVector::of(&a, n);
    let sigma_b = ExponentVector::of(&b, n);
    let minor = sigma_a.0[k] * sigma_b.0[j] - sigma_a.0[j] * sigma_b.0[k];
    let cert = Z2Certificate { a, b, block: (j, k), sigma_a, sigma_b, argument: WitnessArgument { coord_a: k, coord_b: j, minor } };
    if !cert.verify(&rebased.presentation) {
        return Err(Error::Invariant("Z2 certificate failed verification".into()));
    }
    Ok(cert)
}

pub fn z2_witness_seeded(arr: &Arrangement, seed: usize) -> Result<Z2Certificate> {
    if is_parallel_union(arr) {
        return Err(Error::Inapplicable("no singular point; the Z2 witness does not apply".into()));
    }
    let run = build_wiring(arr, seed)?;
    let rebased = rebase_at_first_actual(&run.diagram)?;
    z2_certificate_from(&run.diagram, &rebased)
}

pub fn z2_witness(arr: &Arrangement) -> Result<Z2Certificate> {
    z2_witness_seeded(arr, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FreeOfRank(usize),
    NotFree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    ParallelGeometry,
    Z2(Z2Certificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessVerdict {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl FreenessVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self.verdict, Verdict::FreeOfRank(_))
    }

    pub fn certificate(&self) -> Option<&Z2Certificate> {
        match &self.evidence {
            Evidence::Z2(c) => Some(c),
            Evidence::ParallelGeometry => None,
        }
    }
}

/// Verdict from geometry, with the certificate drawn from an already built diagram.
pub(crate) fn decide_from_parts(arr: &Arrangement, d: &WiringDiagram, rebased: Option<&Rebased>) -> Result<FreenessVerdict> {
    if is_parallel_union(arr) {
        return Ok(FreenessVerdict { verdict: Verdict::FreeOfRank(arr.len()), evidence: Evidence::ParallelGeometry });
    }
    let rebased = rebased.ok_or_else(|| Error::Invariant("non-parallel arrangement without actual vertex".into()))?;
    let cert = z2_certificate_from(d, rebased)?;
    Ok(FreenessVerdict { verdict: Verdict::NotFree, evidence: Evidence::Z2(cert) })
}

/// Free of rank n exactly for parallel families; otherwise not free, with a
/// Z ⊕ Z certificate (a free group has only free subgroups).
pub fn decide_free_affine(arr: &Arrangement, seed: usize) -> Result<FreenessVerdict> {
    if is_parallel_union(arr) {
        return Ok(FreenessVerdict { verdict: Verdict::FreeOfRank(arr.len()), evidence: Evidence::ParallelGeometry });
    }
    let cert = z2_witness_seeded(arr, seed)?;
    Ok(FreenessVerdict { verdict: Verdict::NotFree, evidence: Evidence::Z2(cert) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussianRational;
    use crate::geometry::AffineLine;
    use crate::presentation::Relator;
    use rand::SeedableRng;

    fn g(i: usize) -> Word {
        Word::gen(i - 1)
    }

    fn arr(slopes: &[(&str, &str)]) -> Arrangement {
        let gq = |s: &str| s.parse::<GaussianRational>().unwrap();
        Arrangement::new(slopes.iter().map(|(m, b)| AffineLine::from_slope_intercept(gq(m), gq(b))).collect()).unwrap()
    }

    fn commutator_presentation(n: usize, pairs: Vec<(Word, Word)>) -> Presentation {
        Presentation {
            n_generators: n,
            relators: pairs.into_iter().map(|(a, b)| Relator { commutator: Commutator { a, b }, source_event: 0 }).collect(),
        }
    }

    #[test]
    fn worked_exponent_sum() {
        // b1^5 b2 b1^-1 b2^-3 b1^-1, kept unreduced.
        let mut letters = vec![Letter::new(0, false); 5];
        letters.push(Letter::new(1, false));
        letters.push(Letter::new(0, true));
        letters.extend(vec![Letter::new(1, true); 3]);
        letters.push(Letter::new(0, true));
        assert_eq!(exponent_sum_letters(&letters, 0), 3);
        assert_eq!(exponent_sum_letters(&letters, 1), -2);
        let w = Word::from_letters(letters);
        assert_eq!((exponent_sum(&w, 0), exponent_sum(&w, 1)), (3, -2));
        assert_eq!(exponent_sum(&Word::identity(), 0), 0);
    }

    #[test]
    fn validation() {
        let good = commutator_presentation(2, vec![(g(2), g(1))]);
        assert!(validate_commutator_presentation(&good));
        let bad = g(1).concat(&g(2)).concat(&g(1).inverse());
        assert!(!validate_relator_words(&[bad], 2));
    }

    #[test]
    fn lemma1_examples() {
        let p = commutator_presentation(2, vec![(g(2), g(1))]);
        assert_eq!(lemma1_check(&g(1), &Word::identity(), &p).unwrap(), Lemma1Outcome::RefutedEquality(0));
        assert_eq!(lemma1_check(&g(2), &g(2), &p).unwrap(), Lemma1Outcome::ConsistentSums);
        let (ab, ba) = (g(1).concat(&g(2)), g(2).concat(&g(1)));
        assert_eq!(lemma1_check(&ab, &ba, &p).unwrap(), Lemma1Outcome::ConsistentSums);
    }

    #[test]
    fn lemma1_trials_on_pencil() {
        let p = commutator_presentation(3, vec![(g(3), g(2).concat(&g(1))), (g(2), g(1).concat(&g(3)))]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let report = lemma1_trials(&p, 500, 6, &mut rng);
        assert_eq!(report.failures, 0);
        assert!(report.insertions > 0 && report.deletions > 0);
    }

    #[test]
    fn lemma1_trials_detect_non_commutator_relator() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let report = lemma1_trials_on_words(&[g(1).concat(&g(2))], 2, 200, 4, &mut rng);
        assert!(report.failures > 0);
    }

    #[test]
    fn witness_crossing_pair() {
        let cert = z2_witness(&arr(&[("0", "0"), ("1", "0")])).unwrap();
        assert_eq!((cert.a.clone(), cert.b.clone()), (g(2), g(1)));
        assert_eq!(cert.sigma_a, ExponentVector(vec![0, 1]));
        assert_eq!(cert.sigma_b, ExponentVector(vec![1, 0]));
        assert_eq!(cert.argument.minor.abs(), 1);
    }

    #[test]
    fn witness_pencil() {
        let cert = z2_witness(&arr(&[("0", "0"), ("1", "0"), ("-1", "0")])).unwrap();
        assert_eq!(cert.a, g(3));
        assert_eq!(cert.b, g(2).concat(&g(1)));
        assert_eq!(cert.sigma_a, ExponentVector(vec![0, 0, 1]));
        assert_eq!(cert.sigma_b, ExponentVector(vec![1, 1, 0]));
    }

    #[test]
    fn witness_refuses_parallel() {
        assert!(matches!(z2_witness(&arr(&[("0", "0"), ("0", "1")])), Err(Error::Inapplicable(_))));
    }

    #[test]
    fn verdicts() {
        let par = arr(&[("0", "0"), ("0", "1"), ("0", "2"), ("0", "3")]);
        assert_eq!(decide_free_affine(&par, 0).unwrap().verdict, Verdict::FreeOfRank(4));
        let cross = decide_free_affine(&arr(&[("0", "0"), ("1", "0")]), 0).unwrap();
        assert_eq!(cross.verdict, Verdict::NotFree);
        assert!(cross.certificate().is_some());
        let generic = decide_free_affine(&arr(&[("0", "0"), ("1", "1"), ("-1", "3")]), 0).unwrap();
        assert_eq!(generic.verdict, Verdict::NotFree);
        let single = decide_free_affine(&arr(&[("2", "i")]), 0).unwrap();
        assert_eq!(single.verdict, Verdict::FreeOfRank(1));
    }
}
