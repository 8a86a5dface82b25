//! Free-group words and the rewriting engine that walks a wiring diagram,
//! carrying one word per strand and emitting commutator relators at each
//! actual vertex.

mod word;

use std::fmt;

use crate::wiring::{EventKind, Sign, StrandPos, WiringDiagram};

pub use word::{concat, conjugate, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("strand positions {lo}..{hi} out of range for {n} strands")]
    Bounds { lo: usize, hi: usize, n: usize },
    #[error("diagram has no actual vertex (the arrangement is parallel); rebasing is meaningless")]
    NoActualVertex,
}

/// Words attached to the strands of a vertical line, indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTuple(pub Vec<Word>);

impl WordTuple {
    /// `(g1, …, gn)`.
    pub fn generators(n: usize) -> Self {
        Self((0..n).map(Word::gen).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, pos: StrandPos) -> &Word {
        &self.0[pos.0]
    }
}

/// `[u1, …, uh]`: all cyclic rotations of `u1 ⋯ uh` are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicRelation {
    pub words: Vec<Word>,
}

/// The relator `a b a⁻¹ b⁻¹`, kept as its pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutator {
    pub a: Word,
    pub b: Word,
}

impl Commutator {
    pub fn flatten(&self) -> Word {
        Word::product([&self.a, &self.b, &self.a.inverse(), &self.b.inverse()])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub commutator: Commutator,
    /// Index of the diagram event (an actual vertex) that produced it.
    pub source_event: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub n_generators: usize,
    pub relators: Vec<Relator>,
}

impl Presentation {
    pub fn free(n: usize) -> Self {
        Self { n_generators: n, relators: Vec::new() }
    }

    pub fn commutators(&self) -> impl Iterator<Item = &Commutator> {
        self.relators.iter().map(|r| &r.commutator)
    }

    pub fn flattened_relators(&self) -> Vec<Word> {
        self.commutators().map(Commutator::flatten).collect()
    }
}

// `gens n`, then one `[ a , b ]` line per relator.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.n_generators)?;
        for r in &self.relators {
            writeln!(f, "[ {} , {} ]", r.commutator.a, r.commutator.b)?;
        }
        Ok(())
    }
}

/// Passes an actual vertex joining positions `lo..=hi`: the block is
/// reversed and conjugated, and the relation is read from the incoming words.
pub fn apply_actual(tuple: &WordTuple, lo: StrandPos, hi: StrandPos) -> Result<(WordTuple, CyclicRelation), PresentationError> {
    let (j, k) = (lo.0, hi.0);
    if j >= k || k >= tuple.len() {
        return Err(PresentationError::Bounds { lo: j, hi: k, n: tuple.len() });
    }
    let w = &tuple.0;
    // primed[s] = w_{j+s} conjugated by w_{j+s-1} ⋯ w_j
    let mut primed = Vec::with_capacity(k - j + 1);
    let mut tail = Word::identity();
    for word in &w[j..=k] {
        primed.push(word.conjugate_by(&tail));
        tail = word.concat(&tail);
    }
    let mut out = w.clone();
    for (slot, word) in out[j..=k].iter_mut().zip(primed.into_iter().rev()) {
        *slot = word;
    }
    let relation = CyclicRelation { words: w[j..=k].iter().rev().cloned().collect() };
    Ok((WordTuple(out), relation))
}

/// Passes a virtual crossing of positions `pos` and `pos + 1`.
pub fn apply_virtual(tuple: &WordTuple, pos: StrandPos, sign: Sign) -> Result<WordTuple, PresentationError> {
    let j = pos.0;
    if j + 1 >= tuple.len() {
        return Err(PresentationError::Bounds { lo: j, hi: j + 1, n: tuple.len() });
    }
    let (wj, wj1) = (&tuple.0[j], &tuple.0[j + 1]);
    let (new_lo, new_hi) = match sign {
        Sign::Positive => (wj1.conjugate_by(wj), wj.clone()),
        Sign::Negative => (wj1.clone(), wj.conjugate_by(&wj1.inverse())),
    };
    let mut out = tuple.0.clone();
    out[j] = new_lo;
    out[j + 1] = new_hi;
    Ok(WordTuple(out))
}

/// Undoes [`apply_virtual`]: recovers the incoming pair from the outgoing one.
pub fn unapply_virtual(tuple: &WordTuple, pos: StrandPos, sign: Sign) -> Result<WordTuple, PresentationError> {
    let j = pos.0;
    if j + 1 >= tuple.len() {
        return Err(PresentationError::Bounds { lo: j, hi: j + 1, n: tuple.len() });
    }
    // After the crossing, slot j carries w_{j+1}' and slot j+1 carries w_j'.
    let (next_hi, next_lo) = (&tuple.0[j], &tuple.0[j + 1]);
    let (wj, wj1) = match sign {
        // w_j = w_j', w_{j+1} = w_j' w_{j+1}' w_j'⁻¹
        Sign::Positive => (next_lo.clone(), next_hi.conjugate_by(&next_lo.inverse())),
        // w_{j+1} = w_{j+1}', w_j = w_{j+1}'⁻¹ w_j' w_{j+1}'
        Sign::Negative => (next_lo.conjugate_by(next_hi), next_hi.clone()),
    };
    let mut out = tuple.0.clone();
    out[j] = wj;
    out[j + 1] = wj1;
    Ok(WordTuple(out))
}

/// Rewrites `[u1, …, uh]` as the h−1 commutator relations
/// `u_r · (u_{r+1} ⋯ u_h u_1 ⋯ u_{r−1}) = (u_{r+1} ⋯ u_{r−1}) · u_r`.
pub fn expand_cyclic(rel: &CyclicRelation) -> Vec<Commutator> {
    let u = &rel.words;
    let h = u.len();
    (0..h.saturating_sub(1))
        .map(|r| Commutator {
            a: u[r].clone(),
            b: Word::product(u[r + 1..].iter().chain(u[..r].iter())),
        })
        .collect()
}

fn fold_events(d: &WiringDiagram, from: usize, mut tuple: WordTuple) -> Result<Vec<Relator>, PresentationError> {
    let mut relators = Vec::new();
    for (idx, event) in d.events.iter().enumerate().skip(from) {
        tuple = match &event.kind {
            EventKind::Actual { lo, hi, .. } => {
                let (next, relation) = apply_actual(&tuple, *lo, *hi)?;
                relators.extend(
                    expand_cyclic(&relation).into_iter().map(|commutator| Relator { commutator, source_event: idx }),
                );
                next
            }
            EventKind::Virtual { pos, sign } => apply_virtual(&tuple, *pos, *sign)?,
        };
    }
    Ok(relators)
}

/// Reads the presentation off the diagram, with `g_p` attached to the strand
/// of rank `p` before the first event.
pub fn arvola_presentation(d: &WiringDiagram) -> Result<Presentation, PresentationError> {
    let n = d.n();
    Ok(Presentation { n_generators: n, relators: fold_events(d, 0, WordTuple::generators(n))? })
}

/// Presentation on generators taken just before the first actual vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rebased {
    pub presentation: Presentation,
    /// `substitution[i]`: original generator `g_{i+1}` as a word in the new generators.
    pub substitution: Vec<Word>,
    /// `images[p]`: new generator `p` as a word in the original generators.
    pub images: Vec<Word>,
    /// Event index of the first actual vertex.
    pub first_actual: usize,
}

pub fn rebase_at_first_actual(d: &WiringDiagram) -> Result<Rebased, PresentationError> {
    let n = d.n();
    let first_actual = d.events.iter().position(|e| e.is_actual()).ok_or(PresentationError::NoActualVertex)?;

    let mut images = WordTuple::generators(n);
    for e in &d.events[..first_actual] {
        if let EventKind::Virtual { pos, sign } = e.kind {
            images = apply_virtual(&images, pos, sign)?;
        }
    }

    let mut back = WordTuple::generators(n);
    for e in d.events[..first_actual].iter().rev() {
        if let EventKind::Virtual { pos, sign } = e.kind {
            back = unapply_virtual(&back, pos, sign)?;
        }
    }

    let relators = fold_events(d, first_actual, WordTuple::generators(n))?;
    Ok(Rebased {
        presentation: Presentation { n_generators: n, relators },
        substitution: back.0,
        images: images.0,
        first_actual,
    })
}
