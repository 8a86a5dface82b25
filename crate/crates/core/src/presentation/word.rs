use std::fmt;

/// A generator or its inverse. `gen` is 0-based; text output is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Self { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Self) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.gen + 1)
        } else {
            write!(f, "g{}", self.gen + 1)
        }
    }
}

/// Freely reduced word in the free group; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gen(g: usize) -> Self {
        Self { letters: vec![Letter::new(g, false)] }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Self { letters: out }
    }

    /// `g^e` for a single generator, e.g. `power(0, 5)` is g1⁵.
    pub fn power(g: usize, e: i64) -> Self {
        let letter = Letter::new(g, e < 0);
        Self { letters: vec![letter; e.unsigned_abs() as usize] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            match letters.last() {
                Some(&top) if top.cancels(l) => {
                    letters.pop();
                }
                _ => letters.push(l),
            }
        }
        Self { letters }
    }

    /// Product of a sequence of words, left to right.
    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        words.into_iter().fold(Self::identity(), |acc, w| acc.concat(w))
    }

    /// `u^v = v⁻¹ u v`.
    pub fn conjugate_by(&self, v: &Self) -> Self {
        v.inverse().concat(self).concat(v)
    }

    /// Replaces every generator `g` by `images[g]`.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut out = Self::identity();
        for l in &self.letters {
            let img = &images[l.gen];
            out = if l.inverse { out.concat(&img.inverse()) } else { out.concat(img) };
        }
        out
    }

    /// If the word is `c⁻¹ g c` for a single generator letter `g`, returns `g`.
    pub fn conjugated_generator(&self) -> Option<Letter> {
        let n = self.letters.len();
        if n % 2 == 0 {
            return None;
        }
        let mid = n / 2;
        let core = self.letters[mid];
        let symmetric = (0..mid).all(|i| self.letters[i] == self.letters[n - 1 - i].inv());
        (symmetric && !core.inverse).then_some(core)
    }
}

pub fn concat(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

/// `v⁻¹ u v`.
pub fn conjugate(u: &Word, v: &Word) -> Word {
    u.conjugate_by(v)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
