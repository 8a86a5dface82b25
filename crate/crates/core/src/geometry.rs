//! Affine line arrangements in C²: intersections, singular points, the
//! parallel test, and the generic coordinate change that puts an arrangement
//! into a form the wiring construction can consume.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::exactnum::{solve_linear_2, ExactError, GaussianRational, LinearSolution, Rational};

/// Maximum number of coordinate-change candidates tried before giving up.
pub const MAX_CANDIDATES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("arrangement has no lines")]
    Empty,
    #[error("lines {0} and {1} are equal")]
    DuplicateLine(usize, usize),
    #[error("the two lines are equal")]
    EqualLines,
    #[error("line is vertical (b = 0); normalize first")]
    VerticalLine,
    #[error("no generic coordinate change among {tried} candidates starting at index {start}")]
    GenericityExhausted { start: usize, tried: usize },
}

/// Locus `a z1 + b z2 + c = 0`, scaled so the first nonzero of `(a, b)` is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineLine {
    a: GaussianRational,
    b: GaussianRational,
    c: GaussianRational,
}

impl AffineLine {
    pub fn new(a: GaussianRational, b: GaussianRational, c: GaussianRational) -> Result<Self, GeometryError> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(ExactError::ZeroCoefficients.into());
        };
        let inv = lead.inv()?;
        Ok(Self { a: &a * &inv, b: &b * &inv, c: &c * &inv })
    }

    /// The line `z2 = slope z1 + intercept`.
    pub fn from_slope_intercept(slope: GaussianRational, intercept: GaussianRational) -> Self {
        Self::new(-slope, GaussianRational::one(), -intercept).expect("b = 1 is nonzero")
    }

    /// Convenience constructor from integer triples `(re, im)`.
    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Result<Self, GeometryError> {
        Self::new(
            GaussianRational::from_ints(a.0, a.1),
            GaussianRational::from_ints(b.0, b.1),
            GaussianRational::from_ints(c.0, c.1),
        )
    }

    pub fn a(&self) -> &GaussianRational {
        &self.a
    }

    pub fn b(&self) -> &GaussianRational {
        &self.b
    }

    pub fn c(&self) -> &GaussianRational {
        &self.c
    }

    pub fn contains(&self, z1: &GaussianRational, z2: &GaussianRational) -> bool {
        (&(&(&self.a * z1) + &(&self.b * z2)) + &self.c).is_zero()
    }

    /// Same projective slope `[a : b]`; structural thanks to canonical scaling.
    pub fn is_parallel_to(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }

    /// `(m, β)` with the line equal to `{z2 = m z1 + β}`.
    pub fn slope_intercept(&self) -> Result<(GaussianRational, GaussianRational), GeometryError> {
        if self.b.is_zero() {
            return Err(GeometryError::VerticalLine);
        }
        let inv = self.b.inv()?;
        Ok((-(&self.a * &inv), -(&self.c * &inv)))
    }
}

impl fmt::Display for AffineLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*z1 + ({})*z2 + ({}) = 0", self.a, self.b, self.c)
    }
}

pub fn intersect(l1: &AffineLine, l2: &AffineLine) -> Result<Option<(GaussianRational, GaussianRational)>, GeometryError> {
    match solve_linear_2((&l1.a, &l1.b, &l1.c), (&l2.a, &l2.b, &l2.c))? {
        LinearSolution::Point(z1, z2) => Ok(Some((z1, z2))),
        LinearSolution::Inconsistent => Ok(None),
        LinearSolution::Underdetermined => Err(GeometryError::EqualLines),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<AffineLine>,
}

impl Arrangement {
    pub fn new(lines: Vec<AffineLine>) -> Result<Self, GeometryError> {
        if lines.is_empty() {
            return Err(GeometryError::Empty);
        }
        let mut seen: HashMap<&AffineLine, usize> = HashMap::new();
        for (i, l) in lines.iter().enumerate() {
            if let Some(&j) = seen.get(l) {
                return Err(GeometryError::DuplicateLine(j, i));
            }
            seen.insert(l, i);
        }
        Ok(Self { lines })
    }

    /// Lines `z2 = m z1 + β` from `(m, β)` pairs.
    pub fn from_slopes(pairs: Vec<(GaussianRational, GaussianRational)>) -> Result<Self, GeometryError> {
        Self::new(pairs.into_iter().map(|(m, b)| AffineLine::from_slope_intercept(m, b)).collect())
    }

    pub fn lines(&self) -> &[AffineLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// A point of C² lying on at least two lines, with every line through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub z1: GaussianRational,
    pub z2: GaussianRational,
    /// Sorted 0-based line indices.
    pub incident: Vec<usize>,
}

impl SingularPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.z1.lex_cmp(&other.z1).then_with(|| self.z2.lex_cmp(&other.z2))
    }
}

/// All multiple points, ordered lexicographically by (re z1, im z1, re z2, im z2).
pub fn singular_points(arr: &Arrangement) -> Vec<SingularPoint> {
    let mut by_point: HashMap<(GaussianRational, GaussianRational), BTreeSet<usize>> = HashMap::new();
    let lines = arr.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = intersect(&lines[i], &lines[j]).expect("arrangement lines are distinct");
            if let Some(p) = p {
                let set = by_point.entry(p).or_default();
                set.insert(i);
                set.insert(j);
            }
        }
    }
    let mut points: Vec<SingularPoint> = by_point
        .into_iter()
        .map(|((z1, z2), inc)| SingularPoint { z1, z2, incident: inc.into_iter().collect() })
        .collect();
    points.sort_by(SingularPoint::lex_cmp);
    points
}

/// True iff every line has the same slope. Computed from the coefficients
/// alone, independently of [`singular_points`].
pub fn is_parallel_union(arr: &Arrangement) -> bool {
    let first = &arr.lines()[0];
    arr.lines().iter().all(|l| l.is_parallel_to(first))
}

/// The linear change `(z1, z2) ↦ (λ z1 + μ z2, κ z2)`. It maps vertical
/// lines to vertical lines; `κ` only turns the real projection `Re z2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateChange {
    pub scale: GaussianRational,
    pub shear: GaussianRational,
    pub turn: GaussianRational,
    /// Index of this candidate in [`change_candidate`]'s enumeration.
    pub candidate: usize,
}

impl CoordinateChange {
    pub fn identity() -> Self {
        change_candidate(0)
    }

    pub fn is_identity(&self) -> bool {
        self.scale == GaussianRational::one() && self.shear.is_zero() && self.turn == GaussianRational::one()
    }

    pub fn apply_point(&self, z1: &GaussianRational, z2: &GaussianRational) -> (GaussianRational, GaussianRational) {
        (&(&self.scale * z1) + &(&self.shear * z2), &self.turn * z2)
    }

    /// Image of a line: `a z1 + b z2 + c = 0` becomes `aκ z1' + (bλ − aμ) z2' + cλκ = 0`.
    pub fn apply_line(&self, l: &AffineLine) -> AffineLine {
        let b = &(&l.b * &self.scale) - &(&l.a * &self.shear);
        let c = &(&l.c * &self.scale) * &self.turn;
        AffineLine::new(&l.a * &self.turn, b, c).expect("the change is invertible")
    }

    pub fn apply(&self, arr: &Arrangement) -> Arrangement {
        Arrangement { lines: arr.lines.iter().map(|l| self.apply_line(l)).collect() }
    }
}

/// Deterministic enumeration of shear values: 0, then for each round r ≥ 1
/// the integers r, −r followed by Gaussian integers (even r) or halves (odd r).
#[derive(Debug, Clone, Default)]
pub struct ShearSequence {
    pending: std::collections::VecDeque<GaussianRational>,
    round: i64,
}

impl Iterator for ShearSequence {
    type Item = GaussianRational;

    fn next(&mut self) -> Option<GaussianRational> {
        if self.round == 0 {
            self.round = 1;
            self.pending.extend([GaussianRational::from_ints(1, 0), GaussianRational::from_ints(-1, 0)]);
            return Some(GaussianRational::zero());
        }
        if self.pending.is_empty() {
            self.round += 1;
            let r = self.round;
            self.pending.extend([GaussianRational::from_ints(r, 0), GaussianRational::from_ints(-r, 0)]);
            if r % 2 == 0 {
                let k = r / 2;
                self.pending.extend([GaussianRational::from_ints(k, 1), GaussianRational::from_ints(k, -1)]);
                if k >= 2 {
                    self.pending.extend([GaussianRational::from_ints(1, k), GaussianRational::from_ints(1, -k)]);
                }
            } else {
                let k = (r - 1) / 2;
                let half = Rational::new(2 * k - 1, 2).expect("nonzero denominator");
                self.pending.extend([GaussianRational::from_real(half.clone()), GaussianRational::from_real(-half)]);
            }
        }
        self.pending.pop_front()
    }
}

fn real_value(k: usize) -> Rational {
    ShearSequence::default().filter(GaussianRational::is_real).nth(k).expect("sequence is infinite").re
}

/// The `index`-th coordinate change tried by [`normalize`]; index 0 is the identity.
///
/// Odd indices are plain shears `λ = κ = 1`, `μ = r` with `r` running through
/// the real terms of [`ShearSequence`]; they keep real arrangements real. Even
/// indices lie on the curve `λ = 1 + t i`, `μ = 2t² + t³ i`, `κ = 1 − t i`.
/// A shear alone can neither separate singular points sharing their `z2`
/// coordinate nor move a horizontal strand off a singular point with the
/// same `Re z2`; along the curve each such condition fails for finitely many `t`.
pub fn change_candidate(index: usize) -> CoordinateChange {
    let one = GaussianRational::one();
    if index % 2 == 1 {
        let shear = GaussianRational::from_real(real_value(index.div_ceil(2)));
        return CoordinateChange { scale: one.clone(), shear, turn: one, candidate: index };
    }
    let t = real_value(index / 2);
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    CoordinateChange {
        scale: GaussianRational::new(Rational::one(), t.clone()),
        shear: GaussianRational::new(&t2 + &t2, t3),
        turn: GaussianRational::new(Rational::one(), -t),
        candidate: index,
    }
}

fn passes_genericity(arr: &Arrangement, points: &[(GaussianRational, GaussianRational)]) -> bool {
    // Assumption 1: no vertical lines.
    let Ok(si): Result<Vec<_>, _> = arr.lines().iter().map(AffineLine::slope_intercept).collect() else {
        return false;
    };
    // Assumption 2: distinct singular points have distinct Re(z1).
    let mut xs: Vec<&Rational> = points.iter().map(|(z1, _)| &z1.re).collect();
    xs.sort();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    // Projected strands must never coincide.
    for i in 0..si.len() {
        for j in i + 1..si.len() {
            let (mi, bi) = &si[i];
            let (mj, bj) = &si[j];
            if mi == mj {
                if bi.re == bj.re {
                    return false;
                }
            } else if mi.re == mj.re {
                return false;
            }
        }
    }
    true
}

/// Applies the first coordinate change, scanning candidates from index `seed`,
/// under which the arrangement has no vertical line, singular points with
/// distinct real abscissae, and non-coincident projected strands.
pub fn normalize(arr: &Arrangement, seed: usize) -> Result<(Arrangement, CoordinateChange), GeometryError> {
    let points: Vec<_> = singular_points(arr).into_iter().map(|p| (p.z1, p.z2)).collect();
    for index in seed..seed + MAX_CANDIDATES {
        let change = change_candidate(index);
        let moved = change.apply(arr);
        let moved_points: Vec<_> = points.iter().map(|(z1, z2)| change.apply_point(z1, z2)).collect();
        if passes_genericity(&moved, &moved_points) {
            return Ok((moved, change));
        }
    }
    Err(GeometryError::GenericityExhausted { start: seed, tried: MAX_CANDIDATES })
}

pub fn slope_intercept(l: &AffineLine) -> Result<(GaussianRational, GaussianRational), GeometryError> {
    l.slope_intercept()
}
