//! Braided wiring diagrams: the projection of an arrangement's trace along
//! the vertical complex lines over a graphing map, read as a sequence of
//! actual vertices (singular points) and signed virtual crossings.

mod graphing;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactnum::{GaussianRational, Rational};
use crate::geometry::{Arrangement, GeometryError, SingularPoint};

pub use graphing::{build_graphing_map, GraphingMap, Piece};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WiringError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("two singular points share an abscissa")]
    DuplicateAbscissa,
    /// The chosen coordinates do not give a regular projection; retry with
    /// another coordinate change.
    #[error("irregular projection: {0}")]
    Irregular(String),
    #[error("wiring invariant violated: {0}")]
    Invariant(String),
}

/// Index of a line in its arrangement (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(pub usize);

/// Rank of a strand in the x2-ordering on a vertical line (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrandPos(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    /// Strands at positions `lo..=hi` meet at a singular point.
    Actual { lo: StrandPos, hi: StrandPos, point: SingularPoint },
    /// Strands at `pos` and `pos + 1` cross in projection only.
    Virtual { pos: StrandPos, sign: Sign },
}

/// One vertex of the diagram; positions refer to the order just before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiringEvent {
    pub t: Rational,
    pub kind: EventKind,
}

impl WiringEvent {
    pub fn is_actual(&self) -> bool {
        matches!(self.kind, EventKind::Actual { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiringDiagram {
    /// `initial_order[p]` is the line whose strand has rank `p` before every event.
    pub initial_order: Vec<LineId>,
    pub events: Vec<WiringEvent>,
}

impl WiringDiagram {
    pub fn n(&self) -> usize {
        self.initial_order.len()
    }

    pub fn actual_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_actual()).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.events.len() - self.actual_count()
    }

    /// Strand orders after each event, by reversing blocks and swapping pairs.
    pub fn replay(&self) -> Vec<Vec<LineId>> {
        let mut order = self.initial_order.clone();
        let mut out = Vec::with_capacity(self.events.len());
        for e in &self.events {
            apply_event(&mut order, &e.kind);
            out.push(order.clone());
        }
        out
    }

    pub fn final_order(&self) -> Vec<LineId> {
        self.replay().pop().unwrap_or_else(|| self.initial_order.clone())
    }
}

fn apply_event(order: &mut [LineId], kind: &EventKind) {
    match kind {
        EventKind::Actual { lo, hi, .. } => order[lo.0..=hi.0].reverse(),
        EventKind::Virtual { pos, .. } => order.swap(pos.0, pos.0 + 1),
    }
}

fn one_based(order: &[LineId]) -> String {
    order.iter().map(|l| (l.0 + 1).to_string()).collect::<Vec<_>>().join(",")
}

// Golden-stable text dump.
impl fmt::Display for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "STRANDS {} ORDER {}", self.n(), one_based(&self.initial_order))?;
        for e in &self.events {
            match &e.kind {
                EventKind::Actual { lo, hi, point } => writeln!(
                    f,
                    "ACTUAL t={} block={}..{} point=({},{})",
                    e.t,
                    lo.0 + 1,
                    hi.0 + 1,
                    point.z1,
                    point.z2
                )?,
                EventKind::Virtual { pos, sign } => writeln!(f, "VIRTUAL t={} pos={} sign={}", e.t, pos.0 + 1, sign)?,
            }
        }
        Ok(())
    }
}

/// Real-coordinate description of a strand `z2 = m z1 + β` over `z1 = t + i f(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    slope: GaussianRational,
    intercept: GaussianRational,
}

impl Strand {
    pub fn new(slope: GaussianRational, intercept: GaussianRational) -> Self {
        Self { slope, intercept }
    }

    /// `(x2, y2)` at parameter `t` where the graphing map takes value `ft`.
    pub fn at(&self, t: &Rational, ft: &Rational) -> (Rational, Rational) {
        let (m, b) = (&self.slope, &self.intercept);
        let x2 = &(&(&m.re * t) - &(&m.im * ft)) + &b.re;
        let y2 = &(&(&m.im * t) + &(&m.re * ft)) + &b.im;
        (x2, y2)
    }
}

fn strands_of(arr: &Arrangement) -> Result<Vec<Strand>, WiringError> {
    arr.lines()
        .iter()
        .map(|l| l.slope_intercept().map(|(m, b)| Strand::new(m, b)).map_err(WiringError::from))
        .collect()
}

/// Exact `(x2, y2)` of line `line`'s strand at abscissa `t`.
pub fn strand_position(arr: &Arrangement, line: LineId, t: &Rational, f: &GraphingMap) -> Result<(Rational, Rational), WiringError> {
    let (m, b) = arr.lines()[line.0].slope_intercept()?;
    Ok(Strand::new(m, b).at(t, &f.eval(t)))
}

/// Sign of a virtual crossing: positive when the strand moving up in x2
/// passes with the larger y2.
pub fn sign_virtual(ascending_y2: &Rational, descending_y2: &Rational) -> Result<Sign, WiringError> {
    match ascending_y2.cmp(descending_y2) {
        std::cmp::Ordering::Greater => Ok(Sign::Positive),
        std::cmp::Ordering::Less => Ok(Sign::Negative),
        std::cmp::Ordering::Equal => Err(WiringError::Invariant("virtual crossing with equal y2".into())),
    }
}

/// x2 ordering of all strands at `t`; fails on ties.
fn order_at(strands: &[Strand], f: &GraphingMap, t: &Rational) -> Result<Vec<LineId>, WiringError> {
    let ft = f.eval(t);
    let xs: Vec<Rational> = strands.iter().map(|s| s.at(t, &ft).0).collect();
    let mut order: Vec<LineId> = (0..strands.len()).map(LineId).collect();
    order.sort_by(|a, b| xs[a.0].cmp(&xs[b.0]));
    if order.windows(2).any(|w| xs[w[0].0] == xs[w[1].0]) {
        return Err(WiringError::Invariant(format!("strands tie at sample t={t}")));
    }
    Ok(order)
}

/// Crossing abscissae of strands `i` and `j`: zeros of the piecewise-affine
/// difference of their x2 coordinates at which the sign actually changes.
fn pair_crossings(
    si: &Strand,
    sj: &Strand,
    f: &GraphingMap,
    pieces: &[Piece],
    breaks: &[Rational],
    (i, j): (usize, usize),
) -> Result<Vec<Rational>, WiringError> {
    let dmr = &si.slope.re - &sj.slope.re;
    let dmi = &si.slope.im - &sj.slope.im;
    let dbr = &si.intercept.re - &sj.intercept.re;
    let mut roots = Vec::new();
    for piece in pieces {
        let a = &dmr - &(&dmi * &piece.slope);
        let b = &dbr - &(&dmi * &piece.offset);
        if a.is_zero() {
            if b.is_zero() {
                return Err(WiringError::Irregular(format!("strands of lines {} and {} coincide in projection", i + 1, j + 1)));
            }
            continue;
        }
        let root = (-b).checked_div(&a).expect("a is nonzero");
        if piece.contains(&root) {
            roots.push(root);
        }
    }
    roots.sort();
    roots.dedup();

    let diff = |t: &Rational| {
        let ft = f.eval(t);
        &si.at(t, &ft).0 - &sj.at(t, &ft).0
    };
    let mut critical: Vec<Rational> = breaks.iter().chain(roots.iter()).cloned().collect();
    critical.sort();
    critical.dedup();
    for root in &roots {
        let idx = critical.binary_search(root).expect("roots are critical");
        let left = match idx {
            0 => root - &Rational::one(),
            _ => critical[idx - 1].midpoint(root),
        };
        let right = match critical.get(idx + 1) {
            Some(next) => root.midpoint(next),
            None => root + &Rational::one(),
        };
        let (sl, sr) = (diff(&left).signum(), diff(&right).signum());
        if sl == 0 || sr == 0 {
            return Err(WiringError::Irregular(format!("strands of lines {} and {} coincide near t={root}", i + 1, j + 1)));
        }
        if sl == sr {
            return Err(WiringError::Irregular(format!("strands of lines {} and {} touch without crossing at t={root}", i + 1, j + 1)));
        }
    }
    Ok(roots)
}

/// Builds the diagram of a normalized arrangement over the graphing map `f`.
/// Irregular projections (simultaneous events, coincident or tangent strands,
/// non-contiguous actual blocks) are reported as [`WiringError::Irregular`].
pub fn compute_wiring_diagram(arr: &Arrangement, f: &GraphingMap) -> Result<WiringDiagram, WiringError> {
    let strands = strands_of(arr)?;
    let points = crate::geometry::singular_points(arr);
    let pieces = f.pieces();
    let breaks: Vec<Rational> = f.breakpoints().iter().map(|(t, _)| t.clone()).collect();

    let mut crossings: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..strands.len() {
        for j in i + 1..strands.len() {
            for t in pair_crossings(&strands[i], &strands[j], f, &pieces, &breaks, (i, j))? {
                crossings.entry(t).or_default().push((i, j));
            }
        }
    }

    let by_abscissa: BTreeMap<&Rational, &SingularPoint> = points.iter().map(|p| (&p.z1.re, p)).collect();
    if by_abscissa.len() != points.len() {
        return Err(WiringError::DuplicateAbscissa);
    }

    let times: Vec<&Rational> = crossings.keys().collect();
    let start = times.first().map_or_else(Rational::zero, |t| *t - &Rational::one());
    let initial_order = order_at(&strands, f, &start)?;
    let mut order = initial_order.clone();
    let mut events = Vec::with_capacity(crossings.len());

    for (idx, (t, pairs)) in crossings.iter().enumerate() {
        let ft = f.eval(t);
        let pos_of = |order: &[LineId], line: usize| order.iter().position(|l| l.0 == line).expect("every line has a strand");
        let kind = if let Some(point) = by_abscissa.get(t) {
            let inc = &point.incident;
            let mut expected = Vec::new();
            for a in 0..inc.len() {
                for b in a + 1..inc.len() {
                    expected.push((inc[a], inc[b]));
                }
            }
            let mut got = pairs.clone();
            got.sort();
            if got != expected {
                return Err(WiringError::Irregular(format!("crossings {got:?} at the abscissa t={t} of a singular point, expected {expected:?}")));
            }
            let z2 = &point.z2;
            for &l in inc {
                let (x2, y2) = strands[l].at(t, &ft);
                if x2 != z2.re || y2 != z2.im {
                    return Err(WiringError::Invariant(format!("line {} misses its singular point at t={t}", l + 1)));
                }
            }
            let mut positions: Vec<usize> = inc.iter().map(|&l| pos_of(&order, l)).collect();
            positions.sort();
            if positions.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(WiringError::Irregular(format!("actual block at t={t} is not contiguous")));
            }
            EventKind::Actual {
                lo: StrandPos(positions[0]),
                hi: StrandPos(*positions.last().expect("multiplicity >= 2")),
                point: (*point).clone(),
            }
        } else {
            let [(i, j)] = pairs.as_slice() else {
                return Err(WiringError::Irregular(format!("{} crossings share t={t}", pairs.len())));
            };
            let (pi, pj) = (pos_of(&order, *i), pos_of(&order, *j));
            if pi.abs_diff(pj) != 1 {
                return Err(WiringError::Irregular(format!("crossing strands at t={t} are not adjacent")));
            }
            let lo = pi.min(pj);
            let ascending = order[lo].0;
            let descending = order[lo + 1].0;
            let sign = sign_virtual(&strands[ascending].at(t, &ft).1, &strands[descending].at(t, &ft).1)?;
            EventKind::Virtual { pos: StrandPos(lo), sign }
        };
        apply_event(&mut order, &kind);
        let probe = match times.get(idx + 1) {
            Some(next) => t.midpoint(next),
            None => t + &Rational::one(),
        };
        if order_at(&strands, f, &probe)? != order {
            return Err(WiringError::Invariant(format!("replayed order disagrees with x2 order after t={t}")));
        }
        events.push(WiringEvent { t: t.clone(), kind });
    }

    let diagram = WiringDiagram { initial_order, events };
    if diagram.actual_count() != points.len() {
        return Err(WiringError::Invariant(format!(
            "{} actual events for {} singular points",
            diagram.actual_count(),
            points.len()
        )));
    }
    Ok(diagram)
}
