use crate::exactnum::Rational;
use crate::geometry::SingularPoint;

use super::WiringError;

/// Piecewise-linear `f: R → R` threading the imaginary parts of the
/// singular abscissae, constant on a plateau around each of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphingMap {
    breakpoints: Vec<(Rational, Rational)>,
    left_value: Rational,
    right_value: Rational,
}

/// One linear piece of a graphing map: `f(t) = slope·t + offset` on `[lo, hi]`
/// (unbounded where `None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
    pub slope: Rational,
    pub offset: Rational,
}

impl Piece {
    pub fn contains(&self, t: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo <= t) && self.hi.as_ref().is_none_or(|hi| t <= hi)
    }
}

impl GraphingMap {
    pub fn constant(value: Rational) -> Self {
        Self { breakpoints: Vec::new(), left_value: value.clone(), right_value: value }
    }

    /// Builds the map through `(x1, y1)` pairs. Plateaus have half-width
    /// a quarter of the smallest gap between consecutive abscissae (1 when
    /// there is at most one point); ramps between plateaus are single segments.
    pub fn through(points: &[(Rational, Rational)]) -> Result<Self, WiringError> {
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(WiringError::DuplicateAbscissa);
        }
        let Some(first) = pts.first() else {
            return Ok(Self::constant(Rational::zero()));
        };
        let quarter = Rational::new(1, 4).expect("nonzero denominator");
        let delta = pts
            .windows(2)
            .map(|w| &w[1].0 - &w[0].0)
            .min()
            .map_or_else(Rational::one, |gap| &gap * &quarter);
        let mut breakpoints = Vec::with_capacity(2 * pts.len());
        for (x, y) in &pts {
            breakpoints.push((x - &delta, y.clone()));
            breakpoints.push((x + &delta, y.clone()));
        }
        let last = pts.last().expect("nonempty");
        Ok(Self { left_value: first.1.clone(), right_value: last.1.clone(), breakpoints })
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn left_value(&self) -> &Rational {
        &self.left_value
    }

    pub fn right_value(&self) -> &Rational {
        &self.right_value
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let bp = &self.breakpoints;
        match bp.iter().position(|(x, _)| t < x) {
            None => self.right_value.clone(),
            Some(0) => self.left_value.clone(),
            Some(idx) => {
                let (x0, y0) = &bp[idx - 1];
                let (x1, y1) = &bp[idx];
                let slope = (y1 - y0).checked_div(&(x1 - x0)).expect("breakpoints are increasing");
                y0 + &(&slope * &(t - x0))
            }
        }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let bp = &self.breakpoints;
        if bp.is_empty() {
            return vec![Piece { lo: None, hi: None, slope: Rational::zero(), offset: self.left_value.clone() }];
        }
        let mut out = Vec::with_capacity(bp.len() + 1);
        out.push(Piece { lo: None, hi: Some(bp[0].0.clone()), slope: Rational::zero(), offset: self.left_value.clone() });
        for w in bp.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            let slope = (y1 - y0).checked_div(&(x1 - x0)).expect("breakpoints are increasing");
            let offset = y0 - &(&slope * x0);
            out.push(Piece { lo: Some(x0.clone()), hi: Some(x1.clone()), slope, offset });
        }
        let last = bp.last().expect("nonempty");
        out.push(Piece { lo: Some(last.0.clone()), hi: None, slope: Rational::zero(), offset: self.right_value.clone() });
        out
    }
}

/// Graphing map through the singular points' first coordinates `z1 = x1 + i y1`.
pub fn build_graphing_map(points: &[SingularPoint]) -> Result<GraphingMap, WiringError> {
    let pairs: Vec<_> = points.iter().map(|p| (p.z1.re.clone(), p.z1.im.clone())).collect();
    GraphingMap::through(&pairs)
}
