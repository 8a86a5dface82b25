//! End-to-end orchestration: normalize, build the wiring diagram (reseeding
//! on irregular projections), read off the presentation, decide freeness.

use crate::analysis::{decide_from_parts, FreenessVerdict};
use crate::error::{Error, Result};
use crate::geometry::{normalize, singular_points, Arrangement, CoordinateChange, GeometryError, SingularPoint, MAX_CANDIDATES};
use crate::presentation::{arvola_presentation, rebase_at_first_actual, Presentation, Rebased};
use crate::wiring::{build_graphing_map, compute_wiring_diagram, GraphingMap, WiringDiagram, WiringError};

/// A successfully built diagram together with the coordinates it lives in.
#[derive(Debug, Clone)]
pub struct WiringRun {
    pub normalized: Arrangement,
    pub change: CoordinateChange,
    /// Singular points in normalized coordinates.
    pub points: Vec<SingularPoint>,
    pub graphing: GraphingMap,
    pub diagram: WiringDiagram,
    /// Number of coordinate changes whose projection was rejected first.
    pub rejected: usize,
}

/// Scans coordinate-change candidates from index `seed` until one yields a
/// regular wiring diagram, trying at most [`MAX_CANDIDATES`] in total.
pub fn build_wiring(arr: &Arrangement, seed: usize) -> Result<WiringRun> {
    let limit = seed + MAX_CANDIDATES;
    let mut start = seed;
    let mut rejected = 0;
    while start < limit {
        let (normalized, change) = normalize(arr, start)?;
        if change.candidate >= limit {
            break;
        }
        let points = singular_points(&normalized);
        let graphing = build_graphing_map(&points)?;
        match compute_wiring_diagram(&normalized, &graphing) {
            Ok(diagram) => return Ok(WiringRun { normalized, change, points, graphing, diagram, rejected }),
            Err(WiringError::Irregular(_)) => {
                rejected += 1;
                start = change.candidate + 1;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(GeometryError::GenericityExhausted { start: seed, tried: MAX_CANDIDATES }.into())
}

#[derive(Debug, Clone)]
pub struct AffineAnalysis {
    /// Singular points in input coordinates.
    pub points: Vec<SingularPoint>,
    pub run: WiringRun,
    pub presentation: Presentation,
    pub rebased: Option<Rebased>,
    pub verdict: FreenessVerdict,
}

pub fn analyze_affine(arr: &Arrangement, seed: usize) -> Result<AffineAnalysis> {
    let points = singular_points(arr);
    let run = build_wiring(arr, seed)?;
    let presentation = arvola_presentation(&run.diagram)?;
    let rebased = match rebase_at_first_actual(&run.diagram) {
        Ok(r) => Some(r),
        Err(crate::presentation::PresentationError::NoActualVertex) => None,
        Err(e) => return Err(e.into()),
    };
    let verdict = decide_from_parts(arr, &run.diagram, rebased.as_ref())?;
    if verdict.is_free() != presentation.relators.is_empty() {
        return Err(Error::Invariant("verdict disagrees with relator count".into()));
    }
    Ok(AffineAnalysis { points, run, presentation, rebased, verdict })
}
