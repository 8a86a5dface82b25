//! Hyperplane arrangements in CP^{m+2}: the rank criterion for freeness,
//! deconing a line arrangement in CP² to C², and sections by generic 2-planes.

use crate::analysis::{decide_free_affine, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{ExactError, ExactMatrix, GaussianRational};
use crate::geometry::{AffineLine, Arrangement, ShearSequence, MAX_CANDIDATES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectiveError {
    #[error("hyperplane has all coefficients zero")]
    ZeroHyperplane,
    #[error("hyperplane {index} has {got} coefficients, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, got: usize },
    #[error("hyperplanes {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("arrangement has no hyperplanes")]
    Empty,
    #[error("index {index} out of range for {n} hyperplanes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("operation needs m = {expected}, arrangement has m = {got}")]
    WrongAmbient { expected: &'static str, got: usize },
    #[error("operation needs at least {need} hyperplanes, got {got}")]
    TooFew { need: usize, got: usize },
    #[error("no generic 2-plane among {tried} candidates from seed {start}")]
    SectionExhausted { start: usize, tried: usize },
}

fn dot(u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
    u.iter().zip(v).fold(GaussianRational::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// A homogeneous linear form, scaled so its first nonzero coefficient is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectiveHyperplane {
    coeffs: Vec<GaussianRational>,
}

impl ProjectiveHyperplane {
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self, ProjectiveError> {
        let lead = coeffs.iter().find(|c| !c.is_zero()).ok_or(ProjectiveError::ZeroHyperplane)?;
        let inv = lead.inv().expect("nonzero");
        Ok(Self { coeffs: coeffs.iter().map(|c| c * &inv).collect() })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, ProjectiveError> {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn contains(&self, x: &[GaussianRational]) -> bool {
        dot(&self.coeffs, x).is_zero()
    }
}

/// Pairwise distinct hyperplanes in CP^{m+2}, each given by m+3 coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveArrangement {
    m: usize,
    hyperplanes: Vec<ProjectiveHyperplane>,
}

impl ProjectiveArrangement {
    pub fn new(m: usize, hyperplanes: Vec<ProjectiveHyperplane>) -> Result<Self, ProjectiveError> {
        if hyperplanes.is_empty() {
            return Err(ProjectiveError::Empty);
        }
        for (index, h) in hyperplanes.iter().enumerate() {
            if h.coeffs.len() != m + 3 {
                return Err(ProjectiveError::DimensionMismatch { index, expected: m + 3, got: h.coeffs.len() });
            }
        }
        for i in 0..hyperplanes.len() {
            for j in i + 1..hyperplanes.len() {
                if hyperplanes[i] == hyperplanes[j] {
                    return Err(ProjectiveError::Duplicate(i, j));
                }
            }
        }
        Ok(Self { m, hyperplanes })
    }

    pub fn from_ints(m: usize, rows: &[&[i64]]) -> Result<Self, ProjectiveError> {
        let hs = rows.iter().map(|r| ProjectiveHyperplane::from_ints(r)).collect::<Result<_, _>>()?;
        Self::new(m, hs)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn hyperplanes(&self) -> &[ProjectiveHyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn coefficient_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows(self.hyperplanes.iter().map(|h| h.coeffs.clone()).collect()).expect("rows have equal length")
    }

    /// The arrangement in coordinates `y` with `x = A y`: each form `c` becomes `c A`.
    pub fn pull_back(&self, a: &ExactMatrix) -> Result<Self> {
        let n = self.m + 3;
        if a.rows() != n || a.cols() != n {
            return Err(ExactError::NotSquare { rows: a.rows(), cols: a.cols() }.into());
        }
        if a.inverse()?.is_none() {
            return Err(Error::InvalidInput("coordinate change is singular".into()));
        }
        let moved = self.coefficient_matrix().mul(a)?;
        let hs = (0..moved.rows()).map(|r| ProjectiveHyperplane::new(moved.row(r).to_vec())).collect::<Result<_, _>>()?;
        Ok(Self::new(self.m, hs)?)
    }
}

fn rank_of(rows: &[&[GaussianRational]]) -> usize {
    ExactMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rows have equal length").rank()
}

/// Projective dimension of the common intersection; −1 when it is empty.
pub fn intersection_dimension(arr: &ProjectiveArrangement) -> i64 {
    (arr.m as i64 + 3) - arr.coefficient_matrix().rank() as i64 - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectiveVerdict {
    /// One hyperplane: the complement is an affine space.
    Trivial,
    /// Two hyperplanes: the group is Z.
    InfiniteCyclic,
    FreeOfRank(usize),
    NotFree,
}

impl ProjectiveVerdict {
    /// Rank as a free group, with the trivial group free of rank 0 and Z of rank 1.
    pub fn free_rank(self) -> Option<usize> {
        match self {
            Self::Trivial => Some(0),
            Self::InfiniteCyclic => Some(1),
            Self::FreeOfRank(r) => Some(r),
            Self::NotFree => None,
        }
    }

    pub fn agrees_with_affine(self, v: Verdict) -> bool {
        match v {
            Verdict::FreeOfRank(r) => self.free_rank() == Some(r),
            Verdict::NotFree => self == Self::NotFree,
        }
    }
}

/// Free of rank n−1 exactly when the hyperplanes share a subspace of dimension at least m.
pub fn decide_free_projective(arr: &ProjectiveArrangement) -> ProjectiveVerdict {
    match arr.len() {
        1 => ProjectiveVerdict::Trivial,
        2 => ProjectiveVerdict::InfiniteCyclic,
        n if intersection_dimension(arr) >= arr.m as i64 => ProjectiveVerdict::FreeOfRank(n - 1),
        _ => ProjectiveVerdict::NotFree,
    }
}

/// Sends line `at` to infinity and dehomogenizes the others, in input order.
///
/// New coordinates are `w = M x`, where the last row of `M` is the form of
/// line `at` and the others are standard basis rows skipping its leading
/// coefficient. A form `c` becomes `c M⁻¹`.
pub fn decone(arr: &ProjectiveArrangement, at: usize) -> Result<Arrangement> {
    if arr.m != 0 {
        return Err(ProjectiveError::WrongAmbient { expected: "0", got: arr.m }.into());
    }
    if arr.len() < 2 {
        return Err(ProjectiveError::TooFew { need: 2, got: arr.len() }.into());
    }
    let ell = arr.hyperplanes.get(at).ok_or(ProjectiveError::IndexOutOfRange { index: at, n: arr.len() })?;
    let lead = ell.coeffs.iter().position(|c| !c.is_zero()).expect("hyperplane is nonzero");
    let mut rows: Vec<Vec<GaussianRational>> = (0..3)
        .filter(|&i| i != lead)
        .map(|i| (0..3).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }).collect())
        .collect();
    rows.push(ell.coeffs.clone());
    let m_inv = ExactMatrix::from_rows(rows)?.inverse()?.ok_or_else(|| Error::Invariant("decone matrix is singular".into()))?;
    let mut lines = Vec::with_capacity(arr.len() - 1);
    for (i, h) in arr.hyperplanes.iter().enumerate() {
        if i == at {
            continue;
        }
        let row = ExactMatrix::from_rows(vec![h.coeffs.clone()])?.mul(&m_inv)?;
        let c = row.row(0);
        lines.push(AffineLine::new(c[0].clone(), c[1].clone(), c[2].clone())?);
    }
    Ok(Arrangement::new(lines)?)
}

/// A projective 2-plane, the span of three independent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionPlane {
    basis: [Vec<GaussianRational>; 3],
    /// Candidate index in the seed-indexed family.
    pub candidate: usize,
}

impl SectionPlane {
    pub fn new(basis: [Vec<GaussianRational>; 3], candidate: usize) -> Option<Self> {
        (rank_of(&[&basis[0], &basis[1], &basis[2]]) == 3).then_some(Self { basis, candidate })
    }

    pub fn basis(&self) -> &[Vec<GaussianRational>; 3] {
        &self.basis
    }

    /// Pullback of a form to the plane's coordinates `(u0, u1, u2) ↦ Σ u_r b_r`.
    pub fn restrict(&self, h: &ProjectiveHyperplane) -> Vec<GaussianRational> {
        self.basis.iter().map(|b| dot(&h.coeffs, b)).collect()
    }
}

/// The `candidate`-th plane: entry `(r, c)` is term `1 + candidate·3(m+3) + r(m+3) + c`
/// of the shear sequence used by normalization.
fn section_candidate(m: usize, candidate: usize) -> Option<SectionPlane> {
    let width = m + 3;
    let mut values = ShearSequence::default().skip(1 + candidate * 3 * width);
    let mut row = || (0..width).map(|_| values.next().expect("sequence is infinite")).collect::<Vec<_>>();
    let basis = [row(), row(), row()];
    SectionPlane::new(basis, candidate)
}

/// Checks the section conditions: every `H_i` cuts the plane in a line, every
/// pair in a point, every triple with `dim(H_i ∩ H_j ∩ H_k) < m` in nothing,
/// and, when `dim ∩H_i = m`, the plane meets that intersection in a point.
pub fn is_generic_section(arr: &ProjectiveArrangement, plane: &SectionPlane) -> bool {
    let forms: Vec<Vec<GaussianRational>> = arr.hyperplanes.iter().map(|h| plane.restrict(h)).collect();
    let full: Vec<&[GaussianRational]> = arr.hyperplanes.iter().map(|h| h.coeffs.as_slice()).collect();
    let n = forms.len();
    let m = arr.m as i64;
    if forms.iter().any(|f| f.iter().all(GaussianRational::is_zero)) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            if rank_of(&[&forms[i], &forms[j]]) != 2 {
                return false;
            }
            for k in j + 1..n {
                let dim = m + 2 - rank_of(&[full[i], full[j], full[k]]) as i64;
                if dim < m && rank_of(&[&forms[i], &forms[j], &forms[k]]) != 3 {
                    return false;
                }
            }
        }
    }
    if intersection_dimension(arr) == m {
        let all: Vec<&[GaussianRational]> = forms.iter().map(Vec::as_slice).collect();
        if rank_of(&all) != 2 {
            return false;
        }
    }
    true
}

/// First plane of the seed-indexed family passing [`is_generic_section`],
/// with the induced arrangement of lines in the plane's coordinates.
pub fn generic_section(arr: &ProjectiveArrangement, seed: usize) -> Result<(SectionPlane, ProjectiveArrangement)> {
    if arr.m == 0 {
        return Err(ProjectiveError::WrongAmbient { expected: "≥ 1", got: 0 }.into());
    }
    for candidate in seed..seed + MAX_CANDIDATES {
        let Some(plane) = section_candidate(arr.m, candidate) else {
            continue;
        };
        if !is_generic_section(arr, &plane) {
            continue;
        }
        let lines = arr.hyperplanes.iter().map(|h| ProjectiveHyperplane::new(plane.restrict(h))).collect::<Result<_, _>>()?;
        return Ok((plane, ProjectiveArrangement::new(0, lines)?));
    }
    Err(ProjectiveError::SectionExhausted { start: seed, tried: MAX_CANDIDATES }.into())
}

/// Compares the rank criterion in CP^{m+2} with the criterion on a generic section.
pub fn cross_validate_theorem4(arr: &ProjectiveArrangement, seed: usize) -> Result<bool> {
    if arr.len() < 3 {
        return Err(ProjectiveError::TooFew { need: 3, got: arr.len() }.into());
    }
    let (_, section) = generic_section(arr, seed)?;
    Ok(decide_free_projective(arr) == decide_free_projective(&section))
}

/// Checks that deconing at every line and deciding in C² matches the projective verdict.
pub fn cross_validate_decone(arr: &ProjectiveArrangement, seed: usize) -> Result<bool> {
    let expected = decide_free_projective(arr);
    for at in 0..arr.len() {
        if !expected.agrees_with_affine(decide_free_affine(&decone(arr, at)?, seed)?.verdict) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{is_parallel_union, singular_points};

    fn pa(m: usize, rows: &[&[i64]]) -> ProjectiveArrangement {
        ProjectiveArrangement::from_ints(m, rows).unwrap()
    }

    fn pencil(n: i64) -> ProjectiveArrangement {
        // Lines x + k y = 0 through (0 : 0 : 1).
        let rows: Vec<Vec<i64>> = (0..n).map(|k| vec![1, k, 0]).collect();
        pa(0, &rows.iter().map(Vec::as_slice).collect::<Vec<_>>())
    }

    fn triangle() -> ProjectiveArrangement {
        pa(0, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    #[test]
    fn canonical_scaling_and_validation() {
        let h = ProjectiveHyperplane::from_ints(&[0, 2, 4]).unwrap();
        assert_eq!(h.coeffs()[1], GaussianRational::one());
        assert_eq!(h.coeffs()[2], GaussianRational::from(2));
        assert_eq!(ProjectiveHyperplane::from_ints(&[0, 0, 0]), Err(ProjectiveError::ZeroHyperplane));
        assert_eq!(ProjectiveArrangement::from_ints(0, &[&[1, 2, 3], &[2, 4, 6]]), Err(ProjectiveError::Duplicate(0, 1)));
        assert!(matches!(ProjectiveArrangement::from_ints(1, &[&[1, 2, 3]]), Err(ProjectiveError::DimensionMismatch { .. })));
    }

    #[test]
    fn intersection_dimension_examples() {
        assert_eq!(intersection_dimension(&pa(0, &[&[1, 0, 0]])), 1);
        assert_eq!(intersection_dimension(&pa(2, &[&[1, 0, 0, 0, 0]])), 3);
        assert_eq!(intersection_dimension(&pa(1, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])), 1);
        assert_eq!(intersection_dimension(&pencil(3)), 0);
        assert_eq!(intersection_dimension(&triangle()), -1);
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(decide_free_projective(&pencil(5)), ProjectiveVerdict::FreeOfRank(4));
        assert_eq!(decide_free_projective(&triangle()), ProjectiveVerdict::NotFree);
        assert_eq!(decide_free_projective(&pencil(1)), ProjectiveVerdict::Trivial);
        assert_eq!(decide_free_projective(&pencil(2)), ProjectiveVerdict::InfiniteCyclic);
        // Four planes in CP³ through the line x0 = x1 = 0.
        let cp3 = pa(1, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0], &[1, 2, 0, 0]]);
        assert_eq!(decide_free_projective(&cp3), ProjectiveVerdict::FreeOfRank(3));
    }

    #[test]
    fn decone_pencil_is_parallel() {
        for at in 0..3 {
            let a = decone(&pencil(3), at).unwrap();
            assert_eq!(a.len(), 2);
            assert!(is_parallel_union(&a));
        }
    }

    #[test]
    fn decone_triangle_crosses_once() {
        for at in 0..3 {
            let a = decone(&triangle(), at).unwrap();
            assert_eq!(singular_points(&a).len(), 1);
        }
        // Sending z = 0 to infinity leaves x = 0 and y = 0 crossing at the origin.
        let a = decone(&triangle(), 2).unwrap();
        let p = &singular_points(&a)[0];
        assert!(p.z1.is_zero() && p.z2.is_zero());
    }

    #[test]
    fn decone_errors_and_two_lines() {
        assert_eq!(decone(&pencil(2), 0).unwrap().len(), 1);
        assert!(decone(&pencil(3), 3).is_err());
        assert!(decone(&pa(1, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]), 0).is_err());
    }

    #[test]
    fn decone_matches_projective_verdict() {
        for arr in [pencil(3), pencil(4), triangle(), pa(0, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])] {
            assert!(cross_validate_decone(&arr, 0).unwrap());
        }
    }

    #[test]
    fn section_of_one_hyperplane() {
        let (plane, induced) = generic_section(&pa(1, &[&[1, 2, 3, 4]]), 0).unwrap();
        assert_eq!(induced.len(), 1);
        assert_eq!(rank_of(&[&plane.basis()[0], &plane.basis()[1], &plane.basis()[2]]), 3);
    }

    #[test]
    fn section_cases() {
        let rank2 = pa(1, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0], &[1, -1, 0, 0]]);
        let (_, induced) = generic_section(&rank2, 0).unwrap();
        assert_eq!(intersection_dimension(&induced), 0);
        let rank3 = pa(1, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0]]);
        let (_, induced) = generic_section(&rank3, 0).unwrap();
        assert_eq!(intersection_dimension(&induced), -1);
        assert!(cross_validate_theorem4(&rank2, 0).unwrap());
        assert!(cross_validate_theorem4(&rank3, 0).unwrap());
        let cp4 = pa(2, &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[1, 1, 0, 0, 0]]);
        assert_eq!(decide_free_projective(&cp4), ProjectiveVerdict::FreeOfRank(2));
        assert!(cross_validate_theorem4(&cp4, 0).unwrap());
    }

    #[test]
    fn section_needs_positive_m() {
        assert!(generic_section(&triangle(), 0).is_err());
    }

    #[test]
    fn dimension_invariant_under_coordinate_change() {
        let a = ExactMatrix::from_rows(vec![
            vec![1.into(), GaussianRational::i(), 0.into(), 2.into()],
            vec![0.into(), 1.into(), 3.into(), 0.into()],
            vec![GaussianRational::from_ints(1, -1), 0.into(), 1.into(), 0.into()],
            vec![0.into(), 0.into(), 0.into(), 1.into()],
        ])
        .unwrap();
        let arr = pa(1, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]]);
        let moved = arr.pull_back(&a).unwrap();
        assert_eq!(intersection_dimension(&moved), intersection_dimension(&arr));
    }
}
