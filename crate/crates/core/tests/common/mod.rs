#![allow(dead_code)]

use arrpi1_core::exactnum::{ExactMatrix, GaussianRational};
use arrpi1_core::geometry::{AffineLine, Arrangement};
use arrpi1_core::projective::{ProjectiveArrangement, ProjectiveHyperplane};

pub fn gq(s: &str) -> GaussianRational {
    s.parse().unwrap_or_else(|e| panic!("bad literal {s}: {e}"))
}

/// `z2 = m z1 + b` for each `(m, b)`.
pub fn slopes(pairs: &[(&str, &str)]) -> Arrangement {
    Arrangement::new(pairs.iter().map(|(m, b)| AffineLine::from_slope_intercept(gq(m), gq(b))).collect()).unwrap()
}

/// `a z1 + b z2 + c = 0` for each `(a, b, c)`.
pub fn forms(triples: &[(&str, &str, &str)]) -> Arrangement {
    Arrangement::new(triples.iter().map(|(a, b, c)| AffineLine::new(gq(a), gq(b), gq(c)).unwrap()).collect()).unwrap()
}

/// Lines `z2 = k z1 + k²`, tangent to a conic, so no three are concurrent.
pub fn tangents(ks: &[&str]) -> Arrangement {
    Arrangement::new(
        ks.iter()
            .map(|k| {
                let k = gq(k);
                let k2 = &k * &k;
                AffineLine::from_slope_intercept(k, k2)
            })
            .collect(),
    )
    .unwrap()
}

/// Lines through `(p, q)` with the given slopes.
pub fn pencil_through(p: &str, q: &str, ms: &[&str]) -> Arrangement {
    let (p, q) = (gq(p), gq(q));
    Arrangement::new(
        ms.iter()
            .map(|m| {
                let m = gq(m);
                let b = &q - &(&m * &p);
                AffineLine::from_slope_intercept(m, b)
            })
            .collect(),
    )
    .unwrap()
}

pub struct Case {
    pub name: &'static str,
    pub arr: Arrangement,
    /// Hand-counted number of singular points.
    pub points: usize,
    /// Hand-counted Σ (multiplicity − 1).
    pub relators: usize,
    pub generic: bool,
}

fn case(name: &'static str, arr: Arrangement, points: usize, relators: usize) -> Case {
    Case { name, arr, points, relators, generic: false }
}

fn generic(name: &'static str, arr: Arrangement) -> Case {
    let n = arr.len();
    let pairs = n * (n - 1) / 2;
    Case { name, arr, points: pairs, relators: pairs, generic: true }
}

/// Thirty arrangements, none a parallel family.
pub fn affine_corpus() -> Vec<Case> {
    vec![
        case("crossing real", slopes(&[("0", "0"), ("1", "0")]), 1, 1),
        case("crossing complex slope", slopes(&[("i", "1"), ("0", "0")]), 1, 1),
        case("crossing with vertical", forms(&[("1", "0", "0"), ("0", "1", "0")]), 1, 1),
        case("pencil 3", slopes(&[("0", "0"), ("1", "0"), ("-1", "0")]), 1, 2),
        case("pencil 4", slopes(&[("0", "0"), ("1", "0"), ("-1", "0"), ("2", "0")]), 1, 3),
        case("pencil 5", slopes(&[("0", "0"), ("1", "0"), ("-1", "0"), ("2", "0"), ("-2", "0")]), 1, 4),
        case("pencil 3 complex centre", pencil_through("1+i", "2-i", &["0", "1", "-1"]), 1, 2),
        case("pencil 4 complex slopes", pencil_through("0", "0", &["0", "i", "1+i", "2"]), 1, 3),
        case(
            "pencil 5 with vertical",
            forms(&[("1", "0", "-1"), ("1", "-1", "0"), ("2", "-1", "-1"), ("0", "1", "-1"), ("-1", "-1", "2")]),
            1,
            4,
        ),
        generic("generic 3 real", tangents(&["0", "1", "-1"])),
        generic("generic 4 real", tangents(&["0", "1", "-1", "2"])),
        generic("generic 5 real", tangents(&["0", "1", "-1", "2", "-2"])),
        generic("generic 3 complex", tangents(&["i", "-i", "1"])),
        generic("generic 4 complex", tangents(&["i", "-i", "1+i", "2"])),
        generic("generic 5 complex", tangents(&["i", "-i", "1+i", "2", "-1+2i"])),
        case("two parallel and a transversal", slopes(&[("0", "0"), ("0", "1"), ("1", "0")]), 2, 2),
        case(
            "three parallel and two transversals",
            slopes(&[("0", "0"), ("0", "1"), ("0", "2"), ("1", "0"), ("-1", "5")]),
            7,
            7,
        ),
        case("complex parallel pair and a transversal", slopes(&[("i", "0"), ("i", "1"), ("1", "0")]), 2, 2),
        case("triangle with a line through a vertex", slopes(&[("0", "0"), ("1", "0"), ("-1", "2"), ("0", "1")]), 3, 4),
        case("pencil 3 cut by a parallel", slopes(&[("0", "0"), ("1", "0"), ("-1", "0"), ("0", "1")]), 3, 4),
        case(
            "unit square with diagonal",
            forms(&[("1", "0", "0"), ("0", "1", "0"), ("1", "0", "-1"), ("0", "1", "-1"), ("1", "-1", "0")]),
            4,
            6,
        ),
        case("pencil 3 with a second slope 1", slopes(&[("0", "0"), ("1", "0"), ("-1", "0"), ("1", "1")]), 3, 4),
        case(
            "two pencils sharing a line",
            slopes(&[("0", "0"), ("1", "0"), ("2", "0"), ("1", "-3"), ("-1", "3")]),
            5,
            7,
        ),
        case("crossing with complex intercepts", slopes(&[("1", "i"), ("2", "-i")]), 1, 1),
        generic("generic 3 rational slopes", slopes(&[("1/2", "1/7"), ("-1/3", "0"), ("2/5", "-1")])),
        generic("generic 6 real", tangents(&["0", "1", "2", "3", "4", "5"])),
        case("pencil 3 complex slopes", pencil_through("i", "1", &["i", "1+i", "2i"]), 1, 2),
        generic("generic 3 complex forms", forms(&[("1+i", "1", "1"), ("1", "-1", "0"), ("0", "1", "-i")])),
        generic("generic 6 complex", tangents(&["0", "i", "-i", "1", "1+i", "-2"])),
        case("vertical pair and a horizontal", forms(&[("1", "0", "0"), ("1", "0", "-1"), ("0", "1", "0")]), 2, 2),
    ]
}

/// Parallel families with n = 2..=6, for real, complex and vertical directions.
pub fn parallel_corpus() -> Vec<(String, Arrangement)> {
    let mut out = Vec::new();
    for n in 2..=6i64 {
        let real: Vec<(String, String)> = (0..n).map(|k| ("2".to_string(), k.to_string())).collect();
        let complex: Vec<(String, String)> = (0..n).map(|k| ("1+i".to_string(), format!("{k}i"))).collect();
        let borrow = |v: &[(String, String)]| slopes(&v.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect::<Vec<_>>());
        out.push((format!("parallel real n={n}"), borrow(&real)));
        out.push((format!("parallel complex n={n}"), borrow(&complex)));
        let vertical: Vec<AffineLine> = (0..n).map(|k| AffineLine::new(gq("1"), gq("0"), GaussianRational::from(-k)).unwrap()).collect();
        out.push((format!("parallel vertical n={n}"), Arrangement::new(vertical).unwrap()));
    }
    out
}

pub fn projective(m: usize, rows: Vec<Vec<GaussianRational>>) -> ProjectiveArrangement {
    ProjectiveArrangement::new(m, rows.into_iter().map(|r| ProjectiveHyperplane::new(r).unwrap()).collect()).unwrap()
}

/// `n` lines through `(0 : 0 : 1)`.
pub fn cp2_pencil(n: i64) -> ProjectiveArrangement {
    projective(0, (0..n).map(|k| vec![1.into(), k.into(), 0.into()]).collect())
}

pub fn cp2_triangle() -> ProjectiveArrangement {
    projective(0, vec![vec![1.into(), 0.into(), 0.into()], vec![0.into(), 1.into(), 0.into()], vec![0.into(), 0.into(), 1.into()]])
}

/// An invertible upper-triangular mixing matrix with unit diagonal, so the
/// coordinate hyperplanes of the corpus are not axis aligned.
pub fn mixing(size: usize) -> ExactMatrix {
    let mut rows = vec![vec![GaussianRational::zero(); size]; size];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = GaussianRational::one();
        for (j, cell) in row.iter_mut().enumerate().skip(i + 1) {
            *cell = GaussianRational::from_ints((i + j) as i64 % 3 - 1, (i * j) as i64 % 2);
        }
    }
    ExactMatrix::from_rows(rows).unwrap()
}

/// `n` hyperplanes in CP^{m+2} whose forms span a space of dimension `rank`:
/// rows of a Vandermonde matrix in the first `rank` coordinates (any `rank`
/// of them independent), then mixed by an invertible change of coordinates.
pub fn rank_family(m: usize, n: usize, rank: usize) -> ProjectiveArrangement {
    assert!(rank <= n && rank <= m + 3);
    let rows = (0..n)
        .map(|k| {
            let node = GaussianRational::from_ints(k as i64 + 1, (k % 2) as i64);
            let mut row = vec![GaussianRational::zero(); m + 3];
            let mut pow = GaussianRational::one();
            for cell in row.iter_mut().take(rank) {
                *cell = pow.clone();
                pow = &pow * &node;
            }
            row
        })
        .collect();
    projective(m, rows).pull_back(&mixing(m + 3)).unwrap()
}

/// Whether the lines of a CP² arrangement share a point, by testing every
/// pairwise intersection (a cross product) against the remaining lines.
pub fn cp2_has_common_point(arr: &ProjectiveArrangement) -> bool {
    let h = arr.hyperplanes();
    let (u, v) = (h[0].coeffs(), h[1].coeffs());
    let cross = |i: usize, j: usize| &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
    let p = [cross(1, 2), cross(2, 0), cross(0, 1)];
    h.iter().all(|l| l.contains(&p))
}
