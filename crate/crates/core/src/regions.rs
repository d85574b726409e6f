//! Bayes decision regions of the ordered partition loss on the 3-class
//! simplex, drawn in `(p2, p3)` coordinates with `p1 = 1 - p2 - p3`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::algebra::{int, rat, ProbVector, Rational};
use crate::loss::op_loss;
use crate::partition::{enumerate_ordered_partitions, OrderedPartition};
use crate::risk::{omega_cs, omega_ww_status, LossTable, OmegaStatus};
use crate::{Error, Result};

/// Largest grid resolution accepted by [`omega_map`].
pub const OMEGA_MAX_RESOLUTION: usize = 200;

pub type Point2 = (Rational, Rational);

/// `a x + b y <= c`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct HalfPlane {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl HalfPlane {
    fn contains(&self, (x, y): &Point2) -> bool {
        &self.a * x + &self.b * y <= self.c
    }

    fn intersect(&self, other: &HalfPlane) -> Option<Point2> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let x = (&self.c * &other.b - &self.b * &other.c) / &det;
        let y = (&self.a * &other.c - &self.c * &other.a) / &det;
        Some((x, y))
    }
}

/// Convex polygon with counterclockwise vertices, labelled by the
/// partition whose decision region it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon2D {
    pub label: OrderedPartition,
    pub vertices: Vec<Point2>,
}

impl Polygon2D {
    pub fn area(&self) -> Rational {
        let n = self.vertices.len();
        let twice: Rational = (0..n)
            .map(|i| {
                let (x0, y0) = &self.vertices[i];
                let (x1, y1) = &self.vertices[(i + 1) % n];
                x0 * y1 - x1 * y0
            })
            .sum();
        twice.abs() / int(2)
    }

    /// Vertex average, a relative-interior point.
    pub fn centroid(&self) -> Point2 {
        let n = Rational::from_integer((self.vertices.len() as i64).into());
        let sx: Rational = self.vertices.iter().map(|v| v.0.clone()).sum();
        let sy: Rational = self.vertices.iter().map(|v| v.1.clone()).sum();
        (sx / &n, sy / n)
    }

    pub fn vertex_set(&self) -> BTreeSet<Point2> {
        self.vertices.iter().cloned().collect()
    }
}

/// `(p2, p3)` back to a point of the simplex.
pub fn lift(p2: &Rational, p3: &Rational) -> Result<ProbVector> {
    ProbVector::new(alloc::vec![Rational::one() - p2 - p3, p2.clone(), p3.clone()])
}

/// `Reg(S) = {p : <p, ℓ(S) - ℓ(T)> <= 0 for all T != S}` projected to
/// `(p2, p3)`. `None` when the region has empty interior.
pub fn region_polytope(s: &OrderedPartition) -> Result<Option<Polygon2D>> {
    Error::check_k("decision region polygons", s.k(), 3, 3)?;
    let own = op_loss(s);
    let mut planes = alloc::vec![
        HalfPlane { a: int(-1), b: int(0), c: int(0) },
        HalfPlane { a: int(0), b: int(-1), c: int(0) },
        HalfPlane { a: int(1), b: int(1), c: int(1) },
    ];
    for t in enumerate_ordered_partitions(3)? {
        if &t == s {
            continue;
        }
        let other = op_loss(&t);
        let d: Vec<i64> = own.iter().zip(&other).map(|(a, b)| a - b).collect();
        // d1 (1 - x - y) + d2 x + d3 y <= 0
        let plane = HalfPlane {
            a: int(d[1] - d[0]),
            b: int(d[2] - d[0]),
            c: int(-d[0]),
        };
        if plane.a.is_zero() && plane.b.is_zero() {
            if plane.c.is_negative() {
                return Ok(None);
            }
            continue;
        }
        planes.push(plane);
    }
    let mut vertices = BTreeSet::new();
    for (i, h) in planes.iter().enumerate() {
        for g in &planes[i + 1..] {
            if let Some(pt) = h.intersect(g) {
                if planes.iter().all(|q| q.contains(&pt)) {
                    vertices.insert(pt);
                }
            }
        }
    }
    let vertices: Vec<Point2> = vertices.into_iter().collect();
    if vertices.len() < 3 {
        return Ok(None);
    }
    let polygon = Polygon2D {
        label: s.clone(),
        vertices: counterclockwise(vertices),
    };
    if polygon.area().is_zero() {
        return Ok(None);
    }
    Ok(Some(polygon))
}

fn counterclockwise(mut pts: Vec<Point2>) -> Vec<Point2> {
    let n = Rational::from_integer((pts.len() as i64).into());
    let cx: Rational = pts.iter().map(|p| p.0.clone()).sum::<Rational>() / &n;
    let cy: Rational = pts.iter().map(|p| p.1.clone()).sum::<Rational>() / &n;
    // Half 0: angle in [0, π), half 1: [π, 2π).
    let half = |p: &Point2| {
        let (dx, dy) = (&p.0 - &cx, &p.1 - &cy);
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|p, q| {
        half(p).cmp(&half(q)).then_with(|| {
            let cross = (&p.0 - &cx) * (&q.1 - &cy) - (&p.1 - &cy) * (&q.0 - &cx);
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    // Start from the lexicographically smallest vertex for stable output.
    let start = (0..pts.len()).min_by(|&i, &j| pts[i].cmp(&pts[j])).unwrap_or(0);
    pts.rotate_left(start);
    pts
}

/// All twelve decision regions for `k = 3`, in enumeration order.
pub fn figure1_data() -> Result<Vec<Polygon2D>> {
    let mut out = Vec::new();
    for s in enumerate_ordered_partitions(3)? {
        match region_polytope(&s)? {
            Some(poly) => out.push(poly),
            None => return Err(Error::Domain(alloc::format!("region {s} is empty"))),
        }
    }
    Ok(out)
}

/// One grid point of the `Ω` comparison map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaCell {
    pub p2: Rational,
    pub p3: Rational,
    pub ww: OmegaStatus,
    pub cs: bool,
    /// The ordered partition loss has several minimizers here, i.e. the
    /// point lies on a decision region boundary.
    pub boundary: bool,
    /// Unique minimizer with a two-label top bucket: the union of regions
    /// described as `Ω_WW` in the figure derivation notes.
    pub two_label_top: bool,
}

impl OmegaCell {
    pub fn in_omega_ww(&self) -> bool {
        self.ww == OmegaStatus::Inside
    }
}

pub fn omega_cell(table: &LossTable, p2: &Rational, p3: &Rational) -> Result<OmegaCell> {
    Error::check_dim(3, table.k())?;
    let p = lift(p2, p3)?;
    let ww = omega_ww_status(&p)?;
    let report = table.bayes(&p)?;
    Ok(OmegaCell {
        p2: p2.clone(),
        p3: p3.clone(),
        ww,
        cs: omega_cs(&p),
        boundary: !report.unique,
        two_label_top: report.unique && report.minimizers[0].top_block().len() == 2,
    })
}

/// Grid points `(a/N, b/N)` with `a + b <= N`, `a` outer.
pub fn omega_grid(resolution: usize) -> Result<Vec<Point2>> {
    if resolution == 0 || resolution > OMEGA_MAX_RESOLUTION {
        return Err(Error::Capacity {
            what: "Ω grid resolution",
            k: resolution,
            min: 1,
            max: OMEGA_MAX_RESOLUTION,
        });
    }
    let n = resolution as i64;
    Ok((0..=n)
        .flat_map(|a| (0..=n - a).map(move |b| (rat(a, n), rat(b, n))))
        .collect())
}

pub fn omega_map(resolution: usize) -> Result<Vec<OmegaCell>> {
    let table = LossTable::new(3)?;
    omega_grid(resolution)?
        .iter()
        .map(|(x, y)| omega_cell(&table, x, y))
        .collect()
}
