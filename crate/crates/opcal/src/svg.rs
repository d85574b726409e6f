//! Deterministic SVG renderings of the decision regions and `Ω` maps.

use std::fmt::Write;

use opcal_core::algebra::{rat, to_decimal};
use opcal_core::regions::{OmegaCell, Point2, Polygon2D};
use opcal_core::Rational;

const SIDE: i64 = 400;
const PAD: i64 = 30;

const PALETTE: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9",
    "#bc80bd", "#ccebc5", "#ffed6f",
];

fn coord(x: &Rational) -> String {
    to_decimal(x, 2)
}

/// `(p2, p3)` to pixels, `p3` pointing up, panel shifted right by `dx`.
fn project((x, y): &Point2, dx: i64) -> (String, String) {
    let side = Rational::from_integer(SIDE.into());
    let px = x * &side + Rational::from_integer((PAD + dx).into());
    let py = Rational::from_integer((PAD + SIDE).into()) - y * &side;
    (coord(&px), coord(&py))
}

fn open(out: &mut String, width: i64) {
    let height = SIDE + 2 * PAD;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();
}

fn polygon(out: &mut String, pts: &[Point2], dx: i64, style: &str) {
    let pts: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = project(p, dx);
            format!("{x},{y}")
        })
        .collect();
    writeln!(out, r#"<polygon points="{}" {style}/>"#, pts.join(" ")).unwrap();
}

fn simplex_outline(out: &mut String, dx: i64) {
    let corners = [(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(0, 1)), (rat(0, 1), rat(1, 1))];
    polygon(out, &corners, dx, r#"fill="none" stroke="black" stroke-width="1.5""#);
}

/// Filled, labelled decision regions.
pub fn regions_svg(polygons: &[Polygon2D]) -> String {
    let mut out = String::new();
    open(&mut out, SIDE + 2 * PAD);
    for (i, poly) in polygons.iter().enumerate() {
        let fill = PALETTE[i % PALETTE.len()];
        polygon(
            &mut out,
            &poly.vertices,
            0,
            &format!(r#"fill="{fill}" stroke="black" stroke-width="0.75""#),
        );
    }
    for poly in polygons {
        let (x, y) = project(&poly.centroid(), 0);
        writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            poly.label
        )
        .unwrap();
    }
    simplex_outline(&mut out, 0);
    out.push_str("</svg>\n");
    out
}

/// Two panels, `Ω_WW` on the left and `Ω_CS` on the right. Members are
/// gray squares, boundary points are red, region outlines are overlaid.
pub fn omega_svg(cells: &[OmegaCell], resolution: usize, polygons: &[Polygon2D]) -> String {
    let mut out = String::new();
    let gap = SIDE + 2 * PAD;
    open(&mut out, 2 * gap);
    let half = rat(1, 2 * resolution as i64);
    for (panel, member) in [
        (0, (|c: &OmegaCell| c.in_omega_ww()) as fn(&OmegaCell) -> bool),
        (1, |c: &OmegaCell| c.cs),
    ] {
        let dx = panel * gap;
        for c in cells {
            let fill = if c.boundary {
                "#d62728"
            } else if member(c) {
                "#b0b0b0"
            } else {
                continue;
            };
            let square = [
                (&c.p2 - &half, &c.p3 - &half),
                (&c.p2 + &half, &c.p3 - &half),
                (&c.p2 + &half, &c.p3 + &half),
                (&c.p2 - &half, &c.p3 + &half),
            ];
            polygon(&mut out, &square, dx, &format!(r#"fill="{fill}" stroke="none""#));
        }
        for poly in polygons {
            polygon(&mut out, &poly.vertices, dx, r#"fill="none" stroke="black" stroke-width="0.5""#);
        }
        simplex_outline(&mut out, dx);
        let (x, _) = project(&(rat(1, 2), rat(0, 1)), dx);
        let title = if panel == 0 { "WW" } else { "CS" };
        writeln!(
            out,
            r#"<text x="{x}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{title}</text>"#,
            PAD - 10
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
