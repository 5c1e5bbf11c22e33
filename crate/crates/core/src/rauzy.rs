//! The Tribonacci exchange of pieces, in floating point.
//!
//! Letters `a, b, c` are identified with `1, 2, 3` (letter indices 0, 1, 2).
//! Nothing here is exact: the module draws the Rauzy fractal and checks
//! orbit-level identities to a tolerance.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::symbolic::Substitution;
use crate::word::{Letter, Word};

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

/// Occurrence counts `(|w|_1, |w|_2, |w|_3)`.
pub fn abelianize(w: &[Letter]) -> Result<Vec3> {
    let mut v = [0.0; 3];
    for &l in w {
        *v.get_mut(l as usize)
            .ok_or_else(|| Error::AlphabetMismatch("abelianization needs a 3-letter alphabet".into()))? += 1.0;
    }
    Ok(v)
}

/// `F[i][j] = |f(j)|_i`.
pub fn incidence_matrix(f: &Substitution) -> Result<Mat3> {
    if f.alphabet().len() != 3 {
        return Err(Error::AlphabetMismatch(format!("incidence matrix needs 3 letters, got {}", f.alphabet().len())));
    }
    let mut m = [[0.0; 3]; 3];
    for j in 0..3 {
        let col = abelianize(f.image(j as Letter))?;
        for (row, c) in m.iter_mut().zip(col) {
            row[j] = c;
        }
    }
    Ok(m)
}

pub fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = (0..3).map(|j| m[i][j] * v[j]).sum();
    }
    out
}

/// The real root of `z^3 - z^2 - z - 1`, by Newton's method from 2.
pub fn tribonacci_beta() -> f64 {
    let p = |z: f64| z * z * z - z * z - z - 1.0;
    let dp = |z: f64| 3.0 * z * z - 2.0 * z - 1.0;
    let mut z = 2.0;
    for _ in 0..100 {
        let step = p(z) / dp(z);
        z -= step;
        if step.abs() < 1e-16 {
            break;
        }
    }
    z
}

/// Projection onto the plane `x + y + z = 0` along `v`.
fn project(p: &Vec3, v: &Vec3) -> Vec3 {
    let t = p.iter().sum::<f64>() / v.iter().sum::<f64>();
    [p[0] - t * v[0], p[1] - t * v[1], p[2] - t * v[2]]
}

/// Coordinates of a plane vector `p` in the basis `(u1, u2)`, by the
/// normal equations.
fn coordinates(p: &Vec3, u1: &Vec3, u2: &Vec3) -> (f64, f64) {
    let dot = |a: &Vec3, b: &Vec3| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let (a, b, c) = (dot(u1, u1), dot(u1, u2), dot(u2, u2));
    let (r1, r2) = (dot(u1, p), dot(u2, p));
    let det = a * c - b * b;
    ((c * r1 - b * r2) / det, (a * r2 - b * r1) / det)
}

/// The projection together with the plane basis
/// `(π(e_3) - π(e_1), π(e_3) - π(e_2))`.
#[derive(Clone, Debug)]
pub struct RauzyFrame {
    pub beta: f64,
    pub v: Vec3,
    u1: Vec3,
    u2: Vec3,
}

impl RauzyFrame {
    pub fn tribonacci() -> Self {
        let beta = tribonacci_beta();
        let v = [1.0 / beta, 1.0 / (beta * beta), 1.0 / (beta * beta * beta)];
        let e = |i: usize| {
            let mut x = [0.0; 3];
            x[i] = 1.0;
            project(&x, &v)
        };
        let (p1, p2, p3) = (e(0), e(1), e(2));
        let sub = |a: Vec3, b: Vec3| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
        RauzyFrame { beta, v, u1: sub(p3, p1), u2: sub(p3, p2) }
    }

    /// Basis coordinates of `π(p)`.
    pub fn coords(&self, p: &Vec3) -> (f64, f64) {
        coordinates(&project(p, &self.v), &self.u1, &self.u2)
    }

    /// Basis coordinates of `π(e_i)` for the letter `i`.
    pub fn step(&self, letter: Letter) -> (f64, f64) {
        let mut e = [0.0; 3];
        e[letter as usize] = 1.0;
        self.coords(&e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CloudPoint {
    pub x: f64,
    pub y: f64,
    /// Letter read next, `1..=3`.
    pub label: u8,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    pub points: Vec<CloudPoint>,
}

/// The first `n` letters of the Tribonacci word.
pub fn tribonacci_prefix(n: usize) -> Word {
    let f = Substitution::tribonacci();
    let mut w = vec![0];
    while w.len() < n {
        w = f.apply(&w);
    }
    w.truncate(n);
    w
}

/// Projected broken-line vertices `π(f(x_0 ... x_{n-1}))` for
/// `n < n_points`, each labelled by `x_n`.
pub fn rauzy_cloud(n_points: usize) -> PointCloud {
    let frame = RauzyFrame::tribonacci();
    let x = tribonacci_prefix(n_points);
    let mut counts = [0.0; 3];
    let mut points = Vec::with_capacity(n_points);
    for &l in &x {
        let (px, py) = frame.coords(&counts);
        points.push(CloudPoint { x: px, y: py, label: l as u8 + 1 });
        counts[l as usize] += 1.0;
    }
    PointCloud { points }
}

/// Largest gap between `point_{n+1}` and `point_n + π(e_{label_n})`.
pub fn exchange_deviation(cloud: &PointCloud) -> f64 {
    let frame = RauzyFrame::tribonacci();
    let steps: Vec<(f64, f64)> = (0..3).map(|l| frame.step(l)).collect();
    cloud
        .points
        .windows(2)
        .map(|p| {
            let (dx, dy) = steps[p[0].label as usize - 1];
            (p[0].x + dx - p[1].x).abs().max((p[0].y + dy - p[1].y).abs())
        })
        .fold(0.0, f64::max)
}

/// The exchange identity along the orbit of `0`, to `1e-9`.
pub fn exchange_step_check(cloud: &PointCloud) -> bool {
    cloud.points.iter().all(|p| (1..=3).contains(&p.label)) && exchange_deviation(cloud) < 1e-9
}

/// Largest distance from `n (1/β, 1/β²)` to the point `n`, modulo `Z²`.
pub fn torus_deviation(cloud: &PointCloud) -> f64 {
    let beta = tribonacci_beta();
    let wrap = |t: f64| (t - t.round()).abs();
    cloud
        .points
        .iter()
        .enumerate()
        .map(|(n, p)| {
            let n = n as f64;
            wrap(p.x - n / beta).max(wrap(p.y - n / (beta * beta)))
        })
        .fold(0.0, f64::max)
}

/// Largest Euclidean norm of the basis coordinates.
pub fn max_norm(cloud: &PointCloud) -> f64 {
    cloud.points.iter().map(|p| p.x.hypot(p.y)).fold(0.0, f64::max)
}

/// Fixed drawing window in basis coordinates, wide enough for the whole
/// fractal.
const X_RANGE: (f64, f64) = (-0.9, 0.6);
const Y_RANGE: (f64, f64) = (-0.8, 0.8);
const COLORS: [&str; 3] = ["#d62728", "#2ca02c", "#1f77b4"];

/// SVG scatter plot, one colour per label; `y` grows upwards.
pub fn svg_string(cloud: &PointCloud) -> String {
    let (w, h) = (X_RANGE.1 - X_RANGE.0, Y_RANGE.1 - Y_RANGE.0);
    let (left, top) = (X_RANGE.0, -Y_RANGE.1);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<!-- Rauzy fractal; labels 1,2,3 are the letters a,b,c; red, green, blue -->\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{left} {top} {w} {h}\" width=\"{}\" height=\"{}\">",
        (w * 500.0).round(),
        (h * 500.0).round()
    )
    .unwrap();
    writeln!(s, "<rect x=\"{left}\" y=\"{top}\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>").unwrap();
    for p in &cloud.points {
        writeln!(
            s,
            "<circle cx=\"{:.5}\" cy=\"{:.5}\" r=\"0.002\" fill=\"{}\"/>",
            p.x,
            -p.y,
            COLORS[p.label as usize - 1]
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_svg(cloud: &PointCloud, path: &Path) -> Result<()> {
    std::fs::write(path, svg_string(cloud))?;
    Ok(())
}

/// `x,y,label` lines under a header.
pub fn csv_string(cloud: &PointCloud) -> String {
    let mut s = String::from("x,y,label\n");
    for p in &cloud.points {
        writeln!(s, "{},{},{}", p.x, p.y, p.label).unwrap();
    }
    s
}
