//! Lattice paths and the tiling regions behind the determinants.
//!
//! Start i sits at (μ+s+i−3, 0), end j at (0, t+j−1); paths step left or up,
//! so the number of paths from start i to end j is binom(μ+i+j+s+t−4, j+t−1).

use std::collections::HashSet;
use std::fmt::Write as _;

use num::bigint::BigInt;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binom_int, Rational};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::matrix::qmat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathProblem {
    pub mu: i64,
    pub s: i64,
    pub t: i64,
    pub n: usize,
    /// Row indices (start points) kept, ascending.
    pub kept_starts: Vec<usize>,
    /// Column indices (end points) kept, ascending.
    pub kept_ends: Vec<usize>,
}

impl PathProblem {
    /// All starts and ends kept.
    pub fn full(mu: i64, s: i64, t: i64, n: usize) -> Result<Self> {
        PathProblem::with_deleted(mu, s, t, n, &[])
    }

    /// Drops the delta positions indexed by `set` ⊆ {1..n−|s−t|}: rows I and
    /// columns I+s−t when s ≥ t, rows I+t−s and columns I otherwise.
    pub fn with_deleted(mu: i64, s: i64, t: i64, n: usize, set: &[usize]) -> Result<Self> {
        if mu + s < 2 || s < 0 || t < 0 {
            return Err(Error::Range(format!("needs μ+s ≥ 2 and s, t ≥ 0, got μ={mu}, s={s}, t={t}")));
        }
        let shift = (s - t).unsigned_abs() as usize;
        let limit = n.saturating_sub(shift);
        if set.iter().any(|&k| k == 0 || k > limit) {
            return Err(Error::Index(format!("deleted set {set:?} not within 1..={limit}")));
        }
        let moved: Vec<usize> = set.iter().map(|k| k + shift).collect();
        let (rows, cols) = if s >= t { (set.to_vec(), moved) } else { (moved, set.to_vec()) };
        Ok(PathProblem {
            mu,
            s,
            t,
            n,
            kept_starts: (1..=n).filter(|i| !rows.contains(i)).collect(),
            kept_ends: (1..=n).filter(|j| !cols.contains(j)).collect(),
        })
    }

    pub fn start(&self, i: usize) -> (i64, i64) {
        (self.mu + self.s + i as i64 - 3, 0)
    }

    pub fn end(&self, j: usize) -> (i64, i64) {
        (0, self.t + j as i64 - 1)
    }

    fn entry(&self, i: usize, j: usize) -> BigInt {
        binom_int(self.mu + self.s + self.t + i as i64 + j as i64 - 4, self.t + j as i64 - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingCount {
    pub value: BigInt,
    /// True when the count is a signed sum rather than a plain count.
    pub weighted: bool,
}

/// Determinant of the kept submatrix of the path-count matrix.
pub fn lgv_count(p: &PathProblem) -> Result<TilingCount> {
    if p.kept_starts.len() != p.kept_ends.len() {
        return Err(Error::Dimension("kept starts and ends differ in number".into()));
    }
    let rows: Vec<Vec<Rational>> = p
        .kept_starts
        .iter()
        .map(|&i| p.kept_ends.iter().map(|&j| Rational::from_integer(p.entry(i, j))).collect())
        .collect();
    let d = qmat::det(&rows)?;
    debug_assert!(d.is_integer());
    Ok(TilingCount { value: d.to_integer(), weighted: false })
}

pub type Path = Vec<(i64, i64)>;

/// All tuples of pairwise vertex-disjoint paths, the k-th kept start joined
/// to the k-th kept end. Depth-first, left steps before up steps.
pub fn enumerate_paths(p: &PathProblem, cap: usize) -> Result<Vec<Vec<Path>>> {
    if p.kept_starts.len() != p.kept_ends.len() {
        return Err(Error::Dimension("kept starts and ends differ in number".into()));
    }
    let mut out = Vec::new();
    search(p, cap, &mut out)?;
    Ok(out)
}

/// The first tuple in enumeration order, if any.
pub fn first_path_tuple(p: &PathProblem) -> Result<Option<Vec<Path>>> {
    if p.kept_starts.len() != p.kept_ends.len() {
        return Err(Error::Dimension("kept starts and ends differ in number".into()));
    }
    let mut out = Vec::new();
    match search(p, 1, &mut out) {
        Ok(()) | Err(Error::CapExceeded(_)) => Ok(out.into_iter().next()),
        Err(e) => Err(e),
    }
}

fn search(p: &PathProblem, cap: usize, out: &mut Vec<Vec<Path>>) -> Result<()> {
    let pairs: Vec<((i64, i64), (i64, i64))> =
        p.kept_starts.iter().zip(&p.kept_ends).map(|(&i, &j)| (p.start(i), p.end(j))).collect();
    let mut used = HashSet::new();
    let mut tuple = Vec::new();
    extend_tuple(&pairs, 0, &mut used, &mut tuple, out, cap)
}

fn extend_tuple(
    pairs: &[((i64, i64), (i64, i64))],
    idx: usize,
    used: &mut HashSet<(i64, i64)>,
    tuple: &mut Vec<Path>,
    out: &mut Vec<Vec<Path>>,
    cap: usize,
) -> Result<()> {
    if idx == pairs.len() {
        if out.len() >= cap {
            return Err(Error::CapExceeded(cap));
        }
        out.push(tuple.clone());
        return Ok(());
    }
    let (start, end) = pairs[idx];
    if used.contains(&start) {
        return Ok(());
    }
    let mut path = vec![start];
    used.insert(start);
    let r = walk(pairs, idx, end, used, &mut path, tuple, out, cap);
    used.remove(&start);
    r
}

#[allow(clippy::too_many_arguments)]
fn walk(
    pairs: &[((i64, i64), (i64, i64))],
    idx: usize,
    end: (i64, i64),
    used: &mut HashSet<(i64, i64)>,
    path: &mut Path,
    tuple: &mut Vec<Path>,
    out: &mut Vec<Vec<Path>>,
    cap: usize,
) -> Result<()> {
    let here = *path.last().expect("path starts nonempty");
    if here == end {
        tuple.push(path.clone());
        let r = extend_tuple(pairs, idx + 1, used, tuple, out, cap);
        tuple.pop();
        return r;
    }
    for step in [(-1, 0), (0, 1)] {
        let next = (here.0 + step.0, here.1 + step.1);
        if next.0 < end.0 || next.1 > end.1 || used.contains(&next) {
            continue;
        }
        used.insert(next);
        path.push(next);
        let r = walk(pairs, idx, end, used, path, tuple, out, cap);
        path.pop();
        used.remove(&next);
        r?;
    }
    Ok(())
}

/// Σ_I σ^|I| (−1)^{|s−t|·|I|} · (paths with the I-deltas dropped), at integer μ.
/// For E with s−t odd, or D with s−t even, every weight is +1 and the sum is
/// a plain count of cyclically symmetric tilings.
pub fn cyclic_tiling_count(family: Family, s: i64, t: i64, n: usize, mu: i64) -> Result<TilingCount> {
    if family == Family::B {
        return Err(Error::Range("cyclic counts are defined for D and E".into()));
    }
    let shift = (s - t).unsigned_abs() as usize;
    let deltas = n.saturating_sub(shift);
    if deltas > crate::families::MAX_DELTAS {
        return Err(Error::CapExceeded(deltas));
    }
    let negative_odd = (family.sigma() == -1) != (shift % 2 == 1);
    let mut total = BigInt::zero();
    for mask in 0u64..(1u64 << deltas) {
        let set: Vec<usize> = (1..=deltas).filter(|k| mask >> (k - 1) & 1 == 1).collect();
        let c = lgv_count(&PathProblem::with_deleted(mu, s, t, n, &set)?)?.value;
        if negative_odd && set.len() % 2 == 1 {
            total -= c;
        } else {
            total += c;
        }
    }
    Ok(TilingCount { value: total, weighted: negative_odd })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HoleKind {
    Central,
    Satellite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hole {
    pub side: i64,
    pub kind: HoleKind,
}

/// Region left to tile after all forced parts are removed: an equiangular
/// hexagon with sides a, b, a, b, a, b (a triangle of side b when a = 0)
/// and triangular holes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedRegion {
    pub a: i64,
    pub b: i64,
    pub holes: Vec<Hole>,
    /// Length of the border segments between the central hole and the satellites.
    pub border: i64,
}

impl ReducedRegion {
    /// Unit triangles in the region: 6ab + b² − ... written as L² − 3b² minus holes, L = a + 2b.
    pub fn area(&self) -> i64 {
        let l = self.a + 2 * self.b;
        l * l - 3 * self.b * self.b - self.holes.iter().map(|h| h.side * h.side).sum::<i64>()
    }

    /// Up minus down unit triangles; zero is necessary for a lozenge tiling.
    pub fn imbalance(&self) -> i64 {
        self.a - self.b + self.holes.iter().map(|h| h.side).sum::<i64>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingRegion {
    pub s: i64,
    pub t: i64,
    pub n: usize,
    pub mu: i64,
    /// The construction ran with s and t exchanged (t > s).
    pub switched: bool,
    pub delta: i64,
    /// Long edge and short edge of one lozenge.
    pub lozenge: (i64, i64),
    /// hole, border, no starts, optional starts, mandatory starts.
    pub bottom_parts: [i64; 5],
    /// border, mandatory ends, optional ends.
    pub left_parts: [i64; 3],
    pub reduced: ReducedRegion,
}

/// Region for the (s, t, n) determinant at integer μ. For t > s the roles of
/// s and t are exchanged first.
pub fn build_region(s: i64, t: i64, n: usize, mu: i64) -> Result<TilingRegion> {
    let switched = t > s;
    let (hi, lo) = if switched { (t, s) } else { (s, t) };
    if lo < 0 || mu + hi < 2 {
        return Err(Error::Range(format!("needs s, t ≥ 0 and μ+max(s,t) ≥ 2, got s={s}, t={t}, μ={mu}")));
    }
    let ni = n as i64;
    let d = hi - lo;
    let delta = ni - d;
    if delta < 0 {
        return Err(Error::Range(format!("n={n} is smaller than |s−t|={d}")));
    }
    let long = mu + hi + ni - 2;
    // End j sits at height t+j−1, so the short edge also carries the border.
    let short = ni + lo;
    let bottom_parts = [mu - 2, lo, d, delta, d];
    let left_parts = [lo, d, delta];
    debug_assert_eq!(bottom_parts.iter().sum::<i64>(), long);
    debug_assert_eq!(left_parts.iter().sum::<i64>(), short);
    let a = ni - hi + 2 * lo;
    let b = ni + 2 * hi - lo + mu - 2;
    let holes = if lo == 0 {
        // The satellites touch the central hole; the forced strips between
        // them merge everything into one triangle.
        vec![Hole { side: mu - 2 + 3 * hi, kind: HoleKind::Central }]
    } else {
        let mut h = vec![Hole { side: mu - 2, kind: HoleKind::Central }];
        if d > 0 {
            h.extend(std::iter::repeat_n(Hole { side: d, kind: HoleKind::Satellite }, 3));
        }
        h
    };
    Ok(TilingRegion {
        s,
        t,
        n,
        mu,
        switched,
        delta,
        lozenge: (long, short),
        bottom_parts,
        left_parts,
        reduced: ReducedRegion { a, b, holes, border: lo },
    })
}

const UNIT: f64 = 20.0;
const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Lattice point (x along the bottom, y along the 60° edge) to pixels.
fn px(x: f64, y: f64) -> (f64, f64) {
    (UNIT * (x + 0.5 * y), -UNIT * SQRT3_2 * y)
}

fn fmt_points(pts: &[(f64, f64)], dx: f64, dy: f64) -> String {
    pts.iter().map(|(x, y)| format!("{:.3},{:.3}", x + dx, y + dy)).collect::<Vec<_>>().join(" ")
}

/// Two panels: the lozenge with start/end markers and optional paths, and
/// the reduced holey hexagon. Byte-for-byte deterministic.
pub fn render_svg(region: &TilingRegion, tiling: Option<&[Path]>) -> String {
    let (long, short) = region.lozenge;
    let r = &region.reduced;
    let big = (r.a + 2 * r.b) as f64;
    let w1 = (long as f64 + 0.5 * short as f64) * UNIT;
    let h1 = short as f64 * UNIT * SQRT3_2;
    let w2 = big * UNIT;
    let h2 = big * UNIT * SQRT3_2;
    let pad = UNIT;
    let width = w1 + w2 + 3.0 * pad;
    let height = h1.max(h2) + 2.0 * pad;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );

    // Panel 1: lozenge, origin at its bottom-left corner.
    let (ox, oy) = (pad, pad + h1);
    let corners = [px(0.0, 0.0), px(long as f64, 0.0), px(long as f64, short as f64), px(0.0, short as f64)];
    let _ = writeln!(s, r##"<polygon points="{}" fill="none" stroke="#000" stroke-width="1.5"/>"##, fmt_points(&corners, ox, oy));
    let mut x = 0;
    for (k, len) in region.bottom_parts.iter().enumerate() {
        if *len > 0 && k > 0 {
            let a = px(x as f64, 0.0);
            let _ = writeln!(s, r##"<circle cx="{:.3}" cy="{:.3}" r="2" fill="#c00"/>"##, a.0 + ox, a.1 + oy);
        }
        x += len;
    }
    if let Some(paths) = tiling {
        // Paths live in the (x, height) grid; draw them on the lozenge lattice.
        for path in paths {
            let pts: Vec<(f64, f64)> = path.iter().map(|&(x, y)| px(x as f64 + 0.5, y as f64 + 0.5)).collect();
            let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#555" stroke-width="3"/>"##, fmt_points(&pts, ox, oy));
        }
    }

    // Panel 2: hexagon as a big triangle of side a+2b with corners of side b cut.
    let (hx, hy) = (2.0 * pad + w1, pad + h2);
    let a = r.a as f64;
    let b = r.b as f64;
    let hex = [
        px(b, 0.0),
        px(b + a, 0.0),
        px(a + b, b),
        px(b, a + b),
        px(0.0, a + b),
        px(0.0, b),
    ];
    let _ = writeln!(s, r##"<polygon points="{}" fill="#eef" stroke="#000" stroke-width="1.5"/>"##, fmt_points(&hex, hx, hy));
    let centre = (big / 3.0, big / 3.0);
    for (k, hole) in r.holes.iter().enumerate() {
        let hs = hole.side as f64;
        let (cx, cy) = match hole.kind {
            HoleKind::Central => centre,
            HoleKind::Satellite => {
                let off = (r.holes[0].side as f64 + hs) / 3.0 + r.border as f64;
                match k % 3 {
                    1 => (centre.0 + off, centre.1 - off / 2.0),
                    2 => (centre.0 - off / 2.0, centre.1 + off),
                    _ => (centre.0 - off / 2.0, centre.1 - off / 2.0),
                }
            }
        };
        // Down-pointing triangle centred at (cx, cy) in lattice coordinates.
        let tri = [
            px(cx - hs / 3.0, cy + 2.0 * hs / 3.0),
            px(cx + 2.0 * hs / 3.0 - hs / 3.0, cy + hs / 3.0 - hs / 3.0 + hs / 3.0),
            px(cx - hs / 3.0 + hs / 3.0 - hs / 3.0, cy - hs / 3.0),
        ];
        let _ = writeln!(s, r##"<polygon points="{}" fill="#fff" stroke="#000"/>"##, fmt_points(&tri, hx, hy));
    }
    let _ = writeln!(s, "</svg>");
    s
}

/// Nonnegative for every plain count.
pub fn is_plain_count_sound(c: &TilingCount) -> bool {
    c.weighted || !c.value.is_negative()
}
