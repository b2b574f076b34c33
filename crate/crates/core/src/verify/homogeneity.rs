//! Empirical recurrence radii for patterns of `λ`.
//!
//! A configuration is homogeneous when each of its patterns reappears within
//! a fixed distance `f(P)` of every vertex; its orbit closure is then
//! minimal. Here `f(P)` is measured on finite regions only, so the output is
//! evidence rather than proof.
//!
//! Distances are between anchor vertices (a window's centre), in the L∞
//! metric. The report computes them with an exact distance transform; the
//! validator re-checks them with a separate dilation pass.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::lattice::{column_cycle, label_of_i64, Letter, Orientation, Pattern};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomogeneityLimits {
    pub max_pattern_radius: u64,
    pub max_search_radius: u64,
}

impl Default for HomogeneityLimits {
    fn default() -> Self {
        HomogeneityLimits { max_pattern_radius: 2, max_search_radius: 4096 }
    }
}

/// Maximal distance, over the vertices of `[-search_radius, search_radius]²`,
/// to the nearest occurrence of each window pattern seen in that square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ReportRepr", try_from = "ReportRepr")]
pub struct HomogeneityReport {
    pub pattern_radius: u64,
    pub search_radius: u64,
    pub entries: BTreeMap<Pattern, u64>,
}

impl HomogeneityReport {
    pub fn f_hat(&self, pattern: &Pattern) -> Option<u64> {
        self.entries.get(pattern).copied()
    }

    pub fn max_f_hat(&self) -> u64 {
        self.entries.values().copied().max().unwrap_or(0)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    pattern: String,
    #[serde(with = "crate::json::decimal")]
    f_hat: u64,
}

#[derive(Serialize, Deserialize)]
struct ReportRepr {
    #[serde(with = "crate::json::decimal")]
    pattern_radius: u64,
    #[serde(with = "crate::json::decimal")]
    search_radius: u64,
    entries: Vec<EntryRepr>,
}

impl From<HomogeneityReport> for ReportRepr {
    fn from(r: HomogeneityReport) -> ReportRepr {
        ReportRepr {
            pattern_radius: r.pattern_radius,
            search_radius: r.search_radius,
            entries: r.entries.iter().map(|(p, &f_hat)| EntryRepr { pattern: p.to_compact(), f_hat }).collect(),
        }
    }
}

impl TryFrom<ReportRepr> for HomogeneityReport {
    type Error = Error;
    fn try_from(r: ReportRepr) -> Result<HomogeneityReport> {
        let entries = r
            .entries
            .into_iter()
            .map(|e| Ok((Pattern::from_compact(r.pattern_radius, &e.pattern)?, e.f_hat)))
            .collect::<Result<_>>()?;
        Ok(HomogeneityReport { pattern_radius: r.pattern_radius, search_radius: r.search_radius, entries })
    }
}

/// A finite set of coloured edges placed relative to an anchor vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgePattern {
    edges: Vec<(i64, i64, Orientation, Letter)>,
}

impl EdgePattern {
    pub fn new(edges: Vec<(i64, i64, Orientation, Letter)>) -> EdgePattern {
        EdgePattern { edges }
    }

    /// The single edge based at the anchor.
    pub fn single(orientation: Orientation, letter: Letter) -> EdgePattern {
        EdgePattern::new(vec![(0, 0, orientation, letter)])
    }

    fn reach(&self) -> i64 {
        self.edges.iter().map(|&(dx, dy, _, _)| dx.abs().max(dy.abs()) + 1).max().unwrap_or(0)
    }
}

impl From<&Pattern> for EdgePattern {
    fn from(p: &Pattern) -> EdgePattern {
        EdgePattern::new(p.edges().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityValidation {
    #[serde(with = "crate::json::decimal")]
    pub region_radius: u64,
    #[serde(with = "crate::json::decimal")]
    pub patterns_checked: usize,
    #[serde(with = "crate::json::decimal")]
    pub vertices_checked: u64,
    pub violations: Vec<String>,
}

impl HomogeneityValidation {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Vertical colours of `λ` on a rectangle of edge bases.
struct Patch {
    x0: i64,
    y0: i64,
    width: usize,
    vertical: Vec<Letter>,
}

impl Patch {
    fn lambda(x0: i64, x1: i64, y0: i64, y1: i64) -> Patch {
        let width = (x1 - x0 + 1) as usize;
        let height = (y1 - y0 + 1) as usize;
        let mut vertical = vec![Letter::A; width * height];
        for (col, x) in (x0..=x1).enumerate() {
            let cycle = column_cycle(label_of_i64(x));
            let m = cycle.len();
            let phase = y0.rem_euclid(m as i64) as usize;
            for row in 0..height {
                vertical[row * width + col] = cycle[(phase + row) % m];
            }
        }
        Patch { x0, y0, width, vertical }
    }

    fn colour(&self, x: i64, y: i64, orientation: Orientation) -> Letter {
        match orientation {
            Orientation::Horizontal if x.rem_euclid(2) == 0 => Letter::E,
            Orientation::Horizontal => Letter::F,
            Orientation::Vertical => self.vertical[(y - self.y0) as usize * self.width + (x - self.x0) as usize],
        }
    }
}

/// A square block of anchor vertices `[-half, half]²`, addressed row-major
/// by `(row, col)` with `0 ≤ row, col < side`.
#[derive(Clone, Copy)]
struct Grid {
    half: i64,
}

impl Grid {
    fn side(self) -> usize {
        (2 * self.half + 1) as usize
    }

    fn coords(self) -> impl Iterator<Item = (i64, i64)> {
        let h = self.half;
        (-h..=h).flat_map(move |y| (-h..=h).map(move |x| (x, y)))
    }
}

// Three bits per letter, in the storage order of `Pattern`.
fn pack(letters: impl Iterator<Item = Letter>) -> u128 {
    letters.fold(0u128, |acc, l| (acc << 3) | l.code() as u128)
}

/// Pattern keys of every window of radius `r` anchored in `grid`.
fn window_keys(grid: Grid, r: i64) -> Vec<u128> {
    let reach = grid.half + r;
    let patch = Patch::lambda(-reach, reach, -reach, reach);
    let offsets: Vec<(i64, i64, Orientation)> = {
        let h = (-r..=r).flat_map(|dy| (-r..r).map(move |dx| (dx, dy, Orientation::Horizontal)));
        let v = (-r..r).flat_map(|dy| (-r..=r).map(move |dx| (dx, dy, Orientation::Vertical)));
        h.chain(v).collect()
    };
    grid.coords().map(|(x, y)| pack(offsets.iter().map(|&(dx, dy, o)| patch.colour(x + dx, y + dy, o)))).collect()
}

fn pattern_key(p: &Pattern) -> u128 {
    pack(p.colours().iter().copied())
}

fn occurrences_of(pattern: &EdgePattern, grid: Grid) -> Vec<u32> {
    let reach = grid.half + pattern.reach();
    let patch = Patch::lambda(-reach, reach, -reach, reach);
    grid.coords()
        .enumerate()
        .filter(|&(_, (x, y))| pattern.edges.iter().all(|&(dx, dy, o, l)| patch.colour(x + dx, y + dy, o) == l))
        .map(|(i, _)| i as u32)
        .collect()
}

const INF: i64 = 1 << 40;

/// Exact 1-D transform `out[u] = min_i max(|u - i|, g[i])`, the column pass
/// of the separable L∞ distance transform (Meijster, Roerdink and Hesselink).
fn chessboard_pass(g: &[i64], out: &mut [i64]) {
    let m = g.len();
    if m == 0 {
        return;
    }
    let f = |x: usize, i: usize| (x as i64 - i as i64).abs().max(g[i]);
    let sep = |i: usize, u: usize| {
        let (i_, u_) = (i as i64, u as i64);
        let mid = (i_ + u_).div_euclid(2);
        if g[i] <= g[u] {
            (i_ + g[u]).max(mid)
        } else {
            (u_ - g[i]).min(mid)
        }
    };
    let mut s = vec![0usize; m];
    let mut t = vec![0usize; m];
    let mut q: isize = 0;
    for u in 1..m {
        while q >= 0 && f(t[q as usize], s[q as usize]) > f(t[q as usize], u) {
            q -= 1;
        }
        if q < 0 {
            q = 0;
            s[0] = u;
        } else {
            let w = 1 + sep(s[q as usize], u);
            if w >= 0 && (w as usize) < m {
                q += 1;
                s[q as usize] = u;
                t[q as usize] = w as usize;
            }
        }
    }
    for u in (0..m).rev() {
        out[u] = f(u, s[q as usize]);
        if u == t[q as usize] {
            q -= 1;
        }
    }
}

/// Largest L∞ distance from a vertex of the inner square (the grid minus
/// `margin` on every side) to the nearest occurrence; `None` if some inner
/// vertex has no occurrence anywhere in the grid.
fn max_inner_distance(occ: &[u32], grid: Grid, margin: usize) -> Option<u64> {
    let side = grid.side();
    let inner = side - 2 * margin;
    let mut h = vec![INF; side * inner];

    let mut start = 0;
    while start < occ.len() {
        let row = occ[start] as usize / side;
        let mut end = start;
        while end < occ.len() && occ[end] as usize / side == row {
            end += 1;
        }
        let xs: Vec<i64> = occ[start..end].iter().map(|&i| (i as usize % side) as i64).collect();
        let mut k = 0;
        for c in 0..inner {
            let col = (c + margin) as i64;
            while k + 1 < xs.len() && xs[k + 1] <= col {
                k += 1;
            }
            let mut d = (col - xs[k]).abs();
            if k + 1 < xs.len() {
                d = d.min((xs[k + 1] - col).abs());
            }
            h[row * inner + c] = d;
        }
        start = end;
    }

    let mut g = vec![0; side];
    let mut dt = vec![0; side];
    let mut worst = 0;
    for c in 0..inner {
        for row in 0..side {
            g[row] = h[row * inner + c];
        }
        chessboard_pass(&g, &mut dt);
        worst = worst.max(dt[margin..margin + inner].iter().copied().max().unwrap_or(0));
    }
    (worst < INF).then_some(worst as u64)
}

// Radius-2 windows have 40 edges, which still pack into 120 bits.
const MAX_PACKED_RADIUS: u64 = 2;

fn check_limits(pattern_radius: u64, search_radius: u64, limits: HomogeneityLimits) -> Result<()> {
    let max_radius = limits.max_pattern_radius.min(MAX_PACKED_RADIUS);
    if pattern_radius > max_radius {
        return Err(Error::CostGuard {
            what: "pattern radius",
            value: pattern_radius.to_string(),
            limit: max_radius.to_string(),
        });
    }
    if search_radius > limits.max_search_radius {
        return Err(Error::CostGuard {
            what: "search radius",
            value: search_radius.to_string(),
            limit: limits.max_search_radius.to_string(),
        });
    }
    Ok(())
}

// Margins grow by doubling up to this multiple of the search radius.
const MARGIN_GROWTH_CAP: u64 = 8;

fn initial_margin(search_radius: u64) -> u64 {
    search_radius.max(8)
}

/// [`homogeneity_report_with_limits`] with the default cost guard
/// (pattern radius ≤ 2, search radius ≤ 4096).
pub fn homogeneity_report(pattern_radius: u64, search_radius: u64) -> Result<HomogeneityReport> {
    homogeneity_report_with_limits(pattern_radius, search_radius, HomogeneityLimits::default())
}

/// Collects every radius-`pattern_radius` window of `λ` centred in
/// `[-search_radius, search_radius]²` and measures how far each vertex of
/// that square is from its nearest occurrence.
pub fn homogeneity_report_with_limits(
    pattern_radius: u64,
    search_radius: u64,
    limits: HomogeneityLimits,
) -> Result<HomogeneityReport> {
    check_limits(pattern_radius, search_radius, limits)?;
    let s = search_radius as i64;
    let r = pattern_radius as i64;

    // The pattern set is fixed by the search square itself.
    let mut pending: HashMap<u128, Pattern> = HashMap::new();
    {
        let keys = window_keys(Grid { half: s }, r);
        for (key, (x, y)) in keys.into_iter().zip(Grid { half: s }.coords()) {
            pending.entry(key).or_insert_with(|| read_pattern(x, y, r));
        }
    }

    let mut entries = BTreeMap::new();
    let mut margin = initial_margin(search_radius);
    loop {
        let grid = Grid { half: s + margin as i64 };
        let keys = window_keys(grid, r);
        let mut lists: HashMap<u128, Vec<u32>> = pending.keys().map(|&k| (k, Vec::new())).collect();
        for (i, key) in keys.iter().enumerate() {
            if let Some(list) = lists.get_mut(key) {
                list.push(i as u32);
            }
        }
        drop(keys);
        for (key, occ) in lists {
            if let Some(d) = max_inner_distance(&occ, grid, margin as usize).filter(|&d| d <= margin) {
                entries.insert(pending.remove(&key).expect("pending pattern"), d);
            }
        }
        if pending.is_empty() {
            break;
        }
        margin *= 2;
        if margin > MARGIN_GROWTH_CAP * initial_margin(search_radius) {
            let p = pending.values().next().expect("pending pattern");
            return Err(Error::PatternAbsent(p.to_compact()));
        }
    }
    Ok(HomogeneityReport { pattern_radius, search_radius, entries })
}

fn read_pattern(x: i64, y: i64, r: i64) -> Pattern {
    use crate::lattice::{extract_window, Configuration, VertexCoord};
    extract_window(&Configuration::lambda(), &VertexCoord::new(x, y), r as u64).pattern
}

/// Recurrence radius of an arbitrary edge pattern over the vertices of
/// `[-search_radius, search_radius]²`.
pub fn recurrence_radius(pattern: &EdgePattern, search_radius: u64) -> Result<u64> {
    check_limits(0, search_radius, HomogeneityLimits::default())?;
    let mut margin = initial_margin(search_radius);
    loop {
        let grid = Grid { half: search_radius as i64 + margin as i64 };
        let occ = occurrences_of(pattern, grid);
        if let Some(d) = max_inner_distance(&occ, grid, margin as usize).filter(|&d| d <= margin) {
            return Ok(d);
        }
        margin *= 2;
        if margin > MARGIN_GROWTH_CAP * initial_margin(search_radius) {
            return Err(Error::PatternAbsent(format!("{:?}", pattern.edges)));
        }
    }
}

/// Checks, by dilating the occurrence set of every reported pattern by its
/// `f̂`, that each vertex of `[-region_radius, region_radius]²` lies within
/// `f̂` of an occurrence.
pub fn validate_homogeneity(report: &HomogeneityReport, region_radius: u64) -> Result<HomogeneityValidation> {
    check_limits(report.pattern_radius, region_radius, HomogeneityLimits::default())?;
    let reach = report.max_f_hat() as usize;
    let region = region_radius as usize;
    let grid = Grid { half: (region + reach) as i64 };
    let side = grid.side();
    let inner = 2 * region + 1;

    let index: HashMap<u128, usize> = report.entries.keys().enumerate().map(|(i, p)| (pattern_key(p), i)).collect();
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); index.len()];
    for (i, key) in window_keys(grid, report.pattern_radius as i64).into_iter().enumerate() {
        if let Some(&p) = index.get(&key) {
            lists[p].push(i as u32);
        }
    }

    let mut violations = Vec::new();
    for ((pattern, &f_hat), occ) in report.entries.iter().zip(&lists) {
        if let Some(v) = first_uncovered(occ, side, reach, inner, f_hat as usize) {
            let (x, y) = (v.0 as i64 - region as i64, v.1 as i64 - region as i64);
            violations.push(format!("pattern {} has no occurrence within {f_hat} of ({x}, {y})", pattern.to_compact()));
        }
    }
    Ok(HomogeneityValidation {
        region_radius,
        patterns_checked: report.entries.len(),
        vertices_checked: (inner * inner) as u64,
        violations,
    })
}

// Dilation by an f-box: rows first with prefix counts, then columns with a
// sliding window. Returns an uncovered inner vertex as (col, row) offsets.
fn first_uncovered(occ: &[u32], side: usize, margin: usize, inner: usize, f: usize) -> Option<(usize, usize)> {
    let mut row_hits = vec![false; side * inner];
    let mut prefix = vec![0u32; side + 1];
    let mut start = 0;
    while start < occ.len() {
        let row = occ[start] as usize / side;
        let mut end = start;
        while end < occ.len() && occ[end] as usize / side == row {
            end += 1;
        }
        prefix.iter_mut().for_each(|p| *p = 0);
        for &i in &occ[start..end] {
            prefix[i as usize % side + 1] = 1;
        }
        for k in 0..side {
            prefix[k + 1] += prefix[k];
        }
        for c in 0..inner {
            let col = c + margin;
            let lo = col.saturating_sub(f);
            let hi = (col + f + 1).min(side);
            row_hits[row * inner + c] = prefix[hi] > prefix[lo];
        }
        start = end;
    }

    for c in 0..inner {
        let mut window = 0usize;
        let lo_row = margin - f.min(margin);
        // Seed the window with rows [margin - f, margin + f).
        for row in lo_row..(margin + f).min(side) {
            window += row_hits[row * inner + c] as usize;
        }
        for r in 0..inner {
            let row = r + margin;
            if row + f < side {
                window += row_hits[(row + f) * inner + c] as usize;
            }
            if window == 0 {
                return Some((c, r));
            }
            if row >= f && row - f >= lo_row {
                window -= row_hits[(row - f) * inner + c] as usize;
            }
        }
    }
    None
}
