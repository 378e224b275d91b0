//! Brute-force enumeration of small rooted planar triangulations.
//!
//! Maps are grown from the root by gluing triangles in the order their
//! darts are first reached, so the labelling of every generated map is
//! canonical and each rooted map is produced exactly once.

mod map;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use map::RootedMap;

/// Largest dart count the oracle accepts by default (closed F = 8, or a
/// triangle boundary with F = 7).
pub const DEFAULT_MAX_DARTS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_darts: usize,
    /// Search-tree depth at which work is split across threads; 0 runs
    /// sequentially.
    pub split_depth: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_darts: DEFAULT_MAX_DARTS,
            split_depth: 4,
        }
    }
}

/// Exact counts keyed by `(F, k)` or `(F, L)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    rows: BTreeMap<(usize, usize), u64>,
}

impl CountTable {
    pub fn new() -> Self {
        CountTable::default()
    }

    pub fn add(&mut self, f: usize, k: usize, count: u64) {
        *self.rows.entry((f, k)).or_insert(0) += count;
    }

    pub fn get(&self, f: usize, k: usize) -> u64 {
        self.rows.get(&(f, k)).copied().unwrap_or(0)
    }

    /// `(F, k, count)` in increasing `(F, k)` order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.rows.iter().map(|(&(f, k), &c)| (f, k, c))
    }

    pub fn merge(mut self, other: CountTable) -> CountTable {
        for (f, k, c) in other.rows() {
            self.add(f, k, c);
        }
        self
    }

    pub fn face_counts(&self) -> Vec<usize> {
        let set: std::collections::BTreeSet<usize> = self.rows.keys().map(|&(f, _)| f).collect();
        set.into_iter().collect()
    }

    /// Sum over the second key at fixed `F`.
    pub fn total(&self, f: usize) -> u64 {
        self.rows.range((f, 0)..=(f, usize::MAX)).map(|(_, &c)| c).sum()
    }
}

/// Restrictions on boundary maps.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NearFlags {
    /// No loops, no multiple edges.
    pub simple: bool,
    /// No inner edge between two boundary vertices.
    pub chord_free: bool,
}

/// Face layout: an optional boundary face of degree `L` (darts `0..L`)
/// followed by triangles in blocks of three.
struct Layout {
    phi: Vec<usize>,
    first_triangle: usize,
}

impl Layout {
    fn new(boundary: Option<usize>, triangles: usize) -> Self {
        let l = boundary.unwrap_or(0);
        let n = l + 3 * triangles;
        let mut phi: Vec<usize> = (0..n).collect();
        for d in 0..l {
            phi[d] = (d + 1) % l;
        }
        for t in 0..triangles {
            let b = l + 3 * t;
            phi[b] = b + 1;
            phi[b + 1] = b + 2;
            phi[b + 2] = b;
        }
        Layout { phi, first_triangle: l }
    }

    fn darts(&self) -> usize {
        self.phi.len()
    }

    /// Darts of the faces present before any gluing.
    fn initial_used(&self) -> usize {
        if self.first_triangle > 0 {
            self.first_triangle
        } else {
            3.min(self.darts())
        }
    }
}

const UNPAIRED: usize = usize::MAX;

#[derive(Debug, Clone)]
struct State {
    alpha: Vec<usize>,
    used: usize,
    next: usize,
}

enum Step {
    Complete,
    Dead,
    Branch(usize),
}

impl State {
    fn root(layout: &Layout) -> Self {
        State {
            alpha: vec![UNPAIRED; layout.darts()],
            used: layout.initial_used(),
            next: 0,
        }
    }

    fn step(&mut self, n: usize) -> Step {
        while self.next < self.used && self.alpha[self.next] != UNPAIRED {
            self.next += 1;
        }
        match (self.next == self.used, self.used == n) {
            (true, true) => Step::Complete,
            (true, false) => Step::Dead,
            _ => Step::Branch(self.next),
        }
    }

    /// Choices for the partner of `d`: an unpaired dart already reached, or
    /// the first dart of a fresh triangle.
    fn partners(&self, d: usize, n: usize) -> impl Iterator<Item = usize> + '_ {
        let existing = (d + 1..self.used).filter(|&e| self.alpha[e] == UNPAIRED);
        existing.chain((self.used < n).then_some(self.used))
    }

    fn pair(&mut self, d: usize, e: usize) {
        if e == self.used {
            self.used += 3;
        }
        self.alpha[d] = e;
        self.alpha[e] = d;
    }

    fn unpair(&mut self, d: usize, e: usize, used: usize) {
        self.alpha[d] = UNPAIRED;
        self.alpha[e] = UNPAIRED;
        self.used = used;
    }
}

fn complete(layout: &Layout, st: &mut State, visit: &mut dyn FnMut(&[usize])) {
    let n = layout.darts();
    let saved_next = st.next;
    match st.step(n) {
        Step::Complete => visit(&st.alpha),
        Step::Dead => {}
        Step::Branch(d) => {
            let used = st.used;
            let partners: Vec<usize> = st.partners(d, n).collect();
            for e in partners {
                st.pair(d, e);
                complete(layout, st, visit);
                st.unpair(d, e, used);
            }
        }
    }
    st.next = saved_next;
}

fn frontier(layout: &Layout, depth: usize) -> Vec<State> {
    let n = layout.darts();
    let mut level = vec![State::root(layout)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for mut st in level {
            match st.step(n) {
                Step::Branch(d) => {
                    for e in st.partners(d, n).collect::<Vec<_>>() {
                        let mut child = st.clone();
                        child.pair(d, e);
                        next.push(child);
                    }
                }
                // finished or dead states pass through unchanged
                _ => next.push(st),
            }
        }
        level = next;
    }
    level
}

/// Folds `visit` over every planar map of the layout; per-thread results
/// are merged with `merge` in frontier order.
fn fold_maps<A, I, V, M>(layout: &Layout, split_depth: usize, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, RootedMap) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let run = |mut st: State| {
        let mut acc = init();
        complete(layout, &mut st, &mut |alpha| {
            let m = RootedMap::from_faces(&layout.phi, alpha.to_vec(), 0).expect("generated maps are valid rotation systems");
            if m.is_planar() {
                visit(&mut acc, m);
            }
        });
        acc
    };
    if split_depth == 0 {
        return run(State::root(layout));
    }
    let parts: Vec<A> = frontier(layout, split_depth).into_par_iter().map(run).collect();
    parts.into_iter().fold(init(), &merge)
}

fn check_bound(darts: usize, cfg: &OracleConfig) -> Result<()> {
    if darts > cfg.max_darts {
        return Err(Error::ResourceBound(format!(
            "{darts} darts exceed the oracle bound of {}",
            cfg.max_darts
        )));
    }
    Ok(())
}

fn check_even(f_max: usize) -> Result<()> {
    if !f_max.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!("closed triangulations have an even face count, got F_max = {f_max}")));
    }
    Ok(())
}

/// All rooted planar triangulations with `f` faces, one per isomorphism
/// class. Errors if two generated maps share a canonical form.
pub fn closed_maps(f: usize, cfg: &OracleConfig) -> Result<Vec<RootedMap>> {
    check_bound(3 * f, cfg)?;
    if f == 0 || f % 2 == 1 {
        return Ok(Vec::new());
    }
    let layout = Layout::new(None, f);
    let maps = fold_maps(
        &layout,
        cfg.split_depth,
        Vec::new,
        |acc: &mut Vec<RootedMap>, m| acc.push(m),
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    let mut seen = HashSet::new();
    for m in &maps {
        if !m.is_triangulation() {
            return Err(Error::inconsistent("oracle", "generated map is not a triangulation"));
        }
        if !seen.insert(m.canonical()) {
            return Err(Error::inconsistent("oracle", "a rooted map was generated twice"));
        }
    }
    Ok(maps)
}

/// Number of rooted planar triangulations for each even `F ≤ f_max`.
pub fn enumerate_closed(f_max: usize, cfg: &OracleConfig) -> Result<BTreeMap<usize, u64>> {
    check_even(f_max)?;
    check_bound(3 * f_max, cfg)?;
    (2..=f_max)
        .step_by(2)
        .map(|f| {
            let layout = Layout::new(None, f);
            let count = fold_maps(&layout, cfg.split_depth, || 0u64, |c, _| *c += 1, |a, b| a + b);
            Ok((f, count))
        })
        .collect()
}

/// Entry `(F, k)`: pairs (rooted triangulation with `F` faces, vertex at
/// distance `k` from the root vertex), for even `F ≤ f_max`.
pub fn oracle_two_point(f_max: usize, cfg: &OracleConfig) -> Result<CountTable> {
    check_even(f_max)?;
    check_bound(3 * f_max, cfg)?;
    let mut table = CountTable::new();
    for f in (2..=f_max).step_by(2) {
        let layout = Layout::new(None, f);
        let part = fold_maps(
            &layout,
            cfg.split_depth,
            CountTable::new,
            |t, m| {
                for (k, &c) in m.distance_profile().iter().enumerate() {
                    t.add(f, k, c);
                }
            },
            CountTable::merge,
        );
        table = table.merge(part);
    }
    Ok(table)
}

/// Entry `(F, L)`: rooted planar maps whose root face has degree `L` and
/// is bounded by a simple cycle, with `F` further faces all of degree 3,
/// for `1 ≤ F ≤ f_max`.
pub fn enumerate_near(l: usize, f_max: usize, flags: NearFlags, cfg: &OracleConfig) -> Result<CountTable> {
    if l == 0 {
        return Err(Error::InvalidConfig("boundary length must be at least 1".into()));
    }
    check_bound(l + 3 * f_max, cfg)?;
    let mut table = CountTable::new();
    for f in 1..=f_max {
        if (l + 3 * f) % 2 == 1 {
            continue;
        }
        let layout = Layout::new(Some(l), f);
        let count = fold_maps(
            &layout,
            cfg.split_depth,
            || 0u64,
            |c, m| {
                if m.is_near_triangulation(l)
                    && (!flags.simple || m.is_simple())
                    && (!flags.chord_free || m.is_chord_free())
                {
                    *c += 1;
                }
            },
            |a, b| a + b,
        );
        table.add(f, l, count);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> OracleConfig {
        OracleConfig {
            split_depth: 0,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn closed_counts() {
        let c = enumerate_closed(6, &seq()).unwrap();
        assert_eq!(c.values().copied().collect::<Vec<_>>(), vec![4, 32, 336]);
        assert_eq!(closed_maps(2, &seq()).unwrap().len(), 4);
        assert!(closed_maps(3, &seq()).unwrap().is_empty());
    }

    #[test]
    fn two_point_rows() {
        let t = oracle_two_point(4, &OracleConfig::default()).unwrap();
        assert_eq!((t.get(2, 0), t.get(2, 1), t.get(2, 2)), (4, 7, 1));
        assert_eq!(t.total(4), 32 * 4);
    }

    #[test]
    fn boundary_counts() {
        let both = NearFlags {
            simple: true,
            chord_free: true,
        };
        let t = enumerate_near(3, 5, both, &seq()).unwrap();
        assert_eq!((t.get(1, 3), t.get(3, 3), t.get(5, 3)), (1, 1, 3));
        let s0 = enumerate_near(1, 3, NearFlags::default(), &seq()).unwrap();
        assert_eq!((s0.get(1, 1), s0.get(3, 1)), (1, 4));
        let r1 = enumerate_near(2, 2, NearFlags::default(), &seq()).unwrap();
        assert_eq!(r1.get(2, 2), 3);
    }

    #[test]
    fn bounds_and_parity() {
        assert!(matches!(enumerate_closed(3, &seq()), Err(Error::InvalidConfig(_))));
        assert!(matches!(enumerate_closed(10, &seq()), Err(Error::ResourceBound(_))));
        assert!(matches!(enumerate_near(0, 1, NearFlags::default(), &seq()), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn split_does_not_change_counts() {
        let a = oracle_two_point(6, &seq()).unwrap();
        for depth in [1, 3, 6] {
            let cfg = OracleConfig {
                split_depth: depth,
                ..OracleConfig::default()
            };
            assert_eq!(oracle_two_point(6, &cfg).unwrap(), a);
        }
    }
}
