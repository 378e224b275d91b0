use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A rooted map as a rotation system on darts `0..2E`.
///
/// `sigma` turns counterclockwise around a vertex, `alpha` swaps the two
/// darts of an edge, and faces are the cycles of `phi = sigma ∘ alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct RootedMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    root: usize,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    root: usize,
}

impl TryFrom<RawMap> for RootedMap {
    type Error = Error;

    fn try_from(r: RawMap) -> Result<Self> {
        RootedMap::new(r.sigma, r.alpha, r.root)
    }
}

impl From<RootedMap> for RawMap {
    fn from(m: RootedMap) -> Self {
        RawMap {
            sigma: m.sigma,
            alpha: m.alpha,
            root: m.root,
        }
    }
}

fn check_permutation(name: &str, p: &[usize]) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for (i, &x) in p.iter().enumerate() {
        if x >= p.len() {
            return Err(Error::InvalidMap(format!("{name}({i}) = {x} is out of range")));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::InvalidMap(format!("{name} maps two darts to {x}")));
        }
    }
    Ok(())
}

fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cyc.push(d);
            d = p[d];
        }
        out.push(cyc);
    }
    out
}

impl RootedMap {
    /// Validates that `sigma` is a permutation, `alpha` a fixed-point-free
    /// involution, `root` a dart, and that `⟨sigma, alpha⟩` is transitive.
    pub fn new(sigma: Vec<usize>, alpha: Vec<usize>, root: usize) -> Result<Self> {
        let n = sigma.len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidMap(format!("dart count {n} must be positive and even")));
        }
        if alpha.len() != n {
            return Err(Error::InvalidMap(format!("sigma has {n} darts, alpha has {}", alpha.len())));
        }
        if root >= n {
            return Err(Error::InvalidMap(format!("root {root} is not a dart")));
        }
        check_permutation("sigma", &sigma)?;
        check_permutation("alpha", &alpha)?;
        for (d, &e) in alpha.iter().enumerate() {
            if e == d || alpha[e] != d {
                return Err(Error::InvalidMap(format!("alpha is not a fixed-point-free involution at {d}")));
            }
        }
        let m = RootedMap { sigma, alpha, root };
        if m.orbit_of_root().len() != n {
            return Err(Error::InvalidMap("map is not connected".into()));
        }
        Ok(m)
    }

    /// Builds the map with face permutation `phi`, using `sigma = phi ∘ alpha`.
    pub fn from_faces(phi: &[usize], alpha: Vec<usize>, root: usize) -> Result<Self> {
        check_permutation("phi", phi)?;
        if alpha.len() != phi.len() || alpha.iter().any(|&e| e >= phi.len()) {
            return Err(Error::InvalidMap("alpha does not match phi".into()));
        }
        let sigma = alpha.iter().map(|&e| phi[e]).collect();
        RootedMap::new(sigma, alpha, root)
    }

    fn orbit_of_root(&self) -> Vec<usize> {
        let mut seen = vec![false; self.sigma.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        let mut out = Vec::new();
        while let Some(d) = stack.pop() {
            out.push(d);
            for x in [self.sigma[d], self.alpha[d]] {
                if !seen[x] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
        out
    }

    pub fn darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn edges(&self) -> usize {
        self.darts() / 2
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        cycles(&self.sigma)
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        let phi: Vec<usize> = (0..self.darts()).map(|d| self.phi(d)).collect();
        cycles(&phi)
    }

    /// Index of the vertex (sigma-cycle) each dart leaves from.
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.darts()];
        for (i, cyc) in self.vertices().iter().enumerate() {
            for &d in cyc {
                out[d] = i;
            }
        }
        out
    }

    /// `V − E + F`
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices().len() as i64 - self.edges() as i64 + self.faces().len() as i64
    }

    pub fn is_planar(&self) -> bool {
        self.euler_characteristic() == 2
    }

    /// Degree of the face containing the root dart.
    pub fn root_face_degree(&self) -> usize {
        let mut d = self.phi(self.root);
        let mut deg = 1;
        while d != self.root {
            d = self.phi(d);
            deg += 1;
        }
        deg
    }

    /// Planar with every face of degree 3.
    pub fn is_triangulation(&self) -> bool {
        self.is_planar() && self.faces().iter().all(|f| f.len() == 3)
    }

    /// Planar, root face of degree `l` bounded by a simple cycle, every other
    /// face of degree 3.
    pub fn is_near_triangulation(&self, l: usize) -> bool {
        if !self.is_planar() || self.root_face_degree() != l {
            return false;
        }
        let vertex = self.vertex_of();
        let root_face = self.faces().into_iter().find(|f| f.contains(&self.root)).expect("root lies on a face");
        let distinct: HashSet<usize> = root_face.iter().map(|&d| vertex[d]).collect();
        distinct.len() == l
            && self
                .faces()
                .iter()
                .filter(|f| !f.contains(&self.root))
                .all(|f| f.len() == 3)
    }

    /// No loops and no multiple edges.
    pub fn is_simple(&self) -> bool {
        let vertex = self.vertex_of();
        let mut seen = HashSet::new();
        for d in 0..self.darts() {
            let (u, v) = (vertex[d], vertex[self.alpha[d]]);
            if u == v {
                return false;
            }
            if d < self.alpha[d] && !seen.insert((u.min(v), u.max(v))) {
                return false;
            }
        }
        true
    }

    /// No edge off the root face joins two vertices of the root face.
    pub fn is_chord_free(&self) -> bool {
        let vertex = self.vertex_of();
        let root_face = self.faces().into_iter().find(|f| f.contains(&self.root)).expect("root lies on a face");
        let on_face: HashSet<usize> = root_face.iter().copied().collect();
        let boundary: HashSet<usize> = root_face.iter().map(|&d| vertex[d]).collect();
        (0..self.darts()).all(|d| {
            let e = self.alpha[d];
            on_face.contains(&d)
                || on_face.contains(&e)
                || !(boundary.contains(&vertex[d]) && boundary.contains(&vertex[e]))
        })
    }

    /// Relabels darts breadth-first from the root, visiting `sigma(d)` then
    /// `alpha(d)`. Two rooted maps are isomorphic iff their canonical forms
    /// are equal.
    pub fn canonical(&self) -> RootedMap {
        let n = self.darts();
        let mut label = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[self.root] = 0;
        order.push(self.root);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            for x in [self.sigma[d], self.alpha[d]] {
                if label[x] == usize::MAX {
                    label[x] = order.len();
                    order.push(x);
                }
            }
            i += 1;
        }
        let sigma = order.iter().map(|&d| label[self.sigma[d]]).collect();
        let alpha = order.iter().map(|&d| label[self.alpha[d]]).collect();
        RootedMap { sigma, alpha, root: 0 }
    }

    /// The same map with dart `d` renamed `perm[d]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<RootedMap> {
        check_permutation("relabelling", perm)?;
        if perm.len() != self.darts() {
            return Err(Error::InvalidMap("relabelling has the wrong length".into()));
        }
        let mut sigma = vec![0; self.darts()];
        let mut alpha = vec![0; self.darts()];
        for d in 0..self.darts() {
            sigma[perm[d]] = perm[self.sigma[d]];
            alpha[perm[d]] = perm[self.alpha[d]];
        }
        Ok(RootedMap {
            sigma,
            alpha,
            root: perm[self.root],
        })
    }

    /// Number of vertices at each graph distance from the root vertex.
    pub fn distance_profile(&self) -> Vec<u64> {
        let vertex = self.vertex_of();
        let nv = self.vertices().len();
        let mut adj = vec![Vec::new(); nv];
        for d in 0..self.darts() {
            adj[vertex[d]].push(vertex[self.alpha[d]]);
        }
        let mut dist = vec![usize::MAX; nv];
        let start = vertex[self.root];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut profile = vec![0u64];
        while let Some(v) = queue.pop_front() {
            let k = dist[v];
            if profile.len() <= k {
                profile.resize(k + 1, 0);
            }
            profile[k] += 1;
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = k + 1;
                    queue.push_back(w);
                }
            }
        }
        profile
    }
}

/// Three lines: `sigma …`, `alpha …`, `root d`, with space-separated darts.
impl fmt::Display for RootedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &[usize]| p.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "sigma {}", join(&self.sigma))?;
        writeln!(f, "alpha {}", join(&self.alpha))?;
        write!(f, "root {}", self.root)
    }
}

impl FromStr for RootedMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut sigma = None;
        let mut alpha = None;
        let mut root = None;
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let nums = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{key}: {t:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let slot = match key {
                "sigma" => &mut sigma,
                "alpha" => &mut alpha,
                "root" => {
                    if nums.len() != 1 {
                        return Err(Error::Parse("root takes exactly one dart".into()));
                    }
                    &mut root
                }
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            };
            if slot.replace(nums).is_some() {
                return Err(Error::Parse(format!("duplicate key {key:?}")));
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing {k}"));
        let root = root.ok_or_else(|| missing("root"))?[0];
        RootedMap::new(
            sigma.ok_or_else(|| missing("sigma"))?,
            alpha.ok_or_else(|| missing("alpha"))?,
            root,
        )
    }
}
