//! Simply-laced Cartan data, weights and finite weight supports.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Vertex = usize;
pub type Scalar = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("a Cartan datum needs at least one vertex")]
    NoVertices,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge {{{0},{1}}} is listed twice")]
    MultiEdge(Vertex, Vertex),
    #[error("the Dynkin graph is not connected")]
    Disconnected,
    #[error("scalar t({0},{1}) must be nonzero")]
    ZeroScalar(Vertex, Vertex),
    #[error("scalar t({0},{0}) is not defined")]
    DiagonalScalar(Vertex),
    #[error("t({0},{1}) and t({1},{0}) must agree for non-adjacent vertices")]
    AsymmetricScalar(Vertex, Vertex),
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("support is empty")]
    EmptySupport,
    #[error("support weights do not share a coset base point")]
    MixedCosets,
    #[error("support is declared unbounded; only finite supports can be checked")]
    NonFiniteSupport,
    #[error("pairing difference is not an integral combination of simple roots")]
    NonIntegralSolve,
    #[error("grassmannian parameters need n >= 2 (got m={m}, n={n})")]
    InvalidGrassmannian { m: usize, n: usize },
}

/// A connected simply-laced Dynkin graph with the scalars `t_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    n: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
    matrix: Vec<i64>,
    t: BTreeMap<(Vertex, Vertex), Scalar>,
}

impl CartanDatum {
    /// Builds a datum with every `t_ij = 1`.
    pub fn new<I>(vertices: usize, edges: I) -> Result<Self, CartanError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        if vertices == 0 {
            return Err(CartanError::NoVertices);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= vertices {
                    return Err(CartanError::VertexOutOfRange(v));
                }
            }
            if a == b {
                return Err(CartanError::Loop(a));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(CartanError::MultiEdge(e.0, e.1));
            }
        }
        let mut matrix = vec![0i64; vertices * vertices];
        for i in 0..vertices {
            matrix[i * vertices + i] = 2;
        }
        for &(a, b) in &set {
            matrix[a * vertices + b] = -1;
            matrix[b * vertices + a] = -1;
        }
        let mut t = BTreeMap::new();
        for i in 0..vertices {
            for j in 0..vertices {
                if i != j {
                    t.insert((i, j), Scalar::one());
                }
            }
        }
        let datum = CartanDatum { n: vertices, edges: set, matrix, t };
        if !datum.is_connected() {
            return Err(CartanError::Disconnected);
        }
        Ok(datum)
    }

    /// Overrides scalars; unspecified pairs keep their current value.
    pub fn with_scalars<I>(mut self, values: I) -> Result<Self, CartanError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Scalar)>,
    {
        for (i, j, v) in values {
            for x in [i, j] {
                if x >= self.n {
                    return Err(CartanError::VertexOutOfRange(x));
                }
            }
            if i == j {
                return Err(CartanError::DiagonalScalar(i));
            }
            if v.is_zero() {
                return Err(CartanError::ZeroScalar(i, j));
            }
            self.t.insert((i, j), v);
        }
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.pair(i, j) == 0 && self.t[&(i, j)] != self.t[&(j, i)] {
                    return Err(CartanError::AsymmetricScalar(i, j));
                }
            }
        }
        Ok(self)
    }

    /// `sl_{rank+1}`: the path `0 - 1 - ... - (rank-1)`.
    pub fn type_a(rank: usize) -> Self {
        Self::new(rank, (1..rank).map(|i| (i - 1, i))).expect("path graph is valid")
    }

    /// `D_rank` for `rank >= 4`: a path `0 - ... - (rank-2)` plus `(rank-3) - (rank-1)`.
    pub fn type_d(rank: usize) -> Self {
        assert!(rank >= 4, "type D needs rank >= 4");
        let mut edges: Vec<_> = (1..rank - 1).map(|i| (i - 1, i)).collect();
        edges.push((rank - 3, rank - 1));
        Self::new(rank, edges).expect("D graph is valid")
    }

    /// The cycle on `len >= 3` vertices (affine type A).
    pub fn cycle(len: usize) -> Self {
        assert!(len >= 3, "a cycle needs at least three vertices");
        Self::new(len, (0..len).map(|i| (i, (i + 1) % len))).expect("cycle graph is valid")
    }

    pub fn triangle() -> Self {
        Self::cycle(3)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    /// The Cartan matrix entry `<alpha_i, alpha_j>`.
    pub fn pair(&self, i: Vertex, j: Vertex) -> i64 {
        self.matrix[i * self.n + j]
    }

    pub fn is_edge(&self, i: Vertex, j: Vertex) -> bool {
        i != j && self.pair(i, j) == -1
    }

    pub fn t(&self, i: Vertex, j: Vertex) -> Scalar {
        self.t[&(i, j)]
    }

    /// All scalars `t_ij` with `i != j`.
    pub fn scalars(&self) -> impl Iterator<Item = (Vertex, Vertex, Scalar)> + '_ {
        self.t.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// True for the path graph labelled `0 - 1 - ... - (n-1)` in order.
    pub fn is_type_a(&self) -> bool {
        self.edges.len() + 1 == self.n && (1..self.n).all(|i| self.edges.contains(&(i - 1, i)))
    }

    pub fn neighbours(&self, i: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&j| self.is_edge(i, j))
    }

    /// Vertex triples spanning a triangle, each listed once in increasing order.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    if self.is_edge(i, j) && self.is_edge(j, k) && self.is_edge(i, k) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }

    /// Vertex sets carrying a 4-cycle, each listed once.
    pub fn squares(&self) -> Vec<[Vertex; 4]> {
        let mut found = BTreeSet::new();
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let vs = [a, b, c, d];
                        let distinct = (0..4).all(|x| (x + 1..4).all(|y| vs[x] != vs[y]));
                        if distinct
                            && self.is_edge(a, b)
                            && self.is_edge(b, c)
                            && self.is_edge(c, d)
                            && self.is_edge(d, a)
                        {
                            let mut s = vs;
                            s.sort_unstable();
                            found.insert(s);
                        }
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    /// Solves `sum_i a_i C_ij = delta_j` over the integers.
    pub fn root_coords_for(&self, delta: &[i64]) -> Result<Vec<i64>, CartanError> {
        let n = self.n;
        if delta.len() != n {
            return Err(CartanError::DimensionMismatch { expected: n, found: delta.len() });
        }
        // C is symmetric, so solve C a = delta by Gauss-Jordan over the rationals.
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut r: Vec<Scalar> = (0..n).map(|j| Scalar::from(self.pair(i, j))).collect();
                r.push(Scalar::from(delta[i]));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(CartanError::NonIntegralSolve)?;
            rows.swap(col, pivot);
            let p = rows[col][col];
            for x in rows[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col];
                    for c in col..=n {
                        let v = rows[col][c] * f;
                        rows[r][c] -= v;
                    }
                }
            }
        }
        rows.iter()
            .map(|r| if r[n].is_integer() { Ok(r[n].to_integer()) } else { Err(CartanError::NonIntegralSolve) })
            .collect()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if self.is_edge(v, w) && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// `sum_j theta_j <alpha_j, alpha_i>` for `theta` written in the simple-root basis.
pub fn form_on_roots(datum: &CartanDatum, theta: &[Scalar], i: Vertex) -> Scalar {
    theta
        .iter()
        .enumerate()
        .map(|(j, &th)| th * Scalar::from(datum.pair(j, i)))
        .fold(Scalar::zero(), |a, b| a + b)
}

/// A weight `mu_0 + sum_i a_i alpha_i`, where `mu_0` is known only through its pairings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    base: Vec<i64>,
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(base: Vec<i64>, coords: Vec<i64>) -> Result<Self, CartanError> {
        if base.len() != coords.len() {
            return Err(CartanError::DimensionMismatch { expected: base.len(), found: coords.len() });
        }
        Ok(Weight { base, coords })
    }

    /// The coset base point itself.
    pub fn base_point(base: Vec<i64>) -> Self {
        let coords = vec![0; base.len()];
        Weight { base, coords }
    }

    pub fn base_pairings(&self) -> &[i64] {
        &self.base
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn pairing(&self, datum: &CartanDatum, i: Vertex) -> i64 {
        self.base[i] + self.coords.iter().enumerate().map(|(j, &a)| a * datum.pair(j, i)).sum::<i64>()
    }

    pub fn pairings(&self, datum: &CartanDatum) -> Vec<i64> {
        (0..self.rank()).map(|i| self.pairing(datum, i)).collect()
    }

    /// `self + by * alpha_i`.
    pub fn shifted(&self, i: Vertex, by: i64) -> Self {
        let mut w = self.clone();
        w.coords[i] += by;
        w
    }

    pub fn same_coset(&self, other: &Weight) -> bool {
        self.base == other.base
    }

    /// Root coordinates of `self - other`; `None` across cosets.
    pub fn difference(&self, other: &Weight) -> Option<Vec<i64>> {
        if !self.same_coset(other) {
            return None;
        }
        Some(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }
}

/// A finite set of nonzero weights inside one coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    base: Vec<i64>,
    coords: BTreeSet<Vec<i64>>,
    unbounded: bool,
}

impl Support {
    pub fn new<I>(base: Vec<i64>, coords: I) -> Result<Self, CartanError>
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let mut set = BTreeSet::new();
        for c in coords {
            if c.len() != base.len() {
                return Err(CartanError::DimensionMismatch { expected: base.len(), found: c.len() });
            }
            set.insert(c);
        }
        if set.is_empty() {
            return Err(CartanError::EmptySupport);
        }
        Ok(Support { base, coords: set, unbounded: false })
    }

    pub fn from_weights<I>(weights: I) -> Result<Self, CartanError>
    where
        I: IntoIterator<Item = Weight>,
    {
        let mut iter = weights.into_iter();
        let first = iter.next().ok_or(CartanError::EmptySupport)?;
        let base = first.base.clone();
        let mut coords = vec![first.coords];
        for w in iter {
            if w.base != base {
                return Err(CartanError::MixedCosets);
            }
            coords.push(w.coords);
        }
        Support::new(base, coords)
    }

    /// A sample of a support that continues indefinitely; rejected by [`check_conditions`].
    pub fn declared_unbounded<I>(base: Vec<i64>, sample: I) -> Result<Self, CartanError>
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let mut s = Support::new(base, sample)?;
        s.unbounded = true;
        Ok(s)
    }

    pub fn is_bounded(&self) -> bool {
        !self.unbounded
    }

    pub fn base_pairings(&self) -> &[i64] {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Weights from another coset are never members.
    pub fn contains(&self, w: &Weight) -> bool {
        w.base == self.base && self.coords.contains(&w.coords)
    }

    pub fn contains_coords(&self, coords: &[i64]) -> bool {
        self.coords.contains(coords)
    }

    pub fn weight(&self, coords: Vec<i64>) -> Weight {
        Weight { base: self.base.clone(), coords }
    }

    pub fn weights(&self) -> impl Iterator<Item = Weight> + '_ {
        self.coords.iter().map(|c| Weight { base: self.base.clone(), coords: c.clone() })
    }

    /// Finds the supported weight with the given pairings.
    pub fn find_by_pairings(&self, datum: &CartanDatum, pairings: &[i64]) -> Option<Weight> {
        self.weights().find(|w| w.pairings(datum) == pairings)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleViolation {
    pub weight: Weight,
    pub cycle: Vec<Vertex>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub weight: Weight,
    pub i: Vertex,
    pub j: Vertex,
}

/// Violations of the support conditions; empty lists mean the condition holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConditionReport {
    /// Lines along `alpha_i` and `alpha_i + alpha_j` that never leave the support.
    pub line_vanishing: Vec<(Weight, Vec<Vertex>)>,
    pub cycle_positivity: Vec<CycleViolation>,
    pub closure: Vec<ClosureViolation>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.line_vanishing.is_empty() && self.cycle_positivity.is_empty() && self.closure.is_empty()
    }
}

pub fn check_conditions(support: &Support, datum: &CartanDatum) -> Result<ConditionReport, CartanError> {
    if !support.is_bounded() {
        return Err(CartanError::NonFiniteSupport);
    }
    let n = datum.vertex_count();
    if support.rank() != n {
        return Err(CartanError::DimensionMismatch { expected: n, found: support.rank() });
    }
    let mut report = ConditionReport::default();

    // A finite support leaves every line eventually, so the line condition cannot fail here.
    let mut cycles: Vec<Vec<Vertex>> = datum.triangles().iter().map(|t| t.to_vec()).collect();
    cycles.extend(datum.squares().iter().map(|s| s.to_vec()));
    for w in support.weights() {
        for cyc in &cycles {
            let value: i64 = cyc.iter().map(|&v| w.pairing(datum, v)).sum();
            if value <= 0 {
                report.cycle_positivity.push(CycleViolation { weight: w.clone(), cycle: cyc.clone(), value });
            }
        }
    }

    let mut candidates = BTreeSet::new();
    for w in support.weights() {
        for i in 0..n {
            candidates.insert(w.shifted(i, -1));
        }
    }
    for lam in candidates {
        for i in 0..n {
            for j in i + 1..n {
                let li = lam.shifted(i, 1);
                let lj = lam.shifted(j, 1);
                if support.contains(&li) && support.contains(&lj) {
                    let both = li.shifted(j, 1);
                    if !support.contains(&lam) || !support.contains(&both) {
                        report.closure.push(ClosureViolation { weight: lam.clone(), i, j });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The weights of `Lambda^N(C^m (x) C^n)` for `sl_n`, with pairings `k_{i+1} - k_i`.
///
/// The matching datum is `CartanDatum::type_a(n - 1)`.
pub fn grassmannian_support(m: usize, n: usize, total: usize) -> Result<Support, CartanError> {
    if n < 2 {
        return Err(CartanError::InvalidGrassmannian { m, n });
    }
    let tuples = grassmannian_tuples(m, n, total);
    let first = tuples.first().ok_or(CartanError::EmptySupport)?;
    let datum = CartanDatum::type_a(n - 1);
    let base = tuple_pairings(first);
    let mut coords = Vec::with_capacity(tuples.len());
    for k in &tuples {
        let delta: Vec<i64> = tuple_pairings(k).iter().zip(&base).map(|(a, b)| a - b).collect();
        coords.push(datum.root_coords_for(&delta)?);
    }
    Support::new(base, coords)
}

/// All `k in {0..m}^n` with `sum k = total`, in lexicographic order.
pub fn grassmannian_tuples(m: usize, n: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, left: usize, remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=m.min(remaining) {
            if remaining - v <= m * (left - 1) {
                cur.push(v);
                rec(m, left - 1, remaining - v, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(m, n, total, &mut Vec::new(), &mut out);
    out
}

/// Pairings `k_{i+1} - k_i` of a tuple.
pub fn tuple_pairings(k: &[usize]) -> Vec<i64> {
    k.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect()
}
