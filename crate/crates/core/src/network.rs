//! Interaction graph of the oscillator network.
//!
//! Local coupling is stored as a dense symmetric matrix `a` with `a[i][j] >= 0`
//! and a zero diagonal. The signed incidence form orients every edge `(i, j)`,
//! `i < j`, with `+1` at row `i` and `-1` at row `j`; edges are ordered
//! lexicographically so the weight vector is reproducible. The weighted
//! Laplacian is `L = B W Bᵀ`.

use std::collections::VecDeque;

use ndarray::Array2;

use crate::error::{Error, Result};

/// Symmetric, nonnegative coupling strengths among `n` oscillators (1/s).
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingGraph {
    a: Array2<f64>,
}

impl CouplingGraph {
    pub fn new(a: Array2<f64>) -> Result<Self> {
        let (rows, cols) = a.dim();
        if rows == 0 {
            return Err(Error::InvalidGraph("graph needs at least one node".into()));
        }
        if rows != cols {
            return Err(Error::InvalidGraph(format!(
                "coupling matrix must be square, got {rows}x{cols}"
            )));
        }
        for i in 0..rows {
            if a[[i, i]] != 0.0 {
                return Err(Error::InvalidGraph(format!("self-coupling a[{i}][{i}] must be 0")));
            }
            for j in 0..rows {
                let v = a[[i, j]];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidGraph(format!(
                        "a[{i}][{j}] = {v} must be finite and nonnegative"
                    )));
                }
                if v != a[[j, i]] {
                    return Err(Error::InvalidGraph(format!(
                        "a[{i}][{j}] = {v} differs from a[{j}][{i}] = {}",
                        a[[j, i]]
                    )));
                }
            }
        }
        Ok(CouplingGraph { a })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidGraph(format!(
                "row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        let a = Array2::from_shape_vec((n, n), flat)
            .map_err(|e| Error::InvalidGraph(e.to_string()))?;
        Self::new(a)
    }

    /// `n` isolated nodes.
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(Array2::zeros((n, n)))
    }

    /// Undirected graph from an edge list with a common weight.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], weight: f64) -> Result<Self> {
        let mut a = Array2::zeros((n, n));
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidGraph(format!("bad edge ({i}, {j}) for n = {n}")));
            }
            a[[i, j]] = weight;
            a[[j, i]] = weight;
        }
        Self::new(a)
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn weights(&self) -> &Array2<f64> {
        &self.a
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.a[[i, j]]
    }

    /// Weighted degree `sum_{j != i} a[i][j]`.
    pub fn degree(&self, i: usize) -> f64 {
        self.a.row(i).sum()
    }

    pub fn max_degree(&self) -> f64 {
        (0..self.n()).map(|i| self.degree(i)).fold(0.0, f64::max)
    }

    /// Every coupling multiplied by `factor` (must be nonnegative).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(&self.a * factor)
    }

    /// Breadth-first reachability over edges with positive weight.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for (j, &a_ij) in self.a.row(i).iter().enumerate() {
                if !seen[j] && a_ij > 0.0 {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
        reached == n
    }

    pub fn incidence(&self) -> IncidenceRepresentation {
        build_incidence(self)
    }

    /// Laplacian assembled entrywise: `-a[i][j]` off the diagonal and the
    /// weighted degree on it.
    pub fn laplacian_direct(&self) -> Array2<f64> {
        let n = self.n();
        Array2::from_shape_fn((n, n), |(i, j)| {
            if i == j {
                self.degree(i)
            } else {
                -self.a[[i, j]]
            }
        })
    }
}

/// Signed node-by-edge incidence matrix with its edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceRepresentation {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<f64>,
    b: Array2<f64>,
}

impl IncidenceRepresentation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn b(&self) -> &Array2<f64> {
        &self.b
    }

    /// `Bᵀ x`: one entry per edge.
    pub fn bt_dot(&self, x: &[f64]) -> Vec<f64> {
        let xv = ndarray::ArrayView1::from(x);
        self.b.t().dot(&xv).to_vec()
    }

    /// Copy with the orientation of every edge `k` with `flip[k]` reversed.
    pub fn flipped(&self, flip: &[bool]) -> Self {
        let mut out = self.clone();
        for (k, &f) in flip.iter().enumerate().take(self.m()) {
            if f {
                out.b.column_mut(k).mapv_inplace(|v| -v);
            }
        }
        out
    }

    /// `B W Bᵀ`.
    pub fn laplacian(&self) -> Array2<f64> {
        laplacian(self)
    }
}

pub fn build_incidence(graph: &CouplingGraph) -> IncidenceRepresentation {
    let n = graph.n();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = graph.weight(i, j);
            if w > 0.0 {
                edges.push((i, j));
                weights.push(w);
            }
        }
    }
    let mut b = Array2::zeros((n, edges.len()));
    for (k, &(i, j)) in edges.iter().enumerate() {
        b[[i, k]] = 1.0;
        b[[j, k]] = -1.0;
    }
    IncidenceRepresentation { n, edges, weights, b }
}

pub fn laplacian(inc: &IncidenceRepresentation) -> Array2<f64> {
    let mut bw = inc.b.clone();
    for (k, &w) in inc.weights.iter().enumerate() {
        bw.column_mut(k).mapv_inplace(|v| v * w);
    }
    bw.dot(&inc.b.t())
}

pub fn is_connected(graph: &CouplingGraph) -> bool {
    graph.is_connected()
}

/// Nonnegative pacemaker strengths `g_i` (1/s).
#[derive(Debug, Clone, PartialEq)]
pub struct PacemakerCoupling {
    g: Vec<f64>,
}

impl PacemakerCoupling {
    pub fn new(g: Vec<f64>) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::InvalidParams("pacemaker vector is empty".into()));
        }
        if let Some((i, v)) = g.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidParams(format!(
                "pacemaker strength g[{i}] = {v} must be finite and nonnegative"
            )));
        }
        Ok(PacemakerCoupling { g })
    }

    /// Pacemaker acting on a single node.
    pub fn single(n: usize, node: usize, strength: f64) -> Result<Self> {
        let mut g = vec![0.0; n];
        if node >= n {
            return Err(Error::InvalidParams(format!("node {node} out of range for n = {n}")));
        }
        g[node] = strength;
        Self::new(g)
    }

    pub fn uniform(n: usize, strength: f64) -> Result<Self> {
        Self::new(vec![strength; n])
    }

    pub fn strengths(&self) -> &[f64] {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        self.g.is_empty()
    }

    pub fn g_min(&self) -> f64 {
        self.g.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn g_max(&self) -> f64 {
        self.g.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.g.iter().map(|g| g * factor).collect())
    }

    pub fn diag(&self) -> Array2<f64> {
        Array2::from_diag(&ndarray::Array1::from(self.g.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn path3() -> CouplingGraph {
        CouplingGraph::from_edges(3, &[(0, 1), (1, 2)], 1.0).unwrap()
    }

    #[test]
    fn two_node_incidence() {
        let g = CouplingGraph::from_rows(&[vec![0.0, 2.5], vec![2.5, 0.0]]).unwrap();
        let inc = build_incidence(&g);
        assert_eq!(inc.b(), &array![[1.0], [-1.0]]);
        assert_eq!(inc.weights(), &[2.5]);
        assert_eq!(inc.laplacian(), array![[2.5, -2.5], [-2.5, 2.5]]);
    }

    #[test]
    fn path_edges_are_lexicographic() {
        let inc = path3().incidence();
        assert_eq!(inc.m(), 2);
        assert_eq!(inc.edges(), &[(0, 1), (1, 2)]);
        for k in 0..inc.m() {
            let col = inc.b().column(k);
            assert_eq!(col.sum(), 0.0);
            assert_eq!(col.iter().filter(|v| **v == 1.0).count(), 1);
            assert_eq!(col.iter().filter(|v| **v == -1.0).count(), 1);
        }
    }

    #[test]
    fn empty_graph_has_no_edges() {
        let g = CouplingGraph::empty(4).unwrap();
        let inc = g.incidence();
        assert_eq!(inc.m(), 0);
        assert_eq!(inc.laplacian(), Array2::<f64>::zeros((4, 4)));
        assert!(!g.is_connected());
    }

    #[test]
    fn flipping_all_columns_keeps_laplacian() {
        let inc = path3().incidence();
        let flipped = inc.flipped(&[true, true]);
        assert_eq!(flipped.laplacian(), inc.laplacian());
        assert_eq!(inc.laplacian(), path3().laplacian_direct());
    }

    #[test]
    fn connectivity() {
        assert!(path3().is_connected());
        let pairs = CouplingGraph::from_edges(4, &[(0, 1), (2, 3)], 1.0).unwrap();
        assert!(!pairs.is_connected());
        let mut a = Array2::from_elem((5, 5), 0.05);
        a.diag_mut().fill(0.0);
        assert!(CouplingGraph::new(a).unwrap().is_connected());
        assert!(CouplingGraph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert!(CouplingGraph::from_rows(&[vec![0.0, 1.0], vec![0.5, 0.0]]).is_err());
        assert!(CouplingGraph::from_rows(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
        assert!(CouplingGraph::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).is_err());
        assert!(CouplingGraph::from_rows(&[vec![0.0, 1.0], vec![1.0]]).is_err());
        assert!(CouplingGraph::from_rows(&[]).is_err());
    }

    #[test]
    fn pacemaker_extremes() {
        let p = PacemakerCoupling::new(vec![0.0, 2.0, 1.0]).unwrap();
        assert_eq!(p.g_min(), 0.0);
        assert_eq!(p.g_max(), 2.0);
        assert!(PacemakerCoupling::new(vec![-1.0]).is_err());
    }
}
