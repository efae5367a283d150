//! The degree-one/degree-two cohomology of a graph group over the field of
//! two elements, packaged as a pairing `q : V × V -> W`.

use serde::{Deserialize, Serialize};

use super::RaagError;
use crate::graph::{GraphError, SimplicialGraph, DEFAULT_HAMILTONIAN_BOUND};

/// `V` has basis `v1*..vn*` (duals of the vertex generators); `W` has one
/// coordinate per edge, numbered from 1 in sorted edge order.
/// `pairing[i][j] == 0` means the cup product of the two basis vectors
/// vanishes; otherwise it is that W-coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTriple {
    pub dim_v: usize,
    pub dim_w: usize,
    pub basis_labels: Vec<String>,
    pub pairing: Vec<Vec<usize>>,
}

impl CohomologyTriple {
    pub fn from_graph(g: &SimplicialGraph) -> Self {
        let n = g.n();
        let mut pairing = vec![vec![0usize; n]; n];
        let mut dim_w = 0;
        for (coord, (u, v)) in g.edges().enumerate() {
            pairing[u][v] = coord + 1;
            pairing[v][u] = coord + 1;
            dim_w = coord + 1;
        }
        Self {
            dim_v: n,
            dim_w,
            basis_labels: (1..=n).map(|i| format!("v{i}*")).collect(),
            pairing,
        }
    }

    /// Graph on the basis whose edges are the nonzero pairings.
    pub fn support_graph(&self) -> SimplicialGraph {
        let mut g = SimplicialGraph::empty(self.dim_v);
        for i in 0..self.dim_v {
            for j in i + 1..self.dim_v {
                if self.pairing[i][j] != 0 {
                    g.add_edge(i, j).expect("indices in range");
                }
            }
        }
        g
    }

    /// Cup product of two vectors of `V`, as a vector of `W`. Over F2 the
    /// W-coordinate of edge `{i, j}` is `x_i y_j + x_j y_i`.
    pub fn cup(&self, x: &[bool], y: &[bool]) -> Vec<bool> {
        assert_eq!(x.len(), self.dim_v);
        assert_eq!(y.len(), self.dim_v);
        let mut w = vec![false; self.dim_w];
        for i in 0..self.dim_v {
            for j in i + 1..self.dim_v {
                let coord = self.pairing[i][j];
                if coord != 0 {
                    w[coord - 1] = (x[i] && y[j]) ^ (x[j] && y[i]);
                }
            }
        }
        w
    }

    /// The standard basis vector `v_i*`.
    pub fn basis_vector(&self, i: usize) -> Vec<bool> {
        let mut v = vec![false; self.dim_v];
        v[i] = true;
        v
    }

    pub fn check_shape(&self) -> Result<(), RaagError> {
        let ok = self.pairing.len() == self.dim_v
            && self.pairing.iter().all(|row| row.len() == self.dim_v)
            && (0..self.dim_v).all(|i| {
                self.pairing[i][i] == 0
                    && (0..self.dim_v).all(|j| {
                        self.pairing[i][j] == self.pairing[j][i] && self.pairing[i][j] <= self.dim_w
                    })
            });
        if ok {
            Ok(())
        } else {
            Err(RaagError::MalformedTriple)
        }
    }
}

/// True iff some cyclic ordering of the standard basis has every consecutive
/// pairing nonzero.
pub fn is_hamiltonian_triple(t: &CohomologyTriple) -> Result<bool, RaagError> {
    is_hamiltonian_triple_bounded(t, DEFAULT_HAMILTONIAN_BOUND)
}

pub fn is_hamiltonian_triple_bounded(t: &CohomologyTriple, bound: usize) -> Result<bool, RaagError> {
    t.check_shape()?;
    let n = t.dim_v;
    if n > bound {
        return Err(GraphError::SizeLimit { n, bound }.into());
    }
    if n < 3 {
        return Ok(false);
    }
    // Permutation search with the first basis vector fixed (cycles are
    // rotation invariant).
    let mut order: Vec<usize> = (0..n).collect();
    fn permute(t: &CohomologyTriple, order: &mut [usize], k: usize) -> bool {
        let n = order.len();
        if k == n {
            return t.pairing[order[n - 1]][order[0]] != 0;
        }
        for i in k..n {
            order.swap(k, i);
            if t.pairing[order[k - 1]][order[k]] != 0 && permute(t, order, k + 1) {
                return true;
            }
            order.swap(k, i);
        }
        false
    }
    Ok(permute(t, &mut order, 1))
}
