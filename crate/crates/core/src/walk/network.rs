use std::collections::BTreeMap;

use num_traits::Float;

use crate::{Error, Result};

/// Resistor network with some nodes tied to a grounded boundary.
///
/// Conductances between interior nodes are symmetric; `ground[i]` is the
/// total conductance from node `i` to the boundary.
#[derive(Clone, Debug)]
pub struct Network<T> {
    adjacency: Vec<Vec<(usize, T)>>,
    ground: Vec<T>,
}

impl<T: Float> Network<T> {
    pub fn new(n: usize) -> Self {
        Network {
            adjacency: vec![Vec::new(); n],
            ground: vec![T::zero(); n],
        }
    }

    /// Builds from a list of conductances; parallel entries add up.
    pub fn from_edges(n: usize, edges: &[(usize, usize, T)], ground: &[(usize, T)]) -> Self {
        let mut merged: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); n];
        for &(a, b, c) in edges {
            assert_ne!(a, b, "self-loops carry no current");
            for (u, v) in [(a, b), (b, a)] {
                let e = merged[u].entry(v).or_insert(T::zero());
                *e = *e + c;
            }
        }
        let mut net = Network::new(n);
        for (i, m) in merged.into_iter().enumerate() {
            net.adjacency[i] = m.into_iter().collect();
        }
        for &(i, c) in ground {
            net.ground[i] = net.ground[i] + c;
        }
        net
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    fn degree(&self, i: usize) -> T {
        self.adjacency[i]
            .iter()
            .fold(self.ground[i], |acc, &(_, c)| acc + c)
    }

    fn apply(&self, x: &[T], out: &mut [T]) {
        for i in 0..self.len() {
            let mut y = self.degree(i) * x[i];
            for &(j, c) in &self.adjacency[i] {
                y = y - c * x[j];
            }
            out[i] = y;
        }
    }

    /// Solves `L x = b` for the grounded Laplacian `L` with Jacobi-
    /// preconditioned conjugate gradients, to relative residual `tol`.
    /// Returns the solution and the relative residual reached.
    pub fn solve(&self, b: &[T], tol: T) -> Result<(Vec<T>, T)> {
        let n = self.len();
        let dot = |u: &[T], v: &[T]| u.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
        let inv_diag: Vec<T> = (0..n).map(|i| T::one() / self.degree(i)).collect();
        let b_norm = dot(b, b).sqrt();
        let mut x = vec![T::zero(); n];
        if b_norm == T::zero() {
            return Ok((x, T::zero()));
        }
        let mut r = b.to_vec();
        let mut z: Vec<T> = r.iter().zip(&inv_diag).map(|(&a, &d)| a * d).collect();
        let mut p = z.clone();
        let mut ap = vec![T::zero(); n];
        let mut rz = dot(&r, &z);
        let max_iter = 10 * n + 100;
        for _ in 0..max_iter {
            self.apply(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for i in 0..n {
                x[i] = x[i] + alpha * p[i];
                r[i] = r[i] - alpha * ap[i];
            }
            let res = dot(&r, &r).sqrt() / b_norm;
            if res <= tol {
                return Ok((x, res));
            }
            for i in 0..n {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        Err(Error::SolverDiverged {
            iterations: max_iter,
            tolerance: tol.to_f64().unwrap_or(f64::NAN),
        })
    }

    /// Effective resistance between node `source` and the boundary: the
    /// potential at `source` when a unit current enters there.
    pub fn resistance_to_ground(&self, source: usize, tol: T) -> Result<(T, T)> {
        let mut b = vec![T::zero(); self.len()];
        b[source] = T::one();
        let (x, res) = self.solve(&b, tol)?;
        Ok((x[source], res))
    }
}
