//! Seeded linear-Gaussian structural equation models. Used by the discovery
//! recovery tests and benchmarks: they provide data with a known generating
//! graph, plus the exact population covariance for noise-free cross-checks.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Digraph;

/// A linear-Gaussian SEM over the nodes of `graph`: each node equals the
/// weighted sum of its parents plus independent Gaussian noise.
#[derive(Debug, Clone)]
pub struct LinearSem {
    pub graph: Digraph,
    pub noise_std: Vec<f64>,
}

impl LinearSem {
    pub fn new(graph: Digraph) -> Self {
        let n = graph.nodes.len();
        LinearSem { graph, noise_std: vec![1.0; n] }
    }

    /// Draws `n` samples per node, returned column-major in node order.
    pub fn simulate(&self, n: usize, seed: u64) -> Vec<Vec<f64>> {
        let order = self.graph.topological_order().expect("SEM graph must be acyclic");
        let p = self.graph.nodes.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cols = vec![vec![0.0; n]; p];
        for k in 0..n {
            for &v in &order {
                let mut value = 0.0;
                for &(f, t, w) in &self.graph.edges {
                    if t == v {
                        value += w * cols[f][k];
                    }
                }
                value += self.noise_std[v] * standard_normal(&mut rng);
                cols[v][k] = value;
            }
        }
        cols
    }

    /// Exact population covariance: Sigma = (I - B)^-1 D (I - B)^-T with B the
    /// edge-coefficient matrix and D the noise variances.
    pub fn population_covariance(&self) -> DMatrix<f64> {
        let p = self.graph.nodes.len();
        let mut b = DMatrix::zeros(p, p);
        for &(f, t, w) in &self.graph.edges {
            b[(t, f)] = w;
        }
        let i_minus_b = DMatrix::identity(p, p) - b;
        let inv = i_minus_b.try_inverse().expect("I - B is invertible for DAGs");
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            p,
            self.noise_std.iter().map(|s| s * s),
        ));
        &inv * d * inv.transpose()
    }
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; one draw per call keeps the stream layout simple.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// A -> B -> C with unit noise.
pub fn chain_sem(coef: f64) -> LinearSem {
    let mut g = Digraph::new(vec!["A".into(), "B".into(), "C".into()]);
    g.add_edge(0, 1, coef);
    g.add_edge(1, 2, coef);
    LinearSem::new(g)
}

/// A -> B <- C with unit noise.
pub fn collider_sem(coef: f64) -> LinearSem {
    let mut g = Digraph::new(vec!["A".into(), "B".into(), "C".into()]);
    g.add_edge(0, 1, coef);
    g.add_edge(2, 1, coef);
    LinearSem::new(g)
}

/// Diamond A -> B, A -> C, B -> D, C -> D.
pub fn diamond_sem(coef: f64) -> LinearSem {
    let mut g = Digraph::new(vec!["A".into(), "B".into(), "C".into(), "D".into()]);
    g.add_edge(0, 1, coef);
    g.add_edge(0, 2, coef);
    g.add_edge(1, 3, coef);
    g.add_edge(2, 3, coef);
    LinearSem::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats;
    use approx::assert_relative_eq;

    #[test]
    fn population_covariance_matches_chain_algebra() {
        let sem = chain_sem(0.8);
        let cov = sem.population_covariance();
        // var(A) = 1; cov(A,B) = 0.8; var(B) = 0.8^2 + 1
        assert_relative_eq!(cov[(0, 0)], 1.0, epsilon = 1e-12);
        assert_relative_eq!(cov[(0, 1)], 0.8, epsilon = 1e-12);
        assert_relative_eq!(cov[(1, 1)], 1.64, epsilon = 1e-12);
        // cov(A,C) = 0.64
        assert_relative_eq!(cov[(0, 2)], 0.64, epsilon = 1e-12);
    }

    #[test]
    fn sample_covariance_approaches_population() {
        let sem = collider_sem(0.8);
        let cols = sem.simulate(20_000, 7);
        let sample = stats::covariance_matrix(&cols);
        let pop = sem.population_covariance();
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(sample[(i, j)], pop[(i, j)], epsilon = 0.08);
            }
        }
    }

    #[test]
    fn chain_partial_correlation_vanishes_given_middle() {
        let sem = chain_sem(0.8);
        let cov = sem.population_covariance();
        let rho = stats::partial_correlation(0, 2, &[1], &cov).unwrap();
        assert_relative_eq!(rho, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn collider_explaining_away() {
        let sem = collider_sem(0.8);
        let cov = sem.population_covariance();
        let marginal = stats::partial_correlation(0, 2, &[], &cov).unwrap();
        let conditioned = stats::partial_correlation(0, 2, &[1], &cov).unwrap();
        assert_relative_eq!(marginal, 0.0, epsilon = 1e-10);
        assert!(conditioned.abs() > 0.3);
    }
}
