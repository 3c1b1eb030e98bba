//! Numerical toolkit for generalized (G-)metric spaces: axiom checking,
//! convex structures, three-set distances, tripartite contraction
//! certification, and the coincidence-best-proximity iteration
//! `T x_n = S x_{n+1} = K x_{n+2}`.

pub mod axioms;
pub mod convex;
pub mod error;
pub mod metric;
pub mod point;
pub mod region;
pub mod sampling;
pub mod witness;

pub use axioms::{
    check_convergence_equivalence, check_derived_properties, check_g_axioms, check_sandwich,
    check_symmetric, AxiomEntry, AxiomReport, ConvergenceEquivalence,
};
pub use convex::{
    check_convex_structure, check_g_convex_set, combine, convex_samples,
    estimate_uniform_convexity, ConvexStructure, ModulusEstimate,
};
pub use error::{Error, Result};
pub use metric::{g_from_metric_max, g_from_metric_sum, metric_from_g, GMetric, Metric};
pub use point::Point;
pub use region::{g_set_distance, is_proximal, proximal_triple, DistanceEstimate, ProximalTriple, Region};
pub use witness::Witness;
