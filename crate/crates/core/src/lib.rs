//! Uniform random vectors on the probability simplex.
//!
//! - [`simplex`]: points, two uniform samplers, the joint CDF and tail.
//! - [`orders`]: st, hr and lr comparisons and their restrictiveness.
//! - [`maxcoord`]: Whitworth's CDF of the largest coordinate and its moments.
//! - [`identities`]: exact combinatorial sums used by the moments.
//! - [`mc`]: seeded Monte Carlo estimators for all of the above.
//! - [`battery`]: a randomness test built on order comparisons.

pub mod battery;
pub mod error;
pub mod exact;
pub mod identities;
pub mod maxcoord;
pub mod mc;
pub mod orders;
pub mod rng;
pub mod simplex;

pub use battery::{
    exact_binomial_test, max_mean_test, read_stream, run_order_test, table1_experiment, MaxMeanReport, Model,
    OrderTestReport, StreamSource, Table1Config, Table1Summary,
};
pub use error::{Error, Result};
pub use exact::Rational;
pub use maxcoord::{m_index, moment, variance, whitworth_cdf, MaxDistParams};
pub use mc::MCEstimate;
pub use orders::{restrictiveness_constant, Comparator, OrderKind};
pub use rng::Seed;
pub use simplex::{joint_cdf, sample_exponential, sample_spacings, simplex_volume, spacings, tail_prob, SimplexVector};
