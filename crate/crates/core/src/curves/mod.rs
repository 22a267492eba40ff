pub mod counting;
pub mod elliptic;
pub mod hyperelliptic;
pub mod igusa;

pub use counting::{count_points_at, count_points_elliptic_q, count_points_genus2, primes_above, ResidueField};
pub use elliptic::{isomorphism_test, EllipticCurve, Isomorphism};
pub use hyperelliptic::{HyperellipticCurve, IgusaClebsch};
