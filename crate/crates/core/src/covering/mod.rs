//! Covering radius under the four metrics: exact oracles, the bounds
//! relating radii to code parameters, and a ledger collecting both.

mod bounds;
mod ledger;
mod oracle;
mod packed;

pub use bounds::{
    delsarte_upper, direct_sum, euclidean_ball_polynomial, mattson_compose, sphere_covering_lower,
    torsion_lower_bound, SphereForm, TorsionLowerBound,
};
pub use ledger::{
    Bound, BoundLedger, ClaimRecord, ClaimReference, MetricLedger, Quantity, Relation, Status, Verdict,
};
pub use oracle::{
    covering_radius, covering_radius_coset, covering_radius_dp, covering_radius_scan,
    covering_radius_with, gray_image_covering_radius, CoveringRadius, Oracle,
};
