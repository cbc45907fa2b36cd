//! Vector-valued flows: norms, symbolic vector sets, constructions and
//! certificates.

pub mod cert;
pub mod construct;
pub mod flow;
pub mod norm;
pub mod omega;
pub mod tables;
pub mod transform;

pub use cert::{certify, certify_omega, verify_certificate, FlowCertificate, DEFAULT_TOLERANCE};
pub use construct::{
    find_occ_flow, occ_flow, omega_flow_from_3nzf, omega_flow_from_4nzf, six_flow_omega, SymbolicFlow,
};
pub use flow::{compose_flows, VectorFlow};
pub use norm::{pnorm, PNorm};
pub use omega::{instantiate_omega, norm_window, OmegaSet};
pub use tables::{
    halfunit_vectors, hyperplane_coordinates, simplex_vectors, table1_vectors, thm15_vectors, thm31_vectors,
    Table1Column, VectorTriple,
};
pub use transform::{transfer_bound, transfer_bound_reverse, transform_2d, BoundInterval, Direction};
