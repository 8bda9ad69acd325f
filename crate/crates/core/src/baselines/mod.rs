//! Reference clippers: the classical parametric clipper, the logarithmic
//! clipper built from convex-polygon searches, and an all-edges scan used as
//! ground truth.

pub mod cyrus_beck;
pub mod oracle;
pub mod rappaport;

pub use cyrus_beck::cyrus_beck_clip;
pub use oracle::{is_degenerate, oracle_clip};
pub use rappaport::{
    rapp_back_sector, rapp_classify, rapp_front_sector, rapp_sector, rapp_support_vertices,
    rappaport_clip, rappaport_clip_traced, PointClass, RappError, RappTrace, SectorPair,
    SupportPair,
};
