//! Two-dimensional digital topology on the square grid.
//!
//! Everything is built around the 3×3 neighborhood of a black point, encoded
//! as an 8-bit [`NeighborhoodConfig`]. From it the crate computes topological
//! numbers, the Hilditch crossing number and the Yokoi numbers, decides
//! whether the point is simple, and uses that decision for sequential
//! topology-preserving thinning.

pub mod cli;
pub mod config_spec;
pub mod enumeration;
pub mod error;
pub mod grid;
pub mod metrics;
pub mod pbm;
pub mod simplicity;
pub mod thinning;

pub use error::{Error, PbmError, PbmErrorKind, Result};
pub use grid::{
    complement_config, count_components, extract_config, label_components, neighbors, paint_config,
    Adjacency, BinaryImage, Color, ConnectivityPair, Labeling, NeighborhoodConfig, PixelCoord,
};
pub use simplicity::{
    build_lut, image_is_simple, is_simple, oracle_is_simple, Characterization, SimplicityLut,
};
pub use thinning::{audit, thin, ThinningPolicy, ThinningReport};
