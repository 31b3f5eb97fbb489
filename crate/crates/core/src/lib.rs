//! SpaceCoMP: a Collect-Map-Reduce processing model for LEO mega-constellations.
//!
//! This crate simulates Walker Delta constellation shells connected by optical
//! inter-satellite laser links and schedules MapReduce-style jobs on them:
//!
//! - [`constellation`]: shell geometry, orbital period, link distances, and
//!   circular-orbit propagation to ECEF/geodetic coordinates.
//! - [`geo`]: area-of-interest membership, collector/mapper selection, and
//!   line-of-sight (LOS) node lookup for ground stations.
//! - [`linkmodel`]: free-space path loss, SNR, Shannon-capacity transmission
//!   time, and the composite task-placement cost.
//! - [`routing`]: +Grid torus routing, both hop-minimal dimension-order and
//!   the distance-minimizing hop-preserving variant.
//! - [`scheduler`]: cost-matrix construction, map-task assignment strategies
//!   (random, eager, optimal bipartite matching), and reducer placement.
//! - [`experiments`]: seeded experiment drivers producing CSV/JSON reports.
//!
//! All operations are deterministic: every random choice flows from an
//! explicit seed, so identical inputs reproduce identical outputs bit for bit.

pub mod constellation;
pub mod error;
pub mod experiments;
pub mod geo;
pub mod linkmodel;
pub mod report;
pub mod routing;
pub mod scheduler;

pub use error::{Error, Result};
