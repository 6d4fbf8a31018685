//! Inverse hulls, germ groupoids, boundary quotients and C*-envelopes of left
//! cancellative small categories, with finite-group coactions and right LCM
//! monoid tools.

pub mod category;
pub mod coaction;
pub mod cstar;
pub mod envelope;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod germ;
pub mod groupoid;
pub mod hull;
pub mod ideals;
pub mod lcm;
pub mod linalg;
pub mod parse;
pub mod pipeline;
pub mod report;
pub mod universal;

pub use error::{Error, Result};
