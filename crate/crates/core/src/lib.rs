//! Homology-level model of the mapping class group of a nonorientable
//! surface of odd genus, with search tools for twist-generated subgroups.

pub mod config;
pub mod error;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod mcg;
pub mod model;
pub mod polygon;
pub mod report;
pub mod search;
pub mod svg;
pub mod words;

pub use error::{Error, Result};
pub use homology::{H1ClassZ, H1ClassZ2};
pub use mcg::MappingClass;
pub use model::{build_surface, CurveData, Model, RigidSymmetry, SurfaceSpec};
pub use words::{free_reduce, parse_word, print_word, Evaluator, GeneratorWord, Token};
pub use report::{run_verification, GenSet, Status, VerificationReport, VerifyOptions};
