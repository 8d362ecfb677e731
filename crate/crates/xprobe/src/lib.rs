//! Deterministic image-transformation datasets and probes for frozen embeddings.
//!
//! The crate has two halves that meet in the middle:
//!
//! * An **image pipeline**: a small 8-bit RGB image type ([`ImageBuffer`]),
//!   exact HSL color math, seeded deterministic randomness ([`DetRng`]), and a
//!   catalog of ~30 image transformations (color shifts, noise, dithering,
//!   blurs, overlays, halftoning, ...) that can be applied reproducibly to a
//!   source corpus to build labeled datasets ([`dataset`]).
//! * A **probing stack**: embedding tables ([`embed`]), linear probes and
//!   one-hidden-layer MLPs with one or two classification heads trained with
//!   Adam ([`probe`]), and evaluation metrics including confusion matrices and
//!   held-out generalization tables ([`metrics`]).
//!
//! Everything is deterministic: the same sources, catalog, and master seed
//! produce byte-identical images, manifests, and trained models. See the
//! `examples/` directory for runnable walkthroughs of each capability, or the
//! `xprobe` binary for the batch pipeline
//! (`generate` / `ingest-styles` / `embed` / `train` / `eval` / `report`).

mod error;
pub mod img;
pub mod xform;

pub use error::{Error, Result};
pub use img::{derive_seed, DetRng, HslPixel, ImageBuffer, SeedTag};
