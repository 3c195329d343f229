//! Serialization helpers for machine-readable output.

use crate::algebra::{render_rational, Rational};
use serde::Serializer;

pub const SCHEMA: &str = "dessin-toda/1";

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render_rational(r))
}
