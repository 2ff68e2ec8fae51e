//! Reading and writing drawings: exact polyline ingestion, the JSON document
//! format, SVG rendering and built-in fixtures.

pub mod doc;
pub mod fixtures;
mod polyline;
pub mod svg;

pub use doc::{load_bytes, load_drawing, parse_drawing, serialize_drawing, stringset_to_doc, DrawingDoc, Loaded};
pub use polyline::{polylines_to_stringset, Polyline};
