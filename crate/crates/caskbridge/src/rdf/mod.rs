//! RDF data model: terms, triples, graphs, and Turtle I/O.

mod graph;
mod iri;
mod term;
pub mod turtle;
pub mod vocab;
mod writer;

pub use graph::Graph;
pub use iri::{Iri, IriError};
pub use term::{BlankNode, Literal, Subject, Term, TermError, Triple};
pub use turtle::{parse_turtle, TurtleError};
pub use writer::serialize_turtle;
