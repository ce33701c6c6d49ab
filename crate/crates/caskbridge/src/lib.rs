pub mod json;
pub mod rdf;
pub mod rml;
pub mod sparql;
