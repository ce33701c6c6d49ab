//! Forward mapping engine: declarative rules that turn JSON sources into
//! triples.
//!
//! Rule documents are Turtle graphs using the usual mapping vocabulary
//! (`rml:logicalSource` with a JSONPath iterator, one `rr:subjectMap`,
//! any number of `rr:predicateObjectMap`s). Joins between rules and
//! non-JSON sources are out of scope; cross-element links are the job of
//! the resolver that sits on top of this engine.

use std::collections::BTreeMap;
use std::fmt;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use serde_json::Value;
use thiserror::Error;

use crate::json::{compile_path, path::evaluate_path_value, JsonDoc, PathError, PathExpr};
use crate::rdf::{vocab as rdf_vocab, Graph, Iri, Literal, Subject, Term, Triple};

/// RFC 3986 unreserved characters stay verbatim; everything else is
/// percent-encoded when substituted into an IRI template.
const IRI_TEMPLATE_SET: &AsciiSet = &NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'.')
    .remove(b'_')
    .remove(b'~');

pub fn percent_encode_value(value: &str) -> String {
    utf8_percent_encode(value, IRI_TEMPLATE_SET).to_string()
}

/// Mapping vocabulary terms the rule parser understands.
pub mod terms {
    pub const RR_NS: &str = "http://www.w3.org/ns/r2rml#";
    pub const RML_NS: &str = "http://semweb.mmlab.be/ns/rml#";
    pub const QL_NS: &str = "http://semweb.mmlab.be/ns/ql#";

    pub const TRIPLES_MAP: &str = "http://www.w3.org/ns/r2rml#TriplesMap";
    pub const SUBJECT_MAP: &str = "http://www.w3.org/ns/r2rml#subjectMap";
    pub const SUBJECT: &str = "http://www.w3.org/ns/r2rml#subject";
    pub const PREDICATE_OBJECT_MAP: &str = "http://www.w3.org/ns/r2rml#predicateObjectMap";
    pub const PREDICATE: &str = "http://www.w3.org/ns/r2rml#predicate";
    pub const OBJECT_MAP: &str = "http://www.w3.org/ns/r2rml#objectMap";
    pub const OBJECT: &str = "http://www.w3.org/ns/r2rml#object";
    pub const TEMPLATE: &str = "http://www.w3.org/ns/r2rml#template";
    pub const CONSTANT: &str = "http://www.w3.org/ns/r2rml#constant";
    pub const CLASS: &str = "http://www.w3.org/ns/r2rml#class";
    pub const DATATYPE: &str = "http://www.w3.org/ns/r2rml#datatype";

    pub const LOGICAL_SOURCE: &str = "http://semweb.mmlab.be/ns/rml#logicalSource";
    pub const SOURCE: &str = "http://semweb.mmlab.be/ns/rml#source";
    pub const ITERATOR: &str = "http://semweb.mmlab.be/ns/rml#iterator";
    pub const REFERENCE_FORMULATION: &str =
        "http://semweb.mmlab.be/ns/rml#referenceFormulation";
    pub const REFERENCE: &str = "http://semweb.mmlab.be/ns/rml#reference";

    pub const QL_JSONPATH: &str = "http://semweb.mmlab.be/ns/ql#JSONPath";
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RmlError {
    #[error("rule {0} has no subject map")]
    MissingSubjectMap(Iri),
    #[error("rule {0} has no logical source")]
    MissingLogicalSource(Iri),
    #[error("rule {rule}: bad template `{template}`: {reason}")]
    BadTemplate {
        rule: Iri,
        template: String,
        reason: String,
    },
    #[error("rule {rule}: bad iterator: {error}")]
    BadIterator { rule: Iri, error: PathError },
    #[error("rule {rule}: unsupported reference formulation {value}")]
    UnsupportedReferenceFormulation { rule: Iri, value: String },
    #[error("rule {rule}: {message}")]
    InvalidRule { rule: Iri, message: String },
    #[error("source document `{0}` was not provided")]
    SourceNotFound(String),
    #[error("rule {rule}: subject placeholder `{placeholder}` has no value at {location}")]
    TemplateUnresolvable {
        rule: Iri,
        location: String,
        placeholder: String,
    },
    #[error("rule {rule}: subject `{value}` is not a valid IRI")]
    SubjectNotIri { rule: Iri, value: String },
}

/// A template alternating literal text and `{reference}` placeholders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateString {
    segments: Vec<TemplateSegment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateSegment {
    Text(String),
    Placeholder(String),
}

impl TemplateString {
    pub fn parse(template: &str) -> Result<Self, String> {
        let mut segments = Vec::new();
        let mut text = String::new();
        let mut chars = template.chars();
        while let Some(c) = chars.next() {
            match c {
                '{' => {
                    if !text.is_empty() {
                        segments.push(TemplateSegment::Text(std::mem::take(&mut text)));
                    }
                    let mut name = String::new();
                    loop {
                        match chars.next() {
                            Some('}') => break,
                            Some('{') => return Err("nested `{`".to_string()),
                            Some(c) => name.push(c),
                            None => return Err("unbalanced `{`".to_string()),
                        }
                    }
                    if name.is_empty() {
                        return Err("empty placeholder".to_string());
                    }
                    segments.push(TemplateSegment::Placeholder(name));
                }
                '}' => return Err("unbalanced `}`".to_string()),
                c => text.push(c),
            }
        }
        if !text.is_empty() {
            segments.push(TemplateSegment::Text(text));
        }
        Ok(TemplateString { segments })
    }

    pub fn segments(&self) -> &[TemplateSegment] {
        &self.segments
    }

    pub fn placeholders(&self) -> impl Iterator<Item = &str> {
        self.segments.iter().filter_map(|s| match s {
            TemplateSegment::Placeholder(name) => Some(name.as_str()),
            TemplateSegment::Text(_) => None,
        })
    }

    pub fn has_placeholders(&self) -> bool {
        self.placeholders().next().is_some()
    }
}

impl fmt::Display for TemplateString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for seg in &self.segments {
            match seg {
                TemplateSegment::Text(t) => f.write_str(t)?,
                TemplateSegment::Placeholder(p) => write!(f, "{{{p}}}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct LogicalSource {
    pub source_ref: String,
    pub iterator: PathExpr,
}

#[derive(Debug, Clone)]
pub enum SubjectTemplate {
    Constant(Iri),
    Template(TemplateString),
}

#[derive(Debug, Clone)]
pub struct SubjectMap {
    pub template: SubjectTemplate,
    pub class_iri: Option<Iri>,
}

#[derive(Debug, Clone)]
pub enum ObjectMap {
    Constant(Term),
    Reference {
        path: String,
        datatype: Option<Iri>,
    },
    Template(TemplateString),
}

#[derive(Debug, Clone)]
pub struct PredicateObjectMap {
    pub predicate: Iri,
    pub object: ObjectMap,
}

#[derive(Debug, Clone)]
pub struct TriplesMap {
    pub id: Iri,
    pub source: LogicalSource,
    pub subject: SubjectMap,
    pub predicate_object_maps: Vec<PredicateObjectMap>,
}

fn literal_object(rules: &Graph, node: &Term, predicate: &str) -> Option<String> {
    let subject = Subject::try_from(node.clone()).ok()?;
    let objects = rules.objects_for(&subject, &rdf_vocab::iri(predicate));
    objects
        .first()
        .and_then(|t| t.as_literal().map(|l| l.lexical().to_string()))
}

fn iri_object(rules: &Graph, node: &Term, predicate: &str) -> Option<Iri> {
    let subject = Subject::try_from(node.clone()).ok()?;
    let objects = rules.objects_for(&subject, &rdf_vocab::iri(predicate));
    objects.first().and_then(|t| t.as_iri().cloned())
}

fn node_objects(rules: &Graph, node: &Term, predicate: &str) -> Vec<Term> {
    match Subject::try_from(node.clone()) {
        Ok(subject) => rules.objects_for(&subject, &rdf_vocab::iri(predicate)),
        Err(_) => Vec::new(),
    }
}

/// Extracts every rule from a rule graph.
///
/// A rule is any IRI-named node that is typed `rr:TriplesMap` or carries an
/// `rml:logicalSource`. Rules come back sorted by id.
pub fn parse_triples_maps(rules: &Graph) -> Result<Vec<TriplesMap>, RmlError> {
    let mut candidates: std::collections::BTreeSet<Iri> = std::collections::BTreeSet::new();
    for triple in rules.iter() {
        let is_head = triple.predicate.as_str() == terms::LOGICAL_SOURCE
            || (triple.predicate.as_str() == rdf_vocab::RDF_TYPE
                && triple.object.as_iri().map(|i| i.as_str()) == Some(terms::TRIPLES_MAP));
        if is_head {
            if let Subject::Iri(id) = &triple.subject {
                candidates.insert(id.clone());
            }
        }
    }
    let mut maps = Vec::new();
    for id in candidates {
        maps.push(parse_one_map(rules, &id)?);
    }
    Ok(maps)
}

fn parse_one_map(rules: &Graph, id: &Iri) -> Result<TriplesMap, RmlError> {
    let head = Term::Iri(id.clone());

    let ls_node = node_objects(rules, &head, terms::LOGICAL_SOURCE)
        .into_iter()
        .next()
        .ok_or_else(|| RmlError::MissingLogicalSource(id.clone()))?;
    let source_ref = literal_object(rules, &ls_node, terms::SOURCE)
        .ok_or_else(|| RmlError::InvalidRule {
            rule: id.clone(),
            message: "logical source needs an rml:source string".to_string(),
        })?;
    let iterator_text =
        literal_object(rules, &ls_node, terms::ITERATOR).ok_or_else(|| RmlError::InvalidRule {
            rule: id.clone(),
            message: "logical source needs an rml:iterator path".to_string(),
        })?;
    let iterator = compile_path(&iterator_text).map_err(|error| RmlError::BadIterator {
        rule: id.clone(),
        error,
    })?;
    if let Some(formulation) =
        node_objects(rules, &ls_node, terms::REFERENCE_FORMULATION).first()
    {
        if formulation.as_iri().map(|i| i.as_str()) != Some(terms::QL_JSONPATH) {
            return Err(RmlError::UnsupportedReferenceFormulation {
                rule: id.clone(),
                value: formulation.canonical(),
            });
        }
    }

    let subject = parse_subject_map(rules, id, &head)?;
    let mut predicate_object_maps = Vec::new();
    for pom_node in node_objects(rules, &head, terms::PREDICATE_OBJECT_MAP) {
        let predicates: Vec<Iri> = node_objects(rules, &pom_node, terms::PREDICATE)
            .into_iter()
            .filter_map(|t| t.as_iri().cloned())
            .collect();
        if predicates.is_empty() {
            return Err(RmlError::InvalidRule {
                rule: id.clone(),
                message: "predicate-object map needs an rr:predicate IRI".to_string(),
            });
        }
        let objects = parse_object_maps(rules, id, &pom_node)?;
        if objects.is_empty() {
            return Err(RmlError::InvalidRule {
                rule: id.clone(),
                message: "predicate-object map needs rr:objectMap or rr:object".to_string(),
            });
        }
        for predicate in &predicates {
            for object in &objects {
                predicate_object_maps.push(PredicateObjectMap {
                    predicate: predicate.clone(),
                    object: object.clone(),
                });
            }
        }
    }
    Ok(TriplesMap {
        id: id.clone(),
        source: LogicalSource {
            source_ref,
            iterator,
        },
        subject,
        predicate_object_maps,
    })
}

fn parse_subject_map(rules: &Graph, id: &Iri, head: &Term) -> Result<SubjectMap, RmlError> {
    if let Some(constant) = iri_object(rules, head, terms::SUBJECT) {
        return Ok(SubjectMap {
            template: SubjectTemplate::Constant(constant),
            class_iri: None,
        });
    }
    let sm_node = node_objects(rules, head, terms::SUBJECT_MAP)
        .into_iter()
        .next()
        .ok_or_else(|| RmlError::MissingSubjectMap(id.clone()))?;
    let class_iri = iri_object(rules, &sm_node, terms::CLASS);
    if let Some(template_text) = literal_object(rules, &sm_node, terms::TEMPLATE) {
        let template =
            TemplateString::parse(&template_text).map_err(|reason| RmlError::BadTemplate {
                rule: id.clone(),
                template: template_text.clone(),
                reason,
            })?;
        let template = if template.has_placeholders() {
            SubjectTemplate::Template(template)
        } else {
            match Iri::new(template_text.clone()) {
                Ok(iri) => SubjectTemplate::Constant(iri),
                Err(_) => SubjectTemplate::Template(template),
            }
        };
        return Ok(SubjectMap {
            template,
            class_iri,
        });
    }
    if let Some(constant) = iri_object(rules, &sm_node, terms::CONSTANT) {
        return Ok(SubjectMap {
            template: SubjectTemplate::Constant(constant),
            class_iri,
        });
    }
    Err(RmlError::InvalidRule {
        rule: id.clone(),
        message: "subject map needs rr:template or rr:constant".to_string(),
    })
}

fn parse_object_maps(rules: &Graph, id: &Iri, pom_node: &Term) -> Result<Vec<ObjectMap>, RmlError> {
    let mut out = Vec::new();
    for constant in node_objects(rules, pom_node, terms::OBJECT) {
        out.push(ObjectMap::Constant(constant));
    }
    for om_node in node_objects(rules, pom_node, terms::OBJECT_MAP) {
        if let Some(path) = literal_object(rules, &om_node, terms::REFERENCE) {
            validate_reference_path(id, &path)?;
            let datatype = iri_object(rules, &om_node, terms::DATATYPE);
            if datatype.as_ref().map(|d| d.as_str()) == Some(rdf_vocab::RDF_LANG_STRING) {
                return Err(RmlError::InvalidRule {
                    rule: id.clone(),
                    message: "rr:datatype rdf:langString is not allowed on references"
                        .to_string(),
                });
            }
            out.push(ObjectMap::Reference { path, datatype });
        } else if let Some(template_text) = literal_object(rules, &om_node, terms::TEMPLATE) {
            let template =
                TemplateString::parse(&template_text).map_err(|reason| RmlError::BadTemplate {
                    rule: id.clone(),
                    template: template_text,
                    reason,
                })?;
            for placeholder in template.placeholders() {
                validate_reference_path(id, placeholder)?;
            }
            out.push(ObjectMap::Template(template));
        } else if let Some(constant) = node_objects(rules, &om_node, terms::CONSTANT).first() {
            out.push(ObjectMap::Constant(constant.clone()));
        } else {
            return Err(RmlError::InvalidRule {
                rule: id.clone(),
                message: "object map needs rml:reference, rr:template or rr:constant".to_string(),
            });
        }
    }
    Ok(out)
}

fn validate_reference_path(id: &Iri, reference: &str) -> Result<(), RmlError> {
    compile_relative_path(reference).map_err(|error| RmlError::InvalidRule {
        rule: id.clone(),
        message: format!("bad reference `{reference}`: {error}"),
    })?;
    Ok(())
}

/// References are JSONPath expressions evaluated relative to the current
/// iterator element; a bare `name` is shorthand for `$.name`.
fn compile_relative_path(reference: &str) -> Result<PathExpr, PathError> {
    if reference.starts_with('$') {
        compile_path(reference)
    } else if reference.starts_with('[') {
        compile_path(&format!("${reference}"))
    } else {
        compile_path(&format!("$.{reference}"))
    }
}

/// One skipped optional reference, for the diagnostic report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedReference {
    pub rule: Iri,
    pub predicate: Iri,
    pub location: String,
    pub reference: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForwardReport {
    pub skipped_references: Vec<SkippedReference>,
}

impl ForwardReport {
    /// One line per skipped reference.
    pub fn lines(&self) -> Vec<String> {
        self.skipped_references
            .iter()
            .map(|s| {
                format!(
                    "skipped reference `{}` for predicate {} of rule {} at {}",
                    s.reference, s.predicate, s.rule, s.location
                )
            })
            .collect()
    }
}

/// Runs every rule over its source document and returns the union graph.
///
/// Subject placeholders that cannot be resolved are an error; object
/// references that resolve to nothing skip their triple and are counted in
/// the report.
pub fn execute_forward(
    maps: &[TriplesMap],
    sources: &BTreeMap<String, JsonDoc>,
    base: &Iri,
) -> Result<(Graph, ForwardReport), RmlError> {
    let mut graph = Graph::new();
    let mut report = ForwardReport::default();
    for map in maps {
        let doc = sources
            .get(&map.source.source_ref)
            .ok_or_else(|| RmlError::SourceNotFound(map.source.source_ref.clone()))?;
        for element_match in crate::json::evaluate_path(doc, &map.source.iterator) {
            let element = &element_match.value;
            let location = crate::json::path::format_location(&element_match.location);
            let subject = instantiate_subject(map, element, &location, base)?;
            if let Some(class_iri) = &map.subject.class_iri {
                graph.insert(Triple::new(
                    subject.clone(),
                    rdf_vocab::rdf_type(),
                    class_iri.clone(),
                ));
            }
            for pom in &map.predicate_object_maps {
                match instantiate_object(&pom.object, element, base) {
                    Some(object) => {
                        graph.insert(Triple::new(
                            subject.clone(),
                            pom.predicate.clone(),
                            object,
                        ));
                    }
                    None => report.skipped_references.push(SkippedReference {
                        rule: map.id.clone(),
                        predicate: pom.predicate.clone(),
                        location: location.clone(),
                        reference: describe_object_map(&pom.object),
                    }),
                }
            }
        }
    }
    Ok((graph, report))
}

fn describe_object_map(object: &ObjectMap) -> String {
    match object {
        ObjectMap::Reference { path, .. } => path.clone(),
        ObjectMap::Template(t) => t.to_string(),
        ObjectMap::Constant(c) => c.canonical(),
    }
}

fn instantiate_subject(
    map: &TriplesMap,
    element: &Value,
    location: &str,
    base: &Iri,
) -> Result<Iri, RmlError> {
    match &map.subject.template {
        SubjectTemplate::Constant(iri) => Ok(iri.clone()),
        SubjectTemplate::Template(template) => {
            let mut out = String::new();
            for segment in template.segments() {
                match segment {
                    TemplateSegment::Text(t) => out.push_str(t),
                    TemplateSegment::Placeholder(reference) => {
                        match reference_value(element, reference) {
                            Some(value) => out.push_str(&percent_encode_value(&value)),
                            None => {
                                return Err(RmlError::TemplateUnresolvable {
                                    rule: map.id.clone(),
                                    location: location.to_string(),
                                    placeholder: reference.clone(),
                                })
                            }
                        }
                    }
                }
            }
            finish_iri(&out, base).ok_or_else(|| RmlError::SubjectNotIri {
                rule: map.id.clone(),
                value: out,
            })
        }
    }
}

fn instantiate_object(object: &ObjectMap, element: &Value, base: &Iri) -> Option<Term> {
    match object {
        ObjectMap::Constant(term) => Some(term.clone()),
        ObjectMap::Reference { path, datatype } => {
            let value = reference_value(element, path)?;
            let literal = match datatype {
                Some(dt) => Literal::typed(value, dt.clone()).expect("langString rejected at parse"),
                None => Literal::string(value),
            };
            Some(Term::Literal(literal))
        }
        ObjectMap::Template(template) => {
            let mut out = String::new();
            for segment in template.segments() {
                match segment {
                    TemplateSegment::Text(t) => out.push_str(t),
                    TemplateSegment::Placeholder(reference) => {
                        out.push_str(&percent_encode_value(&reference_value(element, reference)?));
                    }
                }
            }
            finish_iri(&out, base).map(Term::Iri)
        }
    }
}

/// Absolute template results are used as-is; relative ones resolve against
/// the run's base IRI.
fn finish_iri(value: &str, base: &Iri) -> Option<Iri> {
    match Iri::new(value.to_string()) {
        Ok(iri) => Some(iri),
        Err(_) => base.resolve(value).ok(),
    }
}

/// First scalar the reference path selects on the element, as a string.
fn reference_value(element: &Value, reference: &str) -> Option<String> {
    let path = compile_relative_path(reference).ok()?;
    let matches = evaluate_path_value(element, &path);
    let first = matches.first()?;
    match &first.value {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null | Value::Array(_) | Value::Object(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::parse_turtle;
    use serde_json::json;

    const CSS: &str = "http://www.w3id.org/hsu-aut/css#";
    const RULE_PREAMBLE: &str = "\
        @prefix rr: <http://www.w3.org/ns/r2rml#> .\n\
        @prefix rml: <http://semweb.mmlab.be/ns/rml#> .\n\
        @prefix ql: <http://semweb.mmlab.be/ns/ql#> .\n\
        @prefix css: <http://www.w3id.org/hsu-aut/css#> .\n\
        @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
        @prefix map: <urn:caskbridge:rule:> .\n";

    fn capability_rule() -> String {
        format!(
            "{RULE_PREAMBLE}\n\
            map:capability a rr:TriplesMap ;\n\
              rml:logicalSource [\n\
                rml:source \"aas-env\" ;\n\
                rml:referenceFormulation ql:JSONPath ;\n\
                rml:iterator \"$..value[?(@.modelType=='Capability')]\"\n\
              ] ;\n\
              rr:subjectMap [ rr:template \"#{{idShort}}\" ; rr:class css:Capability ] ;\n\
              rr:predicateObjectMap [\n\
                rr:predicate rdfs:comment ;\n\
                rr:objectMap [ rml:reference \"description[0].text\" ]\n\
              ] .\n"
        )
    }

    fn base() -> Iri {
        Iri::new("http://example.org/css").unwrap()
    }

    fn env_with_capabilities(names: &[&str]) -> JsonDoc {
        let caps: Vec<Value> = names
            .iter()
            .map(|n| json!({"idShort": n, "modelType": "Capability"}))
            .collect();
        JsonDoc::new(json!({
            "submodels": [{
                "idShort": "CapabilityDescription",
                "submodelElements": [{
                    "idShort": "CapabilitySet",
                    "modelType": "SubmodelElementCollection",
                    "value": [{"idShort": "Container", "value": caps}]
                }]
            }]
        }))
    }

    fn sources(doc: JsonDoc) -> BTreeMap<String, JsonDoc> {
        let mut m = BTreeMap::new();
        m.insert("aas-env".to_string(), doc);
        m
    }

    #[test]
    fn template_parsing() {
        let t = TemplateString::parse("#{idShort}").unwrap();
        assert_eq!(
            t.segments(),
            &[
                TemplateSegment::Text("#".to_string()),
                TemplateSegment::Placeholder("idShort".to_string())
            ]
        );
        assert!(TemplateString::parse("{a}{b}").is_ok());
        assert!(TemplateString::parse("{}").is_err());
        assert!(TemplateString::parse("{a").is_err());
        assert!(TemplateString::parse("a}b").is_err());
        assert!(TemplateString::parse("{a{b}}").is_err());
    }

    #[test]
    fn empty_rules_graph_yields_no_maps() {
        assert!(parse_triples_maps(&Graph::new()).unwrap().is_empty());
    }

    // The reconstructed capability rule: class css:Capability, subject
    // template built from the element's idShort.
    #[test]
    fn parse_capability_rule() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        assert_eq!(maps.len(), 1);
        let map = &maps[0];
        assert_eq!(map.id.as_str(), "urn:caskbridge:rule:capability");
        assert_eq!(map.source.source_ref, "aas-env");
        assert_eq!(
            map.subject.class_iri.as_ref().map(|i| i.as_str()),
            Some(format!("{CSS}Capability").as_str())
        );
        match &map.subject.template {
            SubjectTemplate::Template(t) => {
                assert_eq!(t.placeholders().collect::<Vec<_>>(), vec!["idShort"]);
            }
            other => panic!("expected template subject, got {other:?}"),
        }
        assert_eq!(map.predicate_object_maps.len(), 1);
        assert_eq!(
            map.predicate_object_maps[0].predicate.as_str(),
            crate::rdf::vocab::RDFS_COMMENT
        );
    }

    #[test]
    fn missing_subject_map_is_an_error() {
        let text = format!(
            "{RULE_PREAMBLE}\n\
            map:broken a rr:TriplesMap ;\n\
              rml:logicalSource [ rml:source \"aas-env\" ; rml:iterator \"$\" ] .\n"
        );
        let rules = parse_turtle(&text, None).unwrap();
        match parse_triples_maps(&rules) {
            Err(RmlError::MissingSubjectMap(id)) => {
                assert_eq!(id.as_str(), "urn:caskbridge:rule:broken")
            }
            other => panic!("expected MissingSubjectMap, got {other:?}"),
        }
    }

    #[test]
    fn missing_logical_source_is_an_error() {
        let text = format!(
            "{RULE_PREAMBLE}\n\
            map:broken a rr:TriplesMap ;\n\
              rr:subjectMap [ rr:template \"#{{idShort}}\" ] .\n"
        );
        let rules = parse_turtle(&text, None).unwrap();
        assert!(matches!(
            parse_triples_maps(&rules),
            Err(RmlError::MissingLogicalSource(_))
        ));
    }

    #[test]
    fn missing_source_document_is_an_error() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let err = execute_forward(&maps, &BTreeMap::new(), &base()).unwrap_err();
        assert_eq!(err, RmlError::SourceNotFound("aas-env".to_string()));
    }

    // Manual template-substitution oracle: "#" + "Drilling" resolved against
    // http://example.org/css = http://example.org/css#Drilling.
    #[test]
    fn capability_rule_produces_typed_individual() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let (graph, report) =
            execute_forward(&maps, &sources(env_with_capabilities(&["Drilling"])), &base())
                .unwrap();
        let expected = Triple::new(
            Iri::new("http://example.org/css#Drilling").unwrap(),
            rdf_vocab::rdf_type(),
            Iri::new(format!("{CSS}Capability")).unwrap(),
        );
        assert!(graph.contains(&expected), "graph was {graph:?}");
        assert_eq!(graph.len(), 1);
        // description is absent: one skipped reference reported
        assert_eq!(report.skipped_references.len(), 1);
        assert_eq!(report.lines().len(), 1);
    }

    #[test]
    fn two_capabilities_produce_exactly_two_individuals() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let (graph, _) = execute_forward(
            &maps,
            &sources(env_with_capabilities(&["Drilling", "Milling"])),
            &base(),
        )
        .unwrap();
        assert_eq!(graph.len(), 2);
        for name in ["Drilling", "Milling"] {
            let subject = Iri::new(format!("http://example.org/css#{name}")).unwrap();
            assert_eq!(
                graph
                    .match_pattern(Some(&Term::Iri(subject)), None, None)
                    .len(),
                1
            );
        }
    }

    #[test]
    fn reference_object_map_emits_literal() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let doc = JsonDoc::new(json!({
            "value": [{
                "idShort": "Drilling",
                "modelType": "Capability",
                "description": [{"language": "en", "text": "Makes holes"}]
            }]
        }));
        let (graph, report) = execute_forward(&maps, &sources(doc), &base()).unwrap();
        let comment = Triple::new(
            Iri::new("http://example.org/css#Drilling").unwrap(),
            rdf_vocab::iri(rdf_vocab::RDFS_COMMENT),
            Literal::string("Makes holes"),
        );
        assert!(graph.contains(&comment));
        assert!(report.skipped_references.is_empty());
    }

    #[test]
    fn subject_placeholder_without_value_is_an_error() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let doc = JsonDoc::new(json!({"value": [{"modelType": "Capability"}]}));
        let err = execute_forward(&maps, &sources(doc), &base()).unwrap_err();
        assert!(matches!(err, RmlError::TemplateUnresolvable { .. }));
    }

    #[test]
    fn adversarial_id_shorts_still_make_valid_iris() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        for weird in ["My Cap", "a#b", "x/y", "Späne", "q?r", "100%", "{brace}"] {
            let (graph, _) =
                execute_forward(&maps, &sources(env_with_capabilities(&[weird])), &base())
                    .unwrap();
            assert_eq!(graph.len(), 1, "idShort {weird:?}");
        }
        // spot-check one encoding
        let (graph, _) = execute_forward(
            &maps,
            &sources(env_with_capabilities(&["My Cap"])),
            &base(),
        )
        .unwrap();
        let subject = Iri::new("http://example.org/css#My%20Cap").unwrap();
        assert_eq!(
            graph
                .match_pattern(Some(&Term::Iri(subject)), None, None)
                .len(),
            1
        );
    }

    #[test]
    fn duplicate_iterator_matches_do_not_duplicate_triples() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let doc = JsonDoc::new(json!({
            "a": {"value": [{"idShort": "Drilling", "modelType": "Capability"}]},
            "b": {"value": [{"idShort": "Drilling", "modelType": "Capability"}]}
        }));
        let (graph, _) = execute_forward(&maps, &sources(doc), &base()).unwrap();
        assert_eq!(graph.len(), 1);
    }

    #[test]
    fn constant_and_template_object_maps() {
        let text = format!(
            "{RULE_PREAMBLE}\n\
            map:link a rr:TriplesMap ;\n\
              rml:logicalSource [ rml:source \"aas-env\" ; rml:iterator \"$.items[*]\" ] ;\n\
              rr:subjectMap [ rr:template \"#{{id}}\" ] ;\n\
              rr:predicateObjectMap [\n\
                rr:predicate css:isRealizedBySkill ;\n\
                rr:objectMap [ rr:template \"#{{skill}}\" ]\n\
              ] ;\n\
              rr:predicateObjectMap [ rr:predicate css:flag ; rr:object css:Fixed ] .\n"
        );
        let rules = parse_turtle(&text, None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let doc = JsonDoc::new(json!({"items": [{"id": "A", "skill": "S1"}]}));
        let (graph, _) = execute_forward(&maps, &sources(doc), &base()).unwrap();
        let link = Triple::new(
            Iri::new("http://example.org/css#A").unwrap(),
            Iri::new(format!("{CSS}isRealizedBySkill")).unwrap(),
            Iri::new("http://example.org/css#S1").unwrap(),
        );
        let flag = Triple::new(
            Iri::new("http://example.org/css#A").unwrap(),
            Iri::new(format!("{CSS}flag")).unwrap(),
            Iri::new(format!("{CSS}Fixed")).unwrap(),
        );
        assert!(graph.contains(&link));
        assert!(graph.contains(&flag));
        assert_eq!(graph.len(), 2);
    }

    #[test]
    fn determinism_and_monotonicity() {
        let rules = parse_turtle(&capability_rule(), None).unwrap();
        let maps = parse_triples_maps(&rules).unwrap();
        let small = env_with_capabilities(&["A", "B"]);
        let big = env_with_capabilities(&["A", "B", "C"]);
        let (g1, _) = execute_forward(&maps, &sources(small.clone()), &base()).unwrap();
        let (g2, _) = execute_forward(&maps, &sources(small), &base()).unwrap();
        assert_eq!(g1, g2);
        let (g3, _) = execute_forward(&maps, &sources(big), &base()).unwrap();
        for t in g1.iter() {
            assert!(g3.contains(t));
        }
    }
}
