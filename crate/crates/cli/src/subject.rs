//! Loading documents and turning their maps into analyzable subjects.

use std::path::Path;

use fixlocus::automorphism::{fixed_hypersurface_part, Automorphism, FixedPart, PolynomialMap};
use fixlocus::theorem::RuledWitness;

use crate::corpus;
use crate::dsl::{parse_document, Item, MapDocument, ParseError, WitnessSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{origin}:{error}")]
    Parse { origin: String, error: ParseError },

    #[error("{0}")]
    Input(String),

    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },

    #[error("{0}")]
    Core(#[from] fixlocus::Error),
}

impl CliError {
    /// 2 for bad input, 3 for internal integrity failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.root() {
                fixlocus::Error::Integrity(_) | fixlocus::Error::Contract(_) | fixlocus::Error::Domain(_) => 3,
                _ => 2,
            },
            _ => 2,
        }
    }
}

/// A document together with the name it was loaded under.
pub struct Loaded {
    pub origin: String,
    pub doc: MapDocument,
}

/// Loads `corpus:<name>` from the built-in corpus, anything else from disk.
pub fn load(source: &str) -> Result<Loaded, CliError> {
    let (origin, text) = match source.strip_prefix("corpus:") {
        Some(name) => {
            let entry = corpus::get(name).ok_or_else(|| {
                let known: Vec<_> = corpus::names().collect();
                CliError::Input(format!("no corpus entry `{name}`; known entries: {}", known.join(", ")))
            })?;
            (source.to_string(), entry.text.to_string())
        }
        None => {
            let text = std::fs::read_to_string(Path::new(source))
                .map_err(|error| CliError::Io { path: source.to_string(), error })?;
            (source.to_string(), text)
        }
    };
    let doc = parse_document(&text).map_err(|error| CliError::Parse { origin: origin.clone(), error })?;
    Ok(Loaded { origin, doc })
}

pub enum SubjectMap {
    Certified(Automorphism),
    /// No inverse was supplied: the map can be probed but yields no verdicts.
    Raw(PolynomialMap),
}

pub struct NamedWitness {
    pub name: String,
    pub witness: RuledWitness,
}

pub struct Subject {
    pub name: String,
    pub variables: Vec<String>,
    pub map: SubjectMap,
    pub witnesses: Vec<NamedWitness>,
}

impl Subject {
    pub fn forward(&self) -> &PolynomialMap {
        match &self.map {
            SubjectMap::Certified(f) => f.forward(),
            SubjectMap::Raw(f) => f,
        }
    }

    pub fn automorphism(&self) -> Option<&Automorphism> {
        match &self.map {
            SubjectMap::Certified(f) => Some(f),
            SubjectMap::Raw(_) => None,
        }
    }

    pub fn poly_string(&self, p: &fixlocus::Polynomial) -> String {
        p.to_string_with(&self.variables)
    }
}

fn input(map: &str, e: fixlocus::Error) -> CliError {
    CliError::Core(e.in_stage(&format!("map `{map}`")))
}

fn build_witness(spec: &WitnessSpec, forward: &PolynomialMap) -> Result<NamedWitness, CliError> {
    let target = match &spec.target {
        Some(t) => t.clone(),
        None => match fixed_hypersurface_part(forward) {
            FixedPart::Hypersurface(h) => h,
            _ => {
                return Err(CliError::Input(format!(
                    "witness `{}` has no `on` target and map `{}` fixes no hypersurface",
                    spec.name, spec.map
                )))
            }
        },
    };
    let witness = RuledWitness::new(target, spec.components.clone())
        .map_err(|e| CliError::Core(e.in_stage(&format!("witness `{}`", spec.name))))?;
    Ok(NamedWitness { name: spec.name.clone(), witness })
}

fn build(doc: &MapDocument, item: &Item) -> Result<Option<Subject>, CliError> {
    let n = doc.nvars();
    let (name, map) = match item {
        Item::Map { name, components } => {
            let forward = PolynomialMap::new(components.clone()).map_err(|e| input(name, e))?;
            let inverse = doc.items.iter().find_map(|i| match i {
                Item::Inverse { name: m, components } if m == name => Some(components),
                _ => None,
            });
            let map = match inverse {
                Some(inv) => {
                    let inv = PolynomialMap::new(inv.clone()).map_err(|e| input(name, e))?;
                    SubjectMap::Certified(Automorphism::from_pair(forward, inv).map_err(|e| input(name, e))?)
                }
                None => SubjectMap::Raw(forward),
            };
            (name, map)
        }
        Item::Tame { name, word } => {
            let word = word.iter().map(|g| g.to_generator(n)).collect();
            (name, SubjectMap::Certified(Automorphism::from_generators(n, word).map_err(|e| input(name, e))?))
        }
        _ => return Ok(None),
    };
    let forward = match &map {
        SubjectMap::Certified(f) => f.forward(),
        SubjectMap::Raw(f) => f,
    };
    let witnesses = doc.witnesses_for(name).map(|w| build_witness(w, forward)).collect::<Result<_, _>>()?;
    Ok(Some(Subject { name: name.clone(), variables: doc.ring.clone(), map, witnesses }))
}

/// Builds every map of the document, certifying automorphisms on the way.
pub fn subjects(doc: &MapDocument) -> Result<Vec<Subject>, CliError> {
    doc.items.iter().filter_map(|item| build(doc, item).transpose()).collect()
}

/// The map called `wanted`, or the only map of the document.
pub fn select(doc: &MapDocument, wanted: Option<&str>) -> Result<Subject, CliError> {
    let names = doc.map_names();
    let target = match (wanted, names.as_slice()) {
        (Some(w), _) if names.contains(&w) => w,
        (Some(w), _) => {
            return Err(CliError::Input(format!("no map `{w}`; the document defines: {}", names.join(", "))))
        }
        (None, [only]) => *only,
        (None, []) => return Err(CliError::Input("the document defines no map".into())),
        (None, _) => {
            return Err(CliError::Input(format!(
                "the document defines several maps ({}); choose one with --map",
                names.join(", ")
            )))
        }
    };
    let item = doc
        .items
        .iter()
        .find(|i| matches!(i, Item::Map { name, .. } | Item::Tame { name, .. } if name == target))
        .expect("selected name is defined");
    Ok(build(doc, item)?.expect("maps build to subjects"))
}
