use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::FinAlg;
use super::element::Element;
use super::partition::Subalgebra;
use crate::error::Result;

/// JSON exchange document for an algebra with named elements and named
/// subalgebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub atom_count: usize,
    #[serde(default)]
    pub labels: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub subalgebras: BTreeMap<String, Vec<Vec<usize>>>,
}

/// An algebra together with named subalgebras, as loaded from a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedAlgebra {
    pub algebra: FinAlg,
    pub subalgebras: BTreeMap<String, Subalgebra>,
}

impl NamedAlgebra {
    pub fn new(algebra: FinAlg) -> Self {
        NamedAlgebra {
            algebra,
            subalgebras: BTreeMap::new(),
        }
    }

    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            atom_count: self.algebra.atom_count(),
            labels: self
                .algebra
                .labels()
                .iter()
                .map(|(k, v)| (k.clone(), v.to_vec()))
                .collect(),
            subalgebras: self
                .subalgebras
                .iter()
                .map(|(k, b)| (k.clone(), b.blocks()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<Self> {
        let mut algebra = FinAlg::new(doc.atom_count)?;
        for (name, atoms) in &doc.labels {
            let x = Element::from_atoms(doc.atom_count, atoms.iter().copied())?;
            algebra.set_label(name.clone(), x)?;
        }
        let mut subalgebras = BTreeMap::new();
        for (name, blocks) in &doc.subalgebras {
            subalgebras.insert(name.clone(), Subalgebra::from_blocks(doc.atom_count, blocks)?);
        }
        Ok(NamedAlgebra {
            algebra,
            subalgebras,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(text)?;
        NamedAlgebra::from_doc(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let alg = FinAlg::new(4)
            .unwrap()
            .with_label("x", Element::from_atoms(4, [0, 2]).unwrap())
            .unwrap();
        let mut named = NamedAlgebra::new(alg);
        named.subalgebras.insert(
            "B".into(),
            Subalgebra::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap(),
        );
        let text = named.to_json().unwrap();
        assert_eq!(NamedAlgebra::from_json(&text).unwrap(), named);
    }

    #[test]
    fn bad_documents_rejected() {
        assert!(NamedAlgebra::from_json(r#"{"atom_count":0}"#).is_err());
        assert!(NamedAlgebra::from_json(r#"{"atom_count":2,"labels":{"x":[2]}}"#).is_err());
        assert!(NamedAlgebra::from_json(r#"{"atom_count":2,"subalgebras":{"B":[[0]]}}"#).is_err());
        assert!(NamedAlgebra::from_json("{").is_err());
    }
}
