use serde::{Deserialize, Serialize};

use super::ApproxSystem;
use crate::ba::{AlgebraDoc, NamedAlgebra, Subalgebra};
use crate::error::Result;
use crate::ordinals::Ordinal;

/// JSON document for a system. Positions default to `0, 1, …` and `eta`
/// to the successor of the last position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub ambient: AlgebraDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Ordinal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Ordinal>>,
    pub stages: Vec<Vec<Vec<usize>>>,
    pub visibility: Vec<Vec<usize>>,
}

impl ApproxSystem {
    pub fn to_doc(&self) -> SystemDoc {
        SystemDoc {
            ambient: NamedAlgebra::new(self.ambient().clone()).to_doc(),
            eta: Some(*self.eta()),
            positions: Some(self.positions().to_vec()),
            stages: self.stages().iter().map(Subalgebra::blocks).collect(),
            visibility: self
                .visibility()
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
        }
    }

    pub fn from_doc(doc: &SystemDoc) -> Result<Self> {
        let ambient = NamedAlgebra::from_doc(&doc.ambient)?.algebra;
        let atom_count = ambient.atom_count();
        let stages = doc
            .stages
            .iter()
            .map(|b| Subalgebra::from_blocks(atom_count, b))
            .collect::<Result<Vec<_>>>()?;
        let positions = doc
            .positions
            .clone()
            .unwrap_or_else(|| (0..stages.len() as u64).map(Ordinal::finite).collect());
        let eta = doc.eta.unwrap_or_else(|| {
            positions
                .last()
                .map(|p| *p + Ordinal::finite(1))
                .unwrap_or(Ordinal::ZERO)
        });
        let visibility = doc
            .visibility
            .iter()
            .map(|v| v.iter().copied().collect())
            .collect();
        ApproxSystem::new(ambient, eta, positions, stages, visibility)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        ApproxSystem::from_doc(&serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_defaults() {
        let text = r#"{"ambient":{"atom_count":4},"stages":[[[0,1,2,3]],[[0,1],[2,3]],[[0],[1],[2],[3]]],
            "visibility":[[],[0],[0,1]]}"#;
        let sys = ApproxSystem::from_json(text).unwrap();
        assert_eq!(sys.eta().to_string(), "3");
        assert_eq!(ApproxSystem::from_json(&sys.to_json().unwrap()).unwrap(), sys);
        let bad = r#"{"ambient":{"atom_count":2},"stages":[[[0,1]]],"visibility":[[3]]}"#;
        assert!(ApproxSystem::from_json(bad).is_err());
    }
}
