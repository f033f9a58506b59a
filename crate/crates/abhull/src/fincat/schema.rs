//! On-disk quiver description: a JSON document with vertex names,
//! arrows, and the arrow names to invert.
//!
//! ```json
//! {
//!   "vertices": ["x", "z", "y1"],
//!   "arrows": [
//!     {"name": "s1", "src": "y1", "tgt": "x"},
//!     {"name": "t1", "src": "y1", "tgt": "z"}
//!   ],
//!   "sigma": ["s1"]
//! }
//! ```

use serde::{Deserialize, Serialize};

use super::quiver::{ArrowId, Quiver};
use super::FincatError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub sigma: Vec<String>,
}

impl QuiverSpec {
    pub fn parse(json: &str) -> Result<Self, FincatError> {
        serde_json::from_str(json).map_err(|e| FincatError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quiver spec serializes")
    }

    /// Validates and builds the quiver plus the resolved sigma set.
    /// Unknown arrow names in `sigma` are reported by name.
    pub fn build(&self) -> Result<(Quiver, Vec<ArrowId>), FincatError> {
        let quiver = Quiver::new(
            self.vertices.clone(),
            self.arrows
                .iter()
                .map(|a| (a.name.clone(), a.src.clone(), a.tgt.clone()))
                .collect(),
        )?;
        let mut sigma = Vec::new();
        for name in &self.sigma {
            match quiver.arrow_by_name(name) {
                Some(id) => sigma.push(id),
                None => return Err(FincatError::UnknownArrow(name.clone())),
            }
        }
        Ok((quiver, sigma))
    }

    pub fn from_quiver(quiver: &Quiver, sigma: &[ArrowId]) -> Self {
        QuiverSpec {
            vertices: quiver.vertices().map(|v| quiver.vertex_name(v).to_string()).collect(),
            arrows: quiver
                .arrows()
                .map(|(_, a)| ArrowSpec {
                    name: a.name.clone(),
                    src: quiver.vertex_name(a.src).to_string(),
                    tgt: quiver.vertex_name(a.tgt).to_string(),
                })
                .collect(),
            sigma: sigma
                .iter()
                .map(|&a| quiver.arrow(a).name.clone())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::quiver::span_quiver;

    #[test]
    fn round_trip_span_quiver() {
        let (q, sigma) = span_quiver(2);
        let spec = QuiverSpec::from_quiver(&q, &sigma);
        let json = spec.to_json();
        let reparsed = QuiverSpec::parse(&json).unwrap();
        let (q2, sigma2) = reparsed.build().unwrap();
        assert_eq!(q, q2);
        assert_eq!(sigma, sigma2);
    }

    #[test]
    fn unknown_sigma_arrow_is_named() {
        let spec = QuiverSpec {
            vertices: vec!["a".into(), "b".into()],
            arrows: vec![ArrowSpec {
                name: "f".into(),
                src: "a".into(),
                tgt: "b".into(),
            }],
            sigma: vec!["nope".into()],
        };
        match spec.build() {
            Err(FincatError::UnknownArrow(name)) => assert_eq!(name, "nope"),
            other => panic!("expected unknown arrow error, got {other:?}"),
        }
    }

    #[test]
    fn parse_error_carries_position() {
        match QuiverSpec::parse("{ not json") {
            Err(FincatError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
