use serde::{Deserialize, Serialize};

use super::{Dessin, DessinError};

/// On-disk form: `{"edges": m, "sigma": "(0 1 2)", "tau": "(0 1)"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DessinFile {
    pub edges: usize,
    pub sigma: String,
    pub tau: String,
}

impl From<&Dessin> for DessinFile {
    fn from(d: &Dessin) -> Self {
        DessinFile {
            edges: d.edge_count(),
            sigma: d.sigma().to_string(),
            tau: d.tau().to_string(),
        }
    }
}

impl TryFrom<&DessinFile> for Dessin {
    type Error = DessinError;

    fn try_from(f: &DessinFile) -> Result<Self, Self::Error> {
        Dessin::from_cycles(f.edges, &f.sigma, &f.tau)
    }
}

impl Dessin {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DessinFile::from(self)).expect("plain struct serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DessinError> {
        let file: DessinFile =
            serde_json::from_str(text).map_err(|e| DessinError::Format(e.to_string()))?;
        Dessin::try_from(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_is_canonical() {
        let d = Dessin::from_json(r#"{"edges": 4, "sigma": "(2 1 0)", "tau": "[1,0,3,2]"}"#).unwrap();
        assert_eq!(d.to_json(), r#"{"edges":4,"sigma":"(0 2 1)","tau":"(0 1)(2 3)"}"#);
        assert_eq!(Dessin::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(Dessin::from_json("{"), Err(DessinError::Format(_))));
        assert_eq!(
            Dessin::from_json(r#"{"edges": 3, "sigma": "(0 1)", "tau": "()"}"#).unwrap_err(),
            DessinError::Disconnected
        );
    }
}
