use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Depths whose angles were evaluated in the tree-value study.
pub const CANONICAL_MAX_DEPTH: usize = 7;
/// Deepest embedded row. Depth 8 is listed but was never evaluated.
pub const TABLE_MAX_DEPTH: usize = 8;

/// Phase-operator convention the γ values refer to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "convention", rename_all = "lowercase")]
pub enum Convention {
    /// exp(−iγ Σ Z_j Z_k / √D) on a (D+1)-regular graph.
    Scaled { degree: u32 },
    /// exp(−iγ ½ Σ J_jk Z_j Z_k), the problem Hamiltonian itself.
    Standard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleSet {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    #[serde(flatten)]
    pub convention: Convention,
}

impl AngleSet {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>, convention: Convention) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::invalid(format!(
                "{} gammas but {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        if let Convention::Scaled { degree: 0 } = convention {
            return Err(Error::invalid("scaled convention needs a positive degree"));
        }
        Ok(AngleSet {
            gammas,
            betas,
            convention,
        })
    }

    /// Depth p.
    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    /// The same circuit expressed with standard-convention γ: γ ↦ 2γ/√D.
    pub fn to_standard(&self) -> AngleSet {
        let factor = match self.convention {
            Convention::Scaled { degree } => 2.0 / f64::from(degree).sqrt(),
            Convention::Standard => 1.0,
        };
        AngleSet {
            gammas: self.gammas.iter().map(|g| g * factor).collect(),
            betas: self.betas.clone(),
            convention: Convention::Standard,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let set: AngleSet = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        AngleSet::new(set.gammas, set.betas, set.convention)
    }
}

/// Optimised MaxCut angles for D = 3, scaled convention, p = 1…8.
#[allow(clippy::approx_constant)]
const TABLE: [(&[f64], &[f64]); TABLE_MAX_DEPTH] = [
    (&[0.4535], &[0.3927]),
    (&[0.3532, 0.6406], &[0.5341, 0.283]),
    (&[0.3070, 0.5641, 0.6532], &[0.5879, 0.4232, 0.2230]),
    (&[0.2728, 0.5089, 0.5830, 0.6679], &[0.6050, 0.4778, 0.3613, 0.1875]),
    (
        &[0.2519, 0.4735, 0.5225, 0.5951, 0.6793],
        &[0.6225, 0.5051, 0.4167, 0.3253, 0.1628],
    ),
    (
        &[0.2327, 0.4441, 0.4881, 0.5318, 0.6025, 0.6813],
        &[0.6293, 0.5232, 0.4528, 0.3883, 0.2981, 0.1459],
    ),
    (
        &[0.2198, 0.4235, 0.4605, 0.4986, 0.5382, 0.6043, 0.6830],
        &[0.6378, 0.5327, 0.4719, 0.4325, 0.3632, 0.2778, 0.1339],
    ),
    // The fourth γ is printed as "0.0.4746" in the source table; read as 0.4746.
    (
        &[0.2083, 0.4062, 0.4428, 0.4746, 0.5067, 0.5419, 0.6254, 0.7222],
        &[0.6405, 0.5385, 0.4817, 0.4526, 0.4101, 0.3452, 0.2605, 0.1198],
    ),
];

/// Angle set for depth `p` (1…8), scaled convention with D = 3.
///
/// Depth 8 has not been evaluated; requesting it logs a warning.
pub fn angle_table(p: usize) -> Result<AngleSet> {
    if p == 0 || p > TABLE_MAX_DEPTH {
        return Err(Error::invalid(format!(
            "angle table covers depths 1..={TABLE_MAX_DEPTH}, got {p}"
        )));
    }
    if p > CANONICAL_MAX_DEPTH {
        log::warn!("depth-{p} angles have not been evaluated");
    }
    let (g, b) = TABLE[p - 1];
    AngleSet::new(g.to_vec(), b.to_vec(), Convention::Scaled { degree: 3 })
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    #[test]
    fn published_rows() {
        let a = angle_table(1).unwrap();
        assert_eq!((a.gammas.clone(), a.betas.clone()), (vec![0.4535], vec![0.3927]));
        let a = angle_table(3).unwrap();
        assert_eq!(a.gammas, vec![0.3070, 0.5641, 0.6532]);
        assert_eq!(a.betas, vec![0.5879, 0.4232, 0.2230]);
        for p in 1..=TABLE_MAX_DEPTH {
            assert_eq!(angle_table(p).unwrap().depth(), p);
        }
        assert_eq!(angle_table(8).unwrap().gammas[3], 0.4746);
        assert!(angle_table(0).is_err());
        assert!(angle_table(9).is_err());
    }

    #[test]
    fn standard_conversion() {
        let s = angle_table(1).unwrap().to_standard();
        assert!((s.gammas[0] - 0.4535 * 2.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((s.gammas[0] - 0.5237).abs() < 1e-4);
        assert_eq!(s.betas, vec![0.3927]);
        assert_eq!(s.to_standard(), s);
    }

    #[test]
    fn json_file_format() {
        let text = r#"{"gammas": [0.1, 0.2], "betas": [0.3, 0.4], "convention": "scaled", "degree": 3}"#;
        let a = AngleSet::from_json(text).unwrap();
        assert_eq!(a.convention, Convention::Scaled { degree: 3 });
        let text = r#"{"gammas": [0.1], "betas": [0.3], "convention": "standard"}"#;
        assert_eq!(AngleSet::from_json(text).unwrap().convention, Convention::Standard);
        let bad = r#"{"gammas": [0.1], "betas": [], "convention": "standard"}"#;
        assert!(AngleSet::from_json(bad).is_err());
        let round = serde_json::to_string(&angle_table(2).unwrap()).unwrap();
        assert_eq!(AngleSet::from_json(&round).unwrap(), angle_table(2).unwrap());
    }
}
