//! Compact textual descriptors for states and channels.
//!
//! States:   `bloch:x,y,z`, `matrix:<json>`, `vacuum`, `coherent:q,p`,
//!           `thermal:n`, `fock:n`, `squeezed:r,theta`.
//! Channels: `pauli:p0,px,py,pz`, `affine:tx,ty,tz;lx,ly,lz`,
//!           `kraus:<json>`.
//!
//! Matrix JSON is a 2x2 array of [re, im] pairs; a Kraus JSON is an array of
//! such matrices. Bosonic channel JSON is `{"kind": "covariant" |
//! "contravariant", "k": <f64>, "alpha": <f64>}`.

use num_complex::Complex64;
use serde::Deserialize;

use tomo_core::boson::{BosonicState, ChannelKind, GaussianChannelParams};
use tomo_core::linalg::Mat2;
use tomo_core::qstate::{
    bloch_to_density, AffineQubitChannel, BlochVector, ChannelSpec, DensityMatrix, KrausChannel,
    PauliMixture,
};

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn split_floats(s: &str, n: usize, what: &str) -> Result<Vec<f64>, ParseError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(ParseError(format!(
            "{what} expects {n} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| ParseError(format!("{what}: cannot parse '{p}': {e}")))
        })
        .collect()
}

type MatrixJson = [[[f64; 2]; 2]; 2];

fn matrix_from_json(json: &str) -> Result<Mat2, ParseError> {
    let raw: MatrixJson = serde_json::from_str(json)
        .map_err(|e| ParseError(format!("matrix JSON must be 2x2 [re, im] pairs: {e}")))?;
    let mut m = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            m.0[i][j] = Complex64::new(raw[i][j][0], raw[i][j][1]);
        }
    }
    Ok(m)
}

/// Parse a qubit state descriptor.
pub fn parse_qubit_state(s: &str) -> Result<DensityMatrix, ParseError> {
    if let Some(rest) = s.strip_prefix("bloch:") {
        let v = split_floats(rest, 3, "bloch state")?;
        return bloch_to_density(BlochVector::new(v[0], v[1], v[2]))
            .map_err(|e| ParseError(format!("invalid state: {e}")));
    }
    if let Some(rest) = s.strip_prefix("matrix:") {
        let m = matrix_from_json(rest)?;
        return DensityMatrix::new(m).map_err(|e| ParseError(format!("invalid state: {e}")));
    }
    Err(ParseError(format!(
        "unknown qubit state descriptor '{s}' (expected bloch:x,y,z or matrix:<json>)"
    )))
}

/// Parse a qubit channel descriptor.
pub fn parse_qubit_channel(s: &str) -> Result<ChannelSpec, ParseError> {
    if let Some(rest) = s.strip_prefix("pauli:") {
        let v = split_floats(rest, 4, "pauli channel")?;
        return PauliMixture::new(v[0], v[1], v[2], v[3])
            .map(ChannelSpec::Pauli)
            .map_err(|e| ParseError(format!("invalid channel: {e}")));
    }
    if let Some(rest) = s.strip_prefix("affine:") {
        let halves: Vec<&str> = rest.split(';').collect();
        if halves.len() != 2 {
            return Err(ParseError(
                "affine channel expects 'tx,ty,tz;lx,ly,lz'".into(),
            ));
        }
        let t = split_floats(halves[0], 3, "affine translation")?;
        let l = split_floats(halves[1], 3, "affine scaling")?;
        return Ok(ChannelSpec::Affine(AffineQubitChannel::new(
            [t[0], t[1], t[2]],
            [l[0], l[1], l[2]],
        )));
    }
    if let Some(rest) = s.strip_prefix("kraus:") {
        let raw: Vec<MatrixJson> = serde_json::from_str(rest)
            .map_err(|e| ParseError(format!("kraus JSON must be an array of matrices: {e}")))?;
        let mut ops = Vec::new();
        for m in &raw {
            let mut out = Mat2::zero();
            for i in 0..2 {
                for j in 0..2 {
                    out.0[i][j] = Complex64::new(m[i][j][0], m[i][j][1]);
                }
            }
            ops.push(out);
        }
        return KrausChannel::new(ops)
            .map(ChannelSpec::Kraus)
            .map_err(|e| ParseError(format!("invalid channel: {e}")));
    }
    Err(ParseError(format!(
        "unknown qubit channel descriptor '{s}' (expected pauli:, affine: or kraus:)"
    )))
}

/// Parse a bosonic state descriptor.
pub fn parse_bosonic_state(s: &str) -> Result<BosonicState, ParseError> {
    if s == "vacuum" {
        return Ok(BosonicState::Vacuum);
    }
    if let Some(rest) = s.strip_prefix("coherent:") {
        let v = split_floats(rest, 2, "coherent state")?;
        return Ok(BosonicState::Coherent { q: v[0], p: v[1] });
    }
    if let Some(rest) = s.strip_prefix("thermal:") {
        let v = split_floats(rest, 1, "thermal state")?;
        return Ok(BosonicState::Thermal { nbar: v[0] });
    }
    if let Some(rest) = s.strip_prefix("fock:") {
        let n: u32 = rest
            .trim()
            .parse()
            .map_err(|e| ParseError(format!("fock state: cannot parse '{rest}': {e}")))?;
        return Ok(BosonicState::Fock { n });
    }
    if let Some(rest) = s.strip_prefix("squeezed:") {
        let v = split_floats(rest, 2, "squeezed state")?;
        return Ok(BosonicState::Squeezed { r: v[0], theta: v[1] });
    }
    Err(ParseError(format!(
        "unknown bosonic state descriptor '{s}' \
         (expected vacuum, coherent:q,p, thermal:n, fock:n or squeezed:r,theta)"
    )))
}

#[derive(Debug, Deserialize)]
struct BosonChannelJson {
    kind: String,
    k: f64,
    alpha: f64,
}

/// Parse the bosonic channel JSON `{"kind", "k", "alpha"}`.
pub fn parse_boson_channel_json(json: &str) -> Result<GaussianChannelParams, ParseError> {
    let raw: BosonChannelJson =
        serde_json::from_str(json).map_err(|e| ParseError(format!("channel JSON: {e}")))?;
    let kind = match raw.kind.as_str() {
        "covariant" => ChannelKind::Covariant,
        "contravariant" => ChannelKind::Contravariant,
        other => {
            return Err(ParseError(format!(
                "channel kind must be 'covariant' or 'contravariant', got '{other}'"
            )))
        }
    };
    GaussianChannelParams::new(kind, raw.k, raw.alpha).map_err(|e| ParseError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tomo_core::qstate::density_to_bloch;

    #[test]
    fn bloch_descriptor_roundtrip() {
        let rho = parse_qubit_state("bloch:0.1,-0.2,0.3").unwrap();
        let a = density_to_bloch(&rho);
        assert!((a.x - 0.1).abs() < 1e-15);
        assert!((a.y + 0.2).abs() < 1e-15);
        assert!((a.z - 0.3).abs() < 1e-15);
    }

    #[test]
    fn invalid_bloch_is_rejected() {
        assert!(parse_qubit_state("bloch:0,0,2").is_err());
        assert!(parse_qubit_state("bloch:0,0").is_err());
        assert!(parse_qubit_state("nonsense").is_err());
    }

    #[test]
    fn matrix_descriptor() {
        let rho = parse_qubit_state("matrix:[[[0.5,0],[0,-0.5]],[[0,0.5],[0.5,0]]]").unwrap();
        let a = density_to_bloch(&rho);
        assert!((a.y - 1.0).abs() < 1e-15);
    }

    #[test]
    fn channel_descriptors() {
        assert!(parse_qubit_channel("pauli:0.25,0.25,0.25,0.25").is_ok());
        assert!(parse_qubit_channel("pauli:0.5,0.5,0.5,0.5").is_err());
        assert!(parse_qubit_channel("affine:0,0,0.36;0.8,0.8,0.64").is_ok());
        let kraus = r#"kraus:[[[[1,0],[0,0]],[[0,0],[1,0]]]]"#;
        assert!(parse_qubit_channel(kraus).is_ok());
    }

    #[test]
    fn bosonic_state_descriptors() {
        assert_eq!(parse_bosonic_state("vacuum").unwrap(), BosonicState::Vacuum);
        assert_eq!(
            parse_bosonic_state("coherent:2,0").unwrap(),
            BosonicState::Coherent { q: 2.0, p: 0.0 }
        );
        assert!(parse_bosonic_state("fock:3").is_ok());
        assert!(parse_bosonic_state("fock:x").is_err());
        assert!(parse_bosonic_state("squeezed:0.4,0.9").is_ok());
    }

    #[test]
    fn boson_channel_json() {
        let p = parse_boson_channel_json(r#"{"kind":"covariant","k":0.5,"alpha":0.5}"#).unwrap();
        assert_eq!(p.kind, ChannelKind::Covariant);
        let err =
            parse_boson_channel_json(r#"{"kind":"covariant","k":0.5,"alpha":0.3}"#).unwrap_err();
        assert!(err.to_string().contains("alpha >= |k^2-1|/2"));
    }
}
