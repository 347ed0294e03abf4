//! Named presets bundling a root system, a Frobenius action, an isogeny
//! tag, and a residue characteristic.

use crate::error::EngineError;
use crate::roots::CartanLabel;
use serde::{Deserialize, Serialize};

/// Residue characteristic tag. Only 2 and 3 influence anything (the
/// quasi-closed exceptional families); everything else behaves like zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharTag {
    Zero,
    Two,
    Three,
    GenericP,
}

impl CharTag {
    pub fn parse(s: &str) -> Result<Self, EngineError> {
        match s.trim() {
            "0" | "zero" => Ok(CharTag::Zero),
            "2" => Ok(CharTag::Two),
            "3" => Ok(CharTag::Three),
            "p" | "generic" => Ok(CharTag::GenericP),
            other => Err(EngineError::InvalidConfig(format!(
                "unknown characteristic tag: {other}"
            ))),
        }
    }

    /// Numeric tag used by the quasi-closed table (0 = no exception).
    pub fn as_u32(self) -> u32 {
        match self {
            CharTag::Two => 2,
            CharTag::Three => 3,
            CharTag::Zero | CharTag::GenericP => 0,
        }
    }
}

impl std::fmt::Display for CharTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharTag::Zero => write!(f, "0"),
            CharTag::Two => write!(f, "2"),
            CharTag::Three => write!(f, "3"),
            CharTag::GenericP => write!(f, "p"),
        }
    }
}

/// How the Frobenius acts on the extended diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrPreset {
    /// Identity node permutation.
    Split,
    /// Swap the two finite nodes of A2, fix the affine node.
    SwapA2,
    /// Rotate the affine A_{n-1} cycle by one step.
    Rotate,
    /// Explicit node permutation (config-defined groups).
    Explicit(Vec<usize>),
}

/// A named group datum.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub label: CartanLabel,
    pub frobenius: FrPreset,
    pub simply_connected: bool,
    pub residue_char: CharTag,
}

impl GroupSpec {
    pub fn node_perm(&self) -> Vec<usize> {
        let n = self.label.rank() + 1;
        match &self.frobenius {
            FrPreset::Split => (0..n).collect(),
            FrPreset::SwapA2 => vec![0, 2, 1],
            FrPreset::Rotate => (0..n).map(|i| (i + 1) % n).collect(),
            FrPreset::Explicit(p) => p.clone(),
        }
    }

    pub fn with_char(mut self, c: CharTag) -> Self {
        self.residue_char = c;
        self
    }
}

/// Look up a shipped preset by name.
pub fn preset(name: &str) -> Result<GroupSpec, EngineError> {
    let trimmed = name.trim();
    let canon = trimmed.to_ascii_uppercase().replace(['(', ')'], "");
    let spec = |label, frobenius| GroupSpec {
        name: trimmed.to_string(),
        label,
        frobenius,
        simply_connected: true,
        residue_char: CharTag::Zero,
    };
    match canon.as_str() {
        "SP4" => Ok(spec(CartanLabel::C2, FrPreset::Split)),
        "G2" => Ok(spec(CartanLabel::G2, FrPreset::Split)),
        "SU3Q" | "SU3" => Ok(spec(CartanLabel::A(2), FrPreset::SwapA2)),
        "A1" => Ok(spec(CartanLabel::A(1), FrPreset::Split)),
        _ => {
            if let Some(rest) = canon.strip_prefix("SL1D") {
                let n: usize = rest
                    .parse()
                    .map_err(|_| EngineError::UnknownPreset(name.to_string()))?;
                if (2..=8).contains(&n) {
                    return Ok(spec(CartanLabel::A(n - 1), FrPreset::Rotate));
                }
                return Err(EngineError::UnknownPreset(name.to_string()));
            }
            if let Some(rest) = canon.strip_prefix("SL") {
                let n: usize = rest
                    .parse()
                    .map_err(|_| EngineError::UnknownPreset(name.to_string()))?;
                if (2..=8).contains(&n) {
                    return Ok(spec(CartanLabel::A(n - 1), FrPreset::Split));
                }
            }
            Err(EngineError::UnknownPreset(name.to_string()))
        }
    }
}

pub const PRESET_NAMES: &[&str] = &[
    "Sp4", "G2", "SU3q", "A1", "SL2", "SL3", "SL4", "SL5", "SL6", "SL7", "SL8", "SL1D2", "SL1D3",
    "SL1D4", "SL1D5", "SL1D6", "SL1D7", "SL1D8",
];

/// Parse a key=value config describing a custom group.
///
/// Recognized keys: `cartan` (label), `node_perm` (comma-separated images
/// of the extended nodes), `char`, `name`, `simply_connected`.
pub fn parse_config(text: &str) -> Result<GroupSpec, EngineError> {
    let mut label: Option<CartanLabel> = None;
    let mut node_perm: Option<Vec<usize>> = None;
    let mut char_tag = CharTag::Zero;
    let mut name = String::from("custom");
    let mut simply_connected = true;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            EngineError::InvalidConfig(format!("line {}: expected key=value", lineno + 1))
        })?;
        match key.trim() {
            "cartan" => label = Some(CartanLabel::parse(value)?),
            "node_perm" => {
                let perm: Result<Vec<usize>, _> = value
                    .split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect();
                node_perm = Some(perm.map_err(|_| {
                    EngineError::InvalidConfig("node_perm: expected integers".into())
                })?);
            }
            "char" => char_tag = CharTag::parse(value)?,
            "name" => name = value.trim().to_string(),
            "simply_connected" => {
                simply_connected = value.trim().parse().map_err(|_| {
                    EngineError::InvalidConfig("simply_connected: expected bool".into())
                })?;
            }
            other => {
                return Err(EngineError::InvalidConfig(format!(
                    "unknown key: {other}"
                )))
            }
        }
    }
    let label = label.ok_or_else(|| EngineError::InvalidConfig("missing cartan=".into()))?;
    let frobenius = match node_perm {
        None => FrPreset::Split,
        Some(p) => FrPreset::Explicit(p),
    };
    Ok(GroupSpec {
        name,
        label,
        frobenius,
        simply_connected,
        residue_char: char_tag,
    })
}
