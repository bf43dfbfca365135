//! Symbolic classification of rank-2 inertial classes into block descriptors:
//! which algebra (one-variable Laurent, two-variable Laurent, or the rank-2
//! extended-Weyl group algebra) represents each block, plus segments with
//! their precedence relation, ordered compositions, and tensor descriptors
//! assembled from caller-supplied torsion numbers.
//!
//! Supercuspidal data and ramified character parts are opaque string labels:
//! everything here depends on them only through equality.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::scalars::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BernsteinError {
    #[error("partition and torsion lists have different lengths: {parts} vs {torsion}")]
    LengthMismatch { parts: usize, torsion: usize },
    #[error("invalid parameter: {0}")]
    ParameterRange(String),
    #[error("invalid descriptor JSON: {0}")]
    Decode(String),
}

/// A character of the multiplicative group, recorded as an opaque ramified
/// part plus a rational twist exponent z (a twist by the z-th power of the
/// absolute value).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasicharacter {
    pub ramified_label: String,
    pub twist: Rational,
}

impl Quasicharacter {
    pub fn new(ramified_label: impl Into<String>, twist: Rational) -> Self {
        Quasicharacter {
            ramified_label: ramified_label.into(),
            twist,
        }
    }

    pub fn with_twist(label: impl Into<String>, numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "twist denominator must be nonzero");
        Quasicharacter::new(label, Rational::new(numer.into(), denom.into()))
    }

    /// The twist-free representative of the character's equivalence class.
    pub fn unramified_part_dropped(&self) -> &str {
        &self.ramified_label
    }
}

/// Two characters are equivalent exactly when they differ by an unramified
/// twist, i.e. when their ramified labels agree; twists are ignored.
pub fn inertially_equivalent(a: &Quasicharacter, b: &Quasicharacter) -> bool {
    a.ramified_label == b.ramified_label
}

/// A chain {sigma, sigma|.|, .., sigma|.|^{length-1}} of consecutive twists
/// of one opaque label, recorded by its start exponent and length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub label: String,
    pub start: i64,
    pub length: u64,
}

impl Segment {
    pub fn new(label: impl Into<String>, start: i64, length: u64) -> Self {
        assert!(length >= 1, "segments have length at least 1");
        Segment {
            label: label.into(),
            start,
            length,
        }
    }

    /// Half-open exponent range [start, start + length).
    fn range(&self) -> (i64, i64) {
        (self.start, self.start + self.length as i64)
    }

    fn contains_range(&self, other: &Segment) -> bool {
        let (s, e) = self.range();
        let (os, oe) = other.range();
        s <= os && oe <= e
    }
}

/// `a` precedes `b` when they share a label, neither contains the other,
/// their exponent ranges meet or touch (so the union is one contiguous
/// range), and `a` starts strictly later than `b`.
pub fn precedes(a: &Segment, b: &Segment) -> bool {
    if a.label != b.label {
        return false;
    }
    if a.contains_range(b) || b.contains_range(a) {
        return false;
    }
    let (sa, ea) = a.range();
    let (sb, eb) = b.range();
    let contiguous_union = sa.max(sb) <= ea.min(eb);
    contiguous_union && sa > sb
}

/// A rank-2 inertial class: either a single opaque supercuspidal label or a
/// pair of torus characters. Torus pairs compare equal modulo swapping the
/// two characters and modulo unramified twists of either.
#[derive(Debug, Clone, Eq)]
pub enum InertialClassGL2 {
    Supercuspidal {
        label: String,
    },
    Torus {
        chi1: Quasicharacter,
        chi2: Quasicharacter,
    },
}

impl PartialEq for InertialClassGL2 {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                InertialClassGL2::Supercuspidal { label: a },
                InertialClassGL2::Supercuspidal { label: b },
            ) => a == b,
            (
                InertialClassGL2::Torus { chi1: a1, chi2: a2 },
                InertialClassGL2::Torus { chi1: b1, chi2: b2 },
            ) => {
                let mut lhs = [&a1.ramified_label, &a2.ramified_label];
                let mut rhs = [&b1.ramified_label, &b2.ramified_label];
                lhs.sort();
                rhs.sort();
                lhs == rhs
            }
            _ => false,
        }
    }
}

/// One factor of a tensor descriptor: a rank-`n` algebra at parameter `q^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorFactor {
    pub n: u64,
    pub q: u64,
    pub k: u64,
}

/// The Morita-representative algebra of a block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockDescriptor {
    /// One-variable Laurent algebra.
    LaurentOneVar,
    /// Two-variable Laurent algebra.
    LaurentTwoVar,
    /// Group algebra of the rank-`rank` extended affine Weyl group.
    ExtWeylGroupAlgebra { rank: u32 },
    /// Tensor product of affine pieces with explicit parameters.
    Tensor { factors: Vec<TensorFactor> },
}

impl BlockDescriptor {
    fn block_tag(&self) -> String {
        match self {
            BlockDescriptor::LaurentOneVar => "laurent1".to_owned(),
            BlockDescriptor::LaurentTwoVar => "laurent2".to_owned(),
            BlockDescriptor::ExtWeylGroupAlgebra { rank } => format!("extweyl{rank}"),
            BlockDescriptor::Tensor { .. } => "tensor".to_owned(),
        }
    }

    fn factor_list(&self) -> Vec<TensorFactor> {
        match self {
            BlockDescriptor::Tensor { factors } => factors.clone(),
            _ => Vec::new(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("descriptor serialization is infallible")
    }
}

impl Serialize for BlockDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlockDescriptor", 2)?;
        st.serialize_field("block", &self.block_tag())?;
        st.serialize_field("factors", &self.factor_list())?;
        st.end()
    }
}

/// Sort a rank-2 inertial class into its representative algebra.
pub fn classify(c: &InertialClassGL2) -> BlockDescriptor {
    match c {
        InertialClassGL2::Supercuspidal { .. } => BlockDescriptor::LaurentOneVar,
        InertialClassGL2::Torus { chi1, chi2 } => {
            if inertially_equivalent(chi1, chi2) {
                BlockDescriptor::ExtWeylGroupAlgebra { rank: 2 }
            } else {
                BlockDescriptor::LaurentTwoVar
            }
        }
    }
}

/// All ordered tuples of positive integers summing to `n`, in lexicographic
/// order; there are exactly `2^(n-1)` of them.
pub fn compositions(n: u64) -> Vec<Vec<u64>> {
    assert!(n >= 1, "compositions are defined for n >= 1");
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn extend(remaining: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=remaining {
            prefix.push(first);
            extend(remaining - first, prefix, out);
            prefix.pop();
        }
    }
    extend(n, &mut prefix, &mut out);
    out
}

/// A tensor descriptor together with the parameter-range note carried into
/// emitted records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntertwiningRecord {
    pub descriptor: BlockDescriptor,
    /// Why the excluded parameter value can never occur here.
    pub parameter_note: String,
}

/// Package a composition and its torsion numbers into a tensor descriptor
/// with factor parameters `q^(k_i)`. Since `q >= 2` and every `k_i >= 1`,
/// each factor parameter is at least 2 — in particular never -1, which the
/// emitted record states explicitly.
pub fn intertwining_descriptor(
    partition: &[u64],
    torsion: &[u64],
    q: u64,
) -> Result<IntertwiningRecord, BernsteinError> {
    if partition.len() != torsion.len() {
        return Err(BernsteinError::LengthMismatch {
            parts: partition.len(),
            torsion: torsion.len(),
        });
    }
    if q < 2 {
        return Err(BernsteinError::ParameterRange(format!(
            "residue size q must be at least 2, got {q}"
        )));
    }
    if let Some(bad) = partition.iter().find(|&&n| n == 0) {
        return Err(BernsteinError::ParameterRange(format!(
            "partition entries must be positive, got {bad}"
        )));
    }
    if let Some(bad) = torsion.iter().find(|&&k| k == 0) {
        return Err(BernsteinError::ParameterRange(format!(
            "torsion numbers must be positive, got {bad}"
        )));
    }
    let factors = partition
        .iter()
        .zip(torsion)
        .map(|(&n, &k)| TensorFactor { n, q, k })
        .collect();
    Ok(IntertwiningRecord {
        descriptor: BlockDescriptor::Tensor { factors },
        parameter_note: format!(
            "every factor parameter q^k with q = {q} >= 2 and k >= 1 is at least 2, \
             so q^k never equals -1"
        ),
    })
}

/// One family of blocks in the rank-2 decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockFamily {
    pub family: String,
    pub descriptor: BlockDescriptor,
    pub cardinality: String,
}

/// The full decomposition shape: a countably indexed direct sum whose
/// summands are drawn from exactly three block families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoritaDecomposition {
    pub families: Vec<BlockFamily>,
    pub index_note: String,
    pub field_independence: String,
}

/// The canonical rank-2 decomposition description. Takes no field data at
/// all: the shape is the same over every residue field size.
pub fn morita_decomposition_gl2() -> MoritaDecomposition {
    MoritaDecomposition {
        families: vec![
            BlockFamily {
                family: "supercuspidal".to_owned(),
                descriptor: BlockDescriptor::LaurentOneVar,
                cardinality: "uncountably many classes up to unramified twist; \
                              the enclosing sum is countably indexed and the two \
                              counts are recorded without reconciliation"
                    .to_owned(),
            },
            BlockFamily {
                family: "torus-inequivalent".to_owned(),
                descriptor: BlockDescriptor::LaurentTwoVar,
                cardinality: "countably infinite family".to_owned(),
            },
            BlockFamily {
                family: "torus-equivalent".to_owned(),
                descriptor: BlockDescriptor::ExtWeylGroupAlgebra { rank: 2 },
                cardinality: "countably infinite family, indexed by smooth characters \
                              of the integral unit group"
                    .to_owned(),
            },
        ],
        index_note: "countably indexed direct sum of blocks drawn from the three \
                     families; per-index multiplicity structure is not asserted"
            .to_owned(),
        field_independence: "the decomposition shape does not depend on the residue \
                             field size"
            .to_owned(),
    }
}

// ---------------------------------------------------------------------------
// JSON wire formats
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct QuasicharacterWire {
    label: String,
    twist: [i64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
enum InertialClassWire {
    Supercuspidal {
        label: String,
    },
    Torus {
        chi1: QuasicharacterWire,
        chi2: QuasicharacterWire,
    },
}

fn wire_to_character(w: &QuasicharacterWire) -> Result<Quasicharacter, BernsteinError> {
    let [n, d] = w.twist;
    if d == 0 {
        return Err(BernsteinError::Decode(
            "twist denominator must be nonzero".to_owned(),
        ));
    }
    Ok(Quasicharacter::new(
        w.label.clone(),
        Rational::new(n.into(), d.into()),
    ))
}

fn character_to_wire(c: &Quasicharacter) -> Result<QuasicharacterWire, BernsteinError> {
    let to_i64 = |x: &num_bigint::BigInt| -> Result<i64, BernsteinError> {
        i64::try_from(x.clone())
            .map_err(|_| BernsteinError::Decode("twist exponent exceeds the wire range".into()))
    };
    Ok(QuasicharacterWire {
        label: c.ramified_label.clone(),
        twist: [to_i64(c.twist.numer())?, to_i64(c.twist.denom())?],
    })
}

impl InertialClassGL2 {
    pub fn from_json_str(input: &str) -> Result<Self, BernsteinError> {
        let wire: InertialClassWire =
            serde_json::from_str(input).map_err(|e| BernsteinError::Decode(e.to_string()))?;
        match wire {
            InertialClassWire::Supercuspidal { label } => {
                Ok(InertialClassGL2::Supercuspidal { label })
            }
            InertialClassWire::Torus { chi1, chi2 } => Ok(InertialClassGL2::Torus {
                chi1: wire_to_character(&chi1)?,
                chi2: wire_to_character(&chi2)?,
            }),
        }
    }

    pub fn to_json_string(&self) -> Result<String, BernsteinError> {
        let wire = match self {
            InertialClassGL2::Supercuspidal { label } => InertialClassWire::Supercuspidal {
                label: label.clone(),
            },
            InertialClassGL2::Torus { chi1, chi2 } => InertialClassWire::Torus {
                chi1: character_to_wire(chi1)?,
                chi2: character_to_wire(chi2)?,
            },
        };
        serde_json::to_string(&wire).map_err(|e| BernsteinError::Decode(e.to_string()))
    }
}
