use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::{harmonic, PlanePoint, Sector, SpinIndex};
use crate::error::{Error, Result};
use crate::quadrature::PlaneFunction;

/// Coefficients `c_jm` for labels of one sector with `j <= j_max`.
///
/// Labels never set read as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientBlock {
    sector: Sector,
    two_j_max: u32,
    coeffs: BTreeMap<SpinIndex, Complex64>,
}

impl CoefficientBlock {
    pub fn new(sector: Sector, two_j_max: u32) -> Self {
        CoefficientBlock { sector, two_j_max, coeffs: BTreeMap::new() }
    }

    /// Uniform random real and imaginary parts in `[-1, 1]` for every label.
    pub fn random(sector: Sector, two_j_max: u32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut block = Self::new(sector, two_j_max);
        for s in sector.labels(two_j_max) {
            let c = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            block.coeffs.insert(s, c);
        }
        block
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn two_j_max(&self) -> u32 {
        self.two_j_max
    }

    fn check_label(&self, s: SpinIndex) -> Result<()> {
        if s.sector() != self.sector {
            return Err(Error::SectorMismatch(format!("{s} does not belong to the {:?} sector", self.sector)));
        }
        if s.two_j() > self.two_j_max {
            return Err(Error::Domain(format!("{s} exceeds 2j_max = {}", self.two_j_max)));
        }
        Ok(())
    }

    pub fn set(&mut self, s: SpinIndex, c: Complex64) -> Result<()> {
        self.check_label(s)?;
        self.coeffs.insert(s, c);
        Ok(())
    }

    pub fn get(&self, s: SpinIndex) -> Complex64 {
        self.coeffs.get(&s).copied().unwrap_or_default()
    }

    pub fn contains(&self, s: SpinIndex) -> bool {
        self.coeffs.contains_key(&s)
    }

    /// Stored entries sorted by `(2j, 2m)`.
    pub fn iter(&self) -> impl Iterator<Item = (SpinIndex, Complex64)> + '_ {
        self.coeffs.iter().map(|(s, c)| (*s, *c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// `sum_m |c_jm|^2` for every `2j` of the sector up to `j_max`.
    pub fn multiplet_norms(&self) -> BTreeMap<u32, f64> {
        let mut out: BTreeMap<u32, f64> = (0..=self.two_j_max)
            .filter(|tj| tj % 2 == self.sector.parity())
            .map(|tj| (tj, 0.0))
            .collect();
        for (s, c) in &self.coeffs {
            *out.entry(s.two_j()).or_default() += c.norm_sqr();
        }
        out
    }

    /// Largest coefficient difference over the union of both label sets.
    pub fn max_abs_diff(&self, other: &CoefficientBlock) -> f64 {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|s| (self.get(*s) - other.get(*s)).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.values_mut().for_each(|c| *c *= factor);
        out
    }

    pub fn to_json(&self) -> BlockJson {
        BlockJson {
            sector: match self.sector {
                Sector::Integer => "int".into(),
                Sector::HalfInteger => "half".into(),
            },
            j_max: if self.two_j_max.is_multiple_of(2) {
                format!("{}", self.two_j_max / 2)
            } else {
                format!("{}/2", self.two_j_max)
            },
            coeffs: self
                .iter()
                .map(|(s, c)| CoeffJson { two_j: s.two_j() as i64, two_m: s.two_m() as i64, re: c.re, im: c.im })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data serializes")
    }

    pub fn from_json(raw: &BlockJson) -> Result<Self> {
        let sector = match raw.sector.as_str() {
            "int" => Sector::Integer,
            "half" => Sector::HalfInteger,
            other => return Err(Error::Schema(format!("sector must be \"int\" or \"half\", got {other:?}"))),
        };
        let two_j_max = parse_half(&raw.j_max)?;
        let mut block = Self::new(sector, two_j_max);
        for (k, e) in raw.coeffs.iter().enumerate() {
            let s = SpinIndex::new(e.two_j, e.two_m)
                .map_err(|err| Error::Schema(format!("coeffs[{k}]: {err}")))?;
            block.check_label(s).map_err(|err| Error::Schema(format!("coeffs[{k}]: {err}")))?;
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::Schema(format!("coeffs[{k}]: non-finite value")));
            }
            if block.coeffs.insert(s, Complex64::new(e.re, e.im)).is_some() {
                return Err(Error::Schema(format!("coeffs[{k}]: duplicate entry for {s}")));
            }
        }
        Ok(block)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: BlockJson = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_json(&raw)
    }

    /// Stores `c` for every label in `labels`, keeping entries that were
    /// present before or are non-zero now.
    pub(crate) fn replace_multiplet(&mut self, labels: &[SpinIndex], values: &[Complex64]) {
        for (s, c) in labels.iter().zip(values) {
            if self.coeffs.contains_key(s) || *c != Complex64::default() {
                self.coeffs.insert(*s, *c);
            }
        }
    }
}

/// `"3"`, `"7/2"` or `"3.5"` as a doubled integer.
fn parse_half(text: &str) -> Result<u32> {
    let bad = || Error::Schema(format!("j_max must be a non-negative integer or half-integer, got {text:?}"));
    let doubled = if let Some(num) = text.strip_suffix("/2") {
        num.trim().parse::<u32>().map_err(|_| bad())?
    } else {
        let v: f64 = text.trim().parse().map_err(|_| bad())?;
        let d = 2.0 * v;
        if !(d.is_finite() && d >= 0.0 && d.fract() == 0.0 && d <= u32::MAX as f64) {
            return Err(bad());
        }
        d as u32
    };
    Ok(doubled)
}

/// Serialized form of a [`CoefficientBlock`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockJson {
    pub sector: String,
    pub j_max: String,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffJson {
    pub two_j: i64,
    pub two_m: i64,
    pub re: f64,
    pub im: f64,
}

impl PlaneFunction for CoefficientBlock {
    fn sector(&self) -> Sector {
        self.sector
    }

    fn value(&self, p: PlanePoint) -> Complex64 {
        self.iter()
            .map(|(s, c)| c * harmonic(s, p).expect("valid plane point"))
            .sum()
    }

    fn j_bound(&self) -> Option<f64> {
        Some(self.two_j_max as f64 / 2.0)
    }

    fn modes(&self) -> Option<Vec<i32>> {
        let mut m: Vec<i32> = self.coeffs.keys().map(|s| s.two_m()).collect();
        m.sort_unstable();
        m.dedup();
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let block = CoefficientBlock::random(Sector::HalfInteger, 5, 3);
        let text = block.to_json_string();
        assert!(text.contains("\"j_max\": \"5/2\""));
        assert_eq!(CoefficientBlock::from_json_str(&text).unwrap(), block);
    }

    #[test]
    fn schema_violations_are_named() {
        let cases = [
            r#"{"sector":"odd","j_max":"1","coeffs":[]}"#,
            r#"{"sector":"int","j_max":"x","coeffs":[]}"#,
            r#"{"sector":"int","j_max":"1","coeffs":[{"two_j":1,"two_m":1,"re":0,"im":0}]}"#,
            r#"{"sector":"int","j_max":"1","coeffs":[{"two_j":4,"two_m":0,"re":0,"im":0}]}"#,
            r#"{"sector":"int","j_max":"1","coeffs":[{"two_j":2,"two_m":0,"re":0,"im":0},{"two_j":2,"two_m":0,"re":1,"im":0}]}"#,
            r#"{"sector":"int","j_max":"1"}"#,
            r#"{"sector":"int","j_max":"1","coeffs":[],"extra":1}"#,
        ];
        for text in cases {
            assert!(matches!(CoefficientBlock::from_json_str(text), Err(Error::Schema(_))), "{text}");
        }
    }

    #[test]
    fn j_max_spellings() {
        assert_eq!(parse_half("3").unwrap(), 6);
        assert_eq!(parse_half("7/2").unwrap(), 7);
        assert_eq!(parse_half("3.5").unwrap(), 7);
        assert!(parse_half("-1").is_err());
        assert!(parse_half("1.25").is_err());
    }

    #[test]
    fn random_blocks_are_reproducible() {
        assert_eq!(CoefficientBlock::random(Sector::Integer, 4, 9), CoefficientBlock::random(Sector::Integer, 4, 9));
        assert_ne!(CoefficientBlock::random(Sector::Integer, 4, 9), CoefficientBlock::random(Sector::Integer, 4, 10));
    }
}
