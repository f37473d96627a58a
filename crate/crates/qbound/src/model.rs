//! Oracle strings and the approximate-counting problem family.
//!
//! An oracle input is a bit string of length N = 2^n, queried one position at
//! a time. The counting family asks: does the string have weight K, or weight
//! (1+ε)K? An estimate v is an acceptable answer for a string of weight m when
//! it lands in a relative window around m, and the whole family only makes
//! sense when the windows of the two weight classes share no integer — that
//! disjointness is *checked* when an instance is built, never assumed.
//!
//! The window half-width is β = ε/(2+ε), the largest symmetric choice for
//! which the window of K and the window of (1+ε)K can never properly overlap:
//! the real endpoints K(1+β) and (1+ε)K(1−β) then coincide exactly, so the
//! integer windows are disjoint unless that touching point is itself an
//! integer — a genuinely ambiguous (K, ε) combination that [`CountingInstance::build`]
//! rejects as [`Error::ValueOverlap`].

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::ToPrimitive;
use std::fmt;

/// Oracle strings are stored as u64 masks; n ≤ 6 (N ≤ 64 positions) covers
/// every size this workbench can exhaustively enumerate or simulate anyway.
pub const MAX_ORACLE_QUBITS: u32 = 6;

/// An oracle input x ∈ {0,1}^N with N = 2^n, bit i of the mask holding x_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OracleInput {
    n: u32,
    mask: u64,
}

// `len` counts oracle positions, N = 2^n, which is never zero.
#[allow(clippy::len_without_is_empty)]
impl OracleInput {
    pub fn new(n: u32, mask: u64) -> Result<Self> {
        if n > MAX_ORACLE_QUBITS {
            return Err(Error::invalid(format!(
                "n = {n} exceeds the supported maximum of {MAX_ORACLE_QUBITS} oracle qubits"
            )));
        }
        let len = 1u32 << n;
        if len < 64 && mask >> len != 0 {
            return Err(Error::IndexOutOfRange {
                index: 63 - mask.leading_zeros() as usize,
                len: len as usize,
            });
        }
        Ok(OracleInput { n, mask })
    }

    /// Number of index qubits n.
    pub fn qubits(&self) -> u32 {
        self.n
    }

    /// String length N = 2^n.
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// x_i.
    pub fn bit(&self, i: usize) -> bool {
        assert!((i as u64) < self.len(), "position {i} out of range");
        self.mask >> i & 1 == 1
    }

    /// Hamming weight |x|₁.
    pub fn weight(&self) -> u64 {
        self.mask.count_ones() as u64
    }

    /// True when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &OracleInput) -> bool {
        self.mask & !other.mask == 0
    }

    /// Hex encoding, one nibble per four positions, fixed width.
    pub fn hex(&self) -> String {
        let width = (self.len() as usize).div_ceil(4);
        format!("{:0width$x}", self.mask)
    }
}

/// Displays as the full bit string, most significant position first, so
/// `x=0001` means only position 0 is set.
impl fmt::Display for OracleInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.len() as usize;
        write!(f, "{:0width$b}", self.mask)
    }
}

/// All weight-k strings on 2^n positions, in ascending mask order (Gosper's
/// hack). Ascending masks is the deterministic ordering every matrix and
/// relation in this crate indexes by.
pub fn inputs_of_weight(n: u32, k: u64) -> Vec<OracleInput> {
    let len = 1u64 << n;
    if k > len {
        return Vec::new();
    }
    if k == 0 {
        return vec![OracleInput { n, mask: 0 }];
    }
    let mut out = Vec::new();
    // Gosper in u128 so the +carry never wraps at the top of a 64-bit string.
    let mut v: u128 = (1u128 << k) - 1;
    let limit: u128 = if len == 64 { 1 << 64 } else { 1 << len };
    while v < limit {
        out.push(OracleInput { n, mask: v as u64 });
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// Problem parameters for approximate counting: string length N = 2^n and the
/// relative gap ε, kept as an exact rational end to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingSpec {
    n: u32,
    epsilon: Ratio<u64>,
}

// `len` counts oracle positions, N = 2^n, which is never zero.
#[allow(clippy::len_without_is_empty)]
impl CountingSpec {
    pub fn new(n: u32, epsilon: Ratio<u64>) -> Result<Self> {
        if n > MAX_ORACLE_QUBITS {
            return Err(Error::invalid(format!(
                "n = {n} exceeds the supported maximum of {MAX_ORACLE_QUBITS} oracle qubits"
            )));
        }
        if epsilon == Ratio::from_integer(0) {
            return Err(Error::invalid("eps must be positive"));
        }
        Ok(CountingSpec { n, epsilon })
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    /// N = 2^n.
    pub fn len(&self) -> u64 {
        1u64 << self.n
    }

    pub fn epsilon(&self) -> Ratio<u64> {
        self.epsilon
    }

    pub fn epsilon_f64(&self) -> f64 {
        self.epsilon.to_f64().expect("u64 ratio fits f64")
    }

    /// Window half-width β = ε/(2+ε), exact.
    pub fn beta(&self) -> Ratio<u64> {
        self.epsilon / (Ratio::from_integer(2) + self.epsilon)
    }

    /// Is the integer v an acceptable estimate for true weight m? The window
    /// is |v − m| ≤ β·m, closed, except that weight 0 accepts only 0.
    pub fn accepts(&self, m: u64, v: u64) -> bool {
        if m == 0 {
            return v == 0;
        }
        Ratio::from_integer(v.abs_diff(m)) <= self.beta() * Ratio::from_integer(m)
    }

    /// First integer in [0, N] acceptable for both weights, if any.
    pub fn shared_value(&self, m1: u64, m2: u64) -> Option<u64> {
        (0..=self.len()).find(|&v| self.accepts(m1, v) && self.accepts(m2, v))
    }

    /// Do x and y admit no common acceptable estimate? This is what makes a
    /// pair (x, y) worth distinguishing: any algorithm answering both
    /// correctly must tell them apart.
    pub fn values_disjoint(&self, x: &OracleInput, y: &OracleInput) -> bool {
        self.shared_value(x.weight(), y.weight()).is_none()
    }
}

/// A concrete distinguishing task: all weight-K strings versus all
/// weight-(1+ε)K strings, with verified-disjoint answer windows.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingInstance {
    pub spec: CountingSpec,
    pub k: u64,
    pub xs: Vec<OracleInput>,
    pub ys: Vec<OracleInput>,
}

impl CountingInstance {
    pub fn build(spec: CountingSpec, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("K must be at least 1"));
        }
        let ek = spec.epsilon * Ratio::from_integer(k);
        if !ek.is_integer() || ek == Ratio::from_integer(0) {
            return Err(Error::NonIntegerParameters {
                value: ek.to_string(),
            });
        }
        let high = k + ek.to_integer();
        if high > spec.len() {
            return Err(Error::Overflow {
                value: high,
                n: spec.len(),
            });
        }
        // Every x has weight K and every y weight (1+ε)K, so checking the two
        // weight classes once verifies disjointness for all |X|·|Y| pairs.
        if let Some(shared) = spec.shared_value(k, high) {
            return Err(Error::ValueOverlap {
                low: k,
                high,
                shared,
            });
        }
        Ok(CountingInstance {
            spec,
            k,
            xs: inputs_of_weight(spec.qubits(), k),
            ys: inputs_of_weight(spec.qubits(), high),
        })
    }

    /// The heavier weight (1+ε)K.
    pub fn high_weight(&self) -> u64 {
        self.k + (self.spec.epsilon() * Ratio::from_integer(self.k)).to_integer()
    }

    /// Flat text record of the instance; inputs hex-encoded in table order.
    pub fn text_record(&self) -> String {
        let join = |v: &[OracleInput]| v.iter().map(|x| x.hex()).collect::<Vec<_>>().join(",");
        format!(
            "n={}\nK={}\neps={}\nX={}\nY={}\n",
            self.spec.qubits(),
            self.k,
            self.spec.epsilon(),
            join(&self.xs),
            join(&self.ys),
        )
    }
}

/// Every buildable instance on strings of length 2^n, swept as K = 1, 2, …
/// and εK = 1, 2, … with K + εK ≤ N, keeping only parameter pairs whose
/// answer windows are disjoint. Ordered by (K, εK) ascending.
pub fn valid_counting_instances(n: u32) -> Vec<CountingInstance> {
    let len = 1u64 << n;
    let mut out = Vec::new();
    for k in 1..len {
        for ek in 1..=(len - k) {
            let spec = match CountingSpec::new(n, Ratio::new(ek, k)) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if let Ok(inst) = CountingInstance::build(spec, k) {
                out.push(inst);
            }
        }
    }
    out
}
