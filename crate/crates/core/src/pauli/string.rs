use std::fmt;

use serde::{Deserialize, Serialize};

use super::PauliError;

/// Largest supported string length. Gate diagrams use two levels per qubit,
/// so this caps state registers at 63 qubits.
pub const MAX_QUBITS: u32 = 127;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    pub const ALL: [PauliOp; 4] = [PauliOp::I, PauliOp::X, PauliOp::Y, PauliOp::Z];

    /// The (x, z) bit pair.
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliOp::I => (false, false),
            PauliOp::X => (true, false),
            PauliOp::Y => (true, true),
            PauliOp::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliOp::I,
            (true, false) => PauliOp::X,
            (true, true) => PauliOp::Y,
            (false, true) => PauliOp::Z,
        }
    }

    pub fn is_diagonal(self) -> bool {
        !self.bits().0
    }

    pub fn symbol(self) -> char {
        match self {
            PauliOp::I => 'I',
            PauliOp::X => 'X',
            PauliOp::Y => 'Y',
            PauliOp::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliOp::I),
            'X' => Some(PauliOp::X),
            'Y' => Some(PauliOp::Y),
            'Z' => Some(PauliOp::Z),
            _ => None,
        }
    }
}

/// A Pauli string without scalar. Bit `j` of `x`/`z` describes qubit `j + 1`,
/// so qubit `n` sits in the most significant used bit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliString {
    n: u32,
    x: u128,
    z: u128,
}

#[inline]
pub(crate) fn mask(n: u32) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n: u32) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits supported");
        Self { n, x: 0, z: 0 }
    }

    pub fn from_bits(n: u32, x: u128, z: u128) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits supported");
        let m = mask(n);
        Self { n, x: x & m, z: z & m }
    }

    /// `ops[0]` is the top qubit (qubit n).
    pub fn from_ops(ops: &[PauliOp]) -> Self {
        let n = ops.len() as u32;
        let mut s = Self::identity(n);
        for (i, op) in ops.iter().enumerate() {
            s.set(n - i as u32, *op);
        }
        s
    }

    /// Single-qubit operator `op` on qubit `q` (1-based), identity elsewhere.
    pub fn single(n: u32, q: u32, op: PauliOp) -> Self {
        let mut s = Self::identity(n);
        s.set(q, op);
        s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn x_bits(&self) -> u128 {
        self.x
    }

    pub fn z_bits(&self) -> u128 {
        self.z
    }

    pub fn get(&self, q: u32) -> PauliOp {
        debug_assert!(q >= 1 && q <= self.n);
        let b = 1u128 << (q - 1);
        PauliOp::from_bits(self.x & b != 0, self.z & b != 0)
    }

    pub fn set(&mut self, q: u32, op: PauliOp) {
        assert!(q >= 1 && q <= self.n, "qubit {q} out of range 1..={}", self.n);
        let b = 1u128 << (q - 1);
        let (x, z) = op.bits();
        self.x = if x { self.x | b } else { self.x & !b };
        self.z = if z { self.z | b } else { self.z & !b };
    }

    pub fn ops(&self) -> Vec<PauliOp> {
        (1..=self.n).rev().map(|q| self.get(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// Exponent `e` such that `self · other = i^e · (self XOR other)`.
    pub(crate) fn mul_phase_exponent(&self, other: &Self) -> u32 {
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        let y1 = x1 & z1;
        let xo1 = x1 & !z1;
        let zo1 = !x1 & z1;
        let y2 = x2 & z2;
        let xo2 = x2 & !z2;
        let zo2 = !x2 & z2;
        let plus = (y1 & zo2) | (xo1 & y2) | (zo1 & xo2);
        let minus = (y1 & xo2) | (xo1 & zo2) | (zo1 & y2);
        (plus.count_ones() + 3 * minus.count_ones()) % 4
    }

    pub(crate) fn xor(&self, other: &Self) -> Self {
        Self { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z }
    }

    pub fn check_len(&self, other: &Self) -> Result<(), PauliError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PauliError::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    /// Column `col` of the check vector `(x_n..x_1 | z_n..z_1)`.
    pub fn check_bit(&self, col: u32) -> bool {
        let n = self.n;
        if col < n {
            self.x >> (n - 1 - col) & 1 == 1
        } else {
            self.z >> (2 * n - 1 - col) & 1 == 1
        }
    }

    /// First set column of the check vector, if any.
    pub fn pivot(&self) -> Option<u32> {
        if self.x != 0 {
            Some(self.n - 1 - (127 - self.x.leading_zeros()))
        } else if self.z != 0 {
            Some(self.n + self.n - 1 - (127 - self.z.leading_zeros()))
        } else {
            None
        }
    }

    /// Order of the check vectors read left to right.
    pub fn check_cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.x, self.z).cmp(&(other.x, other.z))
    }

    /// Top operator and the remaining `n - 1` qubits.
    pub fn split_top(&self) -> (PauliOp, PauliString) {
        assert!(self.n >= 1);
        let top = self.get(self.n);
        (top, PauliString::from_bits(self.n - 1, self.x, self.z))
    }

    /// `top ⊗ rest`.
    pub fn with_top(top: PauliOp, rest: &PauliString) -> Self {
        let n = rest.n + 1;
        let mut s = PauliString::from_bits(n, rest.x, rest.z);
        s.set(n, top);
        s
    }

    /// `self ⊗ lower`, with `self` on the upper qubits.
    pub fn kron(&self, lower: &PauliString) -> Self {
        let m = lower.n;
        PauliString::from_bits(self.n + m, self.x << m | lower.x, self.z << m | lower.z)
    }

    /// Qubits `lo..=hi` (1-based) as a string of length `hi - lo + 1`.
    pub fn slice(&self, lo: u32, hi: u32) -> Self {
        assert!(lo >= 1 && hi <= self.n && lo <= hi + 1);
        let len = hi + 1 - lo;
        PauliString::from_bits(len, self.x >> (lo - 1), self.z >> (lo - 1))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return write!(f, "()");
        }
        for q in (1..=self.n).rev() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}
