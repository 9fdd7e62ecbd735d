//! Polar encoding and the CRC outer code.
//!
//! Encoding realizes `x = u · B_N · F^{⊗n}` over GF(2) as an index
//! bit-reversal followed by log2(N) in-place butterfly stages — never as a
//! dense matrix multiply. The CRC is computed at bit granularity (the code
//! operates on bit vectors, not bytes) by polynomial long division.
//!
//! Bits are `u8` values restricted to {0, 1} throughout.

use crate::construction::{bit_reversal_permutation, CodeSpec};
use crate::error::{PolarError, Result};

/// A cyclic redundancy check at bit granularity.
///
/// `polynomial` holds the generator's coefficients below the implicit
/// leading term; `0x8005` with `width = 16` is `x^16 + x^15 + x^2 + 1`.
///
/// `reflect` emits the remainder LSB-first (output reflection). A bit-stream
/// CRC has no byte boundaries, so input reflection does not arise; all
/// decoders here use the plain MSB-first convention (`reflect = false`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrcSpec {
    width: usize,
    polynomial: u64,
    init_register: u64,
    reflect: bool,
    final_xor: u64,
}

impl CrcSpec {
    /// CRC with the given width and polynomial, MSB-first, zero initial
    /// register, no reflection, zero final XOR.
    pub fn new(width: usize, polynomial: u64) -> Result<Self> {
        Self::with_params(width, polynomial, 0, false, 0)
    }

    /// Fully parameterized constructor.
    pub fn with_params(
        width: usize,
        polynomial: u64,
        init_register: u64,
        reflect: bool,
        final_xor: u64,
    ) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(PolarError::CrcWidth(width));
        }
        let mask = Self::mask_for(width);
        if polynomial & !mask != 0 {
            return Err(PolarError::CrcPolynomial {
                poly: polynomial,
                width,
            });
        }
        Ok(Self {
            width,
            polynomial,
            init_register: init_register & mask,
            reflect,
            final_xor: final_xor & mask,
        })
    }

    /// The 16-bit CRC `g(x) = x^16 + x^15 + x^2 + 1` used by the CRC-aided
    /// decoders (polynomial `0x8005`).
    pub fn crc16() -> Self {
        Self::new(16, 0x8005).expect("static parameters are valid")
    }

    /// CRC width in bits.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Generator polynomial below the leading term.
    pub fn polynomial(&self) -> u64 {
        self.polynomial
    }

    fn mask_for(width: usize) -> u64 {
        if width == 64 {
            u64::MAX
        } else {
            (1u64 << width) - 1
        }
    }

    /// Remainder of `bits · x^width` modulo the generator, as `width` bits
    /// MSB-first (LSB-first when `reflect` is set), after `final_xor`.
    pub fn checksum(&self, bits: &[u8]) -> Result<Vec<u8>> {
        let mask = Self::mask_for(self.width);
        let top = 1u64 << (self.width - 1);
        let mut reg = self.init_register;
        for (pos, &bit) in bits.iter().enumerate() {
            if bit > 1 {
                return Err(PolarError::NonBinary { value: bit, pos });
            }
            let feedback = ((reg & top) != 0) ^ (bit == 1);
            reg = (reg << 1) & mask;
            if feedback {
                reg ^= self.polynomial;
            }
        }
        reg ^= self.final_xor;
        let mut out = Vec::with_capacity(self.width);
        for j in 0..self.width {
            let shift = if self.reflect {
                j
            } else {
                self.width - 1 - j
            };
            out.push(((reg >> shift) & 1) as u8);
        }
        Ok(out)
    }
}

/// Appends the CRC remainder to a non-empty payload: `payload ‖ remainder`.
pub fn crc_append(payload: &[u8], crc: &CrcSpec) -> Result<Vec<u8>> {
    if payload.is_empty() {
        return Err(PolarError::EmptyPayload);
    }
    let mut out = payload.to_vec();
    out.extend(crc.checksum(payload)?);
    Ok(out)
}

/// Whether `bits` is a valid CRC codeword: the trailing `width` bits equal
/// the checksum of everything before them.
pub fn crc_check(bits: &[u8], crc: &CrcSpec) -> Result<bool> {
    if bits.len() <= crc.width() {
        return Err(PolarError::FrameTooShort {
            len: bits.len(),
            width: crc.width(),
        });
    }
    let (payload, tail) = bits.split_at(bits.len() - crc.width());
    Ok(crc.checksum(payload)? == tail)
}

/// An information payload with its CRC and the assembled input vector `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageFrame {
    /// Payload bits, length `k_nonfrozen - width`.
    pub info_bits: Vec<u8>,
    /// CRC remainder over `info_bits`, length `width`.
    pub crc_bits: Vec<u8>,
    /// Length-N input vector: `info_bits ‖ crc_bits` placed on the
    /// non-frozen positions in ascending order, zeros elsewhere.
    pub u_vector: Vec<u8>,
}

impl MessageFrame {
    /// Appends the CRC to `info_bits` and assembles the u-vector for `code`.
    ///
    /// The CRC occupies the last `width` non-frozen positions, so a decoded
    /// path can be checked only once it is complete.
    pub fn assemble(info_bits: &[u8], crc: &CrcSpec, code: &CodeSpec) -> Result<Self> {
        let expected = code
            .k_nonfrozen()
            .checked_sub(crc.width())
            .filter(|&k| k > 0)
            .ok_or(PolarError::KOutOfRange {
                k: code.k_nonfrozen(),
                n: code.n_block(),
            })?;
        if info_bits.len() != expected {
            return Err(PolarError::LengthMismatch {
                expected,
                got: info_bits.len(),
            });
        }
        let with_crc = crc_append(info_bits, crc)?;
        let u_vector = assemble_u(&with_crc, code)?;
        Ok(Self {
            info_bits: info_bits.to_vec(),
            crc_bits: with_crc[info_bits.len()..].to_vec(),
            u_vector,
        })
    }
}

/// Places `info_plus_crc` (length K) on the non-frozen positions of a
/// length-N vector in ascending index order; frozen positions are zero.
pub fn assemble_u(info_plus_crc: &[u8], code: &CodeSpec) -> Result<Vec<u8>> {
    if info_plus_crc.len() != code.k_nonfrozen() {
        return Err(PolarError::LengthMismatch {
            expected: code.k_nonfrozen(),
            got: info_plus_crc.len(),
        });
    }
    let mut u = vec![0u8; code.n_block()];
    for (&bit, idx) in info_plus_crc.iter().zip(code.non_frozen_indices()) {
        if bit > 1 {
            return Err(PolarError::NonBinary {
                value: bit,
                pos: idx,
            });
        }
        u[idx] = bit;
    }
    Ok(u)
}

/// Encodes `u` to the codeword `x = u · B_N · F^{⊗n}` over GF(2).
///
/// Implemented as the bit-reversal permutation of the input indices followed
/// by log2(N) butterfly XOR stages in place. The stages commute, and
/// `encode(encode(u)) = u` because `B_N` commutes with `F^{⊗n}` and both
/// square to the identity.
pub fn encode(u: &[u8]) -> Result<Vec<u8>> {
    let n = u.len();
    let perm = bit_reversal_permutation(n)?;
    for (pos, &bit) in u.iter().enumerate() {
        if bit > 1 {
            return Err(PolarError::NonBinary { value: bit, pos });
        }
    }
    let mut x: Vec<u8> = perm.iter().map(|&j| u[j]).collect();
    let mut span = 1;
    while span < n {
        for i in 0..n {
            if i & span == 0 {
                x[i] ^= x[i + span];
            }
        }
        span <<= 1;
    }
    Ok(x)
}
