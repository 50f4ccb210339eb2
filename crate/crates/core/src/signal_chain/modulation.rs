//! Bit mapping for the two symbol parts: natural-binary codeword index
//! followed by a Gray-labelled M-PSK point.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::{Error, Result};

/// One transmitted symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct TxSymbol {
    /// Codeword (cluster) index, 0-based.
    pub codeword: usize,
    /// Position of the PSK point on the circle, 0-based.
    pub symbol: usize,
    /// `exp(j·2π·symbol/M)`.
    pub point: Complex64,
    /// The `log2 B + log2 M` source bits, index bits first.
    pub bits: Vec<u8>,
}

/// Maps bit words onto `(codeword, PSK point)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolMapper {
    codebook_order: usize,
    psk_order: usize,
}

fn gray(k: usize) -> usize {
    k ^ (k >> 1)
}

fn inverse_gray(mut g: usize) -> usize {
    let mut k = g;
    while g > 0 {
        g >>= 1;
        k ^= g;
    }
    k
}

impl SymbolMapper {
    pub fn new(codebook_order: usize, psk_order: usize) -> Result<Self> {
        for (name, v) in [("B", codebook_order), ("M", psk_order)] {
            if v == 0 || !v.is_power_of_two() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a power of two, got {v}"
                )));
            }
        }
        if psk_order < 2 {
            return Err(Error::InvalidParameter("M must be >= 2".into()));
        }
        Ok(Self {
            codebook_order,
            psk_order,
        })
    }

    pub fn codebook_order(&self) -> usize {
        self.codebook_order
    }

    pub fn psk_order(&self) -> usize {
        self.psk_order
    }

    pub fn index_bits(&self) -> usize {
        self.codebook_order.trailing_zeros() as usize
    }

    pub fn psk_bits(&self) -> usize {
        self.psk_order.trailing_zeros() as usize
    }

    /// Spectral efficiency `η = log2 B + log2 M` in bits per channel use.
    pub fn bits_per_symbol(&self) -> usize {
        self.index_bits() + self.psk_bits()
    }

    /// Number of `(codeword, point)` hypotheses, `B·M`.
    pub fn hypotheses(&self) -> usize {
        self.codebook_order * self.psk_order
    }

    pub fn point(&self, symbol: usize) -> Complex64 {
        Complex64::from_polar(1.0, TAU * symbol as f64 / self.psk_order as f64)
    }

    /// Concatenated label `(codeword ‖ gray(symbol))` as an integer word.
    pub fn label(&self, codeword: usize, symbol: usize) -> u32 {
        ((codeword << self.psk_bits()) | gray(symbol)) as u32
    }

    /// Number of differing bits between two hypotheses.
    pub fn bit_errors(&self, a: (usize, usize), b: (usize, usize)) -> u32 {
        (self.label(a.0, a.1) ^ self.label(b.0, b.1)).count_ones()
    }

    /// Symbol for an integer word (MSB first, `η` bits wide).
    pub fn modulate_word(&self, word: u32) -> TxSymbol {
        let eta = self.bits_per_symbol();
        let word = word as usize & ((1usize << eta) - 1);
        let codeword = word >> self.psk_bits();
        let symbol = inverse_gray(word & (self.psk_order - 1));
        TxSymbol {
            codeword,
            symbol,
            point: self.point(symbol),
            bits: (0..eta).rev().map(|i| ((word >> i) & 1) as u8).collect(),
        }
    }

    /// Maps `log2 B + log2 M` bits: the first `log2 B` choose the codeword
    /// (natural binary), the rest a Gray-labelled PSK point.
    pub fn modulate(&self, bits: &[u8]) -> Result<TxSymbol> {
        let eta = self.bits_per_symbol();
        if bits.len() != eta {
            return Err(Error::BitCount {
                expected: eta,
                got: bits.len(),
            });
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidParameter(format!("bit value {b}")));
        }
        let word = bits.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
        Ok(self.modulate_word(word))
    }

    /// Source bits carried by a hypothesis.
    pub fn demap(&self, codeword: usize, symbol: usize) -> Vec<u8> {
        let eta = self.bits_per_symbol();
        let word = self.label(codeword, symbol);
        (0..eta).rev().map(|i| ((word >> i) & 1) as u8).collect()
    }
}
