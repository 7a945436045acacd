//! Linear span over a prime field: Berlekamp-Massey synthesis, an LFSR
//! generator, and the bridge from character sequences to symbol streams.
//!
//! A connection `(c_1, …, c_ℓ)` describes the recursion
//! `s_n = c_1 s_{n-1} + … + c_ℓ s_{n-ℓ} (mod p)`.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{inv_mod, is_prime};
use crate::sequence::CharSequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("symbol {symbol} is out of range for modulus {modulus}")]
    SymbolOutOfRange { symbol: u32, modulus: u32 },
    #[error("seed has {seed} symbols but the connection has {connection}")]
    SeedLengthMismatch { seed: usize, connection: usize },
    #[error("requested length {length} is shorter than the seed ({seed})")]
    LengthShorterThanSeed { length: usize, seed: usize },
    #[error(
        "character order {0} is composite; linear span is only defined here over a prime field"
    )]
    CompositeCharacterOrder(u32),
    #[error("periods must be at least 1")]
    ZeroPeriods,
}

/// Symbols in `Z_p`, `p` prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    modulus: u32,
    symbols: Vec<u32>,
}

impl SymbolStream {
    pub fn new(modulus: u32, symbols: Vec<u32>) -> Result<Self, SpanError> {
        if !is_prime(modulus as u64) {
            return Err(SpanError::NonPrimeModulus(modulus));
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= modulus) {
            return Err(SpanError::SymbolOutOfRange { symbol, modulus });
        }
        Ok(SymbolStream { modulus, symbols })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbols `start..start+len`.
    pub fn window(&self, start: usize, len: usize) -> SymbolStream {
        SymbolStream {
            modulus: self.modulus,
            symbols: self.symbols[start..start + len].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSpanResult {
    pub span: usize,
    pub connection: Vec<u32>,
    pub modulus: u32,
}

impl LinearSpanResult {
    /// Runs the recursion from `seed` (the first `span` symbols) out to `len`.
    pub fn regenerate(&self, seed: &[u32], len: usize) -> Vec<u32> {
        run_recursion(self.modulus, &self.connection, seed, len)
    }

    /// Whether the recursion, seeded with the stream's own first `span`
    /// symbols, reproduces every symbol.
    pub fn reproduces(&self, stream: &SymbolStream) -> bool {
        if stream.len() <= self.span {
            return true;
        }
        self.regenerate(&stream.symbols[..self.span], stream.len()) == stream.symbols
    }
}

fn run_recursion(p: u32, connection: &[u32], seed: &[u32], len: usize) -> Vec<u32> {
    let p64 = p as u64;
    let mut out: Vec<u32> = seed.iter().take(len).copied().collect();
    while out.len() < len {
        let n = out.len();
        let next = connection.iter().enumerate().fold(0u64, |acc, (i, &c)| {
            (acc + c as u64 * out[n - 1 - i] as u64) % p64
        });
        out.push(next as u32);
    }
    out
}

/// Shortest linear recursion generating the stream.
pub fn berlekamp_massey(stream: &SymbolStream) -> LinearSpanResult {
    let p = stream.modulus as u64;
    let s = &stream.symbols;
    // Connection polynomials C(x) = 1 + C_1 x + … with s_n + Σ C_i s_{n-i} = 0.
    let mut c: Vec<u64> = vec![1];
    let mut b: Vec<u64> = vec![1];
    let mut span = 0usize;
    let mut gap = 1usize;
    let mut last_discrepancy = 1u64;

    for n in 0..s.len() {
        let mut d = s[n] as u64;
        for i in 1..=span.min(c.len() - 1) {
            d = (d + c[i] * s[n - i] as u64) % p;
        }
        if d == 0 {
            gap += 1;
            continue;
        }
        let coef = d * inv_mod(last_discrepancy, p) % p;
        let previous = c.clone();
        if c.len() < b.len() + gap {
            c.resize(b.len() + gap, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + gap] = (c[i + gap] + p - coef * bi % p) % p;
        }
        if 2 * span <= n {
            span = n + 1 - span;
            b = previous;
            last_discrepancy = d;
            gap = 1;
        } else {
            gap += 1;
        }
    }

    let connection = (1..=span)
        .map(|i| {
            let ci = c.get(i).copied().unwrap_or(0);
            ((p - ci) % p) as u32
        })
        .collect();
    LinearSpanResult {
        span,
        connection,
        modulus: stream.modulus,
    }
}

/// Convenience wrapper validating the modulus and symbols first.
pub fn linear_span(modulus: u32, symbols: &[u32]) -> Result<LinearSpanResult, SpanError> {
    Ok(berlekamp_massey(&SymbolStream::new(
        modulus,
        symbols.to_vec(),
    )?))
}

pub fn lfsr_generate(
    modulus: u32,
    connection: &[u32],
    seed: &[u32],
    length: usize,
) -> Result<SymbolStream, SpanError> {
    if seed.len() != connection.len() {
        return Err(SpanError::SeedLengthMismatch {
            seed: seed.len(),
            connection: connection.len(),
        });
    }
    if length < seed.len() {
        return Err(SpanError::LengthShorterThanSeed {
            length,
            seed: seed.len(),
        });
    }
    // validates modulus and symbol ranges
    SymbolStream::new(modulus, seed.iter().chain(connection).copied().collect())?;
    SymbolStream::new(modulus, run_recursion(modulus, connection, seed, length))
}

/// Maps a character sequence of prime alphabet order `d` to `Z_d` by
/// `exp(2πi k/d) -> k`, repeated `periods` times. The trivial alphabet
/// (`d = 1`) becomes an all-zero stream over `Z_2`.
pub fn to_symbol_stream(seq: &CharSequence, periods: usize) -> Result<SymbolStream, SpanError> {
    if periods == 0 {
        return Err(SpanError::ZeroPeriods);
    }
    let d = seq.alphabet_order();
    let (modulus, step) = if d == 1 {
        (2, seq.denominator())
    } else if is_prime(d as u64) {
        (d, seq.denominator() / d)
    } else {
        return Err(SpanError::CompositeCharacterOrder(d));
    };
    let one_period: Vec<u32> = seq
        .exponents()
        .iter()
        .map(|&e| (e / step) % modulus)
        .collect();
    let symbols = one_period.repeat(periods);
    SymbolStream::new(modulus, symbols)
}

/// Span of a character sequence, computed over `periods` periods.
pub fn sequence_span(seq: &CharSequence, periods: usize) -> Result<LinearSpanResult, SpanError> {
    Ok(berlekamp_massey(&to_symbol_stream(seq, periods)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_stream_has_span_zero() {
        for p in [2, 3, 7] {
            let r = linear_span(p, &[0; 9]).unwrap();
            assert_eq!(r.span, 0);
            assert!(r.connection.is_empty());
        }
        assert_eq!(linear_span(5, &[]).unwrap().span, 0);
    }

    #[test]
    fn m_sequence_of_degree_three() {
        let period = [1, 0, 0, 1, 0, 1, 1];
        let stream: Vec<u32> = period.repeat(2);
        let r = linear_span(2, &stream).unwrap();
        assert_eq!(r.span, 3);
        assert_eq!(r.connection, vec![0, 1, 1]);
    }

    #[test]
    fn pure_cycle_needs_full_length() {
        let stream = [0, 0, 1, 0].repeat(2);
        let r = linear_span(2, &stream).unwrap();
        assert_eq!(r.span, 4);
        assert!(r.reproduces(&SymbolStream::new(2, stream).unwrap()));
    }

    #[test]
    fn lfsr_examples() {
        assert_eq!(
            lfsr_generate(2, &[0, 1, 1], &[1, 0, 0], 7)
                .unwrap()
                .symbols(),
            &[1, 0, 0, 1, 0, 1, 1]
        );
        assert_eq!(lfsr_generate(2, &[], &[], 5).unwrap().symbols(), &[0; 5]);
        assert_eq!(
            lfsr_generate(3, &[1], &[2], 4).unwrap().symbols(),
            &[2, 2, 2, 2]
        );
        assert_eq!(
            lfsr_generate(2, &[1, 1], &[1], 4).unwrap_err(),
            SpanError::SeedLengthMismatch {
                seed: 1,
                connection: 2
            }
        );
        assert_eq!(
            lfsr_generate(4, &[1], &[1], 4).unwrap_err(),
            SpanError::NonPrimeModulus(4)
        );
    }

    #[test]
    fn stream_validation() {
        assert_eq!(
            SymbolStream::new(6, vec![1]).unwrap_err(),
            SpanError::NonPrimeModulus(6)
        );
        assert_eq!(
            SymbolStream::new(3, vec![0, 3]).unwrap_err(),
            SpanError::SymbolOutOfRange {
                symbol: 3,
                modulus: 3
            }
        );
    }

    #[test]
    fn symbol_stream_mapping() {
        let seq = CharSequence::from_signs(&[false, false, true, false]);
        assert_eq!(to_symbol_stream(&seq, 1).unwrap().symbols(), &[0, 0, 1, 0]);
        assert_eq!(
            to_symbol_stream(&seq, 2).unwrap().symbols(),
            &[0, 0, 1, 0, 0, 0, 1, 0]
        );
        assert_eq!(sequence_span(&seq, 2).unwrap().span, 4);

        let ones = CharSequence::from_exponents(vec![0; 8], 6);
        let s = to_symbol_stream(&ones, 2).unwrap();
        assert!(s.symbols().iter().all(|&x| x == 0));
        assert_eq!(sequence_span(&ones, 2).unwrap().span, 0);

        // order-3 values over denominator 12: exponents 0, 4, 8.
        let ternary = CharSequence::from_exponents(vec![0, 4, 8, 4], 12);
        assert_eq!(
            to_symbol_stream(&ternary, 1).unwrap().symbols(),
            &[0, 1, 2, 1]
        );
        assert_eq!(to_symbol_stream(&ternary, 1).unwrap().modulus(), 3);

        let quartic = CharSequence::from_exponents(vec![0, 3, 6, 9], 12);
        assert_eq!(
            to_symbol_stream(&quartic, 1).unwrap_err(),
            SpanError::CompositeCharacterOrder(4)
        );
        assert_eq!(
            to_symbol_stream(&seq, 0).unwrap_err(),
            SpanError::ZeroPeriods
        );
    }
}
