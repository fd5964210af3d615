//! Known-mixture transmission with the base length sent over a classical side channel.
//!
//! The classical header is `1^k 0` followed by `L` written in `k` bits, which
//! makes the header stream self-delimiting. The quantum payload is the first
//! `L` qubits of the zero-extended state.

use crate::error::{Error, Result};
use crate::fockstring::{BitString, FockVector, RegisterVector};

/// Bits in the length field for base length `l`: 0 for `l = 1`, else the bit length of `l`.
///
/// For `l` not a power of two this is `⌈log₂ l⌉`; powers of two need one more bit to fit.
pub fn length_field_width(l: usize) -> usize {
    assert!(l >= 1);
    if l == 1 {
        0
    } else {
        (usize::BITS - l.leading_zeros()) as usize
    }
}

pub fn encode_header(l: usize) -> Result<Vec<bool>> {
    if l == 0 {
        return Err(Error::InvalidArgument("side-channel messages need base length at least 1".into()));
    }
    let k = length_field_width(l);
    let mut bits = vec![true; k];
    bits.push(false);
    bits.extend((0..k).rev().map(|i| l >> i & 1 == 1));
    Ok(bits)
}

/// Reads one header from the front of `bits`; returns `(L, bits consumed)`.
pub fn parse_header(bits: &[bool]) -> Result<(usize, usize)> {
    let k = bits.iter().take_while(|b| **b).count();
    if k == bits.len() {
        return Err(Error::MalformedHeader("unterminated unary length prefix".into()));
    }
    if k == 0 {
        return Ok((1, 1));
    }
    if k >= usize::BITS as usize {
        return Err(Error::MalformedHeader(format!("length field of {k} bits is too wide")));
    }
    let field =
        bits.get(k + 1..2 * k + 1).ok_or_else(|| Error::MalformedHeader(format!("expected {k} length bits")))?;
    let l = field.iter().fold(0usize, |acc, b| acc << 1 | *b as usize);
    if length_field_width(l.max(1)) != k || l < 2 {
        return Err(Error::MalformedHeader(format!("length {l} is not canonically encoded in {k} bits")));
    }
    Ok((l, 2 * k + 1))
}

/// Splits a concatenation of headers back into their lengths.
pub fn parse_header_stream(bits: &[bool]) -> Result<Vec<usize>> {
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < bits.len() {
        let (l, used) = parse_header(&bits[pos..])?;
        out.push(l);
        pos += used;
    }
    Ok(out)
}

/// Classical header plus `L` qubits of zero-extended payload.
#[derive(Clone, Debug, PartialEq)]
pub struct SideChannelMessage {
    pub header_bits: Vec<bool>,
    pub payload: RegisterVector,
}

impl SideChannelMessage {
    /// Base length announced by the header, checked against the payload width.
    pub fn base_length(&self) -> Result<usize> {
        let (l, used) = parse_header(&self.header_bits)?;
        if used != self.header_bits.len() {
            return Err(Error::MalformedHeader("trailing bits after header".into()));
        }
        if self.payload.width() != l {
            return Err(Error::MalformedHeader(format!(
                "header says {l} qubits, payload has {}",
                self.payload.width()
            )));
        }
        Ok(l)
    }

    /// ASCII header bits, newline, then the payload register literal.
    pub fn to_wire(&self) -> String {
        let header: String = self.header_bits.iter().map(|b| if *b { '1' } else { '0' }).collect();
        format!("{header}\n{}", self.payload.to_literal())
    }

    pub fn from_wire(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or(Error::MalformedHeader("empty message".into()))?;
        let header_bits = header
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::MalformedHeader(format!("invalid header character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let payload = RegisterVector::from_state_lines(lines)?;
        let msg = SideChannelMessage { header_bits, payload };
        msg.base_length()?;
        Ok(msg)
    }
}

pub fn make_side_channel(psi: &FockVector) -> Result<SideChannelMessage> {
    let l = psi.base_length()?;
    Ok(SideChannelMessage { header_bits: encode_header(l)?, payload: psi.zero_extended_form(l)? })
}

/// Recovers the state from a message.
///
/// Zero padding is not self-delimiting, so the receiver supplies the strings
/// the sender may use (for a known mixture, the code's output strings). Each
/// payload branch must be the zero extension of exactly one of them.
pub fn parse_side_channel(msg: &SideChannelMessage, alphabet: &[BitString]) -> Result<FockVector> {
    let l = msg.base_length()?;
    let mut terms = Vec::with_capacity(msg.payload.terms().len());
    for (r, a) in msg.payload.iter() {
        let mut matches = alphabet.iter().filter(|s| s.len() <= l && s.pad_to(l).is_ok_and(|p| p == *r));
        let s = matches
            .next()
            .ok_or_else(|| Error::MalformedHeader(format!("payload branch {r} matches no known string")))?;
        if let Some(other) = matches.find(|o| *o != s) {
            return Err(Error::MalformedHeader(format!("payload branch {r} is ambiguous between {s} and {other}")));
        }
        terms.push((*s, *a));
    }
    let psi = FockVector::from_terms(terms);
    if psi.base_length()? != l {
        return Err(Error::MalformedHeader("recovered state does not reach the announced length".into()));
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn header_examples() {
        assert_eq!(encode_header(3).unwrap(), bits("11011"));
        assert_eq!(encode_header(1).unwrap(), bits("0"));
        assert_eq!(encode_header(5).unwrap(), bits("1110101"));
        // powers of two need the wider field
        assert_eq!(encode_header(4).unwrap(), bits("1110100"));
        assert_eq!(encode_header(2).unwrap(), bits("11010"));
        assert!(encode_header(0).is_err());
        for l in 1..200 {
            assert_eq!(parse_header(&encode_header(l).unwrap()).unwrap(), (l, encode_header(l).unwrap().len()));
        }
    }

    #[test]
    fn malformed_headers() {
        assert!(parse_header(&bits("111")).is_err());
        assert!(parse_header(&bits("1101")).is_err());
        assert!(parse_header(&bits("11000")).is_err());
        assert!(parse_header(&[]).is_err());
    }

    #[test]
    fn make_side_channel_examples() {
        let psi = FockVector::from_real(&[("00", H), ("111", H)]);
        let msg = make_side_channel(&psi).unwrap();
        assert_eq!(msg.header_bits, bits("11011"));
        assert_eq!(msg.payload.width(), 3);
        assert_eq!(parse_side_channel(&msg, &[bs("00"), bs("111")]).unwrap(), psi);

        let zero = FockVector::from_real(&[("0", 1.0)]);
        let msg = make_side_channel(&zero).unwrap();
        assert_eq!(msg.header_bits, bits("0"));
        assert_eq!(msg.base_length().unwrap(), 1);
    }

    #[test]
    fn ambiguous_padding_is_rejected() {
        let psi = FockVector::from_real(&[("1", H), ("111", H)]);
        let msg = make_side_channel(&psi).unwrap();
        assert!(parse_side_channel(&msg, &[bs("1"), bs("10"), bs("111")]).is_err());
        assert!(parse_side_channel(&msg, &[bs("111")]).is_err());
    }

    #[test]
    fn wire_round_trip() {
        let psi = FockVector::from_real(&[("0", 0.6), ("1011", 0.8)]);
        let msg = make_side_channel(&psi).unwrap();
        let wire = msg.to_wire();
        assert!(wire.starts_with("1110100\n"));
        let back = SideChannelMessage::from_wire(&wire).unwrap();
        assert_eq!(back.header_bits, msg.header_bits);
        assert!((back.payload.inner(&msg.payload).norm() - 1.0).abs() < 1e-12);
        assert!(SideChannelMessage::from_wire("11011\n0000 1 0\n").is_err());
    }
}
