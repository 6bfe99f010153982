//! Injective coding of finite sequences of naturals, query/result tagging
//! and the `E_n` family.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Naturals of arbitrary width, capped at [`MAX_BITS`].
pub type Nat = BigUint;

/// Width cap for every natural produced by a coding scheme. Exceeding it is
/// a fatal evaluation error.
pub const MAX_BITS: u64 = 1 << 18;

pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// Classification of a value returned by a dialogue program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tagged {
    Query(Nat),
    Result(Nat),
    Neither,
}

/// An injective coding `⟨…⟩ : ℕ* → ℕ` together with two distinct marker
/// elements `q` and `r`.
pub trait CodingScheme: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn encode(&self, items: &[Nat]) -> Result<Nat, Error>;

    fn decode(&self, code: &Nat) -> Option<Vec<Nat>>;

    fn q(&self) -> Nat;

    fn r(&self) -> Nat;

    fn tag_query(&self, b: &Nat) -> Result<Nat, Error> {
        self.encode(&[self.q(), b.clone()])
    }

    fn tag_result(&self, c: &Nat) -> Result<Nat, Error> {
        self.encode(&[self.r(), c.clone()])
    }

    fn untag(&self, v: &Nat) -> Tagged {
        match self.decode(v) {
            Some(items) if items.len() == 2 => {
                if items[0] == self.q() {
                    Tagged::Query(items[1].clone())
                } else if items[0] == self.r() {
                    Tagged::Result(items[1].clone())
                } else {
                    Tagged::Neither
                }
            }
            _ => Tagged::Neither,
        }
    }

    /// A value that untags as [`Tagged::Neither`]. The empty sequence has
    /// the wrong length for a tag under every scheme.
    fn neither(&self) -> Nat {
        self.encode(&[]).expect("empty sequence always encodes")
    }

    /// The entry of a one-element sequence.
    fn decode_singleton(&self, code: &Nat) -> Option<Nat> {
        match self.decode(code)?.as_slice() {
            [x] => Some(x.clone()),
            _ => None,
        }
    }

    /// Decodes `code` as a non-empty sequence and splits off its head.
    fn decode_point(&self, code: &Nat) -> Option<(Nat, Vec<Nat>)> {
        let mut items = self.decode(code)?;
        if items.is_empty() {
            return None;
        }
        let head = items.remove(0);
        Some((head, items))
    }
}

/// Cantor pairing `(x+y)(x+y+1)/2 + y`.
pub fn pair(x: &Nat, y: &Nat) -> Nat {
    let s = x + y;
    let t = (&s * (&s + 1u32)) >> 1;
    t + y
}

/// Inverse of [`pair`].
pub fn unpair(z: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8z+1) - 1) / 2)
    let disc: Nat = (z << 3) + 1u32;
    let w: Nat = (disc.sqrt() - 1u32) >> 1;
    let t = (&w * (&w + 1u32)) >> 1;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

fn check_width(n: Nat) -> Result<Nat, Error> {
    if n.bits() > MAX_BITS {
        Err(Error::CodingOverflow { bits: n.bits() })
    } else {
        Ok(n)
    }
}

/// Cons-cell coding: `⟨⟩ = 0`, `⟨a⟩ ∗ t = 1 + pair(a, ⟨t⟩)`, with `q = 0`
/// and `r = 1` unless configured otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorScheme {
    q: Nat,
    r: Nat,
}

impl Default for CantorScheme {
    fn default() -> Self {
        CantorScheme {
            q: Nat::zero(),
            r: Nat::one(),
        }
    }
}

impl CantorScheme {
    pub fn new() -> Self {
        Self::default()
    }

    /// Cantor coding with custom markers; `q` and `r` must differ.
    pub fn with_markers(q: Nat, r: Nat) -> Result<Self, Error> {
        if q == r {
            return Err(Error::InvalidScheme("query and result markers coincide".into()));
        }
        Ok(CantorScheme { q, r })
    }

    pub fn cons(&self, head: &Nat, tail: &Nat) -> Result<Nat, Error> {
        check_width(pair(head, tail) + 1u32)
    }
}

impl CodingScheme for CantorScheme {
    fn name(&self) -> &str {
        "cantor"
    }

    fn encode(&self, items: &[Nat]) -> Result<Nat, Error> {
        let mut code = Nat::zero();
        for item in items.iter().rev() {
            code = self.cons(item, &code)?;
        }
        Ok(code)
    }

    fn decode(&self, code: &Nat) -> Option<Vec<Nat>> {
        let mut items = Vec::new();
        let mut rest = code.clone();
        while !rest.is_zero() {
            let (head, tail) = unpair(&(rest - 1u32));
            items.push(head);
            rest = tail;
        }
        Some(items)
    }

    fn decode_singleton(&self, code: &Nat) -> Option<Nat> {
        if code.is_zero() {
            return None;
        }
        let (head, tail) = unpair(&(code - 1u32));
        tail.is_zero().then_some(head)
    }

    fn q(&self) -> Nat {
        self.q.clone()
    }

    fn r(&self) -> Nat {
        self.r.clone()
    }
}

/// A coding whose size grows additively with the length of a sequence:
/// `⟨⟩ = 0`, `⟨x⟩ = 2x + 1`, and a longer sequence is `2g + 2` where `g`
/// reads the bits `1 γ(a0+1) … γ(an-1+1)` (Elias gamma). Long histories of
/// small entries stay small, which sequential reading protocols need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactScheme {
    q: Nat,
    r: Nat,
}

impl Default for CompactScheme {
    fn default() -> Self {
        CompactScheme {
            q: Nat::zero(),
            r: Nat::one(),
        }
    }
}

impl CompactScheme {
    pub fn new() -> Self {
        Self::default()
    }
}

fn push_gamma(v: &Nat, bits: &mut Vec<u8>) {
    if let Some(v) = v.to_u64() {
        let width = 64 - v.leading_zeros() as usize;
        bits.extend(std::iter::repeat_n(0u8, width - 1));
        bits.extend((0..width).rev().map(|i| ((v >> i) & 1) as u8));
        return;
    }
    let digits = v.to_radix_be(2);
    bits.extend(std::iter::repeat_n(0u8, digits.len() - 1));
    bits.extend(digits);
}

fn read_binary(digits: &[u8]) -> Nat {
    if digits.len() <= 64 {
        Nat::from(digits.iter().fold(0u64, |acc, &d| (acc << 1) | d as u64))
    } else {
        BigUint::from_radix_be(digits, 2).expect("binary digits")
    }
}

impl CodingScheme for CompactScheme {
    fn name(&self) -> &str {
        "compact"
    }

    fn encode(&self, items: &[Nat]) -> Result<Nat, Error> {
        match items {
            [] => Ok(Nat::zero()),
            [x] => check_width((x << 1) + 1u32),
            _ => {
                let mut bits = vec![1u8];
                for x in items {
                    push_gamma(&(x + 1u32), &mut bits);
                }
                if bits.len() as u64 > MAX_BITS {
                    return Err(Error::CodingOverflow {
                        bits: bits.len() as u64,
                    });
                }
                let g = BigUint::from_radix_be(&bits, 2).expect("binary digits");
                check_width((g << 1) + 2u32)
            }
        }
    }

    fn decode(&self, code: &Nat) -> Option<Vec<Nat>> {
        if code.is_zero() {
            return Some(Vec::new());
        }
        if code.bit(0) {
            return Some(vec![code >> 1]);
        }
        let g: Nat = (code - 2u32) >> 1;
        if g.is_zero() {
            return None;
        }
        let bits = g.to_radix_be(2);
        let mut pos = 1;
        let mut items = Vec::new();
        while pos < bits.len() {
            let mut zeros = 0;
            while *bits.get(pos)? == 0 {
                zeros += 1;
                pos += 1;
            }
            let digits = bits.get(pos..pos + zeros + 1)?;
            pos += zeros + 1;
            items.push(read_binary(digits) - 1u32);
        }
        (items.len() >= 2).then_some(items)
    }

    fn decode_singleton(&self, code: &Nat) -> Option<Nat> {
        code.bit(0).then(|| code >> 1)
    }

    fn q(&self) -> Nat {
        self.q.clone()
    }

    fn r(&self) -> Nat {
        self.r.clone()
    }
}

/// `E_0 = ⟨⟩`, `E_{n+1} = ⟨E_n⟩`.
pub fn e_n(scheme: &dyn CodingScheme, n: usize) -> Result<Nat, Error> {
    let mut e = scheme.encode(&[])?;
    for _ in 0..n {
        e = scheme.encode(&[e])?;
    }
    Ok(e)
}

/// Returns `n` when `code = E_n`, scanning at most `limit` levels.
pub fn e_index(scheme: &dyn CodingScheme, code: &Nat, limit: usize) -> Option<usize> {
    let empty = scheme.encode(&[]).ok()?;
    let mut cur = code.clone();
    for n in 0..=limit {
        if cur == empty {
            return Some(n);
        }
        cur = scheme.decode_singleton(&cur)?;
    }
    None
}

/// Small naturals fit comfortably in `u64` for display and arithmetic in
/// test corpora.
pub fn small(n: &Nat) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(xs: &[u64]) -> Vec<Nat> {
        xs.iter().map(|&x| nat(x)).collect()
    }

    #[test]
    fn worked_codes() {
        let c = CantorScheme::new();
        assert_eq!(c.encode(&[]).unwrap(), nat(0));
        assert_eq!(c.encode(&seq(&[5])).unwrap(), nat(16));
        assert_eq!(c.encode(&seq(&[0, 5])).unwrap(), nat(153));
        assert_eq!(c.decode(&nat(0)).unwrap(), seq(&[]));
        assert_eq!(c.decode(&nat(16)).unwrap(), seq(&[5]));
        let code = c.encode(&seq(&[1, 2, 3])).unwrap();
        assert_eq!(c.decode(&code).unwrap(), seq(&[1, 2, 3]));
    }

    #[test]
    fn tags() {
        let c = CantorScheme::new();
        assert_eq!(c.untag(&c.tag_query(&nat(7)).unwrap()), Tagged::Query(nat(7)));
        assert_eq!(c.untag(&c.tag_result(&nat(9)).unwrap()), Tagged::Result(nat(9)));
        assert_eq!(c.untag(&nat(2)), Tagged::Neither);
        assert_eq!(c.untag(&c.neither()), Tagged::Neither);
    }

    #[test]
    fn e_family() {
        let c = CantorScheme::new();
        assert_eq!(e_n(&c, 0).unwrap(), nat(0));
        assert_eq!(e_n(&c, 1).unwrap(), nat(1));
        assert_eq!(e_n(&c, 2).unwrap(), nat(2));
        let e5 = e_n(&c, 5).unwrap();
        assert_eq!(e_index(&c, &e5, 30), Some(5));
        assert_eq!(e_index(&c, &nat(3), 30), None);
    }

    #[test]
    fn equal_markers_rejected() {
        assert!(CantorScheme::with_markers(nat(4), nat(4)).is_err());
        assert!(CantorScheme::with_markers(nat(4), nat(5)).is_ok());
    }

    #[test]
    fn overflow_is_reported() {
        let c = CantorScheme::new();
        let huge = Nat::one() << (MAX_BITS as usize);
        assert!(matches!(c.encode(&[huge]), Err(Error::CodingOverflow { .. })));
    }

    #[test]
    fn compact_round_trips() {
        let c = CompactScheme::new();
        assert_eq!(c.encode(&seq(&[3])).unwrap(), nat(7));
        // bits 1 γ(1) γ(2) = 1 1 010 = 26, code 2·26 + 2
        assert_eq!(c.encode(&seq(&[0, 1])).unwrap(), nat(54));
        let mut seen = std::collections::HashSet::new();
        for len in 0..4u32 {
            for n in 0..5u64.pow(len) {
                let xs: Vec<u64> = (0..len).map(|i| n / 5u64.pow(i) % 5).collect();
                let code = c.encode(&seq(&xs)).unwrap();
                assert_eq!(c.decode(&code), Some(seq(&xs)));
                assert!(seen.insert(code));
            }
        }
        assert_eq!(c.decode(&nat(2)), None);
        assert_eq!(e_n(&c, 20).unwrap(), nat((1 << 20) - 1));
    }

    #[test]
    fn unpair_inverts_pair_on_grid() {
        for x in 0..60u64 {
            for y in 0..60u64 {
                assert_eq!(unpair(&pair(&nat(x), &nat(y))), (nat(x), nat(y)));
            }
        }
    }
}
