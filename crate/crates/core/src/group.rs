//! The order-1024 symmetry group acting on Turyn-type quadruples.
//!
//! Every element has a unique normal form
//! `nu1^e1 rho1^f1 nu2^e2 rho2^f2 nu3^e3 rho3^f3 nu4^e4 rho4^f4 sigma^w alpha^t`
//! where `nu_i` negates and `rho_i` reverses the `i`-th sequence, `sigma`
//! swaps `A` and `B`, and `alpha` alternates all four sequences. The `nu`/`rho`
//! part is an elementary abelian group `E` of order 256. The defining relations are
//!
//! * `sigma nu1 = nu2 sigma`, `sigma rho1 = rho2 sigma`, and `sigma` commutes
//!   with `nu3, nu4, rho3, rho4`;
//! * `alpha rho_i alpha = rho_i nu_i` for `i = 1, 2, 3`, and `alpha` commutes
//!   with `rho4`, `sigma` and every `nu_i` (including `nu4`).
//!
//! The action is only a group action for even `n`: reversing an alternated
//! sequence of even length negates it, while `D` has odd length `n - 1` and
//! there reversal commutes with alternation.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::binseq::BinarySeq;
use crate::error::{Error, Result};
use crate::quad::TurynQuad;

const E_MASK: u16 = 0xff;
const SIGMA_BIT: u16 = 1 << 8;
const ALPHA_BIT: u16 = 1 << 9;

/// A group element stored as its 10 normal-form exponent bits.
///
/// Bits `2(i-1)` and `2(i-1)+1` hold the exponents of `nu_i` and `rho_i`,
/// bit 8 is `sigma` and bit 9 is `alpha`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement(u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Negate(usize),
    Reverse(usize),
    Swap,
    Alternate,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::Negate(0),
        Generator::Reverse(0),
        Generator::Negate(1),
        Generator::Reverse(1),
        Generator::Negate(2),
        Generator::Reverse(2),
        Generator::Negate(3),
        Generator::Reverse(3),
        Generator::Swap,
        Generator::Alternate,
    ];
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);
    pub const ORDER: usize = 1024;

    pub fn from_bits(bits: u16) -> Self {
        assert!(bits < 1 << 10, "group element has 10 bits");
        Self(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn nu(i: usize) -> Self {
        assert!(i < 4);
        Self(1 << (2 * i))
    }

    pub fn rho(i: usize) -> Self {
        assert!(i < 4);
        Self(1 << (2 * i + 1))
    }

    pub fn sigma() -> Self {
        Self(SIGMA_BIT)
    }

    pub fn alpha() -> Self {
        Self(ALPHA_BIT)
    }

    pub fn generator(g: Generator) -> Self {
        match g {
            Generator::Negate(i) => Self::nu(i),
            Generator::Reverse(i) => Self::rho(i),
            Generator::Swap => Self::sigma(),
            Generator::Alternate => Self::alpha(),
        }
    }

    /// All 1024 elements in bit order.
    pub fn all() -> impl Iterator<Item = GroupElement> {
        (0..Self::ORDER as u16).map(Self)
    }

    fn has_nu(self, i: usize) -> bool {
        self.0 >> (2 * i) & 1 == 1
    }

    fn has_rho(self, i: usize) -> bool {
        self.0 >> (2 * i + 1) & 1 == 1
    }

    fn has_sigma(self) -> bool {
        self.0 & SIGMA_BIT != 0
    }

    fn has_alpha(self) -> bool {
        self.0 & ALPHA_BIT != 0
    }

    /// Normal-form product `self * other`.
    pub fn times(self, other: GroupElement) -> GroupElement {
        // (E1 s^w1 a^t1)(E2 s^w2 a^t2) = E1 . swap^w1(twist^t1(E2)) . s^(w1+w2) a^(t1+t2)
        let mut e2 = other.0 & E_MASK;
        if self.has_alpha() {
            e2 = alpha_conjugate(e2);
        }
        if self.has_sigma() {
            e2 = sigma_conjugate(e2);
        }
        let e = (self.0 & E_MASK) ^ e2;
        let tail = (self.0 ^ other.0) & (SIGMA_BIT | ALPHA_BIT);
        GroupElement(e | tail)
    }

    pub fn inverse(self) -> GroupElement {
        GroupElement::all()
            .find(|&h| self.times(h) == GroupElement::IDENTITY)
            .expect("every element has an inverse")
    }

    /// Applies the element to a quadruple. `alpha` acts first, then `sigma`,
    /// then the `E` part.
    pub fn apply(self, quad: &TurynQuad) -> Result<TurynQuad> {
        let n = quad.n();
        if !n.is_multiple_of(2) {
            return Err(Error::UnsupportedLength(n));
        }
        Ok(self.apply_unchecked(quad))
    }

    pub(crate) fn apply_unchecked(self, quad: &TurynQuad) -> TurynQuad {
        let mut parts: [BinarySeq; 4] = quad.parts().map(Clone::clone);
        if self.has_alpha() {
            for p in &mut parts {
                *p = p.alternate();
            }
        }
        if self.has_sigma() {
            parts.swap(0, 1);
        }
        for (i, p) in parts.iter_mut().enumerate() {
            if self.has_nu(i) {
                *p = p.negate();
            }
            if self.has_rho(i) {
                *p = p.reverse();
            }
        }
        let [a, b, c, d] = parts;
        TurynQuad::new(a, b, c, d).expect("group action preserves shape")
    }
}

/// `alpha e alpha` for `e` in `E`: each `rho_i` (i <= 3) picks up a `nu_i`.
fn alpha_conjugate(e: u16) -> u16 {
    let mut out = e;
    for i in 0..3 {
        if e >> (2 * i + 1) & 1 == 1 {
            out ^= 1 << (2 * i);
        }
    }
    out
}

/// `sigma e sigma` for `e` in `E`: exchanges the first two `(nu, rho)` pairs.
fn sigma_conjugate(e: u16) -> u16 {
    (e & 0xf0) | ((e & 0x3) << 2) | ((e >> 2) & 0x3)
}

impl std::ops::Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.times(rhs)
    }
}

pub fn g_mul(g: GroupElement, h: GroupElement) -> GroupElement {
    g.times(h)
}

pub fn g_apply(g: GroupElement, quad: &TurynQuad) -> Result<TurynQuad> {
    g.apply(quad)
}

/// Closure of `{quad}` under the ten generators.
pub fn orbit(quad: &TurynQuad) -> Result<BTreeSet<TurynQuad>> {
    if !quad.n().is_multiple_of(2) {
        return Err(Error::UnsupportedLength(quad.n()));
    }
    if !quad.verify_tt() {
        return Err(Error::NotTuryn);
    }
    let gens: Vec<GroupElement> = Generator::ALL
        .iter()
        .map(|&g| GroupElement::generator(g))
        .collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(quad.clone());
    queue.push_back(quad.clone());
    while let Some(q) = queue.pop_front() {
        for &g in &gens {
            let next = g.apply_unchecked(&q);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("e");
        }
        let mut first = true;
        let mut word = |s: String, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&s)
        };
        for i in 0..4 {
            if self.has_nu(i) {
                word(format!("nu{}", i + 1), f)?;
            }
            if self.has_rho(i) {
                word(format!("rho{}", i + 1), f)?;
            }
        }
        if self.has_sigma() {
            word("sigma".into(), f)?;
        }
        if self.has_alpha() {
            word("alpha".into(), f)?;
        }
        Ok(())
    }
}
