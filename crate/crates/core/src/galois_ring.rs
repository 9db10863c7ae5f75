//! The Galois ring `R = GR(4,2) = Z_4[ξ]`, `ξ² + ξ + 1 = 0`.
//!
//! Elements are pairs `(a0, a1)` meaning `a0 + a1·ξ` over `Z_4`. The
//! Teichmüller system `T = {0, 1, ξ, ξ²}` gives every element a unique 2-adic
//! expansion `β = β1 + 2β2`, and `F` below uses it to move sets from
//! `F_4^{2ℓ}` into `R × F_4^{2ℓ-2}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::group::{GroupElement, GroupSpec};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RingElement {
    a0: u8,
    a1: u8,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { a0: 0, a1: 0 };
    pub const ONE: RingElement = RingElement { a0: 1, a1: 0 };
    pub const XI: RingElement = RingElement { a0: 0, a1: 1 };
    pub const TWO: RingElement = RingElement { a0: 2, a1: 0 };

    pub fn new(a0: u8, a1: u8) -> Self {
        RingElement { a0: a0 % 4, a1: a1 % 4 }
    }

    pub fn coords(self) -> (u8, u8) {
        (self.a0, self.a1)
    }

    /// All 16 elements, ordered by `a0 + 4·a1`.
    pub fn all() -> impl Iterator<Item = RingElement> {
        (0..16u8).map(|i| RingElement::new(i % 4, i / 4))
    }

    /// Membership in the maximal ideal `2R`.
    pub fn is_in_maximal_ideal(self) -> bool {
        self.a0.is_multiple_of(2) && self.a1.is_multiple_of(2)
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(RingElement::ONE, |acc, _| acc * self)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}ξ", self.a0, self.a1)
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, r: RingElement) -> RingElement {
        RingElement::new(self.a0 + r.a0, self.a1 + r.a1)
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::new(4 - self.a0, 4 - self.a1)
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, r: RingElement) -> RingElement {
        self + (-r)
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, r: RingElement) -> RingElement {
        // ξ² = -1 - ξ
        let (a, b, c, d) = (self.a0 as u32, self.a1 as u32, r.a0 as u32, r.a1 as u32);
        let bd = b * d;
        RingElement::new(((a * c + 3 * bd) % 4) as u8, ((a * d + b * c + 3 * bd) % 4) as u8)
    }
}

/// `T = (0, 1, ξ, ξ²)`, in this fixed order.
pub const TEICHMULLER: [RingElement; 4] =
    [RingElement::ZERO, RingElement::ONE, RingElement::XI, RingElement { a0: 3, a1: 3 }];

/// `GR(4,2)` together with its residue field `F_4` (the built-in `F_4`, whose
/// primitive element is `α = π(ξ)`).
#[derive(Clone, Debug)]
pub struct GaloisRing {
    f4: Arc<FieldSpec>,
}

impl Default for GaloisRing {
    fn default() -> Self {
        Self::new()
    }
}

impl GaloisRing {
    pub fn new() -> Self {
        GaloisRing { f4: FieldSpec::builtin(4).expect("F4 is built in") }
    }

    pub fn residue_field(&self) -> &Arc<FieldSpec> {
        &self.f4
    }

    /// `π : R → R/2R ≅ F_4`, `π(ξ) = α`.
    pub fn pi(&self, b: RingElement) -> FieldElement {
        self.f4
            .from_coeffs(&[(b.a0 % 2) as u32, (b.a1 % 2) as u32])
            .expect("two binary coefficients")
    }

    /// `π_T⁻¹ : F_4 → T`.
    pub fn teichmuller_lift(&self, x: FieldElement) -> RingElement {
        *TEICHMULLER.iter().find(|&&t| self.pi(t) == x).expect("π restricted to T is onto F_4")
    }

    /// `β = β1 + 2β2` with `β1, β2 ∈ T`.
    pub fn two_adic_decompose(&self, b: RingElement) -> (RingElement, RingElement) {
        let b1 = self.teichmuller_lift(self.pi(b));
        let rest = b - b1;
        debug_assert!(rest.is_in_maximal_ideal());
        let half = RingElement::new(rest.a0 / 2, rest.a1 / 2);
        (b1, self.teichmuller_lift(self.pi(half)))
    }

    /// `f : β1 + 2β2 ↦ β1² + 2β2²`.
    pub fn frobenius(&self, b: RingElement) -> RingElement {
        let (b1, b2) = self.two_adic_decompose(b);
        b1 * b1 + RingElement::TWO * (b2 * b2)
    }

    /// `Tr(β) = β + β^f`, an element of `Z_4`.
    pub fn trace(&self, b: RingElement) -> u8 {
        let t = b + self.frobenius(b);
        debug_assert_eq!(t.a1, 0, "trace must land in Z_4");
        t.a0
    }

    /// `ψ_β(x) = i^{Tr(βx)}` in `Z[ζ_4]`.
    pub fn ring_character(&self, beta: RingElement, x: RingElement) -> CyclotomicInt {
        CyclotomicInt::zeta_pow(4, self.trace(beta * x) as i64)
    }

    /// `F : F_4^{2ℓ} → R × F_4^{2ℓ-2}`,
    /// `(x1, x2, x3, …) ↦ (π_T⁻¹(x1) + 2π_T⁻¹(x2); x3, …)`.
    pub fn lift(&self, x: &[FieldElement]) -> Result<(RingElement, Vec<FieldElement>)> {
        if x.len() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: x.len() });
        }
        let r = self.teichmuller_lift(x[0]) + RingElement::TWO * self.teichmuller_lift(x[1]);
        Ok((r, x[2..].to_vec()))
    }

    /// `F⁻¹ : (ξ1 + 2ξ2; x3, …) ↦ (π(ξ1), π(ξ2), x3, …)`.
    pub fn unlift(&self, r: RingElement, rest: &[FieldElement]) -> Vec<FieldElement> {
        let (b1, b2) = self.two_adic_decompose(r);
        let mut out = Vec::with_capacity(rest.len() + 2);
        out.push(self.pi(b1));
        out.push(self.pi(b2));
        out.extend_from_slice(rest);
        out
    }
}

/// The additive group of `R × F_4^{n}` identified with `Z_4² × Z_2^{2n}`:
/// `a0 + a1ξ ↦ (a0, a1)` and each `F_4` coordinate by its two polynomial-basis
/// bits.
#[derive(Clone, Debug)]
pub struct LiftedSpace {
    ring: GaloisRing,
    tail: usize,
    group: GroupSpec,
}

impl LiftedSpace {
    /// `R × F_4^{tail}`.
    pub fn new(tail: usize) -> Result<Self> {
        let mut factors = vec![4, 4];
        factors.extend(std::iter::repeat_n(2, 2 * tail));
        Ok(LiftedSpace { ring: GaloisRing::new(), tail, group: GroupSpec::new(factors)? })
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn tail_len(&self) -> usize {
        self.tail
    }

    pub fn to_group(&self, r: RingElement, rest: &[FieldElement]) -> Result<GroupElement> {
        if rest.len() != self.tail {
            return Err(Error::DimensionMismatch { expected: self.tail, got: rest.len() });
        }
        let f4 = self.ring.residue_field();
        let mut residues = vec![r.a0 as u32, r.a1 as u32];
        for &x in rest {
            residues.extend(f4.coeffs(x));
        }
        Ok(GroupElement::new(residues))
    }

    pub fn from_group(&self, g: &GroupElement) -> Result<(RingElement, Vec<FieldElement>)> {
        self.group.rank(g)?;
        let res = g.residues();
        let f4 = self.ring.residue_field();
        let rest = res[2..].chunks(2).map(|c| f4.from_coeffs(c)).collect::<Result<Vec<_>>>()?;
        Ok((RingElement::new(res[0] as u8, res[1] as u8), rest))
    }

    pub fn rank(&self, r: RingElement, rest: &[FieldElement]) -> Result<usize> {
        self.group.rank(&self.to_group(r, rest)?)
    }

    /// `Ψ = ψ_β ⊗ χ_{w}` at `(x0; x)`: `i^{Tr(β x0)} · (-1)^{tr(Σ w_j x_j)}`.
    pub fn product_character(
        &self,
        beta: RingElement,
        w: &[FieldElement],
        x0: RingElement,
        x: &[FieldElement],
    ) -> Result<CyclotomicInt> {
        if w.len() != self.tail || x.len() != self.tail {
            return Err(Error::DimensionMismatch { expected: self.tail, got: w.len().min(x.len()) });
        }
        let f4 = self.ring.residue_field();
        let dot = w.iter().zip(x).fold(f4.zero(), |acc, (&a, &b)| f4.add(acc, f4.mul(a, b)));
        let sign = 2 * f4.absolute_trace(dot) as i64;
        Ok(CyclotomicInt::zeta_pow(4, self.ring.trace(beta * x0) as i64 + sign))
    }

    /// The group-character label `a` with `χ_a = ψ_β ⊗ χ_w` under the bridge,
    /// read off from the values on the generators.
    pub fn product_character_label(&self, beta: RingElement, w: &[FieldElement]) -> Result<GroupElement> {
        let f4 = self.ring.residue_field();
        let zero_tail = vec![f4.zero(); self.tail];
        let exponent_at = |x0: RingElement, x: &[FieldElement]| -> Result<u32> {
            let v = self.product_character(beta, w, x0, x)?;
            (0..4u32)
                .find(|&e| CyclotomicInt::zeta_pow(4, e as i64) == v)
                .ok_or_else(|| Error::Internal("character value is not a 4th root of unity".into()))
        };
        let mut label = vec![
            exponent_at(RingElement::ONE, &zero_tail)?,
            exponent_at(RingElement::XI, &zero_tail)?,
        ];
        for j in 0..self.tail {
            for bit in 0..2u32 {
                let mut x = zero_tail.clone();
                x[j] = f4.from_coeffs(&[(bit == 0) as u32, bit])?;
                // ζ_4^{2·a} = (-1)^a on a Z_2 factor
                label.push(exponent_at(RingElement::ZERO, &x)? / 2);
            }
        }
        Ok(GroupElement::new(label))
    }
}
