//! Finite abelian groups `Z_{m_1} × ⋯ × Z_{m_t}`, dense subsets, exact
//! characters, and counting kernels (differences, convolution).
//!
//! Elements are residue vectors. The rank of an element is its mixed-radix
//! value with the *first* factor least significant, so the rank of a vector
//! over `F_{p^s}` laid out coordinate by coordinate equals its rank as a
//! vector of field-element ranks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{power_basis_integer, CyclotomicInt};
use crate::error::{Error, Result};

/// Largest supported group order.
pub const MAX_ORDER: usize = 1 << 20;

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
    exponent: u32,
}

impl GroupSpec {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        let mut order: u128 = 1;
        let mut exponent = 1u32;
        let mut strides = Vec::with_capacity(factors.len());
        for &m in &factors {
            if m < 2 {
                return Err(Error::InvalidFactor(m));
            }
            strides.push(order as usize);
            order *= m as u128;
            if order > MAX_ORDER as u128 {
                return Err(Error::GroupTooLarge(order));
            }
            exponent = exponent / gcd(exponent, m) * m;
        }
        Ok(GroupSpec { factors, strides, order: order as usize, exponent })
    }

    /// `Z_p^n`.
    pub fn elementary(p: u32, n: usize) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_elementary_abelian(&self) -> bool {
        self.factors.iter().all(|&m| m == self.factors[0]) && is_prime(self.factors[0])
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.factors.len()] }
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.residues.len() != self.factors.len()
            || g.residues.iter().zip(&self.factors).any(|(r, m)| r >= m)
        {
            return Err(Error::ElementOutOfRange {
                residues: g.residues.clone(),
                factors: self.factors.clone(),
            });
        }
        Ok(())
    }

    pub fn rank(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(g.residues.iter().zip(&self.strides).map(|(&r, &s)| r as usize * s).sum())
    }

    pub fn unrank(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::IndexOutOfRange { index, order: self.order });
        }
        Ok(GroupElement { residues: self.digits(index) })
    }

    pub(crate) fn digits(&self, mut index: usize) -> Vec<u32> {
        self.factors
            .iter()
            .map(|&m| {
                let d = (index % m as usize) as u32;
                index /= m as usize;
                d
            })
            .collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let residues =
            a.residues.iter().zip(&b.residues).zip(&self.factors).map(|((x, y), m)| (x + y) % m).collect();
        Ok(GroupElement { residues })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a.residues.iter().zip(&self.factors).map(|(x, m)| (m - x) % m).collect();
        Ok(GroupElement { residues })
    }

    pub fn add_ranks(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for (&m, &s) in self.factors.iter().zip(&self.strides) {
            let m = m as usize;
            out += ((a % m + b % m) % m) * s;
            a /= m;
            b /= m;
        }
        out
    }

    pub fn neg_rank(&self, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        for (&m, &s) in self.factors.iter().zip(&self.strides) {
            let m = m as usize;
            out += ((m - a % m) % m) * s;
            a /= m;
        }
        out
    }

    pub fn sub_ranks(&self, a: usize, b: usize) -> usize {
        self.add_ranks(a, self.neg_rank(b))
    }

    /// Exponent `e` with `χ_label(x) = ζ_L^e`, `L` the group exponent.
    pub(crate) fn character_exponent(&self, label: &[u32], x: &[u32]) -> u32 {
        let l = self.exponent as u64;
        let mut e = 0u64;
        for ((&a, &b), &m) in label.iter().zip(x).zip(&self.factors) {
            e += (l / m as u64) * (a as u64 * b as u64 % m as u64);
        }
        (e % l) as u32
    }

    /// The standard character `χ_a(x) = Π ζ_{m_j}^{a_j x_j}` as an element of
    /// `Z[ζ_L]`, `L` the group exponent.
    pub fn character_value(&self, label: &GroupElement, x: &GroupElement) -> Result<CyclotomicInt> {
        self.check(label)?;
        self.check(x)?;
        let e = self.character_exponent(&label.residues, &x.residues);
        Ok(CyclotomicInt::zeta_pow(self.exponent, e as i64))
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| GroupElement { residues: self.digits(i) })
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec{:?}", self.factors)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Z4^2 x Z2^4 style, grouping equal consecutive factors.
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let m = self.factors[i];
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == m {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z{m}") } else { format!("Z{m}^{}", j - i) });
            i = j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn new(residues: Vec<u32>) -> Self {
        GroupElement { residues }
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// A subset of a group as a dense membership table indexed by rank.
#[derive(Clone, PartialEq, Eq)]
pub struct SubsetIndicator {
    group: GroupSpec,
    bits: Vec<bool>,
}

impl SubsetIndicator {
    pub fn empty(group: &GroupSpec) -> Self {
        SubsetIndicator { group: group.clone(), bits: vec![false; group.order()] }
    }

    pub fn from_ranks(group: &GroupSpec, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(group);
        for r in ranks {
            if r >= group.order() {
                return Err(Error::IndexOutOfRange { index: r, order: group.order() });
            }
            s.bits[r] = true;
        }
        Ok(s)
    }

    pub fn from_elements<'a>(
        group: &GroupSpec,
        elements: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let mut s = Self::empty(group);
        for g in elements {
            let r = group.rank(g)?;
            s.bits[r] = true;
        }
        Ok(s)
    }

    pub fn from_predicate(group: &GroupSpec, mut pred: impl FnMut(usize) -> bool) -> Self {
        SubsetIndicator { group: group.clone(), bits: (0..group.order()).map(&mut pred).collect() }
    }

    /// `G ∖ {0}`.
    pub fn nonidentity(group: &GroupSpec) -> Self {
        Self::from_predicate(group, |r| r != 0)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn contains(&self, rank: usize) -> bool {
        self.bits[rank]
    }

    pub fn insert(&mut self, rank: usize) {
        self.bits[rank] = true;
    }

    pub fn remove(&mut self, rank: usize) {
        self.bits[rank] = false;
    }

    pub fn cardinality(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.iter_ranks().collect()
    }

    pub fn iter_ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.iter_ranks().map(|r| GroupElement { residues: self.group.digits(r) }).collect()
    }

    pub fn contains_identity(&self) -> bool {
        self.bits[0]
    }

    /// First element `x ∈ S` (by rank) with `-x ∉ S`.
    pub fn first_asymmetric(&self) -> Option<usize> {
        self.iter_ranks().find(|&r| !self.bits[self.group.neg_rank(r)])
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetric().is_none()
    }

    /// `-S`.
    pub fn negated(&self) -> Self {
        let mut out = Self::empty(&self.group);
        for r in self.iter_ranks() {
            out.bits[self.group.neg_rank(r)] = true;
        }
        out
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.factors.clone(),
                right: other.group.factors.clone(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect();
        Ok(SubsetIndicator { group: self.group.clone(), bits })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect();
        Ok(SubsetIndicator { group: self.group.clone(), bits })
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a && !*b).collect();
        Ok(SubsetIndicator { group: self.group.clone(), bits })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.group == other.group && self.bits.iter().zip(&other.bits).all(|(a, b)| !*a || *b)
    }

    /// `(G ∖ {0}) ∖ S`.
    pub fn complement_nonidentity(&self) -> Self {
        let bits = self.bits.iter().enumerate().map(|(i, &b)| i != 0 && !b).collect();
        SubsetIndicator { group: self.group.clone(), bits }
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Debug for SubsetIndicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetIndicator({:?}, |S|={})", self.group, self.cardinality())
    }
}

/// `Σ_{d∈S} χ_label(d)`.
pub fn character_sum(s: &SubsetIndicator, label: &GroupElement) -> Result<CyclotomicInt> {
    let g = s.group();
    g.check(label)?;
    let l = g.exponent();
    let mut basis = vec![0i64; l as usize];
    for r in s.iter_ranks() {
        basis[g.character_exponent(label.residues(), &g.digits(r)) as usize] += 1;
    }
    Ok(CyclotomicInt::from_power_basis(l, &basis))
}

/// Whether the multidimensional transform applies to this group.
pub fn has_fast_transform(group: &GroupSpec) -> bool {
    matches!(group.exponent(), 2..=4)
}

/// Full character spectrum of a function on the group, kept in the power
/// basis of the group ring `Z[C_L]` (coefficients of `1, ζ, …, ζ^{L-1}`) so
/// that multiplication by a root of unity is a rotation.
#[derive(Clone, Debug)]
pub struct Spectrum {
    group: GroupSpec,
    level: u32,
    values: Vec<[i64; 4]>,
}

impl Spectrum {
    /// Transform of the indicator of `s`. `None` when the group exponent is
    /// not 2, 3 or 4.
    pub fn of(s: &SubsetIndicator) -> Option<Self> {
        let group = s.group();
        if !has_fast_transform(group) {
            return None;
        }
        let mut values: Vec<[i64; 4]> =
            s.bits().iter().map(|&b| [b as i64, 0, 0, 0]).collect();
        transform_in_place(group, &mut values, false);
        Some(Spectrum { group: group.clone(), level: group.exponent(), values })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn value(&self, label: usize) -> CyclotomicInt {
        CyclotomicInt::from_power_basis(self.level, &self.values[label][..self.level as usize])
    }

    pub fn to_cyclotomic(&self) -> Vec<CyclotomicInt> {
        (0..self.values.len()).map(|i| self.value(i)).collect()
    }

    /// `Some(n)` when the entry at `label` is a rational integer.
    pub fn integer_value(&self, label: usize) -> Option<i64> {
        power_basis_integer(self.level, &self.values[label][..self.level as usize])
    }

    pub fn pointwise_product(&self, other: &Spectrum) -> Spectrum {
        assert_eq!(self.group, other.group, "spectra over different groups");
        let l = self.level as usize;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let mut c = [0i64; 4];
                for i in 0..l {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..l {
                        c[(i + j) % l] += a[i] * b[j];
                    }
                }
                c
            })
            .collect();
        Spectrum { group: self.group.clone(), level: self.level, values }
    }

    pub fn add_assign(&mut self, other: &Spectrum) {
        assert_eq!(self.group, other.group, "spectra over different groups");
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            for i in 0..4 {
                a[i] += b[i];
            }
        }
    }

    /// Invert the transform, returning the integer function it came from.
    /// Fails if some entry is not an integer multiple of the group order,
    /// which would mean the spectrum is not the transform of an integer
    /// function.
    pub fn inverse(&self) -> Result<Vec<i64>> {
        let mut values = self.values.clone();
        transform_in_place(&self.group, &mut values, true);
        let v = self.group.order() as i64;
        values
            .iter()
            .enumerate()
            .map(|(i, c)| match power_basis_integer(self.level, &c[..self.level as usize]) {
                Some(n) if n % v == 0 => Ok(n / v),
                _ => Err(Error::Internal(format!("inverse transform not integral at rank {i}"))),
            })
            .collect()
    }
}

fn rotate_add(acc: &mut [i64; 4], v: &[i64; 4], k: usize, l: usize) {
    for i in 0..l {
        acc[(i + k) % l] += v[i];
    }
}

/// In-place multidimensional DFT over `Z[C_L]`, one cyclic axis at a time.
/// The inverse direction uses `ζ^{-1}` and does not divide by the order.
fn transform_in_place(group: &GroupSpec, values: &mut [[i64; 4]], inverse: bool) {
    let l = group.exponent() as usize;
    let mut buf = [[0i64; 4]; 4];
    for (&m, &stride) in group.factors.iter().zip(&group.strides) {
        let m = m as usize;
        let step = l / m;
        let block = m * stride;
        for outer in (0..values.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (a, out) in buf.iter_mut().enumerate().take(m) {
                    *out = [0; 4];
                    for x in 0..m {
                        let e = (step * a * x) % l;
                        let k = if inverse { (l - e) % l } else { e };
                        rotate_add(out, &values[base + x * stride], k, l);
                    }
                }
                for (a, out) in buf.iter().enumerate().take(m) {
                    values[base + a * stride] = *out;
                }
            }
        }
    }
}

/// `Σ_{d∈S} χ_a(d)` for every label `a`, indexed by label rank.
pub fn all_character_sums(s: &SubsetIndicator) -> Vec<CyclotomicInt> {
    match Spectrum::of(s) {
        Some(spec) => spec.to_cyclotomic(),
        None => {
            let g = s.group();
            let members: Vec<Vec<u32>> = s.iter_ranks().map(|r| g.digits(r)).collect();
            let l = g.exponent() as usize;
            (0..g.order())
                .map(|a| {
                    let label = g.digits(a);
                    let mut basis = vec![0i64; l];
                    for x in &members {
                        basis[g.character_exponent(&label, x) as usize] += 1;
                    }
                    CyclotomicInt::from_power_basis(l as u32, &basis)
                })
                .collect()
        }
    }
}

/// `counts[g] = #{(d1, d2) ∈ S×S : d1 ≠ d2, d1 - d2 = g}` by direct
/// enumeration of pairs.
pub fn difference_counts(s: &SubsetIndicator) -> Vec<u64> {
    let g = s.group();
    let mut counts = vec![0u64; g.order()];
    let members = s.ranks();
    if g.factors.iter().all(|&m| m == 2) {
        for &a in &members {
            for &b in &members {
                counts[a ^ b] += 1;
            }
        }
    } else {
        let digits: Vec<Vec<u32>> = members.iter().map(|&r| g.digits(r)).collect();
        for da in &digits {
            for db in &digits {
                let mut r = 0usize;
                for (i, &m) in g.factors.iter().enumerate() {
                    r += ((da[i] + m - db[i]) % m) as usize * g.strides[i];
                }
                counts[r] += 1;
            }
        }
    }
    counts[0] = 0;
    counts
}

/// `counts[y] = Σ_z A(z)·B(y - z)`.
pub fn convolve(a: &SubsetIndicator, b: &SubsetIndicator) -> Result<Vec<u64>> {
    a.same_group(b)?;
    match (Spectrum::of(a), Spectrum::of(b)) {
        (Some(sa), Some(sb)) => {
            Ok(sa.pointwise_product(&sb).inverse()?.into_iter().map(|c| c as u64).collect())
        }
        _ => {
            let g = a.group();
            let mut counts = vec![0u64; g.order()];
            let bs = b.ranks();
            for x in a.iter_ranks() {
                for &y in &bs {
                    counts[g.add_ranks(x, y)] += 1;
                }
            }
            Ok(counts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z4_z2() -> GroupSpec {
        GroupSpec::new(vec![4, 2]).unwrap()
    }

    #[test]
    fn order_and_exponent() {
        let g = GroupSpec::new(vec![4, 4, 2, 2, 2, 2]).unwrap();
        assert_eq!(g.order(), 256);
        assert_eq!(g.exponent(), 4);
        assert!(!g.is_elementary_abelian());
        assert_eq!(GroupSpec::new(vec![2, 3]).unwrap().exponent(), 6);
        assert!(GroupSpec::elementary(3, 8).unwrap().is_elementary_abelian());
    }

    #[test]
    fn rejects_bad_groups() {
        assert_eq!(GroupSpec::new(vec![4, 1]), Err(Error::InvalidFactor(1)));
        assert!(matches!(GroupSpec::elementary(2, 21), Err(Error::GroupTooLarge(_))));
    }

    #[test]
    fn rank_unrank_small() {
        let g = z4_z2();
        assert_eq!(g.unrank(0).unwrap(), g.identity());
        // first factor least significant: (1,1) -> 1 + 4
        assert_eq!(g.rank(&GroupElement::new(vec![1, 1])).unwrap(), 5);
        assert_eq!(g.unrank(5).unwrap().residues(), &[1, 1]);
        assert!(matches!(g.unrank(8), Err(Error::IndexOutOfRange { .. })));
        assert!(g.rank(&GroupElement::new(vec![4, 0])).is_err());
    }

    #[test]
    fn rank_unrank_roundtrip_exhaustive() {
        let g = GroupSpec::new(vec![4, 4, 2, 2, 2, 2]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.rank(&g.unrank(i).unwrap()).unwrap(), i);
        }
    }

    #[test]
    fn principal_and_sign_characters() {
        let z2 = GroupSpec::new(vec![2]).unwrap();
        let one = GroupElement::new(vec![1]);
        assert_eq!(z2.character_value(&one, &one).unwrap().as_integer(), Some(-1));
        let g = z4_z2();
        for x in g.elements() {
            assert_eq!(g.character_value(&g.identity(), &x).unwrap(), CyclotomicInt::one(4));
        }
    }

    #[test]
    fn z4_generator_character_is_i() {
        let z4 = GroupSpec::new(vec![4]).unwrap();
        let one = GroupElement::new(vec![1]);
        let v = z4.character_value(&one, &one).unwrap();
        assert_eq!(v.coeffs(), &[0, 1]);
        let v4 = &(&v * &v) * &(&v * &v);
        assert_eq!(v4, CyclotomicInt::one(4));
    }

    #[test]
    fn character_sum_edge_cases() {
        let g = z4_z2();
        let label = GroupElement::new(vec![1, 0]);
        assert!(character_sum(&SubsetIndicator::empty(&g), &label).unwrap().is_zero());
        let all = SubsetIndicator::from_predicate(&g, |_| true);
        assert!(character_sum(&all, &label).unwrap().is_zero());
        assert_eq!(character_sum(&all, &g.identity()).unwrap().as_integer(), Some(8));
    }

    #[test]
    fn difference_counts_two_element_set() {
        let g = GroupSpec::new(vec![8]).unwrap();
        let s = SubsetIndicator::from_ranks(&g, [1, 7]).unwrap();
        let c = difference_counts(&s);
        assert_eq!(c[2], 1);
        assert_eq!(c[6], 1);
        assert_eq!(c.iter().sum::<u64>(), 2);
        // 2a = -2a merges
        let g4 = GroupSpec::new(vec![4]).unwrap();
        let s = SubsetIndicator::from_ranks(&g4, [1, 3]).unwrap();
        let c = difference_counts(&s);
        assert_eq!(c[2], 2);
        assert_eq!(c.iter().sum::<u64>(), 2);
    }

    #[test]
    fn difference_counts_small_sets_vanish() {
        let g = z4_z2();
        assert!(difference_counts(&SubsetIndicator::empty(&g)).iter().all(|&c| c == 0));
        let s = SubsetIndicator::from_ranks(&g, [3]).unwrap();
        assert!(difference_counts(&s).iter().all(|&c| c == 0));
    }

    #[test]
    fn convolve_with_identity_and_singletons() {
        let g = GroupSpec::new(vec![4, 4, 2]).unwrap();
        let b = SubsetIndicator::from_ranks(&g, [3, 5, 17, 30]).unwrap();
        let e = SubsetIndicator::from_ranks(&g, [0]).unwrap();
        let c = convolve(&e, &b).unwrap();
        for r in 0..g.order() {
            assert_eq!(c[r], b.contains(r) as u64);
        }
        let a = SubsetIndicator::from_ranks(&g, [5]).unwrap();
        let c = convolve(&a, &a).unwrap();
        assert_eq!(c[g.add_ranks(5, 5)], 1);
        assert_eq!(c.iter().sum::<u64>(), 1);
    }

    #[test]
    fn convolve_rejects_group_mismatch() {
        let a = SubsetIndicator::empty(&z4_z2());
        let b = SubsetIndicator::empty(&GroupSpec::new(vec![8]).unwrap());
        assert!(matches!(convolve(&a, &b), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn slow_path_for_exponent_five() {
        let g = GroupSpec::new(vec![5, 5]).unwrap();
        let s = SubsetIndicator::from_ranks(&g, [1, 4, 5, 20]).unwrap();
        let sums = all_character_sums(&s);
        for a in 0..g.order() {
            assert_eq!(sums[a], character_sum(&s, &g.unrank(a).unwrap()).unwrap());
        }
        assert_eq!(sums[0].as_integer(), Some(4));
    }

    fn arb_group() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            Just(vec![2u32; 6]),
            Just(vec![4u32, 4, 2, 2, 2, 2]),
            Just(vec![3u32; 4]),
            Just(vec![4u32, 2, 2]),
            Just(vec![3u32, 3]),
        ]
        .prop_map(|f| GroupSpec::new(f).unwrap())
    }

    fn arb_subset() -> impl Strategy<Value = SubsetIndicator> {
        arb_group().prop_flat_map(|g| {
            let n = g.order();
            proptest::collection::vec(any::<bool>(), n).prop_map(move |bits| {
                SubsetIndicator::from_predicate(&g, |r| bits[r])
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn fast_transform_matches_per_label_sums(s in arb_subset()) {
            let g = s.group().clone();
            let fast = all_character_sums(&s);
            for a in 0..g.order() {
                let slow = character_sum(&s, &g.unrank(a).unwrap()).unwrap();
                prop_assert_eq!(&fast[a], &slow);
            }
            prop_assert_eq!(fast[0].as_integer(), Some(s.cardinality() as i64));
        }

        #[test]
        fn parseval(s in arb_subset()) {
            let g = s.group().clone();
            let sums = all_character_sums(&s);
            let mut total = CyclotomicInt::zero(g.exponent());
            for t in &sums {
                total = &total + &(t * &t.conj());
            }
            prop_assert_eq!(total.as_integer(), Some((g.order() * s.cardinality()) as i64));
        }

        #[test]
        fn differences_equal_convolution_with_negation(s in arb_subset()) {
            let d = difference_counts(&s);
            let c = convolve(&s, &s.negated()).unwrap();
            for r in 1..s.group().order() {
                prop_assert_eq!(d[r], c[r]);
            }
            prop_assert_eq!(d[0], 0);
            let k = s.cardinality() as u64;
            prop_assert_eq!(d.iter().sum::<u64>(), k * k - k);
        }

        #[test]
        fn characters_are_multiplicative(g in arb_group(), a in 0usize..1 << 20, x in 0usize..1 << 20, y in 0usize..1 << 20) {
            let n = g.order();
            let (a, x, y) = (g.unrank(a % n).unwrap(), g.unrank(x % n).unwrap(), g.unrank(y % n).unwrap());
            let lhs = g.character_value(&a, &g.add(&x, &y).unwrap()).unwrap();
            let rhs = &g.character_value(&a, &x).unwrap() * &g.character_value(&a, &y).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn negation_is_inverse(g in arb_group(), x in 0usize..1 << 20) {
            let x = x % g.order();
            prop_assert_eq!(g.add_ranks(x, g.neg_rank(x)), 0);
            let e = g.unrank(x).unwrap();
            prop_assert_eq!(g.add(&g.neg(&e).unwrap(), &e).unwrap(), g.identity());
        }
    }

    #[test]
    fn convolution_total_matches_double_loop_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = GroupSpec::elementary(2, 6).unwrap();
        for _ in 0..20 {
            let a = SubsetIndicator::from_predicate(&g, |_| rng.gen_bool(0.3));
            let b = SubsetIndicator::from_predicate(&g, |_| rng.gen_bool(0.3));
            let mut oracle = vec![0u64; g.order()];
            for z in 0..g.order() {
                for y in 0..g.order() {
                    if a.contains(z) && b.contains(g.sub_ranks(y, z)) {
                        oracle[y] += 1;
                    }
                }
            }
            let c = convolve(&a, &b).unwrap();
            assert_eq!(c, oracle);
            assert_eq!(c.iter().sum::<u64>(), (a.cardinality() * b.cardinality()) as u64);
        }
    }
}
