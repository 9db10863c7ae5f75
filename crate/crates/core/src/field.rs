//! Finite fields `F_{p^s}` in a polynomial basis, with subfield traces,
//! subfield embeddings and the identification of `(F_q^n, +)` with
//! `Z_p^{s·n}`.
//!
//! An element is stored as its rank `Σ c_i p^i`, where `c_i` is the
//! coefficient of `x^i` in the polynomial basis. Multiplication goes through
//! discrete log tables built from the primitive element.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{is_prime, GroupElement, GroupSpec};

/// Built-in moduli `(p, s, coefficients low→high)`. These are the Conway
/// polynomials, so `x` is primitive and the subfield embeddings chosen by
/// [`FieldSpec::subfield`] land on the same moduli.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 1, &[9, 1]),
    (13, 1, &[11, 1]),
];

/// Split a prime power `q = p^s`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut n, mut s) = (q, 0);
    while n % p == 0 {
        n /= p;
        s += 1;
    }
    (n == 1).then_some((p, s))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn rank(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

// Polynomials over Z_p as digit vectors, lowest degree first.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let s = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u64 * y as u64;
        }
    }
    let p64 = p as u64;
    for c in prod.iter_mut() {
        *c %= p64;
    }
    for i in (s..prod.len()).rev() {
        let c = prod[i] % p64;
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let k = i - s + j;
            prod[k] = (prod[k] + (p64 - c) * m as u64) % p64;
        }
    }
    prod.truncate(s);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_rem(a: &[u32], d: &[u32], p: u32) -> Vec<u32> {
    // d monic
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    while r.len() > dd {
        let c = *r.last().unwrap() % p;
        let top = r.len() - 1;
        if c != 0 {
            for (j, &m) in d.iter().enumerate() {
                let k = top - dd + j;
                r[k] = (r[k] + (p - c) * m % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic irreducibility over `Z_p` by trial division with every monic
/// polynomial of degree at most half the degree.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let s = modulus.len() - 1;
    for deg in 1..=s / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut d = Vec::with_capacity(deg + 1);
            let mut t = idx;
            for _ in 0..deg {
                d.push((t % p as u64) as u32);
                t /= p as u64;
            }
            d.push(1);
            if poly_rem(modulus, &d, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub struct FieldSpec {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[modulus {:?}, g = {}]", self.order, self.modulus, self.primitive)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.primitive == other.primitive
    }
}
impl Eq for FieldSpec {}

impl FieldSpec {
    /// Field with a user-supplied monic modulus (coefficients low→high). The
    /// primitive element, if not given, is the smallest-rank generator.
    pub fn new(p: u32, modulus: Vec<u32>, primitive: Option<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2
            || *modulus.last().unwrap() != 1
            || modulus.iter().any(|&c| c >= p)
            || !is_irreducible(&modulus, p)
        {
            return Err(Error::ReducibleModulus(modulus));
        }
        let degree = (modulus.len() - 1) as u32;
        let order64 = (p as u64).pow(degree);
        if order64 > crate::group::MAX_ORDER as u64 {
            return Err(Error::GroupTooLarge(order64 as u128));
        }
        let order = order64 as u32;
        let to_digits = |mut r: u32| -> Vec<u32> {
            (0..degree)
                .map(|_| {
                    let d = r % p;
                    r /= p;
                    d
                })
                .collect()
        };
        let from_digits =
            |d: &[u32]| -> u32 { d.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let mult_order = |g: u32| -> u64 {
            // smallest k | q-1 with g^k = 1, via prime factors of q-1
            let n = order64 - 1;
            let pow = |e: u64| -> u32 {
                let mut base = to_digits(g);
                let mut acc = to_digits(1);
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = poly_mulmod(&acc, &base, &modulus, p);
                    }
                    base = poly_mulmod(&base, &base, &modulus, p);
                    e >>= 1;
                }
                from_digits(&acc)
            };
            let mut k = n;
            for f in prime_factors(n) {
                while k.is_multiple_of(f) && pow(k / f) == 1 {
                    k /= f;
                }
            }
            k
        };
        let primitive = match primitive {
            Some(g) => {
                if g == 0 || g >= order {
                    return Err(Error::NotPrimitive { order: 0, expected: order64 - 1 });
                }
                let o = mult_order(g);
                if o != order64 - 1 {
                    return Err(Error::NotPrimitive { order: o, expected: order64 - 1 });
                }
                g
            }
            None => (1..order)
                .find(|&g| mult_order(g) == order64 - 1)
                .ok_or_else(|| Error::Internal("field has no primitive element".into()))?,
        };
        let mut exp = Vec::with_capacity(order as usize - 1);
        let mut log = vec![0u32; order as usize];
        let g_digits = to_digits(primitive);
        let mut cur = to_digits(1);
        for k in 0..order - 1 {
            let r = from_digits(&cur);
            exp.push(r);
            log[r as usize] = k;
            cur = poly_mulmod(&cur, &g_digits, &modulus, p);
        }
        Ok(FieldSpec { p, degree, order, modulus, primitive: FieldElement(primitive), exp, log })
    }

    /// The field of order `q` from the built-in modulus table.
    pub fn builtin(q: u32) -> Result<Arc<Self>> {
        let (p, s) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let (_, _, m) = BUILTIN_MODULI
            .iter()
            .find(|(bp, bs, _)| *bp == p && *bs == s)
            .ok_or(Error::NoBuiltinField(q))?;
        Ok(Arc::new(Self::new(p, m.to_vec(), None)?))
    }

    /// Orders available from [`FieldSpec::builtin`].
    pub fn builtin_orders() -> Vec<u32> {
        BUILTIN_MODULI.iter().map(|(p, s, _)| p.pow(*s)).collect()
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, rank: u32) -> Result<FieldElement> {
        if rank >= self.order {
            return Err(Error::IndexOutOfRange { index: rank as usize, order: self.order as usize });
        }
        Ok(FieldElement(rank))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.degree as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::DimensionMismatch { expected: self.degree as usize, got: coeffs.len() });
        }
        Ok(FieldElement(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut r = x.0;
        (0..self.degree)
            .map(|_| {
                let d = r % self.p;
                r /= self.p;
                d
            })
            .collect()
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.degree {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.degree {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.order - 1;
        FieldElement(self.exp[((self.log[a.0 as usize] + self.log[b.0 as usize]) % n) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.order - 1;
        Ok(FieldElement(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.order - 1) as u64;
        FieldElement(self.exp[((self.log[a.0 as usize] as u64 * (e % n)) % n) as usize])
    }

    /// `g^k` for the primitive element `g`; `k` may be negative.
    pub fn primitive_pow(&self, k: i64) -> FieldElement {
        let n = (self.order - 1) as i64;
        FieldElement(self.exp[k.rem_euclid(n) as usize])
    }

    /// Discrete log to base `g`; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    fn check_divisor(&self, sub_degree: u32) -> Result<()> {
        if sub_degree == 0 || !self.degree.is_multiple_of(sub_degree) {
            return Err(Error::NotADivisor { sub: sub_degree, degree: self.degree });
        }
        Ok(())
    }

    /// `tr(x) = Σ_{i<e} x^{q0^i}` onto the subfield of order `q0 = p^sub_degree`,
    /// `e = s / sub_degree`. The result is an element of this field lying in
    /// the subfield.
    pub fn trace_to_subfield(&self, x: FieldElement, sub_degree: u32) -> Result<FieldElement> {
        self.check_divisor(sub_degree)?;
        let q0 = (self.p as u64).pow(sub_degree);
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..self.degree / sub_degree {
            acc = self.add(acc, y);
            y = self.pow(y, q0);
        }
        Ok(acc)
    }

    /// Absolute trace onto the prime field, as an integer residue mod `p`.
    pub fn absolute_trace(&self, x: FieldElement) -> u32 {
        self.trace_to_subfield(x, 1).expect("1 divides every degree").0
    }

    pub fn in_subfield(&self, x: FieldElement, sub_degree: u32) -> bool {
        self.pow(x, (self.p as u64).pow(sub_degree)) == x
    }

    /// The additive group `Z_p^s`.
    pub fn additive_group(&self) -> GroupSpec {
        GroupSpec::elementary(self.p, self.degree as usize).expect("field order is within bounds")
    }

    /// The additive group of `F_q^n`, `Z_p^{s·n}`, laid out coordinate-major.
    pub fn vector_group(&self, n: usize) -> Result<GroupSpec> {
        GroupSpec::elementary(self.p, self.degree as usize * n)
    }

    pub fn as_group_element(&self, x: FieldElement) -> GroupElement {
        GroupElement::new(self.coeffs(x))
    }

    pub fn from_group_element(&self, g: &GroupElement) -> Result<FieldElement> {
        self.from_coeffs(g.residues())
    }

    pub fn vector_as_group_element(&self, v: &[FieldElement]) -> GroupElement {
        GroupElement::new(v.iter().flat_map(|&x| self.coeffs(x)).collect())
    }

    pub fn vector_from_group_element(&self, g: &GroupElement) -> Result<Vec<FieldElement>> {
        let s = self.degree as usize;
        if !g.residues().len().is_multiple_of(s) {
            return Err(Error::DimensionMismatch { expected: s, got: g.residues().len() });
        }
        g.residues().chunks(s).map(|c| self.from_coeffs(c)).collect()
    }

    /// Rank of a vector in `vector_group(v.len())`.
    pub fn vector_rank(&self, v: &[FieldElement]) -> usize {
        v.iter().rev().fold(0usize, |acc, x| acc * self.order as usize + x.0 as usize)
    }

    pub fn vector_from_rank(&self, mut rank: usize, n: usize) -> Vec<FieldElement> {
        let q = self.order as usize;
        (0..n)
            .map(|_| {
                let x = FieldElement((rank % q) as u32);
                rank /= q;
                x
            })
            .collect()
    }

    /// The subfield of degree `sub_degree` as a standalone field whose
    /// primitive element corresponds to `g^{(q-1)/(q0-1)}`.
    pub fn subfield(self: &Arc<Self>, sub_degree: u32) -> Result<Subfield> {
        self.check_divisor(sub_degree)?;
        let p = self.p;
        let q0 = (p as u64).pow(sub_degree);
        let h = self.primitive_pow(((self.order as u64 - 1) / (q0 - 1)) as i64);
        // Minimal polynomial of h over F_p: Π_j (X - h^{p^j}), coefficients in this field.
        let mut poly = vec![FieldElement::ONE];
        let mut root = h;
        for _ in 0..sub_degree {
            let mut next = vec![FieldElement::ZERO; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(c, root));
            }
            poly = next;
            root = self.frobenius(root);
        }
        let modulus: Vec<u32> = poly
            .iter()
            .map(|c| if c.0 < p { Ok(c.0) } else { Err(Error::Internal("minimal polynomial not over F_p".into())) })
            .collect::<Result<_>>()?;
        let sub_primitive = if sub_degree == 1 { h.0 } else { p };
        let spec = Arc::new(FieldSpec::new(p, modulus, Some(sub_primitive))?);

        let mut embed = Vec::with_capacity(spec.order as usize);
        for y in spec.elements() {
            let mut acc = FieldElement::ZERO;
            let mut hp = FieldElement::ONE;
            for c in spec.coeffs(y) {
                for _ in 0..c {
                    acc = self.add(acc, hp);
                }
                hp = self.mul(hp, h);
            }
            embed.push(acc);
        }
        let mut project = vec![None; self.order as usize];
        for (i, &x) in embed.iter().enumerate() {
            project[x.0 as usize] = Some(FieldElement(i as u32));
        }

        let e = (self.degree / sub_degree) as usize;
        let basis: Vec<FieldElement> = (0..e).map(|b| self.primitive_pow(b as i64)).collect();
        let mut coords = vec![Vec::new(); self.order as usize];
        for idx in 0..self.order as usize {
            let y = spec.vector_from_rank(idx, e);
            let x = y.iter().zip(&basis).fold(FieldElement::ZERO, |acc, (&c, &b)| {
                self.add(acc, self.mul(embed[c.0 as usize], b))
            });
            if !coords[x.0 as usize].is_empty() {
                return Err(Error::Internal("subfield basis is not independent".into()));
            }
            coords[x.0 as usize] = y;
        }
        Ok(Subfield { parent: self.clone(), field: spec, sub_degree, embed, project, basis, coords })
    }
}

/// `F_{q0} ⊂ F_q` with its own field structure, the embedding into the parent,
/// and coordinates of parent elements in the basis `1, g, …, g^{e-1}`.
pub struct Subfield {
    parent: Arc<FieldSpec>,
    field: Arc<FieldSpec>,
    sub_degree: u32,
    embed: Vec<FieldElement>,
    project: Vec<Option<FieldElement>>,
    basis: Vec<FieldElement>,
    coords: Vec<Vec<FieldElement>>,
}

impl Subfield {
    pub fn parent(&self) -> &Arc<FieldSpec> {
        &self.parent
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn sub_degree(&self) -> u32 {
        self.sub_degree
    }

    /// `[F_q : F_{q0}]`.
    pub fn relative_degree(&self) -> usize {
        self.basis.len()
    }

    pub fn embed(&self, y: FieldElement) -> FieldElement {
        self.embed[y.0 as usize]
    }

    /// Parent element to subfield element; `None` if it is not in the subfield.
    pub fn project(&self, x: FieldElement) -> Option<FieldElement> {
        self.project[x.0 as usize]
    }

    /// Relative trace, landing in the standalone subfield.
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        let t = self.parent.trace_to_subfield(x, self.sub_degree).expect("divisor checked at construction");
        self.project(t).expect("trace lies in the subfield")
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn coordinates(&self, x: FieldElement) -> &[FieldElement] {
        &self.coords[x.0 as usize]
    }

    pub fn combine(&self, y: &[FieldElement]) -> FieldElement {
        y.iter().zip(&self.basis).fold(FieldElement::ZERO, |acc, (&c, &b)| {
            self.parent.add(acc, self.parent.mul(self.embed(c), b))
        })
    }

    /// Expand each coordinate into `e` subfield coordinates
    /// (coordinate-major, basis-minor).
    pub fn flatten(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        v.iter().flat_map(|&x| self.coordinates(x).iter().copied()).collect()
    }

    pub fn unflatten(&self, u: &[FieldElement]) -> Vec<FieldElement> {
        u.chunks(self.relative_degree()).map(|c| self.combine(c)).collect()
    }
}

/// The kernel of `tr_{q²/q}` on `F_{q²}` from the explicit power formula:
/// `{0} ∪ {g^{(q+1)i}}` for even `q` and `{0} ∪ {g^{(q+1)/2 + (q+1)i}}` for odd `q`.
pub fn trace_zero_elements(field: &FieldSpec) -> Result<Vec<FieldElement>> {
    if !field.degree().is_multiple_of(2) {
        return Err(Error::NotQuadraticExtension(field.order()));
    }
    let q = (field.characteristic() as i64).pow(field.degree() / 2);
    let offset = if field.characteristic() == 2 { 0 } else { (q + 1) / 2 };
    let mut out = vec![FieldElement::ZERO];
    out.extend((0..q - 1).map(|i| field.primitive_pow(offset + (q + 1) * i)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn f4_arithmetic() {
        let f = FieldSpec::builtin(4).unwrap();
        let alpha = f.primitive_element();
        assert_eq!(alpha.rank(), 2);
        let alpha2 = f.mul(alpha, alpha);
        assert_eq!(alpha2, f.add(alpha, f.one()));
        assert_eq!(f.pow(alpha, 3), f.one());
        for x in f.elements() {
            assert_eq!(f.mul(x, f.one()), x);
        }
    }

    #[test]
    fn every_builtin_field_validates() {
        for q in FieldSpec::builtin_orders() {
            let f = FieldSpec::builtin(q).unwrap();
            assert_eq!(f.order(), q);
            for x in f.elements().skip(1) {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one(), "q={q}");
            }
            // Conway moduli make x primitive whenever s > 1
            if f.degree() > 1 {
                assert_eq!(f.primitive_element().rank(), f.characteristic());
            }
        }
    }

    #[test]
    fn rejects_bad_moduli_and_elements() {
        assert_eq!(FieldSpec::new(4, vec![1, 1, 1], None).unwrap_err(), Error::NotPrime(4));
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(matches!(FieldSpec::new(2, vec![1, 0, 1], None), Err(Error::ReducibleModulus(_))));
        // x^2 + 1 is irreducible over F_3 but x has order 4, not 8
        assert!(matches!(FieldSpec::new(3, vec![1, 0, 1], Some(3)), Err(Error::NotPrimitive { order: 4, .. })));
        let f9 = FieldSpec::new(3, vec![1, 0, 1], None).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(FieldSpec::builtin(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(FieldSpec::builtin(17).unwrap_err(), Error::NoBuiltinField(17));
        assert_eq!(f9.inv(f9.zero()), Err(Error::ZeroInverse));
    }

    #[test]
    fn f9_random_inverses() {
        let f = FieldSpec::builtin(9).unwrap();
        for x in f.elements().skip(1) {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            assert_eq!(f.add(x, f.neg(x)), f.zero());
        }
    }

    /// Direct polynomial-arithmetic oracle for multiplication.
    #[test]
    fn log_table_multiplication_matches_polynomials() {
        for q in [8u32, 9, 16, 27] {
            let f = FieldSpec::builtin(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let direct = poly_mulmod(&f.coeffs(a), &f.coeffs(b), f.modulus(), f.characteristic());
                    assert_eq!(f.coeffs(f.mul(a, b)), direct);
                }
            }
        }
    }

    #[test]
    fn f4_trace_of_alpha_is_one() {
        let f = FieldSpec::builtin(4).unwrap();
        let alpha = f.primitive_element();
        assert_eq!(f.trace_to_subfield(alpha, 1).unwrap(), f.one());
        assert_eq!(f.trace_to_subfield(f.zero(), 1).unwrap(), f.zero());
        assert!(matches!(f.trace_to_subfield(alpha, 3), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn trace_chain_f16_transitive() {
        let f16 = FieldSpec::builtin(16).unwrap();
        for x in f16.elements() {
            let to4 = f16.trace_to_subfield(x, 2).unwrap();
            // tr_{4/2} on an element of F4 is y + y^2
            let chained = f16.add(to4, f16.pow(to4, 2));
            assert_eq!(chained, f16.trace_to_subfield(x, 1).unwrap());
            // same chain through the standalone F4
            let sf = f16.subfield(2).unwrap();
            let y = sf.trace(x);
            let via4 = sf.field().trace_to_subfield(y, 1).unwrap();
            assert_eq!(via4.rank(), chained.rank());
        }
    }

    #[test]
    fn frobenius_and_trace_fibers() {
        for q in [4u32, 8, 9, 16, 25, 27, 64, 81] {
            let f = FieldSpec::builtin(q).unwrap();
            let mut fixed = 0;
            for x in f.elements() {
                for y in f.elements().step_by(7) {
                    assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
                }
                if f.frobenius(x) == x {
                    fixed += 1;
                    assert!(x.rank() < f.characteristic());
                }
            }
            assert_eq!(fixed, f.characteristic());
            for sub in (1..=f.degree()).filter(|d| f.degree().is_multiple_of(*d)) {
                let q0 = f.characteristic().pow(sub);
                let mut fibers = std::collections::HashMap::new();
                for x in f.elements() {
                    let t = f.trace_to_subfield(x, sub).unwrap();
                    assert!(f.in_subfield(t, sub));
                    *fibers.entry(t).or_insert(0u32) += 1;
                }
                assert_eq!(fibers.len() as u32, q0, "onto, q={q} sub={sub}");
                assert!(fibers.values().all(|&c| c == q / q0));
            }
        }
    }

    #[test]
    fn subfields_land_on_conway_moduli() {
        for (q, sub) in [(16u32, 2u32), (64, 2), (64, 3), (81, 2), (9, 1), (4, 1), (256, 4), (256, 2)] {
            let f = FieldSpec::builtin(q).unwrap();
            let sf = f.subfield(sub).unwrap();
            let table = FieldSpec::builtin(f.characteristic().pow(sub)).unwrap();
            assert_eq!(sf.field().modulus(), table.modulus(), "q={q} sub={sub}");
            // embedding is a ring homomorphism
            let s = sf.field();
            for a in s.elements() {
                for b in s.elements() {
                    assert_eq!(sf.embed(s.add(a, b)), f.add(sf.embed(a), sf.embed(b)));
                    assert_eq!(sf.embed(s.mul(a, b)), f.mul(sf.embed(a), sf.embed(b)));
                }
            }
            for x in f.elements() {
                assert_eq!(sf.combine(sf.coordinates(x)), x);
            }
        }
    }

    #[test]
    fn trace_zero_formula_small_cases() {
        let f4 = FieldSpec::builtin(4).unwrap();
        let t = trace_zero_elements(&f4).unwrap();
        assert_eq!(t, vec![f4.zero(), f4.one()]);
        let f9 = FieldSpec::builtin(9).unwrap();
        let t = trace_zero_elements(&f9).unwrap();
        assert_eq!(t, vec![f9.zero(), f9.primitive_pow(2), f9.primitive_pow(6)]);
        assert!(t.iter().all(|&x| f9.trace_to_subfield(x, 1).unwrap().is_zero()));
        assert!(trace_zero_elements(&FieldSpec::builtin(8).unwrap()).is_err());
    }

    #[test]
    fn additive_bridge() {
        let f = FieldSpec::builtin(4).unwrap();
        let g = f.additive_group();
        assert_eq!(f.as_group_element(f.zero()), g.identity());
        for x in f.elements() {
            for y in f.elements() {
                let lhs = f.as_group_element(f.add(x, y));
                let rhs = g.add(&f.as_group_element(x), &f.as_group_element(y)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let vg = f.vector_group(4).unwrap();
        for r in 0..vg.order() {
            let v = f.vector_from_rank(r, 4);
            let e = f.vector_as_group_element(&v);
            assert_eq!(vg.rank(&e).unwrap(), r);
            assert_eq!(f.vector_rank(&v), r);
            assert_eq!(f.vector_from_group_element(&e).unwrap(), v);
        }
    }

    /// Additive characters `x ↦ η_p^{tr(wx)}` agree with the group characters
    /// of `Z_p^s` whose label is `(tr(w x^i))_i`.
    #[test]
    fn trace_characters_match_group_characters() {
        for q in [4u32, 9] {
            let f = FieldSpec::builtin(q).unwrap();
            let g = f.additive_group();
            let p = f.characteristic();
            let mut labels = std::collections::HashSet::new();
            for w in f.elements() {
                let label: Vec<u32> = (0..f.degree())
                    .map(|i| {
                        let basis = f.from_coeffs(&(0..f.degree()).map(|j| (i == j) as u32).collect::<Vec<_>>()).unwrap();
                        f.absolute_trace(f.mul(w, basis))
                    })
                    .collect();
                let label = GroupElement::new(label);
                labels.insert(label.clone());
                for x in f.elements() {
                    let direct = crate::cyclotomic::CyclotomicInt::zeta_pow(p, f.absolute_trace(f.mul(w, x)) as i64);
                    let via_group = g.character_value(&label, &f.as_group_element(x)).unwrap();
                    assert_eq!(direct, via_group);
                }
            }
            assert_eq!(labels.len() as u32, q);
        }
    }
}
