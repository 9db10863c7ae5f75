//! Quadratic forms `Q(x) = Σ_{i≤j} c_ij x_i x_j` on `F_q^m`.
//!
//! Polarization is always computed from the definition
//! `B(u,v) = Q(u+v) - Q(u) - Q(v)`; in characteristic 2 there is no symmetric
//! matrix with `Q(x) = xᵀAx / 2`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Subfield};
use crate::group::{GroupSpec, SubsetIndicator};

#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Arc<FieldSpec>,
    dim: usize,
    /// Row-major `dim × dim`; entries below the diagonal stay zero.
    coeffs: Vec<FieldElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    Elliptic,
    Hyperbolic,
}

impl FormType {
    /// `-1` for elliptic, `+1` for hyperbolic.
    pub fn sign(self) -> i64 {
        match self {
            FormType::Elliptic => -1,
            FormType::Hyperbolic => 1,
        }
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormType::Elliptic => "elliptic",
            FormType::Hyperbolic => "hyperbolic",
        })
    }
}

/// Type of a nonsingular even-dimensional form, with the zero count that
/// decided it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTypeTag {
    pub kind: FormType,
    pub nonzero_zeros: u64,
}

/// Number of nonzero zeros of a nonsingular form of the given type on
/// `F_q^{2ℓ}`: `(q^ℓ ∓ 1)(q^{ℓ-1} ± 1)`.
pub fn expected_nonzero_zeros(q: u64, ell: u32, kind: FormType) -> u64 {
    let a = q.pow(ell);
    let b = q.pow(ell - 1);
    match kind {
        FormType::Elliptic => (a + 1) * (b - 1),
        FormType::Hyperbolic => (a - 1) * (b + 1),
    }
}

impl QuadraticForm {
    pub fn zero(field: Arc<FieldSpec>, dim: usize) -> Self {
        QuadraticForm { field, dim, coeffs: vec![FieldElement::ZERO; dim * dim] }
    }

    /// Build from `(i, j, c)` triples with `i ≤ j`; repeated positions add up.
    pub fn from_terms(
        field: Arc<FieldSpec>,
        dim: usize,
        terms: impl IntoIterator<Item = (usize, usize, FieldElement)>,
    ) -> Result<Self> {
        let mut q = Self::zero(field, dim);
        for (i, j, c) in terms {
            if i > j || j >= dim {
                return Err(Error::DimensionMismatch { expected: dim, got: j.max(i) + 1 });
            }
            q.field.element(c.rank())?;
            let idx = i * dim + j;
            q.coeffs[idx] = q.field.add(q.coeffs[idx], c);
        }
        Ok(q)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_ij` for `i ≤ j`; zero below the diagonal.
    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        if i <= j {
            self.coeffs[i * self.dim + j]
        } else {
            FieldElement::ZERO
        }
    }

    fn check_dim(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    pub fn evaluate(&self, v: &[FieldElement]) -> Result<FieldElement> {
        self.check_dim(v)?;
        Ok(self.eval_unchecked(v))
    }

    fn eval_unchecked(&self, v: &[FieldElement]) -> FieldElement {
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            // x_i · Σ_{j≥i} c_ij x_j
            let mut row = FieldElement::ZERO;
            for j in i..self.dim {
                let c = self.coeffs[i * self.dim + j];
                if !c.is_zero() {
                    row = f.add(row, f.mul(c, v[j]));
                }
            }
            acc = f.add(acc, f.mul(v[i], row));
        }
        acc
    }

    pub fn polarize(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let f = &self.field;
        let sum: Vec<FieldElement> = u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(f.sub(f.sub(self.eval_unchecked(&sum), self.eval_unchecked(u)), self.eval_unchecked(v)))
    }

    /// Gram matrix `B(e_i, e_j)`, row-major.
    pub fn polar_matrix(&self) -> Vec<Vec<FieldElement>> {
        let unit = |i: usize| {
            let mut e = vec![FieldElement::ZERO; self.dim];
            e[i] = FieldElement::ONE;
            e
        };
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.polarize(&unit(i), &unit(j)).expect("dims agree")).collect())
            .collect()
    }

    /// True iff the only `w` with `Q(w) = 0` and `B(w, ·) = 0` is `w = 0`.
    pub fn is_nonsingular(&self) -> bool {
        let kernel = nullspace(&self.field, self.polar_matrix());
        // Q vanishes on a subspace of the radical; enumerate the radical.
        let f = &self.field;
        let q = f.order() as usize;
        let k = kernel.len();
        let count = q.checked_pow(k as u32).expect("radical dimension is small");
        (1..count).all(|mut idx| {
            let mut w = vec![FieldElement::ZERO; self.dim];
            for b in &kernel {
                let c = f.element((idx % q) as u32).expect("in range");
                idx /= q;
                for (wi, &bi) in w.iter_mut().zip(b) {
                    *wi = f.add(*wi, f.mul(c, bi));
                }
            }
            !self.eval_unchecked(&w).is_zero()
        })
    }

    /// `a x1² + x1x2 + b x2² + x3x4 + ⋯ + x_{2ℓ-1}x_{2ℓ}` with the first
    /// irreducible `(a, b)` when ordered by `rank(b)` then `rank(a)`.
    pub fn standard_elliptic(field: Arc<FieldSpec>, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidParameters("ℓ must be at least 1".into()));
        }
        let (a, b) = irreducible_binary_form(&field).ok_or(Error::NoIrreducibleBinaryForm)?;
        let mut terms = vec![(0, 0, a), (0, 1, FieldElement::ONE), (1, 1, b)];
        terms.extend((1..ell).map(|i| (2 * i, 2 * i + 1, FieldElement::ONE)));
        Self::from_terms(field, 2 * ell, terms)
    }

    /// `x1x2 + x3x4 + ⋯ + x_{2ℓ-1}x_{2ℓ}`.
    pub fn standard_hyperbolic(field: Arc<FieldSpec>, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidParameters("ℓ must be at least 1".into()));
        }
        let terms = (0..ell).map(|i| (2 * i, 2 * i + 1, FieldElement::ONE));
        Self::from_terms(field, 2 * ell, terms)
    }

    pub fn standard(field: Arc<FieldSpec>, ell: usize, kind: FormType) -> Result<Self> {
        match kind {
            FormType::Elliptic => Self::standard_elliptic(field, ell),
            FormType::Hyperbolic => Self::standard_hyperbolic(field, ell),
        }
    }

    /// `γQ`.
    pub fn scalar_multiple(&self, gamma: FieldElement) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let f = &self.field;
        Ok(QuadraticForm {
            field: f.clone(),
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|&c| f.mul(gamma, c)).collect(),
        })
    }

    /// `tr ∘ Q` as a form over the subfield on the flattened space of
    /// dimension `dim · e`, so that `Q0(sub.flatten(v)) = tr(Q(v))`.
    pub fn trace_compose(&self, sub: &Subfield) -> Result<Self> {
        if **sub.parent() != *self.field {
            return Err(Error::Internal("subfield belongs to a different field".into()));
        }
        let n = self.dim * sub.relative_degree();
        let sf = sub.field().clone();
        let q0 = |u: &[FieldElement]| sub.trace(self.eval_unchecked(&sub.unflatten(u)));
        let mut unit = vec![FieldElement::ZERO; n];
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            unit[k] = FieldElement::ONE;
            diag.push(q0(&unit));
            unit[k] = FieldElement::ZERO;
        }
        let mut out = Self::zero(sf.clone(), n);
        for k in 0..n {
            out.coeffs[k * n + k] = diag[k];
            for l in k + 1..n {
                unit[k] = FieldElement::ONE;
                unit[l] = FieldElement::ONE;
                let both = q0(&unit);
                unit[k] = FieldElement::ZERO;
                unit[l] = FieldElement::ZERO;
                out.coeffs[k * n + l] = sf.sub(sf.sub(both, diag[k]), diag[l]);
            }
        }
        Ok(out)
    }

    /// The additive group of `F_q^dim`.
    pub fn group(&self) -> Result<GroupSpec> {
        self.field.vector_group(self.dim)
    }

    /// `Q(v)` for every vector, indexed by group rank.
    pub fn value_table(&self) -> Result<Vec<FieldElement>> {
        let order = self.group()?.order();
        let f = &self.field;
        let mut v = vec![FieldElement::ZERO; self.dim];
        let q = f.order();
        let mut table = Vec::with_capacity(order);
        for _ in 0..order {
            table.push(self.eval_unchecked(&v));
            // odometer, first coordinate least significant
            for x in v.iter_mut() {
                let r = x.rank() + 1;
                if r < q {
                    *x = f.element(r).expect("in range");
                    break;
                }
                *x = FieldElement::ZERO;
            }
        }
        Ok(table)
    }

    /// `{v : Q(v) = β}` as a subset of the additive group.
    pub fn level_set(&self, beta: FieldElement, exclude_zero: bool) -> Result<SubsetIndicator> {
        self.field.element(beta.rank())?;
        let table = self.value_table()?;
        let group = self.group()?;
        let mut s = SubsetIndicator::from_predicate(&group, |r| table[r] == beta);
        if exclude_zero {
            s.remove(0);
        }
        Ok(s)
    }

    /// Decide elliptic or hyperbolic by counting nonzero zeros.
    pub fn classify_type(&self) -> Result<FormTypeTag> {
        let zeros = self.value_table()?.iter().skip(1).filter(|x| x.is_zero()).count() as u64;
        if !self.dim.is_multiple_of(2) || self.dim == 0 || !self.is_nonsingular() {
            return Err(Error::UnclassifiableForm(zeros));
        }
        let q = self.field.order() as u64;
        let ell = (self.dim / 2) as u32;
        [FormType::Elliptic, FormType::Hyperbolic]
            .into_iter()
            .find(|&k| expected_nonzero_zeros(q, ell, k) == zeros)
            .map(|kind| FormTypeTag { kind, nonzero_zeros: zeros })
            .ok_or(Error::UnclassifiableForm(zeros))
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticForm(F{}, dim {}: {})", self.field.order(), self.dim, self)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..self.dim {
            for j in i..self.dim {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                if c != FieldElement::ONE {
                    write!(f, "[{}]", c.rank())?;
                }
                if i == j {
                    write!(f, "x{}^2", i + 1)?;
                } else {
                    write!(f, "x{}x{}", i + 1, j + 1)?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// First `(a, b)` with `a x² + xy + b y²` anisotropic, `b` outer, `a` inner.
fn irreducible_binary_form(f: &FieldSpec) -> Option<(FieldElement, FieldElement)> {
    for b in f.elements() {
        for a in f.elements() {
            // a nonzero zero (x, y) can be scaled to y = 1 or (x, y) = (1, 0)
            let anisotropic = !a.is_zero()
                && f.elements().all(|x| !f.add(f.add(f.mul(a, f.mul(x, x)), x), b).is_zero());
            if anisotropic {
                return Some((a, b));
            }
        }
    }
    None
}

/// Basis of `{w : M w = 0}` by Gaussian elimination.
fn nullspace(f: &FieldSpec, mut m: Vec<Vec<FieldElement>>) -> Vec<Vec<FieldElement>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                for j in 0..cols {
                    let t = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut w = vec![FieldElement::ZERO; cols];
            w[free] = FieldElement::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                w[pc] = f.neg(m[row][free]);
            }
            w
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(q: u32) -> Arc<FieldSpec> {
        FieldSpec::builtin(q).unwrap()
    }

    fn random_vec(field: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
        (0..n).map(|_| field.element(rng.gen_range(0..field.order())).unwrap()).collect()
    }

    #[test]
    fn standard_f4_form_is_the_four_class_form() {
        let f4 = f(4);
        let alpha = f4.primitive_element();
        let q = QuadraticForm::standard_elliptic(f4.clone(), 2).unwrap();
        assert_eq!(q.coeff(0, 0), alpha);
        assert_eq!(q.coeff(0, 1), f4.one());
        assert_eq!(q.coeff(1, 1), f4.one());
        assert_eq!(q.coeff(2, 3), f4.one());
        let e1 = [f4.one(), f4.zero(), f4.zero(), f4.zero()];
        assert_eq!(q.evaluate(&e1).unwrap(), alpha);
        assert_eq!(q.evaluate(&[f4.zero(); 4]).unwrap(), f4.zero());
        assert!(q.is_nonsingular());
        assert_eq!(q.classify_type().unwrap().kind, FormType::Elliptic);
    }

    #[test]
    fn shear_invariance_of_the_four_class_form() {
        let f4 = f(4);
        let q = QuadraticForm::standard_elliptic(f4.clone(), 2).unwrap();
        for r in 0..256 {
            let v = f4.vector_from_rank(r, 4);
            let mut w = v.clone();
            w[1] = f4.add(v[0], v[1]);
            assert_eq!(q.evaluate(&w).unwrap(), q.evaluate(&v).unwrap());
        }
    }

    #[test]
    fn homogeneity_and_bilinearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (qq, ell) in [(2, 2), (3, 2), (4, 2), (9, 1), (5, 1)] {
            let field = f(qq);
            for form in [
                QuadraticForm::standard_elliptic(field.clone(), ell).unwrap(),
                QuadraticForm::standard_hyperbolic(field.clone(), ell).unwrap(),
            ] {
                let n = form.dim();
                for _ in 0..50 {
                    let (u, v, w) =
                        (random_vec(&field, n, &mut rng), random_vec(&field, n, &mut rng), random_vec(&field, n, &mut rng));
                    let g = field.element(rng.gen_range(0..field.order())).unwrap();
                    let gv: Vec<_> = v.iter().map(|&x| field.mul(g, x)).collect();
                    assert_eq!(
                        form.evaluate(&gv).unwrap(),
                        field.mul(field.mul(g, g), form.evaluate(&v).unwrap())
                    );
                    let uw: Vec<_> = u.iter().zip(&w).map(|(&a, &b)| field.add(a, b)).collect();
                    assert_eq!(
                        form.polarize(&uw, &v).unwrap(),
                        field.add(form.polarize(&u, &v).unwrap(), form.polarize(&w, &v).unwrap())
                    );
                    assert_eq!(form.polarize(&gv, &u).unwrap(), field.mul(g, form.polarize(&v, &u).unwrap()));
                    assert_eq!(form.polarize(&u, &v).unwrap(), form.polarize(&v, &u).unwrap());
                    assert_eq!(form.polarize(&u, &vec![field.zero(); n]).unwrap(), field.zero());
                }
            }
        }
    }

    #[test]
    fn hyperbolic_plane_over_f2() {
        let f2 = f(2);
        let h = QuadraticForm::standard_hyperbolic(f2.clone(), 1).unwrap();
        assert_eq!(h.polarize(&[f2.one(), f2.zero()], &[f2.zero(), f2.one()]).unwrap(), f2.one());
        let zeros = h.level_set(f2.zero(), true).unwrap();
        assert_eq!(zeros.ranks(), vec![1, 2]);
        let tag = h.classify_type().unwrap();
        assert_eq!(tag, FormTypeTag { kind: FormType::Hyperbolic, nonzero_zeros: 2 });
        let h2 = QuadraticForm::standard_hyperbolic(f2, 2).unwrap();
        assert_eq!(h2.classify_type().unwrap().kind, FormType::Hyperbolic);
    }

    #[test]
    fn degenerate_square_is_singular() {
        let f2 = f(2);
        let q = QuadraticForm::from_terms(f2.clone(), 2, [(0, 0, f2.one())]).unwrap();
        assert!(!q.is_nonsingular());
        assert!(matches!(q.classify_type(), Err(Error::UnclassifiableForm(_))));
        // x1² + x1x2 + x2² over F2: polar matrix [[0,1],[1,0]] has trivial kernel
        let ok = QuadraticForm::from_terms(f2.clone(), 2, [(0, 0, f2.one()), (0, 1, f2.one()), (1, 1, f2.one())]).unwrap();
        assert!(ok.is_nonsingular());
        assert_eq!(ok.classify_type().unwrap().kind, FormType::Elliptic);
        assert!(QuadraticForm::from_terms(f2, 2, [(1, 0, FieldElement::ONE)]).is_err());
    }

    #[test]
    fn odd_characteristic_singularity() {
        let f3 = f(3);
        // x1² - x2² = (x1-x2)(x1+x2) is nonsingular hyperbolic; x1² alone is not
        let two = f3.element(2).unwrap();
        let h = QuadraticForm::from_terms(f3.clone(), 2, [(0, 0, f3.one()), (1, 1, two)]).unwrap();
        assert!(h.is_nonsingular());
        assert_eq!(h.classify_type().unwrap().kind, FormType::Hyperbolic);
        let s = QuadraticForm::from_terms(f3.clone(), 2, [(0, 0, f3.one())]).unwrap();
        assert!(!s.is_nonsingular());
    }

    #[test]
    fn level_set_sizes() {
        let f4 = f(4);
        let q = QuadraticForm::standard_elliptic(f4.clone(), 2).unwrap();
        let alpha = f4.primitive_element();
        assert_eq!(q.level_set(f4.zero(), true).unwrap().cardinality(), 51);
        assert!(q.level_set(f4.zero(), false).unwrap().contains(0));
        for b in [f4.one(), alpha, f4.mul(alpha, alpha)] {
            let s = q.level_set(b, false).unwrap();
            assert_eq!(s.cardinality(), 68);
            assert!(s.is_symmetric());
        }
        let h = QuadraticForm::standard_hyperbolic(f4, 2).unwrap();
        assert_eq!(h.level_set(FieldElement::ZERO, true).unwrap().cardinality(), 75);
    }

    #[test]
    fn f9_elliptic_count() {
        let q = QuadraticForm::standard_elliptic(f(9), 2).unwrap();
        let tag = q.classify_type().unwrap();
        assert_eq!(tag.kind, FormType::Elliptic);
        assert_eq!(tag.nonzero_zeros, 656);
        assert_eq!(expected_nonzero_zeros(9, 2, FormType::Elliptic), 82 * 8);
    }

    #[test]
    fn zero_count_dichotomy() {
        for qq in [2, 3, 4, 5, 7, 8, 9] {
            let Ok(field) = FieldSpec::builtin(qq) else { continue };
            for ell in 1..=2 {
                if (qq as u64).pow(2 * ell as u32) > 1 << 14 {
                    continue;
                }
                for kind in [FormType::Elliptic, FormType::Hyperbolic] {
                    let form = QuadraticForm::standard(field.clone(), ell, kind).unwrap();
                    assert!(form.is_nonsingular());
                    let tag = form.classify_type().unwrap();
                    assert_eq!(tag.kind, kind, "q={qq} ℓ={ell}");
                    assert_eq!(tag.nonzero_zeros, expected_nonzero_zeros(qq as u64, ell as u32, kind));
                }
            }
        }
    }

    #[test]
    fn scalar_multiples() {
        let f4 = f(4);
        let alpha = f4.primitive_element();
        let q = QuadraticForm::standard_elliptic(f4.clone(), 2).unwrap();
        assert_eq!(q.scalar_multiple(f4.one()).unwrap(), q);
        assert_eq!(q.scalar_multiple(f4.zero()), Err(Error::ZeroScalar));
        let aq = q.scalar_multiple(alpha).unwrap();
        let e1 = [f4.one(), f4.zero(), f4.zero(), f4.zero()];
        assert_eq!(aq.evaluate(&e1).unwrap(), f4.mul(alpha, alpha));
        assert_eq!(aq.level_set(f4.zero(), true).unwrap(), q.level_set(f4.zero(), true).unwrap());
        assert_eq!(aq.classify_type().unwrap().kind, FormType::Elliptic);
        for g in f4.elements().skip(1) {
            let gq = q.scalar_multiple(g).unwrap();
            for b in f4.elements().skip(1) {
                assert_eq!(gq.level_set(f4.mul(g, b), false).unwrap(), q.level_set(b, false).unwrap());
            }
        }
    }

    #[test]
    fn trace_composition_f4_to_f2() {
        let f4 = f(4);
        let sub = f4.subfield(1).unwrap();
        let q = QuadraticForm::standard_elliptic(f4.clone(), 2).unwrap();
        let q0 = q.trace_compose(&sub).unwrap();
        assert_eq!(q0.dim(), 8);
        assert_eq!(q0.field().order(), 2);
        for r in 0..256 {
            let v = f4.vector_from_rank(r, 4);
            let t = sub.trace(q.evaluate(&v).unwrap());
            assert_eq!(q0.evaluate(&sub.flatten(&v)).unwrap(), t);
        }
        assert!(q0.is_nonsingular());
        assert_eq!(q0.classify_type().unwrap().kind, FormType::Elliptic);
        let zero_set = (0..256)
            .filter(|&r| {
                let v = f4.vector_from_rank(r, 4);
                q0.evaluate(&sub.flatten(&v)).unwrap().is_zero()
            })
            .count();
        assert_eq!(zero_set, 1 + 51 + 68);
        // kernel of tr_{4/2} is {0, 1}: union of the matching level sets
        let mut union = q.level_set(f4.zero(), false).unwrap();
        union = union.union(&q.level_set(f4.one(), false).unwrap()).unwrap();
        let via_trace = SubsetIndicator::from_predicate(union.group(), |r| {
            let v = f4.vector_from_rank(r, 4);
            q0.evaluate(&sub.flatten(&v)).unwrap().is_zero()
        });
        assert_eq!(via_trace, union);
    }

    #[test]
    fn trace_composition_is_transitive() {
        let f16 = f(16);
        let q = QuadraticForm::standard_elliptic(f16.clone(), 1).unwrap();
        let to_f4 = f16.subfield(2).unwrap();
        let q4 = q.trace_compose(&to_f4).unwrap();
        let f4 = to_f4.field().clone();
        let f4_to_f2 = f4.subfield(1).unwrap();
        let q2_chain = q4.trace_compose(&f4_to_f2).unwrap();
        let direct = f16.subfield(1).unwrap();
        let q2_direct = q.trace_compose(&direct).unwrap();
        assert_eq!(q2_chain.dim(), 8);
        for r in 0..256 {
            let v = f16.vector_from_rank(r, 2);
            let chain = q2_chain.evaluate(&f4_to_f2.flatten(&to_f4.flatten(&v))).unwrap();
            let straight = q2_direct.evaluate(&direct.flatten(&v)).unwrap();
            assert_eq!(chain, straight);
            assert_eq!(straight.rank(), f16.absolute_trace(q.evaluate(&v).unwrap()));
        }
        assert_eq!(q4.classify_type().unwrap().kind, FormType::Elliptic);
        let zero = QuadraticForm::zero(f16, 2).trace_compose(&to_f4).unwrap();
        assert_eq!(zero, QuadraticForm::zero(f4, 4));
    }

    #[test]
    fn display() {
        let q = QuadraticForm::standard_elliptic(f(4), 2).unwrap();
        assert_eq!(q.to_string(), "[2]x1^2 + x1x2 + x2^2 + x3x4");
        assert_eq!(QuadraticForm::zero(f(2), 3).to_string(), "0");
    }
}
