//! The scheme families: uniform cyclotomy, level sets of the four-class
//! form over `F_4` and their lift to `Z_4² × Z_2^{4ℓ-4}`, subfield trace
//! chains, and the cyclic rotation of a quadric by powers of a primitive
//! element of `F_{q²}`.
//!
//! Every builder returns the scheme together with a descriptor of what the
//! construction predicts (class sizes, parameters, type), computed from
//! closed formulas rather than from the sets themselves.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclotomic::CyclotomicInt;
use crate::error::{Error, Result};
use crate::field::{prime_power, trace_zero_elements, FieldElement, FieldSpec};
use crate::galois_ring::{GaloisRing, LiftedSpace, RingElement};
use crate::group::SubsetIndicator;
use crate::pds::{LatinType, PdsParameters};
use crate::quadratic::{expected_nonzero_zeros, FormType, QuadraticForm};
use crate::scheme::TranslationScheme;

/// What a construction claims about its output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionDescriptor {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub expected_sizes: Vec<usize>,
    /// Per class; `None` where the construction makes no claim.
    pub expected_params: Vec<Option<PdsParameters>>,
    /// Common Latin type sign of every class, if claimed.
    pub expected_epsilon: Option<i64>,
    pub predicted_amorphic: Option<bool>,
}

impl ConstructionDescriptor {
    fn new(name: &str, parameters: Value) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        ConstructionDescriptor {
            name: name.to_string(),
            parameters,
            expected_sizes: Vec::new(),
            expected_params: Vec::new(),
            expected_epsilon: None,
            predicted_amorphic: None,
        }
    }
}

/// A scheme with its descriptor and any warnings raised while building it.
#[derive(Clone, Debug)]
pub struct Constructed {
    pub scheme: TranslationScheme,
    pub descriptor: ConstructionDescriptor,
    pub warnings: Vec<String>,
}

/// Every family, with its parameters, for callers that select by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Construction {
    Cyclotomic { p: u32, s: u32, e: u32 },
    FourClass { ell: usize },
    LiftedFourClass { ell: usize },
    Chain { q: u32, m: u32, ell: usize, chain: Vec<u32>, form: FormType },
    /// The alternating union of chain pieces and its complement.
    HamiltonFusion { q: u32, m: u32, ell: usize, chain: Vec<u32>, form: FormType },
    Rotation { q: u32, ell: usize },
}

impl Construction {
    pub fn build(&self) -> Result<Constructed> {
        match self {
            Construction::Cyclotomic { p, s, e } => cyclotomic_scheme(*p, *s, *e),
            Construction::FourClass { ell } => four_class_scheme(*ell),
            Construction::LiftedFourClass { ell } => lifted_four_class_scheme(*ell),
            Construction::Chain { q, m, ell, chain, form } => Ok(chain_scheme(*q, *m, *ell, chain, *form)?.constructed),
            Construction::HamiltonFusion { q, m, ell, chain, form } => {
                let c = chain_scheme(*q, *m, *ell, chain, *form)?;
                hamilton_fusion_scheme(&c)
            }
            Construction::Rotation { q, ell } => Ok(rotation_scheme(*q, *ell)?.constructed),
        }
    }
}

fn negative_or_positive_latin(v: usize, k: usize, epsilon: i64) -> Option<PdsParameters> {
    let n = (v as f64).sqrt().round() as i64;
    let step = n - epsilon;
    if n * n != v as i64 || step <= 0 || k as i64 % step != 0 || k == 0 {
        return None;
    }
    LatinType { epsilon, n: n as u64, r: (k as i64 / step) as u64 }.parameters()
}

fn field(q: u32) -> Result<Arc<FieldSpec>> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    FieldSpec::builtin(q)
}

/// Class `i` is the coset `g^i C_0` of the index-`e` subgroup of `F_q^*`.
pub fn cyclotomic_scheme(p: u32, s: u32, e: u32) -> Result<Constructed> {
    if e < 2 {
        return Err(Error::InvalidParameters(format!("e must be at least 2, got {e}")));
    }
    let q = p.checked_pow(s).ok_or(Error::InvalidParameters("p^s overflows".into()))?;
    let f = field(q)?;
    if f.characteristic() != p {
        return Err(Error::NotPrime(p));
    }
    if (q - 1) % e != 0 {
        return Err(Error::InvalidParameters(format!("e = {e} does not divide q - 1 = {}", q - 1)));
    }
    let size = (q - 1) / e;
    if p != 2 && !size.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("-1 is not in the index-{e} subgroup of F_{q}^*")));
    }
    let group = f.additive_group();
    let classes = (0..e)
        .map(|i| {
            SubsetIndicator::from_ranks(&group, (0..size).map(|t| f.primitive_pow((i + e * t) as i64).rank() as usize))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut d = ConstructionDescriptor::new("cyclotomic", json!({"p": p, "s": s, "e": e}));
    d.expected_sizes = vec![size as usize; e as usize];
    d.expected_params = vec![None; e as usize];
    d.predicted_amorphic = Some(cyclotomic_amorphy_prediction(p, e));
    Ok(Constructed { scheme: TranslationScheme::assemble(group, classes)?, descriptor: d, warnings: Vec::new() })
}

/// Amorphic iff `e ≤ 2` or `-1 ≡ p^k (mod e)` for some `k`.
pub fn cyclotomic_amorphy_prediction(p: u32, e: u32) -> bool {
    if e <= 2 {
        return true;
    }
    let mut x = 1 % e;
    for _ in 0..e {
        x = x * (p % e) % e;
        if x == e - 1 {
            return true;
        }
    }
    false
}

/// `αx1² + x1x2 + x2² + x3x4 + ⋯ + x_{2ℓ-1}x_{2ℓ}` over `F_4`.
pub fn four_class_form(ell: usize) -> Result<QuadraticForm> {
    let f4 = FieldSpec::builtin(4)?;
    let alpha = f4.primitive_element();
    let mut terms = vec![(0, 0, alpha), (0, 1, f4.one()), (1, 1, f4.one())];
    terms.extend((1..ell).map(|i| (2 * i, 2 * i + 1, f4.one())));
    QuadraticForm::from_terms(f4, 2 * ell, terms)
}

fn require_ell(ell: usize, min: usize) -> Result<()> {
    if ell < min {
        return Err(Error::InvalidParameters(format!("ℓ ≥ {min} required, got ℓ = {ell}")));
    }
    Ok(())
}

/// `[0, 1, α, α²]`: the zero level first, then field-rank order.
fn f4_levels(f4: &FieldSpec) -> [FieldElement; 4] {
    let alpha = f4.primitive_element();
    [f4.zero(), f4.one(), alpha, f4.mul(alpha, alpha)]
}

fn four_class_descriptor(name: &str, ell: usize) -> ConstructionDescriptor {
    let mut d = ConstructionDescriptor::new(name, json!({"ell": ell}));
    let a = 4usize.pow(ell as u32);
    let b = 4usize.pow(ell as u32 - 1);
    d.expected_sizes = vec![(a + 1) * (b - 1), (a + 1) * b, (a + 1) * b, (a + 1) * b];
    d.expected_params = d.expected_sizes.iter().map(|&k| negative_or_positive_latin(a * a, k, -1)).collect();
    d.expected_epsilon = Some(-1);
    d.predicted_amorphic = Some(true);
    d
}

/// `D_0∖{0}, D_1, D_α, D_{α²}` on `(F_4^{2ℓ}, +)`.
pub fn four_class_scheme(ell: usize) -> Result<Constructed> {
    require_ell(ell, 2)?;
    let q = four_class_form(ell)?;
    let table = q.value_table()?;
    let group = q.group()?;
    let classes = f4_levels(q.field())
        .iter()
        .map(|&b| SubsetIndicator::from_predicate(&group, |r| r != 0 && table[r] == b))
        .collect();
    Ok(Constructed {
        scheme: TranslationScheme::assemble(group, classes)?,
        descriptor: four_class_descriptor("four_class", ell),
        warnings: Vec::new(),
    })
}

/// `L_β = F(D_β)` inside `Z_4² × Z_2^{4ℓ-4}`, without the zero element.
pub fn lifted_set(beta: FieldElement, ell: usize) -> Result<SubsetIndicator> {
    require_ell(ell, 2)?;
    let q = four_class_form(ell)?;
    q.field().element(beta.rank())?;
    let space = LiftedSpace::new(2 * ell - 2)?;
    lifted_level(&q, &space, &q.value_table()?, beta)
}

fn lifted_level(
    q: &QuadraticForm,
    space: &LiftedSpace,
    table: &[FieldElement],
    beta: FieldElement,
) -> Result<SubsetIndicator> {
    let ring = space.ring();
    let mut s = SubsetIndicator::empty(space.group());
    for (r, &val) in table.iter().enumerate().skip(1) {
        if val == beta {
            let v = q.field().vector_from_rank(r, q.dim());
            let (x0, rest) = ring.lift(&v)?;
            s.insert(space.rank(x0, &rest)?);
        }
    }
    Ok(s)
}

/// `L_0∖{0}, L_1, L_α, L_{α²}` on `Z_4² × Z_2^{4ℓ-4}`.
pub fn lifted_four_class_scheme(ell: usize) -> Result<Constructed> {
    require_ell(ell, 2)?;
    let q = four_class_form(ell)?;
    let table = q.value_table()?;
    let space = LiftedSpace::new(2 * ell - 2)?;
    let classes = f4_levels(q.field())
        .iter()
        .map(|&b| lifted_level(&q, &space, &table, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Constructed {
        scheme: TranslationScheme::assemble(space.group().clone(), classes)?,
        descriptor: four_class_descriptor("lifted_four_class", ell),
        warnings: Vec::new(),
    })
}

/// Restricted character sums behind the lift of `D_1`, for one character
/// `Ψ = ψ_{β1+2β2} ⊗ χ_w` of order 4 (`β1 ≠ 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCharacterRow {
    pub beta: (u8, u8),
    pub w: Vec<u32>,
    /// `χ(O_0)` with `χ = χ_{π(β2), π(β1), w}` on `F_4^{2ℓ}` and
    /// `O_0 = {x ∈ D_1 : x1 = 0}`.
    pub field_o0: i64,
    /// `χ(D_1∖O_0)`.
    pub field_rest: i64,
    /// `Ψ(F(O_0))`, computed on the ring side.
    pub ring_o0: i64,
    /// `Ψ(F(D_1∖O_0))`, computed on the ring side.
    pub ring_rest: i64,
    /// `Ψ(L_1)`.
    pub ring_total: i64,
}

/// The lifted-`D_1` diagnostic over every order-4 character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedDiagnostic {
    pub ell: usize,
    pub rows: Vec<LiftedCharacterRow>,
}

impl LiftedDiagnostic {
    /// Distinct values of `χ(O_0)`.
    pub fn o0_values(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.rows.iter().map(|r| r.field_o0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `Ψ(F(O_0)) = χ(O_0)` and `Ψ(L_1) = χ(O_0) - χ(D_1∖O_0)` on every row.
    pub fn ring_field_identities_hold(&self) -> bool {
        self.rows.iter().all(|r| {
            r.ring_o0 == r.field_o0 && r.ring_rest == -r.field_rest && r.ring_total == r.field_o0 - r.field_rest
        })
    }

    /// `χ(D_1∖O_0) = 0` whenever `χ(O_0)` is positive.
    pub fn positive_rows_vanish(&self) -> bool {
        self.rows.iter().filter(|r| r.field_o0 > 0).all(|r| r.field_rest == 0)
    }
}

/// Enumerate every character of order 4 of `R × F_4^{2ℓ-2}` and evaluate
/// both sides of the decomposition of `Ψ(L_1)`.
pub fn lifted_diagnostic(ell: usize) -> Result<LiftedDiagnostic> {
    require_ell(ell, 2)?;
    let q = four_class_form(ell)?;
    let f4 = q.field().clone();
    let table = q.value_table()?;
    let ring = GaloisRing::new();
    let space = LiftedSpace::new(2 * ell - 2)?;
    let n = q.dim();
    let d1: Vec<Vec<FieldElement>> = table
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == f4.one())
        .map(|(r, _)| f4.vector_from_rank(r, n))
        .collect();
    let lifted: Vec<(RingElement, Vec<FieldElement>)> =
        d1.iter().map(|v| ring.lift(v)).collect::<Result<_>>()?;
    let as_int = |z: CyclotomicInt| -> Result<i64> {
        z.as_integer().ok_or_else(|| Error::Internal(format!("restricted sum {z} is not an integer")))
    };

    let mut rows = Vec::new();
    for beta in RingElement::all().filter(|b| !b.is_in_maximal_ideal()) {
        let (b1, b2) = ring.two_adic_decompose(beta);
        for wr in 0..4usize.pow(n as u32 - 2) {
            let w = f4.vector_from_rank(wr, n - 2);
            let mut label = vec![ring.pi(b2), ring.pi(b1)];
            label.extend_from_slice(&w);
            let field_char = |x: &[FieldElement]| -> i64 {
                let dot = label.iter().zip(x).fold(f4.zero(), |acc, (&a, &b)| f4.add(acc, f4.mul(a, b)));
                1 - 2 * f4.absolute_trace(dot) as i64
            };
            let (mut field_o0, mut field_rest) = (0i64, 0i64);
            let (mut ring_o0, mut ring_rest) = (CyclotomicInt::zero(4), CyclotomicInt::zero(4));
            for (x, (x0, tail)) in d1.iter().zip(&lifted) {
                let psi = space.product_character(beta, &w, *x0, tail)?;
                if x[0].is_zero() {
                    field_o0 += field_char(x);
                    ring_o0 = &ring_o0 + &psi;
                } else {
                    field_rest += field_char(x);
                    ring_rest = &ring_rest + &psi;
                }
            }
            let ring_total = as_int(&ring_o0 + &ring_rest)?;
            rows.push(LiftedCharacterRow {
                beta: beta.coords(),
                w: w.iter().map(|x| x.rank()).collect(),
                field_o0,
                field_rest,
                ring_o0: as_int(ring_o0)?,
                ring_rest: as_int(ring_rest)?,
                ring_total,
            });
        }
    }
    Ok(LiftedDiagnostic { ell, rows })
}

/// A chain scheme together with where each piece `Ω_i∖Ω_{i-1}` landed.
#[derive(Clone, Debug)]
pub struct ChainScheme {
    pub constructed: Constructed,
    /// `pieces[i]` is the class index of `Ω_{i+1}∖Ω_i` (`Ω_1` for `i = 0`),
    /// or `None` if that piece was empty and dropped.
    pub pieces: Vec<Option<usize>>,
    pub form_type: FormType,
}

fn check_chain(m: u32, chain: &[u32]) -> Result<()> {
    let bad = |why: &str| Err(Error::InvalidParameters(format!("divisor chain {chain:?}: {why}")));
    if chain.first() != Some(&m) {
        return bad("must start at m");
    }
    if chain.last() != Some(&1) {
        return bad("must end at 1");
    }
    if chain.len() < 2 && m != 1 {
        return bad("needs at least two entries");
    }
    for w in chain.windows(2) {
        if w[1] >= w[0] || w[0] % w[1] != 0 {
            return bad("each entry must be a proper divisor of the previous one");
        }
    }
    Ok(())
}

/// `Ω_1, Ω_2∖Ω_1, …, Ω_d∖Ω_{d-1}, (V∖{0})∖Ω_d` with
/// `Ω_i = {x ≠ 0 : tr_{q^m/q^{m_i}}(Q(x)) = 0}` on `V = F_{q^m}^{2ℓ}`.
pub fn chain_scheme(q: u32, m: u32, ell: usize, chain: &[u32], form: FormType) -> Result<ChainScheme> {
    require_ell(ell, 1)?;
    check_chain(m, chain)?;
    let (p, s) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let big = q.checked_pow(m).ok_or(Error::InvalidParameters("q^m overflows".into()))?;
    let f = field(big)?;
    let qf = QuadraticForm::standard(f.clone(), ell, form)?;
    let group = qf.group()?;
    let table = qf.value_table()?;
    let v = group.order();

    let mut omegas: Vec<SubsetIndicator> = Vec::with_capacity(chain.len());
    for &mi in chain {
        let sub_degree = s * mi;
        let traces: Vec<bool> = table
            .iter()
            .map(|&y| f.trace_to_subfield(y, sub_degree).map(|t| t.is_zero()))
            .collect::<Result<_>>()?;
        omegas.push(SubsetIndicator::from_predicate(&group, |r| r != 0 && traces[r]));
    }
    for (i, w) in omegas.windows(2).enumerate() {
        if !w[0].is_subset_of(&w[1]) {
            return Err(Error::Internal(format!("Ω_{} is not contained in Ω_{}", i + 1, i + 2)));
        }
    }

    let eps = form.sign();
    let n = (big as u64).pow(ell as u32);
    let mut pieces_sets = vec![omegas[0].clone()];
    for w in omegas.windows(2) {
        pieces_sets.push(w[1].difference(&w[0])?);
    }
    let complement = omegas.last().expect("chain is nonempty").complement_nonidentity();

    // closed-form sizes: |Ω_i| from the zero count of a form of the same
    // type over F_{q^{m_i}} in dimension 2ℓ·m/m_i
    let omega_size = |mi: u32| -> u64 {
        let qi = (q as u64).pow(mi);
        expected_nonzero_zeros(qi, ell as u32 * (m / mi), form)
    };
    let mut expected = vec![omega_size(chain[0])];
    for w in chain.windows(2) {
        expected.push(omega_size(w[1]) - omega_size(w[0]));
    }
    expected.push(v as u64 - 1 - omega_size(*chain.last().expect("nonempty")));

    let mut warnings = Vec::new();
    let mut classes = Vec::new();
    let mut pieces = Vec::new();
    let mut sizes = Vec::new();
    let all = pieces_sets.into_iter().chain(std::iter::once(complement));
    for (i, (set, exp)) in all.zip(expected).enumerate() {
        let is_piece = i < chain.len();
        if set.is_empty() {
            let what = if is_piece {
                if i == 0 { "Ω_1".to_string() } else { format!("Ω_{}∖Ω_{}", i + 1, i) }
            } else {
                "the complement of the last Ω".to_string()
            };
            let msg = format!("{what} is empty and was dropped");
            log::warn!("{msg}");
            warnings.push(msg);
            if is_piece {
                pieces.push(None);
            }
            continue;
        }
        if is_piece {
            pieces.push(Some(classes.len()));
        }
        sizes.push(exp as usize);
        classes.push(set);
    }

    let mut d = ConstructionDescriptor::new(
        "chain",
        json!({"q": q, "m": m, "ell": ell, "chain": chain, "form": form, "p": p}),
    );
    d.expected_params = sizes.iter().map(|&k| negative_or_positive_latin(v, k, eps)).collect();
    d.expected_sizes = sizes;
    d.expected_epsilon = Some(eps);
    d.predicted_amorphic = Some(true);
    debug_assert_eq!(n * n, v as u64);
    Ok(ChainScheme {
        constructed: Constructed { scheme: TranslationScheme::assemble(group, classes)?, descriptor: d, warnings },
        pieces,
        form_type: form,
    })
}

/// `(Ω_d∖Ω_{d-1}) ∪ (Ω_{d-2}∖Ω_{d-3}) ∪ ⋯`, ending with `Ω_2∖Ω_1` for even
/// `d` and with `Ω_1` for odd `d`.
pub fn hamilton_fusion(chain: &ChainScheme) -> SubsetIndicator {
    let scheme = &chain.constructed.scheme;
    let d = chain.pieces.len();
    let mut out = SubsetIndicator::empty(scheme.group());
    for (i, piece) in chain.pieces.iter().enumerate() {
        // piece i is Ω_{i+1}∖Ω_i; keep those with i+1 ≡ d (mod 2)
        if (i + 1) % 2 == d % 2 {
            if let Some(c) = piece {
                for r in scheme.classes()[*c].iter_ranks() {
                    out.insert(r);
                }
            }
        }
    }
    out
}

/// The fused set and its complement as a two-class scheme.
pub fn hamilton_fusion_scheme(chain: &ChainScheme) -> Result<Constructed> {
    let h = hamilton_fusion(chain);
    let group = chain.constructed.scheme.group().clone();
    let rest = h.complement_nonidentity();
    let eps = chain.form_type.sign();
    let v = group.order();
    let mut d = chain.constructed.descriptor.clone();
    d.name = "hamilton_fusion".into();
    d.expected_sizes = vec![h.cardinality(), rest.cardinality()];
    d.expected_params = d.expected_sizes.iter().map(|&k| negative_or_positive_latin(v, k, eps)).collect();
    d.expected_epsilon = Some(eps);
    Ok(Constructed {
        scheme: TranslationScheme::assemble(group, vec![h, rest])?,
        descriptor: d,
        warnings: chain.constructed.warnings.clone(),
    })
}

/// A rotation scheme and the outcome of the independent partition check.
#[derive(Clone, Debug)]
pub struct RotationScheme {
    pub constructed: Constructed,
    /// The exponent `c` with `ker tr_{q²/q} ∖ {0} = {g^{c + (q+1)i}}`.
    pub kernel_offset: u32,
}

/// `Ω_0` and `Ω_{g^i}∖Ω_0` for `0 ≤ i ≤ q`, where
/// `Ω_{g^i} = {x ≠ 0 : tr_{q²/q}(g^i Q(x)) = 0}` on `F_{q²}^{2ℓ}`.
pub fn rotation_scheme(q: u32, ell: usize) -> Result<RotationScheme> {
    require_ell(ell, 2)?;
    let (p, s) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let f = field(q * q)?;
    let sub_degree = s;
    let qf = QuadraticForm::standard_elliptic(f.clone(), ell)?;
    let group = qf.group()?;
    let table = qf.value_table()?;
    let classes_n = q as usize + 1;

    // direct evaluation
    let mut classes = vec![SubsetIndicator::from_predicate(&group, |r| r != 0 && table[r].is_zero())];
    for i in 0..classes_n {
        let gi = f.primitive_pow(i as i64);
        let hits: Vec<bool> = table
            .iter()
            .map(|&y| !y.is_zero() && f.trace_to_subfield(f.mul(gi, y), sub_degree).map(|t| t.is_zero()).unwrap_or(false))
            .collect();
        classes.push(SubsetIndicator::from_predicate(&group, |r| hits[r]));
    }

    // independent route: the class of y = Q(x) ≠ 0 is c - log(y) mod (q+1)
    let kernel = trace_zero_elements(&f)?;
    let logs: Vec<u32> = kernel.iter().filter(|x| !x.is_zero()).map(|&x| f.log(x).expect("nonzero") % (q + 1)).collect();
    let c = logs[0];
    if logs.iter().any(|&l| l != c) {
        return Err(Error::Internal("trace kernel is not a single coset of the (q+1)-th powers".into()));
    }
    for r in 1..group.order() {
        let y = table[r];
        let expected = if y.is_zero() {
            0
        } else {
            let l = f.log(y).expect("nonzero");
            1 + ((c + (q + 1) - l % (q + 1)) % (q + 1)) as usize
        };
        if !classes[expected].contains(r) || classes.iter().filter(|cl| cl.contains(r)).count() != 1 {
            return Err(Error::Internal(format!(
                "rotation class of element rank {r} disagrees with the trace-kernel coset route"
            )));
        }
    }

    let mut d = ConstructionDescriptor::new("rotation", json!({"q": q, "ell": ell, "p": p}));
    let big = (q as u64).pow(2 * ell as u32);
    let v = group.order();
    let zero_size = expected_nonzero_zeros((q * q) as u64, ell as u32, FormType::Elliptic);
    let other = (big + 1) * ((q as u64).pow(2 * ell as u32 - 1) - (q as u64).pow(2 * ell as u32 - 2));
    d.expected_sizes = std::iter::once(zero_size as usize).chain(std::iter::repeat_n(other as usize, classes_n)).collect();
    d.expected_params = d.expected_sizes.iter().map(|&k| negative_or_positive_latin(v, k, -1)).collect();
    d.expected_epsilon = Some(-1);
    d.predicted_amorphic = Some(true);
    Ok(RotationScheme {
        constructed: Constructed { scheme: TranslationScheme::assemble(group, classes)?, descriptor: d, warnings: Vec::new() },
        kernel_offset: c,
    })
}

impl fmt::Display for ConstructionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (i, (k, v)) in self.parameters.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, ")")
    }
}
