//! Partial difference sets: verification by counting differences, by
//! character sums, and Latin / negative Latin square classification.
//!
//! The two verifiers share no code beyond the subset representation: the
//! difference route enumerates pairs directly, the character route goes
//! through the group transform and recovers `(λ, μ)` from the two
//! nonprincipal eigenvalues.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{all_character_sums, difference_counts, GroupElement, Spectrum, SubsetIndicator};

/// Largest order for which the character verifier falls back to direct
/// per-label summation when no fast transform exists.
pub const SLOW_CHARACTER_LIMIT: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdsParameters {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl PdsParameters {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        PdsParameters { v, k, lambda, mu }
    }

    /// `k(k-1) = λk + μ(v-k-1)`.
    pub fn satisfies_counting_identity(&self) -> bool {
        let (v, k, l, m) = (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        k * (k - 1) == l * k + m * (v - k - 1)
    }

    /// The two nonprincipal eigenvalues `(λ-μ ± √((λ-μ)² + 4(k-μ)))/2`
    /// when they are integers, larger first.
    pub fn integral_eigenvalues(&self) -> Option<(i64, i64)> {
        let d = self.lambda as i64 - self.mu as i64;
        let disc = d * d + 4 * (self.k as i64 - self.mu as i64);
        if disc < 0 {
            return None;
        }
        let s = (disc as f64).sqrt().round() as i64;
        if s * s != disc || (d + s) % 2 != 0 {
            return None;
        }
        Some(((d + s) / 2, (d - s) / 2))
    }
}

impl fmt::Display for PdsParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// `(n², r(n-ε), εn + r² - 3εr, r² - εr)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatinType {
    pub epsilon: i64,
    pub n: u64,
    pub r: u64,
}

impl LatinType {
    pub fn parameters(&self) -> Option<PdsParameters> {
        let (e, n, r) = (self.epsilon, self.n as i64, self.r as i64);
        let k = r * (n - e);
        let lambda = e * n + r * r - 3 * e * r;
        let mu = r * r - e * r;
        (k >= 0 && lambda >= 0 && mu >= 0).then(|| PdsParameters::new((n * n) as u64, k as u64, lambda as u64, mu as u64))
    }

    pub fn is_negative(&self) -> bool {
        self.epsilon < 0
    }
}

impl fmt::Display for LatinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_negative() { "negative Latin square type" } else { "Latin square type" };
        write!(f, "{kind} (ε={:+}, n={}, r={})", self.epsilon, self.n, self.r)
    }
}

/// Latin (`ε = +1`) or negative Latin (`ε = -1`) square type, if the
/// parameters have either form.
pub fn classify_latin_type(p: &PdsParameters) -> Option<LatinType> {
    let n = (p.v as f64).sqrt().round() as u64;
    if n * n != p.v || n < 2 {
        return None;
    }
    for epsilon in [1i64, -1] {
        let step = n as i64 - epsilon;
        if step <= 0 || p.k as i64 % step != 0 {
            continue;
        }
        let r = (p.k as i64 / step) as u64;
        if r == 0 {
            continue;
        }
        let t = LatinType { epsilon, n, r };
        if t.parameters() == Some(*p) {
            return Some(t);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Differences,
    Characters,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Differences => "differences",
            Method::Characters => "characters",
        })
    }
}

/// An accepted PDS.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdsCertificate {
    pub method: Method,
    pub params: PdsParameters,
    /// `S` is empty or all of `G∖{0}`; one of `λ`, `μ` is vacuous and
    /// reported as 0.
    pub trivial: bool,
    /// Distinct nonprincipal character sums, larger first (character method
    /// only).
    pub eigenvalues: Vec<i64>,
}

/// Why a subset was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum PdsRejection {
    ContainsIdentity,
    Asymmetric { element: GroupElement },
    /// Differences inside `S` are not constant.
    LambdaNotConstant { element: GroupElement, count: u64, expected: u64 },
    /// Differences outside `S ∪ {0}` are not constant.
    MuNotConstant { element: GroupElement, count: u64, expected: u64 },
    NonIntegerCharacterSum { label: GroupElement, value: String },
    /// A third distinct nonprincipal character sum.
    TooManyEigenvalues { label: GroupElement, values: Vec<i64> },
    /// The eigenvalues do not come from any `(λ, μ)`.
    InconsistentEigenvalues { values: Vec<i64>, k: u64 },
    UnsupportedExponent { exponent: u32, order: usize },
}

impl fmt::Display for PdsRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdsRejection::ContainsIdentity => write!(f, "set contains the identity"),
            PdsRejection::Asymmetric { element } => write!(f, "set is not symmetric: {element} ∈ S but its negative is not"),
            PdsRejection::LambdaNotConstant { element, count, expected } => {
                write!(f, "element {element} of S occurs {count} times as a difference, expected λ = {expected}")
            }
            PdsRejection::MuNotConstant { element, count, expected } => {
                write!(f, "element {element} outside S occurs {count} times as a difference, expected μ = {expected}")
            }
            PdsRejection::NonIntegerCharacterSum { label, value } => {
                write!(f, "character {label} has non-integer sum {value}")
            }
            PdsRejection::TooManyEigenvalues { label, values } => {
                write!(f, "character {label} gives a third nonprincipal value; values {values:?}")
            }
            PdsRejection::InconsistentEigenvalues { values, k } => {
                write!(f, "nonprincipal values {values:?} with k = {k} match no (λ, μ)")
            }
            PdsRejection::UnsupportedExponent { exponent, order } => {
                write!(f, "no exact character path for exponent {exponent} at order {order}")
            }
        }
    }
}

pub type PdsOutcome = std::result::Result<PdsCertificate, PdsRejection>;

fn check_preconditions(s: &SubsetIndicator) -> std::result::Result<(), PdsRejection> {
    if s.contains_identity() {
        return Err(PdsRejection::ContainsIdentity);
    }
    if let Some(r) = s.first_asymmetric() {
        return Err(PdsRejection::Asymmetric { element: unrank(s, r) });
    }
    Ok(())
}

fn unrank(s: &SubsetIndicator, r: usize) -> GroupElement {
    s.group().unrank(r).expect("rank from the same group")
}

/// Count every difference `d1 - d2` and check it is `λ` on `S` and `μ` off
/// `S ∪ {0}`.
pub fn verify_pds_by_differences(s: &SubsetIndicator) -> PdsOutcome {
    check_preconditions(s)?;
    let counts = difference_counts(s);
    let v = s.group().order();
    let mut lambda = None;
    let mut mu = None;
    for (r, &c) in counts.iter().enumerate().skip(1) {
        let inside = s.contains(r);
        let slot = if inside { &mut lambda } else { &mut mu };
        match *slot {
            None => *slot = Some(c),
            Some(e) if e != c => {
                let element = unrank(s, r);
                return Err(if inside {
                    PdsRejection::LambdaNotConstant { element, count: c, expected: e }
                } else {
                    PdsRejection::MuNotConstant { element, count: c, expected: e }
                });
            }
            Some(_) => {}
        }
    }
    Ok(PdsCertificate {
        method: Method::Differences,
        params: PdsParameters::new(v as u64, s.cardinality() as u64, lambda.unwrap_or(0), mu.unwrap_or(0)),
        trivial: lambda.is_none() || mu.is_none(),
        eigenvalues: Vec::new(),
    })
}

/// Compute every character sum exactly and recover `(λ, μ)` from the
/// nonprincipal values `θ1 > θ2` via `μ = k + θ1θ2`, `λ = μ + θ1 + θ2`.
pub fn verify_pds_by_characters(s: &SubsetIndicator) -> PdsOutcome {
    check_preconditions(s)?;
    let g = s.group();
    let v = g.order();
    let k = s.cardinality() as u64;

    // Integer sums per label, or the first non-integer one.
    let integers: Vec<i64> = match Spectrum::of(s) {
        Some(spec) => {
            let mut out = Vec::with_capacity(v);
            for a in 0..v {
                match spec.integer_value(a) {
                    Some(n) => out.push(n),
                    None => {
                        return Err(PdsRejection::NonIntegerCharacterSum {
                            label: unrank(s, a),
                            value: spec.value(a).to_string(),
                        })
                    }
                }
            }
            out
        }
        None if v <= SLOW_CHARACTER_LIMIT => {
            let sums = all_character_sums(s);
            let mut out = Vec::with_capacity(v);
            for (a, z) in sums.iter().enumerate() {
                match z.as_integer() {
                    Some(n) => out.push(n),
                    None => {
                        return Err(PdsRejection::NonIntegerCharacterSum { label: unrank(s, a), value: z.to_string() })
                    }
                }
            }
            out
        }
        None => return Err(PdsRejection::UnsupportedExponent { exponent: g.exponent(), order: v }),
    };
    debug_assert_eq!(integers[0], k as i64);

    let mut values: Vec<i64> = Vec::with_capacity(2);
    for (a, &n) in integers.iter().enumerate().skip(1) {
        if !values.contains(&n) {
            if values.len() == 2 {
                let mut vs = values.clone();
                vs.push(n);
                return Err(PdsRejection::TooManyEigenvalues { label: unrank(s, a), values: vs });
            }
            values.push(n);
        }
    }
    values.sort_unstable_by(|a, b| b.cmp(a));
    let inconsistent = || PdsRejection::InconsistentEigenvalues { values: values.clone(), k };

    let (params, trivial) = match values.as_slice() {
        [] => (PdsParameters::new(v as u64, k, 0, 0), true),
        [0] if k == 0 => (PdsParameters::new(v as u64, 0, 0, 0), true),
        [-1] if k + 1 == v as u64 => (PdsParameters::new(v as u64, k, v as u64 - 2, 0), true),
        [_] => return Err(inconsistent()),
        [t1, t2] => {
            let mu = k as i64 + t1 * t2;
            let lambda = mu + t1 + t2;
            if mu < 0 || lambda < 0 {
                return Err(inconsistent());
            }
            let p = PdsParameters::new(v as u64, k, lambda as u64, mu as u64);
            if !p.satisfies_counting_identity() {
                return Err(inconsistent());
            }
            (p, false)
        }
        _ => unreachable!("at most two values collected"),
    };
    Ok(PdsCertificate { method: Method::Characters, params, trivial, eigenvalues: values })
}

/// Both verifiers on the same subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub differences: PdsOutcome,
    pub characters: PdsOutcome,
}

impl CrossCheck {
    /// Both accept with the same parameters, or both reject.
    pub fn agree(&self) -> bool {
        match (&self.differences, &self.characters) {
            (Ok(a), Ok(b)) => a.params == b.params && a.trivial == b.trivial,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// The verdict, with the difference route authoritative.
    pub fn params(&self) -> Option<PdsParameters> {
        self.differences.as_ref().ok().map(|c| c.params)
    }
}

pub fn verify_pds_both(s: &SubsetIndicator) -> CrossCheck {
    #[cfg(feature = "parallel")]
    let (differences, characters) = rayon::join(|| verify_pds_by_differences(s), || verify_pds_by_characters(s));
    #[cfg(not(feature = "parallel"))]
    let (differences, characters) = (verify_pds_by_differences(s), verify_pds_by_characters(s));
    CrossCheck { differences, characters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn latin_classification() {
        let t = classify_latin_type(&PdsParameters::new(256, 51, 2, 12)).unwrap();
        assert_eq!(t, LatinType { epsilon: -1, n: 16, r: 3 });
        let t = classify_latin_type(&PdsParameters::new(256, 68, 12, 20)).unwrap();
        assert_eq!(t, LatinType { epsilon: -1, n: 16, r: 4 });
        let t = classify_latin_type(&PdsParameters::new(256, 75, 26, 20)).unwrap();
        assert_eq!(t, LatinType { epsilon: 1, n: 16, r: 5 });
        let t = classify_latin_type(&PdsParameters::new(256, 60, 20, 12)).unwrap();
        assert_eq!(t, LatinType { epsilon: 1, n: 16, r: 4 });
        // the lattice graph L2(6) is Latin with r = 2
        let t = classify_latin_type(&PdsParameters::new(36, 10, 4, 2)).unwrap();
        assert_eq!(t, LatinType { epsilon: 1, n: 6, r: 2 });
        assert_eq!(classify_latin_type(&PdsParameters::new(10, 3, 0, 1)), None);
        assert_eq!(classify_latin_type(&PdsParameters::new(36, 14, 7, 4)), None);
        assert_eq!(classify_latin_type(&PdsParameters::new(16, 15, 14, 0)), None);
    }

    #[test]
    fn latin_formulas_round_trip() {
        for n in 2..20u64 {
            for epsilon in [1i64, -1] {
                for r in 1..n {
                    let t = LatinType { epsilon, n, r };
                    if let Some(p) = t.parameters() {
                        if p.k == 0 || p.k + 1 >= p.v {
                            continue;
                        }
                        assert!(p.satisfies_counting_identity(), "{t}");
                        let back = classify_latin_type(&p).unwrap();
                        assert_eq!(back.parameters(), Some(p));
                    }
                }
            }
        }
    }

    #[test]
    fn eigenvalues_from_parameters() {
        assert_eq!(PdsParameters::new(256, 51, 2, 12).integral_eigenvalues(), Some((3, -13)));
        assert_eq!(PdsParameters::new(256, 68, 12, 20).integral_eigenvalues(), Some((4, -12)));
        // Paley(13) is a conference graph
        assert_eq!(PdsParameters::new(13, 6, 2, 3).integral_eigenvalues(), None);
    }

    #[test]
    fn trivial_sets() {
        let g = GroupSpec::elementary(2, 4).unwrap();
        let all = SubsetIndicator::nonidentity(&g);
        for c in [verify_pds_by_differences(&all), verify_pds_by_characters(&all)] {
            let c = c.unwrap();
            assert!(c.trivial);
            assert_eq!(c.params, PdsParameters::new(16, 15, 14, 0));
        }
        let empty = SubsetIndicator::empty(&g);
        let x = verify_pds_both(&empty);
        assert!(x.agree());
        assert!(x.differences.unwrap().trivial);
    }

    #[test]
    fn preconditions() {
        let g = GroupSpec::new(vec![4]).unwrap();
        let with_zero = SubsetIndicator::from_ranks(&g, [0, 2]).unwrap();
        assert_eq!(verify_pds_by_differences(&with_zero), Err(PdsRejection::ContainsIdentity));
        assert_eq!(verify_pds_by_characters(&with_zero), Err(PdsRejection::ContainsIdentity));
        let asym = SubsetIndicator::from_ranks(&g, [1]).unwrap();
        assert!(matches!(verify_pds_by_differences(&asym), Err(PdsRejection::Asymmetric { .. })));
        assert!(matches!(verify_pds_by_characters(&asym), Err(PdsRejection::Asymmetric { .. })));
    }

    #[test]
    fn paley_conference_graph() {
        // squares in Z_13: a (13,6,2,3) PDS with irrational eigenvalues
        let g = GroupSpec::new(vec![13]).unwrap();
        let squares = SubsetIndicator::from_ranks(&g, (1..13usize).map(|x| x * x % 13)).unwrap();
        let d = verify_pds_by_differences(&squares).unwrap();
        assert_eq!(d.params, PdsParameters::new(13, 6, 2, 3));
        assert!(matches!(verify_pds_by_characters(&squares), Err(PdsRejection::NonIntegerCharacterSum { .. })));
    }

    #[test]
    fn slow_character_path() {
        // {±1, ±2} ⊂ Z_5 is the pentagon, a (5,2,0,1) PDS, irrational
        let g = GroupSpec::new(vec![5]).unwrap();
        let pentagon = SubsetIndicator::from_ranks(&g, [1, 4]).unwrap();
        assert_eq!(verify_pds_by_differences(&pentagon).unwrap().params, PdsParameters::new(5, 2, 0, 1));
        assert!(verify_pds_by_characters(&pentagon).is_err());
        // two lines through 0 in Z_3², minus 0: (9,4,1,2)
        let g = GroupSpec::new(vec![3, 3]).unwrap();
        let cross = SubsetIndicator::from_elements(
            &g,
            &[
                GroupElement::new(vec![1, 0]),
                GroupElement::new(vec![2, 0]),
                GroupElement::new(vec![0, 1]),
                GroupElement::new(vec![0, 2]),
            ],
        )
        .unwrap();
        let x = verify_pds_both(&cross);
        assert!(x.agree());
        assert_eq!(x.params(), Some(PdsParameters::new(9, 4, 1, 2)));
        // exponent 6 goes through direct summation
        let g = GroupSpec::new(vec![6, 6]).unwrap();
        let mut s = SubsetIndicator::empty(&g);
        for i in 1..6u32 {
            s.insert(g.rank(&GroupElement::new(vec![i, 0])).unwrap());
            s.insert(g.rank(&GroupElement::new(vec![0, i])).unwrap());
        }
        let x = verify_pds_both(&s);
        assert!(x.agree());
        // two parallel classes of the 6×6 grid: Latin square type, n = 6, r = 2
        let p = x.params().unwrap();
        assert_eq!(p, PdsParameters::new(36, 10, 4, 2));
        assert_eq!(x.characters.unwrap().eigenvalues, vec![4, -2]);
    }

    #[test]
    fn rejection_witnesses() {
        let g = GroupSpec::elementary(2, 3).unwrap();
        // {e1, e2}: the only difference is e1+e2, counted twice
        let s = SubsetIndicator::from_ranks(&g, [1, 2]).unwrap();
        match verify_pds_by_differences(&s) {
            Err(PdsRejection::MuNotConstant { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let x = verify_pds_both(&s);
        assert!(x.agree());
        assert!(x.characters.is_err());
    }
}
