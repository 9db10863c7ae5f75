//! Translation association schemes: a group and a partition of its
//! nonidentity elements into symmetric connection sets.
//!
//! The scheme axiom for triples `(x, z, y)` is only checked at `x = 0`; every
//! relation is translation invariant, so this suffices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{convolve, has_fast_transform, GroupElement, GroupSpec, Spectrum, SubsetIndicator};
use crate::pds::{classify_latin_type, verify_pds_by_differences, LatinType, PdsParameters, PdsRejection};

/// Largest number of classes for which all fusions are enumerated
/// (`Bell(8) = 4140`).
pub const DEFAULT_FUSION_CAP: usize = 8;

/// Which scheme invariant a class list violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum AxiomViolation {
    NoClasses,
    WrongGroup { class: usize },
    EmptyClass { class: usize },
    IdentityInClass { class: usize },
    AsymmetricClass { class: usize, element: GroupElement },
    Overlap { first: usize, second: usize, element: GroupElement },
    Uncovered { element: GroupElement },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NoClasses => write!(f, "no classes"),
            AxiomViolation::WrongGroup { class } => write!(f, "class {} lives in a different group", class + 1),
            AxiomViolation::EmptyClass { class } => write!(f, "class {} is empty", class + 1),
            AxiomViolation::IdentityInClass { class } => write!(f, "class {} contains the identity", class + 1),
            AxiomViolation::AsymmetricClass { class, element } => {
                write!(f, "class {} is not symmetric: contains {element} but not its negative", class + 1)
            }
            AxiomViolation::Overlap { first, second, element } => {
                write!(f, "classes {} and {} both contain {element}", first + 1, second + 1)
            }
            AxiomViolation::Uncovered { element } => write!(f, "element {element} is in no class"),
        }
    }
}

/// Check the partition invariants without building a scheme.
pub fn check_partition(group: &GroupSpec, classes: &[SubsetIndicator]) -> std::result::Result<(), AxiomViolation> {
    if classes.is_empty() {
        return Err(AxiomViolation::NoClasses);
    }
    let v = group.order();
    let element = |r: usize| group.unrank(r).expect("rank in range");
    let mut owner: Vec<Option<usize>> = vec![None; v];
    for (i, c) in classes.iter().enumerate() {
        if c.group() != group {
            return Err(AxiomViolation::WrongGroup { class: i });
        }
        if c.is_empty() {
            return Err(AxiomViolation::EmptyClass { class: i });
        }
        if c.contains_identity() {
            return Err(AxiomViolation::IdentityInClass { class: i });
        }
        if let Some(r) = c.first_asymmetric() {
            return Err(AxiomViolation::AsymmetricClass { class: i, element: element(r) });
        }
        for r in c.iter_ranks() {
            if let Some(j) = owner[r] {
                return Err(AxiomViolation::Overlap { first: j, second: i, element: element(r) });
            }
            owner[r] = Some(i);
        }
    }
    if let Some(r) = (1..v).find(|&r| owner[r].is_none()) {
        return Err(AxiomViolation::Uncovered { element: element(r) });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq)]
pub struct TranslationScheme {
    group: GroupSpec,
    classes: Vec<SubsetIndicator>,
}

impl fmt::Debug for TranslationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TranslationScheme({}, sizes {:?})", self.group, self.class_sizes())
    }
}

impl TranslationScheme {
    /// Validate that `classes` partition `G∖{0}` into nonempty symmetric sets.
    pub fn assemble(group: GroupSpec, classes: Vec<SubsetIndicator>) -> Result<Self> {
        check_partition(&group, &classes).map_err(|e| Error::InvalidPartition(e.to_string()))?;
        Ok(TranslationScheme { group, classes })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn classes(&self) -> &[SubsetIndicator] {
        &self.classes
    }

    /// Number of classes `d`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, i: usize) -> Result<&SubsetIndicator> {
        self.classes.get(i).ok_or(Error::ClassIndexOutOfRange { index: i, classes: self.classes.len() })
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.cardinality()).collect()
    }

    /// Index of the class containing a nonidentity rank.
    pub fn class_of(&self, rank: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(rank))
    }

    /// Same classes irrespective of order.
    pub fn same_partition(&self, other: &TranslationScheme) -> bool {
        self.group == other.group
            && self.classes.len() == other.classes.len()
            && self.classes.iter().all(|c| other.classes.contains(c))
    }

    pub fn fuse(&self, partition: &FusionPartition) -> Result<TranslationScheme> {
        partition.check(self.classes.len())?;
        let classes = partition
            .blocks()
            .iter()
            .map(|b| {
                let mut u = SubsetIndicator::empty(&self.group);
                for &i in b {
                    for r in self.classes[i].iter_ranks() {
                        u.insert(r);
                    }
                }
                u
            })
            .collect();
        Ok(TranslationScheme { group: self.group.clone(), classes })
    }


    /// `p_ij^k` for all relations `0 ≤ i, j, k ≤ d`, or the first place
    /// where a count is not constant on a class.
    pub fn intersection_numbers(&self) -> std::result::Result<IntersectionNumbers, NonConstancy> {
        let blocks: Vec<Vec<usize>> = (0..self.classes.len()).map(|i| vec![i]).collect();
        Kernel::new(self).intersection_numbers(&blocks, &self.classes)
    }

    /// `(v, k, λ, μ)` of class `i` read off the two-class fusion
    /// `{S_i, G∖(S_i ∪ {0})}` as `(v, n_1, p_11^1, p_11^2)`, cross-checked
    /// against the difference verifier.
    pub fn srg_parameters_of_class(&self, i: usize) -> Result<PdsParameters> {
        let d = self.classes.len();
        if i >= d {
            return Err(Error::ClassIndexOutOfRange { index: i, classes: d });
        }
        let v = self.group.order() as u64;
        let params = if d == 1 {
            let p = self.intersection_numbers().map_err(|w| Error::Internal(w.to_string()))?;
            PdsParameters::new(v, p.valency(1), p.get(1, 1, 1), 0)
        } else {
            let rest: Vec<usize> = (0..d).filter(|&j| j != i).collect();
            let two = self.fuse(&FusionPartition::new(vec![vec![i], rest])?)?;
            let p = two.intersection_numbers().map_err(|w| Error::Internal(w.to_string()))?;
            PdsParameters::new(v, p.valency(1), p.get(1, 1, 1), p.get(1, 1, 2))
        };
        match verify_pds_by_differences(&self.classes[i]) {
            Ok(c) if c.params == params => Ok(params),
            Ok(c) => Err(Error::Internal(format!(
                "class {} has PDS parameters {} but its two-class fusion gives {params}",
                i + 1,
                c.params
            ))),
            Err(e) => Err(Error::Internal(format!("class {} is not a PDS ({e}) yet its two-class fusion is a scheme", i + 1))),
        }
    }

    /// Check the scheme axiom on every fusion of the classes, in the
    /// deterministic order of [`enumerate_fusions`].
    pub fn verify_amorphic(&self, cap: usize) -> Result<AmorphyCertificate> {
        let d = self.classes.len();
        let partitions = enumerate_fusions(d, cap)?;
        let kernel = Kernel::new(self);
        let check = |p: &FusionPartition| {
            let fused = self.fuse(p).expect("enumerated partitions are valid");
            let failure = kernel.intersection_numbers(p.blocks(), fused.classes()).err();
            FusionResult { partition: p.clone(), failure }
        };
        #[cfg(feature = "parallel")]
        let results: Vec<FusionResult> = {
            use rayon::prelude::*;
            partitions.par_iter().map(check).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let results: Vec<FusionResult> = partitions.iter().map(check).collect();
        let amorphic = results.iter().all(|r| r.failure.is_none());
        log::debug!("checked {} fusions of a {d}-class scheme, amorphic = {amorphic}", results.len());
        Ok(AmorphyCertificate { classes: d, fusions_checked: results.len(), amorphic, results })
    }
}

/// Spectra of the original classes, shared by every fusion: the spectrum of
/// a union of disjoint classes is the sum of their spectra.
struct Kernel<'a> {
    scheme: &'a TranslationScheme,
    spectra: Option<Vec<Spectrum>>,
}

impl<'a> Kernel<'a> {
    fn new(scheme: &'a TranslationScheme) -> Self {
        let spectra = has_fast_transform(&scheme.group)
            .then(|| scheme.classes.iter().map(|c| Spectrum::of(c).expect("fast transform available")).collect());
        Kernel { scheme, spectra }
    }

    /// `fused[b]` must be the union of the original classes `blocks[b]`.
    fn intersection_numbers(
        &self,
        blocks: &[Vec<usize>],
        fused: &[SubsetIndicator],
    ) -> std::result::Result<IntersectionNumbers, NonConstancy> {
        let group = &self.scheme.group;
        let v = group.order();
        let d = fused.len();
        let mut relation = vec![0usize; v];
        for (b, c) in fused.iter().enumerate() {
            for r in c.iter_ranks() {
                relation[r] = b + 1;
            }
        }
        let block_spectra: Option<Vec<Spectrum>> = self.spectra.as_ref().map(|all| {
            blocks
                .iter()
                .map(|b| {
                    let mut acc = all[b[0]].clone();
                    for &i in &b[1..] {
                        acc.add_assign(&all[i]);
                    }
                    acc
                })
                .collect()
        });

        let n = d + 1;
        let mut table: Vec<Option<u64>> = vec![None; n * n * n];
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let mut valencies = vec![1u64];
        valencies.extend(fused.iter().map(|c| c.cardinality() as u64));
        for i in 0..n {
            for k in 0..n {
                table[idx(0, i, k)] = Some((i == k) as u64);
                table[idx(i, 0, k)] = Some((i == k) as u64);
            }
        }
        for i in 1..n {
            for j in i..n {
                let counts: Vec<u64> = match &block_spectra {
                    Some(sp) => sp[i - 1]
                        .pointwise_product(&sp[j - 1])
                        .inverse()
                        .expect("product of indicator spectra inverts integrally")
                        .into_iter()
                        .map(|c| c as u64)
                        .collect(),
                    None => convolve(&fused[i - 1], &fused[j - 1]).expect("same group"),
                };
                for (y, &c) in counts.iter().enumerate() {
                    let k = relation[y];
                    match table[idx(i, j, k)] {
                        None => table[idx(i, j, k)] = Some(c),
                        Some(e) if e != c => {
                            return Err(NonConstancy {
                                i,
                                j,
                                k,
                                element: group.unrank(y).expect("rank in range"),
                                count: c,
                                expected: e,
                            })
                        }
                        Some(_) => {}
                    }
                }
                for k in 0..n {
                    table[idx(j, i, k)] = table[idx(i, j, k)];
                }
            }
        }
        Ok(IntersectionNumbers {
            classes: d,
            valencies,
            p: table.into_iter().map(|x| x.expect("every relation is nonempty")).collect(),
        })
    }
}

/// The counts `p_ij^k`, indexed by relation (0 is the identity relation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionNumbers {
    classes: usize,
    valencies: Vec<u64>,
    p: Vec<u64>,
}

impl IntersectionNumbers {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        let n = self.classes + 1;
        self.p[(i * n + j) * n + k]
    }

    /// `n_i = p_ii^0`.
    pub fn valency(&self, i: usize) -> u64 {
        self.valencies[i]
    }

    /// `n_i n_j = Σ_k p_ij^k n_k` for all `i, j`.
    pub fn satisfies_accounting_identity(&self) -> bool {
        let n = self.classes + 1;
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.valency(i) * self.valency(j) == (0..n).map(|k| self.get(i, j, k) * self.valency(k)).sum::<u64>()
            })
        })
    }
}

/// `#{z : z ∈ S_i, y - z ∈ S_j}` differs between two `y` in the same
/// relation `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonConstancy {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub element: GroupElement,
    pub count: u64,
    pub expected: u64,
}

impl fmt::Display for NonConstancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p_{{{},{}}}^{} is not constant: y = {} gives {}, another element of relation {} gives {}",
            self.i, self.j, self.k, self.element, self.count, self.k, self.expected
        )
    }
}

/// A set partition of the class indices `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct FusionPartition {
    blocks: Vec<Vec<usize>>,
}

impl FusionPartition {
    /// Blocks must be nonempty and pairwise disjoint.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in b {
                if !seen.insert(i) {
                    return Err(Error::InvalidPartition(format!("class {} appears twice", i + 1)));
                }
            }
        }
        Ok(FusionPartition { blocks })
    }

    /// Each class in its own block.
    pub fn identity(d: usize) -> Self {
        FusionPartition { blocks: (0..d).map(|i| vec![i]).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Check the blocks cover exactly `0..d`.
    pub fn check(&self, d: usize) -> Result<()> {
        let total: usize = self.blocks.iter().map(|b| b.len()).sum();
        if total != d || self.blocks.iter().flatten().any(|&i| i >= d) {
            return Err(Error::InvalidPartition(format!("\"{self}\" is not a partition of the classes 1..{d}")));
        }
        Ok(())
    }

    /// The partition of `0..d` obtained by applying `self` and then
    /// `coarser` to the resulting blocks.
    pub fn then(&self, coarser: &FusionPartition) -> Result<FusionPartition> {
        coarser.check(self.blocks.len())?;
        let blocks = coarser
            .blocks
            .iter()
            .map(|cb| {
                let mut b: Vec<usize> = cb.iter().flat_map(|&i| self.blocks[i].iter().copied()).collect();
                b.sort_unstable();
                b
            })
            .collect();
        Ok(FusionPartition { blocks })
    }
}

/// 1-based, blocks separated by `|`, classes by `,`: `1|2,3,4`.
impl fmt::Display for FusionPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, b) in self.blocks.iter().enumerate() {
            if bi > 0 {
                f.write_str("|")?;
            }
            for (i, c) in b.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", c + 1)?;
            }
        }
        Ok(())
    }
}

impl FromStr for FusionPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|b| {
                b.split(',')
                    .map(|t| match t.trim().parse::<usize>() {
                        Ok(n) if n >= 1 => Ok(n - 1),
                        _ => Err(Error::InvalidPartition(format!("bad class index {t:?} in {s:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FusionPartition::new(blocks)
    }
}

impl TryFrom<String> for FusionPartition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FusionPartition> for String {
    fn from(p: FusionPartition) -> String {
        p.to_string()
    }
}

/// `Bell(d)`, the number of set partitions of `d` items.
pub fn bell(d: usize) -> u64 {
    // Bell triangle
    let mut row = vec![1u64];
    for _ in 0..d {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Every set partition of `0..d`, as restricted growth strings in
/// lexicographic order (all-in-one first, all-singletons last).
pub fn enumerate_fusions(d: usize, cap: usize) -> Result<Vec<FusionPartition>> {
    if d == 0 {
        return Err(Error::InvalidPartition("a scheme has at least one class".into()));
    }
    if d > cap {
        return Err(Error::FusionCapExceeded { d, cap });
    }
    let mut out = Vec::with_capacity(bell(d) as usize);
    let mut rgs = vec![0usize; d];
    fn rec(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<FusionPartition>) {
        if pos == rgs.len() {
            let mut blocks = vec![Vec::new(); max + 1];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i);
            }
            out.push(FusionPartition { blocks });
            return;
        }
        for b in 0..=max + 1 {
            rgs[pos] = b;
            rec(pos + 1, max.max(b), rgs, out);
        }
    }
    rec(1, 0, &mut rgs, &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionResult {
    pub partition: FusionPartition,
    pub failure: Option<NonConstancy>,
}

/// Outcome of checking every fusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmorphyCertificate {
    pub classes: usize,
    pub fusions_checked: usize,
    pub amorphic: bool,
    pub results: Vec<FusionResult>,
}

impl AmorphyCertificate {
    pub fn first_failure(&self) -> Option<&FusionResult> {
        self.results.iter().find(|r| r.failure.is_some())
    }

    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.failure.is_none()).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub size: usize,
    pub pds: std::result::Result<PdsParameters, PdsRejection>,
    pub latin: Option<LatinType>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VanDamVerdict {
    /// Every class is a PDS of the same Latin type `ε`.
    Amorphic { epsilon: i64 },
    NotAPartition { violation: AxiomViolation },
    ClassNotPds { class: usize },
    NotLatinType { class: usize },
    MixedTypes { first: usize, second: usize },
}

/// The Latin-type sufficient condition for amorphy: an edge decomposition
/// of the complete graph into strongly regular graphs all of Latin square
/// type, or all of negative Latin square type, is amorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanDamReport {
    pub classes: Vec<ClassVerdict>,
    pub verdict: VanDamVerdict,
}

impl VanDamReport {
    pub fn amorphic(&self) -> bool {
        matches!(self.verdict, VanDamVerdict::Amorphic { .. })
    }
}

/// Works on a raw class list; no scheme axioms are presupposed.
pub fn van_dam_check(group: &GroupSpec, classes: &[SubsetIndicator]) -> VanDamReport {
    let verdicts: Vec<ClassVerdict> = classes
        .iter()
        .map(|c| {
            let pds = verify_pds_by_differences(c).map(|cert| cert.params);
            let latin = pds.as_ref().ok().and_then(classify_latin_type);
            ClassVerdict { size: c.cardinality(), pds, latin }
        })
        .collect();
    let verdict = (|| {
        if let Some(class) = verdicts.iter().position(|v| v.pds.is_err()) {
            return VanDamVerdict::ClassNotPds { class };
        }
        if let Some(class) = verdicts.iter().position(|v| v.latin.is_none()) {
            return VanDamVerdict::NotLatinType { class };
        }
        if let Some(first) = verdicts.first() {
            let eps = first.latin.expect("checked").epsilon;
            if let Some(second) = verdicts.iter().position(|v| v.latin.expect("checked").epsilon != eps) {
                return VanDamVerdict::MixedTypes { first: 0, second };
            }
        }
        match check_partition(group, classes) {
            Err(violation) => VanDamVerdict::NotAPartition { violation },
            Ok(()) => VanDamVerdict::Amorphic { epsilon: verdicts[0].latin.expect("checked").epsilon },
        }
    })();
    VanDamReport { classes: verdicts, verdict }
}
