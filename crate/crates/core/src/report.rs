//! Run the verifiers over a stored class list and collect what they found.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::pds::{
    classify_latin_type, verify_pds_both, verify_pds_by_characters, verify_pds_by_differences, LatinType,
    PdsOutcome, PdsParameters,
};
use crate::scheme::{bell, van_dam_check, AmorphyCertificate, AxiomViolation, NonConstancy, VanDamReport, VanDamVerdict};
use crate::schemefile::SchemeFile;

/// Which PDS verifier(s) to run on each class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PdsMode {
    Differences,
    Characters,
    Both,
}

/// Which amorphy check(s) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmorphyMode {
    Exhaustive,
    Vandam,
    Both,
    None,
}

macro_rules! mode_from_str {
    ($t:ty, $($s:literal => $v:expr),+) => {
        impl FromStr for $t {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($s => Ok($v),)+
                    _ => Err(Error::InvalidParameters(format!("unknown mode {s:?}"))),
                }
            }
        }
    };
}

mode_from_str!(PdsMode, "differences" => PdsMode::Differences, "characters" => PdsMode::Characters, "both" => PdsMode::Both);
mode_from_str!(
    AmorphyMode,
    "exhaustive" => AmorphyMode::Exhaustive,
    "vandam" => AmorphyMode::Vandam,
    "both" => AmorphyMode::Both,
    "none" => AmorphyMode::None
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub pds: PdsMode,
    pub amorphy: AmorphyMode,
    pub fusion_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { pds: PdsMode::Both, amorphy: AmorphyMode::Both, fusion_cap: crate::scheme::DEFAULT_FUSION_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    /// 1-based, as printed.
    pub class: usize,
    pub size: usize,
    pub differences: Option<PdsOutcome>,
    pub characters: Option<PdsOutcome>,
    pub latin: Option<LatinType>,
}

impl ClassReport {
    pub fn params(&self) -> Option<PdsParameters> {
        let first_ok = |o: &Option<PdsOutcome>| o.as_ref().and_then(|r| r.as_ref().ok()).map(|c| c.params);
        first_ok(&self.differences).or_else(|| first_ok(&self.characters))
    }

    /// Every selected verifier accepts, and they agree when both ran.
    pub fn passed(&self) -> bool {
        let ok = |o: &Option<PdsOutcome>| o.as_ref().is_none_or(|r| r.is_ok());
        let agree = match (&self.differences, &self.characters) {
            (Some(Ok(a)), Some(Ok(b))) => a.params == b.params,
            _ => true,
        };
        ok(&self.differences) && ok(&self.characters) && agree && (self.differences.is_some() || self.characters.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub pds_seconds: f64,
    pub axioms_seconds: f64,
    pub amorphy_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: Vec<u32>,
    pub provenance: Option<Value>,
    pub options: VerifyOptions,
    pub partition: std::result::Result<(), AxiomViolation>,
    pub classes: Vec<ClassReport>,
    /// Constancy of every `p_ij^k`; absent if the classes do not partition.
    pub intersection_numbers: Option<std::result::Result<(), NonConstancy>>,
    pub exhaustive: Option<AmorphyCertificate>,
    pub latin_criterion: Option<VanDamReport>,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.partition.is_ok()
            && self.classes.iter().all(ClassReport::passed)
            && matches!(self.intersection_numbers, Some(Ok(())))
            && self.exhaustive.as_ref().is_none_or(|c| c.amorphic)
            && self.latin_criterion.as_ref().is_none_or(VanDamReport::amorphic)
    }
}

fn seconds(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

/// Run every selected check. Only a fusion count beyond the cap is an
/// error; every verification failure is recorded in the report.
pub fn verify(file: &SchemeFile, options: VerifyOptions) -> Result<VerificationReport> {
    let d = file.classes.len();
    let exhaustive_wanted = matches!(options.amorphy, AmorphyMode::Exhaustive | AmorphyMode::Both);
    if exhaustive_wanted && d > options.fusion_cap {
        return Err(Error::FusionCapExceeded { d, cap: options.fusion_cap });
    }

    let t = Instant::now();
    let classes: Vec<ClassReport> = file
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (differences, characters) = match options.pds {
                PdsMode::Differences => (Some(verify_pds_by_differences(c)), None),
                PdsMode::Characters => (None, Some(verify_pds_by_characters(c))),
                PdsMode::Both => {
                    let x = verify_pds_both(c);
                    (Some(x.differences), Some(x.characters))
                }
            };
            let mut r = ClassReport { class: i + 1, size: c.cardinality(), differences, characters, latin: None };
            r.latin = r.params().as_ref().and_then(classify_latin_type);
            r
        })
        .collect();
    let pds_seconds = seconds(t);

    let t = Instant::now();
    let partition = file.check();
    let scheme = partition.is_ok().then(|| file.to_scheme()).transpose()?;
    let intersection_numbers = scheme.as_ref().map(|s| s.intersection_numbers().map(|_| ()));
    let axioms_seconds = seconds(t);

    let t = Instant::now();
    let exhaustive = match (&scheme, exhaustive_wanted) {
        (Some(s), true) => Some(s.verify_amorphic(options.fusion_cap)?),
        _ => None,
    };
    let latin_criterion = matches!(options.amorphy, AmorphyMode::Vandam | AmorphyMode::Both)
        .then(|| van_dam_check(&file.group, &file.classes));
    let amorphy_seconds = seconds(t);

    Ok(VerificationReport {
        group: file.group.factors().to_vec(),
        provenance: file.provenance.clone(),
        options,
        partition,
        classes,
        intersection_numbers,
        exhaustive,
        latin_criterion,
        timing: Timing { pds_seconds, axioms_seconds, amorphy_seconds },
    })
}

fn group_label(factors: &[u32]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let j = (i..factors.len()).find(|&j| factors[j] != factors[i]).unwrap_or(factors.len());
        parts.push(if j - i == 1 { format!("Z{}", factors[i]) } else { format!("Z{}^{}", factors[i], j - i) });
        i = j;
    }
    parts.join(" x ")
}

fn outcome(o: &PdsOutcome) -> String {
    match o {
        Ok(c) if c.eigenvalues.is_empty() => format!("{}{}", c.params, if c.trivial { " (trivial)" } else { "" }),
        Ok(c) => format!("{} eigenvalues {:?}{}", c.params, c.eigenvalues, if c.trivial { " (trivial)" } else { "" }),
        Err(e) => format!("REJECTED: {e}"),
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: u64 = self.group.iter().map(|&m| m as u64).product();
        writeln!(f, "group: {} (order {order}), {} classes", group_label(&self.group), self.classes.len())?;
        if let Some(p) = &self.provenance {
            writeln!(f, "provenance: {p}")?;
        }
        match &self.partition {
            Ok(()) => writeln!(f, "partition: ok")?,
            Err(v) => writeln!(f, "partition: FAIL: {v}")?,
        }
        for c in &self.classes {
            write!(f, "class {}: size {}", c.class, c.size)?;
            if let Some(o) = &c.differences {
                write!(f, "; differences {}", outcome(o))?;
            }
            if let Some(o) = &c.characters {
                write!(f, "; characters {}", outcome(o))?;
            }
            if let Some(t) = &c.latin {
                write!(f, "; {t}")?;
            }
            if !c.passed() {
                write!(f, "; FAIL")?;
            }
            writeln!(f)?;
        }
        match &self.intersection_numbers {
            Some(Ok(())) => writeln!(f, "intersection numbers: constant on every relation")?,
            Some(Err(w)) => writeln!(f, "intersection numbers: FAIL: {w}")?,
            None => writeln!(f, "intersection numbers: not checked (classes do not partition the group)")?,
        }
        if let Some(c) = &self.exhaustive {
            let bell_d = bell(c.classes);
            if c.amorphic {
                writeln!(
                    f,
                    "amorphy: amorphic (exhaustive, Bell({}) = {bell_d} fusions checked, {}/{} pass)",
                    c.classes,
                    c.passed(),
                    c.fusions_checked
                )?;
            } else {
                let r = c.first_failure().expect("not amorphic");
                writeln!(
                    f,
                    "amorphy: NOT amorphic (exhaustive, {}/{} fusions pass); fusion {} fails: {}",
                    c.passed(),
                    c.fusions_checked,
                    r.partition,
                    r.failure.as_ref().expect("failed")
                )?;
            }
        }
        if let Some(v) = &self.latin_criterion {
            match &v.verdict {
                VanDamVerdict::Amorphic { epsilon } => {
                    writeln!(f, "amorphy: amorphic (Latin-type criterion, every class has ε = {epsilon:+})")?
                }
                VanDamVerdict::NotAPartition { violation } => {
                    writeln!(f, "amorphy: Latin-type criterion not applicable: {violation}")?
                }
                VanDamVerdict::ClassNotPds { class } => {
                    writeln!(f, "amorphy: Latin-type criterion not applicable: class {} is not a PDS", class + 1)?
                }
                VanDamVerdict::NotLatinType { class } => writeln!(
                    f,
                    "amorphy: Latin-type criterion not applicable: class {} is of neither Latin square type",
                    class + 1
                )?,
                VanDamVerdict::MixedTypes { first, second } => writeln!(
                    f,
                    "amorphy: Latin-type criterion not applicable: classes {} and {} have opposite ε",
                    first + 1,
                    second + 1
                )?,
            }
        }
        writeln!(
            f,
            "timing: pds {:.3}s, axioms {:.3}s, amorphy {:.3}s",
            self.timing.pds_seconds, self.timing.axioms_seconds, self.timing.amorphy_seconds
        )?;
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cyclotomic_scheme, four_class_scheme, lifted_four_class_scheme};

    #[test]
    fn lifted_scheme_passes_everything() {
        let c = lifted_four_class_scheme(2).unwrap();
        let r = verify(&SchemeFile::from_constructed(&c), VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r}");
        let text = r.to_string();
        assert!(text.contains("amorphic (exhaustive, Bell(4) = 15 fusions checked, 15/15 pass)"), "{text}");
        assert!(text.contains("amorphic (Latin-type criterion, every class has ε = -1)"), "{text}");
        assert!(text.contains("group: Z4^2 x Z2^4 (order 256)"), "{text}");
    }

    #[test]
    fn moved_element_fails_with_witness() {
        let c = four_class_scheme(2).unwrap();
        let mut f = SchemeFile::from_constructed(&c);
        let r = f.classes[1].iter_ranks().next().unwrap();
        f.classes[1].remove(r);
        f.classes[2].insert(r);
        let rep = verify(&f, VerifyOptions::default()).unwrap();
        assert!(!rep.passed());
        assert!(rep.partition.is_ok());
        assert!(matches!(rep.intersection_numbers, Some(Err(_))));
        assert!(!rep.classes[1].passed() && !rep.classes[2].passed());
        assert!(rep.to_string().contains("result: FAIL"));
    }

    #[test]
    fn vandam_only_skips_fusions() {
        let c = four_class_scheme(2).unwrap();
        let opts = VerifyOptions { amorphy: AmorphyMode::Vandam, pds: PdsMode::Differences, ..Default::default() };
        let r = verify(&SchemeFile::from_constructed(&c), opts).unwrap();
        assert!(r.exhaustive.is_none());
        assert!(r.passed());
    }

    #[test]
    fn non_amorphic_names_a_fusion() {
        let c = cyclotomic_scheme(2, 3, 7).unwrap();
        let r = verify(&SchemeFile::from_constructed(&c), VerifyOptions::default()).unwrap();
        assert!(!r.passed());
        assert!(r.to_string().contains("NOT amorphic"));
    }

    #[test]
    fn cap_is_enforced() {
        let c = four_class_scheme(2).unwrap();
        let opts = VerifyOptions { fusion_cap: 3, ..Default::default() };
        assert!(matches!(verify(&SchemeFile::from_constructed(&c), opts), Err(Error::FusionCapExceeded { .. })));
    }

    #[test]
    fn modes_parse() {
        assert_eq!("both".parse::<PdsMode>().unwrap(), PdsMode::Both);
        assert_eq!("vandam".parse::<AmorphyMode>().unwrap(), AmorphyMode::Vandam);
        assert!("fast".parse::<PdsMode>().is_err());
    }

    #[test]
    fn report_serializes() {
        let c = four_class_scheme(2).unwrap();
        let r = verify(&SchemeFile::from_constructed(&c), VerifyOptions::default()).unwrap();
        let v: Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["exhaustive"]["fusions_checked"], 15);
        assert_eq!(v["classes"][0]["differences"]["Ok"]["params"]["k"], 51);
    }
}
