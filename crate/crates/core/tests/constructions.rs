//! Larger instances than the unit tests, checked against each
//! construction's own closed-form descriptor.

use amorphic::constructions::{
    chain_scheme, cyclotomic_scheme, four_class_scheme, hamilton_fusion, hamilton_fusion_scheme,
    lifted_four_class_scheme, rotation_scheme, Constructed,
};
use amorphic::pds::{classify_latin_type, verify_pds_by_characters, verify_pds_by_differences};
use amorphic::quadratic::FormType;
use amorphic::scheme::{van_dam_check, DEFAULT_FUSION_CAP};

fn matches_descriptor(c: &Constructed, by_characters: bool) {
    assert_eq!(c.scheme.class_sizes(), c.descriptor.expected_sizes, "{}", c.descriptor);
    assert_eq!(c.scheme.class_sizes().iter().sum::<usize>(), c.scheme.group().order() - 1);
    for (i, want) in c.descriptor.expected_params.iter().enumerate() {
        let class = c.scheme.class(i).unwrap();
        let got = if by_characters { verify_pds_by_characters(class) } else { verify_pds_by_differences(class) };
        let got = got.unwrap_or_else(|e| panic!("{} class {}: {e}", c.descriptor, i + 1)).params;
        if let Some(want) = want {
            assert_eq!(got, *want, "{} class {}", c.descriptor, i + 1);
        }
        if let Some(eps) = c.descriptor.expected_epsilon {
            assert_eq!(classify_latin_type(&got).map(|t| t.epsilon), Some(eps));
        }
    }
}

#[test]
fn four_class_and_lift_at_ell_3() {
    for c in [four_class_scheme(3).unwrap(), lifted_four_class_scheme(3).unwrap()] {
        assert_eq!(c.scheme.group().order(), 4096);
        matches_descriptor(&c, false);
        let cert = c.scheme.verify_amorphic(DEFAULT_FUSION_CAP).unwrap();
        assert!(cert.amorphic && cert.fusions_checked == 15);
    }
    assert_eq!(lifted_four_class_scheme(3).unwrap().scheme.group().factors(), &[4, 4, 2, 2, 2, 2, 2, 2, 2, 2]);
}

#[test]
fn rotation_q4_on_f16_to_the_4() {
    let r = rotation_scheme(4, 2).unwrap();
    assert_eq!(r.constructed.scheme.group().order(), 65536);
    assert_eq!(r.constructed.scheme.class_count(), 6);
    matches_descriptor(&r.constructed, true);
    assert!(van_dam_check(r.constructed.scheme.group(), r.constructed.scheme.classes()).amorphic());
}

#[test]
fn rotation_needs_ell_2_and_a_known_field() {
    assert!(rotation_scheme(3, 1).is_err());
    assert!(rotation_scheme(6, 2).is_err());
    assert!(rotation_scheme(11, 2).is_err());
}

#[test]
fn three_step_chains() {
    for form in [FormType::Elliptic, FormType::Hyperbolic] {
        let c = chain_scheme(2, 4, 1, &[4, 2, 1], form).unwrap();
        matches_descriptor(&c.constructed, false);
        let s = &c.constructed.scheme;
        assert!(van_dam_check(s.group(), s.classes()).amorphic());
        assert!(s.verify_amorphic(DEFAULT_FUSION_CAP).unwrap().amorphic);
        let h = hamilton_fusion_scheme(&c).unwrap();
        matches_descriptor(&h, false);
        assert_eq!(h.scheme.class(0).unwrap(), &hamilton_fusion(&c));
    }
    let c = chain_scheme(2, 4, 1, &[4, 2, 1], FormType::Hyperbolic).unwrap();
    assert!(c.pieces.iter().all(Option::is_some));
}

#[test]
fn chain_over_odd_characteristic() {
    let c = chain_scheme(3, 2, 2, &[2, 1], FormType::Elliptic).unwrap();
    assert_eq!(c.constructed.scheme.group().order(), 6561);
    matches_descriptor(&c.constructed, false);
}

#[test]
fn cyclotomic_predictions_hold() {
    for (p, s, e) in [(2, 4, 3), (2, 4, 5), (2, 6, 3), (2, 6, 7), (3, 4, 8), (3, 2, 4), (3, 4, 5), (5, 2, 4), (5, 2, 3), (2, 3, 7)] {
        let c = cyclotomic_scheme(p, s, e).unwrap();
        let cert = c.scheme.verify_amorphic(DEFAULT_FUSION_CAP).unwrap();
        assert_eq!(Some(cert.amorphic), c.descriptor.predicted_amorphic, "({p},{s},{e})");
    }
}
