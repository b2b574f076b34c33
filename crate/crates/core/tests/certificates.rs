use quadrille::fullgroup::F2Word;
use quadrille::lattice::{DeltaWord, VertexCoord};
use quadrille::odometer::{random_element, OdometerElement, OdometerParams};
use quadrille::verify::{
    homogeneity_report, period_breaker, validate_certificate, verify_free_subgroup, verify_nontrivial_action,
    AperiodicityCertificate, HomogeneityReport, WitnessCertificate,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn witness_json_round_trip_revalidates() {
    for word in ["A", "CB", "ABCACB", "BCBCBCBCBCBC"] {
        let w: DeltaWord = word.parse().unwrap();
        let cert = verify_nontrivial_action(&w).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let back: WitnessCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        validate_certificate(&back).unwrap();
    }
}

#[test]
fn witness_json_survives_wide_columns() {
    // Index 764 is the last word of length 8; its witness column is 2^764.
    let w: DeltaWord = "CBCBCBCB".parse().unwrap();
    let cert = verify_nontrivial_action(&w).unwrap();
    assert_eq!(cert.index, 764);
    let value: serde_json::Value = serde_json::to_value(&cert).unwrap();
    let x = value["witness"]["x"].as_str().unwrap();
    assert_eq!(x, (num_bigint::BigInt::from(1u8) << 764u32).to_string());
    assert_eq!(x.len(), 230);
    let back: WitnessCertificate = serde_json::from_value(value).unwrap();
    validate_certificate(&back).unwrap();
}

#[test]
fn aperiodicity_json_round_trip() {
    let cert = period_breaker(&VertexCoord::new(-12, 5)).unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    let back: AperiodicityCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    back.validate().unwrap();
}

#[test]
fn homogeneity_json_round_trip() {
    let report = homogeneity_report(1, 12).unwrap();
    let back: HomogeneityReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(back, report);
}

#[test]
fn odometer_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 0..=2 {
        for p in [2, 3, 5] {
            let e = random_element(OdometerParams::new(p, n).unwrap(), &mut rng).unwrap();
            let back: OdometerElement = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
            assert_eq!(back.translations(), e.translations());
            assert_eq!(back.params(), e.params());
        }
    }
}

#[test]
fn free_subgroup_counts_follow_the_growth_law() {
    let summary = verify_free_subgroup(5).unwrap();
    let expected: Vec<String> = (0..5).map(|l| (4 * 3usize.pow(l)).to_string()).collect();
    assert_eq!(summary.per_length, expected);
    assert_eq!(summary.words_checked, F2Word::enumerate(5).len());
    assert_eq!(summary.longest_image, 10);
}
