use std::collections::BTreeSet;

use modforms::forms::{parse_expr, TRIANGLE_GROUPS};
use modforms::identity::*;
use modforms::qseries::int;

#[test]
fn catalog_parses_and_ids_are_unique() {
    let recs = catalog();
    assert!(recs.len() >= 150);
    assert!(recs.windows(2).all(|w| w[0].id < w[1].id));
}

#[test]
fn every_citation_is_covered_and_used() {
    let cited: BTreeSet<&str> = catalog().iter().map(|r| r.citation.as_str()).collect();
    let listed: BTreeSet<&str> = COVERAGE.iter().copied().collect();
    let unknown: Vec<_> = cited.difference(&listed).collect();
    let unused: Vec<_> = listed.difference(&cited).collect();
    assert!(unknown.is_empty(), "records cite statements outside the coverage list: {unknown:?}");
    assert!(unused.is_empty(), "coverage entries without a record: {unused:?}");
    for tier in Tier::ALL {
        assert!(catalog().iter().any(|r| r.tier == tier), "{tier} has no records");
    }
}

#[test]
fn every_group_has_its_records() {
    for g in &TRIANGLE_GROUPS {
        for prefix in ["system.triangle", "system.gdh", "chazy.general", "hyp", "hyp.tdot"] {
            let id = format!("{prefix}.{}", g.id);
            assert!(catalog().iter().any(|r| r.id == id), "missing {id}");
        }
    }
}

#[test]
fn trivial_identity_passes_at_any_precision() {
    let x = parse_expr("(* A4 B4)").unwrap();
    let rec = IdentityRecord::equation("x", Tier::Golden, x.clone(), x, 0);
    for p in [1, 7, 33] {
        assert!(verify(&rec, Some(&int(p))).pass);
    }
}

#[test]
fn wrong_identity_reports_first_bad_exponent() {
    // A4^2 = 2E2(q^2) - E2(q), perturbed to 2E2(q^2) - E2(q) + 3q^5
    let lhs = parse_expr("(^ A4 2)").unwrap();
    let rhs = parse_expr("(+ (* 2 (subst 2 E2)) (- E2) (* 3 (q 5)))").unwrap();
    let rep = verify(&IdentityRecord::equation("bad", Tier::Golden, lhs, rhs, 0), Some(&int(20)));
    assert!(!rep.pass);
    let f = rep.first_failure.unwrap();
    assert_eq!(f.exponent, int(5));
    let diff: i64 = f.rhs.parse::<i64>().unwrap() - f.lhs.parse::<i64>().unwrap();
    assert_eq!(diff, 3);
    // below the perturbation the record holds
    assert!(verify(&IdentityRecord::equation("ok", Tier::Golden, parse_expr("(^ A4 2)").unwrap(),
        parse_expr("(+ (* 2 (subst 2 E2)) (- E2) (* 3 (q 5)))").unwrap(), 0), Some(&int(5))).pass);
}

#[test]
fn quadratic_failures_name_the_component() {
    let lhs = parse_expr("(^ C4 2)").unwrap();
    let rhs = parse_expr("(+ (^ C4 2) (* w (q 1/2)))").unwrap();
    let rep = verify(&IdentityRecord::equation("c", Tier::Golden, lhs, rhs, 2), Some(&int(4)));
    let f = rep.first_failure.unwrap();
    assert_eq!(f.component.as_deref(), Some("radical"));
}

fn perturbed(from: &str, to: &str, id: &str) -> VerdictReport {
    assert!(CATALOG_TOML.contains(from), "{from}");
    let recs = parse_catalog(&CATALOG_TOML.replacen(from, to, 1)).unwrap();
    let rec = recs.iter().find(|r| r.id == id).unwrap();
    verify(rec, None)
}

#[test]
fn perturbed_records_fail() {
    assert!(!perturbed("(* 30 (^ (d theta3) 3))", "(* 31 (^ (d theta3) 3))", "chazy.jacobi.theta3").pass);
    assert!(!perturbed("(* 24 (^ (un 12 4 g1.E) 2))", "(* 25 (^ (un 12 4 g1.E) 2))", "chazy.p12.g1").pass);
    assert!(!perturbed("w = \"15,1,-1,1\"", "w = \"15,1,1,1\"", "counting.r8").pass);
    let rep = perturbed("(* 5 (- (/ (d g1.Arho)", "(* 6 (- (/ (d g1.Arho)", "system.gdh.g1");
    assert!(!rep.pass);
    assert_eq!(rep.checks.iter().filter(|c| !c.pass).count(), 1);
}

#[test]
fn malformed_catalogs_are_rejected() {
    assert!(matches!(parse_catalog("[[record]]\nid = 1"), Err(CatalogError::Toml(_))));
    let dup = "[[record]]\nid = \"a\"\ntier = \"golden\"\ncitation = \"x\"\n[[record.check]]\nzero = \"0\"\n";
    assert!(matches!(parse_catalog(&format!("{dup}{dup}")), Err(CatalogError::Duplicate(_))));
    let bad_expr = dup.replace("zero = \"0\"", "zero = \"(+ A4\"");
    assert!(matches!(parse_catalog(&bad_expr), Err(CatalogError::Record { .. })));
    let bad_field = dup.replace("tier", "field = 1\ntier");
    assert!(matches!(parse_catalog(&bad_field), Err(CatalogError::Record { .. })));
}

#[test]
fn selection_by_id_and_tier() {
    let recs = catalog();
    assert_eq!(select(recs, &["golden.A4sq".into()]).len(), 1);
    assert_eq!(select(recs, &["agm".into()]).len(), 12);
    assert_eq!(select(recs, &["golden.A2*".into()]).len(), 8);
    assert!(select(recs, &["nothing-matches".into()]).is_empty());
}

#[test]
fn doubling_precision_keeps_verdicts() {
    let opts = RunOptions { filters: vec!["golden.A3*".into(), "agm.sig3.*".into(), "system.sig3".into()], ..Default::default() };
    let base = run(catalog(), &opts);
    let doubled = run(catalog(), &RunOptions { precision: Some(int(100)), ..opts });
    assert!(!base.is_empty());
    for (a, b) in base.iter().zip(&doubled) {
        assert_eq!(a.id, b.id);
        assert_eq!(a.pass, b.pass, "{}", a.id);
    }
}

#[test]
fn reports_serialize_deterministically() {
    let opts = RunOptions { filters: vec!["golden.kk.*".into(), "counting.t2".into()], jobs: Some(3), ..Default::default() };
    let a = serde_json::to_string(&run(catalog(), &opts)).unwrap();
    let b = serde_json::to_string(&run(catalog(), &RunOptions { jobs: Some(1), ..opts })).unwrap();
    assert_eq!(a, b);
    assert!(!a.contains("millis"));
    assert!(a.contains("\"precision\":\"50\""));
}

#[test]
fn counting_examples() {
    let r2 = lattice_counts(CountKind::Squares, 1, 3);
    assert_eq!((r2[1], r2[3]), (4, 0));
    let r6 = lattice_counts(CountKind::Squares, 3, 1);
    assert_eq!(r6[1], 12);
    let rec = catalog().iter().find(|r| r.id == "counting.t4").unwrap();
    let table = counting_table(rec.counting.as_ref().unwrap(), 10).unwrap();
    assert!(table.iter().all(|row| row.agree));
    // t4(n) = 16 sigma_1(2n+1; 1)
    assert_eq!(table[1].lattice, "64");
    let r8 = catalog().iter().find(|r| r.id == "counting.r8").unwrap();
    assert_eq!(r8.counting.as_ref().unwrap().formulas.len(), 2);
}

#[test]
fn named_suites() {
    assert!(verify_system("ramanujan").pass);
    assert!(verify_system("r3").pass);
    let four_a = verify_system("4a");
    assert!(four_a.pass);
    assert_eq!(four_a.records.len(), 2);
    assert!(verify_chazy("r4").pass);
    assert!(verify_chazy("6a").pass);
    assert!(verify_agm().pass);
    assert!(!verify_system("no-such-group").pass);
}
