use orbitgraph::constructors::{catalog, catalog_entry};
use orbitgraph::verifier::{analyze_entry, CheckStatus};

fn run(name: &str) {
    let entry = catalog_entry(name).unwrap();
    for action in entry.action_names() {
        let a = analyze_entry(&entry, action).unwrap();
        let r = &a.report;
        println!("{name}/{action}: {:?} sizes {:?} case {:?}", r.shape, r.orbit_sizes, r.theorem_case);
        for item in &r.checklist {
            assert_ne!(item.status, CheckStatus::Fail, "{name}/{action} checklist {item:?}");
        }
        assert!(r.passed(), "{name}/{action}: {:#?}", r.failures());
    }
}

#[test]
fn e1_order12() {
    run("e1-order12");
}

#[test]
fn e2_sl25() {
    run("e2-sl25");
}

#[test]
fn e3_z7xa5() {
    run("e3-z7xa5");
}

#[test]
fn e3_a5() {
    run("e3-a5");
}

#[test]
fn e4_affine2592() {
    run("e4-affine2592");
}

#[test]
fn e5_order72() {
    run("e5-order72");
}

#[test]
fn e6_extraspecial27() {
    run("e6-extraspecial27");
}

#[test]
fn e7_small_groups() {
    run("e7-z2xs3");
    run("e7-dic12");
}

#[test]
fn small_automorphism_examples() {
    run("sl23-aut");
    run("q8-aut");
    run("d8-aut");
}

#[test]
fn frobenius_pairs() {
    for name in ["frob-3-1-5-1", "frob-3-2-5-1", "frob-5-1-7-1"] {
        run(name);
    }
}

#[test]
fn every_entry_has_expectations_for_real_actions() {
    for e in catalog().unwrap() {
        for f in &e.expected {
            assert!(e.action(&f.action).is_some(), "{}: {}", e.name, f.action);
        }
    }
}
