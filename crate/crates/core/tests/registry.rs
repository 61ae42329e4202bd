use std::path::PathBuf;

use tforge::scheme::{AxiomCheck, GroupSpec, SchemeDescriptor, TripleSpace};
use tforge::verify::{self, registry_manifest, RunOptions, Status, Suite};
use tforge::{PrimeModulus, TerwilligerContext};

fn snapshot_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/registry_manifest.json")
}

/// Set TFORGE_BLESS=1 to rewrite the snapshot after an intended change.
#[test]
fn manifest_matches_snapshot() {
    let current = serde_json::to_string_pretty(&registry_manifest()).unwrap() + "\n";
    let path = snapshot_path();
    if std::env::var_os("TFORGE_BLESS").is_some() {
        std::fs::write(&path, &current).unwrap();
    }
    let stored = std::fs::read_to_string(&path).expect("snapshot missing; run with TFORGE_BLESS=1");
    assert_eq!(stored, current, "registry manifest drifted from {}", path.display());
}

#[test]
fn manifest_ids_are_stable_and_unique() {
    let m = registry_manifest();
    let mut ids: Vec<&str> = m.iter().map(|e| e.id.as_str()).collect();
    for anchor in ["Eq.1", "Eq.4", "L1.6", "L1.19", "L2.15.iv", "TP.vi"] {
        assert!(ids.contains(&anchor), "{anchor}");
    }
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), m.len());
}

#[test]
fn transposed_identities_hold_at_n8() {
    for p in [2, 3] {
        let ctx = TerwilligerContext::elementary_abelian(p, 8, 5).unwrap();
        let opts = RunOptions {
            suite: Suite::Identities,
            transposed: true,
            ..Default::default()
        };
        let rep = verify::run(&ctx, &opts);
        assert!(rep.pass, "{:?}", rep.entries.iter().find(|e| e.status == Status::Fail));
        assert!(rep.passed > 50);
    }
}

#[test]
fn seed_changes_samples_not_verdicts() {
    let ctx = TerwilligerContext::elementary_abelian(7, 16, 0).unwrap();
    for seed in [1, 2, 0xdead_beef] {
        let rep = verify::run(
            &ctx,
            &RunOptions {
                seed,
                filter: Some("L2".into()),
                ..Default::default()
            },
        );
        assert!(rep.pass && rep.failed == 0, "seed {seed}");
    }
}

fn s3() -> GroupSpec {
    // permutations of {0,1,2} in lexicographic order, composed left to right
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |q: [usize; 3]| perms.iter().position(|&r| r == q).unwrap();
    let table: Vec<String> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| idx([b[a[0]], b[a[1]], b[a[2]]]).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    GroupSpec::parse_table(&format!("6\n{}", table.join("\n"))).unwrap()
}

fn z2_z4() -> GroupSpec {
    let op = |a: usize, b: usize| ((a / 4 + b / 4) % 2) * 4 + (a % 4 + b % 4) % 4;
    let rows: Vec<String> = (0..8)
        .map(|a| (0..8).map(|b| op(a, b).to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    GroupSpec::parse_table(&format!("8\n{}", rows.join("\n"))).unwrap()
}

#[test]
fn other_groups_run_only_general_entries() {
    let manifest = registry_manifest();
    for (name, group) in [
        ("Z4", GroupSpec::cyclic(4)),
        ("Z8", GroupSpec::cyclic(8)),
        ("Z2xZ4", z2_z4()),
        ("S3", s3()),
    ] {
        let ts = TripleSpace::build(group).unwrap();
        let sd = SchemeDescriptor::build(&ts, AxiomCheck::Full).unwrap();
        for p in [2, 3, 5] {
            let ctx = TerwilligerContext::new(ts.clone(), sd.clone(), PrimeModulus::new(p).unwrap(), 0).unwrap();
            let rep = verify::run(&ctx, &RunOptions::default());
            let failed: Vec<&str> = rep
                .entries
                .iter()
                .filter(|e| e.status == Status::Fail)
                .map(|e| e.id.as_str())
                .collect();
            assert!(failed.is_empty(), "{name} over GF({p}): {failed:?}");
            for e in &rep.entries {
                if manifest.iter().find(|m| m.id == e.id).unwrap().needs_elementary_abelian {
                    assert_eq!(e.status, Status::Skipped, "{name}: {}", e.id);
                }
            }
            assert!(rep.passed > 0);
        }
    }
}
