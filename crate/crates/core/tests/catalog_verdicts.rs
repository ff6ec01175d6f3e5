use gptlab::catalog::{all_entries, CatalogEntry};

fn check(entry: &CatalogEntry) {
    let out = entry.evaluate().unwrap_or_else(|e| panic!("{}: {e}", entry.name));
    let rows = entry.expected.compare(&out);
    for r in &rows {
        println!("{:<22} {:<18} expected {} | actual {} | {}", entry.name, r.claim, r.expected, r.actual, r.pass);
    }
    assert!(rows.iter().all(|r| r.pass), "{} mismatched: {rows:#?}", entry.name);
    if let Some(c) = &entry.companion {
        check(c);
    }
}

#[test]
fn every_entry_matches_expectations() {
    for e in all_entries().unwrap() {
        check(&e);
    }
}
