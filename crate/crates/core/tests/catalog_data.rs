//! The shipped catalog data file must agree with the built-in catalog.

use spherical_fermat::belyi;

#[test]
fn shipped_catalog_matches_builtins() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog.json");
    let text = std::fs::read_to_string(path).expect("data/catalog.json");
    let loaded = belyi::load_catalog(&text).expect("every shipped map validates");
    let builtin = belyi::catalog_all();
    assert_eq!(loaded.len(), builtin.len());
    for (a, b) in loaded.iter().zip(builtin) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.sig, b.sig);
        assert_eq!(a.phi0, b.phi0);
        assert_eq!(a.phi_inf, b.phi_inf);
        assert_eq!(a.resultant(), b.resultant());
        assert_eq!(a.bad_primes(), b.bad_primes());
    }
}

#[test]
fn shipped_catalog_round_trips() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog.json");
    let text = std::fs::read_to_string(path).unwrap();
    let records: Vec<belyi::RawMapRecord> = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&records).unwrap() + "\n";
    assert_eq!(text, again, "file is in canonical serialization");
}
