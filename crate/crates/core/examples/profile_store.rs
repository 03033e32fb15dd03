//! Validating documents, storing profiles and saving the store to disk.

use matchdeg::{validate_document, OwnerId, ProfileDocument, ProfileStore, Role};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let good = r#"{"owner": "Jo", "numeric": {"age": {"min": 29, "max": 29}}, "discrete": {"eye": ["brown"]}}"#;
    let bad = r#"{"owner": "Kim", "discrete": {"eye": ["blue", "green"]}, "interests": {"chess": 1.5}}"#;

    for (label, text) in [("good", good), ("bad", bad)] {
        let doc = ProfileDocument::from_json(text)?;
        let report = validate_document(&doc, Role::Advertising);
        println!("{label}: {}", if report.ok { "ok".to_owned() } else { report.to_string() });
    }

    let mut store = ProfileStore::new();
    let jo = OwnerId::new("Jo")?;
    let profile = ProfileDocument::from_json(good)?.into_profile(Role::Advertising)?;
    store.put(&jo, Role::Advertising, profile)?;

    let dir = tempfile::tempdir()?;
    let path = dir.path().join("profiles.json");
    store.save_file(&path)?;
    println!("\nsaved {} profile(s):\n{}", store.len(), std::fs::read_to_string(&path)?);

    let reloaded = ProfileStore::load_file(&path)?;
    println!("reload identical: {}", reloaded == store);
    Ok(())
}
