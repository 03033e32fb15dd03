//! Grid resource requests against machine offers, loaded from a store file.

use std::path::Path;

use matchdeg::{rank, MatchConfig, MatchQuery, ProfileStore, Role};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/grid_store.json");
    let store = ProfileStore::load_file(&path)?;

    for entry in store.iter().filter(|e| e.role == Role::Search) {
        let query = MatchQuery::new(entry.profile.clone(), MatchConfig::default())?;
        println!("job from {}", entry.owner);
        for r in rank(&query, store.eligible_adverts(&entry.owner))? {
            println!("  {:<16} {:.4}", r.advert_owner, r.total);
        }
    }
    Ok(())
}
