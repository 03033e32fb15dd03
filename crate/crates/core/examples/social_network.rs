//! Three people, each with a search and an advertising profile. Every search
//! is ranked against everyone else's advert.
//!
//! Run with `cargo run --example social_network`.

use matchdeg::{
    rank, InterestLevel, MatchConfig, MatchQuery, NumericRange, OwnerId, Profile, ProfileStore,
    Role,
};

fn person(name: &str) -> matchdeg::Result<Profile> {
    Ok(Profile::new(OwnerId::new(name)?))
}

fn main() -> matchdeg::Result<()> {
    let lvl = InterestLevel::new;
    let mut store = ProfileStore::new();

    let alice = OwnerId::new("Alice")?;
    let bob = OwnerId::new("Bob")?;
    let carl = OwnerId::new("Carl")?;

    store.put(
        &alice,
        Role::Search,
        person("Alice")?
            .with_numeric("age", NumericRange::new(20.0, 40.0)?)
            .with_interest("tennis", lvl(1.0)?)
            .with_interest("chess", lvl(0.5)?),
    )?;
    store.put(
        &carl,
        Role::Search,
        person("Carl")?
            .with_numeric("age", NumericRange::new(20.0, 30.0)?)
            .with_numeric("height", NumericRange::at_least(180.0)?)
            .with_interest("basketball", lvl(1.0)?),
    )?;
    store.put(
        &alice,
        Role::Advertising,
        person("Alice")?
            .with_numeric("age", NumericRange::point(25.0)?)
            .with_numeric("height", NumericRange::point(165.0)?)
            .with_interest("tennis", lvl(1.0)?)
            .with_interest("chess", lvl(0.5)?)
            .with_interest("basketball", lvl(0.5)?),
    )?;
    store.put(
        &bob,
        Role::Advertising,
        person("Bob")?
            .with_numeric("age", NumericRange::point(26.0)?)
            .with_numeric("height", NumericRange::point(182.0)?)
            .with_interest("tennis", lvl(0.5)?)
            .with_interest("basketball", lvl(-1.0)?),
    )?;
    store.put(
        &carl,
        Role::Advertising,
        person("Carl")?
            .with_numeric("age", NumericRange::point(31.0)?)
            .with_numeric("height", NumericRange::point(195.0)?)
            .with_interest("basketball", lvl(1.0)?),
    )?;

    for searcher in [&alice, &carl] {
        let search = store.get(searcher, Role::Search).expect("stored above").profile.clone();
        let query = MatchQuery::new(search, MatchConfig::default())?;
        println!("{searcher} is looking for:");
        for r in rank(&query, store.eligible_adverts(searcher))? {
            let items: Vec<String> = r
                .breakdown
                .per_item
                .iter()
                .map(|(name, s)| format!("{name} {:.4}", s.partial))
                .collect();
            println!("  {}. {:<5} {:.4}   ({})", r.rank, r.advert_owner, r.total, items.join(", "));
        }
    }
    Ok(())
}
