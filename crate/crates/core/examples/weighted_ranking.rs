//! Per-item weights, a wider fuzzy level and top-k truncation.

use std::num::NonZeroUsize;

use matchdeg::{
    rank, FuzzyLevel, InterestLevel, ItemKind, MatchConfig, MatchQuery, NumericRange, OwnerId,
    Profile, Weights,
};

fn advert(name: &str, age: f64, tennis: f64, golf: f64) -> matchdeg::Result<Profile> {
    Ok(Profile::new(OwnerId::new(name)?)
        .with_numeric("age", NumericRange::point(age)?)
        .with_interest("tennis", InterestLevel::new(tennis)?)
        .with_interest("golf", InterestLevel::new(golf)?))
}

fn show(title: &str, query: &MatchQuery, adverts: &[Profile]) -> matchdeg::Result<()> {
    println!("{title}");
    for r in rank(query, adverts)? {
        println!("  {}. {:<6} {:.4}", r.rank, r.advert_owner, r.total);
    }
    Ok(())
}

fn main() -> matchdeg::Result<()> {
    let search = Profile::new(OwnerId::new("Dana")?)
        .with_numeric("age", NumericRange::new(30.0, 40.0)?)
        .with_interest("tennis", InterestLevel::new(1.0)?)
        .with_interest("golf", InterestLevel::new(-0.5)?);
    let adverts = [
        advert("Eli", 29.0, 1.0, 0.5)?,
        advert("Fay", 35.0, 0.0, -0.5)?,
        advert("Gus", 43.0, 1.0, -1.0)?,
        advert("Hana", 38.0, 0.5, 0.0)?,
    ];

    let plain = MatchQuery::new(search.clone(), MatchConfig::default())?;
    show("equal weights", &plain, &adverts)?;

    let tennis_first = Weights::default().with(ItemKind::Interest, "tennis", 3.0)?;
    let weighted = MatchQuery::new(search.clone(), MatchConfig::default().with_weights(tennis_first))?;
    show("tennis weighted 3x", &weighted, &adverts)?;

    let lenient = MatchConfig::default().with_fuzzy(FuzzyLevel::new(0.3)?);
    let top2 = MatchQuery::new(search, lenient)?.top(NonZeroUsize::new(2));
    show("fuzzy level 0.3, best two", &top2, &adverts)?;
    Ok(())
}
