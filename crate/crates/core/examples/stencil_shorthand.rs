//! Building a search profile from short constraint strings.

use matchdeg::{parse_stencil_shorthand, OwnerId, Profile, ProfileDocument};

fn main() -> matchdeg::Result<()> {
    let mut profile = Profile::new(OwnerId::new("Ivy")?);
    for text in ["age in [25, 35]", "height >= 170", "income ≥ 40000", "city ∈ {Berlin, \"New York\"}", "eye = green"] {
        let (name, stencil) = parse_stencil_shorthand(text)?;
        println!("{text:<32} -> {name}: {stencil:?}");
        stencil.apply(&mut profile, &name);
    }

    for bad in ["age in [35, 25]", "height >> 170", "city in {Berlin"] {
        match parse_stencil_shorthand(bad) {
            Ok(_) => println!("{bad:<32} -> accepted"),
            Err(e) => println!("{bad:<32} -> {e}"),
        }
    }

    println!("\n{}", ProfileDocument::from(&profile).to_json_pretty());
    Ok(())
}
