//! The fuzzy step behind numeric matching, and how the fuzzy level widens it.
//!
//! Run with `cargo run --example fuzzy_step`.

use matchdeg::{fuzzy_step, match_numeric, FuzzyLevel, NumericRange};

fn main() -> matchdeg::Result<()> {
    // Someone wants a partner at least 180 cm tall.
    let (a, b) = (180.0, f64::INFINITY);
    println!("height   e=0.05  e=0.10  e=0.20");
    for x in [150.0, 160.0, 165.0, 170.0, 175.0, 180.0, 190.0] {
        let row: Vec<String> = [0.05, 0.1, 0.2]
            .into_iter()
            .map(|e| fuzzy_step(x, a, b, FuzzyLevel::new(e)?).map(|h| format!("{h:.4}")))
            .collect::<matchdeg::Result<_>>()?;
        println!("{x:>6}   {}", row.join("  "));
    }

    // Bounded on both sides: ages 20 to 30.
    let e = FuzzyLevel::DEFAULT;
    println!("\nage in [20, 30], e = {}", e.value());
    for x in [17.0, 18.5, 20.0, 25.0, 30.0, 31.5, 33.0, 34.0] {
        println!("  {x:>4} -> {:.4}", fuzzy_step(x, 20.0, 30.0, e)?);
    }

    // Range against range: wanted at least 1.6 GHz, offered up to 3.6 GHz.
    let wanted = NumericRange::at_least(1.6)?;
    let offered = NumericRange::at_most(3.6)?;
    println!("\ncpu [1.6, inf) vs (-inf, 3.6]: {}", match_numeric(&wanted, &offered, e));
    Ok(())
}
