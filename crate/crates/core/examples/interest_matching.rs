//! Interest levels in [-1, 1] and the degree to which two of them agree.

use matchdeg::{interest_constant, match_interest, InterestLevel};

fn main() -> matchdeg::Result<()> {
    println!("c = {:.6}", interest_constant());
    let levels = [-1.0, -0.5, 0.0, 0.5, 1.0];
    print!("search\\advert");
    for y in levels {
        print!("{y:>8}");
    }
    println!();
    for x in levels {
        print!("{x:>13}");
        for y in levels {
            let m = match_interest(InterestLevel::new(x)?, InterestLevel::new(y)?);
            print!("{m:>8.4}");
        }
        println!();
    }
    Ok(())
}
