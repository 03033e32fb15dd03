//! Naive transcription of the matching formulas, kept apart from the crate's
//! scoring code. Profiles are read through the public accessors only.

use matchdeg::Profile;

pub const INF: f64 = f64::INFINITY;

/// Piecewise fuzzy step, written case by case in the printed order. Ramp
/// widths are e|a| and e|b|; for positive edges the printed expressions are
/// used verbatim.
pub fn h(x: f64, a: f64, b: f64, e: f64) -> f64 {
    if a == -INF {
        if x <= b {
            return 1.0;
        }
    } else if x <= a {
        if a > 0.0 {
            if (1.0 - e) * a < x {
                return x / (a * e) - (1.0 - e) / e;
            }
            return 0.0;
        }
        if a < 0.0 {
            let w = e * -a;
            if a - w < x {
                return 1.0 - (a - x) / w;
            }
            return 0.0;
        }
        return 0.0;
    } else if x <= b {
        return 1.0;
    }
    // x > b
    if b == INF {
        return 1.0;
    }
    if b > 0.0 {
        if x <= (1.0 + e) * b {
            return (1.0 + e) / e - x / (b * e);
        }
        return 0.0;
    }
    if b < 0.0 {
        let w = e * -b;
        if x < b + w {
            return 1.0 - (x - b) / w;
        }
    }
    0.0
}

pub fn m_n(search: (f64, f64), advert: (f64, f64), e: f64) -> f64 {
    let (a_s, b_s) = search;
    let (a_a, b_a) = advert;
    let t1 = h(b_a, a_s, b_s, e);
    let t2 = h(b_s, a_a, b_a, e);
    if t1 > t2 {
        t1
    } else {
        t2
    }
}

pub fn chi(set: &[String], x: &str) -> f64 {
    if set.iter().any(|v| v == x) {
        1.0
    } else {
        0.0
    }
}

pub fn m_i(ls: f64, la: f64) -> f64 {
    let c = (1.0 + f64::sqrt(7.0)) / 2.0;
    let phi = 1.0 - (c.powi(2) - 1.0) * (ls - la).powi(2) / (c.powi(2) - 2.0 + (ls - c * la).powi(2));
    if phi > 0.0 {
        phi
    } else {
        0.0
    }
}

/// Weighted objective; `weight(kind, name)` supplies w(p).
pub fn f(search: &Profile, advert: &Profile, e: f64, weight: &dyn Fn(&str, &str) -> f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (p, r) in search.numeric() {
        let w = weight("numeric", p);
        den += w;
        let m = match (r.bounds(), advert.numeric().get(p).and_then(|ra| ra.bounds())) {
            (Some(rs), Some(ra)) => m_n(rs, ra, e),
            _ => 0.0,
        };
        num += w * m;
    }
    for (p, set) in search.discrete() {
        let w = weight("discrete", p);
        den += w;
        let set: Vec<String> = set.iter().map(str::to_owned).collect();
        let m = match advert.discrete().get(p) {
            Some(offer) if offer.len() == 1 => chi(&set, offer.iter().next().unwrap()),
            _ => 0.0,
        };
        num += w * m;
    }
    for (p, l) in search.interests() {
        let w = weight("interest", p);
        den += w;
        let la = advert.interests().get(p).map_or(0.0, |l| l.value());
        num += w * m_i(l.value(), la);
    }
    num / den
}

pub fn f_unweighted(search: &Profile, advert: &Profile, e: f64) -> f64 {
    f(search, advert, e, &|_, _| 1.0)
}

/// Exhaustive scoring and sorting: total descending, owner ascending.
pub fn brute_force_rank(search: &Profile, adverts: &[Profile], e: f64) -> Vec<(String, f64)> {
    let mut all: Vec<(String, f64)> = adverts
        .iter()
        .filter(|a| a.owner() != search.owner())
        .map(|a| (a.owner().to_string(), f_unweighted(search, a, e)))
        .collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let swap = all[j].1 > all[i].1 || (all[j].1 == all[i].1 && all[j].0 < all[i].0);
            if swap {
                all.swap(i, j);
            }
        }
    }
    all
}
