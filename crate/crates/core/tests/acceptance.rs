//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use matchdeg::service::{router, AppState};
use matchdeg::{
    fuzzy_step, match_discrete, match_interest, rank, total_degree, DiscreteSet, FuzzyLevel,
    InterestLevel, ItemKind, MatchConfig, MatchQuery, MatchResponse, Profile, ProfileStore, Role,
    Weights,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;

use common::{example2_store, fixture, oracle, random_advert, random_search, stored};

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure(
        (got - want).abs() <= tol,
        format!("{name} = {got}, expected {want} ± {tol:e}"),
    )
}

fn level(x: f64) -> InterestLevel {
    InterestLevel::new(x).unwrap()
}

fn median_time(mut f: impl FnMut()) -> Duration {
    f();
    let mut samples: Vec<Duration> = (0..101)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .collect();
    samples.sort();
    samples[50]
}

fn height_example() -> Check {
    let h = fuzzy_step(165.0, 180.0, f64::INFINITY, FuzzyLevel::new(0.1).unwrap()).map_err(|e| e.to_string())?;
    close("h(165; 180, inf)", h, 0.16667, 1e-5)?;
    Ok(format!("h = {h:.6}"))
}

fn interest_values() -> Check {
    let a = match_interest(level(1.0), level(0.5));
    let b = match_interest(level(0.5), level(0.0));
    close("m_i(1, 0.5)", a, 0.56361, 1e-4)?;
    close("m_i(0.5, 0)", b, 0.63079, 1e-4)?;
    Ok(format!("m_i(1,.5) = {a:.5}, m_i(.5,0) = {b:.5}"))
}

fn example_totals() -> Check {
    let store = example2_store();
    let alice = stored(&store, "Alice", Role::Search);
    let bob = stored(&store, "Bob", Role::Advertising);
    let carl = stored(&store, "Carl", Role::Advertising);
    let config = MatchConfig::default();
    let fb = total_degree(&alice, &bob, &config).unwrap().total;
    let fc = total_degree(&alice, &carl, &config).unwrap().total;
    close("f(Alice, Bob)", fb, 0.73147, 1e-4)?;
    close("f(Alice, Carl)", fc, 0.54360, 1e-4)?;

    let query = MatchQuery::new(alice.clone(), config).unwrap();
    let adverts = store.eligible_adverts(alice.owner());
    let results = rank(&query, adverts.iter().copied()).unwrap();
    let owners: Vec<&str> = results.iter().map(|r| r.advert_owner.as_str()).collect();
    ensure(owners == ["Bob", "Carl"], format!("ranking {owners:?}"))?;

    let t = median_time(|| {
        let _ = rank(&query, adverts.iter().copied()).unwrap();
    });
    ensure(t < Duration::from_millis(1), format!("rank took {t:?}"))?;
    Ok(format!("Bob {fb:.5}, Carl {fc:.5}, rank in {t:?}"))
}

fn definition_suite() -> Check {
    let grid: Vec<f64> = (0..41).map(|i| (-1.0 + 0.05 * i as f64).clamp(-1.0, 1.0)).collect();
    for &x in &grid {
        close(&format!("m_i({x},{x})"), match_interest(level(x), level(x)), 1.0, 1e-12)?;
        for &y in &grid {
            let m = match_interest(level(x), level(y));
            ensure((0.0..=1.0).contains(&m), format!("m_i({x},{y}) = {m} outside [0,1]"))?;
            let mirrored = match_interest(level(-x), level(-y));
            ensure(m == mirrored, format!("m_i({x},{y}) = {m} but m_i(-x,-y) = {mirrored}"))?;
        }
    }
    close("m_i(0,1)", match_interest(level(0.0), level(1.0)), 0.5, 1e-12)?;
    close("m_i(0,-1)", match_interest(level(0.0), level(-1.0)), 0.5, 1e-12)?;
    close("m_i(1,0)", match_interest(level(1.0), level(0.0)), 0.0, 1e-12)?;
    close("m_i(-1,0)", match_interest(level(-1.0), level(0.0)), 0.0, 1e-12)?;
    Ok("41x41 grid".into())
}

fn discrete_example() -> Check {
    let names: DiscreteSet = ["Smith", "Taylor"].into_iter().collect();
    let m = match_discrete(&names, "Tailor");
    ensure(m == 0.0, format!("m_d = {m}"))?;
    Ok("m_d = 0".into())
}

fn heaviside_limit() -> Check {
    let e = FuzzyLevel::new(1e-6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases = [(1.0, 2.0, -1.0, 4.0), (180.0, f64::INFINITY, 0.0, 400.0), (0.5, 0.5, -1.0, 2.0)];
    for (a, b, lo, hi) in cases {
        let near = |x: f64, edge: f64| edge.is_finite() && (x - edge).abs() < 0.01 * edge.abs();
        let mut n = 0;
        while n < 1000 {
            let x: f64 = rng.gen_range(lo..hi);
            if near(x, a) || near(x, b) {
                continue;
            }
            n += 1;
            let hard = if a < x && x <= b { 1.0 } else { 0.0 };
            let soft = fuzzy_step(x, a, b, e).unwrap();
            ensure(soft == hard, format!("h({x}; {a}, {b}) = {soft}, indicator {hard}"))?;
        }
    }
    Ok("3 x 1000 points".into())
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let search = random_search(&mut rng, "S", 5);
        let advert = random_advert(&mut rng, &format!("A{i}"), &search);
        let got = total_degree(&search, &advert, &MatchConfig::default()).unwrap().total;
        let want = oracle::f_unweighted(&search, &advert, 0.1);
        worst = worst.max((got - want).abs());
    }
    ensure(worst <= 1e-12, format!("max deviation {worst:e}"))?;

    for round in 0..100 {
        let search = random_search(&mut rng, "S", 5);
        let n = rng.gen_range(1..=10);
        let adverts: Vec<Profile> = (0..n)
            .map(|i| random_advert(&mut rng, &format!("A{i}"), &search))
            .collect();
        let query = MatchQuery::new(search.clone(), MatchConfig::default()).unwrap();
        let got: Vec<String> = rank(&query, &adverts)
            .unwrap()
            .iter()
            .map(|r| r.advert_owner.to_string())
            .collect();
        let want: Vec<String> = oracle::brute_force_rank(&search, &adverts, 0.1)
            .into_iter()
            .map(|(o, _)| o)
            .collect();
        ensure(got == want, format!("round {round}: {got:?} vs {want:?}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), format!("took {t:?}"))?;
    Ok(format!("max deviation {worst:e}, {t:?}"))
}

fn weights_for(search: &Profile, mut w: impl FnMut() -> f64) -> Weights {
    let mut out = Weights::default();
    for name in search.numeric().keys() {
        out = out.with(ItemKind::Numeric, name, w()).unwrap();
    }
    for name in search.discrete().keys() {
        out = out.with(ItemKind::Discrete, name, w()).unwrap();
    }
    for name in search.interests().keys() {
        out = out.with(ItemKind::Interest, name, w()).unwrap();
    }
    out
}

fn weighted_reduction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for round in 0..200 {
        let search = random_search(&mut rng, "S", 5);
        let adverts: Vec<Profile> = (0..8)
            .map(|i| random_advert(&mut rng, &format!("A{i}"), &search))
            .collect();
        let k = rng.gen_range(0.1..10.0);
        let equal = MatchConfig::default().with_weights(weights_for(&search, || k));
        for ad in &adverts {
            let plain = total_degree(&search, ad, &MatchConfig::default()).unwrap().total;
            let w = total_degree(&search, ad, &equal).unwrap().total;
            close(&format!("round {round} equal weights"), w, plain, 1e-12)?;
        }

        let base = weights_for(&search, || rng.gen_range(0.1..5.0));
        let q1 = MatchQuery::new(search.clone(), MatchConfig::default().with_weights(base.clone())).unwrap();
        let q7 = MatchQuery::new(search.clone(), MatchConfig::default().with_weights(base.scaled(7.0).unwrap()))
            .unwrap();
        let r1 = rank(&q1, &adverts).unwrap();
        let r7 = rank(&q7, &adverts).unwrap();
        for (x, y) in r1.iter().zip(&r7) {
            ensure(
                x.advert_owner == y.advert_owner && x.rank == y.rank,
                format!("round {round}: order changed under scaling"),
            )?;
            close(&format!("round {round} scaled total"), y.total, x.total, 1e-12)?;
        }
    }
    Ok("200 rounds".into())
}

async fn post_match(state: &std::sync::Arc<AppState>, body: Value) -> (StatusCode, Value) {
    let req = Request::builder()
        .method("POST")
        .uri("/match")
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let resp = router(state.clone()).oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn end_to_end(rt: &tokio::runtime::Runtime) -> Check {
    rt.block_on(async {
        let state = AppState::new(example2_store(), None);
        let before = state.snapshot().await;
        let (status, body) = post_match(&state, json!({"search": "Alice"})).await;
        ensure(status == StatusCode::OK, format!("status {status}"))?;
        let resp: MatchResponse = serde_json::from_value(body).map_err(|e| e.to_string())?;
        let got: Vec<(&str, f64)> = resp.results.iter().map(|r| (r.owner.as_str(), r.total)).collect();
        ensure(got.len() == 2, format!("results {got:?}"))?;
        ensure(got[0].0 == "Bob" && got[1].0 == "Carl", format!("results {got:?}"))?;
        close("Bob", got[0].1, 0.73147, 1e-4)?;
        close("Carl", got[1].1, 0.54360, 1e-4)?;
        ensure(state.snapshot().await == before, "store changed by a match query")?;
        Ok(format!("{got:?}"))
    })
}

fn bits(v: &Value) -> Option<u64> {
    v.as_f64().map(f64::to_bits)
}

fn round_trip(rt: &tokio::runtime::Runtime) -> Check {
    let store = ProfileStore::load_file(fixture("example2_store.json")).map_err(|e| e.to_string())?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("store.json");
    store.save_file(&path).map_err(|e| e.to_string())?;
    let back = ProfileStore::load_file(&path).map_err(|e| e.to_string())?;
    ensure(back == store, "store differs after save and load")?;

    let search_doc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("alice_search.json")).unwrap()).unwrap();
    let (status, body) = rt.block_on(async {
        let state = AppState::new(store, None);
        post_match(&state, json!({"search": search_doc})).await
    });
    ensure(status == StatusCode::OK, format!("status {status}"))?;

    for (owner, file) in [("Bob", "bob_advert.json"), ("Carl", "carl_advert.json")] {
        let out = Command::new(env!("CARGO_BIN_EXE_matchdeg"))
            .args(["score", "--json", "--search"])
            .arg(fixture("alice_search.json"))
            .arg("--advert")
            .arg(fixture(file))
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), format!("score exited with {}", out.status))?;
        let cli: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let entry = body["results"]
            .as_array()
            .and_then(|rs| rs.iter().find(|r| r["owner"] == owner))
            .ok_or_else(|| format!("{owner} missing from /match"))?;
        ensure(
            bits(&cli["total"]).is_some() && bits(&cli["total"]) == bits(&entry["total"]),
            format!("{owner}: total {} vs {}", cli["total"], entry["total"]),
        )?;
        let (a, b) = (&cli["breakdown"], &entry["breakdown"]);
        let items = a.as_object().ok_or("breakdown missing")?;
        ensure(items.len() == b.as_object().map_or(0, |o| o.len()), format!("{owner}: item sets differ"))?;
        for (name, score) in items {
            ensure(
                bits(&score["partial"]) == bits(&b[name]["partial"])
                    && bits(&score["weight"]) == bits(&b[name]["weight"])
                    && score["kind"] == b[name]["kind"],
                format!("{owner}.{name}: {score} vs {}", b[name]),
            )?;
        }
    }
    Ok("store identical, CLI and HTTP agree".into())
}

fn main() -> ExitCode {
    let rt = tokio::runtime::Runtime::new().unwrap();
    let criteria: Vec<Criterion> = vec![
        ("height example", Box::new(height_example)),
        ("interest values", Box::new(interest_values)),
        ("example totals and ranking", Box::new(example_totals)),
        ("interest degree conditions", Box::new(definition_suite)),
        ("discrete example", Box::new(discrete_example)),
        ("hard step limit", Box::new(heaviside_limit)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("weighted reduction", Box::new(weighted_reduction)),
        ("end to end match", Box::new(|| end_to_end(&rt))),
        ("round trip and CLI/HTTP parity", Box::new(|| round_trip(&rt))),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(note) => println!("criterion {:>2} PASS  {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
