//! Start the HTTP service on a free port, store a few profiles and ask for
//! matches, all through plain HTTP requests.

use std::io::{Read, Write};
use std::net::TcpStream;

use matchdeg::service::{serve, AppState};
use matchdeg::ProfileStore;

fn request(addr: &str, method: &str, target: &str, body: &str) -> std::io::Result<String> {
    let mut stream = TcpStream::connect(addr)?;
    write!(
        stream,
        "{method} {target} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    let mut response = String::new();
    stream.read_to_string(&mut response)?;
    let status = response.lines().next().unwrap_or_default().to_owned();
    let payload = response.split("\r\n\r\n").nth(1).unwrap_or_default().to_owned();
    Ok(format!("{status}\n{payload}"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rt = tokio::runtime::Runtime::new()?;
    let listener = rt.block_on(tokio::net::TcpListener::bind("127.0.0.1:0"))?;
    let addr = listener.local_addr()?.to_string();
    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let server = rt.spawn(serve(listener, AppState::new(ProfileStore::new(), None), async {
        let _ = stopped.await;
    }));

    let calls = [
        ("PUT", "/profiles/Bob/advertising", r#"{"numeric": {"age": {"min": 26, "max": 26}}, "interests": {"tennis": 0.5}}"#),
        ("PUT", "/profiles/Carl/advertising", r#"{"numeric": {"age": {"min": 31, "max": 31}}, "interests": {"basketball": 1}}"#),
        ("POST", "/match", r#"{"search": {"owner": "Alice", "numeric": {"age": {"min": 20, "max": 40}}, "interests": {"tennis": 1, "chess": 0.5}}, "k": 1}"#),
        ("POST", "/match", r#"{"search": {"owner": "Alice", "interests": {"tennis": 3}}}"#),
        ("GET", "/profiles/Dave/search", ""),
    ];
    for (method, target, body) in calls {
        println!("> {method} {target}");
        println!("{}\n", request(&addr, method, target, body)?);
    }

    let _ = stop.send(());
    rt.block_on(server)??;
    Ok(())
}
