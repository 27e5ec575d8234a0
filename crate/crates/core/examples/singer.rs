//! Writes a cyclic triangle presentation of prime order q to stdout.
//!
//! ```text
//! cargo run --release -p a2kt --example singer -- 11 > data/singer-q11.txt
//! ```

#[path = "../tests/support/singer.rs"]
mod singer;

fn main() {
    let q: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| {
            eprintln!("usage: singer <prime q>");
            std::process::exit(4);
        });
    print!("{}", singer::presentation_text(q));
}
