//! The seeded property suite behind `qspectra verify`.

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let records = qspectra::verify::run(seed);
    print!("{}", qspectra::verify::table(&records));
    if records.iter().any(|r| !r.passed) {
        std::process::exit(1);
    }
}
