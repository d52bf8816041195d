use braidslice::arrangement::{enumerate_chambers, ArrangementSpec};
use std::time::Instant;

fn main() {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let t = Instant::now();
    let chambers = enumerate_chambers(&ArrangementSpec::subset_only(m), 7).unwrap();
    eprintln!("m={m}: {} chambers in {:?}", chambers.len(), t.elapsed());
}
