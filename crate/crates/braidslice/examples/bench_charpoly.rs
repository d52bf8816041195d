use braidslice::arrangement::ArrangementSpec;
use braidslice::charpoly::{chamber_count, charpoly};
use std::time::Instant;

fn main() {
    let m: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let augment = std::env::args().nth(2).is_some();
    let spec = if augment { ArrangementSpec::augmented(m) } else { ArrangementSpec::subset_only(m) };
    let t = Instant::now();
    let p = charpoly(&spec).unwrap();
    eprintln!("m={m} augment={augment}: chi = {p}, chambers = {}, in {:?}", chamber_count(&p), t.elapsed());
}
