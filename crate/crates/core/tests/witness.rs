use std::time::Instant;

use fewbraid::annular::default_cut;
use fewbraid::loops::FewnomialSupport;
use fewbraid::monodromy::{surjectivity_witness, TrackParams};

fn run(exponents: &[usize]) {
    let sup = FewnomialSupport::new(exponents.to_vec()).unwrap();
    let d = sup.d();
    let start = Instant::now();
    let w = surjectivity_witness(&sup, default_cut(d), &TrackParams::default()).unwrap();
    assert_eq!(w.len(), d + 1);
    for x in &w {
        assert!(x.verified, "{sup} {}: read {}", x.target, x.monodromy);
        assert_eq!(x.fixes_extremes, x.target != "t");
    }
    let segments: usize = w.iter().map(|x| x.segments).sum();
    eprintln!("{sup}: {segments} segments in {:?}", start.elapsed());
}

#[test]
fn direct_supports() {
    for a in [&[0, 2, 3][..], &[0, 2, 5], &[0, 3, 7], &[0, 2, 3, 5]] {
        run(a);
    }
}

#[test]
fn supports_needing_euclid_words() {
    run(&[0, 2, 3, 6]);
    run(&[0, 3, 4, 12]);
}
