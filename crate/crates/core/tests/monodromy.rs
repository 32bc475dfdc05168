use std::f64::consts::E;

use fewbraid::annular::default_cut;
use fewbraid::monodromy::{monodromy, track, TrackParams};
use fewbraid::tropical::{default_epsilon, ell_j_loop, gamma_loop, realize, tau_loop, RealizeSide, TrinomialSupport};
use fewbraid::AnnularWord;

fn word(d: usize, s: &str) -> AnnularWord {
    AnnularWord::parse(d, s).unwrap()
}

#[test]
fn gamma_reads_b1_inverse() {
    for (p, d) in [(1, 2), (2, 3), (2, 5), (3, 7)] {
        let sup = TrinomialSupport::new(p, d).unwrap();
        let eps = if (p, d) == (3, 7) { 0.042 } else { default_epsilon(d) };
        let lp = realize(&gamma_loop(&sup, eps).unwrap(), &sup, E, RealizeSide::First).unwrap();
        let w = monodromy(&lp.support.clone(), &lp, default_cut(d), &TrackParams::default()).unwrap();
        assert!(w.equal_annular(&word(d, "B1")).unwrap(), "({p},{d}): {w}");
    }
}

#[test]
fn ell_loops_read_generators() {
    let (p, d) = (3, 7);
    let sup = TrinomialSupport::new(p, d).unwrap();
    for j in 1..=d {
        let lp = realize(&ell_j_loop(&sup, default_epsilon(d), j).unwrap(), &sup, E, RealizeSide::First).unwrap();
        assert!(lp.fixes_extremes());
        let w = monodromy(&lp.support.clone(), &lp, default_cut(d), &TrackParams::default()).unwrap();
        assert!(w.equal_annular(&AnnularWord::gen_b(j, d).unwrap()).unwrap(), "j = {j}: {w}");
    }
    let lp = realize(&tau_loop(&sup, default_epsilon(d)).unwrap(), &sup, E, RealizeSide::First).unwrap();
    let w = monodromy(&lp.support.clone(), &lp, default_cut(d), &TrackParams::default()).unwrap();
    assert_eq!(w.to_string(), "t");
}

#[test]
fn second_side_gives_the_same_braids() {
    let sup = TrinomialSupport::new(2, 5).unwrap();
    let lp = realize(&gamma_loop(&sup, default_epsilon(5)).unwrap(), &sup, E, RealizeSide::Second).unwrap();
    let w = monodromy(&lp.support.clone(), &lp, default_cut(5), &TrackParams::default()).unwrap();
    assert!(w.equal_annular(&word(5, "B1")).unwrap(), "{w}");
}

#[test]
fn trajectories_respect_the_guards() {
    let sup = TrinomialSupport::new(3, 7).unwrap();
    let lp = realize(&gamma_loop(&sup, 0.042).unwrap(), &sup, E, RealizeSide::First).unwrap();
    let traj = track(&lp, &TrackParams::default()).unwrap();
    assert!(traj.min_gap() > 1e-3);
    assert!(traj.min_modulus() > 1e-3);
}

#[test]
fn numeric_winding_matches_the_readout() {
    let (p, d) = (2, 5);
    let sup = TrinomialSupport::new(p, d).unwrap();
    let eps = default_epsilon(d);
    let real = |lp| realize(&lp, &sup, E, RealizeSide::First).unwrap();
    let tau = real(tau_loop(&sup, eps).unwrap());
    let ell = |j| real(ell_j_loop(&sup, eps, j).unwrap());
    let power = |lp: &fewbraid::loops::CoefficientLoop, n: usize| (1..n).fold(lp.clone(), |acc, _| acc.concat(lp).unwrap());
    let loops = [power(&tau, d), power(&ell(2), 2), power(&ell(d), 2), power(&tau, d).concat(&power(&ell(1), 2)).unwrap()];
    let a = default_cut(d);
    for (i, lp) in loops.iter().enumerate() {
        let traj = track(lp, &TrackParams::default()).unwrap();
        let w = fewbraid::monodromy::braid_readout(&traj, a).unwrap();
        assert!(w.is_pure(), "loop {i}: {w}");
        let mut numeric: Vec<i64> = traj
            .winding_numbers()
            .iter()
            .map(|x| {
                assert!((x - x.round()).abs() < 1e-6);
                x.round() as i64
            })
            .collect();
        let mut exact = w.winding(a).unwrap().entries;
        numeric.sort();
        exact.sort();
        assert_eq!(numeric, exact, "loop {i}: {w}");
    }
}
