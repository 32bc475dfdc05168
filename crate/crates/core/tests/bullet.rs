use fewbraid::simple::{bullet_support, simple_braid, Support};
use fewbraid::AnnularWord;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn sparse_supports(d: usize) -> Vec<Support> {
    (1u32..1 << d).map(|mask| Support::new(d, (1..=d).filter(|j| mask >> (j - 1) & 1 == 1).collect()).unwrap()).filter(Support::is_sparse).collect()
}

fn identity_holds(j: &Support, jp: &Support) -> bool {
    let x = simple_braid(j).unwrap();
    let y = simple_braid(jp).unwrap();
    let out = bullet_support(j, jp).unwrap();
    assert!(out.is_simple(), "{j} . {jp} = {out} is not simple");
    AnnularWord::bullet(&x, &y).unwrap().equal_annular(&simple_braid(&out).unwrap()).unwrap()
}

#[test]
fn exhaustive_up_to_eight() {
    for d in 3..=8 {
        let all = sparse_supports(d);
        for j in &all {
            for jp in &all {
                assert!(identity_holds(j, jp), "d = {d}: {j} . {jp}");
            }
        }
    }
}

#[test]
fn random_up_to_twelve() {
    let mut rng = StdRng::seed_from_u64(8);
    let tables: Vec<Vec<Support>> = (0..=12).map(|d| if d >= 3 { sparse_supports(d) } else { Vec::new() }).collect();
    for _ in 0..500 {
        let d = rng.gen_range(9..=12);
        let all = &tables[d];
        let j = &all[rng.gen_range(0..all.len())];
        let jp = &all[rng.gen_range(0..all.len())];
        assert!(identity_holds(j, jp), "d = {d}: {j} . {jp}");
    }
}

#[test]
fn two_strands_have_no_braid_relation() {
    let j = Support::new(2, vec![1]).unwrap();
    let jp = Support::new(2, vec![2]).unwrap();
    assert!(!identity_holds(&j, &jp));
}
