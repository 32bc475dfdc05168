use std::collections::BTreeSet;

use fewbraid::simple::{euclid_branch, euclid_word, Expr};
use num_integer::Integer;
use rayon::prelude::*;

fn triples(max_d: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        let divs: Vec<usize> = (2..=d).filter(|k| d % k == 0).collect();
        for &k in &divs {
            for &l in &divs {
                if k != l {
                    out.push((k, l, d));
                }
            }
        }
    }
    out
}

fn holds(k: usize, l: usize, d: usize) -> Result<bool, Box<dyn std::error::Error>> {
    let gw = euclid_word(k, l, d)?;
    let v = gw.verify()?;
    let last = gw.claim_word(gw.result().ok_or("empty word")?)?.ok_or("no claim")?;
    let mut no = |_| unreachable!();
    let want = Expr::atom(k.lcm(&l), 1).eval(d, &mut no)?;
    Ok(v.ok && last.equal_annular(&want)?)
}

#[test]
fn every_triple_up_to_thirty() {
    let all = triples(30);
    let failures: Vec<String> = all
        .par_iter()
        .filter_map(|&(k, l, d)| match holds(k, l, d) {
            Ok(true) => None,
            Ok(false) => Some(format!("({k},{l},{d}) does not verify")),
            Err(e) => Some(format!("({k},{l},{d}): {e}")),
        })
        .collect();
    assert!(failures.is_empty(), "failed: {failures:?}");
    let branches: BTreeSet<String> = all.iter().map(|&(k, l, d)| euclid_branch(k, l, d).unwrap().to_string()).collect();
    assert_eq!(branches.len(), 7, "{branches:?}");
}
