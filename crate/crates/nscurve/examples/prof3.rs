use nscurve::schur::*;
use std::time::Instant;

fn main() {
    let lambda = Partition::new(vec![3, 2, 2, 1]);
    let t = Instant::now();
    let s = schur_s_powersum(&lambda);
    println!("schur_S: {:?}", t.elapsed());
    let t = Instant::now();
    let a = schur_s_alternant(&lambda, 8).unwrap();
    println!("alternant+division: {:?} ({} terms)", t.elapsed(), a.num_terms());
    let t = Instant::now();
    let sub = substitute_power_sums(&s, 8);
    println!("substitution: {:?} ({} terms)", t.elapsed(), sub.num_terms());
    assert_eq!(sub.truncate(8), a.truncate(8));
}
