//! Prints exact values of `A(n, d)` for small lengths; with two arguments,
//! only `A(n, d)`.

use std::time::Instant;

fn show(n: usize, d: usize) {
    let t = Instant::now();
    let a = signet::bounds::exact_a(n, d).unwrap();
    println!("A({n},{d}) = {a}  [{:.2?}]", t.elapsed());
}

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    match args[..] {
        [n, d] => show(n, d),
        [max_n] => (1..=max_n).for_each(|n| (1..=n).for_each(|d| show(n, d))),
        _ => (1..=8).for_each(|n| (1..=n).for_each(|d| show(n, d))),
    }
}
