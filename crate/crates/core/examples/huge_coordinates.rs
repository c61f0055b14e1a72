//! Times the full pipeline on one shuffled huge-coordinate instance.
//!
//! `cargo run --release --example huge_coordinates -- [d] [log2 n]`

use std::time::Instant;

use rand::seq::SliceRandom;
use rom_mis::harness::generators::gen_huge_coordinates;
use rom_mis::rescale::{run_full_hyperrects, run_full_intervals};
use rom_mis::rng::rng_from_seed;

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("integer argument"));
    let d = args.next().unwrap_or(1);
    let log_n = args.next().unwrap_or(14);
    let inst = gen_huge_coordinates(1 << log_n, 128, d, 100, 3).expect("generator");
    let mut stream = inst.out_boxes();
    stream.shuffle(&mut rng_from_seed(1));
    let start = Instant::now();
    let out = if d == 1 {
        run_full_intervals(&stream)
    } else {
        run_full_hyperrects(&stream, d)
    }
    .expect("pipeline");
    println!(
        "d = {d}, n = 2^{log_n}: selected {} of planted 128 in {:.3}s",
        out.selected.len(),
        start.elapsed().as_secs_f64()
    );
}
