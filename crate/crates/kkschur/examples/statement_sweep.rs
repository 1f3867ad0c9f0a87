//! Runs every statement at one level and prints a verdict line each.
//!
//! Usage: cargo run -p kkschur --release --example statement_sweep -- [k] [max_size] [max_rect_total] [max_rect_mult]

use kkschur::theorems::{verify, Bounds, StatementId};
use kkschur::LevelContext;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let arg = |i: usize, default: u32| -> u32 {
        args.get(i)
            .map(|s| s.parse().expect("numeric argument"))
            .unwrap_or(default)
    };
    let k = arg(1, 3);
    let ctx = LevelContext::new(k).unwrap();
    let bounds = Bounds {
        max_lambda_size: arg(2, 4),
        max_rect_total: arg(3, 2),
        max_rect_mult: arg(4, 2),
    };
    for id in StatementId::all() {
        let v = verify(&ctx, *id, &bounds).unwrap();
        println!(
            "{:28} checked={:6} counterexamples={:3} ms={}",
            v.statement,
            v.checked,
            v.counterexamples.len(),
            v.ms
        );
        if let Some(ce) = v.counterexamples.first() {
            println!(
                "    first: {} | expected {} | got {}",
                ce.inputs, ce.expected, ce.got
            );
        }
    }
}
