use qci_core::qalgebra::AlgebraConfig;
use qci_core::scalars::{default_prime, make_field};
use qci_core::verify::{run_suite, Status, Suite};
use std::time::Instant;

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_default();
    let configs: Vec<(u32, usize)> = match arg.as_str() {
        "22" => vec![(2, 2)],
        "23" => vec![(2, 3)],
        "32" => vec![(3, 2)],
        _ => vec![(2, 2), (2, 3), (3, 2)],
    };
    for (a, c) in configs {
        let p = default_prime(a as u64);
        let f = make_field(p).unwrap();
        let q = f.primitive_root_of_unity(a as u64).unwrap();
        let cfg = AlgebraConfig::homogeneous(f, a, c, q).unwrap();
        let t0 = Instant::now();
        match run_suite(&cfg, Suite::Paper, 1) {
            Ok(report) => {
                println!("(a={a}, c={c}, p={p}): total {:.1}s, failures={}",
                    t0.elapsed().as_secs_f64(), report.failures());
                for ch in &report.checks {
                    if ch.status == Status::Fail {
                        println!("  FAIL {:28} {}", ch.id, ch.data);
                    }
                }
            }
            Err(e) => println!("(a={a}, c={c}, p={p}): ERROR {e}"),
        }
    }
}
