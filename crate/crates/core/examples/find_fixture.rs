//! Searches for a certified labelling of a shape and prints it in the graph
//! file format.
//!
//! ```text
//! cargo run --release -p gsc-core --example find_fixture -- cycle 7 3 greedy 0
//! cargo run --release -p gsc-core --example find_fixture -- k4 9 2 anneal:4 0
//! ```

use gsc_core::lgraph::{anneal_labelling, random_labelling, Shape};
use gsc_core::{certify, Alphabet};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let usage = "usage: find_fixture <cycle N | theta L1,L2,.. | k4 LEN> <m> <greedy|anneal:LAMBDA> <seed>";
    let [shape_kind, shape_arg, m, strategy, seed] = &args[..] else {
        eprintln!("{usage}");
        std::process::exit(2);
    };
    let shape = match shape_kind.as_str() {
        "cycle" => Shape::cycle(shape_arg.parse().unwrap()),
        "theta" => Shape::theta_with(&shape_arg.split(',').map(|x| x.parse().unwrap()).collect::<Vec<_>>()),
        "k4" => Shape::subdivided_complete(4, shape_arg.parse().unwrap()),
        _ => panic!("{usage}"),
    };
    let m: usize = m.parse().unwrap();
    let alphabet = Alphabet::new((0..m).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap();
    let mut seed: u64 = seed.parse().unwrap();
    loop {
        let graph = match strategy.split_once(':') {
            Some(("anneal", lambda)) => anneal_labelling(&shape, alphabet.clone(), lambda.parse().unwrap(), seed, 200_000),
            _ => random_labelling(&shape, alphabet.clone(), seed, 1000),
        };
        if let Ok(g) = graph {
            let cert = certify(&g);
            if cert.passed() {
                println!("# seed {seed}, girth {:?}, lambda {:?}, diameter {}", cert.girth, cert.lambda, cert.diameter);
                print!("{}", g.to_text());
                return;
            }
        }
        seed += 1;
        if seed.is_multiple_of(1000) {
            eprintln!("seed {seed}");
        }
    }
}
