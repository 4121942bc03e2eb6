//! Searches for the family members no construction covers and writes them
//! under `fixtures/`. Usage: `make_fixtures [dir] [budget]`.

use std::path::PathBuf;

use detachable::families::{gen_matroid, Family};
use detachable::Error;
use detachable_harness::corpus::{sweep_specs, Sweep};
use detachable_harness::fixtures::fixture_path;
use detachable_harness::{fixture_search, write_fixture};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "fixtures".into()));
    let budget: u64 = args.next().map_or(Ok(20_000), |b| b.parse())?;
    let sweep = Sweep { family: Family::EvenFanSpike, elements: 13..=18 };
    for spec in sweep_specs(&sweep)? {
        let unsupported = matches!(gen_matroid(&spec), Err(Error::UnsupportedParameters(_)));
        if !unsupported || fixture_path(&dir, &spec).exists() {
            continue;
        }
        match fixture_search(&spec, budget, 0)? {
            Some(m) => println!("wrote {}", write_fixture(&dir, &spec, &m)?.display()),
            None => println!("absent {spec}"),
        }
    }
    Ok(())
}
