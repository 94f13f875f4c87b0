//! Full-scale acceptance run: one PASS/FAIL line per criterion.

use dyckgrass_core::selftest::{run_suite, SuiteConfig};

fn main() {
    let cfg = SuiteConfig::full();
    let results = run_suite(&cfg, |r| println!("{r}"));
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
