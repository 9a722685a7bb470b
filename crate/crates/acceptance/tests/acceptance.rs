//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

use powercycle_acceptance::run_all;

fn main() {
    let verdicts = run_all();
    for v in &verdicts {
        println!("{v}");
    }
    let failed = verdicts.iter().filter(|v| !v.pass).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
