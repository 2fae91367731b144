use std::process::ExitCode;

use relfree::acceptance::{run_all, Config};

fn main() -> ExitCode {
    let outcomes = run_all(&Config::default());
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 && outcomes.len() == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
