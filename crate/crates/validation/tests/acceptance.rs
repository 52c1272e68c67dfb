use std::process::ExitCode;

use kbessel_validation::CRITERIA;

fn main() -> ExitCode {
    let outcomes: Vec<_> = CRITERIA.iter().map(|c| c.run()).collect();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {}/{} criteria pass", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
