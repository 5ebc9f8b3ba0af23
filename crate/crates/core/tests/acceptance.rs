use std::process::ExitCode;

use braidrack::report::{verify, Profile};

fn main() -> ExitCode {
    let report = verify(Profile::Full, |c| {
        println!("{} {}: {}", c.id, if c.pass { "pass" } else { "FAIL" }, c.title);
        for e in c.entries.iter().filter(|e| !e.matches) {
            println!("    {}: expected {}, computed {}", e.check, e.expected, e.computed);
        }
    });
    let failed = report.criteria.iter().filter(|c| !c.pass).count();
    println!("{} of {} criteria pass", report.criteria.len() - failed, report.criteria.len());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
