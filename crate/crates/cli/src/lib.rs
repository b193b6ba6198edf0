//! Runs the verification suites and renders their reports.

pub mod config;
pub mod report;
mod suites;
mod sweep;

pub use config::{ConfigError, Injection, Params, ReportFormat, Suite, SuiteConfig};
pub use report::{emit_report, Check, Status, VerificationReport};

/// Runs `config.suite`; `all` runs every suite in a fixed order and prefixes
/// check names with the suite.
pub fn run_suite(config: &SuiteConfig) -> Result<VerificationReport, ConfigError> {
    config.validate()?;
    let checks = match config.suite {
        Suite::All => {
            let mut checks = Vec::new();
            for suite in Suite::EACH {
                let mut ctx = suites::Ctx::new(config, suite)?;
                for mut c in suites::run(&mut ctx, suite)? {
                    c.name = format!("{suite}: {}", c.name);
                    checks.push(c);
                }
            }
            checks
        }
        suite => suites::run(&mut suites::Ctx::new(config, suite)?, suite)?,
    };
    Ok(VerificationReport::new(config.suite.to_string(), config.params(), checks))
}
