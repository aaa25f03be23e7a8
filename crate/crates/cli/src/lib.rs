//! The `fockspec` command-line front end.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command};
use commands::{CommandResult, Resolved};
use config::{Format, RunConfig};
use error::{CliError, EXIT_OK, EXIT_USAGE};
use output::{Diagnostic, Envelope};

/// Captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Run { code, stdout: text, stderr: String::new() }
            } else {
                Run { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let config = match RunConfig::load(cli.config.as_deref(), &cli.overrides()) {
        Ok(c) => c,
        Err(e) => {
            return Run { code: e.code, stdout: String::new(), stderr: format!("error: {e}\n") };
        }
    };
    let mut envelope = Envelope {
        command: cli.name(),
        config: config.clone(),
        operator: commands::operator_info(&cli.command),
        result: None,
        diagnostics: Vec::new(),
    };
    let outcome = execute(&cli.command, &config, &mut envelope);
    let (code, stderr) = match outcome {
        Ok(()) => (EXIT_OK, String::new()),
        Err(e) => {
            let msg = format!("error: {e}\n");
            envelope.diagnostics.push(Diagnostic::error(e.kind, e.message, e.detail));
            (e.code, msg)
        }
    };
    let stdout = match config.format {
        Format::Json => envelope.to_json(),
        Format::Text if code == EXIT_OK => envelope.to_text(),
        Format::Text => String::new(),
    };
    Run { code, stdout, stderr }
}

fn execute(cmd: &Command, cfg: &RunConfig, env: &mut Envelope) -> Result<(), CliError> {
    let mut resolved = |operand| -> Result<Resolved, CliError> {
        let r = commands::resolve(operand, cfg)?;
        if let Some(op) = env.operator.as_mut() {
            op.canonical = Some(r.element.to_string());
        }
        Ok(r)
    };
    let result = match cmd {
        Command::NormalOrder { expr, bind } => {
            let r = commands::normal_order(expr, bind, cfg)?;
            if let Some(op) = env.operator.as_mut() {
                op.canonical = Some(r.canonical.clone());
            }
            CommandResult::NormalOrder(r)
        }
        Command::Classify { operand, n, .. } => {
            let r = resolved(operand)?;
            CommandResult::Classify(commands::classify_cmd(&r, *n, cfg, &mut env.diagnostics))
        }
        Command::Spectrum { operand, n, realization } => {
            let r = resolved(operand)?;
            CommandResult::Spectrum(commands::spectrum_cmd(&r, *n, realization, cfg)?)
        }
        Command::Isospectral { operand, n, .. } => {
            let r = resolved(operand)?;
            CommandResult::Isospectral(commands::isospectral_cmd(&r, *n, cfg, &mut env.diagnostics)?)
        }
        Command::Catalog => CommandResult::Catalog(commands::catalog_cmd()),
    };
    env.result = Some(result);
    Ok(())
}
