//! Library side of the `tropath` command-line tool.

pub mod args;
pub mod commands;
pub mod report;

use std::io::Write;

pub use args::Cli;
pub use commands::Status;

use args::Command;

pub fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Status> {
    let cfg = commands::load_config(cli.config.as_deref())?;
    match &cli.command {
        Command::Gen(a) => commands::gen(a, out),
        Command::Run(a) => commands::run(&cfg, a, out),
        Command::Bench(a) => commands::bench(&cfg, a, out),
        Command::Verify(a) => commands::verify(&cfg, a, out),
    }
}
