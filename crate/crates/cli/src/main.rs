mod args;
mod commands;
mod corpus;
mod input;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Which;
use input::Source;
use report::Report;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Sigma(_) => "sigma",
        Command::Nabla(_) => "nabla",
        Command::Recover(_) => "recover",
        Command::Iso { .. } => "iso",
        Command::Irr(_) => "irr",
        Command::Indec(_) => "indec",
        Command::PiAct { .. } => "pi-act",
        Command::Chen { .. } => "chen",
        Command::Moduli { .. } => "moduli",
        Command::Verify { .. } => "verify",
        Command::Repro { .. } => "repro",
    }
}

fn dispatch(report: &mut Report, command: &Command) -> report::CmdResult {
    let src = Source::Files;
    match command {
        Command::Analyze(a) => commands::analyze(report, src, a),
        Command::Sigma(f) => commands::functor(report, src, Which::Sigma, &f.rep, f.out.as_deref()),
        Command::Nabla(f) => commands::functor(report, src, Which::Nabla, &f.rep, f.out.as_deref()),
        Command::Recover(f) => commands::functor(report, src, Which::Recover, &f.rep, f.out.as_deref()),
        Command::Iso { first, second, seed, require_decision } => {
            commands::iso(report, src, first, second, *seed, *require_decision)
        }
        Command::Irr(a) => commands::irr(report, src, a),
        Command::Indec(a) => commands::indec(report, src, a),
        Command::PiAct { element, operator, out } => commands::pi_act(report, src, element, operator, out.as_deref()),
        Command::Chen { kind } => commands::chen(report, src, kind),
        Command::Moduli { kind } => commands::moduli(report, src, kind),
        Command::Verify { rep, samples, seed } => commands::verify(report, src, rep, *samples, *seed),
        Command::Repro { seed } => corpus::repro(report, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(command_name(&cli.command));
    if let Err(f) = dispatch(&mut report, &cli.command) {
        eprintln!("lpa: {}", f.message);
        report.fail(f);
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("plain data serializes"));
    ExitCode::from(report.exit_code())
}
