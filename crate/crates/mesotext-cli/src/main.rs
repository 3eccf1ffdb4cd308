//! `mesotext`: turn a corpus of plain text files into paragraph-window
//! similarity networks and report how well their structure separates real
//! texts from shuffled ones.
//!
//! The subcommands form a pipeline over one output directory:
//!
//! ```text
//! build         corpus -> text caches, one network per text and class
//! analyze       networks -> features, projection, clustering, report
//! cooccurrence  text caches -> word network baseline, same evaluation
//! layout        one network -> spring embedding, SVG and positions
//! report        all reports -> one plain-text summary
//! ```
//!
//! Exit codes: 0 success, 1 partial or runtime failure, 2 invalid
//! configuration.

mod analyze;
mod build;
mod config;
mod cooc;
mod layoutcmd;
mod manifest;
mod pipeline;
mod reportcmd;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "mesotext", version, about = "Mesoscopic structure of texts, as networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Organize the corpus and build every window network.
    Build(build::BuildArgs),
    /// Compute features over the built networks and evaluate the classes.
    Analyze(analyze::AnalyzeArgs),
    /// Build the word co-occurrence baseline and evaluate it the same way.
    Cooccurrence(cooc::CoocArgs),
    /// Spring-embed one network and render it as SVG.
    Layout(layoutcmd::LayoutArgs),
    /// Summarize the run's reports as plain text.
    Report(reportcmd::ReportArgs),
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Build(args) => build::run(args),
        Command::Analyze(args) => analyze::run(args),
        Command::Cooccurrence(args) => cooc::run(args),
        Command::Layout(args) => layoutcmd::run(args),
        Command::Report(args) => reportcmd::run(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.is::<config::ConfigError>() { 2 } else { 1 };
            std::process::exit(code);
        }
    }
}
