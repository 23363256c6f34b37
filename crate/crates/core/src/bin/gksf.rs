// SPDX-License-Identifier: Apache-2.0

use clap::Parser;
use gk_semifield::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}
