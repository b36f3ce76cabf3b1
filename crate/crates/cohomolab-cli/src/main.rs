use clap::Parser;

fn main() {
    let cli = cohomolab_cli::Cli::parse();
    let format = cli.format;
    let report = cohomolab_cli::run(cli);
    cohomolab_cli::print_report(format, &report);
    std::process::exit(report.exit);
}
