fn main() {
    std::process::exit(sas_planner::cli::run_cli(std::env::args_os()));
}
