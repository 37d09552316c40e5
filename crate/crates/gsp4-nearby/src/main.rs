use gsp4_nearby::cli;

fn main() {
    std::process::exit(cli::main_entry(std::env::args_os()));
}
