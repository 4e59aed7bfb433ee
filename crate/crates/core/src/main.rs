use std::process;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    process::exit(spectral_workbench::cli::run(&argv, &mut out, &mut err));
}
