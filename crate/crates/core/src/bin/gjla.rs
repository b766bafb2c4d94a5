use std::io::{stderr, stdout};
use std::process::exit;

fn main() {
    let code = gjla::cli::cli_main(std::env::args_os(), &mut stdout().lock(), &mut stderr().lock());
    exit(code);
}
