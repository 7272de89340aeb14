use std::io;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let code = modlattice_cli::run(&argv, &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
