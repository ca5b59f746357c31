use radform::cli::{main_with, Hooks};

fn main() {
    let code = main_with(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        &Hooks::default(),
    );
    std::process::exit(code);
}
