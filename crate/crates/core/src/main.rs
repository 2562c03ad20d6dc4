fn main() {
    std::process::exit(hjramsey::workbench::run(std::env::args_os()));
}
