fn main() {
    std::process::exit(iqgroth::cli::run(std::env::args_os()));
}
