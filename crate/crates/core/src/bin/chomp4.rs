fn main() {
    std::process::exit(chomp4::cli::run(std::env::args_os()));
}
