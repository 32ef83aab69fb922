fn main() {
    std::process::exit(weitzenbock::cli::run());
}
