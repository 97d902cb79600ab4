fn main() {
    std::process::exit(skeletonkit_cli::run(std::env::args_os()));
}
