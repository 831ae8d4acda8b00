fn main() {
    std::process::exit(vslink::cli::run());
}
