fn main() {
    std::process::exit(eulersig::harness::run(std::env::args_os()));
}
