fn main() {
    std::process::exit(hermipade::job::run(std::env::args_os()));
}
