fn main() {
    eprintln!("skan: not yet wired");
    std::process::exit(2);
}
