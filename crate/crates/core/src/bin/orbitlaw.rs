fn main() -> std::process::ExitCode {
    orbitlaw::cli::main()
}
