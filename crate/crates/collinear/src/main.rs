fn main() -> std::process::ExitCode {
    collinear::cli::main()
}
