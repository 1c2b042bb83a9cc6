fn main() -> std::process::ExitCode {
    pytharr::cli::main()
}
