fn main() -> std::process::ExitCode {
    omm_qcorr::cli::main()
}
