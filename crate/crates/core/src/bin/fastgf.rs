use std::process::ExitCode;

fn main() -> ExitCode {
    fastgf::cli::init_thread_pool_from_env();
    ExitCode::from(fastgf::cli::run(std::env::args_os()) as u8)
}
