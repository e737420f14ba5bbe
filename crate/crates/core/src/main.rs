use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(rcs_lane_emden::cli::run(std::env::args_os()))
}
