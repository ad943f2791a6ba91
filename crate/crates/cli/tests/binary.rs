use std::process::Command;

fn homkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homkit"))
}

#[test]
fn exit_codes_reach_the_process() {
    let ok = homkit().args(["intdyn", "--sigma", "3,5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stdout.ends_with(b"}\n"));

    let bad = homkit().args(["intdyn", "--sigma", "4,6"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("(4,6)"));
}

#[test]
fn brute_force_bound_from_environment() {
    let args = ["intdyn", "--sigma", "3,5,7", "--brute-force"];
    let capped = homkit().args(args).env("HOMKIT_MAX_N", "2").output().unwrap();
    assert_eq!(capped.status.code(), Some(2));
    let allowed = homkit().args(args).env("HOMKIT_MAX_N", "3").output().unwrap();
    assert_eq!(allowed.status.code(), Some(0));
    let garbage = homkit().args(args).env("HOMKIT_MAX_N", "many").output().unwrap();
    assert_eq!(garbage.status.code(), Some(2));
}
