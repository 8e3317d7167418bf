use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rank2_ffi::*;

fn config(p: u32, group: &str, cutoff: u32) -> (Rank2Status, *mut Rank2Config) {
    let g = CString::new(group).unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { rank2_config_new(p, g.as_ptr(), cutoff, 0, &mut out) };
    (s, out)
}

fn json(report: *const Rank2Report) -> String {
    let mut needed = 0usize;
    let s = unsafe { rank2_report_json(report, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(s, Rank2Status::BufferTooSmall);
    let mut buf = vec![0u8; needed];
    let s = unsafe { rank2_report_json(report, buf.as_mut_ptr().cast(), buf.len(), &mut needed) };
    assert_eq!(s, Rank2Status::Ok);
    CStr::from_bytes_with_nul(&buf).unwrap().to_str().unwrap().to_string()
}

#[test]
fn status_codes() {
    assert_eq!(config(3, "G:4,1", 0).0, Rank2Status::InvalidSpec);
    assert_eq!(config(4, "C:3", 0).0, Rank2Status::InvalidSpec);
    assert_eq!(config(3, "Q:1", 0).0, Rank2Status::InvalidSpec);
    assert_eq!(config(3, "C:3", 20_000).0, Rank2Status::CutoffExceeded);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { rank2_config_new(3, ptr::null(), 0, 0, &mut out) }, Rank2Status::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { rank2_config_new(3, bad.as_ptr().cast(), 0, 0, &mut out) }, Rank2Status::InvalidUtf8);
    assert_eq!(unsafe { rank2_report_passed(ptr::null()) }, -1);
    let msg = unsafe { CStr::from_ptr(rank2_status_message(Rank2Status::BufferTooSmall)) };
    assert_eq!(msg.to_str().unwrap(), "buffer too small");
    let v = unsafe { CStr::from_ptr(rank2_version()) };
    assert_eq!(v.to_str().unwrap(), "0.1.0");
}

#[test]
fn verify_and_series_round_trip() {
    let (s, cfg) = config(3, "C:3", 60);
    assert_eq!(s, Rank2Status::Ok);
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { rank2_run(cfg, Rank2Command::Verify, ptr::null(), &mut rep) }, Rank2Status::Ok);
    assert_eq!(unsafe { rank2_report_passed(rep) }, 1);
    let (mut n, mut failed) = (0usize, 0usize);
    assert_eq!(unsafe { rank2_report_counts(rep, &mut n, &mut failed) }, Rank2Status::Ok);
    assert!(n > 20);
    assert_eq!(failed, 0);
    let a = json(rep);
    assert!(a.starts_with("{\n  \"version\""));
    unsafe { rank2_report_free(rep) };

    let mut again = ptr::null_mut();
    assert_eq!(unsafe { rank2_run(cfg, Rank2Command::Verify, ptr::null(), &mut again) }, Rank2Status::Ok);
    assert_eq!(json(again), a, "reports are byte-identical");
    unsafe { rank2_report_free(again) };

    let x = CString::new("X:0,0").unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { rank2_run(cfg, Rank2Command::Series, x.as_ptr(), &mut rep) }, Rank2Status::Ok);
    let mut needed = 0usize;
    let mut buf = vec![0i64; 61];
    assert_eq!(unsafe { rank2_report_expansion(rep, buf.as_mut_ptr(), buf.len(), &mut needed) }, Rank2Status::Ok);
    assert_eq!(needed, 61);
    // 1 / ((1 - t^12)(1 - t^16))
    let nonzero: Vec<usize> = (0..61).filter(|d| buf[*d] != 0).collect();
    assert_eq!(nonzero, vec![0, 12, 16, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60]);
    assert_eq!(buf[48], 2);
    unsafe { rank2_report_free(rep) };

    let bad = CString::new("X:9,9").unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { rank2_run(cfg, Rank2Command::Series, bad.as_ptr(), &mut rep) }, Rank2Status::InvalidSpec);
    assert!(rep.is_null());
    assert_eq!(unsafe { rank2_run(cfg, Rank2Command::Recombine, ptr::null(), &mut rep) }, Rank2Status::InvalidSpec);
    unsafe { rank2_config_free(cfg) };
}

#[test]
fn c_program_links_against_header() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(cc.status.success());
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = root.join("../../target").join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let lib = target.join("librank2_ffi.a");
    if !lib.exists() {
        eprintln!("static library not built at {}; skipped", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("rank2-abi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "rank2.h"
int main(void) {
    Rank2Config *c = NULL;
    if (rank2_config_new(3, "C:3", 36, 0, &c) != RANK2_STATUS_OK) return 2;
    Rank2Report *r = NULL;
    if (rank2_run(c, RANK2_COMMAND_SPLIT, NULL, &r) != RANK2_STATUS_OK) return 3;
    size_t n = 0, f = 0;
    rank2_report_counts(r, &n, &f);
    printf("%zu %zu %d\n", n, f, rank2_report_passed(r));
    rank2_report_free(r);
    rank2_config_free(c);
    return rank2_config_new(3, "G:4,1", 0, 0, &c) == RANK2_STATUS_INVALID_SPEC ? 0 : 4;
}
"#,
    )
    .unwrap();
    let exe = dir.join("main");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.trim().ends_with(" 0 1"), "{text}");
}
