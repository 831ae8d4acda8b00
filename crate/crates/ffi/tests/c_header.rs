//! Compiles a C program against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "vslink.h"

int main(void) {
    const char *text = "gsld 1\nstrands 2\nchord 1 +\ncomp s1: T1\ncomp s2: H1\n";
    VslDiagram *d = NULL;
    if (vsl_diagram_parse(text, &d) != VSL_STATUS_OK) return 1;
    int64_t lk[2];
    size_t len = 0;
    if (vsl_linking_vector(d, lk, 2, &len) != VSL_STATUS_OK || len != 2) return 2;
    VslDiagram *n = NULL;
    char *trace = NULL;
    if (vsl_normalize(d, VSL_CALCULUS_COBORDISM, &n, &trace) != VSL_STATUS_OK) return 3;
    char *out = NULL;
    if (vsl_diagram_serialize(n, &out) != VSL_STATUS_OK) return 4;
    if (strcmp(out, text) != 0) return 5;
    if (vsl_diagram_parse("nonsense", &d) == VSL_STATUS_OK) return 6;
    if (strlen(vsl_last_error()) == 0) return 7;
    printf("%lld %lld\n", (long long)lk[0], (long long)lk[1]);
    vsl_string_free(out);
    vsl_string_free(trace);
    vsl_diagram_free(n);
    vsl_diagram_free(d);
    return 0;
}
"#;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// The profile directory holding this test binary's build artifacts.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(crate_dir().join("include/vslink.h")).unwrap();
    for name in [
        "vsl_diagram_parse",
        "vsl_diagram_free",
        "vsl_linking_vector",
        "vsl_normalize",
        "vsl_equivalent",
        "vsl_replay_trace",
        "VSL_STATUS_BUFFER_TOO_SMALL",
        "typedef struct VslDiagram VslDiagram",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    let lib = profile_dir().join("libvslink_ffi.a");
    assert!(
        lib.exists(),
        "static library not found at {}",
        lib.display()
    );
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1 0\n");
}
