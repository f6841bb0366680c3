//! Compiles a small C program against include/dtc.h and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "dtc.h"

int main(void) {
    DtcComplex *k = dtc_complex_fixture("S2");
    if (!k) return 10;
    size_t betti[8], len = 0;
    if (dtc_complex_betti(k, DTC_FIELD_RATIONAL, betti, 8, &len) != DTC_STATUS_OK) return 11;
    if (len != 3 || betti[0] != 1 || betti[1] != 0 || betti[2] != 1) return 12;
    size_t dcat = 0, dtc = 0;
    if (dtc_complex_lower_bounds(k, &dcat, &dtc) != DTC_STATUS_OK || dcat != 1 || dtc != 2) return 13;
    dtc_complex_free(k);

    DtcPlanner *p = dtc_planner_new("odd_sphere(3)");
    if (!p) return 20;
    char *json = NULL;
    if (dtc_planner_plan(p, "[1,0,0,0]", "[0,1,0,0]", &json) != DTC_STATUS_OK) return 21;
    if (!strstr(json, "\"support\"")) return 22;
    dtc_string_free(json);
    DtcAuditSummary s;
    if (dtc_planner_audit(p, 100, 1, &s) != DTC_STATUS_OK || s.violations != 0) return 23;
    dtc_planner_free(p);

    if (dtc_planner_new("no_such_planner") != NULL) return 30;
    if (dtc_last_error() == NULL) return 31;
    printf("ok %s\n", dtc_version());
    return 0;
}
"#;

fn compiler() -> Option<String> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .map(String::from)
}

#[test]
fn header_compiles_and_links() {
    let cc = compiler().expect("a C compiler is required for this test");
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/this-test → target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libdtc_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("dtc_smoke.c");
    let bin = tmp.join("dtc_smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
