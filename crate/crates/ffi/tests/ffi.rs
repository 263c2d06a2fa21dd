use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use poisson_ffi::*;

const EXAMPLE: &str = "[ring]\nvars = [\"x\", \"y\", \"z\"]\n[brackets]\n\"y,z\" = \"y\"\n\"z,x\" = \"-1\"\n";
const QUADRATIC: &str = "[ring]\nvars = [\"x\", \"y\", \"z\"]\n[brackets]\n\"x,y\" = \"x*y\"\n\"x,z\" = \"2*x*z\"\n\"y,z\" = \"-3*y*z\"\n";

fn load(text: &str) -> (PoissonStatus, *mut PoissonHandle) {
    let c = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    let s = unsafe { poisson_load(c.as_ptr(), &mut h) };
    (s, h)
}

fn last_error() -> String {
    let p = poisson_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { poisson_string_free(s) };
    serde_json::from_str(&text).unwrap()
}

#[test]
fn modular_derivation_round_trip() {
    let (s, h) = load(EXAMPLE);
    assert_eq!(s, PoissonStatus::Ok);
    assert_eq!(unsafe { poisson_dim(h) }, 3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { poisson_modular_json(h, &mut out) }, PoissonStatus::Ok);
    let v = take(out);
    assert_eq!(v["unimodular"], false);
    assert_eq!(v["modular"][2]["value"], "-1");
    assert!(poisson_last_error().is_null());
    unsafe { poisson_free(h) };
}

#[test]
fn load_errors_map_to_codes() {
    let (s, h) = load("[ring]\nvars = [\"x\"\n");
    assert_eq!(s, PoissonStatus::ParseError);
    assert!(h.is_null());
    assert!(!last_error().is_empty());

    let (s, _) = load("[ring]\nvars = [\"x\",\"y\",\"z\"]\n[brackets]\n\"x,y\" = \"z\"\n\"y,z\" = \"z\"\n\"z,x\" = \"x\"\n");
    assert_eq!(s, PoissonStatus::JacobiError);
    assert!(last_error().contains("(x, y, z)"));

    let bad_module = format!("{EXAMPLE}[module]\nkind = \"matrix\"\n[module.action]\nx = [[\"z\"]]\n");
    assert_eq!(load(&bad_module).0, PoissonStatus::AxiomError);
}

#[test]
fn null_pointers_are_rejected() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { poisson_load(ptr::null(), &mut h) }, PoissonStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { poisson_modular_json(ptr::null(), &mut out) }, PoissonStatus::NullPointer);
    assert_eq!(unsafe { poisson_verify_duality(ptr::null(), 1) }, PoissonStatus::NullPointer);
    unsafe {
        poisson_free(ptr::null_mut());
        poisson_string_free(ptr::null_mut());
    }
}

#[test]
fn betti_tables_and_mode_errors() {
    let (_, h) = load(QUADRATIC);
    let mut out = ptr::null_mut();
    let s = unsafe { poisson_betti_json(h, PoissonKind::Cohomology, PoissonModuleChoice::Spec, 0, 2, false, &mut out) };
    assert_eq!(s, PoissonStatus::Ok);
    let v = take(out);
    assert_eq!(v["mode"], "exact-graded");
    assert_eq!(v["kind"], "cohomology");
    assert_eq!(v["entries"].as_array().unwrap().len(), 4 * 3);
    assert_eq!(unsafe { poisson_verify_duality(h, 2) }, PoissonStatus::Ok);
    unsafe { poisson_free(h) };

    let (_, h) = load(EXAMPLE);
    let s = unsafe { poisson_betti_json(h, PoissonKind::Homology, PoissonModuleChoice::Twisted, 0, 2, false, &mut out) };
    assert_eq!(s, PoissonStatus::ModeError);
    assert!(last_error().contains("filtered"));
    let s = unsafe { poisson_betti_json(h, PoissonKind::Homology, PoissonModuleChoice::Twisted, 0, 2, true, &mut out) };
    assert_eq!(s, PoissonStatus::Ok);
    assert_eq!(take(out)["mode"], "filtered-approximate");
    unsafe { poisson_free(h) };
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/poisson_ffi.h");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ PoissonHandle *h = 0; \
             PoissonStatus s = poisson_load(\"\", &h); poisson_free(h); return s == POISSON_STATUS_OK; }}\n"
        ),
    )
    .unwrap();
    for (compiler, extra) in [("cc", vec![]), ("c++", vec!["-x", "c++"])] {
        match Command::new(compiler).args(&extra).arg("-fsyntax-only").arg(&src).output() {
            Ok(o) => assert!(o.status.success(), "{compiler}: {}", String::from_utf8_lossy(&o.stderr)),
            Err(_) => eprintln!("{compiler} not available, header check skipped"),
        }
    }
}
