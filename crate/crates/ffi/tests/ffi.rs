use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use z8codes_ffi::*;

fn last_error() -> String {
    let p = z8_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn family(spec: &str) -> *mut Z8Code {
    let spec = CString::new(spec).unwrap();
    let mut code = ptr::null_mut();
    assert_eq!(unsafe { z8_code_from_family(spec.as_ptr(), &mut code) }, Z8Status::Ok);
    code
}

#[test]
fn octacode_through_the_c_interface() {
    let code = family("octacode");
    unsafe {
        let mut n = 0usize;
        assert_eq!(z8_code_length(code, &mut n), Z8Status::Ok);
        assert_eq!(n, 8);

        let mut k = [9usize; 3];
        assert_eq!(z8_code_type(code, k.as_mut_ptr()), Z8Status::Ok);
        assert_eq!(k, [4, 0, 0]);

        let mut log2 = 0u64;
        assert_eq!(z8_code_cardinality_log2(code, &mut log2), Z8Status::Ok);
        assert_eq!(log2, 12);

        let (mut so, mut sd) = (false, false);
        assert_eq!(z8_code_is_self_orthogonal(code, &mut so), Z8Status::Ok);
        assert_eq!(z8_code_is_self_dual(code, &mut sd), Z8Status::Ok);
        assert!(so && sd);

        let mut r = 0u32;
        assert_eq!(z8_covering_radius(code, Z8Metric::Hamming, &mut r), Z8Status::Ok);
        let direct = z8codes::covering::covering_radius(
            &z8codes::families::build(&z8codes::families::FamilySpec::Octacode).unwrap(),
            z8codes::Metric::Hamming,
            &z8codes::Budgets::default(),
        )
        .unwrap();
        assert_eq!(r, direct.value);

        let mut d = 0u32;
        assert_eq!(z8_min_weight(code, Z8Metric::Homogeneous, &mut d), Z8Status::Ok);
        assert_eq!(d, 10);
        z8_code_free(code);
    }
}

#[test]
fn generator_text_round_trips_through_the_dual() {
    let code = family("repetition:a=1,n=3");
    unsafe {
        let mut dual = ptr::null_mut();
        assert_eq!(z8_code_dual(code, &mut dual), Z8Status::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(z8_code_generator_text(dual, &mut text), Z8Status::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(z8_code_from_text(text, &mut again), Z8Status::Ok);
        let (mut a, mut b) = (0u64, 0u64);
        z8_code_cardinality_log2(dual, &mut a);
        z8_code_cardinality_log2(again, &mut b);
        assert_eq!((a, b), (6, 6));
        z8_string_free(text);
        z8_code_free(again);
        z8_code_free(dual);
        z8_code_free(code);
    }
}

#[test]
fn vector_helpers() {
    let v = [0u8, 1, 2, 3, 4, 5, 6, 7];
    let mut bits = [9u8; 32];
    unsafe {
        assert_eq!(z8_gray_map(v.as_ptr(), v.len(), bits.as_mut_ptr()), Z8Status::Ok);
        let mut w = 0u32;
        assert_eq!(z8_weight(v.as_ptr(), v.len(), Z8Metric::Homogeneous, &mut w), Z8Status::Ok);
        assert_eq!(bits.iter().map(|&b| u32::from(b)).sum::<u32>(), w);
        assert_eq!(z8_weight(v.as_ptr(), v.len(), Z8Metric::Euclidean, &mut w), Z8Status::Ok);
        assert_eq!(w, 44);
        let bad = [8u8];
        assert_eq!(z8_weight(bad.as_ptr(), 1, Z8Metric::Lee, &mut w), Z8Status::Parameter);
    }
    let image: String = bits.iter().map(|b| char::from(b'0' + b)).collect();
    assert_eq!(image, "00000101001101101111101011001001");
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut code = ptr::null_mut();
        let bad = CString::new("1 2 x\n").unwrap();
        assert_eq!(z8_code_from_text(bad.as_ptr(), &mut code), Z8Status::Parse);
        assert!(code.is_null());
        assert!(!last_error().is_empty());

        let spec = CString::new("simplex-beta:k=1").unwrap();
        assert_eq!(z8_code_from_family(spec.as_ptr(), &mut code), Z8Status::Parameter);

        let empty = CString::new("# nothing\n").unwrap();
        assert_eq!(z8_code_from_text(empty.as_ptr(), &mut code), Z8Status::Parameter);

        assert_eq!(z8_code_from_text(ptr::null(), &mut code), Z8Status::NullPointer);
        let mut n = 0usize;
        assert_eq!(z8_code_length(ptr::null(), &mut n), Z8Status::NullPointer);
        assert!(last_error().contains("null"));

        let big = family("simplex-alpha:k=2");
        let mut r = 0u32;
        assert_eq!(z8_covering_radius(big, Z8Metric::Euclidean, &mut r), Z8Status::Budget);
        assert_eq!(z8_code_length(big, &mut n), Z8Status::Ok);
        assert!(z8_last_error_message().is_null());
        z8_code_free(big);
        z8_code_free(ptr::null_mut());
        z8_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(z8_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export_and_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/z8codes.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "z8_code_from_text",
        "z8_code_from_family",
        "z8_code_free",
        "z8_code_length",
        "z8_code_type",
        "z8_code_cardinality_log2",
        "z8_code_dual",
        "z8_covering_radius",
        "z8_min_weight",
        "z8_code_is_self_orthogonal",
        "z8_code_is_self_dual",
        "z8_code_generator_text",
        "z8_string_free",
        "z8_gray_map",
        "z8_weight",
        "z8_last_error_message",
        "z8_version",
    ] {
        assert!(text.contains(&format!("{name}(")), "{name} missing from header");
    }
    let Ok(probe) = Command::new("cc").arg("--version").output() else {
        return;
    };
    if !probe.status.success() {
        return;
    }
    let src = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("header_check.c");
    std::fs::write(
        &src,
        "#include \"z8codes.h\"\nint main(void) { Z8Code *c = 0; return z8_code_from_family(\"octacode\", &c) == Z8_STATUS_OK; }\n",
    )
    .unwrap();
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
