use std::ffi::{c_char, CStr, CString};
use std::ptr;

use weitzenbock_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    weitz_string_free(s);
    out
}

unsafe fn context(sig: &str) -> *mut WeitzContext {
    let mut ctx = ptr::null_mut();
    assert_eq!(weitz_context_new(c(sig).as_ptr(), &mut ctx), WeitzStatus::Ok);
    ctx
}

unsafe fn parse(ctx: *const WeitzContext, text: &str) -> *mut WeitzPolynomial {
    let mut p = ptr::null_mut();
    assert_eq!(weitz_poly_parse(ctx, c(text).as_ptr(), &mut p), WeitzStatus::Ok);
    p
}

#[test]
fn parse_format_and_operators() {
    unsafe {
        let ctx = context("3");
        let p = parse(ctx, "x1^2 - 2*x0*x2");
        let mut s = ptr::null_mut();
        assert_eq!(weitz_poly_to_string(p, &mut s), WeitzStatus::Ok);
        assert_eq!(take(s), "-2*x0*x2 + x1^2");

        let mut yes = false;
        assert_eq!(weitz_poly_is_semi_invariant(p, &mut yes), WeitzStatus::Ok);
        assert!(yes);
        let mut ord = 99;
        assert_eq!(weitz_poly_order(p, &mut ord), WeitzStatus::Ok);
        assert_eq!(ord, 2);

        let mut d = ptr::null_mut();
        assert_eq!(weitz_poly_lower(p, &mut d), WeitzStatus::Ok);
        assert_eq!(weitz_poly_to_string(d, &mut s), WeitzStatus::Ok);
        assert_eq!(take(s), "0");
        let mut up = ptr::null_mut();
        assert_eq!(weitz_poly_raise(p, &mut up), WeitzStatus::Ok);
        assert_eq!(weitz_poly_is_semi_invariant(up, &mut yes), WeitzStatus::Ok);
        assert!(!yes);

        let mut json = ptr::null_mut();
        assert_eq!(weitz_poly_to_json(p, &mut json), WeitzStatus::Ok);
        assert!(take(json).contains("\"terms\""));

        for h in [p, d, up] {
            weitz_poly_free(h);
        }
        weitz_context_free(ctx);
    }
}

#[test]
fn transvectant_and_lambda() {
    unsafe {
        let ctx = context("3");
        let x0 = parse(ctx, "x0");
        let mut t = ptr::null_mut();
        assert_eq!(weitz_transvectant(x0, x0, 2, &mut t), WeitzStatus::Ok);
        let mut s = ptr::null_mut();
        weitz_poly_to_string(t, &mut s);
        assert!(take(s).contains("x1^2"));

        assert_eq!(weitz_transvectant(x0, x0, 9, &mut t), WeitzStatus::OutOfRange);
        assert!(!weitz_last_error().is_null());

        let ctx2 = context("2");
        let mut l = ptr::null_mut();
        assert_eq!(weitz_lambda(ctx2, c("[a,b]^2").as_ptr(), c("a:x,b:x").as_ptr(), &mut l), WeitzStatus::Ok);
        weitz_poly_to_string(l, &mut s);
        assert_eq!(take(s), "4*x0*x2 - 2*x1^2");

        let dv = parse(ctx, "x1^2 - 2*x0*x2");
        assert_eq!(weitz_symbolize(ctx, dv, &mut s), WeitzStatus::Ok);
        let sym = take(s);
        assert!(sym.contains("[a,b]^2"), "{sym}");

        for h in [x0, t, l, dv] {
            weitz_poly_free(h);
        }
        weitz_context_free(ctx);
        weitz_context_free(ctx2);
    }
}

#[test]
fn kernel_json() {
    unsafe {
        let ctx = context("3");
        let mut s = ptr::null_mut();
        assert_eq!(weitz_kernel_generators_json(ctx, 4, &mut s), WeitzStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["generators"].as_array().unwrap().len(), 4);
        weitz_context_free(ctx);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let ctx = context("3");
        let mut p = ptr::null_mut();
        assert_eq!(weitz_poly_parse(ctx, c("x0 +").as_ptr(), &mut p), WeitzStatus::Syntax);
        assert!(p.is_null());
        let msg = CStr::from_ptr(weitz_last_error()).to_str().unwrap();
        assert!(msg.contains("position"));
        assert_eq!(weitz_poly_parse(ctx, c("x7").as_ptr(), &mut p), WeitzStatus::InvalidContext);
        assert_eq!(weitz_poly_parse(ptr::null(), c("x0").as_ptr(), &mut p), WeitzStatus::NullPointer);
        assert_eq!(weitz_poly_parse(ctx, ptr::null(), &mut p), WeitzStatus::NullPointer);
        let q = parse(ctx, "x0");
        assert!(weitz_last_error().is_null());
        assert_eq!(weitz_poly_order(q, ptr::null_mut()), WeitzStatus::NullPointer);
        let x1 = parse(ctx, "x1");
        let mut s = ptr::null_mut();
        assert_eq!(weitz_symbolize(ctx, x1, &mut s), WeitzStatus::NotSemiInvariant);
        let mut bad = ptr::null_mut();
        assert_eq!(weitz_context_new(c("2,x").as_ptr(), &mut bad), WeitzStatus::InvalidContext);
        weitz_poly_free(q);
        weitz_poly_free(x1);
        weitz_poly_free(ptr::null_mut());
        weitz_string_free(ptr::null_mut());
        weitz_context_free(ctx);
    }
}

#[test]
fn header_is_valid_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = format!("{dir}/include/weitzenbock.h");
    let src = std::env::temp_dir().join("weitz_header_check.c");
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ return WEITZ_STATUS_OK; }}\n")).unwrap();
    match std::process::Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror"]).arg(&src).status() {
        Ok(status) => assert!(status.success()),
        Err(_) => eprintln!("no C compiler; header not checked"),
    }
}
