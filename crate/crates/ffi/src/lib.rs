//! C ABI over `weitzenbock`.
//!
//! Contexts and polynomials are opaque heap handles owned by the caller and
//! released with the matching `_free`. Every fallible call returns a
//! `WeitzStatus`; on failure `weitz_last_error` describes it until the next
//! call on the same thread. Strings handed out must go back through
//! `weitz_string_free`. Pointer arguments must be NULL or valid for the
//! stated use; NULL is reported as `NullPointer`, never dereferenced.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weitzenbock::gordan::{kernel_generators, SearchBounds};
use weitzenbock::symbolic::BracketExpr;
use weitzenbock::transfer::{lambda_map, symbolize, LetterAssignment};
use weitzenbock::{sl2, transvect, Error, LetterContext, Polynomial};

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WeitzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidContext = 4,
    NotSemiInvariant = 5,
    OutOfRange = 6,
    Domain = 7,
    Panic = 8,
}

/// A set of roman letters with their sizes, e.g. from `"2,3"`.
pub struct WeitzContext(LetterContext);

pub struct WeitzPolynomial(Polynomial);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WeitzStatus {
    match e {
        Error::Syntax { .. } => WeitzStatus::Syntax,
        Error::UnknownLetter(_) | Error::InvalidContext(_) | Error::IndexOutOfRange { .. } => {
            WeitzStatus::InvalidContext
        }
        Error::NotSemiInvariant => WeitzStatus::NotSemiInvariant,
        Error::TransvectantRange { .. } | Error::OrderTooSmall { .. } => WeitzStatus::OutOfRange,
        _ => WeitzStatus::Domain,
    }
}

enum Failure {
    Status(WeitzStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WeitzStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WeitzStatus::Ok,
        Ok(Err(Failure::Status(s, m))) => {
            set_error(m);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            WeitzStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(WeitzStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Status(WeitzStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn get<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::Status(WeitzStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Status(WeitzStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_poly(out: *mut *mut WeitzPolynomial, p: Polynomial) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(WeitzPolynomial(p))))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    put(out, CString::new(s).unwrap().into_raw())
}

/// Message of the last failure on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn weitz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn weitz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Context from a comma-separated signature such as `"2,3"`.
#[no_mangle]
pub unsafe extern "C" fn weitz_context_new(signature: *const c_char, out: *mut *mut WeitzContext) -> WeitzStatus {
    guard(|| {
        let ctx = LetterContext::parse_signature(text(signature)?)?;
        put(out, Box::into_raw(Box::new(WeitzContext(ctx))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn weitz_context_free(ctx: *mut WeitzContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

#[no_mangle]
pub unsafe extern "C" fn weitz_poly_parse(
    ctx: *const WeitzContext,
    source: *const c_char,
    out: *mut *mut WeitzPolynomial,
) -> WeitzStatus {
    guard(|| {
        let p = Polynomial::parse(text(source)?, &get(ctx)?.0)?;
        put_poly(out, p)
    })
}

#[no_mangle]
pub unsafe extern "C" fn weitz_poly_free(p: *mut WeitzPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Text form; free with `weitz_string_free`.
#[no_mangle]
pub unsafe extern "C" fn weitz_poly_to_string(p: *const WeitzPolynomial, out: *mut *mut c_char) -> WeitzStatus {
    guard(|| put_string(out, get(p)?.0.to_string()))
}

/// JSON form; free with `weitz_string_free`.
#[no_mangle]
pub unsafe extern "C" fn weitz_poly_to_json(p: *const WeitzPolynomial, out: *mut *mut c_char) -> WeitzStatus {
    guard(|| put_string(out, get(p)?.0.to_json_string()))
}

/// The lowering operator `D`.
#[no_mangle]
pub unsafe extern "C" fn weitz_poly_lower(p: *const WeitzPolynomial, out: *mut *mut WeitzPolynomial) -> WeitzStatus {
    guard(|| put_poly(out, sl2::lower(&get(p)?.0)))
}

/// The raising operator `D*`.
#[no_mangle]
pub unsafe extern "C" fn weitz_poly_raise(p: *const WeitzPolynomial, out: *mut *mut WeitzPolynomial) -> WeitzStatus {
    guard(|| put_poly(out, sl2::raise(&get(p)?.0)))
}

#[no_mangle]
pub unsafe extern "C" fn weitz_poly_is_semi_invariant(p: *const WeitzPolynomial, out: *mut bool) -> WeitzStatus {
    guard(|| put(out, sl2::is_semi_invariant(&get(p)?.0)))
}

#[no_mangle]
pub unsafe extern "C" fn weitz_poly_order(p: *const WeitzPolynomial, out: *mut u32) -> WeitzStatus {
    guard(|| put(out, sl2::order_of(&get(p)?.0)?))
}

/// The semi-transvectant `[f,g]^r`.
#[no_mangle]
pub unsafe extern "C" fn weitz_transvectant(
    f: *const WeitzPolynomial,
    g: *const WeitzPolynomial,
    r: u32,
    out: *mut *mut WeitzPolynomial,
) -> WeitzStatus {
    guard(|| put_poly(out, transvect::semi_transvectant(&get(f)?.0, &get(g)?.0, r)?))
}

/// `Lambda` of a bracket expression under an assignment such as `"a:x,b:y"`.
#[no_mangle]
pub unsafe extern "C" fn weitz_lambda(
    ctx: *const WeitzContext,
    expr: *const c_char,
    assignment: *const c_char,
    out: *mut *mut WeitzPolynomial,
) -> WeitzStatus {
    guard(|| {
        let ctx = &get(ctx)?.0;
        let e = BracketExpr::parse(text(expr)?)?;
        let a = LetterAssignment::parse(text(assignment)?, ctx)?;
        put_poly(out, lambda_map(&e.expand(), &a)?)
    })
}

/// A bracket expression and its assignment, as `"expr ; a:x,b:x"`.
#[no_mangle]
pub unsafe extern "C" fn weitz_symbolize(
    ctx: *const WeitzContext,
    p: *const WeitzPolynomial,
    out: *mut *mut c_char,
) -> WeitzStatus {
    guard(|| {
        let s = symbolize(&get(p)?.0, &get(ctx)?.0)?;
        put_string(out, format!("{} ; {}", s.expr, s.assignment))
    })
}

/// Kernel generators up to `max_degree`, as the JSON document of the CLI.
#[no_mangle]
pub unsafe extern "C" fn weitz_kernel_generators_json(
    ctx: *const WeitzContext,
    max_degree: u32,
    out: *mut *mut c_char,
) -> WeitzStatus {
    guard(|| {
        let set = kernel_generators(&get(ctx)?.0, &SearchBounds::degree(max_degree))?;
        put_string(out, set.to_json_string())
    })
}
