//! C ABI for pytharr.
//!
//! Instances are opaque handles created from the JSON instance format and
//! released with `pytharr_instance_free`. Every fallible call returns a
//! `PytharrStatus`; on failure `pytharr_last_error` describes what went wrong
//! on the calling thread. Strings handed out by the library are owned by the
//! caller and must be released with `pytharr_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pytharr::arrangement::build_arrangement;
use pytharr::genericity::{bias_restricted_flats, flats_lattice, is_gain_generic};
use pytharr::instance::{bias_token_ids, parse_circle, Instance};
use pytharr::report;
use pytharr::transport::{are_equivalent, transport_onto};
use pytharr::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PytharrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    Panic = 5,
}

/// Opaque handle to a parsed instance.
pub struct PytharrInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Status(PytharrStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PytharrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PytharrStatus::Ok
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            if e.is_parse() {
                PytharrStatus::ParseError
            } else {
                PytharrStatus::DomainError
            }
        }
        Err(_) => {
            set_error("internal panic");
            PytharrStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Status(PytharrStatus::NullPointer, format!("{what} is null")));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure::Status(PytharrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const PytharrInstance, what: &str) -> Result<&'a Instance, Failure> {
    unsafe { p.as_ref() }
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::Status(PytharrStatus::NullPointer, format!("{what} is null")))
}

fn out_ptr<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::Status(PytharrStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Status(PytharrStatus::Panic, "interior NUL in output".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pytharr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn pytharr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pytharr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses an instance. On success `*out` receives a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_instance_from_json(json: *const c_char, out: *mut *mut PytharrInstance) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let text = unsafe { str_arg(json, "json") }?;
        let inner = Instance::from_json(text)?;
        unsafe { *out = Box::into_raw(Box::new(PytharrInstance { inner })) };
        Ok(())
    })
}

/// # Safety
/// `inst` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pytharr_instance_free(inst: *mut PytharrInstance) {
    if !inst.is_null() {
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_instance_to_json(inst: *const PytharrInstance, out: *mut *mut c_char) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let i = unsafe { handle(inst, "instance") }?;
        give_string(out, i.to_json())
    })
}

/// Hyperplane equations as JSON.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_arrangement_json(inst: *const PytharrInstance, out: *mut *mut c_char) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let t = &unsafe { handle(inst, "instance") }?.triple;
        let a = build_arrangement(&t.config, &t.graph)?;
        give_string(out, report::arrangement_json(&a).to_string())
    })
}

/// Intersection semilattice as JSON.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_semilattice_json(inst: *const PytharrInstance, out: *mut *mut c_char) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let t = &unsafe { handle(inst, "instance") }?.triple;
        let a = build_arrangement(&t.config, &t.graph)?;
        give_string(out, report::semilattice_json(&a, &a.intersection_semilattice()).to_string())
    })
}

/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_is_gain_generic(inst: *const PytharrInstance, out: *mut bool) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let t = &unsafe { handle(inst, "instance") }?.triple;
        let generic = is_gain_generic(&t.config, &t.graph)?;
        unsafe { *out = generic };
        Ok(())
    })
}

/// Lattice of flats as JSON. `bias` is null for the full lattice, or
/// comma-separated circles as on the command line (`abs,bct`).
///
/// # Safety
/// `inst` must be a live handle, `bias` null or a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_flats_json(
    inst: *const PytharrInstance,
    bias: *const c_char,
    out: *mut *mut c_char,
) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let t = &unsafe { handle(inst, "instance") }?.triple;
        let (c, g) = (&t.config, &t.graph);
        let v = if bias.is_null() {
            report::flats_json(g, &flats_lattice(c, g)?, None)
        } else {
            let text = unsafe { str_arg(bias, "bias") }?;
            let circles = text
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|tok| parse_circle(g, &bias_token_ids(tok)))
                .collect::<pytharr::Result<Vec<_>>>()?;
            let r = bias_restricted_flats(c, g, &circles)?;
            report::flats_json(g, &r.lattice, Some(&r))
        };
        give_string(out, v.to_string())
    })
}

/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_are_equivalent(
    a: *const PytharrInstance,
    b: *const PytharrInstance,
    out: *mut bool,
) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let (a, b) = unsafe { (handle(a, "first instance")?, handle(b, "second instance")?) };
        let eq = are_equivalent(&a.triple, &b.triple)?;
        unsafe { *out = eq };
        Ok(())
    })
}

/// Gains of `source` moved onto the shape of `target`. `map` lists
/// `target_edge=source_edge` pairs separated by commas.
///
/// # Safety
/// `source` and `target` must be live handles, `map` a NUL-terminated string
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pytharr_transport_onto(
    source: *const PytharrInstance,
    target: *const PytharrInstance,
    map: *const c_char,
    out: *mut *mut PytharrInstance,
) -> PytharrStatus {
    guard(|| {
        out_ptr(out)?;
        let (s, t) = unsafe { (handle(source, "source")?, handle(target, "target")?) };
        let text = unsafe { str_arg(map, "map") }?;
        let pairs = text
            .split(',')
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.split_once('=')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .ok_or_else(|| Failure::Lib(Error::parse("map", format!("expected `x=y`, got `{p}`"))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let moved = transport_onto(&s.triple, &t.triple, &pairs)?;
        unsafe { *out = Box::into_raw(Box::new(PytharrInstance { inner: Instance::new(moved) })) };
        Ok(())
    })
}
