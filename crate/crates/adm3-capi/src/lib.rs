//! C ABI for the adm3 library.
//!
//! Graphs are opaque handles created from an edge-list file or buffer and
//! released with [`adm3_graph_free`]. Every fallible call returns an
//! [`Adm3Status`]; on failure a thread-local message with details is
//! available through [`adm3_last_error_message`]. The checked-in header
//! lives at `include/adm3.h` and can be regenerated with cbindgen.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use adm3::driver::{compute_value, decide};
use adm3::graph::{degeneracy, load_edge_list, load_edge_list_path, LoadedGraph};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adm3Status {
    Adm3Ok = 0,
    Adm3ErrIo = 1,
    Adm3ErrParse = 2,
    Adm3ErrInvalidArgument = 3,
    Adm3ErrInternal = 4,
}

use Adm3Status::*;

/// Opaque graph handle: the normalized graph plus its original labels.
pub struct Adm3Graph {
    loaded: LoadedGraph,
    labels_c: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn classify(e: &adm3::Error) -> Adm3Status {
    match e {
        adm3::Error::Io(_) => Adm3ErrIo,
        adm3::Error::Parse { .. } | adm3::Error::EmptyInput => Adm3ErrParse,
        _ => Adm3ErrInvalidArgument,
    }
}

fn guard<F: FnOnce() -> Adm3Status>(body: F) -> Adm3Status {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            Adm3ErrInternal
        }
    }
}

fn wrap(loaded: LoadedGraph, out: *mut *mut Adm3Graph) -> Adm3Status {
    let labels_c = loaded
        .labels
        .iter()
        .map(|l| CString::new(l.replace('\0', " ")).unwrap_or_default())
        .collect();
    let handle = Box::new(Adm3Graph { loaded, labels_c });
    unsafe { *out = Box::into_raw(handle) };
    Adm3Ok
}

/// Message describing the most recent failure on this thread. Borrowed;
/// valid until the next failing call.
#[no_mangle]
pub extern "C" fn adm3_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Loads an edge-list file (plain text or gzip) into a new graph handle.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adm3_graph_load_path(
    path: *const c_char,
    out: *mut *mut Adm3Graph,
) -> Adm3Status {
    guard(|| {
        if path.is_null() || out.is_null() {
            set_error("null argument");
            return Adm3ErrInvalidArgument;
        }
        let path = match unsafe { CStr::from_ptr(path) }.to_str() {
            Ok(p) => p,
            Err(_) => {
                set_error("path is not valid UTF-8");
                return Adm3ErrInvalidArgument;
            }
        };
        match load_edge_list_path(path) {
            Ok(loaded) => wrap(loaded, out),
            Err(e) => {
                set_error(&e.to_string());
                classify(&e)
            }
        }
    })
}

/// Parses an in-memory edge list (plain text or gzip) into a new handle.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm3_graph_from_edge_list(
    data: *const u8,
    len: usize,
    out: *mut *mut Adm3Graph,
) -> Adm3Status {
    guard(|| {
        if (data.is_null() && len > 0) || out.is_null() {
            set_error("null argument");
            return Adm3ErrInvalidArgument;
        }
        let bytes = if len == 0 {
            &[][..]
        } else {
            unsafe { std::slice::from_raw_parts(data, len) }
        };
        match load_edge_list(bytes) {
            Ok(loaded) => wrap(loaded, out),
            Err(e) => {
                set_error(&e.to_string());
                classify(&e)
            }
        }
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must be a pointer previously returned by a load call, at most once.
#[no_mangle]
pub unsafe extern "C" fn adm3_graph_free(g: *mut Adm3Graph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn adm3_graph_vertex_count(g: *const Adm3Graph) -> u64 {
    if g.is_null() {
        return 0;
    }
    unsafe { &*g }.loaded.graph.n() as u64
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn adm3_graph_edge_count(g: *const Adm3Graph) -> u64 {
    if g.is_null() {
        return 0;
    }
    unsafe { &*g }.loaded.graph.m() as u64
}

/// Original label of vertex `v`, or NULL if out of range. Borrowed; valid
/// while the handle lives.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn adm3_graph_label(g: *const Adm3Graph, v: u32) -> *const c_char {
    if g.is_null() {
        return std::ptr::null();
    }
    let handle = unsafe { &*g };
    match handle.labels_c.get(v as usize) {
        Some(label) => label.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Degeneracy (1-admissibility) of the graph.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adm3_degeneracy(g: *const Adm3Graph, out: *mut u64) -> Adm3Status {
    guard(|| {
        if g.is_null() || out.is_null() {
            set_error("null argument");
            return Adm3ErrInvalidArgument;
        }
        let handle = unsafe { &*g };
        unsafe { *out = degeneracy(&handle.loaded.graph).0 as u64 };
        Adm3Ok
    })
}

/// Decides whether the 3-admissibility of the graph is at most `p`;
/// `*out_is_at_most` is set to 1 (yes) or 0 (no).
///
/// # Safety
/// `g` must be a live handle and `out_is_at_most` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn adm3_decide(
    g: *const Adm3Graph,
    p: u64,
    out_is_at_most: *mut c_int,
) -> Adm3Status {
    guard(|| {
        if g.is_null() || out_is_at_most.is_null() {
            set_error("null argument");
            return Adm3ErrInvalidArgument;
        }
        let handle = unsafe { &*g };
        let yes = decide(&handle.loaded.graph, p as usize).is_yes();
        unsafe { *out_is_at_most = yes as c_int };
        Adm3Ok
    })
}

/// Computes the exact 3-admissibility. When `ordering_out` is non-null it
/// must hold `adm3_graph_vertex_count(g)` entries and receives a witness
/// ordering (vertex ids, first position first).
///
/// # Safety
/// `g` must be a live handle, `out_value` valid, and `ordering_out` either
/// NULL or sized as described.
#[no_mangle]
pub unsafe extern "C" fn adm3_compute_value(
    g: *const Adm3Graph,
    out_value: *mut u64,
    ordering_out: *mut u32,
) -> Adm3Status {
    guard(|| {
        if g.is_null() || out_value.is_null() {
            set_error("null argument");
            return Adm3ErrInvalidArgument;
        }
        let handle = unsafe { &*g };
        let (value, ordering) = compute_value(&handle.loaded.graph);
        unsafe { *out_value = value as u64 };
        if !ordering_out.is_null() {
            let out = unsafe { std::slice::from_raw_parts_mut(ordering_out, ordering.len()) };
            out.copy_from_slice(&ordering);
        }
        Adm3Ok
    })
}

/// Evaluates a caller-supplied ordering (vertex ids, a permutation) for
/// radius `r` in {1,2,3}; writes the maximum prefix packing number.
///
/// # Safety
/// `g` must be a live handle, `ordering` must hold
/// `adm3_graph_vertex_count(g)` entries, and `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn adm3_verify_ordering(
    g: *const Adm3Graph,
    ordering: *const u32,
    r: u32,
    out_value: *mut u64,
) -> Adm3Status {
    guard(|| {
        if g.is_null() || ordering.is_null() || out_value.is_null() {
            set_error("null argument");
            return Adm3ErrInvalidArgument;
        }
        let handle = unsafe { &*g };
        let n = handle.loaded.graph.n();
        let ordering = unsafe { std::slice::from_raw_parts(ordering, n) };
        match adm3::reference::verify_ordering(&handle.loaded.graph, ordering, r) {
            Ok(value) => {
                unsafe { *out_value = value as u64 };
                Adm3Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                Adm3ErrInvalidArgument
            }
        }
    })
}
