//! C ABI over `dplct`.
//!
//! Objects cross the boundary as opaque handles released with their
//! `_free` function. Every call returns a [`DplctStatus`]; on failure the
//! message is available from [`dplct_last_error`] on the same thread.
//! Strings handed out are NUL-terminated UTF-8 owned by the caller, who
//! releases them with [`dplct_string_free`].

use dplct::cli::CliError;
use dplct::germ::{lct_newton, PlaneGerm};
use dplct::rational::{fmt_q, Q};
use dplct::surface::analyze;
use dplct::table::{enumerate_candidates, exceptionality, ke_status, verify_table, Dataset};
use dplct::weights::{case_trichotomy, k_squared, Case, Quintuple};
use serde_json::json;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

/// Result of every call; the nonzero values match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DplctStatus {
    Ok = 0,
    Mismatch = 1,
    InvalidInput = 2,
    Unsupported = 3,
    NullPointer = 4,
    Panic = 5,
}

/// A weight quadruple with its degree.
pub struct DplctQuintuple(Quintuple);

/// A loaded classification table.
pub struct DplctDataset(Dataset);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

enum Failure {
    Cli(CliError),
    Null(&'static str),
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Cli(e.into())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<DplctStatus, Failure>) -> DplctStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure::Null(arg))) => {
            set_error(&format!("{arg} is null"));
            DplctStatus::NullPointer
        }
        Ok(Err(Failure::Cli(e))) => {
            set_error(e.message());
            match e.code() {
                1 => DplctStatus::Mismatch,
                3 => DplctStatus::Unsupported,
                _ => DplctStatus::InvalidInput,
            }
        }
        Err(_) => {
            set_error("internal panic");
            DplctStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, name: &'static str) -> Result<*const T, Failure> {
    if p.is_null() {
        Err(Failure::Null(name))
    } else {
        Ok(p)
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Cli(CliError::Invalid(msg.into()))
}

/// # Safety
/// `out` must be valid for a pointer write.
unsafe fn give_string(s: String, out: *mut *mut c_char) -> Result<DplctStatus, Failure> {
    let c = CString::new(s).map_err(|_| invalid("output contains NUL"))?;
    *out = c.into_raw();
    Ok(DplctStatus::Ok)
}

/// # Safety
/// `s` must be null or a NUL-terminated string.
unsafe fn opt_str<'a>(s: *const c_char) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s).to_str().map(Some).map_err(|_| invalid("string is not UTF-8"))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dplct_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dplct_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `weights` must point to four readable `uint64_t`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_quintuple_new(
    weights: *const u64,
    degree: u64,
    out: *mut *mut DplctQuintuple,
) -> DplctStatus {
    guard(|| {
        let w = non_null(weights, "weights")?;
        non_null(out, "out")?;
        let w: [u64; 4] = std::slice::from_raw_parts(w, 4).try_into().expect("four weights");
        let q = Quintuple::new(w, degree)?;
        *out = Box::into_raw(Box::new(DplctQuintuple(q)));
        Ok(DplctStatus::Ok)
    })
}

/// # Safety
/// `q` must be null or a handle from [`dplct_quintuple_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dplct_quintuple_free(q: *mut DplctQuintuple) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Sorted weights and degree.
///
/// # Safety
/// `q` must be a live handle; `weights` must hold four `uint64_t`; `degree` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_quintuple_get(
    q: *const DplctQuintuple,
    weights: *mut u64,
    degree: *mut u64,
) -> DplctStatus {
    guard(|| {
        let q = &(*non_null(q, "q")?).0;
        non_null(weights, "weights")?;
        non_null(degree, "degree")?;
        std::slice::from_raw_parts_mut(weights, 4).copy_from_slice(&q.weights());
        *degree = q.degree();
        Ok(DplctStatus::Ok)
    })
}

/// `I = Σa_i − d`.
///
/// # Safety
/// `q` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_quintuple_fano_index(q: *const DplctQuintuple, out: *mut i64) -> DplctStatus {
    guard(|| {
        let q = &(*non_null(q, "q")?).0;
        non_null(out, "out")?;
        *out = q.fano_index();
        Ok(DplctStatus::Ok)
    })
}

/// `K²` as a reduced `"p/q"` string.
///
/// # Safety
/// `q` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_quintuple_k_squared(q: *const DplctQuintuple, out: *mut *mut c_char) -> DplctStatus {
    guard(|| {
        let q = &(*non_null(q, "q")?).0;
        non_null(out, "out")?;
        give_string(fmt_q(&k_squared(q)), out)
    })
}

/// Whether the quintuple falls in the main case of the trichotomy.
///
/// # Safety
/// `q` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_quintuple_is_main_case(q: *const DplctQuintuple, out: *mut bool) -> DplctStatus {
    guard(|| {
        let q = &(*non_null(q, "q")?).0;
        non_null(out, "out")?;
        *out = case_trichotomy(q) == Case::MainCase;
        Ok(DplctStatus::Ok)
    })
}

/// Loads the table at `path`; with a null `path`, `$DPLCT_DATASET` or the
/// bundled table.
///
/// # Safety
/// `path` must be null or NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_dataset_open(path: *const c_char, out: *mut *mut DplctDataset) -> DplctStatus {
    guard(|| {
        non_null(out, "out")?;
        let ds = Dataset::resolve(opt_str(path)?.map(Path::new))?;
        *out = Box::into_raw(Box::new(DplctDataset(ds)));
        Ok(DplctStatus::Ok)
    })
}

/// # Safety
/// `ds` must be null or a handle from [`dplct_dataset_open`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dplct_dataset_free(ds: *mut DplctDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Recomputes the table with series over `n_min..=n_max`. Returns
/// `Mismatch` when any row disagrees.
///
/// # Safety
/// `ds` must be a live handle; `rows` and `mismatched` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_dataset_verify(
    ds: *const DplctDataset,
    n_min: i64,
    n_max: i64,
    rows: *mut usize,
    mismatched: *mut usize,
) -> DplctStatus {
    guard(|| {
        let ds = &(*non_null(ds, "ds")?).0;
        non_null(rows, "rows")?;
        non_null(mismatched, "mismatched")?;
        if n_min < 1 || n_max < n_min {
            return Err(invalid("need 1 <= n_min <= n_max"));
        }
        let reports = verify_table(ds, n_min..=n_max)?;
        let bad = reports.iter().filter(|r| !r.mismatches.is_empty()).count();
        *rows = reports.len();
        *mismatched = bad;
        if bad > 0 {
            set_error(&format!("{bad} mismatches / {} rows", reports.len()));
        }
        Ok(if bad == 0 { DplctStatus::Ok } else { DplctStatus::Mismatch })
    })
}

/// Global lct of the table's surface `q`, one JSON object per branch:
/// `[{"cond":{…},"lct":"p/q","ke":…,"exceptionality":…,"witness":…}]`.
///
/// # Safety
/// `ds` and `q` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_dataset_lct(
    ds: *const DplctDataset,
    q: *const DplctQuintuple,
    out: *mut *mut c_char,
) -> DplctStatus {
    guard(|| {
        let ds = &(*non_null(ds, "ds")?).0;
        let q = &(*non_null(q, "q")?).0;
        non_null(out, "out")?;
        let inst = ds.find(q)?.ok_or_else(|| invalid(format!("no table row for {:?} of degree {}", q.weights(), q.degree())))?;
        let mut branches = Vec::new();
        for k in 0..inst.branches.len() {
            let model = inst.model(k)?;
            let s = analyze(&model)?;
            branches.push(json!({
                "cond": model.tags(),
                "lct": fmt_q(&s.value),
                "ke": ke_status(&s.value),
                "exceptionality": exceptionality(&s.value),
                "witness": format!("{} at {}", s.witness.divisor, s.witness.point),
            }));
        }
        give_string(serde_json::Value::Array(branches).to_string(), out)
    })
}

/// lct of `Σ coeffs[k]·u^exps[2k]·v^exps[2k+1]` at the origin, as `"p/q"`.
///
/// # Safety
/// `exps` must hold `2·len` readable `uint32_t`, `coeffs` `len` readable
/// `int64_t`; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_germ_lct(
    exps: *const u32,
    coeffs: *const i64,
    len: usize,
    max_iter: usize,
    out: *mut *mut c_char,
) -> DplctStatus {
    guard(|| {
        let e = std::slice::from_raw_parts(non_null(exps, "exps")?, 2 * len);
        let c = std::slice::from_raw_parts(non_null(coeffs, "coeffs")?, len);
        non_null(out, "out")?;
        let mut terms = std::collections::BTreeMap::new();
        for k in 0..len {
            *terms.entry((e[2 * k], e[2 * k + 1])).or_insert_with(|| Q::from_integer(0.into())) +=
                Q::from_integer(c[k].into());
        }
        terms.retain(|_, v: &mut Q| *v != Q::from_integer(0.into()));
        let g = PlaneGerm::new(terms, None)?;
        give_string(fmt_q(&lct_newton(&g, max_iter)?.value), out)
    })
}

/// Main-case quintuples of index `index` with `a3 <= max_a3`, as a JSON
/// array of `[a0,a1,a2,a3,d]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dplct_enumerate(index: i64, max_a3: u64, out: *mut *mut c_char) -> DplctStatus {
    guard(|| {
        non_null(out, "out")?;
        if index < 1 || max_a3 < 1 {
            return Err(invalid("need index >= 1 and max_a3 >= 1"));
        }
        let list: Vec<[u64; 5]> = enumerate_candidates(index, max_a3)
            .iter()
            .map(|q| {
                let w = q.weights();
                [w[0], w[1], w[2], w[3], q.degree()]
            })
            .collect();
        give_string(serde_json::to_string(&list).expect("integers serialize"), out)
    })
}
