//! C ABI over `dba_lab`.
//!
//! Every entry point returns a [`DbaStatus`] and writes its result through an
//! out-pointer. Algebras are opaque handles holding a verified dBa; free them
//! with [`dba_algebra_free`]. On failure, [`dba_last_error_message`] returns a
//! description that stays valid until the next call on the same thread.
//! Panics never cross the boundary; they surface as `DBA_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dba_lab::boolean::FiniteBooleanAlgebra;
use dba_lab::congruence::{all_congruences, simple_by_criterion};
use dba_lab::construct::glued_sum;
use dba_lab::enumerate::{enumerate_verified, EnumerateOptions};
use dba_lab::format::{parse_algebra, LabeledDba};
use dba_lab::iso::is_isomorphic;
use dba_lab::report::AlgebraReport;
use dba_lab::skeleton::{classify_type, is_pure, is_regular, is_trivial, Skeleton, TypeTag};
use dba_lab::{DbaError, FiniteDba, VerifiedDba};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DbaStatus {
    Ok = 0,
    NullArgument = 1,
    /// Malformed JSON, bad table shape or an out-of-range table cell.
    InvalidInput = 2,
    /// Well-formed tables that violate a defining identity.
    NotADba = 3,
    /// An element id or list index outside its range.
    OutOfRange = 4,
    UnknownName = 5,
    CapExceeded = 6,
    /// The operation's precondition does not hold for this input.
    Contract = 7,
    Internal = 8,
    Panic = 9,
}

/// Operations accepted by [`dba_algebra_eval`]. Unary operations ignore `y`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DbaOp {
    Meet = 0,
    Join = 1,
    Neg = 2,
    Opp = 3,
    Vee = 4,
    Wedge = 5,
    Plus = 6,
    Dot = 7,
}

pub const DBA_TYPE_I: u32 = 1;
pub const DBA_TYPE_II: u32 = 2;
pub const DBA_TYPE_III: u32 = 4;
pub const DBA_TYPE_IV: u32 = 8;
pub const DBA_TYPE_V: u32 = 16;

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DbaClassification {
    pub is_pure: bool,
    pub is_trivial: bool,
    pub is_regular: bool,
    /// Bitwise OR of the `DBA_TYPE_*` flags.
    pub types: u32,
    pub meet_part_size: usize,
    pub join_part_size: usize,
    pub pure_part_size: usize,
}

/// A verified algebra with optional element labels.
pub struct DbaAlgebra {
    algebra: VerifiedDba,
    labels: Option<Vec<String>>,
}

pub struct DbaAlgebraList {
    items: Vec<DbaAlgebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(DbaStatus, String);

impl From<DbaError> for Failure {
    fn from(e: DbaError) -> Failure {
        let status = match &e {
            DbaError::EmptyCarrier
            | DbaError::Shape { .. }
            | DbaError::Closure { .. }
            | DbaError::Parse(_)
            | DbaError::Io(_) => DbaStatus::InvalidInput,
            DbaError::NotADba { .. } => DbaStatus::NotADba,
            DbaError::NotBoolean { .. } | DbaError::Classification(_) | DbaError::Contract(_) => {
                DbaStatus::Contract
            }
            DbaError::EnumerationCap { .. } => DbaStatus::CapExceeded,
            DbaError::UnknownCatalogName(_) => DbaStatus::UnknownName,
            DbaError::Internal(_) => DbaStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DbaStatus::NullArgument, format!("`{what}` is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DbaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DbaStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            DbaStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    // SAFETY: the caller passes either null or a live pointer from this library.
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    // SAFETY: as for `borrow`.
    unsafe { p.as_mut() }.ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and NUL-terminated by contract.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure(DbaStatus::InvalidInput, format!("`{what}` is not UTF-8")))
}

fn handle(algebra: VerifiedDba, labels: Option<Vec<String>>) -> *mut DbaAlgebra {
    Box::into_raw(Box::new(DbaAlgebra { algebra, labels }))
}

fn check_element(a: &FiniteDba, x: usize) -> Result<(), Failure> {
    if x < a.size() {
        Ok(())
    } else {
        Err(Failure(
            DbaStatus::OutOfRange,
            format!("element {x} outside a carrier of size {}", a.size()),
        ))
    }
}

/// Parses and verifies an algebra in the JSON interchange format.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_from_json(
    json: *const c_char,
    out_algebra: *mut *mut DbaAlgebra,
) -> DbaStatus {
    guard(|| {
        let slot = unsafe { out(out_algebra, "out_algebra")? };
        *slot = ptr::null_mut();
        let LabeledDba { algebra, labels } = parse_algebra(unsafe { text(json, "json")? })?;
        *slot = handle(algebra.verify()?, labels);
        Ok(())
    })
}

/// Builds and verifies an algebra from row-major tables. `meet` and `join`
/// hold `size * size` entries, `neg` and `opp` hold `size`.
///
/// # Safety
/// Each table pointer must reference at least the stated number of entries.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_from_tables(
    size: usize,
    bot: usize,
    top: usize,
    meet: *const usize,
    join: *const usize,
    neg: *const usize,
    opp: *const usize,
    out_algebra: *mut *mut DbaAlgebra,
) -> DbaStatus {
    guard(|| {
        let slot = unsafe { out(out_algebra, "out_algebra")? };
        *slot = ptr::null_mut();
        let table = |p: *const usize, len: usize, what: &str| -> Result<Vec<Vec<usize>>, Failure> {
            if p.is_null() {
                return Err(null(what));
            }
            // SAFETY: caller guarantees `len` readable entries.
            let flat = unsafe { std::slice::from_raw_parts(p, len) };
            Ok(flat.chunks(size.max(1)).map(<[usize]>::to_vec).collect())
        };
        let n2 = size
            .checked_mul(size)
            .ok_or_else(|| Failure(DbaStatus::InvalidInput, "size overflows".into()))?;
        let meet = table(meet, n2, "meet")?;
        let join = table(join, n2, "join")?;
        let neg = table(neg, size, "neg")?.concat();
        let opp = table(opp, size, "opp")?.concat();
        let a = FiniteDba::from_tables(size, bot, top, &meet, &join, &neg, &opp)?;
        *slot = handle(a.verify()?, None);
        Ok(())
    })
}

/// Looks up a bundled algebra by alias or name, e.g. `"D4"` or `"D_3,I"`.
///
/// # Safety
/// `name` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_catalog_get(
    name: *const c_char,
    out_algebra: *mut *mut DbaAlgebra,
) -> DbaStatus {
    guard(|| {
        let slot = unsafe { out(out_algebra, "out_algebra")? };
        *slot = ptr::null_mut();
        let entries = dba_lab::catalog::catalog();
        let e = dba_lab::catalog::find(&entries, unsafe { text(name, "name")? })?;
        *slot = handle(e.algebra.clone(), Some(e.labels.clone()));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `algebra` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_free(algebra: *mut DbaAlgebra) {
    if !algebra.is_null() {
        // SAFETY: created by `Box::into_raw` in `handle`.
        drop(unsafe { Box::from_raw(algebra) });
    }
}

/// Carrier size, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_size(algebra: *const DbaAlgebra) -> usize {
    unsafe { algebra.as_ref() }.map_or(0, |a| a.algebra.size())
}

/// # Safety
/// `algebra` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_bounds(
    algebra: *const DbaAlgebra,
    out_bot: *mut usize,
    out_top: *mut usize,
) -> DbaStatus {
    guard(|| {
        let a = unsafe { borrow(algebra, "algebra")? };
        *unsafe { out(out_bot, "out_bot")? } = a.algebra.bot();
        *unsafe { out(out_top, "out_top")? } = a.algebra.top();
        Ok(())
    })
}

/// # Safety
/// `algebra` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_eval(
    algebra: *const DbaAlgebra,
    op: DbaOp,
    x: usize,
    y: usize,
    out_value: *mut usize,
) -> DbaStatus {
    guard(|| {
        let a: &FiniteDba = &unsafe { borrow(algebra, "algebra")? }.algebra;
        let slot = unsafe { out(out_value, "out_value")? };
        check_element(a, x)?;
        let binary = !matches!(op, DbaOp::Neg | DbaOp::Opp);
        if binary {
            check_element(a, y)?;
        }
        *slot = match op {
            DbaOp::Meet => a.meet(x, y),
            DbaOp::Join => a.join(x, y),
            DbaOp::Neg => a.neg(x),
            DbaOp::Opp => a.opp(x),
            DbaOp::Vee => a.vee(x, y),
            DbaOp::Wedge => a.wedge(x, y),
            DbaOp::Plus => a.plus(x, y),
            DbaOp::Dot => a.dot(x, y),
        };
        Ok(())
    })
}

/// Checks JSON tables against the defining identities without building a
/// handle. Returns `DBA_STATUS_OK` with `*out_is_dba = false` for tables that
/// parse but violate an identity.
///
/// # Safety
/// `json` must be NUL-terminated; `out_is_dba` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_is_dba_json(json: *const c_char, out_is_dba: *mut bool) -> DbaStatus {
    guard(|| {
        let slot = unsafe { out(out_is_dba, "out_is_dba")? };
        let parsed = parse_algebra(unsafe { text(json, "json")? })?;
        *slot = parsed.algebra.is_dba();
        Ok(())
    })
}

/// # Safety
/// `algebra` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_classify(
    algebra: *const DbaAlgebra,
    out_class: *mut DbaClassification,
) -> DbaStatus {
    guard(|| {
        let a = &unsafe { borrow(algebra, "algebra")? }.algebra;
        let slot = unsafe { out(out_class, "out_class")? };
        let s = Skeleton::new(a);
        let flag = |tag| match tag {
            TypeTag::I => DBA_TYPE_I,
            TypeTag::II => DBA_TYPE_II,
            TypeTag::III => DBA_TYPE_III,
            TypeTag::IV => DBA_TYPE_IV,
            TypeTag::V => DBA_TYPE_V,
        };
        *slot = DbaClassification {
            is_pure: is_pure(a),
            is_trivial: is_trivial(a),
            is_regular: is_regular(a),
            types: classify_type(&s)
                .tags
                .iter()
                .map(|&t| flag(t))
                .fold(0, |m, f| m | f),
            meet_part_size: s.meet_part().len(),
            join_part_size: s.join_part().len(),
            pure_part_size: s.pure_part().len(),
        };
        Ok(())
    })
}

/// Number of congruences.
///
/// # Safety
/// `algebra` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_congruence_count(
    algebra: *const DbaAlgebra,
    out_count: *mut usize,
) -> DbaStatus {
    guard(|| {
        let a = &unsafe { borrow(algebra, "algebra")? }.algebra;
        *unsafe { out(out_count, "out_count")? } = all_congruences(a).len();
        Ok(())
    })
}

/// Simplicity, decided by the structural criterion (no congruence search).
///
/// # Safety
/// `algebra` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_is_simple(
    algebra: *const DbaAlgebra,
    out_simple: *mut bool,
) -> DbaStatus {
    guard(|| {
        let a = &unsafe { borrow(algebra, "algebra")? }.algebra;
        *unsafe { out(out_simple, "out_simple")? } = simple_by_criterion(a)?;
        Ok(())
    })
}

/// Subdirect irreducibility, from the congruence lattice.
///
/// # Safety
/// `algebra` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_is_si(
    algebra: *const DbaAlgebra,
    out_si: *mut bool,
) -> DbaStatus {
    guard(|| {
        let a = &unsafe { borrow(algebra, "algebra")? }.algebra;
        *unsafe { out(out_si, "out_si")? } = all_congruences(a).is_subdirectly_irreducible();
        Ok(())
    })
}

/// Glued sum of two Boolean algebras, each given as a dBa handle whose `¬`
/// and `⌟` coincide. Fails with `DBA_STATUS_CONTRACT` otherwise.
///
/// # Safety
/// `p` and `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_glued_sum(
    p: *const DbaAlgebra,
    q: *const DbaAlgebra,
    out_algebra: *mut *mut DbaAlgebra,
) -> DbaStatus {
    guard(|| {
        let slot = unsafe { out(out_algebra, "out_algebra")? };
        *slot = ptr::null_mut();
        let p = FiniteBooleanAlgebra::from_dba(&unsafe { borrow(p, "p")? }.algebra)?;
        let q = FiniteBooleanAlgebra::from_dba(&unsafe { borrow(q, "q")? }.algebra)?;
        *slot = handle(glued_sum(&p, &q)?, None);
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_is_isomorphic(
    a: *const DbaAlgebra,
    b: *const DbaAlgebra,
    out_iso: *mut bool,
) -> DbaStatus {
    guard(|| {
        let a = &unsafe { borrow(a, "a")? }.algebra;
        let b = &unsafe { borrow(b, "b")? }.algebra;
        *unsafe { out(out_iso, "out_iso")? } = is_isomorphic(a, b).is_some();
        Ok(())
    })
}

/// All algebras of size `n` up to isomorphism. Sizes above the certified
/// cap need `allow_uncertified`.
///
/// # Safety
/// `out_list` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_enumerate(
    n: usize,
    allow_uncertified: bool,
    out_list: *mut *mut DbaAlgebraList,
) -> DbaStatus {
    guard(|| {
        let slot = unsafe { out(out_list, "out_list")? };
        *slot = ptr::null_mut();
        let opts = EnumerateOptions {
            allow_uncertified,
            workers: None,
        };
        let items = enumerate_verified(n, opts)?
            .into_iter()
            .map(|algebra| DbaAlgebra {
                algebra,
                labels: None,
            })
            .collect();
        *slot = Box::into_raw(Box::new(DbaAlgebraList { items }));
        Ok(())
    })
}

/// Number of algebras in a list, or 0 for null.
///
/// # Safety
/// `list` must be null or a live list.
#[no_mangle]
pub unsafe extern "C" fn dba_list_len(list: *const DbaAlgebraList) -> usize {
    unsafe { list.as_ref() }.map_or(0, |l| l.items.len())
}

/// A borrowed handle into the list, valid until the list is freed. Do not
/// pass it to [`dba_algebra_free`]. Returns null when out of range.
///
/// # Safety
/// `list` must be null or a live list.
#[no_mangle]
pub unsafe extern "C" fn dba_list_get(
    list: *const DbaAlgebraList,
    index: usize,
) -> *const DbaAlgebra {
    unsafe { list.as_ref() }
        .and_then(|l| l.items.get(index))
        .map_or(ptr::null(), |a| a as *const DbaAlgebra)
}

/// # Safety
/// `list` must come from [`dba_enumerate`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dba_list_free(list: *mut DbaAlgebraList) {
    if !list.is_null() {
        // SAFETY: created by `Box::into_raw` in `dba_enumerate`.
        drop(unsafe { Box::from_raw(list) });
    }
}

/// Full report (axioms, structure, congruences) as JSON. Free the string with
/// [`dba_string_free`].
///
/// # Safety
/// `algebra` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dba_algebra_report_json(
    algebra: *const DbaAlgebra,
    out_json: *mut *mut c_char,
) -> DbaStatus {
    guard(|| {
        let slot = unsafe { out(out_json, "out_json")? };
        *slot = ptr::null_mut();
        let a = unsafe { borrow(algebra, "algebra")? };
        let labeled = LabeledDba {
            algebra: a.algebra.as_dba().clone(),
            labels: a.labels.clone(),
        };
        let report = AlgebraReport::build("algebra", &labeled, 16)?;
        let json = serde_json::to_string(&report)
            .map_err(|e| Failure(DbaStatus::Internal, e.to_string()))?;
        *slot = CString::new(json)
            .map_err(|e| Failure(DbaStatus::Internal, e.to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn dba_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: created by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn dba_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
