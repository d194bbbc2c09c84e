//! C ABI for valuation-lab.
//!
//! Bodies are opaque `VlBody` handles created by [`vl_body_from_vertices`] and
//! released by [`vl_body_free`]. Every fallible function returns a
//! [`VlStatus`]; on failure, [`vl_last_error_message`] describes the error
//! for the calling thread. Symmetric tensors are written as their independent
//! coefficients, one per sorted multi-index in lexicographic order; see
//! [`vl_tensor_len`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use valuation_lab::harness::check_vector_cauchy;
use valuation_lab::quadrature::SphereSampler;
use valuation_lab::valuations;
use valuation_lab::{Error, PolytopeBody, SymTensor, VecN};

/// Opaque convex polytope.
pub struct VlBody {
    inner: PolytopeBody,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The points do not span the ambient space.
    Degenerate = 3,
    /// Dimension or tensor rank outside the supported range.
    Unsupported = 4,
    /// The output buffer has the wrong length.
    BufferSize = 5,
    Numerical = 6,
    /// A Rust panic was caught at the boundary.
    Internal = 7,
}

/// Summary of a quadrature check of the vector Cauchy formula.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VlCheckResult {
    pub pass: bool,
    pub max_abs_diff: f64,
    pub max_rel_diff: f64,
    pub max_std_error: f64,
    pub tolerance: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VlStatus {
    match e {
        Error::Degenerate { .. } => VlStatus::Degenerate,
        Error::UnsupportedDimension(_)
        | Error::RankOverflow { .. }
        | Error::UnsupportedField(_) => VlStatus::Unsupported,
        Error::FitResidual { .. } | Error::NonFiniteIntegrand(_) => VlStatus::Numerical,
        _ => VlStatus::InvalidArgument,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard<F>(f: F) -> VlStatus
where
    F: FnOnce() -> Result<(), (VlStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            VlStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".to_string());
            VlStatus::Internal
        }
    }
}

fn lib<T>(r: valuation_lab::Result<T>) -> Result<T, (VlStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (VlStatus, String) {
    (VlStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn body_ref<'a>(body: *const VlBody) -> Result<&'a PolytopeBody, (VlStatus, String)> {
    body.as_ref().map(|b| &b.inner).ok_or_else(null)
}

unsafe fn write_out(out: *mut f64, len: usize, values: &[f64]) -> Result<(), (VlStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    if len != values.len() {
        return Err((
            VlStatus::BufferSize,
            format!("output buffer holds {len} values, {} needed", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, len);
    Ok(())
}

unsafe fn write_tensor(out: *mut f64, len: usize, t: &SymTensor) -> Result<(), (VlStatus, String)> {
    write_out(out, len, t.coeffs())
}

unsafe fn read_vector(ptr: *const f64, len: usize) -> Result<VecN, (VlStatus, String)> {
    if ptr.is_null() {
        return Err(null());
    }
    lib(VecN::new(std::slice::from_raw_parts(ptr, len)))
}

/// Message of the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn vl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn vl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Volume `kappa_k` of the `k`-dimensional unit ball.
#[no_mangle]
pub extern "C" fn vl_kappa(k: usize) -> f64 {
    valuation_lab::kappa(k)
}

/// Number of independent coefficients of a symmetric `rank`-tensor on `R^dim`.
///
/// # Safety
/// `out` must be NULL or point to writable memory for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn vl_tensor_len(dim: usize, rank: usize, out: *mut usize) -> VlStatus {
    guard(|| {
        let t = lib(SymTensor::zeros(rank, dim))?;
        out.as_mut().map(|o| *o = t.coeffs().len()).ok_or_else(null)
    })
}

/// Convex hull of `count` points of dimension `dim`, stored row by row in `coords`.
///
/// # Safety
/// `coords` must point to `count * dim` doubles and `out` to writable storage
/// for one handle pointer. The handle must be released with [`vl_body_free`].
#[no_mangle]
pub unsafe extern "C" fn vl_body_from_vertices(
    coords: *const f64,
    count: usize,
    dim: usize,
    out: *mut *mut VlBody,
) -> VlStatus {
    guard(|| {
        if coords.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let total = count
            .checked_mul(dim)
            .ok_or((VlStatus::InvalidArgument, "size overflow".to_string()))?;
        let flat = std::slice::from_raw_parts(coords, total);
        let points = flat
            .chunks(dim.max(1))
            .map(VecN::new)
            .collect::<valuation_lab::Result<Vec<_>>>();
        let body = lib(points.and_then(|p| {
            if dim == 0 {
                Err(Error::UnsupportedDimension(0))
            } else {
                PolytopeBody::from_points(&p)
            }
        }))?;
        *out = Box::into_raw(Box::new(VlBody { inner: body }));
        Ok(())
    })
}

/// Releases a body. NULL is ignored.
///
/// # Safety
/// `body` must be NULL or a handle from [`vl_body_from_vertices`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vl_body_free(body: *mut VlBody) {
    if !body.is_null() {
        drop(Box::from_raw(body));
    }
}

/// # Safety
/// `body` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_body_dim(body: *const VlBody, out: *mut usize) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        out.as_mut().map(|o| *o = b.dim()).ok_or_else(null)
    })
}

/// Number of vertices of the hull.
///
/// # Safety
/// `body` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_body_vertex_count(body: *const VlBody, out: *mut usize) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        out.as_mut()
            .map(|o| *o = b.vertices().len())
            .ok_or_else(null)
    })
}

/// Hull vertices row by row; `len` must equal `vertex_count * dim`.
///
/// # Safety
/// `body` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn vl_body_vertices(
    body: *const VlBody,
    out: *mut f64,
    len: usize,
) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        let flat: Vec<f64> = b.vertices().iter().flat_map(|v| v.to_vec()).collect();
        write_out(out, len, &flat)
    })
}

/// # Safety
/// `body` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_body_volume(body: *const VlBody, out: *mut f64) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        out.as_mut().map(|o| *o = b.volume()).ok_or_else(null)
    })
}

/// # Safety
/// `body` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_body_surface_area(body: *const VlBody, out: *mut f64) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        out.as_mut().map(|o| *o = b.surface_area()).ok_or_else(null)
    })
}

/// Moment vector `∫_K x dx`; `len` must equal the dimension.
///
/// # Safety
/// `body` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn vl_body_moment(
    body: *const VlBody,
    out: *mut f64,
    len: usize,
) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        write_out(out, len, b.moment().as_slice())
    })
}

/// Boundary moment vector `q_1`; `len` must equal the dimension.
///
/// # Safety
/// `body` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn vl_q1(body: *const VlBody, out: *mut f64, len: usize) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        write_out(out, len, valuations::q1(b).as_slice())
    })
}

/// `Upsilon_rank`, packed; `len` must equal `vl_tensor_len(dim, rank)`.
///
/// # Safety
/// `body` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn vl_upsilon(
    body: *const VlBody,
    rank: usize,
    out: *mut f64,
    len: usize,
) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        write_tensor(out, len, &lib(valuations::upsilon(b, rank))?)
    })
}

/// `Xi_rank`, packed; `len` must equal `vl_tensor_len(dim, rank)`.
///
/// # Safety
/// `body` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn vl_xi(
    body: *const VlBody,
    rank: usize,
    out: *mut f64,
    len: usize,
) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        write_tensor(out, len, &lib(valuations::xi(b, rank))?)
    })
}

/// Volume tensor `Psi_rank` for `rank <= 2`, packed.
///
/// # Safety
/// `body` must be a live handle and `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn vl_psi(
    body: *const VlBody,
    rank: usize,
    out: *mut f64,
    len: usize,
) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        write_tensor(out, len, &lib(valuations::psi(b, rank))?)
    })
}

/// Volume of the orthogonal projection onto `u^perp` for a unit vector `u`.
///
/// # Safety
/// `body` must be a live handle, `u` must point to `u_len` doubles and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn vl_projected_volume(
    body: *const VlBody,
    u: *const f64,
    u_len: usize,
    out: *mut f64,
) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        let u = read_vector(u, u_len)?;
        let v = lib(valuations::projected_volume(b, &u))?;
        out.as_mut().map(|o| *o = v).ok_or_else(null)
    })
}

/// Monte Carlo check (`samples` antithetic directions, `seed`) of the vector
/// Cauchy formula relating mean shadow moments to `q_1` and `Upsilon_1`.
///
/// # Safety
/// `body` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vl_check_vector_cauchy(
    body: *const VlBody,
    samples: usize,
    seed: u64,
    out: *mut VlCheckResult,
) -> VlStatus {
    guard(|| {
        let b = body_ref(body)?;
        let out = out.as_mut().ok_or_else(null)?;
        let sampler = lib(SphereSampler::monte_carlo(b.dim(), samples, seed))?;
        let r = lib(check_vector_cauchy(b, &sampler))?;
        *out = VlCheckResult {
            pass: r.pass,
            max_abs_diff: r.max_abs_diff(),
            max_rel_diff: r.rel_diff.max_abs(),
            max_std_error: r.lhs_std_error.max_abs(),
            tolerance: r.tolerance_used,
        };
        Ok(())
    })
}
