//! C ABI over the spectralab workbench.
//!
//! Handles are opaque pointers; every fallible call returns a status code
//! and the last error message is kept per thread, retrievable with
//! `spectralab_last_error`. Strings cross the boundary as UTF-8 C strings.

use spectralab::cli::{build_builtin, build_density};
use spectralab::curve::json::{parse_divisor, CurveSpec, DivisorEntrySpec};
use spectralab::curve::HyperellipticCurve;
use spectralab::ledger;
use spectralab::mesh::{ConformalDensity, Mesh};
use spectralab::spectral::{
    assemble, eigen_solve_seeded, index_of_map_with_density, yang_yau_check, SpectrumResult,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes mirroring the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SpectralabStatus {
    Ok = 0,
    AssertionFailed = 1,
    InvalidInput = 2,
    SolverFailure = 3,
    NullPointer = 4,
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn guard<R>(f: impl FnOnce() -> Result<R, (SpectralabStatus, String)>) -> Result<R, SpectralabStatus> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => Ok(v),
        Ok(Err((status, msg))) => {
            set_error(&msg);
            Err(status)
        }
        Err(_) => {
            set_error("internal panic");
            Err(SpectralabStatus::Panic)
        }
    }
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, (SpectralabStatus, String)> {
    if ptr.is_null() {
        return Err((SpectralabStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| (SpectralabStatus::InvalidInput, "string is not UTF-8".into()))
}

/// Opaque curve handle.
pub struct SpectralabCurve {
    inner: HyperellipticCurve,
}

/// Opaque mesh handle bundling the mesh with its conformal density.
pub struct SpectralabMesh {
    mesh: Mesh,
    density: ConformalDensity,
}

/// Opaque spectrum handle.
pub struct SpectralabSpectrum {
    inner: SpectrumResult,
}

/// Crate version as a static C string.
#[no_mangle]
pub extern "C" fn spectralab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the last error message into `buf` (truncated to `len` - 1 bytes);
/// returns the untruncated length.
///
/// # Safety
/// `buf` must point to at least `len` writable bytes, or be null.
#[no_mangle]
pub unsafe extern "C" fn spectralab_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len() - 1
    })
}

/// Parses a curve from its JSON spec; null on failure.
///
/// # Safety
/// `json` must be a valid NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn spectralab_curve_from_json(json: *const c_char) -> *mut SpectralabCurve {
    let result = guard(|| {
        let text = cstr(json)?;
        let spec: CurveSpec = serde_json_parse(text)?;
        let curve = spec
            .build()
            .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
        Ok(Box::into_raw(Box::new(SpectralabCurve { inner: curve })))
    });
    result.unwrap_or(std::ptr::null_mut())
}

fn serde_json_parse<T: serde::de::DeserializeOwned>(
    text: &str,
) -> Result<T, (SpectralabStatus, String)> {
    serde_json::from_str(text).map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))
}

/// # Safety
/// `curve` must come from `spectralab_curve_from_json` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn spectralab_curve_genus(curve: *const SpectralabCurve) -> i64 {
    if curve.is_null() {
        set_error("null curve");
        return -1;
    }
    (*curve).inner.genus()
}

/// Riemann-Roch report for a divisor JSON: fills lhs, rhs and ok.
///
/// # Safety
/// Pointers must be valid; `divisor_json` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn spectralab_riemann_roch(
    curve: *const SpectralabCurve,
    divisor_json: *const c_char,
    lhs: *mut i64,
    rhs: *mut i64,
    ok: *mut bool,
) -> SpectralabStatus {
    let result = guard(|| {
        if curve.is_null() {
            return Err((SpectralabStatus::NullPointer, "null curve".into()));
        }
        let text = cstr(divisor_json)?;
        let entries: Vec<DivisorEntrySpec> = serde_json_parse(text)?;
        let c = &(*curve).inner;
        let d = parse_divisor(&entries, c)
            .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
        let report = c
            .riemann_roch_check(&d)
            .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
        if !lhs.is_null() {
            *lhs = report.lhs;
        }
        if !rhs.is_null() {
            *rhs = report.rhs;
        }
        if !ok.is_null() {
            *ok = report.ok;
        }
        Ok(if report.ok { SpectralabStatus::Ok } else { SpectralabStatus::AssertionFailed })
    });
    result.unwrap_or_else(|status| status)
}

/// h^0 of a divisor given as JSON entries.
///
/// # Safety
/// Pointers must be valid; `divisor_json` NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn spectralab_h0(
    curve: *const SpectralabCurve,
    divisor_json: *const c_char,
    out: *mut i64,
) -> SpectralabStatus {
    let result = guard(|| {
        if curve.is_null() || out.is_null() {
            return Err((SpectralabStatus::NullPointer, "null argument".into()));
        }
        let text = cstr(divisor_json)?;
        let entries: Vec<DivisorEntrySpec> = serde_json_parse(text)?;
        let c = &(*curve).inner;
        let d = parse_divisor(&entries, c)
            .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
        let h = c
            .h0(&d)
            .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
        *out = h;
        Ok(SpectralabStatus::Ok)
    });
    result.unwrap_or_else(|status| status)
}

/// # Safety
/// `curve` must come from this library; double frees are undefined.
#[no_mangle]
pub unsafe extern "C" fn spectralab_curve_free(curve: *mut SpectralabCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Builds a named mesh ("sphere:5", "torus:64:0:1", "cover-octahedral:4",
/// "cover-cube:4", "power:5:2", ...) with the density spec ("auto",
/// "uniform", "pullback", "random:SEED:AMP"); null on failure.
///
/// # Safety
/// `spec` must be NUL-terminated UTF-8; `density` may be null for "auto".
#[no_mangle]
pub unsafe extern "C" fn spectralab_mesh_builtin(
    spec: *const c_char,
    density: *const c_char,
) -> *mut SpectralabMesh {
    let result = guard(|| {
        let spec = cstr(spec)?;
        let density_spec = if density.is_null() { "auto" } else { cstr(density)? };
        let (mesh, built_in_density) =
            build_builtin(spec).map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
        let density = match (built_in_density, density_spec) {
            (Some(d), "auto") => d,
            (_, other) => build_density(&mesh, other)
                .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?,
        };
        Ok(Box::into_raw(Box::new(SpectralabMesh { mesh, density })))
    });
    result.unwrap_or(std::ptr::null_mut())
}

/// # Safety
/// `mesh` must come from `spectralab_mesh_builtin` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn spectralab_mesh_euler_characteristic(mesh: *const SpectralabMesh) -> i64 {
    if mesh.is_null() {
        set_error("null mesh");
        return i64::MIN;
    }
    (*mesh).mesh.euler_characteristic()
}

/// # Safety
/// `mesh` must come from `spectralab_mesh_builtin` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn spectralab_mesh_vertex_count(mesh: *const SpectralabMesh) -> usize {
    if mesh.is_null() {
        set_error("null mesh");
        return 0;
    }
    (*mesh).mesh.num_vertices()
}

/// Solves for the k+1 smallest eigenvalues; null on failure.
///
/// # Safety
/// `mesh` must come from `spectralab_mesh_builtin` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn spectralab_spectrum_compute(
    mesh: *const SpectralabMesh,
    k: usize,
    tol: f64,
) -> *mut SpectralabSpectrum {
    let result = guard(|| {
        if mesh.is_null() {
            return Err((SpectralabStatus::NullPointer, "null mesh".into()));
        }
        let handle = &*mesh;
        let (k_mat, m_mat) = assemble(&handle.mesh, &handle.density)
            .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
        let spectrum = eigen_solve_seeded(&k_mat, &m_mat, k.max(1), tol, 0x5eed)
            .map_err(|e| (SpectralabStatus::SolverFailure, e.to_string()))?;
        Ok(Box::into_raw(Box::new(SpectralabSpectrum { inner: spectrum })))
    });
    result.unwrap_or(std::ptr::null_mut())
}

/// # Safety
/// `spectrum` must come from `spectralab_spectrum_compute`.
#[no_mangle]
pub unsafe extern "C" fn spectralab_spectrum_len(spectrum: *const SpectralabSpectrum) -> usize {
    if spectrum.is_null() {
        return 0;
    }
    (*spectrum).inner.eigenvalues.len()
}

/// # Safety
/// `spectrum` must come from `spectralab_spectrum_compute`.
#[no_mangle]
pub unsafe extern "C" fn spectralab_spectrum_eigenvalue(
    spectrum: *const SpectralabSpectrum,
    i: usize,
) -> f64 {
    if spectrum.is_null() {
        set_error("null spectrum");
        return f64::NAN;
    }
    let inner = &(*spectrum).inner;
    if i >= inner.eigenvalues.len() {
        set_error("eigenvalue index out of range");
        return f64::NAN;
    }
    inner.eigenvalues[i]
}

/// Normalized eigenvalue (eigenvalue times total area).
///
/// # Safety
/// `spectrum` must come from `spectralab_spectrum_compute`.
#[no_mangle]
pub unsafe extern "C" fn spectralab_spectrum_normalized(
    spectrum: *const SpectralabSpectrum,
    i: usize,
) -> f64 {
    if spectrum.is_null() {
        set_error("null spectrum");
        return f64::NAN;
    }
    let inner = &(*spectrum).inner;
    if i >= inner.normalized.len() {
        set_error("eigenvalue index out of range");
        return f64::NAN;
    }
    inner.normalized[i]
}

/// # Safety
/// `spectrum` must come from `spectralab_spectrum_compute`.
#[no_mangle]
pub unsafe extern "C" fn spectralab_spectrum_area(spectrum: *const SpectralabSpectrum) -> f64 {
    if spectrum.is_null() {
        return f64::NAN;
    }
    (*spectrum).inner.area
}

/// # Safety
/// `spectrum` must come from this library; double frees are undefined.
#[no_mangle]
pub unsafe extern "C" fn spectralab_spectrum_free(spectrum: *mut SpectralabSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// # Safety
/// `mesh` must come from this library; double frees are undefined.
#[no_mangle]
pub unsafe extern "C" fn spectralab_mesh_free(mesh: *mut SpectralabMesh) {
    if !mesh.is_null() {
        drop(Box::from_raw(mesh));
    }
}

/// Genus bound check on the first normalized eigenvalue: fills the bound and
/// margin; OK when the margin is above -tolerance.
///
/// # Safety
/// `bound` and `margin` must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn spectralab_yang_yau(
    genus: i64,
    lambda1_bar: f64,
    tolerance: f64,
    bound: *mut f64,
    margin: *mut f64,
) -> SpectralabStatus {
    if genus < 0 {
        set_error("genus must be nonnegative");
        return SpectralabStatus::InvalidInput;
    }
    let report = yang_yau_check(genus, lambda1_bar, tolerance);
    if !bound.is_null() {
        *bound = report.bound;
    }
    if !margin.is_null() {
        *margin = report.margin;
    }
    if report.pass {
        SpectralabStatus::Ok
    } else {
        SpectralabStatus::AssertionFailed
    }
}

/// Index and nullity of the recorded sphere-valued map around eigenvalue 2.
///
/// # Safety
/// `mesh` must come from `spectralab_mesh_builtin` and not be freed.
#[no_mangle]
pub unsafe extern "C" fn spectralab_index_of_map(
    mesh: *const SpectralabMesh,
    band: f64,
    index: *mut i64,
    nullity: *mut i64,
) -> SpectralabStatus {
    let result = guard(|| {
        if mesh.is_null() {
            return Err((SpectralabStatus::NullPointer, "null mesh".into()));
        }
        let handle = &*mesh;
        let r = index_of_map_with_density(&handle.mesh, &handle.density, band)
            .map_err(|e| (SpectralabStatus::SolverFailure, e.to_string()))?;
        if !index.is_null() {
            *index = r.index;
        }
        if !nullity.is_null() {
            *nullity = r.nullity;
        }
        Ok(SpectralabStatus::Ok)
    });
    result.unwrap_or_else(|status| status)
}

/// Audits harmonic-map records given as a JSON array; sets `all_pass`.
///
/// # Safety
/// `records_json` must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn spectralab_ledger_audit_json(
    records_json: *const c_char,
    all_pass: *mut bool,
) -> SpectralabStatus {
    let result = guard(|| {
        let text = cstr(records_json)?;
        let records: Vec<ledger::HarmonicMapRecord> = serde_json_parse(text)?;
        let mut pass = true;
        for rec in &records {
            let reports = ledger::audit_record(rec)
                .map_err(|e| (SpectralabStatus::InvalidInput, e.to_string()))?;
            pass &= reports.iter().all(|r| r.pass);
        }
        if !all_pass.is_null() {
            *all_pass = pass;
        }
        Ok(if pass { SpectralabStatus::Ok } else { SpectralabStatus::AssertionFailed })
    });
    result.unwrap_or_else(|status| status)
}
