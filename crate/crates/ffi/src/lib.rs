//! C interface. Every entry point returns an [`AbsStatus`]; on failure the
//! message is available from [`abs_last_error`] on the same thread.
//! Handles are opaque and must be released with their `_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abshield::cli::{execute, CliError, Command, Format, RunConfig, VERSION};
use abshield::london::{
    flux_within, quantized_flux, solve_london_approx, solve_london_exact, FieldProfile, Geometry, LondonParams,
    SourceConfig,
};
use abshield::specfun::Order;
use abshield::spectrum::{ab_shift_sweep, annulus_eigenvalues, Annulus, SpectrumTable};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Solver = 4,
    VerifyFailed = 5,
    Io = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

type Fallible<T> = Result<T, (AbsStatus, String)>;

fn lib_err(status: AbsStatus) -> impl Fn(abshield::Error) -> (AbsStatus, String) {
    move |e| (status, e.to_string())
}

fn cli_err(e: CliError) -> (AbsStatus, String) {
    let status = match e {
        CliError::Config { .. } => AbsStatus::Config,
        CliError::Solver { .. } => AbsStatus::Solver,
        CliError::Io { .. } => AbsStatus::Io,
        CliError::VerifyFailed { .. } => AbsStatus::VerifyFailed,
    };
    (status, e.to_string())
}

fn guard(f: impl FnOnce() -> Fallible<()>) -> AbsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            AbsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AbsStatus::Panic
        }
    }
}

fn non_null<'a, T>(p: *const T, what: &str) -> Fallible<&'a T> {
    // SAFETY: caller promises `p` is either null or valid for reads.
    unsafe { p.as_ref() }.ok_or((AbsStatus::NullPointer, format!("{what} is null")))
}

fn out_slot<'a, T>(p: *mut T, what: &str) -> Fallible<&'a mut T> {
    // SAFETY: caller promises `p` is either null or valid for writes.
    unsafe { p.as_mut() }.ok_or((AbsStatus::NullPointer, format!("{what} is null")))
}

fn c_str<'a>(p: *const c_char, what: &str) -> Fallible<&'a str> {
    if p.is_null() {
        return Err((AbsStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: non-null and NUL-terminated per the caller contract.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| (AbsStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn abs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn abs_version() -> *const c_char {
    static V: std::sync::OnceLock<CString> = std::sync::OnceLock::new();
    V.get_or_init(|| CString::new(VERSION).expect("no NUL in version")).as_ptr()
}

/// Radii of the region boundaries and the electron sheet.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AbsGeometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub r_e: f64,
}

/// Fields at one radius. `region` is 0..4 for core, gap, shell, outer,
/// exterior.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct AbsFieldSample {
    pub a: f64,
    pub b_z: f64,
    pub j_phi: f64,
    pub region: u32,
}

/// First `n` Dirichlet levels of order `nu` on `[d, e]`, written to `out`.
#[no_mangle]
pub unsafe extern "C" fn abs_annulus_levels(d: f64, e: f64, nu: f64, n: usize, out: *mut f64) -> AbsStatus {
    guard(|| {
        if out.is_null() {
            return Err((AbsStatus::NullPointer, "out is null".into()));
        }
        let ann = Annulus::new(d, e).map_err(lib_err(AbsStatus::InvalidArgument))?;
        let order = Order::new(nu).map_err(lib_err(AbsStatus::InvalidArgument))?;
        let modes = annulus_eigenvalues(ann, order, n).map_err(lib_err(AbsStatus::Solver))?;
        // SAFETY: caller provides room for `n` doubles.
        let dst = unsafe { std::slice::from_raw_parts_mut(out, n) };
        for (slot, m) in dst.iter_mut().zip(&modes) {
            *slot = m.energy;
        }
        Ok(())
    })
}

/// Opaque spectrum sweep.
pub struct AbsSweep(SpectrumTable);

#[no_mangle]
pub unsafe extern "C" fn abs_sweep_new(
    d: f64,
    e: f64,
    flux: *const f64,
    n_flux: usize,
    l_min: i64,
    l_max: i64,
    n_max: usize,
    out: *mut *mut AbsSweep,
) -> AbsStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        if flux.is_null() || n_flux == 0 {
            return Err((AbsStatus::InvalidArgument, "flux grid is empty".into()));
        }
        // SAFETY: caller provides `n_flux` readable doubles.
        let grid = unsafe { std::slice::from_raw_parts(flux, n_flux) };
        let ann = Annulus::new(d, e).map_err(lib_err(AbsStatus::InvalidArgument))?;
        let table = ab_shift_sweep(ann, grid, l_min..=l_max, n_max).map_err(lib_err(AbsStatus::Solver))?;
        *slot = Box::into_raw(Box::new(AbsSweep(table)));
        Ok(())
    })
}

/// Ground-state shift at grid index `i`.
#[no_mangle]
pub unsafe extern "C" fn abs_sweep_ground_shift(sweep: *const AbsSweep, i: usize, out: *mut f64) -> AbsStatus {
    guard(|| {
        let s = &non_null(sweep, "sweep")?.0;
        let v = *s
            .ground_shift
            .get(i)
            .ok_or((AbsStatus::InvalidArgument, format!("index {i} beyond {} flux points", s.ground_shift.len())))?;
        *out_slot(out, "out")? = v;
        Ok(())
    })
}

/// Reference energy `E_min(0)` of the sweep.
#[no_mangle]
pub unsafe extern "C" fn abs_sweep_reference_energy(sweep: *const AbsSweep, out: *mut f64) -> AbsStatus {
    guard(|| {
        *out_slot(out, "out")? = non_null(sweep, "sweep")?.0.reference_energy;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn abs_sweep_free(sweep: *mut AbsSweep) {
    if !sweep.is_null() {
        // SAFETY: produced by `abs_sweep_new` and not freed before.
        drop(unsafe { Box::from_raw(sweep) });
    }
}

/// Opaque field profile.
pub struct AbsProfile(FieldProfile);

/// Field profile for the given sources, with the trapped flux at its
/// nearest quantized value. `approx` selects the exponential approximation.
#[no_mangle]
pub unsafe extern "C" fn abs_profile_new(
    geometry: *const AbsGeometry,
    beta: f64,
    phi_a: f64,
    b_e: f64,
    include_shield: bool,
    approx: bool,
    out: *mut *mut AbsProfile,
) -> AbsStatus {
    guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let g = non_null(geometry, "geometry")?;
        let invalid = lib_err(AbsStatus::InvalidArgument);
        let geom = Geometry::new(g.a, g.b, g.c, g.d, g.e, g.r_e).map_err(&invalid)?;
        let lp = LondonParams::new(beta, &geom).map_err(&invalid)?;
        let src = SourceConfig::new(phi_a, b_e, include_shield).map_err(&invalid)?;
        let fs = quantized_flux(phi_a).map_err(&invalid)?;
        let profile =
            if approx { solve_london_approx(&geom, &lp, &src, &fs) } else { solve_london_exact(&geom, &lp, &src, &fs) }
                .map_err(lib_err(AbsStatus::Solver))?;
        *slot = Box::into_raw(Box::new(AbsProfile(profile)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn abs_profile_eval(profile: *const AbsProfile, r: f64, out: *mut AbsFieldSample) -> AbsStatus {
    guard(|| {
        let s = non_null(profile, "profile")?.0.eval(r).map_err(lib_err(AbsStatus::InvalidArgument))?;
        *out_slot(out, "out")? = AbsFieldSample { a: s.a, b_z: s.b_z, j_phi: s.j_phi, region: s.region as u32 };
        Ok(())
    })
}

/// Flux through the disc of the given radius, in flux quanta.
#[no_mangle]
pub unsafe extern "C" fn abs_profile_flux_within(profile: *const AbsProfile, radius: f64, out: *mut f64) -> AbsStatus {
    guard(|| {
        let v = flux_within(&non_null(profile, "profile")?.0, radius).map_err(lib_err(AbsStatus::InvalidArgument))?;
        *out_slot(out, "out")? = v;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn abs_profile_free(profile: *mut AbsProfile) {
    if !profile.is_null() {
        // SAFETY: produced by `abs_profile_new` and not freed before.
        drop(unsafe { Box::from_raw(profile) });
    }
}

/// Runs a CLI command (`spectrum`, `fields`, ...) on a TOML scenario (null
/// for the built-in default) and returns the rendered tables, concatenated,
/// in `*out`. `format` is `"csv"` or `"json"`. Free the text with
/// [`abs_string_free`]. A failed `verify` still returns its table along
/// with `ABS_STATUS_VERIFY_FAILED`.
#[no_mangle]
pub unsafe extern "C" fn abs_run_command(
    command: *const c_char,
    config_toml: *const c_char,
    format: *const c_char,
    out: *mut *mut c_char,
) -> AbsStatus {
    let mut verify_failed = None;
    let status = guard(|| {
        let slot = out_slot(out, "out")?;
        *slot = ptr::null_mut();
        let name = c_str(command, "command")?;
        let cmd = Command::from_name(name).ok_or((AbsStatus::InvalidArgument, format!("unknown command `{name}`")))?;
        let fmt = match c_str(format, "format")? {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err((AbsStatus::InvalidArgument, format!("unknown format `{other}`"))),
        };
        let cfg = if config_toml.is_null() {
            RunConfig::default_scenario()
        } else {
            RunConfig::parse(c_str(config_toml, "config")?).map_err(cli_err)?
        };
        let outcome = execute(&cfg, cmd).map_err(cli_err)?;
        let text: String = outcome.tables.iter().map(|t| t.render(fmt)).collect();
        *slot = CString::new(text).map_err(|_| (AbsStatus::Solver, "output contains NUL".to_string()))?.into_raw();
        verify_failed = outcome.status().err().map(|e| e.to_string());
        Ok(())
    });
    match (status, verify_failed) {
        (AbsStatus::Ok, Some(msg)) => {
            set_error(msg);
            AbsStatus::VerifyFailed
        }
        (s, _) => s,
    }
}

#[no_mangle]
pub unsafe extern "C" fn abs_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
