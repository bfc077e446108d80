//! C ABI for softupdate.
//!
//! Networks and evaluated values are opaque handles owned by the caller and
//! released with their `*_free` function. Strings returned through out
//! parameters are heap allocated and released with [`su_string_free`].
//! Every fallible call returns an [`SuStatus`]; on failure a description is
//! available from [`su_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use softupdate::netspec::{self, Environment, Value};
use softupdate::rational;
use softupdate::sweep;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    UnknownName = 5,
    Evaluation = 6,
    WrongKind = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// Kind of an evaluated value.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuValueKind {
    State = 0,
    Predicate = 1,
    Channel = 2,
    Scalar = 3,
}

/// A parsed and checked netspec model.
pub struct SuNetwork {
    env: Environment,
}

/// The result of evaluating a name in a network.
pub struct SuValue {
    value: Value,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

struct Fail(SuStatus, String);

fn fail(status: SuStatus, message: impl Into<String>) -> Fail {
    Fail(status, message.into())
}

/// Runs `body`, turning failures and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SuStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            SuStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SuStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(SuStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(SuStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| fail(SuStatus::NullArgument, format!("{what} is null")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| fail(SuStatus::NullArgument, format!("{what} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn compile(source: &str) -> Result<*mut SuNetwork, Fail> {
    let env = netspec::load(source).map_err(|diags| {
        let lines: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        fail(SuStatus::Parse, lines.join("\n"))
    })?;
    Ok(Box::into_raw(Box::new(SuNetwork { env })))
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn su_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn su_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and checks netspec `source`.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_network_parse(source: *const c_char, out: *mut *mut SuNetwork) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = compile(text(source, "source")?)?;
        Ok(())
    })
}

/// Reads and parses a netspec file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_network_load(path: *const c_char, out: *mut *mut SuNetwork) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let path = text(path, "path")?;
        let source = std::fs::read_to_string(path).map_err(|e| fail(SuStatus::Io, format!("{path}: {e}")))?;
        *out = compile(&source)?;
        Ok(())
    })
}

/// Releases a network. Null is ignored.
///
/// # Safety
/// `network` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn su_network_free(network: *mut SuNetwork) {
    if !network.is_null() {
        drop(Box::from_raw(network));
    }
}

/// Number of queries declared in the network.
///
/// # Safety
/// `network` must be a valid handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn su_network_query_count(network: *const SuNetwork) -> usize {
    network.as_ref().map_or(0, |n| n.env.query_names().count())
}

/// Name of the query at `index`, in declaration order.
///
/// # Safety
/// `network` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_network_query_name(
    network: *const SuNetwork,
    index: usize,
    out: *mut *mut c_char,
) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let net = handle(network, "network")?;
        let name = net
            .env
            .query_names()
            .nth(index)
            .ok_or_else(|| fail(SuStatus::OutOfRange, format!("no query at index {index}")))?;
        *out = c_string(name.to_string());
        Ok(())
    })
}

fn lookup(net: &SuNetwork, name: &str) -> Result<Value, Fail> {
    if !net.env.contains(name) {
        return Err(fail(SuStatus::UnknownName, format!("no value or query named `{name}`")));
    }
    net.env.evaluate(name).map_err(|e| fail(SuStatus::Evaluation, e.to_string()))
}

/// Evaluates a declared value or query into a value handle.
///
/// # Safety
/// `network` must be a valid handle, `name` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_network_evaluate(
    network: *const SuNetwork,
    name: *const c_char,
    out: *mut *mut SuValue,
) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let net = handle(network, "network")?;
        let value = lookup(net, text(name, "name")?)?;
        *out = Box::into_raw(Box::new(SuValue { value }));
        Ok(())
    })
}

/// Evaluates and renders in one step. A negative `decimals` gives exact
/// fractions, otherwise decimals with that many digits.
///
/// # Safety
/// As for [`su_network_evaluate`]; `out` receives a string to release with
/// [`su_string_free`].
#[no_mangle]
pub unsafe extern "C" fn su_network_eval_string(
    network: *const SuNetwork,
    name: *const c_char,
    decimals: i32,
    out: *mut *mut c_char,
) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let net = handle(network, "network")?;
        let value = lookup(net, text(name, "name")?)?;
        *out = c_string(render(&value, decimals, false));
        Ok(())
    })
}

/// Step-by-step report for a query whose outermost operation is an update
/// rule. Other names fail with `WrongKind`.
///
/// # Safety
/// As for [`su_network_eval_string`].
#[no_mangle]
pub unsafe extern "C" fn su_network_explain(
    network: *const SuNetwork,
    name: *const c_char,
    out: *mut *mut c_char,
) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let net = handle(network, "network")?;
        let name = text(name, "name")?;
        if !net.env.contains(name) {
            return Err(fail(SuStatus::UnknownName, format!("no value or query named `{name}`")));
        }
        let report = net
            .env
            .explain(name)
            .map_err(|e| fail(SuStatus::Evaluation, e.to_string()))?
            .ok_or_else(|| fail(SuStatus::WrongKind, format!("`{name}` is not an update query")))?;
        *out = c_string(report.render());
        Ok(())
    })
}

/// CSV `r,jeffrey,pearl` for `steps + 1` evenly spaced evidence strengths.
/// A negative `decimals` gives exact fractions.
///
/// # Safety
/// `network` must be a valid handle, the names NUL-terminated strings and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_network_sweep(
    network: *const SuNetwork,
    channel: *const c_char,
    prior: *const c_char,
    target: *const c_char,
    steps: u32,
    decimals: i32,
    out: *mut *mut c_char,
) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let net = handle(network, "network")?;
        let (channel, prior, target) = (text(channel, "channel")?, text(prior, "prior")?, text(target, "target")?);
        let c = match lookup(net, channel)? {
            Value::Channel(c) => c,
            _ => return Err(fail(SuStatus::WrongKind, format!("`{channel}` is not a channel"))),
        };
        let p = match lookup(net, prior)? {
            Value::State(s) => s,
            _ => return Err(fail(SuStatus::WrongKind, format!("`{prior}` is not a state"))),
        };
        let rows = sweep::sweep(&p, &c, target, steps).map_err(|e| fail(SuStatus::Evaluation, e.to_string()))?;
        let digits = usize::try_from(decimals).ok();
        *out = c_string(sweep::to_csv(&rows, digits));
        Ok(())
    })
}

/// Releases a value. Null is ignored.
///
/// # Safety
/// `value` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn su_value_free(value: *mut SuValue) {
    if !value.is_null() {
        drop(Box::from_raw(value));
    }
}

/// Kind of a value; scalars are reported for null.
///
/// # Safety
/// `value` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn su_value_kind(value: *const SuValue) -> SuValueKind {
    match value.as_ref().map(|v| &v.value) {
        Some(Value::State(_)) => SuValueKind::State,
        Some(Value::Predicate(_)) => SuValueKind::Predicate,
        Some(Value::Channel(_)) => SuValueKind::Channel,
        Some(Value::Scalar(_)) | None => SuValueKind::Scalar,
    }
}

/// Number of entries: elements for states and predicates, `rows × columns`
/// for channels (row-major), 1 for scalars, 0 for null.
///
/// # Safety
/// `value` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn su_value_len(value: *const SuValue) -> usize {
    value.as_ref().map_or(0, |v| entries(&v.value).len())
}

fn entries(value: &Value) -> Vec<(String, rational::Prob)> {
    match value {
        Value::State(s) => s.space().elements().iter().cloned().zip(s.weights().iter().cloned()).collect(),
        Value::Predicate(p) => p.space().elements().iter().cloned().zip(p.values().iter().cloned()).collect(),
        Value::Channel(c) => {
            let mut out = Vec::new();
            for (x, row) in c.domain().elements().iter().zip(c.rows()) {
                for (y, w) in c.codomain().elements().iter().zip(row.weights()) {
                    out.push((format!("{x} -> {y}"), w.clone()));
                }
            }
            out
        }
        Value::Scalar(v) => vec![(String::new(), v.clone())],
    }
}

fn entry(value: *const SuValue, index: usize) -> Result<(String, rational::Prob), Fail> {
    let v = unsafe { handle(value, "value")? };
    let all = entries(&v.value);
    let n = all.len();
    all.into_iter()
        .nth(index)
        .ok_or_else(|| fail(SuStatus::OutOfRange, format!("index {index} out of range for {n} entries")))
}

/// Label of entry `index`: an element name, `x -> y` for channels, empty for
/// scalars.
///
/// # Safety
/// `value` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_value_label(value: *const SuValue, index: usize, out: *mut *mut c_char) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = c_string(entry(value, index)?.0);
        Ok(())
    })
}

/// Exact weight of entry `index` as `n/d` text.
///
/// # Safety
/// `value` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_value_fraction(value: *const SuValue, index: usize, out: *mut *mut c_char) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        *out = c_string(rational::fraction(&entry(value, index)?.1));
        Ok(())
    })
}

/// Weight of entry `index` rounded to the nearest double.
///
/// # Safety
/// `value` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_value_double(value: *const SuValue, index: usize, out: *mut f64) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = rational::to_f64(&entry(value, index)?.1);
        Ok(())
    })
}

fn render(value: &Value, decimals: i32, show_zeros: bool) -> String {
    match usize::try_from(decimals) {
        Ok(d) => value.render_decimal(d, show_zeros),
        Err(_) => value.render(show_zeros),
    }
}

/// Text form of a value, as printed by the command line tool.
///
/// # Safety
/// `value` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn su_value_render(
    value: *const SuValue,
    decimals: i32,
    show_zeros: bool,
    out: *mut *mut c_char,
) -> SuStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let v = handle(value, "value")?;
        *out = c_string(render(&v.value, decimals, show_zeros));
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn su_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
