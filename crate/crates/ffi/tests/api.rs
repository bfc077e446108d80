use std::ffi::{c_char, CStr, CString};
use std::ptr;

use softupdate_ffi::*;

const DISEASE: &str = include_str!("../../core/corpus/disease.netspec");

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    su_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(su_last_error()).to_str().unwrap().to_owned()
}

unsafe fn network(source: &str) -> *mut SuNetwork {
    let mut net = ptr::null_mut();
    let src = cs(source);
    assert_eq!(su_network_parse(src.as_ptr(), &mut net), SuStatus::Ok);
    net
}

#[test]
fn evaluate_and_inspect() {
    unsafe {
        let net = network(DISEASE);
        assert_eq!(su_network_query_count(net), 9);
        let mut name = ptr::null_mut();
        assert_eq!(su_network_query_name(net, 4, &mut name), SuStatus::Ok);
        assert_eq!(take(name), "pearl_posterior");

        let mut value = ptr::null_mut();
        let q = cs("pearl_posterior");
        assert_eq!(su_network_evaluate(net, q.as_ptr(), &mut value), SuStatus::Ok);
        assert_eq!(su_value_kind(value), SuValueKind::State);
        assert_eq!(su_value_len(value), 2);
        let mut s = ptr::null_mut();
        assert_eq!(su_value_label(value, 1, &mut s), SuStatus::Ok);
        assert_eq!(take(s), "~d");
        assert_eq!(su_value_fraction(value, 0, &mut s), SuStatus::Ok);
        assert_eq!(take(s), "74/2351");
        let mut x = 0.0;
        assert_eq!(su_value_double(value, 0, &mut x), SuStatus::Ok);
        assert!((x - 148.0 / 4702.0).abs() < 1e-15);
        assert_eq!(su_value_render(value, 3, false, &mut s), SuStatus::Ok);
        assert_eq!(take(s), "0.031|d> + 0.969|~d>");
        assert_eq!(su_value_fraction(value, 2, &mut s), SuStatus::OutOfRange);
        assert!(s.is_null());
        su_value_free(value);

        let c = cs("inverted");
        assert_eq!(su_network_evaluate(net, c.as_ptr(), &mut value), SuStatus::Ok);
        assert_eq!(su_value_kind(value), SuValueKind::Channel);
        assert_eq!(su_value_len(value), 4);
        assert_eq!(su_value_label(value, 1, &mut s), SuStatus::Ok);
        assert_eq!(take(s), "t -> ~d");
        su_value_free(value);

        assert_eq!(su_network_eval_string(net, q.as_ptr(), -1, &mut s), SuStatus::Ok);
        assert_eq!(take(s), "74/2351|d> + 2277/2351|~d>");
        assert_eq!(su_network_explain(net, q.as_ptr(), &mut s), SuStatus::Ok);
        assert!(take(s).contains("validity (prior |= c << q): 2351/10000"));
        let prior = cs("prior");
        assert_eq!(su_network_explain(net, prior.as_ptr(), &mut s), SuStatus::WrongKind);
        su_network_free(net);
    }
}

#[test]
fn sweep_csv() {
    unsafe {
        let net = network(DISEASE);
        let (c, p, t) = (cs("sens"), cs("prior"), cs("d"));
        let mut s = ptr::null_mut();
        assert_eq!(su_network_sweep(net, c.as_ptr(), p.as_ptr(), t.as_ptr(), 10, -1, &mut s), SuStatus::Ok);
        let csv = take(s);
        assert_eq!(csv.lines().nth(9), Some("4/5,3018/24479,74/2351"));
        assert_eq!(su_network_sweep(net, p.as_ptr(), p.as_ptr(), t.as_ptr(), 10, -1, &mut s), SuStatus::WrongKind);
        let bad = cs("zz");
        assert_eq!(
            su_network_sweep(net, c.as_ptr(), p.as_ptr(), bad.as_ptr(), 10, -1, &mut s),
            SuStatus::Evaluation
        );
        su_network_free(net);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut net = ptr::null_mut();
        let bad = cs("space disease = {d, ~d}\nstate prior : disease = { d: 1/2, ~d: 1/3 }\n");
        assert_eq!(su_network_parse(bad.as_ptr(), &mut net), SuStatus::Parse);
        assert!(net.is_null());
        let msg = last_error();
        assert!(msg.starts_with("2:7: error:"), "{msg}");
        assert!(msg.contains("weights sum to 5/6, expected 1"));

        assert_eq!(su_network_parse(ptr::null(), &mut net), SuStatus::NullArgument);
        let src = cs("");
        assert_eq!(su_network_parse(src.as_ptr(), ptr::null_mut()), SuStatus::NullArgument);
        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(su_network_parse(invalid.as_ptr().cast(), &mut net), SuStatus::InvalidUtf8);
        let missing = cs("/nonexistent/x.netspec");
        assert_eq!(su_network_load(missing.as_ptr(), &mut net), SuStatus::Io);

        let net = network("space a = {x, y}\nstate s : a = {x: 1}\npredicate z : a = {y: 1}\nquery q = condition(s, z)");
        let mut v = ptr::null_mut();
        let q = cs("q");
        assert_eq!(su_network_evaluate(net, q.as_ptr(), &mut v), SuStatus::Evaluation);
        assert!(last_error().contains("validity is zero"));
        let nope = cs("nope");
        assert_eq!(su_network_evaluate(net, nope.as_ptr(), &mut v), SuStatus::UnknownName);
        assert_eq!(su_network_evaluate(ptr::null(), q.as_ptr(), &mut v), SuStatus::NullArgument);
        let s = cs("s");
        assert_eq!(su_network_evaluate(net, s.as_ptr(), &mut v), SuStatus::Ok);
        assert!(last_error().is_empty());
        su_value_free(v);
        su_network_free(net);

        su_network_free(ptr::null_mut());
        su_value_free(ptr::null_mut());
        su_string_free(ptr::null_mut());
        assert_eq!(su_network_query_count(ptr::null()), 0);
        assert_eq!(su_value_len(ptr::null()), 0);
        assert!(!CStr::from_ptr(su_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_lists_every_export() {
    let header = include_str!("../include/softupdate.h");
    for f in [
        "su_last_error",
        "su_network_parse",
        "su_network_load",
        "su_network_free",
        "su_network_evaluate",
        "su_network_eval_string",
        "su_network_explain",
        "su_network_sweep",
        "su_value_free",
        "su_value_fraction",
        "su_value_double",
        "su_string_free",
        "SU_STATUS_PARSE = 4",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}
