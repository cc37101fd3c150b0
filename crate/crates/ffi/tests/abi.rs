use std::ffi::{CStr, CString};
use std::ptr;

use ars_ffi::*;

const DIAMOND: &str =
    r#"{"elements": ["a", "b", "c", "d"], "steps": [["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]]}"#;
const LOOP: &str = r#"{"elements": ["a", "b"], "steps": [["a", "a"], ["a", "b"]]}"#;

fn system(json: &str) -> *mut ArsSystem {
    let json = CString::new(json).unwrap();
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { ars_system_from_json(json.as_ptr(), &mut sys) }, ArsStatus::Ok);
    sys
}

fn last_error() -> String {
    let p = ars_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn path(p: *mut ArsPath) -> Vec<usize> {
    let v = (0..unsafe { ars_path_len(p) })
        .map(|i| unsafe { ars_path_at(p, i) })
        .collect();
    unsafe { ars_path_free(p) };
    v
}

#[test]
fn properties_and_reports() {
    let sys = system(DIAMOND);
    unsafe {
        assert_eq!(ars_system_size(sys), 4);
        let mut a = usize::MAX;
        let name = CString::new("a").unwrap();
        assert_eq!(ars_element_index(sys, name.as_ptr(), &mut a), ArsStatus::Ok);
        assert_eq!(a, 0);
        let mut holds = false;
        let cr = CString::new("CR").unwrap();
        assert_eq!(ars_check_element(sys, a, cr.as_ptr(), &mut holds), ArsStatus::Ok);
        assert!(holds);
        let inc = CString::new("Inc").unwrap();
        assert_eq!(ars_check_global(sys, inc.as_ptr(), &mut holds), ArsStatus::Ok);
        assert!(holds);
        assert_eq!(
            ars_check_element(sys, a, inc.as_ptr(), &mut holds),
            ArsStatus::InvalidInput
        );
        assert!(last_error().contains("Inc"));

        let mut json = ptr::null_mut();
        assert_eq!(ars_report_json(sys, usize::MAX, &mut json), ArsStatus::Ok);
        let report: ars_core::cli::GlobalReport = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        ars_string_free(json);
        assert!(report.global["CR"]);
        assert_eq!(report.elements.len(), 4);
        assert_eq!(ars_report_json(sys, 3, &mut json), ArsStatus::Ok);
        let one: ars_core::cli::ElementReport = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        ars_string_free(json);
        assert_eq!(one.element, "d");
        assert_eq!(ars_report_json(sys, 9, &mut json), ArsStatus::InvalidInput);

        let mut dot = ptr::null_mut();
        assert_eq!(ars_to_dot(sys, &mut dot), ArsStatus::Ok);
        assert!(CStr::from_ptr(dot).to_str().unwrap().contains("  a -> b;"));
        ars_string_free(dot);
        ars_system_free(sys);
    }
}

#[test]
fn joins_and_normalization() {
    let sys = system(DIAMOND);
    unsafe {
        for method in 0..4 {
            let (mut l, mut r) = (ptr::null_mut(), ptr::null_mut());
            assert_eq!(ars_join(sys, 0, 1, 2, method, &mut l, &mut r), ArsStatus::Ok);
            assert_eq!(path(l), [1, 3]);
            assert_eq!(path(r), [2, 3]);
        }
        let (mut l, mut r) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(ars_join(sys, 0, 1, 2, 9, &mut l, &mut r), ArsStatus::InvalidInput);
        assert_eq!(ars_join(sys, 1, 2, 3, 3, &mut l, &mut r), ArsStatus::Precondition);
        assert!(last_error().contains("does not reduce to"));
        let mut p = ptr::null_mut();
        assert_eq!(ars_normalize(sys, 0, 0, &mut p), ArsStatus::Ok);
        assert_eq!(path(p), [0, 1, 3]);
        assert_eq!(ars_normalize(sys, 0, 1, &mut p), ArsStatus::FuelExhausted);
        let mut wf = false;
        assert_eq!(ars_well_founded(sys, 12, &mut wf), ArsStatus::Ok);
        assert!(wf);
        assert_eq!(ars_well_founded(sys, 2, &mut wf), ArsStatus::InvalidInput);
        ars_system_free(sys);
    }

    let sys = system(LOOP);
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(ars_normalize(sys, 0, 0, &mut p), ArsStatus::Precondition);
        assert!(last_error().starts_with("SN: "));
        let mut wf = true;
        assert_eq!(ars_well_founded(sys, 12, &mut wf), ArsStatus::Ok);
        assert!(!wf);
        ars_system_free(sys);
    }
}

#[test]
fn bad_arguments_are_reported() {
    unsafe {
        let mut sys = ptr::null_mut();
        assert_eq!(ars_system_from_json(ptr::null(), &mut sys), ArsStatus::NullPointer);
        let bad = CString::new(r#"{"elements": ["a"], "steps": [["a", "b"]]}"#).unwrap();
        assert_eq!(ars_system_from_json(bad.as_ptr(), &mut sys), ArsStatus::InvalidInput);
        assert!(sys.is_null());
        let junk = CString::new("{").unwrap();
        assert_eq!(ars_system_from_json(junk.as_ptr(), &mut sys), ArsStatus::InvalidInput);
        assert!(last_error().starts_with("parse error"));
        let mut holds = false;
        let cr = CString::new("CR").unwrap();
        assert_eq!(
            ars_check_element(ptr::null(), 0, cr.as_ptr(), &mut holds),
            ArsStatus::NullPointer
        );
        assert_eq!(ars_system_size(ptr::null()), 0);
        assert_eq!(ars_path_len(ptr::null()), 0);
        assert_eq!(ars_path_at(ptr::null(), 0), usize::MAX);
        ars_system_free(ptr::null_mut());
        ars_path_free(ptr::null_mut());
        ars_string_free(ptr::null_mut());
    }
    let v = unsafe { CStr::from_ptr(ars_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn errors_are_per_thread() {
    let _ = system("{\"elements\": [\"x\"], \"steps\": []}");
    let junk = CString::new("nope").unwrap();
    let mut sys = ptr::null_mut();
    unsafe { ars_system_from_json(junk.as_ptr(), &mut sys) };
    let here = last_error();
    let there = std::thread::spawn(|| ars_last_error().is_null()).join().unwrap();
    assert!(there);
    assert!(here.starts_with("parse error"));
}
