use std::ffi::{CStr, CString};
use std::ptr;

use solid_torus_ffi::*;

fn last_error() -> String {
    let p = st_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn family_handle(i: usize) -> *mut StTriangulation {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { st_family(i, &mut t) }, StStatus::Ok);
    assert!(!t.is_null());
    t
}

#[test]
fn parse_serialize_round_trip() {
    let text = CString::new("tets 1\n0: 0:3012 - - 0:1230\n").unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(st_triangulation_parse(text.as_ptr(), &mut t), StStatus::Ok);
        let mut n = 0usize;
        assert_eq!(st_triangulation_tet_count(t, &mut n), StStatus::Ok);
        assert_eq!(n, 1);
        let mut s = ptr::null_mut();
        assert_eq!(st_triangulation_serialize(t, &mut s), StStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), text.to_str().unwrap());
        st_string_free(s);
        st_triangulation_free(t);
    }
}

#[test]
fn parse_error_sets_message() {
    let text = CString::new("tets 1\n0: 0:3012 - -\n").unwrap();
    let mut t = ptr::null_mut();
    let status = unsafe { st_triangulation_parse(text.as_ptr(), &mut t) };
    assert_eq!(status, StStatus::ParseError);
    assert!(t.is_null());
    assert!(last_error().contains("line 2"));
}

#[test]
fn null_arguments_are_rejected() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { st_triangulation_parse(ptr::null(), &mut t) }, StStatus::NullArgument);
    let mut n = 0usize;
    assert_eq!(unsafe { st_triangulation_tet_count(ptr::null(), &mut n) }, StStatus::NullArgument);
    assert!(last_error().contains("null"));
    unsafe {
        st_triangulation_free(ptr::null_mut());
        st_normal_vector_free(ptr::null_mut());
        st_string_free(ptr::null_mut());
    }
}

#[test]
fn family_homology_has_meridian_kernel() {
    for i in 0..5 {
        let t = family_handle(i);
        let (mut rank, mut has, mut x, mut y) = (0usize, false, 0i64, 0i64);
        unsafe {
            assert_eq!(st_first_homology(t, &mut rank, &mut has, &mut x, &mut y), StStatus::Ok);
            st_triangulation_free(t);
        }
        assert_eq!((rank, has, x, y), (1, true, 0, 1), "i = {i}");
    }
}

#[test]
fn arithmetic_bound() {
    let mut pass = false;
    assert_eq!(unsafe { st_verify_61_2(20, 1000, &mut pass) }, StStatus::Ok);
    assert!(pass);
    assert_eq!(unsafe { st_verify_61_2(3, -1, &mut pass) }, StStatus::InvalidInput);
}

#[test]
fn meridian_disc_and_claims() {
    let t = family_handle(1);
    unsafe {
        let mut v = ptr::null_mut();
        assert_eq!(st_minimal_meridian_disc(t, 2, &mut v), StStatus::NotFound);
        assert!(last_error().contains("no meridian disc"));
        assert_eq!(st_minimal_meridian_disc(t, 24, &mut v), StStatus::Ok);
        let mut pieces = 0u64;
        assert_eq!(st_normal_vector_piece_count(v, &mut pieces), StStatus::Ok);
        assert_eq!(pieces, 8);
        let (mut c1, mut c2) = (false, false);
        assert_eq!(st_check_claims(t, v, &mut c1, &mut c2), StStatus::Ok);
        assert!(c1 && c2);

        let mut s = ptr::null_mut();
        assert_eq!(st_normal_vector_to_json(v, &mut s), StStatus::Ok);
        let mut w = ptr::null_mut();
        assert_eq!(st_normal_vector_from_json(t, s, &mut w), StStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(st_normal_vector_to_json(w, &mut again), StStatus::Ok);
        assert_eq!(CStr::from_ptr(s), CStr::from_ptr(again));
        st_string_free(s);
        st_string_free(again);
        st_normal_vector_free(v);
        st_normal_vector_free(w);
        st_triangulation_free(t);
    }
}

#[test]
fn non_normal_json_is_rejected() {
    let t = family_handle(0);
    let bad = CString::new("[[1,0,0,0,0,0,0]]").unwrap();
    let mut v = ptr::null_mut();
    unsafe {
        assert_eq!(st_normal_vector_from_json(t, bad.as_ptr(), &mut v), StStatus::InvalidInput);
        st_triangulation_free(t);
    }
    assert!(v.is_null());
}

#[test]
fn success_clears_the_error() {
    let mut pass = false;
    unsafe { st_verify_61_2(0, -1, &mut pass) };
    assert!(!st_last_error().is_null());
    unsafe { st_verify_61_2(0, 10, &mut pass) };
    assert!(st_last_error().is_null());
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/solid_torus.h");
    for name in [
        "st_last_error",
        "st_string_free",
        "st_triangulation_parse",
        "st_family",
        "st_triangulation_free",
        "st_triangulation_tet_count",
        "st_triangulation_serialize",
        "st_first_homology",
        "st_verify_61_2",
        "st_minimal_meridian_disc",
        "st_normal_vector_from_json",
        "st_normal_vector_to_json",
        "st_normal_vector_piece_count",
        "st_normal_vector_free",
        "st_check_claims",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name}");
    }
    assert!(header.contains("ST_STATUS_OK"));
}
