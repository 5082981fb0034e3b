use std::ffi::{CStr, CString};
use std::ptr;

use orbitlaw_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = orbitlaw_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn functional(spec: &str) -> *mut OrbitlawFunctional {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { orbitlaw_functional_parse(cstr(spec).as_ptr(), &mut f) }, OrbitlawStatus::Ok);
    f
}

#[test]
fn intersection_and_errors() {
    let mut n = 0;
    unsafe {
        assert_eq!(orbitlaw_intersection(2, 1, 1, 3, &mut n), OrbitlawStatus::Ok);
        assert_eq!(n, 5);
        assert_eq!(orbitlaw_intersection(2, 2, 1, 3, &mut n), OrbitlawStatus::InvalidArgument);
        assert!(last_error().contains("primitive"));
        assert_eq!(orbitlaw_intersection(1, 0, 0, 1, ptr::null_mut()), OrbitlawStatus::NullPointer);
    }
}

#[test]
fn functional_eval() {
    let f = functional("i:a+b");
    let g = functional("flat");
    let mut v = 0.0;
    unsafe {
        assert_eq!(orbitlaw_functional_eval(f, 3, -2, &mut v), OrbitlawStatus::Ok);
        assert_eq!(v, 5.0);
        assert_eq!(orbitlaw_functional_eval(g, 3, 4, &mut v), OrbitlawStatus::Ok);
        assert_eq!(v, 5.0);
        assert_eq!(orbitlaw_functional_eval(ptr::null(), 3, 4, &mut v), OrbitlawStatus::NullPointer);
        orbitlaw_functional_free(f);
        orbitlaw_functional_free(g);
        orbitlaw_functional_free(ptr::null_mut());
    }
}

#[test]
fn orbit_handles() {
    let f = functional("i:a+b");
    let mut n = 0;
    let mut o = ptr::null_mut();
    let mut len = 0;
    let (mut p, mut q, mut k) = ([0i64; 2], [0i64; 2], 0usize);
    unsafe {
        assert_eq!(orbitlaw_orbit_count(f, cstr("30").as_ptr(), &mut n), OrbitlawStatus::Ok);
        assert_eq!(orbitlaw_orbit_enumerate(f, cstr("30").as_ptr(), ptr::null(), 1 << 20, &mut o), OrbitlawStatus::Ok);
        assert_eq!(orbitlaw_orbit_len(o, &mut len), OrbitlawStatus::Ok);
        assert_eq!(len as u64, n);
        for i in 0..len {
            assert_eq!(orbitlaw_orbit_get(o, i, p.as_mut_ptr(), q.as_mut_ptr(), 2, &mut k), OrbitlawStatus::Ok);
            assert_eq!(k, 2);
            assert_eq!((p[0] * q[1] - p[1] * q[0]).abs(), 1);
            assert!(p[0].abs() + q[0].abs() + p[1].abs() + q[1].abs() <= 30);
        }
        assert_eq!(
            orbitlaw_orbit_get(o, len, p.as_mut_ptr(), q.as_mut_ptr(), 2, &mut k),
            OrbitlawStatus::InvalidArgument
        );
        assert_eq!(
            orbitlaw_orbit_get(o, 0, p.as_mut_ptr(), q.as_mut_ptr(), 1, &mut k),
            OrbitlawStatus::InvalidArgument
        );
        assert_eq!(k, 2);
        orbitlaw_orbit_free(o);

        assert_eq!(orbitlaw_orbit_count(f, cstr("x").as_ptr(), &mut n), OrbitlawStatus::ParseError);
        assert_eq!(orbitlaw_orbit_count(f, cstr("-1").as_ptr(), &mut n), OrbitlawStatus::InvalidArgument);
        assert_eq!(
            orbitlaw_orbit_enumerate(f, cstr("200").as_ptr(), ptr::null(), 5, &mut o),
            OrbitlawStatus::BudgetExceeded
        );
        orbitlaw_functional_free(f);
    }
}

#[test]
fn measures() {
    let mut v = 0.0;
    let x = [0.25, 0.25, 0.5];
    unsafe {
        assert_eq!(orbitlaw_dirichlet_norm(2, &mut v), OrbitlawStatus::Ok);
        assert!((v - 2f64.sqrt() / 6.0).abs() < 1e-15);
        assert_eq!(orbitlaw_dirichlet_norm(0, &mut v), OrbitlawStatus::InvalidArgument);
        assert_eq!(orbitlaw_pants_density(2, 0, x.as_ptr(), 3, &mut v), OrbitlawStatus::Ok);
        assert!(v > 0.0);
        assert_eq!(orbitlaw_pants_density(2, 0, x.as_ptr(), 2, &mut v), OrbitlawStatus::InvalidArgument);
        assert_eq!(orbitlaw_pants_density(0, 1, x.as_ptr(), 3, &mut v), OrbitlawStatus::InvalidArgument);
    }
    let flat = functional("flat");
    let mut count = 0;
    unsafe {
        assert_eq!(orbitlaw_lattice_volume(flat, 400, &mut v, &mut count), OrbitlawStatus::Ok);
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 0.01, "{v}");
        assert_eq!(orbitlaw_lattice_volume(flat, 400, &mut v, ptr::null_mut()), OrbitlawStatus::Ok);
        orbitlaw_functional_free(flat);
    }
}

#[test]
fn ratio_law_handle() {
    let phi = functional("i:a+b");
    let mut law = ptr::null_mut();
    let (mut lo, mut hi, mut c) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(orbitlaw_ratio_law_new(phi, phi, 64, &mut law), OrbitlawStatus::Ok);
        assert_eq!(orbitlaw_ratio_law_support(law, &mut lo, &mut hi), OrbitlawStatus::Ok);
        assert_eq!((lo, hi), (1.0, 1.0));
        assert_eq!(orbitlaw_ratio_law_cdf(law, 1.0, &mut c), OrbitlawStatus::Ok);
        assert_eq!(c, 1.0);
        assert_eq!(orbitlaw_ratio_law_cdf(law, 0.999, &mut c), OrbitlawStatus::Ok);
        assert_eq!(c, 0.0);
        orbitlaw_ratio_law_free(law);
        assert_eq!(orbitlaw_ratio_law_new(phi, phi, 0, &mut law), OrbitlawStatus::InvalidArgument);
        orbitlaw_functional_free(phi);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(orbitlaw_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
