use strataforge::bounds::{
    independence_bound, plane_bound, plane_genus, tetragonal_bound, tetragonal_bound_summands, trigonal_bound,
    LineBundleOnCurve,
};

/// Largest n with 2g - 2 - deg + n < 0, by search.
fn bound_by_search(genus: u32, degree: i64) -> i64 {
    let mut n = -1;
    while 2 * i64::from(genus) - 2 - degree + (n + 1) < 0 {
        n += 1;
    }
    n
}

#[test]
fn independence_bound_matches_search() {
    for genus in 0..30 {
        for degree in 2 * i64::from(genus)..4 * i64::from(genus) + 20 {
            assert_eq!(independence_bound(LineBundleOnCurve { genus, degree }), bound_by_search(genus, degree));
        }
    }
}

#[test]
fn plane_curves() {
    assert_eq!(plane_bound(4).unwrap(), (3, 11));
    assert_eq!(plane_bound(5).unwrap(), (6, 14));
    let (g, bound) = plane_bound(3).unwrap();
    assert_eq!(g, 1);
    assert!(bound >= 8);
    for d in 3..40 {
        let (g, bound) = plane_bound(d).unwrap();
        assert_eq!(2 * g, (d - 1) * (d - 2));
        assert_eq!(bound, 3 * i64::from(d) - 1);
        assert_eq!(g, plane_genus(d));
    }
    assert_eq!(plane_bound(2).unwrap_err().name(), "DegreeTooSmall");
}

#[test]
fn trigonal_curves() {
    assert_eq!(trigonal_bound(4).bound, 11);
    for g in 2..40 {
        let t = trigonal_bound(g);
        assert_eq!(t.bound, i64::from(g) + 7);
        assert_eq!(t.h0, 2 * i64::from(g) + 7);
    }
}

#[test]
fn tetragonal_curves() {
    assert_eq!(tetragonal_bound(5, 4).unwrap(), 7);
    assert_eq!(tetragonal_bound(6, 4).unwrap(), 5);
    for g in 4..=40 {
        let top = (g + 3) / 2;
        assert!(tetragonal_bound(g, top).unwrap() <= 7, "g = {g}");
        let mut last = i64::MIN;
        for f1 in 0..=top {
            let b = tetragonal_bound(g, f1).unwrap();
            assert!(b > last, "not increasing at g = {g}, f1 = {f1}");
            assert_eq!(b, tetragonal_bound_summands(g, f1, g + 3 - f1));
            last = b;
        }
    }
    assert_eq!(tetragonal_bound(5, 5).unwrap_err().name(), "SplittingInvalid");
}
