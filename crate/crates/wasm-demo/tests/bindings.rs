use monopole_cs_wasm::{
    harmonic_values, husimi_values, kravchuk_function_values, kravchuk_grid_values,
    kravchuk_spectrum_values, MAX_RESOLUTION,
};

#[test]
fn husimi_peaks_at_the_label() {
    // 5x5 grid over [-1, 1]², the centre point is the origin
    let d = husimi_values(3, 1, "gscs", 0, 0.0, 0.0, 1.0, 5).unwrap();
    assert_eq!(d.len(), 25);
    assert!((d[12] - 1.0).abs() < 1e-12);
    assert!(d.iter().all(|&v| (0.0..=1.0 + 1e-12).contains(&v)));
}

#[test]
fn basis_husimi_and_bad_state() {
    let d = husimi_values(2, 0, "basis", 1, 0.0, 0.0, 2.0, 9).unwrap();
    assert!(d.iter().all(|v| v.is_finite()));
    assert!(husimi_values(2, 0, "basis", 7, 0.0, 0.0, 2.0, 9).is_err());
    assert!(husimi_values(2, 0, "cat", 0, 0.0, 0.0, 2.0, 9).is_err());
    assert!(husimi_values(2, 0, "gscs", 0, 0.0, 0.0, 2.0, MAX_RESOLUTION + 1).is_err());
}

#[test]
fn harmonic_pairs() {
    let v = harmonic_values(2, 1, -1, 1.5, 4).unwrap();
    assert_eq!(v.len(), 2 * 16);
    assert!(v
        .chunks(2)
        .all(|c| c[0] >= 0.0 && c[1].abs() <= std::f64::consts::PI));
}

#[test]
fn kravchuk_views() {
    let f = kravchuk_function_values(6, "1/3").unwrap();
    assert_eq!(f.len(), 49);
    for row in f.chunks(7) {
        let norm: f64 = row.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }
    let x = kravchuk_grid_values(6, "1/3").unwrap();
    assert_eq!(x.first(), Some(&-2.0));
    let s = kravchuk_spectrum_values(6, "1/3").unwrap();
    for (k, e) in s.iter().enumerate() {
        assert!((e - (k as f64 + 0.5)).abs() < 1e-12);
    }
    assert!(kravchuk_spectrum_values(6, "0.3").is_err());
}
