use lobachevsky_demo::{structure_curve, substitution_curve, wigner_curve};

fn column(data: &[f64], width: usize, col: usize) -> Vec<f64> {
    data.chunks(width).map(|r| r[col]).collect()
}

#[test]
fn layout() {
    assert_eq!(wigner_curve(1.0, 0.8, 9).len(), 9 * 3);
    assert_eq!(structure_curve("ff", 1.0, 0.8, 1.0, 0.3, 9).len(), 9 * 5);
    assert_eq!(substitution_curve(1.0, 0.8, 1.0, 9).len(), 9 * 5);
    let cos = column(&wigner_curve(1.0, 0.8, 5), 3, 0);
    assert_eq!(cos, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
}

#[test]
fn wigner_angle_vanishes_at_the_ends() {
    let data = wigner_curve(1.0, 1.3, 21);
    let angles = column(&data, 3, 1);
    assert!(angles[20].abs() < 1e-12);
    assert!(angles[10] > 0.0);
    for row in data.chunks(3).filter(|r| r[1] > 1e-9) {
        assert!((row[2].abs() - 1.0).abs() < 1e-9, "axis not along y: {row:?}");
    }
}

#[test]
fn poles_become_nan() {
    let ff = structure_curve("ff", 1.0, 0.8, 1.0, 0.0, 5);
    assert!(ff[4 * 5 + 1].is_nan());
    assert!(ff[2 * 5 + 1].is_finite());
    let bb = structure_curve("bb", 1.0, 0.8, 1.0, 0.0, 5);
    assert!(bb[4 * 5 + 2].is_nan());
}

#[test]
fn substituted_tensor_ratio_is_minus_one() {
    let data = substitution_curve(1.0, 0.9, 0.7, 11);
    for row in data.chunks(5).filter(|r| r[0].abs() < 0.95) {
        assert!((row[2] + 1.0).abs() < 1e-9, "{row:?}");
    }
}
