use conical_demo::{classify, decompose_plane, ne_curve};

#[test]
fn curve_dips_to_zero_at_the_lexicon_frequency() {
    let c = ne_curve(0.5, 0.0005, 101).unwrap();
    assert_eq!(c.len(), 101);
    assert_eq!(c[50], 0.0);
    assert!(c[0] > 3.0 && c[100] > 3.0);
    assert!(ne_curve(1.5, 0.0005, 10).is_err());
    assert!(ne_curve(0.1, 0.0, 10).is_err());
}

#[test]
fn classify_training_line_is_in_topic() {
    let training = "the keylogger logs keys\n\na keylogger hides in the kernel\n";
    let r = classify(training, "the keylogger logs keys").unwrap();
    assert_eq!(r.label, "in-topic");
    assert_eq!(r.required_dims, 2);
    assert_eq!(r.terms[0].0, "keylogger");

    let r = classify(training, "bananas").unwrap();
    assert_eq!(r.label, "out-of-topic");
    assert!(r.terms.is_empty());
    assert!(classify("\n\n", "x").is_err());
}

#[test]
fn plane_decomposition_of_bisector() {
    let r = decompose_plane(0.0, 90.0, 45.0, 1e-9).unwrap();
    assert!((r.lambda_x - 0.5).abs() < 1e-12);
    assert_eq!(r.trace[0], 0.5);

    let r = decompose_plane(0.0, 90.0, 30.0, 1e-9).unwrap();
    // tan 30° = (1 − λ) / λ
    let expected = 1.0 / (1.0 + 30f64.to_radians().tan());
    assert!((r.lambda_x - expected).abs() < 1e-9);
    assert_eq!(*r.trace.last().unwrap(), r.lambda_x);
    assert!(r.trace.len() <= r.iterations + 1);

    assert!(decompose_plane(0.0, 90.0, 120.0, 1e-9).is_err());
}
