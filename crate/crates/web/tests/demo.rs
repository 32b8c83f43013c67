use multisect_web::demo::{cosine_chain, fan_svg, sectable};

#[test]
fn fan_of_the_nonasector_chain() {
    let svg = fan_svg("7,1", "2,1", 8, true).unwrap();
    assert_eq!(svg.matches("<line ").count(), 10);
    assert!(svg.contains("y = (1/7)x"));
    assert!(svg.contains("y = \u{2212}(29/278)x"));
    assert_eq!(svg, fan_svg("7,1", "2,1", 8, true).unwrap());
    assert!(!fan_svg("7,1", "2,1", 8, false).unwrap().contains("<text"));
}

#[test]
fn fan_rejects_bad_input() {
    assert!(fan_svg("1,1,1", "1,2,3", 1, true)
        .unwrap_err()
        .contains("planar"));
    assert!(fan_svg("1,x", "1,2", 1, true).is_err());
    assert!(fan_svg("1,0", "0,1", 1000, true).is_err());
}

#[test]
fn trisection_report() {
    let r = sectable(3, "1,1", "-2,11").unwrap();
    assert!(r.starts_with("Sectable\n"));
    assert!(r.contains("f(t) = t^3 - 27t^2 - 507t + 1521"));
    assert!(r.contains("roots: 39"));
    assert!(r.contains("(1,1) \u{2192} (1,2) \u{2192} (1,7) \u{2192} (-2,11)"));
    let r = sectable(2, "1,1", "-2,11").unwrap();
    assert!(r.starts_with("NotSectable\n"));
    assert!(r.contains("no integer roots"));
    assert!(sectable(3, "1,1", "2,2").is_err());
}

#[test]
fn quadrisection_cosines() {
    assert_eq!(
        cosine_chain(2, "1,1,1", "-59,1,61").unwrap(),
        "4-sectable: true\ncosines: 1/49, 5/7\n"
    );
    assert_eq!(
        cosine_chain(2, "1,1", "-2,11").unwrap(),
        "4-sectable: false\ncosines: irrational\n"
    );
}
