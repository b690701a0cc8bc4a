use qca::svg::{render, Viewport};
use qca_core::scatter::{complete_to_order, initial_diagram, ScatteringDiagram, Side};
use qca_core::theta::enumerate_broken_lines;
use qca_core::Rational;

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

#[test]
fn classical_a2_draws_five_wall_rays() {
    let seed = qca::suites::a2_scattering();
    let dg = complete_to_order(&initial_diagram(&seed, Side::A, false, None, 2).unwrap(), 2).unwrap();
    let svg = render(&dg, &[], Viewport::default()).unwrap();
    // two incoming lines and one outgoing ray
    assert_eq!(count(&svg, r#"<line class="wall""#), 5);
    assert_eq!(count(&svg, r#"class="wall-label""#), 5);
    assert_eq!(count(&svg, r#"<line class="axis""#), 4);
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn empty_diagram_is_axes_only() {
    let seed = qca::suites::a2_scattering();
    let template = initial_diagram(&seed, Side::A, false, None, 2).unwrap();
    let empty = ScatteringDiagram::from_parts(&template, Vec::new(), 2);
    let svg = render(&empty, &[], Viewport { size: 200 }).unwrap();
    assert_eq!(count(&svg, "<line "), 4);
    assert_eq!(count(&svg, "<text"), 0);
    assert!(svg.contains(r#"width="200""#));
}

#[test]
fn figure_three_overlay_has_four_segments() {
    let seed = qca::suites::a23();
    let dg = complete_to_order(&initial_diagram(&seed, Side::A, true, None, 2).unwrap(), 2).unwrap();
    let q = [Rational::new(1, 3), Rational::new(1, 3)];
    let lines = enumerate_broken_lines(&[-3, 5], &q, &dg, 2, 4, Some(&[1, -1])).unwrap();
    let svg = render(&dg, &lines, Viewport::default()).unwrap();
    assert_eq!(count(&svg, r#"<polyline class="broken-line""#), 1);
    assert!(svg.contains(r#"data-segments="4""#));
    let points = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(points.split(' ').count(), 5);
    assert_eq!(count(&svg, r#"class="basepoint""#), 1);
}

#[test]
fn long_wall_functions_are_truncated_in_labels() {
    let seed = qca::suites::a23();
    let dg = complete_to_order(&initial_diagram(&seed, Side::A, true, None, 4).unwrap(), 4).unwrap();
    let svg = render(&dg, &[], Viewport::default()).unwrap();
    assert!(svg.contains(" + ..."));
    assert!(!svg.contains("<A") && !svg.contains("<v"));
}
