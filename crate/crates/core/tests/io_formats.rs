mod common;

use common::{parse_obj, parse_xml};
use polyframe::io::{
    emit_svg, export_space_polygon, grid_layout, parse_polygon_documents, polygon_documents_to_json,
    FrameDocument, PolygonDocument, SpaceFormat, SvgShape,
};
use polyframe::planar::{lift_signs, regular_polygon};
use polyframe::sampling::{sample_polygon, sample_space_polygon, sample_stiefel, sample_stiefel_complex, SeededRng};
use polyframe::spatial::torus_knot;
use polyframe::Complex64;
use proptest::prelude::*;

fn svg_of(shapes: &[SvgShape]) -> String {
    let mut out = Vec::new();
    emit_svg(shapes, &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planar_json_round_trip_is_byte_stable(seed in any::<u64>(), n in 3usize..50) {
        let p = sample_polygon(n, &mut SeededRng::new(seed)).unwrap();
        let text = PolygonDocument::planar(&p).with_seed(seed).to_json();
        let doc = PolygonDocument::parse(&text).unwrap();
        prop_assert_eq!(doc.to_json(), text);
        prop_assert_eq!(doc.to_planar().unwrap(), p);
    }

    #[test]
    fn spatial_json_round_trip_is_byte_stable(seed in any::<u64>(), n in 3usize..50) {
        let p = sample_space_polygon(n, &mut SeededRng::new(seed)).unwrap();
        let text = PolygonDocument::spatial(&p).to_json();
        prop_assert_eq!(PolygonDocument::parse(&text).unwrap().to_json(), text);
    }

    #[test]
    fn frame_json_round_trip_is_byte_stable(seed in any::<u64>(), n in 3usize..30) {
        let mut rng = SeededRng::new(seed);
        let f = sample_stiefel(n, &mut rng).unwrap();
        let signs = Some(lift_signs(&f));
        let text = FrameDocument::Stiefel { frame: f, signs }.to_json();
        prop_assert_eq!(FrameDocument::parse(&text).unwrap().to_json(), text);
        let h = sample_stiefel_complex(n, &mut rng).unwrap();
        let text = FrameDocument::Hermitian { frame: h, theta: Some(vec![0.5; n]) }.to_json();
        prop_assert_eq!(FrameDocument::parse(&text).unwrap().to_json(), text);
    }

    #[test]
    fn svg_output_is_well_formed(seed in any::<u64>(), n in 3usize..40, count in 1usize..12) {
        let mut rng = SeededRng::new(seed);
        let polys: Vec<_> = (0..count).map(|_| sample_polygon(n, &mut rng).unwrap()).collect();
        let svg = svg_of(&grid_layout(&polys, 4, 1.2));
        let root = parse_xml(&svg).map_err(TestCaseError::fail)?;
        prop_assert_eq!(root.name.as_str(), "svg");
        prop_assert_eq!(root.attr("version"), Some("1.1"));
        prop_assert_eq!(root.count("path"), count);
        for path in &root.children {
            let d = path.attr("d").unwrap();
            prop_assert!(d.starts_with("M ") && d.ends_with('Z'));
            prop_assert_eq!(d.matches('L').count(), n - 1);
        }
    }

    #[test]
    fn obj_output_parses(seed in any::<u64>(), n in 3usize..200) {
        let p = sample_space_polygon(n, &mut SeededRng::new(seed)).unwrap();
        let mut out = Vec::new();
        export_space_polygon(&p, SpaceFormat::ObjPolyline, &mut out).unwrap();
        let obj = parse_obj(&String::from_utf8(out).unwrap()).map_err(TestCaseError::fail)?;
        prop_assert_eq!(obj.vertices.len(), n);
        prop_assert_eq!(obj.lines.len(), 1);
        let line = &obj.lines[0];
        prop_assert_eq!(line.len(), n + 1);
        prop_assert_eq!(line[0], line[n]);
    }
}

#[test]
fn figure_one_grid_has_one_path_per_triangle() {
    let mut rng = SeededRng::new(71);
    let triangles: Vec<_> = (0..204).map(|_| sample_polygon(3, &mut rng).unwrap()).collect();
    let svg = svg_of(&grid_layout(&triangles, 17, 1.2));
    assert_eq!(parse_xml(&svg).unwrap().count("path"), 204);
}

#[test]
fn empty_and_square_svgs() {
    let root = parse_xml(&svg_of(&[])).unwrap();
    assert_eq!(root.count("path"), 0);
    let square = regular_polygon(4).unwrap();
    let svg = svg_of(&[SvgShape::from_polygon(&square, Complex64::new(0.0, 0.0), 0)]);
    let root = parse_xml(&svg).unwrap();
    let d = root.children[0].attr("d").unwrap();
    assert_eq!(d.matches('L').count(), 3);
    assert!(d.ends_with('Z'));
}

#[test]
fn xml_reader_rejects_broken_documents() {
    for bad in ["<a><b></a>", "<a x=\"1\" x=\"2\"/>", "<a>text</a>", "<a/><b/>", "<a"] {
        assert!(parse_xml(bad).is_err(), "{bad}");
    }
}

#[test]
fn torus_knot_exports() {
    let p = torus_knot(2, 3, 1000).unwrap();
    let mut out = Vec::new();
    export_space_polygon(&p, SpaceFormat::ObjPolyline, &mut out).unwrap();
    let obj = parse_obj(std::str::from_utf8(&out).unwrap()).unwrap();
    assert_eq!(obj.vertices.len(), 1000);
    // the vertex after the last edge returns to the origin
    let last = obj.vertices[999];
    let e = p.edges()[999];
    let closing = [last[0] + e[0], last[1] + e[1], last[2] + e[2]];
    assert!(closing.iter().all(|c| c.abs() <= 1e-9));

    let mut csv = Vec::new();
    export_space_polygon(&p, SpaceFormat::CsvVertices, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,z"));
    assert_eq!(lines.filter(|l| l.split(',').count() == 3).count(), 1000);
}

#[test]
fn document_arrays_round_trip() {
    let mut rng = SeededRng::new(72);
    let docs: Vec<_> = (0..3)
        .map(|_| PolygonDocument::planar(&sample_polygon(5, &mut rng).unwrap()))
        .collect();
    let text = polygon_documents_to_json(&docs);
    assert_eq!(parse_polygon_documents(&text).unwrap(), docs);
}

#[test]
fn unknown_fields_and_versions_are_rejected() {
    let p = regular_polygon(3).unwrap();
    let text = PolygonDocument::planar(&p).to_json();
    assert!(PolygonDocument::parse(&text.replace("\"version\": 1", "\"version\": 2")).is_err());
    assert!(PolygonDocument::parse(&text.replace("\"n\": 3", "\"n\": 3, \"extra\": 0")).is_err());
}
