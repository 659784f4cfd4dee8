use acutri::appendix::{
    assemble_cube, assemble_octahedron, load_reference, reconstruct, verify_reference, Reference,
};
use acutri::geometry::{verify_acute, verify_geometric_complex};
use acutri::complex::are_isomorphic;
use acutri::polytope600::{build_y, special_subdivision, x543_template};

#[test]
fn references_are_acute_copies_of_x543() {
    for r in [Reference::T0, Reference::T1] {
        let (k, _) = reconstruct(&load_reference(r)).unwrap();
        assert_eq!(k.f_vector().as_slice(), &[116, 678, 1106, 543]);
        assert!(are_isomorphic(&k, &x543_template().complex).is_some());
        let rep = verify_reference(r).unwrap();
        assert_eq!(rep.entries.len(), 3258);
        assert!(rep.is_acute(), "{:?}", rep.failures);
    }
}

#[test]
fn cube() {
    let a = assemble_cube().unwrap();
    assert_eq!(a.complex.simplices(3).len(), 2715);
    let rep = verify_acute(&a.complex, &a.embedding, 0.0).unwrap();
    assert!(rep.is_acute());
    println!("cube angles {} .. {}", rep.min_deg, rep.max_deg);
    assert!((rep.min_deg - 26.425).abs() < 0.01);
    assert!((rep.max_deg - 89.992).abs() < 0.01);
    assert!(a.complex.is_rich());
    assert!(verify_geometric_complex(&a.complex, &a.embedding).unwrap().is_ok());
    let (rot, refl) = a.symmetries();
    println!("cube symmetries: {} rotations, {} reflections", rot.len(), refl.len());
}

#[test]
fn octahedron() {
    let a = assemble_octahedron().unwrap();
    assert_eq!(a.complex.simplices(3).len(), 4344);
    assert!(verify_acute(&a.complex, &a.embedding, 0.0).unwrap().is_acute());
    assert!(a.complex.is_rich());
    assert!(verify_geometric_complex(&a.complex, &a.embedding).unwrap().is_ok());
    // copies in octants differing by one sign have opposite orientation
    let pat = a.orientation_pattern();
    for i in 0..8usize {
        for b in 0..3 {
            assert_eq!(pat[i], -pat[i ^ (1 << b)]);
        }
    }
}

#[test]
fn special_subdivision_of_y_matches_the_octahedron() {
    let (y, _) = build_y().unwrap();
    let s = special_subdivision(&y).unwrap();
    assert_eq!(s.child.simplices(3).len(), 4344);
    assert!(s.child.is_flag_no_square());
    assert!(s.child.is_rich());
    let octa = assemble_octahedron().unwrap();
    assert!(are_isomorphic(&s.child, &octa.complex).is_some());
}
