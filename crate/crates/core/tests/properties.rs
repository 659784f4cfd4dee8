use acutri::complex::are_isomorphic;
use acutri::fvector::dehn_sommerville;
use acutri::geometry::{dihedral_cosines, exact_integer_embedding, orient3d};
use acutri::io::{EmbeddingJson, MeshDocument};
use acutri::{Embedding, Simplex, SimplicialComplex};
use num_traits::Signed;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-10.0..10.0f64)
}

fn tet() -> impl Strategy<Value = [[f64; 3]; 4]> {
    prop::array::uniform4(point()).prop_filter("non-degenerate", |p| {
        orient3d(&p[0], &p[1], &p[2], &p[3]).abs() > 1.0
    })
}

/// Rotation from a (not necessarily unit) quaternion.
fn rotate(q: [f64; 4], p: [f64; 3]) -> [f64; 3] {
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|c| c / n);
    [
        (1.0 - 2.0 * (y * y + z * z)) * p[0] + 2.0 * (x * y - w * z) * p[1] + 2.0 * (x * z + w * y) * p[2],
        2.0 * (x * y + w * z) * p[0] + (1.0 - 2.0 * (x * x + z * z)) * p[1] + 2.0 * (y * z - w * x) * p[2],
        2.0 * (x * z - w * y) * p[0] + 2.0 * (y * z + w * x) * p[1] + (1.0 - 2.0 * (x * x + y * y)) * p[2],
    ]
}

fn small_int_point() -> impl Strategy<Value = [i128; 3]> {
    prop::array::uniform3(-1000i128..1000)
}

fn stellar_walk(base: SimplicialComplex, picks: &[(usize, usize)]) -> SimplicialComplex {
    let top = base.dim().unwrap();
    picks.iter().fold(base, |k, &(d, i)| {
        let d = 1 + d % top;
        let all = k.simplices(d);
        let s = all[i % all.len()].clone();
        k.stellar_subdivision(&s).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dihedral_cosines_ignore_rigid_motion_and_scale(
        p in tet(),
        q in prop::array::uniform4(0.1..1.0f64),
        shift in point(),
        s in 0.1..10.0f64,
    ) {
        let moved = p.map(|x| {
            let r = rotate(q, x);
            [r[0] * s + shift[0], r[1] * s + shift[1], r[2] * s + shift[2]]
        });
        let a = dihedral_cosines([&p[0], &p[1], &p[2], &p[3]]).unwrap();
        let b = dihedral_cosines([&moved[0], &moved[1], &moved[2], &moved[3]]).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-7, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn orient3d_is_alternating_and_translation_invariant(
        p in prop::array::uniform4(small_int_point()),
        t in small_int_point(),
    ) {
        let o = orient3d(&p[0], &p[1], &p[2], &p[3]);
        prop_assert_eq!(orient3d(&p[1], &p[0], &p[2], &p[3]), -o);
        prop_assert_eq!(orient3d(&p[0], &p[1], &p[3], &p[2]), -o);
        prop_assert_eq!(orient3d(&p[1], &p[2], &p[3], &p[0]), -o);
        let m = p.map(|x| [x[0] + t[0], x[1] + t[1], x[2] + t[2]]);
        prop_assert_eq!(orient3d(&m[0], &m[1], &m[2], &m[3]), o);
    }

    #[test]
    fn stellar_subdivisions_keep_dehn_sommerville(
        base in 0usize..4,
        picks in prop::collection::vec((0usize..4, 0usize..1000), 0..4),
    ) {
        let (k, m, chi) = match base {
            0 => (SimplicialComplex::simplex(3), 3, 1),
            1 => (SimplicialComplex::simplex(4), 4, 1),
            2 => (SimplicialComplex::simplex_boundary(4), 3, 0),
            _ => (SimplicialComplex::simplex_boundary(5), 4, 2),
        };
        let k = stellar_walk(k, &picks);
        let r = dehn_sommerville(&k, m).unwrap();
        prop_assert!(r.holds(), "residuals {:?}", r.residuals);
        prop_assert_eq!(k.euler_characteristic(), chi);
    }

    #[test]
    fn relabelled_complexes_are_isomorphic(
        picks in prop::collection::vec((0usize..3, 0usize..1000), 1..4),
        keys in prop::collection::vec(any::<u64>(), 16),
    ) {
        let k = stellar_walk(SimplicialComplex::simplex(3), &picks);
        // new label of v is the rank of keys[v]
        let mut order: Vec<u32> = (0..k.n_vertices() as u32).collect();
        order.sort_by_key(|&v| (keys[v as usize], v));
        let mut p = vec![0; order.len()];
        for (rank, &v) in order.iter().enumerate() {
            p[v as usize] = rank as u32;
        }
        let l = k.relabel(&p);
        let iso = are_isomorphic(&k, &l).expect("isomorphic");
        for t in k.simplices(3) {
            let image = Simplex::new(t.iter().map(|v| iso[v as usize])).unwrap();
            prop_assert!(l.contains(&image));
        }
    }

    #[test]
    fn mesh_documents_round_trip(
        picks in prop::collection::vec((0usize..3, 0usize..1000), 0..3),
        seed in prop::collection::vec(small_int_point(), 12),
    ) {
        let k = stellar_walk(SimplicialComplex::simplex(3), &picks);
        let pts: Vec<[i128; 3]> = (0..k.n_vertices()).map(|i| seed[i % seed.len()]).collect();
        let e = Embedding::new(pts);
        let doc = MeshDocument::new(&k, "k", "random").with_embedding(EmbeddingJson::from_int(&e));
        let text = doc.to_json_string().unwrap();
        let back = MeshDocument::from_json_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.complex().unwrap(), k);
        prop_assert_eq!(back.to_json_string().unwrap(), text);
    }

    #[test]
    fn exact_integer_copy_keeps_orientation(p in prop::array::uniform4(point())) {
        let e = Embedding::new(p.to_vec());
        let z = exact_integer_embedding(&e).unwrap();
        let fo = orient3d(&p[0], &p[1], &p[2], &p[3]);
        let zo = orient3d(&z.points[0], &z.points[1], &z.points[2], &z.points[3]);
        // the float determinant is only trusted away from zero
        if fo.abs() > 1e-6 {
            prop_assert_eq!(fo > 0.0, zo.is_positive());
        }
    }
}
