use acutri::appendix::{assemble_cube, assemble_octahedron, load_reference, reconstruct, Reference};
use acutri::flatten::{acute_scale_interval, step1_realization};
use acutri::io::{EmbeddingJson, MeshDocument};
use acutri::polytope600::{
    build_platonic_cones, build_w, build_y, face_template, generate_600_cell, special_subdivision,
    x543_template, PlatonicSolid,
};
use anyhow::Result;
use clap::ValueEnum;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Target {
    #[value(name = "600cell")]
    Cell600,
    X543,
    FaceTemplate,
    #[value(name = "W")]
    W,
    #[value(name = "Wstar")]
    WStar,
    #[value(name = "Y")]
    Y,
    #[value(name = "Ystar")]
    YStar,
    CubeAcute,
    OctaAcute,
    RefT0,
    RefT1,
    IcosaCones,
    DodecaCones,
}

pub fn generate(target: Target) -> Result<MeshDocument> {
    let doc = match target {
        Target::Cell600 => {
            let (k, e) = generate_600_cell()?;
            MeshDocument::new(&k, "600cell", "unit icosians, edges at distance 1/phi")
                .with_embedding(EmbeddingJson::from_qsqrt5(&e))
        }
        Target::X543 => {
            let t = x543_template();
            let scale = acute_scale_interval(5.0, 7.5, 0.0)?.best;
            MeshDocument::new(
                &t.complex,
                "x543",
                &format!("600-cell minus the star of a cell, projected onto T0 at circumradius {scale}"),
            )
            .with_embedding(EmbeddingJson::from_f64(&step1_realization(scale)?))
        }
        Target::FaceTemplate => MeshDocument::new(&face_template(), "face-template", "X543 restricted to a face"),
        Target::W => {
            let (k, e) = build_w()?;
            MeshDocument::new(&k, "W", "cube split into a central tetrahedron and four corners")
                .with_embedding(EmbeddingJson::from_int(&e))
        }
        Target::Y => {
            let (k, e) = build_y()?;
            MeshDocument::new(&k, "Y", "cone over the octahedron boundary")
                .with_embedding(EmbeddingJson::from_int(&e))
        }
        Target::WStar => {
            let s = special_subdivision(&build_w()?.0)?;
            MeshDocument::new(&s.child, "Wstar", "special subdivision of W")
        }
        Target::YStar => {
            let s = special_subdivision(&build_y()?.0)?;
            MeshDocument::new(&s.child, "Ystar", "special subdivision of Y")
        }
        Target::CubeAcute => {
            let a = assemble_cube()?;
            MeshDocument::new(&a.complex, "cube-acute", "one T0 and four T1 appendix tables glued in a cube")
                .with_embedding(EmbeddingJson::from_int(&a.embedding))
        }
        Target::OctaAcute => {
            let a = assemble_octahedron()?;
            MeshDocument::new(&a.complex, "octa-acute", "eight T1 appendix tables glued in an octahedron")
                .with_embedding(EmbeddingJson::from_int(&a.embedding))
        }
        Target::RefT0 | Target::RefT1 => {
            let which = if target == Target::RefT0 { Reference::T0 } else { Reference::T1 };
            let (k, e) = reconstruct(&load_reference(which))?;
            let name = format!("ref-{}", which.name().to_lowercase());
            MeshDocument::new(&k, &name, &format!("appendix table {}", which.name()))
                .with_embedding(EmbeddingJson::from_int(&e))
        }
        Target::IcosaCones | Target::DodecaCones => {
            let (solid, name) = match target {
                Target::IcosaCones => (PlatonicSolid::Icosahedron, "icosa-cones"),
                _ => (PlatonicSolid::Dodecahedron, "dodeca-cones"),
            };
            let (k, e) = build_platonic_cones(solid)?;
            MeshDocument::new(&k, name, "cones from the centre over the triangulated boundary")
                .with_embedding(EmbeddingJson::from_qsqrt5(&e))
        }
    };
    Ok(doc)
}
