use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    acute_scale_interval, classify_roles, boundary_template_roles, step1_realization, FlattenConfig,
    FlattenError, FlattenState, VertexRole, FRAME_T0,
};
use crate::complex::{SimplicialComplex, VertexId};
use crate::geometry::vec3::{add, cross, dot, norm, scale, sub};
use crate::geometry::{dihedral_cosines, orient3d, verify_acute, Embedding};
use crate::polytope600::{x543_template, TemplateRole};

/// Shortest edge length of any T0 face, used to normalise plane distances.
const BASE_EDGE: f64 = std::f64::consts::SQRT_2;
/// Pairs whose cosine is within this of the worst one are repaired together.
const ACTIVE_BAND: f64 = 2e-3;
const HALVINGS: usize = 20;
const RANDOM_TRIES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step: usize,
    pub t: f64,
    /// 0 right after the prescribed move, then one row per accepted
    /// correction.
    pub iter: usize,
    pub worst_cosine: f64,
}

/// The fixed combinatorial frame of the homotopy.
#[derive(Debug, Clone)]
pub struct Flattener {
    pub complex: SimplicialComplex,
    pub roles: Vec<VertexRole>,
    pub template_roles: Vec<TemplateRole>,
    pub corners: [VertexId; 4],
    pub apex: usize,
    tets: Vec<[VertexId; 4]>,
    vertex_tets: Vec<Vec<usize>>,
    orientation: Vec<f64>,
    start: Embedding<f64, 3>,
    base_centre: [f64; 3],
}

fn tet_points(e: &Embedding<f64, 3>, t: &[VertexId; 4]) -> [[f64; 3]; 4] {
    t.map(|v| e.points[v as usize])
}

fn signed_volume(p: &[[f64; 3]; 4]) -> f64 {
    orient3d(&p[0], &p[1], &p[2], &p[3])
}

fn tet_cosines(p: &[[f64; 3]; 4]) -> [f64; 6] {
    dihedral_cosines([&p[0], &p[1], &p[2], &p[3]]).unwrap_or([-1.0; 6])
}

fn min6(c: &[f64; 6]) -> f64 {
    c.iter().copied().fold(f64::INFINITY, f64::min)
}

impl Flattener {
    /// `start` is an acute realization of `complex` on `T0` (corner `i` of
    /// the template at `FRAME_T0[i]`).
    pub fn new(
        complex: SimplicialComplex,
        corners: [VertexId; 4],
        apex: usize,
        start: Embedding<f64, 3>,
    ) -> Result<Self, FlattenError> {
        start.check_size(complex.n_vertices())?;
        let roles = classify_roles(&complex, corners, corners[apex])?;
        let template_roles = boundary_template_roles(&complex, corners)?;
        Ok(Self::assemble(complex, roles, template_roles, corners, apex, start))
    }

    fn assemble(
        complex: SimplicialComplex,
        roles: Vec<VertexRole>,
        template_roles: Vec<TemplateRole>,
        corners: [VertexId; 4],
        apex: usize,
        start: Embedding<f64, 3>,
    ) -> Self {
        let tets: Vec<[VertexId; 4]> = complex
            .simplices(3)
            .iter()
            .map(|s| [s[0], s[1], s[2], s[3]])
            .collect();
        let mut vertex_tets = vec![Vec::new(); complex.n_vertices()];
        for (i, t) in tets.iter().enumerate() {
            for &v in t {
                vertex_tets[v as usize].push(i);
            }
        }
        let orientation = tets
            .iter()
            .map(|t| signed_volume(&tet_points(&start, t)).signum())
            .collect();
        let base: Vec<[f64; 3]> = (0..4).filter(|&i| i != apex).map(|i| FRAME_T0[i]).collect();
        let base_centre = scale(add(add(base[0], base[1]), base[2]), 1.0 / 3.0);
        Self {
            complex,
            roles,
            template_roles,
            corners,
            apex,
            tets,
            vertex_tets,
            orientation,
            start,
            base_centre,
        }
    }

    /// A frame with given roles and no template structure, for repairing
    /// angles of arbitrary 3-complexes. Face-constrained roles (`D`, `F`)
    /// need a template and are rejected.
    pub fn with_roles(
        complex: SimplicialComplex,
        roles: Vec<VertexRole>,
        start: Embedding<f64, 3>,
    ) -> Result<Self, FlattenError> {
        start.check_size(complex.n_vertices())?;
        if roles.len() != complex.n_vertices() {
            return Err(FlattenError::InvalidConfig(format!(
                "{} roles for {} vertices",
                roles.len(),
                complex.n_vertices()
            )));
        }
        if roles.iter().any(|r| matches!(r, VertexRole::D | VertexRole::F)) {
            return Err(FlattenError::InvalidConfig("face roles need a template".into()));
        }
        let template_roles = vec![TemplateRole::Interior; complex.n_vertices()];
        Ok(Self::assemble(complex, roles, template_roles, [0, 1, 2, 3], 0, start))
    }

    /// The apex moves straight towards the base until its height is
    /// halved, which makes the three faces through it right-angled.
    pub fn apex_position(&self, t: f64) -> [f64; 3] {
        let a0 = FRAME_T0[self.apex];
        add(self.base_centre, scale(sub(a0, self.base_centre), 1.0 - 0.5 * t))
    }

    fn corner_position(&self, i: usize, t: f64) -> [f64; 3] {
        if i == self.apex {
            self.apex_position(t)
        } else {
            FRAME_T0[i]
        }
    }

    /// Corners (template indices) of the face carrying a D or F vertex.
    fn carrier_face(&self, v: VertexId) -> Option<[u8; 3]> {
        match self.template_roles[v as usize] {
            TemplateRole::Face { face, .. } => Some(face),
            _ => None,
        }
    }

    fn face_plane(&self, face: [u8; 3], t: f64) -> ([f64; 3], [f64; 3]) {
        let p = face.map(|c| self.corner_position(c as usize, t));
        let n = cross(sub(p[1], p[0]), sub(p[2], p[0]));
        (p[0], scale(n, 1.0 / norm(n)))
    }

    /// Incircle touch point on the edge from the apex to base corner `b`.
    fn apex_edge_point(&self, b: usize, t: f64) -> [f64; 3] {
        let a = self.apex_position(t);
        let bp = FRAME_T0[b];
        let leg = norm(sub(bp, a));
        let d = (2.0 * leg - BASE_EDGE) / 2.0;
        add(a, scale(sub(bp, a), d / leg))
    }

    fn worst_cosine_of(&self, e: &Embedding<f64, 3>) -> f64 {
        self.tets
            .iter()
            .map(|t| min6(&tet_cosines(&tet_points(e, t))))
            .fold(f64::INFINITY, f64::min)
    }

    /// Tetrahedra whose orientation differs from the starting one.
    pub fn inverted(&self, e: &Embedding<f64, 3>) -> Vec<usize> {
        (0..self.tets.len())
            .filter(|&i| signed_volume(&tet_points(e, &self.tets[i])) * self.orientation[i] <= 0.0)
            .collect()
    }

    pub fn initial_state(&self) -> FlattenState {
        FlattenState {
            t: 0.0,
            embedding: self.start.clone(),
            roles: self.roles.clone(),
            worst_cosine: self.worst_cosine_of(&self.start),
        }
    }

    /// Reflection through the base plane, which carries the flattened
    /// tetrahedron onto the standard one with its right angle at the
    /// original position of `T1`'s corner.
    pub fn to_standard_frame(&self, e: &Embedding<f64, 3>) -> Embedding<f64, 3> {
        let face: Vec<u8> = (0..4u8).filter(|&i| i as usize != self.apex).collect();
        let (o, n) = self.face_plane([face[0], face[1], face[2]], 0.0);
        Embedding::new(
            e.points
                .iter()
                .map(|&p| sub(p, scale(n, 2.0 * dot(sub(p, o), n))))
                .collect(),
        )
    }
}

/// Positions at parameter `t` from the state `prev`: `A`, `C` prescribed,
/// `B`, `E`, `F` kept, `D` carried along with their faces (fixed
/// barycentric coordinates), interior moved by the similarity
/// (scale + translation) best matching the boundary motion.
pub fn prescribe_positions(fl: &Flattener, prev: &FlattenState, t: f64) -> Embedding<f64, 3> {
    let old = &prev.embedding.points;
    let mut new = old.clone();
    for (v, role) in fl.roles.iter().enumerate() {
        match (role, fl.template_roles[v]) {
            (VertexRole::A, _) => new[v] = fl.apex_position(t),
            (VertexRole::C, TemplateRole::Edge(e)) => {
                let b = e.iter().find(|&&c| c as usize != fl.apex).copied().unwrap_or(e[0]);
                new[v] = fl.apex_edge_point(b as usize, t);
            }
            (VertexRole::D, TemplateRole::Face { face, .. }) => {
                let p0 = face.map(|c| fl.corner_position(c as usize, prev.t));
                let p1 = face.map(|c| fl.corner_position(c as usize, t));
                let w = barycentric(old[v], p0);
                new[v] = (0..3).fold([0.0; 3], |s, i| add(s, scale(p1[i], w[i])));
            }
            _ => {}
        }
    }
    // least-squares scale and translation from the boundary motion
    let bd: Vec<usize> = (0..old.len()).filter(|&v| !fl.roles[v].is_interior()).collect();
    let centroid = |pts: &Vec<[f64; 3]>| {
        scale(bd.iter().fold([0.0; 3], |s, &v| add(s, pts[v])), 1.0 / bd.len() as f64)
    };
    let (mo, mn) = (centroid(old), centroid(&new));
    let num: f64 = bd.iter().map(|&v| dot(sub(old[v], mo), sub(new[v], mn))).sum();
    let den: f64 = bd.iter().map(|&v| dot(sub(old[v], mo), sub(old[v], mo))).sum();
    let s = num / den;
    for (v, role) in fl.roles.iter().enumerate() {
        if role.is_interior() {
            new[v] = add(mn, scale(sub(old[v], mo), s));
        }
    }
    Embedding::new(new)
}

/// Barycentric coordinates of `p` (assumed in the plane) w.r.t. `tri`.
fn barycentric(p: [f64; 3], tri: [[f64; 3]; 3]) -> [f64; 3] {
    let n = cross(sub(tri[1], tri[0]), sub(tri[2], tri[0]));
    let nn = dot(n, n);
    let w1 = dot(cross(sub(p, tri[0]), sub(tri[2], tri[0])), n) / nn;
    let w2 = dot(cross(sub(tri[1], tri[0]), sub(p, tri[0])), n) / nn;
    [1.0 - w1 - w2, w1, w2]
}

/// Largest deviation from the role constraints at parameter `t`: frozen
/// vertices from their prescribed points, face vertices from their planes
/// (relative to the base edge length).
pub fn constraint_violation(fl: &Flattener, state: &FlattenState) -> f64 {
    let t = state.t;
    let pts = &state.embedding.points;
    let mut worst: f64 = 0.0;
    for (v, role) in fl.roles.iter().enumerate() {
        let dev = match (role, fl.template_roles[v]) {
            (VertexRole::A, _) => norm(sub(pts[v], fl.apex_position(t))),
            (VertexRole::B, TemplateRole::Corner(c)) => norm(sub(pts[v], FRAME_T0[c as usize])),
            (VertexRole::C, TemplateRole::Edge(e)) => {
                let b = e.iter().find(|&&c| c as usize != fl.apex).copied().unwrap_or(e[0]);
                norm(sub(pts[v], fl.apex_edge_point(b as usize, t)))
            }
            (VertexRole::E, _) => norm(sub(pts[v], fl.start.points[v])),
            (VertexRole::D | VertexRole::F, TemplateRole::Face { face, .. }) => {
                let (o, n) = fl.face_plane(face, t);
                dot(sub(pts[v], o), n).abs() / BASE_EDGE
            }
            _ => 0.0,
        };
        worst = worst.max(dev);
    }
    worst
}

struct Workspace<'a> {
    fl: &'a Flattener,
    pts: Vec<[f64; 3]>,
    cos: Vec<[f64; 6]>,
    core: Vec<VertexId>,
}

impl<'a> Workspace<'a> {
    fn new(fl: &'a Flattener, e: &Embedding<f64, 3>) -> Self {
        let pts = e.points.clone();
        let cos = fl.tets.iter().map(|t| tet_cosines(&t.map(|v| pts[v as usize]))).collect();
        let core = (0..pts.len() as VertexId)
            .filter(|&v| fl.roles[v as usize] == VertexRole::Core)
            .collect();
        Self { fl, pts, cos, core }
    }

    fn worst(&self) -> f64 {
        self.cos.iter().map(min6).fold(f64::INFINITY, f64::min)
    }

    fn active_pairs(&self, band: f64) -> Vec<(usize, usize)> {
        let w = self.worst();
        let mut out = Vec::new();
        for (ti, c) in self.cos.iter().enumerate() {
            for (e, &x) in c.iter().enumerate() {
                if x <= w + band {
                    out.push((ti, e));
                }
            }
        }
        out
    }

    /// Gradient of one dihedral cosine w.r.t. the four vertex positions.
    fn pair_gradient(&self, ti: usize, e: usize) -> [[f64; 3]; 4] {
        let t = self.fl.tets[ti];
        let p = t.map(|v| self.pts[v as usize]);
        let h = 1e-7 * norm(sub(p[1], p[0])).max(1e-12);
        std::array::from_fn(|i| {
            std::array::from_fn(|c| {
                let mut q = p;
                q[i][c] += h;
                let up = tet_cosines(&q)[e];
                q[i][c] -= 2.0 * h;
                let down = tet_cosines(&q)[e];
                (up - down) / (2.0 * h)
            })
        })
    }

    fn project(&self, v: VertexId, g: [f64; 3], t: f64) -> [f64; 3] {
        match self.fl.roles[v as usize] {
            r if r.is_frozen() => [0.0; 3],
            VertexRole::D | VertexRole::F => {
                let face = self.fl.carrier_face(v).expect("face vertex");
                let (_, n) = self.fl.face_plane(face, t);
                sub(g, scale(n, dot(g, n)))
            }
            _ => g,
        }
    }

    fn core_centre(&self) -> [f64; 3] {
        let s = self.core.iter().fold([0.0; 3], |s, &v| add(s, self.pts[v as usize]));
        scale(s, 1.0 / self.core.len().max(1) as f64)
    }

    /// Projected gradient of one pair as a sparse vector over the free
    /// coordinates: `3v + c` for non-core vertices, then the core block's
    /// translation and scale at `3n..3n + 4`.
    fn pair_vector(&self, ti: usize, e: usize, t: f64, centre: [f64; 3]) -> Vec<(usize, f64)> {
        let g = self.pair_gradient(ti, e);
        let n = self.pts.len();
        let mut out = Vec::with_capacity(16);
        let mut block = [0.0; 4];
        for (i, &v) in self.fl.tets[ti].iter().enumerate() {
            if self.fl.roles[v as usize] == VertexRole::Core {
                for c in 0..3 {
                    block[c] += g[i][c];
                }
                block[3] += dot(g[i], sub(self.pts[v as usize], centre));
            } else {
                let d = self.project(v, g[i], t);
                out.extend((0..3).map(|c| (3 * v as usize + c, d[c])));
            }
        }
        out.extend((0..4).map(|c| (3 * n + c, block[c])));
        out.retain(|&(_, x)| x != 0.0);
        out
    }

    /// Common ascent direction for a set of pairs: the point of smallest
    /// norm in the convex hull of their normalised projected gradients,
    /// which raises every one of them at first order. The core moves as
    /// one block (translation and uniform scaling).
    fn direction(&self, pairs: &[(usize, usize)], t: f64) -> BTreeMap<VertexId, [f64; 3]> {
        let centre = self.core_centre();
        let n = self.pts.len();
        let grads: Vec<Vec<(usize, f64)>> = pairs
            .iter()
            .map(|&(ti, e)| {
                let mut g = self.pair_vector(ti, e, t, centre);
                let len = g.iter().map(|(_, x)| x * x).sum::<f64>().sqrt();
                g.iter_mut().for_each(|(_, x)| *x /= len);
                g
            })
            .filter(|g| g.iter().all(|(_, x)| x.is_finite()) && !g.is_empty())
            .collect();
        let mut x = vec![0.0; 3 * n + 4];
        if grads.is_empty() {
            return BTreeMap::new();
        }
        let inner = |g: &[(usize, f64)], x: &[f64]| g.iter().map(|&(i, v)| v * x[i]).sum::<f64>();
        for &(i, v) in &grads[0] {
            x[i] = v;
        }
        // Gilbert's algorithm
        for _ in 0..400 {
            let xx: f64 = x.iter().map(|v| v * v).sum();
            let (k, gx) = grads
                .iter()
                .enumerate()
                .map(|(k, g)| (k, inner(g, &x)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty");
            if xx - gx <= 1e-10 * xx.max(1e-300) {
                break;
            }
            let gg: f64 = grads[k].iter().map(|(_, v)| v * v).sum();
            // minimise |x + a (g - x)|² over a in [0, 1]
            let denom = xx - 2.0 * gx + gg;
            let a = ((xx - gx) / denom).clamp(0.0, 1.0);
            x.iter_mut().for_each(|v| *v *= 1.0 - a);
            for &(i, v) in &grads[k] {
                x[i] += a * v;
            }
        }
        let mut dir: BTreeMap<VertexId, [f64; 3]> = BTreeMap::new();
        for v in 0..n {
            let d = [x[3 * v], x[3 * v + 1], x[3 * v + 2]];
            if dot(d, d) > 0.0 {
                dir.insert(v as VertexId, d);
            }
        }
        let (bt, bs) = ([x[3 * n], x[3 * n + 1], x[3 * n + 2]], x[3 * n + 3]);
        if dot(bt, bt) + bs * bs > 0.0 {
            for &v in &self.core {
                dir.insert(v, add(bt, scale(sub(self.pts[v as usize], centre), bs)));
            }
        }
        dir
    }

    fn min_edge(&self, pairs: &[(usize, usize)]) -> f64 {
        let mut m = f64::INFINITY;
        for &(ti, _) in pairs {
            let p = self.fl.tets[ti].map(|v| self.pts[v as usize]);
            for i in 0..4 {
                for j in i + 1..4 {
                    m = m.min(norm(sub(p[i], p[j])));
                }
            }
        }
        m
    }

    /// Tries `pts + h·dir`; keeps it if no tetrahedron flips and the worst
    /// cosine strictly increases.
    fn try_move(&mut self, dir: &BTreeMap<VertexId, [f64; 3]>, h: f64, t: f64) -> bool {
        let before = self.worst();
        let mut moved: Vec<(VertexId, [f64; 3])> = Vec::with_capacity(dir.len());
        for (&v, &d) in dir {
            let mut p = add(self.pts[v as usize], scale(d, h));
            if let Some(face) = self.fl.carrier_face(v) {
                let (o, n) = self.fl.face_plane(face, t);
                p = sub(p, scale(n, dot(sub(p, o), n)));
            }
            moved.push((v, p));
        }
        let mut touched: Vec<usize> = moved
            .iter()
            .flat_map(|(v, _)| self.fl.vertex_tets[*v as usize].iter().copied())
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let saved: Vec<(VertexId, [f64; 3])> =
            moved.iter().map(|(v, _)| (*v, self.pts[*v as usize])).collect();
        for (v, p) in &moved {
            self.pts[*v as usize] = *p;
        }
        let mut fresh = Vec::with_capacity(touched.len());
        let mut ok = true;
        for &ti in &touched {
            let p = self.fl.tets[ti].map(|v| self.pts[v as usize]);
            if signed_volume(&p) * self.fl.orientation[ti] <= 0.0 {
                ok = false;
                break;
            }
            fresh.push((ti, tet_cosines(&p)));
        }
        if ok {
            let old: Vec<(usize, [f64; 6])> = fresh.iter().map(|(ti, _)| (*ti, self.cos[*ti])).collect();
            for (ti, c) in &fresh {
                self.cos[*ti] = *c;
            }
            if self.worst() > before {
                return true;
            }
            for (ti, c) in old {
                self.cos[ti] = c;
            }
        }
        for (v, p) in saved {
            self.pts[v as usize] = p;
        }
        false
    }

    fn line_search(&mut self, dir: &BTreeMap<VertexId, [f64; 3]>, h0: f64, t: f64) -> bool {
        let longest = dir.values().map(|d| norm(*d)).fold(0.0, f64::max);
        if longest <= 0.0 {
            return false;
        }
        let unit: BTreeMap<VertexId, [f64; 3]> =
            dir.iter().map(|(&v, &d)| (v, scale(d, 1.0 / longest))).collect();
        let mut h = h0;
        for _ in 0..HALVINGS {
            if self.try_move(&unit, h, t) {
                return true;
            }
            h *= 0.5;
        }
        false
    }
}

pub(crate) fn correct_with(
    fl: &Flattener,
    state: &mut FlattenState,
    config: &FlattenConfig,
    rng: &mut ChaCha8Rng,
    step: usize,
    trace: &mut Vec<TraceRow>,
) -> Result<usize, FlattenError> {
    let threshold = config.acute_margin_deg.to_radians().sin();
    let t = state.t;
    let mut ws = Workspace::new(fl, &state.embedding);
    let mut iters = 0;
    let finish = |ws: &Workspace, state: &mut FlattenState| {
        state.embedding = Embedding::new(ws.pts.clone());
        state.worst_cosine = ws.worst();
    };
    while ws.worst() <= threshold {
        if iters >= config.correction_max_iters {
            finish(&ws, state);
            return Err(FlattenError::Stalled {
                t,
                worst_cosine: state.worst_cosine,
            });
        }
        let active = ws.active_pairs(ACTIVE_BAND);
        let h0 = config.correction_step * ws.min_edge(&active);
        let mut accepted = ws.line_search(&ws.direction(&active, t), h0, t);
        if !accepted {
            let single = ws.active_pairs(0.0);
            accepted = ws.line_search(&ws.direction(&single[..1], t), h0, t);
        }
        let mut tries = 0;
        while !accepted && tries < RANDOM_TRIES {
            tries += 1;
            let (ti, _) = ws.active_pairs(0.0)[0];
            let mut dir = BTreeMap::new();
            for v in fl.tets[ti] {
                let g: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
                let d = ws.project(v, g, t);
                if dot(d, d) > 0.0 && fl.roles[v as usize] != VertexRole::Core {
                    dir.insert(v, d);
                }
            }
            accepted = ws.line_search(&dir, h0, t);
        }
        if !accepted {
            finish(&ws, state);
            return Err(FlattenError::Stalled {
                t,
                worst_cosine: state.worst_cosine,
            });
        }
        iters += 1;
        trace.push(TraceRow {
            step,
            t,
            iter: iters,
            worst_cosine: ws.worst(),
        });
    }
    finish(&ws, state);
    Ok(iters)
}

/// Repairs the angles of `state` until every angle is below
/// `90 − acute_margin_deg`. Each accepted iteration strictly increases
/// the worst cosine; returns the state and the accepted iterations.
pub fn correct_angles(
    fl: &Flattener,
    state: FlattenState,
    config: &FlattenConfig,
) -> Result<(FlattenState, Vec<TraceRow>), FlattenError> {
    config.validate()?;
    let mut state = state;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trace = Vec::new();
    correct_with(fl, &mut state, config, &mut rng, 0, &mut trace)?;
    Ok((state, trace))
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlattenOutcome {
    /// Acute realization on the standard tetrahedron, right angle at the
    /// apex, in the frame of the published `T1` table (divided by its
    /// side).
    Converged { embedding: Embedding<f64, 3> },
    Stalled { t: f64, worst_cosine: f64 },
}

#[derive(Debug, Clone)]
pub struct FlattenRun {
    pub outcome: FlattenOutcome,
    /// Last state of the homotopy (in the `T0` frame).
    pub state: FlattenState,
    pub trace: Vec<TraceRow>,
    pub step1_scale: f64,
    pub flattener: Flattener,
}

impl FlattenRun {
    pub fn converged(&self) -> bool {
        matches!(self.outcome, FlattenOutcome::Converged { .. })
    }
}

/// Runs the flattening homotopy from the Step-1 realization.
pub fn run_flatten(config: &FlattenConfig) -> Result<FlattenRun, FlattenError> {
    config.validate()?;
    let scale = match config.step1_scale {
        Some(s) => s,
        None => acute_scale_interval(5.0, 7.5, 0.0)?.best,
    };
    let start = step1_realization(scale)?;
    let tpl = x543_template();
    let fl = Flattener::new(tpl.complex.clone(), [0, 1, 2, 3], config.apex as usize, start)?;
    let mut state = fl.initial_state();
    let mut trace = vec![TraceRow {
        step: 0,
        t: 0.0,
        iter: 0,
        worst_cosine: state.worst_cosine,
    }];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let stalled = |state: &FlattenState| FlattenOutcome::Stalled {
        t: state.t,
        worst_cosine: state.worst_cosine,
    };
    for step in 1..=config.n_steps {
        let t = step as f64 / config.n_steps as f64;
        let emb = prescribe_positions(&fl, &state, t);
        state = FlattenState {
            t,
            worst_cosine: fl.worst_cosine_of(&emb),
            embedding: emb,
            roles: state.roles,
        };
        trace.push(TraceRow {
            step,
            t,
            iter: 0,
            worst_cosine: state.worst_cosine,
        });
        if !fl.inverted(&state.embedding).is_empty() {
            let outcome = stalled(&state);
            return Ok(FlattenRun { outcome, state, trace, step1_scale: scale, flattener: fl });
        }
        if let Err(e) = correct_with(&fl, &mut state, config, &mut rng, step, &mut trace) {
            return match e {
                FlattenError::Stalled { .. } => {
                    let outcome = stalled(&state);
                    Ok(FlattenRun { outcome, state, trace, step1_scale: scale, flattener: fl })
                }
                other => Err(other),
            };
        }
    }
    let report = verify_acute(&fl.complex, &state.embedding, 1e-6)?;
    let outcome = if report.is_acute() && fl.inverted(&state.embedding).is_empty() {
        FlattenOutcome::Converged {
            embedding: fl.to_standard_frame(&state.embedding),
        }
    } else {
        stalled(&state)
    };
    Ok(FlattenRun {
        outcome,
        state,
        trace,
        step1_scale: scale,
        flattener: fl,
    })
}
