//! SO(3) gauge sector: algebra action, field strength, Yang-Mills energy,
//! singular disclination potentials and the defect-deformed reference metric.
//!
//! The so(3) algebra acts on R^3 vectors in the adjoint representation,
//! realized as the cross product: [w, r] = w x r.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::{ScalarField, Vec3Field};
use crate::geometry::{covariant_green_function, Embedding, GreenOpts, GreenSource, MetricField};
use crate::grid::{Grid, Parity, Topology};
use crate::stencil;

/// A single disclination: parametric center and Frank index.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DisclinationSpec {
    pub center: (f64, f64),
    /// Dimensionless signed defect strength; 1/6 models a 5-fold site on a
    /// 6-coordinated membrane.
    pub frank_index: f64,
}

impl DisclinationSpec {
    pub fn new(center: (f64, f64), frank_index: f64) -> Self {
        DisclinationSpec {
            center,
            frank_index,
        }
    }
}

/// Registry entry for a vortex center where the potential is singular.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SingularPoint {
    pub center: (f64, f64),
    /// Grid node carrying the singularity, if any (the disk apex is excised
    /// and carries none).
    pub node: Option<(usize, usize)>,
    pub frank_index: f64,
}

/// Whether a gauge field is a dynamical unknown or the fixed reference
/// configuration describing originally distributed defects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GaugeRole {
    Dynamical,
    Reference,
}

/// R^3-valued gauge one-form per node: components (W_u, W_v).
#[derive(Debug, Clone)]
pub struct GaugeField {
    pub grid: Grid,
    /// w[node] = [W_u, W_v], each an R^3 vector.
    pub w: Vec<[Vector3<f64>; 2]>,
    pub role: GaugeRole,
    pub singular: Vec<SingularPoint>,
}

impl GaugeField {
    pub fn zeros(grid: &Grid) -> Self {
        GaugeField {
            grid: grid.clone(),
            w: vec![[Vector3::zeros(); 2]; grid.node_count()],
            role: GaugeRole::Dynamical,
            singular: Vec::new(),
        }
    }

    /// z components of (W_u, W_v) as scalar vectors; errors when the field is
    /// not abelian (in-plane algebra components present).
    pub fn abelian_components(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut max_inplane = 0.0_f64;
        for w in &self.w {
            for a in 0..2 {
                max_inplane = max_inplane.max(w[a].x.abs()).max(w[a].y.abs());
            }
        }
        let scale: f64 = self
            .w
            .iter()
            .map(|w| w[0].z.abs().max(w[1].z.abs()))
            .fold(0.0, f64::max);
        if max_inplane > 1e-10 * (1.0 + scale) {
            return Err(CoreError::NonAbelianGauge { max_inplane });
        }
        Ok((
            self.w.iter().map(|w| w[0].z).collect(),
            self.w.iter().map(|w| w[1].z).collect(),
        ))
    }
}

/// Antisymmetric field strength; only F_uv is stored (F_vu = -F_uv).
#[derive(Debug, Clone)]
pub struct FieldStrength {
    pub grid: Grid,
    pub f_uv: Vec3Field,
    pub singular: Vec<SingularPoint>,
}

impl FieldStrength {
    /// F_ab with explicit index order; a, b in {0 = u, 1 = v}.
    pub fn at(&self, idx: usize, a: usize, b: usize) -> Vector3<f64> {
        match (a, b) {
            (0, 1) => self.f_uv.data[idx],
            (1, 0) => -self.f_uv.data[idx],
            _ => Vector3::zeros(),
        }
    }
}

/// Adjoint action of so(3) on R^3: [w, r] = w x r.
pub fn algebra_action(w: Vector3<f64>, r: Vector3<f64>) -> Vector3<f64> {
    w.cross(&r)
}

/// Gauge-covariant derivative of the embedding: nabla_a R = d_a R + W_a x R.
pub fn gauge_covariant_derivative(w: &GaugeField, e: &Embedding) -> (Vec3Field, Vec3Field) {
    let (mut tu, mut tv) = e.tangents();
    for idx in 0..e.grid.node_count() {
        let r = e.positions.data[idx];
        tu.data[idx] += w.w[idx][0].cross(&r);
        tv.data[idx] += w.w[idx][1].cross(&r);
    }
    (tu, tv)
}

/// F_uv = d_u W_v - d_v W_u + W_u x W_v with centered differences.
pub fn field_strength(w: &GaugeField) -> FieldStrength {
    let grid = &w.grid;
    let n = grid.node_count();
    let mut f = Vec3Field::zeros(grid);
    // component-wise derivatives; across a pole fold W_u is even, W_v odd
    for k in 0..3 {
        let wu: Vec<f64> = w.w.iter().map(|x| x[0][k]).collect();
        let wv: Vec<f64> = w.w.iter().map(|x| x[1][k]).collect();
        let du_wv = stencil::deriv_u(grid, &wv, Parity::Odd);
        let dv_wu = stencil::deriv_v(grid, &wu, Parity::Even);
        for idx in 0..n {
            f.data[idx][k] = du_wv[idx] - dv_wu[idx];
        }
    }
    for idx in 0..n {
        let cross = w.w[idx][0].cross(&w.w[idx][1]);
        f.data[idx] += cross;
    }
    FieldStrength {
        grid: grid.clone(),
        f_uv: f,
        singular: w.singular.clone(),
    }
}

/// Result of an energy quadrature that may skip singular cores.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureReport {
    pub value: f64,
    pub skipped_nodes: usize,
    /// Set when a singular node sits inside the quadrature domain but no
    /// positive core cutoff was supplied: the discrete sum is then a
    /// cutoff-dependent stand-in for a divergent integral.
    pub unbounded_warning: bool,
}

/// Yang-Mills energy (s/4) int sqrt(g) F^ab . F_ab du dv, indices raised
/// with g^ab. Nodes within `core_radius` (metric distance) of a registered
/// singular point are excluded from the quadrature.
pub fn yang_mills_energy(
    f: &FieldStrength,
    m: &MetricField,
    s: f64,
    core_radius: f64,
) -> QuadratureReport {
    let grid = &f.grid;
    assert_eq!(grid.node_count(), m.grid.node_count());
    let mut value = 0.0;
    let mut skipped = 0;
    let mut unbounded = false;
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let idx = grid.index(i, j);
            if near_singular(grid, m, &f.singular, i, j, core_radius) {
                skipped += 1;
                continue;
            }
            if f.singular.iter().any(|sp| sp.node == Some((i, j))) {
                unbounded = true;
            }
            // F^{ab} F_ab = 2 det(g^-1) |F_uv|^2
            let det_ginv = m.g_inv[idx][0] * m.g_inv[idx][2] - m.g_inv[idx][1] * m.g_inv[idx][1];
            let f2 = f.f_uv.data[idx].norm_squared();
            value += grid.quad_weight(i, j) * m.sqrt_g[idx] * 0.5 * s * det_ginv * f2;
        }
    }
    QuadratureReport {
        value,
        skipped_nodes: skipped,
        unbounded_warning: unbounded,
    }
}

/// Metric distance (local approximation) from node (i, j) to any singular
/// center, compared against the cutoff.
pub(crate) fn near_singular(
    grid: &Grid,
    m: &MetricField,
    singular: &[SingularPoint],
    i: usize,
    j: usize,
    core_radius: f64,
) -> bool {
    if core_radius <= 0.0 || singular.is_empty() {
        return false;
    }
    let idx = grid.index(i, j);
    let (u, v) = (grid.u_coord(i), grid.v_coord(j));
    for sp in singular {
        let mut du = u - sp.center.0;
        if grid.u_periodic() {
            let span = grid.u_range.1 - grid.u_range.0;
            du -= span * (du / span).round();
        }
        let dv = v - sp.center.1;
        let g = m.g[idx];
        let d2 = g[0] * du * du + 2.0 * g[1] * du * dv + g[2] * dv * dv;
        if d2 < core_radius * core_radius {
            return true;
        }
    }
    false
}

/// Closed-form planar vortex potential (z components) at a Cartesian point:
/// W_b = -nu eps_bc d_c log r about the center.
pub fn flat_vortex_at(d: &DisclinationSpec, x: f64, y: f64) -> (f64, f64) {
    let dx = x - d.center.0;
    let dy = y - d.center.1;
    let r2 = dx * dx + dy * dy;
    // W_1 = -nu y / r^2, W_2 = nu x / r^2
    (-d.frank_index * dy / r2, d.frank_index * dx / r2)
}

/// Singular vortex solution of the planar gauge-field equation on a flat
/// grid. On Cartesian open patches the closed form about `d.center` is
/// sampled nodewise and the nearest node is registered as singular. On a
/// polar disk the defect must sit at the excised apex, where the same
/// one-form is exactly W_u = nu (angular component), W_v = 0, with no
/// singular node on the grid.
pub fn flat_vortex_potential(d: &DisclinationSpec, grid: &Grid) -> Result<GaugeField> {
    let mut gf = GaugeField::zeros(grid);
    if d.frank_index == 0.0 {
        return Ok(gf);
    }
    match grid.topology {
        Topology::DiskPolar => {
            if d.center.0.abs() > 1e-12 || d.center.1.abs() > 1e-12 {
                return Err(CoreError::InvalidParams(
                    "polar-disk vortex must be centered at the apex".into(),
                ));
            }
            for w in gf.w.iter_mut() {
                w[0] = Vector3::new(0.0, 0.0, d.frank_index);
            }
            gf.singular.push(SingularPoint {
                center: (0.0, 0.0),
                node: None,
                frank_index: d.frank_index,
            });
        }
        _ => {
            let mut best = (0usize, 0usize);
            let mut best_d = f64::INFINITY;
            for j in 0..grid.n_v {
                for i in 0..grid.n_u {
                    let (u, v) = (grid.u_coord(i), grid.v_coord(j));
                    let dd = (u - d.center.0).powi(2) + (v - d.center.1).powi(2);
                    if dd < best_d {
                        best_d = dd;
                        best = (i, j);
                    }
                    let idx = grid.index(i, j);
                    let (w1, w2) = flat_vortex_at(d, u, v);
                    gf.w[idx][0] = Vector3::new(0.0, 0.0, w1);
                    gf.w[idx][1] = Vector3::new(0.0, 0.0, w2);
                }
            }
            // a node exactly at the center got NaN; zero it and register
            let c = grid.index(best.0, best.1);
            if !gf.w[c][0].z.is_finite() || !gf.w[c][1].z.is_finite() {
                gf.w[c] = [Vector3::zeros(); 2];
            }
            gf.singular.push(SingularPoint {
                center: d.center,
                node: Some(best),
                frank_index: d.frank_index,
            });
        }
    }
    Ok(gf)
}

/// Circulation of the closed-form vortex along a circle of the given radius
/// about its center (trapezoid rule; spectrally accurate for this smooth
/// periodic integrand).
pub fn vortex_loop_integral(d: &DisclinationSpec, radius: f64, samples: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..samples {
        let t = std::f64::consts::TAU * k as f64 / samples as f64;
        let (x, y) = (d.center.0 + radius * t.cos(), d.center.1 + radius * t.sin());
        let (w1, w2) = flat_vortex_at(d, x, y);
        // dl = r (-sin t, cos t) dt
        acc += (w1 * (-t.sin()) + w2 * t.cos()) * radius;
    }
    acc * std::f64::consts::TAU / samples as f64
}

/// Covariant vortex potential W^b = -nu eps^{bc} D_c G with G the covariant
/// Green function of the metric; the index is lowered with g_ab.
pub fn covariant_vortex_potential(
    d: &DisclinationSpec,
    m: &MetricField,
    source: GreenSource,
    opts: &GreenOpts,
) -> Result<GaugeField> {
    let grid = &m.grid;
    let (green, _rep) = covariant_green_function(m, source, opts)?;
    let gu = stencil::deriv_u(grid, &green.data, Parity::Even);
    let gv = stencil::deriv_v(grid, &green.data, Parity::Even);
    let mut gf = GaugeField::zeros(grid);
    for idx in 0..grid.node_count() {
        let isg = 1.0 / m.sqrt_g[idx];
        // W^u = -nu/sqrt(g) d_v G ; W^v = +nu/sqrt(g) d_u G
        let wu_up = -d.frank_index * isg * gv[idx];
        let wv_up = d.frank_index * isg * gu[idx];
        let g = m.g[idx];
        let wu = g[0] * wu_up + g[1] * wv_up;
        let wv = g[1] * wu_up + g[2] * wv_up;
        gf.w[idx][0] = Vector3::new(0.0, 0.0, wu);
        gf.w[idx][1] = Vector3::new(0.0, 0.0, wv);
    }
    let node = match source {
        GreenSource::Node(i, j) => Some((i, j)),
        _ => None,
    };
    gf.singular.push(SingularPoint {
        center: d.center,
        node,
        frank_index: d.frank_index,
    });
    Ok(gf)
}

/// Disclination density eps^{ab} D_a W_b of an abelian gauge field,
/// discretized as plaquette circulation per unit area so that region
/// integrals telescope to boundary circulations exactly. Node values average
/// the adjacent plaquettes.
pub fn disclination_density(w: &GaugeField, m: &MetricField) -> Result<ScalarField> {
    let (wu, wv) = w.abelian_components()?;
    let grid = &w.grid;
    let (plaq, sg_plaq) = plaquette_circulation(grid, m, &wu, &wv);
    let mut out = ScalarField::zeros(grid);
    let area = grid.h_u() * grid.h_v();
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let mut acc = 0.0;
            let mut cnt = 0.0;
            for (pi, pj) in plaq_neighbors(grid, i, j) {
                let k = pj * grid.n_u + pi;
                if plaq[k].is_finite() && sg_plaq[k] > 0.0 {
                    acc += plaq[k] / (sg_plaq[k] * area);
                    cnt += 1.0;
                }
            }
            if cnt > 0.0 {
                out.data[grid.index(i, j)] = acc / cnt;
            }
        }
    }
    Ok(out)
}

/// Integral of the disclination density (with the area form) over the set of
/// plaquettes whose lower-left node satisfies `region`. Discrete Stokes makes
/// this exactly the boundary circulation of the sampled links.
pub fn disclination_flux(
    w: &GaugeField,
    m: &MetricField,
    region: impl Fn(usize, usize) -> bool,
) -> Result<f64> {
    let (wu, wv) = w.abelian_components()?;
    let grid = &w.grid;
    let (plaq, _) = plaquette_circulation(grid, m, &wu, &wv);
    let mut acc = 0.0;
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let k = j * grid.n_u + i;
            if plaq[k].is_finite() && region(i, j) {
                acc += plaq[k];
            }
        }
    }
    Ok(acc)
}

/// Circulation of an abelian gauge field along the node ring at row j
/// (u-periodic grids): trapezoid sum of the sampled angular component.
pub fn ring_circulation(w: &GaugeField, j: usize) -> Result<f64> {
    let (wu, _) = w.abelian_components()?;
    let grid = &w.grid;
    assert!(grid.u_periodic(), "ring circulation needs a periodic angle");
    let mut acc = 0.0;
    for i in 0..grid.n_u {
        acc += wu[grid.index(i, j)];
    }
    Ok(acc * grid.h_u())
}

/// Circulation around each plaquette (i+1/2, j+1/2), indexed by its
/// lower-left node; NaN where the plaquette would leave the grid.
fn plaquette_circulation(
    grid: &Grid,
    m: &MetricField,
    wu: &[f64],
    wv: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let n = grid.node_count();
    let h_u = grid.h_u();
    let h_v = grid.h_v();
    let mut plaq = vec![f64::NAN; n];
    let mut sg = vec![0.0; n];
    for j in 0..grid.n_v {
        for i in 0..grid.n_u {
            let o = |di: isize, dj: isize| grid.offset(i, j, di, dj, Parity::Even);
            let (Some((n00, _)), Some((n10, _)), Some((n01, _)), Some((n11, _))) =
                (o(0, 0), o(1, 0), o(0, 1), o(1, 1))
            else {
                continue;
            };
            if j + 1 >= grid.n_v && !grid.v_periodic() {
                continue; // plaquette would cross a pole fold
            }
            let bottom = 0.5 * (wu[n00] + wu[n10]) * h_u;
            let right = 0.5 * (wv[n10] + wv[n11]) * h_v;
            let top = -0.5 * (wu[n01] + wu[n11]) * h_u;
            let left = -0.5 * (wv[n00] + wv[n01]) * h_v;
            let k = j * grid.n_u + i;
            plaq[k] = bottom + right + top + left;
            sg[k] = 0.25 * (m.sqrt_g[n00] + m.sqrt_g[n10] + m.sqrt_g[n01] + m.sqrt_g[n11]);
        }
    }
    (plaq, sg)
}

fn plaq_neighbors(grid: &Grid, i: usize, j: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(4);
    let n_u = grid.n_u as isize;
    for (di, dj) in [(0isize, 0isize), (-1, 0), (0, -1), (-1, -1)] {
        let mut pi = i as isize + di;
        let pj = j as isize + dj;
        if pi < 0 {
            if grid.u_periodic() {
                pi += n_u;
            } else {
                continue;
            }
        }
        if pj < 0 {
            continue;
        }
        out.push((pi as usize, pj as usize));
    }
    out
}

/// Defect-deformed reference metric: the closed-form expansion of
/// nabla_a R0 . nabla_b R0 in the fixed reference gauge field,
/// g_ab = d_a R0 . d_b R0 + d_a R0 . (W0_b x R0) + d_b R0 . (W0_a x R0)
///        + (W0_a . W0_b) |R0|^2 - (W0_a . R0)(W0_b . R0).
pub fn reference_metric_with_defects(e0: &Embedding, w0: &GaugeField) -> Result<MetricField> {
    let grid = &e0.grid;
    let (tu, tv) = e0.tangents();
    let n = grid.node_count();
    let mut g = Vec::with_capacity(n);
    for idx in 0..n {
        let r = e0.positions.data[idx];
        let t = [tu.data[idx], tv.data[idx]];
        let w = w0.w[idx];
        let mut comp = [0.0; 3];
        for (s, (a, b)) in [(0usize, 0usize), (0, 1), (1, 1)].iter().enumerate() {
            comp[s] = t[*a].dot(&t[*b])
                + t[*a].dot(&w[*b].cross(&r))
                + t[*b].dot(&w[*a].cross(&r))
                + w[*a].dot(&w[*b]) * r.norm_squared()
                - w[*a].dot(&r) * w[*b].dot(&r);
        }
        g.push(comp);
    }
    MetricField::from_components(grid, g)
}
