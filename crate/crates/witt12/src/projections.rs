//! Projections of the twelve-point model and the affine reading of its
//! blocks.
//!
//! Projecting through one model point yields an 11-cap in a hyperplane;
//! through a bisecant, a 10-point elliptic quadric in a solid; through the
//! plane of the distinguished triangle, the affine plane of order 3, and
//! with the default coordinates the projection onto the flat x3=x4=x5=0 is
//! literally the identity on the nine affine points.
//!
//! In the affine picture a model point is either one of the nine affine
//! plane points or one of the three elliptic involutions on the line at
//! infinity (matched to the triangle through harmonic homology centers),
//! and every block is exactly one of: an affine line with all three
//! involutions, an ellipse with the two involutions that are not its
//! conjugacy involution, a pair of distinct parallel lines, or a cross of
//! lines with the involution swapping their directions.

use itertools::Itertools;

use crate::design::{derived_design, design_from_points, Design};
use crate::gf::{dot, Matrix, GF3};
use crate::projgeom::{
    elliptic_involutions, harmonic_homology, homology_center, line_points, LineInvolution,
    PlaneQuadric, ProjPoint, QuadricKind, Subspace,
};
use crate::veronese::WittModel;
use crate::{Error, Result};

/// A center/screen pair: complementary subspaces so that projecting any
/// outside point onto the screen is well defined.
#[derive(Debug, Clone)]
pub struct ProjectionSetup {
    center: Subspace,
    screen: Subspace,
}

impl ProjectionSetup {
    pub fn new(center: Subspace, screen: Subspace) -> Result<Self> {
        let n = center.ambient_dim();
        if screen.ambient_dim() != n {
            return Err(Error::AmbientMismatch(n, screen.ambient_dim()));
        }
        if center.rank() + screen.rank() != n + 1 {
            return Err(Error::InvalidInput(
                "center and screen ranks must sum to the ambient rank".into(),
            ));
        }
        let mut rows = center.basis().row_vecs();
        rows.extend(screen.basis().row_vecs());
        if Matrix::from_rows(center.field(), &rows).rank() != n + 1 {
            return Err(Error::InvalidInput("center and screen overlap".into()));
        }
        Ok(ProjectionSetup { center, screen })
    }

    /// Canonical screen for a center: the span of the standard basis
    /// vectors at the non-pivot columns of the center's echelon basis.
    /// For the plane of the default triangle this is the flat x3=x4=x5=0.
    pub fn through(center: Subspace) -> Result<Self> {
        let ech = center.basis().rref();
        let n = center.ambient_dim();
        let rows: Vec<Vec<u8>> = (0..=n)
            .filter(|c| !ech.pivots.contains(c))
            .map(|c| {
                let mut v = vec![0u8; n + 1];
                v[c] = 1;
                v
            })
            .collect();
        let screen = Subspace::from_rows(center.field(), &rows);
        ProjectionSetup::new(center, screen)
    }

    pub fn center(&self) -> &Subspace {
        &self.center
    }

    pub fn screen(&self) -> &Subspace {
        &self.screen
    }
}

/// Image of a point: the unique intersection of span(center, point) with
/// the screen. The uniqueness (a one-dimensional solution space) is
/// asserted on every call.
pub fn project_point(p: &ProjPoint, setup: &ProjectionSetup) -> Result<ProjPoint> {
    if setup.center.contains(p) {
        return Err(Error::PointInCenter);
    }
    let field = p.field();
    let mut cols: Vec<Vec<u8>> = setup.screen.basis().row_vecs();
    let screen_rank = cols.len();
    cols.extend(setup.center.basis().row_vecs());
    cols.push(p.coords().to_vec());
    let kernel = Matrix::from_columns(field, &cols).nullspace();
    assert_eq!(kernel.len(), 1, "projection image must be unique");
    let combo = &kernel[0][..screen_rank];
    assert!(combo.iter().any(|&x| x != 0), "image lies in the screen");
    setup.screen.point_at(combo)
}

/// Project a whole point set, preserving order.
pub fn project(points: &[ProjPoint], setup: &ProjectionSetup) -> Result<Vec<ProjPoint>> {
    points.iter().map(|p| project_point(p, setup)).collect()
}

/// Result of the no-three-collinear check.
#[derive(Debug, Clone)]
pub struct CapReport {
    pub is_cap: bool,
    pub collinear_witness: Option<[usize; 3]>,
}

/// Certify that no three of the points are collinear.
pub fn certify_cap(points: &[ProjPoint]) -> CapReport {
    for triple in (0..points.len()).combinations(3) {
        let chosen = [
            points[triple[0]].clone(),
            points[triple[1]].clone(),
            points[triple[2]].clone(),
        ];
        if Subspace::span(&chosen).unwrap().rank() < 3 {
            return CapReport {
                is_cap: false,
                collinear_witness: Some([triple[0], triple[1], triple[2]]),
            };
        }
    }
    CapReport { is_cap: true, collinear_witness: None }
}

/// Certificate that a point set in a solid is a nondegenerate line-free
/// quadric: a quadratic form in the solid coordinates vanishing exactly on
/// the set, with full-rank matrix and no line inside the zero set.
#[derive(Debug, Clone)]
pub struct QuadricCertificate {
    /// Monomial coefficients (10 of them, pairs in lexicographic order) of
    /// the located form, in solid coordinates.
    pub form: Option<[u8; 10]>,
    /// The solution space of forms through the points was one-dimensional.
    pub unique_form: bool,
    pub zero_count: usize,
    pub zero_set_equals_input: bool,
    pub nondegenerate: bool,
    pub contained_line_witness: Option<[usize; 2]>,
    pub point_count: usize,
}

impl QuadricCertificate {
    pub fn is_elliptic_quadric(&self) -> bool {
        self.form.is_some()
            && self.unique_form
            && self.zero_set_equals_input
            && self.nondegenerate
            && self.contained_line_witness.is_none()
            && self.point_count == 10
    }
}

const SOLID_PAIRS: [(usize, usize); 10] = [
    (0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3),
];

fn eval_solid_form(coeffs: &[u8; 10], x: &[u8]) -> u8 {
    let mut acc = 0u8;
    for (k, &(i, j)) in SOLID_PAIRS.iter().enumerate() {
        acc = GF3.add(acc, GF3.mul(coeffs[k], GF3.mul(x[i], x[j])));
    }
    acc
}

/// Search for a quadratic form in the solid vanishing exactly on the given
/// points and certify nondegeneracy and line-freeness.
pub fn certify_elliptic_quadric(
    points: &[ProjPoint],
    solid: &Subspace,
) -> Result<QuadricCertificate> {
    if solid.rank() != 4 {
        return Err(Error::InvalidInput("screen is not a solid".into()));
    }
    let coords: Vec<Vec<u8>> = points
        .iter()
        .map(|p| {
            solid
                .coords_of(p)
                .ok_or_else(|| Error::InvalidInput(format!("{p} is outside the solid")))
        })
        .collect::<Result<_>>()?;
    // rows: monomial evaluations; kernel = forms vanishing on all points
    let rows: Vec<Vec<u8>> = coords
        .iter()
        .map(|x| {
            SOLID_PAIRS
                .iter()
                .map(|&(i, j)| GF3.mul(x[i], x[j]))
                .collect()
        })
        .collect();
    let kernel = Matrix::from_rows(GF3, &rows).nullspace();
    let mut cert = QuadricCertificate {
        form: None,
        unique_form: kernel.len() == 1,
        zero_count: 0,
        zero_set_equals_input: false,
        nondegenerate: false,
        contained_line_witness: None,
        point_count: points.len(),
    };
    let Some(first) = kernel.first() else {
        return Ok(cert);
    };
    let coeffs: [u8; 10] = first.clone().try_into().unwrap();
    cert.form = Some(coeffs);

    // zero set among the 40 points of the solid, in solid coordinates
    let solid_points: Vec<ProjPoint> = crate::projgeom::enumerate_points(3, GF3);
    let zeros: Vec<&ProjPoint> = solid_points
        .iter()
        .filter(|p| eval_solid_form(&coeffs, p.coords()) == 0)
        .collect();
    cert.zero_count = zeros.len();
    let input_in_solid: std::collections::BTreeSet<ProjPoint> = coords
        .iter()
        .map(|c| ProjPoint::new(GF3, c).expect("projective points"))
        .collect();
    cert.zero_set_equals_input =
        zeros.iter().map(|p| (*p).clone()).collect::<std::collections::BTreeSet<_>>()
            == input_in_solid;

    // symmetric matrix of the form; off-diagonal entries are halved
    let mut m = Matrix::zero(GF3, 4, 4);
    for (k, &(i, j)) in SOLID_PAIRS.iter().enumerate() {
        if i == j {
            m.set(i, i, coeffs[k]);
        } else {
            let half = GF3.mul(2, coeffs[k]);
            m.set(i, j, half);
            m.set(j, i, half);
        }
    }
    cert.nondegenerate = m.rank() == 4;

    'pairs: for pair in (0..zeros.len()).combinations(2) {
        let line = line_points(zeros[pair[0]], zeros[pair[1]]).expect("distinct zeros");
        if line.iter().all(|p| eval_solid_form(&coeffs, p.coords()) == 0) {
            cert.contained_line_witness = Some([pair[0], pair[1]]);
            break 'pairs;
        }
    }
    Ok(cert)
}

/// Projection through one model point: an 11-cap whose solid-contained
/// 5-subsets are exactly the derived design blocks.
#[derive(Debug, Clone)]
pub struct CapProjectionReport {
    pub center_index: usize,
    pub images: Vec<ProjPoint>,
    pub cap: CapReport,
    pub derived_blocks_match: bool,
    pub solid_five_subsets: usize,
}

pub fn project_through_point(model: &WittModel, center_index: usize) -> Result<CapProjectionReport> {
    let points = model.points();
    let center = Subspace::span(&[points[center_index].clone()])?;
    let setup = ProjectionSetup::through(center)?;
    let rest: Vec<ProjPoint> = points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != center_index)
        .map(|(_, p)| p.clone())
        .collect();
    let images = project(&rest, &setup)?;
    let distinct: std::collections::BTreeSet<&ProjPoint> = images.iter().collect();
    if distinct.len() != 11 {
        return Err(Error::Certification("projection identified two model points".into()));
    }
    let cap = certify_cap(&images);

    // the blocks through the center, reindexed by the derivation, must be
    // exactly the 5-subsets of the cap lying in a common solid
    let derived = derived_design(&design_from_points(points), center_index);
    let mut solid_subsets: Vec<Vec<usize>> = Vec::new();
    for subset in (0..images.len()).combinations(5) {
        let chosen: Vec<ProjPoint> = subset.iter().map(|&i| images[i].clone()).collect();
        if Subspace::span(&chosen)?.rank() <= 4 {
            solid_subsets.push(subset);
        }
    }
    solid_subsets.sort();
    let derived_blocks_match = solid_subsets == derived.blocks;
    Ok(CapProjectionReport {
        center_index,
        images,
        solid_five_subsets: solid_subsets.len(),
        cap,
        derived_blocks_match,
    })
}

/// Projection through a bisecant (the line joining two model points).
pub fn project_through_bisecant(
    model: &WittModel,
    i: usize,
    j: usize,
) -> Result<QuadricCertificate> {
    let points = model.points();
    if i == j {
        return Err(Error::IdenticalPoints);
    }
    let line = line_points(&points[i], &points[j])?;
    let center = Subspace::span(&line)?;
    assert_eq!(center.rank(), 2);
    let setup = ProjectionSetup::through(center)?;
    let rest: Vec<ProjPoint> = points
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, p)| p.clone())
        .collect();
    let images = project(&rest, &setup)?;
    let distinct: std::collections::BTreeSet<&ProjPoint> = images.iter().collect();
    if distinct.len() != 10 {
        return Err(Error::Certification("bisecant projection identified two points".into()));
    }
    certify_elliptic_quadric(&images, setup.screen())
}

/// The identity-affinity certificate for the projection through the plane
/// of the triangle onto the flat x3=x4=x5=0, under the default choice of
/// the infinity line.
#[derive(Debug, Clone)]
pub struct AffinityReport {
    pub identity_on_affine_points: bool,
    pub affine_lines_preserved: bool,
    pub affine_line_count: usize,
}

impl AffinityReport {
    pub fn pass(&self) -> bool {
        self.identity_on_affine_points
            && self.affine_lines_preserved
            && self.affine_line_count == 12
    }
}

pub fn certify_affinity(model: &WittModel) -> Result<AffinityReport> {
    if model.config().infinity_line().dual_coords() != [1, 0, 0] {
        return Err(Error::InvalidInput(
            "the identity affinity is coordinate-specific to the default infinity line".into(),
        ));
    }
    let setup = ProjectionSetup::through(model.plane().clone())?;
    // with the default line the screen is x3=x4=x5=0
    let mut identity = true;
    let mut images = Vec::with_capacity(9);
    for (surface_pt, preimage) in model.affine_points().iter().zip(model.affine_preimages()) {
        let img = project_point(surface_pt, &setup)?;
        let c = img.coords();
        if c[3] != 0 || c[4] != 0 || c[5] != 0 {
            return Err(Error::Certification("image misses the screen flat".into()));
        }
        let plane_pt = ProjPoint::new(GF3, &c[..3])?;
        identity &= plane_pt == *preimage;
        images.push(plane_pt);
    }
    // collinear triples among the images must be exactly the affine lines
    let mut image_lines: Vec<Vec<usize>> = Vec::new();
    for triple in (0..images.len()).combinations(3) {
        let chosen: Vec<ProjPoint> = triple.iter().map(|&i| images[i].clone()).collect();
        if Subspace::span(&chosen)?.rank() == 2 {
            image_lines.push(triple);
        }
    }
    let mut affine_lines: Vec<Vec<usize>> = Vec::new();
    for line in crate::projgeom::pg23_lines() {
        if line == model.config().infinity_line() {
            continue;
        }
        let on_line: Vec<usize> = model
            .affine_preimages()
            .iter()
            .enumerate()
            .filter(|(_, p)| line.contains(p))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(on_line.len(), 3, "an affine line keeps 3 points");
        affine_lines.push(on_line);
    }
    image_lines.sort();
    affine_lines.sort();
    Ok(AffinityReport {
        identity_on_affine_points: identity,
        affine_lines_preserved: image_lines == affine_lines,
        affine_line_count: affine_lines.len(),
    })
}

/// A model point read in the affine picture: an affine plane point or an
/// elliptic involution on the line at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineElement {
    Point(ProjPoint),
    Involution(usize),
}

/// The affine reading of the model: nine plane points plus the three
/// elliptic involutions, with the triangle matched to involutions through
/// harmonic homology centers.
#[derive(Debug, Clone)]
pub struct AffineModel {
    pub involutions: Vec<LineInvolution>,
    /// One entry per model point, in model point order.
    pub elements: Vec<AffineElement>,
}

/// Match each involution on the infinity line to the triangle point at the
/// center of its harmonic homology.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    /// (involution index, triangle point) pairs.
    pub centers: Vec<(usize, ProjPoint)>,
    pub bijective: bool,
    pub homologies_fix_quadrangle: bool,
}

impl CorrespondenceReport {
    pub fn pass(&self) -> bool {
        self.bijective && self.homologies_fix_quadrangle
    }
}

pub fn involution_correspondence(model: &WittModel) -> Result<CorrespondenceReport> {
    let involutions = elliptic_involutions(model.infinity_points())?;
    let plane = model.plane();
    let quad_coords: Vec<Vec<u8>> = model
        .quadrangle()
        .iter()
        .map(|p| plane.coords_of(p).expect("the conic spans the plane"))
        .collect();
    let mut centers = Vec::new();
    let mut homologies_ok = true;
    for (idx, inv) in involutions.iter().enumerate() {
        // transport the pairing through the embedding: the conic points are
        // aligned index-by-index with the infinity points
        let center = homology_center(model.quadrangle(), &inv.pairs)?;
        if !model.triangle().contains(&center) {
            return Err(Error::Certification(format!(
                "homology center {center} is not a triangle point"
            )));
        }
        // axis: the chord of the other two triangle points, in plane coords
        let others: Vec<Vec<u8>> = model
            .triangle()
            .iter()
            .filter(|t| **t != center)
            .map(|t| plane.coords_of(t).expect("triangle spans the plane"))
            .collect();
        let axis_kernel = Matrix::from_rows(GF3, &others).nullspace();
        assert_eq!(axis_kernel.len(), 1);
        let center_coords = plane.coords_of(&center).expect("center lies in the plane");
        let homology = harmonic_homology(GF3, &center_coords, &axis_kernel[0]);
        // the homology must fix the conic setwise and induce the pairing
        for (i, qc) in quad_coords.iter().enumerate() {
            let img = homology.mul_vec(qc);
            let img_pt = ProjPoint::new(GF3, &img)?;
            let img_idx = quad_coords
                .iter()
                .position(|c| ProjPoint::new(GF3, c).unwrap() == img_pt);
            match img_idx {
                Some(j) if j == inv.apply(i) => {}
                _ => {
                    homologies_ok = false;
                }
            }
        }
        centers.push((idx, center));
    }
    let distinct: std::collections::BTreeSet<&ProjPoint> =
        centers.iter().map(|(_, c)| c).collect();
    let bijective =
        distinct.len() == 3 && model.triangle().iter().all(|t| distinct.contains(t));
    Ok(CorrespondenceReport { centers, bijective, homologies_fix_quadrangle: homologies_ok })
}

/// Build the affine reading of the model.
pub fn affine_model(model: &WittModel) -> Result<AffineModel> {
    let correspondence = involution_correspondence(model)?;
    if !correspondence.pass() {
        return Err(Error::Certification("involution correspondence failed".into()));
    }
    let involutions = elliptic_involutions(model.infinity_points())?;
    let elements: Vec<AffineElement> = model
        .points()
        .iter()
        .map(|p| {
            if let Some(pos) = model.affine_points().iter().position(|q| q == p) {
                AffineElement::Point(model.affine_preimages()[pos].clone())
            } else {
                let (idx, _) = correspondence
                    .centers
                    .iter()
                    .find(|(_, c)| c == p)
                    .expect("non-affine model points are homology centers");
                AffineElement::Involution(*idx)
            }
        })
        .collect();
    Ok(AffineModel { involutions, elements })
}

/// The four affine block shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockShape {
    /// An affine line plus all three involutions (3 + 3 points).
    AffineLine,
    /// An ellipse plus the two involutions other than its conjugacy
    /// involution (4 + 2).
    Ellipse,
    /// Two distinct parallel affine lines (6 + 0).
    ParallelPair,
    /// A cross of two affine lines plus the involution swapping their
    /// directions (5 + 1).
    Cross,
}

impl std::fmt::Display for BlockShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BlockShape::AffineLine => "line+3inv",
            BlockShape::Ellipse => "ellipse+2inv",
            BlockShape::ParallelPair => "parallel-pair",
            BlockShape::Cross => "cross+1inv",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct BlockClassification {
    pub shape: BlockShape,
    pub affine_points: Vec<ProjPoint>,
    pub involutions: Vec<usize>,
}

fn collinear_triples(points: &[ProjPoint]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for t in (0..points.len()).combinations(3) {
        let chosen = [points[t[0]].clone(), points[t[1]].clone(), points[t[2]].clone()];
        if Subspace::span(&chosen).unwrap().rank() == 2 {
            out.push([t[0], t[1], t[2]]);
        }
    }
    out
}

/// Index (into the infinity points) of the direction of an affine line
/// given by three collinear affine points.
fn direction_index(model: &WittModel, a: &ProjPoint, b: &ProjPoint) -> usize {
    let line = line_points(a, b).expect("distinct points");
    let at_infinity: Vec<&ProjPoint> = line
        .iter()
        .filter(|p| model.config().infinity_line().contains(p))
        .collect();
    assert_eq!(at_infinity.len(), 1, "an affine line has one direction");
    model
        .infinity_points()
        .iter()
        .position(|p| p == at_infinity[0])
        .expect("directions are infinity points")
}

/// The conjugacy involution of an ellipse on the infinity line: infinity
/// points are paired when they are conjugate with respect to the unique
/// conic through the four affine points.
fn conjugacy_involution(model: &WittModel, ellipse: &[ProjPoint]) -> Result<[[usize; 2]; 2]> {
    let forms = PlaneQuadric::vanishing_on(ellipse);
    let conic_forms: Vec<&PlaneQuadric> =
        forms.iter().filter(|q| q.kind() == QuadricKind::Conic).collect();
    if conic_forms.len() != 1 {
        return Err(Error::Certification(format!(
            "expected one conic through the ellipse, found {}",
            conic_forms.len()
        )));
    }
    let m = conic_forms[0].form();
    let inf = model.infinity_points();
    let conjugate = |i: usize, j: usize| -> bool {
        dot(GF3, &m.mul_vec(inf[j].coords()), inf[i].coords()) == 0
    };
    let mut partner = [usize::MAX; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j && conjugate(i, j) {
                if partner[i] != usize::MAX {
                    return Err(Error::Certification("conjugacy is not an involution".into()));
                }
                partner[i] = j;
            }
        }
    }
    for i in 0..4 {
        if partner[i] == usize::MAX || partner[partner[i]] != i || partner[i] == i {
            return Err(Error::Certification("conjugacy is not fixed-point-free".into()));
        }
    }
    let first = [0usize, partner[0]];
    let rest: Vec<usize> = (1..4).filter(|&i| i != partner[0]).collect();
    Ok([first, [rest[0], rest[1]]])
}

/// Classify one block in the affine picture and check its involution rule.
pub fn classify_block(
    model: &WittModel,
    affine: &AffineModel,
    block: &[usize],
) -> Result<BlockClassification> {
    let mut points = Vec::new();
    let mut involutions = Vec::new();
    for &i in block {
        match &affine.elements[i] {
            AffineElement::Point(p) => points.push(p.clone()),
            AffineElement::Involution(j) => involutions.push(*j),
        }
    }
    involutions.sort_unstable();
    let shape = match (points.len(), involutions.len()) {
        (3, 3) => {
            if collinear_triples(&points).len() != 1 {
                return Err(Error::Certification("three affine points not collinear".into()));
            }
            BlockShape::AffineLine
        }
        (4, 2) => {
            if !collinear_triples(&points).is_empty() {
                return Err(Error::Certification("ellipse contains a collinear triple".into()));
            }
            let conjugacy = conjugacy_involution(model, &points)?;
            let excluded: Vec<usize> = (0..3)
                .filter(|&j| affine.involutions[j].same_pairing(&conjugacy))
                .collect();
            if excluded.len() != 1 {
                return Err(Error::Certification(
                    "conjugacy pairing is not one of the three involutions".into(),
                ));
            }
            let expected: Vec<usize> = (0..3).filter(|j| *j != excluded[0]).collect();
            if involutions != expected {
                return Err(Error::Certification(format!(
                    "ellipse block carries involutions {involutions:?}, expected {expected:?}"
                )));
            }
            BlockShape::Ellipse
        }
        (6, 0) => {
            let triples = collinear_triples(&points);
            if triples.len() != 2 {
                return Err(Error::Certification(format!(
                    "parallel pair needs exactly 2 lines, found {}",
                    triples.len()
                )));
            }
            let all: std::collections::BTreeSet<usize> =
                triples.iter().flatten().copied().collect();
            if all.len() != 6 {
                return Err(Error::Certification("the two lines are not disjoint".into()));
            }
            let d0 = direction_index(model, &points[triples[0][0]], &points[triples[0][1]]);
            let d1 = direction_index(model, &points[triples[1][0]], &points[triples[1][1]]);
            if d0 != d1 {
                return Err(Error::Certification("lines of the pair are not parallel".into()));
            }
            BlockShape::ParallelPair
        }
        (5, 1) => {
            let triples = collinear_triples(&points);
            if triples.len() != 2 {
                return Err(Error::Certification(format!(
                    "cross needs exactly 2 lines, found {}",
                    triples.len()
                )));
            }
            let common: Vec<usize> = triples[0]
                .iter()
                .filter(|i| triples[1].contains(i))
                .copied()
                .collect();
            if common.len() != 1 {
                return Err(Error::Certification("cross lines must share one point".into()));
            }
            let other = |t: &[usize; 3]| -> [usize; 2] {
                let v: Vec<usize> = t.iter().filter(|i| **i != common[0]).copied().collect();
                [v[0], v[1]]
            };
            let l0 = other(&triples[0]);
            let l1 = other(&triples[1]);
            let d0 = direction_index(model, &points[l0[0]], &points[l0[1]]);
            let d1 = direction_index(model, &points[l1[0]], &points[l1[1]]);
            if d0 == d1 {
                return Err(Error::Certification("cross lines are parallel".into()));
            }
            let inv = &affine.involutions[involutions[0]];
            if inv.apply(d0) != d1 {
                return Err(Error::Certification(
                    "cross involution does not swap the two directions".into(),
                ));
            }
            BlockShape::Cross
        }
        (p, i) => {
            return Err(Error::Certification(format!(
                "block splits into {p} affine points and {i} involutions"
            )))
        }
    };
    Ok(BlockClassification { shape, affine_points: points, involutions })
}

/// Classify every block; the histogram over shapes is returned alongside.
pub fn classify_all_blocks(
    model: &WittModel,
    design: &Design,
) -> Result<(Vec<BlockClassification>, std::collections::BTreeMap<BlockShape, usize>)> {
    let affine = affine_model(model)?;
    let mut out = Vec::with_capacity(design.blocks.len());
    let mut histogram = std::collections::BTreeMap::new();
    for block in &design.blocks {
        let classified = classify_block(model, &affine, block)?;
        *histogram.entry(classified.shape).or_insert(0) += 1;
        out.push(classified);
    }
    Ok((out, histogram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::extract_blocks;
    use crate::veronese::{construct_model, VeroneseConfig};
    use std::sync::LazyLock;

    static MODEL: LazyLock<WittModel> =
        LazyLock::new(|| construct_model(&VeroneseConfig::default()));

    fn pt(coords: &[u8]) -> ProjPoint {
        ProjPoint::new(GF3, coords).unwrap()
    }

    #[test]
    fn point_projection_gives_an_eleven_cap() {
        let report = project_through_point(&MODEL, 0).unwrap();
        assert_eq!(report.images.len(), 11);
        assert!(report.cap.is_cap);
        assert!(report.derived_blocks_match);
        assert_eq!(report.solid_five_subsets, 66);
    }

    #[test]
    fn cap_certification_reports_collinear_witnesses() {
        let bad = vec![
            pt(&[1, 0, 0, 0, 0, 0]),
            pt(&[0, 1, 0, 0, 0, 0]),
            pt(&[1, 1, 0, 0, 0, 0]),
        ];
        let report = certify_cap(&bad);
        assert!(!report.is_cap);
        assert_eq!(report.collinear_witness, Some([0, 1, 2]));
    }

    #[test]
    fn bisecant_projection_gives_an_elliptic_quadric() {
        let cert = project_through_bisecant(&MODEL, 0, 1).unwrap();
        assert!(cert.is_elliptic_quadric(), "{cert:?}");
        assert_eq!(cert.zero_count, 10);
    }

    #[test]
    fn hyperbolic_quadrics_are_rejected() {
        // the zero set of x0 x1 - x2 x3 inside the coordinate solid
        let coeffs: [u8; 10] = [0, 1, 0, 0, 0, 0, 0, 0, 2, 0];
        let zeros: Vec<ProjPoint> = crate::projgeom::enumerate_points(3, GF3)
            .into_iter()
            .filter(|p| eval_solid_form(&coeffs, p.coords()) == 0)
            .collect();
        assert_eq!(zeros.len(), 16);
        let solid = Subspace::from_rows(
            GF3,
            &(0..4)
                .map(|i| {
                    let mut v = vec![0u8; 4];
                    v[i] = 1;
                    v
                })
                .collect::<Vec<_>>(),
        );
        let cert = certify_elliptic_quadric(&zeros, &solid).unwrap();
        assert!(cert.contained_line_witness.is_some());
        assert!(!cert.is_elliptic_quadric());
    }

    #[test]
    fn triangle_projection_is_the_identity_affinity() {
        let report = certify_affinity(&MODEL).unwrap();
        assert!(report.identity_on_affine_points);
        assert!(report.affine_lines_preserved);
        assert_eq!(report.affine_line_count, 12);
    }

    #[test]
    fn projection_of_a_specific_surface_point() {
        // the surface point over F(1,2,1) projects onto F(1,2,1) itself
        let setup = ProjectionSetup::through(MODEL.plane().clone()).unwrap();
        let img = project_point(&pt(&[1, 2, 1, 1, 2, 1]), &setup).unwrap();
        assert_eq!(img, pt(&[1, 2, 1, 0, 0, 0]));
    }

    #[test]
    fn projecting_a_center_point_is_rejected() {
        let setup = ProjectionSetup::through(MODEL.plane().clone()).unwrap();
        let err = project_point(&MODEL.triangle()[0], &setup);
        assert!(matches!(err, Err(Error::PointInCenter)));
    }

    #[test]
    fn involution_centers_are_the_triangle() {
        let report = involution_correspondence(&MODEL).unwrap();
        assert!(report.bijective);
        assert!(report.homologies_fix_quadrangle);
        assert_eq!(report.centers.len(), 3);
    }

    #[test]
    fn block_shapes_have_the_expected_histogram() {
        let design = extract_blocks(&MODEL);
        let (classified, histogram) = classify_all_blocks(&MODEL, &design).unwrap();
        assert_eq!(classified.len(), 132);
        assert_eq!(histogram[&BlockShape::AffineLine], 12);
        assert_eq!(histogram[&BlockShape::Ellipse], 54);
        assert_eq!(histogram[&BlockShape::ParallelPair], 12);
        assert_eq!(histogram[&BlockShape::Cross], 54);
    }

    #[test]
    fn block_sizes_split_as_documented() {
        let design = extract_blocks(&MODEL);
        let (classified, _) = classify_all_blocks(&MODEL, &design).unwrap();
        for c in &classified {
            let (a, i) = (c.affine_points.len(), c.involutions.len());
            assert_eq!(a + i, 6);
            match c.shape {
                BlockShape::AffineLine => assert_eq!((a, i), (3, 3)),
                BlockShape::Ellipse => assert_eq!((a, i), (4, 2)),
                BlockShape::ParallelPair => assert_eq!((a, i), (6, 0)),
                BlockShape::Cross => assert_eq!((a, i), (5, 1)),
            }
        }
    }
}
