//! The quadratic Veronese embedding of PG(2,3) into PG(5,3) and the
//! twelve-point model built from it.
//!
//! The embedding sends F(x0,x1,x2) to F(x0^2, x0x1, x0x2, x1^2, x1x2, x2^2).
//! Its image, the Veronese surface, has 13 points and meets the plane of
//! any of its conics in exactly the four conic points. Fixing a line of
//! PG(2,3) as the line at infinity, the surface carries one distinguished
//! conic (the image of that line); replacing it with its diagonal triangle
//! produces a 12-point set whose hyperplane sections all have size 0, 3
//! or 6. This module constructs that set, reverses the construction, lifts
//! plane collineations to PG(5,3) via the symmetric square, and finds
//! explicit projectivities between 13-point sets with the right hyperplane
//! spectrum and the surface itself.

use std::collections::{BTreeMap, HashSet};
use std::sync::LazyLock;

use crate::gf::{Matrix, PrimeField, GF3};
use crate::projgeom::{
    self, diagonal_triangle, pg23_points, pg53_hyperplanes, quadrangle_of_triangle,
    Hyperplane, PlaneQuadric, ProjPoint, QuadricKind, Subspace,
};
use crate::{Error, Result};

/// Index pairs (i <= j) matching the monomial order of the embedding.
const MONOMIAL_PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Image of a PG(2,3) point under the quadratic embedding.
pub fn veronese_point(p: &ProjPoint) -> ProjPoint {
    assert_eq!(p.field(), GF3, "the embedding is defined over GF(3)");
    assert_eq!(p.ambient_dim(), 2, "the embedding starts from PG(2,3)");
    let x = p.coords();
    let coords: Vec<u8> = MONOMIAL_PAIRS
        .iter()
        .map(|&(i, j)| GF3.mul(x[i], x[j]))
        .collect();
    ProjPoint::new(GF3, &coords).expect("images of points are nonzero")
}

/// The 13 points of the Veronese surface, aligned with the enumeration
/// order of PG(2,3) (which the embedding happens to preserve).
pub fn veronese_surface() -> &'static [ProjPoint] {
    static SURFACE: LazyLock<Vec<ProjPoint>> =
        LazyLock::new(|| pg23_points().iter().map(veronese_point).collect());
    &SURFACE
}

/// A 3x3 collineation matrix of PG(2,3) together with its symmetric-square
/// lift: the unique 6x6 matrix commuting with the embedding.
#[derive(Debug, Clone)]
pub struct SymSquareLift {
    pub source: Matrix,
    pub lifted: Matrix,
}

/// Lift an invertible 3x3 matrix to the 6x6 matrix acting on the quadratic
/// monomials, by polarization: entry (k,l) evaluates monomial k on the
/// column pair of monomial l.
pub fn sym_square(a: &Matrix) -> Result<SymSquareLift> {
    assert_eq!((a.rows(), a.cols()), (3, 3), "lift starts from a 3x3 matrix");
    assert_eq!(a.field(), GF3);
    if !a.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let mut s = Matrix::zero(GF3, 6, 6);
    for (k, &(i, j)) in MONOMIAL_PAIRS.iter().enumerate() {
        for (l, &(u, v)) in MONOMIAL_PAIRS.iter().enumerate() {
            let val = if u == v {
                GF3.mul(a.get(i, u), a.get(j, u))
            } else {
                GF3.add(
                    GF3.mul(a.get(i, u), a.get(j, v)),
                    GF3.mul(a.get(i, v), a.get(j, u)),
                )
            };
            s.set(k, l, val);
        }
    }
    Ok(SymSquareLift { source: a.clone(), lifted: s })
}

/// The plane quadric cut out by a hyperplane of PG(5,3): its monomial
/// coefficients are exactly the dual coordinates of the hyperplane, so the
/// correspondence is a linear bijection.
pub fn hyperplane_preimage_quadric(h: &Hyperplane) -> PlaneQuadric {
    assert_eq!(h.ambient_dim(), 5, "preimages come from PG(5,3) hyperplanes");
    let d = h.dual_coords();
    PlaneQuadric::from_monomial_coeffs([d[0], d[1], d[2], d[3], d[4], d[5]])
}

/// Choice of the line at infinity in PG(2,3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VeroneseConfig {
    infinity_line: Hyperplane,
}

impl VeroneseConfig {
    pub fn new(infinity_line: Hyperplane) -> Result<Self> {
        if infinity_line.field() != GF3 || infinity_line.ambient_dim() != 2 {
            return Err(Error::InvalidInput(
                "the line at infinity must be a line of PG(2,3)".into(),
            ));
        }
        Ok(VeroneseConfig { infinity_line })
    }

    pub fn infinity_line(&self) -> &Hyperplane {
        &self.infinity_line
    }
}

impl Default for VeroneseConfig {
    /// The line x0 = 0.
    fn default() -> Self {
        VeroneseConfig {
            infinity_line: Hyperplane::new(GF3, &[1, 0, 0]).unwrap(),
        }
    }
}

/// The twelve-point model: the Veronese surface with the conic over the
/// line at infinity replaced by the diagonal triangle of that conic.
#[derive(Debug, Clone)]
pub struct WittModel {
    config: VeroneseConfig,
    points: Vec<ProjPoint>,
    triangle: [ProjPoint; 3],
    quadrangle: [ProjPoint; 4],
    infinity_points: [ProjPoint; 4],
    affine_points: Vec<ProjPoint>,
    affine_preimages: Vec<ProjPoint>,
    plane: Subspace,
    index: BTreeMap<ProjPoint, usize>,
}

impl WittModel {
    /// The 12 points, sorted lexicographically. All block index sets refer
    /// to this order.
    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// The diagonal triangle replacing the infinity conic, sorted.
    pub fn triangle(&self) -> &[ProjPoint; 3] {
        &self.triangle
    }

    /// The removed conic (the surface points over the line at infinity),
    /// aligned index-by-index with [`Self::infinity_points`].
    pub fn quadrangle(&self) -> &[ProjPoint; 4] {
        &self.quadrangle
    }

    /// The four PG(2,3) points of the line at infinity, in enumeration order.
    pub fn infinity_points(&self) -> &[ProjPoint; 4] {
        &self.infinity_points
    }

    /// The nine surface points kept by the construction, in enumeration
    /// order of their preimages.
    pub fn affine_points(&self) -> &[ProjPoint] {
        &self.affine_points
    }

    /// The nine PG(2,3) points off the line at infinity, aligned with
    /// [`Self::affine_points`].
    pub fn affine_preimages(&self) -> &[ProjPoint] {
        &self.affine_preimages
    }

    pub fn config(&self) -> &VeroneseConfig {
        &self.config
    }

    /// The plane spanned by the removed conic (equally by the triangle).
    pub fn plane(&self) -> &Subspace {
        &self.plane
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of the triangle points within the sorted point list.
    pub fn triangle_indices(&self) -> [usize; 3] {
        let mut it = self
            .triangle
            .iter()
            .map(|p| self.index_of(p).expect("triangle points belong to the model"));
        [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
    }
}

/// Build the model for the given line at infinity.
pub fn construct_model(cfg: &VeroneseConfig) -> WittModel {
    let linf = cfg.infinity_line();
    let mut infinity = Vec::with_capacity(4);
    let mut affine_pre = Vec::with_capacity(9);
    for p in pg23_points() {
        if linf.contains(p) {
            infinity.push(p.clone());
        } else {
            affine_pre.push(p.clone());
        }
    }
    let infinity_points: [ProjPoint; 4] = infinity.try_into().expect("a line has 4 points");
    let quadrangle: [ProjPoint; 4] = infinity_points
        .iter()
        .map(veronese_point)
        .collect::<Vec<_>>()
        .try_into()
        .unwrap();
    let triangle = diagonal_triangle(&quadrangle).expect("conics are quadrangles");
    let affine_points: Vec<ProjPoint> = affine_pre.iter().map(veronese_point).collect();
    let mut points: Vec<ProjPoint> = affine_points.iter().cloned().collect();
    points.extend(triangle.iter().cloned());
    points.sort();
    let index: BTreeMap<ProjPoint, usize> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    assert_eq!(index.len(), 12, "the model has 12 distinct points");
    let plane = Subspace::span(&quadrangle).expect("the conic spans a plane");
    WittModel {
        config: cfg.clone(),
        points,
        triangle,
        quadrangle,
        infinity_points,
        affine_points,
        affine_preimages: affine_pre,
        plane,
        index,
    }
}

/// Reverse the construction: replace a triangle contained in the 12-point
/// set by its associated conic, giving a 13-point set projectively
/// equivalent to the Veronese surface.
///
/// The triangle is revalidated (membership and independence) even though
/// any 3 points of a valid model are independent, since the input may be an
/// arbitrary 12-point set.
pub fn reverse_construct(
    points: &[ProjPoint],
    triangle: &[ProjPoint; 3],
) -> Result<Vec<ProjPoint>> {
    if points.len() != 12 {
        return Err(Error::WrongPointCount { expected: 12, got: points.len() });
    }
    for t in triangle {
        if !points.contains(t) {
            return Err(Error::InvalidInput(format!(
                "triangle point {t} does not belong to the 12-point set"
            )));
        }
    }
    let conic = quadrangle_of_triangle(triangle)?;
    let mut v: Vec<ProjPoint> = points
        .iter()
        .filter(|p| !triangle.contains(p))
        .cloned()
        .collect();
    v.extend(conic);
    v.sort();
    v.dedup();
    if v.len() != 13 {
        return Err(Error::InvalidInput(
            "the associated conic meets the remaining points".into(),
        ));
    }
    Ok(v)
}

/// Apply a collineation matrix to a point.
pub fn apply_collineation(m: &Matrix, p: &ProjPoint) -> ProjPoint {
    ProjPoint::new(p.field(), &m.mul_vec(p.coords()))
        .expect("invertible matrices preserve nonzero vectors")
}

pub(crate) fn frame_matrix(frame: &[ProjPoint]) -> Result<Matrix> {
    let n = frame[0].ambient_dim();
    let field = frame[0].field();
    let cols: Vec<Vec<u8>> = frame[..n + 1].iter().map(|p| p.coords().to_vec()).collect();
    let base = Matrix::from_columns(field, &cols);
    let unit = &frame[n + 1];
    let sol = base.solve(unit.coords()).ok_or(Error::DegenerateFrame)?;
    if !sol.kernel.is_empty() || sol.particular.iter().any(|&x| x == 0) {
        return Err(Error::DegenerateFrame);
    }
    // scale column i by lambda_i; the result maps the standard frame to `frame`
    let mut scaled = base;
    for (j, &l) in sol.particular.iter().enumerate() {
        for i in 0..scaled.rows() {
            let v = field.mul(scaled.get(i, j), l);
            scaled.set(i, j, v);
        }
    }
    Ok(scaled)
}

/// The unique (up to scalar) projectivity mapping one frame of PG(n,p)
/// onto another, pointwise. A frame is an ordered tuple of n+2 points in
/// general position.
pub fn find_projectivity(src: &[ProjPoint], dst: &[ProjPoint]) -> Result<Matrix> {
    if src.is_empty() || src.len() != dst.len() {
        return Err(Error::WrongPointCount { expected: src.len(), got: dst.len() });
    }
    let n = src[0].ambient_dim();
    if dst[0].ambient_dim() != n {
        return Err(Error::AmbientMismatch(n, dst[0].ambient_dim()));
    }
    if src.len() != n + 2 {
        return Err(Error::WrongPointCount { expected: n + 2, got: src.len() });
    }
    let a = frame_matrix(src)?;
    let b = frame_matrix(dst)?;
    let a_inv = a.inverse().ok_or(Error::DegenerateFrame)?;
    Ok(b.mul(&a_inv).canonical_scale())
}

/// Echelon-style incremental independence tracker for the frame searches.
struct RowAccumulator {
    field: PrimeField,
    rows: Vec<Vec<u8>>,
}

impl RowAccumulator {
    fn new(field: PrimeField) -> Self {
        RowAccumulator { field, rows: Vec::new() }
    }

    /// Reduce `v` against the stored rows; returns false (and stores
    /// nothing) if it is dependent on them.
    fn push_independent(&mut self, v: &[u8]) -> bool {
        let f = self.field;
        let mut v = v.to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|&x| x != 0).unwrap();
            if v[lead] != 0 {
                let factor = v[lead];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(factor, r));
                }
            }
        }
        if v.iter().all(|&x| x == 0) {
            return false;
        }
        crate::gf::canonicalize(f, &mut v);
        self.rows.push(v);
        true
    }

    fn pop(&mut self) {
        self.rows.pop();
    }
}

/// Greedily pick the lexicographically least index tuple of a frame inside
/// the point list (first in enumeration order, with backtracking).
pub(crate) fn find_frame_indices(points: &[ProjPoint]) -> Option<Vec<usize>> {
    let n = points[0].ambient_dim();
    let size = n + 2;
    let mut acc = RowAccumulator::new(points[0].field());
    let mut chosen: Vec<usize> = Vec::with_capacity(size);

    fn rec(
        points: &[ProjPoint],
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        acc: &mut RowAccumulator,
    ) -> bool {
        if chosen.len() == size - 1 {
            for i in start..points.len() {
                chosen.push(i);
                let frame: Vec<ProjPoint> =
                    chosen.iter().map(|&j| points[j].clone()).collect();
                if frame_matrix(&frame).is_ok() {
                    return true;
                }
                chosen.pop();
            }
            return false;
        }
        for i in start..points.len() {
            if acc.push_independent(points[i].coords()) {
                chosen.push(i);
                if rec(points, size, i + 1, chosen, acc) {
                    return true;
                }
                chosen.pop();
                acc.pop();
            }
        }
        false
    }

    if rec(points, size, 0, &mut chosen, &mut acc) {
        Some(chosen)
    } else {
        None
    }
}

/// Search for a collineation mapping `src` onto `dst` as sets.
///
/// A frame is fixed inside `src` (the first one in enumeration order); the
/// search then runs over ordered tuples of `dst` in depth-first order,
/// pruning any partial assignment that maps independent points to
/// dependent ones, and accepts the first frame image whose induced
/// projectivity maps `src` into `dst` pointwise. The result is therefore
/// deterministic: the lexicographically least successful frame wins.
pub fn find_set_collineation(src: &[ProjPoint], dst: &[ProjPoint]) -> Option<Matrix> {
    if src.is_empty() || src.len() != dst.len() {
        return None;
    }
    let n = src[0].ambient_dim();
    let size = n + 2;
    let frame_idx = find_frame_indices(src)?;
    let src_frame: Vec<ProjPoint> = frame_idx.iter().map(|&i| src[i].clone()).collect();
    let dst_set: HashSet<&[u8]> = dst.iter().map(|p| p.coords()).collect();

    struct Search<'a> {
        src: &'a [ProjPoint],
        src_frame: &'a [ProjPoint],
        dst: &'a [ProjPoint],
        dst_set: &'a HashSet<&'a [u8]>,
        size: usize,
        used: Vec<bool>,
        tuple: Vec<ProjPoint>,
        acc: RowAccumulator,
    }

    impl Search<'_> {
        fn run(&mut self) -> Option<Matrix> {
            if self.tuple.len() == self.size - 1 {
                for i in 0..self.dst.len() {
                    if self.used[i] {
                        continue;
                    }
                    self.tuple.push(self.dst[i].clone());
                    if let Ok(m) = find_projectivity(self.src_frame, &self.tuple) {
                        let mapped = self.src.iter().all(|p| {
                            let img = apply_collineation(&m, p);
                            self.dst_set.contains(img.coords())
                        });
                        if mapped {
                            return Some(m);
                        }
                    }
                    self.tuple.pop();
                }
                return None;
            }
            for i in 0..self.dst.len() {
                if self.used[i] {
                    continue;
                }
                if self.acc.push_independent(self.dst[i].coords()) {
                    self.used[i] = true;
                    self.tuple.push(self.dst[i].clone());
                    if let Some(m) = self.run() {
                        return Some(m);
                    }
                    self.tuple.pop();
                    self.used[i] = false;
                    self.acc.pop();
                }
            }
            None
        }
    }

    let mut search = Search {
        src,
        src_frame: &src_frame,
        dst,
        dst_set: &dst_set,
        size,
        used: vec![false; dst.len()],
        tuple: Vec::with_capacity(size),
        acc: RowAccumulator::new(src[0].field()),
    };
    search.run()
}

fn section_size(h: &Hyperplane, points: &[ProjPoint]) -> usize {
    points.iter().filter(|p| h.contains(p)).count()
}

/// Explicit collineation mapping a 13-point set with hyperplane spectrum
/// {1,4,7} (and some 7-point section) onto the Veronese surface. The
/// hypotheses are validated first; once they hold, the frame search cannot
/// exhaust, and an exhausted search is reported as evidence of bad input.
pub fn equivalence_to_veronese(v: &[ProjPoint]) -> Result<Matrix> {
    if v.len() != 13 {
        return Err(Error::WrongPointCount { expected: 13, got: v.len() });
    }
    let mut has_seven = false;
    for h in pg53_hyperplanes() {
        let c = section_size(h, v);
        if !matches!(c, 1 | 4 | 7) {
            return Err(Error::InvalidInput(format!(
                "hyperplane {:?} meets the set in {c} points, not in {{1,4,7}}",
                h.dual_coords()
            )));
        }
        has_seven |= c == 7;
    }
    if !has_seven {
        return Err(Error::InvalidInput(
            "no hyperplane meets the set in 7 points".into(),
        ));
    }
    find_set_collineation(v, veronese_surface()).ok_or_else(|| {
        Error::Certification(
            "projectivity search exhausted; the input cannot be a surface copy".into(),
        )
    })
}

/// Which of the four proof cases a hyperplane falls into, relative to a
/// distinguished plane and the conic inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SectionCase {
    PlaneContained,
    External,
    Tangent,
    Bisecant,
}

/// Outcome of replaying the four-case section count argument over all 364
/// hyperplanes.
#[derive(Debug, Clone, Default)]
pub struct CaseAudit {
    /// Hyperplane tally per case.
    pub case_counts: BTreeMap<SectionCase, usize>,
    /// Section sizes of the audited point set.
    pub histogram: BTreeMap<usize, usize>,
    /// Observed quadric kinds per case (construction audit only).
    pub kinds_by_case: BTreeMap<SectionCase, BTreeMap<QuadricKind, usize>>,
    /// Human-readable violations; empty means the audit passed.
    pub violations: Vec<String>,
}

impl CaseAudit {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for SectionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SectionCase::PlaneContained => "plane-contained",
            SectionCase::External => "external",
            SectionCase::Tangent => "tangent",
            SectionCase::Bisecant => "bisecant",
        };
        f.write_str(s)
    }
}

/// Replay the section-count bookkeeping for the model itself: for every
/// hyperplane H, |H ∩ model| must equal |quadric zeros| − |H ∩ conic| +
/// |H ∩ triangle|, with the conic/triangle counts forced by how H meets
/// the distinguished plane, and the resulting size in {0,3,6}.
pub fn audit_construction_cases(model: &WittModel) -> CaseAudit {
    let mut audit = CaseAudit::default();
    let plane_points = model.plane().points();
    for h in pg53_hyperplanes() {
        let d = section_size(h, model.points());
        *audit.histogram.entry(d).or_insert(0) += 1;
        let quadric = hyperplane_preimage_quadric(h);
        let zeros = quadric.zero_points();
        let nq = zeros.len();
        let kind = quadric.kind();
        let section: Vec<&ProjPoint> =
            plane_points.iter().filter(|p| h.contains(p)).collect();
        let on_conic = model.quadrangle().iter().filter(|p| h.contains(p)).count();
        let on_triangle = model.triangle().iter().filter(|p| h.contains(p)).count();
        let case = if section.len() == plane_points.len() {
            SectionCase::PlaneContained
        } else {
            if section.len() != 4 {
                audit.violations.push(format!(
                    "hyperplane {:?} meets the plane in {} points",
                    h.dual_coords(),
                    section.len()
                ));
                continue;
            }
            match on_conic {
                0 => SectionCase::External,
                1 => SectionCase::Tangent,
                2 => SectionCase::Bisecant,
                n => {
                    audit.violations.push(format!(
                        "a plane line meets the conic in {n} points"
                    ));
                    continue;
                }
            }
        };
        *audit.case_counts.entry(case).or_insert(0) += 1;
        *audit
            .kinds_by_case
            .entry(case)
            .or_default()
            .entry(kind)
            .or_insert(0) += 1;

        let mut complain = |msg: String| {
            audit
                .violations
                .push(format!("hyperplane {:?}: {msg}", h.dual_coords()));
        };
        // the counts forced by each case
        let expected = match case {
            SectionCase::PlaneContained => (4, 3),
            SectionCase::External => (0, 2),
            SectionCase::Tangent => (1, 0),
            SectionCase::Bisecant => (2, 1),
        };
        if (on_conic, on_triangle) != expected {
            complain(format!(
                "case {case} carries conic/triangle counts ({on_conic},{on_triangle}), expected {expected:?}"
            ));
        }
        // the section count identity of the construction
        if d + on_conic != nq + on_triangle {
            complain(format!(
                "section identity fails: d={d}, |Q|={nq}, conic={on_conic}, triangle={on_triangle}"
            ));
        }
        if !matches!(d, 0 | 3 | 6) {
            complain(format!("section size {d} outside {{0,3,6}}"));
        }
        match case {
            SectionCase::PlaneContained => {
                // the quadric contains the infinity line, so it is that
                // repeated line or a cross through it
                if !matches!(kind, QuadricKind::RepeatedLine | QuadricKind::LineCross) {
                    complain(format!("contained case produced quadric kind {kind:?}"));
                }
                if !model
                    .infinity_points()
                    .iter()
                    .all(|p| quadric.eval(p) == 0)
                {
                    complain("contained case quadric misses the infinity line".into());
                }
            }
            SectionCase::External => {
                if !matches!(kind, QuadricKind::SinglePoint | QuadricKind::Conic) {
                    complain(format!("external case produced quadric kind {kind:?}"));
                }
            }
            SectionCase::Bisecant => {
                if !matches!(kind, QuadricKind::LineCross | QuadricKind::Conic) {
                    complain(format!("bisecant case produced quadric kind {kind:?}"));
                }
            }
            // The tangent case admits repeated lines, crosses, conics and
            // also the single-point quadric sitting on the infinity line
            // (the source of the empty sections).
            SectionCase::Tangent => {}
        }
    }
    audit
}

/// Replay the same bookkeeping for a reverse construction: V obtained from
/// the 12-point set by swapping `triangle` for its associated conic. Every
/// section size of V must land in {1,4,7} through the case arithmetic, and
/// some hyperplane must reach 7.
pub fn audit_reverse_cases(
    model_points: &[ProjPoint],
    triangle: &[ProjPoint; 3],
    v: &[ProjPoint],
) -> Result<CaseAudit> {
    let mut audit = CaseAudit::default();
    let conic = quadrangle_of_triangle(triangle)?;
    let plane = Subspace::span(triangle)?;
    let plane_points = plane.points();
    for h in pg53_hyperplanes() {
        let d = section_size(h, model_points);
        let c = section_size(h, v);
        *audit.histogram.entry(c).or_insert(0) += 1;
        let on_conic = conic.iter().filter(|p| h.contains(p)).count();
        let on_triangle = triangle.iter().filter(|p| h.contains(p)).count();
        let section = plane_points.iter().filter(|p| h.contains(p)).count();
        let (case, allowed): (SectionCase, &[usize]) = if section == plane_points.len() {
            (SectionCase::PlaneContained, &[1, 4, 7])
        } else {
            match on_conic {
                0 => (SectionCase::External, &[1, 4]),
                1 => (SectionCase::Tangent, &[1, 4, 7]),
                2 => (SectionCase::Bisecant, &[4, 7]),
                n => {
                    audit
                        .violations
                        .push(format!("a plane line meets the conic in {n} points"));
                    continue;
                }
            }
        };
        *audit.case_counts.entry(case).or_insert(0) += 1;
        let mut complain = |msg: String| {
            audit
                .violations
                .push(format!("hyperplane {:?}: {msg}", h.dual_coords()));
        };
        let expected = match case {
            SectionCase::PlaneContained => (4, 3),
            SectionCase::External => (0, 2),
            SectionCase::Tangent => (1, 0),
            SectionCase::Bisecant => (2, 1),
        };
        if (on_conic, on_triangle) != expected {
            complain(format!(
                "case {case} carries conic/triangle counts ({on_conic},{on_triangle}), expected {expected:?}"
            ));
        }
        if c + on_triangle != d + on_conic {
            complain(format!(
                "reverse identity fails: c={c}, d={d}, conic={on_conic}, triangle={on_triangle}"
            ));
        }
        if !allowed.contains(&c) {
            complain(format!("case {case} produced section size {c}"));
        }
    }
    if audit.histogram.get(&7).copied().unwrap_or(0) == 0 {
        audit
            .violations
            .push("no hyperplane meets the replaced set in 7 points".into());
    }
    Ok(audit)
}
