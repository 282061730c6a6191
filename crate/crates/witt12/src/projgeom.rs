//! Projective spaces PG(n,p) over the supported prime fields, plus the
//! PG(2,3)-specific apparatus: quadric classification, the correspondence
//! between quadrangles and their diagonal triangles, line/conic relations,
//! elliptic involutions and harmonic homologies.
//!
//! Points and hyperplanes are kept in a canonical form (first nonzero
//! coordinate scaled to 1), so equality of projective objects is plain
//! equality of coordinate vectors, and every enumeration is emitted in
//! lexicographic order of those canonical coordinates.

use std::collections::BTreeSet;
use std::sync::LazyLock;

use crate::gf::{self, Matrix, PrimeField, GF3};
use crate::{Error, Result};

/// A point of PG(n,p): a canonicalized nonzero coordinate vector of length
/// n+1. Two points are equal iff their canonical coordinates are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    field: PrimeField,
    coords: Vec<u8>,
}

impl ProjPoint {
    pub fn new(field: PrimeField, coords: &[u8]) -> Result<Self> {
        let mut c: Vec<u8> = coords.iter().map(|&x| x % field.modulus()).collect();
        if c.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        gf::canonicalize(field, &mut c);
        Ok(ProjPoint { field, coords: c })
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The ambient projective dimension n.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let digits: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", digits.join(","))
    }
}

/// A hyperplane of PG(n,p), stored by canonicalized dual coordinates.
/// A point lies on the hyperplane iff the dot product of the coordinate
/// vectors vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    field: PrimeField,
    dual: Vec<u8>,
}

impl Hyperplane {
    pub fn new(field: PrimeField, dual_coords: &[u8]) -> Result<Self> {
        let mut c: Vec<u8> = dual_coords.iter().map(|&x| x % field.modulus()).collect();
        if c.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        gf::canonicalize(field, &mut c);
        Ok(Hyperplane { field, dual: c })
    }

    pub fn dual_coords(&self) -> &[u8] {
        &self.dual
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dual.len() - 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        assert_eq!(self.dual.len(), p.coords().len(), "ambient mismatch");
        gf::dot(self.field, &self.dual, p.coords()) == 0
    }
}

fn enumerate_canonical(field: PrimeField, len: usize) -> Vec<Vec<u8>> {
    // Odometer over base-p digit strings in lexicographic order; keeping
    // only strings whose first nonzero digit is 1 yields each projective
    // class exactly once, already sorted.
    let p = field.modulus();
    let mut out = Vec::new();
    let mut v = vec![0u8; len];
    loop {
        // advance odometer
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] + 1 < p {
                v[i] += 1;
                for x in v[i + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v.clone());
        }
    }
}

/// All (p^{n+1}-1)/(p-1) points of PG(n,p) in lexicographic order.
pub fn enumerate_points(n: usize, field: PrimeField) -> Vec<ProjPoint> {
    assert!(n <= 5, "ambient dimension {n} out of range");
    enumerate_canonical(field, n + 1)
        .into_iter()
        .map(|coords| ProjPoint { field, coords })
        .collect()
}

/// All hyperplanes of PG(n,p) in lexicographic order of dual coordinates.
pub fn enumerate_hyperplanes(n: usize, field: PrimeField) -> Vec<Hyperplane> {
    assert!(n <= 5, "ambient dimension {n} out of range");
    enumerate_canonical(field, n + 1)
        .into_iter()
        .map(|dual| Hyperplane { field, dual })
        .collect()
}

/// The 13 points of PG(2,3), cached.
pub fn pg23_points() -> &'static [ProjPoint] {
    static P: LazyLock<Vec<ProjPoint>> = LazyLock::new(|| enumerate_points(2, GF3));
    &P
}

/// The 13 lines of PG(2,3), cached.
pub fn pg23_lines() -> &'static [Hyperplane] {
    static L: LazyLock<Vec<Hyperplane>> = LazyLock::new(|| enumerate_hyperplanes(2, GF3));
    &L
}

/// The 364 points of PG(5,3), cached.
pub fn pg53_points() -> &'static [ProjPoint] {
    static P: LazyLock<Vec<ProjPoint>> = LazyLock::new(|| enumerate_points(5, GF3));
    &P
}

/// The 364 hyperplanes of PG(5,3), cached.
pub fn pg53_hyperplanes() -> &'static [Hyperplane] {
    static H: LazyLock<Vec<Hyperplane>> = LazyLock::new(|| enumerate_hyperplanes(5, GF3));
    &H
}

/// A subspace of PG(n,p), held as a reduced row echelon basis. The
/// projective dimension is rank - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Smallest subspace containing all given points.
    pub fn span(points: &[ProjPoint]) -> Result<Self> {
        let first = points.first().ok_or_else(|| {
            Error::InvalidInput("span of an empty point set".into())
        })?;
        let len = first.coords().len();
        for p in points {
            if p.coords().len() != len {
                return Err(Error::AmbientMismatch(len - 1, p.ambient_dim()));
            }
        }
        let rows: Vec<Vec<u8>> = points.iter().map(|p| p.coords().to_vec()).collect();
        Ok(Self::from_rows(first.field(), &rows))
    }

    /// Span of arbitrary row vectors (at least one of them nonzero).
    pub fn from_rows(field: PrimeField, rows: &[Vec<u8>]) -> Self {
        let ech = Matrix::from_rows(field, rows).rref();
        let kept: Vec<Vec<u8>> =
            (0..ech.rank).map(|r| ech.matrix.row(r).to_vec()).collect();
        assert!(!kept.is_empty(), "span of zero vectors");
        Subspace { basis: Matrix::from_rows(field, &kept) }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Projective dimension (0 for a point, 1 for a line, ...).
    pub fn proj_dim(&self) -> usize {
        self.rank() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols() - 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let mut rows = self.basis.row_vecs();
        rows.push(p.coords().to_vec());
        Matrix::from_rows(self.field(), &rows).rank() == self.rank()
    }

    /// Coefficients of `p` with respect to the basis rows, if `p` lies in
    /// the subspace.
    pub fn coords_of(&self, p: &ProjPoint) -> Option<Vec<u8>> {
        self.basis
            .transpose()
            .solve(p.coords())
            .map(|sol| sol.particular)
    }

    /// The point with the given basis coefficients.
    pub fn point_at(&self, coeffs: &[u8]) -> Result<ProjPoint> {
        let v = self.basis.transpose().mul_vec(coeffs);
        ProjPoint::new(self.field(), &v)
    }

    /// All points of the subspace, in lexicographic order.
    pub fn points(&self) -> Vec<ProjPoint> {
        let mut pts: Vec<ProjPoint> = enumerate_canonical(self.field(), self.rank())
            .into_iter()
            .map(|coeffs| self.point_at(&coeffs).expect("basis rows are independent"))
            .collect();
        pts.sort();
        pts
    }
}

/// All hyperplanes containing the subspace, in lexicographic order. Their
/// number is (p^{n - dim} - 1)/(p - 1).
pub fn hyperplanes_through(s: &Subspace) -> Vec<Hyperplane> {
    let kernel = s.basis().nullspace();
    let field = s.field();
    let mut out: Vec<Hyperplane> = enumerate_canonical(field, kernel.len())
        .into_iter()
        .map(|coeffs| {
            let mut dual = vec![0u8; s.basis().cols()];
            for (c, k) in coeffs.iter().zip(&kernel) {
                for (d, &kv) in dual.iter_mut().zip(k) {
                    *d = field.add(*d, field.mul(*c, kv));
                }
            }
            Hyperplane::new(field, &dual).expect("kernel combos are nonzero")
        })
        .collect();
    out.sort();
    out
}

/// The p+1 points of the line through two distinct points, emitted as
/// [P, Q, P+Q, P+2Q, ...].
pub fn line_points(p: &ProjPoint, q: &ProjPoint) -> Result<Vec<ProjPoint>> {
    if p.coords().len() != q.coords().len() {
        return Err(Error::AmbientMismatch(p.ambient_dim(), q.ambient_dim()));
    }
    if p == q {
        return Err(Error::IdenticalPoints);
    }
    let field = p.field();
    let mut pts = vec![p.clone(), q.clone()];
    for t in 1..field.modulus() {
        let v: Vec<u8> = p
            .coords()
            .iter()
            .zip(q.coords())
            .map(|(&a, &b)| field.add(a, field.mul(t, b)))
            .collect();
        pts.push(ProjPoint::new(field, &v)?);
    }
    Ok(pts)
}

/// Classification of a plane quadric of PG(2,3) by the rank of its
/// symmetric matrix, with the two rank-2 shapes told apart by their point
/// count (a split cross has 7 points, a non-split form has 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuadricKind {
    /// The zero form; its zero set is the whole plane.
    Zero,
    /// Rank 1: a repeated line, 4 points.
    RepeatedLine,
    /// Rank 2, split: two distinct lines, 7 points.
    LineCross,
    /// Rank 2, non-split: a single point.
    SinglePoint,
    /// Rank 3: a nondegenerate conic, 4 points.
    Conic,
}

/// A quadratic form on PG(2,3), stored both as the coefficient vector of
/// the monomials (x0^2, x0x1, x0x2, x1^2, x1x2, x2^2) and as the matching
/// symmetric 3x3 matrix (2 is invertible mod 3, so the two determine each
/// other).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneQuadric {
    monomials: [u8; 6],
    form: Matrix,
}

impl PlaneQuadric {
    pub fn from_monomial_coeffs(c: [u8; 6]) -> Self {
        let f = GF3;
        let c = c.map(|x| x % 3);
        // off-diagonal entries are half the mixed coefficients; 1/2 = 2 mod 3
        let h = |x: u8| f.mul(2, x);
        let form = Matrix::from_rows(
            f,
            &[
                vec![c[0], h(c[1]), h(c[2])],
                vec![h(c[1]), c[3], h(c[4])],
                vec![h(c[2]), h(c[4]), c[5]],
            ],
        );
        PlaneQuadric { monomials: c, form }
    }

    pub fn monomial_coeffs(&self) -> [u8; 6] {
        self.monomials
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn eval(&self, p: &ProjPoint) -> u8 {
        self.eval_coords(p.coords())
    }

    pub fn eval_coords(&self, x: &[u8]) -> u8 {
        let c = &self.monomials;
        let f = GF3;
        let mut acc = 0u8;
        let monos = [
            (0, 0, c[0]),
            (0, 1, c[1]),
            (0, 2, c[2]),
            (1, 1, c[3]),
            (1, 2, c[4]),
            (2, 2, c[5]),
        ];
        for (i, j, coeff) in monos {
            acc = f.add(acc, f.mul(coeff, f.mul(x[i], x[j])));
        }
        acc
    }

    /// Zero set of the form among the 13 points of PG(2,3), in order.
    pub fn zero_points(&self) -> Vec<ProjPoint> {
        pg23_points()
            .iter()
            .filter(|p| self.eval(p) == 0)
            .cloned()
            .collect()
    }

    pub fn kind(&self) -> QuadricKind {
        match self.form.rank() {
            0 => QuadricKind::Zero,
            1 => QuadricKind::RepeatedLine,
            3 => QuadricKind::Conic,
            2 => {
                if self.zero_points().len() == 1 {
                    QuadricKind::SinglePoint
                } else {
                    QuadricKind::LineCross
                }
            }
            _ => unreachable!("3x3 matrix rank"),
        }
    }

    /// All quadrics vanishing on the given plane points: the canonical
    /// projective representatives of the kernel of the evaluation map.
    pub fn vanishing_on(points: &[ProjPoint]) -> Vec<PlaneQuadric> {
        let rows: Vec<Vec<u8>> = points
            .iter()
            .map(|p| {
                let x = p.coords();
                assert_eq!(x.len(), 3, "plane quadrics live in PG(2,3)");
                let f = GF3;
                vec![
                    f.mul(x[0], x[0]),
                    f.mul(x[0], x[1]),
                    f.mul(x[0], x[2]),
                    f.mul(x[1], x[1]),
                    f.mul(x[1], x[2]),
                    f.mul(x[2], x[2]),
                ]
            })
            .collect();
        let kernel = Matrix::from_rows(GF3, &rows).nullspace();
        if kernel.is_empty() {
            return Vec::new();
        }
        enumerate_canonical(GF3, kernel.len())
            .into_iter()
            .map(|coeffs| {
                let mut c = [0u8; 6];
                for (w, k) in coeffs.iter().zip(&kernel) {
                    for (ci, &kv) in c.iter_mut().zip(k) {
                        *ci = GF3.add(*ci, GF3.mul(*w, kv));
                    }
                }
                PlaneQuadric::from_monomial_coeffs(c)
            })
            .collect()
    }
}

fn check_plane_of_order_three(points: &[ProjPoint]) -> Result<Subspace> {
    let span = Subspace::span(points)?;
    if span.field() != GF3 {
        return Err(Error::InvalidInput("plane apparatus needs GF(3)".into()));
    }
    Ok(span)
}

/// The four points of a plane of order 3 lying on no side of the triangle:
/// the associated conic of the triangle. The plane may sit inside any
/// ambient PG(n,3).
pub fn quadrangle_of_triangle(triangle: &[ProjPoint; 3]) -> Result<Vec<ProjPoint>> {
    let span = check_plane_of_order_three(triangle)?;
    if span.rank() != 3 {
        return Err(Error::CollinearPoints);
    }
    let mut on_side = BTreeSet::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        for p in line_points(&triangle[i], &triangle[j])? {
            on_side.insert(p);
        }
    }
    let quad: Vec<ProjPoint> = span
        .points()
        .into_iter()
        .filter(|p| !on_side.contains(p))
        .collect();
    assert_eq!(quad.len(), 4, "a triangle of a plane of order 3 misses 4 points");
    Ok(quad)
}

/// The diagonal triangle of a planar quadrangle: the three intersection
/// points of the pairs of opposite sides, in lexicographic order.
pub fn diagonal_triangle(quadrangle: &[ProjPoint; 4]) -> Result<[ProjPoint; 3]> {
    let span = check_plane_of_order_three(quadrangle)?;
    if span.rank() != 3 {
        return Err(Error::DegenerateQuadrangle);
    }
    for skip in 0..4 {
        let tri: Vec<ProjPoint> = (0..4)
            .filter(|&i| i != skip)
            .map(|i| quadrangle[i].clone())
            .collect();
        if Subspace::span(&tri)?.rank() != 3 {
            return Err(Error::DegenerateQuadrangle);
        }
    }
    let mut diag = Vec::with_capacity(3);
    for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        let side1: BTreeSet<ProjPoint> =
            line_points(&quadrangle[a], &quadrangle[b])?.into_iter().collect();
        let side2: BTreeSet<ProjPoint> =
            line_points(&quadrangle[c], &quadrangle[d])?.into_iter().collect();
        let mut meet = side1.intersection(&side2);
        let point = meet.next().expect("coplanar lines meet");
        assert!(meet.next().is_none(), "opposite sides meet in one point");
        diag.push(point.clone());
    }
    diag.sort();
    Ok([diag[0].clone(), diag[1].clone(), diag[2].clone()])
}

/// Relation of a line to a 4-point conic in a common plane of order 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineConicRelation {
    External,
    Tangent,
    Bisecant,
}

/// Classify the line spanned by the given collinear points against the
/// conic, and list the conic's internal points (= its diagonal points)
/// lying on the line.
pub fn line_conic_relation(
    line: &[ProjPoint],
    conic: &[ProjPoint; 4],
) -> Result<(LineConicRelation, Vec<ProjPoint>)> {
    if line.len() < 2 {
        return Err(Error::InvalidInput("a line needs two points".into()));
    }
    let full = line_points(&line[0], &line[1])?;
    for p in line {
        if !full.contains(p) {
            return Err(Error::CollinearPoints);
        }
    }
    let on_conic = full.iter().filter(|p| conic.contains(p)).count();
    let relation = match on_conic {
        0 => LineConicRelation::External,
        1 => LineConicRelation::Tangent,
        2 => LineConicRelation::Bisecant,
        n => {
            return Err(Error::InvalidInput(format!(
                "line meets the would-be conic in {n} points"
            )))
        }
    };
    let diag = diagonal_triangle(conic)?;
    let internal: Vec<ProjPoint> =
        diag.iter().filter(|d| full.contains(d)).cloned().collect();
    Ok((relation, internal))
}

/// A fixed-point-free involution of a 4-point line, as a pairing of the
/// point indices together with a 2x2 matrix over GF(3) inducing it on line
/// parameters.
#[derive(Debug, Clone)]
pub struct LineInvolution {
    pub pairs: [[usize; 2]; 2],
    pub witness: Matrix,
}

impl LineInvolution {
    /// Image of a point index under the pairing.
    pub fn apply(&self, i: usize) -> usize {
        for pair in &self.pairs {
            if pair[0] == i {
                return pair[1];
            }
            if pair[1] == i {
                return pair[0];
            }
        }
        panic!("index {i} outside the 4-point line");
    }

    pub fn same_pairing(&self, other: &[[usize; 2]; 2]) -> bool {
        let norm = |pairs: &[[usize; 2]; 2]| {
            let mut v: Vec<[usize; 2]> = pairs
                .iter()
                .map(|p| [p[0].min(p[1]), p[0].max(p[1])])
                .collect();
            v.sort();
            v
        };
        norm(&self.pairs) == norm(other)
    }
}

/// Parameters (a, b) of each line point with respect to the first two, so
/// that point = a * line[0] + b * line[1], canonicalized.
fn line_parameters(line: &[ProjPoint; 4]) -> Result<Vec<Vec<u8>>> {
    let field = line[0].field();
    let base = Matrix::from_columns(
        field,
        &[line[0].coords().to_vec(), line[1].coords().to_vec()],
    );
    line.iter()
        .map(|p| {
            let sol = base
                .solve(p.coords())
                .ok_or(Error::CollinearPoints)?;
            let mut param = sol.particular;
            gf::canonicalize(field, &mut param);
            Ok(param)
        })
        .collect()
}

/// The three fixed-point-free pairings of a 4-point line, each certified to
/// be a projectivity by an explicit invertible 2x2 matrix on line
/// parameters (found among the 48 elements of GL(2,3)).
pub fn elliptic_involutions(line: &[ProjPoint; 4]) -> Result<Vec<LineInvolution>> {
    let field = line[0].field();
    if field != GF3 {
        return Err(Error::InvalidInput("elliptic involutions need GF(3)".into()));
    }
    if line.iter().collect::<BTreeSet<_>>().len() != 4 {
        return Err(Error::IdenticalPoints);
    }
    let params = line_parameters(line)?;
    let full = line_points(&line[0], &line[1])?;
    for p in line.iter() {
        if !full.contains(p) {
            return Err(Error::CollinearPoints);
        }
    }
    let pairings: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];
    let mut out = Vec::with_capacity(3);
    for pairing in pairings {
        let image_of = |i: usize| -> usize {
            for pair in &pairing {
                if pair[0] == i {
                    return pair[1];
                }
                if pair[1] == i {
                    return pair[0];
                }
            }
            unreachable!()
        };
        let mut witness = None;
        'matrices: for code in 0..81u8 {
            let entries = [code % 3, (code / 3) % 3, (code / 9) % 3, (code / 27) % 3];
            let m = Matrix::from_rows(
                GF3,
                &[vec![entries[0], entries[1]], vec![entries[2], entries[3]]],
            );
            if !m.is_invertible() {
                continue;
            }
            for (i, param) in params.iter().enumerate() {
                let mut img = m.mul_vec(param);
                gf::canonicalize(GF3, &mut img);
                if params[image_of(i)] != img {
                    continue 'matrices;
                }
            }
            witness = Some(m);
            break;
        }
        let witness = witness.expect("every pairing of PG(1,3) is a projectivity");
        out.push(LineInvolution { pairs: pairing, witness });
    }
    Ok(out)
}

/// Center of the harmonic homology extending an elliptic involution of a
/// conic: the common point of the two chords joining paired points. It is
/// always one of the conic's diagonal points.
pub fn homology_center(
    conic: &[ProjPoint; 4],
    pairs: &[[usize; 2]; 2],
) -> Result<ProjPoint> {
    let mut seen: Vec<usize> = pairs.iter().flatten().copied().collect();
    seen.sort_unstable();
    if seen != [0, 1, 2, 3] {
        return Err(Error::InvalidInput(
            "pairing must match the four conic points".into(),
        ));
    }
    let chord = |pair: [usize; 2]| line_points(&conic[pair[0]], &conic[pair[1]]);
    let c1: BTreeSet<ProjPoint> = chord(pairs[0])?.into_iter().collect();
    let c2: BTreeSet<ProjPoint> = chord(pairs[1])?.into_iter().collect();
    let mut meet = c1.intersection(&c2);
    let center = meet.next().ok_or(Error::DegenerateQuadrangle)?.clone();
    if meet.next().is_some() {
        return Err(Error::DegenerateQuadrangle);
    }
    Ok(center)
}

/// Matrix of the harmonic homology with the given center and axis, in the
/// coordinates the two are expressed in: x -> (a.c) x - 2 (a.x) c.
pub fn harmonic_homology(field: PrimeField, center: &[u8], axis: &[u8]) -> Matrix {
    let ac = gf::dot(field, axis, center);
    assert!(ac != 0, "homology center must avoid the axis");
    let n = center.len();
    let mut m = Matrix::zero(field, n, n);
    for r in 0..n {
        for c in 0..n {
            let mut v = if r == c { ac } else { 0 };
            let two = field.reduce(2);
            v = field.sub(v, field.mul(two, field.mul(center[r], axis[c])));
            m.set(r, c, v);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{GF2, GF5};

    fn pt(coords: &[u8]) -> ProjPoint {
        ProjPoint::new(GF3, coords).unwrap()
    }

    #[test]
    fn point_counts_match_the_gaussian_formula() {
        assert_eq!(enumerate_points(2, GF3).len(), 13);
        assert_eq!(enumerate_points(5, GF3).len(), 364);
        assert_eq!(enumerate_points(1, GF3).len(), 4);
        assert_eq!(enumerate_points(2, GF2).len(), 7);
        assert_eq!(enumerate_points(2, GF5).len(), 31);
    }

    #[test]
    fn points_are_canonical_sorted_and_distinct() {
        let pts = enumerate_points(3, GF5);
        assert_eq!(pts.len(), 156);
        for w in pts.windows(2) {
            assert!(w[0] < w[1]);
        }
        for p in &pts {
            assert_eq!(*p.coords().iter().find(|&&x| x != 0).unwrap(), 1);
        }
    }

    #[test]
    fn scaling_a_representative_gives_the_same_point() {
        let a = pt(&[0, 2, 1, 0, 2, 2]);
        let b = pt(&[0, 1, 2, 0, 1, 1]);
        assert_eq!(a, b);
    }

    #[test]
    fn span_of_one_point_has_dimension_zero() {
        let s = Subspace::span(&[pt(&[1, 2, 0])]).unwrap();
        assert_eq!(s.proj_dim(), 0);
    }

    #[test]
    fn span_of_the_infinity_quadrangle_is_a_plane() {
        let quad = [
            pt(&[0, 0, 0, 1, 0, 0]),
            pt(&[0, 0, 0, 0, 0, 1]),
            pt(&[0, 0, 0, 1, 1, 1]),
            pt(&[0, 0, 0, 1, 2, 1]),
        ];
        let s = Subspace::span(&quad).unwrap();
        assert_eq!(s.proj_dim(), 2);
        assert_eq!(s.points().len(), 13);
    }

    #[test]
    fn hyperplane_counts_through_subspaces() {
        // a plane of PG(5,3) lies in 13 hyperplanes, a solid in 4, a 4-flat in 1
        let e = |i: usize| {
            let mut v = vec![0u8; 6];
            v[i] = 1;
            pt(&v)
        };
        let plane = Subspace::span(&[e(0), e(1), e(2)]).unwrap();
        assert_eq!(hyperplanes_through(&plane).len(), 13);
        let solid = Subspace::span(&[e(0), e(1), e(2), e(3)]).unwrap();
        assert_eq!(hyperplanes_through(&solid).len(), 4);
        let four_flat = Subspace::span(&[e(0), e(1), e(2), e(3), e(4)]).unwrap();
        let through = hyperplanes_through(&four_flat);
        assert_eq!(through.len(), 1);
        assert_eq!(through[0].dual_coords(), &[0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn hyperplanes_through_contain_the_subspace() {
        let s = Subspace::span(&[pt(&[1, 0, 0, 0, 1, 0]), pt(&[0, 1, 0, 2, 0, 0])]).unwrap();
        let hs = hyperplanes_through(&s);
        assert_eq!(hs.len(), 40); // (3^4 - 1)/2
        for h in &hs {
            for p in s.points() {
                assert!(h.contains(&p));
            }
        }
    }

    #[test]
    fn line_points_order_and_count() {
        let l = line_points(&pt(&[1, 0, 0]), &pt(&[0, 1, 0])).unwrap();
        assert_eq!(
            l,
            vec![pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0]), pt(&[1, 2, 0])]
        );
    }

    #[test]
    fn line_through_identical_points_is_rejected() {
        let p = pt(&[1, 2, 1]);
        assert!(matches!(line_points(&p, &p), Err(Error::IdenticalPoints)));
    }

    #[test]
    fn quadric_classification_examples() {
        // x1^2: the line x1 = 0 repeated
        let q = PlaneQuadric::from_monomial_coeffs([0, 0, 0, 1, 0, 0]);
        assert_eq!(q.kind(), QuadricKind::RepeatedLine);
        assert_eq!(q.zero_points().len(), 4);

        // x1 x2: a cross of two lines
        let q = PlaneQuadric::from_monomial_coeffs([0, 0, 0, 0, 1, 0]);
        assert_eq!(q.kind(), QuadricKind::LineCross);
        assert_eq!(q.zero_points().len(), 7);

        // x0^2 + x1^2 + x2^2: rank 3, hence a 4-point conic
        let q = PlaneQuadric::from_monomial_coeffs([1, 0, 0, 1, 0, 1]);
        assert_eq!(q.kind(), QuadricKind::Conic);
        assert_eq!(q.zero_points().len(), 4);

        // x0^2 + x1^2: rank 2 with a single zero (0,0,1)
        let q = PlaneQuadric::from_monomial_coeffs([1, 0, 0, 1, 0, 0]);
        assert_eq!(q.kind(), QuadricKind::SinglePoint);
        assert_eq!(q.zero_points(), vec![pt(&[0, 0, 1])]);

        let q = PlaneQuadric::from_monomial_coeffs([0; 6]);
        assert_eq!(q.kind(), QuadricKind::Zero);
        assert_eq!(q.zero_points().len(), 13);
    }

    #[test]
    fn quadric_point_counts_by_kind() {
        // every nonzero coefficient vector, i.e. all 364 quadrics up to scalar
        let mut counts = std::collections::BTreeMap::new();
        for coeffs in enumerate_canonical(GF3, 6) {
            let q = PlaneQuadric::from_monomial_coeffs(coeffs.try_into().unwrap());
            let kind = q.kind();
            let n = q.zero_points().len();
            let expected = match kind {
                QuadricKind::RepeatedLine => 4,
                QuadricKind::LineCross => 7,
                QuadricKind::SinglePoint => 1,
                QuadricKind::Conic => 4,
                QuadricKind::Zero => unreachable!("nonzero coefficients"),
            };
            assert_eq!(n, expected);
            *counts.entry(kind).or_insert(0usize) += 1;
        }
        // 13 repeated lines, 78 crosses, 39 single points, 234 conics
        assert_eq!(counts[&QuadricKind::RepeatedLine], 13);
        assert_eq!(counts[&QuadricKind::LineCross], 78);
        assert_eq!(counts[&QuadricKind::SinglePoint], 39);
        assert_eq!(counts[&QuadricKind::Conic], 234);
    }

    #[test]
    fn associated_conic_of_the_standard_triangle() {
        let tri = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        let quad = quadrangle_of_triangle(&tri).unwrap();
        assert_eq!(
            quad,
            vec![pt(&[1, 1, 1]), pt(&[1, 1, 2]), pt(&[1, 2, 1]), pt(&[1, 2, 2])]
        );
    }

    #[test]
    fn collinear_triangle_is_rejected() {
        let tri = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0])];
        assert!(matches!(
            quadrangle_of_triangle(&tri),
            Err(Error::CollinearPoints)
        ));
    }

    #[test]
    fn diagonal_triangle_of_the_standard_quadrangle() {
        let quad = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1]), pt(&[1, 1, 1])];
        let tri = diagonal_triangle(&quad).unwrap();
        assert_eq!(tri, [pt(&[0, 1, 1]), pt(&[1, 0, 1]), pt(&[1, 1, 0])]);
    }

    #[test]
    fn diagonal_triangle_of_the_infinity_quadrangle() {
        let quad = [
            pt(&[0, 0, 0, 1, 0, 0]),
            pt(&[0, 0, 0, 0, 0, 1]),
            pt(&[0, 0, 0, 1, 1, 1]),
            pt(&[0, 0, 0, 1, 2, 1]),
        ];
        let tri = diagonal_triangle(&quad).unwrap();
        // the canonical representatives of F(0,0,0,1,0,1), F(0,0,0,2,2,1),
        // F(0,0,0,2,1,1), in lexicographic order
        assert_eq!(
            tri,
            [
                pt(&[0, 0, 0, 1, 0, 1]),
                pt(&[0, 0, 0, 2, 2, 1]),
                pt(&[0, 0, 0, 2, 1, 1]),
            ]
        );
    }

    #[test]
    fn degenerate_quadrangle_is_rejected() {
        let quad = [pt(&[1, 0, 0]), pt(&[0, 1, 0]), pt(&[1, 1, 0]), pt(&[0, 0, 1])];
        assert!(matches!(
            diagonal_triangle(&quad),
            Err(Error::DegenerateQuadrangle)
        ));
    }

    /// The two constructions invert each other on all 234 conics of PG(2,3).
    #[test]
    fn quadrangle_triangle_correspondence_is_a_bijection() {
        let mut conics_seen = 0;
        for coeffs in enumerate_canonical(GF3, 6) {
            let q = PlaneQuadric::from_monomial_coeffs(coeffs.try_into().unwrap());
            if q.kind() != QuadricKind::Conic {
                continue;
            }
            conics_seen += 1;
            let quad: [ProjPoint; 4] = q.zero_points().try_into().unwrap();
            let tri = diagonal_triangle(&quad).unwrap();
            let mut back = quadrangle_of_triangle(&tri).unwrap();
            back.sort();
            let mut orig = quad.to_vec();
            orig.sort();
            assert_eq!(back, orig);
            // and the other direction
            let quad2 = quadrangle_of_triangle(&tri).unwrap();
            let tri2 = diagonal_triangle(&quad2.clone().try_into().unwrap()).unwrap();
            assert_eq!(tri, tri2);
        }
        assert_eq!(conics_seen, 234);
    }

    /// Every conic splits the 13 lines into 3 external, 4 tangent and 6
    /// bisecant lines, and its internal points are its diagonal triangle.
    #[test]
    fn line_conic_relations_exhaustively() {
        for coeffs in enumerate_canonical(GF3, 6) {
            let q = PlaneQuadric::from_monomial_coeffs(coeffs.try_into().unwrap());
            if q.kind() != QuadricKind::Conic {
                continue;
            }
            let conic: [ProjPoint; 4] = q.zero_points().try_into().unwrap();
            let diag = diagonal_triangle(&conic).unwrap();
            let mut tallies = (0, 0, 0);
            for line in pg23_lines() {
                let pts: Vec<ProjPoint> = pg23_points()
                    .iter()
                    .filter(|p| line.contains(p))
                    .cloned()
                    .collect();
                let (rel, internal) = line_conic_relation(&pts, &conic).unwrap();
                match rel {
                    LineConicRelation::External => {
                        tallies.0 += 1;
                        assert_eq!(internal.len(), 2);
                    }
                    LineConicRelation::Tangent => {
                        tallies.1 += 1;
                        assert!(internal.is_empty());
                    }
                    LineConicRelation::Bisecant => {
                        tallies.2 += 1;
                        assert_eq!(internal.len(), 1);
                    }
                }
                for d in internal {
                    assert!(diag.contains(&d));
                }
            }
            assert_eq!(tallies, (3, 4, 6));
        }
    }

    #[test]
    fn a_line_carries_exactly_three_elliptic_involutions() {
        let line: [ProjPoint; 4] = line_points(&pt(&[1, 0, 0]), &pt(&[0, 1, 0]))
            .unwrap()
            .try_into()
            .unwrap();
        let invs = elliptic_involutions(&line).unwrap();
        assert_eq!(invs.len(), 3);
        for inv in &invs {
            for i in 0..4 {
                let j = inv.apply(i);
                assert_ne!(i, j);
                assert_eq!(inv.apply(j), i);
            }
            assert!(inv.witness.is_invertible());
        }
    }

    #[test]
    fn homology_centers_are_the_diagonal_points() {
        // check on every conic of PG(2,3)
        for coeffs in enumerate_canonical(GF3, 6) {
            let q = PlaneQuadric::from_monomial_coeffs(coeffs.try_into().unwrap());
            if q.kind() != QuadricKind::Conic {
                continue;
            }
            let conic: [ProjPoint; 4] = q.zero_points().try_into().unwrap();
            let diag = diagonal_triangle(&conic).unwrap();
            let mut centers = BTreeSet::new();
            for pairs in [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]] {
                let c = homology_center(&conic, &pairs).unwrap();
                assert!(diag.contains(&c));
                centers.insert(c);
            }
            assert_eq!(centers.len(), 3);
            assert_eq!(centers, diag.iter().cloned().collect());
        }
    }

    #[test]
    fn standard_conic_homology_center() {
        let conic = [pt(&[1, 1, 1]), pt(&[1, 1, 2]), pt(&[1, 2, 1]), pt(&[1, 2, 2])];
        let center = homology_center(&conic, &[[0, 1], [2, 3]]).unwrap();
        // chords x1 = x0 and x1 = 2x0 meet in (0,0,1)
        assert_eq!(center, pt(&[0, 0, 1]));
    }

    #[test]
    fn harmonic_homology_is_an_involution_fixing_center_and_axis() {
        let center = [1u8, 0, 0];
        let axis = [1u8, 1, 1];
        let h = harmonic_homology(GF3, &center, &axis);
        let sq = h.mul(&h).canonical_scale();
        assert_eq!(sq, Matrix::identity(GF3, 3));
        let c_img = h.mul_vec(&center);
        let c_pt = ProjPoint::new(GF3, &c_img).unwrap();
        assert_eq!(c_pt, pt(&center));
    }
}
