//! Ternary and small-prime linear codes attached to the construction.
//!
//! Words are coordinate vectors indexed by the canonical point enumeration
//! of their ambient space; representative vectors of projective points are
//! always the canonical (first nonzero = 1) coordinates, which pins every
//! generator matrix bit-for-bit. Over GF(3) a scalar squared is 1, so none
//! of the orthogonality statements depend on that choice.
//!
//! The cast:
//!
//! | code                    | parameters   | provenance                             |
//! |-------------------------|--------------|----------------------------------------|
//! | hyperplane code         | [364, 22]    | characteristic vectors of hyperplanes  |
//! | Golay code              | [12, 6, 6]   | functionals evaluated on the 12 points |
//! | Veronese code C         | [13, 6, 6]   | functionals evaluated on the surface   |
//! | line code C(p)          | [p^2+p+1, (p^2+p+2)/2] | line characteristic vectors  |
//! | E(p), C'(p)             | = C(p) dual  | line differences / line complements    |
//!
//! The minimum distance 121 of the hyperplane code is on record from the
//! literature but is not certified here: its 3^22 codewords are out of
//! reach, so only the dimension is verified.

use std::collections::BTreeMap;

use crate::gf::{dot, Matrix, PrimeField, GF3};
use crate::projgeom::{
    enumerate_hyperplanes, enumerate_points, pg53_hyperplanes, pg53_points, ProjPoint,
};
use crate::veronese::{veronese_surface, WittModel};
use crate::{Error, Result};

/// A linear code held by a full-rank generator matrix in reduced row
/// echelon form, so two codes are equal exactly when the structs are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: PrimeField,
    length: usize,
    generator: Matrix,
}

impl LinearCode {
    /// Span of the given words.
    pub fn from_rows(field: PrimeField, length: usize, rows: &[Vec<u8>]) -> Self {
        assert!(rows.iter().all(|r| r.len() == length), "word length mismatch");
        if rows.is_empty() {
            return LinearCode { field, length, generator: Matrix::zero(field, 0, length) };
        }
        let ech = Matrix::from_rows(field, rows).rref();
        let mut generator = Matrix::zero(field, ech.rank, length);
        for r in 0..ech.rank {
            for c in 0..length {
                generator.set(r, c, ech.matrix.get(r, c));
            }
        }
        LinearCode { field, length, generator }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// The dual code under the standard dot product.
    pub fn dual(&self) -> LinearCode {
        if self.dimension() == 0 {
            let id = Matrix::identity(self.field, self.length);
            return LinearCode::from_rows(self.field, self.length, &id.row_vecs());
        }
        LinearCode::from_rows(self.field, self.length, &self.generator.nullspace())
    }

    /// Membership by rank: appending the word must not raise the rank.
    pub fn contains(&self, word: &[u8]) -> bool {
        assert_eq!(word.len(), self.length);
        if self.dimension() == 0 {
            return word.iter().all(|&x| x == 0);
        }
        let mut rows = self.generator.row_vecs();
        rows.push(word.to_vec());
        Matrix::from_rows(self.field, &rows).rank() == self.dimension()
    }

    /// Word orthogonal to every generator, i.e. membership in the dual.
    pub fn in_dual(&self, word: &[u8]) -> bool {
        assert_eq!(word.len(), self.length);
        (0..self.dimension()).all(|r| dot(self.field, self.generator.row(r), word) == 0)
    }

    pub fn contains_code(&self, other: &LinearCode) -> bool {
        (0..other.dimension()).all(|r| self.contains(other.generator.row(r)))
    }

    pub fn is_self_orthogonal(&self) -> bool {
        (0..self.dimension()).all(|r| {
            (r..self.dimension())
                .all(|s| dot(self.field, self.generator.row(r), self.generator.row(s)) == 0)
        })
    }

    pub fn is_self_dual(&self) -> bool {
        self.is_self_orthogonal() && 2 * self.dimension() == self.length
    }

    /// Visit every codeword once (p^k of them; the dimension is capped to
    /// keep enumeration honest).
    pub fn for_each_codeword(&self, mut f: impl FnMut(&[u8])) {
        let k = self.dimension();
        assert!(k <= 12, "codeword enumeration capped at dimension 12");
        let p = self.field.modulus();
        let mut message = vec![0u8; k];
        let mut word = vec![0u8; self.length];
        loop {
            f(&word);
            // advance the message odometer and update the running word
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if message[i] + 1 < p {
                    message[i] += 1;
                    for (w, g) in word.iter_mut().zip(self.generator.row(i)) {
                        *w = self.field.add(*w, *g);
                    }
                    break;
                }
                // digit rollover: subtract (p-1) * row = add row once more
                message[i] = 0;
                for (w, g) in word.iter_mut().zip(self.generator.row(i)) {
                    *w = self.field.add(*w, *g);
                }
            }
        }
    }

    /// Number of codewords of each weight, index = weight.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut dist = vec![0u64; self.length + 1];
        self.for_each_codeword(|w| {
            let weight = w.iter().filter(|&&x| x != 0).count();
            dist[weight] += 1;
        });
        dist
    }

    /// Smallest weight of a nonzero codeword.
    pub fn min_weight(&self) -> usize {
        let dist = self.weight_distribution();
        dist.iter()
            .enumerate()
            .skip(1)
            .find(|(_, &n)| n > 0)
            .map(|(w, _)| w)
            .expect("nonzero code")
    }
}

/// Characteristic vector of a point subset with respect to an ambient
/// enumeration.
pub fn characteristic_vector(
    subset: &[ProjPoint],
    ambient: &[ProjPoint],
) -> Result<Vec<u8>> {
    let mut word = vec![0u8; ambient.len()];
    for p in subset {
        let i = ambient
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::InvalidInput(format!("{p} is not an ambient point")))?;
        word[i] = 1;
    }
    Ok(word)
}

fn sub_words(field: PrimeField, a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| field.sub(x, y)).collect()
}

fn add_words(field: PrimeField, a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

/// The [364, 22] code spanned by the characteristic vectors of all
/// hyperplanes of PG(5,3). Only the dimension is certified; the minimum
/// distance 121 is recorded from the literature.
pub fn hyperplane_code() -> LinearCode {
    let points = pg53_points();
    let rows: Vec<Vec<u8>> = pg53_hyperplanes()
        .iter()
        .map(|h| {
            points
                .iter()
                .map(|p| u8::from(h.contains(p)))
                .collect()
        })
        .collect();
    LinearCode::from_rows(GF3, points.len(), &rows)
}

/// The extended ternary Golay code: evaluate all linear functionals on the
/// canonical coordinate vectors of the twelve model points. The generator
/// is the transposed coordinate matrix.
pub fn golay_code(model: &WittModel) -> LinearCode {
    let rows: Vec<Vec<u8>> = (0..6)
        .map(|j| model.points().iter().map(|p| p.coords()[j]).collect())
        .collect();
    LinearCode::from_rows(GF3, 12, &rows)
}

/// The [13, 6, 6] code obtained the same way from the 13 surface points.
pub fn veronese_code() -> LinearCode {
    let rows: Vec<Vec<u8>> = (0..6)
        .map(|j| veronese_surface().iter().map(|p| p.coords()[j]).collect())
        .collect();
    LinearCode::from_rows(GF3, 13, &rows)
}

/// C(p): the code over GF(p) spanned by the characteristic vectors of the
/// lines of PG(2,p). Its dimension is (p^2+p+2)/2 and its dual sits inside
/// it with codimension 1.
pub fn line_code(field: PrimeField) -> LinearCode {
    let points = enumerate_points(2, field);
    let rows: Vec<Vec<u8>> = enumerate_hyperplanes(2, field)
        .iter()
        .map(|l| points.iter().map(|p| u8::from(l.contains(p))).collect())
        .collect();
    LinearCode::from_rows(field, points.len(), &rows)
}

/// E(p): spanned by the differences of line characteristic vectors.
pub fn line_difference_code(field: PrimeField) -> LinearCode {
    let points = enumerate_points(2, field);
    let lines: Vec<Vec<u8>> = enumerate_hyperplanes(2, field)
        .iter()
        .map(|l| points.iter().map(|p| u8::from(l.contains(p))).collect())
        .collect();
    let rows: Vec<Vec<u8>> = lines[1..]
        .iter()
        .map(|l| sub_words(field, l, &lines[0]))
        .collect();
    LinearCode::from_rows(field, points.len(), &rows)
}

/// C'(p): spanned by the characteristic vectors of line complements.
pub fn line_complement_code(field: PrimeField) -> LinearCode {
    let points = enumerate_points(2, field);
    let rows: Vec<Vec<u8>> = enumerate_hyperplanes(2, field)
        .iter()
        .map(|l| points.iter().map(|p| u8::from(!l.contains(p))).collect())
        .collect();
    LinearCode::from_rows(field, points.len(), &rows)
}

/// The characteristic-vector identity of the construction, evaluated in
/// F^364: chi(surface) - chi(conic) + chi(triangle) = chi(model).
pub fn chi_identity_holds(model: &WittModel) -> bool {
    let ambient = pg53_points();
    let chi = |s: &[ProjPoint]| characteristic_vector(s, ambient).expect("ambient points");
    let lhs = add_words(
        GF3,
        &sub_words(GF3, &chi(veronese_surface()), &chi(model.quadrangle().as_slice())),
        &chi(model.triangle().as_slice()),
    );
    lhs == chi(model.points())
}

/// The word carrying the model away from the surface: chi(triangle) -
/// chi(conic). It must have weight 7 and dot product 2 with every
/// hyperplane, matching dot products 1 for the surface and 0 for the model.
#[derive(Debug, Clone)]
pub struct CorrectionWordReport {
    pub weight: usize,
    pub dot_two_with_every_hyperplane: bool,
    pub surface_dots_one: bool,
    pub model_dots_zero: bool,
}

impl CorrectionWordReport {
    pub fn pass(&self) -> bool {
        self.weight == 7
            && self.dot_two_with_every_hyperplane
            && self.surface_dots_one
            && self.model_dots_zero
    }
}

pub fn correction_word_check(model: &WittModel) -> CorrectionWordReport {
    let ambient = pg53_points();
    let chi = |s: &[ProjPoint]| characteristic_vector(s, ambient).expect("ambient points");
    let word = sub_words(GF3, &chi(model.triangle().as_slice()), &chi(model.quadrangle().as_slice()));
    let surface = chi(veronese_surface());
    let model_chi = chi(model.points());
    let mut report = CorrectionWordReport {
        weight: word.iter().filter(|&&x| x != 0).count(),
        dot_two_with_every_hyperplane: true,
        surface_dots_one: true,
        model_dots_zero: true,
    };
    for h in pg53_hyperplanes() {
        let chi_h: Vec<u8> = ambient.iter().map(|p| u8::from(h.contains(p))).collect();
        report.dot_two_with_every_hyperplane &= dot(GF3, &word, &chi_h) == 2;
        report.surface_dots_one &= dot(GF3, &surface, &chi_h) == 1;
        report.model_dots_zero &= dot(GF3, &model_chi, &chi_h) == 0;
    }
    report
}

/// Identification of the Veronese code with the dual of the line code of
/// PG(2,3), together with the quadruple patterns that force the inclusion.
#[derive(Debug, Clone)]
pub struct VeroneseCodeReport {
    pub equals_line_code_dual: bool,
    pub self_orthogonal: bool,
    pub quadratic_form_words_match: bool,
    /// Value multisets of quadratic forms on the 4 points of a line, each
    /// summing to zero mod 3.
    pub line_patterns: Vec<[u8; 4]>,
    pub patterns_within_allowed: bool,
}

impl VeroneseCodeReport {
    pub fn pass(&self) -> bool {
        self.equals_line_code_dual
            && self.self_orthogonal
            && self.quadratic_form_words_match
            && self.patterns_within_allowed
    }
}

pub fn identify_veronese_code() -> VeroneseCodeReport {
    let c = veronese_code();
    let c3_dual = line_code(GF3).dual();
    let equals = c == c3_dual;
    let self_orthogonal = c.is_self_orthogonal();

    // Evaluating quadratic forms on the 13 points gives the same word set:
    // forms are in bijection with hyperplane functionals, and the word of
    // a form is the word of its functional.
    let mut form_words = std::collections::BTreeSet::new();
    let points: Vec<Vec<u8>> = veronese_surface().iter().map(|p| p.coords().to_vec()).collect();
    let mut coeffs = [0u8; 6];
    loop {
        let word: Vec<u8> = points.iter().map(|v| dot(GF3, &coeffs, v)).collect();
        form_words.insert(word);
        let mut i = 6;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if coeffs[i] + 1 < 3 {
                coeffs[i] += 1;
                coeffs[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
        if coeffs == [0u8; 6] {
            break;
        }
    }
    let mut codewords = std::collections::BTreeSet::new();
    c.for_each_codeword(|w| {
        codewords.insert(w.to_vec());
    });
    let words_match = form_words == codewords;

    // value multisets over lines
    let plane_points = enumerate_points(2, GF3);
    let allowed: [[u8; 4]; 5] =
        [[0, 0, 0, 0], [0, 1, 1, 1], [0, 2, 2, 2], [0, 0, 1, 2], [1, 1, 2, 2]];
    let mut seen = std::collections::BTreeSet::new();
    let mut within = true;
    for line in enumerate_hyperplanes(2, GF3) {
        let on_line: Vec<&ProjPoint> =
            plane_points.iter().filter(|p| line.contains(p)).collect();
        let mut coeffs = [0u8; 6];
        loop {
            let q = crate::projgeom::PlaneQuadric::from_monomial_coeffs(coeffs);
            let mut values: [u8; 4] = [
                q.eval(on_line[0]),
                q.eval(on_line[1]),
                q.eval(on_line[2]),
                q.eval(on_line[3]),
            ];
            values.sort_unstable();
            within &= allowed.contains(&values);
            seen.insert(values);
            let mut i = 6;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if coeffs[i] + 1 < 3 {
                    coeffs[i] += 1;
                    coeffs[i + 1..].iter_mut().for_each(|x| *x = 0);
                    break;
                }
            }
            if coeffs == [0u8; 6] {
                break;
            }
        }
    }
    VeroneseCodeReport {
        equals_line_code_dual: equals,
        self_orthogonal,
        quadratic_form_words_match: words_match,
        line_patterns: seen.into_iter().collect(),
        patterns_within_allowed: within,
    }
}

/// Weight distribution of the dual code via the MacWilliams transform,
/// computed in exact integers. Returns `None` when the transform does not
/// divide evenly (which would disprove the input).
pub fn macwilliams_dual_distribution(dist: &[u64], q: u64) -> Option<Vec<u64>> {
    let n = dist.len() - 1;
    let size: i128 = dist.iter().map(|&x| x as i128).sum();
    // binomial table
    let mut binom = vec![vec![0i128; n + 1]; n + 1];
    for row in binom.iter_mut() {
        row[0] = 1;
    }
    for i in 1..=n {
        for j in 1..=i {
            binom[i][j] = binom[i - 1][j] + binom[i - 1][j - 1];
        }
    }
    let mut out = vec![0i128; n + 1];
    for (i, &a) in dist.iter().enumerate() {
        if a == 0 {
            continue;
        }
        // expand (x + (q-1) y)^(n-i) (x - y)^i, collect y-degrees
        for ydeg in 0..=n {
            let mut coeff = 0i128;
            let lo = ydeg.saturating_sub(i);
            for a_part in lo..=ydeg.min(n - i) {
                let b_part = ydeg - a_part;
                if b_part > i {
                    continue;
                }
                let sign = if b_part % 2 == 0 { 1 } else { -1 };
                coeff += binom[n - i][a_part]
                    * (q as i128 - 1).pow(a_part as u32)
                    * binom[i][b_part]
                    * sign;
            }
            out[ydeg] += a as i128 * coeff;
        }
    }
    let mut result = Vec::with_capacity(n + 1);
    for v in out {
        if v % size != 0 || v / size < 0 {
            return None;
        }
        result.push((v / size) as u64);
    }
    Some(result)
}

/// Dimensions and identities of the projective-plane code family for one
/// prime.
#[derive(Debug, Clone)]
pub struct PlaneCodeReport {
    pub p: u8,
    pub length: usize,
    pub dim_line_code: usize,
    pub expected_dim: usize,
    pub dual_inside_with_codim_one: bool,
    pub difference_code_is_dual: bool,
    pub complement_code_is_dual: bool,
}

impl PlaneCodeReport {
    pub fn pass(&self) -> bool {
        self.dim_line_code == self.expected_dim
            && self.dual_inside_with_codim_one
            && self.difference_code_is_dual
            && self.complement_code_is_dual
    }
}

pub fn plane_code_report(field: PrimeField) -> PlaneCodeReport {
    let p = field.modulus();
    let c = line_code(field);
    let dual = c.dual();
    PlaneCodeReport {
        p,
        length: c.length(),
        dim_line_code: c.dimension(),
        expected_dim: (p as usize * p as usize + p as usize + 2) / 2,
        dual_inside_with_codim_one: c.contains_code(&dual)
            && c.dimension() == dual.dimension() + 1,
        difference_code_is_dual: line_difference_code(field) == dual,
        complement_code_is_dual: line_complement_code(field) == dual,
    }
}

/// Golay weight distribution as a sorted weight -> count map.
pub fn weight_histogram(dist: &[u64]) -> BTreeMap<usize, u64> {
    dist.iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(w, &n)| (w, n))
        .collect()
}
