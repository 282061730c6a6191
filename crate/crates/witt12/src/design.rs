//! Block designs extracted from point sets in PG(5,3): hyperplane spectra,
//! the 132 six-point sections of the twelve-point model (Witt's 5-(12,6,1)
//! design), exhaustive t-design verification, the equivalence of the two
//! spectrum characterizations, and design derivation.
//!
//! Blocks are stored purely combinatorially, as sorted index sets into the
//! owning point list, so that derivation and automorphism search never
//! touch coordinates.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::projgeom::{enumerate_hyperplanes, Hyperplane, ProjPoint, Subspace};
use crate::veronese::WittModel;
use crate::{Error, Result};

/// A block design on `v` points, blocks as sorted index subsets, stored in
/// lexicographic order without repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl Design {
    pub fn new(v: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
            assert!(b.iter().all(|&i| i < v), "block index out of range");
            assert!(b.windows(2).all(|w| w[0] != w[1]), "repeated point in block");
        }
        blocks.sort();
        blocks.dedup();
        Design { v, blocks }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks through a given point.
    pub fn blocks_through(&self, point: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(move |b| b.contains(&point))
    }
}

/// Histogram of |H ∩ S| over all hyperplanes of the ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub histogram: BTreeMap<usize, usize>,
}

impl SpectrumReport {
    /// The distinct section sizes that occur.
    pub fn support(&self) -> Vec<usize> {
        self.histogram.keys().copied().collect()
    }

    pub fn total(&self) -> usize {
        self.histogram.values().sum()
    }

    pub fn count(&self, size: usize) -> usize {
        self.histogram.get(&size).copied().unwrap_or(0)
    }
}

/// Exact section-size histogram of a point set over all hyperplanes of its
/// ambient projective space.
pub fn hyperplane_spectrum(points: &[ProjPoint]) -> SpectrumReport {
    assert!(!points.is_empty(), "spectrum of an empty point set");
    let n = points[0].ambient_dim();
    let field = points[0].field();
    let mut histogram = BTreeMap::new();
    for h in enumerate_hyperplanes(n, field) {
        let d = points.iter().filter(|p| h.contains(p)).count();
        *histogram.entry(d).or_insert(0) += 1;
    }
    SpectrumReport { histogram }
}

/// Hyperplane sections of a given size, with the point indices they cut
/// out, in hyperplane enumeration order.
pub fn sections_of_size(
    points: &[ProjPoint],
    size: usize,
) -> Vec<(Hyperplane, Vec<usize>)> {
    let n = points[0].ambient_dim();
    let field = points[0].field();
    let mut out = Vec::new();
    for h in enumerate_hyperplanes(n, field) {
        let section: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| h.contains(p))
            .map(|(i, _)| i)
            .collect();
        if section.len() == size {
            out.push((h, section));
        }
    }
    out
}

/// The design of six-point hyperplane sections of an arbitrary 12-point
/// set (its blocks, when the set satisfies the spectrum conditions).
pub fn design_from_points(points: &[ProjPoint]) -> Design {
    let blocks: Vec<Vec<usize>> = sections_of_size(points, 6)
        .into_iter()
        .map(|(_, idx)| idx)
        .collect();
    Design::new(points.len(), blocks)
}

/// The blocks of the model: all hyperplane sections with more than three
/// (hence exactly six) points, indexed against the model's point order.
pub fn extract_blocks(model: &WittModel) -> Design {
    design_from_points(model.points())
}

/// Outcome of checking the t-design property by full enumeration of the
/// C(v,t) point subsets.
#[derive(Debug, Clone)]
pub struct TDesignReport {
    pub t: usize,
    pub k: usize,
    pub lambda: usize,
    pub pass: bool,
    pub block_count: usize,
    /// Blocks through each single point, when constant.
    pub replication: Option<usize>,
    /// A t-subset covered the wrong number of times, with its count.
    pub witness: Option<(Vec<usize>, usize)>,
}

/// Check that every block has size k and every t-subset of points lies in
/// exactly lambda blocks. At this scale exhaustion over all C(v,t) subsets
/// is the most trustworthy certificate.
pub fn verify_t_design(design: &Design, t: usize, k: usize, lambda: usize) -> TDesignReport {
    let mut report = TDesignReport {
        t,
        k,
        lambda,
        pass: true,
        block_count: design.block_count(),
        replication: None,
        witness: None,
    };
    for b in &design.blocks {
        if b.len() != k {
            report.pass = false;
            report.witness = Some((b.clone(), b.len()));
            return report;
        }
    }
    for subset in (0..design.v).combinations(t) {
        let covering = design
            .blocks
            .iter()
            .filter(|b| subset.iter().all(|i| b.contains(i)))
            .count();
        if covering != lambda {
            report.pass = false;
            report.witness = Some((subset, covering));
            return report;
        }
    }
    let per_point: Vec<usize> = (0..design.v)
        .map(|p| design.blocks_through(p).count())
        .collect();
    if per_point.windows(2).all(|w| w[0] == w[1]) {
        report.replication = per_point.first().copied();
    }
    report
}

/// Joint evaluation of the two equivalent characterizations of the model:
/// the spectrum conditions (all sections in {0,3,6}, twelve points) against
/// the three independence conditions.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    /// Every 5-subset spans a 4-flat.
    pub five_subsets_independent: bool,
    pub dependent_five_witness: Option<Vec<usize>>,
    /// Every hyperplane section of size >= 5 has size exactly 6.
    pub large_sections_are_six: bool,
    pub large_section_witness: Option<(Vec<u8>, usize)>,
    /// At least 7 points.
    pub at_least_seven: bool,
    /// All sections in {0,3,6}.
    pub spectrum_small: bool,
    /// Exactly 12 points.
    pub twelve_points: bool,
}

impl EquivalenceReport {
    /// The conjunction of the three independence-style conditions.
    pub fn triple(&self) -> bool {
        self.five_subsets_independent && self.large_sections_are_six && self.at_least_seven
    }

    /// The conjunction of the two spectrum conditions.
    pub fn direct(&self) -> bool {
        self.spectrum_small && self.twelve_points
    }

    /// The two characterizations must agree on every point set.
    pub fn equivalence_holds(&self) -> bool {
        self.triple() == self.direct()
    }
}

/// Evaluate both characterizations for an arbitrary point set of PG(5,3).
pub fn check_equivalence(points: &[ProjPoint]) -> EquivalenceReport {
    let mut report = EquivalenceReport {
        five_subsets_independent: true,
        dependent_five_witness: None,
        large_sections_are_six: true,
        large_section_witness: None,
        at_least_seven: points.len() >= 7,
        spectrum_small: true,
        twelve_points: points.len() == 12,
    };
    if points.len() >= 5 {
        for subset in (0..points.len()).combinations(5) {
            let chosen: Vec<ProjPoint> = subset.iter().map(|&i| points[i].clone()).collect();
            if Subspace::span(&chosen).unwrap().rank() < 5 {
                report.five_subsets_independent = false;
                report.dependent_five_witness = Some(subset);
                break;
            }
        }
    }
    let spectrum = hyperplane_spectrum(points);
    for (&size, _) in &spectrum.histogram {
        if size >= 5 && size != 6 {
            report.large_sections_are_six = false;
        }
        if !matches!(size, 0 | 3 | 6) {
            report.spectrum_small = false;
        }
    }
    if !report.large_sections_are_six {
        // find one offending hyperplane as a witness
        let n = points[0].ambient_dim();
        for h in enumerate_hyperplanes(n, points[0].field()) {
            let d = points.iter().filter(|p| h.contains(p)).count();
            if d >= 5 && d != 6 {
                report.large_section_witness = Some((h.dual_coords().to_vec(), d));
                break;
            }
        }
    }
    report
}

/// The unique hyperplane meeting the model exactly in the given triangle.
/// Among the 13 hyperplanes through the triangle's plane, exactly one cuts
/// a three-point section; the other 12 cut six-point sections.
pub fn hyperplane_of_triangle(
    points: &[ProjPoint],
    triangle: &[usize; 3],
) -> Result<Hyperplane> {
    let chosen: Vec<ProjPoint> = triangle.iter().map(|&i| points[i].clone()).collect();
    let span = Subspace::span(&chosen)?;
    if span.rank() != 3 {
        return Err(Error::CollinearPoints);
    }
    let mut exact = Vec::new();
    let mut sixes = 0usize;
    let through = crate::projgeom::hyperplanes_through(&span);
    for h in &through {
        let d = points.iter().filter(|p| h.contains(p)).count();
        match d {
            3 => exact.push(h.clone()),
            6 => sixes += 1,
            _ => {
                return Err(Error::Certification(format!(
                    "a hyperplane through the triangle meets the set in {d} points"
                )))
            }
        }
    }
    if exact.len() != 1 || sixes != through.len() - 1 {
        return Err(Error::Certification(format!(
            "expected one 3-section and {} 6-sections, found {} and {sixes}",
            through.len() - 1,
            exact.len()
        )));
    }
    Ok(exact.remove(0))
}

/// Derive the design at a point: keep the blocks through it, delete the
/// point, and renumber the remaining points downward.
pub fn derived_design(design: &Design, point: usize) -> Design {
    assert!(point < design.v, "derivation point out of range");
    let blocks: Vec<Vec<usize>> = design
        .blocks
        .iter()
        .filter(|b| b.contains(&point))
        .map(|b| {
            b.iter()
                .filter(|&&i| i != point)
                .map(|&i| if i > point { i - 1 } else { i })
                .collect()
        })
        .collect();
    Design::new(design.v - 1, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GF3;
    use crate::projgeom::{pg53_points, ProjPoint};
    use crate::veronese::{construct_model, veronese_surface, VeroneseConfig};
    use std::sync::LazyLock;

    static MODEL: LazyLock<WittModel> =
        LazyLock::new(|| construct_model(&VeroneseConfig::default()));
    static BLOCKS: LazyLock<Design> = LazyLock::new(|| extract_blocks(&MODEL));

    #[test]
    fn model_spectrum_histogram() {
        let spec = hyperplane_spectrum(MODEL.points());
        let mut expected = BTreeMap::new();
        expected.insert(0, 12);
        expected.insert(3, 220);
        expected.insert(6, 132);
        assert_eq!(spec.histogram, expected);
    }

    #[test]
    fn surface_spectrum_histogram() {
        let spec = hyperplane_spectrum(veronese_surface());
        // 39 single-point quadrics, 234 conics + 13 repeated lines, 78 crosses
        let mut expected = BTreeMap::new();
        expected.insert(1, 39);
        expected.insert(4, 247);
        expected.insert(7, 78);
        assert_eq!(spec.histogram, expected);
    }

    #[test]
    fn single_point_spectrum() {
        let p = ProjPoint::new(GF3, &[1, 0, 0, 0, 0, 0]).unwrap();
        let spec = hyperplane_spectrum(&[p]);
        assert_eq!(spec.count(0), 243);
        assert_eq!(spec.count(1), 121);
    }

    #[test]
    fn the_model_has_132_six_point_blocks() {
        assert_eq!(BLOCKS.block_count(), 132);
        assert!(BLOCKS.blocks.iter().all(|b| b.len() == 6));
    }

    #[test]
    fn blocks_correspond_to_hyperplanes_injectively() {
        let sections = sections_of_size(MODEL.points(), 6);
        assert_eq!(sections.len(), 132);
        let mut sets: Vec<Vec<usize>> = sections.into_iter().map(|(_, s)| s).collect();
        sets.sort();
        sets.dedup();
        assert_eq!(sets.len(), 132);
    }

    #[test]
    fn blocks_form_the_witt_design() {
        let report = verify_t_design(&BLOCKS, 5, 6, 1);
        assert!(report.pass, "witness: {:?}", report.witness);
        assert_eq!(report.block_count, 132);
        assert_eq!(report.replication, Some(66));
    }

    #[test]
    fn blocks_are_also_a_2_design() {
        let report = verify_t_design(&BLOCKS, 2, 6, 30);
        assert!(report.pass);
    }

    #[test]
    fn deleting_a_block_breaks_coverage() {
        let mut blocks = BLOCKS.blocks.clone();
        let removed = blocks.pop().unwrap();
        let broken = Design::new(12, blocks);
        let report = verify_t_design(&broken, 5, 6, 1);
        assert!(!report.pass);
        let (witness, count) = report.witness.unwrap();
        assert_eq!(count, 0);
        assert!(witness.iter().all(|i| removed.contains(i)));
    }

    #[test]
    fn equivalence_report_for_the_model() {
        let report = check_equivalence(MODEL.points());
        assert!(report.triple());
        assert!(report.direct());
        assert!(report.equivalence_holds());
    }

    #[test]
    fn equivalence_report_for_the_surface() {
        // the surface fails both sides consistently: a conic plus one more
        // point sits in a 7-point hyperplane section
        let report = check_equivalence(veronese_surface());
        assert!(!report.five_subsets_independent);
        assert!(!report.large_sections_are_six);
        let (_, size) = report.large_section_witness.clone().unwrap();
        assert_eq!(size, 7);
        assert!(!report.direct());
        assert!(report.equivalence_holds());
    }

    #[test]
    fn equivalence_report_for_a_small_basis() {
        // a basis of PG(5,3) fails only the size conditions
        let basis: Vec<ProjPoint> = (0..6)
            .map(|i| {
                let mut v = vec![0u8; 6];
                v[i] = 1;
                ProjPoint::new(GF3, &v).unwrap()
            })
            .collect();
        let report = check_equivalence(&basis);
        assert!(report.five_subsets_independent);
        assert!(!report.at_least_seven);
        assert!(!report.twelve_points);
        assert!(report.equivalence_holds());
    }

    #[test]
    fn no_three_model_points_are_collinear_and_no_four_coplanar() {
        use itertools::Itertools;
        let pts = MODEL.points();
        for tri in (0..12).combinations(3) {
            let chosen: Vec<ProjPoint> = tri.iter().map(|&i| pts[i].clone()).collect();
            assert_eq!(Subspace::span(&chosen).unwrap().rank(), 3);
        }
        for quad in (0..12).combinations(4) {
            let chosen: Vec<ProjPoint> = quad.iter().map(|&i| pts[i].clone()).collect();
            assert_eq!(Subspace::span(&chosen).unwrap().rank(), 4);
        }
    }

    #[test]
    fn triangle_hyperplane_is_unique() {
        let tri = MODEL.triangle_indices();
        let h = hyperplane_of_triangle(MODEL.points(), &tri).unwrap();
        let section: Vec<usize> = MODEL
            .points()
            .iter()
            .enumerate()
            .filter(|(_, p)| h.contains(p))
            .map(|(i, _)| i)
            .collect();
        let mut expected = tri.to_vec();
        expected.sort_unstable();
        assert_eq!(section, expected);
        // it is the hyperplane spanned by the plane of the removed conic
        assert!(MODEL.plane().points().iter().all(|p| h.contains(p)));
    }

    #[test]
    fn counting_identities_through_points_and_triangles() {
        // through any point: 121 hyperplanes, 66 six-sections + 55 three-sections
        let pts = MODEL.points();
        for i in [0usize, 5, 11] {
            let mut sixes = 0;
            let mut threes = 0;
            let mut total = 0;
            for h in crate::projgeom::pg53_hyperplanes() {
                if !h.contains(&pts[i]) {
                    continue;
                }
                total += 1;
                match pts.iter().filter(|p| h.contains(p)).count() {
                    6 => sixes += 1,
                    3 => threes += 1,
                    other => panic!("section of size {other} through a model point"),
                }
            }
            assert_eq!((total, sixes, threes), (121, 66, 55));
        }
        // through a triangle: 13 hyperplanes, 1 three-section + 12 six-sections
        let tri = MODEL.triangle_indices();
        let chosen: Vec<ProjPoint> = tri.iter().map(|&i| pts[i].clone()).collect();
        let span = Subspace::span(&chosen).unwrap();
        let through = crate::projgeom::hyperplanes_through(&span);
        assert_eq!(through.len(), 13);
        let sixes = through
            .iter()
            .filter(|h| pts.iter().filter(|p| h.contains(p)).count() == 6)
            .count();
        assert_eq!(sixes, 12);
    }

    #[test]
    fn derivation_chain_counts() {
        let d1 = derived_design(&BLOCKS, 0);
        assert_eq!(d1.block_count(), 66);
        assert!(verify_t_design(&d1, 4, 5, 1).pass);
        let d2 = derived_design(&d1, 0);
        assert_eq!(d2.block_count(), 30);
        assert!(verify_t_design(&d2, 3, 4, 1).pass);
        let d3 = derived_design(&d2, 0);
        assert_eq!(d3.block_count(), 12);
        assert!(verify_t_design(&d3, 2, 3, 1).pass);
    }

    #[test]
    fn random_point_sets_never_violate_the_equivalence() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let all = pg53_points();
        let mut failing_checked = 0;
        while failing_checked < 20 {
            let mut idx: Vec<usize> = (0..all.len()).collect();
            idx.shuffle(&mut rng);
            let sample: Vec<ProjPoint> = idx[..12].iter().map(|&i| all[i].clone()).collect();
            let report = check_equivalence(&sample);
            assert!(report.equivalence_holds());
            if !report.triple() || !report.direct() {
                failing_checked += 1;
            }
        }
    }
}
