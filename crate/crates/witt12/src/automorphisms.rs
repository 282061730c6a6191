//! Block automorphisms of the twelve-point design and their lifts to
//! collineations of PG(5,3).
//!
//! The group is computed by backtracking over point images in index order.
//! No constraint can fire before five points are mapped; from there every
//! block with five mapped points forces its sixth image (any five points
//! lie in exactly one block), so each branch either completes almost
//! deterministically or dies. The full run yields all 95040 elements, and
//! the same engine completes a partial map given on five points.
//!
//! Every block permutation extends to a projective collineation: a frame
//! inside the twelve points is transported by the permutation, the unique
//! frame-to-frame projectivity is computed, and the result is verified on
//! all twelve points. Canonical scalar normalization makes collineation
//! matrices directly comparable, which is what all uniqueness claims
//! reduce to.

use std::collections::HashMap;

use crate::design::{design_from_points, Design};
use crate::gf::Matrix;
use crate::projgeom::ProjPoint;
use crate::veronese::{
    apply_collineation, find_set_collineation, frame_matrix, find_frame_indices, WittModel,
};
use crate::{Error, Result};

/// A bijection of {0, .., v-1}, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(v: usize) -> Self {
        Permutation { images: (0..v as u8).collect() }
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(!seen[i as usize], "not a bijection");
            seen[i as usize] = true;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// self followed by other.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }
}

/// Backtracking context over a uniform design with at most 16 points.
struct BlockSearch {
    v: usize,
    k: usize,
    blocks: Vec<u16>,
    is_block: Vec<bool>,
    point_blocks: Vec<Vec<u16>>,
    /// (k-1)-subset mask -> index of the unique block containing it, or -1.
    /// Present only when no such subset lies in two blocks.
    sub_block: Option<Vec<i32>>,

    image: Vec<i8>,
    mapped: u16,
    used: u16,
    mapped_count: usize,
    cnt: Vec<u8>,
    img: Vec<u16>,
    trail: Vec<(u8, u8)>,
}

impl BlockSearch {
    fn new(design: &Design) -> Self {
        let v = design.v;
        assert!(v <= 16, "mask-based search supports at most 16 points");
        assert!(!design.blocks.is_empty(), "design without blocks");
        let k = design.blocks[0].len();
        assert!(
            design.blocks.iter().all(|b| b.len() == k),
            "search requires uniform block size"
        );
        let blocks: Vec<u16> = design
            .blocks
            .iter()
            .map(|b| b.iter().fold(0u16, |m, &i| m | 1 << i))
            .collect();
        let mut is_block = vec![false; 1 << v];
        for &b in &blocks {
            is_block[b as usize] = true;
        }
        let mut point_blocks = vec![Vec::new(); v];
        for (bi, &b) in blocks.iter().enumerate() {
            for x in 0..v {
                if b & (1 << x) != 0 {
                    point_blocks[x].push(bi as u16);
                }
            }
        }
        let mut table = vec![-1i32; 1 << v];
        let mut unambiguous = true;
        'build: for (bi, &b) in blocks.iter().enumerate() {
            for x in 0..v {
                if b & (1 << x) != 0 {
                    let sub = (b & !(1 << x)) as usize;
                    if table[sub] >= 0 && table[sub] != bi as i32 {
                        unambiguous = false;
                        break 'build;
                    }
                    table[sub] = bi as i32;
                }
            }
        }
        let nb = blocks.len();
        BlockSearch {
            v,
            k,
            blocks,
            is_block,
            point_blocks,
            sub_block: unambiguous.then_some(table),
            image: vec![-1; v],
            mapped: 0,
            used: 0,
            mapped_count: 0,
            cnt: vec![0; nb],
            img: vec![0; nb],
            trail: Vec::with_capacity(v),
        }
    }

    /// Assign x -> y and run unit propagation; false means contradiction.
    /// Assignments stay on the trail either way, so callers roll back to
    /// their checkpoint.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if self.image[x] >= 0 {
                if self.image[x] == y as i8 {
                    continue;
                }
                return false;
            }
            if self.used & (1 << y) != 0 {
                return false;
            }
            self.image[x] = y as i8;
            self.mapped |= 1 << x;
            self.used |= 1 << y;
            self.mapped_count += 1;
            self.trail.push((x as u8, y as u8));
            for i in 0..self.point_blocks[x].len() {
                let bi = self.point_blocks[x][i] as usize;
                self.cnt[bi] += 1;
                self.img[bi] |= 1 << y;
                let c = self.cnt[bi] as usize;
                if c == self.k {
                    if !self.is_block[self.img[bi] as usize] {
                        return false;
                    }
                } else if c == self.k - 1 {
                    let open = self.blocks[bi] & !self.mapped;
                    debug_assert_eq!(open.count_ones(), 1);
                    let ux = open.trailing_zeros() as usize;
                    let t = self.img[bi];
                    let target = match &self.sub_block {
                        Some(table) => table[t as usize],
                        None => {
                            // fall back to scanning; only force a unique fit
                            let mut found = -1i32;
                            let mut many = false;
                            for (ci, &cb) in self.blocks.iter().enumerate() {
                                if cb & t == t {
                                    if found >= 0 {
                                        many = true;
                                        break;
                                    }
                                    found = ci as i32;
                                }
                            }
                            if many {
                                continue;
                            }
                            found
                        }
                    };
                    if target < 0 {
                        return false;
                    }
                    let missing = self.blocks[target as usize] & !t;
                    debug_assert_eq!(missing.count_ones(), 1);
                    queue.push((ux, missing.trailing_zeros() as usize));
                }
            }
        }
        true
    }

    fn rollback(&mut self, checkpoint: usize) {
        while self.trail.len() > checkpoint {
            let (x, y) = self.trail.pop().unwrap();
            let (x, y) = (x as usize, y as usize);
            self.image[x] = -1;
            self.mapped &= !(1 << x);
            self.used &= !(1 << y);
            self.mapped_count -= 1;
            for i in 0..self.point_blocks[x].len() {
                let bi = self.point_blocks[x][i] as usize;
                self.cnt[bi] -= 1;
                self.img[bi] &= !(1 << y);
            }
        }
    }

    /// Depth-first over unmapped points in index order, candidates in
    /// ascending order; output therefore comes in lexicographic order of
    /// image vectors. Returns true when the limit was reached.
    fn dfs(&mut self, out: &mut Vec<Permutation>, limit: Option<usize>) -> bool {
        if self.mapped_count == self.v {
            let images: Vec<u8> = self.image.iter().map(|&i| i as u8).collect();
            out.push(Permutation { images });
            return limit.is_some_and(|l| out.len() >= l);
        }
        let x = self.image.iter().position(|&i| i < 0).unwrap();
        for y in 0..self.v {
            if self.used & (1 << y) != 0 {
                continue;
            }
            let cp = self.trail.len();
            if self.assign(x, y) && self.dfs(out, limit) {
                return true;
            }
            self.rollback(cp);
        }
        false
    }
}

/// All point permutations mapping blocks onto blocks, in lexicographic
/// order of image vectors. For the twelve-point design this is the Mathieu
/// group M12, with 95040 = 12*11*10*9*8 elements.
pub fn block_automorphisms(design: &Design) -> Vec<Permutation> {
    let mut search = BlockSearch::new(design);
    let mut out = Vec::new();
    search.dfs(&mut out, None);
    out
}

/// The lexicographically least block-preserving completion of the partial
/// map src[i] -> dst[i], if any completion exists. For the twelve-point
/// design the completion is unique, which is certified separately by the
/// sharp 5-transitivity of the full group.
pub fn complete_from_5(
    design: &Design,
    src: &[usize; 5],
    dst: &[usize; 5],
) -> Option<Permutation> {
    let distinct = |s: &[usize; 5]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        v.len() == 5 && v.iter().all(|&i| i < design.v)
    };
    assert!(distinct(src) && distinct(dst), "need two 5-tuples of distinct points");
    let mut search = BlockSearch::new(design);
    for (&x, &y) in src.iter().zip(dst) {
        if !search.assign(x, y) {
            return None;
        }
    }
    let mut out = Vec::new();
    search.dfs(&mut out, Some(1));
    out.into_iter().next()
}

/// The automorphism group as an element list plus an index by the images
/// of the base tuple (0,1,2,3,4).
pub struct AutGroup {
    elements: Vec<Permutation>,
    by_base: HashMap<[u8; 5], Vec<u32>>,
}

impl AutGroup {
    pub fn compute(design: &Design) -> Self {
        let elements = block_automorphisms(design);
        let mut by_base: HashMap<[u8; 5], Vec<u32>> = HashMap::new();
        for (i, g) in elements.iter().enumerate() {
            let key = [g.images()[0], g.images()[1], g.images()[2], g.images()[3], g.images()[4]];
            by_base.entry(key).or_default().push(i as u32);
        }
        AutGroup { elements, by_base }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Group elements sending the base tuple (0,..,4) to the given images.
    pub fn with_base_images(&self, images: [u8; 5]) -> &[u32] {
        match self.by_base.get(&images) {
            Some(v) => v,
            None => &[],
        }
    }

    /// Sharp 5-transitivity on the base tuple: one element per ordered
    /// image tuple, and every tuple reached.
    pub fn is_sharply_five_transitive(&self) -> bool {
        let v = match self.elements.first() {
            Some(g) => g.degree(),
            None => return false,
        };
        let expected: usize = (v - 4..=v).product();
        self.order() == expected
            && self.by_base.len() == expected
            && self.by_base.values().all(|ids| ids.len() == 1)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let key = [g.images()[0], g.images()[1], g.images()[2], g.images()[3], g.images()[4]];
        self.with_base_images(key)
            .iter()
            .any(|&i| &self.elements[i as usize] == g)
    }
}

/// A projective collineation of PG(5,3) in canonical scalar form: two
/// collineations are equal exactly when their canonical matrices are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Collineation {
    matrix: Matrix,
}

impl Collineation {
    pub fn new(matrix: Matrix) -> Self {
        assert!(matrix.is_invertible(), "collineations are invertible");
        Collineation { matrix: matrix.canonical_scale() }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        apply_collineation(&self.matrix, p)
    }

    /// self followed by other.
    pub fn then(&self, other: &Collineation) -> Collineation {
        Collineation::new(other.matrix.mul(&self.matrix))
    }
}

/// Lifts permutations of a fixed 12-point set to collineations, caching
/// the frame solve shared by every lift.
pub struct Lifter {
    points: Vec<ProjPoint>,
    index: HashMap<Vec<u8>, usize>,
    frame: Vec<usize>,
    base_inverse: Matrix,
}

impl Lifter {
    pub fn new(points: &[ProjPoint]) -> Result<Self> {
        let frame = find_frame_indices(points).ok_or(Error::DegenerateFrame)?;
        let frame_points: Vec<ProjPoint> = frame.iter().map(|&i| points[i].clone()).collect();
        let base = frame_matrix(&frame_points)?;
        let base_inverse = base.inverse().ok_or(Error::SingularMatrix)?;
        let index = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.coords().to_vec(), i))
            .collect();
        Ok(Lifter { points: points.to_vec(), index, frame, base_inverse })
    }

    pub fn for_model(model: &WittModel) -> Result<Self> {
        Self::new(model.points())
    }

    /// The unique collineation inducing the permutation on the point set.
    pub fn lift(&self, perm: &Permutation) -> Result<Collineation> {
        assert_eq!(perm.degree(), self.points.len());
        let dst: Vec<ProjPoint> = self
            .frame
            .iter()
            .map(|&i| self.points[perm.apply(i)].clone())
            .collect();
        let image = frame_matrix(&dst)?;
        let matrix = image.mul(&self.base_inverse);
        let coll = Collineation::new(matrix);
        for (i, p) in self.points.iter().enumerate() {
            if coll.apply(p) != self.points[perm.apply(i)] {
                return Err(Error::Certification(format!(
                    "no collineation induces this permutation (fails at point {i})"
                )));
            }
        }
        Ok(coll)
    }

    /// The permutation a collineation induces on the point set, if it maps
    /// the set onto itself.
    pub fn induced(&self, coll: &Collineation) -> Result<Permutation> {
        let mut images = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let img = coll.apply(p);
            match self.index.get(img.coords()) {
                Some(&i) => images.push(i as u8),
                None => {
                    return Err(Error::Certification(format!(
                        "collineation moves {p} off the point set"
                    )))
                }
            }
        }
        Ok(Permutation::from_images(images))
    }
}

/// Lift a single block automorphism of the model to its collineation.
pub fn lift_to_collineation(model: &WittModel, perm: &Permutation) -> Result<Collineation> {
    Lifter::for_model(model)?.lift(perm)
}

/// The unique collineation of PG(5,3) carrying one valid 12-point set onto
/// another while sending five chosen points to five chosen images.
///
/// Existence is assembled from a set transport (frame search) composed
/// with the lift of the block-design completion of the five assignments;
/// uniqueness is certified separately by comparing canonical matrices of
/// independently constructed candidates.
pub fn collineation_for_five_points(
    src: &[ProjPoint],
    dst: &[ProjPoint],
    src5: &[ProjPoint; 5],
    dst5: &[ProjPoint; 5],
) -> Result<Collineation> {
    for (label, set) in [("source", src), ("target", dst)] {
        let report = crate::design::check_equivalence(set);
        if !report.direct() {
            return Err(Error::InvalidInput(format!(
                "{label} set fails the spectrum conditions"
            )));
        }
    }
    let index_in = |set: &[ProjPoint], five: &[ProjPoint; 5]| -> Result<[usize; 5]> {
        let mut out = [0usize; 5];
        for (o, p) in out.iter_mut().zip(five) {
            *o = set
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| Error::InvalidInput(format!("{p} is not in the set")))?;
        }
        Ok(out)
    };
    let p_idx = index_in(src, src5)?;
    index_in(dst, dst5)?;

    let transport = find_set_collineation(src, dst).ok_or_else(|| {
        Error::Certification("no collineation between the two sets".into())
    })?;
    let transport_inv = transport.inverse().ok_or(Error::SingularMatrix)?;
    let mut q_idx = [0usize; 5];
    for (q, p) in q_idx.iter_mut().zip(dst5) {
        let back = apply_collineation(&transport_inv, p);
        *q = src
            .iter()
            .position(|s| *s == back)
            .expect("transport maps the source set onto the target set");
    }
    let design = design_from_points(src);
    let completion = complete_from_5(&design, &p_idx, &q_idx).ok_or_else(|| {
        Error::Certification("five assignments admit no block-preserving completion".into())
    })?;
    let lifter = Lifter::new(src)?;
    let alpha = lifter.lift(&completion)?;
    let kappa = alpha.then(&Collineation::new(transport));

    // verify the defining properties
    let dst_set: std::collections::HashSet<&[u8]> = dst.iter().map(|p| p.coords()).collect();
    for p in src {
        if !dst_set.contains(kappa.apply(p).coords()) {
            return Err(Error::Certification("composite map misses the target set".into()));
        }
    }
    for (p, q) in src5.iter().zip(dst5) {
        if kappa.apply(p) != *q {
            return Err(Error::Certification("composite map moves a chosen point".into()));
        }
    }
    Ok(kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::extract_blocks;
    use crate::gf::GF3;
    use crate::veronese::{construct_model, sym_square, VeroneseConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::LazyLock;

    static MODEL: LazyLock<WittModel> =
        LazyLock::new(|| construct_model(&VeroneseConfig::default()));
    static GROUP: LazyLock<AutGroup> =
        LazyLock::new(|| AutGroup::compute(&extract_blocks(&MODEL)));

    #[test]
    fn group_has_the_mathieu_order() {
        assert_eq!(GROUP.order(), 95040);
        assert!(GROUP.elements().contains(&Permutation::identity(12)));
    }

    #[test]
    fn group_is_sharply_five_transitive() {
        assert!(GROUP.is_sharply_five_transitive());
    }

    #[test]
    fn point_stabilizer_has_index_twelve() {
        let fixing_zero = GROUP
            .elements()
            .iter()
            .filter(|g| g.apply(0) == 0)
            .count();
        assert_eq!(fixing_zero, 7920);
    }

    #[test]
    fn completion_of_the_identity_partial_is_the_identity() {
        let design = extract_blocks(&MODEL);
        let five = [0, 1, 2, 3, 4];
        let g = complete_from_5(&design, &five, &five).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn completions_agree_with_the_group_list() {
        let design = extract_blocks(&MODEL);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let idx = rng.random_range(0..GROUP.order());
            let g = &GROUP.elements()[idx];
            let dst = [
                g.apply(0), g.apply(1), g.apply(2), g.apply(3), g.apply(4),
            ];
            let completed = complete_from_5(&design, &[0, 1, 2, 3, 4], &dst).unwrap();
            assert_eq!(&completed, g);
        }
    }

    #[test]
    fn derived_design_admits_non_completable_partials() {
        // the thrice-derived 2-(9,3,1) design has automorphism group of
        // order 432 < 9*8*7*6*5, so some 5-point maps cannot complete
        let design = extract_blocks(&MODEL);
        let d3 = crate::design::derived_design(
            &crate::design::derived_design(&crate::design::derived_design(&design, 0), 0),
            0,
        );
        let mut absent = false;
        'outer: for a in 0..9usize {
            for b in 0..9usize {
                let dst = [a, b, 2, 3, 4];
                let mut sorted = dst.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != 5 {
                    continue;
                }
                if complete_from_5(&d3, &[0, 1, 2, 3, 4], &dst).is_none() {
                    absent = true;
                    break 'outer;
                }
            }
        }
        assert!(absent);
    }

    #[test]
    fn lift_of_identity_is_identity() {
        let coll = lift_to_collineation(&MODEL, &Permutation::identity(12)).unwrap();
        assert_eq!(coll.matrix(), &Matrix::identity(GF3, 6));
    }

    #[test]
    fn lifts_induce_their_permutations() {
        let lifter = Lifter::for_model(&MODEL).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let g = &GROUP.elements()[rng.random_range(0..GROUP.order())];
            let coll = lifter.lift(g).unwrap();
            assert_eq!(&lifter.induced(&coll).unwrap(), g);
        }
    }

    #[test]
    fn lifting_is_a_homomorphism_on_sampled_pairs() {
        let lifter = Lifter::for_model(&MODEL).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..10 {
            let g = &GROUP.elements()[rng.random_range(0..GROUP.order())];
            let h = &GROUP.elements()[rng.random_range(0..GROUP.order())];
            let lifted_product = lifter.lift(&g.then(h)).unwrap();
            let product_of_lifts = lifter.lift(g).unwrap().then(&lifter.lift(h).unwrap());
            assert_eq!(lifted_product, product_of_lifts);
        }
    }

    #[test]
    fn composing_lifts_lands_back_in_the_group() {
        let lifter = Lifter::for_model(&MODEL).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let g = &GROUP.elements()[rng.random_range(0..GROUP.order())];
        let h = &GROUP.elements()[rng.random_range(0..GROUP.order())];
        let composed = lifter.lift(g).unwrap().then(&lifter.lift(h).unwrap());
        let induced = lifter.induced(&composed).unwrap();
        assert!(GROUP.contains(&induced));
    }

    #[test]
    fn five_point_transport_with_identical_data_is_identity() {
        let pts = MODEL.points();
        let five: [ProjPoint; 5] = std::array::from_fn(|i| pts[i].clone());
        let kappa = collineation_for_five_points(pts, pts, &five, &five).unwrap();
        assert_eq!(kappa.matrix(), &Matrix::identity(GF3, 6));
    }

    #[test]
    fn five_point_transport_recovers_a_random_collineation() {
        let lifter = Lifter::for_model(&MODEL).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let g = &GROUP.elements()[rng.random_range(0..GROUP.order())];
        let mu = lifter.lift(g).unwrap();
        let pts = MODEL.points();
        let moved: Vec<ProjPoint> = pts.iter().map(|p| mu.apply(p)).collect();
        let mut sorted = moved.clone();
        sorted.sort();
        let five: [ProjPoint; 5] = std::array::from_fn(|i| pts[i].clone());
        let five_img: [ProjPoint; 5] = std::array::from_fn(|i| mu.apply(&pts[i]));
        let kappa =
            collineation_for_five_points(pts, &sorted, &five, &five_img).unwrap();
        assert_eq!(kappa, mu);
    }

    #[test]
    fn five_point_transport_between_different_infinity_lines() {
        let other_cfg = VeroneseConfig::new(
            crate::projgeom::Hyperplane::new(GF3, &[0, 1, 0]).unwrap(),
        )
        .unwrap();
        let other = construct_model(&other_cfg);
        let five_src: [ProjPoint; 5] = std::array::from_fn(|i| MODEL.points()[i].clone());
        let five_dst: [ProjPoint; 5] = std::array::from_fn(|i| other.points()[i].clone());
        let kappa = collineation_for_five_points(
            MODEL.points(),
            other.points(),
            &five_src,
            &five_dst,
        )
        .unwrap();
        for (p, q) in five_src.iter().zip(&five_dst) {
            assert_eq!(&kappa.apply(p), q);
        }
    }

    #[test]
    fn sym_square_lifts_stabilize_the_surface_model() {
        // a plane collineation fixing the infinity line setwise permutes
        // the twelve points, and its symmetric square is that lift
        let a = Matrix::from_rows(GF3, &[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        let lift = sym_square(&a).unwrap().lifted;
        let coll = Collineation::new(lift);
        let lifter = Lifter::for_model(&MODEL).unwrap();
        let induced = lifter.induced(&coll).unwrap();
        assert!(GROUP.contains(&induced));
    }
}
