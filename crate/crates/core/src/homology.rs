//! Hom spaces, stable Hom, projective covers, syzygies, Ext, and extension
//! realization.
//!
//! Ext is computed stably: over a selfinjective algebra the maps out of a
//! minimal syzygy that factor through a projective are exactly those
//! extending to the cover, so Ext^n(M, N) = Hom(Omega^n M, N) modulo the
//! projectively-factoring subspace.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Span};
use crate::modrep::{free_module, zero_module, ModuleMap, ModuleRep, Submodule};
use crate::seeds::Opts;

/// Solution space of the intertwining equations F X_i^(M) = X_i^(N) F.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: ModuleRep,
    pub target: ModuleRep,
    pub basis: Vec<Mat>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rebuild a map from coefficients in this basis.
    pub fn combine(&self, coeffs: &[u64]) -> Mat {
        let f = self.source.algebra.field();
        let mut m = Mat::zeros(f, self.target.dim, self.source.dim);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Coordinates of a map in this basis (vectorized row-major).
    pub fn coords_of(&self, m: &Mat) -> Option<Vec<u64>> {
        let f = self.source.algebra.field();
        if self.basis.is_empty() {
            return if m.is_zero() { Some(vec![]) } else { None };
        }
        let cols: Vec<Mat> = self
            .basis
            .iter()
            .map(|b| Mat::col_vec(f, &b.vectorize()))
            .collect();
        let basis_mat = Mat::hstack(&cols.iter().collect::<Vec<_>>());
        let rhs = Mat::col_vec(f, &m.vectorize());
        basis_mat.solve(&rhs).map(|x| x.col(0))
    }
}

pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> HomSpace {
    assert!(m.same_algebra(n), "hom_space across different algebras");
    let f = m.algebra.field();
    let (dm, dn) = (m.dim, n.dim);
    let unknowns = dn * dm;
    let c = m.actions.len();
    if unknowns == 0 {
        return HomSpace {
            source: m.clone(),
            target: n.clone(),
            basis: vec![],
        };
    }
    // F is dn x dm, vectorized row-major: idx(r, s) = r * dm + s.
    let mut sys = Mat::zeros(f, c * unknowns, unknowns);
    let mut eq = 0;
    for g in 0..c {
        let xm = &m.actions[g];
        let xn = &n.actions[g];
        for r in 0..dn {
            for s in 0..dm {
                // sum_t F[r,t] XM[t,s] - sum_t XN[r,t] F[t,s] = 0
                for t in 0..dm {
                    let cur = sys.at(eq, r * dm + t);
                    sys.set(eq, r * dm + t, f.add(cur, xm.at(t, s)));
                }
                for t in 0..dn {
                    let cur = sys.at(eq, t * dm + s);
                    sys.set(eq, t * dm + s, f.sub(cur, xn.at(r, t)));
                }
                eq += 1;
            }
        }
    }
    let ker = sys.kernel();
    let basis = (0..ker.cols)
        .map(|j| Mat::from_vec(f, dn, dm, ker.col(j)))
        .collect();
    HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    }
}

/// Span of all compositions W -> A -> M, vectorized in hom coordinates of
/// Hom(W, M); this is the subspace of maps factoring through a projective.
pub fn projective_hom_subspace(w: &ModuleRep, m: &ModuleRep) -> Vec<Mat> {
    let reg = w.algebra.regular_module();
    let wa = hom_space(w, &reg);
    let am = hom_space(&reg, m);
    let f = w.algebra.field();
    let mut span = Span::empty(f, m.dim * w.dim);
    let mut reps = Vec::new();
    for g in &am.basis {
        for h in &wa.basis {
            let comp = g.mul(h);
            if span.insert(&comp.vectorize()) {
                reps.push(comp);
            }
        }
    }
    reps
}

/// Stable Hom space: Hom(W, M) with the projectively-factoring subspace
/// quotiented out. `q` maps hom-basis coordinates to stable coordinates and
/// `rep` embeds stable coordinates back as hom-basis coordinates.
#[derive(Debug, Clone)]
pub struct StableHom {
    pub hom: HomSpace,
    pub stable_dim: usize,
    q: Mat,
    rep: Mat,
}

impl StableHom {
    pub fn compute(w: &ModuleRep, m: &ModuleRep) -> StableHom {
        let f = w.algebra.field();
        let hom = hom_space(w, m);
        let hd = hom.dim();
        let proj = projective_hom_subspace(w, m);
        let mut pspan = Span::empty(f, hd);
        for pmap in &proj {
            if let Some(coords) = hom.coords_of(pmap) {
                pspan.insert(&coords);
            }
        }
        let comp = pspan.complement_rows();
        let sdim = comp.len();
        let mut q = Mat::zeros(f, sdim, hd);
        for j in 0..hd {
            let mut unit = vec![0; hd];
            unit[j] = 1;
            for (r, &v) in pspan.quotient_coords(&unit).iter().enumerate() {
                q.set(r, j, v);
            }
        }
        let mut rep = Mat::zeros(f, hd, sdim);
        for (k, &row) in comp.iter().enumerate() {
            rep.set(row, k, 1);
        }
        StableHom {
            hom,
            stable_dim: sdim,
            q,
            rep,
        }
    }

    /// Stable coordinates of a map.
    pub fn stable_coords(&self, m: &Mat) -> Option<Vec<u64>> {
        let coords = self.hom.coords_of(m)?;
        let f = self.hom.source.algebra.field();
        Some(self.q.mul(&Mat::col_vec(f, &coords)).col(0))
    }

    /// A representative map for the given stable coordinates.
    pub fn representative(&self, stable: &[u64]) -> Mat {
        let f = self.hom.source.algebra.field();
        let coords = self.rep.mul(&Mat::col_vec(f, stable)).col(0);
        self.hom.combine(&coords)
    }
}

/// d_W(M) = dim of Hom(W, M) modulo maps through projectives.
pub fn stable_hom_dim(w: &ModuleRep, m: &ModuleRep) -> usize {
    StableHom::compute(w, m).stable_dim
}

/// Minimal projective cover A^beta -> M and its kernel.
#[derive(Debug, Clone)]
pub struct ProjCover {
    pub beta: usize,
    /// A^beta -> M, hitting a complement basis of rad M.
    pub cover: ModuleMap,
    pub syzygy: ModuleRep,
    /// syzygy -> A^beta inclusion.
    pub inclusion: ModuleMap,
}

pub fn projective_cover(m: &ModuleRep) -> ProjCover {
    let algebra = &m.algebra;
    let f = algebra.field();
    let rad = m.radical();
    let comp = rad.basis.complement_rows();
    let beta = comp.len();
    let source = free_module(algebra, beta);
    // column (j-th copy, basis element b): action of b on the j-th top rep
    let mut cover = Mat::zeros(f, m.dim, beta * algebra.dim);
    let basis_actions: Vec<Mat> = (0..algebra.dim).map(|b| m.action_of_basis(b)).collect();
    for (j, &row) in comp.iter().enumerate() {
        for (b, act) in basis_actions.iter().enumerate() {
            for i in 0..m.dim {
                cover.set(i, j * algebra.dim + b, act.at(i, row));
            }
        }
    }
    let ker = cover.kernel();
    let kdim = ker.cols;
    // induced actions on the kernel: solve K Y = X K (K has full column rank)
    let actions: Vec<Mat> = source
        .actions
        .iter()
        .map(|x| {
            if kdim == 0 {
                Mat::zeros(f, 0, 0)
            } else {
                ker.solve(&x.mul(&ker)).expect("kernel is invariant")
            }
        })
        .collect();
    let syzygy = ModuleRep {
        algebra: algebra.clone(),
        dim: kdim,
        actions,
    };
    let cover_map = ModuleMap::new(source.clone(), m.clone(), cover);
    let inclusion = ModuleMap::new(syzygy.clone(), source, ker);
    ProjCover {
        beta,
        cover: cover_map,
        syzygy,
        inclusion,
    }
}

/// Minimal injective hull M -> A^t, t = dim soc M: a greedy selection of
/// Hom(M, A) basis maps whose restrictions to the socle are jointly
/// injective.
pub fn injective_hull(m: &ModuleRep) -> Result<ModuleMap> {
    let algebra = &m.algebra;
    let f = algebra.field();
    let reg = algebra.regular_module();
    let soc = m.socle();
    let t = soc.dim();
    let socb = soc.basis.basis_matrix();
    let homs = hom_space(m, &reg);
    let mut chosen: Vec<&Mat> = Vec::new();
    let mut current_rank = 0;
    for cand in &homs.basis {
        if current_rank == t {
            break;
        }
        let mut trial: Vec<&Mat> = chosen.clone();
        trial.push(cand);
        let restricted = Mat::vstack(&trial).mul(&socb);
        let r = restricted.rank();
        if r > current_rank {
            chosen.push(cand);
            current_rank = r;
        }
    }
    if current_rank != t {
        return Err(Error::HullConstructionFailed);
    }
    let target = free_module(algebra, chosen.len());
    let matrix = if chosen.is_empty() {
        Mat::zeros(f, 0, m.dim)
    } else {
        Mat::vstack(&chosen)
    };
    Ok(ModuleMap::new(m.clone(), target, matrix))
}

/// Cokernel of the injective hull.
pub fn cosyzygy(m: &ModuleRep) -> Result<ModuleRep> {
    if m.dim == 0 {
        return Ok(zero_module(&m.algebra));
    }
    let hull = injective_hull(m)?;
    let image = Submodule {
        basis: Span::from_cols(&hull.matrix),
    };
    let (q, _) = hull.target.quotient(&image)?;
    Ok(q)
}

/// Iterated syzygy: positive n takes kernels of minimal covers, negative n
/// cokernels of minimal hulls, n = 0 strips projective summands.
pub fn syzygy(m: &ModuleRep, n: i64, opts: &Opts) -> Result<ModuleRep> {
    let mut cur = if n == 0 {
        crate::decomp::strip_projectives(m, opts)?
    } else {
        m.clone()
    };
    if n > 0 {
        for _ in 0..n {
            cur = projective_cover(&cur).syzygy;
        }
    } else if n < 0 {
        for _ in 0..(-n) {
            cur = cosyzygy(&cur)?;
        }
    }
    Ok(cur)
}

/// dim Ext^n(M, N) for n >= 1, computed as the stable Hom out of the n-th
/// syzygy.
pub fn ext_dim(m: &ModuleRep, n: &ModuleRep, deg: u32) -> Result<usize> {
    assert!(deg >= 1, "ext_dim needs degree >= 1");
    let mut om = m.clone();
    for _ in 0..deg {
        om = projective_cover(&om).syzygy;
    }
    Ok(stable_hom_dim(&om, n))
}

/// Short exact sequence witness with rank-checked invariants.
#[derive(Debug, Clone)]
pub struct ShortExactSequence {
    pub left: ModuleRep,
    pub middle: ModuleRep,
    pub right: ModuleRep,
    pub inject: ModuleMap,
    pub surject: ModuleMap,
}

impl ShortExactSequence {
    pub fn validate(&self) -> Result<()> {
        if !self.inject.is_intertwiner() || !self.surject.is_intertwiner() {
            return Err(Error::DimensionMismatch(
                "sequence maps are not intertwiners".into(),
            ));
        }
        if !self.inject.is_injective() {
            return Err(Error::DimensionMismatch("inject is not injective".into()));
        }
        if !self.surject.is_surjective() {
            return Err(Error::DimensionMismatch("surject is not surjective".into()));
        }
        if self.left.dim + self.right.dim != self.middle.dim {
            return Err(Error::DimensionMismatch(
                "middle dimension does not balance".into(),
            ));
        }
        if !self.surject.matrix.mul(&self.inject.matrix).is_zero() {
            return Err(Error::DimensionMismatch(
                "image of inject is not killed by surject".into(),
            ));
        }
        Ok(())
    }

    /// Exact splitting test: does a section of the surjection exist?
    pub fn is_split(&self) -> bool {
        let f = self.right.algebra.field();
        let homs = hom_space(&self.right, &self.middle);
        if homs.dim() == 0 {
            return self.right.dim == 0;
        }
        // solve surject * (sum c_j s_j) = id over the c_j
        let cols: Vec<Mat> = homs
            .basis
            .iter()
            .map(|s| Mat::col_vec(f, &self.surject.matrix.mul(s).vectorize()))
            .collect();
        let sys = Mat::hstack(&cols.iter().collect::<Vec<_>>());
        let id = Mat::col_vec(f, &Mat::identity(f, self.right.dim).vectorize());
        sys.solve(&id).is_some()
    }
}

/// Realize a cocycle f: Omega(N) -> W as an extension of N by W:
/// E = (W + A^beta) / {(f(x), -iota(x))}.
pub fn extension_from_cocycle(
    n: &ModuleRep,
    w: &ModuleRep,
    cover: &ProjCover,
    f_matrix: &Mat,
) -> Result<ShortExactSequence> {
    let field = n.algebra.field();
    assert_eq!(f_matrix.rows, w.dim);
    assert_eq!(f_matrix.cols, cover.syzygy.dim);
    let big = w.direct_sum(&cover.cover.source);
    // graph of (f, -iota) over the syzygy basis
    let graph = Mat::vstack(&[f_matrix, &cover.inclusion.matrix.neg()]);
    let sub = Submodule {
        basis: Span::from_cols(&graph),
    };
    let (e, proj) = big.quotient(&sub)?;
    // inject: W -> E through the first block
    let mut embed_w = Mat::zeros(field, big.dim, w.dim);
    for i in 0..w.dim {
        embed_w.set(i, i, 1);
    }
    let inject = ModuleMap::new(w.clone(), e.clone(), proj.matrix.mul(&embed_w));
    // surject: E -> N induced by (w, p) -> cover(p); compute on complement reps
    let comp = sub.basis.complement_rows();
    let mut emb = Mat::zeros(field, big.dim, e.dim);
    for (k, &row) in comp.iter().enumerate() {
        emb.set(row, k, 1);
    }
    let mut zero_then_cover = Mat::zeros(field, n.dim, big.dim);
    for i in 0..n.dim {
        for j in 0..cover.cover.source.dim {
            zero_then_cover.set(i, w.dim + j, cover.cover.matrix.at(i, j));
        }
    }
    let surject = ModuleMap::new(e.clone(), n.clone(), zero_then_cover.mul(&emb));
    let seq = ShortExactSequence {
        left: w.clone(),
        middle: e,
        right: n.clone(),
        inject,
        surject,
    };
    seq.validate()?;
    Ok(seq)
}

/// Lift a map through minimal covers: returns Omega(f): Omega(src) ->
/// Omega(tgt) for f: src -> tgt.
///
/// The lift must be a module map A^{b_src} -> A^{b_tgt}: it is fixed on the
/// free generators by solving the cover equation there and extended to the
/// monomial basis through the regular action.
pub fn omega_map(f_map: &Mat, src_cover: &ProjCover, tgt_cover: &ProjCover) -> Mat {
    let algebra = &src_cover.syzygy.algebra;
    let f = algebra.field();
    let da = algebra.dim;
    let beta_src = src_cover.beta;
    let beta_tgt = tgt_cover.beta;
    let reg_actions: Vec<Mat> = (0..da).map(|b| regular_basis_action(algebra, b)).collect();
    let mut fhat = Mat::zeros(f, beta_tgt * da, beta_src * da);
    for j in 0..beta_src {
        // image of the j-th free generator under f o cover_src
        let mut gen_unit = Mat::zeros(f, beta_src * da, 1);
        gen_unit.set(j * da, 0, 1);
        let v = f_map.mul(&src_cover.cover.matrix.mul(&gen_unit));
        let w = tgt_cover
            .cover
            .matrix
            .solve(&v)
            .expect("covers are surjective, a generator preimage exists");
        // column (j, b) = x^b . w, blockwise regular action
        for b in 0..da {
            for blk in 0..beta_tgt {
                for r in 0..da {
                    let mut acc = 0;
                    for s in 0..da {
                        acc = f.add(acc, f.mul(reg_actions[b].at(r, s), w.at(blk * da + s, 0)));
                    }
                    fhat.set(blk * da + r, j * da + b, acc);
                }
            }
        }
    }
    debug_assert_eq!(
        tgt_cover.cover.matrix.mul(&fhat),
        f_map.mul(&src_cover.cover.matrix)
    );
    // restrict to kernels: express fhat * K_src in K_tgt coordinates
    let img = fhat.mul(&src_cover.inclusion.matrix);
    tgt_cover
        .inclusion
        .matrix
        .solve(&img)
        .expect("lift preserves kernels")
}

/// Left multiplication by the `b`-th basis monomial on the regular module.
fn regular_basis_action(algebra: &crate::qalgebra::Algebra, b: usize) -> Mat {
    let f = algebra.field();
    let mut x = Mat::zeros(f, algebra.dim, algebra.dim);
    for j in 0..algebra.dim {
        if let Some((s, k)) = algebra.structure[b][j] {
            x.set(k, j, s);
        }
    }
    x
}

/// One row of the long-exact-sequence bookkeeping table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct LesRow {
    pub level: u32,
    pub dim_right: usize,
    pub dim_middle: usize,
    pub dim_left: usize,
    pub rank_g: usize,
    pub rank_f: usize,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct LesReport {
    pub rows: Vec<LesRow>,
    pub ok: bool,
}

/// Apply Hom(-, W) to a short exact sequence and check the alternating rank
/// identities of the induced long exact sequence up to Ext^depth.
///
/// At each level n (0 = Hom, n >= 1 = Ext^n) the exactness constraints are:
///   rank(g*_0) = dim Hom(N, W)                      (left exactness)
///   dim T(M)_n = rank(g*_n) + rank(f*_n)            (exactness at middle)
///   dim T(N)_n = rank(g*_n) + [dim T(L)_{n-1} - rank(f*_{n-1})]  for n >= 1
pub fn les_dimension_check(
    seq: &ShortExactSequence,
    w: &ModuleRep,
    depth: u32,
) -> Result<LesReport> {
    let field = w.algebra.field();
    let mut rows = Vec::new();
    let mut ok = true;

    // iterated covers of L, M, N
    let mut covers_l = Vec::new();
    let mut covers_m = Vec::new();
    let mut covers_n = Vec::new();
    let mut cl = seq.left.clone();
    let mut cm = seq.middle.clone();
    let mut cn = seq.right.clone();
    for _ in 0..depth {
        let pl = projective_cover(&cl);
        let pm = projective_cover(&cm);
        let pn = projective_cover(&cn);
        cl = pl.syzygy.clone();
        cm = pm.syzygy.clone();
        cn = pn.syzygy.clone();
        covers_l.push(pl);
        covers_m.push(pm);
        covers_n.push(pn);
    }

    // Omega^n of the structure maps
    let mut f_n = seq.inject.matrix.clone(); // L -> M
    let mut g_n = seq.surject.matrix.clone(); // M -> N
    let mut src_l = seq.left.clone();
    let mut src_m = seq.middle.clone();
    let mut src_n = seq.right.clone();

    for level in 0..=depth {
        let (dim_l, dim_m, dim_n, rank_f, rank_g) = if level == 0 {
            let hl = hom_space(&src_l, w);
            let hm = hom_space(&src_m, w);
            let hn = hom_space(&src_n, w);
            // f*: Hom(M, W) -> Hom(L, W), h -> h o f
            let rank_f = induced_rank_plain(&hm, &hl, &f_n, field);
            let rank_g = induced_rank_plain(&hn, &hm, &g_n, field);
            (hl.dim(), hm.dim(), hn.dim(), rank_f, rank_g)
        } else {
            let sl = StableHom::compute(&src_l, w);
            let sm = StableHom::compute(&src_m, w);
            let sn = StableHom::compute(&src_n, w);
            let rank_f = induced_rank_stable(&sm, &sl, &f_n, field);
            let rank_g = induced_rank_stable(&sn, &sm, &g_n, field);
            (sl.stable_dim, sm.stable_dim, sn.stable_dim, rank_f, rank_g)
        };

        if level == 0 {
            ok &= rank_g == dim_n;
        }
        ok &= dim_m == rank_g + rank_f;
        if level >= 1 {
            let prev: &LesRow = rows.last().expect("previous level exists");
            let delta_rank = prev.dim_left - prev.rank_f;
            ok &= dim_n == rank_g + delta_rank;
        }
        rows.push(LesRow {
            level,
            dim_right: dim_n,
            dim_middle: dim_m,
            dim_left: dim_l,
            rank_g,
            rank_f,
        });

        if level < depth {
            let li = level as usize;
            f_n = omega_map(&f_n, &covers_l[li], &covers_m[li]);
            g_n = omega_map(&g_n, &covers_m[li], &covers_n[li]);
            src_l = covers_l[li].syzygy.clone();
            src_m = covers_m[li].syzygy.clone();
            src_n = covers_n[li].syzygy.clone();
        }
    }
    Ok(LesReport { rows, ok })
}

/// Does an injective intertwiner L -> X exist? Deterministic sweep of the
/// hom basis, then seeded random combinations.
pub fn mono_exists(l: &ModuleRep, x: &ModuleRep, opts: &Opts) -> bool {
    use rand::{Rng, SeedableRng};
    if l.dim == 0 {
        return true;
    }
    if l.dim > x.dim {
        return false;
    }
    let hs = hom_space(l, x);
    if hs.dim() == 0 {
        return false;
    }
    for b in &hs.basis {
        if b.rank() == l.dim {
            return true;
        }
    }
    let seed = crate::seeds::derive_seed(
        opts.seed,
        "mono-search",
        l.content_hash() ^ x.content_hash().rotate_left(1),
    );
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p = l.algebra.field().p();
    for _ in 0..opts.iso_trials {
        let coords: Vec<u64> = (0..hs.dim()).map(|_| rng.gen_range(0..p)).collect();
        if hs.combine(&coords).rank() == l.dim {
            return true;
        }
    }
    false
}

/// Rank of h -> h o f from Hom(src_of_f_target, W) to Hom(src_of_f_source, W).
fn induced_rank_plain(
    from: &HomSpace,
    to: &HomSpace,
    f_matrix: &Mat,
    field: crate::scalars::Field,
) -> usize {
    let ambient = to.target.dim * to.source.dim;
    let mut s = Span::empty(field, ambient);
    let mut count = 0;
    for h in &from.basis {
        let comp = h.mul(f_matrix);
        if s.insert(&comp.vectorize()) {
            count += 1;
        }
    }
    count
}

/// Rank of the induced map on stable spaces.
fn induced_rank_stable(
    from: &StableHom,
    to: &StableHom,
    f_matrix: &Mat,
    field: crate::scalars::Field,
) -> usize {
    let mut s = Span::empty(field, to.stable_dim.max(1));
    let mut count = 0;
    for k in 0..from.stable_dim {
        let mut unit = vec![0; from.stable_dim];
        unit[k] = 1;
        let h = from.representative(&unit);
        let comp = h.mul(f_matrix);
        let coords = to
            .stable_coords(&comp)
            .expect("composition stays an intertwiner");
        if to.stable_dim > 0 && s.insert(&coords) {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::simple_module;
    use crate::qalgebra::{build_algebra, Algebra, AlgebraConfig};
    use crate::scalars::make_field;
    use std::sync::Arc;

    fn exterior2() -> Arc<Algebra> {
        let f = make_field(5).unwrap();
        build_algebra(AlgebraConfig::homogeneous(f, 2, 2, 4).unwrap()).unwrap()
    }

    fn a32() -> Arc<Algebra> {
        let f = make_field(7).unwrap();
        build_algebra(AlgebraConfig::homogeneous(f, 3, 2, 2).unwrap()).unwrap()
    }

    #[test]
    fn hom_dimensions() {
        let a = exterior2();
        let k = simple_module(&a);
        let reg = a.regular_module();
        assert_eq!(hom_space(&k, &k).dim(), 1);
        // maps out of the free module are determined by the image of 1
        assert_eq!(hom_space(&reg, &k).dim(), 1);
        assert_eq!(hom_space(&reg, &reg).dim(), 4);
        // maps k -> A land in the socle
        assert_eq!(hom_space(&k, &reg).dim(), 1);
    }

    #[test]
    fn hom_basis_intertwines() {
        let a = a32();
        let reg = a.regular_module();
        let (rad, _) = reg.restrict_to(&reg.radical());
        let hs = hom_space(&rad, &reg);
        for b in &hs.basis {
            let m = ModuleMap::new(rad.clone(), reg.clone(), b.clone());
            assert!(m.is_intertwiner());
        }
    }

    #[test]
    fn stable_hom_values() {
        let a = exterior2();
        let k = simple_module(&a);
        let reg = a.regular_module();
        // the identity of A factors through a projective
        assert_eq!(stable_hom_dim(&reg, &k), 0);
        assert_eq!(stable_hom_dim(&reg, &reg), 0);
        // compositions k -> A -> k pass through soc A inside rad A
        assert_eq!(stable_hom_dim(&k, &k), 1);
    }

    #[test]
    fn covers_and_syzygies() {
        let a = exterior2();
        let k = simple_module(&a);
        let pc = projective_cover(&k);
        assert_eq!(pc.beta, 1);
        assert_eq!(pc.syzygy.dim, 3); // rad A
        assert!(pc.cover.is_intertwiner());
        assert!(pc.inclusion.is_intertwiner());

        let reg = a.regular_module();
        let pr = projective_cover(&reg);
        assert_eq!(pr.beta, 1);
        assert_eq!(pr.syzygy.dim, 0);

        let (rad, _) = reg.restrict_to(&reg.radical());
        let prad = projective_cover(&rad);
        assert_eq!(prad.beta, 2);
        assert_eq!(prad.syzygy.dim, 2 * 4 - 3);
    }

    #[test]
    fn syzygy_dimension_law() {
        // dim Omega(M) = beta * dim A - dim M
        let a = a32();
        let k = simple_module(&a);
        let opts = Opts::with_seed(1);
        let o1 = syzygy(&k, 1, &opts).unwrap();
        assert_eq!(o1.dim, 9 - 1);
        let o2 = syzygy(&k, 2, &opts).unwrap();
        let beta = o1.top_dim();
        assert_eq!(o2.dim, beta * 9 - o1.dim);
    }

    #[test]
    fn hull_and_cosyzygy() {
        let a = exterior2();
        let k = simple_module(&a);
        let hull = injective_hull(&k).unwrap();
        assert!(hull.is_intertwiner());
        assert!(hull.is_injective());
        assert_eq!(hull.target.dim, 4); // soc k is 1-dim, hull is A
        let co = cosyzygy(&k).unwrap();
        assert_eq!(co.dim, 3); // A / soc A
    }

    #[test]
    fn ext_values() {
        let a = exterior2();
        let k = simple_module(&a);
        let reg = a.regular_module();
        assert_eq!(ext_dim(&reg, &k, 1).unwrap(), 0);
        // dim Ext^1(k, k) = c
        assert_eq!(ext_dim(&k, &k, 1).unwrap(), 2);
        let a3 = a32();
        let k3 = simple_module(&a3);
        assert_eq!(ext_dim(&k3, &k3, 1).unwrap(), 2);
    }

    #[test]
    fn ext_k_c3() {
        let f = make_field(5).unwrap();
        let a = build_algebra(AlgebraConfig::homogeneous(f, 2, 3, 4).unwrap()).unwrap();
        let k = simple_module(&a);
        assert_eq!(ext_dim(&k, &k, 1).unwrap(), 3);
    }

    #[test]
    fn extension_realization() {
        let a = exterior2();
        let k = simple_module(&a);
        let pc = projective_cover(&k);
        let f = a.field();

        // zero cocycle splits
        let zero = Mat::zeros(f, 1, pc.syzygy.dim);
        let seq = extension_from_cocycle(&k, &k, &pc, &zero).unwrap();
        assert!(seq.is_split());
        assert_eq!(seq.middle.dim, 2);

        // the tautological extension: f = identity on rad A gives E = A
        let pcid = projective_cover(&k);
        let id = Mat::identity(f, pcid.syzygy.dim);
        let (radmod, _) = a.regular_module().restrict_to(&a.regular_module().radical());
        // identify rad A with the syzygy via any iso; here the cover of k
        // already has syzygy = rad A in the standard coordinates
        assert_eq!(radmod.dim, pcid.syzygy.dim);
        let seq2 = extension_from_cocycle(&k, &pcid.syzygy.clone(), &pcid, &id).unwrap();
        assert!(!seq2.is_split());
        assert_eq!(seq2.middle.dim, 4);

        // a nonzero stable class gives a non-split 2-dim middle
        let sh = StableHom::compute(&pc.syzygy, &k);
        assert_eq!(sh.stable_dim, 2);
        let class = sh.representative(&[1, 0]);
        let seq3 = extension_from_cocycle(&k, &k, &pc, &class).unwrap();
        assert!(!seq3.is_split());
        assert_eq!(seq3.middle.dim, 2);
    }

    #[test]
    fn les_bookkeeping() {
        let a = exterior2();
        let k = simple_module(&a);
        let pc = projective_cover(&k);
        let f = a.field();

        // split sequence
        let zero = Mat::zeros(f, 1, pc.syzygy.dim);
        let split = extension_from_cocycle(&k, &k, &pc, &zero).unwrap();
        let rep = les_dimension_check(&split, &k, 2).unwrap();
        assert!(rep.ok);

        // cover sequence of k against W = k
        let id = Mat::identity(f, pc.syzygy.dim);
        let cover_seq = extension_from_cocycle(&k, &pc.syzygy.clone(), &pc, &id).unwrap();
        let rep2 = les_dimension_check(&cover_seq, &k, 2).unwrap();
        assert!(rep2.ok);
    }

    #[test]
    fn stable_ext_agree_with_cocycle_split_detection() {
        // ext_dim counts independent non-split extension directions
        let a = exterior2();
        let k = simple_module(&a);
        let pc = projective_cover(&k);
        let sh = StableHom::compute(&pc.syzygy, &k);
        assert_eq!(sh.stable_dim, ext_dim(&k, &k, 1).unwrap());
        for j in 0..sh.stable_dim {
            let mut unit = vec![0; sh.stable_dim];
            unit[j] = 1;
            let class = sh.representative(&unit);
            let seq = extension_from_cocycle(&k, &k, &pc, &class).unwrap();
            assert!(!seq.is_split(), "nonzero class must not split");
        }
    }
}
