//! Rank varieties, Jordan types over k[u_lambda], principal modules Au^s,
//! and induction/restriction along k[u_lambda] in A.
//!
//! For nonzero lambda the subalgebra k[u_lambda] is a truncated polynomial
//! ring k[x]/(x^a); a module restricts to a sum of Jordan blocks M_i, and
//! membership in the rank variety is exactly "some block has size < a".

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::modrep::{ModuleMap, ModuleRep};
use crate::qalgebra::{Algebra, AlgebraElement};
use crate::scalars::Scalar;
use crate::seeds::{derive_seed, Opts};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A direction lambda in k^c; u_lambda = sum lambda_i x_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPoint(pub Vec<Scalar>);

impl RankPoint {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// Scale-canonical representative: first nonzero coordinate is 1.
    pub fn normalized(&self, algebra: &Algebra) -> RankPoint {
        let f = algebra.field();
        match self.0.iter().position(|&v| v != 0) {
            None => self.clone(),
            Some(i) => {
                let inv = f.inv(self.0[i]);
                RankPoint(self.0.iter().map(|&v| f.mul(v, inv)).collect())
            }
        }
    }
}

/// Block-size multiplicities of the nilpotent u_lambda action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanType {
    pub exponent: u32,
    /// multiplicities[i] = number of blocks of size i+1.
    pub multiplicities: Vec<usize>,
}

impl JordanType {
    pub fn total_dim(&self) -> usize {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &n)| (i + 1) * n)
            .sum()
    }

    /// All blocks have the maximal size a, i.e. the restriction is free.
    pub fn is_free(&self) -> bool {
        self.multiplicities[..self.multiplicities.len() - 1]
            .iter()
            .all(|&n| n == 0)
    }

    /// Number of non-free blocks (sizes < a).
    pub fn nonfree_blocks(&self) -> usize {
        self.multiplicities[..self.multiplicities.len() - 1]
            .iter()
            .sum()
    }
}

pub fn u_element(algebra: &Arc<Algebra>, lambda: &RankPoint) -> AlgebraElement {
    assert_eq!(lambda.0.len(), algebra.config.c);
    let f = algebra.field();
    let mut out = algebra.zero();
    for (i, &coef) in lambda.0.iter().enumerate() {
        if coef != 0 {
            let g = algebra.generator(i);
            for (k, &v) in g.0.iter().enumerate() {
                out.0[k] = f.add(out.0[k], f.mul(coef, v));
            }
        }
    }
    out
}

/// Jordan type of u_lambda on M via the rank profile
/// n_i = rank(U^{i-1}) - 2 rank(U^i) + rank(U^{i+1}).
pub fn jordan_type(m: &ModuleRep, lambda: &RankPoint) -> Result<JordanType> {
    if lambda.is_zero() {
        return Err(Error::ZeroPoint);
    }
    // u_lambda^a = 0 needs the homogeneous setup
    assert!(
        m.algebra.config.homogeneous_parameters().is_some(),
        "rank varieties are defined for homogeneous algebras"
    );
    let a = m.algebra.config.exponents[0] as usize;
    let u = m.action_of(&u_element(&m.algebra, lambda));
    let mut ranks = Vec::with_capacity(a + 2);
    let mut power = Mat::identity(m.algebra.field(), m.dim);
    ranks.push(m.dim);
    for _ in 1..=(a + 1) {
        power = power.mul(&u);
        ranks.push(power.rank());
    }
    let mut multiplicities = Vec::with_capacity(a);
    for i in 1..=a {
        let n_i = ranks[i - 1] + ranks[i + 1];
        let n_i = n_i
            .checked_sub(2 * ranks[i])
            .expect("rank profile is convex");
        multiplicities.push(n_i);
    }
    let jt = JordanType {
        exponent: a as u32,
        multiplicities,
    };
    debug_assert_eq!(jt.total_dim(), m.dim);
    Ok(jt)
}

/// lambda = 0 is in every variety by definition; nonzero lambda is a member
/// iff the restriction is not free, equivalently rank(U) < ((a-1)/a) dim M.
pub fn rank_variety_contains(m: &ModuleRep, lambda: &RankPoint) -> Result<bool> {
    if lambda.is_zero() {
        return Ok(true);
    }
    let a = m.algebra.config.exponents[0] as u64;
    let jt = jordan_type(m, lambda)?;
    let not_free = !jt.is_free();
    // cross-validate against the single-rank criterion
    let u = m.action_of(&u_element(&m.algebra, lambda));
    let rank = u.rank() as u64;
    let threshold_strict = a * rank < (a - 1) * (m.dim as u64);
    if not_free != threshold_strict {
        // equality at the threshold with a not dividing dim M cannot happen
        return Err(Error::NotDivisible);
    }
    Ok(not_free)
}

/// The principal module Au_lambda^s: the left submodule of the regular
/// module generated by u_lambda^s, with its inclusion.
pub fn principal_module(
    algebra: &Arc<Algebra>,
    lambda: &RankPoint,
    s: u32,
) -> Result<(ModuleRep, ModuleMap)> {
    if lambda.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let a = algebra.config.exponents[0];
    if s == 0 || s >= a {
        return Err(Error::BlockOutOfRange { i: s, a });
    }
    let reg = algebra.regular_module();
    let u = u_element(algebra, lambda);
    let us = algebra.element_pow(&u, s);
    let sub = reg.submodule_generated(&[us.0.clone()]);
    let (module, incl) = reg.restrict_to(&sub);
    Ok((module, incl))
}

/// Restriction to k[u_lambda] is exactly the Jordan type.
pub fn restrict_to_point(m: &ModuleRep, lambda: &RankPoint) -> Result<JordanType> {
    jordan_type(m, lambda)
}

/// Induced module A tensor_{k[u_lambda]} M_i, realized as the cyclic module
/// A/(A u_lambda^i): dimension i * a^{c-1}.
pub fn induce_from_point(
    algebra: &Arc<Algebra>,
    lambda: &RankPoint,
    block: u32,
) -> Result<ModuleRep> {
    if lambda.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let a = algebra.config.exponents[0];
    if block == 0 || block > a {
        return Err(Error::BlockOutOfRange { i: block, a });
    }
    let reg = algebra.regular_module();
    if block == a {
        // u^a = 0, so the quotient is A itself
        return Ok(reg);
    }
    let u = u_element(algebra, lambda);
    let ui = algebra.element_pow(&u, block);
    let sub = reg.submodule_generated(&[ui.0.clone()]);
    let (q, _) = reg.quotient(&sub)?;
    Ok(q)
}

#[derive(Debug, Clone, Serialize)]
pub enum ProbeStrategy {
    /// Scan all p + 1 directions of the projective line (c = 2 only).
    LineScanC2,
    /// Seeded random directions.
    Random { samples: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct VarietyReport {
    pub module: String,
    /// Normalized member directions.
    pub members: Vec<Vec<Scalar>>,
    /// Jordan type per probed direction (normalized, stringified key).
    pub jordan_types: BTreeMap<String, Vec<usize>>,
    /// Scaling invariance held on every sampled pair.
    pub homogeneous: bool,
}

fn direction_key(lambda: &[Scalar]) -> String {
    let strs: Vec<String> = lambda.iter().map(|v| v.to_string()).collect();
    format!("[{}]", strs.join(","))
}

pub fn probe_variety(
    m: &ModuleRep,
    strategy: &ProbeStrategy,
    opts: &Opts,
) -> Result<VarietyReport> {
    let algebra = &m.algebra;
    let f = algebra.field();
    let c = algebra.config.c;
    let directions: Vec<RankPoint> = match strategy {
        ProbeStrategy::LineScanC2 => {
            assert_eq!(c, 2, "line scan needs c = 2");
            let mut dirs: Vec<RankPoint> = (0..f.p())
                .map(|t| RankPoint(vec![1, t]))
                .collect();
            dirs.push(RankPoint(vec![0, 1]));
            dirs
        }
        ProbeStrategy::Random { samples } => {
            let seed = derive_seed(opts.seed, "variety-probe", m.content_hash());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut dirs = Vec::new();
            while dirs.len() < *samples {
                let v: Vec<Scalar> = (0..c).map(|_| rng.gen_range(0..f.p())).collect();
                let pt = RankPoint(v);
                if !pt.is_zero() {
                    dirs.push(pt.normalized(algebra));
                }
            }
            dirs
        }
    };
    let mut members = Vec::new();
    let mut jordan_types = BTreeMap::new();
    let mut homogeneous = true;
    let seed = derive_seed(opts.seed, "variety-scale", m.content_hash());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for dir in &directions {
        let norm = dir.normalized(algebra);
        let contained = rank_variety_contains(m, &norm)?;
        let jt = jordan_type(m, &norm)?;
        jordan_types.insert(direction_key(&norm.0), jt.multiplicities.clone());
        if contained {
            members.push(norm.0.clone());
        }
        // scaling invariance on a random nonzero multiple
        let t = rng.gen_range(1..f.p());
        let scaled = RankPoint(norm.0.iter().map(|&v| f.mul(v, t)).collect());
        if rank_variety_contains(m, &scaled)? != contained {
            homogeneous = false;
        }
    }
    members.sort();
    members.dedup();
    Ok(VarietyReport {
        module: format!("{:016x}", m.content_hash()),
        members,
        jordan_types,
        homogeneous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::isomorphic;
    use crate::homology::syzygy;
    use crate::modrep::simple_module;
    use crate::qalgebra::{build_algebra, AlgebraConfig};
    use crate::scalars::make_field;

    fn exterior2() -> Arc<Algebra> {
        let f = make_field(101).unwrap();
        build_algebra(AlgebraConfig::homogeneous(f, 2, 2, 100).unwrap()).unwrap()
    }

    fn a32() -> Arc<Algebra> {
        let f = make_field(103).unwrap();
        let q = f.primitive_root_of_unity(3).unwrap();
        build_algebra(AlgebraConfig::homogeneous(f, 3, 2, q).unwrap()).unwrap()
    }

    #[test]
    fn u_squares_to_zero() {
        let a = exterior2();
        // lambda = (1, 0): u = x1
        let u = u_element(&a, &RankPoint(vec![1, 0]));
        assert_eq!(a.multiply(&u, &u), a.zero());
        // lambda = (1, 1): (x1 + x2)^2 = x1x2 + x2x1 = 0
        let u = u_element(&a, &RankPoint(vec![1, 1]));
        assert_eq!(a.multiply(&u, &u), a.zero());
    }

    #[test]
    fn u_cubes_to_zero() {
        let a = a32();
        let u = u_element(&a, &RankPoint(vec![1, 1]));
        let u3 = a.element_pow(&u, 3);
        assert_eq!(u3, a.zero());
        // and for a spread of directions
        for t in 0..10 {
            let u = u_element(&a, &RankPoint(vec![1, t]));
            assert_eq!(a.element_pow(&u, 3), a.zero());
        }
    }

    #[test]
    fn jordan_type_of_regular() {
        // A restricted to any nonzero point is free of rank a^{c-1}
        let a = exterior2();
        let reg = a.regular_module();
        let jt = jordan_type(&reg, &RankPoint(vec![1, 1])).unwrap();
        assert_eq!(jt.multiplicities, vec![0, 2]);
        assert!(jt.is_free());

        let a3 = a32();
        let reg3 = a3.regular_module();
        let jt3 = jordan_type(&reg3, &RankPoint(vec![1, 2])).unwrap();
        assert_eq!(jt3.multiplicities, vec![0, 0, 3]);
    }

    #[test]
    fn jordan_type_of_simple() {
        let a = exterior2();
        let k = simple_module(&a);
        let jt = jordan_type(&k, &RankPoint(vec![1, 0])).unwrap();
        assert_eq!(jt.multiplicities, vec![1, 0]);
        assert!(!jt.is_free());
    }

    #[test]
    fn jordan_zero_point_rejected() {
        let a = exterior2();
        let k = simple_module(&a);
        assert!(matches!(
            jordan_type(&k, &RankPoint(vec![0, 0])),
            Err(Error::ZeroPoint)
        ));
    }

    #[test]
    fn principal_module_dims() {
        // dim Au^s = (a - s) a^{c-1}
        let a = exterior2();
        let lam = RankPoint(vec![1, 1]);
        let (au, incl) = principal_module(&a, &lam, 1).unwrap();
        assert_eq!(au.dim, 2);
        assert!(incl.is_intertwiner());
        assert!(incl.is_injective());

        let a3 = a32();
        let lam3 = RankPoint(vec![1, 1]);
        let (au1, _) = principal_module(&a3, &lam3, 1).unwrap();
        assert_eq!(au1.dim, 6); // (3-1) * 3
        let (au2, _) = principal_module(&a3, &lam3, 2).unwrap();
        assert_eq!(au2.dim, 3); // (3-2) * 3
        assert_ne!(au1.dim, au2.dim);
    }

    #[test]
    fn u_annihilates_principal_at_a2() {
        // Au^2 = 0 at a = 2: u acts by zero on Au
        let a = exterior2();
        let lam = RankPoint(vec![1, 3]);
        let (au, _) = principal_module(&a, &lam, 1).unwrap();
        let jt = jordan_type(&au, &lam).unwrap();
        assert_eq!(jt.multiplicities, vec![2, 0]);
    }

    #[test]
    fn variety_membership() {
        let a = exterior2();
        let reg = a.regular_module();
        let k = simple_module(&a);
        let lam = RankPoint(vec![1, 1]);
        assert!(!rank_variety_contains(&reg, &lam).unwrap());
        assert!(rank_variety_contains(&k, &lam).unwrap());
        // zero point is always a member
        assert!(rank_variety_contains(&reg, &RankPoint(vec![0, 0])).unwrap());
        // Au_lambda is supported exactly on the line through lambda
        let (au, _) = principal_module(&a, &lam, 1).unwrap();
        assert!(rank_variety_contains(&au, &lam).unwrap());
        let mu = RankPoint(vec![1, 2]);
        assert!(!rank_variety_contains(&au, &mu).unwrap());
    }

    #[test]
    fn induction_dims_and_isos() {
        let opts = Opts::with_seed(5);
        let a = exterior2();
        let lam = RankPoint(vec![1, 4]);
        let w = induce_from_point(&a, &lam, 1).unwrap();
        assert_eq!(w.dim, 2);
        let (au, _) = principal_module(&a, &lam, 1).unwrap();
        assert!(isomorphic(&w, &au, &opts));
        let full = induce_from_point(&a, &lam, 2).unwrap();
        assert_eq!(full.dim, 4);

        let a3 = a32();
        let lam3 = RankPoint(vec![1, 5]);
        for i in 1..=3u32 {
            let ind = induce_from_point(&a3, &lam3, i).unwrap();
            assert_eq!(ind.dim, (i as usize) * 3);
        }
        // induce(1) is isomorphic to Au^{a-1}
        let ind1 = induce_from_point(&a3, &lam3, 1).unwrap();
        let (wa, _) = principal_module(&a3, &lam3, 2).unwrap();
        assert!(isomorphic(&ind1, &wa, &opts));
    }

    #[test]
    fn principal_syzygy_period() {
        let opts = Opts::with_seed(5);
        let a3 = a32();
        let lam = RankPoint(vec![1, 1]);
        let (au, _) = principal_module(&a3, &lam, 1).unwrap();
        let (au2, _) = principal_module(&a3, &lam, 2).unwrap();
        let o1 = syzygy(&au, 1, &opts).unwrap();
        assert!(isomorphic(&o1, &au2, &opts));
        let o2 = syzygy(&au, 2, &opts).unwrap();
        assert!(isomorphic(&o2, &au, &opts));
    }

    #[test]
    fn line_scan() {
        let opts = Opts::with_seed(5);
        let a = exterior2();
        let lam = RankPoint(vec![1, 1]);
        let (au, _) = principal_module(&a, &lam, 1).unwrap();
        let rep = probe_variety(&au, &ProbeStrategy::LineScanC2, &opts).unwrap();
        assert_eq!(rep.members, vec![vec![1, 1]]);
        assert!(rep.homogeneous);

        let reg = a.regular_module();
        let rep2 = probe_variety(&reg, &ProbeStrategy::LineScanC2, &opts).unwrap();
        assert!(rep2.members.is_empty());

        let k = simple_module(&a);
        let rep3 = probe_variety(&k, &ProbeStrategy::LineScanC2, &opts).unwrap();
        assert_eq!(rep3.members.len(), 102); // all of P^1(F_101)
    }

    #[test]
    fn jordan_additive_on_sums() {
        let a = a32();
        let reg = a.regular_module();
        let k = simple_module(&a);
        let lam = RankPoint(vec![2, 1]);
        let jt_sum = jordan_type(&reg.direct_sum(&k), &lam).unwrap();
        let jt_reg = jordan_type(&reg, &lam).unwrap();
        let jt_k = jordan_type(&k, &lam).unwrap();
        let combined: Vec<usize> = jt_reg
            .multiplicities
            .iter()
            .zip(&jt_k.multiplicities)
            .map(|(&x, &y)| x + y)
            .collect();
        assert_eq!(jt_sum.multiplicities, combined);
    }
}
