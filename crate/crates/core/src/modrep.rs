//! Finite-dimensional modules as action-matrix tuples.
//!
//! A module is c square matrices satisfying the defining relations
//! X_i^{a_i} = 0 and X_i X_j = q_ij X_j X_i. Substructure extraction works on
//! echelonized column spans; quotients take the deterministic complement of
//! the pivot rows.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Span};
use crate::qalgebra::{Algebra, AlgebraAutomorphism, AlgebraElement};
use crate::scalars::Scalar;
use crate::seeds::Fnv;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ModuleRep {
    pub algebra: Arc<Algebra>,
    pub dim: usize,
    pub actions: Vec<Mat>,
}

#[derive(Debug, Clone)]
pub struct Submodule {
    /// Echelonized column span inside the parent's coordinate space.
    pub basis: Span,
}

impl Submodule {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Intertwiner between two modules; `matrix` is target.dim x source.dim.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: ModuleRep,
    pub target: ModuleRep,
    pub matrix: Mat,
}

impl ModuleMap {
    pub fn new(source: ModuleRep, target: ModuleRep, matrix: Mat) -> Self {
        assert_eq!(matrix.rows, target.dim);
        assert_eq!(matrix.cols, source.dim);
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn is_intertwiner(&self) -> bool {
        for i in 0..self.source.actions.len() {
            let lhs = self.target.actions[i].mul(&self.matrix);
            let rhs = self.matrix.mul(&self.source.actions[i]);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim
    }

    pub fn compose(&self, inner: &ModuleMap) -> ModuleMap {
        assert_eq!(inner.target.dim, self.source.dim);
        ModuleMap::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }
}

/// Validate the relations and wrap the matrices; violation reports carry a
/// witness column.
pub fn check_module(algebra: &Arc<Algebra>, actions: Vec<Mat>) -> Result<ModuleRep> {
    let c = algebra.config.c;
    assert_eq!(actions.len(), c, "need one action matrix per generator");
    let dim = actions.first().map_or(0, |m| m.rows);
    for m in &actions {
        if m.rows != dim || m.cols != dim {
            return Err(Error::DimensionMismatch(
                "action matrices must be square of equal size".into(),
            ));
        }
    }
    let f = algebra.field();
    for i in 0..c {
        let power = actions[i].pow(algebra.config.exponents[i] as u64);
        if !power.is_zero() {
            let j = (0..dim)
                .find(|&j| (0..dim).any(|r| power.at(r, j) != 0))
                .unwrap_or(0);
            let mut witness = vec![0; dim];
            if j < dim {
                witness[j] = 1;
            }
            return Err(Error::RelationViolated { index: i, witness });
        }
    }
    for i in 0..c {
        for j in (i + 1)..c {
            let lhs = actions[i].mul(&actions[j]);
            let rhs = actions[j].mul(&actions[i]).scale(algebra.config.commutation[i][j]);
            if lhs != rhs {
                let diff = lhs.sub(&rhs);
                let col = (0..dim)
                    .find(|&jj| (0..dim).any(|r| diff.at(r, jj) != 0))
                    .unwrap_or(0);
                let mut witness = vec![0; dim];
                if col < dim {
                    witness[col] = 1;
                }
                return Err(Error::CommutationViolated { i, j, witness });
            }
        }
    }
    assert_eq!(f.p(), algebra.field().p());
    Ok(ModuleRep {
        algebra: algebra.clone(),
        dim,
        actions,
    })
}

/// The unique simple module k: dimension 1, all generators act by zero.
pub fn simple_module(algebra: &Arc<Algebra>) -> ModuleRep {
    let f = algebra.field();
    ModuleRep {
        algebra: algebra.clone(),
        dim: 1,
        actions: vec![Mat::zeros(f, 1, 1); algebra.config.c],
    }
}

pub fn zero_module(algebra: &Arc<Algebra>) -> ModuleRep {
    let f = algebra.field();
    ModuleRep {
        algebra: algebra.clone(),
        dim: 0,
        actions: vec![Mat::zeros(f, 0, 0); algebra.config.c],
    }
}

impl Algebra {
    /// Left regular representation: X_i = left multiplication by x_i.
    pub fn regular_module(self: &Arc<Self>) -> ModuleRep {
        let f = self.field();
        let mut actions = Vec::with_capacity(self.config.c);
        for g in 0..self.config.c {
            let gen_idx = {
                let mut unit = vec![0u32; self.config.c];
                unit[g] = 1;
                self.basis_index(&unit).expect("generator in basis")
            };
            let mut x = Mat::zeros(f, self.dim, self.dim);
            for j in 0..self.dim {
                if let Some((s, k)) = self.structure[gen_idx][j] {
                    x.set(k, j, s);
                }
            }
            actions.push(x);
        }
        ModuleRep {
            algebra: self.clone(),
            dim: self.dim,
            actions,
        }
    }
}

/// Free module A^m with block-diagonal regular actions.
pub fn free_module(algebra: &Arc<Algebra>, m: usize) -> ModuleRep {
    let reg = algebra.regular_module();
    let f = algebra.field();
    let actions = (0..algebra.config.c)
        .map(|i| {
            let blocks: Vec<&Mat> = (0..m).map(|_| &reg.actions[i]).collect();
            if blocks.is_empty() {
                Mat::zeros(f, 0, 0)
            } else {
                Mat::block_diag(f, &blocks)
            }
        })
        .collect();
    ModuleRep {
        algebra: algebra.clone(),
        dim: algebra.dim * m,
        actions,
    }
}

impl ModuleRep {
    pub fn same_algebra(&self, other: &ModuleRep) -> bool {
        self.algebra.hash == other.algebra.hash
    }

    /// Matrix of the action of the algebra element `u`.
    pub fn action_of(&self, u: &AlgebraElement) -> Mat {
        let f = self.algebra.field();
        let mut out = Mat::zeros(f, self.dim, self.dim);
        for (bi, &coeff) in u.0.iter().enumerate() {
            if coeff != 0 {
                out = out.add(&self.action_of_basis(bi).scale(coeff));
            }
        }
        out
    }

    /// Matrix of the action of the `bi`-th basis monomial.
    pub fn action_of_basis(&self, bi: usize) -> Mat {
        let f = self.algebra.field();
        let exps = &self.algebra.basis[bi];
        let mut out = Mat::identity(f, self.dim);
        // x^e acts as X_1^{e_1} ... X_c^{e_c}
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                out = out.mul(&self.actions[i]);
            }
        }
        out
    }

    /// rad M = sum of the generator images (the algebra is local).
    pub fn radical(&self) -> Submodule {
        let mut span = Span::empty(self.algebra.field(), self.dim);
        for x in &self.actions {
            for j in 0..self.dim {
                span.insert(&x.col(j));
            }
        }
        Submodule { basis: span }
    }

    /// soc M = joint kernel of the generator actions.
    pub fn socle(&self) -> Submodule {
        let f = self.algebra.field();
        if self.dim == 0 {
            return Submodule {
                basis: Span::empty(f, 0),
            };
        }
        let stacked = Mat::vstack(&self.actions.iter().collect::<Vec<_>>());
        let ker = stacked.kernel();
        Submodule {
            basis: Span::from_cols(&ker),
        }
    }

    pub fn top_dim(&self) -> usize {
        self.dim - self.radical().dim()
    }

    /// Smallest submodule containing the given vectors (action closure).
    pub fn submodule_generated(&self, generators: &[Vec<Scalar>]) -> Submodule {
        let f = self.algebra.field();
        let mut span = Span::empty(f, self.dim);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for g in generators {
            if span.insert(g) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for x in &self.actions {
                let img = x.mul(&Mat::col_vec(f, &v)).col(0);
                if span.insert(&img) {
                    queue.push(img);
                }
            }
        }
        Submodule { basis: span }
    }

    pub fn is_invariant(&self, sub: &Submodule) -> bool {
        let b = sub.basis.basis_matrix();
        for x in &self.actions {
            let img = x.mul(&b);
            for j in 0..img.cols {
                if !sub.basis.contains(&img.col(j)) {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient by an invariant subspace, with the projection map.
    pub fn quotient(&self, sub: &Submodule) -> Result<(ModuleRep, ModuleMap)> {
        if !self.is_invariant(sub) {
            return Err(Error::NotInvariant);
        }
        let f = self.algebra.field();
        let comp = sub.basis.complement_rows();
        let qdim = comp.len();
        // projection: reduce mod the span, then restrict to complement rows
        let mut proj = Mat::zeros(f, qdim, self.dim);
        for j in 0..self.dim {
            let mut unit = vec![0; self.dim];
            unit[j] = 1;
            let coords = sub.basis.quotient_coords(&unit);
            for (r, &v) in coords.iter().enumerate() {
                proj.set(r, j, v);
            }
        }
        // embed complement coordinates back as standard basis vectors
        let mut emb = Mat::zeros(f, self.dim, qdim);
        for (k, &row) in comp.iter().enumerate() {
            emb.set(row, k, 1);
        }
        let actions: Vec<Mat> = self
            .actions
            .iter()
            .map(|x| proj.mul(&x.mul(&emb)))
            .collect();
        let q = ModuleRep {
            algebra: self.algebra.clone(),
            dim: qdim,
            actions,
        };
        let map = ModuleMap::new(self.clone(), q.clone(), proj);
        Ok((q, map))
    }

    /// The submodule as a module in its own right, with the inclusion map.
    pub fn restrict_to(&self, sub: &Submodule) -> (ModuleRep, ModuleMap) {
        let f = self.algebra.field();
        let b = sub.basis.basis_matrix();
        let actions: Vec<Mat> = self
            .actions
            .iter()
            .map(|x| {
                let img = x.mul(&b);
                let mut y = Mat::zeros(f, sub.dim(), sub.dim());
                for j in 0..img.cols {
                    let coords = sub
                        .basis
                        .coords(&img.col(j))
                        .expect("invariant subspace");
                    for (i, &v) in coords.iter().enumerate() {
                        y.set(i, j, v);
                    }
                }
                y
            })
            .collect();
        let m = ModuleRep {
            algebra: self.algebra.clone(),
            dim: sub.dim(),
            actions,
        };
        let incl = ModuleMap::new(m.clone(), self.clone(), b);
        (m, incl)
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> ModuleRep {
        assert!(self.same_algebra(other), "algebra mismatch in direct_sum");
        let f = self.algebra.field();
        let actions = (0..self.actions.len())
            .map(|i| Mat::block_diag(f, &[&self.actions[i], &other.actions[i]]))
            .collect();
        ModuleRep {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            actions,
        }
    }

    /// Twist by a diagonal automorphism: x_i acts through phi(x_i).
    pub fn twist(&self, phi: &AlgebraAutomorphism) -> ModuleRep {
        let actions = self
            .actions
            .iter()
            .enumerate()
            .map(|(i, x)| x.scale(phi.generator_scalars[i]))
            .collect();
        ModuleRep {
            algebra: self.algebra.clone(),
            dim: self.dim,
            actions,
        }
    }

    /// k-dual over the opposite algebra: transposed actions.
    pub fn dual(&self, opposite: &Arc<Algebra>) -> ModuleRep {
        ModuleRep {
            algebra: opposite.clone(),
            dim: self.dim,
            actions: self.actions.iter().map(|x| x.transpose()).collect(),
        }
    }

    /// Cheap iso-invariant fingerprint: dimension, sorted ranks of the
    /// generator actions and their pairwise products, socle and top sizes.
    pub fn canonical_key(&self) -> CanonicalKey {
        let mut ranks: Vec<usize> = self.actions.iter().map(|x| x.rank()).collect();
        for i in 0..self.actions.len() {
            for j in 0..self.actions.len() {
                ranks.push(self.actions[i].mul(&self.actions[j]).rank());
            }
        }
        ranks.sort_unstable();
        CanonicalKey {
            dim: self.dim,
            ranks,
            soc: self.socle().dim(),
            top: self.top_dim(),
        }
    }

    pub fn content_hash(&self) -> u64 {
        let mut h = Fnv::new();
        h.write_u64(self.algebra.hash);
        h.write_u64(self.dim as u64);
        for x in &self.actions {
            for &v in x.data() {
                h.write_u64(v);
            }
        }
        h.finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey {
    pub dim: usize,
    pub ranks: Vec<usize>,
    pub soc: usize,
    pub top: usize,
}

impl CanonicalKey {
    pub fn short_hash(&self) -> u64 {
        let mut h = Fnv::new();
        h.write_u64(self.dim as u64);
        for &r in &self.ranks {
            h.write_u64(r as u64);
        }
        h.write_u64(self.soc as u64);
        h.write_u64(self.top as u64);
        h.finish()
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    algebra: serde_json::Value,
    dim: usize,
    actions: Vec<Vec<Vec<u64>>>,
}

/// Module JSON: `{"algebra": <config>, "dim": n, "actions": [[[int]]]}`,
/// row-major entries in `[0, p)`.
pub fn module_to_json(m: &ModuleRep) -> String {
    let actions = m
        .actions
        .iter()
        .map(|x| (0..x.rows).map(|i| x.row(i).to_vec()).collect())
        .collect();
    let j = ModuleJson {
        algebra: serde_json::from_str(&m.algebra.config.to_json()).expect("valid json"),
        dim: m.dim,
        actions,
    };
    serde_json::to_string(&j).expect("module serialization cannot fail")
}

pub fn module_from_json(s: &str) -> Result<ModuleRep> {
    let j: ModuleJson = serde_json::from_str(s)?;
    let cfg = crate::qalgebra::AlgebraConfig::from_json(&j.algebra.to_string())?;
    let algebra = crate::qalgebra::build_algebra(cfg)?;
    let f = algebra.field();
    let actions = j
        .actions
        .into_iter()
        .map(|rows| {
            let n = rows.len();
            Mat::from_vec(f, n, n, rows.into_iter().flatten().collect())
        })
        .collect();
    check_module(&algebra, actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::{build_algebra, AlgebraConfig};
    use crate::scalars::make_field;

    fn exterior2() -> Arc<Algebra> {
        let f = make_field(5).unwrap();
        build_algebra(AlgebraConfig::homogeneous(f, 2, 2, 4).unwrap()).unwrap()
    }

    #[test]
    fn regular_module_relations() {
        let a = exterior2();
        let reg = a.regular_module();
        assert_eq!(reg.dim, 4);
        let checked = check_module(&a, reg.actions.clone());
        assert!(checked.is_ok());
        // X_i^{a_i} = 0 and X_1 X_2 = q X_2 X_1 hold by check_module
        let f = make_field(7).unwrap();
        let a33 = build_algebra(AlgebraConfig::homogeneous(f, 3, 2, 2).unwrap()).unwrap();
        let reg33 = a33.regular_module();
        assert!(check_module(&a33, reg33.actions.clone()).is_ok());
    }

    #[test]
    fn zero_dim_module_valid() {
        let a = exterior2();
        let z = zero_module(&a);
        assert!(check_module(&a, z.actions).is_ok());
    }

    #[test]
    fn nontrivial_accept_case() {
        // X1 = X2 = [[0,1],[0,0]] satisfies all relations at a=c=2
        let a = exterior2();
        let f = a.field();
        let n = Mat::from_rows(f, vec![vec![0, 1], vec![0, 0]]);
        let m = check_module(&a, vec![n.clone(), n]).unwrap();
        assert_eq!(m.dim, 2);
    }

    #[test]
    fn reject_bad_module() {
        let a = exterior2();
        let f = a.field();
        // X1 not square-zero
        let x1 = Mat::from_rows(f, vec![vec![0, 1], vec![1, 0]]);
        let x2 = Mat::zeros(f, 2, 2);
        assert!(matches!(
            check_module(&a, vec![x1, x2]),
            Err(Error::RelationViolated { index: 0, .. })
        ));
        // commutation violated: X1 X2 != q X2 X1 = -X2 X1
        let x1 = Mat::from_rows(f, vec![vec![0, 1], vec![0, 0]]);
        let x2 = Mat::identity(f, 2);
        assert!(check_module(&a, vec![x1, x2]).is_err());
    }

    #[test]
    fn radical_socle_regular() {
        let a = exterior2();
        let reg = a.regular_module();
        assert_eq!(reg.radical().dim(), 3);
        assert_eq!(reg.socle().dim(), 1);
        assert_eq!(reg.top_dim(), 1);

        let k = simple_module(&a);
        assert_eq!(k.radical().dim(), 0);
        assert_eq!(k.socle().dim(), 1);
    }

    #[test]
    fn quotients() {
        let a = exterior2();
        let reg = a.regular_module();
        let (q, proj) = reg.quotient(&reg.socle()).unwrap();
        assert_eq!(q.dim, 3);
        assert!(proj.is_intertwiner());
        assert!(proj.is_surjective());

        let (rad, incl) = reg.restrict_to(&reg.radical());
        assert!(incl.is_intertwiner());
        let (rs, projrs) = rad.quotient(&rad.socle()).unwrap();
        // soc(rad A) = span{x1 x2} at a=c=2, so rad/soc is 2-dimensional
        assert_eq!(rs.dim, 2);
        assert!(projrs.is_intertwiner());
    }

    #[test]
    fn rad_soc_a3() {
        let f = make_field(7).unwrap();
        let a = build_algebra(AlgebraConfig::homogeneous(f, 3, 2, 2).unwrap()).unwrap();
        let reg = a.regular_module();
        let (rad, _) = reg.restrict_to(&reg.radical());
        assert_eq!(rad.dim, 8);
        let (rs, _) = rad.quotient(&rad.socle()).unwrap();
        assert_eq!(rs.dim, 7);
        assert!(check_module(&a, rs.actions.clone()).is_ok());
    }

    #[test]
    fn direct_sum_dims() {
        let a = exterior2();
        let k = simple_module(&a);
        let kk = k.direct_sum(&k);
        assert_eq!(kk.dim, 2);
        let reg = a.regular_module();
        assert_eq!(reg.direct_sum(&kk).dim, 6);
    }

    #[test]
    fn twist_involution() {
        let a = exterior2();
        let reg = a.regular_module();
        let nu = a.nakayama.clone();
        let tw = reg.twist(&nu);
        // c = 2 exterior: X'_i = -X_i
        for i in 0..2 {
            assert_eq!(tw.actions[i], reg.actions[i].scale(4));
        }
        let back = tw.twist(&nu);
        assert_eq!(back.actions, reg.actions);
        // twisting k does nothing
        let k = simple_module(&a);
        assert_eq!(k.twist(&nu).actions, k.actions);
    }

    #[test]
    fn duals() {
        let a = exterior2();
        let op = a.opposite().unwrap();
        let k = simple_module(&a);
        let dk = k.dual(&op);
        assert_eq!(dk.dim, 1);
        assert!(check_module(&op, dk.actions.clone()).is_ok());
        let reg = a.regular_module();
        let dd = reg.dual(&op).dual(&a);
        assert_eq!(dd.actions, reg.actions);
        // soc and top exchange under duality
        let (rad, _) = reg.restrict_to(&reg.radical());
        let drad = rad.dual(&op);
        assert!(check_module(&op, drad.actions.clone()).is_ok());
        assert_eq!(rad.socle().dim(), drad.top_dim());
        assert_eq!(rad.top_dim(), drad.socle().dim());
    }

    #[test]
    fn submodule_closure() {
        let a = exterior2();
        let reg = a.regular_module();
        // the submodule generated by x1 is span{x1, x1x2}
        let mut gen = vec![0; 4];
        gen[1] = 1;
        let sub = reg.submodule_generated(&[gen]);
        assert_eq!(sub.dim(), 2);
        assert!(reg.is_invariant(&sub));
    }

    #[test]
    fn json_roundtrip() {
        let a = exterior2();
        let reg = a.regular_module();
        let s = module_to_json(&reg);
        let back = module_from_json(&s).unwrap();
        assert_eq!(back.dim, reg.dim);
        assert_eq!(back.actions, reg.actions);
        assert_eq!(module_to_json(&back), s);
    }
}
