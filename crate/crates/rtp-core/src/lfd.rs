//! Representation spaces, the infinitesimal action and Saito's criterion.

use crate::poly::{poly_det_bareiss, poly_is_reduced, LinearFormMatrix, PolyError, SparsePolynomial};
use crate::quiver::{
    rep_dimension, reduce_to_core_seeded, shrink_representation, tits_form, DimensionVector,
    DynkinType, Quiver, QuiverError,
};
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Largest representation space certified by a direct determinant.
pub const DEFAULT_DIRECT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfdError {
    #[error("column count mismatch: {rows} coordinates but {cols} generators (dimension vector is not a root)")]
    ColumnCountMismatch { rows: usize, cols: usize },
    #[error("representation space has {n} coordinates, above the direct cap {cap}; use compositional mode")]
    CapExceeded { n: usize, cap: usize },
    #[error("dimension vector is not a root: Tits form is {0}")]
    NotARoot(i64),
    #[error("core uncertifiable at cap {cap}: piece still has {n} coordinates")]
    CoreUncertifiable { n: usize, cap: usize },
    #[error("no generator e_{index}{index} at vertex {vertex}")]
    BadGenerator { vertex: usize, index: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// One matrix entry of one arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coordinate {
    /// Canonical edge index of the arrow.
    pub arrow: usize,
    pub row: usize,
    pub col: usize,
}

/// Rep(Q, a): one a_h x a_t matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSpace {
    quiver: Quiver,
    dims: DimensionVector,
    coordinates: Vec<Coordinate>,
    /// First coordinate index of each arrow.
    offsets: Vec<usize>,
}

impl RepSpace {
    pub fn new(quiver: &Quiver, dims: &DimensionVector) -> Result<Self, LfdError> {
        if dims.len() != quiver.len() {
            return Err(QuiverError::LengthMismatch {
                expected: quiver.len(),
                got: dims.len(),
            }
            .into());
        }
        let mut coordinates = Vec::new();
        let mut offsets = Vec::new();
        for (e, &(t, h)) in quiver.arrows().iter().enumerate() {
            offsets.push(coordinates.len());
            for row in 0..dims.get(h) as usize {
                for col in 0..dims.get(t) as usize {
                    coordinates.push(Coordinate { arrow: e, row, col });
                }
            }
        }
        Ok(RepSpace {
            quiver: quiver.clone(),
            dims: dims.clone(),
            coordinates,
            offsets,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coordinates
    }

    /// Number of coordinates N.
    pub fn n(&self) -> usize {
        self.coordinates.len()
    }

    fn var(&self, arrow: usize, row: usize, col: usize) -> usize {
        let (t, _) = self.quiver.arrows()[arrow];
        self.offsets[arrow] + row * self.dims.get(t) as usize + col
    }

    /// Elementary generators (vertex, i, j) in vertex order, row-major.
    fn generators(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.quiver.len() {
            let d = self.dims.get(v) as usize;
            for i in 0..d {
                for j in 0..d {
                    out.push((v, i, j));
                }
            }
        }
        out
    }

    /// Vector field of e_ij at vertex v as one column of linear forms.
    fn field(&self, v: usize, i: usize, j: usize) -> Vec<SparsePolynomial> {
        let n = self.n();
        let mut col = vec![SparsePolynomial::zero(n); n];
        let one = BigInt::from(1);
        let minus = BigInt::from(-1);
        for (e, &(t, h)) in self.quiver.arrows().iter().enumerate() {
            let (at, ah) = (self.dims.get(t) as usize, self.dims.get(h) as usize);
            if h == v {
                // e_ij . A: row i receives row j.
                for c in 0..at {
                    let target = self.var(e, i, c);
                    let x = SparsePolynomial::monomial(unit_exps(n, self.var(e, j, c)), one.clone());
                    col[target] = &col[target] + &x;
                }
            }
            if t == v {
                // -A . e_ij: column j receives minus column i.
                for r in 0..ah {
                    let target = self.var(e, r, j);
                    let x = SparsePolynomial::monomial(unit_exps(n, self.var(e, r, i)), minus.clone());
                    col[target] = &col[target] + &x;
                }
            }
        }
        col
    }
}

fn unit_exps(n: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// The N x N matrix of induced vector fields, with e_00 at the highest-id
/// vertex of positive dimension dropped.
pub fn infinitesimal_action_matrix(r: &RepSpace) -> Result<LinearFormMatrix, LfdError> {
    let v = (0..r.quiver.len()).rev().find(|&v| r.dims.get(v) > 0);
    match v {
        Some(v) => action_matrix_dropping(r, v, 0),
        None => Ok(LinearFormMatrix::new(Vec::new())?),
    }
}

/// Same, dropping the diagonal generator e_kk at vertex `v` instead.
pub fn action_matrix_dropping(r: &RepSpace, v: usize, k: usize) -> Result<LinearFormMatrix, LfdError> {
    if v >= r.quiver.len() || k >= r.dims.get(v) as usize {
        return Err(LfdError::BadGenerator { vertex: v, index: k });
    }
    let gens: Vec<_> = r
        .generators()
        .into_iter()
        .filter(|&g| g != (v, k, k))
        .collect();
    let n = r.n();
    if gens.len() != n {
        return Err(LfdError::ColumnCountMismatch {
            rows: n,
            cols: gens.len(),
        });
    }
    let cols: Vec<Vec<SparsePolynomial>> = gens.iter().map(|&(v, i, j)| r.field(v, i, j)).collect();
    let rows: Vec<Vec<SparsePolynomial>> = (0..n)
        .map(|row| cols.iter().map(|c| c[row].clone()).collect())
        .collect();
    Ok(LinearFormMatrix::new(rows)?)
}

/// det of the action matrix; homogeneous of degree N or zero.
pub fn discriminant(q: &Quiver, a: &DimensionVector, cap: usize) -> Result<SparsePolynomial, LfdError> {
    let t = tits_form(q, a);
    let r = RepSpace::new(q, a)?;
    if t != 1 {
        return Err(LfdError::ColumnCountMismatch {
            rows: r.n(),
            cols: (a.as_slice().iter().map(|d| d * d).sum::<i64>() - 1).max(0) as usize,
        });
    }
    if r.n() > cap {
        return Err(LfdError::CapExceeded { n: r.n(), cap });
    }
    let m = infinitesimal_action_matrix(&r)?;
    Ok(poly_det_bareiss(m.entries(), cap.max(1))?.widen(r.n()))
}

/// Nonzero, homogeneous of degree `n` and reduced.
pub fn saito_check(p: &SparsePolynomial, n: usize) -> bool {
    if p.is_zero() || !p.is_homogeneous() || p.total_degree() != Some(n as u32) {
        return false;
    }
    poly_is_reduced(p).unwrap_or(false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CertifyMode {
    Direct,
    Compositional,
    #[default]
    Auto,
}

impl std::str::FromStr for CertifyMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(CertifyMode::Direct),
            "compositional" => Ok(CertifyMode::Compositional),
            "auto" => Ok(CertifyMode::Auto),
            _ => Err(format!("unknown mode `{s}` (direct|compositional|auto)")),
        }
    }
}

/// Certificate for one Dynkin piece of the core.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceCertificate {
    pub vertices: Vec<usize>,
    pub dynkin: Option<DynkinType>,
    pub dims: Vec<i64>,
    /// Dims after castling the piece below the cap.
    pub certified_dims: Vec<i64>,
    pub castling_steps: usize,
    pub n: usize,
    pub discriminant: String,
    pub verdict: bool,
}

/// Split-off factors plus certified core pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Composition {
    pub reduction_steps: usize,
    pub split_off_count: usize,
    pub split_off_edges: Vec<usize>,
    pub split_off_distinct: bool,
    pub pieces: Vec<PieceCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LfdCertificate {
    pub mode: CertifyMode,
    pub degree: usize,
    pub verdict: bool,
    /// Canonical string of det in direct mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition: Option<Composition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    pub mode: CertifyMode,
    pub cap: usize,
    /// Reflection vertices replayed before the default reduction.
    pub seed: Vec<usize>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            mode: CertifyMode::Auto,
            cap: DEFAULT_DIRECT_CAP,
            seed: Vec::new(),
        }
    }
}

fn certify_direct(q: &Quiver, a: &DimensionVector, cap: usize) -> Result<LfdCertificate, LfdError> {
    let n = rep_dimension(q, a) as usize;
    let det = discriminant(q, a, cap)?;
    let verdict = saito_check(&det, n);
    let diagnostic = if det.is_zero() {
        Some("fields do not span".to_string())
    } else if !verdict {
        Some("determinant is not a reduced equation of degree N".to_string())
    } else {
        None
    };
    Ok(LfdCertificate {
        mode: CertifyMode::Direct,
        degree: n,
        verdict,
        discriminant: Some(det.to_string()),
        composition: None,
        diagnostic,
    })
}

fn certify_compositional(
    q: &Quiver,
    a: &DimensionVector,
    opts: &CertifyOptions,
) -> Result<LfdCertificate, LfdError> {
    let n = rep_dimension(q, a) as usize;
    let trail = reduce_to_core_seeded(q, a, &opts.seed)?;
    let distinct = trail.split_off_edges.iter().collect::<BTreeSet<_>>().len() == trail.split_off_edges.len();
    let mut pieces = Vec::new();
    for piece in &trail.core {
        let sub = trail.final_quiver.induced(&piece.vertices)?;
        let dims = DimensionVector::new(piece.dims.clone())?;
        let (sq, sd, steps) = if rep_dimension(&sub, &dims) as usize > opts.cap {
            shrink_representation(&sub, &dims, opts.cap as i64)?
        } else {
            (sub, dims, Vec::new())
        };
        let pn = rep_dimension(&sq, &sd) as usize;
        if pn > opts.cap {
            return Err(LfdError::CoreUncertifiable { n: pn, cap: opts.cap });
        }
        let cert = certify_direct(&sq, &sd, opts.cap)?;
        pieces.push(PieceCertificate {
            vertices: piece.vertices.clone(),
            dynkin: piece.dynkin,
            dims: piece.dims.clone(),
            certified_dims: sd.as_slice().to_vec(),
            castling_steps: steps.len(),
            n: pn,
            discriminant: cert.discriminant.unwrap_or_default(),
            verdict: cert.verdict,
        });
    }
    let verdict = trail.is_complete() && distinct && pieces.iter().all(|p| p.verdict);
    let diagnostic = trail.diagnostic.clone().or_else(|| {
        (!distinct).then(|| "split-off coordinates are not distinct".to_string())
    });
    Ok(LfdCertificate {
        mode: CertifyMode::Compositional,
        degree: n,
        verdict,
        discriminant: None,
        composition: Some(Composition {
            reduction_steps: trail.steps.len(),
            split_off_count: trail.split_off_count,
            split_off_edges: trail.split_off_edges,
            split_off_distinct: distinct,
            pieces,
        }),
        diagnostic,
    })
}

pub fn certify_lfd(q: &Quiver, a: &DimensionVector, mode: CertifyMode) -> Result<LfdCertificate, LfdError> {
    certify_lfd_with(
        q,
        a,
        &CertifyOptions {
            mode,
            ..CertifyOptions::default()
        },
    )
}

/// Direct: det and Saito's criterion. Compositional: reduce to a Dynkin core,
/// castle large pieces below the cap and certify each piece directly.
pub fn certify_lfd_with(
    q: &Quiver,
    a: &DimensionVector,
    opts: &CertifyOptions,
) -> Result<LfdCertificate, LfdError> {
    let t = tits_form(q, a);
    if t != 1 {
        return Err(LfdError::NotARoot(t));
    }
    let n = rep_dimension(q, a) as usize;
    match opts.mode {
        CertifyMode::Direct => certify_direct(q, a, opts.cap),
        CertifyMode::Compositional => certify_compositional(q, a, opts),
        CertifyMode::Auto if n <= opts.cap && opts.seed.is_empty() => certify_direct(q, a, opts.cap),
        CertifyMode::Auto => certify_compositional(q, a, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{catalog_tree, Family, WeightedTree};

    fn dims(v: &[i64]) -> DimensionVector {
        DimensionVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn a2_single_coordinate() {
        let q = Quiver::new(catalog_tree(Family::A, &[2]).unwrap(), &[(0, 1)]).unwrap();
        let r = RepSpace::new(&q, &dims(&[1, 1])).unwrap();
        let m = infinitesimal_action_matrix(&r).unwrap();
        assert_eq!(m.get(0, 0).to_string(), "-x0");
        let d = discriminant(&q, &dims(&[1, 1]), 12).unwrap();
        assert!(saito_check(&d, 1));
    }

    #[test]
    fn d4_discriminant() {
        let t = WeightedTree::new(vec![2; 4], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let q = Quiver::new(t, &[(1, 0), (2, 0), (3, 0)]).unwrap();
        let d = discriminant(&q, &dims(&[2, 1, 1, 1]), 12).unwrap();
        assert_eq!(d.total_degree(), Some(6));
        assert!(saito_check(&d, 6));
    }

    #[test]
    fn saito_examples() {
        let p: SparsePolynomial = "x0*x1*x2".parse().unwrap();
        assert!(saito_check(&p, 3));
        let p: SparsePolynomial = "x0^2*x1".parse().unwrap();
        assert!(!saito_check(&p, 3));
    }

    #[test]
    fn non_root_rejected() {
        let q = Quiver::new(catalog_tree(Family::A, &[2]).unwrap(), &[(0, 1)]).unwrap();
        assert!(matches!(
            discriminant(&q, &dims(&[2, 1]), 12),
            Err(LfdError::ColumnCountMismatch { .. })
        ));
    }

    #[test]
    fn dropped_generator_only_rescales() {
        let t = WeightedTree::new(vec![2; 4], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let q = Quiver::new(t, &[(1, 0), (0, 2), (3, 0)]).unwrap();
        let a = dims(&[2, 1, 1, 1]);
        let r = RepSpace::new(&q, &a).unwrap();
        let base = discriminant(&q, &a, 12).unwrap().primitive_part();
        for (v, k) in [(0, 0), (0, 1), (1, 0), (2, 0)] {
            let m = action_matrix_dropping(&r, v, k).unwrap();
            let d = m.determinant(12).unwrap().widen(r.n()).primitive_part();
            assert!(d == base || d == -&base, "dropping e_{k}{k} at {v}");
        }
        assert!(action_matrix_dropping(&r, 1, 1).is_err());
    }
}
