//! Block decomposition of a finite-dimensional C*-algebra `A ⊆ M_d` into
//! full matrix algebras, certified by explicit matrix units.
//!
//! Central projections are spectral projections of a random self-adjoint
//! central element; minimal projections inside each block come the same
//! way from a compressed random element, and off-diagonal units from
//! normalized corners `e_1 x e_j`.

use crate::algebra::MatrixAlgebra;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, kernel_of_columns, op_norm, CMatrix, Subspace, C64, ZERO};
use crate::sampling::Sampler;

const ATTEMPTS: usize = 8;

/// `A ≅ ⊕_c M_{k_c}` with matrix units `units[c][i * k_c + j] = e^{(c)}_{ij}`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub blocks: Vec<usize>,
    pub units: Vec<Vec<CMatrix>>,
    pub unit: CMatrix,
}

impl Decomposition {
    /// E.g. `"M_2"` or `"M_1 + M_1"`.
    pub fn signature(&self) -> String {
        let mut b = self.blocks.clone();
        b.sort_unstable_by(|x, y| y.cmp(x));
        if b.is_empty() {
            return "0".into();
        }
        b.iter().map(|k| format!("M_{k}")).collect::<Vec<_>>().join(" + ")
    }
}

/// Spectral clusters of a Hermitian matrix above `floor`, as projections.
fn cluster_projections(h: &CMatrix, floor: f64, gap: f64) -> Result<Vec<CMatrix>> {
    let eig = herm_eig(h)?;
    let d = h.rows();
    let mut order: Vec<usize> = (0..d).filter(|&i| eig.values[i] > floor).collect();
    order.sort_by(|&a, &b| eig.values[a].total_cmp(&eig.values[b]));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match clusters.last_mut() {
            Some(c) if eig.values[i] - eig.values[*c.last().unwrap()] <= gap => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    Ok(clusters
        .into_iter()
        .map(|idx| {
            let mut p = CMatrix::zeros(d, d);
            for &k in &idx {
                let v = eig.vectors.col(k);
                for r in 0..d {
                    for c in 0..d {
                        p[(r, c)] += v[r] * v[c].conj();
                    }
                }
            }
            p
        })
        .collect())
}

fn rank_of_projection(p: &CMatrix) -> usize {
    p.trace().re.round() as usize
}

fn random_selfadjoint(alg: &MatrixAlgebra, rng: &mut Sampler) -> CMatrix {
    let x = alg.element(&rng.vector(alg.dim()));
    (&x + &x.adjoint()).scale_real(0.5)
}

/// Decompose and return the matrix units with a certificate of the
/// matrix-unit relations.
pub fn decompose(alg: &MatrixAlgebra, seed: u64, tol: f64) -> Result<(Decomposition, Certificate)> {
    let d = alg.ambient();
    let dim = alg.dim();
    let mut rng = Sampler::derived(seed, "structure");

    // unit: support projection of Σ a_i a_i*
    let mut s = CMatrix::zeros(d, d);
    for a in alg.basis().basis() {
        s += &a.matmul(&a.adjoint());
    }
    let smax = op_norm(&s)?;
    let unit = if dim == 0 {
        CMatrix::zeros(d, d)
    } else {
        let eig = herm_eig(&s)?;
        eig.functional_calculus(|v| if v > 1e-9 * smax { 1.0 } else { 0.0 })
    };

    // center in coordinates: c with Σ_i c_i (a_i a_j − a_j a_i) = 0 for all j
    let cols: Vec<Vec<C64>> = (0..dim)
        .map(|i| {
            let mut v = Vec::with_capacity(dim * dim);
            for j in 0..dim {
                let p = alg.basis_product(i, j);
                let q = alg.basis_product(j, i);
                v.extend(p.iter().zip(q).map(|(a, b)| a - b));
            }
            v
        })
        .collect();
    let center: Vec<CMatrix> = if dim == 0 {
        Vec::new()
    } else {
        kernel_of_columns(&cols)?
            .into_iter()
            .map(|c| alg.element(&c))
            .collect()
    };
    let zdim = center.len();

    let mut central = None;
    for _ in 0..ATTEMPTS {
        let mut h = CMatrix::zeros(d, d);
        for z in &center {
            let herm = (z + &z.adjoint()).scale_real(0.5);
            let skew = (z - &z.adjoint()).scale(C64::new(0.0, -0.5));
            h.axpy(C64::new(rng.real(), 0.0), &herm);
            h.axpy(C64::new(rng.real(), 0.0), &skew);
        }
        let l = 2.0 * op_norm(&h)? + 1.0;
        let shifted = &h + &unit.scale_real(l);
        let ps = cluster_projections(&shifted, l / 2.0, 1e-7 * (1.0 + l))?;
        if ps.len() == zdim {
            central = Some(ps);
            break;
        }
    }
    let central = central.ok_or_else(|| {
        Error::InvalidInput("could not separate the central projections".into())
    })?;

    let mut blocks = Vec::new();
    let mut units = Vec::new();
    for p in &central {
        let ap: Vec<CMatrix> = alg.basis().basis().map(|a| a.matmul(p)).collect();
        let bdim = Subspace::span(d, d, &ap)?.dim();
        let k = (bdim as f64).sqrt().round() as usize;
        if k * k != bdim {
            return Err(Error::InvalidInput(format!(
                "block of dimension {bdim} is not a full matrix algebra"
            )));
        }
        let mut minimal = None;
        for _ in 0..ATTEMPTS {
            let h = p.matmul(&random_selfadjoint(alg, &mut rng)).matmul(p);
            let l = 2.0 * op_norm(&h)? + 1.0;
            let shifted = &h + &p.scale_real(l);
            let es = cluster_projections(&shifted, l / 2.0, 1e-7 * (1.0 + l))?;
            let r0 = rank_of_projection(p) / k.max(1);
            if es.len() == k && es.iter().all(|e| rank_of_projection(e) == r0) {
                minimal = Some(es);
                break;
            }
        }
        let es = minimal.ok_or_else(|| {
            Error::InvalidInput("could not split a block into minimal projections".into())
        })?;
        // e_1j = e_1 x e_j / ‖·‖ for a random x
        let x = alg.element(&rng.vector(dim));
        let mut first_row = Vec::with_capacity(k);
        for e in &es {
            let c = es[0].matmul(&x).matmul(e);
            let n = op_norm(&c.matmul(&c.adjoint()))?.sqrt();
            if n <= 1e-12 {
                return Err(Error::InvalidInput("degenerate matrix-unit corner".into()));
            }
            first_row.push(c.scale_real(1.0 / n));
        }
        // e_11 from the corner itself, so that e_1j e_j1 = e_11 exactly
        first_row[0] = es[0].clone();
        let mut u = Vec::with_capacity(k * k);
        for i in 0..k {
            let ei1 = first_row[i].adjoint();
            for j in 0..k {
                u.push(ei1.matmul(&first_row[j]));
            }
        }
        blocks.push(k);
        units.push(u);
    }

    let dec = Decomposition { blocks, units, unit };
    let cert = certify(alg, &dec, tol)?;
    Ok((dec, cert))
}

/// Residuals of the matrix-unit relations, membership and bijectivity.
pub fn certify(alg: &MatrixAlgebra, dec: &Decomposition, tol: f64) -> Result<Certificate> {
    let mut cert = Certificate::new("structure");
    cert.anchor("matrix-unit-isomorphism");
    let d = alg.ambient();
    let mut all = Vec::new();
    for (c, &k) in dec.blocks.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                all.push((c, i, j, &dec.units[c][i * k + j]));
            }
        }
    }
    let mut membership = 0.0f64;
    let mut adjoint = 0.0f64;
    let mut relations = 0.0f64;
    let mut sum = CMatrix::zeros(d, d);
    for &(c, i, j, e) in &all {
        membership = membership.max(alg.membership_defect(e)?);
        let k = dec.blocks[c];
        adjoint = adjoint.max(e.adjoint().dist(&dec.units[c][j * k + i]));
        if i == j {
            sum += e;
        }
        for &(c2, i2, j2, f) in &all {
            let prod = e.matmul(f);
            let dist = if c == c2 && j == i2 {
                prod.dist(&dec.units[c][i * k + j2])
            } else {
                prod.frobenius()
            };
            relations = relations.max(dist);
        }
    }
    cert.check("units_in_algebra", membership, tol);
    cert.check("unit_adjoints", adjoint, tol);
    cert.check("unit_relations", relations, tol);
    cert.check("units_sum_to_identity", sum.dist(&dec.unit), tol);
    let count: usize = dec.blocks.iter().map(|k| k * k).sum();
    cert.require("dimension_count", count == alg.dim());
    cert.info("blocks", dec.blocks.clone());
    cert.info("signature", dec.signature());
    Ok(cert)
}

/// Coordinates of an element of `⊕_c M_{k_c}` pushed into `A`.
pub fn from_blocks(dec: &Decomposition, entries: &[Vec<C64>]) -> CMatrix {
    let d = dec.unit.rows();
    let mut out = CMatrix::zeros(d, d);
    for (c, block) in entries.iter().enumerate() {
        for (idx, &z) in block.iter().enumerate() {
            if z != ZERO {
                out.axpy(z, &dec.units[c][idx]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_matrix_algebra_is_one_block() {
        let alg = MatrixAlgebra::new(Subspace::full(2, 2)).unwrap();
        let (dec, cert) = decompose(&alg, 0, 1e-10).unwrap();
        assert_eq!(dec.blocks, vec![2]);
        assert!(cert.passed(), "{cert:?}");
        assert_eq!(dec.signature(), "M_2");
    }

    #[test]
    fn diagonal_algebra_splits_into_points() {
        let mats: Vec<CMatrix> = (0..3).map(|i| CMatrix::unit(3, 3, i, i)).collect();
        let alg = MatrixAlgebra::new(Subspace::span(3, 3, &mats).unwrap()).unwrap();
        let (dec, cert) = decompose(&alg, 1, 1e-10).unwrap();
        assert_eq!(dec.signature(), "M_1 + M_1 + M_1");
        assert!(cert.passed());
    }

    #[test]
    fn amplified_block_with_multiplicity() {
        // M_2 ⊗ I_2 ⊕ ℂ inside M_5
        let mut mats = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m = CMatrix::unit(2, 2, i, j).kron(&CMatrix::identity(2));
                let mut big = CMatrix::zeros(5, 5);
                for r in 0..4 {
                    for c in 0..4 {
                        big[(r, c)] = m[(r, c)];
                    }
                }
                m = big;
                mats.push(m);
            }
        }
        mats.push(CMatrix::unit(5, 5, 4, 4));
        let alg = MatrixAlgebra::new(Subspace::span(5, 5, &mats).unwrap()).unwrap();
        let (dec, cert) = decompose(&alg, 2, 1e-10).unwrap();
        assert_eq!(dec.signature(), "M_2 + M_1");
        assert!(cert.passed(), "{cert:?}");
    }
}
