//! Finite groups given by Cayley tables, the left regular representation,
//! scalar convolution, and Pontryagin duals of abelian groups.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ONE, ZERO};

/// A finite group on labels `0..order`, with `0` the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    name: String,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    modular: Vec<f64>,
}

impl FiniteGroup {
    /// Validate a multiplication table. If the identity is not label 0 the
    /// labels `0` and `e` are swapped so that it is.
    pub fn from_cayley(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty Cayley table".into()));
        }
        for (s, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {s} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInput(format!(
                    "entry {bad} in row {s} is out of range"
                )));
            }
        }
        latin_check(&table)?;
        let e = (0..n)
            .find(|&e| (0..n).all(|t| table[e][t] == t && table[t][e] == t))
            .ok_or(Error::NoIdentity)?;
        let table = if e == 0 { table } else { relabel_swap(&table, 0, e) };
        let mut inverse = vec![usize::MAX; n];
        for t in 0..n {
            match (0..n).find(|&u| table[t][u] == 0 && table[u][t] == 0) {
                Some(u) => inverse[t] = u,
                None => return Err(Error::NoInverse(t)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            cayley: table,
            inverse,
            modular: vec![1.0; n],
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.cayley[s][t]
    }

    pub fn inv(&self, t: usize) -> usize {
        self.inverse[t]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    /// Modular function; identically 1 on a finite group.
    pub fn modular(&self, t: usize) -> f64 {
        self.modular[t]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|s| (0..n).all(|t| self.cayley[s][t] == self.cayley[t][s]))
    }

    pub fn element_order(&self, t: usize) -> usize {
        let mut k = 1;
        let mut x = t;
        while x != 0 {
            x = self.mul(x, t);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|t| self.element_order(t))
            .fold(1, lcm)
    }

    /// `λ_t`, the permutation matrix with `λ_t δ_x = δ_{tx}`.
    pub fn lambda(&self, t: usize) -> CMatrix {
        let n = self.order();
        let mut m = CMatrix::zeros(n, n);
        for x in 0..n {
            m[(self.mul(t, x), x)] = ONE;
        }
        m
    }

    pub fn left_regular(&self) -> Vec<CMatrix> {
        self.elements().map(|t| self.lambda(t)).collect()
    }

    /// `λ(f) = Σ_t f(t) λ_t`
    pub fn lambda_of(&self, f: &[C64]) -> CMatrix {
        let n = self.order();
        assert_eq!(f.len(), n, "function length must equal the group order");
        let mut m = CMatrix::zeros(n, n);
        for x in 0..n {
            for t in 0..n {
                m[(self.mul(t, x), x)] += f[t];
            }
        }
        m
    }

    /// Left cosets `xH` of a subgroup, ordered by smallest representative.
    pub fn left_cosets(&self, subgroup: &[usize]) -> Result<Vec<Vec<usize>>> {
        self.check_subgroup(subgroup)?;
        let mut seen = vec![false; self.order()];
        let mut cosets = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let mut c: Vec<usize> = subgroup.iter().map(|&h| self.mul(x, h)).collect();
            c.sort_unstable();
            for &y in &c {
                seen[y] = true;
            }
            cosets.push(c);
        }
        Ok(cosets)
    }

    fn check_subgroup(&self, h: &[usize]) -> Result<()> {
        let n = self.order();
        let mut member = vec![false; n];
        for &x in h {
            if x >= n {
                return Err(Error::BadParameter(format!("element {x} out of range")));
            }
            member[x] = true;
        }
        if !member[0] {
            return Err(Error::BadParameter("subgroup must contain the identity".into()));
        }
        for &a in h {
            for &b in h {
                if !member[self.mul(a, self.inv(b))] {
                    return Err(Error::BadParameter(format!(
                        "subset is not a subgroup: {a}·{b}⁻¹ escapes it"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn latin_check(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    for (s, row) in table.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            if seen[v] {
                return Err(Error::NotLatinSquare(format!("row {s} repeats {v}")));
            }
            seen[v] = true;
        }
    }
    for t in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            let v = row[t];
            if seen[v] {
                return Err(Error::NotLatinSquare(format!("column {t} repeats {v}")));
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn relabel_swap(table: &[Vec<usize>], a: usize, b: usize) -> Vec<Vec<usize>> {
    let sw = |x: usize| {
        if x == a {
            b
        } else if x == b {
            a
        } else {
            x
        }
    };
    let n = table.len();
    (0..n)
        .map(|s| (0..n).map(|t| sw(table[sw(s)][sw(t)])).collect())
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

// ---------------------------------------------------------------------------
// Builtin groups

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::BadParameter("cyclic group order must be at least 1".into()));
    }
    let table = (0..n).map(|s| (0..n).map(|t| (s + t) % n).collect()).collect();
    FiniteGroup::from_cayley(format!("C{n}"), table)
}

/// Direct product; `(g, h)` has label `g·|H| + h`.
pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (m, k) = (g.order(), h.order());
    let table = (0..m * k)
        .map(|s| {
            (0..m * k)
                .map(|t| g.mul(s / k, t / k) * k + h.mul(s % k, t % k))
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley(format!("{}x{}", g.name(), h.name()), table)
}

/// Dihedral group of order `2n`; `r^a s^f` has label `a + n·f`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::BadParameter("dihedral parameter must be at least 1".into()));
    }
    let table = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let (a, f) = (x % n, x / n);
                    let (b, g) = (y % n, y / n);
                    let rot = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                    rot + n * ((f + g) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley(format!("D{n}"), table)
}

/// Permutations of {0,1,2} in lexicographic order of their images.
pub fn symmetric3() -> Result<FiniteGroup> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
    // (p·q)(i) = p(q(i))
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley("S3", table)
}

/// Quaternion group; labels `1, −1, i, −i, j, −j, k, −k`.
pub fn quaternion8() -> Result<FiniteGroup> {
    // unit u ∈ {1,i,j,k} as 0..4; product of units (sign, unit)
    fn unit_mul(a: usize, b: usize) -> (bool, usize) {
        const T: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        T[a][b]
    }
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (neg, u) = unit_mul(x / 2, y / 2);
                    let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                    2 * u + usize::from(sign)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley("Q8", table)
}

/// Parse a builtin name: `trivial`, `c<n>`, `v4`, `d<n>`, `s3`, `q8`.
pub fn builtin(name: &str) -> Result<FiniteGroup> {
    let lower = name.to_ascii_lowercase();
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::BadParameter(format!("unknown group '{name}'")))
    };
    match lower.as_str() {
        "trivial" => cyclic(1),
        "v4" | "klein" => {
            let c2 = cyclic(2)?;
            let mut g = product(&c2, &c2)?;
            g.name = "V4".into();
            Ok(g)
        }
        "s3" => symmetric3(),
        "q8" => quaternion8(),
        _ if lower.starts_with('c') => cyclic(num(&lower[1..])?),
        _ if lower.starts_with('d') => dihedral(num(&lower[1..])?),
        _ => Err(Error::BadParameter(format!("unknown group '{name}'"))),
    }
}

// ---------------------------------------------------------------------------
// Scalar functions on G (counting measure)

/// `(f ∗ g)(t) = Σ_s f(s) g(s⁻¹t)`
pub fn convolve_scalar(g: &FiniteGroup, f: &[C64], h: &[C64]) -> Vec<C64> {
    let n = g.order();
    let mut out = vec![ZERO; n];
    for s in 0..n {
        if f[s] == ZERO {
            continue;
        }
        for r in 0..n {
            // t = s·r, so s⁻¹t = r
            out[g.mul(s, r)] += f[s] * h[r];
        }
    }
    out
}

/// `f*(t) = Δ(t)⁻¹ conj(f(t⁻¹))`
pub fn involute_scalar(g: &FiniteGroup, f: &[C64]) -> Vec<C64> {
    g.elements()
        .map(|t| f[g.inv(t)].conj() / g.modular(t))
        .collect()
}

/// `(V_t h)(s) = h(st)`
pub fn right_translate(g: &FiniteGroup, h: &[C64], t: usize) -> Vec<C64> {
    g.elements().map(|s| h[g.mul(s, t)]).collect()
}

pub fn delta_function(g: &FiniteGroup, t: usize) -> Vec<C64> {
    let mut f = vec![ZERO; g.order()];
    f[t] = ONE;
    f
}

// ---------------------------------------------------------------------------
// Pontryagin dual

/// Character group of a finite abelian group.
#[derive(Debug, Clone)]
pub struct DualGroup {
    base: FiniteGroup,
    factors: Vec<usize>,
    /// `coords[t][k]`: component of `t` in the `k`-th invariant factor.
    coords: Vec<Vec<usize>>,
    /// `characters[x][t] = ⟨x, t⟩`
    characters: Vec<Vec<C64>>,
    group: FiniteGroup,
}

impl DualGroup {
    pub fn new(base: &FiniteGroup) -> Result<Self> {
        if !base.is_abelian() {
            return Err(Error::NotAbelian(base.name().to_string()));
        }
        let (factors, coords) = invariant_factors(base);
        let exp = factors.iter().copied().fold(1, lcm);
        // Characters indexed lexicographically by tuples m ∈ ∏ Z/d_k.
        let n = base.order();
        let tuples: Vec<Vec<usize>> = (0..n)
            .map(|mut x| {
                let mut m = vec![0; factors.len()];
                for k in (0..factors.len()).rev() {
                    m[k] = x % factors[k];
                    x /= factors[k];
                }
                m
            })
            .collect();
        let characters = tuples
            .iter()
            .map(|m| {
                (0..n)
                    .map(|t| {
                        let r: usize = (0..factors.len())
                            .map(|k| m[k] * coords[t][k] * (exp / factors[k]))
                            .sum();
                        root_of_unity(r % exp, exp)
                    })
                    .collect()
            })
            .collect();
        let index_of = |m: &[usize]| {
            m.iter()
                .zip(&factors)
                .fold(0, |acc, (&mk, &dk)| acc * dk + mk)
        };
        let table = tuples
            .iter()
            .map(|a| {
                tuples
                    .iter()
                    .map(|b| {
                        let sum: Vec<usize> = (0..factors.len())
                            .map(|k| (a[k] + b[k]) % factors[k])
                            .collect();
                        index_of(&sum)
                    })
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_cayley(format!("dual({})", base.name()), table)?;
        Ok(DualGroup {
            base: base.clone(),
            factors,
            coords,
            characters,
            group,
        })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    /// The character group itself, under pointwise multiplication.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.characters.len()
    }

    pub fn invariant_factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn element_coords(&self, t: usize) -> &[usize] {
        &self.coords[t]
    }

    /// `⟨x, t⟩`
    pub fn pairing(&self, x: usize, t: usize) -> C64 {
        self.characters[x][t]
    }

    pub fn characters(&self) -> &[Vec<C64>] {
        &self.characters
    }

    /// Largest deviation from the orthogonality relations.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.order();
        let mut worst = 0.0f64;
        for x in 0..n {
            for y in 0..n {
                let s: C64 = (0..n)
                    .map(|t| self.characters[x][t] * self.characters[y][t].conj())
                    .sum::<C64>()
                    / n as f64;
                let expect = if x == y { ONE } else { ZERO };
                worst = worst.max((s - expect).norm());
            }
        }
        worst
    }

    /// Largest deviation of a row from being a homomorphism into the circle.
    pub fn homomorphism_defect(&self) -> f64 {
        let g = &self.base;
        let mut worst = 0.0f64;
        for row in &self.characters {
            for s in g.elements() {
                worst = worst.max((row[s].norm() - 1.0).abs());
                for t in g.elements() {
                    worst = worst.max((row[g.mul(s, t)] - row[s] * row[t]).norm());
                }
            }
        }
        worst
    }
}

pub fn dual_group(g: &FiniteGroup) -> Result<DualGroup> {
    DualGroup::new(g)
}

/// `exp(2πi r / n)`, exact on quarter turns.
fn root_of_unity(r: usize, n: usize) -> C64 {
    if (4 * r).is_multiple_of(n) {
        return match (4 * r / n) % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    let theta = 2.0 * PI * r as f64 / n as f64;
    C64::new(theta.cos(), theta.sin())
}

/// Invariant factors `d_1 | d_2 | …` (all > 1) of an abelian group and the
/// coordinates of each element, from the Smith normal form of the relation
/// matrix with rows `e_g + e_h − e_{gh}`.
fn invariant_factors(g: &FiniteGroup) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.order();
    let mut rel: Vec<Vec<i128>> = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut row = vec![0i128; n];
            row[a] += 1;
            row[b] += 1;
            row[g.mul(a, b)] -= 1;
            if row.iter().any(|&v| v != 0) {
                rel.push(row);
            }
        }
    }
    let (diag, v) = smith_columns(rel, n);
    let mut factors = Vec::new();
    let mut which = Vec::new();
    for (k, &d) in diag.iter().enumerate() {
        // d = 0 cannot occur for a finite group; 1 is a trivial factor.
        if d > 1 {
            factors.push(d as usize);
            which.push(k);
        }
    }
    let mut coords: Vec<Vec<usize>> = (0..n)
        .map(|t| {
            which
                .iter()
                .zip(&factors)
                .map(|(&k, &d)| v[t][k].rem_euclid(d as i128) as usize)
                .collect()
        })
        .collect();
    // Rescale each factor by a unit so the first generator has coordinate 1.
    for (k, &d) in factors.iter().enumerate() {
        if let Some(t) = (0..n).find(|&t| gcd(coords[t][k], d) == 1) {
            let u = mod_inverse(coords[t][k], d);
            for c in coords.iter_mut() {
                c[k] = c[k] * u % d;
            }
        }
    }
    (factors, coords)
}

fn mod_inverse(a: usize, m: usize) -> usize {
    (1..m).find(|&u| a * u % m == 1).unwrap_or(1)
}

/// Smith normal form of an integer matrix with `cols` columns. Returns the
/// diagonal (length `cols`, zero-padded) and the unimodular column
/// transform `V` with `U·R·V = D`.
fn smith_columns(mut a: Vec<Vec<i128>>, cols: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let swap_cols = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut diag = vec![0i128; cols];
    for k in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block as pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (diag, v);
            };
            a.swap(k, pi);
            if pj != k {
                swap_cols(&mut a, &mut v, k, pj);
            }
            let p = a[k][k];
            let mut clean = true;
            for i in (k + 1)..rows {
                let q = a[i][k].div_euclid(p);
                if q != 0 {
                    for j in k..cols {
                        a[i][j] -= q * a[k][j];
                    }
                }
                if a[i][k] != 0 {
                    clean = false;
                }
            }
            for j in (k + 1)..cols {
                let q = a[k][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[k];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[k];
                    }
                }
                if a[k][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| a[i][j] % p != 0));
            if let Some(i) = bad {
                for j in k..cols {
                    let x = a[i][j];
                    a[k][j] += x;
                }
                continue;
            }
            break;
        }
        if a[k][k] < 0 {
            for row in a.iter_mut() {
                row[k] = -row[k];
            }
            for row in v.iter_mut() {
                row[k] = -row[k];
            }
        }
        diag[k] = a[k][k];
    }
    (diag, v)
}

/// JSON form of a group: `{"name": str, "order": n, "cayley": [[int]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
}

impl From<&FiniteGroup> for GroupJson {
    fn from(g: &FiniteGroup) -> Self {
        GroupJson {
            name: g.name().to_string(),
            order: g.order(),
            cayley: g.cayley().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_from_table() {
        let g = FiniteGroup::from_cayley("C2", vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.inv(1), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            FiniteGroup::from_cayley("x", vec![vec![0, 1], vec![1, 1]]),
            Err(Error::NotLatinSquare(_))
        ));
        // x·y = −x−y mod 3 is a Latin square with no identity
        assert!(matches!(
            FiniteGroup::from_cayley("x", vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]),
            Err(Error::NoIdentity)
        ));
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // C2 with identity labelled 1
        let g = FiniteGroup::from_cayley("x", vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.cayley(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_cayley("loop", t),
            Err(Error::NotAssociative(..))
        ));
    }

    #[test]
    fn builtin_orders_and_commutativity() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        let v4 = builtin("v4").unwrap();
        assert_eq!((v4.order(), v4.exponent()), (4, 2));
        let s3 = symmetric3().unwrap();
        assert!(!s3.is_abelian());
        let q8 = quaternion8().unwrap();
        let order2: Vec<usize> = q8.elements().filter(|&t| q8.element_order(t) == 2).collect();
        assert_eq!(order2, vec![1]);
        assert!(!dihedral(4).unwrap().is_abelian());
        assert!(dihedral(2).unwrap().is_abelian());
        assert!(matches!(cyclic(0), Err(Error::BadParameter(_))));
        assert!(matches!(builtin("x7"), Err(Error::BadParameter(_))));
    }

    #[test]
    fn c2_characters() {
        let d = DualGroup::new(&cyclic(2).unwrap()).unwrap();
        assert_eq!(d.characters()[0], vec![ONE, ONE]);
        assert_eq!(d.characters()[1], vec![ONE, -ONE]);
    }

    #[test]
    fn c4_characters_are_powers_of_i() {
        let d = DualGroup::new(&cyclic(4).unwrap()).unwrap();
        let i = C64::new(0.0, 1.0);
        for k in 0..4 {
            for t in 0..4 {
                assert_eq!(d.pairing(k, t), i.powu((k * t) as u32));
            }
        }
    }

    #[test]
    fn non_abelian_has_no_dual() {
        assert!(matches!(
            DualGroup::new(&symmetric3().unwrap()),
            Err(Error::NotAbelian(_))
        ));
    }
}
