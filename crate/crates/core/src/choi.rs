//! Choi matrices of qubit channels and the leading-minor machinery used to
//! decide complete positivity.
//!
//! A qubit map is encoded by the 4×4 block matrix `[[Q11, Q12], [Q21, Q22]]`
//! acting as `[[α, β], [γ, δ]] ↦ αQ11 + βQ12 + γQ21 + δQ22`. Trace
//! preservation pins the diagonal blocks to trace one and the off-diagonal
//! block to trace zero, which leaves 12 real coordinates for a general channel
//! and 9 for a unital one.
//!
//! Positivity is decided by Sylvester's criterion on a permuted copy of the
//! Choi matrix. All determinants are closed-form cofactor expansions for sizes
//! one to four; nothing here pivots or iterates.

use num_complex::Complex64;

use crate::error::{check_domain, Error, Result};

pub type Complex = Complex64;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Imaginary residue tolerated in a Hermitian determinant, relative to the
/// Hadamard bound of the block.
const IMAG_RESIDUE: f64 = 1e-12;

/// `|det A_{n-1}|` below which the bordered decomposition is refused.
pub const DEGENERATE_MINOR: f64 = 1e-14;

/// Permutation `U` with `A = U*QU` for general channels (swaps the middle two
/// basis vectors).
pub const GENERAL_PERMUTATION: [usize; 4] = [0, 2, 1, 3];

/// Permutation `U` with `A = U*QU` for unital channels.
pub const UNITAL_PERMUTATION: [usize; 4] = [1, 2, 0, 3];

/// The 12 real coordinates of a general qubit channel.
///
/// `a` and `f` are the `(1,1)` entries of the two diagonal Choi blocks, so the
/// underlying classical channel has rows `(a, 1-a)` and `(f, 1-f)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralChannelParams {
    pub a: f64,
    pub f: f64,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
    pub e: Complex,
    pub g: Complex,
}

impl GeneralChannelParams {
    pub const COLUMNS: [&'static str; 12] = [
        "a", "f", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "e_re", "e_im", "g_re", "g_im",
    ];

    pub fn new(a: f64, f: f64, b: Complex, c: Complex, d: Complex, e: Complex, g: Complex) -> Self {
        Self { a, f, b, c, d, e, g }
    }

    /// Channel with the given classical rows and every complex entry zero.
    pub fn diagonal(a: f64, f: f64) -> Self {
        Self::new(a, f, ZERO, ZERO, ZERO, ZERO, ZERO)
    }

    /// The identity channel `ρ ↦ ρ`, a rank-one boundary point.
    pub fn identity() -> Self {
        Self {
            d: Complex::new(1.0, 0.0),
            ..Self::diagonal(1.0, 0.0)
        }
    }

    /// Checks `a, f ∈ [0, 1]` and finiteness of every coordinate.
    pub fn validate(&self) -> Result<()> {
        check_domain("a", self.a, 0.0, 1.0)?;
        check_domain("f", self.f, 0.0, 1.0)?;
        if self.to_array().iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("non-finite channel coordinate".into()))
        }
    }

    /// Coordinates in [`Self::COLUMNS`] order.
    pub fn to_array(&self) -> [f64; 12] {
        [
            self.a, self.f, self.b.re, self.b.im, self.c.re, self.c.im, self.d.re, self.d.im,
            self.e.re, self.e.im, self.g.re, self.g.im,
        ]
    }

    pub fn from_array(x: [f64; 12]) -> Self {
        Self {
            a: x[0],
            f: x[1],
            b: Complex::new(x[2], x[3]),
            c: Complex::new(x[4], x[5]),
            d: Complex::new(x[6], x[7]),
            e: Complex::new(x[8], x[9]),
            g: Complex::new(x[10], x[11]),
        }
    }

    pub fn choi(&self) -> HermitianMatrix4 {
        build_choi_general(self)
    }

    /// Strict positivity of the Choi matrix (tolerance zero).
    pub fn is_channel(&self) -> bool {
        permute_general(&self.choi()).is_positive_definite(0.0)
    }
}

/// The 9 real coordinates of a unital qubit channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitalChannelParams {
    pub a: f64,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
    pub e: Complex,
}

impl UnitalChannelParams {
    pub const COLUMNS: [&'static str; 9] =
        ["a", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "e_re", "e_im"];

    pub fn new(a: f64, b: Complex, c: Complex, d: Complex, e: Complex) -> Self {
        Self { a, b, c, d, e }
    }

    pub fn diagonal(a: f64) -> Self {
        Self::new(a, ZERO, ZERO, ZERO, ZERO)
    }

    pub fn identity() -> Self {
        Self {
            d: Complex::new(1.0, 0.0),
            ..Self::diagonal(1.0)
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_domain("a", self.a, 0.0, 1.0)?;
        if self.to_array().iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("non-finite channel coordinate".into()))
        }
    }

    pub fn to_array(&self) -> [f64; 9] {
        [
            self.a, self.b.re, self.b.im, self.c.re, self.c.im, self.d.re, self.d.im, self.e.re,
            self.e.im,
        ]
    }

    pub fn from_array(x: [f64; 9]) -> Self {
        Self {
            a: x[0],
            b: Complex::new(x[1], x[2]),
            c: Complex::new(x[3], x[4]),
            d: Complex::new(x[5], x[6]),
            e: Complex::new(x[7], x[8]),
        }
    }

    pub fn choi(&self) -> HermitianMatrix4 {
        build_choi_unital(self)
    }

    pub fn is_channel(&self) -> bool {
        permute_unital(&self.choi()).is_positive_definite(0.0)
    }
}

/// Dense Hermitian matrix of size `N` (1 through 4).
///
/// Hermiticity is exact: every off-diagonal write stores the conjugate in the
/// mirrored slot and diagonal entries are kept real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix<const N: usize> {
    m: [[Complex; N]; N],
}

pub type HermitianMatrix4 = HermitianMatrix<4>;

/// The three quantities of the bordered determinant expansion
/// `det A = a_nn · det A_{n-1} − ⟨x, T x⟩` with `T = adj(A_{n-1})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurDecomposition {
    pub corner: f64,
    pub minor_det: f64,
    pub quadratic_form: f64,
}

impl SchurDecomposition {
    pub fn determinant(&self) -> f64 {
        self.corner * self.minor_det - self.quadratic_form
    }
}

impl<const N: usize> Default for HermitianMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> HermitianMatrix<N> {
    pub fn zeros() -> Self {
        Self { m: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        Self::diagonal([1.0; N])
    }

    pub fn diagonal(d: [f64; N]) -> Self {
        let mut out = Self::zeros();
        for (i, &x) in d.iter().enumerate() {
            out.m[i][i] = Complex::new(x, 0.0);
        }
        out
    }

    /// Builds from explicit rows, rejecting anything not exactly Hermitian.
    pub fn from_rows(rows: [[Complex; N]; N]) -> Result<Self> {
        for i in 0..N {
            for j in i..N {
                if rows[i][j] != rows[j][i].conj() {
                    return Err(Error::NotHermitian { row: i, col: j });
                }
            }
        }
        Ok(Self { m: rows })
    }

    /// Writes `z` at `(i, j)` and `conj(z)` at `(j, i)`. On the diagonal only
    /// the real part is kept.
    pub fn set(&mut self, i: usize, j: usize, z: Complex) {
        if i == j {
            self.m[i][i] = Complex::new(z.re, 0.0);
        } else {
            self.m[i][j] = z;
            self.m[j][i] = z.conj();
        }
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[[Complex; N]; N] {
        &self.m
    }

    /// `U*AU` for the permutation matrix with `U e_j = e_{perm[j]}`, i.e.
    /// entry `(i, j)` of the result is `A[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: [usize; N]) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.m[i][j] = self.m[perm[i]][perm[j]];
            }
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.m[i][i].re).sum()
    }

    /// Determinants of the upper-left `1×1, …, N×N` blocks by full complex
    /// cofactor expansion. The (rounding-level) imaginary residue is dropped.
    pub fn leading_minors(&self) -> [f64; N] {
        let mut out = [0.0; N];
        let idx: Vec<usize> = (0..N).collect();
        for (k, slot) in out.iter_mut().enumerate() {
            let det = cofactor_det(&self.m, &idx[..=k], &idx[..=k]);
            *slot = self.real_part_checked(det, k + 1);
        }
        out
    }

    pub fn determinant(&self) -> f64 {
        let idx: Vec<usize> = (0..N).collect();
        let det = cofactor_det(&self.m, &idx, &idx);
        self.real_part_checked(det, N)
    }

    fn real_part_checked(&self, det: Complex, k: usize) -> f64 {
        let hadamard: f64 = (0..k)
            .map(|i| (0..k).map(|j| self.m[i][j].norm_sqr()).sum::<f64>().sqrt())
            .product();
        debug_assert!(
            det.im.abs() <= IMAG_RESIDUE * hadamard.max(1.0),
            "Hermitian determinant has imaginary part {:e}",
            det.im
        );
        det.re
    }

    /// Leading minor of order `k` (1..=4) from real-valued Hermitian closed
    /// forms. This is the hot-path twin of [`Self::leading_minors`].
    #[inline]
    pub fn leading_minor(&self, k: usize) -> f64 {
        let m = &self.m;
        match k {
            1 => m[0][0].re,
            2 => m[0][0].re * m[1][1].re - m[0][1].norm_sqr(),
            3 => hermitian_det3(m[0][0].re, m[1][1].re, m[2][2].re, m[0][1], m[1][2], m[0][2]),
            4 => {
                let det3 =
                    hermitian_det3(m[0][0].re, m[1][1].re, m[2][2].re, m[0][1], m[1][2], m[0][2]);
                let adj = hermitian_adj3(m[0][0].re, m[1][1].re, m[2][2].re, m[0][1], m[1][2], m[0][2]);
                let x = [m[0][3], m[1][3], m[2][3]];
                m[3][3].re * det3 - hermitian_form3(&adj, &x)
            }
            _ => panic!("leading_minor supports orders 1 to 4, got {k}"),
        }
    }

    /// Sylvester's criterion: every leading minor exceeds `tol`.
    #[inline]
    pub fn is_positive_definite(&self, tol: f64) -> bool {
        (1..=N).all(|k| self.leading_minor(k) > tol)
    }

    /// Bordered expansion of the determinant along the last row and column.
    pub fn schur_decomposition(&self) -> Result<SchurDecomposition> {
        if !(2..=4).contains(&N) {
            return Err(Error::UnsupportedSize(N));
        }
        let n = N - 1;
        let idx: Vec<usize> = (0..n).collect();
        let minor_det = self.real_part_checked(cofactor_det(&self.m, &idx, &idx), n);
        if minor_det.abs() < DEGENERATE_MINOR {
            return Err(Error::DegenerateMinor {
                order: n,
                value: minor_det,
            });
        }
        // T = det(A_{n-1}) A_{n-1}^{-1} is the adjugate.
        let mut adj = vec![vec![ZERO; n]; n];
        for (i, row) in adj.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != j).collect();
                let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != i).collect();
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                *slot = cofactor_det(&self.m, &rows, &cols) * sign;
            }
        }
        let x: Vec<Complex> = (0..n).map(|i| self.m[i][n]).collect();
        let mut form = ZERO;
        for i in 0..n {
            for j in 0..n {
                form += x[i].conj() * adj[i][j] * x[j];
            }
        }
        Ok(SchurDecomposition {
            corner: self.m[n][n].re,
            minor_det,
            quadratic_form: form.re,
        })
    }
}

/// Laplace expansion along the first listed row.
fn cofactor_det<const N: usize>(m: &[[Complex; N]; N], rows: &[usize], cols: &[usize]) -> Complex {
    debug_assert_eq!(rows.len(), cols.len());
    match rows.len() {
        0 => Complex::new(1.0, 0.0),
        1 => m[rows[0]][cols[0]],
        2 => m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]],
        _ => {
            let mut acc = ZERO;
            let mut sub = Vec::with_capacity(cols.len() - 1);
            for (j, &c) in cols.iter().enumerate() {
                sub.clear();
                sub.extend(cols.iter().enumerate().filter(|&(jj, _)| jj != j).map(|(_, &cc)| cc));
                let term = m[rows[0]][c] * cofactor_det(m, &rows[1..], &sub);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

#[inline]
fn hermitian_det3(h00: f64, h11: f64, h22: f64, h01: Complex, h12: Complex, h02: Complex) -> f64 {
    h00 * h11 * h22 + 2.0 * (h01 * h12 * h02.conj()).re
        - h00 * h12.norm_sqr()
        - h11 * h02.norm_sqr()
        - h22 * h01.norm_sqr()
}

/// Adjugate of a 3×3 Hermitian matrix: `(adj00, adj11, adj22, adj01, adj12, adj02)`.
#[inline]
fn hermitian_adj3(
    h00: f64,
    h11: f64,
    h22: f64,
    h01: Complex,
    h12: Complex,
    h02: Complex,
) -> (f64, f64, f64, Complex, Complex, Complex) {
    let adj00 = h11 * h22 - h12.norm_sqr();
    let adj11 = h00 * h22 - h02.norm_sqr();
    let adj22 = h00 * h11 - h01.norm_sqr();
    let adj01 = h02 * h12.conj() - h01 * h22;
    let adj02 = h01 * h12 - h02 * h11;
    let adj12 = h02 * h01.conj() - h12 * h00;
    (adj00, adj11, adj22, adj01, adj12, adj02)
}

#[inline]
fn hermitian_form3(adj: &(f64, f64, f64, Complex, Complex, Complex), x: &[Complex; 3]) -> f64 {
    let &(h00, h11, h22, h01, h12, h02) = adj;
    h00 * x[0].norm_sqr()
        + h11 * x[1].norm_sqr()
        + h22 * x[2].norm_sqr()
        + 2.0
            * ((x[0].conj() * h01 * x[1]).re
                + (x[1].conj() * h12 * x[2]).re
                + (x[0].conj() * h02 * x[2]).re)
}

/// Choi matrix of a general channel:
///
/// ```text
/// [ a   b   c   d ]
/// [ b̄  1-a  e  -c ]
/// [ c̄   ē   f   g ]
/// [ d̄  -c̄   ḡ  1-f]
/// ```
pub fn build_choi_general(p: &GeneralChannelParams) -> HermitianMatrix4 {
    let mut q = HermitianMatrix4::diagonal([p.a, 1.0 - p.a, p.f, 1.0 - p.f]);
    q.set(0, 1, p.b);
    q.set(0, 2, p.c);
    q.set(0, 3, p.d);
    q.set(1, 2, p.e);
    q.set(1, 3, -p.c);
    q.set(2, 3, p.g);
    q
}

/// Choi matrix of a unital channel; the lower-right block is fixed by
/// `Q11 + Q22 = I`.
pub fn build_choi_unital(p: &UnitalChannelParams) -> HermitianMatrix4 {
    let mut q = HermitianMatrix4::diagonal([p.a, 1.0 - p.a, 1.0 - p.a, p.a]);
    q.set(0, 1, p.b);
    q.set(0, 2, p.c);
    q.set(0, 3, p.d);
    q.set(1, 2, p.e);
    q.set(1, 3, -p.c);
    q.set(2, 3, -p.b);
    q
}

pub fn leading_minors(m: &HermitianMatrix4) -> [f64; 4] {
    m.leading_minors()
}

pub fn is_positive_definite(m: &HermitianMatrix4, tol: f64) -> bool {
    m.is_positive_definite(tol)
}

pub fn schur_det_decomposition<const N: usize>(m: &HermitianMatrix<N>) -> Result<SchurDecomposition> {
    m.schur_decomposition()
}

pub fn permute_general(q: &HermitianMatrix4) -> HermitianMatrix4 {
    q.permuted(GENERAL_PERMUTATION)
}

pub fn permute_unital(q: &HermitianMatrix4) -> HermitianMatrix4 {
    q.permuted(UNITAL_PERMUTATION)
}
