//! Explicit Clifford systems: eight pairwise anticommuting orthogonal
//! complex structures `J_1, …, J_8` on ℝ^{16n}.
//!
//! The ambient space is ℍ^{4n} = ℝ^{4n} ⊕ ℝ^{4n}i ⊕ ℝ^{4n}j ⊕ ℝ^{4n}k with
//! the component-major coordinate order. `J_1` and `J_2` are right
//! multiplication by the quaternion units `i` and `j`; `J_3` is chosen so
//! that `J_1 J_2 J_3` flips the sign of the last `2n` quaternionic
//! coordinates. The remaining five structures come from the symplectic
//! block normal form: every `J` anticommuting with `J_1, J_2, J_3` is
//! `-J_3 · L([[0, T], [T, 0]])` for an ℍ-linear block `T`, and the four
//! anticommuting quaternion towers `-iI`, `-jI`, `-k·diag(I_n, -I_n)` and
//! `-k·[[0, I_n], [I_n, 0]]` fill the slots `J_5, …, J_8` (with `T = I`
//! giving `J_4`). All entries land in `{0, ±1}`, so the defining relations
//! hold exactly in floating point.

use crate::algebra::matrix::RMat;
use crate::algebra::quaternion::{self, QMat};
use crate::{Error, Result};

/// Eight anticommuting orthogonal complex structures on ℝ^{16n}.
#[derive(Debug, Clone)]
pub struct CliffordSystem {
    pub n: usize,
    /// `structures[k]` is `J_{k+1}`.
    pub structures: Vec<RMat>,
}

/// Right multiplication by `i` on ℍ^m in component-major coordinates.
pub fn right_mult_i(m: usize) -> RMat {
    component_block(m, &[(0, 1, -1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, -1.0)])
}

/// Right multiplication by `j`.
pub fn right_mult_j(m: usize) -> RMat {
    component_block(m, &[(0, 2, -1.0), (1, 3, -1.0), (2, 0, 1.0), (3, 1, 1.0)])
}

/// Right multiplication by `k`.
pub fn right_mult_k(m: usize) -> RMat {
    component_block(m, &[(0, 3, -1.0), (1, 2, 1.0), (2, 1, -1.0), (3, 0, 1.0)])
}

fn component_block(m: usize, entries: &[(usize, usize, f64)]) -> RMat {
    let mut out = RMat::zeros(4 * m, 4 * m);
    for &(r, c, s) in entries {
        for t in 0..m {
            out[(r * m + t, c * m + t)] = s;
        }
    }
    out
}

/// Sign flip of the last `m/2` quaternionic coordinates, acting on each of
/// the four components.
fn coordinate_flip(m: usize) -> RMat {
    let mut out = RMat::identity(4 * m, 4 * m);
    for comp in 0..4 {
        for t in m / 2..m {
            out[(comp * m + t, comp * m + t)] = -1.0;
        }
    }
    out
}

/// Left action of a quaternion matrix on ℍ^m ≅ ℝ^{4m} in component-major
/// coordinates.
pub fn left_action(q: &QMat) -> RMat {
    assert_eq!(q.rows, q.cols);
    let m = q.rows;
    let mut out = RMat::zeros(4 * m, 4 * m);
    // (a + bi + cj + dk)(w + xi + yj + zk) component table.
    let put = |out: &mut RMat, or: usize, oc: usize, val: f64, r: usize, c: usize| {
        if val != 0.0 {
            out[(or * m + r, oc * m + c)] += val;
        }
    };
    for r in 0..m {
        for c in 0..m {
            let entry = q[(r, c)];
            let (a, b, cc, d) = (entry.a, entry.b, entry.c, entry.d);
            // out_1 = a w - b x - c y - d z
            put(&mut out, 0, 0, a, r, c);
            put(&mut out, 0, 1, -b, r, c);
            put(&mut out, 0, 2, -cc, r, c);
            put(&mut out, 0, 3, -d, r, c);
            // out_i = b w + a x - d y + c z
            put(&mut out, 1, 0, b, r, c);
            put(&mut out, 1, 1, a, r, c);
            put(&mut out, 1, 2, -d, r, c);
            put(&mut out, 1, 3, cc, r, c);
            // out_j = c w + d x + a y - b z
            put(&mut out, 2, 0, cc, r, c);
            put(&mut out, 2, 1, d, r, c);
            put(&mut out, 2, 2, a, r, c);
            put(&mut out, 2, 3, -b, r, c);
            // out_k = d w - c x + b y + a z
            put(&mut out, 3, 0, d, r, c);
            put(&mut out, 3, 1, -cc, r, c);
            put(&mut out, 3, 2, b, r, c);
            put(&mut out, 3, 3, a, r, c);
        }
    }
    out
}

/// `B_m = [[0, I_{m/2}], [-I_{m/2}, 0]]` as a quaternion matrix.
pub fn b_block_quat(m: usize) -> QMat {
    assert!(m.is_multiple_of(2));
    let h = m / 2;
    QMat::from_fn(m, m, |r, c| {
        if r < h && c == h + r {
            quaternion::ONE
        } else if r >= h && c == r - h {
            -quaternion::ONE
        } else {
            quaternion::ZERO
        }
    })
}

/// The four quaternion towers `T_5, …, T_8` inside `Sp_{2n}` that generate
/// the inner half of the chain: `-iI`, `-jI`, `-k diag(I_n, -I_n)` and
/// `-k [[0, I_n], [I_n, 0]]`.
pub fn inner_towers(n: usize) -> [QMat; 4] {
    let m = 2 * n;
    let t5 = QMat::scalar(m, -quaternion::I);
    let t6 = QMat::scalar(m, -quaternion::J);
    let t7 = QMat::from_fn(m, m, |r, c| {
        if r == c {
            if r < n {
                -quaternion::K
            } else {
                quaternion::K
            }
        } else {
            quaternion::ZERO
        }
    });
    let t8 = QMat::from_fn(m, m, |r, c| {
        if (r < n && c == n + r) || (r >= n && c == r - n) {
            -quaternion::K
        } else {
            quaternion::ZERO
        }
    });
    [t5, t6, t7, t8]
}

/// `[[0, T], [T, 0]]` for a structure block `T` (where `-T⁻¹ = T`).
fn antidiag_pair(t: &QMat) -> QMat {
    let z = QMat::zeros(t.rows, t.cols);
    QMat::from_blocks(&z, t, t, &z)
}

/// Build the Clifford system on ℝ^{16n}.
pub fn make_clifford_system(n: usize) -> Result<CliffordSystem> {
    if n == 0 {
        return Err(Error::Config("Clifford system needs n >= 1".into()));
    }
    let m = 4 * n; // quaternionic dimension
    let j1 = right_mult_i(m);
    let j2 = right_mult_j(m);
    let j3 = right_mult_k(m) * coordinate_flip(m);
    let j4 = &j3 * left_action(&b_block_quat(m));
    let towers = inner_towers(n);
    let mut structures = vec![j1, j2, j3.clone(), j4];
    for t in &towers {
        structures.push(-(&j3 * left_action(&antidiag_pair(t))));
    }
    Ok(CliffordSystem { n, structures })
}

impl CliffordSystem {
    /// `J_k` for `k = 1..=8`.
    pub fn j(&self, k: usize) -> &RMat {
        &self.structures[k - 1]
    }

    pub fn dim(&self) -> usize {
        16 * self.n
    }

    /// Max residual over the defining relations: anticommutators for all
    /// pairs, `J_k² + I`, and `J_kᵀ J_k - I`.
    pub fn max_residual(&self) -> f64 {
        let n = self.dim();
        let id = RMat::identity(n, n);
        let mut worst: f64 = 0.0;
        for (a, ja) in self.structures.iter().enumerate() {
            worst = worst.max((ja * ja + &id).abs().max());
            worst = worst.max((ja.transpose() * ja - &id).abs().max());
            for jb in self.structures.iter().skip(a + 1) {
                worst = worst.max((ja * jb + jb * ja).abs().max());
            }
        }
        worst
    }
}
