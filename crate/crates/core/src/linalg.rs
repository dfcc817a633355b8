//! Fixed-size complex matrices for one and two qubits.

use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix2(pub [[C64; 2]; 2]);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix4(pub [[C64; 4]; 4]);

impl Matrix2 {
    pub fn identity() -> Self {
        Matrix2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Kronecker product `self ⊗ rhs`; `self` acts on the first qubit.
    pub fn kron(&self, rhs: &Matrix2) -> Matrix4 {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[i / 2][j / 2] * rhs.0[i % 2][j % 2];
            }
        }
        Matrix4(out)
    }

    /// Largest entrywise deviation of `M†M` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        max_dev_from_identity(&(self.adjoint() * *self).0)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..2).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Matrix2(out)
    }
}

impl Matrix4 {
    pub fn identity() -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Matrix4(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[j][i].conj();
            }
        }
        Matrix4(out)
    }

    pub fn apply(&self, v: &[C64; 4]) -> [C64; 4] {
        let mut out = [ZERO; 4];
        for (o, row) in out.iter_mut().zip(&self.0) {
            *o = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
        }
        out
    }

    pub fn unitarity_error(&self) -> f64 {
        max_dev_from_identity(&(self.adjoint() * *self).0)
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Matrix4(out)
    }
}

fn max_dev_from_identity<const N: usize>(m: &[[C64; N]; N]) -> f64 {
    let mut worst = 0.0_f64;
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((v - target).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_places_blocks() {
        let a = Matrix2([[ONE, C64::new(2.0, 0.0)], [C64::new(3.0, 0.0), C64::new(4.0, 0.0)]]);
        let k = a.kron(&Matrix2::identity());
        assert_eq!(k.0[0][2], C64::new(2.0, 0.0));
        assert_eq!(k.0[1][3], C64::new(2.0, 0.0));
        assert_eq!(k.0[3][1], C64::new(3.0, 0.0));
        assert_eq!(k.0[3][3], C64::new(4.0, 0.0));
        assert_eq!(k.0[0][1], ZERO);
    }

    #[test]
    fn kron_is_mixed_product_compatible() {
        let a = Matrix2([[I, ONE], [ZERO, -I]]);
        let b = Matrix2([[ONE, I], [I, ONE]]);
        let lhs = a.kron(&b) * a.kron(&b);
        let rhs = (a * a).kron(&(b * b));
        assert_eq!(lhs, rhs);
    }
}
