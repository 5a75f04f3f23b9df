//! Linear changes of variables between point coordinates and difference
//! coordinates. Generic over the scalar so integer inputs roundtrip
//! exactly.

use std::ops::{Add, Sub};

use crate::error::{Error, Result};

fn check_len<T>(n: usize, v: &[T]) -> Result<()> {
    if v.len() != n || n == 0 {
        return Err(Error::SizeMismatch {
            expected: n,
            got: v.len(),
        });
    }
    Ok(())
}

fn sub4<T: Copy + Sub<Output = T>>(a: [T; 4], b: [T; 4]) -> [T; 4] {
    std::array::from_fn(|k| a[k] - b[k])
}

fn add4<T: Copy + Add<Output = T>>(a: [T; 4], b: [T; 4]) -> [T; 4] {
    std::array::from_fn(|k| a[k] + b[k])
}

/// `p_k = q_{k-1} - q_k` for `k < n`, `p_n = q_{n-1}` (with `q` indexed
/// from 0 and `p` from 1; both stored 0-based).
pub fn chi_map<T>(n: usize, q: &[[T; 4]]) -> Result<Vec<[T; 4]>>
where
    T: Copy + Sub<Output = T>,
{
    check_len(n, q)?;
    let mut p: Vec<[T; 4]> = q.windows(2).map(|w| sub4(w[0], w[1])).collect();
    p.push(q[n - 1]);
    Ok(p)
}

/// Inverse of [`chi_map`]: `q_k = sum_{j > k} p_j`.
pub fn chi_inv<T>(n: usize, p: &[[T; 4]]) -> Result<Vec<[T; 4]>>
where
    T: Copy + Add<Output = T>,
{
    check_len(n, p)?;
    let mut q = p.to_vec();
    for k in (0..n - 1).rev() {
        q[k] = add4(p[k], q[k + 1]);
    }
    Ok(q)
}

/// `zeta_0 = z_1`, `zeta_j = z_{j+1} - z_j`.
pub fn zeta_from_z<T>(z: &[[T; 4]]) -> Vec<[T; 4]>
where
    T: Copy + Sub<Output = T>,
{
    let mut out = Vec::with_capacity(z.len());
    if let Some(&first) = z.first() {
        out.push(first);
        out.extend(z.windows(2).map(|w| sub4(w[1], w[0])));
    }
    out
}

/// Inverse of [`zeta_from_z`]: `z_j = sum_{k < j} zeta_k`.
pub fn z_from_zeta<T>(zeta: &[[T; 4]]) -> Vec<[T; 4]>
where
    T: Copy + Add<Output = T>,
{
    let mut out: Vec<[T; 4]> = Vec::with_capacity(zeta.len());
    for &v in zeta {
        let next = match out.last() {
            Some(&prev) => add4(prev, v),
            None => v,
        };
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_point_maps() {
        let q = [[1, 2, 3, 4], [10, 20, 30, 40]];
        let p = chi_map(2, &q).unwrap();
        assert_eq!(p, vec![[-9, -18, -27, -36], [10, 20, 30, 40]]);
        assert_eq!(chi_inv(2, &p).unwrap(), q.to_vec());
    }

    #[test]
    fn three_point_instance() {
        let q = [[3, -1, 0, 2], [1, 1, 1, 1], [-2, 5, 4, 0]];
        let p = chi_map(3, &q).unwrap();
        assert_eq!(p, vec![[2, -2, -1, 1], [3, -4, -3, 1], [-2, 5, 4, 0]]);
        assert_eq!(chi_inv(3, &p).unwrap(), q.to_vec());

        let zeta = zeta_from_z(&q);
        assert_eq!(zeta, vec![[3, -1, 0, 2], [-2, 2, 1, -1], [-3, 4, 3, -1]]);
        assert_eq!(z_from_zeta(&zeta), q.to_vec());
    }

    #[test]
    fn size_is_checked() {
        assert!(matches!(
            chi_map(3, &[[0.0; 4]; 2]),
            Err(Error::SizeMismatch {
                expected: 3,
                got: 2
            })
        ));
        assert!(chi_inv::<i64>(0, &[]).is_err());
    }

    proptest! {
        #[test]
        fn integer_roundtrip_is_exact(q in proptest::collection::vec(proptest::array::uniform4(-1_000_000i64..1_000_000), 1..=6)) {
            let n = q.len();
            prop_assert_eq!(chi_inv(n, &chi_map(n, &q).unwrap()).unwrap(), q.clone());
            prop_assert_eq!(z_from_zeta(&zeta_from_z(&q)), q);
        }

        #[test]
        fn float_roundtrip(q in proptest::collection::vec(proptest::array::uniform4(-10.0f64..10.0), 1..=6)) {
            let n = q.len();
            let back = chi_inv(n, &chi_map(n, &q).unwrap()).unwrap();
            let back2 = z_from_zeta(&zeta_from_z(&q));
            for k in 0..n {
                for mu in 0..4 {
                    prop_assert!((back[k][mu] - q[k][mu]).abs() <= 1e-14 * q[k][mu].abs().max(1.0));
                    prop_assert!((back2[k][mu] - q[k][mu]).abs() <= 1e-14 * q[k][mu].abs().max(1.0));
                }
            }
        }
    }
}
