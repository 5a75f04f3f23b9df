use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::GammaBasis;
use super::spinor::{s_bar_minus_with, s_minus_with};
use crate::error::{Error, Result};
use crate::gaussmodel::{rho_vev, ChargeVector};
use crate::propagator::{ComplexFourVector, Mass, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Psi,
    PsiBar,
}

/// One Dirac field in an ordered product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Label {
    pub kind: FieldKind,
    pub spinor: usize,
}

impl Label {
    pub fn psi(spinor: usize) -> Self {
        Self {
            kind: FieldKind::Psi,
            spinor,
        }
    }

    pub fn psi_bar(spinor: usize) -> Self {
        Self {
            kind: FieldKind::PsiBar,
            spinor,
        }
    }

    /// Charge of the exponential field multiplying this Dirac field:
    /// `psi` carries `rho` (`-1`), `psibar` carries `rho*` (`+1`).
    pub fn charge(&self) -> i8 {
        match self.kind {
            FieldKind::Psi => -1,
            FieldKind::PsiBar => 1,
        }
    }
}

/// Charges matching `labels` slot by slot.
pub fn charges_for(labels: &[Label]) -> Result<ChargeVector> {
    ChargeVector::new(labels.iter().map(Label::charge).collect())
}

fn parity(seq: &[usize]) -> f64 {
    let mut inversions = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `<prod_j F_j(z_j)>` for free Dirac fields, as `eps * det C` with
/// `C_pq` the contraction of the `p`-th `psi` with the `q`-th `psibar`.
pub fn dirac_npoint(
    dirac_mass: Mass,
    points: &[ComplexFourVector],
    labels: &[Label],
    q: &QuadratureConfig,
) -> Result<Complex64> {
    dirac_npoint_with(&GammaBasis::dirac(), dirac_mass, points, labels, q)
}

pub fn dirac_npoint_with(
    basis: &GammaBasis,
    dirac_mass: Mass,
    points: &[ComplexFourVector],
    labels: &[Label],
    q: &QuadratureConfig,
) -> Result<Complex64> {
    if points.len() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: points.len(),
            got: labels.len(),
        });
    }
    if let Some(bad) = labels.iter().find(|l| l.spinor >= 4) {
        return Err(Error::Index {
            index: bad.spinor,
            size: 4,
        });
    }
    let psi: Vec<usize> = (0..labels.len())
        .filter(|&k| labels[k].kind == FieldKind::Psi)
        .collect();
    let bar: Vec<usize> = (0..labels.len())
        .filter(|&k| labels[k].kind == FieldKind::PsiBar)
        .collect();
    if psi.len() != bar.len() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let k = psi.len();
    if k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let mut c = DMatrix::<Complex64>::zeros(k, k);
    for (p, &i) in psi.iter().enumerate() {
        for (qq, &j) in bar.iter().enumerate() {
            let (alpha, beta) = (labels[i].spinor, labels[j].spinor);
            c[(p, qq)] = if i < j {
                s_minus_with(basis, dirac_mass, &(points[i] - points[j]), q)?.0[(alpha, beta)]
            } else {
                -s_bar_minus_with(basis, dirac_mass, &(points[j] - points[i]), q)?.0[(alpha, beta)]
            };
        }
    }
    let interleaved: Vec<usize> = psi.iter().zip(&bar).flat_map(|(&i, &j)| [i, j]).collect();
    Ok(c.determinant() * parity(&interleaved))
}

/// Product of the free Dirac part and the exponential-field part at the
/// same points.
#[allow(clippy::too_many_arguments)]
pub fn full_model_vev(
    l: f64,
    m: Mass,
    dirac_mass: Mass,
    points: &[ComplexFourVector],
    r: &ChargeVector,
    labels: &[Label],
    q: &QuadratureConfig,
) -> Result<Complex64> {
    if r.len() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: labels.len(),
            got: r.len(),
        });
    }
    for (k, label) in labels.iter().enumerate() {
        if r.get(k) != label.charge() {
            return Err(Error::Precondition(format!(
                "charge {} at slot {k} does not match a {:?} field",
                r.get(k),
                label.kind
            )));
        }
    }
    let dirac = dirac_npoint(dirac_mass, points, labels, q)?;
    let rho = rho_vev(l, m, points, r, q)?;
    Ok(dirac * rho)
}

/// The same expectation by direct enumeration of all `psi`-`psibar`
/// matchings, each pair taken in field order and signed by the parity of
/// the number of crossing chords. Exponential in the number of fields.
pub fn dirac_npoint_matchings(
    dirac_mass: Mass,
    points: &[ComplexFourVector],
    labels: &[Label],
    q: &QuadratureConfig,
) -> Result<Complex64> {
    if points.len() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: points.len(),
            got: labels.len(),
        });
    }
    let n = labels.len();
    let basis = GammaBasis::dirac();
    let mut pair = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let (la, lb) = (labels[a], labels[b]);
            let z = points[a] - points[b];
            pair[a][b] = match (la.kind, lb.kind) {
                (FieldKind::Psi, FieldKind::PsiBar) => {
                    s_minus_with(&basis, dirac_mass, &z, q)?.get(la.spinor, lb.spinor)?
                }
                (FieldKind::PsiBar, FieldKind::Psi) => {
                    s_bar_minus_with(&basis, dirac_mass, &z, q)?.get(lb.spinor, la.spinor)?
                }
                _ => Complex64::new(0.0, 0.0),
            };
        }
    }

    fn walk(
        free: &[usize],
        chords: &mut Vec<(usize, usize)>,
        pair: &[Vec<Complex64>],
    ) -> Complex64 {
        let Some((&a, rest)) = free.split_first() else {
            let mut crossings = 0;
            for (k, &(a, b)) in chords.iter().enumerate() {
                for &(c, d) in &chords[k + 1..] {
                    if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                        crossings += 1;
                    }
                }
            }
            let sign = if crossings % 2 == 0 { 1.0 } else { -1.0 };
            return chords
                .iter()
                .map(|&(a, b)| pair[a][b])
                .product::<Complex64>()
                * sign;
        };
        let mut total = Complex64::new(0.0, 0.0);
        for (idx, &b) in rest.iter().enumerate() {
            if pair[a][b] == Complex64::new(0.0, 0.0) {
                continue;
            }
            let remaining: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != idx)
                .map(|(_, &v)| v)
                .collect();
            chords.push((a, b));
            total += walk(&remaining, chords, pair);
            chords.pop();
        }
        total
    }

    if n % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(walk(&all, &mut Vec::new(), &pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussmodel::ContourSpec;
    use crate::propagator::d_minus_decomposed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mass(v: f64) -> Mass {
        Mass::new(v).unwrap()
    }

    fn points(rng: &mut ChaCha8Rng, n: usize) -> Vec<ComplexFourVector> {
        let x: Vec<[f64; 4]> = (0..n)
            .map(|_| [0.0; 4].map(|_: f64| rng.gen_range(-1.0..1.0)))
            .collect();
        ContourSpec::evenly_spaced(n, 0.5).place(&x).unwrap()
    }

    #[test]
    fn two_point_base_cases() {
        let q = QuadratureConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = points(&mut rng, 2);
        let v = dirac_npoint(mass(1.0), &pts, &[Label::psi(1), Label::psi_bar(2)], &q).unwrap();
        let s = super::super::s_minus(mass(1.0), &(pts[0] - pts[1]), &q).unwrap();
        assert_eq!(v, s.0[(1, 2)]);
        let v = dirac_npoint(mass(1.0), &pts, &[Label::psi_bar(2), Label::psi(1)], &q).unwrap();
        let sb = s_bar_minus_with(&GammaBasis::dirac(), mass(1.0), &(pts[0] - pts[1]), &q).unwrap();
        assert_eq!(v, sb.0[(1, 2)]);
    }

    #[test]
    fn unbalanced_products_vanish() {
        let q = QuadratureConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts = points(&mut rng, 3);
        let labels = [Label::psi(0), Label::psi_bar(0), Label::psi(1)];
        assert_eq!(
            dirac_npoint(mass(1.0), &pts, &labels, &q).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let pts = points(&mut rng, 2);
        assert_eq!(
            dirac_npoint(mass(1.0), &pts, &[Label::psi(0), Label::psi(1)], &q).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn determinant_matches_matching_enumeration() {
        let q = QuadratureConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let orders: [[FieldKind; 4]; 4] = {
            use FieldKind::*;
            [
                [Psi, PsiBar, Psi, PsiBar],
                [Psi, Psi, PsiBar, PsiBar],
                [PsiBar, Psi, Psi, PsiBar],
                [PsiBar, PsiBar, Psi, Psi],
            ]
        };
        for kinds in orders {
            for _ in 0..3 {
                let pts = points(&mut rng, 4);
                let labels: Vec<Label> = kinds
                    .iter()
                    .map(|&kind| Label {
                        kind,
                        spinor: rng.gen_range(0..4),
                    })
                    .collect();
                let v = dirac_npoint(mass(0.8), &pts, &labels, &q).unwrap();
                let o = dirac_npoint_matchings(mass(0.8), &pts, &labels, &q).unwrap();
                assert!(
                    (v - o).norm() <= 1e-12 * o.norm().max(1e-300),
                    "{kinds:?}: {v} vs {o}"
                );
            }
        }
    }

    #[test]
    fn six_point_matches_matching_enumeration() {
        use FieldKind::*;
        let q = QuadratureConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let kinds = [Psi, PsiBar, PsiBar, Psi, Psi, PsiBar];
        let pts = points(&mut rng, 6);
        let labels: Vec<Label> = kinds
            .iter()
            .map(|&kind| Label {
                kind,
                spinor: rng.gen_range(0..4),
            })
            .collect();
        let v = dirac_npoint(mass(1.0), &pts, &labels, &q).unwrap();
        let o = dirac_npoint_matchings(mass(1.0), &pts, &labels, &q).unwrap();
        assert!((v - o).norm() <= 1e-12 * o.norm(), "{v} vs {o}");
    }

    #[test]
    fn adjacent_same_kind_transposition_flips_sign() {
        let q = QuadratureConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let pts = points(&mut rng, 4);
        let labels = [
            Label::psi(0),
            Label::psi(3),
            Label::psi_bar(1),
            Label::psi_bar(2),
        ];
        let v = dirac_npoint(mass(1.0), &pts, &labels, &q).unwrap();
        let swapped_pts = [pts[1], pts[0], pts[2], pts[3]];
        let swapped = [labels[1], labels[0], labels[2], labels[3]];
        let w = dirac_npoint(mass(1.0), &swapped_pts, &swapped, &q).unwrap();
        assert!((v + w).norm() < 1e-14 * v.norm());
    }

    #[test]
    fn full_model_reduces_and_factorizes() {
        let q = QuadratureConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pts = points(&mut rng, 2);
        let labels = [Label::psi(0), Label::psi_bar(0)];
        let r = charges_for(&labels).unwrap();
        let free = dirac_npoint(mass(1.0), &pts, &labels, &q).unwrap();
        assert_eq!(
            full_model_vev(0.0, mass(1.0), mass(1.0), &pts, &r, &labels, &q).unwrap(),
            free
        );

        let l: f64 = 0.8;
        let v = full_model_vev(l, mass(0.5), mass(1.0), &pts, &r, &labels, &q).unwrap();
        let d = d_minus_decomposed(mass(0.5), &(pts[0] - pts[1]), &q).unwrap();
        let expected = free * (1.0 - 4.0 * l.powi(4) * d * d).powf(-0.5);
        assert!((v - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn charge_mismatch_is_rejected() {
        let q = QuadratureConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let pts = points(&mut rng, 2);
        let labels = [Label::psi(0), Label::psi_bar(0)];
        let r = ChargeVector::new(vec![1, -1]).unwrap();
        assert!(matches!(
            full_model_vev(0.5, mass(1.0), mass(1.0), &pts, &r, &labels, &q),
            Err(Error::Precondition(_))
        ));
    }
}
