//! KP equations and boson-operator identities for the generating functions
//! at `x = 1`.
//!
//! `s_0` is never differentiated and is treated as a parameter throughout.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::evolution::{operators, EvolutionState, SpectrumKind};
use crate::series::{Key, Series};
use crate::spectrum::Spectrum;

/// Exact `d/ds_i`.
pub fn partial_derivative(s: &Series, i: u32) -> Series {
    s.derivative_s(i)
}

/// Successive partial derivatives in the listed indices.
pub fn derivative(s: &Series, indices: &[u32]) -> Series {
    indices.iter().fold(s.clone(), |acc, &i| acc.derivative_s(i))
}

/// A function of `y` stored by `y`-degree, truncated to a bounded region of
/// backbone content.
#[derive(Clone)]
struct Graded {
    slices: Vec<Series>,
    max_b: u32,
    max_weight: u32,
}

impl Graded {
    fn d(&self, indices: &[u32]) -> Graded {
        Graded { slices: self.slices.iter().map(|s| derivative(s, indices)).collect(), ..*self }
    }

    fn scale(&self, c: BigRational) -> Graded {
        Graded { slices: self.slices.iter().map(|s| s.scale(&c)).collect(), ..*self }
    }

    fn add(&self, other: &Graded) -> Graded {
        Graded { slices: self.slices.iter().zip(&other.slices).map(|(a, b)| a.add(b)).collect(), ..*self }
    }

    fn keep(&self, key: &Key) -> bool {
        key.t.size() <= self.max_b && key.t.weight() <= self.max_weight
    }

    fn mul(&self, other: &Graded) -> Graded {
        let n = self.slices.len();
        let mut slices = vec![Series::new(); n];
        for (a, sa) in self.slices.iter().enumerate() {
            for (b, sb) in other.slices.iter().enumerate().take(n - a) {
                let mut prod = Series::new();
                for (ka, ca) in sa.iter() {
                    for (kb, cb) in sb.iter() {
                        let key = ka.times(kb);
                        if self.keep(&key) {
                            prod.add_term(key, ca * cb);
                        }
                    }
                }
                slices[a + b].add_assign(&prod);
            }
        }
        Graded { slices, ..*self }
    }
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Left side minus right side of KP equation `equation` (1 to 4) for the
/// state folded at `x = 1`, at `y`-degree `y_order`, keeping terms with at
/// most `t_order` backbones.
pub fn kp_residual(state: &EvolutionState, equation: u8, y_order: usize, t_order: u32) -> Result<Series> {
    let tr = state.spec().truncation;
    if y_order > state.max_k() || (state.spec().kind != SpectrumKind::Vertex && t_order > tr.max_b) {
        return Err(Error::TruncationExceeded(format!("y^{y_order} t-degree {t_order}")));
    }
    let f = Graded {
        slices: state.slices()[..=y_order].iter().map(Series::at_x_one).collect(),
        max_b: t_order,
        max_weight: tr.max_backbone_weight,
    };
    let d = |ix: &[u32]| f.d(ix);
    let (lhs, rhs) = match equation {
        1 => (d(&[2, 2]), {
            let f11 = d(&[1, 1]);
            f11.mul(&f11).scale(frac(-1, 2)).add(&d(&[3, 1])).add(&d(&[1, 1, 1, 1]).scale(frac(-1, 12)))
        }),
        2 => (d(&[3, 2]), {
            d(&[1, 1])
                .mul(&d(&[2, 1]))
                .scale(frac(-1, 1))
                .add(&d(&[4, 1]))
                .add(&d(&[2, 1, 1, 1]).scale(frac(-1, 6)))
        }),
        3 => (d(&[4, 2]), {
            let (f11, f21, f111) = (d(&[1, 1]), d(&[2, 1]), d(&[1, 1, 1]));
            f21.mul(&f21)
                .scale(frac(-1, 2))
                .add(&f11.mul(&d(&[3, 1])).scale(frac(-1, 1)))
                .add(&d(&[5, 1]))
                .add(&f111.mul(&f111).scale(frac(1, 8)))
                .add(&f11.mul(&d(&[1, 1, 1, 1])).scale(frac(1, 12)))
                .add(&d(&[3, 1, 1, 1]).scale(frac(-1, 4)))
                .add(&d(&[1, 1, 1, 1, 1, 1]).scale(frac(1, 120)))
        }),
        4 => (d(&[3, 3]), {
            let (f11, f21, f111) = (d(&[1, 1]), d(&[2, 1]), d(&[1, 1, 1]));
            f11.mul(&f11)
                .mul(&f11)
                .scale(frac(1, 3))
                .add(&f21.mul(&f21).scale(frac(-1, 1)))
                .add(&f11.mul(&d(&[3, 1])).scale(frac(-1, 1)))
                .add(&d(&[5, 1]))
                .add(&f111.mul(&f111).scale(frac(1, 4)))
                .add(&f11.mul(&d(&[1, 1, 1, 1])).scale(frac(1, 3)))
                .add(&d(&[3, 1, 1, 1]).scale(frac(-1, 3)))
                .add(&d(&[1, 1, 1, 1, 1, 1]).scale(frac(1, 45)))
        }),
        _ => return Err(Error::InvalidConfig(format!("no KP equation {equation}"))),
    };
    let residual = lhs.add(&rhs.scale(frac(-1, 1)));
    let f = residual.slices[y_order].clone();
    Ok(f.filter(|k| k.t.size() <= t_order && k.t.weight() <= tr.max_backbone_weight))
}

/// Applies the boson `a_i`: `s_i` for `i > 0`, `0` for `i = 0`,
/// `|i| d/ds_{|i|}` for `i < 0`.
pub fn boson(i: i64, s: &Series) -> Series {
    match i {
        0 => Series::new(),
        i if i > 0 => s.mul(&Series::monomial(
            Key::new(0, Spectrum::unit(i as u32), Spectrum::new()),
            BigRational::from_integer(1.into()),
        )),
        i => s.derivative_s((-i) as u32).scale(&BigRational::from_integer((-i).into())),
    }
}

fn max_s_index(s: &Series) -> i64 {
    s.iter().filter_map(|(k, _)| k.s.max_index()).max().unwrap_or(0) as i64
}

/// `Lambda_m = (1/2) sum_i a_i a_{m-i}`, applied as written.
pub fn lambda(m: i64, s: &Series) -> Series {
    let bound = max_s_index(s) + m.abs() + 2;
    let mut out = Series::new();
    for i in -bound..=bound {
        let j = m - i;
        if j.abs() > bound {
            continue;
        }
        out.add_assign(&boson(i, &boson(j, s)));
    }
    out.scale(&frac(1, 2))
}

/// `M_m = (1/6) sum_{i,j} :a_i a_j a_{m-i-j}:`, normal ordered so that the
/// lowest index acts first.
pub fn cut_and_join(m: i64, s: &Series) -> Series {
    let top = max_s_index(s);
    let bound = m.abs() + 2 * top + 2;
    let mut out = Series::new();
    for i in -bound..=bound {
        for j in -bound..=bound {
            let k = m - i - j;
            if k.abs() > bound {
                continue;
            }
            let mut ix = [i, j, k];
            ix.sort_unstable();
            // Annihilators beyond the largest present index give zero.
            if ix[0] < -top {
                continue;
            }
            out.add_assign(&boson(ix[2], &boson(ix[1], &boson(ix[0], s))));
        }
    }
    out.scale(&frac(1, 6))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `L0 + L2 = s_0^2 d/ds_2 + s_0 Lambda_{-2} + M_{-2}`.
    Point,
    /// `K0 + K2 = M_2`.
    Length,
}

fn partitions(max_weight: u32) -> Vec<Spectrum> {
    fn rec(rest: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Spectrum>) {
        out.push(Spectrum::from_indices(cur.iter().copied()));
        for p in (1..=max_part.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_weight, max_weight, &mut Vec::new(), &mut out);
    out
}

/// Both sides of `which` applied to a single monomial.
pub fn identity_sides(which: Identity, monomial: &Series) -> (Series, Series) {
    match which {
        Identity::Point => {
            let lhs = operators::l0(monomial).add(&operators::l2(monomial));
            let s0 = Series::monomial(
                Key::new(0, Spectrum::unit(0), Spectrum::new()),
                BigRational::from_integer(1.into()),
            );
            let rhs = s0
                .mul(&s0)
                .mul(&monomial.derivative_s(2))
                .add(&s0.mul(&lambda(-2, monomial)))
                .add(&cut_and_join(-2, monomial));
            (lhs, rhs)
        }
        Identity::Length => {
            let lhs = operators::k0(monomial).add(&operators::k2(monomial));
            (lhs, cut_and_join(2, monomial))
        }
    }
}

/// True iff `which` holds on every monomial in `s_1, s_2, ...` of weight at
/// most `max_weight`, times `s_0^0 .. s_0^2` for the point identity.
pub fn operator_identity_check(which: Identity, max_weight: u32) -> bool {
    let s0_powers = match which {
        Identity::Point => 0..=2,
        Identity::Length => 0..=0,
    };
    let one = BigRational::from_integer(1.into());
    partitions(max_weight).into_iter().all(|p| {
        s0_powers.clone().all(|e| {
            let mut spec = p.clone();
            spec.add_to(0, e);
            let mono = Series::monomial(Key::new(0, spec, Spectrum::new()), one.clone());
            let (lhs, rhs) = identity_sides(which, &mono);
            lhs == rhs
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{init_state, ModelSpec, Variant};
    use crate::series::rat;

    fn mono(s: &str) -> Series {
        Series::monomial(Key::new(0, s.parse().unwrap(), Spectrum::new()), rat(1))
    }

    #[test]
    fn derivatives() {
        assert_eq!(partial_derivative(&mono("e0+2e1"), 1), mono("e0+e1").scale(&rat(2)));
        assert!(partial_derivative(&mono("2e1"), 3).is_empty());
        assert_eq!(derivative(&mono("2e2"), &[2, 2]), mono("").scale(&rat(2)));
    }

    #[test]
    fn identities_on_small_monomials() {
        let (l, r) = identity_sides(Identity::Point, &mono("e2"));
        assert_eq!(l, mono("2e0"));
        assert_eq!(r, mono("2e0"));
        let (l, r) = identity_sides(Identity::Point, &mono(""));
        assert!(l.is_empty() && r.is_empty());
        let (l, r) = identity_sides(Identity::Length, &mono("2e1"));
        assert_eq!(l, r);
    }

    #[test]
    fn linear_initial_conditions_solve_kp() {
        for kind in [SpectrumKind::Point, SpectrumKind::Length] {
            let st = init_state(ModelSpec::new(kind, Variant::Orientable, 0, 4, 3)).unwrap();
            for eq in 1..=4 {
                assert!(kp_residual(&st, eq, 0, 3).unwrap().is_empty());
            }
        }
    }
}
