use num_traits::Zero;
use serde::Serialize;

use super::poly::QPoly;
use crate::error::InputError;
use crate::exact::rational::{format_rational, valuation, Rational};

/// A run of roots sharing one p-adic valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSegment {
    pub root_valuation: Rational,
    pub multiplicity: usize,
}

/// Root valuations of a polynomial, read off the lower convex hull of the
/// points `(i, v_p(a_i))`. Segments are sorted by increasing root valuation
/// and collinear edges are merged, so no valuation repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<NewtonSegment>,
}

impl NewtonPolygon {
    pub fn of(poly: &QPoly, p: u64) -> Result<Self, InputError> {
        if poly.is_zero() || poly.coeff(0).is_zero() {
            return Err(InputError::DivisibleByX);
        }
        let pts: Vec<(i64, i64)> = poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, valuation(c, p).unwrap()))
            .collect();
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for &pt in &pts {
            while hull.len() >= 2 {
                let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let mut segments: Vec<NewtonSegment> = hull
            .windows(2)
            .map(|w| {
                let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                NewtonSegment {
                    root_valuation: Rational::new((-dy).into(), dx.into()),
                    multiplicity: dx as usize,
                }
            })
            .collect();
        segments.reverse();
        Ok(NewtonPolygon { segments })
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.multiplicity).sum()
    }

    /// The common valuation when every root has the same one.
    pub fn single_valuation(&self) -> Option<&Rational> {
        match self.segments.as_slice() {
            [only] => Some(&only.root_valuation),
            _ => None,
        }
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Seg {
            valuation: String,
            multiplicity: usize,
        }
        let segs: Vec<Seg> = self
            .segments
            .iter()
            .map(|g| Seg {
                valuation: format_rational(&g.root_valuation),
                multiplicity: g.multiplicity,
            })
            .collect();
        segs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seg(n: i64, d: i64, mult: usize) -> NewtonSegment {
        NewtonSegment {
            root_valuation: Rational::new(n.into(), d.into()),
            multiplicity: mult,
        }
    }

    #[test]
    fn single_segments() {
        let np = NewtonPolygon::of(&QPoly::from_ints(&[-5, 0, 0, 0, 0, 1]), 5).unwrap();
        assert_eq!(np.segments, vec![seg(1, 5, 5)]);
        let np = NewtonPolygon::of(&QPoly::from_ints(&[-25, 0, 0, 0, 0, 1]), 5).unwrap();
        assert_eq!(np.segments, vec![seg(2, 5, 5)]);
        let np = NewtonPolygon::of(&QPoly::from_ints(&[1, 1, 0, 0, 0, 1]), 5).unwrap();
        assert_eq!(np.segments, vec![seg(0, 1, 5)]);
    }

    #[test]
    fn collinear_points_merge() {
        // 9 + 3x + x^2 over Q_3: points (0,2),(1,1),(2,0) are collinear.
        let np = NewtonPolygon::of(&QPoly::from_ints(&[9, 3, 1]), 3).unwrap();
        assert_eq!(np.segments, vec![seg(1, 1, 2)]);
    }

    #[test]
    fn factorizable_cases_match_root_valuations() {
        // (x - 3)(x - 9)(x - 1) over Q_3: root valuations 0, 1, 2.
        let f = QPoly::from_ints(&[-3, 1])
            .mul(&QPoly::from_ints(&[-9, 1]))
            .mul(&QPoly::from_ints(&[-1, 1]));
        let np = NewtonPolygon::of(&f, 3).unwrap();
        assert_eq!(np.segments, vec![seg(0, 1, 1), seg(1, 1, 1), seg(2, 1, 1)]);
        // (x - 1/5)(x^2 - 5) over Q_5: valuations -1 and 1/2 (twice).
        let g = QPoly::new(vec![Rational::new((-1).into(), 5.into()), Rational::from_integer(1.into())])
            .mul(&QPoly::from_ints(&[-5, 0, 1]));
        let np = NewtonPolygon::of(&g, 5).unwrap();
        assert_eq!(np.segments, vec![seg(-1, 1, 1), seg(1, 2, 2)]);
    }

    #[test]
    fn x_dividing_f_is_rejected() {
        assert_eq!(
            NewtonPolygon::of(&QPoly::from_ints(&[0, 1, 0, 1]), 3),
            Err(InputError::DivisibleByX)
        );
    }

    proptest! {
        #[test]
        fn multiplicities_sum_to_degree(
            roots in proptest::collection::vec((1i64..30, 0u32..4), 1..6),
            p in prop::sample::select(vec![3u64, 5, 7]),
        ) {
            // ∏ (x - c·p^e): root valuations are v_p(c) + e.
            let mut f = QPoly::from_ints(&[1]);
            let mut expected: Vec<Rational> = Vec::new();
            for &(c, e) in &roots {
                let r = c * (p as i64).pow(e);
                f = f.mul(&QPoly::from_ints(&[-r, 1]));
                expected.push(Rational::from_integer(valuation(&Rational::from_integer(r.into()), p).unwrap().into()));
            }
            let np = NewtonPolygon::of(&f, p).unwrap();
            prop_assert_eq!(np.degree(), roots.len());
            let mut got: Vec<Rational> = np
                .segments
                .iter()
                .flat_map(|s| std::iter::repeat_n(s.root_valuation.clone(), s.multiplicity))
                .collect();
            expected.sort();
            got.sort();
            prop_assert_eq!(got, expected);
            for w in np.segments.windows(2) {
                prop_assert!(w[0].root_valuation < w[1].root_valuation);
            }
        }
    }
}
