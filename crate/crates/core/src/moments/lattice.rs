//! Lattice-point sums over dilates `mP ∩ ℤ^d` and their Richardson limits.
//!
//! Enumeration is a bounding-box scan with exact membership, organized by
//! columns: the first `d - 1` coordinates are scanned, and for each column the
//! admissible range of the last coordinate is an integer interval obtained
//! exactly from the facet inequalities. Column sums of `⟨u, v⟩` and
//! `⟨u, v⟩²` then have closed forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactgeom::polytope::{facets_from_vertices, VPolytope};
use crate::exactgeom::rational::{lcm_denominators, to_f64, Rational, VecQ};

/// One dilate `m` of the series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRow {
    pub m: u64,
    /// `N_m = #(mP ∩ ℤ^d)`
    pub count: u64,
    /// `w_m = Σ ⟨u, v⟩`
    pub w: Rational,
    /// `q_m = Σ ⟨u, v⟩²`
    pub q: Rational,
    /// `min ⟨u, v⟩` over the lattice points
    pub lambda_min: Rational,
}

impl SeriesRow {
    /// `w_m / (m N_m)`, tends to `⟨b_P, v⟩`.
    pub fn first_moment(&self) -> Rational {
        &self.w / Rational::from_integer(BigInt::from(self.m) * BigInt::from(self.count))
    }

    /// `q_m / (m² N_m)`, tends to `vᵀ(Σ + b bᵀ)v`.
    pub fn second_moment(&self) -> Rational {
        let m = BigInt::from(self.m);
        &self.q / Rational::from_integer(&m * &m * BigInt::from(self.count))
    }

    /// `λ_min,m / m`
    pub fn lambda_ratio(&self) -> Rational {
        &self.lambda_min / Rational::from_integer(BigInt::from(self.m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSeries {
    /// Least common multiple of the vertex denominators; rows are at its multiples.
    pub r: u64,
    pub direction: VecQ,
    pub rows: Vec<SeriesRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtrapolationResult {
    pub f0_est: Rational,
    pub q0_est: Rational,
    /// `w_m/(mN_m) - f0_est` for the last three rows, oldest first.
    pub residuals: Vec<Rational>,
    /// `q_m/(m²N_m) - q0_est` for the last three rows, oldest first.
    pub q_residuals: Vec<Rational>,
}

/// Largest intermediate magnitude tolerated in the i128 column sums.
const I128_BUDGET: f64 = 1e36;

struct Facet {
    normal: Vec<i128>,
    num: i128,
    den: i128,
}

/// Lattice sums for `m = r, 2r, …` up to `m_max`, one row per dilate.
///
/// Rows are computed in parallel and returned in increasing `m`; the values do
/// not depend on scheduling.
pub fn lattice_series(p: &VPolytope, v: &VecQ, m_max: u64) -> Result<LatticeSeries> {
    p.check_direction(v)?;
    let h = facets_from_vertices(p)?;
    let d = p.ambient_dim();
    let r = lcm_denominators(p.vertices().iter().flat_map(|u| u.iter()))
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("vertex denominators too large".into()))?;
    if m_max < 3 * r {
        return Err(Error::InsufficientSeries(format!(
            "m_max = {m_max} but at least 3r = {} is required",
            3 * r
        )));
    }

    let s = lcm_denominators(v.iter());
    let big = |x: &BigInt| {
        x.to_i128()
            .ok_or_else(|| Error::InvalidInput("coordinate out of range".into()))
    };
    let scaled: Vec<i128> = v
        .iter()
        .map(|x| big(&(x * Rational::from_integer(s.clone())).to_integer()))
        .collect::<Result<_>>()?;
    let facets: Vec<Facet> = h
        .constraints()
        .iter()
        .map(|f| {
            Ok(Facet {
                normal: f
                    .normal
                    .iter()
                    .map(|x| big(&x.to_integer()))
                    .collect::<Result<_>>()?,
                num: big(f.offset.numer())?,
                den: big(f.offset.denom())?,
            })
        })
        .collect::<Result<_>>()?;
    let bounds: Vec<(Rational, Rational)> = (0..d)
        .map(|k| {
            let it = p.vertices().iter().map(|u| u[k].clone());
            (it.clone().min().unwrap(), it.max().unwrap())
        })
        .collect();

    let extent = bounds
        .iter()
        .map(|(lo, hi)| to_f64(lo).abs().max(to_f64(hi).abs()))
        .fold(0.0f64, f64::max)
        * m_max as f64
        + 1.0;
    let vmax = scaled
        .iter()
        .map(|x| x.unsigned_abs() as f64)
        .fold(0.0, f64::max);
    let pairing = d as f64 * extent * vmax;
    let points = (2.0 * extent + 1.0).powi(d as i32);
    if pairing * pairing * points > I128_BUDGET {
        return Err(Error::InvalidInput(format!(
            "dilate {m_max} is too large for exact machine-integer enumeration"
        )));
    }

    let ms: Vec<u64> = (1..=m_max / r).map(|k| k * r).collect();
    let rows = ms
        .par_iter()
        .map(|&m| scan_dilate(m, &facets, &bounds, &scaled, &s))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeSeries {
        r,
        direction: v.clone(),
        rows,
    })
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&(-a), &b)
}

/// `Σ_{z=lo}^{hi} z²` via the telescoping cubic `G(n) = n(n+1)(2n+1)/6`.
fn sum_squares(lo: i128, hi: i128) -> i128 {
    let g = |n: i128| n * (n + 1) * (2 * n + 1) / 6;
    g(hi) - g(lo - 1)
}

fn scan_dilate(
    m: u64,
    facets: &[Facet],
    bounds: &[(Rational, Rational)],
    v: &[i128],
    s: &BigInt,
) -> Result<SeriesRow> {
    let d = v.len();
    let mq = Rational::from_integer(BigInt::from(m));
    let ranges: Vec<(i128, i128)> = bounds
        .iter()
        .map(|(lo, hi)| {
            (
                (lo * &mq).floor().to_integer().to_i128().unwrap(),
                (hi * &mq).ceil().to_integer().to_i128().unwrap(),
            )
        })
        .collect();
    let m = m as i128;
    // ⟨u, n⟩ ≥ ⌈m·offset⌉ for integral u
    let rhs: Vec<i128> = facets.iter().map(|f| ceil_div(m * f.num, f.den)).collect();

    let (mut count, mut sw, mut sq) = (0i128, 0i128, 0i128);
    let mut lmin: Option<i128> = None;
    let outer = &ranges[..d - 1];
    let mut x: Vec<i128> = outer.iter().map(|r| r.0).collect();
    let (zlo0, zhi0) = ranges[d - 1];
    let vd = v[d - 1];
    'columns: loop {
        let (mut lo, mut hi) = (zlo0, zhi0);
        let mut feasible = true;
        for (f, &b) in facets.iter().zip(&rhs) {
            let partial: i128 = f.normal[..d - 1].iter().zip(&x).map(|(n, xi)| n * xi).sum();
            let need = b - partial;
            let nd = f.normal[d - 1];
            match nd.signum() {
                1 => lo = lo.max(ceil_div(need, nd)),
                -1 => hi = hi.min(Integer::div_floor(&need, &nd)),
                _ => {
                    if need > 0 {
                        feasible = false;
                        break;
                    }
                }
            }
        }
        if feasible && lo <= hi {
            let k = hi - lo + 1;
            let a: i128 = v[..d - 1].iter().zip(&x).map(|(vi, xi)| vi * xi).sum();
            let sz = (lo + hi) * k / 2;
            let szz = sum_squares(lo, hi);
            count += k;
            sw += k * a + vd * sz;
            sq += k * a * a + 2 * a * vd * sz + vd * vd * szz;
            let col_min = a + if vd >= 0 { vd * lo } else { vd * hi };
            lmin = Some(lmin.map_or(col_min, |l| l.min(col_min)));
        }
        // odometer over the outer coordinates
        for i in 0..d - 1 {
            if x[i] < outer[i].1 {
                x[i] += 1;
                continue 'columns;
            }
            x[i] = outer[i].0;
        }
        break;
    }

    let lmin =
        lmin.ok_or_else(|| Error::Certificate(format!("dilate {m} has no lattice points")))?;
    let sq_scale = Rational::from_integer(s * s);
    let s = Rational::from_integer(s.clone());
    let int = |x: i128| Rational::from_integer(BigInt::from(x));
    Ok(SeriesRow {
        m: m as u64,
        count: count as u64,
        w: int(sw) / &s,
        q: int(sq) / sq_scale,
        lambda_min: int(lmin) / s,
    })
}

/// Two-point Richardson elimination of the `1/m` term on the last two rows.
///
/// With `F(m) = F₀ + F₁/m + O(m⁻²)`, `(m₂F(m₂) − m₁F(m₁))/(m₂ − m₁) = F₀ + O(1/(m₁m₂))`.
pub fn extrapolate(s: &LatticeSeries) -> Result<ExtrapolationResult> {
    let n = s.rows.len();
    if n < 3 {
        return Err(Error::InsufficientSeries(format!(
            "{n} rows, at least 3 are required"
        )));
    }
    let richardson = |f: &dyn Fn(&SeriesRow) -> Rational| {
        let (a, b) = (&s.rows[n - 2], &s.rows[n - 1]);
        let (m1, m2) = (
            Rational::from_integer(a.m.into()),
            Rational::from_integer(b.m.into()),
        );
        (&m2 * f(b) - &m1 * f(a)) / (m2 - m1)
    };
    let f0_est = richardson(&SeriesRow::first_moment);
    let q0_est = richardson(&SeriesRow::second_moment);
    let tail = &s.rows[n - 3..];
    Ok(ExtrapolationResult {
        residuals: tail.iter().map(|r| r.first_moment() - &f0_est).collect(),
        q_residuals: tail.iter().map(|r| r.second_moment() - &q0_est).collect(),
        f0_est,
        q0_est,
    })
}

impl ExtrapolationResult {
    /// Whether `|residual|` is non-increasing along the last three rows.
    pub fn residuals_settle(&self) -> bool {
        use num_traits::Signed;
        let ok = |r: &[Rational]| r.windows(2).all(|w| w[1].abs() <= w[0].abs());
        ok(&self.residuals) && ok(&self.q_residuals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::polytope::HPolytope;
    use crate::exactgeom::rational::{q, qr};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn poly(v: &[&[i64]]) -> VPolytope {
        VPolytope::from_points(v.iter().map(|p| VecQ::from_ints(p)).collect()).unwrap()
    }

    /// Per-point membership over the bounding box, all in rationals.
    fn brute_force(p: &VPolytope, v: &VecQ, m: u64) -> SeriesRow {
        let h: HPolytope = facets_from_vertices(p).unwrap();
        let d = p.ambient_dim();
        let mq = Rational::from_integer(m.into());
        let ranges: Vec<(i64, i64)> = (0..d)
            .map(|k| {
                let it = p.vertices().iter().map(|u| &u[k] * &mq);
                (
                    it.clone()
                        .min()
                        .unwrap()
                        .floor()
                        .to_integer()
                        .to_i64()
                        .unwrap(),
                    it.max().unwrap().ceil().to_integer().to_i64().unwrap(),
                )
            })
            .collect();
        let mut pts: Vec<Vec<i64>> = vec![vec![]];
        for &(lo, hi) in &ranges {
            pts = pts
                .into_iter()
                .flat_map(|p| (lo..=hi).map(move |z| [p.clone(), vec![z]].concat()))
                .collect();
        }
        let (mut count, mut w, mut qq, mut lmin) = (0u64, q(0), q(0), None::<Rational>);
        for u in pts {
            let u = VecQ::from_ints(&u);
            if !h.contains(&u.scale(&mq.recip())) {
                continue;
            }
            let x = u.dot(v);
            count += 1;
            w += &x;
            qq += &x * &x;
            lmin = Some(lmin.map_or(x.clone(), |l| l.min(x)));
        }
        SeriesRow {
            m,
            count,
            w,
            q: qq,
            lambda_min: lmin.unwrap(),
        }
    }

    #[test]
    fn p2_triangle_has_ten_points() {
        let p = poly(&[&[-1, -1], &[2, -1], &[-1, 2]]);
        let s = lattice_series(&p, &VecQ::from_ints(&[1, 0]), 3).unwrap();
        assert_eq!(s.r, 1);
        assert_eq!(s.rows[0].count, 10);
        assert!(s.rows.iter().all(|r| r.w.is_zero()));
        let e = extrapolate(&s).unwrap();
        assert_eq!(e.f0_est, q(0));
    }

    #[test]
    fn unit_square_corners() {
        let p = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let s = lattice_series(&p, &VecQ::from_ints(&[1, 1]), 3).unwrap();
        let row = &s.rows[0];
        assert_eq!((row.count, row.w.clone(), row.q.clone()), (4, q(4), q(6)));
        assert_eq!(row.lambda_min, q(0));
    }

    #[test]
    fn unit_square_centered_second_moment() {
        let p = poly(&[&[-1, -1], &[1, -1], &[-1, 1], &[1, 1]])
            .dilate(&qr(1, 2))
            .unwrap();
        assert_eq!(p.vertices()[0], VecQ::new(vec![qr(-1, 2), qr(-1, 2)]));
        let s = lattice_series(&p, &VecQ::from_ints(&[1, 0]), 120).unwrap();
        assert_eq!(s.r, 2);
        let e = extrapolate(&s).unwrap();
        let err = crate::exactgeom::rational::to_f64(&(&e.q0_est - qr(1, 12))).abs();
        assert!(err < 1e-3, "{err}");
    }

    #[test]
    fn p112_first_moment_converges() {
        let p = poly(&[&[-1, -1], &[-1, 1], &[3, -1]]);
        let s = lattice_series(&p, &VecQ::from_ints(&[0, -1]), 60).unwrap();
        let e = extrapolate(&s).unwrap();
        let err = crate::exactgeom::rational::to_f64(&(&e.f0_est - qr(1, 3))).abs();
        assert!(err < 1e-3, "{err}");
        assert!(e.residuals_settle());
    }

    #[test]
    fn fractional_vertices_use_dilation_index() {
        // P(1,1,3): vertex (-1, 2/3)
        let p = VPolytope::from_points(vec![
            VecQ::from_ints(&[-1, -1]),
            VecQ::from_ints(&[4, -1]),
            VecQ::new(vec![q(-1), qr(2, 3)]),
        ])
        .unwrap();
        let v = VecQ::from_ints(&[2, -1]);
        let s = lattice_series(&p, &v, 12).unwrap();
        assert_eq!(s.r, 3);
        assert_eq!(
            s.rows.iter().map(|r| r.m).collect::<Vec<_>>(),
            vec![3, 6, 9, 12]
        );
        let min = p.support_min(&v).unwrap();
        for row in &s.rows {
            assert_eq!(row.lambda_ratio(), min);
            assert_eq!(*row, brute_force(&p, &v, row.m));
        }
    }

    #[test]
    fn three_dimensional_scan_matches_brute_force() {
        let p = poly(&[&[-1, -1, -1], &[3, -1, -1], &[-1, 3, -1], &[-1, -1, 1]]);
        let v = VecQ::new(vec![qr(1, 2), q(-1), q(3)]);
        let s = lattice_series(&p, &v, 4).unwrap();
        for row in &s.rows {
            assert_eq!(*row, brute_force(&p, &v, row.m));
        }
    }

    #[test]
    fn too_short_series_rejected() {
        let p = poly(&[&[-1, -1], &[-1, 1], &[3, -1]]);
        assert!(matches!(
            lattice_series(&p, &VecQ::from_ints(&[1, 0]), 2),
            Err(Error::InsufficientSeries(_))
        ));
        let s = LatticeSeries {
            r: 1,
            direction: VecQ::from_ints(&[1, 0]),
            rows: vec![],
        };
        assert!(matches!(extrapolate(&s), Err(Error::InsufficientSeries(_))));
    }

    #[test]
    fn one_dimensional_segment() {
        let p = VPolytope::from_points(vec![VecQ::new(vec![qr(-1, 2)]), VecQ::from_ints(&[1])])
            .unwrap();
        let v = VecQ::from_ints(&[1]);
        let s = lattice_series(&p, &v, 6).unwrap();
        for row in &s.rows {
            assert_eq!(*row, brute_force(&p, &v, row.m));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn column_scan_agrees_with_membership_oracle(
            pts in proptest::collection::vec((-3i64..=3, -3i64..=3), 5),
            v in (-4i64..=4, -4i64..=4),
            den in 1i64..=3,
        ) {
            let pts: Vec<VecQ> = pts
                .iter()
                .map(|&(x, y)| VecQ::new(vec![qr(x, den), qr(y, 1)]))
                .collect();
            prop_assume!(v != (0, 0));
            if let Ok(p) = VPolytope::from_points(pts) {
                prop_assume!(p.is_full_dimensional());
                let v = VecQ::from_ints(&[v.0, v.1]);
                let s = lattice_series(&p, &v, 3 * den as u64).unwrap();
                for row in &s.rows {
                    prop_assert_eq!(row, &brute_force(&p, &v, row.m));
                }
            }
        }
    }
}
