//! Region-list generation, reproducing the reference generator exactly:
//! same region order, same corner order, for a monodromy with unit
//! boundary twist coefficients presented by a positive matrix.

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub a: i64,
    pub b: i64,
    pub n: i64,
    pub last: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionList {
    pub matrix: [i64; 4],
    pub derived: DerivedParams,
    pub regions: Vec<Vec<u32>>,
}

/// Bit-exact port of the reference program. Corner labels follow the
/// upstream convention: 0, 1, 2 are the contact intersections, the rest
/// number the remaining intersections curve by curve. The final region is
/// the basepoint region.
pub fn region_list(r: i64, s: i64, p: i64, q: i64) -> Result<RegionList> {
    if r * q - s * p != 1 {
        return input_err("matrix must have determinant 1");
    }
    if !(p > q && q > 0 && r >= 0 && s >= 0) {
        return input_err("need p > q > 0 and nonnegative top row");
    }
    let a = 1 + q + (r * q).div_euclid(p).div_euclid(2);
    let b = 1 + (p - q) + (r * (p - q)).div_euclid(p).div_euclid(2);
    let n = 1 + p + r.div_euclid(2);
    let last = 2 * n + q + s.div_euclid(2) + 2;
    let mut rlist: Vec<Vec<i64>> = vec![
        vec![3, 2, 2 * n + 1, n + a + 1, n + a + 2, 4],
        vec![n + 2, 2, last, a + 2, a + 3, n + 3],
        vec![2 * n + 1, 0, 3, 2 * n + 2],
        vec![last, 1, n + 2, last - 1],
        vec![b + n + 1, 0, n + 1, b + n + 2],
        vec![b + 2, 1, 2 * n, b + 3],
    ];
    for i in 0..(a - 1).max(0) {
        rlist.push(vec![i + 4, 2 * n + 3 + i, 2 * n + 2 + i, i + 3]);
        rlist.push(vec![n + 3 + i, last - 2 - i, last - 1 - i, n + 2 + i]);
    }
    for i in 0..(b - 3).max(0) {
        rlist.push(vec![i + 4, n + a + 2 + i, n + a + 3 + i, i + 5]);
        rlist.push(vec![n + 3 + i, a + 3 + i, a + 4 + i, n + 4 + i]);
    }
    for i in 0..(a - 3).max(0) {
        rlist.push(vec![b + 3 + i, 2 * n - i, 2 * n - 1 - i, b + 4 + i]);
    }
    rlist.push(vec![
        0,
        2 * n + 1,
        2,
        n + 2,
        1,
        b + 2,
        b + 1,
        2 * n,
        1,
        last,
        2,
        3,
        0,
        n + b + 1,
        n + b,
        n + 1,
    ]);
    let regions = rlist
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    u32::try_from(x).map_err(|_| {
                        crate::error::Error::Input("negative corner label generated".into())
                    })
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionList {
        matrix: [r, s, p, q],
        derived: DerivedParams { a, b, n, last },
        regions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_params_for_13_8_8_5() {
        let rl = region_list(13, 8, 8, 5).unwrap();
        assert_eq!(rl.derived, DerivedParams { a: 10, b: 6, n: 15, last: 41 });
        assert_eq!(rl.regions[0], vec![3, 2, 31, 26, 27, 4]);
        assert_eq!(rl.regions[1], vec![17, 2, 41, 12, 13, 18]);
    }

    #[test]
    fn derived_n_for_7_4_12_7() {
        let rl = region_list(7, 4, 12, 7).unwrap();
        assert_eq!(rl.derived.n, 16);
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(region_list(2, 1, 1, 1).is_err());
    }

    #[test]
    fn corner_counts() {
        let rl = region_list(13, 8, 8, 5).unwrap();
        let pts = (rl.derived.last + 1) as usize;
        let mut count = vec![0usize; pts];
        for region in &rl.regions {
            for &c in region {
                count[c as usize] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 4), "every point has four corners");
    }
}
