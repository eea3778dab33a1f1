#![allow(dead_code)]

use std::sync::Arc;

use gauss_css::{GaussInt, LinearCode, Modulus, Polynomial, PrimeField};

pub fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

pub fn gv(pairs: &[(i64, i64)]) -> Vec<GaussInt> {
    pairs.iter().map(|&(a, b)| g(a, b)).collect()
}

pub fn field(re: i64, im: i64) -> Arc<PrimeField> {
    PrimeField::new(g(re, im)).unwrap()
}

pub fn poly_code(f: &Arc<PrimeField>, text: &str, n: usize, m: Modulus) -> LinearCode {
    LinearCode::from_generator_poly(&Polynomial::parse(f, text).unwrap(), n, m).unwrap()
}

pub fn example1() -> LinearCode {
    LinearCode::from_generator_matrix(&field(4, 1), &[gv(&[(-1, 1), (1, 0)])]).unwrap()
}

pub const G1: &str = "1+2i, -1+1i, -1i, 1";
pub const G2: &str = "1-i, 2-i, -1+i, -i, -i, 1";

/// Nested pair from the worked `[[8,2,5]]` example.
pub fn example2() -> (LinearCode, LinearCode) {
    let f = field(4, 1);
    (poly_code(&f, G1, 8, Modulus::PlusOne), poly_code(&f, G2, 8, Modulus::PlusOne))
}

/// `p = 5`, `n = 2`: `C1` the full space, `C2 = span{(1, 1)}`.
pub fn p5_diagonal() -> (LinearCode, LinearCode) {
    let f = field(2, 1);
    let c2 = LinearCode::from_generator_matrix(&f, &[gv(&[(1, 0), (1, 0)])]).unwrap();
    (LinearCode::full(&f, 2), c2)
}

/// `p = 5`, `n = 4`, modulus `x^4 - 1`: `C1 = <(x-1)(x-i)>`, `C2 = <(x-i)(x^2-1)>`.
/// `C1` has distance 3, so single X errors are correctable.
pub fn p5_pair_x() -> (LinearCode, LinearCode) {
    let f = field(2, 1);
    let c1 = LinearCode::from_generator_poly(
        &Polynomial::from_roots(&f, &[g(1, 0), g(0, 1)]),
        4,
        Modulus::MinusOne,
    )
    .unwrap();
    let c2 = poly_code(&f, "i, -1, -i, 1", 4, Modulus::MinusOne);
    (c1, c2)
}

/// `p = 5`, `n = 4`, modulus `x^4 - 1`: `C1 = <x-1>`, `C2 = <(x-1)(x-i)>`.
/// `C2⊥` has distance 3, so single Z errors are correctable.
pub fn p5_pair_z() -> (LinearCode, LinearCode) {
    let f = field(2, 1);
    let c1 = LinearCode::from_generator_poly(&Polynomial::from_roots(&f, &[g(1, 0)]), 4, Modulus::MinusOne).unwrap();
    let c2 = LinearCode::from_generator_poly(
        &Polynomial::from_roots(&f, &[g(1, 0), g(0, 1)]),
        4,
        Modulus::MinusOne,
    )
    .unwrap();
    (c1, c2)
}

/// All vectors of `G_π^n` in label order.
pub fn all_vectors(f: &PrimeField, n: usize) -> Vec<Vec<GaussInt>> {
    let p = f.p() as usize;
    (0..p.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let l = idx % p;
                    idx /= p;
                    f.residues()[l]
                })
                .collect()
        })
        .collect()
}

/// Minimum weights of a code by scanning the whole ambient space and testing membership.
pub fn brute_distances(code: &LinearCode) -> (u32, u32) {
    let mut best = (u32::MAX, u32::MAX);
    for v in all_vectors(code.field(), code.n()) {
        if v.iter().all(|c| c.is_zero()) || !code.contains(&v).unwrap() {
            continue;
        }
        let (wm, wh) = weights(&v);
        best = (best.0.min(wm), best.1.min(wh));
    }
    best
}

/// Mannheim and Hamming weight of a vector of canonical residues.
pub fn weights(v: &[GaussInt]) -> (u32, u32) {
    let wm = v.iter().map(|c| (c.re.abs() + c.im.abs()) as u32).sum();
    let wh = v.iter().filter(|c| !c.is_zero()).count() as u32;
    (wm, wh)
}

/// Minimum weights over all nonzero combinations of `rows`, accumulated on labels with
/// integer arithmetic mod `p`.
pub fn span_distances(f: &PrimeField, rows: &[Vec<GaussInt>]) -> (u32, u32) {
    let p = f.p() as u64;
    let wt: Vec<u32> = f.residues().iter().map(|&r| weights(&[r]).0).collect();
    let rows: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&c| f.label(c) as u64).collect()).collect();
    let n = rows[0].len();
    let mut best = (u32::MAX, u32::MAX);
    let mut word = vec![0u64; n];
    for mut idx in 1..p.pow(rows.len() as u32) {
        word.iter_mut().for_each(|w| *w = 0);
        for row in &rows {
            let m = idx % p;
            idx /= p;
            for (w, &r) in word.iter_mut().zip(row) {
                *w = (*w + m * r) % p;
            }
        }
        let wm: u32 = word.iter().map(|&l| wt[l as usize]).sum();
        let wh = word.iter().filter(|&&l| l != 0).count() as u32;
        if wh > 0 {
            best = (best.0.min(wm), best.1.min(wh));
        }
    }
    best
}

/// `reduce` computed with exact rational rounding, independent of the library.
pub fn reduce_oracle(pi: GaussInt, z: GaussInt) -> GaussInt {
    let p = (pi.re * pi.re + pi.im * pi.im) as i128;
    let (a, b) = (z.re as i128, z.im as i128);
    let (c, d) = (pi.re as i128, -pi.im as i128);
    let (num_re, num_im) = (a * c - b * d, a * d + b * c);
    let round = |x: i128| -> i128 {
        let q = x.div_euclid(p);
        let r = x.rem_euclid(p);
        if 2 * r > p {
            q + 1
        } else {
            q
        }
    };
    let (qr, qi) = (round(num_re), round(num_im));
    let (pr, pim) = (pi.re as i128, pi.im as i128);
    g((a - (qr * pr - qi * pim)) as i64, (b - (qr * pim + qi * pr)) as i64)
}
