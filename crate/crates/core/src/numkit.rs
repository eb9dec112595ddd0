//! Small dense numerical kernels: a nonsymmetric eigensolver, characteristic
//! polynomials, a real-coefficient quartic solver and bisection.
//!
//! Everything here works on matrices of dimension at most [`MAX_DIM`] and is
//! deterministic: identical inputs give bit-identical outputs.

use nalgebra::DMatrix;

use crate::error::{KiteError, Result};

pub use num_complex::Complex64 as Complex;

/// Largest matrix dimension the kernels accept.
pub const MAX_DIM: usize = 16;

/// All eigenvalues of a real square matrix (n <= 16).
///
/// Balancing, reduction to upper Hessenberg form by stabilized elimination,
/// then Francis double-shift QR. The result is sorted by real part, then
/// imaginary part.
pub fn eig_dense(matrix: &DMatrix<f64>) -> Result<Vec<Complex>> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(KiteError::EigenFailure(format!(
            "matrix is {}x{}, not square",
            n,
            matrix.ncols()
        )));
    }
    if n > MAX_DIM {
        return Err(KiteError::EigenFailure(format!(
            "dimension {n} exceeds {MAX_DIM}"
        )));
    }
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(KiteError::EigenFailure("non-finite entry".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| matrix[(i, j)]).collect())
        .collect();
    balance(&mut a);
    to_hessenberg(&mut a);
    let mut eig = hessenberg_qr(&mut a)?;
    eig.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(eig)
}

fn balance(a: &mut [Vec<f64>]) {
    const RADIX: f64 = 2.0;
    let n = a.len();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a[i][j] *= ginv;
                }
                for row in a.iter_mut() {
                    row[i] *= f;
                }
            }
        }
    }
}

fn to_hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    if n < 3 {
        return;
    }
    for m in 1..n - 1 {
        let mut x = 0.0f64;
        let mut piv = m;
        for j in m..n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                piv = j;
            }
        }
        if piv != m {
            a.swap(piv, m);
            for row in a.iter_mut() {
                row.swap(piv, m);
            }
        }
        if x != 0.0 {
            for i in m + 1..n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..n {
                        a[i][j] -= y * a[m][j];
                    }
                    for row in a.iter_mut() {
                        row[m] += y * row[i];
                    }
                }
            }
        }
    }
    for i in 2..n {
        for j in 0..i - 1 {
            a[i][j] = 0.0;
        }
    }
}

fn hessenberg_qr(a: &mut [Vec<f64>]) -> Result<Vec<Complex>> {
    let n = a.len();
    let max_total = 100 * n;
    let mut wri = vec![Complex::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for (i, row) in a.iter().enumerate() {
        for v in row.iter().skip(i.saturating_sub(1)) {
            anorm += v.abs();
        }
    }

    let mut total = 0usize;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0usize;
        loop {
            let nu = nn as usize;
            // look for a single small subdiagonal element
            let mut l = nu;
            while l > 0 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() <= f64::EPSILON * s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[nu][nu];
            if l == nu {
                wri[nu] = Complex::new(x + t, 0.0);
                nn -= 1;
            } else {
                let mut y = a[nu - 1][nu - 1];
                let mut w = a[nu][nu - 1] * a[nu - 1][nu];
                if l == nu - 1 {
                    let p = 0.5 * (y - x);
                    let q = p * p + w;
                    let mut z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + z.copysign(p);
                        let hi = x + z;
                        let lo = if z != 0.0 { x - w / z } else { hi };
                        wri[nu - 1] = Complex::new(hi, 0.0);
                        wri[nu] = Complex::new(lo, 0.0);
                    } else {
                        wri[nu] = Complex::new(x + p, -z);
                        wri[nu - 1] = Complex::new(x + p, z);
                    }
                    nn -= 2;
                } else {
                    if total >= max_total {
                        return Err(KiteError::NoConvergence(total));
                    }
                    if its > 0 && its % 10 == 0 {
                        // exceptional shift
                        t += x;
                        for (i, row) in a.iter_mut().enumerate().take(nu + 1) {
                            row[i] -= x;
                        }
                        let s = a[nu][nu - 1].abs() + a[nu - 1][nu - 2].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    total += 1;
                    francis_step(a, l, nu, x, y, w);
                }
            }
            if nn < 0 || l + 1 >= nn as usize {
                break;
            }
        }
    }
    Ok(wri)
}

fn francis_step(a: &mut [Vec<f64>], l: usize, nn: usize, x: f64, y: f64, w: f64) {
    let (mut p, mut q, mut r);
    let mut m = nn - 2;
    loop {
        let z = a[m][m];
        let rr = x - z;
        let ss = y - z;
        p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
        q = a[m + 1][m + 1] - z - rr - ss;
        r = a[m + 2][m + 1];
        let s = p.abs() + q.abs() + r.abs();
        p /= s;
        q /= s;
        r /= s;
        if m == l {
            break;
        }
        let u = a[m][m - 1].abs() * (q.abs() + r.abs());
        let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
        if u <= f64::EPSILON * v {
            break;
        }
        m -= 1;
    }
    for i in m..nn - 1 {
        a[i + 2][i] = 0.0;
        if i != m {
            a[i + 2][i - 1] = 0.0;
        }
    }
    let mut x = 0.0;
    for k in m..nn {
        if k != m {
            p = a[k][k - 1];
            q = a[k + 1][k - 1];
            r = if k + 1 != nn { a[k + 2][k - 1] } else { 0.0 };
            x = p.abs() + q.abs() + r.abs();
            if x != 0.0 {
                p /= x;
                q /= x;
                r /= x;
            }
        }
        let s = (p * p + q * q + r * r).sqrt().copysign(p);
        if s == 0.0 {
            continue;
        }
        if k == m {
            if l != m {
                a[k][k - 1] = -a[k][k - 1];
            }
        } else {
            a[k][k - 1] = -s * x;
        }
        p += s;
        let xx = p / s;
        let yy = q / s;
        let zz = r / s;
        q /= p;
        r /= p;
        for j in k..=nn {
            let mut pp = a[k][j] + q * a[k + 1][j];
            if k + 1 != nn {
                pp += r * a[k + 2][j];
                a[k + 2][j] -= pp * zz;
            }
            a[k + 1][j] -= pp * yy;
            a[k][j] -= pp * xx;
        }
        let mmin = nn.min(k + 3);
        for row in a.iter_mut().take(mmin + 1).skip(l) {
            let mut pp = xx * row[k] + yy * row[k + 1];
            if k + 1 != nn {
                pp += zz * row[k + 2];
                row[k + 2] -= pp * r;
            }
            row[k + 1] -= pp * q;
            row[k] -= pp;
        }
    }
}

/// Characteristic polynomial det(sI - A), monic, highest power first
/// (length n + 1), by the Faddeev-LeVerrier recursion.
pub fn char_poly(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "char_poly needs a square matrix");
    let mut coeffs = vec![0.0; n + 1];
    coeffs[0] = 1.0;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 1..=n {
        m = a * &m;
        for i in 0..n {
            m[(i, i)] += coeffs[k - 1];
        }
        let am = a * &m;
        coeffs[k] = -am.trace() / k as f64;
    }
    coeffs
}

/// Evaluate a real polynomial (highest power first) at a complex point.
pub fn poly_eval(coeffs: &[f64], z: Complex) -> Complex {
    coeffs
        .iter()
        .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn poly_eval_deriv(coeffs: &[f64], z: Complex) -> (Complex, Complex) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of c0 μ⁴ + c1 μ³ + c2 μ² + c3 μ + c4 (c0 != 0).
///
/// Ferrari's method through the resolvent cubic, followed by Newton
/// polishing of every root against the original polynomial. Roots come out
/// as two pairs, each either two reals or an exact conjugate pair.
pub fn solve_quartic_real_coeffs(c: [f64; 5]) -> [Complex; 4] {
    assert!(c[0] != 0.0, "leading coefficient must be nonzero");
    let a = c[1] / c[0];
    let b = c[2] / c[0];
    let cc = c[3] / c[0];
    let d = c[4] / c[0];
    let monic = [1.0, a, b, cc, d];

    // t⁴ + p t² + q t + r with μ = t - a/4
    let a2 = a * a;
    let p = b - 3.0 * a2 / 8.0;
    let q = cc - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * cc / 4.0 + a2 * b / 16.0 - 3.0 * a2 * a2 / 256.0;
    let shift = -a / 4.0;

    let scale = 1.0 + p.abs() + q.abs().sqrt() + r.abs().sqrt();
    let pairs: [[Complex; 2]; 2] = if q.abs() <= 1e-14 * scale * scale {
        // biquadratic in t
        let disc = Complex::new(p * p - 4.0 * r, 0.0).sqrt();
        let t2a = (Complex::new(-p, 0.0) + disc) * 0.5;
        let t2b = (Complex::new(-p, 0.0) - disc) * 0.5;
        [sqrt_pair(t2a), sqrt_pair(t2b)]
    } else {
        let y = resolvent_root(p, q, r).max(0.0);
        let s = y.sqrt();
        let half = (p + y) / 2.0;
        let off = q / (2.0 * s);
        [
            real_quadratic(s, half - off),
            real_quadratic(-s, half + off),
        ]
    };

    let mut roots = [Complex::new(0.0, 0.0); 4];
    for (k, pair) in pairs.iter().enumerate() {
        let z0 = pair[0] + shift;
        let z1 = pair[1] + shift;
        let conj_pair = z0.im != 0.0 && (z0.im + z1.im).abs() <= 1e-300 + 1e-15 * z0.im.abs();
        if conj_pair {
            let z = polish(&monic, z0);
            roots[2 * k] = z;
            roots[2 * k + 1] = z.conj();
        } else {
            roots[2 * k] = polish(&monic, z0);
            roots[2 * k + 1] = polish(&monic, z1);
        }
    }
    roots
}

// ±sqrt of a complex number, keeping exact conjugate/real structure when the
// argument is real.
fn sqrt_pair(w: Complex) -> [Complex; 2] {
    if w.im == 0.0 {
        if w.re >= 0.0 {
            let s = w.re.sqrt();
            [Complex::new(s, 0.0), Complex::new(-s, 0.0)]
        } else {
            let s = (-w.re).sqrt();
            [Complex::new(0.0, s), Complex::new(0.0, -s)]
        }
    } else {
        let s = w.sqrt();
        [s, -s]
    }
}

// Roots of t² + b t + c with real coefficients.
fn real_quadratic(b: f64, c: f64) -> [Complex; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let qq = -0.5 * (b + disc.sqrt().copysign(b));
        if qq == 0.0 {
            return [Complex::new(0.0, 0.0); 2];
        }
        [Complex::new(qq, 0.0), Complex::new(c / qq, 0.0)]
    } else {
        let re = -0.5 * b;
        let im = 0.5 * (-disc).sqrt();
        [Complex::new(re, im), Complex::new(re, -im)]
    }
}

// Largest real root of y³ + 2p y² + (p² - 4r) y - q².
fn resolvent_root(p: f64, q: f64, r: f64) -> f64 {
    let ca = 2.0 * p;
    let cb = p * p - 4.0 * r;
    let cc = -q * q;
    let y = largest_real_cubic_root(ca, cb, cc);
    // polish against the cubic
    let mut y = y;
    for _ in 0..3 {
        let f = ((y + ca) * y + cb) * y + cc;
        let df = (3.0 * y + 2.0 * ca) * y + cb;
        if df == 0.0 {
            break;
        }
        let next = y - f / df;
        let fnext = ((next + ca) * next + cb) * next + cc;
        if fnext.abs() < f.abs() {
            y = next;
        } else {
            break;
        }
    }
    y
}

// Largest real root of y³ + a y² + b y + c.
fn largest_real_cubic_root(a: f64, b: f64, c: f64) -> f64 {
    let shift = -a / 3.0;
    let pp = b - a * a / 3.0;
    let qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (qq / 2.0).powi(2) + (pp / 3.0).powi(3);
    let w = if disc > 0.0 {
        let u = (-qq / 2.0 - disc.sqrt().copysign(qq)).cbrt();
        if u == 0.0 {
            0.0
        } else {
            u - pp / (3.0 * u)
        }
    } else if pp == 0.0 {
        0.0
    } else {
        let m = 2.0 * (-pp / 3.0).sqrt();
        let arg = (3.0 * qq / (pp * m)).clamp(-1.0, 1.0);
        m * (arg.acos() / 3.0).cos()
    };
    w + shift
}

fn polish(coeffs: &[f64], z0: Complex) -> Complex {
    let mut z = z0;
    let (mut pz, _) = poly_eval_deriv(coeffs, z);
    for _ in 0..4 {
        let (p, dp) = poly_eval_deriv(coeffs, z);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let next = if z.im == 0.0 {
            Complex::new(z.re - p.re / dp.re, 0.0)
        } else {
            z - p / dp
        };
        let (pn, _) = poly_eval_deriv(coeffs, next);
        if pn.norm() < pz.norm() && next.re.is_finite() && next.im.is_finite() {
            z = next;
            pz = pn;
        } else {
            break;
        }
    }
    z
}

/// Final bracket of a bisection: `pred(lo_side) == pred(lo)` at the start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Bisection on a boolean predicate; returns the final bracket, whose `lo`
/// end keeps the predicate value of the starting `lo`.
pub fn bisect_bracket<P: FnMut(f64) -> bool>(
    mut pred: P,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<Bracket> {
    let plo = pred(lo);
    if pred(hi) == plo {
        return Err(KiteError::NoBracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    while (b - a).abs() > tol {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        if pred(mid) == plo {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Bracket { lo: a, hi: b })
}

/// Point within `tol` of a change of `pred` between `lo` and `hi`.
pub fn bisect<P: FnMut(f64) -> bool>(pred: P, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    bisect_bracket(pred, lo, hi, tol).map(|b| b.mid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sorted(mut v: Vec<Complex>) -> Vec<Complex> {
        v.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        v
    }

    fn assert_close_sets(got: &[Complex], want: &[Complex], tol: f64) {
        assert_eq!(got.len(), want.len());
        let mut used = vec![false; want.len()];
        for g in got {
            let (k, d) = want
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, w)| (k, (g - w).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(d < tol, "eigenvalue {g} unmatched (closest {d:e})");
            used[k] = true;
        }
    }

    #[test]
    fn identity_eigenvalues() {
        let eig = eig_dense(&DMatrix::identity(4, 4)).unwrap();
        for e in eig {
            assert_abs_diff_eq!(e.re, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(e.im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn rotation_generator() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        let eig = eig_dense(&m).unwrap();
        assert_close_sets(
            &eig,
            &[Complex::new(0.0, 1.0), Complex::new(0.0, -1.0)],
            1e-14,
        );
    }

    #[test]
    fn companion_of_mu4_minus_1() {
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 3)] = 1.0;
        for i in 1..4 {
            m[(i, i - 1)] = 1.0;
        }
        let eig = eig_dense(&m).unwrap();
        let want = [
            Complex::new(1.0, 0.0),
            Complex::new(-1.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, -1.0),
        ];
        assert_close_sets(&eig, &want, 1e-13);
    }

    #[test]
    fn upper_triangular_and_diagonal() {
        let m = DMatrix::from_row_slice(3, 3, &[3.0, 1.0, 2.0, 0.0, -1.0, 5.0, 0.0, 0.0, 0.5]);
        let eig = eig_dense(&m).unwrap();
        assert_close_sets(
            &eig,
            &[
                Complex::new(3.0, 0.0),
                Complex::new(-1.0, 0.0),
                Complex::new(0.5, 0.0),
            ],
            1e-13,
        );
        assert!(eig_dense(&DMatrix::zeros(5, 5)).unwrap().iter().all(|e| e.norm() == 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eig_dense(&DMatrix::zeros(2, 3)).is_err());
        assert!(eig_dense(&DMatrix::identity(17, 17)).is_err());
        let mut m = DMatrix::identity(3, 3);
        m[(1, 2)] = f64::NAN;
        assert!(eig_dense(&m).is_err());
    }

    #[test]
    fn eig_matches_char_poly_roots_on_random_matrices() {
        // deterministic pseudo-random entries (LCG) to avoid a dev-dependency here
        let mut state: u64 = 0x2545F4914F6CDD1D;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for n in [3usize, 5, 8, 12, 16] {
            let m = DMatrix::from_fn(n, n, |_, _| next());
            let eig = eig_dense(&m).unwrap();
            let cp = char_poly(&m);
            let norm = m.norm();
            for e in &eig {
                let val = poly_eval(&cp, *e).norm();
                let scale: f64 = cp
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.abs() * e.norm().powi((n - k) as i32))
                    .sum();
                assert!(val <= 1e-10 * scale.max(norm), "n={n} e={e} val={val:e}");
            }
            // trace and conjugate symmetry
            let sum: Complex = eig.iter().sum();
            assert_abs_diff_eq!(sum.re, m.trace(), epsilon = 1e-11);
            assert_abs_diff_eq!(sum.im, 0.0, epsilon = 1e-11);
        }
    }

    #[test]
    fn char_poly_of_known_matrix() {
        // [[2,1],[1,2]] -> s² - 4s + 3
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        assert_eq!(char_poly(&m), vec![1.0, -4.0, 3.0]);
    }

    #[test]
    fn quartic_unit_roots() {
        let r = sorted(solve_quartic_real_coeffs([1.0, 0.0, 0.0, 0.0, -1.0]).to_vec());
        assert_close_sets(
            &r,
            &[
                Complex::new(1.0, 0.0),
                Complex::new(-1.0, 0.0),
                Complex::new(0.0, 1.0),
                Complex::new(0.0, -1.0),
            ],
            1e-14,
        );
    }

    #[test]
    fn quartic_biquadratic_imaginary() {
        // (μ²+1)(μ²+4) = μ⁴ + 5μ² + 4
        let r = solve_quartic_real_coeffs([1.0, 0.0, 5.0, 0.0, 4.0]);
        assert_close_sets(
            &r,
            &[
                Complex::new(0.0, 1.0),
                Complex::new(0.0, -1.0),
                Complex::new(0.0, 2.0),
                Complex::new(0.0, -2.0),
            ],
            1e-14,
        );
        for z in r {
            assert_eq!(z.re, 0.0);
        }
    }

    #[test]
    fn quartic_general_and_repeated() {
        // (μ-1)(μ-2)(μ²+2μ+5): roots 1, 2, -1±2i
        let c = [1.0, -1.0, 1.0, -11.0, 10.0];
        let r = solve_quartic_real_coeffs(c);
        assert_close_sets(
            &r,
            &[
                Complex::new(1.0, 0.0),
                Complex::new(2.0, 0.0),
                Complex::new(-1.0, 2.0),
                Complex::new(-1.0, -2.0),
            ],
            1e-12,
        );
        // (μ+1)²(μ+4)(μ-3): double root, roots within sqrt(eps)-ish
        let c = [1.0, 3.0, -9.0, -23.0, -12.0];
        let r = solve_quartic_real_coeffs(c);
        for z in r {
            let v = poly_eval(&c, z).norm();
            assert!(v <= 1e-10 * 23.0 * z.norm().powi(4).max(1.0), "{z} {v}");
        }
    }

    #[test]
    fn quartic_residual_bound_on_scaled_coefficients() {
        for &(c, lead) in &[(1e-3, 2.0), (1.0, -0.5), (50.0, 3.0)] {
            let coeffs: [f64; 5] = [lead, 0.3 * c, -1.7 * c, 0.2 * c, 0.9 * c];
            let cmax = coeffs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for z in solve_quartic_real_coeffs(coeffs) {
                let v = poly_eval(&coeffs, z).norm();
                assert!(v <= 1e-10 * cmax * z.norm().powi(4).max(1.0));
            }
        }
    }

    #[test]
    fn bisect_threshold() {
        let x = bisect(|x| x > 0.5, 0.0, 1.0, 1e-9).unwrap();
        assert!((x - 0.5).abs() <= 1e-9);
        let mut calls = 0;
        let _ = bisect(
            |x| {
                calls += 1;
                x > 0.3
            },
            0.0,
            1.0,
            1e-6,
        )
        .unwrap();
        // two endpoint checks plus ceil(log2(1e6)) = 20 interior evaluations
        assert!(calls <= 22);
        assert!(matches!(
            bisect(|x| x > 2.0, 0.0, 1.0, 1e-9),
            Err(KiteError::NoBracket { .. })
        ));
    }
}
