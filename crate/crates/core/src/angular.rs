//! Angular-momentum algebra for rank-1 odd-parity operators between Dirac
//! spinors.
//!
//! Half-integers are carried as doubled integers (`two_j = 2j`). Reduced matrix
//! elements follow the Wigner-Eckart convention
//! `<j1 m1|T_q|j2 m2> = (-1)^{j1-m1} (j1 1 j2; -m1 q m2) (j1||T||j2)`.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{parity_sign, Real};

const MAX_FACTORIAL: usize = 512;

fn log_factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; MAX_FACTORIAL + 1];
        for n in 1..=MAX_FACTORIAL {
            t[n] = t[n - 1] + (n as f64).ln();
        }
        t
    })
}

fn ln_fact(n: i32) -> f64 {
    log_factorials()[n as usize]
}

/// Relativistic angular channel `kappa` with its derived quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KappaChannel {
    pub kappa: i32,
    /// `2j`.
    pub two_j: i32,
    /// Orbital momentum of the large component.
    pub l: i32,
    /// Orbital momentum of the small component, `2j - l`.
    pub l_prime: i32,
}

impl KappaChannel {
    pub fn new(kappa: i32) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::invalid("angular", "kappa must be non-zero"));
        }
        let two_j = 2 * kappa.abs() - 1;
        let l = if kappa > 0 { kappa } else { -kappa - 1 };
        Ok(Self { kappa, two_j, l, l_prime: two_j - l })
    }

    /// Channel from `(l, 2j)`, e.g. `p1/2 = (1, 1)`.
    pub fn from_l_j(l: i32, two_j: i32) -> Result<Self> {
        if l < 0 || (two_j != 2 * l + 1 && two_j != 2 * l - 1) || two_j < 1 {
            return Err(Error::invalid("angular", format!("no channel with l={l}, 2j={two_j}")));
        }
        let kappa = if two_j == 2 * l + 1 { -(l + 1) } else { l };
        Self::new(kappa)
    }

    /// Spectroscopic label such as `s1/2`, `p3/2`.
    pub fn label(&self) -> String {
        const LETTERS: [char; 8] = ['s', 'p', 'd', 'f', 'g', 'h', 'i', 'k'];
        let letter = LETTERS.get(self.l as usize).copied().unwrap_or('?');
        format!("{letter}{}/2", self.two_j)
    }
}

fn triangle(a: i32, b: i32, c: i32) -> bool {
    c >= (a - b).abs() && c <= a + b && (a + b + c) % 2 == 0
}

fn check_pair(two_j: i32, two_m: i32) -> Result<()> {
    if two_j < 0 || (two_j + two_m) % 2 != 0 {
        return Err(Error::invalid(
            "angular",
            format!("malformed angular momentum pair 2j={two_j}, 2m={two_m}"),
        ));
    }
    Ok(())
}

/// `ln Delta(abc)` for doubled arguments satisfying the triangle rule.
fn ln_triangle(a: i32, b: i32, c: i32) -> f64 {
    ln_fact((a + b - c) / 2) + ln_fact((a - b + c) / 2) + ln_fact((-a + b + c) / 2)
        - ln_fact((a + b + c) / 2 + 1)
}

/// Wigner 3j symbol; all arguments doubled.
pub fn wigner_3j<T: Real>(tj1: i32, tj2: i32, tj3: i32, tm1: i32, tm2: i32, tm3: i32) -> Result<T> {
    check_pair(tj1, tm1)?;
    check_pair(tj2, tm2)?;
    check_pair(tj3, tm3)?;
    Ok(T::lit(wigner_3j_f64(tj1, tj2, tj3, tm1, tm2, tm3)))
}

pub(crate) fn wigner_3j_f64(tj1: i32, tj2: i32, tj3: i32, tm1: i32, tm2: i32, tm3: i32) -> f64 {
    if tm1 + tm2 + tm3 != 0 || !triangle(tj1, tj2, tj3) {
        return 0.0;
    }
    if tm1.abs() > tj1 || tm2.abs() > tj2 || tm3.abs() > tj3 {
        return 0.0;
    }
    let prefactor = 0.5
        * (ln_triangle(tj1, tj2, tj3)
            + ln_fact((tj1 + tm1) / 2)
            + ln_fact((tj1 - tm1) / 2)
            + ln_fact((tj2 + tm2) / 2)
            + ln_fact((tj2 - tm2) / 2)
            + ln_fact((tj3 + tm3) / 2)
            + ln_fact((tj3 - tm3) / 2));
    // k runs over all values keeping every factorial argument non-negative.
    let a1 = (tj3 - tj2 + tm1) / 2;
    let a2 = (tj3 - tj1 - tm2) / 2;
    let b1 = (tj1 + tj2 - tj3) / 2;
    let b2 = (tj1 - tm1) / 2;
    let b3 = (tj2 + tm2) / 2;
    let k_min = 0.max(-a1).max(-a2);
    let k_max = b1.min(b2).min(b3);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let ln_den = ln_fact(k)
            + ln_fact(a1 + k)
            + ln_fact(a2 + k)
            + ln_fact(b1 - k)
            + ln_fact(b2 - k)
            + ln_fact(b3 - k);
        let term = (prefactor - ln_den).exp();
        sum += if k % 2 == 0 { term } else { -term };
    }
    let phase_exp = (tj1 - tj2 - tm3) / 2;
    if phase_exp.rem_euclid(2) == 0 {
        sum
    } else {
        -sum
    }
}

/// Wigner 6j symbol `{j1 j2 j3; j4 j5 j6}`; all arguments doubled.
pub fn wigner_6j<T: Real>(tj: [i32; 6]) -> Result<T> {
    if tj.iter().any(|&j| j < 0) {
        return Err(Error::invalid("angular", "negative angular momentum in 6j symbol"));
    }
    Ok(T::lit(wigner_6j_f64(tj)))
}

pub(crate) fn wigner_6j_f64(tj: [i32; 6]) -> f64 {
    let [j1, j2, j3, j4, j5, j6] = tj;
    let triads = [(j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3)];
    if triads.iter().any(|&(a, b, c)| !triangle(a, b, c)) {
        return 0.0;
    }
    let prefactor: f64 = 0.5 * triads.iter().map(|&(a, b, c)| ln_triangle(a, b, c)).sum::<f64>();
    let a = [
        (j1 + j2 + j3) / 2,
        (j1 + j5 + j6) / 2,
        (j4 + j2 + j6) / 2,
        (j4 + j5 + j3) / 2,
    ];
    let b = [(j1 + j2 + j4 + j5) / 2, (j2 + j3 + j5 + j6) / 2, (j3 + j1 + j6 + j4) / 2];
    let t_min = *a.iter().max().unwrap();
    let t_max = *b.iter().min().unwrap();
    let mut sum = 0.0;
    for t in t_min..=t_max {
        let ln_den: f64 = a.iter().map(|&x| ln_fact(t - x)).sum::<f64>()
            + b.iter().map(|&x| ln_fact(x - t)).sum::<f64>();
        let term = (prefactor + ln_fact(t + 1) - ln_den).exp();
        sum += if t % 2 == 0 { term } else { -term };
    }
    sum
}

/// Which orbital momenta of a channel enter a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// Large component, `l`.
    Large,
    /// Small component, `l' = 2j - l`.
    Small,
}

impl Component {
    fn orbital(self, ch: &KappaChannel) -> i32 {
        match self {
            Component::Large => ch.l,
            Component::Small => ch.l_prime,
        }
    }
}

/// `Z^{j1 j2}_{l1 l2} = sqrt((2l1+1)(2l2+1)(2j1+1)(2j2+1)) (l1 1 l2; 0 0 0) {j1 1 j2; l2 1/2 l1}`.
pub fn z_coefficient<T: Real>(ch1: &KappaChannel, ch2: &KappaChannel, which: Component) -> T {
    T::lit(z_coefficient_f64(ch1, ch2, which))
}

fn z_coefficient_f64(ch1: &KappaChannel, ch2: &KappaChannel, which: Component) -> f64 {
    let l1 = which.orbital(ch1);
    let l2 = which.orbital(ch2);
    let three_j = wigner_3j_f64(2 * l1, 2, 2 * l2, 0, 0, 0);
    if three_j == 0.0 {
        return 0.0;
    }
    let six_j = wigner_6j_f64([ch1.two_j, 2, ch2.two_j, 2 * l2, 1, 2 * l1]);
    let norm = ((2 * l1 + 1) * (2 * l2 + 1) * (ch1.two_j + 1) * (ch2.two_j + 1)) as f64;
    norm.sqrt() * three_j * six_j
}

/// Coefficients `(c_gf, c_fg)` with
/// `(1||alpha phi||2) = c_gf int g1 f2 phi r^2 dr + c_fg int f1 g2 phi r^2 dr`.
pub fn alpha_angular_factors<T: Real>(ch1: &KappaChannel, ch2: &KappaChannel) -> (Complex<T>, Complex<T>) {
    let (gf, fg) = alpha_angular_factors_f64(ch1, ch2);
    (Complex::new(T::zero(), T::lit(gf)), Complex::new(T::zero(), T::lit(fg)))
}

/// Imaginary parts of the alpha factors (the real parts vanish identically).
pub(crate) fn alpha_angular_factors_f64(ch1: &KappaChannel, ch2: &KappaChannel) -> (f64, f64) {
    let norm = 6f64.sqrt() * (((ch1.two_j + 1) * (ch2.two_j + 1)) as f64).sqrt();
    let phase: f64 = parity_sign((ch1.two_j - 1) as i64 / 2);
    let gf = if ch1.l == ch2.l_prime {
        parity_sign::<f64>(ch1.l as i64)
            * wigner_6j_f64([ch1.two_j, ch2.two_j, 2, 1, 1, 2 * ch1.l])
    } else {
        0.0
    };
    let fg = if ch1.l_prime == ch2.l {
        -parity_sign::<f64>(ch1.l_prime as i64)
            * wigner_6j_f64([ch1.two_j, ch2.two_j, 2, 1, 1, 2 * ch1.l_prime])
    } else {
        0.0
    };
    (phase * norm * gf, phase * norm * fg)
}

/// Coefficients `(c_gg, c_ff)` with
/// `(1||n phi||2) = c_gg int g1 g2 phi r^2 dr + c_ff int f1 f2 phi r^2 dr`.
pub fn n_angular_factors<T: Real>(ch1: &KappaChannel, ch2: &KappaChannel) -> (T, T) {
    let (gg, ff) = n_angular_factors_f64(ch1, ch2);
    (T::lit(gg), T::lit(ff))
}

pub(crate) fn n_angular_factors_f64(ch1: &KappaChannel, ch2: &KappaChannel) -> (f64, f64) {
    let phase: f64 = parity_sign((ch2.two_j - 1) as i64 / 2);
    (
        phase * z_coefficient_f64(ch1, ch2, Component::Large),
        phase * z_coefficient_f64(ch1, ch2, Component::Small),
    )
}

/// Weight turning a product of reduced matrix elements into the magnetic sum
/// `sum_{m2} <1|A|2><2|B|1>` (scalar product of the two vectors implied).
pub fn msum_weight<T: Real>(two_j1: i32, two_j2: i32) -> T {
    // (-1)^{j1 + j2 - 2 m1} / (2 j1 + 1); 2 m1 is odd for half-integer j1.
    let sign: T = parity_sign(((two_j1 + two_j2) / 2 + 1) as i64);
    sign / T::int(two_j1 as i64 + 1)
}

/// Channels reachable from `kappa_a` by an odd-parity rank-1 operator.
pub fn allowed_intermediate_kappas(kappa_a: i32) -> Result<Vec<i32>> {
    let a = KappaChannel::new(kappa_a)?;
    let k = kappa_a.abs();
    let mut out: Vec<i32> = [-(k + 1), -k, -(k - 1), k - 1, k, k + 1]
        .into_iter()
        .filter(|&c| c != 0)
        .filter(|&c| {
            let ch = KappaChannel::new(c).expect("non-zero kappa");
            (ch.two_j - a.two_j).abs() <= 2 && (ch.l + a.l) % 2 == 1
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// True when an odd rank-1 operator can couple the two channels.
pub fn couples(kappa_1: i32, kappa_2: i32) -> bool {
    allowed_intermediate_kappas(kappa_1).map(|v| v.contains(&kappa_2)).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Racah sums in exact integer arithmetic, squared symbol kept as a
    /// rational number so no logarithms or cancellation enter the oracle.
    fn fact(n: i64) -> i128 {
        (1..=n as i128).product::<i128>().max(1)
    }

    fn oracle_3j(tj: [i32; 3], tm: [i32; 3]) -> f64 {
        let [j1, j2, j3] = tj.map(|x| x as i64);
        let [m1, m2, m3] = tm.map(|x| x as i64);
        if m1 + m2 + m3 != 0 || j3 < (j1 - j2).abs() || j3 > j1 + j2 || (j1 + j2 + j3) % 2 != 0 {
            return 0.0;
        }
        if m1.abs() > j1 || m2.abs() > j2 || m3.abs() > j3 {
            return 0.0;
        }
        let h = |x: i64| x / 2;
        let tri_num = fact(h(j1 + j2 - j3)) * fact(h(j1 - j2 + j3)) * fact(h(-j1 + j2 + j3));
        let tri_den = fact(h(j1 + j2 + j3) + 1);
        let ms = fact(h(j1 + m1)) * fact(h(j1 - m1)) * fact(h(j2 + m2)) * fact(h(j2 - m2))
            * fact(h(j3 + m3)) * fact(h(j3 - m3));
        let mut sum = 0.0f64;
        for k in 0..=60i64 {
            let args = [
                k,
                h(j3 - j2 + m1) + k,
                h(j3 - j1 - m2) + k,
                h(j1 + j2 - j3) - k,
                h(j1 - m1) - k,
                h(j2 + m2) - k,
            ];
            if args.iter().any(|&a| a < 0) {
                continue;
            }
            let den: i128 = args.iter().map(|&a| fact(a)).product();
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            sum += s / den as f64;
        }
        let phase = if h(j1 - j2 - m3).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        phase * ((tri_num * ms) as f64 / tri_den as f64).sqrt() * sum
    }

    fn oracle_6j(tj: [i32; 6]) -> f64 {
        let j = tj.map(|x| x as i64);
        let tri = |a: i64, b: i64, c: i64| c >= (a - b).abs() && c <= a + b && (a + b + c) % 2 == 0;
        let triads = [(j[0], j[1], j[2]), (j[0], j[4], j[5]), (j[3], j[1], j[5]), (j[3], j[4], j[2])];
        if triads.iter().any(|&(a, b, c)| !tri(a, b, c)) {
            return 0.0;
        }
        let delta = |a: i64, b: i64, c: i64| {
            (fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((-a + b + c) / 2)) as f64
                / fact((a + b + c) / 2 + 1) as f64
        };
        let pre: f64 = triads.iter().map(|&(a, b, c)| delta(a, b, c)).product::<f64>().sqrt();
        let a = triads.map(|(x, y, z)| (x + y + z) / 2);
        let b = [(j[0] + j[1] + j[3] + j[4]) / 2, (j[1] + j[2] + j[4] + j[5]) / 2, (j[2] + j[0] + j[5] + j[3]) / 2];
        let mut sum = 0.0;
        for t in 0..=40i64 {
            if a.iter().any(|&x| t < x) || b.iter().any(|&x| t > x) {
                continue;
            }
            let den: f64 = a.iter().map(|&x| fact(t - x) as f64).product::<f64>()
                * b.iter().map(|&x| fact(x - t) as f64).product::<f64>();
            let s = if t % 2 == 0 { 1.0 } else { -1.0 };
            sum += s * fact(t + 1) as f64 / den;
        }
        pre * sum
    }

    #[test]
    fn three_j_reference_values() {
        let v: f64 = wigner_3j(2, 2, 0, 0, 0, 0).unwrap();
        assert!((v + 1.0 / 3f64.sqrt()).abs() < 1e-14);
        let v: f64 = wigner_3j(2, 2, 2, 0, 0, 0).unwrap();
        assert_eq!(v, 0.0);
        let v: f64 = wigner_3j(1, 1, 2, 1, -1, 0).unwrap();
        assert!((v - 1.0 / 6f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn three_j_rejects_malformed_pairs() {
        assert!(wigner_3j::<f64>(1, 1, 2, 0, 0, 0).is_err());
        assert!(wigner_3j::<f64>(-2, 2, 0, 0, 0, 0).is_err());
    }

    #[test]
    fn six_j_reference_values() {
        let v: f64 = wigner_6j([2, 2, 2, 2, 2, 2]).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-14);
        // {j1 j2 j3; 0 j3 j2} = (-1)^{j1+j2+j3} / sqrt((2j2+1)(2j3+1))
        let v: f64 = wigner_6j([2, 2, 2, 0, 2, 2]).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-14);
        let v: f64 = wigner_6j([2, 2, 6, 2, 2, 2]).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn symbols_match_exact_racah_oracle() {
        let mut worst: f64 = 0.0;
        for j1 in 0i32..=9 {
            for j2 in 0i32..=9 {
                for j3 in 0i32..=9 {
                    for m1 in (-j1..=j1).step_by(2) {
                        for m2 in (-j2..=j2).step_by(2) {
                            let m3 = -m1 - m2;
                            if (j3 + m3) % 2 != 0 || m3.abs() > j3 {
                                continue;
                            }
                            let v = wigner_3j_f64(j1, j2, j3, m1, m2, m3);
                            let o = oracle_3j([j1, j2, j3], [m1, m2, m3]);
                            worst = worst.max((v - o).abs());
                        }
                    }
                }
            }
        }
        assert!(worst < 1e-12, "3j worst deviation {worst}");
        let mut worst: f64 = 0.0;
        for code in 0..10i32.pow(6) {
            let mut c = code;
            let mut tj = [0; 6];
            for x in tj.iter_mut() {
                *x = c % 10;
                c /= 10;
            }
            let v = wigner_6j_f64(tj);
            let o = oracle_6j(tj);
            worst = worst.max((v - o).abs());
        }
        assert!(worst < 1e-12, "6j worst deviation {worst}");
    }

    #[test]
    fn three_j_symmetries() {
        for (j1, j2, j3) in [(1i32, 3i32, 2i32), (3, 3, 4), (5, 3, 4), (4, 4, 2)] {
            for m1 in (-j1..=j1).step_by(2) {
                for m2 in (-j2..=j2).step_by(2) {
                    let m3 = -m1 - m2;
                    if m3.abs() > j3 {
                        continue;
                    }
                    let v = wigner_3j_f64(j1, j2, j3, m1, m2, m3);
                    let phase = if ((j1 + j2 + j3) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    let swapped = wigner_3j_f64(j2, j1, j3, m2, m1, m3);
                    let negated = wigner_3j_f64(j1, j2, j3, -m1, -m2, -m3);
                    let cyclic = wigner_3j_f64(j2, j3, j1, m2, m3, m1);
                    assert!((swapped - phase * v).abs() < 1e-14);
                    assert!((negated - phase * v).abs() < 1e-14);
                    assert!((cyclic - v).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn kappa_bookkeeping() {
        let s = KappaChannel::new(-1).unwrap();
        assert_eq!((s.two_j, s.l, s.l_prime), (1, 0, 1));
        let p = KappaChannel::new(1).unwrap();
        assert_eq!((p.two_j, p.l, p.l_prime), (1, 1, 0));
        let d = KappaChannel::new(2).unwrap();
        assert_eq!((d.two_j, d.l, d.l_prime), (3, 2, 1));
        assert_eq!(KappaChannel::from_l_j(1, 3).unwrap().kappa, -2);
        assert_eq!(p.label(), "p1/2");
        assert!(KappaChannel::new(0).is_err());
        for k in [-4, -3, -2, -1, 1, 2, 3, 4] {
            let ch = KappaChannel::new(k).unwrap();
            assert_eq!((ch.l - ch.l_prime).abs(), 1);
        }
    }

    #[test]
    fn intermediate_channels() {
        assert_eq!(allowed_intermediate_kappas(-1).unwrap(), vec![-2, 1]);
        assert_eq!(allowed_intermediate_kappas(1).unwrap(), vec![-1, 2]);
        assert_eq!(allowed_intermediate_kappas(-2).unwrap(), vec![-3, -1, 2]);
        for k in -6i32..=6 {
            if k == 0 {
                continue;
            }
            let a = KappaChannel::new(k).unwrap();
            for c in allowed_intermediate_kappas(k).unwrap() {
                let ch = KappaChannel::new(c).unwrap();
                assert!([k.abs() - 1, k.abs(), k.abs() + 1].contains(&c.abs()));
                assert_eq!((ch.l + a.l) % 2, 1);
            }
        }
    }

    #[test]
    fn z_coefficient_cases() {
        let s = KappaChannel::new(-1).unwrap();
        let p = KappaChannel::new(1).unwrap();
        let p32 = KappaChannel::new(-2).unwrap();
        let d52 = KappaChannel::new(-3).unwrap();
        // same parity -> zero
        assert_eq!(z_coefficient::<f64>(&s, &s, Component::Large), 0.0);
        // s1/2 -> p1/2: sqrt(12) (0 1 1;000) {1/2 1 1/2; 1 1/2 0}
        let expected = 12f64.sqrt() * oracle_3j([0, 2, 2], [0, 0, 0]) * oracle_6j([1, 2, 1, 2, 1, 0]);
        let v = z_coefficient::<f64>(&s, &p, Component::Large);
        assert!((v - expected).abs() < 1e-14);
        // j2 = j1 + 2 is outside the 6j triad
        assert_eq!(z_coefficient::<f64>(&s, &d52, Component::Large), 0.0);
        assert_eq!(z_coefficient::<f64>(&p32, &p, Component::Large), 0.0);
    }

    #[test]
    fn alpha_factors_vanish_without_coupling() {
        let s = KappaChannel::new(-1).unwrap();
        let s2 = KappaChannel::new(-1).unwrap();
        assert_eq!(alpha_angular_factors_f64(&s, &s2), (0.0, 0.0));
        let d = KappaChannel::new(2).unwrap();
        assert_eq!(alpha_angular_factors_f64(&s, &d), (0.0, 0.0));
    }

    #[test]
    fn msum_weights() {
        assert_eq!(msum_weight::<f64>(1, 1), 0.5);
        assert_eq!(msum_weight::<f64>(1, 3), -0.5);
        assert_eq!(msum_weight::<f64>(3, 1), -0.25);
    }

    // Brute-force spinor algebra: build Omega_{kappa m} from Clebsch-Gordan
    // coefficients and evaluate sigma_q and n_q between them explicitly.

    fn cg(tj1: i32, tm1: i32, tj2: i32, tm2: i32, tj: i32, tm: i32) -> f64 {
        let phase = if ((tj1 - tj2 + tm) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        phase * ((tj + 1) as f64).sqrt() * oracle_3j([tj1, tj2, tj], [tm1, tm2, -tm])
    }

    /// Components of Omega_{kappa m} as (2*mu, 2*s, coefficient) over Y_{l mu} chi_s.
    fn spinor(l: i32, two_j: i32, two_m: i32) -> Vec<(i32, i32, f64)> {
        [1, -1]
            .into_iter()
            .filter_map(|ts| {
                let tmu = two_m - ts;
                if tmu.abs() > 2 * l {
                    return None;
                }
                Some((tmu, ts, cg(2 * l, tmu, 1, ts, two_j, two_m)))
            })
            .collect()
    }

    /// <chi_s1| sigma_q |chi_s2> in spherical components.
    fn sigma(q: i32, ts1: i32, ts2: i32) -> f64 {
        match (q, ts1, ts2) {
            (0, 1, 1) => 1.0,
            (0, -1, -1) => -1.0,
            (1, 1, -1) => -std::f64::consts::SQRT_2,
            (-1, -1, 1) => std::f64::consts::SQRT_2,
            _ => 0.0,
        }
    }

    /// <Y_{l1 mu1}| n_q |Y_{l2 mu2}>.
    fn n_orbital(l1: i32, tmu1: i32, q: i32, l2: i32, tmu2: i32) -> f64 {
        let phase = if (tmu1 / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        phase
            * (((2 * l1 + 1) * (2 * l2 + 1)) as f64).sqrt()
            * oracle_3j([2 * l1, 2, 2 * l2], [0, 0, 0])
            * oracle_3j([2 * l1, 2, 2 * l2], [-tmu1, 2 * q, tmu2])
    }

    fn sigma_between(l1: i32, tj1: i32, tm1: i32, q: i32, l2: i32, tj2: i32, tm2: i32) -> f64 {
        if l1 != l2 {
            return 0.0;
        }
        let mut acc = 0.0;
        for (mu1, s1, c1) in spinor(l1, tj1, tm1) {
            for (mu2, s2, c2) in spinor(l2, tj2, tm2) {
                if mu1 == mu2 {
                    acc += c1 * c2 * sigma(q, s1, s2);
                }
            }
        }
        acc
    }

    fn n_between(l1: i32, tj1: i32, tm1: i32, q: i32, l2: i32, tj2: i32, tm2: i32) -> f64 {
        let mut acc = 0.0;
        for (mu1, s1, c1) in spinor(l1, tj1, tm1) {
            for (mu2, s2, c2) in spinor(l2, tj2, tm2) {
                if s1 == s2 {
                    acc += c1 * c2 * n_orbital(l1, mu1, q, l2, mu2);
                }
            }
        }
        acc
    }

    fn wigner_eckart(tj1: i32, tm1: i32, q: i32, tj2: i32, tm2: i32) -> f64 {
        let phase = if ((tj1 - tm1) / 2).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        phase * oracle_3j([tj1, 2, tj2], [-tm1, 2 * q, tm2])
    }

    const KAPPAS: [i32; 6] = [-3, -2, -1, 1, 2, 3];

    #[test]
    fn alpha_factors_match_spinor_algebra() {
        // psi = (g Omega_kappa, i f Omega_{-kappa}); alpha_q couples g1 with f2
        // through i <Omega_k1|sigma_q|Omega_{-k2}> and f1 with g2 through
        // -i <Omega_{-k1}|sigma_q|Omega_k2>.
        for k1 in KAPPAS {
            for k2 in KAPPAS {
                let a = KappaChannel::new(k1).unwrap();
                let b = KappaChannel::new(k2).unwrap();
                let (gf, fg) = alpha_angular_factors_f64(&a, &b);
                for tm1 in (-a.two_j..=a.two_j).step_by(2) {
                    for tm2 in (-b.two_j..=b.two_j).step_by(2) {
                        for q in -1..=1 {
                            let we = wigner_eckart(a.two_j, tm1, q, b.two_j, tm2);
                            let direct_gf = sigma_between(a.l, a.two_j, tm1, q, b.l_prime, b.two_j, tm2);
                            let direct_fg = -sigma_between(a.l_prime, a.two_j, tm1, q, b.l, b.two_j, tm2);
                            assert!((we * gf - direct_gf).abs() < 1e-13, "gf {k1} {k2}");
                            assert!((we * fg - direct_fg).abs() < 1e-13, "fg {k1} {k2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn n_factors_match_spinor_algebra() {
        for k1 in KAPPAS {
            for k2 in KAPPAS {
                let a = KappaChannel::new(k1).unwrap();
                let b = KappaChannel::new(k2).unwrap();
                let (gg, ff) = n_angular_factors_f64(&a, &b);
                for tm1 in (-a.two_j..=a.two_j).step_by(2) {
                    for tm2 in (-b.two_j..=b.two_j).step_by(2) {
                        for q in -1..=1 {
                            let we = wigner_eckart(a.two_j, tm1, q, b.two_j, tm2);
                            let direct_gg = n_between(a.l, a.two_j, tm1, q, b.l, b.two_j, tm2);
                            let direct_ff = n_between(a.l_prime, a.two_j, tm1, q, b.l_prime, b.two_j, tm2);
                            assert!((we * gg - direct_gg).abs() < 1e-13, "gg {k1} {k2}");
                            assert!((we * ff - direct_ff).abs() < 1e-13, "ff {k1} {k2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_dot_n_flips_kappa() {
        // sigma.n Omega_kappa = -Omega_{-kappa}: check the q = 0 column summed
        // over the spin sum at fixed m via the scalar identity
        // <Omega_{-k} m| sigma.n |Omega_k m> = -1.
        for k in KAPPAS {
            let ch = KappaChannel::new(k).unwrap();
            for tm in (-ch.two_j..=ch.two_j).step_by(2) {
                let mut acc = 0.0;
                for (mu1, s1, c1) in spinor(ch.l_prime, ch.two_j, tm) {
                    for (mu2, s2, c2) in spinor(ch.l, ch.two_j, tm) {
                        for q in -1..=1i32 {
                            // sigma.n = sum_q (-1)^q sigma_q n_{-q}
                            let sign = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                            acc += sign * c1 * c2 * sigma(q, s1, s2)
                                * n_orbital(ch.l_prime, mu1, -q, ch.l, mu2);
                        }
                    }
                }
                assert!((acc + 1.0).abs() < 1e-13, "kappa {k}: {acc}");
            }
        }
    }

    #[test]
    fn msum_weight_matches_explicit_sum() {
        for k1 in KAPPAS {
            for k2 in allowed_intermediate_kappas(k1).unwrap() {
                let a = KappaChannel::new(k1).unwrap();
                let b = KappaChannel::new(k2).unwrap();
                for tm1 in (-a.two_j..=a.two_j).step_by(2) {
                    let mut acc = 0.0;
                    for tm2 in (-b.two_j..=b.two_j).step_by(2) {
                        for q in -1..=1i32 {
                            let sign = if q.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                            acc += sign
                                * wigner_eckart(a.two_j, tm1, q, b.two_j, tm2)
                                * wigner_eckart(b.two_j, tm2, -q, a.two_j, tm1);
                        }
                    }
                    let w: f64 = msum_weight(a.two_j, b.two_j);
                    assert!((acc - w).abs() < 1e-13, "{k1} {k2}: {acc} vs {w}");
                }
            }
        }
    }
}
