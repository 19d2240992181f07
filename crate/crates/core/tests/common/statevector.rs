//! Brute-force statevector simulator used as an independent oracle.
//! Qubit `k` is bit `k` of the basis index; two-qubit matrices act on
//! `|a b>` with `a` the first listed qubit.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyco::circuit::{Circuit, GateInstance};

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

fn cis(theta: f64) -> C {
    C::from_polar(1.0, theta)
}

/// Evaluates angle expressions such as `-pi/2`, `3*pi/4`, `0.125`.
pub fn eval_angle(text: &str) -> f64 {
    struct P<'a> {
        s: &'a [u8],
        i: usize,
    }
    impl P<'_> {
        fn peek(&self) -> Option<u8> {
            self.s.get(self.i).copied()
        }
        fn expr(&mut self) -> f64 {
            let mut v = self.term();
            while let Some(c @ (b'+' | b'-')) = self.peek() {
                self.i += 1;
                let r = self.term();
                v = if c == b'+' { v + r } else { v - r };
            }
            v
        }
        fn term(&mut self) -> f64 {
            let mut v = self.factor();
            while let Some(c @ (b'*' | b'/')) = self.peek() {
                self.i += 1;
                let r = self.factor();
                v = if c == b'*' { v * r } else { v / r };
            }
            v
        }
        fn factor(&mut self) -> f64 {
            match self.peek() {
                Some(b'-') => {
                    self.i += 1;
                    -self.factor()
                }
                Some(b'+') => {
                    self.i += 1;
                    self.factor()
                }
                Some(b'(') => {
                    self.i += 1;
                    let v = self.expr();
                    assert_eq!(self.peek(), Some(b')'), "unbalanced angle expression");
                    self.i += 1;
                    v
                }
                Some(b'p') => {
                    assert_eq!(&self.s[self.i..self.i + 2], b"pi");
                    self.i += 2;
                    PI
                }
                _ => {
                    let start = self.i;
                    while let Some(c) = self.peek() {
                        let exp_sign = (c == b'-' || c == b'+') && matches!(self.s[self.i - 1], b'e' | b'E');
                        if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                            self.i += 1;
                        } else {
                            break;
                        }
                    }
                    std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().expect("number")
                }
            }
        }
    }
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = P { s: cleaned.as_bytes(), i: 0 };
    let v = p.expr();
    assert_eq!(p.i, cleaned.len(), "trailing input in `{text}`");
    v
}

fn u3(theta: f64, phi: f64, lambda: f64) -> [[C; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    [[C::from(c), -cis(lambda) * s], [cis(phi) * s, cis(phi + lambda) * c]]
}

fn one_qubit(name: &str, p: &[f64]) -> [[C; 2]; 2] {
    let h = C::from(FRAC_1_SQRT_2);
    match name {
        "id" => [[ONE, ZERO], [ZERO, ONE]],
        "x" => [[ZERO, ONE], [ONE, ZERO]],
        "y" => [[ZERO, -I], [I, ZERO]],
        "z" => [[ONE, ZERO], [ZERO, -ONE]],
        "h" => [[h, h], [h, -h]],
        "s" => [[ONE, ZERO], [ZERO, I]],
        "sdg" => [[ONE, ZERO], [ZERO, -I]],
        "t" => [[ONE, ZERO], [ZERO, cis(PI / 4.0)]],
        "tdg" => [[ONE, ZERO], [ZERO, cis(-PI / 4.0)]],
        "sx" => {
            let (a, b) = (C::new(0.5, 0.5), C::new(0.5, -0.5));
            [[a, b], [b, a]]
        }
        "sxdg" => {
            let (a, b) = (C::new(0.5, -0.5), C::new(0.5, 0.5));
            [[a, b], [b, a]]
        }
        "rx" => {
            let (c, s) = ((p[0] / 2.0).cos(), (p[0] / 2.0).sin());
            [[C::from(c), -I * s], [-I * s, C::from(c)]]
        }
        "ry" => {
            let (c, s) = ((p[0] / 2.0).cos(), (p[0] / 2.0).sin());
            [[C::from(c), C::from(-s)], [C::from(s), C::from(c)]]
        }
        "rz" => [[cis(-p[0] / 2.0), ZERO], [ZERO, cis(p[0] / 2.0)]],
        "p" | "u1" => [[ONE, ZERO], [ZERO, cis(p[0])]],
        "u2" => u3(PI / 2.0, p[0], p[1]),
        "u3" | "u" => u3(p[0], p[1], p[2]),
        other => panic!("no single-qubit matrix for `{other}`"),
    }
}

fn diag4(d: [C; 4]) -> [[C; 4]; 4] {
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        m[i][i] = d[i];
    }
    m
}

fn two_qubit(name: &str, p: &[f64]) -> [[C; 4]; 4] {
    let r = C::from(FRAC_1_SQRT_2);
    match name {
        "cx" => [[ONE, ZERO, ZERO, ZERO], [ZERO, ONE, ZERO, ZERO], [ZERO, ZERO, ZERO, ONE], [ZERO, ZERO, ONE, ZERO]],
        "cy" => [[ONE, ZERO, ZERO, ZERO], [ZERO, ONE, ZERO, ZERO], [ZERO, ZERO, ZERO, -I], [ZERO, ZERO, I, ZERO]],
        "cz" => diag4([ONE, ONE, ONE, -ONE]),
        "swap" => [[ONE, ZERO, ZERO, ZERO], [ZERO, ZERO, ONE, ZERO], [ZERO, ONE, ZERO, ZERO], [ZERO, ZERO, ZERO, ONE]],
        "iswap" => [[ONE, ZERO, ZERO, ZERO], [ZERO, ZERO, I, ZERO], [ZERO, I, ZERO, ZERO], [ZERO, ZERO, ZERO, ONE]],
        "siswap" => [[ONE, ZERO, ZERO, ZERO], [ZERO, r, I * r, ZERO], [ZERO, I * r, r, ZERO], [ZERO, ZERO, ZERO, ONE]],
        "ecr" => [
            [ZERO, ZERO, r, I * r],
            [ZERO, ZERO, I * r, r],
            [r, -I * r, ZERO, ZERO],
            [-I * r, r, ZERO, ZERO],
        ],
        "syc" => {
            let (c, s) = ((PI / 2.0).cos(), (PI / 2.0).sin());
            [
                [ONE, ZERO, ZERO, ZERO],
                [ZERO, C::from(c), -I * s, ZERO],
                [ZERO, -I * s, C::from(c), ZERO],
                [ZERO, ZERO, ZERO, cis(-PI / 6.0)],
            ]
        }
        "cp" | "cu1" => diag4([ONE, ONE, ONE, cis(p[0])]),
        "crz" => diag4([ONE, ONE, cis(-p[0] / 2.0), cis(p[0] / 2.0)]),
        "rzz" => {
            let (a, b) = (cis(-p[0] / 2.0), cis(p[0] / 2.0));
            diag4([a, b, b, a])
        }
        "rxx" => {
            let (c, s) = (C::from((p[0] / 2.0).cos()), -I * (p[0] / 2.0).sin());
            [[c, ZERO, ZERO, s], [ZERO, c, s, ZERO], [ZERO, s, c, ZERO], [s, ZERO, ZERO, c]]
        }
        other => panic!("no two-qubit matrix for `{other}`"),
    }
}

pub fn apply(state: &mut [C], g: &GateInstance) {
    let params: Vec<f64> = g.params.iter().map(|s| eval_angle(s)).collect();
    match g.qubits[..] {
        [q] => {
            let m = one_qubit(g.kind.name(), &params);
            let bit = 1usize << q;
            for i in 0..state.len() {
                if i & bit == 0 {
                    let (a, b) = (state[i], state[i | bit]);
                    state[i] = m[0][0] * a + m[0][1] * b;
                    state[i | bit] = m[1][0] * a + m[1][1] * b;
                }
            }
        }
        [qa, qb] => {
            let m = two_qubit(g.kind.name(), &params);
            let (ba, bb) = (1usize << qa, 1usize << qb);
            for i in 0..state.len() {
                if i & ba == 0 && i & bb == 0 {
                    let idx = [i, i | bb, i | ba, i | ba | bb];
                    let v = idx.map(|k| state[k]);
                    for (row, &k) in idx.iter().enumerate() {
                        state[k] = (0..4).map(|c| m[row][c] * v[c]).sum();
                    }
                }
            }
        }
        _ => panic!("unsupported arity"),
    }
}

pub fn random_state(num_qubits: usize, seed: u64) -> Vec<C> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<C> = (0..1usize << num_qubits)
        .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|c| *c /= norm);
    v
}

pub fn run(c: &Circuit, state: &[C]) -> Vec<C> {
    let mut s = state.to_vec();
    for g in &c.gates {
        apply(&mut s, g);
    }
    s
}

pub fn max_deviation(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Minimum pairwise deviation between two programs over a few random states.
pub fn programs_agree(a: &Circuit, b: &Circuit, num_qubits: usize, seed: u64) -> f64 {
    (0..3)
        .map(|k| {
            let s = random_state(num_qubits, seed.wrapping_add(k));
            max_deviation(&run(a, &s), &run(b, &s))
        })
        .fold(0.0, f64::max)
}

#[allow(dead_code)]
pub fn check_oracle_sanity() {
    // HZH = X and two CZs cancel
    let mut s = random_state(2, 1);
    let orig = s.clone();
    let g = |kind: &str, q: &[usize]| GateInstance::new(0, cyco::GateKind::lookup(kind).unwrap(), q.to_vec());
    for gate in [g("cz", &[0, 1]), g("cz", &[0, 1])] {
        apply(&mut s, &gate);
    }
    assert!(max_deviation(&s, &orig) < 1e-12);
    let mut a = orig.clone();
    for gate in [g("h", &[1]), g("z", &[1]), g("h", &[1])] {
        apply(&mut a, &gate);
    }
    let mut b = orig.clone();
    apply(&mut b, &g("x", &[1]));
    assert!(max_deviation(&a, &b) < 1e-12);
}
