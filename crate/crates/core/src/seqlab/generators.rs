use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::Interval;
use crate::prefix::SequencePrefix;

/// Real sequences covering Cauchy and non-Cauchy, contractive and
/// non-contractive behaviour.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `start * ratio^n`
    Geometric { start: f64, ratio: f64 },
    /// `scale * (1 + 1/2 + ... + 1/n)`
    Harmonic { scale: f64 },
    /// `1 + 2^-p + ... + n^-p`
    PowerSums { exponent: f64 },
    /// `1 / (n + shift)`
    Inverse { shift: f64 },
    /// Linear descent to `level`, then constant from `switch` on.
    EventuallyConstant { switch: usize, level: f64 },
    /// `amplitude (-1)^n decay^n`
    Oscillating { amplitude: f64, decay: f64 },
    /// `amplitude sin(sqrt(n))`: vanishing steps, no limit.
    SlowWave { amplitude: f64 },
    /// Orbit of `x -> a x + c` from `seed`.
    AffineOrbit { a: f64, c: f64, seed: f64 },
    /// `base_n + amplitude decay^n u_n` with seeded `u_n` uniform in `[-1, 1]`.
    Perturbed {
        base: Box<Generator>,
        amplitude: f64,
        decay: f64,
        seed: u64,
    },
}

impl Generator {
    pub fn label(&self) -> String {
        match self {
            Generator::Geometric { start, ratio } => {
                format!("geometric(start={start},ratio={ratio})")
            }
            Generator::Harmonic { scale } => format!("harmonic(scale={scale})"),
            Generator::PowerSums { exponent } => format!("power-sums(p={exponent})"),
            Generator::Inverse { shift } => format!("inverse(shift={shift})"),
            Generator::EventuallyConstant { switch, level } => {
                format!("eventually-constant(switch={switch},level={level})")
            }
            Generator::Oscillating { amplitude, decay } => {
                format!("oscillating(amplitude={amplitude},decay={decay})")
            }
            Generator::SlowWave { amplitude } => format!("slow-wave(amplitude={amplitude})"),
            Generator::AffineOrbit { a, c, seed } => {
                format!("affine-orbit(a={a},c={c},seed={seed})")
            }
            Generator::Perturbed {
                base,
                amplitude,
                decay,
                seed,
            } => format!(
                "{}+noise(amplitude={amplitude},decay={decay},seed={seed})",
                base.label()
            ),
        }
    }

    pub fn values(&self, len: usize) -> Vec<f64> {
        match self {
            Generator::Geometric { start, ratio } => {
                let mut x = *start;
                (0..len)
                    .map(|_| {
                        let v = x;
                        x *= ratio;
                        v
                    })
                    .collect()
            }
            Generator::Harmonic { scale } => partial_sums(len, |k| 1.0 / k as f64)
                .into_iter()
                .map(|h| scale * h)
                .collect(),
            Generator::PowerSums { exponent } => partial_sums(len, |k| (k as f64).powf(-exponent)),
            Generator::Inverse { shift } => (0..len).map(|n| 1.0 / (n as f64 + shift)).collect(),
            Generator::EventuallyConstant { switch, level } => (0..len)
                .map(|n| {
                    if n < *switch {
                        level + (switch - n) as f64 / *switch as f64
                    } else {
                        *level
                    }
                })
                .collect(),
            Generator::Oscillating { amplitude, decay } => {
                let mut scale = *amplitude;
                (0..len)
                    .map(|n| {
                        let v = if n % 2 == 0 { scale } else { -scale };
                        scale *= decay;
                        v
                    })
                    .collect()
            }
            Generator::SlowWave { amplitude } => (0..len)
                .map(|n| amplitude * (n as f64).sqrt().sin())
                .collect(),
            Generator::AffineOrbit { a, c, seed } => {
                let mut x = *seed;
                (0..len)
                    .map(|_| {
                        let v = x;
                        x = a * x + c;
                        v
                    })
                    .collect()
            }
            Generator::Perturbed {
                base,
                amplitude,
                decay,
                seed,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut scale = *amplitude;
                base.values(len)
                    .into_iter()
                    .map(|v| {
                        let u: f64 = rng.gen_range(-1.0..=1.0);
                        let out = v + scale * u;
                        scale *= decay;
                        out
                    })
                    .collect()
            }
        }
    }

    pub fn prefix(&self, len: usize) -> SequencePrefix<Interval> {
        SequencePrefix::from_reals(self.values(len)).expect("generators produce finite values")
    }
}

/// `s_0 = 0`, `s_n = term(1) + ... + term(n)`.
fn partial_sums(len: usize, term: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut s = 0.0;
    (0..len)
        .map(|n| {
            if n > 0 {
                s += term(n);
            }
            s
        })
        .collect()
}

/// A generated prefix with the generator that produced it.
#[derive(Debug, Clone)]
pub struct Generated {
    pub generator: Generator,
    pub prefix: SequencePrefix<Interval>,
}

/// Unperturbed generators in a fixed order.
fn bases() -> Vec<Generator> {
    let mut out = Vec::new();
    for &ratio in &[0.3, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.98, 0.99, -0.5, -0.8] {
        out.push(Generator::Geometric { start: 1.0, ratio });
        out.push(Generator::Geometric { start: 3.0, ratio });
    }
    for &scale in &[0.05, 0.1, 0.2, 0.5, 1.0, 2.0] {
        out.push(Generator::Harmonic { scale });
    }
    for &exponent in &[1.2, 1.5, 2.0, 3.0] {
        out.push(Generator::PowerSums { exponent });
    }
    for &shift in &[1.0, 2.0, 5.0, 10.0] {
        out.push(Generator::Inverse { shift });
    }
    for &switch in &[5usize, 40, 200] {
        out.push(Generator::EventuallyConstant { switch, level: 0.5 });
    }
    for &(amplitude, decay) in &[(1.0, 1.0), (0.3, 1.0), (1.0, 0.9), (1.0, 0.99)] {
        out.push(Generator::Oscillating { amplitude, decay });
    }
    for &amplitude in &[0.2, 1.0, 2.0] {
        out.push(Generator::SlowWave { amplitude });
    }
    for &(a, c, seed) in &[
        (0.5, 1.0, 0.0),
        (0.9, 0.1, 3.0),
        (-0.7, 0.5, 2.0),
        (0.99, 0.0, 1.0),
        (1.0, 0.001, 0.0),
    ] {
        out.push(Generator::AffineOrbit { a, c, seed });
    }
    out
}

/// The property-test corpus: every base generator, plus seeded
/// perturbations of each (a persistent one and a decaying one).
pub fn corpus(len: usize, seed: u64) -> Vec<Generated> {
    let mut gens = Vec::new();
    for (i, base) in bases().into_iter().enumerate() {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        let noisy = [
            Generator::Perturbed {
                base: Box::new(base.clone()),
                amplitude: 0.05,
                decay: 1.0,
                seed: s,
            },
            Generator::Perturbed {
                base: Box::new(base.clone()),
                amplitude: 0.5,
                decay: 0.97,
                seed: s ^ 0x9e37_79b9,
            },
            Generator::Perturbed {
                base: Box::new(base.clone()),
                amplitude: 1e-3,
                decay: 0.995,
                seed: s ^ 0x51ed_270b,
            },
        ];
        gens.push(base);
        gens.extend(noisy);
    }
    gens.into_iter()
        .map(|g| Generated {
            prefix: g.prefix(len),
            generator: g,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_and_reproducible() {
        let a = corpus(50, 1);
        let b = corpus(50, 1);
        assert!(a.len() >= 200);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.prefix.entries(), y.prefix.entries());
        }
    }

    #[test]
    fn harmonic_sums() {
        let h = Generator::Harmonic { scale: 1.0 }.values(4);
        assert_eq!(h, vec![0.0, 1.0, 1.5, 1.5 + 1.0 / 3.0]);
    }

    #[test]
    fn eventually_constant_settles() {
        let v = Generator::EventuallyConstant {
            switch: 4,
            level: 0.5,
        }
        .values(8);
        assert_eq!(v[0], 1.5);
        assert!(v[4..].iter().all(|&x| x == 0.5));
    }
}
