//! Deterministic probe generation for the identity checkers.
//!
//! Every checker evaluates its identities on (i) all basis data and (ii) a
//! seeded batch of random polynomial-coefficient sections and functions.
//! Coefficients come from a small exact pool, so witnesses stay readable and
//! nothing ever rounds. The twist φ* is what makes polynomial (rather than
//! constant) coefficients essential: scaling laws differ between the two
//! variants precisely on function multiples of basis sections.

use crate::algebroid::section::Section;
use crate::kernel::base::BaseGeometry;
use crate::kernel::poly::{Monomial, Poly};
use crate::kernel::rational::{rat, rat_int, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub struct Sampler {
    rng: ChaCha8Rng,
    base: Arc<BaseGeometry>,
    rank: usize,
    max_degree: u32,
}

fn coefficient_pool() -> Vec<Rational> {
    vec![
        rat_int(0),
        rat_int(1),
        rat_int(-1),
        rat(1, 2),
        rat(-1, 2),
        rat_int(2),
    ]
}

/// All exponent vectors in `n_vars` variables with total degree ≤ cap,
/// in a fixed enumeration order.
fn monomials_up_to(n_vars: usize, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos == current.len() {
            out.push(Monomial(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            rec(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, cap);
    out
}

impl Sampler {
    pub fn new(base: Arc<BaseGeometry>, rank: usize, seed: u64, max_degree: u32) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            base,
            rank,
            max_degree,
        }
    }

    pub fn random_poly(&mut self) -> Poly {
        let pool = coefficient_pool();
        let vars = self.base.vars();
        let mut terms = Poly::zero(vars);
        for m in monomials_up_to(vars.len(), self.max_degree) {
            let c = &pool[self.rng.gen_range(0..pool.len())];
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let mut mono = Poly::one(vars);
            for (j, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    mono = &mono * &Poly::variable(vars, j);
                }
            }
            terms = &terms + &mono.scale(c);
        }
        terms
    }

    pub fn random_section(&mut self) -> Section {
        let coeffs = (0..self.rank).map(|_| self.random_poly()).collect();
        Section::new(self.base.clone(), coeffs).expect("coefficients share the base")
    }

    pub fn basis_sections(&self) -> Vec<Section> {
        (0..self.rank)
            .map(|i| Section::basis(self.base.clone(), self.rank, i))
            .collect()
    }

    /// Basis sections plus `trials` random ones: the section pool every
    /// identity is evaluated over.
    pub fn section_pool(&mut self, trials: usize) -> Vec<Section> {
        let mut pool = self.basis_sections();
        for _ in 0..trials {
            pool.push(self.random_section());
        }
        pool
    }

    /// All basis tuples of the given arity plus `trials` random tuples.
    pub fn section_tuples(&mut self, arity: usize, trials: usize) -> Vec<Vec<Section>> {
        let mut tuples = Vec::new();
        let basis = self.basis_sections();
        let mut idx = vec![0usize; arity];
        if self.rank > 0 && arity > 0 {
            loop {
                tuples.push(idx.iter().map(|&i| basis[i].clone()).collect());
                let mut pos = arity;
                let mut done = true;
                while pos > 0 {
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < self.rank {
                        done = false;
                        break;
                    }
                    idx[pos] = 0;
                }
                if done {
                    break;
                }
            }
        } else if arity == 0 {
            tuples.push(Vec::new());
        }
        for _ in 0..trials {
            tuples.push((0..arity).map(|_| self.random_section()).collect());
        }
        tuples
    }

    /// 1, every variable, every quadratic variable pair, plus `trials`
    /// random polynomials.
    pub fn function_probes(&mut self, trials: usize) -> Vec<Poly> {
        let vars = self.base.vars();
        let mut probes = vec![Poly::one(vars)];
        for j in 0..vars.len() {
            probes.push(Poly::variable(vars, j));
        }
        for j in 0..vars.len() {
            for k in j..vars.len() {
                probes.push(&Poly::variable(vars, j) * &Poly::variable(vars, k));
            }
        }
        for _ in 0..trials {
            probes.push(self.random_poly());
        }
        probes
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::poly::Vars;

    fn base2() -> Arc<BaseGeometry> {
        Arc::new(BaseGeometry::identity(Vars::new(["x", "y"])))
    }

    #[test]
    fn deterministic_under_seed() {
        let mut a = Sampler::new(base2(), 2, 42, 2);
        let mut b = Sampler::new(base2(), 2, 42, 2);
        for _ in 0..5 {
            assert_eq!(a.random_section(), b.random_section());
        }
        let mut c = Sampler::new(base2(), 2, 43, 2);
        let left: Vec<_> = (0..5).map(|_| a.random_section()).collect();
        let right: Vec<_> = (0..5).map(|_| c.random_section()).collect();
        assert_ne!(left, right);
    }

    #[test]
    fn degree_cap_respected() {
        let mut s = Sampler::new(base2(), 1, 7, 2);
        for _ in 0..20 {
            let p = s.random_poly();
            if let Some(d) = p.total_degree() {
                assert!(d <= 2);
            }
        }
    }

    #[test]
    fn tuple_counts() {
        let mut s = Sampler::new(base2(), 2, 7, 3);
        let tuples = s.section_tuples(2, 3);
        assert_eq!(tuples.len(), 4 + 3);
        let monos = monomials_up_to(2, 2);
        assert_eq!(monos.len(), 6); // 1, y, x, y², xy, x²
    }
}
