//! Root data in ε-coordinates, written out per family from the textbook
//! realizations. Used as an oracle independent of the library's Cartan
//! matrix, root closure and pairing.

#![allow(dead_code)]

use ulrich_lab::{Family, Rational};

pub struct EpsSystem {
    pub family: Family,
    pub n: usize,
    /// Positive roots as (ε-vector, simple-root coefficients).
    pub roots: Vec<(Vec<Rational>, Vec<i64>)>,
    /// Fundamental weights as ε-vectors.
    pub fundamentals: Vec<Vec<Rational>>,
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// `α_i + … + α_{j-1}` as a coefficient vector (1-based, empty if `i ≥ j`).
fn seg(n: usize, i: usize, j: usize) -> Vec<i64> {
    (1..=n).map(|k| i64::from(i <= k && k < j)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn unit(n: usize, k: usize) -> Vec<i64> {
    (1..=n).map(|i| i64::from(i == k)).collect()
}

fn eps(dim: usize, terms: &[(usize, i64)]) -> Vec<Rational> {
    let mut v = vec![q(0); dim];
    for &(i, c) in terms {
        v[i - 1] += q(c);
    }
    v
}

impl EpsSystem {
    pub fn new(family: Family, n: usize) -> Self {
        let mut roots = Vec::new();
        let dim = if family == Family::A { n + 1 } else { n };
        match family {
            Family::A => {
                for i in 1..=n + 1 {
                    for j in i + 1..=n + 1 {
                        roots.push((eps(dim, &[(i, 1), (j, -1)]), seg(n, i, j)));
                    }
                }
            }
            Family::B => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        roots.push((eps(dim, &[(i, 1), (j, -1)]), seg(n, i, j)));
                        roots.push((eps(dim, &[(i, 1), (j, 1)]), add(&seg(n, i, n + 1), &seg(n, j, n + 1))));
                    }
                    roots.push((eps(dim, &[(i, 1)]), seg(n, i, n + 1)));
                }
            }
            Family::C => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        roots.push((eps(dim, &[(i, 1), (j, -1)]), seg(n, i, j)));
                        let c = add(&add(&seg(n, i, n), &seg(n, j, n)), &unit(n, n));
                        roots.push((eps(dim, &[(i, 1), (j, 1)]), c));
                    }
                    let c = add(&add(&seg(n, i, n), &seg(n, i, n)), &unit(n, n));
                    roots.push((eps(dim, &[(i, 2)]), c));
                }
            }
            Family::D => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        roots.push((eps(dim, &[(i, 1), (j, -1)]), seg(n, i, j)));
                        let c = add(&add(&seg(n, i, n - 1), &seg(n, j, n)), &unit(n, n));
                        roots.push((eps(dim, &[(i, 1), (j, 1)]), c));
                    }
                }
            }
        }
        let prefix = |i: usize, c: Rational| -> Vec<Rational> {
            (1..=dim).map(|k| if k <= i { c } else { q(0) }).collect()
        };
        let fundamentals = (1..=n)
            .map(|i| match family {
                Family::A => {
                    let shift = Rational::new(i as i64, (n + 1) as i64);
                    (1..=dim).map(|k| if k <= i { q(1) - shift } else { -shift }).collect()
                }
                Family::B if i == n => prefix(n, half()),
                Family::D if i == n => prefix(n, half()),
                Family::D if i == n - 1 => {
                    let mut v = prefix(n, half());
                    v[n - 1] = -half();
                    v
                }
                _ => prefix(i, q(1)),
            })
            .collect();
        EpsSystem { family, n, roots, fundamentals }
    }

    pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    /// Positive roots in simple-root coordinates, sorted.
    pub fn simple_coords(&self) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.roots.iter().map(|r| r.1.clone()).collect();
        v.sort();
        v
    }

    pub fn weight(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let dim = self.fundamentals[0].len();
        let mut w = vec![q(0); dim];
        for (c, f) in coeffs.iter().zip(&self.fundamentals) {
            for (x, y) in w.iter_mut().zip(f) {
                *x += c * y;
            }
        }
        w
    }

    /// Roots meeting a marked node.
    pub fn marked(&self, nodes: &[usize]) -> Vec<&(Vec<Rational>, Vec<i64>)> {
        self.roots.iter().filter(|(_, c)| nodes.iter().any(|&d| c[d - 1] != 0)).collect()
    }

    /// Sorted values `(λ + ρ, α) / (η, α)` over the marked roots.
    pub fn datum(&self, nodes: &[usize], a: &[i64]) -> Vec<Rational> {
        let shifted = self.weight(&a.iter().map(|x| q(x + 1)).collect::<Vec<_>>());
        let eta = self.weight(&(1..=self.n).map(|k| q(i64::from(nodes.contains(&k)))).collect::<Vec<_>>());
        let mut v: Vec<Rational> = self
            .marked(nodes)
            .into_iter()
            .map(|(e, _)| Self::dot(&shifted, e) / Self::dot(&eta, e))
            .collect();
        v.sort();
        v
    }

    /// `(α_j, α_j) / 2` for the simple roots.
    pub fn symmetrizer(&self) -> Vec<Rational> {
        (1..=self.n)
            .map(|j| {
                let e = &self.roots.iter().find(|(_, c)| *c == unit(self.n, j)).expect("simple root").0;
                Self::dot(e, e) / q(2)
            })
            .collect()
    }
}

/// `lcm(1..=m)` by trial multiplication, independent of any gcd routine.
pub fn brute_lcm(values: &[i64]) -> i64 {
    let max: i64 = values.iter().product::<i64>().max(1);
    (1..=max).find(|m| values.iter().all(|v| m % v == 0)).unwrap_or(max)
}

/// Node sets of rank `n` in increasing bitmask order.
pub fn all_node_sets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n)).map(|m| (1..=n).filter(|k| m & (1 << (k - 1)) != 0).collect()).collect()
}
