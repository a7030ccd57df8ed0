//! Cusp enumeration against a brute-force orbit computation.
//!
//! Cusps of Gamma0(N) are the orbits of the upper-triangular group mod N
//! acting on primitive column vectors `(a, c)` in `(Z/N)^2`. The oracle
//! builds those orbits with union-find and never looks at `gcd(d, N/d)`.

use std::collections::{BTreeMap, BTreeSet};

use cuspidal_core::{cusp_count, enumerate_cusps, factorize};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

/// A small generating set of `(Z/N)^*`, found greedily.
fn unit_generators(n: u64) -> Vec<u64> {
    if n <= 2 {
        return vec![1];
    }
    let mut in_group = vec![false; n as usize];
    in_group[1] = true;
    let mut gens = Vec::new();
    for u in 2..n {
        if gcd(u, n) != 1 || in_group[u as usize] {
            continue;
        }
        gens.push(u);
        // close the subgroup under multiplication by the generators
        let mut stack: Vec<u64> = (0..n).filter(|&x| in_group[x as usize]).collect();
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = x * g % n;
                if !in_group[y as usize] {
                    in_group[y as usize] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

fn inverse_mod(u: u64, n: u64) -> u64 {
    (1..n.max(2)).find(|&v| u * v % n == 1 % n).unwrap_or(0)
}

struct Orbits {
    n: u64,
    parent: Vec<usize>,
}

impl Orbits {
    fn new(n: u64) -> Self {
        let size = (n * n) as usize;
        let mut parent: Vec<usize> = (0..size).collect();
        let idx = |a: u64, c: u64| (a * n + c) as usize;
        let gens: Vec<(u64, u64)> = unit_generators(n).into_iter().map(|u| (u, inverse_mod(u, n))).collect();
        for a in 0..n {
            for c in 0..n {
                if gcd(gcd(a, c), n) != 1 {
                    continue;
                }
                union(&mut parent, idx(a, c), idx((a + c) % n, c));
                for &(u, v) in &gens {
                    union(&mut parent, idx(a, c), idx(a * u % n, c * v % n));
                }
                // -1 is in the image of Gamma0(N)
                union(&mut parent, idx(a, c), idx((n - a) % n, (n - c) % n));
            }
        }
        Orbits { n, parent }
    }

    fn orbit_of(&mut self, a: u64, c: u64) -> usize {
        let idx = ((a % self.n) * self.n + c % self.n) as usize;
        find(&mut self.parent, idx)
    }

    /// Number of orbits, keyed by the level `gcd(c, N)`.
    fn counts_by_level(&mut self) -> BTreeMap<u64, usize> {
        let n = self.n;
        let mut roots: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
        for a in 0..n {
            for c in 0..n {
                if gcd(gcd(a, c), n) == 1 {
                    let level = gcd(c, n);
                    let r = self.orbit_of(a, c);
                    roots.entry(level).or_default().insert(r);
                }
            }
        }
        roots.into_iter().map(|(d, s)| (d, s.len())).collect()
    }
}

#[test]
fn cusp_counts_match_orbit_enumeration() {
    for n in 1..=300u64 {
        let f = factorize(n).unwrap();
        let mut orbits = Orbits::new(n);
        let by_level = orbits.counts_by_level();
        let total: usize = by_level.values().sum();
        assert_eq!(cusp_count(&f) as usize, total, "N = {n}");
        for class in enumerate_cusps(&f) {
            assert_eq!(by_level.get(&class.level).copied().unwrap_or(0) as u64, class.orbit_size, "N = {n}, level {}", class.level);
        }
    }
}

#[test]
fn representatives_hit_every_orbit_once() {
    for n in 1..=200u64 {
        let f = factorize(n).unwrap();
        let mut orbits = Orbits::new(n);
        let mut seen = BTreeSet::new();
        for class in enumerate_cusps(&f) {
            for &x in &class.representatives {
                assert!(seen.insert(orbits.orbit_of(x, class.level)), "N = {n}: {x}/{} repeats an orbit", class.level);
            }
        }
        assert_eq!(seen.len() as u64, cusp_count(&f), "N = {n}");
    }
}

#[test]
fn small_levels_by_hand() {
    let mut o9 = Orbits::new(9);
    assert_eq!(o9.counts_by_level(), BTreeMap::from([(1, 1), (3, 2), (9, 1)]));
    let mut o12 = Orbits::new(12);
    assert!(o12.counts_by_level().values().all(|&c| c == 1));
    assert_eq!(o12.counts_by_level().len(), 6);
}
