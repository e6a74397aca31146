//! Axiom suites: exhaustive on finite carriers, seeded sampling otherwise.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::par::{self, Exec};

use super::{FiniteLattice, Lattice, LatticeGroup, Sample};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub elements: Vec<String>,
}

fn lattice_triple<L: Lattice>(l: &L, x: &L::Elem, y: &L::Elem, z: &L::Elem) -> Option<&'static str> {
    let m = |a: &L::Elem, b: &L::Elem| l.meet(a, b);
    let j = |a: &L::Elem, b: &L::Elem| l.join(a, b);
    if m(x, y) != m(y, x) || j(x, y) != j(y, x) {
        return Some("commutativity");
    }
    if m(&m(x, y), z) != m(x, &m(y, z)) || j(&j(x, y), z) != j(x, &j(y, z)) {
        return Some("associativity");
    }
    if m(x, x) != *x || j(x, x) != *x {
        return Some("idempotence");
    }
    if m(x, &j(x, y)) != *x || j(x, &m(x, y)) != *x {
        return Some("absorption");
    }
    if l.leq(x, y) != (m(x, y) == *x) || l.leq(x, y) != (j(x, y) == *y) {
        return Some("order/meet consistency");
    }
    None
}

/// Exhaustive check over all triples of a finite carrier.
pub fn check_lattice_axioms<L: FiniteLattice>(lattice: &L) -> Option<AxiomViolation> {
    let els = lattice.elements();
    let n = els.len() as u64;
    par::find_first(Exec::default(), 0..n * n * n, |i| {
        let t = [&els[(i / (n * n)) as usize], &els[(i / n % n) as usize], &els[(i % n) as usize]];
        lattice_triple(lattice, t[0], t[1], t[2])
            .map(|axiom| AxiomViolation { axiom, elements: t.iter().map(|e| lattice.show(e)).collect() })
    })
}

pub fn check_lattice_axioms_sampled<L: Sample>(lattice: &L, samples: usize, seed: u64) -> Option<AxiomViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).find_map(|_| {
        let t = [lattice.sample(&mut rng), lattice.sample(&mut rng), lattice.sample(&mut rng)];
        lattice_triple(lattice, &t[0], &t[1], &t[2])
            .map(|axiom| AxiomViolation { axiom, elements: t.iter().map(|e| lattice.show(e)).collect() })
    })
}

fn group_triple<G: LatticeGroup>(g: &G, x: &G::Elem, y: &G::Elem, z: &G::Elem) -> Option<&'static str> {
    let zero = g.zero();
    if g.add(x, y) != g.add(y, x) || g.add(&g.add(x, y), z) != g.add(x, &g.add(y, z)) {
        return Some("additive commutativity/associativity");
    }
    if g.add(x, &zero) != *x || g.add(x, &g.neg(x)) != zero {
        return Some("additive identity/inverse");
    }
    if g.leq(x, y) && !g.leq(&g.add(x, z), &g.add(y, z)) {
        return Some("translation invariance");
    }
    let (p, n) = (g.pos_part(x), g.neg_part(x));
    if g.sub(&p, &n) != *x {
        return Some("x = x⁺ − x⁻");
    }
    if g.add(&p, &n) != g.abs(x) {
        return Some("|x| = x⁺ + x⁻");
    }
    if g.meet(&p, &n) != zero {
        return Some("x⁺ ∧ x⁻ = 0");
    }
    None
}

pub fn check_group_axioms_sampled<G: LatticeGroup + Sample>(
    group: &G,
    samples: usize,
    seed: u64,
) -> Option<AxiomViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).find_map(|_| {
        let t = [group.sample(&mut rng), group.sample(&mut rng), group.sample(&mut rng)];
        let hit = group_triple(group, &t[0], &t[1], &t[2]).or_else(|| {
            // comparable pairs are rare among random samples; force one
            let lo = group.meet(&t[0], &t[1]);
            group_triple(group, &lo, &t[1], &t[2])
        });
        hit.map(|axiom| AxiomViolation { axiom, elements: t.iter().map(|e| group.show(e)).collect() })
    })
}
