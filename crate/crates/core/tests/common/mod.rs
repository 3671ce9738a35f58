#![allow(dead_code)]

use catcomp::category::{Morphism, ObjectExpr, SemisimpleCategory};
use catcomp::circuit::{lift_boolean_function, register_size, Circuit, Gate, Layer, Placement};
use catcomp::functor::LinearFunctor;
use catcomp::linalg::{CMatrix, IntMatrix};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn object(rng: &mut impl Rng, x: &SemisimpleCategory, max_mult: u64) -> ObjectExpr {
    let mult = (0..x.simple_count()).map(|_| rng.gen_range(0..=max_mult)).collect();
    ObjectExpr::new(x, mult).unwrap()
}

pub fn morphism(rng: &mut impl Rng, a: &ObjectExpr, b: &ObjectExpr) -> Morphism {
    let blocks = a
        .mult()
        .iter()
        .zip(b.mult())
        .map(|(&s, &t)| CMatrix::from_fn(t as usize, s as usize, |_, _| complex(rng)))
        .collect();
    Morphism::new(a.clone(), b.clone(), blocks).unwrap()
}

pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, max: u64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| rng.gen_range(0..=max))
}

pub fn functor(
    rng: &mut impl Rng,
    src: &SemisimpleCategory,
    tgt: &SemisimpleCategory,
    max: u64,
) -> LinearFunctor {
    let m = int_matrix(rng, tgt.simple_count(), src.simple_count(), max);
    LinearFunctor::new(src, tgt, m).unwrap()
}

pub fn endofunctor(rng: &mut impl Rng, n: usize, max: u64) -> LinearFunctor {
    let x = SemisimpleCategory::vect(n);
    functor(rng, &x, &x, max)
}

pub fn random_table(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let size = register_size(n).unwrap();
    (0..size).map(|_| rng.gen_range(0..size)).collect()
}

/// Gate table shared by random circuits: NOT, CNOT, a lifted random
/// function, and two non-permutation gates.
pub fn gate_library(rng: &mut impl Rng) -> Vec<Gate> {
    vec![
        Gate::from_matrix("not", 1, vec![vec![0, 1], vec![1, 0]]).unwrap(),
        Gate::new("cnot", 2, lift_boolean_function(2, &[0, 1, 3, 2]).unwrap()).unwrap(),
        Gate::new("f2", 2, lift_boolean_function(2, &random_table(rng, 2)).unwrap()).unwrap(),
        Gate::from_matrix("split", 1, vec![vec![1, 1], vec![0, 2]]).unwrap(),
        Gate::from_matrix(
            "mix",
            2,
            (0..4).map(|_| (0..4).map(|_| rng.gen_range(0..=2)).collect()).collect(),
        )
        .unwrap(),
    ]
}

pub fn random_circuit(rng: &mut impl Rng, n: usize, layers: usize) -> Circuit {
    let gates = gate_library(rng);
    random_circuit_with(rng, &gates, n, layers)
}

pub fn random_circuit_with(rng: &mut impl Rng, gates: &[Gate], n: usize, layers: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for g in gates {
        c = c.with_gate(g.clone());
    }
    for _ in 0..layers {
        let mut free: Vec<usize> = (0..n).collect();
        free.shuffle(rng);
        let mut placements = Vec::new();
        while !free.is_empty() && rng.gen_bool(0.7) {
            let candidates: Vec<&Gate> = gates.iter().filter(|g| g.arity() <= free.len()).collect();
            let g = candidates[rng.gen_range(0..candidates.len())];
            let wires: Vec<usize> = free.drain(..g.arity()).collect();
            placements.push(Placement::new(g.name(), wires));
        }
        c = c.with_layer(Layer::new(placements));
    }
    c
}
