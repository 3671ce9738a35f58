//! Categorical circuits over categorical bits.
//!
//! A register of `n` categorical bits is `(vect^2)^{⊠n} = vect^(2^n)`; the
//! simple with flat index `x` carries bit `b_w = (x >> (n-1-w)) & 1` on
//! wire `w`, so wire 0 is the most significant bit.
//!
//! Time order: the first layer listed acts first. In composition notation
//! the circuit `[L1, L2, L3]` elaborates to `L3 ∘ L2 ∘ L1`.
//!
//! Within a layer each placement's wires, in listed order, are moved to the
//! lowest positions (placement order, then untouched wires ascending), the
//! gates are tensored together with the identity on the rest, and the
//! permutation is undone: `π⁻¹ ∘ (G1 ⊠ … ⊠ Gr ⊠ id) ∘ π`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::category::{Morphism, ObjectExpr, SemisimpleCategory};
use crate::deligne::deligne_functor_all;
use crate::error::CatError;
use crate::functor::{
    apply_to_morphism, apply_to_object, compose_functors, identity_functor, LinearFunctor,
};
use crate::linalg::IntMatrix;

/// One validation failure, located by a JSON path into the circuit file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: String,
    pub message: String,
    pub location: String,
}

impl Diagnostic {
    pub fn new(code: &str, message: impl Into<String>, location: impl Into<String>) -> Self {
        Self {
            code: code.to_string(),
            message: message.into(),
            location: location.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code, self.location, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error("invalid circuit: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Cat(#[from] CatError),
}

pub type CircuitResult<T> = std::result::Result<T, CircuitError>;

/// `vect^(2^n)` with simples labelled by their bitstrings.
pub fn register_category(n: usize) -> Result<SemisimpleCategory, CatError> {
    let size = register_size(n)?;
    SemisimpleCategory::with_labels((0..size).map(|x| bitstring(x, n)))
}

pub fn register_size(n: usize) -> Result<usize, CatError> {
    u32::try_from(n)
        .ok()
        .and_then(|n| 1usize.checked_shl(n))
        .filter(|&s| s.checked_mul(s).is_some())
        .ok_or(CatError::Overflow("register size"))
}

pub fn bitstring(x: usize, n: usize) -> String {
    (0..n)
        .map(|w| if (x >> (n - 1 - w)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a bitstring of wire values (wire 0 first) into a flat index.
pub fn parse_bitstring(s: &str) -> Option<usize> {
    if s.is_empty() || s.len() >= usize::BITS as usize {
        return None;
    }
    s.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Some(acc << 1),
        '1' => Some((acc << 1) | 1),
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    name: String,
    arity: usize,
    functor: LinearFunctor,
}

impl Gate {
    /// `functor` must be an endofunctor of `vect^(2^arity)`.
    pub fn new(name: impl Into<String>, arity: usize, functor: LinearFunctor) -> Result<Self, CatError> {
        if arity == 0 {
            return Err(CatError::Shape("gate arity must be positive".into()));
        }
        let size = register_size(arity)?;
        if functor.matrix().shape() != (size, size) {
            return Err(CatError::Shape(format!(
                "arity-{arity} gate needs a {size}x{size} matrix, got {}x{}",
                functor.matrix().rows(),
                functor.matrix().cols()
            )));
        }
        let reg = register_category(arity)?;
        Ok(Self {
            name: name.into(),
            arity,
            functor: functor.relabelled(&reg, &reg)?,
        })
    }

    pub fn from_matrix(name: impl Into<String>, arity: usize, rows: Vec<Vec<u64>>) -> Result<Self, CatError> {
        Self::new(name, arity, LinearFunctor::endo_from_rows(rows)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn functor(&self) -> &LinearFunctor {
        &self.functor
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub gate: String,
    pub wires: Vec<usize>,
}

impl Placement {
    pub fn new(gate: impl Into<String>, wires: Vec<usize>) -> Self {
        Self {
            gate: gate.into(),
            wires,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Layer {
    pub placements: Vec<Placement>,
}

impl Layer {
    pub fn new(placements: Vec<Placement>) -> Self {
        Self { placements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n_catbits: usize,
    gates: BTreeMap<String, Gate>,
    layers: Vec<Layer>,
}

impl Circuit {
    pub fn new(n_catbits: usize) -> Self {
        Self {
            n_catbits,
            gates: BTreeMap::new(),
            layers: Vec::new(),
        }
    }

    pub fn with_gate(mut self, gate: Gate) -> Self {
        self.gates.insert(gate.name.clone(), gate);
        self
    }

    pub fn with_layer(mut self, layer: Layer) -> Self {
        self.layers.push(layer);
        self
    }

    pub fn n_catbits(&self) -> usize {
        self.n_catbits
    }

    pub fn gates(&self) -> &BTreeMap<String, Gate> {
        &self.gates
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// `self` followed by `next` in time. Gate names shared by both circuits
    /// must denote the same gate.
    pub fn then(&self, next: &Circuit) -> CircuitResult<Circuit> {
        if self.n_catbits != next.n_catbits {
            return Err(CircuitError::Invalid(vec![Diagnostic::new(
                "catbits",
                format!(
                    "cannot concatenate circuits on {} and {} categorical bits",
                    self.n_catbits, next.n_catbits
                ),
                "$.catbits",
            )]));
        }
        let mut gates = self.gates.clone();
        for (name, gate) in &next.gates {
            match gates.get(name) {
                Some(existing) if existing != gate => {
                    return Err(CircuitError::Invalid(vec![Diagnostic::new(
                        "gate-conflict",
                        format!("gate {name:?} is declared differently in the two circuits"),
                        format!("$.gates.{name}"),
                    )]))
                }
                _ => {
                    gates.insert(name.clone(), gate.clone());
                }
            }
        }
        let layers = self.layers.iter().chain(&next.layers).cloned().collect();
        Ok(Circuit {
            n_catbits: self.n_catbits,
            gates,
            layers,
        })
    }

    /// Structural checks; one diagnostic per failure, in document order.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.n_catbits == 0 {
            out.push(Diagnostic::new(
                "catbits",
                "a circuit needs at least one categorical bit",
                "$.catbits",
            ));
        } else if register_size(self.n_catbits).is_err() {
            out.push(Diagnostic::new(
                "overflow",
                format!("{} categorical bits exceed the addressable register", self.n_catbits),
                "$.catbits",
            ));
        }
        for (li, layer) in self.layers.iter().enumerate() {
            let mut used = BTreeSet::new();
            for (pi, p) in layer.placements.iter().enumerate() {
                let loc = format!("$.layers[{li}][{pi}]");
                let Some(gate) = self.gates.get(&p.gate) else {
                    out.push(Diagnostic::new(
                        "undeclared-gate",
                        format!("gate {:?} is not declared", p.gate),
                        format!("{loc}.gate"),
                    ));
                    continue;
                };
                if p.wires.len() != gate.arity {
                    out.push(Diagnostic::new(
                        "arity",
                        format!(
                            "gate {:?} has arity {} but is placed on {} wires",
                            p.gate,
                            gate.arity,
                            p.wires.len()
                        ),
                        format!("{loc}.wires"),
                    ));
                    continue;
                }
                let mut local = BTreeSet::new();
                for (wi, &w) in p.wires.iter().enumerate() {
                    let wloc = format!("{loc}.wires[{wi}]");
                    if w >= self.n_catbits {
                        out.push(Diagnostic::new(
                            "wire-range",
                            format!("wire {w} out of range for {} categorical bits", self.n_catbits),
                            wloc,
                        ));
                    } else if !local.insert(w) {
                        out.push(Diagnostic::new(
                            "wire-duplicate",
                            format!("wire {w} listed twice in one placement"),
                            wloc,
                        ));
                    } else if !used.insert(w) {
                        out.push(Diagnostic::new(
                            "wire-clash",
                            format!("wire {w} is used by more than one placement in layer {li}"),
                            wloc,
                        ));
                    }
                }
            }
        }
        out
    }

    fn ensure_valid(&self) -> CircuitResult<()> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            Err(CircuitError::Invalid(diags))
        }
    }
}

/// Permutation functor on `vect^(2^n)` moving the bit on wire `i` to wire
/// `perm[i]`.
pub fn permutation_functor(perm: &[usize]) -> Result<LinearFunctor, CatError> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(CatError::NotAPermutation(format!("{perm:?}")));
        }
    }
    let size = register_size(n)?;
    let mut m = IntMatrix::zeros(size, size);
    for x in 0..size {
        let y = (0..n).fold(0usize, |acc, i| {
            let bit = (x >> (n - 1 - i)) & 1;
            acc | (bit << (n - 1 - perm[i]))
        });
        m.set(y, x, 1);
    }
    let reg = register_category(n)?;
    LinearFunctor::new(&reg, &reg, m)
}

pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// The functor realized by one layer, on the full register.
pub fn layer_functor(c: &Circuit, layer: &Layer) -> CircuitResult<LinearFunctor> {
    let n = c.n_catbits;
    let reg = register_category(n)?;
    let mut order: Vec<usize> = layer
        .placements
        .iter()
        .flat_map(|p| p.wires.iter().copied())
        .collect();
    let touched: BTreeSet<usize> = order.iter().copied().collect();
    let rest = n - touched.len();
    order.extend((0..n).filter(|w| !touched.contains(w)));
    // order[pos] = wire, so the contiguizing map wire ↦ pos is its inverse
    let to_front = invert_permutation(&order);

    let mut factors: Vec<LinearFunctor> = layer
        .placements
        .iter()
        .map(|p| c.gates[&p.gate].functor.clone())
        .collect();
    factors.push(identity_functor(&SemisimpleCategory::vect(register_size(rest)?)));
    let core = deligne_functor_all(&factors)?.relabelled(&reg, &reg)?;

    let pi = permutation_functor(&to_front)?;
    let pi_inv = permutation_functor(&order)?;
    Ok(compose_functors(&pi_inv, &compose_functors(&core, &pi)?)?)
}

/// Per-layer functors in time order.
pub fn layer_functors(c: &Circuit) -> CircuitResult<Vec<LinearFunctor>> {
    c.ensure_valid()?;
    c.layers.iter().map(|l| layer_functor(c, l)).collect()
}

/// The single endofunctor of `vect^(2^n)` realized by the circuit.
pub fn elaborate(c: &Circuit) -> CircuitResult<LinearFunctor> {
    let layers = layer_functors(c)?;
    let reg = register_category(c.n_catbits)?;
    layers
        .iter()
        .try_fold(identity_functor(&reg), |acc, l| {
            compose_functors(l, &acc).map_err(CircuitError::from)
        })
}

pub fn run_object(c: &Circuit, a: &ObjectExpr) -> CircuitResult<ObjectExpr> {
    Ok(apply_to_object(&elaborate(c)?, a)?)
}

pub fn run_morphism(c: &Circuit, f: &Morphism) -> CircuitResult<Morphism> {
    Ok(apply_to_morphism(&elaborate(c)?, f)?)
}

/// Lifts `f: {0,1}^n → {0,1}^n`, given as its table of flat indices, to
/// the functor sending simple `e_x` to `e_{f(x)}`.
pub fn lift_boolean_function(n: usize, table: &[usize]) -> Result<LinearFunctor, CatError> {
    if n == 0 {
        return Err(CatError::BadTable("need at least one bit".into()));
    }
    let size = register_size(n)?;
    if table.len() != size {
        return Err(CatError::BadTable(format!(
            "table has {} entries, expected {size}",
            table.len()
        )));
    }
    if let Some(&bad) = table.iter().find(|&&y| y >= size) {
        return Err(CatError::BadTable(format!("output {bad} out of range")));
    }
    let reg = register_category(n)?;
    let m = IntMatrix::from_fn(size, size, |y, x| u64::from(table[x] == y));
    LinearFunctor::new(&reg, &reg, m)
}

/// A one-layer circuit applying the lift of `table` to all wires in order.
pub fn lift_circuit(n: usize, table: &[usize]) -> CircuitResult<Circuit> {
    let gate = Gate::new("f", n, lift_boolean_function(n, table)?)?;
    Ok(Circuit::new(n)
        .with_gate(gate)
        .with_layer(Layer::new(vec![Placement::new("f", (0..n).collect())])))
}

/// Decategorification: the integer matrix `K_0(F): ℤ^m → ℤ^n`.
pub fn k0_of_functor(f: &LinearFunctor) -> IntMatrix {
    f.matrix().clone()
}

pub fn k0_of_circuit(c: &Circuit) -> CircuitResult<IntMatrix> {
    Ok(k0_of_functor(&elaborate(c)?))
}

/// Time-ordered product of the per-layer `K_0` matrices, computed without
/// going through [`elaborate`].
pub fn k0_layer_product(c: &Circuit) -> CircuitResult<IntMatrix> {
    let size = register_size(c.n_catbits)?;
    layer_functors(c)?
        .iter()
        .try_fold(IntMatrix::identity(size), |acc, l| {
            k0_of_functor(l).checked_mul(&acc).map_err(CircuitError::from)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_gate() -> Gate {
        Gate::new("swap", 2, permutation_functor(&[1, 0]).unwrap()).unwrap()
    }

    fn basis(n: usize, x: usize) -> ObjectExpr {
        ObjectExpr::simple(&register_category(n).unwrap(), x).unwrap()
    }

    #[test]
    fn permutation_functor_examples() {
        assert!(permutation_functor(&[0, 1, 2]).unwrap().matrix().is_identity());
        let swap = permutation_functor(&[1, 0]).unwrap();
        let oracle = IntMatrix::from_rows(
            vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 1]],
            4,
        )
        .unwrap();
        assert_eq!(swap.matrix(), &oracle);
        let p = [2, 0, 1];
        let composed = compose_functors(
            &permutation_functor(&p).unwrap(),
            &permutation_functor(&invert_permutation(&p)).unwrap(),
        )
        .unwrap();
        assert!(composed.matrix().is_identity());
        assert!(permutation_functor(&[0, 0]).is_err());
        assert!(permutation_functor(&[0, 2]).is_err());
    }

    #[test]
    fn bitstrings() {
        assert_eq!(bitstring(2, 2), "10");
        assert_eq!(parse_bitstring("10"), Some(2));
        assert_eq!(parse_bitstring("1x"), None);
        assert_eq!(parse_bitstring(""), None);
    }

    #[test]
    fn empty_circuit_is_identity() {
        for n in 1..4 {
            assert!(elaborate(&Circuit::new(n)).unwrap().matrix().is_identity());
        }
    }

    #[test]
    fn single_gate_elaborates_to_itself() {
        let d = 3;
        let g = Gate::from_matrix("tensor", 1, vec![vec![d, 0], vec![0, d]]).unwrap();
        let c = Circuit::new(1)
            .with_gate(g.clone())
            .with_layer(Layer::new(vec![Placement::new("tensor", vec![0])]));
        assert_eq!(elaborate(&c).unwrap(), *g.functor());
    }

    #[test]
    fn swap_twice_is_identity() {
        let c = Circuit::new(2)
            .with_gate(swap_gate())
            .with_layer(Layer::new(vec![Placement::new("swap", vec![0, 1])]))
            .with_layer(Layer::new(vec![Placement::new("swap", vec![0, 1])]));
        assert!(elaborate(&c).unwrap().matrix().is_identity());
    }

    #[test]
    fn run_object_examples() {
        assert_eq!(run_object(&Circuit::new(2), &basis(2, 0)).unwrap(), basis(2, 0));
        let not = Gate::from_matrix("not", 1, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = Circuit::new(1)
            .with_gate(not)
            .with_layer(Layer::new(vec![Placement::new("not", vec![0])]));
        assert_eq!(run_object(&c, &basis(1, 0)).unwrap(), basis(1, 1));

        let cnot = lift_circuit(2, &[0, 1, 3, 2]).unwrap();
        assert_eq!(run_object(&cnot, &basis(2, 0b10)).unwrap(), basis(2, 0b11));
    }

    #[test]
    fn gate_on_second_wire_acts_on_low_bit() {
        let not = Gate::from_matrix("not", 1, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = Circuit::new(2)
            .with_gate(not)
            .with_layer(Layer::new(vec![Placement::new("not", vec![1])]));
        assert_eq!(run_object(&c, &basis(2, 0b00)).unwrap(), basis(2, 0b01));
        assert_eq!(run_object(&c, &basis(2, 0b10)).unwrap(), basis(2, 0b11));
    }

    #[test]
    fn reversed_wires_flip_control() {
        let cnot = Gate::new("cnot", 2, lift_boolean_function(2, &[0, 1, 3, 2]).unwrap()).unwrap();
        let c = Circuit::new(2)
            .with_gate(cnot)
            .with_layer(Layer::new(vec![Placement::new("cnot", vec![1, 0])]));
        // control is now wire 1, target wire 0
        assert_eq!(run_object(&c, &basis(2, 0b01)).unwrap(), basis(2, 0b11));
        assert_eq!(run_object(&c, &basis(2, 0b10)).unwrap(), basis(2, 0b10));
    }

    #[test]
    fn lift_examples() {
        assert!(lift_boolean_function(2, &[0, 1, 2, 3]).unwrap().matrix().is_identity());
        let not = lift_boolean_function(1, &[1, 0]).unwrap();
        assert_eq!(not.matrix().to_rows(), vec![vec![0, 1], vec![1, 0]]);
        let table = [0, 1, 3, 2];
        let cnot = lift_boolean_function(2, &table).unwrap();
        for (x, &y) in table.iter().enumerate() {
            assert_eq!(apply_to_object(&cnot, &basis(2, x)).unwrap(), basis(2, y));
        }
        assert!(lift_boolean_function(2, &[0, 1, 2]).is_err());
        assert!(lift_boolean_function(1, &[0, 2]).is_err());
    }

    #[test]
    fn k0_examples() {
        assert!(k0_of_circuit(&Circuit::new(1)).unwrap().is_identity());
        let cnot = lift_circuit(2, &[0, 1, 3, 2]).unwrap();
        assert_eq!(
            k0_of_circuit(&cnot).unwrap(),
            *lift_boolean_function(2, &[0, 1, 3, 2]).unwrap().matrix()
        );
        let d = 5;
        let g = Gate::from_matrix("t", 1, vec![vec![d, 0], vec![0, d]]).unwrap();
        let c = Circuit::new(2)
            .with_gate(g)
            .with_layer(Layer::new(vec![Placement::new("t", vec![1])]));
        let k = k0_of_circuit(&c).unwrap();
        assert!(k.entries().iter().all(|&x| x == 0 || x == d));
        assert_eq!(k, k0_layer_product(&c).unwrap());
    }

    #[test]
    fn validation_diagnostics() {
        let c = Circuit::new(2)
            .with_gate(swap_gate())
            .with_layer(Layer::new(vec![
                Placement::new("swap", vec![0, 1]),
                Placement::new("nope", vec![0]),
            ]))
            .with_layer(Layer::new(vec![Placement::new("swap", vec![0])]))
            .with_layer(Layer::new(vec![Placement::new("swap", vec![0, 2])]));
        let codes: Vec<String> = c.validate().into_iter().map(|d| d.code).collect();
        assert_eq!(codes, vec!["undeclared-gate", "arity", "wire-range"]);

        let not = Gate::from_matrix("not", 1, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let clash = Circuit::new(2).with_gate(not).with_layer(Layer::new(vec![
            Placement::new("not", vec![0]),
            Placement::new("not", vec![0]),
        ]));
        let diags = clash.validate();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, "wire-clash");
        assert_eq!(diags[0].location, "$.layers[0][1].wires[0]");
        assert!(matches!(elaborate(&clash), Err(CircuitError::Invalid(_))));

        assert_eq!(Circuit::new(0).validate()[0].code, "catbits");
    }

    #[test]
    fn gate_shape_is_checked() {
        let bad = LinearFunctor::endo_from_rows(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
            .unwrap();
        assert!(Gate::new("g", 1, bad).is_err());
    }
}
