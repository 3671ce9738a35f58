//! JSON file formats: circuits, morphisms, boundary states, defect scripts.
//!
//! Circuit file:
//!
//! ```json
//! {"catbits": 2,
//!  "gates": {"cnot": {"arity": 2, "matrix": [[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]}},
//!  "layers": [[{"gate": "cnot", "wires": [0, 1]}]]}
//! ```
//!
//! Layers are listed in time order. Matrix rows are indexed by target simple.
//! Complex entries of morphism files are `[re, im]` pairs.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::category::{Morphism, ObjectExpr, SemisimpleCategory};
use crate::circuit::{register_size, Circuit, Diagnostic, Gate, Layer, Placement};
use crate::error::CatError;
use crate::functor::LinearFunctor;
use crate::linalg::{CMatrix, IntMatrix};
use crate::topo::{BoundaryState, Defect, DefectScript};

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub catbits: u64,
    #[serde(default)]
    pub gates: BTreeMap<String, GateSpec>,
    #[serde(default)]
    pub layers: Vec<Vec<PlacementSpec>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GateSpec {
    pub arity: u64,
    pub matrix: Vec<Vec<Number>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementSpec {
    pub gate: String,
    pub wires: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub src: Vec<u64>,
    pub tgt: Vec<u64>,
    /// One block per simple; each block is a list of rows of `[re, im]`.
    pub blocks: Vec<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub category: u64,
    pub particle: Vec<u64>,
    #[serde(default)]
    pub history: Vec<String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptFile {
    pub defects: Vec<DefectSpec>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DefectSpec {
    pub name: String,
    pub matrix: Vec<Vec<Number>>,
}

pub fn cat_diagnostic(err: &CatError, location: &str) -> Diagnostic {
    let code = match err {
        CatError::Overflow(_) => "overflow",
        CatError::CategoryMismatch { .. } => "category-mismatch",
        CatError::Shape(_) => "shape",
        _ => "invalid",
    };
    Diagnostic::new(code, err.to_string(), location)
}

/// Reads a non-negative integer matrix with exactly `rows × cols` entries.
pub fn parse_matrix(
    raw: &[Vec<Number>],
    rows: usize,
    cols: usize,
    location: &str,
) -> Result<IntMatrix, Diagnostic> {
    if raw.len() != rows || raw.iter().any(|r| r.len() != cols) {
        let found_cols = raw.first().map_or(0, Vec::len);
        return Err(Diagnostic::new(
            "shape",
            format!("expected a {rows}x{cols} matrix, found {}x{found_cols}", raw.len()),
            location,
        ));
    }
    let mut data = Vec::with_capacity(rows);
    for (r, row) in raw.iter().enumerate() {
        let mut out = Vec::with_capacity(cols);
        for (c, x) in row.iter().enumerate() {
            let loc = format!("{location}[{r}][{c}]");
            match x.as_u64() {
                Some(v) => out.push(v),
                None if x.as_i64().is_some() => {
                    return Err(Diagnostic::new(
                        "negative-entry",
                        format!("multiplicity {x} is negative"),
                        loc,
                    ))
                }
                None => {
                    return Err(Diagnostic::new(
                        "entry-type",
                        format!("multiplicity {x} is not a non-negative integer"),
                        loc,
                    ))
                }
            }
        }
        data.push(out);
    }
    IntMatrix::from_rows(data, cols).map_err(|e| cat_diagnostic(&e, location))
}

impl CircuitFile {
    /// Builds the circuit, or every diagnostic found. A gate whose
    /// declaration is broken reports once; placements using it are not
    /// reported again.
    pub fn to_circuit(&self) -> Result<Circuit, Vec<Diagnostic>> {
        let mut diags = Vec::new();
        let n = match usize::try_from(self.catbits) {
            Ok(n) => n,
            Err(_) => {
                return Err(vec![Diagnostic::new(
                    "overflow",
                    "catbits does not fit the native word size",
                    "$.catbits",
                )])
            }
        };
        let mut circuit = Circuit::new(n);
        let mut unusable = BTreeSet::new();
        for (name, spec) in &self.gates {
            let loc = format!("$.gates.{name}");
            match gate_from_spec(name, spec, &loc) {
                Ok(g) => circuit = circuit.with_gate(g),
                Err(d) => {
                    diags.push(d);
                    // stand-in so placements are still checked against the declared arity
                    match placeholder_gate(name, spec.arity) {
                        Some(g) => circuit = circuit.with_gate(g),
                        None => {
                            unusable.insert(name.clone());
                        }
                    }
                }
            }
        }
        for (li, layer) in self.layers.iter().enumerate() {
            let mut placements = Vec::with_capacity(layer.len());
            for (pi, p) in layer.iter().enumerate() {
                if unusable.contains(&p.gate) {
                    continue;
                }
                let mut wires = Vec::with_capacity(p.wires.len());
                for (wi, &w) in p.wires.iter().enumerate() {
                    match usize::try_from(w) {
                        Ok(w) => wires.push(w),
                        Err(_) => diags.push(Diagnostic::new(
                            "wire-range",
                            format!("wire {w} is negative"),
                            format!("$.layers[{li}][{pi}].wires[{wi}]"),
                        )),
                    }
                }
                placements.push(Placement::new(p.gate.clone(), wires));
            }
            circuit = circuit.with_layer(Layer::new(placements));
        }
        diags.extend(circuit.validate());
        if diags.is_empty() {
            Ok(circuit)
        } else {
            Err(diags)
        }
    }
}

fn placeholder_gate(name: &str, arity: u64) -> Option<Gate> {
    let arity = usize::try_from(arity).ok().filter(|&k| (1..=12).contains(&k))?;
    let size = register_size(arity).ok()?;
    Gate::from_matrix(name, arity, IntMatrix::identity(size).to_rows()).ok()
}

fn gate_from_spec(name: &str, spec: &GateSpec, loc: &str) -> Result<Gate, Diagnostic> {
    let arity = usize::try_from(spec.arity).unwrap_or(usize::MAX);
    if arity == 0 {
        return Err(Diagnostic::new(
            "arity",
            "gate arity must be positive",
            format!("{loc}.arity"),
        ));
    }
    let size = register_size(arity).map_err(|e| cat_diagnostic(&e, &format!("{loc}.arity")))?;
    let matrix = parse_matrix(&spec.matrix, size, size, &format!("{loc}.matrix"))?;
    let functor = LinearFunctor::endo_from_rows(matrix.to_rows())
        .and_then(|f| Gate::new(name, arity, f))
        .map_err(|e| cat_diagnostic(&e, &format!("{loc}.matrix")))?;
    Ok(functor)
}

impl MorphismFile {
    pub fn to_morphism(&self, category: &SemisimpleCategory) -> Result<Morphism, Diagnostic> {
        let src = ObjectExpr::new(category, self.src.clone())
            .map_err(|e| cat_diagnostic(&e, "$.src"))?;
        let tgt = ObjectExpr::new(category, self.tgt.clone())
            .map_err(|e| cat_diagnostic(&e, "$.tgt"))?;
        if self.blocks.len() != category.simple_count() {
            return Err(Diagnostic::new(
                "shape",
                format!(
                    "{} blocks for {} simples",
                    self.blocks.len(),
                    category.simple_count()
                ),
                "$.blocks",
            ));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (i, raw) in self.blocks.iter().enumerate() {
            let cols = usize::try_from(self.src[i]).unwrap_or(usize::MAX);
            let rows = raw
                .iter()
                .map(|row| row.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
                .collect();
            let m = CMatrix::from_rows(rows, cols)
                .map_err(|e| cat_diagnostic(&e, &format!("$.blocks[{i}]")))?;
            blocks.push(m);
        }
        Morphism::new(src, tgt, blocks).map_err(|e| cat_diagnostic(&e, "$.blocks"))
    }

    /// Serializes with entries rounded to 1e-12 and magnitudes below `eps`
    /// written as zero.
    pub fn from_morphism(m: &Morphism, eps: f64) -> Self {
        let clean = |x: f64| {
            let r = (x * 1e12).round() / 1e12;
            if r.abs() <= eps || r == 0.0 {
                0.0
            } else {
                r
            }
        };
        Self {
            src: m.src().mult().to_vec(),
            tgt: m.tgt().mult().to_vec(),
            blocks: m
                .blocks()
                .iter()
                .map(|b| {
                    (0..b.rows())
                        .map(|r| b.row(r).iter().map(|z| [clean(z.re), clean(z.im)]).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

impl StateFile {
    pub fn to_state(&self) -> Result<BoundaryState, Diagnostic> {
        let n = usize::try_from(self.category)
            .map_err(|_| Diagnostic::new("overflow", "category size too large", "$.category"))?;
        let x = SemisimpleCategory::vect(n);
        let particle = ObjectExpr::new(&x, self.particle.clone())
            .map_err(|e| cat_diagnostic(&e, "$.particle"))?;
        Ok(BoundaryState::with_history(particle, self.history.clone()))
    }

    pub fn from_state(s: &BoundaryState) -> Self {
        Self {
            category: s.category().simple_count() as u64,
            particle: s.particle().mult().to_vec(),
            history: s.history().to_vec(),
        }
    }
}

impl ScriptFile {
    pub fn to_script(&self, n: usize) -> Result<DefectScript, Diagnostic> {
        let defects = self
            .defects
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let loc = format!("$.defects[{k}].matrix");
                let matrix = match parse_matrix(&d.matrix, n, n, &loc) {
                    Ok(m) => m,
                    Err(mut diag) if diag.code == "shape" => {
                        diag.code = "category-mismatch".into();
                        diag.message = format!(
                            "defect {:?} is not an endofunctor of the boundary category vect^{n}: {}",
                            d.name, diag.message
                        );
                        return Err(diag);
                    }
                    Err(diag) => return Err(diag),
                };
                let x = SemisimpleCategory::vect(n);
                LinearFunctor::new(&x, &x, matrix)
                    .and_then(|f| Defect::new(d.name.clone(), f))
                    .map_err(|e| cat_diagnostic(&e, &loc))
            })
            .collect::<Result<Vec<_>, _>>()?;
        DefectScript::new(defects).map_err(|e| cat_diagnostic(&e, "$.defects"))
    }
}

/// Serializes with keys sorted.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    // Value's map is ordered, so round-tripping sorts every object's keys
    let v: Value = serde_json::to_value(value).expect("serializable value");
    serde_json::to_string(&v).expect("serializable value")
}
