//! Canonical JSON and CSV shapes for polynomials, triples, graphs, and
//! reports. Big integers render as decimal strings, term lists ascend
//! by exponent, and object keys keep their written order, so identical
//! inputs always serialize to identical bytes.

use num_bigint::BigInt;
use serde_json::{json, Value};
use tutte_ss::evaluations::{EvaluationReport, ReportEntry};
use tutte_ss::exactmath::{BiPoly, Rational, RationalFn, UniPoly};
use tutte_ss::graphs::{CornerTriple, Multigraph};
use tutte_ss::recursion::{ReducedTriple, TutteTriple};
use tutte_ss::Family;

/// Bivariate polynomial as {"vars":["x","y"],"terms":[{"e":[i,j],"c":…}]},
/// terms ascending lexicographically by exponent pair.
pub fn bipoly_json(p: &BiPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(&(i, j), c)| json!({"e": [i, j], "c": c.to_string()}))
        .collect();
    json!({"vars": ["x", "y"], "terms": terms})
}

/// Univariate polynomial in the named variable; Laurent polynomials
/// (negative exponents) carry an extra "minExp" key.
pub fn unipoly_json(p: &UniPoly<BigInt>, var: &str) -> Value {
    let terms: Vec<Value> = p
        .iter()
        .map(|(&e, c)| json!({"e": [e], "c": c.to_string()}))
        .collect();
    let mut out = json!({"vars": [var], "terms": terms});
    if let Some(min) = p.min_exp() {
        if min < 0 {
            out["minExp"] = json!(min);
        }
    }
    out
}

fn unipoly_rational_json(p: &UniPoly<Rational>, var: &str) -> Value {
    let terms: Vec<Value> = p
        .iter()
        .map(|(&e, c)| json!({"e": [e], "c": c.to_string()}))
        .collect();
    json!({"vars": [var], "terms": terms})
}

/// Rational function in y as numerator and denominator polynomials.
pub fn rationalfn_json(f: &RationalFn) -> Value {
    json!({
        "num": unipoly_rational_json(f.num(), "y"),
        "den": unipoly_rational_json(f.den(), "y"),
    })
}

/// A whole family polynomial.
pub fn total_json(family: Family, level: u32, p: &BiPoly) -> Value {
    json!({
        "family": family.name(),
        "level": level,
        "polynomial": bipoly_json(p),
    })
}

/// Corner triple in full form.
pub fn full_triple_json(t: &TutteTriple) -> Value {
    json!({
        "family": t.family.name(),
        "level": t.level,
        "t2": bipoly_json(&t.t2),
        "t1": bipoly_json(&t.t1),
        "t0": bipoly_json(&t.t0),
    })
}

/// Corner triple in reduced (division-free) form.
pub fn reduced_triple_json(t: &ReducedTriple) -> Value {
    json!({
        "family": t.family.name(),
        "level": t.level,
        "t2": bipoly_json(&t.t2),
        "n": bipoly_json(&t.n),
        "m": bipoly_json(&t.m),
    })
}

/// One named counting value.
pub fn value_json(family: Family, level: u32, what: &str, value: &BigInt) -> Value {
    json!({
        "family": family.name(),
        "level": level,
        "what": what,
        "value": value.to_string(),
    })
}

/// An arbitrary-point evaluation.
pub fn point_json(family: Family, level: u32, x: &Rational, y: &Rational, value: &Rational) -> Value {
    json!({
        "family": family.name(),
        "level": level,
        "point": [x.to_string(), y.to_string()],
        "value": value.to_string(),
    })
}

fn entry_json(e: &ReportEntry) -> Value {
    let tags: Vec<&str> = e.provenance.iter().map(|p| p.name()).collect();
    json!({"value": e.value.to_string(), "provenance": tags})
}

const REPORT_COLUMNS: [&str; 6] = [
    "complexity",
    "connectedSpanning",
    "forests",
    "acyclicOrientations",
    "totalSubgraphs",
    "chromaticAtThree",
];

fn report_entries(r: &EvaluationReport) -> [&ReportEntry; 6] {
    [
        &r.complexity,
        &r.connected_spanning,
        &r.forests,
        &r.acyclic_orientations,
        &r.total_subgraphs,
        &r.chromatic_at_3,
    ]
}

/// Full cross-validated report for one (family, level).
pub fn report_json(r: &EvaluationReport) -> Value {
    let mut entries = serde_json::Map::new();
    for (name, entry) in REPORT_COLUMNS.iter().zip(report_entries(r)) {
        entries.insert((*name).into(), entry_json(entry));
    }
    json!({
        "family": r.family.name(),
        "level": r.level,
        "entries": entries,
    })
}

/// The same report as CSV: a value and a provenance column per entry.
pub fn report_csv(r: &EvaluationReport) -> String {
    let mut header = String::from("family,level");
    let mut row = format!("{},{}", r.family.name(), r.level);
    for (name, entry) in REPORT_COLUMNS.iter().zip(report_entries(r)) {
        header.push_str(&format!(",{name},{name}Provenance"));
        let tags: Vec<&str> = entry.provenance.iter().map(|p| p.name()).collect();
        row.push_str(&format!(",{},{}", entry.value, tags.join("|")));
    }
    format!("{header}\n{row}\n")
}

/// Graph dump: labeled vertices, letter-labeled edges, corner ids.
pub fn graph_json(name: &str, level: u32, g: &Multigraph, corners: &CornerTriple) -> Value {
    let vertices: Vec<Value> = match g.vertex_labels() {
        Some(labels) => labels.iter().map(|s| json!(s)).collect(),
        None => (0..g.vertex_count()).map(|i| json!(i.to_string())).collect(),
    };
    let letters = g.edge_labels();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let letter = match letters {
                Some(ls) => json!(ls[i].name()),
                None => Value::Null,
            };
            json!([u, v, letter])
        })
        .collect();
    json!({
        "n": level,
        "family": name,
        "vertices": vertices,
        "edges": edges,
        "corners": [corners.up, corners.left, corners.right],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tutte_ss::recursion;

    #[test]
    fn triangle_polynomial_is_canonical() {
        let total = recursion::sierpinski_triple(1).unwrap().total();
        let v = total_json(Family::Sierpinski, 1, &total);
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            "{\"family\":\"sierpinski\",\"level\":1,\"polynomial\":\
             {\"vars\":[\"x\",\"y\"],\"terms\":[{\"e\":[0,1],\"c\":\"1\"},\
             {\"e\":[1,0],\"c\":\"1\"},{\"e\":[2,0],\"c\":\"1\"}]}}"
        );
    }

    #[test]
    fn laurent_polynomials_carry_min_exp() {
        let z = tutte_ss::evaluations::ising_partition(Family::Sierpinski, 1).unwrap();
        let v = unipoly_json(&z, "t");
        assert_eq!(v["minExp"], json!(-1));
        assert_eq!(v["terms"][0]["e"], json!([-1]));
        assert_eq!(v["terms"][0]["c"], json!("6"));
    }

    #[test]
    fn report_csv_has_matching_columns() {
        let r = tutte_ss::evaluations::evaluation_report(Family::Sierpinski, 1).unwrap();
        let csv = report_csv(&r);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(
            lines[0].split(',').count(),
            lines[1].split(',').count()
        );
        assert!(lines[1].starts_with("sierpinski,1,3,"));
    }
}
