//! Built-in algebras.

use crate::error::{Error, Result};
use crate::lgroup::WeightType;
use crate::pathalg::{PathPoly, Presentation, Quiver};
use crate::rational::{q, Q};
use crate::wpl::{canonical_sum, end_algebra};

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Weights for canonical algebras, empty for hand-entered ones.
    pub weights: &'static [u32],
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry { name: "canonical-2222", description: "canonical algebra of type (2,2,2,2;lambda4)", weights: &[2, 2, 2, 2] },
    CatalogEntry { name: "canonical-333", description: "canonical algebra of type (3,3,3)", weights: &[3, 3, 3] },
    CatalogEntry { name: "canonical-244", description: "canonical algebra of type (2,4,4)", weights: &[2, 4, 4] },
    CatalogEntry { name: "canonical-236", description: "canonical algebra of type (2,3,6)", weights: &[2, 3, 6] },
    CatalogEntry { name: "canonical-235", description: "canonical algebra of type (2,3,5)", weights: &[2, 3, 5] },
    CatalogEntry { name: "canonical-237", description: "canonical algebra of type (2,3,7)", weights: &[2, 3, 7] },
    CatalogEntry {
        name: "proof-244",
        description: "End of a tau^2-stable tilting sheaf of type (2,4,4) with two simple summands, opposite quiver, entered by hand",
        weights: &[],
    },
    CatalogEntry {
        name: "fixture-2222",
        description: "quiver with relations of the canonical algebra (2,2,2,2;lambda4), entered by hand",
        weights: &[],
    },
];

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    let name = name.strip_prefix("catalog:").unwrap_or(name);
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Parse(format!("no catalog entry {name:?}")))
}

/// Weight type of a canonical entry, with `lambda4` applied to four-point types.
pub fn weight_type(e: &CatalogEntry, lambda4: &Q) -> Result<Option<WeightType>> {
    if e.weights.is_empty() {
        return Ok(None);
    }
    let extra: Vec<Q> = if e.weights.len() >= 4 { vec![*lambda4] } else { Vec::new() };
    WeightType::new(e.weights, &extra).map(Some)
}

pub fn load(name: &str, lambda4: &Q) -> Result<Presentation> {
    let e = entry(name)?;
    if let Some(w) = weight_type(e, lambda4)? {
        return end_algebra(&w, &canonical_sum(&w));
    }
    match e.name {
        "proof-244" => proof_244(),
        "fixture-2222" => fixture_2222(lambda4),
        _ => unreachable!("every hand-entered entry is listed"),
    }
}

fn build(vertices: &[&str], arrows: &[(&str, &str, &str)], rels: &[&[(i128, &[&str])]]) -> Result<Presentation> {
    let mut quiver = Quiver::new(vertices.iter().map(|s| s.to_string()).collect());
    for (name, s, t) in arrows {
        let s = quiver.vertex_index(s).expect("listed vertex");
        let t = quiver.vertex_index(t).expect("listed vertex");
        quiver.add_arrow(*name, s, t)?;
    }
    let mut relations = Vec::new();
    for r in rels {
        let mut f = PathPoly::zero();
        for (c, names) in *r {
            f.add_term(quiver.path_by_names(names)?, q(*c));
        }
        relations.push(f);
    }
    let p = Presentation::new(quiver, relations);
    p.validate()?;
    Ok(p)
}

/// Nine vertices: five line bundles, the rank-two bundle `U` and two simples.
fn proof_244() -> Result<Presentation> {
    build(
        &["O", "O(z)", "S", "O(z+2w)", "U", "O(x+3w)", "S'", "O(x+w)", "O(y+2w)"],
        &[
            ("a", "O", "O(z)"),
            ("b", "O(z)", "S"),
            ("c", "O(z+2w)", "O"),
            ("d", "O(z+2w)", "U"),
            ("e", "U", "O(z)"),
            ("f", "U", "O(x+w)"),
            ("g", "O(x+3w)", "U"),
            ("h", "O(x+3w)", "O(y+2w)"),
            ("i", "O(x+w)", "S'"),
            ("j", "O(y+2w)", "O(x+w)"),
        ],
        &[
            &[(1, &["c", "a"]), (-1, &["d", "e"])],
            &[(1, &["g", "e", "b"])],
            &[(1, &["d", "f", "i"])],
            &[(1, &["g", "f"]), (-1, &["h", "j"])],
        ],
    )
}

fn fixture_2222(lambda4: &Q) -> Result<Presentation> {
    let mut p = build(
        &["O", "O(x1)", "O(x2)", "O(x3)", "O(x4)", "O(c)"],
        &[
            ("x1", "O", "O(x1)"),
            ("x2", "O", "O(x2)"),
            ("x3", "O", "O(x3)"),
            ("x4", "O", "O(x4)"),
            ("y1", "O(x1)", "O(c)"),
            ("y2", "O(x2)", "O(c)"),
            ("y3", "O(x3)", "O(c)"),
            ("y4", "O(x4)", "O(c)"),
        ],
        &[&[(1, &["x3", "y3"]), (-1, &["x2", "y2"]), (1, &["x1", "y1"])]],
    )?;
    let qv = &p.quiver;
    let mut r4 = PathPoly::zero();
    r4.add_term(qv.path_by_names(&["x4", "y4"])?, q(1));
    r4.add_term(qv.path_by_names(&["x2", "y2"])?, q(-1));
    r4.add_term(qv.path_by_names(&["x1", "y1"])?, *lambda4);
    p.relations.push(r4);
    Ok(p)
}
