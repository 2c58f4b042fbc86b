//! Table construction and the text / JSON / CSV renderings.
//!
//! The text and JSON forms for degrees 1-4 with default flags are pinned
//! byte-for-byte by the golden files under `goldens/`.

use delpezzo::brauer::URABE_CAVEAT;
use delpezzo::BrauerResult;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Default)]
pub struct TableOptions {
    pub include_trivial: bool,
    pub hide_excluded: bool,
}

/// Rows to display, in the canonical order they arrive in (total rank, then
/// type, then invariant factors).
pub fn table_rows(all: &[BrauerResult], opts: TableOptions) -> Vec<&BrauerResult> {
    all.iter()
        .filter(|r| opts.include_trivial || !r.group.is_trivial())
        .filter(|r| !(opts.hide_excluded && r.excluded))
        .collect()
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct TableJson {
    pub degree: u32,
    pub rows: Vec<RowJson>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct RowJson {
    #[serde(rename = "type")]
    pub type_string: String,
    pub group: GroupJson,
    pub embeddings: usize,
    pub excluded: bool,
    pub locally_trivial: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Eq, Debug)]
pub struct GroupJson {
    pub invariant_factors: Vec<u64>,
}

pub fn table_json(degree: u32, rows: &[&BrauerResult]) -> TableJson {
    TableJson {
        degree,
        rows: rows
            .iter()
            .map(|r| RowJson {
                type_string: r.dynkin.to_string(),
                group: GroupJson {
                    invariant_factors: r.group.factors_u64(),
                },
                embeddings: r.embeddings,
                excluded: r.excluded,
                locally_trivial: r.locally_trivial,
            })
            .collect(),
    }
}

pub fn render_json(degree: u32, rows: &[&BrauerResult]) -> String {
    let mut s = serde_json::to_string_pretty(&table_json(degree, rows)).expect("table serialises");
    s.push('\n');
    s
}

pub fn render_csv(rows: &[&BrauerResult]) -> String {
    let mut out = String::from("type,group,embeddings,excluded,locally_trivial\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.dynkin, r.group, r.embeddings, r.excluded, r.locally_trivial
        ));
    }
    out
}

fn marker(r: &BrauerResult) -> &'static str {
    if r.excluded {
        " \u{2020}" // dagger
    } else if r.double_embedding {
        " *"
    } else {
        ""
    }
}

pub fn render_text(degree: u32, rows: &[&BrauerResult]) -> String {
    let mut out = format!("Singular del Pezzo surfaces of degree {degree}\n");
    let nontrivial = rows.iter().filter(|r| !r.group.is_trivial()).count();
    if rows.is_empty() {
        out.push_str("Every Brauer group in this degree is trivial; nothing to list.\n");
        return out;
    }
    if nontrivial == 0 {
        out.push_str(&format!(
            "{} singularity types, all with trivial Brauer group\n",
            rows.len()
        ));
    } else if rows.len() == nontrivial {
        out.push_str(&format!(
            "{nontrivial} singularity types with non-trivial Brauer group\n"
        ));
    } else {
        out.push_str(&format!(
            "{} singularity types ({} with non-trivial Brauer group)\n",
            rows.len(),
            nontrivial
        ));
    }
    out.push('\n');

    let type_header = "Singularity type";
    let width = rows
        .iter()
        .map(|r| r.dynkin.to_string().len() + marker(r).len())
        .chain(std::iter::once(type_header.len()))
        .max()
        .unwrap()
        + 2;
    out.push_str(&format!("  {type_header:<width$}Brauer group\n"));
    for r in rows {
        let label = format!("{}{}", r.dynkin, marker(r));
        out.push_str(&format!("  {label:<width$}{}\n", r.group));
    }

    let mut notes = Vec::new();
    if rows.iter().any(|r| r.double_embedding && !r.excluded) {
        notes.push(
            "*  two distinct singularity types; the other embedding has trivial Brauer group"
                .to_string(),
        );
    }
    if rows.iter().any(|r| r.excluded) {
        notes.push(format!(
            "\u{2020}  valid root configuration that does not occur on a del Pezzo surface\n     ({URABE_CAVEAT})"
        ));
    }
    let not_local: Vec<String> = rows
        .iter()
        .filter(|r| !r.locally_trivial)
        .map(|r| r.dynkin.to_string())
        .collect();
    if !not_local.is_empty() {
        notes.push(format!(
            "not Zariski-locally trivial: {}",
            not_local.join(", ")
        ));
    }
    if !notes.is_empty() {
        out.push('\n');
        for n in notes {
            out.push_str(&format!("  {n}\n"));
        }
    }
    out
}

/// Report for the `brauer` command: every embedding class of one type.
pub fn render_embeddings_text(degree: u32, label: &str, matches: &[&BrauerResult]) -> String {
    if matches.is_empty() {
        return format!(
            "degree {degree}, type {label}: not embeddable (no such configuration of (-2)-classes)\n"
        );
    }
    let mut out = format!(
        "degree {degree}, type {label}: {} embedding class{}\n",
        matches.len(),
        if matches.len() == 1 { "" } else { "es" }
    );
    for r in matches {
        let local = if r.locally_trivial {
            "Zariski-locally trivial"
        } else {
            "not Zariski-locally trivial"
        };
        out.push_str(&format!(
            "  embedding {}: Brauer group {}, {local}\n",
            r.embedding_index, r.group
        ));
        if r.excluded {
            out.push_str(&format!(
                "    does not occur on a del Pezzo surface ({URABE_CAVEAT})\n"
            ));
        }
    }
    out
}

#[derive(Serialize)]
pub struct EmbeddingsJson {
    pub degree: u32,
    #[serde(rename = "type")]
    pub type_string: String,
    pub embeddable: bool,
    pub embeddings: Vec<EmbeddingJson>,
}

#[derive(Serialize)]
pub struct EmbeddingJson {
    pub group: GroupJson,
    pub locally_trivial: bool,
    pub excluded: bool,
}

pub fn render_embeddings_json(degree: u32, label: &str, matches: &[&BrauerResult]) -> String {
    let doc = EmbeddingsJson {
        degree,
        type_string: label.to_string(),
        embeddable: !matches.is_empty(),
        embeddings: matches
            .iter()
            .map(|r| EmbeddingJson {
                group: GroupJson {
                    invariant_factors: r.group.factors_u64(),
                },
                locally_trivial: r.locally_trivial,
                excluded: r.excluded,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
    s.push('\n');
    s
}
