//! Egg-box diagrams: one grid per D-class, R-classes as rows, L-classes as
//! columns, H-classes as cells.

use std::fmt::Write as _;

use brandt_affine::{GreenStructure, NearSemiring, Reduct};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    /// Element labels in canonical order.
    pub elements: Vec<String>,
    /// Parallel to `elements`.
    pub idempotent: Vec<bool>,
}

impl Cell {
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn text(&self) -> String {
        if self.is_empty() {
            return "-".into();
        }
        self.elements
            .iter()
            .zip(&self.idempotent)
            .map(|(e, &star)| if star { format!("*{e}") } else { e.clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub size: usize,
    /// `cells[r][c]` is the H-class in the `r`-th R-class and `c`-th L-class.
    pub cells: Vec<Vec<Cell>>,
    pub empty_cells: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EggBox {
    pub n: usize,
    pub reduct: Reduct,
    pub blocks: Vec<Block>,
}

impl EggBox {
    /// D-classes, rows and columns are each ordered by their least element.
    pub fn build(ns: &NearSemiring, reduct: Reduct, gs: &GreenStructure) -> Self {
        let labels = ns.labels();
        let blocks = gs
            .d
            .classes()
            .iter()
            .map(|dclass| {
                let mut rows: Vec<usize> = Vec::new();
                let mut cols: Vec<usize> = Vec::new();
                for &x in dclass {
                    for (ids, id) in [(&mut rows, gs.r.class_of(x)), (&mut cols, gs.l.class_of(x))]
                    {
                        if !ids.contains(&id) {
                            ids.push(id);
                        }
                    }
                }
                let mut cells = vec![
                    vec![
                        Cell {
                            elements: Vec::new(),
                            idempotent: Vec::new()
                        };
                        cols.len()
                    ];
                    rows.len()
                ];
                for &x in dclass {
                    let r = rows.iter().position(|&id| id == gs.r.class_of(x)).unwrap();
                    let c = cols.iter().position(|&id| id == gs.l.class_of(x)).unwrap();
                    cells[r][c].elements.push(labels[x].clone());
                    cells[r][c].idempotent.push(gs.idempotent[x]);
                }
                let empty_cells = cells.iter().flatten().filter(|c| c.is_empty()).count();
                Block {
                    size: dclass.len(),
                    cells,
                    empty_cells,
                }
            })
            .collect();
        EggBox {
            n: ns.n(),
            reduct,
            blocks,
        }
    }

    pub fn stars(&self) -> usize {
        self.blocks
            .iter()
            .flat_map(|b| b.cells.iter().flatten())
            .flat_map(|c| &c.idempotent)
            .filter(|&&s| s)
            .count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "A+(B_{}) {} reduct: {} D-classes",
            self.n,
            self.reduct.name(),
            self.blocks.len()
        );
        for (i, block) in self.blocks.iter().enumerate() {
            let texts: Vec<Vec<String>> = block
                .cells
                .iter()
                .map(|row| row.iter().map(Cell::text).collect())
                .collect();
            let ncols = texts[0].len();
            let widths: Vec<usize> = (0..ncols)
                .map(|c| {
                    texts
                        .iter()
                        .map(|r| r[c].chars().count())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let rule: String = widths
                .iter()
                .map(|w| format!("+{}", "-".repeat(w + 2)))
                .collect::<String>()
                + "+";
            let _ = write!(
                out,
                "\nD{} ({} elements, {}x{})",
                i + 1,
                block.size,
                texts.len(),
                ncols
            );
            if block.empty_cells > 0 {
                let _ = write!(out, " [{} empty cells]", block.empty_cells);
            }
            let _ = writeln!(out, "\n{rule}");
            for row in &texts {
                for (c, t) in row.iter().enumerate() {
                    let pad = widths[c] - t.chars().count();
                    let _ = write!(out, "| {t}{} ", " ".repeat(pad));
                }
                let _ = writeln!(out, "|\n{rule}");
            }
        }
        out
    }

    /// One `cluster_*` subgraph per D-class, one box node per H-class.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph eggbox {{");
        let _ = writeln!(
            out,
            "  label=\"A+(B_{}) {} reduct\";",
            self.n,
            self.reduct.name()
        );
        let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
        for (d, block) in self.blocks.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_d{d} {{");
            let _ = writeln!(out, "    label=\"D{}\";", d + 1);
            for (r, row) in block.cells.iter().enumerate() {
                for (c, cell) in row.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "    h{d}_{r}_{c} [label=\"{}\"];",
                        escape(&cell.text())
                    );
                }
                if row.len() > 1 {
                    let chain: Vec<String> =
                        (0..row.len()).map(|c| format!("h{d}_{r}_{c}")).collect();
                    let _ = writeln!(out, "    subgraph {{ rank=same; {} }}", chain.join("; "));
                }
            }
            let _ = writeln!(out, "  }}");
        }
        let _ = writeln!(out, "}}");
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("egg-box serializes")
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
