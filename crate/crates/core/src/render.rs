//! Text renderers: rank tables, coefficient quivers, DOT.

use crate::rep::{ranks_of, RankSequence, Representation, Segment};
use crate::symdegen::DegenStep;

/// The upper-triangular rank array, right-aligned in fixed-width columns.
pub fn matrix_lines(r: &RankSequence) -> Vec<String> {
    let w = r
        .rows()
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    r.rows()
        .iter()
        .enumerate()
        .map(|(idx, row)| {
            let mut line = " ".repeat((w + 1) * idx);
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>w$}")).collect();
            line.push_str(&cells.join(" "));
            line
        })
        .collect()
}

/// One row per segment copy: dots at the vertices, joined by dashes.
pub fn coefficient_quiver(rep: &Representation) -> Vec<String> {
    let mut out = Vec::new();
    for (s, m) in rep.iter() {
        let mut line = "  ".repeat(s.i - 1);
        line.push_str(&vec!["."; s.len()].join("-"));
        for _ in 0..m {
            out.push(line.clone());
        }
    }
    out
}

fn segment_label(s: Segment, n: usize) -> String {
    if s.j == n {
        format!("P{} = {s}", s.i)
    } else if s.i == s.j {
        format!("S{} = {s}", s.i)
    } else {
        s.to_string()
    }
}

fn pad_block(lines: &[String], height: usize) -> (Vec<String>, usize) {
    let w = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out: Vec<String> = lines
        .iter()
        .map(|l| format!("{l}{}", " ".repeat(w - l.chars().count())))
        .collect();
    out.resize(height, " ".repeat(w));
    (out, w)
}

/// The step table of a symmetric degeneration path: step, M(i), N(i),
/// L(i+1), Z(i) and the coefficient quiver of Z(i).
pub fn sym_path_table(path: &[DegenStep]) -> String {
    let headers = ["Step", "M(i)", "N(i)", "L(i+1)", "Z(i)", "Coeff. quiver of Z(i)"];
    let mut rows: Vec<Vec<Vec<String>>> = Vec::new();
    for (k, step) in path.iter().enumerate() {
        let n = step.z_ranks.n();
        rows.push(vec![
            vec![format!("({k})")],
            matrix_lines(&step.m_ranks),
            matrix_lines(&step.n_ranks),
            vec![step.peeled.map(|s| segment_label(s, n)).unwrap_or_default()],
            matrix_lines(&step.z_ranks),
            coefficient_quiver(step.z.rep()),
        ]);
    }
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (c, cell) in row.iter().enumerate() {
            let w = cell.iter().map(|l| l.chars().count()).max().unwrap_or(0);
            widths[c] = widths[c].max(w);
        }
    }
    let rule: String = widths
        .iter()
        .map(|w| "-".repeat(w + 2))
        .collect::<Vec<_>>()
        .join("+");
    let rule = format!("+{rule}+\n");
    let mut out = rule.clone();
    let head: Vec<String> = headers
        .iter()
        .zip(&widths)
        .map(|(h, w)| format!(" {h:<w$} "))
        .collect();
    out.push_str(&format!("|{}|\n", head.join("|")));
    out.push_str(&rule);
    for row in &rows {
        let height = row.iter().map(Vec::len).max().unwrap_or(1);
        let blocks: Vec<Vec<String>> = row.iter().map(|cell| pad_block(cell, height).0).collect();
        for line in 0..height {
            let cells: Vec<String> = blocks
                .iter()
                .zip(&widths)
                .map(|(b, w)| {
                    let s = &b[line];
                    format!(" {s}{} ", " ".repeat(w - s.chars().count()))
                })
                .collect();
            out.push_str(&format!("|{}|\n", cells.join("|")));
        }
        out.push_str(&rule);
    }
    out
}

/// Hasse diagram of the rank order on `reps` as a DOT digraph; edges point
/// from a representation to its covers among its degenerations.
pub fn hasse_dot(reps: &[Representation]) -> String {
    let ranks: Vec<RankSequence> = reps.iter().map(ranks_of).collect();
    let above = |a: usize, b: usize| a != b && ranks[a] != ranks[b] && ranks[a].dominates(&ranks[b]);
    let mut out = String::from("digraph degenerations {\n  rankdir=TB;\n");
    for (k, r) in reps.iter().enumerate() {
        out.push_str(&format!("  n{k} [label=\"{r}\"];\n"));
    }
    for a in 0..reps.len() {
        for b in 0..reps.len() {
            if above(a, b) && !(0..reps.len()).any(|c| above(a, c) && above(c, b)) {
                out.push_str(&format!("  n{a} -> n{b};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quiver_rows() {
        let r = Representation::from_triples(5, [(1, 4, 1), (2, 5, 1), (3, 3, 2)]).unwrap();
        assert_eq!(
            coefficient_quiver(&r),
            vec![".-.-.-.", "  .-.-.-.", "    .", "    ."]
        );
    }

    #[test]
    fn dot_covers() {
        let u = Representation::from_triples(2, [(1, 2, 1)]).unwrap();
        let s = Representation::from_triples(2, [(1, 1, 1), (2, 2, 1)]).unwrap();
        let dot = hasse_dot(&[u, s]);
        assert!(dot.contains("n0 -> n1;"));
        assert!(!dot.contains("n1 -> n0;"));
    }
}
