//! Plain-text rendering of diagrams, elements, and symbol matrices.

use crate::algebra::{AlgebraElement, ExtAlgebraElement};
use crate::diagram::BlobDiagram;
use crate::scalar::format_scalar;
use crate::truncation::CodPair;

const COL_WIDTH: usize = 3;

/// Draws a diagram with top points on the first row, cups and caps as
/// box-drawing arcs, vertical bars for through lines, and a filled dot
/// on marked arcs.
pub fn render_diagram(d: &BlobDiagram) -> String {
    let n = d.n();
    if n == 0 {
        return String::from("(empty diagram)\n");
    }
    // classify arcs back into point indices
    let mut top_arcs = vec![]; // (i, j) 1-based, i < j
    let mut bottom_arcs = vec![];
    let mut through = vec![]; // (bottom index, top index)
    for &(a, b) in d.pairs() {
        let marked = d.marks().contains(&(a, b));
        if b < n {
            bottom_arcs.push((a + 1, b + 1, marked));
        } else if a >= n {
            top_arcs.push((2 * n - b, 2 * n - a, marked));
        } else {
            through.push((a + 1, 2 * n - b, marked));
        }
    }
    let depth = |arcs: &[(usize, usize, bool)], i: usize, j: usize| {
        1 + arcs.iter().filter(|&&(a, b, _)| a < i && j < b).count()
    };
    let top_depth = top_arcs.iter().map(|&(i, j, _)| depth(&top_arcs, i, j)).max().unwrap_or(0);
    let bot_depth =
        bottom_arcs.iter().map(|&(i, j, _)| depth(&bottom_arcs, i, j)).max().unwrap_or(0);
    let mid_rows = through.iter().filter(|&&(b, t, _)| b != t).count().max(1);
    let rows = 1 + top_depth + mid_rows + bot_depth + 1;
    let width = n * COL_WIDTH;
    let mut grid = vec![vec![' '; width]; rows];
    let col = |i: usize| (i - 1) * COL_WIDTH + 1;

    // boundary labels
    for i in 1..=n {
        let label = (i % 10).to_string().chars().next().unwrap();
        grid[0][col(i)] = label;
        grid[rows - 1][col(i)] = label;
    }
    let top_row = |d: usize| d; // rows 1..=top_depth
    let bot_row = |d: usize| rows - 1 - d;

    for &(i, j, marked) in &top_arcs {
        let r = top_row(depth(&top_arcs, i, j));
        for rr in 1..r {
            grid[rr][col(i)] = '|';
            grid[rr][col(j)] = '|';
        }
        grid[r][col(i)] = '\\';
        grid[r][col(j)] = '/';
        for c in col(i) + 1..col(j) {
            grid[r][c] = '_';
        }
        if marked {
            // marks sit next to the left corner, where the exposure is
            grid[r][col(i) + 1] = '*';
        }
    }
    for &(i, j, marked) in &bottom_arcs {
        let r = bot_row(depth(&bottom_arcs, i, j));
        for rr in r + 1..rows - 1 {
            grid[rr][col(i)] = '|';
            grid[rr][col(j)] = '|';
        }
        grid[r][col(i)] = '/';
        grid[r][col(j)] = '\\';
        for c in col(i) + 1..col(j) {
            grid[r][c] = '_';
        }
        if marked {
            grid[r][col(i) + 1] = '*';
        }
    }
    // through lines: verticals joined by a horizontal jog on a bus row
    let mid_start = 1 + top_depth;
    for (slot, &(b, t, marked)) in through.iter().enumerate() {
        let bus = mid_start + if b == t { 0 } else { slot.min(mid_rows - 1) };
        for rr in 1..=bus.min(rows - 2) {
            if grid[rr][col(t)] == ' ' {
                grid[rr][col(t)] = '|';
            }
        }
        for rr in bus..rows - 1 {
            if grid[rr][col(b)] == ' ' {
                grid[rr][col(b)] = '|';
            }
        }
        if b != t {
            let (lo, hi) = (col(b).min(col(t)), col(b).max(col(t)));
            for c in lo + 1..hi {
                if grid[bus][c] == ' ' {
                    grid[bus][c] = '_';
                }
            }
        }
        if marked {
            let r = (mid_start + rows - 2) / 2;
            grid[r][col(b)] = '*';
        }
    }
    let mut out = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Renders an element as a signed list of scaled diagrams.
pub fn render_element(x: &AlgebraElement) -> String {
    if x.is_zero() {
        return String::from("0\n");
    }
    let mut out = String::new();
    for (i, (d, c)) in x.terms().enumerate() {
        if i > 0 {
            out.push_str("+\n");
        }
        out.push_str(&format!("({}) *\n", format_scalar(c)));
        out.push_str(&render_diagram(d));
    }
    out
}

pub fn render_extended(x: &ExtAlgebraElement) -> String {
    let mut out = String::new();
    out.push_str("a0:\n");
    out.push_str(&render_element(&x.a0));
    out.push_str("a1 (coefficient of J):\n");
    out.push_str(&render_element(&x.a1));
    out
}

/// Renders the stacked 4 x k codification grid with aligned columns.
pub fn render_cod_pair(pair: &CodPair) -> String {
    let grid = pair.grid();
    let k = grid[0].len();
    let widths: Vec<usize> = (0..k)
        .map(|c| grid.iter().map(|row| row[c].len()).max().unwrap_or(1).max(1))
        .collect();
    let mut out = String::new();
    for row in &grid {
        out.push('|');
        for (c, cell) in row.iter().enumerate() {
            out.push_str(&format!(" {cell:>width$} |", width = widths[c]));
        }
        out.push('\n');
    }
    out
}
