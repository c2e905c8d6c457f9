//! Brute-force planar-face oracle for left-exposure, kept independent of
//! the library's interval-enclosure test: the diagram is embedded with
//! its boundary points on a circle, faces are traced through the
//! half-edge rotation system, and the leftmost face is the interior face
//! at the extra left-edge vertex.

use nilblob::diagram::{enumerate_diagrams, BlobDiagram, Point};

const TAU: f64 = std::f64::consts::TAU;

#[derive(Clone)]
struct Dart {
    target: usize,
    angle: f64,
    edge: usize,
}

/// Chords bordering the leftmost face, via explicit face tracing.
fn face_oracle_left_exposed(d: &BlobDiagram) -> Vec<(usize, usize)> {
    let n = d.n();
    let verts = 2 * n + 1; // boundary points plus the left-edge vertex L
    let left_vertex = 2 * n;
    let coord = |v: usize| {
        let theta = TAU * v as f64 / verts as f64;
        (theta.cos(), theta.sin())
    };
    // edges: boundary cycle then chords
    let mut edges: Vec<(usize, usize)> = (0..verts).map(|v| (v, (v + 1) % verts)).collect();
    let chord_offset = edges.len();
    edges.extend(d.pairs().iter().copied());

    // darts per vertex with outgoing angles; boundary edges leave along
    // the circle tangents, chords along their straight segment
    let mut darts: Vec<Vec<Dart>> = vec![vec![]; verts];
    for (id, &(u, v)) in edges.iter().enumerate() {
        let boundary = id < chord_offset;
        let angle_from = |a: usize, b: usize, forward: bool| {
            if boundary {
                let theta = TAU * a as f64 / verts as f64;
                if forward {
                    theta + TAU / 4.0
                } else {
                    theta - TAU / 4.0
                }
            } else {
                let (ax, ay) = coord(a);
                let (bx, by) = coord(b);
                (by - ay).atan2(bx - ax)
            }
        };
        darts[u].push(Dart { target: v, angle: norm(angle_from(u, v, true)), edge: id });
        darts[v].push(Dart { target: u, angle: norm(angle_from(v, u, false)), edge: id });
    }
    for list in &mut darts {
        list.sort_by(|a, b| a.angle.partial_cmp(&b.angle).unwrap());
    }

    // face tracing: from dart (u -> v), continue with the dart at v that
    // is the first strictly clockwise from the reversed dart
    let dart_index = |u: usize, v: usize, edge: usize| {
        darts[u].iter().position(|d| d.target == v && d.edge == edge).unwrap()
    };
    let next_in_face = |u: usize, slot: usize| {
        let dart = &darts[u][slot];
        let v = dart.target;
        let back = dart_index(v, u, dart.edge);
        let deg = darts[v].len();
        // first dart clockwise from the reverse = previous in sorted order
        let next_slot = (back + deg - 1) % deg;
        (v, next_slot)
    };

    let mut seen = std::collections::HashSet::new();
    let mut leftmost_chords: Option<Vec<usize>> = None;
    for v0 in 0..verts {
        for s0 in 0..darts[v0].len() {
            if !seen.insert((v0, s0)) {
                continue;
            }
            let mut cycle = vec![];
            let mut chords = vec![];
            let (mut v, mut s) = (v0, s0);
            loop {
                cycle.push(v);
                if darts[v][s].edge >= chord_offset {
                    chords.push(darts[v][s].edge - chord_offset);
                }
                let (nv, ns) = next_in_face(v, s);
                v = nv;
                s = ns;
                if (v, s) == (v0, s0) {
                    break;
                }
                seen.insert((v, s));
            }
            // interior faces come out counterclockwise (positive area)
            let area: f64 = cycle
                .iter()
                .zip(cycle.iter().cycle().skip(1))
                .map(|(&a, &b)| {
                    let (ax, ay) = coord(a);
                    let (bx, by) = coord(b);
                    ax * by - bx * ay
                })
                .sum();
            if area > 0.0 && cycle.contains(&left_vertex) {
                assert!(leftmost_chords.is_none(), "two interior faces at L");
                leftmost_chords = Some(chords);
            }
        }
    }
    let mut out: Vec<(usize, usize)> = leftmost_chords
        .expect("no interior face at the left edge")
        .into_iter()
        .map(|i| d.pairs()[i])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn norm(a: f64) -> f64 {
    let mut a = a % TAU;
    if a < 0.0 {
        a += TAU;
    }
    a
}

#[test]
fn oracle_agrees_on_identity() {
    let d = BlobDiagram::identity(3);
    assert_eq!(face_oracle_left_exposed(&d), d.left_exposed_arcs());
    assert_eq!(d.left_exposed_arcs().len(), 1);
}

#[test]
fn oracle_agrees_on_all_small_diagrams() {
    for n in 1..=5 {
        for d in enumerate_diagrams(n) {
            let expected = face_oracle_left_exposed(&d);
            let mut got = d.left_exposed_arcs();
            got.sort_unstable();
            assert_eq!(got, expected, "exposure mismatch on {d:?}");
        }
    }
}

/// A 20-point example reconstructed from its two column tableaux; the
/// bottom walk touches zero exactly at 0, 10, 18, so the markable bottom
/// arcs open at 1, 11, 19.
#[test]
fn twenty_point_example_exposure() {
    let bottom_col2 = [3, 6, 8, 9, 10, 14, 16, 17, 18];
    let top_col2 = [3, 4, 7, 9, 10, 13, 15, 19, 20];
    let d = diagram_from_tableaux(20, &bottom_col2, &top_col2);

    let (top, bottom, k) = d.split_halves();
    assert_eq!(k, 2);
    assert_eq!(bottom.contacts(), vec![0, 10, 18]);
    assert_eq!(top.contacts(), vec![0, 4, 10]);

    let pos = |p: Point| p.position(20);
    let arc = |a: Point, b: Point| {
        let (x, y) = (pos(a), pos(b));
        (x.min(y), x.max(y))
    };
    let mut expected = vec![
        arc(Point::Bottom(1), Point::Bottom(10)),
        arc(Point::Bottom(11), Point::Bottom(18)),
        arc(Point::Top(1), Point::Top(4)),
        arc(Point::Top(5), Point::Top(10)),
        arc(Point::Bottom(19), Point::Top(11)),
    ];
    expected.sort_unstable();
    let mut got = d.left_exposed_arcs();
    got.sort_unstable();
    assert_eq!(got, expected);
    assert_eq!(face_oracle_left_exposed(&d), expected);
}

/// Builds the unmarked diagram whose half-diagrams have the given
/// second-column entry sets (right arc endpoints), feet matched in order.
fn diagram_from_tableaux(n: usize, bottom_col2: &[usize], top_col2: &[usize]) -> BlobDiagram {
    let half = |col2: &[usize]| {
        let mut arcs = vec![];
        let mut stack = vec![];
        for i in 1..=n {
            if col2.contains(&i) {
                let open = stack.pop().expect("unbalanced tableau");
                arcs.push((open, i));
            } else {
                stack.push(i);
            }
        }
        (arcs, stack)
    };
    let (bot_arcs, bot_free) = half(bottom_col2);
    let (top_arcs, top_free) = half(top_col2);
    let mut pairs: Vec<(Point, Point)> = vec![];
    for (a, b) in bot_arcs {
        pairs.push((Point::Bottom(a), Point::Bottom(b)));
    }
    for (a, b) in top_arcs {
        pairs.push((Point::Top(a), Point::Top(b)));
    }
    for (b, t) in bot_free.iter().zip(&top_free) {
        pairs.push((Point::Bottom(*b), Point::Top(*t)));
    }
    BlobDiagram::new(n, &pairs, &[]).unwrap()
}
