//! Verification suites shared by the CLI and the acceptance tests: each
//! check recomputes an identity or count by exact arithmetic and reports
//! pass/fail.

use crate::algebra::{AlgebraElement, BlobWeights, Engine};
use crate::alcove::{enumerate_std, std_by_residue_filter, BlobParams};
use crate::diagram::{enumerate_diagrams, expected_diagram_count};
use crate::jm::{j_element, l_elements, y_elements};
use crate::scalar::{binomial, gaussian_int, int, ratio, Scalar};
use crate::truncation::mst_span_rank;
use crate::words::{enumerate_normal, evaluate_scalar_diagram, NormalTable};
use num::{BigInt, Zero};
use std::collections::HashSet;
use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

pub fn render_report(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "[{status}] {}: {}", c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
    out
}

/// Nil-blob defining relations for the generator images, up to `n`.
pub fn suite_relations(n_max: usize) -> Vec<Check> {
    let mut checks = vec![];
    for n in 1..=n_max {
        let mut eng = Engine::new(n);
        let gens: Vec<AlgebraElement> =
            (0..n).map(|i| AlgebraElement::generator(n, i)).collect();
        let mut ok = true;
        let mut detail = String::new();
        let mul = |eng: &mut Engine, xs: &[&AlgebraElement]| {
            let mut acc = AlgebraElement::one(n);
            for x in xs {
                acc = eng.mul_nilblob(&acc, x).unwrap();
            }
            acc
        };
        for i in 1..n {
            if mul(&mut eng, &[&gens[i], &gens[i]]) != gens[i].scale(&int(-2)) {
                ok = false;
                let _ = write!(detail, "U{i}^2 != -2 U{i}; ");
            }
        }
        for i in 1..n {
            for j in 1..n {
                if i.abs_diff(j) == 1
                    && mul(&mut eng, &[&gens[i], &gens[j], &gens[i]]) != gens[i]
                {
                    ok = false;
                    let _ = write!(detail, "U{i} U{j} U{i} != U{i}; ");
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) > 1
                    && mul(&mut eng, &[&gens[i], &gens[j]])
                        != mul(&mut eng, &[&gens[j], &gens[i]])
                {
                    ok = false;
                    let _ = write!(detail, "U{i} U{j} != U{j} U{i}; ");
                }
            }
        }
        if n >= 2 && !mul(&mut eng, &[&gens[1], &gens[0], &gens[1]]).is_zero() {
            ok = false;
            detail.push_str("U1 U0 U1 != 0; ");
        }
        if !mul(&mut eng, &[&gens[0], &gens[0]]).is_zero() {
            ok = false;
            detail.push_str("U0^2 != 0; ");
        }
        if detail.is_empty() {
            detail = "all defining relations hold".into();
        }
        checks.push(Check::new(format!("nilblob relations n={n}"), ok, detail));
    }
    checks
}

/// Classical blob relations at exact `(q, m)` samples, up to `n`.
pub fn suite_blob_relations(n_max: usize, samples: &[(Scalar, i64)]) -> Vec<Check> {
    let mut checks = vec![];
    for (q, m) in samples {
        for n in 1..=n_max {
            let w = match BlobWeights::new(q, *m) {
                Ok(w) => w,
                Err(e) => {
                    checks.push(Check::new(
                        format!("blob relations n={n} q={q} m={m}"),
                        false,
                        e.to_string(),
                    ));
                    continue;
                }
            };
            let mut eng = Engine::new(n);
            // V_0 maps to -[m] times the marked line, V_i to the cup/cap
            let mut gens: Vec<AlgebraElement> =
                (0..n).map(|i| AlgebraElement::generator(n, i)).collect();
            gens[0] = gens[0].scale(&-w.gauss_m.clone());
            let mul = |eng: &mut Engine, xs: &[&AlgebraElement]| {
                let mut acc = AlgebraElement::one(n);
                for x in xs {
                    acc = eng.mul_blob(&acc, x, &w).unwrap();
                }
                acc
            };
            let g2 = gaussian_int(2, q).unwrap();
            let gm = gaussian_int(*m, q).unwrap();
            let gm1 = gaussian_int(*m - 1, q).unwrap();
            let mut ok = true;
            let mut detail = String::new();
            for i in 1..n {
                if mul(&mut eng, &[&gens[i], &gens[i]]) != gens[i].scale(&-g2.clone()) {
                    ok = false;
                    let _ = write!(detail, "V{i}^2 != -[2] V{i}; ");
                }
                for j in 1..n {
                    if i.abs_diff(j) == 1
                        && mul(&mut eng, &[&gens[i], &gens[j], &gens[i]]) != gens[i]
                    {
                        ok = false;
                        let _ = write!(detail, "V{i} V{j} V{i} != V{i}; ");
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if i.abs_diff(j) > 1
                        && mul(&mut eng, &[&gens[i], &gens[j]])
                            != mul(&mut eng, &[&gens[j], &gens[i]])
                    {
                        ok = false;
                        let _ = write!(detail, "V{i} V{j} != V{j} V{i}; ");
                    }
                }
            }
            if n >= 2
                && mul(&mut eng, &[&gens[1], &gens[0], &gens[1]]) != gens[1].scale(&gm1)
            {
                ok = false;
                detail.push_str("V1 V0 V1 != [m-1] V1; ");
            }
            if mul(&mut eng, &[&gens[0], &gens[0]]) != gens[0].scale(&-gm) {
                ok = false;
                detail.push_str("V0^2 != -[m] V0; ");
            }
            if detail.is_empty() {
                detail = "all five relations hold".into();
            }
            checks.push(Check::new(format!("blob relations n={n} q={q} m={m}"), ok, detail));
        }
    }
    checks
}

/// Brute-force associativity over all basis-diagram triples, for both
/// the nil-blob rule set and the blob rule set at one sample.
pub fn suite_associativity(n_max: usize) -> Vec<Check> {
    let mut checks = vec![];
    for n in 1..=n_max {
        let diagrams = enumerate_diagrams(n);
        let elements: Vec<AlgebraElement> =
            diagrams.iter().map(|d| AlgebraElement::from_diagram(d.clone())).collect();
        let mut eng = Engine::new(n);
        let mut ok_nil = true;
        let w = BlobWeights::new(&int(2), 3).unwrap();
        let mut ok_blob = true;
        for x in &elements {
            for y in &elements {
                let xy_nil = eng.mul_nilblob(x, y).unwrap();
                let xy_blob = eng.mul_blob(x, y, &w).unwrap();
                for z in &elements {
                    let yz = eng.mul_nilblob(y, z).unwrap();
                    if eng.mul_nilblob(&xy_nil, z).unwrap() != eng.mul_nilblob(x, &yz).unwrap()
                    {
                        ok_nil = false;
                    }
                    let yz = eng.mul_blob(y, z, &w).unwrap();
                    if eng.mul_blob(&xy_blob, z, &w).unwrap()
                        != eng.mul_blob(x, &yz, &w).unwrap()
                    {
                        ok_blob = false;
                    }
                }
            }
        }
        let count = elements.len();
        checks.push(Check::new(
            format!("associativity n={n}"),
            ok_nil && ok_blob,
            format!("{count}^3 triples, nil-blob and blob at (q,m)=(2,3)"),
        ));
    }
    checks
}

/// Dimension counts: diagrams, normal monomials, extended basis.
pub fn suite_dims(n_max: usize, ext_max: usize) -> Vec<Check> {
    let mut checks = vec![];
    for n in 1..=n_max {
        let expected = expected_diagram_count(n);
        let got = enumerate_diagrams(n).len();
        checks.push(Check::new(
            format!("diagram count n={n}"),
            BigInt::from(got) == expected,
            format!("{got} diagrams, C(2n,n) = {expected}"),
        ));
        let normals = enumerate_normal(n).len();
        checks.push(Check::new(
            format!("normal monomial count n={n}"),
            BigInt::from(normals) == expected,
            format!("{normals} monomials"),
        ));
    }
    for n in 1..=ext_max {
        // {nm, nm J} images: distinct diagrams with nonzero scalars give
        // 2 C(2n,n) independent extended elements
        let mut seen = HashSet::new();
        let mut ok = true;
        for nm in enumerate_normal(n) {
            match evaluate_scalar_diagram(&nm.word(n)).unwrap() {
                Some((c, d)) => {
                    ok &= !c.is_zero() && seen.insert(d);
                }
                None => ok = false,
            }
        }
        let dim = 2 * seen.len();
        let expected = BigInt::from(2) * expected_diagram_count(n);
        checks.push(Check::new(
            format!("extended basis n={n}"),
            ok && BigInt::from(dim) == expected,
            format!("dimension {dim}, expected {expected}"),
        ));
    }
    checks
}

/// Injectivity of the evaluation map on normal monomials.
pub fn suite_phi_injective(n_max: usize) -> Vec<Check> {
    let mut checks = vec![];
    for n in 1..=n_max {
        let normals = enumerate_normal(n);
        let mut seen = HashSet::new();
        let mut ok = true;
        for nm in &normals {
            match evaluate_scalar_diagram(&nm.word(n)).unwrap() {
                Some((c, d)) => {
                    if c.is_zero() || !seen.insert(d) {
                        ok = false;
                    }
                }
                None => ok = false,
            }
        }
        checks.push(Check::new(
            format!("phi injective n={n}"),
            ok,
            format!("{} monomials hit distinct diagrams with nonzero scalars", normals.len()),
        ));
    }
    checks
}

/// The Jucys-Murphy property suite at a single `n`.
pub fn suite_jm(n: usize) -> Vec<Check> {
    let mut checks = vec![];
    let mut eng = Engine::new(n);
    let ls = l_elements(n, &mut eng).unwrap();
    let ys = y_elements(n, &mut eng).unwrap();
    let j = j_element(n, &mut eng).unwrap();
    let gens: Vec<AlgebraElement> = (0..n).map(|i| AlgebraElement::generator(n, i)).collect();

    let mut commute = true;
    for a in 0..n {
        for b in a + 1..n {
            commute &= eng.mul_nilblob(&ls[a], &ls[b]).unwrap()
                == eng.mul_nilblob(&ls[b], &ls[a]).unwrap();
            commute &= eng.mul_nilblob(&ys[a], &ys[b]).unwrap()
                == eng.mul_nilblob(&ys[b], &ys[a]).unwrap();
        }
    }
    checks.push(Check::new(
        format!("JM commutativity n={n}"),
        commute,
        "L_i L_j = L_j L_i and Y_i Y_j = Y_j Y_i",
    ));

    let mut l_squares = eng.mul_nilblob(&ls[0], &ls[0]).unwrap().is_zero();
    for i in 2..=n {
        let mut lower = AlgebraElement::zero(n);
        for l in &ls[..i - 1] {
            lower = lower.add(l);
        }
        let rhs = eng
            .mul_nilblob(&ls[i - 1], &lower)
            .unwrap()
            .scale(&int(-2));
        l_squares &= eng.mul_nilblob(&ls[i - 1], &ls[i - 1]).unwrap() == rhs;
    }
    checks.push(Check::new(
        format!("L_i^2 recursion n={n}"),
        l_squares,
        "L_1^2 = 0 and L_i^2 = -2 L_i (L_1 + .. + L_{i-1})",
    ));

    let y_squares = ys
        .iter()
        .all(|y| eng.mul_nilblob(y, y).unwrap().is_zero());
    checks.push(Check::new(format!("Y_i^2 = 0 n={n}"), y_squares, "all i"));

    let j_square = eng.mul_nilblob(&j, &j).unwrap().is_zero();
    checks.push(Check::new(format!("(sum L)^2 = 0 n={n}"), j_square, "J = L_1 + .. + L_n"));

    let mut local_central = true;
    for i in 1..n {
        if i + 2 > n {
            continue;
        }
        let window = ls[i - 1].add(&ls[i]).add(&ls[i + 1]);
        local_central &= eng.mul_nilblob(&gens[i], &window).unwrap()
            == eng.mul_nilblob(&window, &gens[i]).unwrap();
    }
    checks.push(Check::new(
        format!("[U_i, L_i + L_i+1 + L_i+2] = 0 n={n}"),
        local_central,
        "local centrality window",
    ));

    let mut translated = true;
    for i in 1..n {
        let lhs = eng.mul_nilblob(&ys[i], &gens[i]).unwrap();
        let rhs = eng
            .mul_nilblob(&gens[i], &ys[i - 1])
            .unwrap()
            .add(&ys[i - 1])
            .sub(&ys[i]);
        translated &= lhs == rhs;
    }
    checks.push(Check::new(
        format!("Y_i+1 U_i = U_i Y_i + Y_i - Y_i+1 n={n}"),
        translated,
        "conjugation recursion identity",
    ));

    let mut conj = true;
    for i in 1..n {
        let s = gens[i].add_scalar(&int(1));
        let left = eng.mul_nilblob(&s, &ys[i - 1]).unwrap();
        let rhs = eng.mul_nilblob(&left, &s).unwrap();
        conj &= ys[i] == rhs;
    }
    checks.push(Check::new(
        format!("Y_i+1 = (U_i+1) Y_i (U_i+1) n={n}"),
        conj,
        "definition consistency",
    ));
    checks
}

/// Orbit combinatorics at one parameter triple.
pub fn suite_orbit(p: &BlobParams) -> Vec<Check> {
    let mut checks = vec![];
    let cls = match p.classify() {
        Ok(c) => c,
        Err(e) => {
            return vec![Check::new(
                format!("classify n={} e={} m={}", p.n, p.e, p.m),
                false,
                e.to_string(),
            )]
        }
    };
    let orbit = enumerate_std(p).unwrap();
    let expected =
        binomial(2 * cls.k as u64, cls.k as u64) * if cls.singular() { 1 } else { 2 };
    checks.push(Check::new(
        format!("std count n={} e={} m={}", p.n, p.e, p.m),
        BigInt::from(orbit.sum_of_squares()) == expected,
        format!(
            "K={} R={} sum |Std|^2 = {}, expected {}",
            cls.k,
            cls.r,
            orbit.sum_of_squares(),
            expected
        ),
    ));
    if p.n <= 14 {
        let mut flat: Vec<_> = orbit.all_tableaux().cloned().collect();
        flat.sort();
        let filtered = std_by_residue_filter(p);
        checks.push(Check::new(
            format!("orbit = residue filter n={} e={} m={}", p.n, p.e, p.m),
            flat == filtered,
            format!("{} tableaux", flat.len()),
        ));
    }
    checks
}

/// Rank of the evaluated generator words against the truncated dimension.
pub fn suite_rank(p: &BlobParams) -> Vec<Check> {
    let cls = match p.classify() {
        Ok(c) => c,
        Err(e) => {
            return vec![Check::new(
                format!("rank n={} e={} m={}", p.n, p.e, p.m),
                false,
                e.to_string(),
            )]
        }
    };
    let expected =
        binomial(2 * cls.k as u64, cls.k as u64) * if cls.singular() { 1 } else { 2 };
    match mst_span_rank(p) {
        Ok(rank) => vec![Check::new(
            format!("rank n={} e={} m={}", p.n, p.e, p.m),
            BigInt::from(rank) == expected,
            format!("rank {rank}, expected {expected} (K = {})", cls.k),
        )],
        Err(e) => vec![Check::new(
            format!("rank n={} e={} m={}", p.n, p.e, p.m),
            false,
            e.to_string(),
        )],
    }
}

/// Pairs of random homogeneous words multiply additively in degree.
pub fn suite_grading(trials: usize) -> Vec<Check> {
    let mut state = 0xc0ffee123456789u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut ok = true;
    let mut tested = 0;
    let mut engines: Vec<Engine> = (0..=5).map(Engine::new).collect();
    for _ in 0..trials {
        let n = 1 + (rng() % 5) as usize;
        let len = |rng: &mut dyn FnMut() -> u64| (rng() % 7) as usize;
        let mk = |rng: &mut dyn FnMut() -> u64, len: usize| {
            crate::words::GeneratorWord::new(
                n,
                (0..len)
                    .map(|_| crate::words::Letter::U((rng() % n as u64) as usize))
                    .collect(),
            )
            .unwrap()
        };
        let (l1, l2) = (len(&mut rng), len(&mut rng));
        let (w1, w2) = (mk(&mut rng, l1), mk(&mut rng, l2));
        let e1 = crate::words::evaluate(&w1).unwrap();
        let e2 = crate::words::evaluate(&w2).unwrap();
        if e1.is_zero() || e2.is_zero() {
            continue;
        }
        let prod = engines[n].mul_nilblob(&e1, &e2).unwrap();
        if prod.is_zero() {
            continue;
        }
        tested += 1;
        let (d1, d2) = (e1.degree(), e2.degree());
        let dp = prod.degree();
        if d1.is_none() || d2.is_none() || dp.is_none() {
            ok = false;
            continue;
        }
        ok &= dp.unwrap() == d1.unwrap() + d2.unwrap();
    }
    vec![Check::new(
        "grading additivity",
        ok,
        format!("{tested} nonzero homogeneous products"),
    )]
}

/// Default blob parameter samples for relation suites.
pub fn blob_samples() -> Vec<(Scalar, i64)> {
    vec![(int(2), 3), (int(3), 2), (ratio(1, 2), 4)]
}

/// Identity diagram acts as a two-sided unit on every basis diagram.
pub fn suite_unit(n_max: usize) -> Vec<Check> {
    let mut checks = vec![];
    for n in 1..=n_max {
        let mut eng = Engine::new(n);
        let one = AlgebraElement::one(n);
        let mut ok = true;
        for d in enumerate_diagrams(n) {
            let x = AlgebraElement::from_diagram(d);
            ok &= eng.mul_nilblob(&one, &x).unwrap() == x
                && eng.mul_nilblob(&x, &one).unwrap() == x;
        }
        checks.push(Check::new(format!("identity is the unit n={n}"), ok, "both sides"));
    }
    checks
}

/// Soundness of diagram factorization at one `n`.
pub fn suite_factorization(n: usize) -> Vec<Check> {
    let mut ok = true;
    let mut count = 0;
    for d in enumerate_diagrams(n) {
        let (w, c) = crate::words::factorize_diagram(&d).unwrap();
        let e = crate::words::evaluate(&w).unwrap();
        if e != AlgebraElement::from_term(c, d.clone()) {
            ok = false;
        }
        count += 1;
    }
    vec![Check::new(
        format!("factorization sound n={n}"),
        ok,
        format!("{count} basis diagrams"),
    )]
}

/// Normal-form agreement with direct evaluation on random words.
pub fn suite_normal_form(n_max: usize, trials: usize) -> Vec<Check> {
    let mut state = 0x1234_5678_9abc_def1u64;
    let mut rng = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut ok = true;
    let tables: Vec<NormalTable> =
        (1..=n_max).map(|n| NormalTable::new(n).unwrap()).collect();
    for _ in 0..trials {
        let n = 1 + (rng() % n_max as u64) as usize;
        let len = (rng() % 13) as usize;
        let w = crate::words::GeneratorWord::new(
            n,
            (0..len)
                .map(|_| crate::words::Letter::U((rng() % n as u64) as usize))
                .collect(),
        )
        .unwrap();
        let direct = crate::words::evaluate(&w).unwrap();
        match tables[n - 1].normal_form(&w).unwrap() {
            None => ok &= direct.is_zero(),
            Some((c, nm)) => {
                let again = crate::words::evaluate(&nm.word(n)).unwrap().scale(&c);
                ok &= direct == again;
            }
        }
    }
    vec![Check::new(
        "normal form agrees with evaluation",
        ok,
        format!("{trials} random words, n <= {n_max}"),
    )]
}

/// Checks the image relations of the truncated generators inside the
/// nil-blob algebra: Temperley-Lieb relations with the sign
/// `(-1)^(e-1) 2` for the diamonds and the dot relations for `Y_1`.
pub fn suite_image_relations(p: &BlobParams) -> Vec<Check> {
    use crate::truncation::{map_to_nilblob, MappedElement, TruncToken, TruncatedWord};
    let cls = match p.classify() {
        Ok(c) => c,
        Err(e) => return vec![Check::new("image relations", false, e.to_string())],
    };
    let big_k = cls.k;
    if big_k == 0 {
        return vec![Check::new("image relations", true, "K = 0, nothing to check")];
    }
    let mut eng = Engine::new(big_k);
    let word = |tokens: Vec<TruncToken>| TruncatedWord {
        tokens,
        prefix: None,
        sign_undetermined: true,
    };
    let image = |eng: &mut Engine, tokens: Vec<TruncToken>| match map_to_nilblob(
        &word(tokens),
        p,
        eng,
    )
    .unwrap()
    {
        MappedElement::Plain(x) => x,
        MappedElement::Extended(_) => unreachable!(),
    };
    let sign = if p.e % 2 == 0 { 1 } else { -1 };
    let mut ok = true;
    for i in 1..big_k {
        // (U_i)^2 = (-1)^(e-1) 2 U_i
        let sq = image(&mut eng, vec![TruncToken::U(i), TruncToken::U(i)]);
        let single = image(&mut eng, vec![TruncToken::U(i)]);
        ok &= sq == single.scale(&int(-2 * sign));
    }
    for i in 1..big_k {
        for j in 1..big_k {
            if i.abs_diff(j) == 1 {
                let lhs =
                    image(&mut eng, vec![TruncToken::U(i), TruncToken::U(j), TruncToken::U(i)]);
                // U_i U_j U_i = U_i picks up (-1)^e twice on the right side
                let rhs = image(&mut eng, vec![TruncToken::U(i)]);
                ok &= lhs == rhs;
            }
        }
    }
    // Y_1^2 = 0 and U_1 Y_1 U_1 = 0
    let y1y1 = image(&mut eng, vec![TruncToken::Y(1), TruncToken::Y(1)]);
    ok &= y1y1.is_zero();
    if big_k >= 2 {
        let mid = image(&mut eng, vec![TruncToken::U(1), TruncToken::Y(1), TruncToken::U(1)]);
        ok &= mid.is_zero();
    }
    vec![Check::new(
        format!("image relations K={big_k} e={}", p.e),
        ok,
        "Temperley-Lieb and dot relations for the truncated generators",
    )]
}
