//! Acceptance suite: one PASS or FAIL line per criterion.
//!
//! Exits with status 0 unless `STRATAFLOW_ACCEPTANCE_STRICT` is set, in which
//! case any FAIL line makes the run fail.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, RngExt};
use strataflow::flows::{
    build_stratified_poset, enumerate_component, for_each_candidate, ComponentSignature,
    Enumeration, HalfInt,
};
use strataflow::gen::{rng_from_env, random_poset, seed_from_env};
use strataflow::models::{circle_model, cone, sphere_model};
use strataflow::reduction::core_with;
use strataflow::{
    check_cell_complex, core, homology, isomorphic, order_complex, weak_reduce, FinitePoset,
    HomologyProfile, StratifiedPoset,
};

const STRICT_ENV: &str = "STRATAFLOW_ACCEPTANCE_STRICT";

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn report(number: u32, name: &str, outcome: &Outcome) {
    let status = if outcome.pass { "PASS" } else { "FAIL" };
    println!("{status} {number} {name}: {}", outcome.detail);
}

fn betti_text(h: &HomologyProfile) -> String {
    let b: Vec<String> = h.betti.iter().map(ToString::to_string).collect();
    let torsion = if h.is_torsion_free() { "no torsion" } else { "torsion present" };
    format!("({}) {torsion}", b.join(","))
}

struct Component {
    enumeration: Enumeration,
    poset: StratifiedPoset,
    elapsed: Duration,
}

fn stratum_counts(c: &Component) -> Outcome {
    let sizes = c.enumeration.strata_sizes();
    let split = |q: u32| -> BTreeMap<(u32, u32), usize> {
        let mut m = BTreeMap::new();
        for class in c.enumeration.classes.get(&q).into_iter().flatten() {
            *m.entry(class.q).or_insert(0) += 1;
        }
        m
    };
    let codim1 = split(1);
    let codim2 = split(2);
    let mut codim1_split: Vec<usize> = codim1.values().copied().collect();
    let mut codim2_split: Vec<usize> = codim2.values().copied().collect();
    codim1_split.sort_unstable_by(|a, b| b.cmp(a));
    codim2_split.sort_unstable_by(|a, b| b.cmp(a));
    let pass = sizes == [3, 8, 12, 6]
        && codim1.get(&(0, 1)) == Some(&6)
        && codim1.get(&(1, 0)) == Some(&2)
        && codim2_split == [5, 4, 3]
        && c.elapsed < Duration::from_secs(60);
    Outcome::new(
        pass,
        format!(
            "strata {sizes:?}, codim 1 split {codim1:?}, codim 2 split {codim2:?}, {:.2}s",
            c.elapsed.as_secs_f64()
        ),
    )
}

fn cell_complex(c: &Component) -> Outcome {
    let r = check_cell_complex(&c.poset);
    Outcome::new(
        r.passed() && r.graded(),
        format!(
            "violations {}, closure failures {}, ungraded covers {}",
            r.violations.len(),
            r.closure_failures.len(),
            r.ungraded_covers.len()
        ),
    )
}

fn reduction_sizes(p: &FinitePoset) -> Outcome {
    let core_size = core(p).0.len();
    let weak_size = weak_reduce(p).0.len();
    Outcome::new(
        core_size == 12 && weak_size == 8,
        format!("core {core_size} (want 12), weak reduction {weak_size} (want 8)"),
    )
}

fn homotopy_witness(p: &FinitePoset) -> Outcome {
    let start = Instant::now();
    let want = HomologyProfile {
        betti: vec![1, 0, 2],
        torsion: vec![Vec::new(); 3],
    };
    let full = homology(&order_complex(p));
    let reduced = homology(&order_complex(&weak_reduce(p).0));
    let elapsed = start.elapsed();
    match (full, reduced) {
        (Ok(full), Ok(reduced)) => Outcome::new(
            full.same_groups(&want) && reduced.same_groups(&want) && elapsed < Duration::from_secs(10),
            format!(
                "full {}, weak-reduced {}, want (1,0,2), {:.2}s",
                betti_text(&full),
                betti_text(&reduced),
                elapsed.as_secs_f64()
            ),
        ),
        (a, b) => Outcome::new(false, format!("overflow: {a:?} {b:?}")),
    }
}

fn poincare_hopf(c: &Component) -> Outcome {
    let target = HalfInt::from_int(-3);
    let classes_ok = c
        .enumeration
        .iter()
        .filter(|class| class.diagram.multi_saddle_index_sum() == target)
        .count();
    let mut valid = 0usize;
    let mut valid_ok = 0usize;
    let result = for_each_candidate(&ComponentSignature::annulus(), 3, |d, r| {
        if r.passed() {
            valid += 1;
            if d.multi_saddle_index_sum() == target {
                valid_ok += 1;
            }
        }
    });
    Outcome::new(
        result.is_ok() && classes_ok == 29 && valid_ok == valid && valid > 0,
        format!("{classes_ok}/29 classes and {valid_ok}/{valid} valid candidates sum to -3"),
    )
}

fn random_small_poset<R: Rng>(rng: &mut R) -> FinitePoset {
    let n = rng.random_range(1..=8);
    let density = rng.random_range(0.1..0.9);
    random_poset(rng, n, density)
}

fn core_uniqueness() -> Outcome {
    let mut rng = rng_from_env();
    let samples = 200;
    let mut agree = 0;
    for _ in 0..samples {
        let p = random_small_poset(&mut rng);
        let cores: Vec<FinitePoset> = (0..5)
            .map(|_| core_with(&p, |c| rng.random_range(0..c.len())).0)
            .collect();
        let pairwise = (0..5).all(|i| {
            (i + 1..5).all(|j| matches!(isomorphic(&cores[i], &cores[j]), Ok(Some(_))))
        });
        agree += usize::from(pairwise);
    }
    Outcome::new(
        agree == samples,
        format!("{agree}/{samples} posets, 5 orders each, seed {}", seed_from_env()),
    )
}

fn weak_homology_invariance() -> Outcome {
    let mut rng = rng_from_env();
    let samples = 200;
    let mut agree = 0;
    for _ in 0..samples {
        let p = random_small_poset(&mut rng);
        let before = homology(&order_complex(&p));
        let after = homology(&order_complex(&weak_reduce(&p).0));
        if let (Ok(b), Ok(a)) = (before, after) {
            agree += usize::from(b.same_groups(&a));
        }
    }
    Outcome::new(
        agree == samples,
        format!("{agree}/{samples} posets, seed {}", seed_from_env()),
    )
}

fn cone_contractibility() -> Outcome {
    let mut rng = rng_from_env();
    let samples = 100;
    let singleton = (0..samples)
        .filter(|_| core(&cone(&random_small_poset(&mut rng))).0.len() == 1)
        .count();
    Outcome::new(
        singleton == samples,
        format!("{singleton}/{samples} cones, seed {}", seed_from_env()),
    )
}

/// Boundary matrix read from a golden file, indexed by simplex names.
struct Golden {
    dim: usize,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<i64>>,
}

fn read_golden(path: &Path) -> Result<Vec<Golden>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut out: Vec<Golden> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["boundary", k] => out.push(Golden {
                dim: k.parse().map_err(|_| format!("bad dimension `{k}`"))?,
                rows: Vec::new(),
                cols: Vec::new(),
                entries: Vec::new(),
            }),
            ["rows", names @ ..] => {
                out.last_mut().ok_or("rows before boundary")?.rows =
                    names.iter().map(|s| s.to_string()).collect()
            }
            ["cols", names @ ..] => {
                out.last_mut().ok_or("cols before boundary")?.cols =
                    names.iter().map(|s| s.to_string()).collect()
            }
            numbers => {
                let row: Result<Vec<i64>, _> = numbers.iter().map(|s| s.parse()).collect();
                out.last_mut()
                    .ok_or("entries before boundary")?
                    .entries
                    .push(row.map_err(|_| format!("bad row `{line}`"))?);
            }
        }
    }
    Ok(out)
}

/// Rank over the rationals by fraction-free elimination.
fn rational_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (f, g) = (a[rank][c], a[r][c]);
                for k in 0..cols {
                    a[r][k] = a[r][k] * f - a[rank][k] * g;
                }
                let gcd = a[r].iter().fold(0i128, |acc, &x| gcd(acc, x.abs()));
                if gcd > 1 {
                    a[r].iter_mut().for_each(|x| *x /= gcd);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn simplex_name(p: &FinitePoset, s: &[usize]) -> String {
    let mut names: Vec<&str> = s.iter().map(|&v| p.id(v).as_str()).collect();
    names.sort_unstable();
    names.join(".")
}

/// Betti numbers from the golden matrices alone, after checking that they
/// agree with the library's boundary matrices.
fn golden_betti(p: &FinitePoset, path: &Path) -> Result<Vec<usize>, String> {
    let golden = read_golden(path)?;
    let k = order_complex(p);
    let mut ranks = BTreeMap::new();
    for g in &golden {
        let lib = k.boundary_matrix(g.dim);
        let row_names: Vec<String> = k.simplices(g.dim - 1).iter().map(|s| simplex_name(p, s)).collect();
        let col_names: Vec<String> = k.simplices(g.dim).iter().map(|s| simplex_name(p, s)).collect();
        let mut sorted_rows = g.rows.clone();
        let mut sorted_cols = g.cols.clone();
        sorted_rows.sort();
        sorted_cols.sort();
        let (mut lib_rows, mut lib_cols) = (row_names.clone(), col_names.clone());
        lib_rows.sort();
        lib_cols.sort();
        if sorted_rows != lib_rows || sorted_cols != lib_cols {
            return Err(format!("simplices of dimension {} differ", g.dim));
        }
        for (i, r) in g.rows.iter().enumerate() {
            let li = row_names.iter().position(|x| x == r).expect("row present");
            for (j, c) in g.cols.iter().enumerate() {
                let lj = col_names.iter().position(|x| x == c).expect("column present");
                if g.entries[i][j] != lib.get(li, lj) {
                    return Err(format!("entry ({r}, {c}) of boundary {} differs", g.dim));
                }
            }
        }
        ranks.insert(g.dim, rational_rank(&g.entries));
    }
    let counts = k.counts();
    Ok((0..counts.len())
        .map(|d| {
            let out = if d == 0 { 0 } else { ranks[&d] };
            counts[d] - out - ranks.get(&(d + 1)).copied().unwrap_or(0)
        })
        .collect())
}

fn sphere_fixtures() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let cases = [
        ("circle", circle_model(), "circle_boundary.txt", vec![1, 1]),
        ("sphere", sphere_model(), "sphere_boundary.txt", vec![1, 0, 1]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, p, file, want) in cases {
        match golden_betti(&p, &dir.join(file)) {
            Ok(betti) => {
                let lib = homology(&order_complex(&p)).map(|h| h.betti);
                pass &= betti == want && lib.as_ref() == Ok(&want);
                parts.push(format!("{name} {betti:?} (library {lib:?})"));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    Outcome::new(pass, parts.join(", "))
}

fn main() {
    let start = Instant::now();
    let enumeration = enumerate_component(&ComponentSignature::annulus(), 3);
    let elapsed = start.elapsed();
    let component = enumeration.map_err(|e| e.to_string()).and_then(|enumeration| {
        let poset = build_stratified_poset(&enumeration).map_err(|e| e.to_string())?;
        Ok(Component {
            enumeration,
            poset,
            elapsed,
        })
    });
    let mut outcomes: Vec<(u32, &str, Outcome)> = Vec::new();
    match &component {
        Ok(c) => {
            outcomes.push((1, "stratum counts", stratum_counts(c)));
            outcomes.push((2, "cell-complex laws", cell_complex(c)));
            outcomes.push((3, "reduction sizes", reduction_sizes(c.poset.poset())));
            outcomes.push((4, "homotopy type witness", homotopy_witness(c.poset.poset())));
            outcomes.push((5, "Poincare-Hopf", poincare_hopf(c)));
        }
        Err(e) => {
            for (n, name) in [
                (1, "stratum counts"),
                (2, "cell-complex laws"),
                (3, "reduction sizes"),
                (4, "homotopy type witness"),
                (5, "Poincare-Hopf"),
            ] {
                outcomes.push((n, name, Outcome::new(false, format!("no component: {e}"))));
            }
        }
    }
    outcomes.push((6, "core uniqueness", core_uniqueness()));
    outcomes.push((7, "weak-reduction homology invariance", weak_homology_invariance()));
    outcomes.push((8, "cone contractibility", cone_contractibility()));
    outcomes.push((9, "sphere-model fixtures", sphere_fixtures()));
    for (n, name, outcome) in &outcomes {
        report(*n, name, outcome);
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|(_, _, o)| !o.pass)
        .map(|(n, _, _)| n.to_string())
        .collect();
    println!(
        "{}/{} criteria pass{}",
        outcomes.len() - failed.len(),
        outcomes.len(),
        if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(" ")) }
    );
    if !failed.is_empty() && std::env::var_os(STRICT_ENV).is_some() {
        std::process::exit(1);
    }
}
