//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Thresholds are pinned here rather than read from configuration.

use std::time::{Duration, Instant};

use edgereg::betti::{graded_betti, regularity, FieldChar, Regularity};
use edgereg::harness::corpus::clutter6;
use edgereg::harness::{run_suite_cached, Corpus, CorpusSpec, RegCache, Report, Status, Suite, SuiteConfig};
use edgereg::ideals::symbolic_power_of_ideal;
use edgereg::{closure_of_power, parse_ideal, Budget, Graph};

const EXAMPLE_SQUARES_LIMIT: Duration = Duration::from_secs(10);
const EXAMPLE_CLUTTER_LIMIT: Duration = Duration::from_secs(600);
const MIN_SMALL_GRAPHS: usize = 30;
const SMALL_GRAPH_VERTICES: usize = 8;
const COLON_TRIALS: usize = 100;
const SEED: u64 = 7;
/// Regularity is computed up to this power on the bicyclic family.
const REG_SMAX: u32 = 4;
const BICYCLIC: [(usize, usize, usize); 4] = [(1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 2, 3)];

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn finite(v: i64) -> Regularity {
    Regularity::Finite(v)
}

fn cfg(smax: u32, reg_smax: u32) -> SuiteConfig {
    SuiteConfig {
        smax,
        reg_smax,
        seed: SEED,
        char: FieldChar::DEFAULT,
        cross_char: Some(FieldChar::new(2).unwrap()),
        budget: Budget::generous(),
        trials: COLON_TRIALS,
        timings: false,
    }
}

fn failures(report: &Report, claim: &str) -> Vec<String> {
    report
        .instances
        .iter()
        .filter(|i| i.claim == claim && i.status == Status::Fail)
        .map(|i| format!("{} s={} {}", i.graph, i.s, i.witness))
        .collect()
}

fn status_of(report: &Report, graph: &str, s: u32, claim: &str) -> Option<Status> {
    report
        .instances
        .iter()
        .find(|i| i.graph == graph && i.s == s && i.claim == claim)
        .map(|i| i.status)
}

fn squares() -> Check {
    let start = Instant::now();
    let b = Budget::generous();
    let i = parse_ideal("vars: x y\nx^2\ny^2\n").map_err(|e| e.to_string())?;
    for s in 1..=3u32 {
        let p = i.power(s);
        let r = regularity(&p, FieldChar::DEFAULT, &b).map_err(|e| e.to_string())?;
        ensure(r == finite(2 * s as i64 + 1), format!("reg(I^{s}) = {r}"))?;
        let cl = closure_of_power(&i, s, &b).map_err(|e| e.to_string())?.ideal;
        let r = regularity(&cl, FieldChar::DEFAULT, &b).map_err(|e| e.to_string())?;
        ensure(r == finite(2 * s as i64), format!("reg(cl(I^{s})) = {r}"))?;
    }
    let t = start.elapsed();
    ensure(t < EXAMPLE_SQUARES_LIMIT, format!("took {t:?}"))?;
    Ok(format!("reg(I^s) = 2s+1, reg(cl I^s) = 2s for s = 1..3 in {:.2}s", t.as_secs_f64()))
}

fn clutter() -> Check {
    let start = Instant::now();
    let b = Budget::generous();
    let i = clutter6().map_err(|e| e.to_string())?;
    let reg = |j| regularity(j, FieldChar::DEFAULT, &b).map_err(|e| e.to_string());
    let sq = i.power(2);
    let sym = symbolic_power_of_ideal(&i, 2, &b).map_err(|e| e.to_string())?;
    let cl = closure_of_power(&i, 2, &b).map_err(|e| e.to_string())?.ideal;
    let (a, s, c) = (reg(&sq)?, reg(&sym)?, reg(&cl)?);
    ensure(
        (a, s, c) == (finite(7), finite(6), finite(6)),
        format!("reg(I^2) = {a}, reg(I^(2)) = {s}, reg(cl I^2) = {c}"),
    )?;
    let t = start.elapsed();
    ensure(t < EXAMPLE_CLUTTER_LIMIT, format!("took {t:?}"))?;
    Ok(format!("reg(I^2) = 7, reg(I^(2)) = 6, reg(cl I^2) = 6 in {:.2}s", t.as_secs_f64()))
}

fn small_non_bipartite(g: &Graph) -> bool {
    g.vertex_count() <= SMALL_GRAPH_VERTICES && g.is_connected() && !g.is_bipartite()
}

/// Powers covered by the symbolic closed form: `s <= min(n + 1, 3)` for odd
/// girth `2n + 1`.
fn symbolic_range(g: &Graph) -> u32 {
    let n = (g.odd_girth().expect("non-bipartite") as u32 - 1) / 2;
    (n + 1).min(3)
}

fn symbolic_gens(corpus: &Corpus, report: &Report) -> Check {
    let small: Vec<_> = corpus.graphs.iter().filter(|g| small_non_bipartite(&g.graph)).collect();
    ensure(small.len() >= MIN_SMALL_GRAPHS, format!("only {} small graphs", small.len()))?;
    let mut checked = 0;
    for ng in &small {
        for s in 1..=symbolic_range(&ng.graph) {
            let st = status_of(report, &ng.id, s, "symbolic-gens");
            ensure(st == Some(Status::Pass), format!("{} s={s}: {st:?}", ng.id))?;
            checked += 1;
        }
    }
    ensure(failures(report, "symbolic-gens").is_empty(), format!("{:?}", failures(report, "symbolic-gens")))?;
    Ok(format!("{} graphs, {checked} (graph, s) pairs, 0 mismatches", small.len()))
}

fn closure_gens(report: &Report) -> Check {
    let mut checked = 0;
    for (m, n, l) in BICYCLIC {
        let id = format!("bicyclic({m},{n},{l})");
        for s in 1..=(m + n + 3) as u32 {
            let st = status_of(report, &id, s, "closure-gens");
            ensure(st == Some(Status::Pass), format!("{id} s={s}: {st:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, s) pairs, 0 mismatches"))
}

fn symbolic_reg(corpus: &Corpus, report: &Report) -> Check {
    let mut checked = 0;
    for ng in corpus.graphs.iter().filter(|g| !g.graph.is_bipartite()) {
        for s in 1..=symbolic_range(&ng.graph) {
            let st = status_of(report, &ng.id, s, "symbolic-reg");
            ensure(st == Some(Status::Pass), format!("{} s={s}: {st:?}", ng.id))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, s) pairs with reg(I^(s)) = reg(I^s)"))
}

fn closure_reg(report: &Report) -> Check {
    let mut checked = 0;
    let mut clipped = 0;
    for (m, n, l) in BICYCLIC {
        let id = format!("bicyclic({m},{n},{l})");
        let top = ((m + n + 2) as u32).min(REG_SMAX);
        for s in 1..=top {
            let st = status_of(report, &id, s, "closure-reg");
            ensure(st == Some(Status::Pass), format!("{id} s={s}: {st:?}"))?;
            checked += 1;
        }
        clipped += report
            .instances
            .iter()
            .filter(|i| i.graph == id && i.claim == "closure-reg" && i.status == Status::Clipped)
            .count();
    }
    Ok(format!("{checked} (graph, s) pairs equal, s clipped at {REG_SMAX} ({clipped} instances beyond)"))
}

fn colons(report: &Report) -> Check {
    let trials = report.count("banerjee-colon", Status::Pass);
    ensure(trials == COLON_TRIALS, format!("{trials} of {COLON_TRIALS} random instances passed"))?;
    let cycles = report.count("colon-structure", Status::Pass);
    ensure(cycles > 0, "no induced odd cycle instance")?;
    for claim in ["banerjee-colon", "colon-structure"] {
        let f = failures(report, claim);
        ensure(f.is_empty(), format!("{claim}: {f:?}"))?;
    }
    ensure(report.count("colon-structure", Status::Clipped) == 0, "clipped odd cycle instance")?;
    Ok(format!("{trials} random colons, {cycles} odd cycle colons, 0 mismatches"))
}

fn partial_star(corpus: &Corpus, report: &Report) -> Check {
    let graphs = corpus.graphs.iter().filter(|g| g.graph.edge_count() > 0).count();
    let passed = report.count("partial-star", Status::Pass);
    ensure(passed == graphs * 3, format!("{passed} of {} instances passed", graphs * 3))?;
    Ok(format!("{graphs} graphs, s = 2..4, 0 violations"))
}

fn bounds(report: &Report) -> Check {
    let mut total = 0;
    for claim in ["matching-bound", "set-bound", "symbolic-bound", "closure-bound"] {
        let f = failures(report, claim);
        ensure(f.is_empty(), format!("{claim}: {f:?}"))?;
        ensure(report.count(claim, Status::Clipped) == 0, format!("{claim}: clipped instances"))?;
        total += report.count(claim, Status::Pass);
    }
    ensure(report.summary.fail == 0, "failures")?;
    Ok(format!("{total} bound instances, 0 violations"))
}

fn betti_regression(reports: &[&Report]) -> Check {
    let b = Budget::generous();
    let max = parse_ideal("x1\nx2\nx3\nx4\nx5\nx6\n").map_err(|e| e.to_string())?;
    let t = graded_betti(&max, FieldChar::DEFAULT, &b).map_err(|e| e.to_string())?;
    let binom = |k: usize| (0..k).fold(1usize, |acc, j| acc * (6 - j) / (j + 1));
    for (i, (&(ci, deg), &rank)) in t.coarse().iter().enumerate() {
        ensure(ci == i && deg as usize == i + 1 && rank == binom(i + 1), format!("Koszul entry {ci} {deg} {rank}"))?;
    }
    ensure(t.coarse().len() == 6, "Koszul table length")?;
    let sq = parse_ideal("vars: x y\nx^2\ny^2\n").map_err(|e| e.to_string())?;
    let t = graded_betti(&sq, FieldChar::DEFAULT, &b).map_err(|e| e.to_string())?;
    let coarse: Vec<_> = t.coarse().into_iter().collect();
    ensure(coarse == vec![((0, 2), 2), ((1, 4), 1)], format!("(x^2, y^2) table {coarse:?}"))?;
    let indeterminate: usize = reports.iter().map(|r| r.summary.indeterminate).sum();
    let regs: usize = reports.iter().map(|r| r.instances.len()).sum();
    ensure(indeterminate == 0, format!("{indeterminate} indeterminate instances"))?;
    Ok(format!("Koszul and (x^2, y^2) tables exact; 0 of {regs} instances differ between char 2 and 32003"))
}

fn main() {
    let start = Instant::now();
    let acceptance = CorpusSpec::parse("builtin:acceptance", SEED).unwrap().expand().unwrap();
    let bicyclic = CorpusSpec::Bicyclic(BICYCLIC.to_vec()).expand().unwrap();
    let mut cache = RegCache::default();

    let symbolic = run_suite_cached(Suite::Symbolic, &acceptance, &cfg(3, 3), &mut cache);
    let closure = run_suite_cached(Suite::Closure, &acceptance, &cfg(4, REG_SMAX), &mut cache);
    let closure_bicyclic = run_suite_cached(Suite::Closure, &bicyclic, &cfg(6, REG_SMAX), &mut cache);
    let colon = run_suite_cached(Suite::Colon, &acceptance, &cfg(3, 3), &mut cache);
    let bound = run_suite_cached(Suite::Bounds, &acceptance, &cfg(3, 3), &mut cache);

    let results: Vec<(&str, Check)> = vec![
        ("example (x^2, y^2)", squares()),
        ("example six-variable clutter", clutter()),
        ("symbolic generating sets", symbolic_gens(&acceptance, &symbolic)),
        ("closure generating sets", closure_gens(&closure_bicyclic)),
        ("symbolic regularity equality", symbolic_reg(&acceptance, &symbolic)),
        ("closure regularity equality", closure_reg(&closure_bicyclic)),
        ("colon ideals", colons(&colon)),
        ("partial-star inclusion", partial_star(&acceptance, &closure)),
        ("regularity lower bounds", bounds(&bound)),
        ("betti engine", betti_regression(&[&symbolic, &closure, &closure_bicyclic, &colon, &bound])),
    ];

    let mut failed = 0;
    for (n, (name, res)) in results.iter().enumerate() {
        match res {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
