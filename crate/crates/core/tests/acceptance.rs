//! Acceptance criteria 1 to 9. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wpl_core::canon::presentation_fingerprint;
use wpl_core::cli::catalog::{self, ENTRIES};
use wpl_core::cli::exchange::explore;
use wpl_core::lgroup::{Order, WeightType};
use wpl_core::pathalg::{fd_quotient, gldim, FdAlgebra, GlDim, Presentation, Quotient};
use wpl_core::qp::{GradedQP, Side};
use wpl_core::rational::q;
use wpl_core::survey::survey_tilting;
use wpl_core::threeprep::{analyze_2rf, extended_qp, is_2homogeneous, is_2rf, Verdict};
use wpl_core::wpl::{class_of, class_sum, euler_form, hom_dim, Sheaf};

const CAP: usize = 32;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fd(a: &Presentation, cap: usize) -> FdAlgebra {
    fd_quotient(a, cap).expect("completion").finite().expect("finite-dimensional")
}

fn load(name: &str) -> Presentation {
    catalog::load(name, &q(2)).expect("catalog entry")
}

fn multisets(t: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    if t == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in lo..=hi {
        for mut rest in multisets(t - 1, p, hi) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let tubular: BTreeSet<Vec<u32>> =
        [vec![2, 2, 2, 2], vec![3, 3, 3], vec![2, 4, 4], vec![2, 3, 6]].into_iter().collect();
    let mut n = 0;
    for t in 1..=4 {
        for ws in multisets(t, 2, 8) {
            n += 1;
            let mut padded = ws.clone();
            padded.resize(padded.len().max(3), 1);
            let w = WeightType::simple(&padded);
            // oracle: 2 - sum(1 - 1/p_i)
            let chi: Ratio<i64> =
                Ratio::from(2) - ws.iter().map(|&p| Ratio::new(p as i64 - 1, p as i64)).sum::<Ratio<i64>>();
            check(w.euler_char() == chi, format!("euler_char {ws:?}"))?;
            check((chi == Ratio::from(0)) == tubular.contains(&ws), format!("tubular set at {ws:?}"))?;
            let lcm = ws.iter().fold(1u64, |a, &p| a.lcm(&(p as u64)));
            let expect = if tubular.contains(&ws) { Order::Finite(lcm) } else { Order::Infinite };
            check(w.omega().order() == expect, format!("order of omega for {ws:?}: {:?}", w.omega().order()))?;
        }
    }
    Ok(format!("{n} weight types, zero exactly at the four tubular types"))
}

fn criterion_2() -> Outcome {
    let w = WeightType::simple(&[2, 2, 4]);
    let (x, y, z, om) = (w.x(0), w.x(1), w.x(2), w.omega());
    let s = Sheaf::Simple { tube: 1, m: 1 };
    let s2 = Sheaf::Simple { tube: 1, m: 2 };
    let table = [
        ("O(z)", z.clone(), 1, 0),
        ("O(x+w)", &x + &om, 0, 1),
        ("O(x+3w)", &x + &om.scale(3), 0, 1),
        ("O(y+2w)", &y + &om.scale(2), 0, 1),
        ("O(z+2w)", &z + &om.scale(2), 1, 0),
        ("O", w.zero(), 1, 0),
    ];
    for (label, a, hs, hs2) in table {
        let l = Sheaf::Line(a);
        check(hom_dim(&w, &l, &s) == hs, format!("Hom({label}, S)"))?;
        check(hom_dim(&w, &l, &s2) == hs2, format!("Hom({label}, S')"))?;
    }
    let u = class_sum(&[Sheaf::Line(om.clone()), Sheaf::Line(z.clone())]);
    check(euler_form(&w, &u, &class_of(&s)) == 1, "<[U],[S]>")?;
    check(euler_form(&w, &u, &class_of(&s2)) == 1, "<[U],[S']>")?;
    Ok("12 Hom dimensions and 2 Euler forms".into())
}

fn criterion_3() -> Outcome {
    let a = load("canonical-2222");
    let f = fd(&a, CAP);
    check(a.quiver.n() == 6, format!("{} vertices", a.quiver.n()))?;
    check(a.quiver.arrows.len() == 8, format!("{} arrows", a.quiver.arrows.len()))?;
    check(a.relations.len() == 2, format!("{} relations", a.relations.len()))?;
    check(gldim(&f, 4) == GlDim::Finite(2), format!("gldim {}", gldim(&f, 4)))?;
    // one source, one sink, four paths of length two between them
    let m = a.quiver.arrow_matrix();
    let sources: Vec<usize> = (0..6).filter(|&i| a.quiver.is_source(i)).collect();
    let sinks: Vec<usize> = (0..6).filter(|&i| a.quiver.is_sink(i)).collect();
    check(sources.len() == 1 && sinks.len() == 1, "one source and one sink")?;
    let (s, t) = (sources[0], sinks[0]);
    let middle: Vec<usize> = (0..6).filter(|&i| i != s && i != t).collect();
    check(middle.iter().all(|&i| m[s][i] == 1 && m[i][t] == 1), "arms of length two")?;
    let fixture = load("fixture-2222");
    check(
        presentation_fingerprint(&a, &f).unwrap() == presentation_fingerprint(&fixture, &fd(&fixture, CAP)).unwrap(),
        "differs from the hand-entered quiver",
    )?;
    Ok(format!("dim {}", f.dim()))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    for (name, expect) in [("canonical-2222", true), ("proof-244", true), ("canonical-237", false), ("canonical-235", false)] {
        let t = Instant::now();
        let v = is_2rf(&load(name), CAP).map_err(|e| format!("{name}: {e}"))?;
        let secs = t.elapsed();
        check(secs < Duration::from_secs(60), format!("{name} took {secs:?}"))?;
        let good = match &v {
            Verdict::Yes => expect,
            Verdict::No(_) => !expect,
            Verdict::Indeterminate(_) => false,
        };
        check(good, format!("{name}: {v}"))?;
        notes.push(format!("{name} {v}"));
    }
    Ok(notes.join("; "))
}

fn criterion_5() -> Outcome {
    let w = WeightType::new(&[2, 2, 2, 2], &[q(2)]).unwrap();
    let c = w.c();
    let entries = survey_tilting(&w, &c.neg(), &c.scale(2), true).map_err(|e| e.to_string())?;
    check(!entries.is_empty(), "no tau^2-stable tilting sums found")?;
    let mut algebras: Vec<Presentation> = entries.iter().map(|e| e.algebra.clone()).collect();
    algebras.push(load("proof-244"));
    for a in &algebras {
        let rep = analyze_2rf(a, CAP).map_err(|e| e.to_string())?;
        check(rep.verdict.is_yes(), format!("not 2-RF: {}", rep.verdict))?;
        check(is_2homogeneous(a, CAP).map_err(|e| e.to_string())?, "not 2-homogeneous")?;
    }
    let sums: usize = entries.iter().map(|e| e.multiplicity).sum();
    Ok(format!("{sums} tilting sums in {} classes plus the (2,4,4) example", entries.len()))
}

fn criterion_6() -> Outcome {
    for ws in [[3u32, 3, 3], [2, 3, 7]] {
        let w = WeightType::simple(&ws);
        let c = w.c();
        let r = survey_tilting(&w, &c.neg(), &c.scale(2), true).map_err(|e| e.to_string())?;
        check(r.is_empty(), format!("{ws:?}: {} sums", r.len()))?;
    }
    Ok("empty for (3,3,3) and (2,3,7)".into())
}

fn gldim_at_most_2(a: &Presentation) -> bool {
    matches!(gldim(&fd(a, CAP), 3).value(), Some(d) if d <= 2)
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for e in ENTRIES {
        let a = load(e.name);
        if !gldim_at_most_2(&a) {
            continue;
        }
        n += 1;
        let t = extended_qp(&a, CAP).unwrap().qp.truncated_jacobian().map_err(|e| e.to_string())?;
        check(t.quiver == a.quiver, format!("{}: quiver changed", e.name))?;
        // ideal of t inside the ideal of a, with the same codimension
        let fa = fd(&a, CAP);
        check(t.relations.iter().all(|r| fa.reduce(r).is_empty()), format!("{}: extra relation", e.name))?;
        check(fd(&t, CAP).dim() == fa.dim(), format!("{}: dimension changed", e.name))?;
    }
    Ok(format!("{n} catalog algebras"))
}

fn dims(qp: &GradedQP, cap: usize) -> Result<(usize, Vec<Vec<usize>>), String> {
    match qp.jacobian(cap) {
        Ok(Quotient::Finite(f)) => Ok((f.dim(), f.cartan())),
        Ok(Quotient::Infinite { .. }) => Err("infinite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_8() -> Outcome {
    let qps: Vec<GradedQP> = ENTRIES
        .iter()
        .map(|e| load(e.name))
        .filter(gldim_at_most_2)
        .map(|a| extended_qp(&a, CAP).unwrap().qp)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut state = qps.clone();
    for step in 0..1000 {
        let i = rng.gen_range(0..state.len());
        let k = rng.gen_range(0..state[i].quiver.n());
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        let next = state[i].mutate(k, side).map_err(|e| format!("step {step}: {e}"))?;
        check(next.is_homogeneous(), format!("step {step}: potential not homogeneous"))?;
        check(next.is_reduced_quiver(), format!("step {step}: 2-cycle or loop"))?;
        check(next.dw == state[i].dw, format!("step {step}: degree of W changed"))?;
        state[i] = next;
    }
    let mut checked = 0;
    for qp in &qps {
        let before = dims(qp, 16);
        for k in 0..qp.quiver.n() {
            let back = qp.mutate(k, Side::Left).and_then(|l| l.mutate(k, Side::Right)).map_err(|e| e.to_string())?;
            check(dims(&back, 16) == before, format!("left then right at {} changes dimensions", qp.quiver.vertices[k]))?;
            checked += 1;
        }
    }
    Ok(format!("1000 random mutations; involution at {checked} vertices"))
}

fn criterion_9() -> Outcome {
    let a = load("canonical-2222");
    let rep = analyze_2rf(&a, CAP).map_err(|e| e.to_string())?;
    let pi = rep.nakayama.clone().ok_or("Pi_3 not selfinjective")?;
    check(pi.iter().enumerate().all(|(i, &j)| i == j), "Nakayama permutation is not trivial")?;
    let (ext, _) = rep.pi3.ok_or("no Pi_3")?;
    let g = explore(&ext.qp, 500, CAP).map_err(|e| e.to_string())?;
    check(!g.truncated, format!("not closed within 500 nodes ({} found)", g.nodes.len()))?;
    for n in &g.nodes {
        check(n.jacobian_dim.is_some(), format!("node {}: Jacobian not finite", n.id))?;
        check(n.selfinjective, format!("node {}: not selfinjective", n.id))?;
    }
    let dims: BTreeSet<usize> = g.nodes.iter().filter_map(|n| n.jacobian_dim).collect();
    check(
        dims.len() == 1,
        format!("{} nodes, {} edges, all selfinjective, but Jacobian dimensions {dims:?} are not constant", g.nodes.len(), g.edges.len()),
    )?;
    Ok(format!("{} nodes, dimension {dims:?}", g.nodes.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("tubular gate", criterion_1, Duration::from_secs(1)),
        ("proof dimension table (2,2,4)", criterion_2, Duration::from_secs(1)),
        ("canonical algebra reproduction", criterion_3, Duration::from_secs(10)),
        ("2-RF positives and negatives", criterion_4, Duration::from_secs(240)),
        ("tau^2-stability and 2-homogeneity", criterion_5, Duration::from_secs(600)),
        ("nonexistence for (3,3,3) and (2,3,7)", criterion_6, Duration::from_secs(600)),
        ("round trip", criterion_7, Duration::from_secs(60)),
        ("mutation suite", criterion_8, Duration::from_secs(600)),
        ("exchange closure", criterion_9, Duration::from_secs(1800)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed();
        let r = r.and_then(|m| {
            if secs <= limit {
                Ok(m)
            } else {
                Err(format!("{m}; took {secs:?}, limit {limit:?}"))
            }
        });
        match r {
            Ok(m) => println!("criterion {}: PASS  {name} ({:.2}s) {m}", i + 1, secs.as_secs_f64()),
            Err(m) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({:.2}s) {m}", i + 1, secs.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
