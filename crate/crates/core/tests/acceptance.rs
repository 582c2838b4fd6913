//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use common::*;
use vkh::bracket::{bracket_by_skein, jones_hat, kauffman_bracket};
use vkh::code::random::{random_diagram, random_r1, random_r2, random_r3_pair, rng};
use vkh::homology::{homology, homology_over_field, thickness, thickness_for_genus, Field, HomologyTable};
use vkh::khovanov::{build_complex_with, face_compositions, BuildOptions, Frobenius};
use vkh::state::{cube_edge, BifurcationKind};
use vkh::{build_complex, Atom, Ring, State, VirtualLinkDiagram};

const WELL_DEFINED_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_DIAGRAMS: usize = 500;
const RANDOM_MAX_CROSSINGS: usize = 8;
const MOVE_PAIRS: usize = 50;
const MOVE_MAX_CROSSINGS: usize = 7;
const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn random_corpus() -> Vec<VirtualLinkDiagram> {
    let mut r = rng(SEED);
    (0..RANDOM_DIAGRAMS)
        .map(|_| {
            let n = r.gen_range(1..=RANDOM_MAX_CROSSINGS);
            random_diagram(&mut r, n, 2)
        })
        .collect()
}

fn corpus() -> Vec<(String, VirtualLinkDiagram)> {
    let mut all = fixtures();
    all.extend(random_corpus().into_iter().map(|d| (d.serialize(), d)));
    all
}

fn table(d: &VirtualLinkDiagram) -> HomologyTable {
    homology(&build_complex(d, Ring::Z).expect("complex builds")).expect("homology")
}

fn unchecked(d: &VirtualLinkDiagram, frobenius: Frobenius) -> vkh::Result<vkh::BigradedComplex> {
    build_complex_with(d, &BuildOptions { frobenius, check: false, ..BuildOptions::default() })
}

fn well_defined(all: &[(String, VirtualLinkDiagram)]) -> Outcome {
    let start = Instant::now();
    for (name, d) in all {
        let c = unchecked(d, Frobenius::STANDARD).map_err(|e| format!("{name}: {e}"))?;
        if let Some(x) = c.d_squared_defects().first() {
            return Err(format!("{name}: d∘d ≠ 0 out of {x:?}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > WELL_DEFINED_BUDGET {
        return Err(format!("took {elapsed:.1?}, budget {WELL_DEFINED_BUDGET:?}"));
    }
    Ok(format!("{} diagrams ({} random, n ≤ {RANDOM_MAX_CROSSINGS}) in {elapsed:.2?}", all.len(), RANDOM_DIAGRAMS))
}

fn euler(all: &[(String, VirtualLinkDiagram)]) -> Outcome {
    for (name, d) in all {
        let hat = Cube::new(d).jones_hat();
        let c = build_complex(d, Ring::Z).map_err(|e| format!("{name}: {e}"))?;
        let chains = poly_of(&c.euler_characteristic().unwrap());
        let q = homology_over_field(&c, Field::Q).map_err(|e| format!("{name}: {e}"))?;
        let ranks = poly_of(&q.euler_characteristic().unwrap());
        if chains != hat || ranks != hat {
            return Err(format!("{name}: chains {chains:?}, homology {ranks:?}, state sum {hat:?}"));
        }
    }
    Ok(format!("{} diagrams, chains and Q-homology both equal the state sum", all.len()))
}

fn moves() -> Outcome {
    let mut r = rng(SEED + 1);
    let mut pick = |max: usize| {
        let n = r.gen_range(1..=max);
        random_diagram(&mut r, n, 2)
    };
    let sources: Vec<(VirtualLinkDiagram, VirtualLinkDiagram, VirtualLinkDiagram)> =
        (0..MOVE_PAIRS).map(|_| (pick(MOVE_MAX_CROSSINGS - 1), pick(MOVE_MAX_CROSSINGS - 2), pick(MOVE_MAX_CROSSINGS - 3))).collect();
    let mut r = rng(SEED + 2);
    for (a, b, c) in sources {
        let pairs = [("R1", a.clone(), random_r1(&mut r, &a)), ("R2", b.clone(), random_r2(&mut r, &b)), {
            let (x, y) = random_r3_pair(&mut r, &c);
            ("R3", x, y)
        }];
        for (kind, x, y) in pairs {
            assert!(y.crossing_count() <= MOVE_MAX_CROSSINGS);
            if table(&x) != table(&y) {
                return Err(format!("{kind}: {} vs {}", x.serialize(), y.serialize()));
            }
        }
    }
    Ok(format!("{MOVE_PAIRS} pairs each for R1, R2, R3 with n ≤ {MOVE_MAX_CROSSINGS}"))
}

fn virtualization() -> Outcome {
    let mut count = 0;
    for (name, d) in fixtures() {
        for c in 0..d.crossing_count() {
            let v = d.virtualize(c).unwrap();
            if table(&v) != table(&d) {
                return Err(format!("{name}: homology changes at crossing {c}"));
            }
            if Atom::build(&v).unwrap() != Atom::build(&d).unwrap() {
                return Err(format!("{name}: atom changes at crossing {c}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} fixture crossings, homology and atom unchanged"))
}

fn z2_agreement(all: &[(String, VirtualLinkDiagram)]) -> Outcome {
    for (name, d) in all.iter().take(fixtures().len() + 100) {
        let c = build_complex(d, Ring::Z).unwrap();
        let direct = homology_over_field(&c, Field::Gf(2)).unwrap();
        let predicted = homology(&c).unwrap().predicted_mod_p(2);
        if direct.betti() != predicted {
            return Err(format!("{name}: GF(2) {:?} vs predicted {predicted:?}", direct.betti()));
        }
        if betti_map(&direct) != Cube::new(d).complex(false).betti_mod2() {
            return Err(format!("{name}: differs from the unsigned cube"));
        }
    }
    Ok("fixtures and 100 random diagrams, equal to UCT prediction and to the unsigned cube".into())
}

fn classical_agreement() -> Outcome {
    let mut names = vec![];
    for (name, d) in fixtures().into_iter().filter(|(_, d)| d.is_classical()) {
        let oracle = Cube::new(&d).complex(true).homology_z();
        if table_map(&table(&d)) != oracle {
            return Err(format!("{name}: differs from the classical cube"));
        }
        names.push(name);
    }
    let tre = table(&VirtualLinkDiagram::parse("O1+U2+O3+U1+O2+U3+").unwrap());
    let torsion: Vec<&Vec<u64>> = tre.groups.iter().map(|g| &g.torsion).filter(|t| !t.is_empty()).collect();
    if torsion != vec![&vec![2u64]] {
        return Err(format!("trefoil torsion {torsion:?}"));
    }
    Ok(format!("{} classical fixtures; trefoil has one Z/2", names.len()))
}

fn single_faces() -> Outcome {
    let d = VirtualLinkDiagram::parse("O1+O2+U1+U2+").unwrap();
    let n = d.crossing_count();
    let mut faces = 0;
    for s in 0..1u64 << n {
        for k in 0..n {
            for l in k + 1..n {
                if s >> k & 1 == 1 || s >> l & 1 == 1 {
                    continue;
                }
                let edges = [
                    cube_edge(&d, State(s), k),
                    cube_edge(&d, State(s), l),
                    cube_edge(&d, State(s | 1 << k), l),
                    cube_edge(&d, State(s | 1 << l), k),
                ];
                if !edges.iter().any(|e| e.as_ref().unwrap().kind == BifurcationKind::Single11) {
                    continue;
                }
                let (a, b) = face_compositions(&d, State(s), k, l).map_err(|e| e.to_string())?;
                if !a.is_zero() || !b.is_zero() {
                    return Err(format!("face at state {s:b}, crossings {k},{l}: compositions nonzero"));
                }
                faces += 1;
            }
        }
    }
    if faces == 0 {
        return Err("no face with a 1-1 edge found".into());
    }
    Ok(format!("{faces} face(s) with 1-1 edges, both compositions zero"))
}

fn thickness_bound() -> Outcome {
    let mut worst = (0.0f64, 0usize, String::new());
    let mut count_over = 0;
    for (name, d) in fixtures() {
        let t = table(&d);
        let r = match d.crossing_count() {
            0 => thickness_for_genus(&t, 0),
            _ => thickness(&t, &Atom::build(&d).unwrap()),
        };
        if r.violation {
            return Err(format!("{name}: {r}"));
        }
        if r.occupied > r.bound {
            count_over += 1;
        }
        if r.thickness > worst.0 {
            worst = (r.thickness, r.bound, name);
        }
    }
    Ok(format!(
        "largest thickness {} (bound {}) on {}; {count_over} non-orientable fixture(s) occupy more diagonals than the bound",
        worst.0, worst.1, worst.2
    ))
}

fn bracket_oracles(all: &[(String, VirtualLinkDiagram)]) -> Outcome {
    for (name, d) in all {
        if poly_of(&kauffman_bracket(d).unwrap()) != poly_of(&bracket_by_skein(d)) {
            return Err(format!("{name}: state sum and skein disagree"));
        }
    }
    let mut r = rng(SEED + 3);
    for _ in 0..MOVE_PAIRS {
        let n = r.gen_range(1..=5);
        let d = random_diagram(&mut r, n, 2);
        let hat = jones_hat(&d).unwrap();
        let (x, y) = random_r3_pair(&mut r, &d);
        let others = [random_r1(&mut r, &d), random_r2(&mut r, &d)];
        if others.iter().any(|e| jones_hat(e).unwrap() != hat) || jones_hat(&x).unwrap() != jones_hat(&y).unwrap() {
            return Err(format!("{}: J-hat changes under a move", d.serialize()));
        }
        if (0..n).any(|c| jones_hat(&d.virtualize(c).unwrap()).unwrap() != hat) {
            return Err(format!("{}: J-hat changes under virtualization", d.serialize()));
        }
    }
    Ok(format!("{} diagrams evaluated both ways; J-hat stable on {MOVE_PAIRS} move/virtualization rounds", all.len()))
}

fn frobenius(all: &[(String, VirtualLinkDiagram)]) -> Outcome {
    for (name, d) in all.iter().take(fixtures().len() + 50) {
        let a = serde_json::to_string(&unchecked(d, Frobenius { h: 0, t: 0 }).unwrap().dump()).unwrap();
        let b = serde_json::to_string(&build_complex(d, Ring::Z).unwrap().dump()).unwrap();
        if a != b {
            return Err(format!("{name}: (0,0) build differs from the standard build"));
        }
    }
    let deformed = [Frobenius { h: 0, t: 1 }, Frobenius { h: 1, t: 0 }];
    for (name, d) in fixtures().into_iter().filter(|(_, d)| d.is_classical() && d.component_count() + d.free_loops() == 1) {
        for f in deformed {
            let c = unchecked(&d, f).map_err(|e| format!("{name} {f:?}: {e}"))?;
            if !c.d_squared_defects().is_empty() {
                return Err(format!("{name} {f:?}: d∘d ≠ 0"));
            }
        }
    }
    let mut findings = vec![];
    let mut runs = 0;
    for (name, d) in all.iter().filter(|(_, d)| d.crossing_count() > 0 && !Atom::build(d).unwrap().orientable()).take(100) {
        for f in deformed {
            runs += 1;
            match unchecked(d, f) {
                Ok(c) if c.d_squared_defects().is_empty() => {}
                Ok(_) => findings.push(format!("{name} {f:?}: d∘d ≠ 0")),
                Err(e) => findings.push(format!("{name} {f:?}: {e}")),
            }
        }
    }
    Ok(format!(
        "(0,0) identical; (0,1), (1,0) square to zero on classical knots; {runs} non-orientable runs, findings: {}",
        if findings.is_empty() { "none".to_string() } else { findings.join("; ") }
    ))
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let all = corpus();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 well-definedness", Box::new(|| well_defined(&all))),
        ("2 euler characteristic", Box::new(|| euler(&all))),
        ("3 move invariance", Box::new(moves)),
        ("4 virtualization invariance", Box::new(virtualization)),
        ("5 Z2 agreement", Box::new(|| z2_agreement(&all))),
        ("6 orientable-atom agreement", Box::new(classical_agreement)),
        ("7 non-orientable 2-vertex face", Box::new(single_faces)),
        ("8 thickness", Box::new(thickness_bound)),
        ("9 bracket oracles", Box::new(|| bracket_oracles(&all))),
        ("10 frobenius specialization", Box::new(|| frobenius(&all))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
