//! Structural checks on diagrams: ∂∘∂ = 0, graded Euler characteristic
//! against the bracket, universal coefficients, virtualization and move
//! invariance, the thickness bound, and the deformed algebras.

use rayon::prelude::*;
use serde::Serialize;

use crate::atom::Atom;
use crate::bracket::jones_hat;
use crate::code::random::{self, SeedableRng};
use crate::code::VirtualLinkDiagram;
use crate::error::{Error, Result};
use crate::homology::{homology, homology_over_field, thickness, Field, HomologyTable};
use crate::khovanov::{build_complex_with, BigradedComplex, BuildOptions, Convention, Frobenius};
use crate::state::DEFAULT_CROSSING_CAP;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub cap: usize,
    pub seed: u64,
    /// Replaced only by negative controls.
    pub convention: Convention,
    pub moves: bool,
    pub frobenius: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_CROSSING_CAP, seed: 0, convention: Convention::default(), moves: true, frobenius: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub code: String,
    pub name: Option<String>,
    pub checks: Vec<CheckResult>,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub diagrams: Vec<DiagramReport>,
}

struct Ctx<'a> {
    opts: &'a VerifyOptions,
}

impl Ctx<'_> {
    fn build(&self, d: &VirtualLinkDiagram, frobenius: Frobenius) -> Result<BigradedComplex> {
        let opts = BuildOptions { convention: self.opts.convention.clone(), frobenius, cap: self.opts.cap, check: true };
        build_complex_with(d, &opts)
    }

    fn homology(&self, d: &VirtualLinkDiagram) -> Result<HomologyTable> {
        homology(&self.build(d, Frobenius::STANDARD)?)
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { check: name, passed, detail: detail.into() }
}

/// Runs every check on one diagram. Only a resource cap aborts; all other
/// failures are recorded in the report.
pub fn verify_diagram(d: &VirtualLinkDiagram, name: Option<String>, seed: u64, opts: &VerifyOptions) -> Result<DiagramReport> {
    let ctx = Ctx { opts };
    let mut checks = vec![];
    let report = |checks: Vec<CheckResult>| DiagramReport { code: d.serialize(), name: name.clone(), checks };

    let complex = match ctx.build(d, Frobenius::STANDARD) {
        Ok(c) => c,
        Err(e @ Error::StateSpaceTooLarge { .. }) => return Err(e),
        Err(e) => {
            checks.push(check("d-squared", false, e.to_string()));
            return Ok(report(checks));
        }
    };
    checks.push(check("d-squared", true, format!("{} generators", complex.total_dim())));
    let table = homology(&complex)?;

    let hat = jones_hat(d)?;
    let chain = complex.euler_characteristic().expect("standard complex is graded");
    let hom = table.euler_characteristic().expect("standard complex is graded");
    checks.push(check(
        "euler",
        chain == hat && hom == hat,
        format!("chains {}, homology {}, bracket {}", chain.to_text("q"), hom.to_text("q"), hat.to_text("q")),
    ));

    let mut uct = vec![];
    for p in [2, 3, 5] {
        let direct = homology_over_field(&complex, Field::Gf(p))?.betti();
        if direct != table.predicted_mod_p(p) {
            uct.push(p);
        }
    }
    checks.push(check("uct", uct.is_empty(), if uct.is_empty() { "p = 2, 3, 5".into() } else { format!("mismatch at p = {uct:?}") }));

    let n = d.crossing_count();
    if n > 0 {
        let atom = Atom::build(d)?;
        let mut bad = vec![];
        for c in 0..n {
            let v = d.virtualize(c)?;
            if !ctx.homology(&v)?.same_groups(&table) || Atom::build(&v)? != atom {
                bad.push(c);
            }
        }
        checks.push(check("virtualization", bad.is_empty(), if bad.is_empty() { format!("{n} crossings") } else { format!("differs at {bad:?}") }));

        let r = thickness(&table, &atom);
        if atom.pieces().len() == 1 && d.free_loops() == 0 {
            checks.push(check("thickness", !r.violation, r.to_string()));
        } else {
            checks.push(check("thickness", true, format!("split diagram, bound not applied: {r}")));
        }
    }

    if opts.moves && n + 3 <= opts.cap {
        let mut rng = random::DiagramRng::seed_from_u64(seed);
        let r1 = random::random_r1(&mut rng, d);
        let r2 = random::random_r2(&mut rng, d);
        let (before, after) = random::random_r3_pair(&mut rng, d);
        let mut bad = vec![];
        if !ctx.homology(&r1)?.same_groups(&table) {
            bad.push(format!("R1 {}", r1.serialize()));
        }
        if !ctx.homology(&r2)?.same_groups(&table) {
            bad.push(format!("R2 {}", r2.serialize()));
        }
        if !ctx.homology(&before)?.same_groups(&ctx.homology(&after)?) {
            bad.push(format!("R3 {} -> {}", before.serialize(), after.serialize()));
        }
        checks.push(check("moves", bad.is_empty(), if bad.is_empty() { "R1, R2, R3".into() } else { bad.join("; ") }));
    }

    if opts.frobenius {
        let mut notes = vec![];
        let same = ctx.build(d, Frobenius { h: 0, t: 0 }).map(|c| c.dump()).ok().map(|x| serde_json::to_string(&x).ok())
            == Some(serde_json::to_string(&complex.dump()).ok());
        if !same {
            notes.push("(0,0) differs from the standard build".to_string());
        }
        for f in [Frobenius { h: 1, t: 0 }, Frobenius { h: 0, t: 1 }] {
            if let Err(e) = ctx.build(d, f) {
                notes.push(format!("({},{}): {e}", f.h, f.t));
            }
        }
        checks.push(check("frobenius", notes.is_empty(), if notes.is_empty() { "(0,0), (1,0), (0,1)".into() } else { notes.join("; ") }));
    }
    Ok(report(checks))
}

/// Checks a batch in parallel; diagram `k` uses move seed `seed + k`.
pub fn verify_all(items: &[(VirtualLinkDiagram, Option<String>)], opts: &VerifyOptions) -> Result<VerifyReport> {
    let diagrams = items
        .par_iter()
        .enumerate()
        .map(|(k, (d, name))| verify_diagram(d, name.clone(), opts.seed.wrapping_add(k as u64), opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { passed: diagrams.iter().all(DiagramReport::passed), diagrams })
}

/// `count` seeded random diagrams with between one and `max_crossings`
/// crossings and at most two components.
pub fn random_batch(count: usize, max_crossings: usize, seed: u64) -> Vec<(VirtualLinkDiagram, Option<String>)> {
    use rand::Rng;
    let mut rng = random::rng(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_crossings.max(1));
            (random::random_diagram(&mut rng, n, 2), None)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::khovanov::convention::Defect;

    #[test]
    fn trefoil_passes_everything() {
        let d = VirtualLinkDiagram::parse("O1+U2+O3+U1+O2+U3+").unwrap();
        let r = verify_diagram(&d, None, 3, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn broken_convention_is_reported() {
        let d = VirtualLinkDiagram::parse("O1-U2-O3+U4+O2-U1-O4+U3+").unwrap();
        let opts = VerifyOptions {
            convention: Convention { defect: Some(Defect::FlipNegativeOrientation), ..Convention::default() },
            ..VerifyOptions::default()
        };
        let r = verify_diagram(&d, None, 0, &opts).unwrap();
        assert!(!r.passed());
        assert!(r.checks[0].detail.contains("anticommutativity"));
    }

    #[test]
    fn cap_aborts() {
        let d = VirtualLinkDiagram::parse("O1+U2+O3+U1+O2+U3+").unwrap();
        let opts = VerifyOptions { cap: 2, ..VerifyOptions::default() };
        assert!(matches!(verify_diagram(&d, None, 0, &opts), Err(Error::StateSpaceTooLarge { .. })));
    }

    #[test]
    fn random_batches_are_reproducible() {
        let a: Vec<String> = random_batch(5, 4, 11).iter().map(|x| x.0.serialize()).collect();
        let b: Vec<String> = random_batch(5, 4, 11).iter().map(|x| x.0.serialize()).collect();
        assert_eq!(a, b);
    }
}
