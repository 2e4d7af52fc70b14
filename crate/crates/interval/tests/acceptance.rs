//! Acceptance criteria, one PASS/FAIL line each. Every check is exact:
//! counts, subgroup sets and edge sets must match with zero tolerance.
//! Criterion 7 never gates and only runs with `INTERVAL_STRETCH=1`.

use std::collections::HashSet;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use interval::emit::{emit_json, parse_json};
use interval_core::block::intermediate_by_blocks;
use interval_core::conj::{conjugacy_classes, is_conjugate, is_subgroup_conjugate};
use interval_core::dcoset::double_cosets;
use interval_core::maximal::{
    embedding_conjugates, intermediate_subgroups, search, IntervalOptions, SearchContext, SearchFrame, SmallCPolicy,
};
use interval_core::oracle::{all_subgroups, intermediate_oracle, SubgroupLattice};
use interval_core::orbit::subgroup_orbit;
use interval_core::{named, Caps, LatticeInterval, PermGroup, Permutation};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MAX_INDEX: u128 = 300;
const MAX_NORMALIZER_INDEX: u128 = 2000;
const TRIPLES: u64 = 50;

type Outcome = Result<String, String>;

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, n).unwrap()
}

fn corpus() -> Vec<(&'static str, PermGroup)> {
    let s3 = named::symmetric(3);
    vec![
        ("S3", s3.clone()),
        ("S4", named::symmetric(4)),
        ("S5", named::symmetric(5)),
        ("A4", named::alternating(4)),
        ("A5", named::alternating(5)),
        ("A6", named::alternating(6)),
        ("D8", named::dihedral(4)),
        ("Q8", named::quaternion()),
        ("C12", named::cyclic(12)),
        ("C2^3", named::elementary_abelian_2(3)),
        ("S3xS3", named::direct_product(&s3, &s3)),
        ("S4 on 4+24", named::natural_plus_regular(&named::symmetric(4))),
    ]
}

struct Case {
    name: &'static str,
    group: PermGroup,
    lattice: SubgroupLattice,
}

impl Case {
    /// One representative per class with `[G:U] <= MAX_INDEX`.
    fn bottoms(&self) -> impl Iterator<Item = &PermGroup> {
        let order = self.group.order();
        self.lattice
            .classes()
            .iter()
            .map(|c| &c.representative)
            .filter(move |u| order / u.order() <= MAX_INDEX)
    }
}

fn cases() -> Vec<Case> {
    corpus()
        .into_iter()
        .map(|(name, group)| {
            let lattice = all_subgroups(&group, &Caps::default()).unwrap();
            Case { name, group, lattice }
        })
        .collect()
}

fn reference_counts() -> Outcome {
    let opts = IntervalOptions::default();
    let s6 = intermediate_subgroups(&named::symmetric(6), &PermGroup::trivial(6), &opts).map_err(|e| e.to_string())?;
    let u = PermGroup::new(7, &[perm("(1,2)(3,4)", 7)]).unwrap();
    let a7 = intermediate_subgroups(&named::alternating(7), &u, &opts).map_err(|e| e.to_string())?;
    let got = (s6.len(), a7.len());
    if got == (1453, 156) {
        Ok(format!("S6/1 = {}, A7/2 = {}", got.0, got.1))
    } else {
        Err(format!("S6/1 = {} (want 1453), A7/2 = {} (want 156)", got.0, got.1))
    }
}

fn compare(what: &str, case: &Case, u: &PermGroup, a: &LatticeInterval, b: &LatticeInterval) -> Result<(), String> {
    match a.diff(b) {
        None => Ok(()),
        Some(d) => Err(format!("{}: U of order {}: {what}: {d}", case.name, u.order())),
    }
}

fn three_way(cases: &[Case]) -> Outcome {
    let caps = Caps::default();
    let opts = IntervalOptions::default();
    let mut pairs = 0;
    for case in cases {
        for u in case.bottoms() {
            let m = intermediate_subgroups(&case.group, u, &opts).map_err(|e| format!("{}: {e}", case.name))?;
            let b = intermediate_by_blocks(&case.group, u, &caps).map_err(|e| format!("{}: {e}", case.name))?;
            let o = intermediate_oracle(&case.group, u, &caps).map_err(|e| format!("{}: {e}", case.name))?;
            m.validate().map_err(|e| format!("{}: {e}", case.name))?;
            compare("maximal vs oracle", case, u, &m, &o)?;
            compare("block vs oracle", case, u, &b, &o)?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, maximal = block = oracle"))
}

fn embedding(cases: &[Case]) -> Outcome {
    let opts = IntervalOptions::default();
    let mut nonempty = 0;
    for seed in 0..TRIPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let case = cases.choose(&mut rng).unwrap();
        let g = &case.group;
        let eligible: Vec<_> = case
            .lattice
            .classes()
            .iter()
            .filter(|c| g.order() / c.normalizer.order() <= MAX_NORMALIZER_INDEX && !c.representative.is_trivial())
            .collect();
        let a = &eligible.choose(&mut rng).unwrap().representative;
        // Bias B towards subgroups whose order divides |A|, so that most triples are nonempty.
        let members = case.lattice.members();
        let dividing: Vec<_> = members.iter().filter(|(h, _)| a.order() % h.order() == 0).collect();
        let b = if rng.random_bool(0.8) && !dividing.is_empty() {
            &dividing.choose(&mut rng).unwrap().0
        } else {
            &members.choose(&mut rng).unwrap().0
        };
        let found = embedding_conjugates(g, a, b, &opts).map_err(|e| format!("seed {seed}: {e}"))?;
        for (x, h) in &found {
            if &a.conjugate(h) != x {
                return Err(format!("seed {seed}: conjugator does not map A onto the listed conjugate"));
            }
        }
        let got: HashSet<PermGroup> = found.into_iter().map(|p| p.0).collect();
        let orbit = subgroup_orbit(g, a, usize::MAX).unwrap();
        let want: HashSet<PermGroup> = orbit.points().iter().filter(|x| b.is_proper_subgroup_of(x)).cloned().collect();
        if got != want {
            return Err(format!(
                "seed {seed}: {} G={} |A|={} |B|={}: got {} conjugates, brute force {}",
                case.name,
                g.order(),
                a.order(),
                b.order(),
                got.len(),
                want.len()
            ));
        }
        nonempty += usize::from(!want.is_empty());
    }
    Ok(format!("{TRIPLES} triples agree with brute force ({nonempty} nonempty)"))
}

fn properties(cases: &[Case]) -> Outcome {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut tables, mut decomps, mut witnesses, mut searches) = (0, 0, 0, 0);
    for case in cases {
        let g = &case.group;
        let reps: Vec<&PermGroup> = case.lattice.classes().iter().map(|c| &c.representative).collect();

        // Class equation on G and on every subgroup class representative.
        for h in reps.iter().copied().chain([g]) {
            let table = conjugacy_classes(h, &caps).map_err(|e| e.to_string())?;
            if table.total() != h.order() {
                return Err(format!("{}: class sizes sum to {} in a group of order {}", case.name, table.total(), h.order()));
            }
            tables += 1;
        }

        // Double cosets D\G/B partition G.
        for _ in 0..10 {
            let d = reps.choose(&mut rng).unwrap();
            let b = reps.choose(&mut rng).unwrap();
            let dc = double_cosets(d, g, b, caps.coset_index).map_err(|e| e.to_string())?;
            if dc.total() != g.order() {
                return Err(format!("{}: double cosets sum to {}, not {}", case.name, dc.total(), g.order()));
            }
            decomps += 1;
        }

        // Conjugacy witnesses verify by direct conjugation.
        let table = conjugacy_classes(g, &caps).map_err(|e| e.to_string())?;
        for c in table.classes() {
            let r = g.random_element(&mut rng);
            let y = c.representative.conj(&r);
            let w = is_conjugate(g, &c.representative, &y).map_err(|e| e.to_string())?;
            match w {
                Some(w) if c.representative.conj(&w) == y && g.contains(&w) => witnesses += 1,
                _ => return Err(format!("{}: bad element conjugacy witness", case.name)),
            }
        }
        for pair in table.classes().windows(2) {
            if is_conjugate(g, &pair[0].representative, &pair[1].representative).unwrap().is_some() {
                return Err(format!("{}: distinct class representatives reported conjugate", case.name));
            }
        }
        for h in &reps {
            let r = g.random_element(&mut rng);
            let k = h.conjugate(&r);
            match is_subgroup_conjugate(g, h, &k, &caps).map_err(|e| e.to_string())? {
                Some(w) if h.conjugate(&w) == k && g.contains(&w) => witnesses += 1,
                _ => return Err(format!("{}: bad subgroup conjugacy witness", case.name)),
            }
        }

        // Search results map every generator of B into A.
        for _ in 0..5 {
            let a = reps.choose(&mut rng).unwrap();
            let b = reps.choose(&mut rng).unwrap();
            if b.order() > a.order() || b.is_trivial() {
                continue;
            }
            let mut ctx = SearchContext::new(g, a, a, b.generators(), &caps, SmallCPolicy::Auto).map_err(|e| e.to_string())?;
            let root = SearchFrame::root(&ctx);
            search(&mut ctx, root).map_err(|e| e.to_string())?;
            for (img, conj) in ctx.results() {
                if !b.generators().iter().all(|x| a.contains(&x.conj(conj))) || !img.is_subgroup_of(a) {
                    return Err(format!("{}: unsound search result", case.name));
                }
                searches += 1;
            }
        }
    }
    Ok(format!(
        "{tables} class tables, {decomps} double-coset decompositions, {witnesses} witnesses, {searches} search results"
    ))
}

fn toggles(cases: &[Case]) -> Outcome {
    let base = IntervalOptions::default();
    let variants = [
        ("orbit filter off", IntervalOptions { orbit_filter: false, ..IntervalOptions::default() }),
        ("small-C forced on", IntervalOptions { small_c: SmallCPolicy::ForceOn, ..IntervalOptions::default() }),
        ("small-C forced off", IntervalOptions { small_c: SmallCPolicy::ForceOff, ..IntervalOptions::default() }),
    ];
    let mut runs = 0;
    for case in cases {
        for u in case.bottoms() {
            let reference = intermediate_subgroups(&case.group, u, &base).map_err(|e| e.to_string())?;
            for (name, opts) in &variants {
                let other = intermediate_subgroups(&case.group, u, opts).map_err(|e| e.to_string())?;
                compare(name, case, u, &reference, &other)?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} toggled runs identical to the default"))
}

fn output_format() -> Outcome {
    let c4 = PermGroup::new(4, &[perm("(1,2,3,4)", 4)]).unwrap();
    let iv = intermediate_subgroups(&named::symmetric(4), &c4, &IntervalOptions::default()).map_err(|e| e.to_string())?;
    let json = parse_json(&emit_json(&iv)).map_err(|e| e.to_string())?;
    if json.inclusions != [[0, 1], [1, 2]] || json.subgroups.len() != 1 || json.subgroups[0].order != 8 {
        return Err(format!("S4/C4 JSON: {json:?}"));
    }
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/co3_syl2.json");
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let co3 = parse_json(&text).map_err(|e| e.to_string())?;
    co3.validate()?;
    let orders: Vec<u128> = co3.subgroups.iter().map(|s| s.order).collect();
    let want = [3072, 3072, 3072, 3072, 9216, 9216, 21504, 21504, 27648, 46080, 322560, 2903040];
    if co3.bottom_order != 1024 || co3.top_order != 495766656000 || orders != want || co3.inclusions.len() != 25 {
        return Err("Co3 fixture does not match the reference orders".into());
    }
    Ok("S4/C4 inclusions [[0,1],[1,2]], Co3 fixture parses and validates".into())
}

fn stretch() -> Option<Outcome> {
    std::env::var_os("INTERVAL_STRETCH")?;
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let missing: Vec<&str> = ["sp6_2.maximal", "s11.maximal"].into_iter().filter(|f| !dir.join(f).exists()).collect();
    if missing.is_empty() {
        Some(Err("datafiles present but no stretch driver is wired up".into()))
    } else {
        Some(Err(format!("no maximal-subgroup datafiles shipped ({})", missing.join(", "))))
    }
}

fn report(n: u32, name: &str, gating: bool, outcome: Outcome, started: Instant) -> bool {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(msg) => {
            println!("PASS {n} {name}: {msg} [{secs:.1} s]");
            true
        }
        Err(msg) => {
            let tag = if gating { "FAIL" } else { "FAIL (non-gating)" };
            println!("{tag} {n} {name}: {msg} [{secs:.1} s]");
            !gating
        }
    }
}

fn main() -> ExitCode {
    // Honour `cargo test -- --list` and name filters loosely: any filter runs everything.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "reference counts", true, reference_counts(), t);
    let t = Instant::now();
    let cases = cases();
    ok &= report(2, "three-way agreement", true, three_way(&cases), t);
    let t = Instant::now();
    ok &= report(3, "embedding conjugates", true, embedding(&cases), t);
    let t = Instant::now();
    ok &= report(4, "properties", true, properties(&cases), t);
    let t = Instant::now();
    ok &= report(5, "optimization toggles", true, toggles(&cases), t);
    let t = Instant::now();
    ok &= report(6, "output format", true, output_format(), t);
    let t = Instant::now();
    match stretch() {
        None => println!("SKIP 7 stretch: set INTERVAL_STRETCH=1 to attempt (non-gating)"),
        Some(outcome) => {
            report(7, "stretch", false, outcome, t);
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
