//! Intermediate subgroups by descending through maximal subgroups, with
//! containment of conjugates decided through element conjugacy.
//!
//! `intermediate_subgroups` runs a worklist over the subgroups found so far,
//! largest first. For each `T` it asks which conjugates of each maximal
//! subgroup of `T` contain `U` (`embedding_conjugates`), which in turn maps
//! generators of `U` into the candidate through a depth-first `search` over
//! element conjugacy classes.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::cmp::Reverse;

use crate::config::Caps;
use crate::conj::{centralizer_unchecked, conjugacy_classes, is_normal, normalizer_unchecked, subgroup_conjugator};
use crate::error::{Error, Result};
use crate::group::{PermGroup, SubgroupKey};
use crate::lattice::LatticeInterval;
use crate::oracle::{maximal_subgroups, MaximalClasses, MaximalLibrary, Provider};
use crate::orbit::{element_orbit, subgroup_orbit, Orbit};
use crate::perm::Permutation;
use crate::sylow::normal_closure;
use crate::util::{is_prime, new_map, new_set, FxHashMap, FxHashSet};

/// When the search conjugates `x` under `C` directly instead of walking the
/// envelope classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SmallCPolicy {
    #[default]
    Auto,
    ForceOn,
    ForceOff,
}

#[derive(Clone, Copy, Debug)]
pub struct IntervalOptions<'a> {
    pub caps: Caps,
    pub orbit_filter: bool,
    pub small_c: SmallCPolicy,
    /// Consulted before the oracle for maximal subgroups.
    pub library: Option<&'a MaximalLibrary>,
}

impl Default for IntervalOptions<'_> {
    fn default() -> Self {
        IntervalOptions {
            caps: Caps::default(),
            orbit_filter: true,
            small_c: SmallCPolicy::Auto,
            library: None,
        }
    }
}

// ---------------------------------------------------------------------------
// Search

/// A conjugacy class of the envelope `L` lying inside the target `A`.
pub struct EnvelopeClass {
    pub representative: Permutation,
    pub size: u128,
    elements: OnceCell<Orbit<Permutation>>,
}

impl EnvelopeClass {
    fn new(representative: Permutation, size: u128) -> Self {
        EnvelopeClass { representative, size, elements: OnceCell::new() }
    }
}

/// `L`-classes of `A` for a group `L` normalizing `A`, by fusing the
/// `A`-classes under the generators of `L`.
fn envelope_classes(a: &PermGroup, l: &PermGroup, caps: &Caps) -> Result<Vec<EnvelopeClass>> {
    let table = conjugacy_classes(a, caps)?;
    let classes = table.classes();
    if l.order() == a.order() {
        return Ok(classes.iter().map(|c| EnvelopeClass::new(c.representative.clone(), c.size)).collect());
    }
    let mut parent: Vec<usize> = (0..classes.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (k, c) in classes.iter().enumerate() {
        for s in l.generators() {
            let j = table.class_of(a, &c.representative.conj(s)).expect("envelope normalizes the target");
            let (rk, rj) = (find(&mut parent, k), find(&mut parent, j));
            if rk != rj {
                parent[rk.max(rj)] = rk.min(rj);
            }
        }
    }
    let mut out: Vec<EnvelopeClass> = Vec::new();
    let mut slot: FxHashMap<usize, usize> = new_map();
    for (k, c) in classes.iter().enumerate() {
        let r = find(&mut parent, k);
        match slot.get(&r) {
            Some(&i) => out[i].size += c.size,
            None => {
                slot.insert(r, out.len());
                out.push(EnvelopeClass::new(c.representative.clone(), c.size));
            }
        }
    }
    Ok(out)
}

/// Shared state of one search: `A`, `L`, `G`, the generators `b_i` of `B`
/// with their class lists, and the collected pairs `(B^g, g)`.
pub struct SearchContext {
    target: PermGroup,
    envelope: PermGroup,
    ambient: PermGroup,
    subgroup: PermGroup,
    gens: Vec<Permutation>,
    classes: Vec<EnvelopeClass>,
    class_lists: Vec<Vec<usize>>,
    results: Vec<(PermGroup, Permutation)>,
    caps: Caps,
    policy: SmallCPolicy,
}

impl SearchContext {
    /// Context for mapping the generators `gens` of a subgroup of `ambient`
    /// into `target`, using classes of `envelope` (which must contain and
    /// normalize `target`).
    pub fn new(
        ambient: &PermGroup,
        target: &PermGroup,
        envelope: &PermGroup,
        gens: &[Permutation],
        caps: &Caps,
        policy: SmallCPolicy,
    ) -> Result<Self> {
        if !target.is_subgroup_of(envelope) || !envelope.is_subgroup_of(ambient) {
            return Err(Error::NotSubgroup);
        }
        if !is_normal(envelope, target) {
            return Err(Error::InvalidArgument("envelope must normalize the target"));
        }
        for b in gens {
            if !ambient.membership(b)? {
                return Err(Error::NotMember);
            }
        }
        let classes = envelope_classes(target, envelope, caps)?;
        let mut orbits: Vec<Orbit<Permutation>> = Vec::new();
        let mut class_lists = Vec::with_capacity(gens.len());
        for b in gens {
            let o = match orbits.iter().position(|o| o.position(b).is_some()) {
                Some(i) => i,
                None => {
                    orbits.push(element_orbit(ambient, b, caps.class_elements as usize)?);
                    orbits.len() - 1
                }
            };
            class_lists.push(matching_classes(&classes, b, &orbits[o]));
        }
        Ok(SearchContext {
            target: target.clone(),
            envelope: envelope.clone(),
            ambient: ambient.clone(),
            subgroup: PermGroup::generated(ambient.degree(), gens),
            gens: gens.to_vec(),
            classes,
            class_lists,
            results: Vec::new(),
            caps: *caps,
            policy,
        })
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn envelope(&self) -> &PermGroup {
        &self.envelope
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn classes(&self) -> &[EnvelopeClass] {
        &self.classes
    }

    /// Per generator, indices into `classes` of the classes meeting `b_i^G`.
    pub fn class_lists(&self) -> &[Vec<usize>] {
        &self.class_lists
    }

    pub fn results(&self) -> &[(PermGroup, Permutation)] {
        &self.results
    }

    pub fn into_results(self) -> Vec<(PermGroup, Permutation)> {
        self.results
    }

    fn class_elements(&self, k: usize) -> Result<&Orbit<Permutation>> {
        let class = &self.classes[k];
        if let Some(o) = class.elements.get() {
            return Ok(o);
        }
        let o = element_orbit(&self.envelope, &class.representative, self.caps.class_elements as usize)?;
        Ok(class.elements.get_or_init(|| o))
    }
}

/// Classes whose representative lies in the orbit `b^G`.
fn matching_classes(classes: &[EnvelopeClass], b: &Permutation, orbit: &Orbit<Permutation>) -> Vec<usize> {
    let ct = b.cycle_type();
    classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.representative.cycle_type() == ct && orbit.position(&c.representative).is_some())
        .map(|(k, _)| k)
        .collect()
}

/// One node of the search tree: `C = C_G(b_1^g, …, b_{i-1}^g)`, the level
/// `i` and the conjugator `g`. `D = C ∩ L` travels with the frame.
#[derive(Clone, Debug)]
pub struct SearchFrame {
    pub centralizer_sub: PermGroup,
    pub level: usize,
    pub conjugator: Permutation,
    envelope_part: PermGroup,
}

impl SearchFrame {
    /// The initial frame `(G, 0, 1)`.
    pub fn root(ctx: &SearchContext) -> Self {
        SearchFrame {
            centralizer_sub: ctx.ambient.clone(),
            level: 0,
            conjugator: ctx.ambient.identity(),
            envelope_part: ctx.envelope.clone(),
        }
    }

    pub fn envelope_part(&self) -> &PermGroup {
        &self.envelope_part
    }
}

/// Indices of one representative per `D`-orbit on a set of elements closed
/// under conjugation by `D`.
fn orbit_reps_under(d: &PermGroup, points: &[Permutation], position: impl Fn(&Permutation) -> Option<usize>) -> Vec<usize> {
    let mut marked = alloc::vec![false; points.len()];
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for k in 0..points.len() {
        if marked[k] {
            continue;
        }
        reps.push(k);
        marked[k] = true;
        stack.push(k);
        while let Some(j) = stack.pop() {
            for s in d.generators() {
                let q = position(&points[j].conj(s)).expect("set is closed under D");
                if !marked[q] {
                    marked[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    reps
}

/// Candidates `(y, d)` with `d ∈ C` and `y = x^d`, one per `D`-class of the
/// classes in `𝒜_i` that `x^C` meets.
fn class_route(ctx: &SearchContext, frame: &SearchFrame, x_orbit: &Orbit<Permutation>) -> Result<Vec<(Permutation, Permutation)>> {
    let mut out = Vec::new();
    for &k in &ctx.class_lists[frame.level] {
        let elements = ctx.class_elements(k)?;
        let pts = elements.points();
        for r in orbit_reps_under(&frame.envelope_part, pts, |p| elements.position(p)) {
            let y = &pts[r];
            if let Some(pos) = x_orbit.position(y) {
                out.push((y.clone(), x_orbit.transversal(pos)));
            }
        }
    }
    Ok(out)
}

/// Candidates from the `D`-classes of `x^C` that lie in the target.
fn conjugate_route(ctx: &SearchContext, frame: &SearchFrame, x_orbit: &Orbit<Permutation>) -> Vec<(Permutation, Permutation)> {
    let pts = x_orbit.points();
    orbit_reps_under(&frame.envelope_part, pts, |p| x_orbit.position(p))
        .into_iter()
        .filter(|&r| ctx.target.contains(&pts[r]))
        .map(|r| (pts[r].clone(), x_orbit.transversal(r)))
        .collect()
}

fn x_orbit(ctx: &SearchContext, frame: &SearchFrame, x: &Permutation) -> Result<Orbit<Permutation>> {
    element_orbit(&frame.centralizer_sub, x, ctx.caps.class_elements as usize)
}

/// Extensions of `frame` found by conjugating `x` under `C` and keeping the
/// `D`-class representatives that land in the target.
pub fn search_small_c_fallback(ctx: &SearchContext, frame: &SearchFrame, x: &Permutation) -> Result<Vec<(Permutation, Permutation)>> {
    Ok(conjugate_route(ctx, frame, &x_orbit(ctx, frame, x)?))
}

/// Extensions of `frame` found from the envelope classes in `𝒜_i`.
pub fn search_class_route(ctx: &SearchContext, frame: &SearchFrame, x: &Permutation) -> Result<Vec<(Permutation, Permutation)>> {
    class_route(ctx, frame, &x_orbit(ctx, frame, x)?)
}

/// Depth-first search for conjugators mapping every `b_i` into the target.
/// Appends `(B^g, g)` to the context's results.
pub fn search(ctx: &mut SearchContext, frame: SearchFrame) -> Result<()> {
    if ctx.class_lists.iter().any(|l| l.is_empty()) {
        return Ok(());
    }
    search_from(ctx, frame)
}

fn search_from(ctx: &mut SearchContext, frame: SearchFrame) -> Result<()> {
    let i = frame.level;
    if i >= ctx.gens.len() {
        let g = frame.conjugator;
        assert!(
            ctx.gens.iter().all(|b| ctx.target.contains(&b.conj(&g))),
            "search stored a conjugator that does not map B into the target"
        );
        ctx.results.push((ctx.subgroup.conjugate(&g), g));
        return Ok(());
    }
    let x = ctx.gens[i].conj(&frame.conjugator);
    let x_orbit = x_orbit(ctx, &frame, &x)?;
    let use_conjugates = match ctx.policy {
        SmallCPolicy::ForceOn => true,
        SmallCPolicy::ForceOff => false,
        SmallCPolicy::Auto => {
            let d = frame.envelope_part.order();
            let class_cost: u128 = ctx.class_lists[i].iter().map(|&k| ctx.classes[k].size.div_ceil(d)).sum();
            class_cost > x_orbit.len() as u128
        }
    };
    let candidates = if use_conjugates {
        conjugate_route(ctx, &frame, &x_orbit)
    } else {
        class_route(ctx, &frame, &x_orbit)?
    };
    if candidates.is_empty() {
        return Ok(());
    }
    let cx = x_orbit.stabilizer(&frame.centralizer_sub, |y, s| y.conj(s));
    for (y, d) in candidates {
        let next = SearchFrame {
            centralizer_sub: cx.conjugate(&d),
            level: i + 1,
            conjugator: frame.conjugator.mul(&d),
            envelope_part: centralizer_unchecked(&frame.envelope_part, &y),
        };
        search_from(ctx, next)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// EmbeddingConjugates

/// Data that depends only on `G` and `B`: generator candidates of `B` with
/// their `G`-classes, and `N_G(B)`.
pub struct EmbedPrep {
    ambient: PermGroup,
    subgroup: PermGroup,
    normalizer: PermGroup,
    /// (element, index into `orbits`, prime order)
    candidates: Vec<(Permutation, usize, bool)>,
    orbits: Vec<Orbit<Permutation>>,
}

impl EmbedPrep {
    pub fn new(g: &PermGroup, b: &PermGroup, caps: &Caps) -> Result<Self> {
        let normalizer = normalizer_unchecked(g, b, caps)?;
        let mut raw: Vec<(Permutation, bool)> = Vec::new();
        if !b.is_trivial() {
            let table = conjugacy_classes(b, caps)?;
            let primes: Vec<Permutation> = table
                .classes()
                .iter()
                .map(|c| &c.representative)
                .filter(|x| is_prime(x.order() as u128))
                .cloned()
                .collect();
            let spanned = normal_closure(b, &primes);
            raw.extend(primes.into_iter().map(|x| (x, true)));
            if spanned.order() != b.order() {
                raw.extend(b.generators().iter().cloned().map(|x| (x, false)));
            }
        }
        let mut orbits: Vec<Orbit<Permutation>> = Vec::new();
        let mut candidates = Vec::with_capacity(raw.len());
        for (x, prime) in raw {
            let o = match orbits.iter().position(|o| o.position(&x).is_some()) {
                Some(i) => i,
                None => {
                    orbits.push(element_orbit(g, &x, caps.class_elements as usize)?);
                    orbits.len() - 1
                }
            };
            candidates.push((x, o, prime));
        }
        Ok(EmbedPrep { ambient: g.clone(), subgroup: b.clone(), normalizer, candidates, orbits })
    }

    pub fn normalizer(&self) -> &PermGroup {
        &self.normalizer
    }
}

/// Greedy generating sequence for `B`: fewest matching classes first, prime
/// order before the fallback generators.
fn select_generators(prep: &EmbedPrep, classes: &[EnvelopeClass]) -> Vec<Permutation> {
    let mut matches: Vec<Option<usize>> = alloc::vec![None; prep.orbits.len()];
    let mut scored: Vec<(bool, usize, SubgroupKey, &Permutation)> = prep
        .candidates
        .iter()
        .map(|(x, o, prime)| {
            let m = *matches[*o].get_or_insert_with(|| matching_classes(classes, x, &prep.orbits[*o]).len());
            let key = PermGroup::generated(x.degree(), core::slice::from_ref(x)).key();
            (!prime, m, key, x)
        })
        .collect();
    scored.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)).then_with(|| a.3.cmp(b.3)));
    let target = prep.subgroup.order();
    let mut span = PermGroup::trivial(prep.subgroup.degree());
    let mut out = Vec::new();
    for (_, _, _, x) in scored {
        if span.order() == target {
            break;
        }
        if !span.contains(x) {
            span = span.extended(core::slice::from_ref(x));
            out.push(x.clone());
        }
    }
    debug_assert_eq!(span.order(), target);
    out
}

/// Search results for `B` inside `A` up to `N_G(A)`-conjugacy, as the
/// pairs `(B^g, g)`.
fn search_for(prep: &EmbedPrep, a: &PermGroup, caps: &Caps, policy: SmallCPolicy) -> Result<Vec<(PermGroup, Permutation)>> {
    if prep.subgroup.is_trivial() {
        return Ok(alloc::vec![(prep.subgroup.clone(), prep.ambient.identity())]);
    }
    let l = normalizer_unchecked(&prep.ambient, a, caps)?;
    let classes = envelope_classes(a, &l, caps)?;
    let gens = select_generators(prep, &classes);
    let class_lists = gens
        .iter()
        .map(|b| {
            let o = prep.candidates.iter().find(|c| &c.0 == b).expect("selected from candidates").1;
            matching_classes(&classes, b, &prep.orbits[o])
        })
        .collect();
    let mut ctx = SearchContext {
        target: a.clone(),
        envelope: l,
        ambient: prep.ambient.clone(),
        subgroup: prep.subgroup.clone(),
        gens,
        classes,
        class_lists,
        results: Vec::new(),
        caps: *caps,
        policy,
    };
    let root = SearchFrame::root(&ctx);
    search(&mut ctx, root)?;
    Ok(ctx.into_results())
}

/// `embedding_conjugates` with precomputed `(G, B)` data.
pub fn embedding_conjugates_with(prep: &EmbedPrep, a: &PermGroup, opts: &IntervalOptions<'_>) -> Result<Vec<(PermGroup, Permutation)>> {
    let b = &prep.subgroup;
    if a.order() % b.order() != 0 || a.order() == b.order() {
        return Ok(Vec::new());
    }
    let found = search_for(prep, a, &opts.caps, opts.small_c)?;
    let mut seen: FxHashSet<PermGroup> = new_set();
    let mut out = Vec::new();
    for (_, g) in found {
        let h = g.inverse();
        let x = a.conjugate(&h);
        if seen.contains(&x) {
            continue;
        }
        let orbit = subgroup_orbit(&prep.normalizer, &x, opts.caps.subgroup_orbit)?;
        for (k, y) in orbit.points().iter().enumerate() {
            if seen.insert(y.clone()) {
                out.push((y.clone(), h.mul(&orbit.transversal(k))));
            }
        }
    }
    out.retain(|(y, _)| y != b);
    out.sort_by(|p, q| p.0.output_cmp(&q.0));
    Ok(out)
}

/// All conjugates `A^h` with `B < A^h`, each with its conjugator `h`.
pub fn embedding_conjugates(
    g: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
    opts: &IntervalOptions<'_>,
) -> Result<Vec<(PermGroup, Permutation)>> {
    if !a.is_subgroup_of(g) || !b.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if a.order() % b.order() != 0 || a.order() == b.order() {
        return Ok(Vec::new());
    }
    let prep = EmbedPrep::new(g, b, &opts.caps)?;
    embedding_conjugates_with(&prep, a, opts)
}

// ---------------------------------------------------------------------------
// Orbit-length filter

/// Whether the orbit lengths of `u` can be grouped to sum to the orbit
/// lengths of `w` (necessary for a conjugate of `w` to contain `u`).
pub fn orbit_lengths_compatible(w: &PermGroup, u: &PermGroup) -> bool {
    let mut parts = u.orbit_lengths();
    parts.reverse();
    let mut bins = w.orbit_lengths();
    bins.reverse();
    if parts.first() > bins.first() {
        return false;
    }
    fn place(parts: &[usize], bins: &mut [usize]) -> bool {
        let Some((&p, rest)) = parts.split_first() else {
            return bins.iter().all(|&b| b == 0);
        };
        let mut tried: Vec<usize> = Vec::new();
        for i in 0..bins.len() {
            if bins[i] < p || tried.contains(&bins[i]) {
                continue;
            }
            tried.push(bins[i]);
            bins[i] -= p;
            if place(rest, bins) {
                return true;
            }
            bins[i] += p;
        }
        false
    }
    place(&parts, &mut bins)
}

pub fn orbit_length_filter(reps: &MaximalClasses, u: &PermGroup) -> MaximalClasses {
    MaximalClasses {
        parent: reps.parent.clone(),
        reps: reps.reps.iter().filter(|w| orbit_lengths_compatible(w, u)).cloned().collect(),
        source: reps.source,
    }
}

// ---------------------------------------------------------------------------
// IntermediateSubgroups

/// Position of a subgroup as a conjugate of a cached root: `root^conj`.
#[derive(Clone, Debug)]
struct Provenance {
    root: usize,
    conj: Permutation,
}

struct Root {
    group: PermGroup,
    /// `group = roots[r].group ^ w` for an already computed root `r`.
    alias: Option<(usize, Permutation)>,
    /// Maximal subgroup representatives with their own root ids.
    maximals: Option<Vec<(PermGroup, usize)>>,
}

/// Maximal subgroup lists keyed by `G`-conjugacy class, handed out as
/// conjugates.
struct MaximalCache<'o> {
    ambient: PermGroup,
    roots: Vec<Root>,
    opts: &'o IntervalOptions<'o>,
}

impl<'o> MaximalCache<'o> {
    fn new(ambient: &PermGroup, opts: &'o IntervalOptions<'o>) -> Self {
        MaximalCache {
            ambient: ambient.clone(),
            roots: alloc::vec![Root { group: ambient.clone(), alias: None, maximals: None }],
            opts,
        }
    }

    fn provide(&self, t: &PermGroup) -> Result<MaximalClasses> {
        if let Some(lib) = self.opts.library {
            match maximal_subgroups(t, Provider::Datafile(lib), &self.opts.caps) {
                Err(Error::DatafileMiss) => {}
                other => return other,
            }
        }
        if t.order() > self.opts.caps.oracle_order {
            return Err(Error::MaximalUnavailable(t.order()));
        }
        maximal_subgroups(t, Provider::Oracle, &self.opts.caps)
    }

    /// A root with computed maximals and `w` with `roots[id].group = roots[r].group^w`.
    fn resolve(&mut self, id: usize) -> Result<(usize, Permutation)> {
        if let Some((r, w)) = &self.roots[id].alias {
            return Ok((*r, w.clone()));
        }
        if self.roots[id].maximals.is_some() {
            return Ok((id, self.ambient.identity()));
        }
        let group = self.roots[id].group.clone();
        let lengths = group.orbit_lengths();
        for r in 0..self.roots.len() {
            let other = &self.roots[r];
            if other.maximals.is_none() || other.group.order() != group.order() || other.group.orbit_lengths() != lengths {
                continue;
            }
            match subgroup_conjugator(&self.ambient, &other.group, &group, &self.opts.caps) {
                Ok(Some(w)) => {
                    self.roots[id].alias = Some((r, w.clone()));
                    return Ok((r, w));
                }
                Ok(None) => {}
                Err(e) if e.is_cap() => {}
                Err(e) => return Err(e),
            }
        }
        let classes = self.provide(&group)?;
        let mut list = Vec::with_capacity(classes.reps.len());
        for m in classes.reps {
            self.roots.push(Root { group: m.clone(), alias: None, maximals: None });
            list.push((m, self.roots.len() - 1));
        }
        self.roots[id].maximals = Some(list);
        Ok((id, self.ambient.identity()))
    }

    /// Maximal subgroups of `roots[p.root]^p.conj`, with provenance.
    fn maximals_of(&mut self, p: &Provenance) -> Result<Vec<(PermGroup, Provenance)>> {
        let (r, w) = self.resolve(p.root)?;
        let h = w.mul(&p.conj);
        let list = self.roots[r].maximals.as_ref().expect("resolved");
        Ok(list
            .iter()
            .map(|(m, id)| (m.conjugate(&h), Provenance { root: *id, conj: h.clone() }))
            .collect())
    }
}

struct Node {
    group: PermGroup,
    provenance: Provenance,
}

/// Worklist state: found subgroups (node 0 is `G`) and edges `(lower, upper)`
/// with `None` standing for `U`.
struct IntervalState {
    nodes: Vec<Node>,
    index: FxHashMap<PermGroup, usize>,
    edges: FxHashSet<(Option<usize>, usize)>,
    worklist: BinaryHeap<(u128, Reverse<SubgroupKey>, usize)>,
}

impl IntervalState {
    fn new(g: &PermGroup) -> Self {
        let mut index = new_map();
        index.insert(g.clone(), 0);
        let mut worklist = BinaryHeap::new();
        worklist.push((g.order(), Reverse(g.key()), 0));
        IntervalState {
            nodes: alloc::vec![Node { group: g.clone(), provenance: Provenance { root: 0, conj: g.identity() } }],
            index,
            edges: new_set(),
            worklist,
        }
    }

    fn insert(&mut self, x: PermGroup, provenance: Provenance) -> usize {
        if let Some(&i) = self.index.get(&x) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(x.clone(), i);
        self.worklist.push((x.order(), Reverse(x.key()), i));
        self.nodes.push(Node { group: x, provenance });
        i
    }
}

/// Maximal subgroups `W` of `T` that may have a conjugate containing `U`.
fn candidate_maximals(
    cache: &mut MaximalCache<'_>,
    provenance: &Provenance,
    u: &PermGroup,
    opts: &IntervalOptions<'_>,
) -> Result<Vec<(PermGroup, Provenance)>> {
    let mut maxs = cache.maximals_of(provenance)?;
    maxs.retain(|(w, _)| w.order() % u.order() == 0);
    if opts.orbit_filter {
        maxs.retain(|(w, _)| orbit_lengths_compatible(w, u));
    }
    Ok(maxs)
}

/// All subgroups strictly between `u` and `g` with their maximality edges.
pub fn intermediate_subgroups(g: &PermGroup, u: &PermGroup, opts: &IntervalOptions<'_>) -> Result<LatticeInterval> {
    if !u.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if u.order() == g.order() {
        return Ok(LatticeInterval::degenerate(g));
    }
    let mut state = IntervalState::new(g);
    let mut cache = MaximalCache::new(g, opts);
    while let Some((order, _, t)) = state.worklist.pop() {
        let index = order / u.order();
        if is_prime(index) {
            state.edges.insert((None, t));
            continue;
        }
        let provenance = state.nodes[t].provenance.clone();
        let maxs = candidate_maximals(&mut cache, &provenance, u, opts)?;
        let mut any = false;
        if !maxs.is_empty() {
            let top = state.nodes[t].group.clone();
            let prep = EmbedPrep::new(&top, u, &opts.caps)?;
            for (w, wp) in maxs {
                for (x, h) in embedding_conjugates_with(&prep, &w, opts)? {
                    if &x == u {
                        state.edges.insert((None, t));
                        continue;
                    }
                    any = true;
                    let conj = wp.conj.mul(&h);
                    let i = state.insert(x, Provenance { root: wp.root, conj });
                    state.edges.insert((Some(i), t));
                }
            }
        }
        if !any {
            state.edges.insert((None, t));
        }
    }
    let subgroups: Vec<PermGroup> = state.nodes[1..].iter().map(|n| n.group.clone()).collect();
    let edges: Vec<(Option<usize>, Option<usize>)> = state
        .edges
        .iter()
        .map(|&(lo, hi)| (lo.map(|i| i - 1), if hi == 0 { None } else { Some(hi - 1) }))
        .collect();
    Ok(LatticeInterval::from_unsorted(u, g, subgroups, &edges))
}

/// Some subgroup strictly between `u` and `g`, or `None` when `u` is
/// maximal in `g`.
pub fn first_intermediate(g: &PermGroup, u: &PermGroup, opts: &IntervalOptions<'_>) -> Result<Option<PermGroup>> {
    if !u.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if u.order() == g.order() || is_prime(g.order() / u.order()) {
        return Ok(None);
    }
    let mut cache = MaximalCache::new(g, opts);
    let root = Provenance { root: 0, conj: g.identity() };
    let maxs = candidate_maximals(&mut cache, &root, u, opts)?;
    if maxs.is_empty() {
        return Ok(None);
    }
    let prep = EmbedPrep::new(g, u, &opts.caps)?;
    for (w, _) in maxs {
        if let Some((x, _)) = embedding_conjugates_with(&prep, &w, opts)?.into_iter().next() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::oracle::intermediate_oracle;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        let gens: Vec<Permutation> = gens.iter().map(|s| p(s, n)).collect();
        PermGroup::new(n, &gens).unwrap()
    }

    /// Conjugates of `a` strictly containing `b`, by a full sweep of `g`.
    fn brute_embeddings(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> FxHashSet<PermGroup> {
        let mut out = new_set();
        g.for_each_element(|h| {
            let x = a.conjugate(h);
            if b.is_proper_subgroup_of(&x) {
                out.insert(x);
            }
        });
        out
    }

    fn check_embedding(g: &PermGroup, a: &PermGroup, b: &PermGroup) {
        let opts = IntervalOptions::default();
        let got = embedding_conjugates(g, a, b, &opts).unwrap();
        for (x, h) in &got {
            assert!(b.is_proper_subgroup_of(x));
            assert_eq!(&a.conjugate(h), x);
        }
        let got: FxHashSet<PermGroup> = got.into_iter().map(|x| x.0).collect();
        assert_eq!(got, brute_embeddings(g, a, b));
    }

    #[test]
    fn embedding_examples() {
        let s4 = named::symmetric(4);
        let s3 = group(4, &["(1,2)", "(1,2,3)"]);
        let t = group(4, &["(1,2)"]);
        let got = embedding_conjugates(&s4, &s3, &t, &IntervalOptions::default()).unwrap();
        assert_eq!(got.len(), 2);
        check_embedding(&s4, &s3, &t);
        assert!(embedding_conjugates(&s4, &s3, &s3, &IntervalOptions::default()).unwrap().is_empty());

        let s5 = named::symmetric(5);
        let syl = group(5, &["(1,2,3,4)", "(1,3)"]);
        let v = group(5, &["(1,2)(3,4)"]);
        check_embedding(&s5, &syl, &v);
        check_embedding(&s5, &group(5, &["(1,2,3,4,5)", "(2,3,5,4)"]), &group(5, &["(2,5)(3,4)"]));
        check_embedding(&s5, &named::alternating(5), &group(5, &["(1,2,3)"]));
        check_embedding(&s5, &group(5, &["(1,2)", "(3,4,5)", "(3,4)"]), &group(5, &["(1,2)(3,4)"]));
        check_embedding(&s4, &group(4, &["(1,2,3,4)", "(1,3)"]), &group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]));
        check_embedding(&s4, &group(4, &["(1,2,3,4)", "(1,3)"]), &group(4, &["(1,2,3,4)"]));
    }

    #[test]
    fn search_d8_example() {
        let s4 = named::symmetric(4);
        let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
        let b = p("(1,3)(2,4)", 4);
        let mut ctx = SearchContext::new(&s4, &d8, &d8, core::slice::from_ref(&b), &Caps::default(), SmallCPolicy::Auto).unwrap();
        let root = SearchFrame::root(&ctx);
        search(&mut ctx, root).unwrap();
        assert!(!ctx.results().is_empty());
        for (bg, g) in ctx.results() {
            assert!(bg.is_subgroup_of(&d8));
            assert!(d8.contains(&b.conj(g)));
        }
        // every conjugate of B inside D8 is D8-conjugate to a result
        let bgrp = group(4, &["(1,3)(2,4)"]);
        let mut found: FxHashSet<PermGroup> = new_set();
        for (bg, _) in ctx.results() {
            d8.for_each_element(|a| {
                found.insert(bg.conjugate(a));
            });
        }
        s4.for_each_element(|h| {
            let c = bgrp.conjugate(h);
            if c.is_subgroup_of(&d8) {
                assert!(found.contains(&c));
            }
        });
    }

    #[test]
    fn search_edge_cases() {
        let s4 = named::symmetric(4);
        let a4 = named::alternating(4);
        // a transposition has no conjugate in A4
        let mut ctx = SearchContext::new(&s4, &a4, &a4, &[p("(1,2)", 4)], &Caps::default(), SmallCPolicy::Auto).unwrap();
        assert!(ctx.class_lists()[0].is_empty());
        let root = SearchFrame::root(&ctx);
        search(&mut ctx, root).unwrap();
        assert!(ctx.results().is_empty());
        // no generators: the root frame is already complete
        let mut ctx = SearchContext::new(&s4, &a4, &a4, &[], &Caps::default(), SmallCPolicy::Auto).unwrap();
        let root = SearchFrame::root(&ctx);
        search(&mut ctx, root).unwrap();
        assert_eq!(ctx.results().len(), 1);
    }

    #[test]
    fn fallback_matches_class_route() {
        let s5 = named::symmetric(5);
        let a = group(5, &["(1,2)", "(3,4,5)", "(3,4)"]);
        let ctx = SearchContext::new(&s5, &a, &a, &[p("(1,2)(3,4)", 5), p("(3,5)", 5)], &Caps::default(), SmallCPolicy::Auto).unwrap();
        let root = SearchFrame::root(&ctx);
        let x = ctx.gens()[0].clone();
        let via_classes = search_class_route(&ctx, &root, &x).unwrap();
        let via_conjugates = search_small_c_fallback(&ctx, &root, &x).unwrap();
        // both routes give one candidate per D-class of x^G ∩ A
        assert_eq!(via_classes.len(), via_conjugates.len());
        for (y, d) in via_classes.iter().chain(&via_conjugates) {
            assert_eq!(&x.conj(d), y);
            assert!(a.contains(y));
        }
        // trivial C: only x itself
        let frame = SearchFrame {
            centralizer_sub: PermGroup::trivial(5),
            level: 0,
            conjugator: s5.identity(),
            envelope_part: PermGroup::trivial(5),
        };
        let only = search_small_c_fallback(&ctx, &frame, &x).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].0, x);
        let outside = search_small_c_fallback(&ctx, &frame, &p("(1,3)", 5)).unwrap();
        assert!(outside.is_empty());
    }

    #[test]
    fn orbit_filter_examples() {
        let s5 = named::symmetric(5);
        let triv = PermGroup::trivial(5);
        let a4 = group(5, &["(1,2,3)", "(2,3,4)"]);
        assert!(orbit_lengths_compatible(&a4, &triv));
        let c5 = group(5, &["(1,2,3,4,5)"]);
        assert!(!orbit_lengths_compatible(&a4, &c5));
        assert!(orbit_lengths_compatible(&s5, &c5));
        let k = group(5, &["(1,2)", "(3,4)"]);
        assert!(orbit_lengths_compatible(&a4, &k));
        let s3s2 = group(5, &["(1,2,3)", "(1,2)", "(4,5)"]);
        let c = group(5, &["(1,2)(3,4)"]);
        assert!(!orbit_lengths_compatible(&s3s2, &group(5, &["(1,2,3,4)"])));
        assert!(orbit_lengths_compatible(&s3s2, &c));
    }

    #[test]
    fn interval_examples() {
        let opts = IntervalOptions::default();
        let caps = Caps::default();
        let s3 = named::symmetric(3);
        let iv = intermediate_subgroups(&s3, &named::alternating(3), &opts).unwrap();
        assert!(iv.is_empty());
        assert_eq!(iv.inclusions(), &[(0, 1)]);
        let s4 = named::symmetric(4);
        let c4 = group(4, &["(1,2,3,4)"]);
        let iv = intermediate_subgroups(&s4, &c4, &opts).unwrap();
        assert_eq!(iv.len(), 1);
        assert_eq!(iv.subgroups()[0].order(), 8);
        assert_eq!(iv.inclusions(), &[(0, 1), (1, 2)]);
        for gens in [&["(1,2)"][..], &[], &["(1,2)(3,4)"], &["(1,2,3)"]] {
            let u = group(4, gens);
            let a = intermediate_subgroups(&s4, &u, &opts).unwrap();
            let b = intermediate_oracle(&s4, &u, &caps).unwrap();
            assert!(a.same_as(&b), "{:?}", a.diff(&b));
            a.validate().unwrap();
        }
        let same = intermediate_subgroups(&s4, &s4, &opts).unwrap();
        assert!(same.is_empty() && same.inclusions().is_empty());
    }

    #[test]
    fn first_intermediate_examples() {
        let opts = IntervalOptions::default();
        let s4 = named::symmetric(4);
        let s3 = group(4, &["(1,2)", "(1,2,3)"]);
        assert!(first_intermediate(&s4, &s3, &opts).unwrap().is_none());
        let c4 = group(4, &["(1,2,3,4)"]);
        let v = first_intermediate(&s4, &c4, &opts).unwrap().unwrap();
        assert_eq!(v.order(), 8);
        assert!(c4.is_proper_subgroup_of(&v));
    }

    #[test]
    fn unavailable_maximals() {
        let opts = IntervalOptions { caps: Caps { oracle_order: 10, ..Caps::default() }, ..IntervalOptions::default() };
        let s4 = named::symmetric(4);
        assert_eq!(
            intermediate_subgroups(&s4, &PermGroup::trivial(4), &opts).err(),
            Some(Error::MaximalUnavailable(24))
        );
    }
}
