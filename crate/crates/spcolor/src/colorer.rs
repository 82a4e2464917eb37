//! Construction of explicit colorings by replaying a reduction trace.
//!
//! A yes-verdict trace is unwound backwards: starting from the empty
//! coloring of the fully reduced graph, each frame restores the vertices
//! and edges its reduction removed and extends the coloring over them. The
//! workhorse is the two-fan extension, which colors two groups of parallel
//! edges at a shared vertex under three cardinality inequalities. All color
//! choices break ties toward the smallest color, so replays are
//! deterministic. Colors are the integers `1..=k`.

use std::collections::{btree_set, BTreeMap, BTreeSet, HashMap};

use crate::multigraph::{Multigraph, VertexId};
use crate::reducer::{
    decide_full, DecideOptions, NotSeriesParallelError, ReductionFrame, Verdict,
};

/// A set of colors from a palette `1..=k`; word-packed while the palette is
/// small, a tree otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorSet {
    Bits { words: [u64; 4], len: u32 },
    Tree(BTreeSet<u64>),
}

impl ColorSet {
    pub fn for_palette(k: u64) -> ColorSet {
        if k <= 256 {
            ColorSet::Bits { words: [0; 4], len: 0 }
        } else {
            ColorSet::Tree(BTreeSet::new())
        }
    }

    pub fn from_colors(k: u64, colors: impl IntoIterator<Item = u64>) -> ColorSet {
        let mut set = ColorSet::for_palette(k);
        for c in colors {
            set.insert(c);
        }
        set
    }

    /// Inserts `color`, reporting whether it was new.
    pub fn insert(&mut self, color: u64) -> bool {
        match self {
            ColorSet::Bits { words, len } => {
                assert!((1..=256).contains(&color), "color outside the packed palette");
                let (w, b) = (((color - 1) / 64) as usize, (color - 1) % 64);
                let fresh = words[w] & (1 << b) == 0;
                words[w] |= 1 << b;
                *len += u32::from(fresh);
                fresh
            }
            ColorSet::Tree(set) => set.insert(color),
        }
    }

    /// Removes `color`, reporting whether it was present.
    pub fn remove(&mut self, color: u64) -> bool {
        match self {
            ColorSet::Bits { words, len } => {
                if !(1..=256).contains(&color) {
                    return false;
                }
                let (w, b) = (((color - 1) / 64) as usize, (color - 1) % 64);
                let present = words[w] & (1 << b) != 0;
                words[w] &= !(1 << b);
                *len -= u32::from(present);
                present
            }
            ColorSet::Tree(set) => set.remove(&color),
        }
    }

    pub fn contains(&self, color: u64) -> bool {
        match self {
            ColorSet::Bits { words, .. } => {
                (1..=256).contains(&color)
                    && words[((color - 1) / 64) as usize] & (1 << ((color - 1) % 64)) != 0
            }
            ColorSet::Tree(set) => set.contains(&color),
        }
    }

    pub fn len(&self) -> u64 {
        match self {
            ColorSet::Bits { len, .. } => u64::from(*len),
            ColorSet::Tree(set) => set.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Colors in ascending order.
    pub fn iter(&self) -> ColorSetIter<'_> {
        match self {
            ColorSet::Bits { words, .. } => ColorSetIter::Bits { words, next: 0 },
            ColorSet::Tree(set) => ColorSetIter::Tree(set.iter()),
        }
    }

    /// |self ∪ other|.
    pub fn union_len(&self, other: &ColorSet) -> u64 {
        match (self, other) {
            (ColorSet::Bits { words: a, .. }, ColorSet::Bits { words: b, .. }) => {
                (0..4).map(|i| u64::from((a[i] | b[i]).count_ones())).sum()
            }
            _ => self.len() + other.iter().filter(|&c| !self.contains(c)).count() as u64,
        }
    }

    /// |s0 ∪ (s1 ∩ s2)| — the quantity in the two-fan's third inequality.
    pub fn hub_len(s0: &ColorSet, s1: &ColorSet, s2: &ColorSet) -> u64 {
        match (s0, s1, s2) {
            (
                ColorSet::Bits { words: w0, .. },
                ColorSet::Bits { words: w1, .. },
                ColorSet::Bits { words: w2, .. },
            ) => (0..4).map(|i| u64::from((w0[i] | (w1[i] & w2[i])).count_ones())).sum(),
            _ => {
                s0.len()
                    + s1.iter().filter(|&c| s2.contains(c) && !s0.contains(c)).count() as u64
            }
        }
    }
}

pub enum ColorSetIter<'a> {
    Bits { words: &'a [u64; 4], next: u32 },
    Tree(btree_set::Iter<'a, u64>),
}

impl Iterator for ColorSetIter<'_> {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        match self {
            ColorSetIter::Bits { words, next } => {
                while *next < 256 {
                    let bit = *next;
                    *next += 1;
                    if words[(bit / 64) as usize] & (1 << (bit % 64)) != 0 {
                        return Some(u64::from(bit) + 1);
                    }
                }
                None
            }
            ColorSetIter::Tree(iter) => iter.next().copied(),
        }
    }
}

/// Which of the three two-fan inequalities failed, with the offending
/// left-hand side.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtendError {
    #[error("first inequality violated: m1 + |S0 ∪ S1| = {lhs} > k = {k}")]
    Side1 { lhs: u64, k: u64 },
    #[error("second inequality violated: m2 + |S0 ∪ S2| = {lhs} > k = {k}")]
    Side2 { lhs: u64, k: u64 },
    #[error("third inequality violated: m1 + m2 + |S0 ∪ (S1 ∩ S2)| = {lhs} > k = {k}")]
    Joint { lhs: u64, k: u64 },
}

/// Extends a coloring by two groups of parallel edges sharing one end:
/// `m1` edges whose other end sees `s1` and `m2` edges whose other end sees
/// `s2`, with `s0` seen at the shared end. Returns the two color groups,
/// mutually disjoint, with group one avoiding `s0 ∪ s1` and group two
/// avoiding `s0 ∪ s2` and group one.
///
/// Group one takes as much of `s2 ∖ (s0 ∪ s1)` as it can, smallest colors
/// first; that choice is what makes group two always completable.
pub fn two_fan_extend(
    k: u64,
    m1: u64,
    m2: u64,
    s0: &ColorSet,
    s1: &ColorSet,
    s2: &ColorSet,
) -> Result<(Vec<u64>, Vec<u64>), ExtendError> {
    let side1 = m1.saturating_add(s0.union_len(s1));
    if side1 > k {
        return Err(ExtendError::Side1 { lhs: side1, k });
    }
    let side2 = m2.saturating_add(s0.union_len(s2));
    if side2 > k {
        return Err(ExtendError::Side2 { lhs: side2, k });
    }
    let joint = m1.saturating_add(m2).saturating_add(ColorSet::hub_len(s0, s1, s2));
    if joint > k {
        return Err(ExtendError::Joint { lhs: joint, k });
    }
    let preferred = s2.iter().filter(|&c| !s0.contains(c) && !s1.contains(c));
    let colors1 = pick_colors(m1, k, preferred, &[s0, s1])
        .expect("the two-fan inequalities guarantee enough colors");
    let chosen = ColorSet::from_colors(k, colors1.iter().copied());
    let colors2 = pick_colors(m2, k, std::iter::empty(), &[s0, s2, &chosen])
        .expect("the two-fan inequalities guarantee enough colors");
    Ok((colors1, colors2))
}

/// `count` distinct colors in `1..=k` outside every banned set: first from
/// `pool` (whose members the caller has already vetted), then ascending.
fn pick_colors(
    count: u64,
    k: u64,
    pool: impl IntoIterator<Item = u64>,
    banned: &[&ColorSet],
) -> Result<Vec<u64>, TraceMismatch> {
    let mut out: Vec<u64> = Vec::new();
    let mut chosen = ColorSet::for_palette(k);
    for color in pool {
        if out.len() as u64 == count {
            break;
        }
        debug_assert!(banned.iter().all(|s| !s.contains(color)));
        if chosen.insert(color) {
            out.push(color);
        }
    }
    let mut color = 1;
    while (out.len() as u64) < count {
        while color <= k
            && (chosen.contains(color) || banned.iter().any(|s| s.contains(color)))
        {
            color += 1;
        }
        if color > k {
            return Err(TraceMismatch(format!(
                "needed {count} free colors but the palette of {k} ran out"
            )));
        }
        chosen.insert(color);
        out.push(color);
        color += 1;
    }
    Ok(out)
}

/// `count` colors from `from` (ascending), preferring those outside
/// `avoid`; used to select the twin-pair transfer set A.
fn prefer_outside(from: &[u64], avoid: &ColorSet, count: u64) -> Vec<u64> {
    let mut sorted = from.to_vec();
    sorted.sort_unstable();
    let mut picked: Vec<u64> =
        sorted.iter().copied().filter(|&c| !avoid.contains(c)).take(count as usize).collect();
    picked.extend(
        sorted
            .iter()
            .copied()
            .filter(|&c| avoid.contains(c))
            .take(count as usize - picked.len()),
    );
    picked.sort_unstable();
    picked
}

/// A coloring, stored per edge class with ascending color lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub k: u64,
    pub classes: BTreeMap<(VertexId, VertexId), Vec<u64>>,
}

impl Coloring {
    pub fn class(&self, u: VertexId, v: VertexId) -> Option<&[u64]> {
        self.classes.get(&(u.min(v), u.max(v))).map(Vec::as_slice)
    }
}

/// The trace does not describe the graph being colored; always a bug in the
/// caller (or here), never a property of valid input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("reduction trace does not fit the graph: {0}")]
pub struct TraceMismatch(pub String);

/// Class color lists plus per-vertex seen sets, kept consistent through
/// every mutation.
struct PartialColoring {
    k: u64,
    classes: HashMap<(VertexId, VertexId), Vec<u64>>,
    seen: HashMap<VertexId, ColorSet>,
    empty: ColorSet,
}

impl PartialColoring {
    fn new(k: u64) -> PartialColoring {
        PartialColoring {
            k,
            classes: HashMap::new(),
            seen: HashMap::new(),
            empty: ColorSet::for_palette(k),
        }
    }

    fn seen(&self, v: VertexId) -> &ColorSet {
        self.seen.get(&v).unwrap_or(&self.empty)
    }

    fn add_colors(
        &mut self,
        u: VertexId,
        v: VertexId,
        colors: Vec<u64>,
    ) -> Result<(), TraceMismatch> {
        let k = self.k;
        for &c in &colors {
            for end in [u, v] {
                if !self.seen.entry(end).or_insert_with(|| ColorSet::for_palette(k)).insert(c) {
                    return Err(TraceMismatch(format!("color {c} repeated at vertex {end}")));
                }
            }
        }
        self.classes.entry((u.min(v), u.max(v))).or_default().extend(colors);
        Ok(())
    }

    fn remove_colors(
        &mut self,
        u: VertexId,
        v: VertexId,
        colors: &[u64],
    ) -> Result<(), TraceMismatch> {
        let key = (u.min(v), u.max(v));
        for &c in colors {
            let list = self
                .classes
                .get_mut(&key)
                .ok_or_else(|| TraceMismatch(format!("class {key:?} absent")))?;
            let at = list
                .iter()
                .position(|&held| held == c)
                .ok_or_else(|| TraceMismatch(format!("class {key:?} lacks color {c}")))?;
            list.swap_remove(at);
            for end in [u, v] {
                self.seen.get_mut(&end).map(|s| s.remove(c));
            }
        }
        if self.classes.get(&key).is_some_and(Vec::is_empty) {
            self.classes.remove(&key);
        }
        Ok(())
    }

    /// Removes and returns the whole class, whose size must be `expected`;
    /// an absent class stands for zero.
    fn take_class_exact(
        &mut self,
        u: VertexId,
        v: VertexId,
        expected: u64,
    ) -> Result<Vec<u64>, TraceMismatch> {
        let key = (u.min(v), u.max(v));
        let mut colors = self.classes.remove(&key).unwrap_or_default();
        if colors.len() as u64 != expected {
            return Err(TraceMismatch(format!(
                "class {key:?} holds {} colors, expected {expected}",
                colors.len()
            )));
        }
        for &c in &colors {
            for end in [u, v] {
                self.seen.get_mut(&end).map(|s| s.remove(c));
            }
        }
        colors.sort_unstable();
        Ok(colors)
    }

    /// Removes and returns the `count` smallest colors of the class.
    fn take_smallest(
        &mut self,
        u: VertexId,
        v: VertexId,
        count: u64,
    ) -> Result<Vec<u64>, TraceMismatch> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let key = (u.min(v), u.max(v));
        let list = self
            .classes
            .get_mut(&key)
            .ok_or_else(|| TraceMismatch(format!("class {key:?} absent")))?;
        if (list.len() as u64) < count {
            return Err(TraceMismatch(format!(
                "class {key:?} holds {} colors, needed {count}",
                list.len()
            )));
        }
        list.sort_unstable();
        let taken: Vec<u64> = list.drain(..count as usize).collect();
        if list.is_empty() {
            self.classes.remove(&key);
        }
        for &c in &taken {
            for end in [u, v] {
                self.seen.get_mut(&end).map(|s| s.remove(c));
            }
        }
        Ok(taken)
    }

    fn class_sorted(&self, u: VertexId, v: VertexId) -> Vec<u64> {
        let mut colors =
            self.classes.get(&(u.min(v), u.max(v))).cloned().unwrap_or_default();
        colors.sort_unstable();
        colors
    }

    fn extend_two_fan(
        &mut self,
        center: VertexId,
        m1: u64,
        end1: Option<VertexId>,
        m2: u64,
        end2: Option<VertexId>,
    ) -> Result<(), TraceMismatch> {
        let s0 = self.seen(center);
        let s1 = end1.map_or(&self.empty, |v| self.seen(v));
        let s2 = end2.map_or(&self.empty, |v| self.seen(v));
        let (colors1, colors2) = two_fan_extend(self.k, m1, m2, s0, s1, s2)
            .map_err(|e| TraceMismatch(format!("two-fan extension failed: {e}")))?;
        if let Some(v1) = end1 {
            self.add_colors(v1, center, colors1)?;
        }
        if let Some(v2) = end2 {
            self.add_colors(v2, center, colors2)?;
        }
        Ok(())
    }
}

/// Builds a k-edge-coloring of `g` from a yes-verdict trace of its
/// reduction, unwinding the frames last to first.
pub fn replay_color(
    g: &Multigraph,
    k: u64,
    trace: &[ReductionFrame],
) -> Result<Coloring, TraceMismatch> {
    let mut partial = PartialColoring::new(k);
    for frame in trace.iter().rev() {
        replay_frame(&mut partial, frame)?;
    }
    let mut classes = BTreeMap::new();
    for class in g.classes() {
        let colors = partial.classes.remove(&(class.u, class.v)).unwrap_or_default();
        if colors.len() as u64 != class.mult {
            return Err(TraceMismatch(format!(
                "class ({}, {}) ended with {} colors, multiplicity is {}",
                class.u,
                class.v,
                colors.len(),
                class.mult
            )));
        }
        let mut colors = colors;
        colors.sort_unstable();
        classes.insert((class.u, class.v), colors);
    }
    if let Some(stray) = partial.classes.keys().next() {
        return Err(TraceMismatch(format!("replay colored a nonexistent class {stray:?}")));
    }
    Ok(Coloring { k, classes })
}

fn replay_frame(p: &mut PartialColoring, frame: &ReductionFrame) -> Result<(), TraceMismatch> {
    let k = p.k;
    match *frame {
        ReductionFrame::Isolated { .. } => Ok(()),
        ReductionFrame::PendantClass { v, x, m } => {
            let colors = pick_colors(m, k, std::iter::empty(), &[p.seen(x)])?;
            p.add_colors(v, x, colors)
        }
        ReductionFrame::TriplePath { w, u1, v1, a, c, .. } => {
            let toward_w = pick_colors(c, k, std::iter::empty(), &[p.seen(w)])?;
            p.add_colors(v1, w, toward_w)?;
            let toward_u1 = pick_colors(a, k, std::iter::empty(), &[p.seen(u1), p.seen(v1)])?;
            p.add_colors(u1, v1, toward_u1)
        }
        ReductionFrame::TwinPair { x, y, u, v, a, b, c, d, u_folded } => {
            if u_folded {
                let regen = pick_colors(b + d, k, std::iter::empty(), &[p.seen(y)])?;
                p.add_colors(u, y, regen)?;
            }
            let group_uy = p.class_sorted(u, y);
            if group_uy.len() as u64 != b + d {
                return Err(TraceMismatch(format!(
                    "twin group at ({u}, {y}) holds {} colors, expected {}",
                    group_uy.len(),
                    b + d
                )));
            }
            // Move d of the u-y edges over to u-x: reuse their colors where x
            // allows it, otherwise any color free at both x and u. Taking the
            // A-colors least seen by x is what caps |seen(x) ∩ seen(y)|.
            let a_set = prefer_outside(&group_uy, p.seen(x), d);
            p.remove_colors(u, y, &a_set)?;
            let reusable: Vec<u64> =
                a_set.iter().copied().filter(|&col| !p.seen(x).contains(col)).collect();
            let toward_x = pick_colors(d, k, reusable, &[p.seen(x), p.seen(u)])?;
            p.add_colors(u, x, toward_x)?;
            debug_assert_eq!(p.class_sorted(u, x).len() as u64, a);
            p.extend_two_fan(v, c, Some(x), d, Some(y))
        }
        ReductionFrame::FanSmall { w, u1, u2, v1, v2, a, c, d, f, .. } => {
            if let Some(v1) = v1 {
                let group = pick_colors(a, k, std::iter::empty(), &[p.seen(u1), p.seen(v1)])?;
                p.add_colors(u1, v1, group)?;
            }
            if let Some(v2) = v2 {
                let group = pick_colors(f, k, std::iter::empty(), &[p.seen(u2), p.seen(v2)])?;
                p.add_colors(u2, v2, group)?;
            }
            p.extend_two_fan(w, c, v1, d, v2)
        }
        ReductionFrame::FanBig {
            w, u1, u2, v1, v2, a, b, c, d, e, f, z1, z2, s1, s2, x, y,
        } => {
            let (gx0, gx1) = (a - z1 - s1, f - z2 - s2);
            let (gy0, gy1) = (b - z2, e - z1);
            // A one-sided replacement vertex was folded out of the reduced
            // graph; rebuild its single group before transferring.
            for (kept, fresh, side0, side1) in
                [(gx0 > 0 && gx1 > 0, x, (u1, gx0), (u2, gx1)),
                 (gy0 > 0 && gy1 > 0, y, (u1, gy0), (u2, gy1))]
            {
                if kept {
                    continue;
                }
                for (ui, size) in [side0, side1] {
                    if size > 0 {
                        let group = pick_colors(size, k, std::iter::empty(), &[p.seen(ui)])?;
                        p.add_colors(fresh, ui, group)?;
                    }
                }
            }
            let group_xu1 = p.take_class_exact(x, u1, gx0)?;
            let group_xu2 = p.take_class_exact(x, u2, gx1)?;
            let group_yu1 = p.take_class_exact(y, u1, gy0)?;
            let group_yu2 = p.take_class_exact(y, u2, gy1)?;
            let zz = p.take_smallest(u1, u2, z1 + z2)?;
            let (zpart1, zpart2) = zz.split_at(z1 as usize);
            // The crossing transfer: the x-groups and Z-halves move onto the
            // rim classes, the y-groups and opposite Z-halves onto the center
            // classes. Each color stays incident to the u_i it was on.
            let v1 = v1.ok_or_else(|| TraceMismatch("fan frame lacks its first rim".into()))?;
            p.add_colors(u1, v1, group_xu1.iter().chain(zpart1).copied().collect())?;
            if b > 0 {
                p.add_colors(w, u1, group_yu1.iter().chain(zpart2).copied().collect())?;
            }
            if e > 0 {
                p.add_colors(w, u2, group_yu2.iter().chain(zpart1).copied().collect())?;
            }
            if let Some(v2) = v2 {
                p.add_colors(u2, v2, group_xu2.iter().chain(zpart2).copied().collect())?;
            } else if gx1 + z2 > 0 {
                return Err(TraceMismatch("fan frame lacks its second rim".into()));
            }
            if s1 > 0 {
                let group = pick_colors(s1, k, std::iter::empty(), &[p.seen(u1), p.seen(v1)])?;
                p.add_colors(u1, v1, group)?;
            }
            if s2 > 0 {
                let v2 = v2.expect("a positive leftover requires the second rim");
                let group = pick_colors(s2, k, std::iter::empty(), &[p.seen(u2), p.seen(v2)])?;
                p.add_colors(u2, v2, group)?;
            }
            p.extend_two_fan(w, c, Some(v1), d, v2)
        }
    }
}

/// Decides colorability and, on yes, replays the trace into an explicit
/// coloring.
pub fn find_coloring(
    g: &Multigraph,
    k: u64,
) -> Result<Option<Coloring>, NotSeriesParallelError> {
    let report =
        decide_full(g, k, &DecideOptions { collect_trace: true, ..Default::default() });
    match report.verdict {
        Verdict::Yes => Ok(Some(
            replay_color(g, k, &report.trace)
                .expect("a yes-verdict trace always replays cleanly"),
        )),
        Verdict::No(_) => Ok(None),
        Verdict::NotSeriesParallel => Err(NotSeriesParallelError),
    }
}

/// The coloring names a different set of classes than the graph has.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("coloring classes do not match the graph: {0}")]
pub struct ShapeMismatch(pub String);

/// Why a shape-compatible coloring is not proper.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyFailure {
    #[error("class ({u}, {v}) has {got} colors, multiplicity is {want}")]
    WrongCount { u: VertexId, v: VertexId, got: usize, want: u64 },
    #[error("class ({u}, {v}) color {color} outside 1..={k}")]
    ColorOutOfRange { u: VertexId, v: VertexId, color: u64, k: u64 },
    #[error("class ({u}, {v}) repeats color {color}")]
    DuplicateInClass { u: VertexId, v: VertexId, color: u64 },
    #[error("vertex {v} sees color {color} twice")]
    VertexClash { v: VertexId, color: u64 },
}

/// Full diagnosis behind [`verify_coloring`].
pub fn verify_coloring_detail(
    g: &Multigraph,
    k: u64,
    coloring: &Coloring,
) -> Result<Result<(), VerifyFailure>, ShapeMismatch> {
    let graph_keys: BTreeSet<(VertexId, VertexId)> =
        g.classes().iter().map(|c| (c.u, c.v)).collect();
    let coloring_keys: BTreeSet<(VertexId, VertexId)> =
        coloring.classes.keys().copied().collect();
    if graph_keys != coloring_keys {
        let missing: Vec<_> = graph_keys.difference(&coloring_keys).collect();
        let extra: Vec<_> = coloring_keys.difference(&graph_keys).collect();
        return Err(ShapeMismatch(format!("missing {missing:?}, unexpected {extra:?}")));
    }
    let mut seen: HashMap<VertexId, ColorSet> = HashMap::new();
    for class in g.classes() {
        let (u, v) = (class.u, class.v);
        let colors = &coloring.classes[&(u, v)];
        if colors.len() as u64 != class.mult {
            return Ok(Err(VerifyFailure::WrongCount {
                u,
                v,
                got: colors.len(),
                want: class.mult,
            }));
        }
        let mut in_class = ColorSet::for_palette(k);
        for &color in colors {
            if color < 1 || color > k {
                return Ok(Err(VerifyFailure::ColorOutOfRange { u, v, color, k }));
            }
            if !in_class.insert(color) {
                return Ok(Err(VerifyFailure::DuplicateInClass { u, v, color }));
            }
            for end in [u, v] {
                if !seen
                    .entry(end)
                    .or_insert_with(|| ColorSet::for_palette(k))
                    .insert(color)
                {
                    return Ok(Err(VerifyFailure::VertexClash { v: end, color }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Whether `coloring` is a proper k-edge-coloring of `g`: every class
/// carries exactly its multiplicity of distinct colors in `1..=k`, and no
/// vertex sees a color twice. Structural disagreement about which classes
/// exist is an error rather than a false.
pub fn verify_coloring(
    g: &Multigraph,
    k: u64,
    coloring: &Coloring,
) -> Result<bool, ShapeMismatch> {
    Ok(verify_coloring_detail(g, k, coloring)?.is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(k: u64, colors: &[u64]) -> ColorSet {
        ColorSet::from_colors(k, colors.iter().copied())
    }

    #[test]
    fn color_set_variants_agree() {
        for k in [8, 300] {
            let mut s = ColorSet::for_palette(k);
            assert!(matches!(&s, ColorSet::Bits { .. }) == (k == 8));
            assert!(s.insert(3) && s.insert(7) && s.insert(1));
            assert!(!s.insert(3));
            assert_eq!(s.len(), 3);
            assert!(s.contains(7) && !s.contains(2));
            assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 7]);
            assert!(s.remove(7) && !s.remove(7));
            assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3]);
            let other = set(k, &[3, 4]);
            assert_eq!(s.union_len(&other), 3);
            assert_eq!(ColorSet::hub_len(&set(k, &[5]), &s, &other), 2);
        }
    }

    #[test]
    fn two_fan_follows_the_greedy() {
        let e = ColorSet::for_palette(3);
        assert_eq!(two_fan_extend(3, 1, 1, &e, &e, &e), Ok((vec![1], vec![2])));
        assert_eq!(
            two_fan_extend(3, 1, 1, &e, &set(3, &[1, 2]), &set(3, &[1])),
            Ok((vec![3], vec![2]))
        );
        assert_eq!(
            two_fan_extend(3, 1, 1, &set(3, &[1]), &set(3, &[2]), &set(3, &[2])),
            Err(ExtendError::Joint { lhs: 4, k: 3 })
        );
        assert_eq!(
            ExtendError::Joint { lhs: 4, k: 3 }.to_string(),
            "third inequality violated: m1 + m2 + |S0 ∪ (S1 ∩ S2)| = 4 > k = 3"
        );
    }

    #[test]
    fn two_fan_prefers_the_second_seen_set() {
        // Taking 2 and 4 for group one steers group two clear of them.
        let (c1, c2) = two_fan_extend(
            5,
            2,
            2,
            &ColorSet::for_palette(5),
            &ColorSet::for_palette(5),
            &set(5, &[2, 4]),
        )
        .unwrap();
        assert_eq!((c1, c2), (vec![2, 4], vec![1, 3]));
    }

    #[test]
    fn two_fan_reports_the_first_failing_inequality() {
        let e = ColorSet::for_palette(4);
        assert_eq!(
            two_fan_extend(4, 3, 0, &e, &set(4, &[1, 2]), &e),
            Err(ExtendError::Side1 { lhs: 5, k: 4 })
        );
        assert_eq!(
            two_fan_extend(4, 0, 2, &set(4, &[1, 2, 3]), &e, &e),
            Err(ExtendError::Side2 { lhs: 5, k: 4 })
        );
    }

    #[test]
    fn twin_transfer_selection_prefers_unseen() {
        let avoid = set(9, &[1, 2, 4]);
        assert_eq!(prefer_outside(&[4, 2, 3, 1], &avoid, 2), vec![1, 3]);
        assert_eq!(prefer_outside(&[4, 2, 1], &avoid, 3), vec![1, 2, 4]);
        assert_eq!(prefer_outside(&[5, 6], &avoid, 1), vec![5]);
    }

    fn coloring_of(g: &Multigraph, k: u64) -> Coloring {
        let coloring = find_coloring(g, k).unwrap().unwrap();
        assert_eq!(verify_coloring(g, k, &coloring), Ok(true));
        coloring
    }

    #[test]
    fn replay_single_class_uses_the_low_colors() {
        let g = Multigraph::build(2, [(0, 1, 9)]).unwrap();
        let coloring = coloring_of(&g, 9);
        assert_eq!(coloring.class(0, 1), Some(&[1, 2, 3, 4, 5, 6, 7, 8, 9][..]));
    }

    #[test]
    fn replay_triangle_with_doubled_edge() {
        let g = Multigraph::build(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(find_coloring(&g, 3), Ok(None));
        let coloring = coloring_of(&g, 4);
        assert_eq!(coloring.class(0, 1), Some(&[3, 4][..]));
        assert_eq!(coloring.class(0, 2), Some(&[2][..]));
        assert_eq!(coloring.class(1, 2), Some(&[1][..]));
    }

    #[test]
    fn replay_tripled_five_cycle_through_the_big_fan() {
        let g = Multigraph::build(
            5,
            [(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (0, 4, 3)],
        )
        .unwrap();
        assert_eq!(find_coloring(&g, 7), Ok(None));
        let coloring = coloring_of(&g, 8);
        assert_eq!(coloring.class(0, 1), Some(&[3, 7, 8][..]));
        assert_eq!(coloring.class(0, 4), Some(&[4, 5, 6][..]));
        assert_eq!(coloring.class(1, 2), Some(&[1, 2, 4][..]));
        assert_eq!(coloring.class(2, 3), Some(&[5, 6, 7][..]));
        assert_eq!(coloring.class(3, 4), Some(&[1, 2, 3][..]));
    }

    #[test]
    fn replay_twin_pair_moves_colors_across() {
        let g =
            Multigraph::build(4, [(0, 2, 2), (0, 3, 1), (1, 2, 2), (1, 3, 3)]).unwrap();
        assert_eq!(find_coloring(&g, 4), Ok(None));
        let coloring = coloring_of(&g, 5);
        assert_eq!(coloring.class(0, 2), Some(&[3, 4][..]));
        assert_eq!(coloring.class(0, 3), Some(&[1][..]));
        assert_eq!(coloring.class(1, 2), Some(&[1, 2][..]));
        assert_eq!(coloring.class(1, 3), Some(&[3, 4, 5][..]));
    }

    #[test]
    fn replay_small_fans_and_plain_cycles() {
        let g = Multigraph::build(
            5,
            [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)],
        )
        .unwrap();
        coloring_of(&g, 5);
        coloring_of(&g, 3);
        assert_eq!(find_coloring(&g, 2), Ok(None));
        let k4 = Multigraph::build(
            4,
            [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        )
        .unwrap();
        assert_eq!(find_coloring(&k4, 5), Err(NotSeriesParallelError));
    }

    #[test]
    fn verification_separates_shape_from_propriety() {
        let g = Multigraph::build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let mut classes = BTreeMap::new();
        classes.insert((0, 1), vec![1]);
        classes.insert((0, 2), vec![2]);
        classes.insert((1, 2), vec![3]);
        let good = Coloring { k: 3, classes: classes.clone() };
        assert_eq!(verify_coloring(&g, 3, &good), Ok(true));

        let mut shared = classes.clone();
        shared.insert((1, 2), vec![1]);
        let clash = Coloring { k: 3, classes: shared };
        assert_eq!(verify_coloring(&g, 3, &clash), Ok(false));
        assert_eq!(
            verify_coloring_detail(&g, 3, &clash),
            Ok(Err(VerifyFailure::VertexClash { v: 1, color: 1 }))
        );

        let doubled = Multigraph::build(2, [(0, 1, 2)]).unwrap();
        let mut dup = BTreeMap::new();
        dup.insert((0, 1), vec![1, 1]);
        assert_eq!(
            verify_coloring_detail(&doubled, 3, &Coloring { k: 3, classes: dup }),
            Ok(Err(VerifyFailure::DuplicateInClass { u: 0, v: 1, color: 1 }))
        );

        let mut missing = classes.clone();
        missing.remove(&(0, 1));
        assert!(matches!(
            verify_coloring(&g, 3, &Coloring { k: 3, classes: missing }),
            Err(ShapeMismatch(_))
        ));

        let mut high = classes;
        high.insert((0, 1), vec![9]);
        assert_eq!(
            verify_coloring_detail(&g, 3, &Coloring { k: 3, classes: high }),
            Ok(Err(VerifyFailure::ColorOutOfRange { u: 0, v: 1, color: 9, k: 3 }))
        );
    }
}
