//! Closed link diagrams as planar 4-valent maps.
//!
//! Crossing `c` owns slots `4c..4c+4` in counterclockwise order. Slots 0
//! and 2 carry the under-strand, slots 1 and 3 the over-strand. `partner`
//! pairs each slot with the slot at the other end of its arc.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    partner: Vec<usize>,
    free_loops: usize,
}

/// Which pair of corners a smoothing joins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// Joins slots 0-1 and 2-3.
    A,
    /// Joins slots 0-3 and 1-2.
    B,
}

impl Resolution {
    fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Resolution::A => [(0, 1), (2, 3)],
            Resolution::B => [(0, 3), (1, 2)],
        }
    }
}

/// Face structure plus a checkerboard colouring.
#[derive(Clone, Debug)]
pub struct Faces {
    /// `corner[4c + k]` is the face between slots `k` and `k+1` of `c`.
    pub corner: Vec<usize>,
    pub count: usize,
    /// Colour of each face; faces across an arc differ.
    pub colour: Vec<u8>,
}

impl PlanarDiagram {
    pub fn from_partner(partner: Vec<usize>, free_loops: usize) -> Result<Self> {
        if !partner.len().is_multiple_of(4) {
            return Err(Error::MalformedPd("slot count not a multiple of 4".into()));
        }
        for (s, &p) in partner.iter().enumerate() {
            if p >= partner.len() || partner[p] != s || p == s {
                return Err(Error::MalformedPd(format!("slot {s} has no valid partner")));
            }
        }
        Ok(Self {
            partner,
            free_loops,
        })
    }

    pub fn unknot() -> Self {
        Self {
            partner: Vec::new(),
            free_loops: 1,
        }
    }

    /// Builds from tuples of arc labels, each tuple counterclockwise with
    /// the under-strand at positions 0 and 2. Every label must occur twice.
    pub fn from_labels(crossings: &[[u64; 4]], free_loops: usize) -> Result<Self> {
        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut partner = vec![usize::MAX; crossings.len() * 4];
        for (c, x) in crossings.iter().enumerate() {
            for (k, &label) in x.iter().enumerate() {
                let slot = 4 * c + k;
                match seen.remove(&label) {
                    Some(other) => {
                        partner[slot] = other;
                        partner[other] = slot;
                    }
                    None => {
                        seen.insert(label, slot);
                    }
                }
            }
        }
        if let Some(label) = seen.keys().next() {
            return Err(Error::MalformedPd(format!("label {label} occurs once")));
        }
        Self::from_partner(partner, free_loops)
    }

    pub fn crossing_count(&self) -> usize {
        self.partner.len() / 4
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn partner(&self, slot: usize) -> usize {
        self.partner[slot]
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.partner.len()];
        let mut count = self.free_loops;
        for start in 0..self.partner.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut s = start;
            loop {
                seen[s] = true;
                let t = self.partner[s];
                seen[t] = true;
                s = strand_next(t);
                if s == start {
                    break;
                }
            }
        }
        count
    }

    /// True when the projection is one connected piece (an empty diagram
    /// counts only with a single loop).
    pub fn is_connected(&self) -> bool {
        let n = self.crossing_count();
        if n == 0 {
            return self.free_loops == 1;
        }
        if self.free_loops > 0 {
            return false;
        }
        self.crossing_blocks().iter().all(|&b| b == 0)
    }

    /// Connected-component index of each crossing.
    fn crossing_blocks(&self) -> Vec<usize> {
        let n = self.crossing_count();
        let mut block = vec![usize::MAX; n];
        let mut next = 0;
        for c0 in 0..n {
            if block[c0] != usize::MAX {
                continue;
            }
            let mut stack = vec![c0];
            block[c0] = next;
            while let Some(c) = stack.pop() {
                for k in 0..4 {
                    let d = self.partner[4 * c + k] / 4;
                    if block[d] == usize::MAX {
                        block[d] = next;
                        stack.push(d);
                    }
                }
            }
            next += 1;
        }
        block
    }

    pub fn faces(&self) -> Faces {
        let m = self.partner.len();
        let mut corner = vec![usize::MAX; m];
        let mut count = 0;
        for start in 0..m {
            if corner[start] != usize::MAX {
                continue;
            }
            let mut k = start;
            while corner[k] == usize::MAX {
                corner[k] = count;
                k = self.partner[rotate(k, 1)];
            }
            count += 1;
        }
        // colour faces so that the two sides of every arc differ
        let mut colour = vec![u8::MAX; count];
        let mut adjacency = vec![Vec::new(); count];
        for s in 0..m {
            let (f, g) = (corner[s], corner[rotate(s, 3)]);
            adjacency[f].push(g);
            adjacency[g].push(f);
        }
        for f0 in 0..count {
            if colour[f0] != u8::MAX {
                continue;
            }
            colour[f0] = 0;
            let mut stack = vec![f0];
            while let Some(f) = stack.pop() {
                for &g in &adjacency[f] {
                    if colour[g] == u8::MAX {
                        colour[g] = 1 - colour[f];
                        stack.push(g);
                    }
                }
            }
        }
        Faces {
            corner,
            count,
            colour,
        }
    }

    /// Checkerboard type of every crossing relative to colour-0 shading:
    /// `+1` when the shaded corners are 0 and 2, `-1` otherwise.
    pub fn crossing_types(&self, faces: &Faces) -> Vec<i8> {
        (0..self.crossing_count())
            .map(|c| {
                if faces.colour[faces.corner[4 * c]] == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// A connected diagram is alternating iff all crossings share a type.
    pub fn is_alternating(&self) -> bool {
        let faces = self.faces();
        let types = self.crossing_types(&faces);
        types.windows(2).all(|w| w[0] == w[1])
    }

    /// Replaces the crossings in `removed` by the given per-crossing slot
    /// joins (local slot pairs) and reconnects everything else.
    fn splice(&self, removed: &[(usize, [(usize, usize); 2])]) -> Self {
        let m = self.partner.len();
        let mut join = vec![usize::MAX; m];
        for &(c, pairs) in removed {
            for (a, b) in pairs {
                join[4 * c + a] = 4 * c + b;
                join[4 * c + b] = 4 * c + a;
            }
        }
        let is_removed = |s: usize| join[s] != usize::MAX;
        let mut new_index = vec![usize::MAX; self.crossing_count()];
        let mut kept = 0;
        for (c, idx) in new_index.iter_mut().enumerate() {
            if !is_removed(4 * c) {
                *idx = kept;
                kept += 1;
            }
        }
        let relabel = |s: usize| 4 * new_index[s / 4] + s % 4;
        let mut partner = vec![usize::MAX; kept * 4];
        let mut visited = vec![false; m];
        for s in 0..m {
            if is_removed(s) {
                continue;
            }
            let mut t = self.partner[s];
            while is_removed(t) {
                visited[t] = true;
                let u = join[t];
                visited[u] = true;
                t = self.partner[u];
            }
            partner[relabel(s)] = relabel(t);
        }
        let mut free_loops = self.free_loops;
        for s in 0..m {
            if !is_removed(s) || visited[s] {
                continue;
            }
            free_loops += 1;
            let mut t = s;
            loop {
                visited[t] = true;
                let u = join[t];
                visited[u] = true;
                t = self.partner[u];
                if t == s {
                    break;
                }
            }
        }
        Self {
            partner,
            free_loops,
        }
    }

    pub fn smooth(&self, crossing: usize, resolution: Resolution) -> Result<Self> {
        if crossing >= self.crossing_count() {
            return Err(Error::InvalidLocator(crossing));
        }
        Ok(self.splice(&[(crossing, resolution.pairs())]))
    }

    /// Flips every crossing.
    pub fn mirror(&self) -> Self {
        let m = self.partner.len();
        let shift = |s: usize| 4 * (s / 4) + (s % 4 + 3) % 4;
        let mut partner = vec![0; m];
        for s in 0..m {
            partner[shift(s)] = shift(self.partner[s]);
        }
        Self {
            partner,
            free_loops: self.free_loops,
        }
    }

    /// Removes one nugatory crossing if there is one.
    fn remove_nugatory(&self, faces: &Faces) -> Option<Self> {
        for c in 0..self.crossing_count() {
            let f = &faces.corner[4 * c..4 * c + 4];
            if f[0] == f[2] || f[1] == f[3] {
                // one smoothing splits the diagram, the other untwists it
                for res in [Resolution::A, Resolution::B] {
                    let s = self.splice(&[(c, res.pairs())]);
                    if s.is_connected() {
                        return Some(s);
                    }
                }
            }
        }
        None
    }

    /// Removes one Reidemeister II bigon if there is one.
    fn remove_bigon(&self, faces: &Faces) -> Option<Self> {
        let types = self.crossing_types(faces);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); faces.count];
        for (slot, &f) in faces.corner.iter().enumerate() {
            members[f].push(slot);
        }
        for corners in members.iter().filter(|v| v.len() == 2) {
            let (c1, c2) = (corners[0] / 4, corners[1] / 4);
            if c1 != c2 && types[c1] != types[c2] {
                let through = [(0, 2), (1, 3)];
                return Some(self.splice(&[(c1, through), (c2, through)]));
            }
        }
        None
    }

    /// Repeatedly strips nugatory crossings and Reidemeister II bigons.
    /// Each step preserves the link type.
    pub fn reduce(&self) -> Self {
        let mut d = self.clone();
        loop {
            if d.crossing_count() == 0 || !d.is_connected() {
                return d;
            }
            let faces = d.faces();
            if let Some(next) = d.remove_nugatory(&faces) {
                d = next;
                continue;
            }
            if let Some(next) = d.remove_bigon(&faces) {
                d = next;
                continue;
            }
            return d;
        }
    }

    /// If the connected diagram is visibly a connected sum, returns both
    /// summands.
    pub fn split_connected_sum(&self) -> Option<(Self, Self)> {
        if self.crossing_count() < 2 || !self.is_connected() {
            return None;
        }
        let faces = self.faces();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for s in 0..self.partner.len() {
            let t = self.partner[s];
            if t < s {
                continue;
            }
            let (f, g) = (faces.corner[s], faces.corner[rotate(s, 3)]);
            if f == g {
                continue;
            }
            let key = (f.min(g), f.max(g));
            if let Some(&s0) = seen.get(&key) {
                return Some(self.cut_pair(s0, s));
            }
            seen.insert(key, s);
        }
        None
    }

    fn cut_pair(&self, s1: usize, s2: usize) -> (Self, Self) {
        let (t1, t2) = (self.partner[s1], self.partner[s2]);
        let mut partner = self.partner.clone();
        // reconnect so each side closes up: s1 meets whichever end of the
        // second arc lies on its side
        let side = self.sides_without(&[(s1, t1), (s2, t2)]);
        let (a, b) = if side[s1 / 4] == side[s2 / 4] {
            (s2, t2)
        } else {
            (t2, s2)
        };
        partner[s1] = a;
        partner[a] = s1;
        partner[t1] = b;
        partner[b] = t1;
        let joined = Self {
            partner,
            free_loops: 0,
        };
        let blocks = joined.crossing_blocks();
        (joined.extract(&blocks, 0), joined.extract(&blocks, 1))
    }

    fn sides_without(&self, cut: &[(usize, usize)]) -> Vec<usize> {
        let n = self.crossing_count();
        let mut block = vec![usize::MAX; n];
        let mut next = 0;
        for c0 in 0..n {
            if block[c0] != usize::MAX {
                continue;
            }
            block[c0] = next;
            let mut stack = vec![c0];
            while let Some(c) = stack.pop() {
                for k in 0..4 {
                    let s = 4 * c + k;
                    let t = self.partner[s];
                    if cut.iter().any(|&(a, b)| (s, t) == (a, b) || (s, t) == (b, a)) {
                        continue;
                    }
                    if block[t / 4] == usize::MAX {
                        block[t / 4] = next;
                        stack.push(t / 4);
                    }
                }
            }
            next += 1;
        }
        block
    }

    fn extract(&self, blocks: &[usize], which: usize) -> Self {
        let keep: Vec<usize> = (0..self.crossing_count())
            .filter(|&c| blocks[c] == which)
            .collect();
        let mut index = vec![usize::MAX; self.crossing_count()];
        for (i, &c) in keep.iter().enumerate() {
            index[c] = i;
        }
        let mut partner = vec![0; keep.len() * 4];
        for (i, &c) in keep.iter().enumerate() {
            for k in 0..4 {
                let t = self.partner[4 * c + k];
                partner[4 * i + k] = 4 * index[t / 4] + t % 4;
            }
        }
        Self {
            partner,
            free_loops: 0,
        }
    }

    /// Canonical key up to relabelling of crossings and choice of starting
    /// slot (orientation-preserving planar isomorphism).
    pub fn canonical_key(&self) -> Vec<u32> {
        let n = self.crossing_count();
        let blocks = self.crossing_blocks();
        let block_count = blocks.iter().max().map_or(0, |b| b + 1);
        let mut per_block: Vec<Vec<u32>> = (0..block_count)
            .map(|b| {
                (0..4 * n)
                    .filter(|&start| blocks[start / 4] == b)
                    .map(|start| self.code_from(start))
                    .min()
                    .expect("every block has a crossing")
            })
            .collect();
        per_block.sort();
        let mut key = vec![self.free_loops as u32];
        for code in per_block {
            key.push(u32::MAX);
            key.extend(code);
        }
        key
    }

    fn code_from(&self, start: usize) -> Vec<u32> {
        let n = self.crossing_count();
        let mut order = vec![usize::MAX; n];
        let mut base = vec![0usize; n];
        let mut queue = std::collections::VecDeque::new();
        order[start / 4] = 0;
        base[start / 4] = start % 4;
        queue.push_back(start / 4);
        let mut next = 1;
        let mut code = Vec::new();
        while let Some(c) = queue.pop_front() {
            code.push((base[c] % 2) as u32);
            for k in 0..4 {
                let t = self.partner[4 * c + (base[c] + k) % 4];
                let d = t / 4;
                if order[d] == usize::MAX {
                    order[d] = next;
                    base[d] = t % 4;
                    next += 1;
                    queue.push_back(d);
                }
                code.push(order[d] as u32);
                code.push(((t % 4 + 4 - base[d]) % 4) as u32);
            }
        }
        code
    }

    /// Planar-diagram code. Arcs are numbered along each component from 1;
    /// each tuple starts at the incoming under-strand and runs
    /// counterclockwise. Free loops are written as `Loop[k]`.
    pub fn pd_code(&self) -> PdCode {
        let m = self.partner.len();
        // label[s] is the arc number of the arc leaving/entering slot s;
        // incoming[s] marks the slot where the traversal enters a crossing
        let mut label = vec![0u64; m];
        let mut incoming = vec![false; m];
        let mut seen = vec![false; m];
        let mut next = 1u64;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut s = start;
            loop {
                // leave through s, arrive at t
                let t = self.partner[s];
                seen[s] = true;
                seen[t] = true;
                label[s] = next;
                label[t] = next;
                incoming[t] = true;
                let out = strand_next(t);
                if out == start {
                    break;
                }
                next += 1;
                s = out;
            }
            next += 1;
        }
        let mut crossings = Vec::with_capacity(m / 4);
        for c in 0..m / 4 {
            let k0 = if incoming[4 * c] { 0 } else { 2 };
            let tuple = [0, 1, 2, 3].map(|i| label[4 * c + (k0 + i) % 4]);
            crossings.push(tuple);
        }
        PdCode {
            crossings,
            loops: self.free_loops,
        }
    }
}

fn rotate(slot: usize, by: usize) -> usize {
    4 * (slot / 4) + (slot % 4 + by) % 4
}

/// The slot across the crossing along the same strand.
fn strand_next(slot: usize) -> usize {
    rotate(slot, 2)
}

/// Textual planar-diagram code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[u64; 4]>,
    pub loops: usize,
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3]))
            .collect();
        if self.loops > 0 {
            parts.push(format!("Loop[{}]", self.loops));
        }
        write!(f, "PD[{}]", parts.join(", "))
    }
}

impl PdCode {
    pub fn parse(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix("PD[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::MalformedPd("expected PD[...]".into()))?;
        let mut crossings = Vec::new();
        let mut loops = 0;
        let mut rest = body.trim();
        while !rest.is_empty() {
            let (head, tail) = rest
                .split_once(']')
                .ok_or_else(|| Error::MalformedPd("unterminated term".into()))?;
            let head = head.trim().trim_start_matches(',').trim();
            if let Some(args) = head.strip_prefix("X[") {
                let v: Vec<u64> = args
                    .split(',')
                    .map(|x| x.trim().parse::<u64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::MalformedPd(e.to_string()))?;
                let arr: [u64; 4] = v
                    .try_into()
                    .map_err(|_| Error::MalformedPd("X[] needs four labels".into()))?;
                crossings.push(arr);
            } else if let Some(args) = head.strip_prefix("Loop[") {
                loops += args
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::MalformedPd(e.to_string()))?;
            } else {
                return Err(Error::MalformedPd(format!("unknown term {head}")));
            }
            rest = tail.trim().trim_start_matches(',').trim();
        }
        Ok(Self { crossings, loops })
    }

    pub fn to_diagram(&self) -> Result<PlanarDiagram> {
        PlanarDiagram::from_labels(&self.crossings, self.loops)
    }
}
