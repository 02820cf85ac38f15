//! Fillings of closed-path words, the isoperimetric constant, Cayley balls,
//! and desk-scale checks of the shortest relation and the isometric
//! embedding of the graph into the Cayley graph.

use std::collections::HashMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cancel::Certificate;
use crate::dehn::{Dehn, Verdict};
use crate::error::{Error, Result};
use crate::lgraph::{LabelledGraph, VertexId};
use crate::words::{for_each_reduced_word, reduced_word_count, Letter, Word};

/// Longest tile `3 * diameter`.
pub fn relator_bound(g: &LabelledGraph) -> usize {
    3 * g.diameter()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub word: Word,
    pub start: VertexId,
}

/// One level of the recursion: `w = prefix . rest`, tile `prefix . connector^-1`,
/// remainder `reduce(connector . rest)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub prefix: Word,
    pub connector: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillingCertificate {
    pub start: VertexId,
    pub word: Word,
    pub tiles: Vec<Tile>,
    pub splits: Vec<Split>,
    pub tile_count: usize,
}

/// Fans a reduced closed-path word into tiles of length at most
/// `3 * diameter`, peeling off a `2 * diameter` prefix at each level.
pub fn fill(g: &LabelledGraph, start: VertexId, w: &Word) -> Result<FillingCertificate> {
    if !g.is_folded() {
        return Err(Error::NotFolded);
    }
    let text = || g.alphabet().format_word(w);
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !w.is_reduced() {
        return Err(Error::NotReduced(text()));
    }
    match g.endpoint(start, w) {
        None => return Err(Error::NoPath(text())),
        Some(end) if end != start => return Err(Error::NotClosed(text())),
        Some(_) => {}
    }
    let diameter = g.diameter();
    if diameter == 0 {
        return Err(Error::DegenerateDiameter);
    }
    let prefix_len = 2 * diameter;
    let mut tiles = Vec::new();
    let mut splits = Vec::new();
    let mut current = w.clone();
    while current.len() > prefix_len {
        let prefix = current.slice(0, prefix_len);
        let rest = current.slice(prefix_len, current.len() - prefix_len);
        let mid = g.endpoint(start, &prefix).expect("prefix of a lifted word lifts");
        let connector = g.shortest_path_word(start, mid);
        tiles.push(Tile { word: prefix.concat(&connector.invert()), start });
        current = connector.concat(&rest).free_reduce();
        splits.push(Split { prefix, connector });
    }
    if !current.is_empty() {
        tiles.push(Tile { word: current, start });
    }
    let tile_count = tiles.len();
    Ok(FillingCertificate { start, word: w.clone(), tiles, splits, tile_count })
}

/// Re-checks a filling certificate by walking the graph; returns the first
/// violated condition.
pub fn check_filling(g: &LabelledGraph, cert: &FillingCertificate) -> std::result::Result<(), String> {
    let n = g.vertex_count();
    if !g.is_folded() {
        return Err("graph is not folded".into());
    }
    if cert.start >= n {
        return Err("start vertex out of range".into());
    }
    let w = &cert.word;
    if w.is_empty() || !w.is_reduced() {
        return Err("boundary word must be nonempty and reduced".into());
    }
    if g.endpoint(cert.start, w) != Some(cert.start) {
        return Err("boundary word does not read a closed path".into());
    }
    let diameter = g.diameter();
    let prefix_len = 2 * diameter;
    if diameter == 0 {
        return Err("diameter 0".into());
    }
    if cert.tile_count != cert.tiles.len() {
        return Err("tile count does not match the tiles".into());
    }
    for (i, tile) in cert.tiles.iter().enumerate() {
        if tile.start != cert.start {
            return Err(format!("tile {i} is not based at the boundary start"));
        }
        if tile.word.is_empty() || tile.word.len() > 3 * diameter {
            return Err(format!("tile {i} has length {} outside 1..=3*diameter", tile.word.len()));
        }
        if g.endpoint(tile.start, &tile.word) != Some(tile.start) {
            return Err(format!("tile {i} does not read a closed path"));
        }
    }
    let mut current = w.clone();
    for (i, split) in cert.splits.iter().enumerate() {
        if current.len() <= prefix_len {
            return Err(format!("split {i} applied to a word of length at most 2*diameter"));
        }
        if split.prefix.len() != prefix_len || current.slice(0, prefix_len) != split.prefix {
            return Err(format!("split {i} prefix is not the first 2*diameter letters"));
        }
        if split.connector.len() > diameter {
            return Err(format!("split {i} connector longer than the diameter"));
        }
        if g.endpoint(cert.start, &split.connector) != g.endpoint(cert.start, &split.prefix) {
            return Err(format!("split {i} connector does not join the prefix endpoints"));
        }
        let tile = split.prefix.concat(&split.connector.invert());
        if cert.tiles.get(i).map(|t| &t.word) != Some(&tile) {
            return Err(format!("tile {i} is not prefix . connector^-1"));
        }
        let rest = current.slice(prefix_len, current.len() - prefix_len);
        current = split.connector.concat(&rest).free_reduce();
    }
    let expected = cert.splits.len() + usize::from(!current.is_empty());
    if cert.tiles.len() != expected {
        return Err(format!("expected {expected} tiles, found {}", cert.tiles.len()));
    }
    if !current.is_empty() {
        if current.len() > prefix_len {
            return Err("recursion stopped early".into());
        }
        if cert.tiles.last().map(|t| &t.word) != Some(&current) {
            return Err("last tile is not the final remainder".into());
        }
    }
    if let Some(girth) = g.girth() {
        if girth * cert.tile_count > 3 * w.len() {
            return Err(format!("tile count {} exceeds 3|w|/g = 3*{}/{}", cert.tile_count, w.len(), girth));
        }
    }
    Ok(())
}

pub fn verify_filling(g: &LabelledGraph, cert: &FillingCertificate) -> bool {
    check_filling(g, cert).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileJson {
    pub word: String,
    pub start: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitJson {
    pub prefix: String,
    pub connector: String,
}

/// Serialized filling certificate; words use the alphabet's text notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingCertificateJson {
    pub start: String,
    pub word: String,
    pub tiles: Vec<TileJson>,
    pub splits: Vec<SplitJson>,
    pub tile_count: usize,
}

impl FillingCertificate {
    pub fn to_json(&self, g: &LabelledGraph) -> FillingCertificateJson {
        let s = g.alphabet();
        FillingCertificateJson {
            start: g.vertex_name(self.start).to_string(),
            word: s.format_word(&self.word),
            tiles: self
                .tiles
                .iter()
                .map(|t| TileJson { word: s.format_word(&t.word), start: g.vertex_name(t.start).to_string() })
                .collect(),
            splits: self
                .splits
                .iter()
                .map(|sp| SplitJson { prefix: s.format_word(&sp.prefix), connector: s.format_word(&sp.connector) })
                .collect(),
            tile_count: self.tile_count,
        }
    }

    pub fn from_json(g: &LabelledGraph, json: &FillingCertificateJson) -> Result<Self> {
        let s = g.alphabet();
        Ok(FillingCertificate {
            start: g.vertex(&json.start)?,
            word: s.parse_word(&json.word)?,
            tiles: json
                .tiles
                .iter()
                .map(|t| Ok(Tile { word: s.parse_word(&t.word)?, start: g.vertex(&t.start)? }))
                .collect::<Result<_>>()?,
            splits: json
                .splits
                .iter()
                .map(|sp| Ok(Split { prefix: s.parse_word(&sp.prefix)?, connector: s.parse_word(&sp.connector)? }))
                .collect::<Result<_>>()?,
            tile_count: json.tile_count,
        })
    }
}

/// `(g - 6 Lambda) / 3`, exact.
pub fn isoperimetric_constant(cert: &Certificate) -> Result<Ratio<i64>> {
    if !cert.passed() {
        return Err(Error::NotCertified);
    }
    let girth = cert.girth.ok_or(Error::NoCycles)? as i64;
    let lambda = cert.lambda_len().ok_or(Error::NotCertified)? as i64;
    Ok(Ratio::new(girth - 6 * lambda, 3))
}

pub const MAX_BALL_RADIUS: usize = 16;
pub const DEFAULT_BALL_BUDGET: usize = 20_000;

/// Ball in the Cayley graph around the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyBall {
    pub radius: usize,
    /// Canonical representatives, in length-then-letter order.
    pub elements: Vec<Word>,
    /// `level_starts[k]` is the index of the first element at distance `k`.
    pub level_starts: Vec<usize>,
    /// `(i, s, j)`: `elements[i] * s = elements[j]`.
    pub edges: Vec<(usize, Letter, usize)>,
}

impl CayleyBall {
    pub fn level(&self, k: usize) -> &[Word] {
        let end = self.level_starts.get(k + 1).copied().unwrap_or(self.elements.len());
        &self.elements[self.level_starts[k]..end]
    }

    /// Number of elements within distance `k`, for `k = 0..=radius`.
    pub fn sizes(&self) -> Vec<usize> {
        (0..=self.radius)
            .map(|k| self.level_starts.get(k + 1).copied().unwrap_or(self.elements.len()))
            .collect()
    }
}

/// Image of the group in its abelianization `Z^m / L`, with `L` spanned by
/// the exponent sums of the cycle words, kept in Hermite form so every class
/// has one canonical vector. Equal elements have equal keys.
struct Abelianization {
    rank: usize,
    /// Echelon rows `(pivot column, row)` with positive pivots.
    rows: Vec<(usize, Vec<i64>)>,
}

impl Abelianization {
    fn new(g: &LabelledGraph) -> Self {
        let rank = g.alphabet().rank();
        let mut pending: Vec<Vec<i64>> =
            g.spanning_tree().cycle_words(g).iter().map(|w| w.exponent_sums(rank)).collect();
        let mut rows = Vec::new();
        for col in 0..rank {
            loop {
                pending.retain(|r| r.iter().any(|&x| x != 0));
                let Some(p) = (0..pending.len())
                    .filter(|&i| pending[i][col] != 0)
                    .min_by_key(|&i| pending[i][col].abs())
                else {
                    break;
                };
                let pivot = pending.swap_remove(p);
                let mut done = true;
                for r in pending.iter_mut().filter(|r| r[col] != 0) {
                    let q = r[col] / pivot[col];
                    for (x, y) in r.iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                    done &= r[col] == 0;
                }
                if done {
                    let sign = pivot[col].signum();
                    rows.push((col, pivot.iter().map(|x| x * sign).collect()));
                    break;
                }
                pending.push(pivot);
            }
        }
        Abelianization { rank, rows }
    }

    fn key(&self, w: &Word) -> Vec<i64> {
        let mut x = w.exponent_sums(self.rank);
        for (col, row) in &self.rows {
            let q = x[*col].div_euclid(row[*col]);
            for (a, b) in x.iter_mut().zip(row) {
                *a -= q * b;
            }
        }
        x
    }
}

/// Equality test for ball construction: abelian images first, then the
/// solver on quotients long enough to possibly be relations.
struct Comparer<'a, 'g> {
    dehn: &'a Dehn<'g>,
    girth: usize,
    abelian: Abelianization,
}

impl<'a, 'g> Comparer<'a, 'g> {
    fn new(dehn: &'a Dehn<'g>) -> Self {
        let g = dehn.graph();
        Comparer { dehn, girth: g.girth().unwrap_or(usize::MAX), abelian: Abelianization::new(g) }
    }

    /// `u = v` for elements already known to share an abelian key.
    fn same(&self, u: &Word, v: &Word) -> bool {
        let q = u.concat(&v.invert()).free_reduce();
        // Under the certificate no nonempty reduced word shorter than the girth
        // is trivial.
        q.is_empty() || (q.len() >= self.girth && self.dehn.is_trivial(&q).is_trivial())
    }
}

/// Breadth-first closure of the identity under right multiplication by
/// every letter, deduplicated with the Dehn solver.
pub fn cayley_ball(dehn: &Dehn<'_>, radius: usize, budget: usize) -> Result<CayleyBall> {
    if !dehn.is_certified() {
        return Err(Error::NotCertified);
    }
    if radius > MAX_BALL_RADIUS {
        return Err(Error::CapExceeded { what: "ball radius", requested: radius, cap: MAX_BALL_RADIUS });
    }
    let cmp = Comparer::new(dehn);
    let letters: Vec<Letter> = dehn.graph().alphabet().letters().collect();
    let mut elements = vec![Word::empty()];
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    buckets.insert(cmp.abelian.key(&elements[0]), vec![0]);
    let mut level_starts = vec![0];
    let mut edges = Vec::new();
    // First element at index >= `from` equal to `candidate`, in index order.
    let find = |elements: &[Word], buckets: &HashMap<Vec<i64>, Vec<usize>>, key: &[i64], candidate: &Word, from: usize| {
        buckets
            .get(key)
            .and_then(|b| b.iter().copied().filter(|&j| j >= from).find(|&j| cmp.same(candidate, &elements[j])))
    };
    for k in 0..radius {
        let (prev_start, cur_start) = (if k == 0 { 0 } else { level_starts[k - 1] }, level_starts[k]);
        let cur_end = elements.len();
        level_starts.push(cur_end);
        for i in cur_start..cur_end {
            for &s in &letters {
                let candidate = elements[i].concat(&Word(vec![s])).free_reduce();
                let key = cmp.abelian.key(&candidate);
                let j = match find(&elements, &buckets, &key, &candidate, prev_start) {
                    Some(j) => j,
                    None => {
                        if elements.len() >= budget {
                            return Err(Error::CapExceeded { what: "ball elements", requested: elements.len() + 1, cap: budget });
                        }
                        elements.push(candidate);
                        buckets.entry(key).or_default().push(elements.len() - 1);
                        elements.len() - 1
                    }
                };
                edges.push((i, s, j));
            }
        }
    }
    // Edges within the outermost level and back to the previous one.
    if radius > 0 {
        let last = level_starts[radius];
        let prev = level_starts[radius - 1];
        for i in last..elements.len() {
            for &s in &letters {
                let candidate = elements[i].concat(&Word(vec![s])).free_reduce();
                let key = cmp.abelian.key(&candidate);
                if let Some(j) = find(&elements, &buckets, &key, &candidate, prev) {
                    edges.push((i, s, j));
                }
            }
        }
    }
    Ok(CayleyBall { radius, elements, level_starts, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortestRelationReport {
    pub holds: bool,
    pub mode: CheckMode,
    pub girth: usize,
    pub words_checked: u64,
    pub girth_word: String,
    pub girth_word_trivial: bool,
    pub counterexample: Option<String>,
}

/// Every nonempty reduced word shorter than the girth is nontrivial and a
/// girth cycle reads a trivial word. Exhaustive when the number of words fits
/// in `budget`, otherwise `budget` seeded samples.
pub fn verify_shortest_relation(dehn: &Dehn<'_>, budget: u64, seed: u64) -> Result<ShortestRelationReport> {
    if !dehn.is_certified() {
        return Err(Error::NotCertified);
    }
    let g = dehn.graph();
    let cycle = g.girth_cycle().ok_or(Error::NoCycles)?;
    let girth = cycle.len();
    let letters = g.alphabet().letter_count();
    let girth_word = g.path_word(&cycle);
    let girth_word_trivial = dehn.is_trivial(&girth_word).is_trivial();

    let mut counterexample = None;
    let mut checked = 0u64;
    let total = reduced_word_count(letters, girth - 1);
    let mode = if total <= budget as u128 {
        for_each_reduced_word(letters, girth - 1, |w| {
            if counterexample.is_some() {
                return;
            }
            checked += 1;
            if !matches!(dehn.is_trivial(w), Verdict::Nontrivial(_)) {
                counterexample = Some(w.clone());
            }
        });
        CheckMode::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let len = rng.gen_range(1..girth);
            let w = random_reduced_word(&mut rng, letters, len);
            checked += 1;
            if !matches!(dehn.is_trivial(&w), Verdict::Nontrivial(_)) {
                counterexample = Some(w);
                break;
            }
        }
        CheckMode::Sampled
    };
    Ok(ShortestRelationReport {
        holds: counterexample.is_none() && girth_word_trivial,
        mode,
        girth,
        words_checked: checked,
        girth_word: g.alphabet().format_word(&girth_word),
        girth_word_trivial,
        counterexample: counterexample.map(|w| g.alphabet().format_word(&w)),
    })
}

pub fn random_reduced_word<R: Rng>(rng: &mut R, letter_count: usize, len: usize) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = Letter::from_index(rng.gen_range(0..letter_count));
        if out.last() != Some(&l.inverse()) {
            out.push(l);
        }
    }
    Word(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingViolation {
    pub from: String,
    pub to: String,
    pub graph_distance: usize,
    /// A shorter word equal to the path word, if one was found.
    pub shortcut: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub holds: bool,
    pub radius: usize,
    pub pairs_checked: usize,
    pub ball_size: usize,
    pub violation: Option<EmbeddingViolation>,
}

/// Checks `d_Cayley(phi u, phi v) = d_graph(u, v)` for every pair of vertices
/// at graph distance at most `radius`, where `phi` sends a vertex to the tree
/// word from the root.
pub fn verify_embedding(dehn: &Dehn<'_>, radius: usize, budget: usize) -> Result<EmbeddingReport> {
    if !dehn.is_certified() {
        return Err(Error::NotCertified);
    }
    let g = dehn.graph();
    let family = g.spanning_tree();
    let ball = cayley_ball(dehn, radius.saturating_sub(1), budget)?;
    let cmp = Comparer::new(dehn);
    let name = |v: VertexId| g.vertex_name(v).to_string();
    let mut pairs = 0;
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            let d = g.distance(u, v);
            if d > radius {
                continue;
            }
            pairs += 1;
            let image = family.base_words[u].invert().concat(&family.base_words[v]).free_reduce();
            let path = g.shortest_path_word(u, v);
            let violation = |shortcut: Option<&Word>| EmbeddingViolation {
                from: name(u),
                to: name(v),
                graph_distance: d,
                shortcut: shortcut.map(|w| g.alphabet().format_word(w)),
            };
            // d_Cayley <= d_graph: the image is represented by the path word.
            if !dehn.equal(&image, &path).is_trivial() {
                return Ok(EmbeddingReport {
                    holds: false,
                    radius,
                    pairs_checked: pairs,
                    ball_size: ball.elements.len(),
                    violation: Some(violation(None)),
                });
            }
            let shorter = ball.level_starts.get(d).copied().unwrap_or(ball.elements.len());
            let key = cmp.abelian.key(&image);
            if let Some(y) = ball.elements[..shorter]
                .iter()
                .find(|y| cmp.abelian.key(y) == key && dehn.equal(&image, y).is_trivial())
            {
                return Ok(EmbeddingReport {
                    holds: false,
                    radius,
                    pairs_checked: pairs,
                    ball_size: ball.elements.len(),
                    violation: Some(violation(Some(y))),
                });
            }
        }
    }
    Ok(EmbeddingReport { holds: true, radius, pairs_checked: pairs, ball_size: ball.elements.len(), violation: None })
}
