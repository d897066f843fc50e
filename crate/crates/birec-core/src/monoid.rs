//! Transition monoids, Green's relations and the minimal ideal.
//!
//! Elements are enumerated breadth-first from the identity, letters in
//! alphabet order, so each element's witness is its length-lex least word.
//! R- and L-classes are the strongly connected components of the right and
//! left Cayley graphs; the D-class of an element is its component in the
//! union of both graphs (in a finite monoid D = J).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Dfa, State};
use crate::error::{domain, Error, Result};
use crate::graph;
use crate::linalg::{integer_rank, QMatrix};
use crate::word::{Alphabet, Letter, Word};

/// Default upper bound on enumerated monoid elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// An element of a finite monoid acting on the right.
pub trait Transformation: Clone + Ord {
    /// `self` followed by `other`; `Err` carries a reason the product
    /// leaves the admissible class (used for unambiguity).
    fn then(&self, other: &Self) -> core::result::Result<Self, String>;
    fn rank(&self) -> usize;
    fn is_zero(&self) -> bool {
        self.rank() == 0
    }
}

/// Elements seen as 0/1 matrices: their distinct nonzero rows and columns
/// as state sets. R-classes share column sets, L-classes share row sets.
pub trait SetAction {
    fn row_sets(&self) -> Vec<Vec<State>>;
    fn column_sets(&self) -> Vec<Vec<State>>;
}

/// Partial map on states, `None` meaning undefined.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PartialMap(Vec<Option<u32>>);

impl PartialMap {
    pub fn identity(n: usize) -> Self {
        PartialMap((0..n as u32).map(Some).collect())
    }

    pub fn of_letter(dfa: &Dfa, a: Letter) -> Self {
        PartialMap((0..dfa.num_states()).map(|p| dfa.next(p, a).map(|q| q as u32)).collect())
    }

    pub fn of_word(dfa: &Dfa, w: &[Letter]) -> Self {
        PartialMap((0..dfa.num_states()).map(|p| dfa.run(p, w).map(|q| q as u32)).collect())
    }

    pub fn apply(&self, p: State) -> Option<State> {
        self.0[p].map(|q| q as usize)
    }

    pub fn domain(&self) -> Vec<State> {
        (0..self.0.len()).filter(|&p| self.0[p].is_some()).collect()
    }

    /// Image, sorted.
    pub fn image(&self) -> Vec<State> {
        let mut v: Vec<State> = self.0.iter().flatten().map(|&q| q as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Classes of the kernel on the domain, sorted by least element.
    pub fn kernel(&self) -> Vec<Vec<State>> {
        let mut by_image: BTreeMap<u32, Vec<State>> = BTreeMap::new();
        for (p, q) in self.0.iter().enumerate() {
            if let Some(q) = q {
                by_image.entry(*q).or_default().push(p);
            }
        }
        let mut classes: Vec<Vec<State>> = by_image.into_values().collect();
        classes.sort();
        classes
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }
}

impl Transformation for PartialMap {
    fn then(&self, other: &Self) -> core::result::Result<Self, String> {
        Ok(PartialMap(self.0.iter().map(|q| q.and_then(|q| other.0[q as usize])).collect()))
    }

    fn rank(&self) -> usize {
        self.image().len()
    }
}

impl SetAction for PartialMap {
    fn row_sets(&self) -> Vec<Vec<State>> {
        self.image().into_iter().map(|q| vec![q]).collect()
    }

    fn column_sets(&self) -> Vec<Vec<State>> {
        self.kernel()
    }
}

/// Square 0/1 matrix stored as bit rows.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BoolMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BoolMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BoolMatrix::zeros(n);
        for p in 0..n {
            m.set(p, p);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, p: State, q: State) {
        self.bits[p * self.words + q / 64] |= 1u64 << (q % 64);
    }

    pub fn get(&self, p: State, q: State) -> bool {
        self.bits[p * self.words + q / 64] >> (q % 64) & 1 == 1
    }

    fn row_bits(&self, p: State) -> &[u64] {
        &self.bits[p * self.words..(p + 1) * self.words]
    }

    pub fn row(&self, p: State) -> Vec<State> {
        (0..self.n).filter(|&q| self.get(p, q)).collect()
    }

    pub fn column(&self, q: State) -> Vec<State> {
        (0..self.n).filter(|&p| self.get(p, q)).collect()
    }

    /// Union of the rows indexed by `set` (the image `set·m` as a set).
    pub fn image_of(&self, set: &[State]) -> Vec<State> {
        let mut acc = vec![0u64; self.words];
        for &p in set {
            for (a, b) in acc.iter_mut().zip(self.row_bits(p)) {
                *a |= b;
            }
        }
        (0..self.n).filter(|&q| acc[q / 64] >> (q % 64) & 1 == 1).collect()
    }

    /// Union of the columns indexed by `set` (the preimage `m·set`).
    pub fn preimage_of(&self, set: &[State]) -> Vec<State> {
        (0..self.n).filter(|&p| set.iter().any(|&q| self.get(p, q))).collect()
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.n, self.n);
        for p in 0..self.n {
            for q in 0..self.n {
                if self.get(p, q) {
                    m.set(p, q, crate::Rational::from_integer(1.into()));
                }
            }
        }
        m
    }
}

impl Transformation for BoolMatrix {
    fn then(&self, other: &Self) -> core::result::Result<Self, String> {
        let mut out = BoolMatrix::zeros(self.n);
        for p in 0..self.n {
            let mut acc = vec![0u64; self.words];
            for r in (0..self.n).filter(|&r| self.get(p, r)) {
                for (k, (a, b)) in acc.iter_mut().zip(other.row_bits(r)).enumerate() {
                    if *a & b != 0 {
                        let q = k * 64 + (*a & b).trailing_zeros() as usize;
                        return Err(alloc::format!("two paths from state {} to state {}", p + 1, q + 1));
                    }
                    *a |= b;
                }
            }
            out.bits[p * self.words..(p + 1) * self.words].copy_from_slice(&acc);
        }
        Ok(out)
    }

    fn rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = (0..self.n).map(|p| (0..self.n).map(|q| i64::from(self.get(p, q))).collect()).collect();
        integer_rank(&rows)
    }

    fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }
}

impl SetAction for BoolMatrix {
    fn row_sets(&self) -> Vec<Vec<State>> {
        let mut v: Vec<Vec<State>> = (0..self.n).map(|p| self.row(p)).filter(|r| !r.is_empty()).collect();
        v.sort();
        v.dedup();
        v
    }

    fn column_sets(&self) -> Vec<Vec<State>> {
        let mut v: Vec<Vec<State>> = (0..self.n).map(|q| self.column(q)).filter(|c| !c.is_empty()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl Transformation for QMatrix {
    fn then(&self, other: &Self) -> core::result::Result<Self, String> {
        Ok(self * other)
    }

    fn rank(&self) -> usize {
        QMatrix::rank(self)
    }

    fn is_zero(&self) -> bool {
        QMatrix::is_zero(self)
    }
}

/// A monoid generated by one element per letter, enumerated breadth-first.
#[derive(Clone, Debug)]
pub struct Monoid<E> {
    elements: Vec<E>,
    witnesses: Vec<Word>,
    right: Vec<Vec<usize>>,
    generators: Vec<E>,
    index: BTreeMap<E, usize>,
}

/// An element together with its length-lex least witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidElement<'m, E> {
    pub value: &'m E,
    pub witness: &'m Word,
}

impl<E: Transformation> Monoid<E> {
    /// Breadth-first closure of `identity` under right multiplication by
    /// the generators; errors once more than `cap` elements are found.
    pub fn generate(identity: E, generators: Vec<E>, cap: usize) -> Result<Self> {
        let mut m = Monoid {
            elements: vec![identity.clone()],
            witnesses: vec![Word::empty()],
            right: Vec::new(),
            generators,
            index: BTreeMap::new(),
        };
        m.index.insert(identity, 0);
        let mut pos = 0;
        while pos < m.elements.len() {
            let mut row = Vec::with_capacity(m.generators.len());
            for a in 0..m.generators.len() {
                let next = m.elements[pos].then(&m.generators[a]).map_err(|reason| {
                    domain(alloc::format!("product leaves the 0/1 matrices on word {:?}: {reason}", m.witnesses[pos].appended(a).letters()))
                })?;
                let id = match m.index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if m.elements.len() >= cap {
                            return Err(Error::Resource { what: "monoid enumeration".to_string(), cap });
                        }
                        let id = m.elements.len();
                        m.index.insert(next.clone(), id);
                        m.elements.push(next);
                        m.witnesses.push(m.witnesses[pos].appended(a));
                        id
                    }
                };
                row.push(id);
            }
            m.right.push(row);
            pos += 1;
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> MonoidElement<'_, E> {
        MonoidElement { value: &self.elements[id], witness: &self.witnesses[id] }
    }

    pub fn value(&self, id: usize) -> &E {
        &self.elements[id]
    }

    pub fn witness(&self, id: usize) -> &Word {
        &self.witnesses[id]
    }

    pub fn witnesses(&self) -> &[Word] {
        &self.witnesses
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    /// Right Cayley graph: `right_table()[x][a]` is `x·a`.
    pub fn right_table(&self) -> &[Vec<usize>] {
        &self.right
    }

    pub fn id_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Identifier of the image of a word.
    pub fn id_of_word(&self, w: &[Letter]) -> usize {
        w.iter().fold(0, |x, &a| self.right[x][a])
    }

    /// Product of two elements.
    pub fn product(&self, x: usize, y: usize) -> usize {
        self.witnesses[y].iter().fold(x, |z, &a| self.right[z][a])
    }

    /// Left Cayley graph: `left_table()[x][a]` is `a·x`.
    pub fn left_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|x| (0..self.generators.len()).map(|a| self.product(self.right[0][a], x)).collect())
            .collect()
    }

    pub fn rank(&self, id: usize) -> usize {
        self.elements[id].rank()
    }

    pub fn minimal_nonzero_rank(&self) -> Option<usize> {
        self.elements.iter().map(Transformation::rank).filter(|&r| r > 0).min()
    }

    /// Elements of minimal nonzero rank, in witness order.
    pub fn minimal_rank_elements(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.elements.iter().map(Transformation::rank).collect();
        let Some(d) = ranks.iter().copied().filter(|&r| r > 0).min() else { return Vec::new() };
        (0..self.len()).filter(|&x| ranks[x] == d).collect()
    }

    pub fn zero(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.elements[x].is_zero())
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.product(x, x) == x
    }

    pub fn green(&self) -> GreenStructure {
        GreenStructure::compute(self)
    }
}

impl Monoid<PartialMap> {
    /// Transition monoid of a deterministic automaton.
    pub fn of_dfa(dfa: &Dfa, cap: usize) -> Result<Self> {
        let gens = (0..dfa.alphabet().size()).map(|a| PartialMap::of_letter(dfa, a)).collect();
        Monoid::generate(PartialMap::identity(dfa.num_states()), gens, cap)
    }
}

/// Transition monoid of a deterministic automaton.
pub fn transition_monoid(dfa: &Dfa, cap: usize) -> Result<Monoid<PartialMap>> {
    Monoid::of_dfa(dfa, cap)
}

/// The group H-class of an idempotent with its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupClass {
    pub identity: usize,
    pub members: Vec<usize>,
    /// `table[i][j]` indexes `members`.
    pub table: Vec<Vec<usize>>,
}

/// Green's relations and the minimal ideal of a finite monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenStructure {
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub h_class: Vec<usize>,
    pub d_class: Vec<usize>,
    pub idempotent: Vec<bool>,
    pub rank: Vec<usize>,
    pub zero: Option<usize>,
    /// Minimal nonzero rank, if some element has nonzero rank.
    pub min_rank: Option<usize>,
    /// Elements of minimal nonzero rank (the 0-minimal ideal minus zero).
    pub ideal: Vec<usize>,
    /// The group H-class of the least idempotent in `ideal`.
    pub group: Option<GroupClass>,
}

fn canonical_ids(raw: &[usize]) -> Vec<usize> {
    let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
    raw.iter()
        .map(|r| {
            let len = remap.len();
            *remap.entry(*r).or_insert(len)
        })
        .collect()
}

impl GreenStructure {
    pub fn compute<E: Transformation>(m: &Monoid<E>) -> Self {
        let n = m.len();
        let right: Vec<Vec<usize>> = m.right.clone();
        let left = m.left_table();
        let r_class = canonical_ids(&graph::scc(&right).0);
        let l_class = canonical_ids(&graph::scc(&left).0);
        let both: Vec<Vec<usize>> = (0..n).map(|x| right[x].iter().chain(&left[x]).copied().collect()).collect();
        let d_class = canonical_ids(&graph::scc(&both).0);
        let mut hmap: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let h_class = (0..n)
            .map(|x| {
                let len = hmap.len();
                *hmap.entry((r_class[x], l_class[x])).or_insert(len)
            })
            .collect::<Vec<_>>();
        let idempotent: Vec<bool> = (0..n).map(|x| m.is_idempotent(x)).collect();
        let rank: Vec<usize> = m.elements.iter().map(Transformation::rank).collect();
        let zero = m.zero();
        let min_rank = rank.iter().copied().filter(|&r| r > 0).min();
        let ideal: Vec<usize> = match min_rank {
            Some(d) => (0..n).filter(|&x| rank[x] == d).collect(),
            None => Vec::new(),
        };
        let group = ideal.iter().copied().find(|&x| idempotent[x]).map(|e| {
            let members: Vec<usize> = (0..n).filter(|&x| h_class[x] == h_class[e]).collect();
            let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(k, &x)| (x, k)).collect();
            let table = members.iter().map(|&x| members.iter().map(|&y| pos[&m.product(x, y)]).collect()).collect();
            GroupClass { identity: e, members, table }
        });
        GreenStructure { r_class, l_class, h_class, d_class, idempotent, rank, zero, min_rank, ideal, group }
    }

    /// Members of the H-class of `x`.
    pub fn h_members(&self, x: usize) -> Vec<usize> {
        (0..self.h_class.len()).filter(|&y| self.h_class[y] == self.h_class[x]).collect()
    }

    /// Distinct D-classes met by the minimal ideal, in witness order.
    pub fn ideal_d_classes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &x in &self.ideal {
            if !out.contains(&self.d_class[x]) {
                out.push(self.d_class[x]);
            }
        }
        out
    }
}

/// One cell of an eggbox: the least witness of an H-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EggCell {
    pub witness: String,
    pub has_idempotent: bool,
    pub size: usize,
}

/// Eggbox picture of one D-class: rows are R-classes, columns L-classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EggBox {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    /// `cells[r][c]` is `None` for an empty intersection.
    pub cells: Vec<Vec<Option<EggCell>>>,
}

fn label_sets(sets: &[Vec<State>], labels: &[String]) -> String {
    sets.iter()
        .map(|s| s.iter().map(|&p| labels[p].as_str()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("/")
}

/// Eggboxes of the D-classes of the minimal ideal. Rows are labelled by
/// column sets (kernels, for partial maps), columns by row sets (images).
pub fn eggboxes<E: Transformation + SetAction>(
    m: &Monoid<E>,
    g: &GreenStructure,
    alphabet: &Alphabet,
    state_labels: &[String],
) -> Vec<EggBox> {
    let mut out = Vec::new();
    for d in g.ideal_d_classes() {
        let members: Vec<usize> = (0..m.len()).filter(|&x| g.d_class[x] == d).collect();
        let mut rows: Vec<usize> = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for &x in &members {
            if !rows.contains(&g.r_class[x]) {
                rows.push(g.r_class[x]);
            }
            if !cols.contains(&g.l_class[x]) {
                cols.push(g.l_class[x]);
            }
        }
        let first_in = |pred: &dyn Fn(usize) -> bool| members.iter().copied().find(|&x| pred(x)).expect("class representative");
        let row_labels = rows
            .iter()
            .map(|&r| label_sets(&m.value(first_in(&|x| g.r_class[x] == r)).column_sets(), state_labels))
            .collect();
        let column_labels = cols
            .iter()
            .map(|&l| label_sets(&m.value(first_in(&|x| g.l_class[x] == l)).row_sets(), state_labels))
            .collect();
        let cells = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&l| {
                        let h: Vec<usize> = members.iter().copied().filter(|&x| g.r_class[x] == r && g.l_class[x] == l).collect();
                        h.first().map(|&x| EggCell {
                            witness: alphabet.render(m.witness(x)),
                            has_idempotent: h.iter().any(|&y| g.idempotent[y]),
                            size: h.len(),
                        })
                    })
                    .collect()
            })
            .collect();
        out.push(EggBox { row_labels, column_labels, cells });
    }
    out
}

impl EggBox {
    /// Plain-text grid; `*` marks cells holding an idempotent.
    pub fn render(&self) -> String {
        let cell_text = |c: &Option<EggCell>| match c {
            Some(c) if c.has_idempotent => alloc::format!("*{}", c.witness),
            Some(c) => c.witness.clone(),
            None => String::new(),
        };
        let head_w = self.row_labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.column_labels.len())
            .map(|j| {
                self.cells.iter().map(|row| cell_text(&row[j]).len()).chain([self.column_labels[j].len()]).max().unwrap_or(0)
            })
            .collect();
        let mut s = String::new();
        s.push_str(&alloc::format!("{:head_w$}", ""));
        for (j, l) in self.column_labels.iter().enumerate() {
            s.push_str(&alloc::format!(" | {:w$}", l, w = widths[j]));
        }
        s.push('\n');
        s.push_str(&"-".repeat(head_w));
        for w in &widths {
            s.push_str("-+-");
            s.push_str(&"-".repeat(*w));
        }
        s.push('\n');
        for (i, row) in self.cells.iter().enumerate() {
            s.push_str(&alloc::format!("{:head_w$}", self.row_labels[i]));
            for (j, c) in row.iter().enumerate() {
                s.push_str(&alloc::format!(" | {:w$}", cell_text(c), w = widths[j]));
            }
            s.push('\n');
        }
        s
    }
}

/// Images of the elements of minimal nonzero rank, sorted and distinct.
pub fn minimal_images(m: &Monoid<PartialMap>) -> Vec<Vec<State>> {
    let mut v: Vec<Vec<State>> = m.minimal_rank_elements().iter().map(|&x| m.value(x).image()).collect();
    v.sort();
    v.dedup();
    v
}

/// Kernel classes of the map of `w`.
pub fn kernel_of(dfa: &Dfa, w: &[Letter]) -> Vec<Vec<State>> {
    PartialMap::of_word(dfa, w).kernel()
}

/// `set` is a union of kernel classes of `map` (inside its domain).
pub fn saturates(map: &PartialMap, set: &[State]) -> bool {
    let classes = map.kernel();
    set.iter().all(|&p| map.apply(p).is_some())
        && classes.iter().all(|c| {
            let inside = c.iter().filter(|p| set.contains(p)).count();
            inside == 0 || inside == c.len()
        })
}

/// `set` is saturated by the kernel of the word `w`.
pub fn is_saturated(dfa: &Dfa, set: &[State], w: &[Letter]) -> bool {
    saturates(&PartialMap::of_word(dfa, w), set)
}

/// Length-lex least word of minimal nonzero rank saturating `set`.
pub fn find_saturating_word(dfa: &Dfa, set: &[State], cap: usize) -> Result<Option<Word>> {
    let m = transition_monoid(dfa, cap)?;
    Ok(m.minimal_rank_elements().into_iter().find(|&x| saturates(m.value(x), set)).map(|x| m.witness(x).clone()))
}

/// Length-lex least `v` with `p·v = q·v` (both defined), if any.
pub fn synchronizable(dfa: &Dfa, p: State, q: State) -> Option<Word> {
    let n = dfa.num_states();
    let key = |x: State, y: State| if x <= y { x * n + y } else { y * n + x };
    let mut parent: BTreeMap<usize, Option<(usize, Letter)>> = BTreeMap::new();
    let start = key(p, q);
    parent.insert(start, None);
    let mut queue = alloc::collections::VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        let (x, y) = (k / n, k % n);
        if x == y {
            let mut w = Vec::new();
            let mut cur = k;
            while let Some(Some((prev, a))) = parent.get(&cur) {
                w.push(*a);
                cur = *prev;
            }
            w.reverse();
            return Some(Word::from_letters(w));
        }
        for a in 0..dfa.alphabet().size() {
            if let (Some(x2), Some(y2)) = (dfa.next(x, a), dfa.next(y, a)) {
                let k2 = key(x2, y2);
                if let alloc::collections::btree_map::Entry::Vacant(e) = parent.entry(k2) {
                    e.insert(Some((k, a)));
                    queue.push_back(k2);
                }
            }
        }
    }
    None
}

/// Classes of `p ≡ q ⇔ p·x = q·x` for every word `x` of minimal rank.
/// Requires a complete automaton.
pub fn strongly_synchronizable_classes(dfa: &Dfa, cap: usize) -> Result<Vec<Vec<State>>> {
    if !dfa.is_complete() {
        return Err(domain("strong synchronizability needs a complete automaton"));
    }
    let m = transition_monoid(dfa, cap)?;
    let ideal = m.minimal_rank_elements();
    let n = dfa.num_states();
    let mut classes: Vec<Vec<State>> = Vec::new();
    let mut assigned = vec![false; n];
    for p in 0..n {
        if assigned[p] {
            continue;
        }
        let class: Vec<State> = (p..n)
            .filter(|&q| !assigned[q] && ideal.iter().all(|&x| m.value(x).apply(p) == m.value(x).apply(q)))
            .collect();
        for &q in &class {
            assigned[q] = true;
        }
        classes.push(class);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rev_left() -> Dfa {
        Dfa::from_transitions(Alphabet::binary(), 2, 0, &[0], &[(0, 0, 0), (0, 1, 1), (1, 0, 0)]).unwrap()
    }

    #[test]
    fn two_state_monoid_and_eggbox() {
        let d = rev_left();
        let m = transition_monoid(&d, DEFAULT_CAP).unwrap();
        let g = m.green();
        assert_eq!(g.min_rank, Some(1));
        let boxes = eggboxes(&m, &g, d.alphabet(), d.labels());
        assert_eq!(boxes.len(), 1);
        let b = &boxes[0];
        assert_eq!(b.row_labels, ["1,2", "1"]);
        assert_eq!(b.column_labels, ["1", "2"]);
        let cell = |r: usize, c: usize| b.cells[r][c].clone().unwrap();
        assert_eq!((cell(0, 0).witness.as_str(), cell(0, 0).has_idempotent), ("a", true));
        assert_eq!((cell(0, 1).witness.as_str(), cell(0, 1).has_idempotent), ("ab", true));
        assert_eq!((cell(1, 0).witness.as_str(), cell(1, 0).has_idempotent), ("ba", true));
        assert_eq!((cell(1, 1).witness.as_str(), cell(1, 1).has_idempotent), ("b", false));
    }

    #[test]
    fn cap_is_enforced() {
        let d = rev_left();
        assert!(matches!(transition_monoid(&d, 3), Err(Error::Resource { cap: 3, .. })));
    }

    #[test]
    fn bool_matrix_detects_two_paths() {
        let mut a = BoolMatrix::zeros(2);
        a.set(0, 0);
        a.set(0, 1);
        let mut b = BoolMatrix::zeros(2);
        b.set(0, 1);
        b.set(1, 1);
        assert!(a.then(&b).is_err());
    }

    #[test]
    fn synchronizing_word() {
        let d = rev_left();
        assert_eq!(synchronizable(&d, 0, 1), Some(Word::letter(0)));
    }
}
