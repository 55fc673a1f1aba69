use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::permgroup::Permutation;

/// A ternary bracketing shape. Children of a node are kept in canonical
/// order (see [`shape_cmp`]) once the shape comes out of [`association_types`]
/// or normalisation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Leaf,
    Node(Box<[Shape; 3]>),
}

impl Shape {
    pub fn node(a: Shape, b: Shape, c: Shape) -> Shape {
        Shape::Node(Box::new([a, b, c]))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node(ch) => ch.iter().map(Shape::leaves).sum(),
        }
    }

    pub fn brackets(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(ch) => 1 + ch.iter().map(Shape::brackets).sum::<usize>(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Shape::Leaf)
    }

    /// Renders the shape with consecutive letters starting at `a`.
    pub fn with_letters(&self) -> String {
        fn go(s: &Shape, next: &mut u8, out: &mut String) {
            match s {
                Shape::Leaf => {
                    out.push((b'a' + *next) as char);
                    *next += 1;
                }
                Shape::Node(ch) => {
                    out.push('[');
                    for (k, c) in ch.iter().enumerate() {
                        if k > 0 {
                            out.push(',');
                        }
                        go(c, next, out);
                    }
                    out.push(']');
                }
            }
        }
        let mut out = String::new();
        go(self, &mut 0, &mut out);
        out
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.with_letters())
    }
}

/// Order on shapes; `Less` means "comes first". Larger shapes come first;
/// among brackets with the same number of leaves, the one whose children
/// have the lexicographically larger leaf counts comes first, then the
/// children are compared in turn.
pub fn shape_cmp(a: &Shape, b: &Shape) -> Ordering {
    match (a, b) {
        (Shape::Leaf, Shape::Leaf) => Ordering::Equal,
        (Shape::Leaf, Shape::Node(_)) => Ordering::Greater,
        (Shape::Node(_), Shape::Leaf) => Ordering::Less,
        (Shape::Node(x), Shape::Node(y)) => {
            let (lx, ly) = (a.leaves(), b.leaves());
            if lx != ly {
                return ly.cmp(&lx);
            }
            let cx: Vec<usize> = x.iter().map(Shape::leaves).collect();
            let cy: Vec<usize> = y.iter().map(Shape::leaves).collect();
            if cx != cy {
                return cy.cmp(&cx);
            }
            x.iter().zip(y.iter()).map(|(p, q)| shape_cmp(p, q)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        }
    }
}

fn shapes_with_leaves(n: usize) -> Vec<Shape> {
    if n == 1 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for x in (1..=n - 2).rev().filter(|x| x % 2 == 1) {
        for y in (1..=x).rev().filter(|y| y % 2 == 1) {
            if x + y >= n {
                continue;
            }
            let z = n - x - y;
            if z > y || z.is_multiple_of(2) {
                continue;
            }
            let (sx, sy, sz) = (shapes_with_leaves(x), shapes_with_leaves(y), shapes_with_leaves(z));
            for a in &sx {
                for b in sy.iter().filter(|b| shape_cmp(a, b).is_le()) {
                    for c in sz.iter().filter(|c| shape_cmp(b, c).is_le()) {
                        out.push(Shape::node(a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
    }
    out.sort_by(shape_cmp);
    out.dedup();
    out
}

/// One association type: a canonical shape together with derived data.
#[derive(Clone, Debug)]
pub struct AssocType {
    index: usize,
    shape: Shape,
    constraints: Vec<(Range<usize>, Range<usize>)>,
}

impl AssocType {
    fn new(index: usize, shape: Shape) -> Self {
        let mut constraints = Vec::new();
        collect_constraints(&shape, 0, &mut constraints);
        AssocType { index, shape, constraints }
    }

    /// 0-based position in the ordered list of types of this degree.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.leaves()
    }

    /// Pairs of leaf ranges belonging to adjacent children of equal shape;
    /// a word is canonical exactly when the first range reads strictly
    /// smaller than the second for every pair.
    pub fn constraints(&self) -> &[(Range<usize>, Range<usize>)] {
        &self.constraints
    }

    pub fn is_canonical_word(&self, word: &[u8]) -> bool {
        self.constraints.iter().all(|(r, s)| word[r.clone()] < word[s.clone()])
    }

    /// Number of canonical multilinear monomials of this type:
    /// `n!` divided by `m!` for every group of `m` equal-shape children of
    /// every bracket.
    pub fn count_multilinear(&self) -> u64 {
        fn denom(s: &Shape) -> u64 {
            match s {
                Shape::Leaf => 1,
                Shape::Node(ch) => {
                    let mut d: u64 = ch.iter().map(denom).product();
                    let mut k = 0;
                    while k < 3 {
                        let mut m = 1;
                        while k + m < 3 && ch[k + m] == ch[k] {
                            m += 1;
                        }
                        d *= (1..=m as u64).product::<u64>();
                        k += m;
                    }
                    d
                }
            }
        }
        let n = self.degree() as u64;
        (1..=n).product::<u64>() / denom(&self.shape)
    }

    /// Generators of the alternating symmetries of this type, each a leaf
    /// permutation `pi` standing for the relation `id + pi = 0`.
    pub fn symmetry_generators(&self) -> Vec<Permutation> {
        let n = self.degree();
        let mut out = Vec::new();
        gen_symmetries(&self.shape, 0, n, &mut out);
        out
    }

    /// Signed leaf sequences of the expansion: for each term, the leaf
    /// index at every word position, and its sign. There are `6^brackets`
    /// terms.
    pub fn expansion(&self) -> Vec<(Vec<u8>, i8)> {
        expansion_of(&self.shape, 0)
    }
}

fn child_ranges(ch: &[Shape; 3], offset: usize) -> [Range<usize>; 3] {
    let a = offset + ch[0].leaves();
    let b = a + ch[1].leaves();
    let c = b + ch[2].leaves();
    [offset..a, a..b, b..c]
}

fn collect_constraints(s: &Shape, offset: usize, out: &mut Vec<(Range<usize>, Range<usize>)>) {
    if let Shape::Node(ch) = s {
        let r = child_ranges(ch, offset);
        for k in 0..3 {
            collect_constraints(&ch[k], r[k].start, out);
        }
        for k in 0..2 {
            if ch[k] == ch[k + 1] {
                out.push((r[k].clone(), r[k + 1].clone()));
            }
        }
    }
}

fn gen_symmetries(s: &Shape, offset: usize, n: usize, out: &mut Vec<Permutation>) {
    if let Shape::Node(ch) = s {
        let r = child_ranges(ch, offset);
        for k in 0..3 {
            if k == 0 || ch[k] != ch[k - 1] {
                gen_symmetries(&ch[k], r[k].start, n, out);
            }
        }
        for k in 0..2 {
            if ch[k] == ch[k + 1] {
                let mut images: Vec<u8> = (0..n as u8).collect();
                let len = r[k].len();
                for t in 0..len {
                    images.swap(r[k].start + t, r[k + 1].start + t);
                }
                out.push(Permutation::from_images(images).expect("block swap is a permutation"));
            }
        }
    }
}

/// Orders of the bracket arguments in the expansion of `[x,y,z]`, with signs:
/// `xyz - xzy - yxz + yzx + zxy - zyx`.
pub const BRACKET_TERMS: [([usize; 3], i8); 6] =
    [([0, 1, 2], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([2, 1, 0], -1)];

fn expansion_of(s: &Shape, offset: usize) -> Vec<(Vec<u8>, i8)> {
    match s {
        Shape::Leaf => vec![(vec![offset as u8], 1)],
        Shape::Node(ch) => {
            let r = child_ranges(ch, offset);
            let parts: Vec<Vec<(Vec<u8>, i8)>> = (0..3).map(|k| expansion_of(&ch[k], r[k].start)).collect();
            let mut out = Vec::with_capacity(6 * parts.iter().map(Vec::len).product::<usize>());
            for (order, sg) in BRACKET_TERMS {
                for (w0, s0) in &parts[order[0]] {
                    for (w1, s1) in &parts[order[1]] {
                        for (w2, s2) in &parts[order[2]] {
                            let mut w = Vec::with_capacity(w0.len() + w1.len() + w2.len());
                            w.extend_from_slice(w0);
                            w.extend_from_slice(w1);
                            w.extend_from_slice(w2);
                            out.push((w, sg * s0 * s1 * s2));
                        }
                    }
                }
            }
            out
        }
    }
}

/// The association types of an odd degree, in canonical order.
#[derive(Clone, Debug)]
pub struct TypeSet {
    degree: usize,
    types: Vec<AssocType>,
}

impl TypeSet {
    pub fn new(degree: usize) -> Result<Self> {
        if degree < 3 || degree.is_multiple_of(2) || degree > 31 {
            return Err(Error::BadDegree(degree));
        }
        let types = shapes_with_leaves(degree).into_iter().enumerate().map(|(i, s)| AssocType::new(i, s)).collect();
        Ok(TypeSet { degree, types })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn types(&self) -> &[AssocType] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn get(&self, i: usize) -> &AssocType {
        &self.types[i]
    }

    pub fn index_of(&self, shape: &Shape) -> Option<usize> {
        self.types.iter().position(|t| &t.shape == shape)
    }

    /// All symmetry generators as `(type index, pi)` pairs, type by type.
    pub fn symmetry_generators(&self) -> Vec<(usize, Permutation)> {
        self.types.iter().flat_map(|t| t.symmetry_generators().into_iter().map(move |p| (t.index, p))).collect()
    }
}

/// Convenience wrapper: the ordered association types of `degree`.
pub fn association_types(degree: usize) -> Result<Vec<AssocType>> {
    Ok(TypeSet::new(degree)?.types)
}
