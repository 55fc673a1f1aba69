use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::shape::{shape_cmp, Shape, TypeSet, BRACKET_TERMS};

/// A bracketed monomial: variables (0 = `a`, 1 = `b`, ...) at the leaves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(u8),
    Bracket(Box<[Term; 3]>),
}

impl Term {
    pub fn var(x: u8) -> Term {
        Term::Var(x)
    }

    pub fn bracket(a: Term, b: Term, c: Term) -> Term {
        Term::Bracket(Box::new([a, b, c]))
    }

    /// Parses the textual syntax, e.g. `[[a,b,c],d,e]`. Whitespace is ignored.
    pub fn parse(s: &str) -> Result<Term> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse_at(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(t)
    }

    pub fn shape(&self) -> Shape {
        match self {
            Term::Var(_) => Shape::Leaf,
            Term::Bracket(ch) => Shape::node(ch[0].shape(), ch[1].shape(), ch[2].shape()),
        }
    }

    /// Variables read left to right.
    pub fn word(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.push_word(&mut out);
        out
    }

    fn push_word(&self, out: &mut Vec<u8>) {
        match self {
            Term::Var(x) => out.push(*x),
            Term::Bracket(ch) => ch.iter().for_each(|c| c.push_word(out)),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Bracket(ch) => ch.iter().map(Term::degree).sum(),
        }
    }

    /// Replaces every variable `x` by `args[x]`.
    pub fn substitute(&self, args: &[Term]) -> Term {
        match self {
            Term::Var(x) => args[*x as usize].clone(),
            Term::Bracket(ch) => Term::bracket(ch[0].substitute(args), ch[1].substitute(args), ch[2].substitute(args)),
        }
    }

    /// Fills a shape with the letters of `word` from left to right.
    pub fn from_shape(shape: &Shape, word: &[u8]) -> Term {
        fn go(s: &Shape, word: &[u8], pos: &mut usize) -> Term {
            match s {
                Shape::Leaf => {
                    *pos += 1;
                    Term::Var(word[*pos - 1])
                }
                Shape::Node(ch) => {
                    let a = go(&ch[0], word, pos);
                    let b = go(&ch[1], word, pos);
                    let c = go(&ch[2], word, pos);
                    Term::bracket(a, b, c)
                }
            }
        }
        assert_eq!(shape.leaves(), word.len());
        go(shape, word, &mut 0)
    }
}

fn parse_at(c: &[char], pos: &mut usize) -> Result<Term> {
    match c.get(*pos) {
        Some('[') => {
            *pos += 1;
            let mut ch = Vec::with_capacity(3);
            for k in 0..3 {
                ch.push(parse_at(c, pos)?);
                let want = if k < 2 { ',' } else { ']' };
                if c.get(*pos) != Some(&want) {
                    return Err(Error::Parse(format!("expected {want:?} at offset {pos}")));
                }
                *pos += 1;
            }
            let c3 = ch.pop().unwrap();
            let c2 = ch.pop().unwrap();
            let c1 = ch.pop().unwrap();
            Ok(Term::bracket(c1, c2, c3))
        }
        Some(&x) if x.is_ascii_lowercase() => {
            *pos += 1;
            Ok(Term::Var(x as u8 - b'a'))
        }
        other => Err(Error::Parse(format!("unexpected {other:?} at offset {pos}"))),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{}", (b'a' + x) as char),
            Term::Bracket(ch) => write!(f, "[{},{},{}]", ch[0], ch[1], ch[2]),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Order on bracket arguments: by shape, then by word.
fn arg_cmp(a: &(Shape, Vec<u8>, Term), b: &(Shape, Vec<u8>, Term)) -> Ordering {
    shape_cmp(&a.0, &b.0).then_with(|| a.1.cmp(&b.1))
}

/// Sorts the arguments of every bracket into canonical order, tracking the
/// sign of the permutations used. Returns `None` when some bracket has two
/// equal arguments, in which case the monomial vanishes.
pub fn normalize(t: &Term) -> Option<(i8, Term)> {
    normalize_full(t).map(|(s, _, _, t)| (s, t))
}

fn normalize_full(t: &Term) -> Option<(i8, Shape, Vec<u8>, Term)> {
    match t {
        Term::Var(x) => Some((1, Shape::Leaf, vec![*x], t.clone())),
        Term::Bracket(ch) => {
            let mut sign = 1i8;
            let mut args = Vec::with_capacity(3);
            for c in ch.iter() {
                let (s, shape, word, term) = normalize_full(c)?;
                sign *= s;
                args.push((shape, word, term));
            }
            // three-element bubble sort with parity
            for (i, j) in [(0, 1), (1, 2), (0, 1)] {
                match arg_cmp(&args[i], &args[j]) {
                    Ordering::Greater => {
                        args.swap(i, j);
                        sign = -sign;
                    }
                    Ordering::Equal => return None,
                    Ordering::Less => {}
                }
            }
            let mut it = args.into_iter();
            let (s0, w0, t0) = it.next().unwrap();
            let (s1, w1, t1) = it.next().unwrap();
            let (s2, w2, t2) = it.next().unwrap();
            let mut word = w0;
            word.extend(w1);
            word.extend(w2);
            Some((sign, Shape::node(s0, s1, s2), word, Term::bracket(t0, t1, t2)))
        }
    }
}

/// A canonical monomial: an association type and the word at its leaves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TernaryMonomial {
    pub type_index: usize,
    pub word: Vec<u8>,
}

impl TernaryMonomial {
    pub fn to_term(&self, types: &TypeSet) -> Term {
        Term::from_shape(types.get(self.type_index).shape(), &self.word)
    }
}

/// Normalises a term and locates its association type: `Some((sign, m))`
/// with `t = sign * m`, or `None` if `t` vanishes.
pub fn canonical_monomial(types: &TypeSet, t: &Term) -> Option<(i8, TernaryMonomial)> {
    let (sign, shape, word, _) = normalize_full(t)?;
    let type_index = types.index_of(&shape).expect("degree matches the type set");
    Some((sign, TernaryMonomial { type_index, word }))
}

/// Expansion in the free associative algebra collected over the integers:
/// every bracket `[x,y,z]` is replaced by the alternating sum of the six
/// products of its arguments.
pub fn expand_collected(t: &Term) -> BTreeMap<Vec<u8>, i64> {
    match t {
        Term::Var(x) => BTreeMap::from([(vec![*x], 1)]),
        Term::Bracket(ch) => {
            let parts: Vec<BTreeMap<Vec<u8>, i64>> = ch.iter().map(expand_collected).collect();
            let mut out = BTreeMap::new();
            for (order, sg) in BRACKET_TERMS {
                for (w0, c0) in &parts[order[0]] {
                    for (w1, c1) in &parts[order[1]] {
                        for (w2, c2) in &parts[order[2]] {
                            let w = [w0.as_slice(), w1, w2].concat();
                            *out.entry(w).or_insert(0) += sg as i64 * c0 * c1 * c2;
                        }
                    }
                }
            }
            out.retain(|_, c| *c != 0);
            out
        }
    }
}
