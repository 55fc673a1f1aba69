use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;

use crate::error::Result;
use crate::permgroup::{next_permutation, Permutation};
use crate::ternary::{canonical_monomial, expand, TernaryMonomial, Term, TypeSet};

/// A collected polynomial in the free alternating ternary algebra: integer
/// coefficients on canonical monomials of one degree, sorted by monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct TernaryPolynomial {
    degree: usize,
    terms: Vec<(i64, TernaryMonomial)>,
}

impl TernaryPolynomial {
    /// Normalises and collects raw terms; vanishing terms and cancelled
    /// coefficients are dropped.
    pub fn collect(types: &TypeSet, raw: impl IntoIterator<Item = (i64, Term)>) -> Self {
        let mut acc: BTreeMap<TernaryMonomial, i64> = BTreeMap::new();
        for (c, t) in raw {
            if let Some((s, m)) = canonical_monomial(types, &t) {
                *acc.entry(m).or_insert(0) += c * s as i64;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (c, m)).collect();
        TernaryPolynomial { degree: types.degree(), terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(i64, TernaryMonomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn content(&self) -> i64 {
        self.terms.iter().fold(0i64, |g, (c, _)| g.gcd(c))
    }

    /// Expansion in the free associative algebra, collected; zero
    /// coefficients are removed.
    pub fn expansion(&self, types: &TypeSet) -> HashMap<Vec<u8>, i64> {
        let mut acc: HashMap<Vec<u8>, i64> = HashMap::new();
        for (c, m) in &self.terms {
            for (w, s) in expand(types.get(m.type_index), &m.word) {
                *acc.entry(w).or_insert(0) += c * s as i64;
            }
        }
        acc.retain(|_, c| *c != 0);
        acc
    }

    pub fn to_terms(&self, types: &TypeSet) -> Vec<(i64, Term)> {
        self.terms.iter().map(|(c, m)| (*c, m.to_term(types))).collect()
    }

    /// Display with letters, one term per line.
    pub fn render(&self, types: &TypeSet) -> String {
        let mut out = String::new();
        for (c, m) in &self.terms {
            out.push_str(&format!("{c:+} {}\n", m.to_term(types)));
        }
        out
    }
}

impl fmt::Debug for TernaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryPolynomial(degree {}, {} terms)", self.degree, self.terms.len())
    }
}

/// An expression built from variables, brackets and at most one occurrence
/// of the identity `I`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LiftExpr {
    Var(u8),
    Bracket(Box<[LiftExpr; 3]>),
    I(Box<[LiftExpr; 7]>),
}

impl LiftExpr {
    pub fn var(x: u8) -> Self {
        LiftExpr::Var(x)
    }

    pub fn bracket(a: LiftExpr, b: LiftExpr, c: LiftExpr) -> Self {
        LiftExpr::Bracket(Box::new([a, b, c]))
    }

    pub fn i(args: [LiftExpr; 7]) -> Self {
        LiftExpr::I(Box::new(args))
    }

    /// `[x, y, z]` on variables.
    pub fn triple(x: u8, y: u8, z: u8) -> Self {
        Self::bracket(Self::var(x), Self::var(y), Self::var(z))
    }

    /// `I` applied to seven expressions given as a vector.
    pub fn i_of(args: Vec<LiftExpr>) -> Self {
        Self::i(args.try_into().expect("I takes seven arguments"))
    }

    pub fn degree(&self) -> usize {
        match self {
            LiftExpr::Var(_) => 1,
            LiftExpr::Bracket(ch) => ch.iter().map(LiftExpr::degree).sum(),
            LiftExpr::I(args) => args.iter().map(LiftExpr::degree).sum(),
        }
    }

    /// Variables in order of appearance.
    pub fn variables(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.push_vars(&mut out);
        out
    }

    fn push_vars(&self, out: &mut Vec<u8>) {
        match self {
            LiftExpr::Var(x) => out.push(*x),
            LiftExpr::Bracket(ch) => ch.iter().for_each(|c| c.push_vars(out)),
            LiftExpr::I(args) => args.iter().for_each(|c| c.push_vars(out)),
        }
    }

    /// Renames every variable `x` to `map[x]`.
    pub fn rename(&self, map: &[u8]) -> Self {
        match self {
            LiftExpr::Var(x) => LiftExpr::Var(map[*x as usize]),
            LiftExpr::Bracket(ch) => Self::bracket(ch[0].rename(map), ch[1].rename(map), ch[2].rename(map)),
            LiftExpr::I(args) => LiftExpr::I(Box::new(std::array::from_fn(|k| args[k].rename(map)))),
        }
    }

    /// Replaces variable `v` by `e`.
    pub fn replace_var(&self, v: u8, e: &LiftExpr) -> Self {
        match self {
            LiftExpr::Var(x) if *x == v => e.clone(),
            LiftExpr::Var(_) => self.clone(),
            LiftExpr::Bracket(ch) => {
                Self::bracket(ch[0].replace_var(v, e), ch[1].replace_var(v, e), ch[2].replace_var(v, e))
            }
            LiftExpr::I(args) => LiftExpr::I(Box::new(std::array::from_fn(|k| args[k].replace_var(v, e)))),
        }
    }

    fn to_term(&self) -> Term {
        match self {
            LiftExpr::Var(x) => Term::var(*x),
            LiftExpr::Bracket(ch) => Term::bracket(ch[0].to_term(), ch[1].to_term(), ch[2].to_term()),
            LiftExpr::I(_) => panic!("I cannot appear inside an argument of I"),
        }
    }

    /// Raw terms: `I` is replaced by its collected form with the arguments
    /// grafted in.
    pub fn raw_terms(&self) -> Vec<(i64, Term)> {
        match self {
            LiftExpr::Var(x) => vec![(1, Term::var(*x))],
            LiftExpr::Bracket(ch) => {
                let parts: Vec<Vec<(i64, Term)>> = ch.iter().map(LiftExpr::raw_terms).collect();
                let mut out = Vec::new();
                for (c0, t0) in &parts[0] {
                    for (c1, t1) in &parts[1] {
                        for (c2, t2) in &parts[2] {
                            out.push((c0 * c1 * c2, Term::bracket(t0.clone(), t1.clone(), t2.clone())));
                        }
                    }
                }
                out
            }
            LiftExpr::I(args) => {
                let args: Vec<Term> = args.iter().map(LiftExpr::to_term).collect();
                identity_i_template().iter().map(|(c, t)| (*c, t.substitute(&args))).collect()
            }
        }
    }

    pub fn evaluate(&self) -> Result<TernaryPolynomial> {
        let types = TypeSet::new(self.degree())?;
        Ok(TernaryPolynomial::collect(&types, self.raw_terms()))
    }

    /// A key that is invariant under renaming variables and under the known
    /// alternations: bracket arguments and the arguments `b..g` of `I` are
    /// unordered.
    pub fn pattern_key(&self) -> String {
        match self {
            LiftExpr::Var(_) => "x".into(),
            LiftExpr::Bracket(ch) => {
                let mut k: Vec<String> = ch.iter().map(LiftExpr::pattern_key).collect();
                k.sort();
                format!("[{}]", k.join(","))
            }
            LiftExpr::I(args) => {
                let mut k: Vec<String> = args[1..].iter().map(LiftExpr::pattern_key).collect();
                k.sort();
                format!("I({};{})", args[0].pattern_key(), k.join(","))
            }
        }
    }
}

impl fmt::Display for LiftExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftExpr::Var(x) => write!(f, "{}", (b'a' + x) as char),
            LiftExpr::Bracket(ch) => write!(f, "[{},{},{}]", ch[0], ch[1], ch[2]),
            LiftExpr::I(args) => {
                let s: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "I({})", s.join(","))
            }
        }
    }
}

/// Raw alternating sum defining `I(a,...,g)`: over permutations `s` of
/// `b..g`, `sign(s) ([[[b,c,d],a,e],f,g] + [[a,b,c],[d,e,f],g])` with `s`
/// applied to `b..g`.
fn identity_i_raw() -> Vec<(i64, Term)> {
    let mut out = Vec::with_capacity(1440);
    let mut img: Vec<u8> = (1..7).collect();
    let v = Term::var;
    loop {
        let sign = Permutation::from_images(img.iter().map(|x| x - 1).collect()).unwrap().sign() as i64;
        let [b, c, d, e, f, g] = [img[0], img[1], img[2], img[3], img[4], img[5]];
        let t1 = Term::bracket(Term::bracket(Term::bracket(v(b), v(c), v(d)), v(0), v(e)), v(f), v(g));
        let t2 = Term::bracket(Term::bracket(v(0), v(b), v(c)), Term::bracket(v(d), v(e), v(f)), v(g));
        out.push((sign, t1));
        out.push((sign, t2));
        if !next_permutation(&mut img) {
            break;
        }
    }
    out
}

fn identity_i_template() -> &'static [(i64, Term)] {
    static CELL: OnceLock<Vec<(i64, Term)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let types = TypeSet::new(7).expect("degree 7");
        identity_i_poly_from(&types).to_terms(&types)
    })
}

fn identity_i_poly_from(types: &TypeSet) -> TernaryPolynomial {
    TernaryPolynomial::collect(types, identity_i_raw())
}

/// The degree-7 identity, collected.
pub fn identity_i() -> TernaryPolynomial {
    identity_i_poly_from(&TypeSet::new(7).expect("degree 7"))
}

/// Raw (uncollected) terms of the degree-7 identity.
#[cfg(test)]
pub(crate) fn identity_i_uncollected() -> Vec<(i64, Term)> {
    identity_i_raw()
}

fn vars(xs: &[u8]) -> Vec<LiftExpr> {
    xs.iter().map(|&x| LiftExpr::var(x)).collect()
}

/// `I([a,h,i],b,...,g)`, `I(a,[b,h,i],c,...,g)` and `[I(a,...,g),h,i]`.
pub fn liftings_degree9() -> Vec<LiftExpr> {
    let (a, b, h, i) = (0, 1, 7, 8);
    let mut f1 = vec![LiftExpr::triple(a, h, i)];
    f1.extend(vars(&[1, 2, 3, 4, 5, 6]));
    let mut f2 = vars(&[a]);
    f2.push(LiftExpr::triple(b, h, i));
    f2.extend(vars(&[2, 3, 4, 5, 6]));
    let f3 = LiftExpr::bracket(LiftExpr::i_of(vars(&[0, 1, 2, 3, 4, 5, 6])), LiftExpr::var(h), LiftExpr::var(i));
    vec![LiftExpr::i_of(f1), LiftExpr::i_of(f2), f3]
}

/// The eight degree-11 consequences, in their fixed order:
///
/// 1. `I([[a,j,k],h,i],b,c,d,e,f,g)`
/// 2. `I([a,h,i],[b,j,k],c,d,e,f,g)`
/// 3. `[I([a,h,i],b,c,d,e,f,g),j,k]`
/// 4. `I(a,[[b,j,k],h,i],c,d,e,f,g)`
/// 5. `I(a,[b,h,i],[c,j,k],d,e,f,g)`
/// 6. `[I(a,[b,h,i],c,d,e,f,g),j,k]`
/// 7. `[I(a,b,c,d,e,f,g),[h,j,k],i]`
/// 8. `[[I(a,b,c,d,e,f,g),h,i],j,k]`
pub fn liftings_degree11() -> Vec<LiftExpr> {
    let (a, b, c, h, i, j, k) = (0u8, 1u8, 2u8, 7u8, 8u8, 9u8, 10u8);
    let t = LiftExpr::triple;
    let v = LiftExpr::var;
    let br = LiftExpr::bracket;
    let i_with = |first: LiftExpr, rest: Vec<LiftExpr>| {
        let mut args = vec![first];
        args.extend(rest);
        LiftExpr::i_of(args)
    };
    let plain = || LiftExpr::i_of(vars(&[0, 1, 2, 3, 4, 5, 6]));
    let mut rest5 = vec![t(b, h, i), t(c, j, k)];
    rest5.extend(vars(&[3, 4, 5, 6]));
    let mut rest2 = vec![t(b, j, k)];
    rest2.extend(vars(&[2, 3, 4, 5, 6]));
    let mut rest4 = vec![br(t(b, j, k), v(h), v(i))];
    rest4.extend(vars(&[2, 3, 4, 5, 6]));
    let mut rest6 = vec![t(b, h, i)];
    rest6.extend(vars(&[2, 3, 4, 5, 6]));
    vec![
        i_with(br(t(a, j, k), v(h), v(i)), vars(&[1, 2, 3, 4, 5, 6])),
        i_with(t(a, h, i), rest2),
        br(i_with(t(a, h, i), vars(&[1, 2, 3, 4, 5, 6])), v(j), v(k)),
        i_with(v(a), rest4),
        i_with(v(a), rest5),
        br(i_with(v(a), rest6), v(j), v(k)),
        br(plain(), t(h, j, k), v(i)),
        br(br(plain(), v(h), v(i)), v(j), v(k)),
    ]
}

/// All one-step consequences of the given expressions: substitute a fresh
/// triple for one variable, or embed the whole expression as the first
/// argument of a fresh triple. Returns one representative per pattern key,
/// in first-seen order.
pub fn lifting_patterns(families: &[LiftExpr]) -> Vec<LiftExpr> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for f in families {
        let n = f.degree() as u8;
        let (y, z) = (n, n + 1);
        let mut candidates = Vec::new();
        for x in f.variables() {
            candidates.push(f.replace_var(x, &LiftExpr::triple(x, y, z)));
        }
        candidates.push(LiftExpr::bracket(f.clone(), LiftExpr::var(y), LiftExpr::var(z)));
        for c in candidates {
            if seen.insert(c.pattern_key()) {
                out.push(c);
            }
        }
    }
    out
}

/// Lifting families used by the multilinear pipeline in each degree: none
/// in degrees 5 and 7, three in degree 9, eight in degree 11.
pub fn liftings(degree: usize) -> Vec<LiftExpr> {
    match degree {
        9 => liftings_degree9(),
        11 => liftings_degree11(),
        _ => Vec::new(),
    }
}
