use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::module::CoeffModule;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Freely reduced word in the generators. Letter `k > 0` is generator `k-1`,
/// letter `-k` its inverse.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<i32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Invalid("word letters are signed 1-based generator indices; 0 is not allowed".into()));
        }
        let mut out: Vec<i32> = Vec::with_capacity(letters.len());
        for l in letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(Word(out))
    }

    /// Generator `gen` (zero-based) raised to `exp`.
    pub fn power(gen: usize, exp: i64) -> Self {
        let letter = gen as i32 + 1;
        let l = if exp < 0 { -letter } else { letter };
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Largest zero-based generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }
}

impl TryFrom<Vec<i32>> for Word {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<i32> {
    fn from(w: Word) -> Vec<i32> {
        w.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if *l > 0 {
                    format!("g{}", l - 1)
                } else {
                    format!("g{}^-1", -l - 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the integral group ring of the free group on the generators
/// (relations are imposed only through the coefficient modules).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::identity(), 1)
    }

    pub fn monomial(word: Word, coeff: impl Into<BigInt>) -> Self {
        let mut e = Self::zero();
        e.add_term(word, coeff.into());
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, BigInt)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients: the image under the trivial representation.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * k)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.mul(w2), c1 * c2);
            }
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(Word::max_generator).max()
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Generator labels and optional relators of the acting group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let p = GroupPresentation {
            generators,
            relators,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, r) in self.relators.iter().enumerate() {
            if let Some(g) = r.max_generator() {
                if g >= self.generators.len() {
                    return Err(Error::Invalid(format!(
                        "relator {i} uses generator {} but only {} are declared",
                        g + 1,
                        self.generators.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invalid("group table is empty".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("group table is not a closed n x n table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::Invalid(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
        })
    }

    /// Z/n with element k standing for t^k.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group of order 0".into()));
        }
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Presentation used by complexes whose letters are the group elements:
    /// one letter per element and the relators `g_a g_b g_{ab}^{-1}`.
    pub fn element_presentation(&self) -> GroupPresentation {
        let n = self.order();
        let mut relators = vec![Word::power(self.identity, 1)];
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let w = Word::new(vec![a as i32 + 1, b as i32 + 1, -(ab as i32 + 1)]).unwrap();
                relators.push(w);
            }
        }
        GroupPresentation {
            generators: (0..n).map(|g| format!("g{g}")).collect(),
            relators,
        }
    }

    /// The word naming an element in the element presentation.
    pub fn element_word(&self, g: usize) -> Word {
        if g == self.identity {
            Word::identity()
        } else {
            Word::power(g, 1)
        }
    }

    /// Evaluates a word whose letters are mapped to elements by `images`.
    pub fn evaluate(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(self.identity, |acc, &l| {
            let g = images[l.unsigned_abs() as usize - 1];
            let g = if l > 0 { g } else { self.inv(g) };
            self.mul(acc, g)
        })
    }

    /// Builds the module over the element presentation from matrices for a
    /// generating set, extending multiplicatively. Fails if the assignment is
    /// not a homomorphism or does not generate.
    pub fn module_from_generators(&self, gens: &[(usize, IntMatrix)]) -> Result<CoeffModule> {
        let rank = gens.first().map_or(0, |(_, m)| m.rows());
        let mut action: Vec<Option<IntMatrix>> = vec![None; self.order()];
        action[self.identity] = Some(IntMatrix::identity(rank));
        let mut queue = VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for (h, mh) in gens {
                let gh = self.mul(g, *h);
                let m = action[g].as_ref().unwrap().mul(mh);
                match &action[gh] {
                    Some(existing) if *existing != m => {
                        return Err(Error::Invalid(format!(
                            "generator matrices do not define a homomorphism (element {gh})"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        action[gh] = Some(m);
                        queue.push_back(gh);
                    }
                }
            }
        }
        let action: Vec<IntMatrix> = action
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| Error::Invalid(format!("element {g} not generated"))))
            .collect::<Result<_>>()?;
        let module = CoeffModule::new(rank, action)?;
        module.check_relators(&self.element_presentation().relators)?;
        Ok(module)
    }

    /// The regular module Z[G] with basis the group elements.
    pub fn regular_module(&self) -> CoeffModule {
        let n = self.order();
        let action = (0..n)
            .map(|g| {
                let mut m = IntMatrix::zeros(n, n);
                for h in 0..n {
                    m[(self.mul(g, h), h)] = BigInt::one();
                }
                m
            })
            .collect();
        CoeffModule::new(n, action).expect("permutation matrices are unimodular")
    }

    /// Collapses a free-group-ring element to Z[G] as a coefficient vector.
    pub fn collapse(&self, e: &GroupRingElement, images: &[usize]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.order()];
        for (w, c) in e.terms() {
            out[self.evaluate(w, images)] += c;
        }
        out
    }

    fn ring_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.order()];
        for (g, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (h, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[self.mul(g, h)] += x * y;
            }
        }
        out
    }

    /// Checks `∂_{q-1} ∘ ∂_q = 0` exactly in Z[G], i.e. under the regular
    /// representation, with letters mapped to elements by `images`.
    pub fn boundaries_compose_to_zero(
        &self,
        cx: &crate::complex::chain::GroupRingComplex,
        images: &[usize],
    ) -> bool {
        for q in 2..cx.basis_sizes().len() {
            let (hi, lo) = (cx.boundary(q), cx.boundary(q - 1));
            let mut acc: HashMap<(usize, usize), Vec<BigInt>> = HashMap::new();
            for ((j, k), a) in hi.entries() {
                for i in 0..lo.rows() {
                    if let Some(b) = lo.get(i, *j) {
                        // left-module convention: coefficient of ∂∂σ_k on σ_i
                        let prod = self.ring_mul(&self.collapse(a, images), &self.collapse(b, images));
                        let slot = acc
                            .entry((i, *k))
                            .or_insert_with(|| vec![BigInt::zero(); self.order()]);
                        for (s, p) in slot.iter_mut().zip(prod) {
                            *s += p;
                        }
                    }
                }
            }
            if acc.values().any(|v| v.iter().any(|x| !x.is_zero())) {
                return false;
            }
        }
        true
    }
}
