//! Finite Heyting algebras with fully tabulated operations: construction
//! from a poset (downset lattice) or from a bare order relation, structural
//! verification with named conditions, filter machinery, and a deterministic
//! enumerator covering every isomorphism class whose underlying poset is
//! small.

use crate::posets;
use crate::verdict::Verdict;

/// Hard cap on the underlying poset size accepted by [`enumerate_algebras`].
pub const MAX_POSET_SIZE: usize = 5;

/// A finite Heyting algebra. `leq[a][b]` holds iff `a` is below `b`; the
/// remaining tables are total operations on element indices.
///
/// The built-in constructors number elements bottom-up (bot is 0, top is
/// `size - 1`), but nothing downstream relies on that: `verify` checks the
/// stored `bot`/`top` against the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytingAlgebra {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub bot: usize,
    pub top: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
}

impl HeytingAlgebra {
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Checks every defining condition and reports the first violated one.
    /// The order runs from shape to order axioms to lattice structure to
    /// residuation, so a reported condition is meaningful even when later
    /// tables are nonsense.
    pub fn verify(&self) -> Verdict {
        let n = self.size;
        let square = |t: &Vec<Vec<usize>>| {
            t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n))
        };
        let shape_ok = n >= 2
            && self.bot < n
            && self.top < n
            && self.leq.len() == n
            && self.leq.iter().all(|r| r.len() == n)
            && square(&self.meet)
            && square(&self.join)
            && square(&self.imp)
            && self.neg.len() == n
            && self.neg.iter().all(|&x| x < n);
        if !shape_ok {
            return Verdict::rejected("table-shape");
        }

        for a in 0..n {
            if !self.leq[a][a] {
                return Verdict::rejected("leq-reflexive").with_witness(format!("a={a}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && self.leq[b][a] {
                    return Verdict::rejected("leq-antisymmetric")
                        .with_witness(format!("a={a} b={b}"));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.leq[a][b] && self.leq[b][c] && !self.leq[a][c] {
                        return Verdict::rejected("leq-transitive")
                            .with_witness(format!("a={a} b={b} c={c}"));
                    }
                }
            }
        }
        for a in 0..n {
            if !self.leq[self.bot][a] {
                return Verdict::rejected("bot-least").with_witness(format!("a={a}"));
            }
            if !self.leq[a][self.top] {
                return Verdict::rejected("top-greatest").with_witness(format!("a={a}"));
            }
        }

        for a in 0..n {
            for b in 0..n {
                let m = self.meet[a][b];
                if !(self.leq[m][a] && self.leq[m][b]) {
                    return Verdict::rejected("meet-is-glb")
                        .with_witness(format!("meet({a},{b})={m} is not a lower bound"));
                }
                for x in 0..n {
                    if self.leq[x][a] && self.leq[x][b] && !self.leq[x][m] {
                        return Verdict::rejected("meet-is-glb")
                            .with_witness(format!("a={a} b={b}: bound x={x} not below {m}"));
                    }
                }
                let j = self.join[a][b];
                if !(self.leq[a][j] && self.leq[b][j]) {
                    return Verdict::rejected("join-is-lub")
                        .with_witness(format!("join({a},{b})={j} is not an upper bound"));
                }
                for x in 0..n {
                    if self.leq[a][x] && self.leq[b][x] && !self.leq[j][x] {
                        return Verdict::rejected("join-is-lub")
                            .with_witness(format!("a={a} b={b}: bound x={x} not above {j}"));
                    }
                }
            }
        }

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet[a][self.join[b][c]];
                    let rhs = self.join[self.meet[a][b]][self.meet[a][c]];
                    if lhs != rhs {
                        return Verdict::rejected("distributivity")
                            .with_witness(format!("a={a} b={b} c={c}"));
                    }
                }
            }
        }

        // x & a <= b iff x <= (a -> b), for all triples
        for x in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let lhs = self.leq[self.meet[x][a]][b];
                    let rhs = self.leq[x][self.imp[a][b]];
                    if lhs != rhs {
                        return Verdict::rejected("residuation")
                            .with_witness(format!("x={x} a={a} b={b}"));
                    }
                }
            }
        }

        for a in 0..n {
            if self.neg[a] != self.imp[a][self.bot] {
                return Verdict::rejected("neg-definition").with_witness(format!("a={a}"));
            }
        }

        Verdict::Accepted
    }

    /// Every filter of a finite lattice is the upset of its least element,
    /// so listing generators lists all filters. The improper filter
    /// (generated by bot) is included; callers filter with [`is_proper`].
    ///
    /// [`is_proper`]: HeytingAlgebra::is_proper
    pub fn filters(&self) -> Vec<Filter> {
        (0..self.size).map(|g| Filter { generator: g }).collect()
    }

    pub fn filter_contains(&self, f: Filter, x: usize) -> bool {
        self.leq[f.generator][x]
    }

    pub fn is_proper(&self, f: Filter) -> bool {
        f.generator != self.bot
    }

    /// Proper, and containing a join forces containing one of its arms.
    pub fn is_prime_filter(&self, f: Filter) -> bool {
        let g = f.generator;
        self.is_proper(f)
            && (0..self.size).all(|a| {
                (0..self.size)
                    .all(|b| !self.leq[g][self.join[a][b]] || self.leq[g][a] || self.leq[g][b])
            })
    }

    /// Proper and maximal among proper filters, checked directly against the
    /// filter list: a proper filter strictly containing this one would be
    /// generated by a strictly smaller non-bot element.
    pub fn is_ultrafilter(&self, f: Filter) -> bool {
        let g = f.generator;
        self.is_proper(f)
            && (0..self.size)
                .all(|h| !(h != self.bot && h != g && self.leq[h][g]))
    }

    pub fn ultrafilters(&self) -> Vec<Filter> {
        self.filters()
            .into_iter()
            .filter(|&f| self.is_ultrafilter(f))
            .collect()
    }

    /// Elements covering bot.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| {
                x != self.bot
                    && (0..self.size).all(|y| !(self.leq[y][x] && y != x && y != self.bot))
            })
            .collect()
    }

    /// Top is join-irreducible: a join reaches top only through an arm that
    /// is already top. This is the algebraic form of the disjunction
    /// property.
    pub fn has_dp(&self) -> bool {
        (0..self.size).all(|a| {
            (0..self.size)
                .all(|b| self.join[a][b] != self.top || a == self.top || b == self.top)
        })
    }

    /// The indicator map of `f` is a homomorphism onto the two-element
    /// algebra: it preserves bot, top, meet, join, implication and negation.
    /// Holds exactly when `f` is an ultrafilter; weaker filters break join
    /// or implication preservation.
    pub fn indicator_is_hom(&self, f: Filter) -> bool {
        let h = |x: usize| self.filter_contains(f, x);
        if h(self.bot) || !h(self.top) {
            return false;
        }
        for a in 0..self.size {
            if h(self.neg[a]) != !h(a) {
                return false;
            }
            for b in 0..self.size {
                if h(self.meet[a][b]) != (h(a) && h(b))
                    || h(self.join[a][b]) != (h(a) || h(b))
                    || h(self.imp[a][b]) != (!h(a) || h(b))
                {
                    return false;
                }
            }
        }
        true
    }
}

/// A filter of a finite lattice, identified by its least element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Filter {
    pub generator: usize,
}

fn is_downset(rel: &[Vec<bool>], mask: u32) -> bool {
    let k = rel.len();
    for v in 0..k {
        if mask >> v & 1 == 1 {
            for u in 0..k {
                if rel[u][v] && mask >> u & 1 == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// The algebra of downward-closed subsets of a strict poset (`rel[u][v]`
/// meaning `u < v`), ordered by inclusion. Elements are numbered by
/// (cardinality, bitmask), so bot is index 0 and top is the last index.
pub fn downset_lattice(rel: &[Vec<bool>]) -> HeytingAlgebra {
    downset_lattice_with_masks(rel).0
}

/// As [`downset_lattice`], also returning the downset bitmask each element
/// index denotes, for callers that need to translate subsets of the poset
/// into algebra elements.
pub fn downset_lattice_with_masks(rel: &[Vec<bool>]) -> (HeytingAlgebra, Vec<u32>) {
    let k = rel.len();
    assert!(k >= 1 && k <= 31, "poset size out of range");
    let mut masks: Vec<u32> = (0..1u32 << k).filter(|&m| is_downset(rel, m)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let n = masks.len();
    let mut pos = vec![usize::MAX; 1 << k];
    for (i, &m) in masks.iter().enumerate() {
        pos[m as usize] = i;
    }

    let leq: Vec<Vec<bool>> = masks
        .iter()
        .map(|&a| masks.iter().map(|&b| a & !b == 0).collect())
        .collect();
    let meet: Vec<Vec<usize>> = masks
        .iter()
        .map(|&a| masks.iter().map(|&b| pos[(a & b) as usize]).collect())
        .collect();
    let join: Vec<Vec<usize>> = masks
        .iter()
        .map(|&a| masks.iter().map(|&b| pos[(a | b) as usize]).collect())
        .collect();
    // a -> b is the union of all downsets d with d & a <= b; the union
    // itself qualifies, so it is the greatest such
    let imp: Vec<Vec<usize>> = masks
        .iter()
        .map(|&a| {
            masks
                .iter()
                .map(|&b| {
                    let mut big = 0u32;
                    for &d in &masks {
                        if d & a & !b == 0 {
                            big |= d;
                        }
                    }
                    pos[big as usize]
                })
                .collect()
        })
        .collect();
    let bot = pos[0];
    let neg: Vec<usize> = (0..n).map(|a| imp[a][bot]).collect();
    let alg = HeytingAlgebra {
        size: n,
        leq,
        bot,
        top: pos[((1u32 << k) - 1) as usize],
        meet,
        join,
        imp,
        neg,
    };
    debug_assert!(alg.verify().is_accepted());
    (alg, masks)
}

/// Recovers the full operation tables from an order relation alone, then
/// verifies the result. Fails with a verdict naming the missing structure
/// when the order is not a bounded distributive lattice with residuals.
pub fn from_leq(leq: Vec<Vec<bool>>) -> Result<HeytingAlgebra, Verdict> {
    let n = leq.len();
    if n < 2 || leq.iter().any(|r| r.len() != n) {
        return Err(Verdict::rejected("table-shape"));
    }
    let bot = (0..n)
        .find(|&z| (0..n).all(|x| leq[z][x]))
        .ok_or_else(|| Verdict::rejected("bot-least").with_witness("no least element"))?;
    let top = (0..n)
        .find(|&z| (0..n).all(|x| leq[x][z]))
        .ok_or_else(|| Verdict::rejected("top-greatest").with_witness("no greatest element"))?;

    let mut meet = vec![vec![0usize; n]; n];
    let mut join = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let lbs: Vec<usize> = (0..n).filter(|&x| leq[x][a] && leq[x][b]).collect();
            meet[a][b] = lbs
                .iter()
                .copied()
                .find(|&m| lbs.iter().all(|&x| leq[x][m]))
                .ok_or_else(|| {
                    Verdict::rejected("meet-is-glb").with_witness(format!("a={a} b={b}"))
                })?;
            let ubs: Vec<usize> = (0..n).filter(|&x| leq[a][x] && leq[b][x]).collect();
            join[a][b] = ubs
                .iter()
                .copied()
                .find(|&j| ubs.iter().all(|&x| leq[j][x]))
                .ok_or_else(|| {
                    Verdict::rejected("join-is-lub").with_witness(format!("a={a} b={b}"))
                })?;
        }
    }

    // candidate residual: join of every x with x & a <= b; verified below
    let mut imp = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut c = bot;
            for x in 0..n {
                if leq[meet[x][a]][b] {
                    c = join[c][x];
                }
            }
            imp[a][b] = c;
        }
    }
    let neg = (0..n).map(|a| imp[a][bot]).collect();

    let alg = HeytingAlgebra {
        size: n,
        leq,
        bot,
        top,
        meet,
        join,
        imp,
        neg,
    };
    match alg.verify() {
        Verdict::Accepted => Ok(alg),
        v => Err(v),
    }
}

/// Enumerates every finite Heyting algebra (exactly once up to isomorphism)
/// whose underlying poset has between 1 and `max_poset_size` elements.
/// Smaller posets come first; posets of one size follow the canonical order
/// of the poset catalog, so the sequence is stable across runs.
pub fn enumerate_algebras(max_poset_size: usize) -> Vec<HeytingAlgebra> {
    assert!(
        (1..=MAX_POSET_SIZE).contains(&max_poset_size),
        "max poset size must be between 1 and {MAX_POSET_SIZE}"
    );
    let mut out = Vec::new();
    for k in 1..=max_poset_size {
        for rel in posets::strict_posets(k) {
            out.push(downset_lattice(&rel));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_poset(k: usize) -> Vec<Vec<bool>> {
        let mut rel = vec![vec![false; k]; k];
        for u in 0..k {
            for v in u + 1..k {
                rel[u][v] = true;
            }
        }
        rel
    }

    // two incomparable points 1, 2 below a single point 0
    fn wedge_poset() -> Vec<Vec<bool>> {
        let mut rel = vec![vec![false; 3]; 3];
        rel[1][0] = true;
        rel[2][0] = true;
        rel
    }

    #[test]
    fn wedge_lattice_has_expected_shape() {
        let alg = downset_lattice(&wedge_poset());
        assert!(alg.verify().is_accepted());
        assert_eq!(alg.size, 5);
        assert_eq!((alg.bot, alg.top), (0, 4));
        assert_eq!(alg.atoms(), vec![1, 2]);
        assert!(!alg.leq[1][2] && !alg.leq[2][1]);
        assert_eq!(alg.meet[1][2], 0);
        assert_eq!(alg.join[1][2], 3);
        assert!(alg.leq[3][4] && !alg.leq[4][3]);
        assert!(alg.has_dp());
    }

    #[test]
    fn from_leq_round_trips_constructed_lattices() {
        for rel in [chain_poset(3), wedge_poset(), chain_poset(1)] {
            let alg = downset_lattice(&rel);
            let rebuilt = from_leq(alg.leq.clone()).expect("valid order must rebuild");
            assert_eq!(rebuilt, alg);
        }
    }

    #[test]
    fn broken_implication_is_reported_as_residuation() {
        let mut alg = downset_lattice(&chain_poset(2));
        assert_eq!(alg.imp[1][0], 0);
        alg.imp[1][0] = 2;
        assert_eq!(alg.verify().condition(), Some("residuation"));
    }

    #[test]
    fn non_distributive_diamond_is_rejected() {
        // bot 0, three pairwise incomparable atoms 1 2 3, top 4
        let n = 5;
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][n - 1] = true;
        }
        let mut meet = vec![vec![0usize; n]; n];
        let mut join = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                meet[a][b] = if leq[a][b] {
                    a
                } else if leq[b][a] {
                    b
                } else {
                    0
                };
                join[a][b] = if leq[a][b] {
                    b
                } else if leq[b][a] {
                    a
                } else {
                    n - 1
                };
            }
        }
        let alg = HeytingAlgebra {
            size: n,
            leq,
            bot: 0,
            top: n - 1,
            meet,
            join,
            imp: vec![vec![n - 1; n]; n],
            neg: vec![n - 1; n],
        };
        assert_eq!(alg.verify().condition(), Some("distributivity"));
    }

    #[test]
    fn enumeration_is_frozen_in_count_size_and_dp() {
        assert_eq!(enumerate_algebras(1).len(), 1);
        assert_eq!(enumerate_algebras(2).len(), 3);
        let algs = enumerate_algebras(3);
        assert_eq!(algs.len(), 8);
        let sizes: Vec<usize> = algs.iter().map(|a| a.size).collect();
        assert_eq!(sizes, [2, 4, 3, 8, 6, 5, 5, 4]);
        let dp: Vec<bool> = algs.iter().map(|a| a.has_dp()).collect();
        assert_eq!(
            dp,
            [true, false, true, false, false, false, true, true]
        );
        for alg in &algs {
            assert!(alg.verify().is_accepted());
        }
    }

    #[test]
    fn ultrafilters_are_exactly_atom_upsets() {
        for alg in enumerate_algebras(3) {
            let gens: Vec<usize> = alg.ultrafilters().iter().map(|f| f.generator).collect();
            assert_eq!(gens, alg.atoms());
        }
    }

    #[test]
    fn prime_and_maximal_filters_differ_on_chains() {
        let chain = downset_lattice(&chain_poset(2));
        let top_filter = Filter { generator: chain.top };
        assert!(chain.is_prime_filter(top_filter));
        assert!(!chain.is_ultrafilter(top_filter));

        let wedge = downset_lattice(&wedge_poset());
        let c = Filter { generator: 3 };
        assert!(wedge.is_proper(c));
        assert!(!wedge.is_prime_filter(c));

        let square = downset_lattice(&[vec![false, false], vec![false, false]]);
        assert!(!square.is_prime_filter(Filter { generator: square.top }));
    }

    #[test]
    fn indicator_hom_separates_ultrafilters_from_weaker_filters() {
        for alg in enumerate_algebras(3) {
            for f in alg.ultrafilters() {
                assert!(alg.indicator_is_hom(f));
            }
        }
        let chain = downset_lattice(&chain_poset(2));
        assert!(!chain.indicator_is_hom(Filter { generator: chain.top }));
    }

    #[test]
    fn contraposition_law_holds_in_every_algebra() {
        for alg in enumerate_algebras(3) {
            for a in 0..alg.size {
                for b in 0..alg.size {
                    let fwd = alg.imp[a][b];
                    let back = alg.imp[alg.neg[b]][alg.neg[a]];
                    assert_eq!(alg.imp[fwd][back], alg.top);
                }
            }
        }
    }
}
