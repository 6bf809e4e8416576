use super::{colim, hocolim, Colimit, FiniteDiagram, Poset};
use crate::chainkit::{ChainMap, FreeComplex};
use crate::error::Result;

/// Twisted arrow category of a poset: objects are pairs `a ≤ b`, with
/// `(a ≤ b) -> (c ≤ d)` iff `a ≤ c ≤ d ≤ b`.
#[derive(Clone, Debug)]
pub struct TwistedArrows {
    pub poset: Poset,
    /// Object `i` is the arrow `pairs[i] = (a, b)`.
    pub pairs: Vec<(usize, usize)>,
}

pub fn twisted_arrow(base: &Poset) -> TwistedArrows {
    let pairs: Vec<(usize, usize)> = (0..base.len())
        .flat_map(|a| {
            (0..base.len())
                .filter(move |&b| base.leq(a, b))
                .map(move |b| (a, b))
        })
        .collect();
    let mut rel = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            if i != j && base.leq(a, c) && base.leq(d, b) {
                rel.push((i, j));
            }
        }
    }
    TwistedArrows {
        poset: Poset::from_relations(pairs.len(), &rel).expect("twisted arrows form a poset"),
        pairs,
    }
}

/// A functor `C^op × C -> Ch` on a poset, given by its values `F(b, a)` on
/// arrows `a ≤ b` and by its action on covers of the twisted arrow poset:
/// `act((a, b), (c, d))` for `a ≤ c ≤ d ≤ b` is `F(b, a) -> F(d, c)`.
pub struct Bifunctor<'a> {
    pub value: &'a dyn Fn(usize, usize) -> FreeComplex,
    pub act: &'a dyn Fn((usize, usize), (usize, usize)) -> Result<ChainMap>,
}

/// The diagram `(a ≤ b) ↦ F(b, a)` over the twisted arrow poset.
pub fn twisted_diagram(base: &Poset, f: &Bifunctor) -> Result<(TwistedArrows, FiniteDiagram)> {
    let tw = twisted_arrow(base);
    let objects = tw.pairs.iter().map(|&(a, b)| (f.value)(b, a)).collect();
    let pairs = tw.pairs.clone();
    let d = FiniteDiagram::from_fn(tw.poset.clone(), objects, |i, j| {
        (f.act)(pairs[i], pairs[j])
    })?;
    Ok((tw, d))
}

/// `∫^a F(a, a)` as the colimit over twisted arrows.
pub fn coend(base: &Poset, f: &Bifunctor) -> Result<Colimit> {
    let (_, d) = twisted_diagram(base, f)?;
    colim(&d)
}

/// Homotopy coend: the homotopy colimit over twisted arrows.
pub fn hocoend(base: &Poset, f: &Bifunctor) -> Result<FreeComplex> {
    let (_, d) = twisted_diagram(base, f)?;
    hocolim(&d)
}
