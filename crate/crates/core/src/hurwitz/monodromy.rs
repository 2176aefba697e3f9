use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use super::Permutation;
use crate::complex::{trace_faces, Color, LineComplex};
use crate::{Error, Rational, Result};

/// Monodromy of a finite branched covering of the sphere.
///
/// `sigma[i]` is the sheet permutation around `a_{i+1}`. The product
/// `σ_q ∘ ... ∘ σ_1` (apply `σ_1` first) is the identity and the group they
/// generate is transitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyDatum {
    n: usize,
    sigma: Vec<Permutation>,
}

impl MonodromyDatum {
    pub fn new(n: usize, sigma: Vec<Permutation>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMonodromy(
                "at least one sheet is required".into(),
            ));
        }
        if sigma.len() < 2 {
            return Err(Error::InvalidMonodromy(format!(
                "need q ≥ 2 branch values, got {}",
                sigma.len()
            )));
        }
        if let Some((i, p)) = sigma.iter().enumerate().find(|(_, p)| p.degree() != n) {
            return Err(Error::InvalidMonodromy(format!(
                "σ_{} acts on {} sheets instead of {n}",
                i + 1,
                p.degree()
            )));
        }
        let d = MonodromyDatum { n, sigma };
        if !d.prefix_products().last().unwrap().is_identity() {
            return Err(Error::ProductNotIdentity);
        }
        let orbit = d.orbit_of_first_sheet();
        if orbit < n {
            return Err(Error::NonTransitive { orbit, n });
        }
        Ok(d)
    }

    /// Parses one cycle string per branch value.
    pub fn parse(n: usize, sigma: &[&str]) -> Result<Self> {
        let perms = sigma
            .iter()
            .map(|s| Permutation::parse(s, n))
            .collect::<Result<Vec<_>>>()?;
        MonodromyDatum::new(n, perms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[Permutation] {
        &self.sigma
    }

    /// `μ_i = σ_i ∘ ... ∘ σ_0` for `i = 0..q`.
    fn prefix_products(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::with_capacity(self.q());
        for s in &self.sigma {
            let next = match out.last() {
                Some(m) => m.then(s),
                None => s.clone(),
            };
            out.push(next);
        }
        out
    }

    fn orbit_of_first_sheet(&self) -> usize {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for s in &self.sigma {
                let j = s.apply(i);
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count
    }
}

impl fmt::Display for MonodromyDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sigma.iter().map(|p| p.to_string()).collect();
        write!(f, "n={} σ=[{}]", self.n, parts.join(", "))
    }
}

/// The line complex of the covering.
///
/// Inner vertex `j` (id `j`) is the inner half of sheet `j`, outer vertex
/// `j` (id `n + j`) the outer half. Crossing side `(a_i a_{i+1})` from inner
/// half `j` leads to outer half `μ_i⁻¹(j)`. With this choice the face over
/// `a_i` through inner vertex `j` visits the inner vertices of the cycle of
/// `σ_i` containing `j`, so its order is that cycle's length.
pub fn build_from_monodromy(d: &MonodromyDatum) -> LineComplex {
    let n = d.n();
    let mut colors = vec![Color::Inner; n];
    colors.extend(std::iter::repeat(Color::Outer).take(n));
    let mut edges = Vec::with_capacity(n * d.q());
    for (i, mu) in d.prefix_products().iter().enumerate() {
        let tau = mu.inverse();
        for j in 0..n {
            edges.push((j, n + tau.apply(j), i));
        }
    }
    LineComplex::from_edges(d.q(), colors, &edges)
}

/// Status of `V = 2 - 2/n`, which holds exactly for closed genus-0
/// coverings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeanIdentity {
    Holds,
    Fails,
    /// Genus is positive; the identity is not claimed there.
    NotApplicable,
}

impl fmt::Display for MeanIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeanIdentity::Holds => "holds",
            MeanIdentity::Fails => "fails",
            MeanIdentity::NotApplicable => "not applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSummary {
    pub n: usize,
    pub q: usize,
    /// `b = Σ (cycle length - 1)` over all cycles of all `σ_i`.
    pub total_branching: usize,
    /// `χ = 2n - b`.
    pub euler_characteristic: i64,
    pub genus: usize,
    /// `b / n`.
    pub mean_ramification: Rational,
    pub mean_identity: MeanIdentity,
}

/// Branching, Euler characteristic and mean ramification, counted from the
/// cycle structure of the permutations alone.
pub fn covering_summary(d: &MonodromyDatum) -> CoveringSummary {
    let b = d.sigma().iter().map(Permutation::branching).sum();
    summarize(d.n(), d.q(), b)
}

/// The same summary read off the faces of a finite complex: a face of
/// order `m` is a branch point of order `m - 1`. Used for complexes that
/// come without monodromy, e.g. from a neighbor table.
pub fn complex_summary(c: &LineComplex) -> Result<CoveringSummary> {
    let n = c.count_color(Color::Inner);
    if n == 0 || c.count_color(Color::Outer) != n {
        return Err(Error::Precondition(format!(
            "a closed covering has as many inner as outer half sheets ({} and {})",
            n,
            c.count_color(Color::Outer)
        )));
    }
    let mut b = 0;
    for f in trace_faces(c)? {
        match f.order.m() {
            Some(m) => b += m - 1,
            None => return Err(Error::Precondition("complex has an infinite face".into())),
        }
    }
    Ok(summarize(n, c.q(), b))
}

fn summarize(n: usize, q: usize, b: usize) -> CoveringSummary {
    let chi = 2 * n as i64 - b as i64;
    // b is even: the product of the σ_i is even
    let genus = ((2 - chi) / 2).max(0) as usize;
    let mean = Rational::new(BigInt::from(b), BigInt::from(n));
    let mean_identity = if genus > 0 {
        MeanIdentity::NotApplicable
    } else if mean == Rational::new(BigInt::from(2 * n - 2), BigInt::from(n)) {
        MeanIdentity::Holds
    } else {
        MeanIdentity::Fails
    };
    CoveringSummary {
        n,
        q,
        total_branching: b,
        euler_characteristic: chi,
        genus,
        mean_ramification: mean,
        mean_identity,
    }
}

/// Uniformly random transitive monodromy on `n` sheets with `q` branch
/// values: the first `q - 1` permutations are uniform and the last one
/// closes the product. Draws are repeated until the group is transitive.
pub fn random_datum<G: Rng>(rng: &mut G, n: usize, q: usize) -> MonodromyDatum {
    assert!(n >= 1 && q >= 2);
    loop {
        let mut sigma: Vec<Permutation> = (0..q - 1)
            .map(|_| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(rng);
                Permutation::from_images(p).expect("shuffle is a bijection")
            })
            .collect();
        close_product(&mut sigma);
        if let Ok(d) = MonodromyDatum::new(n, sigma) {
            return d;
        }
    }
}

/// Random transitive monodromy of genus 0.
///
/// The edges of a random spanning tree on the sheets, taken as
/// transpositions in random order, are dealt out to `σ_1, ..., σ_{q-1}`.
/// Each of these branches once per edge it received and their product is
/// an `n`-cycle, so the closing permutation branches `n - 1` times and
/// `b = 2n - 2`.
pub fn random_planar_datum<G: Rng>(rng: &mut G, n: usize, q: usize) -> MonodromyDatum {
    assert!(n >= 1 && q >= 2);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (order[rng.gen_range(0..i)], order[i]))
        .collect();
    edges.shuffle(rng);
    let mut sigma = vec![Permutation::identity(n); q - 1];
    for (a, b) in edges {
        let i = rng.gen_range(0..q - 1);
        let t = Permutation::from_cycles(n, &[vec![a, b]]).expect("distinct sheets");
        sigma[i] = sigma[i].then(&t);
    }
    close_product(&mut sigma);
    MonodromyDatum::new(n, sigma).expect("spanning tree makes the group transitive")
}

fn close_product(sigma: &mut Vec<Permutation>) {
    let product = sigma
        .iter()
        .skip(1)
        .fold(sigma[0].clone(), |acc, s| acc.then(s));
    sigma.push(product.inverse());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate;
    use crate::scalar::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn datum(n: usize, sigma: &[&str]) -> MonodromyDatum {
        MonodromyDatum::parse(n, sigma).unwrap()
    }

    fn face_orders(c: &LineComplex) -> Vec<usize> {
        let mut m: Vec<_> = trace_faces(c)
            .unwrap()
            .iter()
            .filter_map(|f| f.order.m())
            .collect();
        m.sort();
        m
    }

    #[test]
    fn one_sheet_is_the_bigon_complex() {
        let d = datum(1, &["id", "id", "id"]);
        let c = build_from_monodromy(&d);
        assert_eq!(c, LineComplex::bigon_complex(3));
        let s = covering_summary(&d);
        assert_eq!(s.mean_ramification, ratio(0, 1));
        assert_eq!(s.mean_identity, MeanIdentity::Holds);
    }

    #[test]
    fn two_sheets_two_branch_points() {
        let d = datum(2, &["(12)", "(12)"]);
        let c = build_from_monodromy(&d);
        assert!(validate(&c).is_valid());
        assert_eq!((c.vertex_count(), c.edge_count()), (4, 4));
        assert_eq!(face_orders(&c), [2, 2]);
        let s = covering_summary(&d);
        assert_eq!((s.total_branching, s.genus), (2, 0));
        assert_eq!(s.mean_ramification, ratio(1, 1));
    }

    #[test]
    fn elliptic_curve() {
        let d = datum(2, &["(12)"; 4]);
        let c = build_from_monodromy(&d);
        assert!(validate(&c).is_valid());
        assert_eq!(c.edge_count(), 8);
        assert_eq!(face_orders(&c), [2, 2, 2, 2]);
        let s = covering_summary(&d);
        assert_eq!((s.euler_characteristic, s.genus), (0, 1));
        assert_eq!(s.mean_identity, MeanIdentity::NotApplicable);
    }

    #[test]
    fn cyclic_triple_cover() {
        let d = datum(3, &["(123)", "(132)"]);
        let s = covering_summary(&d);
        assert_eq!(s.total_branching, 4);
        assert_eq!(s.mean_ramification, ratio(4, 3));
        assert_eq!(s.genus, 0);
        let c = build_from_monodromy(&datum(3, &["(123)", "(132)", "id"]));
        assert!(validate(&c).is_valid());
        assert_eq!(face_orders(&c), [1, 1, 1, 3, 3]);
    }

    #[test]
    fn faces_give_the_same_summary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=8);
            let q = rng.gen_range(2..=5);
            let d = random_datum(&mut rng, n, q);
            let c = build_from_monodromy(&d);
            assert_eq!(complex_summary(&c).unwrap(), covering_summary(&d), "{d}");
        }
        assert!(complex_summary(&LineComplex::from_edges(2, vec![Color::Inner], &[])).is_err());
    }

    #[test]
    fn planar_data_have_genus_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let n = rng.gen_range(1..=8);
            let q = rng.gen_range(2..=5);
            let s = covering_summary(&random_planar_datum(&mut rng, n, q));
            assert_eq!(s.genus, 0);
            assert_eq!(s.mean_identity, MeanIdentity::Holds);
        }
    }

    #[test]
    fn invalid_data() {
        assert_eq!(
            MonodromyDatum::parse(2, &["(12)", "id"]),
            Err(Error::ProductNotIdentity)
        );
        assert_eq!(
            MonodromyDatum::parse(3, &["(12)", "(12)"]),
            Err(Error::NonTransitive { orbit: 2, n: 3 })
        );
        assert!(matches!(
            MonodromyDatum::parse(2, &["(12)"]),
            Err(Error::InvalidMonodromy(_))
        ));
    }

    #[test]
    fn faces_match_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=7);
            let q = rng.gen_range(2..=5);
            let d = if rng.gen() {
                random_datum(&mut rng, n, q)
            } else {
                random_planar_datum(&mut rng, n, q)
            };
            let c = build_from_monodromy(&d);
            assert!(validate(&c).is_valid(), "{d}");
            for i in 0..q {
                let mut from_faces: Vec<usize> = trace_faces(&c)
                    .unwrap()
                    .iter()
                    .filter(|f| f.branch == i)
                    .map(|f| f.order.m().unwrap())
                    .collect();
                let mut from_cycles: Vec<usize> =
                    d.sigma()[i].cycles().iter().map(Vec::len).collect();
                from_faces.sort();
                from_cycles.sort();
                assert_eq!(from_faces, from_cycles, "{d}, branch {i}");
            }
        }
    }
}
