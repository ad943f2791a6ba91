//! Multiplicative actions on `Z` by the monoid generated by a set `Sigma` of
//! pairwise coprime integers `> 1`: groupoid homology, torsion K-theory and
//! the HK comparison between them.

use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};
use thiserror::Error;

use crate::abelian::{
    graded_kunneth_mod2, parity_binomial_sum, Cardinality, FgAbGroup, GradedGroup, GroupDescriptor, PrimeSet, Z2Graded,
};
use crate::complex::{koszul_group_homology, tensor_complex, ChainComplex, CoefficientRing, ComplexError};
use crate::linalg::IntMatrix;
use crate::report::Check;

/// Largest `N` the brute-force homology accepts unless told otherwise.
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Debug, Error)]
pub enum DynError {
    #[error("the set of generators is empty")]
    Empty,
    #[error("generator {0} must be greater than 1")]
    TooSmall(u64),
    #[error("entries ({0},{1}) are not coprime: gcd {2}")]
    NotCoprime(u64, u64, u64),
    #[error("cannot parse generator list {0:?}")]
    Parse(String),
    #[error("this computation needs a finite generator set")]
    InfiniteFamily,
    #[error("brute force is limited to {bound} generators, got {n}")]
    TooLarge { n: usize, bound: usize },
    #[error("prefix {index} does not strictly extend the previous prefix")]
    NotIncreasing { index: usize },
    #[error("torsion of order {order} in degree {degree} is not coprime to the inverted primes")]
    TorsionNotCoprime { degree: i64, order: BigInt },
    #[error("integral and localized homology differ in degree {0}")]
    LocalizationMismatch(i64),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A generator set `Sigma`, or a finite prefix of an infinite one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaProfile {
    sigma: Vec<u64>,
    infinite: bool,
    g: u64,
    primes: PrimeSet,
}

impl SigmaProfile {
    pub fn sigma(&self) -> &[u64] {
        &self.sigma
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    pub fn n(&self) -> Cardinality {
        if self.infinite {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(self.sigma.len() as u64)
        }
    }

    /// `N` for a finite set.
    pub fn finite_n(&self) -> Result<usize, DynError> {
        if self.infinite {
            Err(DynError::InfiniteFamily)
        } else {
            Ok(self.sigma.len())
        }
    }

    /// `g = gcd { s - 1 }`.
    pub fn g(&self) -> u64 {
        self.g
    }

    /// For an infinite family `g` is read off a prefix and may still drop,
    /// unless it is already 1.
    pub fn g_provisional(&self) -> bool {
        self.infinite && self.g > 1
    }

    /// Primes dividing some generator.
    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sigma": self.sigma,
            "infinite": self.infinite,
            "N": self.n(),
            "g": self.g,
            "g_provisional": self.g_provisional(),
            "primes": self.primes.primes().collect::<Vec<_>>(),
        })
    }
}

/// Parses `3,5,7`.
pub fn parse_sigma(s: &str) -> Result<Vec<u64>, DynError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| DynError::Parse(s.to_string())))
        .collect()
}

pub fn build_sigma(values: &[u64], infinite: bool) -> Result<SigmaProfile, DynError> {
    if values.is_empty() {
        return Err(DynError::Empty);
    }
    if let Some(&v) = values.iter().find(|&&v| v <= 1) {
        return Err(DynError::TooSmall(v));
    }
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i + 1..] {
            let g = a.gcd(&b);
            if g != 1 {
                return Err(DynError::NotCoprime(a, b, g));
            }
        }
    }
    let mut sigma = values.to_vec();
    sigma.sort_unstable();
    let g = sigma.iter().fold(0u64, |acc, s| acc.gcd(&(s - 1)));
    Ok(SigmaProfile {
        primes: PrimeSet::dividing(sigma.iter().copied()),
        sigma,
        infinite,
        g,
    })
}

fn binomial(n: usize, k: i64) -> u64 {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = k as usize;
    (0..k.min(n - k)).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn z_mod(g: u64, mult: Cardinality) -> GroupDescriptor {
    GroupDescriptor::cyclic_power(g, mult)
}

/// Closed-form groupoid homology through degree `n_max`.
///
/// Finite `N`: `H_0 = Z/g`, `H_n = Z^C(N,n-1) + (Z/g)^C(N-1,n)` for
/// `0 < n < N`, `H_N = Z^N`, `H_{N+1} = Z`, zero above. Infinite:
/// `H_0 = Z/g` and `H_n = Z^inf + (Z/g)^inf` for `n >= 1`.
pub fn homology_closed_form(profile: &SigmaProfile, n_max: usize) -> GradedGroup {
    let g = profile.g;
    let mut out = GradedGroup::truncated(n_max as i64);
    out.insert(0, z_mod(g, 1u64.into()));
    if profile.infinite {
        for n in 1..=n_max {
            let free = GroupDescriptor::free(Cardinality::Infinite);
            out.insert(n as i64, free.plus(&z_mod(g, Cardinality::Infinite)));
        }
        return out;
    }
    let big_n = profile.sigma.len();
    for n in 1..=n_max.min(big_n + 1) {
        let group = if n < big_n {
            let free = GroupDescriptor::free(binomial(big_n, n as i64 - 1).into());
            free.plus(&z_mod(g, binomial(big_n - 1, n as i64).into()))
        } else if n == big_n {
            GroupDescriptor::free((big_n as u64).into())
        } else {
            GroupDescriptor::free(1u64.into())
        };
        out.insert(n as i64, group);
    }
    out
}

/// The tensor product of the complexes `P(s): Z --(s-1)--> Z`.
pub fn torsion_complex(profile: &SigmaProfile) -> Result<ChainComplex, DynError> {
    profile.finite_n()?;
    let mut acc = ChainComplex::concentrated(CoefficientRing::Integers, 0, 1);
    for &s in &profile.sigma {
        acc = tensor_complex(&acc, &ChainComplex::multiplication_by_pred(s as i64))?;
    }
    Ok(acc)
}

/// Groupoid homology from chain complexes: `H_p = /\^(p-1) Z^N + H_p(S, A)`,
/// where `H_*(S, A)` is the homology of [`torsion_complex`] and the exterior
/// powers come from the Koszul complex of the trivial `Z^N`-module.
pub fn homology_bruteforce(profile: &SigmaProfile, n_max: usize, max_n: usize) -> Result<GradedGroup, DynError> {
    let n = profile.finite_n()?;
    if n > max_n {
        return Err(DynError::TooLarge { n, bound: max_n });
    }
    let tensor = torsion_complex(profile)?;
    let torsion = tensor.homology();
    // Each s is a unit modulo s - 1, so inverting the primes of Sigma leaves
    // this torsion unchanged.
    for (degree, group) in torsion.iter() {
        for t in group.torsion() {
            if !profile.primes.coprime_to(&t.order) {
                return Err(DynError::TorsionNotCoprime {
                    degree,
                    order: t.order.clone(),
                });
            }
        }
    }
    let localized = tensor
        .with_ring(CoefficientRing::Localized(profile.primes.clone()))
        .homology();
    let hi = tensor.hi();
    if let Some(d) = (0..=hi).find(|&d| localized.group(d) != torsion.group(d)) {
        return Err(DynError::LocalizationMismatch(d));
    }

    let trivial = vec![IntMatrix::identity(1); n];
    let exterior = koszul_group_homology(&trivial, 1, CoefficientRing::Integers)?.shift(1);
    let mut out = GradedGroup::truncated(n_max as i64);
    for d in 0..=n_max as i64 {
        out.insert(d, exterior.group(d).plus(&torsion.group(d)));
    }
    Ok(out)
}

/// Torsion K-theory from the collapsing Atiyah-Hirzebruch spectral sequence:
/// `K_n = (Z/g)^m` with `m = sum C(N-1, p-1)` over `1 <= p <= N`,
/// `p = n + N (mod 2)`.
pub fn torsion_ktheory_e2(profile: &SigmaProfile) -> Result<Z2Graded, DynError> {
    let n = profile.finite_n()? as u64;
    let group = |parity: u64| {
        // p - 1 ranges over 0..=N-1 with p - 1 = parity + N + 1 (mod 2).
        let m = parity_binomial_sum(n - 1, (parity + n + 1) % 2);
        z_mod(profile.g, m.into())
    };
    Ok(Z2Graded::new(group(0), group(1)))
}

/// `K_*` of the tensor product of Cuntz algebras `O_s`, each with
/// `K_* = (Z/(s-1), 0)`.
pub fn torsion_ktheory_kunneth(profile: &SigmaProfile) -> Result<Z2Graded, DynError> {
    profile.finite_n()?;
    Ok(profile.sigma.iter().fold(Z2Graded::unit(), |acc, &s| {
        let cuntz = Z2Graded::new(FgAbGroup::cyclic(BigInt::from(s - 1)), FgAbGroup::zero());
        graded_kunneth_mod2(&acc, &cuntz)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkReport {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl HkReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Compares parity-summed homology with the torsion K-theory.
pub fn hk_check(profile: &SigmaProfile) -> Result<HkReport, DynError> {
    let n = profile.finite_n()?;
    let mut warnings = Vec::new();
    if n == 1 {
        warnings.push("the tensor product decomposition is stated for at least two generators".to_string());
    }
    let top = n as i64 + 1;
    let h = homology_closed_form(profile, top as usize);
    let even = h.parity_sum(false, top);
    let odd = h.parity_sum(true, top);
    let e2 = torsion_ktheory_e2(profile)?;
    let kunneth = torsion_ktheory_kunneth(profile)?;
    let free_total = 1u64 << (n - 1);

    let mut checks = vec![
        Check::new("torsion H_even = torsion K_0", &e2.even, even.torsion_part()),
        Check::new("torsion H_odd = torsion K_1", &e2.odd, odd.torsion_part()),
        Check::new("E2 page = Kunneth", &kunneth, &e2),
        Check::new("free rank H_even", free_total, even.free_rank()),
        Check::new("free rank H_odd", free_total, odd.free_rank()),
    ];
    if n >= 2 {
        let per_parity = z_mod(profile.g, (1u64 << (n - 2)).into());
        checks.push(Check::new("K_0 = (Z/g)^(2^(N-2))", &per_parity, &e2.even));
        checks.push(Check::new("K_1 = (Z/g)^(2^(N-2))", &per_parity, &e2.odd));
    }
    Ok(HkReport { checks, warnings })
}

/// Along a chain of strictly increasing finite prefixes of an infinite
/// family: `g` stabilizes, and in each degree `1..=n_max` free ranks and
/// torsion counts never decrease.
pub fn truncation_stability(prefixes: &[Vec<u64>], n_max: usize) -> Result<Vec<Check>, DynError> {
    let profiles = prefixes
        .iter()
        .map(|p| build_sigma(p, false))
        .collect::<Result<Vec<_>, _>>()?;
    for (i, w) in profiles.windows(2).enumerate() {
        let (a, b) = (&w[0].sigma, &w[1].sigma);
        if b.len() <= a.len() || !a.iter().all(|s| b.contains(s)) {
            return Err(DynError::NotIncreasing { index: i + 1 });
        }
    }
    let gs: Vec<u64> = profiles.iter().map(SigmaProfile::g).collect();
    let mut checks = Vec::new();
    if gs.len() >= 2 {
        let last = gs[gs.len() - 1];
        checks.push(Check::new("g stabilizes", last, gs[gs.len() - 2]).detail(format!("g along the chain: {gs:?}")));
    }
    let tables: Vec<GradedGroup> = profiles.iter().map(|p| homology_closed_form(p, n_max)).collect();
    for degree in 1..=n_max as i64 {
        let free: Vec<Cardinality> = tables.iter().map(|t| t.group(degree).free_rank()).collect();
        let tors: Vec<Cardinality> = tables.iter().map(|t| t.group(degree).torsion_count()).collect();
        checks.push(monotone(format!("free rank of H_{degree} non-decreasing"), &free));
        checks.push(monotone(format!("torsion count of H_{degree} non-decreasing"), &tors));
    }
    Ok(checks)
}

fn monotone(name: String, values: &[Cardinality]) -> Check {
    let ok = values.windows(2).all(|w| match (w[0], w[1]) {
        (Cardinality::Finite(a), Cardinality::Finite(b)) => a <= b,
        (_, Cardinality::Infinite) => true,
        (Cardinality::Infinite, Cardinality::Finite(_)) => false,
    });
    let shown: Vec<String> = values.iter().map(ToString::to_string).collect();
    Check::with_outcome(name, ok, "non-decreasing", shown.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(v: &[u64]) -> SigmaProfile {
        build_sigma(v, false).unwrap()
    }

    fn cyc(n: i64) -> GroupDescriptor {
        FgAbGroup::cyclic(n).into()
    }

    fn free(r: u64) -> GroupDescriptor {
        FgAbGroup::free(r).into()
    }

    #[test]
    fn building() {
        let p = sigma(&[5, 3]);
        assert_eq!(p.sigma(), &[3, 5]);
        assert_eq!(p.n(), Cardinality::Finite(2));
        assert_eq!(p.g(), 2);
        assert_eq!(p.primes().primes().collect::<Vec<_>>(), vec![3, 5]);
        assert_eq!(sigma(&[2, 3]).g(), 1);
        assert_eq!(sigma(&[6, 35]).primes().primes().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        let err = build_sigma(&[4, 6], false).unwrap_err();
        assert!(matches!(err, DynError::NotCoprime(4, 6, 2)));
        assert!(err.to_string().contains("(4,6)"));
        assert!(matches!(build_sigma(&[3, 1], false), Err(DynError::TooSmall(1))));
        assert!(matches!(build_sigma(&[], false), Err(DynError::Empty)));
        assert!(matches!(
            build_sigma(&[3, 3], false),
            Err(DynError::NotCoprime(3, 3, 3))
        ));
        assert!(build_sigma(&[3, 5], true).unwrap().g_provisional());
        assert!(!build_sigma(&[2, 3], true).unwrap().g_provisional());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_sigma("3,5, 7").unwrap(), vec![3, 5, 7]);
        assert!(parse_sigma("3,,5").is_err());
        assert!(parse_sigma("3,-5").is_err());
    }

    #[test]
    fn closed_form_examples() {
        let h = homology_closed_form(&sigma(&[3, 5]), 6);
        let expected = GradedGroup::from_groups([(0, cyc(2)), (1, free(1).plus(&cyc(2))), (2, free(2)), (3, free(1))]);
        assert_eq!(h, expected.truncate(6));
        let h = homology_closed_form(&sigma(&[2]), 4);
        assert_eq!(h, GradedGroup::from_groups([(1, free(1)), (2, free(1))]).truncate(4));
        let h = homology_closed_form(&sigma(&[7]), 3);
        assert_eq!(
            h,
            GradedGroup::from_groups([(0, cyc(6)), (1, free(1)), (2, free(1))]).truncate(3)
        );
    }

    #[test]
    fn infinite_family() {
        let h = homology_closed_form(&build_sigma(&[3, 5, 7], true).unwrap(), 3);
        assert_eq!(h.get(0).unwrap(), cyc(2));
        for n in 1..=3 {
            assert_eq!(h.get(n).unwrap().to_string(), "Z^inf + (Z/2)^inf");
        }
        let h = homology_closed_form(&build_sigma(&[2, 3], true).unwrap(), 2);
        assert!(h.get(0).unwrap().is_zero());
        assert_eq!(h.get(2).unwrap().to_string(), "Z^inf");
        assert!(matches!(
            torsion_ktheory_e2(&build_sigma(&[3], true).unwrap()),
            Err(DynError::InfiniteFamily)
        ));
    }

    #[test]
    fn brute_force_examples() {
        for s in [&[3, 5][..], &[2, 3, 5], &[3], &[2], &[3, 5, 7], &[4, 9, 25]] {
            let p = sigma(s);
            let n = s.len() + 3;
            assert_eq!(
                homology_bruteforce(&p, n, DEFAULT_MAX_N).unwrap(),
                homology_closed_form(&p, n),
                "{s:?}"
            );
        }
        let h = homology_bruteforce(&sigma(&[3]), 3, DEFAULT_MAX_N).unwrap();
        assert_eq!(h.get(0).unwrap(), cyc(2));
        assert_eq!(h.get(1).unwrap(), free(1));
        assert_eq!(h.get(2).unwrap(), free(1));
        let wide = sigma(&[2, 3, 5, 7, 11, 13, 17]);
        assert!(matches!(
            homology_bruteforce(&wide, 3, DEFAULT_MAX_N),
            Err(DynError::TooLarge { n: 7, bound: 6 })
        ));
    }

    #[test]
    fn torsion_complex_homology() {
        let h = torsion_complex(&sigma(&[3, 5, 7])).unwrap().homology();
        assert_eq!(
            h,
            GradedGroup::from_groups([
                (0, cyc(2)),
                (1, GroupDescriptor::cyclic_power(2, 2u64.into())),
                (2, cyc(2))
            ])
        );
    }

    #[test]
    fn ktheory_examples() {
        let p = sigma(&[3, 5]);
        let expected = Z2Graded::new(cyc(2), cyc(2));
        assert_eq!(torsion_ktheory_e2(&p).unwrap(), expected);
        assert_eq!(torsion_ktheory_kunneth(&p).unwrap(), expected);
        let three = sigma(&[3, 5, 7]);
        let pair = Z2Graded::new(
            GroupDescriptor::cyclic_power(2, 2u64.into()),
            GroupDescriptor::cyclic_power(2, 2u64.into()),
        );
        assert_eq!(torsion_ktheory_e2(&three).unwrap(), pair);
        assert!(torsion_ktheory_e2(&sigma(&[2, 3, 5])).unwrap().is_zero());
        assert!(torsion_ktheory_kunneth(&sigma(&[2, 9])).unwrap().is_zero());
        let single = Z2Graded::new(cyc(2), GroupDescriptor::zero());
        assert_eq!(torsion_ktheory_kunneth(&sigma(&[3])).unwrap(), single);
        assert_eq!(torsion_ktheory_e2(&sigma(&[3])).unwrap(), single);
    }

    #[test]
    fn hk_examples() {
        for s in [&[3, 5][..], &[2, 3, 5], &[3, 5, 7], &[3, 5, 7, 11]] {
            let r = hk_check(&sigma(s)).unwrap();
            assert!(r.pass(), "{s:?}: {:?}", r.checks);
            assert!(r.warnings.is_empty());
        }
        let r = hk_check(&sigma(&[3])).unwrap();
        assert!(r.pass());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn stability_chain() {
        let chain = vec![vec![3], vec![3, 5], vec![3, 5, 7]];
        let checks = truncation_stability(&chain, 4).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        let h1_tors = checks
            .iter()
            .find(|c| c.name == "torsion count of H_1 non-decreasing")
            .unwrap();
        assert_eq!(h1_tors.actual, "0, 1, 2");
        let h1_free = checks
            .iter()
            .find(|c| c.name == "free rank of H_1 non-decreasing")
            .unwrap();
        assert_eq!(h1_free.actual, "1, 1, 1");
        assert!(matches!(
            truncation_stability(&[vec![3, 5], vec![3, 7]], 3),
            Err(DynError::NotIncreasing { index: 1 })
        ));
        let unstable = truncation_stability(&[vec![3], vec![3, 4]], 2).unwrap();
        assert!(!unstable[0].pass);
    }
}
