//! Seeded random generators and the property suites behind `verify all`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{Cardinality, GradedGroup, GroupDescriptor};
use crate::complex::{cyclic_group_homology, kunneth_oracle_check, ChainComplex, CoefficientRing};
use crate::intdyn::{
    build_sigma, hk_check, homology_bruteforce, homology_closed_form, torsion_complex, torsion_ktheory_e2,
    torsion_ktheory_kunneth, DEFAULT_MAX_N,
};
use crate::linalg::{exterior_power_matrix, integer_kernel_basis, snf, IntMatrix, RatMatrix, SnfResult};
use crate::numfield::{
    build_profile, finite_model_limit_check, norm, sign_of, theta_matrix, vanishing_check, FieldElement, Poly,
};
use crate::report::Check;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-bound..=bound)))
}

/// Entries `p/q` with `|p| <= bound` and `1 <= q <= max_den`.
pub fn random_rat_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64, max_den: i64) -> RatMatrix {
    RatMatrix::from_fn(rows, cols, |_, _| random_rational(rng, bound, max_den))
}

fn random_rational(rng: &mut impl Rng, bound: i64, max_den: i64) -> BigRational {
    BigRational::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=max_den).into())
}

/// A complex of free `Z`-modules in degrees `0..=top` (`top <= max_top`),
/// ranks at most `max_rank`, boundary entries in `[-bound, bound]`.
///
/// Each boundary is a random combination of the kernel basis of the previous
/// one, retried until its entries are in range and replaced by zero otherwise.
pub fn random_free_complex(rng: &mut impl Rng, max_top: usize, max_rank: usize, bound: i64) -> ChainComplex {
    let top = rng.gen_range(0..=max_top);
    let lo = rng.gen_range(-1..=1);
    let ranks: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut boundaries: Vec<IntMatrix> = Vec::with_capacity(top);
    for k in 0..top {
        let (rows, cols) = (ranks[k], ranks[k + 1]);
        let b = match boundaries.last() {
            None => random_int_matrix(rng, rows, cols, bound),
            Some(prev) => {
                let kernel = integer_kernel_basis(prev);
                let mut chosen = IntMatrix::zeros(rows, cols);
                if kernel.cols() > 0 {
                    for _ in 0..20 {
                        let r = random_int_matrix(rng, kernel.cols(), cols, 2);
                        let candidate = &kernel * &r;
                        if candidate.entries().iter().all(|e| e.abs() <= BigInt::from(bound)) {
                            chosen = candidate;
                            break;
                        }
                    }
                }
                chosen
            }
        };
        boundaries.push(b);
    }
    ChainComplex::new(CoefficientRing::Integers, lo, ranks, boundaries).expect("boundaries compose to zero")
}

/// A nonzero element with coefficients `p/q`, `|p| <= bound`, `q <= 3`.
pub fn random_field_element(rng: &mut impl Rng, f: &Poly, bound: i64) -> FieldElement {
    loop {
        let coeffs = (0..f.degree()).map(|_| random_rational(rng, bound, 3)).collect();
        let a = FieldElement::new(coeffs, f);
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_descriptor(rng: &mut impl Rng) -> GroupDescriptor {
    fn card(rng: &mut impl Rng) -> Cardinality {
        if rng.gen_bool(0.2) {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(rng.gen_range(0..4))
        }
    }
    let free = card(rng);
    let parts: Vec<(BigInt, Cardinality)> = (0..rng.gen_range(0..4))
        .map(|_| (BigInt::from(rng.gen_range(0..40)), card(rng)))
        .collect();
    GroupDescriptor::new(free, parts)
}

/// Checks that `s` certifies the Smith normal form of `m`.
pub fn snf_certificate(m: &IntMatrix, s: &SnfResult) -> Result<(), String> {
    if &(&s.u * m) * &s.v != s.d {
        return Err("U * M * V != D".into());
    }
    for (name, x) in [("U", &s.u), ("V", &s.v)] {
        let det = x.det().map_err(|e| e.to_string())?;
        if det.abs() != BigInt::one() {
            return Err(format!("det {name} = {det}"));
        }
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.get(i, j).is_zero() {
                return Err(format!("off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        if w[0].is_negative() || w[1].is_negative() {
            return Err("negative diagonal entry".into());
        }
        let divides = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        if !divides {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    Ok(())
}

/// Pairwise coprime subsets of `2..=max_entry` of size `1..=max_n`.
pub fn coprime_sigmas(max_entry: u64, max_n: usize) -> Vec<Vec<u64>> {
    let values: Vec<u64> = (2..=max_entry).collect();
    (1..=max_n)
        .flat_map(|k| values.iter().copied().combinations(k))
        .filter(|s| s.iter().tuple_combinations().all(|(a, b)| a.gcd(b) == 1))
        .collect()
}

fn tally(name: String, total: usize, failures: Vec<String>) -> Check {
    let check = Check::with_outcome(
        name,
        failures.is_empty(),
        format!("0 failures in {total} cases"),
        format!("{} failures in {total} cases", failures.len()),
    );
    match failures.first() {
        Some(f) => check.detail(format!("first failure: {f}")),
        None => check,
    }
}

pub fn snf_suite(rng: &mut impl Rng, count: usize, max_dim: usize, bound: i64) -> Check {
    let mut failures = Vec::new();
    for _ in 0..count {
        let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
        let m = random_int_matrix(rng, r, c, bound);
        if let Err(e) = snf_certificate(&m, &snf(&m)) {
            failures.push(format!("{m:?}: {e}"));
        }
    }
    tally(
        format!("Smith normal form certificates ({count} matrices)"),
        count,
        failures,
    )
}

pub fn exterior_suite(rng: &mut impl Rng, count: usize) -> Check {
    let mut failures = Vec::new();
    for _ in 0..count {
        let a = random_rat_matrix(rng, 4, 4, 5, 4);
        let b = random_rat_matrix(rng, 4, 4, 5, 4);
        let ext = |m: &RatMatrix, q| exterior_power_matrix(m, q).expect("q <= 4");
        if let Some(q) = (0..=4).find(|&q| ext(&(&a * &b), q) != &ext(&a, q) * &ext(&b, q)) {
            failures.push(format!("q = {q}: {a:?} {b:?}"));
        }
    }
    tally(
        format!("exterior powers are multiplicative ({count} pairs)"),
        count,
        failures,
    )
}

pub fn kunneth_suite(rng: &mut impl Rng, count: usize) -> Check {
    let mut failures = Vec::new();
    for _ in 0..count {
        let c = random_free_complex(rng, 3, 3, 4);
        let d = random_free_complex(rng, 3, 3, 4);
        let k = kunneth_oracle_check(&c, &d).expect("both over Z");
        if !k.pass {
            failures.push(format!("direct {} vs assembled {}", k.direct, k.assembled));
        }
    }
    tally(
        format!("Kunneth assembly matches tensor homology ({count} pairs)"),
        count,
        failures,
    )
}

/// Sign multiplicativity, theta multiplicativity and the top-degree identity
/// on random elements; elements with `|N(a)| > 1` whose theta action has a
/// fixed vector below the top degree are returned as notes.
pub fn theta_suite(rng: &mut impl Rng, fields: &[&str], per_field: usize) -> (Check, Vec<String>) {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for s in fields {
        let f: Poly = s.parse().expect("built-in field polynomial");
        let d = f.degree();
        let elems: Vec<FieldElement> = (0..=per_field).map(|_| random_field_element(rng, &f, 4)).collect();
        for (a, b) in elems.iter().tuple_windows() {
            let ab = a.mul(b, &f);
            if sign_of(&ab, &f).unwrap() != sign_of(a, &f).unwrap() * sign_of(b, &f).unwrap() {
                failures.push(format!("{s}: sign of product"));
            }
            let theta = |x: &FieldElement, q| theta_matrix(x, &f, q).unwrap();
            if let Some(q) = (0..=d).find(|&q| theta(&ab, q) != &theta(a, q) * &theta(b, q)) {
                failures.push(format!("{s}: theta multiplicativity at q = {q}"));
            }
            let top = theta_matrix(a, &f, d).unwrap();
            let sign = BigRational::from_integer(sign_of(a, &f).unwrap().into());
            if top.get(0, 0) != &sign {
                failures.push(format!("{s}: top-degree theta is not the sign"));
            }
            if norm(a, &f).unwrap().abs() > BigRational::one() {
                for q in 0..d {
                    if !vanishing_check(a, &f, q).unwrap() {
                        notes.push(format!("{s}: I - theta_a singular at q = {q} for {a:?}"));
                    }
                }
            }
        }
    }
    let total = fields.len() * per_field;
    (
        tally(format!("theta action laws ({total} elements)"), total, failures),
        notes,
    )
}

pub fn closed_form_suite(sigmas: &[Vec<u64>]) -> Check {
    let mut failures = Vec::new();
    for s in sigmas {
        let p = build_sigma(s, false).expect("coprime");
        let top = s.len() + 2;
        match homology_bruteforce(&p, top, DEFAULT_MAX_N) {
            Ok(h) if h == homology_closed_form(&p, top) => {}
            Ok(h) => failures.push(format!("{s:?}: brute force {h}")),
            Err(e) => failures.push(format!("{s:?}: {e}")),
        }
    }
    tally(
        format!("closed-form homology matches brute force ({} sets)", sigmas.len()),
        sigmas.len(),
        failures,
    )
}

pub fn torsion_complex_suite(sigmas: &[Vec<u64>]) -> Check {
    let mut failures = Vec::new();
    for s in sigmas {
        let p = build_sigma(s, false).expect("coprime");
        let n = s.len() as u64;
        let h = torsion_complex(&p).expect("finite").homology();
        let expected = GradedGroup::from_groups((0..n).map(|k| {
            let mult = crate::abelian::exterior_rank(Cardinality::Finite(n - 1), k);
            (k as i64, GroupDescriptor::cyclic_power(p.g(), mult))
        }));
        if h != expected {
            failures.push(format!("{s:?}: {h}"));
        }
    }
    tally(
        format!("tensor of P(s) complexes is (Z/g)^C(N-1,p) ({} sets)", sigmas.len()),
        sigmas.len(),
        failures,
    )
}

pub fn ktheory_suite(sigmas: &[Vec<u64>]) -> Check {
    let mut failures = Vec::new();
    for s in sigmas {
        let p = build_sigma(s, false).expect("coprime");
        let (e2, k) = (torsion_ktheory_e2(&p).unwrap(), torsion_ktheory_kunneth(&p).unwrap());
        if e2 != k {
            failures.push(format!("{s:?}: E2 {e2} vs Kunneth {k}"));
        }
    }
    tally(
        format!("E2 torsion K-theory matches Kunneth ({} sets)", sigmas.len()),
        sigmas.len(),
        failures,
    )
}

pub fn hk_suite(sigmas: &[Vec<u64>]) -> Check {
    let mut failures = Vec::new();
    let mut total = 0;
    for s in sigmas.iter().filter(|s| s.len() >= 2) {
        total += 1;
        let r = hk_check(&build_sigma(s, false).expect("coprime")).unwrap();
        if let Some(c) = r.checks.iter().find(|c| !c.pass) {
            failures.push(format!("{s:?}: {} expected {} got {}", c.name, c.expected, c.actual));
        }
    }
    tally(format!("HK comparison ({total} sets)"), total, failures)
}

pub fn cyclic_blocks_suite(degree_max: usize) -> Check {
    let mut failures = Vec::new();
    let sign = cyclic_group_homology(2, &IntMatrix::from_rows(&[[-1]]), degree_max).unwrap();
    for p in 0..=degree_max as i64 {
        let expected = if p % 2 == 0 {
            GroupDescriptor::cyclic_power(2, 1u64.into())
        } else {
            GroupDescriptor::zero()
        };
        if sign.get(p) != Some(expected) {
            failures.push(format!("sign, degree {p}"));
        }
    }
    let orders = [2u64, 3, 4, 6];
    for m in orders {
        let h = cyclic_group_homology(m, &IntMatrix::identity(1), degree_max).unwrap();
        for p in 0..=degree_max as i64 {
            let expected = match p {
                0 => GroupDescriptor::free(1u64.into()),
                p if p % 2 == 1 => GroupDescriptor::cyclic_power(m, 1u64.into()),
                _ => GroupDescriptor::zero(),
            };
            if h.get(p) != Some(expected) {
                failures.push(format!("trivial Z/{m}, degree {p}"));
            }
        }
    }
    tally(
        format!("cyclic group homology blocks through degree {degree_max}"),
        1 + orders.len(),
        failures,
    )
}

pub fn finite_model_suite(polys: &[&str], depth: usize) -> Check {
    let mut failures = Vec::new();
    for s in polys {
        let profile = build_profile(&s.parse().expect("built-in polynomial"), None).expect("built-in field");
        for c in finite_model_limit_check(&profile, profile.degree() + depth).expect("finite models") {
            if !c.pass {
                failures.push(format!("{s}: degree {} closed {}", c.degree, c.closed));
            }
        }
    }
    tally(
        format!(
            "closed-form field homology is the limit of finite models ({} fields)",
            polys.len()
        ),
        polys.len(),
        failures,
    )
}

pub fn descriptor_roundtrip_suite(rng: &mut impl Rng, count: usize) -> Check {
    let mut failures = Vec::new();
    for _ in 0..count {
        let g = random_descriptor(rng);
        let text = g.to_json().to_string();
        match serde_json::from_str(&text)
            .map_err(|e| e.to_string())
            .and_then(|v| GroupDescriptor::from_json(&v))
        {
            Ok(back) if back == g => {}
            Ok(back) => failures.push(format!("{text} came back as {back}")),
            Err(e) => failures.push(format!("{text}: {e}")),
        }
    }
    tally(
        format!("group descriptor JSON round trip ({count} groups)"),
        count,
        failures,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

pub fn verify_all(seed: u64) -> VerifyOutcome {
    let mut r = rng(seed);
    let sigmas = coprime_sigmas(20, 4);
    let sigmas5 = coprime_sigmas(20, 5);
    let (theta, notes) = theta_suite(&mut r, &["x^2+1", "x^2-2", "x^3-2"], 20);
    let checks = vec![
        snf_suite(&mut r, 500, 12, 9),
        exterior_suite(&mut r, 100),
        kunneth_suite(&mut r, 100),
        theta,
        descriptor_roundtrip_suite(&mut r, 200),
        cyclic_blocks_suite(8),
        torsion_complex_suite(&sigmas),
        closed_form_suite(&sigmas),
        ktheory_suite(&sigmas5),
        hk_suite(&sigmas),
        finite_model_suite(&["x-1", "x^2+1", "x^2+x+1", "x^3-2", "x^4+1"], 4),
    ];
    VerifyOutcome { checks, notes }
}
