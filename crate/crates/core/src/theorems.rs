//! One verifier per claim about the doubling constant `σ = |A+A|/|A|` and
//! difference constant `δ = |A-A|/|A|`.
//!
//! | claim   | statement                                                   |
//! |---------|-------------------------------------------------------------|
//! | `fact1` | `σ = 1` iff `δ = 1` iff `A` is a coset                      |
//! | `ineq1` | `δ <= σ²` and `σ <= δ²`                                     |
//! | `thm1`  | `σ = δ²` or `δ = σ²` iff `A` is a coset                     |
//! | `thm2`  | `|A||A-A| <= |A+A|²` via the Ruzsa injection, tight iff σ=1 |
//! | `thm3`  | the chain `|2A| <= |2A+X| <= K|X+A| = K²|X| <= K²|A| <= δ²|A|` |
//! | `thm5`  | `|nA| < σⁿ|A|` whenever `σ > 1`                             |
//!
//! Verifiers never fail on a false claim; they return a [`Verdict`] with
//! outcome [`Outcome::Violated`] so sweeps can keep counting. Powers of
//! sizes are compared by integer cross-multiplication in [`BigUint`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{delta, diffset, sigma, sumset};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::petridis::{find_minimizer, verify_hypothesis};
use crate::ruzsa::{build_phi, build_psi, check_surjective, verify_injective};
use crate::scalar::{pow, Bound, Count};
use crate::set::GSet;
use crate::Ratio64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Fact1,
    Ineq1,
    Thm1,
    Thm2,
    Thm3,
    Thm5,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::Fact1,
        Claim::Ineq1,
        Claim::Thm1,
        Claim::Thm2,
        Claim::Thm3,
        Claim::Thm5,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Fact1 => "fact1",
            Claim::Ineq1 => "ineq1",
            Claim::Thm1 => "thm1",
            Claim::Thm2 => "thm2",
            Claim::Thm3 => "thm3",
            Claim::Thm5 => "thm5",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown claim {s:?} (expected fact1, ineq1, thm1, thm2, thm3 or thm5)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    EqualityCase,
    Violated,
}

/// One link `lhs <rel> rhs` of an inequality chain, with exact fractions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Link {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub bound: Bound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: Claim,
    pub group: String,
    pub set: String,
    /// The caller's original literal when `set` is an embedding of it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, u64>,
    pub sizes: BTreeMap<String, u64>,
    pub ratios: BTreeMap<String, Ratio64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<Link>,
    pub outcome: Outcome,
}

impl Verdict {
    fn new(claim: Claim, a: &GSet) -> Self {
        Verdict {
            claim,
            group: a.group().to_string(),
            set: a.to_string(),
            source: None,
            params: BTreeMap::new(),
            sizes: BTreeMap::new(),
            ratios: BTreeMap::new(),
            flags: BTreeMap::new(),
            links: Vec::new(),
            outcome: Outcome::Holds,
        }
    }

    fn size(&mut self, key: &str, v: usize) {
        self.sizes.insert(key.to_string(), v as u64);
    }

    fn flag(&mut self, key: &str, v: bool) {
        self.flags.insert(key.to_string(), v);
    }

    fn link(&mut self, name: &str, lhs: String, rhs: String, bound: Bound) {
        self.links.push(Link {
            name: name.to_string(),
            lhs,
            rhs,
            bound,
        });
    }

    pub fn is_violated(&self) -> bool {
        self.outcome == Outcome::Violated
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }
}

/// Sizes and constants common to every verifier.
struct Basics {
    a: usize,
    aa: usize,
    ama: usize,
    sigma: Ratio64,
    delta: Ratio64,
}

fn basics(v: &mut Verdict, a: &GSet) -> Result<Basics> {
    if a.is_empty() {
        return Err(Error::EmptySet("theorem verifier"));
    }
    let b = Basics {
        a: a.len(),
        aa: sumset(a, a)?.len(),
        ama: diffset(a, a)?.len(),
        sigma: sigma(a)?,
        delta: delta(a)?,
    };
    v.size("A", b.a);
    v.size("AA", b.aa);
    v.size("AmA", b.ama);
    v.ratios.insert("sigma".into(), b.sigma);
    v.ratios.insert("delta".into(), b.delta);
    Ok(b)
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

/// Compares `p1 * q1^e1` with `p2 * q2^e2` exactly.
fn cross<T: Count>(p1: usize, q1: usize, e1: u32, p2: usize, q2: usize, e2: u32) -> (T, T) {
    let l = T::from_size(p1) * pow(&T::from_size(q1), e1);
    let r = T::from_size(p2) * pow(&T::from_size(q2), e2);
    (l, r)
}

fn is_coset(a: &GSet) -> Result<bool> {
    Ok(a.group().is_coset(a)?.is_some())
}

fn agree_or_violated(v: &mut Verdict, agree: bool, equality: bool) {
    v.outcome = match (agree, equality) {
        (false, _) => Outcome::Violated,
        (true, true) => Outcome::EqualityCase,
        (true, false) => Outcome::Holds,
    };
}

/// `σ = 1`, `δ = 1` and "is a coset" must agree.
pub fn check_fact1(a: &GSet) -> Result<Verdict> {
    let mut v = Verdict::new(Claim::Fact1, a);
    let b = basics(&mut v, a)?;
    let s1 = b.aa == b.a;
    let d1 = b.ama == b.a;
    let coset = is_coset(a)?;
    v.flag("sigma_one", s1);
    v.flag("delta_one", d1);
    v.flag("coset", coset);
    agree_or_violated(&mut v, s1 == d1 && d1 == coset, coset);
    Ok(v)
}

/// `δ <= σ²` as `|A-A||A| <= |A+A|²`, and `σ <= δ²` as `|A+A||A| <= |A-A|²`.
pub fn check_inequality(a: &GSet) -> Result<Verdict> {
    let mut v = Verdict::new(Claim::Ineq1, a);
    let b = basics(&mut v, a)?;
    let (l, r) = cross::<BigUint>(b.ama, b.a, 1, 1, b.aa, 2);
    let upper = Bound::compare(&l, &r);
    v.link("delta <= sigma^2", format!("{l}"), format!("{r}"), upper);
    let (l, r) = cross::<BigUint>(b.aa, b.a, 1, 1, b.ama, 2);
    let lower = Bound::compare(&l, &r);
    v.link("sigma <= delta^2", format!("{l}"), format!("{r}"), lower);
    v.flag("upper_equal", upper == Bound::Equal);
    v.flag("lower_equal", lower == Bound::Equal);
    agree_or_violated(
        &mut v,
        upper.holds() && lower.holds(),
        upper == Bound::Equal || lower == Bound::Equal,
    );
    Ok(v)
}

/// Equality in either bound must coincide with `A` being a coset.
pub fn check_main_theorem(a: &GSet) -> Result<Verdict> {
    let mut v = Verdict::new(Claim::Thm1, a);
    let b = basics(&mut v, a)?;
    let upper_eq = big(b.ama) * big(b.a) == big(b.aa) * big(b.aa);
    let lower_eq = big(b.aa) * big(b.a) == big(b.ama) * big(b.ama);
    let coset = is_coset(a)?;
    v.flag("upper_equal", upper_eq);
    v.flag("lower_equal", lower_eq);
    v.flag("coset", coset);
    let eq = upper_eq || lower_eq;
    agree_or_violated(&mut v, eq == coset, eq);
    Ok(v)
}

/// `|A||A-A| <= |A+A|²` through the Ruzsa injection: `phi` is injective,
/// and it is onto (equivalently the bound is tight) iff `σ = 1`.
pub fn check_upper_bound(a: &GSet) -> Result<Verdict> {
    let mut v = Verdict::new(Claim::Thm2, a);
    let b = basics(&mut v, a)?;
    let psi = build_psi(a)?;
    let phi = build_phi(a, &psi)?;
    let injective = verify_injective(&phi);
    let surjective = check_surjective(&phi);
    let (l, r) = cross::<BigUint>(b.a, b.ama, 1, 1, b.aa, 2);
    let bound = Bound::compare(&l, &r);
    v.link("|A||A-A| <= |A+A|^2", l.to_string(), r.to_string(), bound);
    let sigma_one = b.aa == b.a;
    v.size("domain", phi.entries().len());
    v.size("codomain", phi.codomain_size());
    v.flag("injective", injective);
    v.flag("surjective", surjective);
    v.flag("sigma_one", sigma_one);
    let agree = injective && bound.holds() && surjective == sigma_one && (bound == Bound::Equal) == sigma_one;
    agree_or_violated(&mut v, agree, bound == Bound::Equal);
    Ok(v)
}

fn frac(r: &Ratio64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The chain `|2A| <= |2A+X| <= K|X+A| = K²|X| <= K²|A| <= δ²|A|` for the
/// minimizer `X ⊆ -A`. Every link must hold; all links are tight exactly
/// when `A` is a coset.
pub fn check_lower_chain(a: &GSet, limits: &Limits) -> Result<Verdict> {
    let mut v = Verdict::new(Claim::Thm3, a);
    let b = basics(&mut v, a)?;
    let m = find_minimizer(a, &a.negate(), limits.minimizer_base)?;
    let k = m.k;
    let x = &m.x;
    let two_a = sumset(a, a)?;
    let two_a_x = sumset(&two_a, x)?.len();
    let xa = m.sum_size;
    v.size("X", x.len());
    v.size("AX", xa);
    v.size("AAX", two_a_x);
    v.ratios.insert("K".into(), k);
    let int = |n: usize| Ratio64::from_integer(n as u64);
    let values = [
        int(b.aa),
        int(two_a_x),
        k * int(xa),
        k * k * int(x.len()),
        k * k * int(b.a),
        b.delta * b.delta * int(b.a),
    ];
    let names = [
        "|2A| <= |2A+X|",
        "|2A+X| <= K|X+A|",
        "K|X+A| = K^2|X|",
        "K^2|X| <= K^2|A|",
        "K^2|A| <= delta^2|A|",
    ];
    let mut ok = true;
    let mut tight = true;
    for (i, name) in names.iter().enumerate() {
        let bound = Bound::compare(&values[i], &values[i + 1]);
        ok &= bound.holds() && (i != 2 || bound == Bound::Equal);
        tight &= bound == Bound::Equal;
        v.link(name, frac(&values[i]), frac(&values[i + 1]), bound);
    }
    let k_le_delta = k <= b.delta;
    let hypothesis = m.strict_on_proper_subsets && verify_hypothesis(a, x, &k, limits.minimizer_base)?;
    let coset = is_coset(a)?;
    v.flag("K_le_delta", k_le_delta);
    v.flag("strict_hypothesis", hypothesis);
    v.flag("coset", coset);
    agree_or_violated(&mut v, ok && k_le_delta && hypothesis && tight == coset, tight);
    Ok(v)
}

/// `|nA| < σⁿ|A|` when `σ > 1` (and `=` when `σ = 1`), compared as
/// `|nA||A|^(n-1)` against `|A+A|ⁿ`. Also checks the auxiliary chain
/// `|jA+X| <= K^j|X|`, `j = 1..=n`, for the minimizer `X ⊆ A`, and `K <= σ`.
pub fn check_plunnecke(a: &GSet, n: usize, limits: &Limits) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::InvalidParameter("Plünnecke check needs n >= 1".into()));
    }
    let e = u32::try_from(n).map_err(|_| Error::InvalidParameter(format!("n = {n} is too large")))?;
    let mut v = Verdict::new(Claim::Thm5, a);
    v.params.insert("n".into(), n as u64);
    let b = basics(&mut v, a)?;
    let m = find_minimizer(a, a, limits.minimizer_base)?;
    v.size("X", m.x.len());
    v.size("AX", m.sum_size);
    v.ratios.insert("K".into(), m.k);

    let mut ok = true;
    let mut acc = m.x.clone();
    let (s, xs) = (m.sum_size, m.x.len());
    for j in 1..=e {
        acc = sumset(&acc, a)?;
        // |jA+X| <= K^j |X| = s^j / |X|^(j-1)
        let (l, r) = cross::<BigUint>(acc.len(), xs, j - 1, 1, s, j);
        let bound = Bound::compare(&l, &r);
        ok &= bound.holds();
        v.link(&format!("|{j}A+X| <= K^{j}|X|"), l.to_string(), r.to_string(), bound);
    }
    let k_le_sigma = m.k <= b.sigma;
    v.flag("K_le_sigma", k_le_sigma);

    let mut n_a = a.clone();
    for _ in 1..n {
        n_a = sumset(&n_a, a)?;
    }
    v.size("nA", n_a.len());
    let (l, r) = cross::<BigUint>(n_a.len(), b.a, e - 1, 1, b.aa, e);
    let bound = Bound::compare(&l, &r);
    v.link("|nA||A|^(n-1) < |A+A|^n", l.to_string(), r.to_string(), bound);
    let sigma_one = b.aa == b.a;
    v.flag("sigma_one", sigma_one);
    let main_ok = if sigma_one {
        bound == Bound::Equal
    } else {
        bound == Bound::Strict
    };
    agree_or_violated(&mut v, ok && k_le_sigma && main_ok, bound == Bound::Equal);
    Ok(v)
}

/// Runs the verifier for `claim`. `n` is only used by `thm5`.
pub fn check(claim: Claim, a: &GSet, n: usize, limits: &Limits) -> Result<Verdict> {
    match claim {
        Claim::Fact1 => check_fact1(a),
        Claim::Ineq1 => check_inequality(a),
        Claim::Thm1 => check_main_theorem(a),
        Claim::Thm2 => check_upper_bound(a),
        Claim::Thm3 => check_lower_chain(a, limits),
        Claim::Thm5 => check_plunnecke(a, n, limits),
    }
}

/// Aggregate of a sweep over many sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub claim: Claim,
    pub universe: String,
    pub total: usize,
    pub holds: usize,
    pub equality: usize,
    pub violated: usize,
    /// Equality-case sets in canonical order.
    pub equality_sets: Vec<String>,
    /// Violating verdicts in canonical order.
    pub violations: Vec<Verdict>,
}

/// All non-empty subsets of `group`, ascending by bitmask.
pub fn all_nonempty_subsets(group: &crate::GroupSpec, limits: &Limits) -> Result<Vec<GSet>> {
    let n = group.order();
    let cap = limits.exhaustive_order.min(30);
    if n > cap {
        return Err(Error::cap("group order for an all-subset sweep", n, cap));
    }
    (1u64..(1u64 << n)).map(|m| GSet::from_mask(group, m)).collect()
}

/// Checks `claim` on every set, in parallel; the result does not depend on
/// thread count.
pub fn sweep(claim: Claim, universe: &str, sets: &[GSet], n: usize, limits: &Limits) -> Result<SweepSummary> {
    let verdicts: Vec<Verdict> = sets
        .par_iter()
        .map(|a| check(claim, a, n, limits))
        .collect::<Result<_>>()?;
    let mut s = SweepSummary {
        claim,
        universe: universe.to_string(),
        total: verdicts.len(),
        holds: 0,
        equality: 0,
        violated: 0,
        equality_sets: Vec::new(),
        violations: Vec::new(),
    };
    for v in verdicts {
        match v.outcome {
            Outcome::Holds => s.holds += 1,
            Outcome::EqualityCase => {
                s.equality += 1;
                s.equality_sets.push(v.set.clone());
            }
            Outcome::Violated => {
                s.violated += 1;
                s.violations.push(v);
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn set(n: u64, xs: &[usize]) -> GSet {
        GSet::from_indices(&GroupSpec::cyclic(n).unwrap(), xs.iter().copied()).unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    fn link_values(v: &Verdict) -> Vec<(String, String, Bound)> {
        v.links
            .iter()
            .map(|l| (l.lhs.clone(), l.rhs.clone(), l.bound))
            .collect()
    }

    #[test]
    fn fact1_examples() {
        let v = check_fact1(&set(6, &[1, 4])).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCase);
        assert!(v.flags.values().all(|&f| f));

        let v = check_fact1(&set(5, &[0, 1])).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.flags.values().all(|&f| !f));

        let g = GroupSpec::cyclic(12).unwrap();
        let sets = all_nonempty_subsets(&g, &limits()).unwrap();
        let s = sweep(Claim::Fact1, "Z12", &sets, 1, &limits()).unwrap();
        assert_eq!((s.total, s.equality, s.violated), (4095, 28, 0));
    }

    #[test]
    fn inequality_examples() {
        let v = check_inequality(&set(8, &[0, 1, 3])).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        // 7*3 vs 6^2 ; 6*3 vs 7^2
        assert_eq!(
            link_values(&v),
            vec![
                ("21".into(), "36".into(), Bound::Strict),
                ("18".into(), "49".into(), Bound::Strict)
            ]
        );

        let v = check_inequality(&set(6, &[1, 4])).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCase);
        assert!(v.flags["upper_equal"] && v.flags["lower_equal"]);

        let v = check_inequality(&set(5, &[0, 1])).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert_eq!(v.ratios["sigma"], Ratio64::new(3, 2));
    }

    #[test]
    fn main_theorem_examples() {
        assert_eq!(
            check_main_theorem(&set(6, &[1, 4])).unwrap().outcome,
            Outcome::EqualityCase
        );
        let v = check_main_theorem(&set(5, &[0, 1])).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(!v.flags["coset"]);

        let g = GroupSpec::cyclic(10).unwrap();
        let sets = all_nonempty_subsets(&g, &limits()).unwrap();
        let s = sweep(Claim::Thm1, "Z10", &sets, 1, &limits()).unwrap();
        assert_eq!((s.equality, s.violated), (18, 0));
    }

    #[test]
    fn upper_bound_examples() {
        let v = check_upper_bound(&set(5, &[0, 1])).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.flags["injective"] && !v.flags["surjective"]);
        let v = check_upper_bound(&set(6, &[1, 4])).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCase);
        assert!(v.flags["surjective"]);
    }

    #[test]
    fn lower_chain_examples() {
        let v = check_lower_chain(&set(5, &[0, 1]), &limits()).unwrap();
        assert_eq!(
            link_values(&v),
            vec![
                ("3".into(), "4".into(), Bound::Strict),
                ("4".into(), "9/2".into(), Bound::Strict),
                ("9/2".into(), "9/2".into(), Bound::Equal),
                ("9/2".into(), "9/2".into(), Bound::Equal),
                ("9/2".into(), "9/2".into(), Bound::Equal),
            ]
        );
        assert_eq!(v.ratios["K"], Ratio64::new(3, 2));
        assert_eq!(v.outcome, Outcome::Holds);

        let v = check_lower_chain(&set(12, &[2, 6, 10]), &limits()).unwrap();
        assert_eq!(v.outcome, Outcome::EqualityCase);
        assert!(v.links.iter().all(|l| l.lhs == "3" && l.rhs == "3"));

        let v = check_lower_chain(&set(8, &[0, 1, 3]), &limits()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
        assert!(v.links.iter().any(|l| l.bound == Bound::Strict));
    }

    #[test]
    fn plunnecke_examples() {
        let v = check_plunnecke(&set(8, &[0, 1]), 3, &limits()).unwrap();
        assert_eq!(v.sizes["nA"], 4);
        let main = v.links.last().unwrap();
        // 4 * 2^2 = 16 < 3^3 = 27, i.e. 4 < 27/4
        assert_eq!(
            (main.lhs.as_str(), main.rhs.as_str(), main.bound),
            ("16", "27", Bound::Strict)
        );
        assert_eq!(v.outcome, Outcome::Holds);

        for n in 1..=5 {
            let v = check_plunnecke(&set(12, &[1, 5, 9]), n, &limits()).unwrap();
            assert_eq!(v.outcome, Outcome::EqualityCase);
            assert_eq!(v.sizes["nA"], 3);
        }

        let v = check_plunnecke(&set(8, &[0, 1, 3]), 2, &limits()).unwrap();
        let main = v.links.last().unwrap();
        // |2A| * |A| = 18 < 36 = |A+A|^2, i.e. 6 < 12
        assert_eq!((main.lhs.as_str(), main.rhs.as_str()), ("18", "36"));

        assert!(check_plunnecke(&set(8, &[0]), 0, &limits()).is_err());
    }

    #[test]
    fn plunnecke_large_powers_stay_exact() {
        let v = check_plunnecke(&set(64, &[0, 1, 5, 17, 40]), 40, &limits()).unwrap();
        assert_eq!(v.outcome, Outcome::Holds);
    }

    #[test]
    fn intermediates_are_consistent() {
        let g = GroupSpec::cyclic(9).unwrap();
        for a in all_nonempty_subsets(&g, &limits()).unwrap() {
            for claim in Claim::ALL {
                let v = check(claim, &a, 3, &limits()).unwrap();
                let s = Ratio64::new(v.sizes["AA"], v.sizes["A"]);
                let d = Ratio64::new(v.sizes["AmA"], v.sizes["A"]);
                assert_eq!(v.ratios["sigma"], s);
                assert_eq!(v.ratios["delta"], d);
                assert!(!v.is_violated(), "{claim} {a}");
            }
        }
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert!("thm4".parse::<Claim>().is_err());
    }

    #[test]
    fn verdict_json_shape() {
        let v = check_inequality(&set(8, &[0, 1, 3])).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["claim"], "ineq1");
        assert_eq!(j["group"], "Z8");
        assert_eq!(j["set"], "0,1,3@Z8");
        assert_eq!(j["sizes"]["AA"], 6);
        assert_eq!(j["ratios"]["delta"], serde_json::json!([7, 3]));
        assert_eq!(j["outcome"], "holds");
        let eq = serde_json::to_value(check_fact1(&set(6, &[1, 4])).unwrap()).unwrap();
        assert_eq!(eq["outcome"], "equality-case");
    }
}
