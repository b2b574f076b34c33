//! The product of two `p`-adic odometers, `Z_p × Z_p` with `Z²` acting by
//! adding `(k, l)`, and the elements of its topological full group that are
//! defined at a fixed cylinder depth.
//!
//! At depth `n` the space splits into `p^(2n)` cylinders, one per pair of
//! length-`n` digit prefixes. A depth-`n` element assigns a translation to
//! every cylinder; since the first `n` digits of `x + k` depend only on the
//! first `n` digits of `x`, each element permutes the cylinders. The elements
//! of a fixed depth form a subgroup of `(Z²)^{cylinders} ⋊ Sym(cylinders)`,
//! and the kernel `Kₙ` of the map to `Sym` is abelian of finite index.
//! Embedding depth `n` into depth `n + 1` exhausts the full group, which is
//! therefore an increasing union of virtually abelian groups.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

// Elements store one translation per cylinder.
const MAX_CYLINDERS: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OdometerParams {
    pub p: u32,
    pub n: u32,
}

impl OdometerParams {
    pub fn new(p: u32, n: u32) -> Result<OdometerParams> {
        if p < 2 {
            return Err(Error::InvalidOdometer(format!("base p = {p} must be at least 2")));
        }
        Ok(OdometerParams { p, n })
    }

    pub fn at_depth(self, n: u32) -> OdometerParams {
        OdometerParams { n, ..self }
    }

    /// `p^n`.
    pub fn modulus(self) -> BigUint {
        BigUint::from(self.p).pow(self.n)
    }

    // p^n as a machine integer, for depths that can hold an element.
    fn side(self) -> Result<u64> {
        let side = self.modulus().to_u64().filter(|&s| s.checked_mul(s).is_some_and(|c| c <= MAX_CYLINDERS));
        side.ok_or_else(|| Error::CostGuard {
            what: "cylinder count",
            value: cylinder_count(self).to_string(),
            limit: MAX_CYLINDERS.to_string(),
        })
    }
}

/// `p^(2n)`.
pub fn cylinder_count(params: OdometerParams) -> BigUint {
    BigUint::from(params.p).pow(2 * params.n)
}

/// A pair of length-`n` digit prefixes, least significant digit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CylinderId {
    pub first: Vec<u32>,
    pub second: Vec<u32>,
}

fn digits_value(digits: &[u32], p: u32) -> BigUint {
    digits.iter().rev().fold(BigUint::zero(), |acc, &d| acc * p + d)
}

fn value_digits(mut v: BigUint, p: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let (q, r) = v.div_rem(&BigUint::from(p));
            v = q;
            r.to_u32().expect("digit below p")
        })
        .collect()
}

fn digit_char(d: u32) -> char {
    std::char::from_digit(d, 36).expect("digit below 36")
}

impl CylinderId {
    pub fn new(first: Vec<u32>, second: Vec<u32>, params: OdometerParams) -> Result<CylinderId> {
        let n = params.n as usize;
        if first.len() != n || second.len() != n {
            return Err(Error::InvalidOdometer(format!("prefixes must have length {n}")));
        }
        if let Some(d) = first.iter().chain(&second).find(|&&d| d >= params.p) {
            return Err(Error::InvalidOdometer(format!("digit {d} is not below {}", params.p)));
        }
        Ok(CylinderId { first, second })
    }

    fn from_index(i: u64, params: OdometerParams, side: u64) -> CylinderId {
        CylinderId {
            first: value_digits(BigUint::from(i % side), params.p, params.n),
            second: value_digits(BigUint::from(i / side), params.p, params.n),
        }
    }

    fn index(&self, params: OdometerParams, side: u64) -> u64 {
        let x = digits_value(&self.first, params.p).to_u64().expect("prefix below p^n");
        let y = digits_value(&self.second, params.p).to_u64().expect("prefix below p^n");
        x + side * y
    }

    /// Key used in the JSON form: two digit strings joined by a comma.
    pub fn to_key(&self) -> String {
        let first: String = self.first.iter().map(|&d| digit_char(d)).collect();
        let second: String = self.second.iter().map(|&d| digit_char(d)).collect();
        format!("{first},{second}")
    }

    pub fn from_key(key: &str, params: OdometerParams) -> Result<CylinderId> {
        let bad = || Error::InvalidOdometer(format!("bad cylinder key {key:?}"));
        let (a, b) = key.split_once(',').ok_or_else(bad)?;
        let parse = |s: &str| {
            s.chars().map(|c| c.to_digit(36).filter(|&d| d < params.p).ok_or_else(bad)).collect::<Result<Vec<u32>>>()
        };
        CylinderId::new(parse(a)?, parse(b)?, params)
    }
}

impl fmt::Display for CylinderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_key())
    }
}

/// The first `n` digits of `x + k` for any `x` starting with `prefix`, where
/// `n` is the prefix length: `(value(prefix) + k) mod p^n`, re-encoded.
pub fn add_with_carry(prefix: &[u32], k: &BigInt, params: OdometerParams) -> Vec<u32> {
    let n = prefix.len() as u32;
    let modulus = BigInt::from(params.modulus_at(n));
    let sum = BigInt::from(digits_value(prefix, params.p)) + k;
    let reduced = sum.mod_floor(&modulus).to_biguint().expect("non-negative residue");
    value_digits(reduced, params.p, n)
}

impl OdometerParams {
    fn modulus_at(self, n: u32) -> BigUint {
        BigUint::from(self.p).pow(n)
    }
}

/// A permutation of the cylinders at some depth, by cylinder index
/// (`value(first) + p^n · value(second)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderPermutation(pub Vec<usize>);

impl CylinderPermutation {
    pub fn identity(size: usize) -> CylinderPermutation {
        CylinderPermutation((0..size).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CylinderPermutation) -> CylinderPermutation {
        CylinderPermutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }
}

/// A depth-`n` element of the topological full group: one translation
/// `(k, l)` per cylinder.
#[derive(Clone, Debug)]
pub struct OdometerElement {
    params: OdometerParams,
    translations: Vec<(BigInt, BigInt)>,
}

impl OdometerElement {
    /// Translations listed by cylinder index. Bijectivity is not checked
    /// here; [`induced_permutation`] reports it.
    pub fn new(params: OdometerParams, translations: Vec<(BigInt, BigInt)>) -> Result<OdometerElement> {
        let side = params.side()?;
        if translations.len() as u64 != side * side {
            return Err(Error::InvalidOdometer(format!(
                "{} translations given for {} cylinders",
                translations.len(),
                side * side
            )));
        }
        Ok(OdometerElement { params, translations })
    }

    pub fn from_fn(
        params: OdometerParams,
        mut f: impl FnMut(&CylinderId) -> (BigInt, BigInt),
    ) -> Result<OdometerElement> {
        let side = params.side()?;
        let translations = (0..side * side).map(|i| f(&CylinderId::from_index(i, params, side))).collect();
        OdometerElement::new(params, translations)
    }

    pub fn constant(params: OdometerParams, k: impl Into<BigInt>, l: impl Into<BigInt>) -> Result<OdometerElement> {
        let (k, l) = (k.into(), l.into());
        OdometerElement::from_fn(params, |_| (k.clone(), l.clone()))
    }

    pub fn identity(params: OdometerParams) -> Result<OdometerElement> {
        OdometerElement::constant(params, 0, 0)
    }

    pub fn params(&self) -> OdometerParams {
        self.params
    }

    pub fn translations(&self) -> &[(BigInt, BigInt)] {
        &self.translations
    }

    pub fn translation(&self, c: &CylinderId) -> &(BigInt, BigInt) {
        let side = self.side();
        &self.translations[c.index(self.params, side) as usize]
    }

    fn side(&self) -> u64 {
        self.params.side().expect("checked at construction")
    }

    pub fn cylinders(&self) -> impl Iterator<Item = CylinderId> + '_ {
        let side = self.side();
        (0..side * side).map(move |i| CylinderId::from_index(i, self.params, side))
    }

    /// Acts on a point given by digit prefixes of equal length `L ≥ n`,
    /// returning the first `L` digits of the image.
    pub fn act(&self, x: &[u32], y: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
        let n = self.params.n as usize;
        if x.len() != y.len() || x.len() < n {
            return Err(Error::InvalidOdometer(format!("point prefixes must have equal length ≥ {n}")));
        }
        let c = CylinderId::new(x[..n].to_vec(), y[..n].to_vec(), self.params)?;
        let (k, l) = self.translation(&c);
        Ok((add_with_carry(x, k, self.params), add_with_carry(y, l, self.params)))
    }

    fn is_zero(&self) -> bool {
        self.translations.iter().all(|(k, l)| k.is_zero() && l.is_zero())
    }
}

/// Equality of homeomorphisms: compared at the larger of the two depths.
impl PartialEq for OdometerElement {
    fn eq(&self, other: &OdometerElement) -> bool {
        if self.params.p != other.params.p {
            return false;
        }
        let n = self.params.n.max(other.params.n);
        match (embed_level(self, n), embed_level(other, n)) {
            (Ok(a), Ok(b)) => a.translations == b.translations,
            _ => false,
        }
    }
}

impl Eq for OdometerElement {}

/// The permutation of cylinders induced by `e`, or [`Error::NotBijective`].
pub fn induced_permutation(e: &OdometerElement) -> Result<CylinderPermutation> {
    let side = e.side();
    let count = (side * side) as usize;
    let modulus = BigInt::from(side);
    let mut image = Vec::with_capacity(count);
    let mut preimage = vec![usize::MAX; count];
    for (i, (k, l)) in e.translations.iter().enumerate() {
        let (x, y) = (i as u64 % side, i as u64 / side);
        let tx = (BigInt::from(x) + k).mod_floor(&modulus).to_u64().unwrap();
        let ty = (BigInt::from(y) + l).mod_floor(&modulus).to_u64().unwrap();
        let target = (tx + side * ty) as usize;
        if preimage[target] != usize::MAX {
            return Err(Error::NotBijective(preimage[target], i));
        }
        preimage[target] = i;
        image.push(target);
    }
    Ok(CylinderPermutation(image))
}

fn same_base(e1: &OdometerElement, e2: &OdometerElement) -> Result<()> {
    if e1.params.p != e2.params.p {
        return Err(Error::ParamMismatch(format!("p = {} and p = {}", e1.params.p, e2.params.p)));
    }
    Ok(())
}

/// `e1 ∘ e2` (apply `e2` first), at the larger of the two depths.
pub fn compose_elements(e1: &OdometerElement, e2: &OdometerElement) -> Result<OdometerElement> {
    same_base(e1, e2)?;
    let n = e1.params.n.max(e2.params.n);
    let (e1, e2) = (embed_level(e1, n)?, embed_level(e2, n)?);
    induced_permutation(&e1)?;
    let pi2 = induced_permutation(&e2)?;
    let translations = e2
        .translations
        .iter()
        .enumerate()
        .map(|(c, (k2, l2))| {
            let (k1, l1) = &e1.translations[pi2.apply(c)];
            (k2 + k1, l2 + l1)
        })
        .collect();
    Ok(OdometerElement { params: e1.params, translations })
}

pub fn invert(e: &OdometerElement) -> Result<OdometerElement> {
    let pi = induced_permutation(e)?;
    let mut translations = vec![(BigInt::zero(), BigInt::zero()); e.translations.len()];
    for (c, (k, l)) in e.translations.iter().enumerate() {
        translations[pi.apply(c)] = (-k, -l);
    }
    Ok(OdometerElement { params: e.params, translations })
}

/// Re-expresses `e` at depth `n′ ≥ n`: each finer cylinder inherits the
/// translation of its depth-`n` ancestor.
pub fn embed_level(e: &OdometerElement, n_prime: u32) -> Result<OdometerElement> {
    let n = e.params.n;
    if n_prime < n {
        return Err(Error::InvalidOdometer(format!("cannot embed depth {n} into depth {n_prime}")));
    }
    if n_prime == n {
        return Ok(e.clone());
    }
    let fine = e.params.at_depth(n_prime);
    let fine_side = fine.side()?;
    let coarse_side = e.side();
    let translations = (0..fine_side * fine_side)
        .map(|i| {
            let (x, y) = (i % fine_side % coarse_side, i / fine_side % coarse_side);
            e.translations[(x + coarse_side * y) as usize].clone()
        })
        .collect();
    Ok(OdometerElement { params: fine, translations })
}

/// Image of an element in the finite quotient by `Kₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetProfile {
    pub permutation: CylinderPermutation,
    /// Translations reduced mod `p^n`, by cylinder index.
    pub residues: Vec<(u64, u64)>,
}

pub fn coset_profile(e: &OdometerElement) -> Result<CosetProfile> {
    let permutation = induced_permutation(e)?;
    let modulus = BigInt::from(e.side());
    let residues = e
        .translations
        .iter()
        .map(|(k, l)| (k.mod_floor(&modulus).to_u64().unwrap(), l.mod_floor(&modulus).to_u64().unwrap()))
        .collect();
    Ok(CosetProfile { permutation, residues })
}

/// Membership in `Kₙ`: every translation is divisible by `p^n`, i.e. the
/// induced permutation is trivial.
pub fn in_kernel(e: &OdometerElement) -> bool {
    let modulus = BigInt::from(e.side());
    e.translations.iter().all(|(k, l)| k.is_multiple_of(&modulus) && l.is_multiple_of(&modulus))
}

/// A random element: uniform permutation of cylinders, then each translation
/// is the required residue plus `p^n · m` with `m ∈ [-2, 2]`.
pub fn random_element<R: Rng + ?Sized>(params: OdometerParams, rng: &mut R) -> Result<OdometerElement> {
    let side = params.side()?;
    let count = (side * side) as usize;
    let mut targets: Vec<u64> = (0..count as u64).collect();
    targets.shuffle(rng);
    let s = side as i64;
    let translations = targets
        .iter()
        .enumerate()
        .map(|(c, &t)| {
            let (cx, cy) = (c as i64 % s, c as i64 / s);
            let (tx, ty) = (t as i64 % s, t as i64 / s);
            let k = tx - cx + s * rng.gen_range(-2i64..=2);
            let l = ty - cy + s * rng.gen_range(-2i64..=2);
            (BigInt::from(k), BigInt::from(l))
        })
        .collect();
    OdometerElement::new(params, translations)
}

/// A random element of `Kₙ`, translations `p^n · m` with `m ∈ [-3, 3]`.
pub fn random_kernel_element<R: Rng + ?Sized>(params: OdometerParams, rng: &mut R) -> Result<OdometerElement> {
    let side = params.side()?;
    let s = BigInt::from(side);
    let translations =
        (0..side * side).map(|_| (&s * rng.gen_range(-3i64..=3), &s * rng.gen_range(-3i64..=3))).collect();
    OdometerElement::new(params, translations)
}

/// Outcome of one sampled check suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    #[serde(with = "crate::json::decimal")]
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> SuiteReport {
        SuiteReport { name: name.to_string(), ..SuiteReport::default() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtuallyAbelianReport {
    pub params: OdometerParams,
    #[serde(with = "crate::json::decimal")]
    pub samples: u64,
    pub kernel_commutation: SuiteReport,
    pub normality: SuiteReport,
    pub coset_characterisation: SuiteReport,
    /// `(p^(2n))! · p^(2n · p^(2n))`, an upper bound on the index of `Kₙ`.
    #[serde(with = "crate::json::decimal")]
    pub quotient_bound: BigUint,
}

impl VirtuallyAbelianReport {
    pub fn passed(&self) -> bool {
        self.kernel_commutation.passed() && self.normality.passed() && self.coset_characterisation.passed()
    }
}

pub const MAX_VERIFY_CYLINDERS: u64 = 256;

fn verify_guard(params: OdometerParams) -> Result<()> {
    let count = cylinder_count(params);
    if count > BigUint::from(MAX_VERIFY_CYLINDERS) {
        return Err(Error::CostGuard {
            what: "p^(2n)",
            value: count.to_string(),
            limit: MAX_VERIFY_CYLINDERS.to_string(),
        });
    }
    Ok(())
}

fn commutator(a: &OdometerElement, b: &OdometerElement) -> Result<OdometerElement> {
    let ab = compose_elements(a, b)?;
    let ba = compose_elements(b, a)?;
    compose_elements(&ab, &invert(&ba)?)
}

/// Checks on `sample_count` random samples that `Kₙ` is abelian and normal
/// and that [`coset_profile`] separates its cosets.
pub fn verify_virtually_abelian<R: Rng + ?Sized>(
    params: OdometerParams,
    sample_count: u64,
    rng: &mut R,
) -> Result<VirtuallyAbelianReport> {
    verify_guard(params)?;
    let mut commutation = SuiteReport::new("kernel commutation");
    let mut normality = SuiteReport::new("normality under conjugation");
    let mut cosets = SuiteReport::new("profile characterises cosets");

    for s in 0..sample_count {
        let k1 = random_kernel_element(params, rng)?;
        let k2 = random_kernel_element(params, rng)?;
        let c = commutator(&k1, &k2)?;
        commutation.check(c.is_zero(), || format!("sample {s}: kernel elements do not commute"));

        let g = random_element(params, rng)?;
        let conj = compose_elements(&compose_elements(&g, &k1)?, &invert(&g)?)?;
        normality.check(in_kernel(&conj), || format!("sample {s}: conjugate left the kernel"));

        let e1 = random_element(params, rng)?;
        let e2 = if rng.gen_bool(0.5) { compose_elements(&k2, &e1)? } else { random_element(params, rng)? };
        let same_profile = coset_profile(&e1)? == coset_profile(&e2)?;
        let same_coset = in_kernel(&compose_elements(&e1, &invert(&e2)?)?);
        cosets.check(same_profile == same_coset, || {
            format!("sample {s}: profiles equal = {same_profile}, cosets equal = {same_coset}")
        });
    }

    let cylinders = cylinder_count(params).to_u64().expect("guarded");
    let factorial: BigUint = (1..=cylinders).map(BigUint::from).product();
    let residues = BigUint::from(params.p).pow((2 * params.n as u64 * cylinders) as u32);
    Ok(VirtuallyAbelianReport {
        params,
        samples: sample_count,
        kernel_commutation: commutation,
        normality,
        coset_characterisation: cosets,
        quotient_bound: factorial * residues,
    })
}

/// Associativity, two-sided identity and two-sided inverses on random triples.
pub fn group_axiom_suite<R: Rng + ?Sized>(params: OdometerParams, triples: u64, rng: &mut R) -> Result<SuiteReport> {
    verify_guard(params)?;
    let mut report = SuiteReport::new("group axioms");
    let id = OdometerElement::identity(params)?;
    for t in 0..triples {
        let a = random_element(params, rng)?;
        let b = random_element(params, rng)?;
        let c = random_element(params, rng)?;
        let left = compose_elements(&compose_elements(&a, &b)?, &c)?;
        let right = compose_elements(&a, &compose_elements(&b, &c)?)?;
        report.check(left.translations == right.translations, || format!("triple {t}: not associative"));
        report.check(
            compose_elements(&a, &id)?.translations == a.translations
                && compose_elements(&id, &a)?.translations == a.translations,
            || format!("triple {t}: identity is not two-sided"),
        );
        let inv = invert(&a)?;
        report.check(compose_elements(&a, &inv)?.is_zero() && compose_elements(&inv, &a)?.is_zero(), || {
            format!("triple {t}: inverse is not two-sided")
        });
    }
    Ok(report)
}

/// Embedding one level deeper is a homomorphism, is injective, and does not
/// change the action on points.
pub fn embedding_suite<R: Rng + ?Sized>(params: OdometerParams, samples: u64, rng: &mut R) -> Result<SuiteReport> {
    verify_guard(params)?;
    let mut report = SuiteReport::new("level embedding");
    let deeper = params.n + 1;
    for s in 0..samples {
        let a = random_element(params, rng)?;
        let b = random_element(params, rng)?;
        let composed_then_embedded = embed_level(&compose_elements(&a, &b)?, deeper)?;
        let embedded_then_composed = compose_elements(&embed_level(&a, deeper)?, &embed_level(&b, deeper)?)?;
        report.check(composed_then_embedded.translations == embedded_then_composed.translations, || {
            format!("sample {s}: embedding is not a homomorphism")
        });

        let (ea, eb) = (embed_level(&a, deeper)?, embed_level(&b, deeper)?);
        report.check((a.translations == b.translations) == (ea.translations == eb.translations), || {
            format!("sample {s}: embedding is not injective")
        });

        let x: Vec<u32> = (0..deeper + 2).map(|_| rng.gen_range(0..params.p)).collect();
        let y: Vec<u32> = (0..deeper + 2).map(|_| rng.gen_range(0..params.p)).collect();
        report.check(a.act(&x, &y)? == ea.act(&x, &y)?, || format!("sample {s}: embedding changed the action"));
    }
    Ok(report)
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    p: u32,
    n: u32,
    translations: BTreeMap<String, [String; 2]>,
}

impl Serialize for OdometerElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.params.p > 36 {
            return Err(serde::ser::Error::custom("cylinder keys need p ≤ 36"));
        }
        let translations = self
            .cylinders()
            .zip(&self.translations)
            .map(|(c, (k, l))| (c.to_key(), [k.to_string(), l.to_string()]))
            .collect();
        ElementRepr { p: self.params.p, n: self.params.n, translations }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OdometerElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ElementRepr::deserialize(deserializer)?;
        let params = OdometerParams::new(repr.p, repr.n).map_err(D::Error::custom)?;
        let side = params.side().map_err(D::Error::custom)?;
        let mut slots: Vec<Option<(BigInt, BigInt)>> = vec![None; (side * side) as usize];
        for (key, [k, l]) in repr.translations {
            let c = CylinderId::from_key(&key, params).map_err(D::Error::custom)?;
            let k: BigInt = k.parse().map_err(D::Error::custom)?;
            let l: BigInt = l.parse().map_err(D::Error::custom)?;
            slots[c.index(params, side) as usize] = Some((k, l));
        }
        let translations = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| D::Error::custom("translations must cover every cylinder"))?;
        OdometerElement::new(params, translations).map_err(D::Error::custom)
    }
}
