//! Standard families of finite groups and the worked-example catalog.

mod catalog;
pub mod field;

use crate::action::{ActionSpec, Automorphism, Provenance};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Realization};

pub use catalog::{
    affine_example_matrices, catalog, catalog_entry, catalog_names, frobenius_pair_entry, order12_group, order72_matrices,
    AffineExampleMatrices, CatalogEntry, ExpectedFacts,
};
pub use field::{is_prime, FieldElem, GaloisField, Matrix};

/// Permutation of `{0, .., n-1}` as an image array; products compose left
/// to right, so `(p·q)(i) = q(p(i))`.
pub type Perm = Vec<u8>;

pub fn perm_mul(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i as usize]).collect()
}

pub fn perm_inv(p: &Perm) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

/// `h⁻¹ x h`.
pub fn perm_conj(x: &Perm, h: &Perm) -> Perm {
    perm_mul(&perm_mul(&perm_inv(h), x), h)
}

/// Builds a permutation of degree `n` from 1-based cycles.
pub fn perm_from_cycles(n: usize, cycles: &[&[u8]]) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    for c in cycles {
        for (k, &a) in c.iter().enumerate() {
            p[a as usize - 1] = c[(k + 1) % c.len()] - 1;
        }
    }
    p
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn perm_label(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i] as usize;
        }
        out.push_str(&format!("({})", cycle.join(",")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

pub fn permutation_group(name: impl Into<String>, degree: usize, gens: &[Perm]) -> Result<Realization<Perm>> {
    if gens.iter().any(|g| g.len() != degree) {
        return Err(Error::Input(format!("generators must have degree {degree}")));
    }
    for g in gens {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        if sorted.iter().enumerate().any(|(i, &x)| x as usize != i) {
            return Err(Error::Input(format!("{g:?} is not a permutation")));
        }
    }
    Realization::generate(name, (0..degree as u8).collect(), gens, perm_mul, perm_label)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::OutOfRange("cyclic group of order 0".into()));
    }
    let labels = (0..n).map(|k| if k == 0 { "1".into() } else { format!("a^{k}") }).collect();
    FiniteGroup::from_fn(format!("Z{n}"), n, move |a, b| (a + b) % n, labels)
}

/// `(Z_p)^k`, element index read as base-`p` digits.
pub fn elementary_abelian(p: usize, k: u32) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::OutOfRange(format!("{p} is not prime")));
    }
    let order = p.checked_pow(k).filter(|&o| o <= crate::group::MAX_ORDER).ok_or(Error::ClosureTooLarge {
        limit: crate::group::MAX_ORDER,
    })?;
    let digits = move |mut x: usize| {
        let mut d = Vec::with_capacity(k as usize);
        for _ in 0..k {
            d.push(x % p);
            x /= p;
        }
        d
    };
    let labels = (0..order).map(|x| format!("{:?}", digits(x))).collect();
    FiniteGroup::from_fn(
        format!("E{p}^{k}"),
        order,
        move |mut a, mut b| {
            let mut out = 0;
            let mut place = 1;
            for _ in 0..k {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        },
        labels,
    )
}

/// Dihedral group of the given (even) order, `r^i s^j` at index `i + n·j`.
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 4 || order % 2 != 0 {
        return Err(Error::OutOfRange(format!("dihedral order {order} must be even and at least 4")));
    }
    let n = order / 2;
    let labels = (0..order)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            match (i, j) {
                (0, 0) => "1".into(),
                (i, 0) => format!("r^{i}"),
                (0, _) => "s".into(),
                (i, _) => format!("r^{i}s"),
            }
        })
        .collect();
    FiniteGroup::from_fn(
        format!("D{order}"),
        order,
        move |a, b| {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            // s r^k = r^-k s
            let i2 = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            i2 + n * ((j + l) % 2)
        },
        labels,
    )
}

/// Quaternion group, ordered `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> Result<FiniteGroup> {
    // unit u ∈ {1,i,j,k} as 0..4 with sign bit
    fn unit_mul(u: usize, v: usize) -> (usize, bool) {
        match (u, v) {
            (0, v) => (v, false),
            (u, 0) => (u, false),
            (u, v) if u == v => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let names = ["1", "i", "j", "k"];
    let labels = (0..8)
        .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
        .collect();
    FiniteGroup::from_fn(
        "Q8",
        8,
        |a, b| {
            let (u, v) = (a / 2, b / 2);
            let (w, neg) = unit_mul(u, v);
            let sign = (a % 2) ^ (b % 2) ^ (neg as usize);
            2 * w + sign
        },
        labels,
    )
}

/// `Q8 ∗ D8`, identifying the central involutions.
pub fn q8_central_d8() -> Result<FiniteGroup> {
    let q8 = quaternion8()?;
    let d8 = dihedral(8)?;
    // -1 in Q8 is index 1; r² in D8 is index 2
    Ok(q8.central_product(&d8, &[(0, 0), (1, 2)])?.with_name("Q8*D8"))
}

fn check_degree(n: usize) -> Result<()> {
    if !(1..=6).contains(&n) {
        return Err(Error::OutOfRange(format!("degree {n} not in 1..=6")));
    }
    Ok(())
}

pub fn sym_realized(n: usize) -> Result<Realization<Perm>> {
    check_degree(n)?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm_from_cycles(n, &[&[1, 2]]));
        gens.push(perm_from_cycles(n, &[&(1..=n as u8).collect::<Vec<_>>()]));
    }
    permutation_group(format!("S{n}"), n, &gens)
}

pub fn alt_realized(n: usize) -> Result<Realization<Perm>> {
    check_degree(n)?;
    let gens: Vec<Perm> = (3..=n as u8).map(|k| perm_from_cycles(n, &[&[1, 2, k]])).collect();
    permutation_group(format!("A{n}"), n, &gens)
}

pub fn sym(n: usize) -> Result<FiniteGroup> {
    Ok(sym_realized(n)?.group)
}

pub fn alt(n: usize) -> Result<FiniteGroup> {
    Ok(alt_realized(n)?.group)
}

/// Heisenberg triples `(a, b, c)` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`,
/// index `a + p·b + p²·c`. Extraspecial of order `p³` and exponent `p`.
pub fn extraspecial_p3_exp_p(p: usize) -> Result<FiniteGroup> {
    if p % 2 == 0 || !is_prime(p as u64) || p > 7 {
        return Err(Error::OutOfRange(format!("p = {p} must be an odd prime at most 7")));
    }
    let split = move |x: usize| (x % p, (x / p) % p, x / (p * p));
    let labels = (0..p * p * p)
        .map(|x| {
            let (a, b, c) = split(x);
            format!("({a},{b},{c})")
        })
        .collect();
    FiniteGroup::from_fn(
        format!("{p}^(1+2)"),
        p * p * p,
        move |x, y| {
            let (a, b, c) = split(x);
            let (a2, b2, c2) = split(y);
            (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
        },
        labels,
    )
}

/// Group generated by invertible square matrices over `field`.
pub fn matrix_group(name: impl Into<String>, field: &GaloisField, gens: &[Matrix]) -> Result<Realization<Matrix>> {
    let n = gens.first().map(Matrix::n).ok_or_else(|| Error::Input("no generators".into()))?;
    for g in gens {
        if g.n() != n {
            return Err(Error::Input("generators have different sizes".into()));
        }
        if field.mat_inv(g).is_none() {
            return Err(Error::Input(format!("{} is singular", field.mat_format(g))));
        }
    }
    let (f1, f2) = (field.clone(), field.clone());
    Realization::generate(name, field.mat_identity(n), gens, move |a, b| f1.mat_mul(a, b), move |m| f2.mat_format(m))
}

const SL2_FIELDS: [u16; 5] = [3, 4, 5, 7, 9];

/// `SL(2, q)` as matrices, for `q ∈ {3, 4, 5, 7, 9}`.
pub fn sl2_realized(q: u16) -> Result<(GaloisField, Realization<Matrix>)> {
    if !SL2_FIELDS.contains(&q) {
        return Err(Error::OutOfRange(format!("SL(2,{q}) not supported; q must be one of {SL2_FIELDS:?}")));
    }
    let f = GaloisField::of_order(q)?;
    let mut gens = Vec::new();
    for a in [f.one(), f.primitive()] {
        let mut upper = f.mat_identity(2);
        upper.set(0, 1, a);
        let mut lower = f.mat_identity(2);
        lower.set(1, 0, a);
        gens.push(upper);
        gens.push(lower);
    }
    gens.dedup();
    let real = matrix_group(format!("SL(2,{q})"), &f, &gens)?;
    let q = q as usize;
    if real.group.order() != q * (q * q - 1) {
        return Err(Error::AxiomViolation(format!("SL(2,{q}) closed to order {}", real.group.order())));
    }
    Ok((f, real))
}

pub fn sl2(q: u16) -> Result<FiniteGroup> {
    Ok(sl2_realized(q)?.1.group)
}

/// `PSL(2, q) = SL(2, q) / Z`.
pub fn psl2(q: u16) -> Result<FiniteGroup> {
    let g = sl2(q)?;
    let z = g.center();
    Ok(g.quotient(&z)?.quotient.with_name(format!("PSL(2,{q})")))
}

/// Additive group of GF(p^n) with multiplication by a primitive element.
fn field_module(p: u16, n: u8) -> Result<(GaloisField, FiniteGroup, Vec<usize>)> {
    let f = GaloisField::new(p, n)?;
    let q = f.order() as usize;
    let ff = f.clone();
    let labels = f.elements().map(|e| f.format(e)).collect();
    let g = FiniteGroup::from_fn(
        format!("GF({q})+"),
        q,
        move |a, b| ff.add(FieldElem(a as u16), FieldElem(b as u16)).0 as usize,
        labels,
    )?;
    let w = f.primitive();
    let scale = f.elements().map(|e| f.mul(w, e).0 as usize).collect();
    Ok((f, g, scale))
}

/// `P × Q` with `P = GF(p^n)+`, `Q = GF(q^m)+`, acted on by multiplication
/// with primitive elements of both fields independently.
///
/// Requires `p ∤ q^m − 1` and `q ∤ p^n − 1`; see
/// [`gf_frobenius_pair_unchecked`] for the unrestricted construction.
pub fn gf_frobenius_pair(p: u16, n: u8, q: u16, m: u8) -> Result<(FiniteGroup, ActionSpec)> {
    check_pair_ranges(p, n, q, m)?;
    let pn = (p as u64).pow(n as u32);
    let qm = (q as u64).pow(m as u32);
    if (qm - 1) % p as u64 == 0 {
        return Err(Error::CoprimalityViolated(format!("{p} divides {q}^{m}-1 = {}", qm - 1)));
    }
    if (pn - 1) % q as u64 == 0 {
        return Err(Error::CoprimalityViolated(format!("{q} divides {p}^{n}-1 = {}", pn - 1)));
    }
    gf_frobenius_pair_unchecked(p, n, q, m)
}

fn check_pair_ranges(p: u16, n: u8, q: u16, m: u8) -> Result<()> {
    if !is_prime(p as u64) || !is_prime(q as u64) || p == q {
        return Err(Error::OutOfRange(format!("p = {p}, q = {q} must be distinct primes")));
    }
    if !(1..=2).contains(&n) || !(1..=2).contains(&m) {
        return Err(Error::OutOfRange(format!("exponents n = {n}, m = {m} must lie in 1..=2")));
    }
    Ok(())
}

/// The same construction without the coprimality restriction.
pub fn gf_frobenius_pair_unchecked(p: u16, n: u8, q: u16, m: u8) -> Result<(FiniteGroup, ActionSpec)> {
    check_pair_ranges(p, n, q, m)?;
    let (_, gp, sp) = field_module(p, n)?;
    let (_, gq, sq) = field_module(q, m)?;
    let g = gp.direct_product(&gq)?.with_name(format!("GF({})+ x GF({})+", gp.order(), gq.order()));
    let np = gp.order();
    let a1: Vec<usize> = g.elements().map(|x| sp[x % np] + np * (x / np)).collect();
    let a2: Vec<usize> = g.elements().map(|x| x % np + np * sq[x / np]).collect();
    let action = ActionSpec::new(
        &g,
        "A1xA2",
        vec![Automorphism::new(&g, a1)?, Automorphism::new(&g, a2)?],
        Provenance::Explicit,
    )?;
    Ok((g, action))
}
