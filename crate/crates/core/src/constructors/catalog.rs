//! Worked examples with their expected facts.
//!
//! Facts marked `stated` are asserted by the published examples; facts
//! marked `derived` were computed independently and pinned as regressions.

use crate::action::{full_aut, inner_action, inner_action_by, overgroup_action_realized, ActionSpec, Automorphism, Provenance};
use crate::error::{Error, Result};
use crate::graph::{GraphShape, SingularDetails};
use crate::group::{Element, FiniteGroup};
use crate::iso::DEFAULT_BUDGET;
use crate::verifier::{CaseTag, TheoremCase};

use super::{
    alt_realized, cyclic, dihedral, extraspecial_p3_exp_p, gf_frobenius_pair, matrix_group, perm_conj, perm_from_cycles,
    quaternion8, sl2, sym_realized, FieldElem, GaloisField, Matrix,
};

/// Facts expected for one action of an entry. Every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpectedFacts {
    pub action: String,
    pub citation: String,
    /// Multiset of nonidentity orbit sizes.
    pub orbit_sizes: Option<Vec<usize>>,
    pub vertices: Option<usize>,
    pub edges: Option<usize>,
    pub triangles: Option<usize>,
    pub shape: Option<GraphShape>,
    pub singular_size: Option<usize>,
    /// An element whose orbit is the singular vertex.
    pub singular_rep: Option<Element>,
    /// Element orders at the degree-1 vertices.
    pub pendant_orders: Option<Vec<usize>>,
    pub case: Option<CaseTag>,
    pub case_detail: Option<TheoremCase>,
}

impl ExpectedFacts {
    fn new(action: &str, citation: &str) -> Self {
        ExpectedFacts { action: action.into(), citation: citation.into(), ..Default::default() }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub group: FiniteGroup,
    pub actions: Vec<ActionSpec>,
    pub expected_order: Option<usize>,
    pub order_citation: String,
    pub expected: Vec<ExpectedFacts>,
    /// Quantities computed while building the entry, with remarks.
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn action(&self, name: &str) -> Option<&ActionSpec> {
        self.actions.iter().find(|a| a.name == name)
    }

    pub fn action_names(&self) -> Vec<&str> {
        self.actions.iter().map(|a| a.name.as_str()).collect()
    }
}

fn entry(name: &str, description: &str, group: FiniteGroup, actions: Vec<ActionSpec>) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        description: description.into(),
        group,
        actions,
        expected_order: None,
        order_citation: String::new(),
        expected: Vec::new(),
        notes: Vec::new(),
    }
}

fn singular(triangles: usize, tails: Vec<usize>) -> GraphShape {
    GraphShape::FGraphWithSingular(SingularDetails { triangles, cycles: Vec::new(), tails })
}

type Builder = fn() -> Result<CatalogEntry>;

const ENTRIES: [(&str, Builder); 15] = [
    ("e1-order12", e1),
    ("e2-sl25", e2),
    ("e3-z7xa5", e3),
    ("e3-a5", e3_a5),
    ("e4-affine2592", e4),
    ("e5-order72", e5),
    ("e6-extraspecial27", e6),
    ("e7-z2xs3", e7_z2xs3),
    ("e7-dic12", e7_dic12),
    ("sl23-aut", sl23),
    ("q8-aut", q8),
    ("d8-aut", d8),
    ("frob-3-1-5-1", || frobenius_pair_entry(3, 1, 5, 1)),
    ("frob-3-2-5-1", || frobenius_pair_entry(3, 2, 5, 1)),
    ("frob-5-1-7-1", || frobenius_pair_entry(5, 1, 7, 1)),
];

pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    let (_, build) = ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Input(format!("unknown catalog entry {name}")))?;
    build()
}

/// Every entry, in catalog order.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    ENTRIES.iter().map(|(_, build)| build()).collect()
}

/// `Z3 ⋊ Z4 = ⟨σ⟩⋊⟨τ⟩` with `τ` inverting `σ`, acted on by conjugation with
/// `τ` and by `α: σ ↦ σ, τ ↦ τ⁻¹`.
pub fn order12_group() -> Result<(FiniteGroup, Element, Element)> {
    let n = cyclic(3)?;
    let h = cyclic(4)?;
    let inversion = Automorphism::new(&n, vec![0, 2, 1])?;
    let g = n.semidirect_product_on_generators(&h, &[1], &[inversion])?.with_name("Z3:Z4");
    // (n, h) at index n + 3h
    Ok((g, 1, 3))
}

fn e1() -> Result<CatalogEntry> {
    let (g, sigma, tau) = order12_group()?;
    let alpha = Automorphism::from_generator_images(&g, &[sigma, tau], &[sigma, g.inv(tau)])?;
    let a = ActionSpec::new(&g, "A", vec![Automorphism::inner(&g, tau), alpha], Provenance::Explicit)?;
    let mut e = entry("e1-order12", "Z3:Z4 with A generated by conjugation by tau and alpha", g, vec![a]);
    e.expected_order = Some(12);
    e.order_citation = "stated: sigma of order 3, tau of order 4".into();
    let mut f = ExpectedFacts::new("A", "stated: F-graph with 5 vertices, one triangle and two P2 tails");
    f.vertices = Some(5);
    f.triangles = Some(1);
    f.shape = Some(singular(1, vec![1, 1]));
    f.singular_rep = Some(e.group.pow(tau, 2));
    f.case = Some(CaseTag::Case4Frobenius);
    e.expected.push(f);
    let mut d = ExpectedFacts::new("A", "derived: orbit scan and edge count");
    d.orbit_sizes = Some(vec![1, 2, 2, 2, 4]);
    d.edges = Some(5);
    d.case_detail = Some(TheoremCase::Case4Frobenius { p: 2, q: 3, p_order: 2, q_order: 3, complement_order: 2 });
    e.expected.push(d);
    Ok(e)
}

fn e2() -> Result<CatalogEntry> {
    let g = sl2(5)?;
    let aut = full_aut(&g, DEFAULT_BUDGET)?;
    let mut e = entry("e2-sl25", "SL(2,5) under its full automorphism group", g, vec![aut.clone()]);
    e.expected_order = Some(120);
    e.order_citation = "derived: q(q^2-1) for q = 5".into();
    let mut f = ExpectedFacts::new(&aut.name, "stated: orbit lengths 1,20,20,30,24,24; 2 triangles and a tail P2");
    f.orbit_sizes = Some(vec![1, 20, 20, 30, 24, 24]);
    f.triangles = Some(2);
    f.shape = Some(singular(2, vec![1]));
    f.singular_size = Some(1);
    f.pendant_orders = Some(vec![4]);
    f.case = Some(CaseTag::Case3Quasisimple);
    f.case_detail = Some(TheoremCase::Case3Quasisimple { name: "SL(2,5)".into() });
    e.expected.push(f);
    Ok(e)
}

/// Conjugation by `h` on a realised permutation group, as an automorphism.
fn perm_conjugation(real: &crate::group::Realization<super::Perm>, h: &super::Perm) -> Result<Vec<Element>> {
    real.elements
        .iter()
        .map(|x| real.index_of(&perm_conj(x, h)).ok_or(Error::NotNormal))
        .collect()
}

fn e3() -> Result<CatalogEntry> {
    let z7 = cyclic(7)?;
    let a5 = alt_realized(5)?;
    let g = z7.direct_product(&a5.group)?.with_name("Z7xA5");
    let n7 = 7;
    // (a, b) at index a + 7b
    let lift_z7 = |m: &dyn Fn(usize) -> usize| -> Vec<Element> { g.elements().map(|x| m(x % n7) + n7 * (x / n7)).collect() };
    let lift_a5 = |m: &[Element]| -> Vec<Element> { g.elements().map(|x| x % n7 + n7 * m[x / n7]).collect() };
    let u1 = Automorphism::new(&g, lift_z7(&|a| (3 * a) % 7))?;
    let s5 = [perm_from_cycles(5, &[&[1, 2]]), perm_from_cycles(5, &[&[1, 2, 3, 4, 5]])];
    let s4 = [perm_from_cycles(5, &[&[1, 2]]), perm_from_cycles(5, &[&[1, 2, 3, 4]])];
    let mut u12 = vec![u1.clone()];
    for h in &s5 {
        u12.push(Automorphism::new(&g, lift_a5(&perm_conjugation(&a5, h)?))?);
    }
    let mut b = vec![u1];
    for h in &s4 {
        b.push(Automorphism::new(&g, lift_a5(&perm_conjugation(&a5, h)?))?);
    }
    let actions = vec![
        ActionSpec::new(&g, "U1xU2", u12, Provenance::Explicit)?,
        ActionSpec::new(&g, "B", b, Provenance::Explicit)?,
    ];
    let mut e = entry("e3-z7xa5", "Z7 x A5; U1 multiplies Z7 by a primitive root, U2 = S5 and U3 = S4 conjugate A5", g, actions);
    e.expected_order = Some(420);
    e.order_citation = "derived: 7 * 60".into();
    let mut f = ExpectedFacts::new("U1xU2", "stated: friendship graph with 3 triangles");
    f.shape = Some(GraphShape::Friendship { triangles: 3 });
    f.case = Some(CaseTag::Case3Product);
    e.expected.push(f);
    let mut f = ExpectedFacts::new("B", "stated: friendship graph with 5 triangles");
    f.shape = Some(GraphShape::Friendship { triangles: 5 });
    f.case = Some(CaseTag::Case3Product);
    f.case_detail = Some(TheoremCase::Case3Product { p: 7, op_order: 7, layer_order: 60 });
    e.expected.push(f);
    Ok(e)
}

fn e3_a5() -> Result<CatalogEntry> {
    let a5 = alt_realized(5)?;
    let s4 = [perm_from_cycles(5, &[&[1, 2]]), perm_from_cycles(5, &[&[1, 2, 3, 4]])];
    let gens = s4
        .iter()
        .map(|h| Automorphism::new(&a5.group, perm_conjugation(&a5, h)?))
        .collect::<Result<Vec<_>>>()?;
    let action = ActionSpec::new(&a5.group, "S4", gens, Provenance::Overgroup)?;
    let mut e = entry("e3-a5", "A5 under conjugation by the point stabiliser S4 of S5", a5.group.clone(), vec![action]);
    e.expected_order = Some(60);
    e.order_citation = "derived: 5!/2".into();
    let mut f = ExpectedFacts::new("S4", "stated: orbit lengths 3,8,24,12,12; 5 vertices and no edges");
    f.orbit_sizes = Some(vec![3, 8, 24, 12, 12]);
    f.vertices = Some(5);
    f.edges = Some(0);
    f.shape = Some(GraphShape::NotConnected);
    f.case = Some(CaseTag::NotApplicable);
    e.expected.push(f);
    Ok(e)
}

/// The 4×4 matrices over GF(3) generating `S` and `B` in the affine example.
pub struct AffineExampleMatrices {
    pub field: GaloisField,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub gamma: Matrix,
    pub delta: Matrix,
    pub f: Matrix,
    pub g: Matrix,
}

pub fn affine_example_matrices() -> Result<AffineExampleMatrices> {
    let field = GaloisField::new(3, 1)?;
    let n1 = field.mat_from_ints(&[&[0, 1], &[-1, 0]]);
    let n2 = field.mat_from_ints(&[&[1, 0], &[0, -1]]);
    let o = Matrix::zero(2);
    let i2 = field.mat_identity(2);
    let neg_i2 = field.mat_neg(&i2);
    Ok(AffineExampleMatrices {
        alpha: Matrix::blocks(&n1, &o, &o, &n1),
        beta: Matrix::blocks(&n2, &o, &o, &n2),
        gamma: Matrix::blocks(&i2, &i2, &i2, &neg_i2),
        delta: Matrix::blocks(&o, &neg_i2, &i2, &o),
        f: field.mat_from_ints(&[&[1, 1, -1, -1], &[0, 0, -1, 1], &[0, 0, -1, -1], &[-1, 1, 1, -1]]),
        g: field.mat_from_ints(&[&[0, 1, 0, -1], &[0, 0, 1, 0], &[0, 1, 0, 1], &[1, 0, 0, 0]]),
        field,
    })
}

fn translations(field: &GaloisField, k: usize) -> Vec<Matrix> {
    (0..k)
        .map(|i| {
            let v: Vec<FieldElem> = (0..k).map(|j| if i == j { field.one() } else { field.zero() }).collect();
            field.mat_identity(k).affine(&v)
        })
        .collect()
}

fn linear(field: &GaloisField, m: &Matrix) -> Matrix {
    m.affine(&vec![field.zero(); m.n()])
}

fn e4() -> Result<CatalogEntry> {
    let m = affine_example_matrices()?;
    let fld = m.field.clone();
    let mut gens = translations(&fld, 4);
    for x in [&m.alpha, &m.beta, &m.gamma, &m.delta] {
        gens.push(linear(&fld, x));
    }
    let real = matrix_group("M:S", &fld, &gens)?;
    let mut over = gens.clone();
    over.push(linear(&fld, &m.f));
    over.push(linear(&fld, &m.g));
    let conj_field = fld.clone();
    let action = overgroup_action_realized(&real, &over, move |x, h| conj_field.mat_conj(x, h), "MSB")?;
    let beta = real.index_of(&linear(&fld, &m.beta)).expect("beta lies in G");
    let b_order = matrix_group("B", &fld, &[m.f.clone(), m.g.clone()])?.group.order();
    let mut e = entry(
        "e4-affine2592",
        "M:S with M = GF(3)^4 and S = <alpha,beta,gamma,delta>, acted on by conjugation with M, S, f and g",
        real.group.clone(),
        vec![action],
    );
    e.expected_order = Some(2592);
    e.order_citation = "stated: elementary abelian of order 3^4 extended by S of order 2^5".into();
    e.notes.push(format!(
        "|B| = |<f,g>| = {b_order}; B/Z(B) of order 20 with |Z(B)| = 2 implies 40{}",
        if b_order == 40 { "" } else { " (divergence)" }
    ));
    let mut f = ExpectedFacts::new("MSB", "stated: orbit lengths 3^4-1, 3^4, 3^2*10, 3^2(3^2-1)*10, 3^4*20; friendship graph with two triangles joined at the orbit of beta");
    f.orbit_sizes = Some(vec![80, 81, 90, 720, 1620]);
    f.shape = Some(GraphShape::Friendship { triangles: 2 });
    f.singular_size = Some(90);
    f.singular_rep = Some(beta);
    f.case = Some(CaseTag::Case1bQ8D8);
    f.case_detail = Some(TheoremCase::Case1bQ8D8 { fitting_order: 81, h_over_g: 20, frobenius_kernel: 5 });
    e.expected.push(f);
    Ok(e)
}

/// `y1`, `y2`, `z` of the order-72 example, as 2×2 matrices over GF(3).
pub fn order72_matrices() -> Result<(GaloisField, Matrix, Matrix, Matrix)> {
    let fld = GaloisField::new(3, 1)?;
    let y1 = fld.mat_from_ints(&[&[0, 1], &[2, 0]]);
    let y2 = fld.mat_from_ints(&[&[1, 1], &[1, 2]]);
    let z = fld.mat_from_ints(&[&[1, 0], &[0, 2]]);
    Ok((fld, y1, y2, z))
}

fn e5() -> Result<CatalogEntry> {
    let (fld, y1, y2, z) = order72_matrices()?;
    let mut gens = translations(&fld, 2);
    gens.push(linear(&fld, &y1));
    gens.push(linear(&fld, &z));
    let real = matrix_group("M<y1,z>", &fld, &gens)?;
    let mut over = translations(&fld, 2);
    for x in [&y1, &y2, &z] {
        over.push(linear(&fld, x));
    }
    let conj_field = fld.clone();
    let action = overgroup_action_realized(&real, &over, move |x, h| conj_field.mat_conj(x, h), "MT")?;
    let mut e = entry("e5-order72", "M<y1,z> with M = GF(3)^2, acted on by conjugation with MT, T = <y1,y2,z>", real.group.clone(), vec![action]);
    e.expected_order = Some(72);
    e.order_citation = "stated: group of order 72".into();
    let mut f = ExpectedFacts::new("MT", "stated: orbit lengths 8, 9, 18, 12, 24; a triangle together with a tail");
    f.orbit_sizes = Some(vec![8, 9, 18, 12, 24]);
    f.triangles = Some(1);
    f.shape = Some(singular(1, vec![2]));
    f.case = Some(CaseTag::Case1aD8);
    f.case_detail = Some(TheoremCase::Case1aD8 { q: 3, fitting_order: 9, h_over_g: 2 });
    e.expected.push(f);
    Ok(e)
}

fn e6() -> Result<CatalogEntry> {
    let g = extraspecial_p3_exp_p(3)?;
    // (a,b,c) at index a + 3b + 9c
    let (a, b) = (1, 3);
    let x = Automorphism::from_generator_images(&g, &[a, b], &[g.inv(b), a])?;
    let t = Automorphism::from_generator_images(&g, &[a, b], &[g.inv(a), b])?;
    let inner = inner_action(&g).generators;
    let mut a1 = inner.clone();
    a1.extend([x.clone(), t.clone()]);
    let mut a2 = inner;
    a2.extend([x.compose(&x), t]);
    let actions = vec![
        ActionSpec::new(&g, "A1", a1, Provenance::Explicit)?,
        ActionSpec::new(&g, "A2", a2, Provenance::Explicit)?,
    ];
    let mut e = entry("e6-extraspecial27", "extraspecial 3^(1+2) of exponent 3 with A1 = Inn.<x,t> and A2 = Inn.<x^2,t>", g, actions);
    e.expected_order = Some(27);
    e.order_citation = "stated: extraspecial of order 3^3".into();
    let mut f = ExpectedFacts::new("A1", "stated: P3");
    f.shape = Some(GraphShape::Path { vertices: 3 });
    f.case = Some(CaseTag::NotApplicable);
    e.expected.push(f);
    let mut f = ExpectedFacts::new("A2", "stated: star graph with 4 vertices");
    f.shape = Some(GraphShape::Star { vertices: 4 });
    f.case = Some(CaseTag::NotApplicable);
    e.expected.push(f);
    Ok(e)
}

fn inner_family(g: &FiniteGroup, two: Element, three: Element) -> Vec<ActionSpec> {
    vec![
        inner_action(g),
        inner_action_by(g, &[two], "syl2-inn"),
        inner_action_by(g, &[three], "syl3-inn"),
    ]
}

fn e7_z2xs3() -> Result<CatalogEntry> {
    let s3 = sym_realized(3)?;
    let g = cyclic(2)?.direct_product(&s3.group)?.with_name("Z2xS3");
    let t = s3.index_of(&perm_from_cycles(3, &[&[1, 2]])).expect("transposition");
    let c = s3.index_of(&perm_from_cycles(3, &[&[1, 2, 3]])).expect("3-cycle");
    // (a, b) at index a + 2b
    let actions = inner_family(&g, 2 * t, 2 * c);
    let mut e = entry("e7-z2xs3", "Z2 x S3 with inner actions", g, actions);
    e.expected_order = Some(12);
    e.order_citation = "derived: 2 * 6".into();
    let mut f = ExpectedFacts::new("inner", "stated: friendship graph with two triangles when A is not a 2-group");
    f.shape = Some(GraphShape::Friendship { triangles: 2 });
    f.case = Some(CaseTag::Case4Frobenius);
    e.expected.push(f);
    let mut f = ExpectedFacts::new("syl2-inn", "derived: orbit scan gives three triangles");
    f.shape = Some(GraphShape::Friendship { triangles: 3 });
    f.case = Some(CaseTag::Case4Frobenius);
    e.expected.push(f);
    Ok(e)
}

fn e7_dic12() -> Result<CatalogEntry> {
    let (g, sigma, tau) = order12_group()?;
    let actions = inner_family(&g, tau, sigma);
    let mut e = entry("e7-dic12", "Z3:Z4 with inner actions", g, actions);
    e.expected_order = Some(12);
    e.order_citation = "stated: sigma of order 3, tau of order 4".into();
    let mut f = ExpectedFacts::new("inner", "stated: friendship graph with two triangles when A is not a 2-group");
    f.shape = Some(GraphShape::Friendship { triangles: 2 });
    f.case = Some(CaseTag::Case4Frobenius);
    e.expected.push(f);
    Ok(e)
}

fn sl23() -> Result<CatalogEntry> {
    let g = sl2(3)?;
    let aut = full_aut(&g, DEFAULT_BUDGET)?;
    let mut e = entry("sl23-aut", "SL(2,3) under its full automorphism group", g, vec![aut.clone()]);
    e.expected_order = Some(24);
    e.order_citation = "derived: q(q^2-1) for q = 3".into();
    let mut f = ExpectedFacts::new(&aut.name, "derived: orbit scan; triangle on -1 and the elements of order 3 and 6, tail of order-4 elements");
    f.orbit_sizes = Some(vec![1, 6, 8, 8]);
    f.shape = Some(singular(1, vec![1]));
    f.pendant_orders = Some(vec![4]);
    f.case = Some(CaseTag::Case2a);
    f.case_detail = Some(TheoremCase::Case2a { p: 2, normal_prime: 3, complement_order: 1 });
    e.expected.push(f);
    Ok(e)
}

fn q8() -> Result<CatalogEntry> {
    let g = quaternion8()?;
    let aut = full_aut(&g, DEFAULT_BUDGET)?;
    let mut e = entry("q8-aut", "Q8 under its full automorphism group", g, vec![aut.clone()]);
    e.expected_order = Some(8);
    e.order_citation = "derived: definition".into();
    let mut f = ExpectedFacts::new(&aut.name, "derived: -1 and one orbit of six elements of order 4");
    f.orbit_sizes = Some(vec![1, 6]);
    f.shape = Some(GraphShape::Path { vertices: 2 });
    f.case = Some(CaseTag::NotApplicable);
    e.expected.push(f);
    Ok(e)
}

fn d8() -> Result<CatalogEntry> {
    let g = dihedral(8)?;
    let aut = full_aut(&g, DEFAULT_BUDGET)?;
    let mut e = entry("d8-aut", "D8 under its full automorphism group", g, vec![aut.clone()]);
    e.expected_order = Some(8);
    e.order_citation = "derived: definition".into();
    let mut f = ExpectedFacts::new(&aut.name, "derived: rotations of order 4 and reflections both hang off r^2");
    f.orbit_sizes = Some(vec![1, 2, 4]);
    f.shape = Some(GraphShape::Path { vertices: 3 });
    f.case = Some(CaseTag::NotApplicable);
    e.expected.push(f);
    Ok(e)
}

/// [`gf_frobenius_pair`] as a catalog entry; the graph is always a triangle.
pub fn frobenius_pair_entry(p: u16, n: u8, q: u16, m: u8) -> Result<CatalogEntry> {
    let (g, action) = gf_frobenius_pair(p, n, q, m)?;
    let name = format!("frob-{p}-{n}-{q}-{m}");
    let order = (p as usize).pow(n as u32) * (q as usize).pow(m as u32);
    let mut e = entry(&name, "GF(p^n)+ x GF(q^m)+ with coprime multiplications by primitive elements", g, vec![action.clone()]);
    e.expected_order = Some(order);
    e.order_citation = "derived: p^n q^m".into();
    let mut f = ExpectedFacts::new(&action.name, "stated: coprime actions of this form give a triangle");
    f.shape = Some(GraphShape::Cycle { vertices: 3 });
    f.case = Some(CaseTag::NoSingularPxQ);
    e.expected.push(f);
    Ok(e)
}
