use std::sync::Arc;

use proptest::prelude::*;

use chern_core::cech::{cech_delta, total_diff, CechCochain};
use chern_core::forms::{simplex_coord, Form, FormKey, GeneratorSet};
use chern_core::random::RandomData;
use chern_core::scalar::{q, Monomial, Poly, RationalFunction, Symbol, UTau};
use chern_core::simplex::{face_substitution, integrate};

fn base() -> Arc<GeneratorSet> {
    GeneratorSet::from_coords(&[Symbol::new("x"), Symbol::new("y"), Symbol::new("z")]).unwrap()
}

/// Polynomial in the coordinates of `gens` from `(exponents, coefficient)` pairs.
fn poly(gens: &GeneratorSet, terms: &[(Vec<u32>, i64)]) -> Poly {
    let coords: Vec<Symbol> = gens.generators().iter().map(|g| g.coord).collect();
    Poly::from_terms(terms.iter().map(|(e, c)| {
        let pairs = coords.iter().zip(e.iter()).map(|(s, &k)| (*s, k)).collect();
        (Monomial::from_pairs(pairs), q(*c, 1))
    }))
}

fn form_strategy(gens: Arc<GeneratorSet>) -> impl Strategy<Value = Form> {
    let n = gens.len();
    let term = (0u32..(1 << n), prop::collection::vec((prop::collection::vec(0u32..3, n), -4i64..=4), 1..3));
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        let mut f = Form::zero(&gens);
        for (wedge, p) in terms {
            let r = RationalFunction::new(poly(&gens, &p), Poly::one()).unwrap();
            f = f.add(&Form::monomial(&gens, FormKey { wedge, ut: UTau::ONE }, r));
        }
        f
    })
}

fn degree(f: &Form) -> Option<u32> {
    let d = f.degree()?;
    (f.min_degree() == Some(d)).then_some(d)
}

/// `∫_{Δ^ℓ} dω = -Σ_j (-1)^j ∫_{Δ^{ℓ-1}} δ_j^* ω` for forms on the simplex alone;
/// the sign is the coordinate orientation against the vertex order.
fn stokes_holds(w: &Form, l: usize) -> bool {
    let lhs = integrate(&w.d(), l).unwrap();
    let face = GeneratorSet::new(vec![]).unwrap().with_simplex(l - 1);
    let mut rhs = Form::zero(lhs.generators());
    for j in 0..=l {
        let pulled = w.pullback(&face_substitution(j, l).unwrap(), &face).unwrap();
        let i = integrate(&pulled, l - 1).unwrap().with_generators(lhs.generators()).unwrap();
        rhs = if j % 2 == 0 { rhs.add(&i) } else { rhs.sub(&i) };
    }
    lhs == rhs.neg()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(f in form_strategy(base().with_simplex(2))) {
        prop_assert!(f.d().d().is_zero());
    }

    #[test]
    fn leibniz(a in form_strategy(base()), b in form_strategy(base())) {
        let Some(p) = degree(&a) else { return Ok(()) };
        let sign = if p % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        let lhs = a.wedge(&b).d();
        let rhs = a.d().wedge(&b).add(&a.wedge(&b.d()).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_commutativity(a in form_strategy(base()), b in form_strategy(base())) {
        let (Some(p), Some(r)) = (degree(&a), degree(&b)) else { return Ok(()) };
        let sign = if (p * r) % 2 == 0 { q(1, 1) } else { q(-1, 1) };
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign));
    }

    #[test]
    fn stokes_on_simplices(
        l in 1usize..=3,
        w in form_strategy(GeneratorSet::new(vec![]).unwrap().with_simplex(3)),
    ) {
        // Keep the (ℓ-1)-form part on Δ^ℓ.
        let gens = GeneratorSet::new(vec![]).unwrap().with_simplex(l);
        let mut restricted = Form::zero(&gens);
        for (k, r) in w.terms() {
            if k.wedge >> l == 0 && k.wedge.count_ones() as usize == l - 1 && (l..3).all(|i| !r.contains_var(&simplex_coord(i + 1))) {
                restricted.insert(*k, r.clone());
            }
        }
        prop_assert!(stokes_holds(&restricted, l));
    }

    #[test]
    fn cech_and_total_differentials_square_to_zero(seed in 0u64..1000) {
        let mut rd = RandomData::new(seed, &["x", "y"]);
        rd.max_degree = 1;
        let model = rd.cover_model(4, 1, 3).unwrap();
        let mut entries = std::collections::BTreeMap::new();
        for n in 0..=1 {
            for index in model.multi_indices(n) {
                let gens = model.generators(&index).unwrap();
                let f = rd.one_form().with_generators(&gens).unwrap();
                let g = Form::function(&gens, RationalFunction::new(rd.poly(), Poly::one()).unwrap());
                entries.insert(index, f.add(&g));
            }
        }
        let c = CechCochain { depth: 1, entries };
        let dd = cech_delta(&model, &cech_delta(&model, &c).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
        let tt = total_diff(&model, &total_diff(&model, &c).unwrap()).unwrap();
        prop_assert!(tt.is_zero());
    }
}

#[test]
fn stokes_examples() {
    for l in 1..=3 {
        let gens = GeneratorSet::new(vec![]).unwrap().with_simplex(l);
        let t: Vec<RationalFunction> = (1..=l).map(|k| RationalFunction::var(simplex_coord(k))).collect();
        let coeff = t.iter().fold(RationalFunction::one(), |a, b| a.mul(b)).mul(&t[0]);
        let wedge = (1u32 << (l - 1)) - 1;
        let w = Form::monomial(&gens, FormKey { wedge, ut: UTau::ONE }, coeff);
        assert!(!integrate(&w.d(), l).unwrap().is_zero());
        assert!(stokes_holds(&w, l));
    }
}
