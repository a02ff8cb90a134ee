use std::cmp::Ordering;

use cartcode::galois::{Field, FieldElement};
use cartcode::multipoly::{grlex_compare, normal_form, vanishing_poly, FootprintBox, Monomial, MultiPoly};
use proptest::prelude::*;

fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..6, n).prop_map(Monomial::new)
}

proptest! {
    #[test]
    fn grlex_is_a_monomial_order(u in monomial(3), v in monomial(3), w in monomial(3)) {
        let uv = grlex_compare(&u, &v).unwrap();
        prop_assert_eq!(uv.reverse(), grlex_compare(&v, &u).unwrap());
        if uv == Ordering::Equal {
            prop_assert_eq!(&u, &v);
        }
        if uv == Ordering::Less && grlex_compare(&v, &w).unwrap() == Ordering::Less {
            prop_assert_eq!(grlex_compare(&u, &w).unwrap(), Ordering::Less);
        }
        if uv == Ordering::Less {
            prop_assert_eq!(grlex_compare(&u.mul(&w), &v.mul(&w)).unwrap(), Ordering::Less);
        }
        prop_assert_ne!(grlex_compare(&Monomial::one(3), &u).unwrap(), Ordering::Greater);
    }
}

#[derive(Debug, Clone)]
struct Setup {
    field: Field,
    subsets: Vec<Vec<u64>>,
    terms: Vec<(Vec<u32>, u64)>,
}

fn setup() -> impl Strategy<Value = Setup> {
    let fields = prop::sample::select(vec![(2u64, 1usize), (3, 1), (2, 2), (5, 1), (3, 2)]);
    (fields, 1usize..=3).prop_flat_map(|((p, m), n)| {
        let field = Field::new(p, m, None).unwrap();
        let q = field.order();
        let subset = prop::sample::subsequence((0..q).collect::<Vec<_>>(), 1..=q as usize).prop_shuffle();
        let subsets = prop::collection::vec(subset, n);
        let terms = prop::collection::vec((prop::collection::vec(0u32..(2 * q as u32 + 1), n), 0..q), 0..7);
        (Just(field), subsets, terms).prop_map(|(field, subsets, terms)| Setup { field, subsets, terms })
    })
}

impl Setup {
    fn poly(&self) -> MultiPoly {
        let n = self.subsets.len();
        MultiPoly::from_terms(
            &self.field,
            n,
            self.terms.iter().map(|(e, c)| (Monomial::new(e.clone()), self.field.element(*c).unwrap())),
        )
        .unwrap()
    }

    fn divisors(&self) -> Vec<MultiPoly> {
        let n = self.subsets.len();
        self.subsets
            .iter()
            .enumerate()
            .map(|(i, s)| vanishing_poly(&self.field, &self.elements(s), i, n).unwrap())
            .collect()
    }

    fn elements(&self, s: &[u64]) -> Vec<FieldElement> {
        s.iter().map(|&i| self.field.element(i).unwrap()).collect()
    }

    fn points(&self) -> Vec<Vec<FieldElement>> {
        let mut pts = vec![Vec::new()];
        for s in &self.subsets {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    self.elements(s).into_iter().map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        pts
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn normal_form_reduces_into_box(s in setup()) {
        let f = s.poly();
        let fs = s.divisors();
        let r = normal_form(&f, &fs).unwrap();
        let bounds: Vec<u32> = s.subsets.iter().map(|x| x.len() as u32).collect();
        let boxed = FootprintBox::new(bounds).unwrap();
        for (mono, _) in r.terms() {
            prop_assert!(boxed.contains(mono));
        }
        prop_assert_eq!(normal_form(&r, &fs).unwrap(), r.clone());
        if let (Some(dr), Some(df)) = (r.degree(), f.degree()) {
            prop_assert!(dr <= df);
        }
        for p in s.points() {
            prop_assert_eq!(f.evaluate(&p).unwrap(), r.evaluate(&p).unwrap());
        }
    }

    #[test]
    fn multiples_of_divisors_vanish(s in setup(), i in 0usize..3) {
        let fs = s.divisors();
        let i = i % fs.len();
        let product = s.poly().mul(&fs[i]).unwrap();
        prop_assert!(normal_form(&product, &fs).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_congruence_on_full_grid(
        pm in prop::sample::select(vec![(2u64, 1usize), (3, 1), (2, 2)]),
        n in 1usize..=2,
        raw in prop::collection::vec((prop::collection::vec(0u32..4, 2), 0u64..4), 1..4),
    ) {
        let field = Field::new(pm.0, pm.1, None).unwrap();
        let q = field.order();
        let all: Vec<FieldElement> = field.elements().collect();
        let fs: Vec<MultiPoly> = (0..n).map(|i| vanishing_poly(&field, &all, i, n).unwrap()).collect();
        let f = MultiPoly::from_terms(
            &field,
            n,
            raw.iter().map(|(e, c)| (Monomial::new(e[..n].to_vec()), field.element(c % q).unwrap())),
        )
        .unwrap();
        let reduced = normal_form(&f, &fs).unwrap();
        let powered = normal_form(&reduced.pow(q as u32).unwrap(), &fs).unwrap();
        prop_assert_eq!(powered, reduced);
    }
}

#[test]
fn delta_count_matches_enumeration() {
    let boxes: Vec<Vec<u32>> = vec![vec![3, 3], vec![3, 4], vec![2, 5, 7], vec![4, 4, 4, 4], vec![10, 10, 10, 10], vec![9, 1, 6]];
    for bounds in boxes {
        let boxed = FootprintBox::new(bounds.clone()).unwrap();
        let all = boxed.monomials_up_to(u64::MAX);
        assert_eq!(all.len() as u64, boxed.cardinality());
        for a in &all {
            let brute = all.iter().filter(|m| !a.divides(m)).count() as u64;
            assert_eq!(boxed.delta_complement_count(a).unwrap(), brute, "{bounds:?} {a}");
        }
    }
}

#[test]
fn footprint_listing_is_sorted_and_bounded() {
    let boxed = FootprintBox::new(vec![3, 4, 2]).unwrap();
    for d in 0..8 {
        let ms = boxed.monomials_up_to(d);
        assert!(ms.windows(2).all(|w| grlex_compare(&w[0], &w[1]).unwrap() == Ordering::Less));
        assert!(ms.iter().all(|m| u64::from(m.degree()) <= d && boxed.contains(m)));
    }
}
