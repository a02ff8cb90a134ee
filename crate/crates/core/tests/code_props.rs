use std::collections::BTreeMap;

use cartcode::codes::{enumerate_code, rank, Enumeration};
use cartcode::{
    codeword_weight, generator_matrix, min_weight_witness, second_weight_witness, CodeSpec,
    EnumerationOptions, Field, FieldElement, GeneratorMatrix,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(field: &str, sizes: &[u64], d: u64) -> CodeSpec {
    let field = Field::parse(field, None).unwrap();
    let sets: Vec<Vec<u64>> = sizes.iter().map(|&s| (0..s).collect()).collect();
    CodeSpec::from_indices(&field, &sets, d).unwrap()
}

/// Spectrum from encoding every coefficient vector with plain element arithmetic.
fn naive_spectrum(g: &GeneratorMatrix) -> BTreeMap<u64, u64> {
    let field = g.spec().field().clone();
    let q = field.order();
    let k = g.row_count();
    let mut out = BTreeMap::new();
    for idx in 0..q.pow(k as u32) {
        let mut rest = idx;
        let coeffs: Vec<FieldElement> = (0..k)
            .map(|_| {
                let c = field.element(rest % q).unwrap();
                rest /= q;
                c
            })
            .collect();
        let word = g.encode(&coeffs).unwrap();
        *out.entry(codeword_weight(&word) as u64).or_insert(0) += 1;
    }
    out
}

fn run(g: &GeneratorMatrix, chunks: usize, scalar_classes: bool) -> Enumeration {
    let opts = EnumerationOptions { budget: u64::MAX, chunks, jobs: 2, scalar_classes };
    enumerate_code(g, &opts).unwrap()
}

#[test]
fn kernel_agrees_with_naive_encoding() {
    for (field, sizes, d) in [
        ("2^1", vec![2, 2, 2], 2),
        ("3^1", vec![3, 3], 2),
        ("3^1", vec![2, 3], 1),
        ("2^2", vec![3, 4], 2),
        ("5^1", vec![2, 5], 3),
        ("2^3", vec![3, 3], 1),
        ("3^1", vec![3, 3, 3], 1),
    ] {
        let g = generator_matrix(&spec(field, &sizes, d));
        let expected = naive_spectrum(&g);
        for (chunks, classes) in [(1, false), (3, false), (1, true), (5, true)] {
            let got = run(&g, chunks, classes);
            let counts: BTreeMap<u64, u64> = got.spectrum.counts.iter().copied().collect();
            assert_eq!(counts, expected, "{field} {sizes:?} d={d} chunks={chunks} classes={classes}");
            assert_eq!(got.footprint_violations, 0);
        }
    }
}

#[test]
fn codes_are_nested() {
    for (field, sizes) in [("3^1", vec![3, 3]), ("2^2", vec![2, 3, 4]), ("5^1", vec![4, 5])] {
        let top: u64 = sizes.iter().map(|s| s - 1).sum();
        for d in 1..top {
            let small = generator_matrix(&spec(field, &sizes, d));
            let big = generator_matrix(&spec(field, &sizes, d + 1));
            let mut stacked = big.rows().to_vec();
            stacked.extend_from_slice(small.rows());
            assert_eq!(rank(&stacked), big.rank(), "{field} {sizes:?} d={d}");
            assert!(small.rank() < big.rank());
        }
    }
}

#[test]
fn rank_equals_dimension_across_degrees() {
    for (field, sizes) in [("2^2", vec![2, 3, 4]), ("7^1", vec![3, 7]), ("3^2", vec![2, 5, 9])] {
        for d in 1..=sizes.iter().map(|s| s - 1).sum::<u64>() + 1 {
            let s = spec(field, &sizes, d);
            assert_eq!(generator_matrix(&s).rank() as u64, s.dimension());
        }
    }
}

#[test]
fn witnesses_attain_their_weights() {
    for (field, sizes, d) in [
        ("3^1", vec![3, 3], 1),
        ("3^1", vec![3, 3], 2),
        ("2^2", vec![4, 4], 3),
        ("2^2", vec![3, 4], 2),
        ("5^1", vec![4, 5], 3),
        ("5^1", vec![2, 3, 5], 4),
        ("3^1", vec![3, 3, 3], 2),
    ] {
        let s = spec(field, &sizes, d);
        let g = generator_matrix(&s);
        let w = codeword_weight(&g.encode_poly(&min_weight_witness(&s).unwrap()).unwrap());
        assert_eq!(w as u64, s.min_distance().value);
        if let Ok(f) = second_weight_witness(&s) {
            let w2 = codeword_weight(&g.encode_poly(&f).unwrap());
            assert_eq!(w2 as u64, s.second_weight().unwrap().value);
        }
    }
}

#[test]
fn random_codewords_respect_min_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (field, sizes, d) in [("2^3", vec![5, 6, 8], 6), ("7^1", vec![6, 7], 5), ("3^2", vec![4, 9, 9], 9)] {
        let s = spec(field, &sizes, d);
        let g = generator_matrix(&s);
        let q = s.field().order();
        let dmin = s.min_distance().value;
        for _ in 0..300 {
            let coeffs: Vec<FieldElement> =
                (0..g.row_count()).map(|_| s.field().element(rng.gen_range(0..q)).unwrap()).collect();
            let w = codeword_weight(&g.encode(&coeffs).unwrap()) as u64;
            assert!(w == 0 || w >= dmin, "{field} {sizes:?} d={d}: weight {w} < {dmin}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_preserves_weight(raw in prop::collection::vec(0u64..4, 6), c in 1u64..4) {
        let s = spec("2^2", &[3, 4], 2);
        let g = generator_matrix(&s);
        let f = s.field();
        let coeffs: Vec<FieldElement> = raw.iter().map(|&x| f.element(x).unwrap()).collect();
        let scaled: Vec<FieldElement> = coeffs.iter().map(|x| x.mul(&f.element(c).unwrap()).unwrap()).collect();
        prop_assert_eq!(
            codeword_weight(&g.encode(&coeffs).unwrap()),
            codeword_weight(&g.encode(&scaled).unwrap())
        );
    }
}
