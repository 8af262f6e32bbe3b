use proptest::prelude::*;

use sl2fusion::schubert::BundleWeights;
use sl2fusion::verlinde::{classical_limit_check, fuse, product_chain, FusionRingElement};

/// Level-`k` product by the Kac–Walton rule: the classical Clebsch–Gordan
/// series, with each `[c]` reflected in the affine wall `c = k + 1`.
fn kac_walton(k: u32, a: u32, b: u32) -> Vec<i64> {
    let mut out = vec![0i64; k as usize + 1];
    let wall = k as i64 + 1;
    for c in (a.abs_diff(b)..=a + b).step_by(2) {
        let mut c = c as i64;
        let mut sign = 1;
        loop {
            if c == wall || c == -1 {
                sign = 0;
                break;
            }
            if c > wall {
                c = 2 * wall - c;
                sign = -sign;
            } else if c < -1 {
                c = -2 - c;
                sign = -sign;
            } else {
                break;
            }
        }
        if sign != 0 {
            out[c as usize] += sign;
        }
    }
    out
}

#[test]
fn fusion_matches_kac_walton() {
    for k in 0..=8 {
        for a in 0..=k {
            for b in 0..=k {
                let got: Vec<i64> = fuse(k, a, b)
                    .unwrap()
                    .coeffs()
                    .iter()
                    .map(|&x| x as i64)
                    .collect();
                assert_eq!(got, kac_walton(k, a, b), "k={k} [{a}][{b}]");
            }
        }
    }
}

#[test]
fn unit_and_simple_current() {
    for k in 0..=6 {
        let one = FusionRingElement::one(k);
        for a in 0..=k {
            assert_eq!(
                fuse(k, 0, a).unwrap(),
                FusionRingElement::basis(k, a).unwrap()
            );
            assert_eq!(
                one.mul(&FusionRingElement::basis(k, a).unwrap()),
                FusionRingElement::basis(k, a).unwrap()
            );
            // [k] permutes the basis: [k][a] = [k − a]
            assert_eq!(
                fuse(k, k, a).unwrap(),
                FusionRingElement::basis(k, k - a).unwrap()
            );
        }
        assert_eq!(fuse(k, k, k).unwrap(), one);
    }
}

#[test]
fn commutative_and_associative() {
    for k in 0..=5 {
        let basis: Vec<_> = (0..=k)
            .map(|a| FusionRingElement::basis(k, a).unwrap())
            .collect();
        for x in &basis {
            for y in &basis {
                assert_eq!(x.mul(y), y.mul(x));
                for z in &basis {
                    assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
                }
            }
        }
    }
}

#[test]
fn classical_limit_for_small_bundles() {
    let mut checked = 0;
    for n in 1..=6 {
        let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
        while let Some(v) = stack.pop() {
            if v.len() == n {
                assert!(
                    classical_limit_check(&BundleWeights::new(v.clone()).unwrap()).unwrap(),
                    "{v:?}"
                );
                checked += 1;
                continue;
            }
            let p: i64 = v.iter().map(|x| x + 1).product();
            let lo = v.last().copied().unwrap_or(0);
            for x in lo..=63 {
                if p * (x + 1) > 64 {
                    break;
                }
                let mut w = v.clone();
                w.push(x);
                stack.push(w);
            }
        }
    }
    assert!(checked > 50);
}

proptest! {
    #[test]
    fn chains_ignore_order(k in 0u32..=5, weights in prop::collection::vec(0u32..=5, 1..=5)) {
        let weights: Vec<u32> = weights.into_iter().map(|w| w % (k + 1)).collect();
        let mut shuffled = weights.clone();
        shuffled.reverse();
        shuffled.rotate_left(weights.len() / 2);
        prop_assert_eq!(product_chain(k, &weights).unwrap(), product_chain(k, &shuffled).unwrap());
    }
}

/// The one inexact check: quantum dimensions turn fusion into a product of
/// floats, compared with a tolerance.
mod inexact {
    use sl2fusion::verlinde::{fuse, quantum_dimension};

    #[test]
    fn quantum_dimensions_are_multiplicative() {
        for k in 0..=5 {
            for a in 0..=k {
                for b in 0..=k {
                    let product = fuse(k, a, b).unwrap();
                    let lhs: f64 = product
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(c, &m)| m as f64 * quantum_dimension(k, c as u32))
                        .sum();
                    let rhs = quantum_dimension(k, a) * quantum_dimension(k, b);
                    assert!((lhs - rhs).abs() < 1e-9, "k={k} [{a}][{b}]: {lhs} vs {rhs}");
                }
            }
        }
    }
}
