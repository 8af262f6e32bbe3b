use std::collections::BTreeSet;

use sl2fusion::types::{
    canonical_a, compositions, leq, leq_by_equalities, poincare, poincare_recursive_single,
    type_of, Composition,
};

fn partial_sums(c: &Composition) -> BTreeSet<u32> {
    c.parts()
        .iter()
        .scan(0, |s, &x| {
            *s += x;
            Some(*s)
        })
        .collect()
}

#[test]
fn leq_is_refinement() {
    for n in 1..=7 {
        let cs = compositions(n);
        for lo in &cs {
            for hi in &cs {
                let refines = partial_sums(lo).is_subset(&partial_sums(hi));
                assert_eq!(leq(lo, hi).unwrap(), refines, "{lo} {hi}");
            }
        }
    }
}

#[test]
fn leq_is_a_partial_order() {
    for n in 1..=7 {
        let cs = compositions(n);
        assert_eq!(cs.len(), 1 << (n - 1));
        let table: Vec<Vec<bool>> = cs
            .iter()
            .map(|a| cs.iter().map(|b| leq(a, b).unwrap()).collect())
            .collect();
        for a in 0..cs.len() {
            assert!(table[a][a]);
            for b in 0..cs.len() {
                if table[a][b] && table[b][a] {
                    assert_eq!(a, b);
                }
                for c in 0..cs.len() {
                    if table[a][b] && table[b][c] {
                        assert!(table[a][c]);
                    }
                }
            }
        }
    }
}

#[test]
fn extremes() {
    for n in 1..=7 {
        let (finest, coarsest) = (Composition::finest(n), Composition::coarsest(n));
        for c in compositions(n) {
            assert!(leq(&c, &finest).unwrap());
            assert!(leq(&coarsest, &c).unwrap());
            if c != finest {
                assert!(!leq(&finest, &c).unwrap());
            }
            if c != coarsest {
                assert!(!leq(&c, &coarsest).unwrap());
            }
        }
    }
}

#[test]
fn poincare_counts_and_expands() {
    for n in 1..=8 {
        for c in compositions(n) {
            let p = poincare(&c);
            let cells: u64 = c.parts().iter().map(|&x| x as u64 + 1).product();
            assert_eq!(p.at_one(), cells, "{c}");
            // ∏ (1 + q² + … + q^{2i}) expanded by hand
            let mut coeffs = vec![1u64];
            for &i in c.parts() {
                let mut next = vec![0u64; coeffs.len() + i as usize];
                for (k, &x) in coeffs.iter().enumerate() {
                    for e in 0..=i as usize {
                        next[k + e] += x;
                    }
                }
                coeffs = next;
            }
            assert_eq!(p.even_coeffs(), coeffs.as_slice(), "{c}");
            assert_eq!(p.degree(), 2 * n);
            // Poincaré duality
            let rev: Vec<u64> = coeffs.iter().rev().copied().collect();
            assert_eq!(coeffs, rev);
        }
    }
}

#[test]
fn recursion_matches_closed_form() {
    for n in 1..=12 {
        assert_eq!(
            poincare_recursive_single(n),
            poincare(&Composition::new(vec![n]).unwrap()),
            "{n}"
        );
    }
}

#[test]
fn canonical_vectors_round_trip() {
    for n in 1..=6 {
        let cs = compositions(n);
        for lo in &cs {
            let a = canonical_a(lo);
            let entries: Vec<i64> = a.entries().iter().map(|&x| x as i64).collect();
            assert_eq!(&type_of(&entries).unwrap(), lo);
            for hi in &cs {
                assert_eq!(
                    leq(lo, hi).unwrap(),
                    leq_by_equalities(lo, hi).unwrap(),
                    "{lo} {hi}"
                );
            }
        }
    }
}

#[test]
fn type_ignores_shifts() {
    let a = [-4i64, -4, 0, 0, 0, 7];
    let shifted: Vec<i64> = a.iter().map(|x| x + 11).collect();
    assert_eq!(type_of(&a).unwrap(), type_of(&shifted).unwrap());
    assert_eq!(type_of(&a).unwrap().parts(), &[2, 3, 1]);
}
