use modinv::field::{fp_linear_dependence, FieldElement};
use modinv::{Fe, FieldContext};

/// Schoolbook product of coordinate vectors reduced by the monic modulus.
fn naive_mul(p: u32, modulus: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, &mi) in modulus.iter().enumerate() {
            let at = top - k + i;
            prod[at] = (prod[at] + (p as u64 - c) * mi as u64) % p as u64;
        }
    }
    prod[..k].iter().map(|&c| c as u32).collect()
}

#[test]
fn inverse_of_two_in_f3() {
    let f = FieldContext::new(3, 1).unwrap();
    let two = f.from_i64(2);
    assert_eq!(f.inv(two), Some(two));
    assert_eq!(f.inv(Fe::ZERO), None);
}

#[test]
fn t_squared_in_f9() {
    let f = FieldContext::with_explicit_modulus(3, vec![1, 0, 1]).unwrap();
    let t = f.t();
    assert_eq!(f.mul(t, t), f.from_i64(2));
    assert_eq!(f.frobenius(t, 1), f.mul(f.from_i64(2), t));
    assert_eq!(f.frobenius(t, 2), t);
}

#[test]
fn multiplication_matches_coordinates() {
    for (p, k) in [(3, 4), (5, 4), (7, 2), (7, 4)] {
        let f = FieldContext::new(p, k).unwrap();
        let step = (f.size() / 97).max(1);
        for i in (0..f.size()).step_by(step as usize) {
            for j in (0..f.size()).step_by(3 * step as usize + 1) {
                let (a, b) = (f.from_index(i), f.from_index(j));
                let want = naive_mul(p, f.modulus(), &f.coords(a), &f.coords(b));
                assert_eq!(f.coords(f.mul(a, b)), want, "p={p} k={k}");
            }
        }
    }
}

#[test]
fn field_axioms_sampled() {
    let f = FieldContext::new(5, 4).unwrap();
    let g = (1..f.size()).map(|i| f.from_index(i)).find(|&a| f.log(a) == Some(1)).unwrap();
    // g is primitive
    let mut seen = std::collections::HashSet::new();
    let mut acc = f.one();
    for _ in 0..f.size() - 1 {
        seen.insert(acc);
        acc = f.mul(acc, g);
    }
    assert_eq!(seen.len() as u32, f.size() - 1);
    for i in (1..f.size()).step_by(37) {
        let a = f.from_index(i);
        let b = f.from_index((i * 7 + 3) % f.size());
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        assert_eq!(f.sub(f.add(a, b), b), a);
        assert_eq!(f.pow(a, f.size() as i64 - 1), f.one());
        assert_eq!(f.pow(a, -1), f.inv(a).unwrap());
        assert_eq!(f.frobenius(a, 4), a);
        assert_eq!(f.frobenius(a, 1), f.pow(a, 5));
        assert_eq!(f.pow(g, f.log(a).unwrap() as i64), a);
    }
    assert_eq!(f.log(Fe::ZERO), None);
}

#[test]
fn prime_subfield() {
    let f = FieldContext::new(3, 4).unwrap();
    let inside = (0..f.size()).map(|i| f.from_index(i)).filter(|&a| f.in_prime_field(a)).count();
    assert_eq!(inside, 3);
}

#[test]
fn linear_dependence_over_fp() {
    let f = FieldContext::new(3, 4).unwrap();
    let v = [f.from_i64(1), f.from_i64(2)];
    let lam = f.fp_linear_dependence(&v).unwrap();
    assert!(lam.iter().any(|&c| c != 0));
    let sum = lam.iter().zip(&v).fold(Fe::ZERO, |s, (&c, &a)| f.add(s, f.mul(f.from_i64(c as i64), a)));
    assert_eq!(sum, Fe::ZERO);

    assert_eq!(f.fp_linear_dependence(&[f.one(), f.t()]), None);

    // five elements of a four-dimensional space
    let w: Vec<Fe> = (0..5).map(|i| f.from_index(11 * i + 5)).collect();
    let lam = f.fp_linear_dependence(&w).unwrap();
    let sum = lam.iter().zip(&w).fold(Fe::ZERO, |s, (&c, &a)| f.add(s, f.mul(f.from_i64(c as i64), a)));
    assert_eq!(sum, Fe::ZERO);
}

#[test]
fn text_roundtrip() {
    let f = FieldContext::new(7, 4).unwrap();
    for i in (0..f.size()).step_by(101) {
        let a = f.from_index(i);
        assert_eq!(f.parse(&f.format(a)).unwrap(), a);
    }
    assert_eq!(f.parse("t^2").unwrap(), f.mul(f.t(), f.t()));
    assert_eq!(f.parse("-1").unwrap(), f.from_i64(6));
    assert!(f.parse("t^4").is_err());
    assert!(f.parse("1+").is_err());
}

#[test]
fn element_api_rejects_mixed_fields() {
    let f = FieldContext::new(3, 4).unwrap();
    let g = FieldContext::new(5, 4).unwrap();
    let a = FieldElement::new(&f, &[1, 2]);
    let b = FieldElement::new(&g, &[1]);
    assert!(a.add(&b).is_err());
    assert!(FieldElement::new(&f, &[0]).inv().is_err());
    let j = a.to_json();
    assert_eq!(FieldElement::from_json(&j).unwrap(), a);
    assert!(fp_linear_dependence(&[a.clone(), b]).is_err());
    assert!(fp_linear_dependence(&[a.clone(), a.add(&a).unwrap()]).unwrap().is_some());
}

#[test]
fn bad_parameters() {
    assert!(FieldContext::new(4, 2).is_err());
    assert!(FieldContext::new(3, 0).is_err());
    // x^2 + 1 is reducible mod 5
    assert!(FieldContext::with_explicit_modulus(5, vec![1, 0, 1]).is_err());
}
