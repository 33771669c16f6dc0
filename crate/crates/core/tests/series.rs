use dimerlab::series::{self, RationalQ};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> RationalQ {
    RationalQ::new(n.into(), d.into())
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let mut sieve = vec![true; n as usize + 1];
    let mut out = Vec::new();
    for i in 2..=n as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn legendre(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut pk = p;
    while pk <= n {
        e += n / pk;
        pk = match pk.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    e
}

/// `ln C(n, k)` from the exact prime factorisation of the binomial.
fn ln_binomial(n: u64, k: u64) -> f64 {
    primes_up_to(n)
        .into_iter()
        .map(|p| (legendre(n, p) - legendre(k, p) - legendre(n - k, p)) as f64 * (p as f64).ln())
        .sum()
}

#[test]
fn printed_two_dimensional_coefficients() {
    let printed = [
        q(1, 1 << 4),
        q(1, (1 << 6) * 3),
        q(7, (1 << 9) * 3),
        q(41, (1 << 11) * 5),
        q(181, (1 << 12) * 15),
    ];
    for (k, v) in (2..=6).zip(printed) {
        assert_eq!(series::coeff_a(k, 2).unwrap(), v, "a_{k}(2)");
    }
    assert_eq!(series::coeff_a(7, 2).unwrap(), q(757, 344064));
}

#[test]
fn regrouped_series_matches() {
    assert!(series::reexpand_check());
    assert_eq!(series::coeff_c(1).unwrap().len(), 3);
    assert!(series::coeff_c(4).is_err());
}

#[test]
fn one_dimensional_coefficients() {
    for k in 2..=7usize {
        let expected = RationalQ::new(
            BigInt::one(),
            BigInt::from(2u32).pow(k as u32) * (k * (k - 1)),
        );
        assert_eq!(series::coeff_a(k, 1).unwrap(), expected, "a_{k}(1)");
    }
}

#[test]
fn one_dimensional_series_against_closed_form() {
    for i in 1..=9 {
        let p = i as f64 / 10.0;
        let gap =
            (series::eval_lambda(p, 1, 7).unwrap() - series::d1_closed_form(p).unwrap()).abs();
        assert!(gap <= 1e-4, "p = {p}: {gap:e}");
    }
}

#[test]
fn closed_form_against_exact_binomial() {
    // D dimers on a chain of N sites: C(N - D, D) arrangements.
    let n = 1_000_000u64;
    for (p, dimers) in [(0.5, 250_000u64), (0.2, 100_000), (0.9, 450_000)] {
        let exact = ln_binomial(n - dimers, dimers) / n as f64;
        let closed = series::d1_closed_form(p).unwrap();
        assert!(
            (exact - closed).abs() <= 1e-5,
            "p = {p}: {exact} vs {closed}"
        );
    }
}

#[test]
fn endpoints() {
    assert_eq!(series::leading_term(0.0, 2).unwrap(), 0.0);
    assert_eq!(series::eval_lambda(0.0, 2, 7).unwrap(), 0.0);
    assert_eq!(series::d1_closed_form(0.0).unwrap(), 0.0);
    assert_eq!(series::d1_closed_form(1.0).unwrap(), 0.0);
    let at_one = series::eval_lambda(1.0, 2, 7).unwrap();
    assert!((at_one - 0.2745628).abs() < 1e-6);
    assert!((series::eval_dimer_series(2).unwrap() - 0.27843).abs() < 1e-5);
    assert!(series::eval_lambda(-0.1, 2, 7).is_err());
    assert!(series::eval_lambda(1.1, 2, 7).is_err());
    assert!(series::eval_lambda(0.5, 3, 7).is_err());
    assert!(series::eval_lambda(0.5, 3, 6).is_ok());
    assert!(series::eval_lambda(0.5, 0, 6).is_err());
}

#[test]
fn hygiene() {
    let t = series::CoefficientTable::get();
    assert_eq!(t.jbar7, q(299, 14336));
    assert_eq!(14336, (1 << 11) * 7);
    assert_eq!(t.a7_d2.denom(), &BigInt::from((1 << 14) * 3 * 7));
}

#[test]
fn table_and_csv() {
    let grid = series::uniform_grid(5);
    assert_eq!(grid, [0.0, 0.25, 0.5, 0.75, 1.0]);
    let rows = series::emit_table(2, 7, &grid).unwrap();
    let mut out = Vec::new();
    series::write_csv(&mut out, &rows).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,lambda,leading,correction");
    assert_eq!(lines.len(), 6);
    for (r, line) in rows.iter().zip(&lines[1..]) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols, [r.p, r.lambda, r.leading, r.correction]);
        assert_eq!(r.lambda, r.leading + r.correction);
    }
}

proptest! {
    #[test]
    fn one_dimensional_tail_bound(num in 1i64..1000) {
        let p = num as f64 / 1000.0;
        let tail = series::d1_closed_form(p).unwrap() - series::eval_lambda(p, 1, 7).unwrap();
        let h = p / 2.0;
        let bound = h.powi(8) / (56.0 * (1.0 - h));
        prop_assert!(tail >= -1e-15 && tail <= bound + 1e-15, "p = {}: {:e} vs {:e}", p, tail, bound);
    }

    #[test]
    fn exact_correction_is_polynomial(num in 0i64..=64, order in 2usize..=7) {
        let p = q(num, 64);
        let c = series::correction_exact(&p, 2, order).unwrap();
        let mut expected = RationalQ::zero();
        for k in 2..=order {
            expected += series::coeff_a(k, 2).unwrap() * num_traits::pow(p.clone(), k);
        }
        prop_assert_eq!(&c, &expected);
        let f = series::correction(num as f64 / 64.0, 2, order).unwrap();
        prop_assert!((f - c.to_f64().unwrap()).abs() <= 1e-16);
    }
}
