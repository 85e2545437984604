use exceptional_core::candidates::{
    cardinality_f, cardinality_f_plus, cardinality_search_space, cardinality_search_space_cubic, enumerate_f,
    enumerate_f_plus, solve_pair, y_vector, ConstraintSystem,
};
use exceptional_core::fib::{docagne, fib, fib_int};
use exceptional_core::lattice::{count_lattice, enumerate_lattice, kernel_family};
use num_bigint::BigUint;

#[test]
fn docagne_exhaustive() {
    for a in 0..=60 {
        for b in 0..=a {
            let want = if b % 2 == 0 { fib_int(a - b) } else { -fib_int(a - b) };
            assert_eq!(docagne(a, b), want, "a={a} b={b}");
        }
    }
}

#[test]
fn candidates_solve_the_system() {
    for n in 3..=12 {
        let sys = ConstraintSystem::new(n);
        for k in 1..n {
            for l in (k + 1)..=n {
                let y = y_vector(n, k, l).unwrap();
                assert!(sys.is_solution(y.entries()));
                let (xk, xl) = solve_pair(n, k, l).unwrap();
                assert_eq!(xk, y.entries()[k - 1]);
                assert_eq!(xl, y.entries()[l - 1]);
                assert_eq!(y.is_nonnegative(), (l - k) % 2 == 1 || l == n, "({n},{k},{l})");
            }
        }
    }
}

#[test]
fn closed_forms() {
    for n in 3..=30 {
        assert_eq!(BigUint::from(enumerate_f(n).unwrap().len()), cardinality_f(n));
        assert_eq!(BigUint::from(enumerate_f_plus(n).unwrap().len()), cardinality_f_plus(n));
        assert_eq!(cardinality_search_space(n), cardinality_search_space_cubic(n));
    }
    assert_eq!(cardinality_f_plus(39), BigUint::from(362u32));
    assert_eq!(cardinality_search_space(39), BigUint::from(13756u32));
}

#[test]
fn lattice_has_at_least_f_n_points() {
    for n in 3..=20 {
        let f: u64 = fib(n).try_into().unwrap();
        let (c, _) = count_lattice(n, Some(f), false).unwrap();
        assert!(c >= f, "n={n}");
    }
    assert_eq!(enumerate_lattice(3, None, false).unwrap().len(), 2);
    assert_eq!(enumerate_lattice(4, None, false).unwrap().len(), 3);
}

#[test]
fn kernel_families_have_fibonacci_sizes() {
    let n = 14;
    for i in 1..n - 1 {
        let (v, pts) = kernel_family(n, i).unwrap();
        assert!(v.in_kernel());
        assert_eq!(BigUint::from(pts.len()), fib(n - i - 1), "i={i}");
    }
}
