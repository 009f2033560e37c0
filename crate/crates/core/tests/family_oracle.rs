//! The monic recurrence tables are checked against the hypergeometric series
//! that define each family: `series p_n(x) / monic p_n(x)` must not depend on
//! `x` and must equal the closed-form leading coefficient `k_n`.

use ortho_bounds_core::{BigReal, FamilyId, FamilySpec, Recurrence};

const P: usize = 256;

fn v(s: &str) -> BigReal {
    BigReal::parse(s, P).unwrap()
}

fn grid() -> Vec<FamilySpec> {
    vec![
        FamilySpec::laguerre(v("-0.5")).unwrap(),
        FamilySpec::laguerre(v("10")).unwrap(),
        FamilySpec::little_q_jacobi(v("0.5"), v("1"), v("0.6")).unwrap(),
        FamilySpec::little_q_jacobi(v("0.5"), v("-10"), v("0.9")).unwrap(),
        FamilySpec::little_q_laguerre(v("0.7"), v("0.3")).unwrap(),
        FamilySpec::alt_q_charlier(v("0.5"), v("0.55")).unwrap(),
        FamilySpec::alt_q_charlier(v("10"), v("0.99")).unwrap(),
        FamilySpec::stieltjes_wigert(v("0.5")).unwrap(),
        FamilySpec::stieltjes_wigert(v("0.9")).unwrap(),
        FamilySpec::discrete_q_hermite_ii(v("0.5")).unwrap(),
        FamilySpec::discrete_q_hermite_ii(v("0.98")).unwrap(),
    ]
}

fn points(id: FamilyId) -> Vec<BigReal> {
    let s: &[&str] = match id {
        FamilyId::Laguerre | FamilyId::StieltjesWigert => &["0.3", "1.7", "4.1"],
        FamilyId::DiscreteQHermiteII => &["-1.3", "0.4", "2.2"],
        _ => &["0.13", "0.41", "0.77"],
    };
    s.iter().map(|x| v(x)).collect()
}

#[test]
fn series_matches_monic_recurrence() {
    let tol = v("1e-50");
    for fam in grid() {
        let rec = Recurrence::for_family(&fam, 12, P).unwrap();
        for n in 0..=12 {
            let k = fam.kls_leading_coeff(n, P);
            for x in points(fam.id()) {
                let monic = rec.eval(n, &x).unwrap();
                let series = fam.hyper_eval(n, &x, P);
                let want = &k * &monic;
                let scale = series.abs().max(want.abs());
                let diff = (&series - &want).abs();
                assert!(
                    diff <= &tol * &scale,
                    "{:?} n={n} x={x:?}: series {series:?} vs k_n*monic {want:?}",
                    fam
                );
            }
        }
    }
}

#[test]
fn lambda_positive() {
    for fam in grid() {
        let rec = Recurrence::for_family(&fam, 100, P).unwrap();
        for n in 2..=100 {
            assert!(rec.lambda(n).is_positive(), "{:?} lambda_{n} = {:?}", fam, rec.lambda(n));
        }
    }
}
