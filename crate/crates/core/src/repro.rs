//! The full verification suite as one pass/fail manifest.

use serde::Serialize;

use crate::error::Result;
use crate::exactalg::Rational;
use crate::fhmaps::{fh_rank_report, foulkes_howe_with, minors_generate_check, power_generators, Normalization};
use crate::homres::{
    ix_betti, phi_resolution_report, power_b_is_full, power_betti, regularity_report, verify_explicit_betti,
    verify_ia3_resolution, verify_power_betti,
};
use crate::report::Status;
use crate::session::Session;
use crate::sl2rep::{char_identity_check, classical_hermite_triple_24, hw_triple, hw_vectors_2_2, transvectant_omega, BinaryForm};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub version: &'static str,
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub status: Status,
}

type Run = fn(&Session) -> Result<(Status, String)>;

fn fold<T>(items: impl IntoIterator<Item = T>, f: impl Fn(&T) -> Status) -> Status {
    items.into_iter().fold(Status::Verified, |s, x| s.and(f(&x)))
}

fn foulkes_howe(s: &Session) -> Result<(Status, String)> {
    let mut reports = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for k in 0..=b + 1 {
                reports.push(fh_rank_report(a, b, k, s)?);
            }
        }
    }
    let big = fh_rank_report(2, 4, 4, s)?;
    let st = fold(&reports, |r| r.status).and(Status::from_bool(
        big.rank == Some(495) && big.source_dim == 495 && big.target_dim == 495,
    ));
    Ok((st, format!("{} maps plus (2,4,4)", reports.len())))
}

fn triple(_: &Session) -> Result<(Status, String)> {
    let m = foulkes_howe_with(2, 2, 2, Normalization::Form, &Session::exact())?;
    let (v, w) = hw_vectors_2_2();
    let pairs: Vec<_> = v.into_iter().zip(w).collect();
    let t = hw_triple(&m.matrix, &m.source, &m.target, &pairs)?;
    let want = [Rational::from_integer(1.into()), Rational::new((-1).into(), 3.into()), Rational::new(4.into(), 3.into())];
    let ok = t == want && t != classical_hermite_triple_24();
    let text: Vec<String> = t.iter().map(crate::exactalg::format_rational).collect();
    Ok((Status::from_bool(ok), format!("({})", text.join(", "))))
}

fn ix22(_: &Session) -> Result<(Status, String)> {
    let t = ix_betti(2, 2, &Session::exact())?;
    let strand: Vec<Option<u64>> = (0..4).map(|i| t.get(i, i as i64 + 3)).collect();
    let ok = strand == [Some(7), Some(10), Some(5), Some(1)]
        && t.complete
        && t.projective_dimension() == Some(3)
        && t.provenance().is_exact();
    Ok((Status::from_bool(ok), format!("{strand:?}")))
}

fn explicit(s: &Session) -> Result<(Status, String)> {
    let mut st = Status::Verified;
    for (a, b) in [(2, 2), (3, 2), (2, 3)] {
        st = st.and(verify_explicit_betti(a, b, &ix_betti(a, b, s)?)?.status);
    }
    Ok((st, "(2,2), (3,2), (2,3)".into()))
}

fn minors(s: &Session) -> Result<(Status, String)> {
    let mut st = Status::Verified;
    let mut dims = Vec::new();
    for (a, b) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        let r = minors_generate_check(a, b, s)?;
        st = st.and(r.status);
        dims.push(r.kernel_dim);
    }
    Ok((st, format!("kernel dimensions {dims:?}")))
}

fn regularity(s: &Session) -> Result<(Status, String)> {
    let mut st = Status::Verified;
    for a in 1..=4 {
        for b in 1..=5 {
            st = st.and(regularity_report(a, b, a <= 3 && b <= 3, s)?.status);
        }
    }
    Ok((st, "direct for a, b <= 3; initial ideal for a <= 4, b <= 5".into()))
}

fn ia3(s: &Session) -> Result<(Status, String)> {
    let st = verify_ia3_resolution(2, &Session::exact())?.status.and(verify_ia3_resolution(3, s)?.status);
    Ok((st, "a = 2, 3".into()))
}

fn powers(s: &Session) -> Result<(Status, String)> {
    let mut st = Status::Verified;
    for (a, b) in [(2, 2), (3, 2), (2, 3)] {
        st = st.and(verify_power_betti(a, b, &power_betti(a, b, b - 1, s)?)?.status);
        st = st.and(phi_resolution_report(a, b, &s.rank)?.status);
    }
    Ok((st, "direct tables and φ-seeded resolutions".into()))
}

fn power_b(s: &Session) -> Result<(Status, String)> {
    let mut ok = true;
    for (a, b) in [(2, 2), (2, 3), (3, 2)] {
        ok &= power_b_is_full(a, b, s)?;
    }
    Ok((Status::from_bool(ok), "(2,2), (2,3), (3,2)".into()))
}

fn characters(_: &Session) -> Result<(Status, String)> {
    let mut n = 0;
    let mut ok = true;
    for a in 1..=5 {
        for b in 1..=5 {
            for i in 0..b {
                ok &= char_identity_check(i, a, b)?;
                n += 1;
            }
        }
    }
    Ok((Status::from_bool(ok && n == 75), format!("{n} identities")))
}

fn properties(s: &Session) -> Result<(Status, String)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(s.seed);
    let mut ok = true;
    for a in 1..=3 {
        for b in 1..=3 {
            for _ in 0..100 {
                let c: Vec<i64> = (0..=b).map(|_| rng.gen_range(-9..=9)).collect();
                let g = BinaryForm::from_ints(&c);
                ok &= transvectant_omega(&g.pow(a), &g).is_zero();
            }
        }
    }
    let gens = power_generators(2, 2)?;
    let x = crate::polyring::MultiPoly::var(5, 0).add(&crate::polyring::MultiPoly::var(5, 3));
    let y = crate::polyring::MultiPoly::var(5, 2).mul(&crate::polyring::MultiPoly::var(5, 4));
    ok &= x.mul(&y).substitute(&gens.gens) == x.substitute(&gens.gens).mul(&y.substitute(&gens.gens));
    ok &= crate::homres::koszul_complex(5).is_ok();
    Ok((Status::from_bool(ok), "ω(G^a, G) = 0 on 900 samples, α multiplicative, d² = 0".into()))
}

/// Runs every criterion; errors become mismatches with the message recorded.
pub fn run(session: &Session) -> Manifest {
    let criteria: [(u8, &'static str, Run); 11] = [
        (1, "foulkes-howe maximal rank", foulkes_howe),
        (2, "highest-weight triple", triple),
        (3, "betti table of I(X), a=b=2", ix22),
        (4, "explicit betti numbers", explicit),
        (5, "minors generate I(X)", minors),
        (6, "regularity of I_(a,b)", regularity),
        (7, "resolution of I_(a,3)", ia3),
        (8, "betti tables of I^(b-1)", powers),
        (9, "I^b = m^d", power_b),
        (10, "character identity", characters),
        (11, "property suites", properties),
    ];
    let results: Vec<CriterionResult> = criteria
        .into_iter()
        .map(|(id, name, f)| {
            let (status, detail) = f(session).unwrap_or_else(|e| (Status::Mismatch, e.to_string()));
            CriterionResult { id, name, status, detail }
        })
        .collect();
    let status = fold(&results, |r| r.status);
    Manifest {
        version: crate::VERSION,
        seed: session.seed,
        criteria: results,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_criteria() {
        let s = Session::exact();
        assert_eq!(triple(&s).unwrap().0, Status::Verified);
        assert_eq!(characters(&s).unwrap().0, Status::Verified);
        assert_eq!(power_b(&s).unwrap().0, Status::Verified);
    }
}
