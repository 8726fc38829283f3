mod common;

use alg_core::dist::ExGParams;
use alg_core::report::{
    bundled_table_b1, bundled_table_b1_csv, paired_t_test, participant_stats, read_param_table, render_text,
    student_t_cdf, student_t_quantile, table2_report, write_csv, GroupSummary, ParticipantParams, Stars,
};
use alg_core::Error;
use common::integrate;
use proptest::prelude::*;
use statrs::function::gamma::ln_gamma;

fn exg(m: f64, s: f64, t: f64) -> ExGParams {
    ExGParams::new(m, s, t).unwrap()
}

/// Student t distribution function by quadrature of its density.
fn t_cdf_by_quadrature(t: f64, df: f64) -> f64 {
    let ln_c = ln_gamma(0.5 * (df + 1.0)) - ln_gamma(0.5 * df) - 0.5 * (df * std::f64::consts::PI).ln();
    let pdf = |x: f64| (ln_c - 0.5 * (df + 1.0) * (1.0 + x * x / df).ln()).exp();
    // Integrate the tail on the substitution x = 1/u to keep a finite range.
    let tail = |a: f64| integrate(|u: f64| pdf(1.0 / u) / (u * u), 0.0, 1.0 / a, 1e-14);
    if t >= 1.0 {
        1.0 - tail(t)
    } else if t <= -1.0 {
        tail(-t)
    } else {
        1.0 - tail(1.0) - integrate(pdf, t, 1.0, 1e-14)
    }
}

#[test]
fn bundled_table_first_and_last_rows() {
    let t = bundled_table_b1();
    assert_eq!(t.len(), 44);
    assert_eq!(t[0].theta_a, exg(350.0, 35.0, 96.0));
    assert_eq!(t[0].theta_b, exg(372.0, 14.0, 68.0));
    assert_eq!(t[43].theta_b, exg(822.0, 165.0, 320.0));
    assert_eq!(read_param_table(bundled_table_b1_csv().as_bytes()).unwrap(), t);
}

#[test]
fn table_errors() {
    assert!(read_param_table("".as_bytes()).is_err());
    let header = "id,mu_S,mu_A,mu_B,sigma_S,sigma_A,sigma_B,tau_S,tau_A,tau_B\n";
    assert!(read_param_table(header.as_bytes()).is_err());
    let short = format!("{header}1,2,3\n");
    assert!(matches!(
        read_param_table(short.as_bytes()),
        Err(Error::Parse { line: 2, .. })
    ));
    let negative = format!("{header}1,357,350,372,32,-35,14,86,96,68\n");
    assert!(read_param_table(negative.as_bytes()).is_err());
    let text = format!("{header}1,357,350,372,32,35,14,86,abc,68\n");
    assert!(matches!(
        read_param_table(text.as_bytes()),
        Err(Error::Parse { line: 2, .. })
    ));
}

#[test]
fn participant_statistics() {
    let t = bundled_table_b1();
    let first = participant_stats(&t[0]);
    assert!((first.delta_mean + 6.0).abs() < 1e-12);
    assert!((first.alg_stats.mean + 6.0).abs() < 1e-12);
    assert!((first.exg_a.mean - 446.0).abs() < 1e-12);
    assert!((first.exg_a.variance - 10441.0).abs() < 1e-9);
    assert!(participant_stats(&t[9]).alg_stats.skewness > 0.0);

    let same = ParticipantParams {
        id: "x".into(),
        theta_s: exg(500.0, 50.0, 100.0),
        theta_a: exg(500.0, 50.0, 100.0),
        theta_b: exg(500.0, 50.0, 100.0),
    };
    let s = participant_stats(&same);
    assert_eq!(s.delta_mean, 0.0);
    assert!(s.alg_stats.skewness.abs() < 1e-15);
}

#[test]
fn paired_tests_on_the_bundled_columns() {
    let t = bundled_table_b1();
    let col = |f: fn(&ParticipantParams) -> f64| t.iter().map(f).collect::<Vec<_>>();
    let mu = paired_t_test(&col(|p| p.theta_a.mu()), &col(|p| p.theta_b.mu())).unwrap();
    assert_eq!((mu.n, mu.df), (44, 43));
    assert!((mu.mean_diff - 53.9).abs() <= 0.05);
    assert!((mu.ci_low - 30.9).abs() <= 0.05);
    assert!(mu.p_value < 0.0005 && mu.stars == Stars::Three);
    let tau = paired_t_test(&col(|p| p.theta_a.tau()), &col(|p| p.theta_b.tau())).unwrap();
    assert!((tau.mean_diff - 38.2).abs() <= 0.05);
    assert!((tau.ci_low - 19.6).abs() <= 0.05);
    assert!((tau.ci_high - 56.8).abs() <= 0.05);
}

#[test]
fn paired_test_matches_hand_computation() {
    let x = [10.0, 12.0, 9.0, 14.0, 11.0];
    let y = [12.0, 15.0, 9.5, 18.0, 12.0];
    // d = 2, 3, 0.5, 4, 1: mean 2.1, sample variance 8.2 / 4 = 2.05.
    let r = paired_t_test(&x, &y).unwrap();
    let se = (2.05f64 / 5.0).sqrt();
    assert!((r.mean_diff - 2.1).abs() < 1e-12);
    assert!((r.t_stat - 2.1 / se).abs() < 1e-12);
    let p = 2.0 * (1.0 - t_cdf_by_quadrature(2.1 / se, 4.0));
    assert!((r.p_value - p).abs() < 1e-10, "{} vs {p}", r.p_value);
    let half = r.ci_high - r.mean_diff;
    assert!((t_cdf_by_quadrature(half / se, 4.0) - 0.975).abs() < 1e-10);
}

#[test]
fn paired_test_errors() {
    let x = [1.0, 2.0, 3.0];
    assert!(matches!(paired_t_test(&x, &x), Err(Error::Degenerate(_))));
    assert!(matches!(paired_t_test(&x, &x[..2]), Err(Error::LengthMismatch { .. })));
    assert!(matches!(
        paired_t_test(&x[..1], &x[..1]),
        Err(Error::TooFewObservations { .. })
    ));
}

#[test]
fn t_distribution_against_quadrature() {
    for df in [1.0, 5.0, 43.0, 100.0] {
        for p in [0.025, 0.975] {
            let q = student_t_quantile(p, df).unwrap();
            assert!((student_t_cdf(q, df).unwrap() - p).abs() < 1e-10, "df {df} p {p}");
            assert!((t_cdf_by_quadrature(q, df) - p).abs() < 1e-10, "df {df} p {p}");
        }
        for t in [-3.0, -0.4, 0.0, 0.7, 2.5] {
            assert!((student_t_cdf(t, df).unwrap() - t_cdf_by_quadrature(t, df)).abs() < 1e-11);
        }
    }
}

#[test]
fn report_internal_consistency() {
    let r = table2_report(&bundled_table_b1()).unwrap();
    let mean = r.row("Mean").unwrap();
    let (a, b, alg) = (
        mean.type_a.as_ref().unwrap(),
        mean.type_b.as_ref().unwrap(),
        mean.alg.as_ref().unwrap(),
    );
    assert!((alg.mean - (b.mean - a.mean)).abs() < 1e-9);
    assert!((a.mean - 583.0).abs() <= 0.05);
    assert!((b.mean - 675.1).abs() <= 0.05);
    for row in &r.rows {
        for g in [&row.type_a, &row.type_b, &row.alg].into_iter().flatten() {
            assert!(g.ci_low <= g.mean && g.mean <= g.ci_high);
            assert!(((g.mean - g.ci_low) - (g.ci_high - g.mean)).abs() < 1e-9 * (1.0 + g.mean.abs()));
        }
        if let Some(c) = &row.comparison {
            assert!(c.ci_low <= c.mean_diff && c.mean_diff <= c.ci_high);
        }
    }
}

#[test]
fn rendered_outputs() {
    let r = table2_report(&bundled_table_b1()).unwrap();
    let text = render_text(&r);
    assert!(text.contains("92.1 (69.4, 114.9)"), "{text}");
    assert!(text.contains("478.8 (448.0, 509.7)"));
    assert!(text.contains("38.2*** (19.6, 56.8)"));
    assert!(text.contains("0.186 (0.076, 0.296)"));
    let mut buf = Vec::new();
    write_csv(&r, &mut buf).unwrap();
    let csv = String::from_utf8(buf).unwrap();
    assert!(csv.lines().next().unwrap().starts_with("row,column,n,mean"));
    assert!(csv.lines().any(|l| l.starts_with("tau,b_vs_a,44,")));
}

#[test]
fn single_row_report_is_degenerate() {
    let r = table2_report(&bundled_table_b1()[..1]).unwrap();
    assert_eq!(r.n, 1);
    assert!(!r.warnings.is_empty());
    let mean = r.row("Mean").unwrap().alg.clone().unwrap();
    assert_eq!((mean.ci_low, mean.ci_high), (mean.mean, mean.mean));
    assert!(table2_report(&[]).is_err());
}

#[test]
fn group_summary_interval() {
    let g = GroupSummary::new("x", &[1.0, 2.0, 3.0, 4.0]).unwrap();
    let half = student_t_quantile(0.975, 3.0).unwrap() * (5.0f64 / 3.0).sqrt() / 2.0;
    assert!((g.ci_high - 2.5 - half).abs() < 1e-12);
}

proptest! {
    #[test]
    fn swapping_arguments_negates_the_difference(
        pairs in prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 2..60)
    ) {
        let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        if let (Ok(a), Ok(b)) = (paired_t_test(&x, &y), paired_t_test(&y, &x)) {
            prop_assert_eq!(a.mean_diff, -b.mean_diff);
            prop_assert_eq!(a.p_value, b.p_value);
            prop_assert!((a.ci_low + b.ci_high).abs() < 1e-9 * (1.0 + a.ci_low.abs()));
            prop_assert!(a.ci_low <= a.mean_diff && a.mean_diff <= a.ci_high);
        }
    }

    #[test]
    fn t_quantile_inverts_cdf(p in 0.001..0.999f64, df in 1.0..200.0f64) {
        let q = student_t_quantile(p, df).unwrap();
        prop_assert!((student_t_cdf(q, df).unwrap() - p).abs() < 1e-10);
    }
}
