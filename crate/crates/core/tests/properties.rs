//! Property tests for the rate identities and the relaxation's structure.

use cfqpr::baselines::gram_matrix;
use cfqpr::complex::{complex_quadratic_form, counterpart_real_channel};
use cfqpr::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn channel() -> impl Strategy<Value = Vec<f64>> {
    (2usize..10)
        .prop_flat_map(|l| prop::collection::vec(-4.0f64..4.0, l))
        .prop_filter("nonzero", |v| v.iter().any(|&x| x.abs() > 1e-3))
}

fn channel_and_coeffs() -> impl Strategy<Value = (Vec<f64>, Vec<i64>)> {
    channel().prop_flat_map(|h| {
        let l = h.len();
        (Just(h), prop::collection::vec(-6i64..=6, l).prop_filter("nonzero", |a| a.iter().any(|&v| v != 0)))
    })
}

/// Rate straight from the unnormalized expression.
fn rate_direct(h: &[f64], a: &[i64], p: f64) -> f64 {
    let hh: f64 = h.iter().map(|x| x * x).sum();
    let ha: f64 = h.iter().zip(a).map(|(x, &y)| x * y as f64).sum();
    let aa: f64 = a.iter().map(|&y| (y * y) as f64).sum();
    let f = aa - p * ha * ha / (1.0 + p * hh);
    (0.5 * (1.0 / f).log2()).max(0.0)
}

proptest! {
    #[test]
    fn normalized_form_matches_direct_rate((h, a) in channel_and_coeffs(), p in 0.5f64..150.0) {
        let ch = ChannelVector::new(h.clone()).unwrap();
        let r = computation_rate(&ch, &a, PowerConstraint::new(p).unwrap()).unwrap();
        let d = rate_direct(&h, &a, p);
        prop_assert!((r - d).abs() <= 1e-9 * d.abs().max(1e-300) || (r - d).abs() < 1e-12);
    }

    #[test]
    fn gram_form_is_positive((h, a) in channel_and_coeffs(), p in 0.5f64..1e4) {
        let u = normalize_channel(&ChannelVector::new(h).unwrap(), PowerConstraint::new(p).unwrap());
        prop_assert!(quadratic_form(&u, &a).unwrap() > 0.0);
        prop_assert!(u.u().iter().map(|x| x * x).sum::<f64>() < 1.0);
        prop_assert!(u.b() > 1.0);
    }

    #[test]
    fn beyond_bound_rate_is_zero((h, a) in channel_and_coeffs(), p in 0.05f64..5.0) {
        let ch = ChannelVector::new(h).unwrap();
        let pc = PowerConstraint::new(p).unwrap();
        let b = 1.0 + p * ch.norm_sq();
        let nsq: i64 = a.iter().map(|v| v * v).sum();
        if nsq as f64 >= b {
            prop_assert_eq!(computation_rate(&ch, &a, pc).unwrap(), 0.0);
        }
    }

    #[test]
    fn rate_is_sign_symmetric((h, a) in channel_and_coeffs(), p in 0.5f64..150.0) {
        let ch = ChannelVector::new(h).unwrap();
        let pc = PowerConstraint::new(p).unwrap();
        let neg: Vec<i64> = a.iter().map(|v| -v).collect();
        prop_assert_eq!(computation_rate(&ch, &a, pc).unwrap(), computation_rate(&ch, &neg, pc).unwrap());
    }

    #[test]
    fn base_solution_is_stationary(h in channel(), p in 0.5f64..150.0) {
        let (hbar, _) = to_nonneg_ordered(&ChannelVector::new(h).unwrap());
        let u = normalize_channel(hbar.as_channel(), PowerConstraint::new(p).unwrap());
        let a1 = base_solution(&u);
        let g = gram_matrix(&u);
        let l = a1.len();
        prop_assert_eq!(a1.as_slice()[l - 1], 1.0);
        for row in &g[..l - 1] {
            let s: f64 = row.iter().zip(a1.as_slice()).map(|(x, y)| x * y).sum();
            prop_assert!(s.abs() < 1e-9);
        }
    }

    #[test]
    fn qpr_output_is_positive_and_dominated(h in channel(), pdb in 0.0f64..20.0) {
        let ch = ChannelVector::new(h).unwrap();
        let p = PowerConstraint::from_db(pdb).unwrap();
        let c = qpr_select_default(&ch, p).unwrap();
        prop_assert!(c.rate() > 0.0);
        if ch.len() <= 5 {
            prop_assert!(c.rate() <= exhaustive_optimal(&ch, p).unwrap().rate() + 1e-12);
        }
    }

    #[test]
    fn complex_lifting_matches_complex_arithmetic(
        re in prop::collection::vec(-3.0f64..3.0, 1..5),
        seed in any::<u64>(),
        p in 0.5f64..150.0,
    ) {
        let l = re.len();
        let im: Vec<f64> = (0..l).map(|i| (((seed >> (8 * i)) & 0xff) as f64 - 127.5) / 40.0).collect();
        let hc = ComplexChannel::new(re.clone(), im.clone()).unwrap();
        let pc = PowerConstraint::new(p).unwrap();
        let c = complex_coeff(&hc, pc, 6).unwrap();

        // a = Re(a) + i Im(a); lifted form uses Re(h^H a) at power P/2
        let h: Vec<Complex64> = re.iter().zip(&im).map(|(&x, &y)| Complex64::new(x, y)).collect();
        let a: Vec<Complex64> = c.coeffs.re.iter().zip(&c.coeffs.im)
            .map(|(&x, &y)| Complex64::new(x as f64, y as f64)).collect();
        let hh: f64 = h.iter().map(|z| z.norm_sqr()).sum();
        let aa: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        let ha: Complex64 = h.iter().zip(&a).map(|(x, y)| x.conj() * y).sum();
        let half = p / 2.0;
        let direct = aa - half * ha.re * ha.re / (1.0 + half * hh);
        let lifted = complex_quadratic_form(&hc, &c.coeffs, pc).unwrap();
        prop_assert!((lifted - direct).abs() <= 1e-9 * direct.abs().max(1.0));
        prop_assert!((c.lifted.quadratic_form() - direct).abs() <= 1e-9 * direct.abs().max(1.0));

        let r2 = computation_rate(&counterpart_real_channel(&hc).unwrap(), &c.coeffs.counterpart(), pc.halved()).unwrap();
        prop_assert!((r2 - c.rate()).abs() <= 1e-12);
    }
}
