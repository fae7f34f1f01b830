use qgr_core::dehom::Dehom;
use qgr_core::grassmann::{subsets, tilde};
use qgr_core::groupoid::Dihedral;

#[test]
fn sigma_from_first_principles() {
    for (m, n) in [(2, 4), (2, 5), (3, 5), (1, 3)] {
        let d = Dehom::new(m, n).unwrap();
        for alpha in 1..=n as i64 {
            for i in 1..=m {
                for j in 1..=n - m {
                    assert_eq!(
                        d.sigma_exponent(alpha, i, j).unwrap(),
                        d.sigma_exponent_from_first_principles(alpha, i, j).unwrap(),
                        "({m},{n}) α={alpha} ({i},{j})"
                    );
                }
            }
        }
    }
}

#[test]
fn consecutive_minors_are_normal() {
    for (m, n) in [(2, 4), (2, 5)] {
        let d = Dehom::new(m, n).unwrap();
        let g = d.grassmannian();
        for alpha in 1..=n as i64 {
            let mm = d.data(alpha).m_set;
            for i in subsets(n, m) {
                assert!(g.qcomm(&mm, &i).unwrap().is_some(), "({m},{n}) α={alpha} {i}");
            }
        }
    }
}

#[test]
fn composite_scalars_everywhere() {
    for (m, n) in [(2, 4), (2, 5)] {
        let d = Dehom::new(m, n).unwrap();
        let dih = Dihedral::new(m, n).unwrap();
        for alpha in 1..=n as i64 {
            for i in subsets(n, m) {
                let c = d.composite_cycle_scalar(alpha, &i).unwrap();
                assert!(c.passed(), "({m},{n}) α={alpha} {i}: {} vs {}", c.scalar, c.expected);
                if alpha == 1 {
                    let img = dih.theta_image(0, &i);
                    assert_eq!((c.scalar.clone(), c.image.clone()), (img.scalar, img.set));
                }
            }
        }
    }
}

#[test]
fn boundary_alpha_tables() {
    for (m, n) in [(2, 4), (2, 5), (3, 5)] {
        let d = Dehom::new(m, n).unwrap();
        for at in [n - m, n] {
            let alpha = at as i64;
            assert_eq!(tilde(alpha, n), at);
            assert!(d.theta_alpha_check(alpha).unwrap());
            assert!(d.theta_alpha_check(alpha + n as i64).unwrap());
        }
    }
}

#[test]
fn localized_generators_satisfy_relations() {
    for (m, n) in [(2, 5), (1, 3)] {
        let d = Dehom::new(m, n).unwrap();
        for alpha in 1..=n as i64 {
            assert!(d.x_relations_check(alpha).unwrap(), "({m},{n}) α={alpha}");
        }
    }
}
