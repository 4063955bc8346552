//! Runs every example program; each asserts its own results.

mod build_matroids {
    include!("../examples/build_matroids.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod characteristic_polynomials {
    include!("../examples/characteristic_polynomials.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod worked_example {
    include!("../examples/worked_example.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod psi_classes {
    include!("../examples/psi_classes.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod oracle_cross_check {
    include!("../examples/oracle_cross_check.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod poincare_duality {
    include!("../examples/poincare_duality.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod volumes {
    include!("../examples/volumes.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}

mod verification_suite {
    include!("../examples/verification_suite.rs");

    #[test]
    fn runs() {
        main().unwrap();
    }
}
