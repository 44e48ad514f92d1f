macro_rules! example_test {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(worked_example, "worked_example.rs");
example_test!(xl_parameters, "xl_parameters.rs");
example_test!(enrichment_score, "enrichment_score.rs");
example_test!(exact_vs_bound, "exact_vs_bound.rs");
example_test!(bottom_enrichment, "bottom_enrichment.rs");
example_test!(outlier_scenario, "outlier_scenario.rs");
example_test!(weak_enrichment_scenario, "weak_enrichment_scenario.rs");
example_test!(labeled_input, "labeled_input.rs");
