//! Every example runs to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/examples/",
                stringify!($name),
                ".rs"
            ));
        }
        #[test]
        fn $name() {
            $name::run(Vec::new()).unwrap();
        }
    };
}

example!(check_fixtures);
example!(extend_arrangement);
example!(kn_b_configuration);
example!(extract_forbidden);
example!(render_svg);
example!(remove_vertex);
example!(random_corpus);
