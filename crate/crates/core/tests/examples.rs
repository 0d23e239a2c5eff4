macro_rules! example {
    ($test:ident, $file:literal) => {
        #[test]
        fn $test() {
            #[allow(dead_code)]
            #[path = $file]
            mod inner;
            inner::run().expect(concat!($file, " runs"));
        }
    };
}

example!(solve_small, "../examples/solve_small.rs");
example!(decompose, "../examples/decompose.rs");
example!(rank_reduce, "../examples/rank_reduce.rs");
example!(cut_and_count, "../examples/cut_and_count.rs");
example!(twin_cover, "../examples/twin_cover.rs");
example!(clique_width, "../examples/clique_width.rs");
example!(reductions, "../examples/reductions.rs");
example!(win_win, "../examples/win_win.rs");
example!(bench, "../examples/bench.rs");
