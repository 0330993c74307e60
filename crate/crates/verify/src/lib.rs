//! Holds the `acceptance` test target; run it with
//! `cargo test -p morse-cube-verify --test acceptance -- --nocapture`.
