//! Holds the `acceptance` test target; `cargo test -p acceptance` prints the verdict lines.
