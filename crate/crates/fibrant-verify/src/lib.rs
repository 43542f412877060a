//! Holds the `acceptance` test target.
