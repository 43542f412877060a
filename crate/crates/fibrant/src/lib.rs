pub mod blowup;
pub mod exactpoly;
pub mod lagrange;
pub mod miranda;
pub mod planecurve;
pub mod weierstrass;
pub mod monodromy;
