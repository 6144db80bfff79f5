//! Worked matrices with known group inverses, shared by tests, benches and
//! the CLI's self-checks.

use crate::matrix::RMatrix;

/// Ten vertices, four non-pendant hubs (1..=4) each with pendants; in class D,
/// neither corona nor star. `Δ = -96` over four maximum matchings.
pub fn ten_vertex() -> RMatrix {
    RMatrix::from_i64(&[
        &[0, -2, 0, 2, 2, 1, 0, 0, 0, 0],
        &[-1, 0, 1, 0, 0, 0, -3, 0, 0, 0],
        &[0, 3, 0, -1, 0, 0, 0, 2, 2, 0],
        &[-1, 0, 1, 0, 0, 0, 0, 0, 0, 2],
        &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[-3, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        &[0, -2, 0, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 3, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, -1, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 2, 0, 0, 0, 0, 0, 0],
    ])
}

/// Five vertices in class D whose group inverse leaves the class.
pub fn class_d_five() -> RMatrix {
    RMatrix::from_i64(&[
        &[0, 2, -1, 0, 0],
        &[1, 0, 0, 1, 1],
        &[1, 0, 0, 0, 0],
        &[0, -2, 0, 0, 0],
        &[0, -2, 0, 0, 0],
    ])
}

pub fn class_d_five_inverse() -> RMatrix {
    RMatrix::parse(
        "5\n\
         0 0 1 0 0\n\
         0 0 0 -1/4 -1/4\n\
         -1 0 0 -1/2 -1/2\n\
         0 1/2 -1/2 0 0\n\
         0 1/2 -1/2 0 0\n",
    )
    .expect("fixture")
}

/// Star on five vertices centred at 1; its own group inverse.
pub fn star_five() -> RMatrix {
    RMatrix::from_i64(&[
        &[0, 1, 1, 2, -1],
        &[-1, 0, 0, 0, 0],
        &[2, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0],
        &[2, 0, 0, 0, 0],
    ])
}

/// Simple symmetric but outside class D (hub 2 has no pendant neighbor); its
/// group inverse is not combinatorially symmetric.
pub fn outside_class_five() -> RMatrix {
    RMatrix::from_i64(&[
        &[0, 2, 1, 2, 1],
        &[2, 0, 2, 0, 0],
        &[1, 2, 0, 0, 0],
        &[2, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0],
    ])
}

pub fn outside_class_five_inverse() -> RMatrix {
    RMatrix::parse(
        "5\n\
         0 0 0 2/5 1/5\n\
         0 0 1/2 -1/5 -1/10\n\
         0 1/2 0 -2/5 -1/5\n\
         2/5 -1/5 -2/5 8/25 4/25\n\
         1/5 -1/10 -1/5 4/25 2/25\n",
    )
    .expect("fixture")
}
