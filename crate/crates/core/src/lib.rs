//! Schubitopes: vertex enumeration by greedy fillings, halfspace
//! descriptions through parenthesis words, exact vertex certification, and
//! Schubert and key polynomial oracles for their Newton polytopes.
//!
//! ```
//! use schubitope::{skyline, vertices, Composition};
//!
//! let alpha: Composition = "1,0,3".parse().unwrap();
//! let v = vertices(&skyline(&alpha).unwrap()).unwrap();
//! assert_eq!(v.len(), 4);
//! ```

pub mod diagrams;
pub mod error;
pub mod exact;
pub mod fillings;
pub mod perms;
pub mod polyoracle;
pub mod schubitope;
pub mod subset;
pub mod verify;

pub use diagrams::{rothe, skyline, Column, Diagram, DiagramJson};
pub use error::{Error, Result};
pub use exact::Rational;
pub use fillings::{
    fill_column, fill_diagram, rank_brute, rank_diagram, rank_filling, rank_max_filling,
    sort_filling, standardize, vertex_vector, ColumnFilling, DiagramFilling, FillingJson,
};
pub use perms::{
    act, bruhat_leq, composition_leq, lambda_of, vertex_compositions, w_of, Composition,
    Permutation, ReducedWord,
};
pub use polyoracle::{
    demazure, divided_difference, key_polynomial, newton_exponents, schubert_polynomial, Chain,
    PolyOracle, Polynomial, PolynomialJson,
};
pub use schubitope::{
    certify_lattice_vertices, certify_vertices, column_word, edmonds_vertex, extreme_points,
    gale_leq, hrep, member, schubert_matroid_bases, skyline_vertices, theta, theta_columns,
    vertex_fibers, vertices, Certification, Constraint, HRep, HRepJson, LatticePoint, Paren,
    ParenWord, VertexSetJson, Witness,
};
pub use subset::Subset;
