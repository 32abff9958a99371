//! Exact roots of Bernstein-Sato polynomials of monomial ideals.
//!
//! * [`geometry`]: big-rational linear algebra, integer lattices and the
//!   `"p/q"` serialization of rationals.
//! * [`polyhedron`]: monomial ideals, Newton polyhedra, faces, `L_Q` and `m_Q`.
//! * [`roots`]: residue sets `R_Q` from difference semigroups, `W_a`, classes
//!   modulo `Z` and products in disjoint variables.
//! * [`bpoly`]: b-polynomials as root multisets with their closed-form
//!   constructors and combination rules.
//! * [`oracle`]: dense brute-force enumeration used to cross-check [`roots`].
//!
//! ```
//! use bsroots::polyhedron::minimalize_generators;
//! use bsroots::roots::{roots, RootOptions};
//!
//! let ideal = minimalize_generators(&[vec![2, 1], vec![0, 3]]).unwrap();
//! let w = roots(&ideal, &RootOptions::default()).unwrap();
//! assert_eq!(w.values.len(), 4);
//! ```

pub mod bpoly;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod polyhedron;
pub mod roots;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polyhedra.md")]
    mod polyhedra {}
    #[doc = include_str!("../../../book/src/faces.md")]
    mod faces {}
    #[doc = include_str!("../../../book/src/residues.md")]
    mod residues {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/bpoly.md")]
    mod bpoly {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
