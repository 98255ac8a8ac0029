pub mod eigenbasis;
pub mod error;
pub mod graph;
pub mod integer;
pub mod oracle;
pub mod spectrum;
pub mod survey;
pub mod tolerances;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/spectrum.md")]
    mod spectrum {}
    #[doc = include_str!("../../../book/src/integer-eigenvalues.md")]
    mod integer_eigenvalues {}
    #[doc = include_str!("../../../book/src/bases.md")]
    mod bases {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/survey.md")]
    mod survey {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
