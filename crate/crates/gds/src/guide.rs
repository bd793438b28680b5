//! Doc-test harness for the book.
//!
//! mdbook renders `book/` but does not compile its code blocks against this
//! crate, so each chapter is also included here as a rustdoc page; `cargo
//! test --doc` then runs every snippet. One module per chapter keeps test
//! failures attributable.

#[cfg(doctest)]
mod chapters {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/roots-and-weights.md")]
    mod roots_and_weights {}
    #[doc = include_str!("../../../book/src/alcoves.md")]
    mod alcoves {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/labels.md")]
    mod labels {}
    #[doc = include_str!("../../../book/src/type-a1.md")]
    mod type_a1 {}
    #[doc = include_str!("../../../book/src/type-a2.md")]
    mod type_a2 {}
    #[doc = include_str!("../../../book/src/fusion.md")]
    mod fusion {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
