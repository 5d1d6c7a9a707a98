//! Doctest harness for the book: every fenced Rust block in `book/src/` runs
//! under `cargo test --doc`, keeping the narrative and the library in sync.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        mod $name {}
    };
}

chapter!(intro, "../../../book/src/intro.md");
chapter!(fields, "../../../book/src/fields.md");
chapter!(clifford, "../../../book/src/clifford.md");
chapter!(chains, "../../../book/src/chains.md");
chapter!(inclusions, "../../../book/src/inclusions.md");
chapter!(normal_forms, "../../../book/src/normal-forms.md");
chapter!(homotopy, "../../../book/src/homotopy.md");
chapter!(runner, "../../../book/src/runner.md");
