pub mod bosonise;
pub mod category;
pub mod cli;
pub mod constructions;
pub mod groups;
pub mod iso;
pub mod parallel;
pub mod quasihopf;
pub mod report;
pub mod scalars;
pub mod tensor;
pub mod transmute;
