//! Evaluation statistics: correlations with human judgments, Fisher z
//! significance, and precision-recall break-even points.

mod bep;
mod correlation;

pub use bep::{bep, micro_macro_bep, pr_curve, BepSummary, CategoryScores, PrPoint};
pub use correlation::{
    fisher_z, fisher_z_pvalue, pearson, ranks, spearman, split_judge_agreement, FisherZ, SplitAgreement, Tail,
};
