//! Finite sets of integers and of finite abelian groups, their
//! representation counts, certificates and trivial size bounds.

mod bounds;
mod certificate;
mod group;
mod intset;
mod profile;

pub use bounds::{
    trivial_bounds, BoundTarget, BoundsLedger, GroupBounds, IntervalBounds, TrivialBounds,
};
pub use certificate::{
    verify_certificate, verify_difference_group, verify_difference_interval, verify_sidon_group,
    verify_sidon_interval, CertDomain, CertMode, CertSet, Verdict, Witness,
};
pub use group::{GroupSpec, GroupSubset};
pub use intset::IntSet;
pub use profile::{
    diff_count, group_rep_count, group_rep_profile, group_rep_profile_with, rep_diff_profile,
    rep_diff_profile_with, rep_sum_profile, Mode, ProfileDomain, RepProfile,
};
