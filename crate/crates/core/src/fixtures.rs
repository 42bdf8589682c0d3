//! Group files shipped with the crate.

use crate::error::{Error, Result};
use crate::group::Group;

/// `(name, contents)` for every bundled group file.
pub const GROUP_FILES: &[(&str, &str)] = &[
    ("c2", include_str!("../fixtures/c2.grp")),
    ("c4", include_str!("../fixtures/c4.grp")),
    ("c8", include_str!("../fixtures/c8.grp")),
    ("c2xc2", include_str!("../fixtures/c2xc2.grp")),
    ("c2xc2xc2", include_str!("../fixtures/c2xc2xc2.grp")),
    ("d8", include_str!("../fixtures/d8.grp")),
    ("q8", include_str!("../fixtures/q8.grp")),
    ("d8xc2", include_str!("../fixtures/d8xc2.grp")),
    ("extraspecial_plus_32", include_str!("../fixtures/extraspecial_plus_32.grp")),
    ("extraspecial_plus_128", include_str!("../fixtures/extraspecial_plus_128.grp")),
    ("sg64_242", include_str!("../fixtures/sg64_242.grp")),
];

pub fn group_text(name: &str) -> Option<&'static str> {
    GROUP_FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn group(name: &str) -> Result<Group> {
    let text = group_text(name).ok_or_else(|| Error::Corrupt(format!("no fixture named {name}")))?;
    Group::from_text(text)
}
