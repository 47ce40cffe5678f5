use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::{parse_table_text, GroupError, GroupTable};

/// A textual description of which group to load.
///
/// Accepted forms: `cyclic:k`, `symmetric:k`, `dihedral:k`, `trivial`,
/// and `file:<path>` for a Cayley-table file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    File(PathBuf),
}

impl GroupSpec {
    pub fn load(&self) -> Result<GroupTable, GroupError> {
        match self {
            GroupSpec::Cyclic(k) => GroupTable::cyclic(*k),
            GroupSpec::Symmetric(k) => GroupTable::symmetric(*k),
            GroupSpec::Dihedral(k) => GroupTable::dihedral(*k),
            GroupSpec::File(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
                parse_table_text(&text)
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(GroupSpec::Cyclic(1));
        }
        let (kind, arg) =
            s.split_once(':').ok_or_else(|| GroupError::BadParameter(format!("group spec {s:?} is not kind:arg")))?;
        let num = || {
            arg.trim()
                .parse::<usize>()
                .map_err(|_| GroupError::BadParameter(format!("group parameter {arg:?} is not an integer")))
        };
        match kind.trim() {
            "cyclic" => Ok(GroupSpec::Cyclic(num()?)),
            "symmetric" => Ok(GroupSpec::Symmetric(num()?)),
            "dihedral" => Ok(GroupSpec::Dihedral(num()?)),
            "file" => Ok(GroupSpec::File(PathBuf::from(arg.trim()))),
            other => Err(GroupError::BadParameter(format!("unknown group kind {other:?}"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupSpec::Symmetric(k) => write!(f, "symmetric:{k}"),
            GroupSpec::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}
