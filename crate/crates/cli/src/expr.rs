//! Subset expressions: `class:i`, `classes:i,j,…`, `all-nonid`,
//! `complement-real`, `word:<w>`.

use std::fmt;
use std::str::FromStr;

use normexp_core::words::{word_image, Word};
use normexp_core::{ClassTable, Error, FiniteGroup, NormalSubset, Result, Subset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetExpr {
    Class(usize),
    Classes(Vec<usize>),
    AllNonIdentity,
    /// Elements that are not conjugate to their inverse.
    ComplementReal,
    Word(Word),
}

impl FromStr for SubsetExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let index = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad class index {t:?} in {s:?}")))
        };
        if s == "all-nonid" {
            Ok(SubsetExpr::AllNonIdentity)
        } else if s == "complement-real" {
            Ok(SubsetExpr::ComplementReal)
        } else if let Some(rest) = s.strip_prefix("classes:") {
            let list = rest.split(',').map(index).collect::<Result<Vec<_>>>()?;
            if list.is_empty() {
                return Err(Error::Parse(format!("empty class list in {s:?}")));
            }
            Ok(SubsetExpr::Classes(list))
        } else if let Some(rest) = s.strip_prefix("class:") {
            Ok(SubsetExpr::Class(index(rest)?))
        } else if let Some(rest) = s.strip_prefix("word:") {
            Ok(SubsetExpr::Word(rest.parse()?))
        } else {
            Err(Error::Parse(format!("unknown subset expression {s:?}")))
        }
    }
}

impl fmt::Display for SubsetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetExpr::Class(i) => write!(f, "class:{i}"),
            SubsetExpr::Classes(list) => {
                let parts: Vec<String> = list.iter().map(|i| i.to_string()).collect();
                write!(f, "classes:{}", parts.join(","))
            }
            SubsetExpr::AllNonIdentity => f.write_str("all-nonid"),
            SubsetExpr::ComplementReal => f.write_str("complement-real"),
            SubsetExpr::Word(w) => write!(f, "word:{w}"),
        }
    }
}

impl SubsetExpr {
    /// Every expression denotes a union of classes.
    pub fn resolve(&self, g: &FiniteGroup, ct: &ClassTable, word_cap: usize) -> Result<NormalSubset> {
        let s = match self {
            SubsetExpr::Class(i) => NormalSubset::from_classes(ct, &[*i])?,
            SubsetExpr::Classes(list) => NormalSubset::from_classes(ct, list)?,
            SubsetExpr::AllNonIdentity => NormalSubset::all_nonidentity(ct),
            SubsetExpr::ComplementReal => {
                let list: Vec<usize> = (0..ct.len()).filter(|&c| !ct.is_real(c)).collect();
                NormalSubset::from_classes(ct, &list)?
            }
            SubsetExpr::Word(w) => NormalSubset::from_subset(ct, &word_image(g, w, word_cap)?)?,
        };
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(s)
    }

    pub fn resolve_set(&self, g: &FiniteGroup, ct: &ClassTable, word_cap: usize) -> Result<Subset> {
        Ok(self.resolve(g, ct, word_cap)?.set().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use normexp_core::build::{build_alternating, build_psl2};
    use normexp_core::words::DEFAULT_WORD_CAP;

    #[test]
    fn parse_and_print() {
        for s in ["class:3", "classes:1,2,5", "all-nonid", "complement-real", "word:xyXY"] {
            assert_eq!(s.parse::<SubsetExpr>().unwrap().to_string(), s);
        }
        assert_eq!("classes: 2, 1".parse::<SubsetExpr>().unwrap(), SubsetExpr::Classes(vec![2, 1]));
        assert!("class:x".parse::<SubsetExpr>().is_err());
        assert!("classes:".parse::<SubsetExpr>().is_err());
        assert!("word:xX".parse::<SubsetExpr>().is_err());
        assert!("everything".parse::<SubsetExpr>().is_err());
    }

    #[test]
    fn resolution() {
        let g = build_psl2(7, 1000).unwrap();
        let ct = ClassTable::compute(&g);
        let nr = SubsetExpr::ComplementReal.resolve(&g, &ct, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(nr.len(), 48);
        let sq: SubsetExpr = "word:xx".parse().unwrap();
        assert!(sq.resolve(&g, &ct, DEFAULT_WORD_CAP).unwrap().contains_identity());
        assert_eq!(SubsetExpr::AllNonIdentity.resolve(&g, &ct, DEFAULT_WORD_CAP).unwrap().len(), 167);
        let a5 = build_alternating(5, 100).unwrap();
        let ct = ClassTable::compute(&a5);
        assert!(matches!(SubsetExpr::ComplementReal.resolve(&a5, &ct, DEFAULT_WORD_CAP), Err(Error::EmptySubset)));
        assert!(matches!(SubsetExpr::Class(9).resolve(&a5, &ct, DEFAULT_WORD_CAP), Err(Error::Index { .. })));
    }
}
