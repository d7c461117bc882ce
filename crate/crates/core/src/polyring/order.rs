use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var};
use super::PolyError;

/// Graded reverse lexicographic order with a configurable variable precedence.
///
/// `precedence[0]` is the largest variable. The default is
/// `s^-1 > t^-1 > s > t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    precedence: [Var; 4],
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder {
            precedence: [Var::SInv, Var::TInv, Var::S, Var::T],
        }
    }
}

impl MonomialOrder {
    pub fn grevlex(precedence: [Var; 4]) -> Result<Self, PolyError> {
        let mut seen = [false; 4];
        for v in precedence {
            if std::mem::replace(&mut seen[v.index()], true) {
                return Err(PolyError::BadOrder(format!("variable {} repeated", v.name())));
            }
        }
        Ok(MonomialOrder { precedence })
    }

    pub fn precedence(&self) -> [Var; 4] {
        self.precedence
    }

    /// Total degree first; on ties the monomial with the smaller exponent in
    /// the lowest-precedence differing variable is larger.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        for v in self.precedence.iter().rev() {
            let (ea, eb) = (a.exp(*v), b.exp(*v));
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.precedence.iter().map(|v| v.name()).collect();
        write!(f, "{}", names.join(">"))
    }
}

impl FromStr for MonomialOrder {
    type Err = PolyError;

    /// Parses `sinv>tinv>s>t`; `<` chains are accepted in ascending form.
    fn from_str(text: &str) -> Result<Self, PolyError> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (parts, ascending): (Vec<&str>, bool) = if text.contains('>') {
            (text.split('>').collect(), false)
        } else {
            (text.split('<').collect(), true)
        };
        if parts.len() != 4 {
            return Err(PolyError::BadOrder(text));
        }
        let mut vars = [Var::T; 4];
        for (i, p) in parts.iter().enumerate() {
            vars[i] = Var::from_name(p).ok_or_else(|| PolyError::BadOrder(p.to_string()))?;
        }
        if ascending {
            vars.reverse();
        }
        MonomialOrder::grevlex(vars)
    }
}
