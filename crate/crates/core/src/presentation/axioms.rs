use std::fmt;
use std::str::FromStr;

use super::PresentationError;

/// Extra axioms imposed on top of the quandle axioms, which always hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AxiomSet {
    pub involutory: bool,
    pub abelian: bool,
    pub anti_abelian: bool,
    pub left_distributive: bool,
    pub commutative_operator: bool,
    pub latin: bool,
    /// `(..(x ▷ y) ▷ y ..) ▷ y = x` with `n` applications, `n ≥ 3`. The case
    /// `n = 2` is stored as `involutory`.
    pub n_quandle: Option<u32>,
}

impl AxiomSet {
    pub fn quandle() -> AxiomSet {
        AxiomSet::default()
    }

    pub fn involutory() -> AxiomSet {
        AxiomSet { involutory: true, ..AxiomSet::default() }
    }

    pub fn with_n_quandle(mut self, n: u32) -> Result<AxiomSet, PresentationError> {
        match n {
            0 | 1 => return Err(PresentationError::Axiom(format!("n-quandle={n}: n must be at least 2"))),
            2 => self.involutory = true,
            _ => self.n_quandle = Some(n),
        }
        Ok(self)
    }

    /// Every flag set, with `n_quandle` as given.
    pub fn all(n_quandle: Option<u32>) -> AxiomSet {
        AxiomSet {
            involutory: true,
            abelian: true,
            anti_abelian: true,
            left_distributive: true,
            commutative_operator: true,
            latin: true,
            n_quandle,
        }
    }
}

impl FromStr for AxiomSet {
    type Err = PresentationError;

    /// Comma-separated names: `involutory`, `abelian`, `anti-abelian`,
    /// `left-distributive`, `commutative-operator`, `latin`, `n-quandle=N`.
    /// The empty string and `quandle` give the plain quandle axioms.
    fn from_str(text: &str) -> Result<AxiomSet, PresentationError> {
        let mut out = AxiomSet::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let key = item.to_ascii_lowercase().replace('_', "-");
            match key.as_str() {
                "quandle" => {}
                "involutory" => out.involutory = true,
                "abelian" => out.abelian = true,
                "anti-abelian" => out.anti_abelian = true,
                "left-distributive" => out.left_distributive = true,
                "commutative-operator" => out.commutative_operator = true,
                "latin" => out.latin = true,
                _ => {
                    let n = key
                        .strip_prefix("n-quandle=")
                        .and_then(|n| n.parse::<u32>().ok())
                        .ok_or_else(|| PresentationError::Axiom(format!("unknown axiom `{item}`")))?;
                    out = out.with_n_quandle(n)?;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names: Vec<String> = Vec::new();
        let flags = [
            (self.involutory, "involutory"),
            (self.abelian, "abelian"),
            (self.anti_abelian, "anti-abelian"),
            (self.left_distributive, "left-distributive"),
            (self.commutative_operator, "commutative-operator"),
            (self.latin, "latin"),
        ];
        names.extend(flags.iter().filter(|(on, _)| *on).map(|(_, n)| n.to_string()));
        if let Some(n) = self.n_quandle {
            names.push(format!("n-quandle={n}"));
        }
        if names.is_empty() {
            write!(f, "quandle")
        } else {
            write!(f, "{}", names.join(","))
        }
    }
}
