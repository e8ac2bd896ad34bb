use std::fmt;
use std::str::FromStr;

/// Coarse large-scale geometry of a Coxeter group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Finite,
    VirtuallyCyclic,
    Thick,
    Hyperbolic,
    RelativelyHyperbolic,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Finite,
        Status::VirtuallyCyclic,
        Status::Thick,
        Status::Hyperbolic,
        Status::RelativelyHyperbolic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Finite => "Finite",
            Status::VirtuallyCyclic => "VirtuallyCyclic",
            Status::Thick => "Thick",
            Status::Hyperbolic => "Hyperbolic",
            Status::RelativelyHyperbolic => "RelativelyHyperbolic",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Status::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| format!("unknown status `{s}`"))
    }
}
