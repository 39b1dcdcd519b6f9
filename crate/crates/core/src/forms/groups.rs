use crate::qseries::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupType {
    /// `Gamma0(N)`, `N = 2, 3, 4`.
    I,
    /// `Gamma(1)` and the Fricke extensions `Gamma0+(2)`, `Gamma0+(3)`.
    II,
    /// The index-two subgroups `2a'`, `4a'`, `6a'` with cusp width 2.
    III,
}

/// One of the nine triangle groups commensurable with `Gamma(1)`, together with the
/// registry names of its power-cleared triple `A^rho, B^rho, C^rho` and its weight-2 form `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleGroup {
    pub id: &'static str,
    pub label: &'static str,
    pub kind: GroupType,
    /// `(n_A, n_B, n_C)`, with 0 standing for infinity.
    pub signature: (u32, u32, u32),
    pub rho: u32,
    pub upsilon: u32,
    /// Coefficient field of the triple.
    pub d: i64,
    /// Location of the finite singular point used for q-series cross-checks.
    pub t_star: i64,
}

fn recip(n: u32) -> Rational {
    if n == 0 {
        rat(0, 1)
    } else {
        rat(1, n as i64)
    }
}

impl TriangleGroup {
    pub fn alpha(&self) -> Rational {
        recip(self.signature.0)
    }

    pub fn beta(&self) -> Rational {
        recip(self.signature.1)
    }

    pub fn gamma(&self) -> Rational {
        recip(self.signature.2)
    }

    pub fn a_rho(&self) -> String {
        format!("{}.Arho", self.id)
    }

    pub fn b_rho(&self) -> String {
        format!("{}.Brho", self.id)
    }

    pub fn c_rho(&self) -> String {
        format!("{}.Crho", self.id)
    }

    pub fn e(&self) -> String {
        format!("{}.E", self.id)
    }

    /// `upsilon * rho`, the constant in front of `E'` in the system for `E`.
    pub fn ladder_constant(&self) -> u32 {
        self.upsilon * self.rho
    }
}

#[allow(clippy::too_many_arguments)]
const fn group(
    id: &'static str,
    label: &'static str,
    kind: GroupType,
    signature: (u32, u32, u32),
    rho: u32,
    upsilon: u32,
    d: i64,
    t_star: i64,
) -> TriangleGroup {
    TriangleGroup { id, label, kind, signature, rho, upsilon, d, t_star }
}

pub const TRIANGLE_GROUPS: [TriangleGroup; 9] = [
    group("g0_2", "Gamma0(2)", GroupType::I, (2, 0, 0), 4, 1, 0, -64),
    group("g0_3", "Gamma0(3)", GroupType::I, (3, 0, 0), 3, 1, 0, -27),
    group("g0_4", "Gamma0(4)", GroupType::I, (0, 0, 0), 2, 1, 0, -16),
    group("g1", "Gamma(1)", GroupType::II, (3, 2, 0), 12, 1, 0, -1),
    group("g0p_2", "Gamma0+(2)", GroupType::II, (4, 2, 0), 8, 1, 0, -1),
    group("g0p_3", "Gamma0+(3)", GroupType::II, (6, 2, 0), 6, 1, 0, -1),
    group("2a", "2a'", GroupType::III, (3, 3, 0), 6, 2, -3, -1),
    group("4a", "4a'", GroupType::III, (4, 4, 0), 4, 2, -1, -1),
    group("6a", "6a'", GroupType::III, (6, 6, 0), 3, 2, -3, -1),
];

/// Looks a group up by id (`g0_2`) or label (`Gamma0(2)`).
pub fn triangle_group(name: &str) -> Option<&'static TriangleGroup> {
    TRIANGLE_GROUPS.iter().find(|g| g.id == name || g.label == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::int;

    #[test]
    fn rho_matches_angles() {
        for g in &TRIANGLE_GROUPS {
            let rho = int(2) / (int(1) - g.alpha() - g.beta() - g.gamma());
            assert_eq!(rho, int(g.rho as i64), "{}", g.id);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(triangle_group("Gamma0+(3)").unwrap().rho, 6);
        assert_eq!(triangle_group("4a").unwrap().d, -1);
        assert!(triangle_group("g7").is_none());
    }
}
