use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arm of the T-junction, or the central site.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Arm {
    L,
    R,
    C,
    B,
}

/// A site of the junction: `k`-th anyon of an arm counted from the centre
/// (starting at 1), or the central anyon (`k = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site {
    pub arm: Arm,
    pub k: usize,
}

impl Site {
    pub const CENTER: Site = Site { arm: Arm::C, k: 0 };

    pub const fn new(arm: Arm, k: usize) -> Self {
        Site { arm, k }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.arm {
            Arm::C => f.write_str("C"),
            arm => write!(f, "{arm:?}{}", self.k),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BondClass {
    /// Arm bond left uncoupled in the initial dimerization.
    Weak,
    /// Arm bond coupled in the initial dimerization.
    Strong,
    /// Bond between the central anyon and the first anyon of an arm.
    Junction,
}

/// Nearest-neighbour bond of the physical T-graph, with the 1-based
/// positions of its ends in the fusion order (`i < j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub sites: (Site, Site),
    pub i: usize,
    pub j: usize,
    pub class: BondClass,
}

/// Three staggered chains meeting at a central anyon.
///
/// An arm with `N` pairs holds `2N + 1` anyons. Initially the central anyon
/// is paired with `B1`, the bottom arm continues with pairs `(B2, B3), …`,
/// and the left and right arms with `(K1, K2), (K3, K4), …`, leaving one
/// unpaired charge at the outer end of `L` and of `R`.
///
/// Fusion order: `L_{2N_L+1} … L1, R_{2N_R+1} … R1, C, B1 … B_{2N_B+1}`.
/// With every arm of length zero this is `(L, R, C, B)`, the T-junction
/// basis. Arm bonds and `(R1, C)`, `(C, B1)` join adjacent positions;
/// `(L1, C)` spans the right arm and is reached by braiding.
#[derive(Clone, Debug, PartialEq)]
pub struct JunctionChainLayout {
    arm_lengths: [usize; 3],
    sites: Vec<Site>,
    bonds: Vec<Bond>,
}

impl JunctionChainLayout {
    /// Pair counts `(N_L, N_R, N_B)`.
    pub fn new(n_l: usize, n_r: usize, n_b: usize) -> Self {
        let mut sites = Vec::new();
        sites.extend((1..=2 * n_l + 1).rev().map(|k| Site::new(Arm::L, k)));
        sites.extend((1..=2 * n_r + 1).rev().map(|k| Site::new(Arm::R, k)));
        sites.push(Site::CENTER);
        sites.extend((1..=2 * n_b + 1).map(|k| Site::new(Arm::B, k)));

        let mut layout = Self {
            arm_lengths: [n_l, n_r, n_b],
            sites,
            bonds: Vec::new(),
        };
        let initial = layout.initial_dimers();
        let mut bonds = Vec::new();
        for (arm, n) in [(Arm::L, n_l), (Arm::R, n_r), (Arm::B, n_b)] {
            bonds.push((Site::CENTER, Site::new(arm, 1)));
            for a in 1..=2 * n {
                bonds.push((Site::new(arm, a), Site::new(arm, a + 1)));
            }
        }
        layout.bonds = bonds
            .into_iter()
            .map(|(x, y)| {
                let (px, py) = (layout.position(x).expect("site exists"), layout.position(y).expect("site exists"));
                let class = if x.arm == Arm::C || y.arm == Arm::C {
                    BondClass::Junction
                } else if initial.contains(&(x, y)) {
                    BondClass::Strong
                } else {
                    BondClass::Weak
                };
                Bond {
                    sites: (x, y),
                    i: px.min(py),
                    j: px.max(py),
                    class,
                }
            })
            .collect();
        layout.bonds.sort_by_key(|b| (b.i, b.j));
        layout
    }

    pub fn arm_lengths(&self) -> [usize; 3] {
        self.arm_lengths
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn count(&self) -> usize {
        self.sites.len()
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    /// 1-based position of a site in the fusion order.
    pub fn position(&self, site: Site) -> Option<usize> {
        self.sites.iter().position(|&s| s == site).map(|p| p + 1)
    }

    /// Index into [`Self::bonds`] of the bond joining two sites.
    pub fn bond_index(&self, x: Site, y: Site) -> Result<usize> {
        self.bonds
            .iter()
            .position(|b| b.sites == (x, y) || b.sites == (y, x))
            .ok_or_else(|| Error::InvalidArgument(format!("no bond between {x} and {y}")))
    }

    fn initial_dimers(&self) -> Vec<(Site, Site)> {
        let [n_l, n_r, n_b] = self.arm_lengths;
        let mut on = vec![(Site::CENTER, Site::new(Arm::B, 1))];
        on.extend((2..=2 * n_b).step_by(2).map(|a| (Site::new(Arm::B, a), Site::new(Arm::B, a + 1))));
        for (arm, n) in [(Arm::L, n_l), (Arm::R, n_r)] {
            on.extend((1..2 * n).step_by(2).map(|a| (Site::new(arm, a), Site::new(arm, a + 1))));
        }
        on
    }

    /// Which bonds are coupled at the start of the braid.
    pub fn initial_on(&self) -> Vec<bool> {
        let dimers = self.initial_dimers();
        self.bonds
            .iter()
            .map(|b| dimers.iter().any(|&(x, y)| b.sites == (x, y) || b.sites == (y, x)))
            .collect()
    }

    /// The domain-wall moves of the braid as `(bond switched off, bond
    /// switched on)` index pairs. Each move shifts one dimer by one site and
    /// involves three anyons.
    ///
    /// Step 1 carries the free charge of `L` inwards, hands the central
    /// anyon from `B1` to `L1`, and pushes the released charge out along
    /// `B`. Steps 2 and 3 repeat this for `R → L` and `B → R`.
    pub fn moves(&self) -> Vec<(usize, usize)> {
        let [n_l, n_r, n_b] = self.arm_lengths;
        let len = |arm: Arm| match arm {
            Arm::L => n_l,
            Arm::R => n_r,
            _ => n_b,
        };
        let s = Site::new;
        let inward = |arm: Arm| -> Vec<((Site, Site), (Site, Site))> {
            let n = len(arm);
            (0..n)
                .map(|j| {
                    let a = 2 * n - 1 - 2 * j;
                    ((s(arm, a), s(arm, a + 1)), (s(arm, a + 1), s(arm, a + 2)))
                })
                .collect()
        };
        let outward = |arm: Arm| -> Vec<((Site, Site), (Site, Site))> {
            (0..len(arm))
                .map(|j| {
                    let a = 2 * j + 1;
                    ((s(arm, a + 1), s(arm, a + 2)), (s(arm, a), s(arm, a + 1)))
                })
                .collect()
        };
        let c = Site::CENTER;
        let mut seq = inward(Arm::L);
        seq.push(((c, s(Arm::B, 1)), (s(Arm::L, 1), c)));
        seq.extend(outward(Arm::B));
        seq.extend(inward(Arm::R));
        seq.push(((s(Arm::L, 1), c), (s(Arm::R, 1), c)));
        seq.extend(outward(Arm::L));
        seq.extend(inward(Arm::B));
        seq.push(((s(Arm::R, 1), c), (c, s(Arm::B, 1))));
        seq.extend(outward(Arm::R));
        seq.into_iter()
            .map(|((a, b), (x, y))| {
                (
                    self.bond_index(a, b).expect("move bonds exist"),
                    self.bond_index(x, y).expect("move bonds exist"),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_arms_reduce_to_four_sites() {
        let l = JunctionChainLayout::new(0, 0, 0);
        let names: Vec<String> = l.sites().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["L1", "R1", "C", "B1"]);
        let pairs: Vec<(usize, usize)> = l.bonds().iter().map(|b| (b.i, b.j)).collect();
        assert_eq!(pairs, [(1, 3), (2, 3), (3, 4)]);
        assert_eq!(l.initial_on(), [false, false, true]);
        assert_eq!(l.moves(), [(2, 0), (0, 1), (1, 2)]);
    }

    #[test]
    fn unit_arms() {
        let l = JunctionChainLayout::new(1, 1, 1);
        assert_eq!(l.count(), 10);
        assert_eq!(l.bonds().len(), 9);
        assert_eq!(l.moves().len(), 9);
        let strong = l.bonds().iter().filter(|b| b.class == BondClass::Strong).count();
        assert_eq!(strong, 3);
        let on = l.initial_on().iter().filter(|&&b| b).count();
        assert_eq!(on, 4);
    }

    #[test]
    fn moves_keep_a_perfect_dimer_cover_of_all_but_two_sites() {
        for (a, b, c) in [(1, 1, 1), (2, 1, 0), (0, 2, 1)] {
            let l = JunctionChainLayout::new(a, b, c);
            let mut on = l.initial_on();
            let check = |on: &[bool]| {
                let mut used = std::collections::HashSet::new();
                for (bond, &o) in l.bonds().iter().zip(on) {
                    if o {
                        assert!(used.insert(bond.sites.0));
                        assert!(used.insert(bond.sites.1));
                    }
                }
                assert_eq!(used.len() + 2, l.count());
            };
            check(&on);
            for (off, up) in l.moves() {
                assert!(on[off] && !on[up]);
                on[off] = false;
                on[up] = true;
                check(&on);
            }
            assert_eq!(on, l.initial_on());
        }
    }
}
