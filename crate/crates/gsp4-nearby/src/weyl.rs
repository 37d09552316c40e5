//! The admissible set for the cocharacter (1,1,0,0) of GSp(4), realized as
//! permissible alcoves.
//!
//! An alcove is a chain of four lattice points in Z^4; the admissible elements
//! are the thirteen alcoves passing the monotonicity, size-step and
//! self-duality conditions. Each element carries the three difference vectors
//! t_0, t_1, t_2 that the stratum classifier in `localmodel` turns into minor
//! selections, plus its length in the affine Weyl group.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::Error;

/// Base vertices omega_i = (1,...,1,0,...,0) with i ones.
const OMEGA: [[i32; 4]; 4] = [[0, 0, 0, 0], [1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 0]];

/// The six 0/1-vectors of weight two: candidate difference vectors.
const WEIGHT_TWO: [[u8; 4]; 6] = [
    [1, 1, 0, 0],
    [1, 0, 1, 0],
    [1, 0, 0, 1],
    [0, 1, 1, 0],
    [0, 1, 0, 1],
    [0, 0, 1, 1],
];

/// An alcove: lattice points x_0, ..., x_3 in Z^4. The extended vertex is
/// always x_4 = x_0 + (1,1,1,1).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct Alcove {
    pub x: [[i32; 4]; 4],
}

fn vec_add(u: [i32; 4], v: [i32; 4]) -> [i32; 4] {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]]
}

fn vec_leq(u: [i32; 4], v: [i32; 4]) -> bool {
    u.iter().zip(v.iter()).all(|(a, b)| a <= b)
}

/// The involution theta(v1,v2,v3,v4) = (-v4,-v3,-v2,-v1).
fn theta(v: [i32; 4]) -> [i32; 4] {
    [-v[3], -v[2], -v[1], -v[0]]
}

impl Alcove {
    /// The alcove with vertices x_i = omega_i + t_i.
    pub fn from_diffs(t: &[[u8; 4]; 4]) -> Alcove {
        let mut x = [[0i32; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                x[i][j] = OMEGA[i][j] + t[i][j] as i32;
            }
        }
        Alcove { x }
    }

    /// The extended vertex x_4 = x_0 + (1,1,1,1).
    pub fn x4(&self) -> [i32; 4] {
        vec_add(self.x[0], [1, 1, 1, 1])
    }

    /// Component-wise x_0 <= x_1 <= x_2 <= x_3 <= x_4.
    pub fn is_monotone(&self) -> bool {
        (0..3).all(|i| vec_leq(self.x[i], self.x[i + 1])) && vec_leq(self.x[3], self.x4())
    }

    /// Entry sums grow by exactly one at each step of the chain.
    pub fn has_unit_size_steps(&self) -> bool {
        let sums: Vec<i32> = self.x.iter().map(|v| v.iter().sum()).collect();
        (0..3).all(|i| sums[i + 1] == sums[i] + 1)
    }

    /// The shift d in {0, 1, 2} realizing the self-duality
    /// x_{4-i} = d*(1,1,1,1) + theta(x_i) on the extended chain, if any.
    pub fn duality_shift(&self) -> Option<i32> {
        let mut ext = [[0i32; 4]; 5];
        ext[..4].copy_from_slice(&self.x);
        ext[4] = self.x4();
        'outer: for d in 0..=2 {
            for i in 0..4 {
                let want = vec_add([d; 4], theta(ext[i]));
                if ext[4 - i] != want {
                    continue 'outer;
                }
            }
            return Some(d);
        }
        None
    }
}

/// Permissibility: the first vertex has entry sum two (the rank), and every
/// vertex stays in the unit box above its base vertex,
/// omega_i <= x_i <= omega_i + 1.
pub fn is_permissible(alcove: &Alcove) -> bool {
    let sum0: i32 = alcove.x[0].iter().sum();
    if sum0 != 2 {
        return false;
    }
    (0..4).all(|i| {
        vec_leq(OMEGA[i], alcove.x[i]) && vec_leq(alcove.x[i], vec_add(OMEGA[i], [1, 1, 1, 1]))
    })
}

/// Labels of the thirteen admissible elements. The word part records the
/// simple reflections applied to the length-zero element tau.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[allow(missing_docs)]
pub enum AdmLabel {
    S010Tau,
    S102Tau,
    S201Tau,
    S212Tau,
    S01Tau,
    S12Tau,
    S10Tau,
    S02Tau,
    S21Tau,
    S0Tau,
    S1Tau,
    S2Tau,
    Tau,
}

impl AdmLabel {
    /// All labels, longest words first, in the fixed report order.
    pub const ALL: [AdmLabel; 13] = [
        AdmLabel::S010Tau,
        AdmLabel::S102Tau,
        AdmLabel::S201Tau,
        AdmLabel::S212Tau,
        AdmLabel::S01Tau,
        AdmLabel::S12Tau,
        AdmLabel::S10Tau,
        AdmLabel::S02Tau,
        AdmLabel::S21Tau,
        AdmLabel::S0Tau,
        AdmLabel::S1Tau,
        AdmLabel::S2Tau,
        AdmLabel::Tau,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AdmLabel::S010Tau => "s010tau",
            AdmLabel::S102Tau => "s102tau",
            AdmLabel::S201Tau => "s201tau",
            AdmLabel::S212Tau => "s212tau",
            AdmLabel::S01Tau => "s01tau",
            AdmLabel::S12Tau => "s12tau",
            AdmLabel::S10Tau => "s10tau",
            AdmLabel::S02Tau => "s02tau",
            AdmLabel::S21Tau => "s21tau",
            AdmLabel::S0Tau => "s0tau",
            AdmLabel::S1Tau => "s1tau",
            AdmLabel::S2Tau => "s2tau",
            AdmLabel::Tau => "tau",
        }
    }
}

impl fmt::Display for AdmLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AdmLabel {
    type Err = Error;

    /// Accepts the canonical ASCII labels; separator dots and a literal
    /// Greek tau are tolerated ("s01·τ" parses as "s01tau").
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .trim()
            .to_lowercase()
            .replace('·', "")
            .replace('.', "")
            .replace('_', "")
            .replace('τ', "tau");
        AdmLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == norm)
            .ok_or_else(|| Error::UnknownLabel(s.to_string()))
    }
}

/// One admissible element: label, length and the difference vectors of its
/// alcove. `diff` holds t_0, t_1, t_2; `translation` is the element's
/// translation part.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct AdmElement {
    pub label: AdmLabel,
    pub length: u8,
    pub diff: [[u8; 4]; 3],
    pub translation: [u8; 4],
}

impl AdmElement {
    /// The rows (0-based) selected by diff vector `i`: positions of its ones.
    pub fn minor_rows(&self, i: usize) -> (usize, usize) {
        rows_of(&self.diff[i])
    }
}

/// Positions of the two ones of a weight-two 0/1 vector.
pub fn rows_of(t: &[u8; 4]) -> (usize, usize) {
    let ones: Vec<usize> = (0..4).filter(|&j| t[j] == 1).collect();
    assert_eq!(ones.len(), 2, "difference vectors have weight two");
    (ones[0], ones[1])
}

/// Hand table of the thirteen elements: (label, length, t_0, t_1, t_2,
/// translation). The enumeration below re-derives and cross-checks it.
const TABLE: [(AdmLabel, u8, [[u8; 4]; 3], [u8; 4]); 13] = [
    (AdmLabel::S010Tau, 3, [[1, 1, 0, 0], [1, 1, 0, 0], [1, 1, 0, 0]], [1, 1, 0, 0]),
    (AdmLabel::S102Tau, 3, [[0, 1, 0, 1], [0, 1, 0, 1], [0, 1, 0, 1]], [0, 1, 0, 1]),
    (AdmLabel::S201Tau, 3, [[1, 0, 1, 0], [1, 0, 1, 0], [1, 0, 1, 0]], [1, 0, 1, 0]),
    (AdmLabel::S212Tau, 3, [[0, 0, 1, 1], [0, 0, 1, 1], [0, 0, 1, 1]], [0, 0, 1, 1]),
    (AdmLabel::S01Tau, 2, [[1, 1, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0]], [1, 1, 0, 0]),
    (AdmLabel::S12Tau, 2, [[0, 1, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]], [0, 1, 0, 1]),
    (AdmLabel::S10Tau, 2, [[1, 1, 0, 0], [0, 1, 0, 1], [0, 1, 0, 1]], [1, 1, 0, 0]),
    (AdmLabel::S02Tau, 2, [[1, 0, 1, 0], [0, 1, 1, 0], [1, 0, 1, 0]], [1, 0, 1, 0]),
    (AdmLabel::S21Tau, 2, [[1, 0, 1, 0], [0, 0, 1, 1], [0, 0, 1, 1]], [1, 0, 1, 0]),
    (AdmLabel::S0Tau, 1, [[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]], [1, 1, 0, 0]),
    (AdmLabel::S1Tau, 1, [[1, 1, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1]], [1, 1, 0, 0]),
    (AdmLabel::S2Tau, 1, [[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 1, 1]], [1, 0, 1, 0]),
    (AdmLabel::Tau, 0, [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]], [1, 1, 0, 0]),
];

/// Exhaustive enumeration over all 6^4 candidate difference-vector chains,
/// keeping the alcoves that are monotone with unit size steps and self-dual
/// for some shift d in {0, 1, 2}. Returns the accepted (t_0..t_3) chains.
fn enumerate_chains() -> Vec<[[u8; 4]; 4]> {
    let mut found = Vec::new();
    for &t0 in &WEIGHT_TWO {
        for &t1 in &WEIGHT_TWO {
            for &t2 in &WEIGHT_TWO {
                for &t3 in &WEIGHT_TWO {
                    let ts = [t0, t1, t2, t3];
                    let alc = Alcove::from_diffs(&ts);
                    if !alc.is_monotone() {
                        continue;
                    }
                    assert!(alc.has_unit_size_steps());
                    if alc.duality_shift().is_none() {
                        continue;
                    }
                    assert!(is_permissible(&alc));
                    found.push(ts);
                }
            }
        }
    }
    found
}

/// The thirteen admissible elements, longest first. Computed once: the
/// exhaustive alcove enumeration must reproduce the hand table exactly, and
/// any discrepancy aborts (a bug, not an input error).
pub fn admissible_set() -> &'static [AdmElement; 13] {
    static SET: OnceLock<[AdmElement; 13]> = OnceLock::new();
    SET.get_or_init(|| {
        let chains = enumerate_chains();
        assert_eq!(chains.len(), 13, "admissible enumeration must yield 13 alcoves");
        let mut out = Vec::with_capacity(13);
        for &(label, length, diff, translation) in &TABLE {
            let hit = chains.iter().find(|ts| ts[0] == diff[0] && ts[1] == diff[1] && ts[2] == diff[2]);
            let ts = hit.unwrap_or_else(|| panic!("{label} missing from the enumeration"));
            // the fourth vector is pinned by duality, never free
            let alc = Alcove::from_diffs(ts);
            assert!(alc.duality_shift().is_some());
            out.push(AdmElement { label, length, diff, translation });
        }
        out.try_into().unwrap()
    })
}

/// Looks up one element by label.
pub fn element(label: AdmLabel) -> &'static AdmElement {
    admissible_set().iter().find(|e| e.label == label).unwrap()
}

/// The length of an element, in {0, 1, 2, 3}.
pub fn length(elem: &AdmElement) -> u8 {
    elem.length
}
