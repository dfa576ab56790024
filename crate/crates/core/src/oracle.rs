//! Brute-force enumeration of chord diagrams on ordered backbones.
//!
//! Each backbone is a horizontal segment carrying `m` vertices, thickened to
//! a strip whose top side holds the chord ends. The top side is cut by the
//! vertices into `m + 1` gaps; gap `j` lies just to the right of vertex `j`
//! (gap 0 is left of vertex 1). Boundary cycles are traced gap by gap.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram_type::DiagramType;
use crate::error::{Error, Result};
use crate::evolution::Variant;
use crate::spectrum::Spectrum;

/// Vertex address: backbone index and position `1..=size`.
pub type Slot = (usize, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChordDiagram {
    pub backbone_sizes: Vec<u32>,
    /// Chords as pairs of slots with the smaller slot first.
    pub chords: Vec<(Slot, Slot)>,
    /// Parallel to `chords`; always false in orientable mode.
    pub twists: Vec<bool>,
    /// Enumeration mode. Non-orientable diagrams report the genus `h` even
    /// when no chord is twisted.
    pub variant: Variant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCycle {
    pub marked_points: u32,
    pub length: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryProfile {
    pub cycles: Vec<BoundaryCycle>,
}

impl BoundaryProfile {
    pub fn n_spec(&self) -> Spectrum {
        Spectrum::from_indices(self.cycles.iter().map(|c| c.marked_points))
    }

    pub fn p_spec(&self) -> Spectrum {
        Spectrum::from_indices(self.cycles.iter().map(|c| c.length))
    }
}

#[derive(Clone, Copy)]
enum End {
    Marked,
    Chord { to: Slot, twisted: bool },
}

impl ChordDiagram {
    pub fn k(&self) -> u32 {
        self.chords.len() as u32
    }

    pub fn b(&self) -> u32 {
        self.backbone_sizes.len() as u32
    }

    /// Number of marked points.
    pub fn l(&self) -> u32 {
        self.backbone_sizes.iter().sum::<u32>() - 2 * self.k()
    }

    fn ends(&self) -> Vec<Vec<End>> {
        let mut ends: Vec<Vec<End>> = self.backbone_sizes.iter().map(|&m| vec![End::Marked; m as usize]).collect();
        for (&(a, b), &tw) in self.chords.iter().zip(&self.twists) {
            ends[a.0][(a.1 - 1) as usize] = End::Chord { to: b, twisted: tw };
            ends[b.0][(b.1 - 1) as usize] = End::Chord { to: a, twisted: tw };
        }
        ends
    }

    /// Number of connected components of the graph on backbones joined by
    /// chords.
    pub fn components(&self) -> u32 {
        let n = self.backbone_sizes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.chords {
            let (ra, rb) = (find(&mut parent, a.0), find(&mut parent, b.0));
            parent[ra] = rb;
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count() as u32
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }
}

/// Traces every boundary cycle of the thickened diagram.
pub fn boundary_profile(d: &ChordDiagram) -> BoundaryProfile {
    let ends = d.ends();
    let sizes = &d.backbone_sizes;
    let mut visited: Vec<Vec<bool>> = sizes.iter().map(|&m| vec![false; m as usize + 1]).collect();
    let mut cycles = Vec::new();
    for bb in 0..sizes.len() {
        for gap in 0..=sizes[bb] {
            if visited[bb][gap as usize] {
                continue;
            }
            let start = (bb, gap, true);
            let mut state = start;
            let mut cycle = BoundaryCycle { marked_points: 0, length: 0 };
            loop {
                let (b, j, right) = state;
                visited[b][j as usize] = true;
                let m = sizes[b];
                state = if right {
                    if j == m {
                        cycle.length += 1;
                        (b, 0, true)
                    } else {
                        match ends[b][j as usize] {
                            End::Marked => {
                                cycle.marked_points += 1;
                                (b, j + 1, true)
                            }
                            End::Chord { to, twisted: false } => {
                                cycle.length += 1;
                                (to.0, to.1, true)
                            }
                            End::Chord { to, twisted: true } => {
                                cycle.length += 1;
                                (to.0, to.1 - 1, false)
                            }
                        }
                    }
                } else if j == 0 {
                    cycle.length += 1;
                    (b, m, false)
                } else {
                    match ends[b][(j - 1) as usize] {
                        End::Marked => {
                            cycle.marked_points += 1;
                            (b, j - 1, false)
                        }
                        End::Chord { to, twisted: false } => {
                            cycle.length += 1;
                            (to.0, to.1 - 1, false)
                        }
                        End::Chord { to, twisted: true } => {
                            cycle.length += 1;
                            (to.0, to.1, true)
                        }
                    }
                };
                if state == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
    }
    BoundaryProfile { cycles }
}

/// Full type of a connected diagram. The length spectrum is recorded for
/// complete diagrams only.
pub fn classify(d: &ChordDiagram) -> Result<DiagramType> {
    if !d.is_connected() {
        return Err(Error::DisconnectedDiagram);
    }
    Ok(type_with_components(d, 1))
}

fn type_with_components(d: &ChordDiagram, components: u32) -> DiagramType {
    let profile = boundary_profile(d);
    let (b, k, n) = (d.b() as i64, d.k() as i64, profile.cycles.len() as i64);
    let euler_defect = 2 * components as i64 - b + k - n;
    let b_spec = Spectrum::from_indices(d.backbone_sizes.iter().copied());
    let mut t = if d.variant == Variant::Orientable {
        DiagramType::orientable((euler_defect / 2) as u32, d.k(), d.l(), b_spec, profile.n_spec())
    } else {
        DiagramType::non_orientable(euler_defect as u32, d.k(), d.l(), b_spec, profile.n_spec())
    };
    if d.l() == 0 {
        t = t.with_lengths(profile.p_spec());
    }
    t
}

/// All perfect matchings of `2k` of the slots, with the remaining slots
/// marked. Each matching lists its chords in increasing order of the first
/// slot.
fn matchings(sizes: &[u32], k: u32) -> Vec<Vec<(Slot, Slot)>> {
    let slots: Vec<Slot> =
        sizes.iter().enumerate().flat_map(|(b, &m)| (1..=m).map(move |p| (b, p))).collect();
    let total = slots.len() as u32;
    if 2 * k > total {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used = vec![false; slots.len()];
    let mut current = Vec::new();
    fn rec(
        slots: &[Slot],
        used: &mut [bool],
        current: &mut Vec<(Slot, Slot)>,
        marks_left: u32,
        chords_left: u32,
        out: &mut Vec<Vec<(Slot, Slot)>>,
    ) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.push(current.clone());
            return;
        };
        used[first] = true;
        if marks_left > 0 {
            rec(slots, used, current, marks_left - 1, chords_left, out);
        }
        if chords_left > 0 {
            for other in first + 1..slots.len() {
                if used[other] {
                    continue;
                }
                used[other] = true;
                current.push((slots[first], slots[other]));
                rec(slots, used, current, marks_left, chords_left - 1, out);
                current.pop();
                used[other] = false;
            }
        }
        used[first] = false;
    }
    rec(&slots, &mut used, &mut current, total - 2 * k, k, &mut out);
    out
}

fn with_twists(sizes: &[u32], chords: Vec<(Slot, Slot)>, variant: Variant) -> impl Iterator<Item = ChordDiagram> {
    let k = chords.len();
    let sizes = sizes.to_vec();
    let masks: u64 = match variant {
        Variant::Orientable => 1,
        Variant::NonOrientable => 1 << k,
    };
    (0..masks).map(move |mask| ChordDiagram {
        backbone_sizes: sizes.clone(),
        chords: chords.clone(),
        twists: (0..k).map(|i| mask >> i & 1 == 1).collect(),
        variant,
    })
}

/// Every diagram with `k` chords on backbones of the given sizes, each once.
/// In non-orientable mode every chord is independently twisted or not.
pub fn enumerate_diagrams(
    backbone_sizes: &[u32],
    k: u32,
    variant: Variant,
    connected_only: bool,
) -> impl Iterator<Item = ChordDiagram> {
    let sizes = backbone_sizes.to_vec();
    matchings(backbone_sizes, k)
        .into_iter()
        .flat_map(move |m| with_twists(&sizes, m, variant))
        .filter(move |d| !connected_only || d.is_connected())
}

/// Histogram of diagram types.
///
/// With `connected_only = false` the genus field of a diagram with `c`
/// components is the total `2c - b + k - n` (halved in orientable mode), so
/// such types need not satisfy [`crate::validate_type`].
pub fn count_types(
    backbone_sizes: &[u32],
    k: u32,
    variant: Variant,
    connected_only: bool,
) -> BTreeMap<DiagramType, BigInt> {
    let sizes = backbone_sizes.to_vec();
    let partial = matchings(backbone_sizes, k)
        .into_par_iter()
        .fold(HashMap::<DiagramType, u64>::new, |mut acc, m| {
            for d in with_twists(&sizes, m, variant) {
                let c = d.components();
                if connected_only && c != 1 {
                    continue;
                }
                *acc.entry(type_with_components(&d, c)).or_default() += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (t, c) in b {
                *a.entry(t).or_default() += c;
            }
            a
        });
    partial.into_iter().map(|(t, c)| (t, BigInt::from(c))).collect()
}

/// Distinct orderings of the backbone sizes in `b_spec`.
pub fn ordered_tuples(b_spec: &Spectrum) -> Vec<Vec<u32>> {
    let mut items = b_spec.to_indices();
    items.sort_unstable();
    let mut out = vec![items.clone()];
    // Next-permutation walk over the sorted multiset.
    loop {
        let Some(i) = (1..items.len()).rev().find(|&i| items[i - 1] < items[i]) else { break };
        let j = (i..items.len()).rev().find(|&j| items[j] > items[i - 1]).expect("pivot exists");
        items.swap(i - 1, j);
        items[i..].reverse();
        out.push(items.clone());
    }
    out
}

/// Connected counts for every type whose backbone spectrum is `b_spec`,
/// summed over all orderings of the backbones.
pub fn count_types_for_spectrum(b_spec: &Spectrum, k: u32, variant: Variant) -> BTreeMap<DiagramType, BigInt> {
    let mut total = BTreeMap::new();
    for tuple in ordered_tuples(b_spec) {
        for (t, c) in count_types(&tuple, k, variant, true) {
            *total.entry(t).or_insert_with(|| BigInt::from(0)) += c;
        }
    }
    total
}

/// Gaussian-integral weights of all diagrams, connected or not, on the
/// ordered backbones: for each diagram, the number of marked points, the
/// number of boundary cycles without marked points, and the number with.
pub fn wick_face_weights(backbone_sizes: &[u32], variant: Variant) -> BTreeMap<(u32, u32, u32), BigInt> {
    let total: u32 = backbone_sizes.iter().sum();
    let mut out = BTreeMap::new();
    for k in 0..=total / 2 {
        let sizes = backbone_sizes.to_vec();
        let part = matchings(backbone_sizes, k)
            .into_par_iter()
            .fold(HashMap::<(u32, u32, u32), u64>::new, |mut acc, m| {
                for d in with_twists(&sizes, m, variant) {
                    let prof = boundary_profile(&d);
                    let empty = prof.cycles.iter().filter(|c| c.marked_points == 0).count() as u32;
                    let full = prof.cycles.len() as u32 - empty;
                    *acc.entry((d.l(), empty, full)).or_default() += 1;
                }
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (t, c) in b {
                    *a.entry(t).or_default() += c;
                }
                a
            });
        for (key, c) in part {
            *out.entry(key).or_insert_with(|| BigInt::from(0)) += BigInt::from(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_type::{validate_type, Orientability};

    fn sp(s: &str) -> Spectrum {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_diagrams(&[2], 1, Variant::Orientable, false).count(), 1);
        assert_eq!(enumerate_diagrams(&[4], 2, Variant::Orientable, false).count(), 3);
        assert_eq!(enumerate_diagrams(&[2], 1, Variant::NonOrientable, false).count(), 2);
        // C(6,4) choices of endpoints times 3 matchings.
        assert_eq!(enumerate_diagrams(&[6], 2, Variant::Orientable, false).count(), 45);
    }

    #[test]
    fn single_chord_profile() {
        let d = enumerate_diagrams(&[2], 1, Variant::Orientable, true).next().unwrap();
        let mut lengths: Vec<u32> = boundary_profile(&d).cycles.iter().map(|c| c.length).collect();
        lengths.sort();
        assert_eq!(lengths, vec![1, 2]);
        let t = classify(&d).unwrap();
        assert_eq!(t, DiagramType::orientable(0, 1, 0, sp("e2"), sp("2e0")).with_lengths(sp("e1+e2")));
    }

    #[test]
    fn twisted_single_chord_is_a_cross_cap() {
        let d: Vec<_> = enumerate_diagrams(&[2], 1, Variant::NonOrientable, true).collect();
        let twisted = d.iter().find(|d| d.twists[0]).unwrap();
        assert_eq!(boundary_profile(twisted).cycles.len(), 1);
        let t = classify(twisted).unwrap();
        assert_eq!(t.orientability, Orientability::NonOrientableAllowed);
        assert_eq!(t.genus, 1);
        assert_eq!(t.p_spec, Some(sp("e3")));
    }

    #[test]
    fn square_matchings_by_genus() {
        let counts = count_types(&[4], 2, Variant::Orientable, true);
        let g0 = DiagramType::orientable(0, 2, 0, sp("e4"), sp("3e0"));
        let g1 = DiagramType::orientable(1, 2, 0, sp("e4"), sp("e0"));
        let by_np: BTreeMap<(u32, Spectrum), i64> = counts
            .iter()
            .map(|(t, c)| ((t.genus, t.n_spec.clone()), i64::try_from(c).unwrap()))
            .fold(BTreeMap::new(), |mut m, (k, c)| {
                *m.entry(k).or_default() += c;
                m
            });
        assert_eq!(by_np[&(g0.genus, g0.n_spec)], 2);
        assert_eq!(by_np[&(g1.genus, g1.n_spec)], 1);
    }

    #[test]
    fn chordless_backbone() {
        let d = enumerate_diagrams(&[5], 0, Variant::Orientable, true).next().unwrap();
        let t = classify(&d).unwrap();
        assert_eq!((t.genus, t.k, t.l, t.n_spec.clone()), (0, 0, 5, sp("e5")));
    }

    #[test]
    fn classified_types_are_valid_and_handshake_holds() {
        for variant in [Variant::Orientable, Variant::NonOrientable] {
            for sizes in [vec![6], vec![2, 3], vec![1, 1, 2]] {
                let total: u32 = sizes.iter().sum();
                for k in 0..=total / 2 {
                    for d in enumerate_diagrams(&sizes, k, variant, true) {
                        let prof = boundary_profile(&d);
                        assert_eq!(prof.cycles.iter().map(|c| c.length).sum::<u32>(), 2 * k + d.b());
                        assert_eq!(prof.cycles.iter().map(|c| c.marked_points).sum::<u32>(), d.l());
                        assert!(validate_type(&classify(&d).unwrap()), "{d:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn disconnected_is_rejected() {
        let d = enumerate_diagrams(&[1, 1], 0, Variant::Orientable, false).next().unwrap();
        assert_eq!(classify(&d), Err(Error::DisconnectedDiagram));
    }

    #[test]
    fn ordered_tuples_of_multiset() {
        assert_eq!(ordered_tuples(&sp("2e1+e3")), vec![vec![1, 1, 3], vec![1, 3, 1], vec![3, 1, 1]]);
        assert_eq!(ordered_tuples(&sp("e4")), vec![vec![4]]);
    }
}
