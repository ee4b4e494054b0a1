//! Truncated portraits: the root activity of every section down to a fixed level.

use std::fmt;

use super::table::Activity;

/// Activity labels of an automorphism on a complete binary tree of depth
/// `depth`, stored level by level. Vertex `p` of level `ℓ` (read as a binary
/// number, `L = 0`, most significant letter first) sits at bit `2^ℓ - 1 + p`.
///
/// A depth-`d` portrait determines the action on every vertex of level `≤ d + 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Portrait {
    depth: u32,
    bits: Vec<u64>,
}

/// Hash key of an element: the raw portrait bits.
pub type PortraitKey = Box<[u64]>;

fn node_count(depth: u32) -> usize {
    (1usize << (depth + 1)) - 1
}

fn level_base(level: u32) -> usize {
    (1usize << level) - 1
}

impl Portrait {
    pub fn identity(depth: u32) -> Self {
        assert!(depth < 24, "portrait depth {depth} is unreasonably large");
        Portrait {
            depth,
            bits: vec![0; node_count(depth).div_ceil(64)],
        }
    }

    pub fn root_only(activity: Activity) -> Self {
        let mut p = Portrait::identity(0);
        p.set(0, activity.is_swap());
        p
    }

    /// Portrait of `(left, right)·root` from depth-`d` portraits of the sections.
    pub fn graft(root: Activity, left: &Portrait, right: &Portrait) -> Self {
        assert_eq!(left.depth, right.depth);
        let depth = left.depth + 1;
        let mut p = Portrait::identity(depth);
        p.set(0, root.is_swap());
        for level in 0..=left.depth {
            let width = 1usize << level;
            let src = level_base(level);
            let dst = level_base(level + 1);
            for pos in 0..width {
                p.set(dst + pos, left.get(src + pos));
                p.set(dst + width + pos, right.get(src + pos));
            }
        }
        p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    #[inline]
    fn get(&self, idx: usize) -> bool {
        (self.bits[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, idx: usize, value: bool) {
        let mask = 1u64 << (idx & 63);
        if value {
            self.bits[idx >> 6] |= mask;
        } else {
            self.bits[idx >> 6] &= !mask;
        }
    }

    /// Activity label at vertex `position` of `level`.
    pub fn label(&self, level: u32, position: usize) -> Activity {
        assert!(level <= self.depth && position < (1usize << level));
        Activity::from_swap(self.get(level_base(level) + position))
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// True iff every label on levels `< levels` is the identity, i.e. the
    /// automorphism fixes every vertex of level `≤ levels`.
    pub fn fixes_levels(&self, levels: u32) -> bool {
        assert!(levels <= self.depth + 1);
        if levels == 0 {
            return true;
        }
        (0..node_count(levels - 1)).all(|idx| !self.get(idx))
    }

    /// Portrait of the product `self · other` (apply `self` first).
    ///
    /// The section of the product at `v` is `self_v · other_{v^self}`.
    pub fn compose(&self, other: &Portrait) -> Portrait {
        assert_eq!(self.depth, other.depth, "portrait depths differ");
        let mut out = Portrait::identity(self.depth);
        let mut images: Vec<usize> = vec![0];
        let mut next: Vec<usize> = Vec::with_capacity(2);
        for level in 0..=self.depth {
            let base = level_base(level);
            let last = level == self.depth;
            if !last {
                next.clear();
                next.resize(images.len() * 2, 0);
            }
            for (pos, &img) in images.iter().enumerate() {
                let mine = self.get(base + pos);
                let label = mine ^ other.get(base + img);
                if label {
                    out.set(base + pos, true);
                }
                if !last {
                    let flip = mine as usize;
                    next[2 * pos] = 2 * img + flip;
                    next[2 * pos + 1] = 2 * img + (1 ^ flip);
                }
            }
            if !last {
                std::mem::swap(&mut images, &mut next);
            }
        }
        out
    }

    /// Image of a vertex of level `≤ depth + 1`.
    pub fn act(&self, vertex: &[bool]) -> Vec<bool> {
        assert!(vertex.len() as u32 <= self.depth + 1);
        let mut pos = 0usize;
        let mut out = Vec::with_capacity(vertex.len());
        for (level, &side) in vertex.iter().enumerate() {
            let flip = self.get(level_base(level as u32) + pos);
            out.push(side ^ flip);
            pos = 2 * pos + side as usize;
        }
        out
    }

    /// Order of the truncated automorphism (a power of two).
    pub fn order(&self) -> u64 {
        let mut power = self.clone();
        let mut order = 1u64;
        while !power.is_identity() {
            power = power.compose(&power);
            order *= 2;
        }
        order
    }

    pub fn key(&self) -> PortraitKey {
        self.bits.clone().into_boxed_slice()
    }

    /// Labels rendered level by level, `0` for identity and `1` for swap,
    /// levels separated by `/`.
    pub fn to_layers(&self) -> String {
        let mut s = String::new();
        for level in 0..=self.depth {
            if level > 0 {
                s.push('/');
            }
            for pos in 0..(1usize << level) {
                s.push(if self.get(level_base(level) + pos) { '1' } else { '0' });
            }
        }
        s
    }

    pub fn to_hex(&self) -> String {
        self.bits.iter().map(|w| format!("{w:016x}")).collect()
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Portrait({})", self.to_layers())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_root(depth: u32) -> Portrait {
        let mut p = Portrait::identity(depth);
        p.set(0, true);
        p
    }

    #[test]
    fn identity_is_neutral() {
        let s = swap_root(3);
        let e = Portrait::identity(3);
        assert_eq!(s.compose(&e), s);
        assert_eq!(e.compose(&s), s);
        assert!(s.compose(&s).is_identity());
    }

    #[test]
    fn graft_places_subtrees() {
        let left = swap_root(1);
        let right = Portrait::identity(1);
        let p = Portrait::graft(Activity::Identity, &left, &right);
        assert_eq!(p.to_layers(), "0/10/0000");
        assert_eq!(p.act(&[false, false]), vec![false, true]);
        assert_eq!(p.act(&[true, false]), vec![true, false]);
    }

    #[test]
    fn fixes_levels_reads_upper_labels_only() {
        let left = swap_root(1);
        let p = Portrait::graft(Activity::Identity, &left, &Portrait::identity(1));
        assert!(p.fixes_levels(0));
        assert!(p.fixes_levels(1));
        assert!(!p.fixes_levels(2));
    }

    #[test]
    fn compose_matches_sequential_action() {
        let a = Portrait::graft(Activity::Swap, &swap_root(1), &Portrait::identity(1));
        let b = Portrait::graft(Activity::Identity, &Portrait::identity(1), &swap_root(1));
        let ab = a.compose(&b);
        for v in 0..8u32 {
            let vertex: Vec<bool> = (0..3).rev().map(|i| (v >> i) & 1 == 1).collect();
            assert_eq!(ab.act(&vertex), b.act(&a.act(&vertex)));
        }
    }

    #[test]
    fn order_of_root_swap_is_two() {
        assert_eq!(swap_root(4).order(), 2);
        assert_eq!(Portrait::identity(4).order(), 1);
    }
}
